//! Canonical generator symbols and words over them.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Glide,
    HyperbolicA,
    HyperbolicB,
    Elliptic,
    Connector,
    Reflection,
}

impl GenKind {
    pub fn prefix(self) -> &'static str {
        match self {
            GenKind::Glide => "d",
            GenKind::HyperbolicA => "a",
            GenKind::HyperbolicB => "b",
            GenKind::Elliptic => "x",
            GenKind::Connector => "e",
            GenKind::Reflection => "c",
        }
    }

    /// 1 for orientation-reversing generators.
    pub fn orientation(self) -> u8 {
        match self {
            GenKind::Glide | GenKind::Reflection => 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub kind: GenKind,
    pub index: u32,
    /// Present iff `kind` is elliptic.
    pub period: Option<u32>,
}

impl GeneratorSymbol {
    pub fn new(kind: GenKind, index: u32) -> Self {
        debug_assert!(kind != GenKind::Elliptic);
        GeneratorSymbol { kind, index, period: None }
    }

    pub fn elliptic(index: u32, period: u32) -> Self {
        GeneratorSymbol { kind: GenKind::Elliptic, index, period: Some(period) }
    }

    pub fn orientation(&self) -> u8 {
        self.kind.orientation()
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    pub exp: i64,
}

/// A word in the canonical generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(symbol: GeneratorSymbol) -> Self {
        Word::power(symbol, 1)
    }

    pub fn power(symbol: GeneratorSymbol, exp: i64) -> Self {
        let mut w = Word::identity();
        w.push(symbol, exp);
        w
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (GeneratorSymbol, i64)>) -> Self {
        let mut w = Word::identity();
        for (s, e) in letters {
            w.push(s, e);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends `symbol^exp`, merging with the last letter (free reduction).
    pub fn push(&mut self, symbol: GeneratorSymbol, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.symbol == symbol {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter { symbol, exp });
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.symbol, l.exp);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| Letter { symbol: l.symbol, exp: -l.exp }).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `self · other · self⁻¹`
    pub fn conjugate(&self, other: &Word) -> Word {
        self.mul(other).mul(&self.inverse())
    }

    /// Exponent-weighted count of orientation-reversing letters, mod 2.
    pub fn orientation(&self) -> u8 {
        let total: i64 = self.letters.iter().map(|l| l.exp * i64::from(l.symbol.orientation())).sum();
        total.rem_euclid(2) as u8
    }

    /// Letters expanded to unit exponents.
    pub fn unit_letters(&self) -> impl Iterator<Item = (GeneratorSymbol, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|l| std::iter::repeat_n((l.symbol, l.exp.signum()), l.exp.unsigned_abs() as usize))
    }

    pub fn len(&self) -> usize {
        self.letters.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.symbol)?;
            } else {
                write!(f, "{}^{}", l.symbol, l.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(i: u32) -> GeneratorSymbol {
        GeneratorSymbol::new(GenKind::Glide, i)
    }

    #[test]
    fn free_reduction() {
        let w = Word::from_letters([(d(1), 1), (d(2), 2), (d(2), -2), (d(1), -1)]);
        assert!(w.is_identity());
        let w = Word::from_letters([(d(1), 1), (d(2), 1)]);
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(w.pow(2).len(), 4);
    }

    #[test]
    fn orientation_parity() {
        let x = GeneratorSymbol::elliptic(1, 3);
        assert_eq!(Word::gen(d(1)).orientation(), 1);
        assert_eq!(Word::gen(x).orientation(), 0);
        // d1 d2^2: 1 + 2 = 3
        assert_eq!(Word::from_letters([(d(1), 1), (d(2), 2)]).orientation(), 1);
        assert_eq!(Word::from_letters([(d(1), -1), (x, 5), (d(2), 1)]).orientation(), 0);
    }
}
