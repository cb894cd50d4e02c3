//! Canonical presentations of NEC groups and their abelianization.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Error;
use crate::signature::{NecSignature, Sign};
use crate::snf::{abelian_invariants, AbelianInvariants};
use crate::word::{GenKind, GeneratorSymbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    signature: NecSignature,
    symbols: Vec<GeneratorSymbol>,
    relations: Vec<Word>,
}

/// Builds the canonical presentation. Generator order: glides, hyperbolic
/// pairs, elliptics, connectors, reflections. The long relation is written
/// glide part, commutators, elliptics, connectors.
pub fn canonical_presentation(sig: &NecSignature) -> Presentation {
    let g = sig.genus();
    let (glides, pairs) = match sig.sign() {
        Sign::Plus => (0, g),
        Sign::Minus if g % 2 == 1 => (1, (g - 1) / 2),
        Sign::Minus => (2, (g - 2) / 2),
    };
    let mut symbols = Vec::new();
    let mut long = Word::identity();

    let glide_syms: Vec<_> = (1..=glides).map(|i| GeneratorSymbol::new(GenKind::Glide, i)).collect();
    for &d in &glide_syms {
        symbols.push(d);
        long.push(d, 2);
    }
    for i in 1..=pairs {
        let a = GeneratorSymbol::new(GenKind::HyperbolicA, i);
        let b = GeneratorSymbol::new(GenKind::HyperbolicB, i);
        symbols.push(a);
        symbols.push(b);
        long = long.mul(&Word::from_letters([(a, 1), (b, 1), (a, -1), (b, -1)]));
    }
    let mut relations = Vec::new();
    for (j, &m) in sig.periods().iter().enumerate() {
        let x = GeneratorSymbol::elliptic(j as u32 + 1, m);
        symbols.push(x);
        long.push(x, 1);
        relations.push(Word::power(x, i64::from(m)));
    }
    let k = sig.empty_cycles();
    let connectors: Vec<_> = (1..=k).map(|l| GeneratorSymbol::new(GenKind::Connector, l)).collect();
    let reflections: Vec<_> = (1..=k).map(|l| GeneratorSymbol::new(GenKind::Reflection, l)).collect();
    for &e in &connectors {
        symbols.push(e);
        long.push(e, 1);
    }
    for (&e, &c) in connectors.iter().zip(&reflections) {
        symbols.push(c);
        relations.push(Word::power(c, 2));
        relations.push(Word::from_letters([(e, 1), (c, 1), (e, -1), (c, -1)]));
    }
    relations.insert(0, long);
    Presentation { signature: sig.clone(), symbols, relations }
}

impl Presentation {
    pub fn signature(&self) -> &NecSignature {
        &self.signature
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn long_relation(&self) -> &Word {
        &self.relations[0]
    }

    pub fn index_of(&self, s: &GeneratorSymbol) -> Option<usize> {
        self.symbols.iter().position(|t| t == s)
    }

    pub fn glides(&self) -> impl Iterator<Item = GeneratorSymbol> + '_ {
        self.symbols.iter().copied().filter(|s| s.kind == GenKind::Glide)
    }

    pub fn glide_count(&self) -> usize {
        self.glides().count()
    }

    pub fn has_reflections(&self) -> bool {
        self.symbols.iter().any(|s| s.kind == GenKind::Reflection)
    }

    pub fn symbol(&self, kind: GenKind, index: u32) -> Option<GeneratorSymbol> {
        self.symbols.iter().copied().find(|s| s.kind == kind && s.index == index)
    }

    /// Display name; a lone glide is written `d`.
    pub fn name(&self, s: &GeneratorSymbol) -> String {
        if s.kind == GenKind::Glide && self.glide_count() == 1 {
            "d".to_string()
        } else {
            s.to_string()
        }
    }

    /// Resolves a generator name. `d` and `x` are accepted when unambiguous.
    pub fn lookup(&self, name: &str) -> Option<GeneratorSymbol> {
        let names: HashMap<String, GeneratorSymbol> = self.symbols.iter().map(|s| (s.to_string(), *s)).collect();
        if let Some(s) = names.get(name) {
            return Some(*s);
        }
        let kind = match name {
            "d" => GenKind::Glide,
            "x" => GenKind::Elliptic,
            "a" => GenKind::HyperbolicA,
            "b" => GenKind::HyperbolicB,
            "e" => GenKind::Connector,
            "c" => GenKind::Reflection,
            _ => return None,
        };
        let mut it = self.symbols.iter().filter(|s| s.kind == kind);
        match (it.next(), it.next()) {
            (Some(s), None) => Some(*s),
            _ => None,
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| {
                let n = self.name(&l.symbol);
                if l.exp == 1 {
                    n
                } else {
                    format!("{n}^{}", l.exp)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn check_declared(&self, w: &Word) -> Result<(), Error> {
        match w.letters().iter().find(|l| self.index_of(&l.symbol).is_none()) {
            Some(l) => Err(Error::UndeclaredSymbol(l.symbol.to_string())),
            None => Ok(()),
        }
    }

    /// Orientation character of each generator, in `symbols()` order.
    pub fn orientation_character(&self) -> Vec<u8> {
        self.symbols.iter().map(|s| s.orientation()).collect()
    }

    /// Exponent sums of `w` over the generator basis.
    pub fn abelianize_word(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0; self.symbols.len()];
        for l in w.letters() {
            let i = self.index_of(&l.symbol).expect("word uses an undeclared symbol");
            v[i] += l.exp;
        }
        v
    }

    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relations.iter().map(|r| self.abelianize_word(r)).collect()
    }

    /// First orbifold homology `Λ/[Λ,Λ]`.
    pub fn abelianization(&self) -> AbelianInvariants {
        abelian_invariants(&self.relation_matrix(), self.symbols.len())
    }
}

pub fn orientation_character(pres: &Presentation) -> Vec<(GeneratorSymbol, u8)> {
    pres.symbols().iter().map(|s| (*s, s.orientation())).collect()
}

pub fn abelianization(pres: &Presentation) -> AbelianInvariants {
    pres.abelianization()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(g: u32, s: Sign, p: &[u32]) -> Presentation {
        canonical_presentation(&NecSignature::closed(g, s, p).unwrap())
    }

    #[test]
    fn genus_two_minus() {
        let p = pres(2, Sign::Minus, &[3, 3]);
        let names: Vec<_> = p.symbols().iter().map(|s| p.name(s)).collect();
        assert_eq!(names, ["d1", "d2", "x1", "x2"]);
        let rels: Vec<_> = p.relations().iter().map(|w| p.format_word(w)).collect();
        assert_eq!(rels, ["d1^2*d2^2*x1*x2", "x1^3", "x2^3"]);
    }

    #[test]
    fn smallest_minus_and_triangle() {
        let p = pres(1, Sign::Minus, &[]);
        assert_eq!(p.symbols().len(), 1);
        assert_eq!(p.format_word(p.long_relation()), "d^2");
        let p = pres(0, Sign::Plus, &[2, 3, 7]);
        let rels: Vec<_> = p.relations().iter().map(|w| p.format_word(w)).collect();
        assert_eq!(rels, ["x1*x2*x3", "x1^2", "x2^3", "x3^7"]);
    }

    #[test]
    fn odd_minus_and_plus_with_pairs() {
        let p = pres(3, Sign::Minus, &[4, 2, 2]);
        assert_eq!(p.format_word(p.long_relation()), "d^2*a1*b1*a1^-1*b1^-1*x1*x2*x3");
        let p = pres(2, Sign::Plus, &[]);
        assert_eq!(p.format_word(p.long_relation()), "a1*b1*a1^-1*b1^-1*a2*b2*a2^-1*b2^-1");
    }

    #[test]
    fn empty_cycles_add_connector_and_reflection() {
        let sig = NecSignature::new(1, Sign::Plus, vec![3], 1).unwrap();
        let p = canonical_presentation(&sig);
        let names: Vec<_> = p.symbols().iter().map(|s| p.name(s)).collect();
        assert_eq!(names, ["a1", "b1", "x1", "e1", "c1"]);
        let rels: Vec<_> = p.relations().iter().map(|w| p.format_word(w)).collect();
        assert_eq!(rels, ["a1*b1*a1^-1*b1^-1*x1*e1", "x1^3", "c1^2", "e1*c1*e1^-1*c1^-1"]);
    }

    #[test]
    fn abelianization_fixtures() {
        assert_eq!(
            pres(2, Sign::Minus, &[3, 3]).abelianization(),
            AbelianInvariants { free_rank: 1, torsion: vec![3, 6] }
        );
        assert_eq!(pres(1, Sign::Minus, &[]).abelianization(), AbelianInvariants { free_rank: 0, torsion: vec![2] });
        // (2,3,7) triangle group is perfect.
        assert!(pres(0, Sign::Plus, &[2, 3, 7]).abelianization().is_trivial());
    }

    #[test]
    fn lookup_aliases() {
        let p = pres(2, Sign::Minus, &[2]);
        assert_eq!(p.lookup("x"), p.symbol(GenKind::Elliptic, 1));
        assert_eq!(p.lookup("d"), None);
        assert_eq!(p.lookup("d2"), p.symbol(GenKind::Glide, 2));
        let p = pres(3, Sign::Minus, &[]);
        assert_eq!(p.lookup("d"), p.symbol(GenKind::Glide, 1));
    }

    use proptest::prelude::*;

    fn arb_signature() -> impl Strategy<Value = NecSignature> {
        (0u32..5, any::<bool>(), proptest::collection::vec(2u32..9, 0..4), 0u32..3).prop_filter_map(
            "minus needs genus",
            |(g, plus, p, k)| NecSignature::new(g, if plus { Sign::Plus } else { Sign::Minus }, p, k).ok(),
        )
    }

    proptest! {
        #[test]
        fn shape_counts(sig in arb_signature()) {
            let p = canonical_presentation(&sig);
            let r = sig.periods().len();
            let k = sig.empty_cycles() as usize;
            prop_assert_eq!(p.relations().len(), 1 + r + 2 * k);
            let hyperbolic = match sig.sign() {
                Sign::Plus => 2 * sig.genus() as usize,
                Sign::Minus => 2 * ((sig.genus() as usize - 1) / 2),
            };
            let glides = if sig.sign() == Sign::Minus { 2 - sig.genus() as usize % 2 } else { 0 };
            prop_assert_eq!(p.symbols().len(), glides + hyperbolic + r + 2 * k);
            for w in p.relations() {
                prop_assert_eq!(w.orientation(), 0);
                prop_assert!(p.check_declared(w).is_ok());
            }
        }

        #[test]
        fn permuting_equal_periods_keeps_homology(sig in arb_signature(), extra in 2u32..6) {
            let mut periods = sig.periods().to_vec();
            periods.push(extra);
            periods.push(extra);
            let a = NecSignature::new(sig.genus(), sig.sign(), periods.clone(), sig.empty_cycles()).unwrap();
            periods.rotate_right(1);
            let b = NecSignature::new(sig.genus(), sig.sign(), periods, sig.empty_cycles()).unwrap();
            prop_assert_eq!(canonical_presentation(&a).abelianization(), canonical_presentation(&b).abelianization());
        }

        #[test]
        fn area_additive_in_periods(sig in arb_signature(), m in 2u32..20) {
            let mut periods = sig.periods().to_vec();
            periods.push(m);
            let bigger = NecSignature::new(sig.genus(), sig.sign(), periods, sig.empty_cycles()).unwrap();
            let diff = bigger.reduced_area() - sig.reduced_area();
            prop_assert_eq!(diff, num_rational::Rational64::new(i64::from(m) - 1, i64::from(m)));
        }
    }
}
