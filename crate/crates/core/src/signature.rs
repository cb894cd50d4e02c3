//! NEC signatures `(g; ±; [m1, ..., mr]; {(-), ..., (-)})`.
//!
//! Only empty period-cycles are representable. A signature records the
//! combinatorial type of the quotient orbifold `H²/Λ`: topological genus,
//! orientability, cone-point orders and the number of boundary components.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// Euler-characteristic weight of one unit of genus.
    pub fn genus_weight(self) -> i64 {
        match self {
            Sign::Plus => 2,
            Sign::Minus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NecSignature {
    genus: u32,
    sign: Sign,
    periods: Vec<u32>,
    empty_cycles: u32,
}

impl NecSignature {
    pub fn new(genus: u32, sign: Sign, periods: Vec<u32>, empty_cycles: u32) -> Result<Self, Error> {
        if sign == Sign::Minus && genus == 0 {
            return Err(Error::InvalidSignature("sign '-' requires genus >= 1".into()));
        }
        if let Some(p) = periods.iter().find(|&&p| p < 2) {
            return Err(Error::InvalidSignature(format!("period {p} is smaller than 2")));
        }
        Ok(NecSignature { genus, sign, periods, empty_cycles })
    }

    /// Shorthand for a signature without boundary.
    pub fn closed(genus: u32, sign: Sign, periods: &[u32]) -> Result<Self, Error> {
        Self::new(genus, sign, periods.to_vec(), 0)
    }

    /// Period-cycles carrying link periods cannot be represented.
    pub fn with_period_cycle(self, link_periods: &[u32]) -> Result<Self, Error> {
        if link_periods.is_empty() {
            let mut s = self;
            s.empty_cycles += 1;
            Ok(s)
        } else {
            Err(Error::InvalidSignature(format!(
                "nonempty period-cycle {link_periods:?} is not supported"
            )))
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn empty_cycles(&self) -> u32 {
        self.empty_cycles
    }

    /// `εg + k − 2 + Σ(1 − 1/mᵢ)` with `ε = 2` for `+` and `ε = 1` for `−`.
    pub fn reduced_area(&self) -> Rational64 {
        let base = self.sign.genus_weight() * i64::from(self.genus) + i64::from(self.empty_cycles) - 2;
        self.periods
            .iter()
            .fold(Rational64::from_integer(base), |acc, &m| {
                acc + Rational64::new(i64::from(m) - 1, i64::from(m))
            })
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.reduced_area() > Rational64::from_integer(0)
    }

    /// Equal up to a permutation of the periods.
    pub fn equivalent(&self, other: &NecSignature) -> bool {
        self.genus == other.genus
            && self.sign == other.sign
            && self.empty_cycles == other.empty_cycles
            && self.sorted_periods() == other.sorted_periods()
    }

    pub fn sorted_periods(&self) -> Vec<u32> {
        let mut p = self.periods.clone();
        p.sort_unstable();
        p
    }

    /// Same signature with the periods sorted ascending.
    pub fn normalized(&self) -> NecSignature {
        NecSignature { periods: self.sorted_periods(), ..self.clone() }
    }
}

pub fn signatures_equivalent(s1: &NecSignature, s2: &NecSignature) -> bool {
    s1.equivalent(s2)
}

impl fmt::Display for NecSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; [", self.genus, self.sign)?;
        for (i, p) in self.periods.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")?;
        if self.empty_cycles > 0 {
            f.write_str("; {")?;
            for i in 0..self.empty_cycles {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str("(-)")?;
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}
