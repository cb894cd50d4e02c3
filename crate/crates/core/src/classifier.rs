//! Deciding whether two anticonformal square roots are topologically
//! equivalent from their invariant tuples.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::gcd;
use serde::Serialize;

use crate::error::Error;
use crate::monodromy::SquareRootPair;
use crate::schreier::{pm_class, InvariantTuple};
use crate::signature::signatures_equivalent;

/// Invariants of a square root whose quotient orbifold has boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case1Tuple {
    pub two_m: usize,
    pub x_values: Vec<usize>,
    pub e_values: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "move", content = "class", rename_all = "snake_case")]
pub enum Move {
    /// Negate the residue of x-class `i` (index into the sorted class list
    /// at the time of the move) and add its old value to `d_sum`.
    Flip(usize),
    Invert,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Flip(i) => write!(f, "flip({i})"),
            Move::Invert => f.write_str("invert"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedCondition {
    Signature,
    /// Elliptic classes with periods and residues.
    Condition1,
    /// Glide sum.
    Condition2,
    /// First canonical glide mod `z`.
    Condition3,
}

impl FailedCondition {
    pub fn id(self) -> u8 {
        match self {
            FailedCondition::Signature => 0,
            FailedCondition::Condition1 => 1,
            FailedCondition::Condition2 => 2,
            FailedCondition::Condition3 => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Verdict {
    Equivalent { moves: Vec<Move>, epsilon: Option<i8> },
    NotEquivalent { failed: FailedCondition },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self, Verdict::NotEquivalent { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equivalent { .. } => "equivalent",
            Verdict::NotEquivalent { .. } => "not-equivalent",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equivalent { moves, epsilon } => {
                f.write_str("equivalent")?;
                if let Some(e) = epsilon {
                    write!(f, " (epsilon {e:+})")?;
                }
                if !moves.is_empty() {
                    let m: Vec<String> = moves.iter().map(Move::to_string).collect();
                    write!(f, " via {}", m.join(", "))?;
                }
                Ok(())
            }
            Verdict::NotEquivalent { failed: FailedCondition::Signature } => {
                f.write_str("not equivalent: subgroup signatures differ")
            }
            Verdict::NotEquivalent { failed } => write!(f, "not equivalent: condition {} fails", failed.id()),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

fn neg(v: usize, modulus: usize) -> usize {
    (modulus - v % modulus) % modulus
}

/// `gcd` of the x residues, the glide sum when the subgroup genus is even,
/// and `2m`. Zeros are neutral.
pub fn compute_z(t: &InvariantTuple) -> usize {
    let mut z = t.two_m;
    for &(_, r) in &t.x_classes {
        z = gcd(z, r);
    }
    if t.sub_signature.genus() % 2 == 0 {
        z = gcd(z, t.d_sum);
    }
    z
}

pub fn remark_h_flip(t: &InvariantTuple, class_index: usize) -> Result<InvariantTuple, Error> {
    let (period, old) = *t
        .x_classes
        .get(class_index)
        .ok_or_else(|| Error::Precondition(format!("no x-class {class_index}")))?;
    let mut out = t.clone();
    out.x_classes[class_index] = (period, neg(old, t.two_m));
    out.x_classes.sort_unstable();
    out.d_sum = (t.d_sum + old) % t.two_m;
    Ok(out)
}

pub fn global_inversion(t: &InvariantTuple) -> InvariantTuple {
    let mut out = t.clone();
    for c in out.x_classes.iter_mut() {
        c.1 = neg(c.1, t.two_m);
    }
    out.x_classes.sort_unstable();
    out.d_sum = neg(t.d_sum, t.two_m);
    out.d_first = t.d_first.map(|d| neg(d, t.two_m));
    out
}

pub fn apply_moves(t: &InvariantTuple, moves: &[Move]) -> Result<InvariantTuple, Error> {
    moves.iter().try_fold(t.clone(), |acc, m| match m {
        Move::Flip(i) => remark_h_flip(&acc, *i),
        Move::Invert => Ok(global_inversion(&acc)),
    })
}

/// The orbit of `t` under flips and inversion, each member with a move
/// sequence reaching it. Classes are kept sorted, which absorbs
/// permutations of equal-period classes.
pub fn orbit(t: &InvariantTuple) -> Vec<(InvariantTuple, Vec<Move>)> {
    let key = |u: &InvariantTuple| (u.x_classes.clone(), u.d_sum, u.d_first);
    let mut seen = BTreeSet::from([key(t)]);
    let mut out = vec![(t.clone(), Vec::new())];
    let mut i = 0;
    while i < out.len() {
        let (cur, path) = out[i].clone();
        let mut next: Vec<(InvariantTuple, Move)> = (0..cur.x_classes.len())
            .map(|k| (remark_h_flip(&cur, k).expect("index in range"), Move::Flip(k)))
            .collect();
        next.push((global_inversion(&cur), Move::Invert));
        for (u, mv) in next {
            if seen.insert(key(&u)) {
                let mut p = path.clone();
                p.push(mv);
                out.push((u, p));
            }
        }
        i += 1;
    }
    out
}

fn has_order_two_residue(t: &InvariantTuple) -> bool {
    t.x_classes.iter().any(|&(_, r)| 2 * r == t.two_m)
}

pub fn classify_case2(t1: &InvariantTuple, t2: &InvariantTuple) -> Result<Verdict, Error> {
    if t1.two_m != t2.two_m {
        return Err(Error::ModulusMismatch(t1.two_m as u64, t2.two_m as u64));
    }
    if !signatures_equivalent(&t1.sub_signature, &t2.sub_signature) {
        return Ok(Verdict::NotEquivalent { failed: FailedCondition::Signature });
    }
    let check_d_sum = !has_order_two_residue(t1);
    let check_d_first = t1.sub_signature.genus() == 2;
    // z is invariant under the moves; the gcd keeps the comparison symmetric
    // when condition 2 is switched off and the glide sums differ.
    let z = gcd(t1.z, t2.z);
    let first_class = |t: &InvariantTuple| t.d_first.map(|d| pm_class(d, z));
    if check_d_first && (t1.d_first.is_none() || t2.d_first.is_none()) {
        // Without a canonical glide, conditions 1 and 2 can still refute.
        let refuted = orbit(t2).iter().all(|(u, _)| {
            u.x_classes != t1.x_classes || (check_d_sum && u.d_sum != t1.d_sum)
        });
        if refuted {
            return Ok(Verdict::NotEquivalent { failed: deepest_failure(t1, t2, check_d_sum, false) });
        }
        return Ok(Verdict::Inconclusive { reason: "no verified canonical glide for condition 3".into() });
    }
    for (u, moves) in orbit(t2) {
        if u.x_classes != t1.x_classes {
            continue;
        }
        if check_d_sum && u.d_sum != t1.d_sum {
            continue;
        }
        if check_d_first && first_class(&u) != first_class(t1) {
            continue;
        }
        return Ok(Verdict::Equivalent { moves, epsilon: None });
    }
    Ok(Verdict::NotEquivalent { failed: deepest_failure(t1, t2, check_d_sum, check_d_first) })
}

/// The first condition that no orbit member can satisfy together with the
/// ones before it.
fn deepest_failure(t1: &InvariantTuple, t2: &InvariantTuple, check_d_sum: bool, check_d_first: bool) -> FailedCondition {
    let orb = orbit(t2);
    let c1: Vec<&InvariantTuple> = orb.iter().map(|(u, _)| u).filter(|u| u.x_classes == t1.x_classes).collect();
    if c1.is_empty() {
        return FailedCondition::Condition1;
    }
    let c2: Vec<&&InvariantTuple> = c1.iter().filter(|u| !check_d_sum || u.d_sum == t1.d_sum).collect();
    if c2.is_empty() {
        return FailedCondition::Condition2;
    }
    debug_assert!(check_d_first);
    FailedCondition::Condition3
}

pub fn classify_case1(t1: &Case1Tuple, t2: &Case1Tuple) -> Result<Verdict, Error> {
    if t1.two_m != t2.two_m {
        return Err(Error::ModulusMismatch(t1.two_m as u64, t2.two_m as u64));
    }
    let n = t1.two_m;
    let sorted = |v: &[usize], eps: i8| {
        let mut s: Vec<usize> = v.iter().map(|&r| if eps < 0 { neg(r, n) } else { r % n }).collect();
        s.sort_unstable();
        s
    };
    for eps in [1i8, -1] {
        if sorted(&t1.x_values, 1) == sorted(&t2.x_values, eps) && sorted(&t1.e_values, 1) == sorted(&t2.e_values, eps) {
            return Ok(Verdict::Equivalent { moves: Vec::new(), epsilon: Some(eps) });
        }
    }
    Ok(Verdict::NotEquivalent { failed: FailedCondition::Condition1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    EquivalentByA,
    EquivalentByB,
    EquivalentByC,
    NoPrediction,
}

impl Prediction {
    pub fn predicts_equivalence(self) -> bool {
        self != Prediction::NoPrediction
    }
}

pub fn theorem_prediction(pair: &SquareRootPair, sub_genus: u32, quotient_genus: u32) -> Prediction {
    if pair.n % 2 == 1 {
        Prediction::EquivalentByC
    } else if quotient_genus % 2 == 0 && sub_genus != 2 {
        Prediction::EquivalentByA
    } else if quotient_genus % 2 == 1 && pair.abelian {
        Prediction::EquivalentByB
    } else {
        Prediction::NoPrediction
    }
}
