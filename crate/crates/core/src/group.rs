//! Finite groups as closed multiplication tables.
//!
//! Element ids are assigned in lexicographic order of the normal form, and
//! the identity is always id 0.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::Error;

pub type Elem = usize;

/// How the group was built; element expressions use it to resolve tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Cyclic { n: usize, name: String },
    DirectProduct { left: Box<FiniteGroup>, right: Box<FiniteGroup> },
    SemidirectC2 { n: usize, twist: usize },
    Dicyclic { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    order: usize,
    #[serde(skip)]
    mul: Vec<Elem>,
    #[serde(skip)]
    inv: Vec<Elem>,
    gen_names: BTreeMap<String, Elem>,
    #[serde(skip)]
    labels: Vec<String>,
    construction: Construction,
}

impl FiniteGroup {
    fn from_table(
        order: usize,
        mul: Vec<Elem>,
        gen_names: BTreeMap<String, Elem>,
        labels: Vec<String>,
        construction: Construction,
    ) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let inv = (0..order)
            .map(|a| (0..order).find(|&b| mul[a * order + b] == 0).expect("table has no inverse"))
            .collect();
        FiniteGroup { order, mul, inv, gen_names, labels, construction }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::cyclic_named(n, "u")
    }

    pub fn cyclic_named(n: usize, name: &str) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let labels = (0..n).map(|k| power_label(name, k)).collect();
        let mut gens = BTreeMap::new();
        gens.insert(name.to_string(), 1 % n);
        Self::from_table(n, mul, gens, labels, Construction::Cyclic { n, name: name.to_string() })
    }

    /// Componentwise product; element `(a, b)` has id `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, Error> {
        if let Some(clash) = a.gen_names.keys().find(|k| b.gen_names.contains_key(*k)) {
            return Err(Error::NameClash(clash.clone()));
        }
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mul.push(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
            }
        }
        let labels = (0..n).map(|x| join_product(&[&a.labels[x / nb], &b.labels[x % nb]])).collect();
        let mut gens: BTreeMap<String, Elem> = a.gen_names.iter().map(|(k, &v)| (k.clone(), v * nb)).collect();
        gens.extend(b.gen_names.iter().map(|(k, &v)| (k.clone(), v)));
        let construction = Construction::DirectProduct { left: Box::new(a.clone()), right: Box::new(b.clone()) };
        Ok(Self::from_table(n, mul, gens, labels, construction))
    }

    /// `⟨u, c | uⁿ = c² = 1, c·u·c = u^twist⟩`, elements `c^a·u^b` with id `a·n + b`.
    pub fn semidirect_c2(n: usize, twist: i64) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::InvalidGroup(format!("semidirect_c2 needs n >= 3, got {n}")));
        }
        let t = twist.rem_euclid(n as i64) as usize;
        if (t * t) % n != 1 % n {
            return Err(Error::InvalidGroup(format!("twist {twist} does not square to 1 mod {n}")));
        }
        let order = 2 * n;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let (a1, b1) = (x / n, x % n);
                let (a2, b2) = (y / n, y % n);
                // u^b1 · c^a2 = c^a2 · u^(b1·twist^a2)
                let shifted = if a2 == 1 { b1 * t % n } else { b1 };
                mul.push(((a1 + a2) % 2) * n + (shifted + b2) % n);
            }
        }
        let labels = (0..order)
            .map(|x| join_product(&[if x / n == 1 { "c" } else { "1" }, &power_label("u", x % n)]))
            .collect();
        let gens = BTreeMap::from([("u".to_string(), 1), ("c".to_string(), n)]);
        Ok(Self::from_table(order, mul, gens, labels, Construction::SemidirectC2 { n, twist: t }))
    }

    /// `⟨r, s | r^(2k) = 1, s² = r^k, s·r·s⁻¹ = r⁻¹⟩` of order `4k`; elements
    /// `r^b·s^a` with id `a·2k + b`.
    pub fn dicyclic(k: usize) -> Result<Self, Error> {
        if k < 1 {
            return Err(Error::InvalidGroup("dicyclic needs k >= 1".into()));
        }
        let n = 2 * k;
        let order = 2 * n;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let (a1, b1) = (x / n, x % n);
                let (a2, b2) = (y / n, y % n);
                // r^b1 s^a1 r^b2 s^a2 = r^(b1 ± b2) s^(a1 + a2), with s² = r^k
                let b = if a1 == 1 { (b1 + n - b2) % n } else { (b1 + b2) % n };
                let (a, b) = if a1 + a2 == 2 { (0, (b + k) % n) } else { (a1 + a2, b) };
                mul.push(a * n + b);
            }
        }
        let labels = (0..order)
            .map(|x| join_product(&[&power_label("r", x % n), if x / n == 1 { "s" } else { "1" }]))
            .collect();
        let gens = BTreeMap::from([("r".to_string(), 1 % n), ("s".to_string(), n)]);
        Ok(Self::from_table(order, mul, gens, labels, Construction::Dicyclic { k }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `c · g · c⁻¹`
    pub fn conjugate(&self, c: Elem, g: Elem) -> Elem {
        self.mul(self.mul(c, g), self.inv(c))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn gen_names(&self) -> &BTreeMap<String, Elem> {
        &self.gen_names
    }

    pub fn generator(&self, name: &str) -> Option<Elem> {
        self.gen_names.get(name).copied()
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn element_order(&self, e: Elem) -> usize {
        let mut x = e;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, e);
            k += 1;
        }
        k
    }

    pub fn is_abelian_set(&self, elems: &BTreeSet<Elem>) -> bool {
        elems.iter().all(|&a| elems.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least `w ≥ 0` with `base^w = target`.
    pub fn discrete_log(&self, base: Elem, target: Elem) -> Result<usize, Error> {
        let mut x = 0;
        for w in 0..self.element_order(base) {
            if x == target {
                return Ok(w);
            }
            x = self.mul(x, base);
        }
        Err(Error::NotInSubgroup)
    }

    /// Closure of `gens` under multiplication (inverses come for free in a finite group).
    pub fn generated_subgroup(&self, gens: &[Elem]) -> BTreeSet<Elem> {
        let mut seen = BTreeSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn is_subgroup(&self, h: &BTreeSet<Elem>) -> bool {
        h.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.mul(a, b))))
    }

    /// Left cosets `xH`, indexed by their minimal element; coset 0 is `H`.
    pub fn left_cosets(&self, h: &BTreeSet<Elem>) -> Result<Vec<Elem>, Error> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] == usize::MAX {
                for &y in h {
                    coset_of[self.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        Ok(coset_of)
    }

    /// Right cosets `Hx`: `(coset id of every element, minimal representative
    /// of every coset)`. Coset 0 is `H`.
    pub fn right_cosets(&self, h: &BTreeSet<Elem>) -> Result<(Vec<usize>, Vec<Elem>), Error> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] == usize::MAX {
                for &y in h {
                    coset_of[self.mul(y, x)] = reps.len();
                }
                reps.push(x);
            }
        }
        Ok((coset_of, reps))
    }

    /// Permutation of left cosets of `H` induced by `x ↦ e·x`.
    pub fn left_coset_action(&self, h: &BTreeSet<Elem>, e: Elem) -> Result<Vec<usize>, Error> {
        let coset_of = self.left_cosets(h)?;
        let count = coset_of.iter().max().map_or(0, |m| m + 1);
        let mut reps = vec![usize::MAX; count];
        for x in self.elements().rev() {
            reps[coset_of[x]] = x;
        }
        Ok(reps.iter().map(|&r| coset_of[self.mul(e, r)]).collect())
    }

    /// First `c` (by id) with `c · g2 · c⁻¹ = g1`.
    pub fn find_conjugator(&self, g1: Elem, g2: Elem) -> Option<Elem> {
        self.elements().find(|&c| self.conjugate(c, g2) == g1)
    }

    /// Every homomorphism `G → Z₂`, trivial one first.
    pub fn characters(&self) -> Vec<GroupCharacter> {
        let gens: Vec<Elem> = self.gen_names.values().copied().collect();
        let mut out = Vec::new();
        for mask in 0..(1u32 << gens.len()) {
            let assigned: Vec<(Elem, u8)> =
                gens.iter().enumerate().map(|(i, &g)| (g, ((mask >> i) & 1) as u8)).collect();
            if let Some(chi) = GroupCharacter::extend(self, &assigned) {
                if !out.contains(&chi) {
                    out.push(chi);
                }
            }
        }
        out
    }

    /// Full associativity check; `O(n³)`.
    pub fn is_associative(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.elements().all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.construction {
            Construction::Cyclic { n, name } if name == "u" => write!(f, "cyclic({n})"),
            Construction::Cyclic { n, name } => write!(f, "cyclic({n}, {name})"),
            Construction::DirectProduct { left, right } => write!(f, "direct_product({left}, {right})"),
            Construction::SemidirectC2 { n, twist } => write!(f, "semidirect_c2({n}, {twist})"),
            Construction::Dicyclic { k } => write!(f, "dicyclic({k})"),
        }
    }
}

/// A homomorphism `G → Z₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupCharacter {
    values: Vec<u8>,
}

impl GroupCharacter {
    /// Extends prescribed values along the Cayley graph of the given elements.
    /// `None` when the values are inconsistent or the elements do not
    /// generate `G`.
    pub fn extend(g: &FiniteGroup, assigned: &[(Elem, u8)]) -> Option<Self> {
        let mut values = vec![u8::MAX; g.order()];
        values[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &(s, v) in assigned {
                let y = g.mul(x, s);
                let want = (values[x] + v) % 2;
                if values[y] == u8::MAX {
                    values[y] = want;
                    queue.push_back(y);
                } else if values[y] != want {
                    return None;
                }
            }
        }
        if values.contains(&u8::MAX) {
            return None;
        }
        let chi = GroupCharacter { values };
        chi.is_homomorphism(g).then_some(chi)
    }

    pub fn value(&self, e: Elem) -> u8 {
        self.values[e]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        g.elements()
            .all(|a| g.elements().all(|b| self.values[g.mul(a, b)] == (self.values[a] + self.values[b]) % 2))
    }

    pub fn kernel(&self) -> BTreeSet<Elem> {
        self.values.iter().enumerate().filter(|(_, &v)| v == 0).map(|(i, _)| i).collect()
    }
}

fn power_label(name: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn join_product(parts: &[&str]) -> String {
    let kept: Vec<&str> = parts.iter().copied().filter(|p| *p != "1").collect();
    if kept.is_empty() {
        "1".into()
    } else {
        kept.join("*")
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}
