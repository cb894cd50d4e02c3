//! Monodromies `ω: Δ → G` of finite group actions, their validity, and the
//! square-root pairs they carry.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::Error;
use crate::group::{Elem, FiniteGroup, GroupCharacter};
use crate::presentation::Presentation;
use crate::signature::{NecSignature, Sign};
use crate::word::{GenKind, GeneratorSymbol, Word};

#[derive(Clone, Debug)]
pub struct Monodromy {
    presentation: Presentation,
    group: FiniteGroup,
    images: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum ValidityFailure {
    RelationNotTrivial { relation: String, value: String },
    NotEpimorphism { generated: usize, order: usize },
    EllipticOrder { generator: String, expected: u32, actual: usize },
    NoOrientationCharacter,
    ReflectionInKernel { generator: String },
    NotHyperbolic { reduced_area: String },
}

impl fmt::Display for ValidityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidityFailure::RelationNotTrivial { relation, value } => {
                write!(f, "relation {relation} evaluates to {value}, not the identity")
            }
            ValidityFailure::NotEpimorphism { generated, order } => {
                write!(f, "images generate a subgroup of order {generated}, group has order {order}")
            }
            ValidityFailure::EllipticOrder { generator, expected, actual } => {
                write!(f, "{generator} maps to an element of order {actual}, period is {expected}")
            }
            ValidityFailure::NoOrientationCharacter => {
                f.write_str("no character of the group matches the orientation character")
            }
            ValidityFailure::ReflectionInKernel { generator } => write!(f, "reflection {generator} maps to the identity"),
            ValidityFailure::NotHyperbolic { reduced_area } => write!(f, "reduced area {reduced_area} is not positive"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub failures: Vec<ValidityFailure>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Monodromy {
    pub fn new(presentation: Presentation, group: FiniteGroup, images: Vec<Elem>) -> Result<Self, Error> {
        if images.len() != presentation.symbols().len() {
            return Err(Error::Precondition(format!(
                "{} images for {} generators",
                images.len(),
                presentation.symbols().len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&e| e >= group.order()) {
            return Err(Error::Precondition(format!("element id {bad} outside group of order {}", group.order())));
        }
        Ok(Monodromy { presentation, group, images })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn signature(&self) -> &NecSignature {
        self.presentation.signature()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn image(&self, s: &GeneratorSymbol) -> Result<Elem, Error> {
        self.presentation
            .index_of(s)
            .map(|i| self.images[i])
            .ok_or_else(|| Error::UndeclaredSymbol(s.to_string()))
    }

    pub fn evaluate(&self, w: &Word) -> Result<Elem, Error> {
        let g = &self.group;
        w.letters()
            .iter()
            .try_fold(g.identity(), |acc, l| Ok(g.mul(acc, g.pow(self.image(&l.symbol)?, l.exp))))
    }

    /// `Ω_g(w)`: the exponent `k` with `ω(w) = g^k`.
    pub fn omega_value(&self, g: Elem, w: &Word) -> Result<usize, Error> {
        self.group.discrete_log(g, self.evaluate(w)?)
    }

    /// The character `χ` with `χ(ω(s))` equal to the orientation of `s`.
    /// Unique when the images generate the group.
    pub fn character(&self) -> Option<GroupCharacter> {
        let assigned: Vec<(Elem, u8)> = self
            .presentation
            .symbols()
            .iter()
            .zip(&self.images)
            .map(|(s, &e)| (e, s.orientation()))
            .collect();
        GroupCharacter::extend(&self.group, &assigned)
    }

    pub fn validate(&self) -> ValidityReport {
        let mut failures = Vec::new();
        let g = &self.group;
        for r in self.presentation.relations() {
            let v = self.evaluate(r).expect("canonical relations use declared symbols");
            if v != g.identity() {
                failures.push(ValidityFailure::RelationNotTrivial {
                    relation: self.presentation.format_word(r),
                    value: g.label(v).to_string(),
                });
            }
        }
        let generated = g.generated_subgroup(&self.images).len();
        if generated != g.order() {
            failures.push(ValidityFailure::NotEpimorphism { generated, order: g.order() });
        }
        for (s, &e) in self.presentation.symbols().iter().zip(&self.images) {
            match s.kind {
                GenKind::Elliptic => {
                    let expected = s.period.expect("elliptic symbols carry a period");
                    let actual = g.element_order(e);
                    if actual != expected as usize {
                        failures.push(ValidityFailure::EllipticOrder {
                            generator: self.presentation.name(s),
                            expected,
                            actual,
                        });
                    }
                }
                GenKind::Reflection if e == g.identity() => {
                    failures.push(ValidityFailure::ReflectionInKernel { generator: self.presentation.name(s) });
                }
                _ => {}
            }
        }
        if generated == g.order() && self.character().is_none() {
            failures.push(ValidityFailure::NoOrientationCharacter);
        }
        let area = self.signature().reduced_area();
        if area <= Rational64::from_integer(0) {
            failures.push(ValidityFailure::NotHyperbolic { reduced_area: area.to_string() });
        }
        ValidityReport { failures }
    }

    /// Genus of `S = H²/ker ω` from `2g − 2 = |G| · area(Δ)`.
    pub fn kernel_genus(&self) -> Result<u64, Error> {
        let euler = self.signature().reduced_area() * Rational64::from_integer(self.group.order() as i64);
        if !euler.is_integer() || euler.to_integer() % 2 != 0 || euler.to_integer() < 2 {
            return Err(Error::Inconsistency(format!("|G|·area = {euler} is not 2g−2 for a genus g ≥ 2")));
        }
        Ok((euler.to_integer() / 2 + 1) as u64)
    }

    /// Signature of `ω⁻¹(H)` for a subgroup `H`. Reflection-free, boundary-free
    /// signatures only.
    pub fn preimage_signature(&self, h: &BTreeSet<Elem>) -> Result<NecSignature, Error> {
        self.require_closed_surface_data()?;
        let chi = self.character().ok_or_else(|| Error::Precondition("monodromy has no orientation character".into()))?;
        let (coset_of, reps) = self.group.right_cosets(h)?;
        let index = reps.len();
        let mut periods = Vec::new();
        for (s, &e) in self.presentation.symbols().iter().zip(&self.images) {
            if s.kind != GenKind::Elliptic {
                continue;
            }
            let m = s.period.expect("elliptic symbols carry a period") as usize;
            let mut seen = vec![false; index];
            for start in 0..index {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut c = start;
                while !seen[c] {
                    seen[c] = true;
                    len += 1;
                    c = coset_of[self.group.mul(reps[c], e)];
                }
                if m / len > 1 {
                    periods.push((m / len) as u32);
                }
            }
        }
        let sign = if h.iter().any(|&x| chi.value(x) == 1) { Sign::Minus } else { Sign::Plus };
        let area = self.signature().reduced_area() * Rational64::from_integer(index as i64);
        genus_from_area(area, sign, periods)
    }

    fn require_closed_surface_data(&self) -> Result<(), Error> {
        if self.presentation.has_reflections() || self.signature().empty_cycles() > 0 {
            return Err(Error::Unsupported("signatures with reflections or boundary".into()));
        }
        Ok(())
    }

    /// The pair data for two given roots.
    pub fn square_root_pair(&self, g1: Elem, g2: Elem) -> Result<SquareRootPair, Error> {
        let g = &self.group;
        let chi = self.character().ok_or_else(|| Error::Precondition("monodromy has no orientation character".into()))?;
        for x in [g1, g2] {
            if x >= g.order() {
                return Err(Error::Precondition(format!("element id {x} outside the group")));
            }
            if chi.value(x) != 1 {
                return Err(Error::Precondition(format!("{} is not anticonformal", g.label(x))));
            }
        }
        let f = g.mul(g1, g1);
        if g.mul(g2, g2) != f {
            return Err(Error::Precondition(format!("{} and {} have different squares", g.label(g1), g.label(g2))));
        }
        let m = g.element_order(f);
        if m % 2 == 1 {
            return Err(Error::Precondition(format!("the common square has odd order {m}")));
        }
        let span = g.generated_subgroup(&[g1, g2]);
        Ok(SquareRootPair {
            g1,
            g2,
            f,
            m,
            two_m: 2 * m,
            n: span.len() / (2 * m),
            abelian: g.mul(g1, g2) == g.mul(g2, g1),
        })
    }

    /// All anticonformal square-root pairs `{g1, g2}` with `g1² = g2² = f` of
    /// even order; one pair per `{⟨g1⟩, ⟨g2⟩}`.
    pub fn square_root_pairs(&self) -> Result<SquareRoots, Error> {
        let g = &self.group;
        let chi = self.character().ok_or_else(|| Error::Precondition("monodromy has no orientation character".into()))?;
        let mut by_square: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for e in g.elements().filter(|&e| chi.value(e) == 1) {
            by_square.entry(g.mul(e, e)).or_default().push(e);
        }
        let mut pairs = Vec::new();
        let mut skipped_odd = 0;
        let mut seen: BTreeSet<(Vec<Elem>, Vec<Elem>)> = BTreeSet::new();
        for (&f, roots) in &by_square {
            let m = g.element_order(f);
            for (i, &g1) in roots.iter().enumerate() {
                for &g2 in &roots[i + 1..] {
                    if m % 2 == 1 {
                        skipped_odd += 1;
                        continue;
                    }
                    let s1: Vec<Elem> = g.generated_subgroup(&[g1]).into_iter().collect();
                    let s2: Vec<Elem> = g.generated_subgroup(&[g2]).into_iter().collect();
                    let key = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
                    if !seen.insert(key) {
                        continue;
                    }
                    let span = g.generated_subgroup(&[g1, g2]);
                    pairs.push(SquareRootPair {
                        g1,
                        g2,
                        f,
                        m,
                        two_m: 2 * m,
                        n: span.len() / (2 * m),
                        abelian: g.mul(g1, g2) == g.mul(g2, g1),
                    });
                }
            }
        }
        pairs.sort_by_key(|p| (p.g1, p.g2));
        Ok(SquareRoots { pairs, skipped_odd })
    }

    /// The dihedral quotient `θ: ⟨g1, g2⟩ → ⟨g1, g2⟩/⟨f⟩ = D_n` with
    /// `θ(g1) = a`, `θ(g2) = b`, and a check that every glide lands outside
    /// the rotation subgroup `⟨ab⟩`.
    pub fn dihedral_quotient(&self, pair: &SquareRootPair) -> Result<DihedralQuotient, Error> {
        let g = &self.group;
        if pair.g1 == pair.g2 {
            return Err(Error::Precondition("pair has g1 = g2".into()));
        }
        if g.mul(pair.g1, pair.g1) != pair.f || g.mul(pair.g2, pair.g2) != pair.f {
            return Err(Error::Precondition("g1² and g2² must both equal f".into()));
        }
        let n = pair.n;
        let a = Dihedral { rot: 0, reflect: true };
        let b = Dihedral { rot: (n - 1) % n.max(1), reflect: true };
        let mut theta: BTreeMap<Elem, Dihedral> = BTreeMap::from([(g.identity(), Dihedral::IDENTITY)]);
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, img) in [(pair.g1, a), (pair.g2, b)] {
                let y = g.mul(x, s);
                let want = theta[&x].mul(img, n);
                match theta.get(&y) {
                    None => {
                        theta.insert(y, want);
                        queue.push_back(y);
                    }
                    Some(&have) if have != want => {
                        return Err(Error::Inconsistency(format!(
                            "θ is not well defined on {}: {} vs {}",
                            g.label(y),
                            have.word(),
                            want.word()
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let classes: BTreeSet<Dihedral> = theta.values().copied().collect();
        if classes.len() != 2 * n {
            return Err(Error::Inconsistency(format!("θ has {} values, expected 2n = {}", classes.len(), 2 * n)));
        }
        let glide_check = if theta.len() == g.order() { Some(self.check_glides_outside_rotations(&theta, n)?) } else { None };
        Ok(DihedralQuotient { n, theta, glide_check })
    }

    fn check_glides_outside_rotations(&self, theta: &BTreeMap<Elem, Dihedral>, n: usize) -> Result<GlideCheck, Error> {
        let pres = &self.presentation;
        let mut glide_images = Vec::new();
        for d in pres.glides() {
            let t = theta[&self.image(&d)?];
            if !t.reflect {
                return Err(Error::Inconsistency(format!("θ∘ω({}) = {} lies in ⟨ab⟩", pres.name(&d), t.word())));
            }
            glide_images.push((pres.name(&d), t.word()));
        }
        let mut rotation_gens: Vec<Dihedral> = pres
            .symbols()
            .iter()
            .zip(&self.images)
            .filter(|(s, _)| matches!(s.kind, GenKind::HyperbolicA | GenKind::HyperbolicB | GenKind::Elliptic))
            .map(|(_, e)| theta[e])
            .collect();
        let glides: Vec<GeneratorSymbol> = pres.glides().collect();
        if glides.len() == 2 {
            let w = Word::from_letters([(glides[0], 1), (glides[1], 1)]);
            rotation_gens.push(theta[&self.evaluate(&w)?]);
        }
        if rotation_gens.iter().any(|r| r.reflect) {
            return Err(Error::Inconsistency("a conformal generator maps to a reflection of D_n".into()));
        }
        let step = rotation_gens.iter().fold(n, |acc, r| num_integer::gcd(acc, r.rot));
        let generated = if n == 0 { 0 } else { n / step.max(1) };
        if generated != n {
            return Err(Error::Inconsistency(format!("conformal generators span {generated} of {n} rotations")));
        }
        Ok(GlideCheck { glide_images, rotations_generated: generated })
    }
}

/// `(ab)^rot · a^reflect` in `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dihedral {
    pub rot: usize,
    pub reflect: bool,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral { rot: 0, reflect: false };

    pub fn mul(self, other: Dihedral, n: usize) -> Dihedral {
        let n = n.max(1);
        let rot = if self.reflect { self.rot + n - other.rot % n } else { self.rot + other.rot } % n;
        Dihedral { rot, reflect: self.reflect ^ other.reflect }
    }

    /// Action on the cosets `[i] = (ab)^i·⟨a⟩` (`side = a`) or `(ab)^i·⟨b⟩`.
    pub fn coset_action(self, n: usize, side: CosetSide) -> Vec<usize> {
        let n = n.max(1);
        (0..n)
            .map(|i| match (self.reflect, side) {
                (false, _) => (self.rot + i) % n,
                (true, CosetSide::A) => (self.rot + n - i) % n,
                (true, CosetSide::B) => (self.rot + n - i + 1) % n,
            })
            .collect()
    }

    pub fn word(self) -> String {
        match (self.rot, self.reflect) {
            (0, false) => "1".into(),
            (0, true) => "a".into(),
            (1, false) => "ab".into(),
            (1, true) => "ab*a".into(),
            (r, false) => format!("(ab)^{r}"),
            (r, true) => format!("(ab)^{r}*a"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetSide {
    A,
    B,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlideCheck {
    pub glide_images: Vec<(String, String)>,
    pub rotations_generated: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DihedralQuotient {
    pub n: usize,
    pub theta: BTreeMap<Elem, Dihedral>,
    /// Present when `⟨g1, g2⟩` is the whole group, so that `θ∘ω` is defined
    /// on every generator.
    pub glide_check: Option<GlideCheck>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SquareRootPair {
    pub g1: Elem,
    pub g2: Elem,
    pub f: Elem,
    /// Order of `f`.
    pub m: usize,
    pub two_m: usize,
    /// `|⟨g1, g2⟩| = n · 2m`.
    pub n: usize,
    pub abelian: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareRoots {
    pub pairs: Vec<SquareRootPair>,
    /// Pairs with odd `m`, outside the even-order setting.
    pub skipped_odd: usize,
}

pub(crate) fn genus_from_area(area: Rational64, sign: Sign, periods: Vec<u32>) -> Result<NecSignature, Error> {
    let cone: Rational64 =
        periods.iter().map(|&c| Rational64::new(i64::from(c) - 1, i64::from(c))).sum();
    let weighted = area + Rational64::from_integer(2) - cone;
    let genus = weighted / Rational64::from_integer(sign.genus_weight());
    if !genus.is_integer() || genus.to_integer() < 0 {
        return Err(Error::Inconsistency(format!("subgroup genus {genus} is not a non-negative integer")));
    }
    NecSignature::closed(genus.to_integer() as u32, sign, &periods)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::canonical_presentation;

    fn c16c2() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(16), &FiniteGroup::cyclic_named(2, "t")).unwrap()
    }

    fn el(g: &FiniteGroup, word: &[(&str, i64)]) -> Elem {
        word.iter().fold(0, |acc, &(n, k)| g.mul(acc, g.pow(g.generator(n).unwrap(), k)))
    }

    pub(crate) fn ex1() -> Monodromy {
        let g = c16c2();
        let p = canonical_presentation(&NecSignature::closed(2, Sign::Minus, &[2]).unwrap());
        let images = vec![el(&g, &[("u", 1)]), el(&g, &[("u", 3), ("t", 1)]), el(&g, &[("u", 8)])];
        Monodromy::new(p, g, images).unwrap()
    }

    fn c8c3() -> Monodromy {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(8), &FiniteGroup::cyclic_named(3, "t")).unwrap();
        let p = canonical_presentation(&NecSignature::closed(2, Sign::Minus, &[3, 3]).unwrap());
        let images = vec![el(&g, &[("u", 1)]), el(&g, &[("u", 7)]), el(&g, &[("t", 1)]), el(&g, &[("t", 2)])];
        Monodromy::new(p, g, images).unwrap()
    }

    fn ex2() -> Monodromy {
        let g = FiniteGroup::semidirect_c2(8, 5).unwrap();
        let p = canonical_presentation(&NecSignature::closed(3, Sign::Minus, &[4, 2, 2]).unwrap());
        let images = vec![el(&g, &[("u", 1)]), 0, 0, el(&g, &[("u", -2)]), el(&g, &[("c", 1)]), el(&g, &[("c", 1)])];
        Monodromy::new(p, g, images).unwrap()
    }

    #[test]
    fn paper_monodromies_are_valid() {
        for w in [c8c3(), ex1(), ex2()] {
            let r = w.validate();
            assert!(r.is_valid(), "{:?}", r.failures);
        }
    }

    #[test]
    fn invalid_elliptic_order() {
        let w = ex1();
        let g = w.group().clone();
        let mut images = w.images().to_vec();
        images[2] = el(&g, &[("u", 4)]);
        let bad = Monodromy::new(w.presentation().clone(), g, images).unwrap();
        let r = bad.validate();
        assert!(r.failures.contains(&ValidityFailure::EllipticOrder { generator: "x1".into(), expected: 2, actual: 4 }));
    }

    #[test]
    fn non_hyperbolic_is_reported() {
        let g = FiniteGroup::cyclic_named(2, "t");
        let p = canonical_presentation(&NecSignature::closed(1, Sign::Minus, &[]).unwrap());
        let w = Monodromy::new(p, g, vec![1]).unwrap();
        let r = w.validate();
        assert_eq!(r.failures, vec![ValidityFailure::NotHyperbolic { reduced_area: "-1".into() }]);
    }

    #[test]
    fn evaluation() {
        let w = ex1();
        let g = w.group();
        let p = w.presentation();
        let d1 = p.lookup("d1").unwrap();
        let d2 = p.lookup("d2").unwrap();
        let x = p.lookup("x").unwrap();
        assert_eq!(w.evaluate(p.long_relation()), Ok(0));
        assert_eq!(w.evaluate(&Word::identity()), Ok(0));
        let d1d2 = Word::from_letters([(d1, 1), (d2, 1)]);
        assert_eq!(w.evaluate(&d1d2), Ok(el(g, &[("u", 4), ("t", 1)])));
        let conj = Word::gen(d2).conjugate(&Word::gen(x));
        assert_eq!(w.omega_value(el(g, &[("u", 1)]), &conj), Ok(8));
        let stray = GeneratorSymbol::new(GenKind::HyperbolicA, 1);
        assert!(matches!(w.evaluate(&Word::gen(stray)), Err(Error::UndeclaredSymbol(_))));
    }

    #[test]
    fn omega_values_c8c3() {
        let w = c8c3();
        let g = w.group();
        let p = w.presentation();
        let g1 = el(g, &[("u", 1), ("t", 1)]);
        let d1 = p.lookup("d1").unwrap();
        let d2 = p.lookup("d2").unwrap();
        assert_eq!(w.omega_value(g1, &Word::gen(d1)), Ok(9));
        assert_eq!(w.omega_value(g1, &Word::from_letters([(d1, 1), (d2, 1)])), Ok(0));
    }

    #[test]
    fn kernel_genera() {
        assert_eq!(c8c3().kernel_genus(), Ok(17));
        assert_eq!(ex1().kernel_genus(), Ok(9));
        assert_eq!(ex2().kernel_genus(), Ok(23));
    }

    #[test]
    fn square_roots() {
        let w = ex1();
        let g = w.group();
        let roots = w.square_root_pairs().unwrap();
        let (u, ut) = (el(g, &[("u", 1)]), el(g, &[("u", 1), ("t", 1)]));
        let p = roots.pairs.iter().find(|p| (p.g1, p.g2) == (u, ut)).expect("Ex1 pair");
        assert_eq!((p.f, p.m, p.n, p.abelian), (el(g, &[("u", 2)]), 8, 2, true));

        let w = ex2();
        let g = w.group();
        let (u3, cu) = (el(g, &[("u", 3)]), el(g, &[("c", 1), ("u", 1)]));
        let roots = w.square_root_pairs().unwrap();
        let p = roots
            .pairs
            .iter()
            .find(|p| {
                let s = |x| g.generated_subgroup(&[x]);
                BTreeSet::from([s(p.g1), s(p.g2)]) == BTreeSet::from([s(u3), s(cu)])
            })
            .expect("Ex2 pair");
        assert_eq!((g.element_order(p.f), p.m, p.n, p.abelian), (4, 4, 2, false));
    }

    #[test]
    fn cyclic_four_pairs() {
        let g = FiniteGroup::cyclic(4);
        let p = canonical_presentation(&NecSignature::closed(4, Sign::Minus, &[]).unwrap());
        let w = Monodromy::new(p, g, vec![1, 1, 0, 0]).unwrap();
        assert!(w.validate().is_valid());
        let pairs = w.square_root_pairs().unwrap().pairs;
        // u and u^3 share the square u^2 and generate the same subgroup
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].g1, pairs[0].g2, pairs[0].m, pairs[0].n), (1, 3, 2, 1));
    }

    #[test]
    fn odd_square_orders_are_skipped() {
        // C6 x C2: g and g*t share a square of order 1 or 3
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(6), &FiniteGroup::cyclic_named(2, "t")).unwrap();
        let p = canonical_presentation(&NecSignature::closed(4, Sign::Minus, &[]).unwrap());
        let images = vec![el(&g, &[("u", 1)]), el(&g, &[("u", 5), ("t", 1)]), el(&g, &[("t", 1)]), 0];
        let w = Monodromy::new(p, g, images).unwrap();
        assert!(w.validate().is_valid());
        let roots = w.square_root_pairs().unwrap();
        assert!(roots.pairs.is_empty());
        assert_eq!(roots.skipped_odd, 3);
    }

    #[test]
    fn dihedral_quotients() {
        let w = ex1();
        let g = w.group();
        let pair = w.square_root_pairs().unwrap().pairs.into_iter().find(|p| p.g1 == el(g, &[("u", 1)])).unwrap();
        let q = w.dihedral_quotient(&pair).unwrap();
        assert_eq!(q.n, 2);
        let d1 = w.image(&w.presentation().lookup("d1").unwrap()).unwrap();
        assert_eq!(q.theta[&d1], Dihedral { rot: 0, reflect: true });
        assert!(q.glide_check.is_some());

        let w = ex2();
        let g = w.group();
        let (u3, cu) = (el(g, &[("u", 3)]), el(g, &[("c", 1), ("u", 1)]));
        let pair = SquareRootPair { g1: u3, g2: cu, f: el(g, &[("u", 6)]), m: 4, two_m: 8, n: 2, abelian: false };
        let q = w.dihedral_quotient(&pair).unwrap();
        let x1 = w.image(&w.presentation().lookup("x1").unwrap()).unwrap();
        let x2 = w.image(&w.presentation().lookup("x2").unwrap()).unwrap();
        assert_eq!(q.theta[&x1], Dihedral::IDENTITY);
        // x2 is conformal: a rotation that moves the cosets of ⟨a⟩.
        assert_eq!(q.theta[&x2], Dihedral { rot: 1, reflect: false });
        assert_eq!(q.theta[&x2].coset_action(2, CosetSide::A), vec![1, 0]);
        assert_eq!(q.theta[&x1].coset_action(2, CosetSide::A), vec![0, 1]);

        let degenerate = SquareRootPair { g2: u3, ..pair };
        assert!(matches!(w.dihedral_quotient(&degenerate), Err(Error::Precondition(_))));
    }

    #[test]
    fn dihedral_coset_actions_are_homomorphisms() {
        for n in 1..7 {
            let all: Vec<Dihedral> =
                (0..n).flat_map(|r| [false, true].map(|f| Dihedral { rot: r, reflect: f })).collect();
            for side in [CosetSide::A, CosetSide::B] {
                for &x in &all {
                    for &y in &all {
                        let px = x.coset_action(n, side);
                        let py = y.coset_action(n, side);
                        let composed: Vec<usize> = (0..n).map(|i| px[py[i]]).collect();
                        assert_eq!(x.mul(y, n).coset_action(n, side), composed);
                    }
                }
                // the generator of the side fixes coset 0
                let gen = match side {
                    CosetSide::A => Dihedral { rot: 0, reflect: true },
                    CosetSide::B => Dihedral { rot: (n - 1) % n, reflect: true },
                };
                assert_eq!(gen.coset_action(n, side)[0], 0);
            }
        }
    }

    #[test]
    fn preimage_signatures() {
        let w = ex1();
        let g = w.group();
        let h = g.generated_subgroup(&[el(g, &[("u", 1)])]);
        assert_eq!(w.preimage_signature(&h).unwrap(), NecSignature::closed(2, Sign::Minus, &[2, 2]).unwrap());
        let w = ex2();
        let g = w.group();
        let h = g.generated_subgroup(&[el(g, &[("u", 3)])]);
        assert_eq!(w.preimage_signature(&h).unwrap(), NecSignature::closed(6, Sign::Minus, &[4, 4]).unwrap());
        let all: BTreeSet<Elem> = g.elements().collect();
        assert_eq!(&w.preimage_signature(&all).unwrap(), w.signature());
    }
}
