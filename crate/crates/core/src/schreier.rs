//! Reidemeister–Schreier rewriting of `Λ = ω⁻¹(⟨g⟩)` inside `Δ`.
//!
//! Cosets are right cosets `⟨g⟩·ω(w)`; the transversal is always made of
//! orientation-preserving words, otherwise the reversing generators stop
//! describing the glide classes of `Λ`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::classifier::compute_z;
use crate::error::Error;
use crate::group::Elem;
use crate::monodromy::{genus_from_area, Monodromy};
use crate::presentation::canonical_presentation;
use crate::signature::{NecSignature, Sign};
use crate::snf::{abelian_invariants, AbelianInvariants};
use crate::word::{GenKind, GeneratorSymbol, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransversalStrategy {
    /// Breadth-first search over cosets using orientation-preserving moves.
    #[default]
    Bfs,
    /// Plain Schreier tree, then reversing representatives are prefixed with
    /// a word mapping to `g`.
    GlideShift,
}

impl TransversalStrategy {
    pub const ALL: [TransversalStrategy; 2] = [TransversalStrategy::Bfs, TransversalStrategy::GlideShift];
}

impl FromStr for TransversalStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "bfs" => Ok(TransversalStrategy::Bfs),
            "glide-shift" => Ok(TransversalStrategy::GlideShift),
            other => Err(Error::Precondition(format!("unknown transversal strategy `{other}` (bfs, glide-shift)"))),
        }
    }
}

impl fmt::Display for TransversalStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransversalStrategy::Bfs => "bfs",
            TransversalStrategy::GlideShift => "glide-shift",
        })
    }
}

/// `t_coset · symbol · t_target⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchreierGen {
    pub coset: usize,
    pub symbol: GeneratorSymbol,
    pub word: Word,
    /// `Ω_g` of the word, mod `2m`.
    pub residue: usize,
}

/// One cycle of an elliptic generator on the cosets, as an elliptic
/// generator `t_c x^ℓ t_c⁻¹` of the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticClass {
    pub generator: GeneratorSymbol,
    pub coset: usize,
    pub cycle_len: usize,
    pub word: Word,
    pub period: u32,
    pub residue: usize,
}

#[derive(Clone, Debug)]
pub struct SchreierSystem {
    monodromy: Monodromy,
    g: Elem,
    two_m: usize,
    strategy: TransversalStrategy,
    coset_of: Vec<usize>,
    reps: Vec<Elem>,
    transversal: Vec<Word>,
    reversing_gens: Vec<SchreierGen>,
    preserving_gens: Vec<SchreierGen>,
    elliptic_classes: Vec<EllipticClass>,
}

pub fn build_schreier(omega: &Monodromy, g: Elem, strategy: TransversalStrategy) -> Result<SchreierSystem, Error> {
    if omega.presentation().has_reflections() || omega.signature().empty_cycles() > 0 {
        return Err(Error::Unsupported("signatures with reflections or boundary".into()));
    }
    let group = omega.group();
    if g >= group.order() {
        return Err(Error::Precondition(format!("element id {g} outside the group")));
    }
    let chi = omega.character().ok_or_else(|| Error::Precondition("monodromy has no orientation character".into()))?;
    if chi.value(g) != 1 {
        return Err(Error::Precondition(format!("{} is not anticonformal", group.label(g))));
    }
    let two_m = group.element_order(g);
    if two_m % 4 != 0 {
        return Err(Error::Precondition(format!("{} has order {two_m}; m = {} is odd", group.label(g), two_m / 2)));
    }
    let h = group.generated_subgroup(&[g]);
    let (coset_of, reps) = group.right_cosets(&h)?;
    let mut sys = SchreierSystem {
        monodromy: omega.clone(),
        g,
        two_m,
        strategy,
        coset_of,
        reps,
        transversal: Vec::new(),
        reversing_gens: Vec::new(),
        preserving_gens: Vec::new(),
        elliptic_classes: Vec::new(),
    };
    sys.transversal = match strategy {
        TransversalStrategy::Bfs => sys.bfs_transversal()?,
        TransversalStrategy::GlideShift => sys.glide_shift_transversal()?,
    };
    for (i, t) in sys.transversal.iter().enumerate() {
        if t.orientation() != 0 || sys.coset_of[sys.monodromy.evaluate(t)?] != i {
            return Err(Error::Inconsistency(format!("transversal word {t} does not represent coset {i}")));
        }
    }
    sys.collect_generators()?;
    Ok(sys)
}

impl SchreierSystem {
    pub fn monodromy(&self) -> &Monodromy {
        &self.monodromy
    }

    pub fn g(&self) -> Elem {
        self.g
    }

    pub fn two_m(&self) -> usize {
        self.two_m
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn strategy(&self) -> TransversalStrategy {
        self.strategy
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn reversing_gens(&self) -> &[SchreierGen] {
        &self.reversing_gens
    }

    pub fn preserving_gens(&self) -> &[SchreierGen] {
        &self.preserving_gens
    }

    pub fn elliptic_classes(&self) -> &[EllipticClass] {
        &self.elliptic_classes
    }

    /// Coset reached from `coset` by right multiplication with `e`.
    pub fn act(&self, coset: usize, e: Elem) -> usize {
        self.coset_of[self.monodromy.group().mul(self.reps[coset], e)]
    }

    pub fn coset_of_word(&self, w: &Word) -> Result<usize, Error> {
        Ok(self.coset_of[self.monodromy.evaluate(w)?])
    }

    /// `Ω_g(w)` for `w` in the subgroup.
    pub fn omega(&self, w: &Word) -> Result<usize, Error> {
        self.monodromy.omega_value(self.g, w)
    }

    /// Sum of the `Ω`-values of all reversing generators, mod `2m`.
    pub fn d_sum(&self) -> usize {
        self.reversing_gens.iter().map(|r| r.residue).sum::<usize>() % self.two_m
    }

    pub fn subgroup_signature(&self) -> Result<NecSignature, Error> {
        let periods = self.elliptic_classes.iter().map(|c| c.period).collect();
        let area = self.monodromy.signature().reduced_area() * Rational64::from_integer(self.index() as i64);
        genus_from_area(area, Sign::Minus, periods)
    }

    fn bfs_transversal(&self) -> Result<Vec<Word>, Error> {
        let pres = self.monodromy.presentation();
        let preserving: Vec<GeneratorSymbol> =
            pres.symbols().iter().copied().filter(|s| s.orientation() == 0).collect();
        let glides: Vec<GeneratorSymbol> = pres.glides().collect();
        let mut moves = Vec::new();
        for &s in &preserving {
            moves.push(Word::gen(s));
            moves.push(Word::power(s, -1));
        }
        for &p in &glides {
            for &q in &glides {
                for (e, f) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let w = Word::from_letters([(p, e), (q, f)]);
                    if !w.is_identity() {
                        moves.push(w);
                    }
                }
            }
        }
        if let Some(&d) = glides.first() {
            for &s in &preserving {
                for e in [1, -1] {
                    moves.push(Word::gen(d).conjugate(&Word::power(s, e)));
                }
            }
        }
        let images: Vec<Elem> = moves.iter().map(|w| self.monodromy.evaluate(w)).collect::<Result<_, _>>()?;
        self.bfs(&moves, &images)
    }

    fn glide_shift_transversal(&self) -> Result<Vec<Word>, Error> {
        let pres = self.monodromy.presentation();
        let letters: Vec<Word> =
            pres.symbols().iter().flat_map(|&s| [Word::gen(s), Word::power(s, -1)]).collect();
        let images: Vec<Elem> = letters.iter().map(|w| self.monodromy.evaluate(w)).collect::<Result<_, _>>()?;
        let mut tree = self.bfs(&letters, &images)?;
        let shift = self.shortest_word_to(self.g, &letters, &images)?;
        for t in tree.iter_mut() {
            if t.orientation() == 1 {
                *t = shift.mul(t);
            }
        }
        Ok(tree)
    }

    fn bfs(&self, moves: &[Word], images: &[Elem]) -> Result<Vec<Word>, Error> {
        let mut words: Vec<Option<Word>> = vec![None; self.index()];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for (mv, &e) in moves.iter().zip(images) {
                let target = self.act(c, e);
                if words[target].is_none() {
                    words[target] = Some(words[c].as_ref().expect("visited").mul(mv));
                    queue.push_back(target);
                }
            }
        }
        words
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| Error::Inconsistency(format!("coset {i} unreachable"))))
            .collect()
    }

    fn shortest_word_to(&self, target: Elem, letters: &[Word], images: &[Elem]) -> Result<Word, Error> {
        let group = self.monodromy.group();
        let mut words: Vec<Option<Word>> = vec![None; group.order()];
        words[group.identity()] = Some(Word::identity());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            if x == target {
                break;
            }
            for (l, &e) in letters.iter().zip(images) {
                let y = group.mul(x, e);
                if words[y].is_none() {
                    words[y] = Some(words[x].as_ref().expect("visited").mul(l));
                    queue.push_back(y);
                }
            }
        }
        words[target].take().ok_or_else(|| Error::Inconsistency("g is not in the image of ω".into()))
    }

    fn collect_generators(&mut self) -> Result<(), Error> {
        let pres = self.monodromy.presentation().clone();
        let group = self.monodromy.group().clone();
        for c in 0..self.index() {
            for &s in pres.symbols() {
                let target = self.act(c, self.monodromy.image(&s)?);
                let word = self.transversal[c].mul(&Word::gen(s)).mul(&self.transversal[target].inverse());
                let value = self.monodromy.evaluate(&word)?;
                if self.coset_of[value] != 0 {
                    return Err(Error::Inconsistency(format!("Schreier generator {word} left the subgroup")));
                }
                let gen = SchreierGen { coset: c, symbol: s, residue: group.discrete_log(self.g, value)?, word };
                if s.orientation() == 1 {
                    self.reversing_gens.push(gen);
                } else if !gen.word.is_identity() {
                    self.preserving_gens.push(gen);
                }
            }
        }
        for &x in pres.symbols().iter().filter(|s| s.kind == GenKind::Elliptic) {
            let e = self.monodromy.image(&x)?;
            let m = x.period.expect("elliptic symbols carry a period") as usize;
            let mut seen = vec![false; self.index()];
            for start in 0..self.index() {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut c = start;
                while !seen[c] {
                    seen[c] = true;
                    len += 1;
                    c = self.act(c, e);
                }
                if m / len <= 1 {
                    continue;
                }
                let t = &self.transversal[start];
                let word = t.conjugate(&Word::power(x, len as i64));
                let residue = self.omega(&word)?;
                self.elliptic_classes.push(EllipticClass {
                    generator: x,
                    coset: start,
                    cycle_len: len,
                    word,
                    period: (m / len) as u32,
                    residue,
                });
            }
        }
        Ok(())
    }

    fn columns(&self) -> usize {
        self.index() * self.monodromy.presentation().symbols().len()
    }

    /// Rewrites `w` read from `coset` into the Schreier generators `γ(c, s)`;
    /// returns the exponent-sum vector and the coset where the walk ends.
    pub fn rewrite(&self, coset: usize, w: &Word) -> Result<(Vec<i64>, usize), Error> {
        let pres = self.monodromy.presentation();
        let nsyms = pres.symbols().len();
        let group = self.monodromy.group();
        let mut v = vec![0i64; self.columns()];
        let mut c = coset;
        for (s, e) in w.unit_letters() {
            let k = pres.index_of(&s).ok_or_else(|| Error::UndeclaredSymbol(s.to_string()))?;
            let img = self.monodromy.images()[k];
            if e > 0 {
                v[c * nsyms + k] += 1;
                c = self.act(c, img);
            } else {
                c = self.act(c, group.inv(img));
                v[c * nsyms + k] -= 1;
            }
        }
        Ok((v, c))
    }

    /// Homology class of a subgroup element in the Schreier generators.
    pub fn homology_vector(&self, w: &Word) -> Result<Vec<i64>, Error> {
        match self.rewrite(0, w)? {
            (v, 0) => Ok(v),
            _ => Err(Error::NotInSubgroup),
        }
    }

    /// Relation matrix of the Reidemeister presentation: every relator
    /// lifted at every coset, plus the rewritten transversal words.
    pub fn raw_relation_matrix(&self) -> Result<Vec<Vec<i64>>, Error> {
        let mut rows = Vec::new();
        for c in 0..self.index() {
            for r in self.monodromy.presentation().relations() {
                rows.push(self.rewrite(c, r)?.0);
            }
        }
        for t in &self.transversal {
            rows.push(self.rewrite(0, t)?.0);
        }
        Ok(rows)
    }

    pub fn raw_abelianization(&self) -> Result<AbelianInvariants, Error> {
        Ok(abelian_invariants(&self.raw_relation_matrix()?, self.columns()))
    }

    /// The rewritten presentation and the canonical presentation of the
    /// derived signature have the same abelianization.
    pub fn homology_check(&self) -> Result<HomologyCheck, Error> {
        let raw = self.raw_abelianization()?;
        let canonical = canonical_presentation(&self.subgroup_signature()?).abelianization();
        Ok(HomologyCheck { agree: raw == canonical, raw, canonical })
    }

    /// Checks that `glide_words` can serve as the glides `D1′, D2′` of a
    /// canonical presentation of a genus-2 subgroup, up to homology.
    pub fn verify_marking(&self, glide_words: &[Word]) -> Result<CanonicalMarking, Error> {
        let sub = self.subgroup_signature()?;
        if sub.genus() != 2 {
            return Err(Error::Precondition(format!("markings apply to subgroup genus 2, not {}", sub.genus())));
        }
        if glide_words.len() != 2 {
            return Err(Error::VerificationFailed(format!("expected 2 glide words, got {}", glide_words.len())));
        }
        let pres = self.monodromy.presentation();
        let mut residues = Vec::new();
        let mut vectors = Vec::new();
        for w in glide_words {
            pres.check_declared(w)?;
            if w.orientation() != 1 {
                return Err(Error::VerificationFailed(format!("{} preserves orientation", pres.format_word(w))));
            }
            let v = self.homology_vector(w).map_err(|_| {
                Error::VerificationFailed(format!("{} is not in the subgroup", pres.format_word(w)))
            })?;
            residues.push(self.omega(w)?);
            vectors.push(v);
        }
        let two_m = self.two_m;
        if (residues[0] + residues[1]) % two_m != self.d_sum() {
            return Err(Error::VerificationFailed(format!(
                "Ω(D1′ + D2′) = {} but the glide classes sum to {}",
                (residues[0] + residues[1]) % two_m,
                self.d_sum()
            )));
        }
        let x_sum: usize = self.elliptic_classes.iter().map(|c| c.residue).sum();
        if (2 * (residues[0] + residues[1]) + x_sum) % two_m != 0 {
            return Err(Error::VerificationFailed("lifted long relation fails on Ω-values".into()));
        }
        let rows = self.raw_relation_matrix()?;
        let cols = self.columns();
        let base = abelian_invariants(&rows, cols);
        let xs: Vec<Vec<i64>> =
            self.elliptic_classes.iter().map(|c| self.homology_vector(&c.word)).collect::<Result<_, _>>()?;

        let mut spanning = rows.clone();
        spanning.extend(vectors.iter().cloned());
        spanning.extend(xs.iter().cloned());
        if !abelian_invariants(&spanning, cols).is_trivial() {
            return Err(Error::VerificationFailed("marked glides and elliptic classes do not generate H1".into()));
        }
        // 2D1′ + 2D2′ + Σ ±X_j must vanish in H1: adding it as a relation
        // leaves the (Hopfian) group unchanged exactly when it is zero.
        let holds = (0..1usize << xs.len()).any(|signs| {
            let mut r: Vec<i64> = (0..cols).map(|k| 2 * vectors[0][k] + 2 * vectors[1][k]).collect();
            for (j, x) in xs.iter().enumerate() {
                let eps = if signs >> j & 1 == 1 { -1 } else { 1 };
                for k in 0..cols {
                    r[k] += eps * x[k];
                }
            }
            let mut with = rows.clone();
            with.push(r);
            abelian_invariants(&with, cols) == base
        });
        if !holds {
            return Err(Error::VerificationFailed("long relation of the marking fails in H1".into()));
        }
        Ok(CanonicalMarking { glide_words: glide_words.to_vec(), residues, verified: true })
    }

    /// Glides of a canonical presentation of the subgroup from the fixed
    /// index-1 and index-2 patterns, verified before use.
    pub fn canonicalize_index2(&self) -> Result<CanonicalMarking, Error> {
        let pres = self.monodromy.presentation();
        let glides: Vec<GeneratorSymbol> = pres.glides().collect();
        let words = match (self.index(), glides.as_slice()) {
            (1, &[d1, d2]) => vec![Word::gen(d1), Word::gen(d2)],
            (2, &[d1, d2]) => {
                let in_h = |s: &GeneratorSymbol| -> Result<bool, Error> {
                    Ok(self.coset_of[self.monodromy.image(s)?] == 0)
                };
                match (in_h(&d1)?, in_h(&d2)?) {
                    (true, false) => vec![
                        Word::gen(d2).conjugate(&Word::gen(d1)),
                        Word::from_letters([(d1, 1), (d2, 2)]),
                    ],
                    (false, true) => vec![
                        Word::power(d1, 2).conjugate(&Word::gen(d2)),
                        Word::from_letters([(d1, 1), (d2, 1), (d1, 1)]),
                    ],
                    _ => {
                        return Err(Error::VerificationFailed(
                            "no index-2 pattern when both glides lie on the same side of the subgroup".into(),
                        ))
                    }
                }
            }
            (1 | 2, _) => {
                return Err(Error::VerificationFailed(format!(
                    "no built-in pattern for {} glide(s) at index {}",
                    glides.len(),
                    self.index()
                )))
            }
            (i, _) => return Err(Error::Precondition(format!("index {i} is not 1 or 2"))),
        };
        self.verify_marking(&words)
    }

    /// The classifier's invariants for this system.
    pub fn invariant_tuple(&self, marking: Option<&[Word]>) -> Result<InvariantTuple, Error> {
        let sub_signature = self.subgroup_signature()?;
        let mut x_classes: Vec<(u32, usize)> = self.elliptic_classes.iter().map(|c| (c.period, c.residue)).collect();
        x_classes.sort_unstable();
        let (d_first, d_first_source) = if sub_signature.genus() != 2 {
            (None, DFirstSource::NotRequired)
        } else {
            let attempt = match marking {
                Some(words) => self.verify_marking(words).map(|m| (m, DFirstSource::Marking)),
                None => self.canonicalize_index2().map(|m| (m, DFirstSource::Pattern)),
            };
            match attempt {
                Ok((m, source)) => (Some(m.residues[0]), source),
                Err(e) => (None, DFirstSource::Absent { reason: e.to_string() }),
            }
        };
        let mut t = InvariantTuple {
            two_m: self.two_m,
            sub_signature,
            x_classes,
            d_sum: self.d_sum(),
            d_first,
            d_first_source,
            z: 0,
        };
        t.z = compute_z(&t);
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyCheck {
    pub agree: bool,
    pub raw: AbelianInvariants,
    pub canonical: AbelianInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalMarking {
    pub glide_words: Vec<Word>,
    /// `Ω`-values of the glide words.
    pub residues: Vec<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum DFirstSource {
    /// Subgroup genus is not 2.
    NotRequired,
    Marking,
    Pattern,
    Absent { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantTuple {
    pub two_m: usize,
    pub sub_signature: NecSignature,
    /// `(period, residue)`, sorted.
    pub x_classes: Vec<(u32, usize)>,
    pub d_sum: usize,
    /// `Ω` of the first canonical glide, mod `2m`; compared as a ±-class mod `z`.
    pub d_first: Option<usize>,
    pub d_first_source: DFirstSource,
    pub z: usize,
}

impl InvariantTuple {
    /// `d_first` as the smaller of `±d_first` mod `z`.
    pub fn d_first_class(&self) -> Option<usize> {
        self.d_first.map(|d| pm_class(d, self.z))
    }
}

pub(crate) fn pm_class(v: usize, z: usize) -> usize {
    let r = v % z;
    r.min((z - r) % z)
}
