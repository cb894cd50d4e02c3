//! Exhaustive enumeration of monodromies, theorem cross-checks, the bundled
//! fixtures, and the mass oracles.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{classify_case2, theorem_prediction, FailedCondition, Prediction, Verdict};
use crate::error::Error;
use crate::group::{Elem, FiniteGroup};
use crate::instance::{parse_instance, Instance};
use crate::monodromy::{Monodromy, SquareRootPair};
use crate::presentation::canonical_presentation;
use crate::schreier::{build_schreier, InvariantTuple, TransversalStrategy};
use crate::signature::{NecSignature, Sign};
use crate::word::{GenKind, Word};

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub monodromies: Vec<Monodromy>,
    /// Assignments whose long relation was solved and checked.
    pub candidates: u64,
    pub warning: Option<String>,
}

/// Every valid monodromy `Δ → G`, in a fixed order. The last elliptic
/// image is solved from the long relation.
pub fn enumerate_epimorphisms(sig: &NecSignature, group: &FiniteGroup) -> Result<Enumeration, Error> {
    let pres = canonical_presentation(sig);
    if pres.has_reflections() || sig.empty_cycles() > 0 {
        return Err(Error::Unsupported("enumeration of signatures with reflections or boundary".into()));
    }
    if !sig.is_hyperbolic() {
        return Ok(Enumeration {
            monodromies: Vec::new(),
            candidates: 0,
            warning: Some(format!("{sig} is not hyperbolic (reduced area {})", sig.reduced_area())),
        });
    }
    let symbols = pres.symbols().to_vec();
    let solved = match symbols.last() {
        Some(s) if s.kind == GenKind::Elliptic => Some(symbols.len() - 1),
        _ => None,
    };
    let free = solved.unwrap_or(symbols.len());
    let long = pres.long_relation().clone();
    let mut monodromies = Vec::new();
    let mut candidates = 0u64;
    for chi in group.characters() {
        if chi.is_trivial() == (sig.sign() == Sign::Minus) {
            continue;
        }
        let choices: Vec<Vec<Elem>> = symbols
            .iter()
            .map(|s| {
                group
                    .elements()
                    .filter(|&e| chi.value(e) == s.orientation())
                    .filter(|&e| s.period.is_none_or(|p| group.element_order(e) == p as usize))
                    .collect()
            })
            .collect();
        if choices[..free].iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; free];
        let mut images = vec![group.identity(); symbols.len()];
        'odometer: loop {
            for k in 0..free {
                images[k] = choices[k][idx[k]];
            }
            candidates += 1;
            let ok = match solved {
                Some(last) => {
                    images[last] = group.identity();
                    let rest = evaluate(group, &pres, &images, &long);
                    images[last] = group.inv(rest);
                    let p = symbols[last].period.expect("elliptic") as usize;
                    group.element_order(images[last]) == p && chi.value(images[last]) == 0
                }
                None => evaluate(group, &pres, &images, &long) == group.identity(),
            };
            if ok && group.generated_subgroup(&images).len() == group.order() {
                let w = Monodromy::new(pres.clone(), group.clone(), images.clone())?;
                if w.validate().is_valid() {
                    monodromies.push(w);
                }
            }
            let mut k = free;
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    Ok(Enumeration { monodromies, candidates, warning: None })
}

fn evaluate(group: &FiniteGroup, pres: &crate::presentation::Presentation, images: &[Elem], w: &Word) -> Elem {
    w.letters().iter().fold(group.identity(), |acc, l| {
        let k = pres.index_of(&l.symbol).expect("relation uses declared symbols");
        group.mul(acc, group.pow(images[k], l.exp))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionWitness {
    pub alpha: usize,
    pub w: usize,
    pub conjugator: String,
}

/// Finds `α, w` with `g1 = (g1g2)^α · g2^(2w+1) · (g1g2)^(−α)`.
pub fn proposition_conjugacy_check(group: &FiniteGroup, pair: &SquareRootPair) -> Result<PropositionWitness, Error> {
    if pair.n % 2 == 0 {
        return Err(Error::Precondition(format!("n = {} is even", pair.n)));
    }
    let (g1, g2) = (pair.g1, pair.g2);
    let p = group.mul(g1, g2);
    let ord_p = group.element_order(p);
    for alpha in 0..ord_p {
        let c = group.pow(p, alpha as i64);
        for w in 0..pair.m {
            if group.conjugate(c, group.pow(g2, 2 * w as i64 + 1)) == g1 {
                return Ok(PropositionWitness { alpha, w, conjugator: group.label(c).to_string() });
            }
        }
    }
    Err(Error::Inconsistency(format!(
        "no (α, w) conjugates an odd power of {} to {}",
        group.label(g2),
        group.label(g1)
    )))
}

/// Raw Reidemeister presentation and canonical presentation of the derived
/// signature have the same abelianization.
pub fn homology_oracle(omega: &Monodromy, g: Elem) -> Result<bool, Error> {
    Ok(build_schreier(omega, g, TransversalStrategy::Bfs)?.homology_check()?.agree)
}

/// Per-element data shared by all pairs containing that element.
#[derive(Clone, Debug)]
struct RootData {
    tuple: InvariantTuple,
    oracle: bool,
    long_relation: bool,
    transversal_independent: bool,
}

fn root_data(omega: &Monodromy, g: Elem, marking: Option<&[Word]>) -> Result<RootData, Error> {
    let sys = build_schreier(omega, g, TransversalStrategy::Bfs)?;
    let tuple = sys.invariant_tuple(marking)?;
    let alt = build_schreier(omega, g, TransversalStrategy::GlideShift)?.invariant_tuple(marking)?;
    let x_sum: usize = tuple.x_classes.iter().map(|c| c.1).sum();
    Ok(RootData {
        oracle: sys.homology_check()?.agree,
        long_relation: (2 * tuple.d_sum + x_sum) % tuple.two_m == 0,
        transversal_independent: alt.x_classes == tuple.x_classes && alt.d_sum == tuple.d_sum,
        tuple,
    })
}

/// Verdict for the cyclic groups `⟨g1⟩`, `⟨g2⟩`: equivalent when `g1` matches
/// some generator `g2^k` of `⟨g2⟩`.
fn group_verdict(
    omega: &Monodromy,
    g1: &InvariantTuple,
    g2: Elem,
    element: &Verdict,
    cache: &mut BTreeMap<Elem, RootData>,
) -> Result<Verdict, Error> {
    if !element.is_not_equivalent() {
        return Ok(element.clone());
    }
    let group = omega.group();
    let two_m = g1.two_m;
    for k in (3..two_m).step_by(2).filter(|&k| num_integer::gcd(k, two_m) == 1) {
        let gk = group.pow(g2, k as i64);
        if !cache.contains_key(&gk) {
            cache.insert(gk, root_data(omega, gk, None)?);
        }
        let v = classify_case2(g1, &cache[&gk].tuple)?;
        if !v.is_not_equivalent() {
            return Ok(v);
        }
    }
    Ok(element.clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub signature: String,
    pub group: String,
    pub images: Vec<String>,
    pub g1: String,
    pub g2: String,
    pub m: usize,
    pub n: usize,
    pub abelian: bool,
    pub quotient_genus: u32,
    pub sub_genus: u32,
    pub prediction: Prediction,
    pub verdict: Verdict,
    /// For odd `n`: the verdict for `⟨g1⟩` against `⟨g2⟩`.
    pub group_verdict: Option<Verdict>,
    /// False only when a theorem predicts equivalence and the classifier
    /// refutes it.
    pub agreement: bool,
    pub proposition: Option<PropositionWitness>,
    pub proposition_ok: bool,
    pub homology_oracle: bool,
    pub long_relation: bool,
    pub transversal_independent: bool,
    /// `None` when `⟨g1, g2⟩` is a proper subgroup.
    pub glide_check: Option<bool>,
}

fn rows_for(omega: &Monodromy) -> Result<Vec<ScanRow>, Error> {
    let group = omega.group();
    let pres = omega.presentation();
    let images: Vec<String> = pres
        .symbols()
        .iter()
        .zip(omega.images())
        .map(|(s, &e)| format!("{}={}", pres.name(s), group.label(e)))
        .collect();
    let mut cache: BTreeMap<Elem, RootData> = BTreeMap::new();
    let mut rows = Vec::new();
    for pair in omega.square_root_pairs()?.pairs {
        for g in [pair.g1, pair.g2] {
            if !cache.contains_key(&g) {
                cache.insert(g, root_data(omega, g, None)?);
            }
        }
        let (d1, d2) = (cache[&pair.g1].clone(), cache[&pair.g2].clone());
        let sub_genus = d1.tuple.sub_signature.genus();
        let quotient_genus = omega.preimage_signature(&group.generated_subgroup(&[pair.g1, pair.g2]))?.genus();
        let prediction = theorem_prediction(&pair, sub_genus, quotient_genus);
        let verdict = classify_case2(&d1.tuple, &d2.tuple)?;
        let (group_verdict, proposition, proposition_ok) = if pair.n % 2 == 1 {
            let gv = group_verdict(omega, &d1.tuple, pair.g2, &verdict, &mut cache)?;
            let witness = proposition_conjugacy_check(group, &pair).ok();
            let ok = witness.is_some();
            (Some(gv), witness, ok)
        } else {
            (None, None, true)
        };
        let relevant = match prediction {
            Prediction::EquivalentByC => group_verdict.as_ref().expect("n odd"),
            _ => &verdict,
        };
        let glide_check = match omega.dihedral_quotient(&pair) {
            Ok(q) => q.glide_check.map(|_| true),
            Err(Error::Inconsistency(_)) => Some(false),
            Err(e) => return Err(e),
        };
        rows.push(ScanRow {
            signature: omega.signature().to_string(),
            group: group.to_string(),
            images: images.clone(),
            g1: group.label(pair.g1).to_string(),
            g2: group.label(pair.g2).to_string(),
            m: pair.m,
            n: pair.n,
            abelian: pair.abelian,
            quotient_genus,
            sub_genus,
            prediction,
            agreement: !(prediction.predicts_equivalence() && relevant.is_not_equivalent()),
            verdict,
            group_verdict,
            proposition,
            proposition_ok,
            homology_oracle: d1.oracle && d2.oracle,
            long_relation: d1.long_relation && d2.long_relation,
            transversal_independent: d1.transversal_independent && d2.transversal_independent,
            glide_check,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub signature: String,
    pub group: String,
    pub monodromies: usize,
    pub candidates: u64,
    /// Monodromies whose kernel genus is not a whole number `≥ 2`.
    pub kernel_genus_failures: usize,
    pub warning: Option<String>,
    pub rows: Vec<ScanRow>,
}

pub fn scan(sig: &NecSignature, group: &FiniteGroup) -> Result<CellReport, Error> {
    let en = enumerate_epimorphisms(sig, group)?;
    let kernel_genus_failures = en.monodromies.iter().filter(|w| w.kernel_genus().is_err()).count();
    let per: Vec<Vec<ScanRow>> = en.monodromies.par_iter().map(rows_for).collect::<Result<_, _>>()?;
    Ok(CellReport {
        signature: sig.to_string(),
        group: group.to_string(),
        monodromies: en.monodromies.len(),
        candidates: en.candidates,
        kernel_genus_failures,
        warning: en.warning,
        rows: per.into_iter().flatten().collect(),
    })
}

pub fn bundled_matrix() -> Vec<(NecSignature, FiniteGroup)> {
    let sig = |g, p: &[u32]| NecSignature::closed(g, Sign::Minus, p).expect("bundled signature");
    let cyclic_t = |n| FiniteGroup::cyclic_named(n, "t");
    let dp = |a: FiniteGroup, b: FiniteGroup| FiniteGroup::direct_product(&a, &b).expect("bundled group");
    let signatures = [sig(2, &[2]), sig(2, &[3, 3]), sig(3, &[]), sig(3, &[4, 2, 2]), sig(2, &[2, 2])];
    let groups = [
        dp(FiniteGroup::cyclic(16), cyclic_t(2)),
        dp(FiniteGroup::cyclic(8), cyclic_t(3)),
        dp(FiniteGroup::cyclic(4), cyclic_t(2)),
        FiniteGroup::semidirect_c2(8, 5).expect("bundled group"),
        FiniteGroup::semidirect_c2(12, 7).expect("bundled group"),
        dp(FiniteGroup::cyclic(8), cyclic_t(2)),
    ];
    signatures.iter().flat_map(|s| groups.iter().map(move |g| (s.clone(), g.clone()))).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub cells_with_monodromies: usize,
    pub monodromies: usize,
    pub rows: usize,
    pub disagreements: usize,
    pub odd_n_rows: usize,
    pub proposition_failures: usize,
    pub oracle_failures: usize,
    pub long_relation_failures: usize,
    pub transversal_failures: usize,
    pub glide_checks: usize,
    pub glide_failures: usize,
    pub kernel_genus_failures: usize,
}

impl ScanSummary {
    pub fn is_clean(&self) -> bool {
        self.disagreements == 0
            && self.proposition_failures == 0
            && self.oracle_failures == 0
            && self.long_relation_failures == 0
            && self.transversal_failures == 0
            && self.glide_failures == 0
            && self.kernel_genus_failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub summary: ScanSummary,
    pub cells: Vec<CellReport>,
}

pub fn scan_matrix(cells: &[(NecSignature, FiniteGroup)]) -> Result<ScanReport, Error> {
    let cells: Vec<CellReport> = cells.par_iter().map(|(s, g)| scan(s, g)).collect::<Result<_, _>>()?;
    let mut summary = ScanSummary { cells: cells.len(), ..ScanSummary::default() };
    for c in &cells {
        summary.monodromies += c.monodromies;
        summary.cells_with_monodromies += usize::from(c.monodromies > 0);
        summary.kernel_genus_failures += c.kernel_genus_failures;
        for r in &c.rows {
            summary.rows += 1;
            summary.disagreements += usize::from(!r.agreement);
            summary.odd_n_rows += usize::from(r.n % 2 == 1);
            summary.proposition_failures += usize::from(!r.proposition_ok);
            summary.oracle_failures += usize::from(!r.homology_oracle);
            summary.long_relation_failures += usize::from(!r.long_relation);
            summary.transversal_failures += usize::from(!r.transversal_independent);
            summary.glide_checks += usize::from(r.glide_check.is_some());
            summary.glide_failures += usize::from(r.glide_check == Some(false));
        }
    }
    Ok(ScanReport { summary, cells })
}

/// Full analysis of one instance's pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairAnalysis {
    pub pair: SquareRootPair,
    pub g1: String,
    pub g2: String,
    pub kernel_genus: u64,
    pub quotient_genus: u32,
    pub tuple1: InvariantTuple,
    pub tuple2: InvariantTuple,
    pub prediction: Prediction,
    pub verdict: Verdict,
    pub group_verdict: Option<Verdict>,
}

pub fn analyze_pair(instance: &Instance, strategy: TransversalStrategy) -> Result<PairAnalysis, Error> {
    let omega = instance.monodromy()?;
    let report = omega.validate();
    if !report.is_valid() {
        let msgs: Vec<String> = report.failures.iter().map(ToString::to_string).collect();
        return Err(Error::Precondition(format!("invalid monodromy: {}", msgs.join("; "))));
    }
    let (g1, g2) = instance.pair.ok_or_else(|| Error::Precondition("instance has no [pair]".into()))?;
    let pair = omega.square_root_pair(g1, g2)?;
    let group = omega.group();
    let tuple1 = build_schreier(&omega, g1, strategy)?.invariant_tuple(instance.marking.g1.as_deref())?;
    let tuple2 = build_schreier(&omega, g2, strategy)?.invariant_tuple(instance.marking.g2.as_deref())?;
    let quotient_genus = omega.preimage_signature(&group.generated_subgroup(&[g1, g2]))?.genus();
    let prediction = theorem_prediction(&pair, tuple1.sub_signature.genus(), quotient_genus);
    let verdict = classify_case2(&tuple1, &tuple2)?;
    let group_verdict = if pair.n % 2 == 1 {
        let mut cache = BTreeMap::new();
        Some(group_verdict(&omega, &tuple1, g2, &verdict, &mut cache)?)
    } else {
        None
    };
    Ok(PairAnalysis {
        pair,
        g1: group.label(g1).to_string(),
        g2: group.label(g2).to_string(),
        kernel_genus: omega.kernel_genus()?,
        quotient_genus,
        tuple1,
        tuple2,
        prediction,
        verdict,
        group_verdict,
    })
}

pub const FIXTURES: [(&str, &str); 3] = [
    ("c8c3", include_str!("../instances/c8c3.toml")),
    ("ex1", include_str!("../instances/ex1.toml")),
    ("ex2-m4", include_str!("../instances/ex2-m4.toml")),
];

pub fn fixture_instance(id: &str) -> Result<Instance, Error> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(name, _)| *name == id)
        .ok_or_else(|| Error::Precondition(format!("unknown example `{id}` (c8c3, ex1, ex2-m4)")))?;
    parse_instance(text)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub signature: String,
    pub group: String,
    pub analysis: PairAnalysis,
    pub checks: Vec<FixtureCheck>,
    pub pass: bool,
}

struct Checks(Vec<FixtureCheck>);

impl Checks {
    fn add(&mut self, quantity: &str, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        self.0.push(FixtureCheck { quantity: quantity.into(), pass: expected == actual, expected, actual });
    }
}

fn classes(t: &InvariantTuple) -> String {
    let parts: Vec<String> = t.x_classes.iter().map(|(p, r)| format!("({p},{r})")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or("absent".into(), |x| x.to_string())
}

/// Rebuilds a bundled fixture and compares every pinned quantity.
pub fn fixture_report(id: &str) -> Result<FixtureReport, Error> {
    fixture_report_with(id, TransversalStrategy::Bfs)
}

/// Every pinned quantity is transversal-invariant, so any strategy must pass.
pub fn fixture_report_with(id: &str, strategy: TransversalStrategy) -> Result<FixtureReport, Error> {
    let inst = fixture_instance(id)?;
    let omega = inst.monodromy()?;
    let a = analyze_pair(&inst, strategy)?;
    let pres = omega.presentation();
    let mut c = Checks(Vec::new());
    let (t1, t2) = (&a.tuple1, &a.tuple2);
    let d1 = Word::gen(pres.glides().next().expect("minus signature has a glide"));
    match id {
        "c8c3" => {
            c.add("valid", true, omega.validate().is_valid());
            c.add("kernel genus", 17, a.kernel_genus);
            c.add("Ω_g1(d1)", 9, omega.omega_value(a.pair.g1, &d1)?);
            c.add("Ω_g2(d1)", 21, omega.omega_value(a.pair.g2, &d1)?);
            c.add("subgroup signature", "(2; -; [3, 3])", &t1.sub_signature);
            c.add("x classes (g1)", "{(3,8), (3,16)}", classes(t1));
            c.add("z", 8, t1.z);
            c.add("d_first class g1 mod 8", 1, opt(t1.d_first_class()));
            c.add("d_first class g2 mod 8", 3, opt(t2.d_first_class()));
            c.add("21 mod 8", 5, opt(t2.d_first.map(|d| d % 8)));
            c.add("verdict", "not equivalent: condition 3 fails", &a.verdict);
            c.add("n", 1, a.pair.n);
        }
        "ex1" => {
            c.add("valid", true, omega.validate().is_valid());
            c.add("kernel genus", 9, a.kernel_genus);
            c.add("pair m, n, abelian", "8, 2, true", format!("{}, {}, {}", a.pair.m, a.pair.n, a.pair.abelian));
            c.add("subgroup signature g1", "(2; -; [2, 2])", &t1.sub_signature);
            c.add("subgroup signature g2", "(2; -; [2, 2])", &t2.sub_signature);
            c.add("x classes", "{(2,8), (2,8)}", classes(t1));
            c.add("d_sum g1, g2", "8, 8", format!("{}, {}", t1.d_sum, t2.d_sum));
            c.add("z", 8, t1.z);
            c.add("d_first class g1 mod 8", 1, opt(t1.d_first_class()));
            c.add("d_first class g2 mod 8", 3, opt(t2.d_first_class()));
            c.add("prediction", "NoPrediction", format!("{:?}", a.prediction));
            c.add("verdict", "not equivalent: condition 3 fails", &a.verdict);
        }
        "ex2-m4" => {
            c.add("valid", true, omega.validate().is_valid());
            c.add("kernel genus", 23, a.kernel_genus);
            c.add("pair m, n, abelian", "4, 2, false", format!("{}, {}, {}", a.pair.m, a.pair.n, a.pair.abelian));
            c.add("subgroup signature g1", "(6; -; [4, 4])", &t1.sub_signature);
            c.add("subgroup signature g2", "(6; -; [4, 4])", &t2.sub_signature);
            c.add("x classes g1", "{(4,2), (4,2)}", classes(t1));
            c.add("x classes g2", "{(4,2), (4,2)}", classes(t2));
            c.add("d_sum g1", 2, t1.d_sum);
            c.add("d_sum g2", 6, t2.d_sum);
            c.add("quotient genus", 3, a.quotient_genus);
            c.add("prediction", "NoPrediction", format!("{:?}", a.prediction));
            c.add("verdict", "not equivalent: condition 2 fails", &a.verdict);
        }
        _ => unreachable!("fixture_instance rejects unknown ids"),
    }
    let checks = c.0;
    Ok(FixtureReport {
        id: id.to_string(),
        signature: omega.signature().to_string(),
        group: omega.group().to_string(),
        pass: checks.iter().all(|c| c.pass),
        analysis: a,
        checks,
    })
}

/// The failed condition of a verdict, if it is a refutation.
pub fn failed_condition(v: &Verdict) -> Option<FailedCondition> {
    match v {
        Verdict::NotEquivalent { failed } => Some(*failed),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let sig = NecSignature::closed(2, Sign::Minus, &[2]).unwrap();
        assert!(enumerate_epimorphisms(&sig, &FiniteGroup::cyclic(4)).unwrap().monodromies.is_empty());
        let sig = NecSignature::closed(3, Sign::Minus, &[]).unwrap();
        // a1, b1 must be conformal, so only the identity is available
        let c2 = FiniteGroup::cyclic_named(2, "t");
        assert_eq!(enumerate_epimorphisms(&sig, &c2).unwrap().monodromies.len(), 1);
        assert_eq!(brute_force(&sig, &c2), 1);
        let sig = NecSignature::closed(1, Sign::Minus, &[]).unwrap();
        let en = enumerate_epimorphisms(&sig, &FiniteGroup::cyclic(2)).unwrap();
        assert!(en.monodromies.is_empty() && en.warning.is_some());
    }

    /// Brute force over every assignment, no pruning.
    fn brute_force(sig: &NecSignature, g: &FiniteGroup) -> usize {
        let pres = canonical_presentation(sig);
        let n = pres.symbols().len();
        let mut count = 0;
        let mut idx = vec![0usize; n];
        loop {
            let w = Monodromy::new(pres.clone(), g.clone(), idx.clone()).unwrap();
            count += usize::from(w.validate().is_valid());
            let mut k = n;
            loop {
                if k == 0 {
                    return count;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < g.order() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let c4c2 = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic_named(2, "t")).unwrap();
        for (sig, g) in [
            (NecSignature::closed(2, Sign::Minus, &[2]).unwrap(), c4c2.clone()),
            (NecSignature::closed(2, Sign::Minus, &[2, 2]).unwrap(), c4c2.clone()),
            (NecSignature::closed(3, Sign::Minus, &[]).unwrap(), FiniteGroup::cyclic(4)),
            (NecSignature::closed(2, Sign::Minus, &[4]).unwrap(), FiniteGroup::semidirect_c2(4, 3).unwrap()),
        ] {
            let fast = enumerate_epimorphisms(&sig, &g).unwrap().monodromies.len();
            assert_eq!(fast, brute_force(&sig, &g), "{sig} into {g}");
        }
    }

    #[test]
    fn ex1_is_enumerated() {
        let inst = fixture_instance("ex1").unwrap();
        let en = enumerate_epimorphisms(&inst.signature, &inst.group).unwrap();
        assert!(en.monodromies.iter().any(|w| w.images() == inst.images.as_slice()));
    }

    #[test]
    fn fixtures_pass() {
        for (id, _) in FIXTURES {
            let r = fixture_report(id).unwrap();
            let failed: Vec<&FixtureCheck> = r.checks.iter().filter(|c| !c.pass).collect();
            assert!(r.pass, "{id}: {failed:?}");
        }
        assert!(fixture_report("ex3").is_err());
    }

    #[test]
    fn proposition() {
        let g = FiniteGroup::dicyclic(3).unwrap();
        let r = g.generator("r").unwrap();
        let s = g.generator("s").unwrap();
        let rs = g.mul(r, s);
        let pair = SquareRootPair { g1: s, g2: rs, f: g.mul(s, s), m: 2, two_m: 4, n: 3, abelian: false };
        let w = proposition_conjugacy_check(&g, &pair).unwrap();
        assert_eq!((w.alpha, w.w, w.conjugator.as_str()), (2, 1, "r^4"));
        let same = SquareRootPair { g2: s, n: 1, ..pair };
        let w = proposition_conjugacy_check(&g, &same).unwrap();
        assert_eq!((w.alpha, w.w), (0, 0));
        let even = SquareRootPair { n: 2, ..pair };
        assert!(matches!(proposition_conjugacy_check(&g, &even), Err(Error::Precondition(_))));
    }

    #[test]
    fn ex1_cell_contains_the_fixture_row() {
        let inst = fixture_instance("ex1").unwrap();
        let cell = scan(&inst.signature, &inst.group).unwrap();
        let row = cell
            .rows
            .iter()
            .find(|r| r.images == ["d1=u", "d2=u^3*t", "x1=u^8"] && r.g1 == "u" && r.g2 == "u*t")
            .expect("Ex1 row");
        assert_eq!(row.prediction, Prediction::NoPrediction);
        assert_eq!(row.verdict, Verdict::NotEquivalent { failed: FailedCondition::Condition3 });
        assert!(cell.rows.iter().all(|r| r.agreement && r.homology_oracle && r.long_relation));
    }
}
