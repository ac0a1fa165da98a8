//! Accessibility analyses: the generic pretest, the exact index through
//! real radicals, the invariant closure, module bounds, strong
//! accessibility and rank-`l` singular sets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{ideal_equal, Ideal, Invariance, RealRadical};
use crate::lie::{Mode, SystemSpec};
use crate::minors::{generic_rank, minor_ideal, FieldMatrix, GenericRank};
use crate::module::{module_equal, ChainStatus, ChainStep, ModuleChain};
use crate::poly::Polynomial;
use crate::sampling;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Knobs shared by every analysis.
#[derive(Clone, Debug)]
pub struct Options {
    /// Depth cap; `None` means `2n`.
    pub max_depth: Option<usize>,
    pub seed: u64,
    /// Rank below which a point is singular; `None` means `n`.
    pub threshold: Option<usize>,
    /// Cap on enlargement rounds of the invariant closure.
    pub closure_rounds: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_depth: None,
            seed: DEFAULT_SEED,
            threshold: None,
            closure_rounds: 64,
        }
    }
}

impl Options {
    pub fn cap(&self, sys: &SystemSpec) -> usize {
        self.max_depth.unwrap_or(2 * sys.nvars())
    }

    pub fn threshold(&self, sys: &SystemSpec) -> Result<usize> {
        let n = sys.nvars();
        let l = self.threshold.unwrap_or(n);
        if l == 0 || l > n {
            return Err(Error::RankThreshold { l, n });
        }
        Ok(l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    GenericallyAccessible,
    NowhereAccessible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    /// `r*`
    ExactR,
    /// `l*`
    ExactL,
    /// `r̂`
    UpperR,
    /// `l̂`
    UpperL,
    Undecided,
}

/// Which procedure produced the singular set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    GenericTest,
    Algorithm1,
    Algorithm2,
    ModuleBound,
    RankL,
    Strong,
}

/// Shape of the singular set as far as it was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetStatus {
    Empty,
    Everywhere,
    Proper,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub generator: String,
    pub field: String,
    pub derivative: String,
}

/// What Algorithm 1 saw at one depth.
#[derive(Clone, Debug, Serialize)]
pub struct DepthRecord {
    pub depth: usize,
    pub columns: usize,
    pub minors: usize,
    /// Reduced Gröbner basis of the minor ideal.
    pub minor_ideal: Vec<String>,
    pub real_radical: Option<Vec<String>>,
    pub unsupported: Option<String>,
    pub invariant: Option<bool>,
    pub witness: Option<WitnessRecord>,
}

/// A consistency check recorded in the report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub route: Route,
    pub mode: Mode,
    pub variables: Vec<String>,
    pub threshold: usize,
    pub generic_rank: usize,
    /// First depth whose module reaches the threshold rank.
    pub generic_depth: Option<usize>,
    pub generic_witness: Option<GenericRank>,
    pub verdict: Verdict,
    #[serde(serialize_with = "ser_ideal")]
    pub singular_ideal: Option<Ideal>,
    pub singular_set: Option<SetStatus>,
    pub index_kind: IndexKind,
    pub index_value: Option<usize>,
    /// Module-chain bound `r̂` or `l̂` when it was computed.
    pub bound: Option<usize>,
    pub chain_status: Option<ChainStatus>,
    pub depths: Vec<DepthRecord>,
    pub module_trace: Vec<ChainStep>,
    pub closure_rounds: Vec<Vec<String>>,
    /// `6d^2 - 2d + 2` for planar systems of degree `d`.
    pub planar_bound: Option<u32>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

fn ser_ideal<S: Serializer>(ideal: &Option<Ideal>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match ideal {
        None => s.serialize_none(),
        Some(i) => canonical_generators(i)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s),
    }
}

/// Reduced Gröbner basis, largest leading term first.
pub fn canonical_generators(ideal: &Ideal) -> Vec<Polynomial> {
    let mut gb = ideal.groebner_basis().to_vec();
    gb.reverse();
    gb
}

pub fn render_ideal(ideal: &Ideal) -> String {
    let gens = canonical_generators(ideal);
    if gens.is_empty() {
        return "⟨0⟩".into();
    }
    let body: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("⟨{}⟩", body.join(", "))
}

fn strings(gens: &[Polynomial]) -> Vec<String> {
    gens.iter().map(ToString::to_string).collect()
}

fn set_status(ideal: &Ideal) -> SetStatus {
    if !ideal.is_proper() {
        SetStatus::Empty
    } else if ideal.is_zero() {
        SetStatus::Everywhere
    } else {
        SetStatus::Proper
    }
}

impl AnalysisReport {
    fn new(route: Route, sys: &SystemSpec, mode: Mode, threshold: usize, test: &GenericTest) -> Self {
        AnalysisReport {
            route,
            mode,
            variables: sys.ring().vars().names().to_vec(),
            threshold,
            generic_rank: test.rank,
            generic_depth: test.depth,
            generic_witness: None,
            verdict: test.verdict,
            singular_ideal: None,
            singular_set: None,
            index_kind: IndexKind::Undecided,
            index_value: None,
            bound: None,
            chain_status: None,
            depths: Vec::new(),
            module_trace: Vec::new(),
            closure_rounds: Vec::new(),
            planar_bound: planar_bound(sys),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn set_singular(&mut self, ideal: Ideal) {
        self.singular_set = Some(set_status(&ideal));
        self.singular_ideal = Some(ideal);
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn exact_index(&self) -> Option<usize> {
        match self.index_kind {
            IndexKind::ExactR | IndexKind::ExactL => self.index_value,
            _ => None,
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Degree bound quoted for planar polynomial systems of degree `d`.
pub fn planar_bound(sys: &SystemSpec) -> Option<u32> {
    if sys.nvars() != 2 {
        return None;
    }
    let d = std::iter::once(sys.drift())
        .chain(sys.inputs())
        .flat_map(|f| f.components().iter().filter_map(Polynomial::total_degree))
        .max()
        .unwrap_or(0);
    Some(6 * d * d - 2 * d + 2)
}

/// Outcome of the generic rank pretest, with the chain it built.
#[derive(Clone, Debug)]
pub struct GenericTest {
    pub rank: usize,
    /// First depth at which the rank reached the threshold.
    pub depth: Option<usize>,
    pub verdict: Verdict,
    pub chain: ModuleChain,
}

/// Generic rank of `C^{n-1}` (or `C_0^{n-1}`), stopping as soon as the
/// threshold rank is reached.
pub fn generic_test(sys: &SystemSpec, mode: Mode, threshold: usize) -> GenericTest {
    let n = sys.nvars();
    let mut chain = ModuleChain::new(sys, mode);
    while chain.generic_rank() < threshold && chain.depth() + 1 < n.max(1) {
        if !chain.step(sys) {
            break;
        }
    }
    let rank = chain.generic_rank();
    let depth = (rank >= threshold).then(|| chain.depth());
    let verdict = if rank >= threshold {
        Verdict::GenericallyAccessible
    } else {
        Verdict::NowhereAccessible
    };
    GenericTest {
        rank,
        depth,
        verdict,
        chain,
    }
}

/// Advances the chain until its depth is at least `k`; false once it is closed.
fn advance(chain: &mut ModuleChain, sys: &SystemSpec, k: usize) {
    while chain.depth() < k && !chain.is_closed() {
        if !chain.step(sys) {
            break;
        }
    }
}

/// `M_k` with the chain's generators of depth at most `k` as columns.
/// Minor ideals depend on the column module only, so dropping generators
/// that were already members does not change them.
fn matrix_at(chain: &ModuleChain, sys: &SystemSpec, k: usize) -> FieldMatrix {
    FieldMatrix::new(sys.ring(), chain.generators_up_to(k), k, chain.mode()).expect("chain shares the ring")
}

/// Minor ideal of size `l`; the zero ideal when there are fewer columns.
fn minors_or_zero(m: &FieldMatrix, l: usize) -> (Ideal, usize) {
    if m.cols() < l {
        return (Ideal::zero(m.ring()), 0);
    }
    let mi = minor_ideal(m, l).expect("size checked");
    let count = mi.ideal.generators().len();
    (mi.ideal, count)
}

fn nowhere(mut report: AnalysisReport, sys: &SystemSpec) -> AnalysisReport {
    report.set_singular(Ideal::zero(sys.ring()));
    report.notes.push(format!(
        "generic rank {} is below {}: every point is singular",
        report.generic_rank, report.threshold
    ));
    report
}

fn exact_kind(mode: Mode) -> IndexKind {
    match mode {
        Mode::Accessibility => IndexKind::ExactR,
        Mode::Strong => IndexKind::ExactL,
    }
}

fn upper_kind(mode: Mode) -> IndexKind {
    match mode {
        Mode::Accessibility => IndexKind::UpperR,
        Mode::Strong => IndexKind::UpperL,
    }
}

/// Exact index and singular set: from the first full-rank depth, take the
/// minor ideal, its real radical, and stop at the first invariant one.
/// An unsupported real radical hands the set over to [`algorithm2`].
pub fn algorithm1(sys: &SystemSpec, mode: Mode, opts: &Options) -> Result<AnalysisReport> {
    let l = opts.threshold(sys)?;
    let cap = opts.cap(sys);
    let test = generic_test(sys, mode, l);
    let mut report = AnalysisReport::new(Route::Algorithm1, sys, mode, l, &test);
    let Some(kstar) = test.depth else {
        return Ok(nowhere(report, sys));
    };
    let ops = sys.operators();
    let mut chain = test.chain;
    report.generic_witness = Some(generic_rank(&matrix_at(&chain, sys, kstar), opts.seed));
    let mut k = kstar;
    loop {
        advance(&mut chain, sys, k);
        let m = matrix_at(&chain, sys, k);
        let (minors, count) = minors_or_zero(&m, l);
        let mut rec = DepthRecord {
            depth: k,
            columns: m.cols(),
            minors: count,
            minor_ideal: strings(&canonical_generators(&minors)),
            real_radical: None,
            unsupported: None,
            invariant: None,
            witness: None,
        };
        let rad = match minors.real_radical_restricted() {
            RealRadical::Computed(j) => j,
            RealRadical::Unsupported(reason) => {
                rec.unsupported = Some(reason.clone());
                report.depths.push(rec);
                report.notes.push(format!(
                    "real radical of the minor ideal at depth {k} is outside the supported classes ({reason}); \
                     index undecided, singular set from the invariant closure"
                ));
                let alt = algorithm2(sys, mode, opts)?;
                report.route = Route::Algorithm2;
                report.singular_ideal = alt.singular_ideal;
                report.singular_set = alt.singular_set;
                report.closure_rounds = alt.closure_rounds;
                report.checks.extend(alt.checks);
                report.module_trace = chain.trace().to_vec();
                return Ok(report);
            }
        };
        rec.real_radical = Some(strings(&canonical_generators(&rad)));
        if !rad.is_proper() {
            rec.invariant = Some(true);
            report.depths.push(rec);
            report.notes.push(format!("no real singular points from depth {k} on"));
            report.set_singular(rad);
            report.index_kind = exact_kind(mode);
            report.index_value = Some(k);
            break;
        }
        let inv = rad.is_invariant(&ops);
        rec.invariant = Some(inv.holds());
        if let Invariance::Witness {
            generator,
            field,
            derivative,
        } = &inv
        {
            rec.witness = Some(WitnessRecord {
                generator: generator.to_string(),
                field: field.clone(),
                derivative: derivative.to_string(),
            });
        }
        report.depths.push(rec);
        if inv.holds() {
            report.set_singular(rad);
            report.index_kind = exact_kind(mode);
            report.index_value = Some(k);
            break;
        }
        if k >= cap {
            report.notes.push(format!("depth cap {cap} reached without an invariant real radical"));
            report.chain_status = Some(ChainStatus::CapReached(cap));
            break;
        }
        k += 1;
    }
    if let Some(ideal) = &report.singular_ideal {
        let passed = ideal.is_invariant(&ops).holds();
        report.check("singular ideal invariant", passed, render_ideal(ideal));
    }
    let mono = report
        .depths
        .windows(2)
        .all(|w| minors_contained(sys, &w[0].minor_ideal, &w[1].minor_ideal));
    report.check("minor ideals ascend", mono, format!("{} depths", report.depths.len()));
    report.module_trace = chain.trace().to_vec();
    Ok(report)
}

fn minors_contained(sys: &SystemSpec, a: &[String], b: &[String]) -> bool {
    let ring = sys.ring();
    let parse = |g: &[String]| Ideal::new(ring, g.iter().map(|s| ring.parse(s).expect("printed polynomial parses")));
    parse(b).contains_ideal(&parse(a))
}

/// Singular set as the variety of the invariant closure of the minor ideal
/// at the first full-rank depth; no index claim.
pub fn algorithm2(sys: &SystemSpec, mode: Mode, opts: &Options) -> Result<AnalysisReport> {
    let l = opts.threshold(sys)?;
    let test = generic_test(sys, mode, l);
    let mut report = AnalysisReport::new(Route::Algorithm2, sys, mode, l, &test);
    let Some(q) = test.depth else {
        return Ok(nowhere(report, sys));
    };
    let chain = test.chain;
    let m = matrix_at(&chain, sys, q);
    report.generic_witness = Some(generic_rank(&m, opts.seed));
    let (minors, count) = minors_or_zero(&m, l);
    report.depths.push(DepthRecord {
        depth: q,
        columns: m.cols(),
        minors: count,
        minor_ideal: strings(&canonical_generators(&minors)),
        real_radical: None,
        unsupported: None,
        invariant: None,
        witness: None,
    });
    report.module_trace = chain.trace().to_vec();
    if !minors.is_proper() {
        report.notes.push(format!("minor ideal at depth {q} contains 1: accessible everywhere"));
        report.set_singular(minors);
        return Ok(report);
    }
    let ops = sys.operators();
    let closure = minors.invariant_closure(&ops, opts.closure_rounds);
    report.closure_rounds = closure.rounds.iter().map(|r| strings(r)).collect();
    if closure.capped {
        report
            .notes
            .push(format!("invariant closure stopped after {} rounds", opts.closure_rounds));
    }
    let passed = closure.ideal.is_invariant(&ops).holds();
    report.check("closure invariant", passed, render_ideal(&closure.ideal));
    report.set_singular(closure.ideal);
    Ok(report)
}

/// Module route: stabilise the chain to `r̂` (or `l̂`) and take the minor
/// ideal of size `l` there.
pub fn rank_l_analysis(sys: &SystemSpec, l: usize, mode: Mode, opts: &Options) -> Result<AnalysisReport> {
    let n = sys.nvars();
    if l == 0 || l > n {
        return Err(Error::RankThreshold { l, n });
    }
    let test = generic_test(sys, mode, l);
    let route = if l == n { Route::ModuleBound } else { Route::RankL };
    let mut report = AnalysisReport::new(route, sys, mode, l, &test);
    let mut chain = test.chain;
    let status = chain.run(sys, opts.cap(sys));
    report.chain_status = Some(status);
    let k = match status {
        ChainStatus::Stabilized(k) => {
            report.index_kind = upper_kind(mode);
            report.index_value = Some(k);
            report.bound = Some(k);
            k
        }
        ChainStatus::CapReached(k) => {
            report.notes.push(format!(
                "module chain still growing at the depth cap {k}; the set below is an outer approximation"
            ));
            k
        }
    };
    let m = matrix_at(&chain, sys, k);
    let (minors, count) = minors_or_zero(&m, l);
    report.depths.push(DepthRecord {
        depth: k,
        columns: m.cols(),
        minors: count,
        minor_ideal: strings(&canonical_generators(&minors)),
        real_radical: None,
        unsupported: None,
        invariant: None,
        witness: None,
    });
    if let RealRadical::Computed(r) = minors.real_radical_restricted() {
        report.depths[0].real_radical = Some(strings(&canonical_generators(&r)));
    }
    if matches!(status, ChainStatus::Stabilized(_)) {
        report.check("module closed under ad", chain.verify_closed(sys), format!("depth {k}"));
    }
    report.module_trace = chain.trace().to_vec();
    report.set_singular(minors);
    Ok(report)
}

/// Strong accessibility: generic strong test, the exact strong index when
/// Algorithm 1 completes, the bound `l̂`, and agreement with the plain
/// accessibility singular set.
pub fn strong_analysis(sys: &SystemSpec, opts: &Options) -> Result<AnalysisReport> {
    let l = opts.threshold(sys)?;
    let strong = algorithm1(sys, Mode::Strong, opts)?;
    let mut report = strong.clone();
    report.route = Route::Strong;
    if strong.verdict == Verdict::NowhereAccessible {
        report.notes.push("nowhere strongly accessible".into());
        return Ok(report);
    }
    let plain = algorithm1(sys, Mode::Accessibility, opts)?;
    let mut chain = ModuleChain::new(sys, Mode::Strong);
    let status = chain.run(sys, opts.cap(sys));
    report.chain_status = Some(status);
    if let ChainStatus::Stabilized(k) = status {
        report.bound = Some(k);
        if report.index_kind == IndexKind::Undecided {
            report.index_kind = IndexKind::UpperL;
            report.index_value = Some(k);
        }
    }
    report.module_trace = chain.trace().to_vec();
    if let (Some(r), Some(ls)) = (plain.exact_index(), strong.exact_index()) {
        report.check("l* in {r*, r*+1}", ls == r || ls == r + 1, format!("r* = {r}, l* = {ls}"));
    }
    if let (Some(b), Some(ls)) = (report.bound, strong.exact_index()) {
        report.check("l̂ ≥ l*", b >= ls, format!("l̂ = {b}, l* = {ls}"));
    }
    if let (Some(a), Some(b)) = (&plain.singular_ideal, &strong.singular_ideal) {
        let (same, how) = same_variety(a, b, sys, opts.seed);
        report.check("strong and plain singular sets agree", same, how);
    }
    if sys.is_driftless() {
        let plain_chain = ModuleChain::new(sys, Mode::Accessibility);
        report.check(
            "driftless: C_0 = C",
            module_equal(&plain_chain.module(), &ModuleChain::new(sys, Mode::Strong).module()),
            "depth-0 modules coincide",
        );
    }
    // the plain singular set is the reported one
    if let Some(a) = plain.singular_ideal {
        report.set_singular(a);
    }
    report.threshold = l;
    Ok(report)
}

/// Whether two ideals have the same real zero set: equal ideals, equal
/// supported real radicals, or else agreement at sampled points.
pub fn same_variety(a: &Ideal, b: &Ideal, sys: &SystemSpec, seed: u64) -> (bool, String) {
    if ideal_equal(a, b) {
        return (true, "equal ideals".into());
    }
    if let (RealRadical::Computed(ra), RealRadical::Computed(rb)) =
        (a.real_radical_restricted(), b.real_radical_restricted())
    {
        return (ideal_equal(&ra, &rb), "real radicals compared".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = sampling::points_on_variety(a, &mut rng, 100);
    pts.extend(sampling::points_on_variety(b, &mut rng, 100));
    for _ in 0..100 {
        pts.push(sampling::small_point(&mut rng, sys.nvars()));
    }
    let agree = pts
        .iter()
        .all(|p| a.vanishes_at(p).unwrap() == b.vanishes_at(p).unwrap());
    (agree, format!("sampling agreement on {} points", pts.len()))
}

/// Numeric cross-check of a report: at sampled points the bracket matrix
/// of the stabilised module drops below the threshold rank exactly where
/// the singular ideal vanishes.
#[derive(Clone, Debug, Serialize)]
pub struct SampleDiagnostics {
    pub points: usize,
    pub on_variety: usize,
    pub mismatches: Vec<Vec<String>>,
    pub depth: usize,
}

pub fn sample_check(report: &AnalysisReport, sys: &SystemSpec, trials: usize, opts: &Options) -> SampleDiagnostics {
    let mut chain = ModuleChain::new(sys, report.mode);
    let status = chain.run(sys, opts.cap(sys));
    let depth = match status {
        ChainStatus::Stabilized(k) | ChainStatus::CapReached(k) => k,
    };
    let m = matrix_at(&chain, sys, depth);
    let ideal = report
        .singular_ideal
        .clone()
        .unwrap_or_else(|| Ideal::zero(sys.ring()));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pts = sampling::points_on_variety(&ideal, &mut rng, trials / 2);
    while pts.len() < trials {
        pts.push(sampling::small_point(&mut rng, sys.nvars()));
    }
    let mut on = 0;
    let mut mismatches = Vec::new();
    for p in &pts {
        let vanish = ideal.vanishes_at(p).expect("point length");
        on += vanish as usize;
        let low = m.numeric_rank(p).expect("point length") < report.threshold;
        if vanish != low {
            mismatches.push(p.iter().map(ToString::to_string).collect());
        }
    }
    SampleDiagnostics {
        points: pts.len(),
        on_variety: on,
        mismatches,
        depth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::VectorField;
    use crate::poly::Ring;

    fn ex41() -> SystemSpec {
        let r = Ring::with_names(["x1", "x2"]).unwrap();
        SystemSpec::new(
            &r,
            VectorField::zero(&r, "f"),
            vec![
                VectorField::parse(&r, "g1", &["x2", "0"]).unwrap(),
                VectorField::parse(&r, "g2", &["0", "x1^2"]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ex41_index() {
        let sys = ex41();
        let rep = algorithm1(&sys, Mode::Accessibility, &Options::default()).unwrap();
        assert_eq!(rep.index_kind, IndexKind::ExactR);
        assert_eq!(rep.index_value, Some(2));
        assert_eq!(render_ideal(rep.singular_ideal.as_ref().unwrap()), "⟨x1, x2⟩");
        assert_eq!(rep.planar_bound, Some(22));
        assert!(rep.all_checks_pass(), "{:?}", rep.checks);
        assert_eq!(rep.depths[0].witness.as_ref().unwrap().field, "g1");
    }

    #[test]
    fn single_field_is_nowhere_accessible() {
        let r = Ring::with_names(["x1", "x2"]).unwrap();
        let sys = SystemSpec::new(
            &r,
            VectorField::zero(&r, "f"),
            vec![VectorField::parse(&r, "g1", &["x2", "0"]).unwrap()],
        )
        .unwrap();
        let t = generic_test(&sys, Mode::Accessibility, 2);
        assert_eq!((t.rank, t.verdict), (1, Verdict::NowhereAccessible));
    }

    #[test]
    fn ex42_closure() {
        let sys = ex41();
        let rep = algorithm2(&sys, Mode::Accessibility, &Options::default()).unwrap();
        assert_eq!(rep.closure_rounds.len(), 2);
        let want = Ideal::parse(sys.ring(), &["x1^2*x2", "x1*x2^2", "x1^4", "x2^3"]).unwrap();
        assert!(ideal_equal(rep.singular_ideal.as_ref().unwrap(), &want));
        let diag = sample_check(&rep, &sys, 60, &Options::default());
        assert!(diag.mismatches.is_empty() && diag.on_variety > 0);
    }
}
