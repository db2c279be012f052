//! Seeded property harness: every theorem-level claim as an executable,
//! exact check over catalog systems, custom Gram matrices, and root data.
//!
//! Determinism is a hard contract. The generator below is written out in
//! full so independent implementations reproduce identical streams, and
//! every trial derives its own generator from the plan seed and the trial
//! coordinates alone. Trials therefore commute: batches may run on any
//! number of threads and the aggregated report is byte-identical,
//! including which counterexample is reported (the one with the smallest
//! trial index).

use crate::coweights::{
    check_metric_characterization, retract_coweight, Coweight, RootDatum,
};
use crate::envelope::{concave_envelope_hull, concave_envelope_pav, vec_to_function};
use crate::error::{Error, Result};
use crate::fan::{enumerate_fan, FanCone};
use crate::linalg::{rat, RatVector, Rational};
use crate::retraction::{proj_subset, retract, retract_oracle, ENUMERATION_RANK_LIMIT};
use crate::root_data::{make_system, AlphaVec, Family, ObtuseBasis, SystemSpec};
use rayon::prelude::*;
use serde::Serialize;

/// Numerators of sampled rationals lie in `[-MAX_NUMERATOR, MAX_NUMERATOR]`.
pub const MAX_NUMERATOR: i64 = 20;
/// Denominators of sampled rationals lie in `[1, MAX_DENOMINATOR]`.
pub const MAX_DENOMINATOR: i64 = 6;

/// Deterministic 64-bit generator.
///
/// State advances by the odd constant `0x9E3779B97F4A7C15`; each output is
/// the advanced state passed through the finalizer
///
/// ```text
/// z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
/// z ^= z >> 27;  z *= 0x94D049BB133111EB;
/// z ^= z >> 31;
/// ```
///
/// (all operations wrapping). Sub-streams come from [`MixRng::derive`],
/// which folds a path of indices into the seed with the same finalizer, so
/// a trial's stream depends only on the seed and its coordinates, never on
/// scheduling.
#[derive(Debug, Clone)]
pub struct MixRng {
    state: u64,
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl MixRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Generator for the sub-stream at `path` under `seed`.
    pub fn derive(seed: u64, path: &[u64]) -> Self {
        let mut state = seed;
        for &p in path {
            state = mix64(state ^ p.wrapping_mul(0xD1B5_4A32_D192_ED03).wrapping_add(1));
        }
        Self { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix64(self.state)
    }

    /// Uniform-enough draw below `n` by reduction; the slight modulo bias
    /// is irrelevant for test-input generation and keeps the stream
    /// reproducible from the spec above.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        self.next_u64() % n
    }

    /// Inclusive integer range.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Shape of a sampled vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Independent rational coordinates.
    Generic,
    /// Nonnegative combination of the coweights: dominant by construction.
    Dominant,
    /// Nonnegative coordinates: in the positive cone by construction.
    Positive,
    /// Generic, then projected onto one random wall so a chosen pairing
    /// vanishes exactly.
    Boundary,
}

pub fn sample_rational(rng: &mut MixRng) -> Rational {
    rat(
        rng.range_i64(-MAX_NUMERATOR, MAX_NUMERATOR),
        rng.range_i64(1, MAX_DENOMINATOR),
    )
}

pub fn sample_nonneg_rational(rng: &mut MixRng) -> Rational {
    rat(
        rng.range_i64(0, MAX_NUMERATOR),
        rng.range_i64(1, MAX_DENOMINATOR),
    )
}

pub fn sample_vector(basis: &ObtuseBasis, rng: &mut MixRng, profile: Profile) -> AlphaVec {
    let n = basis.rank();
    match profile {
        Profile::Generic => {
            AlphaVec::new(RatVector::new((0..n).map(|_| sample_rational(rng)).collect()))
        }
        Profile::Positive => AlphaVec::new(RatVector::new(
            (0..n).map(|_| sample_nonneg_rational(rng)).collect(),
        )),
        Profile::Dominant => {
            let t = RatVector::new((0..n).map(|_| sample_nonneg_rational(rng)).collect());
            AlphaVec::new(basis.dual_basis().mul_vec(&t))
        }
        Profile::Boundary => {
            let x = sample_vector(basis, rng, Profile::Generic);
            if n == 0 {
                return x;
            }
            let k = rng.below(n as u64) as usize;
            let c = &basis.pairing(&x)[k] / basis.gram().at(k, k);
            x.sub(&basis.alpha(k).scale(&c))
        }
    }
}

/// Generic coweight sample for a root datum.
pub fn sample_coweight(datum: &RootDatum, rng: &mut MixRng) -> Coweight {
    RatVector::new((0..datum.rank()).map(|_| sample_rational(rng)).collect())
}

/// The checks the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    OrderPreserving,
    LeastElement,
    InfimumClosure,
    Fan,
    OracleAgreement,
    EnvelopeCommutes,
    MetricChar,
    Wellknown,
    Homogeneity,
    Idempotence,
}

impl CheckKind {
    pub fn all() -> Vec<CheckKind> {
        use CheckKind::*;
        vec![
            OrderPreserving,
            LeastElement,
            InfimumClosure,
            Fan,
            OracleAgreement,
            EnvelopeCommutes,
            MetricChar,
            Wellknown,
            Homogeneity,
            Idempotence,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::OrderPreserving => "order_preserving",
            CheckKind::LeastElement => "least_element",
            CheckKind::InfimumClosure => "infimum_closure",
            CheckKind::Fan => "fan",
            CheckKind::OracleAgreement => "oracle_agreement",
            CheckKind::EnvelopeCommutes => "envelope_commutes",
            CheckKind::MetricChar => "metric_char",
            CheckKind::Wellknown => "wellknown",
            CheckKind::Homogeneity => "homogeneity",
            CheckKind::Idempotence => "idempotence",
        }
    }

    pub fn parse(name: &str) -> Result<CheckKind> {
        CheckKind::all()
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown check {name:?}")))
    }

    /// Checks whose claim assumes the obtuseness hypothesis; their
    /// failures on a non-obtuse basis are reported as hypothesis
    /// violations rather than bugs.
    fn needs_obtuse(self) -> bool {
        matches!(
            self,
            CheckKind::OrderPreserving
                | CheckKind::LeastElement
                | CheckKind::InfimumClosure
                | CheckKind::Wellknown
        )
    }
}

/// What to run: systems and root data, a trial count per check, a seed.
#[derive(Debug, Clone)]
pub struct VerifyPlan {
    pub systems: Vec<SystemSpec>,
    pub data: Vec<RootDatum>,
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<CheckKind>,
    /// Fixed thread count; `None` uses the global pool. The report is
    /// identical either way.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub target: String,
    pub check: &'static str,
    /// `pass`, `fail`, or `hypothesis-violated`.
    pub status: String,
    pub passes: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    /// Retractions that fell back to subset enumeration, across all
    /// trials (expected to stay 0).
    pub fallbacks: usize,
    pub results: Vec<CheckResult>,
    /// Wall-clock duration; filled only on request, so that the default
    /// report is byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerifyReport {
    /// True when no check failed outright. With `allow_hypothesis`,
    /// hypothesis-violated entries (non-obtuse inputs) are tolerated.
    pub fn ok(&self, allow_hypothesis: bool) -> bool {
        self.results.iter().all(|r| {
            r.status == "pass" || (allow_hypothesis && r.status == "hypothesis-violated")
        })
    }
}

/// Outcome of one trial.
struct TrialOutcome {
    failure: Option<Counterexample>,
    fallbacks: usize,
}

impl TrialOutcome {
    fn pass() -> Self {
        Self {
            failure: None,
            fallbacks: 0,
        }
    }

    fn with_fallbacks(mut self, n: usize) -> Self {
        self.fallbacks = n;
        self
    }

    fn fail(trial: usize, input: String, lhs: String, rhs: String) -> Self {
        Self {
            failure: Some(Counterexample {
                trial,
                input,
                lhs,
                rhs,
            }),
            fallbacks: 0,
        }
    }
}

#[derive(Default)]
struct Agg {
    passes: usize,
    failures: usize,
    first: Option<Counterexample>,
    fallbacks: usize,
}

impl Agg {
    fn absorb(mut self, outcome: TrialOutcome) -> Self {
        self.fallbacks += outcome.fallbacks;
        match outcome.failure {
            None => self.passes += 1,
            Some(cex) => {
                self.failures += 1;
                self.first = match self.first.take() {
                    Some(old) if old.trial <= cex.trial => Some(old),
                    _ => Some(cex),
                };
            }
        }
        self
    }

    fn merge(mut self, other: Agg) -> Self {
        self.passes += other.passes;
        self.failures += other.failures;
        self.fallbacks += other.fallbacks;
        self.first = match (self.first.take(), other.first) {
            (Some(a), Some(b)) => Some(if a.trial <= b.trial { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Run every applicable (target, check) pair of the plan. Deterministic
/// given the seed, regardless of thread count.
pub fn run_verify(plan: &VerifyPlan) -> Result<VerifyReport> {
    if plan.trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    match plan.threads {
        None => run_verify_inner(plan),
        Some(t) => {
            if t == 0 {
                return Err(Error::Parse("thread count must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
            pool.install(|| run_verify_inner(plan))
        }
    }
}

fn run_verify_inner(plan: &VerifyPlan) -> Result<VerifyReport> {
    let mut results = Vec::new();
    let mut fallbacks = 0usize;
    for (ti, spec) in plan.systems.iter().enumerate() {
        let basis = make_system(spec)?;
        let target = spec.name();
        for (ci, &check) in plan.checks.iter().enumerate() {
            if !system_check_applicable(check, spec, &basis) {
                continue;
            }
            let (agg, trials_run) =
                run_system_check(&basis, spec, check, plan, ti as u64, ci as u64)?;
            fallbacks += agg.fallbacks;
            results.push(finish(target.clone(), check, basis.is_obtuse(), agg, trials_run));
        }
    }
    for (di, datum) in plan.data.iter().enumerate() {
        let target = datum
            .name()
            .map(str::to_owned)
            .unwrap_or_else(|| format!("datum{}", di + 1));
        for (ci, &check) in plan.checks.iter().enumerate() {
            if check != CheckKind::MetricChar {
                continue;
            }
            let agg = run_trials(plan, &[1, di as u64, ci as u64], plan.trials, |rng, trial| {
                trial_metric_char(datum, rng, trial)
            });
            fallbacks += agg.fallbacks;
            results.push(finish(target.clone(), check, true, agg, plan.trials));
        }
    }
    Ok(VerifyReport {
        seed: plan.seed,
        trials: plan.trials,
        fallbacks,
        results,
        elapsed_ms: None,
    })
}

fn system_check_applicable(check: CheckKind, spec: &SystemSpec, basis: &ObtuseBasis) -> bool {
    match check {
        CheckKind::MetricChar => false,
        CheckKind::EnvelopeCommutes => spec.family == Family::A,
        CheckKind::Fan | CheckKind::OracleAgreement => {
            basis.rank() <= ENUMERATION_RANK_LIMIT
        }
        _ => true,
    }
}

fn finish(
    target: String,
    check: CheckKind,
    obtuse: bool,
    agg: Agg,
    _trials: usize,
) -> CheckResult {
    let status = if agg.failures == 0 {
        "pass"
    } else if check.needs_obtuse() && !obtuse {
        "hypothesis-violated"
    } else {
        "fail"
    };
    CheckResult {
        target,
        check: check.name(),
        status: status.into(),
        passes: agg.passes,
        failures: agg.failures,
        counterexample: agg.first,
    }
}

/// Run `trials` independent trials in parallel; each derives its own
/// generator from `(seed, path..., trial)`, and the aggregation is
/// associative with a deterministic tie-break, so the result does not
/// depend on scheduling.
fn run_trials(
    plan: &VerifyPlan,
    path: &[u64],
    trials: usize,
    trial_fn: impl Fn(&mut MixRng, usize) -> TrialOutcome + Sync,
) -> Agg {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut full_path = path.to_vec();
            full_path.push(t as u64);
            let mut rng = MixRng::derive(plan.seed, &full_path);
            trial_fn(&mut rng, t)
        })
        .fold(Agg::default, Agg::absorb)
        .reduce(Agg::default, Agg::merge)
}

fn run_system_check(
    basis: &ObtuseBasis,
    spec: &SystemSpec,
    check: CheckKind,
    plan: &VerifyPlan,
    ti: u64,
    ci: u64,
) -> Result<(Agg, usize)> {
    let path = [0u64, ti, ci];
    let agg = match check {
        CheckKind::Wellknown => {
            // One exact, exhaustive check; trial count does not apply.
            let ok = basis.check_wellknown();
            let outcome = if ok {
                TrialOutcome::pass()
            } else {
                TrialOutcome::fail(
                    0,
                    format!("dual basis of {}", spec.name()),
                    "a coweight with a negative coordinate".into(),
                    "all coweights in the positive cone".into(),
                )
            };
            return Ok((Agg::default().absorb(outcome), 1));
        }
        CheckKind::Fan => {
            let cones = enumerate_fan(basis)?;
            run_trials(plan, &path, plan.trials, |rng, trial| {
                trial_fan(basis, &cones, rng, trial)
            })
        }
        CheckKind::OrderPreserving => run_trials(plan, &path, plan.trials, |rng, trial| {
            trial_order_preserving(basis, rng, trial)
        }),
        CheckKind::LeastElement => run_trials(plan, &path, plan.trials, |rng, trial| {
            trial_least_element(basis, rng, trial)
        }),
        CheckKind::InfimumClosure => run_trials(plan, &path, plan.trials, |rng, trial| {
            trial_infimum_closure(basis, rng, trial)
        }),
        CheckKind::OracleAgreement => run_trials(plan, &path, plan.trials, |rng, trial| {
            trial_oracle_agreement(basis, rng, trial)
        }),
        CheckKind::EnvelopeCommutes => run_trials(plan, &path, plan.trials, |rng, trial| {
            trial_envelope_commutes(basis, rng, trial)
        }),
        CheckKind::Homogeneity => run_trials(plan, &path, plan.trials, |rng, trial| {
            trial_homogeneity(basis, rng, trial)
        }),
        CheckKind::Idempotence => run_trials(plan, &path, plan.trials, |rng, trial| {
            trial_idempotence(basis, rng, trial)
        }),
        CheckKind::MetricChar => unreachable!("not applicable to systems"),
    };
    Ok((agg, plan.trials))
}

fn retract_or_fail(
    basis: &ObtuseBasis,
    x: &AlphaVec,
    trial: usize,
    fallbacks: &mut usize,
) -> std::result::Result<AlphaVec, TrialOutcome> {
    match retract(basis, x) {
        Ok(r) => {
            if r.fell_back {
                *fallbacks += 1;
            }
            Ok(r.value)
        }
        Err(e) => Err(TrialOutcome::fail(
            trial,
            format!("x = {x}"),
            format!("retraction error: {e}"),
            String::new(),
        )),
    }
}

fn trial_order_preserving(basis: &ObtuseBasis, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let x = sample_vector(basis, rng, Profile::Generic);
    let bump = sample_vector(basis, rng, Profile::Positive);
    let y = x.add(&bump);
    let mut fb = 0;
    let lx = match retract_or_fail(basis, &x, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    let ly = match retract_or_fail(basis, &y, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    if basis.leq(&lx, &ly) {
        TrialOutcome::pass().with_fallbacks(fb)
    } else {
        TrialOutcome::fail(
            trial,
            format!("x = {x}, y = {y} (x <= y)"),
            format!("retract(x) = {lx}"),
            format!("retract(y) = {ly}, not above"),
        )
        .with_fallbacks(fb)
    }
}

fn trial_least_element(basis: &ObtuseBasis, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let x = sample_vector(basis, rng, Profile::Generic);
    let mut fb = 0;
    let lx = match retract_or_fail(basis, &x, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    // One constructed dominant upper bound and one filtered draw.
    let lift = sample_vector(basis, rng, Profile::Dominant);
    let constructed = lx.add(&lift);
    let drawn = sample_vector(basis, rng, Profile::Dominant);
    for z in [constructed, drawn] {
        if basis.in_dominant(&z) && basis.leq(&x, &z) && !basis.leq(&lx, &z) {
            return TrialOutcome::fail(
                trial,
                format!("x = {x}, dominant z = {z} with z >= x"),
                format!("retract(x) = {lx}"),
                "expected retract(x) <= z".into(),
            )
            .with_fallbacks(fb);
        }
    }
    TrialOutcome::pass().with_fallbacks(fb)
}

fn trial_infimum_closure(basis: &ObtuseBasis, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let size = rng.range_i64(2, 10) as usize;
    let family: Vec<AlphaVec> = (0..size)
        .map(|_| sample_vector(basis, rng, Profile::Dominant))
        .collect();
    let inf = basis
        .infimum(&family)
        .expect("family is non-empty by construction");
    if basis.in_dominant(&inf) {
        TrialOutcome::pass()
    } else {
        let rendered: Vec<String> = family.iter().map(|v| v.to_string()).collect();
        TrialOutcome::fail(
            trial,
            format!("dominant family {{{}}}", rendered.join(", ")),
            format!("infimum = {inf}"),
            "expected a dominant infimum".into(),
        )
    }
}

fn trial_fan(
    basis: &ObtuseBasis,
    cones: &[FanCone],
    rng: &mut MixRng,
    trial: usize,
) -> TrialOutcome {
    let x = sample_vector(basis, rng, Profile::Generic);
    let mut fb = 0;
    let lx = match retract_or_fail(basis, &x, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    let mut covered = false;
    for cone in cones {
        if cone.contains(&x) {
            covered = true;
            let projected = proj_subset(basis, &cone.subset, &x).value;
            if projected != lx {
                return TrialOutcome::fail(
                    trial,
                    format!("x = {x} in the cone for subset {:?}", cone.subset),
                    format!("projection = {projected}"),
                    format!("retraction = {lx}"),
                )
                .with_fallbacks(fb);
            }
        }
    }
    if covered {
        TrialOutcome::pass().with_fallbacks(fb)
    } else {
        TrialOutcome::fail(
            trial,
            format!("x = {x}"),
            "no cone contains the sample".into(),
            "the fan must cover the space".into(),
        )
        .with_fallbacks(fb)
    }
}

fn trial_oracle_agreement(basis: &ObtuseBasis, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let x = sample_vector(basis, rng, Profile::Generic);
    let fast = retract(basis, &x);
    let slow = retract_oracle(basis, &x);
    match (fast, slow) {
        (Ok(a), Ok(b)) => {
            let fb = usize::from(a.fell_back);
            if a.value == b.value
                && a.active_set == b.active_set
                && a.residual_coeffs == b.residual_coeffs
            {
                TrialOutcome::pass().with_fallbacks(fb)
            } else {
                TrialOutcome::fail(
                    trial,
                    format!("x = {x}"),
                    format!("growth: {}", a.value),
                    format!("enumeration: {}", b.value),
                )
                .with_fallbacks(fb)
            }
        }
        (a, b) => TrialOutcome::fail(
            trial,
            format!("x = {x}"),
            format!("growth: {:?}", a.err()),
            format!("enumeration: {:?}", b.err()),
        ),
    }
}

fn trial_envelope_commutes(basis: &ObtuseBasis, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let v = sample_vector(basis, rng, Profile::Generic);
    let mut fb = 0;
    let lv = match retract_or_fail(basis, &v, trial, &mut fb) {
        Ok(r) => r,
        Err(f) => return f,
    };
    let f = vec_to_function(&v);
    let hull = concave_envelope_hull(&f);
    let pav = concave_envelope_pav(&f).envelope;
    if hull != pav {
        return TrialOutcome::fail(
            trial,
            format!("f = {f}"),
            format!("hull: {hull}"),
            format!("pooling: {pav}"),
        )
        .with_fallbacks(fb);
    }
    let retracted = vec_to_function(&lv);
    if retracted == hull {
        TrialOutcome::pass().with_fallbacks(fb)
    } else {
        TrialOutcome::fail(
            trial,
            format!("v = {v}, f = {f}"),
            format!("function of retract(v): {retracted}"),
            format!("envelope of f: {hull}"),
        )
        .with_fallbacks(fb)
    }
}

fn trial_homogeneity(basis: &ObtuseBasis, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let x = sample_vector(basis, rng, Profile::Generic);
    let t = rat(rng.range_i64(1, MAX_NUMERATOR), rng.range_i64(1, MAX_DENOMINATOR));
    let mut fb = 0;
    let lx = match retract_or_fail(basis, &x, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    let lscaled = match retract_or_fail(basis, &x.scale(&t), trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    if lscaled == lx.scale(&t) {
        TrialOutcome::pass().with_fallbacks(fb)
    } else {
        TrialOutcome::fail(
            trial,
            format!("x = {x}, t = {t}"),
            format!("retract(t x) = {lscaled}"),
            format!("t retract(x) = {}", lx.scale(&t)),
        )
        .with_fallbacks(fb)
    }
}

fn trial_idempotence(basis: &ObtuseBasis, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let x = sample_vector(basis, rng, Profile::Generic);
    let mut fb = 0;
    let lx = match retract_or_fail(basis, &x, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    // The value dominates the input (residual is a nonnegative root
    // combination), for any positive-definite Gram matrix.
    if !basis.leq(&x, &lx) {
        return TrialOutcome::fail(
            trial,
            format!("x = {x}"),
            format!("retract(x) = {lx}"),
            "expected x <= retract(x)".into(),
        )
        .with_fallbacks(fb);
    }
    let llx = match retract_or_fail(basis, &lx, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    if llx != lx {
        return TrialOutcome::fail(
            trial,
            format!("x = {x}"),
            format!("retract(retract(x)) = {llx}"),
            format!("retract(x) = {lx}"),
        )
        .with_fallbacks(fb);
    }
    // The retraction fixes dominant vectors.
    let z = sample_vector(basis, rng, Profile::Dominant);
    let lz = match retract_or_fail(basis, &z, trial, &mut fb) {
        Ok(v) => v,
        Err(f) => return f,
    };
    if lz == z {
        TrialOutcome::pass().with_fallbacks(fb)
    } else {
        TrialOutcome::fail(
            trial,
            format!("dominant z = {z}"),
            format!("retract(z) = {lz}"),
            "expected the identity on the dominant cone".into(),
        )
        .with_fallbacks(fb)
    }
}

fn trial_metric_char(datum: &RootDatum, rng: &mut MixRng, trial: usize) -> TrialOutcome {
    let lambda = sample_coweight(datum, rng);
    let factors = datum.factors().len();
    let flat: Vec<Rational> = (0..factors).map(|_| rat(1, 1)).collect();
    let skew: Vec<Rational> = (0..factors)
        .map(|_| rat(rng.range_i64(2, 9), rng.range_i64(1, 3)))
        .collect();
    let samples: Vec<Coweight> = (0..20)
        .map(|_| {
            let z = sample_coweight(datum, rng);
            retract_coweight(datum, &z)
                .expect("retraction of a sampled coweight")
                .value
        })
        .collect();
    for scalings in [flat, skew] {
        match check_metric_characterization(datum, &lambda, &scalings, &samples) {
            Ok(report) => {
                if let Some(worst) = report.failures.first() {
                    return TrialOutcome::fail(
                        trial,
                        format!("lambda = {lambda}, scalings {scalings:?}"),
                        format!(
                            "competitor {} at squared distance {}",
                            worst.competitor, worst.competitor_dist_sq
                        ),
                        format!(
                            "claimed minimizer {} at squared distance {}",
                            report.minimizer, worst.minimizer_dist_sq
                        ),
                    );
                }
            }
            Err(e) => {
                return TrialOutcome::fail(
                    trial,
                    format!("lambda = {lambda}"),
                    format!("metric check error: {e}"),
                    String::new(),
                );
            }
        }
    }
    TrialOutcome::pass()
}
