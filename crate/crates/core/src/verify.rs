//! Randomized cross-checks of the measurement-model identities.
//!
//! Each suite computes the same quantity along independent routes: the
//! library path (post-processed Kraus lists, never touching the composite
//! space) and a reference path that builds `ν(ρ)` on `H ⊗ K` (or
//! `H ⊗ K ⊗ K'`) explicitly and takes partial traces. The worst residual per
//! check is recorded against a fixed tolerance.

use std::fmt;
use std::str::FromStr;

use crate::channel::{apply_separable, conditioned_channel, product_channel, SeparableChannel};
use crate::error::{Error, Result};
use crate::matrix::{partial_trace_last, tensor, trace_product, Complex64, ComplexMatrix, ONE};
use crate::model::{
    conditioned_instruments, conditioned_mm, measured_instrument, measured_instrument_direct,
    measured_observable_mm, sequential_product_instruments, sequential_product_mm,
    MeasurementModel,
};
use crate::objects::{
    apply_dual, apply_operation, measured_observable, post_process_instrument,
    post_process_observable, Instrument, State, StochasticKernel,
};
use crate::random::{
    labeled_outcomes, random_kernel, random_model, random_state, trial_rng, ModelShape,
};
use crate::stats::{
    expectation, mm_stochastic_operator, separable_stochastic_operator, stochastic_operator,
    uncertainty_report, variance,
};

/// Random states drawn per trial.
pub const STATES_PER_TRIAL: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lemma21,
    Duality,
    Thm31,
    Thm32,
    Thm33,
    Thm41,
    Thm42,
    PostProcessing,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma21,
        Suite::Duality,
        Suite::Thm31,
        Suite::Thm32,
        Suite::Thm33,
        Suite::Thm41,
        Suite::Thm42,
        Suite::PostProcessing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma21 => "lemma21",
            Suite::Duality => "duality",
            Suite::Thm31 => "thm31",
            Suite::Thm32 => "thm32",
            Suite::Thm33 => "thm33",
            Suite::Thm41 => "thm41",
            Suite::Thm42 => "thm42",
            Suite::PostProcessing => "postprocessing",
        }
    }

    /// Stable id used to derive per-suite random streams.
    pub fn id(self) -> u32 {
        match self {
            Suite::Lemma21 => 1,
            Suite::Duality => 2,
            Suite::Thm31 => 3,
            Suite::Thm32 => 4,
            Suite::Thm33 => 5,
            Suite::Thm41 => 6,
            Suite::Thm42 => 7,
            Suite::PostProcessing => 8,
        }
    }

    /// Number of measurement models a trial needs.
    pub fn model_count(self) -> usize {
        match self {
            Suite::Thm31 | Suite::Thm32 | Suite::Thm33 | Suite::Thm42 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Passes when `value <= limit`.
    AtMost,
    /// Passes when `value >= limit`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub kind: BoundKind,
}

impl Check {
    fn at_most(name: &'static str, value: f64, limit: f64) -> Self {
        Self {
            name,
            value,
            limit,
            kind: BoundKind::AtMost,
        }
    }

    fn at_least(name: &'static str, value: f64, limit: f64) -> Self {
        Self {
            name,
            value,
            limit,
            kind: BoundKind::AtLeast,
        }
    }

    pub fn passed(&self) -> bool {
        match self.kind {
            BoundKind::AtMost => self.value <= self.limit,
            BoundKind::AtLeast => self.value >= self.limit,
        }
    }
}

/// Concrete inputs for one trial; also the payload of a replay file.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialCase {
    pub models: Vec<MeasurementModel>,
    pub states: Vec<State>,
    /// Only used by the post-processing suite, applied to `models[0]`'s instrument.
    pub kernel: Option<StochasticKernel>,
}

pub fn generate_case(
    suite: Suite,
    master_seed: u64,
    trial: u32,
    sys_dim: usize,
    probe_dim: usize,
) -> Result<TrialCase> {
    let mut rng = trial_rng(master_seed, suite.id(), trial);
    let shape = ModelShape::new(sys_dim, probe_dim);
    let models = (0..suite.model_count())
        .map(|_| random_model(&mut rng, shape))
        .collect::<Result<Vec<_>>>()?;
    let states = (0..STATES_PER_TRIAL)
        .map(|_| random_state(&mut rng, sys_dim))
        .collect();
    let kernel = if suite == Suite::PostProcessing {
        let from = models[0].channel().alpha().outcomes().to_vec();
        let to_count = 1 + (trial as usize % 3);
        let to = labeled_outcomes(&mut rng, "z", to_count, false);
        Some(random_kernel(&mut rng, from, to)?)
    } else {
        None
    };
    Ok(TrialCase {
        models,
        states,
        kernel,
    })
}

fn worst<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn branch_outputs(i: &Instrument, rho: &State) -> Result<Vec<ComplexMatrix>> {
    i.ops()
        .iter()
        .map(|op| apply_operation(op, rho.matrix()))
        .collect()
}

fn max_list_diff(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    worst(a.iter().zip(b).map(|(x, y)| x.max_abs_diff(y)))
}

/// `tr_{K'}{ν'[tr_K(ν(ρ)(I ⊗ a))] (I ⊗ b)}`, all on composite spaces.
fn nested_partial_trace(
    nu: &SeparableChannel,
    nu2: &SeparableChannel,
    rho: &ComplexMatrix,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let d = nu.sys_dim();
    let id = ComplexMatrix::identity(d);
    let first = nu.apply_linear(rho)?;
    let reduced = partial_trace_last(&(&first * &tensor(&id, a)), d, nu.probe_dim())?;
    let second = nu2.apply_linear(&reduced)?;
    partial_trace_last(&(&second * &tensor(&id, b)), d, nu2.probe_dim())
}

/// `Σ_{x',y'} tr(γ_{x'} a) tr(γ'_{y'} b) α'_{y'}(α_{x'}(ρ))`.
fn double_sum(
    nu: &SeparableChannel,
    nu2: &SeparableChannel,
    rho: &ComplexMatrix,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let mut acc = ComplexMatrix::zeros(nu.sys_dim());
    for (op, g) in nu.alpha().ops().iter().zip(nu.gammas()) {
        let wa = trace_product(g.matrix(), a)?;
        let inner = apply_operation(op, rho)?;
        for (op2, g2) in nu2.alpha().ops().iter().zip(nu2.gammas()) {
            let wb = trace_product(g2.matrix(), b)?;
            acc.add_scaled(&apply_operation(op2, &inner)?, wa * wb)?;
        }
    }
    Ok(acc)
}

/// Effects spanning the Hermitian operators on `C^dim`: the diagonal
/// projectors plus `(I + X_{jk})/2` and `(I + Y_{jk})/2` for `j < k`.
pub fn spanning_effects(dim: usize) -> Vec<ComplexMatrix> {
    let id = ComplexMatrix::identity(dim);
    let mut out: Vec<ComplexMatrix> = (0..dim)
        .map(|i| ComplexMatrix::basis_projector(dim, i))
        .collect();
    for j in 0..dim {
        for k in j + 1..dim {
            let mut x = ComplexMatrix::zeros(dim);
            x[(j, k)] = ONE;
            x[(k, j)] = ONE;
            let mut y = ComplexMatrix::zeros(dim);
            y[(j, k)] = Complex64::new(0.0, -1.0);
            y[(k, j)] = Complex64::new(0.0, 1.0);
            out.push((&id + &x).scale_real(0.5));
            out.push((&id + &y).scale_real(0.5));
        }
    }
    out
}

fn completeness_check(case: &TrialCase) -> Check {
    let residual = worst(
        case.models
            .iter()
            .map(|m| m.channel().alpha().completeness_residual()),
    );
    Check::at_most("completeness", residual, 1e-9)
}

fn model(case: &TrialCase, index: usize) -> Result<&MeasurementModel> {
    case.models.get(index).ok_or_else(|| {
        Error::LengthMismatch(format!("trial case needs at least {} models", index + 1))
    })
}

fn check_lemma21(case: &TrialCase) -> Result<Vec<Check>> {
    let m = model(case, 0)?;
    let library = measured_instrument(m)?;
    let (mut branch, mut norm, mut ptrace) = (0.0_f64, 0.0_f64, 0.0_f64);
    for rho in &case.states {
        let direct: Vec<ComplexMatrix> = measured_instrument_direct(m, rho)?
            .into_iter()
            .map(|(_, b)| b)
            .collect();
        branch = branch.max(max_list_diff(&direct, &branch_outputs(&library, rho)?));
        let total: Complex64 = direct.iter().map(|b| b.trace()).sum();
        norm = norm.max((total - ONE).norm());
        let joint = apply_separable(m.channel(), rho)?;
        let reduced = partial_trace_last(&joint, m.sys_dim(), m.probe_dim())?;
        ptrace = ptrace.max((reduced.trace() - joint.trace()).norm());
    }
    Ok(vec![
        Check::at_most("branch", branch, 1e-9),
        Check::at_most("normalization", norm, 1e-12),
        Check::at_most("partial_trace", ptrace, 1e-12),
    ])
}

fn check_duality(case: &TrialCase) -> Result<Vec<Check>> {
    let m = model(case, 0)?;
    let observable = measured_observable_mm(m)?;
    let library = measured_instrument(m)?;
    let (mut direct_res, mut library_res) = (0.0_f64, 0.0_f64);
    for rho in &case.states {
        let direct = measured_instrument_direct(m, rho)?;
        for (x, effect) in observable.effects().iter().enumerate() {
            let lhs = trace_product(rho.matrix(), effect.matrix())?;
            direct_res = direct_res.max((lhs - direct[x].1.trace()).norm());
            let lib = apply_operation(&library.ops()[x], rho.matrix())?.trace();
            library_res = library_res.max((lhs - lib).norm());
        }
    }
    Ok(vec![
        Check::at_most("observable_vs_direct", direct_res, 1e-12),
        Check::at_most("observable_vs_instrument", library_res, 1e-12),
    ])
}

fn check_thm31(case: &TrialCase) -> Result<Vec<Check>> {
    let (m, m2) = (model(case, 0)?, model(case, 1)?);
    let (nu, nu2) = (m.channel(), m2.channel());
    let product = sequential_product_mm(m, m2)?;
    let library = measured_instrument(&product)?;
    let composed =
        sequential_product_instruments(&measured_instrument(m)?, &measured_instrument(m2)?)?;
    let (p, p2) = (m.probe().effects(), m2.probe().effects());

    let (mut vs_composed, mut vs_sum, mut vs_mu) = (0.0_f64, 0.0_f64, 0.0_f64);
    for rho in &case.states {
        let mut nested = Vec::with_capacity(p.len() * p2.len());
        let mut summed = Vec::with_capacity(p.len() * p2.len());
        for a in p {
            for b in p2 {
                nested.push(nested_partial_trace(
                    nu,
                    nu2,
                    rho.matrix(),
                    a.matrix(),
                    b.matrix(),
                )?);
                summed.push(double_sum(nu, nu2, rho.matrix(), a.matrix(), b.matrix())?);
            }
        }
        let via_mu: Vec<ComplexMatrix> = measured_instrument_direct(&product, rho)?
            .into_iter()
            .map(|(_, b)| b)
            .collect();
        let lib = branch_outputs(&library, rho)?;
        let comp = branch_outputs(&composed, rho)?;
        vs_composed = vs_composed
            .max(max_list_diff(&nested, &comp))
            .max(max_list_diff(&lib, &comp));
        vs_sum = vs_sum
            .max(max_list_diff(&nested, &summed))
            .max(max_list_diff(&lib, &summed));
        vs_mu = vs_mu.max(max_list_diff(&nested, &via_mu));
    }

    // (I^M ∘ I^M')^_{(x,y)} = Σ tr(γ_{x'}P_x) tr(γ'_{y'}P'_y) α*_{x'}[α'^_{y'}]
    let observable = measured_observable(&library)?;
    let alpha2_hat = measured_observable(nu2.alpha())?;
    let mut obs_res = 0.0_f64;
    for (ix, a) in p.iter().enumerate() {
        for (iy, b) in p2.iter().enumerate() {
            let mut want = ComplexMatrix::zeros(m.sys_dim());
            for (op, g) in nu.alpha().ops().iter().zip(nu.gammas()) {
                let wa = trace_product(g.matrix(), a.matrix())?;
                for (e2, g2) in alpha2_hat.effects().iter().zip(nu2.gammas()) {
                    let wb = trace_product(g2.matrix(), b.matrix())?;
                    want.add_scaled(&apply_dual(op, e2.matrix())?, wa * wb)?;
                }
            }
            let got = observable.effects()[ix * p2.len() + iy].matrix();
            obs_res = obs_res.max(got.max_abs_diff(&want));
        }
    }
    Ok(vec![
        Check::at_most("composed_instruments", vs_composed, 1e-9),
        Check::at_most("double_sum", vs_sum, 1e-9),
        Check::at_most("product_channel_trace", vs_mu, 1e-9),
        Check::at_most("observable", obs_res, 1e-9),
    ])
}

fn check_thm32(case: &TrialCase) -> Result<Vec<Check>> {
    let (nu, nu2) = (model(case, 0)?.channel(), model(case, 1)?.channel());
    let mu = product_channel(nu, nu2)?;
    let d = nu.sys_dim();
    let id = ComplexMatrix::identity(d);
    let (basis, basis2) = (
        spanning_effects(nu.probe_dim()),
        spanning_effects(nu2.probe_dim()),
    );
    let (mut vs_nested, mut vs_sum) = (0.0_f64, 0.0_f64);
    for rho in &case.states {
        let joint = apply_separable(&mu, rho)?;
        for a in &basis {
            for b in &basis2 {
                let weighted = &joint * &tensor(&id, &tensor(a, b));
                let lhs = partial_trace_last(&weighted, d, mu.probe_dim())?;
                let nested = nested_partial_trace(nu, nu2, rho.matrix(), a, b)?;
                let summed = double_sum(nu, nu2, rho.matrix(), a, b)?;
                vs_nested = vs_nested.max(lhs.max_abs_diff(&nested));
                vs_sum = vs_sum.max(lhs.max_abs_diff(&summed));
            }
        }
    }
    Ok(vec![
        Check::at_most("product_property", vs_nested, 1e-9),
        Check::at_most("double_sum", vs_sum, 1e-9),
    ])
}

fn check_thm33(case: &TrialCase) -> Result<Vec<Check>> {
    let (m, m2) = (model(case, 0)?, model(case, 1)?);
    let conditioned = measured_instrument(&conditioned_mm(m2, m)?)?;
    let via_instruments =
        conditioned_instruments(&measured_instrument(m2)?, &measured_instrument(m)?)?;
    let product = sequential_product_mm(m, m2)?;
    let cond_channel = conditioned_channel(m2.channel(), m.channel())?;
    let n2 = m2.probe().len();
    let (mut pairwise, mut channel_res) = (0.0_f64, 0.0_f64);
    for rho in &case.states {
        // x-marginal of the product instrument, computed on H ⊗ K ⊗ K'
        let joint = measured_instrument_direct(&product, rho)?;
        let mut marginal = vec![ComplexMatrix::zeros(m.sys_dim()); n2];
        for (k, (_, branch)) in joint.iter().enumerate() {
            marginal[k % n2] = &marginal[k % n2] + branch;
        }
        // ν'(tr_K ν(ρ)) measured by P'
        let reduced = partial_trace_last(
            &apply_separable(m.channel(), rho)?,
            m.sys_dim(),
            m.probe_dim(),
        )?;
        let definitional_joint = m2.channel().apply_linear(&reduced)?;
        let id = ComplexMatrix::identity(m.sys_dim());
        let definitional = m2
            .probe()
            .effects()
            .iter()
            .map(|p| {
                partial_trace_last(
                    &(&definitional_joint * &tensor(&id, p.matrix())),
                    m.sys_dim(),
                    m2.probe_dim(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let lib = branch_outputs(&conditioned, rho)?;
        let routed = branch_outputs(&via_instruments, rho)?;
        pairwise = pairwise
            .max(max_list_diff(&lib, &marginal))
            .max(max_list_diff(&lib, &routed))
            .max(max_list_diff(&routed, &marginal))
            .max(max_list_diff(&definitional, &lib));
        channel_res =
            channel_res.max(apply_separable(&cond_channel, rho)?.max_abs_diff(&definitional_joint));
    }
    Ok(vec![
        Check::at_most("pairwise", pairwise, 1e-9),
        Check::at_most("conditioned_channel", channel_res, 1e-12),
    ])
}

fn check_thm41(case: &TrialCase) -> Result<Vec<Check>> {
    let m = model(case, 0)?;
    let nu = m.channel();
    let op = mm_stochastic_operator(m)?;
    let closed = separable_stochastic_operator(m)?;
    let probe_op = stochastic_operator(m.probe())?;
    let values: Vec<f64> = m
        .probe()
        .outcomes()
        .iter()
        .filter_map(|o| o.value())
        .collect();
    let alpha_hat = measured_observable(nu.alpha())?;
    let weights = nu
        .gammas()
        .iter()
        .map(|g| Ok(trace_product(g.matrix(), probe_op.matrix())?.re))
        .collect::<Result<Vec<f64>>>()?;
    let d = m.sys_dim();
    let id_probe = tensor(&ComplexMatrix::identity(d), probe_op.matrix());

    let (mut e_res, mut d_res) = (0.0_f64, 0.0_f64);
    for rho in &case.states {
        let e_direct = expectation(rho, &op)?;
        let v_direct = variance(rho, &op)?;

        // composite-trace route
        let e_composite = trace_product(&apply_separable(nu, rho)?, &id_probe)?;
        let rho_m = rho.matrix() * op.matrix();
        let second = trace_product(&nu.apply_linear(&rho_m)?, &id_probe)?;
        let v_composite = (second - e_composite * e_composite).re;

        // separable double-sum route
        let mut e_sum = 0.0;
        for (o, w) in nu.alpha().ops().iter().zip(&weights) {
            e_sum += apply_operation(o, rho.matrix())?.trace().re * w;
        }
        let mut v_sum = Complex64::new(0.0, 0.0);
        for (a, wa) in alpha_hat.effects().iter().zip(&weights) {
            let ta = trace_product(rho.matrix(), a.matrix())?;
            for (b, wb) in alpha_hat.effects().iter().zip(&weights) {
                let tb = trace_product(rho.matrix(), b.matrix())?;
                let tab = trace_product(rho.matrix(), &(a.matrix() * b.matrix()))?;
                v_sum += (tab - ta * tb) * (wa * wb);
            }
        }

        // Σ_x x tr I^M_x(ρ) on the composite space
        let e_outcomes: f64 = measured_instrument_direct(m, rho)?
            .iter()
            .zip(&values)
            .map(|((_, b), v)| b.trace().re * v)
            .sum();

        e_res = e_res
            .max((e_direct - e_composite.re).abs())
            .max(e_composite.im.abs())
            .max((e_direct - e_sum).abs())
            .max((e_direct - e_outcomes).abs());
        d_res = d_res
            .max((v_direct - v_composite).abs())
            .max((v_direct - v_sum.re).abs())
            .max(v_sum.im.abs());
    }
    Ok(vec![
        Check::at_most("expectation", e_res, 1e-12),
        Check::at_most("variance", d_res, 1e-9),
        Check::at_most(
            "operator_routes",
            op.matrix().max_abs_diff(closed.matrix()),
            1e-12,
        ),
    ])
}

fn check_thm42(case: &TrialCase) -> Result<Vec<Check>> {
    let (m, m2) = (model(case, 0)?, model(case, 1)?);
    let (mut identity, mut slack) = (0.0_f64, f64::INFINITY);
    for rho in &case.states {
        let r = uncertainty_report(rho, m, m2)?;
        identity = identity.max(r.identity_residual);
        slack = slack.min(r.inequality_slack);
    }
    Ok(vec![
        Check::at_most("identity", identity, 1e-9),
        Check::at_least("slack", slack, -1e-9),
    ])
}

fn check_postprocessing(case: &TrialCase) -> Result<Vec<Check>> {
    let alpha = model(case, 0)?.channel().alpha();
    let kernel = case
        .kernel
        .as_ref()
        .ok_or_else(|| Error::LengthMismatch("post-processing trial needs a kernel".into()))?;
    let processed = post_process_instrument(kernel, alpha)?;
    let lhs = measured_observable(&processed)?;
    let rhs = post_process_observable(kernel, &measured_observable(alpha)?)?;
    Ok(vec![
        Check::at_most("commutation", lhs.max_effect_diff(&rhs), 1e-12),
        Check::at_most(
            "processed_completeness",
            processed.completeness_residual(),
            1e-9,
        ),
    ])
}

/// Runs every check of `suite` on `case`.
pub fn check_case(suite: Suite, case: &TrialCase) -> Result<Vec<Check>> {
    let mut checks = match suite {
        Suite::Lemma21 => check_lemma21(case)?,
        Suite::Duality => check_duality(case)?,
        Suite::Thm31 => check_thm31(case)?,
        Suite::Thm32 => check_thm32(case)?,
        Suite::Thm33 => check_thm33(case)?,
        Suite::Thm41 => check_thm41(case)?,
        Suite::Thm42 => check_thm42(case)?,
        Suite::PostProcessing => check_postprocessing(case)?,
    };
    checks.push(completeness_check(case));
    Ok(checks)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub master_seed: u64,
    pub trials: u32,
    /// `(sys_dim, probe_dim)` pairs; each runs `trials` trials.
    pub dims: Vec<(usize, usize)>,
    pub suites: Vec<Suite>,
}

impl VerifyConfig {
    pub fn new(
        master_seed: u64,
        trials: u32,
        dims: Vec<(usize, usize)>,
        suites: Vec<Suite>,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidWeights("trials must be at least 1".into()));
        }
        if dims.is_empty() || dims.iter().any(|&(s, p)| s < 2 || p < 2) {
            return Err(Error::InvalidWeights(
                "dimensions must be given and at least 2".into(),
            ));
        }
        if suites.is_empty() {
            return Err(Error::InvalidWeights("no suites selected".into()));
        }
        Ok(Self {
            master_seed,
            trials,
            dims,
            suites,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: &'static str,
    /// Largest value for upper bounds, smallest for lower bounds.
    pub extreme: f64,
    pub limit: f64,
    pub kind: BoundKind,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        Check {
            name: self.name,
            value: self.extreme,
            limit: self.limit,
            kind: self.kind,
        }
        .passed()
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub suite: Suite,
    pub master_seed: u64,
    pub trial: u32,
    pub check: Check,
    pub case: TrialCase,
}

#[derive(Debug, Clone)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub trials: u32,
    pub checks: Vec<CheckSummary>,
    pub first_failure: Option<Counterexample>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none() && self.checks.iter().all(CheckSummary::passed)
    }
}

/// Runs `suite` over every configured dimension pair.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteSummary> {
    let mut checks: Vec<CheckSummary> = Vec::new();
    let mut first_failure = None;
    let mut trial: u32 = 0;
    for &(sys_dim, probe_dim) in &config.dims {
        for _ in 0..config.trials {
            let case = generate_case(suite, config.master_seed, trial, sys_dim, probe_dim)?;
            for check in check_case(suite, &case)? {
                if !check.passed() && first_failure.is_none() {
                    first_failure = Some(Counterexample {
                        suite,
                        master_seed: config.master_seed,
                        trial,
                        check: check.clone(),
                        case: case.clone(),
                    });
                }
                match checks.iter_mut().find(|c| c.name == check.name) {
                    Some(summary) => {
                        summary.extreme = match check.kind {
                            BoundKind::AtMost => summary.extreme.max(check.value),
                            BoundKind::AtLeast => summary.extreme.min(check.value),
                        }
                    }
                    None => checks.push(CheckSummary {
                        name: check.name,
                        extreme: check.value,
                        limit: check.limit,
                        kind: check.kind,
                    }),
                }
            }
            trial += 1;
        }
    }
    Ok(SuiteSummary {
        suite,
        trials: trial,
        checks,
        first_failure,
    })
}
