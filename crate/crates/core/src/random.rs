//! Seeded generators for random valid objects.
//!
//! Every generator is valid by construction: states come from Gram matrices,
//! POVMs and instruments from normalizing by `S^{-1/2}` where `S` is the sum
//! that has to become the identity.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channel::SeparableChannel;
use crate::error::Result;
use crate::matrix::{hermitian_inverse_sqrt, Complex64, ComplexMatrix, Tolerance};
use crate::model::MeasurementModel;
use crate::objects::{Instrument, Observable, Operation, Outcome, State, StochasticKernel};

pub type TrialRng = ChaCha8Rng;

/// Independent stream for `(master seed, suite, trial)`.
pub fn trial_rng(master_seed: u64, suite_id: u32, trial: u32) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((suite_id as u64) << 32) | trial as u64);
    rng
}

const PROBE_INTEGER_VALUES: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];

/// Matrix with independent standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::new(dim, data).expect("gaussian entries are finite")
}

/// `G G†` for a Gaussian `G`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, dim);
    (&g * &g.adjoint()).hermitian_part()
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    gaussian_matrix(rng, dim).hermitian_part()
}

pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> State {
    let p = random_psd(rng, dim);
    let tr = p.trace().re;
    State::new(p.scale_real(1.0 / tr)).expect("normalized Gram matrix is a state")
}

/// `S^{-1/2} M S^{-1/2}`.
fn congruence(s_inv_sqrt: &ComplexMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    (&(s_inv_sqrt * m) * s_inv_sqrt).hermitian_part()
}

/// Random POVM on `dim` with `outcomes.len()` effects.
pub fn random_observable<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    outcomes: Vec<Outcome>,
) -> Result<Observable> {
    let parts: Vec<ComplexMatrix> = (0..outcomes.len()).map(|_| random_psd(rng, dim)).collect();
    let mut total = ComplexMatrix::zeros(dim);
    for p in &parts {
        total = &total + p;
    }
    let s = hermitian_inverse_sqrt(&total, Tolerance::VALIDATION)?;
    let effects = parts.iter().map(|p| congruence(&s, p)).collect();
    Observable::from_matrices(outcomes, effects)
}

/// Random instrument: a stack of Gaussian Kraus operators normalized to a
/// column isometry, then split into branches of `1..=max_kraus` operators.
pub fn random_instrument<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    outcomes: Vec<Outcome>,
    max_kraus: usize,
) -> Result<Instrument> {
    let counts: Vec<usize> = outcomes
        .iter()
        .map(|_| rng.random_range(1..=max_kraus.max(1)))
        .collect();
    let stack: Vec<ComplexMatrix> = counts
        .iter()
        .flat_map(|&n| {
            (0..n)
                .map(|_| gaussian_matrix(rng, dim))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut gram = ComplexMatrix::zeros(dim);
    for g in &stack {
        gram = &gram + &(&g.adjoint() * g);
    }
    let s = hermitian_inverse_sqrt(&gram.hermitian_part(), Tolerance::VALIDATION)?;
    let mut normalized = stack.into_iter().map(|g| &g * &s);
    let lists = counts
        .iter()
        .map(|&n| normalized.by_ref().take(n).collect::<Vec<_>>())
        .collect();
    Instrument::from_kraus_lists(outcomes, lists)
}

/// Random single-branch-per-Kraus operation that is trace non-increasing.
pub fn random_operation<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<Operation> {
    let i = random_instrument(rng, dim, Outcome::indexed(2), 2)?;
    Ok(i.ops()[0].clone())
}

pub fn random_kernel<R: Rng + ?Sized>(
    rng: &mut R,
    from: Vec<Outcome>,
    to: Vec<Outcome>,
) -> Result<StochasticKernel> {
    let weights = from
        .iter()
        .map(|_| {
            let raw: Vec<f64> = to.iter().map(|_| rng.random::<f64>() + 1e-3).collect();
            let sum: f64 = raw.iter().sum();
            raw.into_iter().map(|w| w / sum).collect()
        })
        .collect();
    StochasticKernel::new(from, to, weights)
}

/// An integer from {-2, -1, 1, 2} or a uniform real in [-1, 1], evenly.
pub fn random_probe_value<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.random_bool(0.5) {
        PROBE_INTEGER_VALUES[rng.random_range(0..PROBE_INTEGER_VALUES.len())]
    } else {
        rng.random_range(-1.0..=1.0)
    }
}

/// `count` outcomes labeled `prefix0, prefix1, ...`, optionally with values.
pub fn labeled_outcomes<R: Rng + ?Sized>(
    rng: &mut R,
    prefix: &str,
    count: usize,
    real_valued: bool,
) -> Vec<Outcome> {
    (0..count)
        .map(|i| {
            let label = format!("{prefix}{i}");
            if real_valued {
                Outcome::real(label, random_probe_value(rng)).expect("finite value")
            } else {
                Outcome::new(label).expect("plain label")
            }
        })
        .collect()
}

/// Shape limits for random models.
#[derive(Debug, Clone, Copy)]
pub struct ModelShape {
    pub sys_dim: usize,
    pub probe_dim: usize,
    pub max_branches: usize,
    pub max_probe_outcomes: usize,
    pub max_kraus: usize,
}

impl ModelShape {
    pub fn new(sys_dim: usize, probe_dim: usize) -> Self {
        Self {
            sys_dim,
            probe_dim,
            max_branches: 4,
            max_probe_outcomes: 3,
            max_kraus: 2,
        }
    }
}

/// Random separable model with a real-valued probe observable.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, shape: ModelShape) -> Result<MeasurementModel> {
    let branches = rng.random_range(1..=shape.max_branches.max(1));
    let alpha_outcomes = labeled_outcomes(rng, "y", branches, false);
    let alpha = random_instrument(rng, shape.sys_dim, alpha_outcomes, shape.max_kraus)?;
    let gammas = (0..branches)
        .map(|_| random_state(rng, shape.probe_dim))
        .collect();
    let nu = SeparableChannel::new(alpha, gammas)?;
    let n_probe = rng.random_range(2..=shape.max_probe_outcomes.max(2));
    let probe_outcomes = labeled_outcomes(rng, "x", n_probe, true);
    let probe = random_observable(rng, shape.probe_dim, probe_outcomes)?;
    MeasurementModel::new(nu, probe)
}
