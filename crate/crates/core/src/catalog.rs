//! Named instrument families: Kraus, Lüders, Holevo and trivial instruments,
//! plus identity observables.

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, hermitian_sqrt, ComplexMatrix, Tolerance};
use crate::objects::{Effect, Instrument, Observable, Operation, Outcome, State};

fn check_weights(lambdas: &[f64]) -> Result<()> {
    let atol = Tolerance::VALIDATION.atol();
    if lambdas.is_empty() {
        return Err(Error::InvalidWeights("no weights".into()));
    }
    if let Some(bad) = lambdas
        .iter()
        .find(|l| !l.is_finite() || **l < 0.0 || **l > 1.0)
    {
        return Err(Error::InvalidWeights(format!(
            "weight {bad} outside [0, 1]"
        )));
    }
    let sum: f64 = lambdas.iter().sum();
    if (sum - 1.0).abs() > atol {
        return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
    }
    Ok(())
}

/// One Kraus operator per outcome: `α_y(ρ) = C_y ρ C_y†`.
pub fn kraus_instrument(outcomes: Vec<Outcome>, cs: Vec<ComplexMatrix>) -> Result<Instrument> {
    if outcomes.len() != cs.len() {
        return Err(Error::LengthMismatch(format!(
            "{} outcomes, {} Kraus operators",
            outcomes.len(),
            cs.len()
        )));
    }
    let ops = cs
        .into_iter()
        .map(|c| Operation::new(vec![c]))
        .collect::<Result<Vec<_>>>()?;
    Instrument::new(outcomes, ops)
}

/// `α_y(ρ) = A_y^{1/2} ρ A_y^{1/2}`.
pub fn luders_instrument(a: &Observable) -> Result<Instrument> {
    let ops = a
        .effects()
        .iter()
        .map(|e| Operation::new(vec![hermitian_sqrt(e.matrix(), Tolerance::VALIDATION)?]))
        .collect::<Result<Vec<_>>>()?;
    Instrument::new(a.outcomes().to_vec(), ops)
}

/// Kraus operators for `ρ ↦ tr(ρ A) β`: `√μ_j |v_j⟩⟨e_k| A^{1/2}` over the
/// spectrum `(μ_j, v_j)` of β and the standard basis `e_k`.
fn measure_and_prepare(effect: &Effect, beta: &State) -> Result<Operation> {
    let tol = Tolerance::VALIDATION;
    let dim = effect.dim();
    let root = hermitian_sqrt(effect.matrix(), tol)?;
    let spectrum = hermitian_eigen(beta.matrix(), tol)?;
    let mut kraus = Vec::new();
    for (mu, v) in spectrum.eigenvalues.iter().zip(&spectrum.eigenvectors) {
        if *mu <= 0.0 {
            continue;
        }
        let amp = mu.sqrt();
        for k in 0..dim {
            let mut e_k = vec![crate::matrix::ZERO; dim];
            e_k[k] = crate::matrix::ONE;
            let ket_bra = ComplexMatrix::outer(v, &e_k)?.scale_real(amp);
            kraus.push(&ket_bra * &root);
        }
    }
    if kraus.is_empty() {
        return Err(Error::NotAState(
            "output state has no positive eigenvalue".into(),
        ));
    }
    Operation::new(kraus)
}

/// `α_y(ρ) = tr(ρ A_y) β_y`.
pub fn holevo_instrument(a: &Observable, betas: &[State]) -> Result<Instrument> {
    if betas.len() != a.len() {
        return Err(Error::LengthMismatch(format!(
            "{} output states for {} outcomes",
            betas.len(),
            a.len()
        )));
    }
    let ops = a
        .effects()
        .iter()
        .zip(betas)
        .map(|(e, beta)| {
            if beta.dim() != e.dim() {
                return Err(Error::DimensionMismatch {
                    expected: e.dim(),
                    found: beta.dim(),
                });
            }
            measure_and_prepare(e, beta)
        })
        .collect::<Result<Vec<_>>>()?;
    Instrument::new(a.outcomes().to_vec(), ops)
}

/// Effects `λ_y I`.
pub fn identity_observable(
    lambdas: &[f64],
    dim: usize,
    outcomes: Vec<Outcome>,
) -> Result<Observable> {
    check_weights(lambdas)?;
    let effects = lambdas
        .iter()
        .map(|&l| Effect::new(ComplexMatrix::identity(dim).scale_real(l)))
        .collect::<Result<Vec<_>>>()?;
    Observable::new(outcomes, effects)
}

/// `α_y(ρ) = λ_y β`, independent of ρ up to its trace.
pub fn trivial_instrument(
    lambdas: &[f64],
    beta: &State,
    outcomes: Vec<Outcome>,
) -> Result<Instrument> {
    let a = identity_observable(lambdas, beta.dim(), outcomes)?;
    let betas = vec![beta.clone(); lambdas.len()];
    holevo_instrument(&a, &betas)
}
