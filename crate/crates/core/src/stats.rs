//! Expectations, variances and the uncertainty relation for real-valued
//! measurement models.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{commutator, trace_product, Complex64, ComplexMatrix, Tolerance, ONE};
use crate::model::{measured_observable_mm, MeasurementModel};
use crate::objects::{measured_observable, real_probability, Observable, State};

/// Hermitian operator `Ã = Σ_x x A_x` of a real-valued observable.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticOperator {
    matrix: ComplexMatrix,
}

impl StochasticOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > Tolerance::VALIDATION.atol() {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

fn outcome_values(a: &Observable) -> Result<Vec<f64>> {
    if let Some(o) = a.first_unvalued() {
        return Err(Error::NotRealValued(o.label().to_string()));
    }
    Ok(a.outcomes().iter().filter_map(|o| o.value()).collect())
}

pub fn stochastic_operator(a: &Observable) -> Result<StochasticOperator> {
    let values = outcome_values(a)?;
    let mut acc = ComplexMatrix::zeros(a.dim());
    for (v, e) in values.iter().zip(a.effects()) {
        acc.add_scaled(e.matrix(), Complex64::new(*v, 0.0))?;
    }
    StochasticOperator::new(acc)
}

/// `M̃` for a real-valued model, from its measured observable.
pub fn mm_stochastic_operator(m: &MeasurementModel) -> Result<StochasticOperator> {
    outcome_values(m.probe())?;
    stochastic_operator(&measured_observable_mm(m)?)
}

/// `M̃ = Σ_y tr(γ_y P̃) α̂_y`, the separable closed form.
pub fn separable_stochastic_operator(m: &MeasurementModel) -> Result<StochasticOperator> {
    let probe_op = stochastic_operator(m.probe())?;
    let alpha_hat = measured_observable(m.channel().alpha())?;
    let mut acc = ComplexMatrix::zeros(m.sys_dim());
    for (g, e) in m.channel().gammas().iter().zip(alpha_hat.effects()) {
        let w = real_probability(trace_product(g.matrix(), probe_op.matrix())?)?;
        acc.add_scaled(e.matrix(), Complex64::new(w, 0.0))?;
    }
    StochasticOperator::new(acc)
}

fn check_dims(rho: &State, b: &StochasticOperator) -> Result<()> {
    if rho.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

/// `E_ρ(B) = tr(ρ B)`.
pub fn expectation(rho: &State, target: &StochasticOperator) -> Result<f64> {
    check_dims(rho, target)?;
    real_probability(trace_product(rho.matrix(), target.matrix())?)
}

/// `Δ_ρ(B) = tr(ρ B²) − tr(ρ B)²`.
pub fn variance(rho: &State, target: &StochasticOperator) -> Result<f64> {
    Ok(correlation(rho, target, target)?.re)
}

/// `Cor_ρ = tr(ρ M̃ M̃') − E_ρ(M̃) E_ρ(M̃')`.
pub fn correlation(
    rho: &State,
    m: &StochasticOperator,
    m2: &StochasticOperator,
) -> Result<Complex64> {
    check_dims(rho, m)?;
    check_dims(rho, m2)?;
    let joint = trace_product(rho.matrix(), &(m.matrix() * m2.matrix()))?;
    Ok(joint - ONE * (expectation(rho, m)? * expectation(rho, m2)?))
}

pub fn covariance(rho: &State, m: &StochasticOperator, m2: &StochasticOperator) -> Result<f64> {
    Ok(correlation(rho, m, m2)?.re)
}

/// `¼ |tr(ρ [M̃, M̃'])|²`.
pub fn commutator_term(
    rho: &State,
    m: &StochasticOperator,
    m2: &StochasticOperator,
) -> Result<f64> {
    check_dims(rho, m)?;
    check_dims(rho, m2)?;
    let bracket = commutator(m.matrix(), m2.matrix())?;
    Ok(0.25 * trace_product(rho.matrix(), &bracket)?.norm_sqr())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub expectation_m: f64,
    pub expectation_m2: f64,
    pub variance_m: f64,
    pub variance_m2: f64,
    /// `[re, im]`.
    pub correlation: [f64; 2],
    pub covariance: f64,
    pub commutator_term: f64,
    /// `|Comm + Cov² − |Cor|²|`.
    pub identity_residual: f64,
    /// `Δ Δ' − |Cor|²`.
    pub inequality_slack: f64,
}

impl UncertaintyReport {
    pub fn correlation(&self) -> Complex64 {
        Complex64::new(self.correlation[0], self.correlation[1])
    }
}

fn clamp_variance(v: f64) -> Result<f64> {
    if v < -Tolerance::VALIDATION.atol() {
        return Err(Error::InvalidProbability(format!("negative variance {v}")));
    }
    Ok(v.max(0.0))
}

/// All pair statistics for two real-valued models at `rho`.
pub fn uncertainty_report(
    rho: &State,
    m: &MeasurementModel,
    m2: &MeasurementModel,
) -> Result<UncertaintyReport> {
    outcome_values(m.probe())?;
    outcome_values(m2.probe())?;
    if m.sys_dim() != m2.sys_dim() {
        return Err(Error::DimensionMismatch {
            expected: m.sys_dim(),
            found: m2.sys_dim(),
        });
    }
    let op = mm_stochastic_operator(m)?;
    let op2 = mm_stochastic_operator(m2)?;
    operator_report(rho, &op, &op2)
}

/// Report for two stochastic operators directly.
pub fn operator_report(
    rho: &State,
    op: &StochasticOperator,
    op2: &StochasticOperator,
) -> Result<UncertaintyReport> {
    let variance_m = clamp_variance(variance(rho, op)?)?;
    let variance_m2 = clamp_variance(variance(rho, op2)?)?;
    let cor = correlation(rho, op, op2)?;
    let comm = commutator_term(rho, op, op2)?;
    let cov = cor.re;
    Ok(UncertaintyReport {
        expectation_m: expectation(rho, op)?,
        expectation_m2: expectation(rho, op2)?,
        variance_m,
        variance_m2,
        correlation: [cor.re, cor.im],
        covariance: cov,
        commutator_term: comm,
        identity_residual: (comm + cov * cov - cor.norm_sqr()).abs(),
        inequality_slack: variance_m * variance_m2 - cor.norm_sqr(),
    })
}
