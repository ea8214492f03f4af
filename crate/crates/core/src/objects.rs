//! Validated states, effects, observables, operations and instruments.
//!
//! Every type here is checked once at construction and immutable afterwards.
//! Complete positivity of operations is carried by the Kraus representation,
//! so only the trace condition is verified.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::{
    hermitian_eigen, min_eigenvalue, trace_product, Complex64, ComplexMatrix, Tolerance, ONE,
};

/// Imaginary parts of probabilities above this bound indicate corrupted input.
const PROBABILITY_IMAG_BOUND: f64 = 1e-10;

/// Separator reserved for composite (pair) outcome labels.
pub const PAIR_SEPARATOR: char = ',';

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    label: String,
    value: Option<f64>,
}

impl Outcome {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || label.contains(PAIR_SEPARATOR) {
            return Err(Error::InvalidLabel(label));
        }
        Ok(Self { label, value: None })
    }

    pub fn real(label: impl Into<String>, value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidWeights(format!("outcome value {value}")));
        }
        let mut out = Self::new(label)?;
        out.value = Some(value);
        Ok(out)
    }

    /// Composite outcome `(first,second)`; carries no numeric value.
    pub fn pair(first: &Outcome, second: &Outcome) -> Self {
        Self {
            label: format!("({}{}{})", first.label, PAIR_SEPARATOR, second.label),
            value: None,
        }
    }

    /// Labels `"0"`, `"1"`, ... without values.
    pub fn indexed(count: usize) -> Vec<Outcome> {
        (0..count)
            .map(|i| Outcome {
                label: i.to_string(),
                value: None,
            })
            .collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self) -> Option<f64> {
        self.value
    }

    pub fn with_value(mut self, value: Option<f64>) -> Self {
        self.value = value;
        self
    }
}

fn check_distinct(outcomes: &[Outcome]) -> Result<()> {
    let mut seen = HashSet::new();
    for o in outcomes {
        if !seen.insert(o.label.as_str()) {
            return Err(Error::DuplicateOutcome(o.label.clone()));
        }
    }
    Ok(())
}

fn index_of(outcomes: &[Outcome], label: &str) -> Result<usize> {
    outcomes
        .iter()
        .position(|o| o.label == label)
        .ok_or_else(|| Error::UnknownOutcome(label.to_string()))
}

fn same_labels(a: &[Outcome], b: &[Outcome]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.label == y.label)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Real part of a trace that must be real, rejecting visible imaginary parts.
pub(crate) fn real_probability(z: Complex64) -> Result<f64> {
    if z.im.abs() > PROBABILITY_IMAG_BOUND {
        return Err(Error::InvalidProbability(format!(
            "imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// Density matrix: positive with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    rho: ComplexMatrix,
}

impl State {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        let tol = Tolerance::VALIDATION;
        let eig = hermitian_eigen(&rho, tol).map_err(|e| Error::NotAState(e.to_string()))?;
        if eig.min_eigenvalue() < -tol.atol() {
            return Err(Error::NotAState(format!(
                "min eigenvalue {:.3e}",
                eig.min_eigenvalue()
            )));
        }
        let tr = rho.trace();
        if (tr - ONE).norm() > tol.atol() {
            return Err(Error::NotAState(format!("trace {:.12}", tr.re)));
        }
        Ok(Self { rho })
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 || !norm2.is_finite() {
            return Err(Error::NotAState("zero vector".into()));
        }
        Self::new(ComplexMatrix::outer(psi, psi)?.scale_real(1.0 / norm2))
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        Self {
            rho: ComplexMatrix::basis_projector(dim, index),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            rho: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }
}

/// Operator `a` with `0 ≤ a ≤ I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    a: ComplexMatrix,
}

impl Effect {
    pub fn new(a: ComplexMatrix) -> Result<Self> {
        let tol = Tolerance::VALIDATION;
        let eig = hermitian_eigen(&a, tol).map_err(|e| Error::NotAnEffect(e.to_string()))?;
        let lo = eig.min_eigenvalue();
        let hi = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if lo < -tol.atol() || hi > 1.0 + tol.atol() {
            return Err(Error::NotAnEffect(format!(
                "spectrum [{lo:.3e}, {hi:.12}] outside [0, 1]"
            )));
        }
        Ok(Self { a })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            a: ComplexMatrix::zeros(dim),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Finite POVM: labeled effects summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    outcomes: Vec<Outcome>,
    effects: Vec<Effect>,
}

impl Observable {
    pub fn new(outcomes: Vec<Outcome>, effects: Vec<Effect>) -> Result<Self> {
        if outcomes.is_empty() || outcomes.len() != effects.len() {
            return Err(Error::LengthMismatch(format!(
                "{} outcomes, {} effects",
                outcomes.len(),
                effects.len()
            )));
        }
        check_distinct(&outcomes)?;
        let dim = effects[0].dim();
        let mut total = ComplexMatrix::zeros(dim);
        for e in &effects {
            check_dim(dim, e.dim())?;
            total.add_scaled(e.matrix(), ONE)?;
        }
        let residual = total.max_abs_diff(&ComplexMatrix::identity(dim));
        if residual > Tolerance::VALIDATION.atol() {
            return Err(Error::IncompleteObservable { residual });
        }
        Ok(Self { outcomes, effects })
    }

    /// Validates each matrix as an effect first.
    pub fn from_matrices(outcomes: Vec<Outcome>, effects: Vec<ComplexMatrix>) -> Result<Self> {
        let effects = effects
            .into_iter()
            .map(Effect::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(outcomes, effects)
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn effect(&self, label: &str) -> Result<&Effect> {
        Ok(&self.effects[index_of(&self.outcomes, label)?])
    }

    /// Same effects with new outcome labels/values.
    pub fn relabeled(&self, outcomes: Vec<Outcome>) -> Result<Self> {
        if outcomes.len() != self.outcomes.len() {
            return Err(Error::LengthMismatch(format!(
                "{} outcomes for {} effects",
                outcomes.len(),
                self.effects.len()
            )));
        }
        check_distinct(&outcomes)?;
        Ok(Self {
            outcomes,
            effects: self.effects.clone(),
        })
    }

    /// First outcome without a numeric value, if any.
    pub fn first_unvalued(&self) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.value.is_none())
    }

    /// Largest entrywise difference between corresponding effects.
    pub fn max_effect_diff(&self, other: &Observable) -> f64 {
        if self.effects.len() != other.effects.len() {
            return f64::INFINITY;
        }
        self.effects
            .iter()
            .zip(&other.effects)
            .map(|(a, b)| a.matrix().max_abs_diff(b.matrix()))
            .fold(0.0, f64::max)
    }
}

/// Completely positive, trace non-increasing map in Kraus form.
#[derive(Debug, Clone, PartialEq)]
pub struct Operation {
    kraus: Vec<ComplexMatrix>,
}

impl Operation {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let op = Self::checked_shape(kraus)?;
        let gap = &ComplexMatrix::identity(op.dim()) - &op.dual_of_identity();
        let min = min_eigenvalue(&gap, Tolerance::VALIDATION)?;
        if min < -Tolerance::VALIDATION.atol() {
            return Err(Error::TraceIncreasing {
                min_eigenvalue: min,
            });
        }
        Ok(op)
    }

    /// Composition or scaling of valid operations; the trace condition holds
    /// analytically so only shapes are checked.
    pub(crate) fn from_valid_parts(kraus: Vec<ComplexMatrix>) -> Self {
        Self::checked_shape(kraus).expect("derived Kraus list must be well-formed")
    }

    fn checked_shape(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let dim = first.dim();
        for k in &kraus {
            check_dim(dim, k.dim())?;
        }
        Ok(Self { kraus })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    fn dual_of_identity(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim());
        for c in &self.kraus {
            acc.add_scaled(&(&c.adjoint() * c), ONE)
                .expect("shapes checked at construction");
        }
        acc
    }

    /// `self` followed by `next`: Kraus operators `D C`.
    pub fn then(&self, next: &Operation) -> Result<Operation> {
        check_dim(self.dim(), next.dim())?;
        let mut kraus = Vec::with_capacity(self.kraus.len() * next.kraus.len());
        for d in &next.kraus {
            for c in &self.kraus {
                kraus.push(d * c);
            }
        }
        Ok(Self { kraus })
    }

    /// The map `weight * self` for `weight ∈ [0, 1]`.
    pub(crate) fn scaled(&self, weight: f64) -> Operation {
        let s = weight.max(0.0).sqrt();
        Self {
            kraus: self.kraus.iter().map(|c| c.scale_real(s)).collect(),
        }
    }

    /// Largest difference between the two maps on the matrix units `|i⟩⟨j|`.
    pub fn max_map_diff(&self, other: &Operation) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let unit = ComplexMatrix::unit(n, i, j);
                let a = apply_operation(self, &unit).expect("same dimension");
                let b = apply_operation(other, &unit).expect("same dimension");
                worst = worst.max(a.max_abs_diff(&b));
            }
        }
        worst
    }
}

/// Sum of operations into a single operation by Kraus concatenation.
pub(crate) fn sum_operations<'a>(ops: impl IntoIterator<Item = &'a Operation>) -> Operation {
    let kraus: Vec<ComplexMatrix> = ops
        .into_iter()
        .flat_map(|op| op.kraus.iter().cloned())
        .collect();
    Operation::from_valid_parts(kraus)
}

/// Labeled operations whose sum is a channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Instrument {
    outcomes: Vec<Outcome>,
    ops: Vec<Operation>,
}

impl Instrument {
    pub fn new(outcomes: Vec<Outcome>, ops: Vec<Operation>) -> Result<Self> {
        if outcomes.is_empty() || outcomes.len() != ops.len() {
            return Err(Error::LengthMismatch(format!(
                "{} outcomes, {} operations",
                outcomes.len(),
                ops.len()
            )));
        }
        check_distinct(&outcomes)?;
        let dim = ops[0].dim();
        for op in &ops {
            check_dim(dim, op.dim())?;
        }
        let instrument = Self { outcomes, ops };
        let residual = instrument.completeness_residual();
        if residual > Tolerance::VALIDATION.atol() {
            return Err(Error::NotAChannel { residual });
        }
        Ok(instrument)
    }

    /// Builds an instrument directly from per-outcome Kraus lists.
    pub fn from_kraus_lists(
        outcomes: Vec<Outcome>,
        lists: Vec<Vec<ComplexMatrix>>,
    ) -> Result<Self> {
        let ops = lists
            .into_iter()
            .map(Operation::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(outcomes, ops)
    }

    pub(crate) fn from_valid_parts(outcomes: Vec<Outcome>, ops: Vec<Operation>) -> Self {
        debug_assert_eq!(outcomes.len(), ops.len());
        Self { outcomes, ops }
    }

    /// Identity channel as a one-outcome instrument.
    pub fn identity(dim: usize) -> Self {
        Self {
            outcomes: Outcome::indexed(1),
            ops: vec![Operation::identity(dim)],
        }
    }

    /// `max |Σ C†C − I|` over all branches and Kraus terms.
    pub fn completeness_residual(&self) -> f64 {
        let total = sum_operations(&self.ops);
        total
            .dual_of_identity()
            .max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    pub fn branch(&self, label: &str) -> Result<&Operation> {
        Ok(&self.ops[index_of(&self.outcomes, label)?])
    }

    /// The channel obtained by ignoring the outcome.
    pub fn total_channel(&self) -> Operation {
        sum_operations(&self.ops)
    }

    /// Largest branchwise map difference; infinite when outcome labels differ.
    pub fn max_map_diff(&self, other: &Instrument) -> f64 {
        if !same_labels(&self.outcomes, &other.outcomes) {
            return f64::INFINITY;
        }
        self.ops
            .iter()
            .zip(&other.ops)
            .map(|(a, b)| a.max_map_diff(b))
            .fold(0.0, f64::max)
    }
}

/// Row-stochastic matrix `λ[y][x]` from outcomes `y` to outcomes `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticKernel {
    from: Vec<Outcome>,
    to: Vec<Outcome>,
    weights: Vec<Vec<f64>>,
}

impl StochasticKernel {
    /// Entries in `[-atol, 0)` are clamped to zero; rows must sum to one.
    pub fn new(from: Vec<Outcome>, to: Vec<Outcome>, mut weights: Vec<Vec<f64>>) -> Result<Self> {
        let atol = Tolerance::VALIDATION.atol();
        check_distinct(&from)?;
        check_distinct(&to)?;
        if from.is_empty() || to.is_empty() || weights.len() != from.len() {
            return Err(Error::LengthMismatch(format!(
                "{} weight rows for {} source outcomes",
                weights.len(),
                from.len()
            )));
        }
        for (y, row) in weights.iter_mut().enumerate() {
            if row.len() != to.len() {
                return Err(Error::LengthMismatch(format!(
                    "row {y} has {} entries for {} target outcomes",
                    row.len(),
                    to.len()
                )));
            }
            for w in row.iter_mut() {
                if !w.is_finite() || *w < -atol || *w > 1.0 + atol {
                    return Err(Error::InvalidWeights(format!("weight {w} in row {y}")));
                }
                *w = w.clamp(0.0, 1.0);
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > atol {
                return Err(Error::InvalidWeights(format!("row {y} sums to {sum}")));
            }
        }
        Ok(Self { from, to, weights })
    }

    /// `λ[y][x] = δ_{yx}` over the given outcomes.
    pub fn identity(outcomes: Vec<Outcome>) -> Result<Self> {
        let n = outcomes.len();
        let weights = (0..n)
            .map(|y| (0..n).map(|x| if x == y { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(outcomes.clone(), outcomes, weights)
    }

    pub fn from_outcomes(&self) -> &[Outcome] {
        &self.from
    }

    pub fn to_outcomes(&self) -> &[Outcome] {
        &self.to
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn weight(&self, y: usize, x: usize) -> f64 {
        self.weights[y][x]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    outcomes: Vec<Outcome>,
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Values in `[-atol, 0)` become zero; nothing is renormalized.
    pub fn new(outcomes: Vec<Outcome>, mut probs: Vec<f64>) -> Result<Self> {
        let atol = Tolerance::VALIDATION.atol();
        if outcomes.len() != probs.len() {
            return Err(Error::LengthMismatch(format!(
                "{} outcomes, {} probabilities",
                outcomes.len(),
                probs.len()
            )));
        }
        for (o, p) in outcomes.iter().zip(probs.iter_mut()) {
            if !p.is_finite() || *p < -atol {
                return Err(Error::InvalidProbability(format!(
                    "outcome {:?} has probability {p}",
                    o.label
                )));
            }
            *p = p.max(0.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > atol {
            return Err(Error::InvalidProbability(format!("total {sum}")));
        }
        Ok(Self { outcomes, probs })
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, label: &str) -> Result<f64> {
        Ok(self.probs[index_of(&self.outcomes, label)?])
    }
}

/// `Φ(x) = tr(ρ A_x)`.
pub fn prob_dist_observable(rho: &State, a: &Observable) -> Result<ProbabilityDistribution> {
    check_dim(a.dim(), rho.dim())?;
    let probs = a
        .effects
        .iter()
        .map(|e| real_probability(trace_product(rho.matrix(), e.matrix())?))
        .collect::<Result<Vec<_>>>()?;
    ProbabilityDistribution::new(a.outcomes.clone(), probs)
}

/// `A(Δ) = Σ_{x∈Δ} A_x`.
pub fn event_effect(a: &Observable, subset: &[&str]) -> Result<Effect> {
    let mut total = ComplexMatrix::zeros(a.dim());
    let mut seen = HashSet::new();
    for label in subset {
        let idx = index_of(&a.outcomes, label)?;
        if seen.insert(idx) {
            total.add_scaled(a.effects[idx].matrix(), ONE)?;
        }
    }
    Effect::new(total)
}

/// `Σ C_i b C_i†`.
pub fn apply_operation(op: &Operation, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim(op.dim(), b.dim())?;
    let mut acc = ComplexMatrix::zeros(b.dim());
    for c in &op.kraus {
        acc.add_scaled(&(&(c * b) * &c.adjoint()), ONE)?;
    }
    Ok(acc)
}

/// `Σ C_i† b C_i`.
pub fn apply_dual(op: &Operation, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim(op.dim(), b.dim())?;
    let mut acc = ComplexMatrix::zeros(b.dim());
    for c in &op.kraus {
        acc.add_scaled(&(&(&c.adjoint() * b) * c), ONE)?;
    }
    Ok(acc)
}

/// `Î_x = I_x*(I)`.
pub fn measured_observable(i: &Instrument) -> Result<Observable> {
    let effects = i
        .ops
        .iter()
        .map(|op| Effect::new(op.dual_of_identity()))
        .collect::<Result<Vec<_>>>()?;
    Observable::new(i.outcomes.clone(), effects)
}

/// `Φ(x) = tr I_x(ρ)`.
pub fn prob_dist_instrument(rho: &State, i: &Instrument) -> Result<ProbabilityDistribution> {
    check_dim(i.dim(), rho.dim())?;
    let probs = i
        .ops
        .iter()
        .map(|op| real_probability(apply_operation(op, rho.matrix())?.trace()))
        .collect::<Result<Vec<_>>>()?;
    ProbabilityDistribution::new(i.outcomes.clone(), probs)
}

/// `I_x(ρ) / tr I_x(ρ)`.
pub fn update_state(i: &Instrument, label: &str, rho: &State) -> Result<State> {
    check_dim(i.dim(), rho.dim())?;
    let op = i.branch(label)?;
    let out = apply_operation(op, rho.matrix())?;
    let p = real_probability(out.trace())?;
    if p <= Tolerance::VALIDATION.atol() {
        return Err(Error::ZeroProbabilityOutcome(label.to_string()));
    }
    State::new(out.scale_real(1.0 / p))
}

/// `J_x = Σ_y λ_{yx} I_y`, each branch a concatenation of scaled Kraus lists.
pub fn post_process_instrument(k: &StochasticKernel, i: &Instrument) -> Result<Instrument> {
    if !same_labels(&k.from, &i.outcomes) {
        return Err(Error::OutcomeMismatch(
            "kernel source outcomes differ from instrument outcomes".into(),
        ));
    }
    let dim = i.dim();
    let ops = (0..k.to.len())
        .map(|x| {
            let parts: Vec<Operation> = (0..k.from.len())
                .filter(|&y| k.weights[y][x] > 0.0)
                .map(|y| i.ops[y].scaled(k.weights[y][x]))
                .collect();
            if parts.is_empty() {
                Operation::from_valid_parts(vec![ComplexMatrix::zeros(dim)])
            } else {
                sum_operations(&parts)
            }
        })
        .collect();
    Ok(Instrument::from_valid_parts(k.to.clone(), ops))
}

/// `B_x = Σ_y λ_{yx} A_y`.
pub fn post_process_observable(k: &StochasticKernel, a: &Observable) -> Result<Observable> {
    if !same_labels(&k.from, &a.outcomes) {
        return Err(Error::OutcomeMismatch(
            "kernel source outcomes differ from observable outcomes".into(),
        ));
    }
    let effects = (0..k.to.len())
        .map(|x| {
            let mut b = ComplexMatrix::zeros(a.dim());
            for (y, e) in a.effects.iter().enumerate() {
                b.add_scaled(e.matrix(), Complex64::new(k.weights[y][x], 0.0))?;
            }
            Effect::new(b)
        })
        .collect::<Result<Vec<_>>>()?;
    Observable::new(k.to.clone(), effects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::hermitian_sqrt;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn projective_z() -> Observable {
        Observable::from_matrices(
            vec![
                Outcome::real("0", 1.0).unwrap(),
                Outcome::real("1", -1.0).unwrap(),
            ],
            vec![
                ComplexMatrix::basis_projector(2, 0),
                ComplexMatrix::basis_projector(2, 1),
            ],
        )
        .unwrap()
    }

    fn plus() -> State {
        let s = 0.5_f64.sqrt();
        State::pure(&[c(s, 0.0), c(s, 0.0)]).unwrap()
    }

    fn luders_z() -> Instrument {
        Instrument::from_kraus_lists(
            Outcome::indexed(2),
            vec![
                vec![ComplexMatrix::basis_projector(2, 0)],
                vec![ComplexMatrix::basis_projector(2, 1)],
            ],
        )
        .unwrap()
    }

    fn identity_observable(lambdas: &[f64], dim: usize) -> Observable {
        Observable::from_matrices(
            Outcome::indexed(lambdas.len()),
            lambdas
                .iter()
                .map(|&l| ComplexMatrix::identity(dim).scale_real(l))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn outcome_labels() {
        assert!(Outcome::new("").is_err());
        assert!(Outcome::new("a,b").is_err());
        let p = Outcome::pair(&Outcome::new("a").unwrap(), &Outcome::new("b").unwrap());
        assert_eq!(p.label(), "(a,b)");
        assert_eq!(p.value(), None);
        assert!(Outcome::real("x", f64::NAN).is_err());
    }

    #[test]
    fn state_validation() {
        assert!(State::new(ComplexMatrix::diag(&[0.5, 0.5])).is_ok());
        assert!(matches!(
            State::new(ComplexMatrix::diag(&[0.5, 0.6])),
            Err(Error::NotAState(_))
        ));
        assert!(matches!(
            State::new(ComplexMatrix::diag(&[1.5, -0.5])),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn effect_validation() {
        assert!(Effect::new(ComplexMatrix::diag(&[1.0, 0.0])).is_ok());
        assert!(Effect::new(ComplexMatrix::diag(&[1.1, 0.0])).is_err());
        assert!(Effect::new(ComplexMatrix::diag(&[0.5, -0.1])).is_err());
    }

    #[test]
    fn observable_validation() {
        let err = Observable::from_matrices(
            Outcome::indexed(2),
            vec![
                ComplexMatrix::diag(&[1.0, 0.0]),
                ComplexMatrix::diag(&[0.0, 0.5]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::IncompleteObservable { .. }));
        let dup = vec![Outcome::new("a").unwrap(), Outcome::new("a").unwrap()];
        assert!(matches!(
            Observable::from_matrices(
                dup,
                vec![
                    ComplexMatrix::diag(&[1.0, 0.0]),
                    ComplexMatrix::diag(&[0.0, 1.0])
                ]
            ),
            Err(Error::DuplicateOutcome(_))
        ));
    }

    #[test]
    fn operation_validation() {
        assert!(matches!(Operation::new(vec![]), Err(Error::EmptyKraus)));
        let too_big = ComplexMatrix::identity(2).scale_real(1.1);
        assert!(matches!(
            Operation::new(vec![too_big]),
            Err(Error::TraceIncreasing { .. })
        ));
        let half = ComplexMatrix::identity(2).scale_real(0.5_f64.sqrt());
        assert!(Operation::new(vec![half.clone()]).is_ok());
        assert!(matches!(
            Instrument::new(
                Outcome::indexed(1),
                vec![Operation::new(vec![half]).unwrap()]
            ),
            Err(Error::NotAChannel { .. })
        ));
    }

    #[test]
    fn distributions_of_observables() {
        let d = prob_dist_observable(&State::basis(2, 0), &projective_z()).unwrap();
        assert_eq!(d.probs(), &[1.0, 0.0]);
        let d = prob_dist_observable(&plus(), &identity_observable(&[0.3, 0.7], 2)).unwrap();
        assert!((d.probs()[0] - 0.3).abs() < 1e-15);
        assert!((d.probs()[1] - 0.7).abs() < 1e-15);
        assert!(matches!(
            prob_dist_observable(&State::maximally_mixed(3), &projective_z()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn event_effects() {
        let a = identity_observable(&[0.2, 0.3, 0.5], 2);
        let all = event_effect(&a, &["0", "1", "2"]).unwrap();
        assert!(all.matrix().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        let none = event_effect(&a, &[]).unwrap();
        assert_eq!(none.matrix().max_abs(), 0.0);
        let one = event_effect(&a, &["1"]).unwrap();
        assert_eq!(one.matrix(), a.effects()[1].matrix());
        assert!(matches!(
            event_effect(&a, &["7"]),
            Err(Error::UnknownOutcome(_))
        ));
    }

    #[test]
    fn operation_application() {
        let b = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, -1.0)],
            vec![c(0.5, 0.5), c(3.0, 0.0)],
        ])
        .unwrap();
        let id = Operation::identity(2);
        assert_eq!(apply_operation(&id, &b).unwrap(), b);
        let luders = luders_z();
        let luders0 = &luders.ops()[0];
        let got = apply_operation(luders0, State::maximally_mixed(2).matrix()).unwrap();
        assert!(got.max_abs_diff(&ComplexMatrix::diag(&[0.5, 0.0])) < 1e-15);
        assert!(apply_operation(&id, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn channel_dual_is_unital() {
        let s = 0.5_f64.sqrt();
        let x = ComplexMatrix::from_real_rows(&[&[0.0, s], &[s, 0.0]]).unwrap();
        let z = ComplexMatrix::diag(&[s, -s]);
        let ch = Operation::new(vec![x, z]).unwrap();
        let got = apply_dual(&ch, &ComplexMatrix::identity(2)).unwrap();
        assert!(got.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn measured_observables_of_basic_instruments() {
        let m = measured_observable(&luders_z()).unwrap();
        assert!(m.max_effect_diff(&projective_z()) < 1e-15);
        let s = 0.5_f64.sqrt();
        let balanced = Instrument::from_kraus_lists(
            Outcome::indexed(2),
            vec![
                vec![ComplexMatrix::identity(2).scale_real(s)],
                vec![ComplexMatrix::identity(2).scale_real(s)],
            ],
        )
        .unwrap();
        let m = measured_observable(&balanced).unwrap();
        assert!(m.max_effect_diff(&identity_observable(&[0.5, 0.5], 2)) < 1e-15);
    }

    #[test]
    fn state_updates() {
        let i = luders_z();
        let post = update_state(&i, "0", &plus()).unwrap();
        assert!(
            post.matrix()
                .max_abs_diff(&ComplexMatrix::basis_projector(2, 0))
                < 1e-15
        );
        assert!(matches!(
            update_state(&i, "1", &State::basis(2, 0)),
            Err(Error::ZeroProbabilityOutcome(_))
        ));
        assert!(matches!(
            update_state(&i, "nope", &plus()),
            Err(Error::UnknownOutcome(_))
        ));
    }

    #[test]
    fn kernel_validation() {
        let from = Outcome::indexed(2);
        let to = Outcome::indexed(2);
        assert!(StochasticKernel::new(
            from.clone(),
            to.clone(),
            vec![vec![0.5, 0.5], vec![0.2, 0.8]]
        )
        .is_ok());
        assert!(StochasticKernel::new(
            from.clone(),
            to.clone(),
            vec![vec![0.5, 0.6], vec![0.2, 0.8]]
        )
        .is_err());
        assert!(StochasticKernel::new(
            from.clone(),
            to.clone(),
            vec![vec![1.5, -0.5], vec![0.2, 0.8]]
        )
        .is_err());
        assert!(StochasticKernel::new(from, to, vec![vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn post_processing_with_delta_and_total_kernels() {
        let i = luders_z();
        let id = StochasticKernel::identity(i.outcomes().to_vec()).unwrap();
        let same = post_process_instrument(&id, &i).unwrap();
        assert!(same.max_map_diff(&i) < 1e-15);

        let total = StochasticKernel::new(
            i.outcomes().to_vec(),
            Outcome::indexed(1),
            vec![vec![1.0], vec![1.0]],
        )
        .unwrap();
        let coarse = post_process_instrument(&total, &i).unwrap();
        assert_eq!(coarse.len(), 1);
        assert!(coarse.ops()[0].max_map_diff(&i.total_channel()) < 1e-15);

        let wrong = StochasticKernel::identity(Outcome::indexed(3)).unwrap();
        assert!(matches!(
            post_process_instrument(&wrong, &i),
            Err(Error::OutcomeMismatch(_))
        ));
    }

    #[test]
    fn constant_row_kernel_gives_identity_observable() {
        let a = projective_z();
        let k = StochasticKernel::new(
            a.outcomes().to_vec(),
            Outcome::indexed(3),
            vec![vec![0.2, 0.3, 0.5], vec![0.2, 0.3, 0.5]],
        )
        .unwrap();
        let b = post_process_observable(&k, &a).unwrap();
        assert!(b.max_effect_diff(&identity_observable(&[0.2, 0.3, 0.5], 2)) < 1e-15);
        let id = StochasticKernel::identity(a.outcomes().to_vec()).unwrap();
        let same = post_process_observable(&id, &a).unwrap();
        assert!(same.max_effect_diff(&a) < 1e-15);
    }

    #[test]
    fn map_diff_ignores_kraus_freedom() {
        // {P0, P1} and {(P0+P1)/√2, (P0−P1)/√2} define the same dephasing channel.
        let s = 0.5_f64.sqrt();
        let a = Operation::new(vec![
            ComplexMatrix::basis_projector(2, 0),
            ComplexMatrix::basis_projector(2, 1),
        ])
        .unwrap();
        let b = Operation::new(vec![
            ComplexMatrix::diag(&[s, s]),
            ComplexMatrix::diag(&[s, -s]),
        ])
        .unwrap();
        assert!(a.max_map_diff(&b) < 1e-15);
        assert!(a.max_map_diff(&Operation::identity(2)) > 0.5);
    }

    #[test]
    fn sqrt_based_branch_is_trace_nonincreasing() {
        let e = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.1, 0.2)],
            vec![c(0.1, -0.2), c(0.3, 0.0)],
        ])
        .unwrap();
        let root = hermitian_sqrt(&e, Tolerance::VALIDATION).unwrap();
        assert!(Operation::new(vec![root]).is_ok());
    }
}
