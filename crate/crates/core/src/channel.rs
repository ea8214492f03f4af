//! Separable interaction channels `ν(ρ) = Σ_y α_y(ρ) ⊗ γ_y`.

use crate::error::{Error, Result};
use crate::matrix::{tensor, ComplexMatrix, ONE};
use crate::model::{conditioned_instruments, sequential_product_instruments};
use crate::objects::{apply_operation, Instrument, State};

#[derive(Debug, Clone, PartialEq)]
pub struct SeparableChannel {
    alpha: Instrument,
    gammas: Vec<State>,
}

impl SeparableChannel {
    pub fn new(alpha: Instrument, gammas: Vec<State>) -> Result<Self> {
        if gammas.len() != alpha.len() {
            return Err(Error::LengthMismatch(format!(
                "{} probe states for {} branches",
                gammas.len(),
                alpha.len()
            )));
        }
        let probe_dim = gammas[0].dim();
        for g in &gammas {
            if g.dim() != probe_dim {
                return Err(Error::DimensionMismatch {
                    expected: probe_dim,
                    found: g.dim(),
                });
            }
        }
        Ok(Self { alpha, gammas })
    }

    pub fn sys_dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn probe_dim(&self) -> usize {
        self.gammas[0].dim()
    }

    pub fn alpha(&self) -> &Instrument {
        &self.alpha
    }

    pub fn gammas(&self) -> &[State] {
        &self.gammas
    }

    /// `Σ_y α_y(m) ⊗ γ_y` extended linearly to any matrix on the system.
    pub fn apply_linear(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.dim() != self.sys_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.sys_dim(),
                found: m.dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.sys_dim() * self.probe_dim());
        for (op, gamma) in self.alpha.ops().iter().zip(&self.gammas) {
            out.add_scaled(&tensor(&apply_operation(op, m)?, gamma.matrix()), ONE)?;
        }
        Ok(out)
    }
}

/// `ν(ρ)` as a density matrix on `H ⊗ K`.
pub fn apply_separable(nu: &SeparableChannel, rho: &State) -> Result<ComplexMatrix> {
    nu.apply_linear(rho.matrix())
}

/// `ν × ν'`: branches `α'_{y'} ∘ α_{x'}` with probe states `γ_{x'} ⊗ γ'_{y'}`,
/// ordered lexicographically in `(x', y')`.
pub fn product_channel(nu: &SeparableChannel, nu2: &SeparableChannel) -> Result<SeparableChannel> {
    let alpha = sequential_product_instruments(&nu.alpha, &nu2.alpha)?;
    let mut gammas = Vec::with_capacity(alpha.len());
    for g in &nu.gammas {
        for g2 in &nu2.gammas {
            gammas.push(State::new(tensor(g.matrix(), g2.matrix()))?);
        }
    }
    SeparableChannel::new(alpha, gammas)
}

/// `(ν' | ν)(ρ) = Σ_y α'_y(ᾱ(ρ)) ⊗ γ'_y`.
pub fn conditioned_channel(
    nu2: &SeparableChannel,
    nu: &SeparableChannel,
) -> Result<SeparableChannel> {
    let alpha = conditioned_instruments(&nu2.alpha, &nu.alpha)?;
    SeparableChannel::new(alpha, nu2.gammas.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{luders_instrument, trivial_instrument};
    use crate::matrix::{partial_trace_last, Complex64};
    use crate::objects::{Observable, Outcome};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tilted() -> State {
        State::new(
            ComplexMatrix::from_rows(&[
                vec![c(0.7, 0.0), c(0.2, -0.1)],
                vec![c(0.2, 0.1), c(0.3, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    fn luders_nu() -> SeparableChannel {
        let a = Observable::from_matrices(
            Outcome::indexed(2),
            vec![
                ComplexMatrix::from_rows(&[
                    vec![c(0.6, 0.0), c(0.1, 0.15)],
                    vec![c(0.1, -0.15), c(0.3, 0.0)],
                ])
                .unwrap(),
                ComplexMatrix::from_rows(&[
                    vec![c(0.4, 0.0), c(-0.1, -0.15)],
                    vec![c(-0.1, 0.15), c(0.7, 0.0)],
                ])
                .unwrap(),
            ],
        )
        .unwrap();
        SeparableChannel::new(
            luders_instrument(&a).unwrap(),
            vec![State::basis(2, 0), State::maximally_mixed(2)],
        )
        .unwrap()
    }

    #[test]
    fn trivial_alpha_gives_product_output() {
        let beta = tilted();
        let lambdas = [0.25, 0.75];
        let gammas = vec![State::basis(2, 0), State::basis(2, 1)];
        let nu = SeparableChannel::new(
            trivial_instrument(&lambdas, &beta, Outcome::indexed(2)).unwrap(),
            gammas.clone(),
        )
        .unwrap();
        let gamma = ComplexMatrix::diag(&[0.25, 0.75]);
        let want = tensor(beta.matrix(), &gamma);
        for rho in [State::basis(2, 0), State::maximally_mixed(2)] {
            let got = apply_separable(&nu, &rho).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-12);
        }
    }

    #[test]
    fn identity_branch_gives_product_state() {
        let gamma = tilted();
        let nu = SeparableChannel::new(Instrument::identity(2), vec![gamma.clone()]).unwrap();
        let rho = State::maximally_mixed(2);
        let got = apply_separable(&nu, &rho).unwrap();
        assert!(got.max_abs_diff(&tensor(rho.matrix(), gamma.matrix())) < 1e-15);
    }

    #[test]
    fn output_marginal_is_total_channel() {
        let nu = luders_nu();
        let rho = tilted();
        let out = apply_separable(&nu, &rho).unwrap();
        assert!((out.trace() - ONE).norm() < 1e-12);
        let marginal = partial_trace_last(&out, 2, 2).unwrap();
        let want = apply_operation(&nu.alpha().total_channel(), rho.matrix()).unwrap();
        assert!(marginal.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            SeparableChannel::new(Instrument::identity(2), vec![]),
            Err(Error::LengthMismatch(_))
        ));
        let nu = luders_nu();
        assert!(matches!(
            apply_separable(&nu, &State::maximally_mixed(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        let other =
            SeparableChannel::new(Instrument::identity(3), vec![State::basis(2, 0)]).unwrap();
        assert!(product_channel(&nu, &other).is_err());
        assert!(conditioned_channel(&other, &nu).is_err());
    }

    #[test]
    fn product_with_identity_factor() {
        let id = SeparableChannel::new(Instrument::identity(2), vec![State::basis(2, 1)]).unwrap();
        let nu2 = luders_nu();
        let prod = product_channel(&id, &nu2).unwrap();
        assert_eq!(prod.alpha().len(), nu2.alpha().len());
        assert_eq!(prod.probe_dim(), 4);
        for (a, b) in prod.alpha().ops().iter().zip(nu2.alpha().ops()) {
            assert!(a.max_map_diff(b) < 1e-12);
        }
        assert_eq!(prod.alpha().outcomes()[1].label(), "(0,1)");
    }

    #[test]
    fn conditioning_on_identity_returns_same_channel() {
        let id = SeparableChannel::new(Instrument::identity(2), vec![State::basis(2, 0)]).unwrap();
        let nu2 = luders_nu();
        let cond = conditioned_channel(&nu2, &id).unwrap();
        assert!(cond.alpha().max_map_diff(nu2.alpha()) < 1e-12);
        assert_eq!(cond.gammas(), nu2.gammas());
    }

    #[test]
    fn conditioning_on_trivial_is_constant() {
        let beta = tilted();
        let nu = SeparableChannel::new(
            trivial_instrument(&[0.4, 0.6], &beta, Outcome::indexed(2)).unwrap(),
            vec![State::basis(2, 0), State::basis(2, 1)],
        )
        .unwrap();
        let nu2 = luders_nu();
        let cond = conditioned_channel(&nu2, &nu).unwrap();
        for (op, op2) in cond.alpha().ops().iter().zip(nu2.alpha().ops()) {
            let want = apply_operation(op2, beta.matrix()).unwrap();
            for rho in [State::basis(2, 0), State::maximally_mixed(2), tilted()] {
                let got = apply_operation(op, rho.matrix()).unwrap();
                assert!(got.max_abs_diff(&want) < 1e-12);
            }
        }
    }
}
