//! Measurement models `(K, ν, P)` with separable interaction channels.
//!
//! The measured instrument is available two ways: [`measured_instrument`]
//! uses the post-processing form `Σ_y tr(γ_y P_x) α_y` and never touches
//! `H ⊗ K`, while [`measured_instrument_direct`] builds `ν(ρ)` on the
//! composite space and traces the probe out. The second is the reference
//! route used by the verification suites.

use crate::channel::{apply_separable, conditioned_channel, product_channel, SeparableChannel};
use crate::error::{Error, Result};
use crate::matrix::{partial_trace_last, tensor, trace_product, ComplexMatrix};
use crate::objects::{
    measured_observable, post_process_instrument, post_process_observable, real_probability,
    sum_operations, Effect, Instrument, Observable, Operation, Outcome, State, StochasticKernel,
};

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementModel {
    nu: SeparableChannel,
    probe: Observable,
}

impl MeasurementModel {
    pub fn new(nu: SeparableChannel, probe: Observable) -> Result<Self> {
        if probe.dim() != nu.probe_dim() {
            return Err(Error::DimensionMismatch {
                expected: nu.probe_dim(),
                found: probe.dim(),
            });
        }
        Ok(Self { nu, probe })
    }

    pub fn probe_dim(&self) -> usize {
        self.nu.probe_dim()
    }

    pub fn sys_dim(&self) -> usize {
        self.nu.sys_dim()
    }

    pub fn channel(&self) -> &SeparableChannel {
        &self.nu
    }

    pub fn probe(&self) -> &Observable {
        &self.probe
    }

    /// `λ_{yx} = tr(γ_y P_x)`.
    pub fn overlap_kernel(&self) -> Result<StochasticKernel> {
        let weights = self
            .nu
            .gammas()
            .iter()
            .map(|g| {
                self.probe
                    .effects()
                    .iter()
                    .map(|p| real_probability(trace_product(g.matrix(), p.matrix())?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        StochasticKernel::new(
            self.nu.alpha().outcomes().to_vec(),
            self.probe.outcomes().to_vec(),
            weights,
        )
    }
}

fn check_sys_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// `tr_K[ν(ρ) (I ⊗ P_x)]` for every probe outcome, computed on `H ⊗ K`.
pub fn measured_instrument_direct(
    m: &MeasurementModel,
    rho: &State,
) -> Result<Vec<(Outcome, ComplexMatrix)>> {
    check_sys_dims(m.sys_dim(), rho.dim())?;
    let joint = apply_separable(&m.nu, rho)?;
    let id = ComplexMatrix::identity(m.sys_dim());
    m.probe
        .outcomes()
        .iter()
        .zip(m.probe.effects())
        .map(|(o, p)| {
            let weighted = &joint * &tensor(&id, p.matrix());
            Ok((
                o.clone(),
                partial_trace_last(&weighted, m.sys_dim(), m.probe_dim())?,
            ))
        })
        .collect()
}

/// `I^M_x = Σ_y tr(γ_y P_x) α_y`.
pub fn measured_instrument(m: &MeasurementModel) -> Result<Instrument> {
    post_process_instrument(&m.overlap_kernel()?, m.nu.alpha())
}

/// `(I^M)^_x = Σ_y tr(γ_y P_x) α̂_y`.
pub fn measured_observable_mm(m: &MeasurementModel) -> Result<Observable> {
    post_process_observable(&m.overlap_kernel()?, &measured_observable(m.nu.alpha())?)
}

/// Sequential product of instruments: branch `(x, y)` is `J_y ∘ I_x`.
pub fn sequential_product_instruments(i: &Instrument, j: &Instrument) -> Result<Instrument> {
    check_sys_dims(i.dim(), j.dim())?;
    let mut outcomes = Vec::with_capacity(i.len() * j.len());
    let mut ops = Vec::with_capacity(i.len() * j.len());
    for (ox, ix) in i.outcomes().iter().zip(i.ops()) {
        for (oy, jy) in j.outcomes().iter().zip(j.ops()) {
            outcomes.push(Outcome::pair(ox, oy));
            ops.push(ix.then(jy)?);
        }
    }
    Ok(Instrument::from_valid_parts(outcomes, ops))
}

/// `(J | I)_y = J_y ∘ Ī`: measure `I`, discard the result, then measure `J`.
pub fn conditioned_instruments(j: &Instrument, i: &Instrument) -> Result<Instrument> {
    check_sys_dims(i.dim(), j.dim())?;
    let total: Operation = sum_operations(i.ops());
    let ops = j
        .ops()
        .iter()
        .map(|jy| total.then(jy))
        .collect::<Result<Vec<_>>>()?;
    Ok(Instrument::from_valid_parts(j.outcomes().to_vec(), ops))
}

/// `(P ⊗ P')_{(x,y)} = P_x ⊗ P'_y`.
pub fn tensor_observable(p: &Observable, p2: &Observable) -> Result<Observable> {
    let mut outcomes = Vec::with_capacity(p.len() * p2.len());
    let mut effects = Vec::with_capacity(p.len() * p2.len());
    for (ox, ex) in p.outcomes().iter().zip(p.effects()) {
        for (oy, ey) in p2.outcomes().iter().zip(p2.effects()) {
            outcomes.push(Outcome::pair(ox, oy));
            effects.push(Effect::new(tensor(ex.matrix(), ey.matrix()))?);
        }
    }
    Observable::new(outcomes, effects)
}

/// `M ∘ M' = (K ⊗ K', ν × ν', P ⊗ P')`.
pub fn sequential_product_mm(
    m: &MeasurementModel,
    m2: &MeasurementModel,
) -> Result<MeasurementModel> {
    check_sys_dims(m.sys_dim(), m2.sys_dim())?;
    MeasurementModel::new(
        product_channel(&m.nu, &m2.nu)?,
        tensor_observable(&m.probe, &m2.probe)?,
    )
}

/// `M' | M = (K', ν' | ν, P')`; the probe observable of `M` is dropped.
pub fn conditioned_mm(m2: &MeasurementModel, m: &MeasurementModel) -> Result<MeasurementModel> {
    check_sys_dims(m.sys_dim(), m2.sys_dim())?;
    MeasurementModel::new(conditioned_channel(&m2.nu, &m.nu)?, m2.probe.clone())
}
