//! Counterexample files: a failing trial's exact inputs, rerunnable with
//! `sepmm replay`.

use sepmm_core::verify::{BoundKind, Check, Counterexample, Suite, TrialCase};
use sepmm_core::{
    ComplexMatrix, Instrument, MeasurementModel, Observable, SeparableChannel, State,
};
use sepmm_core::{Outcome, StochasticKernel};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::file::{KernelDef, ObservableDef, OutcomeDef, FORMAT_VERSION};
use crate::resolve::{outcome_to_def, outcomes_from_defs};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstrumentRecord {
    pub outcomes: Vec<OutcomeDef>,
    pub kraus_lists: Vec<Vec<ComplexMatrix>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelRecord {
    pub alpha: InstrumentRecord,
    pub probe_states: Vec<ComplexMatrix>,
    pub probe: ObservableDef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseRecord {
    pub models: Vec<ModelRecord>,
    pub states: Vec<ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelDef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRecord {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    /// `None` when the observed value was not finite.
    pub value: Option<f64>,
    pub limit: f64,
    pub bound: BoundRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleFile {
    pub version: String,
    pub suite: String,
    pub master_seed: u64,
    pub trial: u32,
    pub check: CheckRecord,
    pub case: CaseRecord,
}

fn instrument_record(i: &Instrument) -> InstrumentRecord {
    InstrumentRecord {
        outcomes: i.outcomes().iter().map(outcome_to_def).collect(),
        kraus_lists: i.ops().iter().map(|op| op.kraus().to_vec()).collect(),
    }
}

fn observable_def(a: &Observable) -> ObservableDef {
    ObservableDef {
        outcomes: a.outcomes().iter().map(outcome_to_def).collect(),
        effects: a.effects().iter().map(|e| e.matrix().clone()).collect(),
    }
}

fn model_record(m: &MeasurementModel) -> ModelRecord {
    ModelRecord {
        alpha: instrument_record(m.channel().alpha()),
        probe_states: m
            .channel()
            .gammas()
            .iter()
            .map(|g| g.matrix().clone())
            .collect(),
        probe: observable_def(m.probe()),
    }
}

fn kernel_def(k: &StochasticKernel) -> KernelDef {
    KernelDef {
        from: k
            .from_outcomes()
            .iter()
            .map(|o| o.label().to_string())
            .collect(),
        to: k
            .to_outcomes()
            .iter()
            .map(|o| o.label().to_string())
            .collect(),
        weights: k.weights().to_vec(),
    }
}

impl CounterexampleFile {
    pub fn from_counterexample(c: &Counterexample) -> Self {
        Self {
            version: FORMAT_VERSION.to_string(),
            suite: c.suite.name().to_string(),
            master_seed: c.master_seed,
            trial: c.trial,
            check: CheckRecord {
                name: c.check.name.to_string(),
                value: c.check.value.is_finite().then_some(c.check.value),
                limit: c.check.limit,
                bound: match c.check.kind {
                    BoundKind::AtMost => BoundRecord::AtMost,
                    BoundKind::AtLeast => BoundRecord::AtLeast,
                },
            },
            case: CaseRecord {
                models: c.case.models.iter().map(model_record).collect(),
                states: c.case.states.iter().map(|s| s.matrix().clone()).collect(),
                kernel: c.case.kernel.as_ref().map(kernel_def),
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("counterexamples always serialize");
        text.push('\n');
        text
    }

    pub fn suite(&self) -> Result<Suite, CliError> {
        self.suite
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown suite {:?}", self.suite)))
    }

    /// Rebuilds the trial inputs, validating every object.
    pub fn trial_case(&self) -> Result<TrialCase, CliError> {
        let models = self
            .case
            .models
            .iter()
            .enumerate()
            .map(|(i, m)| build_model(m, &format!("case.models[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let states = self
            .case
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| {
                State::new(s.clone())
                    .map_err(|e| CliError::validation(format!("case.states[{i}]"), e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let kernel = match &self.case.kernel {
            Some(k) => Some(build_kernel(k).map_err(|e| CliError::validation("case.kernel", e))?),
            None => None,
        };
        Ok(TrialCase {
            models,
            states,
            kernel,
        })
    }
}

fn build_kernel(k: &KernelDef) -> sepmm_core::Result<StochasticKernel> {
    let labels = |ls: &[String]| {
        ls.iter()
            .map(|l| Outcome::new(l.clone()))
            .collect::<sepmm_core::Result<Vec<_>>>()
    };
    StochasticKernel::new(labels(&k.from)?, labels(&k.to)?, k.weights.clone())
}

fn build_model(m: &ModelRecord, object: &str) -> Result<MeasurementModel, CliError> {
    let alpha = outcomes_from_defs(&m.alpha.outcomes)
        .and_then(|o| Instrument::from_kraus_lists(o, m.alpha.kraus_lists.clone()))
        .map_err(|e| CliError::validation(format!("{object}.alpha"), e))?;
    let gammas = m
        .probe_states
        .iter()
        .enumerate()
        .map(|(i, g)| {
            State::new(g.clone())
                .map_err(|e| CliError::validation(format!("{object}.probe_states[{i}]"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let probe = outcomes_from_defs(&m.probe.outcomes)
        .and_then(|o| Observable::from_matrices(o, m.probe.effects.clone()))
        .map_err(|e| CliError::validation(format!("{object}.probe"), e))?;
    SeparableChannel::new(alpha, gammas)
        .and_then(|nu| MeasurementModel::new(nu, probe))
        .map_err(|e| CliError::validation(object, e))
}

/// The check recorded in the file, for display.
pub fn recorded_check(file: &CounterexampleFile) -> String {
    let value = file
        .check
        .value
        .map_or_else(|| "non-finite".to_string(), crate::report::num);
    format!("{} = {}", file.check.name, value)
}

pub(crate) fn check_line(c: &Check) -> String {
    let (op, status) = match c.kind {
        BoundKind::AtMost => ("<=", c.passed()),
        BoundKind::AtLeast => (">=", c.passed()),
    };
    format!(
        "  {} {} (limit {} {}) {}",
        c.name,
        crate::report::num(c.value),
        op,
        crate::report::num(c.limit),
        if status { "ok" } else { "FAIL" }
    )
}
