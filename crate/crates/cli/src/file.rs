//! On-disk model-definition format.
//!
//! A model file is a JSON object of name-keyed sections. Objects refer to
//! each other by name; [`crate::resolve`] turns the names into validated
//! domain objects. Maps are `BTreeMap`s so the serialized form is canonical:
//! keys sorted, outcome lists in declared order, floats in shortest
//! round-trip notation.

use std::collections::BTreeMap;

use sepmm_core::ComplexMatrix;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeDef {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableDef {
    pub outcomes: Vec<OutcomeDef>,
    pub effects: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDef {
    pub from: Vec<String>,
    pub to: Vec<String>,
    /// `weights[y][x]`, one row per `from` outcome.
    pub weights: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstrumentDef {
    /// One Kraus operator per outcome.
    Kraus {
        outcomes: Vec<OutcomeDef>,
        kraus: Vec<ComplexMatrix>,
    },
    /// Any number of Kraus operators per outcome.
    General {
        outcomes: Vec<OutcomeDef>,
        kraus_lists: Vec<Vec<ComplexMatrix>>,
    },
    Luders {
        observable: String,
    },
    /// Measure-and-prepare: one named state per outcome of `observable`.
    Holevo {
        observable: String,
        states: Vec<String>,
    },
    /// `ρ ↦ λ_y tr(ρ) β` for outcome `y`.
    Trivial {
        outcomes: Vec<OutcomeDef>,
        weights: Vec<f64>,
        state: String,
    },
    PostProcessed {
        kernel: String,
        instrument: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDef {
    pub instrument: String,
    /// One probe state per outcome of `instrument`.
    pub probe_states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelDef {
    Separable {
        channel: String,
        probe: String,
    },
    /// `first ∘ second`: run `first`, then `second`.
    Sequential {
        first: String,
        second: String,
    },
    /// `then | given`: `then` applied after the total channel of `given`.
    Conditioned {
        given: String,
        then: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub version: String,
    #[serde(default)]
    pub states: BTreeMap<String, ComplexMatrix>,
    #[serde(default)]
    pub observables: BTreeMap<String, ObservableDef>,
    #[serde(default)]
    pub kernels: BTreeMap<String, KernelDef>,
    #[serde(default)]
    pub instruments: BTreeMap<String, InstrumentDef>,
    #[serde(default)]
    pub channels: BTreeMap<String, ChannelDef>,
    #[serde(default)]
    pub models: BTreeMap<String, ModelDef>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if file.version != FORMAT_VERSION {
            return Err(CliError::Parse {
                line: 1,
                column: 1,
                message: format!(
                    "unsupported version {:?}, expected {FORMAT_VERSION:?}",
                    file.version
                ),
            });
        }
        Ok(file)
    }

    /// Pretty-printed canonical JSON with a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("model files always serialize");
        text.push('\n');
        text
    }
}
