//! Turns a parsed [`ModelFile`] into validated domain objects.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use sepmm_core::catalog::{
    holevo_instrument, kraus_instrument, luders_instrument, trivial_instrument,
};
use sepmm_core::objects::post_process_instrument;
use sepmm_core::{
    conditioned_mm, sequential_product_mm, Instrument, MeasurementModel, Observable, Outcome,
    SeparableChannel, State, StochasticKernel,
};

use crate::error::CliError;
use crate::file::{InstrumentDef, ModelDef, ModelFile, OutcomeDef};

/// Every object of a model file, validated and keyed by name.
#[derive(Debug, Clone, PartialEq)]
pub struct Workspace {
    pub states: BTreeMap<String, State>,
    pub observables: BTreeMap<String, Observable>,
    pub kernels: BTreeMap<String, StochasticKernel>,
    pub instruments: BTreeMap<String, Instrument>,
    pub channels: BTreeMap<String, SeparableChannel>,
    pub models: BTreeMap<String, MeasurementModel>,
}

impl Workspace {
    pub fn state(&self, name: &str) -> Result<&State, CliError> {
        lookup(&self.states, "command line", "state", name)
    }

    pub fn model(&self, name: &str) -> Result<&MeasurementModel, CliError> {
        lookup(&self.models, "command line", "model", name)
    }
}

/// Reads, parses and resolves a model file.
pub fn load_model_file(path: &Path) -> Result<(ModelFile, Workspace), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let file = ModelFile::parse(&text)?;
    let workspace = resolve(&file)?;
    Ok((file, workspace))
}

fn lookup<'a, T>(
    map: &'a BTreeMap<String, T>,
    object: &str,
    section: &'static str,
    name: &str,
) -> Result<&'a T, CliError> {
    map.get(name).ok_or_else(|| CliError::UnresolvedReference {
        object: object.to_string(),
        section,
        name: name.to_string(),
    })
}

pub(crate) fn outcome_from_def(def: &OutcomeDef) -> sepmm_core::Result<Outcome> {
    match def.value {
        Some(v) => Outcome::real(def.label.clone(), v),
        None => Outcome::new(def.label.clone()),
    }
}

pub(crate) fn outcomes_from_defs(defs: &[OutcomeDef]) -> sepmm_core::Result<Vec<Outcome>> {
    defs.iter().map(outcome_from_def).collect()
}

pub(crate) fn outcome_to_def(o: &Outcome) -> OutcomeDef {
    OutcomeDef {
        label: o.label().to_string(),
        value: o.value(),
    }
}

fn plain_outcomes(labels: &[String]) -> sepmm_core::Result<Vec<Outcome>> {
    labels.iter().map(|l| Outcome::new(l.clone())).collect()
}

/// Resolution state for the sections that may refer to themselves.
struct Resolver<'f> {
    file: &'f ModelFile,
    ws: Workspace,
    in_progress: BTreeSet<String>,
}

pub fn resolve(file: &ModelFile) -> Result<Workspace, CliError> {
    let mut r = Resolver {
        file,
        ws: Workspace {
            states: BTreeMap::new(),
            observables: BTreeMap::new(),
            kernels: BTreeMap::new(),
            instruments: BTreeMap::new(),
            channels: BTreeMap::new(),
            models: BTreeMap::new(),
        },
        in_progress: BTreeSet::new(),
    };
    for (name, m) in &file.states {
        let state =
            State::new(m.clone()).map_err(|e| CliError::validation(format!("states.{name}"), e))?;
        r.ws.states.insert(name.clone(), state);
    }
    for (name, def) in &file.observables {
        let obs = outcomes_from_defs(&def.outcomes)
            .and_then(|o| Observable::from_matrices(o, def.effects.clone()))
            .map_err(|e| CliError::validation(format!("observables.{name}"), e))?;
        r.ws.observables.insert(name.clone(), obs);
    }
    for (name, def) in &file.kernels {
        let kernel = plain_outcomes(&def.from)
            .and_then(|from| Ok((from, plain_outcomes(&def.to)?)))
            .and_then(|(from, to)| StochasticKernel::new(from, to, def.weights.clone()))
            .map_err(|e| CliError::validation(format!("kernels.{name}"), e))?;
        r.ws.kernels.insert(name.clone(), kernel);
    }
    for name in file.instruments.keys() {
        r.instrument(name, "instruments")?;
    }
    for (name, def) in &file.channels {
        let object = format!("channels.{name}");
        let alpha = r.instrument(&def.instrument, &object)?;
        let gammas = def
            .probe_states
            .iter()
            .map(|s| lookup(&r.ws.states, &object, "state", s).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        let nu =
            SeparableChannel::new(alpha, gammas).map_err(|e| CliError::validation(&object, e))?;
        r.ws.channels.insert(name.clone(), nu);
    }
    for name in file.models.keys() {
        r.model(name, "models")?;
    }
    Ok(r.ws)
}

impl Resolver<'_> {
    fn enter(&mut self, key: String) -> Result<(), CliError> {
        if !self.in_progress.insert(key.clone()) {
            return Err(CliError::Cycle { object: key });
        }
        Ok(())
    }

    fn instrument(&mut self, name: &str, referrer: &str) -> Result<Instrument, CliError> {
        if let Some(done) = self.ws.instruments.get(name) {
            return Ok(done.clone());
        }
        let def = lookup(&self.file.instruments, referrer, "instrument", name)?;
        let object = format!("instruments.{name}");
        self.enter(object.clone())?;
        let built = match def {
            InstrumentDef::Kraus { outcomes, kraus } => outcomes_from_defs(outcomes)
                .and_then(|o| kraus_instrument(o, kraus.clone()))
                .map_err(|e| CliError::validation(&object, e))?,
            InstrumentDef::General {
                outcomes,
                kraus_lists,
            } => outcomes_from_defs(outcomes)
                .and_then(|o| Instrument::from_kraus_lists(o, kraus_lists.clone()))
                .map_err(|e| CliError::validation(&object, e))?,
            InstrumentDef::Luders { observable } => {
                let a = lookup(&self.ws.observables, &object, "observable", observable)?;
                luders_instrument(a).map_err(|e| CliError::validation(&object, e))?
            }
            InstrumentDef::Holevo { observable, states } => {
                let a = lookup(&self.ws.observables, &object, "observable", observable)?;
                let betas = states
                    .iter()
                    .map(|s| lookup(&self.ws.states, &object, "state", s).cloned())
                    .collect::<Result<Vec<_>, _>>()?;
                holevo_instrument(a, &betas).map_err(|e| CliError::validation(&object, e))?
            }
            InstrumentDef::Trivial {
                outcomes,
                weights,
                state,
            } => {
                let beta = lookup(&self.ws.states, &object, "state", state)?;
                outcomes_from_defs(outcomes)
                    .and_then(|o| trivial_instrument(weights, beta, o))
                    .map_err(|e| CliError::validation(&object, e))?
            }
            InstrumentDef::PostProcessed { kernel, instrument } => {
                let k = lookup(&self.ws.kernels, &object, "kernel", kernel)?.clone();
                let inner = self.instrument(instrument, &object)?;
                post_process_instrument(&k, &inner).map_err(|e| CliError::validation(&object, e))?
            }
        };
        self.in_progress.remove(&object);
        self.ws.instruments.insert(name.to_string(), built.clone());
        Ok(built)
    }

    fn model(&mut self, name: &str, referrer: &str) -> Result<MeasurementModel, CliError> {
        if let Some(done) = self.ws.models.get(name) {
            return Ok(done.clone());
        }
        let def = lookup(&self.file.models, referrer, "model", name)?;
        let object = format!("models.{name}");
        self.enter(object.clone())?;
        let built = match def {
            ModelDef::Separable { channel, probe } => {
                let nu = self.channel(channel, &object)?;
                let p = lookup(&self.ws.observables, &object, "observable", probe)?.clone();
                MeasurementModel::new(nu, p)
            }
            ModelDef::Sequential { first, second } => {
                let m = self.model(first, &object)?;
                let m2 = self.model(second, &object)?;
                sequential_product_mm(&m, &m2)
            }
            ModelDef::Conditioned { given, then } => {
                let m = self.model(given, &object)?;
                let m2 = self.model(then, &object)?;
                conditioned_mm(&m2, &m)
            }
        }
        .map_err(|e| CliError::validation(&object, e))?;
        self.in_progress.remove(&object);
        self.ws.models.insert(name.to_string(), built.clone());
        Ok(built)
    }

    fn channel(&self, name: &str, referrer: &str) -> Result<SeparableChannel, CliError> {
        lookup(&self.ws.channels, referrer, "channel", name).cloned()
    }
}
