//! The subcommands. Each returns the text to print and the exit status, so
//! tests can drive them without spawning a process.

use std::fmt::Write as _;
use std::path::Path;

use sepmm_core::objects::{prob_dist_instrument, update_state};
use sepmm_core::stats::{mm_stochastic_operator, operator_report};
use sepmm_core::verify::{check_case, run_suite, BoundKind, SuiteSummary, VerifyConfig};
use sepmm_core::{measured_instrument, ComplexMatrix, Tolerance};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFICATION_FAILED};
use crate::replay::{check_line, recorded_check, CounterexampleFile};
use crate::resolve::load_model_file;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Self {
            text,
            exit_code: EXIT_OK,
        }
    }
}

/// Twelve significant digits in scientific notation; `-0` prints as `0`.
pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn matrix_lines(out: &mut String, indent: &str, m: &ComplexMatrix) {
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("({}, {})", num(z.re), num(z.im)))
            .collect();
        let _ = writeln!(out, "{indent}[{}]", cells.join(", "));
    }
}

pub fn validate(path: &Path, canonical: bool) -> Result<Report, CliError> {
    let (file, ws) = load_model_file(path)?;
    if canonical {
        return Ok(Report::ok(file.to_canonical_json()));
    }
    let text = format!(
        "valid: {} states, {} observables, {} kernels, {} instruments, {} channels, {} models\n",
        ws.states.len(),
        ws.observables.len(),
        ws.kernels.len(),
        ws.instruments.len(),
        ws.channels.len(),
        ws.models.len()
    );
    Ok(Report::ok(text))
}

pub fn measure(path: &Path, model: &str, state: &str) -> Result<Report, CliError> {
    let (_, ws) = load_model_file(path)?;
    let m = ws.model(model)?;
    let rho = ws.state(state)?;
    let inst = measured_instrument(m)?;
    let dist = prob_dist_instrument(rho, &inst)?;
    let mut out = String::new();
    let _ = writeln!(out, "model {model}");
    let _ = writeln!(out, "state {state}");
    let mut total = 0.0;
    for (o, &p) in dist.outcomes().iter().zip(dist.probs()) {
        total += p;
        let _ = writeln!(out, "outcome {}", o.label());
        let _ = writeln!(out, "  probability {}", num(p));
        if p > Tolerance::VALIDATION.atol() {
            let updated = update_state(&inst, o.label(), rho)?;
            let _ = writeln!(out, "  updated_state");
            matrix_lines(&mut out, "    ", updated.matrix());
        } else {
            let _ = writeln!(out, "  updated_state undefined");
        }
    }
    let _ = writeln!(out, "total_probability {}", num(total));
    Ok(Report::ok(out))
}

pub fn stats(
    path: &Path,
    model: &str,
    model2: Option<&str>,
    state: &str,
) -> Result<Report, CliError> {
    let (_, ws) = load_model_file(path)?;
    let rho = ws.state(state)?;
    let op = mm_stochastic_operator(ws.model(model)?)?;
    let mut out = String::new();
    let _ = writeln!(out, "state {state}");
    match model2 {
        None => {
            let r = operator_report(rho, &op, &op)?;
            let _ = writeln!(out, "model {model}");
            let _ = writeln!(out, "  expectation {}", num(r.expectation_m));
            let _ = writeln!(out, "  variance {}", num(r.variance_m));
        }
        Some(name2) => {
            let op2 = mm_stochastic_operator(ws.model(name2)?)?;
            let r = operator_report(rho, &op, &op2)?;
            let _ = writeln!(out, "model {model}");
            let _ = writeln!(out, "  expectation {}", num(r.expectation_m));
            let _ = writeln!(out, "  variance {}", num(r.variance_m));
            let _ = writeln!(out, "model2 {name2}");
            let _ = writeln!(out, "  expectation {}", num(r.expectation_m2));
            let _ = writeln!(out, "  variance {}", num(r.variance_m2));
            let _ = writeln!(out, "pair");
            let _ = writeln!(out, "  correlation_re {}", num(r.correlation[0]));
            let _ = writeln!(out, "  correlation_im {}", num(r.correlation[1]));
            let _ = writeln!(out, "  covariance {}", num(r.covariance));
            let _ = writeln!(out, "  commutator_term {}", num(r.commutator_term));
            let _ = writeln!(out, "  identity_residual {}", num(r.identity_residual));
            let _ = writeln!(out, "  inequality_slack {}", num(r.inequality_slack));
        }
    }
    Ok(Report::ok(out))
}

fn summary_lines(out: &mut String, s: &SuiteSummary) {
    let _ = writeln!(
        out,
        "suite {} trials {} {}",
        s.suite,
        s.trials,
        if s.passed() { "PASS" } else { "FAIL" }
    );
    for c in &s.checks {
        let (label, op) = match c.kind {
            BoundKind::AtMost => ("max", "<="),
            BoundKind::AtLeast => ("min", ">="),
        };
        let _ = writeln!(
            out,
            "  {} {label} {} (limit {op} {})",
            c.name,
            num(c.extreme),
            num(c.limit)
        );
    }
}

/// Runs the configured suites; suites run on separate threads but report in
/// the configured order, so the text depends only on the config.
pub fn verify(config: &VerifyConfig, counterexample_path: &Path) -> Result<Report, CliError> {
    let summaries: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .suites
            .iter()
            .map(|&suite| scope.spawn(move || run_suite(suite, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let summaries = summaries.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut out = String::new();
    let dims: Vec<String> = config
        .dims
        .iter()
        .map(|(s, p)| format!("{s},{p}"))
        .collect();
    let _ = writeln!(
        out,
        "verify seed {} trials {} dims {}",
        config.master_seed,
        config.trials,
        dims.join(" ")
    );
    for s in &summaries {
        summary_lines(&mut out, s);
    }
    let failure = summaries.iter().find_map(|s| s.first_failure.as_ref());
    let exit_code = match failure {
        None => {
            let _ = writeln!(out, "result PASS");
            EXIT_OK
        }
        Some(c) => {
            let file = CounterexampleFile::from_counterexample(c);
            std::fs::write(counterexample_path, file.to_json()).map_err(|e| CliError::Io {
                path: counterexample_path.display().to_string(),
                message: e.to_string(),
            })?;
            let _ = writeln!(
                out,
                "result FAIL: suite {} trial {} {}; counterexample written to {}",
                c.suite,
                c.trial,
                recorded_check(&file),
                counterexample_path.display()
            );
            EXIT_VERIFICATION_FAILED
        }
    };
    Ok(Report {
        text: out,
        exit_code,
    })
}

/// Reruns a counterexample. Invalid objects in the file are input errors,
/// reported before any check runs.
pub fn replay(path: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let file = CounterexampleFile::parse(&text)?;
    let suite = file.suite()?;
    let case = file.trial_case()?;
    let checks = check_case(suite, &case)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "replay suite {suite} seed {} trial {}",
        file.master_seed, file.trial
    );
    let _ = writeln!(out, "recorded {}", recorded_check(&file));
    for c in &checks {
        let _ = writeln!(out, "{}", check_line(c));
    }
    let passed = checks.iter().all(|c| c.passed());
    let _ = writeln!(out, "result {}", if passed { "PASS" } else { "FAIL" });
    Ok(Report {
        text: out,
        exit_code: if passed {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        },
    })
}
