//! Python bindings: fixtures in and out as JSON strings, and the command
//! line as a function.

#![allow(clippy::useless_conversion)]

use clap::Parser;
use fcat_core::cli_io::{self, Cli, Fixture};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(fixture_json: &str) -> PyResult<Fixture> {
    cli_io::parse_fixture_str(fixture_json, "<string>").map_err(value_err)
}

/// Validates a fixture and returns it in canonical form.
#[pyfunction]
fn canonical(fixture_json: &str) -> PyResult<String> {
    parse(fixture_json)?.to_canonical_string().map_err(value_err)
}

/// Evaluates one expectation key, e.g. `rigged:p`, returning JSON.
#[pyfunction]
fn evaluate(fixture_json: &str, key: &str) -> PyResult<String> {
    let p = parse(fixture_json)?.parse().map_err(value_err)?;
    let v = cli_io::evaluate(&p, key).map_err(value_err)?;
    Ok(v.to_string())
}

/// Checks every expectation of a fixture; returns a JSON list of results.
#[pyfunction]
fn check(fixture_json: &str) -> PyResult<String> {
    let results = cli_io::check_fixture(&parse(fixture_json)?);
    serde_json::to_string(&results).map_err(value_err)
}

/// The built-in corpus as canonical fixture strings.
#[pyfunction]
fn corpus() -> PyResult<Vec<String>> {
    cli_io::builtin_corpus().iter().map(|f| f.to_canonical_string().map_err(value_err)).collect()
}

/// Runs `fcat` with the given arguments; returns the exit code and the
/// JSON report.
#[pyfunction]
fn run(args: Vec<String>) -> PyResult<(i32, String)> {
    let cli = Cli::try_parse_from(std::iter::once("fcat".to_string()).chain(args)).map_err(value_err)?;
    let (code, report) = cli_io::run(&cli);
    Ok((code, report.to_json()))
}

#[pymodule]
fn fcat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
