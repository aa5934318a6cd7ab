//! Python bindings: every call goes through the JSON job interface.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use qqkit::job::{run, Command, Format, JobSpec};
use qqkit::QqError;

create_exception!(qqkit_py, QqkitError, PyException, "Raised with (message, exit_code).");

fn to_py(e: QqError) -> PyErr {
    QqkitError::new_err((e.to_string(), e.exit_code()))
}

fn format_of(s: &str) -> PyResult<Format> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| QqkitError::new_err((format!("unknown format '{s}'"), 2)))
}

fn node_weights(quiver: &str, w: Vec<u32>) -> PyResult<BTreeMap<String, u32>> {
    let q = qqkit::io::parse_quiver(quiver).map_err(to_py)?;
    if q.nodes.len() != w.len() {
        return Err(QqkitError::new_err((format!("w has {} entries, quiver has {} nodes", w.len(), q.nodes.len()), 2)));
    }
    Ok(q.nodes.iter().map(|n| n.id.clone()).zip(w).collect())
}

/// Runs a JSON job and returns (output, ok).
#[pyfunction]
fn run_job(spec: &str) -> PyResult<(String, bool)> {
    let job = JobSpec::from_json(spec).map_err(to_py)?;
    let out = run(&job).map_err(to_py)?;
    Ok((out.body, out.ok))
}

/// Generic expansion of a builtin quiver, weights in node order.
#[pyfunction]
#[pyo3(signature = (quiver, w, format = "json"))]
fn expand(quiver: &str, w: Vec<u32>, format: &str) -> PyResult<String> {
    let job = JobSpec {
        command: Command::Expand,
        w: Some(node_weights(quiver, w)?),
        quiver: Some(quiver.into()),
        format: Some(format_of(format)?),
        ..JobSpec::default()
    };
    Ok(run(&job).map_err(to_py)?.body)
}

/// KR Higgsing followed by the classical limit; `m` is "q1" or "q2".
#[pyfunction]
#[pyo3(signature = (quiver, w, m, limit, format = "json"))]
fn kr_limit(quiver: &str, w: Vec<u32>, m: &str, limit: &str, format: &str) -> PyResult<String> {
    let job = JobSpec {
        command: Command::Limit,
        w: Some(node_weights(quiver, w)?),
        quiver: Some(quiver.into()),
        higgs: Some(format!("kr:{m}").into()),
        limit: Some(limit.to_string()),
        format: Some(format_of(format)?),
        ..JobSpec::default()
    };
    Ok(run(&job).map_err(to_py)?.body)
}

/// Replays the bundled fixture corpus; returns (report, ok).
#[pyfunction]
#[pyo3(signature = (format = "json", threads = None))]
fn verify(format: &str, threads: Option<usize>) -> PyResult<(String, bool)> {
    let job = JobSpec { command: Command::Verify, format: Some(format_of(format)?), threads, ..JobSpec::default() };
    let out = run(&job).map_err(to_py)?;
    Ok((out.body, out.ok))
}

#[pymodule]
fn qqkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QqkitError", m.py().get_type::<QqkitError>())?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(kr_limit, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
