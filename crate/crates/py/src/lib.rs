//! Python bindings: thin wrappers over the `reflchar` crate.  Reports
//! cross the boundary as JSON and arrive in Python as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use reflchar::euler::{
    self, chi_character, closed_form_infinite, quotient_euler, ClassSpec, QuotientMode,
};
use reflchar::groups::{degree_profile, parse_group, GroupId};
use reflchar::report::compute_report;
use reflchar::springer::{self, identify_centralizer, Centralizer};
use reflchar::verify::verify_family;

fn err(e: reflchar::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(spec: &str) -> PyResult<GroupId> {
    parse_group(spec).map_err(err)
}

fn json_to_py(py: Python<'_>, json: &str) -> PyResult<PyObject> {
    let loads = py.import("json")?.getattr("loads")?;
    Ok(loads.call1((json,))?.unbind())
}

/// Full report for one group as a dict (same schema as the CLI's JSON).
#[pyfunction]
#[pyo3(signature = (group, m=None))]
fn compute(py: Python<'_>, group: &str, m: Option<u64>) -> PyResult<PyObject> {
    let report = compute_report(group, m).map_err(err)?;
    let json = serde_json::to_string(&report).expect("serializable");
    json_to_py(py, &json)
}

/// Rendered virtual character, e.g. "I30+I24+I20-I12-I10-I8".
#[pyfunction]
fn chi(group: &str) -> PyResult<String> {
    Ok(chi_character(parse(group)?, None).map_err(err)?.render())
}

/// Coefficients over the maximal poset as {d: a_d}.
#[pyfunction]
fn coefficients(group: &str) -> PyResult<std::collections::BTreeMap<u64, i64>> {
    euler::coefficients(parse(group)?).map_err(err)
}

/// Degrees and codegrees as a pair of lists.
#[pyfunction]
fn profile(group: &str) -> PyResult<(Vec<u64>, Vec<u64>)> {
    let p = degree_profile(parse(group)?).map_err(err)?;
    Ok((p.degrees, p.codegrees))
}

/// Springer regular numbers.
#[pyfunction]
fn regular_numbers(group: &str) -> PyResult<Vec<u64>> {
    let p = degree_profile(parse(group)?).map_err(err)?;
    Ok(springer::regular_numbers(&p))
}

/// The maximal poset D of the group.
#[pyfunction]
fn maximal_poset(group: &str) -> PyResult<Vec<u64>> {
    let p = degree_profile(parse(group)?).map_err(err)?;
    Ok(springer::maximal_poset(&p))
}

/// Least multiple of d in the maximal poset.
#[pyfunction]
fn roundup(group: &str, d: u64) -> PyResult<u64> {
    let p = degree_profile(parse(group)?).map_err(err)?;
    springer::roundup(&p, d).map_err(err)
}

/// Evaluate chi on a class: a regular class of the given order, or the
/// nonregular class when order is None.
#[pyfunction]
#[pyo3(signature = (group, order=None, m=None))]
fn evaluate(group: &str, order: Option<u64>, m: Option<u64>) -> PyResult<i128> {
    let chi = chi_character(parse(group)?, m).map_err(err)?;
    let class = match order {
        Some(order) => ClassSpec::Regular { order },
        None => ClassSpec::Nonregular,
    };
    euler::evaluate_character(&chi, class).map_err(err)
}

/// The classifier value c(G) = chi(U deg / G).
#[pyfunction]
fn c_classifier(group: &str) -> PyResult<i64> {
    euler::c_classifier(parse(group)?).map_err(err)
}

/// Quotient Euler characteristic; mode is one of "orbifold_F",
/// "ordinary_quotient", "orbifold_quotient", "U_mod_G".
#[pyfunction]
fn euler_characteristic(group: &str, mode: &str) -> PyResult<i128> {
    let mode = match mode {
        "orbifold_F" => QuotientMode::OrbifoldF,
        "ordinary_quotient" => QuotientMode::OrdinaryQuotient,
        "orbifold_quotient" => QuotientMode::OrbifoldQuotient,
        "U_mod_G" => QuotientMode::UModG,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let chi = chi_character(parse(group)?, None).map_err(err)?;
    quotient_euler(&chi, mode).map_err(err)
}

/// Closed-form character for the infinite family.
#[pyfunction]
fn closed_form(r: u64, p: u64, l: u64) -> PyResult<String> {
    Ok(closed_form_infinite(r, p, l).map_err(err)?.render())
}

/// Identify the centralizer of a regular element of order d.  Returns
/// the group label, or a list of candidate labels when ambiguous.
#[pyfunction]
fn centralizer(py: Python<'_>, group: &str, d: u64) -> PyResult<PyObject> {
    match identify_centralizer(parse(group)?, d).map_err(err)? {
        Centralizer::Identified { id, .. } => Ok(id.to_string().into_pyobject(py)?.unbind().into()),
        Centralizer::Unidentified { candidates, .. } => {
            let labels: Vec<String> = candidates.iter().map(|c| c.to_string()).collect();
            Ok(labels.into_pyobject(py)?.unbind().into())
        }
    }
}

/// Coefficient-restriction consistency at e.
#[pyfunction]
fn restriction_check(group: &str, e: u64) -> PyResult<bool> {
    euler::restriction_check(parse(group)?, e).map_err(err)
}

/// Run the brute-force verification sweep; returns (groups, checks,
/// failures) counts.
#[pyfunction]
#[pyo3(signature = (rmax=12, lmax=8, cap=20000))]
fn verify(rmax: u64, lmax: u64, cap: u128) -> PyResult<(usize, usize, usize)> {
    let report = verify_family(rmax, lmax, cap).map_err(err)?;
    Ok((report.groups.len(), report.checks.len(), report.failures()))
}

#[pymodule]
fn reflchar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    m.add_function(wrap_pyfunction!(regular_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_poset, m)?)?;
    m.add_function(wrap_pyfunction!(roundup, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(c_classifier, m)?)?;
    m.add_function(wrap_pyfunction!(euler_characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(centralizer, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
