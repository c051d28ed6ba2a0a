//! Aggregated per-group report used by the CLI and the Python bindings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::euler::{
    c_classifier, chi_character, quotient_euler, QuotientMode, VirtualCharacter,
};
use crate::groups::{classify, degree_profile, parse_group, GroupId};
use crate::springer::{maximal_poset, regular_numbers};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerSummary {
    pub u_mod_g: i128,
    pub orbifold_f: i128,
    pub ordinary_quotient: i128,
    pub orbifold_quotient: i128,
}

/// Everything the `compute` command reports for one group.  Coefficient
/// pairs are ordered by descending `d`; poset edges are the covering
/// relations of divisibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeReport {
    pub group: String,
    pub irreducible: bool,
    pub rank: usize,
    pub degrees: Vec<u64>,
    pub codegrees: Vec<u64>,
    pub order: u128,
    pub center: u64,
    pub m: u64,
    pub regular_numbers: Vec<u64>,
    pub poset_nodes: Vec<u64>,
    pub poset_edges: Vec<(u64, u64)>,
    pub coefficients: Vec<(u64, i64)>,
    pub chi: String,
    pub c: i64,
    pub euler: EulerSummary,
    pub note: Option<String>,
}

/// Covering relations of divisibility restricted to `nodes`.
pub fn hasse_edges(nodes: &[u64]) -> Vec<(u64, u64)> {
    let mut edges = Vec::new();
    for &a in nodes {
        for &b in nodes.iter().filter(|&&b| b != a && b % a == 0) {
            let covered = nodes
                .iter()
                .any(|&c| c != a && c != b && c % a == 0 && b % c == 0);
            if !covered {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Build the full report for a group spec.
pub fn compute_report(spec: &str, m: Option<u64>) -> Result<ComputeReport> {
    let g = parse_group(spec)?;
    let class = classify(g)?;
    if !class.irreducible {
        let chi = chi_character(g, m)?;
        return Ok(ComputeReport {
            group: g.to_string(),
            irreducible: false,
            rank: class.rank,
            degrees: vec![],
            codegrees: vec![],
            order: 0,
            center: 0,
            m: chi.m,
            regular_numbers: vec![],
            poset_nodes: vec![],
            poset_edges: vec![],
            coefficients: vec![],
            chi: chi.render(),
            c: 0,
            euler: EulerSummary {
                u_mod_g: 0,
                orbifold_f: 0,
                ordinary_quotient: 0,
                orbifold_quotient: 0,
            },
            note: Some("reducible".to_string()),
        });
    }
    let profile = degree_profile(g)?;
    let chi = chi_character(g, m)?;
    report_from_parts(g, class.rank, &profile.degrees, &profile.codegrees, &chi)
}

fn report_from_parts(
    g: GroupId,
    rank: usize,
    degrees: &[u64],
    codegrees: &[u64],
    chi: &VirtualCharacter,
) -> Result<ComputeReport> {
    let profile = degree_profile(g)?;
    let nodes = maximal_poset(&profile);
    let mut coefficients: Vec<(u64, i64)> =
        chi.coeffs.iter().map(|(&d, &a)| (d, a)).collect();
    coefficients.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(ComputeReport {
        group: g.to_string(),
        irreducible: true,
        rank,
        degrees: degrees.to_vec(),
        codegrees: codegrees.to_vec(),
        order: profile.order(),
        center: profile.center(),
        m: chi.m,
        regular_numbers: regular_numbers(&profile),
        poset_edges: hasse_edges(&nodes),
        poset_nodes: nodes,
        coefficients,
        chi: chi.render(),
        c: c_classifier(g)?,
        euler: EulerSummary {
            u_mod_g: quotient_euler(chi, QuotientMode::UModG)?,
            orbifold_f: quotient_euler(chi, QuotientMode::OrbifoldF)?,
            ordinary_quotient: quotient_euler(chi, QuotientMode::OrdinaryQuotient)?,
            orbifold_quotient: quotient_euler(chi, QuotientMode::OrbifoldQuotient)?,
        },
        note: None,
    })
}

impl ComputeReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group: {}", self.group);
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note: {note}");
            let _ = writeln!(out, "chi: {}", self.chi);
            return out;
        }
        let _ = writeln!(out, "rank: {}", self.rank);
        let _ = writeln!(out, "degrees: {:?}", self.degrees);
        let _ = writeln!(out, "codegrees: {:?}", self.codegrees);
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "center: {}", self.center);
        let _ = writeln!(out, "m: {}", self.m);
        let _ = writeln!(out, "regular numbers: {:?}", self.regular_numbers);
        let _ = writeln!(out, "poset: {:?}", self.poset_nodes);
        let _ = writeln!(out, "hasse edges: {:?}", self.poset_edges);
        let _ = writeln!(out, "coefficients: {:?}", self.coefficients);
        let _ = writeln!(out, "chi: {}", self.chi);
        let _ = writeln!(out, "c: {}", self.c);
        let _ = writeln!(
            out,
            "euler: U/G = {}, orbifold(F) = {}, F/Gamma = {}, orbifold(F/Gamma) = {}",
            self.euler.u_mod_g,
            self.euler.orbifold_f,
            self.euler.ordinary_quotient,
            self.euler.orbifold_quotient
        );
        out
    }
}
