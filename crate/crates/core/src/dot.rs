//! Graphviz DOT export.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::forman::forman_profile;
use crate::resistance::{resistance_profile, ResistanceError};
use crate::skeleton::TwoSkeleton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DotLabels {
    /// Integer Forman curvature on each edge.
    Forman,
    /// Resistance curvature on each vertex, 4 decimals.
    Resistance,
    None,
}

pub fn export_dot(sk: &TwoSkeleton, labels: DotLabels) -> Result<String, ResistanceError> {
    let g = sk.graph();
    let mut out = String::from("graph skeleton {\n");
    let vertex_labels = match labels {
        DotLabels::Resistance => Some(resistance_profile(g)?.per_vertex),
        _ => None,
    };
    let edge_labels = match labels {
        DotLabels::Forman => Some(forman_profile(sk).per_edge),
        _ => None,
    };
    for v in 0..g.n() {
        match &vertex_labels {
            Some(k) => writeln!(out, "  {v} [label=\"{:.4}\"];", k[v]),
            None => writeln!(out, "  {v};"),
        }
        .expect("writing to a String");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match &edge_labels {
            Some(k) => writeln!(out, "  {u} -- {v} [label=\"{}\"];", k[e]),
            None => writeln!(out, "  {u} -- {v};"),
        }
        .expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}

/// Edge labels parsed back out of an exported document, in edge order.
pub fn edge_labels(dot: &str) -> Vec<String> {
    dot.lines()
        .filter(|l| l.contains("--"))
        .filter_map(|l| l.split("label=\"").nth(1))
        .filter_map(|rest| rest.split('"').next())
        .map(str::to_string)
        .collect()
}
