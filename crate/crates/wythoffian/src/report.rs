//! JSON analysis reports: per-Wythoffian counts, face classes, vertex
//! symbol, and the uniformity flag, with a stable key order.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{self, AnalysisError};
use crate::catalog::PolyhedronSpec;
use crate::wythoff::{IndexSet, Wythoffian};

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub v: usize,
    pub e: usize,
    /// Face counts keyed by type ("01", "12", "02"), closed and open.
    pub f_by_type: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceSummary {
    /// Face type as "ij".
    pub r#type: String,
    /// Geometric class of the representative face.
    pub class: String,
    pub regular: bool,
}

/// Everything the `analyze` and `build` subcommands report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: String,
    pub iset: String,
    pub params: Vec<f64>,
    pub realizable: bool,
    pub counts: Counts,
    pub vertex_symbol: String,
    pub faces: Vec<FaceSummary>,
    pub uniform: bool,
}

impl AnalysisReport {
    /// Report for a non-realizable (entry, index set) pair.
    pub fn unrealizable(spec: &PolyhedronSpec, iset: IndexSet) -> Self {
        Self {
            name: spec.name().to_string(),
            iset: iset.to_string(),
            params: Vec::new(),
            realizable: false,
            counts: Counts {
                v: 0,
                e: 0,
                f_by_type: BTreeMap::new(),
            },
            vertex_symbol: String::new(),
            faces: Vec::new(),
            uniform: false,
        }
    }

    pub fn from_build(w: &Wythoffian, params: &[f64]) -> Result<Self, ReportError> {
        let mut f_by_type: BTreeMap<String, usize> = BTreeMap::new();
        for f in &w.faces {
            *f_by_type
                .entry(format!("{}{}", f.ftype.0, f.ftype.1))
                .or_insert(0) += 1;
        }
        let symbol = analysis::vertex_symbol(w)?;
        let uniformity = analysis::is_uniform(w);
        // one summary per face type, from a representative face
        let mut seen: BTreeMap<(usize, usize), FaceSummary> = BTreeMap::new();
        for (fi, f) in w.faces.iter().enumerate() {
            if seen.contains_key(&f.ftype) {
                continue;
            }
            let class = analysis::classify_face(f, w)?;
            let regular = analysis::is_regular_polygon(f, w).unwrap_or(false);
            let _ = fi;
            seen.insert(
                f.ftype,
                FaceSummary {
                    r#type: format!("{}{}", f.ftype.0, f.ftype.1),
                    class: class.symbol_entry(),
                    regular,
                },
            );
        }
        Ok(Self {
            name: w.source.name().to_string(),
            iset: w.iset.to_string(),
            params: params.to_vec(),
            realizable: true,
            counts: Counts {
                v: w.vertices.len(),
                e: w.edges.len(),
                f_by_type,
            },
            vertex_symbol: symbol.canonical,
            faces: seen.into_values().collect(),
            uniform: uniformity.uniform,
        })
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Write the report as deterministic-key-order JSON.
pub fn export_report(report: &AnalysisReport, path: &Path) -> Result<(), ReportError> {
    std::fs::write(path, report.to_json()?)?;
    Ok(())
}

pub fn parse_report(text: &str) -> Result<AnalysisReport, ReportError> {
    Ok(serde_json::from_str(text)?)
}
