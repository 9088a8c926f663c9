//! Mesh export of window-clipped Wythoffians.
//!
//! Closed faces go into a standard OFF file; open (window-clipped
//! apeirogonal) paths have no OFF representation and are written to a
//! sibling `.paths` file, one line per path.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::wythoff::Wythoffian;
use crate::Vec3;

#[derive(Debug, thiserror::Error)]
pub enum MeshError {
    #[error("build contains no vertices inside the window")]
    EmptyMesh,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// In-memory mesh document mirroring the OFF + sidecar layout.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshDocument {
    pub vertices: Vec<Vec3>,
    /// Closed face index cycles (≥ 3 entries each).
    pub polygons: Vec<Vec<usize>>,
    /// Open clipped paths (≥ 2 entries each).
    pub polylines: Vec<Vec<usize>>,
    pub name: String,
    pub iset: String,
    pub initial_vertex: Vec3,
    pub window_radius: f64,
}

impl MeshDocument {
    pub fn from_wythoffian(w: &Wythoffian) -> Result<Self, MeshError> {
        if w.vertices.is_empty() {
            return Err(MeshError::EmptyMesh);
        }
        let polygons = w
            .faces
            .iter()
            .filter(|f| f.closed)
            .map(|f| f.cycle.clone())
            .collect();
        let polylines = w
            .faces
            .iter()
            .filter(|f| !f.closed)
            .map(|f| f.cycle.clone())
            .collect();
        Ok(Self {
            vertices: w.vertices.clone(),
            polygons,
            polylines,
            name: w.source.name().to_string(),
            iset: w.iset.to_string(),
            initial_vertex: w.initial_vertex,
            window_radius: w.window.radius,
        })
    }

    /// OFF text: header, counts "V F E", vertex lines with 17 significant
    /// digits, closed face lines.
    pub fn off_text(&self, edge_count: usize) -> String {
        let mut out = String::new();
        out.push_str("OFF\n");
        let _ = writeln!(
            out,
            "{} {} {}",
            self.vertices.len(),
            self.polygons.len(),
            edge_count
        );
        for v in &self.vertices {
            let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
        }
        for poly in &self.polygons {
            let _ = write!(out, "{}", poly.len());
            for id in poly {
                let _ = write!(out, " {id}");
            }
            out.push('\n');
        }
        out
    }

    /// Sidecar text: "n i1 … in open" per clipped path.
    pub fn paths_text(&self) -> String {
        let mut out = String::new();
        for path in &self.polylines {
            let _ = write!(out, "{}", path.len());
            for id in path {
                let _ = write!(out, " {id}");
            }
            out.push_str(" open\n");
        }
        out
    }
}

/// Path of the sidecar file next to an OFF path.
pub fn paths_sidecar(path: &Path) -> PathBuf {
    path.with_extension("paths")
}

/// Write the OFF file (and the `.paths` sidecar when open faces exist).
pub fn export_off(w: &Wythoffian, path: &Path) -> Result<MeshDocument, MeshError> {
    let doc = MeshDocument::from_wythoffian(w)?;
    std::fs::write(path, doc.off_text(w.edges.len()))?;
    if !doc.polylines.is_empty() {
        std::fs::write(paths_sidecar(path), doc.paths_text())?;
    }
    Ok(doc)
}
