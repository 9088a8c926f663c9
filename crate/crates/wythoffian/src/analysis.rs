//! Geometric face classification, polygon regularity, vertex figures and
//! padded vertex symbols, uniformity decisions, and the search for uniform
//! initial vertices.

use std::collections::BTreeMap;

use crate::catalog::PolyhedronSpec;
use crate::geom::{classify, eigen_sym3, fit_correspondence, IsometryKind};
use crate::group::Window;
use crate::tol;
use crate::wythoff::{
    self, build_from_vertex, effective_domain, param_origin, vertex_figure_cycle, FaceRecord,
    IndexSet, Wythoffian, WythoffError,
};
use crate::{Mat3, Vec3};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("face has too few vertices to classify")]
    TooFewVertices,
    #[error("screw angle does not divide a full turn")]
    HelixAngleMismatch,
    #[error("window clipping broke the vertex figure; enlarge the window")]
    OpenVertexFigure,
    #[error("interior vertices disagree on the vertex symbol")]
    NonTransitiveSymbol,
    #[error("build has no interior vertex; enlarge the window")]
    NoInteriorVertex,
}

/// Geometric class of a traced face.
///
/// `Helical(k)` is a helix over a k-gon; a planar zigzag is the k = 2 case
/// and gets its own tag, as does its truncation. `HelicalTruncated` covers
/// skew truncations whose projections are truncated zigzags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceClass {
    ConvexPlanar(usize),
    StarPlanar(usize),
    SkewFinite(usize),
    CrossedPlanar(usize),
    LinearApeirogon,
    Zigzag,
    TruncatedZigzag,
    Helical(usize),
    HelicalTruncated(usize),
}

impl FaceClass {
    pub fn is_finite(&self) -> bool {
        matches!(
            self,
            FaceClass::ConvexPlanar(_)
                | FaceClass::StarPlanar(_)
                | FaceClass::SkewFinite(_)
                | FaceClass::CrossedPlanar(_)
        )
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            FaceClass::ConvexPlanar(n)
            | FaceClass::StarPlanar(n)
            | FaceClass::SkewFinite(n)
            | FaceClass::CrossedPlanar(n) => Some(*n),
            _ => None,
        }
    }

    /// ASCII form of one padded-symbol entry: `4c`, `8s`, `4bx`, `inf`,
    /// `inf_k`, `tinf_2`.
    pub fn symbol_entry(&self) -> String {
        match self {
            FaceClass::ConvexPlanar(n) => format!("{n}c"),
            FaceClass::StarPlanar(n) => format!("{n}st"),
            FaceClass::SkewFinite(n) => format!("{n}s"),
            FaceClass::CrossedPlanar(n) => format!("{n}bx"),
            FaceClass::LinearApeirogon => "inf".to_string(),
            FaceClass::Zigzag => "inf_2".to_string(),
            FaceClass::TruncatedZigzag => "tinf_2".to_string(),
            FaceClass::Helical(k) => format!("inf_{k}"),
            FaceClass::HelicalTruncated(k) => format!("tinf_{k}"),
        }
    }
}

fn face_points(f: &FaceRecord, w: &Wythoffian) -> Vec<Vec3> {
    f.cycle.iter().map(|&id| w.vertices[id]).collect()
}

fn edge_scale(points: &[Vec3], closed: bool) -> f64 {
    let n = points.len();
    let last = if closed { n } else { n - 1 };
    let mut total = 0.0;
    for k in 0..last {
        total += points[k].dist(&points[(k + 1) % n]);
    }
    total / last as f64
}

/// Best-fit plane data: (centroid, unit normal, residual).
fn best_fit_plane(points: &[Vec3]) -> (Vec3, Vec3, f64) {
    let n = points.len() as f64;
    let mut centroid = Vec3::zero();
    for p in points {
        centroid = centroid + *p;
    }
    let centroid = centroid / n;
    let mut cov = Mat3::zero();
    for p in points {
        let d = *p - centroid;
        cov = cov.add(&Mat3::outer(&d, &d));
    }
    let (_eig, vecs) = eigen_sym3(&cov);
    let normal = vecs[0];
    let residual = points
        .iter()
        .map(|p| (*p - centroid).dot(&normal).abs())
        .fold(0.0, f64::max);
    (centroid, normal, residual)
}

fn is_planar(points: &[Vec3], scale: f64) -> Option<(Vec3, Vec3)> {
    let (centroid, normal, residual) = best_fit_plane(points);
    (residual < 10.0 * tol::EPS_GEO * scale.max(1.0)).then_some((centroid, normal))
}

fn collinear(points: &[Vec3], scale: f64) -> bool {
    if points.len() < 3 {
        return true;
    }
    let dir = points[points.len() - 1] - points[0];
    if dir.norm() < 1e-12 {
        return false;
    }
    let dir = dir.normalized();
    points
        .iter()
        .all(|p| (*p - points[0]).reject(&dir).norm() < 1e-6 * scale.max(1.0))
}

/// Classify a closed polygon given directly by its vertex cycle.
pub fn analyze_finite_polygon(points: &[Vec3]) -> Result<FaceClass, AnalysisError> {
    let n = points.len();
    if n < 3 {
        return Err(AnalysisError::TooFewVertices);
    }
    let scale = edge_scale(points, true);
    let Some((centroid, normal)) = is_planar(points, scale) else {
        return Ok(FaceClass::SkewFinite(n));
    };
    let u = normal.any_orthogonal();
    let v = normal.cross(&u);
    let pts2: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((*p - centroid).dot(&u), (*p - centroid).dot(&v)))
        .collect();
    if self_intersecting(&pts2, scale) {
        if winding_number(&pts2).abs() >= 2 {
            Ok(FaceClass::StarPlanar(n))
        } else {
            Ok(FaceClass::CrossedPlanar(n))
        }
    } else if is_convex(&pts2, scale) {
        Ok(FaceClass::ConvexPlanar(n))
    } else {
        Ok(FaceClass::StarPlanar(n))
    }
}

fn self_intersecting(pts: &[(f64, f64)], scale: f64) -> bool {
    let n = pts.len();
    let eps = 1e-9 * scale.max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (j + 1) % n == i || (i + 1) % n == j {
                continue; // adjacent segments share an endpoint
            }
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if open_segments_cross(a, b, c, d, eps) {
                return true;
            }
        }
    }
    false
}

fn open_segments_cross(
    a: (f64, f64),
    b: (f64, f64),
    c: (f64, f64),
    d: (f64, f64),
    eps: f64,
) -> bool {
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
        (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
    };
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    d1 * d2 < -eps * eps && d3 * d4 < -eps * eps
}

/// Signed turning number of a closed planar cycle about its centroid.
fn winding_number(pts: &[(f64, f64)]) -> i64 {
    let n = pts.len();
    let mut total = 0.0;
    for k in 0..n {
        let p = pts[k];
        let q = pts[(k + 1) % n];
        let mut step = (q.1).atan2(q.0) - (p.1).atan2(p.0);
        while step > std::f64::consts::PI {
            step -= 2.0 * std::f64::consts::PI;
        }
        while step <= -std::f64::consts::PI {
            step += 2.0 * std::f64::consts::PI;
        }
        total += step;
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i64
}

fn is_convex(pts: &[(f64, f64)], scale: f64) -> bool {
    let n = pts.len();
    let eps = 1e-9 * scale.max(1.0) * scale.max(1.0);
    let mut sign = 0.0f64;
    for k in 0..n {
        let p = pts[k];
        let q = pts[(k + 1) % n];
        let r = pts[(k + 2) % n];
        let cross = (q.0 - p.0) * (r.1 - q.1) - (q.1 - p.1) * (r.0 - q.0);
        if cross.abs() <= eps {
            continue;
        }
        if sign == 0.0 {
            sign = cross.signum();
        } else if cross.signum() != sign {
            return false;
        }
    }
    true
}

/// Classify a traced face of a build.
///
/// Closed faces are analyzed from their vertex geometry. Open (infinite)
/// faces are classified through the kind of the generating dihedral product
/// rᵢrⱼ, with truncated variants recognized when both indices of the pair
/// are transient.
pub fn classify_face(f: &FaceRecord, w: &Wythoffian) -> Result<FaceClass, AnalysisError> {
    let points = face_points(f, w);
    if f.closed {
        return analyze_finite_polygon(&points);
    }
    if points.len() < 4 {
        return Err(AnalysisError::TooFewVertices);
    }
    let scale = edge_scale(&points, false);
    if collinear(&points, scale) {
        return Ok(FaceClass::LinearApeirogon);
    }
    let gens = w.source.gens();
    let (i, j) = f.ftype;
    let product = crate::geom::compose(gens.gen(i), gens.gen(j));
    let truncated = w.iset.contains(i) && w.iset.contains(j);
    let planar = is_planar(&points, scale).is_some();
    let zigzag_family = |planar: bool| {
        if !truncated {
            FaceClass::Zigzag
        } else if planar {
            FaceClass::TruncatedZigzag
        } else {
            FaceClass::HelicalTruncated(2)
        }
    };
    match classify(&product) {
        IsometryKind::Translation { .. } | IsometryKind::Glide { .. } => Ok(zigzag_family(planar)),
        IsometryKind::Screw { angle, .. } => {
            if (std::f64::consts::PI - angle).abs() < 1e-6 {
                return Ok(zigzag_family(planar));
            }
            let turns = 2.0 * std::f64::consts::PI / angle;
            let k = turns.round();
            if (turns - k).abs() > 1e-6 {
                return Err(AnalysisError::HelixAngleMismatch);
            }
            let k = k as usize;
            Ok(FaceClass::Helical(if truncated { 2 * k } else { k }))
        }
        _ => Err(AnalysisError::TooFewVertices),
    }
}

/// Numeric regularity test: an isometry must advance the vertex cycle by one
/// step (and, for finite faces, another must reverse it), realizing
/// flag-transitivity of the polygon's own symmetry group.
pub fn is_regular_polygon(f: &FaceRecord, w: &Wythoffian) -> Result<bool, AnalysisError> {
    regular_points(&face_points(f, w), f.closed)
}

/// Regularity of a polygon given by its ordered points.
pub fn regular_points(points: &[Vec3], closed: bool) -> Result<bool, AnalysisError> {
    let n = points.len();
    if (closed && n < 3) || (!closed && n < 4) {
        return Err(AnalysisError::TooFewVertices);
    }
    let scale = points
        .iter()
        .map(|p| points.iter().map(|q| p.dist(q)).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    let fit_tol = 100.0 * tol::REL_TOL * scale.max(1.0);
    if closed {
        let shifted: Vec<Vec3> = (0..n).map(|k| points[(k + 1) % n]).collect();
        if fit_correspondence(points, &shifted, fit_tol).is_none() {
            return Ok(false);
        }
        let reversed: Vec<Vec3> = (0..n).map(|k| points[(n - k) % n]).collect();
        return Ok(fit_correspondence(points, &reversed, fit_tol).is_some());
    }
    // open path: use the interior run, away from the clipped ends
    let run = &points[1..n - 1];
    if run.len() < 4 {
        return Err(AnalysisError::TooFewVertices);
    }
    let m = run.len();
    if collinear(run, edge_scale(run, false)) {
        let gaps: Vec<f64> = (0..m - 1).map(|k| run[k].dist(&run[k + 1])).collect();
        let max = gaps.iter().cloned().fold(0.0, f64::max);
        let min = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
        return Ok(max - min <= 100.0 * tol::REL_TOL * max);
    }
    Ok(fit_correspondence(&run[..m - 1], &run[1..], fit_tol).is_some())
}

/// The vertex figure at an interior vertex: the closed polygon through the
/// neighbors, ordered by shared faces.
pub fn vertex_figure(w: &Wythoffian, vid: usize) -> Result<Vec<Vec3>, AnalysisError> {
    let cycle = vertex_figure_cycle(w, vid).ok_or(AnalysisError::OpenVertexFigure)?;
    Ok(cycle.into_iter().map(|id| w.vertices[id]).collect())
}

/// One entry of a padded vertex symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolEntry {
    /// Face size, `None` for apeirogons.
    pub size: Option<usize>,
    /// Rendered ASCII entry, e.g. `4c`, `12s`, `inf_4`, `tinf_2`.
    pub text: String,
}

impl SymbolEntry {
    fn sort_key(&self) -> (u8, usize, &str) {
        (
            self.size.is_none() as u8,
            self.size.unwrap_or(0),
            self.text.as_str(),
        )
    }
}

/// Cyclic list of face entries around a vertex, with canonical string form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSymbol {
    pub entries: Vec<SymbolEntry>,
    pub canonical: String,
}

impl VertexSymbol {
    pub fn from_entries(entries: Vec<SymbolEntry>) -> Self {
        let entries = canonical_rotation(&entries);
        let canonical = render_symbol(&entries);
        Self { entries, canonical }
    }

    /// Match a dot-separated pattern of entries like `4bx.4c.4*.6s`;
    /// `N*` matches a size-N face with any annotation and `inf*` any
    /// apeirogon entry. Comparison is cyclic and reversal-blind.
    pub fn matches(&self, pattern: &str) -> bool {
        let pats: Vec<&str> = pattern.split('.').collect();
        let n = self.entries.len();
        if pats.len() != n {
            return false;
        }
        let entry_matches = |entry: &SymbolEntry, pat: &str| -> bool {
            if let Some(size) = pat.strip_suffix('*') {
                if size == "inf" {
                    return entry.size.is_none();
                }
                return size.parse::<usize>().ok() == entry.size;
            }
            entry.text == pat
        };
        for rev in [false, true] {
            let seq: Vec<&SymbolEntry> = if rev {
                self.entries.iter().rev().collect()
            } else {
                self.entries.iter().collect()
            };
            for shift in 0..n {
                if (0..n).all(|k| entry_matches(seq[(k + shift) % n], pats[k])) {
                    return true;
                }
            }
        }
        false
    }
}

/// Lexicographically minimal rotation/reversal of the entry cycle.
pub fn canonical_rotation(entries: &[SymbolEntry]) -> Vec<SymbolEntry> {
    let n = entries.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<&SymbolEntry>> = None;
    for rev in [false, true] {
        let seq: Vec<&SymbolEntry> = if rev {
            entries.iter().rev().collect()
        } else {
            entries.iter().collect()
        };
        for shift in 0..n {
            let rot: Vec<&SymbolEntry> = (0..n).map(|k| seq[(k + shift) % n]).collect();
            let better = match &best {
                None => true,
                Some(b) => {
                    rot.iter().map(|e| e.sort_key()).collect::<Vec<_>>()
                        < b.iter().map(|e| e.sort_key()).collect::<Vec<_>>()
                }
            };
            if better {
                best = Some(rot);
            }
        }
    }
    best.unwrap().into_iter().cloned().collect()
}

/// Render with runs of identical entries collapsed to `e^m`.
fn render_symbol(entries: &[SymbolEntry]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < entries.len() {
        let mut m = 1;
        while k + m < entries.len() && entries[k + m].text == entries[k].text {
            m += 1;
        }
        if m > 1 {
            parts.push(format!("{}^{}", entries[k].text, m));
        } else {
            parts.push(entries[k].text.clone());
        }
        k += m;
    }
    format!("({})", parts.join("."))
}

/// Face classes per face index, cached for symbol computation.
pub fn face_classes(w: &Wythoffian) -> Result<Vec<FaceClass>, AnalysisError> {
    w.faces.iter().map(|f| classify_face(f, w)).collect()
}

/// The padded vertex symbol, computed at every interior vertex and required
/// to agree across them.
///
/// Only faces incident to interior vertices are classified, so clipped
/// boundary scraps of apeirogonal faces do not interfere.
pub fn vertex_symbol(w: &Wythoffian) -> Result<VertexSymbol, AnalysisError> {
    let interior = w.interior_vertices();
    if interior.is_empty() {
        return Err(AnalysisError::NoInteriorVertex);
    }
    let mut classes: BTreeMap<usize, FaceClass> = BTreeMap::new();
    let mut result: Option<VertexSymbol> = None;
    for &u in &interior {
        let symbol = symbol_at(w, u, &mut classes)?;
        match &result {
            None => result = Some(symbol),
            Some(prev) => {
                if prev.canonical != symbol.canonical {
                    return Err(AnalysisError::NonTransitiveSymbol);
                }
            }
        }
    }
    Ok(result.unwrap())
}

fn symbol_at(
    w: &Wythoffian,
    vid: usize,
    classes: &mut BTreeMap<usize, FaceClass>,
) -> Result<VertexSymbol, AnalysisError> {
    let cycle = vertex_figure_cycle(w, vid).ok_or(AnalysisError::OpenVertexFigure)?;
    let k = cycle.len();
    let incident = w.faces_at(vid);
    let mut entries = Vec::with_capacity(k);
    for t in 0..k {
        let a = cycle[t];
        let b = cycle[(t + 1) % k];
        let mut found = None;
        for &(fi, pos) in &incident {
            let f = &w.faces[fi];
            let n = f.cycle.len();
            let (prev, next) = if f.closed {
                (f.cycle[(pos + n - 1) % n], f.cycle[(pos + 1) % n])
            } else if pos > 0 && pos + 1 < n {
                (f.cycle[pos - 1], f.cycle[pos + 1])
            } else {
                continue;
            };
            if (prev == a && next == b) || (prev == b && next == a) {
                found = Some(fi);
                break;
            }
        }
        let fi = found.ok_or(AnalysisError::OpenVertexFigure)?;
        let class = match classes.get(&fi) {
            Some(c) => *c,
            None => {
                let c = classify_face(&w.faces[fi], w)?;
                classes.insert(fi, c);
                c
            }
        };
        entries.push(SymbolEntry {
            size: class.size(),
            text: class.symbol_entry(),
        });
    }
    Ok(VertexSymbol::from_entries(entries))
}

/// Uniformity determination for a built Wythoffian.
#[derive(Clone, Debug)]
pub struct UniformityReport {
    pub uniform: bool,
    /// (face index, reason) for each irregular face-class representative.
    pub failing_faces: Vec<(usize, String)>,
    /// Relative spread (max − min)/max of the base edge lengths.
    pub edge_length_spread: f64,
}

/// Relative base-edge spread of an initial vertex candidate.
pub fn edge_spread(spec: &PolyhedronSpec, iset: IndexSet, v: &Vec3) -> f64 {
    let lens: Vec<f64> = iset
        .members()
        .into_iter()
        .map(|i| spec.gens().gen(i).apply(v).dist(v))
        .collect();
    let max = lens.iter().cloned().fold(0.0, f64::max);
    let min = lens.iter().cloned().fold(f64::INFINITY, f64::min);
    if max <= 0.0 {
        return f64::INFINITY;
    }
    (max - min) / max
}

/// Uniform iff every face is a regular polygon; vertex-transitivity holds by
/// construction. One representative per face type suffices since all faces
/// of a type are congruent images of the base face.
pub fn is_uniform(w: &Wythoffian) -> UniformityReport {
    let spread = edge_spread(&w.source, w.iset, &w.initial_vertex);
    let mut failing = Vec::new();
    let v_id = w
        .vertices
        .iter()
        .position(|p| p.approx_eq(&w.initial_vertex, tol::EPS_POINT));
    let mut reps: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    if let Some(v_id) = v_id {
        for (fi, _) in w.faces_at(v_id) {
            reps.entry(w.faces[fi].ftype).or_insert(fi);
        }
    }
    // for types not met at the initial vertex, use the longest face of the
    // type, skipping clipped boundary scraps
    for (fi, f) in w.faces.iter().enumerate() {
        match reps.get(&f.ftype) {
            Some(_) => {}
            None => {
                reps.insert(f.ftype, fi);
            }
        }
        let best = reps.get_mut(&f.ftype).unwrap();
        let best_at_v = v_id.map_or(false, |vid| w.faces[*best].cycle.contains(&vid));
        if !best_at_v && f.cycle.len() > w.faces[*best].cycle.len() {
            *best = fi;
        }
    }
    for (&ftype, &fi) in &reps {
        match is_regular_polygon(&w.faces[fi], w) {
            Ok(true) => {}
            Ok(false) => failing.push((
                fi,
                format!(
                    "face type {{{},{}}} is not a regular polygon",
                    ftype.0, ftype.1
                ),
            )),
            Err(e) => failing.push((fi, format!("face type {ftype:?}: {e}"))),
        }
    }
    UniformityReport {
        uniform: failing.is_empty(),
        failing_faces: failing,
        edge_length_spread: spread,
    }
}

/// Outcome of the uniform-vertex search.
#[derive(Clone, Debug)]
pub enum UniformSearch {
    Uniform {
        params: Vec<f64>,
        vertex: Vec3,
        spread: f64,
        symbol: VertexSymbol,
    },
    NotUniformizable {
        best_spread: f64,
    },
}

const GRID_SIZE: usize = 64;
const REFINE_DEPTH: usize = 20;

/// Search the admissible domain for an initial vertex giving a uniform
/// Wythoffian: equalize the base-edge lengths (a necessary condition) by
/// damped Gauss-Newton from a grid of starts, then verify full face
/// regularity on a build. Returns `NotUniformizable` with the best spread
/// found by a refined grid search when no candidate verifies.
pub fn find_uniform_vertex(
    spec: &PolyhedronSpec,
    iset: IndexSet,
) -> Result<UniformSearch, WythoffError> {
    let domain = effective_domain(spec, iset).ok_or(WythoffError::NoAdmissibleVertex)?;
    let origin = param_origin(spec, &domain);
    let dim = domain.dim();
    let members = iset.members();
    let constraints = members.len() - 1;

    let point_at = |coords: &[f64]| domain.point_at(&origin, coords);
    let lens = |coords: &[f64]| -> Vec<f64> {
        let p = point_at(coords);
        members
            .iter()
            .map(|&i| spec.gens().gen(i).apply(&p).dist(&p))
            .collect()
    };
    // truncated face types: both walk indices transient, so the face
    // alternates two vertex classes. Equal edges leave a one-parameter slack
    // there; third-neighbor distances (second-neighbor ones are equal by the
    // rᵢrⱼ symmetry alone) supply the missing equation.
    let truncated_pairs: Vec<(usize, usize)> = wythoff::index_pairs(iset)
        .into_iter()
        .filter(|&(i, j)| iset.contains(i) && iset.contains(j))
        .collect();
    let residual = |coords: &[f64]| -> Vec<f64> {
        let l = lens(coords);
        let mut out: Vec<f64> = (1..l.len()).map(|k| l[k] - l[0]).collect();
        let p = point_at(coords);
        for &(i, j) in &truncated_pairs {
            let run = trace_forward(spec, i, j, &p, 6);
            // fixed length: degenerate traces (placements on a mirror)
            // contribute nothing and are rejected later anyway
            out.push(if run.len() >= 5 {
                run[0].dist(&run[3]) - run[1].dist(&run[4])
            } else {
                0.0
            });
        }
        out
    };

    // inflate degenerate box axes: a zero extent means the marching origin
    // sat on a region boundary (often a mirror), and starts placed exactly
    // there stall on the kinked edge-length functions
    let bbox: Vec<(f64, f64)> = wythoff::parameter_box(spec, iset, &domain)
        .into_iter()
        .map(|(lo, hi)| {
            if hi - lo < 0.1 {
                (lo - 0.35, hi + 0.35)
            } else {
                (lo, hi)
            }
        })
        .collect();
    let mut candidates: Vec<Vec<f64>> = Vec::new();

    if constraints == 0 || dim == 0 {
        if let Ok(p) = wythoff::default_params(spec, iset) {
            candidates.push(p);
        }
    } else {
        for start in newton_starts(&bbox, dim) {
            if let Some(sol) = gauss_newton(&residual, &start, &bbox) {
                if lens(&sol).iter().any(|&x| x < 1e-6) {
                    continue; // degenerate corner with collapsing edges
                }
                if candidates
                    .iter()
                    .any(|c| c.iter().zip(&sol).all(|(a, b)| (a - b).abs() < 1e-6))
                {
                    continue;
                }
                candidates.push(sol);
            }
        }
    }

    for coords in &candidates {
        let v = point_at(coords);
        // Edge equality degenerates quadratically toward the blend-collapse
        // and projection-caveat planes, so Newton can stall within placement
        // tolerance of them; genuine blend solutions sit macroscopically off.
        let near_degenerate = spec
            .degeneracy_mirror
            .as_ref()
            .map_or(false, |t0| t0.apply(&v).dist(&v) < 2e-4)
            || spec
                .placement_caveats
                .iter()
                .any(|(cs, plane)| *cs == iset && plane.signed_dist(&v).abs() < 1e-4);
        if near_degenerate {
            continue;
        }
        let Ok(()) = wythoff::check_placement_at(spec, iset, &v) else {
            continue;
        };
        let max_edge = lens(coords).iter().cloned().fold(0.0, f64::max);
        let window = Window::new(v, (2.4 * max_edge + 0.6).max(1.8));
        let Ok(w) = build_from_vertex(spec, iset, &v, window) else {
            continue;
        };
        let report = is_uniform(&w);
        if report.uniform && report.edge_length_spread < 1e-10 {
            let symbol = vertex_symbol(&w).map_err(|e| {
                WythoffError::PlacementViolation(format!("symbol computation failed: {e}"))
            })?;
            return Ok(UniformSearch::Uniform {
                params: coords.clone(),
                vertex: v,
                spread: report.edge_length_spread,
                symbol,
            });
        }
    }

    // no verified candidate: refined grid search for the best spread
    let mut best_spread = f64::INFINITY;
    if dim == 0 {
        if let Some(c) = candidates.first() {
            best_spread = edge_spread(spec, iset, &point_at(c));
        }
    } else {
        let mut box_now = bbox.clone();
        for depth in 0..REFINE_DEPTH {
            let per_axis = if depth == 0 {
                match dim {
                    1 => GRID_SIZE * GRID_SIZE,
                    2 => GRID_SIZE,
                    _ => 16,
                }
            } else {
                8
            };
            let mut best_here: Option<Vec<f64>> = None;
            for_each_grid_point(&box_now, per_axis, &mut |coords| {
                let p = point_at(coords);
                if pointwise_ok(spec, iset, &p) {
                    let s = edge_spread(spec, iset, &p);
                    if s < best_spread {
                        best_spread = s;
                        best_here = Some(coords.to_vec());
                    }
                }
            });
            let Some(center) = best_here else { break };
            box_now = (0..dim)
                .map(|a| {
                    let (lo, hi) = box_now[a];
                    let half = 0.35 * (hi - lo) * 0.5;
                    (center[a] - half, center[a] + half)
                })
                .collect();
        }
    }
    Ok(UniformSearch::NotUniformizable { best_spread })
}

fn pointwise_ok(spec: &PolyhedronSpec, iset: IndexSet, p: &Vec3) -> bool {
    let gens = spec.gens();
    (0..3).all(|i| {
        let moved = !gens.gen(i).apply(p).approx_eq(p, tol::EPS_POINT);
        iset.contains(i) == moved
    })
}

/// First `count` vertices of the (i, j)-face path through `p`, walked
/// forward by alternately applying rᵢ and rⱼ.
fn trace_forward(
    spec: &PolyhedronSpec,
    i: usize,
    j: usize,
    p: &Vec3,
    count: usize,
) -> Vec<Vec3> {
    let gens = spec.gens();
    let mut out = vec![*p];
    let mut word = crate::Isometry::identity();
    let letters = [i, j];
    for step in 0..(4 * count) {
        word = crate::geom::compose(&word, gens.gen(letters[step % 2]));
        let q = word.apply(p);
        if q.approx_eq(out.last().unwrap(), tol::EPS_POINT) {
            continue;
        }
        out.push(q);
        if out.len() == count {
            break;
        }
    }
    out
}

fn for_each_grid_point(
    bbox: &[(f64, f64)],
    per_axis: usize,
    f: &mut dyn FnMut(&[f64]),
) {
    let dim = bbox.len();
    let mut idx = vec![0usize; dim];
    loop {
        let coords: Vec<f64> = (0..dim)
            .map(|a| {
                let (lo, hi) = bbox[a];
                lo + (hi - lo) * (idx[a] as f64 + 0.5) / per_axis as f64
            })
            .collect();
        f(&coords);
        let mut axis = 0;
        loop {
            idx[axis] += 1;
            if idx[axis] < per_axis {
                break;
            }
            idx[axis] = 0;
            axis += 1;
            if axis == dim {
                return;
            }
        }
    }
}

fn newton_starts(bbox: &[(f64, f64)], dim: usize) -> Vec<Vec<f64>> {
    let per_axis = match dim {
        1 => 9,
        2 => 5,
        _ => 4,
    };
    let mut starts = Vec::new();
    for_each_grid_point(bbox, per_axis, &mut |c| starts.push(c.to_vec()));
    // nearest the canonical origin first, so flat directions settle there
    starts.sort_by(|a, b| {
        let na: f64 = a.iter().map(|v| v * v).sum();
        let nb: f64 = b.iter().map(|v| v * v).sum();
        na.partial_cmp(&nb).unwrap()
    });
    starts
}

/// Damped Gauss-Newton for the (possibly over- or under-determined)
/// uniformity system in up to 3 unknowns; steps are least-norm via the
/// rank-tolerant normal equations.
fn gauss_newton(
    residual: &dyn Fn(&[f64]) -> Vec<f64>,
    start: &[f64],
    bbox: &[(f64, f64)],
) -> Option<Vec<f64>> {
    let dim = start.len();
    let mut x = start.to_vec();
    let h = 1e-7;
    for _ in 0..80 {
        let f = residual(&x);
        let norm: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-13 {
            return Some(x);
        }
        let c = f.len();
        let mut jac = vec![vec![0.0; dim]; c];
        for a in 0..dim {
            let mut xp = x.clone();
            xp[a] += h;
            let fp = residual(&xp);
            for (k, row) in jac.iter_mut().enumerate() {
                row[a] = (fp[k] - f[k]) / h;
            }
        }
        // Δ = −(JᵀJ)⁺ Jᵀf, padded to the 3×3 PSD solver
        let mut jtj = Mat3::identity();
        let mut jtf = Vec3::zero();
        for a in 0..dim {
            for b in 0..dim {
                jtj.m[a][b] = (0..c).map(|k| jac[k][a] * jac[k][b]).sum();
            }
            *jtf.coord_mut(a) = (0..c).map(|k| jac[k][a] * f[k]).sum();
        }
        let delta = jtj.solve_psd(&jtf, 1e-12);
        let step: Vec<f64> = (0..dim).map(|a| -delta.coord(a)).collect();
        if step.iter().all(|s| s.abs() < 1e-15) {
            return None;
        }
        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let xt: Vec<f64> = (0..dim).map(|a| x[a] + lambda * step[a]).collect();
            let ft = residual(&xt);
            let nt: f64 = ft.iter().map(|v| v * v).sum::<f64>().sqrt();
            if nt < norm {
                x = xt;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !improved {
            return None;
        }
        for a in 0..dim {
            let (lo, hi) = bbox[a];
            // generous bound: uniform vertices may sit outside the default
            // parameter box (though never arbitrarily far at model scale)
            let pad = 2.0 * (hi - lo).max(0.75);
            if x[a] < lo - pad || x[a] > hi + pad {
                return None;
            }
        }
    }
    let f = residual(&x);
    let norm: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    (norm < 1e-12).then_some(x)
}
