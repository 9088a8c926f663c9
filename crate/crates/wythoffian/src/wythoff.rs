//! Wythoff's construction: admissible initial-vertex sets M_I, fundamental
//! regions, base faces, full orbit assembly, and validation against the
//! polyhedron axioms.

use std::collections::BTreeMap;
use std::fmt;

use crate::catalog::{PolyhedronSpec, VertexDomain};
use crate::geom::isometry::compose;
use crate::geom::subspace::{fixed_space, intersect};
use crate::group::{
    self, enumerate_with_margin, point_key, subgroup_closure, GeneratorSet, GroupElements,
    GroupError, PointIndex, Window, DEFAULT_MAX_WORD,
};
use crate::tol;
use crate::{AffineSubspace, Vec3};

#[derive(Clone, Debug, thiserror::Error)]
pub enum WythoffError {
    #[error("no admissible initial vertex for this index set")]
    NoAdmissibleVertex,
    #[error("invalid placement: {0}")]
    PlacementViolation(String),
    #[error("seed is fixed by a non-identity group element")]
    SeedOnMirror,
    #[error("polyhedron axioms fail on interior elements: {0:?}")]
    ValidationFailed(Vec<String>),
    #[error("bad index set {0:?}: need a nonempty subset of 012")]
    BadIndexSet(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Nonempty subset of {0, 1, 2} selecting the transient generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(u8);

/// The seven index sets in canonical order.
pub const ALL_INDEX_SETS: [IndexSet; 7] = [
    IndexSet(0b001),
    IndexSet(0b010),
    IndexSet(0b100),
    IndexSet(0b011),
    IndexSet(0b101),
    IndexSet(0b110),
    IndexSet(0b111),
];

impl IndexSet {
    pub fn new(members: &[usize]) -> Option<Self> {
        let mut bits = 0u8;
        for &m in members {
            if m > 2 {
                return None;
            }
            bits |= 1 << m;
        }
        (bits != 0).then_some(Self(bits))
    }

    /// Parse digit strings like "0", "02", "012".
    pub fn parse(s: &str) -> Result<Self, WythoffError> {
        let mut members = Vec::new();
        for ch in s.chars() {
            match ch.to_digit(10) {
                Some(d @ 0..=2) => members.push(d as usize),
                _ => return Err(WythoffError::BadIndexSet(s.to_string())),
            }
        }
        Self::new(&members).ok_or_else(|| WythoffError::BadIndexSet(s.to_string()))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement_members(&self) -> Vec<usize> {
        (0..3).filter(|&i| !self.contains(i)).collect()
    }

    /// Number of members (always 1–3).
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// The dual index set {2 − i : i ∈ I}.
    pub fn swapped(&self) -> Self {
        Self::new(&self.members().iter().map(|&i| 2 - i).collect::<Vec<_>>()).unwrap()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.members() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I{{{self}}}")
    }
}

/// The set I² of face-type pairs, Eq.-style:
/// a singleton {i} pairs with its neighbors; {0,1} and {1,2} keep the two
/// adjacent pairs; {0,2} and {0,1,2} use all three.
pub fn index_pairs(iset: IndexSet) -> Vec<(usize, usize)> {
    let m = iset.members();
    match m.as_slice() {
        [0] => vec![(0, 1)],
        [1] => vec![(0, 1), (1, 2)],
        [2] => vec![(1, 2)],
        [0, 1] | [1, 2] => vec![(0, 1), (1, 2)],
        _ => vec![(0, 1), (1, 2), (0, 2)],
    }
}

/// Permissible initial-vertex locus for one index set.
///
/// `hull` is ⋂_{i∉I} mirror(rᵢ) (`None` when those mirrors do not meet);
/// `excluded` holds the mirrors of rᵢ, i ∈ I, intersected with the hull.
/// Emptiness is data, not an error.
#[derive(Clone, Debug)]
pub struct AdmissibleSet {
    pub hull: Option<AffineSubspace>,
    pub excluded: Vec<AffineSubspace>,
    empty: bool,
}

impl AdmissibleSet {
    pub fn is_empty(&self) -> bool {
        self.empty
    }
}

fn mirror_subspace(g: &crate::Isometry) -> AffineSubspace {
    let m = g.mirror().expect("generators are involutions");
    AffineSubspace {
        basepoint: m.basepoint,
        directions: m.directions,
    }
}

/// Compute the admissible set M̂_I for `spec`.
pub fn admissible_set(spec: &PolyhedronSpec, iset: IndexSet) -> AdmissibleSet {
    let gens = spec.gens();
    let fixed: Vec<&crate::Isometry> = iset
        .complement_members()
        .into_iter()
        .map(|i| gens.gen(i))
        .collect();
    let Some(hull) = fixed_space(&fixed) else {
        return AdmissibleSet {
            hull: None,
            excluded: Vec::new(),
            empty: true,
        };
    };
    let mut empty = false;
    let mut excluded = Vec::new();
    for i in iset.members() {
        if hull.fixed_by(gens.gen(i), 10.0 * tol::EPS_POINT) {
            empty = true;
        }
        if let Some(cut) = intersect(&hull, &mirror_subspace(gens.gen(i))) {
            excluded.push(cut);
        }
    }
    // segment blends: vertices fixed by the pure component reflection t₀
    // reduce to the planar polyhedron and are not permitted
    if let Some(t0) = &spec.degeneracy_mirror {
        if hull.fixed_by(t0, 10.0 * tol::EPS_POINT) {
            empty = true;
        } else if let Some(cut) = intersect(&hull, &mirror_subspace(t0)) {
            excluded.push(cut);
        }
    }
    AdmissibleSet {
        hull: Some(hull),
        excluded,
        empty,
    }
}

/// Affine domain actually used for placements: the hull, cut down to the
/// base-face plane where the entry restricts vertices to it.
pub fn effective_domain(spec: &PolyhedronSpec, iset: IndexSet) -> Option<AffineSubspace> {
    let adm = admissible_set(spec, iset);
    if adm.is_empty() {
        return None;
    }
    let hull = adm.hull?;
    let plane_applies = match &spec.vertex_domain {
        VertexDomain::Unrestricted => false,
        VertexDomain::BaseFaceHull => true,
        VertexDomain::BaseFacePlane(isets) => isets.contains(&iset),
    };
    if !plane_applies {
        return Some(hull);
    }
    let plane = spec.base_face_plane?;
    let plane_sub = AffineSubspace {
        basepoint: plane.project(&Vec3::zero()),
        directions: {
            let d1 = plane.normal.any_orthogonal();
            let d2 = plane.normal.cross(&d1);
            vec![d1, d2]
        },
    };
    intersect(&hull, &plane_sub)
}

/// Canonical parametrization origin: the projection of the base vertex onto
/// the effective domain.
pub fn param_origin(spec: &PolyhedronSpec, domain: &AffineSubspace) -> Vec3 {
    domain.project(&spec.base_vertex)
}

/// Open Dirichlet-Voronoi region of the seed's orbit, as pruned halfspaces.
#[derive(Clone, Debug)]
pub struct FundamentalRegion {
    /// Halfspaces `normal·x < offset` with unit normals.
    pub halfspaces: Vec<(Vec3, f64)>,
    pub seed: Vec3,
}

impl FundamentalRegion {
    pub fn contains(&self, p: &Vec3, tolerance: f64) -> bool {
        self.halfspaces
            .iter()
            .all(|(n, c)| n.dot(p) <= c + tolerance)
    }
}

/// Dirichlet-Voronoi fundamental region centered at `seed`.
///
/// Exact for finite groups; correct within the window otherwise.
pub fn fundamental_region(
    spec: &PolyhedronSpec,
    seed: Vec3,
    window: Window,
) -> Result<FundamentalRegion, WythoffError> {
    fundamental_region_of(spec.gens(), seed, window)
}

/// As [`fundamental_region`] for a bare generator set.
pub fn fundamental_region_of(
    gens: &GeneratorSet,
    seed: Vec3,
    window: Window,
) -> Result<FundamentalRegion, WythoffError> {
    let elems = group::enumerate_elements(gens, window, DEFAULT_MAX_WORD)?;
    for e in elems.iter() {
        if e.word.is_empty() {
            continue;
        }
        if e.iso.apply(&seed).approx_eq(&seed, tol::EPS_POINT) {
            return Err(WythoffError::SeedOnMirror);
        }
    }
    let images = group::orbit_under(&seed, &elems, None);
    let mut halfspaces: Vec<(Vec3, f64)> = Vec::new();
    for img in images {
        if img.approx_eq(&seed, tol::EPS_POINT) {
            continue;
        }
        let n = (img - seed).normalized();
        let c = n.dot(&(seed + img).scale(0.5));
        halfspaces.push((n, c));
    }
    let kept = prune_halfspaces(&halfspaces, &seed, window.radius + 2.0);
    Ok(FundamentalRegion {
        halfspaces: kept,
        seed,
    })
}

/// Keep the halfspaces that carry a facet of the region clipped to the box
/// `seed ± bound`.
///
/// A constraint is a facet iff the region restricted to its plane has 2D
/// interior. That is decided in plane coordinates: some candidate vertex
/// (a pairwise line intersection) must admit a tangent-cone direction
/// strictly inside every constraint tight there. Dirichlet bisectors of a
/// point group all pass through common apices, so vertex activity alone
/// would over-keep; the direction test resolves those degeneracies.
fn prune_halfspaces(halfspaces: &[(Vec3, f64)], seed: &Vec3, bound: f64) -> Vec<(Vec3, f64)> {
    let boxr = 3.0f64.sqrt() * bound;
    let mut all: Vec<(Vec3, f64)> = halfspaces
        .iter()
        .filter(|(n, c)| c - n.dot(seed) <= boxr)
        .copied()
        .collect();
    let box_start = all.len();
    for i in 0..3 {
        let mut n = Vec3::zero();
        *n.coord_mut(i) = 1.0;
        all.push((n, seed.coord(i) + bound));
        all.push((-n, -(seed.coord(i) - bound)));
    }
    (0..box_start)
        .filter(|&j| halfspace_has_facet(j, &all, seed))
        .map(|j| all[j])
        .collect()
}

/// True when constraint `j` carries a 2-dimensional facet of ⋂ₖ halfspaces.
fn halfspace_has_facet(j: usize, all: &[(Vec3, f64)], seed: &Vec3) -> bool {
    let (nj, cj) = all[j];
    let u = nj.any_orthogonal();
    let w = nj.cross(&u);
    let p0 = *seed + nj.scale(cj - nj.dot(seed)); // projection of seed onto the plane
    // restrict the other constraints to plane coordinates (α, β)
    let mut lines: Vec<(f64, f64, f64)> = Vec::new(); // aα + bβ ≤ c
    for (k, (n, c)) in all.iter().enumerate() {
        if k == j {
            continue;
        }
        let a = n.dot(&u);
        let b = n.dot(&w);
        let rhs = c - n.dot(&p0);
        if (a * a + b * b).sqrt() <= 1e-12 {
            if rhs < -1e-9 {
                return false; // the plane lies entirely outside the region
            }
            continue;
        }
        lines.push((a, b, rhs));
    }
    let strict = 1e-9;
    let feasible = |y: (f64, f64)| lines.iter().all(|(a, b, c)| a * y.0 + b * y.1 <= c + 1e-9);
    let strictly = |y: (f64, f64)| lines.iter().all(|(a, b, c)| a * y.0 + b * y.1 < c - strict);
    if strictly((0.0, 0.0)) {
        return true;
    }
    // candidate vertices: pairwise line intersections
    for p in 0..lines.len() {
        for q in (p + 1)..lines.len() {
            let (a1, b1, c1) = lines[p];
            let (a2, b2, c2) = lines[q];
            let det = a1 * b2 - a2 * b1;
            if det.abs() <= 1e-10 {
                continue;
            }
            let y = ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det);
            if !feasible(y) {
                continue;
            }
            // tangent-cone direction strictly inside every tight constraint
            let tight: Vec<(f64, f64)> = lines
                .iter()
                .filter(|(a, b, c)| (a * y.0 + b * y.1 - c).abs() <= 1e-7)
                .map(|(a, b, _)| {
                    let n = (a * a + b * b).sqrt();
                    (a / n, b / n)
                })
                .collect();
            let Some(dir) = open_cone_direction(&tight) else {
                continue;
            };
            let step = 1e-4;
            let probe = (y.0 + step * dir.0, y.1 + step * dir.1);
            if lines
                .iter()
                .all(|(a, b, c)| a * probe.0 + b * probe.1 < c - strict * step)
            {
                return true;
            }
        }
    }
    false
}

/// A unit direction `d` with `n·d < 0` for every listed unit normal, if one
/// exists: the normals must leave an angular gap wider than π.
fn open_cone_direction(normals: &[(f64, f64)]) -> Option<(f64, f64)> {
    if normals.is_empty() {
        return Some((1.0, 0.0));
    }
    let mut angles: Vec<f64> = normals.iter().map(|(a, b)| b.atan2(*a)).collect();
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let m = angles.len();
    let mut best_gap = 0.0;
    let mut best_mid = 0.0;
    for i in 0..m {
        let a = angles[i];
        let b = if i + 1 < m {
            angles[i + 1]
        } else {
            angles[0] + 2.0 * std::f64::consts::PI
        };
        if b - a > best_gap {
            best_gap = b - a;
            best_mid = 0.5 * (a + b) - std::f64::consts::PI;
        }
    }
    (best_gap > std::f64::consts::PI + 1e-9).then(|| (best_mid.cos(), best_mid.sin()))
}

/// Alternating-walk trace of the base 2-face for the pair (i, j).
///
/// Emits the polygon's vertex path through `start`, skipping consecutive
/// duplicates (which arise when `start` lies on one of the two mirrors);
/// `closed` reports whether the cycle returned to its beginning. Open paths
/// extend in both directions while `keep` holds.
pub fn walk_polygon(
    gens: &GeneratorSet,
    i: usize,
    j: usize,
    start: &Vec3,
    keep: &dyn Fn(&Vec3) -> bool,
    max_steps: usize,
) -> (Vec<Vec3>, bool) {
    walk_polygon_mapped(gens, i, j, start, &crate::Isometry::identity(), keep, max_steps)
}

/// As [`walk_polygon`], with every emitted point mapped through `outer`.
pub fn walk_polygon_mapped(
    gens: &GeneratorSet,
    i: usize,
    j: usize,
    start: &Vec3,
    outer: &crate::Isometry,
    keep: &dyn Fn(&Vec3) -> bool,
    max_steps: usize,
) -> (Vec<Vec3>, bool) {
    let mut forward: Vec<Vec3> = Vec::new();
    let p0 = outer.apply(start);
    let mut word = crate::Isometry::identity();
    let mut closed = false;
    let letters = [i, j];
    let mut prev = p0;
    for step in 0..max_steps {
        word = compose(&word, gens.gen(letters[step % 2]));
        if word.is_identity(100.0 * tol::EPS_POINT) {
            closed = true;
            break;
        }
        let p = outer.apply(&word.apply(start));
        if p.approx_eq(&prev, tol::EPS_POINT) {
            continue;
        }
        if !keep(&p) {
            break;
        }
        forward.push(p);
        prev = p;
    }
    if closed {
        let mut cycle = vec![p0];
        cycle.extend(forward);
        if cycle.len() > 1 && cycle.last().unwrap().approx_eq(&p0, tol::EPS_POINT) {
            cycle.pop();
        }
        return (cycle, true);
    }
    // open: walk the other direction, starting with r_j
    let mut backward: Vec<Vec3> = Vec::new();
    let mut word = crate::Isometry::identity();
    let mut prev = p0;
    for step in 0..max_steps {
        word = compose(&word, gens.gen(letters[(step + 1) % 2]));
        let p = outer.apply(&word.apply(start));
        if p.approx_eq(&prev, tol::EPS_POINT) {
            continue;
        }
        if !keep(&p) {
            break;
        }
        backward.push(p);
        prev = p;
    }
    backward.reverse();
    backward.push(p0);
    backward.extend(forward);
    (backward, false)
}

/// One base 2-face: its generating pair and traced path.
#[derive(Clone, Debug)]
pub struct BaseFace {
    pub pair: (usize, usize),
    pub points: Vec<Vec3>,
    pub closed: bool,
}

/// Base faces of P^I(v): the vertex, one segment per i ∈ I, one polygon per
/// pair in I².
#[derive(Clone, Debug)]
pub struct BaseFaces {
    pub vertex: Vec3,
    pub segments: Vec<(usize, [Vec3; 2])>,
    pub polygons: Vec<BaseFace>,
}

pub fn base_faces(
    spec: &PolyhedronSpec,
    iset: IndexSet,
    v: &Vec3,
    window: Window,
) -> BaseFaces {
    let gens = spec.gens();
    let segments = iset
        .members()
        .into_iter()
        .map(|i| (i, [*v, gens.gen(i).apply(v)]))
        .collect();
    let margin = 2.0 * max_base_edge(spec, iset, v);
    let keep = |p: &Vec3| p.dist(&window.center) <= window.radius + margin;
    let polygons = index_pairs(iset)
        .into_iter()
        .map(|(i, j)| {
            let (points, closed) = walk_polygon(gens, i, j, v, &keep, 4 * DEFAULT_MAX_WORD);
            BaseFace {
                pair: (i, j),
                points,
                closed,
            }
        })
        .collect();
    BaseFaces {
        vertex: *v,
        segments,
        polygons,
    }
}

fn max_base_edge(spec: &PolyhedronSpec, iset: IndexSet, v: &Vec3) -> f64 {
    iset.members()
        .into_iter()
        .map(|i| spec.gens().gen(i).apply(v).dist(v))
        .fold(0.0, f64::max)
}

/// Check every placement rule at `p`; `elems` must be enumerated around `p`
/// widely enough to see the stabilizer and the nearby seed images.
pub fn check_placement(
    spec: &PolyhedronSpec,
    iset: IndexSet,
    p: &Vec3,
    elems: &GroupElements,
) -> Result<(), WythoffError> {
    let gens = spec.gens();
    // Pointwise condition: transient exactly under the generators in I.
    for i in 0..3 {
        let moved = !gens.gen(i).apply(p).approx_eq(p, tol::EPS_POINT);
        if iset.contains(i) && !moved {
            return Err(WythoffError::PlacementViolation(format!(
                "vertex is fixed by r{i} but {i} is in the index set"
            )));
        }
        if !iset.contains(i) && moved {
            return Err(WythoffError::PlacementViolation(format!(
                "vertex moves under r{i} but {i} is not in the index set"
            )));
        }
    }
    // Blend degeneracy and projection caveats.
    if let Some(t0) = &spec.degeneracy_mirror {
        if t0.apply(p).approx_eq(p, tol::EPS_POINT) {
            return Err(WythoffError::PlacementViolation(
                "vertex is fixed by the blend component reflection t0".into(),
            ));
        }
    }
    for (caveat_iset, plane) in &spec.placement_caveats {
        if *caveat_iset == iset && plane.contains(p, tol::EPS_POINT) {
            return Err(WythoffError::PlacementViolation(
                "vertex lies on a planar kaleidoscope mirror; the projection degenerates".into(),
            ));
        }
    }
    // Vertex-domain restriction.
    match &spec.vertex_domain {
        VertexDomain::Unrestricted => {}
        VertexDomain::BaseFaceHull => {
            if !in_base_face_hull(spec, p) {
                return Err(WythoffError::PlacementViolation(
                    "vertex outside the base-face hull".into(),
                ));
            }
        }
        VertexDomain::BaseFacePlane(isets) => {
            if isets.contains(&iset) {
                let plane = spec.base_face_plane.expect("entry has a planar base face");
                if !plane.contains(p, 10.0 * tol::EPS_POINT) {
                    return Err(WythoffError::PlacementViolation(
                        "vertex outside the base-face plane".into(),
                    ));
                }
            }
        }
    }
    // The fundamental region is not enforced here: it anchors the default
    // parameters, but valid initial vertices only need the placement
    // condition (some uniform blend vertices lie outside the region).
    // Group-level initial placement condition on the enumerated portion.
    let expected = subgroup_closure(gens, &iset.complement_members(), 10_000)?;
    let stab = elems.stabilizer_of(p);
    if stab.len() != expected.len() || !stab.iter().all(|e| expected.contains(&e.iso)) {
        return Err(WythoffError::PlacementViolation(format!(
            "stabilizer has {} enumerated elements, expected the subgroup of order {}",
            stab.len(),
            expected.len()
        )));
    }
    Ok(())
}

fn in_base_face_hull(spec: &PolyhedronSpec, p: &Vec3) -> bool {
    let (Some(face), Some(plane)) = (&spec.base_face, &spec.base_face_plane) else {
        return true;
    };
    if !plane.contains(p, 10.0 * tol::EPS_POINT) {
        return false;
    }
    // inside the convex polygon: consistent orientation against every edge
    let n = face.len();
    let mut sign = 0.0f64;
    for k in 0..n {
        let a = face[k];
        let b = face[(k + 1) % n];
        let s = (b - a).cross(&(*p - a)).dot(&plane.normal);
        if s.abs() <= 1e-9 {
            continue; // on the edge line
        }
        if sign == 0.0 {
            sign = s.signum();
        } else if s.signum() != sign {
            return false;
        }
    }
    true
}

fn placement_elements(
    spec: &PolyhedronSpec,
    p: &Vec3,
) -> Result<GroupElements, WythoffError> {
    let reach = 2.0 * p.dist(&spec.fund_seed) + 1.0;
    let window = Window::new(*p, reach.max(2.0));
    Ok(enumerate_with_margin(spec.gens(), window, DEFAULT_MAX_WORD, 0.5)?)
}

/// Run every placement rule at an explicit point.
pub fn check_placement_at(
    spec: &PolyhedronSpec,
    iset: IndexSet,
    p: &Vec3,
) -> Result<(), WythoffError> {
    let elems = placement_elements(spec, p)?;
    check_placement(spec, iset, p, &elems)
}

/// Place an initial vertex from orthonormal coordinates in the effective
/// domain, relative to the projection of the base vertex.
///
/// Missing trailing coordinates default to zero; all placement rules are
/// enforced.
pub fn place_vertex(
    spec: &PolyhedronSpec,
    iset: IndexSet,
    params: &[f64],
) -> Result<Vec3, WythoffError> {
    let domain = effective_domain(spec, iset).ok_or(WythoffError::NoAdmissibleVertex)?;
    if params.len() > domain.dim() {
        return Err(WythoffError::PlacementViolation(format!(
            "{} parameters given but the admissible hull has dimension {}",
            params.len(),
            domain.dim()
        )));
    }
    let origin = param_origin(spec, &domain);
    let mut coords = params.to_vec();
    coords.resize(domain.dim(), 0.0);
    let p = domain.point_at(&origin, &coords);
    let elems = placement_elements(spec, &p)?;
    check_placement(spec, iset, &p, &elems)?;
    Ok(p)
}

/// Default parameters: the centroid of the admissible region's parameter
/// box, nudged deterministically if that point violates a placement rule.
pub fn default_params(spec: &PolyhedronSpec, iset: IndexSet) -> Result<Vec<f64>, WythoffError> {
    let domain = effective_domain(spec, iset).ok_or(WythoffError::NoAdmissibleVertex)?;
    let bbox = parameter_box(spec, iset, &domain);
    let centroid: Vec<f64> = bbox.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
    if place_vertex(spec, iset, &centroid).is_ok() {
        return Ok(centroid);
    }
    // per-axis distinct factors so symmetric mirrors like y = z are escaped
    for k in 1..=8 {
        let t = 0.311 * k as f64 / 8.0;
        let nudged: Vec<f64> = bbox
            .iter()
            .zip(&centroid)
            .enumerate()
            .map(|(axis, ((lo, hi), c))| {
                c + t * (0.5 - 0.13 * axis as f64) * (hi - lo).max(0.2)
            })
            .collect();
        if place_vertex(spec, iset, &nudged).is_ok() {
            return Ok(nudged);
        }
    }
    // deterministic grid scan over the (slightly inflated) box, nearest the
    // centroid first; covers corner-anchored domains where the nudge ladder
    // walks out of the region
    let inflated: Vec<(f64, f64)> = bbox
        .iter()
        .map(|(lo, hi)| {
            let pad = 0.15 * ((hi - lo) + 0.2);
            (lo - pad, hi + pad)
        })
        .collect();
    let per_axis = 9usize;
    let mut grid: Vec<Vec<f64>> = Vec::new();
    let mut idx = vec![0usize; domain.dim()];
    'outer: loop {
        let coords: Vec<f64> = (0..domain.dim())
            .map(|a| {
                let (lo, hi) = inflated[a];
                lo + (hi - lo) * (idx[a] as f64 + 0.5 + 0.013 * a as f64) / per_axis as f64
            })
            .collect();
        grid.push(coords);
        let mut axis = 0;
        loop {
            idx[axis] += 1;
            if idx[axis] < per_axis {
                break;
            }
            idx[axis] = 0;
            axis += 1;
            if axis == domain.dim() {
                break 'outer;
            }
        }
    }
    grid.sort_by(|a, b| {
        let da: f64 = a.iter().zip(&centroid).map(|(x, c)| (x - c) * (x - c)).sum();
        let db: f64 = b.iter().zip(&centroid).map(|(x, c)| (x - c) * (x - c)).sum();
        da.partial_cmp(&db).unwrap()
    });
    for coords in grid {
        if place_vertex(spec, iset, &coords).is_ok() {
            return Ok(coords);
        }
    }
    Err(WythoffError::PlacementViolation(
        "no default placement found".into(),
    ))
}

/// Per-axis extent of the admissible region in parameter coordinates,
/// estimated by marching from the origin and capped at ±2 model units.
pub fn parameter_box(
    spec: &PolyhedronSpec,
    _iset: IndexSet,
    domain: &AffineSubspace,
) -> Vec<(f64, f64)> {
    let origin = param_origin(spec, domain);
    let elems = match placement_elements(spec, &origin) {
        Ok(e) => e,
        Err(_) => return vec![(-1.0, 1.0); domain.dim()],
    };
    let seed = spec.fund_seed;
    let inside = |p: &Vec3| -> bool {
        let d = p.dist(&seed);
        elems.iter().all(|e| {
            e.word.is_empty() || p.dist(&e.iso.apply(&seed)) >= d - 100.0 * tol::EPS_POINT
        }) && match &spec.vertex_domain {
            VertexDomain::BaseFaceHull => in_base_face_hull(spec, p),
            _ => true,
        }
    };
    let mut bbox = Vec::new();
    for axis in 0..domain.dim() {
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        let step = 0.05;
        for k in 1..=40 {
            let mut coords = vec![0.0; domain.dim()];
            coords[axis] = k as f64 * step;
            if !inside(&domain.point_at(&origin, &coords)) {
                break;
            }
            hi = coords[axis];
        }
        for k in 1..=40 {
            let mut coords = vec![0.0; domain.dim()];
            coords[axis] = -(k as f64) * step;
            if !inside(&domain.point_at(&origin, &coords)) {
                break;
            }
            lo = coords[axis];
        }
        bbox.push((lo, hi));
    }
    bbox
}

/// Typed edge of a Wythoffian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeRec {
    pub a: usize,
    pub b: usize,
    pub etype: usize,
}

/// A traced 2-face: generating pair, vertex-id cycle (or open path), and
/// whether the cycle closed.
#[derive(Clone, Debug)]
pub struct FaceRecord {
    pub ftype: (usize, usize),
    pub cycle: Vec<usize>,
    pub closed: bool,
}

/// The constructed orbit structure.
#[derive(Clone, Debug)]
pub struct Wythoffian {
    pub source: PolyhedronSpec,
    pub iset: IndexSet,
    pub initial_vertex: Vec3,
    pub vertices: Vec<Vec3>,
    pub edges: Vec<EdgeRec>,
    pub faces: Vec<FaceRecord>,
    pub window: Window,
    pub max_base_edge: f64,
}

impl Wythoffian {
    /// Interior = further than one longest base edge from the window
    /// boundary; only interior elements are subject to axiom checks.
    pub fn is_interior_vertex(&self, vid: usize) -> bool {
        self.vertices[vid].dist(&self.window.center) < self.window.radius - self.max_base_edge
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.is_interior_vertex(v))
            .collect()
    }

    pub fn is_interior_edge(&self, e: &EdgeRec) -> bool {
        self.is_interior_vertex(e.a) && self.is_interior_vertex(e.b)
    }

    /// Faces incident to the vertex, as (face index, position of vertex).
    pub fn faces_at(&self, vid: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for (k, &c) in f.cycle.iter().enumerate() {
                if c == vid {
                    out.push((fi, k));
                }
            }
        }
        out
    }
}

fn canonical_cycle(ids: &[usize], closed: bool) -> Vec<usize> {
    if !closed {
        let rev: Vec<usize> = ids.iter().rev().copied().collect();
        return if rev.as_slice() < ids {
            rev
        } else {
            ids.to_vec()
        };
    }
    let n = ids.len();
    let mut best: Option<Vec<usize>> = None;
    for rev in [false, true] {
        let seq: Vec<usize> = if rev {
            ids.iter().rev().copied().collect()
        } else {
            ids.to_vec()
        };
        for shift in 0..n {
            let rot: Vec<usize> = (0..n).map(|k| seq[(k + shift) % n]).collect();
            if best.as_ref().map_or(true, |b| &rot < b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Build the Wythoffian from explicit parameters.
pub fn build(
    spec: &PolyhedronSpec,
    iset: IndexSet,
    params: &[f64],
    window: Window,
) -> Result<Wythoffian, WythoffError> {
    let v = place_vertex(spec, iset, params)?;
    build_from_vertex(spec, iset, &v, window)
}

/// Build the Wythoffian from an explicitly placed initial vertex.
pub fn build_from_vertex(
    spec: &PolyhedronSpec,
    iset: IndexSet,
    v: &Vec3,
    window: Window,
) -> Result<Wythoffian, WythoffError> {
    let w = assemble(spec, iset, v, window)?;
    let report = validate(&w);
    if !report.ok() {
        return Err(WythoffError::ValidationFailed(report.violations));
    }
    Ok(w)
}

/// Orbit assembly without the final axiom validation.
pub fn assemble(
    spec: &PolyhedronSpec,
    iset: IndexSet,
    v: &Vec3,
    window: Window,
) -> Result<Wythoffian, WythoffError> {
    let gens = spec.gens();
    let max_edge = max_base_edge(spec, iset, v);
    // widen the margin by the largest finite base-face diameter so that every
    // finite face incident to an in-window vertex is traced completely
    let mut max_diam = 0.0f64;
    for (i, j) in index_pairs(iset) {
        let prod = compose(gens.gen(i), gens.gen(j));
        if crate::geom::order_of(&prod, group::INFINITE_ORDER_BOUND).is_some() {
            let (pts, closed) = walk_polygon(gens, i, j, v, &|_| true, 4 * DEFAULT_MAX_WORD);
            if closed {
                for (a, pa) in pts.iter().enumerate() {
                    for pb in pts.iter().skip(a + 1) {
                        max_diam = max_diam.max(pa.dist(pb));
                    }
                }
            }
        }
    }
    let margin_extra = (2.0 * max_edge).max(max_diam);
    let margin = v.dist(&window.center) + margin_extra + 0.5;
    let elems = enumerate_with_margin(gens, window, DEFAULT_MAX_WORD, margin)?;

    let keep_radius = window.radius + margin_extra + 0.25;
    let keep = |p: &Vec3| p.dist(&window.center) <= keep_radius;

    // vertices, deduplicated with tolerance-robust identification
    let mut index = PointIndex::new();
    for e in elems.iter() {
        let q = e.iso.apply(v);
        if keep(&q) {
            index.find_or_insert(&q);
        }
    }
    // canonical vertex order
    let mut order: Vec<usize> = (0..index.len()).collect();
    order.sort_by_key(|&i| point_key(&index.points()[i]));
    let mut remap = vec![0usize; index.len()];
    for (new_id, &old_id) in order.iter().enumerate() {
        remap[old_id] = new_id;
    }
    let vertices: Vec<Vec3> = order.iter().map(|&i| index.points()[i]).collect();

    let lookup = |p: &Vec3| -> Option<usize> { index.find(p).map(|id| remap[id]) };

    // edges
    let mut edge_set: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in elems.iter() {
        for i in iset.members() {
            let a = e.iso.apply(v);
            let b = e.iso.apply(&gens.gen(i).apply(v));
            if let (Some(ia), Some(ib)) = (lookup(&a), lookup(&b)) {
                if ia == ib {
                    return Err(WythoffError::ValidationFailed(vec![format!(
                        "degenerate base edge of type {i}"
                    )]));
                }
                let key = (ia.min(ib), ia.max(ib));
                edge_set.entry(key).or_insert(i);
            }
        }
    }
    let edges: Vec<EdgeRec> = edge_set
        .iter()
        .map(|(&(a, b), &etype)| EdgeRec { a, b, etype })
        .collect();

    // faces: orbit of each base polygon, retraced per element and clipped
    let mut face_map: BTreeMap<(usize, usize, Vec<usize>), FaceRecord> = BTreeMap::new();
    for (i, j) in index_pairs(iset) {
        for e in elems.iter() {
            let keep_fn = |p: &Vec3| keep(p) && lookup(p).is_some();
            let (points, closed) =
                walk_polygon_mapped(gens, i, j, v, &e.iso, &keep_fn, 4 * DEFAULT_MAX_WORD);
            if points.len() < if closed { 3 } else { 2 } {
                continue;
            }
            if !points
                .iter()
                .any(|p| p.dist(&window.center) <= window.radius)
            {
                continue;
            }
            let ids: Vec<usize> = match points.iter().map(&lookup).collect::<Option<Vec<_>>>() {
                Some(ids) => ids,
                None => continue,
            };
            let canon = canonical_cycle(&ids, closed);
            face_map
                .entry((i, j, canon.clone()))
                .or_insert(FaceRecord {
                    ftype: (i, j),
                    cycle: canon,
                    closed,
                });
        }
    }
    let faces: Vec<FaceRecord> = face_map.into_values().collect();

    Ok(Wythoffian {
        source: spec.clone(),
        iset,
        initial_vertex: *v,
        vertices,
        edges,
        faces,
        window,
        max_base_edge: max_edge,
    })
}

/// Polyhedron-axiom report for a built Wythoffian.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub interior_vertex_count: usize,
    pub interior_edge_count: usize,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the polyhedron axioms on the window interior: edge-graph
/// connectivity, circular vertex figures, two faces per edge, and a
/// discreteness proxy (minimum inter-vertex distance).
pub fn validate(w: &Wythoffian) -> ValidationReport {
    let mut report = ValidationReport::default();
    let interior: Vec<usize> = w.interior_vertices();
    report.interior_vertex_count = interior.len();

    // adjacency
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); w.vertices.len()];
    for e in &w.edges {
        if e.a == e.b {
            report.violations.push("edge with equal endpoints".into());
            continue;
        }
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }

    // (a) connectivity of the interior portion through the windowed graph
    if let Some(&start) = interior.first() {
        let mut seen = vec![false; w.vertices.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &n in &adj[u] {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        if interior.iter().any(|&u| !seen[u]) {
            report
                .violations
                .push("interior edge graph is disconnected".into());
        }
    }

    // (c) each interior edge lies in exactly two faces
    let mut edge_faces: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in &w.faces {
        let n = f.cycle.len();
        let last = if f.closed { n } else { n - 1 };
        for k in 0..last {
            let a = f.cycle[k];
            let b = f.cycle[(k + 1) % n];
            *edge_faces.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    for e in &w.edges {
        if !w.is_interior_edge(e) {
            continue;
        }
        report.interior_edge_count += 1;
        let count = edge_faces.get(&(e.a.min(e.b), e.a.max(e.b))).copied().unwrap_or(0);
        if count != 2 {
            report.violations.push(format!(
                "interior edge ({},{}) lies in {} faces",
                e.a, e.b, count
            ));
        }
    }

    // (b) vertex figures are single cycles at interior vertices
    for &u in &interior {
        if !vertex_figure_is_cycle(w, u) {
            report
                .violations
                .push(format!("vertex figure at {u} is not a single cycle"));
        }
    }

    // (d) discreteness proxy
    let mut min_d = f64::INFINITY;
    for (k, p) in w.vertices.iter().enumerate() {
        for q in w.vertices.iter().skip(k + 1) {
            min_d = min_d.min(p.dist(q));
        }
    }
    if w.vertices.len() > 1 && min_d <= 100.0 * tol::EPS_POINT {
        report
            .violations
            .push(format!("minimum inter-vertex distance {min_d:.3e} too small"));
    }
    report
}

/// Neighbor cycle of `vid` induced by shared faces, or `None` when window
/// clipping broke it.
pub fn vertex_figure_cycle(w: &Wythoffian, vid: usize) -> Option<Vec<usize>> {
    // link edges: neighbors (a, b) adjacent to vid within one face
    let mut link: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (fi, pos) in w.faces_at(vid) {
        let f = &w.faces[fi];
        let n = f.cycle.len();
        let (prev, next) = if f.closed {
            (f.cycle[(pos + n - 1) % n], f.cycle[(pos + 1) % n])
        } else {
            if pos == 0 || pos + 1 == n {
                return None; // clipped at the path end
            }
            (f.cycle[pos - 1], f.cycle[pos + 1])
        };
        link.entry(prev).or_default().push(next);
        link.entry(next).or_default().push(prev);
    }
    if link.is_empty() {
        return None;
    }
    // walk the link graph; each neighbor must have degree 2 for a cycle
    if link.values().any(|v| v.len() != 2) {
        return None;
    }
    let start = *link.keys().next().unwrap();
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = link[&start][0];
    while cur != start {
        cycle.push(cur);
        let nexts = &link[&cur];
        let nxt = if nexts[0] == prev { nexts[1] } else { nexts[0] };
        prev = cur;
        cur = nxt;
        if cycle.len() > link.len() {
            return None;
        }
    }
    if cycle.len() == link.len() {
        Some(cycle)
    } else {
        None
    }
}

fn vertex_figure_is_cycle(w: &Wythoffian, vid: usize) -> bool {
    vertex_figure_cycle(w, vid).is_some()
}
