//! Concrete generator sets for the shipped regular polyhedra, plus the
//! derivation operators (Petrie dual, geometric dual, blend) that produce
//! them from the base tessellations and solids.
//!
//! Standard models: octahedron with vertices ±eᵢ, unit square tiling of the
//! z = 0 plane, unit cubical honeycomb. The reflection planes below realize
//! the base-flag conditions for those models; they are verified against the
//! Coxeter-type relations at load.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::geom::isometry::{compose, order_of};
use crate::group::{self, GeneratorSet, GroupError};
use crate::tol;
use crate::wythoff::{walk_polygon, IndexSet};
use crate::{Isometry, Plane, Vec3};

#[derive(Clone, Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown polyhedron {0:?}")]
    UnknownPolyhedron(String),
    #[error("dual would need vertices of infinite valency")]
    LocallyInfinite,
    #[error("blend with zero or negative scale degenerates to the planar polyhedron")]
    DegenerateBlend,
    #[error("blend input must act on the z = 0 plane")]
    NotPlanar,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Blend component: a perpendicular line segment or linear apeirogon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlendKind {
    Segment,
    Apeirogon,
}

/// Restriction on where initial vertices may be placed, beyond the
/// fundamental region.
#[derive(Clone, Debug, Default)]
pub enum VertexDomain {
    #[default]
    Unrestricted,
    /// Within the convex hull of the base face (Petrie-Coxeter entries).
    BaseFaceHull,
    /// In the plane of the base face, for the listed index sets only.
    BaseFacePlane(Vec<IndexSet>),
}

/// A named regular polyhedron: three involutory generators plus metadata.
#[derive(Clone, Debug)]
pub struct PolyhedronSpec {
    name: String,
    gens: GeneratorSet,
    /// Face size p; `None` encodes ∞.
    pub schlafli_p: Option<usize>,
    /// Vertex valency q (always finite by discreteness).
    pub schlafli_q: usize,
    /// Mirror dimensions of (r₀, r₁, r₂).
    pub mirror_vector: [usize; 3],
    pub finite: bool,
    pub blend_scale: Option<f64>,
    /// Base vertex of the standard model (the P⁰ initial vertex).
    pub base_vertex: Vec3,
    /// Generic interior point of the fundamental region.
    pub fund_seed: Vec3,
    /// For segment blends: the pure blend-component reflection t₀. Initial
    /// vertices fixed by it reduce the blend to its planar component.
    pub degeneracy_mirror: Option<Isometry>,
    /// Placements rejected for the given index sets (blend projection
    /// caveats: on these planes the projection degenerates).
    pub placement_caveats: Vec<(IndexSet, Plane)>,
    pub vertex_domain: VertexDomain,
    /// Vertices of the base face when finite, for hull restrictions.
    pub base_face: Option<Vec<Vec3>>,
    /// Plane of the base face when the face is planar.
    pub base_face_plane: Option<Plane>,
}

impl PolyhedronSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    /// "{p,q}" with `inf` for infinite p.
    pub fn schlafli_type(&self) -> String {
        match self.schlafli_p {
            Some(p) => format!("{{{},{}}}", p, self.schlafli_q),
            None => format!("{{inf,{}}}", self.schlafli_q),
        }
    }

    fn validate(&self) -> Result<(), CatalogError> {
        group::verify_relations(&self.gens, self.schlafli_p, self.schlafli_q)?;
        for i in 0..3 {
            let m = self
                .gens
                .gen(i)
                .mirror()
                .map_err(|_| GroupError::NotInvolution(i))?;
            if m.dimension != self.mirror_vector[i] {
                return Err(GroupError::RelationViolated(format!(
                    "mirror dimension of r{} is {}, expected {}",
                    i, m.dimension, self.mirror_vector[i]
                ))
                .into());
            }
        }
        Ok(())
    }
}

fn reflection(normal: Vec3, through: Vec3) -> Isometry {
    Isometry::reflection(Plane::new(normal, through))
}

fn compute_mirror_vector(gens: &GeneratorSet) -> [usize; 3] {
    let mut mv = [0; 3];
    for i in 0..3 {
        mv[i] = gens.gen(i).mirror().expect("generators are involutions").dimension;
    }
    mv
}

/// Trace the base face of P⁰ (the {0,1}-walk from the base vertex) and its
/// plane. Infinite faces are cut off after a few periods, enough to pin the
/// plane down.
fn base_face_data(spec: &mut PolyhedronSpec) {
    let (points, closed) = walk_polygon(
        &spec.gens,
        0,
        1,
        &spec.base_vertex,
        &|p: &Vec3| p.dist(&spec.base_vertex) < 12.0,
        64,
    );
    if points.len() < 3 {
        return;
    }
    if closed {
        spec.base_face = Some(points.clone());
    }
    // best plane through the first points; keep it only if all points fit
    let p0 = points[0];
    let mut normal = Vec3::zero();
    for i in 1..points.len() {
        for j in (i + 1)..points.len() {
            let n = (points[i] - p0).cross(&(points[j] - p0));
            if n.norm() > normal.norm() {
                normal = n;
            }
        }
    }
    if normal.norm() < 1e-9 {
        return;
    }
    let plane = Plane::new(normal, p0);
    if points.iter().all(|p| plane.contains(p, 1e-7)) {
        spec.base_face_plane = Some(plane);
    }
}

/// Square-tiling generators (s₀, s₁, s₂) acting on the z = 0 plane.
fn square_tiling_gens() -> (Isometry, Isometry, Isometry) {
    let s0 = reflection(Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.0));
    let s1 = reflection(Vec3::new(1.0, -1.0, 0.0), Vec3::zero());
    let s2 = reflection(Vec3::new(0.0, 1.0, 0.0), Vec3::zero());
    (s0, s1, s2)
}

/// Octahedral generators (s₀, s₁, s₂) for {3,4} with vertices ±eᵢ.
fn octahedral_gens() -> (Isometry, Isometry, Isometry) {
    let s0 = reflection(Vec3::new(1.0, -1.0, 0.0), Vec3::zero());
    let s1 = reflection(Vec3::new(0.0, 1.0, -1.0), Vec3::zero());
    let s2 = reflection(Vec3::new(0.0, 0.0, 1.0), Vec3::zero());
    (s0, s1, s2)
}

/// Cubical-honeycomb generators (t₀, t₁, t₂, t₃) for unit cubes.
fn honeycomb_gens() -> [Isometry; 4] {
    [
        reflection(Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.0)),
        reflection(Vec3::new(1.0, -1.0, 0.0), Vec3::zero()),
        reflection(Vec3::new(0.0, -1.0, 1.0), Vec3::zero()),
        reflection(Vec3::new(0.0, 0.0, 1.0), Vec3::zero()),
    ]
}

fn finish(mut spec: PolyhedronSpec) -> Result<PolyhedronSpec, CatalogError> {
    base_face_data(&mut spec);
    spec.validate()?;
    Ok(spec)
}

fn make_spec(
    name: &str,
    gens: GeneratorSet,
    p: Option<usize>,
    q: usize,
    finite: bool,
    base_vertex: Vec3,
    fund_seed: Vec3,
) -> Result<PolyhedronSpec, CatalogError> {
    let mirror_vector = compute_mirror_vector(&gens);
    finish(PolyhedronSpec {
        name: name.to_string(),
        gens,
        schlafli_p: p,
        schlafli_q: q,
        mirror_vector,
        finite,
        blend_scale: None,
        base_vertex,
        fund_seed,
        degeneracy_mirror: None,
        placement_caveats: Vec::new(),
        vertex_domain: VertexDomain::Unrestricted,
        base_face: None,
        base_face_plane: None,
    })
}

/// The Petrie dual: generators (r₀r₂, r₁, r₂), same vertices and edges.
pub fn petrie(spec: &PolyhedronSpec) -> Result<PolyhedronSpec, CatalogError> {
    let r0 = compose(spec.gens.gen(0), spec.gens.gen(2));
    let gens = GeneratorSet::new(r0, *spec.gens.gen(1), *spec.gens.gen(2))?;
    let p = order_of(
        &compose(gens.gen(0), gens.gen(1)),
        group::INFINITE_ORDER_BOUND,
    );
    let mirror_vector = compute_mirror_vector(&gens);
    finish(PolyhedronSpec {
        name: petrie_name(&spec.name),
        gens,
        schlafli_p: p,
        schlafli_q: spec.schlafli_q,
        mirror_vector,
        finite: spec.finite,
        blend_scale: spec.blend_scale,
        base_vertex: spec.base_vertex,
        fund_seed: spec.fund_seed,
        degeneracy_mirror: spec.degeneracy_mirror,
        placement_caveats: spec.placement_caveats.clone(),
        vertex_domain: VertexDomain::Unrestricted,
        base_face: None,
        base_face_plane: None,
    })
}

/// The geometric dual: generators in reverse order, Schläfli entries swapped.
pub fn dual(spec: &PolyhedronSpec) -> Result<PolyhedronSpec, CatalogError> {
    let Some(p) = spec.schlafli_p else {
        return Err(CatalogError::LocallyInfinite);
    };
    let gens = GeneratorSet::new(*spec.gens.gen(2), *spec.gens.gen(1), *spec.gens.gen(0))?;
    // new base vertex: project the old one onto the dual's vertex locus
    let base_vertex = crate::geom::subspace::fixed_space(&[gens.gen(1), gens.gen(2)])
        .map(|s| s.project(&spec.base_vertex))
        .unwrap_or(spec.base_vertex);
    let mirror_vector = compute_mirror_vector(&gens);
    finish(PolyhedronSpec {
        name: dual_name(&spec.name),
        gens,
        schlafli_p: Some(spec.schlafli_q),
        schlafli_q: p,
        mirror_vector,
        finite: spec.finite,
        blend_scale: spec.blend_scale,
        base_vertex,
        fund_seed: spec.fund_seed,
        degeneracy_mirror: spec.degeneracy_mirror,
        placement_caveats: spec.placement_caveats.clone(),
        vertex_domain: VertexDomain::Unrestricted,
        base_face: None,
        base_face_plane: None,
    })
}

/// Blend a planar polyhedron with a perpendicular segment or apeirogon.
///
/// The segment blend multiplies r₀ by the reflection t₀ in the plane
/// z = scale/2; the apeirogon blend additionally multiplies r₁ by t₁
/// (plane z = −scale/2).
pub fn blend(
    planar: &PolyhedronSpec,
    kind: BlendKind,
    scale: f64,
) -> Result<PolyhedronSpec, CatalogError> {
    if scale <= 0.0 {
        return Err(CatalogError::DegenerateBlend);
    }
    // the planar group must act on z = 0, extended trivially
    for g in planar.gens.all() {
        let keeps_z = g.apply_dir(&Vec3::axis(2)).approx_eq(&Vec3::axis(2), tol::EPS_ORTHO)
            && g.shift.z.abs() <= tol::EPS_POINT;
        if !keeps_z {
            return Err(CatalogError::NotPlanar);
        }
    }
    let t0 = reflection(Vec3::axis(2), Vec3::new(0.0, 0.0, scale / 2.0));
    let t1 = reflection(Vec3::axis(2), Vec3::new(0.0, 0.0, -scale / 2.0));
    let (r0, r1, base_vertex, deg, suffix) = match kind {
        BlendKind::Segment => (
            compose(planar.gens.gen(0), &t0),
            *planar.gens.gen(1),
            planar.base_vertex,
            Some(t0),
            "#{}",
        ),
        BlendKind::Apeirogon => (
            compose(planar.gens.gen(0), &t0),
            compose(planar.gens.gen(1), &t1),
            planar.base_vertex + Vec3::new(0.0, 0.0, -scale / 2.0),
            None,
            "#{inf}",
        ),
    };
    let gens = GeneratorSet::new(r0, r1, *planar.gens.gen(2))?;
    let p = order_of(
        &compose(gens.gen(0), gens.gen(1)),
        group::INFINITE_ORDER_BOUND,
    );

    // projection caveats from the planar kaleidoscope mirrors (§ placements
    // on these planes project degenerately)
    let mirror_plane = |g: &Isometry| -> Option<Plane> {
        let m = g.mirror().ok()?;
        (m.dimension == 2).then(|| Plane::new(m.directions[0].cross(&m.directions[1]), m.basepoint))
    };
    let mut caveats = Vec::new();
    if let Some(p0) = mirror_plane(planar.gens.gen(0)) {
        for iset in ["01", "02", "012"] {
            caveats.push((IndexSet::parse(iset).unwrap(), p0));
        }
    }
    if kind == BlendKind::Apeirogon {
        if let Some(p1) = mirror_plane(planar.gens.gen(1)) {
            for iset in ["01", "12", "012"] {
                caveats.push((IndexSet::parse(iset).unwrap(), p1));
            }
        }
    }

    let mirror_vector = compute_mirror_vector(&gens);
    finish(PolyhedronSpec {
        name: format!("{}{}", planar.name, suffix),
        gens,
        schlafli_p: p,
        schlafli_q: planar.schlafli_q,
        mirror_vector,
        finite: false,
        blend_scale: Some(scale),
        base_vertex,
        fund_seed: planar.fund_seed + Vec3::new(0.0, 0.0, 0.11 * scale),
        degeneracy_mirror: deg,
        placement_caveats: caveats,
        vertex_domain: VertexDomain::Unrestricted,
        base_face: None,
        base_face_plane: None,
    })
}

fn petrie_name(name: &str) -> String {
    const PAIRS: [(&str, &str); 5] = [
        ("{3,4}", "{6,4}_3"),
        ("{4,3}", "{6,3}_4"),
        ("{4,4}", "{inf,4}_4"),
        ("{4,4}#{}", "{inf,4}_4#{}"),
        ("{4,4}#{inf}", "{inf,4}_4#{inf}"),
    ];
    for (a, b) in PAIRS {
        if name == a {
            return b.to_string();
        }
        if name == b {
            return a.to_string();
        }
    }
    match name.strip_prefix("petrie(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("petrie({name})"),
    }
}

fn dual_name(name: &str) -> String {
    const PAIRS: [(&str, &str); 2] = [("{4,6|4}", "{6,4|4}"), ("{3,4}", "{4,3}")];
    const SELF_DUAL: [&str; 2] = ["{4,4}", "{6,6|3}"];
    for (a, b) in PAIRS {
        if name == a {
            return b.to_string();
        }
        if name == b {
            return a.to_string();
        }
    }
    if SELF_DUAL.contains(&name) {
        return name.to_string();
    }
    match name.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("dual({name})"),
    }
}

/// Canonical catalog order: the thirteen shipped polyhedra.
pub const NAMES: [&str; 13] = [
    "{3,4}",
    "{4,3}",
    "{6,4}_3",
    "{6,3}_4",
    "{4,4}",
    "{inf,4}_4",
    "{4,4}#{}",
    "{inf,4}_4#{}",
    "{4,4}#{inf}",
    "{inf,4}_4#{inf}",
    "{4,6|4}",
    "{6,4|4}",
    "{6,6|3}",
];

fn build_catalog() -> Result<BTreeMap<String, PolyhedronSpec>, CatalogError> {
    let mut map = BTreeMap::new();
    let mut insert = |spec: PolyhedronSpec| {
        map.insert(spec.name.clone(), spec);
    };

    // finite, octahedral symmetry
    let (s0, s1, s2) = octahedral_gens();
    let oct_seed = Vec3::new(1.0, 0.4, 0.15);
    let octahedron = make_spec(
        "{3,4}",
        GeneratorSet::new(s0, s1, s2)?,
        Some(3),
        4,
        true,
        Vec3::new(1.0, 0.0, 0.0),
        oct_seed,
    )?;
    let cube = dual(&octahedron)?;
    insert(petrie(&octahedron)?);
    insert(petrie(&cube)?);
    insert(octahedron);
    insert(cube);

    // planar, from the square tiling
    let (s0, s1, s2) = square_tiling_gens();
    let square = make_spec(
        "{4,4}",
        GeneratorSet::new(s0, s1, s2)?,
        Some(4),
        4,
        false,
        Vec3::zero(),
        Vec3::new(0.35, 0.15, 0.0),
    )?;
    insert(petrie(&square)?);

    // blends of the square tiling and their Petrie duals
    let seg = blend(&square, BlendKind::Segment, 1.0)?;
    let ape = blend(&square, BlendKind::Apeirogon, 1.0)?;
    insert(petrie(&seg)?);
    let mut ape_petrie = petrie(&ape)?;
    ape_petrie.vertex_domain = VertexDomain::BaseFacePlane(vec![
        IndexSet::parse("01").unwrap(),
        IndexSet::parse("012").unwrap(),
    ]);
    insert(ape_petrie);
    insert(seg);
    insert(ape);
    insert(square);

    // Petrie-Coxeter polyhedra over the cubical honeycomb
    let [t0, t1, t2, t3] = honeycomb_gens();
    let hc_seed = Vec3::new(0.42, 0.25, 0.1);
    let r1 = compose(&t1, &t3);
    let mut pc46 = make_spec(
        "{4,6|4}",
        GeneratorSet::new(t0, r1, t2)?,
        Some(4),
        6,
        false,
        Vec3::zero(),
        hc_seed,
    )?;
    pc46.vertex_domain = VertexDomain::BaseFaceHull;
    let mut pc64 = dual(&pc46)?;
    pc64.vertex_domain = VertexDomain::BaseFaceHull;
    insert(pc46);
    insert(pc64);

    let t01 = compose(&t0, &t1);
    let t01sq = compose(&t01, &t01);
    let r0_66 = compose(&compose(&t01sq, &t2), &t01sq.inverse());
    let mut pc66 = make_spec(
        "{6,6|3}",
        GeneratorSet::new(r0_66, r1, t2)?,
        Some(6),
        6,
        false,
        Vec3::zero(),
        hc_seed,
    )?;
    pc66.vertex_domain = VertexDomain::BaseFaceHull;
    insert(pc66);

    Ok(map)
}

fn catalog() -> &'static BTreeMap<String, PolyhedronSpec> {
    static CATALOG: OnceLock<BTreeMap<String, PolyhedronSpec>> = OnceLock::new();
    CATALOG.get_or_init(|| build_catalog().expect("catalog entries verify at load"))
}

/// Look up a catalog entry by its canonical ASCII name.
pub fn lookup(name: &str) -> Result<PolyhedronSpec, CatalogError> {
    catalog()
        .get(name)
        .cloned()
        .ok_or_else(|| CatalogError::UnknownPolyhedron(name.to_string()))
}

/// Look up an entry, rebuilding blend entries at the given component scale.
/// Each blend is a one-parameter family; the shipped entries use scale 1.
pub fn lookup_scaled(name: &str, blend_scale: Option<f64>) -> Result<PolyhedronSpec, CatalogError> {
    let spec = lookup(name)?;
    let Some(scale) = blend_scale else {
        return Ok(spec);
    };
    if spec.blend_scale.is_none() {
        return Ok(spec); // not a blend; the scale does not apply
    }
    let square = lookup("{4,4}")?;
    let rebuilt = match name {
        "{4,4}#{}" => blend(&square, BlendKind::Segment, scale)?,
        "{4,4}#{inf}" => blend(&square, BlendKind::Apeirogon, scale)?,
        "{inf,4}_4#{}" => petrie(&blend(&square, BlendKind::Segment, scale)?)?,
        "{inf,4}_4#{inf}" => {
            let mut p = petrie(&blend(&square, BlendKind::Apeirogon, scale)?)?;
            p.vertex_domain = VertexDomain::BaseFacePlane(vec![
                IndexSet::parse("01").unwrap(),
                IndexSet::parse("012").unwrap(),
            ]);
            p
        }
        _ => spec,
    };
    Ok(rebuilt)
}

/// All thirteen entries in canonical order.
pub fn entries() -> Vec<PolyhedronSpec> {
    NAMES.iter().map(|n| lookup(n).unwrap()).collect()
}
