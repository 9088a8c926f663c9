//! Property tests for the geometric core and the symbol canonicalization.

use proptest::prelude::*;

use wythoffian::analysis::{canonical_rotation, SymbolEntry, VertexSymbol};
use wythoffian::geom::{classify, compose, synthesize, IsometryKind};
use wythoffian::group::Window;
use wythoffian::wythoff::IndexSet;
use wythoffian::{Isometry, Line, Plane, Vec3};

fn vec3_strategy(range: f64) -> impl Strategy<Value = Vec3> {
    (
        -range..range,
        -range..range,
        -range..range,
    )
        .prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn unit_strategy() -> impl Strategy<Value = Vec3> {
    vec3_strategy(1.0)
        .prop_filter("nonzero", |v| v.norm() > 0.1)
        .prop_map(|v| v.normalized())
}

fn plane_strategy() -> impl Strategy<Value = Plane> {
    (unit_strategy(), vec3_strategy(1.5)).prop_map(|(n, p)| Plane::new(n, p))
}

fn line_strategy() -> impl Strategy<Value = Line> {
    (unit_strategy(), vec3_strategy(1.5)).prop_map(|(d, p)| Line::new(p, d))
}

/// Random valid isometries via synthesized kinds.
fn isometry_strategy() -> impl Strategy<Value = Isometry> {
    prop_oneof![
        Just(IsometryKind::Identity).prop_map(|k| synthesize(&k)),
        plane_strategy().prop_map(|p| synthesize(&IsometryKind::PlaneReflection { plane: p })),
        line_strategy().prop_map(|a| synthesize(&IsometryKind::HalfTurn { axis: a })),
        vec3_strategy(1.5)
            .prop_map(|c| synthesize(&IsometryKind::PointReflection { center: c })),
        (line_strategy(), 0.2..3.0f64)
            .prop_map(|(a, ang)| synthesize(&IsometryKind::Rotation { axis: a, angle: ang })),
        (line_strategy(), 0.2..3.0f64, 0.1..1.0f64).prop_map(|(a, ang, pitch)| {
            synthesize(&IsometryKind::Screw { axis: a, angle: ang, pitch })
        }),
        vec3_strategy(1.5).prop_map(|t| synthesize(&IsometryKind::Translation { offset: t })),
        (plane_strategy(), unit_strategy(), 0.2..1.5f64).prop_map(|(p, d, s)| {
            let in_plane = d.reject(&p.normal);
            if in_plane.norm() < 0.1 {
                synthesize(&IsometryKind::PlaneReflection { plane: p })
            } else {
                synthesize(&IsometryKind::Glide {
                    plane: p,
                    offset: in_plane.normalized().scale(s),
                })
            }
        }),
    ]
}

proptest! {
    #[test]
    fn composition_is_associative(
        a in isometry_strategy(),
        b in isometry_strategy(),
        c in isometry_strategy(),
    ) {
        let left = compose(&compose(&a, &b), &c);
        let right = compose(&a, &compose(&b, &c));
        prop_assert!(left.approx_eq(&right, 1e-6));
    }

    #[test]
    fn classify_synthesize_roundtrip(g in isometry_strategy()) {
        let kind = classify(&g);
        let back = synthesize(&kind);
        prop_assert!(back.approx_eq(&g, 1e-7), "kind {:?}", kind.tag());
        prop_assert_eq!(classify(&back).tag(), kind.tag());
    }

    #[test]
    fn mirror_dimension_counts_the_fixed_eigenspace(
        n in unit_strategy(),
        p in vec3_strategy(1.5),
        which in 0..3usize,
    ) {
        let g = match which {
            0 => Isometry::reflection(Plane::new(n, p)),
            1 => Isometry::halfturn(Line::new(p, n)),
            _ => Isometry::point_reflection(p),
        };
        let m = g.mirror().unwrap();
        // dimension = 3 − rank(linear − identity)
        let delta = g.linear.sub(&wythoffian::Mat3::identity());
        let gram = delta.transpose().matmul(&delta);
        let rank = 3 - gram.null_space(1e-9).len();
        prop_assert_eq!(m.dimension, 3 - rank);
        // every stored direction is fixed
        for d in &m.directions {
            let q = m.basepoint + *d;
            prop_assert!(g.apply(&q).approx_eq(&q, 1e-7));
        }
    }

    #[test]
    fn symbol_canonicalization_is_cycle_invariant(
        texts in proptest::collection::vec(
            prop_oneof![
                Just("3c"), Just("4c"), Just("4s"), Just("4bx"),
                Just("6c"), Just("6s"), Just("8c"), Just("12s"),
                Just("inf"), Just("inf_4"), Just("tinf_2"),
            ],
            3..9,
        ),
        shift in 0..8usize,
    ) {
        let entries: Vec<SymbolEntry> = texts
            .iter()
            .map(|t| SymbolEntry {
                size: t.chars()
                    .take_while(|c| c.is_ascii_digit())
                    .collect::<String>()
                    .parse()
                    .ok(),
                text: t.to_string(),
            })
            .collect();
        let base = VertexSymbol::from_entries(entries.clone());
        let mut rotated = entries.clone();
        let len = rotated.len();
        rotated.rotate_left(shift % len);
        prop_assert_eq!(VertexSymbol::from_entries(rotated).canonical, base.canonical.clone());
        let mut reversed = entries.clone();
        reversed.reverse();
        prop_assert_eq!(VertexSymbol::from_entries(reversed).canonical, base.canonical.clone());
        // canonical_rotation is idempotent
        let canon = canonical_rotation(&entries);
        prop_assert_eq!(canonical_rotation(&canon), canon.clone());
    }
}

/// Applying a generator permutes the vertex set on the window interior.
#[test]
fn generators_permute_build_vertices() {
    use wythoffian::wythoff::build_from_vertex;
    for (name, is) in [("{3,4}", "02"), ("{4,4}", "01"), ("{4,6|4}", "1")] {
        let spec = wythoffian::catalog::lookup(name).unwrap();
        let iset = IndexSet::parse(is).unwrap();
        let params = wythoffian::wythoff::default_params(&spec, iset).unwrap();
        let v = wythoffian::wythoff::place_vertex(&spec, iset, &params).unwrap();
        let radius = if name == "{3,4}" { 10.0 } else { 3.0 };
        let w = build_from_vertex(&spec, iset, &v, Window::new(v, radius)).unwrap();
        for g in spec.gens().all() {
            for &vid in &w.interior_vertices() {
                let image = g.apply(&w.vertices[vid]);
                if image.dist(&w.window.center) <= w.window.radius {
                    assert!(
                        w.vertices.iter().any(|q| q.approx_eq(&image, 1e-7)),
                        "{name} P^{is}: generator image of vertex {vid} missing"
                    );
                }
            }
        }
    }
}

/// Index-swap duality on the self-dual square tiling: conjugating by the
/// isometry that swaps the generator roles carries P^I onto P^{I*}.
#[test]
fn square_tiling_index_swap_duality() {
    use wythoffian::wythoff::build_from_vertex;
    let spec = wythoffian::catalog::lookup("{4,4}").unwrap();
    // reflection in the plane x + y = 1/2 conjugates (s0, s1, s2) to
    // (s2, s1, s0)
    let delta = Isometry::reflection(Plane::new(
        Vec3::new(1.0, 1.0, 0.0),
        Vec3::new(0.25, 0.25, 0.0),
    ));
    for i in 0..3 {
        let conj = compose(&compose(&delta, spec.gens().gen(i)), &delta);
        assert!(conj.approx_eq(spec.gens().gen(2 - i), 1e-12));
    }
    for (is, is_star) in [("0", "2"), ("01", "12"), ("02", "02")] {
        let iset = IndexSet::parse(is).unwrap();
        let iset_star = IndexSet::parse(is_star).unwrap();
        assert_eq!(iset.swapped(), iset_star);
        let params = wythoffian::wythoff::default_params(&spec, iset).unwrap();
        let v = wythoffian::wythoff::place_vertex(&spec, iset, &params).unwrap();
        let w = build_from_vertex(&spec, iset, &v, Window::new(v, 3.0)).unwrap();
        let v_star = delta.apply(&v);
        let w_star =
            build_from_vertex(&spec, iset_star, &v_star, Window::new(v_star, 3.0)).unwrap();
        assert_eq!(w.vertices.len(), w_star.vertices.len(), "I={is}");
        for p in &w.vertices {
            let image = delta.apply(p);
            assert!(
                w_star.vertices.iter().any(|q| q.approx_eq(&image, 1e-7)),
                "I={is}: image vertex missing from the swapped build"
            );
        }
    }
}
