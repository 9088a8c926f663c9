use super::isometry::{compose, Isometry};
use super::{Line, Mat3, Plane, Scalar, Vec3};

/// Canonical kind of a Euclidean motion of E³.
///
/// Angles lie in `(0, π]`; pitch is the signed translation along the rotation
/// axis (nonnegative for halfturn-screws, where the axis sign is free).
#[derive(Clone, Copy, Debug)]
pub enum IsometryKind<S> {
    Identity,
    PlaneReflection { plane: Plane<S> },
    HalfTurn { axis: Line<S> },
    PointReflection { center: Vec3<S> },
    Rotation { axis: Line<S>, angle: S },
    Screw { axis: Line<S>, angle: S, pitch: S },
    Translation { offset: Vec3<S> },
    RotoReflection { center: Vec3<S>, axis_dir: Vec3<S>, angle: S },
    Glide { plane: Plane<S>, offset: Vec3<S> },
}

impl<S: Scalar> IsometryKind<S> {
    pub fn tag(&self) -> &'static str {
        match self {
            IsometryKind::Identity => "identity",
            IsometryKind::PlaneReflection { .. } => "plane-reflection",
            IsometryKind::HalfTurn { .. } => "halfturn",
            IsometryKind::PointReflection { .. } => "point-reflection",
            IsometryKind::Rotation { .. } => "rotation",
            IsometryKind::Screw { .. } => "screw",
            IsometryKind::Translation { .. } => "translation",
            IsometryKind::RotoReflection { .. } => "rotoreflection",
            IsometryKind::Glide { .. } => "glide",
        }
    }

    /// Rotation angle carried by the kind, if any.
    pub fn angle(&self) -> Option<S> {
        match self {
            IsometryKind::HalfTurn { .. } | IsometryKind::PointReflection { .. } => Some(S::PI()),
            IsometryKind::Rotation { angle, .. }
            | IsometryKind::Screw { angle, .. }
            | IsometryKind::RotoReflection { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    /// True for kinds that generate an infinite cyclic group.
    pub fn is_infinite_order(&self) -> bool {
        matches!(
            self,
            IsometryKind::Screw { .. } | IsometryKind::Translation { .. } | IsometryKind::Glide { .. }
        )
    }
}

fn vee<S: Scalar>(m: &Mat3<S>) -> Vec3<S> {
    Vec3::new(
        (m.m[2][1] - m.m[1][2]) * S::of(0.5),
        (m.m[0][2] - m.m[2][0]) * S::of(0.5),
        (m.m[1][0] - m.m[0][1]) * S::of(0.5),
    )
}

fn canonical_sign<S: Scalar>(v: Vec3<S>) -> Vec3<S> {
    for i in 0..3 {
        let c = v.coord(i);
        if c.abs() > S::of(1e-9) {
            return if c < S::zero() { -v } else { v };
        }
    }
    v
}

/// Unit +1 or −1 eigenvector of a symmetric orthogonal matrix via the
/// projection `(L ± I)/2`.
fn principal_dir<S: Scalar>(proj: &Mat3<S>) -> Vec3<S> {
    let mut best = proj.col(0);
    for j in 1..3 {
        if proj.col(j).norm() > best.norm() {
            best = proj.col(j);
        }
    }
    canonical_sign(best.normalized())
}

fn solve3<S: Scalar>(a: &Mat3<S>, b: &Vec3<S>) -> Option<Vec3<S>> {
    let d = a.det();
    if d.abs() <= S::of(1e-12) {
        return None;
    }
    let mut cols = [a.col(0), a.col(1), a.col(2)];
    let mut x = Vec3::zero();
    for i in 0..3 {
        let saved = cols[i];
        cols[i] = *b;
        *x.coord_mut(i) = Mat3::from_cols(cols[0], cols[1], cols[2]).det() / d;
        cols[i] = saved;
    }
    Some(x)
}

/// Classify a valid isometry into its canonical kind.
///
/// Re-synthesizing via [`synthesize`] reproduces the input within tolerance.
pub fn classify<S: Scalar>(g: &Isometry<S>) -> IsometryKind<S> {
    // acos turns trace roundoff δ into angle noise √(2δ), so the zero-angle
    // threshold must sit well above √machine-epsilon
    let eps_angle = S::of(1e-6);
    let eps = S::of(100.0) * S::EPS_POINT;
    let l = g.linear;
    let one = S::one();
    let two = S::of(2.0);

    if g.det() > S::zero() {
        // proper: trace = 1 + 2cosθ
        let c = ((l.trace() - one) / two).max(-one).min(one);
        let theta = c.acos();
        if theta <= eps_angle {
            return if g.shift.norm() <= eps {
                IsometryKind::Identity
            } else {
                IsometryKind::Translation { offset: g.shift }
            };
        }
        let near_pi = (S::PI() - theta) <= eps_angle;
        let u = if near_pi {
            // L = 2uuᵀ − I
            principal_dir(&l.add(&Mat3::identity()).scale(S::of(0.5)))
        } else {
            vee(&l).scale(one / theta.sin())
        };
        let u = u.normalized();
        let mut pitch = g.shift.dot(&u);
        let mut u = u;
        if near_pi && pitch < S::zero() {
            u = -u;
            pitch = -pitch;
        }
        let shift_perp = g.shift - u.scale(g.shift.dot(&u));
        // axis anchor in u⊥: (I − L) c = shift_perp
        let e = u.any_orthogonal();
        let f = u.cross(&e);
        let a = Mat3::identity().sub(&l);
        let ae = a.apply(&e);
        let af = a.apply(&f);
        let m00 = ae.dot(&e);
        let m01 = af.dot(&e);
        let m10 = ae.dot(&f);
        let m11 = af.dot(&f);
        let det = m00 * m11 - m01 * m10;
        let b0 = shift_perp.dot(&e);
        let b1 = shift_perp.dot(&f);
        let x = (b0 * m11 - b1 * m01) / det;
        let y = (m00 * b1 - m10 * b0) / det;
        let anchor = e.scale(x) + f.scale(y);
        let axis = Line::new(anchor, u);
        if pitch.abs() <= eps {
            if near_pi {
                IsometryKind::HalfTurn { axis }
            } else {
                IsometryKind::Rotation { axis, angle: theta }
            }
        } else {
            IsometryKind::Screw { axis, angle: theta, pitch }
        }
    } else {
        // improper: trace = −1 + 2cosθ for the rotatory part
        let c = ((l.trace() + one) / two).max(-one).min(one);
        let theta = c.acos();
        if theta <= eps_angle {
            // reflection, possibly glide
            let n = principal_dir(&Mat3::identity().sub(&l).scale(S::of(0.5)));
            let offset_along = g.shift.dot(&n) / two;
            let glide = g.shift - n.scale(g.shift.dot(&n));
            let plane = Plane {
                normal: n,
                offset: offset_along,
            };
            if glide.norm() <= eps {
                IsometryKind::PlaneReflection { plane }
            } else {
                IsometryKind::Glide { plane, offset: glide }
            }
        } else if (S::PI() - theta) <= eps_angle {
            IsometryKind::PointReflection {
                center: g.shift.scale(S::of(0.5)),
            }
        } else {
            let u = vee(&l).scale(one / theta.sin()).normalized();
            let center = solve3(&Mat3::identity().sub(&l), &g.shift)
                .expect("rotoreflection has a unique fixed point");
            IsometryKind::RotoReflection {
                center,
                axis_dir: u,
                angle: theta,
            }
        }
    }
}

/// Build the isometry described by a kind; inverse of [`classify`].
pub fn synthesize<S: Scalar>(kind: &IsometryKind<S>) -> Isometry<S> {
    match kind {
        IsometryKind::Identity => Isometry::identity(),
        IsometryKind::PlaneReflection { plane } => Isometry::reflection(*plane),
        IsometryKind::HalfTurn { axis } => Isometry::halfturn(*axis),
        IsometryKind::PointReflection { center } => Isometry::point_reflection(*center),
        IsometryKind::Rotation { axis, angle } => Isometry::rotation(*axis, *angle),
        IsometryKind::Screw { axis, angle, pitch } => compose(
            &Isometry::translation(axis.dir.scale(*pitch)),
            &Isometry::rotation(*axis, *angle),
        ),
        IsometryKind::Translation { offset } => Isometry::translation(*offset),
        IsometryKind::RotoReflection {
            center,
            axis_dir,
            angle,
        } => compose(
            &Isometry::rotation(Line::new(*center, *axis_dir), *angle),
            &Isometry::reflection(Plane::new(*axis_dir, *center)),
        ),
        IsometryKind::Glide { plane, offset } => compose(
            &Isometry::translation(*offset),
            &Isometry::reflection(*plane),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = Vec3<f64>;
    type Iso = Isometry<f64>;
    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn classify_identity() {
        assert_eq!(classify(&Iso::identity()).tag(), "identity");
    }

    #[test]
    fn classify_each_synthesized_kind_roundtrips() {
        let axis = Line::new(V::new(0.3, -0.2, 0.7), V::new(1.0, 2.0, -0.5).normalized());
        let plane = Plane::new(V::new(0.2, -1.0, 0.4), V::new(0.1, 0.0, 0.5));
        let kinds: Vec<IsometryKind<f64>> = vec![
            IsometryKind::Identity,
            IsometryKind::PlaneReflection { plane },
            IsometryKind::HalfTurn { axis },
            IsometryKind::PointReflection { center: V::new(1.0, -0.5, 0.25) },
            IsometryKind::Rotation { axis, angle: 1.1 },
            IsometryKind::Screw { axis, angle: 0.7, pitch: 0.4 },
            IsometryKind::Screw { axis, angle: 0.7, pitch: -0.4 },
            IsometryKind::Translation { offset: V::new(0.2, 0.0, -1.0) },
            IsometryKind::RotoReflection {
                center: V::new(0.5, 0.5, 0.0),
                axis_dir: V::new(0.0, 1.0, 1.0).normalized(),
                angle: 2.0,
            },
            IsometryKind::Glide {
                plane,
                offset: plane.normal.any_orthogonal().scale(0.8),
            },
        ];
        for kind in kinds {
            let g = synthesize(&kind);
            assert!(g.is_valid());
            let back = classify(&g);
            assert_eq!(back.tag(), kind.tag(), "kind {:?}", kind);
            assert!(
                synthesize(&back).approx_eq(&g, 1e-9),
                "resynthesis mismatch for {:?}",
                kind
            );
        }
    }

    #[test]
    fn classify_rotation_angle_is_positive() {
        let axis = Line::new(V::zero(), V::axis(2));
        let g = Iso::rotation(axis, -PI / 3.0);
        match classify(&g) {
            IsometryKind::Rotation { angle, axis } => {
                assert!((angle - PI / 3.0).abs() < 1e-12);
                // axis flipped to make the angle positive
                assert!(axis.dir.approx_eq(&-V::axis(2), 1e-12));
            }
            other => panic!("expected rotation, got {:?}", other),
        }
    }

    #[test]
    fn classify_glide_has_in_plane_offset() {
        let plane = Plane::new(V::axis(1), V::zero());
        let g = compose(
            &Iso::translation(V::new(1.0, 0.0, 0.0)),
            &Iso::reflection(plane),
        );
        match classify(&g) {
            IsometryKind::Glide { offset, .. } => {
                assert!(offset.approx_eq(&V::new(1.0, 0.0, 0.0), 1e-12));
            }
            other => panic!("expected glide, got {:?}", other),
        }
    }
}
