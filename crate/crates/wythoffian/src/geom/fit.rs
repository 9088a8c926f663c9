use super::isometry::Isometry;
use super::{Mat3, Scalar, Vec3};

/// Isometry mapping `src[i] ↦ dst[i]` for every `i`, if one exists.
///
/// Builds candidate frames from the first sufficiently independent point
/// triple (trying both orientations) and verifies the full correspondence
/// within `tol`. Both tuples must have equal length ≥ 3 and must not be
/// collinear.
pub fn fit_correspondence<S: Scalar>(
    src: &[Vec3<S>],
    dst: &[Vec3<S>],
    tol: S,
) -> Option<Isometry<S>> {
    if src.len() != dst.len() || src.len() < 3 {
        return None;
    }
    let a0 = src[0];
    let b0 = dst[0];
    // first point making a well-conditioned edge
    let i1 = (1..src.len()).max_by(|&i, &j| {
        (src[i] - a0)
            .norm()
            .partial_cmp(&(src[j] - a0).norm())
            .unwrap()
    })?;
    let u1 = src[i1] - a0;
    if u1.norm() <= tol {
        return None;
    }
    // second point maximizing area
    let i2 = (1..src.len())
        .filter(|&i| i != i1)
        .max_by(|&i, &j| {
            u1.cross(&(src[i] - a0))
                .norm()
                .partial_cmp(&u1.cross(&(src[j] - a0)).norm())
                .unwrap()
        })?;
    let u2 = src[i2] - a0;
    if u1.cross(&u2).norm() <= tol * u1.norm() {
        return None; // collinear input
    }

    let frame = |p: Vec3<S>, q: Vec3<S>, flip: bool| -> Mat3<S> {
        let e1 = p.normalized();
        let e2 = q.reject(&e1).normalized();
        let e3 = if flip {
            -e1.cross(&e2)
        } else {
            e1.cross(&e2)
        };
        Mat3::from_cols(e1, e2, e3)
    };

    let fa = frame(u1, u2, false);
    for flip in [false, true] {
        let fb = frame(dst[i1] - b0, dst[i2] - b0, flip);
        let linear = fb.matmul(&fa.transpose());
        let g = Isometry::new(linear, b0 - linear.apply(&a0));
        if src
            .iter()
            .zip(dst)
            .all(|(a, b)| g.apply(a).approx_eq(b, tol))
        {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Line, Plane};

    type V = Vec3<f64>;
    type Iso = Isometry<f64>;

    #[test]
    fn recovers_a_rotation() {
        let g = Iso::rotation(Line::new(V::new(0.1, 0.2, 0.3), V::new(1.0, 1.0, 0.0)), 0.9);
        let src = [
            V::new(0.0, 0.0, 0.0),
            V::new(1.0, 0.0, 0.0),
            V::new(0.0, 1.0, 0.5),
            V::new(0.3, -0.4, 2.0),
        ];
        let dst: Vec<V> = src.iter().map(|p| g.apply(p)).collect();
        let fit = fit_correspondence(&src, &dst, 1e-9).unwrap();
        assert!(fit.approx_eq(&g, 1e-9));
    }

    #[test]
    fn recovers_an_improper_map() {
        let g = Iso::reflection(Plane::new(V::new(0.0, 1.0, 2.0), V::new(0.0, 0.5, 0.0)));
        // four non-coplanar points pin the orientation down
        let src = [
            V::new(0.0, 0.0, 0.0),
            V::new(1.0, 0.0, 0.0),
            V::new(0.0, 1.0, 0.5),
            V::new(0.2, 0.4, 1.5),
        ];
        let dst: Vec<V> = src.iter().map(|p| g.apply(p)).collect();
        let fit = fit_correspondence(&src, &dst, 1e-9).unwrap();
        assert!(fit.approx_eq(&g, 1e-9));
        assert!(fit.det() < 0.0);
    }

    #[test]
    fn rejects_impossible_correspondence() {
        let src = [V::zero(), V::axis(0), V::axis(1)];
        let dst = [V::zero(), V::axis(0).scale(2.0), V::axis(1)];
        assert!(fit_correspondence(&src, &dst, 1e-9).is_none());
    }
}
