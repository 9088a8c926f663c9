use super::isometry::Isometry;
use super::{orthonormalize, Mat3, Scalar, Vec3};

/// Affine subspace of E³ as a basepoint plus an orthonormal direction basis.
#[derive(Clone, Debug)]
pub struct AffineSubspace<S> {
    pub basepoint: Vec3<S>,
    pub directions: Vec<Vec3<S>>,
}

impl<S: Scalar> AffineSubspace<S> {
    pub fn whole_space() -> Self {
        Self {
            basepoint: Vec3::zero(),
            directions: vec![Vec3::axis(0), Vec3::axis(1), Vec3::axis(2)],
        }
    }

    pub fn point(p: Vec3<S>) -> Self {
        Self {
            basepoint: p,
            directions: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Orthogonal projection of `p` onto the subspace.
    pub fn project(&self, p: &Vec3<S>) -> Vec3<S> {
        let d = *p - self.basepoint;
        let mut q = self.basepoint;
        for u in &self.directions {
            q = q + u.scale(d.dot(u));
        }
        q
    }

    pub fn contains(&self, p: &Vec3<S>, tol: S) -> bool {
        self.project(p).dist(p) <= tol
    }

    /// Coordinates of (the projection of) `p` in the direction basis,
    /// relative to `origin` (which should lie in the subspace).
    pub fn coords(&self, origin: &Vec3<S>, p: &Vec3<S>) -> Vec<S> {
        let d = *p - *origin;
        self.directions.iter().map(|u| d.dot(u)).collect()
    }

    /// Point with the given coordinates relative to `origin`.
    pub fn point_at(&self, origin: &Vec3<S>, coords: &[S]) -> Vec3<S> {
        let mut p = *origin;
        for (u, &c) in self.directions.iter().zip(coords) {
            p = p + u.scale(c);
        }
        p
    }

    /// True when the whole subspace is fixed pointwise by `g`, within `tol`.
    pub fn fixed_by(&self, g: &Isometry<S>, tol: S) -> bool {
        if !g.apply(&self.basepoint).approx_eq(&self.basepoint, tol) {
            return false;
        }
        self.directions
            .iter()
            .all(|u| g.apply(&(self.basepoint + *u)).approx_eq(&(self.basepoint + *u), tol))
    }
}

/// Common fixed-point set of a family of isometries, or `None` when empty.
///
/// Stacks the linear conditions `(Lₖ − I)p = −tₖ` into the normal equations
/// `A p = b` with `A = Σ (Lₖ−I)ᵀ(Lₖ−I)` symmetric PSD; the solution is checked
/// against every generator, and the null space of `A` supplies the
/// directions. With an empty family this is the whole space.
pub fn fixed_space<S: Scalar>(gens: &[&Isometry<S>]) -> Option<AffineSubspace<S>> {
    if gens.is_empty() {
        return Some(AffineSubspace::whole_space());
    }
    let mut a = Mat3::zero();
    let mut b = Vec3::zero();
    for g in gens {
        let d = g.linear.sub(&Mat3::identity());
        let dt = d.transpose();
        a = a.add(&dt.matmul(&d));
        b = b - dt.apply(&g.shift);
    }
    let tol = S::of(1e-9);
    let p = a.solve_psd(&b, tol);
    for g in gens {
        if !g.apply(&p).approx_eq(&p, S::of(100.0) * S::EPS_POINT) {
            return None;
        }
    }
    let mut dirs = a.null_space(tol);
    orthonormalize(&mut dirs);
    Some(AffineSubspace {
        basepoint: p,
        directions: dirs,
    })
}

/// Intersection of two affine subspaces, or `None` when empty.
pub fn intersect<S: Scalar>(
    u: &AffineSubspace<S>,
    v: &AffineSubspace<S>,
) -> Option<AffineSubspace<S>> {
    // Treat each subspace as the fixed set of the orthogonal reflection
    // through it, then intersect the fixed sets.
    let refl = |s: &AffineSubspace<S>| -> Isometry<S> {
        // x ↦ 2·proj(x) − x, with linear part 2P − I and the basepoint fixed
        let mut lin = Mat3::identity().scale(-S::one());
        for d in &s.directions {
            lin = lin.add(&Mat3::outer(d, d).scale(S::of(2.0)));
        }
        let t = s.basepoint - lin.apply(&s.basepoint);
        Isometry::new(lin, t)
    };
    let ru = refl(u);
    let rv = refl(v);
    fixed_space(&[&ru, &rv])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Line, Plane};

    type V = Vec3<f64>;
    type Iso = Isometry<f64>;

    #[test]
    fn fixed_space_of_two_reflections_is_their_plane_intersection() {
        let a = Iso::reflection(Plane::new(V::axis(1), V::zero())); // y = 0
        let b = Iso::reflection(Plane::new(V::axis(0), V::axis(0))); // x = 1
        let s = fixed_space(&[&a, &b]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&V::new(1.0, 0.0, 5.0), 1e-9));
        assert!(!s.contains(&V::new(1.0, 0.1, 0.0), 1e-9));
    }

    #[test]
    fn fixed_space_empty_for_disjoint_planes() {
        let a = Iso::reflection(Plane::new(V::axis(2), V::zero())); // z = 0
        let b = Iso::reflection(Plane::new(V::axis(2), V::axis(2))); // z = 1
        assert!(fixed_space(&[&a, &b]).is_none());
    }

    #[test]
    fn fixed_space_of_halfturn_is_its_axis() {
        let axis = Line::new(V::new(0.5, 0.0, 0.5), V::axis(1));
        let g = Iso::halfturn(axis);
        let s = fixed_space(&[&g]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&V::new(0.5, -2.0, 0.5), 1e-8));
    }

    #[test]
    fn intersect_line_with_plane() {
        let line = AffineSubspace {
            basepoint: V::new(0.5, 0.0, 0.5),
            directions: vec![V::axis(1)],
        };
        let plane = AffineSubspace {
            basepoint: V::zero(),
            directions: vec![V::axis(0), V::axis(1)],
        };
        // line z = 0.5 does not meet plane z = 0
        assert!(intersect(&line, &plane).is_none());

        let plane2 = AffineSubspace {
            basepoint: V::new(0.0, 0.0, 0.5),
            directions: vec![V::axis(0), V::axis(1)],
        };
        let s = intersect(&line, &plane2).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&V::new(0.5, 7.0, 0.5), 1e-8));
    }
}
