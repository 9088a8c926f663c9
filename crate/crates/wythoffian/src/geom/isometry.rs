use super::{Line, Mat3, Plane, Scalar, Vec3};

/// Euclidean motion `x ↦ linear·x + shift` with orthogonal linear part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry<S> {
    pub linear: Mat3<S>,
    pub shift: Vec3<S>,
}

/// Fixed-point set of an involutory isometry.
///
/// `dimension` is the affine dimension of the fixed set: 0 for point
/// reflections, 1 for halfturns, 2 for plane reflections, 3 for the identity
/// (whole space fixed, no directions stored beyond the spanning set).
#[derive(Clone, Debug)]
pub struct MirrorInfo<S> {
    pub dimension: usize,
    pub basepoint: Vec3<S>,
    pub directions: Vec<Vec3<S>>,
}

/// Error for [`Isometry::mirror`] on a non-involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("isometry is not an involution")]
pub struct NotInvolution;

impl<S: Scalar> Isometry<S> {
    pub fn new(linear: Mat3<S>, shift: Vec3<S>) -> Self {
        Self { linear, shift }
    }

    pub fn identity() -> Self {
        Self::new(Mat3::identity(), Vec3::zero())
    }

    /// Reflection in the given plane.
    pub fn reflection(plane: Plane<S>) -> Self {
        let n = plane.normal;
        let linear = Mat3::identity().sub(&Mat3::outer(&n, &n).scale(S::of(2.0)));
        let shift = n.scale(S::of(2.0) * plane.offset);
        Self::new(linear, shift)
    }

    /// Rotation by `angle` about the line.
    pub fn rotation(axis: Line<S>, angle: S) -> Self {
        let u = axis.dir;
        let c = angle.cos();
        let s = angle.sin();
        let ux = Mat3::from_rows(
            Vec3::new(S::zero(), -u.z, u.y),
            Vec3::new(u.z, S::zero(), -u.x),
            Vec3::new(-u.y, u.x, S::zero()),
        );
        let linear = Mat3::identity()
            .scale(c)
            .add(&ux.scale(s))
            .add(&Mat3::outer(&u, &u).scale(S::one() - c));
        // fix the anchor point of the axis
        let shift = axis.point - linear.apply(&axis.point);
        Self::new(linear, shift)
    }

    pub fn halfturn(axis: Line<S>) -> Self {
        Self::rotation(axis, S::PI())
    }

    pub fn point_reflection(center: Vec3<S>) -> Self {
        Self::new(Mat3::identity().scale(-S::one()), center.scale(S::of(2.0)))
    }

    pub fn translation(offset: Vec3<S>) -> Self {
        Self::new(Mat3::identity(), offset)
    }

    pub fn apply(&self, p: &Vec3<S>) -> Vec3<S> {
        self.linear.apply(p) + self.shift
    }

    /// Apply only the linear part (for directions).
    pub fn apply_dir(&self, v: &Vec3<S>) -> Vec3<S> {
        self.linear.apply(v)
    }

    pub fn inverse(&self) -> Self {
        let lt = self.linear.transpose();
        Self::new(lt, -lt.apply(&self.shift))
    }

    pub fn det(&self) -> S {
        self.linear.det()
    }

    pub fn is_identity(&self, tol: S) -> bool {
        self.linear.approx_eq(&Mat3::identity(), tol) && self.shift.norm() <= tol
    }

    /// Componentwise equality of linear and shift within `tol`.
    pub fn approx_eq(&self, o: &Self, tol: S) -> bool {
        self.linear.approx_eq(&o.linear, tol) && self.shift.approx_eq(&o.shift, tol)
    }

    /// Orthogonality of the linear part and |det| = 1, within EPS_ORTHO.
    pub fn is_valid(&self) -> bool {
        let gram = self.linear.transpose().matmul(&self.linear);
        gram.approx_eq(&Mat3::identity(), S::EPS_ORTHO)
            && (self.det().abs() - S::one()).abs() <= S::EPS_ORTHO
            && self.shift.is_finite()
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity(S::EPS_POINT)
            && compose(self, self).is_identity(S::of(10.0) * S::EPS_POINT)
    }

    /// Fixed-point set of an involution (or the identity).
    ///
    /// Every affine involution fixes the midpoint of `p` and its image, so
    /// the fixed set is never empty; its direction space is the +1 eigenspace
    /// of the linear part, extracted from the projection `(L + I)/2`.
    pub fn mirror(&self) -> Result<MirrorInfo<S>, NotInvolution> {
        if self.is_identity(S::EPS_POINT) {
            return Ok(MirrorInfo {
                dimension: 3,
                basepoint: Vec3::zero(),
                directions: vec![Vec3::axis(0), Vec3::axis(1), Vec3::axis(2)],
            });
        }
        if !compose(self, self).is_identity(S::of(10.0) * S::EPS_POINT) {
            return Err(NotInvolution);
        }
        let basepoint = self.shift.scale(S::of(0.5));
        debug_assert!(self.apply(&basepoint).approx_eq(&basepoint, S::EPS_POINT));
        let proj = self.linear.add(&Mat3::identity()).scale(S::of(0.5));
        // dimension from the trace; directions by orthonormalizing the
        // projection's columns
        let dim_f = proj.trace();
        let dimension = (dim_f + S::of(0.5)).floor().to_f64().unwrap_or(0.0) as usize;
        let mut dirs: Vec<Vec3<S>> = (0..3).map(|j| proj.col(j)).collect();
        super::orthonormalize(&mut dirs);
        dirs.truncate(dimension);
        Ok(MirrorInfo {
            dimension,
            basepoint,
            directions: dirs,
        })
    }
}

impl<S: Scalar> MirrorInfo<S> {
    /// True when `p` lies in the fixed subspace within `tol`.
    pub fn contains(&self, p: &Vec3<S>, tol: S) -> bool {
        let mut d = *p - self.basepoint;
        for u in &self.directions {
            d = d - u.scale(d.dot(u));
        }
        d.norm() <= tol
    }
}

/// Composition: the result applies `b` first, then `a`.
pub fn compose<S: Scalar>(a: &Isometry<S>, b: &Isometry<S>) -> Isometry<S> {
    Isometry::new(
        a.linear.matmul(&b.linear),
        a.linear.apply(&b.shift) + a.shift,
    )
}

/// Order of `g` as a group element: smallest `k ≤ max` with `g^k = 1`.
pub fn order_of<S: Scalar>(g: &Isometry<S>, max: usize) -> Option<usize> {
    let mut acc = *g;
    for k in 1..=max {
        if acc.is_identity(S::of(100.0) * S::EPS_POINT) {
            return Some(k);
        }
        acc = compose(&acc, g);
    }
    None
}
