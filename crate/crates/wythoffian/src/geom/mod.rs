//! Affine isometry arithmetic for Euclidean 3-space.
//!
//! Everything in this module is generic over the floating-point scalar via
//! [`Scalar`]; the rest of the crate works with the `f64` aliases exported
//! from the crate root.

pub mod classify;
pub mod fit;
pub mod isometry;
pub mod subspace;

pub use classify::{classify, synthesize, IsometryKind};
pub use fit::fit_correspondence;
pub use isometry::{compose, order_of, Isometry, MirrorInfo, NotInvolution};
pub use subspace::{fixed_space, intersect, AffineSubspace};

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_traits::{Float, FloatConst};

/// Floating-point scalar usable for 3D isometry arithmetic.
///
/// The associated tolerances are absolute, in model units; catalog
/// coordinates involve only small integers and square roots, so the defaults
/// leave a wide margin above roundoff for either width.
pub trait Scalar: Float + FloatConst + AddAssign + SubAssign + Debug + 'static {
    /// Tolerance for orthogonality / matrix-level checks.
    const EPS_ORTHO: Self;
    /// Tolerance for point coincidence.
    const EPS_POINT: Self;

    fn of(v: f64) -> Self;
}

impl Scalar for f64 {
    const EPS_ORTHO: Self = 1e-9;
    const EPS_POINT: Self = 1e-7;

    #[inline]
    fn of(v: f64) -> Self {
        v
    }
}

impl Scalar for f32 {
    const EPS_ORTHO: Self = 1e-4;
    const EPS_POINT: Self = 1e-3;

    #[inline]
    fn of(v: f64) -> Self {
        v as f32
    }
}

/// Point or direction in E³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Vec3<S> {
    pub const fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn axis(i: usize) -> Self {
        let mut v = Self::zero();
        *v.coord_mut(i) = S::one();
        v
    }

    pub fn coord(&self, i: usize) -> S {
        match i {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    pub fn coord_mut(&mut self, i: usize) -> &mut S {
        match i {
            0 => &mut self.x,
            1 => &mut self.y,
            _ => &mut self.z,
        }
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn norm(&self) -> S {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, o: &Self) -> S {
        (*self - *o).norm()
    }

    pub fn normalized(&self) -> Self {
        *self / self.norm()
    }

    pub fn scale(&self, s: S) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    /// True when every component is finite.
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn approx_eq(&self, o: &Self, tol: S) -> bool {
        self.dist(o) <= tol
    }

    /// Component of `self` orthogonal to the unit vector `u`.
    pub fn reject(&self, u: &Self) -> Self {
        *self - u.scale(self.dot(u))
    }

    /// Any unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthogonal(&self) -> Self {
        let probe = if self.x.abs() <= self.y.abs() && self.x.abs() <= self.z.abs() {
            Self::axis(0)
        } else if self.y.abs() <= self.z.abs() {
            Self::axis(1)
        } else {
            Self::axis(2)
        };
        self.cross(&probe).normalized()
    }
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<S: Scalar> Neg for Vec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<S: Scalar> Mul<S> for Vec3<S> {
    type Output = Self;
    fn mul(self, s: S) -> Self {
        self.scale(s)
    }
}

impl<S: Scalar> Div<S> for Vec3<S> {
    type Output = Self;
    fn div(self, s: S) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3<S> {
    pub m: [[S; 3]; 3],
}

impl<S: Scalar> Mat3<S> {
    pub fn identity() -> Self {
        let o = S::one();
        let z = S::zero();
        Self {
            m: [[o, z, z], [z, o, z], [z, z, o]],
        }
    }

    pub fn zero() -> Self {
        let z = S::zero();
        Self { m: [[z; 3]; 3] }
    }

    pub fn from_rows(r0: Vec3<S>, r1: Vec3<S>, r2: Vec3<S>) -> Self {
        Self {
            m: [
                [r0.x, r0.y, r0.z],
                [r1.x, r1.y, r1.z],
                [r2.x, r2.y, r2.z],
            ],
        }
    }

    pub fn from_cols(c0: Vec3<S>, c1: Vec3<S>, c2: Vec3<S>) -> Self {
        Self::from_rows(c0, c1, c2).transpose()
    }

    pub fn row(&self, i: usize) -> Vec3<S> {
        Vec3::new(self.m[i][0], self.m[i][1], self.m[i][2])
    }

    pub fn col(&self, j: usize) -> Vec3<S> {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    /// Outer product a·bᵀ.
    pub fn outer(a: &Vec3<S>, b: &Vec3<S>) -> Self {
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] = a.coord(i) * b.coord(j);
            }
        }
        r
    }

    pub fn transpose(&self) -> Self {
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] = self.m[j][i];
            }
        }
        r
    }

    pub fn det(&self) -> S {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn trace(&self) -> S {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn apply(&self, v: &Vec3<S>) -> Vec3<S> {
        Vec3::new(
            self.row(0).dot(v),
            self.row(1).dot(v),
            self.row(2).dot(v),
        )
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = S::zero();
                for (k, ok) in o.m.iter().enumerate() {
                    acc += self.m[i][k] * ok[j];
                }
                r.m[i][j] = acc;
            }
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] = self.m[i][j] + o.m[i][j];
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] = self.m[i][j] - o.m[i][j];
            }
        }
        r
    }

    pub fn scale(&self, s: S) -> Self {
        let mut r = *self;
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] = r.m[i][j] * s;
            }
        }
        r
    }

    /// Largest absolute entry, used for tolerance comparisons.
    pub fn max_abs(&self) -> S {
        let mut best = S::zero();
        for row in &self.m {
            for &e in row {
                if e.abs() > best {
                    best = e.abs();
                }
            }
        }
        best
    }

    pub fn approx_eq(&self, o: &Self, tol: S) -> bool {
        self.sub(o).max_abs() <= tol
    }

    /// Orthonormal basis of the null space (within `tol`), by Gaussian
    /// elimination with full pivoting. Intended for symmetric PSD inputs.
    pub fn null_space(&self, tol: S) -> Vec<Vec3<S>> {
        let mut a = self.m;
        let mut row_perm = [0usize, 1, 2];
        let mut col_perm = [0usize, 1, 2];
        let mut rank = 0;
        for step in 0..3 {
            // full pivot
            let (mut pi, mut pj, mut pv) = (step, step, S::zero());
            for i in step..3 {
                for j in step..3 {
                    if a[i][j].abs() > pv {
                        pv = a[i][j].abs();
                        pi = i;
                        pj = j;
                    }
                }
            }
            if pv <= tol {
                break;
            }
            a.swap(step, pi);
            row_perm.swap(step, pi);
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
            col_perm.swap(step, pj);
            for i in (step + 1)..3 {
                let f = a[i][step] / a[step][step];
                for j in step..3 {
                    a[i][j] = a[i][j] - f * a[step][j];
                }
            }
            rank += 1;
        }
        // back-substitute one basis vector per free column
        let mut basis = Vec::new();
        for free in rank..3 {
            let mut x = [S::zero(); 3]; // in permuted coords
            x[free] = S::one();
            for i in (0..rank).rev() {
                let mut acc = S::zero();
                for j in (i + 1)..3 {
                    acc += a[i][j] * x[j];
                }
                x[i] = -acc / a[i][i];
            }
            let mut v = Vec3::zero();
            for (pj, &cj) in col_perm.iter().enumerate() {
                *v.coord_mut(cj) = x[pj];
            }
            basis.push(v);
        }
        orthonormalize(&mut basis);
        basis
    }

    /// Least-norm solution of `self · x = b` restricted to the row space,
    /// assuming `self` is symmetric PSD; pair with [`Mat3::null_space`].
    pub fn solve_psd(&self, b: &Vec3<S>, tol: S) -> Vec3<S> {
        // Solve by elimination on the augmented system with full pivoting on
        // the matrix part, dropping rows below tolerance.
        let mut a = self.m;
        let mut rhs = [b.x, b.y, b.z];
        let mut col_perm = [0usize, 1, 2];
        let mut rank = 0;
        for step in 0..3 {
            let (mut pi, mut pj, mut pv) = (step, step, S::zero());
            for i in step..3 {
                for j in step..3 {
                    if a[i][j].abs() > pv {
                        pv = a[i][j].abs();
                        pi = i;
                        pj = j;
                    }
                }
            }
            if pv <= tol {
                break;
            }
            a.swap(step, pi);
            rhs.swap(step, pi);
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
            col_perm.swap(step, pj);
            for i in (step + 1)..3 {
                let f = a[i][step] / a[step][step];
                for j in step..3 {
                    a[i][j] = a[i][j] - f * a[step][j];
                }
                rhs[i] = rhs[i] - f * rhs[step];
            }
            rank += 1;
        }
        let mut x = [S::zero(); 3];
        for i in (0..rank).rev() {
            let mut acc = rhs[i];
            for j in (i + 1)..3 {
                acc = acc - a[i][j] * x[j];
            }
            x[i] = acc / a[i][i];
        }
        let mut v = Vec3::zero();
        for (pj, &cj) in col_perm.iter().enumerate() {
            *v.coord_mut(cj) = x[pj];
        }
        v
    }
}

/// Gram-Schmidt in place; drops near-zero vectors.
pub fn orthonormalize<S: Scalar>(vs: &mut Vec<Vec3<S>>) {
    let mut out: Vec<Vec3<S>> = Vec::new();
    for v in vs.iter() {
        let mut w = *v;
        for u in &out {
            w = w - u.scale(w.dot(u));
        }
        if w.norm() > S::of(1e-12) {
            out.push(w.normalized());
        }
    }
    *vs = out;
}

/// Plane `{ x : normal·x = offset }` with unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane<S> {
    pub normal: Vec3<S>,
    pub offset: S,
}

impl<S: Scalar> Plane<S> {
    /// Plane with the given (not necessarily unit) normal through `point`.
    pub fn new(normal: Vec3<S>, point: Vec3<S>) -> Self {
        let n = normal.normalized();
        Self {
            normal: n,
            offset: n.dot(&point),
        }
    }

    pub fn signed_dist(&self, p: &Vec3<S>) -> S {
        self.normal.dot(p) - self.offset
    }

    pub fn contains(&self, p: &Vec3<S>, tol: S) -> bool {
        self.signed_dist(p).abs() <= tol
    }

    pub fn project(&self, p: &Vec3<S>) -> Vec3<S> {
        *p - self.normal.scale(self.signed_dist(p))
    }
}

/// Line through `point` with unit direction `dir`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line<S> {
    pub point: Vec3<S>,
    pub dir: Vec3<S>,
}

impl<S: Scalar> Line<S> {
    pub fn new(point: Vec3<S>, dir: Vec3<S>) -> Self {
        let d = dir.normalized();
        // anchor at the point of the line closest to the origin, so equal
        // lines compare equal
        let p = point - d.scale(point.dot(&d));
        Self { point: p, dir: d }
    }

    pub fn dist(&self, p: &Vec3<S>) -> S {
        (*p - self.point).reject(&self.dir).norm()
    }
}

/// Eigen-decomposition of a symmetric 3×3 matrix: `(eigenvalues, eigenvectors)`
/// with eigenvalues ascending and unit eigenvectors as matching columns.
///
/// Analytic method: eigenvalues via the trigonometric form of the cubic,
/// eigenvectors via cross products of rows of `A - λI`.
pub fn eigen_sym3<S: Scalar>(a: &Mat3<S>) -> ([S; 3], [Vec3<S>; 3]) {
    let one = S::one();
    let two = S::of(2.0);
    let three = S::of(3.0);
    let half = S::of(0.5);

    let q = a.trace() / three;
    let b = a.sub(&Mat3::identity().scale(q));
    let mut p2 = S::zero();
    for i in 0..3 {
        for j in 0..3 {
            p2 += b.m[i][j] * b.m[i][j];
        }
    }
    let p = (p2 / S::of(6.0)).sqrt();
    let mut eig = if p <= S::of(1e-300) {
        [q, q, q]
    } else {
        let bb = b.scale(one / p);
        let r = bb.det() * half;
        let r = r.max(-one).min(one);
        let phi = r.acos() / three;
        let e1 = q + two * p * phi.cos();
        let e3 = q + two * p * (phi + two * S::PI() / three).cos();
        let e2 = three * q - e1 - e3;
        [e1, e2, e3]
    };
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let scale = a.max_abs().max(one);
    let mut vecs: Vec<Vec3<S>> = Vec::new();
    for &lambda in &eig {
        let m = a.sub(&Mat3::identity().scale(lambda));
        // best cross product of two rows
        let mut best = Vec3::zero();
        let mut best_n = S::zero();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let c = m.row(i).cross(&m.row(j));
                if c.norm() > best_n {
                    best_n = c.norm();
                    best = c;
                }
            }
        }
        if best_n <= scale * scale * S::of(1e-12) {
            // (near-)repeated eigenvalue: null space is 2- or 3-dimensional
            let ns = m.null_space(scale * S::of(1e-7));
            for v in ns {
                let mut w = v;
                for u in &vecs {
                    w = w - u.scale(w.dot(u));
                }
                if w.norm() > S::of(1e-6) {
                    vecs.push(w.normalized());
                    break;
                }
            }
        } else {
            let mut w = best.normalized();
            for u in &vecs {
                w = w - u.scale(w.dot(u));
            }
            if w.norm() > S::of(1e-6) {
                vecs.push(w.normalized());
            }
        }
        while vecs.len() < vecs.capacity().min(3) {
            break;
        }
    }
    // complete the basis if degeneracy dropped vectors
    while vecs.len() < 3 {
        for i in 0..3 {
            let mut w = Vec3::axis(i);
            for u in &vecs {
                w = w - u.scale(w.dot(u));
            }
            if w.norm() > S::of(1e-6) {
                vecs.push(w.normalized());
                break;
            }
        }
    }
    (eig, [vecs[0], vecs[1], vecs[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = Vec3<f64>;

    #[test]
    fn cross_follows_right_hand_rule() {
        let c = V::axis(0).cross(&V::axis(1));
        assert!(c.approx_eq(&V::axis(2), 1e-15));
    }

    #[test]
    fn null_space_of_projection() {
        // 4·e_y e_yᵀ has null space span{e_x, e_z}
        let a = Mat3::outer(&V::axis(1), &V::axis(1)).scale(4.0);
        let ns = a.null_space(1e-9);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v.y.abs() < 1e-12);
        }
    }

    #[test]
    fn eigen_sym3_diagonal() {
        let mut a = Mat3::zero();
        a.m[0][0] = 3.0;
        a.m[1][1] = -1.0;
        a.m[2][2] = 2.0;
        let (eig, vecs) = eigen_sym3(&a);
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 2.0).abs() < 1e-12);
        assert!((eig[2] - 3.0).abs() < 1e-12);
        assert!(vecs[0].y.abs() > 0.99);
        assert!(vecs[2].x.abs() > 0.99);
    }

    #[test]
    fn eigen_sym3_repeated() {
        // reflection matrix: eigenvalues -1, 1, 1
        let n = V::new(1.0, 1.0, 0.0).normalized();
        let a = Mat3::identity().sub(&Mat3::outer(&n, &n).scale(2.0));
        let (eig, vecs) = eigen_sym3(&a);
        assert!((eig[0] + 1.0).abs() < 1e-10);
        assert!((eig[1] - 1.0).abs() < 1e-10);
        assert!((eig[2] - 1.0).abs() < 1e-10);
        assert!(vecs[0].cross(&n).norm() < 1e-8);
    }

    #[test]
    fn solve_psd_full_rank() {
        let mut a = Mat3::zero();
        a.m[0][0] = 2.0;
        a.m[1][1] = 5.0;
        a.m[2][2] = 1.0;
        let x = a.solve_psd(&V::new(4.0, 10.0, 3.0), 1e-12);
        assert!(x.approx_eq(&V::new(2.0, 2.0, 3.0), 1e-12));
    }
}
