//! Unit quaternions as points of the 3-sphere and as rotations of 3-space.
//!
//! Components are always ordered scalar first, `(w, x, y, z)`, in memory,
//! in accessors and on the wire.

use std::ops::{Mul, Neg};

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuatError {
    #[error("quaternion has zero norm")]
    ZeroNorm,
    #[error("quaternion has non-finite components")]
    NonFinite,
    #[error("quaternion norm {0} outside the accepted window [0.5, 2]")]
    NormOutOfRange(f64),
    #[error("rotation axis has zero length")]
    ZeroAxis,
    #[error("endpoints are antipodal; the geodesic between them is not unique")]
    AntipodalPair,
}

/// A point of S³, equivalently a unit quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion<T> {
    w: T,
    x: T,
    y: T,
    z: T,
}

impl<T: Real> UnitQuaternion<T> {
    /// Normalizes `(w, x, y, z)` onto S³.
    pub fn new(w: T, x: T, y: T, z: T) -> Result<Self, QuatError> {
        Self::from_array([w, x, y, z])
    }

    pub fn from_array(c: [T; 4]) -> Result<Self, QuatError> {
        if c.iter().any(|v| !v.is_finite()) {
            return Err(QuatError::NonFinite);
        }
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]).sqrt();
        if n < T::lit(1e-12) {
            return Err(QuatError::ZeroNorm);
        }
        Ok(Self {
            w: c[0] / n,
            x: c[1] / n,
            y: c[2] / n,
            z: c[3] / n,
        })
    }

    /// Validates an externally supplied `[w, x, y, z]` array: finite, norm
    /// within `[0.5, 2]`, then renormalized.
    pub fn from_wire(c: [f64; 4]) -> Result<Self, QuatError> {
        if c.iter().any(|v| !v.is_finite()) {
            return Err(QuatError::NonFinite);
        }
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]).sqrt();
        if !(0.5..=2.0).contains(&n) {
            return Err(QuatError::NormOutOfRange(n));
        }
        let [w, x, y, z] = c.map(T::lit);
        Ok(Self::from_unit_components(w, x, y, z))
    }

    /// Renormalizes input that is already unit up to rounding.
    #[inline]
    pub(crate) fn from_unit_components(w: T, x: T, y: T, z: T) -> Self {
        let n2 = w * w + x * x + y * y + z * z;
        if (n2 - T::one()).abs() <= T::epsilon() {
            Self { w, x, y, z }
        } else {
            let n = n2.sqrt();
            Self {
                w: w / n,
                x: x / n,
                y: y / n,
                z: z / n,
            }
        }
    }

    pub fn identity() -> Self {
        Self {
            w: T::one(),
            x: T::zero(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            w: T::zero(),
            x: T::one(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn j() -> Self {
        Self {
            w: T::zero(),
            x: T::zero(),
            y: T::one(),
            z: T::zero(),
        }
    }

    pub fn k() -> Self {
        Self {
            w: T::zero(),
            x: T::zero(),
            y: T::zero(),
            z: T::one(),
        }
    }

    #[inline]
    pub fn w(&self) -> T {
        self.w
    }
    #[inline]
    pub fn x(&self) -> T {
        self.x
    }
    #[inline]
    pub fn y(&self) -> T {
        self.y
    }
    #[inline]
    pub fn z(&self) -> T {
        self.z
    }

    #[inline]
    pub fn to_array(&self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn to_f64_array(&self) -> [f64; 4] {
        self.to_array().map(Real::as_f64)
    }

    pub fn cast<S: Real>(&self) -> UnitQuaternion<S> {
        UnitQuaternion::from_unit_components(
            S::lit(self.w.as_f64()),
            S::lit(self.x.as_f64()),
            S::lit(self.y.as_f64()),
            S::lit(self.z.as_f64()),
        )
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    /// Hamilton product `self · rhs`.
    pub fn multiply(&self, rhs: &Self) -> Self {
        let (a, b) = (self, rhs);
        Self::from_unit_components(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }

    /// Group inverse on S³.
    #[inline]
    pub fn conjugate(&self) -> Self {
        Self {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> T {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Arc length on S³ (not on RP³: `q` and `-q` are at distance π).
    ///
    /// Equal to `acos(clamp(p·q))`; evaluated as `2·atan2(|p−q|, |p+q|)`,
    /// which keeps full precision near 0 and π.
    pub fn geodesic_distance(&self, other: &Self) -> T {
        let a = self.to_array();
        let b = other.to_array();
        let mut diff = T::zero();
        let mut sum = T::zero();
        for k in 0..4 {
            diff = diff + (a[k] - b[k]) * (a[k] - b[k]);
            sum = sum + (a[k] + b[k]) * (a[k] + b[k]);
        }
        T::lit(2.0) * diff.sqrt().atan2(sum.sqrt())
    }

    pub fn from_axis_angle(a: &AxisAngle<T>) -> Self {
        let half = a.angle / T::lit(2.0);
        let (s, c) = half.sin_cos();
        Self::from_unit_components(c, a.axis[0] * s, a.axis[1] * s, a.axis[2] * s)
    }

    /// Axis and angle in `[0, 2π]`; the identity maps to the x axis with angle 0.
    pub fn to_axis_angle(&self) -> AxisAngle<T> {
        let s = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        if s <= T::epsilon() {
            let angle = if self.w < T::zero() {
                T::lit(2.0) * T::PI()
            } else {
                T::zero()
            };
            return AxisAngle {
                axis: [T::one(), T::zero(), T::zero()],
                angle,
            };
        }
        AxisAngle {
            axis: [self.x / s, self.y / s, self.z / s],
            angle: T::lit(2.0) * s.atan2(self.w),
        }
    }

    /// The rotation represented by `self`; `q` and `-q` give the same matrix.
    pub fn to_rotation_matrix(&self) -> RotationMatrix3<T> {
        let (w, x, y, z) = (self.w, self.x, self.y, self.z);
        let one = T::one();
        let two = T::lit(2.0);
        RotationMatrix3 {
            m: [
                [
                    one - two * (y * y + z * z),
                    two * (x * y - w * z),
                    two * (x * z + w * y),
                ],
                [
                    two * (x * y + w * z),
                    one - two * (x * x + z * z),
                    two * (y * z - w * x),
                ],
                [
                    two * (x * z - w * y),
                    two * (y * z + w * x),
                    one - two * (x * x + y * y),
                ],
            ],
        }
    }

    /// Rotates a 3-vector by the rotation this quaternion represents.
    pub fn rotate_vector(&self, v: [T; 3]) -> [T; 3] {
        self.to_rotation_matrix().apply(v)
    }

    /// Returns `cur` or `-cur`, whichever is on the same side as `prev`.
    /// A dot product of exactly zero keeps `cur`.
    pub fn resolve_sign(prev: &Self, cur: &Self) -> Self {
        if prev.dot(cur) < T::zero() {
            -*cur
        } else {
            *cur
        }
    }

    /// Spherical interpolation along the minor arc from `self` to `other`.
    pub fn slerp(&self, other: &Self, t: T) -> Result<Self, QuatError> {
        let theta = self.geodesic_distance(other);
        if theta >= T::PI() - T::lit(1e-9) {
            return Err(QuatError::AntipodalPair);
        }
        if t <= T::zero() {
            return Ok(*self);
        }
        if t >= T::one() {
            return Ok(*other);
        }
        let (a, b) = if theta <= T::lit(1e-12) {
            (T::one() - t, t)
        } else {
            let s = theta.sin();
            (
                ((T::one() - t) * theta).sin() / s,
                (t * theta).sin() / s,
            )
        };
        let p = self.to_array();
        let q = other.to_array();
        Self::from_array([
            a * p[0] + b * q[0],
            a * p[1] + b * q[1],
            a * p[2] + b * q[2],
            a * p[3] + b * q[3],
        ])
    }
}

impl<T: Real> Mul for UnitQuaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs)
    }
}

impl<T: Real> Neg for UnitQuaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            w: -self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl<T: Real> Default for UnitQuaternion<T> {
    fn default() -> Self {
        Self::identity()
    }
}

/// Rotation by `angle` radians about a unit `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle<T> {
    axis: [T; 3],
    angle: T,
}

impl<T: Real> AxisAngle<T> {
    /// Normalizes `axis`; fails on a zero or non-finite axis.
    pub fn new(axis: [T; 3], angle: T) -> Result<Self, QuatError> {
        if axis.iter().any(|v| !v.is_finite()) || !angle.is_finite() {
            return Err(QuatError::NonFinite);
        }
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n < T::lit(1e-12) {
            return Err(QuatError::ZeroAxis);
        }
        Ok(Self {
            axis: [axis[0] / n, axis[1] / n, axis[2] / n],
            angle,
        })
    }

    pub fn axis(&self) -> [T; 3] {
        self.axis
    }

    pub fn angle(&self) -> T {
        self.angle
    }
}

/// Row-major 3×3 matrix, expected to lie in SO(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix3<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Real> RotationMatrix3<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self {
            m: [[o, z, z], [z, o, z], [z, z, o]],
        }
    }

    pub fn apply(&self, v: [T; 3]) -> [T; 3] {
        let m = &self.m;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = [[T::zero(); 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[r][k] * rhs.m[k][c]).sum();
            }
        }
        Self { m: out }
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Self {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    pub fn determinant(&self) -> T {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest elementwise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..3 {
            for c in 0..3 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).abs());
            }
        }
        worst
    }

    /// Orthogonal with determinant 1, both within `tol`.
    pub fn is_rotation(&self, tol: T) -> bool {
        self.matmul(&self.transpose())
            .max_abs_diff(&Self::identity())
            <= tol
            && (self.determinant() - T::one()).abs() <= tol
    }
}
