//! From ℝ⁴ to S³ to the viewer's ℝ³.
//!
//! Conventions: the stereographic pole is `-1 = (-1, 0, 0, 0)`, so the
//! identity renders at the camera origin. A headset orientation `q` moves
//! the scene by left multiplication with `q̄`, which puts the player at the
//! S³ point `q` itself.
//!
//! Head axes are x right, y up, z backward. Under these conventions a small
//! yaw (about y) slides the scene along the projected y axis, pitch (about x)
//! along x, and roll (about z) along z, whatever the current orientation.

use thiserror::Error;

use crate::quat::UnitQuaternion;
use crate::scalar::Real;

pub type Point4<T> = [T; 4];
pub type Point3<T> = [T; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("cannot radially project the zero vector")]
    ZeroVector,
    #[error("point lies in the excluded band around the projection pole")]
    NearPole,
    #[error("subdivision level {0} exceeds the maximum of 6")]
    SubdivisionTooDeep(u32),
}

pub fn radial_project<T: Real>(v: Point4<T>) -> Result<UnitQuaternion<T>, ProjectionError> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt();
    if n.is_nan() || n <= T::lit(1e-12) {
        return Err(ProjectionError::ZeroVector);
    }
    if (n - T::one()).abs() <= T::epsilon() {
        return Ok(UnitQuaternion::from_unit_components(v[0], v[1], v[2], v[3]));
    }
    UnitQuaternion::from_array(v).map_err(|_| ProjectionError::ZeroVector)
}

/// Position of scene point `p` once the viewer holds orientation `q`.
#[inline]
pub fn scene_transform<T: Real>(q: &UnitQuaternion<T>, p: &UnitQuaternion<T>) -> UnitQuaternion<T> {
    q.conjugate().multiply(p)
}

/// Applies the scene transform to an arbitrary 4-vector (left multiplication
/// by `q̄` is linear, so normals transform the same way as points).
pub fn transform_vector<T: Real>(q: &UnitQuaternion<T>, v: Point4<T>) -> Point4<T> {
    let c = q.conjugate().to_array();
    let (aw, ax, ay, az) = (c[0], c[1], c[2], c[3]);
    let [bw, bx, by, bz] = v;
    [
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ]
}

/// `(x, y, z) / (1 + w)`, from the pole `(-1, 0, 0, 0)`.
pub fn stereographic<T: Real>(p: &UnitQuaternion<T>) -> Result<Point3<T>, ProjectionError> {
    let [w, x, y, z] = p.to_array();
    if w <= -T::one() + T::pole_epsilon() {
        return Err(ProjectionError::NearPole);
    }
    // Near the pole 1 + w cancels; 1 + w = (x² + y² + z²) / (1 − w) on S³.
    let denom = if w < T::zero() {
        (x * x + y * y + z * z) / (T::one() - w)
    } else {
        T::one() + w
    };
    Ok([x / denom, y / denom, z / denom])
}

pub fn inverse_stereographic<T: Real>(v: Point3<T>) -> UnitQuaternion<T> {
    let s = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    let d = T::one() + s;
    let two = T::lit(2.0);
    UnitQuaternion::from_unit_components((T::one() - s) / d, two * v[0] / d, two * v[1] / d, two * v[2] / d)
}

/// Stereographic projection from an arbitrary pole: the sphere is first
/// rotated so that `pole` lands on `-1`.
#[derive(Debug, Clone, Copy)]
pub struct PoleFrame<T> {
    pole: UnitQuaternion<T>,
    to_standard: UnitQuaternion<T>,
}

impl<T: Real> PoleFrame<T> {
    pub fn new(pole: UnitQuaternion<T>) -> Self {
        Self {
            pole,
            to_standard: -pole.conjugate(),
        }
    }

    pub fn pole(&self) -> UnitQuaternion<T> {
        self.pole
    }

    pub fn project(&self, p: &UnitQuaternion<T>) -> Result<Point3<T>, ProjectionError> {
        stereographic(&self.to_standard.multiply(p))
    }

    pub fn unproject(&self, v: Point3<T>) -> UnitQuaternion<T> {
        self.to_standard.conjugate().multiply(&inverse_stereographic(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::AxisAngle;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    type Q = UnitQuaternion<f64>;

    fn arb_quat() -> impl Strategy<Value = Q> {
        prop::array::uniform4(-1.0f64..1.0)
            .prop_filter("nonzero", |c| c.iter().map(|v| v * v).sum::<f64>() > 1e-2)
            .prop_map(|c| Q::from_array(c).unwrap())
    }

    fn q(w: f64, x: f64, y: f64, z: f64) -> Q {
        Q::new(w, x, y, z).unwrap()
    }

    #[test]
    fn radial_projection_cases() {
        assert_eq!(radial_project([2.0, 0.0, 0.0, 0.0]).unwrap(), Q::identity());
        let u = q(0.1, 0.7, -0.3, 0.2);
        assert_eq!(radial_project(u.to_array()).unwrap(), u);
        // oracle: |(1,1,1,1)| = sqrt(4) = 2
        let norm = (1.0f64 + 1.0 + 1.0 + 1.0).sqrt();
        let half = radial_project([1.0, 1.0, 1.0, 1.0]).unwrap();
        for c in half.to_array() {
            assert!((c - 1.0 / norm).abs() < 1e-15);
        }
        assert_eq!(
            radial_project([0.0f64; 4]).unwrap_err(),
            ProjectionError::ZeroVector
        );
    }

    #[test]
    fn scene_transform_cases() {
        let p = q(0.3, -0.2, 0.5, 0.1);
        assert_eq!(scene_transform(&Q::identity(), &p), p);
        let t = scene_transform(&p, &p);
        assert!(t.geodesic_distance(&Q::identity()) < 1e-12);
    }

    #[test]
    fn stereographic_cases() {
        assert_eq!(stereographic(&Q::identity()).unwrap(), [0.0, 0.0, 0.0]);
        let v = stereographic(&Q::i()).unwrap();
        assert_eq!(v, [1.0, 0.0, 0.0]);
        assert_eq!(inverse_stereographic(v), Q::i());
        assert_eq!(
            stereographic(&-Q::identity()).unwrap_err(),
            ProjectionError::NearPole
        );
        assert_eq!(inverse_stereographic([0.0, 0.0, 0.0]), Q::identity());
        let far = inverse_stereographic([1e8, 0.0, 0.0]);
        assert!(far.geodesic_distance(&-Q::identity()) < 1e-7);
    }

    #[test]
    fn player_motion_law() {
        let u = [0.3, -0.8, 0.5];
        for k in 0..=100 {
            let theta = 2.0 * PI * k as f64 / 100.0;
            let player = Q::from_axis_angle(&AxisAngle::new(u, theta).unwrap());
            let d = Q::identity().geodesic_distance(&player);
            assert!((d - theta / 2.0).abs() < 1e-9);
            // the player is the point drawn at the camera origin
            assert!(scene_transform(&player, &player).geodesic_distance(&Q::identity()) < 1e-12);
        }
    }

    /// Small relative yaw/pitch/roll displaces the scene along a single
    /// projected axis, independent of where the player is looking.
    #[test]
    fn head_motion_calibration() {
        let eps = 1e-3;
        let current = [Q::identity(), q(0.4, -0.3, 0.8, 0.2), q(-0.1, 0.9, 0.1, -0.4)];
        for (axis, moved) in [([1.0, 0.0, 0.0], 0), ([0.0, 1.0, 0.0], 1), ([0.0, 0.0, 1.0], 2)] {
            let delta = Q::from_axis_angle(&AxisAngle::new(axis, eps).unwrap());
            for c in current {
                let after = c * delta;
                // where the point the player was sitting on ends up
                let v = stereographic(&scene_transform(&after, &c)).unwrap();
                for k in 0..3 {
                    if k == moved {
                        assert!((v[k] + (eps / 4.0).tan()).abs() < 1e-12);
                    } else {
                        assert!(v[k].abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn pole_frame_standard() {
        let f = PoleFrame::new(-Q::identity());
        let p = q(0.5, 0.2, -0.1, 0.3);
        let a = f.project(&p).unwrap();
        let b = stereographic(&p).unwrap();
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-15);
        }
        assert!(f.project(&-Q::identity()).is_err());
        let g = PoleFrame::new(Q::i());
        assert!(g.project(&Q::i()).is_err());
        assert!(g.unproject(g.project(&p).unwrap()).geodesic_distance(&p) < 1e-12);
    }

    proptest! {
        #[test]
        fn round_trip_from_r3(v in prop::array::uniform3(-57.0f64..57.0)) {
            prop_assume!(v.iter().map(|c| c * c).sum::<f64>() <= 100.0 * 100.0);
            let back = stereographic(&inverse_stereographic(v)).unwrap();
            for k in 0..3 {
                prop_assert!((back[k] - v[k]).abs() <= 1e-12);
            }
        }

        #[test]
        fn round_trip_from_s3(p in arb_quat()) {
            prop_assume!(p.w() > -1.0 + 1e-3);
            let back = inverse_stereographic(stereographic(&p).unwrap());
            for (a, b) in back.to_array().iter().zip(p.to_array()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn scene_transform_is_a_left_action(q1 in arb_quat(), q2 in arb_quat(), p in arb_quat()) {
            let lhs = scene_transform(&q2, &scene_transform(&q1, &p));
            let rhs = scene_transform(&(q1 * q2), &p);
            for (a, b) in lhs.to_array().iter().zip(rhs.to_array()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn transform_vector_agrees_with_points(g in arb_quat(), p in arb_quat()) {
            let a = transform_vector(&g, p.to_array());
            let b = scene_transform(&g, &p).to_array();
            for k in 0..4 {
                prop_assert!((a[k] - b[k]).abs() <= 1e-15);
            }
        }
    }
}
