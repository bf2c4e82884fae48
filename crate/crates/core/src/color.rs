//! Colouring by the Hopf map S³ → S², with S² inscribed in the RGB cube.

use serde::Serialize;

use crate::quat::UnitQuaternion;
use crate::scalar::Real;

/// Strength of the normal-based shading term used by the exporters.
pub const DEFAULT_SHADING_STRENGTH: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColorRgb<T> {
    pub r: T,
    pub g: T,
    pub b: T,
}

impl<T: Real> ColorRgb<T> {
    /// Clamps each component to `[0, 1]`.
    pub fn new(r: T, g: T, b: T) -> Self {
        let c = |v: T| v.max(T::zero()).min(T::one());
        Self {
            r: c(r),
            g: c(g),
            b: c(b),
        }
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.r, self.g, self.b]
    }

    pub fn to_f64_array(&self) -> [f64; 3] {
        [self.r.as_f64(), self.g.as_f64(), self.b.as_f64()]
    }

    /// `round(255 v)` per channel.
    pub fn to_rgb8(&self) -> [u8; 3] {
        self.to_f64_array().map(|v| (255.0 * v).round() as u8)
    }
}

/// Imaginary part of `q i q̄`. Constant along the fibres `q (cos α + i sin α)`.
pub fn hopf_map<T: Real>(q: &UnitQuaternion<T>) -> [T; 3] {
    let [w, x, y, z] = q.to_array();
    let two = T::lit(2.0);
    [
        w * w + x * x - y * y - z * z,
        two * (x * y + w * z),
        two * (x * z - w * y),
    ]
}

pub fn base_color<T: Real>(p: &UnitQuaternion<T>) -> ColorRgb<T> {
    let h = hopf_map(p);
    let half = T::lit(0.5);
    ColorRgb::new((h[0] + T::one()) * half, (h[1] + T::one()) * half, (h[2] + T::one()) * half)
}

/// Base colour of `position` plus the zero-centred Hopf colour of the
/// surface normal, scaled by `strength`, clamped to the cube.
pub fn shaded_color<T: Real>(position: &UnitQuaternion<T>, normal: &UnitQuaternion<T>, strength: T) -> ColorRgb<T> {
    let base = base_color(position);
    let n = hopf_map(normal);
    let k = strength * T::lit(0.5);
    ColorRgb::new(base.r + k * n[0], base.g + k * n[1], base.b + k * n[2])
}
