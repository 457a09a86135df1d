//! Euclidean primitives used to metrize triangles and links.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Tolerance for assertions on derived geometric quantities.
pub const TOL: f64 = 1e-9;
/// Tolerance for pure closed-form identities.
pub const FORMULA_TOL: f64 = 1e-12;

/// An angle in radians. Always finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() || radians < 0.0 {
            return Err(Error::Domain(format!("angle must be finite and >= 0, got {radians}")));
        }
        Ok(Angle(radians))
    }

    /// Angle given as a fraction of a full turn, `num / den * 2pi`.
    pub fn of_turn(num: f64, den: f64) -> Self {
        Angle(num / den * 2.0 * PI)
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}", self.0)
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle(self.0 + rhs.0)
    }
}

impl std::iter::Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(iter: I) -> Angle {
        Angle(iter.map(|a| a.0).sum())
    }
}

/// Base of the isosceles triangle with unit legs and apex angle `alpha`.
pub fn phi(alpha: f64) -> Result<f64> {
    if !(0.0..PI).contains(&alpha) {
        return Err(Error::Domain(format!("phi expects alpha in [0, pi), got {alpha}")));
    }
    Ok(2.0 * (alpha / 2.0).sin())
}

/// Angle between `leg1` and `leg2` in the Euclidean triangle whose third
/// side is `opposite`. Uses the half-angle form, which stays accurate for
/// thin triangles.
pub fn corner_angle(opposite: f64, leg1: f64, leg2: f64) -> Result<Angle> {
    if [opposite, leg1, leg2].iter().any(|x| x.is_nan()) || leg1 <= 0.0 || leg2 <= 0.0 || opposite < 0.0 {
        return Err(Error::Geometry(format!(
            "legs must be positive and opposite non-negative: ({opposite}, {leg1}, {leg2})"
        )));
    }
    let slack = 1e-12 * (opposite + leg1 + leg2);
    if opposite > leg1 + leg2 + slack || leg1 > opposite + leg2 + slack || leg2 > opposite + leg1 + slack {
        return Err(Error::Geometry(format!(
            "triangle inequality violated: ({opposite}, {leg1}, {leg2})"
        )));
    }
    // Kahan's stable formula for the angle opposite `opposite`.
    let (a, b, c) = (leg1.max(leg2), leg1.min(leg2), opposite);
    let mu = if b >= c { c - (a - b) } else { b - (a - c) };
    let num = ((a - b) + c).max(0.0) * mu.max(0.0);
    let den = (a + (b + c)) * ((a - c) + b).max(0.0);
    if den <= 0.0 {
        return Ok(Angle(PI));
    }
    Ok(Angle(2.0 * (num / den).sqrt().atan()))
}

/// Side of a regular `2n`-gon inscribed in the unit circle.
pub fn polygon_edge_length(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("polygon_edge_length needs n >= 2, got {n}")));
    }
    Ok(2.0 * (PI / (2.0 * f64::from(n))).sin())
}

/// True if `a`, `b`, `c` satisfy the strict triangle inequality.
pub fn strict_triangle(a: f64, b: f64, c: f64) -> bool {
    a < b + c && b < a + c && c < a + b
}
