//! Numeric projective points: P^3 points for the rapidity space and P^1
//! values for base parameters and curve coordinates.
//!
//! All comparisons are toleranced and projective: two points agree when
//! their coordinates differ by a single complex scalar.

use num_complex::Complex64;

/// Default relative tolerance for projective comparisons.
pub const EPS_PT: f64 = 1e-9;

/// A point of P^3 stored as a normalized 4-vector: the first coordinate of
/// largest magnitude is scaled to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    pub coords: [Complex64; 4],
}

impl ProjPoint {
    /// Normalizes a non-zero coordinate vector.
    ///
    /// Panics if all coordinates vanish (there is no such projective point).
    pub fn new(coords: [Complex64; 4]) -> Self {
        let mut best = 0usize;
        let mut best_norm = coords[0].norm();
        for (i, c) in coords.iter().enumerate().skip(1) {
            if c.norm() > best_norm {
                best = i;
                best_norm = c.norm();
            }
        }
        assert!(best_norm > 0.0, "all four coordinates are zero");
        let scale = coords[best];
        let mut out = [Complex64::default(); 4];
        for i in 0..4 {
            out[i] = coords[i] / scale;
        }
        Self { coords: out }
    }

    pub fn from_f64(coords: [f64; 4]) -> Self {
        Self::new(coords.map(|x| Complex64::new(x, 0.0)))
    }

    /// Toleranced projective equality via vanishing of all 2x2 minors of
    /// the coordinate pair.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        cross_ratio_eq(&self.coords, &other.coords, tol)
    }
}

/// Zero test for all 2x2 minors of two coordinate vectors, relative to the
/// largest coordinate products involved.
pub fn cross_ratio_eq(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let scale = a
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
        * b.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return false;
    }
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if (a[i] * b[j] - a[j] * b[i]).norm() > tol * scale {
                return false;
            }
        }
    }
    true
}

/// A point of P^1 as a normalized pair, so that infinity and zero are
/// first-class values.
#[derive(Debug, Clone, Copy)]
pub struct P1 {
    pub num: Complex64,
    pub den: Complex64,
}

impl P1 {
    pub fn new(num: Complex64, den: Complex64) -> Self {
        let (n0, n1) = (num.norm(), den.norm());
        assert!(n0 > 0.0 || n1 > 0.0, "P1 value [0 : 0] is undefined");
        let scale = if n0 >= n1 { num } else { den };
        Self { num: num / scale, den: den / scale }
    }

    pub fn finite(z: Complex64) -> Self {
        Self::new(z, Complex64::new(1.0, 0.0))
    }

    pub fn from_f64(x: f64) -> Self {
        Self::finite(Complex64::new(x, 0.0))
    }

    pub fn infinity() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn zero() -> Self {
        Self::finite(Complex64::new(0.0, 0.0))
    }

    pub fn is_infinite(&self, tol: f64) -> bool {
        self.den.norm() <= tol * self.num.norm()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.num.norm() <= tol * self.den.norm()
    }

    /// The affine value; infinite results are f64 infinities.
    pub fn value(&self) -> Complex64 {
        self.num / self.den
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den, self.num)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let cross = self.num * other.den - other.num * self.den;
        cross.norm() <= tol
    }
}

impl PartialEq for P1 {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, EPS_PT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn projective_scaling_is_identified() {
        let p = ProjPoint::new([c(1.0, 0.0), c(2.0, 1.0), c(0.0, 0.0), c(-3.0, 0.5)]);
        let s = c(0.3, -0.7);
        let q = ProjPoint::new([s, s * c(2.0, 1.0), c(0.0, 0.0), s * c(-3.0, 0.5)]);
        assert!(p.approx_eq(&q, EPS_PT));
    }

    #[test]
    fn distinct_points_differ() {
        let p = ProjPoint::from_f64([1.0, 1.0, 1.0, 1.0]);
        let q = ProjPoint::from_f64([1.0, 1.0, 1.0, -1.0]);
        assert!(!p.approx_eq(&q, EPS_PT));
    }

    #[test]
    fn p1_infinity_and_zero() {
        let inf = P1::infinity();
        assert!(inf.is_infinite(EPS_PT));
        assert!(!inf.is_zero(EPS_PT));
        let z = P1::zero();
        assert!(z.is_zero(EPS_PT));
        assert!(inf.recip().is_zero(EPS_PT));
        assert!(P1::finite(c(2.0, 0.0)).recip().approx_eq(&P1::from_f64(0.5), EPS_PT));
    }
}
