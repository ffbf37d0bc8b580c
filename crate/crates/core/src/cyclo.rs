//! Exact algebra of monomial projective transformations of P^3 whose
//! coefficients are powers of zeta = e^{pi i / 2N}, the primitive 4N-th
//! root of unity (zeta^4 = omega = e^{2 pi i / N}).
//!
//! A transformation is a coordinate permutation together with four
//! zeta-exponents; composition, inversion and equality are exact integer
//! arithmetic mod 4N. Only `apply` touches floating point.

use crate::error::{CpmError, Result};
use crate::proj::ProjPoint;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

/// Exponent of zeta, reduced to [0, 4N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootExponent {
    value: u32,
    modulus: u32,
}

impl RootExponent {
    pub fn new(value: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        Self { value: (value.rem_euclid(m)) as u32, modulus }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn add(&self, other: RootExponent) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::new(self.value as i64 + other.value as i64, self.modulus)
    }

    pub fn neg(&self) -> Self {
        Self::new(-(self.value as i64), self.modulus)
    }

    /// The complex number zeta^value.
    pub fn unit(&self) -> Complex64 {
        let angle = 2.0 * PI * self.value as f64 / self.modulus as f64;
        Complex64::from_polar(1.0, angle)
    }
}

/// zeta^e for exponent e mod 4N.
pub fn zeta_pow(e: i64, n: u32) -> Complex64 {
    RootExponent::new(e, 4 * n).unit()
}

/// A monomial projective transformation: image coordinate i equals
/// zeta^{exps[i]} * x_{perm[i]}.
///
/// Canonical form has exps[0] = 0 (projective scaling freedom); two
/// canonical maps are equal iff perm and exps agree componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMap {
    pub perm: [u8; 4],
    pub exps: [RootExponent; 4],
    pub n: u32,
}

impl MonomialMap {
    pub fn new(perm: [u8; 4], exps: [i64; 4], n: u32) -> Self {
        assert!(n >= 2, "level N must be at least 2");
        let mut seen = [false; 4];
        for &p in &perm {
            assert!((p as usize) < 4 && !seen[p as usize], "not a permutation");
            seen[p as usize] = true;
        }
        let m = 4 * n;
        let exps = exps.map(|e| RootExponent::new(e, m));
        Self { perm, exps, n }.canonicalize()
    }

    /// Subtracts exps[0] from all four exponents.
    pub fn canonicalize(mut self) -> Self {
        let e0 = self.exps[0];
        for e in &mut self.exps {
            *e = e.add(e0.neg());
        }
        self
    }

    pub fn identity(n: u32) -> Self {
        Self::new([0, 1, 2, 3], [0; 4], n)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Functional composition: apply(compose(g, h), p) = apply(g, apply(h, p)).
    pub fn compose(&self, h: &MonomialMap) -> Result<MonomialMap> {
        if self.n != h.n {
            return Err(CpmError::LevelMismatch(self.n, h.n));
        }
        let mut perm = [0u8; 4];
        let mut exps = [RootExponent::new(0, 4 * self.n); 4];
        for i in 0..4 {
            let gi = self.perm[i] as usize;
            perm[i] = h.perm[gi];
            exps[i] = self.exps[i].add(h.exps[gi]);
        }
        Ok(Self { perm, exps, n: self.n }.canonicalize())
    }

    pub fn inverse(&self) -> MonomialMap {
        let mut perm = [0u8; 4];
        let mut exps = [RootExponent::new(0, 4 * self.n); 4];
        for i in 0..4 {
            perm[self.perm[i] as usize] = i as u8;
        }
        for i in 0..4 {
            exps[i] = self.exps[perm[i] as usize].neg();
        }
        Self { perm, exps, n: self.n }.canonicalize()
    }

    /// g^k for any integer k.
    pub fn pow(&self, k: i64) -> MonomialMap {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = Self::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base).expect("same level");
        }
        acc
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let mut coords = [Complex64::default(); 4];
        for i in 0..4 {
            coords[i] = self.exps[i].unit() * p.coords[self.perm[i] as usize];
        }
        ProjPoint::new(coords)
    }

    /// True iff the two maps define the same projective transformation.
    pub fn canonical_eq(&self, other: &MonomialMap) -> Result<bool> {
        if self.n != other.n {
            return Err(CpmError::LevelMismatch(self.n, other.n));
        }
        Ok(self == other)
    }

    /// True when every coordinate maps to itself (diagonal map).
    pub fn is_diagonal(&self) -> bool {
        self.perm == [0, 1, 2, 3]
    }

    /// Order of the element in the projective transformation group.
    pub fn order(&self) -> u32 {
        let mut acc = *self;
        let mut k = 1u32;
        while !acc.is_identity() {
            acc = acc.compose(self).expect("same level");
            k += 1;
            debug_assert!(k <= 16 * self.n * self.n, "order runaway");
        }
        k
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "perm[{},{},{},{}] zeta^[{},{},{},{}] (mod {})",
            self.perm[0], self.perm[1], self.perm[2], self.perm[3],
            self.exps[0].value(), self.exps[1].value(),
            self.exps[2].value(), self.exps[3].value(),
            4 * self.n
        )
    }
}

/// The named generators of the modular CP group at level N, as monomial maps.
///
/// u1: [a,b,c,d] -> [w^{1/2} d, c, b, w^{1/2} a]
/// u2: [a,b,c,d] -> [b, w a, d, c]
/// U : [a,b,c,d] -> [w a, b, c, d]
/// S : [a,b,c,d] -> [w^{-1/2} a, d, c, b]
/// T : [a,b,c,d] -> [w^{1/4} a, w^{1/4} b, d, c]
/// with w = zeta^4.
pub mod generators {
    use super::MonomialMap;

    pub fn u1(n: u32) -> MonomialMap {
        MonomialMap::new([3, 2, 1, 0], [2, 0, 0, 2], n)
    }

    pub fn u2(n: u32) -> MonomialMap {
        MonomialMap::new([1, 0, 3, 2], [0, 4, 0, 0], n)
    }

    pub fn cap_u(n: u32) -> MonomialMap {
        MonomialMap::new([0, 1, 2, 3], [4, 0, 0, 0], n)
    }

    pub fn s(n: u32) -> MonomialMap {
        MonomialMap::new([0, 3, 2, 1], [-2, 0, 0, 0], n)
    }

    pub fn t(n: u32) -> MonomialMap {
        MonomialMap::new([0, 1, 3, 2], [1, 1, 0, 0], n)
    }
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;
    use crate::proj::EPS_PT;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_point(rng: &mut StdRng) -> ProjPoint {
        ProjPoint::new([(); 4].map(|_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        }))
    }

    #[test]
    fn compose_u2_u2_is_m2() {
        // u2^2 : [a,b,c,d] -> [w a, w b, c, d]
        for n in 2..=5 {
            let m2 = MonomialMap::new([0, 1, 2, 3], [4, 4, 0, 0], n);
            assert_eq!(u2(n).compose(&u2(n)).unwrap(), m2);
        }
    }

    #[test]
    fn compose_with_identity() {
        let g = u1(3);
        assert_eq!(g.compose(&MonomialMap::identity(3)).unwrap(), g);
        assert_eq!(MonomialMap::identity(3).compose(&g).unwrap(), g);
    }

    #[test]
    fn t_squared_and_fourth_power() {
        // T^2 : [a,b,c,d] -> [w^{1/2} a, w^{1/2} b, c, d]; T^4 = u2^2.
        for n in 2..=5 {
            let t2 = t(n).compose(&t(n)).unwrap();
            assert_eq!(t2, MonomialMap::new([0, 1, 2, 3], [2, 2, 0, 0], n));
            let t4 = t2.compose(&t2).unwrap();
            assert_eq!(t4, u2(n).pow(2));
        }
    }

    #[test]
    fn inverse_of_identity_and_u() {
        assert_eq!(MonomialMap::identity(4).inverse(), MonomialMap::identity(4));
        // U^{-1} : [a,b,c,d] -> [w^{-1} a, b, c, d]
        let uinv = MonomialMap::new([0, 1, 2, 3], [-4, 0, 0, 0], 4);
        assert_eq!(cap_u(4).inverse(), uinv);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let g = s(3);
        assert!(g.inverse().compose(&g).unwrap().is_identity());
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn apply_u2_to_ones() {
        // N=2: u2([1,1,1,1]) = [1, -1, 1, 1] projectively.
        let p = ProjPoint::from_f64([1.0, 1.0, 1.0, 1.0]);
        let img = u2(2).apply(&p);
        let expect = ProjPoint::from_f64([1.0, -1.0, 1.0, 1.0]);
        assert!(img.approx_eq(&expect, EPS_PT));
    }

    #[test]
    fn s_squared_is_u_inverse_pointwise() {
        let n = 3;
        let s2 = s(n).compose(&s(n)).unwrap();
        let uinv = cap_u(n).inverse();
        assert_eq!(s2, uinv);
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let p = random_point(&mut rng);
            assert!(s2.apply(&p).approx_eq(&uinv.apply(&p), EPS_PT));
        }
    }

    #[test]
    fn apply_respects_composition() {
        let mut rng = StdRng::seed_from_u64(7);
        let n = 4;
        let (g, h) = (t(n), u1(n));
        let gh = g.compose(&h).unwrap();
        for _ in 0..50 {
            let p = random_point(&mut rng);
            assert!(gh.apply(&p).approx_eq(&g.apply(&h.apply(&p)), EPS_PT));
        }
    }

    #[test]
    fn canonical_eq_mod_scalar() {
        let n = 3;
        let g = u1(n);
        // multiply every exponent by the scalar zeta^3
        let scaled = MonomialMap::new(
            g.perm,
            [3 + 0, 3 + g.exps[1].value() as i64, 3 + g.exps[2].value() as i64, 3 + g.exps[3].value() as i64],
            n,
        );
        assert!(g.canonical_eq(&scaled).unwrap());
        // U vs U^{N+1}
        assert!(cap_u(n).canonical_eq(&cap_u(n).pow(n as i64 + 1)).unwrap());
    }

    #[test]
    fn level_mismatch_rejected() {
        assert!(u1(2).compose(&u1(3)).is_err());
    }

    proptest! {
        #[test]
        fn associativity(seed in 0u64..5000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.random_range(2u32..=5);
            let rand_map = |rng: &mut StdRng| {
                let mut perm = [0u8, 1, 2, 3];
                for i in (1..4usize).rev() {
                    let j = rng.random_range(0..=i);
                    perm.swap(i, j);
                }
                let exps = [(); 4].map(|_| rng.random_range(0i64..(4 * n) as i64));
                MonomialMap::new(perm, exps, n)
            };
            let (g, h, k) = (rand_map(&mut rng), rand_map(&mut rng), rand_map(&mut rng));
            let gh_k = g.compose(&h).unwrap().compose(&k).unwrap();
            let g_hk = g.compose(&h.compose(&k).unwrap()).unwrap();
            prop_assert_eq!(gh_k, g_hk);
            // canonicalization idempotent
            prop_assert_eq!(g.canonicalize(), g);
        }
    }
}
