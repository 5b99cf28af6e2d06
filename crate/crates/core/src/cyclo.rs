//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! A [`CycloNumber`] is a polynomial in a fixed primitive m-th root of unity
//! `zeta_m`, reduced modulo the m-th cyclotomic polynomial. The degenerate
//! order `m = 1` plays the role of a plain rational scalar: mixed-order
//! operations promote the order-1 side into the other field, so rational
//! constants can be used freely against any fixed order. Two non-scalar
//! orders never mix; doing so is a programming error and panics.

use crate::ring::{rat_int, Coeff};
use num_rational::BigRational;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Element of Q(zeta_m), reduced mod the m-th cyclotomic polynomial.
///
/// `coeffs[i]` is the coefficient of `zeta_m^i`; the vector has length
/// `phi(m)` at most (trailing zeros trimmed), and may be empty (zero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloNumber {
    pub order: u32,
    pub coeffs: Vec<BigRational>,
}

/// Dense rational polynomial helpers (ascending coefficient order).
fn poly_trim(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division; returns (quotient, remainder).
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Vec<BigRational> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = &rem[dr] / lead;
        quot[dr - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                let v = &rem[dr - db + j] - &c * bj;
                rem[dr - db + j] = v;
            }
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g, g monic.
fn poly_xgcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = sub_poly(&s0, &poly_mul(&q, &s1));
        let t = sub_poly(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    // Normalize to a monic gcd.
    let lead = r0.last().expect("gcd of zero polynomials").clone();
    let inv = lead.recip();
    let scale = |v: &[BigRational]| v.iter().map(|c| c * &inv).collect::<Vec<_>>();
    (scale(&r0), scale(&s0), scale(&t0))
}

fn sub_poly(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// The m-th cyclotomic polynomial as a dense rational coefficient vector,
/// computed by exact division of x^m - 1 by the cyclotomic polynomials of
/// the proper divisors of m, and cached process-wide.
pub fn cyclotomic_poly(m: u32) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    assert!(m >= 1);
    let result = if m == 1 {
        vec![-rat_int(1), rat_int(1)]
    } else {
        // x^m - 1
        let mut num = vec![BigRational::zero(); m as usize + 1];
        num[0] = -rat_int(1);
        num[m as usize] = rat_int(1);
        let mut p = num;
        for d in 1..m {
            if m % d == 0 {
                let (q, r) = poly_divrem(&p, &cyclotomic_poly(d));
                assert!(r.is_empty(), "cyclotomic division must be exact");
                p = q;
            }
        }
        p
    };
    cache
        .lock()
        .unwrap()
        .insert(m, result.clone());
    result
}

impl CycloNumber {
    pub fn rational(r: BigRational) -> Self {
        let mut n = CycloNumber {
            order: 1,
            coeffs: vec![r],
        };
        n.normalize();
        n
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(rat_int(n))
    }

    /// The chosen primitive m-th root of unity, as an element of Q(zeta_m).
    pub fn zeta(m: u32) -> Self {
        assert!(m >= 1);
        if m == 1 {
            return Self::integer(1);
        }
        let mut n = CycloNumber {
            order: m,
            coeffs: vec![BigRational::zero(), BigRational::one()],
        };
        n.reduce();
        n
    }

    /// zeta_m^k for any integer k.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as u32;
        if m == 1 || k == 0 {
            return Self::integer(1);
        }
        let mut coeffs = vec![BigRational::zero(); k as usize + 1];
        coeffs[k as usize] = BigRational::one();
        let mut n = CycloNumber { order: m, coeffs };
        n.reduce();
        n
    }

    fn reduce(&mut self) {
        if self.order > 1 {
            let phi = cyclotomic_poly(self.order);
            if self.coeffs.len() >= phi.len() {
                let (_, r) = poly_divrem(&self.coeffs, &phi);
                self.coeffs = r;
            }
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        poly_trim(&mut self.coeffs);
        if self.order > 1 {
            // Collapse back to a scalar when the value happens to be rational,
            // so that equality and order mixing stay canonical.
            if self.coeffs.len() <= 1 {
                self.order = 1;
            }
        }
        if self.order == 1 && self.coeffs.is_empty() {
            // canonical zero
        }
    }

    /// Promote a scalar (order 1) into Q(zeta_m).
    fn promoted(&self, order: u32) -> CycloNumber {
        if self.order == order || order == 1 {
            return self.clone();
        }
        assert_eq!(
            self.order, 1,
            "cannot mix cyclotomic orders {} and {}",
            self.order, order
        );
        CycloNumber {
            order,
            coeffs: self.coeffs.clone(),
        }
    }

    fn common_order(&self, rhs: &Self) -> u32 {
        match (self.order, rhs.order) {
            (1, o) | (o, 1) => o,
            (a, b) => {
                assert_eq!(a, b, "cannot mix cyclotomic orders {} and {}", a, b);
                a
            }
        }
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.order == 1 {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::integer(1);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = Coeff::mul(&acc, &base);
            }
            base = Coeff::mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

impl Coeff for CycloNumber {
    fn zero() -> Self {
        CycloNumber {
            order: 1,
            coeffs: Vec::new(),
        }
    }

    fn one() -> Self {
        Self::integer(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let order = self.common_order(rhs);
        let a = self.promoted(order);
        let b = rhs.promoted(order);
        let mut coeffs = vec![BigRational::zero(); a.coeffs.len().max(b.coeffs.len())];
        for (i, c) in a.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        let mut n = CycloNumber { order, coeffs };
        n.normalize();
        n
    }

    fn neg(&self) -> Self {
        CycloNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let order = self.common_order(rhs);
        let a = self.promoted(order);
        let b = rhs.promoted(order);
        let mut n = CycloNumber {
            order,
            coeffs: poly_mul(&a.coeffs, &b.coeffs),
        };
        n.reduce();
        n
    }

    fn from_rat(r: &BigRational) -> Self {
        Self::rational(r.clone())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Self::rational(self.coeffs[0].recip()));
        }
        let phi = cyclotomic_poly(self.order);
        let (g, s, _) = poly_xgcd(&self.coeffs, &phi);
        assert_eq!(
            g,
            vec![BigRational::one()],
            "nonzero cyclotomic element must be invertible"
        );
        let mut n = CycloNumber {
            order: self.order,
            coeffs: s,
        };
        n.reduce();
        Some(n)
    }
}

/// The distinguished primitive 2g-th root of unity used throughout.
pub fn eps(g: u32) -> CycloNumber {
    CycloNumber::zeta(2 * g)
}

/// eps(g)^k for any integer k.
pub fn eps_pow(g: u32, k: i64) -> CycloNumber {
    CycloNumber::zeta_pow(2 * g, k)
}

/// Classical quantum integer [k] evaluated at eps(g), via the balanced
/// geometric sum, which stays meaningful at g = 1 where eps - eps^-1 = 0.
pub fn qint_at_eps(g: u32, k: i64) -> CycloNumber {
    let (sign, k) = if k < 0 { (true, -k) } else { (false, k) };
    let mut acc = CycloNumber::zero();
    for i in 0..k {
        acc = Coeff::add(&acc, &eps_pow(g, k - 1 - 2 * i));
    }
    if sign {
        Coeff::neg(&acc)
    } else {
        acc
    }
}

/// Product [1][2]...[g-1] of quantum integers at eps(g); equals 1 when g = 1.
pub fn qfactorial_at_eps(g: u32) -> CycloNumber {
    let mut acc = CycloNumber::one();
    for k in 1..g as i64 {
        acc = Coeff::mul(&acc, &qint_at_eps(g, k));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        let as_i64 = |m: u32| {
            cyclotomic_poly(m)
                .iter()
                .map(|c| {
                    assert!(c.is_integer());
                    c.to_integer().try_into().unwrap()
                })
                .collect::<Vec<i64>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_has_exact_order() {
        for m in 2..=16u32 {
            let z = CycloNumber::zeta(m);
            assert_eq!(z.pow(m), CycloNumber::one());
            for k in 1..m {
                assert_ne!(z.pow(k), CycloNumber::one(), "zeta_{} ^ {}", m, k);
            }
        }
    }

    #[test]
    fn order_one_is_rational_scalar() {
        let half = CycloNumber::rational(rat(1, 2));
        let z = CycloNumber::zeta(6);
        let prod = Coeff::mul(&half, &z);
        assert_eq!(prod.order, 6);
        let back = Coeff::mul(&prod, &CycloNumber::integer(2));
        assert_eq!(back, z);
    }

    #[test]
    fn rational_values_collapse_to_scalar() {
        // zeta_4^2 = -1 is rational and must come out with order 1.
        let z = CycloNumber::zeta(4);
        let sq = z.pow(2);
        assert_eq!(sq, CycloNumber::integer(-1));
        assert_eq!(sq.order, 1);
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        for m in [3u32, 4, 5, 6, 8, 12] {
            let z = CycloNumber::zeta(m);
            let a = Coeff::add(&z, &CycloNumber::integer(2));
            let inv = a.inv().unwrap();
            assert_eq!(Coeff::mul(&a, &inv), CycloNumber::one());
        }
        assert!(CycloNumber::zero().inv().is_none());
    }

    #[test]
    fn quantum_integers_at_root_of_unity() {
        // At g = 1, eps = -1 and the balanced sum gives [k] = (-1)^{k-1} k.
        assert_eq!(qint_at_eps(1, 1), CycloNumber::one());
        assert_eq!(qint_at_eps(1, 2), CycloNumber::integer(-2));
        assert_eq!(qint_at_eps(1, 3), CycloNumber::integer(3));
        // At g >= 2, [g] vanishes and [k] matches the ratio form for 0 < k < g.
        for g in 2..=5u32 {
            assert!(qint_at_eps(g, g as i64).is_zero(), "[g] at eps(g), g={}", g);
            let e = eps(g);
            let denom = Coeff::sub(&e, &e.inv().unwrap());
            for k in 1..g as i64 {
                let num = Coeff::sub(&eps_pow(g, k), &eps_pow(g, -k));
                let ratio = Coeff::mul(&num, &denom.inv().unwrap());
                assert_eq!(qint_at_eps(g, k), ratio);
            }
        }
        assert_eq!(qint_at_eps(2, -3), Coeff::neg(&qint_at_eps(2, 3)));
    }

    #[test]
    fn quantum_factorial_values() {
        assert_eq!(qfactorial_at_eps(1), CycloNumber::one());
        assert_eq!(qfactorial_at_eps(2), CycloNumber::one());
        // g = 3: [1][2] = eps + eps^-1 with eps = zeta_6, i.e. 1.
        assert_eq!(qfactorial_at_eps(3), CycloNumber::one());
        // The factorial must be a unit for every g used in the suites.
        for g in 1..=8u32 {
            assert!(qfactorial_at_eps(g).inv().is_some());
        }
    }
}
