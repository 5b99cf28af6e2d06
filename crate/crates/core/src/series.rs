//! Truncated formal power series over an arbitrary coefficient ring.
//!
//! Two shapes are provided: [`USeries`] in a single deformation variable and
//! [`BiSeries`] in the pair (h, h'), truncated at a fixed *total* degree. The
//! truncation order is carried by every value and must agree between the
//! operands of any binary operation; a mismatch is a programming error and
//! panics. Standard analytic functions (exp, sinh, cosh and the normalized
//! sinhc = sinh(x)/x) enter only through their rational Taylor coefficients
//! composed with series that have no constant term, so everything stays exact.

use crate::ring::{factorial, Coeff};
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Taylor models used throughout the kernel; `coeff(n)` is the coefficient
/// of x^n in the corresponding entire function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    Exp,
    Sinh,
    Cosh,
    /// sinh(x)/x, an even invertible series with constant term 1.
    Sinhc,
}

impl Model {
    pub fn coeff(self, n: u32) -> BigRational {
        let inv_fact = |k: u32| factorial(k).recip();
        match self {
            Model::Exp => inv_fact(n),
            Model::Sinh => {
                if n % 2 == 1 {
                    inv_fact(n)
                } else {
                    BigRational::from_integer(0.into())
                }
            }
            Model::Cosh => {
                if n % 2 == 0 {
                    inv_fact(n)
                } else {
                    BigRational::from_integer(0.into())
                }
            }
            Model::Sinhc => {
                if n % 2 == 0 {
                    inv_fact(n + 1)
                } else {
                    BigRational::from_integer(0.into())
                }
            }
        }
    }
}

/// Power series in one variable, truncated after degree `trunc` inclusive.
#[derive(Clone, PartialEq, Debug)]
pub struct USeries<R: Coeff> {
    pub trunc: u32,
    pub coeffs: Vec<R>,
}

impl<R: Coeff> USeries<R> {
    pub fn zero(trunc: u32) -> Self {
        USeries {
            trunc,
            coeffs: vec![R::zero(); trunc as usize + 1],
        }
    }

    pub fn constant(trunc: u32, c: R) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(trunc, R::one())
    }

    /// The variable itself.
    pub fn var(trunc: u32) -> Self {
        assert!(trunc >= 1, "truncation order too small for the variable");
        let mut s = Self::zero(trunc);
        s.coeffs[1] = R::one();
        s
    }

    pub fn coeff(&self, n: u32) -> R {
        self.coeffs
            .get(n as usize)
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.trunc, rhs.trunc, "series truncation orders differ");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        USeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        USeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        USeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|v| v.mul(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut out = Self::zero(self.trunc);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > self.trunc as usize {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.trunc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Compose a Taylor model with a series having zero constant term.
    pub fn compose_model(model: Model, arg: &Self) -> Self {
        assert!(
            arg.coeffs[0].is_zero(),
            "model composition needs a zero constant term"
        );
        let mut acc = Self::zero(arg.trunc);
        let mut argpow = Self::one(arg.trunc);
        for n in 0..=arg.trunc {
            let c = model.coeff(n);
            if !num_traits::Zero::is_zero(&c) {
                acc = acc.add(&argpow.scale(&R::from_rat(&c)));
            }
            if n < arg.trunc {
                argpow = argpow.mul(arg);
            }
        }
        acc
    }

    /// Multiplicative inverse of a series whose constant term is a unit.
    pub fn invert_unit(&self) -> Self {
        let c0 = self.coeffs[0]
            .inv()
            .expect("series inversion needs a unit constant term");
        let mut inv = Self::constant(self.trunc, c0.clone());
        // Newton-free iteration: inv_{n} fixed degree by degree.
        for n in 1..=self.trunc as usize {
            let mut s = R::zero();
            for k in 1..=n {
                s = s.add(&self.coeffs[k].mul(&inv.coeffs[n - k]));
            }
            inv.coeffs[n] = s.mul(&c0).neg();
        }
        inv
    }

    /// Forget coefficients above a smaller truncation order.
    pub fn truncated(&self, trunc: u32) -> Self {
        assert!(trunc <= self.trunc);
        USeries {
            trunc,
            coeffs: self.coeffs[..=trunc as usize].to_vec(),
        }
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> USeries<S> {
        USeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| f(c)).collect(),
        }
    }
}

/// Series in (h, h') truncated at total degree `trunc`; key (i, j) is the
/// coefficient of h^i h'^j. Zero coefficients are not stored.
#[derive(Clone, PartialEq, Debug)]
pub struct BiSeries<R: Coeff> {
    pub trunc: u32,
    pub terms: BTreeMap<(u32, u32), R>,
}

impl<R: Coeff> BiSeries<R> {
    pub fn zero(trunc: u32) -> Self {
        BiSeries {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(trunc: u32, c: R) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(0, 0, c);
        s
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(trunc, R::one())
    }

    /// The first deformation variable h.
    pub fn h(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(1, 0, R::one());
        s
    }

    /// The second deformation variable h'.
    pub fn hp(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(0, 1, R::one());
        s
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: R) {
        if c.is_zero() || i + j > self.trunc {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&(i, j));
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> R {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.trunc, rhs.trunc, "series truncation orders differ");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BiSeries {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.trunc);
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v.mul(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut out = Self::zero(self.trunc);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                if i1 + i2 + j1 + j2 <= self.trunc {
                    out.add_term(i1 + i2, j1 + j2, a.mul(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.trunc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn constant_term(&self) -> R {
        self.coeff(0, 0)
    }

    /// Compose a Taylor model with a series having zero constant term.
    pub fn compose_model(model: Model, arg: &Self) -> Self {
        assert!(
            arg.constant_term().is_zero(),
            "model composition needs a zero constant term"
        );
        let mut acc = Self::zero(arg.trunc);
        let mut argpow = Self::one(arg.trunc);
        for n in 0..=arg.trunc {
            let c = model.coeff(n);
            if !num_traits::Zero::is_zero(&c) {
                acc = acc.add(&argpow.scale(&R::from_rat(&c)));
            }
            if n < arg.trunc {
                argpow = argpow.mul(arg);
            }
        }
        acc
    }

    /// Multiplicative inverse of a series whose constant term is a unit.
    pub fn invert_unit(&self) -> Self {
        let c0 = self.constant_term();
        let c0i = c0.inv().expect("series inversion needs a unit constant term");
        // Write f = c0 (1 + r), |r| > 0; then f^-1 = c0^-1 sum (-r)^k.
        let neg_r = Self::one(self.trunc).sub(&self.scale(&c0i));
        let mut acc = Self::one(self.trunc);
        let mut pw = Self::one(self.trunc);
        for _ in 1..=self.trunc {
            pw = pw.mul(&neg_r);
            acc = acc.add(&pw);
        }
        acc.scale(&c0i)
    }

    /// Restriction h' -> 0, as a series in h alone.
    pub fn slice_h(&self) -> USeries<R> {
        let mut s = USeries::zero(self.trunc);
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                s.coeffs[i as usize] = c.clone();
            }
        }
        s
    }

    /// Restriction h -> 0, as a series in h' alone.
    pub fn slice_hp(&self) -> USeries<R> {
        let mut s = USeries::zero(self.trunc);
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                s.coeffs[j as usize] = c.clone();
            }
        }
        s
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> BiSeries<S> {
        let mut out = BiSeries::zero(self.trunc);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c));
        }
        out
    }

    /// Embed a univariate series in h into the bivariate ring.
    pub fn from_h_series(s: &USeries<R>) -> Self {
        let mut out = Self::zero(s.trunc);
        for (i, c) in s.coeffs.iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    /// Embed a univariate series in h' into the bivariate ring.
    pub fn from_hp_series(s: &USeries<R>) -> Self {
        let mut out = Self::zero(s.trunc);
        for (j, c) in s.coeffs.iter().enumerate() {
            out.add_term(0, j as u32, c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};
    use num_rational::BigRational;

    type S = USeries<BigRational>;
    type B = BiSeries<BigRational>;

    #[test]
    fn model_coefficients() {
        assert_eq!(Model::Exp.coeff(3), rat(1, 6));
        assert_eq!(Model::Sinh.coeff(2), rat_int(0));
        assert_eq!(Model::Sinh.coeff(3), rat(1, 6));
        assert_eq!(Model::Cosh.coeff(2), rat(1, 2));
        assert_eq!(Model::Sinhc.coeff(0), rat_int(1));
        assert_eq!(Model::Sinhc.coeff(2), rat(1, 6));
        assert_eq!(Model::Sinhc.coeff(4), rat(1, 120));
    }

    #[test]
    fn exp_satisfies_addition_law() {
        let x = S::var(8);
        let e = S::compose_model(Model::Exp, &x);
        let e2 = S::compose_model(Model::Exp, &x.scale(&rat_int(2)));
        assert_eq!(e.mul(&e), e2);
    }

    #[test]
    fn sinh_cosh_identity() {
        let x = S::var(10);
        let s = S::compose_model(Model::Sinh, &x);
        let c = S::compose_model(Model::Cosh, &x);
        let lhs = c.mul(&c).sub(&s.mul(&s));
        assert_eq!(lhs, S::one(10));
    }

    #[test]
    fn sinhc_times_var_is_sinh() {
        let x = S::var(9);
        let sc = S::compose_model(Model::Sinhc, &x);
        assert_eq!(sc.mul(&x), S::compose_model(Model::Sinh, &x));
        // sinhc is a unit; its inverse times itself is 1.
        assert_eq!(sc.mul(&sc.invert_unit()), S::one(9));
    }

    #[test]
    fn bivariate_exp_factorizes() {
        let n = 6;
        let h = B::h(n);
        let hp = B::hp(n);
        let both = B::compose_model(Model::Exp, &h.add(&hp));
        let sep = B::compose_model(Model::Exp, &h).mul(&B::compose_model(Model::Exp, &hp));
        assert_eq!(both, sep);
    }

    #[test]
    fn slices_recover_single_variable_series() {
        let n = 5;
        let h = B::h(n);
        let hp = B::hp(n);
        let f = B::compose_model(Model::Sinh, &h).add(&B::compose_model(Model::Cosh, &hp));
        let sh = f.slice_h();
        let shp = f.slice_hp();
        let xs = S::var(n);
        assert_eq!(sh, S::compose_model(Model::Sinh, &xs).add(&S::one(n)));
        assert_eq!(shp, S::compose_model(Model::Cosh, &xs));
    }

    #[test]
    fn bivariate_inverse_of_unit() {
        let n = 7;
        let f = B::one(n).add(&B::h(n).mul(&B::hp(n)).scale(&rat(3, 2)));
        assert_eq!(f.mul(&f.invert_unit()), B::one(n));
    }

    #[test]
    #[should_panic(expected = "truncation orders differ")]
    fn mismatched_truncation_panics() {
        let a = B::one(4);
        let b = B::one(5);
        let _ = a.add(&b);
    }
}
