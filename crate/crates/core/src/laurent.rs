//! Sparse Laurent polynomials over an arbitrary coefficient ring.
//!
//! Exponents are signed, coefficients live in any [`Coeff`] ring, and zero
//! coefficients are never stored, so structural equality is mathematical
//! equality. These are used both over Q (lattice forms in the variable `Q`)
//! and over cyclotomic fields (interpolation polynomials in the variable `u`).

use crate::cyclo::CycloNumber;
use crate::ring::Coeff;
use num_rational::BigRational;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<R: Coeff> {
    pub terms: BTreeMap<i64, R>,
}

impl<R: Coeff> LaurentPoly<R> {
    pub fn new() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(exp: i64, coeff: R) -> Self {
        let mut p = Self::new();
        p.add_term(exp, coeff);
        p
    }

    /// The monomial u^exp.
    pub fn monomial(exp: i64) -> Self {
        Self::term(exp, R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::term(0, c)
    }

    pub fn add_term(&mut self, exp: i64, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                let s = c.add(&coeff);
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> R {
        self.terms.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::new();
        for (&e, v) in &self.terms {
            out.add_term(e, v.mul(c));
        }
        out
    }

    /// Substitute u -> u^a (multiplies every exponent by `a`).
    pub fn subst_power(&self, a: i64) -> Self {
        let mut out = Self::new();
        for (&e, v) in &self.terms {
            out.add_term(e * a, v.clone());
        }
        out
    }

    /// Evaluate by substituting a ring element for the variable.
    pub fn eval(&self, x: &R) -> R {
        let xinv = if self.terms.keys().next().map_or(false, |&e| e < 0) {
            Some(x.inv().expect("evaluation point must be invertible"))
        } else {
            None
        };
        let mut acc = R::zero();
        for (&e, v) in &self.terms {
            let mut p = R::one();
            let (base, n) = if e >= 0 {
                (x, e as u64)
            } else {
                (xinv.as_ref().unwrap(), (-e) as u64)
            };
            for _ in 0..n {
                p = p.mul(base);
            }
            acc = acc.add(&v.mul(&p));
        }
        acc
    }
}

impl<R: Coeff> Default for LaurentPoly<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Coeff> Coeff for LaurentPoly<R> {
    fn zero() -> Self {
        Self::new()
    }
    fn one() -> Self {
        Self::monomial(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, v) in &rhs.terms {
            out.add_term(e, v.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v.neg())).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::new();
        for (&e1, v1) in &self.terms {
            for (&e2, v2) in &rhs.terms {
                out.add_term(e1 + e2, v1.mul(v2));
            }
        }
        out
    }
    fn from_rat(r: &BigRational) -> Self {
        Self::constant(R::from_rat(r))
    }
    fn inv(&self) -> Option<Self> {
        // Only monomials c * u^e are units of the Laurent ring.
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        c.inv().map(|ci| Self::term(-e, ci))
    }
}

impl LaurentPoly<CycloNumber> {
    /// Evaluate at u = zeta_{2g}^l.
    pub fn eval_at_eps_pow(&self, g: u32, l: i64) -> CycloNumber {
        let mut acc = CycloNumber::zero();
        for (&e, v) in &self.terms {
            acc = acc.add(&v.mul(&crate::cyclo::eps_pow(g, e * l)));
        }
        acc
    }

    /// Reinterpret as a rational Laurent polynomial; fails if any coefficient
    /// genuinely involves a root of unity.
    pub fn try_rational(&self) -> Option<LaurentPoly<BigRational>> {
        let mut out = LaurentPoly::new();
        for (&e, v) in &self.terms {
            out.add_term(e, v.as_rational()?);
        }
        Some(out)
    }
}

impl LaurentPoly<BigRational> {
    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&BigRational) -> S) -> LaurentPoly<S> {
        let mut out = LaurentPoly::new();
        for (&e, v) in &self.terms {
            out.add_term(e, f(v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{eps, CycloNumber};
    use crate::ring::{rat, rat_int};

    #[test]
    fn arithmetic_and_cancellation() {
        let p = LaurentPoly::<BigRational>::monomial(1);
        let q = LaurentPoly::<BigRational>::monomial(-1);
        let s = p.add(&q);
        let prod = s.mul(&s);
        // (u + u^-1)^2 = u^2 + 2 + u^-2
        assert_eq!(prod.coeff(2), rat_int(1));
        assert_eq!(prod.coeff(0), rat_int(2));
        assert_eq!(prod.coeff(-2), rat_int(1));
        let diff = p.sub(&p);
        assert!(diff.is_zero());
    }

    #[test]
    fn substitution_scales_exponents() {
        let p = LaurentPoly::<BigRational>::term(2, rat(1, 2)).add(&LaurentPoly::monomial(-1));
        let q = p.subst_power(3);
        assert_eq!(q.coeff(6), rat(1, 2));
        assert_eq!(q.coeff(-3), rat_int(1));
    }

    #[test]
    fn monomial_units_invert() {
        let m = LaurentPoly::<BigRational>::term(-3, rat(2, 5));
        let mi = m.inv().unwrap();
        assert_eq!(Coeff::mul(&m, &mi), LaurentPoly::one());
        let not_unit = LaurentPoly::<BigRational>::monomial(1).add(&LaurentPoly::one());
        assert!(not_unit.inv().is_none());
    }

    #[test]
    fn evaluation_at_roots_of_unity() {
        // u + u^-1 at u = eps(3) = zeta_6 gives 2 cos(pi/3) = 1.
        let p = LaurentPoly::<CycloNumber>::monomial(1).add(&LaurentPoly::monomial(-1));
        assert_eq!(p.eval_at_eps_pow(3, 1), CycloNumber::one());
        assert_eq!(p.eval(&eps(3)).add(&CycloNumber::integer(-1)), CycloNumber::zero());
    }
}
