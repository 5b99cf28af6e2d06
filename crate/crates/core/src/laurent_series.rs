//! Truncated Laurent series with a finite principal part.
//!
//! Used for expressions such as (T^g - T^{-g})^{-2} with T = exp(h'), which
//! are honest Laurent series in h' of negative valuation. A value stores the
//! coefficients of h'^val .. h'^trunc; `trunc` is the highest degree the
//! value is reliable to, and it shrinks under multiplication exactly as the
//! error analysis dictates.

use crate::ring::Coeff;
use crate::series::USeries;

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<R: Coeff> {
    /// Degree of the first stored coefficient.
    pub val: i64,
    /// Highest reliable degree (inclusive).
    pub trunc: i64,
    /// Coefficients of h'^val ..= h'^trunc.
    pub coeffs: Vec<R>,
}

impl<R: Coeff> LaurentSeries<R> {
    pub fn from_useries(s: &USeries<R>) -> Self {
        LaurentSeries {
            val: 0,
            trunc: s.trunc as i64,
            coeffs: s.coeffs.clone(),
        }
    }

    /// c * h'^k, reliable through degree `trunc`.
    pub fn monomial(c: R, k: i64, trunc: i64) -> Self {
        assert!(trunc >= k);
        let mut coeffs = vec![R::zero(); (trunc - k) as usize + 1];
        coeffs[0] = c;
        LaurentSeries {
            val: k,
            trunc,
            coeffs,
        }
    }

    pub fn coeff(&self, deg: i64) -> R {
        if deg < self.val || deg > self.trunc {
            R::zero()
        } else {
            self.coeffs[(deg - self.val) as usize].clone()
        }
    }

    /// Raise the valuation past leading zero coefficients.
    fn normalized(mut self) -> Self {
        while self.coeffs.first().map_or(false, |c| c.is_zero()) && self.val < self.trunc {
            self.coeffs.remove(0);
            self.val += 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &R) -> Self {
        LaurentSeries {
            val: self.val,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|v| v.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|v| v.neg()).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let val = self.val.min(rhs.val);
        let trunc = self.trunc.min(rhs.trunc);
        assert!(trunc >= val, "no overlapping reliable range in addition");
        let mut coeffs = vec![R::zero(); (trunc - val) as usize + 1];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let d = val + i as i64;
            *c = self.coeff(d).add(&rhs.coeff(d));
        }
        LaurentSeries { val, trunc, coeffs }.normalized()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let val = self.val + rhs.val;
        let trunc = (self.trunc + rhs.val).min(rhs.trunc + self.val);
        assert!(trunc >= val, "no reliable range in product");
        let mut coeffs = vec![R::zero(); (trunc - val) as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let d = self.val + i as i64 + rhs.val + j as i64;
                if d > trunc {
                    break;
                }
                if !b.is_zero() {
                    let k = (d - val) as usize;
                    coeffs[k] = coeffs[k].add(&a.mul(b));
                }
            }
        }
        LaurentSeries { val, trunc, coeffs }.normalized()
    }

    /// Inverse, when the leading coefficient is a unit of R.
    pub fn invert(&self) -> Self {
        let this = self.clone().normalized();
        assert!(
            !this.coeffs[0].is_zero(),
            "leading coefficient must be nonzero to invert"
        );
        let unit = USeries {
            trunc: (this.trunc - this.val) as u32,
            coeffs: this.coeffs.clone(),
        };
        let inv = unit.invert_unit();
        LaurentSeries {
            val: -this.val,
            trunc: this.trunc - 2 * this.val,
            coeffs: inv.coeffs,
        }
    }

    /// Whether the principal part vanishes identically.
    pub fn is_regular(&self) -> bool {
        (self.val..0).all(|d| self.coeff(d).is_zero())
    }

    /// Convert to an ordinary power series, requiring regularity and enough
    /// reliable degrees.
    pub fn into_useries(&self, trunc: u32) -> USeries<R> {
        assert!(self.is_regular(), "series has a nonzero principal part");
        assert!(self.trunc >= trunc as i64, "not enough reliable degrees");
        let mut s = USeries::zero(trunc);
        for d in 0..=trunc as i64 {
            s.coeffs[d as usize] = self.coeff(d);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};
    use crate::series::{Model, USeries};
    use num_rational::BigRational;

    type L = LaurentSeries<BigRational>;

    #[test]
    fn inverse_square_of_twice_sinh() {
        // (2 sinh x)^-2 = 1/4 x^-2 - 1/12 + 1/60 x^2 + ...
        let n = 8u32;
        let x = USeries::<BigRational>::var(n);
        let sc = USeries::compose_model(Model::Sinhc, &x);
        let two_sinh_over_x = sc.scale(&rat_int(2));
        let f = L::from_useries(&two_sinh_over_x)
            .mul(&L::monomial(rat_int(1), 1, n as i64 + 1));
        let g = f.invert().mul(&f.invert());
        assert_eq!(g.val, -2);
        assert_eq!(g.coeff(-2), rat(1, 4));
        assert_eq!(g.coeff(-1), rat_int(0));
        assert_eq!(g.coeff(0), rat(-1, 12));
        assert_eq!(g.coeff(2), rat(1, 60));
    }

    #[test]
    fn product_with_series_cancels_pole() {
        let n = 6i64;
        let pole = L::monomial(rat_int(1), -2, n);
        let killer = L::monomial(rat_int(3), 2, n + 2);
        let prod = pole.mul(&killer);
        assert!(prod.is_regular());
        let s = prod.into_useries(3);
        assert_eq!(s.coeff(0), rat_int(3));
    }

    #[test]
    fn regularity_detection() {
        let mut f = L::monomial(rat_int(1), -1, 4);
        assert!(!f.is_regular());
        f = f.sub(&L::monomial(rat_int(1), -1, 4));
        assert!(f.is_regular());
    }

    #[test]
    fn inverse_roundtrip() {
        let n = 7u32;
        let x = USeries::<BigRational>::var(n);
        let f = L::from_useries(&USeries::compose_model(Model::Exp, &x))
            .mul(&L::monomial(rat(2, 3), -3, n as i64 - 3));
        let prod = f.mul(&f.invert());
        assert_eq!(prod.val, 0);
        assert_eq!(prod.coeff(0), rat_int(1));
        for d in 1..=prod.trunc {
            assert_eq!(prod.coeff(d), rat_int(0));
        }
    }
}
