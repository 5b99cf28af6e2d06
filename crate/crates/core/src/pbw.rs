//! Exact arithmetic in the universal enveloping algebra U(sl2).
//!
//! Elements are stored in the ordered basis (X^-)^a H^b (X^+)^c with
//! coefficients in any [`Coeff`] ring. Products are reduced to this basis via
//! the straightening identity
//!
//! ```text
//! X^+^c X^-^a = (X^+^{c-1} X^-^a) X^+  +  a (X^+^{c-1} X^-^{a-1}) (H - a + 1)
//! ```
//!
//! whose rational-coefficient normal forms are memoized process-wide, so
//! repeated products at the same exponents cost only table lookups.

use crate::ring::{rat_int, Coeff};
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Exponent triple (a, b, c) for (X^-)^a H^b (X^+)^c.
pub type Mono = (u32, u32, u32);

#[derive(Clone, PartialEq, Debug)]
pub struct PBWElement<R: Coeff> {
    pub terms: BTreeMap<Mono, R>,
}

/// Dense coefficient vector of (H + shift)^pow in powers of H.
fn shifted_h_power(shift: i64, pow: u32) -> Vec<BigRational> {
    let mut out = vec![rat_int(1)];
    for _ in 0..pow {
        let mut next = vec![BigRational::from_integer(0.into()); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] += c;
            next[i] += c * rat_int(shift);
        }
        out = next;
    }
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::from_integer(0.into()); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Normal form of X^+^c X^-^a over Q, memoized.
fn straighten(c: u32, a: u32) -> Arc<PBWElement<BigRational>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<PBWElement<BigRational>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&(c, a)) {
        return e.clone();
    }
    let result = if c == 0 {
        PBWElement::monomial((a, 0, 0), rat_int(1))
    } else {
        // X^+^c X^-^a = (X^+^{c-1} X^-^a) X^+ + a (X^+^{c-1} X^-^{a-1})(H-a+1)
        let left = straighten(c - 1, a);
        let mut acc: PBWElement<BigRational> = PBWElement::zero();
        for (&(at, bt, ct), q) in &left.terms {
            acc.add_term((at, bt, ct + 1), q.clone());
        }
        if a > 0 {
            let right = straighten(c - 1, a - 1);
            let scale = rat_int(a as i64);
            for (&(at, bt, ct), q) in &right.terms {
                // Multiply on the right by (H - a + 1); commute it left past
                // X^+^ct, where it becomes (H - 2 ct - a + 1).
                let shift = -2 * (ct as i64) - a as i64 + 1;
                let q = q * &scale;
                acc.add_term((at, bt + 1, ct), q.clone());
                acc.add_term((at, bt, ct), q * rat_int(shift));
            }
        }
        acc
    };
    let arc = Arc::new(result);
    cache.lock().unwrap().insert((c, a), arc.clone());
    arc
}

impl<R: Coeff> PBWElement<R> {
    pub fn monomial(m: Mono, c: R) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn constant(c: R) -> Self {
        Self::monomial((0, 0, 0), c)
    }

    pub fn gen_xm() -> Self {
        Self::monomial((1, 0, 0), R::one())
    }

    pub fn gen_h() -> Self {
        Self::monomial((0, 1, 0), R::one())
    }

    pub fn gen_xp() -> Self {
        Self::monomial((0, 0, 1), R::one())
    }

    /// The Casimir element (H+1)^2 + 4 X^- X^+.
    pub fn casimir() -> Self {
        let mut e = Self::zero();
        e.add_term((0, 2, 0), R::one());
        e.add_term((0, 1, 0), R::from_int(2));
        e.add_term((0, 0, 0), R::one());
        e.add_term((1, 0, 1), R::from_int(4));
        e
    }

    pub fn add_term(&mut self, m: Mono, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coeff(&self, m: Mono) -> R {
        self.terms.get(&m).cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (&m, v) in &self.terms {
            out.add_term(m, v.mul(c));
        }
        out
    }

    /// Polynomial in H alone, from ascending coefficients.
    pub fn h_poly(coeffs: &[R]) -> Self {
        let mut out = Self::zero();
        for (b, c) in coeffs.iter().enumerate() {
            out.add_term((0, b as u32, 0), c.clone());
        }
        out
    }

    fn mul_monomials(out: &mut Self, m1: Mono, c1: &R, m2: Mono, c2: &R) {
        let (a1, b1, cc1) = m1;
        let (a2, b2, cc2) = m2;
        let c12 = c1.mul(c2);
        for (&(at, bt, ct), q) in &straighten(cc1, a2).terms {
            // X^-^{a1} H^{b1} . X^-^{at} H^{bt} X^+^{ct} . H^{b2} X^+^{cc2}
            //   = X^-^{a1+at} (H-2at)^{b1} H^{bt} (H-2ct)^{b2} X^+^{ct+cc2}
            let mut poly = shifted_h_power(-2 * (at as i64), b1);
            if bt > 0 {
                let mut hb = vec![BigRational::from_integer(0.into()); bt as usize + 1];
                hb[bt as usize] = rat_int(1);
                poly = poly_mul(&poly, &hb);
            }
            if b2 > 0 {
                poly = poly_mul(&poly, &shifted_h_power(-2 * (ct as i64), b2));
            }
            let scaled = c12.mul(&R::from_rat(q));
            for (b, pc) in poly.iter().enumerate() {
                if !num_traits::Zero::is_zero(pc) {
                    out.add_term(
                        (a1 + at, b as u32, ct + cc2),
                        scaled.mul(&R::from_rat(pc)),
                    );
                }
            }
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        Coeff::mul(self, rhs).sub(&Coeff::mul(rhs, self))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(R::one());
        for _ in 0..k {
            acc = Coeff::mul(&acc, self);
        }
        acc
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> PBWElement<S> {
        let mut out = PBWElement::zero();
        for (&m, c) in &self.terms {
            out.add_term(m, f(c));
        }
        out
    }
}

impl<R: Coeff> Coeff for PBWElement<R> {
    fn zero() -> Self {
        PBWElement {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        PBWElement {
            terms: self.terms.iter().map(|(&m, c)| (m, c.neg())).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &rhs.terms {
                Self::mul_monomials(&mut out, m1, c1, m2, c2);
            }
        }
        out
    }
    fn from_rat(r: &BigRational) -> Self {
        Self::constant(R::from_rat(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = PBWElement<BigRational>;

    #[test]
    fn defining_relations_of_sl2() {
        let h = P::gen_h();
        let xp = P::gen_xp();
        let xm = P::gen_xm();
        assert_eq!(h.commutator(&xp), xp.scale(&rat_int(2)));
        assert_eq!(h.commutator(&xm), xm.scale(&rat_int(-2)));
        assert_eq!(xp.commutator(&xm), h);
    }

    #[test]
    fn casimir_both_normal_forms() {
        // (H+1)^2 + 4 X^- X^+ = (H-1)^2 + 4 X^+ X^-
        let c = P::casimir();
        let hm1_sq = P::h_poly(&[rat_int(1), rat_int(-2), rat_int(1)]);
        let other = hm1_sq.add(&Coeff::mul(&P::gen_xp(), &P::gen_xm()).scale(&rat_int(4)));
        assert_eq!(c, other);
    }

    #[test]
    fn casimir_is_central() {
        let c = P::casimir();
        for g in [P::gen_xm(), P::gen_h(), P::gen_xp()] {
            assert!(c.commutator(&g).is_zero());
        }
    }

    #[test]
    fn straightening_low_cases() {
        let xp = P::gen_xp();
        let xm = P::gen_xm();
        // X^+ X^- = X^- X^+ + H
        let lhs = Coeff::mul(&xp, &xm);
        let rhs = Coeff::mul(&xm, &xp).add(&P::gen_h());
        assert_eq!(lhs, rhs);
        // X^+ X^-^2 = X^-^2 X^+ + 2 X^- (H - 1)
        let lhs2 = Coeff::mul(&xp, &xm.pow(2));
        let rhs2 = Coeff::mul(&xm.pow(2), &xp).add(
            &Coeff::mul(&xm, &P::h_poly(&[rat_int(-1), rat_int(1)])).scale(&rat_int(2)),
        );
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn powers_of_commutator_expand_consistently() {
        // [X^+^2, X^-^2] should match direct expansion.
        let xp = P::gen_xp();
        let xm = P::gen_xm();
        let lhs = xp.pow(2).commutator(&xm.pow(2));
        let direct = Coeff::mul(&Coeff::mul(&xp, &Coeff::mul(&xp, &xm)), &xm)
            .sub(&Coeff::mul(&xm, &Coeff::mul(&xm, &Coeff::mul(&xp, &xp))));
        assert_eq!(lhs, direct);
    }

    fn small_elem() -> impl Strategy<Value = P> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..4).prop_map(|v| {
            let mut e = P::zero();
            for (m, c) in v {
                e.add_term(m, rat_int(c));
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn multiplication_is_associative(a in small_elem(), b in small_elem(), c in small_elem()) {
            let lhs = Coeff::mul(&Coeff::mul(&a, &b), &c);
            let rhs = Coeff::mul(&a, &Coeff::mul(&b, &c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multiplication_distributes(a in small_elem(), b in small_elem(), c in small_elem()) {
            let lhs = Coeff::mul(&a, &b.add(&c));
            let rhs = Coeff::mul(&a, &b).add(&Coeff::mul(&a, &c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
