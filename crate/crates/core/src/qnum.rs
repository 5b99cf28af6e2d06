//! The interpolation polynomial and the interpolating quantum numbers.
//!
//! The degree-(2g-2) Laurent polynomial P is built along two independent
//! routes — a product over the nontrivial 2g-th roots of unity, and a closed
//! cosine-sum form — and the two are checked against each other once per g.
//! The interpolating quantum number [a] is likewise built along two routes:
//! an analytic one through sinhc quotients in (h, h'), and a lattice one as a
//! finite sum of exponentials with Laurent-polynomial coefficients in Q; the
//! expansion of the second must reproduce the first coefficient for
//! coefficient.

use crate::cyclo::{eps_pow, CycloNumber};
use crate::laurent::LaurentPoly;
use crate::ring::{factorial, rat, rat_int, Coeff};
use crate::series::{BiSeries, Model, USeries};
use num_rational::BigRational;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Product form: (1/2)(u^{g-1} + u^{1-g}) prod_{k=1}^{g-1}
/// (eps^k u - eps^{-k} u^{-1}) / (eps^k - eps^{-k}).
pub fn interp_poly_product(g: u32) -> LaurentPoly<CycloNumber> {
    let half = CycloNumber::rational(rat(1, 2));
    let mut p = LaurentPoly::term(g as i64 - 1, half.clone());
    p.add_term(1 - g as i64, half);
    for k in 1..g as i64 {
        let mut factor = LaurentPoly::term(1, eps_pow(g, k));
        factor.add_term(-1, eps_pow(g, -k).neg());
        let denom = eps_pow(g, k).sub(&eps_pow(g, -k));
        p = Coeff::mul(&p, &factor.scale(&denom.inv().expect("eps^k - eps^-k nonzero for 0<k<g")));
    }
    p
}

/// Closed form: (1/2g) sum_{k=0}^{g-1} (u^{2k} + u^{-2k}).
pub fn interp_poly_closed(g: u32) -> LaurentPoly<BigRational> {
    let c = rat(1, 2 * g as i64);
    let mut p = LaurentPoly::new();
    for k in 0..g as i64 {
        p.add_term(2 * k, c.clone());
        p.add_term(-2 * k, c.clone());
    }
    p
}

/// The interpolation polynomial P for a given g, with both construction
/// routes compared on first use and the result cached.
pub fn interp_poly(g: u32) -> LaurentPoly<BigRational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, LaurentPoly<BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&g) {
        return p.clone();
    }
    let closed = interp_poly_closed(g);
    let product = interp_poly_product(g)
        .try_rational()
        .expect("product form must have rational coefficients");
    assert_eq!(closed, product, "interpolation polynomial routes disagree at g={}", g);
    cache.lock().unwrap().insert(g, closed.clone());
    closed
}

/// P evaluated at u = eps^l: equals 1 when g | l and 0 otherwise.
pub fn interp_poly_at_eps_pow(g: u32, l: i64) -> CycloNumber {
    interp_poly(g)
        .map_coeffs(CycloNumber::from_rat)
        .eval_at_eps_pow(g, l)
}

/// The bracing {a} = P(Q^a), a Laurent polynomial in Q. Symmetric in a.
pub fn brace_poly(g: u32, a: i64) -> LaurentPoly<BigRational> {
    interp_poly(g).subst_power(a)
}

/// {a} at Q = eps: the divisibility indicator [g | a].
pub fn brace_at_eps(g: u32, a: i64) -> CycloNumber {
    brace_poly(g, a)
        .map_coeffs(CycloNumber::from_rat)
        .eval_at_eps_pow(g, 1)
}

/// Substitute Q = exp(h) into a Laurent polynomial in Q and expand.
pub fn exp_expand(p: &LaurentPoly<BigRational>, trunc: u32) -> USeries<BigRational> {
    let mut s = USeries::zero(trunc);
    for n in 0..=trunc {
        let mut acc = BigRational::zero();
        for (&e, c) in &p.terms {
            let mut pw = rat_int(1);
            for _ in 0..n {
                pw *= rat_int(e);
            }
            acc += c * pw;
        }
        s.coeffs[n as usize] = acc / factorial(n);
    }
    s
}

/// {a} expanded at Q = exp(h), as a series in h.
pub fn brace_series(g: u32, a: i64, trunc: u32) -> USeries<BigRational> {
    exp_expand(&brace_poly(g, a), trunc)
}

/// Analytic route for the interpolating quantum number [a]: with
/// x = h + h' {a}(exp h), this is sinh(a x)/sinh(x) as a series in (h, h').
pub fn interp_qnum_analytic(g: u32, a: i64, trunc: u32) -> BiSeries<BigRational> {
    if a == 0 {
        return BiSeries::zero(trunc);
    }
    if a < 0 {
        return interp_qnum_analytic(g, -a, trunc).neg();
    }
    let brace_h = BiSeries::from_h_series(&brace_series(g, a, trunc));
    let x = BiSeries::h(trunc).add(&BiSeries::hp(trunc).mul(&brace_h));
    let num = BiSeries::compose_model(Model::Sinhc, &x.scale(&rat_int(a)));
    let den = BiSeries::compose_model(Model::Sinhc, &x);
    num.mul(&den.invert_unit()).scale(&rat_int(a))
}

/// Lattice route: [a] = sum_{k=0}^{a-1} Q^{a-1-2k} exp(h' (a-1-2k) {a}(Q)),
/// a series in h' whose coefficients are Laurent polynomials in Q.
pub fn interp_qnum_lattice(g: u32, a: i64, trunc: u32) -> USeries<LaurentPoly<BigRational>> {
    if a == 0 {
        return USeries::zero(trunc);
    }
    if a < 0 {
        return interp_qnum_lattice(g, -a, trunc).neg();
    }
    let brace = brace_poly(g, a);
    let mut acc = USeries::zero(trunc);
    for k in 0..a {
        let e = a - 1 - 2 * k;
        // exp(h' e {a}(Q)) via model composition in the variable h'.
        let expo = if trunc == 0 {
            USeries::one(0)
        } else {
            let arg = USeries::var(trunc).scale(&brace.scale(&rat_int(e)));
            USeries::compose_model(Model::Exp, &arg)
        };
        acc = acc.add(&expo.scale(&LaurentPoly::monomial(e)));
    }
    acc
}

/// Expand the lattice form at Q = exp(h) into a bivariate series in (h, h').
pub fn lattice_to_biseries(s: &USeries<LaurentPoly<BigRational>>) -> BiSeries<BigRational> {
    let trunc = s.trunc;
    let mut out = BiSeries::zero(trunc);
    for (j, p) in s.coeffs.iter().enumerate() {
        let rem = trunc - j as u32;
        let hs = exp_expand(p, rem);
        for (i, c) in hs.coeffs.iter().enumerate() {
            out.add_term(i as u32, j as u32, c.clone());
        }
    }
    out
}

/// The interpolating quantum number [a], with both routes computed and
/// compared; returns the bivariate expansion.
pub fn interp_qnum(g: u32, a: i64, trunc: u32) -> BiSeries<BigRational> {
    let analytic = interp_qnum_analytic(g, a, trunc);
    let lattice = lattice_to_biseries(&interp_qnum_lattice(g, a, trunc));
    assert_eq!(
        analytic, lattice,
        "quantum-number routes disagree at g={}, a={}",
        g, a
    );
    analytic
}

/// Specialize the lattice form at Q = eps, leaving a series in h' with
/// cyclotomic coefficients.
pub fn specialize_lattice(g: u32, s: &USeries<LaurentPoly<BigRational>>) -> USeries<CycloNumber> {
    s.map_coeffs(|p| p.map_coeffs(CycloNumber::from_rat).eval_at_eps_pow(g, 1))
}

/// Classical one-parameter quantum number sinh(a s x)/sinh(s x) as a series
/// in x, for an integer base scale s (the base is exp(s x)).
pub fn classical_qnum_series(a: i64, s: i64, trunc: u32) -> USeries<BigRational> {
    if a == 0 {
        return USeries::zero(trunc);
    }
    if a < 0 {
        return classical_qnum_series(-a, s, trunc).neg();
    }
    let x = USeries::var(trunc).scale(&rat_int(s));
    let num = USeries::compose_model(Model::Sinhc, &x.scale(&rat_int(a)));
    let den = USeries::compose_model(Model::Sinhc, &x);
    num.mul(&den.invert_unit()).scale(&rat_int(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_polynomial_routes_agree() {
        for g in 1..=8 {
            let _ = interp_poly(g);
        }
    }

    #[test]
    fn small_interpolation_polynomials() {
        // g = 1: P = 1. g = 2: P = (u^2 + 2 + u^-2)/4.
        assert_eq!(interp_poly(1), LaurentPoly::constant(rat_int(1)));
        let p2 = interp_poly(2);
        assert_eq!(p2.coeff(2), rat(1, 4));
        assert_eq!(p2.coeff(0), rat(1, 2));
        assert_eq!(p2.coeff(-2), rat(1, 4));
    }

    #[test]
    fn values_at_roots_of_unity_are_indicators() {
        for g in 1..=8u32 {
            for l in -(2 * g as i64)..=2 * g as i64 {
                let v = interp_poly_at_eps_pow(g, l);
                let expect = if l.rem_euclid(g as i64) == 0 {
                    CycloNumber::one()
                } else {
                    CycloNumber::zero()
                };
                assert_eq!(v, expect, "P(eps^{}) at g={}", l, g);
            }
        }
    }

    #[test]
    fn braces_specialize_to_divisibility_indicator() {
        for g in 1..=6u32 {
            for a in -12..=12i64 {
                let v = brace_at_eps(g, a);
                let expect = if a.rem_euclid(g as i64) == 0 {
                    CycloNumber::one()
                } else {
                    CycloNumber::zero()
                };
                assert_eq!(v, expect, "{{{}}} at eps, g={}", a, g);
            }
        }
    }

    #[test]
    fn quantum_number_routes_agree() {
        for g in 1..=3u32 {
            for a in [-5i64, -2, -1, 0, 1, 2, 3, 7] {
                let _ = interp_qnum(g, a, 5);
            }
        }
    }

    #[test]
    fn g_one_reduces_to_single_parameter() {
        // At g = 1 the brace is constantly 1, so [a] = sinh(a(h+h'))/sinh(h+h').
        let n = 6;
        for a in 1..=4i64 {
            let q = interp_qnum(1, a, n);
            let x = BiSeries::h(n).add(&BiSeries::hp(n));
            let expect = BiSeries::compose_model(Model::Sinhc, &x.scale(&rat_int(a)))
                .mul(&BiSeries::compose_model(Model::Sinhc, &x).invert_unit())
                .scale(&rat_int(a));
            assert_eq!(q, expect);
        }
    }

    #[test]
    fn classical_limit_at_hp_zero() {
        // Setting h' = 0 must give the ordinary quantum number sinh(ah)/sinh(h).
        for g in 1..=4u32 {
            for a in 1..=6i64 {
                let q = interp_qnum_analytic(g, a, 6);
                assert_eq!(q.slice_h(), classical_qnum_series(a, 1, 6));
            }
        }
    }

    #[test]
    fn second_parameter_limit_at_h_zero() {
        // Setting h = 0: braces become P(1) = 1, so [a] = sinh(ah')/sinh(h').
        for g in 1..=4u32 {
            for a in 1..=6i64 {
                let q = interp_qnum_analytic(g, a, 6);
                assert_eq!(q.slice_hp(), classical_qnum_series(a, 1, 6));
            }
        }
    }

    #[test]
    fn oddness_in_the_index() {
        for g in 1..=3u32 {
            for a in 1..=5i64 {
                let plus = interp_qnum_analytic(g, a, 5);
                let minus = interp_qnum_analytic(g, -a, 5);
                assert_eq!(minus, plus.neg());
            }
        }
    }

    #[test]
    fn lattice_specialization_matches_case_analysis() {
        // At Q = eps the lattice form keeps only the expected exponentials.
        let g = 2u32;
        let n = 4;
        // a = 2 = g: {2} -> 1, so [2] at eps is eps T^2 ... + eps^-1 T^-2
        // i.e. sum over k of eps^{1-2k} exp(h'(1-2k)).
        let s = specialize_lattice(g, &interp_qnum_lattice(g, 2, n));
        let t = USeries::<BigRational>::var(n);
        let e1 = USeries::compose_model(Model::Exp, &t.clone());
        let em1 = USeries::compose_model(Model::Exp, &t.neg());
        let expect = e1
            .map_coeffs(|c| CycloNumber::from_rat(c).mul(&eps_pow(g, 1)))
            .add(&em1.map_coeffs(|c| CycloNumber::from_rat(c).mul(&eps_pow(g, -1))));
        assert_eq!(s, expect);
    }
}
