//! The two-parameter interpolating algebra, realized inside U(sl2)[[h, h']].
//!
//! The algebra with generators X^+, X^-, H, C is handled through its faithful
//! realization: H, C and X^- map to their classical counterparts, while X^+
//! maps to F * X^+ for a correction factor F that is a series in (h, h') with
//! coefficients polynomial in H and the square root S of the Casimir. F is
//! even in S, so S^2 -> C turns every expression into an honest element of
//! U(sl2)[[h, h']], where all verification happens coefficient by
//! coefficient.
//!
//! The right-hand sides of the product relations are products over e = +/-1
//! of interpolating quantum numbers indexed by the commuting operators
//! (S + eH -+ e)/2; these are built in the commutative polynomial ring
//! [`CPoly`] in (H, S) and substituted into PBW form afterwards.

use crate::pbw::PBWElement;
use crate::qnum::interp_poly;
use crate::ring::{rat, rat_int, Coeff};
use crate::series::{BiSeries, Model, USeries};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::sync::Mutex;

/// Commutative polynomial in (H, S) over Q; key (b, s) is H^b S^s.
/// S stands for a square root of the Casimir and only ever appears in even
/// total powers by the time an expression is substituted into PBW form.
#[derive(Clone, PartialEq, Debug)]
pub struct CPoly {
    pub terms: BTreeMap<(u32, u32), BigRational>,
}

impl CPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn hvar() -> Self {
        let mut p = Self::zero();
        p.add_term(1, 0, rat_int(1));
        p
    }

    pub fn svar() -> Self {
        let mut p = Self::zero();
        p.add_term(0, 1, rat_int(1));
        p
    }

    pub fn add_term(&mut self, b: u32, s: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(b, s)) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&(b, s));
                }
            }
            None => {
                self.terms.insert((b, s), c);
            }
        }
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(b, s), v) in &self.terms {
            out.add_term(b, s, v * c);
        }
        out
    }

    pub fn is_even_in_s(&self) -> bool {
        self.terms.keys().all(|&(_, s)| s % 2 == 0)
    }

    /// Substitute H -> h_img and S^2 -> c_img into PBW form. The two images
    /// must commute for the result to be well defined; in practice they are
    /// +/-H and the Casimir.
    pub fn subst(
        &self,
        h_img: &PBWElement<BigRational>,
        c_img: &PBWElement<BigRational>,
    ) -> PBWElement<BigRational> {
        let mut out = PBWElement::zero();
        let mut h_pows: Vec<PBWElement<BigRational>> = vec![PBWElement::one()];
        let mut c_pows: Vec<PBWElement<BigRational>> = vec![PBWElement::one()];
        for (&(b, s), q) in &self.terms {
            assert!(s % 2 == 0, "expression is not even in the Casimir root");
            while h_pows.len() <= b as usize {
                let next = Coeff::mul(h_pows.last().unwrap(), h_img);
                h_pows.push(next);
            }
            let m = (s / 2) as usize;
            while c_pows.len() <= m {
                let next = Coeff::mul(c_pows.last().unwrap(), c_img);
                c_pows.push(next);
            }
            let term = Coeff::mul(&h_pows[b as usize], &c_pows[m]).scale(q);
            out = out.add(&term);
        }
        out
    }
}

impl Coeff for CPoly {
    fn zero() -> Self {
        CPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::constant(rat_int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(b, s), c) in &rhs.terms {
            out.add_term(b, s, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        CPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(b1, s1), c1) in &self.terms {
            for (&(b2, s2), c2) in &rhs.terms {
                out.add_term(b1 + b2, s1 + s2, c1 * c2);
            }
        }
        out
    }
    fn from_rat(r: &BigRational) -> Self {
        Self::constant(r.clone())
    }
    fn inv(&self) -> Option<Self> {
        // Only nonzero rational constants are units of the polynomial ring.
        if self.terms.len() != 1 {
            return None;
        }
        let (&(b, s), c) = self.terms.iter().next().unwrap();
        if b == 0 && s == 0 {
            Some(Self::constant(c.recip()))
        } else {
            None
        }
    }
}

/// Series in (h, h') with coefficients in the commutative (H, S) ring.
pub type OpSeries = BiSeries<CPoly>;

/// Series in (h, h') with PBW coefficients: the working representation of
/// elements of the two-parameter algebra.
pub type Elt = BiSeries<PBWElement<BigRational>>;

/// The quotient a * sinhc(a x) / sinhc(x) for a commuting operator index a
/// and a series x without constant term; equals sinh(a x)/sinh(x).
fn scalar_qnum(a: &CPoly, x: &OpSeries) -> OpSeries {
    sinhc_ratio(a, x).scale(a)
}

/// sinhc(a x) / sinhc(x): the quantum number above without its a prefactor.
fn sinhc_ratio(a: &CPoly, x: &OpSeries) -> OpSeries {
    let num = BiSeries::compose_model(Model::Sinhc, &x.scale(a));
    let den = BiSeries::compose_model(Model::Sinhc, x);
    num.mul(&den.invert_unit())
}

pub struct AlgCtx {
    pub g: u32,
    pub trunc: u32,
    /// The correction factor F with S^2 already replaced by the Casimir.
    psi_f: Elt,
    /// psi(X^+) = F * X^+.
    psi_xp: Elt,
    /// Cached powers of psi(X^+), index = exponent.
    xp_pows: Mutex<Vec<Elt>>,
}

impl AlgCtx {
    pub fn new(g: u32, trunc: u32) -> Self {
        assert!(g >= 1);
        let f_op = Self::correction_factor_op(g, trunc, 1);
        for c in f_op.terms.values() {
            assert!(c.is_even_in_s(), "correction factor must be even in S");
        }
        let h_img = PBWElement::gen_h();
        let c_img = PBWElement::casimir();
        let psi_f = f_op.map_coeffs(|p| p.subst(&h_img, &c_img));
        let xp = BiSeries::constant(trunc, PBWElement::gen_xp());
        let psi_xp = psi_f.mul(&xp);
        AlgCtx {
            g,
            trunc,
            psi_f,
            psi_xp,
            xp_pows: Mutex::new(Vec::new()),
        }
    }

    /// The operator index (S + eH -+ e)/2; `lower` picks the variant with +e.
    fn op_index(e: i64, h_sign: i64, lower: bool) -> CPoly {
        let mut a = CPoly::svar().scale_rat(&rat(1, 2));
        a = a.add(&CPoly::hvar().scale_rat(&rat(e * h_sign, 2)));
        let c = if lower { rat(e, 2) } else { rat(-e, 2) };
        a.add(&CPoly::constant(c))
    }

    /// The bracing of a commuting operator a: P(exp(h a)) expanded, a series
    /// in h with coefficients polynomial in (H, S).
    fn brace_op(g: u32, trunc: u32, a: &CPoly) -> OpSeries {
        let p = interp_poly(g);
        let mut acc = BiSeries::zero(trunc);
        for (&e, c) in &p.terms {
            let arg = BiSeries::h(trunc).scale(&a.scale_rat(&rat_int(e)));
            let expo = BiSeries::compose_model(Model::Exp, &arg);
            acc = acc.add(&expo.scale(&CPoly::constant(c.clone())));
        }
        acc
    }

    /// The deformation argument x_a = h + h' {a}.
    fn x_of(g: u32, trunc: u32, a: &CPoly) -> OpSeries {
        let brace = Self::brace_op(g, trunc, a);
        BiSeries::h(trunc).add(&BiSeries::hp(trunc).mul(&brace))
    }

    /// Product over e = +/-1 of the interpolating quantum numbers indexed by
    /// the operators (S + eH -+ e)/2, in the (H, S) ring.
    fn relation_rhs_op(g: u32, trunc: u32, h_sign: i64, lower: bool) -> OpSeries {
        let mut acc = BiSeries::one(trunc);
        for e in [1i64, -1] {
            let a = Self::op_index(e, h_sign, lower);
            let x = Self::x_of(g, trunc, &a);
            acc = acc.mul(&scalar_qnum(&a, &x));
        }
        acc
    }

    /// Product over e = +/-1 of sinhc(a_e x_e)/sinhc(x_e) for the upper
    /// operator indices: the correction factor before substitution.
    fn correction_factor_op(g: u32, trunc: u32, h_sign: i64) -> OpSeries {
        let mut acc = BiSeries::one(trunc);
        for e in [1i64, -1] {
            let a = Self::op_index(e, h_sign, false);
            let x = Self::x_of(g, trunc, &a);
            acc = acc.mul(&sinhc_ratio(&a, &x));
        }
        acc
    }

    fn op_to_elt(&self, s: &OpSeries, h_sign: i64) -> Elt {
        let h_img = PBWElement::gen_h().scale(&rat_int(h_sign));
        let c_img = PBWElement::casimir();
        s.map_coeffs(|p| p.subst(&h_img, &c_img))
    }

    pub fn constant(&self, p: PBWElement<BigRational>) -> Elt {
        BiSeries::constant(self.trunc, p)
    }

    pub fn psi_xp(&self) -> Elt {
        self.psi_xp.clone()
    }

    pub fn psi_xm(&self) -> Elt {
        self.constant(PBWElement::gen_xm())
    }

    pub fn psi_h(&self) -> Elt {
        self.constant(PBWElement::gen_h())
    }

    pub fn psi_c(&self) -> Elt {
        self.constant(PBWElement::casimir())
    }

    pub fn correction_factor(&self) -> Elt {
        self.psi_f.clone()
    }

    /// psi(X^+)^c with caching.
    pub fn psi_xp_pow(&self, c: u32) -> Elt {
        let mut cache = self.xp_pows.lock().unwrap();
        if cache.is_empty() {
            cache.push(BiSeries::constant(self.trunc, PBWElement::one()));
        }
        while cache.len() <= c as usize {
            let next = cache.last().unwrap().mul(&self.psi_xp);
            cache.push(next);
        }
        cache[c as usize].clone()
    }

    /// Check the defining relations on a triple of generator images. For an
    /// anti-automorphism pass `opposite = true`: every product is then taken
    /// in reversed order. `h_sign` is the sign the map puts on H (and hence
    /// inside every operator index on the right-hand sides).
    pub fn check_relations(
        &self,
        img_xp: &Elt,
        img_xm: &Elt,
        h_sign: i64,
        opposite: bool,
    ) -> Vec<(String, bool)> {
        let prod = |a: &Elt, b: &Elt| if opposite { b.mul(a) } else { a.mul(b) };
        let comm = |a: &Elt, b: &Elt| prod(a, b).sub(&prod(b, a));
        let h = self.psi_h().scale(&PBWElement::constant(rat_int(h_sign)));
        let c = self.psi_c();
        let two = PBWElement::constant(rat_int(2));

        let rhs_upper =
            self.op_to_elt(&Self::relation_rhs_op(self.g, self.trunc, h_sign, false), 1);
        let rhs_lower =
            self.op_to_elt(&Self::relation_rhs_op(self.g, self.trunc, h_sign, true), 1);

        vec![
            (
                "weight_raising".into(),
                comm(&h, img_xp).sub(&img_xp.scale(&two)).is_zero(),
            ),
            (
                "weight_lowering".into(),
                comm(&h, img_xm).add(&img_xm.scale(&two)).is_zero(),
            ),
            (
                "product_upper".into(),
                prod(img_xp, img_xm).sub(&rhs_upper).is_zero(),
            ),
            (
                "product_lower".into(),
                prod(img_xm, img_xp).sub(&rhs_lower).is_zero(),
            ),
            (
                "casimir_central_xp".into(),
                comm(&c, img_xp).is_zero(),
            ),
            (
                "casimir_central_xm".into(),
                comm(&c, img_xm).is_zero(),
            ),
            ("casimir_central_h".into(), comm(&c, &h).is_zero()),
        ]
    }

    /// Relations for the identity realization.
    pub fn check_defining_relations(&self) -> Vec<(String, bool)> {
        self.check_relations(&self.psi_xp(), &self.psi_xm(), 1, false)
    }

    /// The automorphism X^+ <-> X^-, H -> -H, C -> C.
    pub fn check_flip_automorphism(&self) -> Vec<(String, bool)> {
        self.check_relations(&self.psi_xm(), &self.psi_xp(), -1, false)
    }

    /// The anti-automorphism fixing X^+ and X^- with H -> -H, C -> C.
    pub fn check_transpose_antiautomorphism(&self) -> Vec<(String, bool)> {
        self.check_relations(&self.psi_xp(), &self.psi_xm(), -1, true)
    }

    /// The commutator [X^+, X^-] in the realization.
    pub fn commutator_xp_xm(&self) -> Elt {
        let xp = self.psi_xp();
        let xm = self.psi_xm();
        xp.mul(&xm).sub(&xm.mul(&xp))
    }

    /// Expansion of sinh(x H)/sinh(x) in a single variable x, with PBW
    /// coefficients (polynomials in the classical H).
    pub fn h_qnum_series(&self, trunc: u32) -> USeries<PBWElement<BigRational>> {
        let x: BiSeries<CPoly> = BiSeries::h(trunc);
        let q = scalar_qnum(&CPoly::hvar(), &x);
        let h_img = PBWElement::gen_h();
        let c_img = PBWElement::casimir();
        q.map_coeffs(|p| p.subst(&h_img, &c_img)).slice_h()
    }

    /// Expansion of sinh((h + h') H)/sinh(h + h') with PBW coefficients: the
    /// closed form of the commutator in the g = 1 case.
    pub fn merged_qnum_biseries(&self) -> Elt {
        let x: BiSeries<CPoly> = BiSeries::h(self.trunc).add(&BiSeries::hp(self.trunc));
        let q = scalar_qnum(&CPoly::hvar(), &x);
        self.op_to_elt(&q, 1)
    }

    /// Coordinates of a series element in the ordered monomial basis
    /// psi(X^-)^a psi(H)^b psi(X^+)^c, solved order by order. The expansion
    /// is triangular because every psi-monomial equals its classical monomial
    /// plus higher-order terms. Panics if the element does not lie in the
    /// span (it always does for elements of the algebra).
    pub fn pbw_coordinates(
        &self,
        target: &Elt,
    ) -> BTreeMap<(u32, u32), PBWElement<BigRational>> {
        let mut residual = target.clone();
        let mut coords = BTreeMap::new();
        for k in 0..=self.trunc {
            for i in 0..=k {
                let j = k - i;
                let r = residual.coeff(i, j);
                if r.is_zero() {
                    continue;
                }
                // Subtract r's worth of psi-monomials shifted by h^i h'^j.
                let mut shift = BiSeries::zero(self.trunc);
                shift.add_term(i, j, PBWElement::one());
                for (&(a, b, c), q) in &r.terms {
                    let head = PBWElement::monomial((a, b, 0), q.clone());
                    let img = self.constant(head).mul(&self.psi_xp_pow(c));
                    residual = residual.sub(&img.mul(&shift));
                }
                coords.insert((i, j), r);
            }
        }
        assert!(
            residual.is_zero(),
            "coordinate extraction left a nonzero residual"
        );
        coords
    }

    /// Coordinates of the Casimir generator.
    pub fn casimir_coords(&self) -> BTreeMap<(u32, u32), PBWElement<BigRational>> {
        self.pbw_coordinates(&self.psi_c())
    }

    /// Coordinates of the commutator [X^+, X^-].
    pub fn commutator_coords(&self) -> BTreeMap<(u32, u32), PBWElement<BigRational>> {
        self.pbw_coordinates(&self.commutator_xp_xm())
    }

    /// The Harish-Chandra image of an element given by its coordinates:
    /// drop every monomial containing X^+ or X^-, then shift H -> H - 1.
    /// Returns the image per power of (h, h') as a polynomial in H.
    pub fn harish_chandra(
        coords: &BTreeMap<(u32, u32), PBWElement<BigRational>>,
    ) -> BTreeMap<(u32, u32), PBWElement<BigRational>> {
        let shifted_h = {
            let mut p = PBWElement::gen_h();
            p.add_term((0, 0, 0), rat_int(-1));
            p
        };
        let mut out = BTreeMap::new();
        for (&nm, p) in coords {
            let mut img = PBWElement::zero();
            for (&(a, b, c), q) in &p.terms {
                if a == 0 && c == 0 {
                    img = img.add(&shifted_h.pow(b).scale(q));
                }
            }
            if !img.is_zero() {
                out.insert(nm, img);
            }
        }
        out
    }
}

/// Whether every monomial of every coordinate is balanced (equal powers of
/// X^- and X^+).
pub fn coords_balanced(coords: &BTreeMap<(u32, u32), PBWElement<BigRational>>) -> bool {
    coords
        .values()
        .all(|p| p.terms.keys().all(|&(a, _, c)| a == c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correction_factor_starts_at_one() {
        for g in 1..=2u32 {
            let ctx = AlgCtx::new(g, 3);
            let f = ctx.correction_factor();
            assert_eq!(f.coeff(0, 0), PBWElement::one());
        }
    }

    #[test]
    fn relations_hold_at_low_order() {
        let ctx = AlgCtx::new(1, 3);
        for (name, ok) in ctx.check_defining_relations() {
            assert!(ok, "relation {} failed", name);
        }
        let ctx2 = AlgCtx::new(2, 3);
        for (name, ok) in ctx2.check_defining_relations() {
            assert!(ok, "relation {} failed at g=2", name);
        }
    }

    #[test]
    fn flip_and_transpose_symmetries_at_low_order() {
        let ctx = AlgCtx::new(2, 3);
        for (name, ok) in ctx.check_flip_automorphism() {
            assert!(ok, "flip {} failed", name);
        }
        for (name, ok) in ctx.check_transpose_antiautomorphism() {
            assert!(ok, "transpose {} failed", name);
        }
    }

    #[test]
    fn commutator_single_parameter_limits() {
        let ctx = AlgCtx::new(2, 4);
        let k = ctx.commutator_xp_xm();
        let expect = ctx.h_qnum_series(4);
        assert_eq!(k.slice_h(), expect);
        assert_eq!(k.slice_hp(), expect);
    }

    #[test]
    fn merged_closed_form_at_g_one() {
        let ctx = AlgCtx::new(1, 4);
        let k = ctx.commutator_xp_xm();
        assert_eq!(k, ctx.merged_qnum_biseries());
    }

    #[test]
    fn casimir_coordinates_order_zero() {
        let ctx = AlgCtx::new(2, 3);
        let coords = ctx.casimir_coords();
        // (H-1)^2 + 4 X^+ X^- as a classical element.
        let expect = PBWElement::casimir();
        assert_eq!(coords.get(&(0, 0)), Some(&expect));
        assert!(coords_balanced(&coords));
    }

    #[test]
    fn harish_chandra_of_casimir_is_h_squared() {
        let ctx = AlgCtx::new(1, 4);
        let hc = AlgCtx::harish_chandra(&ctx.casimir_coords());
        let mut expect = BTreeMap::new();
        expect.insert((0u32, 0u32), PBWElement::monomial((0, 2, 0), rat_int(1)));
        assert_eq!(hc, expect);
    }

    #[test]
    fn coordinates_roundtrip() {
        let ctx = AlgCtx::new(2, 3);
        let target = ctx.psi_xp().mul(&ctx.psi_xm()).add(&ctx.psi_h());
        let coords = ctx.pbw_coordinates(&target);
        // Rebuild and compare.
        let mut rebuilt = BiSeries::zero(ctx.trunc);
        for (&(i, j), p) in &coords {
            let mut shift = BiSeries::zero(ctx.trunc);
            shift.add_term(i, j, PBWElement::one());
            for (&(a, b, c), q) in &p.terms {
                let head = PBWElement::monomial((a, b, 0), q.clone());
                let img = ctx.constant(head).mul(&ctx.psi_xp_pow(c));
                rebuilt = rebuilt.add(&img.mul(&shift));
            }
        }
        assert_eq!(rebuilt, target);
    }
}
