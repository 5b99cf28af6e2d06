//! Highest-weight modules over the classical, one-parameter and
//! two-parameter algebras, in a single generic container.
//!
//! Every module is presented in the normalized basis m_0, m_1, ... in which
//! X^- shifts down by one with coefficient 1 and X^+ carries the full product
//! of quantum numbers: X^+ . m_j = [j]' [n-j+1]' m_{j-1}. The entry ring
//! varies by kind — exact rationals for the classical module, series in one
//! deformation variable for the one-parameter modules, bivariate series for
//! the interpolating modules, cyclotomic-coefficient series after
//! specialization — so the container is generic over a minimal ring
//! interface.
//!
//! Infinite (Verma) modules are represented on a finite index window; all
//! relation checks skip a guard band at the far edge of the window, wide
//! enough for the largest operator displacement used.

use crate::qnum::{classical_qnum_series, interp_qnum_analytic};
use crate::ring::{rat_int, Coeff};
use crate::series::{BiSeries, USeries};
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Minimal ring interface shared by all entry types.
pub trait Entry: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn scale_int(&self, k: i64) -> Self;
}

impl Entry for BigRational {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
    fn scale_int(&self, k: i64) -> Self {
        self * rat_int(k)
    }
}

impl<R: Coeff> Entry for USeries<R> {
    fn add(&self, rhs: &Self) -> Self {
        USeries::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        USeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        USeries::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        USeries::neg(self)
    }
    fn is_zero(&self) -> bool {
        USeries::is_zero(self)
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&R::from_int(k))
    }
}

impl<R: Coeff> Entry for BiSeries<R> {
    fn add(&self, rhs: &Self) -> Self {
        BiSeries::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BiSeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BiSeries::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        BiSeries::neg(self)
    }
    fn is_zero(&self) -> bool {
        BiSeries::is_zero(self)
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&R::from_int(k))
    }
}

/// Dense square matrix over an entry ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<E: Entry> {
    pub dim: usize,
    pub rows: Vec<Vec<E>>,
}

impl<E: Entry> Matrix<E> {
    pub fn zero(dim: usize, z: &E) -> Self {
        Matrix {
            dim,
            rows: vec![vec![z.clone(); dim]; dim],
        }
    }

    pub fn diag(entries: &[E], z: &E) -> Self {
        let mut m = Self::zero(entries.len(), z);
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.rows[i][j] = e;
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Matrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Matrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|a| a.neg()).collect())
                .collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Matrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|a| a.scale_int(k)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let mut acc: Option<E> = None;
                        for k in 0..self.dim {
                            let a = &self.rows[i][k];
                            let b = &rhs.rows[k][j];
                            if a.is_zero() || b.is_zero() {
                                continue;
                            }
                            let p = a.mul(b);
                            acc = Some(match acc {
                                Some(s) => s.add(&p),
                                None => p,
                            });
                        }
                        acc.unwrap_or_else(|| self.rows[i][0].sub(&self.rows[i][0]))
                    })
                    .collect()
            })
            .collect();
        Matrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Equality on the leading `limit` x `limit` block.
    pub fn eq_within(&self, rhs: &Self, limit: usize) -> bool {
        for i in 0..limit.min(self.dim) {
            for j in 0..limit.min(self.dim) {
                if self.rows[i][j] != rhs.rows[i][j] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero_within(&self, limit: usize) -> bool {
        self.rows
            .iter()
            .take(limit)
            .all(|r| r.iter().take(limit).all(|e| e.is_zero()))
    }

    pub fn map<F: Entry>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleKind {
    Classical,
    OneParamH,
    /// One-parameter module in h' with rescaled base exp(r h').
    OneParamR(i64),
    Interpolating,
    Specialized,
}

#[derive(Clone, Debug)]
pub struct WeightModule<E: Entry> {
    pub kind: ModuleKind,
    pub g: u32,
    pub n: i64,
    pub trunc: u32,
    /// Finite module of rank n+1 (true) or windowed Verma module (false).
    pub finite: bool,
    pub dim: usize,
    pub weights: Vec<i64>,
    pub xp: Matrix<E>,
    pub xm: Matrix<E>,
    pub h: Matrix<E>,
    pub c: Matrix<E>,
    pub zero: E,
    pub one: E,
}

/// Assemble a module from a quantum-number provider: X^+ entries are
/// f(j) * f(n-j+1), X^- entries are 1, H and C are diagonal integers.
pub fn assemble<E: Entry>(
    kind: ModuleKind,
    g: u32,
    n: i64,
    trunc: u32,
    dim: usize,
    finite: bool,
    f: &dyn Fn(i64) -> E,
    zero: E,
    one: E,
) -> WeightModule<E> {
    assert!(dim >= 1);
    let weights: Vec<i64> = (0..dim as i64).map(|j| n - 2 * j).collect();
    let mut xp = Matrix::zero(dim, &zero);
    let mut xm = Matrix::zero(dim, &zero);
    for j in 1..dim {
        xp.set(j - 1, j, f(j as i64).mul(&f(n - j as i64 + 1)));
        xm.set(j, j - 1, one.clone());
    }
    let h = Matrix::diag(
        &weights.iter().map(|&w| one.scale_int(w)).collect::<Vec<_>>(),
        &zero,
    );
    let c = Matrix::diag(&vec![one.scale_int((n + 1) * (n + 1)); dim], &zero);
    WeightModule {
        kind,
        g,
        n,
        trunc,
        finite,
        dim,
        weights,
        xp,
        xm,
        h,
        c,
        zero,
        one,
    }
}

fn dim_for(n: i64, finite: bool, window: usize) -> usize {
    if finite {
        assert!(n >= 0, "finite modules need a natural highest weight");
        n as usize + 1
    } else {
        assert!(window >= 1);
        window + 1
    }
}

/// Default Verma window size (highest retained index).
pub fn default_window(n: i64, g: u32) -> usize {
    ((2 * n.max(0) + 4) as usize).max(4 * g as usize + 4)
}

pub fn build_classical(n: i64, finite: bool, window: usize) -> WeightModule<BigRational> {
    let dim = dim_for(n, finite, window);
    assemble(
        ModuleKind::Classical,
        1,
        n,
        0,
        dim,
        finite,
        &|a| rat_int(a),
        rat_int(0),
        rat_int(1),
    )
}

pub fn build_one_param_h(
    n: i64,
    trunc: u32,
    finite: bool,
    window: usize,
) -> WeightModule<USeries<BigRational>> {
    let dim = dim_for(n, finite, window);
    assemble(
        ModuleKind::OneParamH,
        1,
        n,
        trunc,
        dim,
        finite,
        &|a| classical_qnum_series(a, 1, trunc),
        USeries::zero(trunc),
        USeries::one(trunc),
    )
}

/// One-parameter module in h' with base exp(r h') (r = g for dual targets).
pub fn build_one_param_r(
    n: i64,
    r: i64,
    trunc: u32,
    finite: bool,
    window: usize,
) -> WeightModule<USeries<BigRational>> {
    let dim = dim_for(n, finite, window);
    assemble(
        ModuleKind::OneParamR(r),
        1,
        n,
        trunc,
        dim,
        finite,
        &|a| classical_qnum_series(a, r, trunc),
        USeries::zero(trunc),
        USeries::one(trunc),
    )
}

pub fn build_interpolating(
    g: u32,
    n: i64,
    trunc: u32,
    finite: bool,
    window: usize,
) -> WeightModule<BiSeries<BigRational>> {
    let dim = dim_for(n, finite, window);
    assemble(
        ModuleKind::Interpolating,
        g,
        n,
        trunc,
        dim,
        finite,
        &|a| interp_qnum_analytic(g, a, trunc),
        BiSeries::zero(trunc),
        BiSeries::one(trunc),
    )
}

/// The scalar eigenvalue indices of the four relation operators on m_j: for
/// a module of highest weight n with Casimir root s, the product relations
/// read X^+X^- = [u1][u2] and X^-X^+ = [l1][l2] on m_j with the returned
/// integer indices.
pub fn relation_indices(n: i64, j: i64, s: i64) -> ((i64, i64), (i64, i64)) {
    let w = n - 2 * j;
    assert_eq!((s + w - 1) % 2, 0, "parity mismatch in relation indices");
    // (s + e w -+ e) / 2 for e = +1, -1.
    let u1 = (s + w - 1) / 2;
    let u2 = (s - w + 1) / 2;
    let l1 = (s + w + 1) / 2;
    let l2 = (s - w - 1) / 2;
    ((u1, u2), (l1, l2))
}

/// Entrywise relation check. `f` supplies the module's quantum number for an
/// integer index; `guard` is the far-edge band to skip (0 for finite kinds).
pub fn check_module_relations<E: Entry>(
    m: &WeightModule<E>,
    f: &dyn Fn(i64) -> E,
    guard: usize,
) -> Vec<(String, bool)> {
    let limit = if m.finite {
        m.dim
    } else {
        m.dim.saturating_sub(guard)
    };
    let two_xp = m.xp.scale_int(2);
    let two_xm = m.xm.scale_int(-2);
    let casimir_scalar = m.one.scale_int((m.n + 1) * (m.n + 1));

    // Diagonal of X^+X^- and X^-X^+ predicted by the scalar eigenvalues of
    // the relation operators, with both Casimir-root signs.
    let mut diag_up = Vec::with_capacity(m.dim);
    let mut diag_lo = Vec::with_capacity(m.dim);
    let mut sign_ok = true;
    for j in 0..m.dim as i64 {
        let ((u1, u2), (l1, l2)) = relation_indices(m.n, j, m.n + 1);
        let ((fu1, fu2), (fl1, fl2)) = relation_indices(m.n, j, -(m.n + 1));
        let up = f(u1).mul(&f(u2));
        let lo = f(l1).mul(&f(l2));
        sign_ok &= up == f(fu1).mul(&f(fu2)) && lo == f(fl1).mul(&f(fl2));
        diag_up.push(up);
        diag_lo.push(lo);
    }
    // Boundary conventions: on a finite module X^- annihilates m_n, so the
    // predicted X^+X^- diagonal is zero there; on a Verma window the last
    // in-window index lacks the m_{j+1} needed for X^+X^-, handled by guard.
    if m.finite {
        let last = m.dim - 1;
        diag_up[last] = m.zero.clone();
    }
    let pred_up = Matrix::diag(&diag_up, &m.zero);
    let pred_lo = Matrix::diag(&diag_lo, &m.zero);

    // For products, edge rows of the window are unreliable one step earlier.
    let prod_limit = if m.finite {
        m.dim
    } else {
        m.dim.saturating_sub(guard.max(1))
    };

    vec![
        (
            "weight_raising".into(),
            m.h.commutator(&m.xp).eq_within(&two_xp, limit),
        ),
        (
            "weight_lowering".into(),
            m.h.commutator(&m.xm).eq_within(&two_xm, limit),
        ),
        (
            "product_upper".into(),
            m.xp.mul(&m.xm).eq_within(&pred_up, prod_limit),
        ),
        (
            "product_lower".into(),
            m.xm.mul(&m.xp).eq_within(&pred_lo, prod_limit),
        ),
        (
            "casimir_scalar".into(),
            m.c.eq_within(
                &Matrix::diag(&vec![casimir_scalar; m.dim], &m.zero),
                m.dim,
            ),
        ),
        (
            "casimir_central".into(),
            m.c.commutator(&m.xp).is_zero_within(limit)
                && m.c.commutator(&m.xm).is_zero_within(limit)
                && m.c.commutator(&m.h).is_zero_within(limit),
        ),
        ("casimir_root_sign".into(), sign_ok),
    ]
}

/// Limits of an interpolating module: the h' -> 0 slice (a one-parameter
/// module in h) and the h -> 0 slice (a one-parameter module in h').
pub fn limit_slices(
    m: &WeightModule<BiSeries<BigRational>>,
) -> (
    WeightModule<USeries<BigRational>>,
    WeightModule<USeries<BigRational>>,
) {
    assert_eq!(m.kind, ModuleKind::Interpolating, "limits need the interpolating kind");
    let mk = |kind, proj: &dyn Fn(&BiSeries<BigRational>) -> USeries<BigRational>| WeightModule {
        kind,
        g: m.g,
        n: m.n,
        trunc: m.trunc,
        finite: m.finite,
        dim: m.dim,
        weights: m.weights.clone(),
        xp: m.xp.map(proj),
        xm: m.xm.map(proj),
        h: m.h.map(proj),
        c: m.c.map(proj),
        zero: USeries::zero(m.trunc),
        one: USeries::one(m.trunc),
    };
    (
        mk(ModuleKind::OneParamH, &|s| s.slice_h()),
        mk(ModuleKind::OneParamR(1), &|s| s.slice_hp()),
    )
}

/// Structural equality of two modules (kind tags aside).
pub fn modules_equal<E: Entry>(a: &WeightModule<E>, b: &WeightModule<E>) -> bool {
    a.dim == b.dim
        && a.weights == b.weights
        && a.xp == b.xp
        && a.xm == b.xm
        && a.h == b.h
        && a.c == b.c
}

/// Split a windowed interpolating Verma module with natural highest weight n
/// into its unique nontrivial submodule (re-indexed from m_{n+1}) and the
/// finite quotient. Verifies stability and the expected identifications.
pub fn submodule_quotient(
    m: &WeightModule<BiSeries<BigRational>>,
    guard: usize,
) -> crate::error::Result<(
    WeightModule<BiSeries<BigRational>>,
    WeightModule<BiSeries<BigRational>>,
)> {
    use crate::error::UhhError;
    if m.finite || m.n < 0 {
        return Err(UhhError::InvalidParameter(
            "submodule extraction needs a windowed module with natural highest weight".into(),
        ));
    }
    let n = m.n as usize;
    if m.dim < n + 3 {
        return Err(UhhError::WindowTooSmall(format!(
            "window {} too small for highest weight {}",
            m.dim - 1,
            n
        )));
    }
    // Stability: X^+ must not leak m_{n+1} back into the quotient span.
    let wall = m.xp.get(n, n + 1);
    if !wall.is_zero() {
        return Err(UhhError::VerificationFailed(
            "submodule span is not stable under X^+".into(),
        ));
    }
    // Quotient: leading (n+1) x (n+1) block must be the finite module.
    let quotient = build_interpolating(m.g, m.n, m.trunc, true, 0);
    let ok = (0..=n).all(|i| {
        (0..=n).all(|j| {
            m.xp.get(i, j) == quotient.xp.get(i, j)
                && m.xm.get(i, j) == quotient.xm.get(i, j)
                && m.h.get(i, j) == quotient.h.get(i, j)
        })
    });
    if !ok {
        return Err(UhhError::VerificationFailed(
            "quotient does not match the finite module".into(),
        ));
    }
    // Submodule: re-index from m_{n+1}; compare with the Verma module of
    // highest weight -n-2 on the common window.
    let sub_window = m.dim - n - 2;
    let expected = build_interpolating(m.g, -(m.n) - 2, m.trunc, false, sub_window);
    let limit = sub_window.saturating_sub(guard);
    let mut sub = expected.clone();
    for i in 0..=sub_window {
        for j in 0..=sub_window {
            sub.xp.set(i, j, m.xp.get(n + 1 + i, n + 1 + j).clone());
            sub.xm.set(i, j, m.xm.get(n + 1 + i, n + 1 + j).clone());
        }
    }
    // The Casimir of the ambient module stays (n+1)^2 = ((-n-2)+1)^2.
    if !sub.xp.eq_within(&expected.xp, limit) || !sub.xm.eq_within(&expected.xm, limit) {
        return Err(UhhError::VerificationFailed(
            "submodule does not match the Verma module of reflected weight".into(),
        ));
    }
    Ok((sub, quotient))
}

/// Character of a finite module: weight -> multiplicity.
pub fn character<E: Entry>(m: &WeightModule<E>) -> BTreeMap<i64, u32> {
    assert!(m.finite, "characters are defined for finite modules");
    let mut ch = BTreeMap::new();
    for &w in &m.weights {
        *ch.entry(w).or_insert(0) += 1;
    }
    ch
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::interp_qnum_analytic;

    #[test]
    fn classical_small_module() {
        let m = build_classical(1, true, 0);
        assert_eq!(m.dim, 2);
        assert_eq!(m.weights, vec![1, -1]);
        assert_eq!(*m.xp.get(0, 1), rat_int(1));
        assert_eq!(*m.xm.get(1, 0), rat_int(1));
        // X^+X^- - X^-X^+ = H entrywise.
        let k = m.xp.mul(&m.xm).sub(&m.xm.mul(&m.xp));
        assert!(k.eq_within(&m.h, m.dim));
    }

    #[test]
    fn classical_relations_all_pass() {
        for n in 0..=4i64 {
            let m = build_classical(n, true, 0);
            for (name, ok) in check_module_relations(&m, &|a| rat_int(a), 0) {
                assert!(ok, "classical L({}) relation {}", n, name);
            }
        }
        let v = build_classical(-3, false, 10);
        for (name, ok) in check_module_relations(&v, &|a| rat_int(a), 1) {
            assert!(ok, "classical Verma relation {}", name);
        }
    }

    #[test]
    fn interpolating_relations_small() {
        let g = 2;
        let tr = 4;
        let f = |a: i64| interp_qnum_analytic(g, a, tr);
        let m = build_interpolating(g, 3, tr, true, 0);
        for (name, ok) in check_module_relations(&m, &f, 0) {
            assert!(ok, "relation {}", name);
        }
        let v = build_interpolating(g, -2, tr, false, default_window(-2, g));
        for (name, ok) in check_module_relations(&v, &f, g as usize) {
            assert!(ok, "Verma relation {}", name);
        }
    }

    #[test]
    fn interpolating_limits_match_one_parameter_modules() {
        let g = 3;
        let tr = 4;
        let m = build_interpolating(g, 4, tr, true, 0);
        let (at_h, at_hp) = limit_slices(&m);
        assert!(modules_equal(&at_h, &build_one_param_h(4, tr, true, 0)));
        assert!(modules_equal(&at_hp, &build_one_param_r(4, 1, tr, true, 0)));
    }

    #[test]
    fn submodule_and_quotient_of_verma() {
        let g = 2;
        let tr = 3;
        let v = build_interpolating(g, 2, tr, false, default_window(2, g));
        let (sub, quot) = submodule_quotient(&v, g as usize).unwrap();
        assert_eq!(quot.dim, 3);
        assert_eq!(sub.n, -4);
    }

    #[test]
    fn characters_of_finite_modules() {
        let m = build_classical(2, true, 0);
        let ch = character(&m);
        assert_eq!(ch.get(&2), Some(&1));
        assert_eq!(ch.get(&0), Some(&1));
        assert_eq!(ch.get(&-2), Some(&1));
        assert_eq!(ch.len(), 3);
        let trivial = build_classical(0, true, 0);
        assert_eq!(character(&trivial).len(), 1);
    }

    #[test]
    fn relation_index_arithmetic() {
        // Highest weight n = 4, j = 1, s = n+1: upper pair (n-j, j+1),
        // lower pair (n-j+1, j).
        assert_eq!(relation_indices(4, 1, 5), ((3, 2), (4, 1)));
        // Flipping the Casimir root negates and swaps the pairs.
        assert_eq!(relation_indices(4, 1, -5), ((-2, -3), (-1, -4)));
    }
}
