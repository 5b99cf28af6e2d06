//! Verification suites: pure functions of (g, n, order, window) producing
//! report records. The CLI and the integration tests are thin wrappers
//! around these.

use crate::algebra::{coords_balanced, AlgCtx};
use crate::cyclo::CycloNumber;
use crate::langlands::{
    build_dual_setup, check_char_duality, check_dual_limit_relations, check_dual_relations,
    check_power_commutator, check_specialization_table, decompose_dual, decompose_dual_verma,
    lattice_form, specialize_eps, specialized_module, verify_lattice_reexpansion,
};
use crate::modules::{
    build_interpolating, build_one_param_h, build_one_param_r, character, check_module_relations,
    default_window, limit_slices, modules_equal, submodule_quotient,
};
use crate::pbw::PBWElement;
use crate::qnum::{
    interp_poly_at_eps_pow, interp_poly_closed, interp_poly_product, interp_qnum_analytic,
    interp_qnum_lattice, lattice_to_biseries,
};
use crate::report::{CheckRecord, Recorder};
use crate::ring::{rat_int, Coeff};

/// Interpolation polynomial: the two construction routes agree and the
/// values at powers of eps are divisibility indicators.
pub fn suite_interp_poly(g: u32) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[("g", g.to_string())]);
    r.check_bool("interp_poly_routes_agree", || {
        interp_poly_product(g).try_rational() == Some(interp_poly_closed(g))
    });
    r.check_bool("interp_poly_indicator_values", || {
        (0..4 * g as i64).all(|l| {
            let expect = if l.rem_euclid(g as i64) == 0 {
                CycloNumber::one()
            } else {
                CycloNumber::zero()
            };
            interp_poly_at_eps_pow(g, l) == expect
        })
    });
    r.records
}

/// Quantum numbers: analytic and lattice routes agree, oddness holds.
pub fn suite_qnum_routes(g: u32, a_max: i64, trunc: u32) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[
        ("g", g.to_string()),
        ("a_max", a_max.to_string()),
        ("order", trunc.to_string()),
    ]);
    r.check_bool("qnum_routes_agree", || {
        (-a_max..=a_max).all(|a| {
            interp_qnum_analytic(g, a, trunc)
                == lattice_to_biseries(&interp_qnum_lattice(g, a, trunc))
        })
    });
    r.check_bool("qnum_odd_in_index", || {
        (0..=a_max).all(|a| {
            interp_qnum_analytic(g, -a, trunc) == interp_qnum_analytic(g, a, trunc).neg()
        })
    });
    r.records
}

fn record_named(r: &mut Recorder, prefix: &str, results: Vec<(String, bool)>) {
    for (name, ok) in results {
        r.check_bool(&format!("{}_{}", prefix, name), || ok);
    }
}

fn record_plain(r: &mut Recorder, results: Vec<(String, bool)>) {
    for (name, ok) in results {
        r.check_bool(&name, || ok);
    }
}

/// Defining relations of the algebra in its realization, with the weight
/// flip automorphism and the transpose anti-automorphism.
pub fn suite_defining_relations(g: u32, trunc: u32) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[("g", g.to_string()), ("order", trunc.to_string())]);
    let ctx = AlgCtx::new(g, trunc);
    record_named(&mut r, "defining", ctx.check_defining_relations());
    record_named(&mut r, "flip", ctx.check_flip_automorphism());
    record_named(&mut r, "transpose", ctx.check_transpose_antiautomorphism());
    r.records
}

/// g = 1 closed form: the commutator collapses to the single merged-parameter
/// quantum number of H.
pub fn suite_g1_closed_form(trunc: u32) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[("g", "1".to_string()), ("order", trunc.to_string())]);
    let ctx = AlgCtx::new(1, trunc);
    r.check_bool("g1_commutator_closed_form", || {
        ctx.commutator_xp_xm() == ctx.merged_qnum_biseries()
    });
    r.records
}

/// The center projection of the Casimir is H^2 exactly.
pub fn suite_harish_chandra(g: u32, trunc: u32) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[("g", g.to_string()), ("order", trunc.to_string())]);
    let ctx = AlgCtx::new(g, trunc);
    r.check_bool("harish_chandra_casimir", || {
        let hc = AlgCtx::harish_chandra(&ctx.casimir_coords());
        let mut expect = std::collections::BTreeMap::new();
        expect.insert((0u32, 0u32), PBWElement::monomial((0, 2, 0), rat_int(1)));
        hc == expect
    });
    r.records
}

/// Coefficient tables of the commutator and the Casimir in PBW coordinates.
pub fn suite_coefficient_tables(g: u32, trunc: u32) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[("g", g.to_string()), ("order", trunc.to_string())]);
    let ctx = AlgCtx::new(g, trunc);
    let commutator = ctx.commutator_coords();
    let casimir = ctx.casimir_coords();
    r.check_bool("commutator_first_parameter_slice", || {
        // The h'-free coordinates of [X^+, X^-] assemble sinh(hH)/sinh(h).
        let series = ctx.h_qnum_series(trunc);
        (0..=trunc).all(|i| {
            let coord = commutator.get(&(i, 0)).cloned().unwrap_or_else(PBWElement::zero);
            coord == series.coeffs[i as usize]
        })
    });
    r.check_bool("coordinates_balanced_span", || {
        coords_balanced(&commutator) && coords_balanced(&casimir)
    });
    r.check_bool("casimir_order_zero_table", || {
        casimir.get(&(0, 0)) == Some(&PBWElement::casimir())
    });
    r.records
}

/// Module relations for one (g, n) pair, finite or windowed.
pub fn suite_module_relations(g: u32, n: i64, trunc: u32, finite: bool) -> Vec<CheckRecord> {
    let window = if finite { 0 } else { default_window(n, g) };
    let mut r = Recorder::new(&[
        ("g", g.to_string()),
        ("n", n.to_string()),
        ("order", trunc.to_string()),
        ("kind", if finite { "finite" } else { "verma" }.to_string()),
    ]);
    let f = |a: i64| interp_qnum_analytic(g, a, trunc);
    let m = build_interpolating(g, n, trunc, finite, window);
    let guard = if finite { 0 } else { g as usize };
    record_named(&mut r, "module", check_module_relations(&m, &f, guard));
    r.check_bool("module_limits_match_one_param", || {
        let (at_h, at_hp) = limit_slices(&m);
        let mh = build_one_param_h(n, trunc, finite, window);
        let mr = build_one_param_r(n, 1, trunc, finite, window);
        modules_equal(&at_h, &mh) && modules_equal(&at_hp, &mr)
    });
    if !finite && n >= 0 {
        r.check("module_submodule_quotient", || {
            match submodule_quotient(&m, guard.max(1)) {
                Ok(_) => (true, "residual zero".into()),
                Err(e) => (false, e.to_string()),
            }
        });
    }
    r.records
}

/// Lattice form, specialization case table and hypotheses for one (g, n).
pub fn suite_specialization(g: u32, n: i64, trunc: u32, finite: bool) -> Vec<CheckRecord> {
    let window = if finite { 0 } else { default_window(n, g) };
    let mut r = Recorder::new(&[
        ("g", g.to_string()),
        ("n", n.to_string()),
        ("order", trunc.to_string()),
        ("kind", if finite { "finite" } else { "verma" }.to_string()),
    ]);
    let lat = lattice_form(g, n, trunc, finite, window);
    r.check_bool("lattice_reexpansion", || {
        let bi = build_interpolating(g, n, trunc, finite, window);
        verify_lattice_reexpansion(&lat, &bi, trunc)
    });
    let spec = specialize_eps(&lat);
    record_plain(&mut r, check_specialization_table(&spec));
    r.check_bool("direct_specialization_matches_lattice", || {
        modules_equal(&spec, &specialized_module(g, n, trunc, finite, window))
    });
    r.records
}

/// Duality identities for one (g, n): the g-th power commutator identity on
/// the dual sub-basis, the dual operator relations, and regularity of the
/// dual raising operator.
pub fn suite_duality(g: u32, n: i64, trunc: u32, finite: bool, window: usize) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[
        ("g", g.to_string()),
        ("n", n.to_string()),
        ("order", trunc.to_string()),
        ("kind", if finite { "finite" } else { "verma" }.to_string()),
    ]);
    match build_dual_setup(g, n, trunc, finite, window) {
        Err(e) => r.check("dual_setup", || (false, e.to_string())),
        Ok(setup) => {
            let guard = if finite { 0 } else { g as usize };
            r.check_bool("power_commutator_identity", || {
                check_power_commutator(&setup.spec, guard)
            });
            r.check("dual_raising_regular", || {
                (true, "no pole in the second parameter".into())
            });
            record_plain(&mut r, check_dual_relations(&setup.dual, guard));
        }
    }
    r.records
}

/// Decomposition of the dual module into one-parameter indecomposables,
/// plus character duality and the classical limit.
pub fn suite_decomposition(g: u32, n: i64, trunc: u32, finite: bool, window: usize) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[
        ("g", g.to_string()),
        ("n", n.to_string()),
        ("order", trunc.to_string()),
        ("kind", if finite { "finite" } else { "verma" }.to_string()),
    ]);
    let setup = match build_dual_setup(g, n, trunc, finite, window) {
        Err(e) => {
            r.check("dual_setup", || (false, e.to_string()));
            return r.records;
        }
        Ok(s) => s,
    };
    let expected: Vec<i64> = if n == 0 {
        vec![0]
    } else if g % 2 == 0 {
        vec![n / g as i64, n / g as i64 - 1]
    } else {
        vec![n / g as i64]
    };
    if finite {
        r.check("dual_decomposition", || {
            match decompose_dual(&setup.dual) {
                Ok(pieces) => {
                    let highs: Vec<i64> = pieces.iter().map(|p| p.highest).collect();
                    if highs == expected {
                        (true, format!("highest weights {:?}", highs))
                    } else {
                        (false, format!("got {:?}, expected {:?}", highs, expected))
                    }
                }
                Err(e) => (false, e.to_string()),
            }
        });
        r.check_bool("character_duality", || check_char_duality(&setup.dual));
        r.check_bool("dual_classical_limit_relations", || {
            check_dual_limit_relations(&setup.dual, 0)
        });
    } else {
        let guard = g as usize;
        r.check("dual_decomposition", || {
            match decompose_dual_verma(&setup.dual, guard) {
                Ok(pieces) => {
                    let highs: Vec<i64> = pieces.iter().map(|p| p.highest).collect();
                    if highs == expected {
                        (true, format!("highest weights {:?}", highs))
                    } else {
                        (false, format!("got {:?}, expected {:?}", highs, expected))
                    }
                }
                Err(e) => (false, e.to_string()),
            }
        });
        r.check_bool("dual_classical_limit_relations", || {
            check_dual_limit_relations(&setup.dual, guard)
        });
    }
    r.records
}

/// Characters of the finite interpolating modules and of their duals.
pub fn suite_characters(g: u32, n: i64) -> Vec<CheckRecord> {
    let mut r = Recorder::new(&[("g", g.to_string()), ("n", n.to_string())]);
    r.check_bool("character_weights", || {
        let m = build_interpolating(g, n, 0, true, 0);
        let ch = character(&m);
        ch.len() == n as usize + 1 && ch.values().all(|&v| v == 1)
    });
    r.records
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for rec in suite_interp_poly(3)
            .into_iter()
            .chain(suite_qnum_routes(2, 4, 3))
            .chain(suite_specialization(2, 2, 3, true))
            .chain(suite_characters(3, 3))
        {
            assert!(rec.pass, "{} failed: {}", rec.id, rec.detail);
        }
    }
}
