//! Acceptance gate: one test per acceptance criterion, each printing a
//! single pass/fail line (visible with `cargo test -- --nocapture`).

use std::time::{Duration, Instant};
use structura::constructions::{
    build_by_name, check_admissible_triple, composition_norm_sampled, default_catalog,
    find_jacobi_counterexample, malcev_form, malcev_form_identity_holds, malcev_identity_holds,
    malcev_minus, octonion_explicit_table, simple_catalog, sum_component_dims, triple_1d_data,
    triple_1d_inadmissible_variant, alternativity_holds,
};
use structura::linalg::{kernel_basis, rank, RatMatrix};
use structura::rat::{rat, rat_i, Rat};
use structura::report::run_identities;
use structura::solver::{
    centroid, chi_projection_contained, delta_derivation_space, derivations,
    generalized_space, half_derivation_normal_form, Mode, SolverOptions,
};
use structura::structurable::check_structurable;
use structura::LinearMap;
use num::Zero;

fn verdict(criterion: &str, ok: bool) {
    println!("acceptance {}: {}", criterion, if ok { "pass" } else { "fail" });
    assert!(ok, "acceptance criterion failed: {criterion}");
}

fn auto() -> SolverOptions {
    SolverOptions::default()
}

fn exact() -> SolverOptions {
    SolverOptions { mode: Mode::Exact, ..Default::default() }
}

fn certified() -> SolverOptions {
    SolverOptions { mode: Mode::Certified, ..Default::default() }
}

#[test]
fn structurable_identity_suite_on_full_catalog() {
    let start = Instant::now();
    let mut ok = true;
    for name in default_catalog() {
        let a = build_by_name(name).unwrap();
        match check_structurable(&a) {
            Ok(None) => {}
            other => {
                eprintln!("{name}: structurable identity violated: {other:?}");
                ok = false;
            }
        }
    }
    ok &= start.elapsed() < Duration::from_secs(300);
    verdict("structurable-identity-on-every-catalog-algebra", ok);
}

#[test]
fn simple_algebras_have_scalar_half_derivations_only() {
    let mut ok = true;
    for name in simple_catalog() {
        let a = build_by_name(name).unwrap();
        let toc_clock = Instant::now();
        let (half, cert) = delta_derivation_space(&a, &rat(1, 2), &auto()).unwrap();
        let (cent, _) = centroid(&a, &auto()).unwrap();
        let nontrivial = half.dim() > 0 && !cent.contains_space(&half);
        if half.dim() != 1 || cent.dim() != 1 || nontrivial {
            eprintln!("{name}: half dim {} cent dim {} nontrivial {nontrivial}", half.dim(), cent.dim());
            ok = false;
        }
        if name == "toc" {
            // The 35-dimensional case must certify via the modular
            // squeeze with at least two primes, within a minute.
            ok &= cert.method == "modular-squeeze";
            ok &= cert.primes_used.len() >= 2;
            ok &= toc_clock.elapsed() < Duration::from_secs(60);
        }
    }
    verdict("simple-algebras-no-nontrivial-delta-derivations", ok);
}

#[test]
fn direct_sums_split_block_diagonally() {
    let mut ok = true;
    for name in ["sum-octonion-matrix-inv-2", "sum-toc-jordan-2"] {
        let a = build_by_name(name).unwrap();
        let (da, _) = sum_component_dims(name).unwrap();
        let (half, _) = delta_derivation_space(&a, &rat(1, 2), &auto()).unwrap();
        let (cent, _) = centroid(&a, &auto()).unwrap();
        let nontrivial = half.dim() > 0 && !cent.contains_space(&half);
        if half.dim() != 2 || cent.dim() != 2 || nontrivial {
            eprintln!("{name}: half dim {} cent dim {}", half.dim(), cent.dim());
            ok = false;
        }
        for m in &half.basis {
            for r in 0..a.dim {
                for c in 0..a.dim {
                    if (r < da) != (c < da) && !m.matrix[r][c].is_zero() {
                        eprintln!("{name}: off-block entry at ({r},{c})");
                        ok = false;
                    }
                }
            }
        }
    }
    verdict("semisimple-sums-split-block-diagonally", ok);
}

#[test]
fn distinguished_deltas_leave_only_the_zero_map() {
    let mut ok = true;
    for name in default_catalog() {
        let a = build_by_name(name).unwrap();
        for delta in [rat_i(-1), rat_i(0), rat(1, 3), rat_i(2)] {
            let (space, _) = delta_derivation_space(&a, &delta, &auto()).unwrap();
            if space.dim() != 0 {
                eprintln!("{name} at delta {delta}: dim {}", space.dim());
                ok = false;
            }
        }
    }
    verdict("off-distinguished-delta-spaces-vanish", ok);
}

#[test]
fn half_derivations_are_two_sided_multiplications() {
    let mut ok = true;
    for name in default_catalog() {
        let a = build_by_name(name).unwrap();
        let (half, _) = delta_derivation_space(&a, &rat(1, 2), &auto()).unwrap();
        for phi in &half.basis {
            if half_derivation_normal_form(&a, phi).is_err() {
                eprintln!("{name}: half-derivation not of the form L_a = R_a");
                ok = false;
            }
        }
    }
    verdict("half-derivation-normal-form", ok);
}

#[test]
fn generalized_chi_maps_lie_in_derivations_plus_centroid() {
    let mut ok = true;
    for name in default_catalog() {
        let a = build_by_name(name).unwrap();
        let (pairs, _) = generalized_space(&a, &rat(1, 2), &auto()).unwrap();
        let (der, _) = derivations(&a, &auto()).unwrap();
        let (cent, _) = centroid(&a, &auto()).unwrap();
        if !chi_projection_contained(&pairs, &der, &cent) {
            eprintln!("{name}: chi projection escapes span(Der + centroid)");
            ok = false;
        }
    }
    verdict("generalized-half-derivations-contained", ok);
}

#[test]
fn skew_octonion_internals_of_the_35_dimensional_algebra() {
    let mut ok = true;
    // The unit of the 35-dimensional algebra acts two-sidedly.
    let t = build_by_name("toc").unwrap();
    ok &= t.unit_is_two_sided().unwrap();
    // The bilinear form solving the double-bracket identity is diag(-4).
    let s = malcev_minus(&octonion_explicit_table()).unwrap();
    let form = malcev_form(&s).unwrap();
    for i in 0..7 {
        for j in 0..7 {
            let expect = if i == j { rat_i(-4) } else { Rat::zero() };
            ok &= form.gram[i][j] == expect;
        }
    }
    ok &= malcev_form_identity_holds(&s, &form).unwrap();
    // Malcev but not Lie.
    ok &= malcev_identity_holds(&s).unwrap();
    ok &= find_jacobi_counterexample(&s).unwrap().is_some();
    verdict("skew-octonion-malcev-structure", ok);
}

#[test]
fn certified_mode_cross_validates_exact_mode() {
    let mut ok = true;
    let small: Vec<&str> = default_catalog()
        .into_iter()
        .filter(|n| build_by_name(n).unwrap().dim <= 16)
        .collect();
    for name in &small {
        let a = build_by_name(name).unwrap();
        for delta in [rat(1, 2), rat_i(1)] {
            let (se, ce) = delta_derivation_space(&a, &delta, &exact()).unwrap();
            let (sc, cc) = delta_derivation_space(&a, &delta, &certified()).unwrap();
            if se.dim() != sc.dim()
                || !se.contains_space(&sc)
                || ce.method != "exact"
                || cc.method != "modular-squeeze"
            {
                eprintln!("{name} at delta {delta}: exact {} vs certified {}", se.dim(), sc.dim());
                ok = false;
            }
        }
    }
    // Independent double-path derivation dimensions.
    for (name, expect) in [("octonion-table", 14), ("jordan-3", 8), ("matrix-inv-2", 3)] {
        let a = build_by_name(name).unwrap();
        let (de, _) = derivations(&a, &exact()).unwrap();
        let (dc, _) = derivations(&a, &certified()).unwrap();
        if de.dim() != expect || dc.dim() != expect {
            eprintln!("{name}: derivation dims {} / {} (expected {expect})", de.dim(), dc.dim());
            ok = false;
        }
    }
    verdict("certified-equals-exact-on-small-algebras", ok);
}

#[test]
fn property_suites_pass_standalone() {
    let start = Instant::now();
    let mut ok = true;

    // Exact linear algebra: rank-nullity and zero residuals.
    let dense: Vec<Vec<Rat>> = (0..6)
        .map(|r| (0..9).map(|c| rat_i(((r * c) % 5) as i64 - 2)).collect())
        .collect();
    let m = RatMatrix::from_dense(&dense, 9);
    let k = kernel_basis(&m);
    ok &= rank(&m) + k.len() == 9;
    for v in &k {
        for row in dense.iter() {
            let mut acc = Rat::zero();
            for (c, coeff) in row.iter().enumerate() {
                acc += coeff * &v[c];
            }
            ok &= acc.is_zero();
        }
    }

    // Algebra core: involution is an involutive anti-automorphism and
    // the unit is two-sided, on every catalog member.
    for name in default_catalog() {
        let a = build_by_name(name).unwrap();
        ok &= a.involution_is_valid().unwrap();
        ok &= a.unit_is_two_sided().unwrap();
    }

    // Constructions: alternativity and the multiplicative norm on the
    // octonions; admissibility of the 1-dimensional triple and
    // rejection of its bad-pairing variant.
    let o = octonion_explicit_table();
    ok &= alternativity_holds(&o).unwrap();
    ok &= composition_norm_sampled(&o, 100, 0).unwrap();
    ok &= check_admissible_triple(&triple_1d_data()).unwrap().is_none();
    ok &= check_admissible_triple(&triple_1d_inadmissible_variant()).unwrap().is_some();

    // Family identity suites all green.
    for name in ["octonion-table", "jordan-3", "matrix-inv-2", "triple-1d"] {
        let a = build_by_name(name).unwrap();
        ok &= run_identities(name, &a).iter().all(|c| c.passed());
    }

    // Solver sanity: the identity map is a half-derivation witness.
    let (half, _) = delta_derivation_space(&o, &rat(1, 2), &exact()).unwrap();
    ok &= half.contains(&LinearMap::identity(8));

    ok &= start.elapsed() < Duration::from_secs(600);
    verdict("property-suites-standalone", ok);
}
