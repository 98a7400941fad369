//! Verification reports: runs the identity suites and derivation-space
//! computations for a catalog algebra and serializes the results with a
//! deterministic field order.

use crate::algebra::{Algebra, LinearMap};
use crate::constructions::{
    alternativity_holds, build_by_name, check_admissible_triple, composition_norm_sampled,
    find_jacobi_counterexample, malcev_form, malcev_form_identity_holds, malcev_identity_holds,
    malcev_minus, octonion_explicit_table, sum_component_dims, triple_1d_data,
    triple_1d_inadmissible_variant, BuildError,
};
use crate::rat::{format_rat, parse_rat, rat, rat_i, Rat};
use crate::solver::{
    centroid, chi_projection_contained, delta_derivation_space, derivations,
    half_derivation_normal_form, Certificate, LinearMapSpace, SolverOptions,
};
use crate::structurable::check_structurable;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// Scoping statement attached to every report: all computation is exact
/// over the rationals, not over an algebraically closed field.
pub const GROUND_FIELD_CAVEAT: &str = "computed exactly over Q on split forms; the catalog \
     members have 1-dimensional centroid over Q, so triviality verdicts carry, but no \
     computation is performed over an algebraically closed field";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub claim_ref: String,
    pub status: String,
    pub detail: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn check(id: &str, claim_ref: &str, ok: bool, detail: String) -> CheckResult {
    CheckResult {
        id: id.into(),
        claim_ref: claim_ref.into(),
        status: if ok { "pass" } else { "fail" }.into(),
        detail,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertSummary {
    pub method: String,
    pub primes: Vec<u64>,
}

impl From<&Certificate> for CertSummary {
    fn from(c: &Certificate) -> Self {
        CertSummary { method: c.method.clone(), primes: c.primes_used.clone() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaResult {
    pub delta: String,
    pub space_dim: usize,
    pub centroid_dim: usize,
    pub nontrivial: bool,
    pub certificate: CertSummary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub dim: usize,
    pub caveat: String,
    pub checks: Vec<CheckResult>,
    pub delta_results: Vec<DeltaResult>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} (dim {})\n\n", self.algebra, self.dim));
        out.push_str(&format!("_{}_\n\n", self.caveat));
        out.push_str("| check | claim | status | detail |\n|---|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                c.id, c.claim_ref, c.status, c.detail
            ));
        }
        if !self.delta_results.is_empty() {
            out.push_str("\n| delta | space dim | centroid dim | nontrivial | certificate |\n");
            out.push_str("|---|---|---|---|---|\n");
            for d in &self.delta_results {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} ({:?}) |\n",
                    d.delta,
                    d.space_dim,
                    d.centroid_dim,
                    d.nontrivial,
                    d.certificate.method,
                    d.certificate.primes
                ));
            }
        }
        if !self.timings_ms.is_empty() {
            out.push_str("\n| step | ms |\n|---|---|\n");
            for (k, v) in &self.timings_ms {
                out.push_str(&format!("| {k} | {v} |\n"));
            }
        }
        out
    }
}

/// The default delta sample list: the distinguished values plus generic
/// representatives.
pub fn default_deltas() -> Vec<Rat> {
    vec![rat_i(-1), rat_i(0), rat(1, 3), rat(1, 2), rat_i(1), rat_i(2)]
}

/// Builds each named catalog algebra, failing fast on an unknown name.
pub fn build_catalog(names: &[&str]) -> Result<Vec<Algebra>, BuildError> {
    names.iter().map(|n| build_by_name(n)).collect()
}

struct Timings {
    enabled: bool,
    map: BTreeMap<String, u64>,
}

impl Timings {
    fn new(enabled: bool) -> Self {
        Timings { enabled, map: BTreeMap::new() }
    }

    fn record<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.map.insert(key.into(), start.elapsed().as_millis() as u64);
        }
        out
    }
}

/// Runs the full verification battery for one algebra. Solver failures
/// become `fail` check entries; the report is always produced.
pub fn run_verification(
    name: &str,
    a: &Algebra,
    deltas: &[Rat],
    opts: &SolverOptions,
    with_timings: bool,
) -> VerificationReport {
    let mut checks = Vec::new();
    let mut delta_results = Vec::new();
    let mut t = Timings::new(with_timings);
    let half = rat(1, 2);

    // Foundational identities.
    let unit_ok = a.unit_is_two_sided().unwrap_or(false);
    checks.push(check(
        "unit-two-sided",
        "unital-algebra",
        unit_ok,
        if unit_ok { "unit acts as identity on every basis vector".into() } else { "unit missing or not two-sided".into() },
    ));
    let inv_ok = a.involution_is_valid().unwrap_or(false);
    checks.push(check(
        "involution-valid",
        "involutive-anti-automorphism",
        inv_ok,
        if inv_ok { "involutive anti-automorphism on all basis pairs".into() } else { "involution check failed".into() },
    ));
    let structurable = t.record("structurable-identity", || check_structurable(a));
    checks.push(match structurable {
        Ok(None) => check(
            "structurable-identity",
            "structurable-operator-identity",
            true,
            format!("operator identity verified on all {}^4 basis quadruples", a.dim),
        ),
        Ok(Some(w)) => check(
            "structurable-identity",
            "structurable-operator-identity",
            false,
            format!("fails at basis quadruple ({}, {}, {}, {})", w.x, w.y, w.z, w.w),
        ),
        Err(e) => check("structurable-identity", "structurable-operator-identity", false, e.to_string()),
    });

    // Centroid, shared across all delta entries.
    let cent = match t.record("centroid", || centroid(a, opts)) {
        Ok((space, cert)) => {
            checks.push(check(
                "centroid",
                "centroid-dimension",
                true,
                format!("dim {} ({})", space.dim(), cert.method),
            ));
            Some((space, cert))
        }
        Err(e) => {
            checks.push(check("centroid", "centroid-dimension", false, e.to_string()));
            None
        }
    };

    let mut half_space: Option<LinearMapSpace> = None;
    for delta in deltas {
        let label = format_rat(delta);
        let solved = t.record(&format!("delta-space-{label}"), || {
            delta_derivation_space(a, delta, opts)
        });
        match solved {
            Ok((space, cert)) => {
                let (centroid_dim, nontrivial) = match &cent {
                    Some((c, _)) => {
                        let nt = !delta.is_zero()
                            && !delta.is_one()
                            && space.dim() > 0
                            && !c.contains_space(&space);
                        (c.dim(), nt)
                    }
                    None => (0, false),
                };
                checks.push(check(
                    &format!("delta-space-{label}"),
                    "no-nontrivial-delta-derivations",
                    !nontrivial && cent.is_some(),
                    format!("dim {} at delta = {label}, nontrivial = {nontrivial}", space.dim()),
                ));
                delta_results.push(DeltaResult {
                    delta: label,
                    space_dim: space.dim(),
                    centroid_dim,
                    nontrivial,
                    certificate: CertSummary::from(&cert),
                });
                if *delta == half {
                    half_space = Some(space);
                }
            }
            Err(e) => {
                checks.push(check(
                    &format!("delta-space-{label}"),
                    "no-nontrivial-delta-derivations",
                    false,
                    e.to_string(),
                ));
            }
        }
    }

    if let Some(space) = &half_space {
        // Normal form: every 1/2-derivation is two-sided multiplication
        // by its value at the unit.
        if a.unit.is_some() {
            let bad = space
                .basis
                .iter()
                .enumerate()
                .find(|(_, phi)| half_derivation_normal_form(a, phi).is_err());
            checks.push(match bad {
                None => check(
                    "half-derivation-normal-form",
                    "half-derivation-is-two-sided-multiplication",
                    true,
                    format!("all {} basis maps equal L_a = R_a with a = phi(unit)", space.dim()),
                ),
                Some((i, _)) => check(
                    "half-derivation-normal-form",
                    "half-derivation-is-two-sided-multiplication",
                    false,
                    format!("basis map {i} violates the two-sided multiplication form"),
                ),
            });
        }

        // Generalized pairs: the chi component stays inside
        // span(derivations + centroid).
        let contained = t.record("generalized-chi-containment", || {
            let pairs = crate::solver::generalized_space(a, &half, opts)?;
            let der = derivations(a, opts)?;
            let c = cent.as_ref().ok_or(crate::solver::SolveError::CertificationGap(
                "centroid unavailable".into(),
            ))?;
            Ok::<bool, crate::solver::SolveError>(chi_projection_contained(&pairs.0, &der.0, &c.0))
        });
        checks.push(match contained {
            Ok(ok) => check(
                "generalized-chi-containment",
                "generalized-half-derivations-lie-in-derivations-plus-centroid",
                ok,
                if ok {
                    "chi projections of all generalized pairs contained in span(Der + centroid)".into()
                } else {
                    "a chi projection escapes span(Der + centroid)".into()
                },
            ),
            Err(e) => check(
                "generalized-chi-containment",
                "generalized-half-derivations-lie-in-derivations-plus-centroid",
                false,
                e.to_string(),
            ),
        });

        // Direct sums: 1/2-derivations split block-diagonally.
        if let Some((da, _db)) = sum_component_dims(name) {
            let ok = space.basis.iter().all(|m| block_diagonal(m, da, a.dim));
            checks.push(check(
                "block-diagonal-splitting",
                "direct-sum-derivations-split",
                ok,
                format!("all {} half-derivation basis maps respect the {da}+{} block split", space.dim(), a.dim - da),
            ));
        }
    }

    VerificationReport {
        algebra: name.into(),
        dim: a.dim,
        caveat: GROUND_FIELD_CAVEAT.into(),
        checks,
        delta_results,
        timings_ms: t.map,
    }
}

fn block_diagonal(m: &LinearMap, split: usize, dim: usize) -> bool {
    for r in 0..dim {
        for c in 0..dim {
            if (r < split) != (c < split) && !m.matrix[r][c].is_zero() {
                return false;
            }
        }
    }
    true
}

// --- identity suites ---------------------------------------------------------

fn is_commutative(a: &Algebra) -> bool {
    for i in 0..a.dim {
        for j in 0..i {
            if a.sc_entries(i, j) != a.sc_entries(j, i) {
                return false;
            }
        }
    }
    true
}

fn is_associative(a: &Algebra) -> bool {
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let assoc = a
                    .associator(&a.basis_element(i), &a.basis_element(j), &a.basis_element(k))
                    .expect("same algebra");
                if assoc.coords.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Samples the Jordan identity (x y) x^2 = x (y x^2) at random integer
/// points; the identity is not multilinear, so basis substitution alone
/// does not suffice.
fn jordan_identity_sampled(a: &Algebra, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let coords: Vec<Rat> = (0..a.dim).map(|_| rat_i(rng.gen_range(-3i64..=3))).collect();
        a.element(coords).expect("matching dim")
    };
    for _ in 0..samples {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let x2 = a.mul(&x, &x).expect("same algebra");
        let lhs = a.mul(&a.mul(&x, &y).unwrap(), &x2).unwrap();
        let rhs = a.mul(&x, &a.mul(&y, &x2).unwrap()).unwrap();
        if lhs.coords != rhs.coords {
            return false;
        }
    }
    true
}

/// Family-specific identity suites, selected by catalog name.
pub fn run_identities(name: &str, a: &Algebra) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let unit_ok = a.unit_is_two_sided().unwrap_or(false);
    out.push(check(
        "unit-two-sided",
        "unital-algebra",
        unit_ok,
        "unit acts as identity on every basis vector".into(),
    ));
    let inv_ok = a.involution_is_valid().unwrap_or(false);
    out.push(check(
        "involution-valid",
        "involutive-anti-automorphism",
        inv_ok,
        "involutive anti-automorphism on all basis pairs".into(),
    ));
    match check_structurable(a) {
        Ok(None) => out.push(check(
            "structurable-identity",
            "structurable-operator-identity",
            true,
            format!("all {}^4 basis quadruples", a.dim),
        )),
        Ok(Some(w)) => out.push(check(
            "structurable-identity",
            "structurable-operator-identity",
            false,
            format!("fails at ({}, {}, {}, {})", w.x, w.y, w.z, w.w),
        )),
        Err(e) => out.push(check(
            "structurable-identity",
            "structurable-operator-identity",
            false,
            e.to_string(),
        )),
    }

    let composition_family =
        matches!(name, "field" | "complex" | "quaternion" | "octonion" | "octonion-table");
    if composition_family {
        let alt = alternativity_holds(a).unwrap_or(false);
        out.push(check(
            "alternativity",
            "composition-algebra-alternative",
            alt,
            "alternating associator on all basis triples".into(),
        ));
        let norm = composition_norm_sampled(a, 100, 0).unwrap_or(false);
        out.push(check(
            "composition-norm",
            "norm-is-multiplicative",
            norm,
            "N(xy) = N(x)N(y) at 100 seeded sample points".into(),
        ));
    }

    if name == "toc" {
        let oct = octonion_explicit_table();
        match malcev_minus(&oct).and_then(|s| Ok((malcev_form(&s)?, s))) {
            Ok((form, s)) => {
                let minus_four = rat_i(-4);
                let gram_ok = (0..7).all(|i| {
                    (0..7).all(|j| {
                        let expect = if i == j { minus_four.clone() } else { Rat::zero() };
                        form.gram[i][j] == expect
                    })
                });
                out.push(check(
                    "malcev-gram",
                    "skew-octonion-form-is-minus-four-diagonal",
                    gram_ok,
                    "the bilinear form solving [[x,y],y] = (y,y)x - (x,y)y is diag(-4)".into(),
                ));
                let form_id = malcev_form_identity_holds(&s, &form).unwrap_or(false);
                out.push(check(
                    "malcev-form-identity",
                    "double-bracket-form-identity",
                    form_id,
                    "[[x,y],y] = (y,y)x - (x,y)y on all basis pairs".into(),
                ));
                let malcev = malcev_identity_holds(&s).unwrap_or(false);
                out.push(check(
                    "malcev-identity",
                    "skew-octonions-form-a-malcev-algebra",
                    malcev,
                    "Malcev identity on all basis quadruples".into(),
                ));
                let jac = find_jacobi_counterexample(&s).ok().flatten();
                out.push(match jac {
                    Some((i, j, k)) => check(
                        "jacobi-counterexample",
                        "skew-octonions-are-not-a-lie-algebra",
                        true,
                        format!("Jacobi identity fails at basis triple ({i}, {j}, {k})"),
                    ),
                    None => check(
                        "jacobi-counterexample",
                        "skew-octonions-are-not-a-lie-algebra",
                        false,
                        "no Jacobi counterexample found".into(),
                    ),
                });
            }
            Err(e) => out.push(check("malcev-gram", "skew-octonion-form-is-minus-four-diagonal", false, e.to_string())),
        }
    }

    if name == "triple-1d" {
        let admissible = matches!(check_admissible_triple(&triple_1d_data()), Ok(None));
        out.push(check(
            "admissible-triple",
            "sharp-identities-hold",
            admissible,
            "the 1-dimensional triple satisfies the sharp identities symbolically".into(),
        ));
        let rejected = matches!(
            check_admissible_triple(&triple_1d_inadmissible_variant()),
            Ok(Some(_))
        );
        out.push(check(
            "inadmissible-variant-rejected",
            "sharp-identities-detect-bad-pairing",
            rejected,
            "the unit-pairing variant is rejected with a witness monomial".into(),
        ));
    }

    if name.starts_with("jordan-") {
        out.push(check(
            "commutativity",
            "jordan-product-is-commutative",
            is_commutative(a),
            "structure constants symmetric in the first two slots".into(),
        ));
        out.push(check(
            "jordan-identity",
            "jordan-identity-holds",
            jordan_identity_sampled(a, 50, 0),
            "(xy)x^2 = x(yx^2) at 50 seeded integer sample points".into(),
        ));
    }

    if name.starts_with("matrix-inv-") {
        out.push(check(
            "associativity",
            "matrix-algebra-is-associative",
            is_associative(a),
            "associator vanishes on all basis triples".into(),
        ));
    }

    out
}

/// Parses a comma-separated delta list ("-1,0,1/3,1/2,1,2").
pub fn parse_delta_list(s: &str) -> Option<Vec<Rat>> {
    s.split(',').map(|part| parse_rat(part)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Mode;

    fn opts() -> SolverOptions {
        SolverOptions { mode: Mode::Exact, ..Default::default() }
    }

    #[test]
    fn octonion_report_passes_and_has_expected_dims() {
        let a = build_by_name("octonion-table").unwrap();
        let r = run_verification("octonion-table", &a, &default_deltas(), &opts(), false);
        assert!(r.all_passed(), "{:#?}", r.checks);
        assert_eq!(r.delta_results.len(), 6);
        let half = r.delta_results.iter().find(|d| d.delta == "1/2").unwrap();
        assert_eq!(half.space_dim, 1);
        assert_eq!(half.centroid_dim, 1);
        assert!(!half.nontrivial);
        let zero = r.delta_results.iter().find(|d| d.delta == "1/3").unwrap();
        assert_eq!(zero.space_dim, 0);
    }

    #[test]
    fn report_json_is_deterministic_and_schema_shaped() {
        let a = build_by_name("matrix-inv-2").unwrap();
        let r1 = run_verification("matrix-inv-2", &a, &default_deltas(), &opts(), false);
        let r2 = run_verification("matrix-inv-2", &a, &default_deltas(), &opts(), false);
        assert_eq!(r1.to_json(), r2.to_json());
        let v: serde_json::Value = serde_json::from_str(&r1.to_json()).unwrap();
        for key in ["algebra", "dim", "caveat", "checks", "delta_results", "timings_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["timings_ms"], serde_json::json!({}));
        let c0 = &v["checks"][0];
        for key in ["id", "claim_ref", "status", "detail"] {
            assert!(c0.get(key).is_some(), "missing check field {key}");
        }
        let d0 = &v["delta_results"][0];
        for key in ["delta", "space_dim", "centroid_dim", "nontrivial", "certificate"] {
            assert!(d0.get(key).is_some(), "missing delta field {key}");
        }
    }

    #[test]
    fn timings_flag_populates_map() {
        let a = build_by_name("matrix-inv-2").unwrap();
        let r = run_verification("matrix-inv-2", &a, &[rat(1, 2)], &opts(), true);
        assert!(!r.timings_ms.is_empty());
    }

    #[test]
    fn sum_report_checks_block_structure() {
        let a = build_by_name("sum-octonion-matrix-inv-2").unwrap();
        let r = run_verification("sum-octonion-matrix-inv-2", &a, &[rat(1, 2)], &opts(), false);
        assert!(r.all_passed(), "{:#?}", r.checks);
        assert!(r.checks.iter().any(|c| c.id == "block-diagonal-splitting" && c.passed()));
        let half = &r.delta_results[0];
        assert_eq!(half.space_dim, 2);
        assert_eq!(half.centroid_dim, 2);
    }

    #[test]
    fn identity_suites_by_family() {
        for name in ["octonion-table", "jordan-3", "matrix-inv-2", "triple-1d"] {
            let a = build_by_name(name).unwrap();
            let checks = run_identities(name, &a);
            assert!(checks.iter().all(CheckResult::passed), "{name}: {checks:#?}");
        }
        let ids: Vec<String> = run_identities("jordan-3", &build_by_name("jordan-3").unwrap())
            .into_iter()
            .map(|c| c.id)
            .collect();
        assert!(ids.contains(&"jordan-identity".to_string()));
    }

    #[test]
    fn delta_list_parsing() {
        let d = parse_delta_list("-1,0,1/3,1/2,1,2").unwrap();
        assert_eq!(d, default_deltas());
        assert!(parse_delta_list("1,x").is_none());
    }

    #[test]
    fn markdown_rendering_mentions_every_check() {
        let a = build_by_name("matrix-inv-2").unwrap();
        let r = run_verification("matrix-inv-2", &a, &[rat(1, 2)], &opts(), false);
        let md = r.to_markdown();
        for c in &r.checks {
            assert!(md.contains(&c.id), "{} missing from markdown", c.id);
        }
    }
}
