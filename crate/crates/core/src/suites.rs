//! Named, seeded property suites. Each check compares two independent routes
//! to the same answer on generated instances and reports agreement counts.
//!
//! Instances whose normalised one-sided derivatives fall in the marginal band
//! `(NEAR_ZERO, 10 · eps_band]` are counted as marginal and skipped: there the
//! derivative test and the minimisation oracle legitimately round differently.
//! Exact zeros (up to rounding) are kept, since convexity makes both routes
//! agree on them.

use std::time::Instant;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bilinear::{alternating_ascent, bilinear_norm, linear_norm, norm_attainment_set, BilinearOperator, SearchConfig};
use crate::decision::{Decision, Verdict};
use crate::error::{Error, Result};
use crate::instances::{self, Family};
use crate::orthogonality::{
    bj_oracle, in_negative_part, in_positive_part, is_bj_orthogonal, negative_part_oracle, one_sided_derivatives, positive_part_oracle,
    OneSidedDerivatives,
};
use crate::product::{closed_form_negative_part, closed_form_orthogonality, closed_form_positive_part, is_smooth_point_product, ProductVector};
use crate::sip::{sip_value, verify_sip_axioms, SipSelector};
use crate::spaces::{Space, Vector};
use crate::theorems::{
    example_operator, linear_attains_at_smooth, operator_smoothness, operators_orthogonal_direct, project_orthogonal, right_additivity_check,
    single_orbit_reduction, verify_sip_theorem_family, verify_sip_theorem_smooth, witness_search, worked_example,
};
use crate::tolerance::Tolerances;
use crate::vecops;

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 9] = [
    "definitions",
    "product-props",
    "smooth-product",
    "bilinear-core",
    "operator-orth",
    "operator-smooth",
    "sip-theorem",
    "paper-example",
    "all",
];

/// Normalised derivatives at or below this are treated as exact zeros.
pub const NEAR_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: Tolerances,
    pub starts: usize,
    /// Omit wall-clock fields so reports are byte-for-byte reproducible.
    pub no_timestamp: bool,
    /// Treat inconclusive checks as failures.
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            tol: Tolerances::default(),
            starts: 64,
            no_timestamp: false,
            strict: false,
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        RunConfig {
            seed,
            ..RunConfig::default()
        }
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            starts: self.starts.max(1),
            seed: self.seed,
            tol: self.tol,
            ..SearchConfig::default()
        }
    }

    fn rng(&self, check: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.seed, check))
    }
}

/// FNV-1a of the check name mixed into the run seed.
fn derive_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub total: usize,
    pub agreed: usize,
    pub disagreed: usize,
    pub marginal: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub check: String,
    pub claim: String,
    pub verdict: Verdict,
    pub counts: Counts,
    pub witnesses: Value,
    pub residuals: Value,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn passed(&self, strict: bool) -> bool {
        match self.verdict {
            Verdict::Holds => true,
            Verdict::Fails => false,
            Verdict::Inconclusive => !strict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self, strict: bool) -> bool {
        self.checks.iter().all(|c| c.passed(strict))
    }

    pub fn summary(&self) -> (usize, usize) {
        let n = self.checks.iter().filter(|c| c.verdict == Verdict::Holds).count();
        (n, self.checks.len())
    }
}

/// Agreement bookkeeping for one check.
struct Tally {
    counts: Counts,
    mismatches: Vec<Value>,
    residuals: Value,
    note: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            counts: Counts::default(),
            mismatches: Vec::new(),
            residuals: Value::Null,
            note: None,
        }
    }

    fn marginal(&mut self) {
        self.counts.total += 1;
        self.counts.marginal += 1;
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.counts.total += 1;
        if ok {
            self.counts.agreed += 1;
        } else {
            self.counts.disagreed += 1;
            if self.mismatches.len() < 5 {
                self.mismatches.push(witness());
            }
        }
    }

    /// Compare two verdicts, skipping the instance if either is inconclusive.
    fn compare(&mut self, a: Verdict, b: Verdict, witness: impl FnOnce() -> Value) {
        if a.is_conclusive() && b.is_conclusive() {
            self.record(a == b, witness);
        } else {
            self.marginal();
        }
    }

    fn finish(self, suite: &str, check: &str, anchor: &str, cfg: &RunConfig, started: Instant) -> CheckReport {
        let verdict = if self.counts.disagreed > 0 {
            Verdict::Fails
        } else if self.counts.agreed == 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Holds
        };
        CheckReport {
            suite: suite.into(),
            check: check.into(),
            claim: anchor.into(),
            verdict,
            counts: self.counts,
            witnesses: Value::Array(self.mismatches),
            residuals: self.residuals,
            tolerances: cfg.tol,
            runtime_ms: (!cfg.no_timestamp).then(|| started.elapsed().as_millis() as u64),
            note: self.note,
        }
    }
}

fn error_report(suite: &str, check: &str, anchor: &str, cfg: &RunConfig, started: Instant, e: Error) -> CheckReport {
    let mut t = Tally::new();
    t.record(false, || json!({ "error": e.to_string() }));
    t.finish(suite, check, anchor, cfg, started)
}

/// Run a check body, turning library errors into a failed report.
fn run_check(suite: &str, check: &str, anchor: &str, cfg: &RunConfig, body: impl FnOnce(&mut Tally) -> Result<()>) -> CheckReport {
    let started = Instant::now();
    let mut t = Tally::new();
    match body(&mut t) {
        Ok(()) => t.finish(suite, check, anchor, cfg, started),
        Err(e) => error_report(suite, check, anchor, cfg, started, e),
    }
}

fn is_marginal(v: f64, tol: &Tolerances) -> bool {
    let a = v.abs();
    a > NEAR_ZERO && a <= 10.0 * tol.eps_band
}

fn derivatives_marginal(d: &OneSidedDerivatives, tol: &Tolerances) -> bool {
    let (p, m) = d.normalized();
    is_marginal(p, tol) || is_marginal(m, tol)
}

fn scaled_unit<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Vector {
    let u = instances::structured_unit(space, rng);
    let s: f64 = rng.random_range(0.2..5.0);
    Vector(vecops::scale(&u, s))
}

/// `(space, x, y)` with `x` structured and `y` half the time orthogonal to it.
fn bj_triple<R: Rng + ?Sized>(rng: &mut R, family: Family, dims: std::ops::RangeInclusive<usize>, tol: &Tolerances) -> (Space, Vector, Vector) {
    let space = instances::random_space(rng, family, dims);
    let x = scaled_unit(&space, rng);
    let y = instances::direction_at(&space, &x, rng, tol);
    let s: f64 = rng.random_range(0.2..5.0);
    (space.clone(), x, Vector(vecops::scale(&y, s)))
}

fn vjson(v: &[f64]) -> Value {
    json!(v)
}

// ---------------------------------------------------------------------------
// definitions
// ---------------------------------------------------------------------------

const DEF: &str = "definitions";

pub fn check_norm_axioms(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("norm-axioms");
    run_check(DEF, "norm-axioms", "‖αx‖ = |α|‖x‖ and ‖x + y‖ ≤ ‖x‖ + ‖y‖", cfg, |t| {
        for k in 0..1000 {
            let fam = Family::ALL[k % Family::ALL.len()];
            let space = instances::random_space(&mut rng, fam, 2..=4);
            let x = instances::normal_vec(&mut rng, space.dim());
            let y = instances::normal_vec(&mut rng, space.dim());
            let a: f64 = rng.random_range(-4.0..4.0);
            let nx = space.norm(&x)?;
            let ny = space.norm(&y)?;
            let nax = space.norm(&vecops::scale(&x, a))?;
            let nxy = space.norm(&vecops::add(&x, &y))?;
            let ok = (nax - a.abs() * nx).abs() <= 1e-12 * a.abs() * nx + 1e-300 && nxy <= nx + ny + 1e-12;
            t.record(ok, || json!({ "space": space.label(), "x": x, "y": y, "alpha": a }));
        }
        Ok(())
    })
}

pub fn check_support_certificates(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("support-certificates");
    run_check(DEF, "support-certificates", "J(x) = {f : ‖f‖_* = 1, f(x) = ‖x‖}", cfg, |t| {
        let mut worst: f64 = 0.0;
        for k in 0..1000 {
            let fam = Family::ALL[k % Family::ALL.len()];
            let space = instances::random_space(&mut rng, fam, 2..=4);
            let x = scaled_unit(&space, &mut rng);
            let n = space.norm(&x)?;
            let set = space.support_functionals(&x, &cfg.tol)?;
            let mut ok = !set.is_empty();
            for f in &set.extremes {
                let e1 = (space.dual_norm(f)? - 1.0).abs();
                let e2 = (f.apply(&x) - n).abs() / n;
                worst = worst.max(e1).max(e2);
                ok &= e1 <= 1e-9 && e2 <= 1e-9;
            }
            if let Space::Lp { p, .. } = space {
                if p == 2.0 {
                    let e = vecops::max_abs_diff(&set.extremes[0], &vecops::scale(&x, 1.0 / n));
                    ok &= set.len() == 1 && e <= 1e-12;
                }
            }
            t.record(ok, || json!({ "space": space.label(), "x": x }));
        }
        t.residuals = json!({ "max_certificate_error": worst });
        Ok(())
    })
}

pub fn check_polyhedral_equivalence(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("polyhedral-equivalence");
    run_check(DEF, "polyhedral-equivalence", "max-of-facets norm reproduces ℓ∞ and ℓ1", cfg, |t| {
        for dim in 2..=4 {
            let boxf: Vec<Vec<f64>> = (0..dim).map(|i| Vector::basis(dim, i).0).collect();
            let crossf: Vec<Vec<f64>> = Space::linf(dim)?.extreme_points()?.into_iter().map(Vector::into_inner).collect();
            let pairs = [
                (Space::polyhedral(boxf)?, Space::linf(dim)?),
                (Space::polyhedral(crossf)?, Space::l1(dim)?),
            ];
            for (poly, reference) in pairs {
                for _ in 0..1000 / 6 + 1 {
                    let v = instances::normal_vec(&mut rng, dim);
                    let (a, b) = (poly.norm(&v)?, reference.norm(&v)?);
                    t.record((a - b).abs() <= 1e-12 * b, || json!({ "space": reference.label(), "v": v, "poly": a, "reference": b }));
                }
            }
        }
        Ok(())
    })
}

/// Derivative route against the golden-section oracle for `⊥_B`, over every
/// norm family.
pub fn check_bj_oracle_agreement(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("bj-oracle-agreement");
    let tol = cfg.tol;
    run_check(DEF, "bj-oracle-agreement", "x ⊥_B y iff ‖x + λy‖ ≥ ‖x‖ for all real λ", cfg, |t| {
        for k in 0..count {
            let fam = Family::ALL[k % Family::ALL.len()];
            let (space, x, y) = bj_triple(&mut rng, fam, 2..=4, &tol);
            let d = one_sided_derivatives(&space, &x, &y, &tol)?;
            if derivatives_marginal(&d, &tol) {
                t.marginal();
                continue;
            }
            let a = d.orthogonal_verdict(&tol);
            let b = bj_oracle(&space, &x, &y, &tol)?.verdict;
            t.compare(a, b, || json!({ "space": space.label(), "x": x, "y": y, "derivative": a, "oracle": b }));
        }
        Ok(())
    })
}

pub fn check_part_oracle_agreement(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("part-oracle-agreement");
    let tol = cfg.tol;
    run_check(DEF, "part-oracle-agreement", "y ∈ x⁺ iff ‖x + λy‖ ≥ ‖x‖ for λ ≥ 0; y ∈ x⁻ likewise for λ ≤ 0", cfg, |t| {
        for k in 0..count {
            let fam = Family::ALL[k % Family::ALL.len()];
            let (space, x, y) = bj_triple(&mut rng, fam, 2..=4, &tol);
            let d = one_sided_derivatives(&space, &x, &y, &tol)?;
            let (p, m) = d.normalized();
            if is_marginal(p, &tol) {
                t.marginal();
            } else {
                let a = in_positive_part(&space, &x, &y, &tol)?.verdict;
                let b = positive_part_oracle(&space, &x, &y, &tol)?.verdict;
                t.compare(a, b, || json!({ "part": "+", "space": space.label(), "x": x, "y": y }));
            }
            if is_marginal(m, &tol) {
                t.marginal();
            } else {
                let a = in_negative_part(&space, &x, &y, &tol)?.verdict;
                let b = negative_part_oracle(&space, &x, &y, &tol)?.verdict;
                t.compare(a, b, || json!({ "part": "-", "space": space.label(), "x": x, "y": y }));
            }
        }
        Ok(())
    })
}

pub fn check_membership_identities(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("membership-identities");
    let tol = cfg.tol;
    run_check(DEF, "membership-identities", "x ∈ x⁺, −x ∈ x⁻, 0 ∈ x^⊥; in ℓ2, ⊥_B is ⟨x, y⟩ = 0", cfg, |t| {
        for k in 0..500 {
            let fam = Family::ALL[k % Family::ALL.len()];
            let space = instances::random_space(&mut rng, fam, 2..=4);
            let x = scaled_unit(&space, &mut rng);
            let mx = Vector(vecops::neg(&x));
            let zero = Vector::zeros(space.dim());
            let ok = in_positive_part(&space, &x, &x, &tol)?.is_holds()
                && in_negative_part(&space, &x, &mx, &tol)?.is_holds()
                && is_bj_orthogonal(&space, &x, &zero, &tol)?.is_holds();
            t.record(ok, || json!({ "space": space.label(), "x": x }));
        }
        for _ in 0..500 {
            let space = instances::random_space(&mut rng, Family::L2, 2..=4);
            let x = scaled_unit(&space, &mut rng);
            let y = instances::direction_at(&space, &x, &mut rng, &tol);
            let inner = vecops::dot(&x, &y).abs();
            let scale = space.norm(&x)? * space.norm(&y)?;
            let r = inner / scale;
            if is_marginal(r, &tol) {
                t.marginal();
                continue;
            }
            let a = is_bj_orthogonal(&space, &x, &y, &tol)?.verdict;
            t.compare(a, Verdict::from_bool(inner <= tol.eps_eq * scale), || json!({ "x": x, "y": y }));
        }
        Ok(())
    })
}

pub fn check_verdict_homogeneity(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("verdict-homogeneity");
    let tol = cfg.tol;
    run_check(DEF, "verdict-homogeneity", "membership is invariant under x ↦ αx, y ↦ βy with α, β > 0", cfg, |t| {
        for k in 0..1000 {
            let fam = Family::ALL[k % Family::ALL.len()];
            let (space, x, y) = bj_triple(&mut rng, fam, 2..=4, &tol);
            let a: f64 = rng.random_range(0.01..100.0);
            let b: f64 = rng.random_range(0.01..100.0);
            let (ax, by) = (vecops::scale(&x, a), vecops::scale(&y, b));
            let before = (
                in_positive_part(&space, &x, &y, &tol)?.verdict,
                in_negative_part(&space, &x, &y, &tol)?.verdict,
                is_bj_orthogonal(&space, &x, &y, &tol)?.verdict,
            );
            let after = (
                in_positive_part(&space, &ax, &by, &tol)?.verdict,
                in_negative_part(&space, &ax, &by, &tol)?.verdict,
                is_bj_orthogonal(&space, &ax, &by, &tol)?.verdict,
            );
            let d = one_sided_derivatives(&space, &x, &y, &tol)?;
            if derivatives_marginal(&d, &tol) {
                t.marginal();
                continue;
            }
            t.record(before == after, || json!({ "space": space.label(), "x": x, "y": y, "alpha": a, "beta": b }));
        }
        Ok(())
    })
}

/// Axioms of the default semi-inner-product on ℓ1, ℓ2, ℓ4, ℓ∞ in dims 2 to 4.
pub fn check_sip_axioms(cfg: &RunConfig, suite: &str) -> CheckReport {
    let seed = derive_seed(cfg.seed, "sip-axioms");
    run_check(suite, "sip-axioms", "[·,·] is linear, positive, Cauchy-Schwarz bounded, homogeneous, [x,x] = ‖x‖²", cfg, |t| {
        for (k, p) in [1.0, 2.0, 4.0, f64::INFINITY].into_iter().enumerate() {
            for dim in 2..=4 {
                let space = Space::lp(p, dim)?;
                let d = verify_sip_axioms(&space, SipSelector::Barycenter, 1000, seed.wrapping_add((k * 8 + dim) as u64), &cfg.tol)?;
                t.record(d.is_holds(), || json!({ "space": space.label(), "note": d.note }));
            }
        }
        Ok(())
    })
}

pub fn check_sip_uniqueness(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("sip-smooth-uniqueness");
    let tol = cfg.tol;
    run_check(DEF, "sip-smooth-uniqueness", "a smooth space carries exactly one semi-inner-product", cfg, |t| {
        let selectors = [SipSelector::Barycenter, SipSelector::LexMin, SipSelector::Extreme(0), SipSelector::Extreme(3)];
        for k in 0..600 {
            let fam = [Family::L2, Family::L4][k % 2];
            let space = instances::random_space(&mut rng, fam, 2..=4);
            let x = scaled_unit(&space, &mut rng);
            let y = scaled_unit(&space, &mut rng);
            let base = sip_value(&space, selectors[0], &y, &x, &tol)?;
            let scale = space.norm(&x)? * space.norm(&y)?;
            let mut ok = true;
            for s in &selectors[1..] {
                ok &= (sip_value(&space, *s, &y, &x, &tol)? - base).abs() <= 1e-9 * scale;
            }
            let odd = sip_value(&space, selectors[0], &y, &vecops::neg(&x), &tol)?;
            ok &= odd == -base;
            t.record(ok, || json!({ "space": space.label(), "x": x, "y": y }));
        }
        Ok(())
    })
}

pub fn definitions(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![
        check_norm_axioms(cfg),
        check_support_certificates(cfg),
        check_polyhedral_equivalence(cfg),
        check_bj_oracle_agreement(cfg, 10_000),
        check_part_oracle_agreement(cfg, 2000),
        check_membership_identities(cfg),
        check_verdict_homogeneity(cfg),
        check_sip_axioms(cfg, DEF),
        check_sip_uniqueness(cfg),
    ]
}

// ---------------------------------------------------------------------------
// product-props, smooth-product
// ---------------------------------------------------------------------------

const PROD: &str = "product-props";

struct ProductInstance {
    xs: Space,
    ys: Space,
    anchor: ProductVector,
    dir: ProductVector,
}

impl ProductInstance {
    fn space(&self) -> Space {
        Space::product(self.xs.clone(), self.ys.clone())
    }

    fn json(&self) -> Value {
        json!({
            "X": self.xs.label(), "Y": self.ys.label(),
            "anchor": [vjson(&self.anchor.x), vjson(&self.anchor.y)],
            "direction": [vjson(&self.dir.x), vjson(&self.dir.y)],
        })
    }
}

fn product_instance<R: Rng + ?Sized>(rng: &mut R, tol: &Tolerances) -> ProductInstance {
    let xs = instances::random_space_from(rng, &Family::LP, 2..=3);
    let ys = instances::random_space_from(rng, &Family::LP, 2..=3);
    let space = Space::product(xs.clone(), ys.clone());
    let a = scaled_unit(&space, rng);
    let d = instances::direction_at(&space, &a, rng, tol);
    let mut d = d.0;
    // Occasionally zero one component of the direction.
    match rng.random_range(0..6) {
        0 => d[..xs.dim()].iter_mut().for_each(|v| *v = 0.0),
        1 => d[xs.dim()..].iter_mut().for_each(|v| *v = 0.0),
        _ => {}
    }
    ProductInstance {
        anchor: ProductVector::split(&a, xs.dim()),
        dir: ProductVector::split(&d, xs.dim()),
        xs,
        ys,
    }
}

/// Any derivative on either factor or on the product is inside the band.
fn product_marginal(inst: &ProductInstance, tol: &Tolerances) -> Result<bool> {
    let space = inst.space();
    let d = one_sided_derivatives(&space, &inst.anchor.concat(), &inst.dir.concat(), tol)?;
    if derivatives_marginal(&d, tol) {
        return Ok(true);
    }
    for (s, a, v) in [(&inst.xs, &inst.anchor.x, &inst.dir.x), (&inst.ys, &inst.anchor.y, &inst.dir.y)] {
        if s.norm_of(a) > tol.eps_zero && derivatives_marginal(&one_sided_derivatives(s, a, v, tol)?, tol) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Closed-form parts of `X × Y` against the golden-section oracles on the
/// product descriptor.
pub fn check_product_closed_forms(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("product-closed-forms");
    let tol = cfg.tol;
    run_check(
        PROD,
        "product-closed-forms",
        "(x,y)⁺ = x⁺ × Y when ‖x‖ > ‖y‖, (x⁺ × Y) ∪ (X × y⁺) when equal; (x,y)^⊥ = (x⁺ × y⁻) ∪ (x⁻ × y⁺) when equal",
        cfg,
        |t| {
            let mut by_case = [0usize; 2];
            for _ in 0..count {
                let inst = product_instance(&mut rng, &tol);
                if product_marginal(&inst, &tol)? {
                    t.marginal();
                    continue;
                }
                let (a, d) = (inst.anchor.concat(), inst.dir.concat());
                let space = inst.space();
                let pairs = [
                    (
                        closed_form_positive_part(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict,
                        positive_part_oracle(&space, &a, &d, &tol)?.verdict,
                    ),
                    (
                        closed_form_negative_part(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict,
                        negative_part_oracle(&space, &a, &d, &tol)?.verdict,
                    ),
                    (
                        closed_form_orthogonality(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict,
                        bj_oracle(&space, &a, &d, &tol)?.verdict,
                    ),
                ];
                if pairs.iter().any(|(c, o)| !c.is_conclusive() || !o.is_conclusive()) {
                    t.marginal();
                    continue;
                }
                let equal = (inst.xs.norm_of(&inst.anchor.x) - inst.ys.norm_of(&inst.anchor.y)).abs() <= tol.eps_eq;
                by_case[usize::from(equal)] += 1;
                t.record(pairs.iter().all(|(c, o)| c == o), || {
                    let mut w = inst.json();
                    w["closed_form"] = json!(pairs.iter().map(|p| p.0).collect::<Vec<_>>());
                    w["oracle"] = json!(pairs.iter().map(|p| p.1).collect::<Vec<_>>());
                    w
                });
            }
            t.note = Some(format!("{} unequal-norm and {} equal-norm anchors compared", by_case[0], by_case[1]));
            Ok(())
        },
    )
}

pub fn check_product_generic_agreement(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("product-generic-agreement");
    let tol = cfg.tol;
    run_check(PROD, "product-generic-agreement", "closed forms agree with the dual-sum support set of X × Y", cfg, |t| {
        for _ in 0..count {
            let inst = product_instance(&mut rng, &tol);
            if product_marginal(&inst, &tol)? {
                t.marginal();
                continue;
            }
            let (a, d) = (inst.anchor.concat(), inst.dir.concat());
            let space = inst.space();
            let c = (
                closed_form_positive_part(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict,
                closed_form_negative_part(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict,
                closed_form_orthogonality(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict,
            );
            let g = (
                in_positive_part(&space, &a, &d, &tol)?.verdict,
                in_negative_part(&space, &a, &d, &tol)?.verdict,
                is_bj_orthogonal(&space, &a, &d, &tol)?.verdict,
            );
            if ![c.0, c.1, c.2, g.0, g.1, g.2].iter().all(|v| v.is_conclusive()) {
                t.marginal();
                continue;
            }
            t.record(c == g, || inst.json());
        }
        Ok(())
    })
}

pub fn check_product_intersection(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("product-intersection");
    let tol = cfg.tol;
    run_check(PROD, "product-intersection", "(x,y)^⊥ = (x,y)⁺ ∩ (x,y)⁻", cfg, |t| {
        for _ in 0..count {
            let inst = product_instance(&mut rng, &tol);
            if product_marginal(&inst, &tol)? {
                t.marginal();
                continue;
            }
            let p = closed_form_positive_part(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict;
            let n = closed_form_negative_part(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict;
            let o = closed_form_orthogonality(&inst.xs, &inst.ys, &inst.anchor, &inst.dir, &tol)?.verdict;
            t.compare(o, p.and(n), || inst.json());
        }
        Ok(())
    })
}

pub fn product_props(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![
        check_product_closed_forms(cfg, 2000),
        check_product_generic_agreement(cfg, 2000),
        check_product_intersection(cfg, 2000),
    ]
}

/// Closed-form smooth points of `X × Y` against the unique-functional test.
pub fn check_smooth_point_product(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("smooth-point-product");
    let tol = cfg.tol;
    run_check(
        "smooth-product",
        "smooth-point-product",
        "sm S_{X×Y} = (sm S_X × (B_Y \\ S_Y)) ∪ ((B_X \\ S_X) × sm S_Y)",
        cfg,
        |t| {
            let mut holds = 0;
            for _ in 0..count {
                let xs = instances::random_space_from(&mut rng, &Family::LP, 2..=3);
                let ys = instances::random_space_from(&mut rng, &Family::LP, 2..=3);
                let space = Space::product(xs.clone(), ys.clone());
                let u = instances::structured_unit(&space, &mut rng);
                let anchor = ProductVector::split(&u, xs.dim());
                let a = is_smooth_point_product(&xs, &ys, &anchor, &tol)?.verdict;
                let b = space.is_smooth_point(&u, &tol)?.verdict;
                holds += usize::from(a == Verdict::Holds);
                t.compare(a, b, || json!({ "X": xs.label(), "Y": ys.label(), "anchor": u, "closed_form": a, "generic": b }));
            }
            t.note = Some(format!("{holds} smooth anchors"));
            Ok(())
        },
    )
}

pub fn smooth_product(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![check_smooth_point_product(cfg, 2000)]
}

// ---------------------------------------------------------------------------
// bilinear-core
// ---------------------------------------------------------------------------

const BIL: &str = "bilinear-core";

fn random_spaces<R: Rng + ?Sized>(rng: &mut R, families: &[Family], dims: std::ops::RangeInclusive<usize>) -> (Space, Space, Space) {
    let a = instances::random_space_from(rng, families, dims.clone());
    let b = instances::random_space_from(rng, families, dims.clone());
    (a, b, instances::random_space_from(rng, families, dims))
}

pub fn check_bilinearity(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("bilinearity");
    run_check(BIL, "bilinearity", "T is linear in each argument", cfg, |t| {
        for _ in 0..1000 {
            let (xs, ys, zs) = random_spaces(&mut rng, &Family::LP, 2..=4);
            let op = instances::random_operator(&mut rng, xs.clone(), ys.clone(), zs);
            let x = instances::normal_vec(&mut rng, xs.dim());
            let x2 = instances::normal_vec(&mut rng, xs.dim());
            let y = instances::normal_vec(&mut rng, ys.dim());
            let y2 = instances::normal_vec(&mut rng, ys.dim());
            let a: f64 = rng.random_range(-3.0..3.0);
            let lhs = op.evaluate(&vecops::axpy(&x2, a, &x), &y)?;
            let rhs = vecops::axpy(&op.evaluate(&x2, &y)?, a, &op.evaluate(&x, &y)?);
            let lhs2 = op.evaluate(&x, &vecops::axpy(&y2, a, &y))?;
            let rhs2 = vecops::axpy(&op.evaluate(&x, &y2)?, a, &op.evaluate(&x, &y)?);
            let scale = 1.0 + vecops::max_abs(&lhs).max(vecops::max_abs(&lhs2));
            let ok = vecops::max_abs_diff(&lhs, &rhs) <= 1e-12 * scale && vecops::max_abs_diff(&lhs2, &rhs2) <= 1e-12 * scale;
            t.record(ok, || json!({ "x": x, "y": y, "alpha": a }));
        }
        Ok(())
    })
}

pub fn check_norm_scaling(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("norm-scaling");
    let search = cfg.search();
    run_check(BIL, "norm-scaling", "‖αT‖ = |α| ‖T‖", cfg, |t| {
        for _ in 0..40 {
            let (xs, ys, zs) = random_spaces(&mut rng, &[Family::LInf, Family::L1, Family::L2], 2..=3);
            let op = instances::random_operator(&mut rng, xs, ys, zs);
            let a: f64 = rng.random_range(-5.0..5.0);
            let n = bilinear_norm(&op, &search).value;
            let na = bilinear_norm(&op.scaled(a), &search).value;
            t.record((na - a.abs() * n).abs() <= 1e-12 * (1.0 + a.abs() * n), || json!({ "alpha": a, "norm": n, "scaled": na }));
        }
        Ok(())
    })
}

pub fn check_slice_consistency(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("slice-consistency");
    let search = cfg.search();
    let tol = cfg.tol;
    run_check(BIL, "slice-consistency", "‖T(x₀,·)‖ ≤ ‖T‖ ‖x₀‖, with equality at maximisers", cfg, |t| {
        for _ in 0..40 {
            let (xs, ys, zs) = random_spaces(&mut rng, &[Family::LInf, Family::L1, Family::L2], 2..=3);
            let op = instances::random_operator(&mut rng, xs.clone(), ys, zs);
            let m = norm_attainment_set(&op, &search)?;
            let x0 = scaled_unit(&xs, &mut rng);
            let s = linear_norm(&op.fix_first(&x0)?, &search).value;
            let mut ok = s <= m.value * xs.norm(&x0)? * (1.0 + tol.eps_eq) + tol.eps_eq;
            for (x, _) in &m.orbits {
                let s = linear_norm(&op.fix_first(x)?, &search).value;
                ok &= (s - m.value).abs() <= tol.eps_attain * m.value + tol.eps_eq;
            }
            t.record(ok, || json!({ "X": xs.label(), "norm": m.value, "slice": s }));
        }
        Ok(())
    })
}

/// Every computed maximiser has both coordinates on the unit spheres and is
/// not a smooth point of `X × Y`.
pub fn check_maximizers_not_smooth(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("maximizers-not-smooth");
    let search = cfg.search();
    let tol = cfg.tol;
    run_check(BIL, "maximizers-not-smooth", "M_T ∩ sm S_{X×Y} = ∅ for non-zero T", cfg, |t| {
        let mut worst: f64 = 0.0;
        let mut reps = 0;
        for _ in 0..count {
            let (xs, ys, zs) = random_spaces(&mut rng, &[Family::LInf, Family::L2], 2..=3);
            let op = if rng.random_bool(0.5) {
                instances::random_operator(&mut rng, xs.clone(), ys.clone(), zs)
            } else {
                instances::random_dyadic_operator(&mut rng, xs.clone(), ys.clone(), zs)
            };
            let m = norm_attainment_set(&op, &search)?;
            let mut ok = true;
            for (x, y) in &m.orbits {
                reps += 1;
                let ex = (xs.norm(x)? - 1.0).abs();
                let ey = (ys.norm(y)? - 1.0).abs();
                worst = worst.max(ex).max(ey);
                let smooth = is_smooth_point_product(&xs, &ys, &ProductVector::new(x.clone(), y.clone()), &tol)?;
                ok &= ex <= 1e-9 && ey <= 1e-9 && smooth.is_fails();
                ok &= op.z_space().norm(&op.evaluate(x, y)?)? >= m.value * (1.0 - tol.eps_attain);
            }
            t.record(ok && !m.orbits.is_empty(), || json!({ "X": xs.label(), "Y": ys.label(), "orbits": m.orbits }));
        }
        t.residuals = json!({ "max_sphere_deviation": worst, "representatives": reps });
        Ok(())
    })
}

pub fn check_polyhedral_vs_ascent(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("polyhedral-vs-ascent");
    let search = cfg.search();
    run_check(BIL, "polyhedral-vs-ascent", "alternating ascent reaches the vertex-enumerated ‖T‖", cfg, |t| {
        let mut worst: f64 = 0.0;
        for _ in 0..60 {
            let (xs, ys, zs) = random_spaces(&mut rng, &[Family::LInf], 2..=3);
            let zs = if rng.random_bool(0.5) { zs } else { instances::random_space(&mut rng, Family::L2, 2..=3) };
            let op = instances::random_operator(&mut rng, xs, ys, zs);
            let exact = bilinear_norm(&op, &search);
            let asc = alternating_ascent(&op, &search);
            let gap = (exact.value - asc.value).abs();
            worst = worst.max(gap);
            t.record(exact.exact && gap <= 1e-9, || json!({ "exact": exact.value, "ascent": asc.value }));
        }
        t.residuals = json!({ "max_gap": worst });
        Ok(())
    })
}

pub fn bilinear_core(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![
        check_bilinearity(cfg),
        check_norm_scaling(cfg),
        check_slice_consistency(cfg),
        check_maximizers_not_smooth(cfg, 100),
        check_polyhedral_vs_ascent(cfg),
    ]
}

// ---------------------------------------------------------------------------
// operator-orth
// ---------------------------------------------------------------------------

const ORTH: &str = "operator-orth";

fn linf2() -> Space {
    Space::linf(2).expect("dim 2")
}

/// A perturbation operator for `T`: plain random, dyadic, or projected so
/// that `T(x₀,y₀) ⊥_B A(x₀,y₀)` at a random maximiser.
fn perturbation<R: Rng + ?Sized>(rng: &mut R, t: &BilinearOperator, members: &[(Vector, Vector)], tol: &Tolerances) -> Result<BilinearOperator> {
    let (xs, ys, zs) = (t.x_space().clone(), t.y_space().clone(), t.z_space().clone());
    Ok(match rng.random_range(0..3) {
        0 => instances::random_operator(rng, xs, ys, zs),
        1 => instances::random_dyadic_operator(rng, xs, ys, zs),
        _ => {
            let a = instances::random_operator(rng, xs, ys, zs);
            let (x0, y0) = &members[rng.random_range(0..members.len())];
            project_orthogonal(t, &a, x0, y0, tol)?
        }
    })
}

/// Witness route against the direct minimisation of `λ ↦ ‖T + λA‖`, plus the
/// single-orbit reduction where it applies.
pub fn check_operator_orthogonality(cfg: &RunConfig, count: usize) -> CheckReport {
    let mut rng = cfg.rng("operator-orthogonality");
    let search = cfg.search();
    let tol = cfg.tol;
    run_check(
        ORTH,
        ORTH_CHECK,
        "T ⊥_B A iff A(x₁,y₁) ∈ T(x₁,y₁)⁺ and A(x₂,y₂) ∈ T(x₂,y₂)⁻ for some (x₁,y₁), (x₂,y₂) ∈ M_T",
        cfg,
        |t| {
            let s = linf2();
            let mut holds = 0;
            let mut reductions = (0, 0);
            for _ in 0..count {
                let op = if rng.random_bool(0.5) {
                    instances::random_operator(&mut rng, s.clone(), s.clone(), s.clone())
                } else {
                    instances::random_dyadic_operator(&mut rng, s.clone(), s.clone(), s.clone())
                };
                let m = norm_attainment_set(&op, &search)?;
                let a = perturbation(&mut rng, &op, &m.members(), &tol)?;
                let w = witness_search(&op, &a, &m, &tol)?;
                let d = operators_orthogonal_direct(&op, &a, &search)?;
                holds += usize::from(d.decision.is_holds());
                let wv = w.decision.verdict;
                let dv = d.decision.verdict;
                t.compare(wv, dv, || {
                    json!({ "T": op.nested_coeffs(), "A": a.nested_coeffs(), "witness": wv, "direct": dv, "min_norm": d.min_norm, "t_norm": d.t_norm })
                });
                if m.is_single_orbit() && m.exact {
                    let r = single_orbit_reduction(&op, &a, &search)?.verdict;
                    if r.is_conclusive() && dv.is_conclusive() {
                        reductions.0 += 1;
                        if r != dv {
                            reductions.1 += 1;
                        }
                    }
                    t.compare(r, dv, || json!({ "T": op.nested_coeffs(), "A": a.nested_coeffs(), "reduction": r, "direct": dv }));
                }
            }
            t.note = Some(format!(
                "{holds} orthogonal pairs; single-orbit reduction compared on {} pairs, {} mismatches",
                reductions.0, reductions.1
            ));
            Ok(())
        },
    )
}

const ORTH_CHECK: &str = "operator-orthogonality";

pub fn check_self_orthogonality(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("self-orthogonality");
    let search = cfg.search();
    run_check(ORTH, "self-orthogonality", "a non-zero T is never orthogonal to itself", cfg, |t| {
        for _ in 0..30 {
            let (xs, ys, zs) = random_spaces(&mut rng, &[Family::LInf, Family::L1], 2..=2);
            let op = instances::random_dyadic_operator(&mut rng, xs, ys, zs);
            let d = operators_orthogonal_direct(&op, &op, &search)?;
            t.record(d.decision.is_fails(), || json!({ "T": op.nested_coeffs() }));
        }
        Ok(())
    })
}

pub fn check_operator_homogeneity(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("operator-homogeneity");
    let search = cfg.search();
    let tol = cfg.tol;
    run_check(ORTH, "operator-homogeneity", "verdicts are invariant under T ↦ αT, A ↦ βA with α, β > 0", cfg, |t| {
        let s = linf2();
        for _ in 0..30 {
            let op = instances::random_dyadic_operator(&mut rng, s.clone(), s.clone(), s.clone());
            let m = norm_attainment_set(&op, &search)?;
            let a = perturbation(&mut rng, &op, &m.members(), &tol)?;
            let al: f64 = rng.random_range(0.1..10.0);
            let be: f64 = rng.random_range(0.1..10.0);
            let (op2, a2) = (op.scaled(al), a.scaled(be));
            let m2 = norm_attainment_set(&op2, &search)?;
            let v1 = (witness_search(&op, &a, &m, &tol)?.decision.verdict, operators_orthogonal_direct(&op, &a, &search)?.decision.verdict);
            let v2 = (
                witness_search(&op2, &a2, &m2, &tol)?.decision.verdict,
                operators_orthogonal_direct(&op2, &a2, &search)?.decision.verdict,
            );
            if !(v1.0.is_conclusive() && v1.1.is_conclusive()) {
                t.marginal();
                continue;
            }
            t.record(v1 == v2 && m.orbits.len() == m2.orbits.len(), || json!({ "alpha": al, "beta": be, "T": op.nested_coeffs() }));
        }
        Ok(())
    })
}

pub fn operator_orth(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![
        check_operator_orthogonality(cfg, 200),
        check_self_orthogonality(cfg),
        check_operator_homogeneity(cfg),
    ]
}

// ---------------------------------------------------------------------------
// operator-smooth
// ---------------------------------------------------------------------------

const SMOOTH: &str = "operator-smooth";

pub fn check_right_additivity(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("right-additivity");
    let search = cfg.search();
    run_check(SMOOTH, "right-additivity", "at a smooth T, T ⊥_B A₁ and T ⊥_B A₂ imply T ⊥_B A₁ + A₂", cfg, |t| {
        let s = linf2();
        let mut ops = vec![example_operator()];
        while ops.len() < 6 {
            let op = instances::random_operator(&mut rng, s.clone(), s.clone(), s.clone());
            if operator_smoothness(&op, &search)?.is_holds() {
                ops.push(op);
            }
        }
        for (k, op) in ops.iter().enumerate() {
            let c = right_additivity_check(op, 50, derive_seed(cfg.seed, "right-additivity") + k as u64, &search)?;
            t.record(c.decision.is_holds(), || json!({ "T": op.nested_coeffs(), "note": c.decision.note }));
        }
        Ok(())
    })
}

pub fn check_smoothness_examples(cfg: &RunConfig) -> CheckReport {
    let search = cfg.search();
    run_check(
        SMOOTH,
        "operator-smoothness-examples",
        "T is smooth iff M_T = {(±x₀, ±y₀)} and T(x₀,y₀) is smooth in Z",
        cfg,
        |t| {
            let s = linf2();
            let l2 = Space::l2(2)?;
            let mut first = vec![vec![vec![0.0]; 2]; 2];
            first[0][0][0] = 1.0;
            let mut diag = vec![vec![vec![0.0; 2]; 2]; 2];
            diag[0][0][0] = 1.0;
            diag[1][1][1] = 1.0;
            // Single orbit ((1,0),(1,0)) with image (1,1), a corner of ℓ∞².
            let mut corner = vec![vec![vec![0.0; 2]; 2]; 2];
            corner[0][0] = vec![1.0, 1.0];
            corner[1][1] = vec![0.5, 0.0];
            let cases = [
                (example_operator(), Verdict::Holds),
                (BilinearOperator::new(l2.clone(), l2, Space::scalar(), first)?, Verdict::Holds),
                (BilinearOperator::new(s.clone(), s.clone(), s.clone(), diag)?, Verdict::Fails),
                (BilinearOperator::new(Space::l1(2)?, Space::l1(2)?, s, corner)?, Verdict::Fails),
            ];
            for (op, want) in cases {
                let d = operator_smoothness(&op, &search)?;
                t.record(d.verdict == want, || json!({ "T": op.nested_coeffs(), "got": d.verdict, "want": want }));
            }
            Ok(())
        },
    )
}

pub fn check_linear_attains_at_smooth(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("linear-attains-at-smooth");
    let search = cfg.search();
    let tol = cfg.tol;
    run_check(SMOOTH, "linear-attains-at-smooth", "a non-zero linear operator can attain its norm at a smooth point", cfg, |t| {
        for k in 0..100 {
            let fam = Family::ALL[k % Family::ALL.len()];
            let xs = instances::random_space(&mut rng, fam, 2..=3);
            let zs = instances::random_space(&mut rng, Family::LP[k % 4], 2..=3);
            let x0 = xs.random_unit(&mut rng);
            if !xs.is_smooth_point(&x0, &tol)?.is_holds() {
                t.marginal();
                continue;
            }
            let z0 = zs.random_unit(&mut rng);
            let a = linear_attains_at_smooth(&xs, &zs, &x0, &z0, &tol)?;
            let n = linear_norm(&a, &search).value;
            let at = zs.norm(&a.apply(&x0)?)?;
            t.record((n - 1.0).abs() <= 1e-9 && (at - 1.0).abs() <= 1e-9, || json!({ "X": xs.label(), "norm": n, "at_anchor": at }));
        }
        Ok(())
    })
}

pub fn operator_smooth(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![check_smoothness_examples(cfg), check_right_additivity(cfg), check_linear_attains_at_smooth(cfg)]
}

// ---------------------------------------------------------------------------
// sip-theorem
// ---------------------------------------------------------------------------

const SIPT: &str = "sip-theorem";

/// The attainment identity with the unique semi-inner-products, on `count`
/// random tensors over ℓ_p spaces.
pub fn check_sip_identity_smooth(cfg: &RunConfig, p: f64, count: usize) -> CheckReport {
    let name = if p == 2.0 { "sip-identity-l2" } else { "sip-identity-l4" };
    let mut rng = cfg.rng(name);
    let search = cfg.search();
    run_check(
        SIPT,
        name,
        "(x₀,y₀) ∈ M_T iff [T(x₀,y) + T(x,y₀), T(x₀,y₀)] = ‖T‖² ([x,x₀] + [y,y₀]) for all x, y",
        cfg,
        |t| {
            let mut worst: f64 = 0.0;
            let mut rejected = 0;
            for k in 0..count {
                let dim = |rng: &mut ChaCha8Rng| rng.random_range(2..=3);
                let xs = Space::lp(p, dim(&mut rng))?;
                let ys = Space::lp(p, dim(&mut rng))?;
                let zs = Space::lp(p, dim(&mut rng))?;
                let op = instances::random_operator(&mut rng, xs, ys, zs);
                let c = verify_sip_theorem_smooth(&op, 500, derive_seed(cfg.seed, name) + k as u64, &search)?;
                worst = worst.max(c.max_residual);
                rejected += c.converse_rejected;
                t.record(c.decision.is_holds(), || json!({ "T": op.nested_coeffs(), "residual": c.max_residual, "note": c.decision.note }));
            }
            t.residuals = json!({ "max_residual": worst, "converse_rejected": rejected });
            Ok(())
        },
    )
}

pub fn check_sip_identity_family(cfg: &RunConfig) -> CheckReport {
    let mut rng = cfg.rng("sip-identity-family");
    let search = cfg.search();
    run_check(
        SIPT,
        "sip-identity-family",
        "some semi-inner-products satisfy the attainment identity at each maximiser",
        cfg,
        |t| {
            let s = linf2();
            let mut ops = vec![example_operator()];
            for _ in 0..19 {
                ops.push(instances::random_operator(&mut rng, s.clone(), s.clone(), s.clone()));
            }
            let mut certified = 0;
            for op in &ops {
                let d = verify_sip_theorem_family(op, &search)?;
                // Existence can only be confirmed, never refuted, by a finite search.
                if d.is_holds() {
                    certified += 1;
                    t.record(true, || Value::Null);
                } else {
                    t.marginal();
                }
            }
            t.note = Some(format!("{certified} of {} operators certified by the finite selector family", ops.len()));
            Ok(())
        },
    )
}

pub fn sip_theorem(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![
        check_sip_axioms(cfg, SIPT),
        check_sip_identity_smooth(cfg, 2.0, 20),
        check_sip_identity_smooth(cfg, 4.0, 20),
        check_sip_identity_family(cfg),
    ]
}

// ---------------------------------------------------------------------------
// worked example
// ---------------------------------------------------------------------------

/// One report per claim about the worked example operator.
pub fn example_suite(cfg: &RunConfig) -> Vec<CheckReport> {
    let started = Instant::now();
    let suite = "paper-example";
    match worked_example(&cfg.search()) {
        Err(e) => vec![error_report(suite, "worked-example", "", cfg, started, e)],
        Ok(r) => r
            .checks
            .iter()
            .map(|c| {
                let mut t = Tally::new();
                t.record(c.passed, || json!({ "detail": c.detail }));
                if c.name == "norm" {
                    t.residuals = json!({ "value": r.value });
                }
                if c.name == "attainment-set" {
                    t.residuals = json!({ "orbits": r.orbits });
                }
                t.note = Some(c.detail.clone());
                t.finish(suite, c.name, c.statement, cfg, started)
            })
            .collect(),
    }
}

/// Run a named suite.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<SuiteReport>> {
    let one = |n: &str, checks: Vec<CheckReport>| SuiteReport { suite: n.into(), checks };
    Ok(match name {
        "definitions" => vec![one(name, definitions(cfg))],
        "product-props" => vec![one(name, product_props(cfg))],
        "smooth-product" => vec![one(name, smooth_product(cfg))],
        "bilinear-core" => vec![one(name, bilinear_core(cfg))],
        "operator-orth" => vec![one(name, operator_orth(cfg))],
        "operator-smooth" => vec![one(name, operator_smooth(cfg))],
        "sip-theorem" => vec![one(name, sip_theorem(cfg))],
        "paper-example" => vec![one(name, example_suite(cfg))],
        "all" => {
            let mut out = Vec::new();
            for n in &SUITES[..SUITES.len() - 1] {
                out.extend(run_suite(n, cfg)?);
            }
            out
        }
        _ => return Err(Error::UnknownSuite(name.into())),
    })
}

/// Fold a report list into one decision.
pub fn overall(reports: &[SuiteReport], strict: bool) -> Decision {
    let fails = reports.iter().flat_map(|r| &r.checks).filter(|c| !c.passed(strict)).count();
    if fails == 0 {
        Decision::holds()
    } else {
        Decision::fails().with_note(format!("{fails} check(s) failed"))
    }
}
