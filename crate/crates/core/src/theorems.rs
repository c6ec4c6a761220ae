//! Decision procedures for orthogonality, smoothness and norm attainment of
//! bilinear operators, each with an independent check.
//!
//! * [`operators_orthogonal_witness`] decides `T ⊥_B A` from `M_T`: it holds
//!   iff some maximiser `(x₁, y₁)` has `A(x₁,y₁) ∈ T(x₁,y₁)⁺` and some
//!   `(x₂, y₂)` has `A(x₂,y₂) ∈ T(x₂,y₂)⁻`.
//!   [`operators_orthogonal_direct`] minimises `λ ↦ ‖T + λA‖` instead.
//! * When `M_T` is a single sign orbit `{(±x₀, ±y₀)}` the question collapses to
//!   `T(x₀,y₀) ⊥_B A(x₀,y₀)` in `Z` ([`single_orbit_reduction`]), and `T` is a
//!   smooth point of the operator space iff additionally `T(x₀,y₀)` is smooth
//!   ([`operator_smoothness`]).
//! * `(x₀, y₀) ∈ M_T` iff, for suitable semi-inner-products,
//!   `[T(x₀,y), z₀]₁ + [T(x,y₀), z₀]₂ = ‖T‖² ([x, x₀] + [y, y₀])` for all
//!   `x, y`, where `z₀ = T(x₀,y₀)` ([`sip_identity_residual`]).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bilinear::{bilinear_norm, norm_attainment_set, BilinearOperator, LinearOperator, NormAttainmentSet, SearchConfig};
use crate::decision::{Decision, Verdict};
use crate::error::{Error, Result};
use crate::golden;
use crate::instances;
use crate::orthogonality::{in_negative_part, in_positive_part, is_bj_orthogonal};
use crate::sip::{sip_value, SipSelector};
use crate::spaces::{Space, Vector};
use crate::tolerance::Tolerances;
use crate::vecops;

/// Bracket width for the operator-level golden-section oracle.
pub const OPERATOR_ORACLE_WIDTH: f64 = 1e-8;

/// Residual bound for the semi-inner-product identity at computed maximisers.
pub const SIP_IDENTITY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalityVerdict {
    pub decision: Decision,
    pub plus_witness: Option<(Vector, Vector)>,
    pub minus_witness: Option<(Vector, Vector)>,
}

fn check_same_spaces(t: &BilinearOperator, a: &BilinearOperator) -> Result<()> {
    if t.x_space() != a.x_space() || t.y_space() != a.y_space() || t.z_space() != a.z_space() {
        return Err(Error::ShapeMismatch {
            expected: t.shape(),
            found: a.shape(),
        });
    }
    Ok(())
}

/// Search the signed members of `M_T` for positive- and negative-part
/// witnesses.
pub fn operators_orthogonal_witness(t: &BilinearOperator, a: &BilinearOperator, cfg: &SearchConfig) -> Result<OrthogonalityVerdict> {
    check_same_spaces(t, a)?;
    let m = norm_attainment_set(t, cfg)?;
    witness_search(t, a, &m, &cfg.tol)
}

/// [`operators_orthogonal_witness`] with a precomputed attainment set.
pub fn witness_search(t: &BilinearOperator, a: &BilinearOperator, m: &NormAttainmentSet, tol: &Tolerances) -> Result<OrthogonalityVerdict> {
    let z = t.z_space();
    let mut plus = None;
    let mut minus = None;
    let (mut plus_marginal, mut minus_marginal) = (false, false);
    for (x, y) in m.members() {
        let tz = t.eval(&x, &y);
        let az = a.eval(&x, &y);
        if plus.is_none() {
            match in_positive_part(z, &tz, &az, tol)?.verdict {
                Verdict::Holds => plus = Some((x.clone(), y.clone())),
                Verdict::Inconclusive => plus_marginal = true,
                Verdict::Fails => {}
            }
        }
        if minus.is_none() {
            match in_negative_part(z, &tz, &az, tol)?.verdict {
                Verdict::Holds => minus = Some((x.clone(), y.clone())),
                Verdict::Inconclusive => minus_marginal = true,
                Verdict::Fails => {}
            }
        }
        if plus.is_some() && minus.is_some() {
            break;
        }
    }
    let part = |found: bool, marginal: bool| {
        if found {
            Verdict::Holds
        } else if marginal || !m.exact {
            Verdict::Inconclusive
        } else {
            Verdict::Fails
        }
    };
    let verdict = part(plus.is_some(), plus_marginal).and(part(minus.is_some(), minus_marginal));
    let mut decision = Decision::new(verdict);
    if verdict != Verdict::Holds {
        let missing = match (plus.is_some(), minus.is_some()) {
            (false, false) => "no positive-part and no negative-part witness",
            (false, true) => "no positive-part witness",
            _ => "no negative-part witness",
        };
        let suffix = if m.exact { "" } else { " (attainment set from ascent)" };
        decision = decision.with_note(format!("{missing} in {} orbit(s){suffix}", m.orbits.len()));
    }
    Ok(OrthogonalityVerdict {
        decision,
        plus_witness: plus,
        minus_witness: minus,
    })
}

/// Result of the direct oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectOrthogonality {
    pub decision: Decision,
    pub t_norm: f64,
    /// `min_λ ‖T + λA‖` found by the search.
    pub min_norm: f64,
    pub argmin: f64,
}

/// Minimise the convex function `λ ↦ ‖T + λA‖` over `[-R, R]`,
/// `R = 4‖T‖/‖A‖`. Holds when the minimum stays within `eps_eq · ‖T‖` of
/// `‖T‖`, fails when it dips by more than `eps_band · ‖T‖`.
pub fn operators_orthogonal_direct(t: &BilinearOperator, a: &BilinearOperator, cfg: &SearchConfig) -> Result<DirectOrthogonality> {
    check_same_spaces(t, a)?;
    let nt = bilinear_norm(t, cfg).value;
    if nt <= cfg.tol.eps_zero {
        return Err(Error::ZeroOperator);
    }
    let na = bilinear_norm(a, cfg).value;
    if na <= cfg.tol.eps_zero {
        return Ok(DirectOrthogonality {
            decision: Decision::holds().with_note("A is zero"),
            t_norm: nt,
            min_norm: nt,
            argmin: 0.0,
        });
    }
    let r = 4.0 * nt / na;
    let m = golden::minimize(
        |lam| bilinear_norm(&t.combine(1.0, a, lam).expect("same spaces"), cfg).value,
        -r,
        r,
        OPERATOR_ORACLE_WIDTH,
    );
    let dip = nt - m.value;
    let decision = if dip <= cfg.tol.eps_eq * nt {
        Decision::holds()
    } else if dip <= cfg.tol.eps_band * nt {
        Decision::inconclusive().with_note(format!("dip {dip:.3e} inside the marginal band"))
    } else {
        Decision::fails().with_note(format!("‖T + λA‖ = {:.12} < ‖T‖ = {nt:.12} at λ = {:.6e}", m.value, m.arg))
    };
    Ok(DirectOrthogonality {
        decision,
        t_norm: nt,
        min_norm: m.value,
        argmin: m.arg,
    })
}

/// The single certified orbit `(x₀, y₀)` of `M_T`.
pub fn single_orbit(t: &BilinearOperator, cfg: &SearchConfig) -> Result<(Vector, Vector)> {
    let m = norm_attainment_set(t, cfg)?;
    if m.orbits.len() != 1 {
        return Err(Error::NotSingleOrbit { orbits: m.orbits.len() });
    }
    if !m.exact {
        return Err(Error::UncertifiedAttainment);
    }
    Ok(m.orbits.into_iter().next().expect("one orbit"))
}

/// `T ⊥_B A` decided as `T(x₀,y₀) ⊥_B A(x₀,y₀)` in `Z`, valid when `M_T` is
/// exactly `{(±x₀, ±y₀)}`.
pub fn single_orbit_reduction(t: &BilinearOperator, a: &BilinearOperator, cfg: &SearchConfig) -> Result<Decision> {
    check_same_spaces(t, a)?;
    let (x0, y0) = single_orbit(t, cfg)?;
    is_bj_orthogonal(t.z_space(), &t.eval(&x0, &y0), &a.eval(&x0, &y0), &cfg.tol)
}

/// Smoothness of `T` in the space of bilinear operators: `M_T` is one sign
/// orbit `(±x₀, ±y₀)` and `T(x₀,y₀)` is a smooth point of `Z`.
pub fn operator_smoothness(t: &BilinearOperator, cfg: &SearchConfig) -> Result<Decision> {
    let m = norm_attainment_set(t, cfg)?;
    operator_smoothness_from(t, &m, &cfg.tol)
}

pub fn operator_smoothness_from(t: &BilinearOperator, m: &NormAttainmentSet, tol: &Tolerances) -> Result<Decision> {
    if m.orbits.len() != 1 {
        return Ok(if m.exact {
            Decision::fails().with_note(format!("norm attained on {} sign orbits", m.orbits.len()))
        } else {
            Decision::inconclusive().with_note(format!("ascent found {} candidate orbits", m.orbits.len()))
        });
    }
    let (x0, y0) = &m.orbits[0];
    let z0 = t.eval(x0, y0);
    let d = t.z_space().is_smooth_point(&z0, tol)?;
    Ok(match (d.verdict, m.exact) {
        (Verdict::Holds, true) => Decision::holds(),
        (Verdict::Holds, false) => Decision::holds().with_note("single orbit found by multi-start ascent"),
        (Verdict::Fails, _) => Decision::fails().with_note("image of the maximiser is not a smooth point"),
        (Verdict::Inconclusive, _) => d,
    })
}

/// Selectors for the four semi-inner-products in the attainment identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SipSelectors {
    pub x: SipSelector,
    pub y: SipSelector,
    pub z1: SipSelector,
    pub z2: SipSelector,
}

/// `|[T(x₀,y), z₀]₁ + [T(x,y₀), z₀]₂ − ‖T‖² ([x,x₀] + [y,y₀])|`.
#[allow(clippy::too_many_arguments)]
pub fn sip_identity_residual(
    t: &BilinearOperator,
    t_norm: f64,
    anchor: (&[f64], &[f64]),
    probe: (&[f64], &[f64]),
    sel: &SipSelectors,
    tol: &Tolerances,
) -> Result<f64> {
    let (x0, y0) = anchor;
    let (x, y) = probe;
    let (xs, ys, zs) = (t.x_space(), t.y_space(), t.z_space());
    for (s, v) in [(xs, x0), (ys, y0)] {
        s.check_dim(v)?;
        let n = s.norm_of(v);
        if (n - 1.0).abs() > tol.eps_eq {
            return Err(Error::NotUnit { norm: n });
        }
    }
    xs.check_dim(x)?;
    ys.check_dim(y)?;
    let z0 = t.eval(x0, y0);
    let lhs = sip_value(zs, sel.z1, &t.eval(x0, y), &z0, tol)? + sip_value(zs, sel.z2, &t.eval(x, y0), &z0, tol)?;
    let rhs = t_norm * t_norm * (sip_value(xs, sel.x, x, x0, tol)? + sip_value(ys, sel.y, y, y0, tol)?);
    Ok((lhs - rhs).abs())
}

/// Both sides of the identity are linear in `x` and in `y` separately, so it
/// holds for all probes iff it holds on `(e_i, 0)` and `(0, f_j)`.
fn basis_residual(t: &BilinearOperator, t_norm: f64, x0: &[f64], y0: &[f64], sel: &SipSelectors, tol: &Tolerances) -> Result<f64> {
    let (dx, dy, _) = t.shape();
    let zx = vec![0.0; dx];
    let zy = vec![0.0; dy];
    let mut worst: f64 = 0.0;
    for i in 0..dx {
        let r = sip_identity_residual(t, t_norm, (x0, y0), (&Vector::basis(dx, i), &zy), sel, tol)?;
        worst = worst.max(r);
    }
    for j in 0..dy {
        let r = sip_identity_residual(t, t_norm, (x0, y0), (&zx, &Vector::basis(dy, j)), sel, tol)?;
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Search the finite selector family at `(x₀, y₀, z₀)` for a combination
/// satisfying the identity. Returns the first certifying combination and
/// its basis residual, or `None`.
pub fn find_sip_certificate(
    t: &BilinearOperator,
    t_norm: f64,
    x0: &[f64],
    y0: &[f64],
    tol: &Tolerances,
) -> Result<Option<(SipSelectors, f64)>> {
    let z0 = t.eval(x0, y0);
    if t.z_space().norm_of(&z0) <= tol.eps_zero {
        return Ok(None);
    }
    let fx = SipSelector::family_at(t.x_space(), x0, tol)?;
    let fy = SipSelector::family_at(t.y_space(), y0, tol)?;
    let fz = SipSelector::family_at(t.z_space(), &z0, tol)?;
    let scale = 1.0 + t_norm * t_norm;
    for &x in &fx {
        for &y in &fy {
            for &z1 in &fz {
                for &z2 in &fz {
                    let sel = SipSelectors { x, y, z1, z2 };
                    let r = basis_residual(t, t_norm, x0, y0, &sel, tol)?;
                    if r <= SIP_IDENTITY_TOL * scale {
                        return Ok(Some((sel, r)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Existential identity on arbitrary spaces: holds at every orbit when the
/// selector search certifies it, inconclusive otherwise. Never fails, since
/// the identity only asserts that some semi-inner-products work.
pub fn verify_sip_theorem_family(t: &BilinearOperator, cfg: &SearchConfig) -> Result<Decision> {
    let m = norm_attainment_set(t, cfg)?;
    for (x0, y0) in &m.orbits {
        if find_sip_certificate(t, m.value, x0, y0, &cfg.tol)?.is_none() {
            return Ok(Decision::inconclusive().with_note("no selector combination in the finite family certifies the identity"));
        }
    }
    Ok(Decision::holds().with_note(format!("{} orbit(s) certified", m.orbits.len())))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SipTheoremCheck {
    pub decision: Decision,
    pub t_norm: f64,
    pub orbits: usize,
    /// Largest residual seen at a computed maximiser.
    pub max_residual: f64,
    /// Random non-maximal pairs tested for the converse direction.
    pub converse_pairs: usize,
    /// How many of those the identity correctly rejected.
    pub converse_rejected: usize,
}

/// The identity with the unique semi-inner-products of smooth spaces,
/// checked on `samples` random unit probes at every computed maximiser, and
/// conversely on random unit pairs off `M_T`.
pub fn verify_sip_theorem_smooth(t: &BilinearOperator, samples: usize, seed: u64, cfg: &SearchConfig) -> Result<SipTheoremCheck> {
    if !(t.x_space().is_smooth() && t.y_space().is_smooth() && t.z_space().is_smooth()) {
        return Err(Error::NotSmoothSpaces);
    }
    let tol = &cfg.tol;
    let m = norm_attainment_set(t, cfg)?;
    let sel = SipSelectors::default();
    let xs = t.x_space().sample_sphere(samples.max(1), seed);
    let ys = t.y_space().sample_sphere(samples.max(1), seed.wrapping_add(1));
    let max_over_probes = |x0: &[f64], y0: &[f64], limit: f64| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (x, y) in xs.iter().zip(&ys) {
            worst = worst.max(sip_identity_residual(t, m.value, (x0, y0), (x, y), &sel, tol)?);
            if worst > limit {
                break;
            }
        }
        Ok(worst)
    };

    let mut max_residual: f64 = 0.0;
    for (x0, y0) in &m.orbits {
        max_residual = max_residual.max(max_over_probes(x0, y0, f64::INFINITY)?);
    }

    let converse_pairs = 20;
    let cx = t.x_space().sample_sphere(converse_pairs, seed.wrapping_add(2));
    let cy = t.y_space().sample_sphere(converse_pairs, seed.wrapping_add(3));
    let mut converse_rejected = 0;
    let mut converse_bad = None;
    for (x0, y0) in cx.iter().zip(&cy) {
        let val = t.value_at(x0, y0);
        if val >= m.value * (1.0 - tol.eps_attain) {
            continue;
        }
        if max_over_probes(x0, y0, SIP_IDENTITY_TOL)? > SIP_IDENTITY_TOL {
            converse_rejected += 1;
        } else if converse_bad.is_none() {
            converse_bad = Some(val);
        }
    }
    let decision = if max_residual > SIP_IDENTITY_TOL {
        Decision::fails().with_note(format!("residual {max_residual:.3e} at a computed maximiser"))
    } else if let Some(val) = converse_bad {
        Decision::fails().with_note(format!("identity satisfied at a pair with ‖T(x,y)‖ = {val} < ‖T‖"))
    } else {
        Decision::holds()
    };
    Ok(SipTheoremCheck {
        decision,
        t_norm: m.value,
        orbits: m.orbits.len(),
        max_residual,
        converse_pairs,
        converse_rejected,
    })
}

/// The rank-one operator `x ↦ f_{x₀}(x) z₀`, which has norm one and attains
/// it at the smooth point `x₀`. Linear operators, unlike bilinear ones, can
/// attain their norm at smooth points.
pub fn linear_attains_at_smooth(x_space: &Space, z_space: &Space, x0: &[f64], z0: &[f64], tol: &Tolerances) -> Result<LinearOperator> {
    x_space.check_dim(x0)?;
    z_space.check_dim(z0)?;
    for (s, v) in [(x_space, x0), (z_space, z0)] {
        let n = s.norm_of(v);
        if (n - 1.0).abs() > tol.eps_eq {
            return Err(Error::NotUnit { norm: n });
        }
    }
    if !x_space.is_smooth_point(x0, tol)?.is_holds() {
        return Err(Error::NotSmoothAnchor);
    }
    let f = x_space.support_functionals(x0, tol)?.extremes.swap_remove(0);
    let matrix = z0.iter().map(|zl| vecops::scale(&f, *zl)).collect();
    LinearOperator::new(x_space.clone(), z_space.clone(), matrix)
}

/// Build `A − (f(A(x₀,y₀)) / f(z₀)) T` with `f` the supporting functional at
/// `z₀ = T(x₀,y₀)`, so that `f` annihilates the image at `(x₀, y₀)`.
pub fn project_orthogonal(t: &BilinearOperator, a: &BilinearOperator, x0: &[f64], y0: &[f64], tol: &Tolerances) -> Result<BilinearOperator> {
    let z0 = t.eval(x0, y0);
    let f = SipSelector::Barycenter.functional(t.z_space(), &z0, tol)?;
    let c = f.apply(&a.eval(x0, y0)) / f.apply(&z0);
    a.combine(1.0, t, -c)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdditivityCheck {
    pub decision: Decision,
    pub pairs: usize,
}

/// Spot check of right-additivity at a smooth `T`: for random `A₁, A₂` made
/// orthogonal to `T` by [`project_orthogonal`], `T ⊥_B A₁ + A₂` must hold
/// according to the direct oracle.
pub fn right_additivity_check(t: &BilinearOperator, pairs: usize, seed: u64, cfg: &SearchConfig) -> Result<AdditivityCheck> {
    let (x0, y0) = single_orbit(t, cfg)?;
    let smooth = t.z_space().is_smooth_point(&t.eval(&x0, &y0), &cfg.tol)?;
    if !smooth.is_holds() {
        return Ok(AdditivityCheck {
            decision: Decision::inconclusive().with_note("operator is not smooth; the check does not apply"),
            pairs: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (xs, ys, zs) = (t.x_space().clone(), t.y_space().clone(), t.z_space().clone());
    for k in 0..pairs {
        let a1 = instances::random_operator(&mut rng, xs.clone(), ys.clone(), zs.clone());
        let a2 = instances::random_operator(&mut rng, xs.clone(), ys.clone(), zs.clone());
        let a1 = project_orthogonal(t, &a1, &x0, &y0, &cfg.tol)?;
        let a2 = project_orthogonal(t, &a2, &x0, &y0, &cfg.tol)?;
        let sum = a1.combine(1.0, &a2, 1.0)?;
        let d = operators_orthogonal_direct(t, &sum, cfg)?.decision;
        if d.is_fails() {
            return Ok(AdditivityCheck {
                decision: Decision::fails().with_note(format!("pair {k}: {}", d.note.unwrap_or_default())),
                pairs: k + 1,
            });
        }
    }
    Ok(AdditivityCheck {
        decision: Decision::holds(),
        pairs,
    })
}

// ---------------------------------------------------------------------------
// Worked example
// ---------------------------------------------------------------------------

/// The operator on `ℓ∞² × ℓ∞² → ℓ∞²` with `T((1,1),(1,1)) = (1,0)` and `T`
/// zero on the other three pairs built from the basis `(1,1), (1,-1)`.
/// Its coefficient tensor is `((x₁+x₂)(y₁+y₂)/4, 0)`.
pub fn example_operator() -> BilinearOperator {
    let s = Space::linf(2).expect("dim 2");
    let basis = [Vector(vec![1.0, 1.0]), Vector(vec![1.0, -1.0])];
    let zero = Vector(vec![0.0, 0.0]);
    let values = vec![vec![Vector(vec![1.0, 0.0]), zero.clone()], vec![zero.clone(), zero]];
    BilinearOperator::from_basis_values(s.clone(), s.clone(), s, &basis, &basis, &values).expect("basis is invertible")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleReport {
    pub value: f64,
    pub orbits: Vec<(Vector, Vector)>,
    pub checks: Vec<ExampleCheck>,
}

impl ExampleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Recompute every claim about [`example_operator`].
pub fn worked_example(cfg: &SearchConfig) -> Result<ExampleReport> {
    let t = example_operator();
    let tol = &cfg.tol;
    let mut checks = Vec::new();

    let b = [[1.0, 1.0], [1.0, -1.0]];
    let mut defining = true;
    for (a, u) in b.iter().enumerate() {
        for (c, v) in b.iter().enumerate() {
            let want = if a == 0 && c == 0 { [1.0, 0.0] } else { [0.0, 0.0] };
            defining &= t.eval(u, v).0 == want;
        }
    }
    checks.push(ExampleCheck {
        name: "defining-values",
        statement: "T((1,1),(1,1)) = (1,0) and T vanishes on the other three basis pairs",
        passed: defining,
        detail: format!("coefficients {:?}", t.nested_coeffs()),
    });

    let m = norm_attainment_set(&t, cfg)?;
    checks.push(ExampleCheck {
        name: "norm",
        statement: "‖T‖ = 1 by enumeration of the 16 sign-vector pairs",
        passed: m.value == 1.0 && m.exact,
        detail: format!("value {:?}, exact {}", m.value, m.exact),
    });

    let one = Vector(vec![1.0, 1.0]);
    checks.push(ExampleCheck {
        name: "attainment-set",
        statement: "M_T = {(±(1,1), ±(1,1))}",
        passed: m.exact && m.orbits == vec![(one.clone(), one.clone())],
        detail: {
            let reps: Vec<_> = m.orbits.iter().map(|(x, y)| (&x.0, &y.0)).collect();
            format!("{} orbit(s): {reps:?}", m.orbits.len())
        },
    });

    let z0 = t.eval(&one, &one);
    let smooth = t.z_space().is_smooth_point(&z0, tol)?;
    checks.push(ExampleCheck {
        name: "image-smooth",
        statement: "T((1,1),(1,1)) = (1,0) is a smooth point of ℓ∞²",
        passed: z0.0 == [1.0, 0.0] && smooth.is_holds(),
        detail: format!("image {:?}, {}", z0.0, smooth.verdict),
    });

    let op = operator_smoothness_from(&t, &m, tol)?;
    checks.push(ExampleCheck {
        name: "operator-smooth",
        statement: "T is a smooth point of the space of bilinear operators",
        passed: op.is_holds(),
        detail: op.verdict.to_string(),
    });

    Ok(ExampleReport {
        value: m.value,
        orbits: m.orbits,
        checks,
    })
}
