//! Semi-inner-products compatible with a norm.
//!
//! Given a rule that picks one supporting functional `f_u ∈ J(u)` for every
//! unit vector `u`, the map `[y, x] = ‖x‖ · f_{x/‖x‖}(y)` (and `[y, 0] = 0`)
//! is linear in `y`, satisfies `[x, x] = ‖x‖²` and Cauchy-Schwarz, and is
//! homogeneous in `x` as long as the rule is odd. On a smooth space every
//! rule gives the same map.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decision::Decision;
use crate::error::Result;
use crate::instances;
use crate::spaces::{Functional, Space, SupportSet};
use crate::tolerance::Tolerances;
use crate::vecops;

/// Slack used by [`verify_sip_axioms`].
pub const AXIOM_TOL: f64 = 1e-9;

/// Deterministic choice of a supporting functional.
///
/// Selection is made on a sign-canonical representative of `x/‖x‖` (first
/// non-zero coordinate positive) and negated back, which makes every rule
/// exactly odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SipSelector {
    /// Mean of the extreme supporting functionals.
    #[default]
    Barycenter,
    /// The `k`-th extreme supporting functional (modulo the number of
    /// extremes), in generation order.
    Extreme(usize),
    /// Lexicographically smallest extreme supporting functional.
    LexMin,
}

impl SipSelector {
    fn pick(&self, set: &SupportSet) -> Functional {
        match self {
            SipSelector::Barycenter => set.barycenter(),
            SipSelector::Extreme(k) => set.extremes[k % set.len()].clone(),
            SipSelector::LexMin => set
                .extremes
                .iter()
                .min_by(|a, b| vecops::lex_cmp(a, b))
                .cloned()
                .expect("support sets are non-empty"),
        }
    }

    /// `f_{x/‖x‖}` for non-zero `x`.
    pub fn functional(&self, space: &Space, x: &[f64], tol: &Tolerances) -> Result<Functional> {
        space.check_dim(x)?;
        let n = space.norm_of(x);
        if n <= tol.eps_zero {
            return Err(crate::Error::ZeroVector);
        }
        let s = vecops::canonical_sign(x);
        let rep = vecops::scale(x, s / n);
        let set = space.support_functionals(&rep, tol)?;
        let f = self.pick(&set);
        Ok(if s < 0.0 { Functional(vecops::neg(&f)) } else { f })
    }

    /// Every selector that can be distinguished at `x`: the barycenter and
    /// each extreme point of `J(x)`.
    pub fn family_at(space: &Space, x: &[f64], tol: &Tolerances) -> Result<Vec<SipSelector>> {
        let set = space.support_functionals(x, tol)?;
        let mut out = vec![SipSelector::Barycenter];
        if set.len() > 1 {
            out.extend((0..set.len()).map(SipSelector::Extreme));
        }
        Ok(out)
    }
}

/// `[y, x]`: linear in `y`.
pub fn sip_value(space: &Space, selector: SipSelector, y: &[f64], x: &[f64], tol: &Tolerances) -> Result<f64> {
    space.check_dim(y)?;
    space.check_dim(x)?;
    let nx = space.norm_of(x);
    if nx <= tol.eps_zero {
        return Ok(0.0);
    }
    let f = selector.functional(space, x, tol)?;
    Ok(nx * f.apply(y))
}

/// Check the semi-inner-product axioms on `samples` seeded random triples:
/// linearity in the first slot, positivity, Cauchy-Schwarz, homogeneity in
/// the second slot, and compatibility `[x, x] = ‖x‖²`.
pub fn verify_sip_axioms(space: &Space, selector: SipSelector, samples: usize, seed: u64, tol: &Tolerances) -> Result<Decision> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sip = |y: &[f64], x: &[f64]| sip_value(space, selector, y, x, tol);
    for k in 0..samples {
        let x = scaled(space, &mut rng);
        let y = scaled(space, &mut rng);
        let z = scaled(space, &mut rng);
        let a: f64 = rng.random_range(-3.0..3.0);
        let b: f64 = rng.random_range(-3.0..3.0);
        let (nx, ny, nz) = (space.norm_of(&x), space.norm_of(&y), space.norm_of(&z));

        let combo: Vec<f64> = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
        let lhs = sip(&combo, &z)?;
        let rhs = a * sip(&x, &z)? + b * sip(&y, &z)?;
        if (lhs - rhs).abs() > AXIOM_TOL * (a.abs() * nx + b.abs() * ny) * nz {
            return Ok(counterexample(k, "first-slot linearity", lhs, rhs));
        }

        let xx = sip(&x, &x)?;
        if xx <= 0.0 {
            return Ok(counterexample(k, "positivity", xx, 0.0));
        }
        if (xx - nx * nx).abs() > AXIOM_TOL * nx * nx {
            return Ok(counterexample(k, "compatibility", xx, nx * nx));
        }

        let xy = sip(&x, &y)?;
        let yy = sip(&y, &y)?;
        if xy * xy > xx * yy + AXIOM_TOL * nx * nx * ny * ny {
            return Ok(counterexample(k, "Cauchy-Schwarz", xy * xy, xx * yy));
        }

        let ay = vecops::scale(&y, a);
        let lhs = sip(&x, &ay)?;
        if (lhs - a * xy).abs() > AXIOM_TOL * a.abs() * nx * ny {
            return Ok(counterexample(k, "second-slot homogeneity", lhs, a * xy));
        }
    }
    Ok(Decision::holds().with_note(format!("{samples} samples")))
}

fn scaled(space: &Space, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let u = instances::structured_unit(space, rng);
    let s: f64 = rng.random_range(0.1..5.0);
    vecops::scale(&u, s)
}

fn counterexample(sample: usize, axiom: &str, lhs: f64, rhs: f64) -> Decision {
    Decision::fails().with_note(format!("{axiom} violated at sample {sample}: {lhs:.17e} vs {rhs:.17e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn value_examples() {
        let l2 = Space::l2(2).unwrap();
        let v = sip_value(&l2, SipSelector::Barycenter, &[1.0, 0.0], &[3.0, 4.0], &tol()).unwrap();
        assert!((v - 3.0).abs() < 1e-15);

        let linf = Space::linf(2).unwrap();
        let v = sip_value(&linf, SipSelector::Barycenter, &[2.0, 0.0], &[1.0, 1.0], &tol()).unwrap();
        assert_eq!(v, 1.0);

        for space in [l2, linf, Space::l1(2).unwrap()] {
            let x = [0.3, -1.7];
            let n = space.norm(&x).unwrap();
            let v = sip_value(&space, SipSelector::Barycenter, &x, &x, &tol()).unwrap();
            assert!((v - n * n).abs() <= 1e-12 * n * n);
        }
    }

    #[test]
    fn zero_second_argument() {
        let l2 = Space::l2(3).unwrap();
        assert_eq!(sip_value(&l2, SipSelector::Barycenter, &[1.0, 2.0, 3.0], &[0.0; 3], &tol()).unwrap(), 0.0);
    }

    #[test]
    fn selectors_are_exactly_odd() {
        let l1 = Space::l1(3).unwrap();
        let x = [0.0, 0.25, -0.75];
        let y = [0.4, -1.1, 2.3];
        let mx: Vec<f64> = x.iter().map(|v| -v).collect();
        for sel in [SipSelector::Barycenter, SipSelector::Extreme(0), SipSelector::Extreme(1), SipSelector::LexMin] {
            let a = sip_value(&l1, sel, &y, &x, &tol()).unwrap();
            let b = sip_value(&l1, sel, &y, &mx, &tol()).unwrap();
            assert_eq!(a, -b);
        }
    }

    #[test]
    fn axioms_hold_for_standard_norms() {
        for space in [Space::l2(3).unwrap(), Space::linf(3).unwrap(), Space::l1(3).unwrap()] {
            let d = verify_sip_axioms(&space, SipSelector::Barycenter, 1000, 3, &tol()).unwrap();
            assert!(d.is_holds(), "{space:?}: {d:?}");
        }
    }

    #[test]
    fn family_lists_extremes_at_corners() {
        let linf = Space::linf(2).unwrap();
        assert_eq!(SipSelector::family_at(&linf, &[1.0, 1.0], &tol()).unwrap().len(), 3);
        assert_eq!(SipSelector::family_at(&linf, &[1.0, 0.5], &tol()).unwrap(), vec![SipSelector::Barycenter]);
    }
}
