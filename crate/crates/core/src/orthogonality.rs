//! Birkhoff-James orthogonality and the positive and negative parts of a
//! vector.
//!
//! For `x ≠ 0` the function `t ↦ ‖x + t y‖` is convex, so the quantified
//! definitions reduce to the signs of its one-sided derivatives at `t = 0`:
//! `y ∈ x⁺` iff `d₊ ≥ 0`, `y ∈ x⁻` iff `d₋ ≤ 0`, and `x ⊥_B y` iff both.
//! The derivatives are `d₊ = max f(y)` and `d₋ = min f(y)` over `f ∈ J(x)`.
//!
//! The `*_oracle` functions decide the same questions straight from the
//! definition by golden-section minimisation of `t ↦ ‖x + t y‖` and share no
//! code with the derivative route beyond the norm itself.

use serde::Serialize;

use crate::decision::{Decision, Verdict};
use crate::error::{Error, Result};
use crate::golden;
use crate::spaces::Space;
use crate::tolerance::Tolerances;

/// Bracket width at which the oracles stop.
pub const ORACLE_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneSidedDerivatives {
    /// Right derivative of `t ↦ ‖x + t y‖` at zero.
    pub d_plus: f64,
    /// Left derivative.
    pub d_minus: f64,
    /// `‖y‖`, the scale against which the derivatives are judged.
    pub direction_norm: f64,
}

impl OneSidedDerivatives {
    /// `(d₊, d₋) / ‖y‖`, or zeros when `y = 0`.
    pub fn normalized(&self) -> (f64, f64) {
        if self.direction_norm == 0.0 {
            (0.0, 0.0)
        } else {
            (self.d_plus / self.direction_norm, self.d_minus / self.direction_norm)
        }
    }

    /// Both normalised derivatives are farther than `margin` from zero.
    pub fn is_decisive(&self, margin: f64) -> bool {
        let (p, m) = self.normalized();
        p.abs() > margin && m.abs() > margin
    }

    pub fn positive_verdict(&self, tol: &Tolerances) -> Verdict {
        let (p, _) = self.normalized();
        if p >= -tol.eps_eq {
            Verdict::Holds
        } else if p >= -tol.eps_band {
            Verdict::Inconclusive
        } else {
            Verdict::Fails
        }
    }

    pub fn negative_verdict(&self, tol: &Tolerances) -> Verdict {
        let (_, m) = self.normalized();
        if m <= tol.eps_eq {
            Verdict::Holds
        } else if m <= tol.eps_band {
            Verdict::Inconclusive
        } else {
            Verdict::Fails
        }
    }

    pub fn orthogonal_verdict(&self, tol: &Tolerances) -> Verdict {
        self.positive_verdict(tol).and(self.negative_verdict(tol))
    }
}

pub fn one_sided_derivatives(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<OneSidedDerivatives> {
    space.check_dim(y)?;
    let support = space.support_functionals(x, tol)?;
    let (d_plus, d_minus) = support.range_on(y);
    Ok(OneSidedDerivatives {
        d_plus,
        d_minus,
        direction_norm: space.norm_of(y),
    })
}

/// `y ∈ x⁺`: `‖x + λy‖ ≥ ‖x‖` for all `λ ≥ 0`.
pub fn in_positive_part(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<Decision> {
    let d = one_sided_derivatives(space, x, y, tol)?;
    Ok(d.positive_verdict(tol).into())
}

/// `y ∈ x⁻`: `‖x + λy‖ ≥ ‖x‖` for all `λ ≤ 0`.
pub fn in_negative_part(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<Decision> {
    let d = one_sided_derivatives(space, x, y, tol)?;
    Ok(d.negative_verdict(tol).into())
}

/// `x ⊥_B y`: `‖x + λy‖ ≥ ‖x‖` for every real `λ`; equivalently `y ∈ x⁺ ∩ x⁻`.
pub fn is_bj_orthogonal(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<Decision> {
    let d = one_sided_derivatives(space, x, y, tol)?;
    Ok(d.orthogonal_verdict(tol).into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Range {
    Both,
    NonNegative,
    NonPositive,
}

fn oracle(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances, range: Range) -> Result<Decision> {
    space.check_dim(x)?;
    space.check_dim(y)?;
    let nx = space.norm_of(x);
    if nx <= tol.eps_zero {
        return Err(Error::ZeroVector);
    }
    let ny = space.norm_of(y);
    if ny == 0.0 {
        return Ok(Decision::holds());
    }
    // Outside [-R, R] the norm is at least |λ|‖y‖ - ‖x‖ ≥ 3‖x‖.
    let r = 4.0 * nx / ny;
    let (lo, hi) = match range {
        Range::Both => (-r, r),
        Range::NonNegative => (0.0, r),
        Range::NonPositive => (-r, 0.0),
    };
    let mut buf = vec![0.0; x.len()];
    let m = golden::minimize(
        |t| {
            for ((b, xi), yi) in buf.iter_mut().zip(x).zip(y) {
                *b = xi + t * yi;
            }
            space.norm_of(&buf)
        },
        lo,
        hi,
        ORACLE_WIDTH,
    );
    let dip = nx - m.value;
    let d = Decision::from_bool(dip <= tol.eps_oracle * nx);
    Ok(if d.is_fails() {
        d.with_note(format!("norm {:.3e} below ‖x‖ at λ = {:.6e}", dip, m.arg))
    } else {
        d
    })
}

/// Direct-definition oracle for [`is_bj_orthogonal`].
pub fn bj_oracle(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<Decision> {
    oracle(space, x, y, tol, Range::Both)
}

/// Direct-definition oracle for [`in_positive_part`].
pub fn positive_part_oracle(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<Decision> {
    oracle(space, x, y, tol, Range::NonNegative)
}

/// Direct-definition oracle for [`in_negative_part`].
pub fn negative_part_oracle(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<Decision> {
    oracle(space, x, y, tol, Range::NonPositive)
}
