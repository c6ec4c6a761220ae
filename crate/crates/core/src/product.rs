//! `X × Y` under the max norm `‖(x, y)‖ = max(‖x‖, ‖y‖)`.
//!
//! The generic machinery already handles [`Space::Product`]; this module adds
//! closed-form descriptions of the positive part, negative part,
//! orthogonality set and smooth points of the product in terms of the
//! factors, so the two routes can be checked against each other.
//!
//! With `‖x‖ > ‖y‖` only the dominant factor matters:
//! `(x, y)⁺ = x⁺ × Y`, `(x, y)⁻ = x⁻ × Y`, `(x, y)^⊥ = x^⊥ × Y`.
//! With `‖x‖ = ‖y‖`:
//! `(x, y)⁺ = (x⁺ × Y) ∪ (X × y⁺)`, `(x, y)⁻ = (x⁻ × Y) ∪ (X × y⁻)` and
//! `(x, y)^⊥ = (x⁺ × y⁻) ∪ (x⁻ × y⁺)`.
//! A unit `(x, y)` is smooth iff exactly one coordinate is on its sphere and
//! that coordinate is smooth in its factor.

use serde::Serialize;

use crate::decision::{Decision, Verdict};
use crate::error::{Error, Result};
use crate::orthogonality::{in_negative_part, in_positive_part};
use crate::spaces::{Space, Vector};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductVector {
    pub x: Vector,
    pub y: Vector,
}

impl ProductVector {
    pub fn new(x: impl Into<Vector>, y: impl Into<Vector>) -> Self {
        ProductVector { x: x.into(), y: y.into() }
    }

    /// Concatenated coordinates, as used by the product descriptor.
    pub fn concat(&self) -> Vector {
        let mut v = self.x.0.clone();
        v.extend_from_slice(&self.y);
        Vector(v)
    }

    pub fn split(v: &[f64], left_dim: usize) -> Self {
        let (a, b) = v.split_at(left_dim);
        ProductVector::new(a, b)
    }
}

pub fn product_descriptor(x: &Space, y: &Space) -> Space {
    Space::product(x.clone(), y.clone())
}

/// Which factor carries the norm of `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    Left,
    Right,
    Equal,
    /// `‖x‖` and `‖y‖` differ, but by less than the marginal band.
    NearTie,
}

pub fn dominance(xs: &Space, ys: &Space, anchor: &ProductVector, tol: &Tolerances) -> Result<Dominance> {
    xs.check_dim(&anchor.x)?;
    ys.check_dim(&anchor.y)?;
    let (nx, ny) = (xs.norm_of(&anchor.x), ys.norm_of(&anchor.y));
    let m = nx.max(ny);
    if m <= tol.eps_zero {
        return Err(Error::ZeroVector);
    }
    let gap = (nx - ny).abs() / m;
    Ok(if gap <= tol.eps_eq {
        Dominance::Equal
    } else if gap <= tol.eps_band {
        Dominance::NearTie
    } else if nx > ny {
        Dominance::Left
    } else {
        Dominance::Right
    })
}

fn near_tie() -> Decision {
    Decision::inconclusive().with_note("factor norms differ by less than the marginal band")
}

/// Membership of `dir` in `anchor⁺` by the closed-form case split.
pub fn closed_form_positive_part(xs: &Space, ys: &Space, anchor: &ProductVector, dir: &ProductVector, tol: &Tolerances) -> Result<Decision> {
    let pos_x = || in_positive_part(xs, &anchor.x, &dir.x, tol).map(|d| d.verdict);
    let pos_y = || in_positive_part(ys, &anchor.y, &dir.y, tol).map(|d| d.verdict);
    check_dir(xs, ys, dir)?;
    Ok(match dominance(xs, ys, anchor, tol)? {
        Dominance::Left => pos_x()?.into(),
        Dominance::Right => pos_y()?.into(),
        Dominance::Equal => pos_x()?.or(pos_y()?).into(),
        Dominance::NearTie => near_tie(),
    })
}

/// Membership of `dir` in `anchor⁻` by the closed-form case split.
pub fn closed_form_negative_part(xs: &Space, ys: &Space, anchor: &ProductVector, dir: &ProductVector, tol: &Tolerances) -> Result<Decision> {
    let neg_x = || in_negative_part(xs, &anchor.x, &dir.x, tol).map(|d| d.verdict);
    let neg_y = || in_negative_part(ys, &anchor.y, &dir.y, tol).map(|d| d.verdict);
    check_dir(xs, ys, dir)?;
    Ok(match dominance(xs, ys, anchor, tol)? {
        Dominance::Left => neg_x()?.into(),
        Dominance::Right => neg_y()?.into(),
        Dominance::Equal => neg_x()?.or(neg_y()?).into(),
        Dominance::NearTie => near_tie(),
    })
}

/// Membership of `dir` in `anchor^⊥` by the closed-form case split.
pub fn closed_form_orthogonality(xs: &Space, ys: &Space, anchor: &ProductVector, dir: &ProductVector, tol: &Tolerances) -> Result<Decision> {
    check_dir(xs, ys, dir)?;
    let case = dominance(xs, ys, anchor, tol)?;
    let parts = |s: &Space, a: &[f64], d: &[f64]| -> Result<(Verdict, Verdict)> {
        Ok((in_positive_part(s, a, d, tol)?.verdict, in_negative_part(s, a, d, tol)?.verdict))
    };
    Ok(match case {
        Dominance::Left => {
            let (p, n) = parts(xs, &anchor.x, &dir.x)?;
            p.and(n).into()
        }
        Dominance::Right => {
            let (p, n) = parts(ys, &anchor.y, &dir.y)?;
            p.and(n).into()
        }
        Dominance::Equal => {
            let (px, nx) = parts(xs, &anchor.x, &dir.x)?;
            let (py, ny) = parts(ys, &anchor.y, &dir.y)?;
            px.and(ny).or(nx.and(py)).into()
        }
        Dominance::NearTie => near_tie(),
    })
}

/// Smoothness of a unit vector of `X × Y` from the factors.
pub fn is_smooth_point_product(xs: &Space, ys: &Space, anchor: &ProductVector, tol: &Tolerances) -> Result<Decision> {
    let case = dominance(xs, ys, anchor, tol)?;
    let norm = xs.norm_of(&anchor.x).max(ys.norm_of(&anchor.y));
    if (norm - 1.0).abs() > tol.eps_eq {
        return Err(Error::NotUnit { norm });
    }
    Ok(match case {
        Dominance::Equal => Decision::fails().with_note("both coordinates on their unit spheres"),
        Dominance::NearTie => near_tie(),
        Dominance::Left => xs.is_smooth_point(&anchor.x, tol)?,
        Dominance::Right => ys.is_smooth_point(&anchor.y, tol)?,
    })
}

fn check_dir(xs: &Space, ys: &Space, dir: &ProductVector) -> Result<()> {
    xs.check_dim(&dir.x)?;
    ys.check_dim(&dir.y)
}
