//! Bilinear operators `T : X × Y → Z` stored as coefficient tensors.
//!
//! `c[i][j][l]` is the `l`-th coordinate of `T(e_i, f_j)` in the standard
//! bases, so `T(x, y)_l = Σ_{i,j} c[i][j][l] x_i y_j`.
//!
//! Norms are suprema of convex functions over unit balls. When a domain ball
//! is a polytope the supremum is attained at a vertex and is computed exactly
//! by enumeration. Otherwise it is found by multi-start ascent: each step
//! replaces one argument by the point of its unit ball that maximises the
//! linearisation `f_z ∘ T(·, y)` (with `f_z` a supporting functional at the
//! current image), which never decreases `‖T(x, y)‖`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sip::SipSelector;
use crate::spaces::{Space, Vector};
use crate::tolerance::Tolerances;
use crate::vecops;

/// Knobs for the ascent paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// An ascent run stops once no coordinate moves by more than this.
    pub step_tol: f64,
    pub tol: Tolerances,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            starts: 64,
            seed: 0,
            max_iter: 20_000,
            step_tol: 1e-14,
            tol: Tolerances::default(),
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig {
            seed,
            ..SearchConfig::default()
        }
    }
}

/// Orbit deduplication slack for ascent results, which are converged only to
/// roughly the square root of machine precision in the worst case.
const ASCENT_ORBIT_EPS: f64 = 1e-6;

/// Ascent steps are monotone in exact arithmetic; decreases below this
/// relative size are rounding and do not stop the iteration.
const ROUNDOFF: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Linear operators
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearOperator {
    pub domain: Space,
    pub codomain: Space,
    /// `matrix[l]` is the `l`-th row; `A(v)_l = Σ_j matrix[l][j] v_j`.
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearNorm {
    pub value: f64,
    /// Unit maximisers, one per `±` pair.
    pub maximizers: Vec<Vector>,
    pub exact: bool,
}

impl LinearOperator {
    pub fn new(domain: Space, codomain: Space, matrix: Vec<Vec<f64>>) -> Result<Self> {
        if matrix.len() != codomain.dim() {
            return Err(Error::DimensionMismatch {
                expected: codomain.dim(),
                found: matrix.len(),
            });
        }
        for row in &matrix {
            domain.check_dim(row)?;
        }
        Ok(LinearOperator { domain, codomain, matrix })
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vector> {
        self.domain.check_dim(v)?;
        Ok(self.apply_raw(v))
    }

    fn apply_raw(&self, v: &[f64]) -> Vector {
        self.matrix.iter().map(|row| vecops::dot(row, v)).collect()
    }

    /// `f ∘ A` as a functional on the domain.
    fn pullback(&self, f: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.domain.dim()];
        for (row, fl) in self.matrix.iter().zip(f) {
            for (gj, a) in g.iter_mut().zip(row) {
                *gj += a * fl;
            }
        }
        g
    }

    /// `sup ‖A v‖` over the unit sphere of the domain.
    pub fn norm(&self, cfg: &SearchConfig) -> LinearNorm {
        linear_norm(self, cfg)
    }
}

pub fn linear_norm(a: &LinearOperator, cfg: &SearchConfig) -> LinearNorm {
    let mut cands: Vec<(f64, Vector)> = Vec::new();
    let exact = a.domain.is_polyhedral();
    if exact {
        for v in a.domain.extreme_points().expect("polyhedral domain") {
            let val = a.codomain.norm_of(&a.apply_raw(&v));
            cands.push((val, v));
        }
    } else {
        let starts = a.domain.sample_sphere(cfg.starts.max(1), cfg.seed);
        for v0 in starts {
            cands.push(linear_ascent(a, v0, cfg));
        }
    }
    let eps = if exact { cfg.tol.eps_eq } else { ASCENT_ORBIT_EPS };
    let (value, maxs) = top_candidates(cands, cfg.tol.eps_attain, |v| v.0.clone());
    let mut maximizers: Vec<Vector> = Vec::new();
    for v in maxs {
        let v = canonical(&v);
        if !maximizers.iter().any(|m| vecops::max_abs_diff(m, &v) <= eps) {
            maximizers.push(v);
        }
    }
    LinearNorm { value, maximizers, exact }
}

fn linear_ascent(a: &LinearOperator, mut v: Vector, cfg: &SearchConfig) -> (f64, Vector) {
    let mut val = a.codomain.norm_of(&a.apply_raw(&v));
    for _ in 0..cfg.max_iter {
        let z = a.apply_raw(&v);
        let Ok(f) = SipSelector::Barycenter.functional(&a.codomain, &z, &cfg.tol) else {
            break;
        };
        let next = a.domain.support_point(&a.pullback(&f));
        let nval = a.codomain.norm_of(&a.apply_raw(&next));
        let step = vecops::max_abs_diff(&next, &v);
        if nval < val * (1.0 - ROUNDOFF) {
            break;
        }
        v = next;
        val = nval;
        if step <= cfg.step_tol {
            break;
        }
    }
    (val, v)
}

// ---------------------------------------------------------------------------
// Bilinear operators
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorJson", into = "OperatorJson")]
pub struct BilinearOperator {
    x: Space,
    y: Space,
    z: Space,
    /// Flattened `c[i][j][l]` at index `(i * dim Y + j) * dim Z + l`.
    coeffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BilinearNorm {
    pub value: f64,
    /// Unit pairs with `‖T(x, y)‖` within the attainment slack of `value`,
    /// best first.
    pub certificate: Vec<(Vector, Vector)>,
    pub exact: bool,
}

/// Sign-orbit representatives `(x, y) ~ (±x, ±y)` of the maximisers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormAttainmentSet {
    pub value: f64,
    pub orbits: Vec<(Vector, Vector)>,
    /// Produced by exhaustive vertex enumeration of both domain balls.
    pub exact: bool,
}

impl NormAttainmentSet {
    pub fn is_single_orbit(&self) -> bool {
        self.orbits.len() == 1
    }

    /// The four signed members of every orbit.
    pub fn members(&self) -> Vec<(Vector, Vector)> {
        let mut out = Vec::with_capacity(4 * self.orbits.len());
        for (x, y) in &self.orbits {
            let nx = Vector(vecops::neg(x));
            let ny = Vector(vecops::neg(y));
            out.push((x.clone(), y.clone()));
            out.push((nx.clone(), y.clone()));
            out.push((x.clone(), ny.clone()));
            out.push((nx, ny));
        }
        out
    }
}

impl BilinearOperator {
    /// From nested coefficients `c[i][j][l]`.
    pub fn new(x: Space, y: Space, z: Space, coeffs: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let shape = (x.dim(), y.dim(), z.dim());
        let found = (
            coeffs.len(),
            coeffs.first().map_or(0, Vec::len),
            coeffs.first().and_then(|r| r.first()).map_or(0, Vec::len),
        );
        let consistent = coeffs.iter().all(|r| r.len() == shape.1 && r.iter().all(|c| c.len() == shape.2));
        if found != shape || !consistent {
            return Err(Error::ShapeMismatch { expected: shape, found });
        }
        let flat = coeffs.into_iter().flatten().flatten().collect();
        BilinearOperator::from_flat(x, y, z, flat)
    }

    pub fn from_flat(x: Space, y: Space, z: Space, coeffs: Vec<f64>) -> Result<Self> {
        for s in [&x, &y] {
            if s.dim() < 2 {
                return Err(Error::DimensionTooSmall { dim: s.dim(), min: 2 });
            }
        }
        let n = x.dim() * y.dim() * z.dim();
        if coeffs.len() != n {
            return Err(Error::ShapeMismatch {
                expected: (x.dim(), y.dim(), z.dim()),
                found: (coeffs.len(), 1, 1),
            });
        }
        if !vecops::all_finite(&coeffs) {
            return Err(Error::NonFinite);
        }
        Ok(BilinearOperator { x, y, z, coeffs })
    }

    pub fn zero(x: Space, y: Space, z: Space) -> Result<Self> {
        let n = x.dim() * y.dim() * z.dim();
        BilinearOperator::from_flat(x, y, z, vec![0.0; n])
    }

    /// The operator with prescribed values `values[a][b] = T(bx[a], by[b])`
    /// on bases `bx` of `X` and `by` of `Y`.
    pub fn from_basis_values(x: Space, y: Space, z: Space, bx: &[Vector], by: &[Vector], values: &[Vec<Vector>]) -> Result<Self> {
        use nalgebra::DMatrix;
        let (dx, dy, dz) = (x.dim(), y.dim(), z.dim());
        if bx.len() != dx || by.len() != dy || values.len() != dx || values.iter().any(|r| r.len() != dy) {
            return Err(Error::ShapeMismatch {
                expected: (dx, dy, dz),
                found: (bx.len(), by.len(), values.first().map_or(0, |r| r.len())),
            });
        }
        // Columns of Bx are the basis vectors; x = Bx a  ⇒  a = Bx⁻¹ x.
        let bxm = DMatrix::from_fn(dx, dx, |r, c| bx[c][r]);
        let bym = DMatrix::from_fn(dy, dy, |r, c| by[c][r]);
        let ix = bxm.try_inverse().ok_or(Error::SingularBasis)?;
        let iy = bym.try_inverse().ok_or(Error::SingularBasis)?;
        // T(e_i, f_j) = Σ_{a,b} ix[a][i] iy[b][j] T(bx_a, by_b).
        let mut coeffs = vec![0.0; dx * dy * dz];
        for i in 0..dx {
            for j in 0..dy {
                for (a, row) in values.iter().enumerate() {
                    for (b, val) in row.iter().enumerate() {
                        z.check_dim(val)?;
                        let w = ix[(a, i)] * iy[(b, j)];
                        for l in 0..dz {
                            coeffs[(i * dy + j) * dz + l] += w * val[l];
                        }
                    }
                }
            }
        }
        BilinearOperator::from_flat(x, y, z, coeffs)
    }

    pub fn x_space(&self) -> &Space {
        &self.x
    }

    pub fn y_space(&self) -> &Space {
        &self.y
    }

    pub fn z_space(&self) -> &Space {
        &self.z
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.x.dim(), self.y.dim(), self.z.dim())
    }

    pub fn coeff(&self, i: usize, j: usize, l: usize) -> f64 {
        let (_, dy, dz) = self.shape();
        self.coeffs[(i * dy + j) * dz + l]
    }

    pub fn flat_coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn nested_coeffs(&self) -> Vec<Vec<Vec<f64>>> {
        let (dx, dy, dz) = self.shape();
        (0..dx)
            .map(|i| (0..dy).map(|j| (0..dz).map(|l| self.coeff(i, j, l)).collect()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    /// `α T + β A` on the same spaces.
    pub fn combine(&self, alpha: f64, other: &BilinearOperator, beta: f64) -> Result<BilinearOperator> {
        if self.shape() != other.shape() || self.x != other.x || self.y != other.y || self.z != other.z {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| alpha * a + beta * b).collect();
        Ok(BilinearOperator { coeffs, ..self.clone() })
    }

    pub fn scaled(&self, alpha: f64) -> BilinearOperator {
        BilinearOperator {
            coeffs: vecops::scale(&self.coeffs, alpha),
            ..self.clone()
        }
    }

    pub fn evaluate(&self, x: &[f64], y: &[f64]) -> Result<Vector> {
        self.x.check_dim(x)?;
        self.y.check_dim(y)?;
        Ok(self.eval(x, y))
    }

    pub(crate) fn eval(&self, x: &[f64], y: &[f64]) -> Vector {
        let (_, dy, dz) = self.shape();
        let mut out = vec![0.0; dz];
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0.0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let w = xi * yj;
                if w == 0.0 {
                    continue;
                }
                let base = (i * dy + j) * dz;
                for (l, o) in out.iter_mut().enumerate() {
                    *o += self.coeffs[base + l] * w;
                }
            }
        }
        Vector(out)
    }

    pub(crate) fn value_at(&self, x: &[f64], y: &[f64]) -> f64 {
        self.z.norm_of(&self.eval(x, y))
    }

    /// `T_{x0} = T(x0, ·) : Y → Z`.
    pub fn fix_first(&self, x0: &[f64]) -> Result<LinearOperator> {
        self.x.check_dim(x0)?;
        Ok(self.slice_first(x0))
    }

    fn slice_first(&self, x0: &[f64]) -> LinearOperator {
        let (_, dy, dz) = self.shape();
        let mut m = vec![vec![0.0; dy]; dz];
        for (i, xi) in x0.iter().enumerate() {
            for j in 0..dy {
                for (l, row) in m.iter_mut().enumerate() {
                    row[j] += self.coeff(i, j, l) * xi;
                }
            }
        }
        LinearOperator {
            domain: self.y.clone(),
            codomain: self.z.clone(),
            matrix: m,
        }
    }

    /// `T_{y0} = T(·, y0) : X → Z`.
    pub fn fix_second(&self, y0: &[f64]) -> Result<LinearOperator> {
        self.y.check_dim(y0)?;
        Ok(self.slice_second(y0))
    }

    fn slice_second(&self, y0: &[f64]) -> LinearOperator {
        let (dx, _, dz) = self.shape();
        let mut m = vec![vec![0.0; dx]; dz];
        for i in 0..dx {
            for (j, yj) in y0.iter().enumerate() {
                for (l, row) in m.iter_mut().enumerate() {
                    row[i] += self.coeff(i, j, l) * yj;
                }
            }
        }
        LinearOperator {
            domain: self.x.clone(),
            codomain: self.z.clone(),
            matrix: m,
        }
    }

    pub fn norm(&self, cfg: &SearchConfig) -> BilinearNorm {
        bilinear_norm(self, cfg)
    }
}

/// `‖T‖ = sup ‖T(x, y)‖` over `‖x‖ = ‖y‖ = 1`.
pub fn bilinear_norm(t: &BilinearOperator, cfg: &SearchConfig) -> BilinearNorm {
    match (t.x.is_polyhedral(), t.y.is_polyhedral()) {
        (true, true) => {
            let ex = t.x.extreme_points().expect("polyhedral");
            let ey = t.y.extreme_points().expect("polyhedral");
            let mut cands = Vec::with_capacity(ex.len() * ey.len());
            for u in &ex {
                for v in &ey {
                    cands.push((t.value_at(u, v), (u.clone(), v.clone())));
                }
            }
            finish(cands, true, cfg)
        }
        (true, false) => {
            let mut cands = Vec::new();
            for u in t.x.extreme_points().expect("polyhedral") {
                let ln = linear_norm(&t.slice_first(&u), cfg);
                for v in ln.maximizers {
                    cands.push((t.value_at(&u, &v), (u.clone(), v)));
                }
            }
            finish(cands, false, cfg)
        }
        (false, true) => {
            let mut cands = Vec::new();
            for v in t.y.extreme_points().expect("polyhedral") {
                let ln = linear_norm(&t.slice_second(&v), cfg);
                for u in ln.maximizers {
                    cands.push((t.value_at(&u, &v), (u, v.clone())));
                }
            }
            finish(cands, false, cfg)
        }
        (false, false) => alternating_ascent(t, cfg),
    }
}

/// Multi-start alternating maximisation, usable on any pair of domains.
pub fn alternating_ascent(t: &BilinearOperator, cfg: &SearchConfig) -> BilinearNorm {
    let starts = cfg.starts.max(1);
    let xs = t.x.sample_sphere(starts, cfg.seed);
    let ys = t.y.sample_sphere(starts, cfg.seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    let cands = xs
        .into_iter()
        .zip(ys)
        .map(|(x, y)| {
            let (val, x, y) = ascent_run(t, x, y, cfg);
            (val, (x, y))
        })
        .collect();
    finish(cands, false, cfg)
}

/// One monotone ascent run from `(x, y)`.
pub fn ascent_run(t: &BilinearOperator, mut x: Vector, mut y: Vector, cfg: &SearchConfig) -> (f64, Vector, Vector) {
    let mut val = t.value_at(&x, &y);
    for _ in 0..cfg.max_iter {
        let Some(nx) = ascent_step_first(t, &x, &y, &cfg.tol) else {
            break;
        };
        let Some(ny) = ascent_step_second(t, &nx, &y, &cfg.tol) else {
            break;
        };
        let nval = t.value_at(&nx, &ny);
        if nval < val * (1.0 - ROUNDOFF) {
            break;
        }
        let step = vecops::max_abs_diff(&nx, &x).max(vecops::max_abs_diff(&ny, &y));
        x = nx;
        y = ny;
        val = nval;
        if step <= cfg.step_tol {
            break;
        }
    }
    (val, x, y)
}

fn ascent_step_first(t: &BilinearOperator, x: &[f64], y: &[f64], tol: &Tolerances) -> Option<Vector> {
    let f = SipSelector::Barycenter.functional(&t.z, &t.eval(x, y), tol).ok()?;
    let (dx, dy, dz) = t.shape();
    let mut g = vec![0.0; dx];
    for (i, gi) in g.iter_mut().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            let base = (i * dy + j) * dz;
            *gi += yj * vecops::dot(&t.coeffs[base..base + dz], &f);
        }
    }
    Some(t.x.support_point(&g))
}

fn ascent_step_second(t: &BilinearOperator, x: &[f64], y: &[f64], tol: &Tolerances) -> Option<Vector> {
    let f = SipSelector::Barycenter.functional(&t.z, &t.eval(x, y), tol).ok()?;
    let (_, dy, dz) = t.shape();
    let mut h = vec![0.0; dy];
    for (i, xi) in x.iter().enumerate() {
        for (j, hj) in h.iter_mut().enumerate() {
            let base = (i * dy + j) * dz;
            *hj += xi * vecops::dot(&t.coeffs[base..base + dz], &f);
        }
    }
    Some(t.y.support_point(&h))
}

fn finish(cands: Vec<(f64, (Vector, Vector))>, exact: bool, cfg: &SearchConfig) -> BilinearNorm {
    let (value, certificate) = top_candidates(cands, cfg.tol.eps_attain, |(x, y)| {
        let mut v = x.0.clone();
        v.extend_from_slice(y);
        v
    });
    // Many starts converge to the same pair; keep one of each.
    let eps = if exact { cfg.tol.eps_eq } else { ASCENT_ORBIT_EPS };
    let mut distinct: Vec<(Vector, Vector)> = Vec::with_capacity(certificate.len());
    for (x, y) in certificate {
        if !distinct
            .iter()
            .any(|(a, b)| vecops::max_abs_diff(a, &x) <= eps && vecops::max_abs_diff(b, &y) <= eps)
        {
            distinct.push((x, y));
        }
    }
    BilinearNorm {
        value,
        certificate: distinct,
        exact,
    }
}

/// Sort by value descending then coordinates, keep everything within the
/// relative attainment slack of the best value.
fn top_candidates<T>(mut cands: Vec<(f64, T)>, slack: f64, key: impl Fn(&T) -> Vec<f64>) -> (f64, Vec<T>) {
    cands.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| vecops::lex_cmp(&key(&a.1), &key(&b.1))));
    let best = cands.first().map_or(0.0, |c| c.0);
    let cut = best - slack * best;
    let keep = cands.into_iter().filter(|c| c.0 >= cut).map(|c| c.1).collect();
    (best, keep)
}

fn canonical(v: &[f64]) -> Vector {
    Vector(vecops::scale(v, vecops::canonical_sign(v)))
}

/// `M_T` as sign-orbit representatives.
pub fn norm_attainment_set(t: &BilinearOperator, cfg: &SearchConfig) -> Result<NormAttainmentSet> {
    let norm = bilinear_norm(t, cfg);
    if norm.value <= cfg.tol.eps_zero {
        return Err(Error::ZeroOperator);
    }
    let eps = if norm.exact { cfg.tol.eps_eq } else { ASCENT_ORBIT_EPS };
    let mut orbits: Vec<(Vector, Vector)> = Vec::new();
    for (x, y) in norm.certificate {
        let x = canonical(&vecops::scale(&x, 1.0 / t.x.norm_of(&x)));
        let y = canonical(&vecops::scale(&y, 1.0 / t.y.norm_of(&y)));
        if !orbits
            .iter()
            .any(|(a, b)| vecops::max_abs_diff(a, &x) <= eps && vecops::max_abs_diff(b, &y) <= eps)
        {
            orbits.push((x, y));
        }
    }
    Ok(NormAttainmentSet {
        value: norm.value,
        orbits,
        exact: norm.exact,
    })
}

/// Seeded ascent-path configuration derived from a run seed.
pub fn derived_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    #[serde(rename = "X")]
    x: Space,
    #[serde(rename = "Y")]
    y: Space,
    #[serde(rename = "Z")]
    z: Space,
    coeffs: Vec<Vec<Vec<f64>>>,
}

impl TryFrom<OperatorJson> for BilinearOperator {
    type Error = Error;

    fn try_from(j: OperatorJson) -> Result<Self> {
        BilinearOperator::new(j.x, j.y, j.z, j.coeffs)
    }
}

impl From<BilinearOperator> for OperatorJson {
    fn from(t: BilinearOperator) -> Self {
        let coeffs = t.nested_coeffs();
        OperatorJson {
            x: t.x,
            y: t.y,
            z: t.z,
            coeffs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linf() -> Space {
        Space::linf(2).unwrap()
    }

    fn l2() -> Space {
        Space::l2(2).unwrap()
    }

    /// ((x1 + x2)(y1 + y2) / 4, 0) on ℓ∞² × ℓ∞² → ℓ∞².
    fn quarter_operator() -> BilinearOperator {
        let c = vec![vec![vec![0.25, 0.0]; 2]; 2];
        BilinearOperator::new(linf(), linf(), linf(), c).unwrap()
    }

    fn first_coordinates() -> BilinearOperator {
        let mut c = vec![vec![vec![0.0]; 2]; 2];
        c[0][0][0] = 1.0;
        BilinearOperator::new(l2(), l2(), Space::scalar(), c).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let t = quarter_operator();
        assert_eq!(t.evaluate(&[1.0, 1.0], &[1.0, 1.0]).unwrap().0, vec![1.0, 0.0]);
        assert_eq!(t.evaluate(&[1.0, -1.0], &[1.0, 1.0]).unwrap().0, vec![0.0, 0.0]);
        assert_eq!(t.evaluate(&[1.0, 0.0], &[1.0, 0.0]).unwrap().0, vec![0.25, 0.0]);
        assert!(matches!(t.evaluate(&[1.0], &[1.0, 0.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn shape_is_validated() {
        let bad = BilinearOperator::new(linf(), linf(), linf(), vec![vec![vec![0.0; 2]; 3]; 2]);
        assert!(matches!(bad, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn slices() {
        let t = quarter_operator();
        let s = t.fix_first(&[1.0, 1.0]).unwrap();
        assert_eq!(s.apply(&[1.0, 1.0]).unwrap().0, vec![1.0, 0.0]);
        assert_eq!(s.apply(&[0.0, 1.0]).unwrap().0, vec![0.5, 0.0]);
        let zero = t.fix_first(&[0.0, 0.0]).unwrap();
        assert!(zero.matrix.iter().flatten().all(|v| *v == 0.0));
        let s2 = t.fix_second(&[1.0, 0.0]).unwrap();
        assert_eq!(s2.apply(&[1.0, 0.0]).unwrap().0, vec![0.25, 0.0]);
    }

    #[test]
    fn linear_norm_examples() {
        let cfg = SearchConfig::default();
        let id = LinearOperator::new(l2(), l2(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((id.norm(&cfg).value - 1.0).abs() < 1e-12);

        let d = LinearOperator::new(linf(), linf(), vec![vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        let n = d.norm(&cfg);
        assert_eq!(n.value, 3.0);
        assert!(n.exact);
        assert_eq!(n.maximizers.len(), 2);

        let s = quarter_operator().fix_first(&[1.0, 1.0]).unwrap();
        let n = s.norm(&cfg);
        assert_eq!(n.value, 1.0);
        assert_eq!(n.maximizers, vec![Vector(vec![1.0, 1.0])]);
    }

    #[test]
    fn bilinear_norm_examples() {
        let cfg = SearchConfig::default();
        let n = quarter_operator().norm(&cfg);
        assert_eq!(n.value, 1.0);
        assert!(n.exact);
        assert_eq!(BilinearOperator::zero(linf(), linf(), linf()).unwrap().norm(&cfg).value, 0.0);

        let n = first_coordinates().norm(&cfg);
        assert!(!n.exact);
        assert!((n.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn attainment_examples() {
        let cfg = SearchConfig::default();
        let m = norm_attainment_set(&quarter_operator(), &cfg).unwrap();
        assert!(m.exact);
        assert_eq!(m.orbits, vec![(Vector(vec![1.0, 1.0]), Vector(vec![1.0, 1.0]))]);

        let m = norm_attainment_set(&first_coordinates(), &cfg).unwrap();
        assert_eq!(m.orbits.len(), 1);
        let (x, y) = &m.orbits[0];
        assert!(vecops::max_abs_diff(x, &[1.0, 0.0]) < 1e-9);
        assert!(vecops::max_abs_diff(y, &[1.0, 0.0]) < 1e-9);

        let mut c = vec![vec![vec![0.0; 2]; 2]; 2];
        c[0][0][0] = 1.0;
        c[1][1][1] = 1.0;
        let diag = BilinearOperator::new(linf(), linf(), linf(), c).unwrap();
        let m = norm_attainment_set(&diag, &cfg).unwrap();
        assert!(m.orbits.len() > 1);
        assert!(m.orbits.contains(&(Vector(vec![1.0, 1.0]), Vector(vec![1.0, 1.0]))));
        assert!(m.orbits.contains(&(Vector(vec![1.0, -1.0]), Vector(vec![1.0, -1.0]))));

        let zero = BilinearOperator::zero(linf(), linf(), linf()).unwrap();
        assert_eq!(norm_attainment_set(&zero, &cfg), Err(Error::ZeroOperator));
    }

    #[test]
    fn basis_values_reproduce_quarter_tensor() {
        let b = [Vector(vec![1.0, 1.0]), Vector(vec![1.0, -1.0])];
        let one = Vector(vec![1.0, 0.0]);
        let zero = Vector(vec![0.0, 0.0]);
        let values = vec![vec![one, zero.clone()], vec![zero.clone(), zero]];
        let t = BilinearOperator::from_basis_values(linf(), linf(), linf(), &b, &b, &values).unwrap();
        assert_eq!(t.flat_coeffs(), quarter_operator().flat_coeffs());
    }

    #[test]
    fn json_round_trip() {
        let t = quarter_operator();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"X\""));
        let back: BilinearOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn hybrid_domain_path() {
        // X polyhedral, Y smooth: T(x, y) = x1 y1 + x2 y2 into ℝ; ‖T‖ = sup_x ‖x‖_2 over the ℓ∞ ball = √2.
        let mut c = vec![vec![vec![0.0]; 2]; 2];
        c[0][0][0] = 1.0;
        c[1][1][0] = 1.0;
        let t = BilinearOperator::new(linf(), l2(), Space::scalar(), c).unwrap();
        let n = t.norm(&SearchConfig::default());
        assert!((n.value - 2f64.sqrt()).abs() < 1e-12);
        assert!(!n.exact);
    }
}
