//! Finite-dimensional real normed spaces.
//!
//! A [`Space`] is an immutable descriptor of a norm on `ℝ^n`: one of the
//! `ℓ_p` norms (with `p = 1` and `p = ∞` kept as separate kinds so their unit
//! balls can be enumerated exactly), a polyhedral norm given by facet
//! functionals, or the max-norm product of two spaces.
//!
//! Besides the norm itself a space knows its dual norm, the supporting
//! functionals `J(x) = {f : ‖f‖_* = 1, f(x) = ‖x‖}` at a non-zero point
//! (represented by the extreme points of `J(x)`), and the point of its unit
//! ball that maximises a given functional.

use std::ops::{Deref, DerefMut};

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::decision::Decision;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::vecops;

/// Largest number of zero coordinates for which an `ℓ_1` support set is
/// enumerated (it has `2^z` extreme points).
pub const MAX_L1_ZEROS: usize = 20;

/// Largest dimension for which the `2^n` vertices of the `ℓ_∞` ball are listed.
pub const MAX_LINF_VERTEX_DIM: usize = 20;

macro_rules! coord_newtype {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<f64>);

        impl Deref for $name {
            type Target = [f64];
            fn deref(&self) -> &[f64] {
                &self.0
            }
        }

        impl DerefMut for $name {
            fn deref_mut(&mut self) -> &mut [f64] {
                &mut self.0
            }
        }

        impl From<Vec<f64>> for $name {
            fn from(v: Vec<f64>) -> Self {
                $name(v)
            }
        }

        impl From<&[f64]> for $name {
            fn from(v: &[f64]) -> Self {
                $name(v.to_vec())
            }
        }

        impl<const N: usize> From<[f64; N]> for $name {
            fn from(v: [f64; N]) -> Self {
                $name(v.to_vec())
            }
        }

        impl FromIterator<f64> for $name {
            fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
                $name(iter.into_iter().collect())
            }
        }

        impl $name {
            pub fn zeros(dim: usize) -> Self {
                $name(vec![0.0; dim])
            }

            pub fn into_inner(self) -> Vec<f64> {
                self.0
            }
        }
    };
}

coord_newtype!(Vector);
coord_newtype!(Functional);

impl Vector {
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v[i] = 1.0;
        v
    }
}

impl Functional {
    /// The pairing `f(x)`.
    pub fn apply(&self, x: &[f64]) -> f64 {
        vecops::dot(&self.0, x)
    }
}

/// A polytope `{x : |g(x)| ≤ 1 for every facet g}`. The facet list is closed
/// under negation and its vertices are computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    facets: Vec<Vec<f64>>,
    vertices: Vec<Vec<f64>>,
}

impl Polytope {
    pub fn new(facets: Vec<Vec<f64>>) -> Result<Self> {
        let dim = facets.first().map(Vec::len).unwrap_or(0);
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim, min: 2 });
        }
        for f in &facets {
            if f.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.len(),
                });
            }
            if !vecops::all_finite(f) {
                return Err(Error::NonFinite);
            }
        }
        // One representative per {g, -g} pair.
        let mut reps: Vec<Vec<f64>> = Vec::new();
        for f in facets {
            if vecops::max_abs(&f) == 0.0 {
                continue;
            }
            let s = vecops::canonical_sign(&f);
            let f = vecops::scale(&f, s);
            if !reps.iter().any(|r| vecops::max_abs_diff(r, &f) <= 1e-12) {
                reps.push(f);
            }
        }
        let m = DMatrix::from_fn(reps.len(), dim, |i, j| reps[i][j]);
        let rank = m.rank(1e-10);
        if rank < dim {
            return Err(Error::DegenerateFacets { rank, dim });
        }
        let vertices = enumerate_vertices(&reps, dim);
        let facets = reps
            .iter()
            .flat_map(|r| [r.clone(), vecops::neg(r)])
            .collect();
        Ok(Polytope {
            dim,
            facets,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Facet functionals, closed under negation.
    pub fn facets(&self) -> &[Vec<f64>] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    fn gauge(&self, x: &[f64]) -> f64 {
        self.facets
            .iter()
            .fold(0.0, |m, g| m.max(vecops::dot(g, x)))
    }
}

/// Vertices of `{x : |r(x)| ≤ 1}` by brute force over `dim`-subsets of the
/// facet pairs and sign patterns.
fn enumerate_vertices(reps: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let gauge = |x: &[f64]| reps.iter().fold(0.0f64, |m, g| m.max(vecops::dot(g, x).abs()));
    let mut out: Vec<Vec<f64>> = Vec::new();
    for subset in vecops::combinations(reps.len(), dim) {
        let a = DMatrix::from_fn(dim, dim, |i, j| reps[subset[i]][j]);
        let lu = a.lu();
        if lu.determinant().abs() < 1e-12 {
            continue;
        }
        for signs in 0..(1usize << dim) {
            let b = DVector::from_fn(dim, |i, _| if signs >> i & 1 == 0 { 1.0 } else { -1.0 });
            let Some(sol) = lu.solve(&b) else { continue };
            let x: Vec<f64> = sol.iter().copied().collect();
            if gauge(&x) > 1.0 + 1e-9 {
                continue;
            }
            if !out.iter().any(|v| vecops::max_abs_diff(v, &x) <= 1e-9) {
                out.push(x);
            }
        }
    }
    out.sort_by(|a, b| vecops::lex_cmp(b, a));
    out
}

/// A norm on `ℝ^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceJson", into = "SpaceJson")]
pub enum Space {
    L1 { dim: usize },
    /// `1 < p < ∞`
    Lp { p: f64, dim: usize },
    LInf { dim: usize },
    Polyhedral(Polytope),
    Product(Box<Space>, Box<Space>),
}

impl Space {
    /// `ℓ_p^dim`; `p = 1` and `p = ∞` select the dedicated kinds.
    pub fn lp(p: f64, dim: usize) -> Result<Space> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim, min: 2 });
        }
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(if p == 1.0 {
            Space::L1 { dim }
        } else if p == f64::INFINITY {
            Space::LInf { dim }
        } else {
            Space::Lp { p, dim }
        })
    }

    pub fn l1(dim: usize) -> Result<Space> {
        Space::lp(1.0, dim)
    }

    pub fn l2(dim: usize) -> Result<Space> {
        Space::lp(2.0, dim)
    }

    pub fn linf(dim: usize) -> Result<Space> {
        Space::lp(f64::INFINITY, dim)
    }

    /// The scalar field with the absolute value norm. Only meaningful as the
    /// codomain of a scalar-valued bilinear form.
    pub fn scalar() -> Space {
        Space::Lp { p: 2.0, dim: 1 }
    }

    pub fn polyhedral(facets: Vec<Vec<f64>>) -> Result<Space> {
        Ok(Space::Polyhedral(Polytope::new(facets)?))
    }

    /// `X × Y` with `‖(x, y)‖ = max(‖x‖, ‖y‖)`.
    pub fn product(left: Space, right: Space) -> Space {
        Space::Product(Box::new(left), Box::new(right))
    }

    pub fn dim(&self) -> usize {
        match self {
            Space::L1 { dim } | Space::Lp { dim, .. } | Space::LInf { dim } => *dim,
            Space::Polyhedral(poly) => poly.dim,
            Space::Product(a, b) => a.dim() + b.dim(),
        }
    }

    /// Unit ball is a polytope, so convex maximisation over it is exact by
    /// vertex enumeration.
    pub fn is_polyhedral(&self) -> bool {
        match self {
            Space::L1 { .. } | Space::LInf { .. } | Space::Polyhedral(_) => true,
            Space::Lp { dim, .. } => *dim == 1,
            Space::Product(a, b) => a.is_polyhedral() && b.is_polyhedral(),
        }
    }

    /// Smooth at every non-zero point.
    pub fn is_smooth(&self) -> bool {
        match self {
            Space::Lp { .. } => true,
            Space::L1 { dim } | Space::LInf { dim } => *dim == 1,
            Space::Polyhedral(_) | Space::Product(..) => false,
        }
    }

    /// `(left, right)` factors of a product space.
    pub fn factors(&self) -> Option<(&Space, &Space)> {
        match self {
            Space::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Human readable short name, matching the compact CLI syntax.
    pub fn label(&self) -> String {
        match self {
            Space::L1 { dim } => format!("lp:1:{dim}"),
            Space::Lp { p, dim } => format!("lp:{p}:{dim}"),
            Space::LInf { dim } => format!("lp:inf:{dim}"),
            Space::Polyhedral(poly) => format!("polyhedral:{}f:{}", poly.facets.len() / 2, poly.dim),
            Space::Product(a, b) => format!("product({},{})", a.label(), b.label()),
        }
    }

    pub(crate) fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        if !vecops::all_finite(v) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    pub(crate) fn split<'a>(&self, v: &'a [f64]) -> (&'a [f64], &'a [f64]) {
        match self {
            Space::Product(a, _) => v.split_at(a.dim()),
            _ => panic!("split called on a non-product space"),
        }
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.norm_of(x))
    }

    /// Norm without dimension checks.
    pub(crate) fn norm_of(&self, x: &[f64]) -> f64 {
        match self {
            Space::L1 { .. } => x.iter().map(|v| v.abs()).sum(),
            Space::LInf { .. } => vecops::max_abs(x),
            Space::Lp { p, .. } => lp_norm(x, *p),
            Space::Polyhedral(poly) => poly.gauge(x),
            Space::Product(..) => {
                let (a, b) = self.factors().unwrap();
                let (x1, x2) = self.split(x);
                a.norm_of(x1).max(b.norm_of(x2))
            }
        }
    }

    pub fn dual_norm(&self, f: &[f64]) -> Result<f64> {
        self.check_dim(f)?;
        Ok(self.dual_norm_of(f))
    }

    pub(crate) fn dual_norm_of(&self, f: &[f64]) -> f64 {
        match self {
            Space::L1 { .. } => vecops::max_abs(f),
            Space::LInf { .. } => f.iter().map(|v| v.abs()).sum(),
            Space::Lp { p, .. } => lp_norm(f, conjugate(*p)),
            Space::Polyhedral(poly) => poly
                .vertices
                .iter()
                .fold(0.0, |m, v| m.max(vecops::dot(f, v))),
            Space::Product(..) => {
                let (a, b) = self.factors().unwrap();
                let (f1, f2) = self.split(f);
                a.dual_norm_of(f1) + b.dual_norm_of(f2)
            }
        }
    }

    /// Extreme points of `J(x)`.
    pub fn support_functionals(&self, x: &[f64], tol: &Tolerances) -> Result<SupportSet> {
        self.check_dim(x)?;
        let norm = self.norm_of(x);
        if norm <= tol.eps_zero {
            return Err(Error::ZeroVector);
        }
        let extremes = self.support_extremes(x, norm, tol.eps_eq)?;
        Ok(SupportSet::new(norm, extremes, tol.eps_eq))
    }

    /// Extreme supporting functionals where "attaining" means
    /// `f(x) ≥ (1 - rel) ‖x‖`.
    fn support_extremes(&self, x: &[f64], norm: f64, rel: f64) -> Result<Vec<Functional>> {
        let dim = x.len();
        Ok(match self {
            Space::Lp { p, .. } => {
                let q1 = p - 1.0;
                vec![x
                    .iter()
                    .map(|v| vecops::sign(*v) * (v.abs() / norm).powf(q1))
                    .collect()]
            }
            Space::LInf { .. } => (0..dim)
                .filter(|&i| x[i].abs() >= (1.0 - rel) * norm)
                .map(|i| {
                    let mut f = Functional::zeros(dim);
                    f[i] = vecops::sign(x[i]);
                    f
                })
                .collect(),
            Space::L1 { .. } => {
                let zeros: Vec<usize> = (0..dim).filter(|&i| x[i].abs() <= 0.5 * rel * norm).collect();
                if zeros.len() > MAX_L1_ZEROS {
                    return Err(Error::TooManyExtremes {
                        zeros: zeros.len(),
                        limit: MAX_L1_ZEROS,
                    });
                }
                let base: Vec<f64> = x
                    .iter()
                    .map(|v| if v.abs() <= 0.5 * rel * norm { 0.0 } else { vecops::sign(*v) })
                    .collect();
                (0..(1usize << zeros.len()))
                    .map(|pattern| {
                        let mut f = base.clone();
                        for (bit, &i) in zeros.iter().enumerate() {
                            f[i] = if pattern >> bit & 1 == 0 { 1.0 } else { -1.0 };
                        }
                        Functional(f)
                    })
                    .collect()
            }
            Space::Polyhedral(poly) => poly
                .facets
                .iter()
                .filter(|g| vecops::dot(g, x) >= (1.0 - rel) * norm)
                .map(|g| Functional(g.clone()))
                .collect(),
            Space::Product(a, b) => {
                let (x1, x2) = self.split(x);
                let (n1, n2) = (a.norm_of(x1), b.norm_of(x2));
                let tie = (n1 - n2).abs() <= rel * norm;
                let mut out = Vec::new();
                if n1 >= n2 || tie {
                    for f in a.support_extremes(x1, n1, rel)? {
                        let mut g = f.0;
                        g.extend(std::iter::repeat_n(0.0, x2.len()));
                        out.push(Functional(g));
                    }
                }
                if n2 >= n1 || tie {
                    for f in b.support_extremes(x2, n2, rel)? {
                        let mut g = vec![0.0; x1.len()];
                        g.extend(f.0);
                        out.push(Functional(g));
                    }
                }
                out
            }
        })
    }

    /// Number of extreme supporting functionals at relative activity `rel`,
    /// saturating instead of enumerating large `ℓ_1` sets.
    fn support_count(&self, x: &[f64], norm: f64, rel: f64) -> usize {
        match self {
            Space::Lp { .. } => 1,
            Space::LInf { .. } => x.iter().filter(|v| v.abs() >= (1.0 - rel) * norm).count(),
            Space::L1 { .. } => {
                let z = x.iter().filter(|v| v.abs() <= 0.5 * rel * norm).count();
                1usize.checked_shl(z as u32).unwrap_or(usize::MAX)
            }
            Space::Polyhedral(poly) => poly
                .facets
                .iter()
                .filter(|g| vecops::dot(g, x) >= (1.0 - rel) * norm)
                .count(),
            Space::Product(a, b) => {
                let (x1, x2) = self.split(x);
                let (n1, n2) = (a.norm_of(x1), b.norm_of(x2));
                let tie = (n1 - n2).abs() <= rel * norm;
                let mut c = 0usize;
                if n1 >= n2 || tie {
                    c = c.saturating_add(a.support_count(x1, n1, rel));
                }
                if n2 >= n1 || tie {
                    c = c.saturating_add(b.support_count(x2, n2, rel));
                }
                c
            }
        }
    }

    /// Holds iff `J(x)` is a single functional. Reported inconclusive when the
    /// support set is a singleton at `eps_eq` but widens within `eps_band`.
    pub fn is_smooth_point(&self, x: &[f64], tol: &Tolerances) -> Result<Decision> {
        self.check_dim(x)?;
        let norm = self.norm_of(x);
        if norm <= tol.eps_zero {
            return Err(Error::ZeroVector);
        }
        let tight = self.support_count(x, norm, tol.eps_eq);
        if tight > 1 {
            return Ok(Decision::fails().with_note(format!("{tight} extreme supporting functionals")));
        }
        let loose = self.support_count(x, norm, tol.eps_band);
        if loose > 1 {
            return Ok(Decision::inconclusive().with_note("near-active supporting functionals within the marginal band"));
        }
        Ok(Decision::holds())
    }

    /// Extreme points of the closed unit ball of a polyhedral space.
    pub fn extreme_points(&self) -> Result<Vec<Vector>> {
        match self {
            Space::Lp { dim: 1, .. } => Ok(vec![Vector(vec![1.0]), Vector(vec![-1.0])]),
            Space::Lp { .. } => Err(Error::NotPolyhedral),
            Space::LInf { dim } => {
                let dim = *dim;
                if dim > MAX_LINF_VERTEX_DIM {
                    return Err(Error::TooManyExtremes {
                        zeros: dim,
                        limit: MAX_LINF_VERTEX_DIM,
                    });
                }
                Ok((0..(1usize << dim))
                    .map(|bits| {
                        (0..dim)
                            .map(|i| if bits >> (dim - 1 - i) & 1 == 0 { 1.0 } else { -1.0 })
                            .collect()
                    })
                    .collect())
            }
            Space::L1 { dim } => Ok((0..*dim)
                .flat_map(|i| {
                    let e = Vector::basis(*dim, i);
                    let m = Vector(vecops::neg(&e));
                    [e, m]
                })
                .collect()),
            Space::Polyhedral(poly) => Ok(poly.vertices.iter().map(|v| Vector(v.clone())).collect()),
            Space::Product(a, b) => {
                let ea = a.extreme_points()?;
                let eb = b.extreme_points()?;
                Ok(ea
                    .iter()
                    .flat_map(|u| {
                        eb.iter().map(move |v| {
                            let mut w = u.0.clone();
                            w.extend_from_slice(v);
                            Vector(w)
                        })
                    })
                    .collect())
            }
        }
    }

    /// A point of the unit ball maximising `g`; `g(result) = ‖g‖_*`.
    pub fn support_point(&self, g: &[f64]) -> Vector {
        let dim = g.len();
        match self {
            Space::Lp { p, .. } => {
                let q = conjugate(*p);
                let gn = lp_norm(g, q);
                if gn == 0.0 {
                    return Vector::basis(dim, 0);
                }
                g.iter()
                    .map(|v| vecops::sign(*v) * (v.abs() / gn).powf(q - 1.0))
                    .collect()
            }
            Space::L1 { .. } => {
                let k = argmax_abs(g);
                let mut v = Vector::zeros(dim);
                v[k] = if g[k] < 0.0 { -1.0 } else { 1.0 };
                v
            }
            Space::LInf { .. } => g.iter().map(|v| if *v < 0.0 { -1.0 } else { 1.0 }).collect(),
            Space::Polyhedral(poly) => {
                let mut best = &poly.vertices[0];
                let mut bv = f64::NEG_INFINITY;
                for v in &poly.vertices {
                    let val = vecops::dot(g, v);
                    if val > bv {
                        bv = val;
                        best = v;
                    }
                }
                Vector(best.clone())
            }
            Space::Product(a, b) => {
                let (g1, g2) = self.split(g);
                let mut v = a.support_point(g1).0;
                v.extend(b.support_point(g2).0);
                Vector(v)
            }
        }
    }

    /// `count` unit vectors: standard-normal directions normalised by this
    /// space's norm. Deterministic in `seed`.
    pub fn sample_sphere(&self, count: usize, seed: u64) -> Vec<Vector> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.random_unit(&mut rng)).collect()
    }

    pub(crate) fn random_unit<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        loop {
            let v: Vec<f64> = (0..self.dim()).map(|_| StandardNormal.sample(rng)).collect();
            let n = self.norm_of(&v);
            if n > 1e-8 {
                return Vector(vecops::scale(&v, 1.0 / n));
            }
        }
    }
}

fn argmax_abs(g: &[f64]) -> usize {
    let mut k = 0;
    for i in 1..g.len() {
        if g[i].abs() > g[k].abs() {
            k = i;
        }
    }
    k
}

/// Conjugate exponent `q` with `1/p + 1/q = 1`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p == f64::INFINITY {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Scaled `ℓ_p` norm, accurate for coordinates of very different magnitude.
fn lp_norm(x: &[f64], p: f64) -> f64 {
    let m = vecops::max_abs(x);
    if m == 0.0 {
        return 0.0;
    }
    if p == f64::INFINITY {
        return m;
    }
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    if p == 2.0 {
        return m * x.iter().map(|v| (v / m) * (v / m)).sum::<f64>().sqrt();
    }
    m * x.iter().map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// The set `J(x)` of norm-one functionals attaining at `x`, by its extreme
/// points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportSet {
    /// `‖x‖` of the anchor.
    pub anchor_norm: f64,
    pub extremes: Vec<Functional>,
}

impl SupportSet {
    fn new(anchor_norm: f64, candidates: Vec<Functional>, eps: f64) -> Self {
        let mut extremes: Vec<Functional> = Vec::with_capacity(candidates.len());
        for f in candidates {
            if !extremes.iter().any(|g| vecops::max_abs_diff(g, &f) <= eps) {
                extremes.push(f);
            }
        }
        SupportSet {
            anchor_norm,
            extremes,
        }
    }

    pub fn len(&self) -> usize {
        self.extremes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extremes.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.extremes.len() == 1
    }

    /// `(max, min)` of `f(y)` over the extremes.
    pub fn range_on(&self, y: &[f64]) -> (f64, f64) {
        self.extremes.iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), f| {
            let v = f.apply(y);
            (hi.max(v), lo.min(v))
        })
    }

    /// Arithmetic mean of the extremes; an element of `J(x)` by convexity.
    pub fn barycenter(&self) -> Functional {
        let dim = self.extremes[0].len();
        let k = self.extremes.len() as f64;
        let mut out = vec![0.0; dim];
        for f in &self.extremes {
            for (o, v) in out.iter_mut().zip(f.iter()) {
                *o += v;
            }
        }
        out.iter().map(|v| v / k).collect()
    }
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpaceJson {
    Lp { p: ExponentJson, dim: usize },
    Polyhedral { facets: Vec<Vec<f64>> },
    Product { left: Box<SpaceJson>, right: Box<SpaceJson> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentJson {
    Num(f64),
    Text(String),
}

impl TryFrom<SpaceJson> for Space {
    type Error = Error;

    fn try_from(j: SpaceJson) -> Result<Space> {
        match j {
            SpaceJson::Lp { p, dim } => {
                let p = match p {
                    ExponentJson::Num(p) => p,
                    ExponentJson::Text(s) => parse_exponent(&s)?,
                };
                if dim == 1 && p >= 1.0 {
                    return Ok(Space::scalar());
                }
                Space::lp(p, dim)
            }
            SpaceJson::Polyhedral { facets } => Space::polyhedral(facets),
            SpaceJson::Product { left, right } => {
                Ok(Space::product(Space::try_from(*left)?, Space::try_from(*right)?))
            }
        }
    }
}

impl From<Space> for SpaceJson {
    fn from(s: Space) -> SpaceJson {
        match s {
            Space::L1 { dim } => SpaceJson::Lp {
                p: ExponentJson::Num(1.0),
                dim,
            },
            Space::Lp { p, dim } => SpaceJson::Lp {
                p: ExponentJson::Num(p),
                dim,
            },
            Space::LInf { dim } => SpaceJson::Lp {
                p: ExponentJson::Text("inf".into()),
                dim,
            },
            Space::Polyhedral(poly) => {
                let mut facets = Vec::new();
                for (k, f) in poly.facets.into_iter().enumerate() {
                    if k % 2 == 0 {
                        facets.push(f);
                    }
                }
                SpaceJson::Polyhedral { facets }
            }
            Space::Product(a, b) => SpaceJson::Product {
                left: Box::new((*a).into()),
                right: Box::new((*b).into()),
            },
        }
    }
}

fn parse_exponent(s: &str) -> Result<f64> {
    match s.trim() {
        "inf" | "infinity" | "Inf" | "INF" => Ok(f64::INFINITY),
        t => t
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad exponent `{s}`"))),
    }
}

impl std::str::FromStr for Space {
    type Err = Error;

    /// Compact syntax `lp:<p>:<dim>` and `product(<space>,<space>)`, or a
    /// JSON descriptor.
    fn from_str(s: &str) -> Result<Space> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0usize;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        let left: Space = inner[..i].parse()?;
                        let right: Space = inner[i + 1..].parse()?;
                        return Ok(Space::product(left, right));
                    }
                    _ => {}
                }
            }
            return Err(Error::Parse(format!("product needs two factors: `{s}`")));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["lp", p, dim] => {
                let p = parse_exponent(p)?;
                let dim: usize = dim
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad dimension in `{s}`")))?;
                if dim == 1 && p >= 1.0 {
                    return Ok(Space::scalar());
                }
                Space::lp(p, dim)
            }
            _ => Err(Error::Parse(format!("unrecognised space `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Space::linf(2).unwrap().norm(&[1.0, -2.0]).unwrap(), 2.0);
        assert_eq!(Space::l2(2).unwrap().norm(&[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(Space::l1(3).unwrap().norm(&[1.0, -1.0, 2.0]).unwrap(), 4.0);
    }

    #[test]
    fn norm_dimension_mismatch() {
        let e = Space::l2(2).unwrap().norm(&[1.0, 2.0, 3.0]).unwrap_err();
        assert_eq!(e, Error::DimensionMismatch { expected: 2, found: 3 });
        assert_eq!(Space::l2(2).unwrap().norm(&[f64::NAN, 1.0]), Err(Error::NonFinite));
    }

    #[test]
    fn dual_norm_examples() {
        assert_eq!(Space::linf(2).unwrap().dual_norm(&[1.0, 1.0]).unwrap(), 2.0);
        assert!((Space::l2(2).unwrap().dual_norm(&[0.6, 0.8]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(Space::l1(2).unwrap().dual_norm(&[0.5, -0.25]).unwrap(), 0.5);
    }

    #[test]
    fn small_dimension_rejected() {
        assert!(matches!(Space::l2(1), Err(Error::DimensionTooSmall { .. })));
        assert!(matches!(Space::lp(0.5, 3), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn support_l2() {
        let s = Space::l2(2).unwrap().support_functionals(&[3.0, 4.0], &tol()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(vecops::max_abs_diff(&s.extremes[0], &[0.6, 0.8]) < 1e-15);
    }

    /// Independent certificate: every sign pattern `±e_i*` and every `ℓ_1`
    /// unit functional with rational entries is tried; only the listed ones
    /// attain at x.
    #[test]
    fn support_linf_corner_matches_enumeration() {
        let sp = Space::linf(2).unwrap();
        for (x, expected) in [
            ([1.0, 1.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
            ([1.0, 0.5], vec![vec![1.0, 0.0]]),
        ] {
            let s = sp.support_functionals(&x, &tol()).unwrap();
            let got: Vec<Vec<f64>> = s.extremes.iter().map(|f| f.0.clone()).collect();
            assert_eq!(got, expected);
            // Extreme points of the dual (ℓ_1) ball are ±e_i; keep those that attain.
            let attaining: Vec<Vec<f64>> = Space::l1(2)
                .unwrap()
                .extreme_points()
                .unwrap()
                .into_iter()
                .filter(|f| (vecops::dot(f, &x) - 1.0).abs() < 1e-12)
                .map(|f| f.0)
                .collect();
            assert_eq!(attaining.len(), expected.len());
            for f in &expected {
                assert!(attaining.contains(f));
                assert_eq!(sp.dual_norm(f).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn support_l1_zero_coordinates() {
        let sp = Space::l1(3).unwrap();
        let s = sp.support_functionals(&[0.5, 0.0, -0.5], &tol()).unwrap();
        assert_eq!(s.len(), 2);
        for f in &s.extremes {
            assert_eq!(f[0], 1.0);
            assert_eq!(f[2], -1.0);
        }
        let big = Space::l1(22).unwrap();
        let mut x = vec![0.0; 22];
        x[0] = 1.0;
        assert!(matches!(big.support_functionals(&x, &tol()), Err(Error::TooManyExtremes { .. })));
    }

    #[test]
    fn support_zero_vector_errors() {
        let sp = Space::l2(2).unwrap();
        assert_eq!(sp.support_functionals(&[0.0, 0.0], &tol()), Err(Error::ZeroVector));
        assert_eq!(sp.is_smooth_point(&[0.0, 1e-13], &tol()), Err(Error::ZeroVector));
    }

    #[test]
    fn smoothness_examples() {
        let linf = Space::linf(2).unwrap();
        assert!(linf.is_smooth_point(&[1.0, 0.5], &tol()).unwrap().is_holds());
        assert!(linf.is_smooth_point(&[1.0, 1.0], &tol()).unwrap().is_fails());
        assert!(linf.is_smooth_point(&[1.0, 1.0 - 1e-8], &tol()).unwrap().is_inconclusive());
        assert!(Space::l2(2).unwrap().is_smooth_point(&[3.0, 4.0], &tol()).unwrap().is_holds());
    }

    #[test]
    fn extreme_point_examples() {
        let e: Vec<Vec<f64>> = Space::linf(2).unwrap().extreme_points().unwrap().into_iter().map(|v| v.0).collect();
        assert_eq!(e, vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]]);
        let e: Vec<Vec<f64>> = Space::l1(2).unwrap().extreme_points().unwrap().into_iter().map(|v| v.0).collect();
        assert_eq!(e, vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]);
        assert_eq!(Space::l2(2).unwrap().extreme_points(), Err(Error::NotPolyhedral));
        let prod = Space::product(Space::linf(2).unwrap(), Space::l1(2).unwrap());
        assert_eq!(prod.extreme_points().unwrap().len(), 16);
    }

    #[test]
    fn polyhedral_square_and_diamond() {
        let square = Space::polyhedral(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let mut v: Vec<Vec<f64>> = square.extreme_points().unwrap().into_iter().map(|v| v.0).collect();
        v.sort_by(|a, b| vecops::lex_cmp(a, b));
        assert_eq!(v, vec![vec![-1.0, -1.0], vec![-1.0, 1.0], vec![1.0, -1.0], vec![1.0, 1.0]]);
        let diamond = Space::polyhedral(vec![vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        assert_eq!(diamond.extreme_points().unwrap().len(), 4);
        assert_eq!(diamond.norm(&[0.3, -0.2]).unwrap(), 0.5);
        assert!(Space::polyhedral(vec![vec![1.0, 1.0], vec![2.0, 2.0]]).is_err());
    }

    #[test]
    fn hexagon_dual_norm() {
        let hex = Space::polyhedral(vec![vec![1.0, 0.0], vec![0.5, 0.8660254037844386], vec![-0.5, 0.8660254037844386]]).unwrap();
        assert_eq!(hex.extreme_points().unwrap().len(), 6);
        // Each facet functional has dual norm one.
        if let Space::Polyhedral(poly) = &hex {
            for g in poly.facets() {
                assert!((hex.dual_norm(g).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sample_sphere_contract() {
        let v = Space::l2(2).unwrap().sample_sphere(1, 7);
        assert_eq!(v.len(), 1);
        assert!((Space::l2(2).unwrap().norm(&v[0]).unwrap() - 1.0).abs() <= 1e-12);
        let sp = Space::linf(3).unwrap();
        let v = sp.sample_sphere(100, 1);
        assert_eq!(v.len(), 100);
        for w in &v {
            assert!((vecops::max_abs(w) - 1.0).abs() <= 1e-15);
        }
        assert_eq!(sp.sample_sphere(100, 1), v);
    }

    #[test]
    fn support_point_attains_dual_norm() {
        let g = [0.3, -1.2, 0.7];
        for sp in [Space::l1(3).unwrap(), Space::l2(3).unwrap(), Space::lp(4.0, 3).unwrap(), Space::linf(3).unwrap()] {
            let x = sp.support_point(&g);
            assert!((sp.norm(&x).unwrap() - 1.0).abs() < 1e-12);
            assert!((vecops::dot(&g, &x) - sp.dual_norm(&g).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_space_syntax() {
        assert_eq!("lp:inf:2".parse::<Space>().unwrap(), Space::linf(2).unwrap());
        assert_eq!("lp:2:3".parse::<Space>().unwrap(), Space::l2(3).unwrap());
        assert_eq!(
            "product(lp:2:2,lp:1:2)".parse::<Space>().unwrap(),
            Space::product(Space::l2(2).unwrap(), Space::l1(2).unwrap())
        );
        let j: Space = r#"{"kind":"lp","p":"inf","dim":3}"#.parse().unwrap();
        assert_eq!(j, Space::linf(3).unwrap());
        let j: Space = r#"{"kind":"product","left":{"kind":"lp","p":2.0,"dim":2},"right":{"kind":"polyhedral","facets":[[1,0],[0,1]]}}"#
            .parse()
            .unwrap();
        assert_eq!(j.dim(), 4);
        assert!("lp:x:2".parse::<Space>().is_err());
    }
}
