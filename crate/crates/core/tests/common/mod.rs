//! Reference computations for the integration tests. Nothing here calls the
//! library's norm, derivative or search code; spaces are only inspected for
//! their parameters.

#![allow(dead_code)]

use banach_bilinear::{BilinearOperator, Space};

/// Norm evaluated from the space parameters alone.
pub fn norm(space: &Space, x: &[f64]) -> f64 {
    assert_eq!(x.len(), space.dim());
    match space {
        Space::L1 { .. } => x.iter().map(|v| v.abs()).sum(),
        Space::LInf { .. } => x.iter().fold(0.0, |m: f64, v| m.max(v.abs())),
        Space::Lp { p, .. } => {
            let m = x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            if m == 0.0 {
                return 0.0;
            }
            m * x.iter().map(|v| (v.abs() / m).powf(*p)).sum::<f64>().powf(1.0 / p)
        }
        Space::Polyhedral(poly) => poly
            .facets()
            .iter()
            .map(|a| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>())
            .fold(0.0, f64::max),
        Space::Product(a, b) => {
            let (u, v) = x.split_at(a.dim());
            norm(a, u).max(norm(b, v))
        }
    }
}

pub fn axpy(x: &[f64], t: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + t * b).collect()
}

/// Minimum of a convex function on `[lo, hi]`: a uniform grid to locate the
/// basin, then ternary search inside the two neighbouring cells.
pub fn convex_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const GRID: usize = 2000;
    let at = |k: usize| lo + (hi - lo) * k as f64 / GRID as f64;
    let (mut best, mut arg) = (f64::INFINITY, lo);
    let mut k_best = 0;
    for k in 0..=GRID {
        let v = f(at(k));
        if v < best {
            (best, arg, k_best) = (v, at(k), k);
        }
    }
    let (mut a, mut b) = (at(k_best.saturating_sub(1)), at((k_best + 1).min(GRID)));
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        let (v1, v2) = (f(m1), f(m2));
        for (v, m) in [(v1, m1), (v2, m2)] {
            if v < best {
                (best, arg) = (v, m);
            }
        }
        if v1 <= v2 {
            b = m2;
        } else {
            a = m1;
        }
    }
    (arg, best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Both,
    Plus,
    Minus,
}

/// `(‖x‖ − min ‖x + λy‖) / ‖x‖` over the requested half-lines.
pub fn relative_dip(space: &Space, x: &[f64], y: &[f64], side: Side) -> f64 {
    let nx = norm(space, x);
    let ny = norm(space, y);
    if ny == 0.0 {
        return 0.0;
    }
    let r = 4.0 * nx / ny;
    let (lo, hi) = match side {
        Side::Both => (-r, r),
        Side::Plus => (0.0, r),
        Side::Minus => (-r, 0.0),
    };
    let (_, m) = convex_min(|t| norm(space, &axpy(x, t, y)), lo, hi);
    (nx - m) / nx
}

/// The definition: no point of the line (or half-line) is shorter than `x`.
pub fn orthogonal_by_definition(space: &Space, x: &[f64], y: &[f64], side: Side) -> bool {
    relative_dip(space, x, y, side) <= 1e-12
}

/// Largest symmetric second difference `(‖u+hd‖ + ‖u−hd‖ − 2‖u‖) / (h‖d‖)`
/// over the given directions. Of order `h` at a smooth point, of order one
/// at a kink.
pub fn kink(space: &Space, u: &[f64], dirs: &[Vec<f64>]) -> f64 {
    let h = 1e-6;
    let nu = norm(space, u);
    dirs.iter()
        .map(|d| {
            let nd = norm(space, d);
            (norm(space, &axpy(u, h, d)) + norm(space, &axpy(u, -h, d)) - 2.0 * nu) / (h * nd)
        })
        .fold(0.0, f64::max)
}

/// Coordinate directions, `u` itself, each product factor of `u` on its
/// own, and a few fixed oblique directions.
pub fn probe_directions(space: &Space, u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let mut dirs = Vec::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        dirs.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e[j] = -1.0;
            dirs.push(e.clone());
            e[j] = 1.0;
            dirs.push(e);
        }
    }
    dirs.push(u.to_vec());
    if let Space::Product(a, _) = space {
        let k = a.dim();
        let mut left = u.to_vec();
        left[k..].iter_mut().for_each(|v| *v = 0.0);
        let mut right = u.to_vec();
        right[..k].iter_mut().for_each(|v| *v = 0.0);
        dirs.extend([left, right].into_iter().filter(|d| d.iter().any(|v| *v != 0.0)));
    }
    dirs
}

/// `[y, x] = ‖x‖^{2−p} Σ yᵢ sgn(xᵢ)|xᵢ|^{p−1}`, the unique semi-inner-product
/// on `ℓ_p` for `1 < p < ∞`.
pub fn lp_sip(p: f64, y: &[f64], x: &[f64]) -> f64 {
    let nx = x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
    if nx == 0.0 {
        return 0.0;
    }
    let s: f64 = y.iter().zip(x).map(|(a, b)| a * b.signum() * b.abs().powf(p - 1.0)).sum();
    nx.powf(2.0 - p) * s
}

/// `T(x, y)` from the coefficient accessor.
pub fn eval(t: &BilinearOperator, x: &[f64], y: &[f64]) -> Vec<f64> {
    let (_, _, dz) = t.shape();
    (0..dz)
        .map(|l| {
            let mut s = 0.0;
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    s += t.coeff(i, j, l) * xi * yj;
                }
            }
            s
        })
        .collect()
}

pub fn sign_vectors(dim: usize) -> Vec<Vec<f64>> {
    (0..1usize << dim)
        .map(|m| (0..dim).map(|i| if m >> i & 1 == 1 { -1.0 } else { 1.0 }).collect())
        .collect()
}

/// `‖T‖` for `ℓ∞ × ℓ∞` domains: the sign vectors are the extreme points and
/// `(x, y) ↦ ‖T(x,y)‖` is convex in each argument.
pub fn linf_domain_norm(t: &BilinearOperator) -> f64 {
    let (dx, dy, _) = t.shape();
    let mut best: f64 = 0.0;
    for x in sign_vectors(dx) {
        for y in sign_vectors(dy) {
            best = best.max(norm(t.z_space(), &eval(t, &x, &y)));
        }
    }
    best
}

/// `λ ↦ ‖T + λA‖` minimised directly, for `ℓ∞ × ℓ∞` domains.
pub fn linf_domain_distance(t: &BilinearOperator, a: &BilinearOperator) -> (f64, f64) {
    let tn = linf_domain_norm(t);
    let an = linf_domain_norm(a);
    if an == 0.0 {
        return (tn, tn);
    }
    let r = 4.0 * tn / an;
    let (_, m) = convex_min(|l| linf_domain_norm(&t.combine(1.0, a, l).unwrap()), -r, r);
    (tn, m)
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// A space of any family, dims 2 to 4, from a seed.
pub fn any_space(seed: u64) -> Space {
    use banach_bilinear::instances::{random_space_from, Family};
    random_space_from(&mut seeded(seed), &Family::ALL, 2..=4)
}
