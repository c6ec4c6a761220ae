//! Seeded random instance generators for the verification suites.
//!
//! Plain normal sampling almost never lands on a corner of a polyhedral ball,
//! so the generators here deliberately mix in points with exact ties
//! (`ℓ_∞` coordinates equal to `±1`, `ℓ_1` coordinates equal to zero, polytope
//! vertices, equal factor norms in products) and directions constructed to be
//! orthogonal to a chosen supporting functional.

use rand::{Rng, RngExt};
use rand_distr::{Distribution, StandardNormal};

use crate::bilinear::BilinearOperator;
use crate::spaces::{Space, Vector};
use crate::tolerance::Tolerances;
use crate::vecops;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    L1,
    L2,
    L4,
    LInf,
    Polyhedral,
    Product,
}

impl Family {
    pub const LP: [Family; 4] = [Family::L1, Family::L2, Family::L4, Family::LInf];
    pub const ALL: [Family; 6] = [
        Family::L1,
        Family::L2,
        Family::L4,
        Family::LInf,
        Family::Polyhedral,
        Family::Product,
    ];
}

pub fn normal_vec<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| StandardNormal.sample(rng)).collect()
}

/// A space of the given family with dimension drawn from `dims`. Product
/// factors are drawn from the `ℓ_p` families.
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, family: Family, dims: std::ops::RangeInclusive<usize>) -> Space {
    let dim = rng.random_range(dims.clone());
    match family {
        Family::L1 => Space::l1(dim).unwrap(),
        Family::L2 => Space::l2(dim).unwrap(),
        Family::L4 => Space::lp(4.0, dim).unwrap(),
        Family::LInf => Space::linf(dim).unwrap(),
        Family::Polyhedral => random_polyhedral(rng, dim),
        Family::Product => {
            let fa = Family::LP[rng.random_range(0..4)];
            let a = random_space(rng, fa, dims.clone());
            let fb = Family::LP[rng.random_range(0..4)];
            let b = random_space(rng, fb, dims);
            Space::product(a, b)
        }
    }
}

/// A space from a family drawn uniformly from `families`.
pub fn random_space_from<R: Rng + ?Sized>(rng: &mut R, families: &[Family], dims: std::ops::RangeInclusive<usize>) -> Space {
    let fam = families[rng.random_range(0..families.len())];
    random_space(rng, fam, dims)
}

/// Polyhedral norm from `dim + 1 ..= dim + 3` random facet pairs.
pub fn random_polyhedral<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Space {
    loop {
        let m = dim + rng.random_range(1..=3);
        let facets = (0..m).map(|_| normal_vec(rng, dim)).collect();
        if let Ok(s) = Space::polyhedral(facets) {
            return s;
        }
    }
}

/// A unit vector, half the time on a lower-dimensional face of the ball.
pub fn structured_unit<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Vector {
    if rng.random_bool(0.5) {
        return space.random_unit(rng);
    }
    let dim = space.dim();
    match space {
        Space::LInf { .. } => {
            let mut v: Vec<f64> = (0..dim).map(|_| rng.random_range(-0.99..0.99)).collect();
            let active = rng.random_range(1..=dim);
            for i in sample_indices(rng, dim, active) {
                v[i] = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            }
            Vector(v)
        }
        Space::L1 { .. } => {
            let mut v = normal_vec(rng, dim);
            let zeros = rng.random_range(1..dim);
            for i in sample_indices(rng, dim, zeros) {
                v[i] = 0.0;
            }
            let n = space.norm_of(&v);
            Vector(vecops::scale(&v, 1.0 / n))
        }
        Space::Polyhedral(poly) => {
            let vs = poly.vertices();
            let a = &vs[rng.random_range(0..vs.len())];
            if rng.random_bool(0.5) {
                Vector(a.clone())
            } else {
                // A point on the boundary segment towards another vertex.
                let b = &vs[rng.random_range(0..vs.len())];
                let t: f64 = rng.random_range(0.0..1.0);
                let w: Vec<f64> = a.iter().zip(b).map(|(p, q)| (1.0 - t) * p + t * q).collect();
                let n = space.norm_of(&w);
                if n < 1e-6 {
                    Vector(a.clone())
                } else {
                    Vector(vecops::scale(&w, 1.0 / n))
                }
            }
        }
        Space::Product(a, b) => {
            let u = structured_unit(a, rng);
            let v = structured_unit(b, rng);
            let (su, sv) = match rng.random_range(0..3) {
                0 => (1.0, 1.0),
                1 => (1.0, rng.random_range(0.05..0.95)),
                _ => (rng.random_range(0.05..0.95), 1.0),
            };
            let mut w = vecops::scale(&u, su);
            w.extend(vecops::scale(&v, sv));
            Vector(w)
        }
        Space::Lp { .. } => space.random_unit(rng),
    }
}

/// A direction at anchor `x` (`x ≠ 0`): either a normal draw or, half the
/// time, the normal draw with the component along a random element of `J(x)`
/// removed, so that the direction is Birkhoff-James orthogonal to `x`.
pub fn direction_at<R: Rng + ?Sized>(space: &Space, x: &[f64], rng: &mut R, tol: &Tolerances) -> Vector {
    let w = normal_vec(rng, space.dim());
    if rng.random_bool(0.5) {
        return Vector(w);
    }
    let Ok(set) = space.support_functionals(x, tol) else {
        return Vector(w);
    };
    let weights: Vec<f64> = (0..set.len()).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut f = vec![0.0; x.len()];
    for (g, wt) in set.extremes.iter().zip(&weights) {
        for (fi, gi) in f.iter_mut().zip(g.iter()) {
            *fi += gi * wt / total;
        }
    }
    let nx = space.norm_of(x);
    let c = vecops::dot(&f, &w) / nx;
    Vector(vecops::axpy(&w, -c, x))
}

/// Bilinear operator with i.i.d. standard normal coefficients.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, x: Space, y: Space, z: Space) -> BilinearOperator {
    let n = x.dim() * y.dim() * z.dim();
    let c = normal_vec(rng, n);
    BilinearOperator::from_flat(x, y, z, c).expect("shape is consistent")
}

/// [`random_operator`] driven by a fresh generator seeded with `seed`.
pub fn seeded_operator(seed: u64, x: Space, y: Space, z: Space) -> BilinearOperator {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    random_operator(&mut rng, x, y, z)
}

/// Bilinear operator with coefficients in `{-1, -1/2, 0, 1/2, 1}`; ties in
/// the norm attainment set are common.
pub fn random_dyadic_operator<R: Rng + ?Sized>(rng: &mut R, x: Space, y: Space, z: Space) -> BilinearOperator {
    let n = x.dim() * y.dim() * z.dim();
    loop {
        let c: Vec<f64> = (0..n).map(|_| rng.random_range(-2i32..=2) as f64 / 2.0).collect();
        if c.iter().any(|v| *v != 0.0) {
            return BilinearOperator::from_flat(x, y, z, c).expect("shape is consistent");
        }
    }
}

fn sample_indices<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k.min(n) {
        let j = rng.random_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(k);
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn structured_points_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for fam in Family::ALL {
            for _ in 0..50 {
                let sp = random_space(&mut rng, fam, 2..=3);
                let u = structured_unit(&sp, &mut rng);
                assert!((sp.norm(&u).unwrap() - 1.0).abs() < 1e-12, "{sp:?} {u:?}");
            }
        }
    }

    #[test]
    fn constructed_directions_are_orthogonal() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sp = Space::linf(3).unwrap();
        let x = [1.0, -1.0, 0.2];
        let mut found = 0;
        for _ in 0..40 {
            let y = direction_at(&sp, &x, &mut rng, &tol);
            let set = sp.support_functionals(&x, &tol).unwrap();
            let (hi, lo) = set.range_on(&y);
            if hi > 1e-6 && lo < -1e-6 {
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
