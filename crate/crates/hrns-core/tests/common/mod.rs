//! Shared helpers for the integration suites: brute-force oracles that are
//! independent of the library's dynamic-programming and power-iteration
//! code paths, plus seeded random generators for cones and polynomials.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hrns_core::{Cone, LatticePoint};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn pt(coords: &[i64]) -> LatticePoint {
    LatticePoint::new(coords.to_vec())
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Nonnegative-combination membership by exhaustive multiplicity search.
/// Exponential in the number of generators; intended for small boxes only.
pub fn brute_member(gens: &[LatticePoint], target: &LatticePoint) -> bool {
    if !target.is_nonnegative() {
        return false;
    }
    brute_rec(gens, target.clone())
}

fn brute_rec(gens: &[LatticePoint], remaining: LatticePoint) -> bool {
    if remaining.is_zero() {
        return true;
    }
    let Some((first, rest)) = gens.split_first() else {
        return false;
    };
    let mut cur = remaining;
    loop {
        if brute_rec(rest, cur.clone()) {
            return true;
        }
        match cur.checked_sub(first) {
            Ok(next) if next.is_nonnegative() => cur = next,
            _ => return false,
        }
    }
}

/// All cone members in the box [0, bound], by brute force.
pub fn brute_box_set(gens: &[LatticePoint], bound: &LatticePoint) -> BTreeSet<LatticePoint> {
    let rank = bound.rank();
    let mut out = BTreeSet::new();
    let mut cur = vec![0i64; rank];
    loop {
        let p = LatticePoint::new(cur.clone());
        if brute_member(gens, &p) {
            out.insert(p);
        }
        let mut axis = rank;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if cur[axis] < bound.get(axis) {
                cur[axis] += 1;
                break;
            }
            cur[axis] = 0;
        }
    }
}

/// Box membership set computed through the library.
pub fn box_set(cone: &Cone, bound: &LatticePoint) -> BTreeSet<LatticePoint> {
    cone.enumerate_box(bound)
        .expect("box enumeration")
        .into_iter()
        .collect()
}

/// A random rank-2 cone with 2..=4 nonzero generators in [0, 6]^2.
pub fn random_rank2_cone(r: &mut StdRng) -> Cone {
    let count = r.gen_range(2..=4usize);
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let g = pt(&[r.gen_range(0..=6), r.gen_range(0..=6)]);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    Cone::new(2, gens).expect("nonzero nonnegative generators")
}

/// Largest singular value of a dense complex matrix, via a classical Jacobi
/// eigensolver on the Hermitian product A* A. The complex Hermitian matrix is
/// embedded as the real symmetric matrix [[Re, -Im], [Im, Re]] (every
/// eigenvalue appears twice; the maximum is unchanged). This shares no code
/// with the library's sparse power iteration.
pub fn largest_singular_value_dense(a: &[Vec<Complex64>]) -> f64 {
    let rows = a.len();
    if rows == 0 {
        return 0.0;
    }
    let cols = a[0].len();
    if cols == 0 {
        return 0.0;
    }
    // h = A* A, Hermitian cols x cols.
    let mut h = vec![vec![Complex64::new(0.0, 0.0); cols]; cols];
    for (i, hrow) in h.iter_mut().enumerate() {
        for (j, hij) in hrow.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for arow in a.iter().take(rows) {
                acc += arow[i].conj() * arow[j];
            }
            *hij = acc;
        }
    }
    let n = cols;
    let m = 2 * n;
    let mut s = vec![vec![0.0f64; m]; m];
    for i in 0..n {
        for j in 0..n {
            s[i][j] = h[i][j].re;
            s[i + n][j + n] = h[i][j].re;
            s[i][j + n] = -h[i][j].im;
            s[i + n][j] = h[i][j].im;
        }
    }
    let max_eig = jacobi_max_eigenvalue(&mut s);
    max_eig.max(0.0).sqrt()
}

/// Classical Jacobi iteration on a real symmetric matrix: rotate away the
/// largest off-diagonal entry until all of them are negligible, then read the
/// largest diagonal entry.
// Pivot scans and rotations touch two rows or columns at once; indexed loops
// are the clear way to write them.
#[allow(clippy::needless_range_loop)]
fn jacobi_max_eigenvalue(s: &mut [Vec<f64>]) -> f64 {
    let m = s.len();
    if m == 0 {
        return 0.0;
    }
    let scale = s
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    let threshold = 1e-13 * scale;
    for _ in 0..40_000 {
        let mut p = 0;
        let mut q = 1;
        let mut best = -1.0f64;
        for i in 0..m {
            for j in (i + 1)..m {
                let v = s[i][j].abs();
                if v > best {
                    best = v;
                    p = i;
                    q = j;
                }
            }
        }
        if best <= threshold {
            break;
        }
        let theta = 0.5 * (2.0 * s[p][q]).atan2(s[p][p] - s[q][q]);
        let (sin, cos) = theta.sin_cos();
        for k in 0..m {
            let skp = s[k][p];
            let skq = s[k][q];
            s[k][p] = cos * skp + sin * skq;
            s[k][q] = -sin * skp + cos * skq;
        }
        for k in 0..m {
            let spk = s[p][k];
            let sqk = s[q][k];
            s[p][k] = cos * spk + sin * sqk;
            s[q][k] = -sin * spk + cos * sqk;
        }
    }
    (0..m).map(|i| s[i][i]).fold(f64::NEG_INFINITY, f64::max)
}

/// Euclidean norm of a coordinate vector, summed in index order.
pub fn vec_l2(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
