//! Isomorphism of cones up to coordinate permutation, and classification of
//! candidate generator maps as integer matrices.
//!
//! Two higher-rank numerical semigroups are isomorphic exactly when one is a
//! coordinate permutation of the other: any additive bijection extends to a
//! group automorphism of `Z^d` whose matrix and inverse both have
//! nonnegative integer entries, and such a matrix must be a permutation
//! matrix (its inverse could not otherwise cancel a row with two positive
//! entries). The search here compares canonical minimal generating sets
//! under all `d!` permutations, so ranks are capped at
//! [`MAX_PERMUTATION_RANK`].

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use thiserror::Error;

use crate::cone::{Cone, ConeError};
use crate::point::LatticePoint;

/// Permutation search is brute force over `d!` candidates.
pub const MAX_PERMUTATION_RANK: usize = 8;

type Q = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("rank {rank} exceeds the permutation search limit {limit}")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("hypothesis violated: {side} cone is not a higher-rank numerical semigroup (axis {axis} has gcd {gcd})")]
    HypothesisViolated { side: &'static str, axis: usize, gcd: u64 },
    #[error("images do not form a permutation of 0..{rank}")]
    InvalidPermutation { rank: usize },
    #[error("no image provided for generator {generator}")]
    MissingGeneratorImage { generator: LatticePoint },
    #[error("image {image} of generator {generator} has a negative coordinate")]
    ImageOutsideOrthant { generator: LatticePoint, image: LatticePoint },
    #[error("image rank mismatch: expected {expected}, found {found}")]
    ImageRankMismatch { expected: usize, found: usize },
    #[error("generators span rank {found} < {expected}; the induced matrix is not determined")]
    RankDeficientSpan { expected: usize, found: usize },
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// A permutation of coordinate axes; `images[i]` is where axis `i` goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, IsoError> {
        let rank = images.len();
        let mut seen = vec![false; rank];
        for &i in &images {
            if i >= rank || seen[i] {
                return Err(IsoError::InvalidPermutation { rank });
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(rank: usize) -> Self {
        Self { images: (0..rank).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    /// Sends coordinate `i` of `p` to coordinate `images[i]`.
    pub fn apply_point(&self, p: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(p.rank(), self.images.len());
        let mut coords = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            coords[j] = p.get(i);
        }
        LatticePoint::new(coords)
    }

    /// The matrix `M` with `M p = apply_point(p)` for column vectors.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let d = self.images.len();
        let mut m = vec![vec![0i64; d]; d];
        for (i, &j) in self.images.iter().enumerate() {
            m[j][i] = 1;
        }
        m
    }
}

/// How a generator map fails or succeeds to be induced by a lattice
/// automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    Permutation,
    UnimodularNonPermutation,
    NotUnimodular,
    NotIntegral,
    /// The map breaks an integer relation among the generators, so no linear
    /// map induces it at all.
    NotAdditive,
}

impl std::fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MatrixClass::Permutation => "permutation",
            MatrixClass::UnimodularNonPermutation => "unimodular-non-permutation",
            MatrixClass::NotUnimodular => "not-unimodular",
            MatrixClass::NotIntegral => "not-integral",
            MatrixClass::NotAdditive => "not-additive",
        };
        f.write_str(s)
    }
}

/// The matrix induced by a generator map, when one exists.
///
/// `matrix` is present exactly when the map is induced by an integer matrix
/// (rows index the target rank, columns the source rank); it is absent for
/// the `NotAdditive` and `NotIntegral` classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrixWitness {
    pub matrix: Option<Vec<Vec<i64>>>,
    pub classification: MatrixClass,
}

/// Positive answer of [`decide_algebra_isomorphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub permutation: Permutation,
    /// The permutation is rigid; rotations contribute the only continuous
    /// freedom.
    pub rotation_note: &'static str,
}

pub const ROTATION_NOTE: &str = "the permutation is unique; composing it with any coordinatewise \
     rotation, which scales the basis vector e_n by e^(i theta . n) for a parameter theta in \
     [0, 2*pi)^d, yields the remaining isomorphisms, and those fix the vacuum state";

/// Generators that are not sums of two nonzero members. The result depends
/// only on the monoid, not on the presenting generator set.
pub fn minimal_generators(cone: &Cone) -> Result<Vec<LatticePoint>, ConeError> {
    let mut out = Vec::new();
    for g in cone.generators() {
        let table = cone.box_table(g)?;
        let mut decomposable = false;
        for a in table.members_lex() {
            if a.is_zero() || &a == g {
                continue;
            }
            // a <= g coordinatewise inside the box, so g - a stays in it.
            let rest = g.checked_sub(&a)?;
            if table.contains(&rest) {
                decomposable = true;
                break;
            }
        }
        if !decomposable {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// All permutations of `0..rank` in lexicographic order of their image
/// vectors.
fn permutations_lex(rank: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let rank = used.len();
        if prefix.len() == rank {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rank {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; rank], &mut out);
    out
}

/// Finds the lexicographically first permutation carrying the minimal
/// generators of `c2` onto those of `c1`, if any.
pub fn equal_up_to_permutation(c1: &Cone, c2: &Cone) -> Result<Option<Permutation>, IsoError> {
    if c1.rank() != c2.rank() {
        return Ok(None);
    }
    let rank = c1.rank();
    if rank > MAX_PERMUTATION_RANK {
        return Err(IsoError::RankTooLarge { rank, limit: MAX_PERMUTATION_RANK });
    }
    let m1: BTreeSet<LatticePoint> = minimal_generators(c1)?.into_iter().collect();
    let m2 = minimal_generators(c2)?;
    for images in permutations_lex(rank) {
        let sigma = Permutation { images };
        let mapped: BTreeSet<LatticePoint> = m2.iter().map(|p| sigma.apply_point(p)).collect();
        if mapped == m1 {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

/// Reduced row echelon form over the rationals. Returns the pivot columns.
/// Row operations touch two rows at once, so indexed loops are the clear
/// way to write them.
#[allow(clippy::needless_range_loop)]
fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| m[r][col] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for j in col..cols {
            let v = m[row][j] * inv;
            m[row][j] = v;
        }
        for r in 0..rows {
            if r != row && m[r][col] != Q::from_integer(0) {
                let f = m[r][col];
                for j in col..cols {
                    let v = m[r][j] - f * m[row][j];
                    m[r][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Pivot columns and a primitive integer basis of the kernel of the matrix
/// whose columns are `columns`.
fn kernel_basis(rank: usize, columns: &[LatticePoint]) -> (Vec<usize>, Vec<Vec<i128>>) {
    let n = columns.len();
    let mut m: Vec<Vec<Q>> = (0..rank)
        .map(|r| columns.iter().map(|g| Q::from_integer(g.get(r) as i128)).collect())
        .collect();
    let pivots = rref(&mut m);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut x = vec![Q::from_integer(0); n];
        x[free] = Q::from_integer(1);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -m[i][free];
        }
        let lcm = x
            .iter()
            .fold(1i128, |acc, q| num_integer::lcm(acc, *q.denom()));
        let mut v: Vec<i128> = x.iter().map(|q| q.numer() * (lcm / q.denom())).collect();
        let g = v.iter().fold(0i128, |acc, &a| num_integer::gcd(acc, a));
        if g > 1 {
            for a in &mut v {
                *a /= g;
            }
        }
        basis.push(v);
    }
    (pivots, basis)
}

/// Inverse of a square rational matrix; `None` when singular.
fn invert(mat: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<Q>> = mat
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| Q::from_integer((c == r) as i128)));
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by fraction-free elimination.
fn det_bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn is_permutation_matrix(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return false;
    }
    let mut col_count = vec![0usize; n];
    for row in m {
        let mut row_count = 0;
        for (j, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => {
                    row_count += 1;
                    col_count[j] += 1;
                }
                _ => return false,
            }
        }
        if row_count != 1 {
            return false;
        }
    }
    col_count.iter().all(|&c| c == 1)
}

/// Classifies the linear map induced by sending each generator of `c1` to
/// its image under `gen_map`.
///
/// The map is additive exactly when it kills every integer relation among
/// the generators, i.e. the kernel of the generator matrix maps to zero.
/// When additive and the generators span, the rational matrix is uniquely
/// determined and is classified by integrality, determinant and shape.
pub fn induced_matrix(
    c1: &Cone,
    c2: &Cone,
    gen_map: &BTreeMap<LatticePoint, LatticePoint>,
) -> Result<IntegerMatrixWitness, IsoError> {
    let d1 = c1.rank();
    let d2 = c2.rank();
    let gens = c1.generators();
    let mut images = Vec::with_capacity(gens.len());
    for g in gens {
        let img = gen_map
            .get(g)
            .ok_or_else(|| IsoError::MissingGeneratorImage { generator: g.clone() })?;
        if img.rank() != d2 {
            return Err(IsoError::ImageRankMismatch { expected: d2, found: img.rank() });
        }
        if !img.is_nonnegative() {
            return Err(IsoError::ImageOutsideOrthant { generator: g.clone(), image: img.clone() });
        }
        images.push(img.clone());
    }

    let (pivots, kernel) = kernel_basis(d1, gens);
    for relation in &kernel {
        for r in 0..d2 {
            let sum: i128 = relation
                .iter()
                .zip(&images)
                .map(|(&k, img)| k * img.get(r) as i128)
                .sum();
            if sum != 0 {
                return Ok(IntegerMatrixWitness { matrix: None, classification: MatrixClass::NotAdditive });
            }
        }
    }
    if pivots.len() < d1 {
        return Err(IsoError::RankDeficientSpan { expected: d1, found: pivots.len() });
    }

    // Solve M * B = Img_B on the pivot columns; additivity extends the
    // identity M g = img to every generator, which we still verify.
    let b: Vec<Vec<Q>> = (0..d1)
        .map(|r| pivots.iter().map(|&c| Q::from_integer(gens[c].get(r) as i128)).collect())
        .collect();
    let b_inv = invert(&b).expect("pivot columns are independent");
    let mut m = vec![vec![Q::from_integer(0); d1]; d2];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = pivots
                .iter()
                .enumerate()
                .map(|(k, &p)| Q::from_integer(images[p].get(r) as i128) * b_inv[k][c])
                .sum();
        }
    }
    for (g, img) in gens.iter().zip(&images) {
        for (r, mrow) in m.iter().enumerate() {
            let got: Q = (0..d1).map(|c| mrow[c] * Q::from_integer(g.get(c) as i128)).sum();
            debug_assert_eq!(got, Q::from_integer(img.get(r) as i128));
        }
    }

    if m.iter().flatten().any(|q| !q.is_integer()) {
        return Ok(IntegerMatrixWitness { matrix: None, classification: MatrixClass::NotIntegral });
    }
    let mi: Vec<Vec<i64>> = m
        .iter()
        .map(|row| row.iter().map(|q| *q.numer() as i64).collect())
        .collect();
    let classification = if d1 != d2 {
        MatrixClass::NotUnimodular
    } else {
        let det = det_bareiss(
            mi.iter()
                .map(|row| row.iter().map(|&v| v as i128).collect())
                .collect(),
        );
        if det.abs() != 1 {
            MatrixClass::NotUnimodular
        } else if is_permutation_matrix(&mi) {
            MatrixClass::Permutation
        } else {
            MatrixClass::UnimodularNonPermutation
        }
    };
    Ok(IntegerMatrixWitness { matrix: Some(mi), classification })
}

/// Decides whether the semigroup algebras of two higher-rank numerical
/// semigroups are isomorphic. The witness is a coordinate permutation;
/// the answer is negative exactly when no permutation matches.
pub fn decide_algebra_isomorphism(c1: &Cone, c2: &Cone) -> Result<Option<IsoWitness>, IsoError> {
    for (side, cone) in [("first", c1), ("second", c2)] {
        let (ok, profiles) = cone.is_higher_rank_numerical()?;
        if !ok {
            let bad = profiles.iter().find(|p| p.gcd != 1).expect("some axis failed");
            return Err(IsoError::HypothesisViolated { side, axis: bad.axis, gcd: bad.gcd });
        }
    }
    Ok(equal_up_to_permutation(c1, c2)?
        .map(|permutation| IsoWitness { permutation, rotation_note: ROTATION_NOTE }))
}
