//! Truncated shift operators on the cone and the torus-function norm they
//! converge to.
//!
//! The cone acts on square-summable sequences over its own points by
//! translation: the operator for `s` sends the basis vector at `t` to the one
//! at `s + t`. Everything here is compressed to the finite box `[0, bound]`,
//! which keeps each operator a sparse 0/1-pattern matrix and makes the norms
//! computable: compressions to nested boxes have nondecreasing norms, all
//! bounded by the sup of the symbol over the torus, and in practice they
//! climb to it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::cone::{Cone, ConeError};
use crate::exec;
use crate::point::{LatticePoint, Overflow};
use crate::poly::Polynomial;

/// Hard cap on power-iteration steps before giving up.
pub const POWER_ITERATION_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("{point} is not a member of the cone")]
    NotMember { point: LatticePoint },
    #[error("support escapes cone: {}", .offenders.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))]
    SupportEscapesCone { offenders: Vec<LatticePoint> },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("{point} is outside the truncation basis")]
    OutsideBasis { point: LatticePoint },
    #[error("tolerance must be positive, got {tol}")]
    NonpositiveTolerance { tol: f64 },
    #[error("iteration budget exhausted after {budget} power steps")]
    IterationBudgetExhausted { budget: usize },
    #[error("grid too coarse: {got} points per dimension, need at least {required} for degree {degree}")]
    GridTooCoarse { got: usize, required: usize, degree: u64 },
    #[error("schedule is empty")]
    EmptySchedule,
    #[error("schedule entry {index} does not strictly increase every coordinate")]
    ScheduleNotIncreasing { index: usize },
    #[error("hypothesis violated: cone is not a higher-rank numerical semigroup (axis {axis} has gcd {gcd})")]
    HypothesisViolated { axis: usize, gcd: u64 },
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// Cone members inside `[0, bound]` in lexicographic order; the index space
/// that truncated operators act on.
#[derive(Debug, Clone)]
pub struct FockBasis {
    cone: Cone,
    bound: LatticePoint,
    points: Vec<LatticePoint>,
    index: BTreeMap<LatticePoint, usize>,
}

impl FockBasis {
    pub fn new(cone: &Cone, bound: &LatticePoint) -> Result<Arc<Self>, FockError> {
        let table = cone.box_table(bound)?;
        let points = table.members_lex();
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(Arc::new(Self { cone: cone.clone(), bound: bound.clone(), points, index }))
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &LatticePoint {
        &self.points[index]
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn bound(&self) -> &LatticePoint {
        &self.bound
    }
}

/// Immutable sparse matrix on a [`FockBasis`], stored by rows and, for the
/// adjoint, by columns.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    basis: Arc<FockBasis>,
    rows: Vec<Vec<(u32, Complex64)>>,
    cols: Vec<Vec<(u32, Complex64)>>,
}

impl TruncatedOperator {
    fn from_entries(basis: Arc<FockBasis>, entries: Vec<(usize, usize, Complex64)>) -> Self {
        let dim = basis.dim();
        let mut cells: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for (r, c, v) in entries {
            debug_assert!(r < dim && c < dim);
            *cells.entry((r, c)).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        let mut rows = vec![Vec::new(); dim];
        let mut cols = vec![Vec::new(); dim];
        for ((r, c), v) in cells {
            if v != Complex64::new(0.0, 0.0) {
                rows[r].push((c as u32, v));
                cols[c].push((r as u32, v));
            }
        }
        Self { basis, rows, cols }
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        match self.rows[row].binary_search_by_key(&(col as u32), |&(c, _)| c) {
            Ok(i) => self.rows[row][i].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut m = vec![vec![Complex64::new(0.0, 0.0); self.dim()]; self.dim()];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m[r][c as usize] = v;
            }
        }
        m
    }

    /// Matrix-vector product. Each output entry is a sequential sum over one
    /// row, so the result does not depend on the parallel schedule.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim());
        exec::map_items(&self.rows, self.nnz(), |row| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(c, v) in row {
                acc += v * x[c as usize];
            }
            acc
        })
    }

    /// Adjoint matrix-vector product, summed per column in storage order.
    pub fn apply_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim());
        exec::map_items(&self.cols, self.nnz(), |col| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(r, v) in col {
                acc += v.conj() * x[r as usize];
            }
            acc
        })
    }
}

fn l2_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// The translation operator of a cone member `s`, compressed to the box.
///
/// Column `t` carries a single 1 in row `s + t` when `s + t` stays inside
/// the box, and is zero otherwise; `s + t` is automatically a member.
pub fn fock_matrix(
    cone: &Cone,
    s: &LatticePoint,
    bound: &LatticePoint,
) -> Result<TruncatedOperator, FockError> {
    let basis = FockBasis::new(cone, bound)?;
    fock_matrix_on(&basis, s)
}

/// As [`fock_matrix`], reusing an already enumerated basis.
pub fn fock_matrix_on(
    basis: &Arc<FockBasis>,
    s: &LatticePoint,
) -> Result<TruncatedOperator, FockError> {
    if s.rank() != basis.cone().rank() {
        return Err(FockError::RankMismatch { expected: basis.cone().rank(), found: s.rank() });
    }
    if !basis.cone().membership(s)?.member {
        return Err(FockError::NotMember { point: s.clone() });
    }
    let mut entries = Vec::new();
    for (col, t) in basis.points().iter().enumerate() {
        let u = s.checked_add(t)?;
        if let Some(row) = basis.index_of(&u) {
            entries.push((row, col, Complex64::new(1.0, 0.0)));
        }
    }
    Ok(TruncatedOperator::from_entries(basis.clone(), entries))
}

/// The compression of `Σ λ_s V_s` to the box: the coefficient-weighted sum
/// of the translation matrices of the support points.
///
/// Every support point must be a member of the cone; offenders are reported
/// sorted.
pub fn apply_polynomial(
    cone: &Cone,
    p: &Polynomial,
    bound: &LatticePoint,
) -> Result<TruncatedOperator, FockError> {
    let basis = FockBasis::new(cone, bound)?;
    apply_polynomial_on(&basis, p)
}

/// As [`apply_polynomial`], reusing an already enumerated basis.
pub fn apply_polynomial_on(
    basis: &Arc<FockBasis>,
    p: &Polynomial,
) -> Result<TruncatedOperator, FockError> {
    let cone = basis.cone();
    if let Some(rank) = p.rank() {
        if rank != cone.rank() {
            return Err(FockError::RankMismatch { expected: cone.rank(), found: rank });
        }
    }
    let mut offenders = Vec::new();
    for s in p.support() {
        if !cone.membership(s)?.member {
            offenders.push(s.clone());
        }
    }
    if !offenders.is_empty() {
        offenders.sort();
        return Err(FockError::SupportEscapesCone { offenders });
    }
    let mut entries = Vec::new();
    for (s, coeff) in p.terms() {
        for (col, t) in basis.points().iter().enumerate() {
            let u = s.checked_add(t)?;
            if let Some(row) = basis.index_of(&u) {
                entries.push((row, col, *coeff));
            }
        }
    }
    Ok(TruncatedOperator::from_entries(basis.clone(), entries))
}

/// Reads a coefficient back off the operator: the matrix entry in row `s`,
/// column 0. For `apply_polynomial(p)` this recovers `p`'s coefficient at
/// `s` exactly, because distinct support points hit distinct rows of the
/// vacuum column.
pub fn fourier_coefficient(
    op: &TruncatedOperator,
    s: &LatticePoint,
) -> Result<Complex64, FockError> {
    let basis = op.basis();
    let row = basis.index_of(s).ok_or_else(|| FockError::OutsideBasis { point: s.clone() })?;
    let zero = LatticePoint::zero(basis.cone().rank());
    let col = basis.index_of(&zero).expect("0 is a member of every cone and every box");
    Ok(op.entry(row, col))
}

/// Largest singular value by power iteration on the self-adjoint product
/// `A* A`.
///
/// The start vector is the normalized all-ones vector; if that happens to
/// lie in the kernel, the first basis vector with a nonzero column takes
/// over. Iteration stops once successive estimates differ by less than
/// `tol * (1 + estimate)`. The zero operator short-circuits to 0 exactly.
pub fn operator_norm(op: &TruncatedOperator, tol: f64) -> Result<f64, FockError> {
    if tol <= 0.0 {
        return Err(FockError::NonpositiveTolerance { tol });
    }
    if op.nnz() == 0 {
        return Ok(0.0);
    }
    let n = op.dim();
    let mut x = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut used_fallback = false;
    let mut prev = -1.0f64;
    for _ in 0..POWER_ITERATION_BUDGET {
        let y = op.apply(&x);
        let sigma = l2_norm(&y);
        if sigma == 0.0 {
            if used_fallback {
                return Ok(0.0);
            }
            // x is in the kernel; restart from a column that provably is not.
            used_fallback = true;
            let j = (0..n).find(|&j| !op.cols[j].is_empty()).expect("nnz > 0");
            x = vec![Complex64::new(0.0, 0.0); n];
            x[j] = Complex64::new(1.0, 0.0);
            continue;
        }
        if (sigma - prev).abs() < tol * (1.0 + sigma) {
            return Ok(sigma);
        }
        prev = sigma;
        let z = op.apply_adjoint(&y);
        let nz = l2_norm(&z);
        if nz == 0.0 {
            return Ok(sigma);
        }
        let inv = 1.0 / nz;
        x = z.iter().map(|c| c * inv).collect();
    }
    Err(FockError::IterationBudgetExhausted { budget: POWER_ITERATION_BUDGET })
}

/// Default torus-grid resolution per dimension.
pub fn default_grid_per_dim(rank: usize) -> usize {
    match rank {
        0 | 1 => 4096,
        2 => 512,
        _ => 128,
    }
}

/// Maximum of `|Σ λ_s z^s|` over the uniform `grid_per_dim^d` grid of the
/// torus, together with a certified error bound.
///
/// With `D` the maximum total degree and `N` the grid resolution, the
/// returned bound is `(π·D/N)·Σ|λ_s|·|s|₁`, from the gradient bound for
/// trigonometric polynomials; the true supremum lies within
/// `[value, value + error_bound]`.
pub fn torus_norm(p: &Polynomial, grid_per_dim: usize) -> Result<(f64, f64), FockError> {
    let degree = p.max_total_degree();
    let required = 2 * (1 + degree as usize);
    if grid_per_dim < required {
        return Err(FockError::GridTooCoarse { got: grid_per_dim, required, degree });
    }
    let Some(rank) = p.rank() else {
        return Ok((0.0, 0.0));
    };
    let n = grid_per_dim;
    let roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::cis(2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let terms: Vec<(Vec<i64>, Complex64)> =
        p.terms().map(|(s, c)| (s.coords().to_vec(), *c)).collect();
    let total = n.checked_pow(rank as u32).expect("grid fits in usize");
    let value = exec::max_over(total, total * terms.len(), |idx| {
        let mut k = vec![0i64; rank];
        let mut rem = idx;
        for kj in k.iter_mut().rev() {
            *kj = (rem % n) as i64;
            rem /= n;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (exp, coeff) in &terms {
            let mut phase = 0i64;
            for (kj, sj) in k.iter().zip(exp) {
                phase += kj * sj;
            }
            acc += coeff * roots[phase.rem_euclid(n as i64) as usize];
        }
        acc.norm()
    });
    let weight: f64 = p.terms().map(|(s, c)| c.norm() * s.l1() as f64).sum();
    let error_bound = std::f64::consts::PI * degree as f64 / n as f64 * weight;
    Ok((value, error_bound))
}

/// Truncated norms along a nested schedule of boxes, against the torus
/// value they converge to.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub schedule: Vec<LatticePoint>,
    pub fock_norms: Vec<f64>,
    pub torus_value: f64,
    pub torus_error_bound: f64,
    pub grid_per_dim: usize,
    /// `torus_value - fock_norms.last()`; shrinks along the schedule.
    pub gap: f64,
}

/// Computes the truncated operator norm of `p` at every bound in the
/// schedule and compares against the torus value.
///
/// The schedule must be nonempty and strictly increasing in every
/// coordinate, so the boxes are nested and the norms nondecreasing. The
/// grid resolution is the rank default, escalated if the degree demands it.
pub fn norm_gap_report(
    cone: &Cone,
    p: &Polynomial,
    schedule: &[LatticePoint],
    tol: f64,
) -> Result<NormReport, FockError> {
    if schedule.is_empty() {
        return Err(FockError::EmptySchedule);
    }
    for (i, pair) in schedule.windows(2).enumerate() {
        if !pair[0].lt_strict(&pair[1]) {
            return Err(FockError::ScheduleNotIncreasing { index: i + 1 });
        }
    }
    let mut fock_norms = Vec::with_capacity(schedule.len());
    for bound in schedule {
        let op = apply_polynomial(cone, p, bound)?;
        fock_norms.push(operator_norm(&op, tol)?);
    }
    let grid = default_grid_per_dim(cone.rank()).max(2 * (1 + p.max_total_degree() as usize));
    let (torus_value, torus_error_bound) = torus_norm(p, grid)?;
    let gap = torus_value - fock_norms.last().copied().unwrap_or(0.0);
    Ok(NormReport {
        schedule: schedule.to_vec(),
        fock_norms,
        torus_value,
        torus_error_bound,
        grid_per_dim: grid,
        gap,
    })
}

/// Finitely supported complex vector on the full lattice `Z^d`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector {
    terms: BTreeMap<LatticePoint, Complex64>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticePoint, Complex64)>) -> Self {
        let mut v = Self::new();
        for (p, c) in terms {
            v.add(&p, c);
        }
        v
    }

    pub fn basis_vector(p: LatticePoint) -> Self {
        Self::from_terms([(p, Complex64::new(1.0, 0.0))])
    }

    pub fn add(&mut self, p: &LatticePoint, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(p);
        }
    }

    pub fn get(&self, p: &LatticePoint) -> Complex64 {
        self.terms.get(p).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Translate every support point by `t`. Translation preserves the
    /// multiset of coefficients, so the norm is preserved bit for bit.
    pub fn shift(&self, t: &LatticePoint) -> Result<Self, Overflow> {
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            terms.insert(p.checked_add(t)?, *c);
        }
        Ok(Self { terms })
    }

    /// `self + coeff * other`.
    pub fn scaled_add(&mut self, coeff: Complex64, other: &Self) {
        for (p, c) in &other.terms {
            self.add(p, coeff * c);
        }
    }

    /// Euclidean norm, accumulated in sorted support order.
    pub fn l2_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Translates a finitely supported vector on `Z^d` into the cone without
/// changing its norm.
///
/// For each support point `g` outside the cone, the correction
/// `t_g = Σ_j (conductor_j + |g_j|) e_j` is a member (each coordinate
/// clears its axis conductor) and so is `t_g + g`; support points already
/// in the cone contribute nothing. The returned `t` is the sum of the
/// corrections, and the shifted vector carries `xi[g]` at `t + g`, which is
/// a member for every support point.
pub fn dilation_shift(
    cone: &Cone,
    xi: &SparseVector,
) -> Result<(LatticePoint, SparseVector), FockError> {
    let (ok, profiles) = cone.is_higher_rank_numerical()?;
    if !ok {
        let bad = profiles.iter().find(|p| p.gcd != 1).expect("some axis failed");
        return Err(FockError::HypothesisViolated { axis: bad.axis, gcd: bad.gcd });
    }
    let conductors: Vec<i64> = profiles
        .iter()
        .map(|p| p.conductor.expect("gcd 1 axes have conductors") as i64)
        .collect();
    let d = cone.rank();
    let mut t = LatticePoint::zero(d);
    for g in xi.support() {
        if g.rank() != d {
            return Err(FockError::RankMismatch { expected: d, found: g.rank() });
        }
        let member = g.is_nonnegative() && cone.membership(g)?.member;
        if !member {
            let coords: Vec<i64> = conductors
                .iter()
                .zip(g.coords())
                .map(|(&c, &gj)| c + gj.abs())
                .collect();
            t = t.checked_add(&LatticePoint::new(coords))?;
        }
    }
    let shifted = xi.shift(&t)?;
    debug_assert!(shifted.support().all(|p| {
        p.is_nonnegative() && cone.membership(p).map(|m| m.member).unwrap_or(false)
    }));
    Ok((t, shifted))
}
