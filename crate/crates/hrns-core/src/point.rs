//! Integer lattice points with checked arithmetic.
//!
//! Every coordinate overflow is surfaced as an [`Overflow`] error; nothing in
//! this crate wraps silently.

use std::fmt;

use thiserror::Error;

/// Checked integer arithmetic on coordinates ran out of range.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("integer overflow in lattice point arithmetic")]
pub struct Overflow;

/// A point of `Z^d`. Comparison is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    /// Rank-1 convenience constructor.
    pub fn scalar(n: i64) -> Self {
        Self { coords: vec![n] }
    }

    pub fn zero(rank: usize) -> Self {
        Self { coords: vec![0; rank] }
    }

    /// `value * e_axis` in rank `rank`.
    pub fn axis_multiple(rank: usize, axis: usize, value: i64) -> Self {
        assert!(axis < rank, "axis {axis} out of range for rank {rank}");
        let mut coords = vec![0; rank];
        coords[axis] = value;
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    /// Coordinatewise `self <= other`. Both points must share a rank.
    pub fn le(&self, other: &Self) -> bool {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Coordinatewise strict inequality, used for box schedules.
    pub fn lt_strict(&self, other: &Self) -> bool {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a < b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Overflow> {
        debug_assert_eq!(self.rank(), other.rank());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Overflow> {
        debug_assert_eq!(self.rank(), other.rank());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { coords })
    }

    pub fn checked_scale(&self, factor: i64) -> Result<Self, Overflow> {
        let coords = self
            .coords
            .iter()
            .map(|&c| c.checked_mul(factor).ok_or(Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { coords })
    }

    /// Sum of absolute coordinate values.
    pub fn l1(&self) -> u64 {
        self.coords.iter().map(|&c| c.unsigned_abs()).sum()
    }

    pub fn max_coord(&self) -> i64 {
        self.coords.iter().copied().max().unwrap_or(0)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        Self::new(coords)
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(coords: &[i64]) -> Self {
        Self::new(coords.to_vec())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
