//! Finitely supported polynomials `sum lambda_s z^s` with exponents in
//! `Z_+^d`, the coefficient data behind every truncated operator and torus
//! sweep in this crate.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::point::{LatticePoint, Overflow};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("exponent {point} has a negative coordinate")]
    NegativeExponent { point: LatticePoint },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Sparse polynomial keyed by exponent. Zero coefficients are never stored,
/// so the support is exactly the key set.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    terms: BTreeMap<LatticePoint, Complex64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn monomial(exp: LatticePoint, coeff: Complex64) -> Result<Self, PolyError> {
        Self::from_terms([(exp, coeff)])
    }

    /// Builds a polynomial, summing duplicate exponents and dropping exact
    /// zero coefficients.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (LatticePoint, Complex64)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        let mut rank: Option<usize> = None;
        for (exp, coeff) in terms {
            if !exp.is_nonnegative() {
                return Err(PolyError::NegativeExponent { point: exp });
            }
            match rank {
                None => rank = Some(exp.rank()),
                Some(r) if r != exp.rank() => {
                    return Err(PolyError::RankMismatch { expected: r, found: exp.rank() })
                }
                _ => {}
            }
            *map.entry(exp).or_insert(Complex64::new(0.0, 0.0)) += coeff;
        }
        map.retain(|_, c| c.re != 0.0 || c.im != 0.0);
        Ok(Self { terms: map })
    }

    /// Rank-1 convenience: terms given as `(exponent, coefficient)` pairs.
    pub fn univariate(terms: &[(i64, Complex64)]) -> Result<Self, PolyError> {
        Self::from_terms(terms.iter().map(|&(e, c)| (LatticePoint::scalar(e), c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ambient rank, `None` for the zero polynomial (compatible with any).
    pub fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(|p| p.rank())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.terms.keys()
    }

    pub fn coeff(&self, exp: &LatticePoint) -> Complex64 {
        self.terms.get(exp).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Largest total degree `|s|_1` over the support, 0 for the zero
    /// polynomial.
    pub fn max_total_degree(&self) -> u64 {
        self.terms.keys().map(|p| p.l1()).max().unwrap_or(0)
    }

    fn check_rank_against(&self, rank: usize) -> Result<(), PolyError> {
        match self.rank() {
            Some(r) if r != rank => Err(PolyError::RankMismatch { expected: rank, found: r }),
            _ => Ok(()),
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if let (Some(a), Some(b)) = (self.rank(), other.rank()) {
            if a != b {
                return Err(PolyError::RankMismatch { expected: a, found: b });
            }
        }
        let mut acc: Vec<(LatticePoint, Complex64)> = Vec::with_capacity(self.len() * other.len());
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                acc.push((s.checked_add(t)?, a * b));
            }
        }
        Self::from_terms(acc)
    }

    /// Twists each coefficient by the unimodular factor `e^(i theta . s)`.
    /// The support is unchanged.
    pub fn rotate(&self, theta: &[f64]) -> Result<Self, PolyError> {
        self.check_rank_against(theta.len())?;
        let terms = self.terms.iter().map(|(s, c)| {
            let phase: f64 = s
                .coords()
                .iter()
                .zip(theta)
                .map(|(&e, &t)| e as f64 * t)
                .sum();
            (s.clone(), c * Complex64::cis(phase))
        });
        // Unimodular factors cannot create zero coefficients.
        Ok(Self { terms: terms.collect() })
    }
}
