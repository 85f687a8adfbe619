//! Finitely generated submonoids of `Z_+^d` and their exact combinatorics.
//!
//! A [`Cone`] is presented by finitely many nonzero generators with
//! nonnegative coordinates. Membership of a point `m` is decided by dynamic
//! programming over the coordinatewise box `[0, m]`: the box is closed under
//! `p -> p - g` for every generator `g`, so the recurrence
//! `member(p) = (p == 0) or any(member(p - g))` is complete. Axis sections
//! `S(i) = { n : n * e_i in S }` reduce exactly to ordinary numerical
//! semigroups: a sum of nonnegative vectors lies on an axis only if every
//! summand does, so `S(i)` is generated by the `i`-th coordinates of the
//! generators supported on axis `i` alone. That makes the axis gcd exact;
//! the configurable search bound only limits the conductor scan.

use thiserror::Error;

use crate::point::{LatticePoint, Overflow};

/// Default ceiling for axis conductor scans.
pub const AXIS_SEARCH_BOUND: u64 = 10_000;

/// Hard cap on the number of box points a single enumeration may visit.
pub const MAX_BOX_POINTS: usize = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator at position {index} is the zero vector")]
    ZeroGenerator { index: usize },
    #[error("generator {point} has a negative coordinate")]
    NegativeGenerator { point: LatticePoint },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("axis {axis} is out of range for rank {rank}")]
    AxisOutOfRange { axis: usize, rank: usize },
    #[error("axis {axis} search exceeded bound {bound}")]
    AxisSearchExceeded { axis: usize, bound: u64 },
    #[error("box with {points} points exceeds the limit of {limit}")]
    BoxTooLarge { points: u128, limit: usize },
    #[error("bound {point} has a negative coordinate")]
    NegativeBound { point: LatticePoint },
    #[error("search bound must be at least {min}, got {got}")]
    SearchBoundTooSmall { min: u64, got: u64 },
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Membership table for the coordinatewise box `[0, bound]`, filled by the
/// coin-problem recurrence over an arbitrary coin set.
///
/// Shared by cone membership, minimal generator checks and multiplicative
/// derivation of semicharacter samples, which run the same recurrence with
/// different coins.
pub(crate) struct BoxTable {
    rank: usize,
    bound: Vec<i64>,
    strides: Vec<usize>,
    member: Vec<bool>,
    /// Back-pointer per box point: 0 means none, `k + 1` means `coins[k]`.
    back: Vec<u32>,
    coins: Vec<LatticePoint>,
}

impl BoxTable {
    /// Coins must be nonzero points of `Z_+^rank`; the bound must be
    /// nonnegative. Points are visited in lexicographic order, and the first
    /// coin (in the given order) that reaches a point is recorded, so
    /// decompositions are deterministic.
    pub(crate) fn build(
        rank: usize,
        coins: &[LatticePoint],
        bound: &LatticePoint,
    ) -> Result<Self, ConeError> {
        if bound.rank() != rank {
            return Err(ConeError::RankMismatch { expected: rank, found: bound.rank() });
        }
        if !bound.is_nonnegative() {
            return Err(ConeError::NegativeBound { point: bound.clone() });
        }
        let mut total: u128 = 1;
        for &b in bound.coords() {
            total = total.saturating_mul(b as u128 + 1);
        }
        if total > MAX_BOX_POINTS as u128 {
            return Err(ConeError::BoxTooLarge { points: total, limit: MAX_BOX_POINTS });
        }
        let total = total as usize;

        // Row-major strides: lexicographic order on points is increasing
        // linear offset.
        let mut strides = vec![0usize; rank];
        let mut acc = 1usize;
        for i in (0..rank).rev() {
            strides[i] = acc;
            acc *= bound.get(i) as usize + 1;
        }
        let coin_offsets: Vec<usize> = coins
            .iter()
            .map(|g| {
                g.coords()
                    .iter()
                    .zip(&strides)
                    .map(|(&c, &s)| c as usize * s)
                    .sum()
            })
            .collect();

        let mut member = vec![false; total];
        let mut back = vec![0u32; total];
        let mut cur = vec![0i64; rank];
        for idx in 0..total {
            if idx == 0 {
                member[0] = true;
            } else {
                'coin: for (k, g) in coins.iter().enumerate() {
                    for (c, gi) in cur.iter().zip(g.coords()) {
                        if c < gi {
                            continue 'coin;
                        }
                    }
                    if member[idx - coin_offsets[k]] {
                        member[idx] = true;
                        back[idx] = k as u32 + 1;
                        break;
                    }
                }
            }
            // Advance the mixed-radix counter.
            for i in (0..rank).rev() {
                if cur[i] < bound.get(i) {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
        Ok(Self { rank, bound: bound.coords().to_vec(), strides, member, back, coins: coins.to_vec() })
    }

    fn offset(&self, p: &LatticePoint) -> Option<usize> {
        if p.rank() != self.rank {
            return None;
        }
        let mut idx = 0usize;
        for i in 0..self.rank {
            let c = p.get(i);
            if c < 0 || c > self.bound[i] {
                return None;
            }
            idx += c as usize * self.strides[i];
        }
        Some(idx)
    }

    /// Membership of a box point; `false` for points outside the box.
    pub(crate) fn contains(&self, p: &LatticePoint) -> bool {
        self.offset(p).map(|i| self.member[i]).unwrap_or(false)
    }

    /// Multiset of coins summing to `p`, sorted, following back-pointers.
    pub(crate) fn decompose(&self, p: &LatticePoint) -> Option<Vec<LatticePoint>> {
        let mut idx = self.offset(p)?;
        if !self.member[idx] {
            return None;
        }
        let mut parts = Vec::new();
        while self.back[idx] != 0 {
            let coin = &self.coins[self.back[idx] as usize - 1];
            parts.push(coin.clone());
            idx -= coin
                .coords()
                .iter()
                .zip(&self.strides)
                .map(|(&c, &s)| c as usize * s)
                .sum::<usize>();
        }
        parts.sort();
        Some(parts)
    }

    /// All member points in lexicographic order.
    pub(crate) fn members_lex(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        for idx in 0..self.member.len() {
            if self.member[idx] {
                out.push(LatticePoint::new(cur.clone()));
            }
            for i in (0..self.rank).rev() {
                if cur[i] < self.bound[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
        out
    }
}

/// Membership verdict for one point, with a witnessing decomposition when
/// the verdict is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub point: LatticePoint,
    pub member: bool,
    /// Multiset of generators summing to `point`; present iff `member`.
    pub decomposition: Option<Vec<LatticePoint>>,
}

/// Exact description of one axis section `S(i)`.
///
/// `gcd == 0` records the degenerate section `S(i) = {0}`. The conductor and
/// the gap list are present exactly when `gcd == 1`; a full axis
/// (`multiplicity == 1`) has conductor `0` and no gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisProfile {
    pub axis: usize,
    pub gcd: u64,
    /// Smallest positive `n` with `n * e_axis` in the cone.
    pub multiplicity: Option<u64>,
    /// Least `c` such that every `n >= c` lies in `S(axis)`.
    pub conductor: Option<u64>,
    /// Positive non-members below the conductor, increasing.
    pub gaps: Vec<u64>,
}

impl AxisProfile {
    /// Membership of `n * e_axis`, reconstructed from the profile.
    /// Only meaningful when `gcd == 1`.
    pub fn axis_member(&self, n: u64) -> bool {
        if n == 0 {
            return true;
        }
        match self.conductor {
            Some(c) => n >= c || !self.gaps.contains(&n),
            None => false,
        }
    }

    /// Smallest `n >= 1` with both `n` and `n + 1` in the axis section.
    /// Exists for every `gcd == 1` profile.
    pub fn smallest_consecutive_pair(&self) -> Option<u64> {
        let c = self.conductor?;
        (1..=c.max(1) + 1).find(|&n| self.axis_member(n) && self.axis_member(n + 1))
    }
}

/// Outcome of an eventual-membership search for the seminormalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventualVerdict {
    /// `n * g` and `(n + 1) * g` are members; every multiple from
    /// `threshold` on is then a member.
    Yes { witness: u64, threshold: u64, search_bound: u64 },
    /// Provably never a member (some coordinate is negative).
    No { search_bound: u64 },
    Unknown { search_bound: u64 },
}

/// Outcome of a normalization membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizationVerdict {
    Yes { witness: u64 },
    Unknown { search_bound: u64 },
}

/// Seminormality check restricted to a box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seminormality {
    Seminormal,
    /// `3s = 2t` with both members but `t - s` outside the cone; the pair is
    /// the lexicographically first violation.
    NotSeminormal { s: LatticePoint, t: LatticePoint },
}

/// A positive cone of `Z^d`: the submonoid generated by finitely many
/// nonzero points of `Z_+^d`. Generators are stored deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    generators: Vec<LatticePoint>,
}

impl Cone {
    /// Validates and canonicalizes a presentation.
    ///
    /// Distinct diagnostics: zero generators, negative coordinates, rank
    /// mismatches and an empty list are reported separately.
    pub fn new(rank: usize, generators: Vec<LatticePoint>) -> Result<Self, ConeError> {
        if rank == 0 {
            return Err(ConeError::ZeroRank);
        }
        if generators.is_empty() {
            return Err(ConeError::EmptyGenerators);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.rank() != rank {
                return Err(ConeError::RankMismatch { expected: rank, found: g.rank() });
            }
            if !g.is_nonnegative() {
                return Err(ConeError::NegativeGenerator { point: g.clone() });
            }
            if g.is_zero() {
                return Err(ConeError::ZeroGenerator { index });
            }
        }
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        Ok(Self { rank, generators })
    }

    /// Rank-1 convenience: the numerical semigroup generated by `values`.
    pub fn numerical(values: &[i64]) -> Result<Self, ConeError> {
        Self::new(1, values.iter().map(|&v| LatticePoint::scalar(v)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    fn check_rank(&self, p: &LatticePoint) -> Result<(), ConeError> {
        if p.rank() != self.rank {
            return Err(ConeError::RankMismatch { expected: self.rank, found: p.rank() });
        }
        Ok(())
    }

    pub(crate) fn box_table(&self, bound: &LatticePoint) -> Result<BoxTable, ConeError> {
        BoxTable::build(self.rank, &self.generators, bound)
    }

    /// Decides membership of `s` and, when positive, returns a multiset of
    /// generators summing to `s`.
    pub fn membership(&self, s: &LatticePoint) -> Result<MembershipCertificate, ConeError> {
        self.check_rank(s)?;
        if !s.is_nonnegative() {
            return Ok(MembershipCertificate { point: s.clone(), member: false, decomposition: None });
        }
        let table = self.box_table(s)?;
        let decomposition = table.decompose(s);
        Ok(MembershipCertificate { point: s.clone(), member: decomposition.is_some(), decomposition })
    }

    /// All members of the coordinatewise box `[0, bound]`, lexicographic.
    pub fn enumerate_box(&self, bound: &LatticePoint) -> Result<Vec<LatticePoint>, ConeError> {
        self.check_rank(bound)?;
        Ok(self.box_table(bound)?.members_lex())
    }

    /// Box points that are not members, lexicographic.
    pub fn gaps_in_box(&self, bound: &LatticePoint) -> Result<Vec<LatticePoint>, ConeError> {
        self.check_rank(bound)?;
        let table = self.box_table(bound)?;
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        for idx in 0..table.member.len() {
            if !table.member[idx] {
                out.push(LatticePoint::new(cur.clone()));
            }
            for i in (0..self.rank).rev() {
                if cur[i] < table.bound[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
        Ok(out)
    }

    pub fn axis_profile(&self, axis: usize) -> Result<AxisProfile, ConeError> {
        self.axis_profile_with_bound(axis, AXIS_SEARCH_BOUND)
    }

    /// Profiles one axis section, scanning memberships in increasing `n`.
    ///
    /// The scan stops as soon as a run of `multiplicity` consecutive members
    /// appears: adding the multiplicity element repeatedly shows every later
    /// `n` is a member, so the conductor is certified. If the section has
    /// gcd 1 but no run appears within `search_bound`, the conductor is out
    /// of reach and the call fails rather than guessing.
    pub fn axis_profile_with_bound(
        &self,
        axis: usize,
        search_bound: u64,
    ) -> Result<AxisProfile, ConeError> {
        if axis >= self.rank {
            return Err(ConeError::AxisOutOfRange { axis, rank: self.rank });
        }
        // Generators supported on other axes can never contribute to a sum
        // landing on this axis, so the section is generated by these values.
        let mut coins: Vec<u64> = self
            .generators
            .iter()
            .filter(|g| (0..self.rank).all(|i| i == axis || g.get(i) == 0))
            .map(|g| g.get(axis) as u64)
            .collect();
        coins.sort_unstable();
        coins.dedup();
        if coins.is_empty() {
            return Ok(AxisProfile { axis, gcd: 0, multiplicity: None, conductor: None, gaps: vec![] });
        }
        let gcd = coins.iter().fold(0u64, |a, &b| num_integer::gcd(a, b));
        let multiplicity = coins[0];
        if gcd != 1 {
            return Ok(AxisProfile {
                axis,
                gcd,
                multiplicity: Some(multiplicity),
                conductor: None,
                gaps: vec![],
            });
        }

        let mut member = vec![true]; // n = 0
        let mut gaps: Vec<u64> = Vec::new();
        let mut run = 0u64;
        let mut n = 0u64;
        loop {
            if run == multiplicity {
                break;
            }
            n += 1;
            if n > search_bound {
                return Err(ConeError::AxisSearchExceeded { axis, bound: search_bound });
            }
            let is_member = coins
                .iter()
                .take_while(|&&a| a <= n)
                .any(|&a| member[(n - a) as usize]);
            member.push(is_member);
            if is_member {
                run += 1;
            } else {
                run = 0;
                gaps.push(n);
            }
        }
        let conductor = gaps.last().map(|&g| g + 1).unwrap_or(0);
        Ok(AxisProfile { axis, gcd: 1, multiplicity: Some(multiplicity), conductor: Some(conductor), gaps })
    }

    /// A cone is higher-rank numerical when every axis section is a gcd-1
    /// numerical semigroup; equivalently its seminormalization is all of
    /// `Z_+^d`.
    pub fn is_higher_rank_numerical(&self) -> Result<(bool, Vec<AxisProfile>), ConeError> {
        let profiles = (0..self.rank)
            .map(|axis| self.axis_profile(axis))
            .collect::<Result<Vec<_>, _>>()?;
        let ok = profiles.iter().all(|p| p.gcd == 1);
        Ok((ok, profiles))
    }

    /// Searches for a pair of consecutive multiples of `g` in the cone.
    ///
    /// Finding `n` and `n + 1` proves `m * g` is a member for every `m` in
    /// the numerical semigroup generated by `n` and `n + 1`, whose largest
    /// gap is `n^2 - n - 1`; the reported threshold is `n^2 - n`.
    pub fn seminormalization_membership(
        &self,
        g: &LatticePoint,
        search_bound: u64,
    ) -> Result<EventualVerdict, ConeError> {
        self.check_rank(g)?;
        if search_bound < 2 {
            return Err(ConeError::SearchBoundTooSmall { min: 2, got: search_bound });
        }
        if !g.is_nonnegative() {
            // Some coordinate stays negative in every positive multiple.
            return Ok(EventualVerdict::No { search_bound });
        }
        if g.is_zero() {
            return Ok(EventualVerdict::Yes { witness: 1, threshold: 1, search_bound });
        }
        let top = g.checked_scale(i64::try_from(search_bound).map_err(|_| Overflow)?)?;
        let table = self.box_table(&top)?;
        for n in 1..search_bound {
            let a = g.checked_scale(n as i64)?;
            let b = g.checked_scale(n as i64 + 1)?;
            if table.contains(&a) && table.contains(&b) {
                let threshold = n.checked_mul(n).and_then(|s| s.checked_sub(n)).ok_or(Overflow)?;
                return Ok(EventualVerdict::Yes { witness: n, threshold, search_bound });
            }
        }
        Ok(EventualVerdict::Unknown { search_bound })
    }

    /// Smallest `n <= search_bound` with `n * g` in the cone.
    pub fn normalization_membership(
        &self,
        g: &LatticePoint,
        search_bound: u64,
    ) -> Result<NormalizationVerdict, ConeError> {
        self.check_rank(g)?;
        if search_bound < 1 {
            return Err(ConeError::SearchBoundTooSmall { min: 1, got: search_bound });
        }
        if g.is_zero() {
            return Ok(NormalizationVerdict::Yes { witness: 1 });
        }
        if !g.is_nonnegative() {
            return Ok(NormalizationVerdict::Unknown { search_bound });
        }
        let top = g.checked_scale(i64::try_from(search_bound).map_err(|_| Overflow)?)?;
        let table = self.box_table(&top)?;
        for n in 1..=search_bound {
            if table.contains(&g.checked_scale(n as i64)?) {
                return Ok(NormalizationVerdict::Yes { witness: n });
            }
        }
        Ok(NormalizationVerdict::Unknown { search_bound })
    }

    /// Checks the seminormality law `3s = 2t, s,t in S  =>  t - s in S` for
    /// all witnesses inside the box, reporting the lexicographically first
    /// violation.
    pub fn is_seminormal_in_box(&self, bound: &LatticePoint) -> Result<Seminormality, ConeError> {
        self.check_rank(bound)?;
        let table = self.box_table(bound)?;
        // 3s = 2t forces every coordinate of s to be even, and then
        // t = 3s/2 and t - s = s/2 are determined by s.
        for s in table.members_lex() {
            if s.is_zero() || s.coords().iter().any(|&c| c % 2 != 0) {
                continue;
            }
            let half = LatticePoint::new(s.coords().iter().map(|&c| c / 2).collect());
            let t = s.checked_add(&half)?;
            if table.contains(&t) && !table.contains(&half) {
                return Ok(Seminormality::NotSeminormal { s, t });
            }
        }
        Ok(Seminormality::Seminormal)
    }
}
