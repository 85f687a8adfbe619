//! Character-space computations: point evaluations on the closed polydisc,
//! finite semicharacter samples, the extension of a semicharacter to the
//! seminormalization, recovery of the underlying disc point, and the
//! counterexample pairs that exist exactly when an axis gcd exceeds 1.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::cone::{BoxTable, Cone, ConeError};
use crate::point::{LatticePoint, Overflow};
use crate::poly::Polynomial;

/// Values with modulus at most this count as zero in ratio formulas: powers
/// of boundary points accumulate rounding, so exact comparison is useless.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Slack allowed on the closed unit disc boundary for stored coordinates
/// and sample values.
pub const DISC_TOLERANCE: f64 = 1e-12;

/// A sample must satisfy `values[s+t] = values[s] * values[t]` to this
/// absolute accuracy whenever all three keys are present.
pub const SAMPLE_MULTIPLICATIVITY_TOLERANCE: f64 = 1e-10;

/// Extension values computed from different admissible multiples must agree
/// to this absolute accuracy, via the cross-ratio identity
/// `chi((n+1)t) * chi(mt) = chi((m+1)t) * chi(nt)`.
pub const EXTENSION_CONSISTENCY_TOLERANCE: f64 = 1e-9;

/// A recovered coordinate may overshoot the disc by at most this much
/// before the sample is declared inconsistent; overshoots within the
/// tolerance are clamped to the boundary.
pub const RECOVERY_DISC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("coordinate {index} has modulus {modulus}, outside the closed unit disc")]
    CoordinateOutsideDisc { index: usize, modulus: f64 },
    #[error("sample value at {point} has modulus {modulus}, outside the closed unit disc")]
    ValueOutsideDisc { point: LatticePoint, modulus: f64 },
    #[error("sample value at 0 must be 1, got {value}")]
    UnitValueAtZero { value: Complex64 },
    #[error("sample key {point} is not a member of the cone")]
    KeyOutsideCone { point: LatticePoint },
    #[error("sample is not multiplicative: value at {sum} disagrees with the product over {s} and {t}")]
    NotMultiplicative { s: LatticePoint, t: LatticePoint, sum: LatticePoint },
    #[error("hypothesis violated: cone is not a higher-rank numerical semigroup (axis {axis} has gcd {gcd})")]
    HypothesisViolated { axis: usize, gcd: u64 },
    #[error("missing consulted value at {point}")]
    MissingValue { point: LatticePoint },
    #[error("recovered point outside closed disc: axis {axis} has modulus {modulus}")]
    RecoveredOutsideDisc { axis: usize, modulus: f64 },
    #[error("inconsistent sample: admissible multiples {n} and {m} of {t} disagree")]
    InconsistentSample { t: LatticePoint, n: u64, m: u64 },
    #[error("insufficient data to extend the sample at {t} within multiple bound {bound}")]
    InsufficientData { t: LatticePoint, bound: u64 },
    #[error("axis {axis} gcd is 1 - no counterexample exists")]
    GcdIsOne { axis: usize },
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

fn cone_unit() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `z^e` by binary exponentiation; `e = 0` gives 1, so `0^0 = 1`.
fn cpow(z: Complex64, mut e: u64) -> Complex64 {
    let mut result = cone_unit();
    let mut base = z;
    while e > 0 {
        if e & 1 == 1 {
            result *= base;
        }
        base *= base;
        e >>= 1;
    }
    result
}

/// A point of the closed unit polydisc, i.e. a character of the ambient
/// lattice restricted to the cone.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterPoint {
    zeta: Vec<Complex64>,
}

impl CharacterPoint {
    /// Every coordinate must lie in the closed unit disc, with
    /// [`DISC_TOLERANCE`] slack on the boundary.
    pub fn new(zeta: Vec<Complex64>) -> Result<Self, CharError> {
        for (index, z) in zeta.iter().enumerate() {
            let modulus = z.norm();
            if modulus > 1.0 + DISC_TOLERANCE {
                return Err(CharError::CoordinateOutsideDisc { index, modulus });
            }
        }
        Ok(Self { zeta })
    }

    pub fn rank(&self) -> usize {
        self.zeta.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.zeta
    }

    /// The monomial value `zeta^s`, with the convention `0^0 = 1`.
    ///
    /// `s` must be nonnegative of matching rank.
    pub fn evaluate(&self, s: &LatticePoint) -> Complex64 {
        assert_eq!(s.rank(), self.rank(), "exponent rank mismatch");
        assert!(s.is_nonnegative(), "exponent must be nonnegative");
        let mut acc = cone_unit();
        for (z, &e) in self.zeta.iter().zip(s.coords()) {
            acc *= cpow(*z, e as u64);
        }
        acc
    }

    /// `sum of coeff * zeta^s` over the terms, in sorted exponent order.
    pub fn evaluate_polynomial(&self, p: &Polynomial) -> Complex64 {
        if let Some(rank) = p.rank() {
            assert_eq!(rank, self.rank(), "polynomial rank mismatch");
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, coeff) in p.terms() {
            acc += coeff * self.evaluate(s);
        }
        acc
    }
}

/// Multiplies each coordinate by `e^(i theta_i)`: the dual action of the
/// rotation automorphism on the character space. Moduli are unchanged.
pub fn pullback_under_rotation(zeta: &CharacterPoint, theta: &[f64]) -> CharacterPoint {
    assert_eq!(theta.len(), zeta.rank(), "rotation parameter rank mismatch");
    let coords = zeta
        .zeta
        .iter()
        .zip(theta)
        .map(|(z, &t)| z * Complex64::cis(t))
        .collect();
    // cis has unit modulus to machine precision, far inside DISC_TOLERANCE.
    CharacterPoint { zeta: coords }
}

/// A finite, multiplicatively consistent record of semicharacter values on
/// cone members.
#[derive(Debug, Clone, PartialEq)]
pub struct SemicharacterSample {
    rank: usize,
    values: BTreeMap<LatticePoint, Complex64>,
}

impl SemicharacterSample {
    /// Validates keys (members of the cone), values (closed disc, 1 at the
    /// origin) and multiplicativity on every key pair whose sum is also a
    /// key, to [`SAMPLE_MULTIPLICATIVITY_TOLERANCE`].
    pub fn new(
        cone: &Cone,
        values: BTreeMap<LatticePoint, Complex64>,
    ) -> Result<Self, CharError> {
        let rank = cone.rank();
        for (point, value) in &values {
            if point.rank() != rank {
                return Err(CharError::RankMismatch { expected: rank, found: point.rank() });
            }
            if !cone.membership(point)?.member {
                return Err(CharError::KeyOutsideCone { point: point.clone() });
            }
            let modulus = value.norm();
            if modulus > 1.0 + DISC_TOLERANCE {
                return Err(CharError::ValueOutsideDisc { point: point.clone(), modulus });
            }
            if point.is_zero() && (value - cone_unit()).norm() > SAMPLE_MULTIPLICATIVITY_TOLERANCE
            {
                return Err(CharError::UnitValueAtZero { value: *value });
            }
        }
        let keys: Vec<&LatticePoint> = values.keys().collect();
        for (i, s) in keys.iter().enumerate() {
            for t in &keys[i..] {
                let Ok(sum) = s.checked_add(t) else { continue };
                if let Some(v) = values.get(&sum) {
                    let product = values[*s] * values[*t];
                    if (v - product).norm() > SAMPLE_MULTIPLICATIVITY_TOLERANCE {
                        return Err(CharError::NotMultiplicative {
                            s: (*s).clone(),
                            t: (*t).clone(),
                            sum,
                        });
                    }
                }
            }
        }
        Ok(Self { rank, values })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, p: &LatticePoint) -> Option<Complex64> {
        self.values.get(p).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.values.iter()
    }

    /// The sample value at `p`, or the product over a decomposition of `p`
    /// into sample keys when `p` itself is not sampled. `Ok(None)` means no
    /// such decomposition exists; the decomposition (hence the result) is
    /// deterministic.
    pub fn derive(&self, p: &LatticePoint) -> Result<Option<Complex64>, CharError> {
        if p.rank() != self.rank {
            return Err(CharError::RankMismatch { expected: self.rank, found: p.rank() });
        }
        if !p.is_nonnegative() {
            return Ok(None);
        }
        if let Some(v) = self.value(p) {
            return Ok(Some(v));
        }
        if p.is_zero() {
            return Ok(Some(cone_unit()));
        }
        let coins: Vec<LatticePoint> =
            self.values.keys().filter(|k| !k.is_zero()).cloned().collect();
        if coins.is_empty() {
            return Ok(None);
        }
        let table = BoxTable::build(self.rank, &coins, p)?;
        let Some(parts) = table.decompose(p) else {
            return Ok(None);
        };
        let mut acc = cone_unit();
        for part in &parts {
            acc *= self.value(part).expect("decomposition parts are sample keys");
        }
        Ok(Some(acc))
    }
}

/// Samples `zeta^s` at each consulted point; every consulted point must be
/// a member.
pub fn restrict_evaluation(
    cone: &Cone,
    zeta: &CharacterPoint,
    consulted: &[LatticePoint],
) -> Result<SemicharacterSample, CharError> {
    if zeta.rank() != cone.rank() {
        return Err(CharError::RankMismatch { expected: cone.rank(), found: zeta.rank() });
    }
    let mut values = BTreeMap::new();
    for s in consulted {
        if s.rank() != cone.rank() {
            return Err(CharError::RankMismatch { expected: cone.rank(), found: s.rank() });
        }
        if !cone.membership(s)?.member {
            return Err(CharError::KeyOutsideCone { point: s.clone() });
        }
        values.insert(s.clone(), zeta.evaluate(s));
    }
    SemicharacterSample::new(cone, values)
}

/// The sample value at `p`, treating the origin as implicitly sampled at 1.
fn value_or_unit(chi: &SemicharacterSample, p: &LatticePoint) -> Option<Complex64> {
    chi.value(p).or_else(|| p.is_zero().then(cone_unit))
}

/// Recovers the polydisc point behind a semicharacter sample.
///
/// For each axis `i`, with `n` the smallest positive integer such that both
/// `n e_i` and `(n+1) e_i` are members, the coordinate is the ratio
/// `chi((n+1) e_i) / chi(n e_i)`, or 0 when the denominator vanishes (below
/// [`ZERO_THRESHOLD`]). Both values must be present in the sample. A ratio
/// outside the disc by more than [`RECOVERY_DISC_TOLERANCE`] is an error;
/// smaller overshoots are clamped to the boundary.
pub fn recover_point(cone: &Cone, chi: &SemicharacterSample) -> Result<CharacterPoint, CharError> {
    if chi.rank() != cone.rank() {
        return Err(CharError::RankMismatch { expected: cone.rank(), found: chi.rank() });
    }
    let (ok, profiles) = cone.is_higher_rank_numerical()?;
    if !ok {
        let bad = profiles.iter().find(|p| p.gcd != 1).expect("some axis failed");
        return Err(CharError::HypothesisViolated { axis: bad.axis, gcd: bad.gcd });
    }
    let d = cone.rank();
    let mut zeta = Vec::with_capacity(d);
    for profile in &profiles {
        let n = profile
            .smallest_consecutive_pair()
            .expect("gcd 1 axes have a consecutive pair");
        let lo = LatticePoint::axis_multiple(d, profile.axis, n as i64);
        let hi = LatticePoint::axis_multiple(d, profile.axis, n as i64 + 1);
        let a = value_or_unit(chi, &lo).ok_or(CharError::MissingValue { point: lo })?;
        let b = value_or_unit(chi, &hi).ok_or(CharError::MissingValue { point: hi })?;
        let z = if a.norm() <= ZERO_THRESHOLD {
            Complex64::new(0.0, 0.0)
        } else {
            let ratio = b / a;
            let modulus = ratio.norm();
            if modulus > 1.0 + RECOVERY_DISC_TOLERANCE {
                return Err(CharError::RecoveredOutsideDisc { axis: profile.axis, modulus });
            }
            if modulus > 1.0 {
                ratio / modulus
            } else {
                ratio
            }
        };
        zeta.push(z);
    }
    Ok(CharacterPoint { zeta })
}

/// Extends a semicharacter sample to a point `t` of the seminormalization.
///
/// Scans multiples `n <= bound`: wherever both `n t` and `(n+1) t` are
/// members and the sample determines values there, the candidate value is
/// `chi((n+1)t) / chi(nt)`. All candidates must agree via the cross-ratio
/// identity to [`EXTENSION_CONSISTENCY_TOLERANCE`]; the returned value is
/// the first candidate with nonvanishing denominator, or 0 when every
/// determined `chi(nt)`, `n >= 1`, vanishes.
pub fn extend_semicharacter(
    cone: &Cone,
    chi: &SemicharacterSample,
    t: &LatticePoint,
    bound: u64,
) -> Result<Complex64, CharError> {
    if t.rank() != cone.rank() {
        return Err(CharError::RankMismatch { expected: cone.rank(), found: t.rank() });
    }
    if chi.rank() != cone.rank() {
        return Err(CharError::RankMismatch { expected: cone.rank(), found: chi.rank() });
    }
    // (n, chi(nt), chi((n+1)t)) for each usable consecutive pair.
    let mut candidates: Vec<(u64, Complex64, Complex64)> = Vec::new();
    let mut any_single = false;
    let mut all_singles_vanish = true;
    let mut next: Option<(bool, Option<Complex64>)> = None;
    for n in 0..=bound {
        let (lo_member, lo_value) = match next.take() {
            Some(state) => state,
            None => {
                let p = t.checked_scale(n as i64)?;
                let member = p.is_nonnegative() && cone.membership(&p)?.member;
                let value = if member {
                    if p.is_zero() { Some(cone_unit()) } else { chi.derive(&p)? }
                } else {
                    None
                };
                (member, value)
            }
        };
        let hi = t.checked_scale(n as i64 + 1)?;
        let hi_member = hi.is_nonnegative() && cone.membership(&hi)?.member;
        let hi_value = if hi_member {
            if hi.is_zero() { Some(cone_unit()) } else { chi.derive(&hi)? }
        } else {
            None
        };
        if n >= 1 && lo_member {
            if let Some(a) = lo_value {
                any_single = true;
                if a.norm() > ZERO_THRESHOLD {
                    all_singles_vanish = false;
                }
            }
        }
        if lo_member && hi_member {
            if let (Some(a), Some(b)) = (lo_value, hi_value) {
                candidates.push((n, a, b));
            }
        }
        next = Some((hi_member, hi_value));
    }
    for (i, (n, a, b)) in candidates.iter().enumerate() {
        for (m, a2, b2) in &candidates[i + 1..] {
            if (b * a2 - b2 * a).norm() > EXTENSION_CONSISTENCY_TOLERANCE {
                return Err(CharError::InconsistentSample { t: t.clone(), n: *n, m: *m });
            }
        }
    }
    if let Some((_, a, b)) = candidates.iter().find(|(_, a, _)| a.norm() > ZERO_THRESHOLD) {
        return Ok(b / a);
    }
    if any_single && all_singles_vanish {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Err(CharError::InsufficientData { t: t.clone(), bound })
}

/// Two distinct polydisc points whose evaluations agree on the whole cone,
/// which exist exactly when the axis section has gcd different from 1.
///
/// For gcd `k >= 2` the points put the first two nontrivial `k`-th roots of
/// unity at the axis (for `k = 2`, the pair 1 and -1) and 0 elsewhere; for
/// gcd 0 the axis section is trivial and the pair 1, -1 works. Agreement is
/// checked on the generators, which suffices by multiplicativity.
pub fn gcd_counterexample(
    cone: &Cone,
    axis: usize,
) -> Result<(CharacterPoint, CharacterPoint), CharError> {
    let profile = cone.axis_profile(axis)?;
    let k = profile.gcd;
    if k == 1 {
        return Err(CharError::GcdIsOne { axis });
    }
    let (lambda, mu) = if k == 0 || k == 2 {
        // Spelled out rather than negated, so the imaginary part stays +0.0.
        (cone_unit(), Complex64::new(-1.0, 0.0))
    } else {
        let step = 2.0 * std::f64::consts::PI / k as f64;
        (Complex64::cis(step), Complex64::cis(2.0 * step))
    };
    let d = cone.rank();
    let build = |root: Complex64| {
        let mut zeta = vec![Complex64::new(0.0, 0.0); d];
        zeta[axis] = root;
        CharacterPoint { zeta }
    };
    let first = build(lambda);
    let second = build(mu);
    for g in cone.generators() {
        let diff = (first.evaluate(g) - second.evaluate(g)).norm();
        assert!(
            diff <= ZERO_THRESHOLD,
            "counterexample points must agree on generator {g}, differ by {diff}"
        );
    }
    Ok((first, second))
}

/// Support-based membership test for polynomials: true exactly when every
/// exponent in the support is a member; otherwise the sorted offenders.
pub fn poly_membership(
    cone: &Cone,
    p: &Polynomial,
) -> Result<(bool, Vec<LatticePoint>), CharError> {
    if let Some(rank) = p.rank() {
        if rank != cone.rank() {
            return Err(CharError::RankMismatch { expected: cone.rank(), found: rank });
        }
    }
    let mut offenders = Vec::new();
    for s in p.support() {
        if !cone.membership(s)?.member {
            offenders.push(s.clone());
        }
    }
    Ok((offenders.is_empty(), offenders))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[i64]) -> LatticePoint {
        LatticePoint::from(coords)
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn im(y: f64) -> Complex64 {
        Complex64::new(0.0, y)
    }

    fn c23() -> Cone {
        Cone::numerical(&[2, 3]).unwrap()
    }

    fn point1(z: Complex64) -> CharacterPoint {
        CharacterPoint::new(vec![z]).unwrap()
    }

    fn sample1(cone: &Cone, entries: &[(i64, Complex64)]) -> SemicharacterSample {
        let values: BTreeMap<_, _> =
            entries.iter().map(|&(n, v)| (pt(&[n]), v)).collect();
        SemicharacterSample::new(cone, values).unwrap()
    }

    #[test]
    fn evaluation_follows_power_laws() {
        assert_eq!(point1(re(0.5)).evaluate(&pt(&[3])), re(0.125));
        let zw = CharacterPoint::new(vec![re(0.0), im(1.0)]).unwrap();
        assert_eq!(zw.evaluate(&pt(&[2, 0])), re(0.0));
        assert_eq!(zw.evaluate(&pt(&[0, 0])), re(1.0));
        assert_eq!(point1(re(0.0)).evaluate(&pt(&[0])), re(1.0));
        assert_eq!(point1(im(1.0)).evaluate(&pt(&[2])), re(-1.0));
    }

    #[test]
    fn character_points_live_in_the_disc() {
        assert!(CharacterPoint::new(vec![re(1.0), im(-1.0)]).is_ok());
        assert!(matches!(
            CharacterPoint::new(vec![re(1.1)]),
            Err(CharError::CoordinateOutsideDisc { index: 0, .. })
        ));
    }

    #[test]
    fn restriction_samples_the_powers() {
        let chi = restrict_evaluation(&c23(), &point1(re(0.5)), &[pt(&[2]), pt(&[3])]).unwrap();
        assert_eq!(chi.value(&pt(&[2])), Some(re(0.25)));
        assert_eq!(chi.value(&pt(&[3])), Some(re(0.125)));

        let zero = restrict_evaluation(&c23(), &point1(re(0.0)), &[pt(&[2]), pt(&[3])]).unwrap();
        assert_eq!(zero.value(&pt(&[2])), Some(re(0.0)));

        let hr2 = Cone::new(2, vec![pt(&[2, 0]), pt(&[3, 0]), pt(&[0, 1])]).unwrap();
        let zeta = CharacterPoint::new(vec![im(1.0), re(-1.0)]).unwrap();
        let chi2 = restrict_evaluation(&hr2, &zeta, &[pt(&[2, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(chi2.value(&pt(&[2, 0])), Some(re(-1.0)));
        assert_eq!(chi2.value(&pt(&[0, 1])), Some(re(-1.0)));
    }

    #[test]
    fn restriction_rejects_non_members() {
        let err = restrict_evaluation(&c23(), &point1(re(0.5)), &[pt(&[1])]).unwrap_err();
        assert_eq!(err, CharError::KeyOutsideCone { point: pt(&[1]) });
    }

    #[test]
    fn sample_validation_catches_bad_data() {
        let c = c23();
        let bad: BTreeMap<_, _> =
            [(pt(&[2]), re(0.25)), (pt(&[3]), re(0.125)), (pt(&[5]), re(0.125))].into();
        assert!(matches!(
            SemicharacterSample::new(&c, bad),
            Err(CharError::NotMultiplicative { .. })
        ));

        let outside: BTreeMap<_, _> = [(pt(&[2]), re(1.5))].into();
        assert!(matches!(
            SemicharacterSample::new(&c, outside),
            Err(CharError::ValueOutsideDisc { .. })
        ));

        let zero_key: BTreeMap<_, _> = [(pt(&[0]), re(0.5))].into();
        assert!(matches!(
            SemicharacterSample::new(&c, zero_key),
            Err(CharError::UnitValueAtZero { .. })
        ));

        let good: BTreeMap<_, _> =
            [(pt(&[2]), re(0.25)), (pt(&[3]), re(0.125)), (pt(&[5]), re(0.03125))].into();
        assert!(SemicharacterSample::new(&c, good).is_ok());
    }

    #[test]
    fn derivation_multiplies_along_decompositions() {
        let chi = sample1(&c23(), &[(2, re(0.25)), (3, re(0.125))]);
        assert_eq!(chi.derive(&pt(&[2])).unwrap(), Some(re(0.25)));
        assert_eq!(chi.derive(&pt(&[0])).unwrap(), Some(re(1.0)));
        // 6 = 2 + 2 + 2 under the first-coin rule.
        assert_eq!(chi.derive(&pt(&[6])).unwrap(), Some(re(0.015625)));
        assert_eq!(chi.derive(&pt(&[1])).unwrap(), None);
        assert_eq!(chi.derive(&pt(&[-1])).unwrap(), None);
    }

    #[test]
    fn recovery_inverts_restriction() {
        let chi = sample1(&c23(), &[(2, re(0.25)), (3, re(0.125))]);
        let zeta = recover_point(&c23(), &chi).unwrap();
        assert_eq!(zeta.coords(), &[re(0.5)]);

        let zero = sample1(&c23(), &[(2, re(0.0)), (3, re(0.0))]);
        assert_eq!(recover_point(&c23(), &zero).unwrap().coords(), &[re(0.0)]);

        let c35 = Cone::numerical(&[3, 5]).unwrap();
        let chi_i = sample1(&c35, &[(5, im(1.0)), (6, re(-1.0))]);
        let zeta_i = recover_point(&c35, &chi_i).unwrap();
        assert!((zeta_i.coords()[0] - im(1.0)).norm() < 1e-12);
    }

    #[test]
    fn recovery_reports_missing_and_inconsistent_samples() {
        let c = c23();
        let partial = sample1(&c, &[(2, re(0.25))]);
        assert_eq!(
            recover_point(&c, &partial).unwrap_err(),
            CharError::MissingValue { point: pt(&[3]) }
        );

        // No key pair sums to a key, so construction succeeds, but the
        // ratio 0.5/0.25 = 2 leaves the disc.
        let skewed = sample1(&c, &[(2, re(0.25)), (3, re(0.5))]);
        assert!(matches!(
            recover_point(&c, &skewed),
            Err(CharError::RecoveredOutsideDisc { axis: 0, .. })
        ));
    }

    #[test]
    fn recovery_requires_hypothesis() {
        let even = Cone::numerical(&[2]).unwrap();
        let chi = sample1(&even, &[(2, re(0.25))]);
        assert!(matches!(
            recover_point(&even, &chi),
            Err(CharError::HypothesisViolated { axis: 0, gcd: 2 })
        ));
    }

    #[test]
    fn extension_reproduces_the_defining_ratio() {
        let c = c23();
        let chi = sample1(&c, &[(2, re(0.25)), (3, re(0.125))]);
        assert_eq!(extend_semicharacter(&c, &chi, &pt(&[1]), 5).unwrap(), re(0.5));

        let zero = sample1(&c, &[(2, re(0.0)), (3, re(0.0))]);
        assert_eq!(extend_semicharacter(&c, &zero, &pt(&[1]), 5).unwrap(), re(0.0));

        let c35 = Cone::numerical(&[3, 5]).unwrap();
        let neg = sample1(&c35, &[(3, re(-1.0)), (5, re(-1.0))]);
        assert_eq!(extend_semicharacter(&c35, &neg, &pt(&[1]), 10).unwrap(), re(-1.0));
    }

    #[test]
    fn extension_is_exact_on_members() {
        let c = c23();
        let chi = sample1(&c, &[(2, re(0.25)), (3, re(0.125))]);
        assert_eq!(extend_semicharacter(&c, &chi, &pt(&[2]), 5).unwrap(), re(0.25));
        assert_eq!(extend_semicharacter(&c, &chi, &pt(&[0]), 5).unwrap(), re(1.0));
    }

    #[test]
    fn extension_rejects_inconsistent_and_thin_data() {
        let c = c23();
        let skewed = sample1(&c, &[(2, re(0.25)), (3, re(0.2))]);
        assert!(matches!(
            extend_semicharacter(&c, &skewed, &pt(&[1]), 5),
            Err(CharError::InconsistentSample { .. })
        ));

        let chi = sample1(&c, &[(2, re(0.25)), (3, re(0.125))]);
        assert!(matches!(
            extend_semicharacter(&c, &chi, &pt(&[1]), 1),
            Err(CharError::InsufficientData { bound: 1, .. })
        ));
    }

    #[test]
    fn counterexample_pairs_agree_on_generators() {
        let c = Cone::new(2, vec![pt(&[2, 0]), pt(&[0, 2]), pt(&[0, 3]), pt(&[1, 1])]).unwrap();
        let (first, second) = gcd_counterexample(&c, 0).unwrap();
        assert_eq!(first.coords(), &[re(1.0), re(0.0)]);
        assert_eq!(second.coords(), &[re(-1.0), re(0.0)]);
        assert_ne!(first, second);

        let c3 = Cone::new(2, vec![pt(&[3, 0]), pt(&[1, 1]), pt(&[0, 2]), pt(&[0, 3])]).unwrap();
        let (a, b) = gcd_counterexample(&c3, 0).unwrap();
        let third = 2.0 * std::f64::consts::PI / 3.0;
        assert!((a.coords()[0] - Complex64::cis(third)).norm() < 1e-15);
        assert!((b.coords()[0] - Complex64::cis(2.0 * third)).norm() < 1e-15);
    }

    #[test]
    fn counterexample_handles_trivial_sections_and_gcd_one() {
        let c = Cone::new(2, vec![pt(&[1, 1]), pt(&[0, 1])]).unwrap();
        let (a, b) = gcd_counterexample(&c, 0).unwrap();
        assert_eq!(a.coords()[0], re(1.0));
        assert_eq!(b.coords()[0], re(-1.0));

        assert_eq!(
            gcd_counterexample(&c23(), 0).unwrap_err(),
            CharError::GcdIsOne { axis: 0 }
        );
        assert!(matches!(
            gcd_counterexample(&c23(), 5),
            Err(CharError::Cone(ConeError::AxisOutOfRange { .. }))
        ));
    }

    #[test]
    fn poly_membership_lists_offenders() {
        let c = c23();
        let inside = Polynomial::univariate(&[(2, re(1.0)), (3, re(1.0))]).unwrap();
        assert_eq!(poly_membership(&c, &inside).unwrap(), (true, vec![]));

        let outside = Polynomial::univariate(&[(1, re(1.0)), (2, re(1.0))]).unwrap();
        assert_eq!(poly_membership(&c, &outside).unwrap(), (false, vec![pt(&[1])]));

        let hr2 = Cone::new(2, vec![pt(&[2, 0]), pt(&[3, 0]), pt(&[0, 1])]).unwrap();
        let mixed = Polynomial::from_terms([
            (pt(&[1, 1]), re(1.0)),
            (pt(&[2, 3]), re(1.0)),
        ])
        .unwrap();
        assert_eq!(poly_membership(&hr2, &mixed).unwrap(), (false, vec![pt(&[1, 1])]));
    }

    #[test]
    fn pullback_rotates_each_coordinate() {
        let rotated = pullback_under_rotation(&point1(re(0.5)), &[std::f64::consts::PI]);
        assert!((rotated.coords()[0] - re(-0.5)).norm() < 1e-12);

        let fixed = pullback_under_rotation(&point1(im(0.3)), &[0.0]);
        assert_eq!(fixed.coords()[0], im(0.3));
    }

    #[test]
    fn pullback_matches_rotation_of_polynomials() {
        let zeta = point1(Complex64::new(0.4, 0.3));
        let theta = [0.7];
        let p = Polynomial::univariate(&[(2, re(1.0)), (3, Complex64::new(-0.5, 0.25))]).unwrap();
        let lhs = pullback_under_rotation(&zeta, &theta).evaluate_polynomial(&p);
        let rhs = zeta.evaluate_polynomial(&p.rotate(&theta).unwrap());
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
