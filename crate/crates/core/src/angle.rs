//! Exact angles on the unit circle and certified comparisons.
//!
//! Two symbolic forms are supported: rational turns `theta = 2*pi*r/p`,
//! and cosine values that are either rational or of the shape
//! `cos theta = 1 - 1/(2*cbrt(m))`. Comparisons are exact whenever both
//! cosines are algebraically commensurable (rational-rational,
//! cbrt-rational via cubing, turn-turn via fractions); only the
//! turn-versus-cbrt and turn-versus-irrational cases fall back to
//! certified interval refinement, and those pairs are provably never
//! equal, so refinement terminates.

use crate::dyadic::{self, Interval};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AOrd};

static PRECISION_CAP: AtomicU32 = AtomicU32::new(crate::PRECISION_CAP_BITS);

/// Override the interval-refinement precision cap (fractional bits).
pub fn set_precision_cap(bits: u32) {
    PRECISION_CAP.store(bits.max(crate::PRECISION_START_BITS), AOrd::Relaxed);
}

pub fn precision_cap() -> u32 {
    PRECISION_CAP.load(AOrd::Relaxed)
}

/// An exact angle `theta in [0, pi]` (rational turns may represent points
/// on the full circle; comparisons fold them by evenness of cosine).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExactAngle {
    /// `theta = 2*pi*r/p`, reduced, `0 <= r < p`.
    RationalTurn { r: u64, p: u64 },
    /// `cos theta` is an explicit rational in `[-1, 1]`.
    CosRational { num: i64, den: i64 },
    /// `cos theta = 1 - 1/(2*cbrt(m))`, `m >= 1` not a perfect cube.
    CosCbrt { m: u64 },
}

impl ExactAngle {
    pub fn turn(r: u64, p: u64) -> Result<Self> {
        if p == 0 || r >= p {
            return Err(Error::Precondition(format!("invalid turn {r}/{p}")));
        }
        let g = r.gcd(&p);
        Ok(ExactAngle::RationalTurn { r: r / g, p: p / g })
    }

    pub fn cos_rational(q: &BigRational) -> Result<Self> {
        if q.abs() > BigRational::one() {
            return Err(Error::Precondition(format!("cosine {q} out of [-1, 1]")));
        }
        let num = i64::try_from(q.numer().clone())
            .map_err(|_| Error::Unsupported("cosine numerator exceeds i64".into()))?;
        let den = i64::try_from(q.denom().clone())
            .map_err(|_| Error::Unsupported("cosine denominator exceeds i64".into()))?;
        Ok(ExactAngle::CosRational { num, den })
    }

    /// The angle with `cos theta = 1 - 1/(2 cbrt m)`; normalizes perfect
    /// cubes to the rational form.
    pub fn cos_cbrt(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("cbrt form needs m >= 1".into()));
        }
        let k = (1..=m).take_while(|k| k * k * k <= m).last().filter(|k| k * k * k == m);
        match k {
            Some(k) => {
                // cos = 1 - 1/(2k) = (2k-1)/(2k)
                Ok(ExactAngle::CosRational { num: 2 * k as i64 - 1, den: 2 * k as i64 })
            }
            None => Ok(ExactAngle::CosCbrt { m }),
        }
    }

    /// Fold a turn into `[0, 1/2]` by evenness of cosine.
    fn folded_fraction(&self) -> Option<(u64, u64)> {
        match self {
            ExactAngle::RationalTurn { r, p } => {
                let r = if 2 * r > *p { p - r } else { *r };
                Some((r, *p))
            }
            _ => None,
        }
    }

    /// Exact rational cosine, when the angle has one.
    pub fn rational_cos(&self) -> Option<BigRational> {
        match self {
            ExactAngle::CosRational { num, den } => {
                Some(BigRational::new(BigInt::from(*num), BigInt::from(*den)))
            }
            ExactAngle::CosCbrt { .. } => None,
            ExactAngle::RationalTurn { .. } => {
                let (r, p) = self.folded_fraction().unwrap();
                let q = |n: i64, d: i64| Some(BigRational::new(BigInt::from(n), BigInt::from(d)));
                match (r, p) {
                    (0, _) => q(1, 1),
                    (1, 2) => q(-1, 1),
                    (1, 3) => q(-1, 2),
                    (1, 4) => q(0, 1),
                    (1, 6) => q(1, 2),
                    _ => None,
                }
            }
        }
    }

    /// Whether `theta = 0`.
    pub fn is_zero_angle(&self) -> bool {
        match self {
            ExactAngle::RationalTurn { r, .. } => *r == 0,
            _ => self.rational_cos().is_some_and(|c| c.is_one()),
        }
    }

    /// Certified enclosure of `cos theta`.
    pub fn cos_interval(&self, prec: u32) -> Interval {
        match self {
            ExactAngle::RationalTurn { .. } => {
                let (r, p) = self.folded_fraction().unwrap();
                dyadic::cos_turn(r, p, prec)
            }
            ExactAngle::CosRational { num, den } => {
                Interval::from_ratio(&BigInt::from(*num), &BigInt::from(*den), prec)
            }
            ExactAngle::CosCbrt { m } => {
                // 1 - 1/(2 cbrt m)
                let c = dyadic::cbrt(*m, prec);
                let inv = c.mul_int(&BigInt::from(2)).recip();
                Interval::exact_int(1, prec).sub(&inv)
            }
        }
    }

    /// Exact equality of angles.
    ///
    /// Decidable without intervals: turns with irrational cosine lie in a
    /// totally real cyclotomic field, which contains neither a real cube
    /// root of a non-cube nor an unequal rational, so cross-kind equality
    /// reduces to the rational cases.
    pub fn angle_eq(&self, other: &Self) -> bool {
        match (self.rational_cos(), other.rational_cos()) {
            (Some(a), Some(b)) => a == b,
            (Some(_), None) | (None, Some(_)) => false,
            (None, None) => match (self, other) {
                (ExactAngle::CosCbrt { m: m1 }, ExactAngle::CosCbrt { m: m2 }) => m1 == m2,
                (ExactAngle::RationalTurn { .. }, ExactAngle::RationalTurn { .. }) => {
                    self.folded_fraction() == other.folded_fraction()
                }
                _ => false,
            },
        }
    }
}

impl fmt::Display for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactAngle::RationalTurn { r, p } => write!(f, "2*pi*{r}/{p}"),
            ExactAngle::CosRational { num, den } => write!(f, "arccos({num}/{den})"),
            ExactAngle::CosCbrt { m } => write!(f, "arccos(1-1/(2*cbrt({m})))"),
        }
    }
}

/// Compare `cos theta_m = 1 - 1/(2 cbrt m)` with a rational `q`, exactly.
fn cmp_cbrt_cos_with_rational(m: u64, q: &BigRational) -> Ordering {
    let one = BigRational::one();
    if *q >= one {
        // cos theta_m < 1 <= q
        return Ordering::Less;
    }
    let a = &one - q; // > 0
    // cos_m < q <=> 1 - q < 1/(2c) <=> (2 c a)^3 < 1 <=> 8 m a^3 < 1.
    let lhs = BigRational::from(BigInt::from(8u64)) * BigRational::from(BigInt::from(m)) * &a * &a * &a;
    lhs.cmp(&one)
}

/// Decide `theta_a < theta_b` for angles in `(0, pi]`.
///
/// Errors with [`Error::Undecidable`] only in the interval-refined cases
/// and only at the precision cap; exact cases cannot fail.
pub fn angle_less(a: &ExactAngle, b: &ExactAngle) -> Result<bool> {
    if a.is_zero_angle() || b.is_zero_angle() {
        return Err(Error::Precondition("angle comparison requires theta in (0, pi]".into()));
    }
    if a.angle_eq(b) {
        return Ok(false);
    }
    // theta_a < theta_b  <=>  cos theta_a > cos theta_b on [0, pi].
    match (a.rational_cos(), b.rational_cos()) {
        (Some(ca), Some(cb)) => return Ok(ca > cb),
        (Some(ca), None) => {
            if let ExactAngle::CosCbrt { m } = b {
                // theta_a < theta_b <=> ca > cos_m
                return Ok(cmp_cbrt_cos_with_rational(*m, &ca) == Ordering::Less);
            }
        }
        (None, Some(cb)) => {
            if let ExactAngle::CosCbrt { m } = a {
                return Ok(cmp_cbrt_cos_with_rational(*m, &cb) == Ordering::Greater);
            }
        }
        (None, None) => match (a, b) {
            (ExactAngle::CosCbrt { m: m1 }, ExactAngle::CosCbrt { m: m2 }) => {
                // theta_m is strictly decreasing in m.
                return Ok(m1 > m2);
            }
            (ExactAngle::RationalTurn { .. }, ExactAngle::RationalTurn { .. }) => {
                let (r1, p1) = a.folded_fraction().unwrap();
                let (r2, p2) = b.folded_fraction().unwrap();
                return Ok((r1 as u128) * (p2 as u128) < (r2 as u128) * (p1 as u128));
            }
            _ => {}
        },
    }
    // Certified refinement for the remaining (provably unequal) pairs.
    let cap = precision_cap();
    let mut prec = crate::PRECISION_START_BITS;
    loop {
        let ia = a.cos_interval(prec);
        let ib = b.cos_interval(prec);
        if ib.lt(&ia) == Some(true) {
            return Ok(true);
        }
        if ia.lt(&ib) == Some(true) {
            return Ok(false);
        }
        if prec >= cap {
            return Err(Error::Undecidable { bits: cap });
        }
        prec = (prec * 2).min(cap);
    }
}

/// Total order on angles in `(0, pi]`: exact equality, else `angle_less`.
pub fn angle_cmp(a: &ExactAngle, b: &ExactAngle) -> Result<Ordering> {
    if a.angle_eq(b) {
        Ok(Ordering::Equal)
    } else if angle_less(a, b)? {
        Ok(Ordering::Less)
    } else {
        Ok(Ordering::Greater)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn turn(r: u64, p: u64) -> ExactAngle {
        ExactAngle::turn(r, p).unwrap()
    }

    #[test]
    fn theta1_equals_sixth_turn() {
        // cos theta_1 = 1/2 = cos(2*pi/6); equality detected exactly.
        let t1 = ExactAngle::cos_cbrt(1).unwrap();
        assert_eq!(t1, ExactAngle::CosRational { num: 1, den: 2 });
        assert!(t1.angle_eq(&turn(1, 6)));
        assert!(!angle_less(&t1, &turn(1, 6)).unwrap());
        assert!(!angle_less(&turn(1, 6), &t1).unwrap());
    }

    #[test]
    fn cube_normalization() {
        assert_eq!(ExactAngle::cos_cbrt(8).unwrap(), ExactAngle::CosRational { num: 3, den: 4 });
        assert_eq!(ExactAngle::cos_cbrt(27).unwrap(), ExactAngle::CosRational { num: 5, den: 6 });
        assert!(matches!(ExactAngle::cos_cbrt(3).unwrap(), ExactAngle::CosCbrt { m: 3 }));
    }

    #[test]
    fn seventh_turn_below_theta1() {
        // 2*pi/7 ~ 51.4 degrees < 60 degrees.
        let t1 = ExactAngle::cos_cbrt(1).unwrap();
        assert!(angle_less(&turn(1, 7), &t1).unwrap());
        assert!(!angle_less(&t1, &turn(1, 7)).unwrap());
    }

    #[test]
    fn theta3_below_seventh_turn() {
        // cos theta_3 ~ 0.6533 > cos(2 pi/7) ~ 0.6235.
        let t3 = ExactAngle::cos_cbrt(3).unwrap();
        assert!(angle_less(&t3, &turn(1, 7)).unwrap());
    }

    #[test]
    fn theta_m_strictly_decreasing() {
        for m in 1..200u64 {
            let a = ExactAngle::cos_cbrt(m + 1).unwrap();
            let b = ExactAngle::cos_cbrt(m).unwrap();
            assert!(angle_less(&a, &b).unwrap(), "theta_{} !< theta_{}", m + 1, m);
        }
    }

    #[test]
    fn turn_vs_turn_exact() {
        assert!(angle_less(&turn(1, 5), &turn(1, 4)).unwrap());
        assert!(angle_less(&turn(1, 4), &turn(1, 3)).unwrap());
        // Folding: 3/4 of a turn has the same cosine as 1/4.
        assert!(turn(3, 4).angle_eq(&turn(1, 4)));
    }

    #[test]
    fn cbrt_vs_rational_matches_f64_oracle() {
        for m in [2u64, 3, 5, 10, 100] {
            let cm = 1.0 - 1.0 / (2.0 * (m as f64).cbrt());
            for (n, d) in [(1i64, 2i64), (3, 5), (9, 10), (7, 8), (2, 3)] {
                let q = BigRational::new(BigInt::from(n), BigInt::from(d));
                let want = cm.partial_cmp(&(n as f64 / d as f64)).unwrap();
                assert_eq!(cmp_cbrt_cos_with_rational(m, &q), want, "m={m} q={n}/{d}");
            }
        }
    }

    #[test]
    fn turn_vs_cbrt_interval_path() {
        // theta_2: cos = 1 - 1/(2 cbrt 2) ~ 0.6031; 2pi/7 cos ~ 0.6235.
        // So 2pi/7 < theta_2.
        let t2 = ExactAngle::cos_cbrt(2).unwrap();
        assert!(angle_less(&turn(1, 7), &t2).unwrap());
        assert!(!angle_less(&t2, &turn(1, 7)).unwrap());
    }

    #[test]
    fn zero_angle_rejected() {
        assert!(matches!(angle_less(&turn(0, 1), &turn(1, 4)), Err(Error::Precondition(_))));
    }
}
