//! Certified dyadic interval arithmetic.
//!
//! Values are intervals `[lo, hi] / 2^prec` with `BigInt` endpoints and a
//! shared precision. All operations round outward, so an interval always
//! encloses the exact real it stands for. Sign queries answer only when
//! the interval is strictly on one side of zero; refinement is the
//! caller's job (double the precision and rebuild).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval `[lo, hi] * 2^-prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn shl(x: &BigInt, k: u32) -> BigInt {
    x << k
}

/// Floor division by 2^k.
fn shr_floor(x: &BigInt, k: u32) -> BigInt {
    x >> k
}

/// Ceiling division by 2^k.
fn shr_ceil(x: &BigInt, k: u32) -> BigInt {
    -((-x) >> k)
}

impl Interval {
    pub fn exact_int(n: i64, prec: u32) -> Self {
        let v = shl(&BigInt::from(n), prec);
        Interval { lo: v.clone(), hi: v, prec }
    }

    pub fn point(m: BigInt, prec: u32) -> Self {
        Interval { lo: m.clone(), hi: m, prec }
    }

    /// Enclosure of `num/den` at the given precision.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero());
        let (num, den) =
            if den.is_negative() { (-num.clone(), -den.clone()) } else { (num.clone(), den.clone()) };
        let scaled = shl(&num, prec);
        let lo = scaled.div_floor(&den);
        let hi = scaled.div_ceil(&den);
        Interval { lo, hi, prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval::from_ratio(q.numer(), q.denom(), prec)
    }

    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone(), prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        let p = self.prec;
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo: shr_floor(&lo, p), hi: shr_ceil(&hi, p), prec: p }
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        if c.is_negative() {
            Interval { lo: &self.hi * c, hi: &self.lo * c, prec: self.prec }
        } else {
            Interval { lo: &self.lo * c, hi: &self.hi * c, prec: self.prec }
        }
    }

    /// Outward division by a positive integer.
    pub fn div_uint(&self, d: &BigInt) -> Self {
        assert!(d.is_positive());
        Interval { lo: self.lo.div_floor(d), hi: self.hi.div_ceil(d), prec: self.prec }
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Self {
        let p = self.prec;
        assert!(self.lo.is_positive() || self.hi.is_negative(), "reciprocal through zero");
        let one = shl(&BigInt::one(), 2 * p);
        let lo = one.div_floor(&self.hi);
        let hi = one.div_ceil(&self.lo);
        Interval { lo, hi, prec: p }
    }

    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Certified strict comparison: `Some(true)` iff self < other surely,
    /// `Some(false)` iff self >= other surely.
    pub fn lt(&self, other: &Self) -> Option<bool> {
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigInt::from(2);
        let q = BigRational::new(mid, shl(&BigInt::one(), self.prec));
        let nf: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
        let df: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
        nf / df
    }
}

/// Integer k-th root: largest `r >= 0` with `r^k <= n`.
fn iroot(n: &BigInt, k: u32) -> BigInt {
    assert!(!n.is_negative());
    if n.is_zero() {
        return BigInt::zero();
    }
    let bits = n.bits();
    let mut hi = BigInt::one() << (bits / u64::from(k) + 2);
    let mut lo = BigInt::zero();
    while &lo + 1u32 < hi {
        let mid: BigInt = (&lo + &hi) >> 1;
        if mid.clone().pow(k) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Enclosure of the real cube root of a positive integer `m`.
pub fn cbrt(m: u64, prec: u32) -> Interval {
    let scaled = BigInt::from(m) << (3 * prec);
    let r = iroot(&scaled, 3);
    Interval { lo: r.clone(), hi: r + 1u32, prec }
}

/// Enclosure of sqrt of a nonnegative rational.
pub fn sqrt_rational(q: &BigRational, prec: u32) -> Interval {
    assert!(!q.is_negative());
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = q.numer() * q.denom();
    let scaled = nd << (2 * prec);
    let r = iroot(&scaled, 2);
    let lo = r.div_floor(q.denom());
    let hi = (r + 1u32).div_ceil(q.denom());
    Interval { lo, hi, prec }
}

/// Enclosure of pi (Machin's formula with certified truncation).
pub fn pi(prec: u32) -> Interval {
    // pi = 16 atan(1/5) - 4 atan(1/239); work with guard bits.
    let work = prec + 16;
    let a5 = atan_inv(5, work);
    let a239 = atan_inv(239, work);
    let v = a5.mul_int(&BigInt::from(16)).sub(&a239.mul_int(&BigInt::from(4)));
    round_to(&v, prec)
}

/// atan(1/x) for integer x >= 2, by the alternating Taylor series.
fn atan_inv(x: i64, prec: u32) -> Interval {
    let one = BigInt::one() << prec;
    let xb = BigInt::from(x);
    let x2 = &xb * &xb;
    let mut term = one.div_floor(&xb); // floor(2^p / x)
    let mut acc_lo = BigInt::zero();
    let mut acc_hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let denom = BigInt::from(2 * k + 1);
        let t = term.div_floor(&denom);
        if t.is_zero() {
            // Remaining alternating tail is below one ulp in magnitude.
            acc_hi += 1u32;
            acc_lo -= 1u32;
            break;
        }
        // Each stored term carries at most 1 ulp of floor error.
        if k % 2 == 0 {
            acc_lo += &t;
            acc_hi += &t + 1u32;
        } else {
            acc_lo -= &t + 1u32;
            acc_hi -= &t;
        }
        term = term.div_floor(&x2);
        k += 1;
    }
    Interval { lo: acc_lo, hi: acc_hi, prec }
}

fn round_to(v: &Interval, prec: u32) -> Interval {
    assert!(v.prec >= prec);
    let k = v.prec - prec;
    Interval { lo: shr_floor(&v.lo, k), hi: shr_ceil(&v.hi, k), prec }
}

/// Enclosure of cos(2*pi*r/p) for a reduced rational turn 0 <= r/p <= 1/2.
pub fn cos_turn(r: u64, p: u64, prec: u32) -> Interval {
    assert!(p >= 1 && 2 * r <= p);
    let work = prec + 32;
    let pi_i = pi(work);
    // x = 2*pi*r/p in [0, pi]
    let x = pi_i.mul_int(&BigInt::from(2 * r)).div_uint(&BigInt::from(p));
    let c = cos_enclosure(&x, work);
    round_to(&c, prec)
}

/// cos on an interval inside [0, pi], via Taylor at the midpoint plus a
/// Lipschitz widening (|cos'| <= 1).
fn cos_enclosure(x: &Interval, prec: u32) -> Interval {
    let mid = Interval::point((&x.lo + &x.hi) >> 1, prec);
    let radius = (&x.hi - &x.lo + BigInt::one()) >> 1;
    let c = cos_taylor(&mid, prec);
    Interval { lo: c.lo - &radius, hi: c.hi + radius, prec }
}

/// cos of a near-point interval, |x| <= 4.
fn cos_taylor(x: &Interval, prec: u32) -> Interval {
    let x2 = x.mul(x);
    let mut term = Interval::exact_int(1, prec);
    let mut acc = Interval::exact_int(1, prec);
    let mut k: u64 = 1;
    loop {
        // term *= x^2 / ((2k-1)(2k)); signs alternate in the sum.
        term = term.mul(&x2).div_uint(&BigInt::from((2 * k - 1) * (2 * k)));
        if k % 2 == 1 {
            acc = acc.sub(&term);
        } else {
            acc = acc.add(&term);
        }
        // Once 2k > |x| the terms decrease, and the truncation error is
        // bounded by the magnitude of the next term; stop when that is
        // down to ulp size and pad.
        if 2 * k > 8 && term.hi.abs() <= BigInt::one() && term.lo.abs() <= BigInt::one() {
            acc = Interval { lo: acc.lo - 2u32, hi: acc.hi + 2u32, prec };
            break;
        }
        k += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(i: &Interval, v: f64, tol: f64) {
        let mid = i.to_f64();
        assert!((mid - v).abs() < tol, "interval {mid} vs expected {v}");
    }

    #[test]
    fn pi_value() {
        let p = pi(128);
        close(&p, std::f64::consts::PI, 1e-12);
        assert!(p.width_ulps() < BigInt::from(1u64 << 20));
    }

    #[test]
    fn cos_turn_values() {
        close(&cos_turn(1, 6, 128), 0.5, 1e-12); // cos 60
        close(&cos_turn(1, 4, 128), 0.0, 1e-12); // cos 90
        close(&cos_turn(1, 2, 128), -1.0, 1e-12); // cos 180
        close(&cos_turn(0, 5, 128), 1.0, 1e-12);
        close(&cos_turn(1, 7, 128), (2.0 * std::f64::consts::PI / 7.0).cos(), 1e-12);
        close(&cos_turn(3, 7, 128), (6.0 * std::f64::consts::PI / 7.0).cos(), 1e-12);
    }

    #[test]
    fn cbrt_values() {
        close(&cbrt(8, 128), 2.0, 1e-12);
        close(&cbrt(3, 128), 3f64.cbrt(), 1e-12);
        // Perfect cubes: lower endpoint is the exact integer.
        let c = cbrt(27, 64);
        assert_eq!(c.lo, BigInt::from(3) << 64);
    }

    #[test]
    fn sqrt_values() {
        let q = BigRational::new(BigInt::from(3), BigInt::from(4));
        close(&sqrt_rational(&q, 128), 0.75f64.sqrt(), 1e-12);
    }

    #[test]
    fn interval_sign_and_cmp() {
        let a = Interval::from_ratio(&BigInt::from(1), &BigInt::from(3), 64);
        let b = Interval::from_ratio(&BigInt::from(1), &BigInt::from(2), 64);
        assert_eq!(a.lt(&b), Some(true));
        assert_eq!(b.lt(&a), Some(false));
        assert_eq!(a.sign(), Some(1));
        assert_eq!(a.neg().sign(), Some(-1));
    }

    #[test]
    fn mul_encloses() {
        let a = Interval::from_ratio(&BigInt::from(-7), &BigInt::from(3), 96);
        let b = Interval::from_ratio(&BigInt::from(5), &BigInt::from(11), 96);
        close(&a.mul(&b), (-7.0 / 3.0) * (5.0 / 11.0), 1e-12);
    }

    #[test]
    fn ratio_enclosure_tight() {
        let i = Interval::from_ratio(&BigInt::from(1), &BigInt::from(3), 64);
        assert!(i.width_ulps() <= BigInt::one());
    }
}
