//! Exact scalar towers for certified Hermitian signature computation.
//!
//! Two scalar kinds back the signature engine:
//!
//! * [`Cyc`] — elements of `Z[zeta_p] = Z[x]/Phi_p(x)`, used for rational
//!   turns `omega = zeta_p^r`. Arithmetic is integral and division-free;
//!   zero detection is exact (the canonical representative is unique).
//! * [`QuadC`] — the formal ring `B[S,i]/(S^2 - dsq, i^2 + 1)` over a real
//!   base `B` (`Q` or `Q(cbrt m)`), used for angles given by an exact
//!   cosine `c`, with `S` standing for `sin theta` and `dsq = 1 - c^2`.
//!   The ring may fail to be a domain (e.g. when `dsq` is a square), but
//!   every quantity whose sign is ever queried is proven to have zero
//!   `S`- and `i`-components formally, where zero detection is again
//!   exact because `x^3 - m` is irreducible for non-cube `m`.
//!
//! Signs of formally nonzero real elements are decided by outward dyadic
//! enclosures with doubling precision.

use crate::dyadic::{self, Interval};
use crate::poly::{self, Dense};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Ring operations required by the characteristic-polynomial signature
/// engine. `conj` is complex conjugation; enclosure is of the real part
/// and requires the element to be formally conjugation-invariant.
pub trait RingScalar: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_formally_zero(&self) -> bool;
    /// `Some(sign)` when the sign is decidable without intervals.
    fn exact_sign(&self) -> Option<i8>;
    fn real_enclosure(&self, prec: u32) -> Result<Interval>;
}

/// Certified sign of a real ring element: exact zero test first, then an
/// exact fast path, then interval refinement up to the precision cap.
pub fn certified_sign<S: RingScalar>(x: &S) -> Result<i8> {
    if x.is_formally_zero() {
        return Ok(0);
    }
    if let Some(s) = x.exact_sign() {
        return Ok(s);
    }
    let cap = crate::angle::precision_cap();
    let mut prec = crate::PRECISION_START_BITS;
    loop {
        if let Some(s) = x.real_enclosure(prec)?.sign() {
            if s != 0 {
                return Ok(s);
            }
        }
        if prec >= cap {
            return Err(Error::PrecisionExhausted { bits: cap });
        }
        prec = (prec * 2).min(cap);
    }
}

// ---------------------------------------------------------------------------
// Real base field: Q or Q(cbrt m).
// ---------------------------------------------------------------------------

/// Element of `Q` or of `Q(cbrt m)` (coordinates in the basis
/// `1, g, g^2` with `g = cbrt m`, `m` not a perfect cube).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Rat(BigRational),
    Cubic { c: [BigRational; 3], m: u64 },
}

impl Base {
    pub fn rat(q: BigRational) -> Self {
        Base::Rat(q)
    }

    pub fn cubic_generator(m: u64) -> Self {
        Base::Cubic { c: [BigRational::zero(), BigRational::one(), BigRational::zero()], m }
    }

    pub fn zero_like(&self) -> Self {
        match self {
            Base::Rat(_) => Base::Rat(BigRational::zero()),
            Base::Cubic { m, .. } => Base::Cubic {
                c: [BigRational::zero(), BigRational::zero(), BigRational::zero()],
                m: *m,
            },
        }
    }

    pub fn from_rat_like(&self, q: BigRational) -> Self {
        match self {
            Base::Rat(_) => Base::Rat(q),
            Base::Cubic { m, .. } => {
                Base::Cubic { c: [q, BigRational::zero(), BigRational::zero()], m: *m }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Base::Rat(q) => q.is_zero(),
            Base::Cubic { c, .. } => c.iter().all(Zero::is_zero),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Base::Rat(a), Base::Rat(b)) => Base::Rat(a + b),
            (Base::Cubic { c: a, m }, Base::Cubic { c: b, m: m2 }) => {
                assert_eq!(m, m2);
                Base::Cubic { c: [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]], m: *m }
            }
            _ => panic!("mixed base fields"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Base::Rat(a) => Base::Rat(-a),
            Base::Cubic { c, m } => Base::Cubic { c: [-&c[0], -&c[1], -&c[2]], m: *m },
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Base::Rat(a), Base::Rat(b)) => Base::Rat(a * b),
            (Base::Cubic { c: a, m }, Base::Cubic { c: b, m: m2 }) => {
                assert_eq!(m, m2);
                let mb = BigRational::from(BigInt::from(*m));
                let mut out = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
                for i in 0..3 {
                    for j in 0..3 {
                        let prod = &a[i] * &b[j];
                        let k = i + j;
                        if k < 3 {
                            out[k] += prod;
                        } else {
                            out[k - 3] += prod * &mb;
                        }
                    }
                }
                Base::Cubic { c: out, m: *m }
            }
            _ => panic!("mixed base fields"),
        }
    }

    /// Multiplicative inverse; the base is a field.
    pub fn inv(&self) -> Result<Self> {
        match self {
            Base::Rat(a) => {
                if a.is_zero() {
                    return Err(Error::Precondition("division by zero".into()));
                }
                Ok(Base::Rat(a.recip()))
            }
            Base::Cubic { c, m } => {
                if self.is_zero() {
                    return Err(Error::Precondition("division by zero".into()));
                }
                // Extended Euclid of (c0 + c1 x + c2 x^2) against x^3 - m over Q.
                let elem = vec![c[0].clone(), c[1].clone(), c[2].clone()];
                let modulus = vec![
                    -BigRational::from(BigInt::from(*m)),
                    BigRational::zero(),
                    BigRational::zero(),
                    BigRational::one(),
                ];
                let inv = rational_poly_inverse(&elem, &modulus).ok_or_else(|| {
                    Error::Internal("cubic base element not invertible".into())
                })?;
                let mut out = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
                for (i, v) in inv.into_iter().enumerate().take(3) {
                    out[i] = v;
                }
                Ok(Base::Cubic { c: out, m: *m })
            }
        }
    }

    pub fn exact_sign(&self) -> Option<i8> {
        match self {
            Base::Rat(q) => Some(sign_of_rat(q)),
            Base::Cubic { c, .. } => {
                if c[1].is_zero() && c[2].is_zero() {
                    Some(sign_of_rat(&c[0]))
                } else {
                    None
                }
            }
        }
    }

    pub fn enclosure(&self, prec: u32) -> Interval {
        match self {
            Base::Rat(q) => Interval::from_rational(q, prec),
            Base::Cubic { c, m } => {
                let g = dyadic::cbrt(*m, prec);
                let g2 = g.mul(&g);
                Interval::from_rational(&c[0], prec)
                    .add(&Interval::from_rational(&c[1], prec).mul(&g))
                    .add(&Interval::from_rational(&c[2], prec).mul(&g2))
            }
        }
    }
}

fn sign_of_rat(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Inverse of `a` modulo `modulus` over Q (dense ascending coefficients),
/// by the extended Euclidean algorithm.
fn rational_poly_inverse(a: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    type P = Vec<BigRational>;
    fn trim(mut p: P) -> P {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }
    fn divmod(num: &P, den: &P) -> (P, P) {
        let mut rem = num.clone();
        let mut quo = vec![BigRational::zero(); num.len().saturating_sub(den.len()) + 1];
        let lead = den.last().unwrap().clone();
        while rem.len() >= den.len() && !rem.is_empty() {
            let q = rem.last().unwrap() / &lead;
            let shift = rem.len() - den.len();
            quo[shift] = q.clone();
            for (i, c) in den.iter().enumerate() {
                let t = c * &q;
                rem[shift + i] -= t;
            }
            rem = trim(rem);
        }
        (trim(quo), rem)
    }
    let (mut r0, mut r1) = (trim(modulus.to_vec()), trim(a.to_vec()));
    let (mut t0, mut t1): (P, P) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let t = {
            // t0 - q*t1
            let mut prod = vec![BigRational::zero(); q.len() + t1.len()];
            for (i, x) in q.iter().enumerate() {
                for (j, y) in t1.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            let mut out = t0.clone();
            if out.len() < prod.len() {
                out.resize(prod.len(), BigRational::zero());
            }
            for (i, v) in prod.into_iter().enumerate() {
                out[i] -= v;
            }
            trim(out)
        };
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    // r0 = gcd; invertible iff constant.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(t0.into_iter().map(|x| x / &c).collect())
}

// ---------------------------------------------------------------------------
// Formal complex quadratic extension over Base.
// ---------------------------------------------------------------------------

/// `(a + b S) + i (c + d S)` with `S^2 = dsq` in the base.
#[derive(Clone, Debug)]
pub struct QuadC {
    pub a: Base,
    pub b: Base,
    pub c: Base,
    pub d: Base,
    pub dsq: Base,
}

impl QuadC {
    pub fn real(a: Base, dsq: Base) -> Self {
        let z = a.zero_like();
        QuadC { a, b: z.clone(), c: z.clone(), d: z, dsq }
    }

    /// `x + i y` with `x, y` in the quadratic extension.
    pub fn new(a: Base, b: Base, c: Base, d: Base, dsq: Base) -> Self {
        QuadC { a, b, c, d, dsq }
    }
}

impl RingScalar for QuadC {
    fn zero_like(&self) -> Self {
        QuadC::real(self.a.zero_like(), self.dsq.clone())
    }

    fn one_like(&self) -> Self {
        QuadC::real(self.a.from_rat_like(BigRational::one()), self.dsq.clone())
    }

    fn add(&self, o: &Self) -> Self {
        QuadC {
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
            c: self.c.add(&o.c),
            d: self.d.add(&o.d),
            dsq: self.dsq.clone(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        // (x1 + i y1)(x2 + i y2) = (x1 x2 - y1 y2) + i (x1 y2 + y1 x2),
        // with each x, y in B[S]/(S^2 - dsq).
        let qmul = |a1: &Base, b1: &Base, a2: &Base, b2: &Base| -> (Base, Base) {
            let aa = a1.mul(a2);
            let bb = b1.mul(b2).mul(&self.dsq);
            let ab = a1.mul(b2).add(&b1.mul(a2));
            (aa.add(&bb), ab)
        };
        let (x1a, x1b, y1a, y1b) = (&self.a, &self.b, &self.c, &self.d);
        let (x2a, x2b, y2a, y2b) = (&o.a, &o.b, &o.c, &o.d);
        let (xx_a, xx_b) = qmul(x1a, x1b, x2a, x2b);
        let (yy_a, yy_b) = qmul(y1a, y1b, y2a, y2b);
        let (xy_a, xy_b) = qmul(x1a, x1b, y2a, y2b);
        let (yx_a, yx_b) = qmul(y1a, y1b, x2a, x2b);
        QuadC {
            a: xx_a.sub(&yy_a),
            b: xx_b.sub(&yy_b),
            c: xy_a.add(&yx_a),
            d: xy_b.add(&yx_b),
            dsq: self.dsq.clone(),
        }
    }

    fn neg(&self) -> Self {
        QuadC {
            a: self.a.neg(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.d.neg(),
            dsq: self.dsq.clone(),
        }
    }

    fn conj(&self) -> Self {
        QuadC {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.neg(),
            d: self.d.neg(),
            dsq: self.dsq.clone(),
        }
    }

    fn is_formally_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn exact_sign(&self) -> Option<i8> {
        if self.b.is_zero() && self.c.is_zero() && self.d.is_zero() {
            self.a.exact_sign()
        } else {
            None
        }
    }

    fn real_enclosure(&self, prec: u32) -> Result<Interval> {
        if !self.c.is_zero() || !self.d.is_zero() || !self.b.is_zero() {
            return Err(Error::Internal(
                "real enclosure requested for an element with formal S/imaginary part".into(),
            ));
        }
        Ok(self.a.enclosure(prec))
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic integers Z[x]/Phi_p(x).
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct CycCtx {
    pub p: u64,
    /// Phi_p, dense ascending, monic.
    pub phi: Dense,
}

impl CycCtx {
    pub fn new(p: u64) -> Arc<Self> {
        Arc::new(CycCtx { p, phi: poly::cyclotomic(p as usize) })
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

/// Element of `Z[zeta_p]`, canonical representative of degree < phi(p).
#[derive(Clone, Debug)]
pub struct Cyc {
    pub coeffs: Vec<BigInt>,
    pub ctx: Arc<CycCtx>,
}

impl Cyc {
    pub fn from_poly(mut coeffs: Vec<BigInt>, ctx: Arc<CycCtx>) -> Self {
        reduce_mod_phi(&mut coeffs, &ctx.phi);
        coeffs.resize(ctx.degree(), BigInt::zero());
        Cyc { coeffs, ctx }
    }

    pub fn zero(ctx: Arc<CycCtx>) -> Self {
        Cyc { coeffs: vec![BigInt::zero(); ctx.degree()], ctx }
    }

    pub fn from_int(n: BigInt, ctx: Arc<CycCtx>) -> Self {
        Cyc::from_poly(vec![n], ctx)
    }

    /// `zeta^k`.
    pub fn zeta_pow(k: u64, ctx: Arc<CycCtx>) -> Self {
        let k = (k % ctx.p) as usize;
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Cyc::from_poly(coeffs, ctx)
    }
}

fn reduce_mod_phi(coeffs: &mut Vec<BigInt>, phi: &Dense) {
    let deg = phi.len() - 1;
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    while coeffs.len() > deg {
        let lead = coeffs.pop().unwrap();
        let shift = coeffs.len() - deg;
        // phi is monic: subtract lead * x^shift * (phi - x^deg).
        for (i, c) in phi.iter().take(deg).enumerate() {
            let t = c * &lead;
            coeffs[shift + i] -= t;
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
    }
}

impl RingScalar for Cyc {
    fn zero_like(&self) -> Self {
        Cyc::zero(self.ctx.clone())
    }

    fn one_like(&self) -> Self {
        Cyc::from_int(BigInt::one(), self.ctx.clone())
    }

    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.ctx.p, o.ctx.p);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Cyc { coeffs, ctx: self.ctx.clone() }
    }

    fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.ctx.p, o.ctx.p);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Cyc { coeffs, ctx: self.ctx.clone() }
    }

    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.ctx.p, o.ctx.p);
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut prod = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        Cyc::from_poly(prod, self.ctx.clone())
    }

    fn neg(&self) -> Self {
        Cyc { coeffs: self.coeffs.iter().map(|c| -c).collect(), ctx: self.ctx.clone() }
    }

    fn conj(&self) -> Self {
        let p = self.ctx.p;
        let mut out = vec![BigInt::zero(); p as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[((p - j as u64) % p) as usize] += c;
        }
        Cyc::from_poly(out, self.ctx.clone())
    }

    fn is_formally_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn exact_sign(&self) -> Option<i8> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = &self.coeffs[0];
            Some(if c.is_zero() {
                0
            } else if c.is_positive() {
                1
            } else {
                -1
            })
        } else {
            None
        }
    }

    fn real_enclosure(&self, prec: u32) -> Result<Interval> {
        // Conjugation invariance makes the value real; enclose the cosine
        // expansion sum_j a_j cos(2 pi j / p).
        if !self.sub(&self.conj()).is_formally_zero() {
            return Err(Error::Internal(
                "real enclosure requested for a non-conjugation-invariant element".into(),
            ));
        }
        let p = self.ctx.p;
        let mut acc = Interval::exact_int(0, prec);
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let j = j as u64;
            let folded = if 2 * j > p { p - j } else { j };
            let c = dyadic::cos_turn(folded, p, prec);
            acc = acc.add(&c.mul_int(a));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cubic_field_arithmetic() {
        // (1 + g)(1 - g + g^2) = 1 + g^3 = 1 + m with g = cbrt m.
        let m = 2u64;
        let one = Base::Cubic { c: [rat(1, 1), rat(0, 1), rat(0, 1)], m };
        let g = Base::cubic_generator(m);
        let a = one.add(&g);
        let b = Base::Cubic { c: [rat(1, 1), rat(-1, 1), rat(1, 1)], m };
        let prod = a.mul(&b);
        assert_eq!(prod, Base::Cubic { c: [rat(3, 1), rat(0, 1), rat(0, 1)], m });
    }

    #[test]
    fn cubic_inverse() {
        let g = Base::cubic_generator(5);
        let one = g.from_rat_like(rat(1, 1));
        let x = one.add(&g); // 1 + cbrt 5
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), one);
    }

    #[test]
    fn cubic_enclosure_matches_f64() {
        let g = Base::cubic_generator(3);
        let x = g.mul(&g).add(&g.from_rat_like(rat(-7, 5))); // 3^{2/3} - 1.4
        let i = x.enclosure(128);
        let want = 3f64.powf(2.0 / 3.0) - 1.4;
        assert!((i.to_f64() - want).abs() < 1e-12);
        assert_eq!(certified_sign(&QuadC::real(x, g.zero_like())).unwrap(), 1);
    }

    #[test]
    fn quadc_complex_mul() {
        // Over Q with dsq = 1: S plays the role of 1 formally, but the
        // ring identities must hold regardless; check (i)(i) = -1 and
        // (S)(S) = dsq.
        let dsq = Base::Rat(rat(9, 16));
        let zero = dsq.zero_like();
        let one = Base::Rat(rat(1, 1));
        let i_elem = QuadC::new(zero.clone(), zero.clone(), one.clone(), zero.clone(), dsq.clone());
        let ii = i_elem.mul(&i_elem);
        assert!(ii.add(&ii.one_like()).is_formally_zero());
        let s_elem = QuadC::new(zero.clone(), one.clone(), zero.clone(), zero.clone(), dsq.clone());
        let ss = s_elem.mul(&s_elem);
        assert!(ss.sub(&QuadC::real(dsq.clone(), dsq.clone())).is_formally_zero());
    }

    #[test]
    fn cyc_arithmetic_and_conj() {
        let ctx = CycCtx::new(5);
        assert_eq!(ctx.degree(), 4);
        // 1 + zeta + zeta^2 + zeta^3 + zeta^4 = 0.
        let mut acc = Cyc::zero(ctx.clone());
        for k in 0..5 {
            acc = acc.add(&Cyc::zeta_pow(k, ctx.clone()));
        }
        assert!(acc.is_formally_zero());
        // zeta * zeta^4 = 1.
        let z = Cyc::zeta_pow(1, ctx.clone());
        let z4 = Cyc::zeta_pow(4, ctx.clone());
        assert!(z.mul(&z4).sub(&z.one_like()).is_formally_zero());
        // conj(zeta) = zeta^4.
        assert!(z.conj().sub(&z4).is_formally_zero());
    }

    #[test]
    fn cyc_real_enclosure() {
        // zeta_5 + zeta_5^4 = 2 cos(72 deg) = (sqrt 5 - 1)/2.
        let ctx = CycCtx::new(5);
        let x = Cyc::zeta_pow(1, ctx.clone()).add(&Cyc::zeta_pow(4, ctx.clone()));
        let i = x.real_enclosure(128).unwrap();
        let want = (5f64.sqrt() - 1.0) / 2.0;
        assert!((i.to_f64() - want).abs() < 1e-12);
        assert_eq!(certified_sign(&x).unwrap(), 1);
    }

    #[test]
    fn certified_sign_exact_paths() {
        let q = QuadC::real(Base::Rat(rat(-3, 7)), Base::Rat(rat(1, 2)));
        assert_eq!(certified_sign(&q).unwrap(), -1);
        let z = q.sub(&q);
        assert_eq!(certified_sign(&z).unwrap(), 0);
    }
}
