//! Laurent polynomials over an exact integer scalar, and the dense
//! integer-polynomial routines (gcd, resultants, cyclotomics, square-free
//! decomposition, Kronecker factorization) used by the knot and cover
//! operations.

use crate::scalar::IntScalar;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial: exponent -> coefficient, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<I> {
    coeffs: BTreeMap<i64, I>,
}

impl<I: IntScalar> Laurent<I> {
    pub fn zero() -> Self {
        Laurent { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Laurent::monomial(0, I::one())
    }

    pub fn monomial(exp: i64, coeff: I) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        Laurent { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, I)>) -> Self {
        let mut p = Laurent::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: I) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(I::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> I {
        self.coeffs.get(&exp).cloned().unwrap_or_else(I::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &I)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.coeffs.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::zero();
        for (e1, c1) in self.coeffs.iter() {
            for (e2, c2) in other.coeffs.iter() {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Laurent::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `t^k * f(1/t)` for the minimal `k` making the result a Laurent
    /// polynomial supported on the same span.
    pub fn reciprocal(&self) -> Self {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Canonical representative up to units `+-t^k`: lowest exponent 0,
    /// positive leading coefficient.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let negate = self.coeffs[&hi].is_negative();
        Laurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e - lo, if negate { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Equality up to multiplication by `+-t^k`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    pub fn eval_int(&self, x: &I) -> Result<I> {
        if self.min_exp().unwrap_or(0) < 0 {
            return Err(Error::Precondition("integer evaluation of a Laurent tail".into()));
        }
        let mut acc = I::zero();
        for (e, c) in self.coeffs.iter() {
            let mut term = c.clone();
            for _ in 0..*e {
                term *= x.clone();
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.coeffs.iter() {
            let mut term = BigRational::from(c.to_bigint());
            if *e >= 0 {
                for _ in 0..*e {
                    term *= x.clone();
                }
            } else {
                for _ in 0..e.unsigned_abs() {
                    term /= x.clone();
                }
            }
            acc += term;
        }
        acc
    }

    pub fn to_big(&self) -> Laurent<BigInt> {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.to_bigint())).collect() }
    }

    /// Dense coefficient vector of the normalized representative
    /// (ascending exponents starting at 0).
    pub fn dense_normalized(&self) -> Vec<BigInt> {
        let n = self.normalize();
        match n.max_exp() {
            None => vec![],
            Some(hi) => (0..=hi).map(|e| n.coeff(e).to_bigint()).collect(),
        }
    }
}

impl<I: IntScalar> fmt::Display for Laurent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{sign}")?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<I: IntScalar> fmt::Debug for Laurent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Dense integer polynomials (ascending coefficients, no trailing zeros).
// ---------------------------------------------------------------------------

pub type Dense = Vec<BigInt>;

pub fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn deg(p: &Dense) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn dense_sub(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

pub fn dense_eval(p: &Dense, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exact division; errors if `b` does not divide `a` over the integers.
pub fn dense_div_exact(a: &Dense, b: &Dense) -> Result<Dense> {
    if b.is_empty() {
        return Err(Error::Precondition("division by the zero polynomial".into()));
    }
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(b.len()) + 1];
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let (qc, r) = rem.last().unwrap().div_rem(&lead);
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        q[shift] = qc.clone();
        for (i, c) in b.iter().enumerate() {
            let t = c * &qc;
            rem[shift + i] -= t;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() >= b.len() && rem.last().unwrap().is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
    }
    if !rem.is_empty() {
        return Err(Error::Internal("nonzero remainder in exact division".into()));
    }
    Ok(trim(q))
}

fn content(p: &Dense) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

pub fn primitive_part(p: &Dense) -> Dense {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Primitive gcd over the integers (primitive pseudo-remainder sequence).
pub fn dense_gcd(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() {
        return normalize_sign(primitive_part(b));
    }
    if b.is_empty() {
        return normalize_sign(primitive_part(a));
    }
    let (mut f, mut g) = (primitive_part(a), primitive_part(b));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        // Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g.
        let lead = g.last().unwrap().clone();
        let k = f.len() - g.len() + 1;
        let mut scaled = f.clone();
        for c in scaled.iter_mut() {
            for _ in 0..k {
                *c *= &lead;
            }
        }
        let mut rem = scaled;
        while rem.len() >= g.len() && !rem.is_empty() {
            let shift = rem.len() - g.len();
            let (qc, r) = rem.last().unwrap().div_rem(&lead);
            debug_assert!(r.is_zero());
            let _ = r;
            for (i, c) in g.iter().enumerate() {
                let t = c * &qc;
                rem[shift + i] -= t;
            }
            rem = trim(rem);
        }
        f = g;
        g = primitive_part(&rem);
    }
    normalize_sign(f)
}

fn normalize_sign(p: Dense) -> Dense {
    if p.last().is_some_and(Signed::is_negative) {
        p.into_iter().map(|c| -c).collect()
    } else {
        p
    }
}

pub fn derivative(p: &Dense) -> Dense {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// Square-free decomposition (Yun): returns `(part, multiplicity)` with
/// `p = unit * prod part_i^multiplicity_i`, the parts square-free, primitive,
/// pairwise coprime, and non-constant.
pub fn squarefree_decomposition(p: &Dense) -> Vec<(Dense, usize)> {
    let p = normalize_sign(primitive_part(p));
    if deg(&p).is_none_or(|d| d == 0) {
        return vec![];
    }
    let dp = derivative(&p);
    let mut out = Vec::new();
    let g = dense_gcd(&p, &dp);
    let mut w = dense_div_exact(&p, &g).expect("gcd divides");
    let mut y = dense_div_exact(&dp, &g).expect("gcd divides");
    let mut i = 1;
    loop {
        let z = dense_sub(&y, &derivative(&w));
        if z.is_empty() {
            if deg(&w).is_some_and(|d| d > 0) {
                out.push((normalize_sign(primitive_part(&w)), i));
            }
            break;
        }
        let f = dense_gcd(&w, &z);
        if deg(&f).is_some_and(|d| d > 0) {
            out.push((normalize_sign(primitive_part(&f)), i));
        }
        w = dense_div_exact(&w, &f).expect("gcd divides");
        y = dense_div_exact(&z, &f).expect("gcd divides");
        i += 1;
    }
    out
}

/// Resultant of two integer polynomials via the Sylvester determinant.
pub fn resultant(a: &Dense, b: &Dense) -> Result<BigInt> {
    let (da, db) = match (deg(a), deg(b)) {
        (Some(da), Some(db)) => (da, db),
        // Res(f, const c) = c^deg f; Res with the zero polynomial is 0
        // unless both are nonzero constants.
        _ => return Err(Error::Precondition("resultant of a zero polynomial".into())),
    };
    if da == 0 && db == 0 {
        return Ok(BigInt::one());
    }
    if da == 0 {
        return Ok(a[0].clone().pow(db as u32));
    }
    if db == 0 {
        return Ok(b[0].clone().pow(da as u32));
    }
    let n = da + db;
    let syl = crate::matrix::Mat::from_fn(n, n, |i, j| {
        if i < db {
            // Row of a, shifted i: coefficient of x^(n-1-j) in x^(db-1-i)*a.
            let e = (n - 1 - j) as i64 - (db - 1 - i) as i64;
            if (0..=da as i64).contains(&e) {
                a[e as usize].clone()
            } else {
                BigInt::zero()
            }
        } else {
            let k = i - db;
            let e = (n - 1 - j) as i64 - (da - 1 - k) as i64;
            if (0..=db as i64).contains(&e) {
                b[e as usize].clone()
            } else {
                BigInt::zero()
            }
        }
    });
    syl.det()
}

/// `x^n - 1` as a dense polynomial.
pub fn x_pow_minus_one(n: usize) -> Dense {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    p
}

/// The n-th cyclotomic polynomial, by iterated exact division.
pub fn cyclotomic(n: usize) -> Dense {
    assert!(n >= 1);
    let mut num = x_pow_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            num = dense_div_exact(&num, &cyclotomic(d)).expect("cyclotomic division is exact");
        }
    }
    num
}

// ---------------------------------------------------------------------------
// Factorization over the integers (Kronecker interpolation).
// ---------------------------------------------------------------------------

const KRONECKER_DEG_CAP: usize = 12;
const KRONECKER_COMBO_CAP: u128 = 2_000_000;

/// Irreducible factorization of a nonzero integer polynomial, up to sign:
/// returns primitive irreducible factors with multiplicities.
pub fn factor(p: &Dense) -> Result<Vec<(Dense, usize)>> {
    if p.is_empty() {
        return Err(Error::Precondition("factorization of the zero polynomial".into()));
    }
    if deg(p).is_some_and(|d| d > KRONECKER_DEG_CAP) {
        return Err(Error::Unsupported(format!(
            "factorization degree {} exceeds the cap {KRONECKER_DEG_CAP}",
            deg(p).unwrap()
        )));
    }
    let mut out: Vec<(Dense, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for q in factor_squarefree(&part)? {
            merge_factor(&mut out, q, mult);
        }
    }
    out.sort();
    Ok(out)
}

fn merge_factor(out: &mut Vec<(Dense, usize)>, q: Dense, mult: usize) {
    for (f, m) in out.iter_mut() {
        if *f == q {
            *m += mult;
            return;
        }
    }
    out.push((q, mult));
}

fn factor_squarefree(p: &Dense) -> Result<Vec<Dense>> {
    let mut p = normalize_sign(primitive_part(p));
    let mut out = Vec::new();
    // Strip roots at zero.
    while p.first().is_some_and(Zero::is_zero) {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        p.remove(0);
    }
    // Strip rational roots (gives all linear factors).
    loop {
        match rational_root(&p) {
            Some((num, den)) => {
                // factor den*x - num
                let lin = trim(vec![-num.clone(), den.clone()]);
                p = dense_div_exact(&dense_mul_primitive(&p, &den, deg(&p).unwrap()), &lin)
                    .or_else(|_| dense_div_exact(&p, &lin))?;
                p = normalize_sign(primitive_part(&p));
                out.push(normalize_sign(lin));
            }
            None => break,
        }
    }
    if let Some(d) = deg(&p) {
        if d >= 2 {
            kronecker(&p, &mut out)?;
        } else if d == 1 {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

// Multiply so that the linear factor divides exactly over Z when the root
// denominator is nontrivial; the primitive part afterwards removes it again.
fn dense_mul_primitive(p: &Dense, den: &BigInt, d: usize) -> Dense {
    if den.is_one() {
        return p.clone();
    }
    let mut out = p.clone();
    for c in out.iter_mut() {
        for _ in 0..d {
            *c *= den;
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut big = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d2 = &d * &d;
        if d2 > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            if d2 != n {
                big.push(&n / &d);
            }
        }
        d += 1;
    }
    big.reverse();
    small.extend(big);
    small
}

fn rational_root(p: &Dense) -> Option<(BigInt, BigInt)> {
    let d = deg(p)?;
    if d == 0 {
        return None;
    }
    let a0 = &p[0];
    let an = p.last().unwrap();
    if a0.is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    for q in divisors(an) {
        for pnum in divisors(a0) {
            for s in [1, -1] {
                let num = &pnum * BigInt::from(s);
                if num.gcd(&q) != BigInt::one() {
                    continue;
                }
                // Evaluate p(num/q) * q^d exactly: sum c_i num^i q^(d-i).
                let mut acc = BigInt::zero();
                for (i, c) in p.iter().enumerate() {
                    let mut term = c.clone();
                    for _ in 0..i {
                        term *= &num;
                    }
                    for _ in 0..(d - i) {
                        term *= &q;
                    }
                    acc += term;
                }
                if acc.is_zero() {
                    return Some((num, q));
                }
            }
        }
    }
    None
}

/// Kronecker interpolation search on a squarefree primitive polynomial with
/// no rational roots; pushes irreducible factors to `out`.
fn kronecker(f: &Dense, out: &mut Vec<Dense>) -> Result<()> {
    let d = deg(f).unwrap();
    if d <= 3 {
        // No rational roots and degree <= 3: irreducible over Q.
        out.push(f.clone());
        return Ok(());
    }
    let half = d / 2;
    for target in 2..=half {
        // Sample points 0, 1, -1, 2, -2, ...
        let points: Vec<BigInt> = (0..=target as i64)
            .map(|k| BigInt::from(if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 }))
            .collect();
        let values: Vec<BigInt> = points.iter().map(|x| dense_eval(f, x)).collect();
        debug_assert!(values.iter().all(|v| !v.is_zero()));
        let div_sets: Vec<Vec<BigInt>> = values.iter().map(divisors).collect();
        let mut combos: u128 = 1;
        for s in &div_sets {
            combos = combos.saturating_mul(2 * s.len() as u128);
        }
        if combos > KRONECKER_COMBO_CAP {
            return Err(Error::Unsupported(format!(
                "factorization search needs {combos} interpolations (cap {KRONECKER_COMBO_CAP})"
            )));
        }
        let mut idx = vec![0usize; points.len()];
        let mut signs = vec![false; points.len()];
        loop {
            let ys: Vec<BigInt> = idx
                .iter()
                .zip(&signs)
                .enumerate()
                .map(|(i, (&k, &neg))| {
                    let v = div_sets[i][k].clone();
                    if neg {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            if let Some(g) = interpolate_integer(&points, &ys) {
                if deg(&g).is_some_and(|dg| dg >= 1 && dg <= half) {
                    let g = normalize_sign(primitive_part(&g));
                    if divides(&g, f) {
                        let rest = exact_quotient(f, &g);
                        // Both pieces are squarefree with no rational roots.
                        kronecker_or_push(&g, out)?;
                        kronecker_or_push(&rest, out)?;
                        return Ok(());
                    }
                }
            }
            // Advance odometer over (sign, divisor) choices.
            let mut pos = 0;
            loop {
                if pos == points.len() {
                    break;
                }
                if !signs[pos] {
                    signs[pos] = true;
                    break;
                }
                signs[pos] = false;
                idx[pos] += 1;
                if idx[pos] < div_sets[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == points.len() {
                break;
            }
        }
    }
    out.push(f.clone());
    Ok(())
}

fn kronecker_or_push(g: &Dense, out: &mut Vec<Dense>) -> Result<()> {
    if deg(g).is_some_and(|d| d >= 2) {
        kronecker(g, out)
    } else {
        out.push(g.clone());
        Ok(())
    }
}

fn divides(g: &Dense, f: &Dense) -> bool {
    // Work over Q: g | f in Q[x] and both primitive => g | f in Z[x].
    let gr: Vec<BigRational> = g.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut rem: Vec<BigRational> = f.iter().map(|c| BigRational::from(c.clone())).collect();
    let lead = gr.last().unwrap().clone();
    while rem.len() >= gr.len() {
        let q = rem.last().unwrap() / &lead;
        let shift = rem.len() - gr.len();
        for (i, c) in gr.iter().enumerate() {
            let t = c * &q;
            rem[shift + i] -= t;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        if rem.is_empty() {
            return true;
        }
    }
    rem.is_empty()
}

fn exact_quotient(f: &Dense, g: &Dense) -> Dense {
    // f, g primitive with g | f up to sign over Z.
    let gr: Vec<BigRational> = g.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut rem: Vec<BigRational> = f.iter().map(|c| BigRational::from(c.clone())).collect();
    let lead = gr.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); f.len() - g.len() + 1];
    while rem.len() >= gr.len() {
        let qc = rem.last().unwrap() / &lead;
        let shift = rem.len() - gr.len();
        q[shift] = qc.clone();
        for (i, c) in gr.iter().enumerate() {
            let t = c * &qc;
            rem[shift + i] -= t;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    assert!(rem.is_empty());
    let quotient: Dense = q
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "quotient of primitive divisor not integral");
            c.to_integer()
        })
        .collect();
    normalize_sign(primitive_part(&trim(quotient)))
}

fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> Option<Dense> {
    // Lagrange interpolation over Q; keep only integer results.
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // Basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j).
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let xj = BigRational::from(xs[j].clone());
            // basis *= (x - xj)
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from(&xs[i] - &xs[j]);
        }
        let scale = BigRational::from(ys[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(trim(out))
}

/// `t^deg q * q(1/t)`, the reciprocal of a dense polynomial.
pub fn dense_reciprocal(q: &Dense) -> Dense {
    let mut r = q.clone();
    r.reverse();
    trim(r)
}

/// Whether `q = +- t^deg q * q(1/t)`.
pub fn is_self_reciprocal(q: &Dense) -> bool {
    let r = dense_reciprocal(q);
    let neg: Dense = q.iter().map(|c| -c.clone()).collect();
    r == *q || r == neg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Dense {
        trim(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn laurent_normalize() {
        let p: Laurent<i64> = Laurent::from_coeffs([(-1, -2), (0, 5), (1, -2)]);
        let n = p.normalize();
        assert_eq!(n, Laurent::from_coeffs([(0, 2), (1, -5), (2, 2)]));
        assert_eq!(format!("{n}"), "2t^2-5t+2");
    }

    #[test]
    fn laurent_mul_matches_hand() {
        // (2t-1)(t-2) = 2t^2 - 5t + 2
        let a: Laurent<i64> = Laurent::from_coeffs([(0, -1), (1, 2)]);
        let b: Laurent<i64> = Laurent::from_coeffs([(0, -2), (1, 1)]);
        assert_eq!(a.mul(&b), Laurent::from_coeffs([(0, 2), (1, -5), (2, 2)]));
    }

    #[test]
    fn gcd_and_division() {
        let a = dense_mul(&d(&[1, 1]), &d(&[-1, 0, 1])); // (x+1)(x^2-1)
        let b = dense_mul(&d(&[1, 1]), &d(&[2, 1])); // (x+1)(x+2)
        assert_eq!(dense_gcd(&a, &b), d(&[1, 1]));
        assert_eq!(dense_div_exact(&a, &d(&[1, 1])).unwrap(), d(&[-1, 0, 1]));
    }

    #[test]
    fn resultant_known_values() {
        // Res(x^2-1, x^2-4) = product over roots of first of second:
        // (1-4)(1-4) = 9.
        assert_eq!(resultant(&d(&[-1, 0, 1]), &d(&[-4, 0, 1])).unwrap(), BigInt::from(9));
        // Res(t^2-t+1, t^2-1) = Delta(1)*Delta(-1) = 1*3 = 3.
        assert_eq!(resultant(&d(&[1, -1, 1]), &d(&[-1, 0, 1])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), d(&[-1, 1]));
        assert_eq!(cyclotomic(2), d(&[1, 1]));
        assert_eq!(cyclotomic(4), d(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), d(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), d(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn squarefree_marks_multiplicity() {
        // (x-1)^2 (x+2)
        let p = dense_mul(&dense_mul(&d(&[-1, 1]), &d(&[-1, 1])), &d(&[2, 1]));
        let parts = squarefree_decomposition(&p);
        assert_eq!(parts, vec![(d(&[2, 1]), 1), (d(&[-1, 1]), 2)]);
    }

    #[test]
    fn factor_products() {
        // 2t^2 - 5t + 2 = (2t-1)(t-2) up to sign conventions.
        let f = factor(&d(&[2, -5, 2])).unwrap();
        assert_eq!(f.len(), 2);
        let polys: Vec<Dense> = f.iter().map(|(q, _)| q.clone()).collect();
        assert!(polys.contains(&d(&[-1, 2])));
        assert!(polys.contains(&d(&[-2, 1])));
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let f = factor(&d(&[1, -1, 1])).unwrap();
        assert_eq!(f, vec![(d(&[1, -1, 1]), 1)]);
    }

    #[test]
    fn factor_quartic_into_quadratics() {
        // (x^2+x+1)(x^2-x+3) has no rational roots.
        let p = dense_mul(&d(&[1, 1, 1]), &d(&[3, -1, 1]));
        let f = factor(&p).unwrap();
        let polys: Vec<Dense> = f.iter().map(|(q, _)| q.clone()).collect();
        assert_eq!(polys.len(), 2);
        assert!(polys.contains(&d(&[1, 1, 1])));
        assert!(polys.contains(&d(&[3, -1, 1])));
    }

    #[test]
    fn factor_with_multiplicity_and_linear() {
        // x^2 (x^2 - x + 1)^2 (2x - 1)
        let sq = dense_mul(&d(&[1, -1, 1]), &d(&[1, -1, 1]));
        let p = dense_mul(&dense_mul(&d(&[0, 0, 1]), &sq), &d(&[-1, 2]));
        let f = factor(&p).unwrap();
        assert!(f.contains(&(d(&[0, 1]), 2)));
        assert!(f.contains(&(d(&[1, -1, 1]), 2)));
        assert!(f.contains(&(d(&[-1, 2]), 1)));
    }

    #[test]
    fn self_reciprocal_detection() {
        assert!(is_self_reciprocal(&d(&[1, -1, 1])));
        assert!(is_self_reciprocal(&d(&[1, 1])));
        assert!(is_self_reciprocal(&d(&[-1, 1]))); // 1 - t = -(t - 1) reversed
        assert!(!is_self_reciprocal(&d(&[-1, 2])));
    }
}
