//! Seifert-matrix knot algebra: Alexander polynomials, certified
//! Levine-Tristram signatures at exact angles, Arf invariants,
//! composition, and hyperbolicity tests.
//!
//! Conventions: `Delta(t) = det(V - t V^T)` normalized to lowest exponent
//! zero and positive leading coefficient; `sigma(omega)` is the signature
//! of `(1-omega)V + (1-conj omega)V^T`. With these choices the catalog
//! trefoil `[[-1,1],[0,-1]]` has `sigma(-1) = -2`; the opposite global
//! sign would correspond to mirroring every knot.

use crate::angle::ExactAngle;
use crate::fields::Base;
use crate::matrix::Mat;
use crate::poly::{self, Dense, Laurent};
use crate::scalar::IntScalar;
use crate::{hermitian, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

/// A validated Seifert matrix: square of even dimension with
/// `V - V^T` unimodular. The 0x0 matrix is the unknot.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Seifert<I> {
    mat: Mat<I>,
}

impl<I: IntScalar> Seifert<I> {
    pub fn new(mat: Mat<I>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        if mat.nrows() % 2 != 0 {
            return Err(Error::InvalidMatrix(format!("odd dimension {}", mat.nrows())));
        }
        let skew = mat.sub_mat(&mat.transpose());
        let det = skew.det()?;
        if !det.abs().is_one() {
            return Err(Error::InvalidMatrix(format!(
                "V - V^T has determinant {det}, expected +-1"
            )));
        }
        Ok(Seifert { mat })
    }

    pub fn unknot() -> Self {
        Seifert { mat: Mat::zeros(0, 0) }
    }

    pub fn from_rows(rows: Vec<Vec<I>>) -> Result<Self> {
        Seifert::new(Mat::from_rows(rows)?)
    }

    pub fn matrix(&self) -> &Mat<I> {
        &self.mat
    }

    pub fn genus(&self) -> usize {
        self.mat.nrows() / 2
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// `Delta(t) = det(V - t V^T)`, normalized (lowest exponent 0,
    /// positive leading coefficient). Satisfies `Delta(1) = +-1`.
    pub fn alexander_polynomial(&self) -> Laurent<I> {
        let n = self.dim();
        let entries: Vec<Vec<Laurent<I>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        Laurent::from_coeffs([
                            (0, self.mat[(i, j)].clone()),
                            (1, -self.mat[(j, i)].clone()),
                        ])
                    })
                    .collect()
            })
            .collect();
        det_laurent(&entries).normalize()
    }

    /// Arf invariant: 0 iff `|Delta(-1)| = +-1 (mod 8)`.
    pub fn arf(&self) -> u8 {
        let d = self
            .alexander_polynomial()
            .eval_int(&I::from(-1))
            .expect("normalized polynomial")
            .abs()
            .to_bigint();
        let r: BigInt = d % BigInt::from(8);
        if r == BigInt::one() || r == BigInt::from(7) {
            0
        } else {
            1
        }
    }

    /// Knot determinant `|Delta(-1)|`.
    pub fn determinant(&self) -> BigInt {
        self.alexander_polynomial()
            .eval_int(&I::from(-1))
            .expect("normalized polynomial")
            .abs()
            .to_bigint()
    }

    pub fn mirror(&self) -> Self {
        Seifert { mat: self.mat.transpose().neg() }
    }

    pub fn reverse_orientation(&self) -> Self {
        Seifert { mat: self.mat.transpose() }
    }

    pub fn connected_sum(&self, other: &Self) -> Self {
        Seifert { mat: self.mat.block_diag(&other.mat) }
    }

    fn delta_dense(&self) -> Dense {
        self.to_big_mat_delta()
    }

    fn to_big_mat_delta(&self) -> Dense {
        self.alexander_polynomial().dense_normalized()
    }

    /// Whether `Delta(omega) = 0` — the angle is a jump point of the
    /// signature function. Exact for every supported angle form.
    pub fn is_jump(&self, angle: &ExactAngle) -> Result<bool> {
        if self.dim() == 0 || angle.is_zero_angle() {
            return Ok(false);
        }
        let delta = self.delta_dense();
        match angle.rational_cos() {
            Some(c) => {
                if c.abs() == BigRational::one() {
                    // Delta(1) = +-1 and Delta(-1) is odd: never zero.
                    return Ok(false);
                }
                Ok(delta_vanishes_at_cos(&delta, &Base::Rat(c)))
            }
            None => match angle {
                ExactAngle::CosCbrt { m } => {
                    let c = cbrt_cos_base(*m);
                    Ok(delta_vanishes_at_cos(&delta, &c))
                }
                ExactAngle::RationalTurn { p, .. } => {
                    // Primitive p-th roots: common root with Phi_p, via the
                    // integer resultant.
                    let phi = poly::cyclotomic(*p as usize);
                    Ok(poly::resultant(&delta, &phi)?.is_zero())
                }
                ExactAngle::CosRational { .. } => unreachable!(),
            },
        }
    }

    /// Certified Levine-Tristram signature at an exact angle.
    pub fn signature_at(&self, angle: &ExactAngle) -> Result<i64> {
        if self.dim() == 0 || angle.is_zero_angle() {
            return Ok(0);
        }
        if self.is_jump(angle)? {
            return Err(Error::JumpPoint(format!("Delta vanishes at {angle}")));
        }
        let v = self.mat.map(|x| x.to_bigint());
        match angle.rational_cos() {
            Some(c) => hermitian::signature_cos(&v, &Base::Rat(c)),
            None => match angle {
                ExactAngle::CosCbrt { m } => hermitian::signature_cos(&v, &cbrt_cos_base(*m)),
                ExactAngle::RationalTurn { r, p } => hermitian::signature_turn(&v, *r, *p),
                ExactAngle::CosRational { .. } => unreachable!(),
            },
        }
    }

    /// One-sided limits `(sigma(theta-), sigma(theta+))` at any angle in
    /// `(0, pi)` with rational cosine, jump or not.
    pub fn signature_limits(&self, cos: &BigRational) -> Result<(i64, i64)> {
        if cos.abs() >= BigRational::one() {
            return Err(Error::Precondition("one-sided limits need theta in (0, pi)".into()));
        }
        let jumps = self.jump_spectrum()?;
        let mut lo = -BigRational::one();
        let mut hi = BigRational::one();
        for (c, _) in &jumps {
            if c > cos && *c < hi {
                hi = c.clone();
            }
            if c < cos && *c > lo {
                lo = c.clone();
            }
        }
        let two = BigRational::from(BigInt::from(2));
        // Angles strictly inside the adjacent jump-free windows.
        let above_cos = (cos + &hi) / &two; // larger cosine = smaller theta
        let below_cos = (cos + &lo) / &two;
        let left = self.signature_at(&ExactAngle::cos_rational(&above_cos)?)?;
        let right = self.signature_at(&ExactAngle::cos_rational(&below_cos)?)?;
        Ok((left, right))
    }

    /// Jump locations of the signature function as `(cos theta, delta)`
    /// pairs sorted by increasing `theta` on `(0, pi)`.
    ///
    /// Errors `Unsupported` when a unit-circle root of `Delta` has an
    /// irrational cosine (not representable as an exact angle here).
    pub fn jump_spectrum(&self) -> Result<Vec<(BigRational, i64)>> {
        if self.dim() == 0 {
            return Ok(vec![]);
        }
        let delta = self.delta_dense();
        let mut cosines = BTreeSet::new();
        for (q, _mult) in poly::factor(&delta)? {
            if poly::deg(&q) == Some(0) || !poly::is_self_reciprocal(&q) {
                continue;
            }
            for z in symmetric_rational_roots_on_circle(&q)? {
                cosines.insert(z / BigRational::from(BigInt::from(2)));
            }
        }
        // Sort by increasing theta = decreasing cosine.
        let sorted: Vec<BigRational> = cosines.into_iter().rev().collect();
        let mut jumps = Vec::new();
        let mut prev_sig = 0i64; // sigma near theta = 0 vanishes
        let two = BigRational::from(BigInt::from(2));
        for (k, c) in sorted.iter().enumerate() {
            // Midpoint of (c, next smaller cosine) lies past the jump.
            let next = if k + 1 < sorted.len() { sorted[k + 1].clone() } else { -BigRational::one() };
            let mid = (c + &next) / &two;
            let sig = self.signature_at(&ExactAngle::cos_rational(&mid)?)?;
            if sig != prev_sig {
                jumps.push((c.clone(), sig - prev_sig));
            }
            prev_sig = sig;
        }
        // Cross-check the terminal value against sigma(pi).
        let at_pi = self.signature_at(&ExactAngle::turn(1, 2)?)?;
        if at_pi != prev_sig {
            return Err(Error::Internal(format!(
                "jump spectrum ends at {prev_sig} but sigma(pi) = {at_pi}"
            )));
        }
        Ok(jumps)
    }
}

/// `cos theta_m = 1 - 1/(2 cbrt m)` as an element of `Q(cbrt m)`:
/// `1 - g^2 / (2m)` since `1/g = g^2/m`.
fn cbrt_cos_base(m: u64) -> Base {
    let g = Base::cubic_generator(m);
    let inv_2m = BigRational::new(BigInt::one(), BigInt::from(2 * m));
    let corr = g.mul(&g).mul(&g.from_rat_like(inv_2m));
    g.from_rat_like(BigRational::one()).sub(&corr)
}

/// Synthetic evaluation of `Delta` at `omega = c + i s` via remainder
/// modulo `t^2 - 2c t + 1`: the value vanishes iff both remainder
/// coefficients do (`s != 0` since `|c| < 1`).
fn delta_vanishes_at_cos(delta: &Dense, c: &Base) -> bool {
    // Remainder of Delta mod (t^2 - 2c t + 1) over the base field.
    let two_c = c.add(c);
    let one = c.from_rat_like(BigRational::one());
    let mut hi = c.zero_like(); // coefficient of t^(k+1)
    let mut lo = c.zero_like(); // coefficient of t^k
    for coeff in delta.iter().rev() {
        // Multiply the running remainder by t and add the next coefficient:
        // (hi t + lo) * t = hi t^2 + lo t = hi (2c t - 1) + lo t.
        let new_hi = hi.mul(&two_c).add(&lo);
        let new_lo = hi.neg().add(&c.from_rat_like(BigRational::from(coeff.clone())));
        hi = new_hi;
        lo = new_lo;
    }
    hi.is_zero() && lo.is_zero()
}

/// Rational roots `z` of a self-reciprocal factor in the Chebyshev-like
/// variable `z = t + 1/t`, restricted to `(-2, 2)` (unit-circle pairs).
/// Errors `Unsupported` if irrational roots remain inside `(-2, 2)`.
fn symmetric_rational_roots_on_circle(q: &Dense) -> Result<Vec<BigRational>> {
    let d2 = poly::deg(q).unwrap();
    if d2 % 2 != 0 {
        // Odd self-reciprocal factors have t = -1 as a root; excluded by
        // Delta(-1) odd.
        return Err(Error::Internal("odd-degree self-reciprocal factor of Delta".into()));
    }
    let d = d2 / 2;
    // q / t^d = a_d + sum_{k>=1} a_{d+k} (t^k + t^-k) = qhat(z) with
    // t^k + t^-k = P_k(z): P_0 = 2, P_1 = z, P_k = z P_{k-1} - P_{k-2}.
    let rat = |b: &BigInt| BigRational::from(b.clone());
    let mut qhat = vec![BigRational::zero(); d + 1];
    qhat[0] = rat(&q[d]);
    let mut p_prev: Vec<BigRational> = vec![BigRational::from(BigInt::from(2))]; // P_0
    let mut p_cur: Vec<BigRational> = vec![BigRational::zero(), BigRational::one()]; // P_1
    for k in 1..=d {
        let pk = if k == 1 { p_cur.clone() } else { p_cur.clone() };
        for (i, coeff) in pk.iter().enumerate() {
            qhat[i] += coeff * rat(&q[d + k]);
        }
        if k < d {
            // P_{k+1} = z P_k - P_{k-1}
            let mut next = vec![BigRational::zero(); p_cur.len() + 1];
            for (i, coeff) in p_cur.iter().enumerate() {
                next[i + 1] += coeff;
            }
            for (i, coeff) in p_prev.iter().enumerate() {
                next[i] -= coeff;
            }
            p_prev = p_cur;
            p_cur = next;
        }
    }
    // Clear denominators to an integer polynomial.
    let mut den = BigInt::one();
    for c in &qhat {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let qhat_int: Dense =
        poly::trim(qhat.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect());
    let two = BigRational::from(BigInt::from(2));
    let mut rational_roots = Vec::new();
    let mut rest = qhat_int.clone();
    loop {
        match rational_root_of(&rest) {
            Some(z0) => {
                if z0.abs() < two {
                    rational_roots.push(z0.clone());
                }
                rest = deflate(&rest, &z0);
            }
            None => break,
        }
    }
    // Any irrational real root of `rest` inside (-2, 2) is unsupported.
    if sturm_roots_in_open_interval(&rest, &-two.clone(), &two) > 0 {
        return Err(Error::Unsupported(
            "signature jump at an angle with irrational cosine".into(),
        ));
    }
    Ok(rational_roots)
}

fn rational_root_of(p: &Dense) -> Option<BigRational> {
    use num_integer::Integer as _;
    let d = poly::deg(p)?;
    if d == 0 {
        return None;
    }
    if p[0].is_zero() {
        return Some(BigRational::zero());
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut k = BigInt::one();
        while &k * &k <= n {
            if (&n % &k).is_zero() {
                out.push(k.clone());
                let other = &n / &k;
                if other != k {
                    out.push(other);
                }
            }
            k += 1;
        }
        out
    };
    for q in divisors(p.last().unwrap()) {
        for pn in divisors(&p[0]) {
            for s in [1i64, -1] {
                let num = &pn * BigInt::from(s);
                if num.gcd(&q) != BigInt::one() {
                    continue;
                }
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
                    return Some(BigRational::new(num, q));
                }
            }
        }
    }
    None
}

fn deflate(p: &Dense, root: &BigRational) -> Dense {
    // Divide by (den*t - num) over Q and return the primitive integer part.
    let den = root.denom().clone();
    let num = root.numer().clone();
    let divisor = poly::trim(vec![-num, den]);
    let pr: Vec<BigRational> = p.iter().map(|c| BigRational::from(c.clone())).collect();
    let dr: Vec<BigRational> = divisor.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut rem = pr;
    let mut quo = vec![BigRational::zero(); p.len()];
    let lead = dr.last().unwrap().clone();
    while rem.len() >= dr.len() {
        let q = rem.last().unwrap() / &lead;
        let shift = rem.len() - dr.len();
        quo[shift] = q.clone();
        for (i, c) in dr.iter().enumerate() {
            let t = c * &q;
            rem[shift + i] -= t;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    assert!(rem.is_empty(), "deflation by a non-root");
    let mut den_all = BigInt::one();
    for c in &quo {
        den_all = num_integer::lcm(den_all, c.denom().clone());
    }
    poly::primitive_part(&poly::trim(
        quo.iter().map(|c| (c * BigRational::from(den_all.clone())).to_integer()).collect(),
    ))
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`
/// (endpoints must not be roots), by Sturm's theorem over Q.
fn sturm_roots_in_open_interval(p: &Dense, a: &BigRational, b: &BigRational) -> usize {
    if poly::deg(p).is_none_or(|d| d == 0) {
        return 0;
    }
    let to_q = |p: &Dense| -> Vec<BigRational> {
        p.iter().map(|c| BigRational::from(c.clone())).collect()
    };
    let eval = |p: &[BigRational], x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let mut seq: Vec<Vec<BigRational>> = vec![to_q(p), to_q(&poly::derivative(p))];
    loop {
        let last = seq.last().unwrap();
        if last.iter().all(Zero::is_zero) || last.len() <= 1 {
            break;
        }
        let prev = &seq[seq.len() - 2];
        // negative remainder of prev by last
        let mut rem = prev.clone();
        let lead = last.last().unwrap().clone();
        while rem.len() >= last.len() {
            let q = rem.last().unwrap() / &lead;
            let shift = rem.len() - last.len();
            for (i, c) in last.iter().enumerate() {
                let t = c * &q;
                rem[shift + i] -= t;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        let neg_rem: Vec<BigRational> = rem.iter().map(|c| -c).collect();
        if neg_rem.is_empty() {
            break;
        }
        seq.push(neg_rem);
    }
    let variations = |x: &BigRational| -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for poly_q in &seq {
            let v = eval(poly_q, x);
            let s = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    };
    variations(a).saturating_sub(variations(b))
}

fn det_laurent<I: IntScalar>(m: &[Vec<Laurent<I>>]) -> Laurent<I> {
    let n = m.len();
    match n {
        0 => Laurent::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Laurent::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Laurent<I>>> = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                    .collect();
                let term = m[0][j].mul(&det_laurent(&sub));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

impl<I: IntScalar> fmt::Debug for Seifert<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seifert{:?}", self.mat)
    }
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComposeKind {
    ConnectedSum,
    Mirror,
    ReverseOrientation,
}

/// Compose Seifert matrices. `ConnectedSum` accepts any number of
/// operands (none gives the unknot); the unary kinds require exactly one.
pub fn compose<I: IntScalar>(kind: ComposeKind, operands: &[Seifert<I>]) -> Result<Seifert<I>> {
    match kind {
        ComposeKind::ConnectedSum => {
            Ok(operands.iter().fold(Seifert::unknot(), |acc, s| acc.connected_sum(s)))
        }
        ComposeKind::Mirror => match operands {
            [one] => Ok(one.mirror()),
            _ => Err(Error::Precondition("mirror takes exactly one operand".into())),
        },
        ComposeKind::ReverseOrientation => match operands {
            [one] => Ok(one.reverse_orientation()),
            _ => Err(Error::Precondition("reverse takes exactly one operand".into())),
        },
    }
}

// ---------------------------------------------------------------------------
// Hyperbolicity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hyperbolicity<I: IntScalar> {
    /// Congruent to a block off-diagonal form; the witness `P` satisfies
    /// `P^T V P` block off-diagonal (identity for the shape test).
    Hyperbolic { witness: Mat<I> },
    /// A necessary condition fails; the knot is not algebraically
    /// doubly slice.
    FailsNecessary { reason: String },
    Unknown,
}

#[derive(Clone, Copy, Debug)]
pub enum HyperbolicityMode {
    /// Exact block shape test on the matrix as given.
    Shape,
    /// Necessary condition: `Delta = unit * f(t) * t^deg f * f(1/t)`.
    Factorization,
    /// Breadth-first search over unimodular congruences generated by
    /// elementary matrices, up to the given word length.
    Search { word_bound: u32, node_cap: u64 },
}

fn is_block_offdiag<I: IntScalar>(v: &Mat<I>) -> bool {
    let n = v.nrows();
    if n % 2 != 0 {
        return false;
    }
    let g = n / 2;
    for i in 0..g {
        for j in 0..g {
            if !v[(i, j)].is_zero() || !v[(g + i, g + j)].is_zero() {
                return false;
            }
        }
    }
    true
}

/// Necessary condition via factorization: every self-reciprocal
/// irreducible factor of `Delta` must have even multiplicity.
fn factorization_obstruction<I: IntScalar>(s: &Seifert<I>) -> Result<Option<String>> {
    let delta = s.alexander_polynomial().dense_normalized();
    if poly::deg(&delta).is_none_or(|d| d == 0) {
        return Ok(None);
    }
    for (q, mult) in poly::factor(&delta)? {
        if poly::deg(&q) == Some(0) {
            continue;
        }
        if poly::is_self_reciprocal(&q) && mult % 2 == 1 {
            let ql: Laurent<BigInt> =
                Laurent::from_coeffs(q.iter().cloned().enumerate().map(|(e, c)| (e as i64, c)));
            return Ok(Some(format!(
                "self-reciprocal factor {ql} appears with odd multiplicity {mult}; \
                 Delta admits no f(t) * t^deg f * f(1/t) factorization"
            )));
        }
    }
    Ok(None)
}

pub fn hyperbolicity_check<I: IntScalar>(
    s: &Seifert<I>,
    mode: HyperbolicityMode,
) -> Result<Hyperbolicity<I>> {
    match mode {
        HyperbolicityMode::Shape => {
            if is_block_offdiag(s.matrix()) {
                Ok(Hyperbolicity::Hyperbolic { witness: Mat::identity(s.dim()) })
            } else {
                Ok(Hyperbolicity::Unknown)
            }
        }
        HyperbolicityMode::Factorization => match factorization_obstruction(s)? {
            Some(reason) => Ok(Hyperbolicity::FailsNecessary { reason }),
            None => Ok(Hyperbolicity::Unknown),
        },
        HyperbolicityMode::Search { word_bound, node_cap } => {
            let n = s.dim();
            if is_block_offdiag(s.matrix()) {
                return Ok(Hyperbolicity::Hyperbolic { witness: Mat::identity(n) });
            }
            if n == 0 {
                return Ok(Hyperbolicity::Hyperbolic { witness: Mat::identity(0) });
            }
            // Generators E_ij(+-1); search-space estimate before starting.
            let gens = generators::<I>(n);
            let mut size: u128 = 1;
            let mut level: u128 = 1;
            for _ in 0..word_bound {
                level = level.saturating_mul(gens.len() as u128);
                size = size.saturating_add(level);
            }
            if size > node_cap as u128 {
                return Err(Error::CapExceeded { needed: size, cap: node_cap as u128 });
            }
            let mut seen: HashMap<Vec<I>, ()> = HashMap::new();
            let mut queue: VecDeque<(Mat<I>, Mat<I>, u32)> = VecDeque::new();
            queue.push_back((s.matrix().clone(), Mat::identity(n), 0));
            while let Some((v, p, depth)) = queue.pop_front() {
                if depth >= word_bound {
                    continue;
                }
                for e in &gens {
                    let p2 = p.mul(e);
                    let v2 = e.transpose().mul(&v).mul(e);
                    let key: Vec<I> = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| v2[(i, j)].clone())
                        .collect();
                    if seen.contains_key(&key) {
                        continue;
                    }
                    seen.insert(key, ());
                    if is_block_offdiag(&v2) {
                        return Ok(Hyperbolicity::Hyperbolic { witness: p2 });
                    }
                    queue.push_back((v2, p2, depth + 1));
                }
            }
            match factorization_obstruction(s)? {
                Some(reason) => Ok(Hyperbolicity::FailsNecessary { reason }),
                None => Ok(Hyperbolicity::Unknown),
            }
        }
    }
}

fn generators<I: IntScalar>(n: usize) -> Vec<Mat<I>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for s in [1, -1] {
                let mut e = Mat::identity(n);
                e[(i, j)] = I::from(s);
                out.push(e);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Catalog entries
// ---------------------------------------------------------------------------

/// A named knot with its Seifert data.
#[derive(Clone, Debug)]
pub struct CatalogKnot {
    pub name: String,
    pub seifert: Seifert<crate::Int>,
    pub crossing_number: u32,
    /// For signature-model knots without matrices the Arf bit is supplied
    /// as a hypothesis; with a matrix present it must match `Delta(-1)`.
    pub arf_flag: Option<u8>,
}

impl CatalogKnot {
    pub fn new(
        name: &str,
        seifert: Seifert<crate::Int>,
        crossing_number: u32,
        arf_flag: Option<u8>,
    ) -> Result<Self> {
        if crossing_number != 0 && crossing_number < 3 {
            return Err(Error::Precondition(format!(
                "crossing number {crossing_number} < 3 for a nontrivial knot"
            )));
        }
        if let Some(bit) = arf_flag {
            if bit != seifert.arf() {
                return Err(Error::Precondition(format!(
                    "declared Arf bit {bit} contradicts Delta(-1) for {name}"
                )));
            }
        }
        Ok(CatalogKnot { name: name.into(), seifert, crossing_number, arf_flag })
    }

    pub fn arf(&self) -> u8 {
        self.seifert.arf()
    }
}

/// The knots shipped with the tool.
pub fn builtin_catalog() -> Vec<CatalogKnot> {
    let k = |name: &str, rows: Vec<Vec<i64>>, crossings: u32| -> CatalogKnot {
        let mat = Mat::from_rows(rows).unwrap().map(|x| crate::Int::from(*x));
        CatalogKnot::new(name, Seifert::new(mat).unwrap(), crossings, None).unwrap()
    };
    vec![
        k("unknot", vec![], 0),
        k("trefoil", vec![vec![-1, 1], vec![0, -1]], 3),
        k("figure-8", vec![vec![1, 1], vec![0, -1]], 4),
        k("6_1", vec![vec![1, 1], vec![0, -2]], 6),
        k("9_46", vec![vec![0, 2], vec![1, 0]], 9),
    ]
}

pub fn catalog_lookup<'a>(catalog: &'a [CatalogKnot], name: &str) -> Result<&'a CatalogKnot> {
    catalog.iter().find(|k| k.name == name).ok_or_else(|| Error::UnknownKnot(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn knot(name: &str) -> CatalogKnot {
        let cat = builtin_catalog();
        catalog_lookup(&cat, name).unwrap().clone()
    }

    fn lp(pairs: &[(i64, i64)]) -> Laurent<Int> {
        Laurent::from_coeffs(pairs.iter().map(|&(e, c)| (e, Int::from(c))))
    }

    #[test]
    fn alexander_catalog_values() {
        assert_eq!(knot("unknot").seifert.alexander_polynomial(), lp(&[(0, 1)]));
        assert_eq!(knot("trefoil").seifert.alexander_polynomial(), lp(&[(0, 1), (1, -1), (2, 1)]));
        assert_eq!(knot("6_1").seifert.alexander_polynomial(), lp(&[(0, 2), (1, -5), (2, 2)]));
        assert_eq!(knot("9_46").seifert.alexander_polynomial(), lp(&[(0, 2), (1, -5), (2, 2)]));
        // 9_46 factors as (2t-1)(t-2).
        let f = lp(&[(0, -1), (1, 2)]).mul(&lp(&[(0, -2), (1, 1)]));
        assert!(knot("9_46").seifert.alexander_polynomial().eq_up_to_units(&f));
        assert_eq!(knot("figure-8").seifert.alexander_polynomial(), lp(&[(0, 1), (1, -3), (2, 1)]));
    }

    #[test]
    fn alexander_at_one_is_unit() {
        for k in builtin_catalog() {
            let v = k.seifert.alexander_polynomial().eval_int(&Int::from(1)).unwrap();
            assert!(v.abs().is_one(), "{}: Delta(1) = {v}", k.name);
        }
    }

    #[test]
    fn arf_values() {
        assert_eq!(knot("unknot").arf(), 0);
        assert_eq!(knot("trefoil").arf(), 1); // Delta(-1) = 3
        assert_eq!(knot("figure-8").arf(), 1); // Delta(-1) = 5
        assert_eq!(knot("6_1").arf(), 0); // Delta(-1) = 9
        assert_eq!(knot("9_46").arf(), 0);
    }

    #[test]
    fn signature_examples() {
        let trefoil = knot("trefoil").seifert;
        assert_eq!(trefoil.signature_at(&ExactAngle::turn(1, 2).unwrap()).unwrap(), -2);
        let nine46 = knot("9_46").seifert;
        assert_eq!(nine46.signature_at(&ExactAngle::turn(1, 4).unwrap()).unwrap(), 0);
        let unknot = knot("unknot").seifert;
        assert_eq!(unknot.signature_at(&ExactAngle::turn(3, 7).unwrap()).unwrap(), 0);
    }

    #[test]
    fn jump_point_detected() {
        // Trefoil jumps at the primitive 6th roots of unity.
        let trefoil = knot("trefoil").seifert;
        assert!(trefoil.is_jump(&ExactAngle::turn(1, 6).unwrap()).unwrap());
        let err = trefoil.signature_at(&ExactAngle::turn(1, 6).unwrap());
        assert!(matches!(err, Err(Error::JumpPoint(_))));
        assert!(!trefoil.is_jump(&ExactAngle::turn(1, 5).unwrap()).unwrap());
        // Also via the cosine form: cos(pi/3) = 1/2.
        let half = ExactAngle::CosRational { num: 1, den: 2 };
        assert!(trefoil.is_jump(&half).unwrap());
    }

    #[test]
    fn signature_limits_at_jump() {
        let trefoil = knot("trefoil").seifert;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(trefoil.signature_limits(&half).unwrap(), (0, -2));
    }

    #[test]
    fn jump_spectrum_catalog() {
        let trefoil = knot("trefoil").seifert;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(trefoil.jump_spectrum().unwrap(), vec![(half, -2)]);
        for name in ["unknot", "figure-8", "6_1", "9_46"] {
            assert!(knot(name).seifert.jump_spectrum().unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn compose_laws() {
        let trefoil = knot("trefoil").seifert;
        let unknot = knot("unknot").seifert;
        // Connected sum with the unknot leaves the matrix unchanged.
        let s = compose(ComposeKind::ConnectedSum, &[unknot, trefoil.clone()]).unwrap();
        assert_eq!(s, trefoil);
        // Mirror negates the signature.
        let m = compose(ComposeKind::Mirror, &[trefoil.clone()]).unwrap();
        assert_eq!(m.signature_at(&ExactAngle::turn(1, 2).unwrap()).unwrap(), 2);
        // Granny vs square: sum of trefoil and its mirror has sigma = 0.
        let sq = trefoil.connected_sum(&trefoil.mirror());
        for (r, p) in [(1, 2), (1, 5), (2, 5), (3, 7)] {
            assert_eq!(sq.signature_at(&ExactAngle::turn(r, p).unwrap()).unwrap(), 0);
        }
        // Alexander multiplies under connected sum.
        let d = sq.alexander_polynomial();
        let t = trefoil.alexander_polynomial();
        assert!(d.eq_up_to_units(&t.mul(&t.reciprocal())));
    }

    #[test]
    fn hyperbolicity_shape_and_factorization() {
        let nine46 = knot("9_46").seifert;
        match hyperbolicity_check(&nine46, HyperbolicityMode::Shape).unwrap() {
            Hyperbolicity::Hyperbolic { witness } => assert_eq!(witness, Mat::identity(2)),
            other => panic!("expected hyperbolic, got {other:?}"),
        }
        let trefoil = knot("trefoil").seifert;
        assert!(matches!(
            hyperbolicity_check(&trefoil, HyperbolicityMode::Factorization).unwrap(),
            Hyperbolicity::FailsNecessary { .. }
        ));
        let unknot = knot("unknot").seifert;
        assert!(matches!(
            hyperbolicity_check(&unknot, HyperbolicityMode::Shape).unwrap(),
            Hyperbolicity::Hyperbolic { .. }
        ));
        // 6_1: shape fails but the factorization condition passes.
        let six1 = knot("6_1").seifert;
        assert!(matches!(
            hyperbolicity_check(&six1, HyperbolicityMode::Shape).unwrap(),
            Hyperbolicity::Unknown
        ));
        assert!(matches!(
            hyperbolicity_check(&six1, HyperbolicityMode::Factorization).unwrap(),
            Hyperbolicity::Unknown
        ));
    }

    #[test]
    fn hyperbolicity_search_finds_scrambled_form() {
        // Congruence-scramble the 9_46 matrix and search back.
        let nine46 = knot("9_46").seifert;
        let mut p0: Mat<Int> = Mat::identity(2);
        p0[(0, 1)] = Int::from(1);
        let v = p0.transpose().mul(nine46.matrix()).mul(&p0);
        let scrambled = Seifert::new(v).unwrap();
        assert!(matches!(
            hyperbolicity_check(&scrambled, HyperbolicityMode::Shape).unwrap(),
            Hyperbolicity::Unknown
        ));
        match hyperbolicity_check(
            &scrambled,
            HyperbolicityMode::Search { word_bound: 2, node_cap: 100_000 },
        )
        .unwrap()
        {
            Hyperbolicity::Hyperbolic { witness } => {
                let w = witness.transpose().mul(scrambled.matrix()).mul(&witness);
                assert!(is_block_offdiag(&w));
            }
            other => panic!("expected witness, got {other:?}"),
        }
        // Cap guard trips on absurd bounds.
        assert!(matches!(
            hyperbolicity_check(
                &scrambled,
                HyperbolicityMode::Search { word_bound: 30, node_cap: 1000 }
            ),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        let bad = Mat::from_rows(vec![vec![1i64, 0], vec![0, 1]]).unwrap();
        assert!(matches!(Seifert::new(bad), Err(Error::InvalidMatrix(_))));
        let odd = Mat::from_rows(vec![vec![1i64]]).unwrap();
        assert!(matches!(Seifert::new(odd), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn catalog_validates() {
        assert_eq!(builtin_catalog().len(), 5);
    }
}
