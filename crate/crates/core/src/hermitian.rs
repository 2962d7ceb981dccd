//! Certified signatures of Hermitian matrices over exact scalar rings.
//!
//! The signature of `H(omega) = (1-omega)V + (1-conj omega)V^T` is read
//! off the characteristic polynomial: for a Hermitian matrix the
//! eigenvalues are real, so Descartes' rule of signs is exact — the
//! number of positive (negative) eigenvalues equals the number of sign
//! variations in the coefficients of `chi(x)` (`chi(-x)`), once zero
//! roots are stripped. Coefficients are computed division-free as sums
//! of principal minors, with exact zero detection; only strictly nonzero
//! coefficient signs ever reach interval refinement.

use crate::fields::{certified_sign, Base, Cyc, CycCtx, QuadC, RingScalar};
use crate::matrix::Mat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Division-free determinant by cofactor expansion (first row).
fn det_ring<S: RingScalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    match n {
        0 => unreachable!("empty minor"),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = m[0][0].zero_like();
            for j in 0..n {
                if m[0][j].is_formally_zero() {
                    continue;
                }
                let sub: Vec<Vec<S>> = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                    .collect();
                let term = m[0][j].mul(&det_ring(&sub));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Characteristic polynomial coefficients `c_0..c_n` of `det(xI - H)`
/// (monic), via sums of principal minors: `c_{n-k} = (-1)^k e_k`.
pub fn char_poly<S: RingScalar>(h: &[Vec<S>]) -> Vec<S> {
    let n = h.len();
    assert!(n > 0);
    let one = h[0][0].one_like();
    let zero = h[0][0].zero_like();
    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = one;
    // Enumerate index subsets by size.
    for k in 1..=n {
        let mut ek = zero.clone();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let sub: Vec<Vec<S>> =
                idx.iter().map(|&i| idx.iter().map(|&j| h[i][j].clone()).collect()).collect();
            ek = ek.add(&det_ring(&sub));
            // next combination
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if idx[pos] < n - (k - pos) {
                    idx[pos] += 1;
                    for q in pos + 1..k {
                        idx[q] = idx[q - 1] + 1;
                    }
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
        if k % 2 == 1 {
            ek = ek.neg();
        }
        coeffs[n - k] = ek;
    }
    coeffs
}

/// Eigenvalue sign counts `(pos, neg, zero)` of a Hermitian matrix given
/// its characteristic polynomial coefficients.
pub fn descartes_counts<S: RingScalar>(coeffs: &[S]) -> Result<(usize, usize, usize)> {
    let n = coeffs.len() - 1;
    for c in coeffs {
        if !c.sub(&c.conj()).is_formally_zero() {
            return Err(Error::Internal("characteristic coefficient not real".into()));
        }
    }
    let z = coeffs
        .iter()
        .position(|c| !c.is_formally_zero())
        .ok_or_else(|| Error::Internal("zero characteristic polynomial".into()))?;
    let signs: Vec<i8> =
        coeffs[z..].iter().map(certified_sign).collect::<Result<_>>()?;
    let variations = |flip_odd: bool| -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for (k, &s) in signs.iter().enumerate() {
            let s = if flip_odd && k % 2 == 1 { -s } else { s };
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
    let pos = variations(false);
    let neg = variations(true);
    if pos + neg + z != n {
        return Err(Error::Internal(format!(
            "Descartes counts {pos}+{neg}+{z} do not exhaust dimension {n}"
        )));
    }
    Ok((pos, neg, z))
}

fn signature_from_counts(counts: (usize, usize, usize)) -> Result<i64> {
    let (pos, neg, zero) = counts;
    if zero != 0 {
        return Err(Error::Internal(
            "singular Hermitian form at a non-jump angle".into(),
        ));
    }
    Ok(pos as i64 - neg as i64)
}

/// Signature of `(1-omega)V + (1-conj omega)V^T` at `omega = zeta_p^r`.
///
/// Caller must have verified `Delta(omega) != 0`.
pub fn signature_turn(v: &Mat<BigInt>, r: u64, p: u64) -> Result<i64> {
    let n = v.nrows();
    if n == 0 || r == 0 {
        return Ok(0);
    }
    let ctx = CycCtx::new(p);
    let one = Cyc::from_int(BigInt::one(), ctx.clone());
    let w = one.sub(&Cyc::zeta_pow(r, ctx.clone())); // 1 - omega
    let wbar = one.sub(&Cyc::zeta_pow(p - r, ctx.clone())); // 1 - conj omega
    let h: Vec<Vec<Cyc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = Cyc::from_int(v[(i, j)].clone(), ctx.clone()).mul(&w);
                    let b = Cyc::from_int(v[(j, i)].clone(), ctx.clone()).mul(&wbar);
                    a.add(&b)
                })
                .collect()
        })
        .collect();
    signature_from_counts(descartes_counts(&char_poly(&h))?)
}

/// Signature at `omega = c + i sqrt(1-c^2)` for an exact cosine `c` given
/// as a base-field element (rational, or in `Q(cbrt m)`).
///
/// Caller must have verified `Delta(omega) != 0`.
pub fn signature_cos(v: &Mat<BigInt>, c: &Base) -> Result<i64> {
    let n = v.nrows();
    let one = c.from_rat_like(BigRational::one());
    if n == 0 || c == &one {
        return Ok(0);
    }
    // dsq = 1 - c^2; entries (1-c)(v_ij + v_ji) + i S (v_ji - v_ij).
    let dsq = one.sub(&c.mul(c));
    let zero = c.zero_like();
    let one_minus_c = one.sub(c);
    let h: Vec<Vec<QuadC>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sym = v[(i, j)].clone() + v[(j, i)].clone();
                    let asym = v[(j, i)].clone() - v[(i, j)].clone();
                    QuadC::new(
                        one_minus_c.mul(&c.from_rat_like(BigRational::from(sym))),
                        zero.clone(),
                        zero.clone(),
                        c.from_rat_like(BigRational::from(asym)),
                        dsq.clone(),
                    )
                })
                .collect()
        })
        .collect();
    signature_from_counts(descartes_counts(&char_poly(&h))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;

    fn mat(rows: Vec<Vec<i64>>) -> Mat<BigInt> {
        Mat::from_rows(rows).unwrap().map(|x| BigInt::from(*x))
    }

    #[test]
    fn trefoil_at_minus_one() {
        // V + V^T = [[-2,1],[1,-2]]: eigenvalues -1, -3 -> signature -2.
        let v = mat(vec![vec![-1, 1], vec![0, -1]]);
        assert_eq!(signature_turn(&v, 1, 2).unwrap(), -2);
        let c = Base::Rat(BigRational::from(BigInt::from(-1)));
        assert_eq!(signature_cos(&v, &c).unwrap(), -2);
    }

    #[test]
    fn hyperbolic_at_i() {
        // 9_46 matrix: signature vanishes at omega = i despite the zero
        // leading principal minor.
        let v = mat(vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(signature_turn(&v, 1, 4).unwrap(), 0);
        let c = Base::Rat(BigRational::zero());
        assert_eq!(signature_cos(&v, &c).unwrap(), 0);
    }

    #[test]
    fn trefoil_across_jump() {
        // Jump at theta = pi/3 (cos 1/2): below it 0, above it -2.
        let v = mat(vec![vec![-1, 1], vec![0, -1]]);
        let below = Base::Rat(BigRational::new(BigInt::from(3), BigInt::from(4)));
        let above = Base::Rat(BigRational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(signature_cos(&v, &below).unwrap(), 0);
        assert_eq!(signature_cos(&v, &above).unwrap(), -2);
        assert_eq!(signature_turn(&v, 1, 5).unwrap(), -2); // 72 deg > 60 deg
        assert_eq!(signature_turn(&v, 1, 7).unwrap(), 0); // ~51 deg < 60 deg
    }

    #[test]
    fn cbrt_angle_signature() {
        // cos theta_2 = 1 - 1/(2 cbrt 2) ~ 0.603: below the trefoil jump
        // cos 1/2 means theta_2 > pi/3... cos 0.603 > 0.5 so theta_2 < pi/3:
        // signature 0.
        let v = mat(vec![vec![-1, 1], vec![0, -1]]);
        let g = Base::cubic_generator(2);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        // c = 1 - 1/(2 g) = 1 - g^2/(2m) since 1/g = g^2/m.
        let m = BigRational::from(BigInt::from(2));
        let inv_2g = g.mul(&g).mul(&g.from_rat_like(half / m));
        let c = g.from_rat_like(BigRational::one()).sub(&inv_2g);
        assert_eq!(signature_cos(&v, &c).unwrap(), 0);
    }

    #[test]
    fn zero_matrix_and_omega_one() {
        let v = mat(vec![]);
        assert_eq!(signature_turn(&v, 0, 1).unwrap(), 0);
        let v = mat(vec![vec![-1, 1], vec![0, -1]]);
        assert_eq!(signature_turn(&v, 0, 1).unwrap(), 0);
    }

    #[test]
    fn char_poly_integer_matrix() {
        // char(x) of [[2,1],[1,2]] = x^2 - 4x + 3.
        let ctx = CycCtx::new(4);
        let e = |n: i64| Cyc::from_int(BigInt::from(n), ctx.clone());
        let h = vec![vec![e(2), e(1)], vec![e(1), e(2)]];
        let cp = char_poly(&h);
        assert!(cp[0].sub(&e(3)).is_formally_zero());
        assert!(cp[1].sub(&e(-4)).is_formally_zero());
        assert!(cp[2].sub(&e(1)).is_formally_zero());
        assert_eq!(descartes_counts(&cp).unwrap(), (2, 0, 0));
    }
}
