use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::binomial;

/// Exact rational number (denominator positive, lowest terms).
pub type RationalCoefficient = BigRational;

const TABLE_SIZE: usize = 64;

fn table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_numbers(TABLE_SIZE))
}

/// `B_0 .. B_{n-1}` from `sum_{j=0}^{k} C(k+1, j) B_j = 0` (so `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            b.push(BigRational::from_integer(BigInt::from(1)));
            continue;
        }
        if k > 1 && k % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let kk = k as u32;
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += BigRational::from_integer(binomial(kk + 1, j as u32)) * bj;
            }
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(kk + 1)));
    }
    b
}

/// Exact Bernoulli number `B_k`.
pub fn bernoulli_number(k: usize) -> RationalCoefficient {
    match table().get(k) {
        Some(b) => b.clone(),
        None => bernoulli_numbers(k + 1).pop().expect("non-empty"),
    }
}

pub fn bernoulli_number_f64(k: usize) -> f64 {
    bernoulli_number(k).to_f64().unwrap_or(f64::NAN)
}

/// Coefficients of `B_n(c) = sum_k C(n, k) B_k c^{n-k}`, indexed by the power of `c`.
pub fn bernoulli_poly_coefficients(n: usize) -> Vec<RationalCoefficient> {
    let nn = n as u32;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for k in 0..=n {
        coeffs[n - k] = BigRational::from_integer(binomial(nn, k as u32)) * bernoulli_number(k);
    }
    coeffs
}

/// Bernoulli polynomial `B_n(c)`, rational coefficients rounded once.
pub fn bernoulli_poly(n: usize, c: f64) -> f64 {
    bernoulli_poly_coefficients(n)
        .iter()
        .rev()
        .fold(0.0, |acc, a| acc * c + a.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn standard_values() {
        assert_eq!(bernoulli_number(0), q(1, 1));
        assert_eq!(bernoulli_number(1), q(-1, 2));
        assert_eq!(bernoulli_number(2), q(1, 6));
        assert_eq!(bernoulli_number(3), q(0, 1));
        assert_eq!(bernoulli_number(4), q(-1, 30));
        assert_eq!(bernoulli_number(12), q(-691, 2730));
        assert_eq!(bernoulli_number(22), q(854_513, 138));
        for k in (3..60).step_by(2) {
            assert!(bernoulli_number(k).is_zero());
        }
    }

    #[test]
    fn beyond_table() {
        let b = bernoulli_number(70);
        let expect = bernoulli_numbers(71).pop().unwrap();
        assert_eq!(b, expect);
        // sign of B_{2k} is (-1)^{k+1}
        assert!(b > BigRational::zero());
    }

    #[test]
    fn recurrence_identity_is_exact() {
        let b = bernoulli_numbers(40);
        for n in 1..39u32 {
            let s: BigRational = (0..=n)
                .map(|k| BigRational::from_integer(binomial(n + 1, k)) * &b[k as usize])
                .sum();
            assert!(s.is_zero(), "n={n}");
        }
    }

    #[test]
    fn polynomials() {
        for &c in &[0.0, 0.3, 1.7] {
            assert!((bernoulli_poly(2, c) - (c * c - c + 1.0 / 6.0)).abs() < 1e-15);
        }
        assert!((bernoulli_poly(1, 1.0) - 0.5).abs() < 1e-16);
        for n in 0..20 {
            assert_eq!(bernoulli_poly(n, 0.0), bernoulli_number_f64(n));
        }
        // B_n(1 - c) = (-1)^n B_n(c)
        for n in 0..12 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            let a = bernoulli_poly(n, 0.2);
            let b = s * bernoulli_poly(n, 0.8);
            assert!((a - b).abs() < 1e-13 * (1.0 + a.abs()));
        }
    }
}
