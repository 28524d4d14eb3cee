//! Special-function kernel: Chebyshev polynomials of the second kind, exact
//! Bernoulli/Stirling tables, partial ordinary Bell polynomials, polygamma
//! and named constants.

mod bell;
mod bernoulli;
mod chebyshev;
mod constants;
mod polygamma;
mod stirling;

pub use bell::{bell_partial_ordinary, bell_partial_ordinary_table};
pub use bernoulli::{
    bernoulli_number, bernoulli_number_f64, bernoulli_numbers, bernoulli_poly,
    bernoulli_poly_coefficients, RationalCoefficient,
};
pub use chebyshev::{
    chebyshev_u, chebyshev_u_from_mu, chebyshev_u_recurrence, inverse_chebyshev_u,
    inverse_chebyshev_u_weighted,
};
pub use constants::{constants, Constants, EULER_GAMMA, LN_GLAISHER_A, ZETA3};
pub use polygamma::{digamma, polygamma};
pub use stirling::stirling2;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!` as a float (exact up to 22!).
pub fn factorial_f64(n: u32) -> f64 {
    factorial(n).to_f64().unwrap_or(f64::INFINITY)
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520u64));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(factorial_f64(20), 2_432_902_008_176_640_000.0);
    }
}
