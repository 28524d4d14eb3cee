use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bernoulli::RationalCoefficient;

/// Stirling number of the second kind `S(n, k)`; zero for `k > n`.
pub fn stirling2(n: usize, k: usize) -> RationalCoefficient {
    if k > n {
        return BigRational::zero();
    }
    // row-by-row S(m, j) = j S(m-1, j) + S(m-1, j-1)
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    BigRational::from_integer(row[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn boundary_rows() {
        for n in 1..15 {
            assert_eq!(stirling2(n, 1), int(1));
            assert_eq!(stirling2(n, n), int(1));
        }
        assert_eq!(stirling2(0, 0), int(1));
        assert_eq!(stirling2(4, 0), int(0));
        assert_eq!(stirling2(3, 5), int(0));
    }

    #[test]
    fn known_values() {
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2(5, 3), int(25));
        assert_eq!(stirling2(10, 5), int(42_525));
    }

    #[test]
    fn row_sums_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in bell.iter().enumerate() {
            let s: BigRational = (0..=n).map(|k| stirling2(n, k)).sum();
            assert_eq!(s, int(b));
        }
    }
}
