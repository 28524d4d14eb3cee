use num_traits::{One, Zero};
use std::ops::{Add, Mul};

/// Table `T[n][k]` of partial ordinary Bell polynomials for `0 <= k, n <= n_max`:
/// the coefficient of `x^n` in `(sum_{i>=1} c_i x^i)^k`, with `coeffs[i-1] = c_i`.
///
/// Powers are built by repeated truncated polynomial multiplication; missing
/// coefficients count as zero.
pub fn bell_partial_ordinary_table<T>(n_max: usize, coeffs: &[T]) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    let mut base = vec![T::zero(); n_max + 1];
    for (i, c) in coeffs.iter().enumerate().take(n_max) {
        base[i + 1] = c.clone();
    }
    let mut table = vec![vec![T::zero(); n_max + 1]; n_max + 1];
    let mut power = vec![T::zero(); n_max + 1];
    power[0] = T::one();
    for k in 0..=n_max {
        for (n, row) in table.iter_mut().enumerate() {
            row[k] = power[n].clone();
        }
        let next: Vec<T> = (0..=n_max)
            .map(|n| {
                (1..=n)
                    .filter(|&i| !base[i].is_zero() && !power[n - i].is_zero())
                    .fold(T::zero(), |acc, i| acc + power[n - i].clone() * &base[i])
            })
            .collect();
        power = next;
    }
    table
}

/// Single partial ordinary Bell polynomial `B^_{n,k}(c_1, c_2, ...)`.
pub fn bell_partial_ordinary<T>(n: usize, k: usize, coeffs: &[T]) -> T
where
    T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    if k > n {
        return T::zero();
    }
    bell_partial_ordinary_table(n, coeffs)[n][k].clone()
}
