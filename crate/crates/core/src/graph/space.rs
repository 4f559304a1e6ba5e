use num_bigint::BigUint;
use num_traits::One;

/// Number of labelled simple graphs on at most `n` vertices,
/// `Σ_{i=1..n} 2^{(i²−i)/2}`.
pub fn graph_space_size(n: usize) -> BigUint {
    (1..=n)
        .map(|i| BigUint::one() << ((i * i - i) / 2))
        .sum()
}
