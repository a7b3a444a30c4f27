//! Exact scalars: Laurent polynomials in `q`, rational functions, quantum
//! integers, sparse matrices and linear algebra over `Q(q)`.
//!
//! Everything is generic over the integer coefficient ring `C`; the crate root
//! fixes `C = BigInt`.

mod laurent;
pub mod linsolve;
mod matrix;
pub mod modp;
mod poly;
mod ratfunc;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub use laurent::Laurent;
pub use matrix::{add_entry, commutator, vec_axpy, vec_bar, Mat, SparseVec};
pub use ratfunc::RatFunc;

/// Integer coefficient ring for the Laurent layer.
pub trait Coeff:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Quantum integer `[n] = (q^n - q^-n) / (q - q^-1)`.
pub fn qint<C: Coeff>(n: i32) -> Laurent<C> {
    let m = n.abs();
    let p = Laurent::from_terms((0..m).map(|j| (m - 1 - 2 * j, C::one())));
    if n < 0 {
        -p
    } else {
        p
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn qfactorial<C: Coeff>(n: u32) -> Laurent<C> {
    (1..=n as i32).fold(Laurent::one(), |acc, j| &acc * &qint(j))
}

/// Quantum binomial `[n choose k]`, zero outside `0 <= k <= n`.
pub fn qbinomial<C: Coeff>(n: u32, k: u32) -> Laurent<C> {
    if k > n {
        return Laurent::zero();
    }
    let num = qfactorial::<C>(n);
    let den = &qfactorial::<C>(k) * &qfactorial::<C>(n - k);
    num.div_exact(&den).expect("quantum binomials are Laurent polynomials")
}

/// `q - q^-1`, the ubiquitous off-diagonal scalar.
pub fn q_minus_qinv<C: Coeff>() -> Laurent<C> {
    Laurent::from_terms([(1, C::one()), (-1, -C::one())])
}

#[cfg(test)]
mod tests {
    use super::*;

    type L = Laurent<i64>;

    #[test]
    fn qint_values() {
        assert_eq!(qint::<i64>(0), L::zero());
        assert_eq!(qint::<i64>(1), L::one());
        assert_eq!(qint::<i64>(2), L::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(qint::<i64>(-3), -L::from_terms([(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn qint_times_q_minus_qinv() {
        for n in -5..=5 {
            let lhs = &qint::<i64>(n) * &q_minus_qinv();
            let rhs = &L::q_pow(n) - &L::q_pow(-n);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn qbinomial_pascal() {
        // [n k] = q^-k [n-1 k] + q^(n-k) [n-1 k-1]
        for n in 1..7u32 {
            for k in 1..n {
                let lhs = qbinomial::<i64>(n, k);
                let rhs = &qbinomial::<i64>(n - 1, k).shift(-(k as i32))
                    + &qbinomial::<i64>(n - 1, k - 1).shift((n - k) as i32);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
