//! Exact linear algebra over `Q` and `Z`.
//!
//! Every cohomology dimension computed by the crate is ultimately a rank of a
//! [`QMatrix`]. Subspaces are kept in reduced row echelon form so that two
//! equal subspaces compare equal structurally.

mod matrix;
mod subspace;
mod wedge;
mod zmatrix;

pub use matrix::QMatrix;
pub use subspace::{quotient_dim, QSubspace};
pub use wedge::{binomial, compound, contraction, subset_rank, subsets, wedge_of, wedge_power};
pub use zmatrix::{hermite_rows, integer_kernel, smith_normal_form, Snf, ZMatrix};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Converts a machine integer into a [`Rational`].
pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational vector from machine integers.
pub fn qvec(v: &[i64]) -> alloc::vec::Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
///
/// Returns `None` for the zero vector.
pub fn primitive_integer(v: &[Rational]) -> Option<alloc::vec::Vec<BigInt>> {
    use num_integer::Integer;
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: alloc::vec::Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    Some(ints.into_iter().map(|x| x / &g).collect())
}
