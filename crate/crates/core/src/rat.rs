//! Exact arithmetic helpers on top of `num`'s big rationals.
//!
//! Everything in this crate computes over `BigInt` / `BigRational`; there is
//! no floating-point fallback anywhere. `BigRational` keeps denominators
//! positive and fractions reduced, which is exactly the invariant we need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Ceiling of p/q in exact integer arithmetic (floor-division based).
pub fn ceil_div(p: &BigInt, q: &BigInt) -> BigInt {
    assert!(!q.is_zero(), "ceil_div by zero");
    let (p, q) = if q.is_negative() {
        (-p, -q)
    } else {
        (p.clone(), q.clone())
    };
    // ceil(p/q) = floor((p + q - 1) / q) for q > 0
    (p + &q - BigInt::one()).div_floor(&q)
}

pub fn ceil_rat(r: &Rat) -> BigInt {
    ceil_div(r.numer(), r.denom())
}

pub fn floor_rat(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// gcd of a slice, ignoring signs; 0 for an all-zero (or empty) slice.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(vals: I) -> BigInt {
    let mut g = BigInt::zero();
    for v in vals {
        if !v.is_zero() {
            g = if g.is_zero() { v.abs() } else { g.gcd(v) };
        }
        if g.is_one() {
            break;
        }
    }
    g
}

/// Scale a rational vector to the unique primitive integer vector with the
/// same direction. Panics on an all-zero input.
pub fn primitive_int_vec(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = gcd_all(ints.iter());
    assert!(!g.is_zero(), "primitive_int_vec on zero vector");
    ints.into_iter().map(|x| x / &g).collect()
}

/// Divide an integer vector by the gcd of its entries (signs preserved).
pub fn reduce_int_vec(v: &mut [BigInt]) {
    let g = gcd_all(v.iter());
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}
