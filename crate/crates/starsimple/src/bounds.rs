//! Exact arithmetic for the crossing bounds: the recurrence
//! `C(k) <= k*C(k-1) + 1` with `C(0) = 1`, its closed form
//! `k! * sum_{s<=k} 1/s!`, the per-pair bound `3*(n-4)!`, the total bound
//! `n!`, and the construction lower bounds `2^k` and `2^k + 2^(k-2)`.
//!
//! Everything is arbitrary precision; Euler's number is never approximated
//! by a float — comparisons against `e * k!` use the exact partial-sum
//! rational.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Upper bound on the crossings of an admissible pair hittable by `k`
/// points, from the recurrence `c(k) = k*c(k-1) + 1`, `c(0) = 1`.
pub fn c_upper(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(i) + BigUint::one();
    }
    acc
}

/// The closed form `k! * sum_{s=0}^{k} 1/s!` as an exact rational.
pub fn c_upper_partial_sum(k: u64) -> BigRational {
    let kf = BigRational::from_integer(factorial(k).into());
    let mut sum = BigRational::zero();
    for s in 0..=k {
        sum += BigRational::new(BigUint::one().into(), factorial(s).into());
    }
    kf * sum
}

/// `floor(e * k!)` computed over exact rationals, using enough terms of the
/// series for `e` that the remainder cannot affect the floor.
pub fn floor_e_times_factorial(k: u64) -> BigUint {
    // The tail after k + 4 extra terms is far below the gap to the next
    // integer, and the partial sum is never an integer for k >= 1, so the
    // floor is decided.
    let terms = 2 * k + 4;
    let kf = BigRational::from_integer(factorial(k).into());
    let mut sum = BigRational::zero();
    for s in 0..=terms {
        sum += BigRational::new(BigUint::one().into(), factorial(s).into());
    }
    let x = kf * sum;
    let fl = x.numer().div_floor(x.denom());
    fl.to_biguint().expect("positive")
}

/// Per-pair and total crossing bounds for a complete drawing on `n`
/// vertices: `(3*(n-4)!, n!)`. Requires `n >= 4`; also checks that
/// `c_upper(n-4) <= 3*(n-4)!` exactly.
pub fn bounds_for_n(n: u64) -> (BigUint, BigUint) {
    assert!(n >= 4, "bounds are defined for n >= 4");
    let pair = BigUint::from(3u32) * factorial(n - 4);
    let total = factorial(n);
    debug_assert!(c_upper(n - 4) <= pair);
    (pair, total)
}

/// Construction lower bounds for hitting number `k`: the doubled family
/// reaches `2^k` crossings, the enhanced family `2^k + 2^(k-2)` (defined
/// for `k >= 2`).
pub fn lower_bounds(k: u64) -> (BigUint, Option<BigUint>) {
    let doubling = BigUint::one() << k;
    let enhanced = if k >= 2 {
        Some((BigUint::one() << k) + (BigUint::one() << (k - 2)))
    } else {
        None
    };
    (doubling, enhanced)
}

/// `c_upper(k)` as usize, saturating at `usize::MAX` for large `k`.
pub fn c_upper_usize(k: u64) -> usize {
    c_upper(k).to_usize().unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_matches_closed_form() {
        for k in 0..=64 {
            let rec = BigRational::from_integer(c_upper(k).into());
            assert_eq!(rec, c_upper_partial_sum(k), "k = {k}");
        }
    }

    #[test]
    fn floor_oracle_agrees_for_positive_k() {
        // e*0! = e has floor 2 while the recurrence starts at 1; for every
        // k >= 1 the series tail is below 1 and the values agree.
        assert_eq!(floor_e_times_factorial(0), BigUint::from(2u32));
        for k in 1..=64u64 {
            assert_eq!(floor_e_times_factorial(k), c_upper(k), "k = {k}");
        }
    }

    #[test]
    fn small_table() {
        let expect = [1u64, 2, 5, 16, 65, 326, 1957];
        for (k, &v) in expect.iter().enumerate() {
            assert_eq!(c_upper(k as u64), BigUint::from(v));
        }
    }

    #[test]
    fn bounds_for_small_n() {
        assert_eq!(bounds_for_n(4), (BigUint::from(3u32), BigUint::from(24u32)));
        assert_eq!(
            bounds_for_n(6),
            (BigUint::from(6u32), BigUint::from(720u32))
        );
        assert_eq!(
            bounds_for_n(10),
            (BigUint::from(2160u32), BigUint::from(3628800u32))
        );
    }

    #[test]
    fn lower_bounds_match_shifts() {
        assert_eq!(lower_bounds(0), (BigUint::one(), None));
        assert_eq!(
            lower_bounds(2),
            (BigUint::from(4u32), Some(BigUint::from(5u32)))
        );
        assert_eq!(
            lower_bounds(5),
            (BigUint::from(32u32), Some(BigUint::from(40u32)))
        );
    }

    #[test]
    fn lower_bounds_stay_below_upper() {
        for k in 2..=64u64 {
            let (_, enhanced) = lower_bounds(k);
            assert!(enhanced.unwrap() <= c_upper(k), "k = {k}");
        }
    }

    #[test]
    fn upper_bound_stays_below_three_factorial() {
        for k in 0..=64u64 {
            assert!(c_upper(k) <= BigUint::from(3u32) * factorial(k));
        }
    }

    #[test]
    fn pair_counting_step_is_consistent() {
        // #independent pairs times the pair bound stays below n!:
        // 3*binom(n,4)*3*(n-4)! <= n! for 4 <= n <= 64.
        for n in 4..=64u64 {
            let binom = factorial(n) / (factorial(4) * factorial(n - 4));
            let lhs = BigUint::from(3u32) * binom * BigUint::from(3u32) * factorial(n - 4);
            assert!(lhs <= factorial(n), "n = {n}");
        }
    }
}
