//! Integer helpers: trial-division factorization, divisor enumeration,
//! factorials, multiplicative semigroup membership. Desk scale only — no
//! probabilistic primality, no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sorted distinct prime factors of |n|; empty for n in {-1, 0, 1}.
pub fn distinct_primes(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m <= BigInt::one() {
        return out;
    }
    let two = BigInt::from(2);
    if m.is_multiple_of(&two) {
        out.push(two.clone());
        while m.is_multiple_of(&two) {
            m /= &two;
        }
    }
    let mut d = BigInt::from(3);
    while &d * &d <= m {
        if m.is_multiple_of(&d) {
            out.push(d.clone());
            while m.is_multiple_of(&d) {
                m /= &d;
            }
        }
        d += 2;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

/// All positive divisors of |n| in increasing order (n must be nonzero).
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let m = n.abs();
    assert!(!m.is_zero(), "divisors of zero are unbounded");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= m {
        if m.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &m / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Is n a product of primes from the given set? 1 qualifies (empty product);
/// 0 and negatives do not.
pub fn in_multiplicative_semigroup(n: &BigInt, primes: &[BigInt]) -> bool {
    if n.is_zero() || n.is_negative() {
        return false;
    }
    let mut m = n.clone();
    for p in primes {
        while m.is_multiple_of(p) && !m.is_one() {
            m /= p;
        }
    }
    m.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn primes_by_trial_division() {
        assert_eq!(distinct_primes(&big(1)), Vec::<BigInt>::new());
        assert_eq!(distinct_primes(&big(-12)), vec![big(2), big(3)]);
        assert_eq!(distinct_primes(&big(97)), vec![big(97)]);
        assert_eq!(distinct_primes(&big(360)), vec![big(2), big(3), big(5)]);
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(positive_divisors(&big(1)), vec![big(1)]);
        assert_eq!(
            positive_divisors(&big(-12)),
            vec![big(1), big(2), big(3), big(4), big(6), big(12)]
        );
        assert_eq!(positive_divisors(&big(49)), vec![big(1), big(7), big(49)]);
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(5), big(120));
        assert_eq!(factorial(10), big(3628800));
    }

    #[test]
    fn semigroup_membership() {
        let ps = vec![big(2), big(3)];
        assert!(in_multiplicative_semigroup(&big(1), &ps));
        assert!(in_multiplicative_semigroup(&big(12), &ps));
        assert!(!in_multiplicative_semigroup(&big(10), &ps));
        assert!(!in_multiplicative_semigroup(&big(0), &ps));
        assert!(in_multiplicative_semigroup(&big(1), &[]));
        assert!(!in_multiplicative_semigroup(&big(2), &[]));
    }
}
