use num_traits::{One, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// Reduced rational `p/q` with positive denominator.
pub fn rat(p: i64, q: i64) -> Result<BigRational> {
    if q == 0 {
        return Err(Error::domain("zero denominator"));
    }
    Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_reduces_and_normalizes_sign() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rat(2, 4).unwrap(), half);
        assert_eq!(rat(-3, -6).unwrap(), half);
        let r = rat(3, -6).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, -5).unwrap().denom(), &BigInt::from(1));
    }

    #[test]
    fn rat_rejects_zero_denominator() {
        assert!(matches!(rat(1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        for n in 0..20u32 {
            let row: BigInt = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(row, BigInt::from(1u64 << n));
        }
    }
}
