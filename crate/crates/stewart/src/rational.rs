//! Exact rational numbers for word exponents.
//!
//! Exponents of factors are ratios of small word lengths, so `u64` parts
//! are plenty. Values are kept reduced, which makes equality structural.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    /// Reduced fraction `num/den`. Panics on a zero denominator.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let g = gcd(num, den).max(1);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // parts stay small here; u128 avoids overflow outright
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational { num: n, den: 1 }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces() {
        assert_eq!(Rational::new(26, 9), Rational::new(52, 18));
        assert_eq!(Rational::new(4, 2), Rational::from(2));
        assert_eq!(Rational::new(0, 5), Rational::from(0));
    }

    #[test]
    fn ordering() {
        assert!(Rational::new(26, 9) < Rational::from(3));
        assert!(Rational::new(80, 27) > Rational::new(26, 9));
    }

    #[test]
    fn display() {
        assert_eq!(Rational::new(26, 9).to_string(), "26/9");
        assert_eq!(Rational::new(3, 1).to_string(), "3");
    }
}
