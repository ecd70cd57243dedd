use std::cmp::Ordering;
use std::fmt;

use super::{floor_div, WideInt};

/// An exact rational `num/den` with `den > 0`.
///
/// Fractions are never reduced; comparisons cross-multiply.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    num: WideInt,
    den: WideInt,
}

impl Ratio {
    /// Panics if `den == 0`. A negative denominator is folded into the numerator.
    pub fn new(num: WideInt, den: WideInt) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            Ratio {
                num: -num,
                den: -den,
            }
        } else {
            Ratio { num, den }
        }
    }

    pub fn integer(n: WideInt) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn num(&self) -> WideInt {
        self.num
    }

    pub fn den(&self) -> WideInt {
        self.den
    }

    pub fn floor(&self) -> WideInt {
        floor_div(self.num, self.den)
    }

    pub fn ceil(&self) -> WideInt {
        -floor_div(-self.num, self.den)
    }

    /// Numerator of the fractional part `{r} ∈ [0, 1)` over the same denominator.
    pub fn fract_num(&self) -> WideInt {
        self.num.rem_euclid(self.den)
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn is_integer(&self) -> bool {
        self.num % self.den == 0
    }

    pub fn add_int(&self, k: WideInt) -> Self {
        Ratio {
            num: self.num + k * self.den,
            den: self.den,
        }
    }

    pub fn mul_int(&self, k: WideInt) -> Self {
        Ratio {
            num: self.num * k,
            den: self.den,
        }
    }

    pub fn sub(&self, other: &Ratio) -> Self {
        Ratio::new(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn recip(&self) -> Self {
        Ratio::new(self.den, self.num)
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
