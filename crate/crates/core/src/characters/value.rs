use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_integer::Integer;

/// A fraction `num/den` of a full turn, in lowest terms with `0 ≤ num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn {
    num: u64,
    den: u64,
}

impl Turn {
    pub const ZERO: Turn = Turn { num: 0, den: 1 };

    /// Reduces `num/den` modulo 1 and to lowest terms. `den` must be nonzero.
    pub fn new(num: u64, den: u64) -> Turn {
        assert!(den > 0, "turn denominator must be positive");
        let num = num % den;
        let g = num.gcd(&den);
        Turn {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// `exp(2πi·num/den)`.
    pub fn to_complex(self) -> Complex64 {
        if self.num == 0 {
            return Complex64::new(1.0, 0.0);
        }
        // Exact values at the quarter turns keep small sums free of rounding.
        if (self.num * 4) % self.den == 0 {
            return match self.num * 4 / self.den {
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        Complex64::from_polar(1.0, TAU * self.num as f64 / self.den as f64)
    }
}

impl Mul for Turn {
    type Output = Turn;

    fn mul(self, rhs: Turn) -> Turn {
        let den = self.den.lcm(&rhs.den);
        Turn::new(self.num * (den / self.den) + rhs.num * (den / rhs.den), den)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The exact value of a Dirichlet character: zero, or a root of unity
/// given as a fraction of a turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root(Turn),
}

impl CharValue {
    pub const ONE: CharValue = CharValue::Root(Turn::ZERO);

    pub fn is_zero(self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn is_one(self) -> bool {
        self == CharValue::ONE
    }

    pub fn turn(self) -> Option<Turn> {
        match self {
            CharValue::Zero => None,
            CharValue::Root(t) => Some(t),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::Root(t) => t.to_complex(),
        }
    }
}

impl Mul for CharValue {
    type Output = CharValue;

    fn mul(self, rhs: CharValue) -> CharValue {
        match (self, rhs) {
            (CharValue::Root(a), CharValue::Root(b)) => CharValue::Root(a * b),
            _ => CharValue::Zero,
        }
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharValue::Zero => write!(f, "0"),
            CharValue::Root(t) => t.fmt(f),
        }
    }
}
