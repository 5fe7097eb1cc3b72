use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The class `a e_0 - sum b_i e_i` in `Pic(X) = Z^{s+1}`.
///
/// `b_i` is stored with the sign flipped relative to the `e_i` coefficient,
/// so effective fat-point classes have `b_i >= 0`. The textual form
/// `"a;b1,b2,..."` uses the same convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: Vec<i64>,
}

impl DivisorClass {
    pub fn new(a: i64, b: Vec<i64>) -> Self {
        Self { a, b }
    }

    pub fn zero(s: usize) -> Self {
        Self {
            a: 0,
            b: vec![0; s],
        }
    }

    /// Pullback of a hyperplane.
    pub fn e0(s: usize) -> Self {
        Self {
            a: 1,
            b: vec![0; s],
        }
    }

    /// The exceptional divisor over the `i`-th point.
    pub fn exceptional(s: usize, i: usize) -> Self {
        let mut b = vec![0; s];
        b[i] = -1;
        Self { a: 0, b }
    }

    pub fn s(&self) -> usize {
        self.b.len()
    }

    /// Coefficients on `e_0, e_1, .., e_s` as written in the Picard basis.
    pub fn raw_coefficients(&self) -> (i64, Vec<i64>) {
        (self.a, self.b.iter().map(|&x| -x).collect())
    }

    pub fn from_raw(a: i64, e: Vec<i64>) -> Self {
        Self {
            a,
            b: e.into_iter().map(|x| -x).collect(),
        }
    }

    pub fn all_b_nonnegative(&self) -> bool {
        self.b.iter().all(|&x| x >= 0)
    }

    fn check_same_s(&self, other: &Self) {
        assert_eq!(self.s(), other.s(), "divisor classes on different blow-ups");
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.check_same_s(rhs);
        DivisorClass {
            a: self.a + rhs.a,
            b: self.b.iter().zip(&rhs.b).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            a: -self.a,
            b: self.b.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            a: self * rhs.a,
            b: rhs.b.iter().map(|x| self * x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DivisorClass {
            type Output = DivisorClass;
            fn $m(self, rhs: DivisorClass) -> DivisorClass {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.a)?;
        for (i, x) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    /// Parses `"a;b1,b2,..."`; `"a"` or `"a;"` means `s = 0`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| {
            Error::Parse(format!(
                "divisor {text:?}: {why} (expected \"a;b1,b2,...\")"
            ))
        };
        let text = text.trim();
        let (a_part, b_part) = match text.split_once(';') {
            Some((a, b)) => (a, b),
            None => (text, ""),
        };
        let a = a_part
            .trim()
            .parse::<i64>()
            .map_err(|_| bad("bad e_0 coefficient"))?;
        let b = if b_part.trim().is_empty() {
            Vec::new()
        } else {
            b_part
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad("bad multiplicity")))
                .collect::<Result<_>>()?
        };
        Ok(Self { a, b })
    }
}
