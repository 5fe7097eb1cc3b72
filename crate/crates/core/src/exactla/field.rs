use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;
pub const DEFAULT_DEGREE_BOUND: u32 = 64;

/// Arithmetic in GF(p). Elements are plain `u32` values in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        // keep products of two residues inside u64 with room for one addition
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, x: u32) -> u32 {
        assert!(x != 0, "inverse of zero in GF({})", self.p);
        self.pow(x, self.p as u64 - 2)
    }

    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn from_u64(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    /// Maps a residue to the symmetric range `(-p/2, p/2]`.
    pub fn to_signed(&self, x: u32) -> i64 {
        if x > self.p / 2 {
            x as i64 - self.p as i64
        } else {
            x as i64
        }
    }

    /// Binomial coefficient C(m, k) reduced mod p, for small non-negative m.
    pub fn binomial(&self, m: u32, k: u32) -> u32 {
        if k > m {
            return 0;
        }
        let k = k.min(m - k);
        let mut num = 1u32;
        let mut den = 1u32;
        for i in 0..k {
            num = self.mul(num, self.from_u64((m - i) as u64));
            den = self.mul(den, self.from_u64((i + 1) as u64));
        }
        // m < p is guaranteed by the degree bound, so den is a unit
        self.mul(num, self.inv(den))
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

/// Deterministic primality test for 64-bit integers (trial division is
/// enough for the word-sized primes used here).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime field together with the largest form degree a session may touch.
///
/// Vanishing conditions are read off Taylor coefficients, which needs every
/// degree involved to stay below the characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub field: PrimeField,
    pub degree_bound: u32,
}

impl FieldSpec {
    pub fn new(p: u32, degree_bound: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if p <= degree_bound {
            return Err(Error::PrimeTooSmall {
                p,
                bound: degree_bound,
            });
        }
        Ok(Self {
            field,
            degree_bound,
        })
    }

    pub fn with_prime(p: u32) -> Result<Self> {
        Self::new(p, DEFAULT_DEGREE_BOUND)
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn check_degree(&self, degree: i64) -> Result<()> {
        if degree > self.degree_bound as i64 {
            Err(Error::DegreeExceedsBound {
                degree,
                bound: self.degree_bound,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self {
            field: PrimeField::default(),
            degree_bound: DEFAULT_DEGREE_BOUND,
        }
    }
}
