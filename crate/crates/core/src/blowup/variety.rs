use serde::{Deserialize, Serialize};

use super::divisor::DivisorClass;
use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::polyspace::{check_distinct, FatPointScheme, ProjPoint};

/// `X = Bl_Z P^n` for a set `Z` of distinct points.
#[derive(Clone, Debug)]
pub struct BlowupVariety {
    spec: FieldSpec,
    n: usize,
    points: Vec<ProjPoint>,
}

impl BlowupVariety {
    pub fn new(spec: FieldSpec, n: usize, points: Vec<ProjPoint>) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!(
                "ambient dimension must be at least 2, got {n}"
            )));
        }
        for p in &points {
            if p.n() != n {
                return Err(Error::InvalidPoint(format!(
                    "point {:?} is not in P^{n}",
                    p.coords()
                )));
            }
        }
        check_distinct(&points)?;
        Ok(Self { spec, n, points })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// `K_X^2 = 9 - s` on a surface.
    pub fn degree(&self) -> Option<i64> {
        (self.n == 2).then(|| 9 - self.s() as i64)
    }

    /// The fat-point scheme `sum max(b_i, 0) p_i`, together with the degree.
    pub fn fat_points(&self, d: &DivisorClass) -> Result<FatPointScheme> {
        self.check_class(d)?;
        let mults = d.b.iter().map(|&x| x.max(0) as u32).collect();
        FatPointScheme::new(self.n, self.points.clone(), mults)
    }

    pub(crate) fn check_class(&self, d: &DivisorClass) -> Result<()> {
        if d.s() != self.s() {
            return Err(Error::ShapeMismatch(format!(
                "divisor has {} exceptional coefficients, variety has {} points",
                d.s(),
                self.s()
            )));
        }
        Ok(())
    }

    /// Class of the twist `D + t H` by the anticanonical class.
    pub fn twist(&self, d: &DivisorClass, t: i64) -> DivisorClass {
        d + &(t * &anticanonical_class(self))
    }
}

/// `K_X`, i.e. `-(n+1) e_0 + (n-1) sum e_i`.
pub fn canonical_class(x: &BlowupVariety) -> DivisorClass {
    let n = x.n() as i64;
    DivisorClass::new(-(n + 1), vec![-(n - 1); x.s()])
}

/// `H = -K_X`.
pub fn anticanonical_class(x: &BlowupVariety) -> DivisorClass {
    -canonical_class(x)
}

/// Intersection pairing on a surface: `e_0^2 = 1`, `e_i^2 = -1`, mixed terms 0.
pub fn intersection(x: &BlowupVariety, d1: &DivisorClass, d2: &DivisorClass) -> Result<i64> {
    if x.n() != 2 {
        return Err(Error::RequiresSurface(x.n()));
    }
    x.check_class(d1)?;
    x.check_class(d2)?;
    Ok(d1.a * d2.a - d1.b.iter().zip(&d2.b).map(|(p, q)| p * q).sum::<i64>())
}

/// Fano status and whether `-K_X` is very ample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoStatus {
    pub fano: bool,
    pub strong: bool,
    pub detail: String,
}
