use log::debug;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::variety::{BlowupVariety, FanoStatus};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, PrimeField};
use crate::polyspace::{check_distinct, condition_matrix, FatPointScheme, ProjPoint};

/// Outcome of the general-position test; on failure `witness` holds the
/// offending indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPosition {
    pub general: bool,
    pub witness: Option<Vec<usize>>,
    pub violation: Option<String>,
}

impl GeneralPosition {
    fn ok() -> Self {
        Self {
            general: true,
            witness: None,
            violation: None,
        }
    }

    fn fail(witness: Vec<usize>, violation: String) -> Self {
        Self {
            general: false,
            witness: Some(witness),
            violation: Some(violation),
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// No three points on a line, no six on a conic, and no eight on a cubic
/// singular at one of them.
pub fn is_general_position(spec: &FieldSpec, points: &[ProjPoint]) -> Result<GeneralPosition> {
    if points.len() > 8 {
        return Err(Error::TooManyPoints(points.len()));
    }
    if let Some(p) = points.iter().find(|p| p.n() != 2) {
        return Err(Error::InvalidPoint(format!(
            "{:?} is not a point of P^2",
            p.coords()
        )));
    }
    if let Err(Error::CoincidentPoints(i, j)) = check_distinct(points) {
        return Ok(GeneralPosition::fail(
            vec![i, j],
            "coincident points".into(),
        ));
    }
    let field = spec.field;
    for triple in subsets(points.len(), 3) {
        let m = Matrix::from_fn(field, 3, 3, |i, j| points[triple[i]].coords()[j]);
        if m.rank() < 3 {
            return Ok(GeneralPosition::fail(
                triple,
                "three points on a line".into(),
            ));
        }
    }
    for six in subsets(points.len(), 6) {
        let w = scheme(points, &six, None)?;
        if condition_matrix(spec, &w, 2)?.rank() < 6 {
            return Ok(GeneralPosition::fail(six, "six points on a conic".into()));
        }
    }
    if points.len() == 8 {
        let all: Vec<usize> = (0..8).collect();
        for i in 0..8 {
            let w = scheme(points, &all, Some(i))?;
            if condition_matrix(spec, &w, 3)?.rank() < 10 {
                let mut witness = vec![i];
                witness.extend((0..8).filter(|&j| j != i));
                return Ok(GeneralPosition::fail(
                    witness,
                    format!("eight points on a cubic singular at point {i}"),
                ));
            }
        }
    }
    Ok(GeneralPosition::ok())
}

fn scheme(points: &[ProjPoint], idx: &[usize], double: Option<usize>) -> Result<FatPointScheme> {
    let pts = idx.iter().map(|&i| points[i].clone()).collect();
    let mults = idx
        .iter()
        .map(|&i| if Some(i) == double { 2 } else { 1 })
        .collect();
    FatPointScheme::new(2, pts, mults)
}

/// Fano predicate together with very ampleness of `-K_X`.
pub fn is_fano(x: &BlowupVariety) -> Result<FanoStatus> {
    let (n, s) = (x.n(), x.s());
    if n == 2 {
        if s > 8 {
            return Ok(FanoStatus {
                fano: false,
                strong: false,
                detail: format!("{s} > 8 points"),
            });
        }
        let gp = is_general_position(x.spec(), x.points())?;
        if !gp.general {
            return Ok(FanoStatus {
                fano: false,
                strong: false,
                detail: format!(
                    "points not in general position: {}",
                    gp.violation.unwrap_or_default()
                ),
            });
        }
        let strong = s <= 6;
        let detail = match s {
            7 => "del Pezzo of degree 2: -K_X ample, not very ample".into(),
            8 => "del Pezzo of degree 1: -K_X ample, not very ample".into(),
            _ => format!("del Pezzo of degree {}: -K_X very ample", 9 - s),
        };
        Ok(FanoStatus {
            fano: true,
            strong,
            detail,
        })
    } else if s <= 1 {
        Ok(FanoStatus {
            fano: true,
            strong: true,
            detail: format!("blow-up of P^{n} at {s} point(s)"),
        })
    } else {
        Ok(FanoStatus {
            fano: false,
            strong: false,
            detail: format!("blow-up of P^{n} (n >= 3) is Fano only for s <= 1"),
        })
    }
}

/// Errors with [`Error::NotFano`] unless `X` is Fano.
pub fn require_fano(x: &BlowupVariety) -> Result<FanoStatus> {
    let status = is_fano(x)?;
    if !status.fano {
        return Err(Error::NotFano {
            n: x.n(),
            s: x.s(),
            detail: format!(": {}", status.detail),
        });
    }
    Ok(status)
}

pub fn random_point(field: PrimeField, n: usize, rng: &mut impl Rng) -> ProjPoint {
    loop {
        let coords: Vec<u32> = (0..=n).map(|_| rng.random_range(0..field.p())).collect();
        if let Ok(p) = ProjPoint::from_residues(field, coords) {
            return p;
        }
    }
}

/// Rejection-samples `s` distinct points; on `P^2` the configuration must
/// also pass [`is_general_position`].
pub fn sample_general_points(
    spec: &FieldSpec,
    n: usize,
    s: usize,
    rng: &mut impl Rng,
) -> Result<Vec<ProjPoint>> {
    const ATTEMPTS: usize = 100;
    for attempt in 0..ATTEMPTS {
        let pts: Vec<ProjPoint> = (0..s).map(|_| random_point(spec.field, n, rng)).collect();
        if check_distinct(&pts).is_err() {
            continue;
        }
        if n == 2 && s <= 8 {
            let gp = is_general_position(spec, &pts)?;
            if !gp.general {
                debug!("rejected sample {attempt}: {:?}", gp.violation);
                continue;
            }
        }
        return Ok(pts);
    }
    Err(Error::GenericityExhausted { seeds: Vec::new() })
}
