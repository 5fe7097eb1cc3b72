use rand::Rng;
use serde::{Deserialize, Serialize};

use super::hilbert::m_of_r;
use crate::blowup::{is_fano, random_point, BlowupVariety};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyspace::{
    ideal_section_space, multiply_forms, FatPointScheme, FormSubspace, MonomialBasis, ProjPoint,
};

/// Errors unless `X` is a del Pezzo surface with very ample `-K_X`.
pub fn require_strong_del_pezzo(x: &BlowupVariety) -> Result<()> {
    if x.n() != 2 {
        return Err(Error::RequiresSurface(x.n()));
    }
    let status = is_fano(x)?;
    if !status.fano {
        return Err(Error::NotFano {
            n: 2,
            s: x.s(),
            detail: format!(": {}", status.detail),
        });
    }
    if !status.strong {
        return Err(Error::NotStrongDelPezzo(x.s()));
    }
    Ok(())
}

/// Reduced points of `X` away from the exceptional curves, given by their
/// plane coordinates.
#[derive(Clone, Debug)]
pub struct PointScheme {
    pub x: BlowupVariety,
    points: Vec<ProjPoint>,
}

impl PointScheme {
    pub fn new(x: BlowupVariety, points: Vec<ProjPoint>) -> Result<Self> {
        require_strong_del_pezzo(&x)?;
        let mut all = x.points().to_vec();
        all.extend(points.iter().cloned());
        // validates P^2 membership and distinctness, base points included
        FatPointScheme::new(2, all.clone(), vec![1; all.len()])?;
        Ok(Self { x, points })
    }

    /// `m` uniformly random points avoiding the base points.
    pub fn sample(x: BlowupVariety, m: usize, rng: &mut impl Rng) -> Result<Self> {
        require_strong_del_pezzo(&x)?;
        let field = x.spec().field;
        let mut points: Vec<ProjPoint> = Vec::with_capacity(m);
        while points.len() < m {
            let q = random_point(field, 2, rng);
            if !x.points().contains(&q) && !points.contains(&q) {
                points.push(q);
            }
        }
        Self::new(x, points)
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.x.degree().unwrap()
    }
}

/// `H^0(I_{Z|X}(jH))` as plane curves of degree `3j` with multiplicity `j`
/// at each base point, passing through `Z`.
pub fn ideal_graded_piece(z: &PointScheme, j: i64) -> Result<FormSubspace> {
    let field = z.x.spec().field;
    if j < 0 {
        return FormSubspace::new(MonomialBasis::new(2, 3 * j), Matrix::zeros(field, 0, 0));
    }
    let mut points = z.x.points().to_vec();
    let mut mult = vec![j as u32; points.len()];
    points.extend(z.points.iter().cloned());
    mult.extend(std::iter::repeat_n(1, z.points.len()));
    let scheme = FatPointScheme::new(2, points, mult)?;
    ideal_section_space(z.x.spec(), &scheme, 3 * j)
}

/// `H^0(O_X(H))`, the linear forms of the anticanonical embedding.
pub fn anticanonical_forms(x: &BlowupVariety) -> Result<FormSubspace> {
    let scheme = FatPointScheme::new(2, x.points().to_vec(), vec![1; x.s()])?;
    ideal_section_space(x.spec(), &scheme, 3)
}

/// Products `w_k * f_l` in the monomial basis of degree `deg w + deg f`,
/// one column per pair, `k` major.
pub fn product_columns(w: &FormSubspace, m: &FormSubspace) -> Matrix {
    let field = w.field();
    let out = MonomialBasis::new(2, w.degree() + m.degree());
    let wc: Vec<Vec<u32>> = (0..w.dimension()).map(|k| w.span().col(k)).collect();
    let mc: Vec<Vec<u32>> = (0..m.dimension()).map(|l| m.span().col(l)).collect();
    let mut cols = Vec::with_capacity(wc.len() * mc.len());
    for a in &wc {
        for b in &mc {
            cols.push(multiply_forms(field, w.ambient(), a, m.ambient(), b, &out));
        }
    }
    Matrix::from_columns(field, out.len(), &cols)
}

/// Degree checks for the ideal of `m(r)` points: nothing in degree `r - 1`,
/// `(d-1)r + 1` generators in degree `r`, none in degree `r + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrcReport {
    pub d: i64,
    pub r: i64,
    pub points: usize,
    pub below: usize,
    pub at: usize,
    pub expected_at: usize,
    pub next: usize,
    pub next_image_rank: usize,
    pub below_ok: bool,
    pub at_ok: bool,
    pub no_new_generators: bool,
    pub passed: bool,
}

pub fn check_mrc_degrees(z: &PointScheme, r: i64) -> Result<MrcReport> {
    let d = z.degree();
    let m = m_of_r(d, r)?;
    if z.len() != m {
        return Err(Error::CardinalityMismatch {
            got: z.len(),
            expected: m,
        });
    }
    let below = ideal_graded_piece(z, r - 1)?.dimension();
    let at_space = ideal_graded_piece(z, r)?;
    let at = at_space.dimension();
    let next = ideal_graded_piece(z, r + 1)?.dimension();
    let w = anticanonical_forms(&z.x)?;
    let next_image_rank = product_columns(&w, &at_space).rank();
    let expected_at = ((d - 1) * r + 1) as usize;
    let below_ok = below == 0;
    let at_ok = at == expected_at;
    let no_new_generators = next_image_rank == next;
    Ok(MrcReport {
        d,
        r,
        points: m,
        below,
        at,
        expected_at,
        next,
        next_image_rank,
        below_ok,
        at_ok,
        no_new_generators,
        passed: below_ok && at_ok && no_new_generators,
    })
}
