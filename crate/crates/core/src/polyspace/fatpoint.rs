use serde::{Deserialize, Serialize};

use super::monomial::{affine_exponents, MonomialBasis};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, PrimeField};

/// A point of `P^n` over GF(p), scaled so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjPoint {
    coords: Vec<u32>,
}

impl ProjPoint {
    pub fn new(field: PrimeField, coords: &[i64]) -> Result<Self> {
        let reduced: Vec<u32> = coords.iter().map(|&x| field.from_i64(x)).collect();
        Self::from_residues(field, reduced)
    }

    pub fn from_residues(field: PrimeField, mut coords: Vec<u32>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidPoint(format!(
                "need at least 2 coordinates, got {coords:?}"
            )));
        }
        let Some(j) = coords.iter().position(|&x| x != 0) else {
            return Err(Error::InvalidPoint("all coordinates vanish".into()));
        };
        let inv = field.inv(coords[j]);
        for x in &mut coords {
            *x = field.mul(*x, inv);
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Ambient dimension `n` of the projective space the point lives in.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the affine chart `x_j != 0` used for local expansions.
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|&x| x != 0).unwrap()
    }

    /// Local variable indices: every homogeneous coordinate except the chart one.
    pub fn local_vars(&self) -> Vec<usize> {
        let j = self.chart();
        (0..=self.n()).filter(|&l| l != j).collect()
    }
}

/// The zero-dimensional scheme `sum b_t p_t`, locally cut out by `m_{p_t}^{b_t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPointScheme {
    n: usize,
    points: Vec<ProjPoint>,
    multiplicities: Vec<u32>,
}

impl FatPointScheme {
    /// Points with multiplicity zero impose nothing and are dropped.
    pub fn new(n: usize, points: Vec<ProjPoint>, multiplicities: Vec<u32>) -> Result<Self> {
        if points.len() != multiplicities.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} points but {} multiplicities",
                points.len(),
                multiplicities.len()
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
        let (points, multiplicities) = points
            .into_iter()
            .zip(multiplicities)
            .filter(|(_, b)| *b > 0)
            .unzip();
        Ok(Self {
            n,
            points,
            multiplicities,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            points: Vec::new(),
            multiplicities: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.multiplicities.iter().copied().max().unwrap_or(0)
    }

    /// Length of the scheme: `sum_t C(b_t + n - 1, n)`.
    pub fn length(&self) -> usize {
        self.multiplicities
            .iter()
            .map(|&b| super::monomial::basis_size(self.n, b as i64 - 1))
            .sum()
    }
}

pub(crate) fn check_distinct(points: &[ProjPoint]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::CoincidentPoints(i, j));
            }
        }
    }
    Ok(())
}

/// Taylor-coefficient rows at `point` for forms in `basis`: one row per local
/// exponent `alpha` with `|alpha| < below`.
///
/// Dehomogenize at the chart coordinate, write `x_l = u_l + c_l`, and read off
/// the coefficient of `u^alpha`, which is `prod_l C(e_l, alpha_l) c_l^(e_l - alpha_l)`.
pub fn taylor_rows(
    field: PrimeField,
    basis: &MonomialBasis,
    point: &ProjPoint,
    below: u32,
) -> Matrix {
    let locals = point.local_vars();
    let alphas = affine_exponents(locals.len(), below);
    let degree = basis.degree().max(0) as u32;
    let c = point.coords();
    // powers[l][k] = c_l^k, binom[e][k] = C(e, k)
    let powers: Vec<Vec<u32>> = c
        .iter()
        .map(|&x| (0..=degree).map(|k| field.pow(x, k as u64)).collect())
        .collect();
    let binom: Vec<Vec<u32>> = (0..=degree)
        .map(|e| (0..=degree).map(|k| field.binomial(e, k)).collect())
        .collect();
    let mut rows = Matrix::zeros(field, alphas.len(), basis.len());
    for (ri, alpha) in alphas.iter().enumerate() {
        for (ci, mono) in basis.monomials().iter().enumerate() {
            let mut v = 1u32;
            for (k, &l) in locals.iter().enumerate() {
                let (e, a) = (mono[l], alpha[k]);
                if a > e {
                    v = 0;
                    break;
                }
                v = field.mul(
                    v,
                    field.mul(binom[e as usize][a as usize], powers[l][(e - a) as usize]),
                );
                if v == 0 {
                    break;
                }
            }
            rows.set(ri, ci, v);
        }
    }
    rows
}

/// Vanishing-to-order-`b_t` conditions at every fat point on degree-`d` forms.
///
/// A coefficient vector `v` satisfies `C v = 0` iff the form vanishes to
/// order `b_t` at each `p_t`.
pub fn condition_matrix(spec: &FieldSpec, scheme: &FatPointScheme, d: i64) -> Result<Matrix> {
    spec.check_degree(d)?;
    let basis = MonomialBasis::new(scheme.n(), d);
    Ok(condition_matrix_in(spec.field, scheme, &basis))
}

pub(crate) fn condition_matrix_in(
    field: PrimeField,
    scheme: &FatPointScheme,
    basis: &MonomialBasis,
) -> Matrix {
    let blocks: Vec<Matrix> = scheme
        .points()
        .iter()
        .zip(scheme.multiplicities())
        .map(|(p, &b)| taylor_rows(field, basis, p, b))
        .collect();
    let rows: usize = blocks.iter().map(Matrix::rows).sum();
    let mut out = Matrix::zeros(field, rows, basis.len());
    let mut r0 = 0;
    for blk in &blocks {
        for i in 0..blk.rows() {
            for j in 0..blk.cols() {
                out.set(r0 + i, j, blk.get(i, j));
            }
        }
        r0 += blk.rows();
    }
    out
}
