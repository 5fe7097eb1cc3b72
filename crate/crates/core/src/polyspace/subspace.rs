use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fatpoint::{condition_matrix_in, FatPointScheme};
use super::monomial::MonomialBasis;
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, PrimeField};

/// A subspace of degree-`d` forms, stored as a spanning matrix whose columns
/// are coefficient vectors in the ambient monomial basis.
#[derive(Clone, Debug)]
pub struct FormSubspace {
    ambient: MonomialBasis,
    span: Matrix,
    // span is the identity: coordinates are monomial coefficients
    full: bool,
}

impl FormSubspace {
    pub fn new(ambient: MonomialBasis, span: Matrix) -> Result<Self> {
        if span.rows() != ambient.len() {
            return Err(Error::ShapeMismatch(format!(
                "span has {} rows for an ambient space of dimension {}",
                span.rows(),
                ambient.len()
            )));
        }
        if span.rank() != span.cols() {
            return Err(Error::DependentSpan);
        }
        Ok(Self {
            ambient,
            span,
            full: false,
        })
    }

    /// All forms of degree `d`.
    pub fn full(field: PrimeField, n: usize, d: i64) -> Self {
        let ambient = MonomialBasis::new(n, d);
        let span = Matrix::identity(field, ambient.len());
        Self {
            ambient,
            span,
            full: true,
        }
    }

    pub fn degree(&self) -> i64 {
        self.ambient.degree()
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    pub fn ambient(&self) -> &MonomialBasis {
        &self.ambient
    }

    pub fn span(&self) -> &Matrix {
        &self.span
    }

    pub fn dimension(&self) -> usize {
        self.span.cols()
    }

    pub fn field(&self) -> PrimeField {
        self.span.field()
    }
}

/// `H^0(P^n, I_W(d))` as an explicit subspace of degree-`d` forms.
pub fn ideal_section_space(
    spec: &FieldSpec,
    scheme: &FatPointScheme,
    d: i64,
) -> Result<FormSubspace> {
    spec.check_degree(d)?;
    let ambient = MonomialBasis::new(scheme.n(), d);
    if scheme.points().is_empty() || ambient.is_empty() {
        let span = Matrix::identity(spec.field, ambient.len());
        return Ok(FormSubspace {
            ambient,
            span,
            full: true,
        });
    }
    let conditions = condition_matrix_in(spec.field, scheme, &ambient);
    let span = conditions.kernel_basis();
    Ok(FormSubspace {
        ambient,
        span,
        full: false,
    })
}

/// An `a x b` matrix of linear forms on `P^n`; entry `(i, j)` is stored as its
/// `n + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFormMatrix {
    n: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
}

impl LinearFormMatrix {
    pub fn new(n: usize, rows: usize, cols: usize, entries: Vec<Vec<u32>>) -> Result<Self> {
        if entries.len() != rows * cols || entries.iter().any(|e| e.len() != n + 1) {
            return Err(Error::ShapeMismatch(format!(
                "expected {rows}x{cols} linear forms with {} coefficients",
                n + 1
            )));
        }
        Ok(Self {
            n,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(n: usize, rows: usize, cols: usize) -> Self {
        Self {
            n,
            rows,
            cols,
            entries: vec![vec![0; n + 1]; rows * cols],
        }
    }

    /// Uniformly random coefficients.
    pub fn random(
        field: PrimeField,
        n: usize,
        rows: usize,
        cols: usize,
        rng: &mut impl Rng,
    ) -> Self {
        let entries = (0..rows * cols)
            .map(|_| (0..=n).map(|_| rng.random_range(0..field.p())).collect())
            .collect();
        Self {
            n,
            rows,
            cols,
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, coeffs: Vec<u32>) {
        assert_eq!(coeffs.len(), self.n + 1);
        self.entries[i * self.cols + j] = coeffs;
    }

    /// Copy with column `j` replaced by zeros.
    pub fn with_zero_column(&self, j: usize) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set_entry(i, j, vec![0; self.n + 1]);
        }
        out
    }

    /// Scalar matrix of the `x_v` coefficients.
    pub fn coefficient_matrix(&self, field: PrimeField, v: usize) -> Matrix {
        Matrix::from_fn(field, self.rows, self.cols, |i, j| self.entry(i, j)[v])
    }

    /// The scalar matrix `A(q)`.
    pub fn evaluate(&self, field: PrimeField, point: &[u32]) -> Matrix {
        Matrix::from_fn(field, self.rows, self.cols, |i, j| {
            self.entry(i, j)
                .iter()
                .zip(point)
                .fold(0, |acc, (&c, &x)| field.add(acc, field.mul(c, x)))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|&c| c == 0))
    }

    /// `g_left * A * g_right` for scalar matrices.
    pub fn transform(&self, field: PrimeField, left: &Matrix, right: &Matrix) -> Result<Self> {
        let mut out = Self::zero(self.n, left.rows(), right.cols());
        for v in 0..=self.n {
            let m = left.mul(&self.coefficient_matrix(field, v))?.mul(right)?;
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.entries[i * out.cols + j][v] = m.get(i, j);
                }
            }
        }
        Ok(out)
    }
}

/// Which block structure a multiplication map uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapOrientation {
    /// `src^b -> dst^a`, target `i` receives `sum_j A[i][j] * s_j`.
    Forward,
    /// `src^a -> dst^b`, target `j` receives `sum_i A[i][j] * s_i`.
    Transposed,
}

/// The map induced by a matrix of linear forms between direct sums of form
/// subspaces, written in the subspace bases.
///
/// Rows are indexed by (target copy, dst basis vector) and columns by
/// (source copy, src basis vector).
pub fn multiplication_map(
    src: &FormSubspace,
    dst: &FormSubspace,
    forms: &LinearFormMatrix,
    orientation: MapOrientation,
) -> Result<Matrix> {
    if dst.degree() != src.degree() + 1 || src.n() != dst.n() || forms.n() != src.n() {
        return Err(Error::ShapeMismatch(format!(
            "multiplication from degree {} to degree {} on P^{} by forms on P^{}",
            src.degree(),
            dst.degree(),
            src.n(),
            forms.n()
        )));
    }
    let field = src.field();
    let per_var = variable_multiplication(src, dst)?;
    let (src_copies, dst_copies) = match orientation {
        MapOrientation::Forward => (forms.cols(), forms.rows()),
        MapOrientation::Transposed => (forms.rows(), forms.cols()),
    };
    let (ds, dd) = (src.dimension(), dst.dimension());
    let mut out = Matrix::zeros(field, dst_copies * dd, src_copies * ds);
    for i in 0..forms.rows() {
        for j in 0..forms.cols() {
            let (tgt, source) = match orientation {
                MapOrientation::Forward => (i, j),
                MapOrientation::Transposed => (j, i),
            };
            for (v, xv) in per_var.iter().enumerate() {
                let c = forms.entry(i, j)[v];
                if c == 0 {
                    continue;
                }
                for r in 0..dd {
                    for s in 0..ds {
                        let x = xv.get(r, s);
                        if x != 0 {
                            out.add_to(tgt * dd + r, source * ds + s, field.mul(c, x));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// For each variable `x_v`, the matrix of `s -> x_v s` from `src` to `dst`
/// in the subspace bases.
fn variable_multiplication(src: &FormSubspace, dst: &FormSubspace) -> Result<Vec<Matrix>> {
    let field = src.field();
    let n = src.n();
    let ds = src.dimension();
    if ds == 0 {
        return Ok(vec![Matrix::zeros(field, dst.dimension(), 0); n + 1]);
    }
    let mut products = Matrix::zeros(field, dst.ambient().len(), (n + 1) * ds);
    for v in 0..=n {
        let shift = src.ambient().shift_table(dst.ambient(), v);
        for s in 0..ds {
            for (m, &target) in shift.iter().enumerate() {
                let c = src.span().get(m, s);
                if c != 0 {
                    products.add_to(target, v * ds + s, c);
                }
            }
        }
    }
    if dst.full {
        return Ok((0..=n)
            .map(|v| {
                Matrix::from_fn(field, dst.dimension(), ds, |r, s| {
                    products.get(r, v * ds + s)
                })
            })
            .collect());
    }
    let coords = dst.span().solve_membership_many(&products)?;
    let mut out = vec![Matrix::zeros(field, dst.dimension(), ds); n + 1];
    for (col, c) in coords.into_iter().enumerate() {
        let c = c.ok_or(Error::MembershipFailure)?;
        let (v, s) = (col / ds, col % ds);
        for (r, x) in c.into_iter().enumerate() {
            out[v].set(r, s, x);
        }
    }
    Ok(out)
}
