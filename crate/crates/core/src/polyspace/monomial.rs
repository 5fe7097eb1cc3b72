use std::collections::HashMap;

use crate::exactla::PrimeField;

/// Exponent vectors of total degree `d` in `nvars` variables, in graded
/// lexicographic order (`x0^d` first).
pub fn exponents(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// All exponent vectors in `nvars` variables with total degree `< below`,
/// ordered by degree and then lexicographically.
pub fn affine_exponents(nvars: usize, below: u32) -> Vec<Vec<u32>> {
    (0..below).flat_map(|k| exponents(nvars, k)).collect()
}

/// Ordered monomial basis of homogeneous forms of degree `d` on `P^n`.
///
/// A negative degree gives the empty basis.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    degree: i64,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: i64) -> Self {
        let monomials = if degree < 0 {
            Vec::new()
        } else {
            exponents(n + 1, degree as u32)
        };
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            n,
            degree,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// For each monomial `m_i` of this basis, the index of `x_v * m_i` in `up`.
    pub fn shift_table(&self, up: &MonomialBasis, v: usize) -> Vec<usize> {
        assert_eq!(up.degree, self.degree + 1);
        let mut e = vec![0u32; self.n + 1];
        self.monomials
            .iter()
            .map(|m| {
                e.copy_from_slice(m);
                e[v] += 1;
                up.index[&e]
            })
            .collect()
    }

    /// Evaluates the form with coefficient vector `coeffs` at `point`.
    pub fn evaluate(&self, field: PrimeField, coeffs: &[u32], point: &[u32]) -> u32 {
        self.monomials.iter().zip(coeffs).fold(0, |acc, (m, &c)| {
            if c == 0 {
                return acc;
            }
            let term = m
                .iter()
                .zip(point)
                .fold(c, |t, (&e, &x)| field.mul(t, field.pow(x, e as u64)));
            field.add(acc, term)
        })
    }
}

/// Product of two forms given by coefficient vectors in their bases.
pub fn multiply_forms(
    field: PrimeField,
    lhs_basis: &MonomialBasis,
    lhs: &[u32],
    rhs_basis: &MonomialBasis,
    rhs: &[u32],
    out_basis: &MonomialBasis,
) -> Vec<u32> {
    assert_eq!(out_basis.degree(), lhs_basis.degree() + rhs_basis.degree());
    let mut out = vec![0u32; out_basis.len()];
    let mut e = vec![0u32; lhs_basis.n() + 1];
    for (ml, &cl) in lhs_basis.monomials().iter().zip(lhs) {
        if cl == 0 {
            continue;
        }
        for (mr, &cr) in rhs_basis.monomials().iter().zip(rhs) {
            if cr == 0 {
                continue;
            }
            for (k, x) in e.iter_mut().enumerate() {
                *x = ml[k] + mr[k];
            }
            let idx = out_basis
                .index_of(&e)
                .expect("product monomial in output basis");
            out[idx] = field.add(out[idx], field.mul(cl, cr));
        }
    }
    out
}

/// Number of monomials of degree `d` in `n + 1` variables, `C(n + d, n)`.
pub fn basis_size(n: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    let d = d as u128;
    let mut num = 1u128;
    for i in 1..=n as u128 {
        num = num * (d + i) / i;
    }
    num as usize
}
