//! Graded Betti numbers of `I_{Z|X}` over the coordinate ring of `P^d`,
//! by Koszul homology on explicit graded pieces.

use std::collections::HashMap;

use super::hilbert::m_of_r;
use super::points::{anticanonical_forms, ideal_graded_piece, product_columns, PointScheme};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyspace::{FormSubspace, MonomialBasis};

pub const MAX_KOSZUL_DEGREE: i64 = 4;
pub const MAX_KOSZUL_RANK: i64 = 2;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

struct Koszul<'a> {
    z: &'a PointScheme,
    w: FormSubspace,
    pieces: HashMap<i64, FormSubspace>,
}

impl<'a> Koszul<'a> {
    fn piece(&mut self, j: i64) -> Result<&FormSubspace> {
        if !self.pieces.contains_key(&j) {
            let p = ideal_graded_piece(self.z, j)?;
            self.pieces.insert(j, p);
        }
        Ok(&self.pieces[&j])
    }

    /// Rank of `Lambda^i W (x) M_q -> Lambda^{i-1} W (x) M_{q+1}`, the target
    /// written in monomial coordinates.
    fn differential_rank(&mut self, i: usize, q: i64) -> Result<usize> {
        let nw = self.w.dimension();
        if i == 0 || i > nw || q < 0 {
            return Ok(0);
        }
        let m = self.piece(q)?.clone();
        if m.dimension() == 0 {
            return Ok(0);
        }
        let field = m.field();
        let amb = MonomialBasis::new(2, 3 * (q + 1)).len();
        // products[k] has a column w_k * f_l for every basis element f_l
        let all = product_columns(&self.w, &m);
        let dm = m.dimension();
        let src = subsets(nw, i);
        let dst = subsets(nw, i - 1);
        let dst_index: HashMap<&Vec<usize>, usize> =
            dst.iter().enumerate().map(|(k, s)| (s, k)).collect();
        let mut out = Matrix::zeros(field, dst.len() * amb, src.len() * dm);
        for (si, set) in src.iter().enumerate() {
            for (pos, &k) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(pos);
                let row0 = dst_index[&rest] * amb;
                for l in 0..dm {
                    let col = si * dm + l;
                    for r in 0..amb {
                        let v = all.get(r, k * dm + l);
                        if v != 0 {
                            out.add_to(row0 + r, col, if pos % 2 == 0 { v } else { field.neg(v) });
                        }
                    }
                }
            }
        }
        Ok(out.rank())
    }
}

/// `beta_{i,j}`: middle homology of
/// `Lambda^{i+1} W (x) M_{j-i-1} -> Lambda^i W (x) M_{j-i} -> Lambda^{i-1} W (x) M_{j-i+1}`.
///
/// Only for `d <= 4` and at most `m(2)` points.
pub fn koszul_betti(z: &PointScheme, i: usize, j: i64) -> Result<usize> {
    let d = z.degree();
    if d > MAX_KOSZUL_DEGREE || z.len() > m_of_r(d, MAX_KOSZUL_RANK)? {
        return Err(Error::DimensionGuard(format!(
            "Koszul Betti numbers need d <= {MAX_KOSZUL_DEGREE} and at most m({MAX_KOSZUL_RANK}) points, got d = {d}, |Z| = {}",
            z.len()
        )));
    }
    let w = anticanonical_forms(&z.x)?;
    let mut k = Koszul {
        z,
        w,
        pieces: HashMap::new(),
    };
    let q = j - i as i64;
    if q < 0 || i > k.w.dimension() {
        return Ok(0);
    }
    let dim = subsets(k.w.dimension(), i).len() * k.piece(q)?.dimension();
    let outgoing = k.differential_rank(i, q)?;
    let incoming = k.differential_rank(i + 1, q - 1)?;
    Ok(dim - outgoing - incoming)
}
