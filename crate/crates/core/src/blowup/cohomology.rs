use super::divisor::DivisorClass;
use super::table::{CohomologyTable, Entry, Reason};
use super::variety::{canonical_class, intersection, BlowupVariety};
use crate::error::{Error, Result};
use crate::polyspace::{basis_size, condition_matrix, FatPointScheme};

/// `C(x, k)` as a polynomial in `x`, so it is meaningful for negative `x`:
/// `C(a + n, n)` is then `chi(O_{P^n}(a))` for every integer `a`.
pub fn binomial_poly(x: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= x as i128 - i;
        den *= i + 1;
    }
    (num / den) as i64
}

/// `chi(O_X(D)) = C(a+n, n) - sum C(b_i+n-1, n)`, only for `b_i >= 0`.
pub fn chi_divisor(x: &BlowupVariety, d: &DivisorClass) -> Result<i64> {
    x.check_class(d)?;
    if !d.all_b_nonnegative() {
        return Err(Error::OutsideChiWindow);
    }
    let n = x.n();
    Ok(binomial_poly(d.a + n as i64, n)
        - d.b
            .iter()
            .map(|&b| binomial_poly(b + n as i64 - 1, n))
            .sum::<i64>())
}

/// Riemann-Roch on a surface, `1 + D.(D - K)/2`, valid for every class.
pub fn chi_surface(x: &BlowupVariety, d: &DivisorClass) -> Result<i64> {
    let k = canonical_class(x);
    Ok(1 + intersection(x, d, &(d - &k))? / 2)
}

/// `h^0(O_X(D))` through the fat-point model; every `b_i` must be `>= 0`.
pub fn h0_divisor(x: &BlowupVariety, d: &DivisorClass) -> Result<usize> {
    x.check_class(d)?;
    if let Some((index, &value)) = d.b.iter().enumerate().find(|(_, &b)| b < 0) {
        return Err(Error::NegativeMultiplicity { index, value });
    }
    h0_pushforward(x, d)
}

/// `h^0(O_X(D))` for any class: negative multiplicities impose nothing since
/// `pi_* O_X(c E) = O` for `c >= 0`.
pub fn h0_pushforward(x: &BlowupVariety, d: &DivisorClass) -> Result<usize> {
    if d.a < 0 {
        x.check_class(d)?;
        return Ok(0);
    }
    let w = x.fat_points(d)?;
    let (dim, rank, _) = evaluation_ranks(x, &w, d.a)?;
    Ok(dim - rank)
}

/// `(dim S_a, rank of the conditions, length of W)`.
fn evaluation_ranks(
    x: &BlowupVariety,
    w: &FatPointScheme,
    a: i64,
) -> Result<(usize, usize, usize)> {
    let length = w.length();
    if a < 0 {
        return Ok((0, 0, length));
    }
    let dim = basis_size(x.n(), a);
    if w.points().is_empty() {
        return Ok((dim, 0, 0));
    }
    let rank = condition_matrix(x.spec(), w, a)?.rank();
    Ok((dim, rank, length))
}

/// Table for a class with every `b_i >= 0`, read off
/// `0 -> I_W(a) -> O(a) -> O_W -> 0` on `P^n`.
fn direct_table(x: &BlowupVariety, d: &DivisorClass) -> Result<CohomologyTable> {
    let n = x.n();
    let w = x.fat_points(d)?;
    let (dim, rank, length) = evaluation_ranks(x, &w, d.a)?;
    let mut values = vec![0usize; n + 1];
    values[0] = dim - rank;
    // cokernel of evaluation on global sections; H^1(O(a)) = 0 for n >= 2
    values[1] = length - rank;
    // H^n(I_W(a)) = H^n(O(a)), dual to forms of degree -a-n-1
    values[n] += basis_size(n, -d.a - n as i64 - 1);
    if d.a < 0 && values[0] != 0 {
        return Err(Error::Inconsistent(format!(
            "sections of the non-effective class {d}"
        )));
    }
    if d.a >= -(n as i64) && values[n] != 0 {
        return Err(Error::Inconsistent(format!(
            "top cohomology of {d} with a >= -n"
        )));
    }
    let table = CohomologyTable::exact(&values);
    let chi = chi_divisor(x, d)?;
    if table.euler() != Some(chi) {
        return Err(Error::Inconsistent(format!(
            "alternating sum {:?} of {table} differs from chi = {chi} for {d}",
            table.euler()
        )));
    }
    Ok(table)
}

/// Which computation a class falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorShape {
    /// all `b_i >= 0`
    Direct,
    /// `K_X - D` has all `b_i >= 0`
    Dual,
    Other,
}

pub fn divisor_shape(x: &BlowupVariety, d: &DivisorClass) -> DivisorShape {
    if d.all_b_nonnegative() {
        DivisorShape::Direct
    } else if (&canonical_class(x) - d).all_b_nonnegative() {
        DivisorShape::Dual
    } else {
        DivisorShape::Other
    }
}

/// `h^0 .. h^n` of `O_X(D)`.
///
/// Direct shape: computed from fat-point ranks. Dual shape: the direct table
/// of `K_X - D`, reversed. Otherwise `h^0` and `h^n` are still exact via
/// pushforward; on a surface `h^1` follows from Riemann-Roch, and in higher
/// dimension the middle entries are flagged.
pub fn cohomology_divisor(x: &BlowupVariety, d: &DivisorClass) -> Result<CohomologyTable> {
    x.check_class(d)?;
    let k = canonical_class(x);
    match divisor_shape(x, d) {
        DivisorShape::Direct => direct_table(x, d),
        DivisorShape::Dual => Ok(direct_table(x, &(&k - d))?.reversed()),
        DivisorShape::Other => {
            let n = x.n();
            let h0 = h0_pushforward(x, d)?;
            let hn = h0_pushforward(x, &(&k - d))?;
            let mut values = vec![
                Entry::Interval {
                    lo: 0,
                    hi: None,
                    reason: Reason::UnsupportedShape
                };
                n + 1
            ];
            values[0] = Entry::Exact(h0);
            values[n] = Entry::Exact(hn);
            if n == 2 {
                let h1 = h0 as i64 + hn as i64 - chi_surface(x, d)?;
                if h1 < 0 {
                    return Err(Error::Inconsistent(format!("negative h^1 = {h1} for {d}")));
                }
                values[1] = Entry::Exact(h1 as usize);
            }
            Ok(CohomologyTable { values })
        }
    }
}
