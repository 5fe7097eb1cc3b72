//! Explicit global-section matrices for the bundle and its dual.

use std::collections::HashMap;

use super::presentation::KernelBundlePresentation;
use crate::blowup::DivisorClass;
use crate::error::Result;
use crate::exactla::Matrix;
use crate::polyspace::{
    affine_exponents, ideal_section_space, multiplication_map, taylor_rows, FormSubspace,
    MapOrientation, MonomialBasis,
};

fn class_space(pres: &KernelBundlePresentation, d: &DivisorClass) -> Result<FormSubspace> {
    let w = pres.x.fat_points(d)?;
    ideal_section_space(pres.x.spec(), &w, d.a)
}

/// `H^0(O_X(tH - 2e_0))^a -> H^0(O_X(tH - e_0))^b`, the transpose of `A`
/// on sections.
pub fn kernel_side_matrix(pres: &KernelBundlePresentation, t: i64) -> Result<Matrix> {
    let e0 = DivisorClass::e0(pres.x.s());
    let src = class_space(pres, &pres.x.twist(&(-2 * &e0), t))?;
    let dst = class_space(pres, &pres.x.twist(&(-&e0), t))?;
    multiplication_map(&src, &dst, &pres.forms, MapOrientation::Transposed)
}

/// `H^0(O_X(e_0 + sH))^b -> H^0(O_X(2e_0 + sH))^a`, i.e. `A` on sections;
/// its kernel is `H^0(E^*(sH))`.
pub fn dual_side_matrix(pres: &KernelBundlePresentation, s: i64) -> Result<Matrix> {
    let e0 = DivisorClass::e0(pres.x.s());
    let src = class_space(pres, &pres.x.twist(&e0, s))?;
    let dst = class_space(pres, &pres.x.twist(&(2 * &e0), s))?;
    multiplication_map(&src, &dst, &pres.forms, MapOrientation::Forward)
}

/// `h^0(E^*(sH))` as the nullity of [`dual_side_matrix`].
pub fn dual_sections(pres: &KernelBundlePresentation, s: i64) -> Result<usize> {
    Ok(dual_side_matrix(pres, s)?.nullity())
}

/// `h^0(E(tH))` computed on `P^n`, independently of any line-bundle table.
///
/// `E` is the pullback of `G = coker(A^T: O(-2)^a -> O(-1)^b)`, so a section
/// of `E(tH)` is a section of `G(k)`, `k = t(n+1)`, lying in `I_p^m G(k)` at
/// every blown-up point, `m = t(n-1)`. Such sections are the `sigma` in
/// `S_{k-1}^b` whose `(m-1)`-jet at each point is a jet of `A^T tau` for some
/// local `tau`, taken modulo the global image of `A^T` from `S_{k-2}^a`.
pub fn twisted_sections(pres: &KernelBundlePresentation, t: i64) -> Result<usize> {
    let x = &pres.x;
    let n = x.n();
    let k = t * (n as i64 + 1);
    let m = t * (n as i64 - 1);
    if k - 1 < 0 {
        return Ok(0);
    }
    x.spec().check_degree(k)?;
    let field = x.spec().field;
    let b = pres.plan.b;
    let sig = MonomialBasis::new(n, k - 1);
    let cands = if m <= 0 || x.s() == 0 {
        b * sig.len()
    } else {
        jet_compatible_dimension(pres, &sig, m as u32)?
    };
    let image = multiplication_map(
        &FormSubspace::full(field, n, k - 2),
        &FormSubspace::full(field, n, k - 1),
        &pres.forms,
        MapOrientation::Transposed,
    )?
    .rank();
    debug_assert!(image <= cands);
    Ok(cands - image)
}

/// Dimension of `{sigma in S_{k-1}^b : jet_{m-1}(sigma) in A^T (O/m^m)^a at every point}`.
fn jet_compatible_dimension(
    pres: &KernelBundlePresentation,
    sig: &MonomialBasis,
    m: u32,
) -> Result<usize> {
    let x = &pres.x;
    let field = x.spec().field;
    let n = x.n();
    let (a, b) = (pres.plan.a, pres.plan.b);
    let alphas = affine_exponents(n, m);
    let index: HashMap<&Vec<u32>, usize> = alphas.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let tl = alphas.len();
    let s = x.s();
    let sigma_cols = b * sig.len();
    let tau_cols = s * a * tl;
    let mut sys = Matrix::zeros(field, s * b * tl, sigma_cols + tau_cols);
    for (pi, p) in x.points().iter().enumerate() {
        let jets = taylor_rows(field, sig, p, m);
        let locals = p.local_vars();
        for j in 0..b {
            let row0 = (pi * b + j) * tl;
            for r in 0..tl {
                for c in 0..sig.len() {
                    let v = jets.get(r, c);
                    if v != 0 {
                        sys.set(row0 + r, j * sig.len() + c, v);
                    }
                }
            }
            for i in 0..a {
                // local expansion of A[i][j]: value at the point plus linear part
                let form = pres.forms.entry(i, j);
                let value = form
                    .iter()
                    .zip(p.coords())
                    .fold(0, |acc, (&f, &c)| field.add(acc, field.mul(f, c)));
                let col0 = sigma_cols + (pi * a + i) * tl;
                for (r, alpha) in alphas.iter().enumerate() {
                    // coefficient of u^alpha in (value + sum_l f_l u_l) * tau
                    sys.add_to(row0 + r, col0 + r, field.neg(value));
                    for (li, &l) in locals.iter().enumerate() {
                        if alpha[li] == 0 || form[l] == 0 {
                            continue;
                        }
                        let mut beta = alpha.clone();
                        beta[li] -= 1;
                        sys.add_to(row0 + r, col0 + index[&beta], field.neg(form[l]));
                    }
                }
            }
        }
    }
    let total_null = sys.nullity();
    let tau_only = sys.select_cols(&(sigma_cols..sigma_cols + tau_cols).collect::<Vec<_>>());
    Ok(total_null - tau_only.nullity())
}
