use serde::{Deserialize, Serialize};

use super::les::{kernel_system, quotient_system, LesSolution};
use super::presentation::KernelBundlePresentation;
use super::sections::{dual_sections, dual_side_matrix, kernel_side_matrix, twisted_sections};
use crate::blowup::{cohomology_divisor, CohomologyTable, DivisorClass, Entry, Reason};
use crate::error::{Error, Result};

/// Cohomology of `E(tH)` with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleCohomology {
    pub t: i64,
    pub table: CohomologyTable,
    /// from `0 -> O(tH-2e_0)^a -> O(tH-e_0)^b -> E(tH) -> 0`
    pub kernel_route: CohomologyTable,
    /// from `0 -> E^*(sH) -> O(e_0+sH)^b -> O(2e_0+sH)^a -> 0`, `s = -t-1`, dualized
    pub dual_route: CohomologyTable,
    /// `h^0(E(tH))` from the jet computation on `P^n`
    pub sections: usize,
    /// `h^0(E^*(sH)) = h^n(E(tH))`
    pub dual_sections: usize,
    /// `b chi(tH - e_0) - a chi(tH - 2e_0)`
    pub euler: i64,
}

fn exact_line_table(
    x: &crate::blowup::BlowupVariety,
    d: &DivisorClass,
) -> Result<Option<Vec<i64>>> {
    Ok(cohomology_divisor(x, d)?
        .exact_values()
        .map(|v| v.into_iter().map(|h| h as i64).collect()))
}

fn to_table(bounds: &[(i64, i64)]) -> CohomologyTable {
    CohomologyTable {
        values: bounds
            .iter()
            .map(|&(lo, hi)| {
                Entry::from_bounds(
                    lo.max(0) as usize,
                    Some(hi as usize),
                    Reason::LesIndeterminate,
                )
            })
            .collect(),
    }
}

fn unknown_table(n: usize) -> CohomologyTable {
    CohomologyTable {
        values: vec![
            Entry::Interval {
                lo: 0,
                hi: None,
                reason: Reason::LesIndeterminate
            };
            n + 1
        ],
    }
}

fn scale(v: &[i64], k: usize) -> Vec<i64> {
    v.iter().map(|x| x * k as i64).collect()
}

/// `h^i(E(tH))` for `i = 0..n`.
///
/// Two long exact sequences are solved separately, each anchored by the two
/// section counts `h^0(E(tH))` and `h^n(E(tH)) = h^0(E^*(sH))`; the kernel
/// route also fixes the rank on `H^0` from the explicit matrix `N_t`, the
/// dual route from `M_s`. Where both routes are exact they must agree, and
/// entries neither route pins down become `LES-indeterminate` intervals.
pub fn bundle_cohomology(pres: &KernelBundlePresentation, t: i64) -> Result<BundleCohomology> {
    pres.require_certified()?;
    let x = &pres.x;
    let n = x.n();
    let (a, b) = (pres.plan.a, pres.plan.b);
    let e0 = DivisorClass::e0(x.s());
    let s = -t - 1;

    let sections = twisted_sections(pres, t)?;
    let dual_secs = if s >= 0 { dual_sections(pres, s)? } else { 0 };
    let anchors_e = [(0usize, sections as i64), (n, dual_secs as i64)];

    let lb_a = exact_line_table(x, &x.twist(&(-2 * &e0), t))?;
    let lb_b = exact_line_table(x, &x.twist(&(-&e0), t))?;
    let lb_u = exact_line_table(x, &x.twist(&e0, s))?;
    let lb_v = exact_line_table(x, &x.twist(&(2 * &e0), s))?;

    let euler_of = |v: &Option<Vec<i64>>| -> Option<i64> {
        v.as_ref().map(|v| {
            v.iter()
                .enumerate()
                .map(|(i, h)| if i % 2 == 0 { *h } else { -h })
                .sum()
        })
    };
    let euler = match (euler_of(&lb_a), euler_of(&lb_b)) {
        (Some(ca), Some(cb)) => b as i64 * cb - a as i64 * ca,
        _ => {
            return Err(Error::Inconsistent(format!(
                "line-bundle tables for t = {t} are not exact"
            )))
        }
    };

    let kernel = match (&lb_a, &lb_b) {
        (Some(ha), Some(hb)) => {
            let xs = scale(ha, a);
            let ys = scale(hb, b);
            let mut sys = quotient_system(&xs, &ys);
            let rho0 = if xs[0] > 0 {
                kernel_side_matrix(pres, t)?.rank() as i64
            } else {
                0
            };
            if rho0 != xs[0] {
                return Err(Error::Inconsistent(format!(
                    "A^T is not injective on sections at t = {t}: rank {rho0} < {}",
                    xs[0]
                )));
            }
            sys.fix(0, rho0)?;
            Some(sys.solve(&anchors_e)?)
        }
        _ => None,
    };

    let dual = match (&lb_u, &lb_v) {
        (Some(hu), Some(hv)) => {
            let us = scale(hu, b);
            let vs = scale(hv, a);
            let mut sys = kernel_system(&us, &vs);
            let rho0 = if us[0] > 0 && vs[0] > 0 {
                dual_side_matrix(pres, s)?.rank() as i64
            } else {
                0
            };
            sys.fix(0, rho0)?;
            // H^{n+1}(E^*) = 0 forces surjectivity on top cohomology
            sys.fix(n, vs[n])?;
            let anchors_dual: Vec<(usize, i64)> =
                anchors_e.iter().map(|&(i, v)| (n - i, v)).collect();
            let sol = sys.solve(&anchors_dual)?;
            Some(LesSolution {
                h: sol.h.into_iter().rev().collect(),
                rho: sol.rho,
            })
        }
        _ => None,
    };

    let kernel_route = kernel
        .as_ref()
        .map_or_else(|| unknown_table(n), |s| to_table(&s.h));
    let dual_route = dual
        .as_ref()
        .map_or_else(|| unknown_table(n), |s| to_table(&s.h));

    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (k_lo, k_hi) = kernel_route.get(i).bounds();
        let (d_lo, d_hi) = dual_route.get(i).bounds();
        let lo = k_lo.max(d_lo);
        let hi = match (k_hi, d_hi) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        };
        if hi.is_some_and(|h| h < lo) {
            return Err(Error::Inconsistent(format!(
                "routes disagree on h^{i}(E({t}H)): kernel {} vs dual {}",
                kernel_route.get(i),
                dual_route.get(i)
            )));
        }
        values.push(Entry::from_bounds(lo, hi, Reason::LesIndeterminate));
    }
    let table = CohomologyTable { values };
    if let Some(chi) = table.euler() {
        if chi != euler {
            return Err(Error::Inconsistent(format!(
                "alternating sum {chi} of {table} differs from chi = {euler}"
            )));
        }
    }
    Ok(BundleCohomology {
        t,
        table,
        kernel_route,
        dual_route,
        sections,
        dual_sections: dual_secs,
        euler,
    })
}
