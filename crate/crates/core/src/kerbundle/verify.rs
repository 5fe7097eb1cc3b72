use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chern::{chern_and_slope, riemann_roch_chi, ChernData};
use super::cohomology::{bundle_cohomology, BundleCohomology};
use super::presentation::KernelBundlePresentation;
use super::sections::dual_side_matrix;
use crate::blowup::{cohomology_divisor, DivisorClass};
use crate::error::{Error, Result};

/// One `h^i(I_W(t(n+1) - 2i)) = 0` check of the regularity step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityVanishing {
    pub t: i64,
    pub i: usize,
    pub class: String,
    pub value: Option<usize>,
    pub ok: bool,
}

/// Surjectivity of `H^0(O(e_0+tH))^b -> H^0(O(2e_0+tH))^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSurjectivity {
    pub t: i64,
    pub rank: usize,
    pub target: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub applicable: bool,
    pub note: String,
    pub vanishings: Vec<RegularityVanishing>,
    pub surjectivity: Vec<TwistSurjectivity>,
    pub passed: bool,
}

/// The step that carries ACM-ness past a finite window when `s <= 1`:
/// `I_W(t(n+1))` is 0-regular for `O(2)`, and `f_t` stays surjective on
/// global sections for `t = 1, 2`.
pub fn regularity_step(
    pres: &KernelBundlePresentation,
    twists: &[i64],
) -> Result<RegularityReport> {
    let x = &pres.x;
    let n = x.n();
    if x.s() > 1 {
        return Ok(RegularityReport {
            applicable: false,
            note: format!("needs s <= 1 points, X has {}", x.s()),
            vanishings: Vec::new(),
            surjectivity: Vec::new(),
            passed: true,
        });
    }
    let mut vanishings = Vec::new();
    for &t in twists.iter().filter(|&&t| t >= 1) {
        for i in 1..=n {
            let d = DivisorClass::new(
                t * (n as i64 + 1) - 2 * i as i64,
                vec![t * (n as i64 - 1); x.s()],
            );
            let value = cohomology_divisor(x, &d)?.get(i).exact();
            vanishings.push(RegularityVanishing {
                t,
                i,
                class: d.to_string(),
                value,
                ok: value == Some(0),
            });
        }
    }
    let mut surjectivity = Vec::new();
    for t in [1, 2] {
        let m = dual_side_matrix(pres, t)?;
        let rank = m.rank();
        surjectivity.push(TwistSurjectivity {
            t,
            rank,
            target: m.rows(),
            ok: rank == m.rows(),
        });
    }
    let passed = vanishings.iter().all(|v| v.ok) && surjectivity.iter().all(|s| s.ok);
    Ok(RegularityReport {
        applicable: true,
        note: "I_W(t(n+1)) is 0-regular with respect to O(2); f_t surjective on sections".into(),
        vanishings,
        surjectivity,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AcmReport {
    /// the claim covers a finite window plus the regularity step
    pub label: String,
    pub window: (i64, i64),
    pub certified: bool,
    pub cohomology: BTreeMap<i64, BundleCohomology>,
    pub intermediate_vanishing: bool,
    pub indeterminate: Vec<String>,
    pub euler_ok: bool,
    pub regularity: Option<RegularityReport>,
    pub passed: bool,
    pub failure: Option<String>,
}

/// All cohomology tables over a window, computed in parallel.
pub fn window_cohomology(
    pres: &KernelBundlePresentation,
    window: (i64, i64),
) -> Result<BTreeMap<i64, BundleCohomology>> {
    let twists: Vec<i64> = (window.0..=window.1).collect();
    let tables: Vec<BundleCohomology> = twists
        .par_iter()
        .map(|&t| bundle_cohomology(pres, t))
        .collect::<Result<_>>()?;
    Ok(tables.into_iter().map(|c| (c.t, c)).collect())
}

/// `h^i(E(tH)) = 0` for `0 < i < n` and every `t` in the window, each exact.
pub fn verify_acm(pres: &KernelBundlePresentation, window: (i64, i64)) -> Result<AcmReport> {
    if window.0 > window.1 {
        return Err(Error::OutOfRange(format!(
            "empty window {}..{}",
            window.0, window.1
        )));
    }
    let label = "window + regularity".to_string();
    if !pres.is_certified() {
        return Ok(AcmReport {
            label,
            window,
            certified: false,
            cohomology: BTreeMap::new(),
            intermediate_vanishing: false,
            indeterminate: Vec::new(),
            euler_ok: false,
            regularity: None,
            passed: false,
            failure: Some("presentation failed surjectivity certification".into()),
        });
    }
    let n = pres.x.n();
    let cohomology = window_cohomology(pres, window)?;
    let mut indeterminate = Vec::new();
    let mut intermediate_vanishing = true;
    let mut euler_ok = true;
    let degree = pres.x.degree();
    let r = pres.plan.rank() as i64;
    for (t, c) in &cohomology {
        for i in 1..n {
            match c.table.get(i).exact() {
                Some(0) => {}
                Some(_) => intermediate_vanishing = false,
                None => {
                    intermediate_vanishing = false;
                    indeterminate.push(format!("h^{i}(E({t}H)) = {}", c.table.get(i)));
                }
            }
        }
        match c.table.euler() {
            Some(chi) if chi == c.euler => {}
            _ => euler_ok = false,
        }
        if let Some(d) = degree {
            if c.euler != d * r * (t * t + t) / 2 {
                euler_ok = false;
            }
        }
    }
    let twists: Vec<i64> = cohomology.keys().copied().collect();
    let regularity = regularity_step(pres, &twists)?;
    let passed = intermediate_vanishing && euler_ok && regularity.passed;
    let failure = (!passed).then(|| {
        if !indeterminate.is_empty() {
            format!("indeterminate entries: {}", indeterminate.join("; "))
        } else if !intermediate_vanishing {
            "nonzero intermediate cohomology".into()
        } else if !euler_ok {
            "Euler characteristic mismatch".into()
        } else {
            "regularity step failed".into()
        }
    });
    Ok(AcmReport {
        label,
        window,
        certified: true,
        cohomology,
        intermediate_vanishing,
        indeterminate,
        euler_ok,
        regularity: Some(regularity),
        passed,
        failure,
    })
}

/// One named check with its observed and expected values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub observed: Option<i64>,
    pub expected: i64,
    pub ok: bool,
}

impl Check {
    fn new(id: &str, claim: &str, observed: Option<usize>, expected: i64) -> Self {
        Self::signed(id, claim, observed.map(|v| v as i64), expected)
    }

    fn signed(id: &str, claim: &str, observed: Option<i64>, expected: i64) -> Self {
        Self {
            id: id.into(),
            claim: claim.into(),
            observed,
            expected,
            ok: observed == Some(expected),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UlrichReport {
    pub degree: i64,
    pub rank: usize,
    pub checks: Vec<Check>,
    pub acm: AcmReport,
    pub chern: ChernData,
    pub c2_expected: i64,
    pub riemann_roch_ok: bool,
    pub stability: String,
    pub passed: bool,
}

/// `E(H)` is an initialized Ulrich bundle on the del Pezzo surface `X`.
pub fn verify_ulrich(pres: &KernelBundlePresentation, window: (i64, i64)) -> Result<UlrichReport> {
    let x = &pres.x;
    if x.n() != 2 {
        return Err(Error::RequiresSurface(x.n()));
    }
    let d = x.degree().unwrap();
    let r = pres.plan.rank();
    // the Ulrich checks need twists -1..=2 whatever the window
    let wide = (window.0.min(-1), window.1.max(2));
    let acm_wide = verify_acm(pres, wide)?;
    let mut acm = acm_wide.clone();
    acm.window = window;
    acm.cohomology
        .retain(|t, _| (window.0..=window.1).contains(t));
    if acm_wide.certified {
        let inside = verify_window_flags(&acm.cohomology, 2);
        acm.intermediate_vanishing = inside.0;
        acm.indeterminate = inside.1;
        acm.passed = acm.intermediate_vanishing
            && acm.euler_ok
            && acm.regularity.as_ref().is_none_or(|g| g.passed);
    }
    let h = |t: i64, i: usize| {
        acm_wide
            .cohomology
            .get(&t)
            .and_then(|c| c.table.get(i).exact())
    };
    let ri = r as i64;
    let mut checks = vec![
        Check::new("initialized", "h^0(E) = 0", h(0, 0), 0),
        Check::new("sections", "h^0(E(H)) = d r", h(1, 0), d * ri),
        Check::new("h1_initialized", "h^1(E(H)) = 0", h(1, 1), 0),
        // linear resolution of F = E(H): H^i(F(-i)) = 0 for i > 0, H^i(F(-i-1)) = 0 for i < 2
        Check::new(
            "linear_resolution.h1",
            "h^1(F(-1)) = h^1(E) = 0",
            h(0, 1),
            0,
        ),
        Check::new(
            "linear_resolution.h2",
            "h^2(F(-2)) = h^2(E(-H)) = 0",
            h(-1, 2),
            0,
        ),
        Check::new(
            "linear_resolution.h0",
            "h^0(F(-1)) = h^0(E) = 0",
            h(0, 0),
            0,
        ),
        Check::new(
            "linear_resolution.h1_below",
            "h^1(F(-2)) = h^1(E(-H)) = 0",
            h(-1, 1),
            0,
        ),
    ];
    if x.s() == 8 {
        checks.push(Check::new(
            "eight_points.second_twist",
            "h^0(E(2H)) = 3r",
            h(2, 0),
            3 * ri,
        ));
    }
    let chern = chern_and_slope(x, &pres.plan, 1)?;
    let c2_expected = (d * ri * ri + (2 - d) * ri) / 2;
    checks.push(Check::signed(
        "chern.c2",
        "c_2(E(H)) = (d r^2 + (2 - d) r) / 2",
        chern.c2,
        c2_expected,
    ));
    let mut riemann_roch_ok = true;
    for (t, c) in &acm_wide.cohomology {
        let data = chern_and_slope(x, &pres.plan, *t)?;
        if riemann_roch_chi(x, &data)? != c.euler {
            riemann_roch_ok = false;
        }
    }
    let passed = acm.passed && checks.iter().all(|c| c.ok) && riemann_roch_ok;
    Ok(UlrichReport {
        degree: d,
        rank: r,
        checks,
        acm,
        chern,
        c2_expected,
        riemann_roch_ok,
        stability: "not machine-checked (out of scope); slope reported only".into(),
        passed,
    })
}

fn verify_window_flags(
    cohomology: &BTreeMap<i64, BundleCohomology>,
    n: usize,
) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut flags = Vec::new();
    for (t, c) in cohomology {
        for i in 1..n {
            match c.table.get(i).exact() {
                Some(0) => {}
                Some(_) => ok = false,
                None => {
                    ok = false;
                    flags.push(format!("h^{i}(E({t}H)) = {}", c.table.get(i)));
                }
            }
        }
    }
    (ok, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{sample_general_points, BlowupVariety};
    use crate::exactla::FieldSpec;
    use crate::kerbundle::{construct, RankPlan, DEFAULT_RETRY_BUDGET, DEFAULT_TRIALS};
    use crate::polyspace::LinearFormMatrix;
    use crate::seeds::{rng_for, POINTS_STREAM};

    fn presentation(n: usize, s: usize, r: usize, c: usize, seed: u64) -> KernelBundlePresentation {
        let spec = FieldSpec::default();
        let mut rng = rng_for(seed, POINTS_STREAM);
        let x = BlowupVariety::new(
            spec,
            n,
            sample_general_points(&spec, n, s, &mut rng).unwrap(),
        )
        .unwrap();
        let plan = RankPlan::new(n, r, c).unwrap();
        construct(&x, plan, seed, DEFAULT_RETRY_BUDGET, DEFAULT_TRIALS)
            .unwrap()
            .0
    }

    #[test]
    fn cubic_surface_rank_two_is_ulrich() {
        let p = presentation(2, 6, 2, 0, 7);
        let rep = verify_ulrich(&p, (-4, 4)).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.acm.passed);
        let h0: Vec<usize> = (-4..=4)
            .map(|t| rep.acm.cohomology[&t].table.get(0).exact().unwrap())
            .collect();
        let h2: Vec<usize> = (-4..=4)
            .map(|t| rep.acm.cohomology[&t].table.get(2).exact().unwrap())
            .collect();
        assert_eq!(h0, vec![0, 0, 0, 0, 0, 6, 18, 36, 60]);
        assert_eq!(h2, vec![36, 18, 6, 0, 0, 0, 0, 0, 0]);
        assert_eq!(rep.chern.c2, Some(5));
    }

    #[test]
    fn degree_one_surface_has_sections_in_second_twist() {
        let p = presentation(2, 8, 2, 0, 7);
        let rep = verify_ulrich(&p, (-2, 2)).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep
            .checks
            .iter()
            .any(|c| c.id == "eight_points.second_twist" && c.observed == Some(6)));
        assert_eq!(rep.acm.cohomology[&1].table.get(0).exact(), Some(2));
    }

    #[test]
    fn blowup_of_p3_in_one_point() {
        let p = presentation(3, 1, 1, 0, 7);
        let rep = verify_acm(&p, (-2, 2)).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.cohomology[&1].sections, 68);
        assert_eq!(rep.cohomology[&1].table.to_string(), "(68, 0, 0, 0)");
        assert_eq!(rep.cohomology[&-2].table.to_string(), "(0, 0, 0, 100)");
        let reg = rep.regularity.unwrap();
        assert!(reg.applicable && reg.passed);
        assert_eq!(reg.surjectivity.len(), 2);
    }

    #[test]
    fn regularity_step_skipped_with_many_points() {
        let p = presentation(2, 3, 2, 0, 3);
        let reg = regularity_step(&p, &[1, 2]).unwrap();
        assert!(!reg.applicable);
    }

    #[test]
    fn uncertified_presentation_does_not_pass() {
        let p = presentation(2, 4, 2, 0, 5);
        let zero = LinearFormMatrix::zero(2, p.plan.a, p.plan.b);
        let bad = KernelBundlePresentation::new(p.x.clone(), p.plan, zero, 0, 20).unwrap();
        let rep = verify_acm(&bad, (-1, 1)).unwrap();
        assert!(!rep.certified && !rep.passed);
        assert!(bundle_cohomology(&bad, 0).is_err());
    }

    #[test]
    fn ulrich_requires_surface() {
        let p = presentation(3, 0, 1, 0, 1);
        assert!(matches!(
            verify_ulrich(&p, (-1, 1)),
            Err(Error::RequiresSurface(3))
        ));
    }
}
