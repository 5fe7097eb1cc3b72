use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::plan::RankPlan;
use crate::blowup::{
    anticanonical_class, canonical_class, intersection, BlowupVariety, DivisorClass,
};
use crate::error::{Error, Result};

/// Chern data of `E(lH)`; `c2` and the slope only on surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    pub rank: usize,
    pub twist: i64,
    pub c1: DivisorClass,
    pub c2: Option<i64>,
    /// `c_1 . H`
    pub slope_numerator: Option<i64>,
    pub slope: Option<Ratio<i64>>,
}

/// Reads `c(E) = (1 - e_0)^b (1 - 2e_0)^{-a}` off the presentation and twists
/// by `lH`.
pub fn chern_and_slope(x: &BlowupVariety, plan: &RankPlan, l: i64) -> Result<ChernData> {
    if plan.n != x.n() {
        return Err(Error::ShapeMismatch(format!(
            "plan on P^{} for a blow-up of P^{}",
            plan.n,
            x.n()
        )));
    }
    let (a, b) = (plan.a as i64, plan.b as i64);
    let r = plan.rank() as i64;
    let h = anticanonical_class(x);
    let c1_base = (2 * a - b) * &DivisorClass::e0(x.s());
    let c1 = &c1_base + &(r * l * &h);
    if x.n() != 2 {
        return Ok(ChernData {
            rank: plan.rank(),
            twist: l,
            c1,
            c2: None,
            slope_numerator: None,
            slope: None,
        });
    }
    // e_0^2 = 1 on the surface
    let c2_base = b * (b - 1) / 2 - 2 * a * b + 2 * a * (a + 1);
    let c1h = intersection(x, &c1_base, &h)?;
    let hh = intersection(x, &h, &h)?;
    let c2 = c2_base + (r - 1) * l * c1h + r * (r - 1) / 2 * l * l * hh;
    let num = intersection(x, &c1, &h)?;
    Ok(ChernData {
        rank: plan.rank(),
        twist: l,
        c1,
        c2: Some(c2),
        slope_numerator: Some(num),
        slope: Some(Ratio::new(num, r)),
    })
}

/// `chi = r + c_1(c_1 - K)/2 - c_2` on a surface.
pub fn riemann_roch_chi(x: &BlowupVariety, data: &ChernData) -> Result<i64> {
    let c2 = data.c2.ok_or(Error::RequiresSurface(x.n()))?;
    let k = canonical_class(x);
    let c1 = &data.c1;
    Ok(data.rank as i64 + intersection(x, c1, &(c1 - &k))? / 2 - c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::sample_general_points;
    use crate::exactla::FieldSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn surface(s: usize) -> BlowupVariety {
        let spec = FieldSpec::default();
        let mut rng = ChaCha8Rng::seed_from_u64(s as u64);
        BlowupVariety::new(
            spec,
            2,
            sample_general_points(&spec, 2, s, &mut rng).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn second_chern_class_of_initialized_twist() {
        let plan = RankPlan::new(2, 2, 0).unwrap();
        assert_eq!(chern_and_slope(&surface(6), &plan, 1).unwrap().c2, Some(5));
        assert_eq!(chern_and_slope(&surface(0), &plan, 1).unwrap().c2, Some(11));
        for s in 0..=8 {
            let d = 9 - s as i64;
            for r in 2..5 {
                let plan = RankPlan::new(2, r as usize, 0).unwrap();
                let data = chern_and_slope(&surface(s), &plan, 1).unwrap();
                assert_eq!(data.c2, Some((d * r * r + (2 - d) * r) / 2));
                assert_eq!(data.slope, Some(Ratio::from_integer(d)));
            }
        }
    }

    #[test]
    fn untwisted_bundle_has_trivial_first_class() {
        let plan = RankPlan::new(2, 3, 0).unwrap();
        let data = chern_and_slope(&surface(4), &plan, 0).unwrap();
        assert_eq!(data.c1, DivisorClass::zero(4));
        assert_eq!(data.slope, Some(Ratio::from_integer(0)));
        assert_eq!(data.c2, Some(3));
    }

    #[test]
    fn riemann_roch_matches_closed_euler_characteristic() {
        for s in [0, 3, 8] {
            let x = surface(s);
            let d = 9 - s as i64;
            let plan = RankPlan::new(2, 3, 0).unwrap();
            for t in -4..=4 {
                let data = chern_and_slope(&x, &plan, t).unwrap();
                assert_eq!(
                    riemann_roch_chi(&x, &data).unwrap(),
                    d * 3 * (t * t + t) / 2
                );
            }
        }
    }

    #[test]
    fn higher_dimension_has_no_second_class() {
        let spec = FieldSpec::default();
        let x = BlowupVariety::new(spec, 3, vec![]).unwrap();
        let data = chern_and_slope(&x, &RankPlan::new(3, 1, 0).unwrap(), 1).unwrap();
        assert_eq!(data.c2, None);
        // c_1(E) = (2a - b) e_0 = -e_0, plus 3H = 12 e_0
        assert_eq!(data.c1, DivisorClass::new(11, vec![]));
    }
}
