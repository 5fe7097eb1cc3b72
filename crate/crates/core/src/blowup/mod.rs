//! The blow-up `X = Bl_Z P^n`: Picard lattice, canonical class, intersection
//! pairing on surfaces, Euler characteristics, and exact line-bundle
//! cohomology through the fat-point model.

mod cohomology;
mod config;
mod divisor;
mod general;
mod table;
mod variety;

pub use cohomology::{
    binomial_poly, chi_divisor, chi_surface, cohomology_divisor, divisor_shape, h0_divisor,
    h0_pushforward, DivisorShape,
};
pub use config::PointConfig;
pub use divisor::DivisorClass;
pub use general::{
    is_fano, is_general_position, random_point, require_fano, sample_general_points,
    GeneralPosition,
};
pub use table::{CohomologyTable, Entry, Reason};
pub use variety::{anticanonical_class, canonical_class, intersection, BlowupVariety, FanoStatus};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::polyspace::ProjPoint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec() -> FieldSpec {
        FieldSpec::default()
    }

    fn surface(s: usize, seed: u64) -> BlowupVariety {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = sample_general_points(&spec(), 2, s, &mut rng).unwrap();
        BlowupVariety::new(spec(), 2, pts).unwrap()
    }

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::new(spec().field, c).unwrap()
    }

    #[test]
    fn canonical_class_examples() {
        assert_eq!(
            canonical_class(&surface(0, 1)).raw_coefficients(),
            (-3, vec![])
        );
        let x3 = BlowupVariety::new(spec(), 3, vec![pt(&[1, 2, 3, 4])]).unwrap();
        assert_eq!(canonical_class(&x3).raw_coefficients(), (-4, vec![2]));
        let x8 = surface(8, 2);
        assert_eq!(canonical_class(&x8).raw_coefficients(), (-3, vec![1; 8]));
        assert_eq!(anticanonical_class(&x8), DivisorClass::new(3, vec![1; 8]));
    }

    #[test]
    fn chi_examples() {
        let x1 = surface(1, 3);
        assert_eq!(chi_divisor(&x1, &DivisorClass::new(3, vec![1])).unwrap(), 9);
        assert_eq!(chi_divisor(&x1, &DivisorClass::zero(1)).unwrap(), 1);
        let x8 = surface(8, 4);
        assert_eq!(
            chi_divisor(&x8, &DivisorClass::new(1, vec![1; 8])).unwrap(),
            -5
        );
        assert!(matches!(
            chi_divisor(&x1, &DivisorClass::new(3, vec![-1])),
            Err(crate::Error::OutsideChiWindow)
        ));
    }

    #[test]
    fn negative_degree_chi_uses_polynomial_binomial() {
        // chi(O_{P^2}(-5)) = h^2 = C(4, 2) = 6
        assert_eq!(binomial_poly(-3, 2), 6);
        let x0 = surface(0, 5);
        assert_eq!(chi_divisor(&x0, &DivisorClass::new(-5, vec![])).unwrap(), 6);
        assert_eq!(
            cohomology_divisor(&x0, &DivisorClass::new(-5, vec![]))
                .unwrap()
                .exact_values(),
            Some(vec![0, 0, 6])
        );
    }

    #[test]
    fn intersection_examples() {
        let x6 = surface(6, 6);
        let h = anticanonical_class(&x6);
        assert_eq!(intersection(&x6, &h, &h).unwrap(), 3);
        let e0 = DivisorClass::e0(6);
        let e1 = DivisorClass::exceptional(6, 0);
        assert_eq!(intersection(&x6, &e0, &e1).unwrap(), 0);
        assert_eq!(intersection(&x6, &e1, &e1).unwrap(), -1);
        let x3 = BlowupVariety::new(spec(), 3, vec![]).unwrap();
        assert!(intersection(&x3, &DivisorClass::e0(0), &DivisorClass::e0(0)).is_err());
    }

    #[test]
    fn h0_examples() {
        let x8 = surface(8, 7);
        assert_eq!(
            h0_divisor(&x8, &DivisorClass::new(-1, vec![0; 8])).unwrap(),
            0
        );
        assert_eq!(h0_divisor(&x8, &anticanonical_class(&x8)).unwrap(), 2);
        let x3 = BlowupVariety::new(spec(), 3, vec![pt(&[1, 5, 2, 9])]).unwrap();
        assert_eq!(h0_divisor(&x3, &DivisorClass::new(2, vec![2])).unwrap(), 6);
        assert!(h0_divisor(&x3, &DivisorClass::new(2, vec![-1])).is_err());
        assert_eq!(
            h0_pushforward(&x3, &DivisorClass::new(2, vec![-1])).unwrap(),
            10
        );
    }

    #[test]
    fn eight_point_tables() {
        let x8 = surface(8, 8);
        let h = anticanonical_class(&x8);
        let e0 = DivisorClass::e0(8);
        let t1 = cohomology_divisor(&x8, &(&h - &(2 * &e0))).unwrap();
        assert_eq!(t1.exact_values(), Some(vec![0, 5, 0]));
        let t2 = cohomology_divisor(&x8, &(&h - &e0)).unwrap();
        assert_eq!(t2.exact_values(), Some(vec![0, 2, 0]));
        assert_eq!(
            cohomology_divisor(&x8, &DivisorClass::zero(8))
                .unwrap()
                .exact_values(),
            Some(vec![1, 0, 0])
        );
    }

    #[test]
    fn dual_shape_is_reversed_direct() {
        let x = BlowupVariety::new(spec(), 3, vec![pt(&[1, 2, 3, 4])]).unwrap();
        let k = canonical_class(&x);
        let d = DivisorClass::new(3, vec![1]);
        let direct = cohomology_divisor(&x, &d).unwrap();
        let dual = cohomology_divisor(&x, &(&k - &d)).unwrap();
        assert_eq!(dual, direct.reversed());
        assert_eq!(divisor_shape(&x, &(&k - &d)), DivisorShape::Dual);
    }

    #[test]
    fn unsupported_shape_in_dimension_three_is_flagged() {
        let x = BlowupVariety::new(spec(), 3, vec![pt(&[1, 2, 3, 4])]).unwrap();
        // b = -1: neither D nor K - D = (-6; -1) has nonnegative multiplicities
        let t = cohomology_divisor(&x, &DivisorClass::new(2, vec![-1])).unwrap();
        assert_eq!(t.get(0), Entry::Exact(10));
        assert_eq!(t.get(1).reason(), Some(Reason::UnsupportedShape));
        assert_eq!(t.get(3), Entry::Exact(0));
    }

    #[test]
    fn surface_other_shape_uses_riemann_roch() {
        let x = surface(2, 9);
        // e_1 itself: h^0 = 1, h^1 = h^2 = 0
        let t = cohomology_divisor(&x, &DivisorClass::exceptional(2, 0)).unwrap();
        assert_eq!(t.exact_values(), Some(vec![1, 0, 0]));
        // 2 e_1: one section, chi = 0
        let t = cohomology_divisor(&x, &DivisorClass::new(0, vec![-2, 0])).unwrap();
        assert_eq!(t.exact_values(), Some(vec![1, 1, 0]));
    }

    #[test]
    fn general_position_examples() {
        let col = vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0])];
        let gp = is_general_position(&spec(), &col).unwrap();
        assert!(!gp.general);
        assert_eq!(gp.witness, Some(vec![0, 1, 2]));
        let four = vec![
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 1, 1]),
        ];
        assert!(is_general_position(&spec(), &four).unwrap().general);
        // six points on x0 x1 = x2^2
        let conic: Vec<ProjPoint> = (1..=6).map(|t| pt(&[1, t * t, t])).collect();
        let gp = is_general_position(&spec(), &conic).unwrap();
        assert!(!gp.general);
        assert_eq!(gp.witness.unwrap().len(), 6);
        let nine: Vec<ProjPoint> = (0..9).map(|t| pt(&[1, t, t * t * t + 7])).collect();
        assert!(is_general_position(&spec(), &nine).is_err());
    }

    #[test]
    fn nodal_cubic_violates_eight_point_condition() {
        // y^2 z = x^2 (x + z), node at (0:0:1); parametrised by x = u^2 - 1, y = u(u^2 - 1)
        let mut pts = vec![pt(&[0, 0, 1])];
        for u in [2i64, 3, 5, 7, 11, 13, 17] {
            pts.push(pt(&[u * u - 1, u * (u * u - 1), 1]));
        }
        let gp = is_general_position(&spec(), &pts).unwrap();
        assert!(!gp.general);
        assert!(gp.violation.unwrap().contains("cubic"));
    }

    #[test]
    fn fano_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let two = sample_general_points(&spec(), 3, 2, &mut rng).unwrap();
        let x = BlowupVariety::new(spec(), 3, two).unwrap();
        assert!(!is_fano(&x).unwrap().fano);
        assert!(matches!(
            require_fano(&x),
            Err(crate::Error::NotFano { .. })
        ));
        let st = is_fano(&surface(8, 11)).unwrap();
        assert!(st.fano && !st.strong);
        let one = sample_general_points(&spec(), 5, 1, &mut rng).unwrap();
        let st = is_fano(&BlowupVariety::new(spec(), 5, one).unwrap()).unwrap();
        assert!(st.fano && st.strong);
    }

    #[test]
    fn config_roundtrip() {
        let x = surface(3, 12);
        let cfg = PointConfig::from_variety(&x);
        let json = serde_json::to_string(&cfg).unwrap();
        let back: PointConfig = serde_json::from_str(&json).unwrap();
        let y = back.variety().unwrap();
        assert_eq!(y.points(), x.points());
    }
}
