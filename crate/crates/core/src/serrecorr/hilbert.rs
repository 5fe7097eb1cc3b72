use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::blowup::{anticanonical_class, binomial_poly, chi_divisor, chi_surface, BlowupVariety};
use crate::error::{Error, Result};

/// Number of points `(d r^2 + (2 - d) r) / 2` on the other side of the
/// correspondence; equals `c_2` of the initialized rank-`r` bundle.
pub fn m_of_r(d: i64, r: i64) -> Result<usize> {
    if !(1..=9).contains(&d) || r < 2 {
        return Err(Error::OutOfRange(format!(
            "m(r) needs 1 <= d <= 9 and r >= 2, got d = {d}, r = {r}"
        )));
    }
    let twice = d * r * r + (2 - d) * r;
    // d r^2 - d r = d r (r - 1) is even
    assert_eq!(twice % 2, 0, "odd numerator for d = {d}, r = {r}");
    Ok((twice / 2) as usize)
}

/// Hilbert polynomial `P(t) = d t (t + 1) / 2 + 1` of a degree-`d` del Pezzo
/// surface in its anticanonical embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub d: i64,
    /// constant, linear and quadratic coefficients
    pub coefficients: [Ratio<i64>; 3],
}

impl HilbertData {
    pub fn new(d: i64) -> Self {
        let half = Ratio::new(d, 2);
        Self {
            d,
            coefficients: [Ratio::from_integer(1), half, half],
        }
    }

    pub fn value(&self, t: i64) -> i64 {
        let [c0, c1, c2] = self.coefficients;
        let v = c0 + c1 * t + c2 * t * t;
        assert!(v.is_integer());
        v.to_integer()
    }

    /// Backward difference `Delta^k P(t) = sum_j (-1)^j C(k, j) P(t - j)`.
    pub fn difference(&self, k: usize, t: i64) -> i64 {
        (0..=k as i64)
            .map(|j| {
                (if j % 2 == 0 { 1 } else { -1 })
                    * binomial_poly(k as i64, j as usize)
                    * self.value(t - j)
            })
            .sum()
    }

    /// `P(t) = chi(O_X(tH))` for each `t`; negative twists go through
    /// Riemann-Roch on the surface.
    pub fn agrees_with(
        &self,
        x: &BlowupVariety,
        twists: impl IntoIterator<Item = i64>,
    ) -> Result<bool> {
        let h = anticanonical_class(x);
        for t in twists {
            let d = t * &h;
            let chi = if t >= 0 {
                chi_divisor(x, &d)?
            } else {
                chi_surface(x, &d)?
            };
            if chi != self.value(t) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The three identities the Betti formula is simplified with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaIdentities {
    /// `Delta P(t) = d t`
    pub first_difference: bool,
    /// `Delta^2 P(t) = d`
    pub second_difference: bool,
    /// `m(r) - P(r - 1) = r - 1`
    pub excess: bool,
}

impl GammaIdentities {
    pub fn all(&self) -> bool {
        self.first_difference && self.second_difference && self.excess
    }
}

pub fn gamma_identities(d: i64, r: i64) -> Result<GammaIdentities> {
    let p = HilbertData::new(d);
    let ts = -3..=r + 3;
    Ok(GammaIdentities {
        first_difference: ts.clone().all(|t| p.difference(1, t) == d * t),
        second_difference: ts.clone().all(|t| p.difference(2, t) == d),
        excess: m_of_r(d, r)? as i64 - p.value(r - 1) == r - 1,
    })
}

/// Predicted rank of the `i`-th syzygy module, in degree `r + i`, of the
/// ideal of `m(r)` general points:
/// `sum_{l=0,1} (-1)^l C(d-l-1, i-l) Delta^{l+1}P(r+l) - C(d, i)(m(r) - P(r-1))`.
///
/// Taken for `1 <= i <= d - 1`; the result is checked against the
/// simplified form `C(d-1,i) d r - C(d-2,i-1) d - C(d,i)(r-1)`.
pub fn gamma(d: i64, i: i64, r: i64) -> Result<i64> {
    if !(1..=d - 1).contains(&i) {
        return Err(Error::OutOfRange(format!(
            "gamma needs 1 <= i <= d - 1 = {}, got i = {i}",
            d - 1
        )));
    }
    let p = HilbertData::new(d);
    let m = m_of_r(d, r)? as i64;
    let c = |top: i64, k: i64| {
        if k < 0 {
            0
        } else {
            binomial_poly(top, k as usize)
        }
    };
    let value = (0..=1)
        .map(|l| {
            (if l == 0 { 1 } else { -1 })
                * c(d - l - 1, i - l)
                * p.difference(l as usize + 1, r + l)
        })
        .sum::<i64>()
        - c(d, i) * (m - p.value(r - 1));
    let ids = gamma_identities(d, r)?;
    if !ids.all() {
        return Err(Error::Inconsistent(format!(
            "Hilbert identities fail for d = {d}, r = {r}: {ids:?}"
        )));
    }
    let simplified = c(d - 1, i) * d * r - c(d - 2, i - 1) * d - c(d, i) * (r - 1);
    if value != simplified {
        return Err(Error::Inconsistent(format!(
            "gamma({d}, {i}, {r}): {value} vs simplified {simplified}"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::sample_general_points;
    use crate::exactla::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn point_counts() {
        assert_eq!(m_of_r(3, 2).unwrap(), 5);
        assert_eq!(m_of_r(9, 2).unwrap(), 11);
        assert_eq!(m_of_r(4, 2).unwrap(), 6);
        assert!(m_of_r(10, 2).is_err());
        assert!(m_of_r(3, 1).is_err());
    }

    #[test]
    fn excess_over_hilbert_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let d = rng.random_range(1..=9);
            let r = rng.random_range(2..=12);
            assert_eq!(
                m_of_r(d, r).unwrap() as i64 - HilbertData::new(d).value(r - 1),
                r - 1
            );
            assert!(gamma_identities(d, r).unwrap().all());
        }
    }

    #[test]
    fn betti_predictions() {
        assert_eq!(gamma(6, 2, 2).unwrap(), 81);
        assert_eq!(gamma(3, 2, 2).unwrap(), 0);
        assert_eq!(gamma(3, 1, 2).unwrap(), 6);
        assert_eq!(gamma(4, 1, 2).unwrap(), 16);
        assert_eq!(gamma(4, 2, 2).unwrap(), 10);
        assert_eq!(gamma(4, 3, 2).unwrap(), 0);
        assert!(gamma(3, 3, 2).is_err());
        assert!(gamma(3, 0, 2).is_err());
    }

    #[test]
    fn hilbert_polynomial_is_euler_characteristic() {
        let spec = FieldSpec::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in 0..=6 {
            let x = BlowupVariety::new(
                spec,
                2,
                sample_general_points(&spec, 2, s, &mut rng).unwrap(),
            )
            .unwrap();
            let p = HilbertData::new(9 - s as i64);
            assert!(p.agrees_with(&x, -4..=4).unwrap());
            assert_eq!(p.value(2), 3 * p.d + 1);
        }
    }
}
