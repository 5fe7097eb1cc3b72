//! Bookkeeping for a long exact sequence whose terms are known and whose
//! maps are known only through their ranks.
//!
//! Each unknown `h^i` is `constant_i - sum_{j in S_i} rho_j`, where the
//! `rho_j` are ranks of maps between known groups, each confined to an
//! interval. Anchors (values of some `h^i` computed elsewhere) and `h^i >= 0`
//! tighten the intervals until nothing moves.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LesSystem {
    /// bounds `[lo, hi]` for every map rank
    pub rho: Vec<(i64, i64)>,
    /// `(constant, ranks subtracted)` for every cohomology group
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesSolution {
    pub h: Vec<(i64, i64)>,
    pub rho: Vec<(i64, i64)>,
}

impl LesSystem {
    /// Fixes a rank to a known value.
    pub fn fix(&mut self, j: usize, value: i64) -> Result<()> {
        let (lo, hi) = self.rho[j];
        if value < lo || value > hi {
            return Err(Error::Inconsistent(format!(
                "rank {value} of map {j} outside [{lo}, {hi}]"
            )));
        }
        self.rho[j] = (value, value);
        Ok(())
    }

    pub fn solve(&self, anchors: &[(usize, i64)]) -> Result<LesSolution> {
        let mut rho = self.rho.clone();
        let check = |rho: &[(i64, i64)]| -> Result<()> {
            match rho.iter().position(|&(lo, hi)| lo > hi) {
                Some(j) => Err(Error::Inconsistent(format!(
                    "no admissible rank for map {j}: {:?}",
                    rho[j]
                ))),
                None => Ok(()),
            }
        };
        check(&rho)?;
        loop {
            let before = rho.clone();
            for (i, (constant, set)) in self.terms.iter().enumerate() {
                let anchor = anchors.iter().find(|(k, _)| *k == i).map(|&(_, v)| v);
                for &j in set {
                    let (lo_rest, hi_rest) = set
                        .iter()
                        .filter(|&&k| k != j)
                        .fold((0, 0), |(l, h), &k| (l + rho[k].0, h + rho[k].1));
                    // h^i >= 0
                    rho[j].1 = rho[j].1.min(constant - lo_rest);
                    if let Some(v) = anchor {
                        rho[j].0 = rho[j].0.max(constant - v - hi_rest);
                        rho[j].1 = rho[j].1.min(constant - v - lo_rest);
                    }
                }
                check(&rho)?;
                if let Some(v) = anchor {
                    let (lo, hi) = bounds(*constant, set, &rho);
                    if v < lo || v > hi {
                        return Err(Error::Inconsistent(format!(
                            "anchor h^{i} = {v} outside [{lo}, {hi}]"
                        )));
                    }
                }
            }
            if rho == before {
                break;
            }
        }
        let h = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (constant, set))| {
                let (lo, hi) = bounds(*constant, set, &rho);
                match anchors.iter().find(|(k, _)| *k == i) {
                    Some(&(_, v)) => (v, v),
                    None => (lo.max(0), hi),
                }
            })
            .collect();
        Ok(LesSolution { h, rho })
    }
}

fn bounds(constant: i64, set: &[usize], rho: &[(i64, i64)]) -> (i64, i64) {
    let (lo, hi) = set
        .iter()
        .fold((0, 0), |(l, h), &k| (l + rho[k].0, h + rho[k].1));
    (constant - hi, constant - lo)
}

/// Terms of `0 -> A -> B -> E -> 0` with `x_i = h^i(A)`, `y_i = h^i(B)`:
/// `h^i(E) = (y_i - rho_i) + (x_{i+1} - rho_{i+1})`, `rho_i` the rank of
/// `H^i(A) -> H^i(B)`.
pub fn quotient_system(x: &[i64], y: &[i64]) -> LesSystem {
    let n = x.len() - 1;
    let rho = (0..=n).map(|i| (0, x[i].min(y[i]))).collect();
    let terms = (0..=n)
        .map(|i| {
            let next = if i < n { x[i + 1] } else { 0 };
            let set = if i < n { vec![i, i + 1] } else { vec![i] };
            (y[i] + next, set)
        })
        .collect();
    LesSystem { rho, terms }
}

/// Terms of `0 -> K -> U -> V -> 0` with `u_i = h^i(U)`, `v_i = h^i(V)`:
/// `h^i(K) = (u_i - rho_i) + (v_{i-1} - rho_{i-1})`, `rho_i` the rank of
/// `H^i(U) -> H^i(V)`.
pub fn kernel_system(u: &[i64], v: &[i64]) -> LesSystem {
    let n = u.len() - 1;
    let rho = (0..=n).map(|i| (0, u[i].min(v[i]))).collect();
    let terms = (0..=n)
        .map(|i| {
            if i == 0 {
                (u[0], vec![0])
            } else {
                (u[i] + v[i - 1], vec![i, i - 1])
            }
        })
        .collect();
    LesSystem { rho, terms }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_pin_single_unknowns() {
        // two copies of h^1 = 5 mapping to four copies of h^1 = 2
        let x = [0, 10, 0];
        let y = [0, 8, 0];
        let sys = quotient_system(&x, &y);
        let free = sys.solve(&[]).unwrap();
        assert_eq!(free.h[0], (2, 10));
        let s = sys.solve(&[(0, 2)]).unwrap();
        assert_eq!(s.rho[1], (8, 8));
        assert_eq!(s.h, vec![(2, 2), (0, 0), (0, 0)]);
    }

    #[test]
    fn inconsistent_anchor_is_reported() {
        let sys = quotient_system(&[0, 1, 0], &[3, 0, 0]);
        assert!(sys.solve(&[(0, 10)]).is_err());
    }

    #[test]
    fn kernel_system_top_rank() {
        let mut sys = kernel_system(&[4, 0, 0], &[3, 0, 0]);
        sys.fix(0, 3).unwrap();
        let s = sys.solve(&[]).unwrap();
        assert_eq!(s.h, vec![(1, 1), (0, 0), (0, 0)]);
        assert!(sys.fix(0, 4).is_err());
    }

    #[test]
    fn nonnegativity_bounds_ranks() {
        // h^1 = 3 - rho_1 - rho_2, each rank in [0, 5]
        let sys = LesSystem {
            rho: vec![(0, 5), (0, 5)],
            terms: vec![(3, vec![0, 1])],
        };
        let s = sys.solve(&[]).unwrap();
        assert_eq!(s.rho, vec![(0, 3), (0, 3)]);
        assert_eq!(s.h, vec![(0, 3)]);
    }
}
