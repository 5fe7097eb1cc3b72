use log::info;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::plan::{check_eh_inequalities, RankPlan};
use crate::blowup::{random_point, require_fano, BlowupVariety};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::polyspace::{multiplication_map, FormSubspace, LinearFormMatrix, MapOrientation};
use crate::seeds::{derive_seed, rng_for, MATRIX_STREAM};

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_RETRY_BUDGET: usize = 5;

/// Uniformly random `a x b` matrix of linear forms, reproducible from `seed`.
pub fn sample_matrix(field: PrimeField, plan: &RankPlan, seed: u64) -> Result<LinearFormMatrix> {
    if !check_eh_inequalities(plan.a, plan.b, plan.n) {
        return Err(Error::InvalidPlan(format!(
            "(a, b, n) = ({}, {}, {}) violates a >= 1, b >= a + n, 2b >= (n+2)a",
            plan.a, plan.b, plan.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(LinearFormMatrix::random(
        field, plan.n, plan.a, plan.b, &mut rng,
    ))
}

/// Evidence that `A: O(1)^b -> O(2)^a` is surjective.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurjectivityCertificate {
    /// rank of `S_1^b -> S_2^a`
    pub h0_rank: usize,
    /// `a * C(n+2, 2)`
    pub h0_target: usize,
    pub h0_surjective: bool,
    pub trials: usize,
    /// random points where `rank A(q) < a`
    pub pointwise_failures: usize,
    pub pointwise_ok: bool,
    /// `rank A(p) = a` at every blown-up point, when a variety is given
    pub base_points_ok: bool,
    /// chance that one random point misses a degeneracy hypersurface of degree `a`
    pub miss_bound_per_point: f64,
    pub passed: bool,
}

/// Exact check on global sections plus pointwise rank at random points (and
/// at `base_points`, which are checked exactly).
pub fn certify_surjectivity(
    field: PrimeField,
    forms: &LinearFormMatrix,
    trials: usize,
    base_points: &[crate::polyspace::ProjPoint],
    rng: &mut impl Rng,
) -> Result<SurjectivityCertificate> {
    let (n, a) = (forms.n(), forms.rows());
    let src = FormSubspace::full(field, n, 1);
    let dst = FormSubspace::full(field, n, 2);
    let h0_rank = multiplication_map(&src, &dst, forms, MapOrientation::Forward)?.rank();
    let h0_target = a * dst.dimension();
    let mut pointwise_failures = 0;
    for _ in 0..trials {
        let q = random_point(field, n, rng);
        if forms.evaluate(field, q.coords()).rank() < a {
            pointwise_failures += 1;
        }
    }
    let base_points_ok = base_points
        .iter()
        .all(|p| forms.evaluate(field, p.coords()).rank() == a);
    let h0_surjective = h0_rank == h0_target;
    let pointwise_ok = pointwise_failures == 0;
    Ok(SurjectivityCertificate {
        h0_rank,
        h0_target,
        h0_surjective,
        trials,
        pointwise_failures,
        pointwise_ok,
        base_points_ok,
        miss_bound_per_point: a as f64 / field.p() as f64,
        passed: h0_surjective && pointwise_ok && base_points_ok,
    })
}

/// Dimension of `{(g_a, g_b) : g_a A = A g_b}` over scalar matrices, as the
/// nullity of a `((n+1)ab) x (a^2 + b^2)` system.
pub fn stabilizer_dimension(field: PrimeField, forms: &LinearFormMatrix) -> usize {
    let (n, a, b) = (forms.n(), forms.rows(), forms.cols());
    let mut sys = Matrix::zeros(field, (n + 1) * a * b, a * a + b * b);
    // unknowns: g_a[i][k] at i*a + k, then g_b[l][j] at a^2 + l*b + j
    for v in 0..=n {
        for i in 0..a {
            for j in 0..b {
                let row = (v * a + i) * b + j;
                for k in 0..a {
                    sys.add_to(row, i * a + k, forms.entry(k, j)[v]);
                }
                for l in 0..b {
                    sys.add_to(row, a * a + l * b + j, field.neg(forms.entry(i, l)[v]));
                }
            }
        }
    }
    sys.nullity()
}

/// `(X, plan, A)` with its surjectivity certificate.
#[derive(Clone, Debug)]
pub struct KernelBundlePresentation {
    pub x: BlowupVariety,
    pub plan: RankPlan,
    pub forms: LinearFormMatrix,
    pub seed: u64,
    pub certificate: SurjectivityCertificate,
}

impl KernelBundlePresentation {
    /// Certifies `forms` on `x`; the presentation is kept even when the
    /// certificate fails so that it can be reported on.
    pub fn new(
        x: BlowupVariety,
        plan: RankPlan,
        forms: LinearFormMatrix,
        seed: u64,
        trials: usize,
    ) -> Result<Self> {
        if forms.n() != x.n() || forms.rows() != plan.a || forms.cols() != plan.b || plan.n != x.n()
        {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} forms on P^{} for plan (a, b) = ({}, {}) on P^{}",
                forms.rows(),
                forms.cols(),
                forms.n(),
                plan.a,
                plan.b,
                x.n()
            )));
        }
        let mut rng = rng_for(seed, 1);
        let certificate =
            certify_surjectivity(x.spec().field, &forms, trials, x.points(), &mut rng)?;
        Ok(Self {
            x,
            plan,
            forms,
            seed,
            certificate,
        })
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.passed
    }

    pub fn require_certified(&self) -> Result<()> {
        if self.is_certified() {
            Ok(())
        } else {
            Err(Error::Uncertified(format!("{:?}", self.certificate)))
        }
    }

    pub fn field(&self) -> PrimeField {
        self.x.spec().field
    }

    pub fn stabilizer_dimension(&self) -> usize {
        stabilizer_dimension(self.field(), &self.forms)
    }
}

/// One construction attempt, for the log in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub seed: u64,
    pub certified: bool,
    pub stabilizer_dimension: usize,
}

/// Samples `A` with seeds derived from `master_seed` until it is certified
/// and has a one-dimensional stabilizer, up to `budget` attempts.
pub fn construct(
    x: &BlowupVariety,
    plan: RankPlan,
    master_seed: u64,
    budget: usize,
    trials: usize,
) -> Result<(KernelBundlePresentation, Vec<Attempt>)> {
    require_fano(x)?;
    let mut attempts = Vec::new();
    for k in 0..budget as u64 {
        let seed = derive_seed(master_seed, MATRIX_STREAM + k);
        let forms = sample_matrix(x.spec().field, &plan, seed)?;
        let pres = KernelBundlePresentation::new(x.clone(), plan, forms, seed, trials)?;
        let stab = pres.stabilizer_dimension();
        let certified = pres.is_certified();
        info!("attempt {k}: seed {seed} certified {certified} stabilizer {stab}");
        attempts.push(Attempt {
            seed,
            certified,
            stabilizer_dimension: stab,
        });
        if certified && stab == 1 {
            return Ok((pres, attempts));
        }
    }
    Err(Error::GenericityExhausted {
        seeds: attempts.iter().map(|a| a.seed).collect(),
    })
}
