use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use log::info;
use serde::Serialize;

use super::args::{Cli, CohomArgs, Command, Format, RunConfig, SerreArgs, VerifyArgs};
use crate::blowup::{
    chi_divisor, chi_surface, cohomology_divisor, divisor_shape, require_fano,
    sample_general_points, BlowupVariety, CohomologyTable, DivisorClass, Entry, PointConfig,
};
use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::kerbundle::{
    chern_and_slope, construct, family_dimension, verify_acm, verify_ulrich, Attempt, Check,
    ChernData, FamilyDimension, KernelBundlePresentation, RankPlan, RegularityReport,
    SurjectivityCertificate,
};
use crate::seeds::{rng_for, POINTS_STREAM, SCHEME_STREAM};
use crate::serrecorr::{
    check_mrc_degrees, gamma, gamma_identities, koszul_betti, m_of_r, GammaIdentities, HilbertData,
    MrcReport, PointScheme,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;
pub const EXIT_GENERICITY: i32 = 4;

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::GenericityExhausted { .. } => EXIT_GENERICITY,
        Error::Inconsistent(_) | Error::Uncertified(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

pub fn execute(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Cohom(a) => cmd_cohom(&cli.run, a),
        Command::Verify(a) => cmd_verify(&cli.run, a),
        Command::Serre(a) => cmd_serre(&cli.run, a),
    };
    match result {
        Ok((stdout, code)) => Output {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => {
            let code = error_code(&e);
            let mut stderr = format!("error: {e}\n");
            if let Error::GenericityExhausted { seeds } = &e {
                let _ = writeln!(
                    stderr,
                    "genericity failure after {} attempt(s); seeds tried: {seeds:?}",
                    seeds.len()
                );
            }
            Output {
                stdout: String::new(),
                stderr,
                code,
            }
        }
    }
}

fn render<T: Serialize>(
    format: Format,
    report: &T,
    table: impl FnOnce() -> String,
) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Table => table(),
    })
}

/// Loads the configured points, or samples `s` general points from the
/// master seed.
pub fn load_variety(
    run: &RunConfig,
    n: usize,
    s: Option<usize>,
) -> Result<(BlowupVariety, Option<PointConfig>)> {
    if let Some(path) = &run.config {
        let cfg = PointConfig::load(path)?;
        if cfg.n != n {
            return Err(Error::Parse(format!(
                "configuration is on P^{} but n = {n} was requested",
                cfg.n
            )));
        }
        if s.is_some_and(|s| s != cfg.points.len()) {
            return Err(Error::Parse(format!(
                "configuration has {} points but s = {} was requested",
                cfg.points.len(),
                s.unwrap()
            )));
        }
        return Ok((cfg.variety()?, Some(cfg)));
    }
    let spec = FieldSpec::with_prime(run.prime)?;
    let s = s.unwrap_or(0);
    let mut rng = rng_for(run.seed, POINTS_STREAM);
    let points = sample_general_points(&spec, n, s, &mut rng)?;
    Ok((BlowupVariety::new(spec, n, points)?, None))
}

fn write_csv(path: &Path, header: Vec<String>, rows: Vec<Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn entry_header(label: &str, n: usize) -> Vec<String> {
    std::iter::once(label.to_string())
        .chain((0..=n).map(|i| format!("h{i}")))
        .collect()
}

#[derive(Serialize)]
pub struct CohomReport {
    pub command: &'static str,
    pub claim: &'static str,
    pub prime: u32,
    pub seed: u64,
    pub n: usize,
    pub s: usize,
    pub points: PointConfig,
    pub divisor: String,
    /// coefficients of `e_0, e_1, ..`
    pub raw_coefficients: (i64, Vec<i64>),
    pub shape: String,
    pub table: CohomologyTable,
    pub exact: bool,
    pub euler_characteristic: Option<i64>,
}

fn cmd_cohom(run: &RunConfig, args: &CohomArgs) -> Result<(String, i32)> {
    let d: DivisorClass = args.divisor.parse()?;
    let s = args.s.unwrap_or(d.s());
    let (x, _) = load_variety(run, args.n, Some(s))?;
    x.check_class(&d)?;
    let table = cohomology_divisor(&x, &d)?;
    let euler = if x.n() == 2 {
        Some(chi_surface(&x, &d)?)
    } else {
        chi_divisor(&x, &d).ok()
    };
    let report = CohomReport {
        command: "cohom",
        claim: "line-bundle-cohomology",
        prime: x.spec().p(),
        seed: run.seed,
        n: x.n(),
        s: x.s(),
        points: PointConfig::from_variety(&x),
        divisor: d.to_string(),
        raw_coefficients: d.raw_coefficients(),
        shape: format!("{:?}", divisor_shape(&x, &d)),
        exact: table.is_exact(),
        table: table.clone(),
        euler_characteristic: euler,
    };
    if let Some(path) = &run.csv {
        let row = std::iter::once(d.to_string())
            .chain(table.values.iter().map(Entry::to_string))
            .collect();
        write_csv(path, entry_header("divisor", x.n()), vec![row])?;
    }
    let text = render(run.format, &report, || format!("h^*(O_X({d})) = {table}\n"))?;
    Ok((
        text,
        if table.is_exact() {
            EXIT_PASS
        } else {
            EXIT_INDETERMINATE
        },
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub passed: bool,
}

fn verdict(claim: &str, passed: bool) -> Verdict {
    Verdict {
        claim: claim.into(),
        passed,
    }
}

#[derive(Serialize)]
pub struct AcmSummary {
    pub label: String,
    pub window: (i64, i64),
    pub passed: bool,
    pub intermediate_vanishing: bool,
    pub euler_ok: bool,
    pub indeterminate: Vec<String>,
    pub regularity: Option<RegularityReport>,
    pub failure: Option<String>,
}

#[derive(Serialize)]
pub struct UlrichSummary {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub riemann_roch_ok: bool,
    pub stability: String,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub prime: u32,
    pub seed: u64,
    pub points: PointConfig,
    pub plan: RankPlan,
    pub attempts: Vec<Attempt>,
    pub matrix_seed: u64,
    pub certificate: SurjectivityCertificate,
    pub stabilizer_dimension: usize,
    pub family_dimension: FamilyDimension,
    pub chern: ChernData,
    pub cohomology: BTreeMap<i64, Vec<Entry>>,
    pub euler: BTreeMap<i64, i64>,
    pub acm: AcmSummary,
    pub ulrich: Option<UlrichSummary>,
    pub verdicts: BTreeMap<String, Verdict>,
}

fn cmd_verify(run: &RunConfig, args: &VerifyArgs) -> Result<(String, i32)> {
    let plan = RankPlan::new(args.n, args.r, args.c)?;
    let (x, _) = load_variety(run, args.n, Some(args.s))?;
    require_fano(&x)?;
    let window = (args.window.lo, args.window.hi);
    let (mut pres, attempts) = construct(&x, plan, run.seed, args.budget, args.trials)?;
    info!(
        "using matrix seed {} after {} attempt(s)",
        pres.seed,
        attempts.len()
    );
    if !args.zero_columns.is_empty() {
        let mut forms = pres.forms.clone();
        for &j in &args.zero_columns {
            if j >= plan.b {
                return Err(Error::OutOfRange(format!(
                    "column {j} of a matrix with {} columns",
                    plan.b
                )));
            }
            forms = forms.with_zero_column(j);
        }
        pres = KernelBundlePresentation::new(x.clone(), plan, forms, pres.seed, args.trials)?;
    }
    let acm = verify_acm(&pres, window)?;
    let ulrich = if x.n() == 2 {
        Some(verify_ulrich(&pres, window)?)
    } else {
        None
    };
    let stab = pres.stabilizer_dimension();
    let family = family_dimension(&plan);
    let chern = chern_and_slope(&x, &plan, 1)?;

    let mut verdicts = BTreeMap::new();
    verdicts.insert(
        "certificate.surjective".into(),
        verdict(
            "A: O(1)^b -> O(2)^a surjective (sections exact, pointwise sampled)",
            pres.is_certified(),
        ),
    );
    verdicts.insert(
        "simplicity.stabilizer".into(),
        verdict(
            "dim Stab(A) = 1 (simplicity via the stabilizer count)",
            stab == 1,
        ),
    );
    verdicts.insert(
        "acm.window_regularity".into(),
        verdict(
            "no intermediate cohomology on the window, regularity step checked",
            acm.passed,
        ),
    );
    verdicts.insert(
        "euler.consistency".into(),
        verdict(
            "alternating sums match the Euler characteristic",
            acm.euler_ok,
        ),
    );
    if let Some(u) = &ulrich {
        for c in &u.checks {
            verdicts.insert(format!("ulrich.{}", c.id), verdict(&c.claim, c.ok));
        }
        verdicts.insert(
            "ulrich.riemann_roch".into(),
            verdict(
                "chi(E(tH)) from Chern data equals the table",
                u.riemann_roch_ok,
            ),
        );
    }

    let cohomology = acm
        .cohomology
        .iter()
        .map(|(t, c)| (*t, c.table.values.clone()))
        .collect();
    let euler = acm.cohomology.iter().map(|(t, c)| (*t, c.euler)).collect();
    if let Some(path) = &run.csv {
        let rows = acm
            .cohomology
            .iter()
            .map(|(t, c)| {
                std::iter::once(t.to_string())
                    .chain(c.table.values.iter().map(Entry::to_string))
                    .collect()
            })
            .collect();
        write_csv(path, entry_header("t", x.n()), rows)?;
    }
    let indeterminate = !acm.indeterminate.is_empty();
    let report = VerifyReport {
        command: "verify",
        prime: x.spec().p(),
        seed: run.seed,
        points: PointConfig::from_variety(&x),
        plan,
        attempts,
        matrix_seed: pres.seed,
        certificate: pres.certificate.clone(),
        stabilizer_dimension: stab,
        family_dimension: family,
        chern,
        cohomology,
        euler,
        acm: AcmSummary {
            label: acm.label.clone(),
            window,
            passed: acm.passed,
            intermediate_vanishing: acm.intermediate_vanishing,
            euler_ok: acm.euler_ok,
            indeterminate: acm.indeterminate.clone(),
            regularity: acm.regularity.clone(),
            failure: acm.failure.clone(),
        },
        ulrich: ulrich.map(|u| UlrichSummary {
            passed: u.passed,
            checks: u.checks,
            riemann_roch_ok: u.riemann_roch_ok,
            stability: u.stability,
        }),
        verdicts,
    };
    let passed = report.verdicts.values().all(|v| v.passed);
    let code = if indeterminate {
        EXIT_INDETERMINATE
    } else if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let text = render(run.format, &report, || verify_table(&report))?;
    Ok((text, code))
}

fn verify_table(r: &VerifyReport) -> String {
    let mut out = String::new();
    let p = &r.plan;
    let _ = writeln!(
        out,
        "X = Bl_{} P^{} over GF({}), seed {}",
        r.points.points.len(),
        p.n,
        r.prime,
        r.seed
    );
    let _ = writeln!(
        out,
        "plan r = {} c = {}: (a, b) = ({}, {}), rank {}",
        p.r,
        p.c,
        p.a,
        p.b,
        p.rank()
    );
    let _ = writeln!(
        out,
        "attempts: {}, matrix seed {}",
        r.attempts.len(),
        r.matrix_seed
    );
    let _ = writeln!(out, "stabilizer dimension: {}", r.stabilizer_dimension);
    let f = &r.family_dimension;
    let _ = writeln!(
        out,
        "family dimension: {} (closed form {}{})",
        f.defining,
        f.closed_form,
        if f.matches { "" } else { ", MISMATCH" }
    );
    for (t, h) in &r.cohomology {
        let h: Vec<String> = h.iter().map(Entry::to_string).collect();
        let _ = writeln!(
            out,
            "  t = {t:>3}: ({})  chi = {}",
            h.join(", "),
            r.euler[t]
        );
    }
    let _ = writeln!(
        out,
        "ACM ({}): {}",
        r.acm.label,
        if r.acm.passed { "pass" } else { "FAIL" }
    );
    for (id, v) in &r.verdicts {
        let _ = writeln!(
            out,
            "[{}] {id}: {}",
            if v.passed { "pass" } else { "FAIL" },
            v.claim
        );
    }
    if let Some(u) = &r.ulrich {
        let _ = writeln!(out, "stability: {}", u.stability);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyRow {
    pub i: usize,
    pub j: i64,
    pub beta: usize,
    pub predicted: i64,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulSummary {
    /// `beta_{0,r}`
    pub generators: usize,
    /// `beta_{0,r+1}`
    pub generators_next: usize,
    pub syzygies: Vec<SyzygyRow>,
}

#[derive(Serialize)]
pub struct SerreReport {
    pub command: &'static str,
    pub prime: u32,
    pub seed: u64,
    pub d: i64,
    pub r: i64,
    pub m: usize,
    pub points: PointConfig,
    pub hilbert: HilbertData,
    pub gamma_identities: GammaIdentities,
    /// predicted `beta_{i, r+i}` for `1 <= i <= d - 1`
    pub gamma: BTreeMap<i64, i64>,
    pub mrc: MrcReport,
    pub koszul: Option<KoszulSummary>,
    pub verdicts: BTreeMap<String, Verdict>,
}

fn cmd_serre(run: &RunConfig, args: &SerreArgs) -> Result<(String, i32)> {
    let (d, r) = (args.d, args.r);
    let m = m_of_r(d, r)?;
    if d < 3 {
        return Err(Error::NotStrongDelPezzo((9 - d) as usize));
    }
    let s = (9 - d) as usize;
    let (x, cfg) = load_variety(run, 2, Some(s))?;
    let z = match cfg
        .as_ref()
        .and_then(|c| c.extra_points.as_ref().map(|_| c.extra()))
    {
        Some(points) => PointScheme::new(x.clone(), points?)?,
        None => PointScheme::sample(x.clone(), m, &mut rng_for(run.seed, SCHEME_STREAM))?,
    };
    let mrc = check_mrc_degrees(&z, r)?;
    let hilbert = HilbertData::new(d);
    let ids = gamma_identities(d, r)?;
    let gammas: BTreeMap<i64, i64> = (1..d)
        .map(|i| gamma(d, i, r).map(|g| (i, g)))
        .collect::<Result<_>>()?;
    let koszul = if args.koszul {
        let syzygies = gammas
            .iter()
            .map(|(&i, &g)| {
                let beta = koszul_betti(&z, i as usize, r + i)?;
                Ok(SyzygyRow {
                    i: i as usize,
                    j: r + i,
                    beta,
                    predicted: g,
                    agrees: beta as i64 == g,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some(KoszulSummary {
            generators: koszul_betti(&z, 0, r)?,
            generators_next: koszul_betti(&z, 0, r + 1)?,
            syzygies,
        })
    } else {
        None
    };

    let mut verdicts = BTreeMap::new();
    verdicts.insert(
        "mrc.below".into(),
        verdict("h^0(I_Z(r-1)) = 0", mrc.below_ok),
    );
    verdicts.insert(
        "mrc.generators".into(),
        verdict("h^0(I_Z(r)) = (d-1)r + 1", mrc.at_ok),
    );
    verdicts.insert(
        "mrc.no_degree_r_plus_1".into(),
        verdict(
            "H^0(O_X(H)) (x) I_r -> I_{r+1} surjective",
            mrc.no_new_generators,
        ),
    );
    verdicts.insert(
        "hilbert.identities".into(),
        verdict(
            "Delta P = dt, Delta^2 P = d, m(r) - P(r-1) = r - 1",
            ids.all(),
        ),
    );
    verdicts.insert(
        "hilbert.euler".into(),
        verdict(
            "P(t) = chi(O_X(tH)) for -4 <= t <= 4",
            hilbert.agrees_with(&x, -4..=4)?,
        ),
    );
    if let Some(k) = &koszul {
        verdicts.insert(
            "koszul.generators".into(),
            verdict("beta_{0,r} = h^0(I_Z(r))", k.generators == mrc.at),
        );
        verdicts.insert(
            "koszul.generators_next".into(),
            verdict("beta_{0,r+1} = 0", k.generators_next == 0),
        );
        verdicts.insert(
            "koszul.syzygies".into(),
            verdict(
                "beta_{i,r+i} = gamma_i",
                k.syzygies.iter().all(|s| s.agrees),
            ),
        );
    }
    let mut points = PointConfig::from_variety(&x);
    points.extra_points = Some(
        z.points()
            .iter()
            .map(|q| q.coords().iter().map(|&c| c as i64).collect())
            .collect(),
    );
    let report = SerreReport {
        command: "serre",
        prime: x.spec().p(),
        seed: run.seed,
        d,
        r,
        m,
        points,
        hilbert,
        gamma_identities: ids,
        gamma: gammas,
        mrc,
        koszul,
        verdicts,
    };
    let passed = report.verdicts.values().all(|v| v.passed);
    let text = render(run.format, &report, || serre_table(&report))?;
    Ok((text, if passed { EXIT_PASS } else { EXIT_FAIL }))
}

fn serre_table(r: &SerreReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "d = {}, r = {}: m(r) = {} general points, seed {}",
        r.d, r.r, r.m, r.seed
    );
    let mrc = &r.mrc;
    let _ = writeln!(
        out,
        "h^0(I(r-1)) = {}, h^0(I(r)) = {} (expected {}), h^0(I(r+1)) = {}, image rank {}",
        mrc.below, mrc.at, mrc.expected_at, mrc.next, mrc.next_image_rank
    );
    for (i, g) in &r.gamma {
        let _ = writeln!(out, "gamma_{i} = {g}");
    }
    if let Some(k) = &r.koszul {
        let _ = writeln!(
            out,
            "beta_0,{} = {}, beta_0,{} = {}",
            r.r,
            k.generators,
            r.r + 1,
            k.generators_next
        );
        for s in &k.syzygies {
            let _ = writeln!(
                out,
                "beta_{},{} = {} (predicted {})",
                s.i, s.j, s.beta, s.predicted
            );
        }
    }
    for (id, v) in &r.verdicts {
        let _ = writeln!(
            out,
            "[{}] {id}: {}",
            if v.passed { "pass" } else { "FAIL" },
            v.claim
        );
    }
    out
}
