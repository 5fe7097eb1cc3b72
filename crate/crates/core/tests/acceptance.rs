//! Exit-gate suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fanokit::blowup::{
    canonical_class, chi_divisor, chi_surface, cohomology_divisor, divisor_shape, h0_pushforward,
    is_general_position, sample_general_points, BlowupVariety, DivisorClass, DivisorShape,
};
use fanokit::exactla::{FieldSpec, PrimeField};
use fanokit::kerbundle::{
    certify_surjectivity, construct, family_dimension, sample_matrix, stabilizer_dimension,
    twisted_sections, verify_acm, verify_ulrich, RankPlan, DEFAULT_RETRY_BUDGET, DEFAULT_TRIALS,
};
use fanokit::polyspace::{LinearFormMatrix, ProjPoint};
use fanokit::seeds::{rng_for, POINTS_STREAM, SCHEME_STREAM};
use fanokit::serrecorr::{check_mrc_degrees, gamma_identities, koszul_betti, m_of_r, PointScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn variety(n: usize, s: usize, seed: u64) -> BlowupVariety {
    let spec = FieldSpec::default();
    let pts = sample_general_points(&spec, n, s, &mut rng_for(seed, POINTS_STREAM)).unwrap();
    BlowupVariety::new(spec, n, pts).unwrap()
}

fn field() -> PrimeField {
    FieldSpec::default().field
}

/// `chi(E(tH))` for every `(s, r, t)` seen in the sweep, reused by the Euler check.
type EulerLog = BTreeMap<(usize, usize, i64), (Option<i64>, i64)>;

fn del_pezzo_sweep(log: &mut EulerLog) -> Outcome {
    let mut slowest = Duration::ZERO;
    for s in 0..=8 {
        let d = 9 - s as i64;
        let x = variety(2, s, 1);
        for r in [2usize, 3] {
            let start = Instant::now();
            let plan = RankPlan::new(2, r, 0).unwrap();
            let (pres, _) = construct(&x, plan, 1, DEFAULT_RETRY_BUDGET, DEFAULT_TRIALS)
                .map_err(|e| format!("s={s} r={r}: {e}"))?;
            let rep = verify_ulrich(&pres, (-4, 4)).map_err(|e| format!("s={s} r={r}: {e}"))?;
            let ri = r as i64;
            let h = |t: i64, i: usize| rep.acm.cohomology[&t].table.get(i).exact();
            ensure(h(0, 0) == Some(0), || {
                format!("s={s} r={r}: h0(E) = {:?}", h(0, 0))
            })?;
            ensure(h(1, 0) == Some((d * ri) as usize), || {
                format!("s={s} r={r}: h0(E(H)) = {:?}", h(1, 0))
            })?;
            for t in -4..=4 {
                ensure(h(t, 1) == Some(0), || {
                    format!("s={s} r={r}: h1(E({t}H)) = {:?}", h(t, 1))
                })?;
                let c = &rep.acm.cohomology[&t];
                log.insert((s, r, t), (c.table.euler(), c.euler));
            }
            let c2 = (d * ri * ri + (2 - d) * ri) / 2;
            ensure(rep.chern.c2 == Some(c2), || {
                format!("s={s} r={r}: c2 = {:?}, want {c2}", rep.chern.c2)
            })?;
            ensure(rep.passed, || format!("s={s} r={r}: Ulrich report failed"))?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            ensure(took <= Duration::from_secs(120), || {
                format!("s={s} r={r}: took {took:.1?}")
            })?;
        }
    }
    Ok(format!(
        "18 surfaces x ranks exact, slowest (d, r) {slowest:.2?}"
    ))
}

fn eight_points() -> Outcome {
    let x = variety(2, 8, 1);
    let t = |s: &str| {
        cohomology_divisor(&x, &s.parse().unwrap())
            .unwrap()
            .get(1)
            .exact()
    };
    // H - 2e0 and H - e0 in (a; b) form
    ensure(t("1;1,1,1,1,1,1,1,1") == Some(5), || {
        format!("h1(H-2e0) = {:?}", t("1;1,1,1,1,1,1,1,1"))
    })?;
    ensure(t("2;1,1,1,1,1,1,1,1") == Some(2), || {
        format!("h1(H-e0) = {:?}", t("2;1,1,1,1,1,1,1,1"))
    })?;
    for r in [2usize, 3] {
        let (pres, _) = construct(
            &x,
            RankPlan::new(2, r, 0).unwrap(),
            1,
            DEFAULT_RETRY_BUDGET,
            DEFAULT_TRIALS,
        )
        .map_err(|e| e.to_string())?;
        let one = twisted_sections(&pres, 1).map_err(|e| e.to_string())?;
        let two = twisted_sections(&pres, 2).map_err(|e| e.to_string())?;
        ensure(one == r && two == 3 * r, || {
            format!("r={r}: h0(E(H)) = {one}, h0(E(2H)) = {two}")
        })?;
    }
    Ok("h1 = 5, 2; h0(E(H)) = r, h0(E(2H)) = 3r for r = 2, 3".into())
}

fn higher_dimension() -> Outcome {
    let mut slowest = Duration::ZERO;
    for s in [0usize, 1] {
        let x = variety(3, s, 1);
        for c in [0usize, 1] {
            let start = Instant::now();
            let plan = RankPlan::new(3, 1, c).unwrap();
            let (pres, _) = construct(&x, plan, 1, DEFAULT_RETRY_BUDGET, DEFAULT_TRIALS)
                .map_err(|e| e.to_string())?;
            let rep = verify_acm(&pres, (-3, 3)).map_err(|e| e.to_string())?;
            let tag = format!("s={s} rank={}", plan.rank());
            ensure(rep.indeterminate.is_empty(), || {
                format!("{tag}: indeterminate {:?}", rep.indeterminate)
            })?;
            for (t, coh) in &rep.cohomology {
                ensure(coh.table.is_exact(), || {
                    format!("{tag}: inexact table at t={t}: {}", coh.table)
                })?;
                for i in 1..=2 {
                    ensure(coh.table.get(i).exact() == Some(0), || {
                        format!("{tag}: h{i}(E({t}H)) = {}", coh.table.get(i))
                    })?;
                }
            }
            let reg = rep
                .regularity
                .as_ref()
                .ok_or(format!("{tag}: no regularity step"))?;
            let twists: Vec<i64> = reg
                .surjectivity
                .iter()
                .filter(|x| x.ok)
                .map(|x| x.t)
                .collect();
            ensure(reg.passed && twists == [1, 2], || {
                format!("{tag}: regularity {reg:?}")
            })?;
            ensure(rep.passed, || format!("{tag}: ACM report failed"))?;
            slowest = slowest.max(start.elapsed());
        }
    }
    Ok(format!(
        "ranks 3, 4 on s = 0, 1 exact over -3..3, slowest {slowest:.2?}"
    ))
}

fn simplicity_census() -> Outcome {
    let plans = [(2, 2, 0), (2, 3, 0), (3, 1, 0), (3, 1, 1)];
    let mut summary = Vec::new();
    for (n, r, c) in plans {
        let plan = RankPlan::new(n, r, c).unwrap();
        let dims: Vec<usize> = (0..20)
            .map(|seed| {
                stabilizer_dimension(field(), &sample_matrix(field(), &plan, seed).unwrap())
            })
            .collect();
        let ones = dims.iter().filter(|&&d| d == 1).count();
        ensure(dims.iter().all(|&d| d >= 1), || {
            format!("n={n} r={r} c={c}: zero stabilizer in {dims:?}")
        })?;
        ensure(ones >= 18, || {
            format!("n={n} r={r} c={c}: only {ones}/20 simple")
        })?;
        summary.push(format!("{ones}/20"));
    }
    Ok(format!("simple in {}", summary.join(", ")))
}

fn family_dimensions() -> Outcome {
    for r in 2..=8usize {
        let f = family_dimension(&RankPlan::new(2, r, 0).unwrap());
        ensure(f.defining == (r * r + 1) as i64 && f.matches, || {
            format!("n=2 r={r}: {f:?}")
        })?;
    }
    for n in 2..=7usize {
        let r0 = if n % 2 == 0 { 2 } else { 1 };
        for r in r0..r0 + 4 {
            let f = family_dimension(&RankPlan::new(n, r, 0).unwrap());
            ensure(f.matches && f.discrepancy.is_none(), || {
                format!("n={n} r={r} c=0: {f:?}")
            })?;
            let cmax = if n % 2 == 0 { n / 2 - 1 } else { n - 1 };
            for c in 1..=cmax {
                let f = family_dimension(&RankPlan::new(n, r, c).unwrap());
                let (r, c) = (r as i64, c as i64);
                let gap = f.closed_form - f.defining;
                ensure(
                    !f.matches && f.discrepancy.is_some() && gap == 2 * c * c,
                    || format!("n={n} r={r} c={c}: {f:?}"),
                )?;
            }
        }
    }
    Ok("r^2+1 on surfaces, closed forms at c = 0, flagged 2c^2 gap for c > 0".into())
}

fn euler_characteristics(log: &EulerLog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 200 {
        attempts += 1;
        ensure(attempts < 2000, || {
            format!("only {checked} divisors inside the chi window")
        })?;
        let n = if rng.random_bool(0.5) { 2 } else { 3 };
        let s = rng.random_range(0..=if n == 2 { 8 } else { 1 });
        let x = variety(n, s, rng.random_range(0..50));
        let d = DivisorClass::new(
            rng.random_range(-8..=10),
            (0..s).map(|_| rng.random_range(0..4)).collect(),
        );
        let Ok(chi) = chi_divisor(&x, &d) else {
            continue;
        };
        let table = cohomology_divisor(&x, &d).map_err(|e| format!("{d} on n={n}: {e}"))?;
        ensure(table.euler() == Some(chi), || {
            format!("{d} on n={n}, s={s}: {table} vs chi = {chi}")
        })?;
        checked += 1;
    }
    ensure(log.len() == 18 * 9, || {
        format!("sweep logged {} twists", log.len())
    })?;
    for (&(s, r, t), &(table, euler)) in log {
        let want = (9 - s as i64) * r as i64 * (t * t + t) / 2;
        ensure(table == Some(want) && euler == want, || {
            format!("s={s} r={r} t={t}: {table:?}/{euler} vs {want}")
        })?;
    }
    Ok(format!("200/200 divisors, {} bundle twists", log.len()))
}

fn serre_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut checked, mut attempts, mut direct) = (0, 0, 0);
    while checked < 100 {
        attempts += 1;
        ensure(attempts < 2000, || {
            format!("only {checked} supported divisors")
        })?;
        let n = if rng.random_bool(0.6) { 2 } else { 3 };
        let s = rng.random_range(0..=if n == 2 { 8 } else { 1 });
        let x = variety(n, s, rng.random_range(0..50));
        let d = DivisorClass::new(
            rng.random_range(-6..=8),
            (0..s).map(|_| rng.random_range(-4..4)).collect(),
        );
        let Ok(table) = cohomology_divisor(&x, &d) else {
            continue;
        };
        let Some(h) = table.exact_values() else {
            continue;
        };
        let dual = &canonical_class(&x) - &d;
        // other side from pushforward ranks of K - D and D, and the chi polynomial
        let top = h0_pushforward(&x, &dual).map_err(|e| e.to_string())?;
        let bottom = h0_pushforward(&x, &d).map_err(|e| e.to_string())?;
        ensure(h[n] == top && h[0] == bottom, || {
            format!("{d} on n={n}: {h:?} vs h0(K-D) = {top}, h0(D) = {bottom}")
        })?;
        if n == 2 {
            let middle =
                top as i64 + bottom as i64 - chi_surface(&x, &dual).map_err(|e| e.to_string())?;
            ensure(h[1] as i64 == middle, || {
                format!("{d}: h1 = {} vs {middle}", h[1])
            })?;
        }
        let reversed = cohomology_divisor(&x, &dual).map_err(|e| e.to_string())?;
        ensure(table.reversed() == reversed, || {
            format!("{d} on n={n}: {table} vs {reversed}")
        })?;
        if divisor_shape(&x, &d) == DivisorShape::Direct {
            direct += 1;
        }
        checked += 1;
    }
    Ok(format!(
        "100/100 supported divisors, {direct} with D computed from fat points"
    ))
}

fn serre_correspondence() -> Outcome {
    let mut koszul = 0;
    for d in [3i64, 4, 5, 6] {
        let x = variety(2, (9 - d) as usize, 1);
        for r in [2i64, 3] {
            let m = m_of_r(d, r).map_err(|e| e.to_string())?;
            for seed in 0..5 {
                let z = PointScheme::sample(x.clone(), m, &mut rng_for(seed, SCHEME_STREAM))
                    .map_err(|e| e.to_string())?;
                let rep = check_mrc_degrees(&z, r).map_err(|e| e.to_string())?;
                ensure(rep.passed, || format!("d={d} r={r} seed={seed}: {rep:?}"))?;
                if d <= 4 && r == 2 {
                    let at = koszul_betti(&z, 0, r).map_err(|e| e.to_string())?;
                    let next = koszul_betti(&z, 0, r + 1).map_err(|e| e.to_string())?;
                    ensure(at == rep.at && next == 0, || {
                        format!("d={d} seed={seed}: beta = {at}, {next}")
                    })?;
                    koszul += 1;
                }
            }
            let ids = gamma_identities(d, r).map_err(|e| e.to_string())?;
            ensure(ids.all(), || format!("d={d} r={r}: {ids:?}"))?;
        }
    }
    Ok(format!(
        "40 point sets pass the degree checks, {koszul} Koszul cross-checks"
    ))
}

fn negative_controls() -> Outcome {
    let f = field();
    let zero = LinearFormMatrix::zero(2, 2, 4);
    let cert =
        certify_surjectivity(f, &zero, 20, &[], &mut rng_for(1, 1)).map_err(|e| e.to_string())?;
    ensure(!cert.passed, || "zero matrix certified".into())?;
    // plan (a, b) = (2, 4); every column zeroed
    let mut argv = vec!["fanokit", "verify", "--n", "2", "--s", "3", "--r", "2"];
    let cols: Vec<String> = (0..4).map(|j| j.to_string()).collect();
    for c in &cols {
        argv.extend(["--zero-column", c.as_str()]);
    }
    let out = fanokit::cli::run_from(argv);
    ensure(out.code == 1, || {
        format!("zeroed matrix: exit {}", out.code)
    })?;

    let spec = FieldSpec::default();
    let line: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [1, 1, 0]]
        .iter()
        .map(|c| ProjPoint::new(f, c).unwrap())
        .collect();
    let gp = is_general_position(&spec, &line).map_err(|e| e.to_string())?;
    ensure(!gp.general, || "collinear triple accepted".into())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("collinear.json");
    std::fs::write(
        &cfg,
        r#"{"n": 2, "p": 32003, "points": [[1,0,0],[0,1,0],[1,1,0]]}"#,
    )
    .map_err(|e| e.to_string())?;
    let out = fanokit::cli::run_from([
        "fanokit",
        "verify",
        "--n",
        "2",
        "--s",
        "3",
        "--r",
        "2",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    ensure(out.code == 2, || {
        format!("collinear config: exit {}", out.code)
    })?;

    let out = fanokit::cli::run_from(["fanokit", "verify", "--n", "3", "--s", "2", "--r", "1"]);
    ensure(out.code == 2 && out.stderr.contains("not Fano"), || {
        format!("n=3 s=2: exit {} {}", out.code, out.stderr)
    })?;
    Ok("zero matrix exit 1, collinear exit 2, non-Fano exit 2".into())
}

fn run(n: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    let took = start.elapsed();
    match outcome {
        Ok(detail) => {
            println!("criterion {n}: PASS {name} ({took:.2?}) {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {n}: FAIL {name} ({took:.2?}) {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut log = EulerLog::new();
    let results = [
        run(1, "del Pezzo sweep", || del_pezzo_sweep(&mut log)),
        run(2, "eight-point special values", eight_points),
        run(3, "threefold ACM", higher_dimension),
        run(4, "simplicity census", simplicity_census),
        run(5, "family dimensions", family_dimensions),
        run(6, "Euler characteristics", || euler_characteristics(&log)),
        run(7, "Serre duality", serre_duality),
        run(8, "Serre correspondence", serre_correspondence),
        run(9, "negative controls", negative_controls),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
