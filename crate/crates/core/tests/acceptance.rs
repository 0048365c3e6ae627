//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qstoch::algebra::{solve_reflection_constraints, Algebra};
use qstoch::fockrep::{verify_suite, LatticeConfig, ThermalRepresentation, VerifyOptions};
use qstoch::ito::{thermal_ito_table, vacuum_ito_table, Increment, RouteRegistry};
use qstoch::scalar::{gauss, rational};
use qstoch::thermal::{
    c_in_fraktur, expand_fraktur, fb, fb_dag, fraktur_words, thermal_expectation, verify_c_relations, BogoliubovMatrix,
    CKind, FrakturGenerator, FrakturKind, FrakturPoly, Nbar, ThermalParams,
};
use qstoch::{Poly, ScalarExpr, StatisticsFlag};

const STATS: [StatisticsFlag; 2] = [StatisticsFlag::Boson, StatisticsFlag::Fermion];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dt() -> ScalarExpr {
    ScalarExpr::dt()
}

fn vacuum_table() -> Outcome {
    use Increment::*;
    for flag in STATS {
        let t = vacuum_ito_table(flag).map_err(|e| e.to_string())?;
        for r in Increment::VACUUM {
            for c in Increment::VACUUM {
                let want = if (r, c) == (DB, DBDag) {
                    dt()
                } else {
                    ScalarExpr::zero()
                };
                let got = t.get(r, c).unwrap();
                ensure(*got == want, || {
                    format!("{flag} ({}, {}) = {got}, want {want}", r.label(), c.label())
                })?;
            }
        }
    }
    Ok("(dB, dBd) = dt and 8 zeros for both statistics".into())
}

/// The finite-temperature table written out entry by entry.
fn expected_thermal(flag: StatisticsFlag, r: Increment, c: Increment) -> ScalarExpr {
    use Increment::*;
    let n = ScalarExpr::nbar();
    let tau = flag.tau();
    let sigma = flag.sigma_expr();
    let one_plus = &ScalarExpr::one() + &(&sigma * &n);
    let coeff = match (r, c) {
        (DB, DBDag) | (DTildeB, DTildeBDag) => one_plus,
        (DBDag, DB) | (DTildeBDag, DTildeB) => n,
        (DB, DTildeB) => &tau * &n,
        (DBDag, DTildeBDag) => &tau * &one_plus,
        (DTildeB, DB) => &(&sigma * &tau) * &n,
        (DTildeBDag, DBDag) => &(&sigma * &tau) * &one_plus,
        _ => ScalarExpr::zero(),
    };
    &coeff * &dt()
}

fn thermal_table() -> Outcome {
    let registry = RouteRegistry::with_builtin();
    for flag in STATS {
        let params = ThermalParams::symbolic(flag);
        let t = thermal_ito_table(&params).map_err(|e| e.to_string())?;
        let mut nonzero = 0;
        for r in Increment::THERMAL {
            for c in Increment::THERMAL {
                let want = expected_thermal(flag, r, c);
                let got = t.get(r, c).unwrap();
                ensure(*got == want, || {
                    format!("{flag} ({}, {}) = {got}, want {want}", r.label(), c.label())
                })?;
                nonzero += usize::from(!want.is_zero());
            }
        }
        ensure(nonzero == 8, || format!("{flag}: {nonzero} nonzero entries"))?;
        let alt = registry.derive("c-moments", &params).map_err(|e| e.to_string())?;
        ensure(alt == t, || format!("{flag}: c-moments route disagrees"))?;
    }
    Ok("25 entries (8 nonzero, 17 zero) for both statistics, two routes agree".into())
}

fn constraints() -> Outcome {
    for flag in STATS {
        let s = solve_reflection_constraints(flag);
        ensure((s.sigma_lt, s.sigma_gt) == (flag.sigma(), 1), || {
            format!("{flag}: got ({}, {})", s.sigma_lt, s.sigma_gt)
        })?;
        let solutions: Vec<_> = s.candidates.iter().filter(|c| c.is_solution()).collect();
        ensure(s.candidates.len() == 4 && solutions.len() == 1, || {
            format!("{flag}: {solutions:?}")
        })?;
        for c in &s.candidates {
            ensure(c.derived_ok == c.is_solution(), || {
                format!("{flag}: rewrite disagrees on {c:?}")
            })?;
        }
    }
    Ok("(sigma_<, sigma_>) = (sigma, 1) uniquely among 4 candidates".into())
}

fn bogoliubov_canonical() -> Outcome {
    let mut checked = 0;
    for flag in STATS {
        let b = BogoliubovMatrix::new(flag);
        ensure(b.det().is_one(), || format!("{flag}: det B = {}", b.det()))?;
        verify_c_relations(flag).map_err(|e| e.to_string())?;
        let alg = Algebra::new(flag);
        let sigma = flag.sigma_expr();
        let ops = [CKind::C, CKind::CVenus, CKind::TildeC, CKind::TildeCVenus];
        for (k, l) in [(1u32, 1u32), (1, 2)] {
            for x in ops {
                for y in ops {
                    let p = expand_fraktur(&c_in_fraktur(flag, x, k), flag);
                    let q = expand_fraktur(&c_in_fraktur(flag, y, l), flag);
                    let br = alg.graded_commutator(&p, &q).map_err(|e| e.to_string())?;
                    let want = match (x, y) {
                        _ if k != l => ScalarExpr::zero(),
                        (CKind::C, CKind::CVenus) | (CKind::TildeC, CKind::TildeCVenus) => ScalarExpr::one(),
                        (CKind::CVenus, CKind::C) | (CKind::TildeCVenus, CKind::TildeC) => -&sigma,
                        _ => ScalarExpr::zero(),
                    };
                    ensure(br == Poly::scalar(want.clone()), || {
                        format!("{flag} [{}[{k}], {}[{l}]] = {br}, want {want}", x.name(), y.name())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("det B = 1, {checked} brackets canonical"))
}

fn second_moment() -> Outcome {
    for flag in STATS {
        let params = ThermalParams::symbolic(flag);
        for k in 1..=3 {
            for l in 1..=3 {
                let got = thermal_expectation(&(&fb_dag(k) * &fb(l)), &params).map_err(|e| e.to_string())?;
                let want = if k == l { ScalarExpr::nbar() } else { ScalarExpr::zero() };
                ensure(got == want, || format!("{flag} <fbd[{k}] fb[{l}]> = {got}"))?;
            }
        }
    }
    Ok("<fbd[k] fb[l]> = nbar delta(k, l) symbolically".into())
}

fn fermion_oracle() -> Outcome {
    let cfg = LatticeConfig::new(StatisticsFlag::Fermion, 4, 0.1);
    let start = Instant::now();
    let report = verify_suite(&cfg, 0.2, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let worst = report.checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    ensure(report.checks.iter().all(|c| c.pass && c.max_deviation < 1e-10), || {
        report.to_text()
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} checks, max deviation {worst:.2e}, {secs:.2} s",
        report.checks.len()
    ))
}

const THERMAL_CHECKS: [&str; 5] = [
    "thermal_vacuum",
    "tsc_residual",
    "second_moment",
    "ito_table",
    "c_moments",
];

fn boson_oracle() -> Outcome {
    let nbar: f64 = 0.2;
    let x = nbar / (1.0 + nbar);
    let mut residuals = Vec::new();
    for cutoff in [6usize, 8, 10, 12] {
        let cfg = LatticeConfig::new(StatisticsFlag::Boson, 2, 0.1).with_cutoff(cutoff);
        let report = verify_suite(&cfg, nbar, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        let worst = THERMAL_CHECKS
            .iter()
            .map(|n| report.check(n).expect("thermal check present").max_deviation)
            .fold(0.0, f64::max);
        residuals.push(worst);
        if cutoff == 12 {
            let tol = f64::max(1e-8, 10.0 * x.powi(12));
            ensure(worst < tol, || format!("cutoff 12: deviation {worst:.3e} >= {tol:.3e}"))?;
            let algebraic = report
                .checks
                .iter()
                .filter(|c| !THERMAL_CHECKS.contains(&c.name.as_str()));
            for c in algebraic {
                ensure(c.pass, || format!("{} failed: {:.3e}", c.name, c.max_deviation))?;
            }
        }
    }
    ensure(residuals.windows(2).all(|w| w[1] < w[0]), || {
        format!("not monotone: {}", sci(&residuals))
    })?;
    Ok(format!(
        "thermal deviation over cutoffs 6, 8, 10, 12: {}",
        sci(&residuals)
    ))
}

fn sci(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(", ")
}

fn random_fraktur(rng: &mut ChaCha8Rng, slots: u32) -> FrakturPoly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(1..=4);
        let word = (0..len)
            .map(|_| {
                let kind = FrakturKind::ALL[rng.gen_range(0..4)];
                FrakturGenerator::new(kind, rng.gen_range(1..=slots))
            })
            .collect();
        let (re, im) = loop {
            let c = (rng.gen_range(-3..=3), rng.gen_range(-2..=2));
            if c != (0, 0) {
                break c;
            }
        };
        p = &p + &Poly::term(ScalarExpr::from_gauss(gauss(rational(re, 1), rational(im, 1))), word);
    }
    p
}

fn corpus(seed: u64, slots: u32, size: usize) -> Vec<FrakturPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| random_fraktur(&mut rng, slots)).collect()
}

fn coefficient_scale(p: &FrakturPoly) -> f64 {
    p.terms().map(|(_, c)| c.eval(0.0, 1.0).norm()).sum()
}

/// Largest `|symbolic - numeric| / tolerance` over a corpus.
fn cross_check(
    th: &ThermalRepresentation,
    flag: StatisticsFlag,
    nbar: &str,
    polys: &[FrakturPoly],
    tol: impl Fn(&FrakturPoly) -> f64,
) -> Result<f64, String> {
    let params = ThermalParams::new(flag, nbar.parse::<Nbar>()?).map_err(|e| e.to_string())?;
    let n = params.nbar().to_f64().unwrap();
    let mut worst: f64 = 0.0;
    for p in polys {
        let symbolic = thermal_expectation(p, &params).map_err(|e| e.to_string())?.eval(n, 0.1);
        let numeric: Complex64 = th.expectation(&fraktur_words(p)).map_err(|e| e.to_string())?;
        let ratio = (symbolic - numeric).norm() / tol(p);
        ensure(ratio <= 1.0, || {
            format!("{flag} nbar = {nbar}: {p} symbolic {symbolic} numeric {numeric}")
        })?;
        worst = worst.max(ratio);
    }
    Ok(worst)
}

fn cross_oracle() -> Outcome {
    let fermions = corpus(2024, 3, 60);
    let bosons = corpus(2025, 2, 60);
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for nbar in ["0.2", "0.45"] {
        let cfg = LatticeConfig::new(StatisticsFlag::Fermion, 3, 0.1);
        let th = ThermalRepresentation::build(cfg, nbar.parse().unwrap()).map_err(|e| e.to_string())?;
        worst = worst.max(cross_check(&th, StatisticsFlag::Fermion, nbar, &fermions, |p| {
            1e-10 * coefficient_scale(p).max(1.0)
        })?);
        cases += fermions.len();
    }
    let cutoff = 12;
    for nbar in ["0", "0.2", "0.5"] {
        let n: f64 = nbar.parse().unwrap();
        let cfg = LatticeConfig::new(StatisticsFlag::Boson, 2, 0.1)
            .with_cutoff(cutoff)
            .with_headroom(4);
        let th = ThermalRepresentation::build(cfg, n).map_err(|e| e.to_string())?;
        // a word with 4 ladders weighs occupations up to ~ n^2 in the truncated tail
        let d = cutoff as f64;
        let tail = (n / (1.0 + n)).powi(cutoff as i32) * (d + 4.0).powi(2) * (1.0 + n).powi(2);
        worst = worst.max(cross_check(&th, StatisticsFlag::Boson, nbar, &bosons, |p| {
            coefficient_scale(p) * f64::max(1e-10, 4.0 * tail)
        })?);
        cases += bosons.len();
    }
    Ok(format!("{cases} cases agree, worst deviation/tolerance {worst:.2e}"))
}

fn zero_temperature() -> Outcome {
    for flag in STATS {
        let thermal = thermal_ito_table(&ThermalParams::symbolic(flag)).map_err(|e| e.to_string())?;
        let at_zero = thermal.substitute_nbar(&rational(0, 1)).map_err(|e| e.to_string())?;
        let block = at_zero.restrict(&Increment::VACUUM).ok_or("missing labels")?;
        let vacuum = vacuum_ito_table(flag).map_err(|e| e.to_string())?;
        ensure(block.entries() == vacuum.entries(), || {
            format!("{flag}:\n{}\n{}", block.to_text(), vacuum.to_text())
        })?;
    }
    Ok("nbar = 0 non-tilde block equals the vacuum table".into())
}

fn determinism() -> Outcome {
    let registry = RouteRegistry::with_builtin();
    for flag in STATS {
        for nbar in ["nbar", "1/5"] {
            let params = ThermalParams::new(flag, nbar.parse::<Nbar>()?).map_err(|e| e.to_string())?;
            let a = registry.derive("wick", &params).map_err(|e| e.to_string())?.to_json();
            let b = registry.derive("wick", &params).map_err(|e| e.to_string())?.to_json();
            ensure(a == b, || format!("{flag} table JSON differs"))?;
        }
    }
    let configs = [
        (LatticeConfig::new(StatisticsFlag::Fermion, 2, 0.1), 0.2),
        (LatticeConfig::new(StatisticsFlag::Boson, 2, 0.1).with_cutoff(6), 0.2),
    ];
    for (cfg, nbar) in configs {
        let a = verify_suite(&cfg, nbar, &VerifyOptions::default())
            .map_err(|e| e.to_string())?
            .to_json();
        let b = verify_suite(&cfg, nbar, &VerifyOptions::default())
            .map_err(|e| e.to_string())?
            .to_json();
        ensure(a == b, || format!("{} verify JSON differs", cfg.statistics))?;
    }
    Ok("table and verify JSON byte-identical across runs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("vacuum Itô table", vacuum_table),
        ("thermal Itô table", thermal_table),
        ("reflection constraint solve", constraints),
        ("Bogoliubov canonicity", bogoliubov_canonical),
        ("thermal second moment", second_moment),
        ("fermion numeric oracle", fermion_oracle),
        ("boson numeric oracle", boson_oracle),
        ("symbolic vs numeric expectations", cross_oracle),
        ("zero-temperature degeneration", zero_temperature),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
