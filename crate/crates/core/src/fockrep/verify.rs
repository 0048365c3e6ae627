use std::collections::HashMap;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{reflection_sign, Algebra, Generator, OperatorPoly};
use crate::error::FockError;
use crate::ito::{expected_c_moment, thermal_ito_table, CIncrement, Increment, ItoTable};
use crate::poly::Poly;
use crate::scalar::{gauss, rational, ScalarExpr};
use crate::statistics::StatisticsFlag;
use crate::thermal::{
    check_tsc_residual, expected_c_bracket, fraktur_words, CKind, FrakturGenerator, FrakturKind, Nbar, ThermalParams,
};

use super::ops::{max_ladders, LatticeConfig, Representation};
use super::vacuum::{c_operator, norm, ThermalRepresentation};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub relation: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportConfig {
    pub statistics: StatisticsFlag,
    pub slots: u32,
    pub dt: f64,
    pub nbar: f64,
    pub cutoff: usize,
    pub headroom: usize,
    pub dimension: u128,
    pub table_slot: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: ReportConfig,
    pub checks: Vec<CheckResult>,
    pub wall_time: Option<f64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "{} lattice: N = {}, dt = {}, nbar = {}, dimension = {}\n",
            c.statistics, c.slots, c.dt, c.nbar, c.dimension
        );
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        out.push_str(&format!(
            "{:w$}  {:>10}  {:>10}  result\n",
            "check", "deviation", "tolerance"
        ));
        for ch in &self.checks {
            out.push_str(&format!(
                "{:w$}  {:>10.3e}  {:>10.3e}  {}\n",
                ch.name,
                ch.max_deviation,
                ch.tolerance,
                if ch.pass { "pass" } else { "FAIL" }
            ));
        }
        if let Some(t) = self.wall_time {
            out.push_str(&format!("wall time {t:.2} s\n"));
        }
        out.push_str(if self.passed() {
            "all checks passed\n"
        } else {
            "some checks FAILED\n"
        });
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| check | relation | deviation | tolerance | result |\n|---|---|---|---|---|\n");
        for ch in &self.checks {
            out.push_str(&format!(
                "| {} | {} | {:.3e} | {:.3e} | {} |\n",
                ch.name,
                ch.relation,
                ch.max_deviation,
                ch.tolerance,
                if ch.pass { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Overrides every tolerance when set.
    pub tol: Option<f64>,
    pub timing: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: None,
            timing: false,
            seed: 7,
        }
    }
}

/// Numeric `<dX dY>/dt` at one slot, truncated like the symbolic table.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericTable {
    pub labels: Vec<Increment>,
    pub entries: Vec<Vec<Complex64>>,
}

impl NumericTable {
    pub fn get(&self, r: Increment, c: Increment) -> Complex64 {
        let i = self.labels.iter().position(|&l| l == r).expect("row label");
        let j = self.labels.iter().position(|&l| l == c).expect("col label");
        self.entries[i][j]
    }

    /// Largest `|numeric - symbolic/dt|` with the symbolic table at `nbar`.
    pub fn deviation_from(&self, table: &ItoTable, nbar: f64, dt: f64) -> f64 {
        let mut worst = 0.0f64;
        for &r in &self.labels {
            for &c in &self.labels {
                let sym = table.get(r, c).map(|e| e.eval(nbar, dt) / dt).unwrap_or(ZERO);
                worst = worst.max((self.get(r, c) - sym).norm());
            }
        }
        worst
    }
}

fn slot_op(kind: FrakturKind, k: u32) -> OperatorPoly {
    fraktur_words(&FrakturGenerator::new(kind, k).poly())
}

/// The 5x5 table from bra-ket matrix elements at slot `k`. The `(dt, dt)`
/// entry is of second order and set to zero; the other `dt` entries are
/// `sqrt(dt) <X>`.
pub fn numeric_ito_table(th: &ThermalRepresentation, k: u32) -> Result<NumericTable, FockError> {
    let dt = th.representation().config().dt;
    let labels = Increment::THERMAL.to_vec();
    let mut entries = Vec::new();
    for &r in &labels {
        let mut row = Vec::new();
        for &c in &labels {
            let v = match (r.fraktur_kind(), c.fraktur_kind()) {
                (Some(x), Some(y)) => th.expectation(&(&slot_op(x, k) * &slot_op(y, k)))?,
                (Some(x), None) | (None, Some(x)) => th.expectation(&slot_op(x, k))? * dt.sqrt(),
                (None, None) => ZERO,
            };
            row.push(v);
        }
        entries.push(row);
    }
    Ok(NumericTable { labels, entries })
}

fn g(x: Generator) -> OperatorPoly {
    x.poly()
}

fn bracket(flag: StatisticsFlag, x: &OperatorPoly, y: &OperatorPoly) -> OperatorPoly {
    &(x * y) - &(y * x).scale(&flag.sigma_expr())
}

fn plain(x: &OperatorPoly, y: &OperatorPoly) -> OperatorPoly {
    &(x * y) - &(y * x)
}

struct Suite<'a> {
    rep: &'a Representation,
    th: &'a ThermalRepresentation,
    flag: StatisticsFlag,
    n: u32,
    nbar: f64,
}

type Check<'a> = (
    &'static str,
    &'static str,
    bool,
    Box<dyn Fn(&Suite) -> Result<f64, FockError> + Sync + 'a>,
);

impl Suite<'_> {
    fn identity(&self, lhs: &OperatorPoly, value: f64) -> Result<f64, FockError> {
        self.identity_c(lhs, Complex64::new(value, 0.0))
    }

    fn identity_c(&self, lhs: &OperatorPoly, value: Complex64) -> Result<f64, FockError> {
        let cols = self.rep.exact_columns(max_ladders(lhs));
        Ok(self.rep.evaluate(lhs, self.nbar)?.deviation_from_scalar(value, &cols))
    }

    fn adjoint(&self, p: &OperatorPoly, q: &OperatorPoly) -> Result<f64, FockError> {
        let cols = self.rep.exact_columns(max_ladders(p).max(max_ladders(q)));
        let ep = self.rep.evaluate(p, self.nbar)?.entries(&cols);
        let all: Vec<usize> = (0..self.rep.dim()).collect();
        let eq: HashMap<(u32, u32), Complex64> = self.rep.evaluate(q, self.nbar)?.entries(&all);
        let mut worst = 0.0f64;
        for (&(r, c), v) in &ep {
            let w = eq.get(&(c, r)).copied().unwrap_or(ZERO).conj();
            worst = worst.max((v - w).norm());
        }
        for (&(r, c), v) in &eq {
            if cols.contains(&(r as usize)) && !ep.contains_key(&(c, r)) {
                worst = worst.max(v.norm());
            }
        }
        Ok(worst)
    }

    fn pairs(&self) -> Vec<(u32, u32)> {
        (1..=self.n).flat_map(|k| (1..=self.n).map(move |l| (k, l))).collect()
    }
}

fn checks<'a>(seed: u64) -> Vec<Check<'a>> {
    vec![
        (
            "fraktur_canonical",
            "canonical relations of the fraktur operators",
            false,
            Box::new(|s: &Suite| {
                let mut w = 0.0f64;
                for (k, l) in s.pairs() {
                    let d = if k == l { 1.0 } else { 0.0 };
                    for (x, y) in [
                        (FrakturKind::Fb, FrakturKind::FbDag),
                        (FrakturKind::TildeFb, FrakturKind::TildeFbDag),
                    ] {
                        w = w.max(s.identity(&bracket(s.flag, &slot_op(x, k), &slot_op(y, l)), d)?);
                        w = w.max(s.identity(&bracket(s.flag, &slot_op(x, k), &slot_op(x, l)), 0.0)?);
                    }
                }
                Ok(w)
            }),
        ),
        (
            "slot_modes",
            "commutation relations of the slot modes",
            false,
            Box::new(|s: &Suite| {
                let mut w = 0.0f64;
                for (k, l) in s.pairs() {
                    let (a, ad) = (g(Generator::a(k)), g(Generator::a_dag(l)));
                    if k == l {
                        w = w.max(s.identity(&bracket(s.flag, &a, &ad), 1.0)?);
                        if s.flag.is_fermion() {
                            w = w.max(s.identity(&(&a * &a), 0.0)?);
                        }
                    } else {
                        w = w.max(s.identity(&plain(&a, &ad), 0.0)?);
                        w = w.max(s.identity(&plain(&a, &g(Generator::a(l))), 0.0)?);
                    }
                }
                Ok(w)
            }),
        ),
        (
            "mixed_sector",
            "commutativity of tilde and non-tilde operators",
            false,
            Box::new(|s: &Suite| {
                let mut w = 0.0f64;
                for (k, l) in s.pairs() {
                    let a = g(Generator::a(k));
                    w = w.max(s.identity(&plain(&a, &g(Generator::ta(l))), 0.0)?);
                    w = w.max(s.identity(&plain(&a, &g(Generator::ta_dag(l))), 0.0)?);
                    w = w.max(s.identity(&plain(&g(Generator::j(k)), &g(Generator::ta(l))), 0.0)?);
                    w = w.max(s.identity(&plain(&g(Generator::tj(k)), &a), 0.0)?);
                }
                Ok(w)
            }),
        ),
        (
            "fraktur_cross_sector",
            "tau conditions between sectors",
            false,
            Box::new(|s: &Suite| {
                let mut w = 0.0f64;
                for (k, l) in s.pairs() {
                    let b = slot_op(FrakturKind::Fb, k);
                    w = w.max(s.identity(&bracket(s.flag, &b, &slot_op(FrakturKind::TildeFb, l)), 0.0)?);
                    w = w.max(s.identity(&bracket(s.flag, &b, &slot_op(FrakturKind::TildeFbDag, l)), 0.0)?);
                }
                Ok(w)
            }),
        ),
        (
            "reflection",
            "properties of the reflection process",
            false,
            Box::new(|s: &Suite| {
                let mut w = 0.0f64;
                let mut vac = vec![ZERO; s.rep.dim()];
                vac[0] = Complex64::new(1.0, 0.0);
                for (k, l) in s.pairs() {
                    let j = g(Generator::j(k));
                    w = w.max(s.identity(&(&j * &j), 1.0)?);
                    w = w.max(s.identity(&plain(&j, &g(Generator::j(l))), 0.0)?);
                    let u = reflection_sign(s.flag, k, l) as i64;
                    let a = g(Generator::a(l));
                    w = w.max(s.identity(&(&(&(&j * &a) * &j) - &a.scale(&ScalarExpr::from_int(u))), 0.0)?);
                    w = w.max(s.adjoint(&j, &j)?);
                    let jv = s.rep.apply(&j, s.nbar, &vac)?;
                    w = w.max(norm(&jv.iter().zip(&vac).map(|(x, y)| x - y).collect::<Vec<_>>()));
                    if k == l {
                        w = w.max(s.identity(&bracket(s.flag, &j, &a), 0.0)?);
                    }
                }
                Ok(w)
            }),
        ),
        (
            "tau",
            "properties of tau",
            false,
            Box::new(|s: &Suite| {
                let t = g(Generator::tau());
                let mut w = s.identity(&(&t * &t), s.flag.sigma() as f64)?;
                w = w.max(s.adjoint(&t, &t.scale(&s.flag.sigma_expr()))?);
                for k in 1..=s.n {
                    for x in [Generator::j(k), Generator::tj(k)] {
                        w = w.max(s.identity(&plain(&t, &g(x)), 0.0)?);
                    }
                    for x in [Generator::a(k), Generator::ta(k)] {
                        w = w.max(s.identity(&bracket(s.flag, &t, &g(x)), 0.0)?);
                    }
                }
                Ok(w)
            }),
        ),
        (
            "brownian",
            "generalized quantum Brownian motion",
            false,
            Box::new(|s: &Suite| {
                let dt = s.rep.config().dt;
                let sum = |p: u32, kind| {
                    let mut acc = Poly::zero();
                    for k in 1..=p {
                        acc = &acc + &slot_op(kind, k);
                    }
                    acc.scale(&ScalarExpr::sqrt_dt())
                };
                let mut w = 0.0f64;
                for (p, q) in s.pairs() {
                    let lhs = bracket(s.flag, &sum(p, FrakturKind::Fb), &sum(q, FrakturKind::FbDag));
                    w = w.max(s.identity(&lhs, p.min(q) as f64 * dt)?);
                }
                Ok(w)
            }),
        ),
        (
            "c_canonical",
            "canonicity of the Bogoliubov transformation",
            false,
            Box::new(|s: &Suite| {
                let mut w = 0.0f64;
                for (k, l) in s.pairs() {
                    for x in CKind::ALL {
                        for y in CKind::ALL {
                            let lhs = bracket(s.flag, &c_operator(s.flag, x, k), &c_operator(s.flag, y, l));
                            let e = expected_c_bracket(s.flag, x, y, k == l).eval(s.nbar, 1.0);
                            w = w.max(s.identity_c(&lhs, e)?);
                        }
                    }
                }
                Ok(w)
            }),
        ),
        (
            "normal_order",
            "normal ordering preserves operators",
            false,
            Box::new(move |s: &Suite| {
                let alg = Algebra::new(s.flag);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut w = 0.0f64;
                for _ in 0..12 {
                    let p = random_level0(&mut rng, s.n, 4);
                    let diff = &p - &alg.normal_order(&p);
                    w = w.max(s.identity(&diff, 0.0)?);
                }
                Ok(w)
            }),
        ),
        (
            "thermal_vacuum",
            "annihilation conditions of the thermal vacuums",
            true,
            Box::new(|s: &Suite| Ok(s.th.residual())),
        ),
        (
            "tsc_residual",
            "thermal state conditions",
            true,
            Box::new(|s: &Suite| {
                let params = params_at(s.flag, s.nbar)
                    .ok_or_else(|| FockError::InvalidConfig(format!("nbar = {} is not admissible", s.nbar)))?;
                let report = check_tsc_residual(&params, s.th)?;
                Ok(report.max_residual)
            }),
        ),
        (
            "second_moment",
            "thermal occupation",
            true,
            Box::new(|s: &Suite| {
                let mut w = 0.0f64;
                for (k, l) in s.pairs() {
                    let p = &slot_op(FrakturKind::FbDag, k) * &slot_op(FrakturKind::Fb, l);
                    let want = if k == l { s.nbar } else { 0.0 };
                    w = w.max((s.th.expectation(&p)? - want).norm());
                }
                Ok(w)
            }),
        ),
        (
            "ito_table",
            "finite-temperature Itô table",
            true,
            Box::new(|s: &Suite| {
                let table = thermal_ito_table(&ThermalParams::symbolic(s.flag))
                    .map_err(|e| FockError::InvalidConfig(format!("symbolic table failed: {e}")))?;
                let k = s.n.div_ceil(2);
                let numeric = numeric_ito_table(s.th, k)?;
                Ok(numeric.deviation_from(&table, s.nbar, s.rep.config().dt))
            }),
        ),
        (
            "c_moments",
            "moments of the C increments",
            true,
            Box::new(|s: &Suite| {
                let k = s.n.div_ceil(2);
                let mut w = 0.0f64;
                for x in CIncrement::ALL {
                    for y in CIncrement::ALL {
                        let p = &c_operator(s.flag, x.kind(), k) * &c_operator(s.flag, y.kind(), k);
                        let want = expected_c_moment(x, y).eval(s.nbar, 1.0);
                        w = w.max((s.th.expectation(&p)? - want).norm());
                    }
                }
                Ok(w)
            }),
        ),
    ]
}

/// `max(1e-8, 10 x^d, 2 (1 + nbar) d x^d)` with `x = nbar/(1 + nbar)`: the
/// truncated ket misses the geometric tail `x^d`, and moments weight the
/// tail by the occupation `~ d`.
pub fn boson_thermal_tolerance(cutoff: usize, nbar: f64) -> f64 {
    let tail = (nbar / (1.0 + nbar)).powi(cutoff as i32);
    let d = cutoff as f64;
    f64::max(1e-8, f64::max(10.0 * tail, 2.0 * (1.0 + nbar) * d * tail))
}

/// TSC residuals need exact parameters; the float is converted exactly.
fn params_at(flag: StatisticsFlag, nbar: f64) -> Option<ThermalParams> {
    let r = num_rational::BigRational::from_float(nbar)?;
    ThermalParams::new(flag, Nbar::Exact(r)).ok()
}

/// A random level-0 polynomial with small Gaussian-integer coefficients.
pub fn random_level0(rng: &mut ChaCha8Rng, slots: u32, max_len: usize) -> OperatorPoly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(1..=max_len);
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            let k = rng.gen_range(1..=slots);
            word.push(match rng.gen_range(0..7) {
                0 => Generator::a(k),
                1 => Generator::a_dag(k),
                2 => Generator::ta(k),
                3 => Generator::ta_dag(k),
                4 => Generator::j(k),
                5 => Generator::tj(k),
                _ => Generator::tau(),
            });
        }
        let c = gauss(rational(rng.gen_range(-3..=3), 1), rational(rng.gen_range(-2..=2), 1));
        p = &p + &Poly::term(ScalarExpr::from_gauss(c), word);
    }
    p
}

/// Runs every numeric check on a doubled lattice with a thermal vacuum.
pub fn verify_suite(cfg: &LatticeConfig, nbar: f64, opts: &VerifyOptions) -> Result<VerifyReport, FockError> {
    let start = Instant::now();
    let th = ThermalRepresentation::build(cfg.clone(), nbar)?;
    let suite = Suite {
        rep: th.representation(),
        th: &th,
        flag: cfg.statistics,
        n: cfg.slots,
        nbar,
    };
    let exact_tol = opts.tol.unwrap_or(1e-10);
    let thermal_tol = opts.tol.unwrap_or(match cfg.statistics {
        StatisticsFlag::Fermion => 1e-10,
        StatisticsFlag::Boson => boson_thermal_tolerance(cfg.cutoff, nbar),
    });
    let list = checks(opts.seed);
    let results = list
        .par_iter()
        .map(|(name, anchor, thermal, run)| {
            let dev = run(&suite)?;
            let tolerance = if *thermal { thermal_tol } else { exact_tol };
            Ok(CheckResult {
                name: name.to_string(),
                relation: anchor.to_string(),
                max_deviation: dev,
                tolerance,
                pass: dev.is_finite() && dev <= tolerance,
            })
        })
        .collect::<Result<Vec<_>, FockError>>()?;
    Ok(VerifyReport {
        config: ReportConfig {
            statistics: cfg.statistics,
            slots: cfg.slots,
            dt: cfg.dt,
            nbar,
            cutoff: cfg.cutoff,
            headroom: cfg.headroom,
            dimension: cfg.dim(),
            table_slot: cfg.slots.div_ceil(2),
        },
        checks: results,
        wall_time: opts.timing.then(|| start.elapsed().as_secs_f64()),
    })
}
