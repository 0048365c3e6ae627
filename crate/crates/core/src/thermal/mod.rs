//! Finite-temperature structure: fraktur operators, the Bogoliubov map to
//! thermal quasi-particles, and thermal expectations by Wick reduction in
//! the c-basis.

mod bogoliubov;
mod cbasis;
mod fraktur;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use bogoliubov::{
    b_bar_doublet, b_doublet, c_bar_doublet, c_doublet, c_in_fraktur, fraktur_in_c, BogoliubovMatrix,
};
pub use cbasis::{c_expectation, c_normal_order, CBasisRules, CGenerator, CKind, CPoly};
pub use fraktur::{
    expand_fraktur, fb, fb_dag, fraktur_words, tfb, tfb_dag, FrakturGenerator, FrakturKind, FrakturPoly,
};

use crate::algebra::{Algebra, OperatorPoly};
use crate::error::{ScalarError, ThermalError};
use crate::poly::{Poly, Symbol};
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

/// Mean occupation: kept as the symbol `nbar` or fixed to an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nbar {
    Symbolic,
    Exact(BigRational),
}

impl Nbar {
    pub fn exact(num: i64, den: i64) -> Nbar {
        Nbar::Exact(BigRational::new(num.into(), den.into()))
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Nbar::Symbolic => None,
            Nbar::Exact(r) => r.to_f64(),
        }
    }
}

impl fmt::Display for Nbar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nbar::Symbolic => f.write_str("nbar"),
            Nbar::Exact(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Nbar {
    type Err = String;

    /// Accepts `nbar`, a fraction `p/q`, or a decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "nbar" || s == "symbolic" {
            return Ok(Nbar::Symbolic);
        }
        let bad = || format!("cannot read `{s}` as nbar (expected nbar, p/q or a decimal)");
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Nbar::Exact(BigRational::new(p, q)));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(digits, scale);
        Ok(Nbar::Exact(if neg { -r } else { r }))
    }
}

/// Statistics plus occupation, validated: `nbar >= 0`, and `nbar < 1` for fermions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThermalParams {
    flag: StatisticsFlag,
    nbar: Nbar,
}

impl ThermalParams {
    pub fn new(flag: StatisticsFlag, nbar: Nbar) -> Result<Self, ThermalError> {
        if let Nbar::Exact(r) = &nbar {
            if r.is_negative() {
                return Err(ThermalError::InvalidParams(format!("nbar = {r} is negative")));
            }
            if flag.is_fermion() && *r >= BigRational::one() {
                return Err(ThermalError::InvalidParams(format!(
                    "fermion occupation must satisfy nbar < 1, got {r}"
                )));
            }
        }
        Ok(ThermalParams { flag, nbar })
    }

    pub fn symbolic(flag: StatisticsFlag) -> Self {
        ThermalParams {
            flag,
            nbar: Nbar::Symbolic,
        }
    }

    pub fn flag(&self) -> StatisticsFlag {
        self.flag
    }

    pub fn nbar(&self) -> &Nbar {
        &self.nbar
    }

    /// Fixes `nbar` in a symbolic coefficient when the parameters are exact.
    pub fn specialize(&self, e: &ScalarExpr) -> Result<ScalarExpr, ScalarError> {
        match &self.nbar {
            Nbar::Symbolic => Ok(e.clone()),
            Nbar::Exact(r) => e.substitute_nbar(r),
        }
    }

    pub fn specialize_poly<G: Symbol>(&self, p: &Poly<G>) -> Result<Poly<G>, ScalarError> {
        p.try_map_coefficients(|c| self.specialize(c))
    }
}

/// Rewrites a fraktur polynomial in thermal quasi-particle operators.
pub fn to_c_basis(p: &FrakturPoly, params: &ThermalParams) -> Result<CPoly, ThermalError> {
    let flag = params.flag();
    let symbolic = p.substitute(|g| fraktur_in_c(flag, g.kind, g.slot));
    Ok(params.specialize_poly(&symbolic)?)
}

/// Rewrites a c-polynomial through fraktur operators (the forward map).
pub fn from_c_basis(p: &CPoly, params: &ThermalParams) -> Result<FrakturPoly, ThermalError> {
    let flag = params.flag();
    let symbolic = p.substitute(|g| c_in_fraktur(flag, g.kind, g.slot));
    Ok(params.specialize_poly(&symbolic)?)
}

/// `<| p |>` in the thermal vacuum, normalised to `<|>` = 1.
pub fn thermal_expectation(p: &FrakturPoly, params: &ThermalParams) -> Result<ScalarExpr, ThermalError> {
    let flag = params.flag();
    let c = p.substitute(|g| fraktur_in_c(flag, g.kind, g.slot));
    Ok(params.specialize(&c_expectation(&c, flag))?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CRelation {
    pub left: String,
    pub right: String,
    pub value: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CRelationReport {
    pub statistics: StatisticsFlag,
    pub determinant: String,
    pub relations: Vec<CRelation>,
}

/// Expected `[x_k, y_l]_{-sigma}` among the c-operators.
pub fn expected_c_bracket(flag: StatisticsFlag, x: CKind, y: CKind, same_slot: bool) -> ScalarExpr {
    if !same_slot {
        return ScalarExpr::zero();
    }
    match (x, y) {
        (CKind::C, CKind::CVenus) | (CKind::TildeC, CKind::TildeCVenus) => ScalarExpr::one(),
        (CKind::CVenus, CKind::C) | (CKind::TildeCVenus, CKind::TildeC) => -flag.sigma_expr(),
        _ => ScalarExpr::zero(),
    }
}

/// Computes all graded brackets among `{c, cv, tc, tcv}` through the level-0
/// algebra, for equal and distinct slots, and checks them against the
/// canonical set. Also checks `det B = 1` and `B B^-1 = 1`.
pub fn verify_c_relations(flag: StatisticsFlag) -> Result<CRelationReport, ThermalError> {
    let alg = Algebra::new(flag);
    let b = BogoliubovMatrix::new(flag);
    let det = b.det();
    if !det.is_one() || b.mul(&BogoliubovMatrix::inverse(flag)) != BogoliubovMatrix::identity() {
        return Err(ThermalError::AlgebraInconsistency {
            pair: "det B".into(),
            residual: det.to_text(),
        });
    }
    let level0 = |kind: CKind, k: u32| expand_fraktur(&c_in_fraktur(flag, kind, k), flag);
    let mut relations = Vec::new();
    for (k, l) in [(1u32, 1u32), (1, 2), (2, 1)] {
        for x in CKind::ALL {
            for y in CKind::ALL {
                let bracket = alg.graded_commutator(&level0(x, k), &level0(y, l))?;
                let expected = expected_c_bracket(flag, x, y, k == l);
                let residual = &bracket - &Poly::scalar(expected.clone());
                let pair = format!("[{}[{k}], {}[{l}]]", x.name(), y.name());
                if !residual.is_zero() {
                    return Err(ThermalError::AlgebraInconsistency {
                        pair,
                        residual: residual.to_text(),
                    });
                }
                relations.push(CRelation {
                    left: format!("{}[{k}]", x.name()),
                    right: format!("{}[{l}]", y.name()),
                    value: bracket.to_text(),
                    expected: expected.to_text(),
                });
            }
        }
    }
    Ok(CRelationReport {
        statistics: flag,
        determinant: det.to_text(),
        relations,
    })
}

/// Access to a concrete representation with thermal bra and ket, used to
/// measure how well they satisfy the thermal state conditions.
pub trait RepresentationHook {
    fn slots(&self) -> u32;

    /// `|| <| op ||`.
    fn bra_residual(&self, op: &OperatorPoly) -> f64;

    /// `|| op |> ||`.
    fn ket_residual(&self, op: &OperatorPoly) -> f64;

    /// A priori bound on the residuals caused by truncation (0 when exact).
    fn truncation_estimate(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TscReport {
    pub bra: Vec<f64>,
    pub ket: Vec<f64>,
    pub max_residual: f64,
    pub truncation_estimate: f64,
}

/// The bra condition `<| (tfbd_k - tau* fb_k)` and the ket condition
/// `(tfb_k - tau nbar/(1 + sigma nbar) fbd_k) |>`, as level-0 operators.
pub fn tsc_operators(params: &ThermalParams, k: u32) -> Result<(OperatorPoly, OperatorPoly), ThermalError> {
    let flag = params.flag();
    let bra = &tfb_dag(k) - &fb(k).scale(&flag.tau().conj());
    let ratio = &(&flag.tau() * &ScalarExpr::nbar()) * &ScalarExpr::inverse_one_plus(flag.sigma(), 1);
    let ket = &tfb(k) - &fb_dag(k).scale(&ratio);
    let bra = params.specialize_poly(&expand_fraktur(&bra, flag))?;
    let ket = params.specialize_poly(&expand_fraktur(&ket, flag))?;
    Ok((bra, ket))
}

pub fn check_tsc_residual(params: &ThermalParams, hook: &dyn RepresentationHook) -> Result<TscReport, ThermalError> {
    if params.nbar() == &Nbar::Symbolic {
        return Err(ThermalError::InvalidParams("residuals need a numeric nbar".into()));
    }
    let mut bra = Vec::new();
    let mut ket = Vec::new();
    for k in 1..=hook.slots() {
        let (b, kt) = tsc_operators(params, k)?;
        bra.push(hook.bra_residual(&b));
        ket.push(hook.ket_residual(&kt));
    }
    let max_residual = bra.iter().chain(&ket).fold(0.0f64, |m, &x| m.max(x));
    Ok(TscReport {
        bra,
        ket,
        max_residual,
        truncation_estimate: hook.truncation_estimate(),
    })
}
