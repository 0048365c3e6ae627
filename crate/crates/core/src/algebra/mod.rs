//! Level-0 operator algebra on the time lattice: slot modes, their tilde
//! copies, the reflections `J_k`, and `tau`.

mod generator;
mod rules;

use num_complex::Complex64;
use serde::Serialize;

pub use generator::{Generator, Kind, OperatorPoly};
pub use rules::{reflection_sign, Level0Rules};

use crate::error::AlgebraError;
use crate::poly::{Poly, Symbol};
use crate::rewrite;
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

/// An algebra session: the statistics flag and, optionally, the lattice size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Algebra {
    flag: StatisticsFlag,
    slots: Option<u32>,
}

impl Algebra {
    pub fn new(flag: StatisticsFlag) -> Self {
        Algebra { flag, slots: None }
    }

    pub fn with_slots(flag: StatisticsFlag, slots: u32) -> Self {
        Algebra {
            flag,
            slots: Some(slots),
        }
    }

    pub fn flag(&self) -> StatisticsFlag {
        self.flag
    }

    pub fn slots(&self) -> Option<u32> {
        self.slots
    }

    pub fn rules(&self) -> Level0Rules {
        Level0Rules::new(self.flag)
    }

    pub fn check<G: Symbol>(&self, p: &Poly<G>) -> Result<(), AlgebraError> {
        if let (Some(n), Some(max)) = (self.slots, p.max_slot()) {
            if max > n {
                return Err(AlgebraError::SlotOutOfRange { slot: max, slots: n });
            }
        }
        Ok(())
    }

    pub fn normal_order(&self, p: &OperatorPoly) -> OperatorPoly {
        rewrite::normal_order(&self.rules(), p)
    }

    pub fn is_normal(&self, p: &OperatorPoly) -> bool {
        rewrite::is_normal(&self.rules(), p)
    }

    /// `[x, y]_{-sigma} = x y - sigma y x`, normal ordered.
    pub fn graded_commutator(&self, x: &OperatorPoly, y: &OperatorPoly) -> Result<OperatorPoly, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let raw = &(x * y) - &(y * x).scale(&self.flag.sigma_expr());
        Ok(self.normal_order(&raw))
    }

    /// Plain commutator `x y - y x`, normal ordered.
    pub fn commutator(&self, x: &OperatorPoly, y: &OperatorPoly) -> Result<OperatorPoly, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.normal_order(&(&(x * y) - &(y * x))))
    }

    /// Expectation in the (doubled) Fock vacuum.
    ///
    /// Creators annihilate the bra, annihilators the ket, and reflections fix
    /// both. A surviving `tau` with nothing left to act on has no defined
    /// vacuum value and is rejected.
    pub fn vacuum_expectation(&self, p: &OperatorPoly) -> Result<ScalarExpr, AlgebraError> {
        self.check(p)?;
        let normal = self.normal_order(p);
        let mut acc = ScalarExpr::zero();
        for (w, c) in normal.terms() {
            if w.0.iter().any(|g| g.kind().is_ladder()) {
                continue;
            }
            if w.0.iter().any(|g| g.kind() == Kind::Tau) {
                return Err(AlgebraError::UnsupportedExpectation(format!(
                    "vacuum action of tau is not defined (term `{}`)",
                    Poly::term(c.clone(), w.0.clone())
                )));
            }
            acc += c;
        }
        Ok(acc)
    }

    /// Antilinear tilde conjugation.
    pub fn tilde_conjugate(&self, p: &OperatorPoly) -> OperatorPoly {
        p.tilde(self.flag)
    }

    /// Matrix element `(e(f)| p |e(g))` between boson exponential vectors.
    ///
    /// `f` and `g` are sampled per slot. On the lattice the slot mode `a_k`
    /// has eigenvalue `sqrt(dt) g(k)` on `|e(g))` and `(e(f)| a†_k` gives
    /// `sqrt(dt) f*(k)`; the overlap is `exp(sum_l f*(l) g(l) dt)`.
    pub fn exp_vector_matrix_element(
        &self,
        f: &[Complex64],
        g: &[Complex64],
        p: &OperatorPoly,
        dt: f64,
        nbar: Option<f64>,
    ) -> Result<Complex64, AlgebraError> {
        if self.flag.is_fermion() {
            return Err(AlgebraError::UnsupportedStatistics("fermion"));
        }
        if f.len() != g.len() {
            return Err(AlgebraError::Configuration(format!(
                "amplitude lengths differ ({} vs {})",
                f.len(),
                g.len()
            )));
        }
        let n = f.len() as u32;
        if let Some(max) = p.max_slot() {
            if max > n {
                return Err(AlgebraError::SlotOutOfRange { slot: max, slots: n });
            }
        }
        let overlap = f.iter().zip(g).map(|(a, b)| a.conj() * b * dt).sum::<Complex64>().exp();
        let root = dt.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in self.normal_order(p).terms() {
            if c.has_nbar() && nbar.is_none() {
                return Err(AlgebraError::Configuration(
                    "coefficient depends on nbar but no value was given".into(),
                ));
            }
            let mut value = c.eval(nbar.unwrap_or(0.0), dt);
            for gen in &w.0 {
                let k = gen.slot_index().unwrap_or(0) as usize;
                value *= match gen.kind() {
                    Kind::ADag => f[k - 1].conj() * root,
                    Kind::A => g[k - 1] * root,
                    Kind::J | Kind::TildeJ => Complex64::new(1.0, 0.0),
                    _ => {
                        return Err(AlgebraError::UnsupportedExpectation(
                            "exponential vectors live in the single (non-tilde) space".into(),
                        ))
                    }
                };
            }
            acc += value;
        }
        Ok(acc * overlap)
    }
}

/// One candidate `(sigma_<, sigma_>)` for the reflection `U_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionCandidate {
    pub sigma_lt: i8,
    pub sigma_gt: i8,
    /// `1 - sigma*sigma_<` from equal-time graded commutativity of `J` and `b`.
    pub equal_time: i8,
    /// `sigma_> sigma_< - sigma` from the canonical relation of the fraktur operators.
    pub canonical: i8,
    /// Both brackets computed by the rewrite system vanish (resp. give delta).
    pub derived_ok: bool,
}

impl ReflectionCandidate {
    pub fn is_solution(&self) -> bool {
        self.equal_time == 0 && self.canonical == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionSolution {
    pub statistics: StatisticsFlag,
    pub sigma_lt: i8,
    pub sigma_gt: i8,
    pub candidates: Vec<ReflectionCandidate>,
}

/// Searches all four sign pairs for the reflection that makes `J_t b_t`
/// graded-commute at equal times and turns `J_t b_t` into canonical modes.
///
/// Each candidate is checked twice: by the closed-form constraint equations
/// and by normal ordering the corresponding brackets with the candidate's
/// reflection law on a two-slot lattice.
pub fn solve_reflection_constraints(flag: StatisticsFlag) -> ReflectionSolution {
    let sigma = flag.sigma();
    let mut candidates = Vec::with_capacity(4);
    for sigma_lt in [1i8, -1] {
        for sigma_gt in [1i8, -1] {
            candidates.push(ReflectionCandidate {
                sigma_lt,
                sigma_gt,
                equal_time: 1 - sigma * sigma_lt,
                canonical: sigma_gt * sigma_lt - sigma,
                derived_ok: derived_constraints_hold(flag, sigma_lt, sigma_gt),
            });
        }
    }
    let solutions: Vec<&ReflectionCandidate> = candidates.iter().filter(|c| c.is_solution()).collect();
    assert_eq!(solutions.len(), 1, "constraint system must have a unique solution");
    ReflectionSolution {
        statistics: flag,
        sigma_lt: solutions[0].sigma_lt,
        sigma_gt: solutions[0].sigma_gt,
        candidates,
    }
}

fn derived_constraints_hold(flag: StatisticsFlag, sigma_lt: i8, sigma_gt: i8) -> bool {
    let rules = Level0Rules::with_reflection(flag, sigma_lt, sigma_gt);
    let sigma = flag.sigma_expr();
    let bracket =
        |x: &OperatorPoly, y: &OperatorPoly| rewrite::normal_order(&rules, &(&(x * y) - &(y * x).scale(&sigma)));
    let fb = |k: u32| Poly::word(vec![Generator::j(k), Generator::a(k)]);
    let fb_dag = |k: u32| Poly::word(vec![Generator::a_dag(k), Generator::j(k)]);
    let equal_time = bracket(&Generator::j(2).poly(), &Generator::a(2).poly()).is_zero();
    let canonical = (1..=2).all(|k| {
        (1..=2).all(|l| {
            let expected = if k == l { Poly::one() } else { Poly::zero() };
            bracket(&fb(k), &fb_dag(l)) == expected
        })
    });
    equal_time && canonical
}
