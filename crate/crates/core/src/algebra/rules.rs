//! Commutation rules of the level-0 lattice algebra.
//!
//! Slot modes of distinct slots or sectors commute; on one slot
//! `a a† = 1 + σ a† a`, and for fermions `a² = a†² = 0`. The reflection
//! `J_k` picks up `u(k,l) = σ` when passed through a ladder operator of the
//! same sector with slot `l <= k`, and `tau` (anti)commutes with every ladder
//! operator.

use super::generator::{Generator, Kind};
use crate::rewrite::{OrderingRules, PairAction};
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

#[derive(Clone, Copy, Debug)]
pub struct Level0Rules {
    pub flag: StatisticsFlag,
    /// Reflection sign for same-sector slots `l <= k` (sigma_< ).
    pub sigma_lt: i8,
    /// Reflection sign for same-sector slots `l > k` (sigma_> ).
    pub sigma_gt: i8,
}

/// Sign in `J_k x_l = u(k,l) x_l J_k` for a same-sector ladder operator `x_l`.
pub fn reflection_sign(flag: StatisticsFlag, k: u32, l: u32) -> i8 {
    if l <= k {
        flag.sigma()
    } else {
        1
    }
}

impl Level0Rules {
    /// Rules with the reflection fixed by the canonical solution (sigma, +1).
    pub fn new(flag: StatisticsFlag) -> Self {
        Level0Rules {
            flag,
            sigma_lt: flag.sigma(),
            sigma_gt: 1,
        }
    }

    /// Rules for an arbitrary candidate reflection `sigma_< P[0,t] + sigma_> P(t,inf)`.
    pub fn with_reflection(flag: StatisticsFlag, sigma_lt: i8, sigma_gt: i8) -> Self {
        Level0Rules {
            flag,
            sigma_lt,
            sigma_gt,
        }
    }

    fn u(&self, k: u32, l: u32) -> i8 {
        if l <= k {
            self.sigma_lt
        } else {
            self.sigma_gt
        }
    }

    fn exchange_sign(&self, x: &Generator, y: &Generator) -> i8 {
        let sigma = self.flag.sigma();
        let (kx, ky) = (x.kind(), y.kind());
        if kx.is_ladder() && ky.is_ladder() {
            let same_mode = kx.is_tilde() == ky.is_tilde() && slot_of(x) == slot_of(y);
            return if same_mode { sigma } else { 1 };
        }
        if (kx == Kind::Tau && ky.is_ladder()) || (ky == Kind::Tau && kx.is_ladder()) {
            return sigma;
        }
        let (refl, ladder) = match (kx.is_reflection(), ky.is_reflection()) {
            (true, false) if ky.is_ladder() => (x, y),
            (false, true) if kx.is_ladder() => (y, x),
            _ => return 1,
        };
        if refl.kind().is_tilde() == ladder.kind().is_tilde() {
            self.u(slot_of(refl), slot_of(ladder))
        } else {
            1
        }
    }
}

fn slot_of(g: &Generator) -> u32 {
    g.slot_index().unwrap_or(0)
}

impl OrderingRules for Level0Rules {
    type Gen = Generator;

    fn pair(&self, x: &Generator, y: &Generator) -> PairAction {
        if x == y {
            return match x.kind() {
                Kind::J | Kind::TildeJ => PairAction::Collapse(Some(ScalarExpr::one())),
                Kind::Tau => PairAction::Collapse(Some(self.flag.sigma_expr())),
                _ if self.flag.is_fermion() => PairAction::Collapse(None),
                _ => PairAction::Keep,
            };
        }
        if x <= y {
            return PairAction::Keep;
        }
        let contraction = (x.kind().is_annihilator()
            && y.kind().is_creator()
            && x.kind().is_tilde() == y.kind().is_tilde()
            && slot_of(x) == slot_of(y))
        .then(ScalarExpr::one);
        PairAction::Swap {
            sign: self.exchange_sign(x, y),
            contraction,
        }
    }

    fn erase(&self, g: &Generator) -> bool {
        // U_t = I for bosons, so the reflections are the identity.
        self.flag == StatisticsFlag::Boson && self.sigma_lt == 1 && self.sigma_gt == 1 && g.kind().is_reflection()
    }
}
