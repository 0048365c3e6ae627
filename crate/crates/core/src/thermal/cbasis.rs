use std::cmp::Ordering;
use std::fmt;

use crate::poly::{Poly, Symbol};
use crate::rewrite::{self, OrderingRules, PairAction};
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

/// Thermal quasi-particle operators. `C`/`TildeC` annihilate the thermal ket,
/// `CVenus`/`TildeCVenus` annihilate the thermal bra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CKind {
    C,
    CVenus,
    TildeC,
    TildeCVenus,
}

impl CKind {
    pub const ALL: [CKind; 4] = [CKind::C, CKind::CVenus, CKind::TildeC, CKind::TildeCVenus];

    pub fn name(self) -> &'static str {
        match self {
            CKind::C => "c",
            CKind::CVenus => "cv",
            CKind::TildeC => "tc",
            CKind::TildeCVenus => "tcv",
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(self, CKind::TildeC | CKind::TildeCVenus)
    }

    pub fn annihilates_ket(self) -> bool {
        matches!(self, CKind::C | CKind::TildeC)
    }

    pub fn tilde_partner(self) -> CKind {
        match self {
            CKind::C => CKind::TildeC,
            CKind::CVenus => CKind::TildeCVenus,
            CKind::TildeC => CKind::C,
            CKind::TildeCVenus => CKind::CVenus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CGenerator {
    pub kind: CKind,
    pub slot: u32,
}

impl CGenerator {
    pub fn new(kind: CKind, slot: u32) -> Self {
        assert!(slot >= 1, "slot indices start at 1");
        CGenerator { kind, slot }
    }

    pub fn poly(self) -> Poly<CGenerator> {
        Poly::generator(self)
    }

    fn sort_key(&self) -> (bool, bool, u32, CKind) {
        (self.kind.annihilates_ket(), self.kind.is_tilde(), self.slot, self.kind)
    }
}

impl Ord for CGenerator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for CGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Symbol for CGenerator {
    fn spelling(&self) -> String {
        format!("{}[{}]", self.kind.name(), self.slot)
    }

    fn tilde(&self, _flag: StatisticsFlag) -> (ScalarExpr, Self) {
        (
            ScalarExpr::one(),
            CGenerator {
                kind: self.kind.tilde_partner(),
                slot: self.slot,
            },
        )
    }

    fn slot(&self) -> Option<u32> {
        Some(self.slot)
    }
}

impl fmt::Display for CGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spelling())
    }
}

pub type CPoly = Poly<CGenerator>;

/// Wick ordering in the c-basis: bra annihilators to the left, ket
/// annihilators to the right, every exchange carries `sigma`, and only the
/// pairs `(c, cv)` and `(tc, tcv)` of equal slot contract.
#[derive(Clone, Copy, Debug)]
pub struct CBasisRules {
    pub flag: StatisticsFlag,
}

impl OrderingRules for CBasisRules {
    type Gen = CGenerator;

    fn pair(&self, x: &CGenerator, y: &CGenerator) -> PairAction {
        if x == y && self.flag.is_fermion() {
            return PairAction::Collapse(None);
        }
        if x <= y {
            return PairAction::Keep;
        }
        let contracts = x.kind.annihilates_ket()
            && !y.kind.annihilates_ket()
            && x.kind.is_tilde() == y.kind.is_tilde()
            && x.slot == y.slot;
        PairAction::Swap {
            sign: self.flag.sigma(),
            contraction: contracts.then(ScalarExpr::one),
        }
    }
}

/// Normal ordered form in the c-basis.
pub fn c_normal_order(p: &CPoly, flag: StatisticsFlag) -> CPoly {
    rewrite::normal_order(&CBasisRules { flag }, p)
}

/// `<| p |>` with `<|>` = 1: only the empty word survives normal ordering.
pub fn c_expectation(p: &CPoly, flag: StatisticsFlag) -> ScalarExpr {
    c_normal_order(p, flag).scalar_part()
}
