use std::cmp::Ordering;
use std::fmt;

use crate::poly::{Poly, Symbol};
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

/// Level-0 generator kinds on the doubled lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Slot annihilator `a_k` (the continuum `b_t` is `a_k / sqrt(dt)`).
    A,
    ADag,
    TildeA,
    TildeADag,
    /// Reflection `J_k`.
    J,
    TildeJ,
    /// The Klein-type operator `tau`.
    Tau,
}

impl Kind {
    pub fn is_tilde(self) -> bool {
        matches!(self, Kind::TildeA | Kind::TildeADag | Kind::TildeJ)
    }

    pub fn is_creator(self) -> bool {
        matches!(self, Kind::ADag | Kind::TildeADag)
    }

    pub fn is_annihilator(self) -> bool {
        matches!(self, Kind::A | Kind::TildeA)
    }

    pub fn is_ladder(self) -> bool {
        self.is_creator() || self.is_annihilator()
    }

    pub fn is_reflection(self) -> bool {
        matches!(self, Kind::J | Kind::TildeJ)
    }

    /// Block in the canonical word order: creators, reflections, tau, annihilators.
    fn block(self) -> u8 {
        match self {
            Kind::ADag | Kind::TildeADag => 0,
            Kind::J | Kind::TildeJ => 1,
            Kind::Tau => 2,
            Kind::A | Kind::TildeA => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::A => "b",
            Kind::ADag => "bd",
            Kind::TildeA => "tb",
            Kind::TildeADag => "tbd",
            Kind::J => "J",
            Kind::TildeJ => "tJ",
            Kind::Tau => "tau",
        }
    }

    pub fn tilde_partner(self) -> Kind {
        match self {
            Kind::A => Kind::TildeA,
            Kind::TildeA => Kind::A,
            Kind::ADag => Kind::TildeADag,
            Kind::TildeADag => Kind::ADag,
            Kind::J => Kind::TildeJ,
            Kind::TildeJ => Kind::J,
            Kind::Tau => Kind::Tau,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    kind: Kind,
    slot: u32,
}

impl Generator {
    /// Panics on slot 0 for slotted kinds; slots start at 1.
    pub fn new(kind: Kind, slot: u32) -> Self {
        if kind == Kind::Tau {
            return Generator { kind, slot: 0 };
        }
        assert!(slot >= 1, "slot indices start at 1");
        Generator { kind, slot }
    }

    pub fn a(k: u32) -> Self {
        Self::new(Kind::A, k)
    }
    pub fn a_dag(k: u32) -> Self {
        Self::new(Kind::ADag, k)
    }
    pub fn ta(k: u32) -> Self {
        Self::new(Kind::TildeA, k)
    }
    pub fn ta_dag(k: u32) -> Self {
        Self::new(Kind::TildeADag, k)
    }
    pub fn j(k: u32) -> Self {
        Self::new(Kind::J, k)
    }
    pub fn tj(k: u32) -> Self {
        Self::new(Kind::TildeJ, k)
    }
    pub fn tau() -> Self {
        Generator {
            kind: Kind::Tau,
            slot: 0,
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Slot index; `None` for tau.
    pub fn slot_index(&self) -> Option<u32> {
        (self.kind != Kind::Tau).then_some(self.slot)
    }

    /// Z2 grade: ladder operators and tau are odd for fermions, everything is
    /// even for bosons.
    pub fn grade(&self, flag: StatisticsFlag) -> u8 {
        match (flag, self.kind) {
            (StatisticsFlag::Boson, _) => 0,
            (_, Kind::J | Kind::TildeJ) => 0,
            _ => 1,
        }
    }

    fn sort_key(&self) -> (u8, bool, u32, Kind) {
        (self.kind.block(), self.kind.is_tilde(), self.slot, self.kind)
    }

    pub fn poly(self) -> Poly<Generator> {
        Poly::generator(self)
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Symbol for Generator {
    fn spelling(&self) -> String {
        match self.kind {
            Kind::Tau => "tau".to_string(),
            k => format!("{}[{}]", k.name(), self.slot),
        }
    }

    fn tilde(&self, flag: StatisticsFlag) -> (ScalarExpr, Self) {
        let partner = Generator {
            kind: self.kind.tilde_partner(),
            slot: self.slot,
        };
        // tau~ = tau^dagger = sigma * tau
        let phase = if self.kind == Kind::Tau {
            flag.sigma_expr()
        } else {
            ScalarExpr::one()
        };
        (phase, partner)
    }

    fn slot(&self) -> Option<u32> {
        self.slot_index()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spelling())
    }
}

pub type OperatorPoly = Poly<Generator>;
