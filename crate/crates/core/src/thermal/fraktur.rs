use std::fmt;

use crate::algebra::{Generator, OperatorPoly};
use crate::poly::{Poly, Symbol};
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

/// Reflection-dressed slot operators `fb = J b` and their tilde partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrakturKind {
    Fb,
    FbDag,
    TildeFb,
    TildeFbDag,
}

impl FrakturKind {
    pub const ALL: [FrakturKind; 4] = [
        FrakturKind::Fb,
        FrakturKind::FbDag,
        FrakturKind::TildeFb,
        FrakturKind::TildeFbDag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrakturKind::Fb => "fb",
            FrakturKind::FbDag => "fbd",
            FrakturKind::TildeFb => "tfb",
            FrakturKind::TildeFbDag => "tfbd",
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(self, FrakturKind::TildeFb | FrakturKind::TildeFbDag)
    }

    pub fn tilde_partner(self) -> FrakturKind {
        match self {
            FrakturKind::Fb => FrakturKind::TildeFb,
            FrakturKind::FbDag => FrakturKind::TildeFbDag,
            FrakturKind::TildeFb => FrakturKind::Fb,
            FrakturKind::TildeFbDag => FrakturKind::FbDag,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrakturGenerator {
    pub kind: FrakturKind,
    pub slot: u32,
}

impl FrakturGenerator {
    pub fn new(kind: FrakturKind, slot: u32) -> Self {
        assert!(slot >= 1, "slot indices start at 1");
        FrakturGenerator { kind, slot }
    }

    pub fn poly(self) -> Poly<FrakturGenerator> {
        Poly::generator(self)
    }

    /// The level-0 word this operator stands for.
    pub fn level0(&self) -> Vec<Generator> {
        let k = self.slot;
        match self.kind {
            FrakturKind::Fb => vec![Generator::j(k), Generator::a(k)],
            FrakturKind::FbDag => vec![Generator::a_dag(k), Generator::j(k)],
            FrakturKind::TildeFb => vec![Generator::tau(), Generator::tj(k), Generator::ta(k)],
            FrakturKind::TildeFbDag => vec![Generator::tau(), Generator::ta_dag(k), Generator::tj(k)],
        }
    }
}

impl Symbol for FrakturGenerator {
    fn spelling(&self) -> String {
        format!("{}[{}]", self.kind.name(), self.slot)
    }

    fn tilde(&self, _flag: StatisticsFlag) -> (ScalarExpr, Self) {
        (
            ScalarExpr::one(),
            FrakturGenerator {
                kind: self.kind.tilde_partner(),
                slot: self.slot,
            },
        )
    }

    fn slot(&self) -> Option<u32> {
        Some(self.slot)
    }
}

impl fmt::Display for FrakturGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spelling())
    }
}

pub type FrakturPoly = Poly<FrakturGenerator>;

pub fn fb(k: u32) -> FrakturPoly {
    FrakturGenerator::new(FrakturKind::Fb, k).poly()
}

pub fn fb_dag(k: u32) -> FrakturPoly {
    FrakturGenerator::new(FrakturKind::FbDag, k).poly()
}

pub fn tfb(k: u32) -> FrakturPoly {
    FrakturGenerator::new(FrakturKind::TildeFb, k).poly()
}

pub fn tfb_dag(k: u32) -> FrakturPoly {
    FrakturGenerator::new(FrakturKind::TildeFbDag, k).poly()
}

/// Substitutes the level-0 words and normal orders the result.
pub fn expand_fraktur(p: &FrakturPoly, flag: StatisticsFlag) -> OperatorPoly {
    let raw = p.substitute(|g| Poly::word(g.level0()));
    crate::algebra::Algebra::new(flag).normal_order(&raw)
}

/// Substitutes the level-0 words without any rewriting.
pub fn fraktur_words(p: &FrakturPoly) -> OperatorPoly {
    p.substitute(|g| Poly::word(g.level0()))
}
