use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::scalar::ScalarExpr;

/// Particle statistics: the pair (sigma, tau) with `tau^2 = sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatisticsFlag {
    Boson,
    Fermion,
}

impl StatisticsFlag {
    pub const ALL: [StatisticsFlag; 2] = [StatisticsFlag::Boson, StatisticsFlag::Fermion];

    /// +1 for bosons, -1 for fermions.
    pub fn sigma(self) -> i8 {
        match self {
            StatisticsFlag::Boson => 1,
            StatisticsFlag::Fermion => -1,
        }
    }

    pub fn sigma_expr(self) -> ScalarExpr {
        ScalarExpr::from_int(self.sigma() as i64)
    }

    /// 1 for bosons, i for fermions.
    pub fn tau(self) -> ScalarExpr {
        match self {
            StatisticsFlag::Boson => ScalarExpr::one(),
            StatisticsFlag::Fermion => ScalarExpr::i(),
        }
    }

    pub fn tau_c64(self) -> Complex64 {
        match self {
            StatisticsFlag::Boson => Complex64::new(1.0, 0.0),
            StatisticsFlag::Fermion => Complex64::new(0.0, 1.0),
        }
    }

    /// `1 + sigma*nbar`.
    pub fn one_plus_sigma_nbar(self) -> ScalarExpr {
        ScalarExpr::one_plus(self.sigma())
    }

    pub fn is_fermion(self) -> bool {
        self == StatisticsFlag::Fermion
    }

    pub fn name(self) -> &'static str {
        match self {
            StatisticsFlag::Boson => "boson",
            StatisticsFlag::Fermion => "fermion",
        }
    }
}

impl fmt::Display for StatisticsFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatisticsFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "boson" | "bose" | "b" => Ok(StatisticsFlag::Boson),
            "fermion" | "fermi" | "f" => Ok(StatisticsFlag::Fermion),
            other => Err(format!("unknown statistics `{other}` (expected boson|fermion)")),
        }
    }
}
