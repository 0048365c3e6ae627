use crate::poly::{Poly, Symbol};
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;

use super::cbasis::{CGenerator, CKind, CPoly};
use super::fraktur::{fb, fb_dag, tfb, tfb_dag, FrakturKind, FrakturPoly};

/// 2x2 matrix over the coefficient ring, symbolic in `nbar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BogoliubovMatrix {
    pub entries: [[ScalarExpr; 2]; 2],
}

impl BogoliubovMatrix {
    /// `[[1 + sigma nbar, -sigma nbar], [-1, 1]]`.
    pub fn new(flag: StatisticsFlag) -> Self {
        let s = flag.sigma_expr();
        let n = ScalarExpr::nbar();
        BogoliubovMatrix {
            entries: [
                [flag.one_plus_sigma_nbar(), -(&s * &n)],
                [ScalarExpr::from_int(-1), ScalarExpr::one()],
            ],
        }
    }

    /// `[[1, sigma nbar], [1, 1 + sigma nbar]]`.
    pub fn inverse(flag: StatisticsFlag) -> Self {
        let s = flag.sigma_expr();
        let n = ScalarExpr::nbar();
        BogoliubovMatrix {
            entries: [
                [ScalarExpr::one(), &s * &n],
                [ScalarExpr::one(), flag.one_plus_sigma_nbar()],
            ],
        }
    }

    pub fn identity() -> Self {
        BogoliubovMatrix {
            entries: [
                [ScalarExpr::one(), ScalarExpr::zero()],
                [ScalarExpr::zero(), ScalarExpr::one()],
            ],
        }
    }

    pub fn det(&self) -> ScalarExpr {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn mul(&self, rhs: &BogoliubovMatrix) -> BogoliubovMatrix {
        let e = |i: usize, j: usize| {
            &(&self.entries[i][0] * &rhs.entries[0][j]) + &(&self.entries[i][1] * &rhs.entries[1][j])
        };
        BogoliubovMatrix {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        }
    }

    /// Column doublet transform `M v`.
    pub fn apply<G: Symbol>(&self, v: &[Poly<G>; 2]) -> [Poly<G>; 2] {
        let row = |i: usize| &v[0].scale(&self.entries[i][0]) + &v[1].scale(&self.entries[i][1]);
        [row(0), row(1)]
    }

    /// Row doublet transform `v M`.
    pub fn apply_row<G: Symbol>(&self, v: &[Poly<G>; 2]) -> [Poly<G>; 2] {
        let col = |j: usize| &v[0].scale(&self.entries[0][j]) + &v[1].scale(&self.entries[1][j]);
        [col(0), col(1)]
    }
}

/// Column doublet `(fb, tau tfbd)`.
pub fn b_doublet(flag: StatisticsFlag, k: u32) -> [FrakturPoly; 2] {
    [fb(k), tfb_dag(k).scale(&flag.tau())]
}

/// Row doublet `(fbd, -tau tfb)`.
pub fn b_bar_doublet(flag: StatisticsFlag, k: u32) -> [FrakturPoly; 2] {
    [fb_dag(k), tfb(k).scale(&-flag.tau())]
}

fn c(kind: CKind, k: u32) -> CPoly {
    CGenerator::new(kind, k).poly()
}

/// Column doublet `(c, tau tcv)`.
pub fn c_doublet(flag: StatisticsFlag, k: u32) -> [CPoly; 2] {
    [c(CKind::C, k), c(CKind::TildeCVenus, k).scale(&flag.tau())]
}

/// Row doublet `(cv, -tau tc)`.
pub fn c_bar_doublet(flag: StatisticsFlag, k: u32) -> [CPoly; 2] {
    [c(CKind::CVenus, k), c(CKind::TildeC, k).scale(&-flag.tau())]
}

fn tau_inv(flag: StatisticsFlag) -> ScalarExpr {
    flag.tau().conj()
}

/// A c-operator written through fraktur operators (`c = B b`, `c_bar = b_bar B^-1`).
pub fn c_in_fraktur(flag: StatisticsFlag, kind: CKind, k: u32) -> FrakturPoly {
    match kind {
        CKind::C | CKind::TildeCVenus => {
            let col = BogoliubovMatrix::new(flag).apply(&b_doublet(flag, k));
            match kind {
                CKind::C => col[0].clone(),
                _ => col[1].scale(&tau_inv(flag)),
            }
        }
        CKind::CVenus | CKind::TildeC => {
            let row = BogoliubovMatrix::inverse(flag).apply_row(&b_bar_doublet(flag, k));
            match kind {
                CKind::CVenus => row[0].clone(),
                _ => row[1].scale(&-tau_inv(flag)),
            }
        }
    }
}

/// A fraktur operator written through c-operators (`b = B^-1 c`, `b_bar = c_bar B`).
pub fn fraktur_in_c(flag: StatisticsFlag, kind: FrakturKind, k: u32) -> CPoly {
    match kind {
        FrakturKind::Fb | FrakturKind::TildeFbDag => {
            let col = BogoliubovMatrix::inverse(flag).apply(&c_doublet(flag, k));
            match kind {
                FrakturKind::Fb => col[0].clone(),
                _ => col[1].scale(&tau_inv(flag)),
            }
        }
        FrakturKind::FbDag | FrakturKind::TildeFb => {
            let row = BogoliubovMatrix::new(flag).apply_row(&c_bar_doublet(flag, k));
            match kind {
                FrakturKind::FbDag => row[0].clone(),
                _ => row[1].scale(&-tau_inv(flag)),
            }
        }
    }
}
