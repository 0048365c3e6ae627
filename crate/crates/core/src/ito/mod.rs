//! Itô multiplication tables for the increments `dB`, `dB†`, their tilde
//! partners and `dt`, derived from the operator algebra.

mod routes;
mod table;

use rayon::prelude::*;
use serde::Serialize;

pub use routes::{CMomentsRoute, RouteRegistry, TableRoute, VacuumRoute, WickRoute};
pub use table::{ItoEntry, ItoTable};

use crate::algebra::Algebra;
use crate::error::{AlgebraError, ItoError};
use crate::poly::Poly;
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;
use crate::thermal::{
    c_expectation, expand_fraktur, thermal_expectation, CGenerator, CKind, CPoly, FrakturGenerator, FrakturKind,
    FrakturPoly, ThermalParams,
};

/// Slot used for symbolic table entries; the value does not depend on it.
pub const TABLE_SLOT: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Increment {
    DB,
    DBDag,
    DTildeB,
    DTildeBDag,
    DT,
}

impl Increment {
    pub const THERMAL: [Increment; 5] = [
        Increment::DB,
        Increment::DBDag,
        Increment::DTildeB,
        Increment::DTildeBDag,
        Increment::DT,
    ];
    pub const VACUUM: [Increment; 3] = [Increment::DB, Increment::DBDag, Increment::DT];

    pub fn label(self) -> &'static str {
        match self {
            Increment::DB => "dB",
            Increment::DBDag => "dBd",
            Increment::DTildeB => "dtB",
            Increment::DTildeBDag => "dtBd",
            Increment::DT => "dt",
        }
    }

    pub fn fraktur_kind(self) -> Option<FrakturKind> {
        match self {
            Increment::DB => Some(FrakturKind::Fb),
            Increment::DBDag => Some(FrakturKind::FbDag),
            Increment::DTildeB => Some(FrakturKind::TildeFb),
            Increment::DTildeBDag => Some(FrakturKind::TildeFbDag),
            Increment::DT => None,
        }
    }

    pub fn tilde(self) -> Increment {
        match self {
            Increment::DB => Increment::DTildeB,
            Increment::DBDag => Increment::DTildeBDag,
            Increment::DTildeB => Increment::DB,
            Increment::DTildeBDag => Increment::DBDag,
            Increment::DT => Increment::DT,
        }
    }

    /// `sqrt(dt)` times the fraktur slot operator, or the scalar `dt`.
    pub fn expand(self, k: u32) -> FrakturPoly {
        match self.fraktur_kind() {
            Some(kind) => FrakturGenerator::new(kind, k).poly().scale(&ScalarExpr::sqrt_dt()),
            None => Poly::scalar(ScalarExpr::dt()),
        }
    }
}

/// Keeps the exact first-order part of an increment-product expectation.
fn first_order(e: ScalarExpr, row: Increment, col: Increment) -> Result<ScalarExpr, ItoError> {
    if e.dt_orders().iter().any(|&h| h < 2) {
        return Err(ItoError::SubLeadingOrder {
            row: row.label().into(),
            col: col.label().into(),
            entry: e.to_text(),
        });
    }
    Ok(e.dt_order(2))
}

fn grid(
    labels: &[Increment],
    f: impl Fn(Increment, Increment) -> Result<ScalarExpr, ItoError> + Sync,
) -> Result<Vec<Vec<ScalarExpr>>, ItoError> {
    let cells: Vec<(Increment, Increment)> = labels
        .iter()
        .flat_map(|&r| labels.iter().map(move |&c| (r, c)))
        .collect();
    let values = cells.par_iter().map(|&(r, c)| f(r, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(values.chunks(labels.len()).map(|row| row.to_vec()).collect())
}

/// The zero-temperature 3x3 table from Fock-vacuum expectations.
pub fn vacuum_ito_table(flag: StatisticsFlag) -> Result<ItoTable, ItoError> {
    let alg = Algebra::new(flag);
    let entries = grid(&Increment::VACUUM, |r, c| {
        let p = &r.expand(TABLE_SLOT) * &c.expand(TABLE_SLOT);
        let e = alg.vacuum_expectation(&expand_fraktur(&p, flag))?;
        first_order(e, r, c)
    })?;
    Ok(ItoTable::new(flag, "0".into(), Increment::VACUUM.to_vec(), entries))
}

/// The 5x5 finite-temperature table from thermal (c-basis Wick) expectations.
pub fn thermal_ito_table(params: &ThermalParams) -> Result<ItoTable, ItoError> {
    let entries = grid(&Increment::THERMAL, |r, c| {
        let p = &r.expand(TABLE_SLOT) * &c.expand(TABLE_SLOT);
        first_order(thermal_expectation(&p, params)?, r, c)
    })?;
    Ok(ItoTable::new(
        params.flag(),
        params.nbar().to_string(),
        Increment::THERMAL.to_vec(),
        entries,
    ))
}

/// `[B_p, B†_q]_{-sigma}` with `B_p = sqrt(dt) sum_{k<=p} fb_k`.
pub fn brownian_commutator(p: u32, q: u32, flag: StatisticsFlag) -> Result<ScalarExpr, AlgebraError> {
    let brownian = |n: u32, kind: FrakturKind| -> FrakturPoly {
        let mut acc = Poly::zero();
        for k in 1..=n {
            acc = &acc + &FrakturGenerator::new(kind, k).poly();
        }
        acc.scale(&ScalarExpr::sqrt_dt())
    };
    let x = expand_fraktur(&brownian(p, FrakturKind::Fb), flag);
    let y = expand_fraktur(&brownian(q, FrakturKind::FbDag), flag);
    let bracket = Algebra::new(flag).graded_commutator(&x, &y)?;
    bracket
        .as_scalar()
        .ok_or_else(|| AlgebraError::NotScalar(bracket.to_text()))
}

/// Increments of the thermal quasi-particle processes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CIncrement {
    DC,
    DCVenus,
    DTildeC,
    DTildeCVenus,
}

impl CIncrement {
    pub const ALL: [CIncrement; 4] = [
        CIncrement::DC,
        CIncrement::DCVenus,
        CIncrement::DTildeC,
        CIncrement::DTildeCVenus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CIncrement::DC => "dC",
            CIncrement::DCVenus => "dCv",
            CIncrement::DTildeC => "dtC",
            CIncrement::DTildeCVenus => "dtCv",
        }
    }

    pub fn kind(self) -> CKind {
        match self {
            CIncrement::DC => CKind::C,
            CIncrement::DCVenus => CKind::CVenus,
            CIncrement::DTildeC => CKind::TildeC,
            CIncrement::DTildeCVenus => CKind::TildeCVenus,
        }
    }

    pub fn from_kind(kind: CKind) -> CIncrement {
        match kind {
            CKind::C => CIncrement::DC,
            CKind::CVenus => CIncrement::DCVenus,
            CKind::TildeC => CIncrement::DTildeC,
            CKind::TildeCVenus => CIncrement::DTildeCVenus,
        }
    }

    pub fn expand(self, k: u32) -> CPoly {
        CGenerator::new(self.kind(), k).poly().scale(&ScalarExpr::sqrt_dt())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CMoments {
    pub statistics: StatisticsFlag,
    /// `<dX>` for each C increment.
    pub first: Vec<(CIncrement, ScalarExpr)>,
    /// `<dX dY>` truncated at first order in `dt`, row-major over [`CIncrement::ALL`].
    pub second: Vec<(CIncrement, CIncrement, ScalarExpr)>,
}

impl CMoments {
    pub fn second(&self, x: CIncrement, y: CIncrement) -> &ScalarExpr {
        &self
            .second
            .iter()
            .find(|(a, b, _)| *a == x && *b == y)
            .expect("moment table is complete")
            .2
    }
}

/// Expected second moment: only the ket annihilator to the left of its own
/// bra partner survives.
pub fn expected_c_moment(x: CIncrement, y: CIncrement) -> ScalarExpr {
    match (x, y) {
        (CIncrement::DC, CIncrement::DCVenus) | (CIncrement::DTildeC, CIncrement::DTildeCVenus) => ScalarExpr::dt(),
        _ => ScalarExpr::zero(),
    }
}

/// First and second moments of the C increments by direct Wick reduction,
/// checked against [`expected_c_moment`].
pub fn c_increment_moments(flag: StatisticsFlag) -> Result<CMoments, ItoError> {
    let k = TABLE_SLOT;
    let first = CIncrement::ALL
        .iter()
        .map(|&x| (x, c_expectation(&x.expand(k), flag)))
        .collect::<Vec<_>>();
    let mut second = Vec::new();
    for x in CIncrement::ALL {
        for y in CIncrement::ALL {
            let e = c_expectation(&(&x.expand(k) * &y.expand(k)), flag).dt_order(2);
            let expected = expected_c_moment(x, y);
            if e != expected {
                return Err(ItoError::Thermal(crate::error::ThermalError::AlgebraInconsistency {
                    pair: format!("<{} {}>", x.label(), y.label()),
                    residual: (&e - &expected).to_text(),
                }));
            }
            second.push((x, y, e));
        }
    }
    if let Some((x, e)) = first.iter().find(|(_, e)| !e.is_zero()) {
        return Err(ItoError::Thermal(crate::error::ThermalError::AlgebraInconsistency {
            pair: format!("<{}>", x.label()),
            residual: e.to_text(),
        }));
    }
    Ok(CMoments {
        statistics: flag,
        first,
        second,
    })
}

/// True when every product of three increments has expectation `o(dt)`.
pub fn first_order_closure(params: &ThermalParams) -> Result<bool, ItoError> {
    let labels = Increment::THERMAL;
    let mut triples = Vec::new();
    for a in labels {
        for b in labels {
            for c in labels {
                triples.push((a, b, c));
            }
        }
    }
    let results = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let p = &(&a.expand(TABLE_SLOT) * &b.expand(TABLE_SLOT)) * &c.expand(TABLE_SLOT);
            let e = thermal_expectation(&p, params)?;
            Ok(e.dt_orders().iter().all(|&h| h > 2))
        })
        .collect::<Result<Vec<bool>, ItoError>>()?;
    Ok(results.into_iter().all(|ok| ok))
}

/// True when `entry(X~, Y~) = conj(entry(X, Y))` for all cells.
pub fn tilde_symmetric(table: &ItoTable) -> bool {
    table.rows().iter().all(|&r| {
        table
            .rows()
            .iter()
            .all(|&c| match (table.get(r, c), table.get(r.tilde(), c.tilde())) {
                (Some(a), Some(b)) => *b == a.conj(),
                _ => true,
            })
    })
}

/// True when products of increments at distinct slots have zero expectation.
pub fn cross_slot_products_vanish(params: &ThermalParams) -> Result<bool, ItoError> {
    let labels = Increment::THERMAL;
    for r in labels {
        for c in labels {
            if r == Increment::DT || c == Increment::DT {
                continue;
            }
            for (k, l) in [(1, 2), (2, 1)] {
                let p = &r.expand(k) * &c.expand(l);
                if !thermal_expectation(&p, params)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
