use std::collections::BTreeMap;

use crate::error::ItoError;
use crate::scalar::ScalarExpr;
use crate::thermal::{to_c_basis, FrakturGenerator, ThermalParams};

use super::{
    c_increment_moments, first_order, grid, thermal_ito_table, vacuum_ito_table, CIncrement, Increment, ItoTable,
    TABLE_SLOT,
};

/// A way of deriving an Itô table.
pub trait TableRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn derive(&self, params: &ThermalParams) -> Result<ItoTable, ItoError>;
}

/// Fock-vacuum expectations of level-0 products (3x3, ignores `nbar`).
pub struct VacuumRoute;

impl TableRoute for VacuumRoute {
    fn name(&self) -> &'static str {
        "vacuum"
    }
    fn description(&self) -> &'static str {
        "zero-temperature table from Fock-vacuum expectations"
    }
    fn derive(&self, params: &ThermalParams) -> Result<ItoTable, ItoError> {
        vacuum_ito_table(params.flag())
    }
}

/// Whole products rewritten in the c-basis and Wick reduced.
pub struct WickRoute;

impl TableRoute for WickRoute {
    fn name(&self) -> &'static str {
        "wick"
    }
    fn description(&self) -> &'static str {
        "thermal table by Wick reduction of each product in the c-basis"
    }
    fn derive(&self, params: &ThermalParams) -> Result<ItoTable, ItoError> {
        thermal_ito_table(params)
    }
}

/// Each increment decomposed into C increments, then combined bilinearly
/// with the C moment table.
pub struct CMomentsRoute;

impl CMomentsRoute {
    fn decompose(params: &ThermalParams, inc: Increment) -> Result<BTreeMap<CIncrement, ScalarExpr>, ItoError> {
        let mut out = BTreeMap::new();
        let Some(kind) = inc.fraktur_kind() else {
            return Ok(out);
        };
        let c = to_c_basis(&FrakturGenerator::new(kind, TABLE_SLOT).poly(), params)?;
        for (w, coeff) in c.terms() {
            assert_eq!(w.len(), 1, "increments map linearly");
            out.insert(CIncrement::from_kind(w.0[0].kind), coeff.clone());
        }
        Ok(out)
    }
}

impl TableRoute for CMomentsRoute {
    fn name(&self) -> &'static str {
        "c-moments"
    }
    fn description(&self) -> &'static str {
        "thermal table from the C-increment decomposition and C moments"
    }
    fn derive(&self, params: &ThermalParams) -> Result<ItoTable, ItoError> {
        let moments = c_increment_moments(params.flag())?;
        let entries = grid(&Increment::THERMAL, |r, c| {
            if r == Increment::DT || c == Increment::DT {
                // dt times a first moment (zero) or dt^2
                return Ok(ScalarExpr::zero());
            }
            let (x, y) = (Self::decompose(params, r)?, Self::decompose(params, c)?);
            let mut acc = ScalarExpr::zero();
            for (i, a) in &x {
                for (j, b) in &y {
                    acc += &(&(a * b) * moments.second(*i, *j));
                }
            }
            first_order(acc, r, c)
        })?;
        Ok(ItoTable::new(
            params.flag(),
            params.nbar().to_string(),
            Increment::THERMAL.to_vec(),
            entries,
        ))
    }
}

/// Table routes registered by name.
pub struct RouteRegistry {
    routes: Vec<Box<dyn TableRoute>>,
}

impl RouteRegistry {
    pub fn empty() -> Self {
        RouteRegistry { routes: Vec::new() }
    }

    pub fn with_builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(WickRoute));
        r.register(Box::new(CMomentsRoute));
        r.register(Box::new(VacuumRoute));
        r
    }

    /// Adds a route, replacing any route with the same name.
    pub fn register(&mut self, route: Box<dyn TableRoute>) {
        self.routes.retain(|r| r.name() != route.name());
        self.routes.push(route);
    }

    pub fn get(&self, name: &str) -> Result<&dyn TableRoute, ItoError> {
        self.routes
            .iter()
            .find(|r| r.name() == name)
            .map(|r| r.as_ref())
            .ok_or_else(|| ItoError::UnknownRoute(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    pub fn derive(&self, name: &str, params: &ThermalParams) -> Result<ItoTable, ItoError> {
        self.get(name)?.derive(params)
    }
}

impl Default for RouteRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statistics::StatisticsFlag;
    use crate::thermal::Nbar;

    #[test]
    fn routes_agree() {
        let reg = RouteRegistry::with_builtin();
        assert_eq!(reg.names(), vec!["wick", "c-moments", "vacuum"]);
        for flag in StatisticsFlag::ALL {
            for nbar in [Nbar::Symbolic, Nbar::exact(1, 5)] {
                let p = ThermalParams::new(flag, nbar).unwrap();
                assert_eq!(reg.derive("wick", &p).unwrap(), reg.derive("c-moments", &p).unwrap());
            }
        }
        assert!(matches!(
            reg.derive("nope", &ThermalParams::symbolic(StatisticsFlag::Boson)),
            Err(ItoError::UnknownRoute(_))
        ));
    }
}
