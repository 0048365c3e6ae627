use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::OperatorPoly;
use crate::error::{FockError, ThermalError};
use crate::statistics::StatisticsFlag;
use crate::thermal::{c_in_fraktur, fraktur_words, CKind, RepresentationHook};

use super::ops::{LatticeConfig, Representation};

/// Thermal bra and ket on a doubled lattice, normalised to `<|>` = 1.
pub struct ThermalRepresentation {
    rep: Representation,
    nbar: f64,
    bra: Vec<Complex64>,
    ket: Vec<Complex64>,
    residual: f64,
}

/// Level-0 words of a c-operator with `nbar` left symbolic.
pub fn c_operator(flag: StatisticsFlag, kind: CKind, k: u32) -> OperatorPoly {
    fraktur_words(&c_in_fraktur(flag, kind, k))
}

fn near_zero_count(values: &[f64], scale: f64) -> usize {
    values.iter().filter(|&&v| v < 1e-9 * scale).count()
}

/// Eigenvector of the smallest eigenvalue of a Hermitian positive matrix.
/// With `exact`, the kernel must be one dimensional; otherwise at most one
/// eigenvalue may be near zero.
fn lowest_vector(h: DMatrix<Complex64>, exact: bool) -> Result<DVector<Complex64>, FockError> {
    let eig = h.symmetric_eigen();
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let zeros = near_zero_count(&vals, scale);
    if zeros > 1 || (exact && zeros != 1) {
        return Err(FockError::AmbiguousNullspace(zeros));
    }
    let (imin, _) = vals.iter().enumerate().fold(
        (0, f64::INFINITY),
        |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) },
    );
    Ok(eig.eigenvectors.column(imin).into_owned())
}

/// Solves the thermal state conditions on `rep`'s space: the ket is the
/// joint null vector of `{c_k, tc_k}` (restricted to `ket_support`), the bra
/// the joint left null vector of `{cv_k, tcv_k}`.
fn solve(
    rep: &Representation,
    nbar: f64,
    ket_support: &[usize],
    exact_ket: bool,
) -> Result<(Vec<Complex64>, Vec<Complex64>), FockError> {
    let flag = rep.config().statistics;
    let dim = rep.dim();
    let mut h_ket = DMatrix::<Complex64>::zeros(ket_support.len(), ket_support.len());
    let mut h_bra = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 1..=rep.config().slots {
        for kind in [CKind::C, CKind::TildeC] {
            let m = rep.evaluate(&c_operator(flag, kind, k), nbar)?.to_dense(dim);
            let ms = m.select_columns(ket_support);
            h_ket += ms.adjoint() * &ms;
        }
        for kind in [CKind::CVenus, CKind::TildeCVenus] {
            let m = rep.evaluate(&c_operator(flag, kind, k), nbar)?.to_dense(dim);
            let mt = m.transpose();
            h_bra += mt.adjoint() * &mt;
        }
    }
    let ket_s = lowest_vector(h_ket, exact_ket)?;
    let bra = lowest_vector(h_bra, true)?;
    let mut ket = vec![Complex64::new(0.0, 0.0); dim];
    for (i, &j) in ket_support.iter().enumerate() {
        ket[j] = ket_s[i];
    }
    let bra: Vec<Complex64> = bra.iter().copied().collect();
    let overlap: Complex64 = bra.iter().zip(&ket).map(|(b, k)| b * k).sum();
    if overlap.norm() < 1e-12 {
        return Err(FockError::Thermal(ThermalError::InvalidParams(
            "thermal bra and ket are orthogonal".into(),
        )));
    }
    let ket = ket.into_iter().map(|x| x / overlap).collect();
    Ok((bra, ket))
}

impl ThermalRepresentation {
    pub fn build(cfg: LatticeConfig, nbar: f64) -> Result<Self, FockError> {
        if !cfg.doubled {
            return Err(FockError::NeedsDoubled("the thermal vacuum"));
        }
        if !(nbar.is_finite() && nbar >= 0.0) || (cfg.statistics.is_fermion() && nbar >= 1.0) {
            return Err(FockError::Thermal(ThermalError::InvalidParams(format!(
                "nbar = {nbar} is not admissible for {} statistics",
                cfg.statistics
            ))));
        }
        let rep = Representation::new(cfg.clone())?;
        let (bra, ket) = match cfg.statistics {
            StatisticsFlag::Fermion => {
                let all: Vec<usize> = (0..rep.dim()).collect();
                solve(&rep, nbar, &all, true)?
            }
            StatisticsFlag::Boson => Self::boson_product(&rep, nbar)?,
        };
        let mut out = ThermalRepresentation {
            rep,
            nbar,
            bra,
            ket,
            residual: 0.0,
        };
        out.residual = out.annihilation_residual()?;
        Ok(out)
    }

    /// Bosonic slot pairs `(a_k, ta_k)` decouple, so the state is a product of
    /// single-pair solutions. The ket is kept on occupations below the cutoff.
    fn boson_product(rep: &Representation, nbar: f64) -> Result<(Vec<Complex64>, Vec<Complex64>), FockError> {
        let cfg = rep.config();
        let mut pair_cfg = cfg.clone();
        pair_cfg.slots = 1;
        let pair = Representation::new(pair_cfg)?;
        let support: Vec<usize> = (0..pair.dim())
            .filter(|&j| pair.occupations(j).iter().all(|&n| n < cfg.cutoff))
            .collect();
        let (pbra, pket) = solve(&pair, nbar, &support, false)?;
        let levels = rep.levels();
        let n = cfg.slots as usize;
        let mut bra = vec![Complex64::new(1.0, 0.0); rep.dim()];
        let mut ket = vec![Complex64::new(1.0, 0.0); rep.dim()];
        for j in 0..rep.dim() {
            let occ = rep.occupations(j);
            for k in 0..n {
                let p = occ[k] + occ[n + k] * levels;
                bra[j] *= pbra[p];
                ket[j] *= pket[p];
            }
        }
        Ok((bra, ket))
    }

    fn annihilation_residual(&self) -> Result<f64, FockError> {
        let flag = self.rep.config().statistics;
        let mut worst = 0.0f64;
        for k in 1..=self.rep.config().slots {
            for kind in [CKind::C, CKind::TildeC] {
                worst = worst.max(self.ket_residual(&c_operator(flag, kind, k)));
            }
            for kind in [CKind::CVenus, CKind::TildeCVenus] {
                worst = worst.max(self.bra_residual(&c_operator(flag, kind, k)));
            }
        }
        Ok(worst)
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    pub fn bra(&self) -> &[Complex64] {
        &self.bra
    }

    pub fn ket(&self) -> &[Complex64] {
        &self.ket
    }

    /// Largest relative `|| c |> || / || |> ||` or `|| <| cv || / || <| ||`
    /// over all slots and sectors.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Geometric tail of the boson ket beyond the cutoff; 0 for fermions.
    pub fn truncation_estimate(&self) -> f64 {
        let cfg = self.rep.config();
        match cfg.statistics {
            StatisticsFlag::Fermion => 0.0,
            StatisticsFlag::Boson => (self.nbar / (1.0 + self.nbar)).powi(cfg.cutoff as i32),
        }
    }

    /// `<| p |>`.
    pub fn expectation(&self, p: &OperatorPoly) -> Result<Complex64, FockError> {
        let v = self.rep.apply(p, self.nbar, &self.ket)?;
        Ok(self.bra.iter().zip(&v).map(|(b, x)| b * x).sum())
    }
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

impl RepresentationHook for ThermalRepresentation {
    fn slots(&self) -> u32 {
        self.rep.config().slots
    }

    /// Relative to the norm of the bra.
    fn bra_residual(&self, op: &OperatorPoly) -> f64 {
        self.rep
            .apply_left(op, self.nbar, &self.bra)
            .map(|v| norm(&v) / norm(&self.bra))
            .unwrap_or(f64::INFINITY)
    }

    /// Relative to the norm of the ket.
    fn ket_residual(&self, op: &OperatorPoly) -> f64 {
        self.rep
            .apply(op, self.nbar, &self.ket)
            .map(|v| norm(&v) / norm(&self.ket))
            .unwrap_or(f64::INFINITY)
    }

    fn truncation_estimate(&self) -> f64 {
        ThermalRepresentation::truncation_estimate(self)
    }
}
