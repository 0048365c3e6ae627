use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Generator, Kind, OperatorPoly};
use crate::error::{AlgebraError, FockError};
use crate::statistics::StatisticsFlag;

const NONE: u32 = u32::MAX;

/// Lattice and truncation parameters for the matrix representation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeConfig {
    pub statistics: StatisticsFlag,
    pub slots: u32,
    pub dt: f64,
    /// Boson occupations kept in the thermal ket (levels `0..cutoff`).
    pub cutoff: usize,
    /// Extra boson levels above the cutoff so that ladder operators act
    /// exactly on the truncated ket.
    pub headroom: usize,
    pub doubled: bool,
    pub max_dim: u128,
}

impl LatticeConfig {
    pub const DEFAULT_MAX_DIM: u128 = 1 << 16;

    pub fn new(statistics: StatisticsFlag, slots: u32, dt: f64) -> Self {
        LatticeConfig {
            statistics,
            slots,
            dt,
            cutoff: 8,
            headroom: 2,
            doubled: true,
            max_dim: Self::DEFAULT_MAX_DIM,
        }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_headroom(mut self, headroom: usize) -> Self {
        self.headroom = headroom;
        self
    }

    pub fn singled(mut self) -> Self {
        self.doubled = false;
        self
    }

    /// Levels per mode in the representation.
    pub fn levels(&self) -> usize {
        match self.statistics {
            StatisticsFlag::Fermion => 2,
            StatisticsFlag::Boson => self.cutoff + self.headroom,
        }
    }

    pub fn modes(&self) -> u32 {
        self.slots * if self.doubled { 2 } else { 1 }
    }

    pub fn dim(&self) -> u128 {
        let mut d: u128 = 1;
        for _ in 0..self.modes() {
            d = d.saturating_mul(self.levels() as u128);
        }
        d
    }

    pub fn validate(&self) -> Result<(), FockError> {
        if self.slots == 0 {
            return Err(FockError::InvalidConfig("at least one slot is required".into()));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(FockError::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.statistics == StatisticsFlag::Boson && self.cutoff < 2 {
            return Err(FockError::InvalidConfig("boson cutoff must be at least 2".into()));
        }
        let dim = self.dim();
        if dim > self.max_dim {
            return Err(FockError::DimensionGuard {
                levels: self.levels(),
                modes: self.modes(),
                limit: self.max_dim,
            });
        }
        Ok(())
    }
}

/// A matrix with at most one nonzero per column: column `j` maps to row
/// `target[j]` with amplitude `amp[j]`, or to zero.
#[derive(Clone, Debug)]
pub struct MonoOp {
    target: Vec<u32>,
    amp: Vec<Complex64>,
}

impl MonoOp {
    pub fn identity(dim: usize) -> Self {
        MonoOp {
            target: (0..dim as u32).collect(),
            amp: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    /// `self * rhs`.
    pub fn compose(&self, rhs: &MonoOp) -> MonoOp {
        let mut target = vec![NONE; rhs.target.len()];
        let mut amp = vec![Complex64::new(0.0, 0.0); rhs.target.len()];
        for j in 0..rhs.target.len() {
            let t = rhs.target[j];
            if t == NONE {
                continue;
            }
            let t2 = self.target[t as usize];
            if t2 != NONE {
                target[j] = t2;
                amp[j] = rhs.amp[j] * self.amp[t as usize];
            }
        }
        MonoOp { target, amp }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.apply_add(v, Complex64::new(1.0, 0.0), &mut out);
        out
    }

    fn apply_add(&self, v: &[Complex64], c: Complex64, out: &mut [Complex64]) {
        for ((&t, &a), &x) in self.target.iter().zip(&self.amp).zip(v) {
            if t != NONE && x != Complex64::new(0.0, 0.0) {
                out[t as usize] += c * a * x;
            }
        }
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..v.len())
            .map(|j| match self.target[j] {
                NONE => Complex64::new(0.0, 0.0),
                t => v[t as usize] * self.amp[j],
            })
            .collect()
    }
}

/// Matrix images of the level-0 generators on the lattice Fock space.
///
/// Fermion slot modes are two-level systems without parity strings; the
/// reflections `J_k` carry the strings, so `J_k a_k` are Jordan-Wigner
/// fermions. `tau` is `i` times the global parity. For bosons `J` and `tau`
/// are the identity.
pub struct Representation {
    cfg: LatticeConfig,
    dim: usize,
    levels: usize,
    images: HashMap<Generator, MonoOp>,
}

impl Representation {
    pub fn new(cfg: LatticeConfig) -> Result<Self, FockError> {
        cfg.validate()?;
        let dim = cfg.dim() as usize;
        let levels = cfg.levels();
        let mut rep = Representation {
            cfg,
            dim,
            levels,
            images: HashMap::new(),
        };
        let n = rep.cfg.slots;
        let mut gens = vec![Generator::tau()];
        for k in 1..=n {
            gens.extend([Generator::a(k), Generator::a_dag(k), Generator::j(k)]);
            if rep.cfg.doubled {
                gens.extend([Generator::ta(k), Generator::ta_dag(k), Generator::tj(k)]);
            }
        }
        for g in gens {
            let img = rep.build(g);
            rep.images.insert(g, img);
        }
        Ok(rep)
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    fn mode_of(&self, g: &Generator) -> usize {
        let k = g.slot_index().expect("slotted generator") as usize;
        if g.kind().is_tilde() {
            self.cfg.slots as usize + k - 1
        } else {
            k - 1
        }
    }

    fn stride(&self, mode: usize) -> usize {
        self.levels.pow(mode as u32)
    }

    /// Occupation of `mode` in basis state `j`.
    pub fn occupation(&self, j: usize, mode: usize) -> usize {
        (j / self.stride(mode)) % self.levels
    }

    pub fn occupations(&self, j: usize) -> Vec<usize> {
        (0..self.cfg.modes() as usize).map(|m| self.occupation(j, m)).collect()
    }

    fn parity(&self, j: usize, modes: impl Iterator<Item = usize>) -> f64 {
        let n: usize = modes.map(|m| self.occupation(j, m)).sum();
        if n.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    fn build(&self, g: Generator) -> MonoOp {
        let fermion = self.cfg.statistics.is_fermion();
        let mut op = MonoOp::identity(self.dim);
        match g.kind() {
            Kind::A | Kind::TildeA | Kind::ADag | Kind::TildeADag => {
                let m = self.mode_of(&g);
                let s = self.stride(m);
                let lower = g.kind().is_annihilator();
                for j in 0..self.dim {
                    let n = self.occupation(j, m);
                    if lower {
                        if n == 0 {
                            op.target[j] = NONE;
                        } else {
                            op.target[j] = (j - s) as u32;
                            op.amp[j] = Complex64::new((n as f64).sqrt(), 0.0);
                        }
                    } else if n + 1 >= self.levels {
                        op.target[j] = NONE;
                    } else {
                        op.target[j] = (j + s) as u32;
                        op.amp[j] = Complex64::new(((n + 1) as f64).sqrt(), 0.0);
                    }
                }
            }
            Kind::J | Kind::TildeJ if fermion => {
                let k = g.slot_index().unwrap() as usize;
                let base = if g.kind().is_tilde() {
                    self.cfg.slots as usize
                } else {
                    0
                };
                for j in 0..self.dim {
                    op.amp[j] = Complex64::new(self.parity(j, base..base + k), 0.0);
                }
            }
            Kind::Tau if fermion => {
                let modes = self.cfg.modes() as usize;
                for j in 0..self.dim {
                    op.amp[j] = Complex64::new(0.0, self.parity(j, 0..modes));
                }
            }
            _ => {}
        }
        op
    }

    pub fn image(&self, g: &Generator) -> Result<&MonoOp, FockError> {
        if let Some(k) = g.slot_index() {
            if k > self.cfg.slots {
                return Err(FockError::Algebra(AlgebraError::SlotOutOfRange {
                    slot: k,
                    slots: self.cfg.slots,
                }));
            }
        }
        self.images.get(g).ok_or(FockError::NeedsDoubled("tilde operators"))
    }

    pub fn word(&self, gens: &[Generator]) -> Result<MonoOp, FockError> {
        let mut acc = MonoOp::identity(self.dim);
        for g in gens.iter().rev() {
            acc = self.image(g)?.compose(&acc);
        }
        Ok(acc)
    }

    /// Evaluates `p` with coefficients at the given `nbar` and the lattice `dt`.
    pub fn evaluate(&self, p: &OperatorPoly, nbar: f64) -> Result<OpSum, FockError> {
        let mut terms = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            terms.push((c.eval(nbar, self.cfg.dt), self.word(&w.0)?));
        }
        Ok(OpSum { terms })
    }

    /// `p |v>` without materialising word matrices.
    pub fn apply(&self, p: &OperatorPoly, nbar: f64, v: &[Complex64]) -> Result<Vec<Complex64>, FockError> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (w, c) in p.terms() {
            let mut cur = v.to_vec();
            for g in w.0.iter().rev() {
                cur = self.image(g)?.apply(&cur);
            }
            let c = c.eval(nbar, self.cfg.dt);
            for (o, x) in out.iter_mut().zip(cur) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// `<v| p` as a row vector.
    pub fn apply_left(&self, p: &OperatorPoly, nbar: f64, v: &[Complex64]) -> Result<Vec<Complex64>, FockError> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (w, c) in p.terms() {
            let mut cur = v.to_vec();
            for g in w.0.iter() {
                cur = self.image(g)?.apply_left(&cur);
            }
            let c = c.eval(nbar, self.cfg.dt);
            for (o, x) in out.iter_mut().zip(cur) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// Basis states on which words with up to `ladders` ladder factors act
    /// without touching the boson truncation; all states for fermions.
    pub fn exact_columns(&self, ladders: usize) -> Vec<usize> {
        if self.cfg.statistics.is_fermion() {
            return (0..self.dim).collect();
        }
        let top = (self.levels - 1).saturating_sub(ladders);
        (0..self.dim)
            .filter(|&j| self.occupations(j).iter().all(|&n| n <= top))
            .collect()
    }
}

/// Number of ladder factors in the longest word of `p`.
pub fn max_ladders(p: &OperatorPoly) -> usize {
    p.terms()
        .map(|(w, _)| w.0.iter().filter(|g| g.kind().is_ladder()).count())
        .max()
        .unwrap_or(0)
}

/// A linear combination of monomial matrices.
#[derive(Clone, Debug)]
pub struct OpSum {
    terms: Vec<(Complex64, MonoOp)>,
}

impl OpSum {
    /// Entries of the given columns as `(row, col) -> value`.
    pub fn entries(&self, columns: &[usize]) -> HashMap<(u32, u32), Complex64> {
        let mut out: HashMap<(u32, u32), Complex64> = HashMap::new();
        for (c, m) in &self.terms {
            for &j in columns {
                let t = m.target[j];
                if t != NONE {
                    *out.entry((t, j as u32)).or_default() += c * m.amp[j];
                }
            }
        }
        out
    }

    /// `max |self - value * I|` over the entries of the given columns.
    pub fn deviation_from_scalar(&self, value: Complex64, columns: &[usize]) -> f64 {
        let mut col: Vec<(u32, Complex64)> = Vec::with_capacity(self.terms.len() + 1);
        let mut worst = 0.0f64;
        for &j in columns {
            col.clear();
            col.push((j as u32, -value));
            for (c, m) in &self.terms {
                let t = m.target[j];
                if t != NONE {
                    col.push((t, c * m.amp[j]));
                }
            }
            col.sort_by_key(|e| e.0);
            let mut i = 0;
            while i < col.len() {
                let mut acc = Complex64::new(0.0, 0.0);
                let row = col[i].0;
                while i < col.len() && col[i].0 == row {
                    acc += col[i].1;
                    i += 1;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn to_dense(&self, dim: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(dim, dim);
        for (c, op) in &self.terms {
            for j in 0..dim {
                let t = op.target[j];
                if t != NONE {
                    m[(t as usize, j)] += c * op.amp[j];
                }
            }
        }
        m
    }
}
