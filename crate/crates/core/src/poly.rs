//! Free-algebra polynomials: linear combinations of generator words with
//! exact [`ScalarExpr`] coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{render_factors_text, ScalarExpr};
use crate::statistics::StatisticsFlag;

/// A generator of some operator algebra.
pub trait Symbol: Clone + Ord + fmt::Debug {
    /// Text spelling in the expression language, e.g. `bd[3]` or `tau`.
    fn spelling(&self) -> String;

    /// Tilde partner together with the phase the tilde map attaches to it.
    fn tilde(&self, flag: StatisticsFlag) -> (ScalarExpr, Self);

    /// Lattice slot, if the generator carries one.
    fn slot(&self) -> Option<u32>;
}

/// An ordered product of generators.
///
/// Words are ordered longest first and then lexicographically, so printed
/// polynomials lead with their highest-degree terms and end with the constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word<G>(pub Vec<G>);

impl<G: Ord> Ord for Word<G> {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<G: Ord> PartialOrd for Word<G> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<G> Word<G> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<G: Symbol> {
    terms: BTreeMap<Word<G>, ScalarExpr>,
}

impl<G: Symbol> Default for Poly<G> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<G: Symbol> Poly<G> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(ScalarExpr::one())
    }

    pub fn scalar(c: ScalarExpr) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn generator(g: G) -> Self {
        Self::term(ScalarExpr::one(), vec![g])
    }

    pub fn word(gens: Vec<G>) -> Self {
        Self::term(ScalarExpr::one(), gens)
    }

    pub fn term(c: ScalarExpr, gens: Vec<G>) -> Self {
        let mut p = Self::zero();
        p.add_term(Word(gens), c);
        p
    }

    pub fn add_term(&mut self, w: Word<G>, c: ScalarExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<G>, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word<G>, ScalarExpr)> {
        self.terms.into_iter()
    }

    /// Coefficient of the empty word.
    pub fn scalar_part(&self) -> ScalarExpr {
        self.terms.get(&Word::empty()).cloned().unwrap_or_default()
    }

    /// The polynomial as a scalar, if it is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<ScalarExpr> {
        match self.terms.len() {
            0 => Some(ScalarExpr::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ScalarExpr) -> Self {
        let mut out = Self::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
        let mut out = Self::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), f(k));
        }
        out
    }

    pub fn try_map_coefficients<E>(&self, mut f: impl FnMut(&ScalarExpr) -> Result<ScalarExpr, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), f(k)?);
        }
        Ok(out)
    }

    /// Substitutes every generator by a polynomial over another alphabet.
    pub fn substitute<H: Symbol>(&self, mut f: impl FnMut(&G) -> Poly<H>) -> Poly<H> {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            let mut acc = Poly::scalar(c.clone());
            for g in &w.0 {
                acc = &acc * &f(g);
            }
            out = &out + &acc;
        }
        out
    }

    /// Antilinear tilde map applied factor by factor.
    pub fn tilde(&self, flag: StatisticsFlag) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut coeff = c.conj();
            let mut gens = Vec::with_capacity(w.len());
            for g in &w.0 {
                let (phase, partner) = g.tilde(flag);
                coeff = &coeff * &phase;
                gens.push(partner);
            }
            out.add_term(Word(gens), coeff);
        }
        out
    }

    pub fn max_slot(&self) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().filter_map(|g| g.slot()))
            .max()
    }

    /// Largest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl<G: Symbol> Add for &Poly<G> {
    type Output = Poly<G>;

    fn add(self, rhs: &Poly<G>) -> Poly<G> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<G: Symbol> Sub for &Poly<G> {
    type Output = Poly<G>;

    fn sub(self, rhs: &Poly<G>) -> Poly<G> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<G: Symbol> Neg for &Poly<G> {
    type Output = Poly<G>;

    fn neg(self) -> Poly<G> {
        self.scale(&ScalarExpr::from_int(-1))
    }
}

impl<G: Symbol> Mul for &Poly<G> {
    type Output = Poly<G>;

    fn mul(self, rhs: &Poly<G>) -> Poly<G> {
        let mut out = Poly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut gens = wa.0.clone();
                gens.extend(wb.0.iter().cloned());
                out.add_term(Word(gens), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl<G: Symbol> $tr for Poly<G> {
            type Output = Poly<G>;
            fn $m(self, rhs: Poly<G>) -> Poly<G> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl<G: Symbol> fmt::Display for Poly<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = c.split_sign();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !(mag.is_one() && !w.is_empty()) {
                parts.extend(render_factors_text(&mag));
            }
            parts.extend(w.0.iter().map(|g| g.spelling()));
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}
