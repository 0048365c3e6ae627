//! Exact coefficients for the symbolic layer.
//!
//! A [`ScalarExpr`] is a polynomial in the occupation symbol `nbar` and in
//! `sqrt(dt)` with Gaussian-rational coefficients, optionally divided by a
//! power of `(1 + s*nbar)` with `s = ±1`. Half-integer powers of `dt` are
//! needed because a single increment carries `sqrt(dt)`.
//!
//! Values are kept in a canonical form (no zero terms, no removable factor of
//! the denominator), so `==` is structural equality of the represented
//! rational function.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

/// Complex number with exact rational parts.
pub type Gauss = Complex<BigRational>;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gauss(re: BigRational, im: BigRational) -> Gauss {
    Complex::new(re, im)
}

fn gauss_int(re: i64, im: i64) -> Gauss {
    Complex::new(rational(re, 1), rational(im, 1))
}

/// `nbar^nbar * dt^(half_dt/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub nbar: u32,
    pub half_dt: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { nbar: 0, half_dt: 0 };

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            nbar: self.nbar + other.nbar,
            half_dt: self.half_dt + other.half_dt,
        }
    }
}

/// The factor `(1 + sign*nbar)^power` in a denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Denominator {
    pub sign: i8,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    terms: BTreeMap<Monomial, Gauss>,
    den: Option<Denominator>,
}

impl Default for ScalarExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr {
            terms: BTreeMap::new(),
            den: None,
        }
    }

    pub fn one() -> Self {
        Self::from_gauss(gauss_int(1, 0))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(gauss_int(n, 0))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_gauss(Complex::new(r, BigRational::zero()))
    }

    pub fn from_gauss(c: Gauss) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_gauss(gauss_int(0, 1))
    }

    pub fn nbar() -> Self {
        Self::monomial(gauss_int(1, 0), Monomial { nbar: 1, half_dt: 0 })
    }

    pub fn dt() -> Self {
        Self::dt_pow_half(2)
    }

    pub fn sqrt_dt() -> Self {
        Self::dt_pow_half(1)
    }

    pub fn dt_pow_half(half: u32) -> Self {
        Self::monomial(gauss_int(1, 0), Monomial { nbar: 0, half_dt: half })
    }

    pub fn monomial(c: Gauss, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ScalarExpr { terms, den: None }
    }

    /// `(1 + sign*nbar)^(-power)`.
    pub fn inverse_one_plus(sign: i8, power: u32) -> Self {
        assert!(sign == 1 || sign == -1, "denominator sign must be ±1");
        let mut s = Self::one();
        if power > 0 {
            s.den = Some(Denominator { sign, power });
        }
        s
    }

    /// `1 + sign*nbar`.
    pub fn one_plus(sign: i8) -> Self {
        Self::one() + Self::from_int(sign as i64) * Self::nbar()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gauss)> {
        self.terms.iter()
    }

    pub fn denominator(&self) -> Option<Denominator> {
        self.den
    }

    /// Returns the constant coefficient if the expression is a pure number.
    pub fn as_constant(&self) -> Option<Gauss> {
        if self.den.is_some() {
            return None;
        }
        match self.terms.len() {
            0 => Some(gauss_int(0, 0)),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn has_nbar(&self) -> bool {
        self.den.is_some() || self.terms.keys().any(|m| m.nbar > 0)
    }

    /// Half-integer `dt` orders present in the numerator.
    pub fn dt_orders(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.half_dt).collect()
    }

    /// Keeps only the numerator terms of the given `dt` order (in half units).
    pub fn dt_order(&self, half_dt: u32) -> ScalarExpr {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.half_dt == half_dt)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        ScalarExpr::normalized(terms, self.den)
    }

    /// Divides by `dt^(half/2)`; fails if any term has lower order.
    pub fn div_dt_pow_half(&self, half: u32) -> Result<ScalarExpr, ScalarError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.half_dt < half {
                return Err(ScalarError::NegativeDtPower);
            }
            terms.insert(
                Monomial {
                    nbar: m.nbar,
                    half_dt: m.half_dt - half,
                },
                c.clone(),
            );
        }
        Ok(ScalarExpr::normalized(terms, self.den))
    }

    /// Complex conjugation; `nbar` and `dt` are real symbols.
    pub fn conj(&self) -> ScalarExpr {
        ScalarExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
            den: self.den,
        }
    }

    pub fn pow(&self, n: u32) -> ScalarExpr {
        let mut acc = ScalarExpr::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse, available for nonzero constants and for
    /// `c*(1 + s*nbar)^k` shapes that stay inside the ring.
    pub fn inverse(&self) -> Result<ScalarExpr, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(c) = self.as_constant() {
            return Ok(ScalarExpr::from_gauss(gauss_int(1, 0) / c));
        }
        let dt_free = self.terms.keys().all(|m| m.half_dt == 0);
        if dt_free {
            for sign in [1i8, -1] {
                let base = ScalarExpr::one_plus(sign);
                // Divide out as many factors of (1 + s*nbar) as possible.
                let mut rest = self.clone();
                let mut k = 0u32;
                while let Some(q) = rest.exact_div_one_plus(sign) {
                    rest = q;
                    k += 1;
                }
                if k > 0 {
                    if let Some(c) = rest.as_constant() {
                        let inv = ScalarExpr::from_gauss(gauss_int(1, 0) / c) * ScalarExpr::inverse_one_plus(sign, k);
                        return Ok(inv);
                    }
                }
                if let Some(d) = self.den {
                    if d.sign == sign {
                        // c / (1+s nbar)^p  ->  (1+s nbar)^p / c
                        let numer = ScalarExpr {
                            terms: self.terms.clone(),
                            den: None,
                        };
                        if let Some(c) = numer.as_constant() {
                            return Ok(ScalarExpr::from_gauss(gauss_int(1, 0) / c) * base.pow(d.power));
                        }
                    }
                }
            }
        }
        Err(ScalarError::NotInvertible(self.to_string()))
    }

    fn exact_div_one_plus(&self, sign: i8) -> Option<ScalarExpr> {
        if self.den.is_some() {
            return None;
        }
        let q = divide_one_plus(&self.terms, sign)?;
        Some(ScalarExpr::normalized(q, None))
    }

    /// Substitutes an exact value for `nbar`.
    pub fn substitute_nbar(&self, value: &BigRational) -> Result<ScalarExpr, ScalarError> {
        let mut terms: BTreeMap<Monomial, Gauss> = BTreeMap::new();
        for (m, c) in &self.terms {
            let factor = num_traits::pow::pow(value.clone(), m.nbar as usize);
            let key = Monomial {
                nbar: 0,
                half_dt: m.half_dt,
            };
            let entry = terms.entry(key).or_insert_with(|| gauss_int(0, 0));
            *entry = entry.clone() + c * factor;
        }
        let mut out = ScalarExpr::normalized(terms, None);
        if let Some(d) = self.den {
            let base = BigRational::one() + rational(d.sign as i64, 1) * value;
            if base.is_zero() {
                return Err(ScalarError::Pole);
            }
            let scale = num_traits::pow::pow(base.recip(), d.power as usize);
            out = out * ScalarExpr::from_rational(scale);
        }
        Ok(out)
    }

    /// Floating-point evaluation at numeric `nbar` and `dt`.
    pub fn eval(&self, nbar: f64, dt: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let re = c.re.to_f64().unwrap_or(f64::NAN);
            let im = c.im.to_f64().unwrap_or(f64::NAN);
            let w = nbar.powi(m.nbar as i32) * dt.sqrt().powi(m.half_dt as i32);
            acc += Complex64::new(re, im) * w;
        }
        if let Some(d) = self.den {
            acc /= (1.0 + d.sign as f64 * nbar).powi(d.power as i32);
        }
        acc
    }

    fn normalized(mut terms: BTreeMap<Monomial, Gauss>, den: Option<Denominator>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return ScalarExpr::zero();
        }
        let Some(mut d) = den else {
            return ScalarExpr { terms, den: None };
        };
        while d.power > 0 {
            match divide_one_plus(&terms, d.sign) {
                Some(q) => {
                    terms = q;
                    terms.retain(|_, c| !c.is_zero());
                    d.power -= 1;
                }
                None => break,
            }
        }
        ScalarExpr {
            terms,
            den: (d.power > 0).then_some(d),
        }
    }

    fn numerator_times_one_plus(terms: &BTreeMap<Monomial, Gauss>, sign: i8, times: u32) -> BTreeMap<Monomial, Gauss> {
        let mut cur = terms.clone();
        for _ in 0..times {
            let mut next: BTreeMap<Monomial, Gauss> = BTreeMap::new();
            for (m, c) in &cur {
                add_into(&mut next, *m, c.clone());
                let shifted = Monomial {
                    nbar: m.nbar + 1,
                    half_dt: m.half_dt,
                };
                add_into(&mut next, shifted, c * rational(sign as i64, 1));
            }
            cur = next;
        }
        cur
    }

    /// Splits off an overall sign so that the printed leading coefficient is
    /// positive. Returns `(negative, magnitude)`.
    pub fn split_sign(&self) -> (bool, ScalarExpr) {
        match self.leading_coefficient() {
            Some(c) if is_negative(&c) => (true, -self),
            _ => (false, self.clone()),
        }
    }

    fn leading_coefficient(&self) -> Option<Gauss> {
        self.terms.values().next().cloned()
    }

    /// Renders in the text grammar understood by the expression parser.
    pub fn to_text(&self) -> String {
        render(self, Style::Text)
    }

    pub fn to_latex(&self) -> String {
        render(self, Style::Latex)
    }
}

fn add_into(map: &mut BTreeMap<Monomial, Gauss>, m: Monomial, c: Gauss) {
    let e = map.entry(m).or_insert_with(|| gauss_int(0, 0));
    *e = e.clone() + c;
}

fn is_negative(c: &Gauss) -> bool {
    if !c.re.is_zero() {
        c.re.is_negative()
    } else {
        c.im.is_negative()
    }
}

/// Exact division of a numerator by `(1 + s*nbar)`, grouping by `dt` order.
/// Uses `1 + s*nbar = s*(nbar + s)` and synthetic division at the root `-s`.
fn divide_one_plus(terms: &BTreeMap<Monomial, Gauss>, sign: i8) -> Option<BTreeMap<Monomial, Gauss>> {
    let mut by_dt: BTreeMap<u32, BTreeMap<u32, Gauss>> = BTreeMap::new();
    for (m, c) in terms {
        by_dt.entry(m.half_dt).or_default().insert(m.nbar, c.clone());
    }
    let root = rational(-(sign as i64), 1);
    let s = rational(sign as i64, 1);
    let mut out = BTreeMap::new();
    for (half_dt, poly) in by_dt {
        let degree = *poly.keys().next_back().unwrap();
        if degree == 0 {
            return None;
        }
        let coeff = |k: u32| poly.get(&k).cloned().unwrap_or_else(|| gauss_int(0, 0));
        // q has degree-1; q[k-1] = p[k] + root*q[k]
        let mut q = vec![gauss_int(0, 0); degree as usize];
        q[degree as usize - 1] = coeff(degree);
        for k in (1..degree).rev() {
            q[k as usize - 1] = coeff(k) + &q[k as usize] * &root;
        }
        let remainder = coeff(0) + &q[0] * &root;
        if !remainder.is_zero() {
            return None;
        }
        for (k, c) in q.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert(
                    Monomial {
                        nbar: k as u32,
                        half_dt,
                    },
                    c * &s,
                );
            }
        }
    }
    Some(out)
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;

    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (den, lhs_terms, rhs_terms) = match (self.den, rhs.den) {
            (None, None) => (None, self.terms.clone(), rhs.terms.clone()),
            (Some(d), None) => (
                Some(d),
                self.terms.clone(),
                ScalarExpr::numerator_times_one_plus(&rhs.terms, d.sign, d.power),
            ),
            (None, Some(d)) => (
                Some(d),
                ScalarExpr::numerator_times_one_plus(&self.terms, d.sign, d.power),
                rhs.terms.clone(),
            ),
            (Some(a), Some(b)) => {
                assert_eq!(a.sign, b.sign, "mixed denominator signs in one session");
                let p = a.power.max(b.power);
                (
                    Some(Denominator { sign: a.sign, power: p }),
                    ScalarExpr::numerator_times_one_plus(&self.terms, a.sign, p - a.power),
                    ScalarExpr::numerator_times_one_plus(&rhs.terms, b.sign, p - b.power),
                )
            }
        };
        let mut terms = lhs_terms;
        for (m, c) in rhs_terms {
            add_into(&mut terms, m, c);
        }
        ScalarExpr::normalized(terms, den)
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;

    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || rhs.is_zero() {
            return ScalarExpr::zero();
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                add_into(&mut terms, ma.times(*mb), ca * cb);
            }
        }
        let den = match (self.den, rhs.den) {
            (None, d) | (d, None) => d,
            (Some(a), Some(b)) => {
                assert_eq!(a.sign, b.sign, "mixed denominator signs in one session");
                Some(Denominator {
                    sign: a.sign,
                    power: a.power + b.power,
                })
            }
        };
        ScalarExpr::normalized(terms, den)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;

    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            den: self.den,
        }
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;

    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;

    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Mul, mul);
forward_owned!(Sub, sub);

impl AddAssign<&ScalarExpr> for ScalarExpr {
    fn add_assign(&mut self, rhs: &ScalarExpr) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

fn fmt_rational(r: &BigRational, style: Style) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    match style {
        Style::Text => format!("{}/{}", r.numer(), r.denom()),
        Style::Latex => {
            let sign = if r.is_negative() { "-" } else { "" };
            format!("{}\\frac{{{}}}{{{}}}", sign, r.numer().abs(), r.denom())
        }
    }
}

/// A coefficient magnitude; `None` for an implicit 1.
fn fmt_coefficient(c: &Gauss, style: Style) -> Option<String> {
    let one = BigRational::one();
    if c.im.is_zero() {
        if c.re == one {
            None
        } else {
            Some(fmt_rational(&c.re, style))
        }
    } else if c.re.is_zero() {
        if c.im == one {
            Some("i".to_string())
        } else {
            Some(format!("{} i", fmt_rational(&c.im, style)))
        }
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        let im = c.im.abs();
        let im_s = if im == one {
            "i".to_string()
        } else {
            format!("{} i", fmt_rational(&im, style))
        };
        Some(format!("({} {} {})", fmt_rational(&c.re, style), sign, im_s))
    }
}

fn fmt_power(base: &str, exp: &str, style: Style) -> String {
    match style {
        Style::Text => format!("{base}^{exp}"),
        Style::Latex => format!("{base}^{{{exp}}}"),
    }
}

fn fmt_monomial(m: Monomial, style: Style) -> Vec<String> {
    let (nb, dt) = match style {
        Style::Text => ("nbar", "dt"),
        Style::Latex => ("\\bar{n}", "\\Delta t"),
    };
    let mut out = Vec::new();
    match m.nbar {
        0 => {}
        1 => out.push(nb.to_string()),
        k => out.push(fmt_power(nb, &k.to_string(), style)),
    }
    match m.half_dt {
        0 => {}
        2 => out.push(dt.to_string()),
        h if h % 2 == 0 => out.push(fmt_power(dt, &(h / 2).to_string(), style)),
        h => {
            let e = match style {
                Style::Text => format!("({h}/2)"),
                Style::Latex => format!("{h}/2"),
            };
            out.push(fmt_power(dt, &e, style))
        }
    }
    out
}

fn join_factors(factors: &[String], style: Style) -> String {
    let sep = if style == Style::Latex { " \\, " } else { " " };
    factors.join(sep)
}

fn render(s: &ScalarExpr, style: Style) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let (negative, mag) = s.split_sign();
    let factors = render_factors(&mag, style);
    if !negative && style == Style::Text && factors.len() == 1 && is_group(&factors[0]) {
        return factors[0][1..factors[0].len() - 1].to_string();
    }
    let body = factors.join(if style == Style::Latex { " \\, " } else { " " });
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Whether `f` is one parenthesized group, e.g. `(1 + nbar)` but not `(1 + nbar)^-1`.
fn is_group(f: &str) -> bool {
    if !f.starts_with('(') {
        return false;
    }
    let mut depth = 0;
    for (i, ch) in f.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == f.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

/// Factor list of a nonzero, sign-normalized expression.
pub(crate) fn render_factors_text(s: &ScalarExpr) -> Vec<String> {
    render_factors(s, Style::Text)
}

fn render_factors(s: &ScalarExpr, style: Style) -> Vec<String> {
    let common = Monomial {
        nbar: s.terms.keys().map(|m| m.nbar).min().unwrap_or(0),
        half_dt: s.terms.keys().map(|m| m.half_dt).min().unwrap_or(0),
    };
    let mut inner: Vec<(Monomial, Gauss)> = s
        .terms
        .iter()
        .map(|(m, c)| {
            (
                Monomial {
                    nbar: m.nbar - common.nbar,
                    half_dt: m.half_dt - common.half_dt,
                },
                c.clone(),
            )
        })
        .collect();
    let imaginary = inner.iter().all(|(_, c)| c.re.is_zero());
    if imaginary {
        for (_, c) in inner.iter_mut() {
            *c = Complex::new(c.im.clone(), BigRational::zero());
        }
    }
    let mut factors = Vec::new();
    if inner.len() == 1 {
        if let Some(t) = fmt_coefficient(&inner[0].1, style) {
            factors.push(t);
        }
        if imaginary {
            factors.push("i".to_string());
        }
    } else {
        if imaginary {
            factors.push("i".to_string());
        }
        let mut body = String::new();
        for (idx, (m, c)) in inner.iter().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            let mut parts = Vec::new();
            let mono = fmt_monomial(*m, style);
            match fmt_coefficient(&mag, style) {
                Some(t) => parts.push(t),
                None if mono.is_empty() => parts.push("1".to_string()),
                None => {}
            }
            parts.extend(mono);
            let term = join_factors(&parts, style);
            if idx == 0 {
                if neg {
                    body.push('-');
                }
                body.push_str(&term);
            } else {
                body.push_str(if neg { " - " } else { " + " });
                body.push_str(&term);
            }
        }
        factors.push(match style {
            Style::Text => format!("({body})"),
            Style::Latex => format!("\\left({body}\\right)"),
        });
    }
    factors.extend(fmt_monomial(common, style));
    if let Some(d) = s.den {
        let nb = if style == Style::Latex { "\\bar{n}" } else { "nbar" };
        let sign = if d.sign > 0 { "+" } else { "-" };
        let base = match style {
            Style::Text => format!("(1 {sign} {nb})"),
            Style::Latex => format!("\\left(1 {sign} {nb}\\right)"),
        };
        factors.push(fmt_power(&base, &format!("-{}", d.power), style));
    }
    if factors.is_empty() {
        factors.push("1".to_string());
    }
    factors
}

impl serde::Serialize for ScalarExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_nbar(sigma: i64) -> ScalarExpr {
        ScalarExpr::one_plus(sigma as i8)
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = ScalarExpr::one() + ScalarExpr::nbar();
        let b = ScalarExpr::one() - ScalarExpr::nbar();
        let prod = &a * &b;
        let expected = ScalarExpr::one() - ScalarExpr::nbar().pow(2);
        assert_eq!(prod, expected);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn denominators_cancel_structurally() {
        for s in [1i8, -1] {
            let x = sigma_nbar(s as i64) * ScalarExpr::inverse_one_plus(s, 1);
            assert!(x.is_one(), "{x}");
            let y = sigma_nbar(s as i64).pow(2) * ScalarExpr::inverse_one_plus(s, 3);
            assert_eq!(y, ScalarExpr::inverse_one_plus(s, 1));
        }
    }

    #[test]
    fn sum_over_common_denominator() {
        // nbar/(1+nbar) + 1/(1+nbar) = 1
        let d = ScalarExpr::inverse_one_plus(1, 1);
        let x = ScalarExpr::nbar() * &d + d;
        assert!(x.is_one());
    }

    #[test]
    fn substitution_and_poles() {
        let x = ScalarExpr::nbar() * ScalarExpr::inverse_one_plus(-1, 1);
        let v = x.substitute_nbar(&rational(1, 5)).unwrap();
        assert_eq!(v, ScalarExpr::from_rational(rational(1, 4)));
        assert_eq!(x.substitute_nbar(&rational(1, 1)), Err(ScalarError::Pole));
    }

    #[test]
    fn inverse_of_one_plus_power() {
        let b = sigma_nbar(-1).pow(2) * ScalarExpr::from_int(3);
        let inv = b.inverse().unwrap();
        assert!((&inv * &b).is_one());
        assert!((ScalarExpr::nbar() + ScalarExpr::from_int(2)).inverse().is_err());
    }

    #[test]
    fn printing() {
        let dt = ScalarExpr::dt();
        assert_eq!((sigma_nbar(-1) * &dt).to_text(), "(1 - nbar) dt");
        assert_eq!((ScalarExpr::i() * ScalarExpr::nbar() * &dt).to_text(), "i nbar dt");
        assert_eq!((-(ScalarExpr::i() * ScalarExpr::nbar() * &dt)).to_text(), "-i nbar dt");
        assert_eq!((ScalarExpr::i() * sigma_nbar(-1) * &dt).to_text(), "i (1 - nbar) dt");
        assert_eq!(
            (-(ScalarExpr::i() * sigma_nbar(-1) * &dt)).to_text(),
            "-i (1 - nbar) dt"
        );
        assert_eq!(ScalarExpr::from_rational(rational(3, 2)).to_text(), "3/2");
        assert_eq!(ScalarExpr::from_int(-1).to_text(), "-1");
        assert_eq!(ScalarExpr::sqrt_dt().to_text(), "dt^(1/2)");
        assert_eq!(
            (ScalarExpr::nbar() * ScalarExpr::inverse_one_plus(1, 2)).to_text(),
            "nbar (1 + nbar)^-2"
        );
        assert_eq!(ScalarExpr::from_gauss(gauss_int(1, -2)).to_text(), "1 - 2 i");
        assert_eq!((ScalarExpr::one() + ScalarExpr::nbar()).to_text(), "1 + nbar");
        assert_eq!((-(ScalarExpr::one() + ScalarExpr::nbar())).to_text(), "-(1 + nbar)");
        assert_eq!(ScalarExpr::zero().to_text(), "0");
    }

    #[test]
    fn eval_matches_substitution() {
        let x = (ScalarExpr::i() * sigma_nbar(-1) + ScalarExpr::nbar().pow(2))
            * ScalarExpr::dt()
            * ScalarExpr::inverse_one_plus(-1, 1);
        let v = x.eval(0.2, 0.1);
        let exact = x.substitute_nbar(&rational(1, 5)).unwrap().eval(0.0, 0.1);
        assert!((v - exact).norm() < 1e-14);
    }
}
