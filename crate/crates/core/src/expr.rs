//! The operator expression language: a small parser, an AST printer and the
//! lowering of an AST to polynomials over level-0, fraktur or c generators.
//!
//! ```text
//! expr     := ('+' | '-')? term (('+' | '-') term)*
//! term     := power ('*'? power)*
//! power    := primary ('^' exponent)?
//! exponent := '-'? INT | '(' '-'? INT ('/' INT)? ')'
//! primary  := INT ('/' INT)? | 'i' | 'nbar' | 'dt' | 'tau'
//!           | NAME '[' INT ']' | '(' expr ')'
//! ```
//!
//! The printed form of every polynomial parses back to the same polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Generator, Kind};
use crate::error::ParseError;
use crate::ito::Increment;
use crate::poly::{Poly, Symbol};
use crate::scalar::ScalarExpr;
use crate::statistics::StatisticsFlag;
use crate::thermal::{c_in_fraktur, fraktur_in_c, fraktur_words, CGenerator, CKind, FrakturGenerator, FrakturKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomName {
    B,
    Bd,
    Tb,
    Tbd,
    J,
    TJ,
    Tau,
    Fb,
    Fbd,
    Tfb,
    Tfbd,
    C,
    Cv,
    Tc,
    Tcv,
    DB,
    DBd,
    DtB,
    DtBd,
}

impl AtomName {
    pub const ALL: [AtomName; 19] = [
        AtomName::B,
        AtomName::Bd,
        AtomName::Tb,
        AtomName::Tbd,
        AtomName::J,
        AtomName::TJ,
        AtomName::Tau,
        AtomName::Fb,
        AtomName::Fbd,
        AtomName::Tfb,
        AtomName::Tfbd,
        AtomName::C,
        AtomName::Cv,
        AtomName::Tc,
        AtomName::Tcv,
        AtomName::DB,
        AtomName::DBd,
        AtomName::DtB,
        AtomName::DtBd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AtomName::B => "b",
            AtomName::Bd => "bd",
            AtomName::Tb => "tb",
            AtomName::Tbd => "tbd",
            AtomName::J => "J",
            AtomName::TJ => "tJ",
            AtomName::Tau => "tau",
            AtomName::Fb => "fb",
            AtomName::Fbd => "fbd",
            AtomName::Tfb => "tfb",
            AtomName::Tfbd => "tfbd",
            AtomName::C => "c",
            AtomName::Cv => "cv",
            AtomName::Tc => "tc",
            AtomName::Tcv => "tcv",
            AtomName::DB => "dB",
            AtomName::DBd => "dBd",
            AtomName::DtB => "dtB",
            AtomName::DtBd => "dtBd",
        }
    }

    pub fn from_name(s: &str) -> Option<AtomName> {
        AtomName::ALL.into_iter().find(|a| a.name() == s)
    }

    fn level0(self) -> Option<Kind> {
        Some(match self {
            AtomName::B => Kind::A,
            AtomName::Bd => Kind::ADag,
            AtomName::Tb => Kind::TildeA,
            AtomName::Tbd => Kind::TildeADag,
            AtomName::J => Kind::J,
            AtomName::TJ => Kind::TildeJ,
            AtomName::Tau => Kind::Tau,
            _ => return None,
        })
    }

    fn fraktur(self) -> Option<FrakturKind> {
        Some(match self {
            AtomName::Fb => FrakturKind::Fb,
            AtomName::Fbd => FrakturKind::FbDag,
            AtomName::Tfb => FrakturKind::TildeFb,
            AtomName::Tfbd => FrakturKind::TildeFbDag,
            _ => return None,
        })
    }

    fn c(self) -> Option<CKind> {
        Some(match self {
            AtomName::C => CKind::C,
            AtomName::Cv => CKind::CVenus,
            AtomName::Tc => CKind::TildeC,
            AtomName::Tcv => CKind::TildeCVenus,
            _ => return None,
        })
    }

    fn increment(self) -> Option<Increment> {
        Some(match self {
            AtomName::DB => Increment::DB,
            AtomName::DBd => Increment::DBDag,
            AtomName::DtB => Increment::DTildeB,
            AtomName::DtBd => Increment::DTildeBDag,
            _ => return None,
        })
    }
}

/// Source position, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub name: AtomName,
    /// 0 for `tau`.
    pub slot: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarLit {
    Rational(BigRational),
    I,
    Nbar,
    Dt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primary {
    Scalar(ScalarLit),
    Atom(Atom),
    Group(ExprAst),
}

/// Exponent `num/den`, with `den` 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exponent {
    pub num: i64,
    pub den: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub primary: Primary,
    pub exponent: Option<Exponent>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAst {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        column += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let p = self.pos();
        Err(ParseError::Syntax {
            line: p.line,
            column: p.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", describe(&t), describe(self.peek())))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => break,
            }
            self.bump();
        }
        Ok(ExprAst { terms })
    }

    fn term(&mut self, negative: bool) -> Result<Term, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(self.factor()?);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(Term { negative, factors })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let pos = self.pos();
        let primary = self.primary()?;
        let exponent = if *self.peek() == Tok::Caret {
            self.bump();
            Some(self.exponent()?)
        } else {
            None
        };
        Ok(Factor { primary, exponent, pos })
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => match n.to_i64() {
                Some(v) if v <= u32::MAX as i64 => {
                    self.bump();
                    Ok(v)
                }
                _ => self.error(format!("integer `{n}` is too large here")),
            },
            t => self.error(format!("expected an integer, found {}", describe(&t))),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let v = self.small_int()?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        if *self.peek() != Tok::LParen {
            return Ok(Exponent {
                num: self.signed_int()?,
                den: 1,
            });
        }
        self.bump();
        let num = self.signed_int()?;
        let den = if *self.peek() == Tok::Slash {
            self.bump();
            let d = self.small_int()?;
            if d != 1 && d != 2 {
                return self.error("exponent denominators must be 1 or 2");
            }
            d as u32
        } else {
            1
        };
        self.expect(Tok::RParen)?;
        Ok(Exponent { num, den })
    }

    fn primary(&mut self) -> Result<Primary, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                let den = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        (Tok::Int(d), _) if !d.is_zero() => d,
                        (Tok::Int(_), p) => {
                            return Err(ParseError::Syntax {
                                line: p.line,
                                column: p.column,
                                message: "division by zero".into(),
                            })
                        }
                        (t, p) => {
                            return Err(ParseError::Syntax {
                                line: p.line,
                                column: p.column,
                                message: format!("expected a denominator, found {}", describe(&t)),
                            })
                        }
                    }
                } else {
                    BigInt::one()
                };
                Ok(Primary::Scalar(ScalarLit::Rational(BigRational::new(n, den))))
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Primary::Scalar(ScalarLit::I)),
                "nbar" => Ok(Primary::Scalar(ScalarLit::Nbar)),
                "dt" => Ok(Primary::Scalar(ScalarLit::Dt)),
                "tau" => Ok(Primary::Atom(Atom {
                    name: AtomName::Tau,
                    slot: 0,
                })),
                _ => {
                    let atom = AtomName::from_name(&name).ok_or_else(|| ParseError::UnknownAtom {
                        line: pos.line,
                        column: pos.column,
                        name: name.clone(),
                    })?;
                    self.expect(Tok::LBracket)?;
                    let slot_pos = self.pos();
                    let slot = self.small_int()?;
                    if slot == 0 {
                        return Err(ParseError::ZeroSlot {
                            line: slot_pos.line,
                            column: slot_pos.column,
                        });
                    }
                    self.expect(Tok::RBracket)?;
                    Ok(Primary::Atom(Atom {
                        name: atom,
                        slot: slot as u32,
                    }))
                }
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Primary::Group(inner))
            }
            t => Err(ParseError::Syntax {
                line: pos.line,
                column: pos.column,
                message: format!("expected an operand, found {}", describe(&t)),
            }),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<ExprAst, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0 };
    if *p.peek() == Tok::Eof {
        return p.error("empty expression");
    }
    let ast = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(ast)
}

/// Parses and lowers in one step.
pub fn parse_poly<G: Lower>(src: &str, flag: StatisticsFlag) -> Result<Poly<G>, ParseError> {
    parse_expr(src)?.lower(flag)
}

/// Generator alphabets an expression can be lowered to.
pub trait Lower: Symbol {
    fn lower_atom(atom: &Atom, flag: StatisticsFlag) -> Option<Poly<Self>>;

    /// Name of the alphabet, for error messages.
    fn alphabet() -> &'static str;
}

impl Lower for Generator {
    fn lower_atom(atom: &Atom, flag: StatisticsFlag) -> Option<Poly<Self>> {
        if let Some(kind) = atom.name.level0() {
            return Some(Generator::new(kind, atom.slot).poly());
        }
        FrakturGenerator::lower_atom(atom, flag).map(|p| fraktur_words(&p))
    }

    fn alphabet() -> &'static str {
        "level-0"
    }
}

impl Lower for FrakturGenerator {
    fn lower_atom(atom: &Atom, flag: StatisticsFlag) -> Option<Poly<Self>> {
        let k = atom.slot;
        if let Some(kind) = atom.name.fraktur() {
            Some(FrakturGenerator::new(kind, k).poly())
        } else if let Some(kind) = atom.name.c() {
            Some(c_in_fraktur(flag, kind, k))
        } else {
            atom.name.increment().map(|inc| inc.expand(k))
        }
    }

    fn alphabet() -> &'static str {
        "fraktur"
    }
}

impl Lower for CGenerator {
    fn lower_atom(atom: &Atom, flag: StatisticsFlag) -> Option<Poly<Self>> {
        let k = atom.slot;
        if let Some(kind) = atom.name.c() {
            return Some(CGenerator::new(kind, k).poly());
        }
        FrakturGenerator::lower_atom(atom, flag).map(|p| p.substitute(|g| fraktur_in_c(flag, g.kind, g.slot)))
    }

    fn alphabet() -> &'static str {
        "c-basis"
    }
}

fn semantic(pos: Pos, message: String) -> ParseError {
    ParseError::Semantic(format!("{pos}: {message}"))
}

impl ExprAst {
    pub fn lower<G: Lower>(&self, flag: StatisticsFlag) -> Result<Poly<G>, ParseError> {
        let mut out = Poly::zero();
        for t in &self.terms {
            let mut prod = Poly::one();
            for f in &t.factors {
                prod = prod * f.lower::<G>(flag)?;
            }
            out = if t.negative { out - prod } else { out + prod };
        }
        Ok(out)
    }

    /// Largest slot index mentioned.
    pub fn max_slot(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|t| &t.factors)
            .map(|f| match &f.primary {
                Primary::Atom(a) => a.slot,
                Primary::Group(g) => g.max_slot(),
                Primary::Scalar(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

impl Factor {
    fn lower<G: Lower>(&self, flag: StatisticsFlag) -> Result<Poly<G>, ParseError> {
        let base: Poly<G> = match &self.primary {
            Primary::Scalar(s) => Poly::scalar(match s {
                ScalarLit::Rational(r) => ScalarExpr::from_rational(r.clone()),
                ScalarLit::I => ScalarExpr::i(),
                ScalarLit::Nbar => ScalarExpr::nbar(),
                ScalarLit::Dt => ScalarExpr::dt(),
            }),
            Primary::Atom(a) => G::lower_atom(a, flag).ok_or_else(|| {
                semantic(
                    self.pos,
                    format!("`{}` has no image in the {} alphabet", a.name.name(), G::alphabet()),
                )
            })?,
            Primary::Group(g) => g.lower(flag)?,
        };
        let Some(e) = self.exponent else {
            return Ok(base);
        };
        if e.den == 2 {
            if base != Poly::scalar(ScalarExpr::dt()) || e.num < 0 {
                return Err(semantic(
                    self.pos,
                    "half-integer powers are only defined for dt with a nonnegative exponent".into(),
                ));
            }
            return Ok(Poly::scalar(ScalarExpr::dt_pow_half(e.num as u32)));
        }
        if e.num >= 0 {
            let mut out = Poly::one();
            for _ in 0..e.num {
                out = &out * &base;
            }
            return Ok(out);
        }
        let inv = base
            .as_scalar()
            .ok_or_else(|| semantic(self.pos, "negative powers need a scalar base".into()))?
            .inverse()
            .map_err(|err| semantic(self.pos, err.to_string()))?;
        Ok(Poly::scalar(inv.pow(e.num.unsigned_abs() as u32)))
    }
}

impl fmt::Display for ScalarLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarLit::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ScalarLit::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ScalarLit::I => f.write_str("i"),
            ScalarLit::Nbar => f.write_str("nbar"),
            ScalarLit::Dt => f.write_str("dt"),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.primary {
            Primary::Scalar(ScalarLit::Rational(r)) if r.is_negative() => {
                write!(f, "({})", ScalarLit::Rational(r.clone()))?
            }
            Primary::Scalar(s) => write!(f, "{s}")?,
            Primary::Atom(a) if a.name == AtomName::Tau => f.write_str("tau")?,
            Primary::Atom(a) => write!(f, "{}[{}]", a.name.name(), a.slot)?,
            Primary::Group(g) => write!(f, "({g})")?,
        }
        match self.exponent {
            None => Ok(()),
            Some(Exponent { num, den: 1 }) => write!(f, "^{num}"),
            Some(Exponent { num, den }) => write!(f, "^({num}/{den})"),
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, t) in self.terms.iter().enumerate() {
            match (idx, t.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let parts: Vec<String> = t.factors.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::thermal::{CPoly, FrakturPoly};
    use crate::OperatorPoly;

    const F: StatisticsFlag = StatisticsFlag::Fermion;
    const B: StatisticsFlag = StatisticsFlag::Boson;

    fn reduce(src: &str, flag: StatisticsFlag) -> OperatorPoly {
        Algebra::new(flag).normal_order(&parse_poly(src, flag).unwrap())
    }

    #[test]
    fn two_term_ast() {
        let ast = parse_expr("fb[1] fbd[2] - fbd[2] fb[1]").unwrap();
        assert_eq!(ast.terms.len(), 2);
        assert!(ast.terms[1].negative);
        assert_eq!(ast.to_string(), "fb[1] fbd[2] - fbd[2] fb[1]");
    }

    #[test]
    fn zero_slot_rejected() {
        assert_eq!(parse_expr("b[0]"), Err(ParseError::ZeroSlot { line: 1, column: 3 }));
    }

    #[test]
    fn positions_and_unknown_atoms() {
        match parse_expr("b[1]\n  + q[2]") {
            Err(ParseError::UnknownAtom {
                line: 2,
                column: 5,
                name,
            }) => assert_eq!(name, "q"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_expr("b[1] +"),
            Err(ParseError::Syntax { line: 1, column: 7, .. })
        ));
        assert!(matches!(parse_expr("b[1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_expr("b[1] $"),
            Err(ParseError::Syntax { column: 6, .. })
        ));
    }

    #[test]
    fn reflection_law_from_text() {
        for flag in [B, F] {
            let lhs = reduce("J[2] b[1]", flag);
            let rhs = reduce("b[1] J[2]", flag).scale(&flag.sigma_expr());
            assert_eq!(lhs, rhs);
        }
        assert_eq!(reduce("b[1] J[2]", F).to_text(), "-J[2] b[1]");
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce("b[1] bd[1]", B).to_text(), "bd[1] b[1] + 1");
        assert_eq!(reduce("fb[1] fbd[1] + fbd[1] fb[1]", F).to_text(), "1");
        assert_eq!(reduce("J[1] J[1]", F).to_text(), "1");
        assert_eq!(reduce("J[1]J[1]", B).to_text(), "1");
    }

    #[test]
    fn scalars_and_powers() {
        let p: OperatorPoly = parse_poly("(1 + nbar)^-1 (1 + nbar) b[1]", B).unwrap();
        assert_eq!(p.to_text(), "b[1]");
        let q: OperatorPoly = parse_poly("dt^(1/2) dt^(1/2)", B).unwrap();
        assert_eq!(q, Poly::scalar(ScalarExpr::dt()));
        let r: OperatorPoly = parse_poly("2 * 3/4 i", B).unwrap();
        assert_eq!(r.to_text(), "3/2 i");
        assert!(parse_poly::<Generator>("b[1]^-1", B).is_err());
        assert!(parse_poly::<Generator>("nbar^(1/2)", B).is_err());
    }

    #[test]
    fn alphabets() {
        let c: CPoly = parse_poly("c[1] cv[1]", F).unwrap();
        assert_eq!(c.len(), 1);
        let f: FrakturPoly = parse_poly("c[1]", B).unwrap();
        assert_eq!(f.len(), 2);
        assert!(parse_poly::<FrakturGenerator>("b[1]", B).is_err());
        let inc: FrakturPoly = parse_poly("dB[2]", F).unwrap();
        assert_eq!(inc, Increment::DB.expand(2));
    }

    #[test]
    fn printed_forms_round_trip() {
        let sources = [
            "(1 - nbar)^-1 fb[1] tfbd[2] - i nbar dt",
            "3/2 dt^(3/2) b[1] + (2 - 3 i) tau J[2]",
            "-1/3 nbar^2 c[1] cv[2] + 7",
        ];
        for s in sources {
            for flag in [B, F] {
                let p: OperatorPoly = parse_poly(s, flag).unwrap();
                assert_eq!(parse_poly::<Generator>(&p.to_text(), flag).unwrap(), p, "{p}");
                let f: FrakturPoly = match parse_poly(s, flag) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                assert_eq!(parse_poly::<FrakturGenerator>(&f.to_text(), flag).unwrap(), f);
            }
        }
        let c: CPoly = parse_poly("fb[1] fbd[1] - tfb[2]", F).unwrap();
        assert_eq!(parse_poly::<CGenerator>(&c.to_text(), F).unwrap(), c);
    }
}
