//! Generic normal-ordering engine.
//!
//! A rule set assigns every generator a sort key and says what to do with an
//! adjacent pair. Rewriting bubbles out-of-order pairs into place; every step
//! either removes one inversion (a swap) or shortens the word (a contraction
//! or collapse), so the lexicographic measure (inversions, length) strictly
//! decreases and the process terminates.

use crate::poly::{Poly, Symbol, Word};
use crate::scalar::ScalarExpr;

/// Outcome for an adjacent pair `x y`.
#[derive(Clone, Debug, PartialEq)]
pub enum PairAction {
    /// Already in canonical order.
    Keep,
    /// `x y = sign * y x + contraction * 1`.
    Swap { sign: i8, contraction: Option<ScalarExpr> },
    /// `x y` equals a scalar (`None` is zero).
    Collapse(Option<ScalarExpr>),
}

pub trait OrderingRules {
    type Gen: Symbol;

    /// Action for the adjacent pair `x y`. Must return `Swap` only when `y`
    /// sorts strictly before `x`.
    fn pair(&self, x: &Self::Gen, y: &Self::Gen) -> PairAction;

    /// Generators equal to the identity under these rules.
    fn erase(&self, _g: &Self::Gen) -> bool {
        false
    }
}

/// Rewrites `p` into the canonical form defined by `rules`.
pub fn normal_order<R: OrderingRules>(rules: &R, p: &Poly<R::Gen>) -> Poly<R::Gen> {
    let mut out = Poly::zero();
    let mut work: Vec<(ScalarExpr, Vec<R::Gen>)> = p.terms().map(|(w, c)| (c.clone(), w.0.clone())).collect();
    while let Some((coeff, mut word)) = work.pop() {
        if coeff.is_zero() {
            continue;
        }
        word.retain(|g| !rules.erase(g));
        match first_rewrite(rules, &word) {
            None => out.add_term(Word(word), coeff),
            Some((i, action)) => match action {
                PairAction::Keep => unreachable!(),
                PairAction::Swap { sign, contraction } => {
                    if let Some(c) = contraction {
                        let mut shorter = word.clone();
                        shorter.drain(i..i + 2);
                        work.push((&coeff * &c, shorter));
                    }
                    word.swap(i, i + 1);
                    work.push((&coeff * &ScalarExpr::from_int(sign as i64), word));
                }
                PairAction::Collapse(Some(c)) => {
                    word.drain(i..i + 2);
                    work.push((&coeff * &c, word));
                }
                PairAction::Collapse(None) => {}
            },
        }
    }
    out
}

fn first_rewrite<R: OrderingRules>(rules: &R, word: &[R::Gen]) -> Option<(usize, PairAction)> {
    word.windows(2)
        .enumerate()
        .find_map(|(i, pair)| match rules.pair(&pair[0], &pair[1]) {
            PairAction::Keep => None,
            other => Some((i, other)),
        })
}

/// True when no rewrite applies anywhere in `p`.
pub fn is_normal<R: OrderingRules>(rules: &R, p: &Poly<R::Gen>) -> bool {
    p.terms()
        .all(|(w, _)| w.0.iter().all(|g| !rules.erase(g)) && first_rewrite(rules, &w.0).is_none())
}
