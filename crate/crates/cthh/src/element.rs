//! Formal linear combinations of parallel path words with exact rational
//! coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::quiver::{PathWord, PointId, Quiver};

/// Exact scalar: arbitrary-precision rational.
pub type Coeff = BigRational;

pub fn coeff(numer: i64, denom: i64) -> Coeff {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn coeff_int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of the path algebra: finitely many path words with nonzero
/// coefficients, all sharing one (source, target) pair. The zero element has
/// no terms. Zero coefficients are normalized away eagerly, so equality is
/// structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<PathWord, Coeff>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_word(word: PathWord) -> Self {
        Element::from_term(word, Coeff::one())
    }

    pub fn from_term(word: PathWord, c: Coeff) -> Self {
        let mut e = Element::zero();
        e.add_term(word, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl Iterator<Item = (&PathWord, &Coeff)> {
        self.terms.iter()
    }

    /// Terms in descending term order, leading term first.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&PathWord, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn words(&self) -> impl Iterator<Item = &PathWord> {
        self.terms.keys()
    }

    pub fn coeff_of(&self, word: &PathWord) -> Option<&Coeff> {
        self.terms.get(word)
    }

    /// The maximal term in the term order, if any.
    pub fn leading(&self) -> Option<(&PathWord, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, word: PathWord, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        let mut out = Element::zero();
        if c.is_zero() {
            return out;
        }
        for (w, existing) in &self.terms {
            out.terms.insert(w.clone(), existing * c);
        }
        out
    }

    /// Path algebra product. Non-composable word pairs contribute zero.
    pub fn mul(&self, other: &Element, quiver: &Quiver) -> Element {
        let mut out = Element::zero();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                if let Some(w) = u.compose(v, quiver) {
                    out.add_term(w, cu * cv);
                }
            }
        }
        out
    }

    /// The shared (source, target) pair, `None` for the zero element.
    pub fn endpoints(&self, quiver: &Quiver) -> Option<(PointId, PointId)> {
        self.terms
            .keys()
            .next()
            .map(|w| (w.source(quiver), w.target(quiver)))
    }

    /// Whether every term shares one (source, target) pair. Vacuously true
    /// for zero.
    pub fn is_parallel(&self, quiver: &Quiver) -> bool {
        let mut endpoints = None;
        for w in self.terms.keys() {
            let e = (w.source(quiver), w.target(quiver));
            match endpoints {
                None => endpoints = Some(e),
                Some(prev) if prev != e => return false,
                _ => {}
            }
        }
        true
    }

    /// Minimum term length, `None` for zero. Admissible-ideal generators
    /// need this to be at least 2.
    pub fn min_term_len(&self) -> Option<usize> {
        self.terms.keys().map(PathWord::len).min()
    }

    pub fn words_vec(&self) -> Vec<PathWord> {
        self.terms.keys().cloned().collect()
    }

    /// Renders the element with labels, e.g. `a.b - 1/2*c.d`.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms_desc().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() {
                if mag.denom().is_one() {
                    let _ = write!(out, "{}*", mag.numer());
                } else {
                    let _ = write!(out, "{}/{}*", mag.numer(), mag.denom());
                }
            }
            out.push_str(&w.display(quiver));
        }
        out
    }
}
