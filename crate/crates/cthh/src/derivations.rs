//! Brute-force oracle for the first Hochschild cohomology: normalized
//! derivations, inner normalized derivations, and their dimension gap, all
//! by exact linear algebra.
//!
//! A normalized derivation is determined by its values on arrows, with the
//! value on an arrow ranging over the parallel slice of the basis. The
//! Leibniz extension has to kill every defining relation modulo the ideal;
//! those are the only constraints needed, because an ideal whose generators
//! map into it is preserved by any derivation. Inner normalized derivations
//! come from the diagonal part of the basis (elements commuting with all
//! idempotents), modulo the centre.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::element::{Coeff, Element};
use crate::equivalence::{relation_invariant, EquivalenceError};
use crate::linalg::{Echelon, Matrix};
use crate::quiver::{ArrowId, PathWord};
use crate::rewrite::Presentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationError {
    /// The projected values fail the Leibniz constraints of the target.
    NotADerivation,
    /// The old part of the big presentation does not match the small one.
    MismatchedAlgebras,
}

impl fmt::Display for DerivationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationError::NotADerivation => {
                write!(f, "projected values do not satisfy the Leibniz constraints")
            }
            DerivationError::MismatchedAlgebras => {
                write!(f, "old arrows do not match the base presentation")
            }
        }
    }
}

/// A normalized derivation, stored by its values on arrows. Every value is
/// parallel to its arrow; zero values are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Derivation {
    values: BTreeMap<ArrowId, Element>,
}

impl Derivation {
    pub fn zero() -> Self {
        Derivation::default()
    }

    pub fn from_values(values: BTreeMap<ArrowId, Element>) -> Self {
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Derivation { values }
    }

    pub fn set_value(&mut self, arrow: ArrowId, value: Element) {
        if value.is_zero() {
            self.values.remove(&arrow);
        } else {
            self.values.insert(arrow, value);
        }
    }

    pub fn value(&self, arrow: ArrowId) -> Element {
        self.values.get(&arrow).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> impl Iterator<Item = (&ArrowId, &Element)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// The Leibniz extension applied to an element, reduced to normal form.
    /// Stationary words contribute nothing, matching normalization.
    pub fn apply(&self, p: &Presentation, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let arrows = w.arrows();
            for (i, a) in arrows.iter().enumerate() {
                let Some(value) = self.values.get(a) else {
                    continue;
                };
                for (t, tc) in value.terms() {
                    let mut joined = arrows[..i].to_vec();
                    joined.extend_from_slice(t.arrows());
                    joined.extend_from_slice(&arrows[i + 1..]);
                    let word = if joined.is_empty() {
                        PathWord::stationary(w.source(p.quiver()))
                    } else {
                        PathWord::Arrows(joined)
                    };
                    out.add_term(word, c * tc);
                }
            }
        }
        p.normal_form(&out)
    }
}

/// Bases of the normalized and inner normalized derivation spaces with their
/// dimensions; `hh1` is the gap.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    pub der0: Vec<Derivation>,
    pub int0: Vec<Derivation>,
}

impl DerivationSpace {
    pub fn der0_dimension(&self) -> usize {
        self.der0.len()
    }

    pub fn int0_dimension(&self) -> usize {
        self.int0.len()
    }

    pub fn hh1_dimension(&self) -> usize {
        self.der0.len() - self.int0.len()
    }
}

/// Unknown slots: one per (arrow, parallel basis word) pair.
fn slot_layout(p: &Presentation) -> Vec<(ArrowId, PathWord)> {
    let quiver = p.quiver();
    let mut slots = Vec::new();
    for a in quiver.arrow_ids() {
        for idx in p.parallel_basis(quiver.source(a), quiver.target(a)) {
            slots.push((a, p.basis()[idx].clone()));
        }
    }
    slots
}

/// A basis of the space of normalized derivations: solve, over the slots,
/// the vanishing of the Leibniz extension on every defining relation.
pub fn der0_basis(p: &Presentation) -> Vec<Derivation> {
    let dim = p.dimension();
    let slots = slot_layout(p);
    let relations = p.relations();
    let mut matrix = Matrix::zero(relations.len() * dim, slots.len());

    for (s, (arrow, w)) in slots.iter().enumerate() {
        for (r, rel) in relations.iter().enumerate() {
            let mut contribution = Element::zero();
            for (u, c) in rel.terms() {
                let arrows = u.arrows();
                for i in 0..arrows.len() {
                    if arrows[i] != *arrow {
                        continue;
                    }
                    let mut joined = arrows[..i].to_vec();
                    joined.extend_from_slice(w.arrows());
                    joined.extend_from_slice(&arrows[i + 1..]);
                    let word = if joined.is_empty() {
                        PathWord::stationary(u.source(p.quiver()))
                    } else {
                        PathWord::Arrows(joined)
                    };
                    contribution.add_term(word, c.clone());
                }
            }
            for (coord, value) in p.coordinates(&contribution).into_iter().enumerate() {
                matrix.set(r * dim + coord, s, value);
            }
        }
    }

    matrix
        .kernel_basis()
        .into_iter()
        .map(|vector| {
            let mut d = Derivation::zero();
            for (s, coeff) in vector.into_iter().enumerate() {
                if !coeff.is_zero() {
                    let (arrow, w) = &slots[s];
                    let mut v = d.value(*arrow);
                    v.add_term(w.clone(), coeff);
                    d.set_value(*arrow, v);
                }
            }
            d
        })
        .collect()
}

/// A basis of the inner normalized derivations: `b -> cb - bc` for `c`
/// running over the diagonal basis words, reduced to independent ones.
pub fn int0_basis(p: &Presentation) -> Vec<Derivation> {
    let quiver = p.quiver();
    let slots = slot_layout(p);
    let slot_index: BTreeMap<(ArrowId, PathWord), usize> = slots
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();

    let diag: Vec<&PathWord> = p
        .basis()
        .iter()
        .filter(|w| w.source(quiver) == w.target(quiver))
        .collect();

    let mut ech = Echelon::new(slots.len());
    let mut basis = Vec::new();
    for c in diag {
        let ce = Element::from_word((*c).clone());
        let mut d = Derivation::zero();
        let mut coords = vec![Coeff::zero(); slots.len()];
        for a in quiver.arrow_ids() {
            let ae = Element::from_word(PathWord::Arrows(vec![a]));
            let value = p.normal_form(&ce.mul(&ae, quiver).sub(&ae.mul(&ce, quiver)));
            for (w, coeff) in value.terms() {
                let s = slot_index[&(a, w.clone())];
                coords[s] = coeff.clone();
            }
            d.set_value(a, value);
        }
        if ech.insert(coords) {
            basis.push(d);
        }
    }
    basis
}

pub fn derivation_space(p: &Presentation) -> DerivationSpace {
    DerivationSpace {
        der0: der0_basis(p),
        int0: int0_basis(p),
    }
}

/// `dim Der0 - dim Int0`.
pub fn hh1_dimension(p: &Presentation) -> usize {
    derivation_space(p).hh1_dimension()
}

fn old_arrow_map(b: &Presentation, c: &Presentation) -> Result<BTreeMap<ArrowId, ArrowId>, DerivationError> {
    let bq = b.quiver();
    let cq = c.quiver();
    let mut map = BTreeMap::new();
    for a in bq.arrow_ids() {
        if bq.is_new(a) {
            continue;
        }
        let arrow = bq.arrow(a);
        let ca = cq
            .find_arrow(&arrow.label)
            .ok_or(DerivationError::MismatchedAlgebras)?;
        let endpoints_match = cq.point_label(cq.source(ca))
            == bq.point_label(arrow.source)
            && cq.point_label(cq.target(ca)) == bq.point_label(arrow.target);
        if !endpoints_match {
            return Err(DerivationError::MismatchedAlgebras);
        }
        map.insert(a, ca);
    }
    if map.len() != cq.arrow_count() {
        return Err(DerivationError::MismatchedAlgebras);
    }
    Ok(map)
}

/// Restriction of a derivation of the extension to the base: values on old
/// arrows keep only the words free of new arrows, reinterpreted over the
/// base presentation and verified against its Leibniz constraints.
pub fn project_derivation(
    b: &Presentation,
    c: &Presentation,
    delta: &Derivation,
) -> Result<Derivation, DerivationError> {
    let bq = b.quiver();
    let map = old_arrow_map(b, c)?;

    let mut out = Derivation::zero();
    for (b_arrow, c_arrow) in &map {
        let value = delta.value(*b_arrow);
        let mut projected = Element::zero();
        for (w, coeff) in value.terms() {
            if w.arrows().iter().any(|a| bq.is_new(*a)) {
                continue;
            }
            let translated: Vec<ArrowId> = w.arrows().iter().map(|a| map[a]).collect();
            let word = if translated.is_empty() {
                match w {
                    PathWord::Stationary(x) => PathWord::Stationary(
                        c.quiver()
                            .find_point(bq.point_label(*x))
                            .ok_or(DerivationError::MismatchedAlgebras)?,
                    ),
                    PathWord::Arrows(_) => unreachable!("empty translated arrow word"),
                }
            } else {
                PathWord::Arrows(translated)
            };
            projected.add_term(word, coeff.clone());
        }
        out.set_value(*c_arrow, projected);
    }

    for rel in c.relations() {
        if !out.apply(c, rel).is_zero() {
            return Err(DerivationError::NotADerivation);
        }
    }
    Ok(out)
}

/// The dimension bookkeeping of the short exact sequence: consistency means
/// `dim HH1(B) = dim HH1(C) + n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSequenceReport {
    pub hh1_b: usize,
    pub hh1_c: usize,
    pub invariant: usize,
    pub consistent: bool,
}

/// Computes both oracle dimensions and the relation invariant of `b` (which
/// must carry provenance tags) and reports whether they satisfy the
/// dimension identity.
pub fn check_exact_sequence(
    b: &Presentation,
    c: &Presentation,
) -> Result<ExactSequenceReport, EquivalenceError> {
    let hh1_b = hh1_dimension(b);
    let hh1_c = hh1_dimension(c);
    let invariant = relation_invariant(b)?;
    Ok(ExactSequenceReport {
        hh1_b,
        hh1_c,
        invariant,
        consistent: hh1_b == hh1_c + invariant,
    })
}
