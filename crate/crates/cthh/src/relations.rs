//! Minimality and strong minimality of relations, conversion of a system of
//! relations into a strongly minimal one, and the linear-dependence circuit
//! machinery both rest on.
//!
//! A relation is an ideal element with all coefficients nonzero. It is
//! minimal when no proper nonempty sub-sum with its own coefficients lies in
//! the ideal, and strongly minimal when no proper nonempty subset of its
//! terms supports any all-nonzero combination in the ideal. Over an infinite
//! field the latter is a matroid statement: the support must be a circuit of
//! the normal-form vectors of its terms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::element::{Coeff, Element};
use crate::linalg::Matrix;
use crate::quiver::{PathWord, PointId};
use crate::rewrite::{complete_rewriting, Presentation, RewriteError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationError {
    /// The element does not reduce to zero, so it is not in the ideal.
    NotARelation,
    /// Strengthening produced a set that fails cross-reduction against the
    /// input, or an input relation could not be strengthened at all.
    NotAGeneratingSet,
    Rewrite(RewriteError),
}

impl fmt::Display for RelationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationError::NotARelation => write!(f, "element has nonzero normal form"),
            RelationError::NotAGeneratingSet => {
                write!(f, "relation sets do not generate the same ideal")
            }
            RelationError::Rewrite(e) => write!(f, "{e}"),
        }
    }
}

impl From<RewriteError> for RelationError {
    fn from(e: RewriteError) -> Self {
        RelationError::Rewrite(e)
    }
}

/// Distinct parallel words of length >= 2 with nonzero normal form, together
/// with their normal-form coordinates. Words are kept in descending term
/// order, so index 0 is the largest word.
#[derive(Debug, Clone)]
pub struct ParallelFamily {
    pub source: PointId,
    pub target: PointId,
    words: Vec<PathWord>,
    vectors: Vec<Vec<Coeff>>,
}

impl ParallelFamily {
    /// Builds the family from candidate words. Words of length < 2, words
    /// with zero normal form, duplicates and words not running from `source`
    /// to `target` are dropped.
    pub fn build(
        p: &Presentation,
        source: PointId,
        target: PointId,
        candidates: impl IntoIterator<Item = PathWord>,
    ) -> ParallelFamily {
        let q = p.quiver();
        let mut words: Vec<PathWord> = candidates
            .into_iter()
            .filter(|w| {
                w.len() >= 2
                    && w.source(q) == source
                    && w.target(q) == target
                    && !p.word_normal_form(w).is_zero()
            })
            .collect();
        words.sort();
        words.dedup();
        words.reverse();
        let vectors = words
            .iter()
            .map(|w| p.coordinates(&Element::from_word(w.clone())))
            .collect();
        ParallelFamily {
            source,
            target,
            words,
            vectors,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[PathWord] {
        &self.words
    }

    fn column_matrix(&self, subset: &[usize]) -> Matrix {
        let dim = self.vectors.first().map_or(0, Vec::len);
        let mut m = Matrix::zero(dim, subset.len());
        for (col, &idx) in subset.iter().enumerate() {
            for (row, c) in self.vectors[idx].iter().enumerate() {
                m.set(row, col, c.clone());
            }
        }
        m
    }

    fn is_independent(&self, subset: &[usize]) -> bool {
        self.column_matrix(subset).rank() == subset.len()
    }

    /// If `subset` is a circuit, its witness: the kernel vector, normalized
    /// to coefficient 1 on the first index.
    fn circuit_witness(&self, subset: &[usize]) -> Option<Vec<Coeff>> {
        let kernel = self.column_matrix(subset).kernel_basis();
        if kernel.len() != 1 {
            return None;
        }
        let w = &kernel[0];
        if w.iter().any(Coeff::is_zero) {
            return None;
        }
        let inv = w[0].recip();
        Some(w.iter().map(|c| c * &inv).collect())
    }
}

/// A minimal dependent subset of a family, with one vanishing combination
/// supported on exactly that subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    /// Ascending indices into the family's words.
    pub support: Vec<usize>,
    /// Coefficients aligned with `support`, all nonzero, first one 1.
    pub witness: Vec<Coeff>,
}

impl Circuit {
    /// The witness as an element: its normal form is zero.
    pub fn element(&self, family: &ParallelFamily) -> Element {
        let mut e = Element::zero();
        for (&idx, c) in self.support.iter().zip(&self.witness) {
            e.add_term(family.words[idx].clone(), c.clone());
        }
        e
    }
}

/// All minimal dependent subsets of the family's normal-form vectors, each
/// with one witness. Subsets are produced in lexicographic order of their
/// index sets.
///
/// Over an infinite field a subset carries an all-nonzero-coefficient ideal
/// element exactly when it is a union of circuit supports, so this list
/// decides strong minimality for every relation supported on the family.
pub fn circuits(family: &ParallelFamily) -> Vec<Circuit> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    grow_independent(family, 0, &mut stack, &mut out);
    out
}

// Every circuit minus its largest index is independent, so extending
// independent sets one index at a time visits every circuit exactly once.
fn grow_independent(
    family: &ParallelFamily,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Circuit>,
) {
    for j in start..family.len() {
        current.push(j);
        if family.is_independent(current) {
            grow_independent(family, j + 1, current, out);
        } else if let Some(witness) = family.circuit_witness(current) {
            out.push(Circuit {
                support: current.clone(),
                witness,
            });
        }
        current.pop();
    }
}

fn term_views(rho: &Element) -> (Vec<PathWord>, Vec<Coeff>) {
    let mut words = Vec::new();
    let mut coeffs = Vec::new();
    for (w, c) in rho.terms_desc() {
        words.push(w.clone());
        coeffs.push(c.clone());
    }
    (words, coeffs)
}

/// Whether no proper nonempty sub-sum of `rho`, with `rho`'s own
/// coefficients, reduces to zero.
pub fn is_minimal(p: &Presentation, rho: &Element) -> Result<bool, RelationError> {
    if !p.normal_form(rho).is_zero() {
        return Err(RelationError::NotARelation);
    }
    let (words, coeffs) = term_views(rho);
    let m = words.len();
    if m <= 1 {
        return Ok(true);
    }
    assert!(m < 64, "relation with 2^64 subsets is out of desk scale");
    let vectors: Vec<Vec<Coeff>> = words
        .iter()
        .map(|w| p.coordinates(&Element::from_word(w.clone())))
        .collect();
    let dim = vectors[0].len();
    for mask in 1u64..(1 << m) - 1 {
        let mut sum = vec![Coeff::zero(); dim];
        for i in 0..m {
            if mask & (1 << i) != 0 {
                for (s, v) in sum.iter_mut().zip(&vectors[i]) {
                    *s += &coeffs[i] * v;
                }
            }
        }
        if sum.iter().all(Coeff::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `rho`'s support is a circuit of its own parallel family: the
/// kernel of its term vectors is one-dimensional with full support.
pub fn is_strongly_minimal(p: &Presentation, rho: &Element) -> Result<bool, RelationError> {
    if !p.normal_form(rho).is_zero() {
        return Err(RelationError::NotARelation);
    }
    let (words, _) = term_views(rho);
    if words.len() <= 1 {
        return Ok(true);
    }
    // A term that is itself in the ideal is a vanishing singleton sub-sum.
    if words.iter().any(|w| p.word_normal_form(w).is_zero()) {
        return Ok(false);
    }
    let (source, target) = rho.endpoints(p.quiver()).expect("nonzero relation");
    let family = ParallelFamily::build(p, source, target, words);
    debug_assert_eq!(family.len(), rho.term_count());
    let all: Vec<usize> = (0..family.len()).collect();
    Ok(family.circuit_witness(&all).is_some())
}

/// Shrinks `rho` to a strongly minimal relation supported on a subset of its
/// terms, keeping the coefficient of the first (largest) surviving term.
/// Already strongly minimal relations are returned unchanged.
///
/// The reduction is the inductive one: find a strongly minimal relation on a
/// proper subset of the support; if it touches the first term, rescale it to
/// match; otherwise subtract a multiple that kills the smallest index it
/// touches and repeat.
pub fn strengthen_relation(p: &Presentation, rho: &Element) -> Result<Element, RelationError> {
    if !p.normal_form(rho).is_zero() {
        return Err(RelationError::NotARelation);
    }
    let mut current = rho.clone();
    loop {
        let (words, coeffs) = term_views(&current);
        let m = words.len();
        if m <= 1 {
            return Ok(current);
        }

        // Terms lying in the ideal are strongly minimal singletons.
        if let Some(s) = words.iter().position(|w| p.word_normal_form(w).is_zero()) {
            if s == 0 {
                return Ok(Element::from_term(words[0].clone(), coeffs[0].clone()));
            }
            current.add_term(words[s].clone(), -coeffs[s].clone());
            continue;
        }

        let (source, target) = current.endpoints(p.quiver()).expect("nonzero");
        let family = ParallelFamily::build(p, source, target, words.clone());
        let all: Vec<usize> = (0..family.len()).collect();
        if family.circuit_witness(&all).is_some() {
            return Ok(current);
        }

        // Not itself a circuit, so a proper one exists inside the dependent
        // support; take the first in enumeration order.
        let circuit = circuits(&family)
            .into_iter()
            .next()
            .ok_or(RelationError::NotAGeneratingSet)?;
        debug_assert!(circuit.support.len() < m);
        let sub = circuit.element(&family);
        if circuit.support[0] == 0 {
            let scale = &coeffs[0] / &circuit.witness[0];
            return Ok(sub.scale(&scale));
        }
        let s = circuit.support[0];
        let beta = &circuit.witness[0];
        let lambda = current
            .coeff_of(&family.words()[s])
            .expect("support index points at a live term")
            .clone();
        current = current.sub(&sub.scale(&(lambda / beta)));
    }
}

/// Replaces a system of relations by a strongly minimal system of the same
/// cardinality generating the same ideal.
///
/// The pivot at each step is the relation carrying the maximal-length word
/// (ties broken lexicographically by the term order); that word is
/// eliminated from all other relations before recursing, which is what makes
/// the ideal survive the strengthening of the pivot.
///
/// The output is verified: every output relation is strongly minimal for the
/// input ideal, and cross-reduction in both directions succeeds.
pub fn strengthen_system(
    p: &Presentation,
    system: &[Element],
) -> Result<Vec<Element>, RelationError> {
    for rho in system {
        if !p.normal_form(rho).is_zero() {
            return Err(RelationError::NotARelation);
        }
    }
    let out = strengthen_rec(system.to_vec(), p)?;
    debug_assert_eq!(out.len(), system.len());

    let completed = complete_rewriting(out.clone(), p.quiver().clone(), p.limits())?;
    let ideals_match = system
        .iter()
        .all(|rho| completed.normal_form(rho).is_zero())
        && out.iter().all(|rho| p.normal_form(rho).is_zero());
    if !ideals_match {
        return Err(RelationError::NotAGeneratingSet);
    }
    for rho in &out {
        if !is_strongly_minimal(p, rho)? {
            return Err(RelationError::NotAGeneratingSet);
        }
    }
    Ok(out)
}

fn strengthen_rec(mut list: Vec<Element>, p: &Presentation) -> Result<Vec<Element>, RelationError> {
    if list.is_empty() {
        return Ok(list);
    }
    if list.iter().any(Element::is_zero) {
        // A vanishing relation means a proper subset already generates.
        return Err(RelationError::NotAGeneratingSet);
    }

    // This level works inside the ideal generated by the current list.
    let level = complete_rewriting(list.clone(), p.quiver().clone(), p.limits())?;

    let w1 = list
        .iter()
        .flat_map(Element::words)
        .max()
        .expect("nonempty relations")
        .clone();
    let pivot = list
        .iter()
        .position(|rho| rho.coeff_of(&w1).is_some())
        .expect("the maximal word occurs somewhere");
    let lambda11 = list[pivot].coeff_of(&w1).expect("pivot carries w1").clone();

    let pivot_rel = list[pivot].clone();
    for (j, rho) in list.iter_mut().enumerate() {
        if j == pivot {
            continue;
        }
        if let Some(lambda1j) = rho.coeff_of(&w1).cloned() {
            *rho = rho.sub(&pivot_rel.scale(&(lambda1j / &lambda11)));
            if rho.is_zero() {
                return Err(RelationError::NotAGeneratingSet);
            }
        }
    }

    let strengthened = strengthen_relation(&level, &pivot_rel)?;
    let rest: Vec<Element> = list
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != pivot)
        .map(|(_, rho)| rho.clone())
        .collect();
    let rest_out = strengthen_rec(rest, p)?;

    // Reassemble in the input positions.
    let mut out = Vec::with_capacity(list.len());
    let mut rest_iter = rest_out.into_iter();
    for j in 0..list.len() {
        if j == pivot {
            out.push(strengthened.clone());
        } else {
            out.push(rest_iter.next().expect("one output per input"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::coeff_int;
    use crate::quiver::{ArrowId, Provenance, Quiver};
    use crate::rewrite::CompletionLimits;

    fn word(q: &Quiver, labels: &[&str]) -> PathWord {
        let ids: Vec<ArrowId> = labels.iter().map(|l| q.find_arrow(l).unwrap()).collect();
        PathWord::from_arrows(q, &ids).unwrap()
    }

    fn monomial(q: &Quiver, labels: &[&str]) -> Element {
        Element::from_word(word(q, labels))
    }

    /// 1 => 2 -> 3 with both length-2 paths zero.
    fn double_route_both_zero() -> Presentation {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        q.add_arrow("a", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("c", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("b", p2, p3, Provenance::Old).unwrap();
        let rels = vec![monomial(&q, &["a", "b"]), monomial(&q, &["c", "b"])];
        complete_rewriting(rels, q, CompletionLimits::default()).unwrap()
    }

    /// Commutative square: ab = cd, neither path zero.
    fn square() -> Presentation {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        let p4 = q.add_point("4").unwrap();
        q.add_arrow("a", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("b", p2, p4, Provenance::Old).unwrap();
        q.add_arrow("c", p1, p3, Provenance::Old).unwrap();
        q.add_arrow("d", p3, p4, Provenance::Old).unwrap();
        let rel = monomial(&q, &["a", "b"]).sub(&monomial(&q, &["c", "d"]));
        complete_rewriting(vec![rel], q, CompletionLimits::default()).unwrap()
    }

    #[test]
    fn equal_normal_forms_give_one_circuit() {
        let p = square();
        let q = p.quiver();
        let family = ParallelFamily::build(
            &p,
            PointId(0),
            PointId(3),
            vec![word(q, &["a", "b"]), word(q, &["c", "d"])],
        );
        assert_eq!(family.len(), 2);
        let cs = circuits(&family);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].support, vec![0, 1]);
        assert_eq!(cs[0].witness, vec![coeff_int(1), coeff_int(-1)]);
        assert!(p.normal_form(&cs[0].element(&family)).is_zero());
    }

    #[test]
    fn singleton_family_has_no_circuits() {
        let p = square();
        let q = p.quiver();
        let family =
            ParallelFamily::build(&p, PointId(0), PointId(3), vec![word(q, &["a", "b"])]);
        assert_eq!(family.len(), 1);
        assert!(circuits(&family).is_empty());
    }

    #[test]
    fn zero_normal_form_words_are_excluded() {
        let p = double_route_both_zero();
        let q = p.quiver();
        let family = ParallelFamily::build(
            &p,
            PointId(0),
            PointId(2),
            vec![word(q, &["a", "b"]), word(q, &["c", "b"])],
        );
        assert!(family.is_empty());
        assert!(circuits(&family).is_empty());
    }

    #[test]
    fn minimality_examples() {
        let p = double_route_both_zero();
        let q = p.quiver();
        let rho = monomial(q, &["a", "b"]).add(&monomial(q, &["c", "b"]));
        assert!(!is_minimal(&p, &rho).unwrap());
        assert!(!is_strongly_minimal(&p, &rho).unwrap());
        assert!(is_minimal(&p, &monomial(q, &["a", "b"])).unwrap());
        assert!(is_strongly_minimal(&p, &monomial(q, &["a", "b"])).unwrap());

        let p = square();
        let q = p.quiver();
        let comm = monomial(q, &["a", "b"]).sub(&monomial(q, &["c", "d"]));
        assert!(is_minimal(&p, &comm).unwrap());
        assert!(is_strongly_minimal(&p, &comm).unwrap());

        let not_rel = monomial(q, &["a", "b"]);
        assert_eq!(is_minimal(&p, &not_rel), Err(RelationError::NotARelation));
    }

    #[test]
    fn strengthen_keeps_strongly_minimal_relations() {
        let p = square();
        let q = p.quiver();
        let comm = monomial(q, &["a", "b"]).sub(&monomial(q, &["c", "d"]));
        assert_eq!(strengthen_relation(&p, &comm).unwrap(), comm);
    }

    #[test]
    fn strengthen_drops_to_the_leading_ideal_term() {
        let p = double_route_both_zero();
        let q = p.quiver();
        // cb is the larger word, so it is the surviving first term.
        let rho = monomial(q, &["a", "b"])
            .scale(&coeff_int(2))
            .add(&monomial(q, &["c", "b"]).scale(&coeff_int(5)));
        let out = strengthen_relation(&p, &rho).unwrap();
        assert_eq!(out, monomial(q, &["c", "b"]).scale(&coeff_int(5)));
        assert!(is_strongly_minimal(&p, &out).unwrap());
    }

    /// Three parallel routes, pairwise dependent: the inductive reduction has
    /// to land on a circuit through the leading term.
    #[test]
    fn strengthen_three_term_relation() {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        q.add_arrow("a1", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("a2", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("a3", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("b", p2, p3, Provenance::Old).unwrap();
        let r1 = monomial(&q, &["a2", "b"]).sub(&monomial(&q, &["a3", "b"]));
        let r2 = monomial(&q, &["a1", "b"])
            .add(&monomial(&q, &["a2", "b"]))
            .add(&monomial(&q, &["a3", "b"]));
        let p = complete_rewriting(vec![r1, r2.clone()], q.clone(), CompletionLimits::default())
            .unwrap();
        assert!(!is_strongly_minimal(&p, &r2).unwrap());
        let out = strengthen_relation(&p, &r2).unwrap();
        assert!(is_strongly_minimal(&p, &out).unwrap());
        // Support shrank but stayed inside the original support, and the
        // leading coefficient survived.
        assert!(out.term_count() < 3);
        let lead = monomial(&q, &["a3", "b"]);
        assert_eq!(out.leading().unwrap().0, lead.leading().unwrap().0);
        assert_eq!(out.leading().unwrap().1, &coeff_int(1));
    }

    #[test]
    fn monomial_systems_are_unchanged() {
        let p = double_route_both_zero();
        let q = p.quiver();
        let system = vec![monomial(q, &["a", "b"]), monomial(q, &["c", "b"])];
        assert_eq!(strengthen_system(&p, &system).unwrap(), system);
    }

    #[test]
    fn single_relation_systems_pass_through() {
        let p = square();
        let q = p.quiver();
        let system = vec![monomial(q, &["a", "b"]).sub(&monomial(q, &["c", "d"]))];
        assert_eq!(strengthen_system(&p, &system).unwrap(), system);
    }

    #[test]
    fn mixed_system_is_strengthened_and_ideal_preserved() {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        q.add_arrow("a1", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("a2", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("a3", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("b", p2, p3, Provenance::Old).unwrap();
        let r1 = monomial(&q, &["a2", "b"]).sub(&monomial(&q, &["a3", "b"]));
        let r2 = monomial(&q, &["a1", "b"])
            .add(&monomial(&q, &["a2", "b"]))
            .add(&monomial(&q, &["a3", "b"]));
        let p =
            complete_rewriting(vec![r1.clone(), r2.clone()], q, CompletionLimits::default())
                .unwrap();
        let out = strengthen_system(&p, &[r1, r2]).unwrap();
        assert_eq!(out.len(), 2);
        for rho in &out {
            assert!(is_strongly_minimal(&p, rho).unwrap());
        }
    }
}
