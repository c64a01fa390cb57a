//! The cluster-tilted presentation built from a tilted one: extended quiver,
//! potential, cyclic-derivative relations, and the forbidden-walk validator.
//!
//! Given a presentation of `C` and a strongly minimal system of relations
//! `R`, each relation from `x` to `y` contributes one new arrow `y -> x`;
//! the potential is the sum of the cycles `rho * alpha_rho` (with `rho`'s
//! scalars kept verbatim), and the relations of the extension are the
//! nonzero cyclic partial derivatives of the potential over all arrows.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::element::{Coeff, Element};
use crate::quiver::{ArrowId, PathWord, Provenance, Quiver};
use crate::relations::{is_strongly_minimal, RelationError};
use crate::rewrite::{complete_rewriting, Presentation, RewriteError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    UnknownArrow(usize),
    /// The arrow sequence does not close up into an oriented cycle.
    NotACycle,
    /// Relation `index` of the input system fails strong minimality.
    NotStronglyMinimal { index: usize },
    Relation(RelationError),
    Rewrite(RewriteError),
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::UnknownArrow(i) => write!(f, "unknown arrow index {i}"),
            ExtensionError::NotACycle => write!(f, "arrow sequence is not an oriented cycle"),
            ExtensionError::NotStronglyMinimal { index } => {
                write!(f, "relation {index} is not strongly minimal")
            }
            ExtensionError::Relation(e) => write!(f, "{e}"),
            ExtensionError::Rewrite(e) => write!(f, "{e}"),
        }
    }
}

impl From<RelationError> for ExtensionError {
    fn from(e: RelationError) -> Self {
        ExtensionError::Relation(e)
    }
}

impl From<RewriteError> for ExtensionError {
    fn from(e: RewriteError) -> Self {
        ExtensionError::Rewrite(e)
    }
}

/// An oriented cycle of arrows stored in canonical rotation: the
/// lexicographically least rotation of its arrow-index sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CyclicWord(Vec<ArrowId>);

impl CyclicWord {
    pub fn new(quiver: &Quiver, arrows: &[ArrowId]) -> Result<Self, ExtensionError> {
        if arrows.is_empty() {
            return Err(ExtensionError::NotACycle);
        }
        for a in arrows {
            if a.0 >= quiver.arrow_count() {
                return Err(ExtensionError::UnknownArrow(a.0));
            }
        }
        let closes = (0..arrows.len())
            .all(|i| quiver.target(arrows[i]) == quiver.source(arrows[(i + 1) % arrows.len()]));
        if !closes {
            return Err(ExtensionError::NotACycle);
        }
        let mut best = arrows.to_vec();
        for shift in 1..arrows.len() {
            let mut rotated = arrows[shift..].to_vec();
            rotated.extend_from_slice(&arrows[..shift]);
            if rotated < best {
                best = rotated;
            }
        }
        Ok(CyclicWord(best))
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        PathWord::Arrows(self.0.clone()).display(quiver)
    }
}

/// The cyclic partial derivative with respect to `beta`: the sum over
/// occurrences of `beta` of the rotated complement. Invariant under rotation
/// because cyclic words are stored canonically.
pub fn cyclic_derivative(
    quiver: &Quiver,
    word: &CyclicWord,
    beta: ArrowId,
) -> Result<Element, ExtensionError> {
    if beta.0 >= quiver.arrow_count() {
        return Err(ExtensionError::UnknownArrow(beta.0));
    }
    let arrows = word.arrows();
    let mut out = Element::zero();
    for (i, a) in arrows.iter().enumerate() {
        if *a != beta {
            continue;
        }
        let mut complement = arrows[i + 1..].to_vec();
        complement.extend_from_slice(&arrows[..i]);
        let w = if complement.is_empty() {
            PathWord::stationary(quiver.target(beta))
        } else {
            PathWord::Arrows(complement)
        };
        out.add_term(w, Coeff::from_integer(1.into()));
    }
    Ok(out)
}

/// A formal sum of cyclic words with exact coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Potential {
    terms: BTreeMap<CyclicWord, Coeff>,
}

impl Potential {
    pub fn zero() -> Self {
        Potential::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: CyclicWord, c: Coeff) {
        use num_traits::Zero;
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

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &Coeff)> {
        self.terms.iter()
    }

    /// Linear extension of [`cyclic_derivative`] over the terms.
    pub fn derivative(&self, quiver: &Quiver, beta: ArrowId) -> Result<Element, ExtensionError> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let d = cyclic_derivative(quiver, w, beta)?;
            out = out.add(&d.scale(c));
        }
        Ok(out)
    }
}

/// The extension of a presentation: the completed presentation of the bigger
/// algebra, the potential, and the ledger pairing each input relation with
/// the arrow it created.
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub presentation: Presentation,
    pub potential: Potential,
    /// `ledger[i]` is the new arrow of input relation `i`.
    pub ledger: Vec<ArrowId>,
}

impl ExtensionResult {
    /// Lemma-shaped necessary condition on genuine extensions of tilted
    /// presentations; see [`find_forbidden_walk`].
    pub fn check_no_forbidden_walk(&self) -> bool {
        find_forbidden_walk(self.presentation.quiver()).is_none()
    }
}

/// Builds the relation extension of `c` with respect to the strongly minimal
/// system `system`. Each relation from `x` to `y` gets a new arrow `y -> x`
/// labelled `nw1`, `nw2`, ... (skipping collisions); relations of the output
/// are the nonzero cyclic derivatives of the potential.
pub fn relation_extension(
    c: &Presentation,
    system: &[Element],
) -> Result<ExtensionResult, ExtensionError> {
    for (index, rho) in system.iter().enumerate() {
        if !is_strongly_minimal(c, rho)? {
            return Err(ExtensionError::NotStronglyMinimal { index });
        }
    }

    let mut quiver = c.quiver().clone();
    let mut ledger = Vec::with_capacity(system.len());
    let mut fresh = 1usize;
    for rho in system {
        let (x, y) = rho.endpoints(&quiver).expect("relations are nonzero");
        let label = loop {
            let candidate = format!("nw{fresh}");
            fresh += 1;
            if quiver.find_arrow(&candidate).is_none() {
                break candidate;
            }
        };
        let id = quiver
            .add_arrow(label, y, x, Provenance::New)
            .expect("fresh label");
        ledger.push(id);
    }

    let mut potential = Potential::zero();
    for (rho, alpha) in system.iter().zip(&ledger) {
        for (w, coeff) in rho.terms() {
            let mut cycle = w.arrows().to_vec();
            cycle.push(*alpha);
            potential.add_term(CyclicWord::new(&quiver, &cycle)?, coeff.clone());
        }
    }

    let mut relations = Vec::new();
    for beta in quiver.arrow_ids() {
        let d = potential.derivative(&quiver, beta)?;
        if !d.is_zero() {
            relations.push(d);
        }
    }

    let presentation = complete_rewriting(relations, quiver, c.limits())?;
    Ok(ExtensionResult {
        presentation,
        potential,
        ledger,
    })
}

/// One step of a walk: an arrow traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkStep {
    pub arrow: ArrowId,
    pub forward: bool,
}

/// A walk `alpha w' beta` with `alpha`, `beta` new arrows (traversed
/// forwards) and `w'` a walk of old arrows none of whose directed subpaths
/// is antiparallel to a new arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWalk {
    pub steps: Vec<WalkStep>,
}

impl ForbiddenWalk {
    pub fn display(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&quiver.arrow(s.arrow).label);
            if !s.forward {
                out.push_str("^-");
            }
        }
        out
    }
}

/// Searches for a walk `alpha w' beta` with `alpha`, `beta` new arrows and
/// `w'` a walk of old arrows, possibly empty, no subpath of which is
/// antiparallel to a new arrow. Genuine relation extensions of tilted
/// presentations admit none, so a hit flags a malformed input.
///
/// The subpath condition amounts to: no new arrow has both of its endpoints
/// among the points visited by `w'` (a new arrow spans exactly the
/// endpoints of a relation, and a walk touching both would contain the
/// antiparallel subpath). Visiting more points only shrinks the options, so
/// the search prunes as soon as some new arrow's endpoints are covered, and
/// a minimal interior walk never reuses an arrow.
pub fn find_forbidden_walk(quiver: &Quiver) -> Option<ForbiddenWalk> {
    let new_arrows = quiver.new_arrows();
    if new_arrows.is_empty() {
        return None;
    }
    let old_arrows: Vec<ArrowId> = quiver
        .arrow_ids()
        .filter(|a| !quiver.is_new(*a))
        .collect();

    for &alpha in &new_arrows {
        let start = quiver.target(alpha);
        let mut used = vec![false; quiver.arrow_count()];
        let mut visited = vec![false; quiver.point_count()];
        visited[start.0] = true;
        let mut steps: Vec<WalkStep> = Vec::new();
        if let Some(walk) = extend_walk(
            quiver,
            &new_arrows,
            &old_arrows,
            alpha,
            start,
            &mut steps,
            &mut used,
            &mut visited,
        ) {
            return Some(walk);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn extend_walk(
    quiver: &Quiver,
    new_arrows: &[ArrowId],
    old_arrows: &[ArrowId],
    alpha: ArrowId,
    at: crate::quiver::PointId,
    steps: &mut Vec<WalkStep>,
    used: &mut Vec<bool>,
    visited: &mut Vec<bool>,
) -> Option<ForbiddenWalk> {
    // Once the walk covers both endpoints of a new arrow it contains the
    // antiparallel subpath, and no extension recovers.
    if new_arrows
        .iter()
        .any(|g| visited[quiver.source(*g).0] && visited[quiver.target(*g).0])
    {
        return None;
    }

    // Closing the walk with any new arrow leaving the current point wins.
    for &beta in new_arrows {
        if quiver.source(beta) == at {
            let mut full = vec![WalkStep {
                arrow: alpha,
                forward: true,
            }];
            full.extend_from_slice(steps);
            full.push(WalkStep {
                arrow: beta,
                forward: true,
            });
            return Some(ForbiddenWalk { steps: full });
        }
    }

    for &a in old_arrows {
        if used[a.0] {
            continue;
        }
        for forward in [true, false] {
            let (from, to) = if forward {
                (quiver.source(a), quiver.target(a))
            } else {
                (quiver.target(a), quiver.source(a))
            };
            if from != at {
                continue;
            }
            steps.push(WalkStep { arrow: a, forward });
            used[a.0] = true;
            let fresh = !visited[to.0];
            visited[to.0] = true;
            if let Some(walk) = extend_walk(
                quiver, new_arrows, old_arrows, alpha, to, steps, used, visited,
            ) {
                return Some(walk);
            }
            if fresh {
                visited[to.0] = false;
            }
            used[a.0] = false;
            steps.pop();
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::PointId;
    use crate::rewrite::CompletionLimits;

    fn word(q: &Quiver, labels: &[&str]) -> PathWord {
        let ids: Vec<ArrowId> = labels.iter().map(|l| q.find_arrow(l).unwrap()).collect();
        PathWord::from_arrows(q, &ids).unwrap()
    }

    fn monomial(q: &Quiver, labels: &[&str]) -> Element {
        Element::from_word(word(q, labels))
    }

    fn three_cycle() -> Quiver {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        q.add_arrow("x", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("y", p2, p3, Provenance::Old).unwrap();
        q.add_arrow("z", p3, p1, Provenance::Old).unwrap();
        q
    }

    #[test]
    fn single_occurrence_derivative() {
        let q = three_cycle();
        let cw = CyclicWord::new(
            &q,
            &[
                q.find_arrow("x").unwrap(),
                q.find_arrow("y").unwrap(),
                q.find_arrow("z").unwrap(),
            ],
        )
        .unwrap();
        let d = cyclic_derivative(&q, &cw, q.find_arrow("y").unwrap()).unwrap();
        assert_eq!(d, monomial(&q, &["z", "x"]));
    }

    #[test]
    fn missing_arrow_derivative_is_zero() {
        let mut q = three_cycle();
        let extra = q
            .add_arrow("w", PointId(0), PointId(1), Provenance::Old)
            .unwrap();
        let cw = CyclicWord::new(
            &q,
            &[
                q.find_arrow("x").unwrap(),
                q.find_arrow("y").unwrap(),
                q.find_arrow("z").unwrap(),
            ],
        )
        .unwrap();
        assert!(cyclic_derivative(&q, &cw, extra).unwrap().is_zero());
        assert_eq!(
            cyclic_derivative(&q, &cw, ArrowId(99)),
            Err(ExtensionError::UnknownArrow(99))
        );
    }

    #[test]
    fn repeated_occurrences_sum() {
        // b: 1 -> 2, g: 2 -> 1, s: 2 -> 1; cycle b g b s.
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let b = q.add_arrow("b", p1, p2, Provenance::Old).unwrap();
        let g = q.add_arrow("g", p2, p1, Provenance::Old).unwrap();
        let s = q.add_arrow("s", p2, p1, Provenance::Old).unwrap();
        let cw = CyclicWord::new(&q, &[b, g, b, s]).unwrap();
        let d = cyclic_derivative(&q, &cw, b).unwrap();
        let expected = monomial(&q, &["g", "b", "s"]).add(&monomial(&q, &["s", "b", "g"]));
        assert_eq!(d, expected);
    }

    #[test]
    fn derivative_is_rotation_invariant() {
        let q = three_cycle();
        let x = q.find_arrow("x").unwrap();
        let y = q.find_arrow("y").unwrap();
        let z = q.find_arrow("z").unwrap();
        let w1 = CyclicWord::new(&q, &[x, y, z]).unwrap();
        let w2 = CyclicWord::new(&q, &[y, z, x]).unwrap();
        assert_eq!(w1, w2);
        for a in [x, y, z] {
            assert_eq!(
                cyclic_derivative(&q, &w1, a).unwrap(),
                cyclic_derivative(&q, &w2, a).unwrap()
            );
        }
    }

    fn linear_a3_presentation() -> Presentation {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        q.add_arrow("a", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("b", p2, p3, Provenance::Old).unwrap();
        let rel = monomial(&q, &["a", "b"]);
        complete_rewriting(vec![rel], q, CompletionLimits::default()).unwrap()
    }

    #[test]
    fn linear_a3_extends_to_the_bound_three_cycle() {
        let c = linear_a3_presentation();
        let system = vec![monomial(c.quiver(), &["a", "b"])];
        let ext = relation_extension(&c, &system).unwrap();
        let bq = ext.presentation.quiver();

        assert_eq!(ext.ledger.len(), 1);
        let alpha = ext.ledger[0];
        assert_eq!(bq.source(alpha), PointId(2));
        assert_eq!(bq.target(alpha), PointId(0));
        assert!(bq.is_new(alpha));
        assert_eq!(bq.arrow_count(), c.quiver().arrow_count() + 1);

        // The three cyclic derivatives bind every length-2 path of the cycle.
        assert_eq!(ext.presentation.relations().len(), 3);
        assert_eq!(ext.presentation.dimension(), 6);
        assert_eq!(ext.presentation.nilpotency_index(), 2);

        // Recovery: the derivative along the new arrow is the old relation.
        let d = ext.potential.derivative(bq, alpha).unwrap();
        assert_eq!(d, system[0]);
        assert!(ext.check_no_forbidden_walk());
    }

    fn tilted_a22() -> (Presentation, Vec<Element>) {
        // al: 4 -> 2, be: 2 -> 1, ga: 4 -> 3, de: 3 -> 1,
        // bound by al.be and ga.de.
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        let p4 = q.add_point("4").unwrap();
        q.add_arrow("al", p4, p2, Provenance::Old).unwrap();
        q.add_arrow("be", p2, p1, Provenance::Old).unwrap();
        q.add_arrow("ga", p4, p3, Provenance::Old).unwrap();
        q.add_arrow("de", p3, p1, Provenance::Old).unwrap();
        let system = vec![monomial(&q, &["al", "be"]), monomial(&q, &["ga", "de"])];
        let c = complete_rewriting(system.clone(), q, CompletionLimits::default()).unwrap();
        (c, system)
    }

    #[test]
    fn euclidean_a22_extension() {
        let (c, system) = tilted_a22();
        let ext = relation_extension(&c, &system).unwrap();
        let bq = ext.presentation.quiver();

        // Two new arrows 1 -> 4, six monomial relations, dimension 16.
        assert_eq!(ext.ledger.len(), 2);
        for &alpha in &ext.ledger {
            assert_eq!(bq.source(alpha), PointId(0));
            assert_eq!(bq.target(alpha), PointId(3));
        }
        assert_eq!(ext.presentation.relations().len(), 6);
        for rel in ext.presentation.relations() {
            assert_eq!(rel.term_count(), 1);
        }
        assert_eq!(ext.presentation.dimension(), 16);
        assert!(ext.check_no_forbidden_walk());

        for (rho, &alpha) in system.iter().zip(&ext.ledger) {
            assert_eq!(ext.potential.derivative(bq, alpha).unwrap(), *rho);
        }
    }

    #[test]
    fn empty_system_extends_to_itself() {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        q.add_arrow("a", p1, p2, Provenance::Old).unwrap();
        let c = complete_rewriting(Vec::new(), q, CompletionLimits::default()).unwrap();
        let ext = relation_extension(&c, &[]).unwrap();
        assert!(ext.potential.is_zero());
        assert!(ext.ledger.is_empty());
        assert_eq!(ext.presentation.dimension(), c.dimension());
    }

    #[test]
    fn non_strongly_minimal_systems_are_rejected() {
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        q.add_arrow("a", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("c", p1, p2, Provenance::Old).unwrap();
        q.add_arrow("b", p2, p3, Provenance::Old).unwrap();
        let rels = vec![monomial(&q, &["a", "b"]), monomial(&q, &["c", "b"])];
        let c = complete_rewriting(rels, q, CompletionLimits::default()).unwrap();
        let bad = monomial(c.quiver(), &["a", "b"]).add(&monomial(c.quiver(), &["c", "b"]));
        assert!(matches!(
            relation_extension(&c, &[bad]),
            Err(ExtensionError::NotStronglyMinimal { index: 0 })
        ));
    }

    #[test]
    fn artificial_violation_is_caught() {
        // Two new arrows joined by an old arrow.
        let mut q = Quiver::new();
        let p1 = q.add_point("1").unwrap();
        let p2 = q.add_point("2").unwrap();
        let p3 = q.add_point("3").unwrap();
        let p4 = q.add_point("4").unwrap();
        q.add_arrow("n1", p1, p2, Provenance::New).unwrap();
        q.add_arrow("a", p2, p3, Provenance::Old).unwrap();
        q.add_arrow("n2", p3, p4, Provenance::New).unwrap();
        let walk = find_forbidden_walk(&q).unwrap();
        assert_eq!(walk.steps.len(), 3);
        assert!(walk.steps[0].forward && walk.steps[2].forward);
    }

    #[test]
    fn consecutive_relations_leave_a_forbidden_walk() {
        // The extension of A5 bound by ab and cd: new arrows 3 -> 1 and
        // 5 -> 3 compose directly, so the interior walk is empty.
        let mut q = Quiver::new();
        let pts: Vec<PointId> = (1..=5)
            .map(|i| q.add_point(format!("{i}")).unwrap())
            .collect();
        q.add_arrow("a", pts[0], pts[1], Provenance::Old).unwrap();
        q.add_arrow("b", pts[1], pts[2], Provenance::Old).unwrap();
        q.add_arrow("c", pts[2], pts[3], Provenance::Old).unwrap();
        q.add_arrow("d", pts[3], pts[4], Provenance::Old).unwrap();
        q.add_arrow("z", pts[2], pts[0], Provenance::New).unwrap();
        q.add_arrow("v", pts[4], pts[2], Provenance::New).unwrap();
        let walk = find_forbidden_walk(&q).unwrap();
        assert_eq!(walk.steps.len(), 2);

        // The same underlying quiver with the provenance of a good cut has
        // no forbidden walk: new arrows z: 3 -> 1 and c: 3 -> 4.
        let mut good = Quiver::new();
        let pts: Vec<PointId> = (1..=5)
            .map(|i| good.add_point(format!("{i}")).unwrap())
            .collect();
        good.add_arrow("a", pts[0], pts[1], Provenance::Old).unwrap();
        good.add_arrow("b", pts[1], pts[2], Provenance::Old).unwrap();
        good.add_arrow("c", pts[2], pts[3], Provenance::New).unwrap();
        good.add_arrow("d", pts[3], pts[4], Provenance::Old).unwrap();
        good.add_arrow("z", pts[2], pts[0], Provenance::New).unwrap();
        good.add_arrow("v", pts[4], pts[2], Provenance::Old).unwrap();
        assert!(find_forbidden_walk(&good).is_none());
    }
}
