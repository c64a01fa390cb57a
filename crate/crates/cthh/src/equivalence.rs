//! The equivalence relation on new arrows and the relation invariant: the
//! number of classes when new arrows sharing a strongly minimal relation are
//! identified.
//!
//! Strongly minimal relations of the completed algebra are enumerated
//! exhaustively: every multi-term one is a circuit of a parallel family of
//! nonzero-normal-form paths (any term of length at least the nilpotency
//! index would itself lie in the ideal), and the monomial ones are the zero
//! paths all of whose proper subpaths are nonzero. Multi-term relations not
//! lying in the old arrows merge the unique new arrow of each of their
//! terms; monomial relations merge nothing.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::element::Element;
use crate::quiver::{ArrowId, PathWord, PointId};
use crate::relations::{circuits, ParallelFamily};
use crate::rewrite::Presentation;

/// Cap on the number of words in a single parallel family.
pub const DEFAULT_FAMILY_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceError {
    FamilyTooLarge {
        source: PointId,
        target: PointId,
        cap: usize,
    },
    /// A strongly minimal relation with a new arrow somewhere has a term
    /// with zero or at least two new arrows: the input is not a valid
    /// relation extension.
    Lemma31Violation { term: String },
}

impl fmt::Display for EquivalenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceError::FamilyTooLarge { source, target, cap } => write!(
                f,
                "parallel family at ({}, {}) exceeds the cap of {cap} words",
                source.0, target.0
            ),
            EquivalenceError::Lemma31Violation { term } => write!(
                f,
                "term `{term}` of a strongly minimal relation does not carry exactly \
                 one new arrow; the provenance tags do not describe a relation extension"
            ),
        }
    }
}

/// The classes of new arrows under the transitive closure of the merge
/// relation. Classes are sorted by their smallest arrow, which is the
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowPartition {
    classes: Vec<Vec<ArrowId>>,
}

impl ArrowPartition {
    pub fn classes(&self) -> &[Vec<ArrowId>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<ArrowId> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.0[ri.max(rj)] = ri.min(rj);
        }
    }
}

/// One witness per strongly minimal relation shape of the completed algebra:
/// the minimal zero monomials, then one circuit witness per parallel family
/// circuit, in deterministic order. Up to scalars this covers the support of
/// every strongly minimal relation.
pub fn strongly_minimal_relations(p: &Presentation) -> Result<Vec<Element>, EquivalenceError> {
    strongly_minimal_relations_with_cap(p, DEFAULT_FAMILY_CAP)
}

pub fn strongly_minimal_relations_with_cap(
    p: &Presentation,
    cap: usize,
) -> Result<Vec<Element>, EquivalenceError> {
    let (monomials, families) = survey_paths(p, cap)?;
    let mut out = monomials;
    for ((source, target), words) in families {
        let family = ParallelFamily::build(p, source, target, words);
        for c in circuits(&family) {
            out.push(c.element(&family));
        }
    }
    Ok(out)
}

/// DFS over paths with nonzero normal form (their prefixes are nonzero too,
/// so the search is complete). Returns the minimal zero monomials and the
/// per-endpoint families of nonzero words of length >= 2.
#[allow(clippy::type_complexity)]
fn survey_paths(
    p: &Presentation,
    cap: usize,
) -> Result<(Vec<Element>, BTreeMap<(PointId, PointId), Vec<PathWord>>), EquivalenceError> {
    let quiver = p.quiver();
    let mut monomials = Vec::new();
    let mut families: BTreeMap<(PointId, PointId), Vec<PathWord>> = BTreeMap::new();

    let mut stack: Vec<Vec<ArrowId>> = quiver.arrow_ids().map(|a| vec![a]).collect();
    while let Some(path) = stack.pop() {
        let end = quiver.target(path[path.len() - 1]);
        for b in quiver.arrow_ids() {
            if quiver.source(b) != end {
                continue;
            }
            let mut extended = path.clone();
            extended.push(b);
            let word = PathWord::Arrows(extended.clone());
            if p.word_normal_form(&word).is_zero() {
                let tail = PathWord::Arrows(extended[1..].to_vec());
                if !p.word_normal_form(&tail).is_zero() {
                    monomials.push(Element::from_word(word));
                }
                continue;
            }
            let key = (word.source(quiver), word.target(quiver));
            let bucket = families.entry(key).or_default();
            bucket.push(word);
            if bucket.len() > cap {
                return Err(EquivalenceError::FamilyTooLarge {
                    source: key.0,
                    target: key.1,
                    cap,
                });
            }
            stack.push(extended);
        }
    }
    monomials.sort_by(|a, b| {
        let wa = a.leading().expect("monomials are nonzero").0;
        let wb = b.leading().expect("monomials are nonzero").0;
        wa.cmp(wb)
    });
    Ok((monomials, families))
}

/// Union-find over the new arrows: every enumerated strongly minimal
/// relation whose terms carry new arrows merges the unique new arrow of
/// each term. All-old relations merge nothing, and a term with zero or two
/// new arrows inside an otherwise-new relation is an input error.
pub fn arrow_equivalence_classes(p: &Presentation) -> Result<ArrowPartition, EquivalenceError> {
    let quiver = p.quiver();
    let new_arrows = quiver.new_arrows();
    let index_of: BTreeMap<ArrowId, usize> = new_arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (*a, i))
        .collect();
    let mut uf = UnionFind::new(new_arrows.len());

    for rel in strongly_minimal_relations(p)? {
        let mut term_news: Vec<Vec<ArrowId>> = Vec::new();
        for (w, _) in rel.terms() {
            term_news.push(
                w.arrows()
                    .iter()
                    .copied()
                    .filter(|a| quiver.is_new(*a))
                    .collect(),
            );
        }
        if term_news.iter().all(Vec::is_empty) {
            continue; // a relation of the old algebra
        }
        if let Some(bad) = term_news.iter().position(|n| n.len() != 1) {
            let word = rel.words().nth(bad).expect("term index is live");
            return Err(EquivalenceError::Lemma31Violation {
                term: word.display(quiver),
            });
        }
        let reps: Vec<usize> = term_news.iter().map(|n| index_of[&n[0]]).collect();
        for pair in reps.windows(2) {
            uf.union(pair[0], pair[1]);
        }
    }

    let mut by_root: BTreeMap<usize, Vec<ArrowId>> = BTreeMap::new();
    for (i, a) in new_arrows.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(*a);
    }
    let classes: Vec<Vec<ArrowId>> = by_root.into_values().collect();
    Ok(ArrowPartition { classes })
}

/// The number of equivalence classes of new arrows.
pub fn relation_invariant(p: &Presentation) -> Result<usize, EquivalenceError> {
    Ok(arrow_equivalence_classes(p)?.class_count())
}
