//! Quivers and composable path words.
//!
//! Paths compose left to right: in the word `ab` the arrow `a` is traversed
//! first, so composability means `target(a) = source(b)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Index of a point in its quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

/// Index of an arrow in its quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

/// Whether an arrow belongs to the input algebra or was added by a relation
/// extension. User-built quivers default to [`Provenance::Old`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Old,
    New,
}

#[derive(Debug, Clone)]
pub struct Arrow {
    pub label: String,
    pub source: PointId,
    pub target: PointId,
    pub provenance: Provenance,
}

/// A finite quiver: labelled points and labelled arrows with provenance tags.
///
/// Labels are unique among points and among arrows; arrow endpoints are
/// checked on insertion, so a constructed quiver always satisfies its
/// invariants.
#[derive(Debug, Clone, Default)]
pub struct Quiver {
    pub name: Option<String>,
    points: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    DuplicatePointLabel(String),
    DuplicateArrowLabel(String),
    UnknownPoint(usize),
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::DuplicatePointLabel(l) => write!(f, "duplicate point label `{l}`"),
            QuiverError::DuplicateArrowLabel(l) => write!(f, "duplicate arrow label `{l}`"),
            QuiverError::UnknownPoint(i) => write!(f, "unknown point index {i}"),
        }
    }
}

impl Quiver {
    pub fn new() -> Self {
        Quiver::default()
    }

    pub fn add_point(&mut self, label: impl Into<String>) -> Result<PointId, QuiverError> {
        let label = label.into();
        if self.points.iter().any(|p| *p == label) {
            return Err(QuiverError::DuplicatePointLabel(label));
        }
        self.points.push(label);
        Ok(PointId(self.points.len() - 1))
    }

    pub fn add_arrow(
        &mut self,
        label: impl Into<String>,
        source: PointId,
        target: PointId,
        provenance: Provenance,
    ) -> Result<ArrowId, QuiverError> {
        let label = label.into();
        if self.arrows.iter().any(|a| a.label == label) {
            return Err(QuiverError::DuplicateArrowLabel(label));
        }
        for p in [source, target] {
            if p.0 >= self.points.len() {
                return Err(QuiverError::UnknownPoint(p.0));
            }
        }
        self.arrows.push(Arrow {
            label,
            source,
            target,
            provenance,
        });
        Ok(ArrowId(self.arrows.len() - 1))
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.points.len()).map(PointId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn point_label(&self, id: PointId) -> &str {
        &self.points[id.0]
    }

    pub fn source(&self, id: ArrowId) -> PointId {
        self.arrows[id.0].source
    }

    pub fn target(&self, id: ArrowId) -> PointId {
        self.arrows[id.0].target
    }

    pub fn find_point(&self, label: &str) -> Option<PointId> {
        self.points.iter().position(|p| p == label).map(PointId)
    }

    pub fn find_arrow(&self, label: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.label == label).map(ArrowId)
    }

    pub fn is_new(&self, id: ArrowId) -> bool {
        self.arrows[id.0].provenance == Provenance::New
    }

    /// Arrows tagged [`Provenance::New`], in index order.
    pub fn new_arrows(&self) -> Vec<ArrowId> {
        self.arrow_ids().filter(|a| self.is_new(*a)).collect()
    }

    pub fn has_new_arrows(&self) -> bool {
        self.arrows.iter().any(|a| a.provenance == Provenance::New)
    }

    /// Arrows incident to `x` in either direction.
    pub fn arrows_at(&self, x: PointId) -> Vec<ArrowId> {
        self.arrow_ids()
            .filter(|a| self.source(*a) == x || self.target(*a) == x)
            .collect()
    }

    /// Connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let n = self.points.len();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                for a in &self.arrows {
                    for (u, v) in [(a.source.0, a.target.0), (a.target.0, a.source.0)] {
                        if u == x && !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
            }
        }
        components
    }
}

/// A path in a quiver: either the stationary path at a point or a nonempty
/// composable sequence of arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathWord {
    Stationary(PointId),
    Arrows(Vec<ArrowId>),
}

impl PathWord {
    pub fn stationary(x: PointId) -> Self {
        PathWord::Stationary(x)
    }

    /// Builds a word from a nonempty arrow sequence, checking composability at
    /// every junction. Returns `None` when the sequence is empty or broken.
    pub fn from_arrows(quiver: &Quiver, arrows: &[ArrowId]) -> Option<Self> {
        if arrows.is_empty() {
            return None;
        }
        for w in arrows.windows(2) {
            if quiver.target(w[0]) != quiver.source(w[1]) {
                return None;
            }
        }
        Some(PathWord::Arrows(arrows.to_vec()))
    }

    pub fn len(&self) -> usize {
        match self {
            PathWord::Stationary(_) => 0,
            PathWord::Arrows(a) => a.len(),
        }
    }

    pub fn is_stationary(&self) -> bool {
        matches!(self, PathWord::Stationary(_))
    }

    pub fn arrows(&self) -> &[ArrowId] {
        match self {
            PathWord::Stationary(_) => &[],
            PathWord::Arrows(a) => a,
        }
    }

    pub fn source(&self, quiver: &Quiver) -> PointId {
        match self {
            PathWord::Stationary(x) => *x,
            PathWord::Arrows(a) => quiver.source(a[0]),
        }
    }

    pub fn target(&self, quiver: &Quiver) -> PointId {
        match self {
            PathWord::Stationary(x) => *x,
            PathWord::Arrows(a) => quiver.target(a[a.len() - 1]),
        }
    }

    /// Left-to-right concatenation; stationary words act as identities.
    /// `None` signals a non-composable pair, which is a value, not a fault.
    pub fn compose(&self, other: &PathWord, quiver: &Quiver) -> Option<PathWord> {
        if self.target(quiver) != other.source(quiver) {
            return None;
        }
        match (self, other) {
            (PathWord::Stationary(_), w) => Some(w.clone()),
            (w, PathWord::Stationary(_)) => Some(w.clone()),
            (PathWord::Arrows(a), PathWord::Arrows(b)) => {
                let mut joined = a.clone();
                joined.extend_from_slice(b);
                Some(PathWord::Arrows(joined))
            }
        }
    }

    /// Renders the word using the quiver's labels, arrows joined by `.`.
    pub fn display(&self, quiver: &Quiver) -> String {
        match self {
            PathWord::Stationary(x) => {
                let mut s = String::from("e_");
                s.push_str(quiver.point_label(*x));
                s
            }
            PathWord::Arrows(a) => {
                let mut s = String::new();
                for (i, id) in a.iter().enumerate() {
                    if i > 0 {
                        s.push('.');
                    }
                    s.push_str(&quiver.arrow(*id).label);
                }
                s
            }
        }
    }
}

// Term order: by length, then lexicographically on arrow indices in input
// order; stationary words are ordered by their base point. Total, admissible
// (stable under composition on either side) and a well-order on words, which
// is what the rewriting engine needs.
impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PathWord::Stationary(x), PathWord::Stationary(y)) => x.cmp(y),
            (PathWord::Stationary(_), PathWord::Arrows(_)) => Ordering::Less,
            (PathWord::Arrows(_), PathWord::Stationary(_)) => Ordering::Greater,
            (PathWord::Arrows(a), PathWord::Arrows(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
        }
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
