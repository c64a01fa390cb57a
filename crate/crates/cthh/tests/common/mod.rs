//! Shared fixture corpus for the integration tests: tilted presentations
//! with their relation systems and extensions, tagged with what is known
//! about them.

use cthh::element::Element;
use cthh::extension::{relation_extension, ExtensionResult};
use cthh::quiver::{ArrowId, PathWord, PointId, Provenance, Quiver};
use cthh::relations::strengthen_system;
use cthh::rewrite::{complete_rewriting, CompletionLimits, Presentation};

pub fn word(q: &Quiver, labels: &[&str]) -> PathWord {
    let ids: Vec<ArrowId> = labels
        .iter()
        .map(|l| q.find_arrow(l).unwrap_or_else(|| panic!("arrow {l}")))
        .collect();
    PathWord::from_arrows(q, &ids).expect("composable")
}

pub fn monomial(q: &Quiver, labels: &[&str]) -> Element {
    Element::from_word(word(q, labels))
}

pub struct Fixture {
    pub name: &'static str,
    pub c: Presentation,
    pub system: Vec<Element>,
    pub ext: ExtensionResult,
    /// The extension is asserted representation-finite cluster-tilted.
    pub rep_finite: bool,
    /// The base is asserted gentle of euclidean type A (so the extension is
    /// too).
    pub gentle_tilde_a: bool,
}

impl Fixture {
    pub fn b(&self) -> &Presentation {
        &self.ext.presentation
    }
}

fn build(
    name: &'static str,
    quiver: Quiver,
    system: Vec<Element>,
    rep_finite: bool,
    gentle_tilde_a: bool,
) -> Fixture {
    let c = complete_rewriting(system.clone(), quiver, CompletionLimits::default())
        .unwrap_or_else(|e| panic!("{name}: {e}"));
    let system = strengthen_system(&c, &system).unwrap_or_else(|e| panic!("{name}: {e}"));
    let ext = relation_extension(&c, &system).unwrap_or_else(|e| panic!("{name}: {e}"));
    Fixture {
        name,
        c,
        system,
        ext,
        rep_finite,
        gentle_tilde_a,
    }
}

fn linear_quiver(n: usize) -> Quiver {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=n)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    let labels = ["a", "b", "c", "d", "e", "f", "g"];
    for i in 0..n - 1 {
        q.add_arrow(labels[i], pts[i], pts[i + 1], Provenance::Old)
            .unwrap();
    }
    q
}

pub fn a3_cycle() -> Fixture {
    let q = linear_quiver(3);
    let system = vec![monomial(&q, &["a", "b"])];
    build("a3_cycle", q, system, true, false)
}

pub fn a4_pendant() -> Fixture {
    let q = linear_quiver(4);
    let system = vec![monomial(&q, &["a", "b"])];
    build("a4_pendant", q, system, true, false)
}

pub fn d4_cycle() -> Fixture {
    let q = linear_quiver(4);
    let system = vec![monomial(&q, &["a", "b", "c"])];
    build("d4_cycle", q, system, true, false)
}

pub fn d5_cycle() -> Fixture {
    let q = linear_quiver(5);
    let system = vec![monomial(&q, &["a", "b", "c", "d"])];
    build("d5_cycle", q, system, true, false)
}

/// Two zero relations with alternating orientation: 1 -> 2 -> 3 <- 5 <- 4.
pub fn two_triangles() -> Fixture {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=5)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    q.add_arrow("a", pts[0], pts[1], Provenance::Old).unwrap();
    q.add_arrow("b", pts[1], pts[2], Provenance::Old).unwrap();
    q.add_arrow("d", pts[3], pts[4], Provenance::Old).unwrap();
    q.add_arrow("w", pts[4], pts[2], Provenance::Old).unwrap();
    let system = vec![monomial(&q, &["a", "b"]), monomial(&q, &["d", "w"])];
    build("two_triangles", q, system, true, false)
}

pub fn square() -> Fixture {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=4)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    q.add_arrow("a", pts[0], pts[1], Provenance::Old).unwrap();
    q.add_arrow("b", pts[1], pts[3], Provenance::Old).unwrap();
    q.add_arrow("c", pts[0], pts[2], Provenance::Old).unwrap();
    q.add_arrow("d", pts[2], pts[3], Provenance::Old).unwrap();
    let system = vec![monomial(&q, &["a", "b"]).sub(&monomial(&q, &["c", "d"]))];
    build("square", q, system, true, false)
}

pub fn square_pendant() -> Fixture {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=5)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    q.add_arrow("a", pts[0], pts[1], Provenance::Old).unwrap();
    q.add_arrow("b", pts[1], pts[3], Provenance::Old).unwrap();
    q.add_arrow("c", pts[0], pts[2], Provenance::Old).unwrap();
    q.add_arrow("d", pts[2], pts[3], Provenance::Old).unwrap();
    q.add_arrow("e", pts[3], pts[4], Provenance::Old).unwrap();
    let system = vec![monomial(&q, &["a", "b"]).sub(&monomial(&q, &["c", "d"]))];
    build("square_pendant", q, system, true, false)
}

/// The 8-point fixture: one commutativity and two zero relations whose
/// extension has four chordless cycles and two inner arrows. The cut behind
/// it is the unique one of the fifteen single-arrow-per-cycle cuts that
/// leaves no forbidden walk.
pub fn e8() -> Fixture {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=8)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    let pt = |i: usize| pts[i - 1];
    for (l, s, t) in [
        ("a12", 1, 2),
        ("a51", 5, 1),
        ("a14", 1, 4),
        ("a36", 3, 6),
        ("a62", 6, 2),
        ("a58", 5, 8),
        ("a87", 8, 7),
        ("a74", 7, 4),
    ] {
        q.add_arrow(l, pt(s), pt(t), Provenance::Old).unwrap();
    }
    let system = vec![
        monomial(&q, &["a51", "a14"]).sub(&monomial(&q, &["a58", "a87", "a74"])),
        monomial(&q, &["a51", "a12"]),
        monomial(&q, &["a36", "a62"]),
    ];
    build("e8", q, system, true, false)
}

/// The euclidean worked example: two zero relations into a double arrow
/// target.
pub fn a22() -> Fixture {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=4)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    q.add_arrow("al", pts[3], pts[1], Provenance::Old).unwrap();
    q.add_arrow("be", pts[1], pts[0], Provenance::Old).unwrap();
    q.add_arrow("ga", pts[3], pts[2], Provenance::Old).unwrap();
    q.add_arrow("de", pts[2], pts[0], Provenance::Old).unwrap();
    let system = vec![monomial(&q, &["al", "be"]), monomial(&q, &["ga", "de"])];
    build("a22", q, system, false, true)
}

/// Non-constrained shape with a double arrow: b: 3 -> 2, g, d: 2 -> 1,
/// bound by b.g.
pub fn shape_i() -> Fixture {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=3)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    q.add_arrow("b", pts[2], pts[1], Provenance::Old).unwrap();
    q.add_arrow("g", pts[1], pts[0], Provenance::Old).unwrap();
    q.add_arrow("d", pts[1], pts[0], Provenance::Old).unwrap();
    let system = vec![monomial(&q, &["b", "g"])];
    build("shape_i", q, system, false, true)
}

/// Non-constrained shape with a length-2 chain parallel to an arrow:
/// d1: 3 -> 2, d2: 2 -> 1, g: 3 -> 1, b: 4 -> 3, l: 5 -> 2, bound by b.g
/// and l.d2.
pub fn shape_ii() -> Fixture {
    let mut q = Quiver::new();
    let pts: Vec<PointId> = (1..=5)
        .map(|i| q.add_point(format!("{i}")).unwrap())
        .collect();
    q.add_arrow("d1", pts[2], pts[1], Provenance::Old).unwrap();
    q.add_arrow("d2", pts[1], pts[0], Provenance::Old).unwrap();
    q.add_arrow("g", pts[2], pts[0], Provenance::Old).unwrap();
    q.add_arrow("b", pts[3], pts[2], Provenance::Old).unwrap();
    q.add_arrow("l", pts[4], pts[1], Provenance::Old).unwrap();
    let system = vec![monomial(&q, &["b", "g"]), monomial(&q, &["l", "d2"])];
    build("shape_ii", q, system, false, true)
}

pub fn a2_hereditary() -> Fixture {
    let q = linear_quiver(2);
    build("a2_hereditary", q, Vec::new(), true, false)
}

pub fn kronecker() -> Fixture {
    let mut q = Quiver::new();
    let p1 = q.add_point("1").unwrap();
    let p2 = q.add_point("2").unwrap();
    q.add_arrow("a", p1, p2, Provenance::Old).unwrap();
    q.add_arrow("b", p1, p2, Provenance::Old).unwrap();
    build("kronecker", q, Vec::new(), false, false)
}

pub fn corpus() -> Vec<Fixture> {
    vec![
        a3_cycle(),
        a4_pendant(),
        d4_cycle(),
        d5_cycle(),
        two_triangles(),
        square(),
        square_pendant(),
        e8(),
        a22(),
        shape_i(),
        shape_ii(),
        a2_hereditary(),
        kronecker(),
    ]
}

/// All paths of length in `[1, max_len]`, by DFS on the quiver.
pub fn all_paths(q: &Quiver, max_len: usize) -> Vec<PathWord> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<ArrowId>> = q.arrow_ids().map(|a| vec![a]).collect();
    while let Some(p) = stack.pop() {
        out.push(PathWord::Arrows(p.clone()));
        if p.len() == max_len {
            continue;
        }
        let end = q.target(p[p.len() - 1]);
        for a in q.arrow_ids() {
            if q.source(a) == end {
                let mut next = p.clone();
                next.push(a);
                stack.push(next);
            }
        }
    }
    out
}

/// Small deterministic generator for the randomized property suites.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    /// Nonzero integer coefficient in [-3, 3].
    pub fn coeff(&mut self) -> cthh::element::Coeff {
        let v = (self.below(6) as i64) - 3;
        cthh::element::coeff_int(if v >= 0 { v + 1 } else { v })
    }
}

/// A random element of the path algebra: up to three parallel paths with
/// random small coefficients.
pub fn random_element(q: &Quiver, paths: &[PathWord], rng: &mut TestRng) -> Element {
    if paths.is_empty() {
        return Element::zero();
    }
    let first = &paths[rng.below(paths.len())];
    let (s, t) = (first.source(q), first.target(q));
    let parallel: Vec<&PathWord> = paths
        .iter()
        .filter(|w| w.source(q) == s && w.target(q) == t)
        .collect();
    let mut e = Element::zero();
    let terms = 1 + rng.below(3);
    for _ in 0..terms {
        let w = parallel[rng.below(parallel.len())];
        e.add_term(w.clone(), rng.coeff());
    }
    e
}
