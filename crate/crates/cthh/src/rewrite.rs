//! Completion of an admissible relation set into a confluent rewriting
//! system, and the derived data of the quotient algebra: normal forms, the
//! finite basis of irreducible words, the nilpotency index and the centre.
//!
//! Rules rewrite a leading word into a combination of strictly smaller words
//! in the term order of [`PathWord`] (length, then lex on arrow indices in
//! input order). Completion is Knuth-Bendix style: critical pairs of
//! overlapping leading words are queued until every one reduces to zero.
//! Degree-compatibility of the order makes this terminate on admissible
//! presentations of finite-dimensional algebras; two caps turn the remaining
//! nonterminating inputs into hard errors.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::element::{Coeff, Element};
use crate::linalg::{Echelon, Matrix};
use crate::quiver::{ArrowId, PathWord, PointId, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    /// Completion aborts with [`RewriteError::CompletionOverflow`] past this
    /// many rules.
    pub max_rules: usize,
    /// Basis words and nilpotency probing abort with
    /// [`RewriteError::NotFiniteDimensional`] past this path length.
    pub max_path_len: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 10_000,
            max_path_len: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteError {
    CompletionOverflow { limit: usize },
    NotFiniteDimensional { limit: usize },
    /// A relation with a term of length < 2, mixed endpoints, or arrows not
    /// belonging to the quiver.
    InadmissibleRelation { index: usize },
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::CompletionOverflow { limit } => {
                write!(f, "completion exceeded the rule cap of {limit}")
            }
            RewriteError::NotFiniteDimensional { limit } => write!(
                f,
                "nonzero normal forms persist past path length {limit}; \
                 the algebra is not finite-dimensional within the cap"
            ),
            RewriteError::InadmissibleRelation { index } => {
                write!(f, "relation {index} is not an admissible-ideal generator")
            }
        }
    }
}

/// `lead -> rhs`, with every word of `rhs` strictly below `lead`.
#[derive(Debug, Clone)]
pub struct RewriteRule {
    lead: Vec<ArrowId>,
    rhs: Element,
}

impl RewriteRule {
    pub fn lead(&self) -> &[ArrowId] {
        &self.lead
    }

    pub fn rhs(&self) -> &Element {
        &self.rhs
    }

    /// The ideal element `lead - rhs` the rule encodes.
    pub fn as_element(&self) -> Element {
        Element::from_word(PathWord::Arrows(self.lead.clone())).sub(&self.rhs)
    }
}

/// A bound quiver presentation completed into normal-form data: the quiver,
/// the defining relations, a confluent rule set, the basis of irreducible
/// words and the nilpotency index.
///
/// Completed presentations are immutable; all operations on them are
/// read-only.
#[derive(Debug, Clone)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Element>,
    rules: Vec<RewriteRule>,
    basis: Vec<PathWord>,
    nilpotency: usize,
    limits: CompletionLimits,
}

/// Completes `relations` over `quiver` into a [`Presentation`].
///
/// An element reduces to zero under the resulting system exactly when it
/// lies in the two-sided ideal generated by the relations.
pub fn complete_rewriting(
    relations: Vec<Element>,
    quiver: Quiver,
    limits: CompletionLimits,
) -> Result<Presentation, RewriteError> {
    for (index, r) in relations.iter().enumerate() {
        let ok = r.is_parallel(&quiver)
            && r.min_term_len().map_or(true, |l| l >= 2)
            && r.words()
                .flat_map(|w| w.arrows())
                .all(|a| a.0 < quiver.arrow_count());
        if !ok {
            return Err(RewriteError::InadmissibleRelation { index });
        }
    }

    let mut rules: Vec<RewriteRule> = Vec::new();
    let mut queue: VecDeque<Element> = relations.iter().cloned().collect();

    while let Some(e) = queue.pop_front() {
        let nf = reduce_full(&rules, &e, &quiver);
        if nf.is_zero() {
            continue;
        }
        let (lead_word, lead_coeff) = nf.leading().expect("nonzero element has a leading term");
        let lead = lead_word.arrows().to_vec();
        debug_assert!(lead.len() >= 2, "admissible leads have length >= 2");
        let mut tail = nf.clone();
        tail.add_term(lead_word.clone(), -lead_coeff.clone());
        let rhs = tail.scale(&-lead_coeff.recip());
        let new_rule = RewriteRule { lead, rhs };

        // Keep leading words subword-free: a rule whose lead contains the new
        // lead goes back into the queue as a plain ideal element.
        let mut kept = Vec::new();
        for r in rules.drain(..) {
            if contains_subword(&r.lead, &new_rule.lead) {
                queue.push_back(r.as_element());
            } else {
                kept.push(r);
            }
        }
        rules = kept;

        for r in &rules {
            for s in overlaps(r, &new_rule) {
                queue.push_back(s);
            }
            for s in overlaps(&new_rule, r) {
                queue.push_back(s);
            }
        }
        for s in overlaps(&new_rule, &new_rule) {
            queue.push_back(s);
        }

        rules.push(new_rule);
        if rules.len() > limits.max_rules {
            return Err(RewriteError::CompletionOverflow {
                limit: limits.max_rules,
            });
        }
    }

    // Right-hand sides reduced against the final system, so printed rules are
    // themselves in normal form.
    let snapshot = rules.clone();
    for r in &mut rules {
        r.rhs = reduce_full(&snapshot, &r.rhs, &quiver);
    }

    let basis = enumerate_basis(&quiver, &rules, limits.max_path_len)?;
    let nilpotency = nilpotency_index(&quiver, &rules, &basis, limits.max_path_len)?;

    Ok(Presentation {
        quiver,
        relations,
        rules,
        basis,
        nilpotency,
        limits,
    })
}

impl Presentation {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// The defining relations, exactly as given to completion.
    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn limits(&self) -> CompletionLimits {
        self.limits
    }

    /// Irreducible words in ascending term order; their count is the algebra
    /// dimension.
    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Least `N` with every path of length `N` reducing to zero.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }

    /// The unique irreducible representative of `e` modulo the ideal;
    /// zero exactly on ideal members. `e` must live on this presentation's
    /// quiver.
    pub fn normal_form(&self, e: &Element) -> Element {
        reduce_full(&self.rules, e, &self.quiver)
    }

    /// Normal form computed under a pseudo-random reduction order seeded by
    /// `seed`. On a confluent system this agrees with [`Self::normal_form`];
    /// the property tests lean on that.
    pub fn normal_form_shuffled(&self, e: &Element, seed: u64) -> Element {
        let mut rng = XorShift::new(seed);
        let mut work = e.clone();
        loop {
            let mut candidates = Vec::new();
            for (w, _) in work.terms() {
                for (pos, rule_idx) in reduction_sites(&self.rules, w) {
                    candidates.push((w.clone(), pos, rule_idx));
                }
            }
            if candidates.is_empty() {
                return work;
            }
            let (w, pos, rule_idx) = candidates[(rng.next() as usize) % candidates.len()].clone();
            apply_rule(&mut work, &w, pos, &self.rules[rule_idx], &self.quiver);
        }
    }

    pub fn word_normal_form(&self, w: &PathWord) -> Element {
        self.normal_form(&Element::from_word(w.clone()))
    }

    /// Positions (into [`Self::basis`]) of the basis words from `x` to `y`.
    pub fn parallel_basis(&self, x: PointId, y: PointId) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, w)| w.source(&self.quiver) == x && w.target(&self.quiver) == y)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn basis_position(&self, w: &PathWord) -> Option<usize> {
        self.basis.binary_search(w).ok()
    }

    /// Dense coordinates of `normal_form(e)` in the basis.
    pub fn coordinates(&self, e: &Element) -> Vec<Coeff> {
        let nf = self.normal_form(e);
        let mut coords = vec![Coeff::zero(); self.basis.len()];
        for (w, c) in nf.terms() {
            let i = self
                .basis_position(w)
                .expect("normal form is supported on basis words");
            coords[i] = c.clone();
        }
        coords
    }

    /// Dimension of the centre `{z : zg = gz for all g}`, solved over the
    /// basis with `g` ranging over arrows and idempotents.
    pub fn centre_dimension(&self) -> usize {
        let dim = self.basis.len();
        if dim == 0 {
            return 0;
        }
        let mut probes: Vec<Element> = self
            .quiver
            .points()
            .map(|x| Element::from_word(PathWord::stationary(x)))
            .collect();
        probes.extend(
            self.quiver
                .arrow_ids()
                .map(|a| Element::from_word(PathWord::Arrows(vec![a]))),
        );

        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for g in &probes {
            // One block of rows per probe: column j holds the coordinates of
            // w_j g - g w_j.
            let mut block = vec![vec![Coeff::zero(); dim]; dim];
            for (j, w) in self.basis.iter().enumerate() {
                let wj = Element::from_word(w.clone());
                let comm = wj.mul(g, &self.quiver).sub(&g.mul(&wj, &self.quiver));
                for (i, c) in self.coordinates(&comm).into_iter().enumerate() {
                    block[i][j] = c;
                }
            }
            rows.extend(block);
        }
        dim - Matrix::from_rows(rows).rank()
    }
}

fn contains_subword(haystack: &[ArrowId], needle: &[ArrowId]) -> bool {
    haystack.len() >= needle.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// All (position, rule) pairs at which `w` is reducible.
fn reduction_sites(rules: &[RewriteRule], w: &PathWord) -> Vec<(usize, usize)> {
    let arrows = w.arrows();
    let mut sites = Vec::new();
    for pos in 0..arrows.len() {
        for (rule_idx, rule) in rules.iter().enumerate() {
            if pos + rule.lead.len() <= arrows.len()
                && arrows[pos..pos + rule.lead.len()] == rule.lead[..]
            {
                sites.push((pos, rule_idx));
            }
        }
    }
    sites
}

/// Rewrites the occurrence of `rule.lead` at `pos` inside the term `w` of
/// `work`.
fn apply_rule(work: &mut Element, w: &PathWord, pos: usize, rule: &RewriteRule, quiver: &Quiver) {
    let c = work
        .coeff_of(w)
        .expect("reduction site refers to a live term")
        .clone();
    let arrows = w.arrows();
    let prefix = &arrows[..pos];
    let suffix = &arrows[pos + rule.lead.len()..];
    work.add_term(w.clone(), -c.clone());
    for (t, tc) in rule.rhs.terms() {
        let mut joined = prefix.to_vec();
        joined.extend_from_slice(t.arrows());
        joined.extend_from_slice(suffix);
        let word = if joined.is_empty() {
            PathWord::stationary(w.source(quiver))
        } else {
            PathWord::Arrows(joined)
        };
        work.add_term(word, &c * tc);
    }
}

/// Deterministic full reduction: largest reducible term, leftmost position,
/// lowest rule index.
fn reduce_full(rules: &[RewriteRule], e: &Element, quiver: &Quiver) -> Element {
    let mut work = e.clone();
    'outer: loop {
        let target = work.terms_desc().find_map(|(w, _)| {
            reduction_sites(rules, w)
                .into_iter()
                .next()
                .map(|(pos, rule_idx)| (w.clone(), pos, rule_idx))
        });
        match target {
            Some((w, pos, rule_idx)) => {
                apply_rule(&mut work, &w, pos, &rules[rule_idx], quiver);
            }
            None => break 'outer,
        }
    }
    work
}

/// Critical pairs where a suffix of `r1.lead` equals a prefix of `r2.lead`.
/// Containments never arise between live rules, so proper overlaps suffice.
fn overlaps(r1: &RewriteRule, r2: &RewriteRule) -> Vec<Element> {
    let (l1, l2) = (&r1.lead, &r2.lead);
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let x = &l1[..l1.len() - k];
            let y = &l2[k..];
            let left = wrap(&[], &r1.rhs, y);
            let right = wrap(x, &r2.rhs, &[]);
            out.push(left.sub(&right));
        }
    }
    out
}

/// `prefix * e * suffix` as an element; the wrapping is composable by
/// construction at every call site.
fn wrap(prefix: &[ArrowId], e: &Element, suffix: &[ArrowId]) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.terms() {
        let mut joined = prefix.to_vec();
        joined.extend_from_slice(w.arrows());
        joined.extend_from_slice(suffix);
        let word = if joined.is_empty() {
            w.clone()
        } else {
            PathWord::Arrows(joined)
        };
        out.add_term(word, c.clone());
    }
    out
}

fn enumerate_basis(
    quiver: &Quiver,
    rules: &[RewriteRule],
    max_len: usize,
) -> Result<Vec<PathWord>, RewriteError> {
    let mut basis: Vec<PathWord> = quiver.points().map(PathWord::stationary).collect();
    let mut layer: Vec<Vec<ArrowId>> = quiver.arrow_ids().map(|a| vec![a]).collect();
    let mut len = 1;
    while !layer.is_empty() {
        if len > max_len {
            return Err(RewriteError::NotFiniteDimensional { limit: max_len });
        }
        basis.extend(layer.iter().cloned().map(PathWord::Arrows));
        let mut next = Vec::new();
        for word in &layer {
            let end = quiver.target(word[word.len() - 1]);
            for a in quiver.arrow_ids() {
                if quiver.source(a) != end {
                    continue;
                }
                let mut extended = word.clone();
                extended.push(a);
                // The prefix is irreducible, so only leads ending at the new
                // last position matter.
                let reducible = rules.iter().any(|r| {
                    r.lead.len() <= extended.len()
                        && extended[extended.len() - r.lead.len()..] == r.lead[..]
                });
                if !reducible {
                    next.push(extended);
                }
            }
        }
        layer = next;
        len += 1;
    }
    basis.sort();
    Ok(basis)
}

/// Least `N` such that every path of length `N` has zero normal form, found
/// by pushing a spanning set of the image of length-`L` paths one arrow at a
/// time.
fn nilpotency_index(
    quiver: &Quiver,
    rules: &[RewriteRule],
    basis: &[PathWord],
    max_len: usize,
) -> Result<usize, RewriteError> {
    let dim = basis.len();
    let coords = |e: &Element| -> Vec<Coeff> {
        let mut v = vec![Coeff::zero(); dim];
        for (w, c) in e.terms() {
            let i = basis.binary_search(w).expect("normal forms live on the basis");
            v[i] = c.clone();
        }
        v
    };

    let mut gens: Vec<Element> = quiver
        .arrow_ids()
        .map(|a| Element::from_word(PathWord::Arrows(vec![a])))
        .collect();
    let mut len = 1;
    loop {
        if gens.is_empty() {
            return Ok(len);
        }
        if len > max_len {
            return Err(RewriteError::NotFiniteDimensional { limit: max_len });
        }
        let mut ech = Echelon::new(dim);
        let mut next = Vec::new();
        for g in &gens {
            for a in quiver.arrow_ids() {
                let step = Element::from_word(PathWord::Arrows(vec![a]));
                let prod = reduce_full(rules, &g.mul(&step, quiver), quiver);
                if !prod.is_zero() && ech.insert(coords(&prod)) {
                    next.push(prod);
                }
            }
        }
        gens = next;
        len += 1;
    }
}

/// Small deterministic generator for randomized reduction orders and the
/// property tests.
#[derive(Debug, Clone)]
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}
