//! Isomorph-free enumeration of abstract ensemble patterns and the
//! minimality checks built on it.
//!
//! A [`Pattern`] keeps only the coincidence structure of an ensemble: which
//! slots carry the same hidden variable. Two patterns are equivalent when
//! they differ by renaming labels, reordering POVMs of equal size, or
//! reordering slots inside a POVM. The canonical representative orders
//! POVMs by nondecreasing size and is the lexicographically smallest
//! restricted-growth string of the flattened slots.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{
    admissibility, decide, identify, solve, ColoringProblem, Semantics, Verdict, Witness,
};
use crate::ensemble::Ensemble;

/// Largest total slot count accepted by the enumerator.
pub const MAX_SLOTS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalityError {
    #[error("shape has {slots} slots, above the limit of {limit}")]
    TooLarge { slots: usize, limit: usize },
    #[error("shape must list at least one POVM and every size must be at least 1")]
    EmptyShape,
    #[error("pattern enumeration is not supported under {0} semantics")]
    UnsupportedSemantics(Semantics),
}

/// Canonical abstract ensemble.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    povms: Vec<Vec<usize>>,
}

impl Pattern {
    /// Canonicalizes an arbitrary labeling. POVMs may be given in any order
    /// and labels may be any integers.
    pub fn new(povms: &[Vec<usize>]) -> Pattern {
        Pattern {
            povms: canonical_form(povms),
        }
    }

    /// `{a,b,c,d}, {a,b,e,f}, {c,d,e,f}`: six labels, each shared by two
    /// of three four-element POVMs.
    pub fn cabello() -> Pattern {
        Pattern::new(&[vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![2, 3, 4, 5]])
    }

    /// The coincidence pattern of a concrete problem (one label per class).
    pub fn from_problem(problem: &ColoringProblem) -> Pattern {
        Pattern::new(problem.slots())
    }

    pub fn povms(&self) -> &[Vec<usize>] {
        &self.povms
    }

    pub fn shape(&self) -> Vec<usize> {
        self.povms.iter().map(Vec::len).collect()
    }

    pub fn label_count(&self) -> usize {
        self.povms.iter().flatten().max().map_or(0, |m| m + 1)
    }

    /// Flattened restricted-growth string.
    pub fn rgs(&self) -> Vec<usize> {
        self.povms.iter().flatten().copied().collect()
    }

    pub fn problem(&self) -> ColoringProblem {
        ColoringProblem::from_labels(&self.povms)
    }

    /// Structural admissibility for `semantics`:
    /// labels do not repeat inside a POVM unless the semantics allows it;
    /// no two POVMs differ by exactly one label on each side;
    /// all one-element POVMs share one label (the identity), which then
    /// appears in no larger POVM.
    ///
    /// The one-label rule follows from completeness: `S + x = 𝟙 = S + y`
    /// forces `x = y`, and equal operators at equal occurrence rank are one
    /// class. On two-element POVMs it is the unique-complement rule.
    pub fn passes_filters(&self, semantics: Semantics) -> bool {
        if !semantics.allows_repeats() {
            for povm in &self.povms {
                let mut seen = HashSet::new();
                if !povm.iter().all(|l| seen.insert(l)) {
                    return false;
                }
            }
        }

        for (i, p) in self.povms.iter().enumerate() {
            for q in &self.povms[i + 1..] {
                if p.len() == q.len() && multiset_difference(p, q) == 1 {
                    return false;
                }
            }
        }

        let units: BTreeSet<usize> = self
            .povms
            .iter()
            .filter(|p| p.len() == 1)
            .map(|p| p[0])
            .collect();
        match units.len() {
            0 => true,
            1 => {
                let unit = *units.first().unwrap();
                self.povms
                    .iter()
                    .filter(|p| p.len() > 1)
                    .all(|p| !p.contains(&unit))
            }
            _ => false,
        }
    }
}

/// Size of `p \ q` as multisets; both inputs are sorted.
fn multiset_difference(p: &[usize], q: &[usize]) -> usize {
    let (mut i, mut j, mut only_p) = (0, 0, 0);
    while i < p.len() {
        if j < q.len() && q[j] < p[i] {
            j += 1;
        } else if j < q.len() && q[j] == p[i] {
            i += 1;
            j += 1;
        } else {
            only_p += 1;
            i += 1;
        }
    }
    only_p
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let povms: Vec<String> = self
            .povms
            .iter()
            .map(|p| {
                let labels: Vec<String> = p.iter().map(|&l| label_name(l)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        f.write_str(&povms.join(" "))
    }
}

/// `a`..`z`, then `l26`, `l27`, ...
fn label_name(label: usize) -> String {
    if label < 26 {
        char::from(b'a' + label as u8).to_string()
    } else {
        format!("l{label}")
    }
}

/// Partial canonical labeling: which POVMs are placed and which labels
/// already received names.
#[derive(Clone, PartialEq, Eq, Hash)]
struct CanonState {
    used: u32,
    names: Vec<Option<usize>>,
    next_name: usize,
}

fn canonical_form(povms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    assert!(povms.len() <= 32, "too many POVMs to canonicalize");
    // Dense relabeling of the input.
    let mut dense: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in povms.iter().flatten() {
        let next = dense.len();
        dense.entry(l).or_insert(next);
    }
    let povms: Vec<Vec<usize>> = povms
        .iter()
        .map(|p| p.iter().map(|l| dense[l]).collect())
        .collect();
    let label_total = dense.len();

    let mut order: Vec<usize> = povms.iter().map(Vec::len).collect();
    order.sort_unstable();

    // Labels still needed by POVMs not yet placed; names of other labels
    // cannot influence later segments.
    let occurs_in = |label: usize, used: u32| {
        povms
            .iter()
            .enumerate()
            .any(|(i, p)| used & (1 << i) == 0 && p.contains(&label))
    };

    let mut states = vec![CanonState {
        used: 0,
        names: vec![None; label_total],
        next_name: 0,
    }];
    let mut result = Vec::with_capacity(povms.len());

    for &size in &order {
        let mut best: Option<Vec<usize>> = None;
        let mut next_states: HashSet<CanonState> = HashSet::new();

        for state in &states {
            for (q, povm) in povms.iter().enumerate() {
                if state.used & (1 << q) != 0 || povm.len() != size {
                    continue;
                }
                let (segment, groups) = best_segment(povm, state);
                match &best {
                    Some(b) if segment > *b => continue,
                    Some(b) if segment < *b => next_states.clear(),
                    _ => {}
                }
                best = Some(segment);
                let used = state.used | (1 << q);
                expand_namings(state, used, &groups, &occurs_in, &mut next_states);
            }
        }
        result.push(best.expect("shape sizes come from the POVMs"));
        states = next_states.into_iter().collect();
    }
    result
}

/// Smallest segment for placing `povm` next, plus its unnamed labels grouped
/// by multiplicity (highest first). Labels inside a group are interchangeable
/// for this segment.
fn best_segment(povm: &[usize], state: &CanonState) -> (Vec<usize>, Vec<(usize, Vec<usize>)>) {
    let mut named: Vec<usize> = Vec::new();
    let mut unnamed: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in povm {
        match state.names[l] {
            Some(name) => named.push(name),
            None => *unnamed.entry(l).or_insert(0) += 1,
        }
    }
    named.sort_unstable();
    let mut by_mult: BTreeMap<std::cmp::Reverse<usize>, Vec<usize>> = BTreeMap::new();
    for (l, m) in unnamed {
        by_mult.entry(std::cmp::Reverse(m)).or_default().push(l);
    }
    let mut segment = named;
    let mut next = state.next_name;
    let mut groups = Vec::new();
    for (std::cmp::Reverse(m), labels) in by_mult {
        for _ in &labels {
            segment.extend(std::iter::repeat_n(next, m));
            next += 1;
        }
        groups.push((m, labels));
    }
    (segment, groups)
}

/// Adds every distinguishable way of naming the new labels in `groups`.
fn expand_namings(
    state: &CanonState,
    used: u32,
    groups: &[(usize, Vec<usize>)],
    occurs_in: &dyn Fn(usize, u32) -> bool,
    out: &mut HashSet<CanonState>,
) {
    let mut partial = vec![CanonState {
        used,
        names: state.names.clone(),
        next_name: state.next_name,
    }];
    for (_, labels) in groups {
        let block = partial[0].next_name;
        // Only labels that occur later need distinct name choices.
        let relevant: Vec<usize> = labels.iter().copied().filter(|&l| occurs_in(l, used)).collect();
        let idle: Vec<usize> = labels.iter().copied().filter(|&l| !occurs_in(l, used)).collect();
        let names: Vec<usize> = (block..block + labels.len()).collect();
        let mut grown = Vec::new();
        for st in &partial {
            for chosen in injections(&names, relevant.len()) {
                let mut s = st.clone();
                for (&l, &n) in relevant.iter().zip(&chosen) {
                    s.names[l] = Some(n);
                }
                let mut rest = names.iter().filter(|n| !chosen.contains(n));
                for &l in &idle {
                    s.names[l] = rest.next().copied();
                }
                s.next_name = block + labels.len();
                grown.push(s);
            }
        }
        partial = grown;
    }
    for mut s in partial {
        // Forget names nobody will look at again so equivalent states merge.
        for (l, name) in s.names.iter_mut().enumerate() {
            if name.is_some() && !occurs_in(l, used) {
                *name = Some(usize::MAX);
            }
        }
        out.insert(s);
    }
}

/// All ordered selections of `k` distinct items.
fn injections(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        for mut tail in injections(&rest, k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Canonical patterns of one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub shape: Vec<usize>,
    pub semantics: Semantics,
    /// Canonical patterns in the semantics' labeling family (label repeats
    /// inside a POVM only where allowed).
    pub total: usize,
    /// Patterns passing [`Pattern::passes_filters`], in canonical order.
    pub patterns: Vec<Pattern>,
}

fn check_shape(shape: &[usize], semantics: Semantics) -> Result<Vec<usize>, MinimalityError> {
    if semantics == Semantics::Heavy {
        return Err(MinimalityError::UnsupportedSemantics(semantics));
    }
    if shape.is_empty() || shape.contains(&0) {
        return Err(MinimalityError::EmptyShape);
    }
    let slots: usize = shape.iter().sum();
    if slots > MAX_SLOTS {
        return Err(MinimalityError::TooLarge {
            slots,
            limit: MAX_SLOTS,
        });
    }
    let mut sorted = shape.to_vec();
    sorted.sort_unstable();
    Ok(sorted)
}

pub fn enumerate_patterns(
    shape: &[usize],
    semantics: Semantics,
) -> Result<Enumeration, MinimalityError> {
    let shape = check_shape(shape, semantics)?;
    let mut canonical = BTreeSet::new();
    let mut current = Vec::with_capacity(shape.len());
    generate(&shape, semantics.allows_repeats(), 0, &mut current, &mut canonical);
    let total = canonical.len();
    let patterns = canonical
        .into_iter()
        .filter(|p| p.passes_filters(semantics))
        .collect();
    Ok(Enumeration {
        shape,
        semantics,
        total,
        patterns,
    })
}

/// Each POVM is a multiset of already-used labels plus fresh labels named
/// in order; every equivalence class has at least one such labeling.
fn generate(
    shape: &[usize],
    repeats: bool,
    used_labels: usize,
    current: &mut Vec<Vec<usize>>,
    out: &mut BTreeSet<Pattern>,
) {
    let depth = current.len();
    if depth == shape.len() {
        out.insert(Pattern::new(current));
        return;
    }
    let size = shape[depth];
    for old_count in 0..=size {
        let fresh_count = size - old_count;
        let olds = if repeats {
            multisets(used_labels, old_count)
        } else {
            subsets(used_labels, old_count)
        };
        let fresh_splits = if repeats {
            partitions(fresh_count)
        } else {
            vec![vec![1; fresh_count]]
        };
        for old in &olds {
            for split in &fresh_splits {
                let mut povm = old.clone();
                for (i, &m) in split.iter().enumerate() {
                    povm.extend(std::iter::repeat_n(used_labels + i, m));
                }
                current.push(povm);
                generate(shape, repeats, used_labels + split.len(), current, out);
                current.pop();
            }
        }
    }
}

/// Strictly increasing `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing `k`-multisets over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Integer partitions of `n` as nonincreasing parts.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Colors a pattern: one assignable class per label.
pub fn pattern_verdict(pattern: &Pattern, _semantics: Semantics) -> Verdict {
    solve(&pattern.problem())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub shape: Vec<usize>,
    pub semantics: Semantics,
    pub enumerated: usize,
    pub filtered: usize,
    pub colorable: usize,
    pub uncolorable: Vec<Pattern>,
}

impl SweepReport {
    pub fn all_colorable(&self) -> bool {
        self.uncolorable.is_empty()
    }
}

pub fn sweep(shape: &[usize], semantics: Semantics) -> Result<SweepReport, MinimalityError> {
    let enumeration = enumerate_patterns(shape, semantics)?;
    let uncolorable: Vec<Pattern> = enumeration
        .patterns
        .par_iter()
        .filter(|p| !pattern_verdict(p, semantics).is_colorable())
        .cloned()
        .collect();
    Ok(SweepReport {
        shape: enumeration.shape,
        semantics,
        enumerated: enumeration.total,
        filtered: enumeration.patterns.len(),
        colorable: enumeration.patterns.len() - uncolorable.len(),
        uncolorable,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Identical operators are one variable: one POVM of two elements.
    T1,
    /// Per-slot distinct variables: three POVMs of four elements.
    T2,
    /// No proportional elements within a POVM: same minimum as `T2`.
    T3,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T1 => "t1",
            TheoremId::T2 => "t2",
            TheoremId::T3 => "t3",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem `{0}` (expected t1, t2 or t3)")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "t1" => Ok(TheoremId::T1),
            "t2" => Ok(TheoremId::T2),
            "t3" => Ok(TheoremId::T3),
            other => Err(UnknownTheorem(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

impl TheoremCheck {
    fn new(name: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>) -> Self {
        let expected = expected.into();
        let observed = observed.into();
        TheoremCheck {
            name: name.into(),
            passed: expected == observed,
            expected,
            observed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub checks: Vec<TheoremCheck>,
    pub sweeps: Vec<SweepReport>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn shape_text(shape: &[usize]) -> String {
    shape.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn verdict_text(v: &Verdict) -> &'static str {
    if v.is_colorable() {
        "colorable"
    } else {
        "uncolorable"
    }
}

/// Shapes that must be colorable for the three- and four-element minimum:
/// every shape with at most two POVMs of size at most four, every shape of
/// up to four POVMs of size at most two, then (3,3,3) and (3,3,3,3).
pub fn lower_bound_shapes() -> Vec<Vec<usize>> {
    let mut shapes = BTreeSet::new();
    for k in 1..=4 {
        shapes.insert(vec![k]);
        for k2 in k..=4 {
            shapes.insert(vec![k, k2]);
        }
    }
    for m in 1..=4usize {
        for twos in 0..=m {
            let mut shape = vec![1; m - twos];
            shape.extend(vec![2; twos]);
            shapes.insert(shape);
        }
    }
    let mut ordered: Vec<Vec<usize>> = shapes.into_iter().collect();
    ordered.sort_by_key(|s| (s.iter().sum::<usize>(), s.len(), s.clone()));
    ordered.push(vec![3, 3, 3]);
    ordered.push(vec![3, 3, 3, 3]);
    ordered
}

fn concrete_verdict(name: &str, semantics: Semantics) -> String {
    let e = Ensemble::builtin(name).expect("builtin exists");
    match identify(&e, semantics) {
        Ok(p) => verdict_text(&decide(&p)).to_string(),
        Err(err) => format!("error: {err}"),
    }
}

pub fn verify_theorem(id: TheoremId) -> TheoremReport {
    match id {
        TheoremId::T1 => verify_identical(),
        TheoremId::T2 => verify_separated(TheoremId::T2, Semantics::Distinct),
        TheoremId::T3 => verify_separated(TheoremId::T3, Semantics::Nonproportional),
    }
}

fn verify_identical() -> TheoremReport {
    let semantics = Semantics::Identical;
    let mut checks = vec![
        TheoremCheck::new("one (1 POVM x 1 element)", "colorable", concrete_verdict("one", semantics)),
        TheoremCheck::new(
            "half-half (1 POVM x 2 elements)",
            "uncolorable",
            concrete_verdict("half-half", semantics),
        ),
    ];
    let mut sweeps = Vec::new();
    let unit = sweep(&[1], semantics).expect("small shape");
    checks.push(TheoremCheck::new(
        "sweep 1 uncolorable patterns",
        "0",
        unit.uncolorable.len().to_string(),
    ));
    sweeps.push(unit);
    let pair = sweep(&[2], semantics).expect("small shape");
    let doubled = Pattern::new(&[vec![0, 0]]);
    checks.push(TheoremCheck::new(
        "sweep 2 contains {a,a}",
        "true",
        pair.uncolorable.contains(&doubled).to_string(),
    ));
    let half_half = identify(&Ensemble::builtin("half-half").unwrap(), semantics).unwrap();
    checks.push(TheoremCheck::new(
        "half-half realizes {a,a}",
        doubled.to_string(),
        Pattern::from_problem(&half_half).to_string(),
    ));
    sweeps.push(pair);
    TheoremReport {
        theorem: TheoremId::T1,
        checks,
        sweeps,
    }
}

fn verify_separated(id: TheoremId, semantics: Semantics) -> TheoremReport {
    let mut checks = Vec::new();
    let mut sweeps = Vec::new();
    for shape in lower_bound_shapes() {
        let report = sweep(&shape, semantics).expect("lower-bound shapes are small");
        checks.push(TheoremCheck::new(
            format!("sweep {} uncolorable patterns", shape_text(&shape)),
            "0",
            report.uncolorable.len().to_string(),
        ));
        if semantics == Semantics::Nonproportional {
            let reference = sweep(&shape, Semantics::Distinct).expect("small shape");
            checks.push(TheoremCheck::new(
                format!("sweep {} matches distinct", shape_text(&shape)),
                summary(&reference),
                summary(&report),
            ));
        }
        sweeps.push(report);
    }

    let top = sweep(&[4, 4, 4], semantics).expect("12 slots");
    checks.push(TheoremCheck::new(
        "sweep 4,4,4 has uncolorable patterns",
        "true",
        (!top.uncolorable.is_empty()).to_string(),
    ));
    checks.push(TheoremCheck::new(
        "sweep 4,4,4 contains the Cabello pattern",
        "true",
        top.uncolorable.contains(&Pattern::cabello()).to_string(),
    ));
    if semantics == Semantics::Nonproportional {
        let reference = sweep(&[4, 4, 4], Semantics::Distinct).expect("12 slots");
        checks.push(TheoremCheck::new(
            "sweep 4,4,4 matches distinct",
            summary(&reference),
            summary(&top),
        ));
    }
    sweeps.push(top);

    let cabello = Ensemble::builtin("cabello-xyz").unwrap();
    if semantics == Semantics::Nonproportional {
        let adm = admissibility(&cabello);
        checks.push(TheoremCheck::new(
            "cabello-xyz non-proportional pairs",
            "18/18",
            format!("{}/{}", adm.pairs_checked - adm.violations.len(), adm.pairs_checked),
        ));
        let same = match (identify(&cabello, semantics), identify(&cabello, Semantics::Identical)) {
            (Ok(a), Ok(b)) => (a == b).to_string(),
            (Err(e), _) | (_, Err(e)) => format!("error: {e}"),
        };
        checks.push(TheoremCheck::new(
            "cabello-xyz identification matches identical",
            "true",
            same,
        ));
    }
    match identify(&cabello, semantics) {
        Ok(problem) => {
            let verdict = decide(&problem);
            checks.push(TheoremCheck::new(
                "cabello-xyz verdict",
                "uncolorable by parity",
                match verdict.witness() {
                    Some(Witness::Parity(_)) => "uncolorable by parity".to_string(),
                    Some(w) => format!("uncolorable by {}", w.kind()),
                    None => "colorable".to_string(),
                },
            ));
            checks.push(TheoremCheck::new(
                "cabello-xyz realizes the Cabello pattern",
                Pattern::cabello().to_string(),
                Pattern::from_problem(&problem).to_string(),
            ));
        }
        Err(e) => checks.push(TheoremCheck::new("cabello-xyz verdict", "uncolorable by parity", format!("error: {e}"))),
    }
    TheoremReport {
        theorem: id,
        checks,
        sweeps,
    }
}

fn summary(r: &SweepReport) -> String {
    format!(
        "enumerated={} filtered={} uncolorable={}",
        r.enumerated,
        r.filtered,
        r.uncolorable.len()
    )
}
