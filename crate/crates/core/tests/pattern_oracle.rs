//! Independent check of the canonical pattern enumerator.
//!
//! The oracle walks every restricted-growth string over the flattened slots
//! whose per-POVM segments are sorted (every equivalence class has such a
//! representative), deduplicates with a graph isomorphism test on the
//! POVM/label incidence graph, and applies its own copy of the filters.

use std::collections::HashMap;

use bks_core::{enumerate_patterns, Pattern, Semantics};
use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Povm(usize),
    Label,
}

fn incidence_graph(povms: &[Vec<usize>]) -> UnGraph<Node, usize> {
    let mut g = UnGraph::new_undirected();
    let labels = povms.iter().flatten().max().map_or(0, |m| m + 1);
    let label_nodes: Vec<_> = (0..labels).map(|_| g.add_node(Node::Label)).collect();
    for p in povms {
        let node = g.add_node(Node::Povm(p.len()));
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &l in p {
            *counts.entry(l).or_default() += 1;
        }
        for (l, m) in counts {
            g.add_edge(node, label_nodes[l], m);
        }
    }
    g
}

/// Cheap isomorphism invariant used for bucketing.
fn invariant(povms: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for &l in povms.iter().flatten() {
        *degree.entry(l).or_default() += 1;
    }
    let mut per_povm: Vec<Vec<(usize, usize)>> = povms
        .iter()
        .map(|p| {
            let mut mult: HashMap<usize, usize> = HashMap::new();
            for &l in p {
                *mult.entry(l).or_default() += 1;
            }
            let mut v: Vec<(usize, usize)> = mult.iter().map(|(l, m)| (degree[l], *m)).collect();
            v.sort();
            v
        })
        .collect();
    per_povm.sort();
    per_povm
}

struct IsoClasses {
    buckets: HashMap<Vec<Vec<(usize, usize)>>, Vec<(Vec<Vec<usize>>, UnGraph<Node, usize>)>>,
    count: usize,
}

impl IsoClasses {
    fn new() -> Self {
        IsoClasses { buckets: HashMap::new(), count: 0 }
    }

    /// Returns true when `povms` starts a new class.
    fn insert(&mut self, povms: Vec<Vec<usize>>) -> bool {
        let g = incidence_graph(&povms);
        let bucket = self.buckets.entry(invariant(&povms)).or_default();
        let seen = bucket
            .iter()
            .any(|(_, h)| is_isomorphic_matching(&g, h, |a, b| a == b, |a, b| a == b));
        if !seen {
            bucket.push((povms, g));
            self.count += 1;
        }
        !seen
    }

    fn representatives(&self) -> impl Iterator<Item = &Vec<Vec<usize>>> {
        self.buckets.values().flatten().map(|(p, _)| p)
    }
}

fn oracle_filters(povms: &[Vec<usize>], repeats: bool) -> bool {
    let count = |p: &[usize]| {
        let mut m: HashMap<usize, usize> = HashMap::new();
        for &l in p {
            *m.entry(l).or_default() += 1;
        }
        m
    };
    if !repeats && povms.iter().any(|p| count(p).values().any(|&m| m > 1)) {
        return false;
    }
    for i in 0..povms.len() {
        for j in 0..povms.len() {
            if i == j || povms[i].len() != povms[j].len() {
                continue;
            }
            let (a, b) = (count(&povms[i]), count(&povms[j]));
            let common: usize = a.iter().map(|(l, m)| (*m).min(*b.get(l).unwrap_or(&0))).sum();
            if povms[i].len() - common == 1 {
                return false;
            }
        }
    }
    let units: Vec<usize> = povms.iter().filter(|p| p.len() == 1).map(|p| p[0]).collect();
    if let Some(&u) = units.first() {
        if units.iter().any(|&v| v != u) {
            return false;
        }
        if povms.iter().any(|p| p.len() > 1 && p.contains(&u)) {
            return false;
        }
    }
    true
}

/// `(total classes, filtered classes)`.
fn oracle_counts(shape: &[usize], repeats: bool) -> (usize, usize) {
    let mut shape = shape.to_vec();
    shape.sort_unstable();
    let n: usize = shape.iter().sum();
    let mut starts = Vec::new();
    let mut acc = 0;
    for &k in &shape {
        starts.push(acc);
        acc += k;
    }
    let mut rgs = Vec::with_capacity(n);
    let mut classes = IsoClasses::new();
    let mut filtered = 0;

    fn walk(
        pos: usize,
        next_label: usize,
        n: usize,
        shape: &[usize],
        starts: &[usize],
        repeats: bool,
        rgs: &mut Vec<usize>,
        classes: &mut IsoClasses,
        filtered: &mut usize,
    ) {
        if pos == n {
            let povms: Vec<Vec<usize>> = starts
                .iter()
                .zip(shape)
                .map(|(&s, &k)| rgs[s..s + k].to_vec())
                .collect();
            let keep = oracle_filters(&povms, repeats);
            if classes.insert(povms) && keep {
                *filtered += 1;
            }
            return;
        }
        let segment_start = starts.contains(&pos);
        for v in 0..=next_label {
            if !segment_start {
                let prev = rgs[pos - 1];
                if v < prev || (!repeats && v == prev) {
                    continue;
                }
            }
            rgs.push(v);
            walk(pos + 1, next_label.max(v + 1), n, shape, starts, repeats, rgs, classes, filtered);
            rgs.pop();
        }
    }

    walk(0, 0, n, &shape, &starts, repeats, &mut rgs, &mut classes, &mut filtered);
    (classes.count, filtered)
}

fn check_shape(shape: &[usize], semantics: Semantics) -> (usize, usize) {
    let main = enumerate_patterns(shape, semantics).unwrap();
    let (total, filtered) = oracle_counts(shape, semantics.allows_repeats());
    assert_eq!(main.total, total, "total for {shape:?} {semantics}");
    assert_eq!(main.patterns.len(), filtered, "filtered for {shape:?} {semantics}");

    // Main output is pairwise non-isomorphic, so equal counts mean it hits
    // every class exactly once.
    let mut distinct = IsoClasses::new();
    for p in &main.patterns {
        assert!(distinct.insert(p.povms().to_vec()), "duplicate class {p}");
    }
    (total, filtered)
}

#[test]
fn small_shapes_match_oracle() {
    for shape in [
        vec![1],
        vec![2],
        vec![3],
        vec![4],
        vec![1, 1],
        vec![1, 2],
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![4, 4],
        vec![1, 1, 2],
        vec![2, 2, 2],
        vec![2, 2, 2, 2],
        vec![1, 2, 2, 2],
        vec![2, 3, 4],
    ] {
        check_shape(&shape, Semantics::Distinct);
        check_shape(&shape, Semantics::Identical);
    }
}

#[test]
fn golden_counts_three_by_three() {
    assert_eq!(check_shape(&[3, 3, 3], Semantics::Distinct), (16, 8));
    assert_eq!(check_shape(&[3, 3, 3], Semantics::Identical), (162, 88));
}

#[test]
fn golden_counts_four_by_three() {
    assert_eq!(check_shape(&[3, 3, 3, 3], Semantics::Distinct), (93, 28));
}

#[test]
fn golden_counts_three_by_four() {
    assert_eq!(check_shape(&[4, 4, 4], Semantics::Distinct), (30, 19));
}

#[test]
fn scrambled_cabello_is_the_same_class() {
    let scrambled = vec![vec![3, 0, 5, 1], vec![5, 1, 2, 4], vec![0, 3, 4, 2]];
    let mut classes = IsoClasses::new();
    assert!(classes.insert(Pattern::cabello().povms().to_vec()));
    assert!(!classes.insert(scrambled.clone()));
    assert_eq!(classes.representatives().count(), 1);
    assert_eq!(Pattern::new(&scrambled), Pattern::cabello());
}
