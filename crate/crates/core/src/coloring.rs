//! Non-contextual value assignments ("colorings") of measurement ensembles.
//!
//! An ensemble and an identification [`Semantics`] determine which slots
//! share a hidden variable. The resulting [`ColoringProblem`] asks for a
//! yes/no value per class such that every POVM sees exactly one "yes",
//! counted with multiplicity over assignable classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensemble::{Ensemble, ValidationOptions, ValidationReport};
use crate::operator::{format_rational, Rational, QubitOperator};

/// Rule deciding when two slots carry the same hidden variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    /// Mathematically equal operators are one class, within and across POVMs.
    Identical,
    /// Slots of one POVM are always separate; across POVMs the k-th
    /// occurrence of an operator matches the k-th occurrence elsewhere.
    Distinct,
    /// As `Identical`, after rejecting POVMs with proportional elements.
    Nonproportional,
    /// As `Identical`, but only elements with operator norm above 1/2 take values.
    Heavy,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::Identical,
        Semantics::Distinct,
        Semantics::Nonproportional,
        Semantics::Heavy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Identical => "identical",
            Semantics::Distinct => "distinct",
            Semantics::Nonproportional => "nonproportional",
            Semantics::Heavy => "heavy",
        }
    }

    /// Whether labels may repeat inside one POVM.
    pub fn allows_repeats(self) -> bool {
        matches!(self, Semantics::Identical | Semantics::Heavy)
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown semantics `{0}` (expected identical, distinct, nonproportional or heavy)")]
pub struct UnknownSemantics(pub String);

impl FromStr for Semantics {
    type Err = UnknownSemantics;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.as_str() == s)
            .ok_or_else(|| UnknownSemantics(s.to_string()))
    }
}

/// What a class stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKey {
    /// A concrete operator and its occurrence rank (always 0 unless the
    /// semantics separates repeated slots).
    Operator { operator: QubitOperator, rank: usize },
    /// An abstract pattern label.
    Label(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassDescriptor {
    pub key: ClassKey,
    pub assignable: bool,
}

/// Classes, the slot-to-class map, and per-POVM incidence with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoringProblem {
    classes: Vec<ClassDescriptor>,
    slots: Vec<Vec<usize>>,
    incidence: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("invalid ensemble: {}", join_issues(.0))]
    InvalidEnsemble(ValidationReport),
    #[error("inadmissible ensemble: povm {povm} slots {} and {} are proportional (gamma={})", .slots.0, .slots.1, format_rational(.gamma))]
    InadmissibleEnsemble {
        povm: usize,
        slots: (usize, usize),
        gamma: Rational,
    },
    #[error("povm {povm} has no element with norm above 1/2")]
    HeavyNoAssignable { povm: usize },
    #[error("{classes} classes exceed the brute-force limit of {limit}")]
    TooLarge { classes: usize, limit: usize },
}

fn join_issues(report: &ValidationReport) -> String {
    report
        .issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl ColoringProblem {
    /// Builds a problem from class descriptors and a slot map
    /// (`slots[povm][slot] = class id`).
    ///
    /// Panics if a slot refers to a class that does not exist.
    pub fn new(classes: Vec<ClassDescriptor>, slots: Vec<Vec<usize>>) -> Self {
        let incidence = slots
            .iter()
            .map(|povm| {
                let mut counts = BTreeMap::new();
                for &c in povm {
                    assert!(c < classes.len(), "slot refers to unknown class {c}");
                    *counts.entry(c).or_insert(0usize) += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        ColoringProblem {
            classes,
            slots,
            incidence,
        }
    }

    /// One assignable class per distinct label; class ids follow label order.
    pub fn from_labels(povms: &[Vec<usize>]) -> Self {
        let mut labels: Vec<usize> = povms.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let index: BTreeMap<usize, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let classes = labels
            .iter()
            .map(|&l| ClassDescriptor {
                key: ClassKey::Label(l),
                assignable: true,
            })
            .collect();
        let slots = povms
            .iter()
            .map(|p| p.iter().map(|l| index[l]).collect())
            .collect();
        ColoringProblem::new(classes, slots)
    }

    pub fn classes(&self) -> &[ClassDescriptor] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn povm_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Vec<usize>] {
        &self.slots
    }

    /// Per POVM, `(class id, multiplicity)` sorted by class id.
    pub fn incidence(&self) -> &[Vec<(usize, usize)>] {
        &self.incidence
    }

    /// Total appearances (with multiplicity) of each class across all POVMs.
    pub fn appearance_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for povm in &self.incidence {
            for &(c, m) in povm {
                counts[c] += m;
            }
        }
        counts
    }

    /// Whether `assignment` puts exactly one "yes" in every POVM and no
    /// "yes" on a non-assignable class.
    pub fn check(&self, assignment: &[bool]) -> bool {
        if assignment.len() != self.classes.len() {
            return false;
        }
        let assignable_ok = self
            .classes
            .iter()
            .zip(assignment)
            .all(|(class, &yes)| class.assignable || !yes);
        assignable_ok
            && self.incidence.iter().all(|povm| {
                povm.iter()
                    .filter(|&&(c, _)| assignment[c])
                    .map(|&(_, m)| m)
                    .sum::<usize>()
                    == 1
            })
    }
}

/// Evidence that no assignment exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// The search space was exhausted; `explored` counts search nodes or
    /// enumerated assignments, depending on the procedure.
    ExhaustiveSearch { explored: u64 },
    Parity(ParityArgument),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::ExhaustiveSearch { .. } => "exhaustive",
            Witness::Parity(_) => "parity",
        }
    }
}

/// Every class appears an even number of times while the number of POVMs
/// (the required number of "yes" outcomes) is odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityArgument {
    pub class_counts: Vec<usize>,
    pub povm_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Colorable { assignment: Vec<bool> },
    Uncolorable { witness: Witness },
}

impl Verdict {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Verdict::Colorable { .. })
    }

    pub fn certificate(&self) -> Option<&[bool]> {
        match self {
            Verdict::Colorable { assignment } => Some(assignment),
            Verdict::Uncolorable { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Colorable { .. } => None,
            Verdict::Uncolorable { witness } => Some(witness),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdentifyOptions {
    pub allow_zero_elements: bool,
}

/// A pair of proportional elements inside one POVM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionalPair {
    pub povm: usize,
    pub slots: (usize, usize),
    pub gamma: Rational,
}

/// Result of the within-POVM proportionality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub pairs_checked: usize,
    pub violations: Vec<ProportionalPair>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every unordered slot pair of every POVM for `Mⱼ = γ·Mᵢ`, `γ > 0`.
///
/// Two zero elements count as proportional with `γ = 1`; a zero element is
/// never proportional to a nonzero one.
pub fn admissibility(e: &Ensemble) -> Admissibility {
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for (p, povm) in e.povms().iter().enumerate() {
        let elems = povm.elements();
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                pairs_checked += 1;
                let gamma = match elems[i].proportionality(&elems[j]) {
                    Ok(g) => g,
                    Err(_) if elems[i].is_zero() && elems[j].is_zero() => {
                        Some(Rational::from_integer(1.into()))
                    }
                    Err(_) => None,
                };
                if let Some(gamma) = gamma {
                    violations.push(ProportionalPair {
                        povm: p,
                        slots: (i, j),
                        gamma,
                    });
                }
            }
        }
    }
    Admissibility {
        pairs_checked,
        violations,
    }
}

pub fn identify(e: &Ensemble, semantics: Semantics) -> Result<ColoringProblem, ColoringError> {
    identify_with(e, semantics, IdentifyOptions::default())
}

pub fn identify_with(
    e: &Ensemble,
    semantics: Semantics,
    options: IdentifyOptions,
) -> Result<ColoringProblem, ColoringError> {
    let report = e.validate_with(ValidationOptions {
        allow_zero_elements: options.allow_zero_elements,
    });
    if !report.is_valid() {
        return Err(ColoringError::InvalidEnsemble(report));
    }
    if semantics == Semantics::Nonproportional {
        if let Some(v) = admissibility(e).violations.into_iter().next() {
            return Err(ColoringError::InadmissibleEnsemble {
                povm: v.povm,
                slots: v.slots,
                gamma: v.gamma,
            });
        }
    }

    let povm_keys: Vec<Vec<(QubitOperator, usize)>> = e
        .povms()
        .iter()
        .map(|povm| {
            let mut seen: BTreeMap<&QubitOperator, usize> = BTreeMap::new();
            povm.elements()
                .iter()
                .map(|m| {
                    let rank = match semantics {
                        Semantics::Distinct => {
                            let next = seen.entry(m).or_insert(0);
                            *next += 1;
                            *next - 1
                        }
                        _ => 0,
                    };
                    (m.clone(), rank)
                })
                .collect()
        })
        .collect();

    let mut keys: Vec<&(QubitOperator, usize)> = povm_keys.iter().flatten().collect();
    keys.sort();
    keys.dedup();
    let index: BTreeMap<&(QubitOperator, usize), usize> =
        keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();

    let classes = keys
        .iter()
        .map(|(operator, rank)| {
            let assignable = match semantics {
                // Validation guarantees positivity, so this cannot fail.
                Semantics::Heavy => operator.norm_exceeds_half().unwrap_or(false),
                _ => true,
            };
            ClassDescriptor {
                key: ClassKey::Operator {
                    operator: operator.clone(),
                    rank: *rank,
                },
                assignable,
            }
        })
        .collect::<Vec<_>>();
    let slots: Vec<Vec<usize>> = povm_keys
        .iter()
        .map(|povm| povm.iter().map(|k| index[k]).collect())
        .collect();

    if semantics == Semantics::Heavy {
        if let Some(povm) = slots
            .iter()
            .position(|p| p.iter().all(|&c| !classes[c].assignable))
        {
            return Err(ColoringError::HeavyNoAssignable { povm });
        }
    }
    Ok(ColoringProblem::new(classes, slots))
}

/// Parity shortcut: fires when every slot is assignable, the POVM count is
/// odd and every class appears an even number of times. Summing yes-counts
/// over POVMs then gives an odd total that no choice of classes can produce.
pub fn parity_witness(p: &ColoringProblem) -> Option<ParityArgument> {
    if p.povm_count().is_multiple_of(2) || p.classes.iter().any(|c| !c.assignable) {
        return None;
    }
    let class_counts = p.appearance_counts();
    class_counts
        .iter()
        .all(|c| c % 2 == 0)
        .then(|| ParityArgument {
            class_counts,
            povm_count: p.povm_count(),
        })
}

/// Deterministic backtracking search with propagation.
///
/// Classes are branched in id order, trying "no" before "yes", so the
/// returned certificate is the lexicographically first one.
pub fn solve(p: &ColoringProblem) -> Verdict {
    let mut start: Vec<Option<bool>> = p
        .classes
        .iter()
        .map(|c| if c.assignable { None } else { Some(false) })
        .collect();
    let mut nodes = 0;
    if propagate(p, &mut start) {
        if let Some(assignment) = search(p, start, &mut nodes) {
            debug_assert!(p.check(&assignment));
            return Verdict::Colorable { assignment };
        }
    } else {
        nodes = 1;
    }
    Verdict::Uncolorable {
        witness: Witness::ExhaustiveSearch { explored: nodes },
    }
}

fn search(p: &ColoringProblem, assignment: Vec<Option<bool>>, nodes: &mut u64) -> Option<Vec<bool>> {
    *nodes += 1;
    let Some(next) = assignment.iter().position(Option::is_none) else {
        return Some(assignment.into_iter().map(Option::unwrap).collect());
    };
    for value in [false, true] {
        let mut branch = assignment.clone();
        branch[next] = Some(value);
        if propagate(p, &mut branch) {
            if let Some(found) = search(p, branch, nodes) {
                return Some(found);
            }
        } else {
            *nodes += 1;
        }
    }
    None
}

/// Applies forced values until fixpoint; returns false on contradiction.
///
/// In each POVM: more than one "yes" is a conflict; with one "yes" the
/// rest must be "no"; with none, classes of multiplicity above one must be
/// "no" and a single remaining multiplicity-one class must be "yes".
fn propagate(p: &ColoringProblem, assignment: &mut [Option<bool>]) -> bool {
    loop {
        let mut changed = false;
        for povm in &p.incidence {
            let yes: usize = povm
                .iter()
                .filter(|&&(c, _)| assignment[c] == Some(true))
                .map(|&(_, m)| m)
                .sum();
            if yes > 1 {
                return false;
            }
            let candidates: Vec<(usize, usize)> = povm
                .iter()
                .filter(|&&(c, _)| assignment[c].is_none())
                .copied()
                .collect();
            if yes == 1 {
                for (c, _) in candidates {
                    assignment[c] = Some(false);
                    changed = true;
                }
                continue;
            }
            let mut single = None;
            let mut singles = 0;
            for (c, m) in candidates {
                if m == 1 {
                    singles += 1;
                    single = Some(c);
                } else {
                    assignment[c] = Some(false);
                    changed = true;
                }
            }
            match singles {
                0 => return false,
                1 => {
                    assignment[single.unwrap()] = Some(true);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Largest class count the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 25;

/// Independent oracle: tries all `2^n` assignments of the assignable
/// classes in lexicographic order (class 0 most significant, "no" first).
pub fn brute_force(p: &ColoringProblem) -> Result<Verdict, ColoringError> {
    if p.class_count() > BRUTE_FORCE_LIMIT {
        return Err(ColoringError::TooLarge {
            classes: p.class_count(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let free: Vec<usize> = (0..p.class_count())
        .filter(|&c| p.classes[c].assignable)
        .collect();
    let n = free.len();
    let total: u64 = 1 << n;
    let mut assignment = vec![false; p.class_count()];
    for mask in 0..total {
        for (bit, &c) in free.iter().enumerate() {
            assignment[c] = mask >> (n - 1 - bit) & 1 == 1;
        }
        if p.check(&assignment) {
            return Ok(Verdict::Colorable { assignment });
        }
    }
    Ok(Verdict::Uncolorable {
        witness: Witness::ExhaustiveSearch { explored: total },
    })
}

/// Parity shortcut first, then the full search.
pub fn decide(p: &ColoringProblem) -> Verdict {
    match parity_witness(p) {
        Some(arg) => Verdict::Uncolorable {
            witness: Witness::Parity(arg),
        },
        None => solve(p),
    }
}
