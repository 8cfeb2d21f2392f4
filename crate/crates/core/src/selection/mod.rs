//! Selection labeling.
//!
//! `s_D` is defined by induction on `max(x)`: collect every defined value of
//! every rule over every ordered tuple (repeats allowed) of out-neighbors of
//! `x`, paired with their already-computed labels. That set is `Φ^D_x`.
//! `s_D(x) = min Φ^D_x` when it is nonempty and `min(x)` otherwise; the relaxed
//! labeling uses `max(x)` for the empty case instead.

mod rules;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

pub use rules::{
    builtin_rule_library, Atom, Cmp, Guard, Member, SelectionRule, SelectionRuleSet, Selector,
    Term, ThetaSource, DEFAULT_ARITY_CAP, PRESET_NAMES,
};

use crate::error::LabelError;
use crate::labeling::{LabelFn, Variant};
use crate::lattice::{Universe, Vertex};

/// Default vertex cap for [`brute_force_selection_label`].
pub const DEFAULT_SELECTION_ORACLE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionLabeling<'a> {
    universe: &'a Universe,
    rules: &'a SelectionRuleSet,
    labels: Vec<u32>,
    defined: Vec<bool>,
    variant: Variant,
}

impl<'a> SelectionLabeling<'a> {
    pub fn universe(&self) -> &'a Universe {
        self.universe
    }

    pub fn rules(&self) -> &'a SelectionRuleSet {
        self.rules
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> u32 {
        self.labels[index]
    }

    /// Per-vertex flag: `Φ^D_x` is nonempty.
    pub fn defined_mask(&self) -> &[bool] {
        &self.defined
    }

    pub fn get(&self, v: &Vertex) -> Option<u32> {
        self.universe.index_of(v).map(|i| self.labels[i])
    }

    pub fn into_labels(self) -> Vec<u32> {
        self.labels
    }
}

impl LabelFn for SelectionLabeling<'_> {
    fn label_of(&self, v: &Vertex) -> Option<u32> {
        self.get(v)
    }
}

/// `G^x_D`: out-neighbors of `x` within the universe, lexicographically.
pub fn adjacency(universe: &Universe, x: &Vertex) -> Result<Vec<Vertex>, LabelError> {
    let i = universe
        .index_of(x)
        .ok_or_else(|| LabelError::VertexNotInUniverse(x.clone()))?;
    let mut out: Vec<usize> = universe.out_neighbors(i).to_vec();
    out.sort_unstable();
    Ok(out
        .into_iter()
        .map(|j| universe.vertex(j).clone())
        .collect())
}

/// Calls `visit` on every ordered `arity`-tuple over `pool`.
fn for_each_tuple<'p>(pool: &[Member<'p>], arity: usize, mut visit: impl FnMut(&[Member<'p>])) {
    if pool.is_empty() {
        return;
    }
    let mut digits = vec![0usize; arity];
    let mut tuple: Vec<Member<'p>> = vec![pool[0]; arity];
    loop {
        visit(&tuple);
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < pool.len() {
                tuple[pos] = pool[digits[pos]];
                break;
            }
            digits[pos] = 0;
            tuple[pos] = pool[0];
        }
    }
}

/// `Φ^D_x` from the labels of the out-neighbors of `x` (given by index).
///
/// Rules whose guards ignore member coordinates depend on a tuple only
/// through its reports, so for those the tuples range over the distinct
/// neighbor labels instead of the neighbors; the resulting set is the same.
fn phi_from_neighbors(
    universe: &Universe,
    x: &Vertex,
    neighbors: &[usize],
    rules: &SelectionRuleSet,
    label: impl Fn(usize) -> u32,
) -> BTreeSet<u32> {
    let mut phi = BTreeSet::new();
    if neighbors.is_empty() {
        return phi;
    }
    let full: Vec<Member<'_>> = neighbors
        .iter()
        .map(|&j| (universe.vertex(j), label(j)))
        .collect();
    let mut by_report: BTreeMap<u32, Member<'_>> = BTreeMap::new();
    for &m in &full {
        by_report.entry(m.1).or_insert(m);
    }
    let reduced: Vec<Member<'_>> = by_report.into_values().collect();
    for rule in rules.rules() {
        if rule.guard().is_never() {
            continue;
        }
        let pool = if rule.guard().reads_member_coords() {
            &full
        } else {
            &reduced
        };
        for_each_tuple(pool, rule.arity(), |tuple| {
            if let Some(n) = rule.apply(x, tuple) {
                phi.insert(n);
            }
        });
    }
    phi
}

/// `Φ^D_x` given labels for (at least) every out-neighbor of `x`.
/// `lower_labels` is indexed like the universe's vertex list.
pub fn phi_set(
    universe: &Universe,
    x: &Vertex,
    rules: &SelectionRuleSet,
    lower_labels: &[Option<u32>],
) -> Result<BTreeSet<u32>, LabelError> {
    let i = universe
        .index_of(x)
        .ok_or_else(|| LabelError::VertexNotInUniverse(x.clone()))?;
    rules.check_dimension(universe.dimension())?;
    let neighbors = universe.out_neighbors(i);
    if let Some(&j) = neighbors
        .iter()
        .find(|&&j| lower_labels.get(j).copied().flatten().is_none())
    {
        return Err(LabelError::MissingLowerLabel {
            vertex: x.clone(),
            neighbor: universe.vertex(j).clone(),
        });
    }
    Ok(phi_from_neighbors(universe, x, neighbors, rules, |j| {
        lower_labels[j].expect("checked above")
    }))
}

/// Labels every vertex, one `max` level at a time. Vertices within a level
/// have no edges between them and are labeled in parallel.
///
/// Uses the universe's edges as given; apply
/// [`SelectionRuleSet::effective_universe`] first to honor the rule set's
/// `theta` setting.
pub fn label_all_selection<'a>(
    universe: &'a Universe,
    rules: &'a SelectionRuleSet,
    variant: Variant,
) -> Result<SelectionLabeling<'a>, LabelError> {
    rules.check_dimension(universe.dimension())?;
    let mut plain = vec![0u32; universe.len()];
    let mut defined = vec![false; universe.len()];
    for level in universe.max_levels() {
        let computed: Vec<(usize, Option<u32>)> = level
            .par_iter()
            .map(|&i| {
                let x = universe.vertex(i);
                let phi =
                    phi_from_neighbors(universe, x, universe.out_neighbors(i), rules, |j| plain[j]);
                (i, phi.first().copied())
            })
            .collect();
        for (i, least) in computed {
            defined[i] = least.is_some();
            plain[i] = least.unwrap_or_else(|| universe.vertex(i).min_coord());
        }
    }
    let labels = match variant {
        Variant::Plain => plain,
        Variant::Relaxed => plain
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                if defined[i] {
                    s
                } else {
                    universe.vertex(i).max_coord()
                }
            })
            .collect(),
    };
    Ok(SelectionLabeling {
        universe,
        rules,
        labels,
        defined,
        variant,
    })
}

/// Outcome of the literal selection oracle at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSelection {
    pub label: u32,
    /// `Φ^D_x` was nonempty.
    pub defined: bool,
}

/// `s_D(x)` (or `ŝ_D(x)`) straight from the inductive definition: every
/// ordered tuple of actual neighbors is enumerated at every vertex, and each
/// neighbor label is recomputed recursively with no memoization.
pub fn brute_force_selection_label(
    universe: &Universe,
    x: &Vertex,
    rules: &SelectionRuleSet,
    variant: Variant,
) -> Result<OracleSelection, LabelError> {
    if universe.len() > DEFAULT_SELECTION_ORACLE_CAP {
        return Err(LabelError::OracleCapExceeded {
            cap: DEFAULT_SELECTION_ORACLE_CAP,
            size: universe.len(),
        });
    }
    rules.check_dimension(universe.dimension())?;
    let i = universe
        .index_of(x)
        .ok_or_else(|| LabelError::VertexNotInUniverse(x.clone()))?;

    fn plain(universe: &Universe, i: usize, rules: &SelectionRuleSet) -> (u32, bool) {
        let x = universe.vertex(i);
        let neighbors: Vec<usize> = (0..universe.len())
            .filter(|&j| universe.has_edge_between(i, j))
            .collect();
        let mut phi = BTreeSet::new();
        for rule in rules.rules() {
            let r = rule.arity();
            let tuples = neighbors.len().pow(r as u32);
            for mut code in 0..tuples {
                let mut members = Vec::with_capacity(r);
                for _ in 0..r {
                    let y = neighbors[code % neighbors.len()];
                    code /= neighbors.len();
                    members.push((universe.vertex(y), plain(universe, y, rules).0));
                }
                members.reverse();
                if let Some(n) = rule.apply(x, &members) {
                    phi.insert(n);
                }
            }
        }
        match phi.first() {
            Some(&n) => (n, true),
            None => (x.min_coord(), false),
        }
    }

    let (label, defined) = plain(universe, i, rules);
    let label = match (variant, defined) {
        (Variant::Relaxed, false) => x.max_coord(),
        _ => label,
    };
    Ok(OracleSelection { label, defined })
}
