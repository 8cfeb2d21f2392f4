//! Terminal paths and the terminal label function.
//!
//! `t_D(z)` is the least `min`-coordinate among `z` and the last vertices of
//! terminal paths starting at `z`. Because every edge lowers `max`, every
//! walk is a path and every maximal path ends at a sink, so the terminal
//! endpoints of `z` are exactly the sinks reachable from `z`. The labeling is
//! then a single pass in ascending-`max` order. [`brute_force_terminal_label`]
//! applies the path definition literally and is kept as an oracle.

use std::collections::BTreeSet;

use crate::error::LabelError;
use crate::labeling::{LabelFn, Variant};
use crate::lattice::{Universe, Vertex};

/// Default vertex cap for [`brute_force_terminal_label`].
pub const DEFAULT_ORACLE_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalLabeling<'u> {
    universe: &'u Universe,
    labels: Vec<u32>,
    variant: Variant,
}

impl<'u> TerminalLabeling<'u> {
    pub fn universe(&self) -> &'u Universe {
        self.universe
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Labels indexed like `universe().vertices()`.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> u32 {
        self.labels[index]
    }

    pub fn get(&self, v: &Vertex) -> Option<u32> {
        self.universe.index_of(v).map(|i| self.labels[i])
    }

    pub fn into_labels(self) -> Vec<u32> {
        self.labels
    }
}

impl LabelFn for TerminalLabeling<'_> {
    fn label_of(&self, v: &Vertex) -> Option<u32> {
        self.get(v)
    }
}

fn require(universe: &Universe, z: &Vertex) -> Result<usize, LabelError> {
    universe
        .index_of(z)
        .ok_or_else(|| LabelError::VertexNotInUniverse(z.clone()))
}

/// `T_D(z)`: the sinks reachable from `z`, including `z` itself when `z` is
/// a sink.
pub fn terminal_set(universe: &Universe, z: &Vertex) -> Result<BTreeSet<Vertex>, LabelError> {
    let start = require(universe, z)?;
    let mut seen = vec![false; universe.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut sinks = BTreeSet::new();
    while let Some(i) = stack.pop() {
        let out = universe.out_neighbors(i);
        if out.is_empty() {
            sinks.insert(universe.vertex(i).clone());
        }
        for &j in out {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(sinks)
}

/// `t_D(z)` for a single vertex.
pub fn terminal_label(universe: &Universe, z: &Vertex) -> Result<u32, LabelError> {
    let own = z.min_coord();
    Ok(terminal_set(universe, z)?
        .iter()
        .map(Vertex::min_coord)
        .fold(own, u32::min))
}

/// Labels every vertex in one ascending-`max` sweep.
///
/// Plain: `t_D` everywhere. Relaxed: `max(z)` at sinks, `t_D(z)` elsewhere.
pub fn label_all_terminal(universe: &Universe, variant: Variant) -> TerminalLabeling<'_> {
    // least min-coordinate over reachable sinks
    let mut sink_min = vec![u32::MAX; universe.len()];
    for &i in universe.ascending_max_order() {
        let out = universe.out_neighbors(i);
        sink_min[i] = if out.is_empty() {
            universe.vertex(i).min_coord()
        } else {
            out.iter().map(|&j| sink_min[j]).min().unwrap_or(u32::MAX)
        };
    }
    let labels = (0..universe.len())
        .map(|i| {
            let v = universe.vertex(i);
            match (variant, universe.is_sink(i)) {
                (Variant::Relaxed, true) => v.max_coord(),
                _ => sink_min[i].min(v.min_coord()),
            }
        })
        .collect();
    TerminalLabeling {
        universe,
        labels,
        variant,
    }
}

/// `t_D(z)` by explicit path enumeration, following the definition word for
/// word: extend paths of distinct vertices until they cannot be extended,
/// collect the last vertices, take the minimum.
pub fn brute_force_terminal_label(universe: &Universe, z: &Vertex) -> Result<u32, LabelError> {
    brute_force_terminal_label_with_cap(universe, z, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_terminal_label_with_cap(
    universe: &Universe,
    z: &Vertex,
    cap: usize,
) -> Result<u32, LabelError> {
    if universe.len() > cap {
        return Err(LabelError::OracleCapExceeded {
            cap,
            size: universe.len(),
        });
    }
    let start = require(universe, z)?;
    let mut last_vertices = BTreeSet::new();
    let mut paths = vec![vec![start]];
    while let Some(path) = paths.pop() {
        let last = *path.last().expect("paths are nonempty");
        let extensions: Vec<usize> = (0..universe.len())
            .filter(|&y| universe.has_edge_between(last, y) && !path.contains(&y))
            .collect();
        if extensions.is_empty() {
            last_vertices.insert(last);
        }
        for y in extensions {
            let mut longer = path.clone();
            longer.push(y);
            paths.push(longer);
        }
    }
    Ok(last_vertices
        .into_iter()
        .map(|i| universe.vertex(i).min_coord())
        .chain(std::iter::once(z.min_coord()))
        .min()
        .expect("chain is nonempty"))
}
