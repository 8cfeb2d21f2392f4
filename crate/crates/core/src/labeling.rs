use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lattice::{Universe, Vertex};

/// Whether a labeling is the plain function or its relaxed counterpart,
/// which replaces the label of every "undefined" vertex (a sink for terminal
/// labels, an empty selection set for selection labels) by `max(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plain,
    Relaxed,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plain => "plain",
            Variant::Relaxed => "relaxed",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Variant::Plain),
            "relaxed" => Ok(Variant::Relaxed),
            other => Err(format!(
                "unknown variant `{other}` (expected plain|relaxed)"
            )),
        }
    }
}

/// A map from lattice points to labels, defined on some finite domain.
pub trait LabelFn {
    fn label_of(&self, v: &Vertex) -> Option<u32>;
}

impl LabelFn for HashMap<Vertex, u32> {
    fn label_of(&self, v: &Vertex) -> Option<u32> {
        self.get(v).copied()
    }
}

impl LabelFn for BTreeMap<Vertex, u32> {
    fn label_of(&self, v: &Vertex) -> Option<u32> {
        self.get(v).copied()
    }
}

impl<L: LabelFn + ?Sized> LabelFn for &L {
    fn label_of(&self, v: &Vertex) -> Option<u32> {
        (**self).label_of(v)
    }
}

/// Labels indexed like the universe's vertex list.
#[derive(Debug, Clone, Copy)]
pub struct IndexedLabels<'a> {
    pub universe: &'a Universe,
    pub labels: &'a [u32],
}

impl LabelFn for IndexedLabels<'_> {
    fn label_of(&self, v: &Vertex) -> Option<u32> {
        self.universe.index_of(v).map(|i| self.labels[i])
    }
}

/// An owned universe together with a total labeling, as read from or
/// written to a labeling file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledUniverse {
    pub universe: Universe,
    pub labels: Vec<u32>,
}

impl LabeledUniverse {
    pub fn new(universe: Universe, labels: Vec<u32>) -> Self {
        assert_eq!(universe.len(), labels.len(), "labeling must be total");
        LabeledUniverse { universe, labels }
    }

    pub fn as_indexed(&self) -> IndexedLabels<'_> {
        IndexedLabels {
            universe: &self.universe,
            labels: &self.labels,
        }
    }
}

impl LabelFn for LabeledUniverse {
    fn label_of(&self, v: &Vertex) -> Option<u32> {
        self.as_indexed().label_of(v)
    }
}

/// Family-level reflexivity for one domain: every label must be a coordinate
/// of some vertex of the domain. Returns the offending vertex indices.
pub fn reflexive_violations(universe: &Universe, labels: &[u32]) -> Vec<usize> {
    let coords: std::collections::BTreeSet<u32> = universe
        .vertices()
        .iter()
        .flat_map(|v| v.coords().iter().copied())
        .collect();
    labels
        .iter()
        .enumerate()
        .filter(|(_, l)| !coords.contains(l))
        .map(|(i, _)| i)
        .collect()
}
