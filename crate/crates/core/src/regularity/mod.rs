//! Significant labels, regressive regularity over cubes, and sampled checks
//! of the full / reflexive / jump-free family conditions.
//!
//! A labeling `f` is regressively regular over `E^k` when, for every order
//! type realized in `E^k`, either `f(x) >= min(x)` for every point of that
//! type, or `f` is constant on that type with a value below `min(E)`.

mod family;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use family::{
    check_family_conditions, generate_scenario, Counterexample, FamilyReport, LabelFamily,
    ReflexiveViolation, Scenario, ScenarioConfig, SelectionFamily, TerminalFamily,
};

use crate::error::RegularityError;
use crate::labeling::LabelFn;
use crate::lattice::{enumerate_order_types, Cube, OrderType, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignificantLabelReport {
    /// Vertices of the scope whose label is below their own `min`, with
    /// that label, in lexicographic order.
    pub vertices: Vec<(Vertex, u32)>,
    pub labels: BTreeSet<u32>,
    pub scope_size: usize,
}

/// `{f(z) | z ∈ S, f(z) < min(z)}` together with the witnessing vertices.
pub fn significant_labels<'v>(
    labeling: &impl LabelFn,
    scope: impl IntoIterator<Item = &'v Vertex>,
) -> Result<SignificantLabelReport, RegularityError> {
    let mut vertices = BTreeMap::new();
    let mut scope_size = 0;
    for z in scope {
        scope_size += 1;
        let label = labeling
            .label_of(z)
            .ok_or_else(|| RegularityError::ScopeNotInDomain(z.clone()))?;
        if label < z.min_coord() {
            vertices.insert(z.clone(), label);
        }
    }
    let labels = vertices.values().copied().collect();
    Ok(SignificantLabelReport {
        vertices: vertices.into_iter().collect(),
        labels,
        scope_size,
    })
}

/// How a labeling behaves on one order type inside a cube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum TypeClass {
    /// `f(x) >= min(x)` for every point of this type.
    High,
    /// `f` is constant on this type, with a value below `min(E)`.
    ConstantLow { value: u32 },
    /// Neither: `first` has `f < min` and `second` is a same-type point that
    /// rules out a constant value below `min(E)` (it may equal `first`).
    Neither { first: Vertex, second: Vertex },
}

impl TypeClass {
    pub fn tag(&self) -> &'static str {
        match self {
            TypeClass::High => "HIGH",
            TypeClass::ConstantLow { .. } => "CONSTANT-LOW",
            TypeClass::Neither { .. } => "NEITHER",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityVerdict {
    pub cube: Cube,
    /// Classification of every order type realized in the cube.
    #[serde(serialize_with = "per_type_as_list")]
    pub per_type: BTreeMap<OrderType, TypeClass>,
    pub regressively_regular: bool,
    /// Significant labels over the whole cube.
    pub significant: BTreeSet<u32>,
}

impl RegularityVerdict {
    /// The first order type (in canonical order) classified NEITHER.
    pub fn first_failure(&self) -> Option<(&OrderType, &TypeClass)> {
        self.per_type
            .iter()
            .find(|(_, c)| matches!(c, TypeClass::Neither { .. }))
    }

    /// Regularity bounds the significant labels by the number of order
    /// types: each CONSTANT-LOW type contributes one value, HIGH types none.
    pub fn respects_type_bound(&self) -> bool {
        !self.regressively_regular
            || self.significant.len() <= enumerate_order_types(self.cube.dimension()).len()
    }
}

fn per_type_as_list<S: serde::Serializer>(
    per_type: &BTreeMap<OrderType, TypeClass>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        order_type: &'a OrderType,
        #[serde(flatten)]
        class: &'a TypeClass,
    }
    serializer.collect_seq(
        per_type
            .iter()
            .map(|(order_type, class)| Entry { order_type, class }),
    )
}

fn classify(points: &[(&Vertex, u32)], cube_min: u32) -> TypeClass {
    let Some(&(first, f_first)) = points.iter().find(|(z, f)| *f < z.min_coord()) else {
        return TypeClass::High;
    };
    match points.iter().find(|(_, f)| *f != f_first || *f >= cube_min) {
        None => TypeClass::ConstantLow { value: f_first },
        Some(&(second, _)) => TypeClass::Neither {
            first: first.clone(),
            second: second.clone(),
        },
    }
}

pub fn check_regressive_regularity(
    labeling: &impl LabelFn,
    cube: &Cube,
) -> Result<RegularityVerdict, RegularityError> {
    let points = cube.points();
    let mut by_type: BTreeMap<OrderType, Vec<(&Vertex, u32)>> = BTreeMap::new();
    let mut significant = BTreeSet::new();
    for z in &points {
        let f = labeling
            .label_of(z)
            .ok_or_else(|| RegularityError::CubeNotInDomain(z.clone()))?;
        if f < z.min_coord() {
            significant.insert(f);
        }
        by_type.entry(z.order_type()).or_default().push((z, f));
    }
    let per_type: BTreeMap<OrderType, TypeClass> = by_type
        .into_iter()
        .map(|(t, pts)| (t, classify(&pts, cube.axis_min())))
        .collect();
    let regressively_regular = per_type
        .values()
        .all(|c| !matches!(c, TypeClass::Neither { .. }));
    Ok(RegularityVerdict {
        cube: cube.clone(),
        per_type,
        regressively_regular,
        significant,
    })
}
