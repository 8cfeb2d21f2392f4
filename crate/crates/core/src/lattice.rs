//! Lattice points, downward-directed universes, cubes and order types.
//!
//! A universe is a finite vertex set `D` in `N^k` together with the edges of a
//! fixed downward-directed graph that fall inside `D`. Every edge strictly
//! lowers the maximum coordinate, so every universe is acyclic and sorting the
//! vertices by `max` gives a topological order (sinks first).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{CubeError, UniverseError};

/// Largest dimension accepted by the exhaustive operations (cube enumeration,
/// witness search) unless the caller raises it.
pub const DEFAULT_MAX_EXHAUSTIVE_K: usize = 4;

/// A point of `N^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex(Vec<u32>);

impl Vertex {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Vertex(coords.into())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// Smallest coordinate. Zero for the (degenerate) empty tuple.
    pub fn min_coord(&self) -> u32 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// Largest coordinate. Zero for the (degenerate) empty tuple.
    pub fn max_coord(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn has_coordinate(&self, value: u32) -> bool {
        self.0.contains(&value)
    }

    pub fn order_type(&self) -> OrderType {
        OrderType::of(&self.0)
    }
}

impl<const N: usize> From<[u32; N]> for Vertex {
    fn from(coords: [u32; N]) -> Self {
        Vertex(coords.to_vec())
    }
}

impl From<Vec<u32>> for Vertex {
    fn from(coords: Vec<u32>) -> Self {
        Vertex(coords)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A directed edge satisfying the downward condition `max(source) > max(target)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    source: Vertex,
    target: Vertex,
}

impl Edge {
    pub fn new(source: Vertex, target: Vertex) -> Result<Self, UniverseError> {
        if source.max_coord() <= target.max_coord() {
            return Err(UniverseError::DownwardViolation {
                from_max: source.max_coord(),
                to_max: target.max_coord(),
                from: source,
                to: target,
            });
        }
        Ok(Edge { source, target })
    }

    pub fn source(&self) -> &Vertex {
        &self.source
    }

    pub fn target(&self) -> &Vertex {
        &self.target
    }
}

/// An edge set `Θ` over all of `N^k`, queried pairwise.
///
/// Implementations may return `true` for pairs that are not max-decreasing;
/// [`Universe::induced`] only ever asks about max-decreasing pairs.
pub trait EdgePredicate {
    fn has_edge(&self, source: &Vertex, target: &Vertex) -> bool;
}

/// `Θ = {(x, y) | max(x) > max(y)}`, the largest downward edge set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MaximalTheta;

impl EdgePredicate for MaximalTheta {
    fn has_edge(&self, source: &Vertex, target: &Vertex) -> bool {
        source.max_coord() > target.max_coord()
    }
}

/// No edges at all.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmptyTheta;

impl EdgePredicate for EmptyTheta {
    fn has_edge(&self, _: &Vertex, _: &Vertex) -> bool {
        false
    }
}

/// A fixed pseudo-random downward edge set over all of `N^k`: each
/// max-decreasing pair is an edge with probability `density`, decided by a
/// stateless hash of `(seed, source, target)`. Two universes induced from the
/// same `HashedTheta` are vertex-induced subgraphs of one common graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HashedTheta {
    pub seed: u64,
    pub density: f64,
}

impl HashedTheta {
    pub fn new(seed: u64, density: f64) -> Self {
        HashedTheta {
            seed,
            density: density.clamp(0.0, 1.0),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl EdgePredicate for HashedTheta {
    fn has_edge(&self, source: &Vertex, target: &Vertex) -> bool {
        if source.max_coord() <= target.max_coord() {
            return false;
        }
        let mut h = splitmix64(self.seed);
        for &c in source
            .coords()
            .iter()
            .chain([u32::MAX].iter())
            .chain(target.coords())
        {
            h = splitmix64(h ^ u64::from(c));
        }
        // top 53 bits as a uniform draw in [0, 1)
        let draw = (h >> 11) as f64 / (1u64 << 53) as f64;
        draw < self.density
    }
}

#[derive(Debug, Clone)]
enum EdgeStore {
    /// Sorted out-neighbor index lists.
    Explicit { out: Vec<Vec<usize>>, count: usize },
    /// Maximal Θ, generated from the max-ordering: the out-neighbors of `v`
    /// are `by_max[..below[v]]`.
    Maximal { below: Vec<usize> },
}

/// A finite vertex-induced subgraph `G_D = (D, Θ_D)` of a downward-directed
/// lattice graph.
///
/// Vertices are kept in lexicographic order and deduplicated; vertex indices
/// used throughout the crate refer to that order.
#[derive(Debug, Clone)]
pub struct Universe {
    k: usize,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    /// Vertex indices sorted by ascending `max`, ties by index.
    by_max: Vec<usize>,
    edges: EdgeStore,
}

fn check_dimension(k: usize, v: &Vertex) -> Result<(), UniverseError> {
    if v.dimension() != k {
        return Err(UniverseError::DimensionMismatch {
            vertex: v.clone(),
            expected: k,
            found: v.dimension(),
        });
    }
    Ok(())
}

struct VertexSet {
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    by_max: Vec<usize>,
}

fn vertex_set(
    k: usize,
    vertices: impl IntoIterator<Item = Vertex>,
) -> Result<VertexSet, UniverseError> {
    if k < 2 {
        return Err(UniverseError::InvalidDimension(k));
    }
    let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
    for v in &vertices {
        check_dimension(k, v)?;
    }
    vertices.sort_unstable();
    vertices.dedup();
    let index = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut by_max: Vec<usize> = (0..vertices.len()).collect();
    by_max.sort_by_key(|&i| (vertices[i].max_coord(), i));
    Ok(VertexSet {
        vertices,
        index,
        by_max,
    })
}

impl Universe {
    /// Validates raw vertex and edge lists. Edges must join listed vertices
    /// and satisfy the downward condition; duplicates collapse (set semantics).
    pub fn new(
        k: usize,
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, UniverseError> {
        let VertexSet {
            vertices,
            index,
            by_max,
        } = vertex_set(k, vertices)?;
        let mut out = vec![Vec::new(); vertices.len()];
        for (source, target) in edges {
            check_dimension(k, &source)?;
            check_dimension(k, &target)?;
            let (Some(&s), Some(&t)) = (index.get(&source), index.get(&target)) else {
                return Err(UniverseError::DanglingEdge {
                    from: source,
                    to: target,
                });
            };
            Edge::new(source, target)?;
            out[s].push(t);
        }
        let mut count = 0;
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
            count += list.len();
        }
        Ok(Universe {
            k,
            vertices,
            index,
            by_max,
            edges: EdgeStore::Explicit { out, count },
        })
    }

    /// `G_D` for the graph whose edge set is `theta`.
    pub fn induced(
        k: usize,
        vertices: impl IntoIterator<Item = Vertex>,
        theta: &impl EdgePredicate,
    ) -> Result<Self, UniverseError> {
        let VertexSet {
            vertices,
            index,
            by_max,
        } = vertex_set(k, vertices)?;
        let mut out = vec![Vec::new(); vertices.len()];
        let mut count = 0;
        for (s, list) in out.iter_mut().enumerate() {
            for &t in &by_max {
                if vertices[t].max_coord() >= vertices[s].max_coord() {
                    break;
                }
                if theta.has_edge(&vertices[s], &vertices[t]) {
                    list.push(t);
                }
            }
            list.sort_unstable();
            count += list.len();
        }
        Ok(Universe {
            k,
            vertices,
            index,
            by_max,
            edges: EdgeStore::Explicit { out, count },
        })
    }

    /// `G_D` under the maximal edge set; neighbors are derived on demand from
    /// the max-ordering rather than stored.
    pub fn maximal(
        k: usize,
        vertices: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, UniverseError> {
        let VertexSet {
            vertices,
            index,
            by_max,
        } = vertex_set(k, vertices)?;
        let below = vertices
            .iter()
            .map(|v| by_max.partition_point(|&j| vertices[j].max_coord() < v.max_coord()))
            .collect();
        Ok(Universe {
            k,
            vertices,
            index,
            by_max,
            edges: EdgeStore::Maximal { below },
        })
    }

    /// Same vertex set, maximal edge set.
    pub fn with_maximal_theta(&self) -> Universe {
        Universe::maximal(self.k, self.vertices.iter().cloned())
            .expect("vertices were validated on construction")
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    /// Vertex indices in ascending `max` order: a reverse topological order.
    pub fn ascending_max_order(&self) -> &[usize] {
        &self.by_max
    }

    /// Groups of vertex indices sharing a `max` value, lowest level first.
    /// No edge joins two vertices of one level.
    pub fn max_levels(&self) -> Vec<&[usize]> {
        self.by_max
            .chunk_by(|&a, &b| self.vertices[a].max_coord() == self.vertices[b].max_coord())
            .collect()
    }

    pub fn out_neighbors(&self, index: usize) -> &[usize] {
        match &self.edges {
            EdgeStore::Explicit { out, .. } => &out[index],
            EdgeStore::Maximal { below } => &self.by_max[..below[index]],
        }
    }

    pub fn out_degree(&self, index: usize) -> usize {
        self.out_neighbors(index).len()
    }

    pub fn is_sink(&self, index: usize) -> bool {
        self.out_degree(index) == 0
    }

    pub fn has_edge_between(&self, source: usize, target: usize) -> bool {
        match &self.edges {
            EdgeStore::Explicit { out, .. } => out[source].binary_search(&target).is_ok(),
            EdgeStore::Maximal { .. } => {
                self.vertices[source].max_coord() > self.vertices[target].max_coord()
            }
        }
    }

    pub fn edge_count(&self) -> usize {
        match &self.edges {
            EdgeStore::Explicit { count, .. } => *count,
            EdgeStore::Maximal { below } => below.iter().sum(),
        }
    }

    pub fn is_maximal_theta(&self) -> bool {
        matches!(self.edges, EdgeStore::Maximal { .. })
    }

    /// All edges as index pairs, sorted by source then target.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|s| self.out_neighbors(s).iter().map(move |&t| (s, t)))
            .collect();
        if self.is_maximal_theta() {
            edges.sort_unstable();
        }
        edges
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edge_indices()
            .into_iter()
            .map(|(s, t)| Edge {
                source: self.vertices[s].clone(),
                target: self.vertices[t].clone(),
            })
            .collect()
    }

    /// Members `z` of `D` with `max(z) < max(x)`; `x` need not be in `D`.
    pub fn light_cone(&self, x: &Vertex) -> Vec<Vertex> {
        self.light_cone_indices(x)
            .into_iter()
            .map(|i| self.vertices[i].clone())
            .collect()
    }

    /// Indices of the light cone of `x`, in lexicographic vertex order.
    pub fn light_cone_indices(&self, x: &Vertex) -> Vec<usize> {
        let end = self
            .by_max
            .partition_point(|&j| self.vertices[j].max_coord() < x.max_coord());
        let mut cone = self.by_max[..end].to_vec();
        cone.sort_unstable();
        cone
    }
}

impl EdgePredicate for Universe {
    fn has_edge(&self, source: &Vertex, target: &Vertex) -> bool {
        match (self.index_of(source), self.index_of(target)) {
            (Some(s), Some(t)) => self.has_edge_between(s, t),
            _ => false,
        }
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.vertices == other.vertices
            && self.edge_indices() == other.edge_indices()
    }
}

impl Eq for Universe {}

/// Validates raw vertex and edge lists into a universe.
pub fn validate_universe(
    k: usize,
    vertices: impl IntoIterator<Item = Vertex>,
    edges: impl IntoIterator<Item = (Vertex, Vertex)>,
) -> Result<Universe, UniverseError> {
    Universe::new(k, vertices, edges)
}

/// A cube `E^k` for a finite nonempty axis `E ⊂ N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cube {
    axis: Vec<u32>,
    k: usize,
}

impl Cube {
    pub fn new(axis: impl IntoIterator<Item = u32>, k: usize) -> Result<Self, CubeError> {
        let axis: BTreeSet<u32> = axis.into_iter().collect();
        if axis.is_empty() {
            return Err(CubeError::EmptyAxis);
        }
        if k == 0 {
            return Err(CubeError::ZeroDimension);
        }
        Ok(Cube {
            axis: axis.into_iter().collect(),
            k,
        })
    }

    /// Sorted axis values.
    pub fn axis(&self) -> &[u32] {
        &self.axis
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// `p = |E|`.
    pub fn side(&self) -> usize {
        self.axis.len()
    }

    pub fn axis_min(&self) -> u32 {
        self.axis[0]
    }

    pub fn point_count(&self) -> usize {
        self.axis.len().pow(self.k as u32)
    }

    /// All `|E|^k` points in lexicographic order.
    pub fn points(&self) -> Vec<Vertex> {
        cube_points(self)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}^{}", self.axis.iter().join(","), self.k)
    }
}

pub fn cube_points(cube: &Cube) -> Vec<Vertex> {
    (0..cube.k)
        .map(|_| cube.axis.iter().copied())
        .multi_cartesian_product()
        .map(Vertex)
        .collect()
}

/// The order type of a k-tuple, stored as its dense rank vector: position
/// `i` holds the number of distinct coordinate values strictly below `x_i`.
///
/// Two tuples have equal rank vectors exactly when they agree on which
/// coordinate pairs are `<` and which are `=`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderType(Vec<u8>);

impl OrderType {
    pub fn of(coords: &[u32]) -> Self {
        let distinct: Vec<u32> = coords.iter().copied().sorted_unstable().dedup().collect();
        OrderType(
            coords
                .iter()
                .map(|c| distinct.partition_point(|d| d < c) as u8)
                .collect(),
        )
    }

    /// Accepts a rank vector if it is dense (uses every rank `0..=max`).
    pub fn from_ranks(ranks: Vec<u8>) -> Option<Self> {
        let Some(&top) = ranks.iter().max() else {
            return Some(OrderType(ranks));
        };
        let used: BTreeSet<u8> = ranks.iter().copied().collect();
        (used.len() == usize::from(top) + 1).then_some(OrderType(ranks))
    }

    pub fn ranks(&self) -> &[u8] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// Zero-based pairs `(i, j)` with `x_i < x_j`.
    pub fn strict_pairs(&self) -> BTreeSet<(usize, usize)> {
        let r = &self.0;
        (0..r.len())
            .cartesian_product(0..r.len())
            .filter(|&(i, j)| r[i] < r[j])
            .collect()
    }

    /// Zero-based pairs `(i, j)`, `i < j`, with `x_i = x_j`.
    pub fn equal_pairs(&self) -> BTreeSet<(usize, usize)> {
        let r = &self.0;
        (0..r.len())
            .tuple_combinations()
            .filter(|&(i, j)| r[i] == r[j])
            .collect()
    }

    /// A tuple realizing this type: the rank vector itself.
    pub fn representative(&self) -> Vertex {
        Vertex(self.0.iter().map(|&r| u32::from(r)).collect())
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl fmt::Debug for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn order_type_of(v: &Vertex) -> OrderType {
    v.order_type()
}

/// All order types of k-tuples (weak orderings of `k` positions), sorted by
/// rank vector.
pub fn enumerate_order_types(k: usize) -> Vec<OrderType> {
    if k == 0 {
        return vec![OrderType(Vec::new())];
    }
    (0..k)
        .map(|_| 0..k as u8)
        .multi_cartesian_product()
        .filter_map(OrderType::from_ranks)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v<const N: usize>(c: [u32; N]) -> Vertex {
        Vertex::from(c)
    }

    #[test]
    fn validate_accepts_downward_edge() {
        let u = validate_universe(2, [v([5, 9]), v([3, 8])], [(v([5, 9]), v([3, 8]))]).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u.edge_count(), 1);
    }

    #[test]
    fn validate_single_isolated_vertex() {
        let u = validate_universe(2, [v([0, 0])], []).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u.edge_count(), 0);
        assert!(u.is_sink(0));
    }

    #[test]
    fn validate_rejects_upward_edge() {
        let err =
            validate_universe(2, [v([2, 6]), v([3, 4])], [(v([3, 4]), v([2, 6]))]).unwrap_err();
        assert!(matches!(
            err,
            UniverseError::DownwardViolation {
                from_max: 4,
                to_max: 6,
                ..
            }
        ));
    }

    #[test]
    fn validate_rejects_equal_max_and_self_loop() {
        let err = validate_universe(2, [v([1, 3]), v([3, 0])], [(v([1, 3]), v([3, 0]))]);
        assert!(matches!(err, Err(UniverseError::DownwardViolation { .. })));
        let err = validate_universe(2, [v([1, 3])], [(v([1, 3]), v([1, 3]))]);
        assert!(matches!(err, Err(UniverseError::DownwardViolation { .. })));
    }

    #[test]
    fn validate_rejects_dangling_and_arity() {
        let err = validate_universe(2, [v([5, 9])], [(v([5, 9]), v([3, 8]))]);
        assert!(matches!(err, Err(UniverseError::DanglingEdge { .. })));
        let err = validate_universe(2, [v([5, 9, 1])], []);
        assert!(matches!(
            err,
            Err(UniverseError::DimensionMismatch {
                expected: 2,
                found: 3,
                ..
            })
        ));
        assert!(matches!(
            validate_universe(1, [Vertex::new(vec![1])], []),
            Err(UniverseError::InvalidDimension(1))
        ));
    }

    #[test]
    fn duplicates_collapse() {
        let u = validate_universe(
            2,
            [v([5, 9]), v([3, 8]), v([5, 9])],
            [(v([5, 9]), v([3, 8])), (v([5, 9]), v([3, 8]))],
        )
        .unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u.edge_count(), 1);
    }

    #[test]
    fn order_type_readout() {
        let t = order_type_of(&v([5, 9]));
        assert_eq!(t.strict_pairs(), BTreeSet::from([(0, 1)]));
        assert!(t.equal_pairs().is_empty());
        let t = order_type_of(&v([7, 7]));
        assert!(t.equal_pairs().contains(&(0, 1)));
        assert!(t.strict_pairs().is_empty());
        assert_eq!(order_type_of(&v([3, 8])), order_type_of(&v([2, 6])));
        assert_ne!(order_type_of(&v([3, 8])), order_type_of(&v([8, 3])));
    }

    /// Brute-force count of distinct (strict, equal) pair-set signatures over
    /// `{0..k-1}^k`, computed straight from the pairwise comparisons.
    fn brute_force_type_count(k: usize) -> usize {
        (0..k)
            .map(|_| 0..k as u32)
            .multi_cartesian_product()
            .map(|x| {
                let lt: Vec<(usize, usize)> = (0..k)
                    .cartesian_product(0..k)
                    .filter(|&(i, j)| x[i] < x[j])
                    .collect();
                let eq: Vec<(usize, usize)> = (0..k)
                    .cartesian_product(0..k)
                    .filter(|&(i, j)| x[i] == x[j])
                    .collect();
                (lt, eq)
            })
            .collect::<BTreeSet<_>>()
            .len()
    }

    #[test]
    fn order_type_counts() {
        assert_eq!(brute_force_type_count(2), 3);
        assert_eq!(brute_force_type_count(3), 13);
        assert_eq!(enumerate_order_types(1).len(), 1);
        assert_eq!(enumerate_order_types(2).len(), 3);
        assert_eq!(enumerate_order_types(3).len(), 13);
        assert_eq!(enumerate_order_types(4).len(), brute_force_type_count(4));
        for k in 2..=4usize {
            assert!(enumerate_order_types(k).len() < k.pow(k as u32));
        }
    }

    #[test]
    fn light_cone_examples() {
        let u = validate_universe(2, [v([5, 9]), v([3, 8]), v([2, 6])], []).unwrap();
        assert_eq!(u.light_cone(&v([5, 9])), vec![v([2, 6]), v([3, 8])]);
        assert!(u.light_cone(&v([0, 0])).is_empty());
        let u = validate_universe(2, [v([0, 0]), v([1, 1]), v([2, 2])], []).unwrap();
        assert_eq!(u.light_cone(&v([0, 2])), vec![v([0, 0]), v([1, 1])]);
    }

    #[test]
    fn cube_point_examples() {
        let c = Cube::new([0, 1], 2).unwrap();
        assert_eq!(c.points(), vec![v([0, 0]), v([0, 1]), v([1, 0]), v([1, 1])]);
        assert_eq!(Cube::new([3], 2).unwrap().points(), vec![v([3, 3])]);
        assert_eq!(Cube::new([0, 1, 2], 2).unwrap().points().len(), 9);
        assert_eq!(Cube::new([2, 0, 1], 2).unwrap().axis_min(), 0);
        assert_eq!(Cube::new([], 2), Err(CubeError::EmptyAxis));
    }

    #[test]
    fn maximal_theta_matches_explicit_enumeration() {
        let box2: Vec<Vertex> = (0..3u32)
            .cartesian_product(0..3u32)
            .map(|(a, b)| v([a, b]))
            .collect();
        let maximal = Universe::maximal(2, box2.clone()).unwrap();
        let pairs: Vec<(Vertex, Vertex)> = box2
            .iter()
            .cartesian_product(box2.iter())
            .filter(|(x, y)| x.max_coord() > y.max_coord())
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect();
        assert_eq!(pairs.len(), 23);
        let explicit = Universe::new(2, box2.clone(), pairs).unwrap();
        assert_eq!(maximal, explicit);
        assert_eq!(maximal.edge_count(), 23);
        let induced = Universe::induced(2, box2, &MaximalTheta).unwrap();
        assert_eq!(induced, explicit);
        let x = maximal.index_of(&v([2, 2])).unwrap();
        assert!(maximal.has_edge_between(x, maximal.index_of(&v([1, 1])).unwrap()));
        assert!(!maximal.has_edge_between(x, maximal.index_of(&v([0, 2])).unwrap()));
    }

    #[test]
    fn hashed_theta_is_stable_and_downward() {
        let theta = HashedTheta::new(7, 0.5);
        let a = v([3, 1]);
        let b = v([0, 2]);
        assert_eq!(theta.has_edge(&a, &b), theta.has_edge(&a, &b));
        assert!(!theta.has_edge(&b, &a));
        assert!(!HashedTheta::new(7, 0.0).has_edge(&a, &b));
        assert!(HashedTheta::new(7, 1.0).has_edge(&a, &b));
    }
}
