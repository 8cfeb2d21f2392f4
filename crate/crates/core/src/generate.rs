//! Box-shaped universe generators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::UniverseError;
use crate::fixtures::lattice_box;
use crate::lattice::{Universe, Vertex};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Style {
    Edgeless,
    /// Each max-decreasing pair of the box is an edge with this probability.
    RandomDownward {
        density: f64,
    },
    /// Every max-decreasing pair is an edge.
    MaximalTheta,
    /// The diagonal chain `(i+1, ..., i+1) -> (i, ..., i)`; other box points
    /// stay isolated.
    Chain,
}

impl Style {
    pub fn name(&self) -> &'static str {
        match self {
            Style::Edgeless => "edgeless",
            Style::RandomDownward { .. } => "random-downward",
            Style::MaximalTheta => "maximal-theta",
            Style::Chain => "chain",
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Style::RandomDownward { density } => write!(f, "random-downward({density})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Style {
    type Err = String;

    /// `random-downward` parses with density 0.5; use
    /// [`Style::RandomDownward`] directly for other densities.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgeless" => Ok(Style::Edgeless),
            "random-downward" | "random" => Ok(Style::RandomDownward { density: 0.5 }),
            "maximal-theta" | "maximal" => Ok(Style::MaximalTheta),
            "chain" => Ok(Style::Chain),
            other => Err(format!(
                "unknown style `{other}` (expected edgeless|random-downward|maximal-theta|chain)"
            )),
        }
    }
}

/// A universe on the box `{0..=bound}^k`. Only `RandomDownward` consumes
/// the seed.
pub fn generate(k: usize, style: Style, bound: u32, seed: u64) -> Result<Universe, UniverseError> {
    let points = lattice_box(k, bound);
    match style {
        Style::Edgeless => Universe::new(k, points, []),
        Style::MaximalTheta => Universe::maximal(k, points),
        Style::Chain => {
            let edges = (1..=bound).map(|i| (Vertex::new(vec![i; k]), Vertex::new(vec![i - 1; k])));
            Universe::new(k, points, edges)
        }
        Style::RandomDownward { density } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges = random_edges(&mut rng, &points, density);
            Universe::new(k, points, edges)
        }
    }
}

/// Samples every max-decreasing pair of `points` independently, in
/// lexicographic pair order.
fn random_edges(rng: &mut impl Rng, points: &[Vertex], density: f64) -> Vec<(Vertex, Vertex)> {
    let density = density.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for s in points {
        for t in points {
            if s.max_coord() > t.max_coord() && rng.random_bool(density) {
                edges.push((s.clone(), t.clone()));
            }
        }
    }
    edges
}

/// A random downward universe of `size` distinct points from `{0..=bound}^k`
/// (fewer if the box is smaller).
pub fn random_universe(
    rng: &mut impl Rng,
    k: usize,
    size: usize,
    bound: u32,
    density: f64,
) -> Universe {
    let side = bound as usize + 1;
    let box_size = side.pow(k as u32);
    let mut points: Vec<Vertex> = rand::seq::index::sample(rng, box_size, size.min(box_size))
        .into_iter()
        .map(|mut code| {
            let mut coords = vec![0u32; k];
            for c in coords.iter_mut().rev() {
                *c = (code % side) as u32;
                code /= side;
            }
            Vertex::new(coords)
        })
        .collect();
    points.sort_unstable();
    let edges = random_edges(rng, &points, density);
    Universe::new(k, points, edges).expect("sampled edges are downward")
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn edgeless_box() {
        let u = generate(2, Style::Edgeless, 3, 0).unwrap();
        assert_eq!(u.len(), 16);
        assert_eq!(u.edge_count(), 0);
    }

    #[test]
    fn maximal_box_edge_count_matches_double_loop() {
        let u = generate(2, Style::MaximalTheta, 2, 0).unwrap();
        assert_eq!(u.len(), 9);
        let pairs = u
            .vertices()
            .iter()
            .cartesian_product(u.vertices())
            .filter(|(x, y)| x.max_coord() > y.max_coord())
            .count();
        assert_eq!(pairs, 23);
        assert_eq!(u.edge_count(), pairs);
    }

    #[test]
    fn chain_and_random() {
        let u = generate(2, Style::Chain, 4, 0).unwrap();
        assert_eq!(u.edge_count(), 4);
        let a = generate(2, Style::RandomDownward { density: 0.3 }, 3, 9).unwrap();
        let b = generate(2, Style::RandomDownward { density: 0.3 }, 3, 9).unwrap();
        assert_eq!(a, b);
        let c = generate(2, Style::RandomDownward { density: 0.3 }, 3, 10).unwrap();
        assert_ne!(a, c);
        assert_eq!(
            generate(2, Style::RandomDownward { density: 1.0 }, 2, 1).unwrap(),
            generate(2, Style::MaximalTheta, 2, 1).unwrap()
        );
    }

    #[test]
    fn style_names_parse() {
        for s in ["edgeless", "random-downward", "maximal-theta", "chain"] {
            assert_eq!(s.parse::<Style>().unwrap().name(), s);
        }
        assert!("spiral".parse::<Style>().is_err());
    }
}
