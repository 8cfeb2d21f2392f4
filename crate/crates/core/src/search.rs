//! Brute-force search for cubes `E^k` over which a labeling is regressively
//! regular.
//!
//! Candidate axes are the `p`-subsets of `{0..=max_axis}` in lexicographic
//! order. Candidates are evaluated in parallel chunks, and the earliest
//! success in that order is returned, so the answer does not depend on
//! scheduling.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LabelError, SearchError};
use crate::generate::{generate, Style};
use crate::labeling::{IndexedLabels, Variant};
use crate::lattice::{Cube, OrderType, Universe, Vertex, DEFAULT_MAX_EXHAUSTIVE_K};
use crate::regularity::{check_regressive_regularity, RegularityVerdict, TypeClass};
use crate::selection::{label_all_selection, SelectionRuleSet};
use crate::terminal::label_all_terminal;

const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchBudget {
    pub max_axis: u32,
    pub max_domain_size: usize,
    pub p: usize,
    pub time_limit: Option<Duration>,
    pub max_dimension: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_axis: 5,
            max_domain_size: 1 << 16,
            p: 2,
            time_limit: None,
            max_dimension: DEFAULT_MAX_EXHAUSTIVE_K,
        }
    }
}

/// Where the domain `D` comes from.
#[derive(Debug, Clone)]
pub enum UniverseSource {
    /// A fixed universe; every cube point must lie in it.
    Explicit(Universe),
    /// The box `{0..=max_axis}^k` built by a generator.
    Generated { k: usize, style: Style, seed: u64 },
}

/// Which labeling is searched.
#[derive(Debug, Clone)]
pub enum Labeler {
    Terminal,
    Selection(SelectionRuleSet),
}

impl Labeler {
    pub fn name(&self) -> &'static str {
        match self {
            Labeler::Terminal => "terminal",
            Labeler::Selection(_) => "selection",
        }
    }

    /// The graph the labeling is computed on: selection rules bound to the
    /// maximal edge set replace the universe's own edges.
    pub fn domain(&self, universe: Universe) -> Universe {
        match self {
            Labeler::Terminal => universe,
            Labeler::Selection(rules) => rules.effective_universe(&universe).into_owned(),
        }
    }

    /// Plain labels indexed like `universe.vertices()`.
    pub fn label(&self, universe: &Universe) -> Result<Vec<u32>, LabelError> {
        match self {
            Labeler::Terminal => Ok(label_all_terminal(universe, Variant::Plain).into_labels()),
            Labeler::Selection(rules) => {
                let domain = rules.effective_universe(universe);
                Ok(label_all_selection(&domain, rules, Variant::Plain)?.into_labels())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeWitness {
    #[serde(skip)]
    pub universe: Universe,
    #[serde(skip)]
    pub labels: Vec<u32>,
    pub labeling: &'static str,
    pub cube: Cube,
    pub verdict: RegularityVerdict,
    pub significant_count: usize,
    pub candidates_examined: usize,
}

impl CubeWitness {
    /// Relabels the witness universe and recomputes the verdict.
    pub fn replay(&self, labeler: &Labeler) -> Result<RegularityVerdict, SearchError> {
        let labels = labeler.label(&self.universe)?;
        let indexed = IndexedLabels {
            universe: &self.universe,
            labels: &labels,
        };
        Ok(check_regressive_regularity(&indexed, &self.cube).expect("witness cube lies in D"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum FailureReason {
    /// A cube point missing from a fixed universe.
    NotInDomain { point: Vertex },
    /// The first order type classified NEITHER, with its witness pair.
    Irregular {
        order_type: OrderType,
        first: Vertex,
        second: Vertex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateFailure {
    pub axis: Vec<u32>,
    #[serde(flatten)]
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustionReport {
    pub labeling: &'static str,
    pub k: usize,
    pub p: usize,
    pub max_axis: u32,
    pub candidates_examined: usize,
    pub failures: Vec<CandidateFailure>,
    pub note: &'static str,
}

const EXHAUSTION_NOTE: &str =
    "no witness within budget; exhaustion at a finite bound is not a refutation";

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Witness(Box<CubeWitness>),
    Exhausted(ExhaustionReport),
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&CubeWitness> {
        match self {
            SearchOutcome::Witness(w) => Some(w),
            SearchOutcome::Exhausted(_) => None,
        }
    }
}

enum Evaluation {
    Regular(RegularityVerdict),
    Failed(FailureReason),
}

fn evaluate(universe: &Universe, labels: &[u32], cube: &Cube) -> Evaluation {
    let points = cube.points();
    if let Some(missing) = points.iter().find(|z| !universe.contains(z)) {
        return Evaluation::Failed(FailureReason::NotInDomain {
            point: missing.clone(),
        });
    }
    let indexed = IndexedLabels { universe, labels };
    let verdict = check_regressive_regularity(&indexed, cube).expect("points checked above");
    match verdict.first_failure() {
        None => Evaluation::Regular(verdict),
        Some((ty, class)) => {
            let TypeClass::Neither { first, second } = class else {
                unreachable!("first_failure returns NEITHER")
            };
            Evaluation::Failed(FailureReason::Irregular {
                order_type: ty.clone(),
                first: first.clone(),
                second: second.clone(),
            })
        }
    }
}

fn build_domain(source: &UniverseSource, budget: &SearchBudget) -> Result<Universe, SearchError> {
    match source {
        UniverseSource::Explicit(u) => {
            if u.len() > budget.max_domain_size {
                return Err(SearchError::DomainTooLarge {
                    size: u.len(),
                    cap: budget.max_domain_size,
                });
            }
            Ok(u.clone())
        }
        UniverseSource::Generated { k, style, seed } => {
            let size = (budget.max_axis as usize + 1)
                .checked_pow(*k as u32)
                .unwrap_or(usize::MAX);
            if size > budget.max_domain_size {
                return Err(SearchError::DomainTooLarge {
                    size,
                    cap: budget.max_domain_size,
                });
            }
            Ok(generate(*k, *style, budget.max_axis, *seed)?)
        }
    }
}

pub fn search_cube_witness(
    source: &UniverseSource,
    labeler: &Labeler,
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    let start = Instant::now();
    if budget.p == 0 {
        return Err(SearchError::InvalidBudget("p must be at least 1".into()));
    }
    let k = match source {
        UniverseSource::Explicit(u) => u.dimension(),
        UniverseSource::Generated { k, .. } => *k,
    };
    if k > budget.max_dimension {
        return Err(SearchError::UnsupportedDimension {
            k,
            cap: budget.max_dimension,
        });
    }
    let universe = labeler.domain(build_domain(source, budget)?);
    let labels = labeler.label(&universe)?;

    let over_time = |limit: Option<Duration>| match limit {
        Some(limit) if start.elapsed() > limit => Err(SearchError::BudgetExceeded(limit)),
        _ => Ok(()),
    };

    let mut failures = Vec::new();
    let mut examined = 0;
    let candidates = (0..=budget.max_axis).combinations(budget.p);
    for chunk in &candidates.chunks(CHUNK) {
        over_time(budget.time_limit)?;
        let chunk: Vec<Vec<u32>> = chunk.collect();
        let results: Vec<Evaluation> = chunk
            .par_iter()
            .map(|axis| {
                let cube = Cube::new(axis.iter().copied(), k).expect("nonempty axis");
                evaluate(&universe, &labels, &cube)
            })
            .collect();
        for (axis, result) in chunk.into_iter().zip(results) {
            examined += 1;
            match result {
                Evaluation::Regular(verdict) => {
                    let cube = verdict.cube.clone();
                    let significant_count = verdict.significant.len();
                    return Ok(SearchOutcome::Witness(Box::new(CubeWitness {
                        universe,
                        labels,
                        labeling: labeler.name(),
                        cube,
                        verdict,
                        significant_count,
                        candidates_examined: examined,
                    })));
                }
                Evaluation::Failed(reason) => failures.push(CandidateFailure { axis, reason }),
            }
        }
    }
    over_time(budget.time_limit)?;
    Ok(SearchOutcome::Exhausted(ExhaustionReport {
        labeling: labeler.name(),
        k,
        p: budget.p,
        max_axis: budget.max_axis,
        candidates_examined: examined,
        failures,
        note: EXHAUSTION_NOTE,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sample_fragment;
    use crate::selection::ThetaSource;

    fn budget(max_axis: u32, p: usize) -> SearchBudget {
        SearchBudget {
            max_axis,
            p,
            ..SearchBudget::default()
        }
    }

    #[test]
    fn edgeless_box_finds_first_axis() {
        let source = UniverseSource::Generated {
            k: 2,
            style: Style::Edgeless,
            seed: 0,
        };
        let out = search_cube_witness(&source, &Labeler::Terminal, &budget(5, 3)).unwrap();
        let w = out.witness().unwrap();
        assert_eq!(w.cube.axis(), &[0, 1, 2]);
        assert_eq!(w.significant_count, 0);
        assert_eq!(w.candidates_examined, 1);
        assert!(w.verdict.per_type.values().all(|c| *c == TypeClass::High));
    }

    #[test]
    fn maximal_box_with_never_rules_is_all_high() {
        let source = UniverseSource::Generated {
            k: 2,
            style: Style::MaximalTheta,
            seed: 0,
        };
        let rules = SelectionRuleSet::preset("never", 3)
            .unwrap()
            .with_theta(ThetaSource::Maximal);
        let labeler = Labeler::Selection(rules);
        let out = search_cube_witness(&source, &labeler, &budget(5, 2)).unwrap();
        let w = out.witness().unwrap();
        assert!(w.verdict.per_type.values().all(|c| *c == TypeClass::High));
        assert_eq!(w.replay(&labeler).unwrap(), w.verdict);
    }

    #[test]
    fn fixed_universe_requires_cube_inside_domain() {
        let u = Universe::new(2, [Vertex::from([0, 0]), Vertex::from([1, 1])], []).unwrap();
        let out = search_cube_witness(
            &UniverseSource::Explicit(u),
            &Labeler::Terminal,
            &budget(1, 2),
        )
        .unwrap();
        let SearchOutcome::Exhausted(report) = out else {
            panic!("{{0,1}}^2 is not inside the domain")
        };
        assert_eq!(report.candidates_examined, 1);
        assert_eq!(
            report.failures[0].reason,
            FailureReason::NotInDomain {
                point: Vertex::from([0, 1])
            }
        );
    }

    #[test]
    fn fragment_search_is_deterministic_and_minimal() {
        let source = UniverseSource::Explicit(sample_fragment());
        let b = budget(14, 2);
        let first = search_cube_witness(&source, &Labeler::Terminal, &b).unwrap();
        let again = search_cube_witness(&source, &Labeler::Terminal, &b).unwrap();
        assert_eq!(first, again);
        if let Some(w) = first.witness() {
            assert_eq!(w.replay(&Labeler::Terminal).unwrap(), w.verdict);
            for axis in (0..=14u32).combinations(2).take(w.candidates_examined - 1) {
                let cube = Cube::new(axis, 2).unwrap();
                assert!(matches!(
                    evaluate(&w.universe, &w.labels, &cube),
                    Evaluation::Failed(_)
                ));
            }
        }
    }

    #[test]
    fn budget_errors() {
        let source = UniverseSource::Generated {
            k: 5,
            style: Style::Edgeless,
            seed: 0,
        };
        assert!(matches!(
            search_cube_witness(&source, &Labeler::Terminal, &budget(2, 2)),
            Err(SearchError::UnsupportedDimension { k: 5, cap: 4 })
        ));
        let source = UniverseSource::Generated {
            k: 2,
            style: Style::Edgeless,
            seed: 0,
        };
        let tight = SearchBudget {
            max_domain_size: 10,
            ..budget(5, 2)
        };
        assert!(matches!(
            search_cube_witness(&source, &Labeler::Terminal, &tight),
            Err(SearchError::DomainTooLarge { size: 36, cap: 10 })
        ));
        assert!(matches!(
            search_cube_witness(&source, &Labeler::Terminal, &budget(5, 0)),
            Err(SearchError::InvalidBudget(_))
        ));
        let zero_time = SearchBudget {
            time_limit: Some(Duration::ZERO),
            ..budget(5, 2)
        };
        std::thread::sleep(Duration::from_millis(1));
        assert!(matches!(
            search_cube_witness(&source, &Labeler::Terminal, &zero_time),
            Err(SearchError::BudgetExceeded(_))
        ));
    }
}
