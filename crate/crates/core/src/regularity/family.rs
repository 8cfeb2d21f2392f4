//! Sampled checks of the full / reflexive / jump-free conditions for a family
//! of labelings `D -> f_D`.
//!
//! Jump-free scenarios `(A, B, x)` are built so that the containment
//! precondition holds by construction: grow `B`, pick `x ∈ B`, take `A_x` as
//! a subset of `B_x` (sometimes all of it), then add `x` and a few fresh
//! vertices with `max >= max(x)`, which stay outside the light cone. Both
//! domains induce their edges from one shared pseudo-random `Θ`. Label
//! agreement on `A_x` cannot be arranged structurally and is checked;
//! scenarios that fail it are discarded.

use rand::seq::{index, IndexedRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::labeling::{reflexive_violations, Variant};
use crate::lattice::{HashedTheta, Universe, Vertex};
use crate::selection::{label_all_selection, SelectionRuleSet};
use crate::terminal::label_all_terminal;

/// A family of labelings, one per finite domain of a fixed graph.
pub trait LabelFamily: Sync {
    fn name(&self) -> String;

    /// Labels indexed like `domain.vertices()`.
    fn label(&self, domain: &Universe) -> Vec<u32>;

    /// How the family is known to be defined on every finite domain.
    fn totality(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TerminalFamily(pub Variant);

impl LabelFamily for TerminalFamily {
    fn name(&self) -> String {
        format!("terminal/{}", self.0)
    }

    fn label(&self, domain: &Universe) -> Vec<u32> {
        label_all_terminal(domain, self.0).into_labels()
    }

    fn totality(&self) -> String {
        "total by construction: the terminal labeling is defined on every validated finite universe"
            .into()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionFamily {
    pub rules: SelectionRuleSet,
    pub variant: Variant,
}

impl LabelFamily for SelectionFamily {
    fn name(&self) -> String {
        format!("selection/{}", self.variant)
    }

    fn label(&self, domain: &Universe) -> Vec<u32> {
        let effective = self.rules.effective_universe(domain);
        label_all_selection(&effective, &self.rules, self.variant)
            .expect("rule set is checked against the dimension before sampling")
            .into_labels()
    }

    fn totality(&self) -> String {
        "total by construction: the selection labeling is defined on every validated finite universe \
         (Φ-empty vertices fall back to a coordinate)"
            .into()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub k: usize,
    /// Coordinates are drawn from `0..=box_bound`.
    pub box_bound: u32,
    /// Upper bound on `|B|`.
    pub max_vertices: usize,
    /// Edge density range for the shared `Θ`, drawn per scenario.
    pub density: (f64, f64),
    /// Attempts allowed per requested trial before giving up.
    pub attempts_per_trial: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            k: 2,
            box_bound: 5,
            max_vertices: 12,
            density: (0.2, 0.8),
            attempts_per_trial: 25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub theta_seed: u64,
    pub theta_density: f64,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub x: Vertex,
}

impl Scenario {
    pub fn theta(&self) -> HashedTheta {
        HashedTheta::new(self.theta_seed, self.theta_density)
    }

    pub fn domains(&self, k: usize) -> (Universe, Universe) {
        let theta = self.theta();
        (
            Universe::induced(k, self.a.iter().cloned(), &theta).expect("generated vertices"),
            Universe::induced(k, self.b.iter().cloned(), &theta).expect("generated vertices"),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub attempt: usize,
    pub scenario: Scenario,
    pub label_a: u32,
    pub label_b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflexiveViolation {
    pub attempt: usize,
    pub domain: Vec<Vertex>,
    pub vertex: Vertex,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub k: usize,
    pub seed: u64,
    pub trials_requested: usize,
    pub scenarios_checked: usize,
    pub attempts: usize,
    /// Scenarios dropped because the labels disagreed on `A_x`.
    pub discarded: usize,
    /// Checked scenarios with `A_x = B_x` (the non-strict case).
    pub equal_cone: usize,
    /// Fewer than `trials_requested` scenarios could be generated.
    pub exhausted: bool,
    pub full: String,
    pub reflexive_violations: Vec<ReflexiveViolation>,
    pub counterexamples: Vec<Counterexample>,
}

impl FamilyReport {
    pub fn reflexive(&self) -> bool {
        self.reflexive_violations.is_empty()
    }

    pub fn jump_free(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn decode_point(mut code: usize, k: usize, side: usize) -> Vertex {
    let mut coords = vec![0u32; k];
    for c in coords.iter_mut().rev() {
        *c = (code % side) as u32;
        code /= side;
    }
    Vertex::new(coords)
}

/// One `(A, B, x)` draw satisfying `x ∈ A ∩ B` and `A_x ⊆ B_x`.
pub fn generate_scenario(rng: &mut impl Rng, config: &ScenarioConfig) -> Scenario {
    let k = config.k;
    let side = config.box_bound as usize + 1;
    let box_size = side.pow(k as u32);
    let n = rng.random_range(2..=config.max_vertices.clamp(2, box_size));
    let b: Vec<Vertex> = index::sample(rng, box_size, n)
        .into_iter()
        .map(|code| decode_point(code, k, side))
        .collect();
    let with_cone: Vec<&Vertex> = b
        .iter()
        .filter(|x| b.iter().any(|z| z.max_coord() < x.max_coord()))
        .collect();
    let x = (*with_cone.choose(rng).unwrap_or(&&b[0])).clone();
    let cone: Vec<&Vertex> = b.iter().filter(|z| z.max_coord() < x.max_coord()).collect();
    let keep = if rng.random_bool(1.0 / 3.0) {
        1.0
    } else {
        rng.random_range(0.3..1.0)
    };
    let full = cone.len();
    let mut a: Vec<Vertex> = cone
        .iter()
        .filter(|_| rng.random_bool(keep))
        .map(|&z| z.clone())
        .collect();
    if keep < 1.0 && full > 0 && a.len() == full {
        a.remove(rng.random_range(0..full));
    }
    a.push(x.clone());
    for _ in 0..rng.random_range(0..=3) {
        let mut coords: Vec<u32> = (0..k)
            .map(|_| rng.random_range(0..=config.box_bound))
            .collect();
        let pos = rng.random_range(0..k);
        coords[pos] = rng.random_range(x.max_coord()..=config.box_bound);
        a.push(Vertex::new(coords));
    }
    a.sort_unstable();
    a.dedup();
    let density = rng.random_range(config.density.0..=config.density.1);
    Scenario {
        theta_seed: rng.random(),
        theta_density: density,
        a,
        b,
        x,
    }
}

enum Outcome {
    Discarded,
    Checked {
        equal_cone: bool,
        counterexample: Option<Counterexample>,
        reflexive: Vec<ReflexiveViolation>,
    },
}

fn reflexive_report(attempt: usize, domain: &Universe, labels: &[u32]) -> Vec<ReflexiveViolation> {
    reflexive_violations(domain, labels)
        .into_iter()
        .map(|i| ReflexiveViolation {
            attempt,
            domain: domain.vertices().to_vec(),
            vertex: domain.vertex(i).clone(),
            label: labels[i],
        })
        .collect()
}

fn run_attempt(
    family: &dyn LabelFamily,
    config: &ScenarioConfig,
    seed: u64,
    attempt: usize,
) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    let scenario = generate_scenario(&mut rng, config);
    let (a, b) = scenario.domains(config.k);
    let fa = family.label(&a);
    let fb = family.label(&b);
    let cone_a = a.light_cone_indices(&scenario.x);
    let agree = cone_a.iter().all(|&i| {
        let y = a.vertex(i);
        let j = b.index_of(y).expect("A_x is drawn from B_x");
        fa[i] == fb[j]
    });
    if !agree {
        return Outcome::Discarded;
    }
    let equal_cone = cone_a.len() == b.light_cone_indices(&scenario.x).len();
    let xa = fa[a.index_of(&scenario.x).expect("x ∈ A")];
    let xb = fb[b.index_of(&scenario.x).expect("x ∈ B")];
    let mut reflexive = reflexive_report(attempt, &a, &fa);
    reflexive.extend(reflexive_report(attempt, &b, &fb));
    Outcome::Checked {
        equal_cone,
        counterexample: (xa < xb).then_some(Counterexample {
            attempt,
            scenario,
            label_a: xa,
            label_b: xb,
        }),
        reflexive,
    }
}

/// Samples `trials` jump-free scenarios (within an attempt budget of
/// `trials * config.attempts_per_trial`) and reports every violation found.
///
/// Attempts draw from independent streams of one seeded generator and run in
/// parallel batches; scenarios are accepted in attempt order, so the report
/// depends only on the inputs.
pub fn check_family_conditions(
    family: &dyn LabelFamily,
    config: &ScenarioConfig,
    trials: usize,
    seed: u64,
) -> FamilyReport {
    const BATCH: usize = 64;
    let budget = trials.saturating_mul(config.attempts_per_trial.max(1));
    let mut report = FamilyReport {
        family: family.name(),
        k: config.k,
        seed,
        trials_requested: trials,
        scenarios_checked: 0,
        attempts: 0,
        discarded: 0,
        equal_cone: 0,
        exhausted: false,
        full: family.totality(),
        reflexive_violations: Vec::new(),
        counterexamples: Vec::new(),
    };
    let mut next = 0;
    while report.scenarios_checked < trials && next < budget {
        let end = (next + BATCH).min(budget);
        let outcomes: Vec<Outcome> = (next..end)
            .into_par_iter()
            .map(|attempt| run_attempt(family, config, seed, attempt))
            .collect();
        next = end;
        for outcome in outcomes {
            if report.scenarios_checked == trials {
                break;
            }
            report.attempts += 1;
            match outcome {
                Outcome::Discarded => report.discarded += 1,
                Outcome::Checked {
                    equal_cone,
                    counterexample,
                    reflexive,
                } => {
                    report.scenarios_checked += 1;
                    report.equal_cone += usize::from(equal_cone);
                    report.counterexamples.extend(counterexample);
                    report.reflexive_violations.extend(reflexive);
                }
            }
        }
    }
    report.exhausted = report.scenarios_checked < trials;
    report
}
