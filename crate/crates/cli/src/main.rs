//! `lmv`: generate lattice universes, label them, check regressive
//! regularity and the family conditions, search for regular cubes, render.
//!
//! Exit codes: 0 success or witness found, 1 exhaustion or negative finding,
//! 2 validation error, 3 internal error.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lmv_core::error::SearchError;
use lmv_core::format::{parse_labeling, parse_universe, write_labeling, write_universe};
use lmv_core::generate::{generate, Style};
use lmv_core::labeling::{LabeledUniverse, Variant};
use lmv_core::regularity::{
    check_family_conditions, check_regressive_regularity, significant_labels, LabelFamily,
    ScenarioConfig, SelectionFamily, TerminalFamily,
};
use lmv_core::render::{render_dot, render_svg};
use lmv_core::search::{search_cube_witness, Labeler, SearchBudget, SearchOutcome, UniverseSource};
use lmv_core::selection::{label_all_selection, SelectionRuleSet, DEFAULT_ARITY_CAP};
use lmv_core::terminal::label_all_terminal;
use lmv_core::{Cube, Universe};

const DEFAULT_SEED: u64 = 1729;

#[derive(Parser)]
#[command(name = "lmv", version, about = "Lattice multiverse experiments")]
struct Cli {
    /// Seed for every randomized operation.
    #[arg(long, global = true, env = "LMV_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Edgeless,
    RandomDownward,
    MaximalTheta,
    Chain,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plain,
    Relaxed,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Relaxed => Variant::Relaxed,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelingArg {
    Terminal,
    Selection,
}

#[derive(Subcommand)]
enum Command {
    /// Write a universe on the box {0..=box}^k.
    Gen {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum)]
        style: StyleArg,
        #[arg(long = "box", default_value_t = 3)]
        bound: u32,
        /// Edge probability for random-downward.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Terminal labeling of a universe file.
    Label {
        universe: PathBuf,
        #[arg(long, value_enum, default_value = "plain")]
        variant: VariantArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Selection labeling of a universe file.
    LabelSel {
        universe: PathBuf,
        /// Rule-set file or preset name.
        #[arg(long)]
        rules: String,
        #[arg(long, default_value_t = DEFAULT_ARITY_CAP)]
        arity_cap: usize,
        #[arg(long, value_enum, default_value = "plain")]
        variant: VariantArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Significant labels of a labeling file over all vertices or a cube.
    Sig {
        labeling: PathBuf,
        /// `all`, or `cube <E>` with E like `0,1,2` or `0-2`.
        #[arg(long, num_args = 1..=2, default_values = ["all"])]
        scope: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Classify every order type of a labeling over E^k.
    CheckRr {
        labeling: PathBuf,
        #[arg(long)]
        cube: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample jump-free scenarios and check the family conditions.
    VerifyFamily {
        #[arg(long, value_enum)]
        family: LabelingArg,
        #[arg(long, value_enum, default_value = "relaxed")]
        variant: VariantArg,
        #[arg(long)]
        rules: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ARITY_CAP)]
        arity_cap: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long = "box", default_value_t = 5)]
        bound: u32,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Search for E with |E| = p over which the plain labeling is
    /// regressively regular.
    SearchCube {
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum)]
        variant: LabelingArg,
        #[arg(long)]
        rules: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ARITY_CAP)]
        arity_cap: usize,
        #[arg(long)]
        max_axis: u32,
        /// Fixed universe; otherwise the box {0..=max-axis}^k is generated.
        #[arg(long)]
        universe: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edgeless")]
        style: StyleArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1 << 16)]
        max_domain: usize,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Witness file; the verdict summary goes to stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// DOT (and optionally SVG) drawing of a universe or labeling file.
    Render {
        input: PathBuf,
        /// Labeling file for the same universe.
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

enum Failure {
    Validation(String),
    Internal(String),
}

type CmdResult = Result<ExitCode, Failure>;

fn invalid(e: impl ToString) -> Failure {
    Failure::Validation(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn load_universe(path: &Path) -> Result<Universe, Failure> {
    parse_universe(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_labeling(path: &Path) -> Result<LabeledUniverse, Failure> {
    parse_labeling(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_rules(spec: &str, arity_cap: usize) -> Result<SelectionRuleSet, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        read(path)?
            .parse()
            .map_err(|e| invalid(format!("{spec}: {e}")))
    } else {
        SelectionRuleSet::preset(spec, arity_cap).map_err(invalid)
    }
}

fn style(arg: StyleArg, density: f64) -> Result<Style, Failure> {
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!("density {density} is outside [0,1]")));
    }
    Ok(match arg {
        StyleArg::Edgeless => Style::Edgeless,
        StyleArg::RandomDownward => Style::RandomDownward { density },
        StyleArg::MaximalTheta => Style::MaximalTheta,
        StyleArg::Chain => Style::Chain,
    })
}

/// `0,1,2`, `0-2`, or a mix such as `0-2,5`.
fn parse_axis(spec: &str) -> Result<Vec<u32>, Failure> {
    let bad = || invalid(format!("bad cube axis `{spec}`"));
    let mut axis = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
                let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                axis.extend(lo..=hi);
            }
            None => axis.push(part.parse().map_err(|_| bad())?),
        }
    }
    if axis.is_empty() {
        return Err(bad());
    }
    Ok(axis)
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(invalid("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn run(cli: Cli) -> CmdResult {
    let seed = cli.seed;
    match cli.command {
        Command::Gen {
            k,
            style: s,
            bound,
            density,
            out,
        } => {
            let universe = generate(k, style(s, density)?, bound, seed).map_err(invalid)?;
            write_out(&out, &write_universe(&universe))?;
        }
        Command::Label {
            universe,
            variant,
            out,
        } => {
            let u = load_universe(&universe)?;
            let t = label_all_terminal(&u, variant.into());
            write_out(&out, &write_labeling(&u, t.labels()))?;
        }
        Command::LabelSel {
            universe,
            rules,
            arity_cap,
            variant,
            out,
        } => {
            let u = load_universe(&universe)?;
            let rules = load_rules(&rules, arity_cap)?;
            let domain = rules.effective_universe(&u);
            let s = label_all_selection(&domain, &rules, variant.into()).map_err(invalid)?;
            write_out(&out, &write_labeling(&domain, s.labels()))?;
        }
        Command::Sig {
            labeling,
            scope,
            json,
        } => {
            let lu = load_labeling(&labeling)?;
            let indexed = lu.as_indexed();
            let (name, report) = match scope.as_slice() {
                [all] if all == "all" => (
                    "all".to_string(),
                    significant_labels(&indexed, lu.universe.vertices()),
                ),
                [cube, axis] if cube == "cube" => {
                    let cube =
                        Cube::new(parse_axis(axis)?, lu.universe.dimension()).map_err(invalid)?;
                    let points = cube.points();
                    (
                        format!("cube {cube}"),
                        significant_labels(&indexed, &points),
                    )
                }
                _ => return Err(invalid("--scope expects `all` or `cube <E>`")),
            };
            let report = report.map_err(invalid)?;
            print!("{}", report::significant_text(&name, &report));
            if json {
                print_json(&report)?;
            }
        }
        Command::CheckRr {
            labeling,
            cube,
            json,
        } => {
            let lu = load_labeling(&labeling)?;
            let cube = Cube::new(parse_axis(&cube)?, lu.universe.dimension()).map_err(invalid)?;
            let verdict = check_regressive_regularity(&lu.as_indexed(), &cube).map_err(invalid)?;
            for line in report::verdict_lines(&verdict) {
                println!("{line}");
            }
            if json {
                print_json(&verdict)?;
            }
            if !verdict.regressively_regular {
                return Ok(ExitCode::from(1));
            }
        }
        Command::VerifyFamily {
            family,
            variant,
            rules,
            arity_cap,
            trials,
            k,
            bound,
            max_vertices,
            jobs,
            json,
        } => {
            if k < 2 {
                return Err(invalid("k must be at least 2"));
            }
            let config = ScenarioConfig {
                k,
                box_bound: bound,
                max_vertices,
                ..ScenarioConfig::default()
            };
            let family: Box<dyn LabelFamily> = match family {
                LabelingArg::Terminal => Box::new(TerminalFamily(variant.into())),
                LabelingArg::Selection => {
                    let spec = rules.ok_or_else(|| invalid("selection families need --rules"))?;
                    let rules = load_rules(&spec, arity_cap)?;
                    rules.check_dimension(k).map_err(invalid)?;
                    Box::new(SelectionFamily {
                        rules,
                        variant: variant.into(),
                    })
                }
            };
            let report = with_jobs(jobs, || {
                check_family_conditions(family.as_ref(), &config, trials, seed)
            })?;
            print!("{}", report::family_text(&report));
            if json {
                print_json(&report)?;
            }
            if report.exhausted || !report.reflexive() || !report.jump_free() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::SearchCube {
            p,
            variant,
            rules,
            arity_cap,
            max_axis,
            universe,
            style: s,
            k,
            density,
            max_domain,
            time_limit,
            jobs,
            out,
            json,
        } => {
            let labeler = match (variant, rules) {
                (LabelingArg::Terminal, None) => Labeler::Terminal,
                (LabelingArg::Terminal, Some(_)) => {
                    return Err(invalid("--rules only applies to --variant selection"))
                }
                (LabelingArg::Selection, Some(spec)) => {
                    Labeler::Selection(load_rules(&spec, arity_cap)?)
                }
                (LabelingArg::Selection, None) => {
                    return Err(invalid("--variant selection needs --rules"))
                }
            };
            let source = match universe {
                Some(path) => UniverseSource::Explicit(load_universe(&path)?),
                None => UniverseSource::Generated {
                    k,
                    style: style(s, density)?,
                    seed,
                },
            };
            let time_limit = match time_limit {
                Some(t) if !(t.is_finite() && t >= 0.0) => {
                    return Err(invalid(format!("bad --time-limit {t}")))
                }
                t => t.map(Duration::from_secs_f64),
            };
            let budget = SearchBudget {
                max_axis,
                max_domain_size: max_domain,
                p,
                time_limit,
                ..SearchBudget::default()
            };
            let outcome = match with_jobs(jobs, || search_cube_witness(&source, &labeler, &budget))?
            {
                Ok(outcome) => outcome,
                Err(e @ SearchError::BudgetExceeded(_)) => {
                    println!("outcome: budget-exceeded");
                    println!("note: {e}");
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(invalid(e)),
            };
            match &outcome {
                SearchOutcome::Witness(w) => {
                    let mut block = format!("# outcome: witness\n# labeling: {}\n", w.labeling);
                    block.push_str(&format!(
                        "# candidates-examined: {}\n",
                        w.candidates_examined
                    ));
                    for line in report::verdict_lines(&w.verdict) {
                        block.push_str(&format!("# {line}\n"));
                    }
                    match &out {
                        Some(_) => {
                            write_out(&out, &(write_labeling(&w.universe, &w.labels) + &block))?;
                            print!("{block}");
                        }
                        None => print!("{}{block}", write_labeling(&w.universe, &w.labels)),
                    }
                }
                SearchOutcome::Exhausted(r) => print!("{}", report::exhaustion_text(r)),
            }
            if json {
                print_json(&outcome)?;
            }
            if outcome.witness().is_none() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Render {
            input,
            labeling,
            out,
            svg,
        } => {
            let text = read(&input)?;
            let has_labels = text.lines().any(|l| l.trim_start().starts_with("l "));
            let (universe, mut labels) = if has_labels {
                let lu = load_labeling(&input)?;
                (lu.universe, Some(lu.labels))
            } else {
                (load_universe(&input)?, None)
            };
            if let Some(path) = labeling {
                let lu = load_labeling(&path)?;
                if lu.universe != universe {
                    return Err(invalid(format!(
                        "inconsistent files: {} labels a different universe than {}",
                        path.display(),
                        input.display()
                    )));
                }
                labels = Some(lu.labels);
            }
            write_out(&out, &render_dot(&universe, labels.as_deref()))?;
            if let Some(path) = svg {
                write_out(&Some(path), &render_svg(&universe, labels.as_deref()))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
