//! Command-line front end. `run` returns the process exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::families::{build_family, phi_formula, recognize, canonical_list, FamilyError, FamilySpec, Tag};
use crate::invariant::{cartan_matrix, characteristic_sequences, euler_data, phi, InvariantError};
use crate::moves::{
    applicable_moves, apply_move, shift_relation, shift_relation_block, shift_relation_block_direct,
    shift_relation_direct, Direction, Move, MoveError, MoveKind,
};
use crate::orbit::{
    enumerate, fuzz_shift, normalize, orbit, verify_completeness, verify_lemma_tables, verify_minimality,
    verify_move_invariance, LemmaBounds, OrbitError, OrbitLimits, Report, SizeClass,
};
use crate::quiver::{classify_arrows, parse, serialize, validate, validate_connected, BoundQuiver, ParseError, QuiverError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "gentle", version, about = "Gentle two-cycle bound quivers: moves, invariants, families, orbits")]
struct Cli {
    /// Worker threads for enumeration and orbit search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Quiver file, or `-` for standard input.
    #[arg(default_value = "-")]
    file: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check gentleness and finiteness; list violations.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Also require connectivity.
        #[arg(long)]
        connected: bool,
    },
    /// Print the characteristic-sequence invariant.
    Phi {
        #[command(flatten)]
        input: Input,
        /// Also print every characteristic sequence.
        #[arg(long)]
        sequences: bool,
    },
    /// Print the Cartan matrix and Euler-form determinants.
    Cartan {
        #[command(flatten)]
        input: Input,
    },
    /// Classify arrows as cycle, branch or connecting.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// List the applicable moves.
    Moves {
        #[command(flatten)]
        input: Input,
    },
    /// Apply one move and print the result.
    Apply {
        #[arg(long = "move")]
        kind: String,
        #[arg(long)]
        vertex: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Shift a relation, or a block of relations, and print the result.
    Shift {
        /// The relation `FIRST SECOND`.
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"], conflicts_with = "block")]
        relation: Option<Vec<String>>,
        /// Free arrow next to a chain of relations.
        #[arg(long, value_name = "ANCHOR")]
        block: Option<String>,
        #[arg(long, default_value = "right")]
        direction: String,
        /// Use the direct rewrite instead of the move composite.
        #[arg(long)]
        direct: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Named families.
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// List the isomorphism classes of gentle bound quivers of one size.
    Enumerate {
        #[arg(long)]
        vertices: usize,
        /// Defaults to vertices + 1.
        #[arg(long)]
        arrows: Option<usize>,
        #[arg(long)]
        two_cycle: bool,
    },
    /// Explore the move orbit of a quiver.
    Orbit {
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
        /// Leave out the opposite move.
        #[arg(long)]
        no_opposite: bool,
        /// Print every state key.
        #[arg(long)]
        states: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Print the least canonical family in the orbit.
    Normalize {
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Run a verification report.
    Verify {
        #[arg(long, global = true, default_value_t = 200_000)]
        max_states: usize,
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Compare shift composites with direct rewrites on seeded random patterns.
    FuzzShift {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
enum FamilyCommand {
    /// Print the quiver of a family member.
    Build { tag: String, params: Vec<u32> },
    /// Print the least family spec isomorphic to the input, or `none`.
    Recognize {
        #[command(flatten)]
        input: Input,
    },
    /// Print the closed-form invariant.
    Phi { tag: String, params: Vec<u32> },
    /// List the canonical specs up to a size.
    List {
        #[arg(long)]
        max_vertices: usize,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Every class normalizes to a canonical family.
    Completeness {
        #[arg(long)]
        vertices: usize,
    },
    /// Canonical nondegenerate specs are pairwise inequivalent.
    Minimality {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        orbit_vertices: usize,
    },
    /// Closed forms and family equivalences.
    Lemmas {
        #[arg(long, default_value_t = 10)]
        bound: u32,
        #[arg(long, default_value_t = 5)]
        orbit_vertices: usize,
    },
    /// Every move keeps size, gentleness and the invariant.
    Moves {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Move(#[from] MoveError),
    #[error("{0}")]
    Family(#[from] FamilyError),
    #[error("{0}")]
    Invariant(#[from] InvariantError),
    #[error("{0}")]
    Quiver(#[from] QuiverError),
    #[error("{0}")]
    Orbit(#[from] OrbitError),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Parse(_) => EXIT_INPUT,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Orbit(OrbitError::NoCanonicalHit(_)) => EXIT_FAIL,
            _ => EXIT_DOMAIN,
        }
    }
}

/// Output text and exit code of a successful dispatch.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }

    fn report(r: Report) -> Self {
        let code = if r.passed() {
            EXIT_OK
        } else if r.failures.is_empty() {
            EXIT_DOMAIN
        } else {
            EXIT_FAIL
        };
        Outcome { text: r.to_string(), code }
    }
}

/// Parses `args` (program name first), runs the command and writes its output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(args, &mut out, &mut err)
}

/// As `run`, with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(CliError::Usage(e.to_string())),
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn read_input(input: &Input) -> Result<BoundQuiver, CliError> {
    let text = if input.file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.file).map_err(|e| CliError::Input(format!("{}: {e}", input.file)))?
    };
    Ok(parse(&text)?)
}

fn spec_from(tag: &str, params: &[u32]) -> Result<FamilySpec, CliError> {
    let tag: Tag = tag.parse()?;
    let spec = FamilySpec::new(tag, params);
    spec.check()?;
    Ok(spec)
}

fn require_valid(bq: &BoundQuiver) -> Result<(), CliError> {
    validate(bq).map_err(|v| {
        CliError::Domain(format!(
            "not gentle: {}",
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
        ))
    })
}

fn parse_direction(s: &str) -> Result<Direction, CliError> {
    s.parse().map_err(CliError::Usage)
}

fn limits(max_states: usize) -> OrbitLimits {
    OrbitLimits { max_states, ..OrbitLimits::default() }
}

fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Validate { input, connected } => {
            let bq = read_input(&input)?;
            let res = if connected { validate_connected(&bq) } else { validate(&bq) };
            match res {
                Ok(()) => Ok(Outcome::ok("OK\n".into())),
                Err(vs) => {
                    let mut text = String::new();
                    for v in vs {
                        let _ = writeln!(text, "{v}");
                    }
                    Ok(Outcome { text, code: EXIT_DOMAIN })
                }
            }
        }
        Command::Phi { input, sequences } => {
            let bq = read_input(&input)?;
            require_valid(&bq)?;
            let mut text = String::new();
            if sequences {
                for s in characteristic_sequences(&bq)? {
                    let (n, m) = s.kind();
                    let _ = writeln!(text, "({n},{m}) {}", s.render(&bq));
                }
            }
            text.push_str(&phi(&bq)?.to_string());
            Ok(Outcome::ok(text))
        }
        Command::Cartan { input } => {
            let bq = read_input(&input)?;
            require_valid(&bq)?;
            let mut text = cartan_matrix(&bq).to_string();
            match euler_data(&bq) {
                Some(e) => {
                    let _ = writeln!(text, "det: {}", e.det_cartan);
                    let _ = writeln!(text, "symmetrized det: {}", e.det_symmetrized);
                }
                None => text.push_str("det: not unimodular\n"),
            }
            Ok(Outcome::ok(text))
        }
        Command::Classify { input } => {
            let bq = read_input(&input)?;
            let c = classify_arrows(&bq)?;
            let mut text = String::new();
            for (a, class) in &c.arrows {
                let name = match class {
                    crate::quiver::ArrowClass::Cycle => "cycle",
                    crate::quiver::ArrowClass::Branch => "branch",
                    crate::quiver::ArrowClass::Connecting => "connecting",
                };
                let _ = writeln!(text, "{a} {name}");
            }
            let _ = writeln!(text, "connecting vertices: {}", c.connecting_vertices.join(" "));
            Ok(Outcome::ok(text))
        }
        Command::Moves { input } => {
            let bq = read_input(&input)?;
            require_valid(&bq)?;
            let mut text = String::new();
            for m in applicable_moves(&bq) {
                let _ = writeln!(text, "{m}");
            }
            Ok(Outcome::ok(text))
        }
        Command::Apply { kind, vertex, input } => {
            let bq = read_input(&input)?;
            require_valid(&bq)?;
            let kind: MoveKind = kind.parse()?;
            let (out, _) = apply_move(&bq, &Move { kind, vertex })?;
            Ok(Outcome::ok(serialize(&out)))
        }
        Command::Shift { relation, block, direction, direct, input } => {
            let bq = read_input(&input)?;
            require_valid(&bq)?;
            let dir = parse_direction(&direction)?;
            let (quiver, moves) = match (relation, block) {
                (Some(r), None) => {
                    let rel = (r[0].as_str(), r[1].as_str());
                    if direct {
                        (shift_relation_direct(&bq, rel, dir)?, None)
                    } else {
                        let s = shift_relation(&bq, rel, dir)?;
                        (s.quiver, Some(s.moves))
                    }
                }
                (None, Some(a)) => {
                    if direct {
                        (shift_relation_block_direct(&bq, &a, dir)?, None)
                    } else {
                        let s = shift_relation_block(&bq, &a, dir)?;
                        (s.quiver, Some(s.moves))
                    }
                }
                _ => return Err(CliError::Usage("give exactly one of --relation and --block".into())),
            };
            let mut text = String::new();
            for m in moves.unwrap_or_default() {
                let _ = writeln!(text, "# {m}");
            }
            text.push_str(&serialize(&quiver));
            Ok(Outcome::ok(text))
        }
        Command::Family { command } => family(command),
        Command::Enumerate { vertices, arrows, two_cycle } => {
            let size = SizeClass { vertices, arrows: arrows.unwrap_or(vertices + 1) };
            let classes = enumerate(size, two_cycle)?;
            let mut text = String::new();
            for (i, bq) in classes.iter().enumerate() {
                text.push_str(&serialize(&bq.clone().with_name(&format!("class{i}"))));
                text.push('\n');
            }
            let _ = writeln!(text, "# classes: {}", classes.len());
            Ok(Outcome::ok(text))
        }
        Command::Orbit { max_states, no_opposite, states, input } => {
            let bq = read_input(&input)?;
            require_valid(&bq)?;
            let lim = OrbitLimits { allow_opposite: !no_opposite, ..limits(max_states) };
            let o = orbit(&bq, &lim);
            let mut text = String::new();
            let _ = writeln!(text, "states: {}", o.len());
            let _ = writeln!(text, "edges: {}", o.edges.len());
            let _ = writeln!(text, "complete: {}", if o.complete { "yes" } else { "no" });
            for (_, spec) in &o.canonical_hits {
                let _ = writeln!(text, "hit: {spec}");
            }
            match o.normal_form() {
                Some(s) => {
                    let _ = writeln!(text, "normal form: {s}");
                }
                None => text.push_str("normal form: none\n"),
            }
            let _ = writeln!(text, "invariant changes: {}", o.phi_violations.len());
            let _ = writeln!(text, "invalid moves: {}", o.invalid_moves.len());
            if states {
                for (i, q) in o.representatives.values().enumerate() {
                    text.push('\n');
                    text.push_str(&serialize(&q.clone().with_name(&format!("state{i}"))));
                }
            }
            let code = if o.complete { EXIT_OK } else { EXIT_DOMAIN };
            Ok(Outcome { text, code })
        }
        Command::Normalize { max_states, input } => {
            let bq = read_input(&input)?;
            Ok(Outcome::ok(format!("{}\n", normalize(&bq, &limits(max_states))?)))
        }
        Command::Verify { max_states, command } => {
            let lim = limits(max_states);
            let report = match command {
                VerifyCommand::Completeness { vertices } => verify_completeness(vertices, &lim),
                VerifyCommand::Minimality { max_vertices, orbit_vertices } => {
                    verify_minimality(max_vertices, orbit_vertices, &lim)
                }
                VerifyCommand::Lemmas { bound, orbit_vertices } => {
                    verify_lemma_tables(&LemmaBounds { param_sum: bound, orbit_vertices }, &lim)
                }
                VerifyCommand::Moves { max_vertices } => verify_move_invariance(max_vertices),
            };
            Ok(Outcome::report(report))
        }
        Command::FuzzShift { seed, count } => Ok(Outcome::report(fuzz_shift(seed, count))),
    }
}

fn family(cmd: FamilyCommand) -> Result<Outcome, CliError> {
    match cmd {
        FamilyCommand::Build { tag, params } => {
            Ok(Outcome::ok(serialize(&build_family(&spec_from(&tag, &params)?)?)))
        }
        FamilyCommand::Recognize { input } => {
            let bq = read_input(&input)?;
            Ok(Outcome::ok(match recognize(&bq) {
                Some(s) => format!("{s}\n"),
                None => "none\n".into(),
            }))
        }
        FamilyCommand::Phi { tag, params } => {
            Ok(Outcome::ok(phi_formula(&spec_from(&tag, &params)?)?.to_string()))
        }
        FamilyCommand::List { max_vertices } => {
            let mut text = String::new();
            for s in canonical_list(max_vertices) {
                let _ = writeln!(text, "{s}");
            }
            Ok(Outcome::ok(text))
        }
    }
}
