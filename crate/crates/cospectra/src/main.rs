//! Command-line entry point. JSON-lines on stdout (or --output), human
//! summary on stderr. Exit codes: 0 success, 2 input error, 3 resource
//! cap, 4 theorem violation.

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

use cospectra::congruence;
use cospectra::error::Error;
use cospectra::gen;
use cospectra::graph::{self, Graph};
use cospectra::invariants;
use cospectra::linalg::{self, IntMatrix};
use cospectra::miner::{self, GroupMode};
use cospectra::par;
use cospectra::walks;

#[derive(Parser)]
#[command(name = "cospectra", version, about = "Arithmetic invariants for cospectral graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// graph6 file, one graph per line
    #[arg(long)]
    input: Option<PathBuf>,
    /// Use the built-in 9-vertex golden pair instead of a file
    #[arg(long, default_value_t = false)]
    paper_example: bool,
    /// Write JSON-lines here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant panel per graph: char polys, walk matrix, eta,
    /// discriminant, walk counts
    Invariants {
        #[command(flatten)]
        io: InputArgs,
        /// Walk-count horizon; defaults to 2n-1 per graph
        #[arg(long)]
        max_power: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        trial_bound: u64,
    },
    /// All pairwise congruence checks on two graphs
    VerifyPair {
        #[command(flatten)]
        io: InputArgs,
        /// Horizon for walk-count residues; defaults to 2n
        #[arg(long)]
        max_power: Option<usize>,
    },
    /// Group a corpus into cospectral classes and run the congruence
    /// suite on every class
    Mine {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value = "adjacency")]
        mode: GroupMode,
        #[arg(long)]
        max_power: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// DGS certification for every corpus graph
    Certify {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 1_000_000)]
        trial_bound: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Combinatorial and matrix lemma verification suite
    CheckLemmas {
        /// Exhaustive labeled graphs up to this vertex count
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Even-length palindromic checks up to this walk length
        #[arg(long, default_value_t = 8)]
        max_power: usize,
        /// Random symmetric matrix pairs
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Closed-walk enumeration cross-check of traces and palindromic counts
    Oracle {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        max_power: usize,
    },
    /// Run corollary witness hunts over a corpus (tree matchings when all
    /// inputs are trees, triangle parity otherwise)
    Witnesses {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value = "triangles")]
        kind: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

struct Output {
    file: Option<std::io::BufWriter<std::fs::File>>,
}

impl Output {
    fn new(path: &Option<PathBuf>) -> Result<Self, Error> {
        let file = match path {
            Some(p) => Some(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => None,
        };
        Ok(Output { file })
    }

    fn emit<T: Serialize>(&mut self, value: &T) -> Result<(), Error> {
        let line = serde_json::to_string(value).expect("reports serialize");
        match &mut self.file {
            Some(f) => writeln!(f, "{line}")?,
            None => println!("{line}"),
        }
        Ok(())
    }
}

fn read_graphs(io: &InputArgs) -> Result<Vec<(usize, Graph)>, Error> {
    if io.paper_example {
        let (g, h) = gen::paper_example();
        return Ok(vec![(0, g), (1, h)]);
    }
    let path = io
        .input
        .as_ref()
        .ok_or_else(|| Error::Input("need --input or --paper-example".into()))?;
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let g = graph::parse_graph6(line)
            .map_err(|e| Error::Input(format!("{}:{}: {e}", path.display(), idx + 1)))?;
        out.push((idx, g));
    }
    if out.is_empty() {
        return Err(Error::Input(format!("{}: no graphs", path.display())));
    }
    Ok(out)
}

#[derive(Serialize)]
struct InvariantPanel {
    graph6: String,
    n: usize,
    char_poly: Vec<String>,
    complement_char_poly: Vec<String>,
    walk_matrix: Vec<Vec<String>>,
    walk_counts: Vec<String>,
    eta: invariants::EtaCertificate,
    discriminant: invariants::DiscriminantReport,
}

fn panel(g: &Graph, max_power: Option<usize>, trial_bound: u64) -> Result<InvariantPanel, Error> {
    let n = g.n();
    let horizon = max_power.unwrap_or(2 * n - 1);
    let phi = linalg::char_poly(&IntMatrix::from_graph(g));
    let comp = invariants::complement_char_poly(g)?;
    let w = invariants::walk_matrix(g);
    let graph6 = graph::to_graph6(g)?;
    let discriminant = invariants::discriminant_report(&phi, &graph6, trial_bound)?;
    Ok(InvariantPanel {
        graph6,
        n,
        char_poly: phi.coeffs().iter().map(|c| c.to_string()).collect(),
        complement_char_poly: comp.coeffs().iter().map(|c| c.to_string()).collect(),
        walk_matrix: (0..n)
            .map(|i| (0..n).map(|j| w.get(i, j).to_string()).collect())
            .collect(),
        walk_counts: invariants::walk_counts(g, horizon).counts,
        eta: invariants::eta(g)?,
        discriminant,
    })
}

#[derive(Serialize)]
struct PairVerdict {
    pair_id: String,
    cospectral: bool,
    walk_mod4: congruence::CongruenceReport,
    complement_mod4: congruence::CongruenceReport,
    eta_parity: congruence::CongruenceReport,
    equivalence: congruence::EquivalenceReport,
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Invariants { io, max_power, trial_bound } => {
            let graphs = read_graphs(&io)?;
            let mut out = Output::new(&io.output)?;
            for (_, g) in &graphs {
                out.emit(&panel(g, max_power, trial_bound)?)?;
            }
            eprintln!("invariants: {} graph(s)", graphs.len());
        }
        Command::VerifyPair { io, max_power } => {
            let graphs = read_graphs(&io)?;
            if graphs.len() != 2 {
                return Err(Error::Input(format!("verify-pair needs exactly 2 graphs, got {}", graphs.len())));
            }
            let (g, h) = (&graphs[0].1, &graphs[1].1);
            let horizon = max_power.unwrap_or(2 * g.n());
            let walk = congruence::check_walk_mod4_pair(g, h, horizon);
            let comp = congruence::check_complement_mod4_pair(g, h);
            let eta = congruence::check_eta_parity_pair(g, h)?;
            let equiv = congruence::check_equivalence_theorem(g, h, horizon)?;
            let cospectral = walk.cospectral;
            let verdicts_ok = !cospectral || (walk.passed() && comp.passed() && eta.passed());
            let report = PairVerdict {
                pair_id: walk.pair_id.clone(),
                cospectral,
                walk_mod4: walk,
                complement_mod4: comp,
                eta_parity: eta,
                equivalence: equiv,
            };
            Output::new(&io.output)?.emit(&report)?;
            if !verdicts_ok {
                return Err(Error::TheoremViolation("pair check failed".into()));
            }
            eprintln!(
                "verify-pair: {}",
                if cospectral { "cospectral, all checks pass" } else { "not cospectral" }
            );
        }
        Command::Mine { io, mode, max_power, workers } => {
            let graphs = read_graphs(&io)?;
            let mut out = Output::new(&io.output)?;
            let reports = par::with_workers(workers, || -> Result<_, Error> {
                let grouping = miner::group_graphs(graphs, mode);
                let horizon = max_power;
                grouping
                    .classes
                    .iter()
                    .map(|c| {
                        let m = horizon.unwrap_or(2 * c.members[0].1.n());
                        miner::run_class_suite(c, mode, m)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })?;
            let multi = reports.iter().filter(|r| r.members.len() >= 2).count();
            for r in &reports {
                out.emit(r)?;
            }
            eprintln!(
                "mine: {} classes ({} with cospectral mates), zero violations",
                reports.len(),
                multi
            );
        }
        Command::Certify { io, trial_bound, workers } => {
            let graphs = read_graphs(&io)?;
            let mut out = Output::new(&io.output)?;
            let certs = par::with_workers(workers, || {
                par::map_ordered(graphs, |(_, g)| miner::certify_dgs(&g, trial_bound))
            })
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
            let certified = certs
                .iter()
                .filter(|c| matches!(c.verdict, miner::DgsVerdict::CertifiedThm1_1 | miner::DgsVerdict::CertifiedThm1_5))
                .count();
            for c in &certs {
                out.emit(c)?;
            }
            eprintln!("certify: {certified}/{} certified DGS", certs.len());
        }
        Command::CheckLemmas { max_n, max_power, samples, seed, output } => {
            let mut out = Output::new(&output)?;
            let mut graph_reports = 0usize;
            for n in 1..=max_n {
                for g in gen::all_labeled_graphs(n) {
                    for m in (2..=max_power).step_by(2) {
                        walks::count_palindromic(&g, m)?;
                    }
                    for m in [4usize, 8] {
                        if m <= max_power {
                            let rep = walks::verify_translation_converse_lemma(&g, m)?;
                            if !rep.clean() {
                                return Err(Error::TheoremViolation(format!(
                                    "translation/converse violations: {:?}",
                                    rep.violations
                                )));
                            }
                        }
                    }
                    graph_reports += 1;
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut matrix_reports = Vec::new();
            for _ in 0..samples {
                let n = rand::Rng::gen_range(&mut rng, 2..=6usize);
                let a1 = gen::random_symmetric_matrix(n, 5, true, &mut rng);
                let a2 = gen::random_symmetric_matrix(n, 5, false, &mut rng);
                let rep = congruence::verify_matrix_lemmas(&a1, &a2)?;
                if !rep.all_pass() {
                    return Err(Error::TheoremViolation("matrix lemma failed".into()));
                }
                matrix_reports.push(rep);
            }
            #[derive(Serialize)]
            struct LemmaSummary {
                graphs_checked: usize,
                matrix_samples: usize,
                seed: u64,
                all_pass: bool,
            }
            out.emit(&LemmaSummary {
                graphs_checked: graph_reports,
                matrix_samples: matrix_reports.len(),
                seed,
                all_pass: true,
            })?;
            eprintln!("check-lemmas: {graph_reports} graphs, {samples} matrix samples, all pass");
        }
        Command::Oracle { io, max_power } => {
            let graphs = read_graphs(&io)?;
            let mut out = Output::new(&io.output)?;
            for (_, g) in &graphs {
                let closed = walks::enumerate_closed_walks(g, max_power)?;
                let open = walks::enumerate_walks(g, max_power)?;
                let palindromic = if max_power % 2 == 0 {
                    Some(walks::count_palindromic(g, max_power)?.to_string())
                } else {
                    None
                };
                #[derive(Serialize)]
                struct OracleReport {
                    graph6: String,
                    m: usize,
                    closed_walks: String,
                    walks: String,
                    palindromic: Option<String>,
                }
                out.emit(&OracleReport {
                    graph6: graph::to_graph6(g)?,
                    m: max_power,
                    closed_walks: closed.to_string(),
                    walks: open.to_string(),
                    palindromic,
                })?;
            }
            eprintln!("oracle: {} graph(s), all enumeration counts match traces", graphs.len());
        }
        Command::Witnesses { io, kind, workers } => {
            let graphs = read_graphs(&io)?;
            let mut out = Output::new(&io.output)?;
            match kind.as_str() {
                "trees" => {
                    let rep = par::with_workers(workers, || miner::find_tree_matching_witnesses(graphs))?;
                    if !rep.violations.is_empty() {
                        return Err(Error::TheoremViolation(format!("{:?}", rep.violations)));
                    }
                    eprintln!(
                        "witnesses(trees): {} trees, {} multi-member classes{}",
                        rep.trees,
                        rep.multi_member_classes,
                        if rep.vacuous { " (vacuous pass)" } else { "" }
                    );
                    out.emit(&rep)?;
                }
                "triangles" => {
                    let rep = par::with_workers(workers, || miner::find_triangle_parity_witnesses(graphs))?;
                    if !rep.violations.is_empty() {
                        return Err(Error::TheoremViolation(format!("{:?}", rep.violations)));
                    }
                    eprintln!(
                        "witnesses(triangles): {} graphs, {} multi-member classes",
                        rep.graphs, rep.multi_member_classes
                    );
                    out.emit(&rep)?;
                }
                other => return Err(Error::Input(format!("unknown witness kind {other:?}"))),
            }
        }
    }
    Ok(())
}

fn main() {
    match run() {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Resource(_) => 3,
                Error::TheoremViolation(_) => 4,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}
