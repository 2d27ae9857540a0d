use std::collections::BTreeMap;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use treegen::counting::{count_equal_radius, count_linear_total, f, g};
use treegen::format::{to_edge_list, to_graph6};
use treegen::oracle::oracle_free_trees;
use treegen::treeenum::{equal_radius_set, linear_set};
use treegen::{CanonicalForm, Catalog, Tree, TreeLister};

const USAGE: u8 = 2;
const FAILED: u8 = 1;

/// Isomorph-free listing of unlabeled trees.
#[derive(Parser, Debug)]
#[command(name = "treegen", version)]
struct Cli {
    /// Largest tree order accepted by list/count/halftrees.
    #[arg(long, env = "TREEGEN_MAX_ORDER", default_value_t = 16, global = true)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every tree of order N, one record per line.
    List {
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::EdgeList)]
        format: OutputFormat,
        /// Only trees produced at this step (diameter N - K - 1).
        #[arg(long)]
        step: Option<usize>,
        /// Generate steps on a thread pool; output is unchanged.
        #[arg(long)]
        parallel: bool,
    },
    /// Count trees of order N.
    Count {
        n: usize,
        /// Also print `diameter: count` lines.
        #[arg(long)]
        by_diameter: bool,
    },
    /// Compare the generator with a brute-force reference for orders 1..=N_MAX.
    Verify {
        n_max: usize,
        /// Largest order the reference may be asked for.
        #[arg(long, env = "TREEGEN_ORACLE_CAP", default_value_t = 14)]
        oracle_cap: usize,
    },
    /// Print the rooted half-trees of order N with their prime labels.
    Halftrees { n: usize },
    /// Evaluate the closed-form counters next to generated set sizes.
    Formulas {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    EdgeList,
    Graph6,
}

fn render(t: &Tree, format: OutputFormat) -> String {
    match format {
        OutputFormat::EdgeList => to_edge_list(t),
        OutputFormat::Graph6 => to_graph6(t).expect("orders are capped far below the graph6 limit"),
    }
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<treegen::Error> for Failure {
    fn from(e: treegen::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn check_order(n: usize, max: usize) -> Result<(), Failure> {
    if n == 0 || n > max {
        return Err(Failure::Usage(format!(
            "order must be between 1 and {max}, got {n}"
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("treegen: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("treegen: {e}");
            ExitCode::from(FAILED)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    match cli.command {
        Command::List {
            n,
            format,
            step,
            parallel,
        } => {
            check_order(n, cli.max_order)?;
            let lister = TreeLister::new(n)?;
            let trees: Vec<Tree> = match step {
                Some(k) => lister.step(k),
                None if parallel => lister.list_parallel().into_iter().map(|e| e.tree).collect(),
                None => lister.list().into_iter().map(|e| e.tree).collect(),
            };
            for t in &trees {
                writeln!(out, "{}", render(t, format))?;
            }
            if format == OutputFormat::EdgeList {
                writeln!(out, "# count={}", trees.len())?;
            }
            Ok(0)
        }
        Command::Count { n, by_diameter } => {
            check_order(n, cli.max_order)?;
            let lister = TreeLister::new(n)?;
            let mut rows = BTreeMap::new();
            let mut total = 0;
            for k in 0..lister.step_count() {
                let c = lister.step(k).len();
                total += c;
                if c > 0 {
                    rows.insert(n.saturating_sub(k + 1), c);
                }
            }
            writeln!(out, "{total}")?;
            if by_diameter {
                for (d, c) in rows {
                    writeln!(out, "{d}: {c}")?;
                }
            }
            Ok(0)
        }
        Command::Verify { n_max, oracle_cap } => {
            if n_max == 0 || n_max > oracle_cap {
                return Err(Failure::Usage(format!(
                    "verify needs 1 <= N_MAX <= {oracle_cap} (set TREEGEN_ORACLE_CAP to raise)"
                )));
            }
            let mut all_pass = true;
            for n in 1..=n_max {
                let listed = treegen::list_trees(n)?;
                let reference = oracle_free_trees(n)?;
                match first_divergence(&listed, &reference) {
                    None => writeln!(out, "n={n} PASS ({} trees)", listed.len())?,
                    Some(d) => {
                        all_pass = false;
                        writeln!(
                            out,
                            "n={n} FAIL ({} generated, {} expected): {} {}",
                            listed.len(),
                            reference.len(),
                            d.kind,
                            to_edge_list(&d.tree)
                        )?;
                        writeln!(out, "  graph6: {}", render(&d.tree, OutputFormat::Graph6))?;
                    }
                }
            }
            Ok(if all_pass { 0 } else { FAILED })
        }
        Command::Halftrees { n } => {
            check_order(n, cli.max_order)?;
            let catalog = Catalog::up_to(n)?;
            for id in catalog.ids(n) {
                writeln!(
                    out,
                    "nu={} {}",
                    catalog.nu_of_id(id),
                    to_edge_list(&catalog.get(id).to_tree())
                )?;
            }
            Ok(0)
        }
        Command::Formulas { k, r, n } => formulas(k, r, n, out),
    }
}

struct Divergence {
    kind: &'static str,
    tree: Tree,
}

/// First tree that is duplicated, missing or unexpected in `listed`.
fn first_divergence(listed: &[Tree], reference: &[Tree]) -> Option<Divergence> {
    let expected: BTreeMap<CanonicalForm, &Tree> =
        reference.iter().map(|t| (t.canonical(), t)).collect();
    let mut seen = BTreeMap::new();
    for t in listed {
        let code = t.canonical();
        if !expected.contains_key(&code) {
            return Some(Divergence {
                kind: "unexpected",
                tree: t.clone(),
            });
        }
        if seen.insert(code, ()).is_some() {
            return Some(Divergence {
                kind: "duplicate",
                tree: t.clone(),
            });
        }
    }
    expected
        .into_iter()
        .find(|(code, _)| !seen.contains_key(code))
        .map(|(_, t)| Divergence {
            kind: "missing",
            tree: t.clone(),
        })
}

const FORMULA_MAX_N: usize = 24;
const FORMULA_MAX_R: usize = 10;
const FORMULA_MAX_K: usize = 8;

fn formulas(k: usize, r: usize, n: usize, out: &mut impl Write) -> Result<u8, Failure> {
    if !(1..=FORMULA_MAX_N).contains(&n) || !(1..=FORMULA_MAX_R).contains(&r) || k > FORMULA_MAX_K {
        return Err(Failure::Usage(format!(
            "formulas needs 1 <= n <= {FORMULA_MAX_N}, 1 <= r <= {FORMULA_MAX_R}, k <= {FORMULA_MAX_K}"
        )));
    }
    let slots = (n / 2).saturating_sub(r);
    writeln!(out, "slots per half: {slots}")?;
    writeln!(out, "G({k},{slots}) = {}", g(k, slots))?;
    writeln!(out, "F({k},0,{slots}) = {}", f(k, 0, slots))?;

    let catalog = Catalog::up_to(r.max(k).max(1))?;
    let equal = count_equal_radius(k, r, n);
    let equal_generated = BigUint::from(equal_radius_set(&catalog, k, r, n)?.len());
    let linear = count_linear_total(k, n);
    let linear_generated: usize = linear_set(&catalog, k, n).iter().map(|s| s.len()).sum();
    let linear_generated = BigUint::from(linear_generated);

    let mut agree = true;
    for (name, formula, generated) in [
        ("equal radius", &equal, &equal_generated),
        ("linear", &linear, &linear_generated),
    ] {
        let verdict = if formula == generated {
            "AGREE"
        } else {
            "DISAGREE"
        };
        agree &= formula == generated;
        writeln!(
            out,
            "{name}: formula {formula}, generated {generated}, {verdict}"
        )?;
    }
    Ok(if agree { 0 } else { FAILED })
}
