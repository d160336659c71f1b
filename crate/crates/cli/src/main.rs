//! `modsemi`: batch front end for the modsemi library.
//!
//! Exit status: 0 on success, 1 on a negative verdict or a violated
//! precondition, 2 on unreadable or malformed input, 3 when an enumeration
//! budget is exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use modsemi::gf::{dm_decompose, mvsp_solve, polar_space_ppip, DEFAULT_MVSP_BUDGET};
use modsemi::horn::{
    enumeration_count, optimal_base_from_implications_within, reset_enumeration_count, ImplicationalSystem,
    DEFAULT_FAMILY_BUDGET,
};
use modsemi::io::{
    chain_dot, format_implications, hasse_dot, parse_implications, ppip_dot, read_json, to_json_pretty, DmJson,
    FormJson, ImplicationsJson, MvspJson, PartitionedMatrixJson, PosetJson, PpipJson, ProductSetJson,
};
use modsemi::ppip::birkhoff_roundtrip;
use modsemi::product::{build_ppip, oracle_from_set, MembershipOracle};
use modsemi::{Error, ErrorKind, Poset, Ppip, Semilattice};

#[derive(Parser)]
#[command(name = "modsemi", version, about = "Compact representations of modular semilattices")]
struct Cli {
    /// Print more detail (repeatable).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,

    /// Override the enumeration budget of the command.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether a poset is a semilattice, modular and median.
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// Write the Hasse diagram.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the PPIP axioms and enumerate the consistent subspaces.
    Ppip {
        #[arg(long)]
        input: PathBuf,
        /// Write the subspace semilattice as a poset.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build the PPIP of a modular semilattice and verify the round trip.
    Birkhoff {
        #[arg(long)]
        input: PathBuf,
        /// Write the induced PPIP.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build the PPIP of a (meet, join)-closed subset of a product.
    ProductPpip {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Report the number of membership queries.
        #[arg(long)]
        count_calls: bool,
    },
    /// Decide whether the closed sets of a system form a modular semilattice.
    Recognize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compute the optimal base of a system.
    OptimalBase {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Closure of a set under a system.
    Closure {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated element names; empty for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Polar space of an alternating form over GF(p).
    Polar {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Maximum vanishing subspaces of a partitioned matrix.
    Mvsp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Block-triangularize a partitioned matrix.
    DmDecompose {
        #[arg(long)]
        input: PathBuf,
        /// Write the decomposition as JSON.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Print the basis changes and the permutations.
        #[arg(long)]
        emit_transforms: bool,
        /// Write the chain of vanishing tuples.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
}

enum Failure {
    /// A well-formed input with a negative answer; the message is the witness.
    Negative(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| in_file(path, e.into()))
}

fn emit_json<T: serde::Serialize>(path: Option<&PathBuf>, value: &T) -> Result<(), Error> {
    match path {
        Some(p) => write_file(p, &(to_json_pretty(value)? + "\n")),
        None => Ok(()),
    }
}

fn emit_dot(path: Option<&PathBuf>, dot: impl FnOnce() -> String) -> Result<(), Error> {
    match path {
        Some(p) => write_file(p, &dot()),
        None => Ok(()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Prefixes read and parse errors with the file they came from.
fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Io(_) | Error::Json(_) => Error::Input(format!("{}: {e}", path.display())),
        e => e,
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    read_json(path).map_err(|e| in_file(path, e))
}

/// Text or JSON, by extension, falling back to the first character.
fn load_system(path: &Path) -> Result<ImplicationalSystem, Error> {
    let text = fs::read_to_string(path).map_err(|e| in_file(path, e.into()))?;
    let is_json = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => true,
        Some("txt") => false,
        _ => text.trim_start().starts_with('{'),
    };
    if is_json {
        let json: ImplicationsJson = serde_json::from_str(&text).map_err(|e| in_file(path, e.into()))?;
        json.to_system()
    } else {
        parse_implications(&text)
    }
}

fn print_ppip_summary(p: &Ppip) {
    println!("elements: {}", p.len());
    println!(
        "inconsistent pairs: {} ({} minimal)",
        p.inconsistent_pairs().len(),
        p.minimal_inconsistent_pairs().len()
    );
    println!("collinear triples: {}", p.collinear_count());
}

fn print_ppip_detail(p: &Ppip) {
    for (a, b) in p.minimal_inconsistent_pairs() {
        println!("  {} ⌣ {}", p.name(a), p.name(b));
    }
    for [a, b, c] in p.collinear_triples() {
        println!("  line {} {} {}", p.name(a), p.name(b), p.name(c));
    }
}

struct Runner {
    verbose: u8,
    budget: Option<u64>,
}

impl Runner {
    fn limit(&self, default: usize) -> usize {
        self.budget
            .map_or(default, |b| usize::try_from(b).unwrap_or(usize::MAX))
    }

    fn limit_u128(&self, default: u128) -> u128 {
        self.budget.map_or(default, u128::from)
    }

    fn run(&self, cmd: &Command) -> Outcome {
        match cmd {
            Command::Validate { input, dot } => self.validate(input, dot.as_ref()),
            Command::Ppip { input, emit, dot } => self.ppip(input, emit.as_ref(), dot.as_ref()),
            Command::Birkhoff { input, emit, dot } => self.birkhoff(input, emit.as_ref(), dot.as_ref()),
            Command::ProductPpip {
                input,
                emit,
                dot,
                count_calls,
            } => self.product_ppip(input, emit.as_ref(), dot.as_ref(), *count_calls),
            Command::Recognize { input } => self.recognize(input),
            Command::OptimalBase { input, emit } => self.optimal_base(input, emit.as_ref()),
            Command::Closure { input, set } => self.closure(input, set),
            Command::Polar { form, emit, dot } => self.polar(form, emit.as_ref(), dot.as_ref()),
            Command::Mvsp { input, emit } => self.mvsp(input, emit.as_ref()),
            Command::DmDecompose {
                input,
                emit,
                emit_transforms,
                emit_dot,
            } => self.dm_decompose(input, emit.as_ref(), *emit_transforms, emit_dot.as_ref()),
        }
    }

    fn validate(&self, input: &Path, dot: Option<&PathBuf>) -> Outcome {
        let json: PosetJson = read(input)?;
        let poset: Poset = json.to_poset()?;
        emit_dot(dot, || hasse_dot(&poset, "poset"))?;
        println!("elements: {}", poset.len());
        let l = match Semilattice::new(poset) {
            Ok(l) => l,
            Err(Error::NotASemilattice(why)) => {
                println!("semilattice: no");
                return Err(Failure::Negative(why));
            }
            Err(e) => return Err(e.into()),
        };
        println!("semilattice: yes");
        if let Err(v) = l.is_modular() {
            println!("modular semilattice: no");
            return Err(Failure::Negative(v.describe(&l)));
        }
        println!("modular semilattice: yes");
        println!("median semilattice: {}", yes_no(l.is_median()));
        println!("join-irreducibles: {}", l.join_irreducibles().len());
        if self.verbose > 0 {
            let names: Vec<&str> = l.join_irreducibles().iter().map(|&x| l.name(x)).collect();
            println!("  {}", names.join(" "));
        }
        Ok(())
    }

    fn ppip(&self, input: &Path, emit: Option<&PathBuf>, dot: Option<&PathBuf>) -> Outcome {
        let json: PpipJson = read(input)?;
        let p = json.to_ppip()?;
        emit_dot(dot, || ppip_dot(&p, "ppip"))?;
        print_ppip_summary(&p);
        if self.verbose > 0 {
            print_ppip_detail(&p);
        }
        if let Err(v) = p.check_axioms() {
            println!("axioms: violated");
            return Err(Failure::Negative(v.describe(&p)));
        }
        println!("axioms: all eight hold");
        let fam = p.enumerate_subspaces(self.limit(usize::MAX))?;
        println!("consistent subspaces: {}", fam.len());
        if self.verbose > 0 {
            for s in &fam.members {
                println!("  {}", p.format_set(s));
            }
        }
        emit_json(emit, &PosetJson::from_poset(fam.lattice.poset()))?;
        Ok(())
    }

    fn birkhoff(&self, input: &Path, emit: Option<&PathBuf>, dot: Option<&PathBuf>) -> Outcome {
        let json: PosetJson = read(input)?;
        let l = json.to_semilattice()?;
        let report = birkhoff_roundtrip(&l)?;
        print_ppip_summary(&report.ppip);
        if self.verbose > 0 {
            print_ppip_detail(&report.ppip);
        }
        println!("consistent subspaces: {}", report.subspaces.len());
        println!("round trip: ok");
        if self.verbose > 0 {
            for (x, s) in report.describe_phi(&l) {
                println!("  {x} -> {s}");
            }
        }
        emit_json(emit, &PpipJson::from_ppip(&report.ppip))?;
        emit_dot(dot, || ppip_dot(&report.ppip, "ppip"))?;
        Ok(())
    }

    fn product_ppip(&self, input: &Path, emit: Option<&PathBuf>, dot: Option<&PathBuf>, count_calls: bool) -> Outcome {
        let json: ProductSetJson = read(input)?;
        let (space, members) = json.to_space_and_members()?;
        let oracle = oracle_from_set(space, members)?;
        let built = build_ppip(&oracle)?;
        println!("members: {}", oracle.members().len());
        print_ppip_summary(&built.ppip);
        if self.verbose > 0 {
            for (k, e) in built.elements.iter().enumerate() {
                println!("  {} = {}", built.ppip.name(k), oracle.space().format(&e.vector));
            }
            print_ppip_detail(&built.ppip);
        }
        if count_calls {
            let n = oracle.space().dim() as u64;
            let l = oracle.space().max_factor_len() as u64;
            println!("oracle calls: {} (bound {})", oracle.calls(), n * n * l * l);
        }
        emit_json(emit, &PpipJson::from_ppip(&built.ppip))?;
        emit_dot(dot, || ppip_dot(&built.ppip, "ppip"))?;
        Ok(())
    }

    fn recognize(&self, input: &Path) -> Outcome {
        let sys = load_system(input)?;
        println!(
            "ground: {}, implications: {}, size: {}",
            sys.ground_len(),
            sys.len(),
            sys.size()
        );
        reset_enumeration_count();
        let verdict = sys.recognize();
        if enumeration_count() != 0 {
            return Err(Error::Internal("recognition enumerated the closed sets".into()).into());
        }
        match verdict {
            Ok(()) => {
                println!("modular semilattice: yes");
                if self.verbose > 0 {
                    let irr = sys.pruned().0.irreducible_ppip()?;
                    print_ppip_summary(&irr.ppip);
                    print_ppip_detail(&irr.ppip);
                }
                Ok(())
            }
            Err(f) => {
                println!("modular semilattice: no");
                Err(Failure::Negative(f.to_string()))
            }
        }
    }

    fn optimal_base(&self, input: &Path, emit: Option<&PathBuf>) -> Outcome {
        let sys = load_system(input)?;
        let base = optimal_base_from_implications_within(&sys, self.limit(DEFAULT_FAMILY_BUDGET))?;
        print!("{}", format_implications(&base));
        println!("implications: {}, size: {}", base.len(), base.size());
        emit_json(emit, &ImplicationsJson::from_system(&base))?;
        Ok(())
    }

    fn closure(&self, input: &Path, set: &str) -> Outcome {
        let sys = load_system(input)?;
        let names: Vec<&str> = set
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        match sys.closure_named(&names)? {
            Some(c) => println!("closure: {}", sys.format_set(&c)),
            None => println!("closure: nonexistent"),
        }
        Ok(())
    }

    fn polar(&self, form: &Path, emit: Option<&PathBuf>, dot: Option<&PathBuf>) -> Outcome {
        let json: FormJson = read(form)?;
        let ps = polar_space_ppip(&json.to_matrix()?)?;
        let p = &ps.ppip;
        println!("points: {}", p.len());
        println!("inconsistent pairs: {}", p.inconsistent_pairs().len());
        println!("collinear triples: {}", p.collinear_count());
        if self.verbose > 0 {
            for k in 0..p.len() {
                println!("  {}", p.name(k));
            }
            print_ppip_detail(p);
        }
        emit_json(emit, &PpipJson::from_ppip(p))?;
        emit_dot(dot, || ppip_dot(p, "polar"))?;
        if let Err(v) = p.check_axioms() {
            println!("axioms: violated");
            return Err(Failure::Negative(v.describe(p)));
        }
        println!("axioms: all eight hold");
        let fam = p.enumerate_subspaces(self.limit(usize::MAX))?;
        println!("consistent subspaces: {}", fam.len());
        println!("modular semilattice: {}", yes_no(fam.lattice.is_modular().is_ok()));
        Ok(())
    }

    fn mvsp(&self, input: &Path, emit: Option<&PathBuf>) -> Outcome {
        let json: PartitionedMatrixJson = read(input)?;
        let a = json.to_matrix()?;
        let sol = mvsp_solve(&a, self.limit_u128(DEFAULT_MVSP_BUDGET))?;
        println!("optimum: {}", sol.optimum);
        println!("maximizers: {}", sol.oracle.members().len());
        if self.verbose > 0 {
            for t in sol.maximizers() {
                println!("  {}", tuple_label(&t));
            }
        }
        emit_json(emit, &MvspJson::from_solution(&sol))?;
        Ok(())
    }

    fn dm_decompose(
        &self,
        input: &Path,
        emit: Option<&PathBuf>,
        emit_transforms: bool,
        dot: Option<&PathBuf>,
    ) -> Outcome {
        let json: PartitionedMatrixJson = read(input)?;
        let a = json.to_matrix()?;
        let dm = dm_decompose(&a, self.limit_u128(DEFAULT_MVSP_BUDGET))?;
        let stages: Vec<String> = dm.stages.iter().map(|(r, c)| format!("{r}x{c}")).collect();
        println!("chain length: {}", dm.chain.len());
        println!("stages: {}", stages.join(" "));
        if self.verbose > 0 {
            for t in &dm.chain {
                println!("  {}", tuple_label(t));
            }
        }
        println!("transformed:\n{}", dm.transformed);
        if emit_transforms {
            println!("left:\n{}", dm.left);
            println!("right:\n{}", dm.right);
            println!("row permutation: {:?}", dm.row_perm);
            println!("column permutation: {:?}", dm.col_perm);
        }
        emit_json(emit, &DmJson::from_decomposition(&dm))?;
        emit_dot(dot, || {
            let labels: Vec<String> = dm.chain.iter().map(tuple_label).collect();
            chain_dot(&labels, "chain")
        })?;
        Ok(())
    }
}

fn tuple_label(t: &modsemi::gf::VanishingTuple) -> String {
    let part = |v: &[modsemi::gf::Subspace]| v.iter().map(|s| s.label()).collect::<Vec<_>>().join(" ");
    format!("X = ({}), Y = ({})", part(&t.x), part(&t.y))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let runner = Runner {
        verbose: cli.verbose,
        budget: cli.budget,
    };
    match runner.run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(witness)) => {
            println!("witness: {witness}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Budget => 3,
                ErrorKind::Precondition | ErrorKind::Internal => 1,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_line_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["modsemi", "recognize", "--input", "x", "--frobnicate"]).is_err());
        assert!(Cli::try_parse_from(["modsemi"]).is_err());
    }

    #[test]
    fn set_lists_parse() {
        let cli = Cli::try_parse_from(["modsemi", "closure", "--input", "s.txt", "--set", ""]).unwrap();
        assert!(matches!(cli.command, Command::Closure { ref set, .. } if set.is_empty()));
    }
}
