//! Command-line front end: argument parsing, file I/O and report emission.
//! Reports are deterministic `key=value` lines; exit codes are 0 (success),
//! 1 (semantic failure) and 2 (malformed input).

pub mod formats;
pub mod suite;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::boolfn::{BooleanFunction, SpectrumTag};
use crate::classify::{
    gmm_sharp_level, has_p1, has_p1star, is_in_m_sharp, p1star_violations,
    unique_max_m_subspace_criterion,
};
use crate::gf2::{enumerate_subspaces, Subspace, VectorialMap};
use crate::gmm::{
    admissible_h, dual_closed_form, gmm_from_phi, gmm_from_realized,
    outsidein_companions, qg_construction, realize, sample_admissible_h,
};
use crate::partitions::{classify_partition, enumerate_partitions, EnumMode, PartitionTag};
use crate::{Error, Result};

use formats::ParseError;

#[derive(Parser)]
#[command(name = "bentforge", about = "Bent function construction and classification toolkit")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores,
    /// or the BENTFORGE_THREADS environment variable).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate or classify partitions of F_2^(m+1) into 2-flats.
    Partitions {
        #[command(subcommand)]
        command: PartitionsCommand,
    },
    /// Build and analyze bent functions of the form x.phi(y) + h(y).
    Bent {
        #[command(subcommand)]
        command: BentCommand,
    },
    /// M-subspace analysis of a Boolean function.
    Classify(ClassifyArgs),
    /// Derivative properties of a vectorial map.
    Props(PropsArgs),
    /// Bent 4-concatenation constructions.
    Construct(ConstructArgs),
    /// Run the reproduction suite.
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand)]
enum PartitionsCommand {
    /// Enumerate all partitions for a given m.
    Enum {
        #[arg(short, long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Mode::Procedure)]
        mode: Mode,
        /// Write the partitions to a file (blank-line separated).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the partitions in a file.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Procedure,
    Exhaustive,
    Clique,
}

impl From<Mode> for EnumMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Procedure => EnumMode::Procedure,
            Mode::Exhaustive => EnumMode::Exhaustive,
            Mode::Clique => EnumMode::Clique,
        }
    }
}

#[derive(Subcommand)]
enum BentCommand {
    /// Build x.phi(y) + h(y) from a partition (or map) file and an h choice.
    Build {
        /// Partition file; phi maps flat i (in file order) to i.
        #[arg(long, conflicts_with = "phi")]
        partition: Option<PathBuf>,
        /// Map file for phi; its preimages must be 2-flats.
        #[arg(long)]
        phi: Option<PathBuf>,
        /// Seeded draw of an admissible h.
        #[arg(long, conflicts_with = "selector")]
        seed: Option<u64>,
        /// Explicit per-flat h choice, e.g. "1@0,3@2,...".
        #[arg(long)]
        selector: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the Walsh spectrum of a function file.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// Fail (exit 1) unless the function has this spectrum class.
        #[arg(long, value_enum)]
        expect: Option<ExpectClass>,
    },
    /// Compute the dual of a bent function, by WHT and in closed form.
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectClass {
    Bent,
    Semibent,
    Fivevalued,
    Other,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Count and witness the M-subspaces of this dimension.
    #[arg(long, group = "what")]
    msubspaces: Option<usize>,
    /// Test completed Maiorana-McFarland membership.
    #[arg(long, group = "what")]
    msharp: bool,
    /// Smallest k with f in the completed GMM class of level n/2+k.
    #[arg(long, group = "what")]
    gmmlevel: bool,
}

#[derive(Args)]
struct PropsArgs {
    /// Map file.
    #[arg(long, conflicts_with = "pi")]
    map: Option<PathBuf>,
    /// pi-spec, e.g. "monomial:m=4,d=7,alpha=g^6" or "table:<path>".
    #[arg(long)]
    pi: Option<String>,
    /// Property (P1): permutation with no vanishing second derivative.
    #[arg(long, group = "what")]
    p1: bool,
    /// Property (P1*): the rectangular extension of (P1).
    #[arg(long, group = "what")]
    p1star: bool,
    /// Unique-maximal-M-subspace criterion (requires (P1*)).
    #[arg(long, group = "what")]
    unique: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// Extend a bent x.phi(y)+h(y) file to a bent function two variables
    /// up that lies in the completed MM class.
    #[arg(long, group = "which")]
    outsidein: Option<PathBuf>,
    /// Build q||g||q||(g+1) from a (P1) permutation pi-spec.
    #[arg(long, group = "which")]
    qg: Option<String>,
    /// Concatenate four function files.
    #[arg(long, group = "which", num_args = 4)]
    concat: Option<Vec<PathBuf>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, default_value = "paper-m4")]
    suite: String,
    /// Run a single criterion, by name or 1-based index.
    #[arg(long)]
    criterion: Option<String>,
    /// Replace seeded subsamples by the complete sweeps.
    #[arg(long)]
    full: bool,
}

/// Failure modes of a command, mapped to exit codes.
enum CmdError {
    /// Exit 2: unreadable or malformed input.
    Input(String),
    /// Exit 1: a well-formed input failed a semantic check.
    Semantic(String),
}

impl From<ParseError> for CmdError {
    fn from(e: ParseError) -> Self {
        CmdError::Input(e.to_string())
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError::Semantic(e.to_string())
    }
}

type CmdResult = std::result::Result<(), CmdError>;

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes, not input errors
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_threads(cli.threads);
    let outcome = match cli.command {
        Command::Partitions { command } => match command {
            PartitionsCommand::Enum { m, mode, out } => cmd_partitions_enum(m, mode, out),
            PartitionsCommand::Classify { input } => cmd_partitions_classify(&input),
        },
        Command::Bent { command } => match command {
            BentCommand::Build {
                partition,
                phi,
                seed,
                selector,
                out,
            } => cmd_bent_build(partition, phi, seed, selector, out),
            BentCommand::Check { input, expect } => cmd_bent_check(&input, expect),
            BentCommand::Dual { input, out } => cmd_bent_dual(&input, out),
        },
        Command::Classify(args) => cmd_classify(&args),
        Command::Props(args) => cmd_props(&args),
        Command::Construct(args) => cmd_construct(&args),
        Command::Reproduce(args) => cmd_reproduce(&args),
    };
    match outcome {
        Ok(()) => 0,
        Err(CmdError::Semantic(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let threads = flag.or_else(|| {
        std::env::var("BENTFORGE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

fn read_file(path: &PathBuf) -> std::result::Result<String, CmdError> {
    std::fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &PathBuf, text: &str) -> CmdResult {
    std::fs::write(path, text)
        .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", path.display())))
}

fn basis_str(s: &Subspace) -> String {
    let w = s.ambient();
    s.basis()
        .iter()
        .map(|b| format!("{:0w$b}", b))
        .collect::<Vec<_>>()
        .join(",")
}

fn tag_str(tag: SpectrumTag) -> &'static str {
    match tag {
        SpectrumTag::Bent => "Bent",
        SpectrumTag::SemiBent => "SemiBent",
        SpectrumTag::FiveValued => "FiveValued",
        SpectrumTag::Other => "Other",
    }
}

fn cmd_partitions_enum(m: usize, mode: Mode, out: Option<PathBuf>) -> CmdResult {
    let mode_name = match mode {
        Mode::Procedure => "procedure",
        Mode::Exhaustive => "exhaustive",
        Mode::Clique => "clique",
    };
    let partitions = match enumerate_partitions(m, mode.into()) {
        Ok(ps) => ps,
        Err(e) => return Err(CmdError::Input(e.to_string())),
    };
    let (mut proper, mut trivial) = (0usize, 0usize);
    for p in &partitions {
        match classify_partition(p).tag {
            PartitionTag::Proper => proper += 1,
            PartitionTag::Trivial => trivial += 1,
            PartitionTag::NonProperNonTrivial => {}
        }
    }
    println!("m={m} mode={mode_name}");
    println!("total={}", partitions.len());
    println!("proper={proper}");
    println!("nonproper={}", partitions.len() - proper);
    println!("trivial={trivial}");
    if let Some(path) = out {
        write_file(&path, &formats::write_partitions(&partitions))?;
    }
    Ok(())
}

fn cmd_partitions_classify(input: &PathBuf) -> CmdResult {
    let partitions = formats::parse_partitions(&read_file(input)?)?;
    let (mut proper, mut trivial) = (0usize, 0usize);
    for (i, p) in partitions.iter().enumerate() {
        let class = classify_partition(p);
        let tag = match class.tag {
            PartitionTag::Proper => {
                proper += 1;
                "Proper"
            }
            PartitionTag::Trivial => {
                trivial += 1;
                "Trivial"
            }
            PartitionTag::NonProperNonTrivial => "NonProperNonTrivial",
        };
        println!(
            "index={i} class={tag} common={}",
            basis_str(&class.common_directions)
        );
    }
    println!("total={}", partitions.len());
    println!("proper={proper}");
    println!("nonproper={}", partitions.len() - proper);
    println!("trivial={trivial}");
    Ok(())
}

fn cmd_bent_build(
    partition: Option<PathBuf>,
    phi_path: Option<PathBuf>,
    seed: Option<u64>,
    selector: Option<String>,
    out: Option<PathBuf>,
) -> CmdResult {
    let (p, phi) = match (&partition, &phi_path) {
        (Some(path), None) => {
            let p = formats::parse_partition(&read_file(path)?)?;
            let phi = crate::gmm::phi_from_partition(&p);
            (p, phi)
        }
        (None, Some(path)) => {
            let phi = formats::parse_map(&read_file(path)?)?;
            let p = crate::gmm::partition_from_phi(&phi)?;
            (p, phi)
        }
        _ => {
            return Err(CmdError::Input(
                "exactly one of --partition and --phi is required".into(),
            ))
        }
    };
    let h = match (seed, &selector) {
        (_, Some(spec)) => admissible_h(&p, &formats::parse_selector(spec)?)
            .map_err(|e| CmdError::Input(e.to_string()))?,
        (seed, None) => sample_admissible_h(&p, seed.unwrap_or(0)),
    };
    let f = gmm_from_phi(&phi, &h)?;
    let class = f.realized().classify_spectrum();
    println!("m={}", f.m());
    println!("n={}", f.realized().variables());
    println!("class={}", tag_str(class.tag));
    println!("bent={}", f.is_bent());
    if let Some(path) = out {
        write_file(&path, &formats::write_truth_table(f.realized()))?;
    }
    Ok(())
}

fn cmd_bent_check(input: &PathBuf, expect: Option<ExpectClass>) -> CmdResult {
    let f = formats::parse_function(&read_file(input)?)?;
    let class = f.classify_spectrum();
    let values: Vec<String> = class.distinct_abs_values.iter().map(u32::to_string).collect();
    println!("n={}", f.variables());
    println!("class={}", tag_str(class.tag));
    println!("abs_walsh_values={}", values.join(","));
    println!("weight={}", f.weight());
    println!("degree={}", f.degree());
    if let Some(expect) = expect {
        let wanted = match expect {
            ExpectClass::Bent => SpectrumTag::Bent,
            ExpectClass::Semibent => SpectrumTag::SemiBent,
            ExpectClass::Fivevalued => SpectrumTag::FiveValued,
            ExpectClass::Other => SpectrumTag::Other,
        };
        if class.tag != wanted {
            return Err(CmdError::Semantic(format!(
                "expected class {} but found {}",
                tag_str(wanted),
                tag_str(class.tag)
            )));
        }
    }
    Ok(())
}

fn cmd_bent_dual(input: &PathBuf, out: Option<PathBuf>) -> CmdResult {
    let f = formats::parse_function(&read_file(input)?)?;
    let wht_dual = f.dual()?;
    println!("n={}", f.variables());
    // the closed form needs the x.phi(y)+h(y) shape of the table
    match gmm_from_realized(&f) {
        Ok(g) => {
            let closed = dual_closed_form(&g)?;
            println!("closedform=available");
            println!("duals-equal={}", closed == wht_dual);
        }
        Err(Error::NotGmmForm) => println!("closedform=unavailable"),
        Err(e) => return Err(e.into()),
    }
    if let Some(path) = out {
        write_file(&path, &formats::write_truth_table(&wht_dual))?;
    }
    Ok(())
}

fn cmd_classify(args: &ClassifyArgs) -> CmdResult {
    let f = formats::parse_function(&read_file(&args.input)?)?;
    println!("n={}", f.variables());
    if let Some(k) = args.msubspaces {
        let subs = crate::classify::find_m_subspaces(&f, k);
        println!("dim={k}");
        println!("count={}", subs.len());
        for s in subs.iter().take(8) {
            println!("witness={}", basis_str(s));
        }
    } else if args.msharp {
        match is_in_m_sharp(&f)? {
            Some(w) => {
                println!("msharp=true");
                println!("witness={}", basis_str(&w));
            }
            None => println!("msharp=false"),
        }
    } else if args.gmmlevel {
        println!("gmmlevel={}", gmm_sharp_level(&f)?);
    } else {
        return Err(CmdError::Input(
            "one of --msubspaces, --msharp, --gmmlevel is required".into(),
        ));
    }
    Ok(())
}

fn load_map(args: &PropsArgs) -> std::result::Result<VectorialMap, CmdError> {
    match (&args.map, &args.pi) {
        (Some(path), None) => Ok(formats::parse_map(&read_file(path)?)?),
        (None, Some(spec)) => Ok(formats::parse_pi_spec(spec)?),
        _ => Err(CmdError::Input(
            "exactly one of --map and --pi is required".into(),
        )),
    }
}

fn cmd_props(args: &PropsArgs) -> CmdResult {
    let map = load_map(args)?;
    println!("in={} out={}", map.in_dim(), map.out_dim());
    if args.p1 {
        println!("p1={}", has_p1(&map)?);
    } else if args.p1star {
        let total = enumerate_subspaces(map.in_dim(), 2).len();
        let violations = p1star_violations(&map);
        println!("p1star={}", violations.is_empty());
        println!("checked={}/{total}", total - violations.len());
        for v in violations.iter().take(8) {
            println!("violation={}", basis_str(v));
        }
    } else if args.unique {
        println!("p1star={}", has_p1star(&map));
        println!("unique={}", unique_max_m_subspace_criterion(&map)?);
    } else {
        return Err(CmdError::Input(
            "one of --p1, --p1star, --unique is required".into(),
        ));
    }
    Ok(())
}

fn construct_summary(f: &BooleanFunction) -> Result<()> {
    println!("n={}", f.variables());
    println!("bent={}", f.is_bent());
    match is_in_m_sharp(f)? {
        Some(w) => {
            println!("msharp=true");
            println!("witness={}", basis_str(&w));
        }
        None => println!("msharp=false"),
    }
    Ok(())
}

fn cmd_construct(args: &ConstructArgs) -> CmdResult {
    let f = if let Some(path) = &args.outsidein {
        let f1 = formats::parse_function(&read_file(path)?)?;
        let g1 = gmm_from_realized(&f1)?;
        let (h2, h3, h4) = outsidein_companions(&g1)?;
        let parts: Vec<BooleanFunction> = [g1.h(), &h2, &h3, &h4]
            .iter()
            .map(|h| realize(g1.phi(), h))
            .collect();
        BooleanFunction::concat4([&parts[0], &parts[1], &parts[2], &parts[3]])?
    } else if let Some(spec) = &args.qg {
        qg_construction(&formats::parse_pi_spec(spec)?)?
    } else if let Some(paths) = &args.concat {
        let parts: Vec<BooleanFunction> = paths
            .iter()
            .map(|p| Ok(formats::parse_function(&read_file(p)?)?))
            .collect::<std::result::Result<_, CmdError>>()?;
        let f = BooleanFunction::concat4([&parts[0], &parts[1], &parts[2], &parts[3]])?;
        if !f.is_bent() {
            println!("n={}", f.variables());
            println!("bent=false");
            return Err(CmdError::Semantic("concatenation is not bent".into()));
        }
        f
    } else {
        return Err(CmdError::Input(
            "one of --outsidein, --qg, --concat is required".into(),
        ));
    };
    construct_summary(&f)?;
    if let Some(path) = &args.out {
        write_file(path, &formats::write_truth_table(&f))?;
    }
    Ok(())
}

fn cmd_reproduce(args: &ReproduceArgs) -> CmdResult {
    if args.suite != "paper-m4" {
        return Err(CmdError::Input(format!("unknown suite `{}`", args.suite)));
    }
    if let Some(c) = &args.criterion {
        if !suite::CRITERIA.contains(&c.as_str())
            && !(1..=suite::CRITERIA.len()).contains(&c.parse().unwrap_or(0))
        {
            return Err(CmdError::Input(format!("unknown criterion `{c}`")));
        }
    }
    let results = suite::run(args.criterion.as_deref(), args.full);
    let mut failed = 0usize;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion={} name={} status={status} {}", r.index, r.name, r.detail);
        if !r.pass {
            failed += 1;
        }
    }
    println!("criteria={} failed={failed}", results.len());
    if failed > 0 {
        return Err(CmdError::Semantic(format!("{failed} criteria failed")));
    }
    Ok(())
}
