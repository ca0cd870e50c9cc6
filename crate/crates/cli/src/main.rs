use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use affine_automata::analysis::{
    isolation_gap, lower_density, poly_members, prime_sieve, progression_scan, rational_angle_detect, spectrum,
    unary_scan_with, Polynomial, ProgressionSpec, ScanOptions, DEFAULT_EXACT_BUDGET,
};
use affine_automata::combinators::{self, MixWeights, DEFAULT_STATE_CEILING};
use affine_automata::format::{self, FormatError};
use affine_automata::gallery::{self, Dfa};
use affine_automata::normal_forms::{bounded_form, canonical_initial, normalize_pipeline};
use affine_automata::rational::{parse_rational, to_decimal_string};
use affine_automata::{words_up_to, Afa, Composite, CutpointSpec, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "afa", version, about = "Affine finite automata with exact rational arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document and report every invariant violation.
    Validate { file: PathBuf },
    /// Print the exact acceptance value of a word and its decimal expansion.
    Eval {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Print whether the value of a word strictly exceeds the cutpoint.
    Member {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, value_parser = parse_rational)]
        cutpoint: Rational,
    },
    /// Build a new automaton from existing ones.
    Compose(ComposeArgs),
    /// Rewrite an automaton into a normal form.
    Normalize(NormalizeArgs),
    /// Write one of the built-in automata.
    Gallery(GalleryArgs),
    /// Numerical diagnostics.
    #[command(subcommand)]
    Analyze(Analyze),
}

#[derive(Clone, Copy, ValueEnum)]
enum ComposeOp {
    Tensor,
    Convex,
    Complement,
    Amplify,
    Shift,
    Union,
    Intersect,
}

impl ComposeOp {
    fn arity(self) -> usize {
        match self {
            ComposeOp::Complement | ComposeOp::Amplify | ComposeOp::Shift => 1,
            _ => 2,
        }
    }
}

#[derive(Args)]
struct ComposeArgs {
    op: ComposeOp,
    #[arg(required = true, num_args = 1..=2)]
    files: Vec<PathBuf>,
    /// Weight of the first automaton for `convex`.
    #[arg(long, value_parser = parse_rational)]
    alpha: Option<Rational>,
    /// Amplification rounds for `amplify`.
    #[arg(long, default_value_t = 1)]
    rounds: u32,
    #[arg(long, value_parser = parse_rational)]
    from: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    to: Option<Rational>,
    /// Refuse results with more states than this.
    #[arg(long, default_value_t = DEFAULT_STATE_CEILING)]
    max_states: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalForm {
    Canonical,
    Bounded,
    Full,
}

#[derive(Args)]
struct NormalizeArgs {
    form: NormalForm,
    file: PathBuf,
    /// Cutpoint moved to 1/2 by `full`.
    #[arg(long, value_parser = parse_rational)]
    cutpoint: Option<Rational>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GalleryArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(gallery::NAMES))]
    name: String,
    /// Value of `constant`.
    #[arg(long, value_parser = parse_rational, default_value = "1/2")]
    alpha: Rational,
    /// Alphabet of `constant`.
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// Amplification rounds per counter in `eq3`.
    #[arg(long, default_value_t = gallery::EQ3_ROUNDS)]
    rounds: u32,
    #[arg(long, default_value_t = DEFAULT_STATE_CEILING)]
    max_states: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lang {
    Prime,
    Poly,
}

#[derive(Subcommand)]
enum Analyze {
    /// Lower density of the primes or of the values of a polynomial.
    Density {
        #[arg(long)]
        lang: Lang,
        /// Polynomial coefficients, constant term first.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<u64>,
        #[arg(long)]
        max: u64,
    },
    /// CSV of `F(n) = f(a^n)` for `n = 0..=max-n`.
    Scan {
        file: PathBuf,
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        exact_budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// CSV of `F(h + iQ)` for `i < count`.
    Progression {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        h: u64,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        exact: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Eigenvalues of one transition matrix.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        symbol: char,
        /// Largest denominator reported for rational angles.
        #[arg(long, default_value_t = 64)]
        max_den: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Separation around a cutpoint over all words up to a length.
    Gap {
        file: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        cutpoint: Rational,
        #[arg(long)]
        max_len: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Core(#[from] affine_automata::Error),
    #[error("write failed: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Format {
                source: FormatError::Invalid(_),
                ..
            } => 1,
            CliError::Core(affine_automata::Error::InvalidAutomaton(_)) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> CliResult<Afa> {
    format::parse(&read_text(path)?).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => Ok(io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn emit_afa(a: &Afa, output: Option<&Path>) -> CliResult<()> {
    emit(&format::serialize(a), output)
}

fn require<T: Clone>(value: &Option<T>, flag: &str, op: &str) -> CliResult<T> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("{op} needs {flag}")))
}

fn compose(args: &ComposeArgs) -> CliResult<()> {
    let op_name = args.op.to_possible_value().expect("no skipped variants").get_name().to_string();
    if args.files.len() != args.op.arity() {
        return Err(CliError::Usage(format!(
            "{op_name} takes {} input file(s), got {}",
            args.op.arity(),
            args.files.len()
        )));
    }
    let inputs = args.files.iter().map(|p| load(p)).collect::<CliResult<Vec<_>>>()?;
    let leaf = |i: usize| Composite::leaf(inputs[i].clone());
    let expr = match args.op {
        ComposeOp::Tensor => leaf(0).tensor(leaf(1))?,
        ComposeOp::Convex => {
            let alpha = require(&args.alpha, "--alpha", &op_name)?;
            leaf(0).convex(leaf(1), MixWeights::from_alpha(alpha)?)?
        }
        ComposeOp::Complement => leaf(0).complement(),
        ComposeOp::Amplify => leaf(0).amplify_rounds(args.rounds),
        ComposeOp::Union => leaf(0).union(leaf(1))?,
        ComposeOp::Intersect => leaf(0).intersection(leaf(1))?,
        ComposeOp::Shift => {
            let from = require(&args.from, "--from", &op_name)?;
            let to = require(&args.to, "--to", &op_name)?;
            let out = combinators::shift_cutpoint(&inputs[0], &from, &to)?;
            return emit_afa(&out, args.output.as_deref());
        }
    };
    emit_afa(&expr.materialize(args.max_states)?, args.output.as_deref())
}

fn normalize(args: &NormalizeArgs) -> CliResult<()> {
    let a = load(&args.file)?;
    let out = match args.form {
        NormalForm::Canonical => canonical_initial(&a)?,
        NormalForm::Bounded => bounded_form(&a)?,
        NormalForm::Full => normalize_pipeline(&a, &require(&args.cutpoint, "--cutpoint", "full")?)?,
    };
    emit_afa(&out, args.output.as_deref())
}

fn gallery_cmd(args: &GalleryArgs) -> CliResult<()> {
    let a = match args.name.as_str() {
        "constant" => {
            let alphabet: Vec<char> = args.alphabet.chars().collect();
            gallery::constant_pfa(&alphabet, args.alpha.clone())?
        }
        "eq" => gallery::eq_afa(),
        "eq3" => gallery::eq3_with_rounds(args.rounds).materialize(args.max_states)?,
        "dfa-parity" => gallery::dfa_embed(&Dfa::even_a())?,
        other => return Err(CliError::Usage(format!("unknown gallery automaton {other:?}"))),
    };
    emit_afa(&a, args.output.as_deref())
}

fn write_csv(scan: &affine_automata::analysis::UnaryScan, output: Option<&Path>) -> CliResult<()> {
    let mut buf = Vec::new();
    scan.write_csv(&mut buf)
        .map_err(|e| CliError::Output(io::Error::other(e)))?;
    emit(&String::from_utf8(buf).expect("csv is utf-8"), output)
}

fn analyze(cmd: &Analyze) -> CliResult<()> {
    let mut out = String::new();
    match cmd {
        Analyze::Density { lang, coeffs, max } => {
            let limit = usize::try_from(*max).map_err(|_| CliError::Usage("--max too large".into()))?;
            let members = match lang {
                Lang::Prime => prime_sieve(limit),
                Lang::Poly => poly_members(&Polynomial::new(coeffs.clone())?, limit),
            };
            let r = lower_density(|k| members[k as usize], *max);
            out.push_str(&format!(
                "n: {}\nmembers: {}\nratio_at_n: {:.10}\nrunning_min: {:.10}\n",
                r.n, r.members, r.ratio_at_n, r.running_min
            ));
        }
        Analyze::Scan {
            file,
            max_n,
            exact,
            exact_budget,
            output,
        } => {
            let opts = ScanOptions {
                exact: *exact,
                exact_budget: *exact_budget,
            };
            let scan = unary_scan_with(&load(file)?, *max_n, &opts)?;
            return write_csv(&scan, output.as_deref());
        }
        Analyze::Progression {
            file,
            h,
            q,
            count,
            exact,
            output,
        } => {
            let opts = ScanOptions {
                exact: *exact,
                ..ScanOptions::default()
            };
            let spec = ProgressionSpec::new(*h, *q, *count)?;
            let scan = progression_scan(&load(file)?, &spec, &opts)?;
            return write_csv(&scan, output.as_deref());
        }
        Analyze::Spectrum {
            file,
            symbol,
            max_den,
            tol,
        } => {
            let a = load(file)?;
            out.push_str("re,im,modulus,angle,rational_angle\n");
            for e in spectrum(a.transition(*symbol)?)? {
                let rational = rational_angle_detect(e.angle, *max_den, *tol)
                    .map(|(p, q)| format!("{p}/{q}"))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{:.12},{:.12},{:.12},{:.12},{}\n",
                    e.re, e.im, e.modulus, e.angle, rational
                ));
            }
        }
        Analyze::Gap { file, cutpoint, max_len } => {
            let a = load(file)?;
            CutpointSpec::new(cutpoint.clone())?;
            let r = isolation_gap(&a, cutpoint, &words_up_to(a.alphabet(), *max_len))?;
            let show = |x: &Option<Rational>| x.as_ref().map_or("none".to_string(), ToString::to_string);
            out.push_str(&format!(
                "accepted: {}\nrejected: {}\nmin_accepted: {}\nmax_rejected: {}\ngap: {}\n",
                r.accepted,
                r.rejected,
                show(&r.min_accepted),
                show(&r.max_rejected),
                show(&r.gap)
            ));
        }
    }
    emit(&out, None)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let text = read_text(&file)?;
            let a = match format::parse_unvalidated(&text) {
                Ok(a) => a,
                Err(e) => {
                    println!("{}: {e}", file.display());
                    return Ok(ExitCode::from(1));
                }
            };
            let violations = a.validate();
            if violations.is_empty() {
                let alphabet: String = a.alphabet().iter().collect();
                println!("ok: {} automaton, {} states, alphabet {alphabet}", a.kind(), a.state_count());
                return Ok(ExitCode::SUCCESS);
            }
            for v in &violations {
                println!("{}: {v}", file.display());
            }
            Ok(ExitCode::from(1))
        }
        Command::Eval { file, word } => {
            let v = load(&file)?.accept_value(&word)?;
            println!("{v} ({})", to_decimal_string(&v, 10));
            Ok(ExitCode::SUCCESS)
        }
        Command::Member { file, word, cutpoint } => {
            let spec = CutpointSpec::new(cutpoint)?;
            let inside = load(&file)?.member(&word, &spec)?;
            println!("{inside}");
            Ok(if inside { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Compose(args) => compose(&args).map(|_| ExitCode::SUCCESS),
        Command::Normalize(args) => normalize(&args).map(|_| ExitCode::SUCCESS),
        Command::Gallery(args) => gallery_cmd(&args).map(|_| ExitCode::SUCCESS),
        Command::Analyze(cmd) => analyze(&cmd).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("afa: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
