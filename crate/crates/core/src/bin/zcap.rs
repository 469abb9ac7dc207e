//! `zcap`: generate, verify and inspect Z-complementary pairs and array pairs.
//!
//! Exit codes: 0 success or claim verified, 1 claim falsified or
//! self-verification failed, 2 usage, parse or I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zcap_core::arrays::{max_zcz_rect, surface, zcap_check, RootArray};
use zcap_core::constructions::{
    corollary1_combine_with, lemma5_construct_with, lemma6_base, theorem1_combine_with,
    theorem2_direct_with, CombineOptions, Lemma5Params, Theorem2Params,
};
use zcap_core::format::{parse_documents, SequenceFile, VerifyReport};
use zcap_core::sequences::lemma4_extend;
use zcap_core::{gdj_pair, parse_anf, Companion, Error, Permutation, RootVector, ZqVector};

#[derive(Parser)]
#[command(
    name = "zcap",
    version,
    about = "Z-complementary pairs and array pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a pair and print it as two JSON documents.
    #[command(subcommand)]
    Gen(Gen),
    /// Verify a claimed zero-correlation zone, or measure the maximal ones.
    Verify(VerifyArgs),
    /// Write |ρ(S; u) + ρ(T; u)| for every shift as CSV.
    Surface(SurfaceArgs),
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the self-check of the generated pair.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args)]
struct GdjArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: usize,
    /// Permutation as a 1-based comma list; identity by default.
    #[arg(long)]
    pi: Option<Permutation>,
    /// Coefficients v0,v1,...,vm; zeros by default.
    #[arg(long = "v", value_delimiter = ',', allow_hyphen_values = true)]
    v: Vec<i64>,
}

impl GdjArgs {
    fn resolve(&self) -> (Permutation, Vec<i64>) {
        let pi = self
            .pi
            .clone()
            .unwrap_or_else(|| Permutation::identity(self.m));
        let v = if self.v.is_empty() {
            vec![0; self.m + 1]
        } else {
            self.v.clone()
        };
        (pi, v)
    }

    fn pair(&self, companion: Companion) -> zcap_core::Result<(ZqVector, ZqVector)> {
        let (pi, v) = self.resolve();
        gdj_pair(self.q, self.m, &pi, &v, companion)
    }
}

#[derive(Subcommand)]
enum Gen {
    /// Golay complementary pair (f, f + (q/2)x_π(1)) of length 2^m.
    Gdj {
        #[command(flatten)]
        params: GdjArgs,
        /// Use f + (q/2)x_π(m) as the companion.
        #[arg(long)]
        alt: bool,
        #[command(flatten)]
        output: Output,
    },
    /// (14L, 12L)-ZCP from a Golay pair read from --input or built from GDJ flags.
    Lemma4 {
        #[arg(long, conflicts_with_all = ["q", "m"])]
        input: Option<PathBuf>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        pi: Option<Permutation>,
        #[arg(long = "v", value_delimiter = ',', allow_hyphen_values = true)]
        v: Vec<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// The binary (14, 12)-ZCP base pair.
    Lemma6 {
        #[command(flatten)]
        output: Output,
    },
    /// Complex-valued array pair from a binary pair and a q-ary pair.
    Theorem1 {
        #[command(flatten)]
        inputs: CombineArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Z_q array pair from a binary pair and a q-ary pair.
    Corollary1 {
        #[command(flatten)]
        inputs: CombineArgs,
        #[command(flatten)]
        output: Output,
    },
    /// 2^n × L array pair with truncated length L.
    Lemma5 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t_prime: usize,
        /// The exponent v in the length 2^(m-1) + ... + 2^v.
        #[arg(long, default_value_t = 0)]
        tail: usize,
        #[arg(long)]
        pi1: Option<Permutation>,
        #[arg(long)]
        pi2: Option<Permutation>,
        /// Binary p0,p1,...,pm.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u8>,
        /// Coefficients v0,...,vn of the column pair.
        #[arg(long = "v", value_delimiter = ',', allow_hyphen_values = true)]
        v: Vec<i64>,
        /// Length bits d_(t'+1),...,d_(m-1).
        #[arg(long, value_delimiter = ',')]
        d: Vec<u8>,
        #[command(flatten)]
        output: Output,
    },
    /// (14·2^n) × 2^(m-n) array pair with zero-correlation ratio 6/7.
    Theorem2 {
        #[command(flatten)]
        params: GdjArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Associated sequence (n = 0) or array of an algebraic normal form.
    Anf {
        /// Polynomial such as "x1*x2 + x1*y1 + y3".
        #[arg(long)]
        anf: String,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct CombineArgs {
    /// File holding the binary pair (a, b).
    #[arg(long)]
    ab: PathBuf,
    /// File holding the pair (c, d).
    #[arg(long)]
    cd: PathBuf,
    #[arg(long, requires = "z2")]
    z1: Option<usize>,
    #[arg(long, requires = "z1")]
    z2: Option<usize>,
    /// Skip the input ZCP checks.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct PairInput {
    /// One file with both documents, or two files; "-" reads standard input.
    #[arg(required = true, num_args = 1..=2)]
    files: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: PairInput,
    /// Claimed width of a 1-D pair.
    #[arg(long, conflicts_with_all = ["z1", "z2", "max"])]
    z: Option<usize>,
    #[arg(long, requires = "z2", conflicts_with = "max")]
    z1: Option<usize>,
    #[arg(long, requires = "z1", conflicts_with = "max")]
    z2: Option<usize>,
    /// Only report the maximal rectangles.
    #[arg(long)]
    max: bool,
}

#[derive(Args)]
struct SurfaceArgs {
    #[command(flatten)]
    input: PairInput,
    /// CSV destination; standard output by default.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Falsified(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_) => Failure::Falsified(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(gen) => run_gen(gen),
        Command::Verify(args) => run_verify(args),
        Command::Surface(args) => run_surface(args),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Falsified(msg)) => {
            eprintln!("zcap: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("zcap: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_source(name: &str) -> CliResult<String> {
    if name == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(name).map_err(|e| Failure::Usage(format!("{name}: {e}")))
    }
}

fn read_pair(files: &[String]) -> CliResult<(SequenceFile, SequenceFile)> {
    let mut docs = Vec::new();
    for name in files {
        let parsed = parse_documents(&read_source(name)?)
            .map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
        docs.extend(parsed);
    }
    match <[SequenceFile; 2]>::try_from(docs) {
        Ok([a, b]) => Ok((a, b)),
        Err(docs) => Err(Failure::Usage(format!(
            "expected 2 documents, found {}",
            docs.len()
        ))),
    }
}

fn read_pair_file(path: &Path) -> CliResult<(SequenceFile, SequenceFile)> {
    read_pair(&[path.to_string_lossy().into_owned()])
}

fn emit(lines: &[String], out: Option<&Path>) -> CliResult<ExitCode> {
    let mut text = lines.join("\n");
    text.push('\n');
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_vectors(
    a: &ZqVector,
    b: &ZqVector,
    names: [&str; 2],
    output: &Output,
) -> CliResult<ExitCode> {
    emit(
        &[
            SequenceFile::from_vector(a, Some(names[0].into())).to_line(),
            SequenceFile::from_vector(b, Some(names[1].into())).to_line(),
        ],
        output.out.as_deref(),
    )
}

fn root_to_zq(v: &RootVector) -> zcap_core::Result<ZqVector> {
    ZqVector::new(v.modulus(), v.exponents().to_vec())
}

fn run_gen(gen: Gen) -> CliResult<ExitCode> {
    match gen {
        Gen::Gdj {
            params,
            alt,
            output,
        } => {
            let companion = if alt {
                Companion::Last
            } else {
                Companion::First
            };
            let (a, b) = params.pair(companion)?;
            emit_vectors(&a, &b, ["a", "b"], &output)
        }
        Gen::Lemma4 {
            input,
            q,
            m,
            pi,
            v,
            output,
        } => {
            let (a, b) = match (input, q, m) {
                (Some(path), _, _) => {
                    let (a, b) = read_pair_file(&path)?;
                    (a.to_root_vector()?, b.to_root_vector()?)
                }
                (None, Some(q), Some(m)) => {
                    let (a, b) = GdjArgs { q, m, pi, v }.pair(Companion::First)?;
                    (RootVector::from(&a), RootVector::from(&b))
                }
                _ => return Err(Failure::Usage("give --input or both --q and --m".into())),
            };
            let (s, t) = lemma4_extend(&a, &b)?;
            if !output.no_verify {
                let width = zcap_core::sequences::max_zcz(&s, &t)?.width;
                if width < 12 * a.len() {
                    return Err(Failure::Falsified(format!(
                        "output width {width} < {}",
                        12 * a.len()
                    )));
                }
            }
            emit_vectors(&root_to_zq(&s)?, &root_to_zq(&t)?, ["s", "t"], &output)
        }
        Gen::Lemma6 { output } => {
            let (a, b) = lemma6_base();
            emit_vectors(&a, &b, ["a", "b"], &output)
        }
        Gen::Theorem1 { inputs, output } => {
            let (ab, cd, opts) = load_combine_inputs(&inputs, &output)?;
            let out = theorem1_combine_with(
                &ab.0.to_root_vector()?,
                &ab.1.to_root_vector()?,
                &cd.0.to_root_vector()?,
                &cd.1.to_root_vector()?,
                &opts,
            )?;
            emit(
                &[
                    SequenceFile::from_root_array(&out.s, Some("S".into())).to_line(),
                    SequenceFile::from_root_array(&out.t, Some("T".into())).to_line(),
                ],
                output.out.as_deref(),
            )
        }
        Gen::Corollary1 { inputs, output } => {
            let (ab, cd, opts) = load_combine_inputs(&inputs, &output)?;
            let out = corollary1_combine_with(
                &ab.0.to_zq_vector()?,
                &ab.1.to_zq_vector()?,
                &cd.0.to_zq_vector()?,
                &cd.1.to_zq_vector()?,
                &opts,
            )?;
            emit_arrays(&out.s, &out.t, &output)
        }
        Gen::Lemma5 {
            q,
            n,
            m,
            t_prime,
            tail,
            pi1,
            pi2,
            p,
            v,
            d,
            output,
        } => {
            let mut params = Lemma5Params::simple(q, n, m, t_prime, tail)?;
            if let Some(pi1) = pi1 {
                params.pi1 = pi1;
            }
            if let Some(pi2) = pi2 {
                params.pi2 = pi2;
            }
            if !p.is_empty() {
                params.p = p;
            }
            if !v.is_empty() {
                params.coeffs = v;
            }
            if !d.is_empty() {
                params.d = d;
            }
            let out = lemma5_construct_with(&params, !output.no_verify)?;
            emit_arrays(&out.s, &out.t, &output)
        }
        Gen::Theorem2 { params, n, output } => {
            let (pi, v) = params.resolve();
            let p = Theorem2Params::new(params.q, params.m, n, pi, v)?;
            let out = theorem2_direct_with(&p, !output.no_verify)?;
            emit_arrays(&out.s, &out.t, &output)
        }
        Gen::Anf {
            anf,
            q,
            n,
            m,
            rows,
            cols,
            output,
        } => {
            let f = parse_anf(&anf, q, n, m)?;
            let cols = cols.unwrap_or(1 << m);
            let doc = if n == 0 && rows.unwrap_or(1) == 1 {
                SequenceFile::from_vector(&f.as_gbf().to_sequence(cols)?, Some("f".into()))
            } else {
                SequenceFile::from_array(
                    &f.to_array(rows.unwrap_or(1 << n), cols)?,
                    Some("f".into()),
                )
            };
            emit(&[doc.to_line()], output.out.as_deref())
        }
    }
}

fn emit_arrays(
    s: &zcap_core::Zq2DArray,
    t: &zcap_core::Zq2DArray,
    output: &Output,
) -> CliResult<ExitCode> {
    emit(
        &[
            SequenceFile::from_array(s, Some("s".into())).to_line(),
            SequenceFile::from_array(t, Some("t".into())).to_line(),
        ],
        output.out.as_deref(),
    )
}

type DocPair = (SequenceFile, SequenceFile);

fn load_combine_inputs(
    inputs: &CombineArgs,
    output: &Output,
) -> CliResult<(DocPair, DocPair, CombineOptions)> {
    let ab = read_pair_file(&inputs.ab)?;
    let cd = read_pair_file(&inputs.cd)?;
    let opts = CombineOptions {
        claimed: inputs.z1.zip(inputs.z2),
        force: inputs.force,
        verify: !output.no_verify,
    };
    Ok((ab, cd, opts))
}

/// Both documents as root arrays over a common modulus.
fn load_arrays(files: &[String]) -> CliResult<(RootArray, RootArray, bool)> {
    let (a, b) = read_pair(files)?;
    let one_dim = a.is_one_dimensional() && b.is_one_dimensional();
    let (s, t) = (a.to_root_array()?, b.to_root_array()?);
    let (ms, mt) = (s.modulus() as u64, t.modulus() as u64);
    let lcm = ms / gcd(ms, mt) * mt;
    let lcm = u32::try_from(lcm).map_err(|_| Failure::Usage("moduli too large".into()))?;
    let (s, t) = (s.lift_to(lcm)?, t.lift_to(lcm)?);
    if (s.rows(), s.cols()) != (t.rows(), t.cols()) {
        return Err(Failure::Usage(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            s.rows(),
            s.cols(),
            t.rows(),
            t.cols()
        )));
    }
    Ok((s, t, one_dim))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn run_verify(args: VerifyArgs) -> CliResult<ExitCode> {
    let (s, t, one_dim) = load_arrays(&args.input.files)?;
    let claimed = match (args.z, args.z1.zip(args.z2)) {
        (Some(_), _) if !one_dim => {
            return Err(Failure::Usage(
                "--z applies to 1-D pairs; use --z1/--z2".into(),
            ))
        }
        (Some(z), _) => Some((z, 1)),
        (None, rect) => rect,
    };
    if let Some((z1, z2)) = claimed {
        if z1 == 0 || z2 == 0 {
            return Err(Failure::Usage("claimed widths must be positive".into()));
        }
    }
    let frontier = max_zcz_rect(&s, &t)?;
    let verified = match claimed {
        Some((z1, z2)) if z1 <= s.rows() && z2 <= s.cols() => zcap_check(&s, &t, z1, z2)?.verified,
        Some(_) => false,
        None => true,
    };
    let report = VerifyReport {
        inputs: args.input.files.clone(),
        rows: s.rows(),
        cols: s.cols(),
        claimed,
        verified,
        peak: 2 * (s.rows() * s.cols()) as i64,
        zcz_ratio: frontier.best_ratio().to_string(),
        frontier: frontier.rectangles,
    };
    println!("{}", report.to_json());
    Ok(if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_surface(args: SurfaceArgs) -> CliResult<ExitCode> {
    let (s, t, _) = load_arrays(&args.input.files)?;
    let grid = surface(&s, &t)?;
    match args.out {
        Some(path) => {
            let file = fs::File::create(&path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            grid.write_csv(io::BufWriter::new(file))?;
        }
        None => grid.write_csv(io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}
