use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use palg::cli::{self, Common, Format, Outcome, EXIT_MALFORMED};
use palg::exec::Mode;
use palg::random::Bounds;
use palg::structure::FingerprintBounds;

#[derive(Parser)]
#[command(name = "palg", version, about = "Exact computation with central simple Poisson algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,
    /// Include wall-clock time in JSON reports (breaks byte determinism).
    #[arg(long, global = true)]
    timing: bool,
    /// Run sample checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, env = "PALG_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_deg: u32,
    #[arg(long, default_value_t = 4)]
    max_terms: usize,
    /// Bound on grade coordinates of random terms.
    #[arg(long, default_value_t = 3)]
    coord: i64,
}

impl SampleArgs {
    fn bounds(&self) -> Bounds {
        Bounds { max_terms: self.max_terms, coord: self.coord, max_deg: self.max_deg }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the lattice and form conditions and simplicity.
    Validate { config: PathBuf },
    /// Check skew symmetry, Jacobi, Leibniz and oracle agreement on random samples.
    Axioms {
        config: PathBuf,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Print the bracket of two elements (`-` reads one of them from stdin).
    Bracket {
        /// Instance file.
        config: PathBuf,
        /// File holding the left element, e.g. `2*t1^2 x^{(0,1)} - 1/3`.
        u: PathBuf,
        /// File holding the right element.
        v: PathBuf,
    },
    /// Compute structural invariants and reconstruct the shape.
    Fingerprint {
        config: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = 2)]
        t_bound: u32,
    },
    /// Build an isomorphism from group data.
    IsoBuild {
        source: PathBuf,
        target: PathBuf,
        data: PathBuf,
        /// Also write the persisted map to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a persisted isomorphism.
    IsoVerify {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        #[command(flatten)]
        sample: SampleArgs,
    },
}

fn read(path: &PathBuf, stdin_used: &mut bool) -> Result<String, Outcome> {
    let fail = |msg: String| Outcome { code: EXIT_MALFORMED, stdout: String::new(), stderr: format!("error: {msg}\n") };
    if path.as_os_str() == "-" {
        if *stdin_used {
            return Err(fail("stdin can be used for only one input".into()));
        }
        *stdin_used = true;
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| fail(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Outcome {
    let common = Common {
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        timing: cli.timing,
        mode: if cli.sequential { Mode::Sequential } else { Mode::default() },
    };
    let mut stdin = false;
    let mut read = |p: &PathBuf| read(p, &mut stdin);
    macro_rules! input {
        ($p:expr) => {
            match read($p) {
                Ok(s) => s,
                Err(o) => return o,
            }
        };
    }
    match &cli.command {
        Command::Validate { config } => cli::validate(&input!(config), &common),
        Command::Axioms { config, sample } => {
            cli::axioms(&input!(config), sample.samples, sample.seed, &sample.bounds(), &common)
        }
        Command::Bracket { config, u, v } => {
            let (c, u, v) = (input!(config), input!(u), input!(v));
            cli::bracket(&c, &u, &v, &common)
        }
        Command::Fingerprint { config, bound, t_bound } => {
            cli::fingerprint(&input!(config), &FingerprintBounds { coord: *bound, t_bound: *t_bound }, &common)
        }
        Command::IsoBuild { source, target, data, out } => {
            let (a, b, d) = (input!(source), input!(target), input!(data));
            let (outcome, saved) = cli::iso_build(&a, &b, &d, &common);
            if let (Some(path), Some(map)) = (out, saved) {
                let text = serde_json::to_string_pretty(&map).expect("serializable") + "\n";
                if let Err(e) = std::fs::write(path, text) {
                    return Outcome { code: 2, stdout: outcome.stdout, stderr: format!("error: {}: {e}\n", path.display()) };
                }
            }
            outcome
        }
        Command::IsoVerify { source, target, map, sample } => {
            let (a, b, m) = (input!(source), input!(target), input!(map));
            cli::iso_verify(&a, &b, &m, sample.samples, sample.seed, &sample.bounds(), &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED } else { 0 });
        }
    };
    let outcome = run(cli);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
