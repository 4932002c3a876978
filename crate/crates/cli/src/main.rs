//! `riccati-galois` command-line front end.

mod commands;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use riccati_galois::exactalg::Tower;
use riccati_galois::exprparse::{parse_binding, Bindings};
use riccati_galois::Error;
use riccati_galois_cli::report;

#[derive(Parser, Debug)]
#[command(name = "riccati-galois", version, about = "Exact Liouvillian integrability of Riccati foliations")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,

    /// Bind a parameter, e.g. `--param k=1/3` (repeatable).
    #[arg(long = "param", global = true, value_name = "NAME=VALUE", allow_hyphen_values = true)]
    params: Vec<String>,

    /// Emit the JSON report.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Emit the plain-text report (default).
    #[arg(long, global = true)]
    text: bool,

    /// Leave out the timing field.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Maximum number of adjoined square roots.
    #[arg(long, global = true, default_value_t = 2)]
    tower_depth: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the reduction chain and Kovacic's algorithm.
    Solve(SolveArgs),
    /// Closed-form integrability criteria for special-function families.
    Criteria {
        #[command(subcommand)]
        family: Family,
    },
    /// Invariant curves, cofactors and Darboux combinations of a planar field.
    Darboux(DarbouxArgs),
    /// Application pipelines.
    Apply {
        #[command(subcommand)]
        pipeline: Pipeline,
    },
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// `rho=...`, `b1=...; b0=...` or `a0=...; a1=...; a2=...`; `-` reads stdin.
    #[arg(allow_hyphen_values = true, conflicts_with_all = ["rho", "b1", "b0", "a0", "a1", "a2"])]
    pub equation: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["b1", "b0", "a0", "a1", "a2"])]
    pub rho: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "b0", conflicts_with_all = ["a0", "a1", "a2"])]
    pub b1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "b1")]
    pub b0: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["a1", "a2"])]
    pub a0: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["a0", "a2"])]
    pub a1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["a0", "a1"])]
    pub a2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Hypergeometric equation by exponent differences.
    Kimura {
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Whittaker equation.
    Whittaker {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Read the natural numbers as starting at 1.
        #[arg(long)]
        exclude_zero: bool,
    },
    /// Bessel equation of order n.
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Biconfluent Heun equation.
    BiconfluentHeun {
        #[arg(long, allow_hyphen_values = true)]
        d0: String,
        #[arg(long, allow_hyphen_values = true)]
        d1: String,
        #[arg(long, allow_hyphen_values = true)]
        d2: String,
        #[arg(long, allow_hyphen_values = true)]
        d3: String,
        #[arg(long, value_enum, default_value_t = ReadingArg::Banded)]
        pi_reading: ReadingArg,
        #[arg(long, value_enum, default_value_t = SignsArg::Kovacic)]
        pi_signs: SignsArg,
    },
    /// Lame equation in algebraic form.
    Lame {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        g2: String,
        #[arg(long, allow_hyphen_values = true)]
        g3: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ReadingArg {
    Banded,
    Literal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SignsArg {
    Kovacic,
    Printed,
}

#[derive(Args, Debug)]
pub struct DarbouxArgs {
    /// `P; Q` in the variables x, y; `-` reads stdin.
    #[arg(long, allow_hyphen_values = true)]
    pub field: String,
    /// Candidate invariant curve f(x, y) (repeatable).
    #[arg(long = "curve", allow_hyphen_values = true)]
    pub curves: Vec<String>,
    /// Candidate exponential factor `G; H` for exp(G/H) (repeatable).
    #[arg(long = "exp", allow_hyphen_values = true)]
    pub exps: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Pipeline {
    /// Whittaker reduction of the first quadratic system.
    S1(SArgs),
    /// Classification of the second quadratic system.
    S2(SArgs),
    /// Lienard family reduced to the Legendre equation.
    Lienard1 {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Abel-type Lienard family reduced to the biconfluent Heun equation.
    Abel {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Worked hypergeometric, polyhedral and triconfluent examples.
    Examples,
    /// Invariant curve of a classical orthogonal family.
    Orth {
        /// H, T, U, P, L, L^(m), C^(m), P^(m,nu), B or a name such as `hermite`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        m: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        nu: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        mu: String,
    },
}

#[derive(Args, Debug)]
pub struct SArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub eps: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b20: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b11: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b02: String,
}

pub struct Ctx {
    pub bind: Bindings,
    pub tower: Tower,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::Invalid(_) => 2,
        Error::Verification(_) => 4,
        _ => 3,
    }
}

pub fn read_stdin_if_dash(s: &str) -> Result<String, Error> {
    if s != "-" {
        return Ok(s.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Error::Invalid(format!("cannot read stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn run(cli: &Cli) -> Result<serde_json::Value, Error> {
    let start = Instant::now();
    let mut bind = Bindings::new();
    for p in &cli.params {
        let (name, value) = parse_binding(p, &bind)?;
        bind.insert(name, value);
    }
    let tower = Tower::new(cli.tower_depth);
    let ctx = Ctx { bind, tower };
    let report = match &cli.cmd {
        Command::Solve(a) => commands::solve(&ctx, a)?,
        Command::Criteria { family } => commands::criteria(&ctx, family)?,
        Command::Darboux(a) => commands::darboux(&ctx, a)?,
        Command::Apply { pipeline } => commands::apply(&ctx, pipeline)?,
    };
    let elapsed = (!cli.no_timing).then(|| start.elapsed().as_millis());
    Ok(report.finish(elapsed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&v).expect("report serializes"));
            } else {
                print!("{}", report::render_text(&v));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
