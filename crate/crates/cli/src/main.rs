mod commands;
mod expr;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cubical_core::{Error, Flavor};

#[derive(Parser, Debug)]
#[command(
    name = "cubical",
    version,
    about = "Cube categories, cubical sets and their nerves"
)]
pub struct Cli {
    /// Cube category: `r` (faces and degeneracies) or `c` (with connections).
    #[arg(short = 'f', long, global = true, value_enum, default_value = "c")]
    pub flavor: FlavorArg,

    /// Truncation dimension. Defaults to what the object needs.
    #[arg(short = 'N', long = "trunc", global = true)]
    pub trunc: Option<usize>,

    /// Prime for dg operations and field coefficients.
    #[arg(short = 'p', long, global = true, default_value_t = 2)]
    pub prime: u32,

    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Print cell counts instead of the object file.
    #[arg(long, global = true)]
    pub summary: bool,

    /// Write the emitted object here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Workspace file with named bindings.
    #[arg(short = 'w', long, global = true)]
    pub workspace: Option<std::path::PathBuf>,

    /// Largest dimension any command may build.
    #[arg(long, global = true, env = "CUBICAL_MAX_DIM", default_value_t = 4)]
    pub max_dim: usize,

    /// Largest number of candidates any enumeration may produce.
    #[arg(
        long,
        global = true,
        env = "CUBICAL_MAX_ENUM",
        default_value_t = 1_000_000
    )]
    pub max_enum: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FlavorArg {
    R,
    C,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::R => Flavor::Reduced,
            FlavorArg::C => Flavor::Connections,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form and function table of a word such as `d1@1 . d0@0`.
    Normalize {
        word: String,
        /// Source dimension; the smallest one that fits by default.
        #[arg(long)]
        src: Option<usize>,
    },
    /// Size of hom(□^m, □^n).
    Homset {
        m: usize,
        n: usize,
        /// Also print every normal form.
        #[arg(long)]
        list: bool,
    },
    /// Factor a map given by its rows, one target bit string per source vertex.
    Factorize {
        src: usize,
        tgt: usize,
        rows: Vec<String>,
    },
    /// Build an object from an expression.
    Build { expr: Vec<String> },
    /// Day tensor of two cubical sets.
    Tensor { left: String, right: String },
    /// The boundary of □[n].
    Boundary { n: usize },
    /// The cap of □[n] missing the face where coordinate i is eps.
    Cap { n: usize, eps: u8, i: usize },
    /// Pushout of X <- A -> Y along maps picked from the enumerated homs.
    Pushout {
        a: String,
        x: String,
        y: String,
        /// Index of A -> X among the enumerated maps; the first mono by default.
        #[arg(long)]
        left: Option<usize>,
        #[arg(long)]
        right: Option<usize>,
    },
    /// Decide whether two objects are isomorphic.
    Iso { left: String, right: String },
    /// Triangulate a cubical set.
    Triangulate { expr: Vec<String> },
    /// Homology of a cubical set, simplicial set or complex.
    Homology {
        expr: Vec<String>,
        /// Coefficients in F_p (from -p) instead of the integers.
        #[arg(long)]
        field: bool,
    },
    /// Homotopy coherent nerve of a category, up to dimension -N (3 by default).
    Nerve { expr: Vec<String> },
    /// Count the caps or horns that do not fill.
    Fill {
        expr: Vec<String>,
        /// Only inner horns.
        #[arg(long)]
        inner: bool,
    },
    /// Run the invariant suites.
    Selftest {
        #[arg(long)]
        quick: bool,
        /// Restrict to these suites.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Guard(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = commands::run(&cli, &mut out);
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
