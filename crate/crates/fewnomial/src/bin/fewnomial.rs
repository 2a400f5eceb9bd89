use clap::{Parser, Subcommand};

use fewnomial::cli;
use fewnomial::document::ConfigDocument;

/// Exact analysis of sparse polynomial hypersurfaces in the positive
/// orthant: Gale duality, face lattices, patchworking, critical systems,
/// and component bounds.
#[derive(Parser)]
#[command(name = "fewnomial", version, about)]
struct Cli {
    /// Seed for all randomized choices (heights, Lawrence bases).
    #[arg(long, global = true, env = "FEWNOMIAL_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, Gale dual, circuits, and the face lattice of a document.
    Analyze {
        /// JSON configuration document.
        doc: String,
    },
    /// Combinatorial patchworking of a signed document.
    Patchwork {
        doc: String,
        /// Height source: `auto` (sampled) or `given` (from the document).
        #[arg(long, default_value = "given")]
        heights: String,
        #[arg(long)]
        svg: Option<String>,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Critical values of the Viro family, face by face.
    Critical {
        doc: String,
        /// `all` or a comma-separated index set naming one face.
        #[arg(long, default_value = "all")]
        face: String,
    },
    /// Bound formulas (with --dim/--codim) or the certified pipeline (doc).
    Bound {
        doc: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        codim: Option<usize>,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Numerical component count of a bivariate curve in log coordinates.
    Trace {
        doc: String,
        /// Symmetric log-box radius.
        #[arg(long, default_value_t = 8)]
        r#box: i64,
        /// Initial grid resolution (cells per axis, at least 32).
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        svg: Option<String>,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Seeded Lawrence configuration with its circuit-faces.
    Lawrence {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// The p-fold edgewise patchworking instance on the n-simplex.
    Edgewise {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        svg: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let seed = cli.seed;
    let outcome = match &cli.command {
        Command::Analyze { doc } => load(doc).and_then(|d| cli::cmd_analyze(&d)),
        Command::Patchwork {
            doc,
            heights,
            svg,
            csv,
        } => load(doc)
            .and_then(|d| cli::cmd_patchwork(&d, heights, svg.as_deref(), csv.as_deref(), seed)),
        Command::Critical { doc, face } => load(doc).and_then(|d| cli::cmd_critical(&d, face)),
        Command::Bound {
            doc,
            dim,
            codim,
            csv,
        } => match (doc, dim, codim) {
            (Some(path), _, _) => {
                load(path).and_then(|d| cli::cmd_bound_document(&d, seed, csv.as_deref()))
            }
            (None, Some(d), Some(k)) => cli::cmd_bound_table(*d, *k, csv.as_deref()),
            _ => Err(fewnomial::Error::Parse {
                field: "bound".into(),
                message: "supply a document or both --dim and --codim".into(),
            }),
        },
        Command::Trace {
            doc,
            r#box,
            grid,
            svg,
            csv,
        } => load(doc)
            .and_then(|d| cli::cmd_trace(&d, *r#box, *grid, svg.as_deref(), csv.as_deref())),
        Command::Lawrence { m, k } => cli::cmd_lawrence(*m, *k, seed),
        Command::Edgewise { n, p, svg } => cli::cmd_edgewise(*n, *p, svg.as_deref()),
    };
    match outcome {
        Ok(report) => print!("{report}"),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(cli::exit_code(&err));
        }
    }
}

fn load(path: &str) -> fewnomial::Result<ConfigDocument> {
    ConfigDocument::from_path(path)
}
