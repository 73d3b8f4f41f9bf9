use std::io::Read;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gmatk::field::PrimeField;
use gmatk::graph::GraphJson;
use gmatk::matroid::MatroidJson;
use gmatk::{Error, Graph, Matroid, NamedMatroid};

#[derive(Parser, Debug)]
#[command(name = "gmatk", version, about = "Graded Möbius algebras of matroids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Named instance: fano, ag23, betsy-ross, whirl3, l23, example-2-1,
    /// uRN, trampolineN, broken-trampolineN.
    #[arg(long, global = true, conflicts_with = "input")]
    pub named: Option<String>,

    /// Graph JSON {"vertices", "edges"} or matroid JSON {"ground",
    /// "circuits"}; "-" reads stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Field characteristic: a prime, or 0 for the rationals.
    #[arg(long = "char", global = true, default_value_t = gmatk::field::DEFAULT_PRIME)]
    pub characteristic: u32,

    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ground set, rank, circuits and Whitney numbers.
    Matroid(MatroidArgs),
    /// Chordality of a graph and chordality predicates of a matroid.
    Chordality(ChordalityArgs),
    /// Search for or certify a strong elimination order.
    Groebner(GroebnerArgs),
    /// Betti table of the residue field over the graded Möbius algebra.
    Betti(BettiArgs),
    /// Run every acceptance check and print a pass/fail manifest.
    ReproducePaper(ReproduceArgs),
}

#[derive(Args, Debug)]
pub struct MatroidArgs {
    /// Include the lattice of flats.
    #[arg(long)]
    pub lattice: bool,
}

#[derive(Args, Debug)]
pub struct ChordalityArgs {}

#[derive(Args, Debug)]
pub struct GroebnerArgs {
    /// exhaustive, dfs_pruned or graphic_mat. Defaults to graphic_mat for
    /// graphs and dfs_pruned otherwise.
    #[arg(long)]
    pub strategy: Option<String>,

    /// Certify this order instead of searching: comma-separated element
    /// ids, earliest first, or "random" for a seeded shuffle.
    #[arg(long)]
    pub order: Option<String>,

    /// Give up once the subtree under one first element visits more than
    /// this many nodes.
    #[arg(long)]
    pub node_limit: Option<u64>,
}

#[derive(Args, Debug)]
pub struct BettiArgs {
    /// Largest homological degree.
    #[arg(long, default_value_t = 4)]
    pub steps: usize,

    /// Largest internal degree; defaults to steps + 2.
    #[arg(long)]
    pub degree_cap: Option<usize>,

    /// Also report the HS·P(-t) residual and, for trampolines, the
    /// functional equation residual.
    #[arg(long)]
    pub check_identities: bool,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Comma-separated criterion numbers; all by default.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub characteristic: u32,
    pub threads: usize,
    pub seed: u64,
    pub named: Option<String>,
    pub input: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.characteristic != 0 {
            PrimeField::new(cli.characteristic)?;
        }
        if cli.threads == 0 {
            return Err(Error::BadArgument("--threads must be positive".into()).into());
        }
        Ok(RunConfig {
            format: cli.format,
            characteristic: cli.characteristic,
            threads: cli.threads,
            seed: cli.seed,
            named: cli.named.clone(),
            input: cli.input.clone(),
        })
    }

    /// The instance named by `--named` or read from `--input`.
    pub fn load(&self) -> Result<Instance> {
        if let Some(name) = &self.named {
            let named: NamedMatroid = name.parse()?;
            let matroid = named.build()?;
            return Ok(Instance {
                name: named.to_string(),
                graph: named.graph(),
                matroid,
                named: Some(named),
            });
        }
        let Some(path) = &self.input else {
            return Err(Error::BadArgument("give --named or --input".into()).into());
        };
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
        let name = path.display().to_string();
        if value.get("vertices").is_some() {
            let json: GraphJson = serde_json::from_value(value).map_err(Error::from)?;
            let graph = Graph::from_json(&json)?;
            let matroid = Matroid::from_graph(&graph)?;
            Ok(Instance { name, graph: Some(graph), matroid, named: None })
        } else if value.get("ground").is_some() {
            let json: MatroidJson = serde_json::from_value(value).map_err(Error::from)?;
            let matroid = Matroid::from_json(&json)?;
            Ok(Instance { name, graph: None, matroid, named: None })
        } else {
            Err(Error::Parse("expected a graph {\"vertices\", \"edges\"} or a matroid {\"ground\", \"circuits\"}".into()).into())
        }
    }
}

pub struct Instance {
    pub name: String,
    pub graph: Option<Graph>,
    pub matroid: Matroid,
    pub named: Option<NamedMatroid>,
}
