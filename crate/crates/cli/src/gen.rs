use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use fairmech::generators::{
    amms_hardness_instance, ef1_hardness_instance, has_balanced_partition, het_ef1_instance,
    max_independent_set, random_instance, HetInstance,
};
use fairmech::{rat, ratio, Rational};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::{exact_vec, parse_rational, read_json, write_json, GraphFile, HetFile, InstanceFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Integer weights and bids from a seeded stream.
    Random,
    /// Two agents; the best EF1 welfare reaches `tau` iff the integers
    /// split evenly.
    Ef1Hardness,
    /// Three agents; a 1/4-MMS allocation reaches the threshold iff the
    /// integers split evenly.
    AmmsHardness,
    /// Heterogeneous valuations from a graph; the best EF1 welfare lies in
    /// [t, t + 1) for the independence number t.
    HetEf1,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Number of goods (random).
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of agents (random).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub max_weight: u64,
    #[arg(long, default_value_t = 20)]
    pub max_bid: u64,
    /// Comma-separated positive integers (hardness kinds).
    #[arg(long, value_delimiter = ',')]
    pub integers: Vec<u64>,
    /// Top bid of the EF1 reduction.
    #[arg(long, value_parser = parse_rational, default_value = "10")]
    pub v: Rational,
    /// Perturbation of the EF1 reduction; the smallest safe half-integer
    /// when omitted.
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
    /// JSON file `{"vertices": k, "edges": [[u, w], ...]}` (het-ef1).
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Input(format!("--kind {kind} needs --{flag}")))
}

fn integers(args: &GenArgs, kind: &str) -> CliResult<Vec<u64>> {
    if args.integers.is_empty() {
        return Err(CliError::Input(format!("--kind {kind} needs --integers")));
    }
    Ok(args.integers.clone())
}

fn text(r: &Rational) -> Value {
    json!(r.to_string())
}

pub fn run(args: &GenArgs) -> CliResult {
    let out = args.output.as_deref();
    match args.kind {
        GenKind::Random => {
            let (m, n) = (need(args.m, "m", "random")?, need(args.n, "n", "random")?);
            let instance = random_instance(m, n, args.max_weight, args.max_bid, args.seed)?;
            let mut file = InstanceFile::from_instance(&instance);
            file.metadata = BTreeMap::from([("seed".to_string(), json!(args.seed))]);
            write_json(out, &file)
        }
        GenKind::Ef1Hardness => {
            let a = integers(args, "ef1-hardness")?;
            let epsilon = match &args.epsilon {
                Some(e) => e.clone(),
                None => {
                    let total: u64 = a.iter().sum();
                    let biggest = rat(*a.iter().max().expect("nonempty") as i64);
                    let excess = biggest - ratio(total as i64, 2);
                    std::cmp::max(rat(0), excess) + ratio(1, 2)
                }
            };
            let (instance, tau) = ef1_hardness_instance(&a, &args.v, &epsilon)?;
            let mut file = InstanceFile::from_instance(&instance);
            file.metadata = BTreeMap::from([
                ("v".to_string(), text(&args.v)),
                ("epsilon".to_string(), text(&epsilon)),
                ("tau".to_string(), text(&tau)),
                ("balanced".to_string(), json!(has_balanced_partition(&a))),
            ]);
            write_json(out, &file)
        }
        GenKind::AmmsHardness => {
            let a = integers(args, "amms-hardness")?;
            let (instance, alpha, threshold) = amms_hardness_instance::<Rational>(&a)?;
            let mut file = InstanceFile::from_instance(&instance);
            file.metadata = BTreeMap::from([
                ("alpha".to_string(), text(&alpha)),
                ("threshold".to_string(), text(&threshold)),
                ("balanced".to_string(), json!(has_balanced_partition(&a))),
            ]);
            write_json(out, &file)
        }
        GenKind::HetEf1 => {
            let path = args
                .graph
                .as_deref()
                .ok_or_else(|| CliError::Input("--kind het-ef1 needs --graph".into()))?;
            let graph: GraphFile = read_json(path)?;
            let het: HetInstance = het_ef1_instance(&graph.edges, graph.vertices)?;
            let mut metadata = BTreeMap::new();
            if let Ok(t) = max_independent_set(&graph.edges, graph.vertices) {
                metadata.insert("independence_number".to_string(), json!(t));
            }
            let file = HetFile {
                vertices: graph.vertices,
                edges: graph.edges,
                valuations: het.valuations().iter().map(|row| exact_vec(row)).collect(),
                metadata,
            };
            write_json(out, &file)
        }
    }
}
