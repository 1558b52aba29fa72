//! `orthotype`: irreps, branching tables, orthotypicality sweeps and
//! compactness profiles from the command line.
//!
//! Exit codes: 0 success, 1 numerical-invariant failure, 2 usage or parse error.

mod config;
mod json;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orthotype_core::lie::random_group_element;
use orthotype_core::linalg;
use orthotype_core::operator::{block_product, singular_coordinate_blocks, subgroup_smoothing_blocks};
use orthotype_core::orthotype::DEFAULT_EPSILON;
use orthotype_core::{
    decay_verdict, norm_bound_check, orthotype_sweep, singular_profile, torus_counterexample,
    EmbeddingLabel, Error, GroupId, HighestWeight, IrrepCache, KernelSpec, PhiSpec, Result,
    SingularProfile, SubgroupEmbedding, SubgroupType, SweepReport,
};

use config::ConfigFile;
use json::Json;

/// Tolerance for the homomorphism self-check printed by `irrep`.
const FIDELITY_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "orthotype", version, about = "Subgroup isotypical projections on SU(2) and SU(3)")]
struct Cli {
    /// Irrep cache directory.
    #[arg(long, global = true, env = "ORTHOTYPE_CACHE")]
    cache_dir: Option<PathBuf>,

    /// key = value file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Subgroup quadrature degree (default: exact per block).
    #[arg(long, global = true)]
    quadrature_degree: Option<usize>,

    /// Seed for randomized self-checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build (or load) an irrep, cache it and print a self-check.
    Irrep(IrrepArgs),
    /// Branching multiplicities of an ambient irrep over an embedded subgroup.
    Branch(BranchArgs),
    /// Subspace inner products over all SU(3) types up to a degree.
    Sweep(SweepArgs),
    /// Torus/torus sweep on SU(2), where no decay occurs.
    Counterexample(CounterArgs),
    /// Singular profiles of two smoothing operators and their product.
    Compactness(CompactnessArgs),
    /// Operator-norm bound for a singular-coordinate operator.
    Normbound(NormboundArgs),
}

#[derive(Debug, Args)]
struct IrrepArgs {
    #[arg(long)]
    group: Option<String>,
    /// SU(3) highest weight `p,q`.
    #[arg(long, allow_hyphen_values = true)]
    hw: Option<String>,
    /// SU(2) highest weight 2j.
    #[arg(long, allow_hyphen_values = true)]
    two_j: Option<i64>,
    /// Extra copy of the irrep JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BranchArgs {
    #[arg(long)]
    group: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    hw: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    two_j: Option<i64>,
    /// upper_left, lower_right, whole or torus.
    #[arg(long)]
    embedding: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Subgroup type 2j for the first embedding.
    #[arg(long)]
    pi1: Option<u32>,
    #[arg(long)]
    pi2: Option<u32>,
    #[arg(long)]
    emb1: Option<String>,
    #[arg(long)]
    emb2: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Sweep CSV; the verdict goes next to it as `<stem>_verdict.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CounterArgs {
    #[arg(long)]
    max_two_j: Option<u32>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompactnessArgs {
    /// `label[:2j[:scale]]`; the scale defaults to dim(π), a projection kernel.
    #[arg(long)]
    kernel1: Option<String>,
    #[arg(long)]
    kernel2: Option<String>,
    /// Truncation degree.
    #[arg(short = 'N', long = "truncation")]
    truncation: Option<u32>,
    /// Output stem: `<stem>_{factor1,factor2,product}.{csv,json}`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct NormboundArgs {
    /// Chart specification file.
    #[arg(long)]
    phi: Option<PathBuf>,
    #[arg(short = 'N', long = "truncation")]
    truncation: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Context {
    cfg: ConfigFile,
    cache: IrrepCache,
    quadrature_degree: Option<usize>,
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_numerical() => 1,
        Error::Io(_) | Error::Json(_) | Error::EmptyReport | Error::DimensionMismatch(_) | Error::OutsideSpan(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let cache_dir = cfg.resolve_or(cli.cache_dir, "cache_dir", PathBuf::from("cache"))?;
    let ctx = Context {
        quadrature_degree: cfg.resolve(cli.quadrature_degree, "quadrature_degree")?,
        seed: cfg.resolve_or(cli.seed, "seed", 0)?,
        cache: IrrepCache::new(cache_dir),
        cfg,
    };
    match cli.command {
        Command::Irrep(a) => cmd_irrep(&ctx, a),
        Command::Branch(a) => cmd_branch(&ctx, a),
        Command::Sweep(a) => cmd_sweep(&ctx, a),
        Command::Counterexample(a) => cmd_counterexample(&ctx, a),
        Command::Compactness(a) => cmd_compactness(&ctx, a),
        Command::Normbound(a) => cmd_normbound(&ctx, a),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

fn parse_hw(ctx: &Context, group: Option<String>, hw: Option<String>, two_j: Option<i64>) -> Result<HighestWeight> {
    let hw = ctx.cfg.resolve(hw, "hw")?;
    let two_j = ctx.cfg.resolve(two_j, "two_j")?;
    let group = match ctx.cfg.resolve::<String>(group, "group")? {
        Some(g) => g.parse::<GroupId>()?,
        None if two_j.is_some() => GroupId::Su2,
        None => GroupId::Su3,
    };
    let labels: Vec<i64> = match (group, hw, two_j) {
        (GroupId::Su2, None, Some(t)) => vec![t],
        (_, Some(text), None) => text
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad highest weight `{text}`"))))
            .collect::<Result<_>>()?,
        _ => return Err(Error::InvalidArgument("give --hw p,q (su3) or --two-j n (su2)".into())),
    };
    HighestWeight::from_labels(group, &labels)
}

fn cmd_irrep(ctx: &Context, a: IrrepArgs) -> Result<ExitCode> {
    let hw = parse_hw(ctx, a.group, a.hw, a.two_j)?;
    let rep = ctx.cache.get_or_build(hw)?;
    let algebra = rep.validate()?;
    let (g, h) = (random_group_element(hw.group(), ctx.seed), random_group_element(hw.group(), ctx.seed + 1));
    let sg = rep.group_matrix_at(&g)?;
    let sh = rep.group_matrix_at(&h)?;
    let sgh = rep.group_matrix_at(&g.compose(&h))?;
    let hom = linalg::op_norm(&(&sg * &sh - sgh));
    let unitary = linalg::unitarity_defect(&sg);
    println!("{hw} dim {}", rep.dim);
    println!("cache {}", ctx.cache.path(hw).display());
    println!("algebra defect {algebra:.3e}");
    println!("homomorphism defect {hom:.3e} unitarity defect {unitary:.3e} (seed {})", ctx.seed);
    if let Some(out) = ctx.cfg.resolve(a.out, "out")? {
        write_file(&out, &rep.to_json()?)?;
    }
    if hom > FIDELITY_TOL || unitary > FIDELITY_TOL {
        return Err(Error::Consistency(format!("representation self-check failed for {hw}")));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_branch(ctx: &Context, a: BranchArgs) -> Result<ExitCode> {
    let hw = parse_hw(ctx, a.group, a.hw, a.two_j)?;
    let default = if hw.group() == GroupId::Su3 { "upper_left" } else { "whole" };
    let label: EmbeddingLabel = ctx.cfg.resolve_or(a.embedding, "embedding", default.to_string())?.parse()?;
    let rep = ctx.cache.get_or_build(hw)?;
    let emb = SubgroupEmbedding::standard(&rep, label)?;
    let table = emb.branching_multiplicities()?;
    if table.total_dim() != rep.dim {
        return Err(Error::Consistency(format!("branching of {hw} sums to {}", table.total_dim())));
    }
    println!("{hw} over {label}");
    let mut rows = Vec::new();
    for (pi, m) in &table.multiplicities {
        let rank = emb.isotypic_projection(*pi)?.rank()?;
        if rank != m * pi.dim() {
            return Err(Error::Consistency(format!("{pi}: projection rank {rank}, multiplicity {m}")));
        }
        println!("{pi}\t{m}");
        rows.push(Json::object([
            ("type", Json::Str(pi.to_string())),
            ("multiplicity", Json::Int(*m as i64)),
            ("dim", Json::Int(pi.dim() as i64)),
        ]));
    }
    if let Some(out) = ctx.cfg.resolve(a.out, "out")? {
        let doc = Json::object([
            ("ambient", Json::Str(hw.to_string())),
            ("embedding", Json::Str(label.to_string())),
            ("multiplicities", Json::Array(rows)),
        ]);
        write_file(&out, &doc.render())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_json(report: &SweepReport) -> Result<Json> {
    let v = decay_verdict(report)?;
    Ok(Json::object([
        ("epsilon", Json::Float(report.epsilon)),
        ("count_above", Json::Int(v.count_above as i64)),
        ("shell_max", Json::floats(report.shell_max.values().copied())),
        ("tail_max_by_shell", Json::floats(v.tail_max_by_shell.iter().copied())),
        ("monotone_tail", Json::Bool(v.monotone_tail)),
    ]))
}

fn emit_sweep(report: &SweepReport, out: &Path) -> Result<()> {
    write_file(out, &report.to_csv_string())?;
    let verdict = sibling(out, "_verdict.json");
    write_file(&verdict, &verdict_json(report)?.render())?;
    let v = decay_verdict(report)?;
    println!("{} rows -> {}", report.records.len(), out.display());
    println!(
        "count_above(eps={}) {} monotone_tail {} -> {}",
        report.epsilon,
        v.count_above,
        v.monotone_tail,
        verdict.display()
    );
    Ok(())
}

fn cmd_sweep(ctx: &Context, a: SweepArgs) -> Result<ExitCode> {
    let c = &ctx.cfg;
    let pi1 = SubgroupType::Spin(c.resolve_or(a.pi1, "pi1", 0)?);
    let pi2 = SubgroupType::Spin(c.resolve_or(a.pi2, "pi2", 0)?);
    let emb1: EmbeddingLabel = c.resolve_or(a.emb1, "emb1", "upper_left".to_string())?.parse()?;
    let emb2: EmbeddingLabel = c.resolve_or(a.emb2, "emb2", "lower_right".to_string())?.parse()?;
    let max_degree = c.resolve_or(a.max_degree, "max_degree", 8)?;
    let epsilon = c.resolve_or(a.epsilon, "epsilon", DEFAULT_EPSILON)?;
    let out = c.resolve_or(a.out, "out", PathBuf::from("sweep.csv"))?;
    let report = orthotype_sweep(pi1, pi2, emb1, emb2, max_degree, epsilon, Some(&ctx.cache))?;
    emit_sweep(&report, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_counterexample(ctx: &Context, a: CounterArgs) -> Result<ExitCode> {
    let c = &ctx.cfg;
    let max_two_j = c.resolve_or(a.max_two_j, "max_two_j", 10)?;
    let epsilon = c.resolve_or(a.epsilon, "epsilon", 0.5)?;
    let out = c.resolve_or(a.out, "out", PathBuf::from("counterexample.csv"))?;
    let report = torus_counterexample(max_two_j, epsilon)?;
    emit_sweep(&report, &out)?;
    Ok(ExitCode::SUCCESS)
}

/// `label[:2j[:scale]]`, or `torus[:m[:scale]]` for torus weights.
fn parse_kernel(text: &str, degree: Option<usize>) -> Result<KernelSpec> {
    let mut parts = text.split(':');
    let label: EmbeddingLabel = parts.next().unwrap_or_default().parse()?;
    let bad = |what: &str| Error::Parse(format!("kernel `{text}`: bad {what}"));
    let index = parts.next().map(|s| s.parse::<i64>().map_err(|_| bad("type"))).transpose()?.unwrap_or(0);
    let pi = match label {
        EmbeddingLabel::Torus => SubgroupType::Weight(index),
        _ => SubgroupType::Spin(u32::try_from(index).map_err(|_| bad("type"))?),
    };
    let scale = parts.next().map(|s| s.parse::<f64>().map_err(|_| bad("scale"))).transpose()?;
    if parts.next().is_some() {
        return Err(bad("format"));
    }
    let spec = KernelSpec::character(label, pi, scale.unwrap_or(pi.dim() as f64));
    Ok(match degree {
        Some(d) => spec.with_degree(d),
        None => spec,
    })
}

fn emit_profile(stem: &Path, name: &str, prof: &SingularProfile) -> Result<()> {
    let mut csv = Vec::new();
    prof.write_csv(&mut csv)?;
    write_file(&sibling(stem, &format!("_{name}.csv")), &String::from_utf8(csv).expect("ascii"))?;
    let doc = Json::object([
        ("N", Json::Int(prof.degree as i64)),
        ("shell_max", Json::floats(prof.shell_max.values().copied())),
        ("global_norm", Json::Float(prof.global_norm)),
    ]);
    write_file(&sibling(stem, &format!("_{name}.json")), &doc.render())
}

fn cmd_compactness(ctx: &Context, a: CompactnessArgs) -> Result<ExitCode> {
    let c = &ctx.cfg;
    let k1 = parse_kernel(&c.resolve_or(a.kernel1, "kernel1", "upper_left".to_string())?, ctx.quadrature_degree)?;
    let k2 = parse_kernel(&c.resolve_or(a.kernel2, "kernel2", "lower_right".to_string())?, ctx.quadrature_degree)?;
    let n = c.resolve_or(a.truncation, "N", 6)?;
    let stem = c.resolve_or(a.out, "out", PathBuf::from("compactness"))?;
    let a1 = subgroup_smoothing_blocks(&k1, n, Some(&ctx.cache))?;
    let a2 = subgroup_smoothing_blocks(&k2, n, Some(&ctx.cache))?;
    let prod = block_product(&a1, &a2)?;
    let profiles = [("factor1", singular_profile(&a1)), ("factor2", singular_profile(&a2)), ("product", singular_profile(&prod))];
    for (name, prof) in &profiles {
        emit_profile(&stem, name, prof)?;
        let shells: Vec<String> = prof.shell_max.values().map(|v| format!("{v:.6}")).collect();
        println!("{name}\tglobal {:.6}\tshells [{}]", prof.global_norm, shells.join(", "));
    }
    let last = |p: &SingularProfile| *p.shell_max.values().last().unwrap();
    let (f1, f2, pr) = (last(&profiles[0].1), last(&profiles[1].1), last(&profiles[2].1));
    println!("final shell: product {pr:.6} below factors ({f1:.6}, {f2:.6}): {}", pr < f1 && pr < f2);
    Ok(ExitCode::SUCCESS)
}

fn cmd_normbound(ctx: &Context, a: NormboundArgs) -> Result<ExitCode> {
    let c = &ctx.cfg;
    let path = c
        .resolve(a.phi, "phi")?
        .ok_or_else(|| Error::InvalidArgument("normbound needs --phi FILE".into()))?;
    let text = fs::read_to_string(&path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let phi: PhiSpec = text.parse()?;
    let n = c.resolve(a.truncation, "N")?.or(phi.truncation).unwrap_or(8);
    let out = c.resolve_or(a.out, "out", PathBuf::from("normbound.json"))?;
    let op = singular_coordinate_blocks(&phi, n, Some(&ctx.cache))?;
    let nb = norm_bound_check(&phi, &op);
    let prof = singular_profile(&op);
    let doc = Json::object([
        ("bound", Json::Float(nb.bound)),
        ("observed", Json::Float(nb.observed)),
        ("holds", Json::Bool(nb.holds)),
        ("N", Json::Int(n as i64)),
        ("shell_max", Json::floats(prof.shell_max.values().copied())),
        ("decaying", Json::Bool(prof.decaying)),
    ]);
    write_file(&out, &doc.render())?;
    println!("bound {:.9} observed {:.9} holds {}", nb.bound, nb.observed, nb.holds);
    println!("decaying {}", prof.decaying);
    if !nb.holds {
        return Err(Error::Consistency("operator norm exceeds the bound".into()));
    }
    Ok(ExitCode::SUCCESS)
}
