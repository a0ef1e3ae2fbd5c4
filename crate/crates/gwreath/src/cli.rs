//! Subcommand surface over the library: reports on stdout, single-line JSON
//! diagnostics on stderr.
//!
//! Exit codes: 0 success, 2 input validation, 3 cap or resource limits,
//! 64 unknown subcommand.

use crate::config::{RunConfig, MAX_DEGREE};
use crate::error::{Error, ErrorClass, Result};
use crate::finite_group::FiniteGroup;
use crate::hopf;
use crate::poset::{DownSet, Poset};
use crate::reduction::{self, BranchRule, Tree, TruncatedTree};
use crate::wreath::{ConfigSpace, WreathGroup};
use clap::{ArgAction, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use std::ffi::OsString;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "gwreath", version, about = "Generalized wreath products over posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: json, dot or text.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Worker threads for per-downset computations.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Maximum configuration-space size.
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    /// Maximum group order for element-level brute force.
    #[arg(long, global = true)]
    oracle_cap: Option<u64>,
    /// Stabilizer-chain memory budget in MiB.
    #[arg(long, global = true)]
    memory_budget_mb: Option<u64>,
    /// Deterministic mode (no randomized engine paths). Always honored; the
    /// engine has no randomized paths to enable.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    deterministic: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wreath group construction and verification.
    Wreath {
        #[command(subcommand)]
        sub: WreathCmd,
    },
    /// Linear-order analysis.
    Hopf {
        #[command(subcommand)]
        sub: HopfCmd,
    },
    /// Tree-to-group pipeline.
    Reduce {
        #[command(subcommand)]
        sub: ReduceCmd,
    },
    /// Brute-force group oracles.
    Oracle {
        #[command(subcommand)]
        sub: OracleCmd,
    },
}

#[derive(Parser, Debug)]
struct InstanceArgs {
    /// Poset: `chain:N`, `antichain:N`, or a JSON file path.
    #[arg(long)]
    poset: Option<String>,
    /// Factor group per element (one value is replicated): builtin name or
    /// JSON spec file path.
    #[arg(long)]
    factor: Vec<String>,
    /// Wreath instance file: {"poset": ..., "factors": [...]}.
    #[arg(long = "in")]
    input: Option<String>,
}

#[derive(Subcommand, Debug)]
enum WreathCmd {
    /// Construct the configuration space and generators.
    Build(InstanceArgs),
    /// Exact group order via the stabilizer chain.
    Order(InstanceArgs),
    /// Kernels per downset, with brute-force classification when feasible.
    NormalSubgroups(InstanceArgs),
    /// Quotient isomorphism check per downset.
    QuotientCheck {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Comma-separated downset members; all downsets when omitted.
        #[arg(long)]
        gamma: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum HopfCmd {
    /// Build the group of a linear order and analyze its kernel chain.
    Analyze {
        /// The linear order W: `chain:N` or a JSON poset file.
        #[arg(long)]
        order: String,
        /// Factor group (default A5).
        #[arg(long, default_value = "A5")]
        factor: String,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    /// Linearize a tree file and analyze the resulting group.
    Tree {
        /// JSON tree file: a list of integer sequences.
        #[arg(long = "in")]
        input: String,
        /// Factor group (default A5).
        #[arg(long, default_value = "A5")]
        factor: String,
        /// Declared branch `prefix/period`, e.g. `0,1/0`.
        #[arg(long)]
        branch: Option<String>,
        /// Depth of branch prefixes to verify.
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Conjugacy classes, normal subgroups and the Hopfian certificate.
    Group {
        /// Builtin name.
        #[arg(long)]
        name: Option<String>,
        /// JSON group spec file.
        #[arg(long = "in")]
        input: Option<String>,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return 0;
                }
                ErrorKind::InvalidSubcommand => {
                    diagnostic("unknown-subcommand", &e.to_string());
                    return 64;
                }
                _ => {
                    diagnostic("usage", &e.to_string());
                    return 2;
                }
            }
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            // a consumer like `head` may close the pipe early; that is fine
            use std::io::Write;
            let _ = writeln!(std::io::stdout().lock(), "{report}");
            0
        }
        Err(e) => {
            diagnostic(e.code(), &e.to_string());
            match e.class() {
                ErrorClass::Validation => 2,
                ErrorClass::Resource => 3,
            }
        }
    }
}

fn diagnostic(code: &str, message: &str) {
    let line = json!({"error": code, "message": message});
    eprintln!("{line}");
}

fn parse_format(text: &str) -> Result<Format> {
    match text {
        "json" => Ok(Format::Json),
        "dot" => Ok(Format::Dot),
        "text" => Ok(Format::Text),
        other => Err(Error::Parse(format!("unknown format {other:?}"))),
    }
}

fn run_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(cap) = cli.degree_cap {
        if cap > MAX_DEGREE {
            return Err(Error::Parse(format!(
                "degree cap {cap} above the supported maximum {MAX_DEGREE}"
            )));
        }
        config.degree_cap = cap;
    }
    if let Some(cap) = cli.oracle_cap {
        config.oracle_order_cap = cap;
    }
    if let Some(mb) = cli.memory_budget_mb {
        config.memory_budget = mb << 20;
    }
    if cli.threads == 0 {
        return Err(Error::Parse("--threads must be at least 1".into()));
    }
    config.threads = cli.threads;
    config.deterministic = cli.deterministic;
    Ok(config)
}

fn parse_poset_spec(spec: &str) -> Result<Poset> {
    if let Some(n) = spec.strip_prefix("chain:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad chain size {n:?}")))?;
        return Poset::chain(n);
    }
    if let Some(n) = spec.strip_prefix("antichain:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad antichain size {n:?}")))?;
        return Poset::antichain(n);
    }
    let text = std::fs::read_to_string(spec)?;
    Ok(Poset::from_json(&text)?.0)
}

fn parse_factor_spec(spec: &str) -> Result<Arc<FiniteGroup>> {
    if FiniteGroup::BUILTIN_NAMES.contains(&spec) {
        return Ok(Arc::new(FiniteGroup::builtin(spec)?));
    }
    let text = std::fs::read_to_string(spec)?;
    Ok(Arc::new(FiniteGroup::from_json_spec(&text)?))
}

fn load_instance(args: &InstanceArgs) -> Result<(Poset, Vec<Arc<FiniteGroup>>)> {
    if let Some(path) = &args.input {
        if args.poset.is_some() || !args.factor.is_empty() {
            return Err(Error::Parse(
                "--in excludes --poset and --factor".into(),
            ));
        }
        let text = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let poset = match value.get("poset") {
            Some(serde_json::Value::String(s)) => parse_poset_spec(s)?,
            Some(obj @ serde_json::Value::Object(_)) => Poset::from_json(&obj.to_string())?.0,
            _ => return Err(Error::Parse("instance file needs a \"poset\"".into())),
        };
        let factors = match value.get("factors") {
            Some(serde_json::Value::Array(specs)) => specs
                .iter()
                .map(|s| Ok(Arc::new(FiniteGroup::from_json_spec(&s.to_string())?)))
                .collect::<Result<Vec<_>>>()?,
            _ => return Err(Error::Parse("instance file needs \"factors\"".into())),
        };
        return Ok((poset, factors));
    }
    let poset_spec = args
        .poset
        .as_deref()
        .ok_or_else(|| Error::Parse("one of --poset or --in is required".into()))?;
    let poset = parse_poset_spec(poset_spec)?;
    if args.factor.is_empty() {
        return Err(Error::Parse("at least one --factor is required".into()));
    }
    let factors: Vec<Arc<FiniteGroup>> = if args.factor.len() == 1 {
        vec![parse_factor_spec(&args.factor[0])?; poset.len()]
    } else if args.factor.len() == poset.len() {
        args.factor
            .iter()
            .map(|f| parse_factor_spec(f))
            .collect::<Result<Vec<_>>>()?
    } else {
        return Err(Error::Parse(format!(
            "{} factors for {} poset elements",
            args.factor.len(),
            poset.len()
        )));
    };
    Ok((poset, factors))
}

#[derive(Serialize)]
struct PosetInfo {
    n: usize,
    description: String,
    relation: Vec<String>,
}

fn poset_info(p: &Poset) -> PosetInfo {
    PosetInfo {
        n: p.len(),
        description: p.describe(),
        relation: p.relation_rows(),
    }
}

fn build_wreath(args: &InstanceArgs, config: &RunConfig) -> Result<WreathGroup> {
    let (poset, factors) = load_instance(args)?;
    WreathGroup::new(ConfigSpace::new(poset, factors, config)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn dispatch(cli: &Cli) -> Result<String> {
    let format = parse_format(&cli.format)?;
    let config = run_config(cli)?;
    match &cli.command {
        Command::Wreath { sub } => wreath_cmd(sub, format, &config),
        Command::Hopf { sub } => hopf_cmd(sub, format, &config),
        Command::Reduce { sub } => reduce_cmd(sub, format, &config),
        Command::Oracle { sub } => oracle_cmd(sub, format, &config),
    }
}

fn factor_labels(w: &WreathGroup) -> Vec<String> {
    w.space()
        .factors()
        .iter()
        .map(|f| f.label().to_string())
        .collect()
}

fn wreath_cmd(sub: &WreathCmd, format: Format, config: &RunConfig) -> Result<String> {
    match sub {
        WreathCmd::Build(args) => {
            let w = build_wreath(args, config)?;
            require_json_or_text(format, "wreath build")?;
            // generators spelled out (as image arrays and cycles) only while
            // they are small enough to read
            let generators: Option<Vec<serde_json::Value>> = (w.space().total() <= 64).then(|| {
                w.generators()
                    .iter()
                    .zip(w.generator_labels())
                    .map(|(g, &(lam, h))| {
                        json!({
                            "lam": lam,
                            "h": h,
                            "images": g,
                            "cycles": g.format_cycles(),
                        })
                    })
                    .collect()
            });
            let report = json!({
                "command": "wreath build",
                "poset": poset_info(w.space().poset()),
                "factors": factor_labels(&w),
                "degree": w.space().total(),
                "generator_count": w.generators().len(),
                "generators": generators,
            });
            match format {
                Format::Text => Ok(format!(
                    "wreath over {} with factors [{}]: degree {}, {} generators",
                    w.space().poset().describe(),
                    factor_labels(&w).join(", "),
                    w.space().total(),
                    w.generators().len()
                )),
                _ => Ok(serde_json::to_string_pretty(&report)?),
            }
        }
        WreathCmd::Order(args) => {
            let w = build_wreath(args, config)?;
            require_json_or_text(format, "wreath order")?;
            let order = w.order()?;
            match format {
                Format::Text => Ok(order.to_string()),
                _ => Ok(serde_json::to_string_pretty(&json!({
                    "command": "wreath order",
                    "poset": poset_info(w.space().poset()),
                    "factors": factor_labels(&w),
                    "degree": w.space().total(),
                    "order": order.to_string(),
                }))?),
            }
        }
        WreathCmd::NormalSubgroups(args) => {
            let w = build_wreath(args, config)?;
            let order = w.order()?;
            let downsets = w.space().poset().downsets()?;
            let mut kernels = Vec::new();
            for ds in &downsets {
                let d = w.d_gamma_group(ds)?;
                kernels.push((*ds, d.handle.order()?.to_string(), d.verification));
            }
            if format == Format::Dot {
                let entries: Vec<(DownSet, Option<String>)> = kernels
                    .iter()
                    .map(|(ds, order, _)| (*ds, Some(format!("order {order}"))))
                    .collect();
                return Ok(crate::dot::downset_lattice("kernels", &entries));
            }
            let bruteforce = if order <= num_bigint::BigUint::from(config.oracle_order_cap) {
                Some(w.classify_normal_subgroups()?)
            } else {
                None
            };
            let kernel_reports: Vec<serde_json::Value> = kernels
                .iter()
                .map(|(ds, order, verification)| {
                    json!({
                        "downset": ds.members(),
                        "kernel_order": order,
                        "verification": verification,
                    })
                })
                .collect();
            if format == Format::Text {
                let mut lines = vec![format!("group order {order}")];
                for (ds, order, _) in &kernels {
                    lines.push(format!("D_{ds} has order {order}"));
                }
                if let Some(b) = &bruteforce {
                    lines.push(format!(
                        "brute force: {} normal subgroups, {} matched, {} unmatched",
                        b.normal_subgroup_count,
                        b.matched.len(),
                        b.unmatched_normal_orders.len()
                    ));
                }
                return Ok(lines.join("\n"));
            }
            Ok(serde_json::to_string_pretty(&json!({
                "command": "wreath normal-subgroups",
                "poset": poset_info(w.space().poset()),
                "factors": factor_labels(&w),
                "degree": w.space().total(),
                "order": order.to_string(),
                "kernels": kernel_reports,
                "bruteforce": bruteforce,
            }))?)
        }
        WreathCmd::QuotientCheck { instance, gamma } => {
            let w = build_wreath(instance, config)?;
            require_json_or_text(format, "wreath quotient-check")?;
            let targets: Vec<DownSet> = match gamma {
                Some(text) => {
                    let members = parse_member_list(text)?;
                    vec![DownSet::new(w.space().poset(), &members)?]
                }
                None => w.space().poset().downsets()?,
            };
            let mut checks = Vec::new();
            for ds in &targets {
                let iso = w.quotient_iso_check(ds)?;
                checks.push(json!({
                    "gamma": ds.members(),
                    "ok": iso.ok,
                    "class_count": iso.class_count,
                    "relabeling": iso.relabeling,
                    "mismatch": iso.mismatch,
                }));
            }
            if format == Format::Text {
                let lines: Vec<String> = targets
                    .iter()
                    .zip(&checks)
                    .map(|(ds, c)| format!("gamma {ds}: ok={}", c["ok"]))
                    .collect();
                return Ok(lines.join("\n"));
            }
            Ok(serde_json::to_string_pretty(&json!({
                "command": "wreath quotient-check",
                "poset": poset_info(w.space().poset()),
                "factors": factor_labels(&w),
                "checks": checks,
            }))?)
        }
    }
}

fn parse_member_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad element {s:?}")))
        })
        .collect()
}

fn hopf_cmd(sub: &HopfCmd, format: Format, config: &RunConfig) -> Result<String> {
    match sub {
        HopfCmd::Analyze { order, factor } => {
            let w = parse_poset_spec(order)?;
            let factor = parse_factor_spec(factor)?;
            let report = hopf::hopfian_report(&w, &factor, config)?;
            match format {
                Format::Dot => Ok(report.chain_dot),
                Format::Text => {
                    let chain = report
                        .chain
                        .iter()
                        .map(|l| format!("{{{:?}}} order {}", l.downset, l.order))
                        .collect::<Vec<_>>()
                        .join(" < ");
                    Ok(format!(
                        "order {}: group order {}, chain {}, hopfian {} ({})",
                        report.order_description,
                        report.group_order,
                        chain,
                        report.hopfian.hopfian,
                        report.hopfian.methods.join(", ")
                    ))
                }
                Format::Json => to_json(&report),
            }
        }
    }
}

fn reduce_cmd(sub: &ReduceCmd, format: Format, config: &RunConfig) -> Result<String> {
    match sub {
        ReduceCmd::Tree {
            input,
            factor,
            branch,
            depth,
        } => {
            require_json_or_text(format, "reduce tree")?;
            let text = std::fs::read_to_string(input)?;
            let tree = Tree::parse_json(&text)?;
            let branch = branch.as_deref().map(BranchRule::parse).transpose()?;
            if branch.is_some() && depth.is_none() {
                return Err(Error::Parse("--branch requires --depth".into()));
            }
            let tt = TruncatedTree {
                tree,
                depth: depth.unwrap_or(0),
                branch,
            };
            let factor = parse_factor_spec(factor)?;
            let report = reduction::tree_to_group(&tt, &factor, config)?;
            match format {
                Format::Text => Ok(format!(
                    "{} nodes, reduction {}, group order {}, hopfian {}",
                    report.tree_nodes.len(),
                    report.reduction,
                    report.hopf.group_order,
                    report.hopf.hopfian.hopfian
                )),
                _ => to_json(&report),
            }
        }
    }
}

fn oracle_cmd(sub: &OracleCmd, format: Format, config: &RunConfig) -> Result<String> {
    match sub {
        OracleCmd::Group { name, input } => {
            require_json_or_text(format, "oracle group")?;
            let group = match (name, input) {
                (Some(n), None) => FiniteGroup::builtin(n)?,
                (None, Some(path)) => {
                    FiniteGroup::from_json_spec(&std::fs::read_to_string(path)?)?
                }
                _ => {
                    return Err(Error::Parse(
                        "exactly one of --name or --in is required".into(),
                    ))
                }
            };
            if group.size() as u64 > config.oracle_order_cap {
                return Err(Error::OrderGuard {
                    cap: config.oracle_order_cap,
                    order: group.size().to_string(),
                });
            }
            let classes = group.conjugacy_classes()?;
            let normals = group.normal_subgroups()?;
            let gens = group.greedy_generators();
            let cert = group.hopfian_bruteforce(&gens)?;
            if format == Format::Text {
                return Ok(format!(
                    "{}: order {}, {} conjugacy classes, {} normal subgroups, hopfian {}",
                    group.label(),
                    group.size(),
                    classes.len(),
                    normals.len(),
                    cert.hopfian
                ));
            }
            Ok(serde_json::to_string_pretty(&json!({
                "command": "oracle group",
                "group": group.label(),
                "size": group.size(),
                "conjugacy_class_count": classes.len(),
                "class_sizes": classes.iter().map(|c| c.len()).collect::<Vec<_>>(),
                "normal_subgroup_count": normals.len(),
                "normal_subgroup_orders": normals.iter().map(|s| s.size()).collect::<Vec<_>>(),
                "generators": gens,
                "hopfian": {
                    "verdict": cert.hopfian,
                    "endomorphism_count": cert.endomorphism_count,
                    "surjective_count": cert.surjective.len(),
                    "surjective_endomorphisms": cert.surjective,
                },
            }))?)
        }
    }
}

fn require_json_or_text(format: Format, command: &str) -> Result<()> {
    if format == Format::Dot {
        return Err(Error::FormatUnsupported {
            format: "dot".into(),
            command: command.into(),
        });
    }
    Ok(())
}
