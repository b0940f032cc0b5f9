//! `qf`: command-line front end.
//!
//! Exit codes: 0 success, 1 claim failure or no isomorphism, 2 axiom
//! violation, 3 parse or usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use cyclic_quandles::claims::reproduce;
use cyclic_quandles::constructors::{
    adjoin_common_fixed_point, extract_common_fixed_point, extract_unchecked, ConstructError, FamilySpec,
};
use cyclic_quandles::io::{format_labeled_quotient, format_quandle, parse_quandle, Format, LoadError};
use cyclic_quandles::iso::find_isomorphism;
use cyclic_quandles::perm::Permutation;
use cyclic_quandles::quandle::{Quandle, QuandleError};
use cyclic_quandles::search::{enumerate, Mode, PruneRule, SearchError, SearchParams};
use cyclic_quandles::structure::{
    association_classes, check_structure_conditions, common_fixed_points, fixed_point_sets,
    is_connected, normalize_labeling, orbit_certificate, quotient, PartitionClasses,
};

#[derive(Parser)]
#[command(name = "qf", version, about = "Finite quandles of cyclic type")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Style::Human)]
    format: Style,
    /// Worker threads for enumerate and reproduce (0: automatic).
    #[arg(long, global = true, env = "QF_DEFAULT_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Layout {
    Table,
    Perms,
}

impl From<Layout> for Format {
    fn from(l: Layout) -> Format {
        match l {
            Layout::Table => Format::Table,
            Layout::Perms => Format::Permutations,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify the quandle axioms for a table or permutation-list file.
    Check { path: PathBuf },
    /// Structural summary: fixed-point sets, association classes, orbits.
    Info { path: PathBuf },
    /// Build a named family: trivial N | dihedral N | q62 | two-f F | divisible N F.
    Construct {
        family: String,
        params: Vec<usize>,
        #[arg(long = "as", value_enum, default_value_t = Layout::Table)]
        layout: Layout,
    },
    /// Quotient by a congruence; the association classes by default.
    Quotient {
        path: PathBuf,
        /// Classes such as "{1,3} {2,4}".
        #[arg(long)]
        partition: Option<String>,
    },
    /// Search for an isomorphism between two quandles.
    Iso { first: PathBuf, second: PathBuf },
    /// Adjoin a common fixed point using a permutation in cycle notation.
    Adjoin {
        path: PathBuf,
        mu: String,
        #[arg(long = "as", value_enum, default_value_t = Layout::Table)]
        layout: Layout,
    },
    /// Remove a common fixed point.
    Extract {
        path: PathBuf,
        point: usize,
        /// Skip the cyclic-type range hypotheses.
        #[arg(long)]
        unchecked: bool,
        #[arg(long = "as", value_enum, default_value_t = Layout::Table)]
        layout: Layout,
    },
    /// Enumerate quandles of cyclic type (n, f) up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value = "auto")]
        mode: Mode,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Disable a structured-mode pruning rule; repeatable.
        #[arg(long = "no-prune")]
        no_prune: Vec<PruneRule>,
        /// Search even where a closed-form rule rules the cell out.
        #[arg(long)]
        no_closed_form: bool,
    },
    /// Run a claim check by id, or `all`.
    Reproduce { id: String },
}

enum Failure {
    Claim(String),
    Axioms(String),
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

// hypotheses whose failure means the result would not be a quandle
fn construct_failure(e: ConstructError) -> Failure {
    match e {
        ConstructError::NotCommuting(_) | ConstructError::MixesPermutations { .. } | ConstructError::Quandle(_) => {
            Failure::Axioms(e.to_string())
        }
        _ => usage(e),
    }
}

fn load(path: &Path) -> Result<Quandle, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_quandle(&text).map_err(|e| match e {
        LoadError::Parse(p) => usage(format!("{}: {p}", path.display())),
        LoadError::Invalid(QuandleError::Axioms(v)) => {
            let lines: Vec<String> = v.iter().map(|x| format!("  {x}")).collect();
            Failure::Axioms(format!("{}: axiom violations\n{}", path.display(), lines.join("\n")))
        }
        LoadError::Invalid(other) => usage(format!("{}: {other}", path.display())),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn profile_text(q: &Quandle) -> String {
    let p = q.profile();
    if p.is_constant() {
        format!("{} (constant)", p.patterns()[0])
    } else {
        p.patterns().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn check(style: Style, path: &Path) -> Outcome {
    let q = match load(path) {
        Err(Failure::Axioms(msg)) if style == Style::Machine => {
            return Err(Failure::Axioms(format!("valid=no\n{}", msg.lines().skip(1).map(|l| format!("violation={}", l.trim())).collect::<Vec<_>>().join("\n"))));
        }
        other => other?,
    };
    let n = q.order();
    let ct = q.cyclic_type_fixed_count();
    let connected = is_connected(&q);
    let mut out = String::new();
    match style {
        Style::Human => {
            writeln!(out, "valid quandle of order {n}").unwrap();
            writeln!(out, "profile: {}", profile_text(&q)).unwrap();
            let kind = ct.map_or("not of cyclic type".to_string(), |f| format!("cyclic type ({n},{f})"));
            writeln!(out, "{kind}, {}", if connected { "connected" } else { "not connected" }).unwrap();
        }
        Style::Machine => {
            writeln!(out, "valid=yes").unwrap();
            writeln!(out, "order={n}").unwrap();
            let pats: Vec<String> = q.profile().patterns().iter().map(|p| p.to_string()).collect();
            writeln!(out, "profile={}", pats.join(";")).unwrap();
            writeln!(out, "cyclic_type={}", ct.map_or("none".into(), |f| format!("{n},{f}"))).unwrap();
            writeln!(out, "connected={}", yes(connected)).unwrap();
        }
    }
    Ok(out)
}

fn set_text(s: &std::collections::BTreeSet<usize>) -> String {
    let xs: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", xs.join(","))
}

fn info(style: Style, path: &Path) -> Outcome {
    let q = load(path)?;
    let mut out = check(style, path)?;
    let n = q.order();
    let fixed = fixed_point_sets(&q);
    let classes = association_classes(&q);
    let common = common_fixed_points(&q);
    let orbit = orbit_certificate(&q);
    let orbit_size = orbit.words.iter().filter(|w| w.is_some()).count();
    let conditions = q.cyclic_type_fixed_count().filter(|&f| n >= 2 * f).and_then(|f| {
        let (normal, _) = normalize_labeling(&q)?;
        check_structure_conditions(&normal, f).ok()
    });
    match style {
        Style::Human => {
            for (i, s) in fixed.iter().enumerate() {
                writeln!(out, "F_{} = {}", i + 1, set_text(s)).unwrap();
            }
            match &classes {
                Ok(c) => writeln!(out, "association classes: {c}").unwrap(),
                Err(e) => writeln!(out, "association classes: {e}").unwrap(),
            }
            writeln!(out, "common fixed points: {}", set_text(&common)).unwrap();
            writeln!(out, "orbit of 1: {orbit_size} of {n} points").unwrap();
            if let Some(r) = conditions {
                let held: Vec<String> = (1..=6).map(|c| format!("{c}:{}", yes(r.holds(c)))).collect();
                writeln!(out, "normal-form conditions (normalized labeling): {}", held.join(" ")).unwrap();
            }
        }
        Style::Machine => {
            for (i, s) in fixed.iter().enumerate() {
                writeln!(out, "fixed_{}={}", i + 1, set_text(s)).unwrap();
            }
            match &classes {
                Ok(c) => writeln!(out, "association_classes={c}").unwrap(),
                Err(_) => writeln!(out, "association_classes=not-transitive").unwrap(),
            }
            writeln!(out, "common_fixed_points={}", set_text(&common)).unwrap();
            writeln!(out, "orbit_size={orbit_size}").unwrap();
            if let Some(r) = conditions {
                for c in 1..=6 {
                    writeln!(out, "condition_{c}={}", yes(r.holds(c))).unwrap();
                }
            }
        }
    }
    Ok(out)
}

fn construct(family: &str, params: &[usize], layout: Layout) -> Outcome {
    let spec = FamilySpec::parse(family, params)
        .ok_or_else(|| usage(format!("unknown family or wrong parameter count: {family} {params:?}")))?;
    let q = spec.build().map_err(usage)?;
    Ok(format_quandle(&q, layout.into()))
}

fn quotient_cmd(style: Style, path: &Path, partition: Option<&str>) -> Outcome {
    let q = load(path)?;
    let classes = match partition {
        Some(text) => PartitionClasses::parse(q.order(), text).map_err(usage)?,
        None => association_classes(&q).map_err(usage)?,
    };
    let r = quotient(&q, &classes).map_err(usage)?;
    Ok(match style {
        Style::Human => format_labeled_quotient(&r, &classes),
        Style::Machine => format_quandle(&r, Format::Table),
    })
}

fn iso(style: Style, a: &Path, b: &Path) -> Outcome {
    let (q, r) = (load(a)?, load(b)?);
    match (find_isomorphism(&q, &r), style) {
        (Some(w), Style::Human) => Ok(format!("isomorphic\n{w}\n")),
        (Some(w), Style::Machine) => Ok(format!(
            "isomorphic=yes\nalpha={}\nmapping={}\n",
            w.alpha(),
            w.mapping_line()
        )),
        (None, Style::Human) => Err(Failure::Claim("not isomorphic".into())),
        (None, Style::Machine) => Err(Failure::Claim("isomorphic=no".into())),
    }
}

fn adjoin(path: &Path, mu: &str, layout: Layout) -> Outcome {
    let q = load(path)?;
    let mu = Permutation::parse_cycles(q.order(), mu).map_err(usage)?;
    let r = adjoin_common_fixed_point(&q, &mu).map_err(construct_failure)?;
    Ok(format_quandle(&r, layout.into()))
}

fn extract(path: &Path, point: usize, unchecked: bool, layout: Layout) -> Outcome {
    let q = load(path)?;
    let r = if unchecked {
        extract_unchecked(&q, point)
    } else {
        extract_common_fixed_point(&q, point)
    }
    .map_err(construct_failure)?;
    Ok(format_quandle(&r, layout.into()))
}

#[allow(clippy::too_many_arguments)]
fn enumerate_cmd(
    style: Style,
    jobs: usize,
    n: usize,
    f: usize,
    mode: Mode,
    budget_nodes: Option<u64>,
    budget_seconds: Option<u64>,
    no_prune: &[PruneRule],
    no_closed_form: bool,
) -> Outcome {
    let mut params = SearchParams::new(n, f).mode(mode).jobs(jobs);
    if let Some(k) = budget_nodes {
        params = params.node_budget(k);
    }
    if let Some(s) = budget_seconds {
        params = params.time_budget(Duration::from_secs(s));
    }
    for &r in no_prune {
        params = params.disable(r);
    }
    if no_closed_form {
        params = params.without_closed_form();
    }
    let r = match enumerate(&params) {
        Ok(r) => r,
        Err(SearchError::Infeasible { n, f, rule }) => {
            let mut out = String::new();
            match style {
                Style::Human => writeln!(out, "no quandles of cyclic type ({n},{f}): ruled out by the {rule} rule").unwrap(),
                Style::Machine => writeln!(out, "infeasible={rule}").unwrap(),
            }
            writeln!(out, "result n={n} f={f} classes=0 labeled=0 exhaustive=yes").unwrap();
            return Ok(out);
        }
        Err(e) => return Err(usage(e)),
    };
    let mut out = String::new();
    let kind = match r.label_kind {
        cyclic_quandles::search::LabelKind::All => "all labelings",
        cyclic_quandles::search::LabelKind::Normalized => "normalized labelings",
    };
    match style {
        Style::Human => {
            writeln!(out, "mode {}, {} nodes", r.mode.name(), r.stats.nodes).unwrap();
            for (i, c) in r.classes.iter().enumerate() {
                let q = &c.representative;
                writeln!(
                    out,
                    "class {}: {} labeled, {}",
                    i + 1,
                    c.size,
                    if is_connected(q) { "connected" } else { "not connected" }
                )
                .unwrap();
                out.push_str(&format_quandle(q, Format::Permutations));
            }
            writeln!(out, "labeled count is over {kind}").unwrap();
            if !r.exhaustive {
                writeln!(out, "budget exhausted: results are partial").unwrap();
            }
        }
        Style::Machine => {
            writeln!(out, "mode={}", r.mode.name()).unwrap();
            writeln!(out, "nodes={}", r.stats.nodes).unwrap();
            writeln!(out, "labeled_kind={}", kind.replace(' ', "-")).unwrap();
            for (i, c) in r.classes.iter().enumerate() {
                let perms: Vec<String> = c.representative.permutations().iter().map(|p| p.to_string()).collect();
                writeln!(
                    out,
                    "class index={} size={} connected={} perms={}",
                    i + 1,
                    c.size,
                    yes(is_connected(&c.representative)),
                    perms.join(";")
                )
                .unwrap();
            }
        }
    }
    writeln!(out, "{}", r.machine_line()).unwrap();
    Ok(out)
}

fn reproduce_cmd(style: Style, jobs: usize, id: &str) -> Outcome {
    let outcomes = reproduce(id, jobs).map_err(usage)?;
    let mut out = String::new();
    for o in &outcomes {
        match style {
            Style::Human => writeln!(out, "{o}").unwrap(),
            Style::Machine => writeln!(out, "claim id={} passed={}", o.id, yes(o.passed)).unwrap(),
        }
    }
    if outcomes.iter().all(|o| o.passed) {
        Ok(out)
    } else {
        Err(Failure::Claim(out.trim_end().to_string()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let style = cli.format;
    let result = match &cli.command {
        Command::Check { path } => check(style, path),
        Command::Info { path } => info(style, path),
        Command::Construct { family, params, layout } => construct(family, params, *layout),
        Command::Quotient { path, partition } => quotient_cmd(style, path, partition.as_deref()),
        Command::Iso { first, second } => iso(style, first, second),
        Command::Adjoin { path, mu, layout } => adjoin(path, mu, *layout),
        Command::Extract {
            path,
            point,
            unchecked,
            layout,
        } => extract(path, *point, *unchecked, *layout),
        Command::Enumerate {
            n,
            f,
            mode,
            budget_nodes,
            budget_seconds,
            no_prune,
            no_closed_form,
        } => enumerate_cmd(
            style,
            cli.jobs,
            *n,
            *f,
            *mode,
            *budget_nodes,
            *budget_seconds,
            no_prune,
            *no_closed_form,
        ),
        Command::Reproduce { id } => reproduce_cmd(style, cli.jobs, id),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Claim(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Axioms(msg)) => {
            println!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qf: {msg}");
            ExitCode::from(3)
        }
    }
}
