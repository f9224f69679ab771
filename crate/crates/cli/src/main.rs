use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootpoly::ehrhart::{check_reciprocity, count_function, count_interior, counts_json, fit_quasipolynomial};
use rootpoly::exact::{fmt_rat, fmt_rats, Rat};
use rootpoly::io::{parse_polytope_file, polytope_to_json, PolytopeFile};
use rootpoly::lattice::DualPair;
use rootpoly::polytope::{cayley_sum, minkowski_sum, Polytope};
use rootpoly::roots::RootSystem;
use rootpoly::semigroup::{
    check_koszul_up_to, check_normality, check_quadratic_generation, default_normality_bound, DEFAULT_DEGREE_BOUND,
    DEFAULT_FIBER_CAP,
};
use rootpoly::splitting::{is_diagonally_split, SplittingPolytope};
use rootpoly::verify::{run_item, select, Options};
use rootpoly::Error;

/// Exact computations on polytopes cut out by root systems: diagonal
/// splitting, Ehrhart quasipolynomials, normality and Koszulness.
#[derive(Parser, Debug)]
#[command(name = "rootpoly", version)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,

    /// Progress messages on stderr (repeat for more).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots and lattices of a root system such as A3, F4 or A2xB2.
    Rootsys {
        #[arg(value_name = "SPEC", required_unless_present = "root_system")]
        spec: Option<String>,
        #[arg(long, value_name = "SPEC", conflicts_with = "spec")]
        root_system: Option<String>,
    },
    /// Polytope conversions and constructions.
    Polytope(PolytopeArgs),
    /// Does every residue class of M/qM have a representative inside the
    /// splitting polytope?
    CheckSplit(SplitArgs),
    /// Lattice point counts of dilates, fitted quasipolynomial, reciprocity.
    Ehrhart(EhrhartArgs),
    /// Every lattice point of mP is a sum of m lattice points of P.
    Normality(DegreeArgs),
    /// Fiber graphs of the semigroup are connected by quadratic moves.
    Quadratic(QuadraticArgs),
    /// Vanishing of Tor_i(Z, Z)_j for i != j via interval homology.
    Koszul(DegreeArgs),
    /// Replay the reference computations and print a pass/fail table.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Debug)]
struct PolytopeArgs {
    #[arg(value_enum)]
    action: PolytopeAction,
    /// Input polytope; repeat for minkowski and cayley.
    #[arg(long, value_name = "FILE", required = true)]
    polytope: Vec<PathBuf>,
    /// Root system for cut-out.
    #[arg(long, value_name = "SPEC")]
    root_system: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PolytopeAction {
    /// Vertex description.
    Hull,
    /// Inequality description.
    Ineq,
    Minkowski,
    Cayley,
    Faces,
    /// Is every facet normal a multiple of a root?
    CutOut,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RootSource {
    /// Every root of the root system.
    All,
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Polytope whose facet normals define the splitting polytope.
    #[arg(long, value_name = "FILE")]
    polytope: Option<PathBuf>,
    #[arg(long, value_name = "SPEC")]
    root_system: Option<String>,
    /// Take the normals from the roots instead of a polytope.
    #[arg(long, value_enum, requires = "root_system", conflicts_with = "polytope")]
    normals_from_roots: Option<RootSource>,
}

#[derive(Args, Debug)]
struct SplitArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    q: u64,
}

#[derive(Args, Debug)]
struct EhrhartArgs {
    /// Splitting polytope itself (or use --root-system with --normals-from-roots).
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 8)]
    qmax: u64,
    /// Fit the quasipolynomial (period from vertex denominators unless given).
    #[arg(long)]
    fit: bool,
    #[arg(long, requires = "fit")]
    period: Option<u64>,
    /// Check Q(-q) = (-1)^dim times the interior count for q = 1..qmax.
    #[arg(long)]
    reciprocity: bool,
}

#[derive(Args, Debug)]
struct DegreeArgs {
    #[arg(long, value_name = "FILE")]
    polytope: PathBuf,
    #[arg(long, value_name = "M")]
    max_degree: Option<usize>,
}

#[derive(Args, Debug)]
struct QuadraticArgs {
    #[command(flatten)]
    degree: DegreeArgs,
    /// Largest fiber explored before giving up.
    #[arg(long, default_value_t = DEFAULT_FIBER_CAP)]
    fiber_cap: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only items whose number or name contains NAME.
    #[arg(long, value_name = "NAME")]
    only: Option<String>,
    /// Negative control: add this to every computed count.
    #[arg(long, hide = true, default_value_t = 0, allow_hyphen_values = true)]
    count_offset: i64,
}

/// A JSON report and whether the checked property held.
struct Outcome {
    report: Value,
    holds: bool,
    /// Printed on stdout even when the report goes to a file.
    table: Option<String>,
}

impl Outcome {
    fn new(report: Value, holds: bool) -> Self {
        Outcome { report, holds, table: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, o)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, o: Outcome) -> anyhow::Result<bool> {
    let text = serde_json::to_string_pretty(&o.report)? + "\n";
    if let Some(t) = &o.table {
        print!("{t}");
    }
    match &cli.json {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None if o.table.is_none() => print!("{text}"),
        None => {}
    }
    Ok(o.holds)
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let log = |level: u8, msg: &str| {
        if cli.verbose >= level {
            eprintln!("{msg}");
        }
    };
    match &cli.command {
        Command::Rootsys { spec, root_system } => {
            let rs = root_system_arg(spec.as_deref().or(root_system.as_deref()).unwrap_or_default())?;
            Ok(Outcome::new(rootsys_json(&rs), true))
        }
        Command::Polytope(a) => polytope_cmd(a),
        Command::CheckSplit(a) => {
            if a.q < 2 {
                bail!("--q must be at least 2");
            }
            let f = splitting_polytope(&a.source)?;
            log(
                1,
                &format!("splitting polytope: dim {}, {} vertices", f.polytope().dim(), f.polytope().vertices().len()),
            );
            let report = is_diagonally_split(&f, a.q)?;
            let mut j = report.to_json();
            j["normals"] = json!(f.normals().len());
            Ok(Outcome::new(j, report.is_split()))
        }
        Command::Ehrhart(a) => ehrhart_cmd(a, &log),
        Command::Normality(a) => {
            let p = load(&a.polytope)?.1;
            let m = a.max_degree.unwrap_or_else(|| default_normality_bound(&p));
            let r = check_normality(&p, m)?;
            Ok(Outcome::new(r.to_json(), r.holds()))
        }
        Command::Quadratic(a) => {
            let p = load(&a.degree.polytope)?.1;
            let m = a.degree.max_degree.unwrap_or(DEFAULT_DEGREE_BOUND);
            let r = check_quadratic_generation(&p, m, a.fiber_cap)?;
            Ok(Outcome::new(r.to_json(), r.holds()))
        }
        Command::Koszul(a) => {
            let p = load(&a.polytope)?.1;
            let j = a.max_degree.unwrap_or(DEFAULT_DEGREE_BOUND);
            let r = check_koszul_up_to(&p, j)?;
            Ok(Outcome::new(r.to_json(), r.holds()))
        }
        Command::VerifyPaper(a) => verify_cmd(a, &log),
    }
}

fn root_system_arg(spec: &str) -> anyhow::Result<RootSystem> {
    Ok(spec.parse::<RootSystem>()?)
}

fn load(path: &Path) -> anyhow::Result<(PolytopeFile, Polytope, DualPair)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ctx = || format!("polytope file {}", path.display());
    let file = parse_polytope_file(&text).with_context(ctx)?;
    let p = file.to_polytope().with_context(ctx)?;
    let pair = match &file.dual {
        Some(_) => file.dual_pair().with_context(ctx)?,
        None => DualPair::from_m(p.lattice().clone()),
    };
    Ok((file, p, pair))
}

fn rootsys_json(rs: &RootSystem) -> Value {
    let mut roots: Vec<Vec<Rat>> = rs.roots().to_vec();
    roots.sort();
    json!({
        "name": rs.name(),
        "rank": rs.rank(),
        "ambient_dim": rs.ambient_dim(),
        "root_count": roots.len(),
        "roots": roots.iter().map(|r| fmt_rats(r)).collect::<Vec<_>>(),
        "m": rs.m().to_json(),
        "n": rs.n().to_json(),
    })
}

fn polytope_cmd(a: &PolytopeArgs) -> anyhow::Result<Outcome> {
    let loaded = a.polytope.iter().map(|p| load(p)).collect::<anyhow::Result<Vec<_>>>()?;
    let single = || -> anyhow::Result<&(PolytopeFile, Polytope, DualPair)> {
        match loaded.as_slice() {
            [one] => Ok(one),
            _ => bail!("{:?} takes exactly one --polytope", a.action),
        }
    };
    let keep = |v: Value, keys: &[&str]| -> Value {
        Value::Object(keys.iter().filter_map(|k| v.get(*k).map(|x| (k.to_string(), x.clone()))).collect())
    };
    match a.action {
        PolytopeAction::Hull => {
            let (_, p, pair) = single()?;
            let full = polytope_to_json(p, pair)?;
            Ok(Outcome::new(keep(full, &["lattice", "dual", "dim", "is_lattice", "vertices"]), true))
        }
        PolytopeAction::Ineq => {
            let (_, p, pair) = single()?;
            let full = polytope_to_json(p, pair)?;
            Ok(Outcome::new(keep(full, &["lattice", "dual", "dim", "inequalities"]), true))
        }
        PolytopeAction::Minkowski | PolytopeAction::Cayley => {
            let parts: Vec<Polytope> = loaded.iter().map(|(_, p, _)| p.clone()).collect();
            let lattice = parts[0].lattice();
            let sum = if a.action == PolytopeAction::Minkowski {
                minkowski_sum(&parts, lattice)?
            } else {
                cayley_sum(&parts, lattice)?
            };
            let pair = DualPair::from_m(sum.lattice().clone());
            Ok(Outcome::new(polytope_to_json(&sum, &pair)?, true))
        }
        PolytopeAction::Faces => {
            let (_, p, _) = single()?;
            let faces = p.faces();
            let mut f_vector = vec![0usize; p.dim() + 1];
            let list: Vec<Value> = faces
                .iter()
                .map(|f| {
                    f_vector[f.dim] += 1;
                    let mut vs: Vec<Vec<Rat>> = f.vertices.iter().map(|&i| p.to_ambient(&p.vertices()[i])).collect();
                    vs.sort();
                    json!({"dim": f.dim, "vertices": vs.iter().map(|v| fmt_rats(v)).collect::<Vec<_>>()})
                })
                .collect();
            Ok(Outcome::new(json!({"dim": p.dim(), "f_vector": f_vector, "faces": list}), true))
        }
        PolytopeAction::CutOut => {
            let (_, p, pair) = single()?;
            let spec = a.root_system.as_deref().ok_or_else(|| anyhow!("cut-out needs --root-system"))?;
            let rs = root_system_arg(spec)?;
            let report = p.is_cut_out(&rs)?;
            let ineqs = p.ambient_inequalities(pair)?;
            let facets: Vec<Value> = ineqs
                .iter()
                .zip(&report.witnesses)
                .map(|(i, w)| {
                    json!({
                        "normal": fmt_rats(&i.normal),
                        "offset": fmt_rat(&i.offset),
                        "root": w.as_ref().map(|r| fmt_rats(r)),
                    })
                })
                .collect();
            Ok(Outcome::new(
                json!({"root_system": rs.name(), "cut_out": report.cut_out, "facets": facets}),
                report.cut_out,
            ))
        }
    }
}

fn splitting_polytope(src: &SourceArgs) -> anyhow::Result<SplittingPolytope> {
    if src.normals_from_roots.is_some() {
        let rs = root_system_arg(src.root_system.as_deref().unwrap_or_default())?;
        return Ok(SplittingPolytope::of_root_system(&rs)?);
    }
    let path = src.polytope.as_ref().ok_or_else(|| anyhow!("need --polytope or --normals-from-roots all"))?;
    let (_, p, _) = load(path)?;
    if let Some(spec) = &src.root_system {
        let rs = root_system_arg(spec)?;
        let report = p.is_cut_out(&rs)?;
        if !report.cut_out {
            bail!("polytope is not cut out by {}: facets {:?} have no root normal", rs.name(), report.failing_facets());
        }
    }
    Ok(SplittingPolytope::of_polytope(&p)?)
}

fn ehrhart_cmd(a: &EhrhartArgs, log: &dyn Fn(u8, &str)) -> anyhow::Result<Outcome> {
    // A polytope file is the counted polytope itself; root systems give
    // their splitting polytope.
    let f = match (&a.source.polytope, a.source.normals_from_roots) {
        (Some(path), _) => load(path)?.1,
        (None, Some(_)) => splitting_polytope(&a.source)?.polytope().clone(),
        (None, None) => bail!("need --polytope or --root-system with --normals-from-roots all"),
    };
    if a.qmax < 1 {
        bail!("--qmax must be at least 1");
    }
    let counts = count_function(&f, a.qmax)?;
    log(1, &format!("counted q = 0..{}", a.qmax));
    let mut report = json!({
        "dim": f.dim(),
        "counts": counts_json(&counts),
        "period": Value::Null,
        "components": Value::Null,
        "reciprocity": Value::Null,
    });
    let mut holds = true;
    if a.fit || a.reciprocity {
        match fit_quasipolynomial(&f, a.period, None) {
            Ok(qp) => {
                report["period"] = json!(qp.period);
                report["components"] = qp.to_json()["components"].clone();
                report["polynomials"] =
                    json!((0..qp.components.len()).map(|k| qp.component_string(k)).collect::<Vec<_>>());
                let mismatched: Vec<u64> = counts
                    .iter()
                    .filter(|(q, v)| qp.evaluate(**q as i64) != Rat::from_integer((**v).into()))
                    .map(|(q, _)| *q)
                    .collect();
                if !mismatched.is_empty() {
                    holds = false;
                    report["fit_mismatch"] = json!(mismatched);
                }
                if a.reciprocity {
                    let failures = check_reciprocity(&f, &qp, 1..=a.qmax)?;
                    let interior: BTreeMap<u64, u64> =
                        (1..=a.qmax).map(|q| Ok((q, count_interior(&f, q)?))).collect::<Result<_, Error>>()?;
                    report["interior_counts"] = counts_json(&interior);
                    report["reciprocity"] = json!(if failures.is_empty() { "pass" } else { "fail" });
                    report["reciprocity_failures"] = json!(failures
                        .iter()
                        .map(|r| json!({"q": r.q, "evaluated": fmt_rat(&r.evaluated), "interior": r.interior}))
                        .collect::<Vec<_>>());
                    holds &= failures.is_empty();
                }
            }
            Err(Error::Interpolation(msg)) => {
                report["fit_error"] = json!(msg);
                holds = false;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::new(report, holds))
}

fn verify_cmd(a: &VerifyArgs, log: &dyn Fn(u8, &str)) -> anyhow::Result<Outcome> {
    let items = select(a.only.as_deref());
    if items.is_empty() {
        bail!("--only {:?} matches no item", a.only.as_deref().unwrap_or_default());
    }
    let opts = Options { count_offset: a.count_offset };
    let mut table = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for item in &items {
        log(1, &format!("running {} {}", item.id, item.name));
        let r = run_item(item, &opts);
        all &= r.pass;
        table.push_str(&format!(
            "[{}] {:>2} {:<24} {:>8.2}s  {}\n        expected: {}\n        computed: {}\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed.as_secs_f64(),
            r.claim,
            r.expected,
            r.computed,
        ));
        rows.push(json!({
            "id": r.id,
            "name": r.name,
            "claim": r.claim,
            "expected": r.expected,
            "computed": r.computed,
            "pass": r.pass,
        }));
    }
    let passed = rows.iter().filter(|r| r["pass"] == json!(true)).count();
    table.push_str(&format!("{passed}/{} items passed\n", rows.len()));
    Ok(Outcome { report: json!({"all_pass": all, "items": rows}), holds: all, table: Some(table) })
}
