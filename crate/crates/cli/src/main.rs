//! `sparsexc`: batch front end for graph generation, colorings, extended
//! formulation construction and exact verification.
//!
//! Exit codes: 0 on success or PASS, 1 on FAIL (a certificate is printed),
//! 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sparsexc::decomposition::{
    low_td_coloring, td_to_tree_decomposition, treedepth_exact, treedepth_upper, verify_coloring,
    Coloring, Verdict, DEFAULT_EXACT_BUDGET, DEFAULT_SUBSET_CAP,
};
use sparsexc::fop::{
    check_existential_decomposition, fop_vertices, iota_project, parse_formula, FoFormula,
};
use sparsexc::graph::{generate_family, generate_plc, parse_edge_list, serialize_edge_list, Family, LabeledGraph};
use sparsexc::lowerbound::{gap_report, verify_plc_max_is, verify_plc_projection};
use sparsexc::polytope::{verify_ef, verify_empty, EfReport, ExtendedFormulation};
use sparsexc::stab::{size_accounting, stab_ef_colored, stab_vrep, StabMode};
use sparsexc::{Error, Rational};

#[derive(Parser)]
#[command(name = "sparsexc", version, about = "Exact extended formulations of k-independent-set polytopes")]
struct Cli {
    /// Seed for every sampled or randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph of a named family as an edge list.
    GenGraph {
        /// path, cycle, complete, star, grid, subdivided_clique, petersen, random_planar
        #[arg(long)]
        family: String,
        /// Comma-separated family parameters, e.g. `4,4` for a grid. For
        /// random_planar a missing seed parameter is taken from `--seed`.
        #[arg(long, value_delimiter = ',', default_value = "")]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the PLC lower-bound graph.
    GenPlc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a treedepth certificate.
    Treedepth {
        #[arg(long)]
        graph: PathBuf,
        /// Use the exact solver instead of the DFS upper bound.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute or check a low treedepth coloring.
    Color {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: usize,
        /// Check this coloring file instead of computing one.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Run the exhaustive verification and report PASS/FAIL.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the colored extended formulation of STAB_k.
    BuildEf {
        #[command(flatten)]
        target: Target,
        /// A coloring file, or `auto`.
        #[arg(long, default_value = "auto")]
        coloring: String,
        #[arg(long)]
        out: PathBuf,
        /// Size report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also export the system in LP text format.
        #[arg(long)]
        lp_out: Option<PathBuf>,
    },
    /// Certify an extended formulation against brute-force STAB_k.
    VerifyEf {
        #[arg(long)]
        ef: PathBuf,
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check the PLC vertex count, maximum independent sets and cut projection.
    PlcVerify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Enumerate satisfying tuples of a first-order formula.
    FopEnum {
        #[arg(long)]
        graph: PathBuf,
        /// A formula file, or the formula text itself.
        #[arg(long)]
        formula: String,
        /// Check the color-class decomposition of the satisfying tuples.
        #[arg(long)]
        decompose: bool,
        /// A coloring file, or `auto` (used with `--decompose`).
        #[arg(long, default_value = "auto")]
        coloring: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measured lower-bound instance sizes next to the asymptotic forms.
    GapReport {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// exact or atmost
    #[arg(long)]
    mode: String,
}

impl Target {
    fn mode(&self) -> Result<StabMode> {
        Ok(StabMode::parse(&self.mode, self.k)?)
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match cli.command {
        Command::GenGraph { family, params, out } => gen_graph(&family, &params, seed, out.as_deref()),
        Command::GenPlc { k, n, out } => {
            let plc = generate_plc(k, n)?;
            emit(out.as_deref(), &serialize_edge_list(&LabeledGraph::from(plc.base)))?;
            Ok(Outcome::Pass)
        }
        Command::Treedepth { graph, exact, out } => treedepth(&graph, exact, out.as_deref()),
        Command::Color { graph, order, coloring, verify, out } => {
            color(&graph, order, coloring.as_deref(), verify, seed, out.as_deref())
        }
        Command::BuildEf { target, coloring, out, report, lp_out } => {
            build_ef(&target, &coloring, &out, report.as_deref(), lp_out.as_deref())
        }
        Command::VerifyEf { ef, target, report } => verify(&ef, &target, report.as_deref()),
        Command::PlcVerify { k, n } => plc_verify(k, n),
        Command::FopEnum { graph, formula, decompose, coloring, out } => {
            fop_enum(&graph, &formula, decompose.then_some(coloring.as_str()), out.as_deref())
        }
        Command::GapReport { k, n } => {
            print!("{}", gap_report(k, n)?);
            Ok(Outcome::Pass)
        }
    }
}

/// Writes to a temporary file beside `path` and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Writes to `out` if given, else to stdout.
fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<LabeledGraph> {
    parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn verdict(pass: bool) -> Outcome {
    println!("{}", if pass { "PASS" } else { "FAIL" });
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn gen_graph(family: &str, params: &[String], seed: u64, out: Option<&Path>) -> Result<Outcome> {
    let family: Family = family.parse()?;
    let mut values = params
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().parse::<usize>().with_context(|| format!("bad parameter `{p}`")))
        .collect::<Result<Vec<_>>>()?;
    if family == Family::RandomPlanar && values.len() == 1 {
        values.push(usize::try_from(seed).context("seed does not fit in usize")?);
    }
    let g = generate_family(family, &values)?;
    emit(out, &serialize_edge_list(&LabeledGraph::from(g)))?;
    Ok(Outcome::Pass)
}

fn treedepth(path: &Path, exact: bool, out: Option<&Path>) -> Result<Outcome> {
    let g = load_graph(path)?.base;
    let forest = if exact {
        treedepth_exact(&g, DEFAULT_EXACT_BUDGET)?.1
    } else {
        treedepth_upper(&g)
    };
    forest.check_closure(&g)?;
    let td = td_to_tree_decomposition(&g, &forest)?;
    let value = forest.value();
    println!("treedepth {} {value}", if exact { "=" } else { "<=" });
    println!("certificate: closure check passed, height {}", forest.height());
    println!("tree decomposition width {}", td.width());
    if let Some(p) = out {
        let doc = json!({
            "treedepth": value,
            "exact": exact,
            "parent": forest.parent,
            "tree_decomposition": { "bags": td.bags, "parent": td.parent },
        });
        write_atomic(p, &serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(Outcome::Pass)
}

fn color(
    path: &Path,
    order: usize,
    coloring: Option<&Path>,
    verify: bool,
    seed: u64,
    out: Option<&Path>,
) -> Result<Outcome> {
    let g = load_graph(path)?.base;
    let c = match coloring {
        Some(file) => Coloring::parse(&read(file)?, g.n())?,
        None => low_td_coloring(&g, order)?,
    };
    println!("{} colors on {} vertices", c.num_colors, g.n());
    if coloring.is_none() {
        println!("backend: {:?}, certified order {}", c.backend, c.order);
    }
    if let Some(p) = out {
        write_atomic(p, &c.serialize())?;
    }
    if !verify {
        return Ok(Outcome::Pass);
    }
    let report = verify_coloring(&g, &c, order, DEFAULT_SUBSET_CAP, seed)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    if report.sampled {
        println!("note: subsets were sampled with seed {seed}");
    }
    match &report.verdict {
        Verdict::Fail { colors, treedepth } => {
            let verts = c.union_of(colors);
            println!(
                "counterexample: classes {colors:?} (vertices {verts:?}) induce treedepth {treedepth} > {}",
                colors.len()
            );
        }
        Verdict::Inconclusive { colors, upper } => {
            println!("inconclusive: classes {colors:?} have only the upper bound {upper}");
        }
        Verdict::Pass => {}
    }
    Ok(verdict(report.passed()))
}

/// Resolves `--coloring` to a coloring certified at `order`.
fn resolve_coloring(source: &str, g: &sparsexc::graph::Graph, order: usize) -> Result<Coloring> {
    if source == "auto" {
        return Ok(low_td_coloring(g, order.max(1))?);
    }
    let mut c = Coloring::parse(&read(Path::new(source))?, g.n())?;
    c.backend = sparsexc::decomposition::ColoringBackend::External;
    let need = c.num_colors.min(order);
    let report = c.certify(g, need)?;
    if !report.passed() {
        bail!(
            "coloring {source} fails verification at order {need}: {}",
            serde_json::to_string(&report.verdict)?
        );
    }
    Ok(c)
}

fn build_ef(
    target: &Target,
    coloring: &str,
    out: &Path,
    report: Option<&Path>,
    lp_out: Option<&Path>,
) -> Result<Outcome> {
    let g = load_graph(&target.graph)?.base;
    let mode = target.mode()?;
    let c = resolve_coloring(coloring, &g, mode.k())?;
    let (ef, doc) = match stab_ef_colored(&g, &c, mode) {
        Ok((ef, size)) => {
            print!("{}", size_accounting(&size, None));
            let doc = serde_json::to_value(&size)?;
            (ef, doc)
        }
        Err(Error::EmptyPolytope) => {
            println!("STAB is empty for {mode} on {} vertices; writing the infeasible formulation", g.n());
            let doc = json!({ "n": g.n(), "k": mode.k(), "mode": mode.name(), "empty": true });
            (ExtendedFormulation::infeasible(g.n()), doc)
        }
        Err(e) => return Err(e.into()),
    };
    write_atomic(out, &ef.to_json()?)?;
    if let Some(p) = report {
        write_atomic(p, &serde_json::to_string_pretty(&doc)?)?;
    }
    if let Some(p) = lp_out {
        write_atomic(p, &ef.to_lp_format())?;
    }
    println!("wrote {} ({} variables, size {})", out.display(), ef.num_vars(), ef.size());
    Ok(Outcome::Pass)
}

fn print_ef_report(r: &EfReport) {
    println!(
        "size {}, {} variables; {} points, {} vertices, {} facets, {} equalities; {} LP solves",
        r.ef_size, r.ef_vars, r.num_points, r.num_vertices, r.hull_facets, r.hull_equalities, r.lp_solves
    );
    if !r.feasible && r.num_points > 0 {
        println!("certificate: the lifted system is infeasible");
    }
    if r.feasible && r.num_points == 0 {
        println!("certificate: the lifted system is feasible but the target set is empty");
    }
    for v in &r.violations {
        let w: Vec<String> = v.witness.iter().map(Rational::to_string).collect();
        println!(
            "violated {} `{}`: LP value {} against {}, at projected point ({})",
            v.kind,
            v.row,
            v.lp_value,
            v.bound,
            w.join(", ")
        );
    }
    for p in &r.unlifted {
        let w: Vec<String> = p.iter().map(Rational::to_string).collect();
        println!("vertex ({}) has no preimage", w.join(", "));
    }
}

fn verify(ef_path: &Path, target: &Target, report: Option<&Path>) -> Result<Outcome> {
    let g = load_graph(&target.graph)?.base;
    let mode = target.mode()?;
    let ef = ExtendedFormulation::from_json(&read(ef_path)?)
        .with_context(|| format!("loading {}", ef_path.display()))?;
    let r = match stab_vrep(&g, mode) {
        Ok(expected) => verify_ef(&ef, &expected)?,
        Err(Error::EmptyPolytope) => verify_empty(&ef)?,
        Err(e) => return Err(e.into()),
    };
    print_ef_report(&r);
    if let Some(p) = report {
        write_atomic(p, &serde_json::to_string_pretty(&r)?)?;
    }
    Ok(verdict(r.passed()))
}

fn plc_verify(k: usize, n: usize) -> Result<Outcome> {
    let max = verify_plc_max_is(k, n)?;
    println!(
        "vertices {} (formula {}); maximum independent set size {} (expected {}), {} maximum sets, one vertex per group: {}",
        max.vertices, max.formula_vertices, max.max_size, max.expected_max, max.num_max_sets, max.structure_ok
    );
    let proj = verify_plc_projection(k, n)?;
    println!("{}", proj.summary());
    for z in proj.missing.iter().take(5) {
        println!("missing cut vector {z:?}");
    }
    for z in proj.extra.iter().take(5) {
        println!("non-cut image {z:?}");
    }
    for (z, c) in proj.irregular_fibres.iter().take(5) {
        println!("fibre of {z:?} has {c} preimages");
    }
    Ok(verdict(max.passed && proj.passed))
}

fn load_formula(source: &str) -> Result<FoFormula> {
    let path = Path::new(source);
    let text = if !source.trim_start().starts_with('(') && path.is_file() {
        read(path)?
    } else {
        source.to_string()
    };
    Ok(parse_formula(&text)?)
}

fn fop_enum(path: &Path, formula: &str, decompose: Option<&str>, out: Option<&Path>) -> Result<Outcome> {
    let g = load_graph(path)?;
    let phi = load_formula(formula)?;
    println!(
        "formula {phi}: k = {}, quantified = {}, existential = {}",
        phi.k(),
        phi.ell,
        phi.existential
    );
    let vectors = fop_vertices(&g, &phi)?;
    let images = iota_project(&vectors);
    println!("{} satisfying tuples, {} distinct vertex-count images", vectors.len(), images.len());
    for cv in &vectors {
        let t: Vec<String> = cv.tuple.iter().map(usize::to_string).collect();
        println!("({})", t.join(", "));
    }
    if let Some(p) = out {
        let doc = json!({
            "formula": phi.to_string(),
            "k": phi.k(),
            "ell": phi.ell,
            "existential": phi.existential,
            "tuples": vectors.iter().map(|cv| &cv.tuple).collect::<Vec<_>>(),
        });
        write_atomic(p, &serde_json::to_string_pretty(&doc)?)?;
    }
    let Some(source) = decompose else {
        return Ok(Outcome::Pass);
    };
    let c = resolve_coloring(source, &g.base, phi.k() + phi.ell)?;
    let r = check_existential_decomposition(&g, &phi, &c)?;
    println!(
        "decomposition over {} subgraphs of {} color classes: {} tuples in the graph, {} in the union",
        r.num_subgraphs, r.num_colors, r.global_tuples, r.union_tuples
    );
    if let Some((t, side)) = &r.witness {
        println!("witness {t:?}: {side}");
    }
    Ok(verdict(r.passed))
}
