//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use sparsexc::decomposition::{
    low_td_coloring, td_to_tree_decomposition, treedepth_exact, verify_coloring, Coloring, Verdict,
    DEFAULT_EXACT_BUDGET, DEFAULT_SUBSET_CAP,
};
use sparsexc::fop::{
    check_existential_decomposition, fop_vertices, iota_formula, iota_project, parse_formula,
    satisfying_tuples,
};
use sparsexc::graph::{generate_family, Family, Graph, LabeledGraph};
use sparsexc::lowerbound::{verify_plc_max_is, verify_plc_projection};
use sparsexc::polytope::{hull, lp_max, verify_ef, LpStatus, VRep};
use sparsexc::stab::{stab_ef_colored, stab_le_via_union, stab_vrep, StabMode};
use sparsexc::{Error, Rational};

const BIN: &str = env!("CARGO_BIN_EXE_sparsexc");

type Outcome = Result<String, String>;

fn corpus() -> Vec<(&'static str, Family, Vec<usize>)> {
    vec![
        ("P8", Family::Path, vec![8]),
        ("C9", Family::Cycle, vec![9]),
        ("grid4x4", Family::Grid, vec![4, 4]),
        ("petersen", Family::Petersen, vec![]),
        ("star7", Family::Star, vec![7]),
        ("K5", Family::Complete, vec![5]),
        ("planar10", Family::RandomPlanar, vec![10, 1]),
        ("planar12", Family::RandomPlanar, vec![12, 2]),
        ("planar14", Family::RandomPlanar, vec![14, 3]),
    ]
}

fn corpus_graphs() -> Vec<(&'static str, Graph)> {
    corpus()
        .into_iter()
        .map(|(name, f, p)| (name, generate_family(f, &p).unwrap()))
        .collect()
}

fn modes(k: usize) -> [StabMode; 2] {
    [StabMode::Exact(k), StabMode::AtMost(k)]
}

fn mask_of(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

/// Treedepth by the recursion `td(S) = 1 + min_v td(S - v)` on connected
/// `S`, maximum over components otherwise, memoised on bitmasks.
fn brute_td(g: &Graph, set: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if set == 0 {
        return 0;
    }
    if let Some(&t) = memo.get(&set) {
        return t;
    }
    let first = set.trailing_zeros() as usize;
    let mut comp = 1u32 << first;
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if set & (1 << w) != 0 && comp & (1 << w) == 0 {
                comp |= 1 << w;
                stack.push(w);
            }
        }
    }
    let t = if comp != set {
        brute_td(g, comp, memo).max(brute_td(g, set & !comp, memo))
    } else {
        let mut best = usize::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.min(1 + brute_td(g, set & !(1 << v), memo));
        }
        best
    };
    memo.insert(set, t);
    t
}

fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| g.edges().all(|(u, v)| s & (1 << u) == 0 || s & (1 << v) == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    sparsexc::util::combinations(n, k).collect()
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().expect("running sparsexc");
    let text = format!(
        "{}{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    (out.status.code().unwrap_or(-1), text)
}

struct Built {
    case: String,
    report: Value,
    ef_rows: usize,
}

/// `gen-graph`, `build-ef --coloring auto` and `verify-ef` through the binary.
fn cli_round_trip(dir: &Path, name: &str, family: Family, params: &[usize], k: usize, mode: &str) -> Result<Built, String> {
    let case = format!("{name} {mode}({k})");
    let graph = dir.join(format!("{name}.txt"));
    let ef = dir.join(format!("{name}-{mode}{k}.json"));
    let report = dir.join(format!("{name}-{mode}{k}-report.json"));
    let params: Vec<String> = params.iter().map(usize::to_string).collect();
    let (code, text) = run_cli(&[
        "gen-graph",
        "--family",
        &family.to_string(),
        "--params",
        &params.join(","),
        "--out",
        graph.to_str().unwrap(),
    ]);
    if code != 0 {
        return Err(format!("{case}: gen-graph exited {code}: {text}"));
    }
    let ks = k.to_string();
    let (code, text) = run_cli(&[
        "build-ef",
        "--graph",
        graph.to_str().unwrap(),
        "--k",
        &ks,
        "--mode",
        mode,
        "--coloring",
        "auto",
        "--out",
        ef.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    if code != 0 {
        return Err(format!("{case}: build-ef exited {code}: {text}"));
    }
    let (code, text) = run_cli(&[
        "verify-ef",
        "--ef",
        ef.to_str().unwrap(),
        "--graph",
        graph.to_str().unwrap(),
        "--k",
        &ks,
        "--mode",
        mode,
    ]);
    if code != 0 || !text.lines().any(|l| l == "PASS") {
        return Err(format!("{case}: verify-ef exited {code}: {text}"));
    }
    let ef_json: Value = serde_json::from_str(&std::fs::read_to_string(&ef).unwrap()).unwrap();
    let ef_rows = ef_json["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["rel"] == "<=")
        .count();
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    Ok(Built { case, report, ef_rows })
}

fn criterion_1(dir: &Path) -> (Outcome, Vec<Built>) {
    let mut jobs = Vec::new();
    for (name, family, params) in corpus() {
        for k in 1..=3 {
            for mode in ["exact", "atmost"] {
                jobs.push((name, family, params.clone(), k, mode));
            }
        }
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len());
    let mut results: Vec<Option<Result<Built, String>>> = (0..jobs.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let jobs = &jobs;
                s.spawn(move || {
                    (w..jobs.len())
                        .step_by(workers)
                        .map(|i| {
                            let (name, family, params, k, mode) = &jobs[i];
                            (i, cli_round_trip(dir, name, *family, params, *k, mode))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().unwrap() {
                results[i] = Some(r);
            }
        }
    });
    let mut built = Vec::new();
    let mut errors = Vec::new();
    for r in results.into_iter().map(Option::unwrap) {
        match r {
            Ok(b) => built.push(b),
            Err(e) => errors.push(e),
        }
    }
    let outcome = if errors.is_empty() {
        Ok(format!("{} build-ef/verify-ef round trips", built.len()))
    } else {
        Err(errors.join("\n"))
    };
    (outcome, built)
}

fn criterion_2(built: &[Built]) -> Outcome {
    let mut unions = 0;
    for b in built {
        let r = &b.report;
        if r["empty"] == true {
            continue;
        }
        let pieces = r["pieces"].as_array().unwrap();
        let sizes: Vec<u64> = pieces.iter().filter_map(|p| p["size"].as_u64()).collect();
        let s = sizes.len() as u64;
        let sum: u64 = sizes.iter().sum();
        let total = r["total"].as_u64().unwrap();
        if r["union_pieces"].as_u64() != Some(s) || r["sum_piece_sizes"].as_u64() != Some(sum) {
            return Err(format!("{}: report fields disagree with its pieces", b.case));
        }
        if total != s + sum {
            return Err(format!("{}: total {total} != {s} + {sum}", b.case));
        }
        if b.ef_rows as u64 != total {
            return Err(format!("{}: EF file has {} inequalities, report says {total}", b.case, b.ef_rows));
        }
        unions += 1;
    }
    for (name, g) in corpus_graphs() {
        for k in 1..=3 {
            let c = low_td_coloring(&g, k).map_err(|e| e.to_string())?;
            let (ef, r) = stab_le_via_union(&g, &c, k).map_err(|e| e.to_string())?;
            let sum: usize = r.piece_sizes.iter().flatten().sum();
            let s = r.piece_sizes.iter().flatten().count();
            if ef.size() != s + sum || r.total != ef.size() {
                return Err(format!("{name} union over cardinalities 0..={k}: {} != {s} + {sum}", ef.size()));
            }
            unions += 1;
        }
    }
    Ok(format!("{unions} unions measured at exactly s + sum of piece sizes"))
}

fn criterion_3() -> Outcome {
    // (k, n, vertex count from the closed formula, r = k * floor(log2 n)).
    let cases = [(2usize, 2usize, 12usize, 2u32), (2, 3, 12, 2), (2, 4, 40, 4), (3, 2, 30, 3)];
    let mut notes = Vec::new();
    for (k, n, vertices, r) in cases {
        let max = verify_plc_max_is(k, n).map_err(|e| e.to_string())?;
        let proj = verify_plc_projection(k, n).map_err(|e| e.to_string())?;
        let cuts = 1usize << (r - 1);
        let ok = max.vertices == vertices
            && max.max_size == k * k
            && max.structure_ok
            && max.passed
            && proj.r == r as usize
            && proj.num_cut_vectors == cuts
            && proj.image_size == cuts
            && proj.num_max_sets == 2 * cuts
            && proj.passed;
        if !ok {
            return Err(format!("PLC({k},{n}): {max:?} {}", proj.summary()));
        }
        notes.push(format!("({k},{n}): {vertices} vertices, {}", proj.summary()));
    }
    Ok(notes.join("; "))
}

fn is_chain(parent: &[Option<usize>]) -> bool {
    let mut children = vec![0; parent.len()];
    for p in parent.iter().flatten() {
        children[*p] += 1;
    }
    parent.iter().filter(|p| p.is_none()).count() == 1 && children.iter().all(|&c| c <= 1)
}

fn criterion_4() -> Outcome {
    let mut cases: Vec<(String, Graph, usize)> = Vec::new();
    for n in 1..=8 {
        cases.push((format!("K{n}"), generate_family(Family::Complete, &[n]).unwrap(), n));
    }
    for n in 1..=15usize {
        let expected = (usize::BITS - n.leading_zeros()) as usize;
        cases.push((format!("P{n}"), generate_family(Family::Path, &[n]).unwrap(), expected));
    }
    for leaves in 1..=8 {
        cases.push((format!("star{leaves}"), generate_family(Family::Star, &[leaves]).unwrap(), 2));
    }
    for n in 1..=8 {
        cases.push((format!("empty{n}"), Graph::empty(n), 1));
    }
    let mut chains = 0;
    for (name, g, expected) in &cases {
        let (td, forest) = treedepth_exact(g, DEFAULT_EXACT_BUDGET).map_err(|e| e.to_string())?;
        if td != *expected {
            return Err(format!("{name}: treedepth {td}, expected {expected}"));
        }
        forest.check_closure(g).map_err(|e| format!("{name}: {e}"))?;
        if forest.value() != td {
            return Err(format!("{name}: certificate height gives {}, solver says {td}", forest.value()));
        }
        let mut memo = HashMap::new();
        let full = mask_of(&(0..g.n()).collect::<Vec<_>>());
        if brute_td(g, full, &mut memo) != td {
            return Err(format!("{name}: brute-force recursion disagrees"));
        }
        if is_chain(&forest.parent) {
            let dec = td_to_tree_decomposition(g, &forest).map_err(|e| e.to_string())?;
            dec.validate(g).map_err(|e| e.to_string())?;
            if dec.width() + 1 != td {
                return Err(format!("{name}: chain certificate gives width {}", dec.width()));
            }
            chains += 1;
        }
    }
    Ok(format!("{} graphs, {chains} chain certificates with width = td - 1", cases.len()))
}

/// First subset of at most `order` classes, by size then lexicographically,
/// whose union has treedepth above the subset size.
fn brute_coloring_counterexample(g: &Graph, c: &Coloring, order: usize) -> Option<(Vec<usize>, usize)> {
    let mut memo = HashMap::new();
    for s in 1..=order.min(c.num_colors) {
        for colors in combos(c.num_colors, s) {
            let td = brute_td(g, mask_of(&c.union_of(&colors)), &mut memo);
            if td > s {
                return Some((colors, td));
            }
        }
    }
    None
}

fn criterion_5(dir: &Path) -> Outcome {
    let mut checked = 0;
    for (name, g) in corpus_graphs() {
        for p in 1..=4 {
            let c = low_td_coloring(&g, p).map_err(|e| e.to_string())?;
            let r = verify_coloring(&g, &c, p, DEFAULT_SUBSET_CAP, 0).map_err(|e| e.to_string())?;
            if !r.passed() || r.sampled || c.order < p {
                return Err(format!("{name} order {p}: {r:?}"));
            }
            if let Some((colors, td)) = brute_coloring_counterexample(&g, &c, p) {
                return Err(format!("{name} order {p}: classes {colors:?} have treedepth {td}"));
            }
            checked += 1;
        }
    }
    let planted = [
        ("C4", generate_family(Family::Cycle, &[4]).unwrap(), vec![0, 1, 0, 1], 2usize),
        ("K2", generate_family(Family::Complete, &[2]).unwrap(), vec![0, 0], 1),
    ];
    for (name, g, colors, order) in planted {
        let c = Coloring::new(colors.clone());
        let r = verify_coloring(&g, &c, order, DEFAULT_SUBSET_CAP, 0).map_err(|e| e.to_string())?;
        let expected = brute_coloring_counterexample(&g, &c, order)
            .ok_or_else(|| format!("{name}: the oracle finds no counterexample"))?;
        match r.verdict {
            Verdict::Fail { colors: got, treedepth } if (got.clone(), treedepth) == expected => {}
            other => return Err(format!("{name}: verdict {other:?}, expected failure {expected:?}")),
        }
        let graph = dir.join(format!("planted-{name}.txt"));
        let coloring = dir.join(format!("planted-{name}.col"));
        std::fs::write(&graph, sparsexc::graph::serialize_edge_list(&LabeledGraph::from(g))).unwrap();
        std::fs::write(&coloring, c.serialize()).unwrap();
        let (code, text) = run_cli(&[
            "color",
            "--graph",
            graph.to_str().unwrap(),
            "--order",
            &order.to_string(),
            "--coloring",
            coloring.to_str().unwrap(),
            "--verify",
        ]);
        if code != 1 || !text.contains("counterexample") {
            return Err(format!("{name}: `color --verify` exited {code}: {text}"));
        }
    }
    Ok(format!("{checked} computed colorings certified; 2 planted failures caught with the right subsets"))
}

fn criterion_6() -> Outcome {
    let ns = [10usize, 20, 30, 40, 50, 60];
    let mut notes = Vec::new();
    for mode in modes(3) {
        let mut sizes = Vec::new();
        for &n in &ns {
            let g = generate_family(Family::Path, &[n]).unwrap();
            let mut c = Coloring::new((0..n).map(|v| v % 4).collect());
            let cert = c.certify(&g, 3).map_err(|e| e.to_string())?;
            if !cert.passed() {
                return Err(format!("v mod 4 fails at order 3 on P{n}: {cert:?}"));
            }
            let (ef, _) = stab_ef_colored(&g, &c, mode).map_err(|e| e.to_string())?;
            if n == 10 {
                let expected = stab_vrep(&g, mode).map_err(|e| e.to_string())?;
                let r = verify_ef(&ef, &expected).map_err(|e| e.to_string())?;
                if !r.passed() {
                    return Err(format!("P10 {mode}: {r:?}"));
                }
            }
            sizes.push(ef.size() as i64);
        }
        let b = (sizes[1] - sizes[0]) / 10;
        if b * 10 != sizes[1] - sizes[0] {
            return Err(format!("{mode}: size(P20) - size(P10) = {} is not a multiple of 10", sizes[1] - sizes[0]));
        }
        for (i, &n) in ns.iter().enumerate() {
            if sizes[i] - sizes[0] != b * (n as i64 - 10) {
                return Err(format!("{mode}: sizes {sizes:?} are not affine with slope {b}"));
            }
        }
        notes.push(format!("{mode}: size = {} + {b}*(n-10)", sizes[0]));
    }
    Ok(notes.join("; "))
}

const COMMON: &str = "(free (x1 x2) (exists (z) (and (edge x1 z) (edge x2 z))))";
const DELTA: &str = "(free (x1) (forall (y) (or (edge x1 y) (= x1 y))))";

fn criterion_7() -> Outcome {
    let common = parse_formula(COMMON).map_err(|e| e.to_string())?;
    let delta = parse_formula(DELTA).map_err(|e| e.to_string())?;
    let mut checks = 0;
    for (name, g) in corpus_graphs() {
        let lg = LabeledGraph::from(g.clone());
        for k in 1..=3 {
            let iota = iota_formula(k).map_err(|e| e.to_string())?;
            let vectors = fop_vertices(&lg, &iota).map_err(|e| e.to_string())?;
            for cv in &vectors {
                let e = cv.entries();
                if (0..k).any(|i| e[i * cv.n..(i + 1) * cv.n].iter().map(|&x| x as usize).sum::<usize>() != 1) {
                    return Err(format!("{name}: a row of {:?} does not sum to 1", cv.tuple));
                }
            }
            let got: BTreeSet<Vec<Rational>> = iota_project(&vectors).into_iter().collect();
            let want: BTreeSet<Vec<Rational>> = match stab_vrep(&g, StabMode::Exact(k)) {
                Ok(v) => v.points().iter().cloned().collect(),
                Err(Error::EmptyPolytope) => BTreeSet::new(),
                Err(e) => return Err(e.to_string()),
            };
            if got != want {
                return Err(format!("{name} k={k}: iota image has {} points, STAB_k has {}", got.len(), want.len()));
            }
            let c = low_td_coloring(&g, k).map_err(|e| e.to_string())?;
            let r = check_existential_decomposition(&lg, &iota, &c).map_err(|e| e.to_string())?;
            if !r.passed {
                return Err(format!("{name}: iota decomposition fails: {r:?}"));
            }
            checks += 1;
        }
        let brute: BTreeSet<Vec<usize>> = (0..g.n())
            .flat_map(|a| (0..g.n()).map(move |b| vec![a, b]))
            .filter(|t| (0..g.n()).any(|z| g.has_edge(t[0], z) && g.has_edge(t[1], z)))
            .collect();
        let got: BTreeSet<Vec<usize>> = satisfying_tuples(&lg, &common)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        if got != brute {
            return Err(format!("{name}: common-neighbour tuples differ from direct enumeration"));
        }
        let c = low_td_coloring(&g, common.k() + common.ell).map_err(|e| e.to_string())?;
        let r = check_existential_decomposition(&lg, &common, &c).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{name}: common-neighbour decomposition fails: {r:?}"));
        }
        match check_existential_decomposition(&lg, &delta, &c) {
            Err(Error::NotExistential(_)) => {}
            other => return Err(format!("{name}: the universal formula was not rejected: {other:?}")),
        }
        checks += 2;
    }
    Ok(format!("{checks} formula checks over the corpus"))
}

fn lp_max_sum(ef: &sparsexc::polytope::ExtendedFormulation) -> Option<Rational> {
    let ones = vec![Rational::one(); ef.target_dim];
    let (c, c0) = ef.projection.pullback(&ones, ef.num_vars());
    let out = lp_max(&ef.system, &c);
    (out.status == LpStatus::Optimal).then(|| out.value.unwrap() + c0)
}

fn vertex_set(v: &VRep) -> Result<BTreeSet<Vec<Rational>>, String> {
    let h = hull(v).map_err(|e| e.to_string())?;
    Ok(h.vertex_indices(v.len()).into_iter().map(|i| v.points()[i].clone()).collect())
}

fn criterion_8() -> Outcome {
    let mut checks = 0;
    for (name, g) in corpus_graphs() {
        let alpha = brute_alpha(&g);
        for k in 1..=3 {
            let want = Rational::from(alpha.min(k) as i64);
            let c = low_td_coloring(&g, k).map_err(|e| e.to_string())?;
            let (dp, _) = stab_ef_colored(&g, &c, StabMode::AtMost(k)).map_err(|e| e.to_string())?;
            let (union, _) = stab_le_via_union(&g, &c, k).map_err(|e| e.to_string())?;
            for (label, ef) in [("colored", &dp), ("union", &union)] {
                let got = lp_max_sum(ef);
                if got.as_ref() != Some(&want) {
                    return Err(format!("{name} k={k} {label}: max sum {got:?}, alpha capped = {want}"));
                }
            }
            let at_most = vertex_set(&stab_vrep(&g, StabMode::AtMost(k)).map_err(|e| e.to_string())?)?;
            match stab_vrep(&g, StabMode::Exact(k)) {
                Ok(exact) => {
                    let exact = vertex_set(&exact)?;
                    if !exact.is_subset(&at_most) {
                        return Err(format!("{name} k={k}: an exact vertex is not an at-most vertex"));
                    }
                }
                Err(Error::EmptyPolytope) if alpha < k => {}
                Err(e) => return Err(format!("{name} k={k}: {e}")),
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} (graph, k) pairs"))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let mut all = true;
    let mut report = |n: usize, title: &str, outcome: Outcome| {
        match outcome {
            Ok(detail) => println!("criterion {n} [{title}]: PASS ({detail})"),
            Err(detail) => {
                all = false;
                println!("criterion {n} [{title}]: FAIL\n{detail}");
            }
        }
    };
    let (c1, built) = criterion_1(dir.path());
    report(1, "EF correctness", c1);
    report(2, "union accounting", criterion_2(&built));
    report(3, "PLC identities", criterion_3());
    report(4, "treedepth oracle", criterion_4());
    report(5, "coloring soundness", criterion_5(dir.path()));
    report(6, "size linearity on paths", criterion_6());
    report(7, "first-order layer", criterion_7());
    report(8, "at-most face relation", criterion_8());
    if !all {
        std::process::exit(1);
    }
}
