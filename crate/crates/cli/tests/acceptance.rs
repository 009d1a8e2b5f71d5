//! Acceptance gate: each test prints one `PASS`/`FAIL` line and fails on
//! `FAIL`. Lines go straight to stderr so they show without `--nocapture`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use serde_json::Value;

use tdkit::applications::{
    dn_coloring, exact_distance_graph, is_k_choosable, neighborhood_cover, verify_cover, Cluster, Cover,
    CoverViolation,
};
use tdkit::catalog::named;
use tdkit::counting::{count_bruteforce, count_ltd, CountMode, CountQuery};
use tdkit::decomposition::{chi_p_bruteforce, ltd_coloring, verify_ltd};
use tdkit::density::{grad, nabla0, top_grad};
use tdkit::generators;
use tdkit::homomorphism::{core, dual_check, hom_exists, Answer, HomOutcome};
use tdkit::iso::{find_embedding, is_isomorphic};
use tdkit::traversal::girth;
use tdkit::treedepth::{dfs_height_bounds, treedepth_exact, verify_elimination_forest};
use tdkit::{Graph, Verdict};

use common::{adjacency, chromatic_oracle, is_centered, is_ranking, min_palette, td_oracle};

fn report(id: u32, what: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "AC{id:02} {status} {what}");
    for f in failures.iter().take(5) {
        let _ = writeln!(err, "    {f}");
    }
    assert!(failures.is_empty(), "AC{id:02} failed: {} issue(s), first: {}", failures.len(), failures[0]);
}

/// Catalog graphs plus seeded members of every generator family; all of
/// them stay within the exact tree-depth limit.
fn corpus() -> Vec<(String, Graph)> {
    let mut specs: Vec<String> = common::CATALOG.iter().map(|s| s.to_string()).collect();
    for seed in 1..=3 {
        specs.push(format!("random_tree(14,{seed})"));
        specs.push(format!("bounded_degree(12,3,{seed})"));
        specs.push(format!("girth5(14,{seed})"));
        specs.push(format!("apollonian(10,{seed})"));
        specs.push(format!("gnp(11,30,{seed})"));
    }
    specs
        .into_iter()
        .map(|s| {
            let g = named(&s).unwrap();
            (s, g)
        })
        .collect()
}

/// Every labeled graph on `n` vertices.
fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

#[test]
fn ac01_treedepth_matches_oracle() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let mut count = 0;
    for seed in 0..520u64 {
        let n = (seed % 9) as usize;
        let pct = [15, 30, 45, 60, 80][(seed / 9 % 5) as usize];
        let g = generators::gnp(n, pct, seed);
        let t = treedepth_exact(&g).unwrap();
        let expected = td_oracle(&g);
        if t.value != expected {
            fails.push(format!("gnp({n},{pct},{seed}): {} vs oracle {expected}", t.value));
        }
        let height = t.witness.depths().into_iter().max().unwrap_or(0);
        if !verify_elimination_forest(&g, &t.witness).unwrap() || height != t.value {
            fails.push(format!("gnp({n},{pct},{seed}): witness does not validate"));
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        fails.push(format!("took {elapsed:?}"));
    }
    report(1, &format!("tree-depth equals oracle on {count} graphs in {elapsed:.1?}"), &fails);
}

#[test]
fn ac02_centered_ranking_treedepth() {
    let mut fails = Vec::new();
    let mut graphs: Vec<Graph> = (0..=5).flat_map(all_graphs).collect();
    graphs.extend((0..100).map(|seed| generators::gnp(6, 40, 1000 + seed)));
    for g in &graphs {
        let adj = adjacency(g);
        let centered = min_palette(g.n(), &|c| is_centered(&adj, c), true);
        let ranking = min_palette(g.n(), &|c| is_ranking(&adj, c), false);
        let td = treedepth_exact(g).unwrap().value;
        if centered != td || ranking != td {
            fails.push(format!("{:?}: centered {centered}, ranking {ranking}, td {td}", g.edges().collect::<Vec<_>>()));
        }
    }
    report(2, &format!("centered = ranking = td on {} graphs", graphs.len()), &fails);
}

#[test]
fn ac03_treedepth_at_most_dfs_height() {
    let mut fails = Vec::new();
    let corpus = corpus();
    for (name, g) in &corpus {
        let td = treedepth_exact(g).unwrap().value;
        let dfs = dfs_height_bounds(g);
        if td > dfs.upper || !verify_elimination_forest(g, &dfs.witness).unwrap() {
            fails.push(format!("{name}: td {td}, dfs height {}", dfs.upper));
        }
    }
    report(3, &format!("td <= DFS height on {} corpus graphs", corpus.len()), &fails);
}

#[test]
fn ac04_low_treedepth_colorings() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let mut hosts = Vec::new();
    for i in 0..50u64 {
        let n = 20 + (i as usize * 37) % 181;
        let g = match i % 4 {
            0 => generators::random_tree(n, i),
            1 => {
                let a = (n as f64).sqrt() as usize;
                tdkit::catalog::grid(a, n / a)
            }
            2 => generators::apollonian(n, i),
            _ => generators::bounded_degree(n, 4, i),
        };
        hosts.push((format!("host {i} (n = {})", g.n()), g));
    }
    for (name, g) in &hosts {
        for p in 2..=4 {
            let d = ltd_coloring(g, p).unwrap();
            let ok = d.verified && matches!(verify_ltd(g, p, &d.coloring).unwrap(), Verdict::Holds);
            if !ok {
                fails.push(format!("{name}, p = {p}: not verified"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        fails.push(format!("took {elapsed:?}"));
    }
    let mut small = 0;
    for name in common::CATALOG {
        let g = named(name).unwrap();
        if g.n() > 6 {
            continue;
        }
        small += 1;
        let chi: Vec<usize> = (1..=g.n().max(1)).map(|p| chi_p_bruteforce(&g, p).unwrap().0).collect();
        let td = treedepth_exact(&g).unwrap().value;
        if chi.windows(2).any(|w| w[0] > w[1]) || chi.iter().copied().max().unwrap_or(0) != td {
            fails.push(format!("{name}: chi_p {chi:?}, td {td}"));
        }
    }
    report(
        4,
        &format!("ltd colorings verify on {} hosts x p in 2..=4 in {elapsed:.1?}; chi_p chain on {small} small graphs", hosts.len()),
        &fails,
    );
}

#[test]
fn ac05_counting_matches_bruteforce() {
    let mut fails = Vec::new();
    let patterns: Vec<(&str, Graph)> = ["P_3", "P_4", "K_3", "C_4", "K_{1,3}"]
        .into_iter()
        .map(|s| (s, named(s).unwrap()))
        .collect();
    for seed in 0..100u64 {
        let n = 10 + (seed as usize * 7) % 31;
        let pct = [5, 8, 12, 15][(seed % 4) as usize];
        let host = generators::gnp(n, pct, seed);
        for (name, h) in &patterns {
            for mode in [CountMode::Subgraph, CountMode::Induced] {
                let q = CountQuery::new(h, &host, mode);
                let a = count_ltd(&q).unwrap().count;
                let b = count_bruteforce(&q).unwrap();
                if a != b {
                    fails.push(format!("gnp({n},{pct},{seed}) {name} {mode:?}: ltd {a}, brute force {b}"));
                }
            }
        }
    }
    let petersen = named("Petersen").unwrap();
    let k3 = named("K_3").unwrap();
    let t = count_ltd(&CountQuery::new(&k3, &petersen, CountMode::Subgraph)).unwrap().count;
    if t != 0 {
        fails.push(format!("Petersen has {t} triangles"));
    }
    report(5, "ltd counts equal brute force on 100 hosts x 5 patterns x 2 modes", &fails);
}

#[test]
fn ac06_density_exactness() {
    let mut fails = Vec::new();
    let corpus = corpus();
    let mut sandwiches = 0;
    for (name, g) in &corpus {
        let g0 = grad(g, 0).unwrap().value;
        let n0 = nabla0(g).value;
        if g0 != n0 {
            fails.push(format!("{name}: grad_0 {g0} vs nabla_0 {n0}"));
        }
        if g.n() > 10 {
            continue;
        }
        let mut prev = Ratio::from_integer(0);
        for r in 0..=2 {
            let minor = grad(g, r).unwrap();
            let top = top_grad(g, r).unwrap();
            if minor.value < prev {
                fails.push(format!("{name}: grad_{r} decreased"));
            }
            if top.value > minor.value {
                fails.push(format!("{name}: top_grad_{r} {} > grad_{r} {}", top.value, minor.value));
            }
            if minor.witness.validate(g).is_err() || top.witness.validate(g).is_err() {
                fails.push(format!("{name}: r = {r} witness rejected"));
            }
            prev = minor.value;
            sandwiches += 1;
        }
    }
    let petersen = named("Petersen").unwrap();
    let d = grad(&petersen, 1).unwrap();
    if d.value != Ratio::from_integer(2) {
        fails.push(format!("grad_1(Petersen) = {}", d.value));
    }
    match d.witness.validate(&petersen) {
        Ok(minor) if find_embedding(&named("K_5").unwrap(), &minor, false).is_some() => {}
        _ => fails.push("Petersen r = 1 witness is not a K_5 model".into()),
    }
    report(
        6,
        &format!("grad_0 = nabla_0 on {} graphs; monotone and sandwiched on {sandwiches} instances", corpus.len()),
        &fails,
    );
}

#[test]
fn ac07_cover_degree_lower_bound_at_girth_five() {
    let mut fails = Vec::new();
    let mut graphs = vec![("Petersen".to_string(), named("Petersen").unwrap())];
    for seed in 0..20u64 {
        let n = 10 + (seed as usize % 21);
        graphs.push((format!("girth5({n},{seed})"), generators::girth5(n, seed)));
    }
    for (name, g) in &graphs {
        if girth(g).is_some_and(|x| x < 5) {
            fails.push(format!("{name}: girth below 5"));
            continue;
        }
        let cov = neighborhood_cover(g, 1).unwrap();
        if !verify_cover(g, &cov).unwrap().holds() {
            fails.push(format!("{name}: cover invalid"));
            continue;
        }
        let bound = nabla0(g).value;
        if Ratio::from_integer(cov.degree() as i64) < bound {
            fails.push(format!("{name}: valid 1-cover of degree {} below nabla_0 = {bound}", cov.degree()));
        }
    }
    report(7, &format!("1-cover degree >= nabla_0 on {} girth-5 graphs", graphs.len()), &fails);
}

fn cluster(vertices: Vec<usize>, center: usize, radius: usize) -> Cluster {
    Cluster { vertices, center, radius }
}

#[test]
fn ac08_cover_validity() {
    let mut fails = Vec::new();
    let corpus = corpus();
    for (name, g) in &corpus {
        for r in 1..=3 {
            let cov = neighborhood_cover(g, r).unwrap();
            if !verify_cover(g, &cov).unwrap().holds() {
                fails.push(format!("{name}: r = {r} cover rejected"));
            }
        }
    }
    let planted = |g: &Graph, r: usize, clusters: Vec<Cluster>, want: CoverViolation| {
        let membership = g
            .vertices()
            .map(|v| clusters.iter().filter(|c| c.vertices.contains(&v)).count())
            .collect();
        let cov = Cover { r, clusters, membership };
        match verify_cover(g, &cov).unwrap() {
            Verdict::Violated(got) if got == want => None,
            other => Some(format!("planted {want:?}: got {other:?}")),
        }
    };
    let p5 = named("P_5").unwrap();
    let star = named("star_5").unwrap();
    let p9 = named("P_9").unwrap();
    let checks = [
        planted(&p5, 1, vec![cluster(vec![0, 1, 1], 1, 1)], CoverViolation::Malformed { cluster: 0 }),
        planted(&p5, 1, vec![cluster(vec![0, 1, 2, 3, 4], 2, 2), cluster(vec![0, 4], 0, 0)], CoverViolation::Disconnected { cluster: 1 }),
        planted(&p9, 1, vec![cluster((0..9).collect(), 4, 4)], CoverViolation::RadiusTooLarge { cluster: 0, radius: 4 }),
        planted(&star, 1, vec![cluster(vec![0, 1, 2, 3, 4], 0, 1), cluster(vec![0, 5], 0, 1)], CoverViolation::Uncovered { vertex: 0 }),
    ];
    fails.extend(checks.into_iter().flatten());
    report(8, &format!("covers valid for r in 1..=3 on {} graphs; 4 planted violations caught", corpus.len()), &fails);
}

#[test]
fn ac09_exact_distance_colorings() {
    let mut fails = Vec::new();
    let corpus = corpus();
    for (name, g) in &corpus {
        for n in [1, 3, 5] {
            let c = dn_coloring(g, n).unwrap();
            let e = exact_distance_graph(g, n).unwrap();
            if !c.is_proper(&e) {
                fails.push(format!("{name}: D_{n} coloring not proper"));
            }
        }
    }
    let used = dn_coloring(&named("C_6").unwrap(), 3).unwrap().used_colors();
    if used != 2 {
        fails.push(format!("C_6 with n = 3 uses {used} colors"));
    }
    report(9, &format!("D_n colorings proper for n in {{1,3,5}} on {} graphs", corpus.len()), &fails);
}

#[test]
fn ac10_homomorphisms_and_duality() {
    let mut fails = Vec::new();
    let k3 = named("K_3").unwrap();
    let clebsch = named("Clebsch").unwrap();
    if hom_exists(&k3, &clebsch).unwrap() != HomOutcome::None {
        fails.push("K_3 maps to Clebsch".into());
    }
    let family: Vec<Graph> = ["C_5", "C_7", "Q_3", "K_4"].into_iter().map(|s| named(s).unwrap()).collect();
    let rep = dual_check(&k3, &clebsch, &family).unwrap();
    if rep.violations != 0 || rep.indeterminate != 0 || rep.pattern_to_dual != Answer::No {
        fails.push(format!("dual check: {rep:?}"));
    }
    let corpus = corpus();
    let mut cores = 0;
    for (name, g) in corpus.iter().filter(|(_, g)| g.n() <= 10) {
        cores += 1;
        let c = core(g).unwrap();
        let again = core(&c.graph).unwrap();
        if !c.retraction.validate(g, &c.graph) || again.vertices.len() != c.graph.n() || !is_isomorphic(&again.graph, &c.graph) {
            fails.push(format!("{name}: core is not idempotent"));
        }
    }
    report(10, &format!("K_3 -/-> Clebsch, duality holds on 4 graphs, cores idempotent on {cores} graphs"), &fails);
}

#[test]
fn ac11_choosability() {
    let mut fails = Vec::new();
    if !is_k_choosable(&named("C_4").unwrap(), 2).unwrap().choosable {
        fails.push("C_4 not 2-choosable".into());
    }
    if is_k_choosable(&named("K_{2,4}").unwrap(), 2).unwrap().choosable {
        fails.push("K_{2,4} 2-choosable".into());
    }
    let mut decided = 0;
    let mut graphs: Vec<(String, Graph)> = corpus().into_iter().filter(|(_, g)| g.n() <= 7).collect();
    graphs.extend((0..30).map(|s| (format!("gnp(7,30,{s})"), generators::gnp(7, 30, s))));
    for (name, g) in &graphs {
        for k in 1..=2 {
            decided += 1;
            if is_k_choosable(g, k).unwrap().choosable && chromatic_oracle(g) > k {
                fails.push(format!("{name}: {k}-choosable but not {k}-colorable"));
            }
        }
    }
    report(11, &format!("C_4 and K_{{2,4}} decided; choosable implies colorable on {decided} instances"), &fails);
}

fn invocations() -> Vec<Vec<String>> {
    let dual = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/dual");
    let lines: &[&str] = &[
        "td named:Petersen",
        "td named:random_tree(16,3)",
        "decompose -p 3 named:apollonian(60,2)",
        "count --pattern named:C_4 named:gnp(30,15,4)",
        "count --pattern named:P_4 --mode induced named:grid(5,5)",
        "count --pattern named:K_3 named:Petersen",
        "density --measure grad -r 1 named:Petersen",
        "density --measure topgrad -r 1 named:Q_3",
        "density --measure immgrad -r 1 named:C_6",
        "density-profile --family subdivided_cliques:1 --sizes 3,4,5",
        "density-profile --family bounded_degree:3 --sizes 8,10 --seed 5",
        "dncolor -n 3 named:grid(6,6)",
        "cover -r 2 named:girth5(20,1)",
        "oddset named:Q_3",
        "hom named:Petersen named:K_3",
        "core named:grid(3,3)",
        "choosable -k 2 named:K_{2,4}",
        "scan --s 5 --t 4 --q 2 named:Petersen",
        "gen named:girth5(20,1)",
    ];
    let mut all: Vec<Vec<String>> = lines.iter().map(|l| l.split(' ').map(String::from).collect()).collect();
    all.push(
        ["dual-check", "--pattern", "named:K_3", "--dual", "named:Clebsch", dual]
            .map(String::from)
            .to_vec(),
    );
    all
}

#[test]
fn ac12_cli_is_deterministic() {
    let mut fails = Vec::new();
    let run = |args: &[String], threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_tdkit"))
            .args(args)
            .args(["--threads", threads])
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout, out.stderr)
    };
    let all = invocations();
    for args in &all {
        let base = run(args, "1");
        if base.0 != Some(0) {
            fails.push(format!("{args:?} exited {:?}: {}", base.0, String::from_utf8_lossy(&base.2)));
            continue;
        }
        if base.1.is_empty() {
            fails.push(format!("{args:?}: empty output"));
        }
        for threads in ["1", "4", "4"] {
            if run(args, threads) != base {
                fails.push(format!("{args:?}: output differs with {threads} threads"));
            }
        }
        if args[0] != "gen" && args[0] != "density-profile" {
            if let Err(e) = serde_json::from_slice::<Value>(&base.1) {
                fails.push(format!("{args:?}: not JSON ({e})"));
            }
        }
    }
    report(12, &format!("{} CLI invocations byte-identical across runs and 1/4 threads", all.len()), &fails);
}
