use std::fs;

use serde::Serialize;
use serde_json::{json, Value};

use tdkit::applications::{
    dn_coloring, induced_pattern_scan, is_k_choosable, max_odd_distance_set, neighborhood_cover, verify_cover,
    verify_dn_coloring,
};
use tdkit::coloring::Coloring;
use tdkit::counting::{count_bruteforce_with_limits, count_ltd, CountMode, CountQuery, DEFAULT_HOST_LIMIT};
use tdkit::decomposition::{ltd_coloring_with, verify_ltd_with_budget, LtdConfig};
use tdkit::density::{
    density_profile, grad_with_limit, imm_grad_with_limit, profile_csv, top_grad_with_limit, Family,
    DEFAULT_IMMERSION_LIMIT, DEFAULT_MINOR_LIMIT, DEFAULT_TOPO_LIMIT,
};
use tdkit::homomorphism::{core_with_budget, dual_check, hom_exists_with_budget, Answer, HomOutcome, DEFAULT_HOM_BUDGET};
use tdkit::treedepth::{dfs_height_bounds, treedepth_exact_with_limit, DEFAULT_BOUNDED_BUDGET, DEFAULT_EXACT_LIMIT};
use tdkit::{catalog, io, Graph, Verdict};

use crate::output::{Failure, Output, Payload};
use crate::{Cli, Command, CountMethod, Measure};

type Run = Result<Output, Failure>;

/// `named:SPEC`, `-` for stdin, or an edge-list file.
pub fn load(src: &str) -> Result<Graph, Failure> {
    if let Some(spec) = src.strip_prefix("named:") {
        return Ok(catalog::named(spec)?);
    }
    let text = if src == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Io(format!("stdin: {e}")))?
    } else {
        fs::read_to_string(src).map_err(|e| Failure::Io(format!("{src}: {e}")))?
    };
    Ok(io::parse_edge_list(&text)?)
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable payload")
}

/// Exit code for a verdict: 0 holds, 1 violated, 4 indeterminate.
fn verdict_code<W>(v: &Verdict<W>) -> u8 {
    match v {
        Verdict::Holds => 0,
        Verdict::Violated(_) => 1,
        Verdict::Indeterminate(_) => 4,
    }
}

pub fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    let budget = g.budget;
    match &cli.command {
        Command::Td { input } => td(&load(input)?, g.exact_limit.unwrap_or(DEFAULT_EXACT_LIMIT)),
        Command::Decompose { p, input } => {
            let cfg = LtdConfig {
                verify_budget: budget.unwrap_or(DEFAULT_BOUNDED_BUDGET),
                ..LtdConfig::default()
            };
            let d = ltd_coloring_with(&load(input)?, *p, &cfg)?;
            Ok(Output::ok(Payload::Json(json!({
                "p": d.p,
                "palette": d.coloring.palette,
                "colors": d.coloring.colors,
                "rounds_used": d.rounds_used,
                "verified": d.verified,
                "method": value(&d.method),
            }))))
        }
        Command::VerifyLtd { decomposition, p, input } => {
            verify_ltd_cmd(&load(input)?, decomposition, *p, budget.unwrap_or(DEFAULT_BOUNDED_BUDGET))
        }
        Command::Count { pattern, mode, method, input } => {
            let h = load(pattern)?;
            let host = load(input)?;
            let mode: CountMode = mode.parse()?;
            let q = CountQuery::new(&h, &host, mode);
            let out = match method {
                CountMethod::Ltd => {
                    if let Some(limit) = g.exact_limit {
                        if h.n() > limit {
                            return Err(tdkit::Error::SizeLimit {
                                what: "pattern order",
                                size: h.n(),
                                limit,
                            }
                            .into());
                        }
                    }
                    let c = count_ltd(&q)?;
                    json!({"count": c.count, "method": "ltd", "palette": c.palette, "color_sets": c.color_sets, "mode": value(&mode)})
                }
                CountMethod::Bruteforce => {
                    let limit = g.exact_limit.unwrap_or(tdkit::counting::DEFAULT_PATTERN_LIMIT);
                    let c = count_bruteforce_with_limits(&q, limit, DEFAULT_HOST_LIMIT)?;
                    json!({"count": c, "method": "bruteforce", "palette": null, "color_sets": null, "mode": value(&mode)})
                }
            };
            Ok(Output::ok(Payload::Json(out)))
        }
        Command::Density { measure, r, input } => {
            let graph = load(input)?;
            let (name, res) = match measure {
                Measure::Grad => (
                    "grad",
                    value(&grad_with_limit(&graph, *r, g.exact_limit.unwrap_or(DEFAULT_MINOR_LIMIT))?),
                ),
                Measure::Topgrad => (
                    "topgrad",
                    value(&top_grad_with_limit(&graph, *r, g.exact_limit.unwrap_or(DEFAULT_TOPO_LIMIT))?),
                ),
                Measure::Immgrad => (
                    "immgrad",
                    value(&imm_grad_with_limit(&graph, *r, g.exact_limit.unwrap_or(DEFAULT_IMMERSION_LIMIT))?),
                ),
            };
            Ok(Output::ok(Payload::Json(json!({
                "measure": name,
                "r": r,
                "value": res["value"],
                "witness": res["witness"],
            }))))
        }
        Command::DensityProfile { family, r, sizes } => {
            let fam: Family = family.parse()?;
            let rows = density_profile(fam, *r, sizes, g.seed)?;
            Ok(Output::ok(Payload::Csv {
                csv: profile_csv(&rows)?,
                json: json!({"family": family, "r": r, "seed": g.seed, "rows": value(&rows)}),
            }))
        }
        Command::Dncolor { n, input } => {
            let graph = load(input)?;
            let c = dn_coloring(&graph, *n)?;
            let verdict = verify_dn_coloring(&graph, *n, &c)?;
            let code = verdict_code(&verdict);
            Ok(Output::with_code(
                Payload::Json(json!({
                    "n": n,
                    "palette": c.used_colors(),
                    "colors": c.colors,
                    "verified": verdict.holds(),
                })),
                code,
            ))
        }
        Command::Cover { r, input } => {
            let graph = load(input)?;
            let cov = neighborhood_cover(&graph, *r)?;
            let verdict = verify_cover(&graph, &cov)?;
            Ok(Output::with_code(
                Payload::Json(json!({
                    "r": r,
                    "clusters": value(&cov.clusters),
                    "membership": cov.membership,
                    "degree": cov.degree(),
                    "verified": verdict.holds(),
                })),
                verdict_code(&verdict),
            ))
        }
        Command::Oddset { input } => {
            let set = max_odd_distance_set(&load(input)?)?;
            Ok(Output::ok(Payload::Json(json!({"size": set.len(), "vertices": set}))))
        }
        Command::Hom { source, target } => {
            let out = hom_exists_with_budget(&load(source)?, &load(target)?, budget.unwrap_or(DEFAULT_HOM_BUDGET))?;
            let code = if matches!(out, HomOutcome::Indeterminate) { 4 } else { 0 };
            let map = out.hom().map(|h| value(&h.map)).unwrap_or(Value::Null);
            Ok(Output::with_code(
                Payload::Json(json!({"answer": value(&out.answer()), "map": map})),
                code,
            ))
        }
        Command::Core { input } => {
            let c = core_with_budget(&load(input)?, budget.unwrap_or(DEFAULT_HOM_BUDGET))?;
            Ok(Output::ok(Payload::Json(json!({
                "size": c.vertices.len(),
                "vertices": c.vertices,
                "core": value(&c.graph),
                "retraction": value(&c.retraction.map),
            }))))
        }
        Command::DualCheck { pattern, dual, dir } => dual_cmd(&load(pattern)?, &load(dual)?, dir),
        Command::Choosable { k, input } => {
            let res = is_k_choosable(&load(input)?, *k)?;
            Ok(Output::ok(Payload::Json(value(&res))))
        }
        Command::Scan { s, t, q, input } => {
            let rep = induced_pattern_scan(&load(input)?, *s, *t, *q)?;
            Ok(Output::ok(Payload::Json(value(&rep))))
        }
        Command::Gen { spec } => {
            let graph = catalog::named(spec.strip_prefix("named:").unwrap_or(spec))?;
            Ok(Output::ok(Payload::Raw {
                text: io::to_edge_list(&graph),
                json: value(&graph),
            }))
        }
    }
}

fn td(graph: &Graph, limit: usize) -> Run {
    let t = treedepth_exact_with_limit(graph, limit)?;
    let dfs = dfs_height_bounds(graph);
    Ok(Output::ok(Payload::Json(json!({
        "treedepth": t.value,
        "witness": value(&t.witness),
        "dfs_bounds": {
            "log_lower": dfs.log_lower,
            "path_lower": dfs.path_lower,
            "upper": dfs.upper,
        },
    }))))
}

fn verify_ltd_cmd(graph: &Graph, path: &str, p: Option<usize>, budget: u64) -> Run {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let colors: Vec<usize> = doc
        .get("colors")
        .cloned()
        .and_then(|c| serde_json::from_value(c).ok())
        .ok_or_else(|| Failure::Usage(format!("{path}: missing `colors` array")))?;
    let p = match p.or_else(|| doc.get("p").and_then(Value::as_u64).map(|x| x as usize)) {
        Some(p) => p,
        None => return Err(Failure::Usage(format!("{path}: missing `p`; pass -p"))),
    };
    let c = Coloring::new(colors);
    let verdict = verify_ltd_with_budget(graph, p, &c, budget)?;
    Ok(Output::with_code(
        Payload::Json(json!({"p": p, "palette": c.palette, "verdict": value(&verdict)})),
        verdict_code(&verdict),
    ))
}

fn dual_cmd(f: &Graph, d: &Graph, dir: &str) -> Run {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Failure::Io(format!("{dir}: {e}")))?
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().map(|t| t.is_file()).unwrap_or(false))
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|name| !name.starts_with('.'))
        .collect();
    files.sort();
    let family = files
        .iter()
        .map(|name| load(&format!("{dir}/{name}")))
        .collect::<Result<Vec<_>, _>>()?;
    let report = dual_check(f, d, &family)?;
    let code = if report.violations > 0 || report.pattern_to_dual != Answer::No {
        1
    } else if report.indeterminate > 0 {
        4
    } else {
        0
    };
    let mut v = value(&report);
    v["files"] = json!(files);
    v["holds"] = json!(report.holds());
    Ok(Output::with_code(Payload::Json(v), code))
}
