//! Subcommand bodies. Each returns the `result` object of its report.

use std::fs;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use subelect::antagonism::{verify_antagonism_candidates, verify_antagonism_voters};
use subelect::identity::{
    count_identity_candidate_subsets, count_identity_voter_subsets, verify_identity_candidates,
    verify_identity_voters,
};
use subelect::ilp::{self, IlpModel, SolveStatus};
use subelect::{
    AntagonismVariant, CloneUniverse, Culture, CultureSpec, Election, Error, Result, SearchConfig,
    Signature, Strategy, SubelectionWitness,
};

use crate::report::{count_value, Failure, RunReport, Status};
use crate::{Backend, CultureArgs, CurveKind, IlpArgs, Input, InputFormat, Metric, SearchArgs};

struct Run {
    command: &'static str,
    inputs: Value,
    start: Instant,
}

impl Run {
    fn new(command: &'static str, inputs: Value) -> Self {
        Self {
            command,
            inputs,
            start: Instant::now(),
        }
    }

    fn report(self, status: Status, result: Value) -> RunReport {
        RunReport {
            command: self.command.to_string(),
            inputs: self.inputs,
            result,
            wall_time_ms: self.start.elapsed().as_secs_f64() * 1e3,
            status,
            raw: None,
        }
    }

    /// Budget exhaustion still yields a report; other errors abort.
    fn finish(self, outcome: Result<(Status, Value)>) -> std::result::Result<RunReport, Failure> {
        match outcome {
            Ok((status, result)) => Ok(self.report(status, result)),
            Err(Error::BudgetExceeded { needed, budget }) => Ok(self.report(
                Status::BudgetExceeded,
                json!({ "needed": needed, "budget": budget }),
            )),
            Err(Error::NotOptimal) => Ok(self.report(Status::BudgetExceeded, json!({}))),
            Err(err) => Err(err.into()),
        }
    }
}

fn load(input: &Input) -> std::result::Result<Election, Failure> {
    let text = fs::read_to_string(&input.file)
        .map_err(|err| Failure::input(format!("{}: {err}", input.file.display())))?;
    let parsed = match input.format {
        InputFormat::Profile => subelect::parse_election(&text),
        InputFormat::PreflibSoc => subelect::parse_preflib_soc(&text),
    };
    parsed.map_err(|err| Failure::input(format!("{}: {err}", input.file.display())))
}

fn config(args: &SearchArgs) -> std::result::Result<SearchConfig, Failure> {
    let strategy: Strategy = args.strategy.parse().map_err(Failure::invalid)?;
    Ok(SearchConfig {
        strategy,
        budget: args.budget,
        ilp_fallback: args.ilp_fallback,
        ilp_node_budget: args.ilp_nodes,
    })
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), Failure> {
    fs::write(path, contents).map_err(|err| Failure::input(format!("{}: {err}", path.display())))
}

fn parse_labels(e: &Election, list: &str) -> Result<Vec<usize>> {
    let labels: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if labels.is_empty() {
        return Err(Error::EmptySelection);
    }
    labels
        .into_iter()
        .map(|l| {
            e.candidate_index(l)
                .ok_or_else(|| Error::UnknownCandidate(l.to_string()))
        })
        .collect()
}

/// `0,2,5` (0-based) or `v1,v3,v6` (1-based names).
fn parse_voters(e: &Election, list: &str) -> Result<Vec<usize>> {
    let mut voters = Vec::new();
    for token in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::InvalidSpec(format!("bad voter `{token}`"));
        let index = match token.strip_prefix(['v', 'V']) {
            Some(k) => k
                .parse::<usize>()
                .ok()
                .and_then(|k| k.checked_sub(1))
                .ok_or_else(bad)?,
            None => token.parse::<usize>().map_err(|_| bad())?,
        };
        if index >= e.n() {
            return Err(Error::IndexOutOfRange {
                index,
                limit: e.n(),
            });
        }
        voters.push(index);
    }
    if voters.is_empty() {
        return Err(Error::EmptySelection);
    }
    voters.sort_unstable();
    voters.dedup();
    Ok(voters)
}

fn labels(e: &Election, candidates: &[usize]) -> Vec<String> {
    candidates.iter().map(|&c| e.label(c).to_string()).collect()
}

fn signature_json(sig: &Signature) -> Value {
    json!(sig.points.iter().map(|&(m, n)| [m, n]).collect::<Vec<_>>())
}

fn found(mode: &str, e: &Election, witness: Option<SubelectionWitness>) -> (Status, Value) {
    match witness {
        Some(w) => (
            Status::Ok,
            json!({ "mode": mode, "found": true, "witness": w.to_json(e) }),
        ),
        None => (Status::NotFound, json!({ "mode": mode, "found": false })),
    }
}

fn need<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidSpec(format!("{what} is required here")))
}

#[allow(clippy::too_many_arguments)]
pub fn clones(
    input: &Input,
    m_prime: usize,
    n_prime: Option<usize>,
    count: bool,
    swap_set: Option<&str>,
    closest: bool,
    exhaustive: bool,
    search: &SearchArgs,
) -> std::result::Result<RunReport, Failure> {
    let e = load(input)?;
    let cfg = config(search)?;
    let run = Run::new(
        "clones",
        json!({
            "file": input.file.display().to_string(),
            "m": e.m(), "n": e.n(),
            "m_prime": m_prime, "n_prime": n_prime,
            "count": count, "swap_set": swap_set, "closest": closest, "exhaustive": exhaustive,
        }),
    );
    let outcome = (|| -> Result<(Status, Value)> {
        let voters = n_prime.unwrap_or(e.n());
        if let Some(list) = swap_set {
            let set = parse_labels(&e, list)?;
            if set.len() != m_prime {
                return Err(Error::InvalidSpec(format!(
                    "--swap-set has {} candidates but M_PRIME is {m_prime}",
                    set.len()
                )));
            }
            let (distance, chosen) = subelect::clone_swap_distance(&e, &set, voters)?;
            return Ok((
                Status::Ok,
                json!({ "mode": "swap_distance", "candidates": labels(&e, &set), "voters": chosen, "distance": distance }),
            ));
        }
        if closest {
            let universe = if exhaustive {
                CloneUniverse::Exhaustive
            } else {
                CloneUniverse::Segments
            };
            let (set, distance) = subelect::closest_clone_set(&e, m_prime, voters, universe, &cfg)?;
            return Ok((
                Status::Ok,
                json!({ "mode": "closest", "candidates": labels(&e, &set), "distance": distance }),
            ));
        }
        if count {
            let total = subelect::count_hidden_clones(&e, m_prime, voters)?;
            return Ok((
                Status::Ok,
                json!({ "mode": "count", "count": count_value(total) }),
            ));
        }
        if let Some(n_prime) = n_prime {
            return Ok(found(
                "search",
                &e,
                subelect::hidden_clones(&e, m_prime, n_prime)?,
            ));
        }
        let (value, witness) = subelect::max_clone(&e, m_prime)?;
        Ok((
            Status::Ok,
            json!({ "mode": "max", "value": value, "witness": witness.to_json(&e) }),
        ))
    })();
    run.finish(outcome)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    Identity,
    Antagonism,
}

/// Writes and/or solves the 0-1 program for the requested sizes.
fn ilp_mode(
    e: &Election,
    family: Family,
    m_prime: usize,
    n_prime: Option<usize>,
    args: &IlpArgs,
    nodes: u64,
) -> std::result::Result<Result<(Status, Value)>, Failure> {
    if args.solve && args.backend == Backend::None {
        return Err(Failure::invalid("--solve needs a solver backend"));
    }
    let model: IlpModel = match (family, n_prime) {
        (Family::Identity, Some(n)) => ilp::build_hidden_id(e, m_prime, n),
        (Family::Identity, None) => ilp::build_max_id(e, m_prime),
        (Family::Antagonism, Some(n)) => ilp::build_hidden_an(e, m_prime, n),
        (Family::Antagonism, None) => ilp::build_max_an(e, m_prime),
    }
    .map_err(Failure::from)?;
    let mut result = json!({
        "mode": "ilp",
        "kind": model.kind.as_str(),
        "variables": model.variables().len(),
        "constraints": model.constraints().len(),
    });
    if let Some(path) = &args.lp_out {
        write_file(path, &ilp::export_lp(&model))?;
        result["lp_out"] = json!(path.display().to_string());
    }
    if !args.solve {
        return Ok(Ok((Status::Ok, result)));
    }
    let solution = ilp::solve(&model, nodes);
    result["nodes"] = json!(solution.nodes);
    let status = match solution.status {
        SolveStatus::Optimal => {
            result["objective"] = json!(solution.objective_value);
            let witness = ilp::decode_witness(&model, &solution).map_err(Failure::from)?;
            result["witness"] = witness.to_json(e);
            // the hidden-subelection programs minimize distance; zero means found
            if n_prime.is_some() && solution.objective_value != 0 {
                Status::NotFound
            } else {
                Status::Ok
            }
        }
        SolveStatus::Infeasible => Status::NotFound,
        SolveStatus::BudgetExceeded => Status::BudgetExceeded,
    };
    result["found"] = json!(status == Status::Ok);
    Ok(Ok((status, result)))
}

#[allow(clippy::too_many_arguments)]
pub fn identity(
    input: &Input,
    m_prime: Option<usize>,
    n_prime: Option<usize>,
    voters: Option<&str>,
    candidates: Option<&str>,
    count: bool,
    signature: bool,
    ilp_args: &IlpArgs,
    search: &SearchArgs,
) -> std::result::Result<RunReport, Failure> {
    let e = load(input)?;
    let cfg = config(search)?;
    let run = Run::new(
        "identity",
        json!({
            "file": input.file.display().to_string(),
            "m": e.m(), "n": e.n(),
            "m_prime": m_prime, "n_prime": n_prime,
            "voters": voters, "candidates": candidates,
            "count": count, "signature": signature,
        }),
    );
    if ilp_args.solve || ilp_args.lp_out.is_some() {
        let m_prime = need(m_prime, "M_PRIME").map_err(Failure::from)?;
        let outcome = ilp_mode(
            &e,
            Family::Identity,
            m_prime,
            n_prime,
            ilp_args,
            cfg.ilp_node_budget,
        )?;
        return run.finish(outcome);
    }
    let outcome = (|| -> Result<(Status, Value)> {
        if signature {
            let sig = subelect::identity_signature(&e, &cfg)?;
            return Ok((
                Status::Ok,
                json!({ "mode": "signature", "points": signature_json(&sig) }),
            ));
        }
        if let Some(list) = voters {
            let vs = parse_voters(&e, list)?;
            let width = m_prime.unwrap_or(1);
            if count {
                let total = count_identity_candidate_subsets(&e, &vs, width)?;
                return Ok((
                    Status::Ok,
                    json!({ "mode": "count", "count": count_value(total) }),
                ));
            }
            let chain = verify_identity_voters(&e, &vs, width)?;
            return Ok(found(
                "verify_voters",
                &e,
                chain.map(|order| SubelectionWitness::identity(order, vs)),
            ));
        }
        if let Some(list) = candidates {
            let cs = parse_labels(&e, list)?;
            let min_voters = n_prime.unwrap_or(1);
            if count {
                let total = count_identity_voter_subsets(&e, &cs, min_voters)?;
                return Ok((
                    Status::Ok,
                    json!({ "mode": "count", "count": count_value(total) }),
                ));
            }
            let group = verify_identity_candidates(&e, &cs, min_voters)?;
            return Ok(found(
                "verify_candidates",
                &e,
                group.map(|(order, vs)| SubelectionWitness::identity(order, vs)),
            ));
        }
        let m_prime = need(m_prime, "M_PRIME (or --signature)")?;
        if count {
            let n_prime = need(n_prime, "N_PRIME")?;
            let total = subelect::count_hidden_id(&e, m_prime, n_prime, &cfg)?;
            return Ok((
                Status::Ok,
                json!({ "mode": "count", "count": count_value(total) }),
            ));
        }
        if let Some(n_prime) = n_prime {
            return Ok(found(
                "search",
                &e,
                subelect::hidden_id(&e, m_prime, n_prime, &cfg)?,
            ));
        }
        let (value, witness) = subelect::max_id(&e, m_prime, &cfg)?;
        Ok((
            Status::Ok,
            json!({ "mode": "max", "value": value, "witness": witness.to_json(&e) }),
        ))
    })();
    run.finish(outcome)
}

#[allow(clippy::too_many_arguments)]
pub fn antagonism(
    input: &Input,
    m_prime: Option<usize>,
    n_prime: Option<usize>,
    variant: &str,
    voters: Option<&str>,
    candidates: Option<&str>,
    signature: bool,
    ilp_args: &IlpArgs,
    search: &SearchArgs,
) -> std::result::Result<RunReport, Failure> {
    let e = load(input)?;
    let cfg = config(search)?;
    let variant: AntagonismVariant = variant.parse().map_err(Failure::invalid)?;
    let run = Run::new(
        "antagonism",
        json!({
            "file": input.file.display().to_string(),
            "m": e.m(), "n": e.n(),
            "m_prime": m_prime, "n_prime": n_prime,
            "variant": format!("{variant:?}").to_lowercase(),
            "voters": voters, "candidates": candidates, "signature": signature,
        }),
    );
    if ilp_args.solve || ilp_args.lp_out.is_some() {
        if variant != AntagonismVariant::Rigid {
            return Err(Failure::invalid(
                "the 0-1 program only covers the rigid variant",
            ));
        }
        let m_prime = need(m_prime, "M_PRIME").map_err(Failure::from)?;
        let outcome = ilp_mode(
            &e,
            Family::Antagonism,
            m_prime,
            n_prime,
            ilp_args,
            cfg.ilp_node_budget,
        )?;
        return run.finish(outcome);
    }
    let outcome = (|| -> Result<(Status, Value)> {
        if signature {
            let sig = subelect::antagonism_signature(&e, &cfg)?;
            return Ok((
                Status::Ok,
                json!({ "mode": "signature", "points": signature_json(&sig) }),
            ));
        }
        if let Some(list) = voters {
            let vs = parse_voters(&e, list)?;
            let width = m_prime.unwrap_or(1);
            return Ok(found(
                "verify_voters",
                &e,
                verify_antagonism_voters(&e, &vs, width)?,
            ));
        }
        if let Some(list) = candidates {
            let cs = parse_labels(&e, list)?;
            let n_prime = n_prime.unwrap_or(2);
            return Ok(found(
                "verify_candidates",
                &e,
                verify_antagonism_candidates(&e, &cs, n_prime)?,
            ));
        }
        let m_prime = need(m_prime, "M_PRIME (or --signature)")?;
        if let Some(n_prime) = n_prime {
            return Ok(found(
                "search",
                &e,
                subelect::hidden_an(&e, m_prime, n_prime, &cfg)?,
            ));
        }
        let best = subelect::max_an(&e, m_prime, variant, &cfg)?;
        Ok((
            Status::Ok,
            json!({
                "mode": "max",
                "value": best.score,
                "order": labels(&e, &best.order),
                "base": best.base,
                "reverse": best.reverse,
                "witness": best.witness().to_json(&e),
            }),
        ))
    })();
    run.finish(outcome)
}

pub fn curve(
    input: &Input,
    kind: CurveKind,
    out: Option<&Path>,
    search: &SearchArgs,
) -> std::result::Result<RunReport, Failure> {
    let e = load(input)?;
    let cfg = config(search)?;
    let kind_name = match kind {
        CurveKind::Clone => "clone",
        CurveKind::Id => "id",
        CurveKind::An => "an",
    };
    let run = Run::new(
        "curve",
        json!({ "file": input.file.display().to_string(), "m": e.m(), "n": e.n(), "kind": kind_name }),
    );
    let values = (1..=e.m())
        .map(|w| match kind {
            CurveKind::Clone => subelect::max_clone(&e, w).map(|(v, _)| v),
            CurveKind::Id => subelect::max_id(&e, w, &cfg).map(|(v, _)| v),
            CurveKind::An => {
                subelect::max_an(&e, w, AntagonismVariant::Rigid, &cfg).map(|s| s.score)
            }
        })
        .collect::<Result<Vec<usize>>>();
    let values = match values {
        Ok(v) => v,
        Err(err) => return run.finish(Err(err)),
    };
    let mut result = json!({ "kind": kind_name, "values": values });
    if let Some(path) = out {
        let mut csv = String::from("m_prime,value\n");
        for (i, v) in values.iter().enumerate() {
            csv.push_str(&format!("{},{v}\n", i + 1));
        }
        write_file(path, &csv)?;
        result["out"] = json!(path.display().to_string());
    }
    Ok(run.report(Status::Ok, result))
}

fn culture_spec(args: &CultureArgs) -> std::result::Result<CultureSpec, Failure> {
    let mut params = Vec::new();
    for p in &args.params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Failure::invalid(format!("--param `{p}` is not KEY=VALUE")))?;
        params.push((k.trim().to_string(), v.trim().to_string()));
    }
    let culture = Culture::from_name(&args.culture, &params)?;
    let spec = CultureSpec::new(culture, args.m, args.n, args.seed);
    spec.validate()?;
    Ok(spec)
}

fn culture_inputs(args: &CultureArgs, spec: &CultureSpec) -> Value {
    json!({
        "culture": spec.culture.to_string(),
        "m": args.m, "n": args.n, "seed": args.seed,
        "params": args.params,
    })
}

pub fn generate(args: &CultureArgs, out: Option<&Path>) -> std::result::Result<RunReport, Failure> {
    let spec = culture_spec(args)?;
    let run = Run::new("generate", culture_inputs(args, &spec));
    let e = subelect::sample(&spec)?;
    let text = subelect::write_election(&e);
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(run.report(Status::Ok, json!({ "out": path.display().to_string() })))
        }
        None => {
            let mut report = run.report(Status::Ok, Value::Null);
            report.raw = Some(text);
            Ok(report)
        }
    }
}

pub fn batch_stats(
    args: &CultureArgs,
    repeat: usize,
    metric: Metric,
    out: Option<&Path>,
) -> std::result::Result<RunReport, Failure> {
    if repeat == 0 {
        return Err(Failure::invalid("--repeat must be at least 1"));
    }
    let spec = culture_spec(args)?;
    let metric_name = match metric {
        Metric::Maxclone2 => "maxclone2",
        Metric::Maxid5 => "maxid5",
        Metric::Maxan5 => "maxan5",
    };
    let mut inputs = culture_inputs(args, &spec);
    inputs["repeat"] = json!(repeat);
    inputs["metric"] = json!(metric_name);
    let run = Run::new("batch-stats", inputs);
    let cfg = SearchConfig {
        ilp_fallback: true,
        ..SearchConfig::default()
    };
    let outcome = (|| -> Result<Vec<usize>> {
        subelect::sample_batch(&spec, repeat)?
            .iter()
            .map(|e| match metric {
                Metric::Maxclone2 => subelect::max_clone(e, 2).map(|(v, _)| v),
                Metric::Maxid5 => subelect::max_id(e, 5, &cfg).map(|(v, _)| v),
                Metric::Maxan5 => {
                    subelect::max_an(e, 5, AntagonismVariant::Rigid, &cfg).map(|s| s.score)
                }
            })
            .collect()
    })();
    let values = match outcome {
        Ok(v) => v,
        Err(err) => return run.finish(Err(err)),
    };
    let k = values.len() as f64;
    let mean = values.iter().sum::<usize>() as f64 / k;
    // population standard deviation
    let std = (values
        .iter()
        .map(|&v| (v as f64 - mean).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    let mut result = json!({ "metric": metric_name, "values": values, "mean": mean, "std": std });
    if let Some(path) = out {
        let mut csv = String::from("sample,seed,value\n");
        for (i, v) in values.iter().enumerate() {
            csv.push_str(&format!("{i},{},{v}\n", args.seed.wrapping_add(i as u64)));
        }
        write_file(path, &csv)?;
        result["out"] = json!(path.display().to_string());
    }
    Ok(run.report(Status::Ok, result))
}
