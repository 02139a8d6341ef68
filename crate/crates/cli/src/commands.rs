use anyhow::{Context, Result};
use betweenness_core::circles::{
    classify, construct_cover, cover_lower_bound_ok, m_invariant, sample_configuration,
    verify_cover, ConcentricPair, CoverCertificate, M_invariant, NonConcentricPair,
};
use betweenness_core::config::ConfigJson;
use betweenness_core::iso::{find_isomorphism, verify_map, IsoKind, Outcome, SearchMode};
use betweenness_core::reports::{
    example_2_5, example_6_1, example_6_2, exbc1, remark_6_1_signatures,
};
use betweenness_core::{FiniteConfig, PointId, Tolerance};
use serde::Serialize;
use serde_json::{json, Value};

use crate::response::{CodedError, Reply, Status};
use crate::{figures, Cli, Command, ExampleName};

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).context("serializing payload")
}

/// A configuration file may carry its own tolerances; otherwise the
/// command-line ones apply.
fn load_config(arg: &str, what: &str, tol: &Tolerance) -> Result<FiniteConfig> {
    let mut json: ConfigJson = crate::input::load(arg, what)?;
    json.eps_sign.get_or_insert(tol.eps_sign);
    json.eps_metric.get_or_insert(tol.eps_metric);
    FiniteConfig::from_json(&json).with_context(|| format!("building {what}"))
}

/// Non-concentric pairs are parsed with default tolerances; rebuild them
/// with the requested ones.
fn load_nc_pair(arg: &str, tol: &Tolerance) -> Result<NonConcentricPair> {
    let p: NonConcentricPair = crate::input::load(arg, "pair")?;
    let (a, b) = (p.first(), p.second());
    Ok(NonConcentricPair::new(a.center, a.radius, b.center, b.radius, tol)?)
}

pub fn run(cli: &Cli) -> Result<Reply> {
    let g = &cli.global;
    let tol = g.tolerance()?;
    match &cli.command {
        Command::Invariant { pair } => invariant(crate::input::load(pair, "pair")?),
        Command::Classify { pair, signatures } => {
            let pair = load_nc_pair(pair, &tol)?;
            let mut payload = json!({
                "case": classify(&pair, &tol),
                "center_distance": pair.center_distance(),
            });
            let mut reply_notes = Vec::new();
            if *signatures {
                let rep = remark_6_1_signatures(&pair)?;
                if !rep.agrees {
                    reply_notes.push(format!(
                        "signature analysis reports case {} but the metric test gives {}",
                        rep.signature, rep.classified
                    ));
                }
                payload["signatures"] = to_value(&rep)?;
            }
            let mut reply = Reply::ok(payload);
            reply.diagnostics = reply_notes;
            Ok(reply)
        }
        Command::Iso { kind, a, b, all } => {
            let (a, b) = (load_config(a, "configuration a", &tol)?, load_config(b, "configuration b", &tol)?);
            let mode = if *all { SearchMode::All } else { SearchMode::First };
            iso(&a, &b, (*kind).into(), mode, g.node_limit)
        }
        Command::Cover {
            pair,
            target,
            certificate,
        } => {
            let pair: ConcentricPair = crate::input::load(pair, "pair")?;
            match (target, certificate) {
                (Some(t), _) => cover_construct(&pair, *t, &tol),
                (None, Some(c)) => cover_verify(&pair, crate::input::load(c, "certificate")?, &tol),
                (None, None) => Err(CodedError::new("usage", "cover needs --target or --certificate").into()),
            }
        }
        Command::Example {
            name,
            y,
            rho,
            tau,
            pair,
        } => example(*name, *y, *rho, *tau, pair.as_deref(), &tol),
        Command::Sample { pair, n, p } => {
            let pair: ConcentricPair = crate::input::load(pair, "pair")?;
            let (cfg, layout) = sample_configuration(&pair, *n, *p, &tol)?;
            Ok(Reply::ok(json!({
                "config": cfg.to_json(),
                "n": layout.n,
                "p": layout.p,
                "between_triples": cfg.between_triples(),
                "collinear_triples": cfg.collinear_triples(),
                "extreme_points": cfg.extreme_points(),
            })))
        }
        Command::Verify { kind, a, b, map } => {
            let (a, b) = (load_config(a, "configuration a", &tol)?, load_config(b, "configuration b", &tol)?);
            let map: Vec<PointId> = crate::input::load(map, "map")?;
            let violation = verify_map(&a, &b, &map, (*kind).into())?;
            let status = if violation.is_some() { Status::Refuted } else { Status::Ok };
            Ok(Reply::with_status(status, json!({ "kind": IsoKind::from(*kind), "violation": violation })))
        }
        Command::Figure { name, y } => {
            let rows = figures::render(*name, *y, &tol, g.full_precision, g.output.as_deref())?;
            Ok(Reply::ok(json!({
                "figure": figures::file_stem(*name),
                "rows": rows,
                "output": g.output.as_ref().map(|p| p.display().to_string()),
            })))
        }
    }
}

fn invariant(pair: ConcentricPair) -> Result<Reply> {
    let big_m = M_invariant(&pair);
    let reply = Reply::ok(json!({
        "ratio": pair.radius_ratio(),
        "half_arc": pair.half_arc(),
        "m": m_invariant(&pair),
        "M": big_m,
    }));
    Ok(if (big_m - big_m.round()).abs() <= 1e-9 * big_m {
        reply.note(format!(
            "M = {} is an integer: that many open arcs leave their endpoints uncovered, so m = M + 1",
            big_m.round()
        ))
    } else {
        reply
    })
}

fn iso(a: &FiniteConfig, b: &FiniteConfig, kind: IsoKind, mode: SearchMode, limit: u64) -> Result<Reply> {
    let res = find_isomorphism(a, b, kind, mode, limit);
    let mut payload = json!({ "kind": kind, "nodes_explored": res.nodes_explored });
    let reply = match res.outcome {
        Outcome::Found { bijections } => {
            payload["bijections"] = to_value(&bijections)?;
            Reply::ok(payload)
        }
        Outcome::Refuted { certificate } => {
            let rechecked = certificate.recheck(a, b, kind);
            payload["certificate"] = to_value(&certificate)?;
            payload["certificate_rechecked"] = json!(rechecked);
            let reply = Reply::with_status(Status::Refuted, payload);
            if rechecked {
                reply
            } else {
                reply.note("certificate did not survive an independent recheck")
            }
        }
        Outcome::Inconclusive => Reply::with_status(Status::Inconclusive, payload)
            .note(format!("node limit {limit} reached before the search finished")),
    };
    Ok(reply)
}

fn cover_construct(pair: &ConcentricPair, target: f64, tol: &Tolerance) -> Result<Reply> {
    let cert = construct_cover(pair, target, tol)?;
    let coverage = verify_cover(pair, &cert, tol);
    Ok(Reply::ok(json!({
        "M": M_invariant(pair),
        "target": target,
        "n": cert.n(),
        "k": cert.k,
        "ratio": cert.n() as f64 / cert.k as f64,
        "min_coverage": coverage,
        "certificate": cert,
    })))
}

fn cover_verify(pair: &ConcentricPair, cert: CoverCertificate, tol: &Tolerance) -> Result<Reply> {
    let coverage = verify_cover(pair, &cert, tol);
    let valid = coverage >= cert.k;
    let bound_ok = cover_lower_bound_ok(pair, cert.n() as u64, cert.k);
    let reply = Reply::with_status(
        if valid { Status::Ok } else { Status::Refuted },
        json!({
            "M": M_invariant(pair),
            "n": cert.n(),
            "k": cert.k,
            "min_coverage": coverage,
            "valid": valid,
            "lower_bound_ok": bound_ok,
        }),
    );
    Ok(if !bound_ok {
        reply.note(format!("n/k = {}/{} is below M, so no certificate of this size can cover", cert.n(), cert.k))
    } else {
        reply
    })
}

fn example(name: ExampleName, y: f64, rho: f64, tau: f64, pair: Option<&str>, tol: &Tolerance) -> Result<Reply> {
    let default_tol = *tol == Tolerance::default();
    let reply = match name {
        ExampleName::Ex25 => {
            let rep = example_2_5(rho, tau)?;
            Reply::with_status(status_of(rep.passed()), to_value(&rep)?)
        }
        ExampleName::Exbc1 => {
            let rep = exbc1()?;
            Reply::with_status(status_of(rep.passed()), to_value(&rep)?)
        }
        ExampleName::Ex61 => Reply::ok(to_value(&example_6_1(y)?)?),
        ExampleName::Ex62 => {
            let rep = example_6_2(y)?;
            Reply::with_status(status_of(rep.passed()), to_value(&rep)?)
        }
        ExampleName::Signatures => {
            let arg = pair.ok_or_else(|| CodedError::new("usage", "signatures needs --pair"))?;
            let rep = remark_6_1_signatures(&load_nc_pair(arg, &Tolerance::default())?)?;
            Reply::with_status(status_of(rep.agrees), to_value(&rep)?)
        }
    };
    Ok(if default_tol {
        reply
    } else {
        reply.note("example reports always use the default tolerances")
    })
}

// a report whose own checks fail is a refuted claim, not a crash
fn status_of(passed: bool) -> Status {
    if passed {
        Status::Ok
    } else {
        Status::Refuted
    }
}
