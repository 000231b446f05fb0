use std::fs;
use std::path::Path;

use cmds_core::construct::{
    construct_nested, construct_staircase, symbolic_det, triangular_det, triangular_det_factors,
    validate_witness, verify_mds, zero_pattern, ConstructError, FieldMatrix, MatrixDoc,
    MdsReport, Points, WitnessChain,
};
use cmds_core::field::{FieldCtx, FieldError};
use cmds_core::vecfamily::{
    check_vlk, decimal_strings, exhaustive_check, gen_pkv, independence_rank, min_level,
    null_certificate, VecFamilyError, SweepConfig, VecSet, VecSetDoc,
};
use cmds_core::multipoly::MultiPoly;
use cmds_core::setsystem::{
    MdsConditionReport, OrderMode, SetSystem, SetSystemDoc, SetSystemError,
};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Command, Method};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    SetSystem(#[from] SetSystemError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    VecFamily(#[from] VecFamilyError),
}

/// JSON payload plus whether the checked property holds.
pub struct Output {
    pub payload: Value,
    pub holds: bool,
}

impl Output {
    fn holds(payload: Value, holds: bool) -> Self {
        Output { payload, holds }
    }

    fn ok(payload: Value) -> Self {
        Output {
            payload,
            holds: true,
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: display,
        source,
    })
}

fn read_sets(path: &Path) -> Result<SetSystem, CliError> {
    Ok(SetSystem::from_doc(read_json::<SetSystemDoc>(path)?)?)
}

fn read_matrix(path: &Path) -> Result<FieldMatrix, CliError> {
    Ok(FieldMatrix::from_doc(&read_json::<MatrixDoc>(path)?)?)
}

fn read_vectors(path: &Path, k: Option<usize>) -> Result<(VecSet, usize), CliError> {
    let (v, file_k) = VecSet::from_doc(read_json::<VecSetDoc>(path)?)?;
    Ok((v, k.unwrap_or(file_k)))
}

fn parse_points(ctx: &FieldCtx, raw: &str) -> Result<Points, CliError> {
    let pts = raw
        .split(',')
        .map(|p| ctx.parse_elem(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Points::Explicit(pts))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Construct {
            method,
            sets,
            q,
            points,
            reorder,
        } => construct(method, &sets, q, points.as_deref(), reorder),
        Command::VerifyMds { matrix } => {
            let a = read_matrix(&matrix)?;
            Ok(match verify_mds(&a)? {
                MdsReport::Ok => Output::ok(json!({ "mds": true })),
                MdsReport::Singular { columns } => Output::holds(
                    json!({ "mds": false, "singular_columns": columns }),
                    false,
                ),
            })
        }
        Command::ZeroPattern { matrix } => {
            let a = read_matrix(&matrix)?;
            Ok(Output::ok(to_value(&zero_pattern(&a).to_doc())))
        }
        Command::CheckMdsCondition { sets } => {
            let s = read_sets(&sets)?;
            Ok(match s.check_mds_condition()? {
                MdsConditionReport::Ok => Output::ok(json!({ "satisfied": true })),
                MdsConditionReport::Violated {
                    subset,
                    intersection,
                } => Output::holds(
                    json!({
                        "satisfied": false,
                        "violating_subset": subset,
                        "intersection_size": intersection,
                    }),
                    false,
                ),
            })
        }
        Command::SymbolicDet { sets, witness } => symbolic(&sets, &witness),
        Command::VkCheck { vectors, k, l } => {
            let (v, k) = read_vectors(&vectors, k)?;
            let l = l.unwrap_or(v.n());
            let report = check_vlk(&v, k, l)?;
            let holds = report.is_ok();
            Ok(Output::holds(
                json!({
                    "k": k,
                    "l": l,
                    "ok": holds,
                    "clause": report.clause(),
                    "report": to_value(&report),
                    "min_level": min_level(&v, k)?,
                }),
                holds,
            ))
        }
        Command::Independence { vectors, k } => {
            let (v, k) = read_vectors(&vectors, k)?;
            let report = independence_rank(&gen_pkv(&v, k)?)?;
            let holds = report.independent;
            Ok(Output::holds(to_value(&report), holds))
        }
        Command::Counterexample { b } => {
            let cert = null_certificate(b)?;
            let verified = cert.verified();
            Ok(Output::holds(
                json!({
                    "b": cert.b,
                    "c": decimal_strings(&cert.c),
                    "rank": cert.rank,
                    "verified": verified,
                    "u": cert.u.iter().map(MultiPoly::to_string).collect::<Vec<_>>(),
                }),
                verified,
            ))
        }
        Command::L2Sweep {
            kmax,
            nmax,
            mmax,
            kmin,
            nmin,
            level,
            entry_cap,
            budget,
        } => {
            let mut cfg = SweepConfig::new(kmax, nmax, mmax);
            cfg.k_min = kmin;
            cfg.n_min = nmin;
            cfg.level = level;
            cfg.entry_cap = entry_cap;
            if let Some(b) = budget {
                cfg.budget = b;
            }
            let report = exhaustive_check(&cfg)?;
            let holds = report.violations.is_empty();
            Ok(Output::holds(to_value(&report), holds))
        }
    }
}

fn construct(
    method: Method,
    sets: &Path,
    q: u64,
    points: Option<&str>,
    reorder: bool,
) -> Result<Output, CliError> {
    let mut s = read_sets(sets)?;
    let ctx = FieldCtx::new(q)?;
    let pts = match points {
        Some(raw) => parse_points(&ctx, raw)?,
        None => Points::Auto,
    };
    let mode = match method {
        Method::Thm5 => OrderMode::Nested,
        Method::Thm7 => OrderMode::Staircase,
    };
    let mut order = None;
    if reorder {
        let perm = s.find_construction_order(mode)?.ok_or_else(|| {
            CliError::Input(format!("no row order satisfies the {mode:?} hypothesis").to_lowercase())
        })?;
        s = s.permuted(&perm);
        order = Some(perm);
    }
    let a = match method {
        Method::Thm5 => construct_nested(&s, &ctx, &pts)?,
        Method::Thm7 => construct_staircase(&s, &ctx, &pts)?,
    };
    let mut payload = to_value(&a.to_doc());
    if let Some(perm) = order {
        payload["row_order"] = json!(perm);
    }
    Ok(Output::ok(payload))
}

fn symbolic(sets: &Path, witness: &str) -> Result<Output, CliError> {
    let s = read_sets(sets)?;
    let mut report = symbolic_det(&s)?;
    if witness != "auto" {
        let xi = witness
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Input(format!("bad witness entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let w = WitnessChain::new(xi);
        validate_witness(&s, &w)?;
        report.factors = Some(triangular_det_factors(&s, &w)?);
        report.triangular = Some(triangular_det(&s, &w)?);
        report.witness = Some(w);
    }
    let factored = report.factors.as_ref().map(|f| {
        if f.is_empty() {
            "1".to_string()
        } else {
            f.iter()
                .map(|(a, b)| format!("(x{a} - x{b})"))
                .collect::<Vec<_>>()
                .join("*")
        }
    });
    let matches = report.matches_direct();
    Ok(Output::holds(
        json!({
            "witness": report.witness.as_ref().map(|w| w.xi().to_vec()),
            "factors": report.factors,
            "factored": factored,
            "expanded": report.direct.to_string(),
            "matches_direct_det": matches,
        }),
        matches,
    ))
}
