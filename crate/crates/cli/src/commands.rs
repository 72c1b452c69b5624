use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use teleport_core::assets::CharlieBit;
use teleport_core::efficiency::efficiency;
use teleport_core::engine::ForcedOutcomes;
use teleport_core::json::{to_canonical_line, to_canonical_string};
use teleport_core::oracle::{
    derive_rsp_table, enumerate_all_branches, reproduce_showcase, showcase_key, verify_table1, EnumerationSummary,
    RspKey,
};
use teleport_core::{run_protocol, AliceState, BobKnownState, OutcomePolicy, Pauli};

use crate::args::{EfficiencyArgs, InputArgs, ModeArg, RunArgs, VerifyArgs};
use crate::error::{CliError, CliResult};

const FIDELITY_TOL: f64 = 1e-10;

pub enum Outcome {
    Success,
    Failure,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|source| CliError::Io { path: path.clone(), source })
        }
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::Io { path: "<stdout>".into(), source: e }),
            _ => Ok(()),
        },
    }
}

fn resolve_inputs(args: &InputArgs) -> CliResult<(AliceState, BobKnownState)> {
    let alice_file = args.alice.as_deref().map(read).transpose()?.map(|t| AliceState::from_json(&t)).transpose()?;
    let bob_file = args.bob.as_deref().map(read).transpose()?.map(|t| BobKnownState::from_json(&t)).transpose()?;
    let n = args.n.or(alice_file.as_ref().map(AliceState::n)).or(bob_file.as_ref().map(BobKnownState::n)).unwrap_or(1);
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let alice = match alice_file {
        Some(a) => a,
        None => AliceState::random(n, args.seed)?,
    };
    let bob = match bob_file {
        Some(b) => b,
        None => match args.mode {
            ModeArg::Product => BobKnownState::random_product(n, args.seed.wrapping_add(1))?,
            ModeArg::General => BobKnownState::random_general(n, args.seed.wrapping_add(1))?,
        },
    };
    for (who, got) in [("alice", alice.n()), ("bob", bob.n())] {
        if got != n {
            return Err(CliError::Usage(format!("{who} input has {got} qubits, expected {n}")));
        }
    }
    Ok((alice, bob))
}

pub fn run(args: &RunArgs) -> CliResult<Outcome> {
    let (alice, bob) = resolve_inputs(&args.input)?;
    let charlie = args.force_charlie.map(CharlieBit::try_from).transpose()?;
    let policy = OutcomePolicy {
        seed: args.input.seed.wrapping_add(2),
        forced: ForcedOutcomes {
            bell: args.force_bell.clone(),
            amplitude: args.force_amp.clone(),
            phase: args.force_phase.clone(),
            charlie,
        },
    };
    let transcript = run_protocol(&alice, &bob, args.input.convention, &policy)?;
    emit(args.input.out.as_ref(), &to_canonical_string(&transcript))?;
    let ok = transcript.teleport_fidelity() >= 1.0 - FIDELITY_TOL && transcript.rsp_fidelity() >= 1.0 - FIDELITY_TOL;
    Ok(if ok { Outcome::Success } else { Outcome::Failure })
}

pub fn enumerate(args: &InputArgs) -> CliResult<Outcome> {
    let (alice, bob) = resolve_inputs(args)?;
    let reports = enumerate_all_branches(&alice, &bob, args.convention)?;
    let summary = EnumerationSummary::from_reports(&reports);
    let doc = json!({
        "n": alice.n(),
        "convention": args.convention.to_string(),
        "summary": to_value(&summary),
        "branches": to_value(&reports),
    });
    emit(args.out.as_ref(), &to_canonical_string(&doc))?;
    Ok(Outcome::Success)
}

fn to_value<T: serde::Serialize>(item: &T) -> Value {
    teleport_core::json::to_canonical_value(item)
}

fn tagged(check: &str, item: Value) -> Value {
    let mut item = item;
    if let Value::Object(map) = &mut item {
        map.insert("check".into(), Value::from(check));
    }
    item
}

pub fn verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let conv = args.input.convention;
    let mut lines = Vec::new();
    let mut failures: Vec<String> = Vec::new();

    for row in verify_table1(conv)? {
        if !row.pass {
            failures.push(format!("table1 bell={} c={}", row.bell, row.charlie));
        }
        lines.push(tagged("table1", to_value(&row)));
    }

    let cases = match (&args.input.alice, &args.input.bob, args.input.n) {
        (None, None, None) => vec![1, 2],
        _ => vec![0],
    };
    for n in cases {
        let (alice, bob) = if n == 0 {
            resolve_inputs(&args.input)?
        } else {
            resolve_inputs(&InputArgs { n: Some(n), alice: None, bob: None, out: None, ..args.input.clone() })?
        };
        let report = reproduce_showcase(&alice, &bob, conv)?;
        if !report.pass {
            failures.push(format!("showcase n={}", report.n));
        }
        lines.push(tagged("showcase", to_value(&report)));

        let table = derive_rsp_table(&bob, conv)?;
        let key = showcase_key(&bob);
        let showcase_entry = table.get(&RspKey::new(key.amplitude, key.phase, key.charlie));
        let identity = matches!(showcase_entry, Some(Some(op)) if op.factors().iter().all(|f| !f.negative && f.pauli == Pauli::I));
        let uncorrectable: Vec<String> = table.uncorrectable().map(|k| k.to_string()).collect();
        let pass = identity && uncorrectable.is_empty();
        if !pass {
            failures.push(format!("rsp_table n={}", bob.n()));
        }
        lines.push(json!({
            "check": "rsp_table",
            "n": bob.n(),
            "showcase_identity": identity,
            "uncorrectable": uncorrectable,
            "table": to_value(&table),
            "pass": pass,
        }));
    }

    if let Some(n) = args.efficiency {
        lines.push(tagged("efficiency", to_value(&efficiency(n)?)));
    }
    let all_pass = failures.is_empty();
    lines.push(json!({ "check": "summary", "pass": all_pass, "failures": failures }));

    let text: Vec<String> = lines.iter().map(to_canonical_line).collect();
    emit(args.input.out.as_ref(), &text.join("\n"))?;
    Ok(if all_pass { Outcome::Success } else { Outcome::Failure })
}

pub fn efficiency_report(args: &EfficiencyArgs) -> CliResult<Outcome> {
    let mut report = efficiency(args.n)?;
    if let Some(path) = &args.transcript {
        let doc: Value = serde_json::from_str(&read(path)?).map_err(teleport_core::Error::from)?;
        let field = |name: &str| {
            doc.get(name)
                .and_then(Value::as_u64)
                .ok_or_else(|| CliError::Usage(format!("{}: transcript has no integer {name:?}", path.display())))
        };
        let n = field("n")? as usize;
        if n != args.n {
            return Err(CliError::Usage(format!("transcript is for n = {n}, report requested for n = {}", args.n)));
        }
        report.actual_classical_bits = Some(field("classical_bits")? as usize);
    }
    emit(args.out.as_ref(), &to_canonical_string(&report))?;
    Ok(Outcome::Success)
}
