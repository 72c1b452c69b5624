//! Acceptance criteria, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use teleport_core::assets::{BellOutcome, CharlieBit};
use teleport_core::efficiency::{efficiency, ETA_LIMIT};
use teleport_core::engine::ForcedOutcomes;
use teleport_core::oracle::{
    controller_guess_fidelity, enumerate_all_branches, reproduce_showcase, verify_table1, EnumerationSummary,
};
use teleport_core::{
    run_protocol_detailed, AliceState, Amplitude, BobKnownState, ChannelSignConvention, OutcomePolicy, QubitParams,
};

const TOL: f64 = 1e-10;

type Check = Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    check: fn() -> Check,
    limit_secs: u64,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn table1() -> Check {
    let rows = verify_table1(ChannelSignConvention::Singlet).map_err(|e| e.to_string())?;
    ensure(rows.len() == 8, format!("{} rows", rows.len()))?;
    for r in &rows {
        ensure(r.pass, format!("row {}/{} failed: fidelity {}, oracle {:?}", r.bell, r.charlie, r.fidelity, r.oracle_op))?;
    }
    let min = rows.iter().map(|r| r.fidelity).fold(1.0, f64::min);
    Ok(format!("8/8 rows, min fidelity {min:.15}"))
}

fn tensor_rule() -> Check {
    let alice = AliceState::random(2, 2024).map_err(|e| e.to_string())?;
    let bob = BobKnownState::random_product(2, 2025).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (charlie, expected) in [(CharlieBit::Zero, "(-XZ)⊗I"), (CharlieBit::One, "(-I)⊗(-XZ)")] {
        let policy = OutcomePolicy {
            seed: 11,
            forced: ForcedOutcomes {
                bell: Some(vec![BellOutcome::PsiMinus, BellOutcome::PhiPlus]),
                charlie: Some(charlie),
                ..Default::default()
            },
        };
        let run = run_protocol_detailed(&alice, &bob, ChannelSignConvention::Singlet, &policy).map_err(|e| e.to_string())?;
        let t = &run.transcript;
        ensure(t.teleport_correction() == expected, format!("c={charlie}: got {}", t.teleport_correction()))?;
        ensure(t.teleport_fidelity() >= 1.0 - TOL, format!("c={charlie}: fidelity {}", t.teleport_fidelity()))?;
        parts.push(format!("c={charlie} {expected} F={:.15}", t.teleport_fidelity()));
    }
    Ok(parts.join("; "))
}

fn showcase() -> Check {
    let h = 0.5f64.sqrt();
    let cases = vec![
        (
            AliceState::new(vec![Amplitude::new(0.3f64.sqrt(), 0.0), Amplitude::new(0.0, 0.7f64.sqrt())]),
            BobKnownState::product(vec![QubitParams::new(h, h, std::f64::consts::FRAC_PI_4).unwrap()]),
        ),
        (AliceState::random(1, 5), BobKnownState::random_product(1, 6)),
        (AliceState::random(2, 7), BobKnownState::random_product(2, 8)),
    ];
    let mut worst: f64 = 0.0;
    for (alice, bob) in cases {
        let (alice, bob) = (alice.map_err(|e| e.to_string())?, bob.map_err(|e| e.to_string())?);
        let r = reproduce_showcase(&alice, &bob, ChannelSignConvention::Singlet).map_err(|e| e.to_string())?;
        ensure(r.pass, format!("n={} deviation {}", r.n, r.max_deviation))?;
        worst = worst.max(r.max_deviation);
    }
    Ok(format!("n=1 and n=2 transferred, max deviation {worst:.3e}"))
}

fn exhaustive() -> Check {
    let mut max_prob_err: f64 = 0.0;
    let mut branches = 0;
    for (n, pairs) in [(1usize, 100u64), (2, 10)] {
        let expected = 4usize.pow(n as u32) * 2usize.pow(n as u32) * 2usize.pow(n as u32) * 2;
        for i in 0..pairs {
            let alice = AliceState::random(n, 10_000 + i).map_err(|e| e.to_string())?;
            let bob = BobKnownState::random_product(n, 20_000 + i).map_err(|e| e.to_string())?;
            let reports = enumerate_all_branches(&alice, &bob, ChannelSignConvention::Singlet).map_err(|e| e.to_string())?;
            let s = EnumerationSummary::from_reports(&reports);
            ensure(s.branches == expected, format!("n={n} pair {i}: {} branches", s.branches))?;
            let err = (s.total_probability - 1.0).abs();
            ensure(err <= 1e-12, format!("n={n} pair {i}: sum p = {}", s.total_probability))?;
            ensure(s.all_restored(TOL), format!("n={n} pair {i}: min fidelities {} / {}", s.min_teleport_fidelity, s.min_rsp_fidelity))?;
            max_prob_err = max_prob_err.max(err);
            branches += s.branches;
        }
    }
    Ok(format!("{branches} branches restored both ways, max |sum p - 1| = {max_prob_err:.1e}"))
}

fn efficiency_check() -> Check {
    let one = efficiency(1).map_err(|e| e.to_string())?;
    ensure((one.eta - 2.0 / 7.0).abs() < 1e-15, format!("eta(1) = {}", one.eta))?;
    let six = efficiency(6).map_err(|e| e.to_string())?;
    ensure((six.eta - 12.0 / 37.0).abs() < 1e-15, format!("eta(6) = {}", six.eta))?;
    let etas: Vec<f64> = (1..=100).map(|n| efficiency(n).map(|r| r.eta)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(etas.windows(2).all(|w| w[0] < w[1]), "not monotone")?;
    ensure(etas.iter().all(|&e| e < ETA_LIMIT), "exceeds 1/3")?;
    ensure(six.discrepancies.iter().any(|d| d.quantity == "eta_n6_comparison_table" && d.published == 0.3333), "n=6 table value not flagged")?;
    ensure(six.discrepancies.iter().any(|d| d.quantity == "eta_limit" && d.published == 1.0), "limit not flagged")?;
    Ok(format!("eta(1)={:.4} eta(6)={:.4} eta(100)={:.4} < 1/3, comparison and limit flagged", one.eta, six.eta, etas[99]))
}

fn controller() -> Check {
    let alice = AliceState::new(vec![Amplitude::new(0.3f64.sqrt(), 0.0), Amplitude::new(0.7f64.sqrt(), 0.0)])
        .map_err(|e| e.to_string())?;
    let bob = BobKnownState::product(vec![QubitParams::new(0.6, 0.8, 1.1).unwrap()]).map_err(|e| e.to_string())?;
    let f = controller_guess_fidelity(&alice, &bob, ChannelSignConvention::Singlet, CharlieBit::Zero)
        .map_err(|e| e.to_string())?;
    // Frozen from the enumeration oracle.
    ensure((f - 0.5).abs() < TOL, format!("mean fidelity {f}, frozen value 0.5"))?;
    ensure(f < 0.999, format!("mean fidelity {f}"))?;
    Ok(format!("mean fidelity without the announcement {f:.15}"))
}

fn convention() -> Check {
    let rows = verify_table1(ChannelSignConvention::PhiMinus).map_err(|e| e.to_string())?;
    let failing: Vec<String> =
        rows.iter().filter(|r| r.charlie == CharlieBit::One && !r.pass).map(|r| r.bell.to_string()).collect();
    ensure(!failing.is_empty(), "phiminus passes every row")?;
    Ok(format!("phiminus fails c=1 rows [{}]", failing.join(", ")))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "AC1", name: "single-pair correction table", check: table1, limit_secs: 1 },
        Criterion { id: "AC2", name: "two-pair tensor correction", check: tensor_rule, limit_secs: 1 },
        Criterion { id: "AC3", name: "uncorrected showcase branch", check: showcase, limit_secs: 2 },
        Criterion { id: "AC4", name: "exhaustive branch correctness", check: exhaustive, limit_secs: 30 },
        Criterion { id: "AC5", name: "efficiency", check: efficiency_check, limit_secs: 1 },
        Criterion { id: "AC6", name: "controller necessity", check: controller, limit_secs: 1 },
        Criterion { id: "AC7", name: "channel convention sensitivity", check: convention, limit_secs: 1 },
    ];
    let mut failed = 0;
    for Criterion { id, name, check, limit_secs: limit } in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= Duration::from_secs(limit) {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit} s"))
            }
        });
        match result {
            Ok(detail) => println!("[PASS] {id} {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {name} ({elapsed:.2?}): {detail}");
            }
        }
    }
    println!("acceptance: {}/7 passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
