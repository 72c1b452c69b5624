use std::collections::HashMap;

use teleport_core::assets::{BellOutcome, CharlieBit};
use teleport_core::engine::ForcedOutcomes;
use teleport_core::json::to_canonical_string;
use teleport_core::oracle::{
    derive_rsp_table, enumerate_all_branches, enumerate_leaves, forced_leaf, BranchKey, EnumerationSummary,
};
use teleport_core::{
    efficiency_with_transcript, run_protocol, run_protocol_detailed, select_teleport_correction, AliceState,
    BobKnownState, ChannelSignConvention, Error, OutcomePolicy,
};

const SINGLET: ChannelSignConvention = ChannelSignConvention::Singlet;

#[test]
fn single_pair_branches_uniform() {
    let alice = AliceState::random(1, 3).unwrap();
    let bob = BobKnownState::random_product(1, 4).unwrap();
    let leaves = enumerate_leaves(&alice, &bob, SINGLET).unwrap();
    assert_eq!(leaves.len(), 32);
    for leaf in &leaves {
        assert!((leaf.probability - 1.0 / 32.0).abs() < 1e-12, "{} {}", leaf.key, leaf.probability);
    }
}

#[test]
fn forced_runs_match_enumerated_probabilities() {
    let alice = AliceState::random(2, 30).unwrap();
    let bob = BobKnownState::random_product(2, 31).unwrap();
    let leaves = enumerate_leaves(&alice, &bob, SINGLET).unwrap();
    for leaf in leaves.iter().step_by(37) {
        let k = &leaf.key;
        let policy = OutcomePolicy::forced(k.bell.clone(), k.amplitude.clone(), k.phase.clone(), k.charlie);
        let t = run_protocol(&alice, &bob, SINGLET, &policy).unwrap();
        assert!((t.joint_probability() - leaf.probability).abs() < 1e-12);
        assert!(t.teleport_fidelity() > 1.0 - 1e-10);
        assert!(t.rsp_fidelity() > 1.0 - 1e-10);
    }
}

#[test]
fn table_and_oracle_agree_everywhere() {
    for seed in 0..5 {
        let alice = AliceState::random(2, seed).unwrap();
        let bob = BobKnownState::random_product(2, seed + 100).unwrap();
        for r in enumerate_all_branches(&alice, &bob, SINGLET).unwrap() {
            let oracle = r.teleport_correction.as_ref().expect("teleport correctable");
            assert!(oracle.equivalent(&r.table_teleport_correction), "{}", r.key);
            assert!(r.table_teleport_fidelity > 1.0 - 1e-10);
        }
    }
}

#[test]
fn three_pairs_enumerate() {
    let alice = AliceState::random(3, 1).unwrap();
    let bob = BobKnownState::random_product(3, 2).unwrap();
    let s = EnumerationSummary::from_reports(&enumerate_all_branches(&alice, &bob, SINGLET).unwrap());
    assert_eq!(s.branches, 64 * 8 * 8 * 2);
    assert!((s.total_probability - 1.0).abs() < 1e-12);
    assert!(s.all_restored(1e-10));
}

#[test]
fn four_pairs_rejected() {
    let alice = AliceState::random(4, 1).unwrap();
    let bob = BobKnownState::random_product(4, 2).unwrap();
    assert!(matches!(enumerate_all_branches(&alice, &bob, SINGLET), Err(Error::ResourceBound { n: 4, max: 3 })));
}

#[test]
fn correction_is_local_per_pair() {
    let op = select_teleport_correction(&[BellOutcome::PsiMinus, BellOutcome::PhiMinus, BellOutcome::PsiPlus], CharlieBit::One);
    assert_eq!(op.to_string(), "(-I)⊗X⊗(-Z)");
}

#[test]
fn sampled_frequencies_follow_distribution() {
    let alice = AliceState::random(1, 8).unwrap();
    let bob = BobKnownState::random_product(1, 9).unwrap();
    let mut counts: HashMap<String, usize> = HashMap::new();
    let runs = 3200;
    for seed in 0..runs {
        let t = run_protocol(&alice, &bob, SINGLET, &OutcomePolicy::sample(seed)).unwrap();
        assert!(t.teleport_fidelity() > 1.0 - 1e-10);
        assert!(t.rsp_fidelity() > 1.0 - 1e-10);
        *counts.entry(t.steps()[0].outcomes.join(",")).or_default() += 1;
    }
    for b in BellOutcome::ALL {
        let c = counts.get(&b.to_string()).copied().unwrap_or(0) as f64 / runs as f64;
        assert!((c - 0.25).abs() < 0.04, "{b}: {c}");
    }
}

#[test]
fn runs_are_deterministic() {
    let alice = AliceState::random(2, 50).unwrap();
    let bob = BobKnownState::random_product(2, 51).unwrap();
    let a = to_canonical_string(&run_protocol(&alice, &bob, SINGLET, &OutcomePolicy::sample(52)).unwrap());
    let b = to_canonical_string(&run_protocol(&alice, &bob, SINGLET, &OutcomePolicy::sample(52)).unwrap());
    assert_eq!(a, b);
    let ra = to_canonical_string(&enumerate_all_branches(&alice, &bob, SINGLET).unwrap());
    let rb = to_canonical_string(&enumerate_all_branches(&alice, &bob, SINGLET).unwrap());
    assert_eq!(ra, rb);
}

#[test]
fn transcript_bit_audit() {
    let alice = AliceState::random(1, 60).unwrap();
    let bob = BobKnownState::random_product(1, 61).unwrap();
    let t = run_protocol(&alice, &bob, SINGLET, &OutcomePolicy::sample(62)).unwrap();
    assert_eq!(t.classical_bits(), 6);
    let report = efficiency_with_transcript(&t).unwrap();
    assert_eq!(report.b_k, 0);
    assert_eq!(report.actual_classical_bits, Some(6));
}

#[test]
fn partial_forcing_respected() {
    let alice = AliceState::random(2, 70).unwrap();
    let bob = BobKnownState::random_product(2, 71).unwrap();
    let policy = OutcomePolicy {
        seed: 5,
        forced: ForcedOutcomes { amplitude: Some(vec![2, 1]), charlie: Some(CharlieBit::One), ..Default::default() },
    };
    let run = run_protocol_detailed(&alice, &bob, SINGLET, &policy).unwrap();
    assert_eq!(run.transcript.steps()[3].outcomes, vec!["2", "1"]);
    assert_eq!(run.transcript.steps()[5].outcomes, vec!["1"]);
    assert!(run.transcript.rsp_fidelity() > 1.0 - 1e-10);
}

#[test]
fn rsp_table_identity_on_showcase_key() {
    for n in 1..=3 {
        let bob = BobKnownState::random_product(n, 80 + n as u64).unwrap();
        let table = derive_rsp_table(&bob, SINGLET).unwrap();
        assert_eq!(table.entries.len(), 4usize.pow(n as u32) * 2);
        let key = teleport_core::oracle::RspKey::new(vec![1; n], vec![1; n], CharlieBit::Zero);
        assert!(table.get(&key).unwrap().as_ref().unwrap().factors().iter().all(|f| !f.negative && f.pauli == teleport_core::Pauli::I));
        assert_eq!(table.uncorrectable().count(), 0);
    }
}

#[test]
fn general_mode_empirical_report() {
    let alice = AliceState::random(2, 90).unwrap();
    let bob = BobKnownState::random_general(2, 91).unwrap();
    let s = EnumerationSummary::from_reports(&enumerate_all_branches(&alice, &bob, SINGLET).unwrap());
    assert!((s.total_probability - 1.0).abs() < 1e-12);
    assert!(s.min_teleport_fidelity > 1.0 - 1e-10);
    let key = BranchKey { bell: vec![BellOutcome::PhiPlus; 2], amplitude: vec![1], phase: vec![1], charlie: CharlieBit::Zero };
    let leaf = forced_leaf(&alice, &bob, SINGLET, &key).unwrap();
    assert!(leaf.prepared.max_deviation_up_to_phase(&bob.state()).unwrap() < 1e-10);
    assert_eq!(s.branches, 512);
    // Frozen from the enumeration oracle.
    assert_eq!(s.uncorrectable_rsp, 384);
}
