mod common;

use dofsim::assignment::{topology_reduce, Strategy};
use dofsim::montecarlo::m1_strategies;
use dofsim::network::{derive_seed, sample_coefficients, sample_realization, NetworkTopology};
use dofsim::oracles::{
    brute_force_zf_network, enumerate_local_cases, is_canonical, lemma2_4_scheme_dof, mirror,
    tdma_brute_force, tdma_optimal,
};
use dofsim::zf::{schedule_atomic, zf_dof, zf_dof_verified};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn zf_dof_matches_whole_network_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..3000u64 {
        let k = rng.gen_range(1..=10);
        let a = common::random_local_assignment(&mut rng, k);
        let p = rng.gen_range(0.0..0.8);
        let r = sample_realization(NetworkTopology::new(k), p, derive_seed(5, trial));
        let c = sample_coefficients(&r, derive_seed(6, trial));
        let expected = brute_force_zf_network(&a, &c).unwrap();
        assert_eq!(zf_dof(&r, &a).unwrap(), expected, "{a:?} {:?}", r.bits());
        assert_eq!(zf_dof_verified(&r, &a, &c).unwrap(), expected);
    }
}

#[test]
fn reduction_loses_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..2000u64 {
        let k = rng.gen_range(1..=12);
        let a = common::random_local_assignment(&mut rng, k);
        let r = sample_realization(NetworkTopology::new(k), rng.gen_range(0.0..0.7), trial);
        let reduced = topology_reduce(&a, &r);
        assert_eq!(topology_reduce(&reduced, &r), reduced);
        assert_eq!(zf_dof(&r, &a).unwrap(), zf_dof(&r, &reduced).unwrap());
    }
}

#[test]
fn tdma_dynamic_program_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..3000u64 {
        let k = rng.gen_range(1..=14);
        let a = common::random_cell_association(&mut rng, k);
        let r = sample_realization(NetworkTopology::new(k), rng.gen_range(0.0..1.0), trial);
        assert_eq!(
            tdma_optimal(&r, &a).unwrap(),
            tdma_brute_force(&r, &a).unwrap()
        );
    }
}

#[test]
fn lemma_schemes_match_dynamic_program() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for trial in 0..3000u64 {
        let k = rng.gen_range(4..=40);
        let which = rng.gen_range(1..=3u8);
        let a = m1_strategies()[which as usize - 1].build(k).unwrap();
        let r = sample_realization(
            NetworkTopology::with_last_tx_deactivated(k),
            rng.gen_range(0.0..1.0),
            trial,
        );
        assert_eq!(
            lemma2_4_scheme_dof(&r, &a, which).unwrap(),
            tdma_optimal(&r, &a).unwrap()
        );
    }
}

#[test]
fn mirrored_subnetworks_have_equal_dof() {
    for n in 1..=5 {
        for sub in enumerate_local_cases(n) {
            let m = mirror(&sub);
            assert!(is_canonical(&m));
            assert_eq!(
                schedule_atomic(&sub).dof(),
                schedule_atomic(&m).dof(),
                "{sub:?}"
            );
        }
    }
}

#[test]
fn case_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_local_cases(n).len()).collect();
    assert_eq!(counts, vec![5, 28, 142, 648, 2882]);
}

#[test]
fn no_erasure_values_of_named_strategies() {
    let k = 1000;
    let r = sample_realization(NetworkTopology::with_last_tx_deactivated(k), 0.0, 1);
    let a = Strategy::Theorem4.build(k).unwrap();
    assert_eq!(zf_dof(&r, &a).unwrap(), 800);
    let a = Strategy::Theorem5.build(k).unwrap();
    assert_eq!(zf_dof(&r, &a).unwrap(), 666);
    let a = Strategy::Ternary { s: vec![2, 1, 0] }.build(999).unwrap();
    let r = sample_realization(NetworkTopology::with_last_tx_deactivated(999), 0.0, 1);
    assert_eq!(tdma_optimal(&r, &a).unwrap(), 666);
}
