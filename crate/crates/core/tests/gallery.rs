mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdwtc::gallery::*;
use sdwtc::probkit::{assemble_joint, CondKernel, FinitePmf};
use sdwtc::regions::{region_a, SearchConfig};

fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

#[test]
fn msaf_numbers_match_closed_forms() {
    for sigma in [0.05, 0.25, 0.45] {
        let (_, p, a) = build_msaf_example(sigma).unwrap();
        let eps = 0.5 * (h(sigma / 2.0) - sigma);
        assert!((p.epsilon - eps).abs() < 1e-12);
        assert!((a.capacity - (1.0 - sigma / 2.0 - h(sigma / 2.0) / 2.0)).abs() < 1e-12);
        assert!((a.causal_bound - (1.0 - h(sigma / 2.0))).abs() < 1e-12);
        assert!((h(p.lambda) - a.capacity).abs() < 1e-10);
        assert!((a.key_entropy - a.capacity).abs() < 1e-10);
        assert!(a.capacity < a.gp_capacity);
    }
    // h(0.125) = 0.543564443199596...
    let (_, p, a) = build_msaf_example(0.25).unwrap();
    assert!((p.epsilon - 0.146_782_221_6).abs() < 1e-9);
    assert!((a.capacity - 0.603_217_778_4).abs() < 1e-9);
}

#[test]
fn msaf_reference_auxiliary_attains_capacity() {
    for sigma in [0.1, 0.25, 0.4] {
        let (w, p, a) = build_msaf_example(sigma).unwrap();
        let j = assemble_joint(&w, &msaf_reference_aux(&p)).unwrap();
        let (_, b2, b3) = region_oracle(&j);
        let b = region_a(&j).unwrap();
        assert!((b.sum_intercept() - a.capacity).abs() < 1e-9);
        assert!((b2.min(b3) - a.capacity).abs() < 1e-9);
    }
}

#[test]
fn msaf_rejects_out_of_range_sigma() {
    for s in [0.0, 0.5, 0.7, -0.1, f64::NAN] {
        assert!(matches!(build_msaf_example(s), Err(GalleryError::OutOfRange { .. })), "{s}");
    }
}

#[test]
fn stuck_cells_ignore_the_input() {
    for x in 0..2 {
        assert_eq!(stuck_at(STUCK_ZERO, x), 0);
        assert_eq!(stuck_at(STUCK_ONE, x), 1);
        assert_eq!(stuck_at(WORKING, x), x);
    }
}

#[test]
fn coin_report_values() {
    let r = coin_counterexample_report().unwrap();
    assert!((r.r_zib - 2.0).abs() < 1e-12);
    assert!((r.cr_upper_bound - 2.0).abs() < 1e-12);
    assert!((r.state_information - 1.0).abs() < 1e-12);
    assert!(r.contradiction);
}

#[test]
fn corollary_region_on_keyed_msaf() {
    let base = msaf_base(0.25, 0.146_782_221_6).unwrap();
    let key = FinitePmf::bernoulli(0.147_369_357_5).unwrap();
    let cfg = SearchConfig {
        card_u: 3,
        restarts: 20,
        steps: 1000,
        ..Default::default()
    };
    let c = corollary1_region(&base, &key, &cfg).unwrap();
    assert!((c.sum_cap - h(0.147_369_357_5)).abs() < 1e-12);
    // I(U;Y) − I(U;S) never exceeds the no-key capacity (1 − σ)(1 − ε)
    assert!(c.r_m_cap <= 0.75 * (1.0 - 0.146_782_221_6) + 1e-9);
    assert!(c.best_message_rate() <= c.sum_cap);
}

#[test]
fn non_degraded_channel_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = random_wtc(&mut rng, 2, 2, 2, 2);
    let garbling = CondKernel::from_fn(vec![2], 2, |z, y| if z == y { 1.0 } else { 0.0 }).unwrap();
    assert!(matches!(DegradedWtc::from_wtc(w, garbling), Err(GalleryError::NotDegraded { .. })));
}

#[test]
fn keyed_channel_has_product_state() {
    let base = msaf_base(0.25, 0.1).unwrap();
    let key = FinitePmf::new(vec![0.3, 0.7]).unwrap();
    let w = build_less_noisy_with_key(&base, &key).unwrap();
    assert_eq!(w.card_s(), 6);
    assert_eq!(w.card_y(), 6);
    let f = w.factors().unwrap();
    assert_eq!((f.key, f.core), (2, 3));
}

#[test]
fn micro_instance_shapes() {
    let w = micro_wiretap(0.25).unwrap();
    let a = micro_aux(0.7).unwrap();
    let j = assemble_joint(&w, &a).unwrap();
    // V = X uniform, Y = X, Z = X through BSC(0.25)
    assert!((cmi_of(&j, &[V], &[Y], &[]) - 1.0).abs() < 1e-12);
    assert!((cmi_of(&j, &[V], &[Z], &[]) - (1.0 - h(0.25))).abs() < 1e-12);
    assert!((cmi_of(&j, &[V], &[S], &[]) - (1.0 - h(0.7))).abs() < 1e-12);
    assert!(micro_wiretap(1.5).is_err());
}

#[test]
fn spec_files_reject_bad_input() {
    let ok = emit_channel_spec(&coin_channel());
    let unknown = ok.replacen("\"state\"", "\"extra\": 1, \"state\"", 1);
    assert!(matches!(parse_channel_spec(&unknown), Err(GalleryError::Syntax { .. })));
    let short = r#"{"alphabets":{"S":2,"X":1,"Y":1,"Z":1},"state":[1.0],"channel":[[[[1.0]]]]}"#;
    assert!(matches!(parse_channel_spec(short), Err(GalleryError::Shape(_))));
    let aux = r#"{"alphabets":{"U":1,"V":2},"kernel":[[0.5,0.25]]}"#;
    assert!(matches!(parse_aux_spec(aux), Err(GalleryError::NotStochastic { .. })));
    let aux = r#"{"alphabets":{"U":1,"V":2},"kernel":[[0.5,0.25,0.25]]}"#;
    assert!(matches!(parse_aux_spec(aux), Err(GalleryError::Shape(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn channel_and_aux_files_round_trip(seed in any::<u64>(), cs in 1usize..4, cx in 1usize..3, cy in 1usize..4, cz in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_wtc(&mut rng, cs, cx, cy, cz);
        prop_assert_eq!(parse_channel_spec(&emit_channel_spec(&w)).unwrap(), w);
        let a = random_aux(&mut rng, cs, 2, 3, cx);
        prop_assert_eq!(parse_aux_spec(&emit_aux_spec(&a)).unwrap(), a);
    }
}
