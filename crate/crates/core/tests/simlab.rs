use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdwtc::gallery::{micro_aux, micro_wiretap};
use sdwtc::probkit::{CondKernel, FinitePmf};
use sdwtc::simlab::*;

fn micro_laws(flip: f64, agree: f64) -> CodeLaws {
    CodeLaws::new(&micro_wiretap(flip).unwrap(), &micro_aux(agree).unwrap()).unwrap()
}

fn cfg(n: usize, rates: [f64; 4]) -> SimConfig {
    SimConfig {
        n,
        rate_m: rates[0],
        rate_k: rates[1],
        rate_1: rates[2],
        rate_2: rates[3],
        ..Default::default()
    }
}

fn words(list: &[&str]) -> Vec<Vec<u8>> {
    list.iter().map(|w| w.bytes().map(|b| b - b'0').collect()).collect()
}

#[test]
fn codebook_is_a_function_of_the_seed() {
    let laws = micro_laws(0.25, 0.7);
    let c = cfg(6, [0.5, 0.5, 0.0, 0.5]);
    let qu = laws.q_u_pmf().unwrap();
    let qv = laws.q_v_given_u_kernel().unwrap();
    assert_eq!(generate_codebook(&qu, &qv, &c).unwrap(), generate_codebook(&qu, &qv, &c).unwrap());
    let other = SimConfig { seed: 1, ..c.clone() };
    assert_ne!(generate_codebook(&qu, &qv, &c).unwrap(), generate_codebook(&qu, &qv, &other).unwrap());
}

#[test]
fn point_mass_cloud_repeats_its_center() {
    let qu = FinitePmf::new(vec![0.0, 1.0]).unwrap();
    let qv = CondKernel::from_fn(vec![2], 3, |_, v| [0.2, 0.3, 0.5][v]).unwrap();
    let cb = generate_codebook(&qu, &qv, &cfg(5, [0.0, 0.0, 0.6, 0.0])).unwrap();
    assert_eq!(cb.sizes().i, 8);
    for i in 0..8 {
        assert!(cb.u_word(i).iter().all(|&u| u == 1));
    }
}

#[test]
fn fair_coin_codeword_frequency_is_within_three_sigma() {
    let qu = FinitePmf::uniform(2).unwrap();
    let qv = CondKernel::from_fn(vec![2], 2, |u, v| if u == v { 1.0 } else { 0.0 }).unwrap();
    let n = 4000;
    let cb = generate_codebook(&qu, &qv, &cfg(n, [0.0; 4])).unwrap();
    let ones = cb.u_word(0).iter().filter(|&&u| u == 1).count() as f64;
    assert!((ones / n as f64 - 0.5).abs() <= 3.0 * (0.25 / n as f64).sqrt());
    assert_eq!(cb.u_word(0), cb.v_word(0, 0, 0, 0));
}

#[test]
fn singleton_codebook_encodes_to_the_origin() {
    let laws = micro_laws(0.25, 0.7);
    let cb = generate_codebook(&laws.q_u_pmf().unwrap(), &laws.q_v_given_u_kernel().unwrap(), &cfg(4, [0.0; 4])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let e = likelihood_encode(&cb, &laws, 0, &[0, 1, 1, 0], &mut rng);
    assert_eq!((e.i, e.j, e.k, e.failed), (0, 0, 0, false));
    // V = X in the micro auxiliary
    assert_eq!(e.x_seq, cb.v_word(0, 0, 0, 0));
}

#[test]
fn deterministic_auxiliary_forces_the_input() {
    let laws = micro_laws(0.25, 0.9);
    let cb = generate_codebook(&laws.q_u_pmf().unwrap(), &laws.q_v_given_u_kernel().unwrap(), &cfg(6, [0.0, 0.5, 0.0, 0.5])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let s: Vec<u8> = (0..6).map(|t| (t % 2) as u8).collect();
        let e = likelihood_encode(&cb, &laws, 0, &s, &mut rng);
        assert!(!e.failed);
        assert_eq!(e.x_seq, cb.v_word(e.i, e.j, e.k, 0));
    }
}

#[test]
fn encoder_picks_cells_in_proportion_to_their_weights() {
    let laws = micro_laws(0.25, 0.8);
    let sizes = IndexSizes { m: 1, k: 2, i: 1, j: 1 };
    let cb = Codebook::from_words(2, sizes, words(&["00"]), words(&["00", "01"])).unwrap();
    // q(s|v) = 0.8 on agreement: weights 0.64 and 0.16 for s = 00
    let w = likelihood_weights(&cb, &laws, 0, &[0, 0]);
    assert!((w[0] - 0.64).abs() < 1e-12 && (w[1] - 0.16).abs() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let trials = 20_000;
    let hits = (0..trials).filter(|_| likelihood_encode(&cb, &laws, 0, &[0, 0], &mut rng).k == 0).count() as f64;
    let p = 0.8;
    assert!((hits / trials as f64 - p).abs() <= 4.0 * (p * (1.0 - p) / trials as f64).sqrt());
}

#[test]
fn zero_weight_falls_back_and_is_flagged() {
    let laws = micro_laws(0.25, 1.0);
    let sizes = IndexSizes { m: 1, k: 1, i: 1, j: 1 };
    let cb = Codebook::from_words(2, sizes, words(&["00"]), words(&["11"])).unwrap();
    let e = likelihood_encode(&cb, &laws, 0, &[0, 0], &mut ChaCha8Rng::seed_from_u64(0));
    assert!(e.failed);
    assert_eq!((e.i, e.j, e.k), (0, 0, 0));
    // with agree = 1 the fallback q(x|s) puts x = s
    assert_eq!(e.x_seq, vec![0, 0]);
}

#[test]
fn noiseless_output_decodes_to_the_sent_cell() {
    let laws = micro_laws(0.25, 0.7);
    let sizes = IndexSizes { m: 2, k: 2, i: 1, j: 1 };
    let v = words(&["0011", "0101", "0110", "1001"]);
    let cb = Codebook::from_words(4, sizes, words(&["0000"]), v.clone()).unwrap();
    for k in 0..2 {
        for m in 0..2 {
            let d = typicality_decode(&cb, &laws, cb.v_word(0, 0, k, m), 0.5);
            assert!(d.unique());
            assert_eq!((d.k, d.m), (k, m));
        }
    }
    let d = typicality_decode(&cb, &laws, &[1, 1, 1, 1], 0.5);
    assert_eq!((d.matches, d.m, d.k), (0, 0, 0));
}

#[test]
fn decoder_agrees_with_brute_force_search() {
    let laws = micro_laws(0.2, 0.7);
    let c = SimConfig { eps_typ: 0.6, ..cfg(4, [0.5, 0.25, 0.0, 0.25]) };
    let cb = generate_codebook(&laws.q_u_pmf().unwrap(), &laws.q_v_given_u_kernel().unwrap(), &c).unwrap();
    let sz = cb.sizes();
    let (cv, cy) = (laws.card_v, laws.card_y);
    for code in 0..16u32 {
        let y: Vec<u8> = (0..4).map(|t| ((code >> t) & 1) as u8).collect();
        let mut hits = Vec::new();
        for i in 0..sz.i {
            for j in 0..sz.j {
                for k in 0..sz.k {
                    for m in 0..sz.m {
                        let (u, v) = (cb.u_word(i), cb.v_word(i, j, k, m));
                        let typical = (0..laws.q_uvy.len()).all(|a| {
                            let c = (0..4)
                                .filter(|&t| (u[t] as usize * cv + v[t] as usize) * cy + y[t] as usize == a)
                                .count();
                            (c as f64 / 4.0 - laws.q_uvy[a]).abs() <= 0.6 * laws.q_uvy[a]
                        });
                        if typical {
                            hits.push((i, j, k, m));
                        }
                    }
                }
            }
        }
        let d = typicality_decode(&cb, &laws, &y, 0.6);
        assert_eq!(d.matches, hits.len());
        if hits.len() == 1 {
            assert_eq!((d.i, d.j, d.k, d.m), hits[0]);
        }
    }
}

/// `I(M,K;Z^n)` for the micro instance, by explicit enumeration: with one
/// cloud, `q(s|v)` is `agree` on agreement and `x = v`.
fn micro_leakage_oracle(cb: &Codebook, flip: f64, agree: f64) -> f64 {
    let sz = cb.sizes();
    let n = cb.n();
    let mut p_mkz = vec![vec![0.0; 1 << n]; sz.m * sz.k];
    for m in 0..sz.m {
        for s_code in 0..1u32 << n {
            let s: Vec<u8> = (0..n).map(|t| ((s_code >> t) & 1) as u8).collect();
            let ps = 0.5f64.powi(n as i32) / sz.m as f64;
            let mut w = Vec::new();
            for j in 0..sz.j {
                for k in 0..sz.k {
                    let v = cb.v_word(0, j, k, m);
                    let p: f64 = (0..n).map(|t| if v[t] == s[t] { agree } else { 1.0 - agree }).product();
                    w.push((k, v.to_vec(), p));
                }
            }
            let total: f64 = w.iter().map(|x| x.2).sum();
            for (k, v, p) in w {
                for z_code in 0..1usize << n {
                    let pz: f64 = (0..n)
                        .map(|t| if ((z_code >> t) & 1) as u8 == v[t] { 1.0 - flip } else { flip })
                        .product();
                    p_mkz[m * sz.k + k][z_code] += ps * p / total * pz;
                }
            }
        }
    }
    let h = |p: &[f64]| -> f64 { p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum() };
    let pz: Vec<f64> = (0..1 << n).map(|z| p_mkz.iter().map(|r| r[z]).sum()).collect();
    let h_joint: f64 = h(&p_mkz.concat());
    let pmk: Vec<f64> = p_mkz.iter().map(|r| r.iter().sum()).collect();
    h(&pz) + h(&pmk) - h_joint
}

#[test]
fn exact_leakage_matches_enumeration_oracle() {
    for (flip, agree, seed) in [(0.1, 0.7, 0), (0.25, 0.9, 3), (0.0, 0.6, 8)] {
        let laws = micro_laws(flip, agree);
        let c = SimConfig { seed, ..cfg(3, [1.0 / 3.0, 1.0 / 3.0, 0.0, 2.0 / 3.0]) };
        let cb = generate_codebook(&laws.q_u_pmf().unwrap(), &laws.q_v_given_u_kernel().unwrap(), &c).unwrap();
        let ex = exact_metrics(&laws, &cb).unwrap();
        let oracle = micro_leakage_oracle(&cb, flip, agree);
        assert!((ex.leakage_bits - oracle).abs() < 1e-10, "{} vs {oracle}", ex.leakage_bits);
    }
}

#[test]
fn independent_eavesdropper_sees_nothing() {
    let laws = micro_laws(0.5, 0.7);
    let c = cfg(4, [0.5, 0.5, 0.0, 0.25]);
    let cb = generate_codebook(&laws.q_u_pmf().unwrap(), &laws.q_v_given_u_kernel().unwrap(), &c).unwrap();
    let ex = exact_metrics(&laws, &cb).unwrap();
    assert!(ex.leakage_bits.abs() < 1e-12);
    assert!(ex.ss_divergence.abs() < 1e-12);
}

#[test]
fn key_is_uniform_when_trivial_or_when_codewords_coincide() {
    let laws = micro_laws(0.25, 0.7);
    let c = cfg(4, [0.5, 0.0, 0.0, 0.5]);
    let tv = key_uniformity_exact(&micro_wiretap(0.25).unwrap(), &micro_aux(0.7).unwrap(), &c).unwrap();
    assert!(tv.iter().all(|&t| t == 0.0));
    let sizes = IndexSizes { m: 2, k: 2, i: 1, j: 1 };
    let cb = Codebook::from_words(3, sizes, words(&["000"]), words(&["011", "101", "011", "101"])).unwrap();
    let ex = exact_metrics(&laws, &cb).unwrap();
    assert!(ex.key_tv.iter().all(|&t| t.abs() < 1e-12));
}

#[test]
fn sampled_key_bias_tracks_the_exact_value() {
    let (w, a) = (micro_wiretap(0.25).unwrap(), micro_aux(0.8).unwrap());
    let trials = 40_000;
    let c = SimConfig { trials, seed: 5, exact_mode: true, ..cfg(3, [0.0, 1.0 / 3.0, 0.0, 1.0 / 3.0]) };
    let r = run_trials(&w, &a, &c).unwrap();
    let exact = r.key_tv_exact.unwrap();
    // |K| = 2: TV is |p̂ − ½|, and |p̂ − p| is within 4σ
    let p = 0.5 + exact;
    assert!((r.key_tv - exact).abs() <= 4.0 * (p * (1.0 - p) / trials as f64).sqrt(), "{} vs {exact}", r.key_tv);
}

#[test]
fn reports_are_reproducible_and_consistent() {
    let (w, a) = (micro_wiretap(0.25).unwrap(), micro_aux(0.7).unwrap());
    let c = SimConfig { trials: 500, eps_typ: 0.9, ..cfg(4, [0.5, 0.25, 0.0, 0.25]) };
    let r = run_trials(&w, &a, &c).unwrap();
    assert_eq!(r, run_trials(&w, &a, &c).unwrap());
    assert_eq!(r.trial_count, 500);
    assert!(r.max_error >= r.avg_error);
    assert!((0.0..=1.0).contains(&r.avg_error));
    assert!(r.leakage_bits.is_none());
    assert_eq!(r.effective_rates, [0.5, 0.25, 0.0, 0.25]);
}

#[test]
fn oversized_requests_hit_budgets() {
    let laws = micro_laws(0.25, 0.7);
    let (qu, qv) = (laws.q_u_pmf().unwrap(), laws.q_v_given_u_kernel().unwrap());
    assert!(matches!(
        generate_codebook(&qu, &qv, &cfg(40, [0.6, 0.0, 0.0, 0.0])),
        Err(SimError::Budget { what: "codebook", .. })
    ));
    let cb = generate_codebook(&qu, &qv, &cfg(12, [0.5, 0.0, 0.0, 0.0])).unwrap();
    assert!(matches!(exact_metrics(&laws, &cb), Err(SimError::Budget { .. })));
}

#[test]
fn invalid_configs_are_rejected() {
    for c in [
        SimConfig { n: 0, ..Default::default() },
        SimConfig { trials: 0, ..Default::default() },
        SimConfig { eps_typ: 0.0, ..Default::default() },
        SimConfig { rate_m: -1.0, ..Default::default() },
        SimConfig { rate_k: f64::NAN, ..Default::default() },
        SimConfig { n: 50, rate_1: 1.0, ..Default::default() },
    ] {
        assert!(matches!(c.validate(), Err(SimError::InvalidConfig(_))), "{c:?}");
    }
    let laws = micro_laws(0.25, 0.7);
    let cb = generate_codebook(&laws.q_u_pmf().unwrap(), &laws.q_v_given_u_kernel().unwrap(), &cfg(4, [0.0; 4])).unwrap();
    assert!(matches!(run_trials_with_codebook(&laws, &cb, &cfg(5, [0.0; 4])), Err(SimError::InvalidConfig(_))));
}
