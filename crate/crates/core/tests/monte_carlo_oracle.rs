//! Closed forms against the seeded simulation, and the simulation against
//! independently written brute-force re-simulations.

use greenbits_core::metrics::{eor_cpa, eor_cra, ior_cpa, ior_cra};
use greenbits_core::montecarlo::{
    estimate_eor, estimate_ior, estimate_ior_multiblock, SimConfig, Strategy, TruncatedFading,
    BLOCK_LEN,
};
use greenbits_core::{
    CpaConfig, CraConfig, DataAmount, EnergyAmount, EnergyThreshold, EntropyThreshold,
    FadingModel, LinkParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: u64 = 1_000_000;

fn ref_link() -> LinkParams {
    LinkParams::new(2e5, 1e-9).unwrap()
}

fn within_3se(closed: f64, p_hat: f64, se: f64, what: &str) {
    assert!((closed - p_hat).abs() <= 3.0 * se, "{what}: closed {closed} vs p_hat {p_hat} (se {se})");
}

#[test]
fn eor_cra_rayleigh_reference() {
    let fading = FadingModel::rayleigh(0.1).unwrap();
    let cra = CraConfig::new(0.2).unwrap();
    let h = DataAmount::new(4e5).unwrap();
    let e_th = EnergyThreshold::new(0.05).unwrap();
    let closed = eor_cra(&ref_link(), &cra, &fading, h, e_th).unwrap();
    let est =
        estimate_eor(&Strategy::Cra(cra), &ref_link(), &fading, h, e_th, &SimConfig::new(N, 42)).unwrap();
    within_3se(closed, est.p_hat, est.std_error, "eor cra");
}

#[test]
fn eor_cpa_rayleigh_reference() {
    let fading = FadingModel::rayleigh(0.1).unwrap();
    let cpa = CpaConfig::new(10.0, 0.5).unwrap();
    let h = DataAmount::new(4e5).unwrap();
    let e_th = EnergyThreshold::new(0.02).unwrap();
    let closed = eor_cpa(&ref_link(), &cpa, &fading, h, e_th).unwrap();
    let est =
        estimate_eor(&Strategy::Cpa(cpa), &ref_link(), &fading, h, e_th, &SimConfig::new(N, 42)).unwrap();
    within_3se(closed, est.p_hat, est.std_error, "eor cpa");
}

#[test]
fn ior_cra_nakagami_reference() {
    let fading = FadingModel::nakagami(2.0, 0.1).unwrap();
    let cra = CraConfig::new(0.2).unwrap();
    let e = EnergyAmount::new(0.08).unwrap();
    let h_th = EntropyThreshold::new(1e5).unwrap();
    let closed = ior_cra(&ref_link(), &cra, &fading, e, h_th).unwrap();
    let est =
        estimate_ior(&Strategy::Cra(cra), &ref_link(), &fading, e, h_th, &SimConfig::new(N, 42)).unwrap();
    within_3se(closed, est.p_hat, est.std_error, "ior cra");
}

#[test]
fn ior_cpa_nakagami_reference() {
    let fading = FadingModel::nakagami(2.0, 0.1).unwrap();
    let cpa = CpaConfig::new(10.0, 0.5).unwrap();
    let e = EnergyAmount::new(0.08).unwrap();
    let h_th = EntropyThreshold::new(2e5).unwrap();
    let closed = ior_cpa(&ref_link(), &cpa, &fading, e, h_th).unwrap();
    let est =
        estimate_ior(&Strategy::Cpa(cpa), &ref_link(), &fading, e, h_th, &SimConfig::new(N, 42)).unwrap();
    within_3se(closed, est.p_hat, est.std_error, "ior cpa");
}

#[test]
fn tiny_entropy_threshold_never_in_outage() {
    let fading = FadingModel::nakagami(2.0, 0.1).unwrap();
    let est = estimate_ior(
        &Strategy::Cra(CraConfig::new(0.2).unwrap()),
        &ref_link(),
        &fading,
        EnergyAmount::new(0.08).unwrap(),
        EntropyThreshold::new(1e-12).unwrap(),
        &SimConfig::new(100_000, 9),
    )
    .unwrap();
    assert_eq!(est.p_hat, 0.0);
}

#[test]
fn simulated_duality_for_cra() {
    let fading = FadingModel::rayleigh(0.1).unwrap();
    let strategy = Strategy::Cra(CraConfig::new(0.2).unwrap());
    let sim = SimConfig::new(200_000, 17);
    let (x, y) = (0.05, 4e5);
    let eor = estimate_eor(
        &strategy,
        &ref_link(),
        &fading,
        DataAmount::new(y).unwrap(),
        EnergyThreshold::new(x).unwrap(),
        &sim,
    )
    .unwrap();
    let ior = estimate_ior(
        &strategy,
        &ref_link(),
        &fading,
        EnergyAmount::new(x).unwrap(),
        EntropyThreshold::new(y).unwrap(),
        &sim,
    )
    .unwrap();
    assert_eq!(eor.p_hat, ior.p_hat);
}

#[test]
fn multiblock_single_block_limit_is_exact() {
    let fading = FadingModel::nakagami(2.0, 0.1).unwrap();
    let cra = CraConfig::new(0.2).unwrap();
    let e = EnergyAmount::new(0.08).unwrap();
    let h_th = EntropyThreshold::new(1e6).unwrap();
    let sim = SimConfig::new(100_000, 23);
    // E/p_t = 0.4 s <= T_c
    for t_c in [0.4, 1.0] {
        let multi = estimate_ior_multiblock(&ref_link(), &cra, &fading, e, t_c, h_th, &sim).unwrap();
        let single = estimate_ior(&Strategy::Cra(cra), &ref_link(), &fading, e, h_th, &sim).unwrap();
        assert_eq!(multi, single);
    }
}

/// Sequential time-stepping re-simulation of block fading, written without
/// the library's MID code: walk through the session block by block, dwell
/// for min(T_c, remaining time) at each fresh exponential gain.
fn brute_force_multiblock(n: u64, seed: u64, avg: f64, p_t: f64, e: f64, t_c: f64, h_th: f64) -> u64 {
    let (b, n0) = (2e5, 1e-9);
    let mut events = 0;
    let mut trial = 0;
    while trial < n {
        // Same seed-stream layout as the library: one ChaCha8 stream per
        // BLOCK_LEN consecutive trials.
        let block = trial / BLOCK_LEN;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block);
        let end = ((block + 1) * BLOCK_LEN).min(n);
        while trial < end {
            let mut time_left = e / p_t;
            let mut bits = 0.0;
            while time_left > 0.0 {
                let u: f64 = rng.random();
                let g = -avg * (1.0 - u).ln();
                let dwell = time_left.min(t_c);
                bits += dwell * b * (1.0 + p_t * g / (n0 * b)).log2();
                time_left -= dwell;
                if time_left < 1e-12 * t_c {
                    break;
                }
            }
            if bits < h_th {
                events += 1;
            }
            trial += 1;
        }
    }
    events
}

#[test]
fn multiblock_matches_brute_force() {
    let avg = 0.1;
    let fading = FadingModel::rayleigh(avg).unwrap();
    let p_t = 0.2;
    let t_c = 0.04;
    let e = 10.0 * t_c * p_t;
    let n = 100_000;
    let cra = CraConfig::new(p_t).unwrap();
    // Median-ish total so the outage probability is well inside (0, 1).
    let h_th = 4.6e5;
    let est = estimate_ior_multiblock(
        &ref_link(),
        &cra,
        &fading,
        EnergyAmount::new(e).unwrap(),
        t_c,
        EntropyThreshold::new(h_th).unwrap(),
        &SimConfig::new(n, 31),
    )
    .unwrap();
    assert!(est.p_hat > 0.05 && est.p_hat < 0.95, "uninformative threshold: {}", est.p_hat);
    let oracle = brute_force_multiblock(n, 31, avg, p_t, e, t_c, h_th) as f64 / n as f64;
    within_3se(oracle, est.p_hat, est.std_error, "multiblock");
}

#[test]
fn std_error_scales_inverse_sqrt_n() {
    let fading = FadingModel::rayleigh(0.1).unwrap();
    let strategy = Strategy::Cra(CraConfig::new(0.2).unwrap());
    let h = DataAmount::new(4e5).unwrap();
    let e_th = EnergyThreshold::new(0.08).unwrap();
    let small = estimate_eor(&strategy, &ref_link(), &fading, h, e_th, &SimConfig::new(10_000, 4)).unwrap();
    let large = estimate_eor(&strategy, &ref_link(), &fading, h, e_th, &SimConfig::new(N, 4)).unwrap();
    assert!(large.p_hat > 0.1 && large.p_hat < 0.9, "p_hat {}", large.p_hat);
    let ratio = small.std_error / large.std_error;
    assert!((ratio - 10.0).abs() <= 2.0, "ratio {ratio}");
}

#[test]
fn truncated_sampling_matches_conditional_cdf() {
    let link = ref_link();
    let cpa = CpaConfig::new(10.0, 0.5).unwrap();
    for fading in [FadingModel::rayleigh(0.1).unwrap(), FadingModel::nakagami(2.0, 0.1).unwrap()] {
        let cutoff = cpa.cutoff_gain(&link);
        let tail = TruncatedFading::new(fading, cutoff).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let mut samples: Vec<f64> = (0..N).map(|_| tail.sample(rng.random()).unwrap()).collect();
        samples.sort_by(f64::total_cmp);
        assert!(samples[0] >= cutoff, "sample below cutoff");

        // Independent conditional CDF from the unconditional one.
        let f_cut = fading.cdf(cutoff).unwrap();
        let conditional = |g: f64| (fading.cdf(g).unwrap() - f_cut) / (1.0 - f_cut);
        let n = samples.len() as f64;
        let mut ks: f64 = 0.0;
        for (i, &g) in samples.iter().enumerate() {
            let f = conditional(g);
            ks = ks.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
        }
        assert!(ks <= 0.005, "KS distance {ks}");
    }
}
