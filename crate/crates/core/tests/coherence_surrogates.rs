use std::f64::consts::PI;

use seasonwave::coherence::{mean_phase_in_coi, wavelet_coherence, DEFAULT_MIN_R2};
use seasonwave::cwt::{make_scale_grid, MotherWavelet};
use seasonwave::synth::SynthSpec;

#[test]
fn short_noisy_anti_phase_pairs() {
    let n = 61;
    let grid = make_scale_grid(n, 1.0, 0.125, 2.0).unwrap();
    let w = MotherWavelet::cgau2().unwrap();
    let mut hits = 0;
    for seed in 0..20u64 {
        let x = SynthSpec::new(n, 1.0).component(20.0, 1.0, 0.0).noise(0.3, 2 * seed).generate().unwrap();
        let y = SynthSpec::new(n, 1.0).component(20.0, 1.0, PI).noise(0.3, 2 * seed + 1).generate().unwrap();
        let cf = wavelet_coherence(&x, &y, &w, &grid).unwrap();
        let m = mean_phase_in_coi(&cf, DEFAULT_MIN_R2).unwrap();
        if (m.angle.abs() - PI).abs() < 0.3 && m.concentration > 0.7 {
            hits += 1;
        }
    }
    assert!(hits >= 18, "{hits}/20");
}
