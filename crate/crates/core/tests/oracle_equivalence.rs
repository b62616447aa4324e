//! Density-matrix simulation against the closed forms.

use std::f64::consts::PI;

use noon_core::analytic::{self, ChannelPair, Method};
use noon_core::fock::{
    self, loss_channel, noon_state, observable_ad, phase_shift, propagated_noon_state, Mode,
    TwoModeDensityMatrix,
};
use noon_core::montecarlo::outcome_probabilities;

const ALPHAS: [f64; 5] = [0.1, 0.3, 0.6, 0.999999, 1.0];

fn phase_grid() -> impl Iterator<Item = f64> {
    (0..32).map(|k| 2.0 * PI * k as f64 / 32.0)
}

fn channels(phi0: f64) -> impl Iterator<Item = ChannelPair> {
    ALPHAS
        .iter()
        .flat_map(move |&a1| ALPHAS.iter().map(move |&a2| ChannelPair::new(a1, a2, phi0).unwrap()))
}

#[test]
fn noon_moments_match_closed_form() {
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for ch in channels(0.0).chain(channels(0.4)) {
            for phi in phase_grid() {
                let m = fock::oracle_noon_stats(n, &ch, phi).unwrap();
                let mean = analytic::noon_mean(n, &ch, phi);
                let var = analytic::noon_noise(n, &ch, phi).powi(2);
                worst = worst.max((m.mean - mean).abs()).max((m.variance - var).abs());
                let second = 0.5 * (ch.alpha1().powi(n as i32) + ch.alpha2().powi(n as i32));
                assert!((m.second_moment() - second).abs() < 1e-10);
            }
        }
    }
    assert!(worst < 1e-10, "max residual {worst:e}");
}

#[test]
fn separable_moments_match_closed_form() {
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for ch in channels(0.0).chain(channels(-1.3)) {
            for phi in phase_grid() {
                let m = fock::oracle_separable_stats(n, &ch, phi).unwrap();
                let mean = analytic::separable_mean(n, &ch, phi);
                let var = analytic::separable_noise(n, &ch, phi).powi(2);
                worst = worst.max((m.mean - mean).abs()).max((m.variance - var).abs());
                // per-photon moment identity
                let per_photon = m.variance / n as f64 + (m.mean / n as f64).powi(2);
                assert!((per_photon - 0.5 * (ch.alpha1() + ch.alpha2())).abs() < 1e-10);
            }
        }
    }
    assert!(worst < 1e-10, "max residual {worst:e}");
}

#[test]
fn responsivity_matches_finite_difference_of_oracle_mean() {
    let h = 1e-6;
    for n in 1..=6 {
        for ch in channels(0.25) {
            for phi in phase_grid() {
                let up = fock::oracle_noon_stats(n, &ch, phi + h).unwrap().mean;
                let down = fock::oracle_noon_stats(n, &ch, phi - h).unwrap().mean;
                let fd = (up - down) / (2.0 * h);
                assert!((fd - analytic::noon_responsivity(n, &ch, phi)).abs() < 1e-6);

                let up = fock::oracle_separable_stats(n, &ch, phi + h).unwrap().mean;
                let down = fock::oracle_separable_stats(n, &ch, phi - h).unwrap().mean;
                let fd = (up - down) / (2.0 * h);
                assert!((fd - analytic::separable_responsivity(n, &ch, phi)).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn outcome_probabilities_match_eigenspace_projection() {
    for method in [Method::Noon, Method::Separable] {
        for n in 1..=5 {
            for ch in channels(0.1) {
                for phi in phase_grid() {
                    let (p, m, z) = fock::oracle_outcome_probabilities(method, n, &ch, phi).unwrap();
                    let closed = outcome_probabilities(method, n, &ch, phi).unwrap();
                    assert!((p - closed.plus).abs() < 1e-10);
                    assert!((m - closed.minus).abs() < 1e-10);
                    assert!((z - closed.zero).abs() < 1e-10);
                    assert!((closed.plus + closed.minus + closed.zero - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn dropping_lost_branches_leaves_ad_statistics_unchanged() {
    // keep only the {|N0>, |0N>} block of the attenuated state
    for n in 1..=5u32 {
        let ch = ChannelPair::new(0.7, 0.2, 0.3).unwrap();
        let rho = propagated_noon_state(n, &ch, 0.9).unwrap();
        let space = rho.space();
        let keep = [
            space.index(fock::FockLabel::new(n as usize, 0)),
            space.index(fock::FockLabel::new(0, n as usize)),
        ];
        let mut block = fock::CMatrix::zeros(space.dim(), space.dim());
        for &i in &keep {
            for &j in &keep {
                block[(i, j)] = rho.entries()[(i, j)];
            }
        }
        let a = observable_ad(n, n as usize).unwrap();
        let a2 = a.square();
        let full_mean = fock::expectation(&rho, &a).unwrap();
        let full_second = fock::expectation(&rho, &a2).unwrap();
        let (mut mean, mut second) = (0.0, 0.0);
        for i in 0..space.dim() {
            for k in 0..space.dim() {
                mean += (block[(i, k)] * a.entries()[(k, i)]).re;
                second += (block[(i, k)] * a2.entries()[(k, i)]).re;
            }
        }
        assert!((mean - full_mean).abs() < 1e-15);
        assert!((second - full_second).abs() < 1e-15);
    }
}

fn assert_physical(rho: &TwoModeDensityMatrix) {
    assert!((rho.trace().re - 1.0).abs() < 1e-12);
    assert!(rho.hermitian_deviation() < 1e-12);
    assert!(rho.min_eigenvalue() >= -1e-10);
    rho.check_invariants().unwrap();
}

#[test]
fn channel_outputs_remain_physical() {
    for n in 1..=6 {
        for ch in channels(0.7) {
            let rho = noon_state(n, n as usize).unwrap();
            let rho = loss_channel(&rho, ch.alpha1(), Mode::One).unwrap();
            assert_physical(&rho);
            let rho = phase_shift(&rho, 1.234).unwrap();
            assert_physical(&rho);
            let rho = loss_channel(&rho, ch.alpha2(), Mode::Two).unwrap();
            assert_physical(&rho);
        }
    }
}

#[test]
fn loss_on_different_arms_commutes() {
    for n in 1..=6 {
        let rho = phase_shift(&noon_state(n, n as usize).unwrap(), 0.8).unwrap();
        for ch in channels(0.0) {
            let ab = loss_channel(&loss_channel(&rho, ch.alpha1(), Mode::One).unwrap(), ch.alpha2(), Mode::Two)
                .unwrap();
            let ba = loss_channel(&loss_channel(&rho, ch.alpha2(), Mode::Two).unwrap(), ch.alpha1(), Mode::One)
                .unwrap();
            assert!(ab.max_abs_diff(&ba) < 1e-12);

            let lp = phase_shift(&loss_channel(&rho, ch.alpha2(), Mode::Two).unwrap(), 0.37).unwrap();
            let pl = loss_channel(&phase_shift(&rho, 0.37).unwrap(), ch.alpha2(), Mode::Two).unwrap();
            assert!(lp.max_abs_diff(&pl) < 1e-12);
        }
    }
}

#[test]
fn successive_losses_compose_multiplicatively() {
    for n in 1..=6 {
        let rho = propagated_noon_state(n, &ChannelPair::new(0.95, 0.9, 0.0).unwrap(), 0.4).unwrap();
        for &a in &ALPHAS {
            for &b in &ALPHAS {
                for mode in [Mode::One, Mode::Two] {
                    let twice = loss_channel(&loss_channel(&rho, a, mode).unwrap(), b, mode).unwrap();
                    let once = loss_channel(&rho, a * b, mode).unwrap();
                    assert!(twice.max_abs_diff(&once) < 1e-10);
                }
            }
        }
    }
}
