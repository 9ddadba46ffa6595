//! The `f32` instantiations agree with `f64` to single precision and use
//! default tolerances they can actually reach.

use lsbm::harness::trial_seed;
use lsbm::model::{balanced_types, sample_gw_tree, sample_lsbm, sample_lsbm_given_types};
use lsbm::sdp::{round_sdp, solve_sdp, SdpOptions};
use lsbm::spectral::{spectral_reconstruct, EigenOptions, ParamSource, SpectralOptions};
use lsbm::tree::root_posterior;
use lsbm::weights::{alpha_beta, build_weighted_adjacency, optimal_weight, overlap, tau};
use lsbm::{ModelParams, ModelParamsF32, WeightFunction, WeightFunctionF32};

fn close(x: f32, y: f64, rel: f64) -> bool {
    (x as f64 - y).abs() <= rel * y.abs().max(1.0)
}

#[test]
fn tau_and_weights_agree() {
    let p = ModelParams::binary(5.0, 2.0, 0.3).unwrap();
    let q: ModelParamsF32 = p.cast();
    assert!(close(tau(&q), tau(&p), 1e-5));
    let (w, wq) = (optimal_weight(&p), optimal_weight(&q));
    let (ab, abq) = (alpha_beta(&p, &w).unwrap(), alpha_beta(&q, &wq).unwrap());
    assert!(close(abq.0, ab.0, 1e-5) && close(abq.1, ab.1, 1e-5));
}

#[test]
fn spectral_reconstruction_converges_in_single_precision() {
    let p = ModelParams::binary(8.0, 2.0, 0.35).unwrap();
    let q: ModelParamsF32 = p.cast();
    let (g, sigma) = sample_lsbm(&p, 1500, trial_seed(21, 0)).unwrap();
    let (w, wq) = (optimal_weight(&p), optimal_weight(&q));
    let out = spectral_reconstruct(&g, &w, ParamSource::Estimate, ParamSource::Estimate, &SpectralOptions::default())
        .unwrap();
    let outq = spectral_reconstruct(&g, &wq, ParamSource::Estimate, ParamSource::Estimate, &SpectralOptions::default())
        .unwrap();
    assert!(close(outq.eigen.eigenvalue, out.eigen.eigenvalue, 1e-3));
    let (o, oq) = (overlap(&sigma, &out.assignment).unwrap(), overlap(&sigma, &outq.assignment).unwrap());
    assert!(o > 0.15 && (o - oq).abs() < 0.02, "{o} vs {oq}");
}

#[test]
fn root_posterior_agrees() {
    let p = ModelParams::binary(3.0, 3.0, 0.3).unwrap();
    let q: ModelParamsF32 = p.cast();
    for i in 0..20 {
        let t = sample_gw_tree(&p, 4, trial_seed(22, i)).unwrap();
        let (x, y) = (root_posterior(&t, &p).unwrap(), root_posterior(&t, &q).unwrap());
        assert!(close(y, x, 1e-4), "{x} vs {y}");
    }
}

#[test]
fn sdp_recovers_planted_bisection_in_single_precision() {
    let p = ModelParams::unlabeled(12.0, 0.5).unwrap();
    for seed in 0..8 {
        let truth = balanced_types(16, seed);
        let g = sample_lsbm_given_types(&p, &truth, seed).unwrap();
        let w = build_weighted_adjacency(&g, &WeightFunction::constant(1.0, 1)).unwrap();
        let wq = build_weighted_adjacency(&g, &WeightFunctionF32::constant(1.0, 1)).unwrap();
        let sol = solve_sdp(&w, &SdpOptions::default()).unwrap();
        let solq = solve_sdp(&wq, &SdpOptions::default()).unwrap();
        assert!(close(solq.objective, sol.objective, 1e-3), "{} vs {}", solq.objective, sol.objective);
        let q = overlap(&truth, &round_sdp(&sol, &EigenOptions::default()).unwrap()).unwrap();
        let qq = overlap(&truth, &round_sdp(&solq, &EigenOptions::default()).unwrap()).unwrap();
        assert!(q == 0.5 && qq == 0.5, "seed {seed}: {q} vs {qq}");
    }
}
