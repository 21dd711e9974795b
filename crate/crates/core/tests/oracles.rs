//! Library results against independent reference computations.

#[path = "support/oracle.rs"]
mod oracle;

use approx::assert_relative_eq;
use schatten_core::bound::{default_rank_limit, tail_sum};
use schatten_core::special::riemann_zeta;
use schatten_core::state_gen::{
    gibbs_state, ginibre, perturb_renormalized, power_law_state, random_density_matrix,
    random_trace_one_operator, seeded_rng,
};
use schatten_core::{
    closed_form_tail, corollary2_bound, hermitian_eig, modulus, n_epsilon, optimal_certificate,
    schatten_norm, singular_spectrum, trace, Complex64, ComplexMatrix, DecayModel, PExponent,
};

fn random_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    let g = ginibre(dim, &mut seeded_rng(seed));
    (&g + &g.adjoint()).scale_real(0.5)
}

fn random_complex(dim: usize, seed: u64) -> ComplexMatrix {
    ginibre(dim, &mut seeded_rng(seed))
}

fn p(value: f64) -> PExponent {
    PExponent::new(value).unwrap()
}

#[test]
fn oracle_reproduces_known_spectra() {
    let m = ComplexMatrix::from_real_rows(&[
        vec![2.0, 1.0, 0.0],
        vec![1.0, 2.0, 1.0],
        vec![0.0, 1.0, 2.0],
    ])
    .unwrap();
    let s = std::f64::consts::SQRT_2;
    let eig = oracle::hermitian_eigenvalues(&m);
    for (got, want) in eig.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
        assert!((got - want).abs() < 1e-13, "{got} vs {want}");
    }
    let pauli_y = ComplexMatrix::from_rows(&[
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
        vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
    ])
    .unwrap();
    assert_eq!(oracle::hermitian_eigenvalues(&pauli_y).len(), 2);
    assert!((oracle::hermitian_eigenvalues(&pauli_y)[0] + 1.0).abs() < 1e-14);
}

#[test]
fn hermitian_eig_seed_42_matches_root_finder() {
    let m = random_hermitian(6, 42);
    let mut got = hermitian_eig(&m).unwrap().real_eigenvalues();
    got.sort_by(f64::total_cmp);
    let want = oracle::hermitian_eigenvalues(&m);
    for (a, b) in got.iter().zip(&want) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn hermitian_eig_agrees_with_bisection_across_dims() {
    for seed in 0..30 {
        let dim = 1 + (seed as usize % 16);
        let m = random_hermitian(dim, 1000 + seed);
        let spectrum = hermitian_eig(&m).unwrap();
        let mut got = spectrum.real_eigenvalues();
        got.sort_by(f64::total_cmp);
        for (a, b) in got.iter().zip(oracle::hermitian_eigenvalues(&m)) {
            assert!((a - b).abs() < 1e-9, "dim {dim}: {a} vs {b}");
        }
        assert!(spectrum.to_matrix().max_abs_diff(&m) < 1e-8);
    }
}

#[test]
fn singular_values_seed_7_match_gram_eigenvalues() {
    let m = random_complex(5, 7);
    let got = singular_spectrum(&m).unwrap();
    let want = oracle::singular_values(&m);
    for (s, w) in got.values().iter().zip(&want) {
        assert!((s * s - w * w).abs() < 1e-10);
    }
    assert!(got.to_matrix().max_abs_diff(&m) < 1e-10);
}

#[test]
fn modulus_seed_3_has_singular_values_as_eigenvalues() {
    let m = random_complex(4, 3);
    let mut eig = oracle::hermitian_eigenvalues(&modulus(&m).unwrap());
    eig.reverse();
    for (e, s) in eig.iter().zip(singular_spectrum(&m).unwrap().values()) {
        assert!((e - s).abs() < 1e-10);
    }
}

#[test]
fn schatten_3_norm_seed_11() {
    let m = random_complex(5, 11);
    let got = schatten_norm(&m, p(3.0)).unwrap();
    assert_relative_eq!(got, oracle::schatten_norm(&m, 3.0), max_relative = 1e-9);
}

#[test]
fn schatten_norms_match_oracle_on_a_grid() {
    for seed in 0..10 {
        let m = random_complex(2 + seed as usize, 500 + seed);
        for q in [1.0, 1.5, 2.0, 3.0, 7.5, f64::INFINITY] {
            let got = schatten_norm(&m, p(q)).unwrap();
            assert_relative_eq!(got, oracle::schatten_norm(&m, q), max_relative = 1e-8);
        }
    }
}

#[test]
fn trace_of_commutator_vanishes() {
    let a = random_complex(6, 5);
    let b = random_complex(6, 50);
    let t = trace(&a.commutator(&b));
    let direct: Complex64 = (0..6)
        .flat_map(|i| (0..6).map(move |k| (i, k)))
        .map(|(i, k)| a.get(i, k) * b.get(k, i) - b.get(i, k) * a.get(k, i))
        .sum();
    assert!(t.norm() < 1e-10);
    assert!(direct.norm() < 1e-10);
}

#[test]
fn density_matrix_seed_42_is_a_state() {
    let rho = random_density_matrix(8, 42).unwrap();
    let eig = oracle::hermitian_eigenvalues(&rho.matrix);
    assert!(eig.iter().all(|&x| x >= -1e-12));
    assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn gibbs_tail_is_a_geometric_series() {
    for beta in [0.1, 0.5, 1.0, std::f64::consts::LN_2, 3.0] {
        let model = DecayModel::gibbs(beta).unwrap();
        for n in [1u64, 2, 5, 10, 40] {
            let closed = closed_form_tail(&model, n).unwrap();
            let c = 1.0 - (-beta).exp();
            // summed smallest first
            let direct: f64 = (n..n + 20_000)
                .rev()
                .map(|k| c * (-beta * k as f64).exp())
                .sum();
            assert_relative_eq!(closed, (-beta * n as f64).exp(), max_relative = 1e-12);
            assert_relative_eq!(closed, direct, max_relative = 1e-12);
        }
    }
}

#[test]
fn truncated_gibbs_tail_against_closed_form() {
    let beta = std::f64::consts::LN_2;
    let state = gibbs_state(beta, 20, None).unwrap();
    let tail = tail_sum(&state.spectrum.moduli(), 2);
    // renormalized truncated tail: (2^-2 - 2^-20) / (1 - 2^-20)
    let want = (0.25 - 2f64.powi(-20)) / (1.0 - 2f64.powi(-20));
    assert_relative_eq!(tail, want, max_relative = 1e-12);
    let closed = closed_form_tail(&DecayModel::gibbs(beta).unwrap(), 2).unwrap();
    assert_relative_eq!(
        tail * (1.0 - 2f64.powi(-20)) + 2f64.powi(-20),
        closed,
        max_relative = 1e-12
    );
}

#[test]
fn exponential_envelope_dominates_truncated_state() {
    let state = gibbs_state(1.0, 20, None).unwrap();
    let moduli = state.spectrum.moduli();
    let envelope = DecayModel::gibbs(1.0).unwrap();
    let inflated = state.model.clone().unwrap();
    for n in 1..=20u64 {
        let direct: f64 = moduli[n as usize..].iter().rev().sum();
        assert!(closed_form_tail(&inflated, n).unwrap() - direct >= -1e-12);
        // the untruncated envelope dominates the unnormalized levels
        let raw: f64 = (n..20).rev().map(|k| envelope.envelope(k as usize)).sum();
        assert!(closed_form_tail(&envelope, n).unwrap() - raw >= -1e-12);
    }
}

#[test]
fn power_law_closed_form_dominates_partial_sums() {
    for alpha in [1.1, 1.3, 2.0, 3.5] {
        let model = DecayModel::power_law(1.0, alpha).unwrap();
        let dim = 2048;
        let levels: Vec<f64> = (0..dim).map(|n| model.envelope(n)).collect();
        for n in 1..dim {
            let direct: f64 = levels[n..].iter().rev().sum();
            let margin = closed_form_tail(&model, n as u64).unwrap() - direct;
            assert!(margin >= -1e-12, "alpha {alpha}, N {n}: margin {margin}");
        }
    }
}

#[test]
fn power_law_normalizer_bracket_at_1024() {
    let alpha = 1.3;
    let state = power_law_state(alpha, 1024, None).unwrap();
    let Some(DecayModel::PowerLaw { c, .. }) = state.model else {
        panic!("power-law state without a power-law model");
    };
    let partial: f64 = (1..=1024).rev().map(|k| (k as f64).powf(-alpha)).sum();
    assert_relative_eq!(c, 1.0 / partial, max_relative = 1e-13);
    // integral comparison: int_1^{1025} x^-a < S < 1 + int_1^{1024} x^-a
    let integral = |x: f64| (1.0 - x.powf(1.0 - alpha)) / (alpha - 1.0);
    assert!(partial > integral(1025.0));
    assert!(partial < 1.0 + integral(1024.0));
    assert!(c * riemann_zeta(alpha) > 1.0);
    assert!(state.truncation_remainder > 0.0 && state.truncation_remainder < 1.0);
}

#[test]
fn optimal_certificate_matches_brute_force_scan() {
    let model = DecayModel::gibbs(1.0).unwrap();
    let (e, q) = (1e-3, p(2.0));
    let limit = default_rank_limit(&model, e).unwrap();
    let cert = optimal_certificate(e, q, &model, limit).unwrap();
    let mut best = (0u64, f64::INFINITY);
    for n in 0..=limit {
        // Gibbs envelope: full mass 1 at N = 0, e^{-N} beyond
        let tail = if n == 0 { 1.0 } else { (-(n as f64)).exp() };
        let value = 3.0 * (n as f64).sqrt() * e + 2.0 * tail;
        if value < best.1 {
            best = (n, value);
        }
    }
    assert_eq!(cert.n, best.0);
    assert_relative_eq!(cert.bound, best.1, max_relative = 1e-12);
}

#[test]
fn optimal_certificate_for_empirical_spectra_matches_scan() {
    for seed in 0..20 {
        let rho = random_density_matrix(2 + seed as usize % 12, seed).unwrap();
        let moduli = hermitian_eig(&rho.matrix).unwrap().nonzero_moduli();
        let model = DecayModel::empirical(moduli.clone()).unwrap();
        for (e, q) in [(1e-2, 1.5), (1e-4, 2.0), (0.3, 5.0)] {
            let cert = optimal_certificate(e, p(q), &model, moduli.len() as u64).unwrap();
            let value = |n: usize| {
                let tail: f64 = moduli[n..].iter().sum();
                3.0 * (n as f64).powf(1.0 - 1.0 / q) * e + 2.0 * tail
            };
            let best = (0..=moduli.len()).map(value).fold(f64::INFINITY, f64::min);
            assert!((cert.bound - best).abs() <= 1e-12 * best.max(1.0));
        }
    }
}

#[test]
fn power_law_n_epsilon_matches_scan() {
    for (c, alpha) in [(1.0, 2.0), (0.5, 1.5), (1.0 / 2.5, 3.0)] {
        let model = DecayModel::power_law(c, alpha).unwrap();
        for eps in [0.3, 1e-2, 1e-3] {
            let closed = |n: u64| c / (alpha - 1.0) * (n as f64).powf(1.0 - alpha);
            let total = model.tail_bound(0);
            let want = if total < eps {
                0
            } else {
                (1u64..).find(|&n| closed(n) < eps).unwrap()
            };
            assert_eq!(
                n_epsilon(&model, eps).unwrap(),
                want as u128,
                "C {c}, alpha {alpha}, eps {eps}"
            );
        }
    }
}

#[test]
fn gibbs_n_epsilon_respects_the_logarithmic_bound() {
    for beta in [0.25f64, 1.0, 2.0] {
        let c = 1.0 - (-beta).exp();
        let model = DecayModel::exponential(c, beta).unwrap();
        for k in 1..=10 {
            let eps = 10f64.powi(-k);
            let n = n_epsilon(&model, eps).unwrap() as f64;
            let bound = (c / (eps * (1.0 - (-beta).exp()))).ln() / beta + 1.0;
            assert!(n <= bound + 1e-12, "beta {beta}, eps {eps}: {n} > {bound}");
            assert_eq!(n, (-eps.ln() / beta).floor() + 1.0);
        }
    }
}

#[test]
fn corollary2_tracks_n_epsilon() {
    let model = DecayModel::gibbs(1.0).unwrap();
    for k in 1..=8 {
        let eps = 10f64.powi(-k);
        let n = n_epsilon(&model, eps).unwrap() as f64;
        let want = (3.0 * n.sqrt() + 2.0) * eps;
        assert_relative_eq!(
            corollary2_bound(eps, p(2.0), &model).unwrap(),
            want,
            max_relative = 1e-15
        );
    }
}

#[test]
fn perturbation_error_shrinks_with_magnitude() {
    let a0 = gibbs_state(1.0, 16, Some(21)).unwrap();
    let errors: Vec<f64> = (1..=6)
        .map(|k| {
            let a = perturb_renormalized(&a0.matrix, 10f64.powi(-k), 4, true).unwrap();
            oracle::schatten_norm(&(&a0.matrix - &a), 2.0)
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn trace_one_operators_have_unit_trace_norm() {
    for seed in 0..10 {
        for hermitian in [true, false] {
            let a = random_trace_one_operator(1 + seed as usize, seed, hermitian).unwrap();
            assert!((oracle::schatten_norm(&a, 1.0) - 1.0).abs() < 1e-11);
        }
    }
}
