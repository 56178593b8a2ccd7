use std::collections::BTreeMap;

use codetherm::dimension::{dim_formula, finite_size_dimension};
use codetherm::equilibrium::{solve_equilibrium, TwoCodeSystem};
use codetherm::gibbs::{
    boltzmann_planck_entropy, gibbs_state, lambda_derivative, lambda_of_beta, solve_beta_for_lambda,
};
use codetherm::microcanonical::{
    discrete_temperature, entropy_mode, omega_brute, omega_exact, omega_log, sample_messages, EntropyTable,
};
use codetherm::pmf::{
    average_codeword_length, dyadic_pmf, exact_average_codeword_length, exact_dyadic_entropy,
    is_absolutely_optimal, shannon_entropy,
};
use codetherm::prefix::empirical_prefix_count;
use codetherm::{log2_big, parse_code, random_complete_code, Code, LengthSpectrum, Symbol};
use proptest::prelude::*;

fn complete_code(max_leaves: usize) -> impl Strategy<Value = Code> {
    (2..=max_leaves, any::<u64>()).prop_map(|(leaves, seed)| random_complete_code(leaves, seed).unwrap())
}

/// Degeneracies `Π (a_i + b_i z)` shifted to start at `l_min`: real-rooted, so
/// every power is strictly log-concave.
fn real_rooted_spectrum() -> impl Strategy<Value = LengthSpectrum> {
    (1u32..=4, prop::collection::vec((1u64..=5, 1u64..=5), 1..=3)).prop_map(|(l_min, factors)| {
        let mut poly = vec![1u64];
        for (a, b) in factors {
            let mut next = vec![0; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c * a;
                next[i + 1] += c * b;
            }
            poly = next;
        }
        let degeneracy: BTreeMap<u32, u64> =
            poly.into_iter().enumerate().map(|(i, d)| (l_min + i as u32, d)).collect();
        LengthSpectrum::from_degeneracy(degeneracy).unwrap()
    })
}

fn code_122() -> Code {
    parse_code(
        r#"{"code":[{"symbol":"a","codeword":"0"},{"symbol":"b","codeword":"10"},{"symbol":"c","codeword":"11"}]}"#,
    )
    .unwrap()
    .0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn generated_codes_are_complete_and_prefix_free(code in complete_code(64)) {
        prop_assert!(code.kraft_sum().is_one());
        let mut words: Vec<&str> = code.iter().map(|(_, c)| c.as_str()).collect();
        words.sort_unstable();
        for pair in words.windows(2) {
            prop_assert!(!pair[1].starts_with(pair[0]));
        }
        let s = code.spectrum();
        prop_assert_eq!(s.d_max() % 2, 0);
        if !s.is_degenerate() {
            let n = s.n() as f64;
            prop_assert!(n * n.log2() < s.total_length() as f64);
        }
    }
}

proptest! {
    #[test]
    fn decode_inverts_encode(code in complete_code(20), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..60)) {
        let symbols: Vec<&Symbol> = code.symbols().collect();
        let message: Vec<&Symbol> = picks.iter().map(|i| *i.get(&symbols)).collect();
        let bits = code.encode(message.iter().copied()).unwrap();
        let decoded = code.decode(&bits).unwrap();
        prop_assert_eq!(decoded.iter().collect::<Vec<_>>(), message);
    }

    #[test]
    fn dyadic_pmf_is_optimal_and_exact(code in complete_code(32)) {
        let pmf = dyadic_pmf(&code).unwrap();
        prop_assert!(is_absolutely_optimal(&code, &pmf).unwrap());
        let h = exact_dyadic_entropy(&pmf).unwrap();
        let l = exact_average_codeword_length(&code, &pmf).unwrap().unwrap();
        prop_assert_eq!(h, l);
        prop_assert!((shannon_entropy(&pmf) - average_codeword_length(&code, &pmf).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn probability_mass_is_exactly_one(code in complete_code(10), n in 1usize..=30) {
        prop_assert!(omega_exact(&code.spectrum(), n).unwrap().probability_mass().is_one());
    }

    #[test]
    fn convolution_matches_enumeration(code in complete_code(5), n in 1usize..=6) {
        prop_assert_eq!(omega_exact(&code.spectrum(), n).unwrap(), omega_brute(&code, n).unwrap());
    }

    #[test]
    fn log_domain_tracks_exact(code in complete_code(12), n in 1usize..=200) {
        let s = code.spectrum();
        let exact = omega_exact(&s, n).unwrap();
        let log = omega_log(&s, n).unwrap();
        for (l, w) in exact.entries() {
            let want = log2_big(w);
            let got = log.log2_omega(l).unwrap();
            // Relative error in Ω is ln 2 times the absolute error in log2 Ω.
            prop_assert!((got - want).abs() * std::f64::consts::LN_2 <= 1e-9, "L = {}: {} vs {}", l, got, want);
        }
        prop_assert_eq!(log.support(), exact.entries().map(|(l, _)| l).collect::<Vec<_>>());
    }

    #[test]
    fn log_concave_spectra_give_unimodal_counts(s in real_rooted_spectrum(), n in 1usize..=50) {
        let table = omega_exact(&s, n).unwrap();
        let counts: Vec<_> = table.entries().map(|(_, w)| w.clone()).collect();
        let peak = counts.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).unwrap().0;
        prop_assert!(counts[..=peak].windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(counts[peak..].windows(2).all(|w| w[0] >= w[1]));

        // Ties at the maximum form a plateau [first, last]; the sign law holds outside it.
        let first = entropy_mode(&table);
        let top = table.omega(first);
        let last = table.support().into_iter().rev().find(|&l| table.omega(l) == top).unwrap();
        for l in table.support() {
            let Ok(t) = discrete_temperature(&table, l) else { continue };
            if l < first {
                prop_assert!(t.value > 0.0, "T({}) = {} below L0 = {}", l, t.value, first);
            } else if l > last {
                prop_assert!(t.value < 0.0, "T({}) = {} above L0 = {}", l, t.value, last);
            }
        }
    }

    #[test]
    fn lambda_strictly_decreasing(code in complete_code(16), b1 in -10.0f64..10.0, gap in 0.01f64..5.0) {
        let s = code.spectrum();
        prop_assume!(!s.is_degenerate());
        prop_assert!(lambda_of_beta(&s, b1) > lambda_of_beta(&s, b1 + gap));
    }

    #[test]
    fn lambda_derivative_matches_differences(code in complete_code(16), beta in -10.0f64..10.0) {
        let s = code.spectrum();
        prop_assume!(!s.is_degenerate());
        let h = 1e-5;
        let fd = (lambda_of_beta(&s, beta + h) - lambda_of_beta(&s, beta - h)) / (2.0 * h);
        let analytic = lambda_derivative(&s, beta);
        // The difference quotient carries its own rounding error, about eps·λ/h.
        let rounding = 8.0 * f64::EPSILON * s.l_max() as f64 / h;
        prop_assert!((fd - analytic).abs() <= 1e-6 * analytic.abs() + rounding, "{} vs {}", fd, analytic);
    }

    #[test]
    fn solver_round_trip(code in complete_code(16), beta in -20.0f64..20.0) {
        let s = code.spectrum();
        prop_assume!(!s.is_degenerate());
        let lambda = lambda_of_beta(&s, beta);
        prop_assume!(lambda > s.l_min() as f64 && lambda < s.l_max() as f64);
        let back = solve_beta_for_lambda(&s, lambda).unwrap().beta();
        prop_assert!((lambda_of_beta(&s, back) - lambda).abs() <= 1e-10);
        prop_assert!((back - beta).abs() * lambda_derivative(&s, beta).abs() <= 1e-10);
        if beta.abs() <= 3.0 && s.l_max() - s.l_min() <= 4 {
            prop_assert!((back - beta).abs() <= 1e-10, "{} vs {}", back, beta);
        }
    }

    #[test]
    fn unit_temperature_gibbs_is_dyadic(code in complete_code(32)) {
        let g = gibbs_state(&code.spectrum(), 1.0);
        prop_assert_eq!(g.log2_z, 0.0);
        let dyadic = dyadic_pmf(&code).unwrap();
        for (symbol, p) in g.pmf(&code).unwrap().iter() {
            prop_assert_eq!(p, dyadic.get(symbol).unwrap());
        }
    }

    #[test]
    fn dimension_at_most_one(code in complete_code(24), beta in -8.0f64..8.0) {
        let s = code.spectrum();
        prop_assert_eq!(dim_formula(&s, 1.0), 1.0);
        let d = dim_formula(&s, beta);
        prop_assert!(d <= 1.0 + 1e-12);
        if !s.is_degenerate() && (beta - 1.0).abs() > 0.1 {
            prop_assert!(d < 1.0);
        }
    }

    #[test]
    fn equilibrium_residual_and_monotonicity(
        a in complete_code(6),
        b in complete_code(6),
        n_i in 1usize..=12,
        n_ii in 1usize..=12,
        u in 0.05f64..0.95,
    ) {
        let system = TwoCodeSystem::new(a.spectrum(), n_i, b.spectrum(), n_ii).unwrap();
        prop_assume!(!(a.spectrum().is_degenerate() && b.spectrum().is_degenerate()));
        let (lo, hi) = system.feasible_range();
        let total = lo as f64 + u * (hi - lo) as f64;
        let at = solve_equilibrium(&system, total).unwrap();
        prop_assert!(at.residual.abs() <= 1e-9);
        prop_assert!((at.l_i_star + at.l_ii_star - total).abs() <= 1e-9);
        let above = solve_equilibrium(&system, total + 0.01 * (hi - lo) as f64).unwrap();
        prop_assert!(above.beta_star.beta() < at.beta_star.beta());

        let unit = n_i as f64 * lambda_of_beta(&a.spectrum(), 1.0) + n_ii as f64 * lambda_of_beta(&b.spectrum(), 1.0);
        prop_assert!((solve_equilibrium(&system, unit).unwrap().beta_star.beta() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn prefix_counts_grow_by_at_most_doubling(code in complete_code(6), n in 1usize..=12, pick in any::<prop::sample::Index>()) {
        let support: Vec<u64> = omega_exact(&code.spectrum(), n).unwrap().entries().map(|(l, _)| l).collect();
        let length = *pick.get(&support);
        let t = empirical_prefix_count(&code, n, length, length).unwrap();
        prop_assert_eq!(u64::try_from(&t.counts[0]).unwrap(), 1);
        for w in t.counts.windows(2) {
            prop_assert!(w[0] <= w[1] && w[1] <= &w[0] * 2u32);
        }
    }

    #[test]
    fn histogram_accounts_for_draws(code in complete_code(8), n in 1usize..=20, draws in 1u64..500, seed in any::<u64>()) {
        let pmf = dyadic_pmf(&code).unwrap();
        let report = sample_messages(&code, &pmf, n, draws, seed, None).unwrap();
        prop_assert_eq!(report.histogram.values().sum::<u64>(), draws);
    }
}

#[test]
fn boltzmann_planck_ratio_improves_with_n() {
    let s = code_122().spectrum();
    let mut previous = 0.0;
    for n in [10usize, 100, 1000] {
        let length = 3 * n as u64 / 2;
        let exact = omega_log(&s, n).unwrap().log2_omega(length).unwrap();
        let ratio = exact / boltzmann_planck_entropy(&s, length as f64, n).unwrap();
        assert!(ratio <= 1.0 && ratio > previous, "N = {n}: ratio {ratio}");
        previous = ratio;
    }
    // At L/N = 5/3 the Gibbs pmf is uniform and BP = N·log2 3.
    let bp = boltzmann_planck_entropy(&s, 500.0, 300).unwrap();
    assert!((bp - 300.0 * 3f64.log2()).abs() < 1e-9);
}

#[test]
fn finite_size_dimension_converges() {
    let s = code_122().spectrum();
    for beta in [0.0, 0.5, 1.0, -1.0] {
        let want = dim_formula(&s, beta);
        let gaps: Vec<f64> = [100usize, 1000, 5000]
            .iter()
            .map(|&n| (finite_size_dimension(&s, beta, n).unwrap().1 - want).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "β = {beta}: {gaps:?}");
    }
}
