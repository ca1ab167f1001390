//! Round trips between pairs, Dirichlet data, continued fractions and
//! divisors, on the seeded random corpus.

mod common;

use common::*;
use num_complex::Complex64;
use peakon_spectral::{
    cf_evaluate, cf_from_pair, dirichlet_data, discriminant, divisor_from_dirichlet,
    isospectral_sample, monodromy, solve_dirichlet, solve_periodic, spectral_data,
    stieltjes_extract, trace_report, weyl_function, DirichletSpectralInput, Period,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(seed: u64, count: usize) -> Vec<peakon_spectral::PeakonPair<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_pair(&mut rng, 6)).collect()
}

#[test]
fn dirichlet_round_trip_reproduces_the_nodes() {
    for (idx, pair) in corpus(31, 50).iter().enumerate() {
        let dd = dirichlet_data(pair).unwrap();
        let input = DirichletSpectralInput {
            sigma: dd.finite_kappas(),
            gammas: dd.gammas.clone(),
            omega_a: dd.omega_a,
            upsilon_a: dd.upsilon_a,
            period: pair.period().clone(),
            a: pair.base(),
        };
        let rec = solve_dirichlet(&input).unwrap();
        let dist = pair_distance(pair, &rec.pair);
        assert!(dist < 1e-7, "pair {idx}: distance {dist:e}\n{pair:?}");
    }
}

#[test]
fn dirichlet_inverse_accepts_arbitrary_admissible_data() {
    // any finite set of distinct nonzero eigenvalues with positive weights
    // is realized by exactly one pair
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for idx in 0..50 {
        let n = rng.random_range(0..=5usize);
        let mut sigma: Vec<f64> = Vec::new();
        while sigma.len() < n {
            let kappa: f64 = rng.random_range(-8.0..8.0);
            if kappa.abs() > 0.3 && sigma.iter().all(|s: &f64| (s - kappa).abs() > 0.4) {
                sigma.push(kappa);
            }
        }
        let gammas: Vec<f64> = sigma.iter().map(|_| rng.random_range(0.05..3.0)).collect();
        let has_base = rng.random_bool(0.5);
        let upsilon_a = if has_base && rng.random_bool(0.4) {
            rng.random_range(0.1..1.5)
        } else {
            0.0
        };
        let omega_a = if has_base {
            rng.random_range(-1.5..1.5)
        } else {
            0.0
        };
        if !has_base && n == 0 {
            continue;
        }
        let input = DirichletSpectralInput {
            sigma: sigma.clone(),
            gammas: gammas.clone(),
            omega_a,
            upsilon_a,
            period: Period::from_ell(rng.random_range(0.8..2.5)).unwrap(),
            a: rng.random_range(-1.0..1.0),
        };
        let rec = solve_dirichlet(&input).unwrap();
        // the solver already re-checks; additionally pin the residual here
        assert!(
            rec.residual < 1e-7,
            "input {idx}: residual {:e}",
            rec.residual
        );
        let dd = dirichlet_data(&rec.pair).unwrap();
        let mut expected = sigma.clone();
        expected.sort_by(|l, r| l.partial_cmp(r).unwrap());
        for (found, exp) in dd.finite_kappas().iter().zip(&expected) {
            assert!(rel_err(*found, *exp) < 1e-7);
        }
    }
}

#[test]
fn periodic_round_trip_reproduces_the_nodes() {
    for (idx, pair) in corpus(33, 50).iter().enumerate() {
        let delta = discriminant(&monodromy(pair).unwrap());
        let dd = dirichlet_data(pair).unwrap();
        let divisor = divisor_from_dirichlet(&dd);
        let rec = solve_periodic(&delta, &divisor, pair.period(), pair.base()).unwrap();
        let dist = pair_distance(pair, &rec.pair);
        assert!(dist < 1e-7, "pair {idx}: distance {dist:e}\n{pair:?}");
    }
}

#[test]
fn continued_fraction_round_trip() {
    for (idx, pair) in corpus(34, 50).iter().enumerate() {
        let cf = cf_from_pair(pair);
        let (m, _) = weyl_function(&monodromy(pair).unwrap()).unwrap();
        let extracted = stieltjes_extract(&m).unwrap();
        assert_eq!(cf.ls.len(), extracted.ls.len(), "pair {idx}");
        assert_eq!(cf.qs.len(), extracted.qs.len(), "pair {idx}");
        for (l, e) in cf.ls.iter().zip(&extracted.ls) {
            assert!(rel_err(*l, *e) < 1e-8, "pair {idx}: l {l} vs {e}");
        }
        for ((q0, q1), (e0, e1)) in cf.qs.iter().zip(&extracted.qs) {
            assert!(rel_err(*q0, *e0) < 1e-8, "pair {idx}: q0 {q0} vs {e0}");
            assert!(rel_err(*q1, *e1) < 1e-8, "pair {idx}: q1 {q1} vs {e1}");
        }
        // spacings always add up to 2 tanh(l/2)
        let expected = 2.0 * pair.period().tanh_half();
        assert!((extracted.total_l() - expected).abs() < 1e-10 * expected);
    }
}

#[test]
fn continued_fraction_round_trip_is_exact_in_rational_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..10 {
        let pair = random_exact_pair(&mut rng, 5);
        let cf = cf_from_pair(&pair);
        let (m, _) = weyl_function(&monodromy(&pair).unwrap()).unwrap();
        let extracted = stieltjes_extract(&m).unwrap();
        assert_eq!(cf, extracted, "pair {pair:?}");
    }
}

#[test]
fn continued_fraction_evaluates_to_the_weyl_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for pair in corpus(37, 20) {
        let cf = cf_from_pair(&pair);
        let (m, _) = weyl_function(&monodromy(&pair).unwrap()).unwrap();
        let mut checked = 0;
        while checked < 20 {
            let z = if checked % 2 == 0 {
                Complex64::new(rng.random_range(-6.0..6.0), rng.random_range(0.2..3.0))
            } else {
                Complex64::new(rng.random_range(-6.0..6.0), 0.0)
            };
            let expected = m.eval_complex(z);
            if !expected.is_finite() || expected.norm() > 1e6 {
                checked += 1;
                continue;
            }
            match cf_evaluate(&cf, z) {
                Ok(value) => {
                    assert!(
                        (value - expected).norm() <= 1e-9 * (1.0 + expected.norm()),
                        "z = {z}: {value} vs {expected}"
                    );
                    checked += 1;
                }
                // a real sample can legitimately sit on a pole of an
                // intermediate convergent
                Err(_) => checked += 1,
            }
        }
    }
}

#[test]
fn positive_spectrum_characterizes_nonnegative_omega() {
    // pairs with nonnegative omega away from the base point and no
    // interior point masses have purely positive Dirichlet spectrum
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for _ in 0..20 {
        let ell = rng.random_range(1.0..2.0);
        let n = rng.random_range(1..=4usize);
        let base_omega = rng.random_range(-1.0..1.0);
        let mut nodes = vec![(0.0, base_omega, 0.4)];
        for i in 0..n {
            let x = ell * (0.1 + 0.8 * (i as f64 + rng.random_range(0.0..0.8)) / (n as f64 + 1.0));
            nodes.push((x, rng.random_range(0.2..1.5), 0.0));
        }
        nodes.sort_by(|l, r| l.0.partial_cmp(&r.0).unwrap());
        nodes.dedup_by(|b, a| (b.0 - a.0).abs() < 0.03);
        let pair = peakon_spectral::PeakonPair::new(ell, 0.0, &nodes).unwrap();
        let dd = dirichlet_data(&pair).unwrap();
        for kappa in dd.finite_kappas() {
            assert!(kappa > 0.0, "negative eigenvalue {kappa} for {pair:?}");
        }
    }

    // conversely a positive spectrum reconstructs nonnegative interior omega
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    for _ in 0..20 {
        let n = rng.random_range(1..=5usize);
        let mut sigma: Vec<f64> = Vec::new();
        while sigma.len() < n {
            let kappa: f64 = rng.random_range(0.5..9.0);
            if sigma.iter().all(|s: &f64| (s - kappa).abs() > 0.3) {
                sigma.push(kappa);
            }
        }
        let gammas: Vec<f64> = sigma.iter().map(|_| rng.random_range(0.05..2.0)).collect();
        let input = DirichletSpectralInput {
            sigma,
            gammas,
            omega_a: rng.random_range(-1.0..1.0),
            upsilon_a: 0.0,
            period: Period::from_ell(rng.random_range(1.0..2.0)).unwrap(),
            a: 0.0,
        };
        let rec = solve_dirichlet(&input).unwrap();
        for node in rec.pair.nodes().iter().filter(|n| n.x > 0.0) {
            assert!(node.omega >= -1e-9, "negative interior mass {}", node.omega);
            assert!(node.upsilon.abs() < 1e-9);
        }
    }
}

#[test]
fn isospectral_family_shares_its_conserved_quantities() {
    let pair = t2();
    let delta = discriminant(&monodromy(&pair).unwrap());
    let pairs = isospectral_sample(&delta, pair.period(), 0.0, 4).unwrap();
    assert_eq!(pairs.len(), 16);
    let (u0, mu0) = pairs[0].conserved_quantities();
    let mut lhs1 = Vec::new();
    let mut lhs2 = Vec::new();
    for member in &pairs {
        let (u, mu) = member.conserved_quantities();
        assert!(rel_err(u, u0) < 1e-7);
        assert!(rel_err(mu, mu0) < 1e-7);
        let report = trace_report(member).unwrap();
        lhs1.push(report.trace1.lhs);
        lhs2.push(report.trace2.lhs);
    }
    // the spectral sides depend only on the discriminant
    for (a, b) in lhs1.iter().zip(&lhs2) {
        assert!((a - lhs1[0]).abs() < 1e-9 * (1.0 + lhs1[0].abs()));
        assert!((b - lhs2[0]).abs() < 1e-9 * (1.0 + lhs2[0].abs()));
    }
}

#[test]
fn trace_identities_hold_on_the_corpus() {
    for (idx, pair) in corpus(40, 50).iter().enumerate() {
        let report = trace_report(pair).unwrap();
        assert!(
            report.max_residual() < 1e-8,
            "pair {idx}: {report:?}\n{pair:?}"
        );
    }
}

#[test]
fn base_point_shifts_keep_the_discriminant_but_move_the_dirichlet_spectrum() {
    let pair = t2();
    let report = trace_report(&pair).unwrap();
    let shifted = pair.rebase(LN_3);
    let shifted_report = trace_report(&shifted).unwrap();
    // trace sums over the periodic spectra agree
    assert!((report.trace1.lhs - shifted_report.trace1.lhs).abs() < 1e-10);
    assert!((report.trace2.lhs - shifted_report.trace2.lhs).abs() < 1e-10);
    // but the base-point identities see the new base point
    assert!((shifted_report.tid1.rhs - (-1.0 / 9.0)).abs() < 1e-12);
    assert!(shifted_report.max_residual() < 1e-10);
    // the Dirichlet eigenvalue flips sign: -9/2 at base 0, +9/2 at base ln 3
    let dd = dirichlet_data(&shifted).unwrap();
    assert!((dd.finite_kappas()[0] - 4.5).abs() < 1e-9);
    let delta0 = discriminant(&monodromy(&pair).unwrap());
    let delta1 = discriminant(&monodromy(&shifted).unwrap());
    for i in 0..3 {
        assert!((delta0.coeff(i) - delta1.coeff(i)).abs() < 1e-12);
    }
}

#[test]
fn exact_fixture_round_trips_through_the_full_chain() {
    let pair = t2_exact();
    let data = spectral_data(&pair).unwrap();
    let input = DirichletSpectralInput {
        sigma: data.dirichlet.finite_kappas(),
        gammas: data.dirichlet.gammas.clone(),
        omega_a: data.dirichlet.omega_a.clone(),
        upsilon_a: data.dirichlet.upsilon_a.clone(),
        period: pair.period().clone(),
        a: pair.base(),
    };
    let rec = solve_dirichlet(&input).unwrap();
    assert_eq!(rec.pair.nodes(), pair.nodes());
}
