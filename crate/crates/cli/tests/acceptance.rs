//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured values (run with --nocapture to see them).
//!
//! Exact identities are asserted at zero tolerance, closed-form fixtures
//! at their stated tolerances, and asymptotic claims as strict trends
//! over the computed ensembles.

use std::path::PathBuf;
use std::process::Command;

use fflm_core::algebra::{count_primes, enumerate_monic, poly_square_root, Poly};
use fflm_core::conjecture::{
    ak_local_factor, ak_value, inv_zeta_a_real, kernel_symplectic, leading_coefficient,
    local_factor_closed_form, qk_polynomial, ratios_ap_bracket, ratios_ap_direct_11, scaled_kernel,
    unit_a_series, ys_closed, zeta_a_real, TestFunction,
};
use fflm_core::ensemble::{
    density_histogram, iterate_ensemble, moment_sweep, one_level_empirical, orthogonality_stats,
    DensityReport, SweepConfig,
};
use fflm_core::lfunction::{l_coefficients, l_coefficients_direct, l_eval, zeros};
use fflm_core::series::{rat, residue_qk};
use fflm_core::Complex64;

fn cfg() -> SweepConfig {
    SweepConfig::with_workers(4)
}

/// Criterion 1: for q in {3,5}, g in {1,2}, every P in the ensemble,
/// direct character sums for all of a_0..a_{2g} equal the symmetry-filled
/// coefficients, in exact integers.
#[test]
fn c01_functional_equation_exact() {
    let mut checked = 0u64;
    for q in [3u64, 5] {
        for g in [1usize, 2] {
            for p in iterate_ensemble(q, g) {
                let filled = l_coefficients(&p).unwrap();
                let direct = l_coefficients_direct(&p).unwrap();
                assert_eq!(
                    filled.coeffs(),
                    &direct[..],
                    "functional equation violated for P = {p} over F_{q}"
                );
                checked += 1;
            }
        }
    }
    println!("[PASS] criterion 1: functional equation exact on {checked} L-polynomials (q in {{3,5}}, g in {{1,2}}, zero tolerance)");
}

/// Criterion 2: for q in {3,5}, g <= 3, every L-polynomial has exactly
/// 2g located zeros, each with | |u| sqrt(q) - 1 | < 1e-9 and residual
/// |L(u)| < 1e-9 on the circle.
#[test]
fn c02_riemann_hypothesis_circle() {
    let mut total_zeros = 0u64;
    for q in [3u64, 5] {
        for g in [1usize, 2, 3] {
            let zero_counts = fflm_core::ensemble::parallel_sweep(q, g, &cfg(), |p| {
                let l = l_coefficients(p)?;
                let z = zeros(&l)?;
                let r_inv = 1.0 / (q as f64).sqrt();
                for &theta in z.thetas() {
                    let u = Complex64::from_polar(r_inv, theta);
                    // the parametrization pins |u| = q^{-1/2}; the real
                    // content is the residual plus the full count 2g
                    assert!((u.norm() * (q as f64).sqrt() - 1.0).abs() < 1e-9);
                    assert!(
                        l_eval(&l, u).norm() < 1e-9,
                        "residual too large for P = {} at theta = {theta}",
                        p
                    );
                }
                Ok(z.len() as u64)
            })
            .unwrap();
            let expected = 2 * g as u64;
            assert!(zero_counts.iter().all(|&c| c == expected), "q={q} g={g}");
            total_zeros += zero_counts.iter().sum::<u64>();
        }
    }
    println!("[PASS] criterion 2: Riemann hypothesis on the circle, {total_zeros} zeros located (q in {{3,5}}, g <= 3, tolerance 1e-9)");
}

/// Criterion 3: Q_1(x) = (1 + x)/2 exactly.
#[test]
fn c03_q1_fixture() {
    let q1 = qk_polynomial(1, 3, 30, None).unwrap();
    assert_eq!(q1.rational_coeffs(), &[rat(1, 2), rat(1, 2)]);
    let q1_alt = qk_polynomial(1, 5, 10, None).unwrap();
    assert_eq!(q1_alt.rational_coeffs(), &[rat(1, 2), rat(1, 2)]);
    println!("[PASS] criterion 3: Q_1 = (1+x)/2 exactly (rational coefficient equality)");
}

/// Criterion 4: Q_2 fixtures. With A = 1 the residue engine yields
/// (x^3+6x^2+11x+6)/24 exactly; with the real A-series at q = 3, D = 30
/// the x^3 coefficient is A_2(0,0)/24 within 1e-8, and A_2(0,0) is
/// 1 - 1/q within 1e-9.
#[test]
fn c04_q2_fixtures() {
    let trivial = residue_qk(2, &unit_a_series(2, 6), 6).unwrap();
    assert_eq!(
        trivial.rational_coeffs(),
        &[rat(6, 24), rat(11, 24), rat(6, 24), rat(1, 24)],
        "A = 1 fixture must be exact"
    );
    let q2 = qk_polynomial(2, 3, 30, None).unwrap();
    let a2 = ak_value(2, 3, 30).value;
    let dev_leading = (q2.coeff_f64(3) - a2 / 24.0).abs();
    assert!(
        dev_leading < 1e-8,
        "x^3 coefficient off by {dev_leading:.3e}"
    );
    let dev_a2 = (a2 - (1.0 - 1.0 / 3.0)).abs();
    assert!(dev_a2 < 1e-9, "A_2(0,0) off by {dev_a2:.3e}");
    println!("[PASS] criterion 4: Q_2 fixtures (A=1 exact; x^3 coeff dev {dev_leading:.2e} < 1e-8; A_2 vs 1-1/q dev {dev_a2:.2e} < 1e-9)");
}

/// Criterion 5: Q_3 has degree 6 with x^6 coefficient A_3(0,0,0)/2880
/// within 1e-8, and the k = 3 local factor matches the printed closed form
/// 1 - (6x^2-8x+3)/x^4 to 1e-12 for all x = q^d <= 3^6.
#[test]
fn c05_q3_fixtures() {
    let q3 = qk_polynomial(3, 3, 30, None).unwrap();
    assert_eq!(q3.degree(), 6);
    let a3 = ak_value(3, 3, 30).value;
    let dev = (q3.coeff_f64(6) - a3 / 2880.0).abs();
    assert!(dev < 1e-8, "x^6 coefficient off by {dev:.3e}");
    let mut max_dev: f64 = 0.0;
    for q in [3u64, 5, 13] {
        for d in 1..=6 {
            let x = q.pow(d);
            if x > 3u64.pow(6) {
                continue;
            }
            let lemma = ak_local_factor(3, q, d as usize, &[0.0; 3]);
            let printed = local_factor_closed_form(3, x);
            let printed = printed.numer().to_string().parse::<f64>().unwrap()
                / printed.denom().to_string().parse::<f64>().unwrap();
            max_dev = max_dev.max((lemma - printed).abs());
        }
    }
    assert!(max_dev < 1e-12);
    println!("[PASS] criterion 5: Q_3 degree 6, x^6 coeff dev {dev:.2e} < 1e-8, local factor vs closed form dev {max_dev:.2e} < 1e-12");
}

/// Criterion 6: leading coefficients prod i!/(2i)! for k = 1..5 as exact
/// rationals.
#[test]
fn c06_leading_coefficients() {
    let expected = [
        rat(1, 2),
        rat(1, 24),
        rat(1, 2880),
        rat(1, 4838400),
        rat(1, 146313216000),
    ];
    for (k, want) in expected.iter().enumerate() {
        assert_eq!(&leading_coefficient(k + 1), want, "k = {}", k + 1);
    }
    println!("[PASS] criterion 6: leading coefficients 1/2, 1/24, 1/2880, 1/4838400, 1/146313216000 exact");
}

/// Criterion 7: the ratios oracle. The bracket-built truncated A_P equals
/// the independent local form prod (1 - q^{-d(1+2 gamma)})^{pi_q(d)} to
/// 1e-12 on a 10-point grid (confirming the even-sum identity without the
/// printed trailing "-1"), and Y_S * A_P reproduces the first term
/// zeta_A(1+2a)/zeta_A(1+a+g) of the closed K = Q = 1 conjecture to 1e-10
/// once the Euler cutoff covers the tail (gamma >= 0.2, D = 120).
#[test]
fn c07_ratios_oracle() {
    let q = 3u64;
    let grid = [
        (0.05, 0.05),
        (0.05, 0.25),
        (0.10, 0.10),
        (0.10, 0.20),
        (0.15, 0.15),
        (0.15, 0.05),
        (0.20, 0.10),
        (0.20, 0.25),
        (0.25, 0.15),
        (0.25, 0.25),
    ];
    let mut max_dev: f64 = 0.0;
    for &(alpha, gamma) in &grid {
        let bracket = ratios_ap_bracket(q, &[alpha], &[gamma], 30);
        let direct = ratios_ap_direct_11(q, gamma, 30);
        max_dev = max_dev.max(((bracket - direct) / direct).abs());
    }
    assert!(max_dev < 1e-12, "bracket vs direct dev {max_dev:.3e}");

    let mut max_first: f64 = 0.0;
    for alpha in [0.05, 0.1, 0.15, 0.2, 0.25] {
        for gamma in [0.2, 0.25] {
            let ys = ys_closed(q, &[alpha], &[gamma]).unwrap();
            let ap = ratios_ap_bracket(q, &[alpha], &[gamma], 120);
            let first = zeta_a_real(q, 1.0 + 2.0 * alpha).unwrap()
                * inv_zeta_a_real(q, 1.0 + alpha + gamma);
            max_first = max_first.max(((ys * ap - first) / first).abs());
        }
    }
    assert!(
        max_first < 1e-10,
        "Y_S * A_P vs first term dev {max_first:.3e}"
    );
    println!("[PASS] criterion 7: ratios oracle (A_P identity dev {max_dev:.2e} < 1e-12 on 10 grid points; Y_S*A_P vs conjecture first term dev {max_first:.2e} < 1e-10)");
}

/// Criterion 8: for q = 5, g in {1,2,3}, the empirical/predicted ratios of
/// the weighted first moment (vs (1/2)|P|(log_q|P|+1)) and of the second
/// moment (vs the cited leading term |P|(log_q|P|)^2/(24 zeta_A(2)))
/// both move strictly toward 1 as g grows. Deviations reported, no hard
/// tolerance: these are asymptotic claims.
#[test]
fn c08_moment_trends() {
    let q = 5u64;
    let mut weighted_dev = Vec::new();
    let mut second_dev = Vec::new();
    let mut weighted_ratios = Vec::new();
    let mut second_ratios = Vec::new();
    for g in [1usize, 2, 3] {
        let rep = moment_sweep(q, g, 2, true, &cfg(), 30, None).unwrap();
        let w = &rep.rows[0];
        assert!(w.weighted && w.k == 1);
        weighted_dev.push((w.ratio - 1.0).abs());
        weighted_ratios.push(w.ratio);
        // the criterion cites the leading-order second-moment constant
        let second = &rep.rows[1];
        let leading = fflm_core::conjecture::moment_leading_asymptotic(2, q, g, 30);
        let ratio = second.empirical / leading;
        second_dev.push((ratio - 1.0).abs());
        second_ratios.push(ratio);
    }
    assert!(
        weighted_dev[0] > weighted_dev[1] && weighted_dev[1] > weighted_dev[2],
        "weighted first-moment deviations not strictly decreasing: {weighted_dev:?}"
    );
    // the q=5, g=3 weighted ratio must lie within [0.8, 1.2]
    assert!(
        (0.8..=1.2).contains(weighted_ratios.last().unwrap()),
        "weighted ratio at g=3 outside [0.8, 1.2]"
    );
    assert!(
        second_dev[0] > second_dev[1] && second_dev[1] > second_dev[2],
        "second-moment deviations not strictly decreasing: {second_dev:?}"
    );
    println!(
        "[PASS] criterion 8: moment trends at q=5, g=1,2,3 (weighted first-moment ratios {:?} -> 1; second-moment/leading-term ratios {:?} -> 1, both strictly)",
        weighted_ratios, second_ratios
    );
}

/// Criterion 9: orthogonality. The ensemble average of chi_P(n) is exactly
/// 1 for every square n of degree <= 2 (q in {3,5}, g in {1,2}); for ten
/// fixed non-square n the normalized statistic |avg| q^{(2g+1)/2}/deg(n)
/// stays bounded as g grows (values reported; the implied constant of the
/// bound is unspecified, so only a sanity ceiling is asserted).
#[test]
fn c09_orthogonality() {
    for q in [3u64, 5] {
        for g in [1usize, 2] {
            // every square n with deg n <= 2: squares of constants and linears
            for h in enumerate_monic(q, 0).chain(enumerate_monic(q, 1)) {
                let n = h.mul(&h);
                let avg = orthogonality_stats(&n, q, g, &cfg()).unwrap();
                assert_eq!(avg, 1.0, "square n = {n}, q={q}, g={g}");
            }
        }
    }
    // ten fixed non-squares over F_3, degrees 1..4 (odd degree is never a
    // square; even-degree picks verified square-free of square root)
    let q = 3u64;
    let ns: Vec<Poly> = vec![
        Poly::new(vec![0, 1], q),
        Poly::new(vec![1, 1], q),
        Poly::new(vec![1, 0, 1], q),
        Poly::new(vec![2, 2, 1], q),
        Poly::new(vec![0, 1, 0, 1], q),
        Poly::new(vec![1, 2, 0, 1], q),
        Poly::new(vec![2, 0, 1, 1], q),
        Poly::new(vec![1, 1, 0, 0, 1], q),
        Poly::new(vec![2, 0, 1, 0, 1], q),
        Poly::new(vec![1, 0, 0, 1, 1], q),
    ];
    println!("criterion 9 normalized statistics |avg| q^((2g+1)/2) / deg(n):");
    let mut max_stat: f64 = 0.0;
    for n in &ns {
        if n.degree().unwrap() % 2 == 0 {
            assert!(poly_square_root(n).is_none(), "{n} must not be a square");
        }
        let mut row = format!("  n = {n}:");
        for g in [2usize, 3, 4] {
            let avg = orthogonality_stats(n, q, g, &cfg()).unwrap();
            let stat =
                avg.abs() * (q as f64).powf((2 * g + 1) as f64 / 2.0) / n.degree().unwrap() as f64;
            max_stat = max_stat.max(stat);
            row.push_str(&format!("  g={g}: {stat:.4}"));
        }
        println!("{row}");
    }
    assert!(
        max_stat < 10.0,
        "normalized statistic unexpectedly large: {max_stat}"
    );
    println!("[PASS] criterion 9: orthogonality (squares exactly 1; ten non-square statistics bounded, max {max_stat:.4})");
}

fn windowed_l2(rep: &DensityReport, kernel: impl Fn(f64) -> f64, window: f64) -> f64 {
    let width = 2.0 * rep.g as f64 / rep.bins as f64;
    let mut acc = 0.0;
    for i in 0..rep.bins {
        let mid = 0.5 * (rep.edges[i] + rep.edges[i + 1]);
        if mid.abs() > window {
            continue;
        }
        acc += (rep.empirical_density[i] - kernel(mid)).powi(2) * width;
    }
    acc.sqrt()
}

/// Criterion 10: one-level density. With f = 1 the zero sum is exactly
/// 2g count_primes(2g+1); for q = 3, g in {2,3,4} the histogram's L2
/// distance to both kernels is reported and the distance to the
/// better-fitting kernel decreases strictly in g. Distances are compared
/// over the common window |tau| <= 2 (the full scaled range of the
/// smallest ensemble) with a fixed bin width, so that the metric measures
/// the same region for every g.
#[test]
fn c10_one_level_density() {
    for q in [3u64, 5] {
        for g in [1usize, 2] {
            let count =
                one_level_empirical(&TestFunction::constant(1.0), q, g, &cfg(), None).unwrap();
            let expected = 2.0 * g as f64 * count_primes(q, 2 * g + 1) as f64;
            assert_eq!(count, expected, "q={q} g={g}");
        }
    }
    let q = 3u64;
    let mut dist_paper = Vec::new();
    let mut dist_symp = Vec::new();
    for g in [2usize, 3, 4] {
        let bins = 8 * g; // fixed bin width 0.25 across g
        let rep = density_histogram(q, g, bins, &cfg(), None).unwrap();
        assert_eq!(rep.total_zeros as u128, 2 * g as u128 * rep.num_primes);
        dist_paper.push(windowed_l2(&rep, scaled_kernel, 2.0));
        dist_symp.push(windowed_l2(&rep, kernel_symplectic, 2.0));
    }
    println!("criterion 10 L2 distances over |tau| <= 2 at g = 2,3,4:");
    println!("  kernel_paper      1 - sin(2 pi t)/(pi t):   {dist_paper:?}");
    println!("  kernel_symplectic 1 - sin(2 pi t)/(2 pi t): {dist_symp:?}");
    let better_is_symplectic = dist_symp.iter().zip(&dist_paper).all(|(s, p)| s < p);
    assert!(
        better_is_symplectic,
        "expected the symplectic kernel to fit better at every g"
    );
    assert!(
        dist_symp[0] > dist_symp[1] && dist_symp[1] > dist_symp[2],
        "better-kernel distance not strictly decreasing: {dist_symp:?}"
    );
    println!("[PASS] criterion 10: one-level density (f=1 counts exact; symplectic kernel fits better at every g and its distance decreases strictly)");
}

/// Criterion 11: byte-identical reports across worker counts 1, 4, 8.
#[test]
fn c11_determinism_across_workers() {
    let bin = env!("CARGO_BIN_EXE_fflm");
    let dir = std::env::temp_dir().join(format!("fflm-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let jobs: Vec<(&str, Vec<String>)> = vec![
        (
            "moments",
            vec!["moments", "--q", "5", "--g", "2", "--k", "2", "--weighted"]
                .into_iter()
                .map(String::from)
                .collect(),
        ),
        (
            "density",
            vec!["density", "--q", "3", "--g", "2", "--bins", "16"]
                .into_iter()
                .map(String::from)
                .collect(),
        ),
        (
            "ratios",
            vec![
                "ratios", "--q", "3", "--g", "2", "--alpha", "0.1", "--gamma", "0.2",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
        ),
    ];
    for (name, args) in &jobs {
        let mut outputs: Vec<Vec<u8>> = Vec::new();
        for workers in [1usize, 4, 8] {
            let out: PathBuf = dir.join(format!("{name}-w{workers}.csv"));
            let status = Command::new(bin)
                .args(args)
                .args(["--workers", &workers.to_string(), "--out"])
                .arg(&out)
                .status()
                .expect("spawn fflm");
            assert!(status.success(), "{name} with {workers} workers failed");
            outputs.push(std::fs::read(&out).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{name}: workers 1 vs 4 differ");
        assert_eq!(outputs[1], outputs[2], "{name}: workers 4 vs 8 differ");
    }
    // the lfun cache file is likewise a parallel artifact
    let mut caches: Vec<Vec<u8>> = Vec::new();
    for workers in [1usize, 4, 8] {
        let cache_dir = dir.join(format!("cache-w{workers}"));
        let status = Command::new(bin)
            .args([
                "lfun",
                "--q",
                "5",
                "--g",
                "2",
                "--workers",
                &workers.to_string(),
                "--cache-dir",
            ])
            .arg(&cache_dir)
            .status()
            .expect("spawn fflm");
        assert!(status.success());
        caches.push(std::fs::read(cache_dir.join("lfun_q5_g2.jsonl")).unwrap());
    }
    assert_eq!(caches[0], caches[1]);
    assert_eq!(caches[1], caches[2]);
    std::fs::remove_dir_all(&dir).ok();
    println!("[PASS] criterion 11: moments, density, ratios reports and the lfun cache byte-identical across workers 1, 4, 8");
}
