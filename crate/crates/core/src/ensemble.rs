//! Brute-force sweeps over the ensemble P_{2g+1,q} of all monic
//! irreducibles of degree 2g+1, compared against the conjecture-side
//! predictions.
//!
//! Parallelism contract: the index space of monic polynomials is cut into
//! fixed-size blocks independent of the worker count, blocks are mapped in
//! parallel, and block results are concatenated and folded sequentially in
//! canonical (lexicographic) order. Floating-point reductions therefore
//! produce bit-identical results for any number of workers.

use rayon::prelude::*;

use crate::algebra::{count_primes, is_irreducible, monic_by_index, Poly, PrimePoly};
use crate::characters::chi_p;
use crate::conjecture::{
    kernel_symplectic, qk_polynomial, ratios_rhs_11, scaled_kernel, QkMetadata, TestFunction,
};
use crate::lfunction::{
    central_value, l_coefficients, scaled_ordinates, shifted_value, zeros, LPolynomial,
};
use crate::{Error, Result};

/// Enumeration guard: refuse sweeps that would walk more than this many
/// monic polynomials unless explicitly overridden.
pub const ENUMERATION_BUDGET: u128 = 1_000_000_000;

const BLOCK: u128 = 8192;

/// Worker count and budget override for a sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub workers: usize,
    pub budget_override: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            workers: 1,
            budget_override: false,
        }
    }
}

impl SweepConfig {
    pub fn with_workers(workers: usize) -> Self {
        SweepConfig {
            workers: workers.max(1),
            budget_override: false,
        }
    }
}

/// Exact size of the ensemble, #P_{2g+1,q}.
pub fn ensemble_size(q: u64, g: usize) -> u128 {
    count_primes(q, 2 * g + 1)
}

fn check_budget(q: u64, g: usize, cfg: &SweepConfig) -> Result<()> {
    let size = (q as u128).pow(2 * g as u32 + 1);
    if size > ENUMERATION_BUDGET && !cfg.budget_override {
        return Err(Error::BudgetExceeded {
            size,
            budget: ENUMERATION_BUDGET,
        });
    }
    Ok(())
}

/// All primes of P_{2g+1,q} in lexicographic order.
pub fn iterate_ensemble(q: u64, g: usize) -> impl Iterator<Item = PrimePoly> {
    assert!(g >= 1);
    crate::algebra::enumerate_monic(q, 2 * g + 1)
        .filter(is_irreducible)
        .map(PrimePoly::new_unchecked)
}

/// Deterministic parallel map over the ensemble: applies `f` to every
/// prime in P_{2g+1,q} and returns the results in lexicographic order,
/// bit-identical for every worker count. A failure anywhere aborts the
/// whole job, reporting how many blocks had completed.
pub fn parallel_sweep<T, F>(q: u64, g: usize, cfg: &SweepConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&PrimePoly) -> Result<T> + Sync,
{
    let total = (q as u128).pow(2 * g as u32 + 1);
    parallel_sweep_range(q, g, cfg, 0, total, f)
}

/// Same contract on an index sub-range [lo, hi) of the monic enumeration;
/// an empty range yields an empty result.
pub fn parallel_sweep_range<T, F>(
    q: u64,
    g: usize,
    cfg: &SweepConfig,
    lo: u128,
    hi: u128,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&PrimePoly) -> Result<T> + Sync,
{
    if lo >= hi {
        return Ok(Vec::new());
    }
    let n = 2 * g + 1;
    let blocks: Vec<(u128, u128)> = {
        let mut v = Vec::new();
        let mut start = lo;
        while start < hi {
            let end = (start + BLOCK).min(hi);
            v.push((start, end));
            start = end;
        }
        v
    };
    let total_blocks = blocks.len();

    let run = |(start, end): &(u128, u128)| -> Result<Vec<T>> {
        let mut out = Vec::new();
        for idx in *start..*end {
            let poly = monic_by_index(q, n, idx);
            if is_irreducible(&poly) {
                out.push(f(&PrimePoly::new_unchecked(poly))?);
            }
        }
        Ok(out)
    };

    let results: Vec<Result<Vec<T>>> = if cfg.workers <= 1 {
        blocks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| blocks.par_iter().map(run).collect())
    };

    let mut out = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(mut v) => out.append(&mut v),
            Err(e) => {
                return Err(Error::SweepFailure {
                    completed_blocks: i,
                    total_blocks,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(out)
}

/// One empirical-vs-conjecture row of a moment report.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentRow {
    pub k: usize,
    /// log_q|P| weighted (first-moment theorem normalization) or plain sum.
    pub weighted: bool,
    pub empirical: f64,
    pub conjecture: f64,
    pub ratio: f64,
    pub qk_meta: Option<QkMetadata>,
}

/// Moment sweep output: sums of L(1/2, chi_P)^k against the Q_k predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub q: u64,
    pub g: usize,
    pub num_primes: u128,
    pub rows: Vec<MomentRow>,
}

/// Computes all L-polynomials of the ensemble (or reuses cached ones) and
/// the empirical moments sum_P L(1/2,chi_P)^k for k = 1..k_max, compared
/// with count_primes * Q_k(2g+1). In weighted mode the k = 1 row carries
/// the log_q|P| weight and is compared with (1/2)|P|(log_q|P| + 1).
pub fn moment_sweep(
    q: u64,
    g: usize,
    k_max: usize,
    weighted: bool,
    cfg: &SweepConfig,
    cutoff: usize,
    lpolys: Option<&[LPolynomial]>,
) -> Result<MomentReport> {
    check_budget(q, g, cfg)?;
    let centrals = match lpolys {
        Some(ls) => ls.iter().map(central_value).collect::<Vec<f64>>(),
        None => parallel_sweep(q, g, cfg, |p| {
            let l = l_coefficients(p)?; // construction re-asserts the
                                        // functional-equation and Hasse bounds
            Ok(central_value(&l))
        })?,
    };
    let num_primes = ensemble_size(q, g);
    if centrals.len() as u128 != num_primes {
        return Err(Error::InvalidParameter(format!(
            "ensemble size mismatch: got {} L-functions, expected {num_primes}",
            centrals.len()
        )));
    }
    let x = (2 * g + 1) as f64;
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let empirical: f64 = centrals.iter().map(|c| c.powi(k as i32)).sum();
        if k == 1 && weighted {
            let emp_w = x * empirical;
            let pred = 0.5 * (q as f64).powi(2 * g as i32 + 1) * (x + 1.0);
            rows.push(MomentRow {
                k,
                weighted: true,
                empirical: emp_w,
                conjecture: pred,
                ratio: emp_w / pred,
                qk_meta: None,
            });
            continue;
        }
        let qk = qk_polynomial(k, q, cutoff, None)?;
        let conjecture = num_primes as f64 * qk.eval_f64(x);
        rows.push(MomentRow {
            k,
            weighted: false,
            empirical,
            conjecture,
            ratio: empirical / conjecture,
            qk_meta: Some(qk.metadata().clone()),
        });
    }
    Ok(MomentReport {
        q,
        g,
        num_primes,
        rows,
    })
}

/// Ensemble average of chi_P(n) over P_{2g+1,q}; exactly 1 for square n of
/// degree <= 2g (no P of degree 2g+1 can divide its square root).
pub fn orthogonality_stats(n: &Poly, q: u64, g: usize, cfg: &SweepConfig) -> Result<f64> {
    let deg = n
        .degree()
        .ok_or_else(|| Error::InvalidParameter("orthogonality needs nonzero n".into()))?;
    if deg > 2 * g {
        return Err(Error::InvalidParameter(format!(
            "deg n = {deg} exceeds 2g = {}; a prime could divide sqrt(n)",
            2 * g
        )));
    }
    check_budget(q, g, cfg)?;
    let vals = parallel_sweep(q, g, cfg, |p| Ok(chi_p(p, n).value() as i64))?;
    let sum: i64 = vals.iter().sum();
    Ok(sum as f64 / vals.len() as f64)
}

/// One ratios comparison row.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub alpha: f64,
    pub gamma: f64,
    pub q: u64,
    pub g: usize,
    pub empirical: f64,
    pub predicted: f64,
    pub ratio: f64,
    /// Primes excluded by the |L(1/2+gamma)| < 1e-12 degeneracy floor.
    pub skipped_primes: u64,
}

const DEGENERACY_FLOOR: f64 = 1e-12;

/// Empirical sum of L(1/2+alpha)/L(1/2+gamma) against
/// count_primes * ratios_rhs_11.
pub fn ratio_sweep(
    alpha: f64,
    gamma: f64,
    q: u64,
    g: usize,
    cfg: &SweepConfig,
    lpolys: Option<&[LPolynomial]>,
) -> Result<RatioRow> {
    check_budget(q, g, cfg)?;
    let pairs: Vec<(f64, f64)> = match lpolys {
        Some(ls) => ls
            .iter()
            .map(|l| (shifted_value(l, alpha), shifted_value(l, gamma)))
            .collect(),
        None => parallel_sweep(q, g, cfg, |p| {
            let l = l_coefficients(p)?;
            Ok((shifted_value(&l, alpha), shifted_value(&l, gamma)))
        })?,
    };
    let mut skipped = 0u64;
    let mut empirical = 0.0;
    for &(num, den) in &pairs {
        if den.abs() < DEGENERACY_FLOOR {
            skipped += 1;
            continue;
        }
        empirical += num / den;
    }
    let predicted = ensemble_size(q, g) as f64 * ratios_rhs_11(q, g, alpha, gamma)?;
    Ok(RatioRow {
        alpha,
        gamma,
        q,
        g,
        empirical,
        predicted,
        ratio: empirical / predicted,
        skipped_primes: skipped,
    })
}

/// Exact sum over the ensemble of sum_j f(t_j) with t_j the zero ordinates.
pub fn one_level_empirical(
    f: &TestFunction,
    q: u64,
    g: usize,
    cfg: &SweepConfig,
    lpolys: Option<&[LPolynomial]>,
) -> Result<f64> {
    check_budget(q, g, cfg)?;
    let per_prime: Vec<f64> = match lpolys {
        Some(ls) => {
            let sums: Result<Vec<f64>> = ls
                .iter()
                .map(|l| {
                    let z = zeros(l)?;
                    Ok(z.ordinates(q).iter().map(|&t| f.eval(t, q)).sum())
                })
                .collect();
            sums?
        }
        None => parallel_sweep(q, g, cfg, |p| {
            let l = l_coefficients(p)?;
            let z = zeros(&l)?;
            Ok(z.ordinates(q).iter().map(|&t| f.eval(t, q)).sum())
        })?,
    };
    Ok(per_prime.iter().sum())
}

/// Histogram of scaled zero ordinates tau in [-g, g] with both candidate
/// kernels sampled at the bin midpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub q: u64,
    pub g: usize,
    pub num_primes: u128,
    pub bins: usize,
    /// bins+1 edges covering [-g, g].
    pub edges: Vec<f64>,
    /// Raw zero counts per bin; sums to 2g * num_primes exactly.
    pub counts: Vec<u64>,
    /// counts / (num_primes * bin_width), comparable to the kernels.
    pub empirical_density: Vec<f64>,
    pub kernel_paper: Vec<f64>,
    pub kernel_symplectic: Vec<f64>,
    pub total_zeros: u64,
}

impl DensityReport {
    /// L2 distance between the empirical density and a kernel column.
    pub fn l2_distance(&self, kernel: &[f64]) -> f64 {
        let width = 2.0 * self.g as f64 / self.bins as f64;
        self.empirical_density
            .iter()
            .zip(kernel)
            .map(|(&d, &k)| (d - k) * (d - k) * width)
            .sum::<f64>()
            .sqrt()
    }

    pub fn l2_paper(&self) -> f64 {
        self.l2_distance(&self.kernel_paper)
    }

    pub fn l2_symplectic(&self) -> f64 {
        self.l2_distance(&self.kernel_symplectic)
    }
}

/// Bins all scaled zeros of the ensemble.
pub fn density_histogram(
    q: u64,
    g: usize,
    bins: usize,
    cfg: &SweepConfig,
    lpolys: Option<&[LPolynomial]>,
) -> Result<DensityReport> {
    if bins == 0 {
        return Err(Error::InvalidParameter("bins must be >= 1".into()));
    }
    check_budget(q, g, cfg)?;
    let tau_per_prime: Vec<Vec<f64>> = match lpolys {
        Some(ls) => {
            let r: Result<Vec<Vec<f64>>> = ls
                .iter()
                .map(|l| Ok(scaled_ordinates(&zeros(l)?, q, g)))
                .collect();
            r?
        }
        None => parallel_sweep(q, g, cfg, |p| {
            let l = l_coefficients(p)?;
            Ok(scaled_ordinates(&zeros(&l)?, q, g))
        })?,
    };
    let num_primes = tau_per_prime.len() as u128;
    let width = 2.0 * g as f64 / bins as f64;
    let mut counts = vec![0u64; bins];
    for taus in &tau_per_prime {
        for &tau in taus {
            let mut idx = ((tau + g as f64) / width).floor() as isize;
            idx = idx.clamp(0, bins as isize - 1);
            counts[idx as usize] += 1;
        }
    }
    let total_zeros: u64 = counts.iter().sum();
    let edges: Vec<f64> = (0..=bins).map(|i| -(g as f64) + i as f64 * width).collect();
    let empirical_density: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / (num_primes as f64 * width))
        .collect();
    let mids: Vec<f64> = (0..bins)
        .map(|i| -(g as f64) + (i as f64 + 0.5) * width)
        .collect();
    let kernel_paper: Vec<f64> = mids.iter().map(|&t| scaled_kernel(t)).collect();
    let kernel_symp: Vec<f64> = mids.iter().map(|&t| kernel_symplectic(t)).collect();
    Ok(DensityReport {
        q,
        g,
        num_primes,
        bins,
        edges,
        counts,
        empirical_density,
        kernel_paper,
        kernel_symplectic: kernel_symp,
        total_zeros,
    })
}
