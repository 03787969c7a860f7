//! Scalar-generic numerical kernels.
//!
//! Every routine here is generic over [`Real`] so the kernels can be
//! exercised at `f32`, `f64` or any other float-like scalar; the model
//! instantiates them at [`crate::Scalar`].  The kernels are deliberately
//! free of model vocabulary: they deal in matrices, distributions and
//! piecewise schedules, not in sectors or taxes.

use num_traits::{Float, FromPrimitive};

/// Scalar bound for the generic kernels.
pub trait Real: Float + FromPrimitive + core::fmt::Debug {}
impl<T> Real for T where T: Float + FromPrimitive + core::fmt::Debug {}

/// Failure modes of the iterative kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelError {
    /// An iteration failed to reach the requested tolerance.
    NonConvergence { iterations: usize, residual: f64 },
    /// An argument was outside the mathematical domain of the routine.
    Domain(String),
}

impl core::fmt::Display for KernelError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            KernelError::NonConvergence {
                iterations,
                residual,
            } => write!(
                f,
                "no convergence after {iterations} iterations (residual {residual:e})"
            ),
            KernelError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for KernelError {}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Dense matrix–vector product for a row-major `n × n` matrix.
pub fn mat_vec<T: Real>(a: &[T], x: &[T], n: usize) -> Vec<T> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(x.len(), n);
    (0..n)
        .map(|i| {
            (0..n).fold(T::zero(), |acc, j| acc + a[i * n + j] * x[j])
        })
        .collect()
}

/// Solves `x = A·x + f` by fixed-point iteration, starting from `x = f`.
///
/// Converges whenever the spectral radius of `A` is below one.  The
/// convergence test is on the relative residual `‖x − (A·x + f)‖∞ /
/// max(‖x‖∞, 1)`; on success the returned vector satisfies it at `rel_tol`.
pub fn solve_fixed_point<T: Real>(
    a: &[T],
    f: &[T],
    n: usize,
    rel_tol: T,
    max_iter: usize,
) -> Result<Vec<T>, KernelError> {
    let mut x: Vec<T> = f.to_vec();
    let mut residual = T::infinity();
    for iteration in 0..max_iter {
        let ax = mat_vec(a, &x, n);
        let next: Vec<T> = (0..n).map(|i| ax[i] + f[i]).collect();
        // A diverging iteration overflows; report it rather than letting
        // non-finite values poison the residual (max() ignores NaN).
        if next.iter().any(|v| !v.is_finite()) {
            return Err(KernelError::NonConvergence {
                iterations: iteration + 1,
                residual: f64::INFINITY,
            });
        }
        let scale = next
            .iter()
            .fold(T::one(), |acc, v| acc.max(v.abs()));
        residual = (0..n)
            .map(|i| (next[i] - x[i]).abs())
            .fold(T::zero(), T::max)
            / scale;
        x = next;
        if residual <= rel_tol {
            return Ok(x);
        }
    }
    Err(KernelError::NonConvergence {
        iterations: max_iter,
        residual: to_f64(residual),
    })
}

/// Estimates the spectral radius of a non-negative matrix by power
/// iteration with Collatz–Wielandt bounds.
///
/// Starting from the all-ones vector, each step tightens a lower and an
/// upper bound `min_i (A·v)_i / v_i ≤ ρ ≤ max_i (A·v)_i / v_i` (minima and
/// maxima over strictly positive entries of `v`).  For irreducible
/// matrices the bounds close to `rel_tol`; if they fail to close — which
/// happens for reducible matrices such as diagonal ones — the upper bound
/// is returned, which is always valid for non-negative matrices and errs
/// on the safe side when used to reject non-productive systems.
pub fn spectral_radius<T: Real>(a: &[T], n: usize, rel_tol: T, max_iter: usize) -> T {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return T::zero();
    }
    let mut v: Vec<T> = vec![T::one(); n];
    let mut upper = T::zero();
    for _ in 0..max_iter {
        let w = mat_vec(a, &v, n);
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for i in 0..n {
            if v[i] > T::zero() {
                let ratio = w[i] / v[i];
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
        upper = hi;
        if hi == T::zero() {
            return T::zero();
        }
        if (hi - lo) <= rel_tol * hi {
            return (hi + lo) / (T::one() + T::one());
        }
        let norm = w.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
        if norm == T::zero() {
            return T::zero();
        }
        v = w.into_iter().map(|x| x / norm).collect();
    }
    upper
}

/// Atkinson inequality index of a weighted distribution with aversion
/// parameter `epsilon > 0`.
///
/// `A = 1 − EDE / mean`, where the equally-distributed equivalent is the
/// generalised mean of order `1 − epsilon` (the weighted geometric mean
/// when `epsilon = 1`).  Values must be non-negative and weights positive.
pub fn atkinson<T: Real>(values: &[T], weights: &[T], epsilon: T) -> Result<T, KernelError> {
    if epsilon <= T::zero() {
        return Err(KernelError::Domain(format!(
            "atkinson epsilon must be positive, got {}",
            to_f64(epsilon)
        )));
    }
    if values.len() != weights.len() || values.is_empty() {
        return Err(KernelError::Domain(
            "atkinson needs equally many values and weights, at least one each".into(),
        ));
    }
    let mut total_w = T::zero();
    for (&y, &w) in values.iter().zip(weights) {
        if y < T::zero() {
            return Err(KernelError::Domain("atkinson values must be non-negative".into()));
        }
        if w <= T::zero() {
            return Err(KernelError::Domain("atkinson weights must be positive".into()));
        }
        total_w = total_w + w;
    }
    let mean = values
        .iter()
        .zip(weights)
        .fold(T::zero(), |acc, (&y, &w)| acc + w * y)
        / total_w;
    if mean <= T::zero() {
        // A distribution that is zero everywhere is perfectly equal.
        return Ok(T::zero());
    }
    let eps_tol = T::from_f64(1e-12).unwrap();
    let one = T::one();
    let ede = if (epsilon - one).abs() < eps_tol {
        // Geometric-mean branch.  Any zero value sends the EDE to zero.
        if values.iter().any(|&y| y == T::zero()) {
            T::zero()
        } else {
            let log_mean = values
                .iter()
                .zip(weights)
                .fold(T::zero(), |acc, (&y, &w)| acc + w * y.ln())
                / total_w;
            log_mean.exp()
        }
    } else {
        let p = one - epsilon;
        let moment = values
            .iter()
            .zip(weights)
            .fold(T::zero(), |acc, (&y, &w)| acc + w * y.powf(p))
            / total_w;
        moment.powf(one / p)
    };
    Ok((one - ede / mean).max(T::zero()))
}

/// Tax due on `income` under a piecewise-linear marginal schedule.
///
/// `brackets` lists `(lower_bound, marginal_rate)` pairs sorted by lower
/// bound, the first bound being zero; each rate applies to the slice of
/// income between its bound and the next.
pub fn marginal_tax<T: Real>(income: T, brackets: &[(T, T)]) -> T {
    if income <= T::zero() {
        return T::zero();
    }
    let mut tax = T::zero();
    for (k, &(lower, rate)) in brackets.iter().enumerate() {
        let upper = brackets
            .get(k + 1)
            .map(|&(next_lower, _)| next_lower)
            .unwrap_or(T::infinity());
        if income > lower {
            tax = tax + rate * (income.min(upper) - lower);
        }
    }
    tax
}

/// Linear interpolation across a year window: `v0` up to and including
/// `start`, `v1` from `end` onwards, affine in between.
pub fn linear_ramp<T: Real>(year: i32, start: i32, end: i32, v0: T, v1: T) -> T {
    if year <= start || end <= start {
        v0
    } else if year >= end {
        v1
    } else {
        let frac = T::from_i32(year - start).unwrap() / T::from_i32(end - start).unwrap();
        v0 + (v1 - v0) * frac
    }
}

/// Splits `amount` over `weights` proportionally; zero total weight splits
/// evenly.
pub fn proportional_split<T: Real>(amount: T, weights: &[T]) -> Vec<T> {
    let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    if total <= T::zero() {
        let n = T::from_usize(weights.len()).unwrap();
        return weights.iter().map(|_| amount / n).collect();
    }
    weights.iter().map(|&w| amount * w / total).collect()
}
