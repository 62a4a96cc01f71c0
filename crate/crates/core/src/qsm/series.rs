//! Certified evaluation of positive Dirichlet-type series in `f64`, with
//! compensated summation and explicit tail bounds.

use serde_json::json;

use crate::error::{Error, Result};

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest number of terms any single summation will take.
pub const MAX_TERMS: usize = 50_000_000;

/// Value of a series with `|true − value| ≤ tail_bound`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    pub cutoff: usize,
    pub divergent: bool,
}

impl SeriesValue {
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (self.value - x).abs() <= self.tail_bound + slack
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "value": self.value,
            "tail_bound": self.tail_bound,
            "cutoff": self.cutoff,
            "divergent": self.divergent,
        })
    }
}

/// Neumaier compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
    terms: usize,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.terms += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Bound on the accumulated rounding error for nonnegative terms.
    pub fn rounding_bound(&self) -> f64 {
        4.0 * f64::EPSILON * self.value().abs() + self.terms as f64 * f64::MIN_POSITIVE
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 1.0) || !beta.is_finite() {
        return Err(Error::Domain(format!("series needs β > 1, got {beta}")));
    }
    Ok(())
}

/// `Σ_{n≥N} n^{−β}` by Euler–Maclaurin with four Bernoulli corrections and
/// the remainder bound `2ζ(10)/(2π)^{10}·|f⁽⁹⁾(N)|`.
fn zeta_tail(beta: f64, n: usize) -> (f64, f64) {
    const B: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];
    let x = n as f64;
    let mut est = x.powf(1.0 - beta) / (beta - 1.0) + 0.5 * x.powf(-beta);
    // f^{(2k-1)}(x) = −β(β+1)⋯(β+2k−2)·x^{−β−2k+1}
    let mut rising = beta;
    let mut fact = 2.0;
    for (k, b) in B.iter().enumerate() {
        let j = 2 * k + 1;
        if k > 0 {
            rising *= (beta + j as f64 - 2.0) * (beta + j as f64 - 1.0);
            fact *= (j as f64) * (j as f64 + 1.0);
        }
        est += b / fact * rising * x.powf(-beta - j as f64);
    }
    let mut r9 = rising;
    for i in 7..=8 {
        r9 *= beta + i as f64;
    }
    let bound = 2.0 * 1.000_994_6 / (2.0 * std::f64::consts::PI).powi(10) * r9 * x.powf(-beta - 9.0);
    (est, bound)
}

/// `ζ(β)` from `n < N` terms plus an Euler–Maclaurin tail.
pub fn zeta_with_cutoff(beta: f64, cutoff: usize) -> Result<SeriesValue> {
    check_beta(beta)?;
    let n = cutoff.max(2);
    let mut acc = Accumulator::new();
    for k in 1..n {
        acc.add((k as f64).powf(-beta));
    }
    let (tail, bound) = zeta_tail(beta, n);
    acc.add(tail);
    Ok(SeriesValue { value: acc.value(), tail_bound: bound + acc.rounding_bound(), cutoff: n, divergent: false })
}

/// `ζ(β)` to absolute accuracy `tol`, or the best bound reachable in `f64`.
pub fn zeta(beta: f64, tol: f64) -> Result<SeriesValue> {
    check_beta(beta)?;
    let mut n = 16;
    let mut v = zeta_with_cutoff(beta, n)?;
    while v.tail_bound > tol && n < MAX_TERMS {
        n *= 2;
        let next = zeta_with_cutoff(beta, n)?;
        // past the rounding floor a longer sum is no better
        if next.tail_bound >= v.tail_bound {
            return Ok(next);
        }
        v = next;
    }
    Ok(v)
}

/// Plain `ζ(β)` at default accuracy, for internal use.
pub(crate) fn zeta_f(beta: f64) -> f64 {
    zeta(beta, 1e-14).map(|v| v.value).unwrap_or(f64::INFINITY)
}

fn check_polylog(beta: f64, z: f64) -> Result<()> {
    check_beta(beta)?;
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("polylog needs 0 < z < 1, got {z}")));
    }
    Ok(())
}

/// `Li_β(z) = Σ zⁿ n^{−β}` truncated after `cutoff` terms, with tail bound
/// `z^{N+1}(N+1)^{−β}/(1−z)`.
pub fn polylog_with_cutoff(beta: f64, z: f64, cutoff: usize) -> Result<SeriesValue> {
    check_polylog(beta, z)?;
    let mut acc = Accumulator::new();
    let mut p = 1.0;
    for n in 1..=cutoff {
        p *= z;
        acc.add(p * (n as f64).powf(-beta));
    }
    let next = (cutoff + 1) as f64;
    let tail = z.powf(next) * next.powf(-beta) / (1.0 - z);
    Ok(SeriesValue { value: acc.value(), tail_bound: tail + acc.rounding_bound(), cutoff, divergent: false })
}

/// `Li_β(z)` to absolute accuracy `tol`, or the best bound reachable in `f64`.
pub fn polylog(beta: f64, z: f64, tol: f64) -> Result<SeriesValue> {
    check_polylog(beta, z)?;
    let mut n = 16;
    let mut v = polylog_with_cutoff(beta, z, n)?;
    while v.tail_bound > tol && n < MAX_TERMS {
        n *= 2;
        let next = polylog_with_cutoff(beta, z, n)?;
        // past the rounding floor a longer sum is no better
        if next.tail_bound >= v.tail_bound {
            return Ok(next);
        }
        v = next;
    }
    Ok(v)
}

/// Growth report for the terms of a truncated formal series.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// Index after which the terms increase monotonically to the cutoff.
    pub increasing_from: Option<usize>,
    pub last_ratio: f64,
}

/// Terms are given as natural logarithms; a run of increasing terms that
/// reaches the cutoff and spans at least a quarter of it flags divergence.
pub fn growth_report(log_terms: &[(usize, f64)]) -> GrowthReport {
    let mut start = None;
    for w in log_terms.windows(2) {
        if w[1].1 > w[0].1 {
            if start.is_none() {
                start = Some(w[0].0);
            }
        } else {
            start = None;
        }
    }
    let last_ratio = match log_terms {
        [.., a, b] => (b.1 - a.1).exp(),
        _ => 0.0,
    };
    let span_ok = match (start, log_terms.last()) {
        (Some(s), Some(l)) => l.0 >= s && (l.0 - s) * 4 >= l.0.max(4),
        _ => false,
    };
    GrowthReport { increasing_from: if span_ok { start } else { None }, last_ratio }
}

/// Smallest `β > 1` with `f(β) = target` for a decreasing `f`, by bisection.
pub fn threshold(f: &dyn Fn(f64) -> f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (1.0 + 1e-9, 64.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        let z2 = zeta(2.0, 1e-12).unwrap();
        assert!(z2.contains(std::f64::consts::PI.powi(2) / 6.0, 1e-15));
        let z4 = zeta(4.0, 1e-12).unwrap();
        assert!(z4.contains(std::f64::consts::PI.powi(4) / 90.0, 1e-15));
        assert!(zeta(1.0, 1e-6).is_err());
        let a = zeta_with_cutoff(1.5, 20).unwrap();
        let b = zeta_with_cutoff(1.5, 200).unwrap();
        assert!((a.value - b.value).abs() <= a.tail_bound + b.tail_bound);
    }

    #[test]
    fn polylog_values() {
        let v = polylog(2.0, 0.5, 1e-12).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        assert!(v.contains(exact, 1e-15));
        let big = polylog(50.0, 0.3, 1e-14).unwrap();
        assert!((big.value - 0.3).abs() < 1e-12);
        assert!(polylog(2.0, 1.0, 1e-6).is_err());
    }

    #[test]
    fn growth_detection() {
        let up: Vec<(usize, f64)> = (1..40).map(|d| (d, d as f64)).collect();
        assert!(growth_report(&up).increasing_from.is_some());
        let down: Vec<(usize, f64)> = (1..40).map(|d| (d, -(d as f64))).collect();
        assert!(growth_report(&down).increasing_from.is_none());
    }
}
