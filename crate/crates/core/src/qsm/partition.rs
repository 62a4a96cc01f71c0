//! Partition functions: closed forms with direct-sum cross-checks, and
//! truncated enumerative series.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::json;

use super::series::{self, growth_report, threshold, zeta_f, Accumulator, GrowthReport, SeriesValue};
use crate::dessin::Dessin;
use crate::enumerate::{self, MAX_ENUM_DEGREE};
use crate::error::{guard, Error, Result};
use crate::perm;

/// Largest `n` for factorization tables.
pub const MAX_TABLE: usize = 10_000_000;

/// `P_n`, the number of ordered factorizations of `n` into factors `> 1`.
pub fn ordered_factorizations(n: u64) -> u64 {
    if n <= 1 {
        return 1;
    }
    let mut total = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            let e = n / d;
            if d < n {
                total += ordered_factorizations(d);
            }
            if e != d && e < n {
                total += ordered_factorizations(e);
            }
        }
        d += 1;
    }
    total
}

/// `ω(n)`, the number of distinct prime factors.
pub fn omega_distinct(mut n: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    count + u32::from(n > 1)
}

/// Smallest-prime-factor sieve up to `n`.
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Prime factorization `[(p, k)]` from a sieve.
pub fn factorize(mut n: usize, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n] as usize;
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        out.push((p as u64, k));
    }
    out
}

/// Tables `[0, c_1, …, c_N]` with `c_1 = 1` and `c_n = Σ_{d|n, d>1} w(d) c_{n/d}`.
fn factorization_table(n: usize, weight: &dyn Fn(usize) -> f64) -> Vec<f64> {
    let mut c = vec![0.0; n + 1];
    if n >= 1 {
        c[1] = 1.0;
    }
    let w: Vec<f64> = (0..=n).map(|d| if d >= 2 { weight(d) } else { 0.0 }).collect();
    for m in 1..=n {
        let cm = c[m];
        if cm == 0.0 {
            continue;
        }
        let mut d = 2;
        while m * d <= n {
            c[m * d] += w[d] * cm;
            d += 1;
        }
    }
    c
}

/// The two free-product semigroups with closed-form partition functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedSystem {
    /// `N ⋆ Z/2Z` with `H ε_s = log(n₁⋯n_k)`.
    S,
    /// `Q*₊ ⋆ Z/2Z` with `H ε_υ = log(n(r₁)⋯n(r_k))`.
    Upsilon,
}

impl FromStr for ClosedSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(ClosedSystem::S),
            "Upsilon" | "upsilon" | "U" => Ok(ClosedSystem::Upsilon),
            _ => Err(Error::Domain(format!("unknown system '{s}'"))),
        }
    }
}

/// Closed form next to a truncated direct sum.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedReport {
    pub system: ClosedSystem,
    pub beta: f64,
    pub closed_form: f64,
    pub direct: SeriesValue,
}

impl ClosedReport {
    pub fn discrepancy(&self) -> f64 {
        (self.closed_form - self.direct.value).abs()
    }

    pub fn agrees(&self) -> bool {
        self.discrepancy() <= self.direct.tail_bound + 1e-9 * self.closed_form.abs()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "system": format!("{:?}", self.system),
            "beta": self.beta,
            "cutoff": self.direct.cutoff,
            "value": self.direct.value,
            "tail_bound": self.direct.tail_bound,
            "closed_form": self.closed_form,
            "discrepancy": self.discrepancy(),
            "divergent": false,
        })
    }
}

fn generating_ratio(system: ClosedSystem, beta: f64) -> f64 {
    match system {
        ClosedSystem::S => zeta_f(beta) - 1.0,
        ClosedSystem::Upsilon => zeta_f(beta).powi(2) / zeta_f(2.0 * beta) - 1.0,
    }
}

/// `β` at which the generating ratio reaches 1 and the closed form blows up.
pub fn convergence_threshold(system: ClosedSystem) -> f64 {
    threshold(&|b| generating_ratio(system, b), 1.0)
}

/// `4/(2 − ζ(β))` or `4ζ(2β)/(2ζ(2β) − ζ(β)²)`.
pub fn closed_form(system: ClosedSystem, beta: f64) -> Result<f64> {
    if !(beta > 1.0) {
        return Err(Error::Domain(format!("β must exceed 1, got {beta}")));
    }
    let g = generating_ratio(system, beta);
    if g >= 1.0 {
        return Err(Error::Divergent(format!(
            "{system:?} partition function diverges at β = {beta}: generating ratio {:.6} ≥ 1 (threshold β ≈ {:.6})",
            g + 1.0,
            convergence_threshold(system)
        )));
    }
    Ok(4.0 / (1.0 - g))
}

/// Multiplicity of eigenvalue `log n` divided by 4.
pub fn multiplicity_table(system: ClosedSystem, n: usize) -> Result<Vec<f64>> {
    guard("factorization table size", n, MAX_TABLE)?;
    Ok(match system {
        ClosedSystem::S => factorization_table(n, &|_| 1.0),
        ClosedSystem::Upsilon => {
            let spf = spf_sieve(n);
            factorization_table(n, &|d| f64::from(1u32 << factorize(d, &spf).len()))
        }
    })
}

/// `4 Σ_{n≤N} c_n n^{−β}` with a Rankin tail bound
/// `Σ_{n>N} c_n n^{−β} ≤ N^{σ−β} Σ c_n n^{−σ}`, optimized over `σ`.
pub fn direct_sum(system: ClosedSystem, beta: f64, cutoff: usize) -> Result<SeriesValue> {
    let table = multiplicity_table(system, cutoff)?;
    let mut acc = Accumulator::new();
    for (n, c) in table.iter().enumerate().skip(1) {
        if *c != 0.0 {
            acc.add(c * (n as f64).powf(-beta));
        }
    }
    let lo = convergence_threshold(system);
    let mut best = f64::INFINITY;
    for i in 1..200 {
        let sigma = lo + (beta - lo) * i as f64 / 200.0;
        let g = generating_ratio(system, sigma);
        if g < 1.0 {
            let b = (cutoff as f64).powf(sigma - beta) / (1.0 - g);
            best = best.min(b);
        }
    }
    Ok(SeriesValue {
        value: 4.0 * acc.value(),
        tail_bound: 4.0 * (best + acc.rounding_bound()),
        cutoff,
        divergent: false,
    })
}

pub fn partition_closed(system: ClosedSystem, beta: f64, cutoff: usize) -> Result<ClosedReport> {
    let closed = closed_form(system, beta)?;
    let direct = direct_sum(system, beta, cutoff)?;
    Ok(ClosedReport { system, beta, closed_form: closed, direct })
}

/// Which degree-graded semigroup to sum over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSemigroup {
    /// Multiplicity one per degree.
    BostConnes,
    /// All tree dessins, `2(d+1)^{d−1}` per degree.
    Trees,
    /// Normalized single-cycle maps, `N(d)` per degree.
    SingleCycle,
    /// Reduced words of `N ⋆ Z/2Z`, `4P_d` per degree.
    SWords,
}

impl FromStr for DegreeSemigroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bc" | "bost-connes" => Ok(DegreeSemigroup::BostConnes),
            "trees" => Ok(DegreeSemigroup::Trees),
            "single-cycle" => Ok(DegreeSemigroup::SingleCycle),
            "s-words" => Ok(DegreeSemigroup::SWords),
            _ => Err(Error::Domain(format!("unknown degree semigroup '{s}'"))),
        }
    }
}

/// Additive invariant of dessins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdditiveInvariant {
    Edges,
    Genus,
    Vertices,
    Faces,
}

impl AdditiveInvariant {
    pub fn eval(&self, d: &Dessin) -> usize {
        match self {
            AdditiveInvariant::Edges => d.degree(),
            AdditiveInvariant::Genus => d.genus(),
            AdditiveInvariant::Vertices => d.num_vertices(),
            AdditiveInvariant::Faces => d.num_faces(),
        }
    }
}

impl FromStr for AdditiveInvariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(AdditiveInvariant::Edges),
            "genus" => Ok(AdditiveInvariant::Genus),
            "vertices" => Ok(AdditiveInvariant::Vertices),
            "faces" => Ok(AdditiveInvariant::Faces),
            _ => Err(Error::Domain(format!("unknown additive invariant '{s}'"))),
        }
    }
}

/// Exponents for the profile Dirichlet series
/// `Σ h r^{−βλ} Π μ_i^{−βα} Π ν_j^{−βκ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileWeights {
    pub lambda: f64,
    pub alpha: f64,
    pub kappa: f64,
}

impl Default for ProfileWeights {
    fn default() -> Self {
        ProfileWeights { lambda: 1.0, alpha: 1.0, kappa: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EnumeratedMode {
    DegreeSemigroup(DegreeSemigroup),
    Additive(AdditiveInvariant),
    /// Number of edges, multiplicative under fibered products.
    MultiplicativeDegree,
    Profile(ProfileWeights),
}

/// Truncated formal series with its term-growth report.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumeratedReport {
    pub series: SeriesValue,
    /// Coefficients `(key, count)`: the exponent value for additive modes,
    /// the Dirichlet index otherwise.
    pub coefficients: Vec<(f64, f64)>,
    pub growth: GrowthReport,
}

impl EnumeratedReport {
    pub fn to_json(&self, system: &str, beta: f64) -> serde_json::Value {
        json!({
            "system": system,
            "beta": beta,
            "cutoff": self.series.cutoff,
            "value": self.series.value,
            "tail_bound": self.series.tail_bound,
            "closed_form": null,
            "discrepancy": null,
            "divergent": self.series.divergent,
            "coefficients": self.coefficients,
        })
    }
}

fn ln_multiplicity(sg: DegreeSemigroup, d: usize) -> Result<f64> {
    Ok(match sg {
        DegreeSemigroup::BostConnes => 0.0,
        DegreeSemigroup::Trees => 2f64.ln() + (d as f64 - 1.0) * ((d + 1) as f64).ln(),
        DegreeSemigroup::SingleCycle => {
            let n = enumerate::count_single_cycle_belyi(d)?;
            if n == 0 {
                f64::NEG_INFINITY
            } else {
                (n as f64).ln()
            }
        }
        DegreeSemigroup::SWords => (4.0 * ordered_factorizations(d as u64) as f64).ln(),
    })
}

fn all_dessins_up_to(cutoff: usize) -> Result<Vec<Dessin>> {
    guard("enumeration degree", cutoff, MAX_ENUM_DEGREE)?;
    let mut out = Vec::new();
    for d in 1..=cutoff {
        out.extend(enumerate::enumerate_dessins(d, None)?);
    }
    Ok(out)
}

pub fn partition_enumerated(mode: &EnumeratedMode, beta: f64, cutoff: usize) -> Result<EnumeratedReport> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("β must be positive, got {beta}")));
    }
    match mode {
        EnumeratedMode::DegreeSemigroup(sg) => {
            guard("degree cutoff", cutoff, series::MAX_TERMS)?;
            let mut acc = Accumulator::new();
            let mut logs = Vec::with_capacity(cutoff);
            let mut coeffs = Vec::new();
            for d in 1..=cutoff {
                let lm = ln_multiplicity(*sg, d)?;
                let lt = lm - beta * (d as f64).ln();
                logs.push((d, lt));
                if coeffs.len() < 64 {
                    coeffs.push((d as f64, lm.exp()));
                }
                acc.add(lt.exp());
            }
            let growth = growth_report(&logs);
            let divergent = growth.increasing_from.is_some() || !acc.value().is_finite();
            let tail = match (sg, divergent) {
                (_, true) => f64::INFINITY,
                (DegreeSemigroup::BostConnes, _) if beta > 1.0 => {
                    let t = series::zeta_with_cutoff(beta, cutoff + 1)?;
                    t.value - acc.value() + t.tail_bound
                }
                (DegreeSemigroup::SingleCycle, _) if beta > 3.0 => {
                    // N(d) ≤ d²/4 for d ≥ 1
                    let n = cutoff as f64;
                    0.25 * n.powf(3.0 - beta) / (beta - 3.0)
                }
                (DegreeSemigroup::SWords, _) if beta > 1.0 => {
                    let d = direct_sum(ClosedSystem::S, beta, cutoff.max(2))?;
                    d.tail_bound
                }
                _ => f64::INFINITY,
            };
            Ok(EnumeratedReport {
                series: SeriesValue { value: acc.value(), tail_bound: tail, cutoff, divergent },
                coefficients: coeffs,
                growth,
            })
        }
        EnumeratedMode::Additive(inv) => {
            let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
            for d in all_dessins_up_to(cutoff)? {
                *counts.entry(inv.eval(&d)).or_default() += 1.0;
            }
            let mut acc = Accumulator::new();
            for (k, c) in &counts {
                acc.add(c * (-beta * *k as f64).exp());
            }
            let logs: Vec<(usize, f64)> = (1..=cutoff)
                .map(|d| {
                    let n = enumerate::enumerate_dessins(d, None).map(|v| v.len()).unwrap_or(1) as f64;
                    (d, n.ln() - beta * d as f64)
                })
                .collect();
            let growth = growth_report(&logs);
            Ok(EnumeratedReport {
                series: SeriesValue {
                    value: acc.value(),
                    tail_bound: f64::INFINITY,
                    cutoff,
                    divergent: growth.increasing_from.is_some(),
                },
                coefficients: counts.into_iter().map(|(k, c)| (k as f64, c)).collect(),
                growth,
            })
        }
        EnumeratedMode::MultiplicativeDegree => {
            let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
            for d in all_dessins_up_to(cutoff)? {
                *counts.entry(d.degree()).or_default() += 1.0;
            }
            let mut acc = Accumulator::new();
            let mut logs = Vec::new();
            for (n, c) in &counts {
                acc.add(c * (*n as f64).powf(-beta));
                logs.push((*n, c.ln() - beta * (*n as f64).ln()));
            }
            let growth = growth_report(&logs);
            Ok(EnumeratedReport {
                series: SeriesValue {
                    value: acc.value(),
                    tail_bound: f64::INFINITY,
                    cutoff,
                    divergent: growth.increasing_from.is_some(),
                },
                coefficients: counts.into_iter().map(|(k, c)| (k as f64, c)).collect(),
                growth,
            })
        }
        EnumeratedMode::Profile(w) => {
            guard("covering degree", cutoff, enumerate::MAX_COVERING_DEGREE)?;
            let mut acc = Accumulator::new();
            let mut logs = Vec::new();
            let mut coeffs = Vec::new();
            for d in 1..=cutoff {
                let all = perm::all_perms(d);
                let fact = perm::factorial(d) as f64;
                let mut block = Accumulator::new();
                let mut hist: BTreeMap<(Vec<usize>, Vec<usize>, usize), u64> = BTreeMap::new();
                for a in &all {
                    let mu = perm::cycle_type(a);
                    for b in &all {
                        let r = perm::cycle_count(&perm::inverse(&perm::compose(a, b)));
                        *hist.entry((mu.clone(), perm::cycle_type(b), r)).or_default() += 1;
                    }
                }
                for ((mu, nu, r), count) in hist {
                    let h = count as f64 / fact;
                    let lw = -beta
                        * (w.lambda * (r as f64).ln()
                            + w.alpha * mu.iter().map(|&x| (x as f64).ln()).sum::<f64>()
                            + w.kappa * nu.iter().map(|&x| (x as f64).ln()).sum::<f64>());
                    block.add(h * lw.exp());
                }
                let b = block.value();
                coeffs.push((d as f64, b));
                logs.push((d, b.ln()));
                acc.add(b);
            }
            let growth = growth_report(&logs);
            Ok(EnumeratedReport {
                series: SeriesValue {
                    value: acc.value(),
                    tail_bound: f64::INFINITY,
                    cutoff,
                    divergent: growth.increasing_from.is_some(),
                },
                coefficients: coeffs,
                growth,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_counts() {
        assert_eq!(ordered_factorizations(1), 1);
        assert_eq!(ordered_factorizations(4), 2);
        assert_eq!(ordered_factorizations(8), 4);
        assert_eq!(ordered_factorizations(12), 8);
        assert_eq!(omega_distinct(12), 2);
        assert_eq!(omega_distinct(1), 0);
        let t = multiplicity_table(ClosedSystem::S, 12).unwrap();
        assert_eq!(t[12], 8.0);
    }

    #[test]
    fn closed_forms() {
        let s = partition_closed(ClosedSystem::S, 2.0, 10_000).unwrap();
        assert!((s.closed_form - 11.2663).abs() < 1e-3);
        assert!(s.agrees());
        let u = partition_closed(ClosedSystem::Upsilon, 3.0, 10_000).unwrap();
        assert!((u.closed_form - 6.900).abs() < 1e-2);
        assert!(u.agrees());
        assert!(matches!(closed_form(ClosedSystem::Upsilon, 2.0), Err(Error::Divergent(_))));
        assert!((convergence_threshold(ClosedSystem::S) - 1.7286).abs() < 1e-3);
    }

    #[test]
    fn tree_series_diverges() {
        let r = partition_enumerated(&EnumeratedMode::DegreeSemigroup(DegreeSemigroup::Trees), 10.0, 60).unwrap();
        assert!(r.series.divergent);
        let bc = partition_enumerated(&EnumeratedMode::DegreeSemigroup(DegreeSemigroup::BostConnes), 2.0, 100).unwrap();
        assert!(!bc.series.divergent);
        assert!(bc.series.contains(std::f64::consts::PI.powi(2) / 6.0, 1e-9));
    }
}
