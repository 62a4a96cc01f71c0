//! The `Ω_θ` extension: exact arithmetic in `Q(θ)` with `θ³ = n`, the
//! Hamiltonian spectrum, and truncated partition and Gibbs sums.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use super::series::Accumulator;
use crate::enumerate::count_labeled_bipartite_trees;
use crate::error::{guard, Error, Result};
use crate::ring::{q_to_string, Q};

/// Largest degree `d` summed explicitly in `Z` and Gibbs sums.
pub const MAX_THETA_DEGREE: usize = 60;

/// Element `q₀ + q₁θ + q₂θ²` of `Q(θ)`, `θ³ = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicQ {
    pub n: i64,
    pub c: [Q; 3],
}

fn qi(x: i64) -> Q {
    Q::from_integer(x.into())
}

impl CubicQ {
    pub fn new(n: i64, c0: Q, c1: Q, c2: Q) -> Self {
        CubicQ { n, c: [c0, c1, c2] }
    }

    pub fn rational(n: i64, q: Q) -> Self {
        CubicQ::new(n, q, Q::zero(), Q::zero())
    }

    pub fn theta(n: i64) -> Self {
        CubicQ::new(n, Q::zero(), Q::one(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Q) -> CubicQ {
        CubicQ { n: self.n, c: [&self.c[0] * k, &self.c[1] * k, &self.c[2] * k] }
    }

    pub fn to_f64(&self) -> f64 {
        let t = (self.n as f64).cbrt();
        let f = |q: &Q| q.to_f64().unwrap_or(f64::NAN);
        f(&self.c[0]) + f(&self.c[1]) * t + f(&self.c[2]) * t * t
    }
}

impl Add for &CubicQ {
    type Output = CubicQ;
    fn add(self, o: &CubicQ) -> CubicQ {
        CubicQ { n: self.n, c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2]] }
    }
}

impl Sub for &CubicQ {
    type Output = CubicQ;
    fn sub(self, o: &CubicQ) -> CubicQ {
        self + &(-o)
    }
}

impl Neg for &CubicQ {
    type Output = CubicQ;
    fn neg(self) -> CubicQ {
        CubicQ { n: self.n, c: [-&self.c[0], -&self.c[1], -&self.c[2]] }
    }
}

impl Mul for &CubicQ {
    type Output = CubicQ;
    fn mul(self, o: &CubicQ) -> CubicQ {
        let mut r = [Q::zero(), Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        for i in 0..3 {
            for j in 0..3 {
                r[i + j] += &self.c[i] * &o.c[j];
            }
        }
        let n = qi(self.n);
        CubicQ {
            n: self.n,
            c: [&r[0] + &r[3] * &n, &r[1] + &r[4] * &n, r[2].clone()],
        }
    }
}

impl fmt::Display for CubicQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}θ + {}θ²", q_to_string(&self.c[0]), q_to_string(&self.c[1]), q_to_string(&self.c[2]))
    }
}

/// The field `Q(θ)` with `θ = n^{1/3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaField {
    n: i64,
}

impl Default for ThetaField {
    fn default() -> Self {
        ThetaField { n: 2 }
    }
}

impl ThetaField {
    /// Rejects `n` whose cube root is rational, where `{1, θ, θ²}` is dependent.
    pub fn new(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("θ = {n}^(1/3) must exceed 1")));
        }
        let r = (n as f64).cbrt().round() as i64;
        if (r - 1..=r + 1).any(|k| k * k * k == n) {
            return Err(Error::Domain(format!("θ = {n}^(1/3) is rational; {{1, θ, θ²}} is dependent")));
        }
        Ok(ThetaField { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn theta_f64(&self) -> f64 {
        (self.n as f64).cbrt()
    }

    pub fn elem(&self, lam: &OmegaThetaElem) -> CubicQ {
        CubicQ::new(self.n, qi(lam.b as i64), qi(lam.a as i64), Q::zero())
    }
}

/// `λ = aθ + b` with `a ≥ 1`, `b ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaThetaElem {
    pub a: u64,
    pub b: u64,
}

impl OmegaThetaElem {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::Domain("Ω_θ elements need a ≥ 1".into()));
        }
        Ok(OmegaThetaElem { a, b })
    }

    pub fn theta() -> Self {
        OmegaThetaElem { a: 1, b: 0 }
    }

    pub fn to_f64(&self, field: &ThetaField) -> f64 {
        self.a as f64 * field.theta_f64() + self.b as f64
    }
}

impl fmt::Display for OmegaThetaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}θ + {}", self.a, self.b)
    }
}

fn check_dm(d: usize, m: usize) -> Result<()> {
    if d == 0 || m == 0 || m > d {
        return Err(Error::Domain(format!("need 1 ≤ m ≤ d, got d = {d}, m = {m}")));
    }
    Ok(())
}

/// `α(λ) = dλ + m − 1`.
pub fn alpha_act(d: usize, m: usize, lam: OmegaThetaElem) -> Result<OmegaThetaElem> {
    check_dm(d, m)?;
    OmegaThetaElem::new(d as u64 * lam.a, d as u64 * lam.b + m as u64 - 1)
}

/// Whether `α⁻¹(λ) = (aθ + b + 1 − m)/d` lies in `Ω_θ`.
pub fn alpha_inv_membership(d: usize, m: usize, lam: OmegaThetaElem) -> Result<Option<OmegaThetaElem>> {
    check_dm(d, m)?;
    let (d, m) = (d as u64, m as u64);
    if lam.a % d != 0 || lam.b + 1 < m || (lam.b + 1 - m) % d != 0 {
        return Ok(None);
    }
    Ok(Some(OmegaThetaElem { a: lam.a / d, b: (lam.b + 1 - m) / d }))
}

/// `#T_{d,m}`.
pub fn tree_count(d: usize, m: usize) -> Result<u128> {
    check_dm(d, m)?;
    count_labeled_bipartite_trees(d, Some(m))
}

/// `M(d, m, λ)` in the printed form: 1 for `d = 1`, else `2 + #T_{d,m}`.
pub fn multiplicity(d: usize, m: usize, _lam: OmegaThetaElem) -> Result<u128> {
    check_dm(d, m)?;
    if d == 1 {
        return Ok(1);
    }
    Ok(2 + tree_count(d, m)?)
}

/// `(F(α(λ)) − F(θ))·log d` for `d > 1`, `F(λ) − F(θ)` for `d = 1`, with
/// `F(x) = x²`; the algebraic part is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub algebraic: CubicQ,
    /// `None` for `d = 1`.
    pub log_of: Option<u64>,
}

impl Eigenvalue {
    pub fn to_f64(&self) -> f64 {
        self.algebraic.to_f64() * self.log_of.map_or(1.0, |d| (d as f64).ln())
    }

    /// Exact equality: independent logarithms never match; dependent ones
    /// `d = δ^k`, `d′ = δ^ℓ` compare `k·q = ℓ·q′`.
    pub fn exactly_equal(&self, other: &Eigenvalue) -> bool {
        match (self.log_of, other.log_of) {
            (None, None) => self.algebraic == other.algebraic,
            (None, Some(_)) | (Some(_), None) => self.algebraic.is_zero() && other.algebraic.is_zero(),
            (Some(d1), Some(d2)) => {
                let (b1, k1) = perfect_power(d1);
                let (b2, k2) = perfect_power(d2);
                if b1 != b2 {
                    return self.algebraic.is_zero() && other.algebraic.is_zero();
                }
                self.algebraic.scale(&qi(k1 as i64)) == other.algebraic.scale(&qi(k2 as i64))
            }
        }
    }
}

/// `d = base^k` with `k` maximal.
pub fn perfect_power(d: u64) -> (u64, u32) {
    if d < 4 {
        return (d, 1);
    }
    for k in (2..=63u32).rev() {
        let r = (d as f64).powf(1.0 / f64::from(k)).round() as u64;
        for c in r.saturating_sub(1).max(2)..=r + 1 {
            if c.checked_pow(k) == Some(d) {
                return (c, k);
            }
        }
    }
    (d, 1)
}

pub fn eigenvalue(field: &ThetaField, d: usize, m: usize, lam: OmegaThetaElem) -> Result<Eigenvalue> {
    let x = if d == 1 { lam } else { alpha_act(d, m, lam)? };
    let xe = field.elem(&x);
    let t = CubicQ::theta(field.n);
    let algebraic = &(&xe * &xe) - &(&t * &t);
    Ok(Eigenvalue { algebraic, log_of: if d == 1 { None } else { Some(d as u64) } })
}

/// One `(d, m, λ)` label of the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralLabel {
    pub d: usize,
    pub m: usize,
    pub lam: OmegaThetaElem,
}

/// Whether the case analysis of the multiplicity count permits the two
/// labels to share an eigenvalue.
pub fn coincidence_allowed(x: &SpectralLabel, y: &SpectralLabel) -> bool {
    if x.d != y.d || x.lam.a != y.lam.a {
        return false;
    }
    let same = x.m == y.m && x.lam.b == y.lam.b;
    let up = x.m == 1 && y.m == x.d && y.lam.b + 1 == x.lam.b;
    let down = x.m == x.d && y.m == 1 && y.lam.b == x.lam.b + 1;
    same || up || down
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub labels: usize,
    pub groups: Vec<Vec<SpectralLabel>>,
    /// Equal eigenvalues outside the permitted cases.
    pub unexpected: Vec<(SpectralLabel, SpectralLabel)>,
    /// Partner pairs the case analysis names that are not in fact equal.
    pub predicted_not_equal: Vec<(SpectralLabel, SpectralLabel)>,
}

impl CensusReport {
    pub fn consistent(&self) -> bool {
        self.unexpected.is_empty()
    }

    pub fn max_group(&self) -> usize {
        self.groups.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let lab = |l: &SpectralLabel| json!({"d": l.d, "m": l.m, "a": l.lam.a, "b": l.lam.b});
        json!({
            "labels": self.labels,
            "groups": self.groups.len(),
            "max_group": self.max_group(),
            "consistent": self.consistent(),
            "unexpected": self.unexpected.iter().map(|(x, y)| json!([lab(x), lab(y)])).collect::<Vec<_>>(),
            "predicted_not_equal": self.predicted_not_equal.len(),
        })
    }
}

/// Groups all labels `d ≤ max_d`, `m ≤ d`, `1 ≤ a ≤ max_a`, `0 ≤ b ≤ max_b`
/// by exact eigenvalue equality.
pub fn census(field: &ThetaField, max_d: usize, max_a: u64, max_b: u64) -> Result<CensusReport> {
    guard("census degree", max_d, 12)?;
    let mut labels = Vec::new();
    for d in 1..=max_d {
        for m in 1..=d {
            if d == 1 && m != 1 {
                continue;
            }
            for a in 1..=max_a {
                for b in 0..=max_b {
                    labels.push(SpectralLabel { d, m, lam: OmegaThetaElem { a, b } });
                }
            }
        }
    }
    let eig: Vec<Eigenvalue> = labels.iter().map(|l| eigenvalue(field, l.d, l.m, l.lam)).collect::<Result<_>>()?;
    let mut group_of = vec![usize::MAX; labels.len()];
    let mut groups: Vec<Vec<SpectralLabel>> = Vec::new();
    let mut unexpected = Vec::new();
    let mut predicted_not_equal = Vec::new();
    for i in 0..labels.len() {
        for j in 0..i {
            let eq = eig[i].exactly_equal(&eig[j]);
            if eq {
                if group_of[i] == usize::MAX {
                    group_of[i] = group_of[j];
                }
                if !coincidence_allowed(&labels[i], &labels[j]) && !coincidence_allowed(&labels[j], &labels[i]) {
                    unexpected.push((labels[i], labels[j]));
                }
            } else if labels[i].d > 1
                && (coincidence_allowed(&labels[i], &labels[j]) || coincidence_allowed(&labels[j], &labels[i]))
            {
                predicted_not_equal.push((labels[i], labels[j]));
            }
        }
        if group_of[i] == usize::MAX {
            group_of[i] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[i]].push(labels[i]);
    }
    Ok(CensusReport { labels: labels.len(), groups, unexpected, predicted_not_equal })
}

/// Whether the `d > 1` blocks of `Z` carry the `−F(θ)` shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZConvention {
    /// `e^{−β(F(α(λ)) − F(θ))}` in every block, matching the Hamiltonian.
    Shifted,
    /// `e^{−βF(α(λ))}` for `d > 1`.
    Printed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZReport {
    pub beta: f64,
    pub convention: ZConvention,
    pub value: f64,
    pub tail_bound: f64,
    /// Partial sums `Z_{≤D}` for `D = 1, 2, …`.
    pub partial_sums: Vec<f64>,
    /// Bounds on `Σ_{d > D}` for the same `D`.
    pub block_tails: Vec<f64>,
}

impl ZReport {
    pub fn monotone(&self) -> bool {
        self.partial_sums.windows(2).all(|w| w[1] >= w[0]) && self.block_tails.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "system": "Omega_theta",
            "beta": self.beta,
            "convention": format!("{:?}", self.convention),
            "cutoff": self.partial_sums.len(),
            "value": self.value,
            "tail_bound": self.tail_bound,
            "closed_form": null,
            "discrepancy": null,
            "divergent": false,
            "partial_sums": self.partial_sums,
            "block_tails": self.block_tails,
        })
    }
}

/// `Σ_{a ≥ 1, b ≥ 0} e^{−βx²}` with `x = d(aθ + b) + m − 1`, truncated at
/// `a, b ≤ n`, and a bound on the remainder from `x² ≥ x₀x`, `x₀ = dθ + m − 1`.
fn lattice_block(theta: f64, beta: f64, d: f64, m: f64, ln_shift: f64) -> (f64, f64) {
    let x0 = d * theta + m - 1.0;
    let ra = (-beta * x0 * d * theta).exp();
    let rb = (-beta * x0 * d).exp();
    let c = (-beta * x0 * (m - 1.0) + ln_shift).exp();
    // smallest n with the remainder below 1e-18 of the first term
    let mut n = 1u32;
    let rem = |n: u32| {
        let tail_a = ra.powi(n as i32 + 1) / (1.0 - ra) / (1.0 - rb);
        let tail_b = ra / (1.0 - ra) * rb.powi(n as i32 + 1) / (1.0 - rb);
        c * (tail_a + tail_b)
    };
    let first = (-beta * (x0 * x0) + ln_shift).exp();
    while rem(n) > 1e-18 * first.max(f64::MIN_POSITIVE) && n < 4096 {
        n *= 2;
    }
    let mut acc = Accumulator::new();
    for a in 1..=n {
        for b in 0..=n {
            let x = d * (f64::from(a) * theta + f64::from(b)) + m - 1.0;
            let t = (-beta * x * x + ln_shift).exp();
            if t == 0.0 {
                break;
            }
            acc.add(t);
        }
    }
    (acc.value(), rem(n) + acc.rounding_bound())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 1.0) {
        return Err(Error::Domain(format!("β must exceed 1, got {beta}")));
    }
    Ok(())
}

fn tree_weight(d: usize, m: usize) -> f64 {
    tree_count(d, m).map(|t| t as f64).unwrap_or(f64::INFINITY)
}

/// Per-degree sum `Σ_m w(d,m) Σ_λ …`, with the degree factor `d^{−β}`.
fn degree_block(
    field: &ThetaField,
    beta: f64,
    d: usize,
    convention: ZConvention,
    mult: &dyn Fn(usize, usize) -> f64,
) -> (f64, f64) {
    let theta = field.theta_f64();
    let f_theta = theta * theta;
    let shift = match (d, convention) {
        (1, _) | (_, ZConvention::Shifted) => beta * f_theta,
        (_, ZConvention::Printed) => 0.0,
    };
    let df = d as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    for m in 1..=d {
        let (v, e) = lattice_block(theta, beta, df, m as f64, shift);
        let w = mult(d, m) * df.powf(-beta);
        value += w * v;
        err += w * e;
    }
    (value, err)
}

fn printed_mult(d: usize, m: usize) -> f64 {
    if d == 1 {
        1.0
    } else {
        2.0 + tree_weight(d, m)
    }
}

/// Bound on `Σ_{d > D}` of a degree block, using `Σ_m (2 + #T_{d,m}) ≤ 2d + 2(d+1)^{d−1}`
/// and `x ≥ dθ`.
fn degree_tail(field: &ThetaField, beta: f64, from: usize, convention: ZConvention) -> f64 {
    let theta = field.theta_f64();
    let shift = match convention {
        ZConvention::Shifted => beta * theta * theta,
        ZConvention::Printed => 0.0,
    };
    let mut total = 0.0;
    let mut d = from + 1;
    loop {
        let df = d as f64;
        let ra = (-beta * df * theta * df * theta).exp();
        let rb = (-beta * df * theta * df).exp();
        let ln_mult = (2.0 * df + 2.0 * (df + 1.0).powf(df - 1.0)).ln();
        let ln_term = ln_mult - beta * df.ln() + shift + ra.ln() - (1.0 - ra).ln() - (1.0 - rb).ln();
        let term = ln_term.exp();
        total += term;
        if term < 1e-30 * total.max(f64::MIN_POSITIVE) || ln_term < -745.0 {
            // remaining terms shrink faster than geometrically with ratio < 1/2
            total += term;
            break;
        }
        d += 1;
    }
    total
}

/// Truncated `Z(β) = Σ M e^{−β(F(α(λ)) − F(θ))} d^{−β}` over `d ≤ cutoff`.
pub fn z_extended(field: &ThetaField, beta: f64, cutoff: usize, convention: ZConvention) -> Result<ZReport> {
    check_beta(beta)?;
    guard("Ω_θ degree cutoff", cutoff, MAX_THETA_DEGREE)?;
    let mut acc = Accumulator::new();
    let mut err = 0.0;
    let mut partial_sums = Vec::new();
    let mut block_tails = Vec::new();
    for d in 1..=cutoff.max(1) {
        let (v, e) = degree_block(field, beta, d, convention, &printed_mult);
        acc.add(v);
        err += e;
        partial_sums.push(acc.value());
        block_tails.push(degree_tail(field, beta, d, convention));
    }
    let tail = *block_tails.last().unwrap_or(&f64::INFINITY);
    Ok(ZReport {
        beta,
        convention,
        value: acc.value(),
        tail_bound: tail + err + acc.rounding_bound(),
        partial_sums,
        block_tails,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedGibbs {
    /// Normalized by the matching trace, `#T_{d,m}` maps per `(d, m)`.
    pub value: f64,
    /// `ψ − φ(D)`, summed term by term.
    pub deviation: f64,
    /// The same numerator normalized by the printed `Z`.
    pub printed_normalization: f64,
    pub z_state: f64,
    pub z_printed: f64,
}

impl ExtendedGibbs {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "value": self.value,
            "deviation": self.deviation,
            "printed_normalization": self.printed_normalization,
            "z_state": self.z_state,
            "z_printed": self.z_printed,
        })
    }
}

/// `ψ_{β,φ}(D)` for a character that depends only on the edge count,
/// `#E(η(D)) = deg(η)·#E(D)`.
pub fn gibbs_extended(
    field: &ThetaField,
    edges: usize,
    phi: &dyn Fn(usize) -> f64,
    beta: f64,
    cutoff: usize,
) -> Result<ExtendedGibbs> {
    check_beta(beta)?;
    guard("Ω_θ degree cutoff", cutoff, MAX_THETA_DEGREE)?;
    let trees = |d: usize, m: usize| if d == 1 { 1.0 } else { tree_weight(d, m) };
    let ground = phi(edges);
    let mut num = Accumulator::new();
    let mut dev = Accumulator::new();
    let mut z_state = Accumulator::new();
    for d in 1..=cutoff.max(1) {
        let (v, _) = degree_block(field, beta, d, ZConvention::Shifted, &trees);
        let p = phi(d * edges);
        if !p.is_finite() {
            return Err(Error::Domain(format!("unbounded character at {} edges", d * edges)));
        }
        num.add(p * v);
        dev.add((p - ground) * v);
        z_state.add(v);
    }
    let z_printed = z_extended(field, beta, cutoff, ZConvention::Printed)?.value;
    Ok(ExtendedGibbs {
        value: num.value() / z_state.value(),
        deviation: dev.value() / z_state.value(),
        printed_normalization: num.value() / z_printed,
        z_state: z_state.value(),
        z_printed,
    })
}

/// `Q(θ)` value of `F(λ) = λ²`.
pub fn f_exact(field: &ThetaField, lam: OmegaThetaElem) -> CubicQ {
    let x = field.elem(&lam);
    &x * &x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let f = ThetaField::default();
        let t = CubicQ::theta(f.n());
        let t3 = &(&t * &t) * &t;
        assert_eq!(t3, CubicQ::rational(2, qi(2)));
        assert!(ThetaField::new(8).is_err());
        assert!(ThetaField::new(27).is_err());
        assert!(ThetaField::new(3).is_ok());
    }

    #[test]
    fn alpha_and_membership() {
        let two_theta = alpha_act(2, 1, OmegaThetaElem::theta()).unwrap();
        assert_eq!(two_theta, OmegaThetaElem { a: 2, b: 0 });
        assert_eq!(alpha_inv_membership(2, 1, two_theta).unwrap(), Some(OmegaThetaElem::theta()));
        assert_eq!(alpha_inv_membership(2, 2, two_theta).unwrap(), None);
        assert_eq!(multiplicity(2, 1, OmegaThetaElem::theta()).unwrap(), 3);
        assert_eq!(multiplicity(1, 1, OmegaThetaElem::theta()).unwrap(), 1);
    }

    #[test]
    fn spectrum_census() {
        let f = ThetaField::default();
        let r = census(&f, 4, 3, 3).unwrap();
        assert!(r.consistent());
        assert_eq!(r.labels, r.groups.iter().map(Vec::len).sum::<usize>());
        assert_eq!(r.max_group(), 1);
        assert_eq!(perfect_power(8), (2, 3));
        assert_eq!(perfect_power(12), (12, 1));
        let e = eigenvalue(&f, 2, 1, OmegaThetaElem::theta()).unwrap();
        assert!((e.to_f64() - 3.0 * 2f64.cbrt().powi(2) * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn partition_and_limit() {
        let f = ThetaField::default();
        let z = z_extended(&f, 2.0, 6, ZConvention::Shifted).unwrap();
        assert!(z.monotone());
        assert!(z.value >= 1.0);
        let mut prev = f64::INFINITY;
        for beta in [5.0, 10.0, 20.0] {
            let g = gibbs_extended(&f, 1, &|e| 0.5f64.powi(e as i32), beta, 6).unwrap();
            let gap = g.deviation.abs();
            assert!(gap < prev && gap > 0.0);
            assert!((g.value - 0.5).abs() < 1e-9);
            prev = gap;
        }
    }
}
