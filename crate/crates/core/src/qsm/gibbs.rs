//! Gibbs states on Puiseux test functions, and the point maps of semigroup words.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use super::partition::{factorize, spf_sieve};
use super::series::{self, Accumulator, SeriesValue, MAX_TERMS};
use crate::belyi::{Letter, SemigroupWord};
use crate::error::{guard, Error, Result};
use crate::ring::{parse_q, q_to_string, Q};

/// `Σ a_k t^{k/N}` with `k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxPoly {
    denom: u32,
    terms: BTreeMap<u32, Q>,
}

impl PuiseuxPoly {
    pub fn new(denom: u32, terms: impl IntoIterator<Item = (u32, Q)>) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Domain("Puiseux denominator must be positive".into()));
        }
        let mut map: BTreeMap<u32, Q> = BTreeMap::new();
        for (k, a) in terms {
            *map.entry(k).or_insert_with(Q::zero) += a;
        }
        map.retain(|_, a| !a.is_zero());
        Ok(Self::normalized(denom, map))
    }

    fn normalized(denom: u32, terms: BTreeMap<u32, Q>) -> Self {
        let g = terms.keys().fold(denom, |g, &k| num_integer::gcd(g, k));
        let g = g.max(1);
        PuiseuxPoly { denom: denom / g, terms: terms.into_iter().map(|(k, a)| (k / g, a)).collect() }
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        PuiseuxPoly::new(1, [(1, Q::one())]).expect("valid")
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn terms(&self) -> &BTreeMap<u32, Q> {
        &self.terms
    }

    pub fn constant(&self) -> Q {
        self.terms.get(&0).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = f64::from(self.denom);
        self.terms
            .iter()
            .map(|(k, a)| q_f64(a) * if *k == 0 { 1.0 } else { t.powf(f64::from(*k) / n) })
            .sum()
    }

    /// `Σ |a_k|`, a bound on `|h|` over `[0, 1]`.
    pub fn abs_sum(&self) -> f64 {
        self.terms.values().map(|a| q_f64(a).abs()).sum()
    }
}

fn q_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl FromStr for PuiseuxPoly {
    type Err = Error;
    /// Sums of terms `c`, `c*t`, `t^e`, `c*t^(p/q)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Domain("empty Puiseux expression".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0;
        for c in compact.chars() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (c == '+' || c == '-') && depth == 0 && !cur.ends_with('^') {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                }
                neg = c == '-';
            } else {
                cur.push(c);
            }
        }
        if !cur.is_empty() {
            pieces.push((neg, cur));
        }
        let mut raw: Vec<(Q, Q)> = Vec::new();
        for (neg, p) in pieces {
            let (coef, exp) = match p.find('t') {
                None => (parse_q(&p)?, Q::zero()),
                Some(i) => {
                    let c = p[..i].trim_end_matches('*');
                    let coef = if c.is_empty() { Q::one() } else { parse_q(c)? };
                    let rest = &p[i + 1..];
                    let exp = if rest.is_empty() {
                        Q::one()
                    } else if let Some(e) = rest.strip_prefix('^') {
                        parse_q(e.trim_start_matches('(').trim_end_matches(')'))?
                    } else {
                        return Err(Error::Domain(format!("bad Puiseux term '{p}'")));
                    };
                    (coef, exp)
                }
            };
            if exp.is_negative() {
                return Err(Error::Domain(format!("negative exponent in '{p}'")));
            }
            raw.push((if neg { -coef } else { coef }, exp));
        }
        let denom = raw.iter().fold(1u32, |l, (_, e)| {
            num_integer::lcm(l, e.denom().to_u32().unwrap_or(1))
        });
        let terms = raw.into_iter().map(|(c, e)| {
            let k = (e * Q::from_integer(denom.into())).to_integer().to_u32().unwrap_or(0);
            (k, c)
        });
        PuiseuxPoly::new(denom, terms)
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, a)| {
                let e = Q::new((*k).into(), self.denom.into());
                match (e.is_zero(), e.is_one()) {
                    (true, _) => q_to_string(a),
                    (_, true) => format!("{}*t", q_to_string(a)),
                    _ => format!("{}*t^({})", q_to_string(a), q_to_string(&e)),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Nested radical expression in `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum NestedExpr {
    T,
    Const(Q),
    Pow(Box<NestedExpr>, Q),
    OneMinus(Box<NestedExpr>),
    Sum(Vec<NestedExpr>),
    Product(Vec<NestedExpr>),
}

impl NestedExpr {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            NestedExpr::T => t,
            NestedExpr::Const(c) => q_f64(c),
            NestedExpr::Pow(e, r) => e.eval(t).powf(q_f64(r)),
            NestedExpr::OneMinus(e) => 1.0 - e.eval(t),
            NestedExpr::Sum(v) => v.iter().map(|e| e.eval(t)).sum(),
            NestedExpr::Product(v) => v.iter().map(|e| e.eval(t)).product(),
        }
    }

    /// Substitutes `inner` for `t`.
    pub fn substitute(&self, inner: &NestedExpr) -> NestedExpr {
        match self {
            NestedExpr::T => inner.clone(),
            NestedExpr::Const(c) => NestedExpr::Const(c.clone()),
            NestedExpr::Pow(e, r) => NestedExpr::Pow(Box::new(e.substitute(inner)), r.clone()),
            NestedExpr::OneMinus(e) => NestedExpr::OneMinus(Box::new(e.substitute(inner))),
            NestedExpr::Sum(v) => NestedExpr::Sum(v.iter().map(|e| e.substitute(inner)).collect()),
            NestedExpr::Product(v) => NestedExpr::Product(v.iter().map(|e| e.substitute(inner)).collect()),
        }
    }
}

impl fmt::Display for NestedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedExpr::T => write!(f, "t"),
            NestedExpr::Const(c) => write!(f, "{}", q_to_string(c)),
            NestedExpr::Pow(e, r) => write!(f, "({e})^({})", q_to_string(r)),
            NestedExpr::OneMinus(e) => write!(f, "(1 - {e})"),
            NestedExpr::Sum(v) => {
                let s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", s.join(" + "))
            }
            NestedExpr::Product(v) => {
                let s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", s.join("*"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PuiseuxExpr {
    Poly(PuiseuxPoly),
    Nested(NestedExpr),
}

impl PuiseuxExpr {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            PuiseuxExpr::Poly(p) => p.eval(t),
            PuiseuxExpr::Nested(e) => e.eval(t),
        }
    }
}

impl From<PuiseuxPoly> for PuiseuxExpr {
    fn from(p: PuiseuxPoly) -> Self {
        PuiseuxExpr::Poly(p)
    }
}

impl From<NestedExpr> for PuiseuxExpr {
    fn from(e: NestedExpr) -> Self {
        PuiseuxExpr::Nested(e)
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Domain(format!("τ must lie in (0, 1), got {tau}")));
    }
    Ok(())
}

/// The point map `t ↦ ρ(t)` of a word, the leftmost letter applied first:
/// `μ_r` acts by `t ↦ t^r` and `F` by `t ↦ 1 − t`.
pub fn point_map(word: &SemigroupWord) -> NestedExpr {
    word.letters().into_iter().fold(NestedExpr::T, |acc, l| match l {
        Letter::F => NestedExpr::OneMinus(Box::new(acc)),
        Letter::Mu(r) => NestedExpr::Pow(Box::new(acc), r),
    })
}

/// Value of `h(ρ(τ))` with a forward rounding estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NestedValue {
    pub value: f64,
    pub point: f64,
    pub error_estimate: f64,
}

/// `σ_υ(h)(τ)` by structural recursion over the word.
pub fn nested_eval(word: &SemigroupWord, h: &PuiseuxExpr, tau: f64) -> Result<NestedValue> {
    check_tau(tau)?;
    let mut x = tau;
    let mut err = 0.0f64;
    for l in word.letters() {
        match l {
            Letter::F => {
                // absolute error carries over; relative error grows by x/(1−x)
                x = 1.0 - x;
                err += f64::EPSILON;
            }
            Letter::Mu(r) => {
                let rf = q_f64(&r);
                let y = x.powf(rf);
                err = err * rf * y / x + f64::EPSILON * y;
                x = y;
            }
        }
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Contract(format!("intermediate value {x} left (0, 1) in word {word}")));
        }
    }
    let value = h.eval(x);
    Ok(NestedValue { value, point: x, error_estimate: err + f64::EPSILON * value.abs() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GibbsMode {
    /// Over `N ⋆ Z/2Z`, normalized by `ζ(β)`.
    N,
    /// Over `Q*₊ ⋆ Z/2Z`, normalized by `ζ(β)²/ζ(2β)`.
    Q,
}

impl FromStr for GibbsMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "N" | "n" => Ok(GibbsMode::N),
            "Q" | "q" => Ok(GibbsMode::Q),
            _ => Err(Error::Domain(format!("unknown Gibbs mode '{s}'"))),
        }
    }
}

/// A Gibbs value computed twice.
#[derive(Clone, Debug, PartialEq)]
pub struct GibbsReport {
    pub mode: GibbsMode,
    pub tau: f64,
    pub beta: f64,
    pub direct: SeriesValue,
    pub closed: SeriesValue,
}

impl GibbsReport {
    pub fn gap(&self) -> f64 {
        (self.direct.value - self.closed.value).abs()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "mode": format!("{:?}", self.mode),
            "tau": self.tau,
            "beta": self.beta,
            "direct": self.direct.to_json(),
            "closed": self.closed.to_json(),
            "gap": self.gap(),
        })
    }
}

/// `(a₀ζ(β) + Σ_{k>0} a_k Li_β(τ^{k/N}))` with its error.
fn polylog_combination(h: &PuiseuxPoly, tau: f64, beta: f64, tol: f64) -> Result<(f64, f64)> {
    let mut acc = Accumulator::new();
    let mut err = 0.0;
    let n = f64::from(h.denom());
    for (k, a) in h.terms() {
        let a = q_f64(a);
        let v = if *k == 0 {
            series::zeta(beta, tol)?
        } else {
            series::polylog(beta, tau.powf(f64::from(*k) / n), tol)?
        };
        acc.add(a * v.value);
        err += a.abs() * v.tail_bound;
    }
    Ok((acc.value(), err + acc.rounding_bound()))
}

/// Divides a value with error by a positive value with error.
fn divide(v: (f64, f64), z: SeriesValue) -> (f64, f64) {
    let q = v.0 / z.value;
    let e = v.1 / z.value + q.abs() * z.tail_bound / (z.value - z.tail_bound);
    (q, e)
}

/// `φ_{τ,β}(h)` by direct summation over the semigroup and by the
/// polylogarithm closed form.
pub fn gibbs(mode: GibbsMode, h: &PuiseuxPoly, tau: f64, beta: f64, tol: f64, cutoff: usize) -> Result<GibbsReport> {
    check_tau(tau)?;
    if !(beta > 1.0) {
        return Err(Error::Domain(format!("β must exceed 1, got {beta}")));
    }
    guard("Gibbs cutoff", cutoff, MAX_TERMS)?;
    let z = series::zeta(beta, tol * 1e-3)?;
    match mode {
        GibbsMode::N => {
            let closed = divide(polylog_combination(h, tau, beta, tol * 1e-3)?, z);
            // Σ_n h(τⁿ) n^{−β}; terms with k > 0 decay geometrically
            let n = f64::from(h.denom());
            let a0 = q_f64(&h.constant());
            let mut count = 16;
            let (value, err) = loop {
                let mut acc = Accumulator::new();
                for m in 1..=count {
                    acc.add((h.eval(tau.powi(m as i32)) - a0) * (m as f64).powf(-beta));
                }
                let next = (count + 1) as f64;
                let tail: f64 = h
                    .terms()
                    .iter()
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, a)| {
                        let q = tau.powf(f64::from(*k) / n);
                        q_f64(a).abs() * q.powf(next) * next.powf(-beta) / (1.0 - q)
                    })
                    .sum();
                let err = tail + acc.rounding_bound() + a0.abs() * z.tail_bound;
                if err <= tol * 0.1 || count >= MAX_TERMS.min(cutoff.max(16)) {
                    break (acc.value() + a0 * z.value, err);
                }
                count *= 2;
            };
            let direct = divide((value, err), z);
            Ok(GibbsReport {
                mode,
                tau,
                beta,
                direct: SeriesValue { value: direct.0, tail_bound: direct.1, cutoff: count, divergent: false },
                closed: SeriesValue { value: closed.0, tail_bound: closed.1, cutoff: 0, divergent: false },
            })
        }
        GibbsMode::Q => {
            let z2 = series::zeta(2.0 * beta, tol * 1e-3)?;
            let tr = z.value * z.value / z2.value;
            let tr_err = 3.0 * tr * (z.tail_bound / z.value + z2.tail_bound / z2.value);
            let combo = polylog_combination(h, tau, beta, tol * 1e-3)?;
            let closed = (combo.0 / tr, combo.1 / tr + combo.0.abs() * tr_err / (tr * tr));
            let spf = spf_sieve(cutoff);
            let mut acc = Accumulator::new();
            let mut weights = Accumulator::new();
            for m in 1..=cutoff {
                let fac = factorize(m, &spf);
                let w = (m as f64).powf(-beta);
                let mut inner = Accumulator::new();
                for mask in 0u32..(1 << fac.len()) {
                    // r = Π p^{±e}
                    let mut ln_r = 0.0;
                    for (i, (p, e)) in fac.iter().enumerate() {
                        let s = if mask >> i & 1 == 1 { -1.0 } else { 1.0 };
                        ln_r += s * f64::from(*e) * (*p as f64).ln();
                    }
                    inner.add(h.eval(tau.powf(ln_r.exp())));
                }
                acc.add(w * inner.value());
                weights.add(w * f64::from(1u32 << fac.len()));
            }
            let tail = h.abs_sum() * ((tr - weights.value()).max(0.0) + tr_err);
            let value = acc.value() / tr;
            let err = (tail + acc.rounding_bound()) / tr + value.abs() * tr_err / tr;
            Ok(GibbsReport {
                mode,
                tau,
                beta,
                direct: SeriesValue { value, tail_bound: err, cutoff, divergent: false },
                closed: SeriesValue { value: closed.0, tail_bound: closed.1, cutoff: 0, divergent: false },
            })
        }
    }
}

/// `h` evaluated after the word's point map, as a formal substitution.
pub fn transported(word: &SemigroupWord, h: &NestedExpr) -> NestedExpr {
    h.substitute(&point_map(word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsm::series::zeta_f;

    #[test]
    fn puiseux_parse() {
        let p: PuiseuxPoly = "t + t^2".parse().unwrap();
        assert_eq!(p.denom(), 1);
        assert!((p.eval(0.5) - 0.75).abs() < 1e-15);
        let q: PuiseuxPoly = "3/2*t^(1/2) - 1".parse().unwrap();
        assert_eq!(q.denom(), 2);
        assert!((q.eval(0.25) - (-0.25)).abs() < 1e-15);
    }

    #[test]
    fn nested_examples() {
        let t = PuiseuxExpr::Poly(PuiseuxPoly::t());
        let f: SemigroupWord = "F".parse().unwrap();
        assert!((nested_eval(&f, &t, 0.25).unwrap().value - 0.75).abs() < 1e-15);
        let m2: SemigroupWord = "mu2".parse().unwrap();
        assert!((nested_eval(&m2, &t, 0.5).unwrap().value - 0.25).abs() < 1e-15);
        let w: SemigroupWord = "mu1/2 F mu1/3 F".parse().unwrap();
        let v = nested_eval(&w, &t, 0.25).unwrap();
        assert!((v.value - (1.0 - 0.5f64.powf(1.0 / 3.0))).abs() < 1e-14);
        assert!((v.value - 0.20630).abs() < 1e-5);
        assert!((transported(&w, &NestedExpr::T).eval(0.25) - v.value).abs() < 1e-15);
        assert!(nested_eval(&w, &t, 1.5).is_err());
    }

    #[test]
    fn gibbs_n_agrees() {
        let h: PuiseuxPoly = "t + t^2".parse().unwrap();
        let r = gibbs(GibbsMode::N, &h, 0.3, 2.5, 1e-10, 1 << 20).unwrap();
        assert!(r.gap() < 1e-8);
        let t = PuiseuxPoly::t();
        let r = gibbs(GibbsMode::N, &t, 0.7, 1.5, 1e-10, 1 << 20).unwrap();
        let expected = series::polylog(1.5, 0.7, 1e-13).unwrap().value / zeta_f(1.5);
        assert!((r.closed.value - expected).abs() < 1e-10);
        assert!(r.gap() < 1e-8);
    }

    #[test]
    fn gibbs_q_reports() {
        let r = gibbs(GibbsMode::Q, &PuiseuxPoly::t(), 0.5, 3.0, 1e-10, 100_000).unwrap();
        assert!(r.direct.value.is_finite() && r.closed.value.is_finite());
        assert!(r.direct.tail_bound < 1e-6);
    }
}
