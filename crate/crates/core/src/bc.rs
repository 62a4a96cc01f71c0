//! The Bost–Connes tower `Q[Q/Z]` with the endomorphisms `σ_n`, `ρ̃_n`, the
//! Drinfeld–Ihara involution, and the finite groups `mGT_n`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::json;

use crate::error::{guard, Error, Result};
use crate::ring::{q_to_string, Q};

/// Largest `n` for `mGT_n` closure.
pub const MAX_MGT_N: usize = 12;

/// `a/b mod 1` with `0 ≤ a < b` and `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZElem {
    a: u64,
    b: u64,
}

impl QZElem {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator in Q/Z".into()));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let a = num.rem_euclid(den);
        let g = a.gcd(&den);
        Ok(QZElem { a: (a / g) as u64, b: (den / g) as u64 })
    }

    pub fn zero() -> Self {
        QZElem { a: 0, b: 1 }
    }

    pub fn num(&self) -> u64 {
        self.a
    }

    pub fn den(&self) -> u64 {
        self.b
    }

    pub fn mul_int(&self, n: u64) -> QZElem {
        QZElem::new(((self.a as u128 * n as u128) % self.b as u128) as i64, self.b as i64).expect("valid")
    }

    /// All `s` with `ns = r`.
    pub fn roots(&self, n: u64) -> Vec<QZElem> {
        (0..n)
            .map(|k| QZElem::new((self.a + k * self.b) as i64, (n * self.b) as i64).expect("valid"))
            .collect()
    }

    /// `e(a/b) ↦ e((1 − a)/b)`.
    pub fn ihara(&self) -> QZElem {
        QZElem::new(1 - self.a as i64, self.b as i64).expect("valid")
    }
}

impl fmt::Display for QZElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

/// Finitely supported `Σ c_r e(r)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgElem {
    terms: BTreeMap<QZElem, Q>,
}

impl GroupAlgElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn e(r: QZElem) -> Self {
        Self::from_terms([(r, Q::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (QZElem, Q)>) -> Self {
        let mut out = GroupAlgElem::zero();
        for (r, c) in terms {
            out.add_term(r, c);
        }
        out
    }

    fn add_term(&mut self, r: QZElem, c: Q) {
        let e = self.terms.entry(r).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn terms(&self) -> &BTreeMap<QZElem, Q> {
        &self.terms
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(r, c)| (*r, c * k)))
    }

    /// Convolution product `e(r)e(s) = e(r + s)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GroupAlgElem::zero();
        for (r, c) in &self.terms {
            for (s, d) in &other.terms {
                let den = r.b.lcm(&s.b);
                let sum = QZElem::new((r.a * (den / r.b) + s.a * (den / s.b)) as i64, den as i64).expect("valid");
                out.add_term(sum, c * d);
            }
        }
        out
    }

    fn map(&self, f: impl Fn(QZElem) -> Vec<QZElem>) -> Self {
        let mut out = GroupAlgElem::zero();
        for (r, c) in &self.terms {
            for s in f(*r) {
                out.add_term(s, c.clone());
            }
        }
        out
    }

    pub fn random(rng: &mut impl Rng, max_den: i64, terms: usize) -> Self {
        Self::from_terms((0..terms).map(|_| {
            let b = rng.gen_range(1..=max_den);
            let a = rng.gen_range(0..b);
            (QZElem::new(a, b).expect("valid"), Q::from_integer(rng.gen_range(-5i64..=5).into()))
        }))
    }
}

impl fmt::Display for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(r, c)| format!("{}·e({r})", q_to_string(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `σ_n(e(r)) = e(nr)`.
pub fn bc_sigma(n: u64, x: &GroupAlgElem) -> Result<GroupAlgElem> {
    check_n(n)?;
    Ok(x.map(|r| vec![r.mul_int(n)]))
}

/// `ρ̃_n(e(r)) = Σ_{ns = r} e(s)`.
pub fn bc_rho(n: u64, x: &GroupAlgElem) -> Result<GroupAlgElem> {
    check_n(n)?;
    Ok(x.map(|r| r.roots(n)))
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("BC endomorphisms need n ≥ 1".into()));
    }
    Ok(())
}

/// `θ(e(a/b)) = e((1 − a)/b)` on reduced fractions, extended linearly.
pub fn ihara_theta(x: &GroupAlgElem) -> GroupAlgElem {
    x.map(|r| vec![r.ihara()])
}

/// Least common level of the support.
pub fn level_of(x: &GroupAlgElem) -> u64 {
    x.terms().keys().fold(1, |l, r| l.lcm(&r.den()))
}

/// `θ_n` on `Q[Z/nZ]`: `e(k/n) ↦ e((1 − k)/n)`, for `n` a multiple of the level.
pub fn ihara_theta_level(n: u64, x: &GroupAlgElem) -> Result<GroupAlgElem> {
    check_n(n)?;
    if n % level_of(x) != 0 {
        return Err(Error::Domain(format!("element of level {} does not live at level {n}", level_of(x))));
    }
    Ok(x.map(|r| {
        let k = r.num() * (n / r.den());
        vec![QZElem::new(level_theta(n, k) as i64, n as i64).expect("valid")]
    }))
}

/// `θ_n(k) = 1 − k mod n` on `X_n = Z/nZ`.
pub fn level_theta(n: u64, k: u64) -> u64 {
    (1 + n - k % n) % n
}

/// `σ_m : X_{nm} → X_n`, `k ↦ k mod n`.
pub fn level_sigma(n: u64, k: u64) -> u64 {
    k % n
}

/// Counts of failures of `θ_n² = id` and `σ_m∘θ_{nm} = θ_n∘σ_m` over all
/// `nm ≤ max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub max: u64,
    pub cases: usize,
    pub involution_failures: usize,
    pub compatibility_failures: usize,
}

pub fn check_tower(max: u64) -> TowerReport {
    let mut r = TowerReport { max, cases: 0, involution_failures: 0, compatibility_failures: 0 };
    for n in 1..=max {
        for k in 0..n {
            r.cases += 1;
            if level_theta(n, level_theta(n, k)) != k {
                r.involution_failures += 1;
            }
        }
        for m in 1..=max / n {
            for k in 0..n * m {
                r.cases += 1;
                if level_sigma(n, level_theta(n * m, k)) != level_theta(n, level_sigma(n, k)) {
                    r.compatibility_failures += 1;
                }
            }
        }
    }
    r
}

/// `mGT_n ⊂ S_n` with its elements as permutations of `Z/nZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgtGroup {
    pub n: usize,
    pub elements: BTreeSet<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

impl MgtGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Orbits of `Z/nZ` under the group.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements.iter().map(|p| p[s]).collect();
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "order": self.order(),
            "generators": self.generators,
            "orbits": self.orbits(),
        })
    }
}

/// Closure of the unit multiplications and `θ_n` inside `S_n`.
pub fn mgt_group(n: usize) -> Result<MgtGroup> {
    if n == 0 {
        return Err(Error::Domain("mGT_n needs n ≥ 1".into()));
    }
    guard("mGT level", n, MAX_MGT_N)?;
    let mut generators: Vec<Vec<usize>> = (1..=n)
        .filter(|u| u.gcd(&n) == 1)
        .map(|u| (0..n).map(|k| (u * k) % n).collect())
        .collect();
    generators.push((0..n).map(|k| level_theta(n as u64, k as u64) as usize).collect());
    let id: Vec<usize> = (0..n).collect();
    let mut elements = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &generators {
            let q: Vec<usize> = (0..n).map(|k| g[p[k]]).collect();
            if elements.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    Ok(MgtGroup { n, elements, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn qz(a: i64, b: i64) -> QZElem {
        QZElem::new(a, b).unwrap()
    }

    #[test]
    fn endomorphisms() {
        assert_eq!(bc_sigma(2, &GroupAlgElem::e(qz(1, 2))).unwrap(), GroupAlgElem::e(QZElem::zero()));
        let r = bc_rho(2, &GroupAlgElem::e(qz(1, 3))).unwrap();
        assert_eq!(r, GroupAlgElem::from_terms([(qz(1, 6), Q::one()), (qz(2, 3), Q::one())]));
        let x = GroupAlgElem::e(qz(1, 5));
        assert_eq!(bc_sigma(2, &bc_rho(2, &x).unwrap()).unwrap(), x.scale(&Q::from_integer(2.into())));
    }

    #[test]
    fn involution() {
        assert_eq!(level_theta(5, 2), 4);
        assert_eq!(ihara_theta(&GroupAlgElem::e(qz(2, 7))), GroupAlgElem::e(qz(6, 7)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = GroupAlgElem::random(&mut rng, 30, 4);
            let n = level_of(&x);
            assert_eq!(ihara_theta_level(n, &ihara_theta_level(n, &x).unwrap()).unwrap(), x);
        }
        // on reduced fractions the generator formula collapses e(1/4) and e(0)
        let quarter = GroupAlgElem::e(qz(1, 4));
        assert_eq!(ihara_theta(&quarter), GroupAlgElem::e(QZElem::zero()));
        assert_ne!(ihara_theta(&ihara_theta(&quarter)), quarter);
        assert_eq!(ihara_theta_level(7, &GroupAlgElem::e(qz(2, 7))).unwrap(), GroupAlgElem::e(qz(6, 7)));
        let t = check_tower(60);
        assert_eq!((t.involution_failures, t.compatibility_failures), (0, 0));
    }

    #[test]
    fn mgt_orders() {
        assert_eq!(mgt_group(1).unwrap().order(), 1);
        assert_eq!(mgt_group(2).unwrap().order(), 2);
        assert_eq!(mgt_group(5).unwrap().order(), 20);
        assert!(mgt_group(13).is_err());
    }
}
