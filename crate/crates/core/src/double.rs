//! Twisted Drinfeld doubles `D^ω(Z/mZ)` with exact cyclotomic coefficients,
//! exhaustive checks of the quasi-Hopf axioms, and the maps between levels.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{guard, Error, Result};

/// Largest group order for a double.
pub const MAX_DOUBLE_ORDER: usize = 6;
/// Largest `nm` for level maps.
pub const MAX_SYSTEM_LEVEL: usize = 12;

/// Element of `Q[x]/(x^N − 1)`, `x` standing for `ζ_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    coeffs: Vec<Rational64>,
}

impl CyclotomicScalar {
    pub fn zero(order: usize) -> Self {
        CyclotomicScalar { coeffs: vec![Rational64::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::root(order, 0)
    }

    /// `ζ_N^k`.
    pub fn root(order: usize, k: i64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[k.rem_euclid(order as i64) as usize] = Rational64::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        CyclotomicScalar { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Self {
        CyclotomicScalar { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }

    /// `ζ_N^k·self`.
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.order() as i64;
        let mut out = Self::zero(self.order());
        for (i, a) in self.coeffs.iter().enumerate() {
            out.coeffs[(i as i64 + k).rem_euclid(n) as usize] = *a;
        }
        out
    }

    /// Exponent `k` when `self = ζ_N^k`.
    pub fn as_root(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.order()).filter(|&i| !self.coeffs[i].is_zero()).collect();
        match nz.as_slice() {
            [i] if self.coeffs[*i].is_one() => Some(*i),
            _ => None,
        }
    }

    /// Inverse of a root-of-unity monomial, by exponent negation.
    pub fn inverse(&self) -> Result<Self> {
        match self.as_root() {
            Some(k) => Ok(Self::root(self.order(), -(k as i64))),
            None => Err(Error::Domain(format!("{self} is not a root of unity"))),
        }
    }

    /// Image under `ζ_N ↦ ζ_{N'}^{N'/N}`.
    pub fn embed(&self, order: usize) -> Result<Self> {
        if order % self.order() != 0 {
            return Err(Error::Domain(format!("cannot embed order {} into order {order}", self.order())));
        }
        let f = order / self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            out.coeffs[i * f] = *a;
        }
        Ok(out)
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| if i == 0 { format!("{a}") } else { format!("{a}·ζ^{i}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reading of the bracket in the cocycle exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleVariant {
    /// `⌊(i₂ + i₃)/m⌋`.
    Floor,
    /// `⌊(i₂ + i₃)/3⌋`.
    Literal,
}

impl FromStr for CocycleVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "floor" => Ok(CocycleVariant::Floor),
            "literal" => Ok(CocycleVariant::Literal),
            _ => Err(Error::Domain(format!("unknown cocycle variant '{s}'"))),
        }
    }
}

/// A normalized `U(1)`-valued 3-cochain on `Z/nZ` with values `ζ_N^{e(x,y,z)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    order: usize,
    exps: Vec<u32>,
}

impl Cochain {
    pub fn from_fn(n: usize, order: usize, f: impl Fn(usize, usize, usize) -> i64) -> Self {
        let mut exps = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    exps.push(f(x, y, z).rem_euclid(order as i64) as u32);
                }
            }
        }
        Cochain { n, order, exps }
    }

    /// `ω_a(i₁, i₂, i₃) = ζ_m^{a·i₁·[(i₂+i₃)/·]}`.
    pub fn standard(m: usize, a: usize, variant: CocycleVariant) -> Result<Self> {
        if m == 0 || a >= m {
            return Err(Error::Domain(format!("cocycle needs 0 ≤ a < m, got a = {a}, m = {m}")));
        }
        let div = match variant {
            CocycleVariant::Floor => m,
            CocycleVariant::Literal => 3,
        };
        Ok(Cochain::from_fn(m, m, |x, y, z| (a * x * ((y + z) / div)) as i64))
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn root_order(&self) -> usize {
        self.order
    }

    /// Exponent at reduced arguments.
    pub fn exp(&self, x: usize, y: usize, z: usize) -> i64 {
        let n = self.n;
        i64::from(self.exps[((x % n) * n + y % n) * n + z % n])
    }

    pub fn value(&self, x: usize, y: usize, z: usize) -> CyclotomicScalar {
        CyclotomicScalar::root(self.order, self.exp(x, y, z))
    }

    /// First `(x, y, s, t)` violating
    /// `ω(y,s,t)ω(x,y+s,t)ω(x,y,s) = ω(x+y,s,t)ω(x,y,s+t)`, and the failure count.
    pub fn cocycle_failures(&self) -> (usize, Option<[usize; 4]>) {
        self.count_failures(|w, x, y, s, t| {
            w.exp(y, s, t) + w.exp(x, y + s, t) + w.exp(x, y, s) - w.exp(x + y, s, t) - w.exp(x, y, s + t)
        })
    }

    /// Failures of the identity in the printed arrangement
    /// `ω(y,s,t)ω(x,ys,t)ω(x,y,s) = ω(s,y,st)ω(xy,s,t)`.
    pub fn printed_identity_failures(&self) -> (usize, Option<[usize; 4]>) {
        self.count_failures(|w, x, y, s, t| {
            w.exp(y, s, t) + w.exp(x, y + s, t) + w.exp(x, y, s) - w.exp(s, y, s + t) - w.exp(x + y, s, t)
        })
    }

    fn count_failures(&self, f: impl Fn(&Self, usize, usize, usize, usize) -> i64) -> (usize, Option<[usize; 4]>) {
        let n = self.n;
        let mut count = 0;
        let mut first = None;
        for x in 0..n {
            for y in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        if f(self, x, y, s, t).rem_euclid(self.order as i64) != 0 {
                            count += 1;
                            first.get_or_insert([x, y, s, t]);
                        }
                    }
                }
            }
        }
        (count, first)
    }

    /// Whether `ω(x, 0, y) = 1` for all `x, y`.
    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.exp(x, 0, y) == 0))
    }

    /// `(σ^*ω)(x,y,z) = ω(x mod m, y mod m, z mod m)` on `Z/nmZ`, with values
    /// embedded into `ζ_{nm}`.
    pub fn pullback(&self, n: usize) -> Cochain {
        let m = self.n;
        Cochain::from_fn(n * m, n * self.order, |x, y, z| self.exp(x % m, y % m, z % m) * n as i64)
    }
}

/// `cocycle(m, a, i₁, i₂, i₃)` as a scalar.
pub fn cocycle(m: usize, a: usize, i1: usize, i2: usize, i3: usize, variant: CocycleVariant) -> Result<CyclotomicScalar> {
    Ok(Cochain::standard(m, a, variant)?.value(i1, i2, i3))
}

/// Basis element `e^g ⊗ e_h`.
pub type Basis = (u8, u8);

/// Element of `D^{⊗k}` as a sparse map from basis tuples to scalars.
#[derive(Clone, Debug)]
pub struct Tensor {
    legs: usize,
    order: usize,
    terms: HashMap<Vec<Basis>, CyclotomicScalar>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.legs == other.legs
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(k, v)| other.terms.get(k) == Some(v))
    }
}

impl Tensor {
    pub fn zero(legs: usize, order: usize) -> Self {
        Tensor { legs, order, terms: HashMap::new() }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Basis>, &CyclotomicScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Vec<Basis>, c: CyclotomicScalar) {
        debug_assert_eq!(key.len(), self.legs);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn basis(key: Vec<Basis>, order: usize) -> Self {
        let mut t = Tensor::zero(key.len(), order);
        t.add_term(key, CyclotomicScalar::one(order));
        t
    }

    /// Sorted terms, for display and counterexamples.
    pub fn sorted(&self) -> Vec<(Vec<Basis>, String)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (k.clone(), c.to_string())).collect();
        v.sort();
        v
    }

    pub fn swap_legs(&self, i: usize, j: usize) -> Tensor {
        let mut out = Tensor::zero(self.legs, self.order);
        for (k, c) in &self.terms {
            let mut k2 = k.clone();
            k2.swap(i, j);
            out.add_term(k2, c.clone());
        }
        out
    }

    /// `x ⊗ y`.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.legs + other.legs, self.order);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.add_term(k, c1.mul(c2));
            }
        }
        out
    }
}

/// `D^ω(Z/nZ)` for a normalized 3-cochain `ω`.
#[derive(Clone, Debug)]
pub struct Double {
    omega: Cochain,
}

/// Exhaustive axiom report; `counterexample` names the first failing basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub m: usize,
    pub a: usize,
    pub cocycle: bool,
    pub pentagon: bool,
    pub quasi_assoc: bool,
    /// Quasi-associativity with `Φ` and `Φ⁻¹` exchanged.
    pub quasi_assoc_swapped: bool,
    pub counit: bool,
    pub r_conj: bool,
    pub inverses: bool,
    pub unit: bool,
    pub counterexample: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.pentagon && self.quasi_assoc && self.counit && self.r_conj
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "a": self.a,
            "cocycle": self.cocycle,
            "pentagon": self.pentagon,
            "quasi_assoc": self.quasi_assoc,
            "quasi_assoc_swapped": self.quasi_assoc_swapped,
            "counit": self.counit,
            "r_conj": self.r_conj,
            "inverses": self.inverses,
            "unit": self.unit,
            "counterexample": self.counterexample,
        })
    }
}

impl Double {
    pub fn new(omega: Cochain) -> Result<Self> {
        guard("double group order", omega.group_order(), MAX_SYSTEM_LEVEL)?;
        if !omega.is_normalized() {
            return Err(Error::Domain("3-cochain must satisfy ω(x, 0, y) = 1".into()));
        }
        Ok(Double { omega })
    }

    /// `D^{ω_a}(Z/mZ)`.
    pub fn build(m: usize, a: usize, variant: CocycleVariant) -> Result<Self> {
        guard("double group order", m, MAX_DOUBLE_ORDER)?;
        Double::new(Cochain::standard(m, a, variant)?)
    }

    pub fn n(&self) -> usize {
        self.omega.group_order()
    }

    pub fn order(&self) -> usize {
        self.omega.root_order()
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    fn add(&self, x: usize, y: usize) -> usize {
        (x + y) % self.n()
    }

    /// Exponent of `θ_g(h, h′) = ω(g,h,h′)ω(h,h′,g)/ω(h,g,h′)`.
    pub fn theta_exp(&self, g: usize, h: usize, h2: usize) -> i64 {
        let w = &self.omega;
        w.exp(g, h, h2) + w.exp(h, h2, g) - w.exp(h, g, h2)
    }

    /// Exponent of `γ_h(a, b) = ω(a,b,h)ω(h,a,b)/ω(a,h,b)`.
    pub fn gamma_exp(&self, h: usize, a: usize, b: usize) -> i64 {
        let w = &self.omega;
        w.exp(a, b, h) + w.exp(h, a, b) - w.exp(a, h, b)
    }

    /// `1 = Σ_g e^g ⊗ e_0`.
    pub fn unit(&self) -> Tensor {
        let mut t = Tensor::zero(1, self.order());
        for g in 0..self.n() {
            t.add_term(vec![(g as u8, 0)], CyclotomicScalar::one(self.order()));
        }
        t
    }

    pub fn unit_k(&self, k: usize) -> Tensor {
        (1..k).fold(self.unit(), |acc, _| acc.outer(&self.unit()))
    }

    /// Legwise product in `D^{⊗k}`.
    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut index: HashMap<Vec<u8>, Vec<(&Vec<Basis>, &CyclotomicScalar)>> = HashMap::new();
        for (k, c) in &y.terms {
            index.entry(k.iter().map(|b| b.0).collect()).or_default().push((k, c));
        }
        let mut out = Tensor::zero(x.legs, self.order());
        for (k1, c1) in &x.terms {
            let gs: Vec<u8> = k1.iter().map(|b| b.0).collect();
            let Some(matches) = index.get(&gs) else { continue };
            for (k2, c2) in matches {
                let mut e = 0i64;
                let mut key = Vec::with_capacity(x.legs);
                for (b1, b2) in k1.iter().zip(k2.iter()) {
                    let (g, h, h2) = (b1.0 as usize, b1.1 as usize, b2.1 as usize);
                    e += self.theta_exp(g, h, h2);
                    key.push((b1.0, self.add(h, h2) as u8));
                }
                out.add_term(key, c1.mul(c2).mul_root(e));
            }
        }
        out
    }

    /// `Δ` applied to leg `i`.
    pub fn coproduct_leg(&self, x: &Tensor, i: usize) -> Tensor {
        let mut out = Tensor::zero(x.legs + 1, self.order());
        for (k, c) in &x.terms {
            let (g, h) = (k[i].0 as usize, k[i].1 as usize);
            for a in 0..self.n() {
                let b = (g + self.n() - a) % self.n();
                let mut key = k[..i].to_vec();
                key.push((a as u8, h as u8));
                key.push((b as u8, h as u8));
                key.extend_from_slice(&k[i + 1..]);
                out.add_term(key, c.mul_root(self.gamma_exp(h, a, b)));
            }
        }
        out
    }

    /// `ε` applied to leg `i`: `ε(e^g ⊗ e_h) = δ_{g,0}`.
    pub fn counit_leg(&self, x: &Tensor, i: usize) -> Tensor {
        let mut out = Tensor::zero(x.legs - 1, self.order());
        for (k, c) in &x.terms {
            if k[i].0 == 0 {
                let mut key = k.clone();
                key.remove(i);
                out.add_term(key, c.clone());
            }
        }
        out
    }

    /// `Φ^{±1} = Σ ω(a,b,c)^{∓1} e^a ⊗ e^b ⊗ e^c`.
    pub fn associator(&self, inverse: bool) -> Tensor {
        let mut t = Tensor::zero(3, self.order());
        let s = if inverse { 1 } else { -1 };
        for a in 0..self.n() {
            for b in 0..self.n() {
                for c in 0..self.n() {
                    let key = vec![(a as u8, 0), (b as u8, 0), (c as u8, 0)];
                    t.add_term(key, CyclotomicScalar::root(self.order(), s * self.omega.exp(a, b, c)));
                }
            }
        }
        t
    }

    /// `R = Σ_a (e^a ⊗ 1) ⊗ (1 ⊗ e_a)`.
    pub fn r_matrix(&self) -> Tensor {
        let mut t = Tensor::zero(2, self.order());
        for a in 0..self.n() {
            for g in 0..self.n() {
                t.add_term(vec![(a as u8, 0), (g as u8, a as u8)], CyclotomicScalar::one(self.order()));
            }
        }
        t
    }

    /// `R⁻¹ = Σ_{a,g} θ_g(a, −a)⁻¹ (e^a ⊗ 1) ⊗ (e^g ⊗ e_{−a})`.
    pub fn r_inverse(&self) -> Tensor {
        let mut t = Tensor::zero(2, self.order());
        for a in 0..self.n() {
            let na = (self.n() - a) % self.n();
            for g in 0..self.n() {
                t.add_term(
                    vec![(a as u8, 0), (g as u8, na as u8)],
                    CyclotomicScalar::root(self.order(), -self.theta_exp(g, a, na)),
                );
            }
        }
        t
    }

    pub fn basis_elements(&self) -> Vec<Tensor> {
        let mut v = Vec::new();
        for g in 0..self.n() {
            for h in 0..self.n() {
                v.push(Tensor::basis(vec![(g as u8, h as u8)], self.order()));
            }
        }
        v
    }

    pub fn verify_axioms(&self, a: usize) -> AxiomReport {
        let phi = self.associator(false);
        let phi_inv = self.associator(true);
        let r = self.r_matrix();
        let r_inv = self.r_inverse();
        let one = self.unit();
        let mut counterexample: Option<String> = None;
        let mut note = |what: &str, x: &Tensor| {
            if counterexample.is_none() {
                counterexample = Some(format!("{what} at {:?}", x.sorted().first().map(|t| t.0.clone())));
            }
        };

        let cocycle = self.omega.cocycle_failures().0 == 0;

        let lhs = self.mul(&self.coproduct_leg(&phi, 0), &self.coproduct_leg(&phi, 2));
        let phi_1 = phi.outer(&one);
        let one_phi = one.outer(&phi);
        let rhs = self.mul(&self.mul(&phi_1, &self.coproduct_leg(&phi, 1)), &one_phi);
        let pentagon = lhs == rhs;
        if !pentagon {
            note("pentagon", &phi);
        }

        let counit = self.counit_leg(&phi, 1) == self.unit_k(2);
        if !counit {
            note("counit", &phi);
        }

        let inverses = self.mul(&phi, &phi_inv) == self.unit_k(3)
            && self.mul(&phi_inv, &phi) == self.unit_k(3)
            && self.mul(&r, &r_inv) == self.unit_k(2)
            && self.mul(&r_inv, &r) == self.unit_k(2);

        let mut unit = true;
        let mut quasi_assoc = true;
        let mut quasi_assoc_swapped = true;
        let mut r_conj = true;
        for x in self.basis_elements() {
            if self.mul(&one, &x) != x || self.mul(&x, &one) != x {
                unit = false;
                note("unit", &x);
            }
            let dx = self.coproduct_leg(&x, 0);
            let left = self.coproduct_leg(&dx, 1);
            let right = self.coproduct_leg(&dx, 0);
            if left != self.mul(&self.mul(&phi_inv, &right), &phi) {
                if quasi_assoc {
                    note("quasi-associativity", &x);
                }
                quasi_assoc = false;
            }
            if left != self.mul(&self.mul(&phi, &right), &phi_inv) {
                quasi_assoc_swapped = false;
            }
            if dx.swap_legs(0, 1) != self.mul(&self.mul(&r, &dx), &r_inv) {
                if r_conj {
                    note("R-conjugation", &x);
                }
                r_conj = false;
            }
        }
        AxiomReport {
            m: self.n(),
            a,
            cocycle,
            pentagon,
            quasi_assoc,
            quasi_assoc_swapped,
            counit,
            r_conj,
            inverses,
            unit,
            counterexample,
        }
    }
}

/// `verify_axioms(m, a)` for the standard cocycle.
pub fn verify_axioms(m: usize, a: usize, variant: CocycleVariant) -> Result<AxiomReport> {
    Ok(Double::build(m, a, variant)?.verify_axioms(a))
}

/// Maps of the level system `Z/nmZ ↠ Z/mZ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemReport {
    pub n: usize,
    pub m: usize,
    /// Number of `a` for which the pulled-back cocycle fails the identity.
    pub pullback_failures: usize,
    /// For each `a`, the `a′` with `σ^*ω_{m,a} = ω_{nm,a′}` pointwise, if any.
    pub pullback_matches: Vec<Option<usize>>,
    /// `ρ̃_n` on the summation index of `R_m` gives `R_{nm}`.
    pub r_transport: bool,
    /// `ρ̃_n` applied independently to each leg gives `R_{nm}`.
    pub r_transport_legwise: bool,
}

impl SystemReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "m": self.m,
            "pullback_failures": self.pullback_failures,
            "pullback_matches": self.pullback_matches,
            "r_transport": self.r_transport,
            "r_transport_legwise": self.r_transport_legwise,
        })
    }
}

/// `Σ_{a ∈ Z/m} Σ_{b ≡ a mod m} (e^b ⊗ 1) ⊗ (1 ⊗ e_b)` in `D(Z/nm)`.
pub fn transport_r(n: usize, m: usize) -> Result<Tensor> {
    let nm = n * m;
    guard("level nm", nm, MAX_SYSTEM_LEVEL)?;
    let small = Double::new(Cochain::from_fn(m, 1, |_, _, _| 0))?;
    let mut out = Tensor::zero(2, 1);
    for (key, c) in small.r_matrix().terms() {
        // the summation index a is the h-label of the second leg
        let a = key[1].1 as usize;
        if key[1].0 != 0 {
            continue;
        }
        for b in (0..nm).filter(|b| b % m == a) {
            for g in 0..nm {
                out.add_term(vec![(b as u8, 0), (g as u8, b as u8)], c.clone());
            }
        }
    }
    Ok(out)
}

/// `e^g ⊗ e_h ↦ Σ_{g′ ≡ g, h′ ≡ h} e^{g′} ⊗ e_{h′}` on every leg.
pub fn transport_legwise(x: &Tensor, n: usize, m: usize) -> Tensor {
    let nm = n * m;
    let mut out = Tensor::zero(x.legs(), x.order);
    for (key, c) in x.terms() {
        let choices: Vec<Vec<Basis>> = key
            .iter()
            .map(|&(g, h)| {
                let mut v = Vec::new();
                for g2 in (0..nm).filter(|v| v % m == g as usize) {
                    for h2 in (0..nm).filter(|v| v % m == h as usize) {
                        v.push((g2 as u8, h2 as u8));
                    }
                }
                v
            })
            .collect();
        let mut keys: Vec<Vec<Basis>> = vec![Vec::new()];
        for ch in &choices {
            keys = keys
                .into_iter()
                .flat_map(|k| {
                    ch.iter().map(move |b| {
                        let mut k2 = k.clone();
                        k2.push(*b);
                        k2
                    })
                })
                .collect();
        }
        for k in keys {
            out.add_term(k, c.clone());
        }
    }
    out
}

pub fn system_maps(n: usize, m: usize) -> Result<SystemReport> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("levels must be positive".into()));
    }
    let nm = n * m;
    guard("level nm", nm, MAX_SYSTEM_LEVEL)?;
    let mut pullback_failures = 0;
    let mut pullback_matches = Vec::new();
    for a in 0..m {
        let w = Cochain::standard(m, a, CocycleVariant::Floor)?;
        let p = w.pullback(n);
        if p.cocycle_failures().0 != 0 {
            pullback_failures += 1;
        }
        let mut found = None;
        for a2 in 0..nm {
            let target = Cochain::standard(nm, a2, CocycleVariant::Floor)?;
            if target.exps == p.exps {
                found = Some(a2);
                break;
            }
        }
        pullback_matches.push(found);
    }
    let big = Double::new(Cochain::from_fn(nm, 1, |_, _, _| 0))?;
    let small = Double::new(Cochain::from_fn(m, 1, |_, _, _| 0))?;
    let r_big = big.r_matrix();
    Ok(SystemReport {
        n,
        m,
        pullback_failures,
        pullback_matches,
        r_transport: transport_r(n, m)? == r_big,
        r_transport_legwise: transport_legwise(&small.r_matrix(), n, m) == r_big,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocycle_values() {
        assert_eq!(cocycle(2, 1, 1, 1, 1, CocycleVariant::Floor).unwrap(), CyclotomicScalar::root(2, 1));
        for m in 1..=6 {
            for a in 0..m {
                let w = Cochain::standard(m, a, CocycleVariant::Floor).unwrap();
                assert_eq!(w.cocycle_failures().0, 0, "m={m} a={a}");
                assert!(w.is_normalized());
            }
        }
        let zero = Cochain::standard(4, 0, CocycleVariant::Floor).unwrap();
        assert!((0..4).all(|x| (0..4).all(|y| (0..4).all(|z| zero.exp(x, y, z) == 0))));
        assert!(cocycle(3, 3, 0, 0, 0, CocycleVariant::Floor).is_err());
    }

    #[test]
    fn untwisted_axioms() {
        for m in [2, 3] {
            let r = verify_axioms(m, 0, CocycleVariant::Floor).unwrap();
            assert!(r.all_pass() && r.inverses && r.unit, "{r:?}");
        }
    }

    #[test]
    fn twisted_structure_constants() {
        let d = Double::build(2, 1, CocycleVariant::Floor).unwrap();
        for g in 0..2 {
            for h in 0..2 {
                for h2 in 0..2 {
                    let direct = CyclotomicScalar::root(2, d.omega().exp(g, h, h2))
                        .mul(&CyclotomicScalar::root(2, d.omega().exp(h, h2, g)))
                        .mul(&CyclotomicScalar::root(2, d.omega().exp(h, g, h2)).inverse().unwrap());
                    assert_eq!(CyclotomicScalar::root(2, d.theta_exp(g, h, h2)), direct);
                }
            }
        }
        let r = d.verify_axioms(1);
        assert!(r.pentagon && r.counit && r.unit);
    }

    #[test]
    fn level_maps() {
        for (n, m) in [(2, 2), (2, 3), (3, 2), (1, 4)] {
            let s = system_maps(n, m).unwrap();
            assert!(s.r_transport);
            assert_eq!(s.pullback_failures, 0);
        }
        let id = system_maps(1, 3).unwrap();
        assert!(id.r_transport_legwise);
        assert_eq!(id.pullback_matches, vec![Some(0), Some(1), Some(2)]);
    }
}
