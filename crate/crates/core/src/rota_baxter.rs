//! Weight −1 Rota–Baxter operators and Birkhoff factorization of
//! characters of the Hopf algebra of dessins.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng as _;
use serde_json::json;

use crate::dessin::Dessin;
use crate::error::{guard, Error, Result};
use crate::hopf::{Character, Convention, HopfAlgebra, HopfElement, Monomial};
use crate::perm::factorial;
use crate::poly::{self, LaurentPoly, Specialization};
use crate::ring::{q, q_to_string, Ring, Q};

/// Largest index accepted by [`structure_constants`].
pub const MAX_PI_INDEX: usize = 30;

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Monomial coefficients of `π_n(t) = t(t+1)⋯(t+n−1)/n!`.
pub fn pi_monomial(n: usize) -> Vec<Q> {
    let mut p = vec![Q::one()];
    for i in 0..n {
        p = poly_mul(&p, &[q(i as i64), Q::one()]);
    }
    let f = Q::from_integer(BigInt::from(factorial(n)));
    p.into_iter().map(|c| c / &f).collect()
}

/// Polynomial in `t` stored by its coefficients `a_n` on the basis `π_n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiBasisPoly {
    coeffs: Vec<Q>,
}

impl PiBasisPoly {
    pub fn from_pi(coeffs: Vec<Q>) -> Self {
        PiBasisPoly { coeffs: trim(coeffs) }
    }

    pub fn pi(n: usize) -> Self {
        let mut c = vec![Q::zero(); n + 1];
        c[n] = Q::one();
        PiBasisPoly::from_pi(c)
    }

    /// From monomial coefficients `c_k` of `Σ c_k t^k`.
    pub fn from_monomial(c: &[Q]) -> Self {
        let mut rest = trim(c.to_vec());
        let mut a = vec![Q::zero(); rest.len()];
        while let Some(lead) = rest.last().cloned() {
            let n = rest.len() - 1;
            let an = lead * Q::from_integer(BigInt::from(factorial(n)));
            let p = pi_monomial(n);
            for (k, pk) in p.iter().enumerate() {
                rest[k] -= &an * pk;
            }
            a[n] = an;
            rest = trim(rest);
        }
        PiBasisPoly::from_pi(a)
    }

    pub fn to_monomial(&self) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::new();
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let p = pi_monomial(n);
            if out.len() < p.len() {
                out.resize(p.len(), Q::zero());
            }
            for (k, pk) in p.iter().enumerate() {
                out[k] += a * pk;
            }
        }
        trim(out)
    }

    pub fn from_laurent(p: &LaurentPoly) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(Error::Domain(format!("{p} is not a polynomial in t")));
        }
        let deg = p.terms().keys().max().copied().unwrap_or(0) as usize;
        let mut c = vec![Q::zero(); deg + 1];
        for (e, x) in p.terms() {
            c[*e as usize] = x.clone();
        }
        Ok(PiBasisPoly::from_monomial(&c))
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Q {
        self.coeffs.get(n).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.to_monomial().iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
    }

    /// Index shift `π_n ↦ π_{n+1}`.
    pub fn shift(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![Q::zero()];
        c.extend(self.coeffs.iter().cloned());
        PiBasisPoly::from_pi(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"basis": "pi", "coefficients": self.coeffs.iter().map(q_to_string).collect::<Vec<_>>()})
    }
}

impl fmt::Display for PiBasisPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("{}·π{}", q_to_string(c), n))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Ring for PiBasisPoly {
    fn ring_zero() -> Self {
        PiBasisPoly::default()
    }
    fn ring_one() -> Self {
        PiBasisPoly::pi(0)
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        PiBasisPoly::from_pi((0..n).map(|i| self.coefficient(i) + other.coefficient(i)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        PiBasisPoly::from_monomial(&poly_mul(&self.to_monomial(), &other.to_monomial()))
    }
    fn neg(&self) -> Self {
        PiBasisPoly::from_pi(self.coeffs.iter().map(|c| -c).collect())
    }
    fn is_ring_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_q(x: &Q) -> Self {
        PiBasisPoly::from_pi(vec![x.clone()])
    }
}

/// `u_{m,n,k}` with `π_m π_n = Σ_k u_{m,n,k} π_k`, for `k = 0..=m+n`.
pub fn structure_constants(m: usize, n: usize) -> Result<Vec<Q>> {
    guard("π-basis index", m.max(n), MAX_PI_INDEX)?;
    let prod = PiBasisPoly::pi(m).mul(&PiBasisPoly::pi(n));
    Ok((0..=m + n).map(|k| prod.coefficient(k)).collect())
}

/// Commutative algebra with a weight −1 Rota–Baxter operator `T`:
/// `T(xy) + T(x)T(y) = T(xT(y)) + T(T(x)y)`.
pub trait RbContext {
    type Elem: Ring + fmt::Display;

    fn name(&self) -> &'static str;
    fn t(&self, x: &Self::Elem) -> Self::Elem;
    fn in_minus(&self, x: &Self::Elem) -> bool;
    fn in_plus(&self, x: &Self::Elem) -> bool;
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> Self::Elem;
    fn to_json(&self, x: &Self::Elem) -> serde_json::Value;

    fn r_minus(&self, x: &Self::Elem) -> Self::Elem {
        self.t(x)
    }

    fn r_plus(&self, x: &Self::Elem) -> Self::Elem {
        x.sub(&self.t(x))
    }

    /// `T(xy) + T(x)T(y) − T(xT(y)) − T(T(x)y)`.
    fn rb_defect(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let (tx, ty) = (self.t(x), self.t(y));
        self.t(&x.mul(y))
            .add(&tx.mul(&ty))
            .sub(&self.t(&x.mul(&ty)))
            .sub(&self.t(&tx.mul(y)))
    }
}

fn small_q(rng: &mut dyn rand::RngCore) -> Q {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Laurent polynomials with `T` the projection onto strictly negative
/// exponents.
#[derive(Clone, Copy, Debug, Default)]
pub struct PolarContext;

impl PolarContext {
    pub fn new() -> Result<Self> {
        let ctx = PolarContext;
        self_test(&ctx, &generators_polar())?;
        Ok(ctx)
    }
}

fn generators_polar() -> Vec<LaurentPoly> {
    [-2i64, -1, 0, 1, 2]
        .iter()
        .map(|&e| LaurentPoly::monomial(e, Q::one()))
        .chain(std::iter::once(LaurentPoly::fractional_monomial(-1, 2, Q::one())))
        .collect()
}

impl RbContext for PolarContext {
    type Elem = LaurentPoly;

    fn name(&self) -> &'static str {
        "laurent-polar"
    }
    fn t(&self, x: &LaurentPoly) -> LaurentPoly {
        x.polar_part()
    }
    fn in_minus(&self, x: &LaurentPoly) -> bool {
        x.regular_part().is_ring_zero()
    }
    fn in_plus(&self, x: &LaurentPoly) -> bool {
        x.polar_part().is_ring_zero()
    }
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> LaurentPoly {
        let terms: Vec<(i64, Q)> = (0..rng.gen_range(1..=4))
            .map(|_| (rng.gen_range(-3..=3), small_q(rng)))
            .collect();
        LaurentPoly::from_terms(1, terms)
    }
    fn to_json(&self, x: &LaurentPoly) -> serde_json::Value {
        x.to_json()
    }
}

/// `Q[t]` on the basis `π_n` with `T(π_n) = π_{n+1}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PiContext;

impl PiContext {
    pub fn new() -> Result<Self> {
        let ctx = PiContext;
        let gens: Vec<PiBasisPoly> = (0..4).map(PiBasisPoly::pi).collect();
        self_test(&ctx, &gens)?;
        Ok(ctx)
    }
}

impl RbContext for PiContext {
    type Elem = PiBasisPoly;

    fn name(&self) -> &'static str {
        "pi-basis"
    }
    fn t(&self, x: &PiBasisPoly) -> PiBasisPoly {
        x.shift()
    }
    /// The image of `T` is the set of polynomials vanishing at 0.
    fn in_minus(&self, x: &PiBasisPoly) -> bool {
        x.eval(&Q::zero()).is_zero()
    }
    /// The image of `1 − T` is the set of polynomials vanishing at 1.
    fn in_plus(&self, x: &PiBasisPoly) -> bool {
        x.eval(&Q::one()).is_zero()
    }
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> PiBasisPoly {
        let n = rng.gen_range(1..=4);
        PiBasisPoly::from_pi((0..n).map(|_| small_q(rng)).collect())
    }
    fn to_json(&self, x: &PiBasisPoly) -> serde_json::Value {
        x.to_json()
    }
}

fn self_test<C: RbContext>(ctx: &C, gens: &[C::Elem]) -> Result<()> {
    for x in gens {
        for y in gens {
            if !ctx.rb_defect(x, y).is_ring_zero() {
                return Err(Error::Contract(format!(
                    "{}: Rota–Baxter relation fails on ({x}, {y})",
                    ctx.name()
                )));
            }
        }
    }
    Ok(())
}

/// Number of random pairs on which the relation fails.
pub fn check_rb_relation<C: RbContext>(ctx: &C, pairs: usize, seed: u64) -> usize {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..pairs)
        .filter(|_| {
            let x = ctx.random_elem(&mut rng);
            let y = ctx.random_elem(&mut rng);
            !ctx.rb_defect(&x, &y).is_ring_zero()
        })
        .count()
}

/// Number of random pairs whose products leave `R₋` or `R₊`.
pub fn check_subalgebras<C: RbContext>(ctx: &C, pairs: usize, seed: u64) -> usize {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..pairs)
        .filter(|_| {
            let x = ctx.random_elem(&mut rng);
            let y = ctx.random_elem(&mut rng);
            let (xm, ym) = (ctx.r_minus(&x), ctx.r_minus(&y));
            let (xp, yp) = (ctx.r_plus(&x), ctx.r_plus(&y));
            !(ctx.in_minus(&xm) && ctx.in_minus(&xm.mul(&ym)) && ctx.in_plus(&xp) && ctx.in_plus(&xp.mul(&yp)))
        })
        .count()
}

/// Sign in front of `T` in the recursion for `φ₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// `φ₋ = −T(φ̄)`, which makes `φ₊ = φ₋ ⋆ φ`.
    Birkhoff,
    /// `φ₋ = +T(φ̄)`.
    Printed,
}

/// Memoized Birkhoff factorization of a character.
pub struct Birkhoff<'a, C: RbContext> {
    pub ctx: &'a C,
    phi: &'a dyn Character<C::Elem>,
    pub sign: SignConvention,
    alg: HopfAlgebra,
    minus: HashMap<Dessin, C::Elem>,
    bar: HashMap<Dessin, C::Elem>,
}

impl<'a, C: RbContext> Birkhoff<'a, C> {
    pub fn new(ctx: &'a C, phi: &'a dyn Character<C::Elem>, convention: Convention) -> Self {
        Birkhoff {
            ctx,
            phi,
            sign: SignConvention::Birkhoff,
            alg: HopfAlgebra::new(convention),
            minus: HashMap::new(),
            bar: HashMap::new(),
        }
    }

    pub fn with_sign(mut self, sign: SignConvention) -> Self {
        self.sign = sign;
        self
    }

    pub fn algebra(&mut self) -> &mut HopfAlgebra {
        &mut self.alg
    }

    /// `φ̄(D) = φ(D) + Σ φ₋(δ) φ(D/δ)`.
    pub fn bar(&mut self, d: &Dessin) -> Result<C::Elem> {
        let canon = d.canonical_form();
        if let Some(v) = self.bar.get(&canon) {
            return Ok(v.clone());
        }
        let mut acc = self.phi.on_connected(&canon);
        let terms = self.alg.reduced_coproduct_connected(&canon)?;
        for t in terms.iter() {
            let l = self.minus_monomial(&t.left)?;
            acc = acc.add(&l.mul(&self.phi.on_monomial(&t.right)).scale(&t.coeff));
        }
        self.bar.insert(canon, acc.clone());
        Ok(acc)
    }

    pub fn minus_connected(&mut self, d: &Dessin) -> Result<C::Elem> {
        let canon = d.canonical_form();
        if let Some(v) = self.minus.get(&canon) {
            return Ok(v.clone());
        }
        let tb = self.ctx.t(&self.bar(&canon)?);
        let v = match self.sign {
            SignConvention::Birkhoff => tb.neg(),
            SignConvention::Printed => tb,
        };
        self.minus.insert(canon, v.clone());
        Ok(v)
    }

    pub fn plus_connected(&mut self, d: &Dessin) -> Result<C::Elem> {
        let b = self.bar(d)?;
        Ok(b.sub(&self.ctx.t(&b)))
    }

    pub fn minus_monomial(&mut self, m: &Monomial) -> Result<C::Elem> {
        let mut acc = C::Elem::ring_one();
        for f in m.factors() {
            acc = acc.mul(&self.minus_connected(f)?);
        }
        Ok(acc)
    }

    pub fn plus_monomial(&mut self, m: &Monomial) -> Result<C::Elem> {
        let mut acc = C::Elem::ring_one();
        for f in m.factors() {
            acc = acc.mul(&self.plus_connected(f)?);
        }
        Ok(acc)
    }

    pub fn minus_element(&mut self, x: &HopfElement) -> Result<C::Elem> {
        let mut acc = C::Elem::ring_zero();
        for (m, c) in x.terms() {
            acc = acc.add(&self.minus_monomial(m)?.scale(c));
        }
        Ok(acc)
    }

    /// `((φ₋ ∘ S) ⋆ φ₊)(x)`.
    pub fn reconstruct(&mut self, x: &HopfElement) -> Result<C::Elem> {
        let t = self.alg.coproduct(x)?;
        let mut acc = C::Elem::ring_zero();
        for (k, c) in t.terms() {
            let s = self.alg.antipode_monomial(&k[0])?;
            let left = self.minus_element(&s)?;
            let right = self.plus_monomial(&k[1])?;
            acc = acc.add(&left.mul(&right).scale(c));
        }
        Ok(acc)
    }

    /// Factorization report for one connected dessin.
    pub fn report(&mut self, d: &Dessin) -> Result<FactorizationReport> {
        let x = HopfElement::dessin(d);
        let phi = self.phi.on_connected(d);
        let minus = self.minus_connected(d)?;
        let plus = self.plus_connected(d)?;
        let ok = self.reconstruct(&x)? == phi;
        Ok(FactorizationReport {
            dessin: d.clone(),
            phi: phi.to_string(),
            phi_minus: minus.to_string(),
            phi_plus: plus.to_string(),
            reconstruction_check: ok,
            minus_in_range: self.ctx.in_minus(&minus),
            plus_in_range: self.ctx.in_plus(&plus),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub dessin: Dessin,
    pub phi: String,
    pub phi_minus: String,
    pub phi_plus: String,
    pub reconstruction_check: bool,
    pub minus_in_range: bool,
    pub plus_in_range: bool,
}

impl FactorizationReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "dessin": self.dessin.to_json(),
            "phi": self.phi,
            "phi_minus": self.phi_minus,
            "phi_plus": self.phi_plus,
            "reconstruction_check": self.reconstruction_check,
        })
    }
}

/// Reject maps on monomials that are not multiplicative on the samples.
pub fn ensure_multiplicative<R: Ring>(f: &dyn Fn(&Monomial) -> R, samples: &[Dessin]) -> Result<()> {
    if f(&Monomial::one()) != R::ring_one() {
        return Err(Error::Contract("map does not send 1 to 1".into()));
    }
    for a in samples {
        for b in samples {
            let ma = Monomial::of(a);
            let mb = Monomial::of(b);
            if f(&ma.mul(&mb)) != f(&ma).mul(&f(&mb)) {
                return Err(Error::Contract(format!(
                    "map is not multiplicative on [{}]·[{}]",
                    a.to_text(),
                    b.to_text()
                )));
            }
        }
    }
    Ok(())
}

/// Character `D ↦ P_D(−t, −1/t)`.
pub fn jones_character(d: &Dessin) -> LaurentPoly {
    poly::specialize(d, Specialization::Jones).expect("dessin within the state-sum guard")
}

/// Character `D ↦ P_D(t, t)` in the `π` basis.
pub fn martin_character(d: &Dessin) -> PiBasisPoly {
    let p = poly::specialize(d, Specialization::Martin).expect("dessin within the state-sum guard");
    PiBasisPoly::from_laurent(&p).expect("the Martin polynomial is a polynomial")
}

/// Character with values drawn from the context's sampler, seeded by the
/// canonical form, so that isomorphic dessins get equal values.
pub struct RandomCharacter<'a, C: RbContext> {
    ctx: &'a C,
    seed: u64,
}

impl<'a, C: RbContext> RandomCharacter<'a, C> {
    pub fn new(ctx: &'a C, seed: u64) -> Self {
        RandomCharacter { ctx, seed }
    }
}

impl<C: RbContext> Character<C::Elem> for RandomCharacter<'_, C> {
    fn on_connected(&self, d: &Dessin) -> C::Elem {
        use rand::SeedableRng;
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        d.canonical_form().hash(&mut h);
        self.seed.hash(&mut h);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(h.finish());
        self.ctx.random_elem(&mut rng)
    }
}

/// Refined invariants `(P₋, P₊)` of the Jones specialization, computed by
/// the explicit recursion over `(δ, choice)` summands.
pub fn refined_jones(d: &Dessin, convention: Convention) -> Result<(LaurentPoly, LaurentPoly)> {
    let mut memo: HashMap<Dessin, LaurentPoly> = HashMap::new();
    let alg = HopfAlgebra::new(convention);
    let bar = jones_bar(&alg, &d.canonical_form(), &mut memo)?;
    Ok((bar.polar_part().neg(), bar.regular_part()))
}

fn jones_bar(alg: &HopfAlgebra, d: &Dessin, memo: &mut HashMap<Dessin, LaurentPoly>) -> Result<LaurentPoly> {
    let mut acc = jones_character(d);
    for rec in alg.quotient_records(d)? {
        let mut minus = LaurentPoly::ring_one();
        for comp in rec.sub.components() {
            let c = comp.canonical_form();
            let m = match memo.get(&c) {
                Some(v) => v.clone(),
                None => {
                    let v = jones_bar(alg, &c, memo)?.polar_part().neg();
                    memo.insert(c, v.clone());
                    v
                }
            };
            minus = minus.mul(&m);
        }
        acc = acc.add(&minus.mul(&jones_character(&rec.quotient)));
    }
    Ok(acc)
}

/// Coefficient vectors `(a⁻_k, a⁺_k)` of the refined Martin invariants,
/// computed from the coefficient recursions with the structure constants
/// `u_{m,n,k}`.
pub fn refined_martin(d: &Dessin, convention: Convention, sign: SignConvention) -> Result<(Vec<Q>, Vec<Q>)> {
    let alg = HopfAlgebra::new(convention);
    let mut memo: HashMap<Dessin, Vec<Q>> = HashMap::new();
    let (minus, plus) = martin_coeffs(&alg, &d.canonical_form(), sign, &mut memo)?;
    Ok((trim(minus), trim(plus)))
}

fn pi_product(a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
    let mut out = vec![Q::zero(); a.len() + b.len()];
    for (m, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (n, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (k, u) in structure_constants(m, n)?.iter().enumerate() {
                out[k] += x * y * u;
            }
        }
    }
    Ok(trim(out))
}

fn at(v: &[Q], i: isize) -> Q {
    if i < 0 {
        Q::zero()
    } else {
        v.get(i as usize).cloned().unwrap_or_else(Q::zero)
    }
}

fn martin_minus(
    alg: &HopfAlgebra,
    d: &Dessin,
    sign: SignConvention,
    memo: &mut HashMap<Dessin, Vec<Q>>,
) -> Result<Vec<Q>> {
    if let Some(v) = memo.get(d) {
        return Ok(v.clone());
    }
    let v = martin_coeffs(alg, d, sign, memo)?.0;
    memo.insert(d.clone(), v.clone());
    Ok(v)
}

fn martin_coeffs(
    alg: &HopfAlgebra,
    d: &Dessin,
    sign: SignConvention,
    memo: &mut HashMap<Dessin, Vec<Q>>,
) -> Result<(Vec<Q>, Vec<Q>)> {
    let a = martin_character(d).coefficients().to_vec();
    // pairs (a⁻(δ), a(D/δ)) per summand
    let mut pairs: Vec<(Vec<Q>, Vec<Q>)> = Vec::new();
    for rec in alg.quotient_records(d)? {
        let mut minus = vec![Q::one()];
        for comp in rec.sub.components() {
            let m = martin_minus(alg, &comp.canonical_form(), sign, memo)?;
            minus = pi_product(&minus, &m)?;
        }
        pairs.push((minus, martin_character(&rec.quotient).coefficients().to_vec()));
    }
    let mut top = a.len();
    for (m, n) in &pairs {
        top = top.max(m.len() + n.len());
    }
    let s = match sign {
        SignConvention::Birkhoff => -Q::one(),
        SignConvention::Printed => Q::one(),
    };
    let mut minus = vec![Q::zero(); top + 1];
    let mut plus = vec![Q::zero(); top + 1];
    for k in 0..=top {
        let ki = k as isize;
        let mut sum_prev = Q::zero();
        let mut sum_here = Q::zero();
        for (am, an) in &pairs {
            for (m, x) in am.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (n, y) in an.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let u = structure_constants(m, n)?;
                    sum_prev += x * y * at(&u, ki - 1);
                    sum_here += x * y * at(&u, ki);
                }
            }
        }
        minus[k] = &s * (at(&a, ki - 1) + &sum_prev);
        plus[k] = (at(&a, ki) - at(&a, ki - 1)) + (sum_here - sum_prev);
    }
    Ok((minus, plus))
}

/// Dessins `D` on which the factorization of `φ ∘ γ` differs from the
/// factorization of `φ` moved by `γ`.
pub fn equivariance_failures<C: RbContext>(
    ctx: &C,
    phi: &dyn Character<C::Elem>,
    gamma: &dyn Fn(&Dessin) -> Dessin,
    dessins: &[Dessin],
    convention: Convention,
) -> Result<Vec<Dessin>> {
    let moved = |d: &Dessin| phi.on_connected(&gamma(d));
    let mut direct = Birkhoff::new(ctx, &moved, convention);
    let mut base = Birkhoff::new(ctx, phi, convention);
    let mut out = Vec::new();
    for d in dessins {
        let lhs = (direct.minus_connected(d)?, direct.plus_connected(d)?);
        let g = gamma(d);
        let rhs = (base.minus_connected(&g)?, base.plus_connected(&g)?);
        if lhs != rhs {
            out.push(d.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qf;

    #[test]
    fn pi_basis_round_trip() {
        let p = PiBasisPoly::from_monomial(&[q(0), q(0), q(1)]);
        assert_eq!(p.coefficients(), &[q(0), q(-1), q(2)]);
        assert_eq!(p.to_monomial(), vec![q(0), q(0), q(1)]);
    }

    #[test]
    fn structure_constant_examples() {
        assert_eq!(structure_constants(1, 1).unwrap(), vec![q(0), q(-1), q(2)]);
        let u = structure_constants(0, 3).unwrap();
        assert_eq!(u, vec![q(0), q(0), q(0), q(1)]);
        assert_eq!(structure_constants(2, 3).unwrap(), structure_constants(3, 2).unwrap());
        assert!(structure_constants(31, 0).is_err());
    }

    #[test]
    fn shift_is_summation() {
        let ctx = PiContext::new().unwrap();
        let f = PiBasisPoly::from_monomial(&[q(1), q(-2), q(3)]);
        let tf = ctx.t(&f);
        for t in 1..6 {
            let direct: Q = (1..=t).map(|j| f.eval(&q(j))).sum();
            assert_eq!(tf.eval(&q(t)), direct);
        }
    }

    #[test]
    fn contexts_satisfy_relation() {
        assert_eq!(check_rb_relation(&PolarContext::new().unwrap(), 50, 1), 0);
        assert_eq!(check_rb_relation(&PiContext::new().unwrap(), 50, 1), 0);
    }

    #[test]
    fn primitive_polar_example() {
        let ctx = PolarContext::new().unwrap();
        let phi = |_: &Dessin| LaurentPoly::monomial(-1, Q::one());
        let mut b = Birkhoff::new(&ctx, &phi, Convention::Reduced);
        let e = Dessin::single_edge();
        assert_eq!(b.minus_connected(&e).unwrap(), LaurentPoly::monomial(-1, q(-1)));
        assert!(b.plus_connected(&e).unwrap().is_ring_zero());
    }

    #[test]
    fn martin_single_edge() {
        let e = Dessin::single_edge();
        let (m, p) = refined_martin(&e, Convention::Reduced, SignConvention::Printed).unwrap();
        assert_eq!(m, vec![q(0), q(0), q(1)]);
        assert_eq!(p, vec![q(0), q(1), q(-1)]);
        let (m, _) = refined_martin(&e, Convention::Reduced, SignConvention::Birkhoff).unwrap();
        assert_eq!(m, vec![q(0), q(0), q(-1)]);
        let _ = qf(1, 2);
    }

    #[test]
    fn jones_single_edge() {
        let (m, p) = refined_jones(&Dessin::single_edge(), Convention::Reduced).unwrap();
        assert!(m.is_ring_zero());
        assert_eq!(p, LaurentPoly::monomial(1, q(-1)));
    }

    #[test]
    fn routes_agree_and_reconstruct() {
        let polar = PolarContext::new().unwrap();
        let pi = PiContext::new().unwrap();
        let jones = |d: &Dessin| jones_character(d);
        let martin = |d: &Dessin| martin_character(d);
        let mut bj = Birkhoff::new(&polar, &jones, Convention::Reduced);
        let mut bm = Birkhoff::new(&pi, &martin, Convention::Reduced);
        let rnd = RandomCharacter::new(&polar, 7);
        let mut br = Birkhoff::new(&polar, &rnd, Convention::Reduced);
        for d in 1..=3 {
            for x in crate::enumerate::enumerate_connected(d).unwrap() {
                let (m, p) = refined_jones(&x, Convention::Reduced).unwrap();
                assert_eq!(bj.minus_connected(&x).unwrap(), m);
                assert_eq!(bj.plus_connected(&x).unwrap(), p);
                let (m, p) = refined_martin(&x, Convention::Reduced, SignConvention::Birkhoff).unwrap();
                assert_eq!(bm.minus_connected(&x).unwrap().coefficients(), &m[..]);
                assert_eq!(bm.plus_connected(&x).unwrap().coefficients(), &p[..]);
                assert!(bj.report(&x).unwrap().reconstruction_check);
                assert!(bm.report(&x).unwrap().reconstruction_check);
                assert!(br.report(&x).unwrap().reconstruction_check);
            }
        }
    }
}
