//! Belyi-extending maps as lifting schemes acting on dessins, and the
//! ramification semigroup homomorphisms.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::json;

use crate::dessin::Dessin;
use crate::error::{guard, Error, Result};
use crate::perm::{self, Perm};
use crate::ring::{parse_q, q_to_string, Q};

/// Largest `deg(η)·#E(D)` accepted by [`LiftingScheme::apply`].
pub const MAX_APPLY_DEGREE: usize = 10_000;

/// Word in the free group on `x₀` (`a`, inverse `A`) and `x₁` (`b`,
/// inverse `B`), acting left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

fn inv_letter(c: u8) -> u8 {
    match c {
        b'a' => b'A',
        b'A' => b'a',
        b'b' => b'B',
        _ => b'b',
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        if let Some(c) = s.bytes().find(|c| !b"aAbB".contains(c)) {
            return Err(Error::Domain(format!("invalid letter '{}' in word", c as char)));
        }
        Ok(Word::from_letters(s.bytes()))
    }

    fn from_letters(letters: impl IntoIterator<Item = u8>) -> Self {
        let mut out: Vec<u8> = Vec::new();
        for c in letters {
            if out.last() == Some(&inv_letter(c)) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&c| inv_letter(c)).collect())
    }

    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.0.clone();
        while w.len() >= 2 && w[0] == inv_letter(w[w.len() - 1]) {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    /// Act on an edge of `d` through `σ₀` and `σ₁`.
    pub fn act(&self, d_s0: &[usize], d_s0_inv: &[usize], d_s1: &[usize], d_s1_inv: &[usize], e: usize) -> usize {
        self.0.iter().fold(e, |e, c| match c {
            b'a' => d_s0[e],
            b'A' => d_s0_inv[e],
            b'b' => d_s1[e],
            _ => d_s1_inv[e],
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", String::from_utf8_lossy(&self.0))
        }
    }
}

/// Marked point of the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marked {
    Zero,
    One,
    Infinity,
}

/// Ramification tuple `(d, m, n, r)` of a Belyi map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RamTuple {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub r: usize,
}

impl RamTuple {
    pub fn is_single_cycle(&self) -> bool {
        2 * self.d + 1 == self.m + self.n + self.r
    }
}

impl fmt::Display for RamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.d, self.m, self.n, self.r)
    }
}

/// Finite-state description of a genus-zero Belyi map `η`: the monodromy
/// `α₀, α₁` on its sheets and, for every sheet and generator, the word in
/// `π₁(P¹∖{0,1,∞})` traced by the lifted loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingScheme {
    alpha0: Perm,
    alpha1: Perm,
    words: Vec<[Word; 2]>,
    endpoints: [Marked; 3],
}

impl LiftingScheme {
    /// Validated constructor. Every cycle word of `α₀`, `α₁`, `α_∞` must be
    /// trivial or conjugate to one of `x₀`, `x₁`, `x_∞`, each appearing once,
    /// and the map must have genus zero.
    pub fn new(alpha0: Perm, alpha1: Perm, words: Vec<[Word; 2]>) -> Result<Self> {
        perm::validate(&alpha0)?;
        perm::validate(&alpha1)?;
        let d = alpha0.len();
        if d == 0 || alpha1.len() != d || words.len() != d {
            return Err(Error::Domain("scheme sizes disagree or are zero".into()));
        }
        let mut s = LiftingScheme { alpha0, alpha1, words, endpoints: [Marked::Zero, Marked::One, Marked::Infinity] };
        let t = s.ram_tuple();
        if t.m + t.n + t.r != t.d + 2 {
            return Err(Error::Contract(format!("scheme {t} violates Riemann–Hurwitz for genus 0")));
        }
        let mut seen: [Option<Marked>; 3] = [None; 3];
        for (target, cycles) in [
            (Marked::Zero, s.cycle_words(0)),
            (Marked::One, s.cycle_words(1)),
            (Marked::Infinity, s.cycle_words(2)),
        ] {
            for w in cycles {
                let c = w.cyclically_reduced();
                let source = if c.is_empty() {
                    continue;
                } else if c.0 == b"a" {
                    0
                } else if c.0 == b"b" {
                    1
                } else if c.0 == b"AB" || c.0 == b"BA" {
                    2
                } else {
                    return Err(Error::Contract(format!("cycle word {w} is not a simple loop")));
                };
                if seen[source].replace(target).is_some() {
                    return Err(Error::Contract("a marked point is lifted twice".into()));
                }
            }
        }
        for (i, t) in seen.iter().enumerate() {
            s.endpoints[i] = t.ok_or_else(|| Error::Contract("a marked point has no lift".into()))?;
        }
        Ok(s)
    }

    pub fn identity() -> Self {
        LiftingScheme::power(1).expect("n = 1")
    }

    /// `z ↦ zⁿ`.
    pub fn power(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("power map of degree 0".into()));
        }
        let words = (0..n)
            .map(|i| {
                let w0 = if i == n - 1 { Word(b"a".to_vec()) } else { Word::empty() };
                let w1 = if i == 0 { Word(b"b".to_vec()) } else { Word::empty() };
                [w0, w1]
            })
            .collect();
        LiftingScheme::new(perm::long_cycle(n), perm::identity(n), words)
    }

    /// `z ↦ 1 − z`.
    pub fn involution() -> Self {
        LiftingScheme::new(vec![0], vec![0], vec![[Word(b"b".to_vec()), Word(b"a".to_vec())]])
            .expect("valid involution")
    }

    pub fn sheets(&self) -> usize {
        self.alpha0.len()
    }

    pub fn alpha0(&self) -> &[usize] {
        &self.alpha0
    }

    pub fn alpha1(&self) -> &[usize] {
        &self.alpha1
    }

    pub fn word(&self, sheet: usize, generator: usize) -> &Word {
        &self.words[sheet][generator]
    }

    /// Images of `0, 1, ∞`.
    pub fn endpoints(&self) -> [Marked; 3] {
        self.endpoints
    }

    /// Whether `0, 1, ∞` are each fixed.
    pub fn fixes_marked_points(&self) -> bool {
        self.endpoints == [Marked::Zero, Marked::One, Marked::Infinity]
    }

    /// Whether `{0, 1, ∞}` maps onto itself.
    pub fn maps_onto_marked_points(&self) -> bool {
        let mut e = self.endpoints.to_vec();
        e.sort();
        e.dedup();
        e.len() == 3
    }

    fn alpha_inf(&self) -> Perm {
        perm::inverse(&perm::compose(&self.alpha0, &self.alpha1))
    }

    /// One step of the `g`-th generator (`2` for `x_∞`) from `sheet`.
    fn step(&self, sheet: usize, g: usize) -> (usize, Word) {
        match g {
            0 | 1 => {
                let a = if g == 0 { &self.alpha0 } else { &self.alpha1 };
                (a[sheet], self.words[sheet][g].clone())
            }
            _ => {
                let j = perm::inverse(&self.alpha0)[sheet];
                let k = perm::inverse(&self.alpha1)[j];
                (k, self.words[j][0].inverse().concat(&self.words[k][1].inverse()))
            }
        }
    }

    fn cycle_words(&self, g: usize) -> Vec<Word> {
        let a = match g {
            0 => self.alpha0.clone(),
            1 => self.alpha1.clone(),
            _ => self.alpha_inf(),
        };
        perm::cycles(&a)
            .into_iter()
            .map(|c| {
                c.iter().fold(Word::empty(), |acc, &i| acc.concat(&self.step(i, g).1))
            })
            .collect()
    }

    pub fn ram_tuple(&self) -> RamTuple {
        RamTuple {
            d: self.sheets(),
            m: perm::cycle_count(&self.alpha0),
            n: perm::cycle_count(&self.alpha1),
            r: perm::cycle_count(&self.alpha_inf()),
        }
    }

    /// Run a word through the scheme from `sheet`.
    fn run(&self, sheet: usize, w: &Word) -> (usize, Word) {
        let inv0 = perm::inverse(&self.alpha0);
        let inv1 = perm::inverse(&self.alpha1);
        let mut s = sheet;
        let mut out = Word::empty();
        for &c in w.letters() {
            match c {
                b'a' => {
                    out = out.concat(&self.words[s][0]);
                    s = self.alpha0[s];
                }
                b'b' => {
                    out = out.concat(&self.words[s][1]);
                    s = self.alpha1[s];
                }
                b'A' => {
                    s = inv0[s];
                    out = out.concat(&self.words[s][0].inverse());
                }
                _ => {
                    s = inv1[s];
                    out = out.concat(&self.words[s][1].inverse());
                }
            }
        }
        (s, out)
    }

    /// Scheme of `outer ∘ inner`; sheets are pairs `(outer, inner)` encoded
    /// as `outer·d_inner + inner`.
    pub fn compose(inner: &LiftingScheme, outer: &LiftingScheme) -> LiftingScheme {
        let di = inner.sheets();
        let n = outer.sheets() * di;
        let mut a0 = vec![0; n];
        let mut a1 = vec![0; n];
        let mut words = Vec::with_capacity(n);
        for o in 0..outer.sheets() {
            for i in 0..di {
                let mut pair: [Word; 2] = Default::default();
                for g in 0..2 {
                    let (o2, w) = outer.step(o, g);
                    let (i2, w2) = inner.run(i, &w);
                    let target = if g == 0 { &mut a0 } else { &mut a1 };
                    target[o * di + i] = o2 * di + i2;
                    pair[g] = w2;
                }
                words.push(pair);
            }
        }
        LiftingScheme::new(a0, a1, words).expect("composite of valid schemes is valid")
    }

    /// The dessin of `η ∘ f` for the Belyi map `f` of `d`.
    pub fn apply(&self, d: &Dessin) -> Result<Dessin> {
        let k = self.sheets();
        let n = d.degree();
        guard("scheme degree × dessin degree", k * n, MAX_APPLY_DEGREE)?;
        let s0 = d.sigma0();
        let s1 = d.sigma1();
        let s0i = perm::inverse(s0);
        let s1i = perm::inverse(s1);
        let mut t0 = vec![0; k * n];
        let mut t1 = vec![0; k * n];
        for i in 0..k {
            for e in 0..n {
                let e0 = self.words[i][0].act(s0, &s0i, s1, &s1i, e);
                let e1 = self.words[i][1].act(s0, &s0i, s1, &s1i, e);
                t0[i * n + e] = self.alpha0[i] * n + e0;
                t1[i * n + e] = self.alpha1[i] * n + e1;
            }
        }
        let out = Dessin::from_permutations(t0, t1)?;
        if out.genus() != d.genus() || out.num_components() != d.num_components() {
            return Err(Error::Contract(format!(
                "composite has genus {} but the source curve has genus {}",
                out.genus(),
                d.genus()
            )));
        }
        Ok(out)
    }

    /// Gauge-normalized form rooted at `root`: sheets renumbered in
    /// breadth-first order and tree words made trivial.
    fn normalized_from(&self, root: usize) -> (Perm, Perm, Vec<[Word; 2]>) {
        let n = self.sheets();
        let mut label = vec![usize::MAX; n];
        let mut gauge = vec![Word::empty(); n];
        let mut order = vec![root];
        label[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            for g in 0..2 {
                let (t, w) = self.step(s, g);
                if label[t] == usize::MAX {
                    label[t] = order.len();
                    order.push(t);
                    gauge[t] = gauge[s].concat(&w);
                    queue.push_back(t);
                }
            }
        }
        let mut a0 = vec![0; n];
        let mut a1 = vec![0; n];
        let mut words = vec![<[Word; 2]>::default(); n];
        for &s in &order {
            for g in 0..2 {
                let (t, w) = self.step(s, g);
                let nw = gauge[s].concat(&w).concat(&gauge[t].inverse());
                if g == 0 {
                    a0[label[s]] = label[t];
                } else {
                    a1[label[s]] = label[t];
                }
                words[label[s]][g] = nw;
            }
        }
        (a0, a1, words)
    }

    /// Whether the two schemes agree after relabelling sheets and changing
    /// the path choices along a spanning tree. A `false` answer means no
    /// such normalization was found.
    pub fn equivalent(&self, other: &LiftingScheme) -> bool {
        if self.sheets() != other.sheets() || self.ram_tuple() != other.ram_tuple() {
            return false;
        }
        if perm::cycles(&self.alpha0).len() + perm::cycles(&self.alpha1).len() == 0 {
            return true;
        }
        let target = other.normalized_from(0);
        (0..self.sheets()).any(|r| self.normalized_from(r) == target)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t = self.ram_tuple();
        json!({
            "sheets": self.sheets(),
            "alpha0": self.alpha0,
            "alpha1": self.alpha1,
            "words": self.words.iter().map(|w| [w[0].to_string(), w[1].to_string()]).collect::<Vec<_>>(),
            "tuple": [t.d, t.m, t.n, t.r],
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let perm_of = |key: &str| -> Result<Perm> {
            serde_json::from_value(v.get(key).cloned().unwrap_or_default())
                .map_err(|e| Error::Domain(format!("scheme field {key}: {e}")))
        };
        let a0 = perm_of("alpha0")?;
        let a1 = perm_of("alpha1")?;
        let raw: Vec<[String; 2]> = serde_json::from_value(v.get("words").cloned().unwrap_or_default())
            .map_err(|e| Error::Domain(format!("scheme field words: {e}")))?;
        let words = raw
            .iter()
            .map(|[x, y]| Ok([Word::parse(x)?, Word::parse(y)?]))
            .collect::<Result<Vec<_>>>()?;
        let s = LiftingScheme::new(a0, a1, words)?;
        if let Some(t) = v.get("tuple") {
            let want: Vec<usize> = serde_json::from_value(t.clone())
                .map_err(|e| Error::Domain(format!("scheme field tuple: {e}")))?;
            let got = s.ram_tuple();
            if want != [got.d, got.m, got.n, got.r] {
                return Err(Error::Contract(format!("declared tuple {want:?} but monodromy gives {got}")));
            }
        }
        Ok(s)
    }
}

/// Matrix-valued ramification homomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatMode {
    /// `(d, m−1; 0, 1)`.
    Mat2,
    /// `(d, n−1; 0, 1)`.
    Mat2N,
    /// `(d, m−1, n−1; 0, 1, 0; 0, 0, 1)`.
    Mat3,
}

impl FromStr for MatMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mat2" => Ok(MatMode::Mat2),
            "mat2n" => Ok(MatMode::Mat2N),
            "mat3" => Ok(MatMode::Mat3),
            _ => Err(Error::Domain(format!("unknown matrix mode '{s}'"))),
        }
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

pub fn mat_hom(t: &RamTuple, mode: MatMode) -> IntMatrix {
    let (d, m, n) = (t.d as i64, t.m as i64 - 1, t.n as i64 - 1);
    match mode {
        MatMode::Mat2 => vec![vec![d, m], vec![0, 1]],
        MatMode::Mat2N => vec![vec![d, n], vec![0, 1]],
        MatMode::Mat3 => vec![vec![d, m, n], vec![0, 1, 0], vec![0, 0, 1]],
    }
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let k = b.len();
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| (0..k).map(|l| row[l] * b[l][j]).sum()).collect())
        .collect()
}

pub fn det2(a: &IntMatrix) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// `n(r) = p₁^{|a₁|}⋯p_ℓ^{|a_ℓ|}` for `r = Π pᵢ^{aᵢ}`, i.e. numerator
/// times denominator in lowest terms.
pub fn n_of_r(r: &Q) -> Result<BigInt> {
    if !r.is_positive() {
        return Err(Error::Domain(format!("n(r) needs r > 0, got {}", q_to_string(r))));
    }
    Ok(r.numer() * r.denom())
}

/// Word `F^{ε₀} μ_{r₁} F μ_{r₂} F ⋯ F μ_{r_k} F^{ε₁}` in `Q*₊ ⋆ Z/2Z`;
/// with integer factors it lies in `N ⋆ Z/2Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupWord {
    pub eps0: bool,
    pub factors: Vec<Q>,
    pub eps1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
/// Letter of a semigroup word.
pub enum Letter {
    F,
    Mu(Q),
}

impl SemigroupWord {
    pub fn identity() -> Self {
        SemigroupWord { eps0: false, factors: Vec::new(), eps1: false }
    }

    fn from_letters(tokens: Vec<Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for t in tokens {
            match (stack.last().cloned(), t) {
                (_, Letter::Mu(r)) if r.is_one() => {}
                (Some(Letter::F), Letter::F) => {
                    stack.pop();
                }
                (Some(Letter::Mu(a)), Letter::Mu(b)) => {
                    stack.pop();
                    let p = a * b;
                    if !p.is_one() {
                        stack.push(Letter::Mu(p));
                    }
                }
                (_, t) => stack.push(t),
            }
        }
        let eps0 = matches!(stack.first(), Some(Letter::F));
        let eps1 = stack.len() > 1 && matches!(stack.last(), Some(Letter::F));
        let factors = stack
            .iter()
            .filter_map(|t| match t {
                Letter::Mu(r) => Some(r.clone()),
                Letter::F => None,
            })
            .collect::<Vec<_>>();
        SemigroupWord { eps0, factors, eps1 }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        if self.eps0 {
            out.push(Letter::F);
        }
        for (i, r) in self.factors.iter().enumerate() {
            if i > 0 {
                out.push(Letter::F);
            }
            out.push(Letter::Mu(r.clone()));
        }
        if self.eps1 {
            out.push(Letter::F);
        }
        out
    }

    pub fn concat(&self, other: &SemigroupWord) -> SemigroupWord {
        let mut t = self.letters();
        t.extend(other.letters());
        SemigroupWord::from_letters(t)
    }

    pub fn is_integral(&self) -> bool {
        self.factors.iter().all(|r| r.is_integer())
    }

    /// Number of `F` letters.
    pub fn f_count(&self) -> usize {
        usize::from(self.eps0) + usize::from(self.eps1) + self.factors.len().saturating_sub(1)
    }

    /// `Π rᵢ`.
    pub fn degree(&self) -> Q {
        self.factors.iter().fold(Q::one(), |acc, r| acc * r)
    }

    /// `n(υ) = Π n(rᵢ)`.
    pub fn n_value(&self) -> Result<BigInt> {
        self.factors.iter().try_fold(BigInt::one(), |acc, r| Ok(acc * n_of_r(r)?))
    }

    /// Scheme of the word; the leftmost letter acts first on the dessin.
    pub fn to_scheme(&self) -> Result<LiftingScheme> {
        let mut acc = LiftingScheme::identity();
        for t in self.letters() {
            let next = match t {
                Letter::F => LiftingScheme::involution(),
                Letter::Mu(r) => {
                    if !r.is_integer() || !r.is_positive() {
                        return Err(Error::Domain(format!(
                            "μ_{} has no lifting scheme",
                            q_to_string(&r)
                        )));
                    }
                    let n: usize = r.to_integer().try_into().map_err(|_| Error::Domain("factor too large".into()))?;
                    LiftingScheme::power(n)?
                }
            };
            acc = LiftingScheme::compose(&acc, &next);
        }
        Ok(acc)
    }
}

impl FromStr for SemigroupWord {
    type Err = Error;
    /// Tokens `F` and `mu<r>` (or `μ<r>`), separated by spaces or `*`.
    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for raw in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if raw == "F" {
                tokens.push(Letter::F);
            } else if raw == "1" || raw == "Id" {
            } else if let Some(rest) = raw.strip_prefix("mu").or_else(|| raw.strip_prefix('μ')) {
                let rest = rest.trim_start_matches('_');
                let r = parse_q(rest)?;
                if !r.is_positive() {
                    return Err(Error::Domain(format!("μ factor must be positive, got {rest}")));
                }
                tokens.push(Letter::Mu(r));
            } else {
                return Err(Error::Domain(format!("unknown semigroup token '{raw}'")));
            }
        }
        Ok(SemigroupWord::from_letters(tokens))
    }
}

impl fmt::Display for SemigroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters()
            .iter()
            .map(|t| match t {
                Letter::F => "F".to_string(),
                Letter::Mu(r) => format!("mu{}", q_to_string(r)),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Value attached to a semigroup word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordWeight {
    Degree(Q),
    Matrix(IntMatrix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightHom {
    Degree,
    Mat2,
}

pub fn word_weight(w: &SemigroupWord, hom: WeightHom) -> Result<WordWeight> {
    match hom {
        WeightHom::Degree => Ok(WordWeight::Degree(w.degree())),
        WeightHom::Mat2 => Ok(WordWeight::Matrix(mat_hom(&w.to_scheme()?.ram_tuple(), MatMode::Mat2))),
    }
}

/// All reduced words of `N ⋆ Z/2Z` with at most `max_factors` factors, each
/// in `2..=max_n`.
pub fn catalog_words(max_factors: usize, max_n: u64) -> Vec<SemigroupWord> {
    let mut out = Vec::new();
    let mut seqs: Vec<Vec<u64>> = vec![Vec::new()];
    for len in 0..=max_factors {
        let layer: Vec<Vec<u64>> = if len == 0 {
            vec![Vec::new()]
        } else {
            seqs.iter()
                .filter(|s| s.len() == len - 1)
                .flat_map(|s| (2..=max_n).map(move |n| [s.clone(), vec![n]].concat()))
                .collect()
        };
        for s in &layer {
            let factors: Vec<Q> = s.iter().map(|&n| Q::from_integer(BigInt::from(n))).collect();
            let ends: &[(bool, bool)] =
                if s.is_empty() { &[(false, false), (true, false)] } else { &[(false, false), (true, false), (false, true), (true, true)] };
            for &(eps0, eps1) in ends {
                out.push(SemigroupWord { eps0, factors: factors.clone(), eps1 });
            }
        }
        seqs.extend(layer);
    }
    out
}

/// Profile data of a dessin: degree and the three cycle types.
pub fn passport(d: &Dessin) -> (usize, Vec<usize>, Vec<usize>, Vec<usize>) {
    let r = d.ramification();
    (r.d, r.mu, r.nu, r.rho)
}

/// Groups of dessins sharing a passport on which `s` produces more than one
/// ramification tuple.
pub fn transport_violations(s: &LiftingScheme, dessins: &[Dessin]) -> Result<Vec<Vec<Dessin>>> {
    let mut groups: HashMap<_, Vec<(RamTuple, Dessin)>> = HashMap::new();
    for d in dessins {
        let out = s.apply(d)?;
        let r = out.ramification();
        let t = RamTuple { d: r.d, m: r.m, n: r.n_white, r: r.r };
        groups.entry(passport(d)).or_default().push((t, d.clone()));
    }
    Ok(groups
        .into_values()
        .filter(|g| g.iter().any(|(t, _)| *t != g[0].0))
        .map(|g| g.into_iter().map(|(_, d)| d).collect())
        .collect())
}

/// Whether the single-cycle relation `2d+1 = m+n+r` is preserved by the
/// tuple law for two tuples satisfying it.
pub fn single_cycle_closed(inner: &RamTuple, outer: &RamTuple) -> bool {
    let c = compose_tuple(inner, outer);
    !(inner.is_single_cycle() && outer.is_single_cycle()) || c.is_single_cycle()
}

/// Tuple law for `outer ∘ inner` when both fix `0, 1, ∞`.
pub fn compose_tuple(inner: &RamTuple, outer: &RamTuple) -> RamTuple {
    RamTuple {
        d: inner.d * outer.d,
        m: inner.m + inner.d * (outer.m - 1),
        n: inner.n + inner.d * (outer.n - 1),
        r: inner.r + inner.d * (outer.r - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qf};

    #[test]
    fn power_tuples() {
        assert_eq!(LiftingScheme::power(3).unwrap().ram_tuple(), RamTuple { d: 3, m: 1, n: 3, r: 1 });
        assert!(LiftingScheme::power(0).is_err());
        assert!(LiftingScheme::power(1).unwrap().equivalent(&LiftingScheme::identity()));
    }

    #[test]
    fn involution_squares_to_identity() {
        let f = LiftingScheme::involution();
        let ff = LiftingScheme::compose(&f, &f);
        assert!(ff.equivalent(&LiftingScheme::identity()));
        assert_eq!(f.endpoints(), [Marked::One, Marked::Zero, Marked::Infinity]);
    }

    #[test]
    fn powers_compose() {
        for (a, b) in [(2, 3), (3, 2), (2, 2), (4, 3)] {
            let c = LiftingScheme::compose(&LiftingScheme::power(a).unwrap(), &LiftingScheme::power(b).unwrap());
            assert!(c.equivalent(&LiftingScheme::power(a * b).unwrap()), "{a} {b}");
        }
    }

    #[test]
    fn apply_examples() {
        let p = LiftingScheme::power(3).unwrap();
        assert!(p.apply(&Dessin::star(2)).unwrap().is_isomorphic(&Dessin::star(6)));
        let d = Dessin::path(3);
        assert!(LiftingScheme::identity().apply(&d).unwrap().is_isomorphic(&d));
        assert!(LiftingScheme::involution().apply(&d).unwrap().is_isomorphic(&d.color_swap()));
    }

    #[test]
    fn mat2_law_on_conjugated_powers() {
        let words = ["mu2", "mu3", "F mu2 F", "F mu3 F", "mu2 F mu2 F"];
        for a in words {
            for b in words {
                let s1 = a.parse::<SemigroupWord>().unwrap().to_scheme().unwrap();
                let s2 = b.parse::<SemigroupWord>().unwrap().to_scheme().unwrap();
                assert!(s1.fixes_marked_points());
                let c = LiftingScheme::compose(&s1, &s2);
                for mode in [MatMode::Mat2, MatMode::Mat2N, MatMode::Mat3] {
                    assert_eq!(
                        mat_hom(&c.ram_tuple(), mode),
                        mat_mul(&mat_hom(&s1.ram_tuple(), mode), &mat_hom(&s2.ram_tuple(), mode)),
                        "{a} then {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn semigroup_words() {
        let w: SemigroupWord = "F mu2 F mu3".parse().unwrap();
        assert_eq!(word_weight(&w, WeightHom::Degree).unwrap(), WordWeight::Degree(q(6)));
        let id: SemigroupWord = "F F mu1".parse().unwrap();
        assert_eq!(id, SemigroupWord::identity());
        let m: SemigroupWord = "mu2 F F mu3".parse().unwrap();
        assert_eq!(m.factors, vec![q(6)]);
        assert_eq!(n_of_r(&qf(4, 3)).unwrap(), BigInt::from(12));
        assert_eq!(n_of_r(&q(1)).unwrap(), BigInt::one());
        assert!(n_of_r(&q(0)).is_err());
        assert_eq!(mat_hom(&RamTuple { d: 6, m: 3, n: 1, r: 1 }, MatMode::Mat2), vec![vec![6, 2], vec![0, 1]]);
    }

    #[test]
    fn scheme_json_round_trip() {
        let s = "mu2 F mu3".parse::<SemigroupWord>().unwrap().to_scheme().unwrap();
        let back = LiftingScheme::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let bad = json!({"alpha0": [1, 0], "alpha1": [0, 1], "words": [["1", "b"], ["1", "1"]]});
        assert!(LiftingScheme::from_json(&bad).is_err());
    }
}
