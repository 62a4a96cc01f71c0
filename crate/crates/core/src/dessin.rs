//! Dessins d'enfant as pairs of permutations on edge labels.
//!
//! A dessin of degree `d` is a pair `(σ₀, σ₁)` of permutations of `0..d`.
//! The cycles of `σ₀` are the black vertices, the cycles of `σ₁` the white
//! vertices, and the cyclic order of a cycle is the counterclockwise order of
//! edges around that vertex. Faces are the cycles of `σ∞ = (σ₀ ∘ σ₁)⁻¹`,
//! where `σ₀ ∘ σ₁` applies `σ₁` first.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Perm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDessin")]
pub struct Dessin {
    degree: usize,
    sigma0: Perm,
    sigma1: Perm,
}

#[derive(Deserialize)]
struct RawDessin {
    degree: usize,
    sigma0: Vec<usize>,
    sigma1: Vec<usize>,
}

impl TryFrom<RawDessin> for Dessin {
    type Error = Error;

    fn try_from(raw: RawDessin) -> Result<Self> {
        if raw.sigma0.len() != raw.degree {
            return Err(Error::InvalidPermutation(format!(
                "degree {} but sigma0 has length {}",
                raw.degree,
                raw.sigma0.len()
            )));
        }
        Dessin::from_permutations(raw.sigma0, raw.sigma1)
    }
}

/// Counts and profiles of a dessin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationData {
    pub d: usize,
    pub m: usize,
    pub n_white: usize,
    pub r: usize,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub rho: Vec<usize>,
    pub b0: usize,
    pub euler_surface: i64,
    pub genus_total: usize,
}

/// Vertex incidence of every edge.
#[derive(Clone, Debug)]
pub struct Incidence {
    pub black_of: Vec<usize>,
    pub white_of: Vec<usize>,
    pub black: Vec<Vec<usize>>,
    pub white: Vec<Vec<usize>>,
}

impl Dessin {
    pub fn from_permutations(sigma0: Perm, sigma1: Perm) -> Result<Self> {
        if sigma0.len() != sigma1.len() {
            return Err(Error::InvalidPermutation(format!(
                "length mismatch: {} vs {}",
                sigma0.len(),
                sigma1.len()
            )));
        }
        if sigma0.is_empty() {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        perm::validate(&sigma0)?;
        perm::validate(&sigma1)?;
        Ok(Dessin {
            degree: sigma0.len(),
            sigma0,
            sigma1,
        })
    }

    pub(crate) fn from_parts_unchecked(sigma0: Perm, sigma1: Perm) -> Self {
        debug_assert!(perm::validate(&sigma0).is_ok() && perm::validate(&sigma1).is_ok());
        debug_assert_eq!(sigma0.len(), sigma1.len());
        Dessin {
            degree: sigma0.len(),
            sigma0,
            sigma1,
        }
    }

    pub fn single_edge() -> Self {
        Dessin::from_parts_unchecked(vec![0], vec![0])
    }

    /// One black vertex of valence `n` with `n` white leaves.
    pub fn star(n: usize) -> Self {
        Dessin::from_parts_unchecked(perm::long_cycle(n), perm::identity(n))
    }

    /// One white vertex of valence `n` with `n` black leaves.
    pub fn white_star(n: usize) -> Self {
        Dessin::star(n).color_swap()
    }

    /// Path with `k` edges whose first vertex is black.
    pub fn path(k: usize) -> Self {
        let mut s0 = perm::identity(k);
        let mut s1 = perm::identity(k);
        // edge i joins vertex i and vertex i+1; even vertices are black
        for i in 0..k.saturating_sub(1) {
            let shared_is_white = i % 2 == 0;
            let target = if shared_is_white { &mut s1 } else { &mut s0 };
            target[i] = i + 1;
            target[i + 1] = i;
        }
        Dessin::from_parts_unchecked(s0, s1)
    }

    /// Two vertices joined by `k` parallel edges, planar embedding.
    pub fn bouquet(k: usize) -> Self {
        Dessin::from_parts_unchecked(perm::long_cycle(k), perm::inverse(&perm::long_cycle(k)))
    }

    /// Polygon with `k` black and `k` white vertices (`2k` edges).
    pub fn polygon(k: usize) -> Self {
        let d = 2 * k;
        let s0 = (0..d).map(|e| if e % 2 == 0 { (e + d - 1) % d } else { (e + 1) % d }).collect();
        let s1 = (0..d).map(|e| if e % 2 == 0 { e + 1 } else { e - 1 }).collect();
        Dessin::from_parts_unchecked(s0, s1)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sigma0(&self) -> &[usize] {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &[usize] {
        &self.sigma1
    }

    /// `σ∞ = (σ₀ ∘ σ₁)⁻¹`.
    pub fn sigma_inf(&self) -> Perm {
        perm::inverse(&perm::compose(&self.sigma0, &self.sigma1))
    }

    pub fn incidence(&self) -> Incidence {
        let black = perm::cycles(&self.sigma0);
        let white = perm::cycles(&self.sigma1);
        let mut black_of = vec![0; self.degree];
        let mut white_of = vec![0; self.degree];
        for (v, cyc) in black.iter().enumerate() {
            for &e in cyc {
                black_of[e] = v;
            }
        }
        for (v, cyc) in white.iter().enumerate() {
            for &e in cyc {
                white_of[e] = v;
            }
        }
        Incidence {
            black_of,
            white_of,
            black,
            white,
        }
    }

    pub fn num_black(&self) -> usize {
        perm::cycle_count(&self.sigma0)
    }

    pub fn num_white(&self) -> usize {
        perm::cycle_count(&self.sigma1)
    }

    pub fn num_faces(&self) -> usize {
        perm::cycle_count(&self.sigma_inf())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_black() + self.num_white()
    }

    /// Orbit index of every edge under `⟨σ₀, σ₁⟩`, numbered by least edge.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.degree];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.degree {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(e) = stack.pop() {
                for f in [self.sigma0[e], self.sigma1[e]] {
                    if label[f] == usize::MAX {
                        label[f] = count;
                        stack.push(f);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// Edge sets of the connected components, each sorted increasingly.
    pub fn component_edges(&self) -> Vec<Vec<usize>> {
        let (label, count) = self.component_labels();
        let mut out = vec![Vec::new(); count];
        for (e, &c) in label.iter().enumerate() {
            out[c].push(e);
        }
        out
    }

    /// Restriction to an edge set closed under `σ₀` and `σ₁`, relabeled in
    /// increasing order.
    pub fn restrict(&self, edges: &[usize]) -> Dessin {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &e) in edges.iter().enumerate() {
            index[e] = i;
        }
        let s0 = edges.iter().map(|&e| index[self.sigma0[e]]).collect();
        let s1 = edges.iter().map(|&e| index[self.sigma1[e]]).collect();
        Dessin::from_parts_unchecked(s0, s1)
    }

    pub fn components(&self) -> Vec<Dessin> {
        self.component_edges()
            .iter()
            .map(|edges| self.restrict(edges))
            .collect()
    }

    pub fn ramification(&self) -> RamificationData {
        let s_inf = self.sigma_inf();
        let mu = perm::cycle_type(&self.sigma0);
        let nu = perm::cycle_type(&self.sigma1);
        let rho = perm::cycle_type(&s_inf);
        let (m, n_white, r) = (mu.len(), nu.len(), rho.len());
        let b0 = self.num_components();
        let euler = m as i64 + n_white as i64 + r as i64 - self.degree as i64;
        let genus_total = ((2 * b0 as i64 - euler) / 2) as usize;
        RamificationData {
            d: self.degree,
            m,
            n_white,
            r,
            mu,
            nu,
            rho,
            b0,
            euler_surface: euler,
            genus_total,
        }
    }

    pub fn genus(&self) -> usize {
        self.ramification().genus_total
    }

    /// Relabel edges through `p`: edge `e` becomes `p[e]`.
    pub fn relabel(&self, p: &[usize]) -> Dessin {
        let mut s0 = vec![0; self.degree];
        let mut s1 = vec![0; self.degree];
        for e in 0..self.degree {
            s0[p[e]] = p[self.sigma0[e]];
            s1[p[e]] = p[self.sigma1[e]];
        }
        Dessin::from_parts_unchecked(s0, s1)
    }

    /// Exchange black and white vertices.
    pub fn color_swap(&self) -> Dessin {
        Dessin::from_parts_unchecked(self.sigma1.clone(), self.sigma0.clone())
    }

    /// Orientation reversal.
    pub fn mirror(&self) -> Dessin {
        Dessin::from_parts_unchecked(perm::inverse(&self.sigma0), perm::inverse(&self.sigma1))
    }

    fn canonical_connected(&self) -> Dessin {
        let d = self.degree;
        let mut best: Option<(Perm, Perm)> = None;
        let mut label = vec![usize::MAX; d];
        let mut order = Vec::with_capacity(d);
        for root in 0..d {
            label.iter_mut().for_each(|l| *l = usize::MAX);
            order.clear();
            label[root] = 0;
            order.push(root);
            let mut i = 0;
            while i < order.len() {
                let e = order[i];
                for f in [self.sigma0[e], self.sigma1[e]] {
                    if label[f] == usize::MAX {
                        label[f] = order.len();
                        order.push(f);
                    }
                }
                i += 1;
            }
            let s0: Perm = order.iter().map(|&e| label[self.sigma0[e]]).collect();
            let s1: Perm = order.iter().map(|&e| label[self.sigma1[e]]).collect();
            let better = match &best {
                None => true,
                Some((b0, b1)) => (&s0, &s1) < (b0, b1),
            };
            if better {
                best = Some((s0, s1));
            }
        }
        let (s0, s1) = best.expect("degree is positive");
        Dessin::from_parts_unchecked(s0, s1)
    }

    /// Least representative of the isomorphism class: components are put in
    /// canonical form, sorted, and concatenated.
    pub fn canonical_form(&self) -> Dessin {
        let comps = self.component_edges();
        if comps.len() == 1 {
            return self.canonical_connected();
        }
        let mut canon: Vec<Dessin> = comps
            .iter()
            .map(|edges| self.restrict(edges).canonical_connected())
            .collect();
        canon.sort();
        Dessin::disjoint_union_all(&canon)
    }

    pub fn is_isomorphic(&self, other: &Dessin) -> bool {
        self.degree == other.degree
            && self.ramification() == other.ramification()
            && self.canonical_form() == other.canonical_form()
    }

    fn automorphisms_connected(&self) -> usize {
        let d = self.degree;
        let mut count = 0;
        let mut image = vec![usize::MAX; d];
        let mut stack = Vec::new();
        'target: for t in 0..d {
            image.iter_mut().for_each(|x| *x = usize::MAX);
            image[0] = t;
            stack.clear();
            stack.push(0);
            while let Some(e) = stack.pop() {
                let fe = image[e];
                for (s, f) in [(&self.sigma0, self.sigma0[e]), (&self.sigma1, self.sigma1[e])] {
                    let want = s[fe];
                    if image[f] == usize::MAX {
                        image[f] = want;
                        stack.push(f);
                    } else if image[f] != want {
                        continue 'target;
                    }
                }
            }
            count += 1;
        }
        count
    }

    /// Number of permutations commuting with both `σ₀` and `σ₁`.
    pub fn automorphism_count(&self) -> u128 {
        let comps = self.components();
        if comps.len() == 1 {
            return self.automorphisms_connected() as u128;
        }
        let mut classes: BTreeMap<Dessin, (usize, u128)> = BTreeMap::new();
        for c in &comps {
            let entry = classes
                .entry(c.canonical_connected())
                .or_insert((0, c.automorphisms_connected() as u128));
            entry.0 += 1;
        }
        classes
            .values()
            .map(|&(k, aut)| aut.pow(k as u32) * perm::factorial(k))
            .product()
    }

    pub fn disjoint_union(&self, other: &Dessin) -> Dessin {
        Dessin::disjoint_union_all(&[self.clone(), other.clone()])
    }

    pub fn disjoint_union_all(parts: &[Dessin]) -> Dessin {
        let mut s0 = Vec::new();
        let mut s1 = Vec::new();
        for p in parts {
            let off = s0.len();
            s0.extend(p.sigma0.iter().map(|x| x + off));
            s1.extend(p.sigma1.iter().map(|x| x + off));
        }
        Dessin::from_parts_unchecked(s0, s1)
    }

    /// Every white vertex has valence two.
    pub fn is_clean(&self) -> bool {
        perm::cycles(&self.sigma1).iter().all(|c| c.len() == 2)
    }

    /// Connected with automorphism group of order equal to the degree.
    pub fn is_regular(&self) -> bool {
        self.is_connected() && self.automorphism_count() == self.degree as u128
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.num_vertices() == self.degree + 1
    }

    /// `d=<int>; s0=<cycles>; s1=<cycles>`.
    pub fn to_text(&self) -> String {
        format!(
            "d={}; s0={}; s1={}",
            self.degree,
            perm::to_cycle_string(&self.sigma0),
            perm::to_cycle_string(&self.sigma1)
        )
    }

    pub fn parse_text(input: &str) -> Result<Dessin> {
        TextParser::new(input).parse()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("dessin serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Dessin> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

impl fmt::Display for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct TextParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> TextParser<'a> {
    fn new(src: &'a str) -> Self {
        TextParser { src, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn cycles(&mut self, d: usize) -> Result<Perm> {
        let mut cycles = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() != Some('(') {
                break;
            }
            self.pos += 1;
            let mut cyc = Vec::new();
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(',') => self.pos += 1,
                    Some(_) => {
                        let at = self.pos;
                        let x = self.number()?;
                        if x >= d {
                            self.pos = at;
                            return Err(self.error(format!("label {x} out of range 0..{d}")));
                        }
                        cyc.push(x);
                    }
                    None => return Err(self.error("unterminated cycle")),
                }
            }
            cycles.push(cyc);
        }
        let at = self.pos;
        perm::from_cycles(d, &cycles).map_err(|e| {
            self.pos = at;
            self.error(e.to_string())
        })
    }

    fn parse(mut self) -> Result<Dessin> {
        self.expect("d")?;
        self.expect("=")?;
        let d = self.number()?;
        if d == 0 {
            return Err(self.error("degree must be at least 1"));
        }
        self.expect(";")?;
        self.expect("s0")?;
        self.expect("=")?;
        let s0 = self.cycles(d)?;
        self.expect(";")?;
        self.expect("s1")?;
        self.expect("=")?;
        let s1 = self.cycles(d)?;
        self.skip_ws();
        if self.peek() == Some(';') {
            self.pos += 1;
            self.skip_ws();
        }
        if self.pos != self.src.len() {
            return Err(self.error("trailing input"));
        }
        Dessin::from_permutations(s0, s1)
    }
}

/// Bipartite graph without ribbon structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    pub n_black: usize,
    pub n_white: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn of_dessin(d: &Dessin) -> Self {
        let inc = d.incidence();
        BipartiteGraph {
            n_black: inc.black.len(),
            n_white: inc.white.len(),
            edges: (0..d.degree())
                .map(|e| (inc.black_of[e], inc.white_of[e]))
                .collect(),
        }
    }

    pub fn black_valences(&self) -> Vec<usize> {
        let mut v = vec![0; self.n_black];
        for &(b, _) in &self.edges {
            v[b] += 1;
        }
        v
    }

    pub fn white_valences(&self) -> Vec<usize> {
        let mut v = vec![0; self.n_white];
        for &(_, w) in &self.edges {
            v[w] += 1;
        }
        v
    }

    /// Same graph with vertices renumbered and edges sorted, for comparison
    /// up to a given vertex relabeling.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Dessin with lexicographic corolla order, for display only.
    pub fn display_dessin(&self) -> Option<Dessin> {
        if self.edges.is_empty() {
            return None;
        }
        let d = self.edges.len();
        let mut s0 = perm::identity(d);
        let mut s1 = perm::identity(d);
        let mut by_black: Vec<Vec<usize>> = vec![Vec::new(); self.n_black];
        let mut by_white: Vec<Vec<usize>> = vec![Vec::new(); self.n_white];
        for (e, &(b, w)) in self.edges.iter().enumerate() {
            by_black[b].push(e);
            by_white[w].push(e);
        }
        for (groups, s) in [(&by_black, &mut s0), (&by_white, &mut s1)] {
            for g in groups.iter() {
                for (i, &e) in g.iter().enumerate() {
                    s[e] = g[(i + 1) % g.len()];
                }
            }
        }
        Some(Dessin::from_parts_unchecked(s0, s1))
    }
}

/// Fibered product of two dessins with its count data.
#[derive(Clone, Debug, Serialize)]
pub struct FiberedProduct {
    pub graph: BipartiteGraph,
    pub d: usize,
    pub m: usize,
    pub n_white: usize,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
}

/// Vertex sets are products of vertex sets; edge `(e₁, e₂)` joins
/// `(black(e₁), black(e₂))` to `(white(e₁), white(e₂))`.
pub fn fibered_product(d1: &Dessin, d2: &Dessin) -> FiberedProduct {
    let g1 = BipartiteGraph::of_dessin(d1);
    let g2 = BipartiteGraph::of_dessin(d2);
    let mut edges = Vec::with_capacity(g1.edges.len() * g2.edges.len());
    for &(b1, w1) in &g1.edges {
        for &(b2, w2) in &g2.edges {
            edges.push((b1 * g2.n_black + b2, w1 * g2.n_white + w2));
        }
    }
    let graph = BipartiteGraph {
        n_black: g1.n_black * g2.n_black,
        n_white: g1.n_white * g2.n_white,
        edges,
    };
    let mut mu = graph.black_valences();
    let mut nu = graph.white_valences();
    mu.sort_unstable_by(|a, b| b.cmp(a));
    nu.sort_unstable_by(|a, b| b.cmp(a));
    FiberedProduct {
        d: graph.edges.len(),
        m: graph.n_black,
        n_white: graph.n_white,
        graph,
        mu,
        nu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_and_ramification() {
        let e = Dessin::single_edge();
        let r = e.ramification();
        assert_eq!((r.d, r.m, r.n_white, r.r, r.genus_total), (1, 1, 1, 1, 0));

        let s = Dessin::star(4).ramification();
        assert_eq!((s.m, s.n_white, s.r, s.genus_total), (1, 4, 1, 0));

        let torus = Dessin::from_permutations(vec![1, 2, 0], vec![1, 2, 0]).unwrap();
        let t = torus.ramification();
        assert_eq!((t.m + t.n_white, t.r, t.euler_surface, t.genus_total), (2, 1, 0, 1));

        assert!(Dessin::path(4).is_tree());
        assert_eq!(Dessin::path(3).ramification().mu, vec![2, 1]);
        assert_eq!(Dessin::polygon(2).ramification().rho, vec![2, 2]);
        assert_eq!(Dessin::bouquet(3).num_faces(), 3);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Dessin::from_permutations(vec![0, 1], vec![0]).is_err());
        assert!(Dessin::from_permutations(vec![0, 0], vec![0, 1]).is_err());
        assert!(Dessin::from_permutations(vec![], vec![]).is_err());
    }

    #[test]
    fn third_example_is_connected() {
        let d = Dessin::from_permutations(vec![1, 0, 2], vec![0, 2, 1]).unwrap();
        assert!(d.is_connected());
        assert!(d.is_tree());
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let d = Dessin::from_permutations(vec![1, 2, 0, 4, 3], vec![3, 0, 4, 1, 2]).unwrap();
        let p = vec![4, 2, 0, 3, 1];
        assert!(d.is_isomorphic(&d.relabel(&p)));
        assert!(!Dessin::star(3).is_isomorphic(&Dessin::path(3)));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(Dessin::single_edge().automorphism_count(), 1);
        let bigon = Dessin::from_permutations(vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!(bigon.automorphism_count(), 2);
        assert_eq!(Dessin::star(5).automorphism_count(), 5);
        let two_edges = Dessin::single_edge().disjoint_union(&Dessin::single_edge());
        assert_eq!(two_edges.automorphism_count(), 2);
    }

    #[test]
    fn predicates() {
        assert!(!Dessin::star(3).is_clean());
        let clean = Dessin::from_permutations(vec![1, 2, 3, 0], vec![1, 0, 3, 2]).unwrap();
        assert!(clean.is_clean());
        assert!(Dessin::single_edge().is_regular());
        assert!(Dessin::star(4).is_regular());
        assert!(!Dessin::path(3).is_regular());
    }

    #[test]
    fn text_round_trip() {
        let d = Dessin::parse_text("d=4; s0=(0 1 2)(3); s1=(0 3)").unwrap();
        assert_eq!(d.sigma0(), &[1, 2, 0, 3]);
        assert_eq!(d.sigma1(), &[3, 1, 2, 0]);
        assert_eq!(Dessin::parse_text(&d.to_text()).unwrap(), d);
        let err = Dessin::parse_text("d=2; s0=(0 5); s1=()").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 12)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let d = Dessin::path(3);
        let v = d.to_json();
        assert_eq!(v["degree"], 3);
        assert_eq!(Dessin::from_json(&v).unwrap(), d);
        let bad = serde_json::json!({"degree": 2, "sigma0": [0, 0], "sigma1": [0, 1]});
        assert!(Dessin::from_json(&bad).is_err());
    }

    #[test]
    fn fibered_products() {
        let fp = fibered_product(&Dessin::star(2), &Dessin::star(3));
        assert_eq!((fp.d, fp.m, fp.n_white), (6, 1, 6));
        assert!(fp.nu.iter().all(|&v| v == 1));

        let d = Dessin::path(3);
        let fp = fibered_product(&d, &Dessin::single_edge());
        assert_eq!(fp.graph, BipartiteGraph::of_dessin(&d));

        // black valences (2,1) against (3)
        let fp = fibered_product(&Dessin::path(3), &Dessin::star(3));
        assert_eq!(fp.mu, vec![6, 3]);
    }
}
