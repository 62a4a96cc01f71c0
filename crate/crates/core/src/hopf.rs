//! The Hopf algebra of dessins: subdessins, quotient dessins with ribbon
//! choices, coproduct, antipode, gradings and characters.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::dessin::Dessin;
use crate::error::{guard, Error, Result};
use crate::perm;
use crate::ring::{parse_q, q_abs_le_one, q_to_string, Ring, Q};

/// Degree limit for subdessin enumeration.
pub const MAX_SUBDESSIN_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Colour {
    Black,
    White,
}

/// The end of edge `edge` at its vertex of colour `colour`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub colour: Colour,
}

impl HalfEdge {
    fn index(self) -> usize {
        2 * self.edge + (self.colour == Colour::White) as usize
    }

    fn from_index(i: usize) -> Self {
        HalfEdge {
            edge: i / 2,
            colour: if i % 2 == 0 { Colour::Black } else { Colour::White },
        }
    }
}

/// A vertex-induced subgraph with its induced ribbon structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subdessin {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub internal: Vec<usize>,
    /// Half-edges of edges with exactly one end inside, at that end.
    pub external: Vec<HalfEdge>,
    /// Internal edges of each connected component.
    pub components: Vec<Vec<usize>>,
}

impl Subdessin {
    fn from_vertex_sets(d: &Dessin, in_black: &[bool], in_white: &[bool]) -> Option<Subdessin> {
        let inc = d.incidence();
        let mut internal = Vec::new();
        let mut external = Vec::new();
        let mut has_edge_b = vec![false; in_black.len()];
        let mut has_edge_w = vec![false; in_white.len()];
        for e in 0..d.degree() {
            let (b, w) = (inc.black_of[e], inc.white_of[e]);
            match (in_black[b], in_white[w]) {
                (true, true) => {
                    internal.push(e);
                    has_edge_b[b] = true;
                    has_edge_w[w] = true;
                }
                (true, false) => external.push(HalfEdge { edge: e, colour: Colour::Black }),
                (false, true) => external.push(HalfEdge { edge: e, colour: Colour::White }),
                (false, false) => {}
            }
        }
        let isolated = (0..in_black.len()).any(|b| in_black[b] && !has_edge_b[b])
            || (0..in_white.len()).any(|w| in_white[w] && !has_edge_w[w]);
        if internal.is_empty() || isolated {
            return None;
        }
        let black: Vec<usize> = (0..in_black.len()).filter(|&b| in_black[b]).collect();
        let white: Vec<usize> = (0..in_white.len()).filter(|&w| in_white[w]).collect();
        let components = edge_components(d, &internal);
        Some(Subdessin {
            black,
            white,
            internal,
            external,
            components,
        })
    }

    /// All of `D`, used to test the boundary walk.
    pub fn whole(d: &Dessin) -> Subdessin {
        let inc = d.incidence();
        Subdessin::from_vertex_sets(d, &vec![true; inc.black.len()], &vec![true; inc.white.len()])
            .expect("every vertex of a dessin carries an edge")
    }

    pub fn b0(&self) -> usize {
        self.components.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.black.len() + self.white.len()
    }

    pub fn num_edges(&self) -> usize {
        self.internal.len()
    }

    /// The subdessin as a dessin, with rotations restricted to internal edges.
    pub fn dessin(&self, d: &Dessin) -> Dessin {
        let mut is_internal = vec![false; d.degree()];
        for &e in &self.internal {
            is_internal[e] = true;
        }
        let next = |s: &[usize], e: usize| {
            let mut f = s[e];
            while !is_internal[f] {
                f = s[f];
            }
            f
        };
        let index: HashMap<usize, usize> = self.internal.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let s0 = self.internal.iter().map(|&e| index[&next(d.sigma0(), e)]).collect();
        let s1 = self.internal.iter().map(|&e| index[&next(d.sigma1(), e)]).collect();
        Dessin::from_parts_unchecked(s0, s1)
    }

    pub fn component_dessins(&self, d: &Dessin) -> Vec<Dessin> {
        self.dessin(d).components()
    }
}

fn edge_components(d: &Dessin, edges: &[usize]) -> Vec<Vec<usize>> {
    let inc = d.incidence();
    let nb = inc.black.len();
    let mut parent: Vec<usize> = (0..nb + inc.white.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in edges {
        let (a, b) = (find(&mut parent, inc.black_of[e]), find(&mut parent, nb + inc.white_of[e]));
        if a != b {
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &e in edges {
        let r = find(&mut parent, inc.black_of[e]);
        groups.entry(r).or_default().push(e);
    }
    let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
    comps.sort();
    comps
}

/// Proper vertex-induced subdessins of a connected dessin, every component
/// carrying at least one edge.
pub fn enumerate_subdessins(d: &Dessin) -> Result<Vec<Subdessin>> {
    enumerate_subdessins_guarded(d, MAX_SUBDESSIN_DEGREE)
}

pub fn enumerate_subdessins_guarded(d: &Dessin, limit: usize) -> Result<Vec<Subdessin>> {
    guard("subdessin degree", d.degree(), limit)?;
    if !d.is_connected() {
        return Err(Error::Domain("subdessins are enumerated on connected dessins".into()));
    }
    let inc = d.incidence();
    let (nb, nw) = (inc.black.len(), inc.white.len());
    let total = nb + nw;
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << total) - 1 {
        let in_black: Vec<bool> = (0..nb).map(|b| mask >> b & 1 == 1).collect();
        let in_white: Vec<bool> = (0..nw).map(|w| mask >> (nb + w) & 1 == 1).collect();
        if let Some(s) = Subdessin::from_vertex_sets(d, &in_black, &in_white) {
            out.push(s);
        }
    }
    Ok(out)
}

/// A boundary circle of a neighbourhood of a subdessin, listed as the
/// external half-edges met along it, starting from the least one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCircle {
    pub component: usize,
    pub stubs: Vec<HalfEdge>,
}

/// Boundary circles of `delta`, grouped by component.
pub fn boundary_components(d: &Dessin, delta: &Subdessin) -> Vec<BoundaryCircle> {
    let deg = d.degree();
    let mut internal = vec![false; deg];
    let mut comp_of_edge = vec![usize::MAX; deg];
    for (j, comp) in delta.components.iter().enumerate() {
        for &e in comp {
            internal[e] = true;
            comp_of_edge[e] = j;
        }
    }
    let inc = d.incidence();
    let mut comp_black = vec![usize::MAX; inc.black.len()];
    let mut comp_white = vec![usize::MAX; inc.white.len()];
    for (j, comp) in delta.components.iter().enumerate() {
        for &e in comp {
            comp_black[inc.black_of[e]] = j;
            comp_white[inc.white_of[e]] = j;
        }
    }
    let in_delta = |h: HalfEdge| match h.colour {
        Colour::Black => comp_black[inc.black_of[h.edge]] != usize::MAX,
        Colour::White => comp_white[inc.white_of[h.edge]] != usize::MAX,
    };
    let next = |h: HalfEdge| -> HalfEdge {
        let e = h.edge;
        match (h.colour, internal[e]) {
            (Colour::Black, true) => HalfEdge { edge: d.sigma1()[e], colour: Colour::White },
            (Colour::Black, false) => HalfEdge { edge: d.sigma0()[e], colour: Colour::Black },
            (Colour::White, true) => HalfEdge { edge: d.sigma0()[e], colour: Colour::Black },
            (Colour::White, false) => HalfEdge { edge: d.sigma1()[e], colour: Colour::White },
        }
    };
    let mut seen = vec![false; 2 * deg];
    let mut circles: Vec<(usize, usize, Vec<HalfEdge>)> = Vec::new();
    for i in 0..2 * deg {
        let start = HalfEdge::from_index(i);
        if seen[i] || !in_delta(start) {
            continue;
        }
        let component = match start.colour {
            Colour::Black => comp_black[inc.black_of[start.edge]],
            Colour::White => comp_white[inc.white_of[start.edge]],
        };
        let mut stubs = Vec::new();
        let mut h = start;
        while !seen[h.index()] {
            seen[h.index()] = true;
            if !internal[h.edge] {
                stubs.push(h);
            }
            h = next(h);
        }
        if let Some(pos) = stubs.iter().enumerate().min_by_key(|(_, s)| **s).map(|(p, _)| p) {
            stubs.rotate_left(pos);
        }
        circles.push((component, i, stubs));
    }
    circles.sort_by_key(|c| (c.0, c.1));
    circles
        .into_iter()
        .map(|(component, _, stubs)| BoundaryCircle { component, stubs })
        .collect()
}

/// For each component, the cyclic order of its boundary circles as a
/// permutation of their local indices with index 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientChoice {
    pub orders: Vec<Vec<usize>>,
}

fn circles_per_component(circles: &[BoundaryCircle], b0: usize) -> Vec<usize> {
    let mut k = vec![0; b0];
    for c in circles {
        k[c.component] += 1;
    }
    k
}

/// All quotient choices: `Π (k_j − 1)!` of them.
pub fn quotient_choices(delta: &Subdessin, circles: &[BoundaryCircle]) -> Vec<QuotientChoice> {
    let counts = circles_per_component(circles, delta.b0());
    let per_comp: Vec<Vec<Vec<usize>>> = counts
        .iter()
        .map(|&k| {
            if k == 0 {
                return vec![vec![]];
            }
            let rest: Vec<usize> = (1..k).collect();
            let mut orders = Vec::new();
            let mut p = rest.clone();
            loop {
                let mut o = vec![0];
                o.extend(p.iter().copied());
                orders.push(o);
                if !perm::next_permutation(&mut p) {
                    break;
                }
            }
            orders
        })
        .collect();
    let mut out = vec![QuotientChoice { orders: vec![] }];
    for options in per_comp {
        let mut next = Vec::new();
        for partial in &out {
            for o in &options {
                let mut c = partial.clone();
                c.orders.push(o.clone());
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Shrink every component of `delta` to a single black–white edge whose
/// black and white corollas list the component's external half-edges of
/// that colour, circle by circle in the chosen order.
pub fn quotient(d: &Dessin, delta: &Subdessin, circles: &[BoundaryCircle], choice: &QuotientChoice) -> Result<Dessin> {
    let b0 = delta.b0();
    let counts = circles_per_component(circles, b0);
    if choice.orders.len() != b0 {
        return Err(Error::Domain(format!("choice has {} orders for {} components", choice.orders.len(), b0)));
    }
    for (j, o) in choice.orders.iter().enumerate() {
        let mut sorted = o.clone();
        sorted.sort_unstable();
        if sorted != (0..counts[j]).collect::<Vec<_>>() || o.first().is_some_and(|&f| f != 0) {
            return Err(Error::Domain(format!("invalid circle order {o:?} for component {j}")));
        }
    }
    let deg = d.degree();
    let mut internal = vec![false; deg];
    for &e in &delta.internal {
        internal[e] = true;
    }
    let mut new_index = vec![usize::MAX; deg];
    let mut next_label = 0;
    for e in 0..deg {
        if !internal[e] {
            new_index[e] = next_label;
            next_label += 1;
        }
    }
    let residue = |j: usize| next_label + j;
    let new_deg = next_label + b0;
    let mut local: Vec<Vec<&BoundaryCircle>> = vec![Vec::new(); b0];
    for c in circles {
        local[c.component].push(c);
    }
    let inc = d.incidence();
    let in_black: BTreeSet<usize> = delta.black.iter().copied().collect();
    let in_white: BTreeSet<usize> = delta.white.iter().copied().collect();
    let mut s0 = vec![usize::MAX; new_deg];
    let mut s1 = vec![usize::MAX; new_deg];
    let close = |target: &mut Vec<usize>, corolla: &[usize]| {
        for i in 0..corolla.len() {
            target[corolla[i]] = corolla[(i + 1) % corolla.len()];
        }
    };
    for (b, cyc) in inc.black.iter().enumerate() {
        if !in_black.contains(&b) {
            let mapped: Vec<usize> = cyc.iter().map(|&e| new_index[e]).collect();
            close(&mut s0, &mapped);
        }
    }
    for (w, cyc) in inc.white.iter().enumerate() {
        if !in_white.contains(&w) {
            let mapped: Vec<usize> = cyc.iter().map(|&e| new_index[e]).collect();
            close(&mut s1, &mapped);
        }
    }
    for j in 0..b0 {
        let mut black_corolla = vec![residue(j)];
        let mut white_corolla = vec![residue(j)];
        for &ci in &choice.orders[j] {
            for stub in &local[j][ci].stubs {
                match stub.colour {
                    Colour::Black => black_corolla.push(new_index[stub.edge]),
                    Colour::White => white_corolla.push(new_index[stub.edge]),
                }
            }
        }
        close(&mut s0, &black_corolla);
        close(&mut s1, &white_corolla);
    }
    Dessin::from_permutations(s0, s1)
}

/// Product of connected dessins, stored as a sorted list of canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Dessin>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Monomial of the connected components of `d`.
    pub fn of(d: &Dessin) -> Self {
        let mut parts: Vec<Dessin> = d.components().iter().map(|c| c.canonical_form()).collect();
        parts.sort();
        Monomial(parts)
    }

    pub fn from_factors(factors: &[Dessin]) -> Self {
        let mut parts = Vec::new();
        for f in factors {
            parts.extend(Monomial::of(f).0);
        }
        parts.sort();
        Monomial(parts)
    }

    pub fn factors(&self) -> &[Dessin] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut parts = self.0.clone();
        parts.extend(other.0.iter().cloned());
        parts.sort();
        Monomial(parts)
    }

    pub fn num_edges(&self) -> usize {
        self.0.iter().map(|d| d.degree()).sum()
    }

    pub fn grade(&self, mode: Grading) -> i64 {
        self.0.iter().map(|d| grade(d, mode)).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.0.iter().map(|d| d.to_json()).collect())
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|d| format!("[{}]", d.to_text())).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Finite rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HopfElement {
    terms: BTreeMap<Monomial, Q>,
}

impl HopfElement {
    pub fn zero() -> Self {
        HopfElement::default()
    }

    pub fn one() -> Self {
        HopfElement::monomial(Monomial::one(), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut x = HopfElement::zero();
        x.add_term(m, c);
        x
    }

    pub fn dessin(d: &Dessin) -> Self {
        HopfElement::monomial(Monomial::of(d), Q::one())
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &HopfElement) -> HopfElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> HopfElement {
        let mut out = HopfElement::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|d| d.degree()))
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({"coefficient": q_to_string(c), "monomial": m.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<HopfElement> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::Parse { line: 1, column: 1, message: "expected an array of terms".into() })?;
        let mut out = HopfElement::zero();
        for item in items {
            let coef = item
                .get("coefficient")
                .and_then(|c| c.as_str().map(str::to_string).or_else(|| c.as_i64().map(|i| i.to_string())))
                .ok_or_else(|| Error::Parse { line: 1, column: 1, message: "term without coefficient".into() })?;
            let dessins = item
                .get("monomial")
                .and_then(|m| m.as_array())
                .ok_or_else(|| Error::Parse { line: 1, column: 1, message: "term without monomial".into() })?;
            let factors = dessins.iter().map(Dessin::from_json).collect::<Result<Vec<_>>>()?;
            out.add_term(Monomial::from_factors(&factors), parse_q(&coef)?);
        }
        Ok(out)
    }
}

impl std::fmt::Display for HopfElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{}·{}", q_to_string(c), m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of a tensor power of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub arity: usize,
    terms: BTreeMap<Vec<Monomial>, Q>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(arity: usize) -> Self {
        let mut t = TensorElement::zero(arity);
        t.add_term(vec![Monomial::one(); arity], Q::one());
        t
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, Q> {
        &self.terms
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, c: Q) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = k1.iter().zip(k2).map(|(a, b)| a.mul(b)).collect();
                out.add_term(key, c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::fmt::Display for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let slots: Vec<String> = k.iter().map(|m| m.to_string()).collect();
                format!("{}·{}", q_to_string(c), slots.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which subdessins contribute to the coproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Every component of a subdessin has at least two edges; the single
    /// edge is primitive.
    Reduced,
    /// Every proper subdessin, single edges included.
    Literal,
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduced" => Ok(Convention::Reduced),
            "literal" => Ok(Convention::Literal),
            _ => Err(Error::Config(format!("unknown coproduct convention `{s}`"))),
        }
    }
}

/// One summand `c · left ⊗ right` of the reduced coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductTerm {
    pub left: Monomial,
    pub right: Monomial,
    pub coeff: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Grading {
    B1,
    Edges,
    Vertices,
}

impl std::str::FromStr for Grading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b1" => Ok(Grading::B1),
            "edges" => Ok(Grading::Edges),
            "vertices" => Ok(Grading::Vertices),
            _ => Err(Error::Config(format!("unknown grading `{s}`"))),
        }
    }
}

/// Grade of a dessin, additive over components: `b₁`, `#E − b₀` or
/// `#V − 2b₀`.
pub fn grade(d: &Dessin, mode: Grading) -> i64 {
    let e = d.degree() as i64;
    let v = d.num_vertices() as i64;
    let b0 = d.num_components() as i64;
    match mode {
        Grading::B1 => e - v + b0,
        Grading::Edges => e - b0,
        Grading::Vertices => v - 2 * b0,
    }
}

/// Counts attached to one `(δ, choice)` summand, for grading checks.
#[derive(Clone, Debug)]
pub struct QuotientRecord {
    pub delta: Subdessin,
    pub choice: QuotientChoice,
    pub sub: Dessin,
    pub quotient: Dessin,
}

/// Coproduct engine with memoized reduced coproducts and antipodes.
#[derive(Debug)]
pub struct HopfAlgebra {
    pub convention: Convention,
    pub max_degree: usize,
    reduced: HashMap<Dessin, Rc<Vec<CoproductTerm>>>,
    antipodes: HashMap<Dessin, HopfElement>,
}

impl Default for HopfAlgebra {
    fn default() -> Self {
        HopfAlgebra::new(Convention::Reduced)
    }
}

impl HopfAlgebra {
    pub fn new(convention: Convention) -> Self {
        HopfAlgebra {
            convention,
            max_degree: MAX_SUBDESSIN_DEGREE,
            reduced: HashMap::new(),
            antipodes: HashMap::new(),
        }
    }

    pub fn with_max_degree(mut self, max_degree: usize) -> Self {
        self.max_degree = max_degree;
        self
    }

    fn admits(&self, delta: &Subdessin) -> bool {
        match self.convention {
            Convention::Literal => true,
            Convention::Reduced => delta.components.iter().all(|c| c.len() >= 2),
        }
    }

    /// Every `(δ, choice)` summand of the reduced coproduct of connected `d`.
    pub fn quotient_records(&self, d: &Dessin) -> Result<Vec<QuotientRecord>> {
        let mut out = Vec::new();
        for delta in enumerate_subdessins_guarded(d, self.max_degree)? {
            if !self.admits(&delta) {
                continue;
            }
            let circles = boundary_components(d, &delta);
            let sub = delta.dessin(d);
            for choice in quotient_choices(&delta, &circles) {
                let q = quotient(d, &delta, &circles, &choice)?;
                out.push(QuotientRecord {
                    delta: delta.clone(),
                    choice,
                    sub: sub.clone(),
                    quotient: q,
                });
            }
        }
        Ok(out)
    }

    /// Reduced coproduct of a connected dessin: summands `δ ⊗ D/δ`.
    pub fn reduced_coproduct_connected(&mut self, d: &Dessin) -> Result<Rc<Vec<CoproductTerm>>> {
        let canon = d.canonical_form();
        if let Some(t) = self.reduced.get(&canon) {
            return Ok(t.clone());
        }
        let mut acc: BTreeMap<(Monomial, Monomial), Q> = BTreeMap::new();
        for rec in self.quotient_records(&canon)? {
            *acc.entry((Monomial::of(&rec.sub), Monomial::of(&rec.quotient))).or_insert_with(Q::zero) += Q::one();
        }
        let terms: Vec<CoproductTerm> = acc
            .into_iter()
            .map(|((left, right), coeff)| CoproductTerm { left, right, coeff })
            .collect();
        let terms = Rc::new(terms);
        self.reduced.insert(canon, terms.clone());
        Ok(terms)
    }

    /// `D ⊗ 1 + 1 ⊗ D + Σ δ ⊗ D/δ` for connected `d`.
    pub fn coproduct_connected(&mut self, d: &Dessin) -> Result<TensorElement> {
        let m = Monomial::of(d);
        let mut t = TensorElement::zero(2);
        t.add_term(vec![m.clone(), Monomial::one()], Q::one());
        t.add_term(vec![Monomial::one(), m], Q::one());
        for term in self.reduced_coproduct_connected(d)?.iter() {
            t.add_term(vec![term.left.clone(), term.right.clone()], term.coeff.clone());
        }
        Ok(t)
    }

    pub fn coproduct_monomial(&mut self, m: &Monomial) -> Result<TensorElement> {
        let mut t = TensorElement::unit(2);
        for f in m.factors() {
            t = t.mul(&self.coproduct_connected(f)?);
        }
        Ok(t)
    }

    pub fn coproduct(&mut self, x: &HopfElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(2);
        for (m, c) in x.terms() {
            for (k, c2) in self.coproduct_monomial(m)?.terms() {
                out.add_term(k.clone(), c * c2);
            }
        }
        Ok(out)
    }

    /// Apply the coproduct in one slot of a tensor.
    pub fn coproduct_in_slot(&mut self, t: &TensorElement, slot: usize) -> Result<TensorElement> {
        let mut out = TensorElement::zero(t.arity + 1);
        for (key, c) in t.terms() {
            let split = self.coproduct_monomial(&key[slot])?;
            for (pair, c2) in split.terms() {
                let mut k = key[..slot].to_vec();
                k.extend(pair.iter().cloned());
                k.extend(key[slot + 1..].iter().cloned());
                out.add_term(k, c * c2);
            }
        }
        Ok(out)
    }

    pub fn counit(x: &HopfElement) -> Q {
        x.terms().get(&Monomial::one()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn antipode_connected(&mut self, d: &Dessin) -> Result<HopfElement> {
        let canon = d.canonical_form();
        if let Some(s) = self.antipodes.get(&canon) {
            return Ok(s.clone());
        }
        let mut s = HopfElement::dessin(&canon).scale(&-Q::one());
        for term in self.reduced_coproduct_connected(&canon)?.iter() {
            let sl = self.antipode_monomial(&term.left)?;
            let right = HopfElement::monomial(term.right.clone(), term.coeff.clone());
            s = s.add(&sl.mul(&right).scale(&-Q::one()));
        }
        self.antipodes.insert(canon, s.clone());
        Ok(s)
    }

    pub fn antipode_monomial(&mut self, m: &Monomial) -> Result<HopfElement> {
        let mut out = HopfElement::one();
        for f in m.factors() {
            out = out.mul(&self.antipode_connected(f)?);
        }
        Ok(out)
    }

    pub fn antipode(&mut self, x: &HopfElement) -> Result<HopfElement> {
        let mut out = HopfElement::zero();
        for (m, c) in x.terms() {
            out = out.add(&self.antipode_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// Both sides of the coassociativity identity for `x`.
    pub fn coassociativity_sides(&mut self, x: &HopfElement) -> Result<(TensorElement, TensorElement)> {
        let delta = self.coproduct(x)?;
        let left = self.coproduct_in_slot(&delta, 0)?;
        let right = self.coproduct_in_slot(&delta, 1)?;
        Ok((left, right))
    }

    pub fn is_coassociative_on(&mut self, d: &Dessin) -> Result<bool> {
        let (l, r) = self.coassociativity_sides(&HopfElement::dessin(d))?;
        Ok(l == r)
    }

    /// `(ε ⊗ id)Δ(x) = x = (id ⊗ ε)Δ(x)`.
    pub fn counit_laws_hold(&mut self, x: &HopfElement) -> Result<bool> {
        let t = self.coproduct(x)?;
        let mut left = HopfElement::zero();
        let mut right = HopfElement::zero();
        for (k, c) in t.terms() {
            if k[0].is_one() {
                left.add_term(k[1].clone(), c.clone());
            }
            if k[1].is_one() {
                right.add_term(k[0].clone(), c.clone());
            }
        }
        Ok(left == *x && right == *x)
    }

    /// `m(S ⊗ id)Δ(x)` and `m(id ⊗ S)Δ(x)`.
    pub fn antipode_convolutions(&mut self, x: &HopfElement) -> Result<(HopfElement, HopfElement)> {
        let t = self.coproduct(x)?;
        let mut left = HopfElement::zero();
        let mut right = HopfElement::zero();
        for (k, c) in t.terms() {
            let a = HopfElement::monomial(k[0].clone(), Q::one());
            let b = HopfElement::monomial(k[1].clone(), Q::one());
            left = left.add(&self.antipode_monomial(&k[0])?.mul(&b).scale(c));
            right = right.add(&a.mul(&self.antipode_monomial(&k[1])?).scale(c));
        }
        Ok((left, right))
    }

    pub fn antipode_identity_holds(&mut self, x: &HopfElement) -> Result<bool> {
        let (l, r) = self.antipode_convolutions(x)?;
        let unit = HopfElement::one().scale(&HopfAlgebra::counit(x));
        Ok(l == unit && r == unit)
    }

    /// Connected dessins met while expanding coproducts from `d`.
    pub fn reachable(&mut self, d: &Dessin) -> Result<BTreeSet<Dessin>> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![d.canonical_form()];
        while let Some(x) = stack.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            for term in self.reduced_coproduct_connected(&x)?.iter() {
                for f in term.left.factors().iter().chain(term.right.factors()) {
                    if !seen.contains(f) {
                        stack.push(f.clone());
                    }
                }
            }
        }
        Ok(seen)
    }

    /// Evaluate `(φ₁ ⊗ φ₂)Δ(x)`.
    pub fn convolve<R: Ring>(
        &mut self,
        phi1: &dyn Character<R>,
        phi2: &dyn Character<R>,
        x: &HopfElement,
    ) -> Result<R> {
        let t = self.coproduct(x)?;
        let mut acc = R::ring_zero();
        for (k, c) in t.terms() {
            acc = acc.add(&phi1.on_monomial(&k[0]).mul(&phi2.on_monomial(&k[1])).scale(c));
        }
        Ok(acc)
    }
}

/// Algebra morphism out of the Hopf algebra, given on connected dessins.
pub trait Character<R: Ring> {
    fn on_connected(&self, d: &Dessin) -> R;

    fn on_monomial(&self, m: &Monomial) -> R {
        m.factors()
            .iter()
            .fold(R::ring_one(), |acc, d| acc.mul(&self.on_connected(d)))
    }

    fn on_element(&self, x: &HopfElement) -> R {
        x.terms()
            .iter()
            .fold(R::ring_zero(), |acc, (m, c)| acc.add(&self.on_monomial(m).scale(c)))
    }
}

impl<R: Ring, F: Fn(&Dessin) -> R> Character<R> for F {
    fn on_connected(&self, d: &Dessin) -> R {
        self(d)
    }
}

/// The counit as a character.
pub struct Counit;

impl<R: Ring> Character<R> for Counit {
    fn on_connected(&self, _d: &Dessin) -> R {
        R::ring_zero()
    }
}

/// `D ↦ λ^{#E(D)}` with `|λ| ≤ 1`.
#[derive(Clone, Debug)]
pub struct EdgeCount {
    lambda: Q,
}

impl EdgeCount {
    pub fn new(lambda: Q) -> Result<Self> {
        if !q_abs_le_one(&lambda) {
            return Err(Error::Domain(format!(
                "edge-count character needs |λ| ≤ 1, got {}",
                q_to_string(&lambda)
            )));
        }
        Ok(EdgeCount { lambda })
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }
}

impl<R: Ring> Character<R> for EdgeCount {
    fn on_connected(&self, d: &Dessin) -> R {
        R::from_q(&num_traits::pow(self.lambda.clone(), d.degree()))
    }
}

/// Convolution `φ₁ ⋆ φ₂` as a character with its own coproduct engine.
pub struct Convolution<'a, R: Ring> {
    phi1: &'a dyn Character<R>,
    phi2: &'a dyn Character<R>,
    engine: std::cell::RefCell<HopfAlgebra>,
}

impl<'a, R: Ring> Convolution<'a, R> {
    pub fn new(phi1: &'a dyn Character<R>, phi2: &'a dyn Character<R>, convention: Convention) -> Self {
        Convolution {
            phi1,
            phi2,
            engine: std::cell::RefCell::new(HopfAlgebra::new(convention)),
        }
    }

    pub fn evaluate(&self, x: &HopfElement) -> Result<R> {
        self.engine.borrow_mut().convolve(self.phi1, self.phi2, x)
    }
}

impl<R: Ring> Character<R> for Convolution<'_, R> {
    /// # Panics
    /// When `d` exceeds the engine's degree guard.
    fn on_connected(&self, d: &Dessin) -> R {
        self.evaluate(&HopfElement::dessin(d))
            .expect("convolution evaluated beyond the degree guard")
    }
}

/// Partition of connected dessins into orbits, keyed by canonical form.
#[derive(Clone, Debug, Default)]
pub struct OrbitTable {
    orbits: Vec<Vec<Dessin>>,
    index: HashMap<Dessin, usize>,
}

impl OrbitTable {
    pub fn new(orbits: Vec<Vec<Dessin>>) -> Result<Self> {
        let mut table = OrbitTable::default();
        for orbit in orbits {
            let id = table.orbits.len();
            let mut members = Vec::new();
            for d in orbit {
                if !d.is_connected() {
                    return Err(Error::Config("orbit tables list connected dessins only".into()));
                }
                let c = d.canonical_form();
                if let Some(&prev) = table.index.get(&c) {
                    if prev != id {
                        return Err(Error::Config(format!("dessin [{}] listed in two orbits", c.to_text())));
                    }
                    continue;
                }
                table.index.insert(c.clone(), id);
                members.push(c);
            }
            if !members.is_empty() {
                table.orbits.push(members);
            }
        }
        Ok(table)
    }

    /// Singleton orbits for every dessin reachable from `roots`.
    pub fn singletons(alg: &mut HopfAlgebra, roots: &[Dessin]) -> Result<Self> {
        let mut all = BTreeSet::new();
        for r in roots {
            all.extend(alg.reachable(r)?);
        }
        OrbitTable::new(all.into_iter().map(|d| vec![d]).collect())
    }

    /// Orbits `{D, colour-swapped D}` for every dessin reachable from `roots`.
    pub fn colour_swap_closure(alg: &mut HopfAlgebra, roots: &[Dessin]) -> Result<Self> {
        let mut all = BTreeSet::new();
        for r in roots {
            all.extend(alg.reachable(r)?);
            all.extend(alg.reachable(&r.color_swap())?);
        }
        let mut done = BTreeSet::new();
        let mut orbits = Vec::new();
        for d in all {
            if done.contains(&d) {
                continue;
            }
            let s = d.color_swap().canonical_form();
            done.insert(d.clone());
            done.insert(s.clone());
            orbits.push(if s == d { vec![d] } else { vec![d, s] });
        }
        OrbitTable::new(orbits)
    }

    pub fn orbits(&self) -> &[Vec<Dessin>] {
        &self.orbits
    }

    pub fn orbit_of(&self, d: &Dessin) -> Option<usize> {
        self.index.get(&d.canonical_form()).copied()
    }

    fn require(&self, d: &Dessin) -> Result<usize> {
        self.orbit_of(d)
            .ok_or_else(|| Error::Coverage(format!("orbit table has no entry for [{}]", d.to_text())))
    }

    /// Sorted orbit ids of the factors of `m`.
    pub fn signature(&self, m: &Monomial) -> Result<Vec<usize>> {
        let mut s = m.factors().iter().map(|d| self.require(d)).collect::<Result<Vec<_>>>()?;
        s.sort_unstable();
        Ok(s)
    }

    /// Whether `φ` takes one value on each orbit.
    pub fn is_orbit_constant<R: Ring>(&self, phi: &dyn Character<R>) -> bool {
        self.orbits.iter().all(|orbit| {
            let v = phi.on_connected(&orbit[0]);
            orbit[1..].iter().all(|d| phi.on_connected(d) == v)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.orbits
                .iter()
                .map(|o| serde_json::Value::Array(o.iter().map(|d| d.to_json()).collect()))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let orbits = value
            .as_array()
            .ok_or_else(|| Error::Parse { line: 1, column: 1, message: "expected an array of orbits".into() })?
            .iter()
            .map(|o| {
                o.as_array()
                    .ok_or_else(|| Error::Parse { line: 1, column: 1, message: "orbit must be an array".into() })?
                    .iter()
                    .map(Dessin::from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        OrbitTable::new(orbits)
    }
}

/// Filter applied to reduced coproduct summands.
pub enum BalancedRule<'a> {
    AcceptAll,
    RejectAll,
    /// Keep `δ ⊗ D/δ` when every member of the orbit of `D` has a summand
    /// with the same orbit signatures on both sides.
    Balanced,
    Custom(&'a dyn Fn(&Dessin, &Monomial, &Monomial) -> bool),
}

impl HopfAlgebra {
    fn balanced_signatures(
        &mut self,
        table: &OrbitTable,
        d: &Dessin,
    ) -> Result<BTreeSet<(Vec<usize>, Vec<usize>)>> {
        let id = table.require(d)?;
        let mut common: Option<BTreeSet<(Vec<usize>, Vec<usize>)>> = None;
        for member in table.orbits[id].clone() {
            let mut sigs = BTreeSet::new();
            for t in self.reduced_coproduct_connected(&member)?.iter() {
                sigs.insert((table.signature(&t.left)?, table.signature(&t.right)?));
            }
            common = Some(match common {
                None => sigs,
                Some(c) => c.intersection(&sigs).cloned().collect(),
            });
        }
        Ok(common.unwrap_or_default())
    }

    /// Coproduct restricted to the summands accepted by `rule`; every
    /// dessin met must be covered by `table`.
    pub fn coproduct_balanced_connected(
        &mut self,
        d: &Dessin,
        table: &OrbitTable,
        rule: &BalancedRule<'_>,
    ) -> Result<TensorElement> {
        let canon = d.canonical_form();
        table.require(&canon)?;
        let terms = self.reduced_coproduct_connected(&canon)?;
        for t in terms.iter() {
            table.signature(&t.left)?;
            table.signature(&t.right)?;
        }
        let accepted = match rule {
            BalancedRule::Balanced => Some(self.balanced_signatures(table, &canon)?),
            _ => None,
        };
        let m = Monomial::of(&canon);
        let mut out = TensorElement::zero(2);
        out.add_term(vec![m.clone(), Monomial::one()], Q::one());
        out.add_term(vec![Monomial::one(), m], Q::one());
        for t in terms.iter() {
            let keep = match rule {
                BalancedRule::AcceptAll => true,
                BalancedRule::RejectAll => false,
                BalancedRule::Balanced => accepted
                    .as_ref()
                    .expect("computed above")
                    .contains(&(table.signature(&t.left)?, table.signature(&t.right)?)),
                BalancedRule::Custom(f) => f(&canon, &t.left, &t.right),
            };
            if keep {
                out.add_term(vec![t.left.clone(), t.right.clone()], t.coeff.clone());
            }
        }
        Ok(out)
    }

    pub fn coproduct_balanced(
        &mut self,
        x: &HopfElement,
        table: &OrbitTable,
        rule: &BalancedRule<'_>,
    ) -> Result<TensorElement> {
        let mut out = TensorElement::zero(2);
        for (m, c) in x.terms() {
            let mut t = TensorElement::unit(2);
            for f in m.factors() {
                t = t.mul(&self.coproduct_balanced_connected(f, table, rule)?);
            }
            for (k, c2) in t.terms() {
                out.add_term(k.clone(), c * c2);
            }
        }
        Ok(out)
    }

    fn balanced_in_slot(
        &mut self,
        t: &TensorElement,
        slot: usize,
        table: &OrbitTable,
        rule: &BalancedRule<'_>,
    ) -> Result<TensorElement> {
        let mut out = TensorElement::zero(t.arity + 1);
        for (key, c) in t.terms() {
            let split = self.coproduct_balanced(&HopfElement::monomial(key[slot].clone(), Q::one()), table, rule)?;
            for (pair, c2) in split.terms() {
                let mut k = key[..slot].to_vec();
                k.extend(pair.iter().cloned());
                k.extend(key[slot + 1..].iter().cloned());
                out.add_term(k, c * c2);
            }
        }
        Ok(out)
    }

    /// Both sides of coassociativity for the restricted coproduct.
    pub fn balanced_coassociativity_sides(
        &mut self,
        d: &Dessin,
        table: &OrbitTable,
        rule: &BalancedRule<'_>,
    ) -> Result<(TensorElement, TensorElement)> {
        let delta = self.coproduct_balanced(&HopfElement::dessin(d), table, rule)?;
        let left = self.balanced_in_slot(&delta, 0, table, rule)?;
        let right = self.balanced_in_slot(&delta, 1, table, rule)?;
        Ok((left, right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qf};

    #[test]
    fn subdessin_counts() {
        assert!(enumerate_subdessins(&Dessin::single_edge()).unwrap().is_empty());
        let p2 = enumerate_subdessins(&Dessin::path(2)).unwrap();
        assert_eq!(p2.len(), 2);
        assert!(p2.iter().all(|s| s.num_edges() == 1));
        let s3 = enumerate_subdessins(&Dessin::star(3)).unwrap();
        assert_eq!(s3.iter().filter(|s| s.num_edges() == 1).count(), 3);
        assert_eq!(s3.iter().filter(|s| s.num_edges() == 2).count(), 3);
    }

    #[test]
    fn whole_dessin_circles_are_faces() {
        for d in [Dessin::star(3), Dessin::polygon(2), Dessin::bouquet(3)] {
            let circles = boundary_components(&d, &Subdessin::whole(&d));
            assert_eq!(circles.len(), d.num_faces());
            assert!(circles.iter().all(|c| c.stubs.is_empty()));
        }
    }

    #[test]
    fn edge_in_tree_has_one_circle() {
        let d = Dessin::path(3);
        for s in enumerate_subdessins(&d).unwrap() {
            if s.num_edges() == 1 {
                let circles = boundary_components(&d, &s);
                assert_eq!(circles.len(), 1);
                assert_eq!(circles[0].stubs.len(), s.external.len());
            }
        }
    }

    #[test]
    fn quotient_of_path_by_edge_is_path() {
        let d = Dessin::path(2);
        for s in enumerate_subdessins(&d).unwrap() {
            let circles = boundary_components(&d, &s);
            let choices = quotient_choices(&s, &circles);
            assert_eq!(choices.len(), 1);
            let q = quotient(&d, &s, &circles, &choices[0]).unwrap();
            assert!(q.is_isomorphic(&d));
        }
    }

    #[test]
    fn primitive_single_edge() {
        let mut alg = HopfAlgebra::default();
        let e = Dessin::single_edge();
        let t = alg.coproduct_connected(&e).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(alg.antipode_connected(&e).unwrap(), HopfElement::dessin(&e).scale(&q(-1)));
    }

    #[test]
    fn literal_path_coproduct() {
        let mut alg = HopfAlgebra::new(Convention::Literal);
        let d = Dessin::path(2);
        let terms = alg.reduced_coproduct_connected(&d).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].coeff, q(2));
        assert_eq!(terms[0].left, Monomial::of(&Dessin::single_edge()));
        assert_eq!(terms[0].right, Monomial::of(&d));
    }

    #[test]
    fn edge_count_character() {
        let phi = EdgeCount::new(qf(1, 2)).unwrap();
        let v: Q = phi.on_connected(&Dessin::path(2));
        assert_eq!(v, qf(1, 4));
        assert!(EdgeCount::new(qf(3, 2)).is_err());
    }
}
