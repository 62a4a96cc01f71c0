//! Brute-force oracles used to cross-check closed-form counts.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::dessin::Dessin;
use crate::enumerate;
use crate::error::Result;
use crate::perm;
use crate::ring::Q;

fn is_spanning_tree(vertices: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() + 1 != vertices {
        return false;
    }
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn for_each_subset<T: Clone>(items: &[T], size: usize, f: &mut dyn FnMut(&[T])) {
    fn rec<T: Clone>(items: &[T], size: usize, start: usize, acc: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        if acc.len() == size {
            f(acc);
            return;
        }
        let need = size - acc.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            acc.push(items[i].clone());
            rec(items, size, i + 1, acc, f);
            acc.pop();
        }
    }
    let mut acc = Vec::with_capacity(size);
    rec(items, size, 0, &mut acc, f);
}

/// Trees on `d+1` labeled vertices with a proper black/white colouring,
/// counted by scanning edge subsets of the complete graph and all colourings.
pub fn brute_labeled_bicoloured_trees(d: usize) -> u128 {
    let v = d + 1;
    let mut all_edges = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            all_edges.push((a, b));
        }
    }
    let mut count = 0u128;
    for_each_subset(&all_edges, d, &mut |edges| {
        if !is_spanning_tree(v, edges) {
            return;
        }
        for colouring in 0u32..(1 << v) {
            let proper = edges
                .iter()
                .all(|&(a, b)| ((colouring >> a) & 1) != ((colouring >> b) & 1));
            if proper {
                count += 1;
            }
        }
    });
    count
}

/// Spanning trees of `K_{m,n}` (black labels `0..m`, white labels `0..n`)
/// paired with a choice of black root, by exhaustive edge-subset scan.
pub fn brute_black_rooted_bipartite_trees(m: usize, n: usize) -> u128 {
    let mut all_edges = Vec::new();
    for a in 0..m {
        for b in 0..n {
            all_edges.push((a, m + b));
        }
    }
    let mut count = 0u128;
    if m + n < 2 {
        return 0;
    }
    for_each_subset(&all_edges, m + n - 1, &mut |edges| {
        if is_spanning_tree(m + n, edges) {
            for _root in 0..m {
                count += 1;
            }
        }
    });
    count
}

/// Unrooted spanning trees of `K_{m,n}` by exhaustive scan.
pub fn brute_spanning_trees_complete_bipartite(m: usize, n: usize) -> u128 {
    if m == 0 || n == 0 {
        return 0;
    }
    brute_black_rooted_bipartite_trees(m, n) / m as u128
}

/// Conjugation classes of pairs in `S_d × S_d` via Burnside's lemma, with
/// centralizer sizes found by brute force.
pub fn burnside_class_count(d: usize) -> u128 {
    let all = perm::all_perms(d);
    let mut total = 0u128;
    for g in &all {
        let centralizer = all
            .iter()
            .filter(|h| perm::compose(g, h) == perm::compose(h, g))
            .count() as u128;
        total += centralizer * centralizer;
    }
    total / perm::factorial(d)
}

/// Classes of pairs found by explicit orbit closure under conjugation.
pub fn orbit_class_count(d: usize) -> usize {
    let all = perm::all_perms(d);
    let mut seen: BTreeSet<(perm::Perm, perm::Perm)> = BTreeSet::new();
    let mut classes = 0;
    for a in &all {
        for b in &all {
            if seen.contains(&(a.clone(), b.clone())) {
                continue;
            }
            classes += 1;
            for g in &all {
                let gi = perm::inverse(g);
                let ca = perm::compose(&perm::compose(g, a), &gi);
                let cb = perm::compose(&perm::compose(g, b), &gi);
                seen.insert((ca, cb));
            }
        }
    }
    classes
}

/// `h_{g;μ,ν}` as a sum of `1/|Aut|` over isomorphism classes.
pub fn coverings_by_classes(g: usize, mu: &[usize], nu: &[usize]) -> Result<Q> {
    let d: usize = mu.iter().sum();
    let mut mu = mu.to_vec();
    let mut nu = nu.to_vec();
    mu.sort_unstable_by(|a, b| b.cmp(a));
    nu.sort_unstable_by(|a, b| b.cmp(a));
    let mut total = Q::from_integer(BigInt::from(0));
    for x in enumerate::enumerate_dessins(d, None)? {
        let r = x.ramification();
        if r.mu == mu && r.nu == nu && r.genus_total == g {
            total += Q::new(BigInt::from(1), BigInt::from(x.automorphism_count()));
        }
    }
    Ok(total)
}

/// Automorphism count by scanning all of `S_d`.
pub fn brute_automorphism_count(x: &Dessin) -> u128 {
    perm::all_perms(x.degree())
        .iter()
        .filter(|g| {
            perm::compose(g, x.sigma0()) == perm::compose(x.sigma0(), g)
                && perm::compose(g, x.sigma1()) == perm::compose(x.sigma1(), g)
        })
        .count() as u128
}

/// Ordered factorizations of `n` into factors `> 1`, listed explicitly.
pub fn list_ordered_factorizations(n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for f in 2..=n {
        if n % f == 0 {
            for mut rest in list_ordered_factorizations(n / f) {
                rest.insert(0, f);
                out.push(rest);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_oracles_small() {
        assert_eq!(brute_labeled_bicoloured_trees(1), 2);
        assert_eq!(brute_labeled_bicoloured_trees(2), 6);
        assert_eq!(brute_spanning_trees_complete_bipartite(2, 2), 4);
        assert_eq!(brute_black_rooted_bipartite_trees(2, 2), 8);
    }

    #[test]
    fn burnside_matches_orbits() {
        for d in 1..=4 {
            assert_eq!(burnside_class_count(d) as usize, orbit_class_count(d));
        }
    }

    #[test]
    fn factorization_listing() {
        assert_eq!(list_ordered_factorizations(8).len(), 4);
        assert_eq!(list_ordered_factorizations(12).len(), 8);
    }
}
