//! Enumeration and counting of dessins, labeled bipartite trees and
//! branched coverings.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::dessin::Dessin;
use crate::error::{guard, Error, Result};
use crate::perm;
use crate::ring::{q_to_string, Q};

/// Default degree limit for exhaustive dessin enumeration.
pub const MAX_ENUM_DEGREE: usize = 8;
/// Default degree limit for covering counts over `S_d × S_d`.
pub const MAX_COVERING_DEGREE: usize = 7;

/// Canonical representatives of all isomorphism classes of degree `d`,
/// sorted, optionally filtered.
pub fn enumerate_dessins(d: usize, filter: Option<&dyn Fn(&Dessin) -> bool>) -> Result<Vec<Dessin>> {
    enumerate_dessins_guarded(d, MAX_ENUM_DEGREE, filter)
}

pub fn enumerate_dessins_guarded(
    d: usize,
    limit: usize,
    filter: Option<&dyn Fn(&Dessin) -> bool>,
) -> Result<Vec<Dessin>> {
    if d == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    guard("enumeration degree", d, limit)?;
    let mut classes = BTreeSet::new();
    for shape in perm::partitions(d) {
        let s0 = perm::from_cycle_type(&shape);
        let mut s1 = perm::identity(d);
        loop {
            let candidate = Dessin::from_parts_unchecked(s0.clone(), s1.clone());
            classes.insert(candidate.canonical_form());
            if !perm::next_permutation(&mut s1) {
                break;
            }
        }
    }
    Ok(classes
        .into_iter()
        .filter(|x| filter.map_or(true, |f| f(x)))
        .collect())
}

pub fn enumerate_connected(d: usize) -> Result<Vec<Dessin>> {
    enumerate_dessins(d, Some(&|x: &Dessin| x.is_connected()))
}

/// Plane trees with `d` edges up to isomorphism (dessin classes).
pub fn enumerate_plane_trees(d: usize) -> Result<Vec<Dessin>> {
    enumerate_dessins(d, Some(&|x: &Dessin| x.is_tree()))
}

fn pow(base: u128, exp: usize) -> u128 {
    base.pow(exp as u32)
}

/// Labeled bipartite tree counts: `2(d+1)^{d-1}` in total, and
/// `m^{d+1-m} (d+1-m)^{m-1}` for `m` black vertices.
pub fn count_labeled_bipartite_trees(d: usize, m: Option<usize>) -> Result<u128> {
    if d == 0 {
        return Err(Error::Domain("tree counts need d >= 1".into()));
    }
    match m {
        None => Ok(2 * pow(d as u128 + 1, d - 1)),
        Some(m) => {
            if m == 0 || m > d {
                return Err(Error::Domain(format!("m = {m} outside 1..={d}")));
            }
            let n = d + 1 - m;
            Ok(pow(m as u128, n) * pow(n as u128, m - 1))
        }
    }
}

/// Spanning trees of `K_{m,n}` with both sides labeled: `m^{n-1} n^{m-1}`.
pub fn count_spanning_trees_complete_bipartite(m: usize, n: usize) -> u128 {
    if m == 0 || n == 0 {
        return 0;
    }
    pow(m as u128, n - 1) * pow(n as u128, m - 1)
}

fn single_cycle_offset(d: usize) -> i64 {
    match d % 6 {
        1 => 5,
        4 => 8,
        3 | 5 => 9,
        _ => 12,
    }
}

/// `N(d) = (d² + 4d − c)/12` with `c` chosen by `d mod 6`.
pub fn count_single_cycle_belyi(d: usize) -> Result<u64> {
    if d == 0 {
        return Err(Error::Domain("N(d) needs d >= 1".into()));
    }
    let d = d as i64;
    let num = d * d + 4 * d - single_cycle_offset(d as usize);
    if num < 0 || num % 12 != 0 {
        return Err(Error::Config(format!(
            "N({d}) = {num}/12 is not a non-negative integer"
        )));
    }
    Ok((num / 12) as u64)
}

fn profile_sorted(p: &[usize]) -> Vec<usize> {
    let mut v = p.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Total genus of the (possibly disconnected) covering given by a pair.
pub fn pair_genus(s0: &[usize], s1: &[usize]) -> usize {
    Dessin::from_parts_unchecked(s0.to_vec(), s1.to_vec()).genus()
}

/// `h_{g;μ,ν} = #{(σ₀,σ₁) ∈ S_d² of types μ, ν and total genus g} / d!`.
pub fn count_coverings(g: usize, mu: &[usize], nu: &[usize]) -> Result<Q> {
    let d: usize = mu.iter().sum();
    if nu.iter().sum::<usize>() != d || d == 0 || mu.contains(&0) || nu.contains(&0) {
        return Err(Error::Domain(format!(
            "profiles {mu:?} and {nu:?} must be positive with equal sums"
        )));
    }
    guard("covering degree", d, MAX_COVERING_DEGREE)?;
    let mu = profile_sorted(mu);
    let nu = profile_sorted(nu);
    let all = perm::all_perms(d);
    let s0s: Vec<&perm::Perm> = all.iter().filter(|p| perm::cycle_type(p) == mu).collect();
    let s1s: Vec<&perm::Perm> = all.iter().filter(|p| perm::cycle_type(p) == nu).collect();
    let mut count: u64 = 0;
    for a in &s0s {
        for b in &s1s {
            if pair_genus(a, b) == g {
                count += 1;
            }
        }
    }
    Ok(Q::new(BigInt::from(count), BigInt::from(perm::factorial(d))))
}

/// Number of pairs with the given cycle types, over `d!`, all genera.
pub fn count_pairs_by_type(mu: &[usize], nu: &[usize]) -> Result<Q> {
    let d: usize = mu.iter().sum();
    guard("covering degree", d, MAX_COVERING_DEGREE)?;
    let mu = profile_sorted(mu);
    let nu = profile_sorted(nu);
    let all = perm::all_perms(d);
    let a = all.iter().filter(|p| perm::cycle_type(p) == mu).count() as u64;
    let b = all.iter().filter(|p| perm::cycle_type(p) == nu).count() as u64;
    Ok(Q::new(BigInt::from(a * b), BigInt::from(perm::factorial(d))))
}

/// A table of exact counts keyed by integer parameters.
#[derive(Clone, Debug, Serialize)]
pub struct CountTable {
    pub columns: Vec<String>,
    pub rows: Vec<(Vec<i64>, Q)>,
}

impl CountTable {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push_str(",count\n");
        for (params, count) in &self.rows {
            let cells: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push(',');
            out.push_str(&q_to_string(count));
            out.push('\n');
        }
        out
    }
}

/// `d,m,count` rows of the labeled tree formula for `1 ≤ m ≤ d ≤ max_d`.
pub fn tree_count_table(max_d: usize) -> CountTable {
    let mut rows = Vec::new();
    for d in 1..=max_d {
        for m in 1..=d {
            let c = count_labeled_bipartite_trees(d, Some(m)).expect("m in range");
            rows.push((vec![d as i64, m as i64], Q::from_integer(BigInt::from(c))));
        }
    }
    CountTable {
        columns: vec!["d".into(), "m".into()],
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qf};

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_dessins(1, None).unwrap().len(), 1);
        assert_eq!(enumerate_dessins(2, None).unwrap().len(), 4);
        let genus_one = enumerate_dessins(3, Some(&|x: &Dessin| x.is_connected() && x.genus() == 1)).unwrap();
        let torus = Dessin::from_permutations(vec![1, 2, 0], vec![1, 2, 0]).unwrap().canonical_form();
        assert!(genus_one.contains(&torus));
        assert!(enumerate_dessins(9, None).is_err());
    }

    #[test]
    fn tree_formulas() {
        assert_eq!(count_labeled_bipartite_trees(1, None).unwrap(), 2);
        assert_eq!(count_labeled_bipartite_trees(3, Some(2)).unwrap(), 8);
        assert_eq!(count_labeled_bipartite_trees(3, None).unwrap(), 32);
        assert!(count_labeled_bipartite_trees(3, Some(4)).is_err());
        // binomially weighted spanning-tree counts refine 2(d+1)^{d-1}
        for d in 1..=8usize {
            let total: u128 = (1..=d)
                .map(|m| {
                    let binom = (0..m).fold(1u128, |acc, i| acc * (d as u128 + 1 - i as u128) / (i as u128 + 1));
                    binom * count_spanning_trees_complete_bipartite(m, d + 1 - m)
                })
                .sum();
            assert_eq!(total, count_labeled_bipartite_trees(d, None).unwrap());
        }
    }

    #[test]
    fn single_cycle_counts() {
        assert_eq!(count_single_cycle_belyi(3).unwrap(), 1);
        assert_eq!(count_single_cycle_belyi(6).unwrap(), 4);
        assert_eq!(count_single_cycle_belyi(7).unwrap(), 6);
        let mut prev = 0;
        for d in 3..=1000 {
            let n = count_single_cycle_belyi(d).unwrap();
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn covering_counts() {
        assert_eq!(count_coverings(0, &[1], &[1]).unwrap(), q(1));
        assert_eq!(count_coverings(0, &[2], &[1, 1]).unwrap(), qf(1, 2));
        // the identity pair in S_2: one pair out of 2!
        assert_eq!(count_coverings(0, &[1, 1], &[1, 1]).unwrap(), qf(1, 2));
        assert!(count_coverings(0, &[2], &[1]).is_err());
    }

    #[test]
    fn csv_output() {
        let csv = tree_count_table(2).to_csv();
        assert_eq!(csv, "d,m,count\n1,1,1\n2,1,1\n2,2,2\n");
    }
}
