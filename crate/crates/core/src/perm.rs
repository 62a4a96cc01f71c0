//! Permutations of `0..n` stored as image arrays.

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// The cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn long_cycle(n: usize) -> Perm {
    (0..n).map(|i| (i + 1) % n).collect()
}

pub fn validate(p: &[usize]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for (i, &x) in p.iter().enumerate() {
        if x >= p.len() {
            return Err(Error::InvalidPermutation(format!(
                "image {x} of {i} out of range 0..{}",
                p.len()
            )));
        }
        if seen[x] {
            return Err(Error::InvalidPermutation(format!("{x} is hit twice")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// `a ∘ b`, applying `b` first.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// Cycles ordered by their least element, each starting at its least element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push(cyc);
    }
    out
}

pub fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for start in 0..p.len() {
        if !seen[start] {
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
            }
        }
    }
    count
}

/// Cycle lengths in non-increasing order.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(p).iter().map(Vec::len).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// Permutation with the given cycle lengths laid out on consecutive labels.
pub fn from_cycle_type(lengths: &[usize]) -> Perm {
    let n: usize = lengths.iter().sum();
    let mut p = identity(n);
    let mut base = 0;
    for &len in lengths {
        for j in 0..len {
            p[base + j] = base + (j + 1) % len;
        }
        base += len;
    }
    p
}

pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
    let mut p = identity(n);
    let mut seen = vec![false; n];
    for cyc in cycles {
        for (j, &x) in cyc.iter().enumerate() {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "label {x} out of range 0..{n}"
                )));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "label {x} appears in two cycles"
                )));
            }
            seen[x] = true;
            p[x] = cyc[(j + 1) % cyc.len()];
        }
    }
    Ok(p)
}

/// Cycle notation including fixed points, e.g. `(0 1 2)(3)`.
pub fn to_cycle_string(p: &[usize]) -> String {
    cycles(p)
        .iter()
        .map(|c| {
            let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(" "))
        })
        .collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

/// Advance to the next permutation in lexicographic order; false at the end.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Integer partitions of `n` in non-increasing part order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = vec![1, 0, 2];
        let b = vec![0, 2, 1];
        // b sends 1 -> 2, a fixes 2
        assert_eq!(compose(&a, &b)[1], 2);
        assert_eq!(compose(&b, &a)[1], 0);
    }

    #[test]
    fn cycles_and_types() {
        let p = from_cycles(5, &[vec![0, 3], vec![1, 4, 2]]).unwrap();
        assert_eq!(cycles(&p), vec![vec![0, 3], vec![1, 4, 2]]);
        assert_eq!(cycle_type(&p), vec![3, 2]);
        assert_eq!(to_cycle_string(&p), "(0 3)(1 4 2)");
        assert_eq!(cycle_type(&from_cycle_type(&[3, 2, 1])), vec![3, 2, 1]);
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(all_perms(4).len(), 24);
        assert_eq!(partitions(5).len(), 7);
        assert!(validate(&[0, 0]).is_err());
        assert_eq!(inverse(&long_cycle(4)), vec![3, 0, 1, 2]);
    }
}
