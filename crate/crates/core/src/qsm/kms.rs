//! Low-temperature KMS states over the catalog of `N ⋆ Z/2Z` words.

use num_rational::BigRational;
use num_traits::One;

use super::partition::convergence_threshold;
use super::partition::ClosedSystem;
use super::series::{zeta_f, Accumulator};
use crate::belyi::SemigroupWord;
use crate::dessin::Dessin;
use crate::error::{guard, Error, Result};
use crate::hopf::Character;
use crate::ring::Q;

/// Largest word degree in a KMS sum.
pub const MAX_WORD_DEGREE: usize = 200;

/// Every reduced word of `N ⋆ Z/2Z` with integral factors `≥ 2` and degree
/// at most `cutoff`, listed once each.
pub fn s_words(cutoff: usize) -> Result<Vec<SemigroupWord>> {
    guard("word degree", cutoff, MAX_WORD_DEGREE)?;
    fn factorizations(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=n {
            if n % d == 0 {
                prefix.push(d);
                factorizations(n / d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = vec![SemigroupWord::identity(), "F".parse()?];
    for n in 2..=cutoff {
        let mut fs = Vec::new();
        factorizations(n, &mut Vec::new(), &mut fs);
        for f in fs {
            let factors: Vec<Q> = f.iter().map(|&d| BigRational::from_integer((d as i64).into())).collect();
            for eps0 in [false, true] {
                for eps1 in [false, true] {
                    out.push(SemigroupWord { eps0, factors: factors.clone(), eps1 });
                }
            }
        }
    }
    Ok(out)
}

/// `φ` on a possibly disconnected dessin, multiplicatively over components.
pub fn character_value(phi: &dyn Character<f64>, d: &Dessin) -> f64 {
    d.components().iter().map(|c| phi.on_connected(c)).product()
}

#[derive(Clone, Debug, PartialEq)]
pub struct KmsValue {
    pub value: f64,
    /// `ψ − φ(D)`, summed term by term.
    pub deviation: f64,
    pub words: usize,
    pub normalization: f64,
}

/// `ψ_{β,φ}(D) = Σ_η φ(η(D)) deg(η)^{−β} / Σ_η deg(η)^{−β}` over the words
/// of degree at most `word_cutoff`.
pub fn kms_state(d: &Dessin, phi: &dyn Character<f64>, beta: f64, word_cutoff: usize) -> Result<KmsValue> {
    if !(beta > 1.0) || zeta_f(beta) >= 2.0 {
        return Err(Error::Divergent(format!(
            "KMS sum needs ζ(β) < 2, i.e. β > {:.6}; got β = {beta}",
            convergence_threshold(ClosedSystem::S)
        )));
    }
    let words = s_words(word_cutoff)?;
    let ground = character_value(phi, d);
    let mut num = Accumulator::new();
    let mut dev = Accumulator::new();
    let mut den = Accumulator::new();
    for w in &words {
        let deg = w.degree();
        debug_assert!(deg.denom().is_one());
        let weight = deg.to_integer().to_string().parse::<f64>().unwrap_or(f64::INFINITY).powf(-beta);
        let image = w.to_scheme()?.apply(d)?;
        let v = character_value(phi, &image);
        if !v.is_finite() {
            return Err(Error::Domain(format!("unbounded character: φ(η(D)) = {v} for η = {w}")));
        }
        num.add(v * weight);
        dev.add((v - ground) * weight);
        den.add(weight);
    }
    let value = num.value() / den.value();
    if !value.is_finite() {
        return Err(Error::Domain("unbounded character: KMS sum is not finite".into()));
    }
    Ok(KmsValue { value, deviation: dev.value() / den.value(), words: words.len(), normalization: den.value() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::EdgeCount;

    #[test]
    fn word_counts() {
        // 2 words of degree 1, then 4 P_n
        assert_eq!(s_words(1).unwrap().len(), 2);
        assert_eq!(s_words(4).unwrap().len(), 2 + 4 + 4 + 8);
    }

    #[test]
    fn zero_temperature_limit() {
        let lambda = Q::new(1.into(), 2.into());
        let phi = EdgeCount::new(lambda).unwrap();
        let d = Dessin::single_edge();
        let exact = kms_state(&d, &phi, 5.0, 1).unwrap();
        assert!((exact.value - 0.5).abs() < 1e-15);
        let mut prev = f64::INFINITY;
        for beta in [5.0, 10.0, 20.0] {
            let v = kms_state(&d, &phi, beta, 12).unwrap();
            let gap = v.deviation.abs();
            assert!((v.value - 0.5 - v.deviation).abs() < 1e-12);
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 1e-6);
        assert!(kms_state(&d, &phi, 1.5, 4).is_err());
    }
}
