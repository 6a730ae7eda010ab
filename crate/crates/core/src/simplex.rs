//! Combinatorics of the simplex category Δ: monotone maps between the finite
//! ordinals `[0], [1], [2], ...`, their composition, and the unique
//! surjection-then-injection factorization.
//!
//! The object `[n]` is represented by the number `n`; maps print as value
//! tuples, e.g. `(0,0,2)`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("maps are not composable: codomain [{0}] != domain [{1}]")]
    NotComposable(usize, usize),
    #[error("map {0} is not surjective")]
    NotSurjective(String),
    #[error("malformed simplex map: {0}")]
    Malformed(String),
}

/// A monotone function `[m] -> [n]`, stored as its value list of length `m+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexMap {
    domain: usize,
    codomain: usize,
    values: Vec<usize>,
}

impl SimplexMap {
    pub fn new(codomain: usize, values: Vec<usize>) -> Result<Self, SimplexError> {
        if values.is_empty() {
            return Err(SimplexError::Malformed("empty value list".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(SimplexError::Malformed(format!(
                "values {values:?} are not weakly increasing"
            )));
        }
        if values.iter().any(|&v| v > codomain) {
            return Err(SimplexError::Malformed(format!(
                "values {values:?} exceed codomain [{codomain}]"
            )));
        }
        Ok(SimplexMap {
            domain: values.len() - 1,
            codomain,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap {
            domain: n,
            codomain: n,
            values: (0..=n).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Injective iff strictly increasing.
    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Surjective iff every value in `0..=codomain` is attained.
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Pointwise composition `g ∘ f` (`self` is `g`).
    pub fn compose(&self, f: &SimplexMap) -> Result<SimplexMap, SimplexError> {
        if f.codomain != self.domain {
            return Err(SimplexError::NotComposable(f.codomain, self.domain));
        }
        Ok(SimplexMap {
            domain: f.domain,
            codomain: self.codomain,
            values: f.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    /// The unique factorization `f = d ∘ s` with `s` surjective and `d`
    /// injective. `s` lands on `[|image(f)| - 1]`.
    pub fn epi_mono_factor(&self) -> (SimplexMap, SimplexMap) {
        let mut image = self.values.clone();
        image.dedup();
        let rank = |v: usize| image.iter().position(|&w| w == v).unwrap();
        let s = SimplexMap {
            domain: self.domain,
            codomain: image.len() - 1,
            values: self.values.iter().map(|&v| rank(v)).collect(),
        };
        let d = SimplexMap {
            domain: image.len() - 1,
            codomain: self.codomain,
            values: image,
        };
        (s, d)
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// All weakly increasing maps `[m] -> [n]` in lexicographic order on the
/// value lists. There are `C(m+n+1, m+1)` of them.
pub fn monotone_maps(m: usize, n: usize) -> Vec<SimplexMap> {
    let mut out = Vec::new();
    let mut values = vec![0usize; m + 1];
    loop {
        out.push(SimplexMap {
            domain: m,
            codomain: n,
            values: values.clone(),
        });
        // next lex: bump the rightmost position that can still grow
        let mut i = m + 1;
        while i > 0 {
            i -= 1;
            if values[i] < n {
                values[i] += 1;
                for j in i + 1..=m {
                    values[j] = values[i];
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

pub fn injective_maps(m: usize, n: usize) -> Vec<SimplexMap> {
    monotone_maps(m, n)
        .into_iter()
        .filter(SimplexMap::is_injective)
        .collect()
}

pub fn surjective_maps(m: usize, n: usize) -> Vec<SimplexMap> {
    monotone_maps(m, n)
        .into_iter()
        .filter(SimplexMap::is_surjective)
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_map_counts() {
        assert_eq!(monotone_maps(0, 0).len(), 1);
        // exhaustive oracle: (0,0),(0,1),(1,1)
        let maps = monotone_maps(1, 1);
        assert_eq!(maps.len(), 3);
        assert_eq!(maps[0].values(), &[0, 0]);
        assert_eq!(maps[1].values(), &[0, 1]);
        assert_eq!(maps[2].values(), &[1, 1]);
        // strictly increasing pairs from {0,1,2}
        assert_eq!(injective_maps(1, 2).len(), 3);
    }

    #[test]
    fn composition() {
        let id1 = SimplexMap::identity(1);
        let f = SimplexMap::new(1, vec![0, 0]).unwrap();
        assert_eq!(id1.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id1).unwrap(), f);

        // surjection (0,0):[1]->[0] after injection (0):[0]->[1]
        let s = SimplexMap::new(0, vec![0, 0]).unwrap();
        let d = SimplexMap::new(1, vec![0]).unwrap();
        assert_eq!(s.compose(&d).unwrap(), SimplexMap::identity(0));

        // two face maps [0]->[1]->[2] compose to an injection [0]->[2]
        let d0 = SimplexMap::new(1, vec![1]).unwrap();
        let d1 = SimplexMap::new(2, vec![0, 2]).unwrap();
        let c = d1.compose(&d0).unwrap();
        assert_eq!(c.values(), &[2]);
        assert!(c.is_injective());

        let bad = d0.compose(&d1);
        assert!(matches!(bad, Err(SimplexError::NotComposable(..))));
    }

    #[test]
    fn injective_surjective_flags_compose() {
        for f in monotone_maps(2, 2) {
            for g in monotone_maps(2, 3) {
                let c = g.compose(&f).unwrap();
                if f.is_injective() && g.is_injective() {
                    assert!(c.is_injective());
                }
                if f.is_surjective() && g.is_surjective() {
                    assert!(c.is_surjective());
                }
            }
        }
    }

    #[test]
    fn epi_mono_examples() {
        let id = SimplexMap::identity(3);
        let (s, d) = id.epi_mono_factor();
        assert_eq!(s, id);
        assert_eq!(d, id);

        // constant map [2]->[1] at value 1
        let c = SimplexMap::new(1, vec![1, 1, 1]).unwrap();
        let (s, d) = c.epi_mono_factor();
        assert_eq!(s, SimplexMap::new(0, vec![0, 0, 0]).unwrap());
        assert_eq!(d, SimplexMap::new(1, vec![1]).unwrap());
        assert_eq!(d.compose(&s).unwrap(), c);

        // f = (0,0,2):[2]->[2]
        let f = SimplexMap::new(2, vec![0, 0, 2]).unwrap();
        let (s, d) = f.epi_mono_factor();
        assert_eq!(s, SimplexMap::new(1, vec![0, 0, 1]).unwrap());
        assert_eq!(d, SimplexMap::new(2, vec![0, 2]).unwrap());
        assert_eq!(d.compose(&s).unwrap(), f);
    }

    #[test]
    fn display_prints_tuples() {
        let f = SimplexMap::new(2, vec![0, 0, 2]).unwrap();
        assert_eq!(f.to_string(), "(0,0,2)");
    }
}
