//! Weighted gradings of polynomials.

use std::collections::BTreeMap;

use super::poly::Poly;
use crate::error::AlgebraError;

/// One positive integer weight per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(w: Vec<u32>) -> Result<Self, AlgebraError> {
        if w.is_empty() {
            return Err(AlgebraError::InvalidWeights("empty".into()));
        }
        if let Some(bad) = w.iter().find(|&&x| x == 0) {
            return Err(AlgebraError::InvalidWeights(format!(
                "weights must be >= 1, got {bad}"
            )));
        }
        Ok(WeightVector(w))
    }

    pub fn uniform(n: usize) -> Self {
        WeightVector(vec![1; n])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }
}

/// Splits `p` into `w`-homogeneous parts, in strictly increasing degree.
pub fn weighted_decompose(p: &Poly, w: &WeightVector) -> Vec<(u64, Poly)> {
    assert_eq!(w.len(), p.nvars(), "weight vector length");
    let mut parts: BTreeMap<u64, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        parts
            .entry(m.weighted_degree(w.as_slice()))
            .or_insert_with(|| Poly::zero(p.vars()))
            .add_term(m.clone(), c.clone());
    }
    parts.into_iter().collect()
}
