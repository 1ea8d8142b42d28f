use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Finite-dimensional space with named basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    labels: Vec<String>,
}

impl Space {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Space("dimension must be positive".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Space("basis labels must be distinct".into()));
        }
        Ok(Space { labels })
    }

    /// Basis `prefix1, .., prefixn`.
    pub fn indexed(prefix: &str, dim: usize) -> Self {
        Space {
            labels: (1..=dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &Space) -> Space {
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(other.labels.iter().map(|l| format!("(0,{l})")));
        Space { labels }
    }

    /// Dual basis.
    pub fn dual(&self) -> Space {
        Space {
            labels: self
                .labels
                .iter()
                .map(|l| match l.strip_suffix('*') {
                    Some(base) => base.to_string(),
                    None => format!("{l}*"),
                })
                .collect(),
        }
    }

    /// `n` copies, basis `(copy, i)` at index `copy * dim + i`.
    pub fn power(&self, n: usize) -> Space {
        let mut labels = Vec::with_capacity(n * self.dim());
        for c in 1..=n {
            for l in &self.labels {
                labels.push(format!("{l}[{c}]"));
            }
        }
        Space { labels }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }
}
