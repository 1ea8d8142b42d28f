use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::kernel::{Rational, Scalar, SparseVec};

/// Failures kept per axiom; the total count is always exact.
pub const MAX_FAILURES_PER_AXIOM: usize = 256;

/// One identity violated at one tuple of basis indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub axiom: String,
    pub indices: Vec<usize>,
    /// Lowest power of `h` at which the residual is nonzero (0 over the ground field).
    pub order: usize,
    /// Nonzero residual coordinates with their coefficient lists by `h`-power.
    pub residual: Vec<(usize, Vec<Rational>)>,
}

impl Failure {
    pub fn from_residual<S: Scalar>(axiom: &str, indices: Vec<usize>, residual: &SparseVec<S>) -> Self {
        let order = residual.iter().filter_map(|(_, c)| c.lowest_order()).min().unwrap_or(0);
        Failure {
            axiom: axiom.to_string(),
            indices,
            order,
            residual: residual.iter().map(|(k, c)| (k, c.coefficients())).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AxiomReport {
    /// Identities evaluated, in evaluation order.
    pub checked: Vec<String>,
    pub failures: Vec<Failure>,
    /// Exact number of failing tuples per axiom.
    pub failure_counts: BTreeMap<String, usize>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failing_axioms(&self) -> BTreeSet<String> {
        self.failure_counts.keys().cloned().collect()
    }

    pub fn first_failure(&self, axiom: &str) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    /// First failing `h`-order per axiom.
    pub fn first_orders(&self) -> BTreeMap<String, usize> {
        let mut m: BTreeMap<String, usize> = BTreeMap::new();
        for f in &self.failures {
            let e = m.entry(f.axiom.clone()).or_insert(f.order);
            *e = (*e).min(f.order);
        }
        m
    }

    pub fn lowest_failing_order(&self) -> Option<usize> {
        self.failures.iter().map(|f| f.order).min()
    }

    pub fn record(&mut self, failure: Failure) {
        let n = self.failure_counts.entry(failure.axiom.clone()).or_insert(0);
        *n += 1;
        if *n <= MAX_FAILURES_PER_AXIOM {
            self.failures.push(failure);
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checked.extend(other.checked);
        self.failures.extend(other.failures);
        for (k, n) in other.failure_counts {
            *self.failure_counts.entry(k).or_insert(0) += n;
        }
    }

    /// Prefixes every axiom name, used when several reports are combined.
    pub fn prefixed(mut self, prefix: &str) -> AxiomReport {
        let p = |s: &String| format!("{prefix}/{s}");
        self.checked = self.checked.iter().map(p).collect();
        for f in &mut self.failures {
            f.axiom = p(&f.axiom);
        }
        self.failure_counts = self.failure_counts.iter().map(|(k, &n)| (p(k), n)).collect();
        self
    }

    /// A single named check with an optional failure.
    pub fn single(name: &str, failure: Option<Failure>) -> AxiomReport {
        let mut r = AxiomReport {
            checked: vec![name.to_string()],
            ..Default::default()
        };
        if let Some(f) = failure {
            r.record(f);
        }
        r
    }
}
