use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{shape, Error, Result};

/// A finite set `{0, .., n-1}` with a distinct display label per element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    labels: Arc<[String]>,
}

impl FinSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Invalid(format!("duplicate element label `{label}`")));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Builds a set from labels the caller guarantees to be distinct.
    pub(crate) fn from_distinct(labels: Vec<String>) -> Self {
        debug_assert_eq!(
            labels.iter().collect::<HashSet<_>>().len(),
            labels.len(),
            "labels must be distinct"
        );
        Self {
            labels: labels.into(),
        }
    }

    /// Builds a set from generated labels, disambiguating any collisions by
    /// appending primes. Generated labels only collide when user labels
    /// contain the separators used to build them.
    pub(crate) fn from_generated(labels: Vec<String>) -> Self {
        let mut seen = HashSet::with_capacity(labels.len());
        let labels = labels
            .into_iter()
            .map(|mut l| {
                while !seen.insert(l.clone()) {
                    l.push('\'');
                }
                l
            })
            .collect::<Vec<_>>();
        Self {
            labels: labels.into(),
        }
    }

    /// `{0, .., n-1}` labelled by the decimal indices.
    pub fn range(n: usize) -> Self {
        Self::from_distinct((0..n).map(|i| i.to_string()).collect())
    }

    pub fn singleton() -> Self {
        Self::from_distinct(vec!["*".to_string()])
    }

    pub fn empty() -> Self {
        Self::from_distinct(Vec::new())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

/// A function between finite sets, stored as a lookup table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(shape(format!(
                "table has {} entries but the domain has {} elements",
                table.len(),
                dom.size()
            )));
        }
        if let Some(bad) = table.iter().find(|&&t| t >= cod.size()) {
            return Err(shape(format!(
                "table entry {bad} is outside a codomain of size {}",
                cod.size()
            )));
        }
        Ok(Self { dom, cod, table })
    }

    pub(crate) fn from_parts(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), dom.size());
        debug_assert!(table.iter().all(|&t| t < cod.size()));
        Self { dom, cod, table }
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = dom.indices().map(f).collect();
        Self::new(dom, cod, table)
    }

    pub fn identity(set: &FinSet) -> Self {
        Self::from_parts(set.clone(), set.clone(), set.indices().collect())
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinMap) -> Result<FinMap> {
        if self.cod.size() != next.dom.size() {
            return Err(shape(format!(
                "cannot compose: codomain of size {} feeds a domain of size {}",
                self.cod.size(),
                next.dom.size()
            )));
        }
        Ok(Self::from_parts(
            self.dom.clone(),
            next.cod.clone(),
            self.table.iter().map(|&i| next.table[i]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        self.table
            .iter()
            .all(|&t| !std::mem::replace(&mut hit[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &t in &self.table {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.cod.size()];
        for (i, &t) in self.table.iter().enumerate() {
            inv[t] = i;
        }
        Some(Self::from_parts(self.cod.clone(), self.dom.clone(), inv))
    }

    /// Same table, with the endpoints replaced by sets of equal size.
    pub fn relabel(&self, dom: FinSet, cod: FinSet) -> Result<FinMap> {
        Self::new(dom, cod, self.table.clone())
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.table
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| (self.dom.label(i), self.cod.label(t))),
            )
            .finish()
    }
}
