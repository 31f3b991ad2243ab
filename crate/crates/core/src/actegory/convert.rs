use std::sync::Arc;

use crate::carrier::Carrier;
use crate::commalg::MonoidTable;
use crate::error::{shape, Error, Result};
use crate::fincore::{FinCategory, FinPresheaf, FinSet};
use crate::report::Witness;

use super::delooping;

/// A finite set with a right action of a finite monoid, `v ↦ v·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightMSet {
    monoid: Arc<MonoidTable>,
    elements: FinSet,
    /// `action[v][m] = v·m`.
    action: Vec<Vec<usize>>,
}

impl RightMSet {
    pub fn new(monoid: &MonoidTable, elements: FinSet, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.size();
        if action.len() != n
            || action
                .iter()
                .any(|r| r.len() != monoid.size() || r.iter().any(|&t| t >= n))
        {
            return Err(shape(
                "action table must be |set| × |monoid| with entries in the set",
            ));
        }
        let s = Self {
            monoid: Arc::new(monoid.clone()),
            elements,
            action,
        };
        if let Some(w) = s.law_violation() {
            return Err(Error::Invalid(w.to_string()));
        }
        Ok(s)
    }

    /// Every element fixed by every monoid element.
    pub fn trivial_action(monoid: &MonoidTable, elements: FinSet) -> Self {
        let action = (0..elements.size())
            .map(|v| vec![v; monoid.size()])
            .collect();
        Self {
            monoid: Arc::new(monoid.clone()),
            elements,
            action,
        }
    }

    /// The monoid acting on itself by right multiplication.
    pub fn regular(monoid: &MonoidTable) -> Self {
        let action = (0..monoid.size())
            .map(|v| (0..monoid.size()).map(|m| monoid.mul(v, m)).collect())
            .collect();
        Self {
            monoid: Arc::new(monoid.clone()),
            elements: monoid.elements().clone(),
            action,
        }
    }

    fn law_violation(&self) -> Option<Witness> {
        let m = &self.monoid;
        for v in 0..self.elements.size() {
            if self.action[v][m.unit()] != v {
                return Some(Witness::new("v·e ≠ v").field("v", self.elements.label(v)));
            }
            for g in 0..m.size() {
                for f in 0..m.size() {
                    if self.action[self.action[v][g]][f] != self.action[v][m.mul(g, f)] {
                        return Some(
                            Witness::new("(v·g)·f ≠ v·(gf)")
                                .field("v", self.elements.label(v))
                                .field("g", m.label(g))
                                .field("f", m.label(f)),
                        );
                    }
                }
            }
        }
        None
    }

    pub fn monoid(&self) -> &MonoidTable {
        &self.monoid
    }

    pub fn elements(&self) -> &FinSet {
        &self.elements
    }

    pub fn act(&self, v: usize, m: usize) -> usize {
        self.action[v][m]
    }

    /// As a presheaf on the one-object category of the monoid.
    pub fn to_carrier(&self) -> Carrier {
        let cat = Arc::new(delooping(&self.monoid));
        let tables = (0..self.monoid.size())
            .map(|m| {
                (0..self.elements.size())
                    .map(|v| self.action[v][m])
                    .collect()
            })
            .collect();
        Carrier::plain(
            FinPresheaf::from_tables(cat, vec![self.elements.clone()], tables)
                .expect("valid right action"),
        )
    }

    pub fn from_carrier(monoid: &MonoidTable, c: &Carrier) -> Result<Self> {
        if **c.base() != delooping(monoid) {
            return Err(shape(
                "carrier does not live on the monoid's one-object category",
            ));
        }
        let elements = c.at(0).clone();
        let action = (0..elements.size())
            .map(|v| (0..monoid.size()).map(|m| c.restrict(m, v)).collect())
            .collect();
        Self::new(monoid, elements, action)
    }
}

/// A finite directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: FinSet,
    edges: FinSet,
    source: Vec<usize>,
    target: Vec<usize>,
}

impl Digraph {
    /// Edges are `(id, source, target)` with endpoints named by vertex label.
    pub fn new<'a>(
        vertices: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Result<Self> {
        let vertices = FinSet::new(vertices)?;
        let (mut ids, mut source, mut target) = (Vec::new(), Vec::new(), Vec::new());
        for (id, s, t) in edges {
            let find = |name: &str| {
                vertices.index_of(name).ok_or_else(|| Error::Resolution {
                    name: name.to_string(),
                    context: format!("edge `{id}`"),
                })
            };
            source.push(find(s)?);
            target.push(find(t)?);
            ids.push(id);
        }
        Ok(Self {
            vertices,
            edges: FinSet::new(ids)?,
            source,
            target,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.size()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.size()
    }

    pub fn source(&self, e: usize) -> usize {
        self.source[e]
    }

    pub fn target(&self, e: usize) -> usize {
        self.target[e]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        self.vertices.label(v)
    }

    pub fn edge_label(&self, e: usize) -> &str {
        self.edges.label(e)
    }

    pub fn to_carrier(&self) -> Carrier {
        let cat = Arc::new(FinCategory::parallel_pair());
        let tables = vec![
            (0..self.vertex_count()).collect(),
            (0..self.edge_count()).collect(),
            self.source.clone(),
            self.target.clone(),
        ];
        Carrier::plain(
            FinPresheaf::from_tables(cat, vec![self.vertices.clone(), self.edges.clone()], tables)
                .expect("graph data is well formed"),
        )
    }

    pub fn from_carrier(c: &Carrier) -> Result<Self> {
        if **c.base() != FinCategory::parallel_pair() || c.is_pointed() {
            return Err(shape("carrier is not a directed graph"));
        }
        Ok(Self {
            vertices: c.at(0).clone(),
            edges: c.at(1).clone(),
            source: (0..c.size(1)).map(|e| c.restrict(2, e)).collect(),
            target: (0..c.size(1)).map(|e| c.restrict(3, e)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_action_round_trips() {
        let z3 = MonoidTable::cyclic(3);
        let r = RightMSet::regular(&z3);
        assert_eq!(RightMSet::from_carrier(&z3, &r.to_carrier()).unwrap(), r);
        assert!(r.to_carrier().check_laws().passed());
    }

    #[test]
    fn non_action_is_rejected() {
        let z2 = MonoidTable::cyclic(2);
        // g sends both elements to 0: (v·g)·g = 0 but v·e = v.
        let bad = RightMSet::new(&z2, FinSet::range(2), vec![vec![0, 0], vec![1, 0]]);
        assert!(bad.is_err());
    }

    #[test]
    fn dangling_edge_endpoint() {
        let err = Digraph::new(["a"], [("e", "a", "b")]).unwrap_err();
        assert!(matches!(err, Error::Resolution { .. }));
    }
}
