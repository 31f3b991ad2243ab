use crate::error::{shape, Result};

use super::set::{FinMap, FinSet};

/// Disjoint-set forest over `0..n` whose class representative is always the
/// smallest index in the class.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns `true` if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Representative of every element.
    pub fn representatives(&mut self) -> Vec<usize> {
        (0..self.len()).map(|i| self.find(i)).collect()
    }
}

/// The quotient of `set` by a union-find partition: classes are ordered by
/// their smallest member and labelled `{rep}`.
pub fn quotient(set: &FinSet, classes: &mut UnionFind) -> (FinSet, FinMap) {
    let reps = classes.representatives();
    let mut class_of = vec![usize::MAX; set.size()];
    let mut labels = Vec::new();
    for (i, &r) in reps.iter().enumerate() {
        if r == i {
            class_of[i] = labels.len();
            labels.push(format!("{{{}}}", set.label(i)));
        }
    }
    let table = reps.iter().map(|&r| class_of[r]).collect();
    let q = FinSet::from_distinct(labels);
    (q.clone(), FinMap::from_parts(set.clone(), q, table))
}

/// Coequalizer of a parallel pair: the quotient of the shared codomain by the
/// equivalence generated by `f(x) ~ g(x)`, with its projection.
pub fn coequalizer(f: &FinMap, g: &FinMap) -> Result<(FinSet, FinMap)> {
    if f.dom().size() != g.dom().size() || f.cod().size() != g.cod().size() {
        return Err(shape(format!(
            "coequalizer needs a parallel pair, got {}→{} and {}→{}",
            f.dom().size(),
            f.cod().size(),
            g.dom().size(),
            g.cod().size()
        )));
    }
    let mut uf = UnionFind::new(f.cod().size());
    for x in f.dom().indices() {
        uf.union(f.apply(x), g.apply(x));
    }
    Ok(quotient(f.cod(), &mut uf))
}

/// Binary coproduct with its two coprojections. Labels are prefixed by the
/// summand index so they stay distinct.
pub fn coproduct(a: &FinSet, b: &FinSet) -> (FinSet, FinMap, FinMap) {
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("0.{l}"))
        .chain(b.labels().iter().map(|l| format!("1.{l}")))
        .collect();
    let sum = FinSet::from_distinct(labels);
    let left = FinMap::from_parts(a.clone(), sum.clone(), a.indices().collect());
    let right = FinMap::from_parts(
        b.clone(),
        sum.clone(),
        b.indices().map(|i| a.size() + i).collect(),
    );
    (sum, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(dom: usize, cod: usize, table: &[usize]) -> FinMap {
        FinMap::new(FinSet::range(dom), FinSet::range(cod), table.to_vec()).unwrap()
    }

    #[test]
    fn identity_pair_gives_identity_projection() {
        let id = FinMap::identity(&FinSet::range(2));
        let (q, p) = coequalizer(&id, &id).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(p.table(), &[0, 1]);
    }

    #[test]
    fn forced_collapse() {
        let (q, _) = coequalizer(&map(1, 2, &[0]), &map(1, 2, &[1])).unwrap();
        assert_eq!(q.size(), 1);
        assert_eq!(q.label(0), "{0}");
    }

    #[test]
    fn chain_collapses_to_one_class() {
        // 0~1 and 1~2; the brute-force partition oracle gives one block.
        let (q, p) = coequalizer(&map(2, 3, &[0, 1]), &map(2, 3, &[1, 2])).unwrap();
        assert_eq!(q.size(), 1);
        assert_eq!(p.table(), &[0, 0, 0]);
    }

    #[test]
    fn mismatched_pair_is_a_shape_error() {
        assert!(coequalizer(&map(1, 2, &[0]), &map(1, 3, &[0])).is_err());
    }

    #[test]
    fn representatives_are_smallest() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(3, 4);
        assert_eq!(uf.representatives(), vec![0, 1, 2, 2, 2]);
    }
}
