use std::fmt;
use std::sync::Arc;

use crate::error::{shape, Error, Result};
use crate::fincore::FinSet;
use crate::report::{CheckReport, Witness};

/// A finite monoid given by its full multiplication table, with an optional
/// absorbing element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonoidTable {
    elements: FinSet,
    mult: Arc<[usize]>,
    unit: usize,
    zero: Option<usize>,
}

impl MonoidTable {
    /// Shape-checked constructor; `rows[i][j]` is `i·j`. Laws are reported by
    /// [`MonoidTable::check_laws`].
    pub fn new(
        elements: FinSet,
        rows: Vec<Vec<usize>>,
        unit: usize,
        zero: Option<usize>,
    ) -> Result<Self> {
        let n = elements.size();
        if n == 0 {
            return Err(shape("a monoid needs at least its unit"));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(shape(format!("multiplication table must be {n}×{n}")));
        }
        if rows.iter().flatten().any(|&v| v >= n) {
            return Err(shape("multiplication table entry out of range"));
        }
        if unit >= n || zero.is_some_and(|z| z >= n) {
            return Err(shape("unit or zero out of range"));
        }
        Ok(Self {
            elements,
            mult: rows.concat().into(),
            unit,
            zero,
        })
    }

    pub fn from_fn(
        elements: FinSet,
        mult: impl Fn(usize, usize) -> usize,
        unit: usize,
        zero: Option<usize>,
    ) -> Result<Self> {
        let n = elements.size();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| mult(i, j)).collect())
            .collect();
        Self::new(elements, rows, unit, zero)
    }

    pub(crate) fn from_flat(
        elements: FinSet,
        mult: Vec<usize>,
        unit: usize,
        zero: Option<usize>,
    ) -> Self {
        debug_assert_eq!(mult.len(), elements.size() * elements.size());
        Self {
            elements,
            mult: mult.into(),
            unit,
            zero,
        }
    }

    /// The one-element monoid (its element is both unit and absorbing).
    pub fn trivial() -> Self {
        Self::from_flat(FinSet::new(["e"]).unwrap(), vec![0], 0, None)
    }

    /// The one-element monoid viewed with an absorbing element.
    pub fn zero_monoid() -> Self {
        Self::from_flat(FinSet::new(["0"]).unwrap(), vec![0], 0, Some(0))
    }

    /// The cyclic group of order `n`, elements `e, g, g^2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let labels: Vec<String> = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            })
            .collect();
        Self::from_fn(FinSet::new(labels).unwrap(), |a, b| (a + b) % n, 0, None).unwrap()
    }

    /// `({0,1}, ·)` with unit 1 and absorbing 0.
    pub fn boolean() -> Self {
        Self::from_fn(FinSet::new(["0", "1"]).unwrap(), |a, b| a & b, 1, Some(0)).unwrap()
    }

    /// `{0, …, k}` under `min(x + y, k)`: unit 0, absorbing `k`.
    pub fn saturating(k: usize) -> Self {
        let labels: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
        Self::from_fn(
            FinSet::new(labels).unwrap(),
            |a, b| (a + b).min(k),
            0,
            Some(k),
        )
        .unwrap()
    }

    /// Adjoins a new absorbing element `0`, placed first.
    pub fn with_zero(&self) -> Self {
        let labels: Vec<String> = std::iter::once("0".to_string())
            .chain(self.elements.labels().iter().cloned())
            .collect();
        let n = self.size() + 1;
        Self::from_fn(
            FinSet::from_generated(labels),
            |a, b| {
                if a == 0 || b == 0 {
                    0
                } else {
                    self.mul(a - 1, b - 1) + 1
                }
            },
            self.unit + 1,
            Some(0),
        )
        .map(|t| {
            debug_assert_eq!(t.size(), n);
            t
        })
        .unwrap()
    }

    /// Direct product; the absorbing element is the pair of absorbing
    /// elements when both factors have one.
    pub fn product(&self, other: &MonoidTable) -> Self {
        let m = other.size();
        let labels = (0..self.size() * m)
            .map(|p| format!("({},{})", self.label(p / m), other.label(p % m)))
            .collect();
        let zero = match (self.zero, other.zero) {
            (Some(a), Some(b)) => Some(a * m + b),
            _ => None,
        };
        Self::from_fn(
            FinSet::from_generated(labels),
            |p, q| self.mul(p / m, q / m) * m + other.mul(p % m, q % m),
            self.unit * m + other.unit,
            zero,
        )
        .unwrap()
    }

    /// Same table with a designated absorbing element, which must absorb.
    pub fn with_absorbing(&self, zero: usize) -> Result<Self> {
        if zero >= self.size()
            || (0..self.size()).any(|x| self.mul(zero, x) != zero || self.mul(x, zero) != zero)
        {
            return Err(Error::Invalid(format!(
                "`{}` is not absorbing",
                self.label(zero.min(self.size() - 1))
            )));
        }
        let mut t = self.clone();
        t.zero = Some(zero);
        Ok(t)
    }

    pub fn elements(&self) -> &FinSet {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.size()
    }

    pub fn label(&self, i: usize) -> &str {
        self.elements.label(i)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size() + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mult
            .chunks(self.size())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn flat(&self) -> &[usize] {
        &self.mult
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The absorbing element, if the table has one (at most one exists).
    pub fn find_absorbing(&self) -> Option<usize> {
        (0..self.size())
            .find(|&z| (0..self.size()).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size()).find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| self.inverse(a).is_some())
            .collect()
    }

    /// Associativity, unit, absorption and (optionally) commutativity, each
    /// as its own item with the first offending tuple as witness.
    pub fn check_laws(&self, commutative: bool) -> CheckReport {
        let n = self.size();
        let mut report = CheckReport::new("monoid.laws");
        let mut assoc = CheckReport::new("monoid.associativity");
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let ok = self.mul(ab, c) == self.mul(a, self.mul(b, c));
                    assoc.record(ok, || {
                        Witness::new("(a·b)·c differs from a·(b·c)")
                            .field("a", self.label(a))
                            .field("b", self.label(b))
                            .field("c", self.label(c))
                    });
                }
            }
        }
        let mut unit = CheckReport::new("monoid.unit");
        for a in 0..n {
            let ok = self.mul(self.unit, a) == a && self.mul(a, self.unit) == a;
            unit.record(ok, || {
                Witness::new("unit does not act trivially").field("a", self.label(a))
            });
        }
        report.push(assoc);
        report.push(unit);
        if commutative {
            let mut comm = CheckReport::new("monoid.commutativity");
            for a in 0..n {
                for b in a + 1..n {
                    comm.record(self.mul(a, b) == self.mul(b, a), || {
                        Witness::new("a·b differs from b·a")
                            .field("a", self.label(a))
                            .field("b", self.label(b))
                    });
                }
            }
            report.push(comm);
        }
        if let Some(z) = self.zero {
            let mut zero = CheckReport::new("monoid.absorption");
            for a in 0..n {
                let ok = self.mul(z, a) == z && self.mul(a, z) == z;
                zero.record(ok, || {
                    Witness::new("designated zero does not absorb").field("a", self.label(a))
                });
            }
            report.push(zero);
        }
        report
    }

    /// Applies a bijective relabelling `perm` (old index ↦ new index).
    #[cfg(test)]
    pub(crate) fn permuted(&self, perm: &[usize], labels: FinSet) -> Self {
        let n = self.size();
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_flat(labels, mult, perm[self.unit], self.zero.map(|z| perm[z]))
    }
}

impl fmt::Debug for MonoidTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidTable")
            .field("elements", &self.elements)
            .field("unit", &self.label(self.unit))
            .field("zero", &self.zero.map(|z| self.label(z)))
            .field("rows", &self.rows())
            .finish()
    }
}

/// A homomorphism of (not necessarily commutative) monoids. When both ends
/// carry an absorbing element it must be preserved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonoidHom {
    dom: Arc<MonoidTable>,
    cod: Arc<MonoidTable>,
    map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(dom: Arc<MonoidTable>, cod: Arc<MonoidTable>, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.size() || map.iter().any(|&v| v >= cod.size()) {
            return Err(shape("homomorphism table does not match its endpoints"));
        }
        Ok(Self { dom, cod, map })
    }

    /// Rejects maps that fail [`MonoidHom::check_laws`].
    pub fn new_checked(
        dom: Arc<MonoidTable>,
        cod: Arc<MonoidTable>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let h = Self::new(dom, cod, map)?;
        let report = h.check_laws();
        match report.first_failure() {
            None => Ok(h),
            Some(bad) => Err(Error::Precondition(format!(
                "not a monoid homomorphism: {}",
                bad.witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default()
            ))),
        }
    }

    pub fn identity(m: Arc<MonoidTable>) -> Self {
        let map = (0..m.size()).collect();
        Self {
            dom: m.clone(),
            cod: m,
            map,
        }
    }

    pub fn dom(&self) -> &Arc<MonoidTable> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<MonoidTable> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonoidHom) -> Result<MonoidHom> {
        if self.cod.size() != next.dom.size() {
            return Err(shape("homomorphisms are not composable"));
        }
        Ok(Self {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.iter().map(|&v| next.map[v]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        self.dom.size() == self.cod.size()
            && self
                .map
                .iter()
                .all(|&t| !std::mem::replace(&mut hit[t], true))
    }

    pub fn check_laws(&self) -> CheckReport {
        let mut report = CheckReport::new("monoid_hom.laws");
        let n = self.dom.size();
        for a in 0..n {
            for b in 0..n {
                let ok = self.map[self.dom.mul(a, b)] == self.cod.mul(self.map[a], self.map[b]);
                report.record(ok, || {
                    Witness::new("f(a·b) differs from f(a)·f(b)")
                        .field("a", self.dom.label(a))
                        .field("b", self.dom.label(b))
                });
            }
        }
        report.record(self.map[self.dom.unit()] == self.cod.unit(), || {
            Witness::new("unit not preserved")
        });
        if let (Some(z), Some(w)) = (self.dom.zero(), self.cod.zero()) {
            report.record(self.map[z] == w, || {
                Witness::new("absorbing element not preserved")
            });
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_tables_are_commutative_monoids() {
        for t in [
            MonoidTable::trivial(),
            MonoidTable::zero_monoid(),
            MonoidTable::cyclic(4),
            MonoidTable::boolean(),
            MonoidTable::saturating(2),
            MonoidTable::cyclic(2).with_zero(),
            MonoidTable::boolean().product(&MonoidTable::boolean()),
        ] {
            assert!(t.check_laws(true).passed(), "{t:?}");
        }
    }

    #[test]
    fn planted_non_commutativity_is_witnessed() {
        let t = MonoidTable::new(
            FinSet::new(["e", "a", "b"]).unwrap(),
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
            0,
            None,
        )
        .unwrap();
        let report = t.check_laws(true);
        let item = report.item("monoid.commutativity").unwrap();
        let w = item.witness.as_ref().unwrap();
        assert_eq!((w.get("a"), w.get("b")), (Some("a"), Some("b")));
        // Left-zero multiplication is still associative.
        assert!(report.item("monoid.associativity").unwrap().passed());
    }

    #[test]
    fn units_of_saturating_monoid() {
        assert_eq!(MonoidTable::saturating(2).units(), vec![0]);
        assert_eq!(MonoidTable::cyclic(3).units(), vec![0, 1, 2]);
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let z4 = Arc::new(MonoidTable::cyclic(4));
        let z2 = Arc::new(MonoidTable::cyclic(2));
        assert!(MonoidHom::new_checked(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(MonoidHom::new_checked(z4, z2, vec![0, 1, 1, 1]).is_err());
    }
}
