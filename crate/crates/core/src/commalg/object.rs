use std::fmt;
use std::sync::Arc;

use crate::carrier::{pair_carriers, Carrier, CarrierMap, Paired};
use crate::error::{shape, Error, Result};
use crate::fincore::{FinCategory, FinFunctor, FinMap, FinPresheaf, FinSet};
use crate::report::{CheckReport, Witness};

use super::table::MonoidTable;

/// A supported symmetric monoidal base: presheaves on a finite category under
/// pointwise product (finite sets when the category is terminal), or pointed
/// finite sets under smash product.
#[derive(Clone, PartialEq, Eq)]
pub struct Base {
    shape: Arc<FinCategory>,
    pointed: bool,
}

impl Base {
    pub fn cartesian() -> Self {
        Self {
            shape: Arc::new(FinCategory::terminal()),
            pointed: false,
        }
    }

    pub fn pointed() -> Self {
        Self {
            shape: Arc::new(FinCategory::terminal()),
            pointed: true,
        }
    }

    pub fn presheaf(shape: Arc<FinCategory>) -> Self {
        Self {
            shape,
            pointed: false,
        }
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn is_cartesian_sets(&self) -> bool {
        !self.pointed && self.shape.object_count() == 1 && self.shape.arrow_count() == 1
    }

    pub fn name(&self) -> String {
        if self.pointed {
            "pointed finite sets".into()
        } else if self.is_cartesian_sets() {
            "finite sets".into()
        } else {
            format!("presheaves on {} objects", self.shape.object_count())
        }
    }

    /// The monoidal unit: the constant singleton, or `S⁰ = {*, 1}`.
    pub fn unit_object(&self) -> Carrier {
        if self.pointed {
            let s0 = FinSet::new(["*", "1"]).unwrap();
            Carrier::pointed(
                FinPresheaf::constant(self.shape.clone(), s0),
                vec![0; self.shape.object_count()],
            )
            .unwrap()
        } else {
            Carrier::plain(FinPresheaf::terminal(self.shape.clone()))
        }
    }

    /// Index of the non-basepoint element of the unit in every component.
    pub fn unit_element(&self) -> usize {
        usize::from(self.pointed)
    }

    pub fn tensor(&self, c: &Carrier, d: &Carrier) -> Result<Paired> {
        pair_carriers(c, &FinFunctor::identity(self.shape.clone()), d)
    }

    /// Whether a carrier lives in this base.
    pub fn holds(&self, c: &Carrier) -> bool {
        c.base() == &self.shape && c.is_pointed() == self.pointed
    }
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A commutative monoid object in a supported base: one finite commutative
/// monoid per object of the base shape, with restriction maps that are
/// monoid homomorphisms. In the pointed base the basepoint is the absorbing
/// element.
#[derive(Clone, PartialEq, Eq)]
pub struct CommMonoid {
    base: Base,
    carrier: Carrier,
    tables: Vec<MonoidTable>,
}

impl CommMonoid {
    /// A commutative monoid in finite sets.
    pub fn plain(table: MonoidTable) -> Self {
        let shape = Arc::new(FinCategory::terminal());
        Self::constant(Base::presheaf(shape), table).expect("terminal shape")
    }

    /// A commutative monoid in pointed finite sets; the table must designate
    /// its absorbing element, which becomes the basepoint.
    pub fn pointed(table: MonoidTable) -> Result<Self> {
        let zero = table.zero().ok_or_else(|| {
            Error::UnsupportedBase("pointed base needs an absorbing element".into())
        })?;
        let carrier = Carrier::pointed_set(table.elements().clone(), zero)?;
        Ok(Self {
            base: Base::pointed(),
            carrier,
            tables: vec![table],
        })
    }

    /// The same monoid at every object of a presheaf base.
    pub fn constant(base: Base, table: MonoidTable) -> Result<Self> {
        if base.is_pointed() {
            return Self::pointed(table);
        }
        let sheaf = FinPresheaf::constant(base.shape().clone(), table.elements().clone());
        Ok(Self {
            tables: vec![table; base.shape().object_count()],
            carrier: Carrier::plain(sheaf),
            base,
        })
    }

    /// A monoid-valued presheaf; `restrictions[f]` is the table of the
    /// restriction along arrow `f`, on the monoid at its target.
    pub fn presheaf(
        shape: Arc<FinCategory>,
        tables: Vec<MonoidTable>,
        restrictions: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if tables.len() != shape.object_count() {
            return Err(shape_err("one monoid per object is required"));
        }
        let sets = tables.iter().map(|t| t.elements().clone()).collect();
        let sheaf = FinPresheaf::from_tables(shape.clone(), sets, restrictions)?;
        Ok(Self {
            base: Base::presheaf(shape),
            carrier: Carrier::plain(sheaf),
            tables,
        })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn table(&self, y: usize) -> &MonoidTable {
        &self.tables[y]
    }

    pub fn tables(&self) -> &[MonoidTable] {
        &self.tables
    }

    pub fn size(&self, y: usize) -> usize {
        self.tables[y].size()
    }

    pub fn total_size(&self) -> usize {
        self.tables.iter().map(MonoidTable::size).sum()
    }

    #[inline]
    pub fn mul(&self, y: usize, a: usize, b: usize) -> usize {
        self.tables[y].mul(a, b)
    }

    pub fn unit(&self, y: usize) -> usize {
        self.tables[y].unit()
    }

    pub fn zero(&self, y: usize) -> Option<usize> {
        self.tables[y].zero()
    }

    pub fn label(&self, y: usize, a: usize) -> &str {
        self.tables[y].label(a)
    }

    pub fn restrict(&self, f: usize, a: usize) -> usize {
        self.carrier.restrict(f, a)
    }

    /// Returns the monoid if it passes [`check_comm_monoid`], a validation
    /// error naming the first broken law otherwise.
    pub fn validated(self, name: &str) -> Result<Self> {
        let report = check_comm_monoid(&self);
        match report.first_failure() {
            None => Ok(self),
            Some(bad) => Err(Error::Validation {
                name: name.to_string(),
                reason: format!(
                    "{}: {}",
                    bad.id,
                    bad.witness
                        .as_ref()
                        .map(|w| w.to_string())
                        .unwrap_or_default()
                ),
            }),
        }
    }
}

fn shape_err(msg: &str) -> Error {
    shape(msg)
}

impl fmt::Debug for CommMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tables.len() == 1 {
            write!(f, "CommMonoid<{:?}>{:?}", self.base, self.tables[0])
        } else {
            write!(f, "CommMonoid<{:?}>{:?}", self.base, self.tables)
        }
    }
}

/// Associativity, commutativity and unit at every object; absorption where a
/// zero is designated (mandatory in the pointed base); restriction maps are
/// unit- and multiplication-preserving.
pub fn check_comm_monoid(m: &CommMonoid) -> CheckReport {
    let mut report = CheckReport::new("comm_monoid.laws");
    let shape = m.base.shape();
    for (y, t) in m.tables.iter().enumerate() {
        let mut r = t.check_laws(true);
        if shape.object_count() > 1 {
            r.id = format!("comm_monoid.laws@{}", shape.objects()[y]);
        }
        report.push(r);
    }
    if m.base.is_pointed() {
        let mut r = CheckReport::new("comm_monoid.pointed");
        for (y, t) in m.tables.iter().enumerate() {
            r.record(t.zero().is_some() && t.zero() == m.carrier.point(y), || {
                Witness::new("basepoint is not a designated absorbing element")
            });
        }
        report.push(r);
    }
    if shape.arrow_count() > shape.object_count() {
        let mut r = CheckReport::new("comm_monoid.restrictions");
        for f in 0..shape.arrow_count() {
            let a = shape.arrow(f);
            let (src, tgt) = (&m.tables[a.src], &m.tables[a.tgt]);
            r.record(m.restrict(f, tgt.unit()) == src.unit(), || {
                Witness::new("restriction does not preserve the unit").field("arrow", &a.name)
            });
            for u in 0..tgt.size() {
                for v in 0..tgt.size() {
                    let ok =
                        m.restrict(f, tgt.mul(u, v)) == src.mul(m.restrict(f, u), m.restrict(f, v));
                    r.record(ok, || {
                        Witness::new("restriction does not preserve multiplication")
                            .field("arrow", &a.name)
                            .field("a", tgt.label(u))
                            .field("b", tgt.label(v))
                    });
                }
            }
        }
        report.push(r);
    }
    report
}

/// A morphism of commutative monoid objects, one component per object of the
/// base shape.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidMorphism {
    dom: Arc<CommMonoid>,
    cod: Arc<CommMonoid>,
    comps: Vec<Vec<usize>>,
}

impl MonoidMorphism {
    pub fn new(dom: Arc<CommMonoid>, cod: Arc<CommMonoid>, comps: Vec<Vec<usize>>) -> Result<Self> {
        if dom.base != cod.base {
            return Err(shape("monoid morphism between different bases"));
        }
        if comps.len() != dom.tables.len() {
            return Err(shape("monoid morphism needs one component per object"));
        }
        for (y, c) in comps.iter().enumerate() {
            if c.len() != dom.size(y) || c.iter().any(|&v| v >= cod.size(y)) {
                return Err(shape(format!("component {y} does not match its endpoints")));
            }
        }
        Ok(Self { dom, cod, comps })
    }

    /// Single-component constructor for the one-object bases.
    pub fn single(dom: Arc<CommMonoid>, cod: Arc<CommMonoid>, map: Vec<usize>) -> Result<Self> {
        Self::new(dom, cod, vec![map])
    }

    /// Rejects data failing [`MonoidMorphism::check_laws`].
    pub fn new_checked(
        dom: Arc<CommMonoid>,
        cod: Arc<CommMonoid>,
        comps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let m = Self::new(dom, cod, comps)?;
        let report = m.check_laws();
        match report.first_failure() {
            None => Ok(m),
            Some(bad) => Err(Error::Validation {
                name: "morphism".into(),
                reason: bad
                    .witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default(),
            }),
        }
    }

    /// Looks up a morphism of one-object bases by element labels.
    pub fn from_labels(
        dom: Arc<CommMonoid>,
        cod: Arc<CommMonoid>,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let d = dom.table(0).elements().clone();
        let c = cod.table(0).elements().clone();
        let mut map = vec![usize::MAX; d.size()];
        for (a, b) in pairs {
            let i = d.index_of(a).ok_or_else(|| Error::Resolution {
                name: a.to_string(),
                context: "morphism domain".into(),
            })?;
            let j = c.index_of(b).ok_or_else(|| Error::Resolution {
                name: b.to_string(),
                context: "morphism codomain".into(),
            })?;
            map[i] = j;
        }
        if let Some(i) = map.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Incomplete(format!(
                "no image given for `{}`",
                d.label(i)
            )));
        }
        Self::single(dom, cod, map)
    }

    pub fn identity(m: &Arc<CommMonoid>) -> Self {
        let comps = m.tables.iter().map(|t| (0..t.size()).collect()).collect();
        Self {
            dom: m.clone(),
            cod: m.clone(),
            comps,
        }
    }

    /// The unique morphism out of the trivial monoid (the zero monoid with
    /// its element sent to the unit does not exist in the pointed base).
    pub fn from_trivial(trivial: &Arc<CommMonoid>, m: &Arc<CommMonoid>) -> Result<Self> {
        Self::new(
            trivial.clone(),
            m.clone(),
            (0..m.tables.len())
                .map(|y| vec![m.unit(y); trivial.size(y)])
                .collect(),
        )
    }

    /// The unique morphism to the one-element monoid.
    pub fn to_trivial(m: &Arc<CommMonoid>, trivial: &Arc<CommMonoid>) -> Result<Self> {
        Self::new(
            m.clone(),
            trivial.clone(),
            m.tables.iter().map(|t| vec![0; t.size()]).collect(),
        )
    }

    pub fn dom(&self) -> &Arc<CommMonoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<CommMonoid> {
        &self.cod
    }

    pub fn comps(&self) -> &[Vec<usize>] {
        &self.comps
    }

    pub fn comp(&self, y: usize) -> &[usize] {
        &self.comps[y]
    }

    #[inline]
    pub fn apply(&self, y: usize, a: usize) -> usize {
        self.comps[y][a]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonoidMorphism) -> Result<MonoidMorphism> {
        if *self.cod != *next.dom {
            return Err(shape("monoid morphisms are not composable"));
        }
        let comps = self
            .comps
            .iter()
            .zip(&next.comps)
            .map(|(f, g)| f.iter().map(|&v| g[v]).collect())
            .collect();
        Ok(Self {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            comps,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().enumerate().all(|(y, c)| {
            let mut hit = vec![false; self.cod.size(y)];
            c.len() == self.cod.size(y) && c.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().enumerate().all(|(y, c)| {
            let mut hit = vec![false; self.cod.size(y)];
            for &t in c {
                hit[t] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    pub fn inverse(&self) -> Option<MonoidMorphism> {
        if !self.is_iso() {
            return None;
        }
        let comps = self
            .comps
            .iter()
            .map(|c| {
                let mut inv = vec![0; c.len()];
                for (i, &t) in c.iter().enumerate() {
                    inv[t] = i;
                }
                inv
            })
            .collect();
        Some(Self {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            comps,
        })
    }

    pub fn as_carrier_map(&self) -> CarrierMap {
        CarrierMap::from_parts(
            self.dom.carrier.clone(),
            self.cod.carrier.clone(),
            self.comps.clone(),
        )
    }

    pub fn to_finmap(&self, y: usize) -> FinMap {
        FinMap::new(
            self.dom.table(y).elements().clone(),
            self.cod.table(y).elements().clone(),
            self.comps[y].clone(),
        )
        .expect("components are in range")
    }

    /// Multiplication, unit and (where both ends have one) zero preservation
    /// at every object, plus naturality.
    pub fn check_laws(&self) -> CheckReport {
        let mut report = CheckReport::new("monoid_morphism.laws");
        let mut mult = CheckReport::new("monoid_morphism.multiplication");
        let mut unit = CheckReport::new("monoid_morphism.unit");
        let mut zero = CheckReport::new("monoid_morphism.zero");
        for (y, c) in self.comps.iter().enumerate() {
            let (d, e) = (self.dom.table(y), self.cod.table(y));
            for a in 0..d.size() {
                for b in 0..d.size() {
                    mult.record(c[d.mul(a, b)] == e.mul(c[a], c[b]), || {
                        Witness::new("f(a·b) differs from f(a)·f(b)")
                            .field("a", d.label(a))
                            .field("b", d.label(b))
                    });
                }
            }
            unit.record(c[d.unit()] == e.unit(), || {
                Witness::new("unit not preserved")
            });
            if let (Some(z), Some(w)) = (d.zero(), e.zero()) {
                zero.record(c[z] == w, || {
                    Witness::new("absorbing element not preserved")
                });
            }
        }
        report.push(mult);
        report.push(unit);
        if zero.instances > 0 {
            report.push(zero);
        }
        let shape = self.dom.base.shape();
        if shape.arrow_count() > shape.object_count() {
            let mut nat = self.as_carrier_map().check_naturality();
            nat.id = "monoid_morphism.naturality".into();
            report.push(nat);
        }
        report
    }

    pub fn describe(&self) -> String {
        if self.comps.len() == 1 {
            let parts: Vec<String> = self.comps[0]
                .iter()
                .enumerate()
                .map(|(a, &b)| format!("{}↦{}", self.dom.label(0, a), self.cod.label(0, b)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        } else {
            format!("{:?}", self.comps)
        }
    }
}

impl fmt::Debug for MonoidMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidMorphism{}", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointed_monoid_needs_a_zero() {
        assert!(matches!(
            CommMonoid::pointed(MonoidTable::cyclic(2)),
            Err(Error::UnsupportedBase(_))
        ));
        let b2 = CommMonoid::pointed(MonoidTable::boolean()).unwrap();
        assert!(check_comm_monoid(&b2).passed());
        assert_eq!(b2.carrier().point(0), Some(0));
    }

    #[test]
    fn presheaf_monoid_restrictions_are_checked() {
        let arrow = Arc::new(FinCategory::walking_arrow());
        let b2 = MonoidTable::boolean();
        let triv = MonoidTable::trivial();
        // Restriction along f: B2 at object 1 → trivial at object 0.
        let good = CommMonoid::presheaf(
            arrow.clone(),
            vec![triv.clone(), b2.clone()],
            vec![vec![0], vec![0, 1], vec![0, 0]],
        )
        .unwrap();
        assert!(check_comm_monoid(&good).passed());
        // Reverse direction: trivial at object 1 → B2 at object 0 sending e to 0.
        let bad = CommMonoid::presheaf(arrow, vec![b2, triv], vec![vec![0, 1], vec![0], vec![0]])
            .unwrap();
        let report = check_comm_monoid(&bad);
        assert!(!report.item("comm_monoid.restrictions").unwrap().passed());
    }

    #[test]
    fn morphism_from_labels() {
        let z4 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(4)));
        let z2 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(2)));
        let f = MonoidMorphism::from_labels(
            z4,
            z2,
            &[("e", "e"), ("g", "g"), ("g^2", "e"), ("g^3", "g")],
        )
        .unwrap();
        assert!(f.check_laws().passed());
        assert!(f.is_surjective());
    }
}
