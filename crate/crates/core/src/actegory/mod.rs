//! Actions of a monoidal base on a category of carriers.
//!
//! Every backend here is a presheaf action along a functor `Φ: X → Y`, where
//! the base is presheaves on `Y`: `(c ⊠ m)(x) = c(Φx) × m(x)`, or the smash
//! product in the pointed case. The named constructors pick `Φ`.

mod coherence;
mod convert;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::carrier::{pair_carriers, pair_maps, precompose, Carrier, CarrierMap, Paired};
use crate::commalg::{Base, CommMonoid, MonoidHom, MonoidMorphism, MonoidTable};
use crate::error::{precondition, shape, Result};
use crate::fincore::{FinCategory, FinFunctor};
use crate::report::{CheckReport, ProbeBudget, Witness};
use crate::search::enumerate_carriers;

pub use coherence::{check_actegory_coherence, check_colimit_preservation, TransposedAssociator};
pub use convert::{Digraph, RightMSet};

/// Which construction produced a backend; used for naming in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Backend {
    SelfAction,
    Diagonal { copies: usize },
    Presheaf,
    Representation,
    Digraph { source: String, target: String },
    Restricted { inner: Box<Backend> },
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::SelfAction => f.write_str("self-action"),
            Backend::Diagonal { copies } => write!(f, "diagonal action on {copies} copies"),
            Backend::Presheaf => f.write_str("presheaf action"),
            Backend::Representation => f.write_str("representation action"),
            Backend::Digraph { source, target } => {
                write!(f, "digraph action (s·{source}, t·{target})")
            }
            Backend::Restricted { inner } => write!(f, "restriction of the {inner}"),
        }
    }
}

/// The operations the coherence and colimit checks need. Implemented by
/// [`Actegory`]; test doubles can override individual structure maps.
pub trait ActionStructure: Sync {
    fn base(&self) -> &Base;
    /// The shape `X` whose presheaves are the acted-on objects.
    fn shape(&self) -> &Arc<FinCategory>;
    fn act(&self, c: &Carrier, m: &Carrier) -> Result<Paired>;
    fn act_map(&self, dom: &Paired, cod: &Paired, f: &CarrierMap, g: &CarrierMap) -> CarrierMap;
    /// `λ_{a,b,m}: a ⊠ (b ⊠ m) → (a ⊗ b) ⊠ m`.
    fn associator(&self, a: &Carrier, b: &Carrier, m: &Carrier) -> Result<CarrierMap>;
    /// `l_m: 1 ⊠ m → m`.
    fn unitor(&self, m: &Carrier) -> Result<CarrierMap>;
}

#[derive(Clone)]
pub struct Actegory {
    backend: Backend,
    base: Base,
    along: FinFunctor,
}

impl Actegory {
    fn along_functor(backend: Backend, base: Base, along: FinFunctor) -> Result<Self> {
        if along.cod() != base.shape() {
            return Err(shape("action functor does not land in the base shape"));
        }
        if base.is_pointed() && along.dom().arrow_count() != along.dom().object_count() {
            return Err(crate::Error::UnsupportedBase(
                "pointed actions are supported on discrete shapes only".into(),
            ));
        }
        Ok(Self {
            backend,
            base,
            along,
        })
    }

    /// The base acting on itself by its own tensor product.
    pub fn self_action(base: Base) -> Self {
        let along = FinFunctor::identity(base.shape().clone());
        Self {
            backend: Backend::SelfAction,
            base,
            along,
        }
    }

    /// `J`-indexed families of base objects, acted on componentwise.
    pub fn diagonal(copies: usize, base: Base) -> Result<Self> {
        if copies == 0 {
            return Err(precondition(
                "the index set of a diagonal action must be nonempty",
            ));
        }
        let y = base.shape().clone();
        let x = Arc::new(y.copies(copies));
        let (no, na) = (y.object_count(), y.arrow_count());
        let along = FinFunctor::new(
            x.clone(),
            y,
            (0..x.object_count()).map(|o| o % no).collect(),
            (0..x.arrow_count()).map(|f| f % na).collect(),
        )?;
        Self::along_functor(Backend::Diagonal { copies }, base, along)
    }

    /// Presheaves on `X` acted on by presheaves on `Y` through `F ↦ F∘Φ`.
    pub fn presheaf(along: FinFunctor) -> Result<Self> {
        if !along.check_laws().passed() {
            return Err(precondition("the action functor is not a functor"));
        }
        if !along.is_essentially_surjective() {
            return Err(precondition(
                "the action functor is not essentially surjective",
            ));
        }
        let base = Base::presheaf(along.cod().clone());
        Self::along_functor(Backend::Presheaf, base, along)
    }

    /// Finite right `M`-sets acted on by finite right `N`-sets through a
    /// homomorphism `σ: M → N`: `(s, t)·m = (s·σ(m), t·m)`.
    pub fn representation(sigma: &MonoidHom) -> Result<Self> {
        if !sigma.check_laws().passed() {
            return Err(precondition("σ is not a monoid homomorphism"));
        }
        let bm = Arc::new(delooping(sigma.dom()));
        let bn = Arc::new(delooping(sigma.cod()));
        let along = FinFunctor::new(bm, bn.clone(), vec![0], sigma.map().to_vec())?;
        Self::along_functor(Backend::Representation, Base::presheaf(bn), along)
    }

    /// Directed graphs acted on by right `M`-sets: `U ⊠ G` has vertices
    /// `U × V`, edges `U × E`, source `(u, a) ↦ (u·m, s(a))` and target
    /// `(u, a) ↦ (u·n, t(a))`.
    pub fn digraph(monoid: &MonoidTable, m: usize, n: usize) -> Result<Self> {
        if m >= monoid.size() || n >= monoid.size() {
            return Err(shape("digraph action elements are outside the monoid"));
        }
        let pp = Arc::new(FinCategory::parallel_pair());
        let bm = Arc::new(delooping(monoid));
        let e = monoid.unit();
        let along = FinFunctor::new(pp, bm.clone(), vec![0, 0], vec![e, e, m, n])?;
        let backend = Backend::Digraph {
            source: monoid.label(m).to_string(),
            target: monoid.label(n).to_string(),
        };
        Self::along_functor(backend, Base::presheaf(bm), along)
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn along(&self) -> &FinFunctor {
        &self.along
    }

    pub fn is_pointed(&self) -> bool {
        self.base.is_pointed()
    }

    pub fn name(&self) -> String {
        format!("{} over {}", self.backend, self.base.name())
    }

    /// Whether `m` is an object of the acted-on category.
    pub fn holds(&self, m: &Carrier) -> bool {
        m.base() == self.along.dom() && m.is_pointed() == self.is_pointed()
    }

    /// Objects of the acted-on category with components of size ≤ `max`.
    pub fn objects_up_to(&self, max: usize) -> Vec<Carrier> {
        enumerate_carriers(self.along.dom(), max, self.is_pointed())
    }

    /// Base objects with components of size ≤ `max`.
    pub fn base_objects_up_to(&self, max: usize) -> Vec<Carrier> {
        enumerate_carriers(self.base.shape(), max, self.is_pointed())
    }
}

impl fmt::Debug for Actegory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl PartialEq for Actegory {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.along == other.along
    }
}

impl Eq for Actegory {}

impl ActionStructure for Actegory {
    fn base(&self) -> &Base {
        &self.base
    }

    fn shape(&self) -> &Arc<FinCategory> {
        self.along.dom()
    }

    fn act(&self, c: &Carrier, m: &Carrier) -> Result<Paired> {
        if !self.base.holds(c) {
            return Err(shape("left argument is not a base object"));
        }
        if !self.holds(m) {
            return Err(shape(
                "right argument is not an object of the acted-on category",
            ));
        }
        pair_carriers(c, &self.along, m)
    }

    fn act_map(&self, dom: &Paired, cod: &Paired, f: &CarrierMap, g: &CarrierMap) -> CarrierMap {
        pair_maps(dom, cod, &self.along, f, g)
    }

    fn associator(&self, a: &Carrier, b: &Carrier, m: &Carrier) -> Result<CarrierMap> {
        let bm = self.act(b, m)?;
        let abm = self.act(a, &bm.carrier)?;
        let ab = self.base.tensor(a, b)?;
        let ab_m = self.act(&ab.carrier, m)?;
        let comps = (0..abm.pairings.len())
            .map(|x| {
                let y = self.along.object(x);
                abm.pairings[x]
                    .pairs()
                    .map(|(_, p)| {
                        let Some((u, q)) = p else { return 0 };
                        match bm.pairings[x].unpair(q) {
                            None => 0,
                            Some((t, v)) => ab_m.pairings[x].pair(ab.pairings[y].pair(u, t), v),
                        }
                    })
                    .collect()
            })
            .collect();
        CarrierMap::new(abm.carrier, ab_m.carrier, comps)
    }

    fn unitor(&self, m: &Carrier) -> Result<CarrierMap> {
        let um = self.act(&self.base.unit_object(), m)?;
        let comps = (0..um.pairings.len())
            .map(|x| {
                um.pairings[x]
                    .pairs()
                    .map(|(_, p)| match p {
                        None => m.point(x).expect("smash basepoint only when pointed"),
                        Some((_, v)) => v,
                    })
                    .collect()
            })
            .collect();
        CarrierMap::new(um.carrier, m.clone(), comps)
    }
}

/// The one-object category whose arrows are the monoid's elements.
pub fn delooping(t: &MonoidTable) -> FinCategory {
    FinCategory::from_monoid(t.elements().labels(), |g, f| t.mul(g, f), t.unit())
        .expect("monoid tables give categories")
}

/// Structure maps of the base acting on itself.
pub(crate) fn base_associator(
    base: &Base,
    a: &Carrier,
    b: &Carrier,
    c: &Carrier,
) -> Result<CarrierMap> {
    Actegory::self_action(base.clone()).associator(a, b, c)
}

/// `1 ⊗ a → a`.
pub(crate) fn base_left_unitor(base: &Base, a: &Carrier) -> Result<CarrierMap> {
    Actegory::self_action(base.clone()).unitor(a)
}

/// `a ⊗ 1 → a`.
pub(crate) fn base_right_unitor(base: &Base, a: &Carrier) -> Result<CarrierMap> {
    let au = base.tensor(a, &base.unit_object())?;
    let comps = (0..au.pairings.len())
        .map(|y| {
            au.pairings[y]
                .pairs()
                .map(|(_, p)| match p {
                    None => a.point(y).expect("pointed"),
                    Some((u, _)) => u,
                })
                .collect()
        })
        .collect();
    CarrierMap::new(au.carrier, a.clone(), comps)
}

/// A strict monoidal functor between presheaf bases given by precomposition
/// with `Ψ: Y_cod → Y_dom`; its monoidality witnesses are identities on the
/// pair encodings, which [`MonoidalFunctor::check`] verifies on samples.
#[derive(Clone, Debug)]
pub struct MonoidalFunctor {
    dom: Base,
    cod: Base,
    along: FinFunctor,
}

impl MonoidalFunctor {
    pub fn identity(base: Base) -> Self {
        let along = FinFunctor::identity(base.shape().clone());
        Self {
            dom: base.clone(),
            cod: base,
            along,
        }
    }

    /// Precomposition along `along: Y_cod → Y_dom`, from presheaves on
    /// `along.cod()` to presheaves on `along.dom()`.
    pub fn precompose(along: FinFunctor) -> Result<Self> {
        if !along.check_laws().passed() {
            return Err(precondition("precomposition needs a functor"));
        }
        Ok(Self {
            dom: Base::presheaf(along.cod().clone()),
            cod: Base::presheaf(along.dom().clone()),
            along,
        })
    }

    pub fn dom(&self) -> &Base {
        &self.dom
    }

    pub fn cod(&self) -> &Base {
        &self.cod
    }

    pub fn along(&self) -> &FinFunctor {
        &self.along
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.along == FinFunctor::identity(self.dom.shape().clone())
    }

    pub fn apply(&self, c: &Carrier) -> Result<Carrier> {
        precompose(c, &self.along)
    }

    pub fn apply_map(&self, f: &CarrierMap) -> Result<CarrierMap> {
        crate::carrier::precompose_map(f, &self.along)
    }

    /// `B(a)` for a commutative monoid object `a` in the domain base.
    pub fn apply_monoid(&self, a: &CommMonoid) -> Result<CommMonoid> {
        if a.base() != &self.dom {
            return Err(shape("the monoid does not live in the functor's domain"));
        }
        if self.is_identity() {
            return Ok(a.clone());
        }
        let w = self.along.dom().clone();
        let tables = (0..w.object_count())
            .map(|o| a.table(self.along.object(o)).clone())
            .collect();
        let restrictions = (0..w.arrow_count())
            .map(|f| {
                a.carrier()
                    .sheaf()
                    .map(self.along.arrow(f))
                    .table()
                    .to_vec()
            })
            .collect();
        CommMonoid::presheaf(w, tables, restrictions)
    }

    /// `B(α)`.
    pub fn apply_morphism(&self, alpha: &MonoidMorphism) -> Result<MonoidMorphism> {
        let dom = Arc::new(self.apply_monoid(alpha.dom())?);
        let cod = Arc::new(self.apply_monoid(alpha.cod())?);
        let comps = (0..self.along.dom().object_count())
            .map(|o| alpha.comp(self.along.object(o)).to_vec())
            .collect();
        MonoidMorphism::new(dom, cod, comps)
    }

    /// `B(c) ⊗ B(d) → B(c ⊗ d)`.
    pub fn witness(&self, c: &Carrier, d: &Carrier) -> Result<CarrierMap> {
        let lhs = self.cod.tensor(&self.apply(c)?, &self.apply(d)?)?;
        let rhs = self.apply(&self.dom.tensor(c, d)?.carrier)?;
        let comps = lhs
            .pairings
            .iter()
            .map(|p| (0..p.size()).collect())
            .collect();
        CarrierMap::new(lhs.carrier, rhs, comps)
    }

    /// Witness maps are natural bijections on sampled pairs and the unit is
    /// preserved.
    pub fn check(&self, budget: &ProbeBudget) -> CheckReport {
        let mut report = CheckReport::new("monoidal_functor.witnesses");
        let objects = enumerate_carriers(
            self.dom.shape(),
            budget.max_module_size,
            self.dom.is_pointed(),
        );
        let mut seen = 0;
        'outer: for c in &objects {
            for d in &objects {
                if seen >= budget.max_test_morphisms {
                    break 'outer;
                }
                seen += 1;
                let ok = self
                    .witness(c, d)
                    .is_ok_and(|w| w.is_bijective() && w.is_natural());
                report.record(ok, || {
                    Witness::new("monoidality witness is not a natural bijection")
                        .field("c", format!("{:?}", c.sizes()))
                        .field("d", format!("{:?}", d.sizes()))
                });
            }
        }
        let unit_ok = self
            .apply(&self.dom.unit_object())
            .is_ok_and(|u| u == self.cod.unit_object());
        report.record(unit_ok, || Witness::new("the unit is not preserved"));
        report.within_budget(budget);
        report
    }
}

/// `B_*(N)`: the action of the domain base through `B`, i.e.
/// `c ⊠ n = B(c) ⊠_N n`.
pub fn restrict_action(
    b: &MonoidalFunctor,
    n: &Actegory,
    budget: &ProbeBudget,
) -> Result<Actegory> {
    if b.cod() != n.base() {
        return Err(shape(
            "the monoidal functor does not land in the action's base",
        ));
    }
    if let Some(bad) = b.check(budget).first_failure() {
        return Err(precondition(format!(
            "monoidal functor failed a sampled check: {}",
            bad.witness
                .as_ref()
                .map(|w| w.summary.clone())
                .unwrap_or_default()
        )));
    }
    if b.is_identity() {
        return Ok(n.clone());
    }
    if n.is_pointed() {
        return Err(crate::Error::UnsupportedBase(
            "only the identity restricts a pointed action".into(),
        ));
    }
    let along = n.along().then(b.along())?;
    let backend = Backend::Restricted {
        inner: Box::new(n.backend().clone()),
    };
    Actegory::along_functor(backend, b.dom().clone(), along)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincore::FinSet;

    fn set(n: usize) -> Carrier {
        Carrier::set(FinSet::range(n))
    }

    #[test]
    fn cartesian_self_action_multiplies_sizes() {
        let a = Actegory::self_action(Base::cartesian());
        let p = a
            .act(
                &set(2),
                &Carrier::set(FinSet::new(["a", "b", "c"]).unwrap()),
            )
            .unwrap();
        assert_eq!(p.carrier.size(0), 6);
        assert_eq!(p.carrier.label(0, 4), "(1,b)");
    }

    #[test]
    fn unitor_is_a_bijection() {
        let a = Actegory::self_action(Base::cartesian());
        let l = a.unitor(&set(3)).unwrap();
        assert!(l.is_bijective());
        assert_eq!(l.comp(0), &[0, 1, 2]);
    }

    #[test]
    fn smash_with_s0_is_the_identity() {
        let a = Actegory::self_action(Base::pointed());
        let x = Carrier::pointed_set(FinSet::new(["*", "p", "q"]).unwrap(), 0).unwrap();
        let l = a.unitor(&x).unwrap();
        assert!(l.is_bijective());
        assert_eq!(l.dom().size(0), 3);
    }

    #[test]
    fn diagonal_acts_componentwise() {
        let a = Actegory::diagonal(3, Base::cartesian()).unwrap();
        let m = a
            .objects_up_to(2)
            .into_iter()
            .find(|m| m.sizes() == vec![0, 1, 2])
            .unwrap();
        let p = a.act(&set(2), &m).unwrap();
        assert_eq!(p.carrier.sizes(), vec![0, 2, 4]);
        assert!(Actegory::diagonal(0, Base::cartesian()).is_err());
    }

    #[test]
    fn presheaf_action_requires_essential_surjectivity() {
        let t = Arc::new(FinCategory::terminal());
        let two = Arc::new(FinCategory::discrete(2));
        let phi = FinFunctor::new(t, two, vec![0], vec![0]).unwrap();
        assert!(matches!(
            Actegory::presheaf(phi),
            Err(crate::Error::Precondition(_))
        ));
    }

    #[test]
    fn digraph_over_trivial_monoid_doubles_the_graph() {
        let a = Actegory::digraph(&MonoidTable::trivial(), 0, 0).unwrap();
        let g = Digraph::new(["u", "v"], [("x", "u", "v")]).unwrap();
        let u = RightMSet::trivial_action(&MonoidTable::trivial(), FinSet::range(2));
        let base_obj = u.to_carrier();
        let out =
            Digraph::from_carrier(&a.act(&base_obj, &g.to_carrier()).unwrap().carrier).unwrap();
        assert_eq!(out.vertex_count(), 4);
        assert_eq!(out.edge_count(), 2);
        // Two copies: each edge joins vertices in its own copy.
        for e in 0..2 {
            let (s, t) = (out.source(e), out.target(e));
            assert_eq!(
                out.vertex_label(s).split(',').next(),
                out.vertex_label(t).split(',').next()
            );
        }
    }

    #[test]
    fn representation_action_twists() {
        let z2 = MonoidTable::cyclic(2);
        let sigma = MonoidHom::identity(Arc::new(z2.clone()));
        let a = Actegory::representation(&sigma).unwrap();
        let s = RightMSet::trivial_action(&z2, FinSet::range(2)).to_carrier();
        let t = RightMSet::regular(&z2).to_carrier();
        let p = a.act(&s, &t).unwrap().carrier;
        assert_eq!(p.size(0), 4);
        let g = 1;
        for idx in 0..4 {
            let (si, ti) = (idx / 2, idx % 2);
            // (s, t)·g = (s·σ(g), t·g) = (s, t·g)
            assert_eq!(p.restrict(g, idx), si * 2 + (ti + 1) % 2);
        }
    }

    #[test]
    fn restricting_along_the_identity_changes_nothing() {
        let n = Actegory::self_action(Base::cartesian());
        let b = MonoidalFunctor::identity(Base::cartesian());
        assert_eq!(restrict_action(&b, &n, &ProbeBudget::default()).unwrap(), n);
    }

    #[test]
    fn restriction_of_self_action_is_the_presheaf_action() {
        let wa = Arc::new(FinCategory::walking_arrow());
        let t = Arc::new(FinCategory::terminal());
        let phi = FinFunctor::to_terminal(wa.clone());
        let b = MonoidalFunctor::precompose(phi.clone()).unwrap();
        let n = Actegory::self_action(Base::presheaf(wa));
        let r = restrict_action(&b, &n, &ProbeBudget::default()).unwrap();
        let p = Actegory::presheaf(phi).unwrap();
        for c in enumerate_carriers(&t, 2, false) {
            for m in p.objects_up_to(2) {
                assert_eq!(
                    r.act(&c, &m).unwrap().carrier,
                    p.act(&c, &m).unwrap().carrier
                );
            }
        }
    }
}
