//! Commutative monoids with zero (`CMon₀`) against commutative monoids in
//! pointed finite sets: the hom-monoid `C(1, c)`, the free object `C[M]`,
//! the bijection `α ↦ α̂` with inverse `β ↦ β̃`, field objects, and categories
//! glued along an adjunction.

mod fragment;
mod glued;

use std::sync::Arc;

use crate::carrier::{
    carrier_coequalizer, carrier_coproduct, descend, pair_maps, Carrier, CarrierMap,
};
use crate::commalg::{Base, CommMonoid, MonoidHom, MonoidMorphism, MonoidTable};
use crate::error::{precondition, shape, Error, Result};
use crate::fincore::{FinFunctor, FinSet};

pub use fragment::CmonGluing;
pub use glued::{check_scheme_condition3, glue, GluedCategory, SetFunctorData, Transpositions};

/// `C(1, c)` for a commutative monoid `c` in pointed sets: the pointed maps
/// `S⁰ → c` with product `μ ∘ (f ∧ g) ∘ ξ`, unit `ι` and zero the constant
/// map to the basepoint.
#[derive(Clone, Debug)]
pub struct HomMonoid {
    table: Arc<MonoidTable>,
    maps: Vec<CarrierMap>,
}

impl HomMonoid {
    pub fn table(&self) -> &Arc<MonoidTable> {
        &self.table
    }

    /// The pointed map behind element `i`.
    pub fn map(&self, i: usize) -> &CarrierMap {
        &self.maps[i]
    }

    pub fn index_of(&self, f: &CarrierMap) -> Option<usize> {
        self.maps.iter().position(|m| m.comps() == f.comps())
    }
}

pub fn hom_monoid(c: &CommMonoid) -> Result<HomMonoid> {
    let base = c.base();
    if !base.is_pointed() {
        return Err(Error::UnsupportedBase(format!(
            "C(1, −) with an absorbing element needs a zero object; {} has none",
            base.name()
        )));
    }
    let s0 = base.unit_object();
    let one = base.unit_element();
    let point = c.carrier().point(0).expect("pointed carrier");
    let maps = (0..c.size(0))
        .map(|v| {
            let mut table = vec![point; 2];
            table[one] = v;
            CarrierMap::new(s0.clone(), c.carrier().clone(), vec![table])
        })
        .collect::<Result<Vec<_>>>()?;
    let ss = base.tensor(&s0, &s0)?;
    let cc = base.tensor(c.carrier(), c.carrier())?;
    let along = FinFunctor::identity(s0.base().clone());
    let xi = ss.pairings[0].pair(one, one);
    let index = |f: &CarrierMap| maps.iter().position(|m| m.comps() == f.comps());
    let mut rows = vec![vec![0; maps.len()]; maps.len()];
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            let fg = pair_maps(&ss, &cc, &along, f, g);
            let v = match cc.pairings[0].unpair(fg.apply(0, xi)) {
                None => point,
                Some((u, w)) => c.mul(0, u, w),
            };
            let mut prod = vec![point; 2];
            prod[one] = v;
            let prod = CarrierMap::new(s0.clone(), c.carrier().clone(), vec![prod])?;
            rows[i][j] = index(&prod).expect("every pointed map is enumerated");
        }
    }
    let unit = c.unit(0);
    let table = MonoidTable::new(c.carrier().at(0).clone(), rows, unit, Some(point))?;
    Ok(HomMonoid {
        table: Arc::new(table),
        maps,
    })
}

/// `C[M] = coker(i₀: 1 → ∐_M 1)` with its monoid structure, together with
/// the wedge, its coprojections `i_m` and the cokernel map.
#[derive(Clone, Debug)]
pub struct FreeComm {
    source: Arc<MonoidTable>,
    monoid: Arc<CommMonoid>,
    wedge: Carrier,
    injections: Vec<CarrierMap>,
    coker: CarrierMap,
}

impl FreeComm {
    pub fn source(&self) -> &Arc<MonoidTable> {
        &self.source
    }

    pub fn monoid(&self) -> &Arc<CommMonoid> {
        &self.monoid
    }

    pub fn wedge(&self) -> &Carrier {
        &self.wedge
    }

    /// `i_m: 1 → ∐_M 1`.
    pub fn injection(&self, m: usize) -> &CarrierMap {
        &self.injections[m]
    }

    pub fn injections(&self) -> &[CarrierMap] {
        &self.injections
    }

    /// `coker(i₀): ∐_M 1 → C[M]`.
    pub fn coker(&self) -> &CarrierMap {
        &self.coker
    }

    /// The image of `m` in `C[M]`.
    pub fn generator(&self, m: usize) -> usize {
        let one = Base::pointed().unit_element();
        self.coker.apply(0, self.injections[m].apply(0, one))
    }
}

pub fn free_comm(m: &MonoidTable) -> Result<FreeComm> {
    let zero = m
        .zero()
        .ok_or_else(|| precondition("C[M] needs a monoid with an absorbing element"))?;
    let base = Base::pointed();
    let s0 = base.unit_object();
    let one = base.unit_element();
    let (wedge, injections) = carrier_coproduct(&vec![s0.clone(); m.size()])?;
    let wedge_point = wedge.point(0).expect("wedge is pointed");
    let zero_map = CarrierMap::new(s0.clone(), wedge.clone(), vec![vec![wedge_point; 2]])?;
    let raw = carrier_coequalizer(&injections[zero], &zero_map)?;

    // Label each class by the element of M it comes from.
    let mut labels = vec![String::new(); raw.cod().size(0)];
    let mut source_of = vec![None; wedge.size(0)];
    for (k, inj) in injections.iter().enumerate() {
        let w = inj.apply(0, one);
        source_of[w] = Some(k);
        labels[raw.apply(0, w)] = m.label(k).to_string();
    }
    let point = raw.cod().point(0).expect("quotient is pointed");
    let carrier = Carrier::pointed_set(FinSet::new(labels)?, point)?;
    let coker = CarrierMap::new(wedge.clone(), carrier.clone(), raw.comps().to_vec())?;

    // θ^M: the unique map with θ ∘ (coker ∧ coker) = coker ∘ μ^M.
    let ww = base.tensor(&wedge, &wedge)?;
    let cc = base.tensor(&carrier, &carrier)?;
    let along = FinFunctor::identity(wedge.base().clone());
    let cover = pair_maps(&ww, &cc, &along, &coker, &coker);
    let mu = (0..ww.pairings[0].size())
        .map(|p| match ww.pairings[0].unpair(p) {
            None => point,
            Some((u, v)) => match (source_of[u], source_of[v]) {
                (Some(a), Some(b)) => coker.apply(0, injections[m.mul(a, b)].apply(0, one)),
                _ => point,
            },
        })
        .collect();
    let value = CarrierMap::new(ww.carrier.clone(), carrier.clone(), vec![mu])?;
    let theta = descend(&[cover], &[value])?;
    let n = carrier.size(0);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| theta.apply(0, cc.pairings[0].pair(i, j)))
                .collect()
        })
        .collect();
    let unit = coker.apply(0, injections[m.unit()].apply(0, one));
    let table = MonoidTable::new(carrier.at(0).clone(), rows, unit, Some(point))?;
    Ok(FreeComm {
        source: Arc::new(m.clone()),
        monoid: Arc::new(CommMonoid::pointed(table)?),
        wedge,
        injections,
        coker,
    })
}

/// `α̂: M → C(1, a)`, `m ↦ α ∘ coker(i₀) ∘ i_m`.
pub fn adjunction_hat(free: &FreeComm, alpha: &MonoidMorphism) -> Result<MonoidHom> {
    if alpha.dom() != free.monoid() {
        return Err(shape("α must start at C[M]"));
    }
    let hm = hom_monoid(alpha.cod())?;
    let a = alpha.as_carrier_map();
    let map = free
        .injections
        .iter()
        .map(|inj| {
            let f = inj.then(&free.coker)?.then(&a)?;
            hm.index_of(&f)
                .ok_or_else(|| crate::error::invariant("α ∘ coker ∘ i_m is not a pointed map"))
        })
        .collect::<Result<Vec<_>>>()?;
    MonoidHom::new(free.source.clone(), hm.table.clone(), map)
}

/// `β̃: C[M] → a`, the unique map with `∐_m β(m) = β̃ ∘ coker(i₀)`.
pub fn adjunction_tilde(
    free: &FreeComm,
    beta: &MonoidHom,
    a: &Arc<CommMonoid>,
) -> Result<MonoidMorphism> {
    let hm = hom_monoid(a)?;
    if **beta.dom() != *free.source || **beta.cod() != *hm.table {
        return Err(shape("β must go from M to C(1, a)"));
    }
    let zero = free.source.zero().expect("CMon₀ object");
    if beta.apply(zero) != hm.table.zero().expect("hom-monoid has a zero") {
        return Err(precondition("β(0) is not the zero of C(1, a)"));
    }
    if beta.apply(free.source.unit()) != hm.table.unit() {
        return Err(precondition("β(e) is not the unit of C(1, a)"));
    }
    let values: Vec<CarrierMap> = (0..free.source.size())
        .map(|m| hm.maps[beta.apply(m)].clone())
        .collect();
    let copairing = descend(&free.injections, &values)?;
    let tilde = descend(std::slice::from_ref(&free.coker), &[copairing])?;
    MonoidMorphism::new(free.monoid.clone(), a.clone(), tilde.comps().to_vec())
}

/// Whether the non-zero elements of `C(1, c)` are exactly its units. The
/// zero monoid is not a field object: its only unit is `0`.
pub fn is_field_object(c: &CommMonoid) -> Result<bool> {
    let hm = hom_monoid(c)?;
    let t = &hm.table;
    let zero = t.zero().expect("hom-monoid has a zero");
    let is_unit = |x: usize| (0..t.size()).any(|y| t.mul(x, y) == t.unit());
    Ok((0..t.size()).all(|x| (x != zero) == is_unit(x)))
}
