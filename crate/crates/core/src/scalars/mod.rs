//! Modules over commutative monoid objects in an actegory, restriction and
//! extension of scalars, their adjunction and the canonical comparison maps.

mod adjunction;
mod compare;
mod enumerate;

use std::fmt;
use std::sync::Arc;

use crate::actegory::{Actegory, ActionStructure};
use crate::carrier::{carrier_quotient, Carrier, CarrierMap, Paired};
use crate::commalg::{CommMonoid, MonoidMorphism};
use crate::error::{invariant, precondition, shape, Error, Result};
use crate::fincore::UnionFind;
use crate::report::{CheckReport, Witness};

pub use adjunction::{
    adjunction_sweep, check_adjunction, check_extension_triangle, check_restriction_triangle,
    check_triangle_identities, cotranspose, counit, transpose, unit,
};
pub use compare::{
    base_change_comparison, check_comparison, composition_comparison, free_tensor_comparison,
    relative_tensor_comparison, unit_comparison,
};
pub use enumerate::{module_morphisms, modules_up_to};

/// `(m, ρ)` with `ρ: a ⊠ m → m`, stored per object of the shape as a table
/// over the encoded pairs of `a ⊠ m`.
#[derive(Clone)]
pub struct Module {
    actegory: Arc<Actegory>,
    over: Arc<CommMonoid>,
    carrier: Carrier,
    act: Paired,
    action: Vec<Vec<usize>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.over == other.over && self.carrier == other.carrier && self.action == other.action
    }
}

impl Eq for Module {}

impl Module {
    pub fn new(
        actegory: Arc<Actegory>,
        over: Arc<CommMonoid>,
        carrier: Carrier,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if actegory.base() != over.base() {
            return Err(shape("the monoid does not live in the actegory's base"));
        }
        let act = actegory.act(over.carrier(), &carrier)?;
        let nx = act.pairings.len();
        if action.len() != nx {
            return Err(shape("one action table per object is required"));
        }
        for x in 0..nx {
            if action[x].len() != act.pairings[x].size()
                || action[x].iter().any(|&t| t >= carrier.size(x))
            {
                return Err(shape(format!(
                    "action table at {} has the wrong shape",
                    carrier.object_name(x)
                )));
            }
            if let Some(p) = carrier.point(x) {
                if action[x][0] != p {
                    return Err(Error::Invalid(
                        "the action does not fix the basepoint".into(),
                    ));
                }
            }
        }
        let rho = CarrierMap::new(act.carrier.clone(), carrier.clone(), action.clone())?;
        if !rho.is_natural() {
            return Err(Error::Invalid(
                "the action is not a morphism of the acted-on category".into(),
            ));
        }
        Ok(Self {
            actegory,
            over,
            carrier,
            act,
            action,
        })
    }

    /// Builds the action from `f(x, s, v) = s·v`; pairs touching a
    /// basepoint go to the basepoint.
    pub fn from_fn(
        actegory: Arc<Actegory>,
        over: Arc<CommMonoid>,
        carrier: Carrier,
        f: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let act = actegory.act(over.carrier(), &carrier)?;
        let action = act
            .pairings
            .iter()
            .enumerate()
            .map(|(x, p)| {
                p.pairs()
                    .map(|(_, st)| match st {
                        None => carrier.point(x).expect("pointed"),
                        Some((s, v)) => f(x, s, v),
                    })
                    .collect()
            })
            .collect();
        Self::new(actegory, over, carrier, action)
    }

    /// `a ⊠ m` with `a` acting on the left factor.
    pub fn free(actegory: Arc<Actegory>, over: Arc<CommMonoid>, m: &Carrier) -> Result<Self> {
        let am = actegory.act(over.carrier(), m)?;
        let along = actegory.along().clone();
        let a = over.clone();
        let pairings = am.pairings.clone();
        Self::from_fn(actegory, over, am.carrier, move |x, s, p| {
            match pairings[x].unpair(p) {
                None => 0,
                Some((t, v)) => pairings[x].pair(a.mul(along.object(x), s, t), v),
            }
        })
    }

    /// The monoid acting on itself, in its self-action.
    pub fn regular(over: Arc<CommMonoid>) -> Result<Self> {
        let actegory = Arc::new(Actegory::self_action(over.base().clone()));
        let carrier = over.carrier().clone();
        let a = over.clone();
        Self::from_fn(actegory, over, carrier, move |y, s, t| a.mul(y, s, t))
    }

    /// Every element acts as the identity, except that a designated zero
    /// sends everything to the basepoint.
    pub fn trivial(actegory: Arc<Actegory>, over: Arc<CommMonoid>, m: Carrier) -> Result<Self> {
        let along = actegory.along().clone();
        let a = over.clone();
        let pts = m.points().map(<[usize]>::to_vec);
        Self::from_fn(actegory, over, m, move |x, s, v| {
            match (&pts, a.zero(along.object(x))) {
                (Some(p), Some(z)) if s == z => p[x],
                _ => v,
            }
        })
    }

    pub fn actegory(&self) -> &Arc<Actegory> {
        &self.actegory
    }

    pub fn over(&self) -> &Arc<CommMonoid> {
        &self.over
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// The carrier of `a ⊠ m` with its pair encodings.
    pub fn paired(&self) -> &Paired {
        &self.act
    }

    /// `ρ` as a map `a ⊠ m → m`.
    pub fn action_map(&self) -> CarrierMap {
        CarrierMap::from_parts(
            self.act.carrier.clone(),
            self.carrier.clone(),
            self.action.clone(),
        )
    }

    pub fn action_table(&self, x: usize) -> &[usize] {
        &self.action[x]
    }

    /// `s·v` at object `x`, with `s` in the monoid at `Φx`.
    #[inline]
    pub fn act(&self, x: usize, s: usize, v: usize) -> usize {
        self.action[x][self.act.pairings[x].pair(s, v)]
    }

    pub fn size(&self, x: usize) -> usize {
        self.carrier.size(x)
    }

    pub fn total_size(&self) -> usize {
        self.carrier.total_size()
    }

    /// Object of the base shape the monoid is read at for component `x`.
    pub fn scalar_object(&self, x: usize) -> usize {
        self.actegory.along().object(x)
    }

    pub fn object_count(&self) -> usize {
        self.action.len()
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Module{{carrier: {:?}, action: {:?}}}",
            self.carrier, self.action
        )
    }
}

/// Associativity `(st)·v = s·(t·v)` and unit `e·v = v`, checked on every
/// element.
pub fn check_module_laws(m: &Module) -> CheckReport {
    let mut report = CheckReport::new("module.laws");
    let mut assoc = CheckReport::new("module.associativity");
    let mut unit = CheckReport::new("module.unit");
    let a = m.over();
    for x in 0..m.object_count() {
        let y = m.scalar_object(x);
        let skip = m.carrier.point(x);
        let zero = a.zero(y);
        for v in 0..m.size(x) {
            if Some(v) == skip {
                continue;
            }
            let e = a.unit(y);
            unit.record(m.act(x, e, v) == v, || {
                Witness::new("e·v ≠ v").field("v", m.carrier.describe(x, v))
            });
            for s in 0..a.size(y) {
                for t in 0..a.size(y) {
                    if skip.is_some() && (Some(s) == zero || Some(t) == zero) {
                        continue;
                    }
                    let lhs = m.act(x, a.mul(y, s, t), v);
                    let rhs = m.act(x, s, m.act(x, t, v));
                    assoc.record(lhs == rhs, || {
                        Witness::new("(st)·v ≠ s·(t·v)")
                            .field("s", a.label(y, s))
                            .field("t", a.label(y, t))
                            .field("v", m.carrier.describe(x, v))
                            .field("(st)·v", m.carrier.describe(x, lhs))
                            .field("s·(t·v)", m.carrier.describe(x, rhs))
                    });
                }
            }
        }
    }
    report.push(assoc);
    report.push(unit);
    report
}

/// A map of carriers commuting with the two actions.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    dom: Arc<Module>,
    cod: Arc<Module>,
    map: CarrierMap,
}

impl ModuleMorphism {
    /// Shape-checked; equivariance is reported by
    /// [`ModuleMorphism::check_equivariance`].
    pub fn new(dom: Arc<Module>, cod: Arc<Module>, comps: Vec<Vec<usize>>) -> Result<Self> {
        if dom.over() != cod.over() {
            return Err(shape(
                "module morphism between modules over different monoids",
            ));
        }
        let map = CarrierMap::new(dom.carrier().clone(), cod.carrier().clone(), comps)?;
        if !map.is_natural() {
            return Err(Error::Invalid("the underlying map is not natural".into()));
        }
        Ok(Self { dom, cod, map })
    }

    /// Rejects maps that do not commute with the actions.
    pub fn new_checked(dom: Arc<Module>, cod: Arc<Module>, comps: Vec<Vec<usize>>) -> Result<Self> {
        let f = Self::new(dom, cod, comps)?;
        match f.check_equivariance().witness {
            None => Ok(f),
            Some(w) => Err(precondition(format!("map is not equivariant: {w}"))),
        }
    }

    pub(crate) fn from_parts(dom: Arc<Module>, cod: Arc<Module>, map: CarrierMap) -> Self {
        Self { dom, cod, map }
    }

    pub fn identity(m: &Arc<Module>) -> Self {
        Self {
            dom: m.clone(),
            cod: m.clone(),
            map: CarrierMap::identity(m.carrier()),
        }
    }

    pub fn dom(&self) -> &Arc<Module> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Module> {
        &self.cod
    }

    pub fn map(&self) -> &CarrierMap {
        &self.map
    }

    pub fn apply(&self, x: usize, v: usize) -> usize {
        self.map.apply(x, v)
    }

    pub fn then(&self, next: &ModuleMorphism) -> Result<ModuleMorphism> {
        if *self.cod != *next.dom {
            return Err(shape("module morphisms are not composable"));
        }
        Ok(Self {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.then(&next.map)?,
        })
    }

    /// `ψ(s·v) = s·ψ(v)` for every scalar and element.
    pub fn check_equivariance(&self) -> CheckReport {
        let mut report = CheckReport::new("module_morphism.equivariance");
        let a = self.dom.over();
        for x in 0..self.dom.object_count() {
            let y = self.dom.scalar_object(x);
            for s in 0..a.size(y) {
                for v in 0..self.dom.size(x) {
                    let lhs = self.map.apply(x, self.dom.act(x, s, v));
                    let rhs = self.cod.act(x, s, self.map.apply(x, v));
                    report.record(lhs == rhs, || {
                        Witness::new("ψ(s·v) ≠ s·ψ(v)")
                            .field("s", a.label(y, s))
                            .field("v", self.dom.carrier().describe(x, v))
                    });
                }
            }
        }
        report
    }

    pub fn is_equivariant(&self) -> bool {
        self.check_equivariance().passed()
    }

    /// Whether the underlying map is a bijection. The inverse of an
    /// equivariant bijection is equivariant; this is asserted.
    pub fn is_iso(&self) -> bool {
        is_module_iso(self)
    }
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMorphism{:?}", self.map.comps())
    }
}

pub fn is_module_iso(f: &ModuleMorphism) -> bool {
    let Some(inv) = f.map.inverse() else {
        return false;
    };
    debug_assert!(
        !f.is_equivariant()
            || ModuleMorphism::from_parts(f.cod.clone(), f.dom.clone(), inv).is_equivariant(),
        "inverse of an equivariant bijection must be equivariant"
    );
    true
}

/// `α_*(n)`: the same carrier with `s·v = α(s)·v`.
pub fn restrict_scalars(alpha: &MonoidMorphism, n: &Module) -> Result<Module> {
    if **alpha.cod() != **n.over() {
        return Err(shape(
            "restriction needs a module over the morphism's codomain",
        ));
    }
    let along = n.actegory.along().clone();
    let nn = n.clone();
    let al = alpha.clone();
    Module::from_fn(
        n.actegory.clone(),
        alpha.dom().clone(),
        n.carrier.clone(),
        move |x, s, v| nn.act(x, al.apply(along.object(x), s), v),
    )
}

/// `α_*` on morphisms: the same underlying map between restricted modules.
pub fn restrict_morphism(alpha: &MonoidMorphism, f: &ModuleMorphism) -> Result<ModuleMorphism> {
    let dom = Arc::new(restrict_scalars(alpha, f.dom())?);
    let cod = Arc::new(restrict_scalars(alpha, f.cod())?);
    Ok(ModuleMorphism::from_parts(dom, cod, f.map.clone()))
}

/// `b ⊠_a m` together with the canonical surjection `b ⊠ m → b ⊠_a m`.
#[derive(Clone, Debug)]
pub struct Extension {
    /// The module that was extended.
    pub source: Arc<Module>,
    pub module: Arc<Module>,
    pub coeq: CarrierMap,
    /// `b ⊠ m` with its pair encodings.
    pub free: Paired,
}

/// `α^*(m) = b ⊠_a m`: the coequalizer of the two actions of `a` on
/// `b ⊠ a ⊠ m`, identifying `(u·α(t), v)` with `(u, t·v)`, with `b` acting
/// on the left factor.
pub fn extend_scalars(alpha: &MonoidMorphism, m: &Module) -> Result<Extension> {
    if **alpha.dom() != **m.over() {
        return Err(shape("extension needs a module over the morphism's domain"));
    }
    let actegory = m.actegory.clone();
    let (a, b) = (alpha.dom(), alpha.cod());
    let free = actegory.act(b.carrier(), &m.carrier)?;
    let mut classes: Vec<UnionFind> = free
        .pairings
        .iter()
        .map(|p| UnionFind::new(p.size()))
        .collect();
    for (x, uf) in classes.iter_mut().enumerate() {
        let y = m.scalar_object(x);
        let p = free.pairings[x];
        for u in 0..b.size(y) {
            for t in 0..a.size(y) {
                let ut = b.mul(y, u, alpha.apply(y, t));
                for v in 0..m.size(x) {
                    uf.union(p.pair(ut, v), p.pair(u, m.act(x, t, v)));
                }
            }
        }
    }
    let coeq = carrier_quotient(&free.carrier, &mut classes)?;
    let quotient = coeq.cod().clone();
    let q = coeq.clone();
    let mut action = Vec::with_capacity(free.pairings.len());
    let bq = actegory.act(b.carrier(), &quotient)?;
    for (x, p) in free.pairings.iter().enumerate() {
        let y = m.scalar_object(x);
        let pq = bq.pairings[x];
        let mut table = vec![usize::MAX; pq.size()];
        if let Some(pt) = quotient.point(x) {
            table[0] = pt;
        }
        for (idx, uv) in p.pairs() {
            let Some((u, v)) = uv else { continue };
            let class = q.apply(x, idx);
            for w in 0..b.size(y) {
                let target = q.apply(x, p.pair(b.mul(y, w, u), v));
                let slot = &mut table[pq.pair(w, class)];
                if *slot == usize::MAX {
                    *slot = target;
                } else if *slot != target {
                    return Err(invariant(format!(
                        "induced action on {} depends on the representative",
                        quotient.describe(x, class)
                    )));
                }
            }
        }
        if table.contains(&usize::MAX) {
            return Err(invariant("induced action is not defined everywhere"));
        }
        action.push(table);
    }
    let module = Module::new(actegory, b.clone(), quotient, action)?;
    Ok(Extension {
        source: Arc::new(m.clone()),
        module: Arc::new(module),
        coeq,
        free,
    })
}

/// `1_b ⊠_a φ` between precomputed extensions of `φ`'s endpoints.
pub fn extend_morphism_between(
    phi: &ModuleMorphism,
    src: &Extension,
    tgt: &Extension,
) -> Result<ModuleMorphism> {
    if !phi.is_equivariant() {
        return Err(precondition(
            "extension of scalars needs an equivariant map",
        ));
    }
    let comps = src
        .free
        .pairings
        .iter()
        .enumerate()
        .map(|(x, p)| {
            let pt = tgt.free.pairings[x];
            p.pairs()
                .map(|(_, uv)| match uv {
                    None => 0,
                    Some((u, v)) => pt.pair(u, phi.apply(x, v)),
                })
                .collect()
        })
        .collect();
    let lifted = CarrierMap::from_parts(src.free.carrier.clone(), tgt.free.carrier.clone(), comps);
    let value = lifted.then(&tgt.coeq)?;
    let map = crate::carrier::descend(std::slice::from_ref(&src.coeq), &[value])?;
    Ok(ModuleMorphism::from_parts(
        src.module.clone(),
        tgt.module.clone(),
        map,
    ))
}

/// `α^*(φ) = 1_b ⊠_a φ`.
pub fn extend_morphism(alpha: &MonoidMorphism, phi: &ModuleMorphism) -> Result<ModuleMorphism> {
    let src = extend_scalars(alpha, phi.dom())?;
    let tgt = extend_scalars(alpha, phi.cod())?;
    extend_morphism_between(phi, &src, &tgt)
}

#[cfg(test)]
mod tests;
