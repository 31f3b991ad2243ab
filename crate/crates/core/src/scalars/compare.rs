//! Canonical comparison maps between iterated extensions of scalars. Each is
//! built from the universal property of a coequalizer: a value on
//! representatives, pushed through [`descend`], which asserts that it is
//! constant on classes.

use std::sync::Arc;

use crate::actegory::{Actegory, ActionStructure};
use crate::carrier::{descend, Carrier, CarrierMap};
use crate::commalg::{pushout, MonoidMorphism};
use crate::error::{precondition, shape, Result};
use crate::report::{CheckReport, Witness};

use super::{extend_scalars, restrict_scalars, Module, ModuleMorphism};

fn from_values(
    dom: &crate::carrier::Paired,
    cod: &Carrier,
    value: impl Fn(usize, usize, usize) -> usize,
) -> CarrierMap {
    let comps = dom
        .pairings
        .iter()
        .enumerate()
        .map(|(x, p)| {
            p.pairs()
                .map(|(_, uv)| match uv {
                    None => cod.point(x).expect("pointed"),
                    Some((u, v)) => value(x, u, v),
                })
                .collect()
        })
        .collect();
    CarrierMap::new(dom.carrier.clone(), cod.clone(), comps).expect("from_values")
}

/// `a′ ⊠_a (b ⊠ m) → (a′ ⊗_a b) ⊠ m`, `[(u′, (t, v))] ↦ ([u′, t], v)`, for
/// `α: a → a′`, `β: a → b` and an object `m`; `a′ ⊗_a b` is the pushout.
pub fn free_tensor_comparison(
    actegory: &Arc<Actegory>,
    alpha: &MonoidMorphism,
    beta: &MonoidMorphism,
    m: &Carrier,
) -> Result<ModuleMorphism> {
    let po = pushout(beta, alpha)?;
    let free_b = Module::free(actegory.clone(), beta.cod().clone(), m)?;
    let ext = extend_scalars(alpha, &restrict_scalars(beta, &free_b)?)?;
    let free_p = Arc::new(Module::free(actegory.clone(), po.object.clone(), m)?);
    let target = Arc::new(restrict_scalars(&po.right, &free_p)?);
    let inner = actegory.act(beta.cod().carrier(), m)?;
    let outer = actegory.act(po.object.carrier(), m)?;
    let p = po.object.clone();
    let value = from_values(&ext.free, target.carrier(), |x, u, q| {
        match inner.pairings[x].unpair(q) {
            None => target.carrier().point(x).expect("pointed"),
            Some((t, v)) => {
                let y = actegory.along().object(x);
                outer.pairings[x].pair(p.mul(y, po.left.apply(y, t), po.right.apply(y, u)), v)
            }
        }
    });
    let map = descend(std::slice::from_ref(&ext.coeq), &[value])?;
    Ok(ModuleMorphism::from_parts(ext.module, target, map))
}

/// `a′ ⊠_a (b ⊠_c m) → (a′ ⊗_a b) ⊠_c m`, `[(u′, [(t, v)])] ↦ [([u′, t], v)]`,
/// for `α: a → a′`, `β: a → b`, `γ: c → b` and a `c`-module `m`.
pub fn relative_tensor_comparison(
    alpha: &MonoidMorphism,
    beta: &MonoidMorphism,
    gamma: &MonoidMorphism,
    m: &Module,
) -> Result<ModuleMorphism> {
    let actegory = m.actegory().clone();
    let inner = extend_scalars(gamma, m)?;
    let ext = extend_scalars(alpha, &restrict_scalars(beta, &inner.module)?)?;
    let po = pushout(beta, alpha)?;
    let delta = gamma.then(&po.left)?;
    let rhs = extend_scalars(&delta, m)?;
    let target = Arc::new(restrict_scalars(&po.right, &rhs.module)?);

    // a′ ⊠ (b ⊠ m) covers a′ ⊠ (b ⊠_c m) through 1 ⊠ coeq.
    let a2 = alpha.cod().carrier();
    let top = actegory.act(a2, &inner.free.carrier)?;
    let mid = actegory.act(a2, inner.module.carrier())?;
    let cover = actegory
        .act_map(&top, &mid, &CarrierMap::identity(a2), &inner.coeq)
        .then(&ext.coeq)?;
    let p = po.object.clone();
    let value = from_values(&top, target.carrier(), |x, u, q| {
        match inner.free.pairings[x].unpair(q) {
            None => target.carrier().point(x).expect("pointed"),
            Some((t, v)) => {
                let y = actegory.along().object(x);
                let s = p.mul(y, po.left.apply(y, t), po.right.apply(y, u));
                rhs.coeq.apply(x, rhs.free.pairings[x].pair(s, v))
            }
        }
    });
    let map = descend(&[cover], &[value])?;
    Ok(ModuleMorphism::from_parts(ext.module, target, map))
}

/// `(βα)^*(m) → β^*(α^*(m))`, `[(w, v)] ↦ [(w, [(e, v)])]`.
pub fn composition_comparison(
    alpha: &MonoidMorphism,
    beta: &MonoidMorphism,
    m: &Module,
) -> Result<ModuleMorphism> {
    let composite = alpha.then(beta)?;
    let whole = extend_scalars(&composite, m)?;
    let first = extend_scalars(alpha, m)?;
    let second = extend_scalars(beta, &first.module)?;
    let b = alpha.cod().clone();
    let value = from_values(&whole.free, second.module.carrier(), |x, w, v| {
        let e = b.unit(m.scalar_object(x));
        let inner = first.coeq.apply(x, first.free.pairings[x].pair(e, v));
        second.coeq.apply(x, second.free.pairings[x].pair(w, inner))
    });
    let map = descend(std::slice::from_ref(&whole.coeq), &[value])?;
    Ok(ModuleMorphism::from_parts(whole.module, second.module, map))
}

/// `a ⊠_a m → m`, `[(s, v)] ↦ s·v`.
pub fn unit_comparison(m: &Arc<Module>) -> Result<ModuleMorphism> {
    let id = MonoidMorphism::identity(m.over());
    let ext = extend_scalars(&id, m)?;
    let value = from_values(&ext.free, m.carrier(), |x, s, v| m.act(x, s, v));
    let map = descend(std::slice::from_ref(&ext.coeq), &[value])?;
    Ok(ModuleMorphism::from_parts(ext.module, m.clone(), map))
}

/// For a commuting square `α′∘α = β′∘β` with `α: a → b`, `β: a → a′`,
/// `α′: b → b′`, `β′: a′ → b′`, and a `b`-module `m`:
/// `β^*(α_*(m)) → β′_*(α′^*(m))`, `[(u′, v)] ↦ [(β′(u′), v)]`.
pub fn base_change_comparison(
    alpha: &MonoidMorphism,
    beta: &MonoidMorphism,
    alpha2: &MonoidMorphism,
    beta2: &MonoidMorphism,
    m: &Module,
) -> Result<ModuleMorphism> {
    let lhs = alpha.then(alpha2)?;
    let rhs = beta.then(beta2)?;
    if lhs.comps() != rhs.comps() || lhs.cod() != rhs.cod() {
        return Err(precondition("the base-change square does not commute"));
    }
    if **m.over() != **alpha.cod() {
        return Err(shape("base change needs a module over the codomain of α"));
    }
    let src = extend_scalars(beta, &restrict_scalars(alpha, m)?)?;
    let ext = extend_scalars(alpha2, m)?;
    let target = Arc::new(restrict_scalars(beta2, &ext.module)?);
    let value = from_values(&src.free, target.carrier(), |x, u, v| {
        let y = m.scalar_object(x);
        ext.coeq
            .apply(x, ext.free.pairings[x].pair(beta2.apply(y, u), v))
    });
    let map = descend(std::slice::from_ref(&src.coeq), &[value])?;
    Ok(ModuleMorphism::from_parts(src.module, target, map))
}

/// A comparison map is a bijective equivariant morphism.
pub fn check_comparison(id: &str, f: &ModuleMorphism) -> CheckReport {
    let mut report = CheckReport::new(id);
    let mut bij = CheckReport::new(format!("{id}.bijective"));
    let map = f.map();
    bij.record(map.is_bijective(), || {
        let w = Witness::new("comparison map is not a bijection");
        if let Some((x, u, v)) = map.collision() {
            w.field(
                "collides",
                format!(
                    "{} and {}",
                    map.dom().describe(x, u),
                    map.dom().describe(x, v)
                ),
            )
        } else if let Some((x, v)) = map.missed() {
            w.field("misses", map.cod().describe(x, v))
        } else {
            w.field(
                "sizes",
                format!("{:?} → {:?}", map.dom().sizes(), map.cod().sizes()),
            )
        }
    });
    report.push(bij);
    let mut eq = f.check_equivariance();
    eq.id = format!("{id}.equivariant");
    report.push(eq);
    report
}
