//! Finite limits of modules, computed on carriers with the action acting
//! coordinatewise, and their images under extension of scalars.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::actegory::Actegory;
use crate::carrier::{carrier_limit, CarrierDiagram, CarrierMap};
use crate::commalg::{CommMonoid, MonoidMorphism};
use crate::error::{invariant, shape, Result};
use crate::fincore::LimitShape;
use crate::scalars::{extend_morphism_between, extend_scalars, Extension, Module, ModuleMorphism};

/// A finite-limit diagram in a module category.
#[derive(Clone, Debug)]
pub enum ModuleDiagram {
    Terminal {
        actegory: Arc<Actegory>,
        over: Arc<CommMonoid>,
    },
    Product(Arc<Module>, Arc<Module>),
    Equalizer(ModuleMorphism, ModuleMorphism),
    Pullback(ModuleMorphism, ModuleMorphism),
}

impl ModuleDiagram {
    pub fn shape(&self) -> LimitShape {
        match self {
            ModuleDiagram::Terminal { .. } => LimitShape::Terminal,
            ModuleDiagram::Product(..) => LimitShape::Product,
            ModuleDiagram::Equalizer(..) => LimitShape::Equalizer,
            ModuleDiagram::Pullback(..) => LimitShape::Pullback,
        }
    }

    fn actegory(&self) -> &Arc<Actegory> {
        match self {
            ModuleDiagram::Terminal { actegory, .. } => actegory,
            ModuleDiagram::Product(m, _) => m.actegory(),
            ModuleDiagram::Equalizer(f, _) | ModuleDiagram::Pullback(f, _) => f.dom().actegory(),
        }
    }

    fn over(&self) -> &Arc<CommMonoid> {
        match self {
            ModuleDiagram::Terminal { over, .. } => over,
            ModuleDiagram::Product(m, _) => m.over(),
            ModuleDiagram::Equalizer(f, _) | ModuleDiagram::Pullback(f, _) => f.dom().over(),
        }
    }

    /// The vertices of the diagram, each listed once.
    pub fn modules(&self) -> Vec<&Arc<Module>> {
        match self {
            ModuleDiagram::Terminal { .. } => vec![],
            ModuleDiagram::Product(a, b) => vec![a, b],
            ModuleDiagram::Equalizer(f, _) => vec![f.dom(), f.cod()],
            ModuleDiagram::Pullback(f, g) => vec![f.dom(), g.dom(), f.cod()],
        }
    }

    /// Total number of elements over all vertices.
    pub fn total_size(&self) -> usize {
        self.modules().iter().map(|m| m.total_size()).sum()
    }
}

/// Elements per object, then the action table per object.
pub(crate) fn show_module(m: &Module) -> String {
    let parts: Vec<String> = (0..m.object_count())
        .map(|x| {
            format!(
                "{{{}}} {:?}",
                m.carrier().at(x).labels().join(","),
                m.action_table(x)
            )
        })
        .collect();
    parts.join(" | ")
}

impl fmt::Display for ModuleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = show_module;
        let map = |h: &ModuleMorphism| {
            let parts: Vec<String> = h.map().comps().iter().map(|c| format!("{c:?}")).collect();
            parts.join("|")
        };
        match self {
            ModuleDiagram::Terminal { .. } => f.write_str("terminal"),
            ModuleDiagram::Product(a, b) => write!(f, "product of {} and {}", show(a), show(b)),
            ModuleDiagram::Equalizer(p, q) => write!(
                f,
                "equalizer of {} and {} from {} to {}",
                map(p),
                map(q),
                show(p.dom()),
                show(p.cod())
            ),
            ModuleDiagram::Pullback(p, q) => write!(
                f,
                "pullback of {} from {} and {} from {} over {}",
                map(p),
                show(p.dom()),
                map(q),
                show(q.dom()),
                show(p.cod())
            ),
        }
    }
}

/// A limit module with its projections, in the order of the diagram's legs
/// (none, both factors, the domain, both domains).
#[derive(Clone, Debug)]
pub struct ModuleCone {
    pub apex: Arc<Module>,
    pub legs: Vec<ModuleMorphism>,
}

pub fn module_limit(diagram: &ModuleDiagram) -> Result<ModuleCone> {
    let actegory = diagram.actegory().clone();
    let over = diagram.over().clone();
    let (carrier_diagram, targets) = match diagram {
        ModuleDiagram::Terminal { actegory, .. } => (
            CarrierDiagram::Terminal {
                base: actegory.along().dom().clone(),
                pointed: actegory.is_pointed(),
            },
            vec![],
        ),
        ModuleDiagram::Product(a, b) => (
            CarrierDiagram::Product(a.carrier().clone(), b.carrier().clone()),
            vec![a.clone(), b.clone()],
        ),
        ModuleDiagram::Equalizer(f, g) => {
            if f.dom() != g.dom() || f.cod() != g.cod() {
                return Err(shape("equalizer needs a parallel pair of module maps"));
            }
            (
                CarrierDiagram::Equalizer(f.map().clone(), g.map().clone()),
                vec![f.dom().clone()],
            )
        }
        ModuleDiagram::Pullback(f, g) => {
            if f.cod() != g.cod() {
                return Err(shape("pullback needs module maps with a shared codomain"));
            }
            (
                CarrierDiagram::Pullback(f.map().clone(), g.map().clone()),
                vec![f.dom().clone(), g.dom().clone()],
            )
        }
    };
    let cone = carrier_limit(&carrier_diagram)?;
    let nx = cone.apex.base().object_count();
    let index: Vec<HashMap<Vec<usize>, usize>> = (0..nx)
        .map(|x| {
            (0..cone.apex.size(x))
                .map(|p| (cone.legs.iter().map(|l| l.apply(x, p)).collect(), p))
                .collect()
        })
        .collect();
    let legs = cone.legs.clone();
    let acting = targets.clone();
    let apex = Module::from_fn(actegory, over, cone.apex.clone(), move |x, s, p| {
        let coords: Vec<usize> = legs
            .iter()
            .zip(&acting)
            .map(|(l, m)| m.act(x, s, l.apply(x, p)))
            .collect();
        index[x].get(&coords).copied().unwrap_or(usize::MAX)
    })
    .map_err(|_| invariant("limit of modules is not closed under the action"))?;
    let apex = Arc::new(apex);
    let legs = cone
        .legs
        .into_iter()
        .zip(targets)
        .map(|(l, t)| ModuleMorphism::new(apex.clone(), t, l.comps().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuleCone { apex, legs })
}

/// `α^*` applied to every vertex and edge of a diagram.
pub(crate) fn extend_diagram(
    alpha: &MonoidMorphism,
    diagram: &ModuleDiagram,
) -> Result<ModuleDiagram> {
    let ext = |m: &Arc<Module>| extend_scalars(alpha, m);
    let map = |f: &ModuleMorphism, s: &Extension, t: &Extension| extend_morphism_between(f, s, t);
    Ok(match diagram {
        ModuleDiagram::Terminal { actegory, .. } => ModuleDiagram::Terminal {
            actegory: actegory.clone(),
            over: alpha.cod().clone(),
        },
        ModuleDiagram::Product(a, b) => ModuleDiagram::Product(ext(a)?.module, ext(b)?.module),
        ModuleDiagram::Equalizer(f, g) => {
            let (s, t) = (ext(f.dom())?, ext(f.cod())?);
            ModuleDiagram::Equalizer(map(f, &s, &t)?, map(g, &s, &t)?)
        }
        ModuleDiagram::Pullback(f, g) => {
            let (s1, s2, t) = (ext(f.dom())?, ext(g.dom())?, ext(f.cod())?);
            ModuleDiagram::Pullback(map(f, &s1, &t)?, map(g, &s2, &t)?)
        }
    })
}

/// The canonical comparison `α^*(lim D) → lim(α^* ∘ D)`.
pub fn limit_comparison(alpha: &MonoidMorphism, diagram: &ModuleDiagram) -> Result<ModuleMorphism> {
    let cone = module_limit(diagram)?;
    let source = extend_scalars(alpha, &cone.apex)?;
    let image = module_limit(&extend_diagram(alpha, diagram)?)?;
    let legs = cone
        .legs
        .iter()
        .map(|l| {
            let tgt = extend_scalars(alpha, l.cod())?;
            Ok(extend_morphism_between(l, &source, &tgt)?.map().clone())
        })
        .collect::<Result<Vec<CarrierMap>>>()?;
    let image_cone = crate::carrier::CarrierCone {
        apex: image.apex.carrier().clone(),
        legs: image.legs.iter().map(|l| l.map().clone()).collect(),
    };
    let map = image_cone
        .mediate(source.module.carrier(), &legs)
        .ok_or_else(|| invariant("extended limit cone does not factor through the limit"))?;
    Ok(ModuleMorphism::from_parts(
        source.module.clone(),
        image.apex,
        map,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commalg::{Base, MonoidTable};
    use crate::scalars::modules_up_to;

    fn cart() -> Arc<Actegory> {
        Arc::new(Actegory::self_action(Base::cartesian()))
    }

    #[test]
    fn product_of_regular_modules() {
        let z2 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(2)));
        let r = Arc::new(Module::regular(z2).unwrap());
        let cone = module_limit(&ModuleDiagram::Product(r.clone(), r)).unwrap();
        assert_eq!(cone.apex.size(0), 4);
        assert!(cone.legs.iter().all(|l| l.is_equivariant()));
    }

    #[test]
    fn equalizer_is_the_fixed_submodule() {
        let z2 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(2)));
        let act = cart();
        let mods: Vec<Arc<Module>> = modules_up_to(&act, &z2, 2, true)
            .into_iter()
            .map(Arc::new)
            .collect();
        let r = mods
            .iter()
            .find(|m| m.size(0) == 2 && m.act(0, 1, 0) == 1)
            .unwrap();
        let swap = ModuleMorphism::new(r.clone(), r.clone(), vec![vec![1, 0]]).unwrap();
        let id = ModuleMorphism::identity(r);
        let cone = module_limit(&ModuleDiagram::Equalizer(id, swap)).unwrap();
        assert_eq!(cone.apex.size(0), 0);
    }

    #[test]
    fn comparison_along_identity_is_bijective() {
        let b2 = Arc::new(CommMonoid::plain(MonoidTable::boolean()));
        let r = Arc::new(Module::regular(b2.clone()).unwrap());
        let id = MonoidMorphism::identity(&b2);
        let c = limit_comparison(&id, &ModuleDiagram::Product(r.clone(), r)).unwrap();
        assert!(c.is_iso());
    }
}
