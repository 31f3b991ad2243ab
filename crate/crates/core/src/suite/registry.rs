//! Turns the named declarations of a [`SuiteDocument`] into objects.
//!
//! Declarations are resolved kind by kind in a fixed order, each kind only
//! looking at kinds resolved before it, so references cannot form cycles.
//! Categories may name a monoid for its delooping; only the monoid's table
//! is read, which depends on nothing else.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::actegory::{Actegory, Digraph};
use crate::basechange::{restricted_source, LaxLinearFunctor, MonoidalAdjunction};
use crate::carrier::Carrier;
use crate::commalg::{check_comm_monoid, Base, CommMonoid, MonoidHom, MonoidMorphism, MonoidTable};
use crate::error::{Error, Result};
use crate::fincore::{
    check_presheaf_laws, Arrow, FinCategory, FinFunctor, FinMap, FinPresheaf, FinSet,
};
use crate::gluing::{glue, CmonGluing, GluedCategory, Transpositions};
use crate::report::{CheckReport, ProbeBudget};
use crate::scalars::{check_module_laws, Module};
use crate::topology::{CoverFamily, FunctorData};

use super::doc::*;

/// A glued category, remembering the monoids when it was built from them.
pub enum Gluing {
    Cmon(Box<CmonGluing>),
    Plain(GluedCategory),
}

impl Gluing {
    pub fn glued(&self) -> &GluedCategory {
        match self {
            Gluing::Cmon(g) => g.glued(),
            Gluing::Plain(g) => g,
        }
    }
}

#[derive(Default)]
pub struct Registry {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub functors: BTreeMap<String, FinFunctor>,
    pub monoids: BTreeMap<String, Arc<CommMonoid>>,
    pub morphisms: BTreeMap<String, MonoidMorphism>,
    pub adjunctions: BTreeMap<String, MonoidalAdjunction>,
    pub actions: BTreeMap<String, Arc<Actegory>>,
    pub graphs: BTreeMap<String, Digraph>,
    pub modules: BTreeMap<String, Arc<Module>>,
    pub covers: BTreeMap<String, CoverFamily>,
    pub linear: BTreeMap<String, LaxLinearFunctor>,
    pub functor_data: BTreeMap<String, FunctorData>,
    pub gluings: BTreeMap<String, Gluing>,
}

pub(crate) fn lookup<'a, T>(
    map: &'a BTreeMap<String, T>,
    name: &str,
    context: &str,
) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::Resolution {
        name: name.to_string(),
        context: context.to_string(),
    })
}

/// Wraps construction failures as validation errors naming the object;
/// unresolved names and missing data keep their own kind.
fn named<T>(name: &str, kind: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Resolution { .. } | Error::Incomplete(_) | Error::Validation { .. } => e,
        other => Error::Validation {
            name: name.to_string(),
            reason: format!("{kind}: {other}"),
        },
    })
}

fn law_failure(name: &str, report: &CheckReport) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
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

fn index(set: &FinSet, label: &str, context: impl FnOnce() -> String) -> Result<usize> {
    set.index_of(label).ok_or_else(|| Error::Resolution {
        name: label.to_string(),
        context: context(),
    })
}

pub(crate) fn builtin_table(kind: &BuiltinTable) -> Result<MonoidTable> {
    Ok(match kind {
        BuiltinTable::Trivial => MonoidTable::trivial(),
        BuiltinTable::Zero => MonoidTable::zero_monoid(),
        BuiltinTable::Boolean => MonoidTable::boolean(),
        BuiltinTable::Cyclic { order } => {
            if *order == 0 {
                return Err(Error::Invalid(
                    "a cyclic group needs order at least 1".into(),
                ));
            }
            MonoidTable::cyclic(*order)
        }
        BuiltinTable::Saturating { top } => MonoidTable::saturating(*top),
    })
}

/// The multiplication table of a monoid declaration, independent of its base.
pub(crate) fn table_of(name: &str, doc: &MonoidDoc) -> Result<MonoidTable> {
    match doc {
        MonoidDoc::Builtin(b) => {
            let t = builtin_table(&b.builtin)?;
            Ok(if b.with_zero { t.with_zero() } else { t })
        }
        MonoidDoc::Table(t) => {
            let elements = named(name, "monoid", FinSet::new(t.elements.iter().cloned()))?;
            let ctx = || format!("monoid `{name}`");
            let rows = t
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|l| index(&elements, l, ctx))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let unit = index(&elements, &t.unit, ctx)?;
            let zero = t
                .zero
                .as_ref()
                .map(|z| index(&elements, z, ctx))
                .transpose()?;
            named(name, "monoid", MonoidTable::new(elements, rows, unit, zero))
        }
    }
}

impl Registry {
    pub fn build(doc: &SuiteDocument) -> Result<Self> {
        let validate = !doc.defer_validation;
        let mut reg = Registry::default();
        for (name, c) in &doc.categories {
            let cat = Arc::new(reg.category(doc, name, c)?);
            if validate {
                law_failure(name, &cat.check_laws())?;
            }
            reg.categories.insert(name.clone(), cat);
        }
        for (name, f) in &doc.functors {
            let functor = reg.functor(name, f)?;
            if validate {
                law_failure(name, &functor.check_laws())?;
            }
            reg.functors.insert(name.clone(), functor);
        }
        for (name, m) in &doc.monoids {
            let monoid = reg.monoid(name, m)?;
            if validate {
                law_failure(name, &check_comm_monoid(&monoid))?;
            }
            reg.monoids.insert(name.clone(), Arc::new(monoid));
        }
        for (name, m) in &doc.morphisms {
            let morphism = reg.morphism(name, m)?;
            if validate {
                law_failure(name, &morphism.check_laws())?;
            }
            reg.morphisms.insert(name.clone(), morphism);
        }
        for (name, a) in &doc.adjunctions {
            let adj = match a {
                AdjunctionDoc::Identity { base } => {
                    MonoidalAdjunction::identity(reg.base(base, name)?)
                }
                AdjunctionDoc::PrecomposeIso { functor } => {
                    let f = lookup(&reg.functors, functor, &format!("adjunction `{name}`"))?;
                    named(
                        name,
                        "adjunction",
                        MonoidalAdjunction::precompose_iso(f.clone()),
                    )?
                }
            };
            reg.adjunctions.insert(name.clone(), adj);
        }
        // Restricted actions refer to unrestricted ones, so they go second.
        for restricted in [false, true] {
            for (name, a) in &doc.actions {
                if matches!(a, ActionDoc::Restricted { .. }) == restricted {
                    if let ActionDoc::Restricted { action, .. } = a {
                        if let Some(ActionDoc::Restricted { .. }) = doc.actions.get(action) {
                            return Err(Error::Validation {
                                name: name.clone(),
                                reason: "restrictions of restricted actions are not supported"
                                    .into(),
                            });
                        }
                    }
                    let action = reg.action(name, a)?;
                    reg.actions.insert(name.clone(), Arc::new(action));
                }
            }
        }
        for (name, g) in &doc.graphs {
            let edges = g
                .edges
                .iter()
                .map(|e| (e.id.as_str(), e.src.as_str(), e.tgt.as_str()));
            let graph = named(
                name,
                "graph",
                Digraph::new(g.vertices.iter().map(String::as_str), edges),
            )?;
            reg.graphs.insert(name.clone(), graph);
        }
        for (name, m) in &doc.modules {
            let module = reg.module(name, m)?;
            if validate {
                law_failure(name, &check_module_laws(&module))?;
            }
            reg.modules.insert(name.clone(), Arc::new(module));
        }
        for (name, c) in &doc.covers {
            let ctx = format!("cover `{name}`");
            let base = lookup(&reg.monoids, &c.base, &ctx)?.clone();
            let legs = c
                .legs
                .iter()
                .map(|l| lookup(&reg.morphisms, l, &ctx).cloned())
                .collect::<Result<Vec<_>>>()?;
            let subset = c
                .finite_subset
                .clone()
                .unwrap_or_else(|| (0..legs.len()).collect());
            let cover = named(name, "cover", CoverFamily::new(base, legs, subset))?;
            reg.covers.insert(name.clone(), cover);
        }
        for (name, l) in &doc.linear_functors {
            let ctx = format!("linear functor `{name}`");
            let act = |n: &str| lookup(&reg.actions, n, &ctx).cloned();
            let linear = match l {
                LinearDoc::Identity { action } => LaxLinearFunctor::identity(act(action)?),
                LinearDoc::Precompose {
                    source,
                    target,
                    functor,
                } => {
                    let f = lookup(&reg.functors, functor, &ctx)?.clone();
                    named(
                        name,
                        "linear functor",
                        LaxLinearFunctor::precompose(act(source)?, act(target)?, f),
                    )?
                }
                LinearDoc::AdjoinPoint { action } => named(
                    name,
                    "linear functor",
                    LaxLinearFunctor::adjoin_point(act(action)?),
                )?,
            };
            reg.linear.insert(name.clone(), linear);
        }
        for (name, f) in &doc.functor_data {
            let data = reg.functor_data(name, f)?;
            reg.functor_data.insert(name.clone(), data);
        }
        for (name, g) in &doc.gluings {
            let gluing = reg.gluing(name, g)?;
            reg.gluings.insert(name.clone(), gluing);
        }
        Ok(reg)
    }

    pub(crate) fn base(&self, doc: &str, owner: &str) -> Result<Base> {
        Ok(match doc {
            "sets" => Base::cartesian(),
            "pointed" => Base::pointed(),
            cat => Base::presheaf(
                lookup(&self.categories, cat, &format!("base of `{owner}`"))?.clone(),
            ),
        })
    }

    fn category(&self, doc: &SuiteDocument, name: &str, c: &CategoryDoc) -> Result<FinCategory> {
        match c {
            CategoryDoc::Builtin(b) => Ok(match b {
                BuiltinCategory::Terminal => FinCategory::terminal(),
                BuiltinCategory::Discrete { size } => FinCategory::discrete(*size),
                BuiltinCategory::ParallelPair => FinCategory::parallel_pair(),
                BuiltinCategory::WalkingArrow => FinCategory::walking_arrow(),
                BuiltinCategory::WalkingIso => FinCategory::walking_iso(),
                BuiltinCategory::Delooping { monoid } => {
                    let m = lookup(&doc.monoids, monoid, &format!("category `{name}`"))?;
                    crate::actegory::delooping(&table_of(monoid, m)?)
                }
            }),
            CategoryDoc::Explicit(e) => {
                let ctx = || format!("category `{name}`");
                let find = |o: &str| {
                    e.objects
                        .iter()
                        .position(|x| x == o)
                        .ok_or_else(|| Error::Resolution {
                            name: o.to_string(),
                            context: ctx(),
                        })
                };
                let mut arrows: Vec<Arrow> = e
                    .objects
                    .iter()
                    .enumerate()
                    .map(|(i, o)| Arrow {
                        name: format!("1_{o}"),
                        src: i,
                        tgt: i,
                    })
                    .collect();
                let identities: Vec<usize> = (0..e.objects.len()).collect();
                for a in &e.arrows {
                    arrows.push(Arrow {
                        name: a.name.clone(),
                        src: find(&a.src)?,
                        tgt: find(&a.tgt)?,
                    });
                }
                let arrow = |n: &str| {
                    arrows
                        .iter()
                        .position(|a| a.name == n)
                        .ok_or_else(|| Error::Resolution {
                            name: n.to_string(),
                            context: ctx(),
                        })
                };
                let mut table = HashMap::new();
                for [g, f, h] in &e.compose {
                    table.insert((arrow(g)?, arrow(f)?), arrow(h)?);
                }
                let n_obj = e.objects.len();
                let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
                named(
                    name,
                    "category",
                    FinCategory::new(e.objects.clone(), arrows, identities, |g, f| {
                        if g < n_obj && ends[g].0 == ends[f].1 {
                            Some(f)
                        } else if f < n_obj && ends[f].1 == ends[g].0 {
                            Some(g)
                        } else {
                            table.get(&(g, f)).copied()
                        }
                    }),
                )
            }
        }
    }

    fn functor(&self, name: &str, f: &FunctorDoc) -> Result<FinFunctor> {
        let ctx = format!("functor `{name}`");
        let dom = lookup(&self.categories, &f.dom, &ctx)?.clone();
        let cod = lookup(&self.categories, &f.cod, &ctx)?.clone();
        let obj = |cat: &FinCategory, n: &str| {
            cat.object_index(n).ok_or_else(|| Error::Resolution {
                name: n.to_string(),
                context: ctx.clone(),
            })
        };
        let arr = |cat: &FinCategory, n: &str| {
            cat.arrow_index(n).ok_or_else(|| Error::Resolution {
                name: n.to_string(),
                context: ctx.clone(),
            })
        };
        let mut objects = vec![None; dom.object_count()];
        for (x, y) in &f.objects {
            objects[obj(&dom, x)?] = Some(obj(&cod, y)?);
        }
        let objects = objects
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::Incomplete(format!(
                        "{ctx} has no image for object `{}`",
                        dom.objects()[i]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut arrows = vec![None; dom.arrow_count()];
        for (x, y) in &f.arrows {
            arrows[arr(&dom, x)?] = Some(arr(&cod, y)?);
        }
        let arrows = arrows
            .into_iter()
            .enumerate()
            .map(|(i, a)| match a {
                Some(a) => Ok(a),
                None if dom.is_identity(i) => Ok(cod.identity(objects[dom.arrow(i).src])),
                None => Err(Error::Incomplete(format!(
                    "{ctx} has no image for arrow `{}`",
                    dom.arrow(i).name
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        named(name, "functor", FinFunctor::new(dom, cod, objects, arrows))
    }

    fn monoid(&self, name: &str, m: &MonoidDoc) -> Result<CommMonoid> {
        let table = table_of(name, m)?;
        let base = match m {
            MonoidDoc::Table(t) => t.base.as_deref(),
            MonoidDoc::Builtin(b) => b.base.as_deref(),
        };
        match base {
            None | Some("sets") => Ok(CommMonoid::plain(table)),
            Some(b) => {
                let base = self.base(b, name)?;
                named(name, "monoid", CommMonoid::constant(base, table))
            }
        }
    }

    fn morphism(&self, name: &str, m: &MorphismDoc) -> Result<MonoidMorphism> {
        let ctx = format!("morphism `{name}`");
        let dom = lookup(&self.monoids, &m.dom, &ctx)?.clone();
        let cod = lookup(&self.monoids, &m.cod, &ctx)?.clone();
        if dom.tables().len() != cod.tables().len() {
            return Err(Error::Validation {
                name: name.to_string(),
                reason: "domain and codomain live on different bases".into(),
            });
        }
        let comps = (0..dom.tables().len())
            .map(|y| {
                let (d, c) = (dom.table(y).elements(), cod.table(y).elements());
                d.labels()
                    .iter()
                    .map(|l| {
                        let image = m.map.get(l).ok_or_else(|| {
                            Error::Incomplete(format!("{ctx} has no image for `{l}`"))
                        })?;
                        index(c, image, || format!("{ctx} codomain"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for l in m.map.keys() {
            index(dom.table(0).elements(), l, || format!("{ctx} domain"))?;
        }
        named(name, "morphism", MonoidMorphism::new(dom, cod, comps))
    }

    fn action(&self, name: &str, a: &ActionDoc) -> Result<Actegory> {
        let ctx = format!("action `{name}`");
        let r = match a {
            ActionDoc::SelfAction { base } => Ok(Actegory::self_action(self.base(base, name)?)),
            ActionDoc::Diagonal { copies, base } => {
                Actegory::diagonal(*copies, self.base(base, name)?)
            }
            ActionDoc::Presheaf { functor } => {
                Actegory::presheaf(lookup(&self.functors, functor, &ctx)?.clone())
            }
            ActionDoc::Representation { sigma } => {
                let s = lookup(&self.morphisms, sigma, &ctx)?;
                if !s.dom().base().is_cartesian_sets() || !s.cod().base().is_cartesian_sets() {
                    return Err(Error::Validation {
                        name: name.to_string(),
                        reason: "σ must be a map of monoids on the set base".into(),
                    });
                }
                MonoidHom::new(
                    Arc::new(s.dom().table(0).clone()),
                    Arc::new(s.cod().table(0).clone()),
                    s.comp(0).to_vec(),
                )
                .and_then(|h| Actegory::representation(&h))
            }
            ActionDoc::Digraph {
                monoid,
                source,
                target,
            } => {
                let m = lookup(&self.monoids, monoid, &ctx)?;
                let t = m.table(0);
                let s = index(t.elements(), source, || ctx.clone())?;
                let u = index(t.elements(), target, || ctx.clone())?;
                Actegory::digraph(t, s, u)
            }
            ActionDoc::Restricted { adjunction, action } => {
                let adj = lookup(&self.adjunctions, adjunction, &ctx)?;
                let n = lookup(&self.actions, action, &ctx)?;
                restricted_source(adj, n, &ProbeBudget::default()).map(|a| (*a).clone())
            }
        };
        named(name, "action", r)
    }

    pub(crate) fn carrier(
        &self,
        owner: &str,
        shape: &Arc<FinCategory>,
        c: &CarrierDoc,
    ) -> Result<Carrier> {
        let ctx = || format!("carrier of `{owner}`");
        let bad_shape = |what: &str| Error::Validation {
            name: owner.to_string(),
            reason: format!("{what} carriers do not fit this action's shape"),
        };
        let carrier = match c {
            CarrierDoc::Set { elements, point } => {
                if shape.object_count() != 1 || shape.arrow_count() != 1 {
                    return Err(bad_shape("set"));
                }
                let set = named(owner, "carrier", FinSet::new(elements.iter().cloned()))?;
                let p = point.as_ref().map(|p| index(&set, p, ctx)).transpose()?;
                let sheaf = FinPresheaf::constant(shape.clone(), set);
                match p {
                    Some(p) => named(owner, "carrier", Carrier::pointed(sheaf, vec![p]))?,
                    None => Carrier::plain(sheaf),
                }
            }
            CarrierDoc::Graph { graph } => {
                let g = lookup(&self.graphs, graph, &ctx())?.to_carrier();
                if g.base() != shape {
                    return Err(bad_shape("graph"));
                }
                g
            }
            CarrierDoc::MSet { elements, action } => {
                if shape.object_count() != 1 {
                    return Err(bad_shape("M-set"));
                }
                let sets = BTreeMap::from([(shape.objects()[0].clone(), elements.clone())]);
                self.presheaf_carrier(owner, shape, &sets, action, None)?
            }
            CarrierDoc::Presheaf { sets, maps, points } => {
                self.presheaf_carrier(owner, shape, sets, maps, points.as_ref())?
            }
        };
        Ok(carrier)
    }

    fn presheaf_carrier(
        &self,
        owner: &str,
        shape: &Arc<FinCategory>,
        sets: &BTreeMap<String, Vec<String>>,
        maps: &BTreeMap<String, BTreeMap<String, String>>,
        points: Option<&BTreeMap<String, String>>,
    ) -> Result<Carrier> {
        let ctx = || format!("carrier of `{owner}`");
        for k in sets.keys() {
            shape.object_index(k).ok_or_else(|| Error::Resolution {
                name: k.clone(),
                context: ctx(),
            })?;
        }
        for k in maps.keys() {
            shape.arrow_index(k).ok_or_else(|| Error::Resolution {
                name: k.clone(),
                context: ctx(),
            })?;
        }
        let sets = shape
            .objects()
            .iter()
            .map(|o| {
                let labels = sets
                    .get(o)
                    .ok_or_else(|| Error::Incomplete(format!("{} has no set at `{o}`", ctx())))?;
                named(owner, "carrier", FinSet::new(labels.iter().cloned()))
            })
            .collect::<Result<Vec<_>>>()?;
        let tables = shape
            .arrows()
            .iter()
            .enumerate()
            .map(|(f, a)| {
                let (from, to) = (&sets[a.tgt], &sets[a.src]);
                match maps.get(&a.name) {
                    None if shape.is_identity(f) => Ok(from.indices().collect()),
                    None => Err(Error::Incomplete(format!(
                        "{} has no map for `{}`",
                        ctx(),
                        a.name
                    ))),
                    Some(m) => from
                        .labels()
                        .iter()
                        .map(|l| {
                            let v = m.get(l).ok_or_else(|| {
                                Error::Incomplete(format!(
                                    "{} has no image of `{l}` under `{}`",
                                    ctx(),
                                    a.name
                                ))
                            })?;
                            index(to, v, ctx)
                        })
                        .collect::<Result<Vec<_>>>(),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let sheaf = named(
            owner,
            "carrier",
            FinPresheaf::from_tables(shape.clone(), sets.clone(), tables),
        )?;
        law_failure(owner, &check_presheaf_laws(&sheaf))?;
        match points {
            None => Ok(Carrier::plain(sheaf)),
            Some(p) => {
                let pts = shape
                    .objects()
                    .iter()
                    .enumerate()
                    .map(|(x, o)| {
                        let l = p.get(o).ok_or_else(|| {
                            Error::Incomplete(format!("{} has no basepoint at `{o}`", ctx()))
                        })?;
                        index(&sets[x], l, ctx)
                    })
                    .collect::<Result<Vec<_>>>()?;
                named(owner, "carrier", Carrier::pointed(sheaf, pts))
            }
        }
    }

    fn module(&self, name: &str, m: &ModuleDoc) -> Result<Module> {
        let ctx = format!("module `{name}`");
        let parts = |action: &str, over: &str| -> Result<(Arc<Actegory>, Arc<CommMonoid>)> {
            Ok((
                lookup(&self.actions, action, &ctx)?.clone(),
                lookup(&self.monoids, over, &ctx)?.clone(),
            ))
        };
        let r = match m {
            ModuleDoc::Regular { over } => {
                Module::regular(lookup(&self.monoids, over, &ctx)?.clone())
            }
            ModuleDoc::Free {
                action,
                over,
                carrier,
            } => {
                let (act, a) = parts(action, over)?;
                let c = self.carrier(name, act.along().dom(), carrier)?;
                Module::free(act, a, &c)
            }
            ModuleDoc::Trivial {
                action,
                over,
                carrier,
            } => {
                let (act, a) = parts(action, over)?;
                let c = self.carrier(name, act.along().dom(), carrier)?;
                Module::trivial(act, a, c)
            }
            ModuleDoc::Explicit {
                action,
                over,
                carrier,
                table,
            } => {
                let (act, a) = parts(action, over)?;
                let c = self.carrier(name, act.along().dom(), carrier)?;
                return self.explicit_module(name, act, a, c, table);
            }
        };
        named(name, "module", r)
    }

    fn explicit_module(
        &self,
        name: &str,
        act: Arc<Actegory>,
        a: Arc<CommMonoid>,
        c: Carrier,
        table: &BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
    ) -> Result<Module> {
        let shape = act.along().dom().clone();
        let ctx = || format!("action table of `{name}`");
        let mut lookup_table: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (obj, rows) in table {
            let x = shape.object_index(obj).ok_or_else(|| Error::Resolution {
                name: obj.clone(),
                context: ctx(),
            })?;
            let y = act.along().object(x);
            let scalars = a.table(y).elements();
            for (s, row) in rows {
                let s = index(scalars, s, ctx)?;
                for (v, w) in row {
                    let v = index(c.at(x), v, ctx)?;
                    let w = index(c.at(x), w, ctx)?;
                    lookup_table.insert((x, s, v), w);
                }
            }
        }
        let missing = RefCell::new(None);
        let module = Module::from_fn(act, a.clone(), c.clone(), |x, s, v| {
            lookup_table.get(&(x, s, v)).copied().unwrap_or_else(|| {
                missing.borrow_mut().get_or_insert((x, s, v));
                0
            })
        });
        if let Some((x, s, v)) = missing.into_inner() {
            return Err(Error::Incomplete(format!(
                "{} has no entry for {}·{} at `{}`",
                ctx(),
                a.label(0, s),
                c.label(x, v),
                shape.objects()[x]
            )));
        }
        named(name, "module", module)
    }

    fn functor_data(&self, name: &str, f: &FunctorDataDoc) -> Result<FunctorData> {
        let ctx = format!("functor data `{name}`");
        let r = match f {
            FunctorDataDoc::Corepresented { monoid, cover } => {
                let b = lookup(&self.monoids, monoid, &ctx)?;
                FunctorData::corepresented(b, lookup(&self.covers, cover, &ctx)?)
            }
            FunctorDataDoc::Constant { cover, set } => {
                let set = named(name, "functor data", FinSet::new(set.iter().cloned()))?;
                FunctorData::on_cover(
                    lookup(&self.covers, cover, &ctx)?,
                    |_| set.clone(),
                    |_, d, c| {
                        FinMap::identity(d)
                            .relabel(d.clone(), c.clone())
                            .expect("same set")
                    },
                )
            }
            FunctorDataDoc::Explicit {
                cover,
                objects,
                arrows,
            } => {
                let cover = lookup(&self.covers, cover, &ctx)?;
                let skeleton = named(
                    name,
                    "functor data",
                    FunctorData::on_cover(
                        cover,
                        |_| FinSet::singleton(),
                        |_, d, c| FinMap::new(d.clone(), c.clone(), vec![0]).expect("singletons"),
                    ),
                )?;
                for k in objects.keys() {
                    if !skeleton.objects().iter().any(|o| &o.name == k) {
                        return Err(Error::Resolution {
                            name: k.clone(),
                            context: ctx.clone(),
                        });
                    }
                }
                for k in arrows.keys() {
                    if !skeleton.arrows().iter().any(|o| &o.name == k) {
                        return Err(Error::Resolution {
                            name: k.clone(),
                            context: ctx.clone(),
                        });
                    }
                }
                let objs = skeleton
                    .objects()
                    .iter()
                    .map(|o| {
                        let labels = objects.get(&o.name).ok_or_else(|| {
                            Error::Incomplete(format!("{ctx} has no value at `{}`", o.name))
                        })?;
                        let mut o = o.clone();
                        o.value = named(name, "functor data", FinSet::new(labels.iter().cloned()))?;
                        Ok(o)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let arrs = skeleton
                    .arrows()
                    .iter()
                    .map(|a| {
                        let m = arrows.get(&a.name).ok_or_else(|| {
                            Error::Incomplete(format!("{ctx} has no value at `{}`", a.name))
                        })?;
                        let (d, c) = (&objs[a.src].value, &objs[a.tgt].value);
                        let table = d
                            .labels()
                            .iter()
                            .map(|l| {
                                let v = m.get(l).ok_or_else(|| {
                                    Error::Incomplete(format!(
                                        "{ctx} has no image of `{l}` under `{}`",
                                        a.name
                                    ))
                                })?;
                                index(c, v, || ctx.clone())
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let mut a = a.clone();
                        a.value = FinMap::new(d.clone(), c.clone(), table)?;
                        Ok(a)
                    })
                    .collect::<Result<Vec<_>>>()?;
                FunctorData::new(objs, arrs)
            }
        };
        named(name, "functor data", r)
    }

    fn gluing(&self, name: &str, g: &GluingDoc) -> Result<Gluing> {
        let ctx = format!("gluing `{name}`");
        match g {
            GluingDoc::Cmon { cmon, extras } => {
                let pointed = |n: &str| -> Result<Arc<CommMonoid>> {
                    let m = lookup(&self.monoids, n, &ctx)?;
                    if !m.base().is_pointed() {
                        return Err(Error::Validation {
                            name: n.to_string(),
                            reason: "gluing needs monoids on the pointed base".into(),
                        });
                    }
                    Ok(m.clone())
                };
                let cmon = cmon
                    .iter()
                    .map(|n| Ok((n.clone(), pointed(n)?.table(0).clone())))
                    .collect::<Result<Vec<_>>>()?;
                let extras = extras
                    .iter()
                    .map(|n| Ok((n.clone(), (*pointed(n)?).clone())))
                    .collect::<Result<Vec<_>>>()?;
                let g = named(name, "gluing", CmonGluing::new(cmon, extras))?;
                Ok(Gluing::Cmon(Box::new(g)))
            }
            GluingDoc::Identity { category } => {
                let c = lookup(&self.categories, category, &ctx)?.clone();
                Ok(Gluing::Plain(named(
                    name,
                    "gluing",
                    GluedCategory::identity(c),
                )?))
            }
            GluingDoc::Explicit {
                a,
                b,
                left,
                right,
                transpositions,
            } => {
                let ca = lookup(&self.categories, a, &ctx)?.clone();
                let cb = lookup(&self.categories, b, &ctx)?.clone();
                let l = lookup(&self.functors, left, &ctx)?.clone();
                let r = lookup(&self.functors, right, &ctx)?.clone();
                let mut phi = Transpositions::new();
                let res = |found: Option<usize>, n: &str| {
                    found.ok_or_else(|| Error::Resolution {
                        name: n.to_string(),
                        context: ctx.clone(),
                    })
                };
                for [x, g, f] in transpositions {
                    phi.insert(
                        res(ca.object_index(x), x)?,
                        res(cb.arrow_index(g), g)?,
                        res(ca.arrow_index(f), f)?,
                    );
                }
                Ok(Gluing::Plain(named(
                    name,
                    "gluing",
                    glue(ca, cb, l, r, phi),
                )?))
            }
        }
    }
}
