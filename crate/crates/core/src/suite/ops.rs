//! Dispatch from suite operations to library calls.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::actegory::{check_actegory_coherence, check_colimit_preservation, Actegory};
use crate::basechange::{check_theta_iso, transport_cover_check};
use crate::commalg::{
    check_comm_monoid, cmon0_up_to, comm_monoids_up_to, is_epi, is_finite_type, monoid_homs,
    monoid_isomorphism, monoid_morphisms, pushout, CommMonoid, MonoidHom, MonoidMorphism,
};
use crate::error::{Error, Result};
use crate::fincore::{FinMap, FinSet};
use crate::gluing::{
    adjunction_hat, adjunction_tilde, check_scheme_condition3, free_comm, hom_monoid,
    is_field_object, SetFunctorData,
};
use crate::report::{CheckReport, ProbeBudget, Provenance, Status, Witness};
use crate::scalars::{
    adjunction_sweep, base_change_comparison, check_adjunction, check_comparison,
    check_module_laws, check_triangle_identities, composition_comparison, extend_scalars,
    free_tensor_comparison, modules_up_to, relative_tensor_comparison, unit, unit_comparison,
    Module, ModuleMorphism,
};
use crate::topology::{
    check_fpqc_cover, check_spectral_cover, check_spectral_immersion, compose_covers,
    conservativity_probe, flatness_probe, pretopology_audit, pullback_cover, sheaf_equalizer_check,
    Verdict,
};

use super::doc::{Expect, ModulesDoc, MonoidsDoc, OpDoc};
use super::registry::{lookup, Gluing, Registry};

/// Short name of the concept a check exercises, shown next to every row of
/// a human-readable report.
pub fn concept(op: &OpDoc) -> &'static str {
    match op {
        OpDoc::CheckCategoryLaws { .. } => "finite category laws",
        OpDoc::CheckFunctorLaws { .. } => "functor laws",
        OpDoc::CheckCommMonoid { .. } => "commutative monoid object",
        OpDoc::CheckMorphismLaws { .. } => "monoid morphism",
        OpDoc::CheckActegoryCoherence { .. } => "actegory coherence",
        OpDoc::CheckColimitPreservation { .. } => "action preserves colimits",
        OpDoc::CheckModuleLaws { .. } => "module object laws",
        OpDoc::Pushout { .. } => "pushout of commutative monoids",
        OpDoc::IsEpi { .. } | OpDoc::EpiSearch { .. } => "epimorphism criterion",
        OpDoc::IsFiniteType { .. } => "finite type (declared)",
        OpDoc::ExtendScalars { .. } => "extension of scalars",
        OpDoc::AdjunctionTranspose { .. } | OpDoc::AdjunctionSweep { .. } => {
            "extension-restriction adjunction"
        }
        OpDoc::UnitCounit { .. } => "unit, counit and triangle identities",
        OpDoc::AssocIso { .. } => "associativity of relative tensor",
        OpDoc::PseudofunctorChecks { .. } => "extension is pseudofunctorial",
        OpDoc::BaseChangeIso { .. } => "base change along a pushout",
        OpDoc::ComparisonSweep { .. } => "canonical comparison isomorphisms",
        OpDoc::FlatnessProbe { .. } => "flat morphism",
        OpDoc::ConservativityProbe { .. } => "jointly conservative family",
        OpDoc::CheckFpqcCover { .. } => "fpqc cover",
        OpDoc::CheckSpectralImmersion { .. } => "spectral immersion",
        OpDoc::CheckSpectralCover { .. } => "spectral cover",
        OpDoc::PullbackCover { .. } => "covers stable under pullback",
        OpDoc::ComposeCovers { .. } => "covers stable under composition",
        OpDoc::PretopologyAudit { .. } => "Grothendieck pretopology",
        OpDoc::SheafEqualizerCheck { .. } => "sheaf equalizer condition",
        OpDoc::CheckThetaIso { .. } => "base-change comparison θ",
        OpDoc::TransportCoverCheck { .. } => "covers transported along base change",
        OpDoc::HomMonoid { .. } => "hom-monoid C(1, c)",
        OpDoc::FreeComm { .. } => "free object C[M]",
        OpDoc::AdjunctionHatTilde { .. } => "free/hom-monoid adjunction",
        OpDoc::Glue { .. } => "glued category",
        OpDoc::Delta { .. } => "seam morphisms δ",
        OpDoc::IsFieldObject { .. } => "field object",
        OpDoc::CheckSchemeCondition3 { .. } => "scheme compatibility on field objects",
    }
}

/// Verifies that every name an operation mentions is declared.
pub fn check_references(reg: &Registry, op: &OpDoc, id: &str) -> Result<()> {
    let ctx = format!("check `{id}`");
    let c = ctx.as_str();
    macro_rules! need {
        ($map:ident, $name:expr) => {
            lookup(&reg.$map, $name, c).map(|_| ())?
        };
    }
    let modules = |m: &ModulesDoc| -> Result<()> {
        match m {
            ModulesDoc::Named(ns) => ns
                .iter()
                .try_for_each(|n| lookup(&reg.modules, n, c).map(|_| ())),
            ModulesDoc::UpTo { action, .. } => lookup(&reg.actions, action, c).map(|_| ()),
        }
    };
    let monoids = |m: &MonoidsDoc| -> Result<()> {
        match m {
            MonoidsDoc::Named(ns) => ns
                .iter()
                .try_for_each(|n| lookup(&reg.monoids, n, c).map(|_| ())),
            MonoidsDoc::UpTo { .. } => Ok(()),
        }
    };
    match op {
        OpDoc::CheckCategoryLaws { category } => need!(categories, category),
        OpDoc::CheckFunctorLaws { functor } => need!(functors, functor),
        OpDoc::CheckCommMonoid { monoid }
        | OpDoc::FreeComm { monoid }
        | OpDoc::IsFieldObject { monoid, .. } => need!(monoids, monoid),
        OpDoc::HomMonoid { monoid, expect } => {
            need!(monoids, monoid);
            if let Some(e) = expect {
                need!(monoids, e);
            }
        }
        OpDoc::CheckMorphismLaws { morphism }
        | OpDoc::IsEpi { morphism, .. }
        | OpDoc::IsFiniteType { morphism }
        | OpDoc::EpiSearch { morphism, .. } => need!(morphisms, morphism),
        OpDoc::CheckActegoryCoherence { action } | OpDoc::CheckColimitPreservation { action } => {
            need!(actions, action)
        }
        OpDoc::CheckModuleLaws { module } => need!(modules, module),
        OpDoc::Pushout { left, right, .. } => {
            need!(morphisms, left);
            need!(morphisms, right);
        }
        OpDoc::ExtendScalars { morphism, module } => {
            need!(morphisms, morphism);
            need!(modules, module);
        }
        OpDoc::AdjunctionTranspose {
            morphism,
            module,
            target,
        }
        | OpDoc::UnitCounit {
            morphism,
            module,
            target,
        } => {
            need!(morphisms, morphism);
            need!(modules, module);
            need!(modules, target);
        }
        OpDoc::AdjunctionSweep {
            action, monoids: m, ..
        } => {
            need!(actions, action);
            monoids(m)?;
        }
        OpDoc::AssocIso {
            alpha,
            beta,
            gamma,
            modules: m,
        } => {
            need!(morphisms, alpha);
            need!(morphisms, beta);
            need!(morphisms, gamma);
            modules(m)?;
        }
        OpDoc::PseudofunctorChecks {
            alpha,
            beta,
            modules: m,
        }
        | OpDoc::BaseChangeIso {
            alpha,
            beta,
            modules: m,
        } => {
            need!(morphisms, alpha);
            need!(morphisms, beta);
            modules(m)?;
        }
        OpDoc::ComparisonSweep {
            action, morphisms, ..
        } => {
            need!(actions, action);
            for m in morphisms {
                need!(morphisms, m);
            }
        }
        OpDoc::FlatnessProbe {
            morphism, action, ..
        }
        | OpDoc::CheckSpectralImmersion { morphism, action } => {
            need!(morphisms, morphism);
            need!(actions, action);
        }
        OpDoc::ConservativityProbe { legs, action, .. } => {
            need!(actions, action);
            for l in legs {
                need!(morphisms, l);
            }
        }
        OpDoc::CheckFpqcCover { cover, action } | OpDoc::CheckSpectralCover { cover, action } => {
            need!(covers, cover);
            need!(actions, action);
        }
        OpDoc::PullbackCover {
            cover,
            along,
            action,
            ..
        } => {
            need!(covers, cover);
            need!(morphisms, along);
            need!(actions, action);
        }
        OpDoc::ComposeCovers {
            cover,
            refinements,
            action,
            ..
        } => {
            need!(covers, cover);
            need!(actions, action);
            for r in refinements {
                need!(covers, r);
            }
        }
        OpDoc::PretopologyAudit {
            covers,
            morphisms,
            action,
            ..
        } => {
            need!(actions, action);
            for x in covers {
                need!(covers, x);
            }
            for m in morphisms {
                need!(morphisms, m);
            }
        }
        OpDoc::SheafEqualizerCheck { functor, cover, .. } => {
            need!(functor_data, functor);
            need!(covers, cover);
        }
        OpDoc::CheckThetaIso {
            morphism,
            adjunction,
            linear,
            modules: m,
        } => {
            need!(morphisms, morphism);
            need!(adjunctions, adjunction);
            need!(linear, linear);
            modules(m)?;
        }
        OpDoc::TransportCoverCheck {
            cover,
            adjunction,
            linear,
            action,
        } => {
            need!(covers, cover);
            need!(adjunctions, adjunction);
            need!(linear, linear);
            need!(actions, action);
        }
        OpDoc::AdjunctionHatTilde { cmon, targets, .. } => {
            monoids(cmon)?;
            monoids(targets)?;
        }
        OpDoc::Glue { gluing } | OpDoc::Delta { gluing } => need!(gluings, gluing),
        OpDoc::CheckSchemeCondition3 { gluing, .. } => need!(gluings, gluing),
    }
    Ok(())
}

fn renamed(mut r: CheckReport, id: &str) -> CheckReport {
    r.id = id.to_string();
    r
}

fn witness_of(r: &CheckReport) -> Witness {
    let bad = r.first_failure().unwrap_or(r);
    let w = bad
        .witness
        .clone()
        .unwrap_or_else(|| Witness::new(format!("{} failed", bad.id)));
    if bad.id == r.id {
        w
    } else {
        w.field("check", &bad.id)
    }
}

fn verdict_report(id: &str, v: &Verdict, expect: Option<Expect>) -> CheckReport {
    let Some(expect) = expect else {
        return v.to_report(id);
    };
    let refuted = v.is_refuted();
    let mut r = CheckReport::new(id);
    let got = if refuted { "refuted" } else { "not refuted" };
    match (expect, refuted) {
        (Expect::Refuted, true) => {
            r.witness = v.witness().cloned();
            r.note("refuted as expected");
        }
        (Expect::Passed, false) => {
            r = v.to_report(id);
            r.note("not refuted, as expected");
        }
        _ => {
            let mut w = Witness::new(format!("expected {expect:?}, probe {got}"));
            if let Some(inner) = v.witness() {
                w = w.field("witness", inner);
            }
            r.fail(w);
        }
    }
    r
}

fn monoid_list(reg: &Registry, m: &MonoidsDoc, pointed: bool) -> Result<Vec<Arc<CommMonoid>>> {
    match m {
        MonoidsDoc::Named(ns) => ns
            .iter()
            .map(|n| lookup(&reg.monoids, n, "monoid list").cloned())
            .collect(),
        MonoidsDoc::UpTo { max_order } if pointed => cmon0_up_to(*max_order)
            .into_iter()
            .map(|t| CommMonoid::pointed(t).map(Arc::new))
            .collect(),
        MonoidsDoc::UpTo { max_order } => Ok(comm_monoids_up_to(*max_order)
            .into_iter()
            .map(|t| Arc::new(CommMonoid::plain(t)))
            .collect()),
    }
}

fn module_list(reg: &Registry, m: &ModulesDoc, over: &Arc<CommMonoid>) -> Result<Vec<Arc<Module>>> {
    match m {
        ModulesDoc::Named(ns) => ns
            .iter()
            .map(|n| {
                let module = lookup(&reg.modules, n, "module list")?;
                if module.over() != over {
                    return Err(Error::Shape(format!(
                        "module `{n}` is not over the monoid this check needs"
                    )));
                }
                Ok(module.clone())
            })
            .collect(),
        ModulesDoc::UpTo { action, max_size } => {
            let act = lookup(&reg.actions, action, "module list")?;
            Ok(modules_up_to(act, over, *max_size, true)
                .into_iter()
                .map(Arc::new)
                .collect())
        }
    }
}

/// One item per comparison kind, one instance per comparison map.
struct Comparisons {
    items: BTreeMap<&'static str, CheckReport>,
}

impl Comparisons {
    fn new() -> Self {
        Self {
            items: BTreeMap::new(),
        }
    }

    fn add(&mut self, kind: &'static str, f: &ModuleMorphism, what: impl FnOnce() -> String) {
        let r = check_comparison(kind, f);
        let item = self
            .items
            .entry(kind)
            .or_insert_with(|| CheckReport::new(format!("comparison.{kind}")));
        item.record(r.passed(), || witness_of(&r).field("instance", what()));
    }

    fn into_report(self, id: &str) -> CheckReport {
        let mut report = CheckReport::new(id);
        for (_, item) in self.items {
            report.push(item);
        }
        report
    }
}

fn comparison_sweep(
    act: &Arc<Actegory>,
    morphisms: &[MonoidMorphism],
    max_module: usize,
    id: &str,
) -> Result<CheckReport> {
    let mut monoids: Vec<Arc<CommMonoid>> = Vec::new();
    for m in morphisms {
        for a in [m.dom(), m.cod()] {
            if !monoids.contains(a) {
                monoids.push(a.clone());
            }
        }
    }
    let modules: Vec<Vec<Arc<Module>>> = monoids
        .iter()
        .map(|a| {
            modules_up_to(act, a, max_module, true)
                .into_iter()
                .map(Arc::new)
                .collect()
        })
        .collect();
    let over = |a: &Arc<CommMonoid>| -> &[Arc<Module>] {
        let i = monoids.iter().position(|b| b == a).expect("collected");
        &modules[i]
    };
    let show = |m: &Module| format!("{:?}", m.carrier().sizes());
    let mut out = Comparisons::new();
    for ms in &modules {
        for m in ms {
            out.add("unit", &unit_comparison(m)?, || show(m));
        }
    }
    for (i, alpha) in morphisms.iter().enumerate() {
        for (j, beta) in morphisms.iter().enumerate() {
            let what = |m: &Module| format!("({i}, {j}) on {}", show(m));
            if alpha.cod() == beta.dom() {
                for m in over(alpha.dom()) {
                    let f = composition_comparison(alpha, beta, m)?;
                    out.add("composition", &f, || what(m));
                }
            }
            if alpha.dom() != beta.dom() {
                continue;
            }
            let p = pushout(alpha, beta)?;
            for m in over(alpha.cod()) {
                let f = base_change_comparison(alpha, beta, &p.left, &p.right, m)?;
                out.add("base_change", &f, || what(m));
            }
            for c in act.objects_up_to(max_module) {
                let f = free_tensor_comparison(act, alpha, beta, &c)?;
                out.add("free_tensor", &f, || {
                    format!("({i}, {j}) on {:?}", c.sizes())
                });
            }
            for (k, gamma) in morphisms.iter().enumerate() {
                if gamma.cod() != beta.cod() {
                    continue;
                }
                for m in over(gamma.dom()) {
                    let f = relative_tensor_comparison(alpha, beta, gamma, m)?;
                    out.add("relative_tensor", &f, || {
                        format!("({i}, {j}, {k}) on {}", show(m))
                    });
                }
            }
        }
    }
    let mut report = out.into_report(id);
    report.note(format!("{} comparison maps", report.instances));
    Ok(report)
}

fn epi_search(alpha: &MonoidMorphism, max_codomain: usize, id: &str) -> Result<CheckReport> {
    if !alpha.cod().base().is_cartesian_sets() {
        return Err(Error::UnsupportedBase(
            "the exhaustive epimorphism search runs on the set base".into(),
        ));
    }
    let (epi, _) = is_epi(alpha)?;
    let mut report = CheckReport::new(id);
    let mut found = None;
    let mut pairs = 0u64;
    'outer: for t in comm_monoids_up_to(max_codomain) {
        let c = Arc::new(CommMonoid::plain(t));
        let maps = monoid_morphisms(alpha.cod(), &c);
        for (i, g) in maps.iter().enumerate() {
            for h in &maps[i + 1..] {
                pairs += 1;
                if alpha.then(g)?.comps() == alpha.then(h)?.comps() {
                    found = Some(
                        Witness::new("two maps agree after the morphism")
                            .field("first", g.describe())
                            .field("second", h.describe()),
                    );
                    break 'outer;
                }
            }
        }
    }
    let mut sound = CheckReport::new("epi_search.sound");
    sound.instances = pairs;
    if let (true, Some(w)) = (epi, &found) {
        sound.fail(w.clone().field("is_epi", "true"));
    }
    report.push(sound);
    let mut witnessed = CheckReport::new("epi_search.witnessed");
    if !epi {
        // The cokernel pair always distinguishes a non-epimorphism.
        let p = pushout(alpha, alpha)?;
        let agree = alpha.then(&p.left)?.comps() == alpha.then(&p.right)?.comps();
        witnessed.record(agree && p.left.comps() != p.right.comps(), || {
            Witness::new("the cokernel pair does not separate the morphism")
        });
        if found.is_none() {
            witnessed.note(format!(
                "no separating pair with codomain of size ≤ {max_codomain}"
            ));
        }
    }
    report.push(witnessed);
    report.note(format!("is_epi = {epi}"));
    Ok(report)
}

fn hat_tilde(
    cmon: &[Arc<CommMonoid>],
    targets: &[Arc<CommMonoid>],
    naturality_max: usize,
    id: &str,
) -> Result<CheckReport> {
    let mut left = CheckReport::new("hat_tilde.tilde_after_hat");
    let mut right = CheckReport::new("hat_tilde.hat_after_tilde");
    let mut natural = CheckReport::new("hat_tilde.natural_in_target");
    for m in cmon {
        let table = Arc::new(m.table(0).clone());
        let free = free_comm(&table)?;
        for a in targets {
            let hm = hom_monoid(a)?;
            for alpha in monoid_morphisms(free.monoid(), a) {
                let hat = adjunction_hat(&free, &alpha)?;
                let back = adjunction_tilde(&free, &hat, a)?;
                left.record(back.comps() == alpha.comps(), || {
                    Witness::new("tilde(hat(α)) ≠ α").field("alpha", alpha.describe())
                });
            }
            for map in monoid_homs(&table, hm.table()) {
                if table.zero().map(|z| map[z]) != hm.table().zero() {
                    continue;
                }
                let beta = MonoidHom::new(table.clone(), hm.table().clone(), map)?;
                let tilde = adjunction_tilde(&free, &beta, a)?;
                let again = adjunction_hat(&free, &tilde)?;
                right.record(again.map() == beta.map(), || {
                    Witness::new("hat(tilde(β)) ≠ β").field("beta", format!("{:?}", beta.map()))
                });
            }
        }
        let small: Vec<&Arc<CommMonoid>> = targets
            .iter()
            .filter(|a| a.size(0) <= naturality_max)
            .collect();
        for a in &small {
            let ha = hom_monoid(a)?;
            let alphas = monoid_morphisms(free.monoid(), a);
            for b in &small {
                let hb = hom_monoid(b)?;
                for g in monoid_morphisms(a, b) {
                    let gc = g.as_carrier_map();
                    for alpha in &alphas {
                        let lhs = adjunction_hat(&free, &alpha.then(&g)?)?;
                        let hat = adjunction_hat(&free, alpha)?;
                        let ok = (0..table.size()).all(|k| {
                            ha.map(hat.apply(k))
                                .then(&gc)
                                .is_ok_and(|pushed| Some(lhs.apply(k)) == hb.index_of(&pushed))
                        });
                        natural.record(ok, || {
                            Witness::new("hat is not natural in the target")
                                .field("alpha", alpha.describe())
                                .field("g", g.describe())
                        });
                    }
                }
            }
        }
    }
    let mut report = CheckReport::new(id);
    report.push(left);
    report.push(right);
    report.push(natural);
    Ok(report)
}

fn scheme_condition3(
    gluing: &Gluing,
    represented_by: &str,
    objects: &BTreeMap<String, Vec<String>>,
    arrows: &BTreeMap<String, BTreeMap<String, String>>,
    fields: Option<&[String]>,
) -> Result<CheckReport> {
    let glued = gluing.glued();
    let cat = glued.category();
    let res = |found: Option<usize>, n: &str| {
        found.ok_or_else(|| Error::Resolution {
            name: n.to_string(),
            context: "scheme condition check".into(),
        })
    };
    let x = res(cat.object_index(represented_by), represented_by)?;
    let mut f = SetFunctorData::representable(cat, x);
    for (o, labels) in objects {
        f.set_object(
            res(cat.object_index(o), o)?,
            FinSet::new(labels.iter().cloned())?,
        )?;
    }
    for (a, map) in arrows {
        let k = res(cat.arrow_index(a), a)?;
        let arrow = cat.arrow(k);
        let missing = || Error::Incomplete(format!("no value at an endpoint of `{a}`"));
        let dom = f.object(arrow.src).ok_or_else(missing)?.clone();
        let cod = f.object(arrow.tgt).ok_or_else(missing)?.clone();
        let table = dom
            .labels()
            .iter()
            .map(|l| {
                let v = map
                    .get(l)
                    .ok_or_else(|| Error::Incomplete(format!("no image of `{l}` under `{a}`")))?;
                res(cod.index_of(v), v)
            })
            .collect::<Result<Vec<_>>>()?;
        f.set_arrow(k, FinMap::new(dom, cod, table)?)?;
    }
    let b = glued.b_part();
    let flags = match (fields, gluing) {
        (Some(names), _) => {
            for n in names {
                res(b.object_index(n), n)?;
            }
            b.objects().iter().map(|o| names.contains(o)).collect()
        }
        (None, Gluing::Cmon(g)) => g.field_flags()?,
        (None, Gluing::Plain(_)) => {
            return Err(Error::Incomplete(
                "field flags are needed for a gluing not built from monoids".into(),
            ))
        }
    };
    check_scheme_condition3(glued, &f, &flags)
}

/// Runs one operation. Construction errors surface as `Err`; law failures
/// are failing reports.
pub fn run_op(reg: &Registry, op: &OpDoc, budget: &ProbeBudget, id: &str) -> Result<CheckReport> {
    let ctx = format!("check `{id}`");
    let c = ctx.as_str();
    let morphism = |n: &str| lookup(&reg.morphisms, n, c);
    let action = |n: &str| lookup(&reg.actions, n, c);
    let module = |n: &str| lookup(&reg.modules, n, c);
    let monoid = |n: &str| lookup(&reg.monoids, n, c);
    let kind_check = |kind: crate::topology::CoverKind, cover, act| kind.check(cover, act, budget);
    Ok(match op {
        OpDoc::CheckCategoryLaws { category } => {
            renamed(lookup(&reg.categories, category, c)?.check_laws(), id)
        }
        OpDoc::CheckFunctorLaws { functor } => {
            renamed(lookup(&reg.functors, functor, c)?.check_laws(), id)
        }
        OpDoc::CheckCommMonoid { monoid: m } => renamed(check_comm_monoid(monoid(m)?), id),
        OpDoc::CheckMorphismLaws { morphism: m } => renamed(morphism(m)?.check_laws(), id),
        OpDoc::CheckActegoryCoherence { action: a } => {
            renamed(check_actegory_coherence(&**action(a)?, budget), id)
        }
        OpDoc::CheckColimitPreservation { action: a } => {
            renamed(check_colimit_preservation(&**action(a)?, budget), id)
        }
        OpDoc::CheckModuleLaws { module: m } => renamed(check_module_laws(module(m)?), id),
        OpDoc::Pushout {
            left,
            right,
            expect_size,
        } => {
            let (l, r) = (morphism(left)?, morphism(right)?);
            let p = pushout(l, r)?;
            let mut report = CheckReport::new(id);
            let mut square = CheckReport::new("pushout.commutes");
            square.record(
                l.then(&p.left)?.comps() == r.then(&p.right)?.comps(),
                || Witness::new("ι1 ∘ α ≠ ι2 ∘ β"),
            );
            report.push(square);
            report.push(renamed(check_comm_monoid(&p.object), "pushout.object"));
            if let Some(n) = expect_size {
                let mut size = CheckReport::new("pushout.size");
                size.record(p.object.total_size() == *n, || {
                    Witness::new("unexpected pushout size")
                        .field("expected", n)
                        .field("found", p.object.total_size())
                });
                report.push(size);
            }
            report.note(format!("pushout has {} elements", p.object.total_size()));
            report
        }
        OpDoc::IsEpi {
            morphism: m,
            expect,
        } => {
            let (value, w) = is_epi(morphism(m)?)?;
            let mut report = CheckReport::new(id);
            report.note(format!("is_epi = {value}"));
            if let Some(e) = expect {
                report.record(value == *e, || {
                    let base = Witness::new(format!("expected is_epi = {e}, found {value}"));
                    match &w {
                        Some(inner) => base.field("reason", inner),
                        None => base,
                    }
                });
            } else if let Some(inner) = w {
                report.note(format!("separated: {inner}"));
            }
            report
        }
        OpDoc::IsFiniteType { morphism: m } => {
            let t = is_finite_type(morphism(m)?);
            let mut report = CheckReport::new(id);
            report.provenance = vec![t.provenance];
            if !t.value {
                report.fail(Witness::new("not of finite type"));
            }
            if t.provenance == Provenance::Policy {
                report.note("declared for every map of finite monoids");
            }
            report
        }
        OpDoc::EpiSearch {
            morphism: m,
            max_codomain,
        } => epi_search(morphism(m)?, *max_codomain, id)?,
        OpDoc::ExtendScalars {
            morphism: m,
            module: n,
        } => {
            let alpha = morphism(m)?;
            let ext = extend_scalars(alpha, module(n)?)?;
            let mut report = CheckReport::new(id);
            report.push(renamed(
                check_module_laws(&ext.module),
                "extend.module_laws",
            ));
            let eta = unit(alpha, &ext)?;
            report.push(renamed(eta.check_equivariance(), "extend.unit_equivariant"));
            report.note(format!(
                "extension has sizes {:?}",
                ext.module.carrier().sizes()
            ));
            report
        }
        OpDoc::AdjunctionTranspose {
            morphism: m,
            module: s,
            target: t,
        } => {
            let alpha = morphism(m)?;
            let ext = extend_scalars(alpha, module(s)?)?;
            renamed(check_adjunction(alpha, &ext, module(t)?)?, id)
        }
        OpDoc::UnitCounit {
            morphism: m,
            module: s,
            target: t,
        } => renamed(
            check_triangle_identities(morphism(m)?, module(s)?, module(t)?)?,
            id,
        ),
        OpDoc::AdjunctionSweep {
            action: a,
            monoids,
            max_module,
        } => {
            let act = action(a)?;
            let list = monoid_list(reg, monoids, act.is_pointed())?;
            renamed(adjunction_sweep(act, &list, *max_module), id)
        }
        OpDoc::AssocIso {
            alpha,
            beta,
            gamma,
            modules,
        } => {
            let (a, b, g) = (morphism(alpha)?, morphism(beta)?, morphism(gamma)?);
            let mut out = Comparisons::new();
            for m in module_list(reg, modules, g.dom())? {
                let f = relative_tensor_comparison(a, b, g, &m)?;
                out.add("relative_tensor", &f, || {
                    format!("{:?}", m.carrier().sizes())
                });
            }
            out.into_report(id)
        }
        OpDoc::PseudofunctorChecks {
            alpha,
            beta,
            modules,
        } => {
            let (a, b) = (morphism(alpha)?, morphism(beta)?);
            let mut out = Comparisons::new();
            for m in module_list(reg, modules, a.dom())? {
                let what = || format!("{:?}", m.carrier().sizes());
                out.add("composition", &composition_comparison(a, b, &m)?, what);
                out.add("unit", &unit_comparison(&m)?, what);
            }
            out.into_report(id)
        }
        OpDoc::BaseChangeIso {
            alpha,
            beta,
            modules,
        } => {
            let (a, b) = (morphism(alpha)?, morphism(beta)?);
            let p = pushout(a, b)?;
            let mut out = Comparisons::new();
            for m in module_list(reg, modules, a.cod())? {
                let f = base_change_comparison(a, b, &p.left, &p.right, &m)?;
                out.add("base_change", &f, || format!("{:?}", m.carrier().sizes()));
            }
            out.into_report(id)
        }
        OpDoc::ComparisonSweep {
            action: a,
            morphisms,
            max_module,
        } => {
            let ms = morphisms
                .iter()
                .map(|m| morphism(m).cloned())
                .collect::<Result<Vec<_>>>()?;
            comparison_sweep(action(a)?, &ms, *max_module, id)?
        }
        OpDoc::FlatnessProbe {
            morphism: m,
            action: a,
            expect,
        } => verdict_report(
            id,
            &flatness_probe(morphism(m)?, action(a)?, budget)?,
            *expect,
        ),
        OpDoc::ConservativityProbe {
            legs,
            action: a,
            expect,
        } => {
            let legs = legs
                .iter()
                .map(|l| morphism(l).cloned())
                .collect::<Result<Vec<_>>>()?;
            verdict_report(
                id,
                &conservativity_probe(&legs, action(a)?, budget)?,
                *expect,
            )
        }
        OpDoc::CheckFpqcCover { cover, action: a } => renamed(
            check_fpqc_cover(lookup(&reg.covers, cover, c)?, action(a)?, budget),
            id,
        ),
        OpDoc::CheckSpectralImmersion {
            morphism: m,
            action: a,
        } => renamed(
            check_spectral_immersion(morphism(m)?, action(a)?, budget),
            id,
        ),
        OpDoc::CheckSpectralCover { cover, action: a } => renamed(
            check_spectral_cover(lookup(&reg.covers, cover, c)?, action(a)?, budget),
            id,
        ),
        OpDoc::PullbackCover {
            cover,
            along,
            action: a,
            kind,
        } => {
            let pulled = pullback_cover(lookup(&reg.covers, cover, c)?, morphism(along)?)?;
            let mut r = renamed(kind_check(*kind, &pulled, action(a)?), id);
            r.note(format!("pulled back: {pulled}"));
            r
        }
        OpDoc::ComposeCovers {
            cover,
            refinements,
            action: a,
            kind,
        } => {
            let refs = refinements
                .iter()
                .map(|r| lookup(&reg.covers, r, c).cloned())
                .collect::<Result<Vec<_>>>()?;
            let composed = compose_covers(lookup(&reg.covers, cover, c)?, &refs)?;
            let mut r = renamed(kind_check(*kind, &composed, action(a)?), id);
            r.note(format!("composite: {composed}"));
            r
        }
        OpDoc::PretopologyAudit {
            covers,
            morphisms,
            action: a,
            kind,
        } => {
            let cs = covers
                .iter()
                .map(|x| lookup(&reg.covers, x, c).cloned())
                .collect::<Result<Vec<_>>>()?;
            let ms = morphisms
                .iter()
                .map(|m| morphism(m).cloned())
                .collect::<Result<Vec<_>>>()?;
            renamed(pretopology_audit(&cs, &ms, *kind, action(a)?, budget), id)
        }
        OpDoc::SheafEqualizerCheck {
            functor,
            cover,
            expect_sheaf,
        } => {
            let r = sheaf_equalizer_check(
                lookup(&reg.functor_data, functor, c)?,
                lookup(&reg.covers, cover, c)?,
            )?;
            match expect_sheaf {
                None | Some(true) => renamed(r, id),
                Some(false) => {
                    let mut out = CheckReport::new(id);
                    if r.is_ok() {
                        out.fail(Witness::new("expected the sheaf condition to fail"));
                    } else {
                        out.note(format!("not a sheaf, as expected: {}", witness_of(&r)));
                    }
                    out
                }
            }
        }
        OpDoc::CheckThetaIso {
            morphism: m,
            adjunction,
            linear,
            modules,
        } => {
            let alpha = morphism(m)?;
            let adj = lookup(&reg.adjunctions, adjunction, c)?;
            let l = lookup(&reg.linear, linear, c)?;
            let ba = Arc::new(adj.left().apply_monoid(alpha.dom())?);
            let mut report = CheckReport::new(id);
            for (k, n) in module_list(reg, modules, &ba)?.iter().enumerate() {
                report.push(renamed(
                    check_theta_iso(alpha, adj, l, n, budget),
                    &format!("theta[{k}]"),
                ));
            }
            let unmet = report
                .items
                .iter()
                .filter(|r| {
                    r.item("theta.bijective")
                        .is_some_and(|b| b.status == Status::Skipped)
                })
                .count();
            if unmet > 0 {
                report.note(format!(
                    "hypotheses unmet on {unmet} of {} modules",
                    report.items.len()
                ));
            }
            report
        }
        OpDoc::TransportCoverCheck {
            cover,
            adjunction,
            linear,
            action: a,
        } => renamed(
            transport_cover_check(
                lookup(&reg.covers, cover, c)?,
                lookup(&reg.adjunctions, adjunction, c)?,
                lookup(&reg.linear, linear, c)?,
                action(a)?,
                budget,
            ),
            id,
        ),
        OpDoc::HomMonoid { monoid: m, expect } => {
            let hm = hom_monoid(monoid(m)?)?;
            let mut report = CheckReport::new(id);
            report.push(renamed(hm.table().check_laws(true), "hom_monoid.laws"));
            if let Some(e) = expect {
                let mut iso = CheckReport::new("hom_monoid.expected");
                iso.record(
                    monoid_isomorphism(hm.table(), monoid(e)?.table(0)).is_some(),
                    || Witness::new(format!("C(1, {m}) is not isomorphic to {e}")),
                );
                report.push(iso);
            }
            report.note(format!("C(1, {m}) has {} elements", hm.table().size()));
            report
        }
        OpDoc::FreeComm { monoid: m } => {
            let table = monoid(m)?.table(0).clone();
            let free = free_comm(&table)?;
            let mut report = CheckReport::new(id);
            report.push(renamed(check_comm_monoid(free.monoid()), "free_comm.laws"));
            let back = hom_monoid(free.monoid())?;
            let mut trip = CheckReport::new("free_comm.round_trip");
            trip.record(monoid_isomorphism(&table, back.table()).is_some(), || {
                Witness::new("C(1, C[M]) is not isomorphic to M")
            });
            report.push(trip);
            report
        }
        OpDoc::AdjunctionHatTilde {
            cmon,
            targets,
            naturality_max,
        } => hat_tilde(
            &monoid_list(reg, cmon, true)?,
            &monoid_list(reg, targets, true)?,
            naturality_max.unwrap_or(usize::MAX),
            id,
        )?,
        OpDoc::Glue { gluing } => renamed(lookup(&reg.gluings, gluing, c)?.glued().check(), id),
        OpDoc::Delta { gluing } => {
            let g = lookup(&reg.gluings, gluing, c)?.glued();
            let mut report = CheckReport::new(id);
            let mut exists = CheckReport::new("delta.defined");
            for b in 0..g.b_part().object_count() {
                let d = g.delta(b);
                exists.record(d.is_ok(), || {
                    Witness::new("no seam morphism").field("object", &g.b_part().objects()[b])
                });
            }
            report.push(exists);
            report.push(g.check_delta_naturality());
            report
        }
        OpDoc::IsFieldObject { monoid: m, expect } => {
            let value = is_field_object(monoid(m)?)?;
            let mut report = CheckReport::new(id);
            report.record(value == *expect, || {
                Witness::new(format!(
                    "expected is_field_object = {expect}, found {value}"
                ))
                .field("monoid", m)
            });
            report.note(format!("is_field_object = {value}"));
            report
        }
        OpDoc::CheckSchemeCondition3 {
            gluing,
            represented_by,
            objects,
            arrows,
            fields,
        } => renamed(
            scheme_condition3(
                lookup(&reg.gluings, gluing, c)?,
                represented_by,
                objects,
                arrows,
                fields.as_deref(),
            )?,
            id,
        ),
    })
}
