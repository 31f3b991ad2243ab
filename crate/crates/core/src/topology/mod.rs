//! Flatness and conservativity probes, cover families and their audits.
//!
//! The flatness and conservativity conditions quantify over every finite
//! diagram and every module map, so the probes here can refute them with a
//! concrete witness but only confirm them up to a [`ProbeBudget`].

mod limits;
mod sheaf;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::actegory::Actegory;
use crate::commalg::{is_epi, is_finite_type, pushout, CommMonoid, MonoidMorphism};
use crate::error::{precondition, shape, Result};
use crate::fincore::LimitShape;
use crate::report::{CheckReport, ProbeBudget, Provenance, Witness};
use crate::scalars::{extend_morphism, module_morphisms, modules_up_to, Module, ModuleMorphism};
use crate::search::sample_within;

pub use limits::{limit_comparison, module_limit, ModuleCone, ModuleDiagram};
pub use sheaf::{sheaf_equalizer_check, CoverData, FunctorArrow, FunctorData, FunctorObject};

/// Outcome of a bounded probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Settled without probing, e.g. because a leg is an isomorphism.
    Proved {
        reason: String,
    },
    Refuted {
        witness: Witness,
    },
    PassedWithinBudget {
        budget: ProbeBudget,
    },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Refuted { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn to_report(&self, id: impl Into<String>) -> CheckReport {
        match self {
            Verdict::Proved { reason } => {
                let mut r = CheckReport::new(id);
                r.note(reason.clone());
                r
            }
            Verdict::Refuted { witness } => CheckReport::failed(id, witness.clone()),
            Verdict::PassedWithinBudget { budget } => {
                let mut r = CheckReport::new(id);
                r.within_budget(budget);
                r
            }
        }
    }
}

fn same_base(actegory: &Actegory, a: &CommMonoid) -> Result<()> {
    use crate::actegory::ActionStructure;
    if actegory.base() != a.base() {
        return Err(shape("the monoid does not live in the actegory's base"));
    }
    Ok(())
}

fn probe_modules(
    actegory: &Arc<Actegory>,
    a: &Arc<CommMonoid>,
    budget: &ProbeBudget,
) -> Vec<Arc<Module>> {
    modules_up_to(actegory, a, budget.max_module_size, true)
        .into_iter()
        .map(Arc::new)
        .collect()
}

/// Every diagram of the given shape on the probe modules, smallest first,
/// sampled down to the budget.
fn diagrams(
    shape: LimitShape,
    actegory: &Arc<Actegory>,
    a: &Arc<CommMonoid>,
    mods: &[Arc<Module>],
    budget: &ProbeBudget,
) -> Vec<ModuleDiagram> {
    let cap = budget.max_test_morphisms;
    let homs = |m: &Arc<Module>, n: &Arc<Module>| module_morphisms(m, n, cap);
    let mut out = Vec::new();
    match shape {
        LimitShape::Terminal => out.push(ModuleDiagram::Terminal {
            actegory: actegory.clone(),
            over: a.clone(),
        }),
        LimitShape::Product => {
            for (i, m) in mods.iter().enumerate() {
                for n in &mods[i..] {
                    out.push(ModuleDiagram::Product(m.clone(), n.clone()));
                }
            }
        }
        LimitShape::Equalizer => {
            for m in mods {
                for n in mods {
                    let fs = homs(m, n);
                    for (i, f) in fs.iter().enumerate() {
                        for g in &fs[i + 1..] {
                            out.push(ModuleDiagram::Equalizer(f.clone(), g.clone()));
                        }
                    }
                }
            }
        }
        LimitShape::Pullback => {
            for c in mods {
                let into: Vec<ModuleMorphism> = mods.iter().flat_map(|m| homs(m, c)).collect();
                for (i, f) in into.iter().enumerate() {
                    for g in &into[i..] {
                        out.push(ModuleDiagram::Pullback(f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    out.sort_by_key(ModuleDiagram::total_size);
    sample_within(out, cap, budget.seed)
}

/// Tests whether `α^*` preserves the finite limits generated within the
/// budget: for each diagram `D`, the canonical map `α^*(lim D) → lim(α^* D)`
/// must be bijective. Shapes are tried in budget order, smallest diagrams
/// first; the first failure is returned.
pub fn flatness_probe(
    alpha: &MonoidMorphism,
    actegory: &Arc<Actegory>,
    budget: &ProbeBudget,
) -> Result<Verdict> {
    budget.validate()?;
    let a = alpha.dom();
    same_base(actegory, a)?;
    if alpha.is_iso() {
        return Ok(Verdict::Proved {
            reason: "extension along an isomorphism is an equivalence".into(),
        });
    }
    let mods = probe_modules(actegory, a, budget);
    for &shape in &budget.diagram_shapes {
        for d in diagrams(shape, actegory, a, &mods, budget) {
            let c = limit_comparison(alpha, &d)?;
            if !c.is_iso() {
                let w = Witness::new("extension of scalars does not preserve this limit")
                    .field("shape", shape)
                    .field("diagram", &d)
                    .field("total_size", d.total_size())
                    .field("extended_limit_size", c.dom().total_size())
                    .field("limit_of_extensions_size", c.cod().total_size());
                return Ok(Verdict::Refuted { witness: w });
            }
        }
    }
    Ok(Verdict::PassedWithinBudget {
        budget: budget.clone(),
    })
}

/// Looks for a non-isomorphism `φ` of `a`-modules that every leg sends to an
/// isomorphism.
pub fn conservativity_probe(
    legs: &[MonoidMorphism],
    actegory: &Arc<Actegory>,
    budget: &ProbeBudget,
) -> Result<Verdict> {
    budget.validate()?;
    let Some(first) = legs.first() else {
        return Err(precondition("conservativity needs at least one leg"));
    };
    let a = first.dom();
    if legs.iter().any(|l| l.dom() != a) {
        return Err(shape("conservativity legs must share their domain"));
    }
    same_base(actegory, a)?;
    if let Some(i) = legs.iter().position(MonoidMorphism::is_iso) {
        return Ok(Verdict::Proved {
            reason: format!("leg {i} is an isomorphism, so its extension reflects isomorphisms"),
        });
    }
    let mods = probe_modules(actegory, a, budget);
    let mut candidates: Vec<ModuleMorphism> = Vec::new();
    for m in &mods {
        for n in &mods {
            candidates.extend(
                module_morphisms(m, n, budget.max_test_morphisms)
                    .into_iter()
                    .filter(|f| !f.is_iso()),
            );
        }
    }
    candidates.sort_by_key(|f| f.dom().total_size() + f.cod().total_size());
    for phi in sample_within(candidates, budget.max_test_morphisms, budget.seed) {
        let mut all_iso = true;
        for leg in legs {
            if !extend_morphism(leg, &phi)?.is_iso() {
                all_iso = false;
                break;
            }
        }
        if all_iso {
            let map: Vec<String> = phi.map().comps().iter().map(|c| format!("{c:?}")).collect();
            let w = Witness::new("a non-isomorphism becomes an isomorphism under every leg")
                .field("map", map.join("|"))
                .field("domain", limits::show_module(phi.dom()))
                .field("codomain", limits::show_module(phi.cod()));
            return Ok(Verdict::Refuted { witness: w });
        }
    }
    Ok(Verdict::PassedWithinBudget {
        budget: budget.clone(),
    })
}

/// A family of monoid maps out of one monoid with a designated finite
/// subfamily that is meant to be jointly conservative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFamily {
    base: Arc<CommMonoid>,
    legs: Vec<MonoidMorphism>,
    finite_subset: Vec<usize>,
}

impl CoverFamily {
    pub fn new(
        base: Arc<CommMonoid>,
        legs: Vec<MonoidMorphism>,
        finite_subset: Vec<usize>,
    ) -> Result<Self> {
        if let Some(i) = legs.iter().position(|l| **l.dom() != *base) {
            return Err(shape(format!("leg {i} does not start at the base")));
        }
        if let Some(&j) = finite_subset.iter().find(|&&j| j >= legs.len()) {
            return Err(shape(format!(
                "finite subset names leg {j} of {}",
                legs.len()
            )));
        }
        Ok(Self {
            base,
            legs,
            finite_subset,
        })
    }

    /// `{id_a}`.
    pub fn identity(base: &Arc<CommMonoid>) -> Self {
        Self {
            base: base.clone(),
            legs: vec![MonoidMorphism::identity(base)],
            finite_subset: vec![0],
        }
    }

    /// `{α}` with `α` itself as the finite subfamily.
    pub fn singleton(leg: MonoidMorphism) -> Self {
        Self {
            base: leg.dom().clone(),
            legs: vec![leg],
            finite_subset: vec![0],
        }
    }

    pub fn base(&self) -> &Arc<CommMonoid> {
        &self.base
    }

    pub fn legs(&self) -> &[MonoidMorphism] {
        &self.legs
    }

    pub fn finite_subset(&self) -> &[usize] {
        &self.finite_subset
    }

    pub fn finite_legs(&self) -> Vec<MonoidMorphism> {
        self.finite_subset
            .iter()
            .map(|&j| self.legs[j].clone())
            .collect()
    }
}

impl fmt::Display for CoverFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let legs: Vec<String> = self.legs.iter().map(MonoidMorphism::describe).collect();
        write!(f, "[{}] with J = {:?}", legs.join("; "), self.finite_subset)
    }
}

/// Every leg passes the flatness probe and the finite subfamily passes the
/// conservativity probe.
pub fn check_fpqc_cover(
    cover: &CoverFamily,
    actegory: &Arc<Actegory>,
    budget: &ProbeBudget,
) -> CheckReport {
    let mut report = CheckReport::new("cover.fpqc");
    for (i, leg) in cover.legs.iter().enumerate() {
        let id = format!("cover.flat[{i}]");
        report.push(match flatness_probe(leg, actegory, budget) {
            Ok(v) => v.to_report(id),
            Err(e) => CheckReport::errored(id, &e),
        });
    }
    let id = "cover.conservative";
    report.push(if cover.finite_subset.is_empty() {
        CheckReport::failed(id, Witness::new("the designated finite subfamily is empty"))
    } else {
        match conservativity_probe(&cover.finite_legs(), actegory, budget) {
            Ok(v) => v.to_report(id),
            Err(e) => CheckReport::errored(id, &e),
        }
    });
    report
}

/// Flat, epimorphism (decided exactly) and of finite type (declared).
pub fn check_spectral_immersion(
    alpha: &MonoidMorphism,
    actegory: &Arc<Actegory>,
    budget: &ProbeBudget,
) -> CheckReport {
    let mut report = CheckReport::new("immersion");
    report.push(match flatness_probe(alpha, actegory, budget) {
        Ok(v) => v.to_report("immersion.flat"),
        Err(e) => CheckReport::errored("immersion.flat", &e),
    });
    let mut epi = CheckReport::new("immersion.epi");
    match is_epi(alpha) {
        Ok((true, _)) => {}
        Ok((false, w)) => epi.fail(w.unwrap_or_else(|| Witness::new("not an epimorphism"))),
        Err(e) => epi = CheckReport::errored("immersion.epi", &e),
    }
    report.push(epi);
    let ft = is_finite_type(alpha);
    let mut finite = CheckReport::new("immersion.finite_type");
    finite.provenance = vec![ft.provenance];
    if !ft.value {
        finite.fail(Witness::new("not of finite type"));
    }
    if ft.provenance == Provenance::Policy {
        finite.note("declared for every map of finite monoids");
    }
    report.push(finite);
    report
}

/// An fpqc cover whose legs are all spectral immersions.
pub fn check_spectral_cover(
    cover: &CoverFamily,
    actegory: &Arc<Actegory>,
    budget: &ProbeBudget,
) -> CheckReport {
    let mut report = CheckReport::new("cover.spectral");
    report.push(check_fpqc_cover(cover, actegory, budget));
    for (i, leg) in cover.legs.iter().enumerate() {
        let mut r = check_spectral_immersion(leg, actegory, budget);
        r.id = format!("cover.immersion[{i}]");
        report.push(r);
    }
    report
}

/// The family of pushouts `b → a_i ⊗_a b` of the legs along `β: a → b`.
pub fn pullback_cover(cover: &CoverFamily, beta: &MonoidMorphism) -> Result<CoverFamily> {
    if **beta.dom() != *cover.base {
        return Err(shape("the base-change map must start at the cover's base"));
    }
    let legs = cover
        .legs
        .iter()
        .map(|leg| Ok(pushout(leg, beta)?.right))
        .collect::<Result<Vec<_>>>()?;
    CoverFamily::new(beta.cod().clone(), legs, cover.finite_subset.clone())
}

/// Refines leg `i` by `refinements[i]`: the legs are the composites
/// `a → a_i → a_ij` in lexicographic order, and the finite subfamily pairs
/// up the two finite subfamilies.
pub fn compose_covers(cover: &CoverFamily, refinements: &[CoverFamily]) -> Result<CoverFamily> {
    if refinements.len() != cover.legs.len() {
        return Err(shape("one refinement per leg is required"));
    }
    let mut legs = Vec::new();
    let mut offsets = Vec::with_capacity(refinements.len());
    for (i, (leg, r)) in cover.legs.iter().zip(refinements).enumerate() {
        if r.base != *leg.cod() {
            return Err(shape(format!(
                "refinement {i} is not based at the codomain of leg {i}"
            )));
        }
        offsets.push(legs.len());
        for next in &r.legs {
            legs.push(leg.then(next)?);
        }
    }
    let finite_subset = cover
        .finite_subset
        .iter()
        .flat_map(|&i| {
            let o = offsets[i];
            refinements[i].finite_subset.iter().map(move |&j| o + j)
        })
        .collect();
    CoverFamily::new(cover.base.clone(), legs, finite_subset)
}

/// Which cover notion an audit re-verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverKind {
    Fpqc,
    Spectral,
}

impl CoverKind {
    pub fn check(
        self,
        cover: &CoverFamily,
        actegory: &Arc<Actegory>,
        budget: &ProbeBudget,
    ) -> CheckReport {
        match self {
            CoverKind::Fpqc => check_fpqc_cover(cover, actegory, budget),
            CoverKind::Spectral => check_spectral_cover(cover, actegory, budget),
        }
    }
}

/// Re-verifies the pretopology axioms on a finite corpus: the supplied
/// covers are covers, isomorphisms (and identities of every base) form
/// singleton covers, and pullbacks along the supplied maps and composites
/// of verified covers are again covers.
pub fn pretopology_audit(
    covers: &[CoverFamily],
    morphisms: &[MonoidMorphism],
    kind: CoverKind,
    actegory: &Arc<Actegory>,
    budget: &ProbeBudget,
) -> CheckReport {
    let mut report = CheckReport::new("pretopology");
    let verify = |c: &CoverFamily| kind.check(c, actegory, budget);
    let record = |item: &mut CheckReport, what: String, r: CheckReport| {
        for &p in &r.provenance {
            item.tag(p);
        }
        item.record(r.is_ok(), || {
            let inner = r.first_failure().and_then(|f| f.witness.clone());
            let w = Witness::new(format!("{what} is not a cover")).field(
                "failing_check",
                &r.first_failure().map_or(r.id.clone(), |f| f.id.clone()),
            );
            match inner {
                Some(i) => w.field("reason", i),
                None => w,
            }
        });
    };

    let mut supplied = CheckReport::new("pretopology.corpus");
    let mut verified = Vec::new();
    for (k, c) in covers.iter().enumerate() {
        let r = verify(c);
        if r.is_ok() {
            verified.push(c.clone());
        }
        record(&mut supplied, format!("corpus cover {k} ({c})"), r);
    }
    report.push(supplied);

    let mut isos = CheckReport::new("pretopology.isomorphisms");
    let mut singletons: Vec<MonoidMorphism> = Vec::new();
    for c in covers {
        let id = MonoidMorphism::identity(&c.base);
        if !singletons.contains(&id) {
            singletons.push(id);
        }
    }
    for f in morphisms.iter().filter(|f| f.is_iso()) {
        if !singletons.contains(f) {
            singletons.push(f.clone());
        }
    }
    for f in &singletons {
        record(
            &mut isos,
            format!("singleton {{{}}}", f.describe()),
            verify(&CoverFamily::singleton(f.clone())),
        );
    }
    report.push(isos);

    let mut pulled = CheckReport::new("pretopology.pullback");
    for c in &verified {
        for beta in morphisms.iter().filter(|b| **b.dom() == *c.base) {
            let what = format!("pullback of {c} along {}", beta.describe());
            match pullback_cover(c, beta) {
                Ok(p) => record(&mut pulled, what, verify(&p)),
                Err(e) => pulled.push(CheckReport::errored(what, &e)),
            }
        }
    }
    report.push(pulled);

    let mut composed = CheckReport::new("pretopology.composition");
    for c in &verified {
        let identities: Vec<CoverFamily> = c
            .legs
            .iter()
            .map(|l| CoverFamily::identity(l.cod()))
            .collect();
        let mut choices = vec![identities.clone()];
        for (i, leg) in c.legs.iter().enumerate() {
            for r in verified.iter().filter(|r| r.base == *leg.cod()) {
                let mut refined = identities.clone();
                refined[i] = r.clone();
                choices.push(refined);
            }
        }
        for refinements in choices {
            let what = format!("composite of {c}");
            match compose_covers(c, &refinements) {
                Ok(p) => record(&mut composed, what, verify(&p)),
                Err(e) => composed.push(CheckReport::errored(what, &e)),
            }
        }
    }
    report.push(composed);
    report
}

#[cfg(test)]
mod tests;
