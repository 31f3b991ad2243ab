//! The induced module functor `L^a`, the comparison
//! `θ: b ⊠_a L(n) → L(B(b) ⊞_{B(a)} n)` and cover transport along `B`.

use std::sync::Arc;

use crate::actegory::{restrict_action, MonoidalFunctor};
use crate::carrier::{descend, CarrierMap};
use crate::commalg::{CommMonoid, MonoidMorphism};
use crate::error::{shape, Result};
use crate::report::{CheckReport, ProbeBudget, Status, Witness};
use crate::scalars::{extend_scalars, Module, ModuleMorphism};
use crate::topology::{check_fpqc_cover, CoverFamily};

use super::{LaxLinearFunctor, MonoidalAdjunction};

/// `L^a: Mod_N(B(a)) → Mod_M(a)`, `(n, ρ) ↦ (L(n), L(ρ) ∘ Γ_{a,n})`.
#[derive(Clone, Debug)]
pub struct InducedModuleFunctor {
    l: LaxLinearFunctor,
    over: Arc<CommMonoid>,
    image: Arc<CommMonoid>,
}

impl InducedModuleFunctor {
    pub fn new(l: &LaxLinearFunctor, b: &MonoidalFunctor, over: &Arc<CommMonoid>) -> Result<Self> {
        Ok(Self {
            l: l.clone(),
            over: over.clone(),
            image: Arc::new(b.apply_monoid(over)?),
        })
    }

    /// Reads a `B(a)`-module in `N` as the same data over `a` in `B_*(N)`.
    fn as_source_module(&self, n: &Module) -> Result<Module> {
        if **n.actegory() == **self.l.source() && n.over() == &self.over {
            return Ok(n.clone());
        }
        if n.over() != &self.image {
            return Err(shape("the module is not over B(a)"));
        }
        let tables = (0..n.object_count())
            .map(|x| n.action_table(x).to_vec())
            .collect();
        Module::new(
            self.l.source().clone(),
            self.over.clone(),
            n.carrier().clone(),
            tables,
        )
    }

    pub fn apply(&self, n: &Module) -> Result<Module> {
        let src = self.as_source_module(n)?;
        let carrier = self.l.apply(src.carrier())?;
        let gamma = self.l.gamma(self.over.carrier(), src.carrier())?;
        let rho = self.l.apply_map(&src.action_map())?;
        let tables = compose_tables(&gamma, &rho);
        Module::new(self.l.target().clone(), self.over.clone(), carrier, tables)
    }

    pub fn apply_morphism(&self, f: &ModuleMorphism) -> Result<ModuleMorphism> {
        let dom = Arc::new(self.apply(f.dom())?);
        let cod = Arc::new(self.apply(f.cod())?);
        ModuleMorphism::new(dom, cod, self.l.apply_map(f.map())?.comps().to_vec())
    }
}

/// `g ∘ f` on component tables, for maps whose middle carriers agree up to
/// presentation.
fn compose_tables(f: &CarrierMap, g: &CarrierMap) -> Vec<Vec<usize>> {
    f.comps()
        .iter()
        .zip(g.comps())
        .map(|(fc, gc)| fc.iter().map(|&v| gc[v]).collect())
        .collect()
}

/// `θ_{α,B,L,n}`, evaluated on representatives `(u, w)` of `b ⊠ L(n)` as
/// `L(coeq) ∘ Γ_{b,n}` and pushed through the coequalizer; a value that
/// depends on the representative is an invariant violation.
pub fn compute_theta(
    alpha: &MonoidMorphism,
    adj: &MonoidalAdjunction,
    l: &LaxLinearFunctor,
    n: &Module,
) -> Result<ModuleMorphism> {
    let source = restrict_action(adj.left(), n.actegory(), &ProbeBudget::default())?;
    if source != **l.source() {
        return Err(shape(
            "L does not start at B_*(N) for the module's actegory",
        ));
    }
    let la = InducedModuleFunctor::new(l, adj.left(), alpha.dom())?;
    let lb = InducedModuleFunctor::new(l, adj.left(), alpha.cod())?;
    if n.over() != &la.image {
        return Err(shape("θ needs a module over B(a)"));
    }
    let b_alpha = adj.left().apply_morphism(alpha)?;
    let ext_n = extend_scalars(&b_alpha, n)?;
    let ln = la.apply(n)?;
    let ext_m = extend_scalars(alpha, &ln)?;
    let target = Arc::new(lb.apply(&ext_n.module)?);
    let gamma = l.gamma(alpha.cod().carrier(), n.carrier())?;
    let l_coeq = l.apply_map(&ext_n.coeq)?;
    let value = CarrierMap::new(
        ext_m.free.carrier.clone(),
        target.carrier().clone(),
        compose_tables(&gamma, &l_coeq),
    )?;
    let map = descend(std::slice::from_ref(&ext_m.coeq), &[value])?;
    ModuleMorphism::new(ext_m.module.clone(), target, map.comps().to_vec())
}

fn unmet(mut r: CheckReport) -> (bool, CheckReport) {
    if r.is_ok() {
        return (true, r);
    }
    r.status = Status::Skipped;
    r.note("hypothesis unmet");
    (false, r)
}

/// Checks the hypotheses under which `θ` must be invertible (`Γ` invertible,
/// `L` preserving coequalizers, both sampled within the budget) and then
/// that `θ` is a bijective module map. With a hypothesis unmet, bijectivity
/// is recorded as an observation rather than asserted.
pub fn check_theta_iso(
    alpha: &MonoidMorphism,
    adj: &MonoidalAdjunction,
    l: &LaxLinearFunctor,
    n: &Module,
    budget: &ProbeBudget,
) -> CheckReport {
    let mut report = CheckReport::new("theta");
    let mut strong = CheckReport::new("theta.hypothesis.strong");
    if !l.is_strong() {
        strong.fail(Witness::new("L is declared lax, not strong").field("functor", l.kind()));
    }
    let gamma = l.check_gamma(budget);
    if let Some(item) = gamma.item("lax_linear.gamma_invertible") {
        strong.push(item.clone());
    }
    let (strong_ok, strong) = unmet(strong);
    let (coeq_ok, coeq) = unmet({
        let mut r = l.check_coequalizers(budget);
        r.id = "theta.hypothesis.coequalizers".into();
        r
    });
    report.push(strong);
    report.push(coeq);
    let theta = match compute_theta(alpha, adj, l, n) {
        Ok(t) => t,
        Err(e) => {
            report.push(CheckReport::errored("theta.construct", &e));
            return report;
        }
    };
    let mut eq = theta.check_equivariance();
    eq.id = "theta.equivariant".into();
    report.push(eq);
    let bijective = theta.map().is_bijective();
    if strong_ok && coeq_ok {
        let mut b = CheckReport::new("theta.bijective");
        b.record(bijective, || {
            Witness::new("θ is not bijective although the hypotheses hold").field(
                "sizes",
                format!(
                    "{:?} → {:?}",
                    theta.dom().carrier().sizes(),
                    theta.cod().carrier().sizes()
                ),
            )
        });
        report.push(b);
    } else {
        let observed = if bijective {
            "bijective"
        } else {
            "not bijective"
        };
        let mut b =
            CheckReport::skipped("theta.bijective", format!("observation: θ is {observed}"));
        b.witness = Some(
            Witness::new(format!("hypotheses unmet; θ is {observed}")).field(
                "sizes",
                format!(
                    "{:?} → {:?}",
                    theta.dom().carrier().sizes(),
                    theta.cod().carrier().sizes()
                ),
            ),
        );
        report.push(b);
        report.note("hypotheses unmet; bijectivity is reported as an observation");
    }
    report
}

/// Verifies `cover` as an fpqc cover in `M` (the target of `L`), then
/// applies `B` to every leg and verifies the result in `N`. The second
/// check is skipped when the first fails.
pub fn transport_cover_check(
    cover: &CoverFamily,
    adj: &MonoidalAdjunction,
    l: &LaxLinearFunctor,
    n: &Arc<crate::actegory::Actegory>,
    budget: &ProbeBudget,
) -> CheckReport {
    let mut report = CheckReport::new("transport");
    let mut source = check_fpqc_cover(cover, l.target(), budget);
    source.id = "transport.source".into();
    let source_ok = source.is_ok();
    report.push(source);
    if !source_ok {
        report.push(CheckReport::skipped(
            "transport.target",
            "the source family is not a cover",
        ));
        return report;
    }
    let moved = (|| -> Result<CoverFamily> {
        let base = Arc::new(adj.left().apply_monoid(cover.base())?);
        let legs = cover
            .legs()
            .iter()
            .map(|leg| {
                let m = adj.left().apply_morphism(leg)?;
                MonoidMorphism::new(base.clone(), m.cod().clone(), m.comps().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        CoverFamily::new(base, legs, cover.finite_subset().to_vec())
    })();
    match moved {
        Ok(c) => {
            let mut target = check_fpqc_cover(&c, n, budget);
            target.id = "transport.target".into();
            report.push(target);
        }
        Err(e) => report.push(CheckReport::errored("transport.target", &e)),
    }
    report
}
