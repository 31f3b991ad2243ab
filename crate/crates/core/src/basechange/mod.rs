//! Change of base along a strong monoidal left adjoint `B` between bases,
//! and a lax linear functor `(L, Γ): B_*(N) → M` between actegories.

mod theta;

use std::fmt;
use std::sync::Arc;

use crate::actegory::{restrict_action, Actegory, ActionStructure, MonoidalFunctor};
use crate::carrier::{carrier_coequalizer, descend, Carrier, CarrierMap};
use crate::commalg::Base;
use crate::error::{precondition, shape, Error, Result};
use crate::fincore::{FinFunctor, FinMap, FinPresheaf, FinSet};
use crate::report::{CheckReport, ProbeBudget, Witness};
use crate::search::{carrier_maps, enumerate_carriers, sample_within};

pub use theta::{check_theta_iso, compute_theta, transport_cover_check, InducedModuleFunctor};

/// `(B ⊣ A)` with `B` strong monoidal. Supported: the identity adjunction,
/// and precomposition along an isomorphism of base shapes, whose right
/// adjoint is precomposition along the inverse with identity unit and
/// counit.
#[derive(Clone, Debug)]
pub struct MonoidalAdjunction {
    left: MonoidalFunctor,
    right: MonoidalFunctor,
}

impl MonoidalAdjunction {
    pub fn identity(base: Base) -> Self {
        Self {
            left: MonoidalFunctor::identity(base.clone()),
            right: MonoidalFunctor::identity(base),
        }
    }

    /// `B = − ∘ Ψ` for an isomorphism `Ψ: Y_D → Y_C`.
    pub fn precompose_iso(psi: FinFunctor) -> Result<Self> {
        let inv = psi.inverse().ok_or_else(|| {
            precondition("only precomposition along an isomorphism has a supported right adjoint")
        })?;
        Ok(Self {
            left: MonoidalFunctor::precompose(psi)?,
            right: MonoidalFunctor::precompose(inv)?,
        })
    }

    /// `B`.
    pub fn left(&self) -> &MonoidalFunctor {
        &self.left
    }

    /// `A`.
    pub fn right(&self) -> &MonoidalFunctor {
        &self.right
    }

    /// `η_c: c → A(B(c))`.
    pub fn unit(&self, c: &Carrier) -> Result<CarrierMap> {
        let abc = self.right.apply(&self.left.apply(c)?)?;
        identity_between(c, &abc)
    }

    /// `ε_d: B(A(d)) → d`.
    pub fn counit(&self, d: &Carrier) -> Result<CarrierMap> {
        let bad = self.left.apply(&self.right.apply(d)?)?;
        identity_between(&bad, d)
    }

    /// Triangle identities `ε_B ∘ B(η) = 1` and `A(ε) ∘ η_A = 1` on sampled
    /// objects, and the monoidality witnesses of `B`.
    pub fn check(&self, budget: &ProbeBudget) -> CheckReport {
        let mut report = CheckReport::new("adjunction");
        let mut tri = CheckReport::new("adjunction.triangles");
        let pointed = self.left.dom().is_pointed();
        for c in enumerate_carriers(self.left.dom().shape(), budget.max_module_size, pointed) {
            let ok = (|| -> Result<bool> {
                let lhs = self
                    .left
                    .apply_map(&self.unit(&c)?)?
                    .then(&self.counit(&self.left.apply(&c)?)?)?;
                Ok(lhs == CarrierMap::identity(&self.left.apply(&c)?))
            })();
            tri.record(ok == Ok(true), || {
                Witness::new("ε_B ∘ B(η) is not the identity")
                    .field("c", format!("{:?}", c.sizes()))
            });
        }
        for d in enumerate_carriers(self.right.dom().shape(), budget.max_module_size, pointed) {
            let ok = (|| -> Result<bool> {
                let lhs = self
                    .unit(&self.right.apply(&d)?)?
                    .then(&self.right.apply_map(&self.counit(&d)?)?)?;
                Ok(lhs == CarrierMap::identity(&self.right.apply(&d)?))
            })();
            tri.record(ok == Ok(true), || {
                Witness::new("A(ε) ∘ η_A is not the identity")
                    .field("d", format!("{:?}", d.sizes()))
            });
        }
        tri.within_budget(budget);
        report.push(tri);
        report.push(self.left.check(budget));
        report
    }
}

fn identity_between(a: &Carrier, b: &Carrier) -> Result<CarrierMap> {
    if a.sizes() != b.sizes() {
        return Err(crate::error::invariant(
            "unit or counit between objects of different sizes",
        ));
    }
    CarrierMap::new(
        a.clone(),
        b.clone(),
        (0..a.base().object_count())
            .map(|x| (0..a.size(x)).collect())
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearKind {
    /// `L = 1`, `Γ = 1`.
    Identity,
    /// `L(n) = n ∘ Θ` for `Θ: X_M → X_N` with `Φ_M = Ψ ∘ Φ_N ∘ Θ`; `Γ` is
    /// the identity on pair encodings.
    Precompose(FinFunctor),
    /// `L(n) = n ⊔ {⊥}` with `Γ(u, ⊥) = ⊥`: lax, never strong.
    AdjoinPoint,
}

/// A functor `L` from the restricted actegory `B_*(N)` to `M`, with
/// `Γ_{c,n}: c ⊠ L(n) → L(c ⊞^B n)`.
#[derive(Clone, Debug)]
pub struct LaxLinearFunctor {
    source: Arc<Actegory>,
    target: Arc<Actegory>,
    kind: LinearKind,
}

impl LaxLinearFunctor {
    pub fn identity(actegory: Arc<Actegory>) -> Self {
        Self {
            source: actegory.clone(),
            target: actegory,
            kind: LinearKind::Identity,
        }
    }

    pub fn precompose(
        source: Arc<Actegory>,
        target: Arc<Actegory>,
        theta: FinFunctor,
    ) -> Result<Self> {
        if source.base() != target.base() {
            return Err(shape(
                "source and target must be actegories over the same base",
            ));
        }
        if theta.dom() != target.along().dom() || theta.cod() != source.along().dom() {
            return Err(shape(
                "Θ must go from the target's shape to the source's shape",
            ));
        }
        if theta.then(source.along())? != *target.along() {
            return Err(precondition(
                "Γ is the identity only when Φ_M = Ψ ∘ Φ_N ∘ Θ",
            ));
        }
        if source.is_pointed() {
            return Err(Error::UnsupportedBase(
                "precomposition functors are supported on plain bases".into(),
            ));
        }
        Ok(Self {
            source,
            target,
            kind: LinearKind::Precompose(theta),
        })
    }

    pub fn adjoin_point(actegory: Arc<Actegory>) -> Result<Self> {
        if actegory.is_pointed() {
            return Err(Error::UnsupportedBase(
                "adjoining a point needs a plain base".into(),
            ));
        }
        Ok(Self {
            source: actegory.clone(),
            target: actegory,
            kind: LinearKind::AdjoinPoint,
        })
    }

    /// The source `B_*(N)`.
    pub fn source(&self) -> &Arc<Actegory> {
        &self.source
    }

    /// The target `M`.
    pub fn target(&self) -> &Arc<Actegory> {
        &self.target
    }

    pub fn kind(&self) -> &LinearKind {
        &self.kind
    }

    /// Whether `Γ` is declared invertible.
    pub fn is_strong(&self) -> bool {
        !matches!(self.kind, LinearKind::AdjoinPoint)
    }

    pub fn apply(&self, n: &Carrier) -> Result<Carrier> {
        match &self.kind {
            LinearKind::Identity => Ok(n.clone()),
            LinearKind::Precompose(theta) => crate::carrier::precompose(n, theta),
            LinearKind::AdjoinPoint => {
                let base = n.base().clone();
                let sets = (0..base.object_count())
                    .map(|x| {
                        let mut labels = n.at(x).labels().to_vec();
                        labels.push("⊥".into());
                        FinSet::from_generated(labels)
                    })
                    .collect::<Vec<_>>();
                let maps = (0..base.arrow_count())
                    .map(|f| {
                        let a = base.arrow(f);
                        let mut table = n.sheaf().map(f).table().to_vec();
                        table.push(n.size(a.src));
                        FinMap::new(sets[a.tgt].clone(), sets[a.src].clone(), table)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Carrier::plain(FinPresheaf::new(base, sets, maps)?))
            }
        }
    }

    pub fn apply_map(&self, f: &CarrierMap) -> Result<CarrierMap> {
        match &self.kind {
            LinearKind::Identity => Ok(f.clone()),
            LinearKind::Precompose(theta) => crate::carrier::precompose_map(f, theta),
            LinearKind::AdjoinPoint => {
                let comps = f
                    .comps()
                    .iter()
                    .enumerate()
                    .map(|(x, c)| c.iter().copied().chain([f.cod().size(x)]).collect())
                    .collect();
                CarrierMap::new(self.apply(f.dom())?, self.apply(f.cod())?, comps)
            }
        }
    }

    /// `Γ_{c,n}: c ⊠ L(n) → L(c ⊞^B n)`.
    pub fn gamma(&self, c: &Carrier, n: &Carrier) -> Result<CarrierMap> {
        let inner = self.source.act(c, n)?;
        let ln = self.apply(n)?;
        let dom = self.target.act(c, &ln)?;
        let cod = self.apply(&inner.carrier)?;
        let comps = dom
            .pairings
            .iter()
            .enumerate()
            .map(|(x, p)| {
                p.pairs()
                    .map(|(_, uv)| match (&self.kind, uv) {
                        (_, None) => cod.point(x).expect("pointed"),
                        (LinearKind::Identity, Some((u, v))) => inner.pairings[x].pair(u, v),
                        (LinearKind::Precompose(theta), Some((u, v))) => {
                            inner.pairings[theta.object(x)].pair(u, v)
                        }
                        (LinearKind::AdjoinPoint, Some((u, v))) => {
                            if v == n.size(x) {
                                inner.carrier.size(x)
                            } else {
                                inner.pairings[x].pair(u, v)
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        CarrierMap::new(dom.carrier, cod, comps)
    }

    fn sample_objects(&self, budget: &ProbeBudget) -> (Vec<Carrier>, Vec<Carrier>) {
        let base = self.source.base();
        let cs = enumerate_carriers(base.shape(), budget.max_module_size, base.is_pointed());
        let ns = self.source.objects_up_to(budget.max_module_size);
        (cs, ns)
    }

    /// `Γ` is natural in `n` and, when declared strong, invertible, on
    /// sampled objects and maps.
    pub fn check_gamma(&self, budget: &ProbeBudget) -> CheckReport {
        let mut report = CheckReport::new("lax_linear.gamma");
        let mut natural = CheckReport::new("lax_linear.gamma_natural");
        let mut strong = CheckReport::new("lax_linear.gamma_invertible");
        let (cs, ns) = self.sample_objects(budget);
        let mut pairs = Vec::new();
        for c in &cs {
            for n in &ns {
                pairs.push((c, n));
            }
        }
        for (c, n) in sample_within(pairs, budget.max_test_morphisms, budget.seed) {
            let Ok(g) = self.gamma(c, n) else {
                natural.fail(
                    Witness::new("Γ could not be formed").field("c", format!("{:?}", c.sizes())),
                );
                continue;
            };
            strong.record(g.is_bijective(), || {
                Witness::new("Γ_{c,n} is not invertible")
                    .field("c", format!("{:?}", c.sizes()))
                    .field("n", format!("{:?}", n.sizes()))
            });
            natural.record(g.is_natural(), || Witness::new("Γ_{c,n} is not a morphism"));
            for m in &ns {
                for f in carrier_maps(n, m, 4) {
                    let ok = (|| -> Result<bool> {
                        let gm = self.gamma(c, m)?;
                        let (cn, cm) = (self.source.act(c, n)?, self.source.act(c, m)?);
                        let lf = self.apply_map(&f)?;
                        let (dn, dm) = (
                            self.target.act(c, &lf.dom().clone())?,
                            self.target.act(c, lf.cod())?,
                        );
                        let top = self
                            .target
                            .act_map(&dn, &dm, &CarrierMap::identity(c), &lf)
                            .then(&gm)?;
                        let inner = self.source.act_map(&cn, &cm, &CarrierMap::identity(c), &f);
                        let bottom = g.then(&self.apply_map(&inner)?)?;
                        Ok(top.comps() == bottom.comps())
                    })();
                    natural.record(ok == Ok(true), || {
                        Witness::new("Γ is not natural in n")
                            .field("map", format!("{:?}", f.comps()))
                    });
                }
            }
        }
        natural.within_budget(budget);
        strong.within_budget(budget);
        report.push(natural);
        report.push(strong);
        report
    }

    /// `L` sends coequalizers to coequalizers on sampled parallel pairs: the
    /// canonical map `coeq(Lf, Lg) → L(coeq(f, g))` is bijective.
    pub fn check_coequalizers(&self, budget: &ProbeBudget) -> CheckReport {
        let mut report = CheckReport::new("lax_linear.coequalizers");
        let ns = self.source.objects_up_to(budget.max_module_size);
        let mut pairs = Vec::new();
        for n in &ns {
            for m in &ns {
                let maps = carrier_maps(n, m, budget.max_test_morphisms);
                for (i, f) in maps.iter().enumerate() {
                    for g in &maps[i + 1..] {
                        pairs.push((f.clone(), g.clone()));
                    }
                }
            }
        }
        for (f, g) in sample_within(pairs, budget.max_test_morphisms, budget.seed) {
            let ok = (|| -> Result<bool> {
                let q = carrier_coequalizer(&f, &g)?;
                let lq = self.apply_map(&q)?;
                let q2 = carrier_coequalizer(&self.apply_map(&f)?, &self.apply_map(&g)?)?;
                Ok(descend(&[q2], &[lq])?.is_bijective())
            })();
            report.record(ok == Ok(true), || {
                Witness::new("L does not preserve this coequalizer")
                    .field("f", format!("{:?}", f.comps()))
                    .field("g", format!("{:?}", g.comps()))
            });
        }
        report.within_budget(budget);
        report
    }
}

impl fmt::Display for LinearKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearKind::Identity => f.write_str("identity"),
            LinearKind::Precompose(_) => f.write_str("precomposition"),
            LinearKind::AdjoinPoint => f.write_str("adjoin a point"),
        }
    }
}

/// `B_*(N)` for the left adjoint of `adj`.
pub fn restricted_source(
    adj: &MonoidalAdjunction,
    n: &Actegory,
    budget: &ProbeBudget,
) -> Result<Arc<Actegory>> {
    Ok(Arc::new(restrict_action(adj.left(), n, budget)?))
}

#[cfg(test)]
mod tests;
