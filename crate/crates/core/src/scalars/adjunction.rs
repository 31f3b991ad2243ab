use std::sync::Arc;

use rayon::prelude::*;

use crate::actegory::Actegory;
use crate::carrier::{descend, CarrierMap};
use crate::commalg::{monoid_morphisms, CommMonoid, MonoidMorphism};
use crate::error::{shape, Result};
use crate::report::{CheckReport, Witness};

use super::enumerate::{module_morphisms, modules_up_to};
use super::{
    extend_morphism_between, extend_scalars, restrict_scalars, Extension, Module, ModuleMorphism,
};

fn transpose_comps(ext: &Extension, map: &CarrierMap) -> Vec<Vec<usize>> {
    let m = &ext.source;
    let b = ext.module.over();
    (0..m.object_count())
        .map(|x| {
            let e = b.unit(m.scalar_object(x));
            let p = ext.free.pairings[x];
            (0..m.size(x))
                .map(|v| map.apply(x, ext.coeq.apply(x, p.pair(e, v))))
                .collect()
        })
        .collect()
}

fn cotranspose_map(ext: &Extension, n: &Module, psi: &CarrierMap) -> Result<CarrierMap> {
    let comps = ext
        .free
        .pairings
        .iter()
        .enumerate()
        .map(|(x, p)| {
            p.pairs()
                .map(|(_, uv)| match uv {
                    None => n.carrier().point(x).expect("pointed"),
                    Some((u, v)) => n.act(x, u, psi.apply(x, v)),
                })
                .collect()
        })
        .collect();
    let value = CarrierMap::from_parts(ext.free.carrier.clone(), n.carrier().clone(), comps);
    descend(std::slice::from_ref(&ext.coeq), &[value])
}

/// `φ̄: m → α_*(n)` for `φ: b ⊠_a m → n`, with `φ̄(v) = φ([e, v])`.
pub fn transpose(
    alpha: &MonoidMorphism,
    ext: &Extension,
    phi: &ModuleMorphism,
) -> Result<ModuleMorphism> {
    if **phi.dom() != *ext.module {
        return Err(shape("transpose needs a morphism out of the extension"));
    }
    let cod = Arc::new(restrict_scalars(alpha, phi.cod())?);
    let map = CarrierMap::from_parts(
        ext.source.carrier().clone(),
        cod.carrier().clone(),
        transpose_comps(ext, phi.map()),
    );
    Ok(ModuleMorphism::from_parts(ext.source.clone(), cod, map))
}

/// `ψ̲: b ⊠_a m → n` for `ψ: m → α_*(n)`, with `ψ̲([u, v]) = u·ψ(v)`,
/// evaluated on every representative of each class.
pub fn cotranspose(
    ext: &Extension,
    n: &Arc<Module>,
    psi: &ModuleMorphism,
) -> Result<ModuleMorphism> {
    if **psi.dom() != *ext.source
        || psi.cod().carrier() != n.carrier()
        || n.over() != ext.module.over()
    {
        return Err(shape(
            "cotranspose needs ψ: m → α_*(n) and n over the extension's monoid",
        ));
    }
    let map = cotranspose_map(ext, n, psi.map())?;
    Ok(ModuleMorphism::from_parts(
        ext.module.clone(),
        n.clone(),
        map,
    ))
}

/// `η_m: m → α_*(b ⊠_a m)`, the transpose of the identity.
pub fn unit(alpha: &MonoidMorphism, ext: &Extension) -> Result<ModuleMorphism> {
    transpose(alpha, ext, &ModuleMorphism::identity(&ext.module))
}

/// `ε_n: b ⊠_a α_*(n) → n`, the cotranspose of the identity, with the
/// extension it is defined on.
pub fn counit(alpha: &MonoidMorphism, n: &Arc<Module>) -> Result<(Extension, ModuleMorphism)> {
    let restricted = Arc::new(restrict_scalars(alpha, n)?);
    let ext = extend_scalars(alpha, &restricted)?;
    let eps = cotranspose(&ext, n, &ModuleMorphism::identity(&restricted))?;
    Ok((ext, eps))
}

/// Transposition is a bijection `Hom_b(b ⊠_a m, n) ≅ Hom_a(m, α_*(n))`:
/// both round trips are identities on the enumerated hom-sets, transposes
/// of equivariant maps are equivariant, and the hom-sets have equal size.
pub fn check_adjunction(
    alpha: &MonoidMorphism,
    ext: &Extension,
    n: &Arc<Module>,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("adjunction.bijection");
    let restricted = Arc::new(restrict_scalars(alpha, n)?);
    let left = module_morphisms(&ext.module, n, usize::MAX);
    let right = module_morphisms(&ext.source, &restricted, usize::MAX);

    let mut from_b = CheckReport::new("adjunction.cotranspose_after_transpose");
    for phi in &left {
        let bar = CarrierMap::from_parts(
            ext.source.carrier().clone(),
            n.carrier().clone(),
            transpose_comps(ext, phi.map()),
        );
        let ok = ModuleMorphism::from_parts(ext.source.clone(), restricted.clone(), bar.clone())
            .is_equivariant()
            && cotranspose_map(ext, n, &bar)?.comps() == phi.map().comps();
        from_b.record(ok, || {
            Witness::new("cotranspose(transpose(φ)) ≠ φ").field("φ", format!("{phi:?}"))
        });
    }
    let mut from_a = CheckReport::new("adjunction.transpose_after_cotranspose");
    for psi in &right {
        let under = cotranspose_map(ext, n, psi.map())?;
        let ok = ModuleMorphism::from_parts(ext.module.clone(), n.clone(), under.clone())
            .is_equivariant()
            && transpose_comps(ext, &under) == psi.map().comps();
        from_a.record(ok, || {
            Witness::new("transpose(cotranspose(ψ)) ≠ ψ").field("ψ", format!("{psi:?}"))
        });
    }
    let mut sizes = CheckReport::new("adjunction.hom_set_sizes");
    sizes.record(left.len() == right.len(), || {
        Witness::new("hom-sets differ in size")
            .field("Hom_b(b⊠_a m, n)", left.len())
            .field("Hom_a(m, α_*(n))", right.len())
    });
    report.push(from_b);
    report.push(from_a);
    report.push(sizes);
    Ok(report)
}

/// `ε_{α^*m} ∘ α^*(η_m) = 1` and `α_*(ε_n) ∘ η_{α_*n} = 1`.
pub fn check_triangle_identities(
    alpha: &MonoidMorphism,
    m: &Arc<Module>,
    n: &Arc<Module>,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("adjunction.triangles");
    report.push(check_extension_triangle(alpha, m)?);
    report.push(check_restriction_triangle(alpha, n)?);
    Ok(report)
}

/// `ε_{α^*m} ∘ α^*(η_m) = 1`.
pub fn check_extension_triangle(alpha: &MonoidMorphism, m: &Arc<Module>) -> Result<CheckReport> {
    let ext_m = extend_scalars(alpha, m)?;
    let eta = unit(alpha, &ext_m)?;
    let ext_r = extend_scalars(alpha, eta.cod())?;
    let lifted = extend_morphism_between(&eta, &ext_m, &ext_r)?;
    let eps = cotranspose(&ext_r, &ext_m.module, &ModuleMorphism::identity(eta.cod()))?;
    let composite = lifted.then(&eps)?;
    let mut first = CheckReport::new("adjunction.triangle_extension");
    first.record(
        composite.map() == &CarrierMap::identity(ext_m.module.carrier()),
        || {
            Witness::new("ε ∘ α^*(η) is not the identity")
                .field("composite", format!("{composite:?}"))
        },
    );
    Ok(first)
}

/// `α_*(ε_n) ∘ η_{α_*n} = 1`.
pub fn check_restriction_triangle(alpha: &MonoidMorphism, n: &Arc<Module>) -> Result<CheckReport> {
    let (ext_n, eps_n) = counit(alpha, n)?;
    let eta_r = unit(alpha, &ext_n)?;
    let composite = eta_r.map().then(eps_n.map())?;
    let mut second = CheckReport::new("adjunction.triangle_restriction");
    second.record(composite == CarrierMap::identity(n.carrier()), || {
        Witness::new("α_*(ε) ∘ η is not the identity")
            .field("composite", format!("{:?}", composite.comps()))
    });
    Ok(second)
}

/// Runs [`check_adjunction`] and both triangle identities for every
/// morphism between the given monoids and every pair of modules with
/// carriers of at most `max_module` elements (up to isomorphism).
pub fn adjunction_sweep(
    actegory: &Arc<Actegory>,
    monoids: &[Arc<CommMonoid>],
    max_module: usize,
) -> CheckReport {
    let modules: Vec<Vec<Arc<Module>>> = monoids
        .par_iter()
        .map(|a| {
            modules_up_to(actegory, a, max_module, true)
                .into_iter()
                .map(Arc::new)
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..monoids.len())
        .flat_map(|i| (0..monoids.len()).map(move |j| (i, j)))
        .collect();
    let parts: Vec<(CheckReport, CheckReport)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut bijection = CheckReport::new("adjunction.sweep.bijection");
            let mut triangles = CheckReport::new("adjunction.sweep.triangles");
            for alpha in monoid_morphisms(&monoids[i], &monoids[j]) {
                let failed =
                    |e: crate::Error| Witness::new(e.to_string()).field("α", alpha.describe());
                for m in &modules[i] {
                    let ext = match extend_scalars(&alpha, m) {
                        Ok(e) => e,
                        Err(e) => {
                            bijection.fail(failed(e));
                            continue;
                        }
                    };
                    for n in &modules[j] {
                        match check_adjunction(&alpha, &ext, n) {
                            Ok(r) => absorb(&mut bijection, &r),
                            Err(e) => bijection.fail(failed(e)),
                        }
                    }
                    match check_extension_triangle(&alpha, m) {
                        Ok(r) => absorb(&mut triangles, &r),
                        Err(e) => triangles.fail(failed(e)),
                    }
                }
                for n in &modules[j] {
                    match check_restriction_triangle(&alpha, n) {
                        Ok(r) => absorb(&mut triangles, &r),
                        Err(e) => triangles.fail(failed(e)),
                    }
                }
            }
            (bijection, triangles)
        })
        .collect();
    let mut bijection = CheckReport::new("adjunction.sweep.bijection");
    let mut triangles = CheckReport::new("adjunction.sweep.triangles");
    for (b, t) in &parts {
        absorb(&mut bijection, b);
        absorb(&mut triangles, t);
    }
    let mut report = CheckReport::new("adjunction.sweep");
    report.push(bijection);
    report.push(triangles);
    report
}

/// Folds `r` into `acc` as instance counts plus the first failure.
fn absorb(acc: &mut CheckReport, r: &CheckReport) {
    acc.instances += r.instances;
    if let Some(bad) = r.first_failure() {
        acc.fail(
            bad.witness
                .clone()
                .unwrap_or_else(|| Witness::new(format!("{} failed", bad.id))),
        );
    }
}
