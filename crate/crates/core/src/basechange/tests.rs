use std::sync::Arc;

use super::*;
use crate::commalg::{CommMonoid, MonoidMorphism, MonoidTable};
use crate::fincore::FinCategory;
use crate::report::Status;
use crate::scalars::{check_module_laws, modules_up_to, Module};
use crate::topology::CoverFamily;

fn budget() -> ProbeBudget {
    ProbeBudget::default()
}

fn cart() -> Arc<Actegory> {
    Arc::new(Actegory::self_action(Base::cartesian()))
}

fn plain(t: MonoidTable) -> Arc<CommMonoid> {
    Arc::new(CommMonoid::plain(t))
}

fn unit_into_z2() -> MonoidMorphism {
    MonoidMorphism::from_trivial(
        &plain(MonoidTable::trivial()),
        &plain(MonoidTable::cyclic(2)),
    )
    .unwrap()
}

/// `Φ: disc(2) → (0 → 1)`, the identity on objects.
fn inclusion() -> FinFunctor {
    let x = Arc::new(FinCategory::discrete(2));
    let y = Arc::new(FinCategory::walking_arrow());
    let arrows = vec![y.identity(0), y.identity(1)];
    FinFunctor::new(x, y, vec![0, 1], arrows).unwrap()
}

fn swap() -> FinFunctor {
    let x = Arc::new(FinCategory::discrete(2));
    FinFunctor::new(x.clone(), x, vec![1, 0], vec![1, 0]).unwrap()
}

#[test]
fn identity_theta_is_an_isomorphism() {
    let adj = MonoidalAdjunction::identity(Base::cartesian());
    let l = LaxLinearFunctor::identity(cart());
    let alpha = unit_into_z2();
    for n in modules_up_to(&cart(), alpha.dom(), 2, true) {
        let r = check_theta_iso(&alpha, &adj, &l, &n, &budget());
        assert!(r.is_ok(), "{r:?}");
        assert_eq!(r.item("theta.bijective").unwrap().status, Status::Pass);
    }
}

#[test]
fn precomposition_theta_is_an_isomorphism() {
    let phi = inclusion();
    let base = Base::presheaf(phi.cod().clone());
    let n_act = Arc::new(Actegory::self_action(base.clone()));
    let m_act = Arc::new(Actegory::presheaf(phi.clone()).unwrap());
    let adj = MonoidalAdjunction::identity(base.clone());
    let l = LaxLinearFunctor::precompose(n_act.clone(), m_act, phi).unwrap();
    let a = Arc::new(CommMonoid::constant(base.clone(), MonoidTable::trivial()).unwrap());
    let b = Arc::new(CommMonoid::constant(base, MonoidTable::cyclic(2)).unwrap());
    let alpha = MonoidMorphism::from_trivial(&a, &b).unwrap();
    let modules = modules_up_to(&n_act, &a, 1, true);
    assert!(modules.len() > 2);
    for n in &modules {
        let r = check_theta_iso(&alpha, &adj, &l, n, &budget());
        assert!(r.is_ok(), "{r:?}");
        assert!(!matches!(
            r.item("theta.bijective").unwrap().status,
            Status::Skipped
        ));
    }
}

#[test]
fn adjoining_a_point_breaks_theta() {
    let adj = MonoidalAdjunction::identity(Base::cartesian());
    let l = LaxLinearFunctor::adjoin_point(cart()).unwrap();
    assert!(!l.is_strong());
    let alpha = unit_into_z2();
    let n = modules_up_to(&cart(), alpha.dom(), 1, true)
        .into_iter()
        .find(|m| m.total_size() == 1)
        .unwrap();
    let theta = compute_theta(&alpha, &adj, &l, &n).unwrap();
    // 2 ⊠ (1 + ⊥) = 4 elements up to the Z2-action vs (2 × 1) + ⊥ = 3.
    assert!(!theta.map().is_bijective());
    let r = check_theta_iso(&alpha, &adj, &l, &n, &budget());
    assert_eq!(
        r.item("theta.hypothesis.strong").unwrap().status,
        Status::Skipped
    );
    let b = r.item("theta.bijective").unwrap();
    assert_eq!(b.status, Status::Skipped);
    assert!(b
        .witness
        .as_ref()
        .unwrap()
        .to_string()
        .contains("not bijective"));
}

#[test]
fn induced_modules_satisfy_the_laws() {
    let alpha = unit_into_z2();
    let b = alpha.cod().clone();
    let adj = MonoidalAdjunction::identity(Base::cartesian());
    for l in [
        LaxLinearFunctor::identity(cart()),
        LaxLinearFunctor::adjoin_point(cart()).unwrap(),
    ] {
        let induced = InducedModuleFunctor::new(&l, adj.left(), &b).unwrap();
        for n in modules_up_to(&cart(), &b, 2, true) {
            let ln = induced.apply(&n).unwrap();
            assert!(check_module_laws(&ln).passed(), "{:?}", l.kind());
            let id = crate::scalars::ModuleMorphism::identity(&Arc::new(n.clone()));
            let lid = induced.apply_morphism(&id).unwrap();
            assert!(lid.is_equivariant());
        }
    }
}

#[test]
fn gamma_checks_separate_strong_from_lax() {
    assert!(LaxLinearFunctor::identity(cart())
        .check_gamma(&budget())
        .is_ok());
    let lax = LaxLinearFunctor::adjoin_point(cart())
        .unwrap()
        .check_gamma(&budget());
    assert!(lax.item("lax_linear.gamma_natural").unwrap().is_ok());
    assert!(!lax.item("lax_linear.gamma_invertible").unwrap().is_ok());
}

#[test]
fn precomposition_along_a_swap_is_an_adjunction() {
    let adj = MonoidalAdjunction::precompose_iso(swap()).unwrap();
    assert!(adj.check(&budget()).is_ok());
    assert!(MonoidalAdjunction::precompose_iso(inclusion()).is_err());
    assert!(MonoidalAdjunction::identity(Base::cartesian())
        .check(&budget())
        .is_ok());
}

#[test]
fn theta_after_swapping_the_base() {
    let base = Base::presheaf(Arc::new(FinCategory::discrete(2)));
    let adj = MonoidalAdjunction::precompose_iso(swap()).unwrap();
    let n_act = Arc::new(Actegory::self_action(base.clone()));
    let source = restricted_source(&adj, &n_act, &budget()).unwrap();
    let l = LaxLinearFunctor::identity(source.clone());
    let tables = vec![MonoidTable::trivial(), MonoidTable::cyclic(2)];
    let restr = vec![vec![0], vec![0, 1]];
    let a = Arc::new(CommMonoid::constant(base.clone(), MonoidTable::trivial()).unwrap());
    let b = Arc::new(CommMonoid::presheaf(base.shape().clone(), tables, restr).unwrap());
    let alpha = MonoidMorphism::from_trivial(&a, &b).unwrap();
    let ba = Arc::new(adj.left().apply_monoid(&a).unwrap());
    for n in modules_up_to(&n_act, &ba, 1, true) {
        let r = check_theta_iso(&alpha, &adj, &l, &n, &budget());
        assert!(r.is_ok(), "{r:?}");
    }
}

#[test]
fn theta_rejects_modules_over_the_wrong_monoid() {
    let adj = MonoidalAdjunction::identity(Base::cartesian());
    let l = LaxLinearFunctor::identity(cart());
    let alpha = unit_into_z2();
    let n = Module::regular(alpha.cod().clone()).unwrap();
    assert!(matches!(
        compute_theta(&alpha, &adj, &l, &n),
        Err(Error::Shape(_))
    ));
}

#[test]
fn covers_transport_along_the_identity() {
    let adj = MonoidalAdjunction::identity(Base::cartesian());
    let l = LaxLinearFunctor::identity(cart());
    let z2 = plain(MonoidTable::cyclic(2));
    let r = transport_cover_check(&CoverFamily::identity(&z2), &adj, &l, &cart(), &budget());
    assert!(r.is_ok(), "{r:?}");
    assert!(r.item("transport.target").unwrap().passed());

    let bad = CoverFamily::singleton(unit_into_z2());
    let r = transport_cover_check(&bad, &adj, &l, &cart(), &budget());
    assert!(!r.item("transport.source").unwrap().is_ok());
    assert_eq!(r.item("transport.target").unwrap().status, Status::Skipped);
}
