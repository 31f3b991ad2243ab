use std::sync::Arc;

use super::*;
use crate::commalg::{Base, MonoidTable};
use crate::fincore::FinSet;

fn cart() -> Arc<Actegory> {
    Arc::new(Actegory::self_action(Base::cartesian()))
}

fn plain(t: MonoidTable) -> Arc<CommMonoid> {
    Arc::new(CommMonoid::plain(t))
}

fn regular(a: &Arc<CommMonoid>) -> Arc<Module> {
    Arc::new(Module::regular(a.clone()).unwrap())
}

#[test]
fn regular_and_trivial_modules_satisfy_the_laws() {
    for t in [
        MonoidTable::cyclic(3),
        MonoidTable::boolean(),
        MonoidTable::saturating(2),
    ] {
        let a = plain(t);
        assert!(check_module_laws(&regular(&a)).passed());
        let triv = Module::trivial(cart(), a, Carrier::set(FinSet::range(2))).unwrap();
        assert!(check_module_laws(&triv).passed());
    }
}

#[test]
fn planted_non_associative_action_is_caught() {
    // Z3 acting on {0,1,2}: g moves 0→1 but g² fixes everything.
    let z3 = plain(MonoidTable::cyclic(3));
    let m = Module::from_fn(
        cart(),
        z3,
        Carrier::set(FinSet::range(3)),
        |_, s, v| match (s, v) {
            (1, 0) => 1,
            _ => v,
        },
    )
    .unwrap();
    let r = check_module_laws(&m);
    assert!(!r.is_ok());
    assert!(r
        .first_failure()
        .unwrap()
        .witness
        .as_ref()
        .unwrap()
        .get("s")
        .is_some());
}

#[test]
fn extension_along_identity_collapses_to_the_module() {
    let z2 = plain(MonoidTable::cyclic(2));
    let m = regular(&z2);
    let iso = unit_comparison(&m).unwrap();
    assert!(iso.is_iso());
    assert!(iso.is_equivariant());
}

#[test]
fn extension_from_trivial_monoid_is_the_free_module() {
    let t = plain(MonoidTable::trivial());
    let b = plain(MonoidTable::cyclic(3));
    let alpha = MonoidMorphism::from_trivial(&t, &b).unwrap();
    let x = Arc::new(Module::trivial(cart(), t, Carrier::set(FinSet::range(2))).unwrap());
    let ext = extend_scalars(&alpha, &x).unwrap();
    assert_eq!(ext.module.size(0), 6);
    assert!(ext.coeq.is_bijective());
    assert!(check_module_laws(&ext.module).passed());
}

#[test]
fn extension_to_trivial_monoid_is_the_orbit_set() {
    let z2 = plain(MonoidTable::cyclic(2));
    let t = plain(MonoidTable::trivial());
    let alpha = MonoidMorphism::to_trivial(&z2, &t).unwrap();
    let ext = extend_scalars(&alpha, &regular(&z2)).unwrap();
    assert_eq!(ext.module.size(0), 1);
    assert!(ext.coeq.is_surjective());
}

#[test]
fn restriction_along_identity_and_composites() {
    let z4 = plain(MonoidTable::cyclic(4));
    let z2 = plain(MonoidTable::cyclic(2));
    let t = plain(MonoidTable::trivial());
    let n = regular(&z2);
    let id = MonoidMorphism::identity(&z2);
    assert_eq!(restrict_scalars(&id, &n).unwrap(), *n);
    let red = MonoidMorphism::single(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
    let unit = MonoidMorphism::from_trivial(&t, &z4).unwrap();
    let both = unit.then(&red).unwrap();
    let once = restrict_scalars(&both, &n).unwrap();
    let twice = restrict_scalars(&unit, &restrict_scalars(&red, &n).unwrap()).unwrap();
    assert_eq!(once, twice);
}

#[test]
fn identity_extends_to_identity() {
    let z2 = plain(MonoidTable::cyclic(2));
    let t = plain(MonoidTable::trivial());
    let alpha = MonoidMorphism::to_trivial(&z2, &t).unwrap();
    let m = regular(&z2);
    let f = extend_morphism(&alpha, &ModuleMorphism::identity(&m)).unwrap();
    assert_eq!(f.map(), &CarrierMap::identity(f.dom().carrier()));
}

#[test]
fn collapse_becomes_an_iso_after_extension_to_trivial() {
    let z2 = plain(MonoidTable::cyclic(2));
    let t = plain(MonoidTable::trivial());
    let alpha = MonoidMorphism::to_trivial(&z2, &t).unwrap();
    let m = regular(&z2);
    let point =
        Arc::new(Module::trivial(cart(), z2.clone(), Carrier::set(FinSet::range(1))).unwrap());
    let collapse = ModuleMorphism::new_checked(m, point, vec![vec![0, 0]]).unwrap();
    assert!(!collapse.is_iso());
    assert!(extend_morphism(&alpha, &collapse).unwrap().is_iso());
}

#[test]
fn adjunction_on_small_instances() {
    let z2 = plain(MonoidTable::cyclic(2));
    let b2 = plain(MonoidTable::boolean());
    let t = plain(MonoidTable::trivial());
    let act = cart();
    for (a, b) in [(&t, &z2), (&z2, &t), (&t, &b2), (&z2, &z2)] {
        for hom in crate::commalg::monoid_morphisms(a, b) {
            for m in modules_up_to(&act, a, 2, true) {
                let m = Arc::new(m);
                let ext = extend_scalars(&hom, &m).unwrap();
                for n in modules_up_to(&act, b, 2, true) {
                    let n = Arc::new(n);
                    let r = check_adjunction(&hom, &ext, &n).unwrap();
                    assert!(r.passed(), "{r:#?}");
                    assert!(check_triangle_identities(&hom, &m, &n).unwrap().passed());
                }
            }
        }
    }
}

#[test]
fn cotranspose_from_trivial_monoid_multiplies() {
    let t = plain(MonoidTable::trivial());
    let z3 = plain(MonoidTable::cyclic(3));
    let alpha = MonoidMorphism::from_trivial(&t, &z3).unwrap();
    let x = Arc::new(Module::trivial(cart(), t, Carrier::set(FinSet::range(2))).unwrap());
    let n = regular(&z3);
    let ext = extend_scalars(&alpha, &x).unwrap();
    let restricted = Arc::new(restrict_scalars(&alpha, &n).unwrap());
    let psi = ModuleMorphism::new(x.clone(), restricted, vec![vec![1, 2]]).unwrap();
    let under = cotranspose(&ext, &n, &psi).unwrap();
    for u in 0..3 {
        for v in 0..2 {
            let cls = ext.coeq.apply(0, ext.free.pairings[0].pair(u, v));
            assert_eq!(under.apply(0, cls), z3.mul(0, u, psi.apply(0, v)));
        }
    }
}

#[test]
fn comparisons_on_small_instances() {
    let t = plain(MonoidTable::trivial());
    let z2 = plain(MonoidTable::cyclic(2));
    let b2 = plain(MonoidTable::boolean());
    let act = cart();
    let ab = MonoidMorphism::from_trivial(&t, &z2).unwrap();
    let ab2 = MonoidMorphism::from_trivial(&t, &b2).unwrap();
    let m = Carrier::set(FinSet::range(2));
    let f = free_tensor_comparison(&act, &ab2, &ab, &m).unwrap();
    assert!(check_comparison("free_tensor", &f).passed());
    assert_eq!(f.dom().size(0), 2 * 2 * 2);

    let n = Arc::new(modules_up_to(&act, &z2, 2, true).pop().unwrap());
    let g = relative_tensor_comparison(&ab2, &ab, &MonoidMorphism::identity(&z2), &n).unwrap();
    assert!(check_comparison("relative_tensor", &g).passed());

    let x = Arc::new(Module::trivial(act.clone(), t.clone(), m.clone()).unwrap());
    let red = MonoidMorphism::to_trivial(&z2, &t).unwrap();
    let h = composition_comparison(&ab, &red, &x).unwrap();
    assert!(check_comparison("pseudo", &h).passed());

    let p = crate::commalg::pushout(&ab, &ab2).unwrap();
    let k = base_change_comparison(&ab, &ab2, &p.left, &p.right, &n).unwrap();
    assert!(check_comparison("base_change", &k).passed());
    let id = MonoidMorphism::identity(&z2);
    let collapse = MonoidMorphism::single(z2.clone(), z2.clone(), vec![0, 0]).unwrap();
    let err = base_change_comparison(&id, &id, &id, &collapse, &n).unwrap_err();
    assert!(matches!(err, crate::Error::Precondition(_)));
}
