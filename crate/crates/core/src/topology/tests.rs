use std::sync::Arc;

use super::*;
use crate::commalg::{Base, MonoidTable};
use crate::fincore::{FinMap, FinSet};

fn cart() -> Arc<Actegory> {
    Arc::new(Actegory::self_action(Base::cartesian()))
}

fn plain(t: MonoidTable) -> Arc<CommMonoid> {
    Arc::new(CommMonoid::plain(t))
}

fn budget() -> ProbeBudget {
    ProbeBudget::default()
}

#[test]
fn identity_is_flat_and_conservative() {
    let z2 = plain(MonoidTable::cyclic(2));
    let id = MonoidMorphism::identity(&z2);
    assert!(!flatness_probe(&id, &cart(), &budget())
        .unwrap()
        .is_refuted());
    assert!(!conservativity_probe(&[id], &cart(), &budget())
        .unwrap()
        .is_refuted());
}

#[test]
fn unit_map_into_z2_fails_the_terminal_diagram() {
    let t = plain(MonoidTable::trivial());
    let z2 = plain(MonoidTable::cyclic(2));
    let alpha = MonoidMorphism::from_trivial(&t, &z2).unwrap();
    let v = flatness_probe(&alpha, &cart(), &budget()).unwrap();
    let w = v.witness().expect("refuted");
    assert_eq!(w.get("shape"), Some("terminal"));
    assert_eq!(w.get("extended_limit_size"), Some("2"));
    assert_eq!(w.get("limit_of_extensions_size"), Some("1"));
}

#[test]
fn collapsing_z2_fails_a_binary_product() {
    let z2 = plain(MonoidTable::cyclic(2));
    let t = plain(MonoidTable::trivial());
    let alpha = MonoidMorphism::to_trivial(&z2, &t).unwrap();
    let v = flatness_probe(&alpha, &cart(), &budget()).unwrap();
    let w = v.witness().expect("refuted");
    assert_eq!(w.get("shape"), Some("product"));
    assert_eq!(w.get("total_size"), Some("4"));
    assert_eq!(w.get("extended_limit_size"), Some("2"));
    assert_eq!(w.get("limit_of_extensions_size"), Some("1"));
}

#[test]
fn inverting_zero_is_flat() {
    let b2 = plain(MonoidTable::boolean());
    let t = plain(MonoidTable::trivial());
    let alpha = MonoidMorphism::to_trivial(&b2, &t).unwrap();
    let v = flatness_probe(&alpha, &cart(), &budget()).unwrap();
    assert!(matches!(v, Verdict::PassedWithinBudget { .. }), "{v:?}");
}

#[test]
fn collapse_of_z2_is_not_conservative() {
    let z2 = plain(MonoidTable::cyclic(2));
    let t = plain(MonoidTable::trivial());
    let alpha = MonoidMorphism::to_trivial(&z2, &t).unwrap();
    assert!(conservativity_probe(&[alpha.clone()], &cart(), &budget())
        .unwrap()
        .is_refuted());
    let with_iso = [alpha, MonoidMorphism::identity(&z2)];
    assert!(matches!(
        conservativity_probe(&with_iso, &cart(), &budget()).unwrap(),
        Verdict::Proved { .. }
    ));
}

#[test]
fn fpqc_and_spectral_examples() {
    let z3 = plain(MonoidTable::cyclic(3));
    let t = plain(MonoidTable::trivial());
    let id = CoverFamily::identity(&z3);
    assert!(check_fpqc_cover(&id, &cart(), &budget()).passed());
    assert!(check_spectral_cover(&id, &cart(), &budget()).passed());

    let inv = MonoidMorphism::single(z3.clone(), z3.clone(), vec![0, 2, 1]).unwrap();
    let isos = CoverFamily::new(
        z3.clone(),
        vec![inv, MonoidMorphism::identity(&z3)],
        vec![0],
    )
    .unwrap();
    assert!(check_spectral_cover(&isos, &cart(), &budget()).passed());

    let unit = MonoidMorphism::from_trivial(&t, &z3).unwrap();
    let bad = CoverFamily::singleton(unit.clone());
    let r = check_fpqc_cover(&bad, &cart(), &budget());
    assert!(!r.is_ok());
    assert_eq!(
        r.item("cover.flat[0]")
            .unwrap()
            .witness
            .as_ref()
            .unwrap()
            .get("shape"),
        Some("terminal")
    );
    let imm = check_spectral_immersion(&unit, &cart(), &budget());
    assert!(!imm.item("immersion.flat").unwrap().is_ok());
    assert!(!imm.item("immersion.epi").unwrap().is_ok());
    assert_eq!(
        imm.item("immersion.finite_type").unwrap().provenance,
        vec![Provenance::Policy]
    );
}

#[test]
fn pullback_and_composition_of_identity_covers() {
    let z2 = plain(MonoidTable::cyclic(2));
    let b2 = plain(MonoidTable::boolean());
    let t = plain(MonoidTable::trivial());
    let beta = MonoidMorphism::from_trivial(&t, &z2).unwrap();
    let pulled = pullback_cover(&CoverFamily::identity(&t), &beta).unwrap();
    assert_eq!(pulled.legs().len(), 1);
    assert!(pulled.legs()[0].is_iso());
    assert_eq!(pulled.base(), &z2);

    let loc = MonoidMorphism::to_trivial(&b2, &t).unwrap();
    let c = CoverFamily::new(
        b2.clone(),
        vec![MonoidMorphism::identity(&b2), loc],
        vec![0],
    )
    .unwrap();
    let refined =
        compose_covers(&c, &[CoverFamily::identity(&b2), CoverFamily::identity(&t)]).unwrap();
    assert_eq!(refined, c);
    let outer = compose_covers(&CoverFamily::identity(&b2), std::slice::from_ref(&c)).unwrap();
    assert_eq!(outer, c);
    assert!(compose_covers(&c, &[CoverFamily::identity(&t), CoverFamily::identity(&t)]).is_err());
}

#[test]
fn audit_flags_a_planted_non_cover() {
    let z2 = plain(MonoidTable::cyclic(2));
    let t = plain(MonoidTable::trivial());
    let collapse = MonoidMorphism::to_trivial(&z2, &t).unwrap();
    let good = CoverFamily::identity(&z2);
    let planted = CoverFamily::singleton(collapse.clone());
    let r = pretopology_audit(
        &[good.clone()],
        &[collapse.clone()],
        CoverKind::Fpqc,
        &cart(),
        &budget(),
    );
    assert!(r.is_ok(), "{r:#?}");
    let r = pretopology_audit(
        &[good, planted],
        &[collapse],
        CoverKind::Fpqc,
        &cart(),
        &budget(),
    );
    assert!(!r.item("pretopology.corpus").unwrap().is_ok());
    assert!(pretopology_audit(&[], &[], CoverKind::Fpqc, &cart(), &budget()).passed());
}

#[test]
fn constant_functor_with_mismatched_sections() {
    // Both legs of B2 → 1 (inverting 0) are epis, so the pairwise pushouts
    // collapse everything; a two-valued F whose transition maps disagree
    // admits matching families that no section produces.
    let b2 = plain(MonoidTable::boolean());
    let t = plain(MonoidTable::trivial());
    let loc = MonoidMorphism::to_trivial(&b2, &t).unwrap();
    let cover = CoverFamily::new(b2, vec![loc.clone(), loc], vec![0, 1]).unwrap();
    let f = FunctorData::on_cover(
        &cover,
        |_| FinSet::range(2),
        |g, d, c| {
            let flip = g.dom().total_size() == 2 && g.cod().total_size() == 1;
            FinMap::from_fn(d.clone(), c.clone(), |i| if flip { 0 } else { i }).unwrap()
        },
    )
    .unwrap();
    let r = sheaf_equalizer_check(&f, &cover).unwrap();
    assert!(!r.is_ok());
    assert!(!r.item("sheaf.injective").unwrap().is_ok());
    assert!(!r.item("sheaf.matching_in_image").unwrap().is_ok());
}
