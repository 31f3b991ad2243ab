use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use relalg::actegory::Actegory;
use relalg::commalg::{
    cmon0_up_to, comm_monoids_up_to, is_epi, monoid_isomorphism, monoid_morphisms, pushout, Base,
    CommMonoid, MonoidMorphism,
};
use relalg::fincore::{FinMap, FinSet};
use relalg::gluing::{free_comm, hom_monoid};
use relalg::scalars::{check_module_laws, extend_scalars, modules_up_to, restrict_scalars, Module};
use relalg::suite::{emit_report, parse_suite, run_suite, Format, RunOptions};
use relalg::topology::{sheaf_equalizer_check, CoverFamily, FunctorData};

fn monoids() -> &'static [Arc<CommMonoid>] {
    static M: OnceLock<Vec<Arc<CommMonoid>>> = OnceLock::new();
    M.get_or_init(|| {
        comm_monoids_up_to(3)
            .into_iter()
            .map(|t| Arc::new(CommMonoid::plain(t)))
            .collect()
    })
}

fn cartesian() -> Arc<Actegory> {
    Arc::new(Actegory::self_action(Base::cartesian()))
}

fn modules(a: &Arc<CommMonoid>) -> Vec<Module> {
    modules_up_to(&cartesian(), a, 2, true)
}

/// A random morphism between two random monoids of order ≤ 3.
fn morphism() -> impl Strategy<Value = MonoidMorphism> {
    let n = monoids().len();
    (0..n, 0..n, any::<prop::sample::Index>()).prop_map(|(i, j, k)| {
        let ms = monoid_morphisms(&monoids()[i], &monoids()[j]);
        k.get(&ms).clone()
    })
}

fn composable() -> impl Strategy<Value = (MonoidMorphism, MonoidMorphism)> {
    let n = monoids().len();
    (morphism(), 0..n, any::<prop::sample::Index>()).prop_map(|(f, j, k)| {
        let gs = monoid_morphisms(f.cod(), &monoids()[j]);
        let g = k.get(&gs).clone();
        (f, g)
    })
}

fn finmap(dom: usize, cod: usize) -> impl Strategy<Value = FinMap> {
    prop::collection::vec(0..cod, dom)
        .prop_map(move |t| FinMap::new(FinSet::range(dom), FinSet::range(cod), t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finmap_composition_is_associative(
        (f, g, h) in (1..4usize, 1..4usize, 1..4usize, 1..4usize)
            .prop_flat_map(|(a, b, c, d)| (finmap(a, b), finmap(b, c), finmap(c, d)))
    ) {
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_of_commutative_monoids_are_commutative_monoids(
        i in 0..monoids().len(), j in 0..monoids().len()
    ) {
        let p = monoids()[i].table(0).product(monoids()[j].table(0));
        prop_assert!(p.check_laws(true).passed());
        prop_assert_eq!(p.size(), monoids()[i].table(0).size() * monoids()[j].table(0).size());
    }

    #[test]
    fn composites_of_homomorphisms_are_homomorphisms((f, g) in composable()) {
        prop_assert!(f.then(&g).unwrap().check_laws().passed());
    }

    #[test]
    fn epimorphisms_compose((f, g) in composable()) {
        let (ef, eg) = (is_epi(&f).unwrap().0, is_epi(&g).unwrap().0);
        let efg = is_epi(&f.then(&g).unwrap()).unwrap().0;
        if ef && eg {
            prop_assert!(efg);
        }
        // g ∘ f epi forces g epi.
        if efg {
            prop_assert!(eg);
        }
    }

    #[test]
    fn pushout_square_commutes(
        f in morphism(), j in 0..monoids().len(), k in any::<prop::sample::Index>()
    ) {
        let gs = monoid_morphisms(f.dom(), &monoids()[j]);
        let g = k.get(&gs);
        let p = pushout(&f, g).unwrap();
        prop_assert_eq!(f.then(&p.left).unwrap(), g.then(&p.right).unwrap());
        prop_assert!(p.object.table(0).check_laws(true).passed());
    }

    #[test]
    fn extension_and_restriction_give_modules(
        f in morphism(), k in any::<prop::sample::Index>(), l in any::<prop::sample::Index>()
    ) {
        let ms = modules(f.dom());
        let ext = extend_scalars(&f, k.get(&ms)).unwrap();
        prop_assert!(check_module_laws(&ext.module).passed());
        let ns = modules(f.cod());
        let res = restrict_scalars(&f, l.get(&ns)).unwrap();
        prop_assert!(check_module_laws(&res).passed());
        prop_assert_eq!(res.size(0), l.get(&ns).size(0));
    }

    #[test]
    fn corepresented_functors_are_sheaves_on_identity_covers(
        i in 0..monoids().len(), j in 0..monoids().len()
    ) {
        let cover = CoverFamily::identity(&monoids()[i]);
        let f = FunctorData::corepresented(&monoids()[j], &cover).unwrap();
        prop_assert!(sheaf_equalizer_check(&f, &cover).unwrap().passed());
    }

    #[test]
    fn free_commutative_monoid_round_trips(i in 0..cmon0_up_to(3).len()) {
        let m = Arc::new(cmon0_up_to(3)[i].clone());
        let free = free_comm(&m).unwrap();
        let back = hom_monoid(free.monoid()).unwrap();
        prop_assert!(monoid_isomorphism(back.table(), &m).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn structured_reports_round_trip_under_any_seed(seed in any::<u64>()) {
        let suite = parse_suite(include_str!("../corpus/acceptance.json")).unwrap();
        let opts = RunOptions { seed: Some(seed), ..RunOptions::default() };
        let text = emit_report(&run_suite(&suite, &opts), Format::Structured);
        let parsed: relalg::suite::StructuredReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    }
}
