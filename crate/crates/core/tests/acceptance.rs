//! Desk-scale acceptance suite. Each criterion is one test and prints one
//! summary line (visible with `--nocapture`).

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relalg::actegory::Actegory;
use relalg::basechange::{check_theta_iso, compute_theta};
use relalg::commalg::{
    cmon0_up_to, comm_monoids_up_to, is_epi, monoid_isomorphism, monoid_morphisms, Base,
    CommMonoid, MonoidMorphism, MonoidTable,
};
use relalg::fincore::{FinMap, FinSet};
use relalg::gluing::{free_comm, hom_monoid, is_field_object, CmonGluing};
use relalg::report::{ProbeBudget, Status};
use relalg::scalars::{adjunction_sweep, extend_scalars, modules_up_to, Module};
use relalg::suite::{emit_report, parse_suite, run_suite, Format, RunOptions, Suite, SuiteReport};
use relalg::topology::{
    flatness_probe, pretopology_audit, sheaf_equalizer_check, CoverFamily, CoverKind, FunctorArrow,
    FunctorData, FunctorObject, Verdict,
};

const CORPUS: &str = include_str!("../corpus/acceptance.json");

fn report(n: u32, name: &str, ok: bool, detail: String, elapsed: Duration) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n} ({name}): {status}: {detail} [{elapsed:.2?}]");
}

fn cartesian() -> Arc<Actegory> {
    Arc::new(Actegory::self_action(Base::cartesian()))
}

fn plain_up_to(n: usize) -> Vec<Arc<CommMonoid>> {
    comm_monoids_up_to(n)
        .into_iter()
        .map(|t| Arc::new(CommMonoid::plain(t)))
        .collect()
}

fn corpus() -> (Suite, Vec<SuiteReport>) {
    let suite = parse_suite(CORPUS).unwrap();
    let rows = run_suite(&suite, &RunOptions::default());
    (suite, rows)
}

/// Equivariant maps `m → n` on the set base, by brute force.
fn count_equivariant(m: &Module, n: &Module, act: impl Fn(usize, usize) -> usize) -> usize {
    let (sm, sn) = (m.size(0), n.size(0));
    if sn == 0 {
        return usize::from(sm == 0);
    }
    let scalars = m.over().table(0).size();
    let mut count = 0;
    let mut f = vec![0usize; sm];
    loop {
        let ok = (0..scalars).all(|s| (0..sm).all(|v| f[m.act(0, s, v)] == act(s, f[v])));
        count += usize::from(ok);
        let mut k = 0;
        loop {
            if k == sm {
                return count;
            }
            f[k] += 1;
            if f[k] < sn {
                break;
            }
            f[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn criterion_1_extension_restriction_adjunction() {
    let start = Instant::now();
    let act = cartesian();
    let monoids = plain_up_to(4);
    let sweep = adjunction_sweep(&act, &monoids, 3);

    // Independent cardinality check on a smaller range:
    // |Hom_b(α* m, n)| = |Hom_a(m, α_* n)|.
    let small = plain_up_to(3);
    let mut oracle_pairs = 0;
    let mut oracle_ok = true;
    for a in &small {
        let ms = modules_up_to(&act, a, 2, true);
        for b in &small {
            let ns = modules_up_to(&act, b, 2, true);
            for alpha in monoid_morphisms(a, b) {
                let amap = alpha.comp(0).to_vec();
                for m in &ms {
                    let ext = extend_scalars(&alpha, m).unwrap();
                    for n in &ns {
                        let left = count_equivariant(&ext.module, n, |s, v| n.act(0, s, v));
                        let right = count_equivariant(m, n, |s, v| n.act(0, amap[s], v));
                        oracle_ok &= left == right;
                        oracle_pairs += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = sweep.passed() && oracle_ok && elapsed < Duration::from_secs(60);
    report(
        1,
        "adjunction",
        ok,
        format!(
            "{} monoids of order ≤ 4, modules ≤ 3, {} law instances; hom-count oracle on {oracle_pairs} pairs",
            monoids.len(),
            sweep.instances
        ),
        elapsed,
    );
    assert!(sweep.passed(), "{:?}", sweep.first_failure());
    assert!(oracle_ok);
}

#[test]
fn criterion_2_comparison_isomorphisms() {
    let start = Instant::now();
    let (suite, rows) = corpus();
    let mut by_backend: BTreeMap<String, u64> = BTreeMap::new();
    let mut ok = true;
    for row in rows.iter().filter(|r| r.op == "comparison_sweep") {
        ok &= row.report.passed();
        let check = suite.checks.iter().find(|c| c.id == row.report.id).unwrap();
        let relalg::suite::OpDoc::ComparisonSweep { action, .. } = &check.op else {
            unreachable!()
        };
        let backend = format!("{:?}", suite.registry.actions[action].backend());
        let backend = backend.split([' ', '{', '(']).next().unwrap().to_string();
        *by_backend.entry(backend).or_default() += row.report.instances;
    }
    let total: u64 = by_backend.values().sum();
    let elapsed = start.elapsed();
    let wanted = [
        "SelfAction",
        "Diagonal",
        "Presheaf",
        "Representation",
        "Digraph",
    ];
    let covered = wanted
        .iter()
        .all(|b| by_backend.get(*b).is_some_and(|&n| n > 0));
    let ok = ok && covered && total >= 50 && elapsed < Duration::from_secs(60);
    report(
        2,
        "comparison isomorphisms",
        ok,
        format!("{total} maps: {by_backend:?}"),
        elapsed,
    );
    assert!(ok);
}

fn refutation(alpha: &MonoidMorphism) -> (Verdict, Duration) {
    let start = Instant::now();
    let v = flatness_probe(alpha, &cartesian(), &ProbeBudget::default()).unwrap();
    (v, start.elapsed())
}

#[test]
fn criterion_3_flatness_refutations() {
    let t = Arc::new(CommMonoid::plain(MonoidTable::trivial()));
    let z2 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(2)));
    let cases = [
        (
            "trivial→Z2",
            MonoidMorphism::from_trivial(&t, &z2).unwrap(),
            "terminal",
        ),
        (
            "Z2→trivial",
            MonoidMorphism::to_trivial(&z2, &t).unwrap(),
            "product",
        ),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    let mut total = Duration::ZERO;
    for (name, alpha, shape) in cases {
        let (v, elapsed) = refutation(&alpha);
        total += elapsed;
        let w = v.witness().cloned();
        let size: Option<usize> = w.as_ref().and_then(|w| w.get("total_size")?.parse().ok());
        let this = v.is_refuted()
            && w.as_ref().and_then(|w| w.get("shape")) == Some(shape)
            && size.is_some_and(|s| s <= 4)
            && elapsed < Duration::from_secs(1);
        ok &= this;
        detail.push(format!(
            "{name} refuted by {shape} (size {size:?}) in {elapsed:.2?}"
        ));
    }
    report(3, "flatness refutation", ok, detail.join("; "), total);
    assert!(ok);
}

#[test]
fn criterion_4_pretopology_audit() {
    let start = Instant::now();
    let act = cartesian();
    let budget = ProbeBudget::default();
    let monoids = plain_up_to(4);
    let mut covers = Vec::new();
    let mut probe_verified = 0;
    for a in &monoids {
        covers.push(CoverFamily::identity(a));
        for b in &monoids {
            for f in monoid_morphisms(a, b) {
                if f.is_iso() {
                    if a != b || f != MonoidMorphism::identity(a) {
                        covers.push(CoverFamily::singleton(f));
                    }
                    continue;
                }
                let c = CoverFamily::singleton(f);
                if CoverKind::Fpqc.check(&c, &act, &budget).is_ok() {
                    probe_verified += 1;
                    covers.push(c);
                }
            }
        }
    }
    // Pull back along every map between monoids of order ≤ 3.
    let small = plain_up_to(3);
    let morphisms: Vec<MonoidMorphism> = small
        .iter()
        .flat_map(|a| small.iter().flat_map(move |b| monoid_morphisms(a, b)))
        .collect();
    let audit = pretopology_audit(&covers, &morphisms, CoverKind::Fpqc, &act, &budget);
    let elapsed = start.elapsed();
    let ok = audit.is_ok() && probe_verified > 0 && elapsed < Duration::from_secs(30);
    let items: Vec<String> = audit
        .items
        .iter()
        .map(|i| format!("{}={}", i.id, i.instances))
        .collect();
    report(
        4,
        "pretopology",
        ok,
        format!(
            "{} covers ({probe_verified} probe-verified non-iso), {} base maps; {}",
            covers.len(),
            morphisms.len(),
            items.join(", ")
        ),
        elapsed,
    );
    assert!(audit.is_ok(), "{:?}", audit.first_failure());
    assert!(ok);
}

/// Union-find on `0..n`.
struct Classes(Vec<usize>);

impl Classes {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
        a != b
    }
}

/// `α` is epi iff both coprojections `b → b ⊔_a b` agree. The cokernel pair
/// is `b × b` modulo the congruence generated by `(α x, 1) ~ (1, α x)`.
fn epi_oracle(alpha: &MonoidMorphism) -> bool {
    let (a, b) = (alpha.dom().table(0), alpha.cod().table(0));
    let n = b.size();
    let e = b.unit();
    let pair = |x: usize, y: usize| x * n + y;
    let mul = |p: usize, q: usize| pair(b.mul(p / n, q / n), b.mul(p % n, q % n));
    let mut cls = Classes((0..n * n).collect());
    for x in 0..a.size() {
        let y = alpha.comp(0)[x];
        cls.union(pair(y, e), pair(e, y));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..n * n {
            for q in 0..n * n {
                if p < q && cls.find(p) == cls.find(q) {
                    for w in 0..n * n {
                        changed |= cls.union(mul(p, w), mul(q, w));
                    }
                }
            }
        }
    }
    (0..n).all(|y| cls.find(pair(y, e)) == cls.find(pair(e, y)))
}

#[test]
fn criterion_5_epimorphism_consistency() {
    let start = Instant::now();
    let small = plain_up_to(3);
    let targets = plain_up_to(4);
    let (mut morphisms, mut surjections, mut separated) = (0, 0, 0);
    let mut ok = true;
    for a in &small {
        for b in &small {
            for alpha in monoid_morphisms(a, b) {
                morphisms += 1;
                let (epi, _) = is_epi(&alpha).unwrap();
                ok &= epi == epi_oracle(&alpha);
                let map = alpha.comp(0);
                if (0..b.table(0).size()).all(|y| map.contains(&y)) {
                    surjections += 1;
                    ok &= epi;
                }
                let found = targets.iter().any(|c| {
                    let maps = monoid_morphisms(b, c);
                    maps.iter().enumerate().any(|(i, g)| {
                        maps[i + 1..].iter().any(|h| {
                            alpha.then(g).unwrap().comps() == alpha.then(h).unwrap().comps()
                        })
                    })
                });
                if found {
                    separated += 1;
                    ok &= !epi;
                }
            }
        }
    }
    let t = Arc::new(CommMonoid::plain(MonoidTable::trivial()));
    let z2 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(2)));
    let unit = MonoidMorphism::from_trivial(&t, &z2).unwrap();
    ok &= !is_epi(&unit).unwrap().0;
    let elapsed = start.elapsed();
    let ok = ok && elapsed < Duration::from_secs(60);
    report(
        5,
        "epimorphisms",
        ok,
        format!("{morphisms} maps, {surjections} surjections, {separated} separated by a pair into order ≤ 4; congruence-closure oracle agrees"),
        elapsed,
    );
    assert!(ok);
}

/// Brute-force sheaf condition: sections inject into families and hit
/// exactly the matching ones.
fn sheaf_oracle(f: &FunctorData, legs: usize) -> bool {
    let objects = f.objects();
    let arrow = |name: &str| f.arrows().iter().find(|a| a.name == name).unwrap();
    let sizes: Vec<usize> = (0..legs).map(|i| objects[i + 1].value.size()).collect();
    let mut families = Vec::new();
    let total: usize = sizes.iter().product();
    for mut code in 0..total {
        let mut fam = Vec::with_capacity(legs);
        for &s in &sizes {
            fam.push(code % s);
            code /= s;
        }
        families.push(fam);
    }
    let matching: Vec<&Vec<usize>> = families
        .iter()
        .filter(|fam| {
            (0..legs).all(|i| {
                (i..legs).all(|j| {
                    let l = &arrow(&format!("in{i}{j}.0")).value;
                    let r = &arrow(&format!("in{i}{j}.1")).value;
                    l.apply(fam[i]) == r.apply(fam[j])
                })
            })
        })
        .collect();
    let images: Vec<Vec<usize>> = (0..objects[0].value.size())
        .map(|x| {
            (0..legs)
                .map(|i| arrow(&format!("leg{i}")).value.apply(x))
                .collect()
        })
        .collect();
    let injective = (0..images.len()).all(|x| (0..x).all(|y| images[x] != images[y]));
    injective && matching.len() == images.len() && matching.iter().all(|m| images.contains(m))
}

fn random_map(rng: &mut ChaCha8Rng, dom: &FinSet, cod: &FinSet) -> FinMap {
    let values = (0..dom.size())
        .map(|_| rng.gen_range(0..cod.size()))
        .collect();
    FinMap::new(dom.clone(), cod.clone(), values).unwrap()
}

/// One random functor on the diagram of `cover`, in one of three styles.
fn random_functor(rng: &mut ChaCha8Rng, cover: &CoverFamily) -> FunctorData {
    let skeleton = FunctorData::on_cover(
        cover,
        |_| FinSet::singleton(),
        |_, d, c| FinMap::from_fn(d.clone(), c.clone(), |_| 0).unwrap(),
    )
    .unwrap();
    let legs = cover.legs().len();
    let style = rng.gen_range(0..3);
    if style == 0 {
        let b = plain_up_to(2)[rng.gen_range(0..2)].clone();
        return FunctorData::corepresented(&b, cover).unwrap();
    }
    let mut objects: Vec<FunctorObject> = skeleton.objects().to_vec();
    for o in objects.iter_mut().skip(1) {
        o.value = FinSet::range(rng.gen_range(1..=3));
    }
    let mut arrows: Vec<FunctorArrow> = skeleton.arrows().to_vec();
    for a in arrows.iter_mut() {
        a.value = random_map(rng, &objects[a.src].value, &objects[a.tgt].value);
    }
    if style == 1 {
        // Random sections over the base.
        objects[0].value = FinSet::range(rng.gen_range(0..=4));
    } else {
        // Sections are the matching families, possibly perturbed.
        let probe = FunctorData::new(objects.clone(), arrows.clone()).unwrap();
        let sizes: Vec<usize> = (0..legs).map(|i| objects[i + 1].value.size()).collect();
        let mut fams: Vec<Vec<usize>> = vec![vec![]];
        for &s in &sizes {
            fams = fams
                .into_iter()
                .flat_map(|f| {
                    (0..s).map(move |x| {
                        let mut g = f.clone();
                        g.push(x);
                        g
                    })
                })
                .collect();
        }
        fams.retain(|fam| {
            (0..legs).all(|i| {
                (i..legs).all(|j| {
                    let find = |n: String| probe.arrows().iter().find(|a| a.name == n).unwrap();
                    find(format!("in{i}{j}.0")).value.apply(fam[i])
                        == find(format!("in{i}{j}.1")).value.apply(fam[j])
                })
            })
        });
        match rng.gen_range(0..3) {
            0 if !fams.is_empty() => {
                let k = rng.gen_range(0..fams.len());
                fams.push(fams[k].clone());
            }
            1 if !fams.is_empty() => {
                fams.remove(rng.gen_range(0..fams.len()));
            }
            _ => {}
        }
        objects[0].value = FinSet::range(fams.len());
        for a in arrows.iter_mut().filter(|a| a.src == 0) {
            let i = a.tgt - 1;
            a.value = FinMap::new(
                objects[0].value.clone(),
                objects[a.tgt].value.clone(),
                fams.iter().map(|f| f[i]).collect(),
            )
            .unwrap();
        }
        return FunctorData::new(objects, arrows).unwrap();
    }
    for a in arrows.iter_mut().filter(|a| a.src == 0) {
        a.value = random_map(rng, &objects[0].value, &objects[a.tgt].value);
    }
    FunctorData::new(objects, arrows).unwrap()
}

fn total_size(f: &FunctorData) -> usize {
    f.objects().iter().map(|o| o.value.size()).sum::<usize>()
        + f.arrows()
            .iter()
            .map(|a| a.value.dom().size())
            .sum::<usize>()
}

#[test]
fn criterion_6_sheaf_condition_matches_brute_force() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eaf);
    let monoids = plain_up_to(3);
    let (mut agree, mut sheaves, mut largest) = (0, 0, 0);
    let mut disagreements = Vec::new();
    let mut k = 0;
    while k < 100 {
        let base = monoids[rng.gen_range(0..monoids.len())].clone();
        let outgoing: Vec<MonoidMorphism> = monoids
            .iter()
            .flat_map(|c| monoid_morphisms(&base, c))
            .collect();
        let legs: Vec<MonoidMorphism> = (0..rng.gen_range(1..=3))
            .map(|_| outgoing[rng.gen_range(0..outgoing.len())].clone())
            .collect();
        let n = legs.len();
        let cover = CoverFamily::new(base, legs, (0..n).collect()).unwrap();
        let f = random_functor(&mut rng, &cover);
        let size = total_size(&f);
        if size > 200 {
            continue;
        }
        k += 1;
        largest = largest.max(size);
        let checked = sheaf_equalizer_check(&f, &cover).unwrap().is_ok();
        let oracle = sheaf_oracle(&f, n);
        sheaves += usize::from(oracle);
        if checked == oracle {
            agree += 1;
        } else {
            disagreements.push(k);
        }
    }
    let elapsed = start.elapsed();
    let ok = agree == 100 && sheaves > 0 && sheaves < 100 && elapsed < Duration::from_secs(30);
    report(
        6,
        "sheaf equalizer",
        ok,
        format!("{agree}/100 agree ({sheaves} sheaves), largest input {largest}"),
        elapsed,
    );
    assert!(
        disagreements.is_empty(),
        "disagreements on {disagreements:?}"
    );
    assert!(ok);
}

#[test]
fn criterion_7_theta() {
    let start = Instant::now();
    let suite = parse_suite(CORPUS).unwrap();
    let reg = &suite.registry;
    let budget = ProbeBudget::default();
    let strong = [
        ("u_z2", "id_sets", "id_lin", "sets", 2),
        ("u_w", "id_w", "pre_lin", "w_self", 1),
        ("u_d", "swap_adj", "swapped_lin", "d2_self", 1),
    ];
    let mut ok = true;
    let mut instances = 0;
    for (m, adj, lin, act, max) in strong {
        let alpha = &reg.morphisms[m];
        let adj = &reg.adjunctions[adj];
        let l = &reg.linear[lin];
        let ba = Arc::new(adj.left().apply_monoid(alpha.dom()).unwrap());
        for n in modules_up_to(&reg.actions[act], &ba, max, true) {
            let r = check_theta_iso(alpha, adj, l, &n, &budget);
            ok &= r.is_ok() && r.item("theta.bijective").unwrap().status == Status::Pass;
            instances += 1;
        }
    }
    let alpha = &reg.morphisms["u_z2"];
    let adj = &reg.adjunctions["id_sets"];
    let lax = &reg.linear["point_lin"];
    let mut non_bijective = 0;
    for n in modules_up_to(&reg.actions["sets"], alpha.dom(), 1, true) {
        let r = check_theta_iso(alpha, adj, lax, &n, &budget);
        ok &= r.item("theta.hypothesis.strong").unwrap().status == Status::Skipped;
        if !compute_theta(alpha, adj, lax, &n)
            .unwrap()
            .map()
            .is_bijective()
        {
            non_bijective += 1;
            ok &= r.item("theta.bijective").unwrap().status == Status::Skipped;
        }
    }
    let elapsed = start.elapsed();
    let ok = ok && non_bijective > 0 && elapsed < Duration::from_secs(20);
    report(
        7,
        "θ",
        ok,
        format!("{instances} strong instances bijective; non-strong instance non-bijective on {non_bijective} modules, hypotheses unmet"),
        elapsed,
    );
    assert!(ok);
}

/// Zero- and unit-preserving homomorphisms `m → a`, by brute force.
fn count_pointed_homs(m: &MonoidTable, a: &MonoidTable) -> usize {
    let (n, k) = (m.size(), a.size());
    let mut f = vec![0usize; n];
    let mut count = 0;
    loop {
        let ok = f[m.unit()] == a.unit()
            && m.zero().map(|z| f[z]) == a.zero()
            && (0..n).all(|x| (0..n).all(|y| f[m.mul(x, y)] == a.mul(f[x], f[y])));
        count += usize::from(ok);
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn criterion_8_gluing() {
    let start = Instant::now();
    let tables = cmon0_up_to(4);
    let doc = r#"{ "checks": [{ "op": "adjunction_hat_tilde",
                   "cmon": { "max_order": 4 }, "targets": { "max_order": 4 } }] }"#;
    let hat_tilde = run_suite(&parse_suite(doc).unwrap(), &RunOptions::default());
    let mut ok = hat_tilde[0].report.passed();

    let mut counted = 0;
    for m in &tables {
        let free = free_comm(&Arc::new(m.clone())).unwrap();
        let back = hom_monoid(free.monoid()).unwrap();
        ok &= monoid_isomorphism(back.table(), m).is_some();
        for t in &tables {
            let a = Arc::new(CommMonoid::pointed(t.clone()).unwrap());
            let hm = hom_monoid(&a).unwrap();
            ok &= monoid_morphisms(free.monoid(), &a).len() == count_pointed_homs(m, hm.table());
            counted += 1;
        }
    }

    let fragment = CmonGluing::new(
        cmon0_up_to(3)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (format!("M{i}"), t))
            .collect(),
        Vec::new(),
    )
    .unwrap();
    let glued = fragment.glued();
    let laws = glued.check();
    let delta = glued.check_delta_naturality();
    ok &= laws.passed() && delta.passed();

    let pointed = |t: MonoidTable| Arc::new(CommMonoid::pointed(t).unwrap());
    let fields = [
        is_field_object(&pointed(MonoidTable::boolean())).unwrap(),
        is_field_object(&pointed(MonoidTable::cyclic(2).with_zero())).unwrap(),
        is_field_object(&pointed(MonoidTable::saturating(2))).unwrap(),
    ];
    ok &= fields == [true, true, false];
    let elapsed = start.elapsed();
    let ok = ok && elapsed < Duration::from_secs(60);
    report(
        8,
        "gluing",
        ok,
        format!(
            "{} CMon₀ tables of order ≤ 4; hat/tilde {} instances; hom-count oracle on {counted} pairs; glued category of {} objects, {} law instances; δ {} instances; fields {fields:?}",
            tables.len(),
            hat_tilde[0].report.instances,
            glued.category().object_count(),
            laws.instances,
            delta.instances
        ),
        elapsed,
    );
    assert!(
        hat_tilde[0].report.passed(),
        "{:?}",
        hat_tilde[0].report.first_failure()
    );
    assert!(ok);
}

#[test]
fn criterion_9_deterministic_reports() {
    let start = Instant::now();
    let (_, first) = corpus();
    let (_, second) = corpus();
    let a = emit_report(&first, Format::Structured);
    let b = emit_report(&second, Format::Structured);
    let all_ok = first.iter().all(|r| r.report.is_ok());
    let elapsed = start.elapsed();
    let ok = a == b && all_ok;
    report(
        9,
        "determinism",
        ok,
        format!(
            "{} checks, {} bytes, identical: {}",
            first.len(),
            a.len(),
            a == b
        ),
        elapsed,
    );
    assert_eq!(a, b);
    assert!(all_ok);
}
