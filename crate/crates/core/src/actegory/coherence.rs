use std::sync::Arc;

use crate::carrier::{
    carrier_coequalizer, carrier_coproduct, descend, Carrier, CarrierMap, Paired,
};
use crate::commalg::Base;
use crate::error::Result;
use crate::fincore::FinCategory;
use crate::report::{CheckReport, ProbeBudget, Witness};
use crate::search::{carrier_maps, enumerate_carriers, sample_within};

use super::{base_associator, base_left_unitor, base_right_unitor, Actegory, ActionStructure};

fn same(f: &CarrierMap, g: &CarrierMap) -> bool {
    f.comps() == g.comps()
}

fn base_act_map(
    base: &Base,
    dom: &Paired,
    cod: &Paired,
    f: &CarrierMap,
    g: &CarrierMap,
) -> CarrierMap {
    Actegory::self_action(base.clone()).act_map(dom, cod, f, g)
}

fn grid3(a: usize, b: usize, c: usize) -> Vec<(usize, usize, usize)> {
    (0..a)
        .flat_map(|i| (0..b).flat_map(move |j| (0..c).map(move |k| (i, j, k))))
        .collect()
}

fn record(report: &mut CheckReport, outcome: Result<bool>, witness: impl FnOnce() -> Witness) {
    match outcome {
        Ok(ok) => report.record(ok, witness),
        Err(e) => report.record(false, || witness().field("error", e)),
    }
}

fn tuple_witness(summary: &str, parts: &[(&str, &Carrier)]) -> Witness {
    parts.iter().fold(Witness::new(summary), |w, (name, c)| {
        w.field(*name, format!("{c:?}"))
    })
}

/// λ and l are natural bijections, natural in every argument, and satisfy
/// the pentagon-style law against the base associator and the two
/// triangle-style laws against the base unitors. Every check runs on all
/// tuples of objects with components of size ≤ `max_module_size`, or on a
/// seeded sample of `max_test_morphisms` of them.
pub fn check_actegory_coherence(a: &dyn ActionStructure, budget: &ProbeBudget) -> CheckReport {
    let base = a.base().clone();
    let k = budget.max_module_size;
    let cap = budget.max_test_morphisms;
    let cs = enumerate_carriers(base.shape(), k, base.is_pointed());
    let ms = enumerate_carriers(a.shape(), k, base.is_pointed());
    let mut report = CheckReport::new("actegory.coherence");

    let triples = sample_within(grid3(cs.len(), cs.len(), ms.len()), cap, budget.seed);

    let mut isos = CheckReport::new("actegory.structure_isomorphisms");
    for &(i, j, l) in &triples {
        let out = a
            .associator(&cs[i], &cs[j], &ms[l])
            .map(|lam| lam.is_bijective() && lam.is_natural());
        record(&mut isos, out, || {
            tuple_witness(
                "λ is not a natural bijection",
                &[("a", &cs[i]), ("b", &cs[j]), ("m", &ms[l])],
            )
        });
    }
    for m in &ms {
        let out = a.unitor(m).map(|u| u.is_bijective() && u.is_natural());
        record(&mut isos, out, || {
            tuple_witness("l is not a natural bijection", &[("m", m)])
        });
    }
    report.push(isos);

    let mut nat = CheckReport::new("actegory.naturality");
    let mut budget_left = cap;
    'tuples: for &(i, j, l) in &triples {
        for var in 0..3 {
            let pool = if var == 2 { &ms } else { &cs };
            let src = [&cs[i], &cs[j], &ms[l]][var];
            for tgt in pool {
                for f in carrier_maps(src, tgt, 2) {
                    if budget_left == 0 {
                        break 'tuples;
                    }
                    budget_left -= 1;
                    let out = associator_naturality(a, &base, [&cs[i], &cs[j], &ms[l]], var, &f);
                    record(&mut nat, out, || {
                        tuple_witness(
                            "λ is not natural",
                            &[("a", &cs[i]), ("b", &cs[j]), ("m", &ms[l])],
                        )
                        .field("variable", ["a", "b", "m"][var])
                        .field("map", format!("{f:?}"))
                    });
                }
            }
        }
    }
    for m in &ms {
        for m2 in &ms {
            for h in carrier_maps(m, m2, 2) {
                let out = unitor_naturality(a, &base, &h);
                record(&mut nat, out, || {
                    tuple_witness("l is not natural", &[("m", m), ("m'", m2)])
                        .field("map", format!("{h:?}"))
                });
            }
        }
    }
    report.push(nat);

    let quads: Vec<(usize, usize, usize, usize)> = triples
        .iter()
        .flat_map(|&(i, j, l)| (0..cs.len()).map(move |c| (i, j, c, l)))
        .collect();
    let quads = sample_within(quads, cap, budget.seed.wrapping_add(1));
    let mut pent = CheckReport::new("actegory.pentagon");
    for &(i, j, c, l) in &quads {
        let out = pentagon(a, &base, &cs[i], &cs[j], &cs[c], &ms[l]);
        record(&mut pent, out, || {
            tuple_witness(
                "the two composites a⊠(b⊠(c⊠m)) → ((a⊗b)⊗c)⊠m differ",
                &[("a", &cs[i]), ("b", &cs[j]), ("c", &cs[c]), ("m", &ms[l])],
            )
        });
    }
    report.push(pent);

    let mut tri = CheckReport::new("actegory.triangles");
    for b in &cs {
        for m in &ms {
            let out = triangle_left(a, &base, b, m);
            record(&mut tri, out, || {
                tuple_witness(
                    "(l_b ⊠ 1)∘λ_{1,b,m} differs from l_{b⊠m}",
                    &[("b", b), ("m", m)],
                )
            });
            let out = triangle_right(a, &base, b, m);
            record(&mut tri, out, || {
                tuple_witness(
                    "(r_a ⊠ 1)∘λ_{a,1,m} differs from 1 ⊠ l_m",
                    &[("a", b), ("m", m)],
                )
            });
        }
    }
    report.push(tri);
    report.within_budget(budget);
    report
}

fn identity_of(c: &Carrier) -> CarrierMap {
    CarrierMap::identity(c)
}

fn associator_naturality(
    a: &dyn ActionStructure,
    base: &Base,
    objs: [&Carrier; 3],
    var: usize,
    f: &CarrierMap,
) -> Result<bool> {
    let [x, y, m] = objs;
    let mut new = [x.clone(), y.clone(), m.clone()];
    new[var] = f.cod().clone();
    let [x2, y2, m2] = &new;
    let maps: [CarrierMap; 3] = std::array::from_fn(|k| {
        if k == var {
            f.clone()
        } else {
            identity_of(objs[k])
        }
    });

    let inner = a.act(y, m)?;
    let inner2 = a.act(y2, m2)?;
    let outer = a.act(x, &inner.carrier)?;
    let outer2 = a.act(x2, &inner2.carrier)?;
    let inner_map = a.act_map(&inner, &inner2, &maps[1], &maps[2]);
    let outer_map = a.act_map(&outer, &outer2, &maps[0], &inner_map);
    let lhs = outer_map.then(&a.associator(x2, y2, m2)?)?;

    let xy = base.tensor(x, y)?;
    let xy2 = base.tensor(x2, y2)?;
    let xy_map = base_act_map(base, &xy, &xy2, &maps[0], &maps[1]);
    let src = a.act(&xy.carrier, m)?;
    let tgt = a.act(&xy2.carrier, m2)?;
    let rhs = a
        .associator(x, y, m)?
        .then(&a.act_map(&src, &tgt, &xy_map, &maps[2]))?;
    Ok(same(&lhs, &rhs))
}

fn unitor_naturality(a: &dyn ActionStructure, base: &Base, h: &CarrierMap) -> Result<bool> {
    let one = base.unit_object();
    let src = a.act(&one, h.dom())?;
    let tgt = a.act(&one, h.cod())?;
    let lhs = a
        .act_map(&src, &tgt, &identity_of(&one), h)
        .then(&a.unitor(h.cod())?)?;
    let rhs = a.unitor(h.dom())?.then(h)?;
    Ok(same(&lhs, &rhs))
}

fn pentagon(
    a: &dyn ActionStructure,
    base: &Base,
    x: &Carrier,
    y: &Carrier,
    z: &Carrier,
    m: &Carrier,
) -> Result<bool> {
    let zm = a.act(z, m)?;
    let yzm = a.act(y, &zm.carrier)?;
    let xyzm = a.act(x, &yzm.carrier)?;
    let yz = base.tensor(y, z)?;
    let yz_m = a.act(&yz.carrier, m)?;
    let x_yz_m = a.act(x, &yz_m.carrier)?;
    let x_yz = base.tensor(x, &yz.carrier)?;
    let xy = base.tensor(x, y)?;
    let xy_z = base.tensor(&xy.carrier, z)?;
    let inner_nested = a.act(&x_yz.carrier, m)?;
    let outer_nested = a.act(&xy_z.carrier, m)?;

    let step1 = a.act_map(&xyzm, &x_yz_m, &identity_of(x), &a.associator(y, z, m)?);
    let step2 = a.associator(x, &yz.carrier, m)?;
    let alpha = base_associator(base, x, y, z)?;
    let step3 = a.act_map(&inner_nested, &outer_nested, &alpha, &identity_of(m));
    let path1 = step1.then(&step2)?.then(&step3)?;

    let path2 = a
        .associator(x, y, &zm.carrier)?
        .then(&a.associator(&xy.carrier, z, m)?)?;
    Ok(same(&path1, &path2))
}

fn triangle_left(a: &dyn ActionStructure, base: &Base, b: &Carrier, m: &Carrier) -> Result<bool> {
    let one = base.unit_object();
    let bm = a.act(b, m)?;
    let one_b = base.tensor(&one, b)?;
    let src = a.act(&one_b.carrier, m)?;
    let tgt = a.act(b, m)?;
    let lhs = a.associator(&one, b, m)?.then(&a.act_map(
        &src,
        &tgt,
        &base_left_unitor(base, b)?,
        &identity_of(m),
    ))?;
    let rhs = a.unitor(&bm.carrier)?;
    Ok(same(&lhs, &rhs))
}

fn triangle_right(a: &dyn ActionStructure, base: &Base, x: &Carrier, m: &Carrier) -> Result<bool> {
    let one = base.unit_object();
    let x_one = base.tensor(x, &one)?;
    let src = a.act(&x_one.carrier, m)?;
    let tgt = a.act(x, m)?;
    let lhs = a.associator(x, &one, m)?.then(&a.act_map(
        &src,
        &tgt,
        &base_right_unitor(base, x)?,
        &identity_of(m),
    ))?;
    let one_m = a.act(&one, m)?;
    let x_one_m = a.act(x, &one_m.carrier)?;
    let rhs = a.act_map(&x_one_m, &tgt, &identity_of(x), &a.unitor(m)?);
    Ok(same(&lhs, &rhs))
}

/// `c ⊠ −` and `− ⊠ m` carry coproducts and coequalizers to coproducts and
/// coequalizers: the canonical comparison from the colimit of the images to
/// the image of the colimit is a bijection.
pub fn check_colimit_preservation(a: &dyn ActionStructure, budget: &ProbeBudget) -> CheckReport {
    let base = a.base().clone();
    let k = budget.max_module_size;
    let cap = budget.max_test_morphisms;
    let cs = enumerate_carriers(base.shape(), k, base.is_pointed());
    let ms = enumerate_carriers(a.shape(), k, base.is_pointed());
    let mut report = CheckReport::new("actegory.colimits");

    let mut coprod_right = CheckReport::new("actegory.colimits.coproduct_in_object");
    for (c, i, j) in sample_within(grid3(cs.len(), ms.len(), ms.len()), cap, budget.seed) {
        let out = coproduct_comparison(
            &[ms[i].clone(), ms[j].clone()],
            |part| a.act(&cs[c], part),
            |dom, cod, inj| a.act_map(dom, cod, &identity_of(&cs[c]), inj),
        );
        record(&mut coprod_right, out, || {
            tuple_witness(
                "c ⊠ (m + m') is not the coproduct",
                &[("c", &cs[c]), ("m", &ms[i]), ("m'", &ms[j])],
            )
        });
    }
    report.push(coprod_right);

    let mut coprod_left = CheckReport::new("actegory.colimits.coproduct_in_base");
    for (i, j, m) in sample_within(grid3(cs.len(), cs.len(), ms.len()), cap, budget.seed) {
        let out = coproduct_comparison(
            &[cs[i].clone(), cs[j].clone()],
            |part| a.act(part, &ms[m]),
            |dom, cod, inj| a.act_map(dom, cod, inj, &identity_of(&ms[m])),
        );
        record(&mut coprod_left, out, || {
            tuple_witness(
                "(c + c') ⊠ m is not the coproduct",
                &[("c", &cs[i]), ("c'", &cs[j]), ("m", &ms[m])],
            )
        });
    }
    report.push(coprod_left);

    let mut coeq_right = CheckReport::new("actegory.colimits.coequalizer_in_object");
    let pairs = parallel_pairs(&ms, cap, budget.seed);
    for c in &cs {
        for (f, g) in &pairs {
            let out = coequalizer_comparison(
                f,
                g,
                |x| a.act(c, x),
                |dom, cod, h| a.act_map(dom, cod, &identity_of(c), h),
            );
            record(&mut coeq_right, out, || {
                tuple_witness("c ⊠ − does not preserve a coequalizer", &[("c", c)])
                    .field("f", format!("{f:?}"))
                    .field("g", format!("{g:?}"))
            });
        }
    }
    report.push(coeq_right);

    let mut coeq_left = CheckReport::new("actegory.colimits.coequalizer_in_base");
    let pairs = parallel_pairs(&cs, cap, budget.seed);
    for m in &ms {
        for (f, g) in &pairs {
            let out = coequalizer_comparison(
                f,
                g,
                |x| a.act(x, m),
                |dom, cod, h| a.act_map(dom, cod, h, &identity_of(m)),
            );
            record(&mut coeq_left, out, || {
                tuple_witness("− ⊠ m does not preserve a coequalizer", &[("m", m)])
                    .field("f", format!("{f:?}"))
                    .field("g", format!("{g:?}"))
            });
        }
    }
    report.push(coeq_left);
    report.within_budget(budget);
    report
}

/// Parallel pairs `f, g: x → y` between enumerated objects, at most `cap`.
fn parallel_pairs(objs: &[Carrier], cap: usize, seed: u64) -> Vec<(CarrierMap, CarrierMap)> {
    let mut pairs = Vec::new();
    for x in objs {
        for y in objs {
            let maps = carrier_maps(x, y, 6);
            for (i, f) in maps.iter().enumerate() {
                for g in &maps[i..] {
                    pairs.push((f.clone(), g.clone()));
                }
            }
        }
    }
    sample_within(pairs, cap, seed)
}

fn coproduct_comparison(
    parts: &[Carrier],
    act: impl Fn(&Carrier) -> Result<Paired>,
    act_map: impl Fn(&Paired, &Paired, &CarrierMap) -> CarrierMap,
) -> Result<bool> {
    let (sum, injections) = carrier_coproduct(parts)?;
    let whole = act(&sum)?;
    let images = parts.iter().map(&act).collect::<Result<Vec<_>>>()?;
    let (_, image_injections) =
        carrier_coproduct(&images.iter().map(|p| p.carrier.clone()).collect::<Vec<_>>())?;
    let values: Vec<CarrierMap> = images
        .iter()
        .zip(&injections)
        .map(|(img, inj)| act_map(img, &whole, inj))
        .collect();
    let cmp = descend(&image_injections, &values)?;
    Ok(cmp.is_bijective())
}

fn coequalizer_comparison(
    f: &CarrierMap,
    g: &CarrierMap,
    act: impl Fn(&Carrier) -> Result<Paired>,
    act_map: impl Fn(&Paired, &Paired, &CarrierMap) -> CarrierMap,
) -> Result<bool> {
    let q = carrier_coequalizer(f, g)?;
    let (dom, cod, quot) = (act(f.dom())?, act(f.cod())?, act(q.cod())?);
    let q2 = carrier_coequalizer(&act_map(&dom, &cod, f), &act_map(&dom, &cod, g))?;
    let cmp = descend(&[q2], &[act_map(&cod, &quot, &q)])?;
    Ok(cmp.is_bijective())
}

/// A deliberately broken backend: the associator's images of the first two
/// elements of its first non-trivial component are exchanged.
pub struct TransposedAssociator(pub Actegory);

impl ActionStructure for TransposedAssociator {
    fn base(&self) -> &Base {
        self.0.base()
    }

    fn shape(&self) -> &Arc<FinCategory> {
        ActionStructure::shape(&self.0)
    }

    fn act(&self, c: &Carrier, m: &Carrier) -> Result<Paired> {
        self.0.act(c, m)
    }

    fn act_map(&self, dom: &Paired, cod: &Paired, f: &CarrierMap, g: &CarrierMap) -> CarrierMap {
        self.0.act_map(dom, cod, f, g)
    }

    fn associator(&self, a: &Carrier, b: &Carrier, m: &Carrier) -> Result<CarrierMap> {
        let lam = self.0.associator(a, b, m)?;
        let skip = usize::from(self.0.is_pointed());
        let mut comps = lam.comps().to_vec();
        if let Some(c) = comps.iter_mut().find(|c| c.len() >= 2 + skip) {
            c.swap(skip, skip + 1);
        }
        CarrierMap::new(lam.dom().clone(), lam.cod().clone(), comps)
    }

    fn unitor(&self, m: &Carrier) -> Result<CarrierMap> {
        self.0.unitor(m)
    }
}
