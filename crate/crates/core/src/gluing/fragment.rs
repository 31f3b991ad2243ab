use std::collections::HashMap;
use std::sync::Arc;

use super::{
    adjunction_hat, adjunction_tilde, free_comm, hom_monoid, is_field_object, FreeComm, HomMonoid,
};
use super::{glue, GluedCategory, Transpositions};
use crate::commalg::{
    monoid_homs, monoid_isomorphism, CommMonoid, MonoidHom, MonoidMorphism, MonoidTable,
};
use crate::error::{invariant, precondition, Result};
use crate::fincore::{Arrow, FinCategory, FinFunctor};

type HomKey = (usize, usize, Vec<usize>);

/// The category whose objects are `names` and whose arrows are the given
/// maps, composed as functions. Identities must be among the maps.
fn concrete(names: &[String], homs: &[HomKey]) -> Result<(FinCategory, HashMap<HomKey, usize>)> {
    let index: HashMap<HomKey, usize> = homs
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, h)| (h, k))
        .collect();
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    let arrows = homs
        .iter()
        .map(|(s, t, map)| {
            let name = if s == t && map.iter().enumerate().all(|(i, &v)| i == v) {
                format!("1_{}", names[*s])
            } else {
                let k = counts.entry((*s, *t)).or_default();
                *k += 1;
                format!("{}→{}#{k}", names[*s], names[*t])
            };
            Arrow {
                name,
                src: *s,
                tgt: *t,
            }
        })
        .collect();
    let identities = (0..names.len())
        .map(|o| {
            let id = homs
                .iter()
                .find(|(s, t, _)| *s == o && *t == o)
                .map(|(_, _, m)| (0..m.len()).collect());
            id.and_then(|m: Vec<usize>| index.get(&(o, o, m)).copied())
                .ok_or_else(|| invariant(format!("no identity on `{}`", names[o])))
        })
        .collect::<Result<Vec<_>>>()?;
    let compose = |g: usize, f: usize| {
        let ((fs, ft, fm), (gs, gt, gm)) = (&homs[f], &homs[g]);
        if ft != gs {
            return None;
        }
        index
            .get(&(*fs, *gt, fm.iter().map(|&v| gm[v]).collect()))
            .copied()
    };
    let cat = FinCategory::new(names.to_vec(), arrows, identities, compose)?;
    Ok((cat, index))
}

fn all_homs(tables: &[&MonoidTable]) -> Vec<HomKey> {
    let mut out = Vec::new();
    for (i, a) in tables.iter().enumerate() {
        for (j, b) in tables.iter().enumerate() {
            out.extend(monoid_homs(a, b).into_iter().map(|m| (i, j, m)));
        }
    }
    out
}

fn lookup(index: &HashMap<HomKey, usize>, key: HomKey, what: &str) -> Result<usize> {
    index
        .get(&key)
        .copied()
        .ok_or_else(|| invariant(format!("{what} is missing from the fragment")))
}

/// A finite fragment of `CMon₀ ∪_{C[−], C(1,−)} Comm(pointed sets)`: the full
/// subcategory of `CMon₀` on the given monoids, and the full subcategory of
/// `Comm` on their free objects `C[M]` plus any extra objects. `R` sends a
/// `Comm` object `b` to the listed monoid isomorphic to `C(1, b)`, through a
/// fixed isomorphism `κ_b` (the inverse of `m ↦ coker ∘ i_m` on free objects).
#[derive(Clone, Debug)]
pub struct CmonGluing {
    cmon: Vec<(String, Arc<MonoidTable>)>,
    comm: Vec<(String, Arc<CommMonoid>)>,
    frees: Vec<FreeComm>,
    hom_monoids: Vec<HomMonoid>,
    kappa: Vec<Vec<usize>>,
    glued: GluedCategory,
}

impl CmonGluing {
    pub fn new(
        cmon: Vec<(String, MonoidTable)>,
        extras: Vec<(String, CommMonoid)>,
    ) -> Result<Self> {
        let cmon: Vec<(String, Arc<MonoidTable>)> =
            cmon.into_iter().map(|(n, t)| (n, Arc::new(t))).collect();
        let frees = cmon
            .iter()
            .map(|(_, m)| free_comm(m))
            .collect::<Result<Vec<_>>>()?;
        let mut comm: Vec<(String, Arc<CommMonoid>)> = cmon
            .iter()
            .zip(&frees)
            .map(|((n, _), f)| (format!("C[{n}]"), f.monoid().clone()))
            .collect();
        comm.extend(extras.into_iter().map(|(n, c)| (n, Arc::new(c))));
        let hom_monoids = comm
            .iter()
            .map(|(_, c)| hom_monoid(c))
            .collect::<Result<Vec<_>>>()?;

        // κ_b: C(1, b) → M_{Rb}, and Rb itself.
        let mut kappa = Vec::with_capacity(comm.len());
        let mut r_objects = Vec::with_capacity(comm.len());
        for (j, hm) in hom_monoids.iter().enumerate() {
            if let Some(free) = frees.get(j) {
                let unit = adjunction_hat(free, &MonoidMorphism::identity(free.monoid()))?;
                let mut inv = vec![0; unit.map().len()];
                for (m, &v) in unit.map().iter().enumerate() {
                    inv[v] = m;
                }
                kappa.push(inv);
                r_objects.push(j);
            } else {
                let (i, iso) = cmon
                    .iter()
                    .enumerate()
                    .find_map(|(i, (_, m))| monoid_isomorphism(hm.table(), m).map(|iso| (i, iso)))
                    .ok_or_else(|| {
                        precondition(format!(
                            "C(1, {}) is not isomorphic to a listed monoid",
                            comm[j].0
                        ))
                    })?;
                kappa.push(iso);
                r_objects.push(i);
            }
        }

        let a_names: Vec<String> = cmon.iter().map(|(n, _)| n.clone()).collect();
        let a_homs = all_homs(&cmon.iter().map(|(_, m)| m.as_ref()).collect::<Vec<_>>());
        let (a_cat, a_index) = concrete(&a_names, &a_homs)?;
        let b_names: Vec<String> = comm.iter().map(|(n, _)| n.clone()).collect();
        let b_homs = all_homs(&comm.iter().map(|(_, c)| c.table(0)).collect::<Vec<_>>());
        let (b_cat, b_index) = concrete(&b_names, &b_homs)?;
        let (a_cat, b_cat) = (Arc::new(a_cat), Arc::new(b_cat));

        // L(f) = (u ∘ f)~.
        let l_arrows = a_homs
            .iter()
            .map(|(i, j, f)| {
                let free_j = &frees[*j];
                let u = adjunction_hat(free_j, &MonoidMorphism::identity(free_j.monoid()))?;
                let beta = MonoidHom::new(
                    cmon[*i].1.clone(),
                    u.cod().clone(),
                    f.iter().map(|&v| u.apply(v)).collect(),
                )?;
                let lf = adjunction_tilde(&frees[*i], &beta, free_j.monoid())?;
                lookup(&b_index, (*i, *j, lf.comp(0).to_vec()), "C[f]")
            })
            .collect::<Result<Vec<_>>>()?;
        let l = FinFunctor::new(
            a_cat.clone(),
            b_cat.clone(),
            (0..cmon.len()).collect(),
            l_arrows,
        )?;

        // R(g) = κ ∘ C(1, g) ∘ κ⁻¹.
        let kappa_inv: Vec<Vec<usize>> = kappa
            .iter()
            .map(|k| {
                let mut inv = vec![0; k.len()];
                for (x, &m) in k.iter().enumerate() {
                    inv[m] = x;
                }
                inv
            })
            .collect();
        let r_arrows = b_homs
            .iter()
            .map(|(j, k, g)| {
                let gm = MonoidMorphism::single(comm[*j].1.clone(), comm[*k].1.clone(), g.clone())?
                    .as_carrier_map();
                let map = kappa_inv[*j]
                    .iter()
                    .map(|&phi| {
                        let pushed = hom_monoids[*j].map(phi).then(&gm)?;
                        let idx = hom_monoids[*k]
                            .index_of(&pushed)
                            .ok_or_else(|| invariant("g ∘ φ is not a pointed map"))?;
                        Ok(kappa[*k][idx])
                    })
                    .collect::<Result<Vec<_>>>()?;
                lookup(&a_index, (r_objects[*j], r_objects[*k], map), "C(1, g)")
            })
            .collect::<Result<Vec<_>>>()?;
        let r = FinFunctor::new(b_cat.clone(), a_cat.clone(), r_objects.clone(), r_arrows)?;

        // Φ(g) = κ ∘ ĝ.
        let mut phi = Transpositions::new();
        for (g, (i, k, map)) in b_homs.iter().enumerate() {
            if *i >= cmon.len() {
                continue;
            }
            let gm = MonoidMorphism::single(comm[*i].1.clone(), comm[*k].1.clone(), map.clone())?;
            let hat = adjunction_hat(&frees[*i], &gm)?;
            let f = hat.map().iter().map(|&v| kappa[*k][v]).collect();
            phi.insert(*i, g, lookup(&a_index, (*i, r_objects[*k], f), "Φ(g)")?);
        }
        let glued = glue(a_cat, b_cat, l, r, phi)?;
        Ok(Self {
            cmon,
            comm,
            frees,
            hom_monoids,
            kappa,
            glued,
        })
    }

    pub fn glued(&self) -> &GluedCategory {
        &self.glued
    }

    pub fn cmon_objects(&self) -> &[(String, Arc<MonoidTable>)] {
        &self.cmon
    }

    pub fn comm_objects(&self) -> &[(String, Arc<CommMonoid>)] {
        &self.comm
    }

    pub fn free(&self, i: usize) -> &FreeComm {
        &self.frees[i]
    }

    pub fn hom_monoid(&self, j: usize) -> &HomMonoid {
        &self.hom_monoids[j]
    }

    /// `κ_b` as a table on element indices.
    pub fn kappa(&self, j: usize) -> &[usize] {
        &self.kappa[j]
    }

    /// Which `Comm` objects are field objects.
    pub fn field_flags(&self) -> Result<Vec<bool>> {
        self.comm.iter().map(|(_, c)| is_field_object(c)).collect()
    }
}
