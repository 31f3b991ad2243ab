use std::sync::Arc;

use crate::error::{shape, Result};
use crate::report::{CheckReport, Witness};

use super::category::FinCategory;
use super::colimit::coequalizer;
use super::set::{FinMap, FinSet};

/// A set-valued presheaf on a finite category: one set per object and, for
/// each arrow `f: x → y`, a restriction map `F(f): F(y) → F(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinPresheaf {
    base: Arc<FinCategory>,
    sets: Vec<FinSet>,
    maps: Vec<FinMap>,
}

impl FinPresheaf {
    /// Shape-checked constructor; functoriality is reported separately by
    /// [`check_presheaf_laws`].
    pub fn new(base: Arc<FinCategory>, sets: Vec<FinSet>, maps: Vec<FinMap>) -> Result<Self> {
        if sets.len() != base.object_count() || maps.len() != base.arrow_count() {
            return Err(shape("presheaf data does not cover the base category"));
        }
        for (f, m) in maps.iter().enumerate() {
            let a = base.arrow(f);
            if m.dom().size() != sets[a.tgt].size() || m.cod().size() != sets[a.src].size() {
                return Err(shape(format!(
                    "restriction along `{}` has the wrong endpoints",
                    a.name
                )));
            }
        }
        Ok(Self { base, sets, maps })
    }

    /// Builds from raw tables, `tables[f]` listing `F(f)` on `F(tgt f)`.
    pub fn from_tables(
        base: Arc<FinCategory>,
        sets: Vec<FinSet>,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if tables.len() != base.arrow_count() || sets.len() != base.object_count() {
            return Err(shape("presheaf data does not cover the base category"));
        }
        let maps = tables
            .into_iter()
            .enumerate()
            .map(|(f, t)| {
                let a = base.arrow(f);
                FinMap::new(sets[a.tgt].clone(), sets[a.src].clone(), t)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, sets, maps)
    }

    /// The presheaf with the same set everywhere and identity restrictions.
    pub fn constant(base: Arc<FinCategory>, set: FinSet) -> Self {
        let sets = vec![set.clone(); base.object_count()];
        let maps = vec![FinMap::identity(&set); base.arrow_count()];
        Self { base, sets, maps }
    }

    pub fn terminal(base: Arc<FinCategory>) -> Self {
        Self::constant(base, FinSet::singleton())
    }

    pub fn empty(base: Arc<FinCategory>) -> Self {
        Self::constant(base, FinSet::empty())
    }

    /// `Hom(−, c)`, labelled by arrow names.
    pub fn representable(base: Arc<FinCategory>, c: usize) -> Self {
        let homs: Vec<Vec<usize>> = (0..base.object_count()).map(|x| base.hom(x, c)).collect();
        let sets: Vec<FinSet> = homs
            .iter()
            .map(|h| FinSet::from_distinct(h.iter().map(|&f| base.arrow(f).name.clone()).collect()))
            .collect();
        let maps = (0..base.arrow_count())
            .map(|f| {
                let a = base.arrow(f);
                let table = homs[a.tgt]
                    .iter()
                    .map(|&h| {
                        let hf = base.compose(h, f).expect("composable by construction");
                        homs[a.src]
                            .iter()
                            .position(|&k| k == hf)
                            .expect("lands in hom-set")
                    })
                    .collect();
                FinMap::from_parts(sets[a.tgt].clone(), sets[a.src].clone(), table)
            })
            .collect();
        Self { base, sets, maps }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn at(&self, x: usize) -> &FinSet {
        &self.sets[x]
    }

    pub fn sets(&self) -> &[FinSet] {
        &self.sets
    }

    pub fn map(&self, f: usize) -> &FinMap {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[FinMap] {
        &self.maps
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(FinSet::size).collect()
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(FinSet::size).sum()
    }

    /// Restriction of an element `v ∈ F(tgt f)` along `f`.
    pub fn restrict(&self, f: usize, v: usize) -> usize {
        self.maps[f].apply(v)
    }
}

/// Checks `F(id) = id` and `F(g∘f) = F(f)∘F(g)` exhaustively.
pub fn check_presheaf_laws(presheaf: &FinPresheaf) -> CheckReport {
    let base = presheaf.base();
    let mut report = CheckReport::new("presheaf.laws");
    let mut ids = CheckReport::new("presheaf.identities");
    for x in 0..base.object_count() {
        let m = presheaf.map(base.identity(x));
        let bad = m.table().iter().enumerate().find(|&(i, &t)| i != t);
        ids.record(bad.is_none(), || {
            let (i, _) = bad.unwrap();
            Witness::new("identity does not act as identity")
                .field("object", &base.objects()[x])
                .field("element", presheaf.at(x).label(i))
        });
    }
    let mut comp = CheckReport::new("presheaf.composition");
    let n = base.arrow_count();
    for g in 0..n {
        for f in 0..n {
            let Some(gf) = base.compose(g, f) else {
                continue;
            };
            let tgt = base.arrow(g).tgt;
            let bad = presheaf.at(tgt).indices().find(|&v| {
                presheaf.restrict(gf, v) != presheaf.restrict(f, presheaf.restrict(g, v))
            });
            comp.record(bad.is_none(), || {
                Witness::new("F(g∘f) differs from F(f)∘F(g)")
                    .field("g", &base.arrow(g).name)
                    .field("f", &base.arrow(f).name)
                    .field("element", presheaf.at(tgt).label(bad.unwrap()))
            });
        }
    }
    report.push(ids);
    report.push(comp);
    report
}

/// A natural transformation between presheaves on the same base.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PresheafMap {
    dom: FinPresheaf,
    cod: FinPresheaf,
    comps: Vec<FinMap>,
}

impl PresheafMap {
    pub fn new(dom: FinPresheaf, cod: FinPresheaf, comps: Vec<FinMap>) -> Result<Self> {
        if dom.base() != cod.base() {
            return Err(shape("presheaf map between different bases"));
        }
        if comps.len() != dom.base().object_count() {
            return Err(shape("presheaf map needs one component per object"));
        }
        for (x, c) in comps.iter().enumerate() {
            if c.dom().size() != dom.at(x).size() || c.cod().size() != cod.at(x).size() {
                return Err(shape(format!("component {x} has the wrong endpoints")));
            }
        }
        Ok(Self { dom, cod, comps })
    }

    pub fn from_tables(
        dom: FinPresheaf,
        cod: FinPresheaf,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if tables.len() != dom.base().object_count() {
            return Err(shape("presheaf map needs one component per object"));
        }
        let comps = tables
            .into_iter()
            .enumerate()
            .map(|(x, t)| FinMap::new(dom.at(x).clone(), cod.at(x).clone(), t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, comps)
    }

    pub fn identity(p: &FinPresheaf) -> Self {
        Self {
            dom: p.clone(),
            cod: p.clone(),
            comps: p.sets().iter().map(FinMap::identity).collect(),
        }
    }

    pub fn dom(&self) -> &FinPresheaf {
        &self.dom
    }

    pub fn cod(&self) -> &FinPresheaf {
        &self.cod
    }

    pub fn comp(&self, x: usize) -> &FinMap {
        &self.comps[x]
    }

    pub fn comps(&self) -> &[FinMap] {
        &self.comps
    }

    pub fn check_naturality(&self) -> CheckReport {
        let base = self.dom.base();
        let mut report = CheckReport::new("presheaf_map.naturality");
        for f in 0..base.arrow_count() {
            let a = base.arrow(f);
            let bad = self.dom.at(a.tgt).indices().find(|&v| {
                self.comps[a.src].apply(self.dom.restrict(f, v))
                    != self.cod.restrict(f, self.comps[a.tgt].apply(v))
            });
            report.record(bad.is_none(), || {
                Witness::new("naturality square does not commute")
                    .field("arrow", &a.name)
                    .field("element", self.dom.at(a.tgt).label(bad.unwrap()))
            });
        }
        report
    }
}

/// The colimits that are computed objectwise.
#[derive(Clone, Copy, Debug)]
pub enum ColimitRequest<'a> {
    Coproduct(&'a [FinPresheaf]),
    Coequalizer(&'a PresheafMap, &'a PresheafMap),
}

/// A colimit object with its structure maps: the coprojections for a
/// coproduct, the single projection for a coequalizer.
#[derive(Clone, Debug)]
pub struct PresheafColimit {
    pub object: FinPresheaf,
    pub maps: Vec<PresheafMap>,
}

/// Colimits in a presheaf category, computed at each object with the
/// transition maps induced on the result.
pub fn presheaf_colimit_pointwise(request: ColimitRequest<'_>) -> Result<PresheafColimit> {
    match request {
        ColimitRequest::Coproduct(parts) => coproduct_pointwise(parts),
        ColimitRequest::Coequalizer(f, g) => coequalizer_pointwise(f, g),
    }
}

fn coproduct_pointwise(parts: &[FinPresheaf]) -> Result<PresheafColimit> {
    let Some(first) = parts.first() else {
        return Err(shape("coproduct of an empty family needs a base"));
    };
    let base = first.base().clone();
    if parts.iter().any(|p| *p.base() != base) {
        return Err(shape("coproduct of presheaves on different bases"));
    }
    let mut offsets = vec![vec![0; base.object_count()]];
    for p in parts {
        let last = offsets.last().unwrap();
        let next = (0..base.object_count())
            .map(|x| last[x] + p.at(x).size())
            .collect();
        offsets.push(next);
    }
    let sets: Vec<FinSet> = (0..base.object_count())
        .map(|x| {
            FinSet::from_distinct(
                parts
                    .iter()
                    .enumerate()
                    .flat_map(|(i, p)| p.at(x).labels().iter().map(move |l| format!("{i}.{l}")))
                    .collect(),
            )
        })
        .collect();
    let maps = (0..base.arrow_count())
        .map(|f| {
            let a = base.arrow(f);
            let table = parts
                .iter()
                .enumerate()
                .flat_map(|(i, p)| {
                    let off = offsets[i][a.src];
                    p.map(f).table().iter().map(move |&t| off + t)
                })
                .collect();
            FinMap::from_parts(sets[a.tgt].clone(), sets[a.src].clone(), table)
        })
        .collect();
    let object = FinPresheaf {
        base: base.clone(),
        sets,
        maps,
    };
    let maps = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let comps = (0..base.object_count())
                .map(|x| {
                    FinMap::from_parts(
                        p.at(x).clone(),
                        object.at(x).clone(),
                        p.at(x).indices().map(|v| offsets[i][x] + v).collect(),
                    )
                })
                .collect();
            PresheafMap {
                dom: p.clone(),
                cod: object.clone(),
                comps,
            }
        })
        .collect();
    Ok(PresheafColimit { object, maps })
}

fn coequalizer_pointwise(f: &PresheafMap, g: &PresheafMap) -> Result<PresheafColimit> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(shape("coequalizer needs a parallel pair of presheaf maps"));
    }
    let base = f.cod().base().clone();
    let mut sets = Vec::new();
    let mut projections = Vec::new();
    for x in 0..base.object_count() {
        let (q, p) = coequalizer(f.comp(x), g.comp(x))?;
        sets.push(q);
        projections.push(p);
    }
    let maps = (0..base.arrow_count())
        .map(|h| {
            let a = base.arrow(h);
            let mut table = vec![0; sets[a.tgt].size()];
            for v in f.cod().at(a.tgt).indices() {
                table[projections[a.tgt].apply(v)] =
                    projections[a.src].apply(f.cod().restrict(h, v));
            }
            FinMap::from_parts(sets[a.tgt].clone(), sets[a.src].clone(), table)
        })
        .collect();
    let object = FinPresheaf { base, sets, maps };
    let projection = PresheafMap {
        dom: f.cod().clone(),
        cod: object.clone(),
        comps: projections,
    };
    Ok(PresheafColimit {
        object,
        maps: vec![projection],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph() -> FinPresheaf {
        // Two vertices, one edge 0 → 1.
        let base = Arc::new(FinCategory::parallel_pair());
        FinPresheaf::from_tables(
            base,
            vec![FinSet::range(2), FinSet::new(["e"]).unwrap()],
            vec![vec![0, 1], vec![0], vec![0], vec![1]],
        )
        .unwrap()
    }

    #[test]
    fn representables_are_functorial() {
        let c = Arc::new(FinCategory::parallel_pair());
        for x in 0..2 {
            assert!(check_presheaf_laws(&FinPresheaf::representable(c.clone(), x)).passed());
        }
    }

    #[test]
    fn corrupted_restriction_is_reported() {
        let z2 =
            Arc::new(FinCategory::from_monoid(&["e".into(), "g".into()], |a, b| a ^ b, 0).unwrap());
        // g acting by a constant map does not square to the identity.
        let bad =
            FinPresheaf::from_tables(z2, vec![FinSet::range(2)], vec![vec![0, 1], vec![0, 0]])
                .unwrap();
        let report = check_presheaf_laws(&bad);
        assert!(!report.passed());
        assert!(report
            .item("presheaf.composition")
            .unwrap()
            .witness
            .is_some());
    }

    #[test]
    fn coproduct_with_empty_is_unchanged_in_size() {
        let g = graph();
        let e = FinPresheaf::empty(g.base().clone());
        let c = presheaf_colimit_pointwise(ColimitRequest::Coproduct(&[g.clone(), e])).unwrap();
        assert_eq!(c.object.sizes(), g.sizes());
        assert!(c.maps[0].comps().iter().all(FinMap::is_bijective));
    }

    #[test]
    fn coproduct_with_itself_doubles() {
        let g = graph();
        let c =
            presheaf_colimit_pointwise(ColimitRequest::Coproduct(&[g.clone(), g.clone()])).unwrap();
        assert_eq!(c.object.sizes(), vec![4, 2]);
        assert!(check_presheaf_laws(&c.object).passed());
    }

    #[test]
    fn pointwise_coequalizer_matches_set_coequalizer() {
        let g = graph();
        // Identify the two vertices: maps from the one-vertex graph picking 0 and 1.
        let point = FinPresheaf::from_tables(
            g.base().clone(),
            vec![FinSet::range(1), FinSet::empty()],
            vec![vec![0], vec![], vec![], vec![]],
        )
        .unwrap();
        let f = PresheafMap::from_tables(point.clone(), g.clone(), vec![vec![0], vec![]]).unwrap();
        let h = PresheafMap::from_tables(point, g.clone(), vec![vec![1], vec![]]).unwrap();
        let c = presheaf_colimit_pointwise(ColimitRequest::Coequalizer(&f, &h)).unwrap();
        for x in 0..2 {
            let (q, _) = coequalizer(f.comp(x), h.comp(x)).unwrap();
            assert_eq!(c.object.at(x), &q);
        }
        assert!(check_presheaf_laws(&c.object).passed());
        assert!(c.maps[0].check_naturality().passed());
    }
}
