//! The set-level sheaf condition for one cover: `F(a) → ∏ F(a_i)` must be
//! injective with image exactly the matching families, those `(x_i)` whose
//! images in `F(a_i ⊗_a a_j)` agree for every pair of legs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::commalg::{pushout, CommMonoid, MonoidMorphism};
use crate::error::{shape, Error, Result};
use crate::fincore::{FinMap, FinSet};
use crate::report::{CheckReport, Witness};

use super::CoverFamily;

#[derive(Clone, Debug)]
pub struct FunctorObject {
    pub name: String,
    pub monoid: Arc<CommMonoid>,
    pub value: FinSet,
}

#[derive(Clone, Debug)]
pub struct FunctorArrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub morphism: MonoidMorphism,
    pub value: FinMap,
}

/// A functor from a finite diagram of monoids to finite sets, given
/// explicitly by its values. Functoriality is not assumed.
#[derive(Clone, Debug)]
pub struct FunctorData {
    objects: Vec<FunctorObject>,
    arrows: Vec<FunctorArrow>,
}

/// Where the pieces a sheaf check needs sit inside a [`FunctorData`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverData {
    pub base: usize,
    /// Per leg, the arrow carrying it.
    pub legs: Vec<usize>,
    /// Per pair `i ≤ j`, the two coprojections into the pushout.
    pub pairs: Vec<((usize, usize), (usize, usize))>,
}

impl FunctorData {
    pub fn new(objects: Vec<FunctorObject>, arrows: Vec<FunctorArrow>) -> Result<Self> {
        for f in &arrows {
            let (Some(s), Some(t)) = (objects.get(f.src), objects.get(f.tgt)) else {
                return Err(shape(format!("arrow `{}` names a missing object", f.name)));
            };
            if f.morphism.dom() != &s.monoid || f.morphism.cod() != &t.monoid {
                return Err(shape(format!(
                    "arrow `{}` does not match its endpoints' monoids",
                    f.name
                )));
            }
            if f.value.dom() != &s.value || f.value.cod() != &t.value {
                return Err(shape(format!(
                    "arrow `{}` does not match its endpoints' values",
                    f.name
                )));
            }
        }
        Ok(Self { objects, arrows })
    }

    pub fn objects(&self) -> &[FunctorObject] {
        &self.objects
    }

    pub fn arrows(&self) -> &[FunctorArrow] {
        &self.arrows
    }

    /// The diagram a cover needs (its base, one object per leg, one pushout
    /// per pair of legs) with values supplied by `value` and `map`.
    pub fn on_cover(
        cover: &CoverFamily,
        value: impl Fn(&Arc<CommMonoid>) -> FinSet,
        map: impl Fn(&MonoidMorphism, &FinSet, &FinSet) -> FinMap,
    ) -> Result<Self> {
        let mut objects = vec![FunctorObject {
            name: "a".into(),
            monoid: cover.base().clone(),
            value: value(cover.base()),
        }];
        let mut arrows = Vec::new();
        let mut push_arrow =
            |objects: &[FunctorObject], name: String, src: usize, tgt: usize, m: MonoidMorphism| {
                let v = map(&m, &objects[src].value, &objects[tgt].value);
                arrows.push(FunctorArrow {
                    name,
                    src,
                    tgt,
                    morphism: m,
                    value: v,
                });
            };
        let n = cover.legs().len();
        for (i, leg) in cover.legs().iter().enumerate() {
            objects.push(FunctorObject {
                name: format!("a{i}"),
                monoid: leg.cod().clone(),
                value: value(leg.cod()),
            });
            push_arrow(&objects, format!("leg{i}"), 0, i + 1, leg.clone());
        }
        for i in 0..n {
            for j in i..n {
                let p = pushout(&cover.legs()[i], &cover.legs()[j])?;
                let k = objects.len();
                objects.push(FunctorObject {
                    name: format!("a{i}{j}"),
                    monoid: p.object.clone(),
                    value: value(&p.object),
                });
                push_arrow(&objects, format!("in{i}{j}.0"), i + 1, k, p.left);
                push_arrow(&objects, format!("in{i}{j}.1"), j + 1, k, p.right);
            }
        }
        Self::new(objects, arrows)
    }

    /// `c ↦ Hom(b, c)` with `F(γ) = γ ∘ −`, on the diagram of a cover.
    pub fn corepresented(b: &Arc<CommMonoid>, cover: &CoverFamily) -> Result<Self> {
        let homs = |c: &Arc<CommMonoid>| crate::commalg::monoid_morphisms(b, c);
        let label = |h: &MonoidMorphism| format!("{:?}", h.comps());
        Self::on_cover(
            cover,
            |c| FinSet::from_generated(homs(c).iter().map(label).collect()),
            |g, _, _| {
                let (dom, cod) = (homs(g.dom()), homs(g.cod()));
                let table = dom
                    .iter()
                    .map(|h| {
                        let composite = h.then(g).expect("composable");
                        cod.iter()
                            .position(|k| k == &composite)
                            .expect("closed under composition")
                    })
                    .collect();
                let set =
                    |hs: &[MonoidMorphism]| FinSet::from_generated(hs.iter().map(label).collect());
                FinMap::new(set(&dom), set(&cod), table).expect("valid table")
            },
        )
    }

    /// Locates the base, the legs and a pushout for every pair of legs. A
    /// supplied pushout is accepted when its square commutes and the map
    /// from the computed pushout is bijective.
    pub fn resolve(&self, cover: &CoverFamily) -> Result<CoverData> {
        let missing = |what: String| Error::Incomplete(what);
        let base = self
            .objects
            .iter()
            .position(|o| *o.monoid == **cover.base())
            .ok_or_else(|| missing("no object for the cover's base".into()))?;
        // Arrows are matched by their conventional names first, since distinct
        // arrows may carry equal morphisms.
        let named = |name: &str| self.arrows.iter().position(|f| f.name == name);
        let mut legs: Vec<usize> = Vec::with_capacity(cover.legs().len());
        for (i, leg) in cover.legs().iter().enumerate() {
            let fits = |k: usize| self.arrows[k].src == base && self.arrows[k].morphism == *leg;
            let k = named(&format!("leg{i}"))
                .filter(|&k| fits(k))
                .or_else(|| (0..self.arrows.len()).find(|&k| fits(k) && !legs.contains(&k)))
                .ok_or_else(|| missing(format!("no arrow carrying leg {i}")))?;
            legs.push(k);
        }
        let n = legs.len();
        let mut pairs = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                let (li, lj) = (&cover.legs()[i], &cover.legs()[j]);
                let computed = pushout(li, lj)?;
                let (oi, oj) = (self.arrows[legs[i]].tgt, self.arrows[legs[j]].tgt);
                let fits = |pi: usize, qi: usize| {
                    let (p, q) = (&self.arrows[pi], &self.arrows[qi]);
                    p.src == oi
                        && q.src == oj
                        && q.tgt == p.tgt
                        && li.then(&p.morphism).ok() == lj.then(&q.morphism).ok()
                        && mediates_bijectively(&computed, &p.morphism, &q.morphism)
                };
                let by_name = named(&format!("in{i}{j}.0"))
                    .zip(named(&format!("in{i}{j}.1")))
                    .filter(|&(pi, qi)| fits(pi, qi));
                let all = 0..self.arrows.len();
                let found = by_name.or_else(|| {
                    all.clone().find_map(|pi| {
                        all.clone()
                            .filter(|&qi| i != j || qi != pi)
                            .find(|&qi| fits(pi, qi))
                            .or_else(|| fits(pi, pi).then_some(pi))
                            .map(|qi| (pi, qi))
                    })
                });
                let found = found
                    .ok_or_else(|| missing(format!("no pushout supplied for legs {i} and {j}")))?;
                pairs.push(((i, j), found));
            }
        }
        Ok(CoverData { base, legs, pairs })
    }

    fn value(&self, arrow: usize, x: usize) -> usize {
        self.arrows[arrow].value.apply(x)
    }

    /// `(F(α_i)(s))_i`.
    pub fn family_of(&self, data: &CoverData, s: usize) -> Vec<usize> {
        data.legs.iter().map(|&l| self.value(l, s)).collect()
    }

    /// Sizes of `F(a_i)`.
    pub fn leg_sizes(&self, data: &CoverData) -> Vec<usize> {
        data.legs
            .iter()
            .map(|&l| self.objects[self.arrows[l].tgt].value.size())
            .collect()
    }

    pub fn section_count(&self, data: &CoverData) -> usize {
        self.objects[data.base].value.size()
    }

    /// Whether a complete family agrees on every pairwise pushout.
    pub fn is_matching(&self, data: &CoverData, family: &[usize]) -> bool {
        data.pairs
            .iter()
            .all(|&((i, j), (p, q))| self.value(p, family[i]) == self.value(q, family[j]))
    }

    fn describe_family(&self, data: &CoverData, family: &[usize]) -> String {
        let parts: Vec<&str> = family
            .iter()
            .zip(&data.legs)
            .map(|(&x, &l)| self.objects[self.arrows[l].tgt].value.label(x))
            .collect();
        format!("({})", parts.join(", "))
    }
}

fn mediates_bijectively(
    computed: &crate::commalg::Pushout,
    p: &MonoidMorphism,
    q: &MonoidMorphism,
) -> bool {
    let (pm, s) = (&computed.object, p.cod());
    if pm.tables().len() != s.tables().len() {
        return false;
    }
    let (left, right) = (&computed.left, &computed.right);
    (0..pm.tables().len()).all(|y| {
        let mut theta = vec![usize::MAX; pm.size(y)];
        for u in 0..left.dom().size(y) {
            for v in 0..right.dom().size(y) {
                let at = pm.mul(y, left.apply(y, u), right.apply(y, v));
                let val = s.mul(y, p.apply(y, u), q.apply(y, v));
                if theta[at] == usize::MAX {
                    theta[at] = val;
                } else if theta[at] != val {
                    return false;
                }
            }
        }
        let mut hit = vec![false; s.size(y)];
        theta.len() == s.size(y)
            && theta
                .iter()
                .all(|&t| t != usize::MAX && !std::mem::replace(&mut hit[t], true))
    })
}

/// Checks that `F(a)` is the equalizer of `∏ F(a_i) ⇉ ∏ F(a_i ⊗_a a_j)`.
/// Matching families are enumerated by backtracking over the legs with the
/// pairwise constraints checked as soon as both ends are assigned, stopping
/// at the first one outside the image.
pub fn sheaf_equalizer_check(f: &FunctorData, cover: &CoverFamily) -> Result<CheckReport> {
    let data = f.resolve(cover)?;
    let mut report = CheckReport::new("sheaf.equalizer");
    let sections = f.section_count(&data);

    let mut injective = CheckReport::new("sheaf.injective");
    let mut image: HashMap<Vec<usize>, usize> = HashMap::with_capacity(sections);
    let mut matching = CheckReport::new("sheaf.sections_match");
    for s in 0..sections {
        let fam = f.family_of(&data, s);
        matching.record(f.is_matching(&data, &fam), || {
            Witness::new("a section restricts to a non-matching family")
                .field("section", f.objects[data.base].value.label(s))
                .field("family", f.describe_family(&data, &fam))
        });
        if let Some(&t) = image.get(&fam) {
            injective.record(false, || {
                Witness::new("two sections restrict to the same family")
                    .field(
                        "sections",
                        format!(
                            "{}, {}",
                            f.objects[data.base].value.label(t),
                            f.objects[data.base].value.label(s)
                        ),
                    )
                    .field("family", f.describe_family(&data, &fam))
            });
        } else {
            injective.record(true, || unreachable!());
            image.insert(fam, s);
        }
    }

    let mut surjective = CheckReport::new("sheaf.matching_in_image");
    let sizes = f.leg_sizes(&data);
    let n = sizes.len();
    // Constraints checked once leg `max(i, j)` is assigned.
    let mut due: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); n];
    for &((i, j), (p, q)) in &data.pairs {
        due[j].push((i, j, p, q));
    }
    let mut family = vec![0; n];
    let mut outside: Option<Vec<usize>> = None;
    if n > 0 && sizes.iter().all(|&s| s > 0) {
        let mut k = 0;
        let mut next = vec![0usize; n];
        'search: loop {
            if next[k] == sizes[k] {
                next[k] = 0;
                if k == 0 {
                    break;
                }
                k -= 1;
                continue;
            }
            family[k] = next[k];
            next[k] += 1;
            let ok = due[k]
                .iter()
                .all(|&(i, j, p, q)| f.value(p, family[i]) == f.value(q, family[j]));
            if !ok {
                continue;
            }
            if k + 1 < n {
                k += 1;
                continue;
            }
            surjective.record(true, || unreachable!());
            if !image.contains_key(&family) {
                outside = Some(family.clone());
                break 'search;
            }
        }
    }
    if let Some(fam) = outside {
        surjective.fail(
            Witness::new("a matching family is not the restriction of any section")
                .field("family", f.describe_family(&data, &fam)),
        );
    }
    report.push(injective);
    report.push(matching);
    report.push(surjective);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commalg::MonoidTable;

    fn plain(t: MonoidTable) -> Arc<CommMonoid> {
        Arc::new(CommMonoid::plain(t))
    }

    #[test]
    fn identity_cover_is_always_a_sheaf_cover() {
        let z2 = plain(MonoidTable::cyclic(2));
        let cover = CoverFamily::identity(&z2);
        let f = FunctorData::on_cover(
            &cover,
            |c| FinSet::range(c.total_size()),
            |_, d, c| FinMap::from_fn(d.clone(), c.clone(), |i| i % c.size()).unwrap(),
        )
        .unwrap();
        assert!(sheaf_equalizer_check(&f, &cover).unwrap().passed());
    }

    #[test]
    fn corepresented_functor_on_an_iso_cover() {
        let z3 = plain(MonoidTable::cyclic(3));
        let b2 = plain(MonoidTable::boolean());
        let inv = MonoidMorphism::single(z3.clone(), z3.clone(), vec![0, 2, 1]).unwrap();
        let cover = CoverFamily::new(z3, vec![inv.clone(), inv], vec![0]).unwrap();
        let f = FunctorData::corepresented(&b2, &cover).unwrap();
        let r = sheaf_equalizer_check(&f, &cover).unwrap();
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn missing_pushout_is_incomplete() {
        let z2 = plain(MonoidTable::cyclic(2));
        let cover = CoverFamily::identity(&z2);
        let f = FunctorData::on_cover(
            &cover,
            |_| FinSet::range(1),
            |_, d, c| FinMap::new(d.clone(), c.clone(), vec![0]).unwrap(),
        )
        .unwrap();
        let trimmed = FunctorData::new(f.objects().to_vec(), f.arrows()[..1].to_vec()).unwrap();
        assert!(matches!(
            sheaf_equalizer_check(&trimmed, &cover),
            Err(Error::Incomplete(_))
        ));
    }
    #[test]
    fn coprojections_with_equal_morphisms_stay_distinct() {
        // Z2 → T: both coprojections into T ⊗ T carry the same morphism.
        let z2 = plain(MonoidTable::cyclic(2));
        let t = plain(MonoidTable::trivial());
        let leg = MonoidMorphism::to_trivial(&z2, &t).unwrap();
        let cover = CoverFamily::singleton(leg);
        let f = FunctorData::on_cover(
            &cover,
            |c| FinSet::range(if c.total_size() == 2 { 0 } else { 2 }),
            |_, d, c| FinMap::from_fn(d.clone(), c.clone(), |_| 0).unwrap(),
        )
        .unwrap();
        let mut arrows = f.arrows().to_vec();
        let one = arrows.iter().position(|a| a.name == "in00.1").unwrap();
        arrows[one].value = FinMap::new(
            arrows[one].value.dom().clone(),
            arrows[one].value.cod().clone(),
            vec![1; arrows[one].value.dom().size()],
        )
        .unwrap();
        let f = FunctorData::new(f.objects().to_vec(), arrows).unwrap();
        // No family matches, and there are no sections.
        assert!(sheaf_equalizer_check(&f, &cover).unwrap().passed());
    }
}
