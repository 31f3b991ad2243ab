//! Objects and morphisms of the categories the actions live in.
//!
//! Every supported category is a presheaf category on a finite shape,
//! optionally pointed (a basepoint in every component, preserved by all
//! restriction maps). Plain finite sets are presheaves on the terminal
//! category; pointed finite sets are the pointed variant of that.

use std::fmt;
use std::sync::Arc;

use crate::error::{shape, Error, Result};
use crate::fincore::{
    check_presheaf_laws, finite_limit, FinCategory, FinFunctor, FinMap, FinPresheaf, FinSet,
    LimitDiagram, UnionFind,
};
use crate::report::{CheckReport, Witness};

/// A presheaf of finite sets, optionally with a basepoint per component.
#[derive(Clone, PartialEq, Eq)]
pub struct Carrier {
    sheaf: Arc<FinPresheaf>,
    points: Option<Arc<[usize]>>,
}

impl Carrier {
    pub fn plain(sheaf: FinPresheaf) -> Self {
        Self {
            sheaf: Arc::new(sheaf),
            points: None,
        }
    }

    pub fn pointed(sheaf: FinPresheaf, points: Vec<usize>) -> Result<Self> {
        if points.len() != sheaf.base().object_count() {
            return Err(shape("one basepoint per object is required"));
        }
        for (x, &p) in points.iter().enumerate() {
            if p >= sheaf.at(x).size() {
                return Err(shape(format!("basepoint {p} outside component {x}")));
            }
        }
        for f in 0..sheaf.base().arrow_count() {
            let a = sheaf.base().arrow(f);
            if sheaf.restrict(f, points[a.tgt]) != points[a.src] {
                return Err(Error::Invalid(format!(
                    "restriction along `{}` does not preserve the basepoint",
                    a.name
                )));
            }
        }
        Ok(Self {
            sheaf: Arc::new(sheaf),
            points: Some(points.into()),
        })
    }

    /// A plain finite set, as a presheaf on the terminal category.
    pub fn set(set: FinSet) -> Self {
        Self::plain(FinPresheaf::constant(
            Arc::new(FinCategory::terminal()),
            set,
        ))
    }

    pub fn pointed_set(set: FinSet, point: usize) -> Result<Self> {
        Self::pointed(
            FinPresheaf::constant(Arc::new(FinCategory::terminal()), set),
            vec![point],
        )
    }

    pub fn sheaf(&self) -> &FinPresheaf {
        &self.sheaf
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.sheaf.base()
    }

    pub fn is_pointed(&self) -> bool {
        self.points.is_some()
    }

    pub fn point(&self, x: usize) -> Option<usize> {
        self.points.as_ref().map(|p| p[x])
    }

    pub fn points(&self) -> Option<&[usize]> {
        self.points.as_deref()
    }

    pub fn at(&self, x: usize) -> &FinSet {
        self.sheaf.at(x)
    }

    pub fn size(&self, x: usize) -> usize {
        self.sheaf.at(x).size()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sheaf.sizes()
    }

    pub fn total_size(&self) -> usize {
        self.sheaf.total_size()
    }

    pub fn restrict(&self, f: usize, v: usize) -> usize {
        self.sheaf.restrict(f, v)
    }

    pub fn label(&self, x: usize, v: usize) -> &str {
        self.sheaf.at(x).label(v)
    }

    /// Shape objects, for rendering witnesses.
    pub fn object_name(&self, x: usize) -> &str {
        &self.base().objects()[x]
    }

    /// Element label prefixed by its component when the shape has more than
    /// one object.
    pub fn describe(&self, x: usize, v: usize) -> String {
        if self.base().object_count() == 1 {
            self.label(x, v).to_string()
        } else {
            format!("{}@{}", self.label(x, v), self.object_name(x))
        }
    }

    pub fn check_laws(&self) -> CheckReport {
        check_presheaf_laws(&self.sheaf)
    }

    /// Same data over a category equal to `base` (used when two shapes are
    /// built separately but coincide).
    pub fn same_shape(&self, other: &Carrier) -> bool {
        self.base() == other.base() && self.is_pointed() == other.is_pointed()
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<_> = self.sheaf.sets().iter().collect();
        match &self.points {
            None => write!(f, "Carrier{comps:?}"),
            Some(p) => write!(f, "Carrier{comps:?} pointed at {p:?}"),
        }
    }
}

/// A natural (and, between pointed carriers, basepoint-preserving) map.
#[derive(Clone, PartialEq, Eq)]
pub struct CarrierMap {
    dom: Carrier,
    cod: Carrier,
    comps: Vec<Vec<usize>>,
}

impl CarrierMap {
    /// Shape-checked constructor. Naturality is reported by
    /// [`CarrierMap::check_naturality`]; basepoint preservation is enforced.
    pub fn new(dom: Carrier, cod: Carrier, comps: Vec<Vec<usize>>) -> Result<Self> {
        if dom.base() != cod.base() {
            return Err(shape("carrier map between different shapes"));
        }
        if comps.len() != dom.base().object_count() {
            return Err(shape("carrier map needs one component per object"));
        }
        for (x, c) in comps.iter().enumerate() {
            if c.len() != dom.size(x) || c.iter().any(|&t| t >= cod.size(x)) {
                return Err(shape(format!("component {x} has the wrong endpoints")));
            }
            if let (Some(p), Some(q)) = (dom.point(x), cod.point(x)) {
                if c[p] != q {
                    return Err(Error::Invalid(format!(
                        "component {x} does not preserve the basepoint"
                    )));
                }
            }
        }
        Ok(Self { dom, cod, comps })
    }

    pub(crate) fn from_parts(dom: Carrier, cod: Carrier, comps: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(comps.len(), dom.base().object_count());
        Self { dom, cod, comps }
    }

    pub fn identity(c: &Carrier) -> Self {
        let comps = (0..c.base().object_count())
            .map(|x| (0..c.size(x)).collect())
            .collect();
        Self::from_parts(c.clone(), c.clone(), comps)
    }

    pub fn dom(&self) -> &Carrier {
        &self.dom
    }

    pub fn cod(&self) -> &Carrier {
        &self.cod
    }

    pub fn comps(&self) -> &[Vec<usize>] {
        &self.comps
    }

    pub fn comp(&self, x: usize) -> &[usize] {
        &self.comps[x]
    }

    pub fn apply(&self, x: usize, v: usize) -> usize {
        self.comps[x][v]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CarrierMap) -> Result<CarrierMap> {
        if self.cod.sizes() != next.dom.sizes() || self.cod.base() != next.dom.base() {
            return Err(shape("carrier maps are not composable"));
        }
        let comps = self
            .comps
            .iter()
            .zip(&next.comps)
            .map(|(f, g)| f.iter().map(|&v| g[v]).collect())
            .collect();
        Ok(Self::from_parts(self.dom.clone(), next.cod.clone(), comps))
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().enumerate().all(|(x, c)| {
            let mut hit = vec![false; self.cod.size(x)];
            c.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().enumerate().all(|(x, c)| {
            let mut hit = vec![false; self.cod.size(x)];
            for &t in c {
                hit[t] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.sizes() == self.cod.sizes() && self.is_injective()
    }

    /// First element (component, element) where injectivity fails, as the
    /// pair of colliding elements.
    pub fn collision(&self) -> Option<(usize, usize, usize)> {
        for (x, c) in self.comps.iter().enumerate() {
            let mut seen = vec![usize::MAX; self.cod.size(x)];
            for (v, &t) in c.iter().enumerate() {
                if seen[t] != usize::MAX {
                    return Some((x, seen[t], v));
                }
                seen[t] = v;
            }
        }
        None
    }

    /// First element of the codomain not hit, as (component, element).
    pub fn missed(&self) -> Option<(usize, usize)> {
        for (x, c) in self.comps.iter().enumerate() {
            let mut hit = vec![false; self.cod.size(x)];
            for &t in c {
                hit[t] = true;
            }
            if let Some(v) = hit.iter().position(|h| !h) {
                return Some((x, v));
            }
        }
        None
    }

    pub fn inverse(&self) -> Option<CarrierMap> {
        if !self.is_bijective() {
            return None;
        }
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let mut inv = vec![0; self.cod.size(x)];
                for (v, &t) in c.iter().enumerate() {
                    inv[t] = v;
                }
                inv
            })
            .collect();
        Some(Self::from_parts(self.cod.clone(), self.dom.clone(), comps))
    }

    pub fn check_naturality(&self) -> CheckReport {
        let base = self.dom.base();
        let mut report = CheckReport::new("carrier_map.naturality");
        for f in 0..base.arrow_count() {
            let a = base.arrow(f);
            let bad = (0..self.dom.size(a.tgt)).find(|&v| {
                self.comps[a.src][self.dom.restrict(f, v)]
                    != self.cod.restrict(f, self.comps[a.tgt][v])
            });
            report.record(bad.is_none(), || {
                Witness::new("naturality square does not commute")
                    .field("arrow", &a.name)
                    .field("element", self.dom.describe(a.tgt, bad.unwrap()))
            });
        }
        report
    }

    pub fn is_natural(&self) -> bool {
        self.check_naturality().passed()
    }

    pub fn to_finmap(&self, x: usize) -> FinMap {
        FinMap::new(
            self.dom.at(x).clone(),
            self.cod.at(x).clone(),
            self.comps[x].clone(),
        )
        .expect("components are in range")
    }
}

impl fmt::Debug for CarrierMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CarrierMap{:?}", self.comps)
    }
}

/// Encoding of one component of a product (or smash product) of two sets.
///
/// Product: `(u, v) ↦ u·|right| + v`. Smash: index 0 is the basepoint and a
/// pair of non-basepoints `(u, v)` sits at `1 + r(u)·(|right|−1) + r(v)`,
/// where `r` skips the basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    left: usize,
    right: usize,
    points: Option<(usize, usize)>,
}

impl Pairing {
    pub fn product(left: usize, right: usize) -> Self {
        Self {
            left,
            right,
            points: None,
        }
    }

    pub fn smash(left: usize, right: usize, left_point: usize, right_point: usize) -> Self {
        debug_assert!(left_point < left && right_point < right);
        Self {
            left,
            right,
            points: Some((left_point, right_point)),
        }
    }

    pub fn size(&self) -> usize {
        match self.points {
            None => self.left * self.right,
            Some(_) => 1 + (self.left - 1) * (self.right - 1),
        }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.points.map(|_| 0)
    }

    pub fn pair(&self, u: usize, v: usize) -> usize {
        match self.points {
            None => u * self.right + v,
            Some((lp, rp)) => {
                if u == lp || v == rp {
                    0
                } else {
                    let ru = if u < lp { u } else { u - 1 };
                    let rv = if v < rp { v } else { v - 1 };
                    1 + ru * (self.right - 1) + rv
                }
            }
        }
    }

    /// The pair at index `p`; `None` only for the smash basepoint.
    pub fn unpair(&self, p: usize) -> Option<(usize, usize)> {
        match self.points {
            None => Some((p / self.right, p % self.right)),
            Some((lp, rp)) => {
                if p == 0 {
                    return None;
                }
                let q = p - 1;
                let (ru, rv) = (q / (self.right - 1), q % (self.right - 1));
                let u = if ru < lp { ru } else { ru + 1 };
                let v = if rv < rp { rv } else { rv + 1 };
                Some((u, v))
            }
        }
    }

    /// Every encoded pair, basepoint first for a smash product.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, Option<(usize, usize)>)> + '_ {
        (0..self.size()).map(move |p| (p, self.unpair(p)))
    }

    fn labels(&self, l: &FinSet, r: &FinSet) -> Vec<String> {
        (0..self.size())
            .map(|p| match self.unpair(p) {
                None => "*".to_string(),
                Some((u, v)) => format!("({},{})", l.label(u), r.label(v)),
            })
            .collect()
    }
}

/// `c ⊠ m` for a base object `c` on the shape `Y`, an object `m` on the
/// shape `X` and a functor `Φ: X → Y`: at `x` it is `c(Φx) × m(x)` (or the
/// smash product when both are pointed).
#[derive(Clone, Debug)]
pub struct Paired {
    pub carrier: Carrier,
    pub pairings: Vec<Pairing>,
}

pub fn pair_carriers(left: &Carrier, along: &FinFunctor, right: &Carrier) -> Result<Paired> {
    if along.cod() != left.base() || along.dom() != right.base() {
        return Err(shape("action functor does not connect the two shapes"));
    }
    if left.is_pointed() != right.is_pointed() {
        return Err(shape("cannot pair a pointed carrier with a plain one"));
    }
    let shape_x = right.base().clone();
    let pairings: Vec<Pairing> = (0..shape_x.object_count())
        .map(|x| {
            let y = along.object(x);
            match (left.point(y), right.point(x)) {
                (Some(lp), Some(rp)) => Pairing::smash(left.size(y), right.size(x), lp, rp),
                _ => Pairing::product(left.size(y), right.size(x)),
            }
        })
        .collect();
    let sets: Vec<FinSet> = (0..shape_x.object_count())
        .map(|x| FinSet::from_generated(pairings[x].labels(left.at(along.object(x)), right.at(x))))
        .collect();
    let maps = (0..shape_x.arrow_count())
        .map(|f| {
            let a = shape_x.arrow(f);
            let phi_f = along.arrow(f);
            let (pt, ps) = (pairings[a.tgt], pairings[a.src]);
            let table = (0..pt.size())
                .map(|p| match pt.unpair(p) {
                    None => 0,
                    Some((u, v)) => ps.pair(left.restrict(phi_f, u), right.restrict(f, v)),
                })
                .collect();
            FinMap::new(sets[a.tgt].clone(), sets[a.src].clone(), table)
        })
        .collect::<Result<Vec<_>>>()?;
    let sheaf = FinPresheaf::new(shape_x, sets, maps)?;
    let carrier = if right.is_pointed() {
        Carrier::pointed(sheaf, vec![0; pairings.len()])?
    } else {
        Carrier::plain(sheaf)
    };
    Ok(Paired { carrier, pairings })
}

/// Lifts `f ⊠ g` to the paired carriers.
pub fn pair_maps(
    dom: &Paired,
    cod: &Paired,
    along: &FinFunctor,
    f: &CarrierMap,
    g: &CarrierMap,
) -> CarrierMap {
    let comps = (0..dom.pairings.len())
        .map(|x| {
            let y = along.object(x);
            let (pd, pc) = (dom.pairings[x], cod.pairings[x]);
            (0..pd.size())
                .map(|p| match pd.unpair(p) {
                    None => 0,
                    Some((u, v)) => pc.pair(f.apply(y, u), g.apply(x, v)),
                })
                .collect()
        })
        .collect();
    CarrierMap::from_parts(dom.carrier.clone(), cod.carrier.clone(), comps)
}

/// Coproduct of carriers; the wedge (basepoints identified) when pointed.
/// Returns the object and its coprojections.
pub fn carrier_coproduct(parts: &[Carrier]) -> Result<(Carrier, Vec<CarrierMap>)> {
    let Some(first) = parts.first() else {
        return Err(shape("coproduct of an empty family needs a shape"));
    };
    let base = first.base().clone();
    if parts.iter().any(|p| !p.same_shape(first)) {
        return Err(shape("coproduct of carriers on different shapes"));
    }
    let pointed = first.is_pointed();
    let nx = base.object_count();
    // index[i][x][v] = position of element v of part i in the sum at x.
    let mut index: Vec<Vec<Vec<usize>>> = Vec::with_capacity(parts.len());
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); nx];
    if pointed {
        for l in labels.iter_mut() {
            l.push("*".to_string());
        }
    }
    for (i, p) in parts.iter().enumerate() {
        let mut per = Vec::with_capacity(nx);
        for (x, lx) in labels.iter_mut().enumerate() {
            let mut idx = Vec::with_capacity(p.size(x));
            for v in 0..p.size(x) {
                if p.point(x) == Some(v) {
                    idx.push(0);
                } else {
                    idx.push(lx.len());
                    lx.push(format!("{i}.{}", p.label(x, v)));
                }
            }
            per.push(idx);
        }
        index.push(per);
    }
    let sets: Vec<FinSet> = labels.into_iter().map(FinSet::from_generated).collect();
    let maps = (0..base.arrow_count())
        .map(|f| {
            let a = base.arrow(f);
            let mut table = vec![0; sets[a.tgt].size()];
            for (i, p) in parts.iter().enumerate() {
                for v in 0..p.size(a.tgt) {
                    table[index[i][a.tgt][v]] = index[i][a.src][p.restrict(f, v)];
                }
            }
            FinMap::from_parts(sets[a.tgt].clone(), sets[a.src].clone(), table)
        })
        .collect();
    let sheaf = FinPresheaf::new(base, sets, maps)?;
    let sum = if pointed {
        Carrier::pointed(sheaf, vec![0; nx])?
    } else {
        Carrier::plain(sheaf)
    };
    let injections = parts
        .iter()
        .zip(index)
        .map(|(p, idx)| CarrierMap::from_parts(p.clone(), sum.clone(), idx))
        .collect();
    Ok((sum, injections))
}

/// Quotient of a carrier by per-component partitions that are compatible
/// with the restriction maps. Classes are labelled `{rep}`.
pub fn carrier_quotient(c: &Carrier, classes: &mut [UnionFind]) -> Result<CarrierMap> {
    let base = c.base().clone();
    let mut class_of = Vec::with_capacity(base.object_count());
    let mut sets = Vec::with_capacity(base.object_count());
    for (x, uf) in classes.iter_mut().enumerate() {
        let reps = uf.representatives();
        let mut idx = vec![usize::MAX; reps.len()];
        let mut labels = Vec::new();
        for (v, &r) in reps.iter().enumerate() {
            if r == v {
                idx[v] = labels.len();
                labels.push(format!("{{{}}}", c.label(x, v)));
            }
        }
        class_of.push(reps.iter().map(|&r| idx[r]).collect::<Vec<_>>());
        sets.push(FinSet::from_generated(labels));
    }
    let mut maps = Vec::with_capacity(base.arrow_count());
    for f in 0..base.arrow_count() {
        let a = base.arrow(f);
        let mut table = vec![usize::MAX; sets[a.tgt].size()];
        for v in 0..c.size(a.tgt) {
            let img = class_of[a.src][c.restrict(f, v)];
            let slot = &mut table[class_of[a.tgt][v]];
            if *slot == usize::MAX {
                *slot = img;
            } else if *slot != img {
                return Err(crate::error::invariant(format!(
                    "partition is not compatible with restriction along `{}`",
                    a.name
                )));
            }
        }
        maps.push(FinMap::from_parts(
            sets[a.tgt].clone(),
            sets[a.src].clone(),
            table,
        ));
    }
    let sheaf = FinPresheaf::new(base, sets, maps)?;
    let q = match c.points() {
        Some(p) => Carrier::pointed(
            sheaf,
            p.iter().enumerate().map(|(x, &v)| class_of[x][v]).collect(),
        )?,
        None => Carrier::plain(sheaf),
    };
    Ok(CarrierMap::from_parts(c.clone(), q, class_of))
}

/// Coequalizer of a parallel pair of carrier maps, computed objectwise.
pub fn carrier_coequalizer(f: &CarrierMap, g: &CarrierMap) -> Result<CarrierMap> {
    if f.dom().sizes() != g.dom().sizes() || f.cod() != g.cod() {
        return Err(shape("coequalizer needs a parallel pair"));
    }
    let cod = f.cod();
    let mut classes: Vec<UnionFind> = (0..cod.base().object_count())
        .map(|x| UnionFind::new(cod.size(x)))
        .collect();
    for (x, uf) in classes.iter_mut().enumerate() {
        for v in 0..f.dom().size(x) {
            uf.union(f.apply(x, v), g.apply(x, v));
        }
    }
    carrier_quotient(cod, &mut classes)
}

/// Precomposition with a functor `Ψ: W → X`: the carrier `c ∘ Ψ` on `W`.
pub fn precompose(c: &Carrier, along: &FinFunctor) -> Result<Carrier> {
    if along.cod() != c.base() {
        return Err(shape(
            "precomposition functor does not land in the carrier's shape",
        ));
    }
    let w = along.dom().clone();
    let sets = (0..w.object_count())
        .map(|o| c.at(along.object(o)).clone())
        .collect();
    let maps = (0..w.arrow_count())
        .map(|f| c.sheaf().map(along.arrow(f)).clone())
        .collect();
    let sheaf = FinPresheaf::new(w.clone(), sets, maps)?;
    match c.points() {
        Some(p) => Carrier::pointed(
            sheaf,
            (0..w.object_count()).map(|o| p[along.object(o)]).collect(),
        ),
        None => Ok(Carrier::plain(sheaf)),
    }
}

/// Precomposition of a map with a functor.
pub fn precompose_map(f: &CarrierMap, along: &FinFunctor) -> Result<CarrierMap> {
    let dom = precompose(f.dom(), along)?;
    let cod = precompose(f.cod(), along)?;
    let comps = (0..along.dom().object_count())
        .map(|o| f.comp(along.object(o)).to_vec())
        .collect();
    Ok(CarrierMap::from_parts(dom, cod, comps))
}

/// Given maps `covers[i]: A_i → C` that are jointly surjective and maps `values[i]: A_i → B`, the unique
/// `h: C → B` with `h ∘ covers[i] = values[i]`. Disagreement on a fibre or an
/// uncovered element is reported as an invariant violation.
pub fn descend(covers: &[CarrierMap], values: &[CarrierMap]) -> Result<CarrierMap> {
    let (Some(c0), Some(v0)) = (covers.first(), values.first()) else {
        return Err(shape("descent needs at least one map"));
    };
    let (target, image) = (c0.cod().clone(), v0.cod().clone());
    let nx = target.base().object_count();
    let mut comps: Vec<Vec<usize>> = (0..nx).map(|x| vec![usize::MAX; target.size(x)]).collect();
    for (c, v) in covers.iter().zip(values) {
        if c.dom().sizes() != v.dom().sizes() || c.cod() != &target || v.cod() != &image {
            return Err(shape("descent maps do not line up"));
        }
        for (x, comp) in comps.iter_mut().enumerate() {
            for e in 0..c.dom().size(x) {
                let (slot, val) = (&mut comp[c.apply(x, e)], v.apply(x, e));
                if *slot == usize::MAX {
                    *slot = val;
                } else if *slot != val {
                    return Err(crate::error::invariant(format!(
                        "value at {} depends on the representative",
                        target.describe(x, c.apply(x, e))
                    )));
                }
            }
        }
    }
    for (x, comp) in comps.iter().enumerate() {
        if let Some(v) = comp.iter().position(|&t| t == usize::MAX) {
            return Err(crate::error::invariant(format!(
                "element {} is not covered",
                target.describe(x, v)
            )));
        }
    }
    Ok(CarrierMap::from_parts(target, image, comps))
}

/// Finite limit shapes over carriers.
#[derive(Clone, Debug)]
pub enum CarrierDiagram {
    Terminal {
        base: Arc<FinCategory>,
        pointed: bool,
    },
    Product(Carrier, Carrier),
    Equalizer(CarrierMap, CarrierMap),
    Pullback(CarrierMap, CarrierMap),
}

#[derive(Clone, Debug)]
pub struct CarrierCone {
    pub apex: Carrier,
    pub legs: Vec<CarrierMap>,
}

impl CarrierCone {
    /// The mediating map from a competing cone, if the legs factor.
    pub fn mediate(&self, apex: &Carrier, legs: &[CarrierMap]) -> Option<CarrierMap> {
        let comps = (0..apex.base().object_count())
            .map(|x| {
                (0..apex.size(x))
                    .map(|p| {
                        (0..self.apex.size(x)).find(|&q| {
                            self.legs
                                .iter()
                                .zip(legs)
                                .all(|(l, m)| l.apply(x, q) == m.apply(x, p))
                        })
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CarrierMap::from_parts(
            apex.clone(),
            self.apex.clone(),
            comps,
        ))
    }
}

/// Objectwise limit with induced restriction maps and basepoints.
pub fn carrier_limit(diagram: &CarrierDiagram) -> Result<CarrierCone> {
    let (base, pointed, targets): (Arc<FinCategory>, bool, Vec<Carrier>) = match diagram {
        CarrierDiagram::Terminal { base, pointed } => (base.clone(), *pointed, vec![]),
        CarrierDiagram::Product(a, b) => {
            if !a.same_shape(b) {
                return Err(shape("product of carriers on different shapes"));
            }
            (a.base().clone(), a.is_pointed(), vec![a.clone(), b.clone()])
        }
        CarrierDiagram::Equalizer(f, g) => {
            if f.dom() != g.dom() || f.cod() != g.cod() {
                return Err(shape("equalizer needs a parallel pair"));
            }
            (
                f.dom().base().clone(),
                f.dom().is_pointed(),
                vec![f.dom().clone()],
            )
        }
        CarrierDiagram::Pullback(f, g) => {
            if f.cod() != g.cod() {
                return Err(shape("pullback needs a shared codomain"));
            }
            (
                f.dom().base().clone(),
                f.dom().is_pointed(),
                vec![f.dom().clone(), g.dom().clone()],
            )
        }
    };
    let nx = base.object_count();
    let mut sets = Vec::with_capacity(nx);
    let mut coords: Vec<Vec<Vec<usize>>> = Vec::with_capacity(nx);
    for x in 0..nx {
        let d = match diagram {
            CarrierDiagram::Terminal { .. } => LimitDiagram::Terminal,
            CarrierDiagram::Product(a, b) => {
                LimitDiagram::Product(a.at(x).clone(), b.at(x).clone())
            }
            CarrierDiagram::Equalizer(f, g) => {
                LimitDiagram::Equalizer(f.to_finmap(x), g.to_finmap(x))
            }
            CarrierDiagram::Pullback(f, g) => {
                LimitDiagram::Pullback(f.to_finmap(x), g.to_finmap(x))
            }
        };
        let cone = finite_limit(&d)?;
        let per: Vec<Vec<usize>> = cone
            .apex
            .indices()
            .map(|p| cone.legs.iter().map(|l| l.apply(p)).collect())
            .collect();
        coords.push(per);
        sets.push(cone.apex);
    }
    let lookup = |x: usize, c: &[usize]| coords[x].iter().position(|k| k == c);
    let mut maps = Vec::with_capacity(base.arrow_count());
    for f in 0..base.arrow_count() {
        let a = base.arrow(f);
        let table = coords[a.tgt]
            .iter()
            .map(|c| {
                let r: Vec<usize> = c
                    .iter()
                    .zip(&targets)
                    .map(|(&v, t)| t.restrict(f, v))
                    .collect();
                lookup(a.src, &r)
                    .ok_or_else(|| crate::error::invariant("limit is not closed under restriction"))
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(FinMap::from_parts(
            sets[a.tgt].clone(),
            sets[a.src].clone(),
            table,
        ));
    }
    let sheaf = FinPresheaf::new(base.clone(), sets, maps)?;
    let apex = if pointed {
        let points = (0..nx)
            .map(|x| {
                let c: Vec<usize> = targets.iter().map(|t| t.point(x).unwrap()).collect();
                lookup(x, &c).ok_or_else(|| crate::error::invariant("limit lost its basepoint"))
            })
            .collect::<Result<Vec<_>>>()?;
        Carrier::pointed(sheaf, points)?
    } else {
        Carrier::plain(sheaf)
    };
    let legs = targets
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let comps = (0..nx)
                .map(|x| coords[x].iter().map(|c| c[k]).collect())
                .collect();
            CarrierMap::from_parts(apex.clone(), t.clone(), comps)
        })
        .collect();
    Ok(CarrierCone { apex, legs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smash_encoding_round_trips() {
        for (l, r, lp, rp) in [(3, 4, 0, 0), (3, 4, 2, 1), (1, 3, 0, 2), (2, 2, 1, 0)] {
            let s = Pairing::smash(l, r, lp, rp);
            assert_eq!(s.size(), 1 + (l - 1) * (r - 1));
            for u in 0..l {
                for v in 0..r {
                    let p = s.pair(u, v);
                    match s.unpair(p) {
                        None => assert!(u == lp || v == rp),
                        Some(uv) => assert_eq!(uv, (u, v)),
                    }
                }
            }
        }
    }

    #[test]
    fn product_pairing_labels() {
        let a = Carrier::set(FinSet::new(["0", "1"]).unwrap());
        let b = Carrier::set(FinSet::new(["a", "b", "c"]).unwrap());
        let t = Arc::new(FinCategory::terminal());
        let p = pair_carriers(&a, &FinFunctor::identity(t), &b).unwrap();
        assert_eq!(p.carrier.size(0), 6);
        assert_eq!(p.carrier.label(0, 5), "(1,c)");
    }

    #[test]
    fn wedge_identifies_basepoints() {
        let s0 = Carrier::pointed_set(FinSet::new(["*", "1"]).unwrap(), 0).unwrap();
        let (w, inj) = carrier_coproduct(&[s0.clone(), s0.clone(), s0]).unwrap();
        assert_eq!(w.size(0), 4);
        assert!(inj.iter().all(|i| i.apply(0, 0) == 0));
    }

    #[test]
    fn pointed_product_keeps_the_basepoint() {
        let a = Carrier::pointed_set(FinSet::new(["*", "x"]).unwrap(), 0).unwrap();
        let cone = carrier_limit(&CarrierDiagram::Product(a.clone(), a)).unwrap();
        assert_eq!(cone.apex.size(0), 4);
        assert_eq!(cone.apex.label(0, cone.apex.point(0).unwrap()), "(*,*)");
    }
}
