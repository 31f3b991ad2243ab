use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{invariant, precondition, shape, Error, Result};
use crate::fincore::{Arrow, FinCategory, FinFunctor, FinMap, FinSet};
use crate::report::{CheckReport, Witness};

/// `Φ_{a,b}: Hom_B(La, b) → Hom_A(a, Rb)`, keyed by `(a, g)` for every
/// `B`-arrow `g` out of `La`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transpositions(BTreeMap<(usize, usize), usize>);

impl Transpositions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: usize, g: usize, f: usize) {
        self.0.insert((a, g), f);
    }

    pub fn get(&self, a: usize, g: usize) -> Option<usize> {
        self.0.get(&(a, g)).copied()
    }

    /// `Φ = 1` for the identity adjunction on `cat`.
    pub fn identity(cat: &FinCategory) -> Self {
        let mut t = Self::new();
        for (g, arrow) in cat.arrows().iter().enumerate() {
            t.insert(arrow.src, g, g);
        }
        t
    }
}

/// `A ∪_{L,R} B`: objects `Ob A ⊔ Ob B`, no arrows from `B` to `A`, and the
/// seam `Hom(a, b) = Hom_B(La, b)` composed by `g ∘ f = g ∘_B L(f)` and
/// `h ∘ g = h ∘_B g`. Glued objects and arrows list those of `A` first,
/// then `B`, then the seam.
#[derive(Clone, Debug)]
pub struct GluedCategory {
    a: Arc<FinCategory>,
    b: Arc<FinCategory>,
    l: FinFunctor,
    r: FinFunctor,
    phi: Transpositions,
    category: Arc<FinCategory>,
    seam: Vec<(usize, usize)>,
    seam_index: HashMap<(usize, usize), usize>,
}

fn dedupe(names: Vec<String>) -> Vec<String> {
    FinSet::from_generated(names).labels().to_vec()
}

pub fn glue(
    a: Arc<FinCategory>,
    b: Arc<FinCategory>,
    l: FinFunctor,
    r: FinFunctor,
    phi: Transpositions,
) -> Result<GluedCategory> {
    if l.dom() != &a || l.cod() != &b || r.dom() != &b || r.cod() != &a {
        return Err(shape("L must go A → B and R must go B → A"));
    }
    for (name, f) in [("L", &l), ("R", &r)] {
        if let Some(bad) = f.check_laws().first_failure() {
            return Err(precondition(format!(
                "{name} is not a functor: {}",
                bad.witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default()
            )));
        }
    }
    check_transpositions(&a, &b, &l, &r, &phi)?;

    let (na, nb) = (a.arrow_count(), b.arrow_count());
    let oa = a.object_count();
    let mut seam = Vec::new();
    let mut seam_index = HashMap::new();
    for x in 0..oa {
        for (g, arrow) in b.arrows().iter().enumerate() {
            if arrow.src == l.object(x) {
                seam_index.insert((x, g), na + nb + seam.len());
                seam.push((x, g));
            }
        }
    }
    let objects = dedupe(a.objects().iter().chain(b.objects()).cloned().collect());
    let mut names: Vec<String> = a
        .arrows()
        .iter()
        .chain(b.arrows())
        .map(|f| f.name.clone())
        .collect();
    names.extend(
        seam.iter()
            .map(|&(x, g)| format!("⟨{}|{}⟩", a.objects()[x], b.arrow(g).name)),
    );
    let names = dedupe(names);
    let mut arrows = Vec::with_capacity(names.len());
    for (k, name) in names.into_iter().enumerate() {
        let (src, tgt) = if k < na {
            (a.arrow(k).src, a.arrow(k).tgt)
        } else if k < na + nb {
            (oa + b.arrow(k - na).src, oa + b.arrow(k - na).tgt)
        } else {
            let (x, g) = seam[k - na - nb];
            (x, oa + b.arrow(g).tgt)
        };
        arrows.push(Arrow { name, src, tgt });
    }
    let identities = a
        .identities()
        .iter()
        .copied()
        .chain(b.identities().iter().map(|&i| na + i))
        .collect();
    let compose = |g: usize, f: usize| -> Option<usize> {
        if arrows[f].tgt != arrows[g].src {
            return None;
        }
        match (g < na, g < na + nb, f < na, f < na + nb) {
            (true, _, true, _) => a.compose(g, f),
            (false, true, false, true) => b.compose(g - na, f - na).map(|h| na + h),
            // seam ∘ A-arrow
            (false, false, true, _) => {
                let (_, s) = seam[g - na - nb];
                let h = b.compose(s, l.arrow(f))?;
                seam_index.get(&(arrows[f].src, h)).copied()
            }
            // B-arrow ∘ seam
            (false, true, false, false) => {
                let (x, s) = seam[f - na - nb];
                let h = b.compose(g - na, s)?;
                seam_index.get(&(x, h)).copied()
            }
            _ => None,
        }
    };
    let category = FinCategory::new(objects, arrows.clone(), identities, compose)?;
    if let Some(bad) = category.check_laws().first_failure() {
        return Err(invariant(format!(
            "glued composition fails the category laws: {}",
            bad.witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default()
        )));
    }
    Ok(GluedCategory {
        a,
        b,
        l,
        r,
        phi,
        category: Arc::new(category),
        seam,
        seam_index,
    })
}

/// `Φ` must be defined on every `g: La → b`, land in `Hom_A(a, Rb)`,
/// be bijective per `(a, b)`, and satisfy `Φ(h ∘ g ∘ Lf) = Rh ∘ Φ(g) ∘ f`.
fn check_transpositions(
    a: &FinCategory,
    b: &FinCategory,
    l: &FinFunctor,
    r: &FinFunctor,
    phi: &Transpositions,
) -> Result<()> {
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            let homs = b.hom(l.object(x), y);
            let mut image = HashSet::new();
            for &g in &homs {
                let f = phi.get(x, g).ok_or_else(|| {
                    Error::Incomplete(format!(
                        "Φ is missing on `{}` for object `{}`",
                        b.arrow(g).name,
                        a.objects()[x]
                    ))
                })?;
                let arrow = a
                    .arrows()
                    .get(f)
                    .ok_or_else(|| shape("Φ value outside A"))?;
                if arrow.src != x || arrow.tgt != r.object(y) {
                    return Err(shape(format!(
                        "Φ({}) does not lie in Hom_A(a, Rb)",
                        b.arrow(g).name
                    )));
                }
                image.insert(f);
            }
            if image.len() != homs.len() || image.len() != a.hom(x, r.object(y)).len() {
                return Err(precondition(format!(
                    "Φ is not a bijection Hom_B(L{0}, {1}) → Hom_A({0}, R{1})",
                    a.objects()[x],
                    b.objects()[y]
                )));
            }
        }
    }
    for (f, fa) in a.arrows().iter().enumerate() {
        for g in (0..b.arrow_count()).filter(|&g| b.arrow(g).src == l.object(fa.tgt)) {
            let lhs = phi.get(fa.src, b.compose(g, l.arrow(f)).expect("composable"));
            let rhs = a.compose(phi.get(fa.tgt, g).expect("checked"), f);
            if lhs != rhs {
                return Err(precondition(format!(
                    "Φ is not natural in A at `{}` and `{}`",
                    fa.name,
                    b.arrow(g).name
                )));
            }
        }
    }
    for (h, hb) in b.arrows().iter().enumerate() {
        for x in 0..a.object_count() {
            for g in b.hom(l.object(x), hb.src) {
                let lhs = phi.get(x, b.compose(h, g).expect("composable"));
                let rhs = a.compose(r.arrow(h), phi.get(x, g).expect("checked"));
                if lhs != rhs {
                    return Err(precondition(format!(
                        "Φ is not natural in B at `{}` and `{}`",
                        hb.name,
                        b.arrow(g).name
                    )));
                }
            }
        }
    }
    Ok(())
}

impl GluedCategory {
    /// Glues a category to itself along the identity adjunction.
    pub fn identity(cat: Arc<FinCategory>) -> Result<Self> {
        let id = FinFunctor::identity(cat.clone());
        let phi = Transpositions::identity(&cat);
        glue(cat.clone(), cat, id.clone(), id, phi)
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn a_part(&self) -> &Arc<FinCategory> {
        &self.a
    }

    pub fn b_part(&self) -> &Arc<FinCategory> {
        &self.b
    }

    pub fn left(&self) -> &FinFunctor {
        &self.l
    }

    pub fn right(&self) -> &FinFunctor {
        &self.r
    }

    pub fn transpositions(&self) -> &Transpositions {
        &self.phi
    }

    /// Glued index of an object of `A`.
    pub fn a_object(&self, x: usize) -> usize {
        x
    }

    /// Glued index of an object of `B`.
    pub fn b_object(&self, y: usize) -> usize {
        self.a.object_count() + y
    }

    pub fn a_arrow(&self, f: usize) -> usize {
        f
    }

    pub fn b_arrow(&self, g: usize) -> usize {
        self.a.arrow_count() + g
    }

    /// Glued index of the seam arrow `a → b` given by `g: La → b`.
    pub fn seam_arrow(&self, a: usize, g: usize) -> Option<usize> {
        self.seam_index.get(&(a, g)).copied()
    }

    /// `(a, g)` behind a seam arrow.
    pub fn seam_parts(&self, k: usize) -> Option<(usize, usize)> {
        k.checked_sub(self.a.arrow_count() + self.b.arrow_count())
            .and_then(|i| self.seam.get(i).copied())
    }

    /// `δ_b = Φ_{Rb,b}⁻¹(1_{Rb})`, as a glued arrow `Rb → b`.
    pub fn delta(&self, b: usize) -> Result<usize> {
        let rb = self.r.object(b);
        let id = self.a.identity(rb);
        self.b
            .hom(self.l.object(rb), b)
            .into_iter()
            .find(|&g| self.phi.get(rb, g) == Some(id))
            .and_then(|g| self.seam_arrow(rb, g))
            .ok_or_else(|| invariant(format!("no δ for `{}`", self.b.objects()[b])))
    }

    /// `δ_{b'} ∘ j_A(Rg) = j_B(g) ∘ δ_b` for every `g: b → b'`.
    pub fn check_delta_naturality(&self) -> CheckReport {
        let mut report = CheckReport::new("glued.delta_natural");
        let cat = &self.category;
        for (g, arrow) in self.b.arrows().iter().enumerate() {
            let (Ok(db), Ok(db2)) = (self.delta(arrow.src), self.delta(arrow.tgt)) else {
                report.fail(Witness::new("δ is undefined").field("arrow", &arrow.name));
                continue;
            };
            let lhs = cat.compose(db2, self.a_arrow(self.r.arrow(g)));
            let rhs = cat.compose(self.b_arrow(g), db);
            report.record(lhs.is_some() && lhs == rhs, || {
                Witness::new("naturality square for δ does not commute").field("arrow", &arrow.name)
            });
        }
        report
    }

    /// Category laws of the glued composition, agreement with `A` and `B`
    /// on their arrows, and naturality of `δ`.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("glued");
        let mut laws = self.category.check_laws();
        laws.id = "glued.laws".into();
        report.push(laws);
        let mut full = CheckReport::new("glued.full_subcategories");
        for g in 0..self.a.arrow_count() {
            for f in 0..self.a.arrow_count() {
                full.record(self.category.compose(g, f) == self.a.compose(g, f), || {
                    Witness::new("composition differs from A").field("g", &self.a.arrow(g).name)
                });
            }
        }
        let na = self.a.arrow_count();
        for g in 0..self.b.arrow_count() {
            for f in 0..self.b.arrow_count() {
                let glued = self.category.compose(na + g, na + f);
                full.record(glued == self.b.compose(g, f).map(|h| na + h), || {
                    Witness::new("composition differs from B").field("g", &self.b.arrow(g).name)
                });
            }
        }
        for y in 0..self.b.object_count() {
            for x in 0..self.a.object_count() {
                let back = self.category.hom(self.b_object(y), self.a_object(x));
                full.record(back.is_empty(), || {
                    Witness::new("arrow from B to A").field("object", &self.b.objects()[y])
                });
            }
        }
        report.push(full);
        report.push(self.check_delta_naturality());
        report
    }
}

/// Values of a functor `F: A ∪_{L,R} B → Set` on some objects and arrows
/// of the glued category.
#[derive(Clone, Debug)]
pub struct SetFunctorData {
    objects: Vec<Option<FinSet>>,
    arrows: Vec<Option<FinMap>>,
}

impl SetFunctorData {
    pub fn empty(cat: &FinCategory) -> Self {
        Self {
            objects: vec![None; cat.object_count()],
            arrows: vec![None; cat.arrow_count()],
        }
    }

    pub fn set_object(&mut self, o: usize, value: FinSet) -> Result<()> {
        let slot = self
            .objects
            .get_mut(o)
            .ok_or_else(|| shape("object outside the category"))?;
        *slot = Some(value);
        Ok(())
    }

    pub fn set_arrow(&mut self, f: usize, value: FinMap) -> Result<()> {
        let slot = self
            .arrows
            .get_mut(f)
            .ok_or_else(|| shape("arrow outside the category"))?;
        *slot = Some(value);
        Ok(())
    }

    pub fn object(&self, o: usize) -> Option<&FinSet> {
        self.objects.get(o).and_then(Option::as_ref)
    }

    pub fn arrow(&self, f: usize) -> Option<&FinMap> {
        self.arrows.get(f).and_then(Option::as_ref)
    }

    /// `Hom(x, −)`, defined everywhere.
    pub fn representable(cat: &FinCategory, x: usize) -> Self {
        let homs: Vec<Vec<usize>> = (0..cat.object_count()).map(|o| cat.hom(x, o)).collect();
        let sets: Vec<FinSet> = homs
            .iter()
            .map(|h| FinSet::from_generated(h.iter().map(|&f| cat.arrow(f).name.clone()).collect()))
            .collect();
        let arrows = cat
            .arrows()
            .iter()
            .enumerate()
            .map(|(g, arrow)| {
                let table = homs[arrow.src]
                    .iter()
                    .map(|&f| {
                        let h = cat.compose(g, f).expect("composable");
                        homs[arrow.tgt]
                            .iter()
                            .position(|&k| k == h)
                            .expect("hom-set is complete")
                    })
                    .collect();
                Some(FinMap::from_parts(
                    sets[arrow.src].clone(),
                    sets[arrow.tgt].clone(),
                    table,
                ))
            })
            .collect();
        Self {
            objects: sets.into_iter().map(Some).collect(),
            arrows,
        }
    }
}

/// For every `B`-object `c` marked as a field object, `F(δ_c): F(Rc) → F(c)`
/// must be a bijection. Non-field objects are listed as skipped. Only this
/// compatibility condition is checked; scheme conditions on the two
/// restrictions of `F` are outside the finite model.
pub fn check_scheme_condition3(
    glued: &GluedCategory,
    f: &SetFunctorData,
    field: &[bool],
) -> Result<CheckReport> {
    if field.len() != glued.b.object_count() {
        return Err(shape("one field flag per object of B is required"));
    }
    let cat = glued.category();
    let mut report = CheckReport::new("scheme.condition3");
    let mut skipped = Vec::new();
    for (c, &is_field) in field.iter().enumerate() {
        let name = &glued.b.objects()[c];
        if !is_field {
            skipped.push(name.clone());
            continue;
        }
        let delta = glued.delta(c)?;
        let (src, tgt) = (cat.arrow(delta).src, cat.arrow(delta).tgt);
        let missing = |what: &str| {
            Error::Incomplete(format!(
                "F has no value on {what} for field object `{name}`"
            ))
        };
        let fs = f.object(src).ok_or_else(|| missing("Rc"))?;
        let ft = f.object(tgt).ok_or_else(|| missing("c"))?;
        let fd = f.arrow(delta).ok_or_else(|| missing("δ_c"))?;
        if fd.dom().size() != fs.size() || fd.cod().size() != ft.size() {
            return Err(shape(format!(
                "F(δ_{name}) does not go F(R{name}) → F({name})"
            )));
        }
        report.record(fd.is_bijective(), || {
            Witness::new("F(δ_c) is not a bijection")
                .field("object", name)
                .field("sizes", format!("{} → {}", fs.size(), ft.size()))
                .field("map", format!("{fd:?}"))
        });
    }
    if !skipped.is_empty() {
        report.note(format!(
            "not field objects, skipped: {}",
            skipped.join(", ")
        ));
    }
    report.note("only the compatibility condition on field objects is checked");
    Ok(report)
}
