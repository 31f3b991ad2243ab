use std::fmt;
use std::sync::Arc;

use crate::error::{shape, Error, Result};
use crate::report::{CheckReport, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by explicit composition table.
///
/// `compose(g, f)` is `g ∘ f` and is defined exactly when `tgt f = src g`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    table: Vec<Option<usize>>,
}

impl FinCategory {
    /// Builds a category from its data. The table is checked for shape
    /// (defined on exactly the composable pairs, landing in the right hom-set);
    /// associativity and unit laws are left to [`FinCategory::check_laws`].
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let n = arrows.len();
        if identities.len() != objects.len() {
            return Err(shape("one identity arrow per object is required"));
        }
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(shape(format!("arrow `{}` has an unknown endpoint", a.name)));
            }
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= n || arrows[id].src != o || arrows[id].tgt != o {
                return Err(shape(format!(
                    "identity of object {} is not an endomorphism of it",
                    objects[o]
                )));
            }
        }
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                let composable = arrows[f].tgt == arrows[g].src;
                match (composable, compose(g, f)) {
                    (true, Some(h)) => {
                        if h >= n
                            || arrows[h].src != arrows[f].src
                            || arrows[h].tgt != arrows[g].tgt
                        {
                            return Err(shape(format!(
                                "{} ∘ {} lands outside its hom-set",
                                arrows[g].name, arrows[f].name
                            )));
                        }
                        table[g * n + f] = Some(h);
                    }
                    (true, None) => {
                        return Err(shape(format!(
                            "composite {} ∘ {} is missing",
                            arrows[g].name, arrows[f].name
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(shape(format!(
                            "composite {} ∘ {} given for a non-composable pair",
                            arrows[g].name, arrows[f].name
                        )))
                    }
                    (false, None) => {}
                }
            }
        }
        Ok(Self {
            objects,
            arrows,
            identities,
            table,
        })
    }

    /// The category with one object and one arrow.
    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// `n` objects and only identity arrows.
    pub fn discrete(n: usize) -> Self {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let arrows = (0..n)
            .map(|i| Arrow {
                name: format!("id{i}"),
                src: i,
                tgt: i,
            })
            .collect();
        Self::new(objects, arrows, (0..n).collect(), |g, f| {
            (g == f).then_some(f)
        })
        .expect("discrete category is well formed")
    }

    /// One object whose arrows are the elements of a monoid, with
    /// `g ∘ f = g·f`. Presheaves on it are right actions of the monoid.
    pub fn from_monoid(
        names: &[String],
        mult: impl Fn(usize, usize) -> usize,
        unit: usize,
    ) -> Result<Self> {
        let arrows = names
            .iter()
            .map(|n| Arrow {
                name: n.clone(),
                src: 0,
                tgt: 0,
            })
            .collect();
        Self::new(vec!["*".into()], arrows, vec![unit], |g, f| {
            Some(mult(g, f))
        })
    }

    /// Two objects `V`, `E` and two arrows `s, t: V → E`. A presheaf on it is
    /// a directed graph with vertex set `G(V)`, edge set `G(E)` and
    /// source/target maps `G(s), G(t)`.
    pub fn parallel_pair() -> Self {
        let arrows = vec![
            Arrow {
                name: "idV".into(),
                src: 0,
                tgt: 0,
            },
            Arrow {
                name: "idE".into(),
                src: 1,
                tgt: 1,
            },
            Arrow {
                name: "s".into(),
                src: 0,
                tgt: 1,
            },
            Arrow {
                name: "t".into(),
                src: 0,
                tgt: 1,
            },
        ];
        Self::new(
            vec!["V".into(), "E".into()],
            arrows,
            vec![0, 1],
            |g, f| match (g, f) {
                (0, 0) => Some(0),
                (1, 1) => Some(1),
                (1, x @ (2 | 3)) | (x @ (2 | 3), 0) => Some(x),
                _ => None,
            },
        )
        .expect("parallel pair is well formed")
    }

    /// Two objects and a single non-identity arrow `f: 0 → 1`.
    pub fn walking_arrow() -> Self {
        let arrows = vec![
            Arrow {
                name: "id0".into(),
                src: 0,
                tgt: 0,
            },
            Arrow {
                name: "id1".into(),
                src: 1,
                tgt: 1,
            },
            Arrow {
                name: "f".into(),
                src: 0,
                tgt: 1,
            },
        ];
        Self::new(
            vec!["0".into(), "1".into()],
            arrows,
            vec![0, 1],
            |g, f| match (g, f) {
                (0, 0) => Some(0),
                (1, 1) => Some(1),
                (1, 2) | (2, 0) => Some(2),
                _ => None,
            },
        )
        .expect("walking arrow is well formed")
    }

    /// Two objects with a pair of mutually inverse arrows between them.
    pub fn walking_iso() -> Self {
        let arrows = vec![
            Arrow {
                name: "id0".into(),
                src: 0,
                tgt: 0,
            },
            Arrow {
                name: "id1".into(),
                src: 1,
                tgt: 1,
            },
            Arrow {
                name: "f".into(),
                src: 0,
                tgt: 1,
            },
            Arrow {
                name: "g".into(),
                src: 1,
                tgt: 0,
            },
        ];
        Self::new(
            vec!["0".into(), "1".into()],
            arrows,
            vec![0, 1],
            |g, f| match (g, f) {
                (0, 0) | (3, 2) => Some(0),
                (1, 1) | (2, 3) => Some(1),
                (1, 2) | (2, 0) => Some(2),
                (0, 3) | (3, 1) => Some(3),
                _ => None,
            },
        )
        .expect("walking iso is well formed")
    }

    /// Disjoint union of `n` copies of `self`; copy `k` of object `o` is
    /// object `k * |objects| + o`.
    pub fn copies(&self, n: usize) -> Self {
        let (no, na) = (self.objects.len(), self.arrows.len());
        let objects = (0..n)
            .flat_map(|k| self.objects.iter().map(move |o| format!("{o}#{k}")))
            .collect();
        let arrows = (0..n)
            .flat_map(|k| {
                self.arrows.iter().map(move |a| Arrow {
                    name: format!("{}#{k}", a.name),
                    src: k * no + a.src,
                    tgt: k * no + a.tgt,
                })
            })
            .collect();
        let identities = (0..n)
            .flat_map(|k| self.identities.iter().map(move |&i| k * na + i))
            .collect();
        Self::new(objects, arrows, identities, |g, f| {
            let (kg, kf) = (g / na, f / na);
            if kg != kf {
                return None;
            }
            self.compose(g % na, f % na).map(|h| kg * na + h)
        })
        .expect("copies of a category are well formed")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].src] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.arrows.len() + f]
    }

    pub fn hom(&self, src: usize, tgt: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.arrows[f].src == src && self.arrows[f].tgt == tgt)
            .collect()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Whether `f` has a two-sided inverse.
    pub fn is_iso(&self, f: usize) -> bool {
        let Arrow { src, tgt, .. } = self.arrows[f];
        self.hom(tgt, src).into_iter().any(|g| {
            self.compose(g, f) == Some(self.identities[src])
                && self.compose(f, g) == Some(self.identities[tgt])
        })
    }

    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        a == b || self.hom(a, b).into_iter().any(|f| self.is_iso(f))
    }

    /// Exhaustive associativity and unit checks.
    pub fn check_laws(&self) -> CheckReport {
        let mut report = CheckReport::new("category.laws");
        let mut units = CheckReport::new("category.units");
        for (f, a) in self.arrows.iter().enumerate() {
            let left = self.compose(self.identities[a.tgt], f);
            let right = self.compose(f, self.identities[a.src]);
            units.record(left == Some(f) && right == Some(f), || {
                Witness::new("identity is not a two-sided unit").field("arrow", &a.name)
            });
        }
        let mut assoc = CheckReport::new("category.associativity");
        let n = self.arrows.len();
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = self.compose(h, g) else {
                    continue;
                };
                for f in 0..n {
                    let Some(gf) = self.compose(g, f) else {
                        continue;
                    };
                    let lhs = self.compose(hg, f);
                    let rhs = self.compose(h, gf);
                    assoc.record(lhs == rhs, || {
                        Witness::new("(h∘g)∘f differs from h∘(g∘f)")
                            .field("h", &self.arrows[h].name)
                            .field("g", &self.arrows[g].name)
                            .field("f", &self.arrows[f].name)
                    });
                }
            }
        }
        report.push(units);
        report.push(assoc);
        report
    }
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.objects)
            .field(
                "arrows",
                &self.arrows.iter().map(|a| &a.name).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A functor between finite categories, given on objects and arrows.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFunctor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    objects: Vec<usize>,
    arrows: Vec<usize>,
}

impl FinFunctor {
    /// Shape-checked constructor: arrows must be sent between the images of
    /// their endpoints. Functoriality is reported by [`FinFunctor::check_laws`].
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        objects: Vec<usize>,
        arrows: Vec<usize>,
    ) -> Result<Self> {
        if objects.len() != dom.object_count() || arrows.len() != dom.arrow_count() {
            return Err(shape("functor data does not cover the domain category"));
        }
        if objects.iter().any(|&o| o >= cod.object_count()) {
            return Err(shape("object image outside the codomain category"));
        }
        for (f, &img) in arrows.iter().enumerate() {
            let a = dom.arrow(f);
            let Some(b) = cod.arrows().get(img) else {
                return Err(shape("arrow image outside the codomain category"));
            };
            if b.src != objects[a.src] || b.tgt != objects[a.tgt] {
                return Err(shape(format!(
                    "arrow `{}` is sent to `{}` whose endpoints do not match",
                    a.name, b.name
                )));
            }
        }
        Ok(Self {
            dom,
            cod,
            objects,
            arrows,
        })
    }

    /// Like [`FinFunctor::new`], but also rejects non-functorial data.
    pub fn new_checked(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        objects: Vec<usize>,
        arrows: Vec<usize>,
    ) -> Result<Self> {
        let f = Self::new(dom, cod, objects, arrows)?;
        let report = f.check_laws();
        match report.first_failure() {
            None => Ok(f),
            Some(bad) => Err(Error::Validation {
                name: "functor".into(),
                reason: bad
                    .witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default(),
            }),
        }
    }

    pub fn identity(cat: Arc<FinCategory>) -> Self {
        let objects = (0..cat.object_count()).collect();
        let arrows = (0..cat.arrow_count()).collect();
        Self {
            dom: cat.clone(),
            cod: cat,
            objects,
            arrows,
        }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(dom: Arc<FinCategory>) -> Self {
        let objects = vec![0; dom.object_count()];
        let arrows = vec![0; dom.arrow_count()];
        Self {
            dom,
            cod: Arc::new(FinCategory::terminal()),
            objects,
            arrows,
        }
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    pub fn object(&self, o: usize) -> usize {
        self.objects[o]
    }

    pub fn arrow(&self, f: usize) -> usize {
        self.arrows[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrows
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinFunctor) -> Result<FinFunctor> {
        if *self.cod != *next.dom {
            return Err(shape("functors are not composable"));
        }
        Ok(Self {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            arrows: self.arrows.iter().map(|&f| next.arrows[f]).collect(),
        })
    }

    /// The strict inverse, when the object and arrow maps are bijections.
    pub fn inverse(&self) -> Option<FinFunctor> {
        fn invert(map: &[usize], n: usize) -> Option<Vec<usize>> {
            if map.len() != n {
                return None;
            }
            let mut inv = vec![usize::MAX; n];
            for (i, &t) in map.iter().enumerate() {
                if std::mem::replace(&mut inv[t], i) != usize::MAX {
                    return None;
                }
            }
            Some(inv)
        }
        let objects = invert(&self.objects, self.cod.object_count())?;
        let arrows = invert(&self.arrows, self.cod.arrow_count())?;
        Some(Self {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            objects,
            arrows,
        })
    }

    pub fn check_laws(&self) -> CheckReport {
        let mut report = CheckReport::new("functor.laws");
        let mut ids = CheckReport::new("functor.identities");
        for o in 0..self.dom.object_count() {
            let img = self.arrows[self.dom.identity(o)];
            ids.record(img == self.cod.identity(self.objects[o]), || {
                Witness::new("identity not preserved").field("object", &self.dom.objects()[o])
            });
        }
        let mut comp = CheckReport::new("functor.composition");
        let n = self.dom.arrow_count();
        for g in 0..n {
            for f in 0..n {
                let Some(gf) = self.dom.compose(g, f) else {
                    continue;
                };
                let lhs = self.arrows[gf];
                let rhs = self.cod.compose(self.arrows[g], self.arrows[f]);
                comp.record(Some(lhs) == rhs, || {
                    Witness::new("F(g∘f) differs from F(g)∘F(f)")
                        .field("g", &self.dom.arrow(g).name)
                        .field("f", &self.dom.arrow(f).name)
                });
            }
        }
        report.push(ids);
        report.push(comp);
        report
    }

    /// Every codomain object is isomorphic to the image of some domain object.
    pub fn is_essentially_surjective(&self) -> bool {
        (0..self.cod.object_count())
            .all(|c| self.objects.iter().any(|&o| self.cod.isomorphic(o, c)))
    }
}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinFunctor")
            .field("objects", &self.objects)
            .field("arrows", &self.arrows)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinCategory {
        FinCategory::from_monoid(&["e".into(), "g".into()], |a, b| a ^ b, 0).unwrap()
    }

    #[test]
    fn standard_categories_satisfy_the_laws() {
        for c in [
            FinCategory::terminal(),
            FinCategory::discrete(3),
            FinCategory::parallel_pair(),
            FinCategory::walking_arrow(),
            FinCategory::walking_iso(),
            z2(),
            z2().copies(2),
        ] {
            assert!(c.check_laws().passed(), "{c:?}");
        }
    }

    #[test]
    fn non_associative_monoid_table_fails() {
        // e is a unit, but (a∘a)∘b = b∘b = a while a∘(a∘b) = a∘a = b.
        let table = [[0, 1, 2], [1, 2, 1], [2, 2, 1]];
        let c =
            FinCategory::from_monoid(&["e".into(), "a".into(), "b".into()], |g, f| table[g][f], 0)
                .unwrap();
        assert!(!c.check_laws().passed());
    }

    #[test]
    fn identity_functor_passes() {
        let c = Arc::new(FinCategory::parallel_pair());
        assert!(FinFunctor::identity(c).check_laws().passed());
    }

    #[test]
    fn essential_surjectivity_up_to_iso() {
        let iso = Arc::new(FinCategory::walking_iso());
        let point = Arc::new(FinCategory::terminal());
        let f = FinFunctor::new(point, iso, vec![0], vec![0]).unwrap();
        assert!(f.is_essentially_surjective());
        let arrow = Arc::new(FinCategory::walking_arrow());
        let g =
            FinFunctor::new(Arc::new(FinCategory::terminal()), arrow, vec![0], vec![0]).unwrap();
        assert!(!g.is_essentially_surjective());
    }

    #[test]
    fn monoid_morphism_functor_is_functorial() {
        // Z4 → Z2 by reduction, as a functor between one-object categories.
        let z4 = FinCategory::from_monoid(
            &["0".into(), "1".into(), "2".into(), "3".into()],
            |a, b| (a + b) % 4,
            0,
        )
        .unwrap();
        let f = FinFunctor::new(Arc::new(z4), Arc::new(z2()), vec![0], vec![0, 1, 0, 1]).unwrap();
        assert!(f.check_laws().passed());
        assert!(f.is_essentially_surjective());
    }

    #[test]
    fn non_functorial_map_is_reported() {
        let z4 = FinCategory::from_monoid(
            &["0".into(), "1".into(), "2".into(), "3".into()],
            |a, b| (a + b) % 4,
            0,
        )
        .unwrap();
        let f = FinFunctor::new(Arc::new(z4), Arc::new(z2()), vec![0], vec![0, 1, 1, 1]).unwrap();
        let report = f.check_laws();
        assert!(!report.passed());
        assert!(report
            .item("functor.composition")
            .unwrap()
            .witness
            .is_some());
    }
}
