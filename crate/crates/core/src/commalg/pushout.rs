use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, shape, Result};
use crate::fincore::{FinSet, UnionFind};
use crate::report::{Provenance, Witness};

use super::object::{CommMonoid, MonoidMorphism};
use super::table::MonoidTable;

/// Smallest congruence on a commutative monoid containing the given pairs:
/// pairs are merged to fixpoint, and each merge of `p ~ q` enqueues
/// `p·s ~ q·s` for every element `s`.
pub fn congruence_closure(
    table: &MonoidTable,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> UnionFind {
    let n = table.size();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = pairs.into_iter().collect();
    while let Some((p, q)) = queue.pop() {
        if uf.union(p, q) {
            for s in 0..n {
                queue.push((table.mul(p, s), table.mul(q, s)));
            }
        }
    }
    uf
}

/// Quotient of a commutative monoid by a congruence, with its projection.
pub fn quotient_monoid(table: &MonoidTable, classes: &mut UnionFind) -> (MonoidTable, Vec<usize>) {
    let reps = classes.representatives();
    let mut index = vec![usize::MAX; reps.len()];
    let mut members = Vec::new();
    for (v, &r) in reps.iter().enumerate() {
        if r == v {
            index[v] = members.len();
            members.push(v);
        }
    }
    let proj: Vec<usize> = reps.iter().map(|&r| index[r]).collect();
    let labels = members
        .iter()
        .map(|&v| format!("{{{}}}", table.label(v)))
        .collect();
    let k = members.len();
    let mut mult = vec![0; k * k];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            mult[i * k + j] = proj[table.mul(a, b)];
        }
    }
    let q = MonoidTable::from_flat(
        FinSet::from_generated(labels),
        mult,
        proj[table.unit()],
        table.zero().map(|z| proj[z]),
    );
    (q, proj)
}

/// The pushout `b ⊗_a a′` of a span `b ← a → a′` with its coprojections.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<CommMonoid>,
    /// `ι1: b → b ⊗_a a′`.
    pub left: MonoidMorphism,
    /// `ι2: a′ → b ⊗_a a′`.
    pub right: MonoidMorphism,
}

/// Pushout of `α: a → b` and `β: a → a′`: the quotient of the product
/// `b × a′` by the congruence generated by `(α(x)·u, v) ~ (u, β(x)·v)`,
/// computed at every object of the base shape.
pub fn pushout(alpha: &MonoidMorphism, beta: &MonoidMorphism) -> Result<Pushout> {
    if alpha.dom() != beta.dom() {
        return Err(shape("pushout needs two morphisms out of the same monoid"));
    }
    let (a, b, a2) = (alpha.dom(), alpha.cod(), beta.cod());
    let base = a.base().clone();
    let shape_y = base.shape().clone();
    let ny = shape_y.object_count();
    let mut tables = Vec::with_capacity(ny);
    let mut projections = Vec::with_capacity(ny);
    for y in 0..ny {
        let (tb, ta2) = (b.table(y), a2.table(y));
        let prod = tb.product(ta2);
        let m = ta2.size();
        let generators = (0..a.size(y)).map(|x| {
            (
                alpha.apply(y, x) * m + ta2.unit(),
                tb.unit() * m + beta.apply(y, x),
            )
        });
        let mut classes = congruence_closure(&prod, generators);
        let (q, proj) = quotient_monoid(&prod, &mut classes);
        tables.push(q);
        projections.push(proj);
    }
    // Restrictions are induced from b × a′.
    let mut restrictions = Vec::with_capacity(shape_y.arrow_count());
    for f in 0..shape_y.arrow_count() {
        let arr = shape_y.arrow(f);
        let m_t = a2.size(arr.tgt);
        let m_s = a2.size(arr.src);
        let mut table = vec![usize::MAX; tables[arr.tgt].size()];
        for p in 0..b.size(arr.tgt) * m_t {
            let (u, v) = (p / m_t, p % m_t);
            let img = projections[arr.src][b.restrict(f, u) * m_s + a2.restrict(f, v)];
            let slot = &mut table[projections[arr.tgt][p]];
            if *slot == usize::MAX {
                *slot = img;
            } else if *slot != img {
                return Err(invariant("pushout restriction is not well defined"));
            }
        }
        restrictions.push(table);
    }
    let object = if base.is_pointed() {
        CommMonoid::pointed(tables.pop().expect("pointed base has one object"))?
    } else {
        CommMonoid::presheaf(shape_y.clone(), tables, restrictions)?
    };
    let object = Arc::new(object);
    let left = (0..ny)
        .map(|y| {
            let m = a2.size(y);
            (0..b.size(y))
                .map(|u| projections[y][u * m + a2.unit(y)])
                .collect()
        })
        .collect();
    let right = (0..ny)
        .map(|y| {
            let m = a2.size(y);
            (0..m).map(|v| projections[y][b.unit(y) * m + v]).collect()
        })
        .collect();
    Ok(Pushout {
        left: MonoidMorphism::new(b.clone(), object.clone(), left)?,
        right: MonoidMorphism::new(a2.clone(), object.clone(), right)?,
        object,
    })
}

/// Decides whether `α` is an epimorphism of commutative monoid objects: it is
/// exactly when both coprojections into `b ⊗_a b` agree. On failure the
/// witness names an element where they differ.
pub fn is_epi(alpha: &MonoidMorphism) -> Result<(bool, Option<Witness>)> {
    let p = pushout(alpha, alpha)?;
    let b = alpha.cod();
    for y in 0..b.tables().len() {
        for u in 0..b.size(y) {
            let (l, r) = (p.left.apply(y, u), p.right.apply(y, u));
            if l != r {
                let w = Witness::new("coprojections into b ⊗_a b differ")
                    .field("element", b.label(y, u))
                    .field("left", p.object.label(y, l))
                    .field("right", p.object.label(y, r));
                return Ok((false, Some(w)));
            }
        }
    }
    Ok((true, None))
}

/// A boolean together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged {
    pub value: bool,
    pub provenance: Provenance,
}

/// Finite type is declared, not computed: every morphism of finite monoid
/// objects is finitely presented by its multiplication tables, and the
/// defining filtered-colimit condition is not decidable by finite probing.
pub fn is_finite_type(_alpha: &MonoidMorphism) -> Tagged {
    Tagged {
        value: true,
        provenance: Provenance::Policy,
    }
}

#[cfg(test)]
mod tests {
    use super::super::object::check_comm_monoid;
    use super::*;

    fn plain(t: MonoidTable) -> Arc<CommMonoid> {
        Arc::new(CommMonoid::plain(t))
    }

    /// Congruence oracle: iterate "generated pairs + products + transitivity"
    /// on an explicit relation matrix until nothing changes.
    fn oracle_classes(table: &MonoidTable, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let n = table.size();
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            rel[i][i] = true;
        }
        for &(p, q) in pairs {
            rel[p][q] = true;
            rel[q][p] = true;
        }
        loop {
            let mut changed = false;
            for p in 0..n {
                for q in 0..n {
                    if !rel[p][q] {
                        continue;
                    }
                    for s in 0..n {
                        let (ps, qs) = (table.mul(p, s), table.mul(q, s));
                        if !rel[ps][qs] {
                            rel[ps][qs] = true;
                            rel[qs][ps] = true;
                            changed = true;
                        }
                    }
                    for r in 0..n {
                        if rel[q][r] && !rel[p][r] {
                            rel[p][r] = true;
                            rel[r][p] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return rel;
            }
        }
    }

    #[test]
    fn closure_matches_relation_oracle() {
        let t = MonoidTable::cyclic(2).product(&MonoidTable::saturating(2));
        let pairs = [(1, 2), (4, 4)];
        let mut uf = congruence_closure(&t, pairs);
        let rel = oracle_classes(&t, &pairs);
        for p in 0..t.size() {
            for q in 0..t.size() {
                assert_eq!(uf.find(p) == uf.find(q), rel[p][q]);
            }
        }
    }

    #[test]
    fn pushout_of_trivial_monoids_is_trivial() {
        let t = plain(MonoidTable::trivial());
        let id = MonoidMorphism::identity(&t);
        let p = pushout(&id, &id).unwrap();
        assert_eq!(p.object.size(0), 1);
    }

    #[test]
    fn pushout_over_trivial_is_the_product() {
        let t = plain(MonoidTable::trivial());
        let b2 = plain(MonoidTable::boolean());
        let f = MonoidMorphism::from_trivial(&t, &b2).unwrap();
        let p = pushout(&f, &f).unwrap();
        assert_eq!(p.object.size(0), 4);
        assert!(check_comm_monoid(&p.object).passed());
        let sq1 = f.then(&p.left).unwrap();
        let sq2 = f.then(&p.right).unwrap();
        assert_eq!(sq1.comps(), sq2.comps());
    }

    #[test]
    fn pushout_along_identity_recovers_the_other_leg() {
        let z4 = plain(MonoidTable::cyclic(4));
        let z2 = plain(MonoidTable::cyclic(2));
        let beta = MonoidMorphism::single(z4.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        let p = pushout(&MonoidMorphism::identity(&z4), &beta).unwrap();
        assert_eq!(p.object.size(0), 2);
        assert!(p.right.is_iso());
    }

    #[test]
    fn epi_examples() {
        let t = plain(MonoidTable::trivial());
        let z2 = plain(MonoidTable::cyclic(2));
        let z4 = plain(MonoidTable::cyclic(4));
        assert!(is_epi(&MonoidMorphism::identity(&z2)).unwrap().0);
        let unit = MonoidMorphism::from_trivial(&t, &z2).unwrap();
        let (epi, w) = is_epi(&unit).unwrap();
        assert!(!epi);
        let w = w.unwrap();
        assert_eq!(w.get("element"), Some("g"));
        let red = MonoidMorphism::single(z4, z2, vec![0, 1, 0, 1]).unwrap();
        assert!(is_epi(&red).unwrap().0);
    }

    #[test]
    fn pointed_pushout_is_a_pointed_monoid() {
        let b2 = Arc::new(CommMonoid::pointed(MonoidTable::boolean()).unwrap());
        let z2z = Arc::new(CommMonoid::pointed(MonoidTable::cyclic(2).with_zero()).unwrap());
        // B2 is initial among monoids with zero: 0 ↦ 0, 1 ↦ unit.
        let f = MonoidMorphism::single(b2, z2z.clone(), vec![0, 1]).unwrap();
        assert!(f.check_laws().passed());
        let p = pushout(&f, &f).unwrap();
        assert!(check_comm_monoid(&p.object).passed());
        // The smash product Z2₊ ∧ Z2₊ has 1 + 2·2 elements.
        assert_eq!(p.object.size(0), 5);
    }

    #[test]
    fn finite_type_is_policy() {
        let z2 = plain(MonoidTable::cyclic(2));
        let t = is_finite_type(&MonoidMorphism::identity(&z2));
        assert!(t.value);
        assert_eq!(t.provenance, Provenance::Policy);
    }
}
