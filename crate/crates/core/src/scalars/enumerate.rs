use std::collections::BTreeSet;
use std::sync::Arc;

use crate::actegory::Actegory;
use crate::carrier::CarrierMap;
use crate::commalg::{monoid_homs, CommMonoid, MonoidTable};
use crate::fincore::FinSet;

use super::{Module, ModuleMorphism};

/// Self-maps of `{0, .., n-1}` under composition, `f·g = f ∘ g`; when
/// `pointed`, only maps fixing 0, with the constant map at 0 as zero.
/// Element `k` encodes the map `v ↦ (k / n^v) mod n`.
fn transformation_monoid(n: usize, pointed: bool) -> (MonoidTable, Vec<Vec<usize>>) {
    let all: Vec<Vec<usize>> = (0..n.pow(n as u32))
        .map(|k| (0..n).map(|v| k / n.pow(v as u32) % n).collect())
        .filter(|f: &Vec<usize>| !pointed || f.first() == Some(&0))
        .collect();
    let index = |f: &[usize]| {
        all.iter()
            .position(|g| g == f)
            .expect("closed under composition")
    };
    let size = all.len();
    let mut mult = vec![0; size * size];
    for (i, f) in all.iter().enumerate() {
        for (j, g) in all.iter().enumerate() {
            let fg: Vec<usize> = g.iter().map(|&v| f[v]).collect();
            mult[i * size + j] = index(&fg);
        }
    }
    let unit = index(&(0..n).collect::<Vec<_>>());
    let zero = pointed.then(|| index(&vec![0; n]));
    let labels = FinSet::from_generated(all.iter().map(|f| format!("{f:?}")).collect());
    (MonoidTable::from_flat(labels, mult, unit, zero), all)
}

/// Every module over `over` in `actegory` whose carrier components have at
/// most `max` elements: per component, a homomorphism from the monoid into
/// the self-maps of the component, kept when the result is natural. With
/// `up_to_iso`, modules on a single-object discrete shape are reduced to one
/// per isomorphism class.
pub fn modules_up_to(
    actegory: &Arc<Actegory>,
    over: &Arc<CommMonoid>,
    max: usize,
    up_to_iso: bool,
) -> Vec<Module> {
    let mut out = Vec::new();
    let pointed = actegory.is_pointed();
    let single = {
        let s = actegory.along().dom();
        s.object_count() == 1 && s.arrow_count() == 1
    };
    for m in actegory.objects_up_to(max) {
        let nx = m.base().object_count();
        let per: Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = (0..nx)
            .map(|x| {
                let (end, maps) = transformation_monoid(m.size(x), pointed);
                let y = actegory.along().object(x);
                (monoid_homs(over.table(y), &end), maps)
            })
            .collect();
        if per.iter().any(|(h, _)| h.is_empty()) {
            continue;
        }
        let mut seen = BTreeSet::new();
        let mut choice = vec![0; nx];
        loop {
            let cur = choice.clone();
            let per_ref = &per;
            let candidate =
                Module::from_fn(actegory.clone(), over.clone(), m.clone(), move |x, s, v| {
                    let (homs, maps) = &per_ref[x];
                    maps[homs[cur[x]][s]][v]
                });
            if let Ok(module) = candidate {
                if !(up_to_iso && single) || seen.insert(canonical_action(&module, pointed)) {
                    out.push(module);
                }
            }
            let mut k = 0;
            loop {
                if k == nx {
                    break;
                }
                choice[k] += 1;
                if choice[k] < per[k].0.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == nx {
                break;
            }
        }
    }
    out
}

/// Smallest action table over relabellings of a single-component carrier.
fn canonical_action(m: &Module, pointed: bool) -> Vec<usize> {
    let n = m.size(0);
    let scalars = m.over().size(m.scalar_object(0));
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    let start = usize::from(pointed).min(n);
    permute(&mut perm, start, &mut |p| {
        let mut t = vec![0; scalars * n];
        for s in 0..scalars {
            for v in 0..n {
                t[s * n + p[v]] = p[m.act(0, s, v)];
            }
        }
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k >= perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Every module morphism `dom → cod`, at most `limit`. Images are chosen
/// for one element at a time and then forced along the action and the
/// restriction maps.
pub fn module_morphisms(dom: &Arc<Module>, cod: &Arc<Module>, limit: usize) -> Vec<ModuleMorphism> {
    let mut out = Vec::new();
    if dom.over() != cod.over() || dom.carrier().base() != cod.carrier().base() {
        return out;
    }
    let nx = dom.object_count();
    let mut state: Vec<Vec<usize>> = (0..nx).map(|x| vec![usize::MAX; dom.size(x)]).collect();
    let mut queue = Vec::new();
    for x in 0..nx {
        if let (Some(p), Some(q)) = (dom.carrier().point(x), cod.carrier().point(x)) {
            state[x][p] = q;
            queue.push((x, p));
        }
    }
    if !propagate(dom, cod, &mut state, queue) {
        return out;
    }
    search(dom, cod, state, limit, &mut out);
    out
}

fn search(
    dom: &Arc<Module>,
    cod: &Arc<Module>,
    state: Vec<Vec<usize>>,
    limit: usize,
    out: &mut Vec<ModuleMorphism>,
) {
    if out.len() >= limit {
        return;
    }
    let next = state
        .iter()
        .enumerate()
        .find_map(|(x, c)| c.iter().position(|&t| t == usize::MAX).map(|v| (x, v)));
    let Some((x, v)) = next else {
        let map = CarrierMap::from_parts(dom.carrier().clone(), cod.carrier().clone(), state);
        out.push(ModuleMorphism::from_parts(dom.clone(), cod.clone(), map));
        return;
    };
    for t in 0..cod.size(x) {
        let mut s = state.clone();
        s[x][v] = t;
        if propagate(dom, cod, &mut s, vec![(x, v)]) {
            search(dom, cod, s, limit, out);
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn propagate(
    dom: &Module,
    cod: &Module,
    state: &mut [Vec<usize>],
    mut queue: Vec<(usize, usize)>,
) -> bool {
    let a = dom.over();
    let base = dom.carrier().base();
    while let Some((x, v)) = queue.pop() {
        let img = state[x][v];
        let y = dom.scalar_object(x);
        for s in 0..a.size(y) {
            let (w, target) = (dom.act(x, s, v), cod.act(x, s, img));
            if !assign(state, &mut queue, x, w, target) {
                return false;
            }
        }
        for f in 0..base.arrow_count() {
            let arrow = base.arrow(f);
            if arrow.tgt != x || base.is_identity(f) {
                continue;
            }
            let (w, target) = (dom.carrier().restrict(f, v), cod.carrier().restrict(f, img));
            if !assign(state, &mut queue, arrow.src, w, target) {
                return false;
            }
        }
    }
    true
}

fn assign(
    state: &mut [Vec<usize>],
    queue: &mut Vec<(usize, usize)>,
    x: usize,
    w: usize,
    target: usize,
) -> bool {
    let slot = &mut state[x][w];
    if *slot == usize::MAX {
        *slot = target;
        queue.push((x, w));
        true
    } else {
        *slot == target
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commalg::Base;

    #[test]
    fn transformation_monoid_sizes() {
        assert_eq!(transformation_monoid(3, false).0.size(), 27);
        assert_eq!(transformation_monoid(3, true).0.size(), 9);
        assert!(transformation_monoid(2, false).0.check_laws(false).passed());
    }

    #[test]
    fn z2_sets_of_size_two_up_to_iso() {
        // Trivial and swap actions.
        let act = Arc::new(Actegory::self_action(Base::cartesian()));
        let z2 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(2)));
        let two: Vec<_> = modules_up_to(&act, &z2, 2, true)
            .into_iter()
            .filter(|m| m.size(0) == 2)
            .collect();
        assert_eq!(two.len(), 2);
        let all: Vec<_> = modules_up_to(&act, &z2, 2, false)
            .into_iter()
            .filter(|m| m.size(0) == 2)
            .collect();
        assert_eq!(all.len(), 2);
        let three: Vec<_> = modules_up_to(&act, &z2, 3, false)
            .into_iter()
            .filter(|m| m.size(0) == 3)
            .collect();
        assert_eq!(three.len(), 4);
    }

    #[test]
    fn morphism_search_matches_brute_force() {
        let act = Arc::new(Actegory::self_action(Base::cartesian()));
        let z2 = Arc::new(CommMonoid::plain(MonoidTable::cyclic(2)));
        let mods: Vec<Arc<Module>> = modules_up_to(&act, &z2, 3, false)
            .into_iter()
            .map(Arc::new)
            .collect();
        for m in &mods {
            for n in &mods {
                let fast = module_morphisms(m, n, usize::MAX).len();
                let (a, b) = (m.size(0), n.size(0));
                let brute = (0..b.pow(a as u32))
                    .filter(|&code| {
                        let f: Vec<usize> = (0..a).map(|v| code / b.pow(v as u32) % b).collect();
                        (0..2).all(|s| (0..a).all(|v| f[m.act(0, s, v)] == n.act(0, s, f[v])))
                    })
                    .count();
                assert_eq!(fast, brute);
            }
        }
    }
}
