//! Exhaustive enumeration of small carriers and of the maps between them.

use std::sync::Arc;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::carrier::{Carrier, CarrierMap};
use crate::fincore::{FinCategory, FinPresheaf, FinSet};

fn component(size: usize, pointed: bool) -> FinSet {
    if pointed {
        FinSet::new(std::iter::once("*".to_string()).chain((1..size).map(|i| i.to_string())))
            .expect("distinct labels")
    } else {
        FinSet::range(size)
    }
}

/// Every carrier on `shape` whose components have at most `max` elements
/// (at least one when pointed, with the basepoint first). Not deduplicated
/// up to isomorphism except on discrete shapes, where sizes determine the
/// object.
pub fn enumerate_carriers(shape: &Arc<FinCategory>, max: usize, pointed: bool) -> Vec<Carrier> {
    let nx = shape.object_count();
    let lo = usize::from(pointed);
    if max < lo {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut sizes = vec![lo; nx];
    loop {
        enumerate_with_sizes(shape, &sizes, pointed, &mut out);
        let mut k = 0;
        loop {
            if k == nx {
                return out;
            }
            sizes[k] += 1;
            if sizes[k] <= max {
                break;
            }
            sizes[k] = lo;
            k += 1;
        }
    }
}

fn enumerate_with_sizes(
    shape: &Arc<FinCategory>,
    sizes: &[usize],
    pointed: bool,
    out: &mut Vec<Carrier>,
) {
    let na = shape.arrow_count();
    let free: Vec<usize> = (0..na).filter(|&f| !shape.is_identity(f)).collect();
    let mut tables: Vec<Option<Vec<usize>>> = (0..na)
        .map(|f| {
            shape
                .is_identity(f)
                .then(|| (0..sizes[shape.arrow(f).src]).collect())
        })
        .collect();
    let sets: Vec<FinSet> = sizes.iter().map(|&n| component(n, pointed)).collect();
    search_tables(shape, sizes, pointed, &free, 0, &mut tables, &sets, out);
}

#[allow(clippy::too_many_arguments)]
fn search_tables(
    shape: &Arc<FinCategory>,
    sizes: &[usize],
    pointed: bool,
    free: &[usize],
    k: usize,
    tables: &mut Vec<Option<Vec<usize>>>,
    sets: &[FinSet],
    out: &mut Vec<Carrier>,
) {
    if k == free.len() {
        let tabs = tables
            .iter()
            .map(|t| t.clone().expect("assigned"))
            .collect();
        let sheaf =
            FinPresheaf::from_tables(shape.clone(), sets.to_vec(), tabs).expect("shapes match");
        let c = if pointed {
            Carrier::pointed(sheaf, vec![0; sizes.len()]).expect("basepoints preserved")
        } else {
            Carrier::plain(sheaf)
        };
        out.push(c);
        return;
    }
    let f = free[k];
    let a = shape.arrow(f);
    let (n_dom, n_cod) = (sizes[a.tgt], sizes[a.src]);
    if n_dom > 0 && n_cod == 0 {
        return;
    }
    let total = n_cod.pow(n_dom as u32);
    for code in 0..total {
        let table: Vec<usize> = (0..n_dom)
            .map(|i| code / n_cod.pow(i as u32) % n_cod)
            .collect();
        if pointed && table[0] != 0 {
            continue;
        }
        tables[f] = Some(table);
        if consistent(shape, tables) {
            search_tables(shape, sizes, pointed, free, k + 1, tables, sets, out);
        }
    }
    tables[f] = None;
}

/// `F(g∘f) = F(f)∘F(g)` wherever all three tables are assigned.
fn consistent(shape: &FinCategory, tables: &[Option<Vec<usize>>]) -> bool {
    let na = shape.arrow_count();
    for g in 0..na {
        let Some(tg) = &tables[g] else { continue };
        for f in 0..na {
            let Some(tf) = &tables[f] else { continue };
            let Some(h) = shape.compose(g, f) else {
                continue;
            };
            let Some(th) = &tables[h] else { continue };
            if tg.iter().zip(th).any(|(&v, &w)| tf[v] != w) {
                return false;
            }
        }
    }
    true
}

/// Natural (and basepoint-preserving) maps `dom → cod`, at most `limit`.
pub fn carrier_maps(dom: &Carrier, cod: &Carrier, limit: usize) -> Vec<CarrierMap> {
    let nx = dom.base().object_count();
    let mut out = Vec::new();
    if dom.base() != cod.base() || dom.is_pointed() != cod.is_pointed() {
        return out;
    }
    let mut comps: Vec<Vec<usize>> = (0..nx).map(|x| vec![usize::MAX; dom.size(x)]).collect();
    maps_search(dom, cod, 0, 0, &mut comps, limit, &mut out);
    out
}

fn maps_search(
    dom: &Carrier,
    cod: &Carrier,
    x: usize,
    v: usize,
    comps: &mut Vec<Vec<usize>>,
    limit: usize,
    out: &mut Vec<CarrierMap>,
) {
    if out.len() >= limit {
        return;
    }
    let nx = comps.len();
    if x == nx {
        out.push(CarrierMap::new(dom.clone(), cod.clone(), comps.clone()).expect("well formed"));
        return;
    }
    if v == dom.size(x) {
        if natural_so_far(dom, cod, comps, x) {
            maps_search(dom, cod, x + 1, 0, comps, limit, out);
        }
        return;
    }
    let candidates: Vec<usize> = match (dom.point(x), cod.point(x)) {
        (Some(p), Some(q)) if p == v => vec![q],
        _ => (0..cod.size(x)).collect(),
    };
    for t in candidates {
        comps[x][v] = t;
        maps_search(dom, cod, x, v + 1, comps, limit, out);
    }
    comps[x][v] = usize::MAX;
}

/// Naturality along every arrow whose endpoints are both among `0..=upto`.
fn natural_so_far(dom: &Carrier, cod: &Carrier, comps: &[Vec<usize>], upto: usize) -> bool {
    let base = dom.base();
    (0..base.arrow_count()).all(|f| {
        let a = base.arrow(f);
        if a.src > upto || a.tgt > upto || (a.src != upto && a.tgt != upto) {
            return true;
        }
        (0..dom.size(a.tgt))
            .all(|v| comps[a.src][dom.restrict(f, v)] == cod.restrict(f, comps[a.tgt][v]))
    })
}

/// All of `items` when there are at most `cap`, otherwise `cap` of them
/// chosen by a generator seeded with `seed`, kept in their original order.
pub fn sample_within<T>(items: Vec<T>, cap: usize, seed: u64) -> Vec<T> {
    if items.len() <= cap {
        return items;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = index::sample(&mut rng, items.len(), cap).into_vec();
    keep.sort_unstable();
    let mut keep = keep.into_iter().peekable();
    items
        .into_iter()
        .enumerate()
        .filter_map(|(i, t)| {
            if keep.peek() == Some(&i) {
                keep.next();
                Some(t)
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_ordered() {
        let a = sample_within((0..100).collect(), 10, 7);
        assert_eq!(a, sample_within((0..100).collect(), 10, 7));
        assert_eq!(a.len(), 10);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sample_within(vec![1, 2], 10, 0), vec![1, 2]);
    }

    #[test]
    fn sets_and_pointed_sets() {
        let t = Arc::new(FinCategory::terminal());
        assert_eq!(enumerate_carriers(&t, 3, false).len(), 4);
        assert_eq!(enumerate_carriers(&t, 3, true).len(), 3);
    }

    #[test]
    fn graphs_with_at_most_one_vertex_and_edge() {
        // V ∈ {0,1}, E ∈ {0,1}; an edge needs a vertex: 3 graphs.
        let pp = Arc::new(FinCategory::parallel_pair());
        assert_eq!(enumerate_carriers(&pp, 1, false).len(), 3);
        // With up to two vertices and two edges: count by brute force.
        let mut brute = 0;
        for v in 0..=2usize {
            for e in 0..=2usize {
                brute += v.pow(e as u32).pow(2);
            }
        }
        assert_eq!(enumerate_carriers(&pp, 2, false).len(), brute);
    }

    #[test]
    fn z2_sets_are_involutions() {
        let names = vec!["e".to_string(), "g".to_string()];
        let bz2 = Arc::new(FinCategory::from_monoid(&names, |a, b| (a + b) % 2, 0).unwrap());
        let on3: Vec<_> = enumerate_carriers(&bz2, 3, false)
            .into_iter()
            .filter(|c| c.size(0) == 3)
            .collect();
        // Involutions of a 3-element set: 1 + 3.
        assert_eq!(on3.len(), 4);
    }

    #[test]
    fn maps_between_sets_and_natural_maps() {
        let t = Arc::new(FinCategory::terminal());
        let sets = enumerate_carriers(&t, 3, false);
        assert_eq!(carrier_maps(&sets[2], &sets[3], usize::MAX).len(), 9);
        let pointed = enumerate_carriers(&t, 3, true);
        assert_eq!(carrier_maps(&pointed[2], &pointed[2], usize::MAX).len(), 9);
        let pp = Arc::new(FinCategory::parallel_pair());
        let graphs = enumerate_carriers(&pp, 2, false);
        for g in &graphs {
            for h in &graphs {
                for m in carrier_maps(g, h, usize::MAX) {
                    assert!(m.is_natural());
                }
            }
        }
    }
}
