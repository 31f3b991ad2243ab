use std::collections::BTreeSet;
use std::sync::Arc;

use crate::fincore::FinSet;

use super::object::{CommMonoid, MonoidMorphism};
use super::table::MonoidTable;

fn element_labels(n: usize) -> FinSet {
    const NAMES: [&str; 8] = ["e", "a", "b", "c", "d", "f", "h", "k"];
    let labels: Vec<String> = (0..n)
        .map(|i| {
            NAMES
                .get(i)
                .map_or_else(|| format!("x{i}"), |s| s.to_string())
        })
        .collect();
    FinSet::new(labels).expect("distinct names")
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k >= perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    if n > 0 {
        rec(1, &mut perm, &mut out);
    }
    out
}

/// Lexicographically smallest relabelling of a table whose unit is 0.
fn canonical(table: &[usize], n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            let mut t = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[p[a] * n + p[b]] = p[table[a * n + b]];
                }
            }
            t
        })
        .min()
        .expect("at least the identity permutation")
}

/// All commutative monoids of order `n` up to isomorphism, unit first and
/// elements labelled `e, a, b, …`. Sizes above 5 are not practical.
pub fn comm_monoids_of_order(n: usize) -> Vec<MonoidTable> {
    if n == 0 {
        return Vec::new();
    }
    let perms = permutations_fixing_zero(n);
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut table = vec![usize::MAX; n * n];
    for a in 0..n {
        table[a] = a;
        table[a * n] = a;
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    fill(0, &cells, &mut table, n, &perms, &mut seen, &mut out);
    out
}

fn associative_where_defined(t: &[usize], n: usize) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            if ab == usize::MAX {
                continue;
            }
            for c in 0..n {
                let bc = t[b * n + c];
                if bc == usize::MAX {
                    continue;
                }
                let (l, r) = (t[ab * n + c], t[a * n + bc]);
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill(
    k: usize,
    cells: &[(usize, usize)],
    table: &mut Vec<usize>,
    n: usize,
    perms: &[Vec<usize>],
    seen: &mut BTreeSet<Vec<usize>>,
    out: &mut Vec<MonoidTable>,
) {
    if k == cells.len() {
        let canon = canonical(table, n, perms);
        if seen.insert(canon.clone()) {
            out.push(MonoidTable::from_flat(element_labels(n), canon, 0, None));
        }
        return;
    }
    let (i, j) = cells[k];
    for v in 0..n {
        table[i * n + j] = v;
        table[j * n + i] = v;
        if associative_where_defined(table, n) {
            fill(k + 1, cells, table, n, perms, seen, out);
        }
    }
    table[i * n + j] = usize::MAX;
    table[j * n + i] = usize::MAX;
}

/// Commutative monoids of every order `1..=max`, up to isomorphism.
pub fn comm_monoids_up_to(max: usize) -> Vec<MonoidTable> {
    (1..=max).flat_map(comm_monoids_of_order).collect()
}

/// Commutative monoids with an absorbing element (designated as zero) of
/// every order `1..=max`, up to isomorphism.
pub fn cmon0_up_to(max: usize) -> Vec<MonoidTable> {
    comm_monoids_up_to(max)
        .into_iter()
        .filter_map(|t| {
            t.find_absorbing()
                .map(|z| t.with_absorbing(z).expect("absorbing"))
        })
        .collect()
}

/// A small generating set: greedily add the first element outside the
/// submonoid generated so far.
pub fn generators(t: &MonoidTable) -> Vec<usize> {
    let n = t.size();
    let mut inside = vec![false; n];
    inside[t.unit()] = true;
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        inside[x] = true;
        loop {
            let mut grew = false;
            for a in 0..n {
                for b in 0..n {
                    if inside[a] && inside[b] && !inside[t.mul(a, b)] {
                        inside[t.mul(a, b)] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    gens
}

/// Every homomorphism `dom → cod` (preserving the zero when both designate
/// one), as maps on element indices. Images of generators are chosen by
/// backtracking and the rest is forced by multiplicativity.
pub fn monoid_homs(dom: &MonoidTable, cod: &MonoidTable) -> Vec<Vec<usize>> {
    let gens = generators(dom);
    let mut map = vec![usize::MAX; dom.size()];
    map[dom.unit()] = cod.unit();
    if let (Some(z), Some(w)) = (dom.zero(), cod.zero()) {
        if map[z] != usize::MAX && map[z] != w {
            return Vec::new();
        }
        map[z] = w;
    }
    let mut out = Vec::new();
    hom_search(dom, cod, &gens, 0, &mut map, &mut out);
    out
}

fn propagate(dom: &MonoidTable, cod: &MonoidTable, map: &mut [usize]) -> bool {
    let n = dom.size();
    loop {
        let mut grew = false;
        for a in 0..n {
            if map[a] == usize::MAX {
                continue;
            }
            for b in 0..n {
                if map[b] == usize::MAX {
                    continue;
                }
                let ab = dom.mul(a, b);
                let img = cod.mul(map[a], map[b]);
                if map[ab] == usize::MAX {
                    map[ab] = img;
                    grew = true;
                } else if map[ab] != img {
                    return false;
                }
            }
        }
        if !grew {
            return true;
        }
    }
}

fn hom_search(
    dom: &MonoidTable,
    cod: &MonoidTable,
    gens: &[usize],
    k: usize,
    map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == gens.len() {
        let mut m = map.clone();
        if propagate(dom, cod, &mut m) && m.iter().all(|&v| v != usize::MAX) {
            out.push(m);
        }
        return;
    }
    let g = gens[k];
    let candidates: Vec<usize> = if map[g] != usize::MAX {
        vec![map[g]]
    } else {
        (0..cod.size()).collect()
    };
    for v in candidates {
        let mut m = map.clone();
        m[g] = v;
        if propagate(dom, cod, &mut m) {
            hom_search(dom, cod, gens, k + 1, &mut m, out);
        }
    }
}

/// An isomorphism `dom → cod` if one exists.
pub fn monoid_isomorphism(dom: &MonoidTable, cod: &MonoidTable) -> Option<Vec<usize>> {
    if dom.size() != cod.size() || dom.zero().is_some() != cod.zero().is_some() {
        return None;
    }
    monoid_homs(dom, cod).into_iter().find(|m| {
        let mut hit = vec![false; cod.size()];
        m.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
    })
}

/// Every morphism of commutative monoid objects `a → b`: componentwise
/// homomorphisms that commute with the restriction maps.
pub fn monoid_morphisms(a: &Arc<CommMonoid>, b: &Arc<CommMonoid>) -> Vec<MonoidMorphism> {
    if a.base() != b.base() {
        return Vec::new();
    }
    let ny = a.tables().len();
    let per: Vec<Vec<Vec<usize>>> = (0..ny)
        .map(|y| monoid_homs(a.table(y), b.table(y)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0; ny];
    if per.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let comps: Vec<Vec<usize>> = (0..ny).map(|y| per[y][choice[y]].clone()).collect();
        let m = MonoidMorphism::new(a.clone(), b.clone(), comps).expect("shapes match");
        if ny == 1 || m.as_carrier_map().is_natural() {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == ny {
                return out;
            }
            choice[k] += 1;
            if choice[k] < per[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_known_sequence() {
        // Commutative monoids of order 1..4 up to isomorphism: 1, 2, 5, 19.
        let counts: Vec<usize> = (1..=4).map(|n| comm_monoids_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }

    #[test]
    fn enumerated_tables_are_commutative_monoids() {
        for t in comm_monoids_up_to(4) {
            assert!(t.check_laws(true).passed(), "{t:?}");
        }
    }

    #[test]
    fn hom_counts_against_brute_force() {
        let tables = comm_monoids_up_to(3);
        for a in &tables {
            for b in &tables {
                let brute = (0..b.size().pow(a.size() as u32))
                    .filter(|&code| {
                        let map: Vec<usize> = (0..a.size())
                            .map(|i| code / b.size().pow(i as u32) % b.size())
                            .collect();
                        map[a.unit()] == b.unit()
                            && (0..a.size()).all(|x| {
                                (0..a.size()).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y]))
                            })
                    })
                    .count();
                assert_eq!(monoid_homs(a, b).len(), brute);
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let z2z = MonoidTable::cyclic(2).with_zero();
        let found = comm_monoids_of_order(3)
            .into_iter()
            .filter(|t| {
                monoid_isomorphism(
                    &t.with_absorbing(t.find_absorbing().unwrap_or(0))
                        .unwrap_or(t.clone()),
                    &z2z,
                )
                .is_some()
            })
            .count();
        assert_eq!(found, 1);
    }

    #[test]
    fn cmon0_examples_present() {
        let small = cmon0_up_to(3);
        assert!(small
            .iter()
            .any(|t| monoid_isomorphism(t, &MonoidTable::boolean()).is_some()));
        assert!(small
            .iter()
            .any(|t| monoid_isomorphism(t, &MonoidTable::saturating(2)).is_some()));
    }

    #[test]
    fn relabelled_tables_are_found_isomorphic() {
        for t in comm_monoids_of_order(3) {
            let perm = vec![2, 0, 1];
            let p = t.permuted(&perm, FinSet::new(["x", "y", "z"]).unwrap());
            assert!(p.check_laws(false).passed());
            let iso = monoid_isomorphism(&t, &p).expect("relabelling is an isomorphism");
            assert!((0..3).all(|a| (0..3).all(|b| iso[t.mul(a, b)] == p.mul(iso[a], iso[b]))));
        }
    }
}
