//! Locally integral algebras assembled as glueings: a semilattice, one
//! integral component per node and a family of cover maps.

use std::collections::BTreeMap;

use super::homs::glue_candidates;
use super::semilattice::{covers, minimal_nodes, JoinTable};
use crate::algebra::FiniteIpoAlgebra;
use crate::canon::{canonical_key, CanonicalKey};
use crate::decompose::{DirectedSystem, IntegralComponent, PhiEntry};
use crate::glue::glue;

/// One independent slice of the search: a semilattice and the size of each
/// node's component.
#[derive(Clone, Debug)]
pub struct Unit {
    pub join: JoinTable,
    pub sizes: Vec<usize>,
}

/// All `(D, sizes)` with `Σ sizes = n`, trivial components only at
/// minimal nodes, and sizes drawn from `allowed`.
pub fn units(n: usize, semilattices: &[(usize, Vec<JoinTable>)], allowed: &[usize], need_minimum: bool) -> Vec<Unit> {
    let mut out = Vec::new();
    for (d, tables) in semilattices {
        let d = *d;
        for join in tables {
            let minimal = minimal_nodes(d, join);
            if need_minimum && minimal.len() != 1 {
                continue;
            }
            let mut sizes = vec![0; d];
            fn rec(
                p: usize,
                left: usize,
                sizes: &mut Vec<usize>,
                minimal: &[usize],
                allowed: &[usize],
                join: &JoinTable,
                out: &mut Vec<Unit>,
            ) {
                let d = sizes.len();
                if p == d {
                    if left == 0 {
                        out.push(Unit {
                            join: join.clone(),
                            sizes: sizes.clone(),
                        });
                    }
                    return;
                }
                for &m in allowed {
                    if m > left || (m == 1 && !minimal.contains(&p)) {
                        continue;
                    }
                    sizes[p] = m;
                    rec(p + 1, left - m, sizes, minimal, allowed, join, out);
                }
            }
            rec(0, n, &mut sizes, &minimal, allowed, join, &mut out);
        }
    }
    out
}

/// Glues every compatible, defect-free system over `unit` and keeps the
/// results accepted by `keep`, keyed canonically.
pub fn solve_unit(
    unit: &Unit,
    components_by_size: &dyn Fn(usize) -> Vec<IntegralComponent>,
    keep: &dyn Fn(&FiniteIpoAlgebra) -> bool,
) -> BTreeMap<CanonicalKey, FiniteIpoAlgebra> {
    let d = unit.sizes.len();
    let options: Vec<Vec<IntegralComponent>> = unit.sizes.iter().map(|&m| components_by_size(m)).collect();
    let cover_list = covers(d, &unit.join);
    let mut out = BTreeMap::new();
    let mut choice = vec![0; d];
    loop {
        let comps: Vec<IntegralComponent> = (0..d).map(|p| options[p][choice[p]].clone()).collect();
        let candidates: Vec<Vec<Vec<usize>>> = cover_list
            .iter()
            .map(|&(p, q)| glue_candidates(&comps[p], &comps[q]))
            .collect();
        if candidates.iter().all(|c| !c.is_empty()) {
            let mut pick = vec![0; cover_list.len()];
            loop {
                if let Some(phi) = close_family(d, &unit.join, &comps, &cover_list, &candidates, &pick) {
                    if let Ok(sys) = DirectedSystem::with_fresh_carriers(unit.join.clone(), comps.clone(), phi) {
                        let g = glue(&sys);
                        if g.is_defect_free() && keep(&g.algebra) {
                            let key = canonical_key(&g.algebra);
                            out.entry(key).or_insert(g.algebra);
                        }
                    }
                }
                if !advance(&mut pick, &candidates.iter().map(Vec::len).collect::<Vec<_>>()) {
                    break;
                }
            }
        }
        if !advance(&mut choice, &options.iter().map(Vec::len).collect::<Vec<_>>()) {
            break;
        }
    }
    out
}

/// Odometer increment; `false` once every combination has been visited.
fn advance(counter: &mut [usize], limits: &[usize]) -> bool {
    for i in (0..counter.len()).rev() {
        counter[i] += 1;
        if counter[i] < limits[i] {
            return true;
        }
        counter[i] = 0;
    }
    false
}

/// Extends the chosen cover maps to all pairs `p < q` by composition,
/// returning `None` if two chains disagree.
fn close_family(
    d: usize,
    join: &[usize],
    comps: &[IntegralComponent],
    cover_list: &[(usize, usize)],
    candidates: &[Vec<Vec<usize>>],
    pick: &[usize],
) -> Option<Vec<PhiEntry>> {
    let mut phi: Vec<Option<Vec<usize>>> = vec![None; d * d];
    for p in 0..d {
        phi[p * d + p] = Some((0..comps[p].size()).collect());
    }
    for (i, &(p, q)) in cover_list.iter().enumerate() {
        phi[p * d + q] = Some(candidates[i][pick[i]].clone());
    }
    let leq = |p: usize, q: usize| join[p * d + q] == q;
    // heights give an order in which every pair is reachable through covers
    let mut changed = true;
    while changed {
        changed = false;
        for &(p, q) in cover_list {
            let first = phi[p * d + q].clone().expect("cover map");
            for r in 0..d {
                if r == q || !leq(q, r) {
                    continue;
                }
                let Some(qr) = phi[q * d + r].clone() else { continue };
                let comp: Vec<usize> = first.iter().map(|&x| qr[x]).collect();
                match &phi[p * d + r] {
                    Some(existing) if *existing != comp => return None,
                    Some(_) => {}
                    None => {
                        phi[p * d + r] = Some(comp);
                        changed = true;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for p in 0..d {
        for q in 0..d {
            if p != q && leq(p, q) {
                out.push((p, q, phi[p * d + q].clone()?));
            }
        }
    }
    Some(out)
}
