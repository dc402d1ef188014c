//! Helpers shared by the integration tests: independent enumerations of
//! monoid homomorphisms and directed systems, and small generators.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ipo_core::canon::{canonical_key, CanonicalKey};
use ipo_core::decompose::PhiEntry;
use ipo_core::enumerate::direct::{search, Shape};
use ipo_core::enumerate::integral_components;
use ipo_core::enumerate::posets::involutive_posets;
use ipo_core::enumerate::semilattice::{covers, semilattices};
use ipo_core::{enumerate, Class, DirectedSystem, EnumerateOptions, FiniteIpoAlgebra, IntegralComponent};
use rand::Rng;

pub fn representatives(class: Class, n: usize) -> Vec<FiniteIpoAlgebra> {
    let opts = EnumerateOptions {
        retain: true,
        ..EnumerateOptions::default()
    };
    enumerate(class, n, opts).expect("within budget").representatives.expect("retained")
}

/// Every idempotent ipo-semigroup of size `n` up to isomorphism, found by
/// a direct search that imposes idempotence and nothing else.
pub fn idempotent_ipo_semigroups(n: usize) -> Vec<FiniteIpoAlgebra> {
    let shape = Shape {
        idempotent: true,
        ..Shape::default()
    };
    let mut found: BTreeMap<CanonicalKey, FiniteIpoAlgebra> = BTreeMap::new();
    for p in involutive_posets(n, false) {
        search(&p, shape, &mut |alg| {
            if alg.check_ipo_semigroup().is_ok() && alg.check_idempotent().is_ok() {
                found.entry(canonical_key(&alg)).or_insert(alg);
            }
        });
    }
    found.into_values().collect()
}

/// All maps `a → b` preserving the product and the identity, by brute
/// force over every function.
pub fn monoid_homs(a: &IntegralComponent, b: &IntegralComponent) -> Vec<Vec<usize>> {
    let (aa, bb) = (a.algebra(), b.algebra());
    let (m, k) = (aa.n(), bb.n());
    let mut out = Vec::new();
    let mut f = vec![0; m];
    loop {
        let ok = f[a.one()] == b.one()
            && (0..m).all(|x| (0..m).all(|y| f[aa.mul(x, y)] == bb.mul(f[x], f[y])));
        if ok {
            out.push(f.clone());
        }
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Extends cover maps to every pair `p < q` by composition; `None` when
/// two paths disagree.
pub fn close(d: usize, join: &[usize], sizes: &[usize], cover_maps: &[((usize, usize), Vec<usize>)]) -> Option<Vec<PhiEntry>> {
    let leq = |p: usize, q: usize| join[p * d + q] == q;
    let mut phi: Vec<Option<Vec<usize>>> = vec![None; d * d];
    for p in 0..d {
        phi[p * d + p] = Some((0..sizes[p]).collect());
    }
    for ((p, q), f) in cover_maps {
        phi[p * d + q] = Some(f.clone());
    }
    // longest chains have at most d nodes, so d rounds reach a fixpoint
    for _ in 0..d {
        for ((p, q), f) in cover_maps {
            for r in 0..d {
                if r == *q || !leq(*q, r) {
                    continue;
                }
                let Some(qr) = phi[q * d + r].clone() else { continue };
                let composed: Vec<usize> = f.iter().map(|&x| qr[x]).collect();
                match &phi[p * d + r] {
                    Some(existing) if *existing != composed => return None,
                    Some(_) => {}
                    None => phi[p * d + r] = Some(composed),
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

/// Every compatible directed system over semilattices with at most
/// `max_d` nodes and integral components of size at most `max_m`.
pub fn for_each_system(max_d: usize, max_m: usize, visit: &mut dyn FnMut(DirectedSystem)) {
    let comps: Vec<IntegralComponent> = (1..=max_m).flat_map(|m| integral_components(m, false)).collect();
    let homs: Vec<Vec<Vec<Vec<usize>>>> =
        comps.iter().map(|a| comps.iter().map(|b| monoid_homs(a, b)).collect()).collect();
    for d in 1..=max_d {
        for join in semilattices(d) {
            let cs = covers(d, &join);
            let mut choice = vec![0; d];
            loop {
                let lists: Vec<&Vec<Vec<usize>>> = cs.iter().map(|&(p, q)| &homs[choice[p]][choice[q]]).collect();
                if lists.iter().all(|l| !l.is_empty()) {
                    let mut pick = vec![0; cs.len()];
                    loop {
                        let maps: Vec<((usize, usize), Vec<usize>)> =
                            cs.iter().zip(&pick).zip(&lists).map(|((&pq, &i), l)| (pq, l[i].clone())).collect();
                        let sizes: Vec<usize> = choice.iter().map(|&c| comps[c].size()).collect();
                        if let Some(phi) = close(d, &join, &sizes, &maps) {
                            let parts = choice.iter().map(|&c| comps[c].clone()).collect();
                            if let Ok(sys) = DirectedSystem::with_fresh_carriers(join.clone(), parts, phi) {
                                visit(sys);
                            }
                        }
                        if !odometer(&mut pick, &lists.iter().map(|l| l.len()).collect::<Vec<_>>()) {
                            break;
                        }
                    }
                }
                if !odometer(&mut choice, &vec![comps.len(); d]) {
                    break;
                }
            }
        }
    }
}

fn odometer(counter: &mut [usize], limits: &[usize]) -> bool {
    for i in (0..counter.len()).rev() {
        counter[i] += 1;
        if counter[i] < limits[i] {
            return true;
        }
        counter[i] = 0;
    }
    false
}

/// A random compatible directed system with at most `max_d` nodes and
/// components of size at most `max_m`. Cover maps are drawn from all monoid
/// homomorphisms, so most results are defective.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, max_d: usize, max_m: usize) -> DirectedSystem {
    let comps: Vec<IntegralComponent> = (1..=max_m).flat_map(|m| integral_components(m, false)).collect();
    loop {
        let d = rng.gen_range(1..=max_d);
        let tables = semilattices(d);
        let join = tables[rng.gen_range(0..tables.len())].clone();
        let parts: Vec<IntegralComponent> = (0..d).map(|_| comps[rng.gen_range(0..comps.len())].clone()).collect();
        let mut maps = Vec::new();
        let mut ok = true;
        for (p, q) in covers(d, &join) {
            let hs = monoid_homs(&parts[p], &parts[q]);
            if hs.is_empty() {
                ok = false;
                break;
            }
            maps.push(((p, q), hs[rng.gen_range(0..hs.len())].clone()));
        }
        if !ok {
            continue;
        }
        let sizes: Vec<usize> = parts.iter().map(IntegralComponent::size).collect();
        let Some(phi) = close(d, &join, &sizes, &maps) else { continue };
        if let Ok(sys) = DirectedSystem::with_fresh_carriers(join, parts, phi) {
            return sys;
        }
    }
}

/// A random relabelling of `0..n`.
pub fn shuffle<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
