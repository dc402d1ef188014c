//! Posets and posets with an order-reversing involution pair, up to
//! isomorphism.

use std::collections::BTreeMap;

use crate::canon::{canonical_form_of, Structure};

/// A partial order on `0..n` as a row-major boolean matrix.
pub type Order = Vec<bool>;

/// Posets on `n` elements up to isomorphism, each in canonical labelling,
/// ascending by canonical key.
///
/// Built by adding a new maximal element above an arbitrary down-set of a
/// smaller poset; every poset arises this way since it has a maximal
/// element.
pub fn posets(n: usize) -> Vec<Order> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out: BTreeMap<Vec<u8>, Order> = BTreeMap::new();
    for small in posets(n - 1) {
        let k = n - 1;
        for ideal in down_sets(k, &small) {
            let mut leq = vec![false; n * n];
            for x in 0..k {
                for y in 0..k {
                    leq[x * n + y] = small[x * k + y];
                }
                leq[x * n + k] = ideal >> x & 1 == 1;
            }
            leq[k * n + k] = true;
            let s = Structure::new(n).relation(leq.clone());
            let form = canonical_form_of(&s);
            out.entry(form.key.0)
                .or_insert_with(|| relabel_order(n, &leq, &form.labelling));
        }
    }
    out.into_values().collect()
}

/// Posets with a least and a greatest element, up to isomorphism.
pub fn bounded_posets(n: usize) -> Vec<Order> {
    if n <= 1 {
        return posets(n);
    }
    let mut out: BTreeMap<Vec<u8>, Order> = BTreeMap::new();
    for inner in posets(n - 2) {
        let k = n - 2;
        // 0 = bottom, 1..=k inner, n-1 = top
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x] = true;
            leq[x * n + n - 1] = true;
        }
        for x in 0..k {
            for y in 0..k {
                leq[(x + 1) * n + y + 1] = inner[x * k + y];
            }
        }
        let form = canonical_form_of(&Structure::new(n).relation(leq.clone()));
        out.entry(form.key.0)
            .or_insert_with(|| relabel_order(n, &leq, &form.labelling));
    }
    out.into_values().collect()
}

fn relabel_order(n: usize, leq: &[bool], pos: &[usize]) -> Order {
    let mut out = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            out[pos[x] * n + pos[y]] = leq[x * n + y];
        }
    }
    out
}

/// All down-closed subsets of a poset on `k ≤ 30` elements, as bitmasks.
pub fn down_sets(k: usize, leq: &[bool]) -> Vec<u32> {
    let mut below = vec![0u32; k];
    for y in 0..k {
        for x in 0..k {
            if leq[x * k + y] {
                below[y] |= 1 << x;
            }
        }
    }
    let mut out = Vec::new();
    fn rec(i: usize, k: usize, set: u32, below: &[u32], out: &mut Vec<u32>) {
        if i == k {
            out.push(set);
            return;
        }
        // exclude i: allowed only if nothing already chosen lies above i
        let excluded_ok = (0..i).all(|y| set >> y & 1 == 0 || below[y] >> i & 1 == 0);
        if excluded_ok {
            rec(i + 1, k, set, below, out);
        }
        // include i: everything below i must be in, or still undecided
        let need = below[i] & ((1u32 << i) - 1);
        if need & !set == 0 {
            rec(i + 1, k, set | 1 << i, below, out);
        }
    }
    rec(0, k, 0, &below, &mut out);
    out
}

/// Every bijection `t` with `x ≤ y ⟺ t(y) ≤ t(x)`.
pub fn anti_automorphisms(n: usize, leq: &[bool]) -> Vec<Vec<usize>> {
    let up: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| leq[x * n + y]).count()).collect();
    let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| leq[y * n + x]).count()).collect();
    let mut out = Vec::new();
    let mut t = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        n: usize,
        leq: &[bool],
        up: &[usize],
        down: &[usize],
        t: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == n {
            out.push(t.clone());
            return;
        }
        for v in 0..n {
            if used[v] || up[i] != down[v] || down[i] != up[v] {
                continue;
            }
            let ok = (0..i).all(|x| {
                leq[x * n + i] == leq[v * n + t[x]] && leq[i * n + x] == leq[t[x] * n + v]
            });
            if ok {
                used[v] = true;
                t[i] = v;
                rec(i + 1, n, leq, up, down, t, used, out);
                used[v] = false;
            }
        }
        t[i] = usize::MAX;
    }
    rec(0, n, leq, &up, &down, &mut t, &mut used, &mut out);
    out
}

/// A poset with an anti-automorphism `∼`; the second negation is `∼⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutivePoset {
    pub n: usize,
    pub leq: Order,
    pub tilde: Vec<usize>,
    pub minus: Vec<usize>,
}

/// Pairs `(P, ∼)` up to isomorphism, drawn from `posets` (already up to
/// isomorphism), ascending by canonical key.
pub fn involutive_posets(n: usize, bounded: bool) -> Vec<InvolutivePoset> {
    let base = if bounded { bounded_posets(n) } else { posets(n) };
    let mut out: BTreeMap<Vec<u8>, InvolutivePoset> = BTreeMap::new();
    for leq in base {
        for tilde in anti_automorphisms(n, &leq) {
            let s = Structure::new(n).relation(leq.clone()).unop(tilde.clone());
            let form = canonical_form_of(&s);
            out.entry(form.key.0).or_insert_with(|| {
                let pos = &form.labelling;
                let leq = relabel_order(n, &leq, pos);
                let mut t = vec![0; n];
                for x in 0..n {
                    t[pos[x]] = pos[tilde[x]];
                }
                let mut minus = vec![0; n];
                for x in 0..n {
                    minus[t[x]] = x;
                }
                InvolutivePoset {
                    n,
                    leq,
                    tilde: t,
                    minus,
                }
            });
        }
    }
    out.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Unlabelled posets: OEIS A000112.
    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn bounded_counts_shift_by_two() {
        assert_eq!(bounded_posets(5).len(), posets(3).len());
        assert_eq!(bounded_posets(1).len(), 1);
        assert_eq!(bounded_posets(2).len(), 1);
    }

    #[test]
    fn chain_has_one_anti_automorphism() {
        let n = 4;
        let leq: Vec<bool> = (0..n * n).map(|k| k / n <= k % n).collect();
        assert_eq!(anti_automorphisms(n, &leq), vec![vec![3, 2, 1, 0]]);
    }

    #[test]
    fn down_sets_of_antichain() {
        let leq = vec![true, false, false, false, true, false, false, false, true];
        assert_eq!(down_sets(3, &leq).len(), 8);
    }

    #[test]
    fn involutive_posets_small() {
        // n = 2: chain with the swap, antichain with identity, antichain with swap.
        assert_eq!(involutive_posets(2, false).len(), 3);
        // n = 3 bounded: only the chain, with the reversal.
        assert_eq!(involutive_posets(3, true).len(), 1);
    }
}
