//! Finite join-semilattices up to isomorphism, as join tables.

use std::collections::BTreeMap;

use crate::canon::{canonical_form_of, Structure};

/// A join table on `0..d`, row-major.
pub type JoinTable = Vec<usize>;

/// Join-semilattices with `d ≥ 1` elements, canonical labelling, ascending
/// by canonical key.
///
/// Removing a minimal element leaves a join-semilattice, so all of them are
/// obtained by adding a new minimal element `m` below an up-set `U` such
/// that every `↑s ∩ U` has a least element (which becomes `m ∨ s`).
pub fn semilattices(d: usize) -> Vec<JoinTable> {
    assert!(d >= 1);
    if d == 1 {
        return vec![vec![0]];
    }
    let k = d - 1;
    let mut out: BTreeMap<Vec<u8>, JoinTable> = BTreeMap::new();
    for small in semilattices(k) {
        let leq = |x: usize, y: usize| small[x * k + y] == y;
        for u in 1u32..(1 << k) {
            let in_u = |x: usize| u >> x & 1 == 1;
            let upward = (0..k).all(|x| !in_u(x) || (0..k).all(|y| !leq(x, y) || in_u(y)));
            if !upward {
                continue;
            }
            let mut joins = vec![0; k];
            let mut ok = true;
            for (s, slot) in joins.iter_mut().enumerate() {
                let cands: Vec<usize> = (0..k).filter(|&y| in_u(y) && leq(s, y)).collect();
                match cands.iter().find(|&&c| cands.iter().all(|&o| leq(c, o))) {
                    Some(&c) => *slot = c,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let m = k;
            let mut join = vec![0; d * d];
            for x in 0..k {
                for y in 0..k {
                    join[x * d + y] = small[x * k + y];
                }
                join[x * d + m] = joins[x];
                join[m * d + x] = joins[x];
            }
            join[m * d + m] = m;
            let form = canonical_form_of(&Structure::new(d).binop(join.clone()));
            out.entry(form.key.0).or_insert_with(|| {
                let pos = &form.labelling;
                let mut t = vec![0; d * d];
                for x in 0..d {
                    for y in 0..d {
                        t[pos[x] * d + pos[y]] = pos[join[x * d + y]];
                    }
                }
                t
            });
        }
    }
    out.into_values().collect()
}

/// `p < q` with nothing strictly between, ascending.
pub fn covers(d: usize, join: &[usize]) -> Vec<(usize, usize)> {
    let lt = |x: usize, y: usize| x != y && join[x * d + y] == y;
    let mut out = Vec::new();
    for p in 0..d {
        for q in 0..d {
            if lt(p, q) && !(0..d).any(|r| lt(p, r) && lt(r, q)) {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn minimal_nodes(d: usize, join: &[usize]) -> Vec<usize> {
    (0..d)
        .filter(|&p| !(0..d).any(|q| q != p && join[q * d + p] == p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Unlabelled join-semilattices on d elements equal unlabelled lattices
    // on d + 1 elements (OEIS A006966 shifted): 1, 1, 1, 2, 5, 15, 53.
    #[test]
    fn semilattice_counts() {
        let counts: Vec<usize> = (1..=7).map(|d| semilattices(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 53, 222]);
    }

    #[test]
    fn diamond_covers() {
        let join = crate::fixtures::diamond_join();
        assert_eq!(covers(4, &join), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(minimal_nodes(4, &join), vec![0]);
    }
}
