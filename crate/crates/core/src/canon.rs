//! Canonical forms of finite relational-algebraic structures.
//!
//! The canonical key is the lexicographically least serialization over all
//! leaves of an individualisation-refinement search tree. Refinement and
//! branching only look at cell positions, never at element labels, so the
//! set of leaves is invariant under relabelling and the minimum is a
//! complete isomorphism invariant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteIpoAlgebra;

/// A finite structure with binary relations, binary operations, unary
/// operations and constants, all on `0..n`.
#[derive(Clone, Debug, Default)]
pub struct Structure {
    pub n: usize,
    pub relations: Vec<Vec<bool>>,
    pub binops: Vec<Vec<usize>>,
    pub unops: Vec<Vec<usize>>,
    pub constants: Vec<usize>,
}

impl Structure {
    pub fn new(n: usize) -> Self {
        Structure {
            n,
            ..Default::default()
        }
    }

    pub fn relation(mut self, r: Vec<bool>) -> Self {
        debug_assert_eq!(r.len(), self.n * self.n);
        self.relations.push(r);
        self
    }

    pub fn binop(mut self, op: Vec<usize>) -> Self {
        debug_assert_eq!(op.len(), self.n * self.n);
        self.binops.push(op);
        self
    }

    pub fn unop(mut self, op: Vec<usize>) -> Self {
        debug_assert_eq!(op.len(), self.n);
        self.unops.push(op);
        self
    }

    pub fn constant(mut self, c: usize) -> Self {
        self.constants.push(c);
        self
    }

    /// Whether swapping `u` and `v` preserves every table.
    fn transposition_is_automorphism(&self, u: usize, v: usize) -> bool {
        let n = self.n;
        let s = |x: usize| {
            if x == u {
                v
            } else if x == v {
                u
            } else {
                x
            }
        };
        for r in &self.relations {
            for x in [u, v] {
                for y in 0..n {
                    if r[x * n + y] != r[s(x) * n + s(y)] || r[y * n + x] != r[s(y) * n + s(x)] {
                        return false;
                    }
                }
            }
        }
        for op in &self.binops {
            for x in [u, v] {
                for y in 0..n {
                    if s(op[x * n + y]) != op[s(x) * n + s(y)] || s(op[y * n + x]) != op[s(y) * n + s(x)] {
                        return false;
                    }
                }
            }
            // products not involving u or v must not produce them unevenly
            for x in 0..n {
                for y in 0..n {
                    let z = op[x * n + y];
                    if (z == u || z == v) && s(z) != op[s(x) * n + s(y)] {
                        return false;
                    }
                }
            }
        }
        for op in &self.unops {
            for x in 0..n {
                if s(op[x]) != op[s(x)] {
                    return false;
                }
            }
        }
        self.constants.iter().all(|&c| s(c) == c)
    }

    /// Serialization of the structure relabelled by `pos` (element `x`
    /// goes to position `pos[x]`).
    fn serialize(&self, pos: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut inv = vec![0; n];
        for (x, &p) in pos.iter().enumerate() {
            inv[p] = x;
        }
        let mut out = Vec::with_capacity(2 + n * n * (self.binops.len() + 1));
        out.extend_from_slice(&(n as u16).to_be_bytes());
        for r in &self.relations {
            let mut byte = 0u8;
            let mut bits = 0;
            for i in 0..n {
                for j in 0..n {
                    byte = (byte << 1) | r[inv[i] * n + inv[j]] as u8;
                    bits += 1;
                    if bits == 8 {
                        out.push(byte);
                        byte = 0;
                        bits = 0;
                    }
                }
            }
            if bits > 0 {
                out.push(byte << (8 - bits));
            }
        }
        for op in &self.binops {
            for i in 0..n {
                for j in 0..n {
                    out.push(pos[op[inv[i] * n + inv[j]]] as u8);
                }
            }
        }
        for op in &self.unops {
            for i in 0..n {
                out.push(pos[op[inv[i]]] as u8);
            }
        }
        for &c in &self.constants {
            out.push(pos[c] as u8);
        }
        out
    }
}

impl From<&FiniteIpoAlgebra> for Structure {
    fn from(a: &FiniteIpoAlgebra) -> Self {
        Structure::new(a.n())
            .relation(a.leq_flat().to_vec())
            .binop(a.mul_flat().to_vec())
            .unop(a.tilde_table().to_vec())
            .unop(a.minus_table().to_vec())
    }
}

/// Byte string identifying an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u8>);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Canonical key together with a labelling achieving it: element `x` of
/// the input sits at position `labelling[x]` of the canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub labelling: Vec<usize>,
}

struct Search<'a> {
    s: &'a Structure,
    /// For each binop, for each element z, the pairs (x, y) with x·y = z.
    preimages: Vec<Vec<Vec<(usize, usize)>>>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(s: &'a Structure) -> Self {
        let n = s.n;
        let preimages = s
            .binops
            .iter()
            .map(|op| {
                let mut pre = vec![Vec::new(); n];
                for x in 0..n {
                    for y in 0..n {
                        pre[op[x * n + y]].push((x, y));
                    }
                }
                pre
            })
            .collect();
        Search {
            s,
            preimages,
            best: None,
        }
    }

    fn signature(&self, cell: &[usize], x: usize) -> Vec<u64> {
        let s = self.s;
        let n = s.n;
        let mut sig = Vec::new();
        for op in &s.unops {
            sig.push(cell[op[x]] as u64);
        }
        for &c in &s.constants {
            sig.push((c == x) as u64);
        }
        let mut row: Vec<u64> = Vec::with_capacity(n);
        for y in 0..n {
            let mut v = cell[y] as u64;
            for r in &s.relations {
                v = (v << 2) | ((r[x * n + y] as u64) << 1) | r[y * n + x] as u64;
            }
            for op in &s.binops {
                v = (v << 16) | ((cell[op[x * n + y]] as u64) << 8) | cell[op[y * n + x]] as u64;
            }
            row.push(v);
        }
        row.sort_unstable();
        sig.extend(row);
        for pre in &self.preimages {
            let mut p: Vec<u64> = pre[x]
                .iter()
                .map(|&(a, b)| ((cell[a] as u64) << 8) | cell[b] as u64)
                .collect();
            p.sort_unstable();
            sig.push(u64::MAX);
            sig.extend(p);
        }
        sig
    }

    /// Refines `cell` (cell id = index of the cell's first position) to an
    /// equitable partition.
    fn refine(&self, cell: &mut [usize]) {
        let n = self.s.n;
        let mut count = distinct(cell);
        loop {
            let sigs: Vec<(usize, Vec<u64>)> =
                (0..n).map(|x| (cell[x], self.signature(cell, x))).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut start = 0;
            for (i, &x) in order.iter().enumerate() {
                if i > 0 && sigs[order[i - 1]] != sigs[x] {
                    start = i;
                }
                cell[x] = start;
            }
            let c = distinct(cell);
            if c == count {
                return;
            }
            count = c;
        }
    }

    fn run(&mut self, mut cell: Vec<usize>) {
        self.refine(&mut cell);
        let n = self.s.n;
        // first non-singleton cell, by position
        let mut sizes = vec![0usize; n];
        for &c in &cell {
            sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            let ser = self.s.serialize(&cell);
            if self.best.as_ref().is_none_or(|(b, _)| ser < *b) {
                self.best = Some((ser, cell));
            }
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&x| cell[x] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if explored
                .iter()
                .any(|&u| self.s.transposition_is_automorphism(u, v))
            {
                continue;
            }
            explored.push(v);
            let mut next = cell.clone();
            for &x in &members {
                if x != v {
                    next[x] = target + 1;
                }
            }
            self.run(next);
        }
    }
}

fn distinct(cell: &[usize]) -> usize {
    let mut seen = vec![false; cell.len()];
    let mut c = 0;
    for &x in cell {
        if !seen[x] {
            seen[x] = true;
            c += 1;
        }
    }
    c
}

pub fn canonical_form_of(s: &Structure) -> CanonicalForm {
    let mut search = Search::new(s);
    search.run(vec![0; s.n]);
    let (key, labelling) = search.best.expect("at least one leaf");
    CanonicalForm {
        key: CanonicalKey(key),
        labelling,
    }
}

pub fn canonical_form(alg: &FiniteIpoAlgebra) -> CanonicalForm {
    canonical_form_of(&Structure::from(alg))
}

/// Equal for two algebras exactly when some carrier permutation carries
/// `≤`, `·`, `∼` and `−` of one onto the other.
pub fn canonical_key(alg: &FiniteIpoAlgebra) -> CanonicalKey {
    canonical_form(alg).key
}

/// The algebra relabelled into canonical position.
pub fn canonical_algebra(alg: &FiniteIpoAlgebra) -> FiniteIpoAlgebra {
    alg.permuted(&canonical_form(alg).labelling)
}

/// An isomorphism `a → b` found through canonical labellings.
pub fn find_isomorphism(a: &FiniteIpoAlgebra, b: &FiniteIpoAlgebra) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    let fa = canonical_form(a);
    let fb = canonical_form(b);
    if fa.key != fb.key {
        return None;
    }
    let mut inv_b = vec![0; b.n()];
    for (x, &p) in fb.labelling.iter().enumerate() {
        inv_b[p] = x;
    }
    Some(fa.labelling.iter().map(|&p| inv_b[p]).collect())
}

/// Reference isomorphism test trying every permutation with early cut-off.
/// Exponential; meant for oracles on small carriers.
pub fn brute_force_isomorphic(a: &FiniteIpoAlgebra, b: &FiniteIpoAlgebra) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let n = a.n();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        a: &FiniteIpoAlgebra,
        b: &FiniteIpoAlgebra,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        k: usize,
    ) -> bool {
        let n = a.n();
        if k == n {
            return (0..n).all(|x| {
                b.tilde(perm[x]) == perm[a.tilde(x)]
                    && b.minus(perm[x]) == perm[a.minus(x)]
                    && (0..n).all(|y| {
                        b.leq(perm[x], perm[y]) == a.leq(x, y)
                            && b.mul(perm[x], perm[y]) == perm[a.mul(x, y)]
                    })
            });
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            perm[k] = t;
            // partial check on the already assigned prefix
            let ok = (0..=k).all(|x| {
                b.leq(perm[x], t) == a.leq(x, k) && b.leq(t, perm[x]) == a.leq(k, x)
            });
            if ok {
                used[t] = true;
                if extend(a, b, perm, used, k + 1) {
                    return true;
                }
                used[t] = false;
            }
        }
        perm[k] = usize::MAX;
        false
    }
    extend(a, b, &mut perm, &mut used, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relabelling_preserves_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for a in fixtures::all_fixtures() {
            let key = canonical_key(&a);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..a.n()).collect();
                perm.shuffle(&mut rng);
                let b = a.permuted(&perm);
                assert_eq!(canonical_key(&b), key);
                let iso = find_isomorphism(&a, &b).unwrap();
                assert_eq!(a.permuted(&iso), b);
            }
        }
    }

    #[test]
    fn distinct_fixtures_have_distinct_keys() {
        let l4 = fixtures::lukasiewicz_chain(4);
        let b4 = fixtures::boolean_square();
        assert_ne!(canonical_key(&l4), canonical_key(&b4));
        assert!(!brute_force_isomorphic(&l4, &b4));
        let keys: std::collections::BTreeSet<_> =
            fixtures::all_fixtures().iter().map(canonical_key).collect();
        assert_eq!(keys.len(), fixtures::all_fixtures().len());
    }

    #[test]
    fn canonical_algebra_is_a_fixed_point() {
        for a in fixtures::all_fixtures() {
            let c = canonical_algebra(&a);
            assert_eq!(canonical_algebra(&c), c);
        }
    }

    #[test]
    fn symmetric_structure_is_fast() {
        // 16 incomparable elements with constant product: every transposition
        // is an automorphism.
        let n = 16;
        let leq = (0..n * n).map(|k| k / n == k % n).collect();
        let s = Structure::new(n).relation(leq).binop(vec![0; n * n]);
        let f = canonical_form_of(&s);
        assert_eq!(f.labelling.len(), n);
    }
}
