//! Candidate maps `φ_pq` between integral components.

use crate::decompose::IntegralComponent;

/// Monoid homomorphisms `a → b` that are monotone, balanced
/// (`∼φ(−x) = −φ(∼x)`) and avoid zeros (`φ(0_a) ≠ 0_b`), in lexicographic
/// order of their tables.
pub fn glue_candidates(a: &IntegralComponent, b: &IntegralComponent) -> Vec<Vec<usize>> {
    let (aa, bb) = (a.algebra(), b.algebra());
    let m = aa.n();
    let mut out = Vec::new();
    let mut phi = vec![usize::MAX; m];
    let consistent = |phi: &[usize], x: usize| -> bool {
        let fx = phi[x];
        if x == a.zero() && fx == b.zero() {
            return false;
        }
        for y in 0..m {
            let fy = phi[y];
            if fy == usize::MAX {
                continue;
            }
            if aa.leq(x, y) && !bb.leq(fx, fy) || aa.leq(y, x) && !bb.leq(fy, fx) {
                return false;
            }
            for (u, v) in [(x, y), (y, x)] {
                let w = phi[aa.mul(u, v)];
                if w != usize::MAX && w != bb.mul(phi[u], phi[v]) {
                    return false;
                }
            }
        }
        // balance for every element whose two negations are both assigned
        for y in 0..m {
            let (fm, ft) = (phi[aa.minus(y)], phi[aa.tilde(y)]);
            if fm != usize::MAX && ft != usize::MAX && bb.tilde(fm) != bb.minus(ft) {
                return false;
            }
        }
        true
    };
    fn rec(
        x: usize,
        m: usize,
        target: usize,
        phi: &mut Vec<usize>,
        fixed: usize,
        consistent: &dyn Fn(&[usize], usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if x == m {
            out.push(phi.clone());
            return;
        }
        if x == fixed {
            rec(x + 1, m, target, phi, fixed, consistent, out);
            return;
        }
        for v in 0..target {
            phi[x] = v;
            if consistent(phi, x) {
                rec(x + 1, m, target, phi, fixed, consistent, out);
            }
        }
        phi[x] = usize::MAX;
    }
    phi[a.one()] = b.one();
    if !consistent(&phi, a.one()) {
        return out;
    }
    rec(0, m, bb.n(), &mut phi, a.one(), &consistent, &mut out);
    out
}
