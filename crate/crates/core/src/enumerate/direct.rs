//! Backtracking over multiplication tables on a fixed involutive poset.
//!
//! Each cell `x·y` carries a bitmask domain. Propagation enforces rotation
//! in both directions (`xy ≤ z ⟺ y·∼z ≤ ∼x ⟺ −z·x ≤ −y`), monotonicity,
//! associativity between fixed cells and the class-specific restrictions.
//! Leaves are re-checked in full, so propagation only needs to be sound.

use super::posets::InvolutivePoset;
use crate::algebra::FiniteIpoAlgebra;

/// Restrictions on the multiplication beyond the ipo-semigroup axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Shape {
    pub commutative: bool,
    pub idempotent: bool,
    /// `x·x ≤ x`.
    pub square_decreasing: bool,
    /// `x·y ≤ x` and `x·y ≤ y`; the top is the identity.
    pub integral: bool,
    /// Identity element fixed in advance.
    pub unit: Option<usize>,
}

struct Csp<'a> {
    n: usize,
    p: &'a InvolutivePoset,
    down: Vec<u32>,
    up: Vec<u32>,
    comparable: Vec<(usize, usize)>,
    commutative: bool,
}

impl<'a> Csp<'a> {
    fn new(p: &'a InvolutivePoset, commutative: bool) -> Self {
        let n = p.n;
        let mut down = vec![0u32; n];
        let mut up = vec![0u32; n];
        let mut comparable = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if p.leq[x * n + y] {
                    down[y] |= 1 << x;
                    up[x] |= 1 << y;
                    if x != y {
                        comparable.push((x, y));
                    }
                }
            }
        }
        Csp {
            n,
            p,
            down,
            up,
            comparable,
            commutative,
        }
    }

    /// Runs all propagators to a fixpoint; `false` on a wipe-out.
    fn propagate(&self, dom: &mut [u32]) -> bool {
        let n = self.n;
        let (tilde, minus) = (&self.p.tilde, &self.p.minus);
        loop {
            let before: u64 = dom.iter().map(|d| d.count_ones() as u64).sum();

            if self.commutative {
                for x in 0..n {
                    for y in x + 1..n {
                        let m = dom[x * n + y] & dom[y * n + x];
                        dom[x * n + y] = m;
                        dom[y * n + x] = m;
                    }
                }
            }

            // rotation
            for x in 0..n {
                for y in 0..n {
                    let d = dom[x * n + y];
                    if d == 0 {
                        return false;
                    }
                    for z in 0..n {
                        let below = self.down[z];
                        let status = if d & !below == 0 {
                            Some(true)
                        } else if d & below == 0 {
                            Some(false)
                        } else {
                            None
                        };
                        let Some(t) = status else { continue };
                        let c1 = y * n + tilde[z];
                        let b1 = self.down[tilde[x]];
                        dom[c1] &= if t { b1 } else { !b1 };
                        let c2 = minus[z] * n + x;
                        let b2 = self.down[minus[y]];
                        dom[c2] &= if t { b2 } else { !b2 };
                    }
                }
            }

            // monotonicity in each argument
            for &(a, b) in &self.comparable {
                for y in 0..n {
                    for (lo, hi) in [(a * n + y, b * n + y), (y * n + a, y * n + b)] {
                        let (dl, dh) = (dom[lo], dom[hi]);
                        let mut keep_lo = 0;
                        let mut keep_hi = 0;
                        for v in bits(dl) {
                            if self.up[v] & dh != 0 {
                                keep_lo |= 1 << v;
                            }
                        }
                        for v in bits(dh) {
                            if self.down[v] & dl != 0 {
                                keep_hi |= 1 << v;
                            }
                        }
                        dom[lo] = keep_lo;
                        dom[hi] = keep_hi;
                    }
                }
            }

            // associativity between fixed cells
            for x in 0..n {
                for y in 0..n {
                    let dxy = dom[x * n + y];
                    if dxy.count_ones() != 1 {
                        continue;
                    }
                    let v = dxy.trailing_zeros() as usize;
                    for z in 0..n {
                        let dyz = dom[y * n + z];
                        if dyz.count_ones() != 1 {
                            continue;
                        }
                        let u = dyz.trailing_zeros() as usize;
                        let (c1, c2) = (v * n + z, x * n + u);
                        let m = dom[c1] & dom[c2];
                        dom[c1] = m;
                        dom[c2] = m;
                    }
                }
            }

            if dom.contains(&0) {
                return false;
            }
            let after: u64 = dom.iter().map(|d| d.count_ones() as u64).sum();
            if after == before {
                return true;
            }
        }
    }

    fn solve(&self, dom: Vec<u32>, leaf: &mut dyn FnMut(&[u32])) {
        let mut dom = dom;
        if !self.propagate(&mut dom) {
            return;
        }
        let pick = dom
            .iter()
            .enumerate()
            .filter(|(_, d)| d.count_ones() > 1)
            .min_by_key(|(i, d)| (d.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(cell) = pick else {
            leaf(&dom);
            return;
        };
        for v in bits(dom[cell]) {
            let mut next = dom.clone();
            next[cell] = 1 << v;
            self.solve(next, leaf);
        }
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Calls `emit` on every ipo-semigroup with order and negations from `p`
/// whose product satisfies `shape`. Results are not deduplicated.
pub fn search(p: &InvolutivePoset, shape: Shape, emit: &mut dyn FnMut(FiniteIpoAlgebra)) {
    let n = p.n;
    assert!(n <= 32, "bitmask domains hold at most 32 elements");
    let csp = Csp::new(p, shape.commutative);
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut dom = vec![all; n * n];
    let top = (0..n).find(|&t| csp.down[t] == all);
    let unit = if shape.integral {
        match top {
            Some(t) => Some(t),
            None => return,
        }
    } else {
        shape.unit
    };
    if let Some(e) = unit {
        // a global identity satisfies ∼e = −e
        if p.tilde[e] != p.minus[e] {
            return;
        }
        for x in 0..n {
            dom[e * n + x] = 1 << x;
            dom[x * n + e] = 1 << x;
        }
    }
    for x in 0..n {
        if shape.idempotent {
            dom[x * n + x] &= 1 << x;
        }
        if shape.square_decreasing {
            dom[x * n + x] &= csp.down[x];
        }
        if shape.integral {
            for y in 0..n {
                dom[x * n + y] &= csp.down[x] & csp.down[y];
            }
        }
    }
    let mut leaf = |d: &[u32]| {
        let mul: Vec<usize> = d.iter().map(|m| m.trailing_zeros() as usize).collect();
        let alg = FiniteIpoAlgebra::from_flat(
            n,
            p.leq.clone(),
            mul,
            p.tilde.clone(),
            p.minus.clone(),
            None,
        )
        .expect("tables in range");
        if alg.check_associative().is_ok() && alg.check_rotation().is_ok() {
            emit(alg);
        }
    };
    csp.solve(dom, &mut leaf);
}
