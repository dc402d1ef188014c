//! Small named structures used throughout the tests and the CLI examples.

use crate::algebra::FiniteIpoAlgebra;
use crate::decompose::{DirectedSystem, IntegralComponent};
use crate::duality::DualSystem;


pub const NC_BOT: usize = 0;
pub const NC_A: usize = 1;
pub const NC_B: usize = 2;
pub const NC_C: usize = 3;
pub const NC_TOP: usize = 4;

pub const TL_BOT: usize = 0;
pub const TL_P: usize = 1;
pub const TL_Q: usize = 2;
pub const TL_TOP: usize = 3;

fn chain_leq(n: usize) -> Vec<bool> {
    (0..n * n).map(|k| k / n <= k % n).collect()
}

/// Five elements `⊥ < a, b, c < ⊤`, every product `⊥`, `∼` cycling
/// `a → b → c → a` and `−` its inverse, both swapping `⊤` and `⊥`.
pub fn commutative_noncyclic() -> FiniteIpoAlgebra {
    let n = 5;
    let mut leq = vec![false; n * n];
    for x in 0..n {
        leq[x * n + x] = true;
        leq[NC_BOT * n + x] = true;
        leq[x * n + NC_TOP] = true;
    }
    let tilde = vec![NC_TOP, NC_B, NC_C, NC_A, NC_BOT];
    let minus = vec![NC_TOP, NC_C, NC_A, NC_B, NC_BOT];
    FiniteIpoAlgebra::from_flat(n, leq, vec![NC_BOT; n * n], tilde, minus, None)
        .expect("valid tables")
}

/// The diamond `⊥ < p, q < ⊤` with `⊥·x = ⊥`, `p·q = p·⊤ = q·⊤ = ⊤`,
/// idempotent, negations fixing `p, q` and swapping `⊤, ⊥`.
pub fn three_local_identities() -> FiniteIpoAlgebra {
    let n = 4;
    let (b, p, q, t) = (TL_BOT, TL_P, TL_Q, TL_TOP);
    let mut leq = vec![false; n * n];
    for x in 0..n {
        leq[x * n + x] = true;
        leq[b * n + x] = true;
        leq[x * n + t] = true;
    }
    let mut mul = vec![t; n * n];
    for x in 0..n {
        mul[b * n + x] = b;
        mul[x * n + b] = b;
    }
    mul[p * n + p] = p;
    mul[q * n + q] = q;
    let neg = vec![t, p, q, b];
    FiniteIpoAlgebra::from_flat(n, leq, mul, neg.clone(), neg, None).expect("valid tables")
}

/// `{e, a}` with the discrete order, `a·a = e` and identity negations: has
/// local identities but is not square decreasing.
pub fn two_element_group() -> FiniteIpoAlgebra {
    FiniteIpoAlgebra::from_flat(
        2,
        vec![true, false, false, true],
        vec![0, 1, 1, 0],
        vec![0, 1],
        vec![0, 1],
        None,
    )
    .expect("valid tables")
}

/// The powerset Boolean algebra on `k` atoms: elements are bitmasks,
/// product is intersection, both negations are complement.
pub fn boolean_powerset(k: usize) -> FiniteIpoAlgebra {
    let n = 1usize << k;
    let full = n - 1;
    let mut leq = vec![false; n * n];
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = x & !y == 0;
            mul[x * n + y] = x & y;
        }
    }
    let neg: Vec<usize> = (0..n).map(|x| full ^ x).collect();
    FiniteIpoAlgebra::from_flat(n, leq, mul, neg.clone(), neg, Some(full)).expect("valid tables")
}

/// `𝟐`: the two-element Boolean algebra, `0 < 1`.
pub fn two() -> FiniteIpoAlgebra {
    boolean_powerset(1)
}

/// `𝟐²`: the four-element Boolean algebra.
pub fn boolean_square() -> FiniteIpoAlgebra {
    boolean_powerset(2)
}

/// The `m`-element Łukasiewicz chain `0 < 1 < … < m−1` with
/// `x·y = max(0, x + y − (m−1))` and `∼x = −x = m−1−x`.
pub fn lukasiewicz_chain(m: usize) -> FiniteIpoAlgebra {
    assert!(m >= 1);
    let top = m - 1;
    let mut mul = vec![0; m * m];
    for x in 0..m {
        for y in 0..m {
            mul[x * m + y] = (x + y).saturating_sub(top);
        }
    }
    let neg: Vec<usize> = (0..m).map(|x| top - x).collect();
    FiniteIpoAlgebra::from_flat(m, chain_leq(m), mul, neg.clone(), neg, Some(top))
        .expect("valid tables")
}

/// `𝐋₃`: `0 < a < 1` with `a² = 0`.
pub fn l3() -> FiniteIpoAlgebra {
    lukasiewicz_chain(3)
}

pub fn component(alg: FiniteIpoAlgebra) -> IntegralComponent {
    IntegralComponent::from_algebra(alg).expect("fixture is integral")
}

/// Four copies of `𝟐` over the diamond `p < q, r < s`; every non-identity
/// map collapses onto the top. Avoids zeros and is balanced, yet the glued
/// relation is not transitive.
pub fn non_transitive_diamond_system() -> DirectedSystem {
    let (p, q, r, s) = (0, 1, 2, 3);
    let join = diamond_join();
    let comps = vec![component(two()); 4];
    let collapse = vec![1, 1];
    let phi = vec![
        (p, q, collapse.clone()),
        (p, r, collapse.clone()),
        (p, s, collapse.clone()),
        (q, s, collapse.clone()),
        (r, s, collapse),
    ];
    DirectedSystem::with_fresh_carriers(join, comps, phi).expect("valid system")
}

/// Join table of the four-element diamond `0 < 1, 2 < 3`.
pub fn diamond_join() -> Vec<usize> {
    vec![
        0, 1, 2, 3, //
        1, 1, 3, 3, //
        2, 3, 2, 3, //
        3, 3, 3, 3,
    ]
}

/// `𝟐` below the four-element Boolean algebra, with `1 ↦ 1` and
/// `0 ↦ a` for an atom `a`.
pub fn two_into_boolean_square_system() -> DirectedSystem {
    let join = vec![0, 1, 1, 1];
    let comps = vec![component(two()), component(boolean_square())];
    // local indices in 𝟐²: 0 = ∅, 1 = {a}, 2 = {b}, 3 = full
    let phi = vec![(0, 1, vec![1, 3])];
    DirectedSystem::with_fresh_carriers(join, comps, phi).expect("valid system")
}

/// The eight-element ipo-semilattice that is not lattice-ordered: two
/// copies of `𝟐` glued into `𝟐²`, each sending its bottom to a different
/// atom.
pub fn non_lattice_system() -> DirectedSystem {
    let join = vec![
        0, 2, 2, //
        2, 1, 2, //
        2, 2, 2,
    ];
    let comps = vec![component(two()), component(two()), component(boolean_square())];
    let phi = vec![(0, 2, vec![1, 3]), (1, 2, vec![2, 3])];
    DirectedSystem::with_fresh_carriers(join, comps, phi).expect("valid system")
}

/// Every named algebra in this module that is an ipo-semigroup.
pub fn all_ipo_fixtures() -> Vec<FiniteIpoAlgebra> {
    vec![
        FiniteIpoAlgebra::trivial(),
        commutative_noncyclic(),
        three_local_identities(),
        two_element_group(),
        two(),
        l3(),
        boolean_square(),
        lukasiewicz_chain(4),
        lukasiewicz_chain(5),
        boolean_powerset(3),
    ]
}

/// [`all_ipo_fixtures`] plus deliberately broken variants.
pub fn all_fixtures() -> Vec<FiniteIpoAlgebra> {
    let mut v = all_ipo_fixtures();
    let f1 = commutative_noncyclic();
    let id: Vec<usize> = (0..f1.n()).collect();
    v.push(
        FiniteIpoAlgebra::from_flat(
            f1.n(),
            f1.leq_flat().to_vec(),
            f1.mul_flat().to_vec(),
            id.clone(),
            id,
            None,
        )
        .unwrap(),
    );
    let f2 = three_local_identities();
    let mut mul = f2.mul_flat().to_vec();
    mul[TL_P * 4 + TL_Q] = TL_P;
    v.push(
        FiniteIpoAlgebra::from_flat(
            4,
            f2.leq_flat().to_vec(),
            mul,
            f2.tilde_table().to_vec(),
            f2.minus_table().to_vec(),
            None,
        )
        .unwrap(),
    );
    v
}

/// A trivial node below `𝟐`: the three-element chain `0 < e < 1` whose
/// middle element is a global identity that nobody declared.
pub fn trivial_bottom_system() -> DirectedSystem {
    let comps = vec![component(FiniteIpoAlgebra::trivial()), component(two())];
    DirectedSystem::with_fresh_carriers(vec![0, 1, 1, 1], comps, vec![(0, 1, vec![1])])
        .expect("valid system")
}

pub fn trivial_bottom_semilattice() -> FiniteIpoAlgebra {
    crate::glue::glue(&trivial_bottom_system()).algebra
}

/// Dual of a 13-element ipo-semilattice without global identity: an empty
/// node below one of two middle nodes, everything joining into a two-atom
/// top node.
pub fn dual_semilattice_13() -> DualSystem {
    let join = vec![
        0, 1, 3, 3, //
        1, 1, 3, 3, //
        3, 3, 2, 3, //
        3, 3, 3, 3,
    ];
    let atoms = vec![0, 2, 2, 2];
    let pmaps = vec![
        (0, 1, vec![None, None]),
        (1, 3, vec![Some(0), None]),
        (2, 3, vec![None, Some(0)]),
        (0, 3, vec![None, None]),
    ];
    DualSystem::new(join, atoms, pmaps).expect("valid dual")
}

/// Dual of a 14-element ipo-monoid: like [`dual_semilattice_13`] but the bottom
/// node has one atom and sits below both middle nodes.
pub fn dual_monoid_14() -> DualSystem {
    let join = vec![
        0, 1, 2, 3, //
        1, 1, 3, 3, //
        2, 3, 2, 3, //
        3, 3, 3, 3,
    ];
    let atoms = vec![1, 2, 2, 2];
    let pmaps = vec![
        (0, 1, vec![None, None]),
        (0, 2, vec![Some(0), None]),
        (1, 3, vec![Some(0), None]),
        (2, 3, vec![None, Some(1)]),
        (0, 3, vec![None, None]),
    ];
    DualSystem::new(join, atoms, pmaps).expect("valid dual")
}

