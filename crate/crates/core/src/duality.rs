//! Duality for finite idempotent locally integral algebras.
//!
//! Every component of such an algebra is a finite Boolean algebra, so it is
//! determined by its set of atoms, and each `φ_pq` is determined by a
//! partial map from the atoms of `A_q` to the atoms of `A_p`. A
//! [`DualSystem`] records exactly this data.

use rand::Rng;

use crate::algebra::FiniteIpoAlgebra;
use crate::canon::{canonical_key, canonical_form_of, CanonicalKey, Structure};
use crate::decompose::{check_semilattice, decompose, DirectedSystem, IntegralComponent, PhiEntry};
use crate::error::DualityError;
use crate::fixtures::boolean_powerset;
use crate::glue::glue;

/// A partial map between atom sets; `None` marks an undefined atom.
pub type PartialMap = Vec<Option<usize>>;

/// A partial map `f_pq: atoms(q) ⇀ atoms(p)` given as `(p, q, images)`.
pub type PmapEntry = (usize, usize, PartialMap);

/// A join-semilattice of nodes, an atom count per node and, for `p ≤ q`, a
/// partial map from the atoms of `q` to the atoms of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSystem {
    d: usize,
    join: Vec<usize>,
    atoms: Vec<usize>,
    /// `pmap[p * d + q]` is present exactly when `p ≤ q`.
    pmap: Vec<Option<PartialMap>>,
}

impl DualSystem {
    /// Validates the semilattice, the map shapes, compatibility
    /// (`f_pr = f_pq ∘ f_qr`) and that `f_pq` is total only when `p = q`.
    /// Diagonal entries may be omitted; they default to the identity.
    pub fn new(join: Vec<usize>, atoms: Vec<usize>, pmaps: Vec<PmapEntry>) -> Result<Self, DualityError> {
        let d = atoms.len();
        if d == 0 {
            return Err(DualityError::Invalid("no nodes".into()));
        }
        if join.len() != d * d {
            return Err(DualityError::Invalid(format!(
                "join table has {} entries, expected {}",
                join.len(),
                d * d
            )));
        }
        if let Some(k) = join.iter().position(|&v| v >= d) {
            return Err(DualityError::Invalid(format!("join[{}][{}] = {} is not a node", k / d, k % d, join[k])));
        }
        check_semilattice(d, &join)?;
        let leq = |p: usize, q: usize| join[p * d + q] == q;
        let mut pmap: Vec<Option<PartialMap>> = vec![None; d * d];
        for (p, q, map) in pmaps {
            if p >= d || q >= d {
                return Err(DualityError::Invalid(format!("pmap[{p}->{q}] names a node outside 0..{d}")));
            }
            if !leq(p, q) {
                return Err(DualityError::Invalid(format!("pmap[{p}->{q}] given but {p} is not below {q}")));
            }
            if pmap[p * d + q].is_some() {
                return Err(DualityError::Invalid(format!("pmap[{p}->{q}] given twice")));
            }
            if map.len() != atoms[q] {
                return Err(DualityError::Invalid(format!(
                    "pmap[{p}->{q}] has {} entries but node {q} has {} atoms",
                    map.len(),
                    atoms[q]
                )));
            }
            if let Some(v) = map.iter().flatten().find(|&&v| v >= atoms[p]) {
                return Err(DualityError::Invalid(format!(
                    "pmap[{p}->{q}] sends an atom to {v}, but node {p} has {} atoms",
                    atoms[p]
                )));
            }
            pmap[p * d + q] = Some(map);
        }
        for p in 0..d {
            let identity: PartialMap = (0..atoms[p]).map(Some).collect();
            match &pmap[p * d + p] {
                None => pmap[p * d + p] = Some(identity),
                Some(m) if *m != identity => {
                    return Err(DualityError::Invalid(format!("pmap[{p}->{p}] is not the identity")));
                }
                Some(_) => {}
            }
            for q in 0..d {
                if leq(p, q) && pmap[p * d + q].is_none() {
                    return Err(DualityError::Invalid(format!("pmap[{p}->{q}] is missing")));
                }
            }
        }
        let sys = DualSystem { d, join, atoms, pmap };
        for p in 0..d {
            for q in 0..d {
                let Some(pq) = sys.pmap(p, q) else { continue };
                if p != q && pq.iter().all(Option::is_some) {
                    return Err(DualityError::Invalid(format!(
                        "pmap[{p}->{q}] is total although {p} < {q}"
                    )));
                }
                for r in 0..d {
                    let Some(qr) = sys.pmap(q, r) else { continue };
                    let pr = sys.pmap(p, r).expect("transitive");
                    let composed: PartialMap = qr.iter().map(|x| x.and_then(|y| pq[y])).collect();
                    if composed != pr {
                        return Err(DualityError::Invalid(format!(
                            "pmap[{p}->{q}] after pmap[{q}->{r}] differs from pmap[{p}->{r}]"
                        )));
                    }
                }
            }
        }
        Ok(sys)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn node_leq(&self, p: usize, q: usize) -> bool {
        self.join[p * self.d + q] == q
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn pmap(&self, p: usize, q: usize) -> Option<&[Option<usize>]> {
        self.pmap[p * self.d + q].as_deref()
    }

    /// Every `f_pq` with `p < q`, in lexicographic order of `(p, q)`.
    pub fn pmap_entries(&self) -> Vec<PmapEntry> {
        let mut out = Vec::new();
        for p in 0..self.d {
            for q in 0..self.d {
                if p != q {
                    if let Some(m) = self.pmap(p, q) {
                        out.push((p, q, m.to_vec()));
                    }
                }
            }
        }
        out
    }

    /// Size of the primal algebra, `Σ_p 2^|atoms(p)|`.
    pub fn primal_size(&self) -> usize {
        self.atoms.iter().map(|&k| 1usize << k).sum()
    }

    /// Nodes, then atoms node by node, with the node order, atom membership
    /// and the graphs of all partial maps as relations.
    fn structure(&self) -> Structure {
        let d = self.d;
        let mut offset = vec![d; d + 1];
        for p in 0..d {
            offset[p + 1] = offset[p] + self.atoms[p];
        }
        let n = offset[d];
        let mut order = vec![false; n * n];
        let mut member = vec![false; n * n];
        let mut graph = vec![false; n * n];
        for p in 0..d {
            for q in 0..d {
                order[p * n + q] = self.node_leq(p, q);
                let Some(m) = self.pmap(p, q) else { continue };
                for (x, y) in m.iter().enumerate() {
                    if let Some(y) = y {
                        graph[(offset[q] + x) * n + offset[p] + y] = true;
                    }
                }
            }
            for x in offset[p]..offset[p + 1] {
                member[x * n + p] = true;
            }
        }
        Structure::new(n).relation(order).relation(member).relation(graph)
    }
}

/// Canonical key of a dual system; equal keys exactly for isomorphic
/// systems (node relabelling plus atom relabelling within each node).
pub fn dual_key(sys: &DualSystem) -> CanonicalKey {
    canonical_form_of(&sys.structure()).key
}

pub fn dual_isomorphic(a: &DualSystem, b: &DualSystem) -> bool {
    dual_key(a) == dual_key(b)
}

fn require_idempotent_loc_int(alg: &FiniteIpoAlgebra) -> Result<(), DualityError> {
    if let Some((name, w)) = alg.ipo_failure() {
        return Err(DualityError::NotIdempotentLocIntegral(format!("{name} fails at {w}")));
    }
    if let Err(w) = alg.check_idempotent() {
        return Err(DualityError::NotIdempotentLocIntegral(format!("not idempotent at {w}")));
    }
    if let Some((c, w)) = alg.locally_integral_failure() {
        return Err(DualityError::NotIdempotentLocIntegral(format!(
            "local integrality condition {c} fails at {w}"
        )));
    }
    Ok(())
}

/// Atoms of a Boolean component as local indices, sorted by their index in
/// the parent algebra; `None` if the component is not Boolean.
fn component_atoms(c: &IntegralComponent) -> Option<Vec<usize>> {
    let a = c.algebra();
    let zero = c.zero();
    let mut atoms: Vec<usize> = (0..a.n())
        .filter(|&x| x != zero && (0..a.n()).all(|y| y == zero || y == x || !(a.leq(y, x))))
        .collect();
    atoms.sort_by_key(|&x| c.carrier()[x]);
    if atoms.len() >= usize::BITS as usize || a.n() != 1 << atoms.len() {
        return None;
    }
    // x ↦ {atoms below x} must be an order isomorphism onto the powerset
    let mask = |x: usize| {
        atoms
            .iter()
            .enumerate()
            .filter(|&(_, &t)| a.leq(t, x))
            .fold(0usize, |m, (i, _)| m | 1 << i)
    };
    let masks: Vec<usize> = (0..a.n()).map(mask).collect();
    let mut seen = vec![false; a.n()];
    for &m in &masks {
        if std::mem::replace(&mut seen[m], true) {
            return None;
        }
    }
    for x in 0..a.n() {
        for y in 0..a.n() {
            if a.leq(x, y) != (masks[x] & !masks[y] == 0) {
                return None;
            }
        }
    }
    Some(atoms)
}

/// The dual of a finite idempotent locally integral algebra. For `p ≤ q`
/// and an atom `b` of `A_q`, `f_pq(b)` is the unique atom `a` of `A_p` with
/// `b ≤ φ_pq(a)`, undefined when `b ≤ φ_pq(0_p)`.
pub fn dualize(alg: &FiniteIpoAlgebra) -> Result<DualSystem, DualityError> {
    require_idempotent_loc_int(alg)?;
    let sys = decompose(alg).map_err(|e| DualityError::NotIdempotentLocIntegral(e.to_string()))?;
    let d = sys.d();
    let atoms: Vec<Vec<usize>> = (0..d)
        .map(|p| component_atoms(sys.component(p)).ok_or(DualityError::NotBoolean { node: p }))
        .collect::<Result<_, _>>()?;
    let mut pmaps = Vec::new();
    for p in 0..d {
        for q in 0..d {
            if p == q || !sys.node_leq(p, q) {
                continue;
            }
            let phi = sys.phi(p, q).expect("p <= q");
            let b_alg = sys.component(q).algebra();
            let undefined_below = phi[sys.component(p).zero()];
            let map = atoms[q]
                .iter()
                .map(|&b| {
                    if b_alg.leq(b, undefined_below) {
                        return Ok(None);
                    }
                    let hits: Vec<usize> = (0..atoms[p].len())
                        .filter(|&i| b_alg.leq(b, phi[atoms[p][i]]))
                        .collect();
                    match hits[..] {
                        [i] => Ok(Some(i)),
                        _ => Err(DualityError::NotBoolean { node: p }),
                    }
                })
                .collect::<Result<PartialMap, _>>()?;
            pmaps.push((p, q, map));
        }
    }
    DualSystem::new(sys.join_table().to_vec(), atoms.iter().map(Vec::len).collect(), pmaps)
}

/// Partial inverse image `S ↦ U_f ∪ f⁻¹(S)` as a map between powerset
/// bitmasks, where `U_f` is the set of atoms on which `f` is undefined.
pub fn partial_inverse_image(f: &[Option<usize>], source_atoms: usize) -> Vec<usize> {
    let undefined = f
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_none())
        .fold(0usize, |m, (i, _)| m | 1 << i);
    (0..1usize << source_atoms)
        .map(|s| {
            f.iter()
                .enumerate()
                .filter(|(_, v)| v.is_some_and(|a| s >> a & 1 == 1))
                .fold(undefined, |m, (i, _)| m | 1 << i)
        })
        .collect()
}

/// The directed system of powerset algebras described by a dual system.
pub fn primal_system(dual: &DualSystem) -> Result<DirectedSystem, DualityError> {
    let d = dual.d();
    let components: Vec<IntegralComponent> = dual
        .atoms()
        .iter()
        .map(|&k| IntegralComponent::from_algebra(boolean_powerset(k)).expect("powerset is integral"))
        .collect();
    let phi: Vec<PhiEntry> = dual
        .pmap_entries()
        .into_iter()
        .map(|(p, q, f)| (p, q, partial_inverse_image(&f, dual.atoms()[p])))
        .collect();
    debug_assert_eq!(components.len(), d);
    Ok(DirectedSystem::with_fresh_carriers(dual.join_table().to_vec(), components, phi)?)
}

/// Glues the powerset algebras of the atom sets along the partial inverse
/// images. The glueing conditions are verified, not assumed.
pub fn primalize(dual: &DualSystem) -> Result<FiniteIpoAlgebra, DualityError> {
    let sys = primal_system(dual)?;
    let out = glue(&sys);
    if !out.is_defect_free() {
        let names: Vec<String> = out
            .defects
            .iter()
            .map(|d| format!("{} at {}", d.condition.name(), d.witness))
            .collect();
        return Err(DualityError::Defective(names.join("; ")));
    }
    Ok(out.algebra)
}

/// `x ⊑ y ⟺ x·y = x`, row-major. Requires a commutative idempotent
/// product, for which this is a meet-semilattice order.
pub fn multiplicative_order(alg: &FiniteIpoAlgebra) -> Result<Vec<bool>, DualityError> {
    if let Err(w) = alg.check_commutative() {
        return Err(DualityError::NotIdempotentLocIntegral(format!("not commutative at {w}")));
    }
    if let Err(w) = alg.check_idempotent() {
        return Err(DualityError::NotIdempotentLocIntegral(format!("not idempotent at {w}")));
    }
    Ok(alg.multiplicative_order_matrix())
}

/// For an idempotent ipo-semigroup, five conditions that are all
/// equivalent: `−x·x = x·∼x`, commutativity, local identities, cyclicity,
/// and local integrality with Boolean components.
pub fn idempotent_equivalents(alg: &FiniteIpoAlgebra) -> [bool; 5] {
    let zeros = (0..alg.n()).all(|x| alg.local_zero(x).is_some());
    let boolean = alg.check_locally_integral().is_ok()
        && decompose(alg).is_ok_and(|sys| (0..sys.d()).all(|p| component_atoms(sys.component(p)).is_some()));
    [
        zeros,
        alg.check_commutative().is_ok(),
        alg.check_local_identities().is_ok(),
        alg.check_cyclic().is_ok(),
        boolean,
    ]
}

/// A random dual system with at most `max_nodes` nodes and `max_atoms`
/// atoms per node whose primal glueing is defect-free. Candidates are drawn
/// until one qualifies.
pub fn random_dual<R: Rng + ?Sized>(rng: &mut R, max_nodes: usize, max_atoms: usize) -> DualSystem {
    assert!(max_nodes >= 1);
    let lattices: Vec<Vec<Vec<usize>>> = (1..=max_nodes).map(crate::enumerate::semilattice::semilattices).collect();
    loop {
        let d = rng.gen_range(1..=max_nodes);
        let tables = &lattices[d - 1];
        let join = tables[rng.gen_range(0..tables.len())].clone();
        let minimal = crate::enumerate::semilattice::minimal_nodes(d, &join);
        let atoms: Vec<usize> = (0..d)
            .map(|p| {
                let lo = usize::from(!minimal.contains(&p));
                rng.gen_range(lo..=max_atoms.max(lo))
            })
            .collect();
        let covers = crate::enumerate::semilattice::covers(d, &join);
        let mut chosen: Vec<Option<PartialMap>> = vec![None; d * d];
        for p in 0..d {
            chosen[p * d + p] = Some((0..atoms[p]).map(Some).collect());
        }
        for &(p, q) in &covers {
            let map = (0..atoms[q])
                .map(|_| {
                    if atoms[p] == 0 || rng.gen_bool(0.4) {
                        None
                    } else {
                        Some(rng.gen_range(0..atoms[p]))
                    }
                })
                .collect();
            chosen[p * d + q] = Some(map);
        }
        // extend to all comparable pairs by composing along covers
        let leq = |p: usize, q: usize| join[p * d + q] == q;
        let mut changed = true;
        while changed {
            changed = false;
            for &(q, r) in &covers {
                for p in 0..d {
                    if p == q || !leq(p, q) || chosen[p * d + r].is_some() {
                        continue;
                    }
                    if let (Some(pq), Some(qr)) = (&chosen[p * d + q], &chosen[q * d + r]) {
                        let composed: PartialMap = qr.iter().map(|x| x.and_then(|y| pq[y])).collect();
                        chosen[p * d + r] = Some(composed);
                        changed = true;
                    }
                }
            }
        }
        let entries: Vec<PmapEntry> = (0..d)
            .flat_map(|p| (0..d).map(move |q| (p, q)))
            .filter(|&(p, q)| p != q && leq(p, q))
            .filter_map(|(p, q)| chosen[p * d + q].clone().map(|m| (p, q, m)))
            .collect();
        let Ok(dual) = DualSystem::new(join, atoms, entries) else { continue };
        if primalize(&dual).is_ok() {
            return dual;
        }
    }
}

/// Canonical key of `primalize(dual)`, for comparisons with primal
/// algebras.
pub fn primal_key(dual: &DualSystem) -> Result<CanonicalKey, DualityError> {
    primalize(dual).map(|a| canonical_key(&a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;

    #[test]
    fn boolean_algebra_dualizes_to_one_node() {
        for k in 0..4 {
            let dual = dualize(&fixtures::boolean_powerset(k)).unwrap();
            assert_eq!(dual.d(), 1);
            assert_eq!(dual.atoms(), &[k]);
            assert!(dual.pmap_entries().is_empty());
        }
    }

    #[test]
    fn one_atom_primalizes_to_two() {
        let dual = DualSystem::new(vec![0], vec![1], vec![]).unwrap();
        assert!(crate::canon::find_isomorphism(&primalize(&dual).unwrap(), &fixtures::two()).is_some());
    }

    #[test]
    fn two_into_square_has_one_defined_atom() {
        let alg = crate::glue(&fixtures::two_into_boolean_square_system()).algebra;
        let dual = dualize(&alg).unwrap();
        assert_eq!(dual.atoms(), &[1, 2]);
        let f = dual.pmap(0, 1).unwrap();
        assert_eq!(f.iter().filter(|v| v.is_some()).count(), 1);
        assert_eq!(canonical_key(&primalize(&dual).unwrap()), canonical_key(&alg));
    }

    #[test]
    fn total_maps_between_distinct_nodes_are_rejected() {
        let join = vec![0, 1, 1, 1];
        let err = DualSystem::new(join, vec![1, 1], vec![(0, 1, vec![Some(0)])]).unwrap_err();
        assert!(matches!(err, DualityError::Invalid(_)));
    }

    #[test]
    fn incompatible_maps_are_rejected() {
        let join = vec![0, 1, 2, 1, 1, 2, 2, 2, 2];
        let err = DualSystem::new(
            join,
            vec![1, 1, 1],
            vec![(0, 1, vec![None]), (1, 2, vec![Some(0)]), (0, 2, vec![Some(0)])],
        )
        .unwrap_err();
        assert!(matches!(err, DualityError::Invalid(_)));
    }

    #[test]
    fn empty_atom_set_at_a_minimal_node() {
        let dual = fixtures::dual_semilattice_13();
        assert_eq!(dual.primal_size(), 13);
        let alg = primalize(&dual).unwrap();
        assert_eq!(alg.n(), 13);
        assert!(alg.global_identity().is_none());
        assert!(dual_isomorphic(&dualize(&alg).unwrap(), &dual));
    }

    #[test]
    fn monoid_fixture_round_trips() {
        let dual = fixtures::dual_monoid_14();
        let alg = primalize(&dual).unwrap();
        assert_eq!(alg.n(), 14);
        assert!(alg.global_identity().is_some());
        assert!(dual_isomorphic(&dualize(&alg).unwrap(), &dual));
    }

    #[test]
    fn multiplicative_order_on_three_local_identities() {
        use fixtures::{TL_BOT as BOT, TL_P as P, TL_Q as Q, TL_TOP as TOP};
        let alg = fixtures::three_local_identities();
        let n = alg.n();
        let m = multiplicative_order(&alg).unwrap();
        assert!(m[BOT * n + TOP] && m[TOP * n + P] && m[TOP * n + Q]);
        assert!(!m[P * n + Q] && !m[Q * n + P]);
        assert!(multiplicative_order(&fixtures::l3()).is_err());
    }

    #[test]
    fn multiplicative_order_is_the_order_on_boolean_algebras() {
        let b = fixtures::boolean_powerset(3);
        assert_eq!(multiplicative_order(&b).unwrap(), b.leq_flat());
    }

    #[test]
    fn partial_inverse_image_is_a_sup_preserving_homomorphism() {
        let f = vec![Some(1), None, Some(1), Some(0)];
        let h = partial_inverse_image(&f, 2);
        let full_src = 0b11;
        assert_eq!(h[full_src], 0b1111);
        for s in 0..4usize {
            for t in 0..4usize {
                assert_eq!(h[s | t], h[s] | h[t]);
                assert_eq!(h[s & t], h[s] & h[t]);
            }
        }
    }

    #[test]
    fn random_duals_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let dual = random_dual(&mut rng, 3, 3);
            let alg = primalize(&dual).unwrap();
            assert_eq!(alg.n(), dual.primal_size());
            assert!(dual_isomorphic(&dualize(&alg).unwrap(), &dual));
        }
    }

    #[test]
    fn dualize_rejects_non_idempotent() {
        assert!(matches!(dualize(&fixtures::l3()), Err(DualityError::NotIdempotentLocIntegral(_))));
    }

    #[test]
    fn five_conditions_agree_on_fixtures() {
        for alg in [fixtures::two(), fixtures::three_local_identities(), fixtures::boolean_square()] {
            assert_eq!(idempotent_equivalents(&alg), [true; 5]);
        }
    }
}
