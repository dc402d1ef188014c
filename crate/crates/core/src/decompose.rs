//! Semilattice directed systems of integral ipo-monoids and the
//! decomposition of a locally integral ipo-semigroup into one.

use crate::algebra::{check_morphism, FiniteIpoAlgebra, MorphismKind, Witness};
use crate::error::{DecomposeError, NaturalityError, StructureError, SystemError};

/// An integral ipo-monoid together with the parent indices of its elements.
///
/// The algebra uses dense local indices `0..m`; `carrier[i]` is the parent
/// index of local element `i`. The declared unit is the top element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralComponent {
    carrier: Vec<usize>,
    algebra: FiniteIpoAlgebra,
}

impl IntegralComponent {
    /// Wraps an integral ipo-monoid, with carrier `0..n`.
    pub fn from_algebra(algebra: FiniteIpoAlgebra) -> Result<Self, StructureError> {
        let carrier = (0..algebra.n()).collect();
        Self::new(carrier, algebra)
    }

    /// Checks integrality and declares the top as unit.
    pub fn new(carrier: Vec<usize>, algebra: FiniteIpoAlgebra) -> Result<Self, StructureError> {
        if carrier.len() != algebra.n() {
            return Err(StructureError::Shape {
                table: "carrier",
                row: None,
                expected: algebra.n(),
                found: carrier.len(),
            });
        }
        let top = algebra.check_integral().map_err(|w| {
            StructureError::Invalid(format!("not an integral ipo-monoid: fails at {w}"))
        })?;
        if let Some(u) = algebra.unit() {
            if u != top {
                return Err(StructureError::Invalid(format!(
                    "declared unit {u} is not the top {top}"
                )));
            }
        }
        Ok(IntegralComponent {
            carrier,
            algebra: algebra.with_unit(Some(top)),
        })
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn algebra(&self) -> &FiniteIpoAlgebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.n()
    }

    /// Local index of the unit `1_p`.
    pub fn one(&self) -> usize {
        self.algebra.unit().expect("components declare their unit")
    }

    /// Local index of `0_p = ∼1_p`.
    pub fn zero(&self) -> usize {
        self.algebra.tilde(self.one())
    }

    pub fn local_index(&self, parent: usize) -> Option<usize> {
        self.carrier.iter().position(|&c| c == parent)
    }

    fn with_carrier(&self, carrier: Vec<usize>) -> Self {
        IntegralComponent {
            carrier,
            algebra: self.algebra.clone(),
        }
    }
}

/// A finite join-semilattice `D`, one integral component per node and a
/// compatible family of monoid homomorphisms `φ_pq` for `p ≤ q`.
///
/// All invariants are checked at construction, so every value of this type
/// can be glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedSystem {
    d: usize,
    join: Vec<usize>,
    components: Vec<IntegralComponent>,
    /// `phi[p * d + q]` is present exactly when `p ≤ q`.
    phi: Vec<Option<Vec<usize>>>,
    /// Parent index → (node, local index).
    owner: Vec<(usize, usize)>,
}

/// A map `φ_pq` given as `(p, q, images)` with local indices.
pub type PhiEntry = (usize, usize, Vec<usize>);

impl DirectedSystem {
    /// Builds and validates a system. `phi` must list every pair `p < q`;
    /// entries for `p = q` may be omitted and default to the identity.
    pub fn new(
        join: Vec<usize>,
        components: Vec<IntegralComponent>,
        phi: Vec<PhiEntry>,
    ) -> Result<Self, SystemError> {
        let d = components.len();
        if d == 0 {
            return Err(StructureError::Empty.into());
        }
        if join.len() != d * d {
            return Err(StructureError::Shape {
                table: "join",
                row: None,
                expected: d * d,
                found: join.len(),
            }
            .into());
        }
        if let Some(k) = join.iter().position(|&v| v >= d) {
            return Err(StructureError::OutOfRange {
                table: "join",
                cell: vec![k / d, k % d],
                value: join[k],
                n: d,
            }
            .into());
        }
        check_semilattice(d, &join)?;

        let total: usize = components.iter().map(IntegralComponent::size).sum();
        let mut owner = vec![(usize::MAX, 0); total];
        for (p, c) in components.iter().enumerate() {
            for (i, &x) in c.carrier.iter().enumerate() {
                if x >= total {
                    return Err(StructureError::OutOfRange {
                        table: "carrier",
                        cell: vec![p, i],
                        value: x,
                        n: total,
                    }
                    .into());
                }
                if owner[x].0 != usize::MAX {
                    return Err(StructureError::Invalid(format!(
                        "element {x} belongs to components {} and {p}",
                        owner[x].0
                    ))
                    .into());
                }
                owner[x] = (p, i);
            }
        }

        let leq = |p: usize, q: usize| join[p * d + q] == q;
        let mut table: Vec<Option<Vec<usize>>> = vec![None; d * d];
        for (p, q, map) in phi {
            if p >= d || q >= d {
                return Err(StructureError::Invalid(format!(
                    "phi[{p}->{q}] names a node outside 0..{d}"
                ))
                .into());
            }
            if !leq(p, q) {
                return Err(SystemError::IncompatibleFamily(format!(
                    "phi[{p}->{q}] given but {p} is not below {q}"
                )));
            }
            if table[p * d + q].is_some() {
                return Err(StructureError::Invalid(format!("phi[{p}->{q}] given twice")).into());
            }
            let (m, k) = (components[p].size(), components[q].size());
            if map.len() != m {
                return Err(StructureError::Shape {
                    table: "phi",
                    row: Some(p * d + q),
                    expected: m,
                    found: map.len(),
                }
                .into());
            }
            if let Some(i) = map.iter().position(|&v| v >= k) {
                return Err(StructureError::OutOfRange {
                    table: "phi",
                    cell: vec![p, q, i],
                    value: map[i],
                    n: k,
                }
                .into());
            }
            table[p * d + q] = Some(map);
        }
        for p in 0..d {
            let slot = &mut table[p * d + p];
            match slot {
                None => *slot = Some((0..components[p].size()).collect()),
                Some(m) => {
                    if m.iter().enumerate().any(|(i, &v)| i != v) {
                        return Err(SystemError::IncompatibleFamily(format!(
                            "phi[{p}->{p}] is not the identity"
                        )));
                    }
                }
            }
            for q in 0..d {
                if leq(p, q) && table[p * d + q].is_none() {
                    return Err(StructureError::Invalid(format!("phi[{p}->{q}] is missing")).into());
                }
            }
        }

        let sys = DirectedSystem {
            d,
            join,
            components,
            phi: table,
            owner,
        };
        sys.check_homomorphisms()?;
        sys.check_compatible()?;
        Ok(sys)
    }

    /// Like [`new`](Self::new) but assigns carriers consecutively in node
    /// order, ignoring those stored in `components`.
    pub fn with_fresh_carriers(
        join: Vec<usize>,
        components: Vec<IntegralComponent>,
        phi: Vec<PhiEntry>,
    ) -> Result<Self, SystemError> {
        let mut next = 0;
        let components = components
            .iter()
            .map(|c| {
                let carrier = (next..next + c.size()).collect();
                next += c.size();
                c.with_carrier(carrier)
            })
            .collect();
        Self::new(join, components, phi)
    }

    fn check_homomorphisms(&self) -> Result<(), SystemError> {
        for p in 0..self.d {
            for q in 0..self.d {
                let Some(map) = self.phi(p, q) else { continue };
                let (a, b) = (self.components[p].algebra(), self.components[q].algebra());
                if map[self.components[p].one()] != self.components[q].one() {
                    return Err(SystemError::NotHomomorphism {
                        from: p,
                        to: q,
                        witness: Witness::new([self.components[p].one()]),
                    });
                }
                for x in 0..a.n() {
                    for y in 0..a.n() {
                        if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                            return Err(SystemError::NotHomomorphism {
                                from: p,
                                to: q,
                                witness: Witness::new([x, y]),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self) -> Result<(), SystemError> {
        for p in 0..self.d {
            for q in 0..self.d {
                let Some(pq) = self.phi(p, q) else { continue };
                for r in 0..self.d {
                    let Some(qr) = self.phi(q, r) else { continue };
                    let pr = self.phi(p, r).expect("p <= q <= r implies p <= r");
                    if let Some(a) = (0..pq.len()).find(|&a| qr[pq[a]] != pr[a]) {
                        return Err(SystemError::IncompatibleFamily(format!(
                            "phi[{q}->{r}] . phi[{p}->{q}] differs from phi[{p}->{r}] at {a}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of semilattice nodes.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn join(&self, p: usize, q: usize) -> usize {
        self.join[p * self.d + q]
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    /// `p ≤ q` in the semilattice.
    pub fn node_leq(&self, p: usize, q: usize) -> bool {
        self.join(p, q) == q
    }

    pub fn component(&self, p: usize) -> &IntegralComponent {
        &self.components[p]
    }

    pub fn components(&self) -> &[IntegralComponent] {
        &self.components
    }

    /// `φ_pq` as a table of local indices, present iff `p ≤ q`.
    pub fn phi(&self, p: usize, q: usize) -> Option<&[usize]> {
        self.phi[p * self.d + q].as_deref()
    }

    /// Every `φ_pq` with `p < q`, in lexicographic order of `(p, q)`.
    pub fn phi_entries(&self) -> Vec<PhiEntry> {
        let mut v = Vec::new();
        for p in 0..self.d {
            for q in 0..self.d {
                if p != q {
                    if let Some(m) = self.phi(p, q) {
                        v.push((p, q, m.to_vec()));
                    }
                }
            }
        }
        v
    }

    /// Size of the glued carrier.
    pub fn total_size(&self) -> usize {
        self.owner.len()
    }

    /// `(node, local index)` of a parent element.
    pub fn owner(&self, x: usize) -> (usize, usize) {
        self.owner[x]
    }

    /// Parent index of local element `a` of node `p`.
    pub fn parent(&self, p: usize, a: usize) -> usize {
        self.components[p].carrier[a]
    }

    /// Nodes that are minimal in `D`, ascending.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.d).find(|&p| (0..self.d).all(|q| self.node_leq(p, q)))
    }

    /// The glueing order between `a ∈ A_p` and `b ∈ A_q` (local indices):
    /// `a ≤ b ⟺ φ_pr(a)·φ_qr(∼b) = 0_r` with `r = p ∨ q`.
    pub fn glue_leq(&self, p: usize, a: usize, q: usize, b: usize) -> bool {
        let r = self.join(p, q);
        let comp = &self.components[r];
        let x = self.phi(p, r).expect("p <= p v q")[a];
        let nb = self.components[q].algebra().tilde(b);
        let y = self.phi(q, r).expect("q <= p v q")[nb];
        comp.algebra().mul(x, y) == comp.zero()
    }

    /// The Płonka product of `a ∈ A_p` and `b ∈ A_q` as `(p ∨ q, local)`.
    pub fn glue_mul(&self, p: usize, a: usize, q: usize, b: usize) -> (usize, usize) {
        let r = self.join(p, q);
        let x = self.phi(p, r).expect("p <= p v q")[a];
        let y = self.phi(q, r).expect("q <= p v q")[b];
        (r, self.components[r].algebra().mul(x, y))
    }
}

pub(crate) fn check_semilattice(d: usize, join: &[usize]) -> Result<(), SystemError> {
    let j = |p: usize, q: usize| join[p * d + q];
    for p in 0..d {
        if j(p, p) != p {
            return Err(SystemError::NotSemilattice(format!("{p} v {p} != {p}")));
        }
        for q in 0..d {
            if j(p, q) != j(q, p) {
                return Err(SystemError::NotSemilattice(format!("{p} v {q} != {q} v {p}")));
            }
            for r in 0..d {
                if j(j(p, q), r) != j(p, j(q, r)) {
                    return Err(SystemError::NotSemilattice(format!(
                        "join not associative at ({p}, {q}, {r})"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn ensure_locally_integral(alg: &FiniteIpoAlgebra) -> Result<(), DecomposeError> {
    if let Some((condition, witness)) = alg.ipo_failure() {
        return Err(DecomposeError::NotIpoSemigroup { condition, witness });
    }
    if let Some((condition, witness)) = alg.locally_integral_failure() {
        return Err(DecomposeError::NotLocallyIntegral { condition, witness });
    }
    Ok(())
}

/// Splits a locally integral ipo-semigroup into its directed system.
///
/// Nodes are the positive elements in ascending order, `p ∨ q = p·q`, the
/// component of `p` is `{y : 1_y = p}` and `φ_pq(x) = q·x`. Component
/// carriers keep the parent indices, so [`glue`](crate::glue::glue)
/// reproduces `alg` exactly.
pub fn decompose(alg: &FiniteIpoAlgebra) -> Result<DirectedSystem, DecomposeError> {
    ensure_locally_integral(alg)?;
    Ok(decompose_unchecked(alg))
}

/// [`decompose`] without re-running the axiom checks.
pub(crate) fn decompose_unchecked(alg: &FiniteIpoAlgebra) -> DirectedSystem {
    let n = alg.n();
    let pos = alg.positives();
    let d = pos.len();
    let node_of: Vec<usize> = {
        let mut v = vec![usize::MAX; n];
        for (i, &p) in pos.iter().enumerate() {
            v[p] = i;
        }
        v
    };
    let join: Vec<usize> = (0..d * d)
        .map(|k| node_of[alg.mul(pos[k / d], pos[k % d])])
        .collect();
    let mut carriers = vec![Vec::new(); d];
    for y in 0..n {
        let e = alg.residual_right(y, y);
        carriers[node_of[e]].push(y);
    }
    let components: Vec<IntegralComponent> = carriers
        .into_iter()
        .map(|c| {
            let sub = alg.restrict(&c).expect("components are closed");
            IntegralComponent::new(c, sub).expect("components are integral")
        })
        .collect();
    let mut phi = Vec::new();
    for pi in 0..d {
        for (qi, &q) in pos.iter().enumerate() {
            if pi != qi && join[pi * d + qi] == qi {
                let target = &components[qi];
                let map = components[pi]
                    .carrier()
                    .iter()
                    .map(|&x| target.local_index(alg.mul(q, x)).expect("q·x lies in A_q"))
                    .collect();
                phi.push((pi, qi, map));
            }
        }
    }
    DirectedSystem::new(join, components, phi).expect("decomposition yields a valid system")
}

/// Node of the component containing `x`, i.e. the index of `1_x` among the
/// positives.
pub fn component_of(alg: &FiniteIpoAlgebra, x: usize) -> Result<usize, DecomposeError> {
    ensure_locally_integral(alg)?;
    let e = alg.residual_right(x, x);
    Ok(alg
        .positives()
        .iter()
        .position(|&p| p == e)
        .expect("local identities are positive"))
}

/// The interval characterisation: the node `p` with `0_p ≤ x ≤ 1_p` and
/// `1_p·x = x`. Meant as a cross-check of [`component_of`].
pub fn component_of_by_interval(alg: &FiniteIpoAlgebra, x: usize) -> Option<usize> {
    let pos = alg.positives();
    let hits: Vec<usize> = pos
        .iter()
        .enumerate()
        .filter(|&(_, &p)| {
            let zero = alg.tilde(p);
            alg.leq(zero, x) && alg.leq(x, p) && alg.mul(p, x) == x
        })
        .map(|(i, _)| i)
        .collect();
    (hits.len() == 1).then(|| hits[0])
}

/// A morphism of directed systems: a node map `τ` and per-node maps
/// `η_p: A_p → B_τ(p)` in local indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemMorphism {
    pub tau: Vec<usize>,
    pub eta: Vec<Vec<usize>>,
}

/// Splits a morphism `h` between the glued algebras of `src` and `dst`
/// (parent indices) into `(τ, η)` and verifies naturality.
pub fn morphism_components(
    src: &DirectedSystem,
    dst: &DirectedSystem,
    h: &[usize],
) -> Result<SystemMorphism, NaturalityError> {
    let a = crate::glue::glue(src).algebra;
    let b = crate::glue::glue(dst).algebra;
    check_morphism(&a, &b, h, MorphismKind::Homomorphism)?;
    let tau: Vec<usize> = (0..src.d())
        .map(|p| {
            let one = src.parent(p, src.component(p).one());
            dst.owner(h[one]).0
        })
        .collect();
    let eta: Vec<Vec<usize>> = (0..src.d())
        .map(|p| {
            src.component(p)
                .carrier()
                .iter()
                .map(|&x| {
                    let (node, local) = dst.owner(h[x]);
                    debug_assert_eq!(node, tau[p]);
                    local
                })
                .collect()
        })
        .collect();
    let m = SystemMorphism { tau, eta };
    check_naturality(src, dst, &m)?;
    Ok(m)
}

/// Checks that `τ` preserves joins, each `η_p` lands in `B_τ(p)`, and
/// `η_q ∘ φ_pq = φ_τ(p)τ(q) ∘ η_p` for all `p ≤ q`.
pub fn check_naturality(
    src: &DirectedSystem,
    dst: &DirectedSystem,
    m: &SystemMorphism,
) -> Result<(), NaturalityError> {
    let d = src.d();
    if m.tau.len() != d || m.eta.len() != d {
        return Err(NaturalityError::Shape(format!(
            "expected {d} nodes, got tau {} and eta {}",
            m.tau.len(),
            m.eta.len()
        )));
    }
    for p in 0..d {
        if m.tau[p] >= dst.d() {
            return Err(NaturalityError::Shape(format!("tau[{p}] out of range")));
        }
        let target = dst.component(m.tau[p]).size();
        if m.eta[p].len() != src.component(p).size() || m.eta[p].iter().any(|&v| v >= target) {
            return Err(NaturalityError::Shape(format!(
                "eta[{p}] does not map A_{p} into B_{}",
                m.tau[p]
            )));
        }
    }
    for p in 0..d {
        for q in 0..d {
            if m.tau[src.join(p, q)] != dst.join(m.tau[p], m.tau[q]) {
                return Err(NaturalityError::NotSemilatticeHom { p, q });
            }
        }
    }
    for p in 0..d {
        for q in 0..d {
            let Some(pq) = src.phi(p, q) else { continue };
            let img = dst.phi(m.tau[p], m.tau[q]).expect("tau is monotone");
            for a in 0..pq.len() {
                if m.eta[q][pq[a]] != img[m.eta[p][a]] {
                    return Err(NaturalityError::Square { p, q, a });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, TL_BOT, TL_P, TL_Q, TL_TOP};

    #[test]
    fn three_local_identities_has_three_components() {
        let sys = decompose(&fixtures::three_local_identities()).unwrap();
        assert_eq!(sys.d(), 3);
        let carriers: Vec<&[usize]> = sys.components().iter().map(|c| c.carrier()).collect();
        assert_eq!(carriers, vec![&[TL_P][..], &[TL_Q][..], &[TL_BOT, TL_TOP][..]]);
        assert_eq!(sys.join(0, 1), 2);
        assert_eq!(sys.minimum(), None);
    }

    #[test]
    fn integral_algebra_is_a_single_node() {
        for alg in [fixtures::l3(), fixtures::boolean_square(), fixtures::two()] {
            let sys = decompose(&alg).unwrap();
            assert_eq!(sys.d(), 1);
            assert_eq!(sys.phi(0, 0).unwrap(), (0..alg.n()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rejects_non_locally_integral() {
        let err = decompose(&fixtures::two_element_group()).unwrap_err();
        assert!(matches!(err, DecomposeError::NotLocallyIntegral { condition: 3, .. }));
        let err = decompose(&fixtures::commutative_noncyclic()).unwrap_err();
        assert!(matches!(err, DecomposeError::NotLocallyIntegral { condition: 2, .. }));
    }

    #[test]
    fn component_of_agrees_with_interval() {
        let alg = fixtures::three_local_identities();
        assert_eq!(component_of(&alg, TL_BOT).unwrap(), 2);
        for x in 0..alg.n() {
            let c = component_of(&alg, x).unwrap();
            assert_eq!(component_of_by_interval(&alg, x), Some(c));
            assert_eq!(component_of(&alg, alg.tilde(x)).unwrap(), c);
            assert_eq!(component_of(&alg, alg.residual_right(x, x)).unwrap(), c);
        }
        assert_eq!(component_of(&alg, TL_TOP).unwrap(), 2);
    }

    #[test]
    fn system_rejects_incompatible_family() {
        let two = fixtures::component(fixtures::two());
        let chain3 = vec![0, 1, 2, 1, 1, 2, 2, 2, 2];
        // φ_01 collapses, φ_12 is the identity, but φ_02 sends 0 to 0.
        let err = DirectedSystem::with_fresh_carriers(
            chain3,
            vec![two.clone(), two.clone(), two],
            vec![(0, 1, vec![1, 1]), (1, 2, vec![0, 1]), (0, 2, vec![0, 1])],
        )
        .unwrap_err();
        assert!(matches!(err, SystemError::IncompatibleFamily(_)));
    }

    #[test]
    fn system_rejects_non_homomorphism() {
        let two = fixtures::component(fixtures::two());
        let err = DirectedSystem::with_fresh_carriers(
            vec![0, 1, 1, 1],
            vec![two.clone(), two],
            vec![(0, 1, vec![1, 0])],
        )
        .unwrap_err();
        assert!(matches!(err, SystemError::NotHomomorphism { .. }));
    }

    #[test]
    fn system_rejects_bad_join() {
        let two = fixtures::component(fixtures::two());
        let err = DirectedSystem::with_fresh_carriers(vec![0, 0, 1, 1], vec![two.clone(), two], vec![])
            .unwrap_err();
        assert!(matches!(err, SystemError::NotSemilattice(_)));
    }

    #[test]
    fn identity_morphism_components() {
        let sys = decompose(&fixtures::three_local_identities()).unwrap();
        let id: Vec<usize> = (0..4).collect();
        let m = morphism_components(&sys, &sys, &id).unwrap();
        assert_eq!(m.tau, vec![0, 1, 2]);
        assert_eq!(m.eta, vec![vec![0], vec![0], vec![0, 1]]);
    }

    #[test]
    fn perturbed_eta_breaks_a_square() {
        let sys = fixtures::two_into_boolean_square_system();
        let mut m = SystemMorphism {
            tau: vec![0, 1],
            eta: vec![vec![0, 1], vec![0, 1, 2, 3]],
        };
        assert!(check_naturality(&sys, &sys, &m).is_ok());
        m.eta[1] = vec![0, 2, 1, 3];
        assert_eq!(
            check_naturality(&sys, &sys, &m),
            Err(NaturalityError::Square { p: 0, q: 1, a: 0 })
        );
    }
}
