//! Finite involutive po-semigroups stored as explicit tables.
//!
//! Elements are the indices `0..n`. The order is kept as a full boolean
//! matrix and the product as a full table; both negations are stored even
//! when they coincide. Nothing is assumed about the tables beyond index
//! ranges: every axiom is a separate check that returns the
//! lexicographically first violating tuple.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::StructureError;

/// A tuple of element (or node) indices refuting a universally quantified
/// condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Witness(pub Vec<usize>);

impl Witness {
    pub fn new(items: impl Into<Vec<usize>>) -> Self {
        Witness(items.into())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of a universally quantified check.
pub type Verdict = Result<(), Witness>;

/// A finite structure `(A, ≤, ·, ∼, −)` with an optional declared unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteIpoAlgebra {
    n: usize,
    leq: Vec<bool>,
    mul: Vec<usize>,
    tilde: Vec<usize>,
    minus: Vec<usize>,
    unit: Option<usize>,
}

impl FiniteIpoAlgebra {
    /// Builds an algebra from row-major tables, validating shapes and
    /// index ranges only.
    pub fn new(
        leq: Vec<Vec<bool>>,
        mul: Vec<Vec<usize>>,
        tilde: Vec<usize>,
        minus: Vec<usize>,
        unit: Option<usize>,
    ) -> Result<Self, StructureError> {
        let n = leq.len();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        for (i, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(StructureError::Shape {
                    table: "leq",
                    row: Some(i),
                    expected: n,
                    found: row.len(),
                });
            }
        }
        if mul.len() != n {
            return Err(StructureError::Shape {
                table: "mul",
                row: None,
                expected: n,
                found: mul.len(),
            });
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(StructureError::Shape {
                    table: "mul",
                    row: Some(i),
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let leq = leq.into_iter().flatten().collect();
        let mul = mul.into_iter().flatten().collect();
        Self::from_flat(n, leq, mul, tilde, minus, unit)
    }

    /// Builds an algebra from flat row-major tables.
    pub fn from_flat(
        n: usize,
        leq: Vec<bool>,
        mul: Vec<usize>,
        tilde: Vec<usize>,
        minus: Vec<usize>,
        unit: Option<usize>,
    ) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::Empty);
        }
        if leq.len() != n * n {
            return Err(StructureError::Shape {
                table: "leq",
                row: None,
                expected: n * n,
                found: leq.len(),
            });
        }
        if mul.len() != n * n {
            return Err(StructureError::Shape {
                table: "mul",
                row: None,
                expected: n * n,
                found: mul.len(),
            });
        }
        for (table, v) in [("tilde", &tilde), ("minus", &minus)] {
            if v.len() != n {
                return Err(StructureError::Shape {
                    table,
                    row: None,
                    expected: n,
                    found: v.len(),
                });
            }
        }
        for (k, &v) in mul.iter().enumerate() {
            if v >= n {
                return Err(StructureError::OutOfRange {
                    table: "mul",
                    cell: vec![k / n, k % n],
                    value: v,
                    n,
                });
            }
        }
        for (table, v) in [("tilde", &tilde), ("minus", &minus)] {
            if let Some((i, &x)) = v.iter().enumerate().find(|(_, &x)| x >= n) {
                return Err(StructureError::OutOfRange {
                    table,
                    cell: vec![i],
                    value: x,
                    n,
                });
            }
        }
        if let Some(u) = unit {
            if u >= n {
                return Err(StructureError::OutOfRange {
                    table: "unit",
                    cell: vec![],
                    value: u,
                    n,
                });
            }
        }
        Ok(FiniteIpoAlgebra {
            n,
            leq,
            mul,
            tilde,
            minus,
            unit,
        })
    }

    /// The one-element algebra.
    pub fn trivial() -> Self {
        FiniteIpoAlgebra {
            n: 1,
            leq: vec![true],
            mul: vec![0],
            tilde: vec![0],
            minus: vec![0],
            unit: Some(0),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    #[inline]
    pub fn tilde(&self, x: usize) -> usize {
        self.tilde[x]
    }

    #[inline]
    pub fn minus(&self, x: usize) -> usize {
        self.minus[x]
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn leq_flat(&self) -> &[bool] {
        &self.leq
    }

    pub fn mul_flat(&self) -> &[usize] {
        &self.mul
    }

    pub fn tilde_table(&self) -> &[usize] {
        &self.tilde
    }

    pub fn minus_table(&self) -> &[usize] {
        &self.minus
    }

    pub fn leq_rows(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(<[bool]>::to_vec).collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Returns a copy with the given unit declared (or cleared).
    pub fn with_unit(mut self, unit: Option<usize>) -> Self {
        assert!(unit.is_none_or(|u| u < self.n), "unit out of range");
        self.unit = unit;
        self
    }

    /// Equality of the four tables, ignoring the declared unit.
    pub fn same_tables(&self, other: &Self) -> bool {
        self.n == other.n
            && self.leq == other.leq
            && self.mul == other.mul
            && self.tilde == other.tilde
            && self.minus == other.minus
    }

    /// Relabels the carrier: element `x` of `self` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut leq = vec![false; n * n];
        let mut mul = vec![0; n * n];
        let mut tilde = vec![0; n];
        let mut minus = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                leq[perm[x] * n + perm[y]] = self.leq(x, y);
                mul[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
            tilde[perm[x]] = perm[self.tilde(x)];
            minus[perm[x]] = perm[self.minus(x)];
        }
        FiniteIpoAlgebra {
            n,
            leq,
            mul,
            tilde,
            minus,
            unit: self.unit.map(|u| perm[u]),
        }
    }

    /// Restriction to a subset closed under the operations; element
    /// `carrier[i]` becomes `i`.
    pub fn restrict(&self, carrier: &[usize]) -> Result<Self, StructureError> {
        let m = carrier.len();
        let mut local = vec![usize::MAX; self.n];
        for (i, &x) in carrier.iter().enumerate() {
            local[x] = i;
        }
        let image = |table: &'static str, cell: Vec<usize>, x: usize| {
            let l = local[x];
            if l == usize::MAX {
                Err(StructureError::NotClosed { table, cell, value: x })
            } else {
                Ok(l)
            }
        };
        let mut leq = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &x in carrier {
            for &y in carrier {
                leq.push(self.leq(x, y));
                mul.push(image("mul", vec![x, y], self.mul(x, y))?);
            }
        }
        let mut tilde = Vec::with_capacity(m);
        let mut minus = Vec::with_capacity(m);
        for &x in carrier {
            tilde.push(image("tilde", vec![x], self.tilde(x))?);
            minus.push(image("minus", vec![x], self.minus(x))?);
        }
        let unit = self.unit.and_then(|u| (local[u] != usize::MAX).then(|| local[u]));
        Self::from_flat(m, leq, mul, tilde, minus, unit)
    }

    // ---- derived operations -------------------------------------------

    /// Left residual `z/y = −(y·∼z)`.
    pub fn residual_left(&self, z: usize, y: usize) -> usize {
        self.minus(self.mul(y, self.tilde(z)))
    }

    /// Right residual `x\z = ∼(−z·x)`.
    pub fn residual_right(&self, x: usize, z: usize) -> usize {
        self.tilde(self.mul(self.minus(z), x))
    }

    /// `x + y = ∼(−x·−y)`.
    pub fn plus(&self, x: usize, y: usize) -> usize {
        self.tilde(self.mul(self.minus(x), self.minus(y)))
    }

    /// The dual form `−(∼x·∼y)`, equal to [`plus`](Self::plus) in any
    /// ipo-semigroup.
    pub fn plus_dual(&self, x: usize, y: usize) -> usize {
        self.minus(self.mul(self.tilde(x), self.tilde(y)))
    }

    pub fn is_positive(&self, p: usize) -> bool {
        (0..self.n).all(|x| self.leq(x, self.mul(p, x)))
    }

    /// `{p : x ≤ p·x for all x}` in ascending order.
    pub fn positives(&self) -> Vec<usize> {
        (0..self.n).filter(|&p| self.is_positive(p)).collect()
    }

    /// `{p : x ≤ x·p for all x}`; coincides with [`positives`](Self::positives)
    /// in every ipo-semigroup.
    pub fn right_positives(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&p| (0..self.n).all(|x| self.leq(x, self.mul(x, p))))
            .collect()
    }

    /// `1_x = x\x` when it equals `x/x`.
    pub fn local_identity(&self, x: usize) -> Option<usize> {
        let r = self.residual_right(x, x);
        (r == self.residual_left(x, x)).then_some(r)
    }

    /// `0_x = −x·x` when it equals `x·∼x`.
    pub fn local_zero(&self, x: usize) -> Option<usize> {
        let z = self.mul(self.minus(x), x);
        (z == self.mul(x, self.tilde(x))).then_some(z)
    }

    /// Elements `e` with `e·x = x = x·e` for all `x`, ascending.
    pub fn global_identities(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
            .collect()
    }

    pub fn global_identity(&self) -> Option<usize> {
        self.global_identities().first().copied()
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&t| (0..self.n).all(|x| self.leq(x, t)))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq(b, x)))
    }

    /// Least upper bound of `x` and `y` in `≤`, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let ub: Vec<usize> = (0..self.n)
            .filter(|&u| self.leq(x, u) && self.leq(y, u))
            .collect();
        ub.iter()
            .copied()
            .find(|&u| ub.iter().all(|&v| self.leq(u, v)))
    }

    /// Greatest lower bound of `x` and `y` in `≤`, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lb: Vec<usize> = (0..self.n)
            .filter(|&l| self.leq(l, x) && self.leq(l, y))
            .collect();
        lb.iter()
            .copied()
            .find(|&l| lb.iter().all(|&v| self.leq(v, l)))
    }

    /// Multiplicative order `x ⊑ y ⟺ x·y = x` as a row-major matrix.
    pub fn multiplicative_order_matrix(&self) -> Vec<bool> {
        let n = self.n;
        let mut m = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                m[x * n + y] = self.mul(x, y) == x;
            }
        }
        m
    }

    /// Least superset of `generators` closed under `·`, `∼` and `−`.
    pub fn subalgebra_generated(&self, generators: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = generators.iter().copied().collect();
        loop {
            let current: Vec<usize> = set.iter().copied().collect();
            let mut grown = false;
            for &x in &current {
                grown |= set.insert(self.tilde(x));
                grown |= set.insert(self.minus(x));
                for &y in &current {
                    grown |= set.insert(self.mul(x, y));
                }
            }
            if !grown {
                return set;
            }
        }
    }

    // ---- axiom checks ---------------------------------------------------

    pub fn check_reflexive(&self) -> Verdict {
        match (0..self.n).find(|&x| !self.leq(x, x)) {
            Some(x) => Err(Witness::new([x])),
            None => Ok(()),
        }
    }

    pub fn check_antisymmetric(&self) -> Verdict {
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(Witness::new([x, y]));
                }
            }
        }
        Ok(())
    }

    pub fn check_transitive(&self) -> Verdict {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        return Err(Witness::new([x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reflexivity, then antisymmetry, then transitivity.
    pub fn check_partial_order(&self) -> Verdict {
        self.check_reflexive()?;
        self.check_antisymmetric()?;
        self.check_transitive()
    }

    pub fn check_associative(&self) -> Verdict {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Witness::new([x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    /// `∼−x = x = −∼x`.
    pub fn check_double_negation(&self) -> Verdict {
        match (0..self.n).find(|&x| self.tilde(self.minus(x)) != x || self.minus(self.tilde(x)) != x) {
            Some(x) => Err(Witness::new([x])),
            None => Ok(()),
        }
    }

    /// Both negations reverse the order.
    pub fn check_antitone(&self) -> Verdict {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.leq(x, y)
                    && !(self.leq(self.tilde(y), self.tilde(x)) && self.leq(self.minus(y), self.minus(x)))
                {
                    return Err(Witness::new([x, y]));
                }
            }
        }
        Ok(())
    }

    /// `x·y ≤ z ⟺ y·∼z ≤ ∼x ⟺ −z·x ≤ −y` for every triple.
    pub fn check_rotation(&self) -> Verdict {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    let a = self.leq(xy, z);
                    let b = self.leq(self.mul(y, self.tilde(z)), self.tilde(x));
                    let c = self.leq(self.mul(self.minus(z), x), self.minus(y));
                    if a != b || a != c {
                        return Err(Witness::new([x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Residuation `xy ≤ z ⟺ x ≤ −(y·∼z) ⟺ y ≤ ∼(−z·x)`.
    pub fn check_residuation(&self) -> Verdict {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    let a = self.leq(xy, z);
                    let b = self.leq(x, self.residual_left(z, y));
                    let c = self.leq(y, self.residual_right(x, z));
                    if a != b || a != c {
                        return Err(Witness::new([x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Partial order, associativity, double negation, antitonicity and
    /// rotation, in that order.
    pub fn check_ipo_semigroup(&self) -> Verdict {
        match self.ipo_failure() {
            None => Ok(()),
            Some((_, w)) => Err(w),
        }
    }

    /// Name and witness of the first failing ipo-semigroup axiom, checked in
    /// the order poset, semigroup, dn, antitone, rotation.
    pub fn ipo_failure(&self) -> Option<(&'static str, Witness)> {
        let checks: [(&'static str, fn(&Self) -> Verdict); 5] = [
            ("poset", Self::check_partial_order),
            ("semigroup", Self::check_associative),
            ("dn", Self::check_double_negation),
            ("antitone", Self::check_antitone),
            ("rotation", Self::check_rotation),
        ];
        checks
            .iter()
            .find_map(|(name, check)| check(self).err().map(|w| (*name, w)))
    }

    pub fn check_cyclic(&self) -> Verdict {
        match (0..self.n).find(|&x| self.tilde(x) != self.minus(x)) {
            Some(x) => Err(Witness::new([x])),
            None => Ok(()),
        }
    }

    pub fn check_commutative(&self) -> Verdict {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.mul(x, y) != self.mul(y, x) {
                    return Err(Witness::new([x, y]));
                }
            }
        }
        Ok(())
    }

    pub fn check_idempotent(&self) -> Verdict {
        match (0..self.n).find(|&x| self.mul(x, x) != x) {
            Some(x) => Err(Witness::new([x])),
            None => Ok(()),
        }
    }

    /// `x\x = x/x` and `(x\x)·x = x` for all `x`.
    pub fn check_local_identities(&self) -> Verdict {
        for x in 0..self.n {
            match self.local_identity(x) {
                Some(e) if self.mul(e, x) == x => {}
                _ => return Err(Witness::new([x])),
            }
        }
        Ok(())
    }

    /// The four equational conditions characterising local integrality of
    /// an ipo-semigroup, checked in order:
    /// 1. `−x·x = x·∼x`, witness `(x)`;
    /// 2. `y ≤ (x/x)·y`, witness `(x, y)`;
    /// 3. `x·x ≤ x`, witness `(x)`;
    /// 4. `0_x·0_x = 0_x`, witness `(x)`.
    ///
    /// The result is only meaningful when the ipo-semigroup axioms hold.
    pub fn check_locally_integral_conditions(&self) -> Verdict {
        match self.locally_integral_failure() {
            None => Ok(()),
            Some((_, w)) => Err(w),
        }
    }

    /// Like [`check_locally_integral_conditions`](Self::check_locally_integral_conditions)
    /// but also reports which of the four conditions (numbered from 1) failed.
    pub fn locally_integral_failure(&self) -> Option<(usize, Witness)> {
        let n = self.n;
        for x in 0..n {
            if self.local_zero(x).is_none() {
                return Some((1, Witness::new([x])));
            }
        }
        for x in 0..n {
            let e = self.residual_left(x, x);
            for y in 0..n {
                if !self.leq(y, self.mul(e, y)) {
                    return Some((2, Witness::new([x, y])));
                }
            }
        }
        for x in 0..n {
            if !self.leq(self.mul(x, x), x) {
                return Some((3, Witness::new([x])));
            }
        }
        for x in 0..n {
            let z = self.mul(x, self.tilde(x));
            if self.mul(z, z) != z {
                return Some((4, Witness::new([x])));
            }
        }
        None
    }

    /// The defining form of local integrality: local identities exist, are
    /// positive, bound their elements and satisfy `x\1_x = 1_x`.
    pub fn check_locally_integral_definition(&self) -> Verdict {
        self.check_local_identities()?;
        let n = self.n;
        for x in 0..n {
            let e = self.local_identity(x).expect("checked above");
            if !self.is_positive(e) || !self.leq(x, e) || self.residual_right(x, e) != e {
                return Err(Witness::new([x]));
            }
        }
        Ok(())
    }

    /// ipo-semigroup axioms followed by the four local-integrality
    /// conditions.
    pub fn check_locally_integral(&self) -> Verdict {
        self.check_ipo_semigroup()?;
        self.check_locally_integral_conditions()
    }

    /// `x ≤ (x/x)·x` and `y·x ≤ x` for all `x, y`; on success returns the
    /// top element, which is then the global identity.
    ///
    /// Witnesses are `(x)` for the first inequation and `(y, x)` for the
    /// second.
    pub fn check_integral_conditions(&self) -> Result<usize, Witness> {
        let n = self.n;
        for x in 0..n {
            if !self.leq(x, self.mul(self.residual_left(x, x), x)) {
                return Err(Witness::new([x]));
            }
        }
        for y in 0..n {
            for x in 0..n {
                if !self.leq(self.mul(y, x), x) {
                    return Err(Witness::new([y, x]));
                }
            }
        }
        Ok(self.residual_left(0, 0))
    }

    pub fn check_integral(&self) -> Result<usize, Witness> {
        self.check_ipo_semigroup()?;
        self.check_integral_conditions()
    }

    /// On failure the witness lists, for every candidate `e` in order, the
    /// first `x` with `e·x ≠ x` or `x·e ≠ x`.
    pub fn check_global_identity(&self) -> Result<usize, Witness> {
        let mut refutation = Vec::with_capacity(self.n);
        for e in 0..self.n {
            match (0..self.n).find(|&x| self.mul(e, x) != x || self.mul(x, e) != x) {
                None => return Ok(e),
                Some(x) => refutation.push(x),
            }
        }
        Err(Witness(refutation))
    }

    /// Every pair has a join and a meet. Assumes `≤` is a partial order.
    pub fn check_lattice_ordered(&self) -> Verdict {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.join(x, y).is_none() || self.meet(x, y).is_none() {
                    return Err(Witness::new([x, y]));
                }
            }
        }
        Ok(())
    }

    /// Declared unit, if any, is a two-sided identity.
    pub fn check_declared_unit(&self) -> Verdict {
        if let Some(u) = self.unit {
            if let Some(x) = (0..self.n).find(|&x| self.mul(u, x) != x || self.mul(x, u) != x) {
                return Err(Witness::new([u, x]));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteIpoAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        writeln!(f, "n = {n}")?;
        writeln!(f, "leq:")?;
        for x in 0..n {
            let row: Vec<&str> = (0..n).map(|y| if self.leq(x, y) { "1" } else { "0" }).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        writeln!(f, "mul:")?;
        for x in 0..n {
            let row: Vec<String> = (0..n).map(|y| self.mul(x, y).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        let t: Vec<String> = self.tilde.iter().map(usize::to_string).collect();
        let m: Vec<String> = self.minus.iter().map(usize::to_string).collect();
        writeln!(f, "tilde: {}", t.join(" "))?;
        writeln!(f, "minus: {}", m.join(" "))?;
        match self.unit {
            Some(u) => write!(f, "unit: {u}"),
            None => write!(f, "unit: -"),
        }
    }
}

/// Which structure-preservation properties a map must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    /// Monotone, preserves `·`, `∼`, `−` (and the unit when both sides
    /// declare one).
    Homomorphism,
    /// A homomorphism that also reflects the order.
    Embedding,
}

/// First failure found by [`check_morphism`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MorphismViolation {
    #[error("map has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("image of {x} is {value}, outside the target carrier of size {n}")]
    Range { x: usize, value: usize, n: usize },
    #[error("order not preserved: {x} <= {y} but h({x}) !<= h({y})")]
    Order { x: usize, y: usize },
    #[error("order not reflected: h({x}) <= h({y}) but {x} !<= {y}")]
    Reflection { x: usize, y: usize },
    #[error("product not preserved at ({x}, {y})")]
    Product { x: usize, y: usize },
    #[error("tilde not preserved at {x}")]
    Tilde { x: usize },
    #[error("minus not preserved at {x}")]
    Minus { x: usize },
    #[error("unit not preserved")]
    Unit,
}

impl MorphismViolation {
    pub fn witness(&self) -> Witness {
        match *self {
            MorphismViolation::Length { .. } | MorphismViolation::Unit => Witness::new([]),
            MorphismViolation::Range { x, .. }
            | MorphismViolation::Tilde { x }
            | MorphismViolation::Minus { x } => Witness::new([x]),
            MorphismViolation::Order { x, y }
            | MorphismViolation::Reflection { x, y }
            | MorphismViolation::Product { x, y } => Witness::new([x, y]),
        }
    }
}

/// Checks that `h: src → dst` is a morphism of the requested kind.
pub fn check_morphism(
    src: &FiniteIpoAlgebra,
    dst: &FiniteIpoAlgebra,
    h: &[usize],
    kind: MorphismKind,
) -> Result<(), MorphismViolation> {
    let n = src.n();
    if h.len() != n {
        return Err(MorphismViolation::Length {
            expected: n,
            found: h.len(),
        });
    }
    if let Some((x, &value)) = h.iter().enumerate().find(|(_, &v)| v >= dst.n()) {
        return Err(MorphismViolation::Range { x, value, n: dst.n() });
    }
    for x in 0..n {
        for y in 0..n {
            let s = src.leq(x, y);
            let d = dst.leq(h[x], h[y]);
            if s && !d {
                return Err(MorphismViolation::Order { x, y });
            }
            if kind == MorphismKind::Embedding && d && !s {
                return Err(MorphismViolation::Reflection { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if h[src.mul(x, y)] != dst.mul(h[x], h[y]) {
                return Err(MorphismViolation::Product { x, y });
            }
        }
    }
    for x in 0..n {
        if h[src.tilde(x)] != dst.tilde(h[x]) {
            return Err(MorphismViolation::Tilde { x });
        }
        if h[src.minus(x)] != dst.minus(h[x]) {
            return Err(MorphismViolation::Minus { x });
        }
    }
    if let (Some(a), Some(b)) = (src.unit(), dst.unit()) {
        if h[a] != b {
            return Err(MorphismViolation::Unit);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_empty_and_out_of_range() {
        assert_eq!(
            FiniteIpoAlgebra::new(vec![], vec![], vec![], vec![], None),
            Err(StructureError::Empty)
        );
        let err = FiniteIpoAlgebra::new(
            vec![vec![true, false], vec![false, true]],
            vec![vec![0, 1], vec![1, 2]],
            vec![0, 1],
            vec![0, 1],
            None,
        )
        .unwrap_err();
        assert_eq!(
            err,
            StructureError::OutOfRange {
                table: "mul",
                cell: vec![1, 1],
                value: 2,
                n: 2
            }
        );
    }

    #[test]
    fn trivial_algebra_is_everything() {
        let t = FiniteIpoAlgebra::trivial();
        assert!(t.check_ipo_semigroup().is_ok());
        assert!(t.check_locally_integral().is_ok());
        assert_eq!(t.check_integral(), Ok(0));
        assert_eq!(t.plus(0, 0), 0);
        assert_eq!(t.local_identity(0), Some(0));
    }

    #[test]
    fn identity_negations_on_noncyclic_are_not_antitone() {
        let a = fixtures::commutative_noncyclic();
        let broken = FiniteIpoAlgebra::from_flat(
            a.n(),
            a.leq_flat().to_vec(),
            a.mul_flat().to_vec(),
            (0..a.n()).collect(),
            (0..a.n()).collect(),
            None,
        )
        .unwrap();
        // Every product is the least element, so both sides of each rotation
        // equivalence are always true whatever the negations are.
        assert_eq!(broken.check_rotation(), Ok(()));
        assert_eq!(broken.check_double_negation(), Ok(()));
        let w = broken.check_antitone().unwrap_err();
        let (x, y) = (w.0[0], w.0[1]);
        assert!(broken.leq(x, y) && x != y);
        assert!(broken.check_ipo_semigroup().is_err());
    }

    #[test]
    fn positives_left_and_right_agree_on_fixtures() {
        for a in fixtures::all_ipo_fixtures() {
            assert_eq!(a.positives(), a.right_positives());
        }
    }

    #[test]
    fn subalgebra_closure_basic() {
        let a = fixtures::commutative_noncyclic();
        assert!(a.subalgebra_generated(&[]).is_empty());
        let all: Vec<usize> = (0..a.n()).collect();
        assert_eq!(a.subalgebra_generated(&all).len(), a.n());
    }

    #[test]
    fn morphism_identity_and_non_monotone() {
        let a = fixtures::three_local_identities();
        let id: Vec<usize> = (0..a.n()).collect();
        assert!(check_morphism(&a, &a, &id, MorphismKind::Embedding).is_ok());
        // swap ⊥ and ⊤ only
        let mut h = id.clone();
        h.swap(fixtures::TL_BOT, fixtures::TL_TOP);
        let v = check_morphism(&a, &a, &h, MorphismKind::Homomorphism).unwrap_err();
        assert!(matches!(v, MorphismViolation::Order { .. }));
    }
}
