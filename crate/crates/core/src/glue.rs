//! Glueing a directed system into one algebra, the conditions that make the
//! result a locally integral ipo-semigroup, and the constructions built on
//! top of it.

use std::fmt;

use serde::Serialize;

use crate::algebra::{check_morphism, FiniteIpoAlgebra, MorphismKind, Verdict, Witness};
use crate::decompose::{decompose, DirectedSystem, IntegralComponent, PhiEntry};
use crate::error::{DecomposeError, ExtendError, SystemError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Za,
    Bal,
    Mon,
    Lax,
    Transitivity,
    Antisymmetry,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Za => "za",
            Condition::Bal => "bal",
            Condition::Mon => "mon",
            Condition::Lax => "lax",
            Condition::Transitivity => "transitivity",
            Condition::Antisymmetry => "antisymmetry",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed glueing condition.
///
/// Witness layout: `za` → `(p, q)` nodes; `bal` → `(p, q, a)`; `mon` →
/// `(p, q, a, b)`; `lax` → `(p, q, r, a)`, with `a, b` parent element
/// indices; `transitivity` → `(a, b, c)`; `antisymmetry` → `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defect {
    pub condition: Condition,
    pub witness: Witness,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.condition, self.witness)
    }
}

/// The glued algebra, always materialised, with every failed condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueOutcome {
    pub algebra: FiniteIpoAlgebra,
    pub defects: Vec<Defect>,
}

impl GlueOutcome {
    pub fn is_defect_free(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.defects.iter().any(|d| d.condition == condition)
    }
}

/// Builds the Płonka sum with componentwise negations and the order
/// `a ≤ b ⟺ a·∼b = 0_{p∨q}`. Element `i` of node `p` is placed at
/// `carrier[i]`. No unit is declared.
pub fn glue(sys: &DirectedSystem) -> GlueOutcome {
    let algebra = glue_tables(sys);
    let mut defects = Vec::new();
    let verifiers: [(Condition, fn(&DirectedSystem) -> Verdict); 4] = [
        (Condition::Za, verify_za),
        (Condition::Bal, verify_bal),
        (Condition::Mon, verify_mon),
        (Condition::Lax, verify_lax),
    ];
    for (condition, verify) in verifiers {
        if let Err(witness) = verify(sys) {
            defects.push(Defect { condition, witness });
        }
    }
    if let Err(witness) = algebra.check_transitive() {
        defects.push(Defect {
            condition: Condition::Transitivity,
            witness,
        });
    }
    if let Err(witness) = algebra.check_antisymmetric() {
        defects.push(Defect {
            condition: Condition::Antisymmetry,
            witness,
        });
    }
    GlueOutcome { algebra, defects }
}

fn glue_tables(sys: &DirectedSystem) -> FiniteIpoAlgebra {
    let n = sys.total_size();
    let mut leq = vec![false; n * n];
    let mut mul = vec![0; n * n];
    let mut tilde = vec![0; n];
    let mut minus = vec![0; n];
    for x in 0..n {
        let (p, a) = sys.owner(x);
        let comp = sys.component(p).algebra();
        tilde[x] = sys.parent(p, comp.tilde(a));
        minus[x] = sys.parent(p, comp.minus(a));
        for y in 0..n {
            let (q, b) = sys.owner(y);
            let (r, c) = sys.glue_mul(p, a, q, b);
            mul[x * n + y] = sys.parent(r, c);
            leq[x * n + y] = sys.glue_leq(p, a, q, b);
        }
    }
    FiniteIpoAlgebra::from_flat(n, leq, mul, tilde, minus, None).expect("glued tables are in range")
}

/// Zero avoidance: `φ_pq(0_p) ≠ 0_q` whenever `p < q`.
pub fn verify_za(sys: &DirectedSystem) -> Verdict {
    for p in 0..sys.d() {
        for q in 0..sys.d() {
            if p == q {
                continue;
            }
            if let Some(map) = sys.phi(p, q) {
                if map[sys.component(p).zero()] == sys.component(q).zero() {
                    return Err(Witness::new([p, q]));
                }
            }
        }
    }
    Ok(())
}

/// Balance: `∼φ_pq(−a) = −φ_pq(∼a)`.
pub fn verify_bal(sys: &DirectedSystem) -> Verdict {
    for p in 0..sys.d() {
        let a_p = sys.component(p).algebra();
        for q in 0..sys.d() {
            let Some(map) = sys.phi(p, q) else { continue };
            let a_q = sys.component(q).algebra();
            for a in 0..a_p.n() {
                if a_q.tilde(map[a_p.minus(a)]) != a_q.minus(map[a_p.tilde(a)]) {
                    return Err(Witness::new([p, q, sys.parent(p, a)]));
                }
            }
        }
    }
    Ok(())
}

/// Each `φ_pq` is monotone.
pub fn verify_mon(sys: &DirectedSystem) -> Verdict {
    for p in 0..sys.d() {
        let a_p = sys.component(p).algebra();
        for q in 0..sys.d() {
            let Some(map) = sys.phi(p, q) else { continue };
            let a_q = sys.component(q).algebra();
            for a in 0..a_p.n() {
                for b in 0..a_p.n() {
                    if a_p.leq(a, b) && !a_q.leq(map[a], map[b]) {
                        return Err(Witness::new([p, q, sys.parent(p, a), sys.parent(p, b)]));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `∼φ_pq(a) ≤ φ_pr(∼a)` for all `p ≤ q`, `p ≤ r`, evaluated with the
/// glueing order.
pub fn verify_lax(sys: &DirectedSystem) -> Verdict {
    let d = sys.d();
    for p in 0..d {
        let a_p = sys.component(p).algebra();
        for q in 0..d {
            let Some(pq) = sys.phi(p, q) else { continue };
            let a_q = sys.component(q).algebra();
            for r in 0..d {
                let Some(pr) = sys.phi(p, r) else { continue };
                for a in 0..a_p.n() {
                    let lhs = a_q.tilde(pq[a]);
                    let rhs = pr[a_p.tilde(a)];
                    if !sys.glue_leq(q, lhs, r, rhs) {
                        return Err(Witness::new([p, q, r, sys.parent(p, a)]));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Glues nontrivial integral monoids along a chain, listed bottom first,
/// with every `φ_pq` (`p < q`) constant at `1_q`. The unit of the bottom
/// component is declared as the global identity.
pub fn glue_linear(monoids: &[IntegralComponent]) -> Result<GlueOutcome, SystemError> {
    let d = monoids.len();
    if d == 0 {
        return Err(crate::error::StructureError::Empty.into());
    }
    if let Some(p) = monoids.iter().position(|c| c.size() < 2) {
        return Err(SystemError::TrivialComponent(p));
    }
    let join = (0..d * d).map(|k| (k / d).max(k % d)).collect();
    let mut phi: Vec<PhiEntry> = Vec::new();
    for p in 0..d {
        for q in p + 1..d {
            phi.push((p, q, vec![monoids[q].one(); monoids[p].size()]));
        }
    }
    let sys = DirectedSystem::with_fresh_carriers(join, monoids.to_vec(), phi)?;
    let mut out = glue(&sys);
    let unit = sys.parent(0, sys.component(0).one());
    out.algebra = out.algebra.with_unit(Some(unit));
    Ok(out)
}

/// Verdicts for the three equational conditions characterising subreducts
/// of locally integral ipo-monoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubreductReport {
    /// `0_x·0_y = 0_{xy}` for all `x, y`; witness `(x, y)`.
    pub zeros_multiply: Verdict,
    /// `0_p·0_q = 0_{pq}` for positives; witness `(p, q)`.
    pub positive_zeros_multiply: Verdict,
    /// `0_p ≤ 1_q` for positives; witness `(p, q)`.
    pub zeros_below_identities: Verdict,
}

impl SubreductReport {
    pub fn consistent(&self) -> bool {
        let a = self.zeros_multiply.is_ok();
        a == self.positive_zeros_multiply.is_ok() && a == self.zeros_below_identities.is_ok()
    }
}

fn ensure_locally_integral(alg: &FiniteIpoAlgebra) -> Result<(), DecomposeError> {
    decompose(alg).map(|_| ())
}

fn zero_of(alg: &FiniteIpoAlgebra, x: usize) -> usize {
    alg.mul(alg.minus(x), x)
}

/// Evaluates all three conditions independently.
pub fn subreduct_conditions(alg: &FiniteIpoAlgebra) -> Result<SubreductReport, DecomposeError> {
    ensure_locally_integral(alg)?;
    let n = alg.n();
    let zeros_multiply = (|| {
        for x in 0..n {
            for y in 0..n {
                let lhs = alg.mul(zero_of(alg, x), zero_of(alg, y));
                if lhs != zero_of(alg, alg.mul(x, y)) {
                    return Err(Witness::new([x, y]));
                }
            }
        }
        Ok(())
    })();
    let pos = alg.positives();
    let positive_zeros_multiply = (|| {
        for &p in &pos {
            for &q in &pos {
                let lhs = alg.mul(zero_of(alg, p), zero_of(alg, q));
                if lhs != zero_of(alg, alg.mul(p, q)) {
                    return Err(Witness::new([p, q]));
                }
            }
        }
        Ok(())
    })();
    let zeros_below_identities = first_zero_above_identity(alg, &pos);
    Ok(SubreductReport {
        zeros_multiply,
        positive_zeros_multiply,
        zeros_below_identities,
    })
}

fn first_zero_above_identity(alg: &FiniteIpoAlgebra, pos: &[usize]) -> Verdict {
    for &p in pos {
        for &q in pos {
            if !alg.leq(zero_of(alg, p), q) {
                return Err(Witness::new([p, q]));
            }
        }
    }
    Ok(())
}

/// `0_p ≤ 1_q` for all positives `p, q`, with witness `(p, q)`.
pub fn subreduct_check(alg: &FiniteIpoAlgebra) -> Result<Verdict, DecomposeError> {
    ensure_locally_integral(alg)?;
    Ok(first_zero_above_identity(alg, &alg.positives()))
}

/// A locally integral ipo-monoid containing the input as a substructure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// Has a declared unit.
    pub algebra: FiniteIpoAlgebra,
    /// Image of each original element; verified to be an embedding.
    pub embedding: Vec<usize>,
    /// Whether a new bottom node was adjoined (as opposed to declaring an
    /// existing trivial component's element as the unit).
    pub adjoined: bool,
}

/// Embeds a subreduct into a locally integral ipo-monoid.
///
/// If some component is trivial its element is already the global identity
/// and is simply declared. Otherwise a new least node carrying `bottom` is
/// adjoined below all positives with `φ_⊥p` constant at `1_p`. Original
/// elements keep their indices; the new ones follow.
pub fn extend_to_monoid(
    alg: &FiniteIpoAlgebra,
    bottom: &IntegralComponent,
) -> Result<Extension, ExtendError> {
    let sys = decompose(alg)?;
    if let Err(w) = first_zero_above_identity(alg, &alg.positives()) {
        return Err(ExtendError::SubreductConditionFails {
            p: w.0[0],
            q: w.0[1],
        });
    }
    let n = alg.n();
    let identity: Vec<usize> = (0..n).collect();
    if let Some(p) = (0..sys.d()).find(|&p| sys.component(p).size() == 1) {
        let unit = sys.parent(p, 0);
        return Ok(Extension {
            algebra: alg.clone().with_unit(Some(unit)),
            embedding: identity,
            adjoined: false,
        });
    }

    let d = sys.d();
    let bot = d;
    let e = d + 1;
    let mut join = vec![0; e * e];
    for p in 0..e {
        for q in 0..e {
            join[p * e + q] = match (p == bot, q == bot) {
                (true, true) => bot,
                (true, false) => q,
                (false, true) => p,
                (false, false) => sys.join(p, q),
            };
        }
    }
    let mut components = sys.components().to_vec();
    let fresh = IntegralComponent::new((n..n + bottom.size()).collect(), bottom.algebra().clone())
        .map_err(SystemError::from)?;
    components.push(fresh);
    let mut phi = sys.phi_entries();
    for p in 0..d {
        phi.push((bot, p, vec![sys.component(p).one(); bottom.size()]));
    }
    let ext = DirectedSystem::new(join, components, phi)?;
    let out = glue(&ext);
    if !out.is_defect_free() {
        let list: Vec<String> = out.defects.iter().map(Defect::to_string).collect();
        return Err(ExtendError::Defective(list.join("; ")));
    }
    let unit = ext.parent(bot, ext.component(bot).one());
    let algebra = out.algebra.with_unit(Some(unit));
    check_morphism(
        &alg.clone().with_unit(None),
        &algebra,
        &identity,
        MorphismKind::Embedding,
    )
    .map_err(|v| ExtendError::Defective(format!("inclusion is not an embedding: {v}")))?;
    Ok(Extension {
        algebra,
        embedding: identity,
        adjoined: true,
    })
}
