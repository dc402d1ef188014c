//! Aggregated axiom-class verdicts for one algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{FiniteIpoAlgebra, Verdict, Witness};
use crate::error::StructureError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Poset,
    Semigroup,
    Dn,
    Antitone,
    Rotation,
    IpoSemigroup,
    Cyclic,
    Commutative,
    Idempotent,
    HasLocalIdentities,
    LocallyIntegral,
    Integral,
    HasGlobalIdentity,
    LatticeOrdered,
}

impl Flag {
    pub const ALL: [Flag; 14] = [
        Flag::Poset,
        Flag::Semigroup,
        Flag::Dn,
        Flag::Antitone,
        Flag::Rotation,
        Flag::IpoSemigroup,
        Flag::Cyclic,
        Flag::Commutative,
        Flag::Idempotent,
        Flag::HasLocalIdentities,
        Flag::LocallyIntegral,
        Flag::Integral,
        Flag::HasGlobalIdentity,
        Flag::LatticeOrdered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Poset => "poset",
            Flag::Semigroup => "semigroup",
            Flag::Dn => "dn",
            Flag::Antitone => "antitone",
            Flag::Rotation => "rotation",
            Flag::IpoSemigroup => "ipo_semigroup",
            Flag::Cyclic => "cyclic",
            Flag::Commutative => "commutative",
            Flag::Idempotent => "idempotent",
            Flag::HasLocalIdentities => "has_local_identities",
            Flag::LocallyIntegral => "locally_integral",
            Flag::Integral => "integral",
            Flag::HasGlobalIdentity => "has_global_identity",
            Flag::LatticeOrdered => "lattice_ordered",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One verdict per [`Flag`]; a failed flag always carries a witness.
///
/// Flags that depend on other flags (`ipo_semigroup`, `locally_integral`,
/// `integral`, `lattice_ordered`) inherit the witness of the first failed
/// prerequisite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    verdicts: BTreeMap<Flag, Verdict>,
    global_identity: Option<usize>,
    top: Option<usize>,
}

impl ClassReport {
    pub fn holds(&self, flag: Flag) -> bool {
        self.verdicts[&flag].is_ok()
    }

    pub fn witness(&self, flag: Flag) -> Option<&Witness> {
        self.verdicts[&flag].as_ref().err()
    }

    pub fn verdict(&self, flag: Flag) -> &Verdict {
        &self.verdicts[&flag]
    }

    /// The discovered global identity, declared or not.
    pub fn global_identity(&self) -> Option<usize> {
        self.global_identity
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn iter(&self) -> impl Iterator<Item = (Flag, &Verdict)> {
        self.verdicts.iter().map(|(f, v)| (*f, v))
    }
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (flag, verdict) in self.iter() {
            match verdict {
                Ok(()) => writeln!(f, "{:<22} true", flag.name())?,
                Err(w) => writeln!(f, "{:<22} false  witness {w}", flag.name())?,
            }
        }
        match self.global_identity {
            Some(e) => write!(f, "{:<22} {e}", "global_identity"),
            None => write!(f, "{:<22} -", "global_identity"),
        }
    }
}

/// Runs every check on `alg`.
///
/// Tables are validated at construction, so the only structural error left
/// is a declared unit that is not an identity.
pub fn check_ipo(alg: &FiniteIpoAlgebra) -> Result<ClassReport, StructureError> {
    if let Err(w) = alg.check_declared_unit() {
        return Err(StructureError::Invalid(format!(
            "declared unit {} is not an identity: fails at {}",
            w.0[0], w.0[1]
        )));
    }
    let mut v = BTreeMap::new();
    let poset = alg.check_partial_order();
    let semigroup = alg.check_associative();
    let dn = alg.check_double_negation();
    let antitone = alg.check_antitone();
    let rotation = alg.check_rotation();
    let ipo = poset
        .clone()
        .and(semigroup.clone())
        .and(dn.clone())
        .and(antitone.clone())
        .and(rotation.clone());
    let locally_integral = ipo.clone().and_then(|_| alg.check_locally_integral_conditions());
    let integral = ipo.clone().and_then(|_| alg.check_integral_conditions().map(|_| ()));
    let lattice = poset.clone().and_then(|_| alg.check_lattice_ordered());
    let global = alg.check_global_identity();
    let top = if integral.is_ok() { alg.top() } else { None };

    v.insert(Flag::Poset, poset);
    v.insert(Flag::Semigroup, semigroup);
    v.insert(Flag::Dn, dn);
    v.insert(Flag::Antitone, antitone);
    v.insert(Flag::Rotation, rotation);
    v.insert(Flag::IpoSemigroup, ipo);
    v.insert(Flag::Cyclic, alg.check_cyclic());
    v.insert(Flag::Commutative, alg.check_commutative());
    v.insert(Flag::Idempotent, alg.check_idempotent());
    v.insert(Flag::HasLocalIdentities, alg.check_local_identities());
    v.insert(Flag::LocallyIntegral, locally_integral);
    v.insert(Flag::Integral, integral);
    v.insert(Flag::HasGlobalIdentity, global.clone().map(|_| ()));
    v.insert(Flag::LatticeOrdered, lattice);
    Ok(ClassReport {
        verdicts: v,
        global_identity: global.ok(),
        top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn every_false_flag_has_a_witness() {
        for a in fixtures::all_fixtures() {
            let r = check_ipo(&a).unwrap();
            for flag in Flag::ALL {
                assert_eq!(r.holds(flag), r.witness(flag).is_none());
            }
        }
    }

    #[test]
    fn noncyclic_is_commutative_not_cyclic() {
        let r = check_ipo(&fixtures::commutative_noncyclic()).unwrap();
        assert!(r.holds(Flag::IpoSemigroup));
        assert!(r.holds(Flag::Commutative));
        assert!(!r.holds(Flag::Cyclic));
        assert!(!r.holds(Flag::HasLocalIdentities));
        assert!(!r.holds(Flag::LocallyIntegral));
    }

    #[test]
    fn trivial_algebra_all_flags_true() {
        let r = check_ipo(&FiniteIpoAlgebra::trivial()).unwrap();
        for flag in Flag::ALL {
            assert!(r.holds(flag), "{flag}");
        }
        assert_eq!(r.global_identity(), Some(0));
    }

    #[test]
    fn declared_unit_must_be_identity() {
        let a = fixtures::three_local_identities().with_unit(Some(fixtures::TL_TOP));
        assert!(check_ipo(&a).is_err());
    }
}
