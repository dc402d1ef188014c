//! Enumeration of each class up to isomorphism.
//!
//! Two routes are available. The direct route backtracks over product
//! tables on every involutive poset of the right size. The composite route,
//! for locally integral classes, glues integral components over
//! join-semilattices along every admissible family of maps. Both merge
//! their results by canonical key, so the output is independent of the
//! number of workers.

pub mod composite;
pub mod direct;
pub mod homs;
pub mod posets;
pub mod semilattice;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteIpoAlgebra;
use crate::canon::{canonical_key, CanonicalKey};
use crate::decompose::IntegralComponent;
use direct::Shape;

/// The classes counted in the two published tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    IpoSemigroup,
    IpoMonoid,
    LocIntIpoSemigroup,
    LocIntIpoMonoid,
    IntegralIpoMonoid,
    IpoSemilattice,
    IlSemilattice,
    CommIdemIpoMonoid,
    CommIdemIlMonoid,
    BooleanAlgebra,
}

impl Class {
    pub const ALL: [Class; 10] = [
        Class::IpoSemigroup,
        Class::IpoMonoid,
        Class::LocIntIpoSemigroup,
        Class::LocIntIpoMonoid,
        Class::IntegralIpoMonoid,
        Class::IpoSemilattice,
        Class::IlSemilattice,
        Class::CommIdemIpoMonoid,
        Class::CommIdemIlMonoid,
        Class::BooleanAlgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::IpoSemigroup => "ipo_semigroup",
            Class::IpoMonoid => "ipo_monoid",
            Class::LocIntIpoSemigroup => "loc_int_ipo_semigroup",
            Class::LocIntIpoMonoid => "loc_int_ipo_monoid",
            Class::IntegralIpoMonoid => "integral_ipo_monoid",
            Class::IpoSemilattice => "ipo_semilattice",
            Class::IlSemilattice => "il_semilattice",
            Class::CommIdemIpoMonoid => "comm_idem_ipo_monoid",
            Class::CommIdemIlMonoid => "comm_idem_il_monoid",
            Class::BooleanAlgebra => "boolean_algebra",
        }
    }

    pub fn needs_identity(self) -> bool {
        matches!(
            self,
            Class::IpoMonoid
                | Class::LocIntIpoMonoid
                | Class::IntegralIpoMonoid
                | Class::CommIdemIpoMonoid
                | Class::CommIdemIlMonoid
                | Class::BooleanAlgebra
        )
    }

    pub fn is_locally_integral(self) -> bool {
        !matches!(self, Class::IpoSemigroup | Class::IpoMonoid)
    }

    /// Commutative and idempotent, so every component is Boolean.
    pub fn is_idempotent(self) -> bool {
        matches!(
            self,
            Class::IpoSemilattice
                | Class::IlSemilattice
                | Class::CommIdemIpoMonoid
                | Class::CommIdemIlMonoid
                | Class::BooleanAlgebra
        )
    }

    fn needs_lattice(self) -> bool {
        matches!(self, Class::IlSemilattice | Class::CommIdemIlMonoid)
    }

    /// Membership by exhaustive axiom checks.
    pub fn contains(self, alg: &FiniteIpoAlgebra) -> bool {
        if alg.check_ipo_semigroup().is_err() {
            return false;
        }
        if self.needs_identity() && alg.global_identity().is_none() {
            return false;
        }
        if self.is_locally_integral() && alg.check_locally_integral_conditions().is_err() {
            return false;
        }
        if self.is_idempotent() && (alg.check_commutative().is_err() || alg.check_idempotent().is_err()) {
            return false;
        }
        if self.needs_lattice() && alg.check_lattice_ordered().is_err() {
            return false;
        }
        if matches!(self, Class::IntegralIpoMonoid | Class::BooleanAlgebra) && alg.check_integral_conditions().is_err() {
            return false;
        }
        true
    }

    /// Bounded posets suffice: every locally integral algebra has a top
    /// `1_t` (the local identity of the top component) and a bottom `∼1_t`.
    fn bounded(self) -> bool {
        self.is_locally_integral()
    }

    fn shape(self) -> Shape {
        Shape {
            commutative: self.is_idempotent(),
            idempotent: self.is_idempotent(),
            square_decreasing: self.is_locally_integral(),
            integral: matches!(self, Class::IntegralIpoMonoid | Class::BooleanAlgebra),
            unit: None,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Class::ALL.iter().map(|c| c.name()).collect();
                format!("unknown class `{s}`; expected one of {}", names.join(", "))
            })
    }
}

/// Every class the algebra belongs to, in declaration order.
pub fn classify(alg: &FiniteIpoAlgebra) -> Vec<Class> {
    Class::ALL.into_iter().filter(|c| c.contains(alg)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Composite for locally integral classes, direct otherwise.
    #[default]
    Auto,
    Direct,
    Composite,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Auto => "auto",
            Route::Direct => "direct",
            Route::Composite => "composite",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Route::Auto),
            "direct" => Ok(Route::Direct),
            "composite" => Ok(Route::Composite),
            _ => Err(format!("unknown route `{s}`; expected auto, direct or composite")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub retain: bool,
    /// Worker threads; `0` means one per available core.
    pub workers: usize,
    pub route: Route,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            retain: false,
            workers: 1,
            route: Route::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub class: Class,
    pub size: usize,
    pub count: usize,
    /// Canonical representatives in ascending key order, when retained.
    pub representatives: Option<Vec<FiniteIpoAlgebra>>,
    /// The route actually taken.
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("{class} of size {size} exceeds the {route} route's budget (at most {max})")]
    BudgetExceeded {
        class: Class,
        size: usize,
        route: Route,
        max: usize,
    },
    #[error("the {route} route does not apply to {class}")]
    RouteUnsupported { class: Class, route: Route },
    #[error("could not start a worker pool: {0}")]
    Pool(String),
}

/// Largest size each route accepts for a class.
pub fn budget(class: Class, route: Route) -> Option<usize> {
    match route {
        Route::Auto => budget(class, default_route(class)),
        Route::Direct => Some(match class {
            Class::IpoSemigroup | Class::IpoMonoid => 8,
            Class::LocIntIpoSemigroup | Class::LocIntIpoMonoid => 8,
            Class::IntegralIpoMonoid => 9,
            Class::IpoSemilattice | Class::IlSemilattice => 8,
            Class::CommIdemIpoMonoid | Class::CommIdemIlMonoid => 8,
            Class::BooleanAlgebra => 8,
        }),
        Route::Composite => match class {
            Class::IpoSemigroup | Class::IpoMonoid => None,
            Class::LocIntIpoSemigroup => Some(10),
            Class::LocIntIpoMonoid => Some(10),
            Class::IntegralIpoMonoid => Some(9),
            Class::IpoSemilattice | Class::IlSemilattice => Some(11),
            Class::CommIdemIpoMonoid | Class::CommIdemIlMonoid => Some(12),
            Class::BooleanAlgebra => Some(16),
        },
    }
}

fn default_route(class: Class) -> Route {
    match class {
        Class::IpoSemigroup | Class::IpoMonoid | Class::IntegralIpoMonoid => Route::Direct,
        _ => Route::Composite,
    }
}

/// Counts (and optionally lists) the algebras of `class` with `n` elements
/// up to isomorphism. Sizes beyond the route's budget are refused.
pub fn enumerate(class: Class, n: usize, opts: EnumerateOptions) -> Result<EnumerationResult, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroSize);
    }
    let route = match opts.route {
        Route::Auto => default_route(class),
        r => r,
    };
    let max = budget(class, route).ok_or(EnumerateError::RouteUnsupported { class, route })?;
    if n > max {
        return Err(EnumerateError::BudgetExceeded {
            class,
            size: n,
            route,
            max,
        });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if opts.workers > 0 {
        builder = builder.num_threads(opts.workers);
    }
    let pool = builder.build().map_err(|e| EnumerateError::Pool(e.to_string()))?;
    let found = pool.install(|| match route {
        Route::Direct => run_direct(class, n),
        _ => run_composite(class, n),
    });
    let count = found.len();
    Ok(EnumerationResult {
        class,
        size: n,
        count,
        representatives: opts.retain.then(|| found.into_values().collect()),
        route,
    })
}

type Found = BTreeMap<CanonicalKey, FiniteIpoAlgebra>;

fn merge(mut a: Found, b: Found) -> Found {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        a.entry(k).or_insert(v);
    }
    a
}

/// Labels the global identity (if any) and relabels canonically, so that
/// representatives do not depend on which work unit found them first.
fn finish(alg: FiniteIpoAlgebra) -> FiniteIpoAlgebra {
    let unit = alg.global_identity();
    crate::canon::canonical_algebra(&alg.with_unit(unit))
}

fn run_direct(class: Class, n: usize) -> Found {
    let shape = class.shape();
    let work: Vec<(posets::InvolutivePoset, Option<usize>)> = posets::involutive_posets(n, class.bounded())
        .into_iter()
        .flat_map(|p| {
            let units: Vec<Option<usize>> = if class.needs_identity() && !shape.integral {
                (0..n).filter(|&e| p.tilde[e] == p.minus[e]).map(Some).collect()
            } else {
                vec![None]
            };
            units.into_iter().map(move |u| (p.clone(), u))
        })
        .collect();
    work.par_iter()
        .map(|(p, unit)| {
            let mut local = Found::new();
            let shape = Shape { unit: *unit, ..shape };
            direct::search(p, shape, &mut |alg| {
                if class.contains(&alg) {
                    let key = canonical_key(&alg);
                    local.entry(key).or_insert(alg);
                }
            });
            local
        })
        .reduce(Found::new, merge)
        .into_iter()
        .map(|(k, v)| (k, finish(v)))
        .collect()
}

/// Integral components with `m` elements, canonical and in key order. For
/// idempotent classes these are the Boolean algebras, built directly.
pub fn integral_components(m: usize, boolean_only: bool) -> Vec<IntegralComponent> {
    if boolean_only {
        if !m.is_power_of_two() {
            return Vec::new();
        }
        let k = m.trailing_zeros() as usize;
        let alg = crate::canon::canonical_algebra(&crate::fixtures::boolean_powerset(k));
        return vec![IntegralComponent::from_algebra(alg).expect("powerset algebras are integral")];
    }
    let mut found = Found::new();
    for p in posets::involutive_posets(m, true) {
        direct::search(&p, Class::IntegralIpoMonoid.shape(), &mut |alg| {
            if alg.check_integral_conditions().is_ok() {
                found.entry(canonical_key(&alg)).or_insert(alg);
            }
        });
    }
    found
        .into_values()
        .map(|alg| {
            let alg = crate::canon::canonical_algebra(&alg);
            IntegralComponent::from_algebra(alg).expect("integral by construction")
        })
        .collect()
}

fn run_composite(class: Class, n: usize) -> Found {
    let boolean = class.is_idempotent();
    let sizes: Vec<usize> = (1..=n).filter(|m| !boolean || m.is_power_of_two()).collect();
    let cache: Vec<Vec<IntegralComponent>> = (0..=n)
        .map(|m| if sizes.contains(&m) { integral_components(m, boolean) } else { Vec::new() })
        .collect();
    let allowed: Vec<usize> = sizes.iter().copied().filter(|&m| !cache[m].is_empty()).collect();
    // every node but the minimal ones carries at least two elements
    let only_one_node = matches!(class, Class::IntegralIpoMonoid | Class::BooleanAlgebra);
    let max_d = if only_one_node { 1 } else { n };
    let lattices: Vec<(usize, Vec<semilattice::JoinTable>)> =
        (1..=max_d).map(|d| (d, semilattice::semilattices(d))).collect();
    let units = composite::units(n, &lattices, &allowed, class.needs_identity());
    let by_size = |m: usize| cache[m].clone();
    let keep = |alg: &FiniteIpoAlgebra| class.contains(alg);
    units
        .par_iter()
        .map(|u| composite::solve_unit(u, &by_size, &keep))
        .reduce(Found::new, merge)
        .into_iter()
        .map(|(k, v)| (k, finish(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn count(class: Class, n: usize, route: Route) -> usize {
        enumerate(
            class,
            n,
            EnumerateOptions {
                route,
                ..Default::default()
            },
        )
        .unwrap()
        .count
    }

    #[test]
    fn class_names_round_trip() {
        for c in Class::ALL {
            assert_eq!(c.name().parse::<Class>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("monoid".parse::<Class>().is_err());
    }

    #[test]
    fn two_is_in_every_class() {
        assert_eq!(classify(&fixtures::two()), Class::ALL.to_vec());
    }

    #[test]
    fn three_local_identities_has_no_monoid_class() {
        let classes = classify(&fixtures::three_local_identities());
        assert!(classes.contains(&Class::LocIntIpoSemigroup));
        assert!(classes.contains(&Class::IpoSemilattice));
        assert!(classes.contains(&Class::IlSemilattice));
        assert!(classes.iter().all(|c| !c.needs_identity()));
    }

    #[test]
    fn noncyclic_is_only_an_ipo_semigroup() {
        assert_eq!(classify(&fixtures::commutative_noncyclic()), vec![Class::IpoSemigroup]);
    }

    #[test]
    fn size_one_is_unique_everywhere() {
        for c in Class::ALL {
            assert_eq!(count(c, 1, Route::Auto), 1, "{c}");
        }
    }

    #[test]
    fn small_ipo_semigroups() {
        let counts: Vec<usize> = (1..=4).map(|n| count(Class::IpoSemigroup, n, Route::Direct)).collect();
        assert_eq!(counts, vec![1, 4, 10, 48]);
    }

    #[test]
    fn small_integral_monoids() {
        let counts: Vec<usize> = (1..=6).map(|n| integral_components(n, false).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 3, 3, 13]);
    }

    #[test]
    fn routes_agree_on_small_locally_integral_classes() {
        for class in [Class::LocIntIpoSemigroup, Class::LocIntIpoMonoid, Class::IpoSemilattice] {
            for n in 1..=5 {
                assert_eq!(count(class, n, Route::Direct), count(class, n, Route::Composite), "{class} n={n}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate(Class::IpoSemigroup, 40, EnumerateOptions::default()).unwrap_err();
        assert!(matches!(err, EnumerateError::BudgetExceeded { max: 8, .. }));
        let err = enumerate(
            Class::IpoSemigroup,
            3,
            EnumerateOptions {
                route: Route::Composite,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, EnumerateError::RouteUnsupported { .. }));
        assert_eq!(enumerate(Class::IpoSemigroup, 0, EnumerateOptions::default()), Err(EnumerateError::ZeroSize));
    }

    #[test]
    fn retained_representatives_belong_and_are_distinct() {
        let r = enumerate(
            Class::LocIntIpoSemigroup,
            5,
            EnumerateOptions {
                retain: true,
                ..Default::default()
            },
        )
        .unwrap();
        let reps = r.representatives.unwrap();
        assert_eq!(reps.len(), r.count);
        let keys: std::collections::BTreeSet<_> = reps.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), reps.len());
        assert!(reps.iter().all(|a| Class::LocIntIpoSemigroup.contains(a)));
    }
}
