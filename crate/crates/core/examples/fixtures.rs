//! Writes the named fixtures as JSON documents into a directory.
//!
//! `cargo run --example fixtures -- out/`

use std::path::PathBuf;

use ipo_core::fixtures;
use ipo_core::io::{serialize, AlgebraDocument};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir).expect("create output directory");
    let docs = [
        ("noncyclic", AlgebraDocument::algebra(fixtures::commutative_noncyclic())),
        ("local_identities", AlgebraDocument::algebra(fixtures::three_local_identities())),
        ("two", AlgebraDocument::algebra(fixtures::two())),
        ("l3", AlgebraDocument::algebra(fixtures::l3())),
        ("boolean_square", AlgebraDocument::algebra(fixtures::boolean_square())),
        ("z2", AlgebraDocument::algebra(fixtures::two_element_group())),
        ("non_lattice", AlgebraDocument::algebra(ipo_core::glue(&fixtures::non_lattice_system()).algebra)),
        ("diamond_system", AlgebraDocument::system(fixtures::non_transitive_diamond_system())),
        ("two_into_square", AlgebraDocument::system(fixtures::two_into_boolean_square_system())),
        ("dual13", AlgebraDocument::dual(fixtures::dual_semilattice_13())),
        ("dual14", AlgebraDocument::dual(fixtures::dual_monoid_14())),
    ];
    for (name, doc) in docs {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serialize(&doc.named(name))).expect("write document");
        println!("{}", path.display());
    }
}
