//! Prints `class,size,count,seconds` for the requested class and sizes.
//!
//! `cargo run --release --example counts -- loc_int_ipo_semigroup 1 7 [direct|composite|auto] [workers]`

use std::time::Instant;

use ipo_core::{enumerate, Class, EnumerateOptions, Route};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let class: Class = args[0].parse().expect("class");
    let lo: usize = args[1].parse().expect("from");
    let hi: usize = args[2].parse().expect("to");
    let route: Route = args.get(3).map(|r| r.parse().expect("route")).unwrap_or_default();
    let workers: usize = args.get(4).map(|w| w.parse().expect("workers")).unwrap_or(0);
    for n in lo..=hi {
        let t = Instant::now();
        let opts = EnumerateOptions { retain: false, workers, route };
        match enumerate(class, n, opts) {
            Ok(r) => println!("{class},{n},{},{:.2}", r.count, t.elapsed().as_secs_f64()),
            Err(e) => println!("{class},{n},error: {e}"),
        }
    }
}
