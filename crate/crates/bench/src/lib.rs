//! Fixed rings shared by the benchmarks.

use starclean::ring::RawTables;
use starclean::{Recipe, StarRing};

/// Ring expressions benchmarked, smallest first.
pub const FIXTURES: &[&str] = &[
    "zn:16",
    "product:zn:4,zn:8",
    "ri:zn:4,mu=1,eta=1",
    "poly:zn:4,n=3",
    "example:triangular-z4",
    "product:zn:8,zn:16",
];

pub fn ring(expr: &str) -> StarRing {
    expr.parse::<Recipe>()
        .and_then(|r| r.build())
        .unwrap_or_else(|e| panic!("fixture {expr}: {e}"))
}

/// Raw tables of a fixture, for validation from scratch.
pub fn raw(s: &StarRing) -> RawTables {
    RawTables::from_rows(&s.add_rows(), &s.mul_rows(), s.zero().index(), s.one().index())
        .expect("fixture tables are well formed")
}
