//! Build the circle arrangement for a small graph and print statistics.

use reeb_realize::circles::{place_circles, validate_theorem2};
use reeb_realize::embed::parse_embedding;
use reeb_realize::neighborhood::{build_neighborhood, default_delta};
use reeb_realize::num::rat_i;
use reeb_realize::straighten::straighten;
use std::time::Instant;

fn main() {
    let src = std::env::args().nth(1).unwrap_or_else(|| {
        "vertex a 0 1\nvertex b 0 -1\nvertex c 1 0\nvertex d 2 0\n\
         edge ac a c\nedge bc b c\nedge cd c d\n"
            .to_string()
    });
    let g = parse_embedding(&src).expect("parse");
    let t0 = Instant::now();
    let se = straighten(&g).expect("straighten");
    let d = default_delta(&se).expect("delta");
    eprintln!("straighten: {:?}, delta = {}", t0.elapsed(), d);
    let t1 = Instant::now();
    let nbhd = build_neighborhood(&se, &d).expect("neighborhood");
    eprintln!(
        "neighborhood: {:?}, pieces = {}, curves = {}",
        t1.elapsed(),
        nbhd.region.piece_count(),
        nbhd.region.curves.len()
    );
    let t2 = Instant::now();
    let arr = place_circles(&nbhd, &se, &rat_i(1)).expect("arrangement");
    eprintln!(
        "arrangement: {:?}, circles = {}, labels = {}, region pieces = {}",
        t2.elapsed(),
        arr.circles.len(),
        arr.l_prime,
        arr.region.piece_count()
    );
    let t3 = Instant::now();
    let cert = validate_theorem2(&arr);
    eprintln!("certificate: {:?}, valid = {}", t3.elapsed(), cert.valid());
    for c in cert.failures() {
        eprintln!("  FAIL {}: {:?}", c.name, c.witness);
    }
    let t4 = Instant::now();
    let rg = reeb_realize::reeb::reeb_graph_of_projection(&arr.region).expect("reeb");
    eprintln!(
        "reeb: {:?}, V = {}, E = {}",
        t4.elapsed(),
        rg.graph.vertex_count(),
        rg.graph.edge_count()
    );
    let mut hist = std::collections::BTreeMap::new();
    for v in 0..rg.graph.vertex_count() {
        *hist.entry(rg.graph.degree(v)).or_insert(0usize) += 1;
    }
    eprintln!("degree histogram: {:?}", hist);
    for v in 0..rg.graph.vertex_count() {
        if rg.graph.degree(v) == 1 {
            eprintln!("  leaf at x = {}", rg.values[v].to_decimal(6));
        }
    }
}
