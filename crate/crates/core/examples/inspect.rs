//! Dump the full pipeline state for one plat string.

use lch_core::augment::enumerate_augmentations;
use lch_core::dga::action_certificate;
use lch_core::front::{classical_invariants, dga_from_plat, parse_plat, resolve};
use lch_core::linhom::{linearized_boundary, poincare_polynomial};

fn main() {
    let plat = std::env::args().nth(1).expect("usage: inspect '<plat>'");
    let f = parse_plat(&plat).unwrap();
    match classical_invariants(&f) {
        Ok((tb, rot)) => println!("tb = {tb}, rot = {rot}"),
        Err(e) => println!("classical: {e}"),
    }
    let r = resolve(&f).unwrap();
    println!(
        "crossings: {:?}",
        r.crossings
            .iter()
            .map(|c| format!("{}(deg {})", c.name, c.degree))
            .collect::<Vec<_>>()
    );
    println!("faces: {} ({} bounded)", r.faces.len(), r.bounded_faces().len());
    for f in r.bounded_faces() {
        let sig: Vec<String> = r
            .face_quadrants(f)
            .iter()
            .map(|&(v, q)| format!("{}{}", r.crossings[v].name, ["N", "W", "S", "E"][q]))
            .collect();
        println!("  face {f}: {sig:?}");
    }
    let d = dga_from_plat(&plat).unwrap();
    for g in d.generators() {
        println!("d({}) = {}", g.name, d.diff(&g.name));
    }
    println!("d^2: {:?}", d.check_d_squared().is_ok());
    println!("grading: {:?}", d.check_grading().is_ok());
    println!("action: {:?}", action_certificate(&d).is_feasible());
    let set = enumerate_augmentations(&d, 30).unwrap();
    println!("{} augmentations", set.augs.len());
    for e in &set.augs {
        let dims = linearized_boundary(&d, e).unwrap().homology_dims();
        println!("  {e}: dims {dims:?} poly {}", poincare_polynomial(&dims));
    }
}
