//! Compiling function expressions, conjugates and subdifferentials.

use polydc::funcalc::{compile, FuncExpr};
use polydc::rational::{format_vec, frac, int, vec_of};

fn main() {
    // f(x) = |x1 - 1| + |x2| + max(x1, 2 x2 - 1)
    let e = FuncExpr::sum(vec![
        FuncExpr::norm1_dist(vec_of(&[1, 0])),
        FuncExpr::max(vec![
            FuncExpr::affine(vec_of(&[1, 0]), int(0)),
            FuncExpr::affine(vec_of(&[0, 2]), int(-1)),
        ]),
    ]);
    println!("expression: {}", serde_json::to_string(&e).unwrap());
    let f = compile(&e).unwrap();

    for x in [vec_of(&[0, 0]), vec_of(&[1, 1]), vec![frac(1, 2), int(-3)]] {
        println!("f({}) = {}", format_vec(&x), f.evaluate(&x));
    }

    let conj = f.conjugate().unwrap();
    println!("epi f* = {}", conj.epigraph().hrep());
    for y in [vec_of(&[0, 0]), vec_of(&[1, 1]), vec_of(&[5, 0])] {
        println!("f*({}) = {}", format_vec(&y), conj.evaluate(&y));
    }

    let x = vec_of(&[1, 0]);
    let sub = f.subdifferential(&x).unwrap();
    println!("vertices of the subdifferential at {}:", format_vec(&x));
    for y in &sub.vrep().vertices {
        println!("  {}", format_vec(y));
    }

    let bi = conj.conjugate().unwrap();
    println!("f** = f: {}", bi.epigraph().same_set(f.epigraph()));
}
