//! H-representation to V-representation and back, projection and
//! recession cones.

use polydc::geometry::{h_to_v, v_to_h, HRep, LinearMin, Polyhedron, Row};
use polydc::rational::{format_vec, int, vec_of};

fn main() {
    // the unit square
    let square = HRep::with_rows(
        2,
        vec![
            Row::new(vec_of(&[1, 0]), int(1)),
            Row::new(vec_of(&[-1, 0]), int(0)),
            Row::new(vec_of(&[0, 1]), int(1)),
            Row::new(vec_of(&[0, -1]), int(0)),
        ],
        vec![],
    );
    let v = h_to_v(&square);
    println!("square vertices:");
    for p in &v.vertices {
        println!("  {}", format_vec(p));
    }
    println!("back to inequalities:\n{}", v_to_h(&v));

    // epi |x| = {(x, t) : x - t <= 0, -x - t <= 0}
    let epi = Polyhedron::from_hrep(HRep::with_rows(
        2,
        vec![Row::new(vec_of(&[1, -1]), int(0)), Row::new(vec_of(&[-1, -1]), int(0))],
        vec![],
    ));
    let rv = epi.vrep();
    println!("epi |x|: vertices {:?}", rv.vertices.iter().map(|p| format_vec(p)).collect::<Vec<_>>());
    println!("         rays     {:?}", rv.rays.iter().map(|p| format_vec(p)).collect::<Vec<_>>());

    let rec = epi.recession_cone().unwrap();
    println!("recession cone is pointed: {}", rec.vrep().is_pointed());
    let shadow = epi.project(&[0]);
    println!(
        "projection onto x: {} rows, lineality {:?}",
        shadow.hrep().row_count(),
        shadow.vrep().lineality.iter().map(|l| format_vec(l)).collect::<Vec<_>>()
    );

    match epi.linear_min(&vec_of(&[1, 2])) {
        LinearMin::Optimal { value, point } => println!("min x + 2t = {value} at {}", format_vec(&point)),
        other => println!("{other:?}"),
    }
}
