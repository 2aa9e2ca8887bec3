//! Solving a d.c. problem by the primal and the dual method.

use polydc::funcalc::{compile, FuncExpr};
use polydc::rational::{format_vec, vec_of};
use polydc::solver::{solve_dual, solve_primal, toland_singer_gap, DcProblem};

fn main() {
    // g(x) = ‖x - (0, -1)‖₁ + ‖x - (2, -1)‖₁,  h(x) = ‖x - (1, 0)‖₁
    let g = compile(&FuncExpr::sum(vec![
        FuncExpr::norm1_dist(vec_of(&[0, -1])),
        FuncExpr::norm1_dist(vec_of(&[2, -1])),
    ]))
    .unwrap();
    let h = compile(&FuncExpr::norm1_dist(vec_of(&[1, 0]))).unwrap();
    let p = DcProblem::new(g, h).unwrap();

    let primal = solve_primal(&p).unwrap();
    let dual = solve_dual(&p).unwrap();
    for sol in [&primal, &dual] {
        println!(
            "{:?}: x = {}, value = {}, dual y = {}",
            sol.method,
            format_vec(sol.x.as_ref().unwrap()),
            sol.value().unwrap(),
            sol.dual_y.as_ref().map(|y| format_vec(y)).unwrap_or_else(|| "-".into())
        );
    }
    let gap = toland_singer_gap(&p, dual.x.as_ref().unwrap(), dual.dual_y.as_ref().unwrap()).unwrap();
    println!("duality gap at the dual pair: {gap}");
}
