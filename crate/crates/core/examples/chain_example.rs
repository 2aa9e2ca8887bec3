//! The chain problem whose optimum is the all-one vector, solved for
//! growing dimension with both methods.

use polydc::cli::commands::{solve_problem, SolveMethod};
use polydc::cli::generate;
use polydc::rational::format_vec;

fn main() {
    for n in 1..=6 {
        let file = generate::ex2(n).unwrap();
        for method in [SolveMethod::Primal, SolveMethod::Dual] {
            let rec = solve_problem(&file, method).unwrap();
            println!(
                "n={n} {:<6} value {} at {} ({:.3}s)",
                rec.method,
                rec.value.unwrap(),
                format_vec(rec.x.as_ref().unwrap()),
                rec.timings.total
            );
        }
    }
}
