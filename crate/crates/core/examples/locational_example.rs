//! Sums of ℓ1 distances to the columns of sin/cos matrices: an optimal
//! solution exists exactly when G has at least as many columns as H.

use polydc::cli::commands::{check_problem, solve_problem, CheckMethod, SolveMethod};
use polydc::cli::generate;
use polydc::rational::format_vec;

fn main() {
    let n = 2;
    for mg in 1..=3 {
        for mh in 1..=3 {
            let file = generate::ex1(n, mg, mh).unwrap();
            let check = check_problem(&file, CheckMethod::Both).unwrap();
            let sol = solve_problem(&file, SolveMethod::Primal).unwrap();
            let x = sol.x.as_ref().map(|x| format_vec(x)).unwrap_or_else(|| "-".into());
            let value = sol.value.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            println!(
                "mg={mg} mh={mh}: {:?} (agreement {:?}), x = {x}, value = {value}",
                check.status,
                check.agreement.unwrap()
            );
        }
    }
}
