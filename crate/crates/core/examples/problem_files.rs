//! Reading a problem file and writing result records as JSON and CSV.

use polydc::cli::commands::{solve_problem, SolveMethod};
use polydc::cli::{ProblemFile, CSV_HEADER};

const PROBLEM: &str = r#"{
  "name": "shifted absolute values",
  "n": 1,
  "g": {"sum_of": [{"norm1_dist": {"center": ["0"]}}, {"norm1_dist": {"center": ["2"]}}]},
  "h": {"norm1_dist": {"center": ["1"]}}
}"#;

fn main() {
    let file = ProblemFile::parse(PROBLEM).unwrap();
    println!("canonical form:\n{}", file.to_json());
    let rec = solve_problem(&file, SolveMethod::Dual).unwrap();
    println!("{}", rec.to_json());
    println!("{CSV_HEADER}\n{}", rec.csv_row(file.n));

    let broken = PROBLEM.replace(r#"["2"]"#, r#"["2", 1.5]"#);
    match ProblemFile::parse(&broken) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("error: {e}"),
    }
}
