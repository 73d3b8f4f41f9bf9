//! One line per acceptance criterion. Set `GMATK_CRITERIA=1,3,5` to run a
//! subset.

use gmatk::reproduce::{run_criterion, Context, CRITERIA};

fn main() {
    let selected: Vec<usize> = match std::env::var("GMATK_CRITERIA") {
        Ok(s) => s.split(',').filter_map(|x| x.trim().parse().ok()).collect(),
        Err(_) => (1..=CRITERIA).collect(),
    };
    let mut ctx = Context::new();
    let mut failed = Vec::new();
    for id in selected {
        let r = run_criterion(id, &mut ctx);
        println!("{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
