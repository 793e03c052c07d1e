//! Regenerates the shipped model datasets in crates/mcqmc/data/.
//!
//! The probit design is fully deterministic (fixed seed), so rerunning this
//! must reproduce the committed file byte for byte; a unit test checks the
//! shipped CSV against the same generator.

use mcqmc::models::ProbitModel;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let model = ProbitModel::synthetic(50, 3, 2024).expect("synthetic design is full rank");
    let path = format!("{dir}/probit_synthetic.csv");
    std::fs::write(&path, model.to_csv()).expect("write probit CSV");
    println!("wrote {path} (n = {}, p = {})", model.n(), model.p());
}
