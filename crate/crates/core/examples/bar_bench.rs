use cohomcheck_core::bar::{debug_rank, BarBudget};
use cohomcheck_core::catalog::Catalog;
use std::time::Instant;

fn main() {
    let c = Catalog::new(3).unwrap();
    println!("pi_h2 order = {}", c.pi_h2.order());
    for k in [2usize, 3, 4, 5] {
        let t = Instant::now();
        let r = debug_rank(&c.pi_h2, k, &BarBudget::default());
        println!("rank d_{} = {:?} elapsed={:?}", k, r, t.elapsed());
    }
}
