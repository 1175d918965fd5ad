//! Shortest Clifford+T approximations of Rz(θ) at several precisions, and the
//! Euler decomposition of an arbitrary single-qubit unitary.

use std::f64::consts::PI;

use vsqec::synth::{approximate_rz, euler_decompose, MAX_SEARCH_LENGTH};

fn main() -> vsqec::Result<()> {
    let theta = PI / 3.0;
    for eps in [0.3, 0.1, 0.03, 0.01] {
        let r = approximate_rz(theta, eps, MAX_SEARCH_LENGTH)?;
        println!(
            "eps {eps:<5} length {:>2}  T-count {:>2}  distance {:.5}  {}",
            r.length,
            r.sequence.t_count(),
            r.achieved_distance,
            r.sequence
        );
    }

    let u = approximate_rz(0.7, 0.05, MAX_SEARCH_LENGTH)?.sequence.unitary();
    let angles = euler_decompose(&u)?;
    println!("Euler angles of that word: {angles:?}");
    Ok(())
}
