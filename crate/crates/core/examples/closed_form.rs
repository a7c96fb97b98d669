//! Closed-form capacity log n - H(p), and the qubit formula in terms of contraction factors.

use covacap::capacity::{
    pauli_weights_from_lambdas, qubit_capacity_from_lambdas, theorem_capacity,
};
use covacap::majorization::ProbVector;
use covacap::numerics::LogBase;
use covacap::rational::ratio;

fn main() -> covacap::Result<()> {
    let p = ProbVector::exact(vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)])?;
    let c = theorem_capacity(3, &p, LogBase::Two);
    println!(
        "n = 3, p = (1/2, 1/3, 1/6): H(p) = {:.7}, C = {:.7} bits",
        c.entropy_p, c.capacity
    );
    let nats = theorem_capacity(3, &p, LogBase::E);
    println!("same in nats: C = {:.7}", nats.capacity);

    let (lx, ly, lz) = (0.6, 0.6, 0.6);
    let w = pauli_weights_from_lambdas(lx, ly, lz);
    println!("lambdas ({lx}, {ly}, {lz}) -> Pauli weights {w:?}");
    println!(
        "qubit capacity {:.6} bits",
        qubit_capacity_from_lambdas(lx, ly, lz)?
    );
    let c = theorem_capacity(2, &ProbVector::float(vec![0.8, 0.2])?, LogBase::Two);
    println!("theorem with p = (0.8, 0.2): {:.6} bits", c.capacity);

    for n in [2usize, 4, 8] {
        let point = ProbVector::float(
            std::iter::once(1.0)
                .chain(std::iter::repeat_n(0.0, n - 1))
                .collect(),
        )?;
        println!(
            "n = {n}: point mass gives {} bits",
            theorem_capacity(n, &point, LogBase::Two).capacity
        );
    }
    Ok(())
}
