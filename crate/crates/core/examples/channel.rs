//! Applying a covariant mixed unitary channel and checking covariance.

use covacap::channel::{covariance_check, qc_reference, MixedUnitaryChannel};
use covacap::cli::parse_config_str;
use covacap::majorization::find_admissible_subgroup;
use covacap::numerics::{
    random_pure_state, von_neumann_entropy, DensityMatrix, LogBase, PureState,
};

fn main() -> covacap::Result<()> {
    let phi: MixedUnitaryChannel = parse_config_str(include_str!("example2.json"))?
        .resolve()?
        .channel;

    let out = phi.apply(&PureState::basis(3, 0).density())?;
    let diag: Vec<f64> = out.matrix().diagonal().iter().map(|z| z.re).collect();
    println!("Phi(|0><0|) diagonal: {diag:.6?}");

    let f = random_pure_state(3, 11);
    let rho = phi.apply(&f.density())?;
    println!(
        "random input: output entropy {:.6} bits",
        von_neumann_entropy(&rho, LogBase::Two)?
    );

    let mixed = phi.apply(&DensityMatrix::maximally_mixed(3))?;
    println!(
        "unital: Phi(I/3) = I/3 up to {:.1e}",
        (mixed.matrix() - DensityMatrix::maximally_mixed(3).matrix()).frobenius_norm()
    );

    let cov = covariance_check(&phi, 100, 5);
    println!(
        "covariance over {} trials: {} (max residual {:.1e})",
        cov.trials, cov.holds, cov.max_residual
    );

    let search = find_admissible_subgroup(phi.rep(), phi.dist())?;
    if let Some(c) = search.chosen() {
        let reference = qc_reference(&phi, &c.subgroup, &c.cosets)?;
        let out = reference.apply(&f.density())?;
        println!("q-c reference output trace {:.6}", out.matrix().trace().re);
    }
    Ok(())
}
