//! Multi-start minimization of the output entropy over pure inputs.

use covacap::capacity::{min_output_entropy, t_eigenbasis_states, MinEntropyOptions};
use covacap::cli::parse_config_str;
use covacap::majorization::find_admissible_subgroup;

fn main() -> covacap::Result<()> {
    let phi = parse_config_str(include_str!("example2.json"))?
        .resolve()?
        .channel;

    let cold = min_output_entropy(
        &phi,
        &MinEntropyOptions {
            restarts: 16,
            seed: 3,
            ..Default::default()
        },
    );
    println!(
        "random starts only: {:.9} bits, converged {}",
        cold.min_entropy, cold.converged
    );

    let search = find_admissible_subgroup(phi.rep(), phi.dist())?;
    let chosen = search.chosen().expect("example is admissible");
    let warm = t_eigenbasis_states(phi.rep(), &chosen.subgroup)?;
    let result = min_output_entropy(
        &phi,
        &MinEntropyOptions {
            restarts: 16,
            seed: 3,
            warm_starts: warm,
            ..Default::default()
        },
    );
    println!(
        "with eigenbasis warm starts: {:.9} bits",
        result.min_entropy
    );
    println!(
        "log2(3) - minimum = {:.7} bits",
        3f64.log2() - result.min_entropy
    );
    Ok(())
}
