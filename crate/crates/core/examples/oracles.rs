//! Independent numerical checks of the majorization bounds and the twirl identity.

use covacap::capacity::{
    attainment_residual, prop2_sampling_oracle, prop4_sampling_oracle, prop5_sampling_oracle,
    t_eigenbasis_states,
};
use covacap::channel::twirl_identity_check;
use covacap::cli::parse_config_str;
use covacap::majorization::find_admissible_subgroup;
use covacap::numerics::random_pure_state;

fn main() -> covacap::Result<()> {
    let phi = parse_config_str(include_str!("example2.json"))?
        .resolve()?
        .channel;
    let search = find_admissible_subgroup(phi.rep(), phi.dist())?;
    let chosen = search.chosen().expect("example is admissible");
    let p = chosen.cosets.p();

    let r = prop2_sampling_oracle(&phi, &p, 500, 1);
    println!(
        "single use: {} samples, {} violations",
        r.samples, r.violations
    );
    let basis = t_eigenbasis_states(phi.rep(), &chosen.subgroup)?;
    println!(
        "eigenbasis outputs match p within {:.1e}",
        attainment_residual(&phi, &basis, &p)
    );

    let r = prop4_sampling_oracle(&phi, &p, 3, 200, 2)?;
    println!(
        "with an idle reference system: {} violations in {}",
        r.violations, r.samples
    );
    let r = prop5_sampling_oracle(&phi, &phi, &p, &p, 200, 3)?;
    println!("two uses: {} violations in {}", r.violations, r.samples);

    let f = random_pure_state(9, 4);
    let t = twirl_identity_check(&phi, &phi, &f)?;
    println!("twirl identity residual {:.1e}", t.residual);
    Ok(())
}
