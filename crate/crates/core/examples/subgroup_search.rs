//! Exact subgroup search: which grouping of the weights satisfies the ordering condition.

use covacap::cli::parse_config_str;
use covacap::majorization::find_admissible_subgroup;
use covacap::rational::format_rational;

fn main() -> covacap::Result<()> {
    let phi = parse_config_str(include_str!("example2.json"))?
        .resolve()?
        .channel;
    let search = find_admissible_subgroup(phi.rep(), phi.dist())?;
    for c in &search.candidates {
        let p: Vec<String> = c.cosets.p_exact().iter().map(format_rational).collect();
        print!(
            "T = {:?}: p = ({}), unitary restriction {}",
            c.subgroup.members(),
            p.join(", "),
            c.restriction_unitary
        );
        match &c.condition.witness {
            None => println!(", condition holds"),
            Some(w) => println!(
                ", fails: weight {} in later coset {} exceeds {} in earlier coset {}",
                w.heavier_weight, w.j, w.lighter_weight, w.k
            ),
        }
    }
    match search.chosen() {
        Some(c) => println!("admissible: {:?}", c.subgroup.members()),
        None => println!("no admissible subgroup"),
    }
    Ok(())
}
