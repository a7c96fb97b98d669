//! Builtin projective representations: cocycles, irreducibility and spanning.

use covacap::representation::builtin::{dihedral_z2n, heisenberg_weyl, klein_z4, pauli, trivial};
use covacap::representation::{
    cocycle_roots_check, commutant_dimension, spanning_check, verify_cocycle_identity,
    ProjectiveRep,
};

fn report(name: &str, rep: &ProjectiveRep) {
    let group = rep.group();
    let cocycle = verify_cocycle_identity(rep.cocycle(), group);
    println!(
        "{name:<22} |G| = {:>2}, n = {}, commutant {:>2}, cocycle identity {}, {}-th roots {}, spanning {}",
        group.order(),
        rep.dim(),
        commutant_dimension(rep),
        cocycle.holds,
        group.order(),
        cocycle_roots_check(rep.cocycle(), group.order()),
        spanning_check(rep),
    );
}

fn main() -> covacap::Result<()> {
    report("pauli", &pauli().rep);
    for n in [3, 4, 5] {
        report(&format!("heisenberg_weyl({n})"), &heisenberg_weyl(n).rep);
    }
    report("klein_z4", &klein_z4().rep);
    report("dihedral_z2n(2)", &dihedral_z2n(2)?.rep);
    report("trivial(3)", &trivial(3).rep);

    // The phase between X Z and Z X on a qubit.
    let hw = pauli();
    let (x, z) = (hw.element(1, 0), hw.element(0, 1));
    println!(
        "omega(X, Z) = {}, omega(Z, X) = {}",
        hw.rep.cocycle().get(x, z),
        hw.rep.cocycle().get(z, x)
    );

    if let Err(e) = dihedral_z2n(3) {
        println!("dihedral_z2n(3): {e}");
    }
    Ok(())
}
