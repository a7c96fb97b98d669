//! Finite groups from Cayley tables, normal abelian subgroups and their quotients.

use covacap::group::{
    cyclic, dihedral, direct_product, enumerate_normal_abelian_subgroups, klein, quotient,
    FiniteGroup,
};

fn main() -> covacap::Result<()> {
    let z3 = cyclic(3);
    let g = direct_product(&z3, &z3);
    println!("Z3 x Z3: order {}, abelian {}", g.order(), g.is_abelian());
    for sub in enumerate_normal_abelian_subgroups(&g, 3) {
        let q = quotient(&g, &sub)?;
        println!("  T = {:?}, cosets {:?}", sub.members(), q.cosets());
    }

    let d4 = dihedral(4);
    println!("D4: order {}, abelian {}", d4.order(), d4.is_abelian());
    for sub in enumerate_normal_abelian_subgroups(&d4, 2) {
        println!("  index-2 normal abelian subgroup {:?}", sub.members());
    }

    let k = klein();
    println!(
        "Klein group elements: {:?}",
        (0..k.order()).map(|g| k.label(g)).collect::<Vec<_>>()
    );

    // A table that is not a group is rejected with a witness.
    match FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 1]]) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
