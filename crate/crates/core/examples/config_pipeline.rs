//! Running the full pipeline from a bundled config, as the `covacap` binary does.

use covacap::cli::{cmd_capacity, cmd_describe, parse_config, Format, Overrides};

fn main() -> covacap::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    for name in ["pauli.json", "klein_z4.json"] {
        let config = parse_config(dir.join(name))?;
        print!(
            "{}",
            cmd_describe(&config, &Overrides::default(), None)?.render(Format::Text)
        );
        let (report, code) = cmd_capacity(&config, &Overrides::default(), None)?;
        print!("{}", report.render(Format::Text));
        println!("exit code {code}\n");
    }
    match parse_config(dir.join("dihedral_z2n_4.json")) {
        Ok(_) => println!("dihedral_z2n_4.json resolved"),
        Err(e) => println!("dihedral_z2n_4.json: {e}"),
    }
    Ok(())
}
