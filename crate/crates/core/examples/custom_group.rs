//! A custom construction: Z2 acting on two labels, characters of Z2.

use covacap::cli::{cmd_capacity, parse_config_str, Format, Overrides};

const CONFIG: &str = r#"{
  "name": "custom qubit",
  "group": {
    "family": "custom",
    "s_cayley": [[0, 1], [1, 0]],
    "t_cayley": [[0, 1], [1, 0]],
    "characters": [["0/1", "0/1"], ["0/1", "1/2"]],
    "action": [[0, 1], [1, 0]]
  },
  "distribution": [
    {"element": [0, 0], "weight": "5/8"},
    {"element": [0, 1], "weight": "1/8"},
    {"element": [1, 0], "weight": "1/8"},
    {"element": [1, 1], "weight": "1/8"}
  ],
  "options": {"log_base": "e", "restarts": 8}
}"#;

fn main() -> covacap::Result<()> {
    let config = parse_config_str(CONFIG)?;
    let (report, code) = cmd_capacity(&config, &Overrides::default(), None)?;
    print!("{}", report.render(Format::Text));
    println!("exit code {code}");
    Ok(())
}
