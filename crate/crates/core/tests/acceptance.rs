//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use covacap::capacity::{
    attainment_residual, prop2_sampling_oracle, prop5_sampling_oracle, qubit_capacity_from_lambdas,
    t_eigenbasis_states, theorem_capacity, weak_additivity_check,
};
use covacap::channel::{
    conditional_expectation, qc_reference, twirl_identity_check, GroupDistribution,
    MixedUnitaryChannel,
};
use covacap::cli::{parse_config, RunReport};
use covacap::majorization::find_admissible_subgroup;
use covacap::numerics::{random_density_matrix_with, random_pure_state, shannon_entropy, LogBase};
use covacap::rational::{ratio, Rational};
use covacap::representation::builtin::{
    dihedral_z2n, heisenberg_weyl, klein_z4, pauli, trivial, Construction,
};
use covacap::representation::{cocycle_roots_check, commutant_dimension, verify_cocycle_identity};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bundled(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn qutrit() -> MixedUnitaryChannel {
    parse_config(bundled("example2.json"))
        .unwrap()
        .resolve()
        .unwrap()
        .channel
}

fn channel(c: &Construction, weight: impl Fn(usize, usize) -> Rational) -> MixedUnitaryChannel {
    let (s, t) = (c.acting.order(), c.abelian.order());
    let mut weights = vec![ratio(0, 1); s * t];
    for h in 0..s {
        for k in 0..t {
            weights[c.element(h, k)] = weight(h, k);
        }
    }
    let dist = GroupDistribution::new(Arc::clone(c.rep.group()), weights).unwrap();
    MixedUnitaryChannel::new(c.rep.clone(), dist).unwrap()
}

/// Decreasing blocks of equal weights: `1/8, 1/16, 3/64, 1/64` per acting element.
fn staircase(h: usize, _k: usize) -> Rational {
    [ratio(1, 8), ratio(1, 16), ratio(3, 64), ratio(1, 64)][h].clone()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_bin(args: &[&str]) -> (Option<i32>, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_covacap"))
        .args(args)
        .env_remove("COVACAP_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        start.elapsed(),
    )
}

fn golden_value() -> Outcome {
    let path = bundled("example2.json");
    let (code, stdout, elapsed) =
        run_bin(&["capacity", path.to_str().unwrap(), "--format", "json"]);
    ensure(code == Some(0), format!("exit code {code:?}"))?;
    let report: RunReport = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
    let c = report.capacity.ok_or("no capacity section")?;
    let closed =
        3f64.log2() - 0.5 * 2f64.log2() - (1.0 / 3.0) * 3f64.log2() - (1.0 / 6.0) * 6f64.log2();
    let value = c.capacity.ok_or("theorem not applied")?;
    ensure(
        (value - closed).abs() < 1e-12,
        format!("C = {value}, closed form {closed}"),
    )?;
    ensure((value - 0.125_814_6).abs() < 5e-8, format!("C = {value}"))?;
    let residual = c.cross_check_residual.ok_or("no cross-check")?;
    ensure(
        residual <= 1e-6,
        format!("optimizer disagrees by {residual:e}"),
    )?;
    ensure(
        elapsed < Duration::from_secs(10),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "C = {value:.7} bits, optimizer residual {residual:.1e}, {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn subgroup_resolution() -> Outcome {
    let hw = heisenberg_weyl(3);
    let phi = qutrit();
    let search = find_admissible_subgroup(phi.rep(), phi.dist()).map_err(|e| e.to_string())?;
    let find = |members: &[usize]| {
        search
            .candidates
            .iter()
            .find(|c| c.subgroup.members() == members)
            .ok_or(format!("subgroup {members:?} not enumerated"))
    };
    let w = find(hw.w_subgroup().members())?;
    let v = find(hw.v_subgroup().members())?;
    let mut w_p = w.cosets.p_exact().to_vec();
    w_p.sort_by(|a, b| b.cmp(a));
    ensure(
        w_p == [ratio(11, 24), ratio(7, 24), ratio(6, 24)],
        format!("W-grouping p = {w_p:?}"),
    )?;
    ensure(!w.condition.holds, "W-grouping satisfies the condition")?;
    let mut v_p = v.cosets.p_exact().to_vec();
    v_p.sort_by(|a, b| b.cmp(a));
    ensure(
        v_p == [ratio(1, 2), ratio(1, 3), ratio(1, 6)],
        format!("V-grouping p = {v_p:?}"),
    )?;
    ensure(v.condition.holds, "V-grouping fails the condition")?;
    Ok("W-grouping (11/24, 7/24, 1/4) fails, V-grouping (1/2, 1/3, 1/6) passes".into())
}

fn qubit_consistency() -> Outcome {
    let phi = channel(&pauli(), |h, k| {
        if (h, k) == (0, 0) {
            ratio(7, 10)
        } else {
            ratio(1, 10)
        }
    });
    let search = find_admissible_subgroup(phi.rep(), phi.dist()).map_err(|e| e.to_string())?;
    let chosen = search.chosen().ok_or("no admissible subgroup")?;
    let theorem = theorem_capacity(2, &chosen.cosets.p(), LogBase::Two).capacity;
    let lambdas = qubit_capacity_from_lambdas(0.6, 0.6, 0.6).map_err(|e| e.to_string())?;
    ensure(
        (theorem - lambdas).abs() <= 1e-12,
        format!("{theorem} vs {lambdas}"),
    )?;
    ensure((theorem - 0.278_072).abs() < 1e-6, format!("C = {theorem}"))?;
    Ok(format!(
        "theorem {theorem:.12}, lambda formula {lambdas:.12}"
    ))
}

fn trivial_limits() -> Outcome {
    let reps = [
        (2, pauli()),
        (3, heisenberg_weyl(3)),
        (4, heisenberg_weyl(4)),
        (8, heisenberg_weyl(8)),
    ];
    for (n, c) in reps {
        let order = c.rep.group().order() as i64;
        let point = channel(&c, |h, k| ratio(i64::from(h == 0 && k == 0), 1));
        let uniform = channel(&c, |_, _| ratio(1, order));
        for (label, phi) in [("point mass", &point), ("uniform", &uniform)] {
            let search =
                find_admissible_subgroup(phi.rep(), phi.dist()).map_err(|e| e.to_string())?;
            let chosen = search
                .chosen()
                .ok_or(format!("n = {n}, {label}: no admissible subgroup"))?;
            let cap = theorem_capacity(n, &chosen.cosets.p(), LogBase::Two).capacity;
            if label == "point mass" {
                ensure(
                    cap == (n as f64).log2(),
                    format!("n = {n}: point mass gives {cap}"),
                )?;
            } else {
                ensure(cap.abs() <= 1e-12, format!("n = {n}: uniform gives {cap}"))?;
            }
        }
    }
    Ok("point mass gives log2 n exactly, uniform gives 0, n in {2, 3, 4, 8}".into())
}

fn prop2_oracle() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    let cases: Vec<(&str, covacap::Result<MixedUnitaryChannel>)> = vec![
        (
            "pauli",
            Ok(channel(&pauli(), |h, k| {
                if (h, k) == (0, 0) {
                    ratio(7, 10)
                } else {
                    ratio(1, 10)
                }
            })),
        ),
        ("heisenberg_weyl(3)", Ok(qutrit())),
        ("klein_z4", Ok(channel(&klein_z4(), staircase))),
        (
            "dihedral_z2n(2)",
            dihedral_z2n(2).map(|c| channel(&c, staircase)),
        ),
    ];
    for (seed, (name, phi)) in cases.into_iter().enumerate() {
        let phi = match phi {
            Ok(phi) => phi,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let search = match find_admissible_subgroup(phi.rep(), phi.dist()) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("{name} not admissible: {e}"));
                continue;
            }
        };
        let Some(chosen) = search.chosen() else {
            failures.push(format!("{name}: no admissible subgroup"));
            continue;
        };
        let p = chosen.cosets.p();
        let report = prop2_sampling_oracle(&phi, &p, 1000, seed as u64);
        let basis = t_eigenbasis_states(phi.rep(), &chosen.subgroup).map_err(|e| e.to_string())?;
        let attainment = attainment_residual(&phi, &basis, &p);
        if report.violations > 0 || attainment > 1e-10 {
            failures.push(format!(
                "{name}: {} violations, attainment {attainment:.1e}",
                report.violations
            ));
        } else {
            lines.push(format!("{name} ok"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    if failures.is_empty() {
        Ok(format!(
            "{}, {:.1} s",
            lines.join(", "),
            elapsed.as_secs_f64()
        ))
    } else {
        Err(format!(
            "{}; passed: {}",
            failures.join("; "),
            lines.join(", ")
        ))
    }
}

fn weak_additivity() -> Outcome {
    let start = Instant::now();
    let phi = qutrit();
    let search = find_admissible_subgroup(phi.rep(), phi.dist()).map_err(|e| e.to_string())?;
    let chosen = search.chosen().ok_or("no admissible subgroup")?;
    let p = chosen.cosets.p();
    let report = prop5_sampling_oracle(&phi, &phi, &p, &p, 200, 6).map_err(|e| e.to_string())?;
    ensure(
        report.violations == 0,
        format!("{} violations", report.violations),
    )?;
    let basis = t_eigenbasis_states(phi.rep(), &chosen.subgroup).map_err(|e| e.to_string())?;
    let wa = weak_additivity_check(&phi, &p, &basis, 32, 6, LogBase::Two);
    let two_h = 2.0 * shannon_entropy(&p.to_f64(), LogBase::Two);
    ensure(
        (wa.min_entropy - two_h).abs() <= 1e-6,
        format!("min entropy {} vs 2H(p) {two_h}", wa.min_entropy),
    )?;
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(120),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "200 samples, 0 violations; min entropy {:.9} = 2 H(p) {two_h:.9}; {:.1} s",
        wa.min_entropy,
        elapsed.as_secs_f64()
    ))
}

fn representation_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut constructions = vec![pauli(), heisenberg_weyl(3), klein_z4()];
    match dihedral_z2n(4) {
        Ok(c) => constructions.push(c),
        Err(e) => failures.push(format!("dihedral_z2n(4): {e}")),
    }
    match dihedral_z2n(2) {
        Ok(c) => constructions.push(c),
        Err(e) => failures.push(format!("dihedral_z2n(2): {e}")),
    }
    for c in &constructions {
        let d = commutant_dimension(&c.rep);
        if d != 1 {
            failures.push(format!("{} has commutant dimension {d}", c.name));
        }
    }
    for n in [2, 3, 4] {
        let d = commutant_dimension(&trivial(n).rep);
        if d != n * n {
            failures.push(format!("trivial({n}) has commutant dimension {d}"));
        }
    }
    constructions.extend([heisenberg_weyl(4), heisenberg_weyl(5), trivial(3)]);
    for c in &constructions {
        let group = c.rep.group();
        if !verify_cocycle_identity(c.rep.cocycle(), group).holds {
            failures.push(format!("{}: cocycle identity fails", c.name));
        }
        if !cocycle_roots_check(c.rep.cocycle(), group.order()) {
            failures.push(format!("{}: cocycle values are not |G|-th roots", c.name));
        }
    }
    if failures.is_empty() {
        Ok("commutants, control rep, cocycle identity and roots all as expected".into())
    } else {
        Err(failures.join("; "))
    }
}

fn conditional_expectation_identity() -> Outcome {
    let phi = qutrit();
    let search = find_admissible_subgroup(phi.rep(), phi.dist()).map_err(|e| e.to_string())?;
    let chosen = search.chosen().ok_or("no admissible subgroup")?;
    let reference =
        qc_reference(&phi, &chosen.subgroup, &chosen.cosets).map_err(|e| e.to_string())?;
    let t_matrices: Vec<_> = chosen
        .subgroup
        .members()
        .iter()
        .map(|&t| phi.rep().matrix(t).clone())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rho = random_density_matrix_with(3, &mut rng);
        let out = reference.apply_matrix(rho.matrix());
        worst = worst.max(conditional_expectation(&t_matrices, &out).distance(&out));
    }
    ensure(worst <= 1e-10, format!("max residual {worst:e}"))?;
    Ok(format!("100 states, max residual {worst:.1e}"))
}

fn twirl() -> Outcome {
    let phi = qutrit();
    let mut worst: f64 = 0.0;
    for seed in 0..50 {
        let r = twirl_identity_check(&phi, &phi, &random_pure_state(9, 900 + seed))
            .map_err(|e| e.to_string())?;
        ensure(r.spanning, "representation does not span")?;
        worst = worst.max(r.residual);
    }
    ensure(worst <= 1e-8, format!("max residual {worst:e}"))?;
    Ok(format!("50 states, max residual {worst:.1e}"))
}

fn determinism() -> Outcome {
    let path = bundled("example2.json");
    let args = [
        "capacity",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--seed",
        "17",
    ];
    let (a_code, a, _) = run_bin(&args);
    let (b_code, b, _) = run_bin(&args);
    ensure(
        a_code == Some(0) && b_code == Some(0),
        format!("exit codes {a_code:?}, {b_code:?}"),
    )?;
    ensure(a == b, "reports differ")?;
    ensure(!a.contains("timings"), "timings leaked into the report")?;
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden value", golden_value),
        ("subgroup resolution", subgroup_resolution),
        ("qubit consistency", qubit_consistency),
        ("trivial limits", trivial_limits),
        ("single-use majorization oracle", prop2_oracle),
        ("weak additivity at level 2", weak_additivity),
        ("representation suite", representation_suite),
        (
            "conditional expectation identity",
            conditional_expectation_identity,
        ),
        ("twirl identity", twirl),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
