//! JSON channel configs and the `describe`, `capacity` and `verify` commands.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::capacity::{
    attainment_residual, full_capacity_pipeline, prop2_sampling_oracle, prop4_sampling_oracle,
    prop5_sampling_oracle, t_eigenbasis_states, weak_additivity_check, CandidateSummary,
    CapacityReport, PipelineOptions, SamplingReport, WeakAdditivityReport,
};
use crate::channel::{
    covariance_check, twirl_identity_check, CovarianceReport, GroupDistribution,
    MixedUnitaryChannel,
};
use crate::error::{Error, Result};
use crate::group::{enumerate_normal_abelian_subgroups, quotient, FiniteGroup};
use crate::majorization::{check_ordering_condition, coset_distribution, find_admissible_subgroup};
use crate::numerics::{random_pure_state_with, LogBase};
use crate::rational::{self, format_rational, parse_rational, Rational};
use crate::representation::builtin::{
    dihedral_z2n, heisenberg_weyl, klein_z4, pauli, Construction,
};
use crate::representation::{
    cocycle_roots_check, commutant_dimension, restriction_is_unitary_rep, spanning_check,
    verify_cocycle_identity,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const SEED_ENV: &str = "COVACAP_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INAPPLICABLE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupSpec,
    pub distribution: Vec<WeightEntry>,
    #[serde(default)]
    pub options: RunOptions,
}

/// A builtin family, or `"custom"` with explicit tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Cayley table of the acting group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_cayley: Option<Vec<Vec<usize>>>,
    /// Cayley table of the abelian group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_cayley: Option<Vec<Vec<usize>>>,
    /// `characters[j][t]` as a fraction of a turn, `"num/den"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<Vec<String>>>,
    /// `action[s][j] = s(j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
}

/// Weight of `(h, k)`, the element acting by `h` then multiplied by character index `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub element: [usize; 2],
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunOptions {
    pub log_base: LogBase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub restarts: usize,
    pub samples: usize,
    pub tensor_level: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            log_base: LogBase::Two,
            seed: None,
            restarts: 32,
            samples: 1000,
            tensor_level: 1,
        }
    }
}

/// Command-line overrides, applied over the config options.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub samples: Option<usize>,
    pub base: Option<LogBase>,
}

/// Command line, then `COVACAP_SEED`, then the config, then 0.
pub fn resolve_seed(cli: Option<u64>, env: Option<&str>, config: Option<u64>) -> Result<u64> {
    if let Some(seed) = cli {
        return Ok(seed);
    }
    if let Some(raw) = env.filter(|s| !s.trim().is_empty()) {
        return raw.trim().parse().map_err(|_| {
            Error::Validation(format!("{SEED_ENV}={raw:?} is not an unsigned integer"))
        });
    }
    Ok(config.unwrap_or(0))
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<ChannelConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let config = parse_config_str(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}:{location}", path.display()),
            message,
        },
        other => other,
    })?;
    Ok(config)
}

pub fn parse_config_str(text: &str) -> Result<ChannelConfig> {
    let config: ChannelConfig = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    config.resolve()?;
    Ok(config)
}

/// A config turned into a representation and channel.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub construction: Construction,
    pub channel: MixedUnitaryChannel,
}

impl ChannelConfig {
    pub fn resolve(&self) -> Result<Resolved> {
        let construction = self.group.build()?;
        let (s, t) = (construction.acting.order(), construction.abelian.order());
        let mut weights = vec![Rational::zero(); s * t];
        let mut seen = vec![false; s * t];
        for entry in &self.distribution {
            let [h, k] = entry.element;
            if h >= s || k >= t {
                return Err(Error::Validation(format!(
                    "element [{h}, {k}] is outside the {s} x {t} product group"
                )));
            }
            let g = construction.element(h, k);
            if std::mem::replace(&mut seen[g], true) {
                return Err(Error::Validation(format!(
                    "element [{h}, {k}] is listed twice"
                )));
            }
            let w = parse_rational(&entry.weight)?;
            if !rational::is_probability(&w) {
                return Err(Error::Validation(format!(
                    "weight {} of [{h}, {k}] is not in [0, 1]",
                    entry.weight
                )));
            }
            weights[g] = w;
        }
        let total = rational::sum(&weights);
        if total != rational::integer(1) {
            return Err(Error::Validation(format!(
                "weights sum to {}, not 1",
                format_rational(&total)
            )));
        }
        let dist = GroupDistribution::new(Arc::clone(construction.rep.group()), weights)?;
        let channel = MixedUnitaryChannel::new(construction.rep.clone(), dist)?;
        if !(1..=2).contains(&self.options.tensor_level) {
            return Err(Error::Validation(format!(
                "tensor_level {} is not supported (1 or 2)",
                self.options.tensor_level
            )));
        }
        Ok(Resolved {
            construction,
            channel,
        })
    }

    fn with_overrides(
        &self,
        overrides: &Overrides,
        env_seed: Option<&str>,
    ) -> Result<(RunOptions, u64)> {
        let mut options = self.options.clone();
        let seed = resolve_seed(overrides.seed, env_seed, options.seed)?;
        options.seed = Some(seed);
        if let Some(r) = overrides.restarts {
            options.restarts = r;
        }
        if let Some(s) = overrides.samples {
            options.samples = s;
        }
        if let Some(b) = overrides.base {
            options.log_base = b;
        }
        Ok((options, seed))
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<Construction> {
        let need_n = || {
            self.n.filter(|&n| n >= 1).ok_or_else(|| {
                Error::Validation(format!(
                    "family {:?} needs a positive parameter n",
                    self.family
                ))
            })
        };
        match self.family.as_str() {
            "pauli" => Ok(pauli()),
            "heisenberg_weyl" => Ok(heisenberg_weyl(need_n()?)),
            "klein_z4" => Ok(klein_z4()),
            "dihedral_z2n" => dihedral_z2n(need_n()?),
            "custom" => {
                let missing = |field: &str| Error::Validation(format!("custom family needs {field:?}"));
                let s = FiniteGroup::from_cayley_table(self.s_cayley.as_ref().ok_or_else(|| missing("s_cayley"))?)?;
                let t = FiniteGroup::from_cayley_table(self.t_cayley.as_ref().ok_or_else(|| missing("t_cayley"))?)?;
                let turns = self
                    .characters
                    .as_ref()
                    .ok_or_else(|| missing("characters"))?
                    .iter()
                    .map(|row| row.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let action = self.action.clone().ok_or_else(|| missing("action"))?;
                Construction::assemble("custom", s, t, action, &turns)
            }
            other => Err(Error::Validation(format!(
                "unknown family {other:?}; expected pauli, heisenberg_weyl, klein_z4, dihedral_z2n or custom"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub config: ChannelConfig,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub describe: Option<DescribeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<CapacityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyReport>,
    pub warnings: Vec<String>,
    /// Wall-clock milliseconds per stage; excluded from [`RunReport::to_json`].
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<(String, f64)>,
}

impl RunReport {
    fn new(command: &str, config: &ChannelConfig, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config: config.clone(),
            seed,
            describe: None,
            capacity: None,
            verify: None,
            warnings: Vec::new(),
            timings: Vec::new(),
        }
    }

    /// Deterministic JSON: everything except timings.
    pub fn to_json(&self) -> String {
        let stripped = RunReport {
            timings: Vec::new(),
            ..self.clone()
        };
        serde_json::to_string_pretty(&stripped).expect("report serializes")
    }

    pub fn to_json_with_timings(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self
            .config
            .name
            .as_deref()
            .unwrap_or(&self.config.group.family);
        let _ = writeln!(out, "{} {name} (seed {})", self.command, self.seed);
        if let Some(d) = &self.describe {
            let _ = writeln!(out, "group order      {}", d.group_order);
            let _ = writeln!(out, "dimension        {}", d.dim);
            let _ = writeln!(
                out,
                "irreducible      {} (commutant dimension {})",
                d.irreducible, d.commutant_dimension
            );
            let _ = writeln!(out, "cocycle identity {}", d.cocycle_identity);
            let _ = writeln!(
                out,
                "cocycle roots    {} (N = {})",
                d.cocycle_roots, d.group_order
            );
            let _ = writeln!(out, "spanning         {}", d.spanning);
            let _ = writeln!(out, "candidate subgroups: {}", d.candidates.len());
            for c in &d.candidates {
                write_candidate(&mut out, c);
            }
        }
        if let Some(c) = &self.capacity {
            let unit = c.log_base.unit();
            let f = &c.flags;
            let _ = writeln!(
                out,
                "flags: irreducible={} restriction_unitary={} condition_holds={} spanning={}",
                f.irreducible, f.restriction_unitary, f.condition_holds, f.spanning
            );
            if let (Some(t), Some(p)) = (&c.subgroup, &c.p) {
                let _ = writeln!(out, "subgroup {t:?}, p = ({})", p.join(", "));
            }
            match c.capacity {
                Some(cap) => {
                    let _ = writeln!(out, "C = C1 = {cap:.7} {unit}");
                    if let Some(r) = c.cross_check_residual {
                        let _ = writeln!(out, "optimizer cross-check residual {r:.2e}");
                    }
                }
                None => {
                    let _ = writeln!(out, "theorem not applicable");
                    let _ = writeln!(
                        out,
                        "C1 >= {:.7} {unit} (numerical)",
                        c.numerical.capacity_estimate
                    );
                }
            }
            if let Some(l2) = &c.level2 {
                write_level2(&mut out, l2);
            }
        }
        if let Some(v) = &self.verify {
            let _ = writeln!(out, "level {}", v.level);
            for (name, r) in [
                ("prop2", &v.prop2),
                ("prop4", &v.prop4),
                ("prop5", &v.prop5),
            ] {
                if let Some(r) = r {
                    let _ = writeln!(
                        out,
                        "{name}: {} samples, {} violations, max excess {}",
                        r.samples,
                        r.violations,
                        r.max_excess.map_or("n/a".into(), |e| format!("{e:.2e}"))
                    );
                }
            }
            if let Some(a) = v.attainment_residual {
                let _ = writeln!(out, "eigenbasis attainment residual {a:.2e}");
            }
            if let Some(c) = &v.covariance {
                let _ = writeln!(
                    out,
                    "covariance: {} (max residual {:.2e})",
                    c.holds, c.max_residual
                );
            }
            if let Some(t) = &v.twirl {
                let _ = writeln!(
                    out,
                    "twirl identity: {} states, max residual {:.2e}",
                    t.states, t.max_residual
                );
            }
            if let Some(l2) = &v.weak_additivity {
                write_level2(&mut out, l2);
            }
            let _ = writeln!(out, "passed: {}", v.passed);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn write_candidate(out: &mut String, c: &CandidateSummary) {
    let _ = writeln!(
        out,
        "  {:?}: p = ({}), restriction unitary {}, condition {}",
        c.members,
        c.p.join(", "),
        c.restriction_unitary,
        c.condition_holds
    );
}

fn write_level2(out: &mut String, l2: &WeakAdditivityReport) {
    let _ = writeln!(
        out,
        "level 2: min entropy {:.7}, bound {:.7}, gap {:.2e}, holds {}",
        l2.min_entropy, l2.bound, l2.gap, l2.holds
    );
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescribeReport {
    pub group_order: usize,
    pub dim: usize,
    pub commutant_dimension: usize,
    pub irreducible: bool,
    pub cocycle_identity: bool,
    pub cocycle_witness: Option<[usize; 3]>,
    pub cocycle_roots: bool,
    pub spanning: bool,
    pub candidates: Vec<CandidateSummary>,
}

pub fn describe(resolved: &Resolved) -> Result<DescribeReport> {
    let phi = &resolved.channel;
    let rep = phi.rep();
    let group = rep.group();
    let commutant = commutant_dimension(rep);
    let cocycle = verify_cocycle_identity(rep.cocycle(), group);
    let mut candidates = Vec::new();
    for subgroup in enumerate_normal_abelian_subgroups(group, rep.dim()) {
        let cosets = coset_distribution(phi.dist(), &quotient(group, &subgroup)?);
        let condition = check_ordering_condition(&cosets);
        candidates.push(CandidateSummary {
            members: subgroup.members().to_vec(),
            p: cosets.p_exact().iter().map(format_rational).collect(),
            coset_representatives: (0..cosets.p_exact().len())
                .map(|j| cosets.representative(j))
                .collect(),
            restriction_unitary: restriction_is_unitary_rep(rep, &subgroup),
            condition_holds: condition.holds,
            tie_permutations_tried: condition.tie_permutations_tried,
            witness: condition.witness,
        });
    }
    Ok(DescribeReport {
        group_order: group.order(),
        dim: rep.dim(),
        commutant_dimension: commutant,
        irreducible: commutant == 1,
        cocycle_identity: cocycle.holds,
        cocycle_witness: cocycle.witness,
        cocycle_roots: cocycle_roots_check(rep.cocycle(), group.order()),
        spanning: spanning_check(rep),
        candidates,
    })
}

pub fn cmd_describe(
    config: &ChannelConfig,
    overrides: &Overrides,
    env_seed: Option<&str>,
) -> Result<RunReport> {
    let (_, seed) = config.with_overrides(overrides, env_seed)?;
    let start = Instant::now();
    let resolved = config.resolve()?;
    let mut report = RunReport::new("describe", config, seed);
    report.describe = Some(describe(&resolved)?);
    report.timings.push(("describe".into(), elapsed_ms(start)));
    Ok(report)
}

pub fn cmd_capacity(
    config: &ChannelConfig,
    overrides: &Overrides,
    env_seed: Option<&str>,
) -> Result<(RunReport, i32)> {
    let (options, seed) = config.with_overrides(overrides, env_seed)?;
    let start = Instant::now();
    let resolved = config.resolve()?;
    let capacity = full_capacity_pipeline(
        &resolved.channel,
        &PipelineOptions {
            base: options.log_base,
            seed,
            restarts: options.restarts,
            tensor_level: options.tensor_level,
        },
    )?;
    let code = capacity_exit_code(&capacity);
    let mut report = RunReport::new("capacity", config, seed);
    if index_convention_differs(&resolved, &capacity) {
        report.warnings.push(
            "the admissible subgroup is not the W-subgroup {(e, k)}; p sums weights over the acting index".into(),
        );
    }
    report.capacity = Some(capacity);
    report.timings.push(("capacity".into(), elapsed_ms(start)));
    Ok((report, code))
}

fn capacity_exit_code(c: &CapacityReport) -> i32 {
    match (c.theorem_applicable, c.cross_check_passed) {
        (true, Some(true)) => EXIT_OK,
        (true, _) => EXIT_ERROR,
        (false, _) => EXIT_INAPPLICABLE,
    }
}

fn index_convention_differs(resolved: &Resolved, c: &CapacityReport) -> bool {
    c.theorem_applicable
        && c.subgroup.as_deref() != Some(resolved.construction.w_subgroup().members())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwirlSummary {
    pub states: usize,
    pub max_residual: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub level: usize,
    pub subgroup: Vec<usize>,
    pub p: Vec<String>,
    pub prop2: Option<SamplingReport>,
    pub attainment_residual: Option<f64>,
    pub covariance: Option<CovarianceReport>,
    pub prop4: Option<SamplingReport>,
    pub prop5: Option<SamplingReport>,
    pub twirl: Option<TwirlSummary>,
    pub weak_additivity: Option<WeakAdditivityReport>,
    pub passed: bool,
}

const ATTAINMENT_TOL: f64 = 1e-10;

pub fn cmd_verify(
    config: &ChannelConfig,
    level: usize,
    overrides: &Overrides,
    env_seed: Option<&str>,
) -> Result<(RunReport, i32)> {
    if !(1..=2).contains(&level) {
        return Err(Error::Validation(format!(
            "verify level {level} is not supported (1 or 2)"
        )));
    }
    let (options, seed) = config.with_overrides(overrides, env_seed)?;
    let start = Instant::now();
    let resolved = config.resolve()?;
    let phi = &resolved.channel;
    let mut report = RunReport::new("verify", config, seed);

    let search = match find_admissible_subgroup(phi.rep(), phi.dist()) {
        Ok(s) => s,
        Err(Error::NotIrreducible {
            commutant_dimension,
        }) => {
            report.warnings.push(format!(
                "representation is reducible (commutant dimension {commutant_dimension})"
            ));
            return Ok((report, EXIT_INAPPLICABLE));
        }
        Err(e) => return Err(e),
    };
    let Some(chosen) = search.chosen() else {
        report
            .warnings
            .push("no admissible subgroup; the oracles have nothing to verify".into());
        return Ok((report, EXIT_INAPPLICABLE));
    };
    let p = chosen.cosets.p();
    let basis = t_eigenbasis_states(phi.rep(), &chosen.subgroup)?;
    let samples = options.samples;
    if samples == 0 {
        report
            .warnings
            .push("samples = 0: sampling suites are empty".into());
    }
    let spanning = spanning_check(phi.rep());
    if !spanning {
        report
            .warnings
            .push("unitaries do not span the matrix algebra; tensor-level oracles skipped".into());
    }

    let prop2 = prop2_sampling_oracle(phi, &p, samples, seed);
    let attainment = attainment_residual(phi, &basis, &p);
    let covariance = covariance_check(phi, samples.min(100), seed.wrapping_add(1));
    let prop4 = spanning
        .then(|| prop4_sampling_oracle(phi, &p, phi.dim(), samples, seed.wrapping_add(2)))
        .transpose()?;
    let mut verify = VerifyReport {
        level,
        subgroup: chosen.subgroup.members().to_vec(),
        p: chosen
            .cosets
            .p_exact()
            .iter()
            .map(format_rational)
            .collect(),
        prop2: Some(prop2),
        attainment_residual: Some(attainment),
        covariance: Some(covariance),
        prop4,
        prop5: None,
        twirl: None,
        weak_additivity: None,
        passed: false,
    };
    if level >= 2 && spanning {
        verify.prop5 = Some(prop5_sampling_oracle(
            phi,
            phi,
            &p,
            &p,
            samples,
            seed.wrapping_add(3),
        )?);
        let mut rng =
            <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed.wrapping_add(4));
        let states = samples.min(50);
        let mut twirl = TwirlSummary {
            states,
            max_residual: 0.0,
            holds: true,
        };
        for _ in 0..states {
            let f = random_pure_state_with(phi.dim() * phi.dim(), &mut rng);
            let r = twirl_identity_check(phi, phi, &f)?;
            twirl.max_residual = twirl.max_residual.max(r.residual);
            twirl.holds &= r.holds;
        }
        verify.twirl = Some(twirl);
        verify.weak_additivity = Some(weak_additivity_check(
            phi,
            &p,
            &basis,
            options.restarts,
            seed.wrapping_add(5),
            options.log_base,
        ));
    }
    verify.passed = verify.prop2.as_ref().is_none_or(SamplingReport::passed)
        && attainment <= ATTAINMENT_TOL
        && verify.covariance.as_ref().is_none_or(|c| c.holds)
        && verify.prop4.as_ref().is_none_or(SamplingReport::passed)
        && verify.prop5.as_ref().is_none_or(SamplingReport::passed)
        && verify.twirl.as_ref().is_none_or(|t| t.holds)
        && verify.weak_additivity.as_ref().is_none_or(|w| w.holds);
    let code = if verify.passed { EXIT_OK } else { EXIT_ERROR };
    report.verify = Some(verify);
    report.timings.push(("verify".into(), elapsed_ms(start)));
    Ok((report, code))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
