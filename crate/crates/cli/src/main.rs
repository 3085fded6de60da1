//! `hypersing`: command-line front end to the invariant library.
//!
//! Every subcommand prints one JSON document (or JSON lines for `catalog`)
//! to stdout or to `--out`. Exit codes: 0 on success, 1 when verification
//! fails or a file cannot be written, 2 on bad arguments.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hypersing::catalog::{build_catalog, grid_instances, to_json_lines, to_pretty_json, GridFamily};
use hypersing::families::{
    betti_numbers, canonical_self_intersection, delta_closed_form, kollar_weight_system,
    milnor_number_v, milnor_number_w, phi, v_singularity_weights, w_singularity_weights,
};
use hypersing::lambda_ring::DEFAULT_MAX_EXPAND_DEGREE;
use hypersing::milnor_orlik::parse_rational;
use hypersing::rings::{middle_signature, rational_homotopy_class, real_homotopy_class, w_quadric_parameter, RingSpec};
use hypersing::sullivan::{ellipticity_report, homotopy_ranks};
use hypersing::threefolds::{
    fn_homotopy_equivalent, gl2z_equivalent, hirzebruch_diffeomorphic, pe_cubic_form, threefold_report,
};
use hypersing::verify::{run_verify, Perturbation, VerifyConfig};
use hypersing::{minimal_model, milnor_number, monodromy_char_poly, FamilyInstance, LambdaProduct, WeightSystem};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hypersing", version, about = "Exact invariants of singular hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "W", alias = "w")]
    W,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(short = 'n')]
    n: Option<u32>,
    #[arg(short = 'd')]
    d: Option<u32>,
    /// Exponents a_0,...,a_{n+1} of the H family.
    #[arg(long, value_delimiter = ',')]
    a: Vec<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Monodromy characteristic polynomial of a family singularity or a weight system.
    Monodromy {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Comma-separated rational weights, e.g. 2,4,8/3.
        #[arg(long, conflicts_with_all = ["family", "a"])]
        weights: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_EXPAND_DEGREE)]
        max_expand_degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Weight system of the singular point of a family member.
    Weights {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Solve the cyclic weight system of H(a).
    Kollar {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Betti numbers of a family member.
    Betti {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Multiplication table of a built-in graded ring.
    Ring {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        output: Output,
    },
    /// Inertia of the middle-degree pairing of a built-in ring.
    Signature {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        output: Output,
    },
    /// Real and rational homotopy class of a twisted quadric.
    HomotopyClass {
        /// Parameter a of the twisted quadric.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "n")]
        a: Option<String>,
        /// Use the parameter of the quadric modelling W_n (n even).
        #[arg(short = 'n')]
        n: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Minimal Sullivan model up to a degree cutoff, with an ellipticity report.
    Model {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        cutoff: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Cubic form and classification data of P(O + O(n)).
    Threefolds {
        #[arg(short = 'n')]
        n: u64,
        /// Compare with P(O + O(m)).
        #[arg(short = 'm')]
        m: Option<u64>,
        /// Entry bound of the GL2(Z) search.
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Catalog records over a parameter grid, one JSON object per line.
    Catalog {
        #[arg(long)]
        family: Family,
        /// n values: "2,4" or "2..6".
        #[arg(short = 'n')]
        n: Option<String>,
        /// d values: "2,4" or "2..6".
        #[arg(short = 'd')]
        d: Option<String>,
        #[arg(long, value_delimiter = ',')]
        a: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_EXPAND_DEGREE)]
        max_expand_degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run every identity over the given ranges.
    Verify {
        #[arg(long, default_value_t = 0)]
        min_n: u32,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value_t = 2)]
        min_d: u32,
        #[arg(long, default_value_t = 8)]
        max_d: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_EXPAND_DEGREE)]
        max_expand_degree: usize,
        /// Corrupt one recurrence exponent to exercise the failure path.
        #[arg(long, hide = true)]
        perturb: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] anyhow::Error),
}

impl From<hypersing::Error> for CliError {
    fn from(e: hypersing::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl InstanceArgs {
    fn instance(&self) -> CliResult<FamilyInstance> {
        let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| usage(format!("{flag} is required")));
        let inst = match self.family {
            Some(Family::H) => FamilyInstance::h(self.a.clone())?,
            Some(Family::V) => FamilyInstance::v(need(self.n, "-n")?, need(self.d, "-d")?)?,
            Some(Family::W) => FamilyInstance::w(need(self.n, "-n")?, need(self.d, "-d")?)?,
            None if !self.a.is_empty() => FamilyInstance::h(self.a.clone())?,
            None => return Err(usage("--family is required")),
        };
        Ok(inst)
    }
}

fn emit(value: &Value, output: &Output) -> CliResult<()> {
    let mut text = if output.pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .context("serializing output")?;
    text.push('\n');
    write_text(&text, output)
}

fn write_text(text: &str, output: &Output) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(v).context("serializing output")?)
}

fn parse_weights(s: &str) -> CliResult<WeightSystem> {
    let ws = s.split(',').map(parse_rational).collect::<hypersing::Result<Vec<_>>>()?;
    Ok(WeightSystem::new(ws)?)
}

fn parse_values(s: &str) -> CliResult<Vec<u32>> {
    let bad = || usage(format!("bad range '{s}': expected \"a,b,c\" or \"a..b\""));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        s.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect()
    }
}

fn cone_weights(inst: &FamilyInstance) -> CliResult<Option<WeightSystem>> {
    let ws = match inst {
        FamilyInstance::H { a } => kollar_weight_system(a)?.cone_weights(),
        FamilyInstance::V { n, d } => optional_weights(v_singularity_weights(*n, *d))?,
        FamilyInstance::W { n, d } => optional_weights(w_singularity_weights(*n, *d))?,
    };
    Ok(ws)
}

fn optional_weights(r: hypersing::Result<WeightSystem>) -> CliResult<Option<WeightSystem>> {
    match r {
        Ok(ws) => Ok(Some(ws)),
        Err(hypersing::Error::SmoothGerm(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn monodromy_report(p: &LambdaProduct, mu: Option<String>, cap: usize) -> CliResult<Value> {
    let factors: serde_json::Map<String, Value> =
        p.factors().iter().map(|(m, e)| (m.to_string(), json!(e))).collect();
    let value_at_one = p.value_at_one().map(|v| v.to_string()).ok();
    let expanded = match p.expand(cap) {
        Ok(poly) => json!(poly.coefficients().iter().map(ToString::to_string).collect::<Vec<_>>()),
        Err(hypersing::Error::TooLarge { .. }) => json!(hypersing::catalog::FLAG_DEGREE_CAP),
        Err(e) => json!(format!("not a polynomial: {e}")),
    };
    Ok(json!({
        "unit": p.unit(),
        "factors": factors,
        "degree": p.degree().to_string(),
        "value_at_one": value_at_one,
        "milnor_number": mu,
        "coefficients": expanded,
    }))
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Monodromy { inst, weights, max_expand_degree, output } => {
            let (input, p, mu) = if let Some(w) = weights {
                if inst.n.is_some() || inst.d.is_some() {
                    return Err(usage("--weights cannot be combined with -n or -d"));
                }
                let ws = parse_weights(&w)?;
                let mu = milnor_number(&ws)?.to_string();
                (json!({ "weights": ws }), monodromy_char_poly(&ws)?, Some(mu))
            } else {
                let instance = inst.instance()?;
                let (p, mu) = match &instance {
                    FamilyInstance::W { n, d } => (phi(*n, *d)?, Some(milnor_number_w(*n, *d)?.to_string())),
                    FamilyInstance::V { n, d } => {
                        (delta_closed_form(*n, *d)?, Some(milnor_number_v(*n, *d)?.to_string()))
                    }
                    FamilyInstance::H { .. } => {
                        let ws = cone_weights(&instance)?
                            .ok_or_else(|| usage("H(a) has no positive cone weight system"))?;
                        (monodromy_char_poly(&ws)?, Some(milnor_number(&ws)?.to_string()))
                    }
                };
                (to_value(&instance)?, p, mu)
            };
            let mut report = monodromy_report(&p, mu, max_expand_degree)?;
            report["input"] = input;
            emit(&report, &output)?;
        }
        Command::Weights { inst, output } => {
            let instance = inst.instance()?;
            let ws = cone_weights(&instance)?;
            let note = if ws.is_none() { Some("smooth point") } else { None };
            emit(&json!({ "input": instance, "weights": ws, "note": note }), &output)?;
        }
        Command::Kollar { a, output } => {
            let sol = kollar_weight_system(&a)?;
            let residual_zero = sol.residual().iter().all(|r| r.numer().bits() == 0);
            let mut v = to_value(&sol)?;
            v["residual_zero"] = json!(residual_zero);
            v["flags"] = json!([hypersing::families::FLAG_QUASI_SMOOTHNESS]);
            emit(&v, &output)?;
        }
        Command::Betti { inst, output } => {
            let instance = inst.instance()?;
            let betti = betti_numbers(&instance)?;
            let mut v = json!({ "input": instance, "betti": betti.values, "flags": betti.flags });
            if let FamilyInstance::V { n, d } | FamilyInstance::W { n, d } = instance {
                v["canonical_self_intersection"] = to_value(&canonical_self_intersection(n, d)?)?;
            }
            emit(&v, &output)?;
        }
        Command::Ring { ring, output } => {
            let spec: RingSpec = ring.parse()?;
            let r = spec.build()?;
            let mut v = to_value(&r)?;
            v["spec"] = json!(spec.to_string());
            v["betti"] = json!(r.betti_numbers());
            v["poincare_duality"] = json!(r.satisfies_poincare_duality());
            emit(&v, &output)?;
        }
        Command::Signature { ring, output } => {
            let spec: RingSpec = ring.parse()?;
            let inertia = middle_signature(&spec.build()?)?;
            let mut v = to_value(&inertia)?;
            v["spec"] = json!(spec.to_string());
            v["signature"] = json!(inertia.signature());
            emit(&v, &output)?;
        }
        Command::HomotopyClass { a, n, output } => {
            let a = match (a, n) {
                (Some(a), None) => parse_rational(&a)?,
                (None, Some(n)) => w_quadric_parameter(n)?,
                _ => return Err(usage("give exactly one of --a or -n")),
            };
            emit(
                &json!({
                    "a": a.to_string(),
                    "real_class": real_homotopy_class(&a)?,
                    "rational_class": rational_homotopy_class(&a)?.to_string(),
                }),
                &output,
            )?;
        }
        Command::Model { ring, cutoff, output } => {
            let spec: RingSpec = ring.parse()?;
            let r = spec.build()?;
            let top = r.top_degree();
            let cutoff = cutoff.unwrap_or(2 * top + 1);
            let model = minimal_model(&r, cutoff)?;
            let check = model.verify(&r);
            let report_model = if cutoff + 1 >= 3 * top {
                model.clone()
            } else {
                minimal_model(&r, 3 * top - 1)?
            };
            let report = ellipticity_report(&report_model, &r)?;
            let degrees = model.generator_degrees();
            emit(
                &json!({
                    "ring": spec.to_string(),
                    "model": model,
                    "generator_degrees": degrees,
                    "homotopy_ranks": homotopy_ranks(&model),
                    "verification": check,
                    "ellipticity": report,
                }),
                &output,
            )?;
        }
        Command::Threefolds { n, m, bound, output } => {
            let mut v = to_value(&threefold_report(n))?;
            if let Some(m) = m {
                v["compare"] = json!({
                    "m": m,
                    "homotopy_equivalent": fn_homotopy_equivalent(n, m),
                    "base_surfaces_diffeomorphic": hirzebruch_diffeomorphic(n, m),
                    "cubic_forms": gl2z_equivalent(&pe_cubic_form(n), &pe_cubic_form(m), bound)?,
                });
            }
            emit(&v, &output)?;
        }
        Command::Catalog { family, n, d, a, max_expand_degree, output } => {
            let instances = match family {
                Family::H => {
                    if n.is_some() || d.is_some() {
                        return Err(usage("the H family takes --a, not -n/-d"));
                    }
                    vec![FamilyInstance::h(a)?]
                }
                Family::V | Family::W => {
                    let ns = parse_values(n.as_deref().ok_or_else(|| usage("-n is required"))?)?;
                    let ds = parse_values(d.as_deref().ok_or_else(|| usage("-d is required"))?)?;
                    let g = if matches!(family, Family::V) { GridFamily::V } else { GridFamily::W };
                    grid_instances(g, &ns, &ds)?
                }
            };
            let records = build_catalog(&instances, max_expand_degree)?;
            let text = if output.pretty { to_pretty_json(&records) } else { to_json_lines(&records) };
            write_text(&text, &output)?;
        }
        Command::Verify { min_n, max_n, min_d, max_d, max_expand_degree, perturb, output } => {
            let config = VerifyConfig {
                n_min: min_n,
                n_max: max_n,
                d_min: min_d,
                d_max: max_d,
                max_expand_degree,
                perturbation: if perturb { Perturbation::FlipExponent } else { Perturbation::None },
            };
            let report = run_verify(&config);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit(&to_value(&report)?, &output)?;
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
