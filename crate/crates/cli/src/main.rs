//! greedylab: batch front-end for greedy-approximation analytics on
//! finite-dimensional quasi-Banach sequence spaces.
//!
//! Exit codes: 0 success/pass, 1 verification fail, 2 usage/config error.

mod config;

use config::{ConfigError, OutputFormat, RunConfig};
use greedylab::classes::{self, ClassParams, GeneratorSpec};
use greedylab::democracy::{self, ConstantKind};
use greedylab::errors::{self, ErrorOpts};
use greedylab::greedy::{self, TieRule};
use greedylab::lorentz::{self, LorentzParams};
use greedylab::report::{csv_row, fmt_f64, to_json_string};
use greedylab::spaces;
use greedylab::verify::{self, BernsteinSide};
use greedylab::weights;
use serde_json::json;
use std::process::ExitCode;

const USAGE: &str = "\
greedylab: greedy-approximation analytics on sequence spaces

USAGE:
  greedylab <subcommand> [--flag value]...

SUBCOMMANDS:
  norm        ‖f‖ in a space                 (--space --vector)
  tga         greedy ordering, sets, NSG     (--space --vector [--m M] [--tie-rule lowest_index|highest_index])
  errors      sigma/sigma~/gamma/theta table (--space --vector --N K [--window W])
  classnorm   A/CG/G class norms + chain     (--space --vector --w W --q Q)
  sweep       class-norm ratio sweep CSV     (--space --w W --q Q --sizes 4,8,16 --trials T --seed S)
  lorentz     full + dyadic Lorentz norms    (--vector --eta W --q Q [--kappa K])
  weight      weight regularity analysis    (--w W --N K)
  democracy   h_l/h_r table                  (--space --N K --budget B --seed S)
  constants   greedy-type constant estimate  (--space --kind tqg --N K --budget B --seed S)
  verify      theorem checks, exit 1 on fail (--theorem ap|bernstein|jackson|equivalence|witness ...)
  witness     non-democracy witness          (--space --w W --q Q --k K [--delta D])

COMMON FLAGS:
  --config FILE   JSON config; flags override its fields
  --format F      json (default) or csv
  --out PATH      write output to PATH instead of stdout
  --seed S        mandatory for randomized subcommands

SPECS:
  space:  lp:2 | lp:0.5 | lp:inf | lorentz_d:0.5:1 | interleaved:1:2 | summing
  weight: power:0.25 | power_log:0.5:1   (table weights via JSON config)
  vector: --vector '{\"1\":3,\"2\":-2}' or --vector-file data.csv (index,value rows)

Env: GREEDYLAB_THREADS caps worker threads.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "help" {
        print!("{USAGE}");
        return ExitCode::from(if args.is_empty() { 2 } else { 0 });
    }
    let sub = args[0].clone();
    let cfg = match RunConfig::from_args(&args[1..]) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let started = std::time::Instant::now();
    match dispatch(&sub, &cfg) {
        Ok(Emission { text, pass }) => {
            if let Err(e) = emit(&cfg, &text) {
                return usage_error(&e);
            }
            // Runtime goes to stderr so report bytes stay deterministic.
            eprintln!("# {sub} completed in {:?}", started.elapsed());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage_error(&e),
    }
}

fn usage_error(e: &ConfigError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

struct Emission {
    text: String,
    pass: bool,
}

impl Emission {
    fn ok(text: String) -> Self {
        Self { text, pass: true }
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), ConfigError> {
    match cfg.string("out") {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| ConfigError(format!("cannot write {path}: {e}"))),
    }
}

fn lib_err(e: impl std::fmt::Display) -> ConfigError {
    ConfigError(e.to_string())
}

fn err_opts(cfg: &RunConfig) -> Result<ErrorOpts, ConfigError> {
    Ok(ErrorOpts {
        window: cfg.u64_or("window", 4)?,
        tie_cap: cfg.u64_or("tie-cap", 10_000)? as usize,
        seed: cfg.u64_or("seed", 0)?,
        max_candidates: cfg.u64_or("max-candidates", 1_000_000)?,
    })
}

fn generator(cfg: &RunConfig) -> Result<GeneratorSpec, ConfigError> {
    match cfg.string("generator").as_deref() {
        None | Some("mixed") => Ok(GeneratorSpec::Mixed),
        Some("uniform") => Ok(GeneratorSpec::Uniform),
        Some(s) => {
            if let Some(r) = s.strip_prefix("geometric:") {
                let ratio: f64 = r
                    .parse()
                    .map_err(|_| ConfigError(format!("bad generator `{s}`")))?;
                Ok(GeneratorSpec::Geometric { ratio })
            } else if let Some(d) = s.strip_prefix("near_tie:") {
                let delta: f64 = d
                    .parse()
                    .map_err(|_| ConfigError(format!("bad generator `{s}`")))?;
                Ok(GeneratorSpec::NearTie { delta })
            } else {
                config::err(format!("unknown generator `{s}`"))
            }
        }
    }
}

fn dispatch(sub: &str, cfg: &RunConfig) -> Result<Emission, ConfigError> {
    match sub {
        "norm" => cmd_norm(cfg),
        "tga" => cmd_tga(cfg),
        "errors" => cmd_errors(cfg),
        "classnorm" => cmd_classnorm(cfg),
        "sweep" => cmd_sweep(cfg),
        "lorentz" => cmd_lorentz(cfg),
        "weight" => cmd_weight(cfg),
        "democracy" => cmd_democracy(cfg),
        "constants" => cmd_constants(cfg),
        "verify" => cmd_verify(cfg),
        "witness" => cmd_witness(cfg),
        other => config::err(format!("unknown subcommand `{other}`; see --help")),
    }
}

fn cmd_norm(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let space = cfg.space()?;
    let f = cfg.vector()?;
    let norm = space.norm(&f);
    match cfg.format()? {
        OutputFormat::Json => Ok(Emission::ok(to_json_string(&json!({
            "config": cfg.resolved(),
            "norm": norm,
            "p_exponent": space.p_exponent(),
            "in_cube": spaces::in_cube(&f),
            "support_len": f.support_len(),
        })))),
        OutputFormat::Csv => {
            let mut out = csv_row(&["norm".into(), "p_exponent".into(), "in_cube".into()]);
            out += &csv_row(&[
                fmt_f64(norm),
                fmt_f64(space.p_exponent()),
                spaces::in_cube(&f).to_string(),
            ]);
            Ok(Emission::ok(out))
        }
    }
}

fn cmd_tga(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let f = cfg.vector()?;
    let tie_rule = match cfg.string("tie-rule").as_deref() {
        None | Some("lowest_index") => TieRule::LowestIndex,
        Some("highest_index") => TieRule::HighestIndex,
        Some(other) => return config::err(format!("unknown tie rule `{other}`")),
    };
    let ordering = greedy::greedy_ordering(&f, tie_rule);
    let rearr = greedy::rearrangement(&f, f.support_len());
    let nsg = greedy::nsg(&f);
    let sets = match cfg.u64_opt("m")? {
        None => None,
        Some(m) => Some(
            greedy::greedy_sets(&f, m as usize, cfg.u64_or("tie-cap", 10_000)? as usize)
                .map_err(lib_err)?,
        ),
    };
    match cfg.format()? {
        OutputFormat::Json => Ok(Emission::ok(to_json_string(&json!({
            "config": cfg.resolved(),
            "ordering": ordering,
            "rearrangement": rearr,
            "nsg": nsg,
            "strictly_graded": greedy::is_strictly_graded(&f),
            "greedy_sets": sets,
        })))),
        OutputFormat::Csv => {
            let mut out = csv_row(&["rank".into(), "index".into(), "coefficient".into()]);
            for (rank, idx) in ordering.iter().enumerate() {
                out += &csv_row(&[
                    (rank + 1).to_string(),
                    idx.to_string(),
                    fmt_f64(f.get(*idx)),
                ]);
            }
            Ok(Emission::ok(out))
        }
    }
}

fn cmd_errors(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let space = cfg.space()?;
    let f = cfg.vector()?;
    let n = cfg.u64_or("N", f.support_len() as u64)? as usize;
    let opts = err_opts(cfg)?;
    let profile = errors::error_profile(&space, &f, n, &opts).map_err(lib_err)?;
    match cfg.format()? {
        OutputFormat::Json => Ok(Emission::ok(to_json_string(&json!({
            "config": cfg.resolved(),
            "profile": profile,
        })))),
        OutputFormat::Csv => {
            let status = |s: errors::ValueStatus| {
                serde_json::to_value(s)
                    .expect("status serialization")
                    .as_str()
                    .unwrap()
                    .to_string()
            };
            let mut out = csv_row(&[
                "n".into(),
                "sigma".into(),
                "sigma_tilde".into(),
                "gamma".into(),
                "theta".into(),
                "sigma_status".into(),
                "sigma_tilde_status".into(),
                "gamma_status".into(),
                "theta_status".into(),
            ]);
            for k in 0..=n {
                out += &csv_row(&[
                    k.to_string(),
                    fmt_f64(profile.sigma[k].value),
                    fmt_f64(profile.sigma_tilde[k].value),
                    fmt_f64(profile.gamma[k].value),
                    fmt_f64(profile.theta[k].value),
                    status(profile.sigma[k].status),
                    status(profile.sigma_tilde[k].status),
                    status(profile.gamma[k].status),
                    status(profile.theta[k].status),
                ]);
            }
            Ok(Emission::ok(out))
        }
    }
}

fn cmd_classnorm(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let space = cfg.space()?;
    let f = cfg.vector()?;
    let params = ClassParams::new(cfg.weight()?, cfg.q()?);
    let opts = err_opts(cfg)?;
    // --lorentz-ref true adds the ℓ^q_{w·h_r} reference norm.
    let table = match cfg.string("lorentz-ref").as_deref() {
        Some("true") | Some("1") => Some(democracy::democracy_table(
            &space,
            f.support_len().max(1),
            cfg.u64_or("budget", 1 << 14)?,
            cfg.u64_or("seed", 0)?,
        )),
        _ => None,
    };
    let (norms, chain_ok) = classes::chain_check_with_ref(
        &space,
        &f,
        &params,
        table.as_ref().map(|t| t.h_r_values()).as_deref(),
        &opts,
    )
    .map_err(lib_err)?;
    match cfg.format()? {
        OutputFormat::Json => Ok(Emission::ok(to_json_string(&json!({
            "config": cfg.resolved(),
            "norms": norms,
            "chain_ok": chain_ok,
        })))),
        OutputFormat::Csv => {
            let mut out = csv_row(&[
                "a_norm".into(),
                "cg_norm".into(),
                "g_norm".into(),
                "chain_ok".into(),
            ]);
            out += &csv_row(&[
                fmt_f64(norms.a_norm),
                fmt_f64(norms.cg_norm),
                fmt_f64(norms.g_norm),
                chain_ok.to_string(),
            ]);
            Ok(Emission::ok(out))
        }
    }
}

fn cmd_sweep(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let space = cfg.space()?;
    let params = ClassParams::new(cfg.weight()?, cfg.q()?);
    let sizes = cfg.sizes()?;
    let trials = cfg.u64_or("trials", 100)? as usize;
    let seed = cfg.required_seed()?;
    let gen_spec = generator(cfg)?;
    let opts = err_opts(cfg)?;
    let max_size = sizes.iter().copied().max().unwrap_or(4);
    let table = democracy::democracy_table(&space, max_size, cfg.u64_or("budget", 1 << 14)?, seed);
    let sweep = classes::ratio_sweep(
        &space,
        &params,
        &gen_spec,
        &sizes,
        trials,
        seed,
        &table.h_r_values(),
        &opts,
    )
    .map_err(lib_err)?;
    match cfg.format()? {
        OutputFormat::Json => Ok(Emission::ok(to_json_string(&json!({
            "config": cfg.resolved(),
            "sweep": sweep,
        })))),
        OutputFormat::Csv => {
            let mut out = csv_row(&[
                "support_size".into(),
                "ratio_name".into(),
                "max_ratio".into(),
            ]);
            for row in &sweep.rows {
                out += &csv_row(&[
                    row.support_size.to_string(),
                    row.ratio_name.clone(),
                    fmt_f64(row.max_ratio),
                ]);
            }
            Ok(Emission::ok(out))
        }
    }
}

fn cmd_lorentz(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let f = cfg.vector()?;
    let eta = cfg.weight_named("eta").or_else(|_| cfg.weight())?;
    let params = LorentzParams {
        eta,
        q: cfg.q()?,
        kappa: cfg.u64_or("kappa", 2)?,
    };
    if params.kappa < 2 {
        return config::err("--kappa must be at least 2");
    }
    let full = lorentz::lorentz_norm(&f, &params);
    let dyadic = lorentz::dyadic_lorentz_norm(&f, &params);
    let ratio = if dyadic == 0.0 { 0.0 } else { full / dyadic };
    match cfg.format()? {
        OutputFormat::Json => Ok(Emission::ok(to_json_string(&json!({
            "config": cfg.resolved(),
            "full": full,
            "dyadic": dyadic,
            "ratio": ratio,
        })))),
        OutputFormat::Csv => {
            let mut out = csv_row(&["full".into(), "dyadic".into(), "ratio".into()]);
            out += &csv_row(&[fmt_f64(full), fmt_f64(dyadic), fmt_f64(ratio)]);
            Ok(Emission::ok(out))
        }
    }
}

fn cmd_weight(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let w = cfg.weight()?;
    let n = cfg.u64_or("N", 1024)?.max(4);
    let analysis = weights::classify(&w, n);
    Ok(Emission::ok(to_json_string(&json!({
        "config": cfg.resolved(),
        "analysis": analysis,
    }))))
}

fn cmd_democracy(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let space = cfg.space()?;
    let n = cfg.u64_or("N", 32)? as usize;
    let budget = cfg.u64_or("budget", 1 << 16)?;
    let seed = cfg.required_seed()?;
    let table = democracy::democracy_table(&space, n.max(1), budget, seed);
    match cfg.format()? {
        OutputFormat::Json => Ok(Emission::ok(to_json_string(&json!({
            "config": cfg.resolved(),
            "table": table,
        })))),
        OutputFormat::Csv => {
            let mut out = csv_row(&["n".into(), "h_l".into(), "h_r".into(), "method".into()]);
            for e in &table.entries {
                let method = serde_json::to_value(e.method)
                    .expect("method serialization")
                    .as_str()
                    .unwrap()
                    .to_string();
                out += &csv_row(&[e.n.to_string(), fmt_f64(e.h_l), fmt_f64(e.h_r), method]);
            }
            Ok(Emission::ok(out))
        }
    }
}

fn cmd_constants(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let space = cfg.space()?;
    let kind_name = cfg
        .string("kind")
        .ok_or_else(|| ConfigError("missing required --kind".into()))?;
    let kind = ConstantKind::parse(&kind_name)
        .ok_or_else(|| ConfigError(format!("unknown constant kind `{kind_name}`")))?;
    let n = cfg.u64_or("N", 32)? as usize;
    let budget = cfg.u64_or("budget", 2000)?.max(1);
    let seed = cfg.required_seed()?;
    let estimate = democracy::constant_estimate(&space, kind, n.max(1), budget, seed);
    Ok(Emission::ok(to_json_string(&json!({
        "config": cfg.resolved(),
        "estimate": estimate,
    }))))
}

fn cmd_witness(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let space = cfg.space()?;
    let w = cfg.weight()?;
    let q = cfg.q()?;
    let k = cfg.required_u64("k")?;
    if k < 2 {
        return config::err("--k must be at least 2");
    }
    let delta = cfg.f64_or("delta", 1e-6)?;
    let report = verify::witness_nondemocracy(&space, &w, q, k, delta).map_err(lib_err)?;
    let pass = report.pass;
    Ok(Emission {
        text: to_json_string(&json!({
            "config": cfg.resolved(),
            "report": report,
        })),
        pass,
    })
}

fn cmd_verify(cfg: &RunConfig) -> Result<Emission, ConfigError> {
    let theorem = cfg
        .string("theorem")
        .ok_or_else(|| ConfigError("missing required --theorem".into()))?;
    let report = match theorem.as_str() {
        "ap" => {
            let space = cfg.space()?;
            let trials = cfg.u64_or("trials", 10_000)? as usize;
            let seed = cfg.required_seed()?;
            let max_set = cfg.u64_or("max-set", 12)? as usize;
            verify::check_ap_inequality(&space, max_set, trials, seed).map_err(lib_err)?
        }
        "bernstein" => {
            let space = cfg.space()?;
            let w = cfg.weight()?;
            let q = cfg.q()?;
            let trials = cfg.u64_or("trials", 500)? as usize;
            let seed = cfg.required_seed()?;
            let n = cfg.u64_or("N", 32)? as usize;
            let side = match cfg.string("side").as_deref() {
                None | Some("left_h_l") => BernsteinSide::LeftHl,
                Some("right_h_r") => BernsteinSide::RightHr,
                Some(other) => return config::err(format!("unknown side `{other}`")),
            };
            let table = democracy::democracy_table(&space, n, cfg.u64_or("budget", 1 << 14)?, seed);
            verify::check_bernstein(&space, &w, q, side, trials, seed, &table).map_err(lib_err)?
        }
        "jackson" => {
            let space = cfg.space()?;
            let w = cfg.weight()?;
            let q = cfg.q()?;
            let trials = cfg.u64_or("trials", 500)? as usize;
            let seed = cfg.required_seed()?;
            let n = cfg.u64_or("N", 32)? as usize;
            let growth = cfg.f64_or("growth-cap", 1.25)?;
            let table = democracy::democracy_table(&space, n, cfg.u64_or("budget", 1 << 14)?, seed);
            verify::check_jackson(&space, &w, q, trials, seed, &table, growth).map_err(lib_err)?
        }
        "equivalence" => {
            let space = cfg.space()?;
            let w = cfg.weight()?;
            let q = cfg.q()?;
            let sizes = cfg.sizes()?;
            let trials = cfg.u64_or("trials", 200)? as usize;
            let seed = cfg.required_seed()?;
            let growth = cfg.f64_or("growth-cap", 1.25)?;
            let expect = match cfg.string("expect").as_deref() {
                None => verify::expected_trend(&space),
                Some("flat") => verify::TrendExpectation::Flat,
                Some("increasing") => verify::TrendExpectation::Increasing,
                Some(other) => return config::err(format!("unknown expectation `{other}`")),
            };
            let (report, _) =
                verify::check_equivalence(&space, &w, q, &sizes, trials, seed, expect, growth)
                    .map_err(lib_err)?;
            report
        }
        "witness" => {
            // Witness ratios over k = 2, 3, 4 must strictly increase.
            let space = cfg.space()?;
            let w = cfg.weight()?;
            let q = cfg.q()?;
            let delta = cfg.f64_or("delta", 1e-6)?;
            let mut ratios = Vec::new();
            let mut reports = Vec::new();
            for k in [2u64, 3, 4] {
                let rep = verify::witness_nondemocracy(&space, &w, q, k, delta).map_err(lib_err)?;
                ratios.push(rep.empirical_constant);
                reports.push(rep);
            }
            let increasing = ratios.windows(2).all(|p| p[1] > p[0]);
            let pass = increasing && reports.iter().all(|r| r.pass);
            let mut details = std::collections::BTreeMap::new();
            for (k, r) in [2u64, 3, 4].iter().zip(&ratios) {
                details.insert(format!("ratio_k_{k}"), *r);
            }
            verify::VerificationReport {
                theorem: "witness".into(),
                config: json!({
                    "space": space.compact(),
                    "w": w.compact(),
                    "q": if q.is_infinite() { json!("inf") } else { json!(q) },
                    "k_values": [2, 3, 4],
                    "delta": delta,
                }),
                empirical_constant: ratios.iter().copied().fold(0.0, f64::max),
                formula_constant: None,
                pass,
                details,
                witnesses: reports.into_iter().flat_map(|r| r.witnesses).collect(),
                notes: vec!["pass requires strictly increasing G/A ratios over k".into()],
            }
        }
        other => return config::err(format!("unknown theorem `{other}`")),
    };
    let pass = report.pass;
    Ok(Emission {
        text: to_json_string(&json!({
            "config": cfg.resolved(),
            "report": report,
        })),
        pass,
    })
}
