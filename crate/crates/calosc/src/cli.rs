//! Command-line front end. Exit codes: 0 pass, 1 a verification scenario or
//! replay failed, 2 usage or config trouble.

use crate::asymptotics::{classify_membership, fit_origin, AsymptoticBasis};
use crate::discretization::{
    build_direct_hamiltonian, build_factors, build_grid, direct_unknowns, EndPolicy, Grid,
    GridScheme,
};
use crate::error::{Error, Result};
use crate::extensions::{
    boundary_row, identify_factorization, negative_level_bound, ExtensionId, FactorizationKind,
    IdentParams,
};
use crate::report;
use crate::spectral::{all_eigenvalues, lowest_eigenpairs, sturm_count, DEFAULT_SEED};
use crate::superpotentials::{derive_coupling, CaseLabel, Superpotential};
use crate::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

const OUT_DIR_ENV: &str = "CALOSC_OUT_DIR";

#[derive(Parser)]
#[command(name = "calosc", version, about = "Oscillator factorizations of inverse-square Hamiltonians: build, solve, classify, verify")]
struct Cli {
    /// JSON config file; flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for inverse-iteration starting vectors (nothing else is random)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; default stdout. Relative paths land in $CALOSC_OUT_DIR when set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check h' + h^2 against the family's target potential on a point grid
    Riccati {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(allow_negative_numbers = true, long, default_value_t = 0.01)]
        x_lo: f64,
        #[arg(allow_negative_numbers = true, long, default_value_t = 50.0)]
        x_hi: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// log-spaced sample points instead of uniform
        #[arg(long)]
        log: bool,
    },
    /// Build the factor pair and report adjointness, positivity, isospectrality
    Factorize {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value = "dirichlet")]
        left: String,
        #[arg(long, default_value = "dirichlet")]
        right: String,
    },
    /// Lowest eigenvalues (and optional eigenvector dumps) of a built operator
    Spectrum {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        k: Option<usize>,
        /// which operator: the node-side composition, its midpoint partner,
        /// or the direct stencil under a named extension (--alpha doubles as
        /// the inverse-square strength there)
        #[arg(long, value_enum, default_value = "n")]
        side: Side,
        #[arg(long, default_value = "dirichlet")]
        left: String,
        #[arg(long, default_value = "dirichlet")]
        right: String,
        /// direct side only: extension name, e.g. H1, "H2(0.5)", H2(SubdominantOnly), H3Infinity
        #[arg(long)]
        extension: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// write x,psi CSV dumps next to --out (requires --out)
        #[arg(long)]
        vectors: bool,
    },
    /// Look up the self-adjoint extension realized by a factorization
    Classify {
        #[arg(long)]
        case: String,
        #[arg(long)]
        kind: String,
        #[arg(allow_negative_numbers = true, long)]
        mu: Option<f64>,
        #[arg(allow_negative_numbers = true, long)]
        rho: Option<f64>,
        #[arg(allow_negative_numbers = true, long)]
        kappa: Option<f64>,
        #[arg(allow_negative_numbers = true, long)]
        c: Option<f64>,
    },
    /// Fit a dumped x,psi CSV against the near-origin basis and classify it
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(allow_negative_numbers = true, long)]
        window_lo: f64,
        #[arg(allow_negative_numbers = true, long)]
        window_hi: f64,
        /// basis from the coupling strength alpha
        #[arg(allow_negative_numbers = true, long)]
        alpha: Option<f64>,
        /// or explicit exponents
        #[arg(allow_negative_numbers = true, long)]
        p_plus: Option<f64>,
        #[arg(allow_negative_numbers = true, long)]
        p_minus: Option<f64>,
        /// or the log pair at kappa = 0
        #[arg(long)]
        log_pair: bool,
        #[arg(allow_negative_numbers = true, long, default_value_t = verify::MEMBERSHIP_TOL)]
        tol: f64,
    },
    /// Run named verification scenarios, all of them, or replay a report
    Verify {
        /// scenario ids; see --list
        ids: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
        /// re-run the scenarios in a previous JSON report and demand
        /// bit-identical results (runtime excluded)
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Classify a factorization kind over a parameter grid, concurrently
    Sweep {
        #[arg(long)]
        kind: String,
        #[arg(allow_negative_numbers = true, long)]
        from: f64,
        #[arg(allow_negative_numbers = true, long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// case-B rows need the superpotential constant
        #[arg(allow_negative_numbers = true, long)]
        c: Option<f64>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Side {
    N,
    Partner,
    Direct,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// calogero-general | power-law | coth | tanh | cot
    #[arg(long)]
    family: Option<String>,
    #[arg(allow_negative_numbers = true, long)]
    alpha: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    c: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    mu: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    s: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    c1: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    c2: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    sigma: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    c3: Option<f64>,
}

#[derive(Args, Clone, Default)]
struct GridArgs {
    #[arg(allow_negative_numbers = true, long)]
    grid_min: Option<f64>,
    #[arg(allow_negative_numbers = true, long)]
    grid_max: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    /// uniform | log
    #[arg(long)]
    scheme: Option<String>,
}

/// Optional fields mirrored from a JSON config file; any flag overrides the
/// matching field.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    family: Option<String>,
    alpha: Option<f64>,
    c: Option<f64>,
    mu: Option<f64>,
    s: Option<f64>,
    c1: Option<f64>,
    c2: Option<f64>,
    sigma: Option<f64>,
    c3: Option<f64>,
    grid: Option<GridConfig>,
    k: Option<usize>,
    format: Option<String>,
    out: Option<PathBuf>,
    seed: Option<u64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct GridConfig {
    x_min: Option<f64>,
    x_max: Option<f64>,
    n: Option<usize>,
    scheme: Option<String>,
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::BadConfig(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::BadConfig(format!("bad config {}: {e}", p.display())))
        }
    }
}

fn resolve_family(args: &FamilyArgs, cfg: &RunConfig) -> Result<Superpotential> {
    let name = args
        .family
        .clone()
        .or_else(|| cfg.family.clone())
        .ok_or_else(|| Error::BadConfig("no --family given (and none in config)".into()))?;
    let pick = |flag: Option<f64>, conf: Option<f64>, what: &str| {
        flag.or(conf).ok_or_else(|| Error::BadConfig(format!("{name} needs --{what}")))
    };
    match name.as_str() {
        "calogero-general" => Superpotential::calogero_general(
            pick(args.alpha, cfg.alpha, "alpha")?,
            pick(args.c, cfg.c, "c")?,
        ),
        "power-law" => Ok(Superpotential::power_law_signed(pick(args.mu, cfg.mu, "mu")?)),
        "coth" => Superpotential::free_coth(
            pick(args.s, cfg.s, "s")?,
            args.c1.or(cfg.c1).unwrap_or(0.0),
        ),
        "tanh" => Superpotential::free_tanh(
            pick(args.s, cfg.s, "s")?,
            args.c2.or(cfg.c2).unwrap_or(0.0),
        ),
        "cot" => Superpotential::free_cot(
            pick(args.sigma, cfg.sigma, "sigma")?,
            args.c3.or(cfg.c3).unwrap_or(0.0),
        ),
        other => Err(Error::BadConfig(format!("unknown family '{other}'"))),
    }
}

fn resolve_grid(args: &GridArgs, cfg: &RunConfig) -> Result<Grid> {
    let gc = cfg.grid.as_ref();
    let x_min = args
        .grid_min
        .or_else(|| gc.and_then(|g| g.x_min))
        .ok_or_else(|| Error::BadConfig("no --grid-min".into()))?;
    let x_max = args
        .grid_max
        .or_else(|| gc.and_then(|g| g.x_max))
        .ok_or_else(|| Error::BadConfig("no --grid-max".into()))?;
    let n = args
        .n
        .or_else(|| gc.and_then(|g| g.n))
        .ok_or_else(|| Error::BadConfig("no --n".into()))?;
    let scheme = args
        .scheme
        .clone()
        .or_else(|| gc.and_then(|g| g.scheme.clone()))
        .unwrap_or_else(|| "uniform".into());
    let scheme = match scheme.as_str() {
        "uniform" => GridScheme::Uniform,
        "log" | "log-uniform" => GridScheme::LogUniform,
        other => return Err(Error::BadConfig(format!("unknown scheme '{other}'"))),
    };
    build_grid(x_min, x_max, n, scheme)
}

fn out_path(cli_out: Option<&Path>, cfg: &RunConfig) -> Option<PathBuf> {
    let p = cli_out.map(Path::to_path_buf).or_else(|| cfg.out.clone())?;
    if p.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            return Some(PathBuf::from(dir).join(p));
        }
    }
    Some(p)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            if let Some(parent) = p.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .map_err(|e| Error::BadConfig(format!("cannot create {}: {e}", parent.display())))?;
                }
            }
            std::fs::write(p, text)
                .map_err(|e| Error::BadConfig(format!("cannot write {}: {e}", p.display())))
        }
    }
}

fn family_inputs(sp: &Superpotential) -> Value {
    json!(sp.family_name())
}

fn grid_inputs(grid: &Grid) -> Value {
    json!({
        "x_min": grid.x_min, "x_max": grid.x_max, "n": grid.n,
        "scheme": match grid.scheme { GridScheme::Uniform => "uniform", GridScheme::LogUniform => "log-uniform" },
    })
}

fn parse_end(s: &str) -> Result<EndPolicy> {
    s.parse()
}

fn run_riccati(
    family: &FamilyArgs,
    cfg: &RunConfig,
    x_lo: f64,
    x_hi: f64,
    points: usize,
    log: bool,
    out: Option<&Path>,
) -> Result<u8> {
    if points < 2 {
        return Err(Error::BadConfig("need at least 2 points".into()));
    }
    let sp = resolve_family(family, cfg)?;
    let pts: Vec<f64> = if log {
        if !(x_lo > 0.0) {
            return Err(Error::BadConfig("log spacing needs x_lo > 0".into()));
        }
        let (a, b) = (x_lo.ln(), x_hi.ln());
        (0..points).map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp()).collect()
    } else {
        (0..points).map(|i| x_lo + (x_hi - x_lo) * i as f64 / (points - 1) as f64).collect()
    };
    let residual = sp.riccati_residual(&pts)?;
    let rep = json!({
        "command": "riccati",
        "family": sp.family_name(),
        "x_lo": x_lo, "x_hi": x_hi, "points": points, "log": log,
        "max_residual": residual,
    });
    emit(&report::to_json_string(&rep), out)?;
    Ok(0)
}

fn run_factorize(
    family: &FamilyArgs,
    grid_args: &GridArgs,
    cfg: &RunConfig,
    left: &str,
    right: &str,
    out: Option<&Path>,
) -> Result<u8> {
    let sp = resolve_family(family, cfg)?;
    let grid = resolve_grid(grid_args, cfg)?;
    let fm = build_factors(&grid, &sp, parse_end(left)?, parse_end(right)?)?;
    let mut bit_mismatches = 0usize;
    for k in 0..fm.num_rows() {
        let i = fm.rows[k].mid_index;
        for j in [i, i + 1] {
            if (1..=fm.n).contains(&j) && fm.a_entry(k, j).to_bits() != fm.b_entry(j, k).to_bits() {
                bit_mismatches += 1;
            }
        }
    }
    let nn = fm.matrix_n.norm_inf();
    let np = fm.partner.norm_inf();
    let psd_n = sturm_count(&fm.matrix_n, -1e-10 * nn) == 0;
    let psd_partner = sturm_count(&fm.partner, -1e-10 * np) == 0;
    // full isospectrality is an O(n^2) bisection sweep; cap it
    let iso = if fm.n <= 400 {
        let wa = all_eigenvalues(&fm.matrix_n)?;
        let wb = all_eigenvalues(&fm.partner)?;
        let threshold = 1e-10 * nn;
        let (worst, structural) = verify::descending_match(&wa, &wb, threshold);
        json!({"compared": "all", "threshold": threshold, "max_rel_mismatch": worst, "structural_mismatches": structural})
    } else {
        json!({"compared": "skipped (n > 400)"})
    };
    let rep = json!({
        "command": "factorize",
        "family": family_inputs(&sp),
        "grid": grid_inputs(&grid),
        "left": left, "right": right,
        "rows": fm.num_rows(),
        "adjoint_bit_mismatches": bit_mismatches,
        "psd_n": psd_n,
        "psd_partner": psd_partner,
        "isospectrality": iso,
    });
    emit(&report::to_json_string(&rep), out)?;
    Ok(if bit_mismatches == 0 && psd_n && psd_partner { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn run_spectrum(
    family: &FamilyArgs,
    grid_args: &GridArgs,
    cfg: &RunConfig,
    k: Option<usize>,
    side: Side,
    left: &str,
    right: &str,
    extension: Option<&str>,
    format: Option<Format>,
    vectors: bool,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8> {
    let grid = resolve_grid(grid_args, cfg)?;
    let k = k.or(cfg.k).unwrap_or(5);
    let format = match format {
        Some(f) => f,
        None => match cfg.format.as_deref() {
            Some("csv") => Format::Csv,
            Some("json") | None => Format::Json,
            Some(other) => return Err(Error::BadConfig(format!("unknown format '{other}'"))),
        },
    };

    // the operator, plus the abscissae/volumes its eigenvectors live on
    let (matrix, xs, vols, desc) = match side {
        Side::N | Side::Partner => {
            let sp = resolve_family(family, cfg)?;
            let fm = build_factors(&grid, &sp, parse_end(left)?, parse_end(right)?)?;
            if side == Side::N {
                (
                    fm.matrix_n,
                    grid.nodes().to_vec(),
                    grid.volumes().to_vec(),
                    json!({"side": "n", "family": sp.family_name()}),
                )
            } else {
                let mid: Vec<f64> =
                    fm.rows.iter().map(|r| grid.midpoints()[r.mid_index]).collect();
                let m = mid.len();
                let mut volm = vec![0.0; m];
                for j in 1..m - 1 {
                    volm[j] = 0.5 * (mid[j + 1] - mid[j - 1]);
                }
                volm[0] = mid[1] - mid[0];
                volm[m - 1] = mid[m - 1] - mid[m - 2];
                (
                    fm.partner,
                    mid,
                    volm,
                    json!({"side": "partner", "family": sp.family_name()}),
                )
            }
        }
        Side::Direct => {
            let alpha = family
                .alpha
                .or(cfg.alpha)
                .ok_or_else(|| Error::BadConfig("--side direct needs --alpha".into()))?;
            let ext: ExtensionId = extension
                .ok_or_else(|| Error::BadConfig("--side direct needs --extension".into()))?
                .parse()?;
            let coupling = derive_coupling(alpha)?;
            let bc = boundary_row(&ext, &coupling, &grid)?;
            let h = build_direct_hamiltonian(&grid, alpha, &bc)?;
            let (xs, vols) = direct_unknowns(&grid, &bc);
            (h, xs, vols, json!({"side": "direct", "alpha": alpha, "extension": ext.to_string()}))
        }
    };

    let rep = lowest_eigenpairs(&matrix, k, vectors, seed)?;
    if format == Format::Csv {
        emit(&report::eigenvalue_csv(&rep.eigenvalues), out)?;
        return Ok(0);
    }
    let mut doc = json!({
        "command": "spectrum",
        "what": desc,
        "grid": grid_inputs(&grid),
        "k": k,
        "seed": seed,
        "eigenvalues": rep.eigenvalues,
        "negative_count": rep.negative_count,
    });
    if vectors {
        let out = out.ok_or_else(|| Error::BadConfig("--vectors needs --out".into()))?;
        let stem = out.with_extension("");
        let mut paths = Vec::new();
        for (i, v) in rep.eigenvectors.as_ref().unwrap().iter().enumerate() {
            let psi: Vec<f64> = v.iter().zip(&vols).map(|(a, w)| a / w.sqrt()).collect();
            let p = PathBuf::from(format!("{}-vec{i}.csv", stem.display()));
            emit(&report::vector_csv(&xs, &psi), Some(&p))?;
            paths.push(p.display().to_string());
        }
        doc.as_object_mut().unwrap().insert("vector_files".into(), json!(paths));
    }
    emit(&report::to_json_string(&doc), out)?;
    Ok(0)
}

fn run_classify(
    case: &str,
    kind: &str,
    mu: Option<f64>,
    rho: Option<f64>,
    kappa: Option<f64>,
    c: Option<f64>,
    out: Option<&Path>,
) -> Result<u8> {
    let case = match case {
        "A" | "a" => CaseLabel::A,
        "B" | "b" => CaseLabel::B,
        "C" | "c" => CaseLabel::C,
        other => return Err(Error::BadConfig(format!("unknown case '{other}'"))),
    };
    let kind: FactorizationKind = kind.parse()?;
    let params = match (mu, rho, kappa) {
        (Some(mu), None, None) => IdentParams::Mu(mu),
        (None, Some(rho), None) => IdentParams::Rho(rho),
        (None, None, Some(kappa)) => IdentParams::KappaC {
            kappa,
            c: c.ok_or_else(|| Error::BadConfig("--kappa needs --c".into()))?,
        },
        _ => {
            return Err(Error::BadConfig(
                "give exactly one of --mu, --rho, or --kappa (with --c)".into(),
            ))
        }
    };
    let ext = identify_factorization(case, kind, params)?;
    println!("{ext}");
    if out.is_some() {
        let alpha = match params {
            IdentParams::Mu(m) => m * m - m,
            IdentParams::Rho(r) => r * r + r,
            IdentParams::KappaC { kappa, .. } => kappa * kappa - 0.25,
        };
        let rep = json!({
            "command": "classify",
            "case": format!("{case:?}"),
            "kind": kind.to_string(),
            "params": params,
            "extension": ext.to_string(),
            "deficiency_index": ext.deficiency_index(),
            "negative_level_bound": negative_level_bound(&ext, alpha)?,
        });
        emit(&report::to_json_string(&rep), out)?;
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_fit(
    input: &Path,
    window_lo: f64,
    window_hi: f64,
    alpha: Option<f64>,
    p_plus: Option<f64>,
    p_minus: Option<f64>,
    log_pair: bool,
    tol: f64,
    out: Option<&Path>,
) -> Result<u8> {
    let basis = match (alpha, p_plus, p_minus, log_pair) {
        (Some(a), None, None, false) => AsymptoticBasis::for_coupling(&derive_coupling(a)?),
        (None, Some(p), Some(m), false) => AsymptoticBasis::TwoExponent { p_plus: p, p_minus: m },
        (None, None, None, true) => AsymptoticBasis::LogPair,
        _ => {
            return Err(Error::BadConfig(
                "give --alpha, or --p-plus with --p-minus, or --log-pair".into(),
            ))
        }
    };
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::BadConfig(format!("cannot read {}: {e}", input.display())))?;
    let all = report::parse_vector_csv(&text)?;
    let samples: Vec<(f64, f64)> =
        all.into_iter().filter(|(x, _)| *x >= window_lo && *x <= window_hi).collect();
    let fit = fit_origin(&samples, basis)?;
    let class = classify_membership(&fit, tol);
    let rep = json!({
        "command": "fit",
        "input": input.display().to_string(),
        "window": [window_lo, window_hi],
        "samples": samples.len(),
        "basis": basis,
        "c_plus": fit.c_plus,
        "c_minus": fit.c_minus,
        "residual": fit.residual,
        "lambda_est": fit.lambda_est,
        "sig_plus": fit.sig_plus,
        "sig_minus": fit.sig_minus,
        "reduced_confidence": fit.reduced_confidence,
        "class": match &class {
            Ok(c) => c.to_string(),
            Err(e) => format!("unclassified: {e}"),
        },
    });
    emit(&report::to_json_string(&rep), out)?;
    Ok(0)
}

fn strip_runtime(v: &mut Value) {
    if let Some(o) = v.as_object_mut() {
        o.remove("runtime_ms");
    }
}

fn run_verify(
    ids: &[String],
    all: bool,
    list: bool,
    replay: Option<&Path>,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8> {
    if list {
        let mut text = String::new();
        for id in verify::scenario_ids() {
            text.push_str(id);
            text.push('\n');
        }
        emit(&text, out)?;
        return Ok(0);
    }

    if let Some(replay_path) = replay {
        let text = std::fs::read_to_string(replay_path)
            .map_err(|e| Error::BadConfig(format!("cannot read {}: {e}", replay_path.display())))?;
        let stored: Vec<Value> = serde_json::from_str(&text)
            .map_err(|e| Error::BadConfig(format!("bad replay file: {e}")))?;
        let mut mismatched = 0usize;
        for mut old in stored {
            let id = old
                .get("scenario_id")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::BadConfig("replay entry without scenario_id".into()))?
                .to_string();
            // a stored per-scenario seed wins over the command line
            let replay_seed = old
                .get("inputs")
                .and_then(|i| i.get("seed"))
                .and_then(Value::as_u64)
                .unwrap_or(seed);
            let fresh = verify::run_scenario(&id, replay_seed)?;
            let mut new = report::json_of(&fresh);
            strip_runtime(&mut old);
            strip_runtime(&mut new);
            let ok = old == new;
            mismatched += usize::from(!ok);
            eprintln!("{id}: {}", if ok { "match" } else { "MISMATCH" });
        }
        return Ok(if mismatched == 0 { 0 } else { 1 });
    }

    let chosen: Vec<String> = if all {
        verify::scenario_ids().iter().map(|s| s.to_string()).collect()
    } else if ids.is_empty() {
        return Err(Error::BadConfig("name scenarios, or pass --all (or --list)".into()));
    } else {
        let known = verify::scenario_ids();
        for id in ids {
            if !known.contains(&id.as_str()) {
                return Err(Error::BadConfig(format!("unknown scenario '{id}'")));
            }
        }
        ids.to_vec()
    };

    // independent workers, deterministic assembly in request order
    let results: Vec<Result<verify::ScenarioResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chosen
            .iter()
            .map(|id| scope.spawn(move || verify::run_scenario(id, seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scenario worker panicked")).collect()
    });

    let mut docs = Vec::with_capacity(results.len());
    let mut all_pass = true;
    for (id, res) in chosen.iter().zip(results) {
        let sr = res?;
        all_pass &= sr.pass;
        eprintln!("{id}: {}", if sr.pass { "pass" } else { "FAIL" });
        docs.push(report::json_of(&sr));
    }
    emit(&report::to_json_string(&Value::Array(docs)), out)?;
    Ok(if all_pass { 0 } else { 1 })
}

fn run_sweep(
    kind: &str,
    from: f64,
    to: f64,
    steps: usize,
    c: Option<f64>,
    workers: Option<usize>,
    out: Option<&Path>,
) -> Result<u8> {
    if steps < 1 {
        return Err(Error::BadConfig("need at least one step".into()));
    }
    let kind: FactorizationKind = kind.parse()?;
    let (case, param_name) = match kind {
        FactorizationKind::N1 | FactorizationKind::A2 => (CaseLabel::C, "mu"),
        FactorizationKind::N2 | FactorizationKind::A1 => (CaseLabel::C, "rho"),
        FactorizationKind::CaseBN | FactorizationKind::CaseBA => (CaseLabel::B, "kappa"),
    };
    if param_name == "kappa" && c.is_none() {
        return Err(Error::BadConfig("case-B sweep needs --c".into()));
    }
    let values: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                from
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();

    let row_of = |v: f64| -> Value {
        let (params, alpha) = match param_name {
            "mu" => (IdentParams::Mu(v), v * v - v),
            "rho" => (IdentParams::Rho(v), v * v + v),
            _ => (IdentParams::KappaC { kappa: v, c: c.unwrap() }, v * v - 0.25),
        };
        let mut row = serde_json::Map::new();
        row.insert(param_name.to_string(), json!(v));
        row.insert("alpha".into(), json!(alpha));
        match identify_factorization(case, kind, params) {
            Ok(ext) => {
                row.insert("extension".into(), json!(ext.to_string()));
                row.insert("deficiency_index".into(), json!(ext.deficiency_index()));
                row.insert(
                    "negative_level_bound".into(),
                    json!(negative_level_bound(&ext, alpha).ok()),
                );
            }
            Err(e) => {
                row.insert("error".into(), json!(e.to_string()));
            }
        }
        Value::Object(row)
    };

    let nw = workers
        .unwrap_or_else(|| {
            std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
        })
        .clamp(1, values.len().max(1));
    // round-robin ownership by index; merged by index, so the worker count
    // never shows in the output
    let mut merged: Vec<(usize, Value)> = std::thread::scope(|scope| {
        let values = &values;
        let row_of = &row_of;
        let handles: Vec<_> = (0..nw)
            .map(|w| {
                scope.spawn(move || {
                    let mut part = Vec::new();
                    let mut i = w;
                    while i < values.len() {
                        part.push((i, row_of(values[i])));
                        i += nw;
                    }
                    part
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    merged.sort_by_key(|(i, _)| *i);
    let rows: Vec<Value> = merged.into_iter().map(|(_, v)| v).collect();
    let rep = json!({
        "command": "sweep",
        "kind": kind.to_string(),
        "case": format!("{case:?}"),
        "parameter": {"name": param_name, "from": from, "to": to, "steps": steps},
        "rows": rows,
    });
    emit(&report::to_json_string(&rep), out)?;
    Ok(0)
}

pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    let cfg = load_config(cli.config.as_deref())?;
    let seed = cli.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
    let out = out_path(cli.out.as_deref(), &cfg);
    let out = out.as_deref();
    match &cli.command {
        Command::Riccati { family, x_lo, x_hi, points, log } => {
            run_riccati(family, &cfg, *x_lo, *x_hi, *points, *log, out)
        }
        Command::Factorize { family, grid, left, right } => {
            run_factorize(family, grid, &cfg, left, right, out)
        }
        Command::Spectrum { family, grid, k, side, left, right, extension, format, vectors } => {
            run_spectrum(
                family,
                grid,
                &cfg,
                *k,
                *side,
                left,
                right,
                extension.as_deref(),
                *format,
                *vectors,
                seed,
                out,
            )
        }
        Command::Classify { case, kind, mu, rho, kappa, c } => {
            run_classify(case, kind, *mu, *rho, *kappa, *c, out)
        }
        Command::Fit { input, window_lo, window_hi, alpha, p_plus, p_minus, log_pair, tol } => {
            run_fit(input, *window_lo, *window_hi, *alpha, *p_plus, *p_minus, *log_pair, *tol, out)
        }
        Command::Verify { ids, all, list, replay } => {
            run_verify(ids, *all, *list, replay.as_deref(), seed, out)
        }
        Command::Sweep { kind, from, to, steps, c, workers } => {
            run_sweep(kind, *from, *to, *steps, *c, *workers, out)
        }
    }
}
