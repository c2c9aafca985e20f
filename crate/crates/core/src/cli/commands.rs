use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::gallery::{
    build_msaf_example, coin_aux, coin_channel, coin_counterexample_report, emit_aux_spec, emit_channel_spec,
    msaf_reference_aux, parse_aux_spec, parse_channel_spec, MsafAnalytics, MsafParams,
};
use crate::probkit::{assemble_joint, Auxiliary, SdWtc, CELL_BUDGET};
use crate::regions::{
    rate_bassi_joint, rate_gcp, region_a, region_per, search_multi, search_scheme, InfoTerms, RegionBounds, Scheme,
    SearchConfig,
};
use crate::simlab::{run_trials, IndexSizes, SimConfig, SimReport};

use super::output::emit;
use super::{sha256_hex, CliError, Command, CommonArgs, RunManifest, SearchArgs, BUDGET_ENV};

pub fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Region {
            channel,
            aux,
            search,
            scheme,
            weight,
            budget,
            common,
        } => region(&channel, aux.as_deref(), search, &scheme, weight, &budget, &common, stdout),
        Command::Compare {
            channel,
            schemes,
            budget,
            common,
        } => compare(&channel, &schemes, &budget, &common, stdout),
        Command::Example { name, sigma, dir, common } => example(&name, sigma, &dir, &common, stdout),
        Command::Simulate {
            channel,
            aux,
            n,
            rate_m,
            rate_k,
            rate_1,
            rate_2,
            eps_typ,
            trials,
            exact,
            common,
        } => {
            let grid = Grid {
                n,
                rate_m,
                rate_k,
                rate_1,
                rate_2,
            };
            simulate(&channel, &aux, &grid, eps_typ, trials, exact, &common, stdout)
        }
    }
}

fn cell_budget() -> Result<usize, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Validation(format!("{BUDGET_ENV} = {v:?} is not a nonnegative integer"))),
        Err(_) => Ok(CELL_BUDGET),
    }
}

fn search_config(b: &SearchArgs, seed: u64, weight: f64) -> Result<SearchConfig, CliError> {
    Ok(SearchConfig {
        card_u: b.card_u,
        card_v: b.card_v,
        restarts: b.restarts,
        steps: b.steps,
        seed,
        weight,
        prune_remark3: false,
        cell_budget: cell_budget()?,
    })
}

fn parse_scheme(s: &str) -> Result<Scheme, CliError> {
    Scheme::from_str(s).map_err(CliError::from)
}

fn read_channel(m: &mut RunManifest, path: &Path) -> Result<SdWtc, CliError> {
    let text = m.read_input(path)?;
    parse_channel_spec(&text).map_err(|e| CliError::at(path, e))
}

fn read_aux(m: &mut RunManifest, path: &Path) -> Result<Auxiliary, CliError> {
    let text = m.read_input(path)?;
    parse_aux_spec(&text).map_err(|e| CliError::at(path, e))
}

fn aux_value(a: &Auxiliary) -> serde_json::Value {
    serde_json::from_str(&emit_aux_spec(a)).expect("emitted JSON parses")
}

#[derive(Serialize)]
struct SearchInfo {
    config: SearchConfig,
    objective: f64,
    evaluations: u64,
    aux_sha256: String,
    aux: serde_json::Value,
}

#[derive(Serialize)]
struct RegionDoc {
    scheme: Scheme,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<RegionBounds>,
    /// Single secrecy rate, for schemes that only define one.
    #[serde(skip_serializing_if = "Option::is_none")]
    rate: Option<f64>,
    rm_intercept: f64,
    sum_intercept: f64,
    /// Counter-clockwise `(R_M, R_K)` polygon.
    vertices: Vec<[f64; 2]>,
    terms: InfoTerms,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchInfo>,
}

#[derive(Serialize)]
struct VertexRow {
    r_m: f64,
    r_k: f64,
}

#[allow(clippy::too_many_arguments)]
fn region(
    channel: &Path,
    aux: Option<&Path>,
    search: bool,
    scheme: &str,
    weight: f64,
    budget: &SearchArgs,
    common: &CommonArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let mut m = RunManifest::new("region", common.seed)?;
    let wtc = read_channel(&mut m, channel)?;
    let scheme = parse_scheme(scheme)?;
    let doc = if search {
        let cfg = search_config(budget, common.seed, weight)?;
        let o = search_scheme(&wtc, scheme, &cfg)?;
        let text = emit_aux_spec(&o.aux);
        RegionDoc {
            scheme,
            bounds: Some(o.bounds),
            rate: None,
            rm_intercept: o.rm_intercept,
            sum_intercept: o.sum_intercept,
            vertices: o.bounds.vertices(),
            terms: o.terms,
            search: Some(SearchInfo {
                config: cfg,
                objective: o.objective,
                evaluations: o.evaluations,
                aux_sha256: sha256_hex(text.as_bytes()),
                aux: aux_value(&o.aux),
            }),
        }
    } else {
        let path = aux.ok_or_else(|| CliError::Validation("pass --aux FILE or --search".into()))?;
        let a = read_aux(&mut m, path)?;
        let j = assemble_joint(&wtc, &a)?;
        let terms = InfoTerms::from_joint(&j)?;
        let (bounds, rate) = match scheme {
            Scheme::A => (Some(region_a(&j)?), None),
            Scheme::Per => (Some(region_per(&j)?), None),
            Scheme::Gcp => (None, Some(rate_gcp(&j)?)),
            Scheme::BassiJoint => (None, Some(rate_bassi_joint(&j)?)),
            other => {
                return Err(CliError::Validation(format!(
                    "scheme {other} needs --search (its auxiliaries are not in channel-file form)"
                )))
            }
        };
        let (rm, sum, vertices) = match (bounds, rate) {
            (Some(b), _) => (b.rm_intercept(), b.sum_intercept(), b.vertices()),
            (None, Some(r)) => {
                let r = r.max(0.0);
                (r, r, vec![[0.0, 0.0], [r, 0.0], [0.0, r]])
            }
            (None, None) => unreachable!(),
        };
        RegionDoc {
            scheme,
            bounds,
            rate,
            rm_intercept: rm,
            sum_intercept: sum,
            vertices,
            terms,
            search: None,
        }
    };
    let rows: Vec<VertexRow> = doc.vertices.iter().map(|v| VertexRow { r_m: v[0], r_k: v[1] }).collect();
    emit(common, &m, &doc, &rows, stdout)
}

#[derive(Serialize)]
struct CompareRow {
    scheme: Scheme,
    rm_intercept: f64,
    sum_intercept: f64,
    aux_sha256: String,
    evaluations: u64,
}

#[derive(Serialize)]
struct CompareDoc {
    config: SearchConfig,
    rows: Vec<CompareRow>,
}

fn compare(
    channel: &Path,
    schemes: &[String],
    budget: &SearchArgs,
    common: &CommonArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let mut m = RunManifest::new("compare", common.seed)?;
    let wtc = read_channel(&mut m, channel)?;
    let schemes = schemes.iter().map(|s| parse_scheme(s)).collect::<Result<Vec<_>, _>>()?;
    if schemes.is_empty() {
        return Err(CliError::Validation("no schemes given".into()));
    }
    let cfg = search_config(budget, common.seed, 0.0)?;
    let mut rows = Vec::new();
    for s in schemes {
        let o = search_multi(&wtc, s, &cfg, &[1.0, 0.0])?;
        rows.push(CompareRow {
            scheme: s,
            rm_intercept: o[0].rm_intercept,
            sum_intercept: o[1].sum_intercept,
            aux_sha256: sha256_hex(emit_aux_spec(&o[1].aux).as_bytes()),
            evaluations: o[0].evaluations,
        });
    }
    let doc = CompareDoc { config: cfg, rows };
    emit(common, &m, &doc, &doc.rows, stdout)
}

#[derive(Serialize)]
struct MsafDoc {
    example: &'static str,
    params: MsafParams,
    analytics: MsafAnalytics,
    reference_bounds: RegionBounds,
    reference_sum_intercept: f64,
    files: Vec<String>,
}

#[derive(Serialize)]
struct CoinDoc<T: Serialize> {
    example: &'static str,
    report: T,
    files: Vec<String>,
}

fn write_fixtures(dir: &Path, name: &str, wtc: &SdWtc, aux: &Auxiliary) -> Result<Vec<String>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Validation(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for (suffix, text) in [("channel", emit_channel_spec(wtc)), ("aux", emit_aux_spec(aux))] {
        let p: PathBuf = dir.join(format!("{name}_{suffix}.json"));
        std::fs::write(&p, text).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?;
        files.push(p.display().to_string());
    }
    Ok(files)
}

fn example(name: &str, sigma: f64, dir: &Path, common: &CommonArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let m = RunManifest::new("example", common.seed)?;
    match name.to_ascii_lowercase().as_str() {
        "msaf" => {
            let (wtc, params, analytics) = build_msaf_example(sigma)?;
            let aux = msaf_reference_aux(&params);
            let bounds = region_a(&assemble_joint(&wtc, &aux)?)?;
            let files = write_fixtures(dir, "msaf", &wtc, &aux)?;
            let doc = MsafDoc {
                example: "msaf",
                params,
                analytics,
                reference_bounds: bounds,
                reference_sum_intercept: bounds.sum_intercept(),
                files,
            };
            emit(common, &m, &doc, &[analytics], stdout)
        }
        "coin" => {
            let report = coin_counterexample_report()?;
            let files = write_fixtures(dir, "coin", &coin_channel(), &coin_aux())?;
            let doc = CoinDoc {
                example: "coin",
                report,
                files,
            };
            emit(common, &m, &doc, &[report], stdout)
        }
        other => Err(CliError::Validation(format!("unknown example {other:?}; expected msaf or coin"))),
    }
}

struct Grid {
    n: Vec<usize>,
    rate_m: Vec<f64>,
    rate_k: Vec<f64>,
    rate_1: Vec<f64>,
    rate_2: Vec<f64>,
}

#[derive(Serialize)]
struct SimulateDoc {
    reports: Vec<SimReport>,
}

#[derive(Serialize)]
struct SimRow {
    n: usize,
    rate_m: f64,
    rate_k: f64,
    rate_1: f64,
    rate_2: f64,
    eff_rate_m: f64,
    eff_rate_k: f64,
    eff_rate_1: f64,
    eff_rate_2: f64,
    size_m: usize,
    size_k: usize,
    size_i: usize,
    size_j: usize,
    trials: usize,
    eps_typ: f64,
    avg_error: f64,
    max_error: f64,
    key_tv: f64,
    encode_failures: usize,
    leakage_bits: Option<f64>,
    ss_divergence: Option<f64>,
    key_tv_exact: Option<f64>,
}

impl From<&SimReport> for SimRow {
    fn from(r: &SimReport) -> Self {
        let IndexSizes { m, k, i, j } = r.sizes;
        Self {
            n: r.n,
            rate_m: r.rates[0],
            rate_k: r.rates[1],
            rate_1: r.rates[2],
            rate_2: r.rates[3],
            eff_rate_m: r.effective_rates[0],
            eff_rate_k: r.effective_rates[1],
            eff_rate_1: r.effective_rates[2],
            eff_rate_2: r.effective_rates[3],
            size_m: m,
            size_k: k,
            size_i: i,
            size_j: j,
            trials: r.trial_count,
            eps_typ: r.eps_typ,
            avg_error: r.avg_error,
            max_error: r.max_error,
            key_tv: r.key_tv,
            encode_failures: r.encode_failures,
            leakage_bits: r.leakage_bits,
            ss_divergence: r.ss_divergence,
            key_tv_exact: r.key_tv_exact,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    channel: &Path,
    aux: &Path,
    grid: &Grid,
    eps_typ: f64,
    trials: usize,
    exact: bool,
    common: &CommonArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let mut m = RunManifest::new("simulate", common.seed)?;
    let wtc = read_channel(&mut m, channel)?;
    let a = read_aux(&mut m, aux)?;
    let mut reports = Vec::new();
    for &n in &grid.n {
        for &rate_m in &grid.rate_m {
            for &rate_k in &grid.rate_k {
                for &rate_1 in &grid.rate_1 {
                    for &rate_2 in &grid.rate_2 {
                        let cfg = SimConfig {
                            n,
                            rate_m,
                            rate_k,
                            rate_1,
                            rate_2,
                            eps_typ,
                            trials,
                            seed: common.seed,
                            exact_mode: exact,
                        };
                        reports.push(run_trials(&wtc, &a, &cfg)?);
                    }
                }
            }
        }
    }
    let rows: Vec<SimRow> = reports.iter().map(SimRow::from).collect();
    emit(common, &m, &SimulateDoc { reports }, &rows, stdout)
}
