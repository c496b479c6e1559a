use std::collections::BTreeSet;

use anyhow::{anyhow, bail, Context, Result};
use sdcoding::environment::{kappa_a, DephasingTimes, JointSpectrum};
use sdcoding::experiment::{
    estimate_mi_with_errors, fit_k_s, reconstruct_linear_inversion, run_sweep, sweep_to_csv, SweepRow,
    SweepSettings,
};
use sdcoding::protocol::{closed_form_mi, mutual_information, simulate_protocol, with_imperfection, SchemeKind};
use sdcoding::quantum::concurrence;

use crate::config::RunConfig;

fn settings(cfg: &RunConfig) -> SweepSettings {
    SweepSettings {
        s: cfg.s,
        order: cfg.noise_order,
        n_per_input: cfg.n_per_input,
        trials: cfg.trials,
        seed: cfg.seed,
    }
}

/// Dephasing time at which Alice's decoherence function has magnitude `kappa_abs`.
pub fn time_for_kappa(spec: &JointSpectrum, kappa_abs: f64) -> Result<f64> {
    if !(kappa_abs > 0.0 && kappa_abs <= 1.0) {
        bail!("kappa_abs = {kappa_abs} is outside (0, 1]");
    }
    if kappa_abs == 1.0 {
        return Ok(0.0);
    }
    let rate = spec.delta_n() * spec.delta_n() * spec.c_aa();
    if rate == 0.0 {
        bail!("kappa_abs = {kappa_abs} is unreachable with delta_n = 0");
    }
    Ok((-2.0 * kappa_abs.ln() / rate).sqrt())
}

/// Sweep CSV over the configured time grid.
pub fn sweep(cfg: &RunConfig) -> Result<String> {
    let rows = run_sweep(&cfg.spectrum, &cfg.grid.points(), &cfg.scheme, &settings(cfg))?;
    Ok(sweep_to_csv(&rows))
}

/// Where a single Monte Carlo point sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    KappaAbs(f64),
    Time(f64),
}

pub const MC_HEADER: &str = "t_a,kappa_abs,mi_exact,mi_mc_mean,mi_mc_std,scheme";

/// Exact and Monte Carlo mutual information at one noise level.
pub fn mc(cfg: &RunConfig, point: Point) -> Result<String> {
    let t = match point {
        Point::KappaAbs(k) => time_for_kappa(&cfg.spectrum, k)?,
        Point::Time(t) => t,
    };
    let times = DephasingTimes::equal(t)?;
    let kappa_abs = kappa_a(&cfg.spectrum, t)?.norm();
    let table = simulate_protocol(&cfg.spectrum, &times, &cfg.scheme, cfg.noise_order)?;
    let table = with_imperfection(&cfg.scheme, &table, cfg.s)?;
    let exact = mutual_information(&cfg.scheme, &table, 0.0)?;
    let (mean, std) = estimate_mi_with_errors(&table, &cfg.scheme, cfg.n_per_input, cfg.trials, cfg.seed)?;
    Ok(format!(
        "{MC_HEADER}\n{t:.16e},{kappa_abs:.16e},{exact:.16e},{mean:.16e},{std:.16e},{}\n",
        cfg.scheme.kind()
    ))
}

/// Least-squares `(k, s)` from a CSV with a `kappa_abs` column and a
/// mutual information column.
///
/// Without `mi_column`, `mi` is used if present, else `mi_mc_mean`. A
/// `scheme` column, if present, must hold a single value and selects the
/// closed form; otherwise the configured scheme is used.
pub fn fit(cfg: &RunConfig, csv_text: &str, mi_column: Option<&str>) -> Result<String> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(csv_text.as_bytes());
    let headers = reader.headers().context("reading CSV header")?.clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let kappa_col = column("kappa_abs").ok_or_else(|| anyhow!("CSV has no `kappa_abs` column"))?;
    let mi_col = match mi_column {
        Some(name) => column(name).ok_or_else(|| anyhow!("CSV has no `{name}` column"))?,
        None => column("mi")
            .or_else(|| column("mi_mc_mean"))
            .ok_or_else(|| anyhow!("CSV has neither an `mi` nor an `mi_mc_mean` column"))?,
    };
    let scheme_col = column("scheme");

    let mut points = Vec::new();
    let mut schemes = BTreeSet::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("CSV record {}", i + 1))?;
        let field = |c: usize| -> Result<f64> {
            let raw = record.get(c).unwrap_or("");
            raw.parse()
                .with_context(|| format!("CSV record {}: malformed number `{raw}` in `{}`", i + 1, &headers[c]))
        };
        points.push((field(kappa_col)?, field(mi_col)?));
        if let Some(c) = scheme_col {
            schemes.insert(record.get(c).unwrap_or("").to_string());
        }
    }
    let kind = match schemes.len() {
        0 => cfg.scheme.kind(),
        1 => schemes.into_iter().next().unwrap().parse::<SchemeKind>()?,
        _ => bail!("CSV mixes schemes {schemes:?}"),
    };
    Ok(fit_k_s(&points, kind)?.to_csv())
}

/// Parses 16 projector counts separated by whitespace or commas, `#` comments allowed.
pub fn parse_counts(text: &str) -> Result<Vec<f64>> {
    let counts = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v >= 0.0)
                .ok_or_else(|| anyhow!("malformed count `{t}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    if counts.len() != 16 {
        bail!("expected 16 counts, found {}", counts.len());
    }
    Ok(counts)
}

/// Reconstructed state and its concurrence.
pub fn tomo(counts_text: &str, n_per_projector: u64) -> Result<String> {
    let counts = parse_counts(counts_text)?;
    let rho = reconstruct_linear_inversion(&counts, n_per_projector)?;
    Ok(format!("{}concurrence = {:.16e}\n", rho.to_text(), concurrence(&rho)))
}

/// Resolved configuration followed by derived quantities at the grid ends.
pub fn show(cfg: &RunConfig) -> Result<String> {
    let points = cfg.grid.points();
    let (first, last) = (points[0], *points.last().expect("grid is non-empty"));
    let mut out = cfg.to_text();
    out.push_str(&format!("# grid points: {}\n", points.len()));
    for (label, t) in [("first", first), ("last", last)] {
        let kappa_abs = kappa_a(&cfg.spectrum, t)?.norm();
        let mi = closed_form_mi(cfg.scheme.kind(), kappa_abs, cfg.spectrum.k(), cfg.s)?;
        out.push_str(&format!(
            "# {label}: t_a = {t:.16e}, kappa_abs = {kappa_abs:.16e}, mi_theory = {mi:.16e}\n"
        ));
    }
    Ok(out)
}

/// `(kappa_abs, mi_theory)` of the first and last sweep rows.
pub fn sweep_endpoints(rows: &[SweepRow]) -> Option<((f64, f64), (f64, f64))> {
    let (a, b) = (rows.first()?, rows.last()?);
    Some(((a.kappa_abs, a.mi_theory), (b.kappa_abs, b.mi_theory)))
}
