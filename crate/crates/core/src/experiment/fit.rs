use crate::error::{Error, Result};
use crate::protocol::{effective_visibility, mi_of_visibility, SchemeKind};

/// Coarse grid steps of the search.
pub const COARSE_STEP_K: f64 = 0.01;
pub const COARSE_STEP_S: f64 = 0.001;
/// Number of refinement passes, each ten times finer.
pub const REFINEMENTS: u32 = 2;

/// Least-squares estimate of the correlation coefficient and offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub k_hat: f64,
    pub s_hat: f64,
    pub residual_sum_squares: f64,
    pub n_points: usize,
}

impl FitResult {
    pub const CSV_HEADER: &'static str = "k_hat,s_hat,rss,n_points";

    /// Header line and one data line.
    pub fn to_csv(&self) -> String {
        format!(
            "{}\n{:.16e},{:.16e},{:.16e},{}\n",
            Self::CSV_HEADER,
            self.k_hat,
            self.s_hat,
            self.residual_sum_squares,
            self.n_points
        )
    }

    /// Final grid steps `(Δk, Δs)`.
    pub fn resolution() -> (f64, f64) {
        let f = 10f64.powi(REFINEMENTS as i32);
        (COARSE_STEP_K / f, COARSE_STEP_S / f)
    }
}

struct Best {
    k: f64,
    s: f64,
    rss: f64,
}

impl Best {
    fn offer(&mut self, k: f64, s: f64, rss: f64) {
        let tie = self.rss.is_finite() && (rss - self.rss).abs() <= 1e-14 * self.rss.max(1e-300);
        let better = if tie {
            (k.abs(), s) < (self.k.abs(), self.s)
        } else {
            rss < self.rss
        };
        if better {
            *self = Best { k, s, rss };
        }
    }
}

/// Grid values `start + i·step` for `i` in `range`, kept inside `[min, max]`.
fn axis(start: f64, range: std::ops::RangeInclusive<i64>, step: f64, min: f64, max: f64) -> Vec<f64> {
    range
        .map(|i| start + i as f64 * step)
        .filter(|v| *v >= min - 1e-12 && *v <= max + 1e-12)
        .map(|v| v.clamp(min, max))
        .collect()
}

fn search(points: &[(f64, f64)], kind: SchemeKind, ks: &[f64], ss: &[f64], best: &mut Best) -> Result<()> {
    let mut curve = vec![0.0; points.len()];
    for &k in ks {
        for (c, &(kappa, _)) in curve.iter_mut().zip(points) {
            *c = mi_of_visibility(kind, effective_visibility(kappa, k)?);
        }
        for &s in ss {
            let rss: f64 = curve
                .iter()
                .zip(points)
                .map(|(c, &(_, mi))| ((c - s).max(0.0) - mi).powi(2))
                .sum();
            best.offer(k, s, rss);
        }
    }
    Ok(())
}

/// Fits `(k, s)` of the closed-form curve to `(kappa_abs, mi)` points by
/// bounded grid search with local refinement.
///
/// Each refinement pass searches ±1 previous step around the best `k` at a
/// ten times finer step, and the whole `s` range at a ten times finer step.
pub fn fit_k_s(points: &[(f64, f64)], kind: SchemeKind) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(Error::Parameter(format!(
            "fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    for &(kappa, mi) in points {
        if !(kappa > 0.0 && kappa <= 1.0) {
            return Err(Error::Parameter(format!("kappa_abs = {kappa} outside (0, 1]")));
        }
        if !mi.is_finite() {
            return Err(Error::Parameter(format!("non-finite mutual information {mi}")));
        }
    }
    let s_max = (kind.alphabet().len() as f64).log2();
    let mut best = Best {
        k: f64::NAN,
        s: f64::NAN,
        rss: f64::INFINITY,
    };
    let (mut dk, mut ds) = (COARSE_STEP_K, COARSE_STEP_S);
    search(
        points,
        kind,
        &axis(-1.0, 0..=(2.0 / dk).round() as i64, dk, -1.0, 1.0),
        &axis(0.0, 0..=(s_max / ds).ceil() as i64, ds, 0.0, s_max),
        &mut best,
    )?;
    for _ in 0..REFINEMENTS {
        let k0 = best.k;
        let ks = axis(k0, -10..=10, dk / 10.0, -1.0, 1.0);
        // The offset absorbs small shifts of k, so it is rescanned in full.
        let ss = axis(0.0, 0..=(s_max / (ds / 10.0)).ceil() as i64, ds / 10.0, 0.0, s_max);
        dk /= 10.0;
        ds /= 10.0;
        search(points, kind, &ks, &ss, &mut best)?;
    }
    Ok(FitResult {
        k_hat: best.k,
        s_hat: best.s,
        residual_sum_squares: best.rss,
        n_points: points.len(),
    })
}
