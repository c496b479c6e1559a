use super::encoding::EncodingScheme;
use super::table::ConditionalTable;
use crate::error::{check_range, Error, Result};

/// Decoding statistics of dephased Bell states at coherence magnitude `m`.
///
/// Each encoded state lands on itself with probability (1+m)/2 and on its
/// sector partner with probability (1−m)/2.
pub fn conditional_probabilities(scheme: &EncodingScheme, m: f64) -> Result<ConditionalTable> {
    check_range("m", m, 0.0, 1.0, "[0, 1]")?;
    let rows = scheme
        .alphabet()
        .iter()
        .map(|&x| {
            let mut r = [0.0; 4];
            r[x.index()] = (1.0 + m) / 2.0;
            r[x.partner().index()] = (1.0 - m) / 2.0;
            r
        })
        .collect();
    ConditionalTable::new(scheme.alphabet().to_vec(), rows)
}

/// I(X:Y) = Σ_x p₁(x) Σ_y p(y|x) log₂(p(y|x)/p₂(y)) in bits, minus `s`,
/// floored at zero.
pub fn mutual_information(scheme: &EncodingScheme, table: &ConditionalTable, s: f64) -> Result<f64> {
    check_range("s", s, 0.0, f64::MAX, "[0, inf)")?;
    if table.inputs() != scheme.alphabet() {
        return Err(Error::Parameter(format!(
            "table inputs {:?} do not match the {} alphabet",
            table.inputs(),
            scheme.kind()
        )));
    }
    Ok((raw_mutual_information(scheme.priors(), table.rows()) - s).max(0.0))
}

pub(crate) fn raw_mutual_information(priors: &[f64], rows: &[[f64; 4]]) -> f64 {
    let mut p_out = [0.0; 4];
    for (&p1, row) in priors.iter().zip(rows) {
        for (acc, &p) in p_out.iter_mut().zip(row) {
            *acc += p1 * p;
        }
    }
    let mut total = 0.0;
    for (&p1, row) in priors.iter().zip(rows) {
        if p1 == 0.0 {
            continue;
        }
        let inner: f64 = row
            .iter()
            .zip(&p_out)
            .filter(|(&p, _)| p > 0.0)
            .map(|(&p, &q)| p * (p / q).log2())
            .sum();
        total += p1 * inner;
    }
    total.max(0.0)
}

/// Mixes every row with the uniform outcome distribution at weight `w`.
fn mix_uniform(table: &ConditionalTable, w: f64) -> Vec<[f64; 4]> {
    table.rows().iter().map(|row| row.map(|p| (1.0 - w) * p + w / 4.0)).collect()
}

/// A table whose mutual information is `s` bits below that of `table`.
///
/// The imperfection offset is turned into count-level statistics by mixing
/// each row with uniformly random outcomes at a common weight, found by
/// bisection. Along this path the mutual information decreases from its
/// initial value to zero, so any `s` is reachable; an `s` at or above the
/// initial value gives the uniform table.
pub fn with_imperfection(scheme: &EncodingScheme, table: &ConditionalTable, s: f64) -> Result<ConditionalTable> {
    check_range("s", s, 0.0, f64::MAX, "[0, inf)")?;
    let base = mutual_information(scheme, table, 0.0)?;
    if s == 0.0 {
        return Ok(table.clone());
    }
    let target = base - s;
    if target <= 0.0 {
        return ConditionalTable::new(table.inputs().to_vec(), mix_uniform(table, 1.0));
    }
    let mi_at = |w: f64| raw_mutual_information(scheme.priors(), &mix_uniform(table, w));
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mi_at(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    ConditionalTable::new(table.inputs().to_vec(), mix_uniform(table, 0.5 * (lo + hi)))
}
