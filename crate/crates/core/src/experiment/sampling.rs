use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Binomial;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::protocol::{raw_mutual_information, ConditionalTable, EncodingScheme};
use crate::quantum::BellLabel;

/// Random stream for one work unit, keyed by `(seed, row, trial)`.
pub(crate) fn stream(seed: u64, row: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&row.to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Binomial draw that tolerates probabilities a rounding error outside [0, 1].
pub(crate) fn binomial<R: Rng + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    rng.sample(Binomial::new(n, p).expect("p lies in (0, 1)"))
}

/// Multinomial draw of `n` shots over four outcomes, as a chain of binomials.
fn multinomial<R: Rng + ?Sized>(rng: &mut R, n: u64, probs: &[f64; 4]) -> [u64; 4] {
    let mut out = [0u64; 4];
    let mut remaining = n;
    let mut mass = 1.0;
    for j in 0..3 {
        if remaining == 0 || mass <= 0.0 {
            break;
        }
        let c = binomial(rng, remaining, probs[j] / mass);
        out[j] = c;
        remaining -= c;
        mass -= probs[j];
    }
    out[3] += remaining;
    out
}

/// Outcome counts per input symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    inputs: Vec<BellLabel>,
    counts: Vec<[u64; 4]>,
    n_total_per_input: u64,
}

impl CountTable {
    pub fn new(inputs: Vec<BellLabel>, counts: Vec<[u64; 4]>, n_total_per_input: u64) -> Result<Self> {
        if n_total_per_input == 0 {
            return Err(Error::Parameter("n_total_per_input must be positive".into()));
        }
        if inputs.len() != counts.len() {
            return Err(Error::Parameter(format!(
                "{} inputs but {} count rows",
                inputs.len(),
                counts.len()
            )));
        }
        for (x, row) in inputs.iter().zip(&counts) {
            let sum: u64 = row.iter().sum();
            if sum != n_total_per_input {
                return Err(Error::Parameter(format!(
                    "counts for {x} sum to {sum}, expected {n_total_per_input}"
                )));
            }
        }
        Ok(Self {
            inputs,
            counts,
            n_total_per_input,
        })
    }

    pub fn inputs(&self) -> &[BellLabel] {
        &self.inputs
    }

    /// Rows in input order, columns in [`BellLabel::ALL`] order.
    pub fn counts(&self) -> &[[u64; 4]] {
        &self.counts
    }

    pub fn n_total_per_input(&self) -> u64 {
        self.n_total_per_input
    }

    /// Empirical conditional frequencies.
    pub fn frequencies(&self) -> Vec<[f64; 4]> {
        let n = self.n_total_per_input as f64;
        self.counts.iter().map(|row| row.map(|c| c as f64 / n)).collect()
    }

    /// Frequencies as a decoding table.
    pub fn to_table(&self) -> Result<ConditionalTable> {
        ConditionalTable::new(self.inputs.clone(), self.frequencies())
    }
}

fn sample_with<R: Rng + ?Sized>(rng: &mut R, table: &ConditionalTable, n: u64) -> CountTable {
    let counts = table.rows().iter().map(|row| multinomial(rng, n, row)).collect();
    CountTable {
        inputs: table.inputs().to_vec(),
        counts,
        n_total_per_input: n,
    }
}

/// Draws `n_per_input` shots for every input symbol of `table`.
pub fn sample_counts(table: &ConditionalTable, n_per_input: u64, seed: u64) -> Result<CountTable> {
    if n_per_input == 0 {
        return Err(Error::Parameter("n_per_input must be positive".into()));
    }
    Ok(sample_with(&mut stream(seed, 0, 0), table, n_per_input))
}

/// Mean and sample standard deviation of the plug-in mutual information over
/// `trials` independent count draws.
pub fn estimate_mi_with_errors(
    table: &ConditionalTable,
    scheme: &EncodingScheme,
    n_per_input: u64,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    estimate_in_row(table, scheme, n_per_input, trials, seed, 0)
}

pub(crate) fn estimate_in_row(
    table: &ConditionalTable,
    scheme: &EncodingScheme,
    n_per_input: u64,
    trials: usize,
    seed: u64,
    row: u64,
) -> Result<(f64, f64)> {
    if trials < 2 {
        return Err(Error::Parameter(format!("trials must be at least 2, got {trials}")));
    }
    if n_per_input == 0 {
        return Err(Error::Parameter("n_per_input must be positive".into()));
    }
    if table.inputs() != scheme.alphabet() {
        return Err(Error::Parameter(format!(
            "table inputs {:?} do not match the {} alphabet",
            table.inputs(),
            scheme.kind()
        )));
    }
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let counts = sample_with(&mut stream(seed, row, trial as u64), table, n_per_input);
            raw_mutual_information(scheme.priors(), &counts.frequencies())
        })
        .collect();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, var.sqrt()))
}
