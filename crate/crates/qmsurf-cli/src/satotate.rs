//! Normalized-trace statistics: histogram over [-1, 1] and raw moments.
//!
//! The fast path derives a_p from the degree-1 count alone, a = s1 / 2,
//! which is valid exactly when the characteristic quartic is the square
//! (x^2 - a x + p)^2 — the regime where all endomorphisms are already
//! defined over the base field. Parity of s1 is the observable proxy: odd
//! s1 disproves the square pattern at that prime.

use crate::{CliError, Result};

#[derive(Debug, Clone)]
pub struct SatoTateSummary {
    pub normalized: Vec<f64>,
    pub histogram: Vec<u64>,
    pub moments: [f64; 8],
    pub sample_size: usize,
}

/// Bins normalized traces x = a / (2 sqrt p) into `bins` equal-width cells
/// over [-1, 1] and computes the first eight raw moments.
pub fn summarize(samples: &[(u64, i64)], bins: usize) -> Result<SatoTateSummary> {
    if samples.is_empty() {
        return Err(CliError::input("empty sample: no usable primes in range"));
    }
    if bins == 0 {
        return Err(CliError::input("bins must be at least 1"));
    }
    let mut normalized = Vec::with_capacity(samples.len());
    let mut histogram = vec![0u64; bins];
    let mut moments = [0f64; 8];
    for &(p, a) in samples {
        let x = a as f64 / (2.0 * (p as f64).sqrt());
        if !(-1.0..=1.0).contains(&x) {
            return Err(CliError::Internal(format!(
                "normalized trace {x} outside [-1, 1] at p = {p}"
            )));
        }
        let mut idx = ((x + 1.0) / 2.0 * bins as f64) as usize;
        if idx == bins {
            idx = bins - 1; // x = 1 lands in the last bin
        }
        histogram[idx] += 1;
        let mut pw = 1.0;
        for m in moments.iter_mut() {
            pw *= x;
            *m += pw;
        }
        normalized.push(x);
    }
    let n = samples.len() as f64;
    for m in moments.iter_mut() {
        *m /= n;
    }
    Ok(SatoTateSummary { normalized, histogram, moments, sample_size: samples.len() })
}

impl SatoTateSummary {
    /// Histogram CSV: `bin_lo,bin_hi,count,density[,ref_density]`.
    pub fn histogram_csv(&self, reference: Option<&[f64]>) -> String {
        let bins = self.histogram.len();
        let width = 2.0 / bins as f64;
        let mut out = String::from("bin_lo,bin_hi,count,density");
        if reference.is_some() {
            out.push_str(",ref_density");
        }
        out.push('\n');
        for (i, &count) in self.histogram.iter().enumerate() {
            // exact rational endpoints keep 0 from printing as -0.000000
            let lo = (2 * i as i64 - bins as i64) as f64 / bins as f64;
            let hi = (2 * (i as i64 + 1) - bins as i64) as f64 / bins as f64;
            let density = count as f64 / (self.sample_size as f64 * width);
            out.push_str(&format!("{lo:.6},{hi:.6},{count},{density:.6}"));
            if let Some(r) = reference {
                out.push_str(&format!(",{:.6}", r.get(i).copied().unwrap_or(f64::NAN)));
            }
            out.push('\n');
        }
        out
    }

    pub fn text_summary(&self) -> String {
        let mut out = format!(
            "samples: {}\nbins: {}\n",
            self.sample_size,
            self.histogram.len()
        );
        for (k, m) in self.moments.iter().enumerate() {
            out.push_str(&format!("mu_{}: {:.6}\n", k + 1, m));
        }
        out
    }
}
