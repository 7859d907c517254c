//! Orthonormal two-channel filter banks and multilevel decomposition.
//!
//! One analysis stage maps a length-`n` signal to `ceil(n/2)` approximation and
//! `ceil(n/2)` detail coefficients:
//!
//! ```text
//! approx[k] = sum_j h[j] * ext(2k + j - shift)
//! detail[k] = sum_j g[j] * ext(2k + j - shift)
//! ```
//!
//! `ext` reads the signal through the boundary rule. Periodic extension wraps
//! (`shift = 0`); symmetric extension reflects about the half-sample points at
//! both ends and centres the filter (`shift = L/2 - 1`) so boundary samples are
//! handled the same way on the left and the right.
//!
//! Synthesis applies the transposed analysis operator. For even lengths under
//! periodic extension that transpose is the exact inverse. Otherwise the
//! operator is orthonormal everywhere except in a few columns at each end; the
//! normal equations there are solved directly.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveletName {
    /// Two-tap Haar filter, identical to Daubechies-1.
    Haar,
    /// Four-tap Daubechies filter with two vanishing moments.
    Db4,
}

impl WaveletName {
    pub fn as_str(self) -> &'static str {
        match self {
            WaveletName::Haar => "haar",
            WaveletName::Db4 => "db4",
        }
    }
}

impl std::fmt::Display for WaveletName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for WaveletName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "haar" | "db1" => Ok(WaveletName::Haar),
            "db4" | "db-4" => Ok(WaveletName::Db4),
            other => Err(format!("unknown wavelet {other:?} (expected haar or db4)")),
        }
    }
}

/// Analysis lowpass/highpass pair with `g[k] = (-1)^k * h[L-1-k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    pub name: WaveletName,
    pub lowpass: Vec<f64>,
    pub highpass: Vec<f64>,
}

impl WaveletFilter {
    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lowpass.is_empty()
    }

    fn from_lowpass(name: WaveletName, lowpass: Vec<f64>) -> Self {
        let l = lowpass.len();
        let highpass = (0..l)
            .map(|k| if k % 2 == 0 { lowpass[l - 1 - k] } else { -lowpass[l - 1 - k] })
            .collect();
        Self { name, lowpass, highpass }
    }
}

pub fn filter_bank(name: WaveletName) -> WaveletFilter {
    let lowpass = match name {
        WaveletName::Haar => vec![std::f64::consts::FRAC_1_SQRT_2; 2],
        WaveletName::Db4 => {
            let s3 = 3f64.sqrt();
            let d = 4.0 * std::f64::consts::SQRT_2;
            vec![(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d]
        }
    };
    WaveletFilter::from_lowpass(name, lowpass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Extension {
    /// Circular wrap-around.
    Periodic,
    /// Half-sample mirror (`x[-1] = x[0]`, `x[n] = x[n-1]`).
    #[default]
    Symmetric,
}

impl Extension {
    pub fn as_str(self) -> &'static str {
        match self {
            Extension::Periodic => "periodic",
            Extension::Symmetric => "symmetric",
        }
    }

    fn shift(self, filter_len: usize) -> usize {
        match self {
            Extension::Periodic => 0,
            Extension::Symmetric => filter_len / 2 - 1,
        }
    }

    /// Index into the length-`n` signal read at extended position `i`.
    fn source_index(self, i: isize, n: usize) -> usize {
        let n = n as isize;
        match self {
            Extension::Periodic => i.rem_euclid(n) as usize,
            Extension::Symmetric => {
                let p = i.rem_euclid(2 * n);
                (if p < n { p } else { 2 * n - 1 - p }) as usize
            }
        }
    }
}

impl std::fmt::Display for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signal positions read by output `k`, one per filter tap.
fn taps(k: usize, filter_len: usize, n: usize, ext: Extension) -> impl Iterator<Item = (usize, usize)> {
    let base = (2 * k) as isize - ext.shift(filter_len) as isize;
    (0..filter_len).map(move |j| (j, ext.source_index(base + j as isize, n)))
}

/// One analysis stage. Both outputs have length `ceil(n/2)`.
pub fn dwt_level(signal: &[f64], filter: &WaveletFilter, ext: Extension) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = signal.len();
    if n < 2 {
        return Err(Error::TooShort { len: n });
    }
    let m = n.div_ceil(2);
    let l = filter.len();
    let mut approx = Vec::with_capacity(m);
    let mut detail = Vec::with_capacity(m);
    for k in 0..m {
        let (mut a, mut d) = (0.0, 0.0);
        for (j, i) in taps(k, l, n, ext) {
            a += filter.lowpass[j] * signal[i];
            d += filter.highpass[j] * signal[i];
        }
        approx.push(a);
        detail.push(d);
    }
    Ok((approx, detail))
}

/// Inverts [`dwt_level`] for a signal of length `n`.
pub fn idwt_level(
    approx: &[f64],
    detail: &[f64],
    n: usize,
    filter: &WaveletFilter,
    ext: Extension,
) -> Result<Vec<f64>> {
    let m = n.div_ceil(2);
    if n < 2 || approx.len() != m || detail.len() != m {
        return Err(Error::InconsistentLengths(format!(
            "level of length {n} needs {m}+{m} coefficients, got {}+{}",
            approx.len(),
            detail.len()
        )));
    }
    let l = filter.len();

    // y = A^T c
    let mut y = vec![0.0; n];
    for k in 0..m {
        for (j, i) in taps(k, l, n, ext) {
            y[i] += filter.lowpass[j] * approx[k] + filter.highpass[j] * detail[k];
        }
    }
    if ext == Extension::Periodic && n % 2 == 0 {
        return Ok(y);
    }

    // A^T A is the identity outside `boundary`; solve the normal equations there.
    let edge = 2 * l;
    let boundary: Vec<usize> = if n <= 2 * edge { (0..n).collect() } else { (0..edge).chain(n - edge..n).collect() };
    let slot = |i: usize| boundary.iter().position(|&b| b == i);
    let size = boundary.len();
    let mut gram = vec![vec![0.0; size]; size];
    let mut row_lo = vec![0.0; size];
    let mut row_hi = vec![0.0; size];
    for k in 0..m {
        row_lo.iter_mut().for_each(|v| *v = 0.0);
        row_hi.iter_mut().for_each(|v| *v = 0.0);
        let mut touched = false;
        for (j, i) in taps(k, l, n, ext) {
            if let Some(s) = slot(i) {
                row_lo[s] += filter.lowpass[j];
                row_hi[s] += filter.highpass[j];
                touched = true;
            }
        }
        if !touched {
            continue;
        }
        for a in 0..size {
            for b in 0..size {
                gram[a][b] += row_lo[a] * row_lo[b] + row_hi[a] * row_hi[b];
            }
        }
    }
    let rhs: Vec<f64> = boundary.iter().map(|&i| y[i]).collect();
    let solved = solve_dense(gram, rhs)
        .ok_or_else(|| Error::InconsistentLengths(format!("singular boundary system for length {n}")))?;
    for (s, &i) in boundary.iter().enumerate() {
        y[i] = solved[s];
    }
    Ok(y)
}

/// Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                let (upper, lower) = a.split_at_mut(row);
                for (x, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *x -= f * p;
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Multilevel decomposition: final approximation plus details, finest first.
#[derive(Debug, Clone, PartialEq)]
pub struct DwtDecomposition {
    pub filter: WaveletFilter,
    pub levels: usize,
    pub extension: Extension,
    /// Level-`levels` approximation coefficients.
    pub approx: Vec<f64>,
    /// `details[0]` is level 1 (finest), `details[levels - 1]` the coarsest.
    pub details: Vec<Vec<f64>>,
    /// Input length of each analysis stage; `lengths[0] == original_n`.
    pub lengths: Vec<usize>,
    pub original_n: usize,
    pub dt: f64,
}

impl DwtDecomposition {
    /// Coefficient count produced at each level, finest first.
    pub fn coefficient_lengths(&self) -> Vec<usize> {
        self.details.iter().map(Vec::len).collect()
    }
}

/// Iterates [`dwt_level`] on successive approximations.
///
/// Every stage needs an input of at least two samples; asking for more levels
/// than that allows is [`Error::TooManyLevels`].
pub fn wavedec(ts: &TimeSeries, filter: &WaveletFilter, levels: usize, ext: Extension) -> Result<DwtDecomposition> {
    let n = ts.len();
    if levels == 0 {
        return Err(Error::TooManyLevels { len: n, levels });
    }
    let mut lengths = Vec::with_capacity(levels);
    let mut len = n;
    for _ in 0..levels {
        if len < 2 {
            return Err(Error::TooManyLevels { len: n, levels });
        }
        lengths.push(len);
        len = len.div_ceil(2);
    }

    let mut current = ts.values().to_vec();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (a, d) = dwt_level(&current, filter, ext)?;
        details.push(d);
        current = a;
    }
    Ok(DwtDecomposition {
        filter: filter.clone(),
        levels,
        extension: ext,
        approx: current,
        details,
        lengths,
        original_n: n,
        dt: ts.dt(),
    })
}

fn check_bookkeeping(dec: &DwtDecomposition) -> Result<()> {
    let bad = |msg: String| Err(Error::InconsistentLengths(msg));
    if dec.levels == 0 || dec.lengths.len() != dec.levels || dec.details.len() != dec.levels {
        return bad(format!(
            "{} levels with {} lengths and {} detail vectors",
            dec.levels,
            dec.lengths.len(),
            dec.details.len()
        ));
    }
    if dec.lengths[0] != dec.original_n {
        return bad(format!("first stage length {} != original {}", dec.lengths[0], dec.original_n));
    }
    for w in dec.lengths.windows(2) {
        if w[1] != w[0].div_ceil(2) {
            return bad(format!("stage length {} does not follow {}", w[1], w[0]));
        }
    }
    for (lvl, (d, &len)) in dec.details.iter().zip(&dec.lengths).enumerate() {
        if d.len() != len.div_ceil(2) {
            return bad(format!("level {} has {} details, expected {}", lvl + 1, d.len(), len.div_ceil(2)));
        }
    }
    if dec.approx.len() != dec.lengths[dec.levels - 1].div_ceil(2) {
        return bad(format!("approximation has {} coefficients", dec.approx.len()));
    }
    Ok(())
}

/// Reconstructs the analysed series from its decomposition.
pub fn waverec(dec: &DwtDecomposition) -> Result<TimeSeries> {
    check_bookkeeping(dec)?;
    let mut current = dec.approx.clone();
    for lvl in (0..dec.levels).rev() {
        current = idwt_level(&current, &dec.details[lvl], dec.lengths[lvl], &dec.filter, dec.extension)?;
    }
    TimeSeries::new(current, dec.dt, "reconstructed")
}

/// Squared norms `[|d1|^2, ..., |dL|^2, |aL|^2]`.
pub fn level_energy(dec: &DwtDecomposition) -> Vec<f64> {
    dec.details
        .iter()
        .chain(std::iter::once(&dec.approx))
        .map(|v| v.iter().map(|x| x * x).sum())
        .collect()
}

/// Projects each level back to the time axis: `levels` detail signals (finest
/// first) followed by the approximation signal. They sum to the original series.
pub fn level_components(dec: &DwtDecomposition) -> Result<Vec<Vec<f64>>> {
    check_bookkeeping(dec)?;
    let zeroed = |dec: &DwtDecomposition| DwtDecomposition {
        approx: vec![0.0; dec.approx.len()],
        details: dec.details.iter().map(|d| vec![0.0; d.len()]).collect(),
        ..dec.clone()
    };
    let mut out = Vec::with_capacity(dec.levels + 1);
    for lvl in 0..dec.levels {
        let mut only = zeroed(dec);
        only.details[lvl] = dec.details[lvl].clone();
        out.push(waverec(&only)?.values().to_vec());
    }
    let mut only = zeroed(dec);
    only.approx = dec.approx.clone();
    out.push(waverec(&only)?.values().to_vec());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, SQRT_2};

    fn ts(values: Vec<f64>) -> TimeSeries {
        TimeSeries::new(values, 1.0, "t").unwrap()
    }

    fn rand_values(n: usize, seed: u64) -> Vec<f64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.random_range(-5.0..5.0)).collect()
    }

    #[test]
    #[allow(clippy::approx_constant)] // tabulated values, not derived ones
    fn filter_values() {
        let haar = filter_bank(WaveletName::Haar);
        assert!((haar.lowpass[0] - 0.70710678).abs() < 1e-8 && (haar.lowpass[1] - 0.70710678).abs() < 1e-8);
        assert!((haar.highpass[0] - 0.70710678).abs() < 1e-8 && (haar.highpass[1] + 0.70710678).abs() < 1e-8);
        let db4 = filter_bank(WaveletName::Db4);
        let want = [0.4829629, 0.8365163, 0.2241439, -0.1294095];
        for (h, w) in db4.lowpass.iter().zip(want) {
            assert!((h - w).abs() < 1e-7);
        }
        assert!((db4.lowpass.iter().sum::<f64>() - 1.41421356).abs() < 1e-8);
    }

    #[test]
    fn filter_identities() {
        for name in [WaveletName::Haar, WaveletName::Db4] {
            let f = filter_bank(name);
            let h = &f.lowpass;
            assert!((h.iter().sum::<f64>() - SQRT_2).abs() < 1e-12);
            assert!((h.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
            for m in 1..h.len() / 2 {
                let s: f64 = (0..h.len() - 2 * m).map(|k| h[k] * h[k + 2 * m]).sum();
                assert!(s.abs() < 1e-12, "{name} shift {m}");
            }
            let cross: f64 = h.iter().zip(&f.highpass).map(|(a, b)| a * b).sum();
            assert!(cross.abs() < 1e-12);
        }
        let h = filter_bank(WaveletName::Db4).lowpass;
        let moment: f64 = h.iter().enumerate().map(|(k, v)| if k % 2 == 0 { 1.0 } else { -1.0 } * k as f64 * v).sum();
        assert!(moment.abs() < 1e-10);
    }

    #[test]
    fn haar_single_level_by_hand() {
        let f = filter_bank(WaveletName::Haar);
        let (a, d) = dwt_level(&[2.0, 4.0, 6.0, 8.0], &f, Extension::Periodic).unwrap();
        assert!((a[0] - 6.0 / SQRT_2).abs() < 1e-12 && (a[1] - 14.0 / SQRT_2).abs() < 1e-12);
        assert!(d.iter().all(|v| (v + SQRT_2).abs() < 1e-12));
        for ext in [Extension::Periodic, Extension::Symmetric] {
            let (_, d) = dwt_level(&[5.0; 4], &f, ext).unwrap();
            assert_eq!(d, vec![0.0, 0.0]);
        }
        assert!(dwt_level(&[1.0], &f, Extension::Periodic).is_err());
    }

    #[test]
    fn db4_annihilates_constants() {
        let f = filter_bank(WaveletName::Db4);
        for n in [2, 5, 8, 13, 64] {
            for ext in [Extension::Periodic, Extension::Symmetric] {
                let (a, d) = dwt_level(&vec![3.0; n], &f, ext).unwrap();
                assert_eq!(a.len(), n.div_ceil(2));
                assert!(d.iter().all(|v| v.abs() < 1e-12), "n={n} {ext}");
            }
        }
    }

    #[test]
    fn constant_series_five_levels() {
        let dec = wavedec(&ts(vec![1.0; 32]), &filter_bank(WaveletName::Haar), 5, Extension::Periodic).unwrap();
        assert!(dec.details.iter().flatten().all(|v| v.abs() < 1e-12));
        assert_eq!(dec.approx.len(), 1);
        assert!((dec.approx[0] - 2f64.powf(2.5)).abs() < 1e-12);
        let e = level_energy(&dec);
        assert_eq!(e.len(), 6);
        assert!(e[..5].iter().all(|v| *v < 1e-24));
        assert!((e[5] - 32.0).abs() < 1e-10);
    }

    #[test]
    fn odd_length_chain_and_level_limit() {
        let dec = wavedec(&ts(rand_values(61, 1)), &filter_bank(WaveletName::Haar), 5, Extension::Symmetric).unwrap();
        assert_eq!(dec.coefficient_lengths(), vec![31, 16, 8, 4, 2]);
        assert_eq!(dec.lengths, vec![61, 31, 16, 8, 4]);
        let err = wavedec(&ts(vec![1.0; 8]), &filter_bank(WaveletName::Haar), 4, Extension::Periodic).unwrap_err();
        assert_eq!(err.code(), "TooManyLevels");
        assert!(wavedec(&ts(vec![1.0; 8]), &filter_bank(WaveletName::Haar), 3, Extension::Periodic).is_ok());
        assert!(wavedec(&ts(vec![1.0; 8]), &filter_bank(WaveletName::Haar), 0, Extension::Periodic).is_err());
    }

    #[test]
    fn roundtrip_every_small_length() {
        for name in [WaveletName::Haar, WaveletName::Db4] {
            let f = filter_bank(name);
            for ext in [Extension::Periodic, Extension::Symmetric] {
                for n in 2..150 {
                    let x = rand_values(n, n as u64);
                    let (a, d) = dwt_level(&x, &f, ext).unwrap();
                    let back = idwt_level(&a, &d, n, &f, ext).unwrap();
                    let err = x.iter().zip(&back).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
                    assert!(err < 1e-10 * 6.0, "{name} {ext} n={n} err={err}");
                }
            }
        }
    }

    #[test]
    fn roundtrip_examples() {
        let x = rand_values(64, 3);
        let dec = wavedec(&ts(x.clone()), &filter_bank(WaveletName::Haar), 5, Extension::Periodic).unwrap();
        let back = waverec(&dec).unwrap();
        assert!(x.iter().zip(back.values()).all(|(a, b)| (a - b).abs() < 1e-10));

        let x = rand_values(61, 4);
        let dec = wavedec(&ts(x.clone()), &filter_bank(WaveletName::Db4), 5, Extension::Symmetric).unwrap();
        let back = waverec(&dec).unwrap();
        assert!(x.iter().zip(back.values()).all(|(a, b)| (a - b).abs() < 1e-10));

        let dec = wavedec(&ts(vec![0.0; 40]), &filter_bank(WaveletName::Db4), 3, Extension::Symmetric).unwrap();
        assert!(waverec(&dec).unwrap().values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn broken_bookkeeping_is_rejected() {
        let dec = wavedec(&ts(rand_values(40, 5)), &filter_bank(WaveletName::Db4), 3, Extension::Symmetric).unwrap();
        let mut bad = dec.clone();
        bad.lengths[1] = 19;
        assert_eq!(waverec(&bad).unwrap_err().code(), "InconsistentLengths");
        let mut bad = dec.clone();
        bad.details[2].pop();
        assert_eq!(waverec(&bad).unwrap_err().code(), "InconsistentLengths");
        let mut bad = dec;
        bad.original_n = 41;
        assert!(waverec(&bad).is_err());
    }

    #[test]
    fn short_period_energy_sits_in_fine_levels() {
        let x: Vec<f64> = (0..64).map(|t| (2.0 * PI * t as f64 / 4.0).sin()).collect();
        let dec = wavedec(&ts(x), &filter_bank(WaveletName::Haar), 5, Extension::Periodic).unwrap();
        let e = level_energy(&dec);
        assert!(e[0] + e[1] > e[5], "{e:?}");
    }

    #[test]
    fn db4_annihilates_affine_interior() {
        let f = filter_bank(WaveletName::Db4);
        let (a, b) = (2.5, -0.75);
        for n in [32, 61, 100] {
            let x: Vec<f64> = (0..n).map(|t| a + b * t as f64).collect();
            for ext in [Extension::Periodic, Extension::Symmetric] {
                let (_, d) = dwt_level(&x, &f, ext).unwrap();
                let shift = ext.shift(4) as isize;
                for (k, v) in d.iter().enumerate() {
                    let first = 2 * k as isize - shift;
                    if first >= 0 && first + 3 < n as isize {
                        assert!(v.abs() < 1e-10 * (a.abs() + b.abs() * n as f64), "n={n} {ext} k={k} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn components_sum_to_signal() {
        let x = rand_values(61, 9);
        let dec = wavedec(&ts(x.clone()), &filter_bank(WaveletName::Db4), 4, Extension::Symmetric).unwrap();
        let parts = level_components(&dec).unwrap();
        assert_eq!(parts.len(), 5);
        for t in 0..61 {
            let s: f64 = parts.iter().map(|p| p[t]).sum();
            assert!((s - x[t]).abs() < 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn perfect_reconstruction(
            n in prop::sample::select(vec![32usize, 61, 64, 100, 1024]),
            db4 in any::<bool>(),
            periodic in any::<bool>(),
            seed in any::<u64>(),
        ) {
            let f = filter_bank(if db4 { WaveletName::Db4 } else { WaveletName::Haar });
            let ext = if periodic { Extension::Periodic } else { Extension::Symmetric };
            let x = rand_values(n, seed);
            let dec = wavedec(&ts(x.clone()), &f, 5, ext).unwrap();
            let back = waverec(&dec).unwrap();
            let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (p, q) in x.iter().zip(back.values()) {
                prop_assert!((p - q).abs() < 1e-10 * (1.0 + max));
            }
            if periodic && n.is_power_of_two() {
                let total: f64 = x.iter().map(|v| v * v).sum();
                let e: f64 = level_energy(&dec).iter().sum();
                prop_assert!(((e - total) / total).abs() < 1e-9);
            }
        }
    }
}
