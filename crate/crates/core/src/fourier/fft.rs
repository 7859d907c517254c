//! Arbitrary-length complex FFT.
//!
//! Power-of-two lengths use an iterative radix-2 decimation-in-time kernel.
//! Every other length is mapped onto a power-of-two circular convolution with
//! Bluestein's chirp-z identity `nk = (n^2 + k^2 - (k - n)^2) / 2`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// In-place forward transform `X_k = sum_n x_n exp(-2*pi*i*k*n/N)`, unnormalized.
pub fn fft_forward(buf: &mut [Complex64]) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(buf, false);
    } else {
        bluestein(buf);
    }
}

/// In-place inverse transform, including the `1/N` factor.
pub fn fft_inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    if n == 0 {
        return;
    }
    if n.is_power_of_two() {
        radix2(buf, true);
    } else {
        buf.iter_mut().for_each(|c| *c = c.conj());
        bluestein(buf);
        buf.iter_mut().for_each(|c| *c = c.conj());
    }
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
}

/// Twiddle table `exp(-2*pi*i*k/n)` for `k < n/2`, each entry evaluated directly.
fn twiddles(n: usize, inverse: bool) -> Vec<Complex64> {
    let sign = if inverse { 1.0 } else { -1.0 };
    (0..n / 2)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / n as f64))
        .collect()
}

fn radix2(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let table = twiddles(n, inverse);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = table[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(buf: &mut [Complex64]) {
    let n = buf.len();
    let m = (2 * n - 1).next_power_of_two();
    // exp(-i*pi*k^2/n); k^2 is reduced mod 2n so the angle stays small.
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = (k as u128 * k as u128 % (2 * n as u128)) as f64;
            Complex64::from_polar(1.0, -PI * k2 / n as f64)
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for (k, (x, w)) in buf.iter().zip(&chirp).enumerate() {
        a[k] = x * w;
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }

    radix2(&mut a, false);
    radix2(&mut b, false);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    radix2(&mut a, true);
    let scale = 1.0 / m as f64;
    for (k, out) in buf.iter_mut().enumerate() {
        *out = a[k] * chirp[k] * scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * PI * ((k * j) % n) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }

    fn signal(n: usize) -> Vec<Complex64> {
        (0..n).map(|i| Complex64::new((i as f64 * 0.37).sin() + 0.1 * i as f64, (i as f64 * 1.3).cos())).collect()
    }

    #[test]
    fn matches_naive_for_many_lengths() {
        for n in (1..70).chain([97, 128, 243, 500]) {
            let x = signal(n);
            let want = naive(&x);
            let mut got = x.clone();
            fft_forward(&mut got);
            let scale = want.iter().map(|c| c.norm()).fold(1e-300, f64::max);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).norm() / scale < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        for n in [1, 2, 3, 8, 61, 100, 256] {
            let x = signal(n);
            let mut y = x.clone();
            fft_forward(&mut y);
            fft_inverse(&mut y);
            for (a, b) in x.iter().zip(&y) {
                assert!((a - b).norm() < 1e-12 * (1.0 + n as f64));
            }
        }
    }
}
