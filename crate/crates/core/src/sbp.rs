//! Summation-by-parts machinery.
//!
//! For periodic signals, `Σ x[n]·y[n] = −Σ z[n]·Δy[n]` with `z` the inclusive
//! prefix sums of `x` and `Δ` the forward difference. When `x` has zero mean,
//! `z[N−1] = 0` and the sum truncates to `n = 0..N−2`, which is what makes the
//! differenced transform matrix (N−1)×(N−1).

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::error::{Error, Result};
use crate::numerics::{fmath, Scalar};
use crate::reference::{kernel_value, real_kernel, KernelId, Spectrum};

/// Inclusive prefix sums `z[n] = Σ_{i≤n} x[i]` of some raw signal.
#[derive(Debug, Clone, PartialEq)]
pub struct AccumulatedSignal {
    pub z: Vec<f64>,
}

impl AccumulatedSignal {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// Final prefix sum, i.e. the total of the underlying raw signal.
    pub fn total(&self) -> f64 {
        *self.z.last().unwrap_or(&0.0)
    }
}

/// Input conventions for the 8-point pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// (i) arbitrary signal: DC removal plus accumulation.
    Arbitrary,
    /// (ii) null-mean signal: accumulation only.
    NullMean,
    /// (iii) input is already accumulated: DC removal adapted to prefix sums.
    Accumulated,
    /// (iv) null-mean and accumulated: no pre-processing at all.
    NullMeanAccumulated,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::Arbitrary,
        Scenario::NullMean,
        Scenario::Accumulated,
        Scenario::NullMeanAccumulated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Arbitrary => "arbitrary",
            Scenario::NullMean => "null-mean",
            Scenario::Accumulated => "accumulated",
            Scenario::NullMeanAccumulated => "null-mean-accumulated",
        }
    }

    /// Roman numeral used in the comparison literature: i, ii, iii, iv.
    pub fn numeral(self) -> &'static str {
        match self {
            Scenario::Arbitrary => "i",
            Scenario::NullMean => "ii",
            Scenario::Accumulated => "iii",
            Scenario::NullMeanAccumulated => "iv",
        }
    }

    /// Input is an accumulated (prefix-sum) sequence rather than raw samples.
    pub fn input_is_accumulated(self) -> bool {
        matches!(self, Scenario::Accumulated | Scenario::NullMeanAccumulated)
    }

    pub fn parse(text: &str) -> Option<Scenario> {
        match text {
            "arbitrary" | "i" => Some(Scenario::Arbitrary),
            "null-mean" | "ii" => Some(Scenario::NullMean),
            "accumulated" | "iii" => Some(Scenario::Accumulated),
            "null-mean-accumulated" | "iv" => Some(Scenario::NullMeanAccumulated),
            _ => None,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tolerance of the null-mean precondition, relative to the largest sample.
const NULL_MEAN_TOL: f64 = 1e-12;

/// Enforces the null-mean precondition shared by the truncated SBP paths.
pub fn validate_null_mean(x: &[f64]) -> Result<()> {
    let sum: f64 = x.iter().sum();
    let max_abs = x.iter().fold(0.0f64, |m, &v| m.max(fmath::abs(v)));
    if max_abs == 0.0 || fmath::abs(sum) <= NULL_MEAN_TOL * max_abs {
        Ok(())
    } else {
        Err(Error::NotNullMean { residual: sum })
    }
}

/// Inclusive prefix sums; N−1 additions.
pub fn accumulate(x: &[f64]) -> AccumulatedSignal {
    let mut z = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    for (i, &v) in x.iter().enumerate() {
        acc = if i == 0 { v } else { acc + v };
        z.push(acc);
    }
    AccumulatedSignal { z }
}

/// Exact inverse of [`accumulate`]: `x[0] = u[0]`, `x[n] = u[n] − u[n−1]`.
/// N−1 subtractions.
pub fn forward_difference_signal(u: &[f64]) -> Result<Vec<f64>> {
    if u.len() < 2 {
        return Err(Error::LengthTooShort {
            min: 2,
            got: u.len(),
        });
    }
    let mut x = Vec::with_capacity(u.len());
    x.push(u[0]);
    for w in u.windows(2) {
        x.push(w[1] - w[0]);
    }
    Ok(x)
}

/// Subtracts the mean. Power-of-two lengths only, so the mean is a shift of
/// the sample sum and the block stays multiplierless.
pub fn remove_dc(x: &[f64]) -> Result<Vec<f64>> {
    if !x.len().is_power_of_two() || x.len() < 2 {
        return Err(Error::NotPowerOfTwo { got: x.len() });
    }
    let sum: f64 = x.iter().sum();
    let mean = sum / x.len() as f64;
    Ok(x.iter().map(|&v| v - mean).collect())
}

/// DC removal adapted to accumulated input: `z[n] = u[n] − (n+1)·u[N−1]/N`
/// for `n = 0..N−2` and `z[N−1] = 0`. The multiples `(n+1)·m` are built from
/// `m = u[N−1]/N` by shifts and additions, never a full multiplication.
pub fn remove_dc_accumulated(u: &AccumulatedSignal) -> Result<AccumulatedSignal> {
    let n = u.len();
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::NotPowerOfTwo { got: n });
    }
    let m = u.total() / n as f64;
    let mut z = Vec::with_capacity(n);
    for i in 0..n - 1 {
        z.push(u.z[i] - (i + 1) as f64 * m);
    }
    z.push(0.0);
    Ok(AccumulatedSignal { z })
}

/// Generic transform through the truncated summation-by-parts identity:
/// `X[k] = −Σ_{n=0}^{N−2} z[n]·(ker[n+1,k] − ker[n,k])`.
///
/// Requires a null-mean input (that is what makes the truncation valid).
pub fn sbp_transform(x: &[f64], id: KernelId) -> Result<Spectrum> {
    let n = x.len();
    if n < 2 {
        return Err(Error::LengthTooShort { min: 2, got: n });
    }
    validate_null_mean(x)?;
    let z = accumulate(x);
    if id.is_complex() {
        let mut re = vec![0.0; n];
        let mut im = vec![0.0; n];
        for k in 0..n {
            let (mut ar, mut ai) = (0.0, 0.0);
            for (j, &zv) in z.z.iter().take(n - 1).enumerate() {
                let (r1, i1) = kernel_value(id, n, j + 1, k)?;
                let (r0, i0) = kernel_value(id, n, j, k)?;
                ar += zv * (r1 - r0);
                ai += zv * (i1 - i0);
            }
            re[k] = -ar;
            im[k] = -ai;
        }
        Ok(Spectrum {
            values: re,
            imag: Some(im),
            scale: None,
        })
    } else {
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            let acc: f64 =
                z.z.iter()
                    .take(n - 1)
                    .enumerate()
                    .map(|(j, &zv)| zv * (real_kernel(id, n, j + 1, k) - real_kernel(id, n, j, k)))
                    .sum();
            *slot = -acc;
        }
        Ok(Spectrum::real(out))
    }
}

/// Forward difference of the unnormalized DCT-II kernel in closed form:
/// `ker[n+1,k] − ker[n,k] = −2·sin(kπ/(2N))·sin(kπ(n+1)/N)`.
pub fn dct_delta_kernel(n_len: usize, n: usize, k: usize) -> Result<f64> {
    if n_len < 2 || n + 2 > n_len {
        return Err(Error::IndexOutOfRange {
            index: n,
            bound: n_len.saturating_sub(1),
        });
    }
    if k == 0 || k >= n_len {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: n_len,
        });
    }
    let nn = n_len as f64;
    let half = fmath::sin(k as f64 * PI / (2.0 * nn));
    let inner = fmath::sin(crate::reference::reduced_angle(
        (k * (n + 1)) as u64,
        2 * n_len as u64,
        nn,
    ));
    Ok(-2.0 * half * inner)
}

/// Diagonal factor of the general-N SBP DCT:
/// `d[k] = (4/√N)·α_k·2·sin(kπ/(2N))` for `k ≥ 1` (`d[0] = 1`; `X[0]` is 0).
pub fn sbp_dct_diagonal(n: usize) -> Vec<f64> {
    let mut d = vec![1.0; n];
    let nn = n as f64;
    let coeff = 4.0 / fmath::sqrt(nn);
    for (k, slot) in d.iter_mut().enumerate().skip(1) {
        *slot = coeff * 2.0 * fmath::sin(k as f64 * PI / (2.0 * nn));
    }
    d
}

/// General-N SBP DCT for null-mean input. `X[0] = 0`; for `k ≥ 1`,
/// `X[k] = d[k] · Σ_{n=0}^{N−2} z[n]·sin(kπ(n+1)/N)`.
///
/// With `scaled = true` the bare sine-matrix products are returned and the
/// diagonal is reported in the spectrum's scale vector instead of applied.
pub fn sbp_dct_general(x: &[f64], scaled: bool) -> Result<Spectrum> {
    let n = x.len();
    if n < 2 {
        return Err(Error::LengthTooShort { min: 2, got: n });
    }
    validate_null_mean(x)?;
    let z = accumulate(x);
    let nn = n as f64;
    let mut values = vec![0.0; n];
    for (k, slot) in values.iter_mut().enumerate().skip(1) {
        *slot =
            z.z.iter()
                .take(n - 1)
                .enumerate()
                .map(|(j, &zv)| {
                    zv * fmath::sin(crate::reference::reduced_angle(
                        (k * (j + 1)) as u64,
                        2 * n as u64,
                        nn,
                    ))
                })
                .sum();
    }
    let d = sbp_dct_diagonal(n);
    if scaled {
        Ok(Spectrum {
            values,
            imag: None,
            scale: Some(d),
        })
    } else {
        for (v, dk) in values.iter_mut().zip(d.iter()).skip(1) {
            *v *= dk;
        }
        Ok(Spectrum::real(values))
    }
}

// ---------------------------------------------------------------------------
// Counted 8-point pre-processing blocks.
//
// These are the straight-line SFG blocks the scenario pipelines are measured
// through; they run over any `Scalar` so the same code produces both values
// and operation tallies. Costs for N = 8:
//   dc_removal_block            14 additions
//   accumulator_block            6 additions
//   accumulated_dc_removal_block 11 additions (shift-add multiple chain)
//   difference_block             7 additions
// ---------------------------------------------------------------------------

/// Sample sum plus the first seven centered samples `x[n] − mean`.
///
/// Only `x[0..6]` feed the truncated pipeline (`z[7] = 0` by construction), so
/// the block performs 7 + 7 = 14 additions; the returned sum doubles as the
/// DC coefficient.
pub fn dc_removal_block<S: Scalar>(x: &[S; 8]) -> (S, [S; 7]) {
    let mut sum = x[0] + x[1];
    for v in &x[2..] {
        sum = sum + *v;
    }
    let mean = sum * S::constant(0.125);
    let mut centered = [S::constant(0.0); 7];
    for (slot, v) in centered.iter_mut().zip(x.iter()) {
        *slot = *v - mean;
    }
    (sum, centered)
}

/// Prefix sums of the seven leading samples; 6 additions.
pub fn accumulator_block<S: Scalar>(x: &[S; 7]) -> [S; 7] {
    let mut z = *x;
    for i in 1..7 {
        z[i] = z[i - 1] + x[i];
    }
    z
}

/// DC removal on accumulated input: `z[n] = u[n] − (n+1)·m` with
/// `m = u[7]·2⁻³`. Multiples by shift-add: `2m`, `4m` by shift, `3m = 2m+m`,
/// `5m = 4m+m`, `6m = 4m+2m`, `7m = u[7] − m`; 11 additions total.
pub fn accumulated_dc_removal_block<S: Scalar>(u: &[S; 8]) -> [S; 7] {
    let m1 = u[7] * S::constant(0.125);
    let m2 = m1 * S::constant(2.0);
    let m4 = m1 * S::constant(4.0);
    let m3 = m2 + m1;
    let m5 = m4 + m1;
    let m6 = m4 + m2;
    let m7 = u[7] - m1;
    let multiples = [m1, m2, m3, m4, m5, m6, m7];
    let mut z = [S::constant(0.0); 7];
    for i in 0..7 {
        z[i] = u[i] - multiples[i];
    }
    z
}

/// Difference system rivals need in front of accumulated input; 7 additions.
pub fn difference_block<S: Scalar>(u: &[S; 8]) -> [S; 8] {
    let mut x = *u;
    for i in (1..8).rev() {
        x[i] = u[i] - u[i - 1];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::TallySink;
    use crate::reference::direct_transform;
    use alloc::vec;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn accumulate_examples() {
        let z = accumulate(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(z.z, vec![1.0, 3.0, 6.0, 10.0, 15.0, 21.0, 28.0, 36.0]);

        let z = accumulate(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        assert_eq!(z.z, vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(z.total(), 0.0);

        assert_eq!(accumulate(&[0.0; 8]).z, vec![0.0; 8]);
    }

    #[test]
    fn forward_difference_inverts_accumulate() {
        let u = [1.0, 3.0, 6.0, 10.0, 15.0, 21.0, 28.0, 36.0];
        assert_eq!(
            forward_difference_signal(&u).unwrap(),
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]
        );
        let c = [3.5, 3.5, 3.5, 3.5];
        assert_eq!(
            forward_difference_signal(&c).unwrap(),
            vec![3.5, 0.0, 0.0, 0.0]
        );
        assert!(forward_difference_signal(&[1.0]).is_err());
    }

    #[test]
    fn remove_dc_examples() {
        assert_eq!(remove_dc(&[2.0, 4.0]).unwrap(), vec![-1.0, 1.0]);
        assert_eq!(remove_dc(&[1.0; 8]).unwrap(), vec![0.0; 8]);
        assert!(matches!(
            remove_dc(&[1.0; 6]),
            Err(Error::NotPowerOfTwo { got: 6 })
        ));
        let y = remove_dc(&[3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0]).unwrap();
        let s: f64 = y.iter().sum();
        assert!(s.abs() < 1e-13);
    }

    #[test]
    fn remove_dc_accumulated_matches_composition() {
        // null-mean raw input leaves the accumulation unchanged
        let u = accumulate(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        assert_eq!(remove_dc_accumulated(&u).unwrap().z, u.z);

        // constant raw signal accumulates to a ramp that is wiped out
        let u = accumulate(&[1.0; 8]);
        assert_eq!(remove_dc_accumulated(&u).unwrap().z, vec![0.0; 8]);

        let x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
        let direct = remove_dc_accumulated(&accumulate(&x)).unwrap();
        let composed = accumulate(&remove_dc(&x).unwrap());
        for (a, b) in direct.z.iter().zip(composed.z.iter()) {
            assert_close(*a, *b, 1e-12);
        }
        assert_eq!(direct.z[7], 0.0);

        assert!(remove_dc_accumulated(&accumulate(&[1.0; 5])).is_err());
    }

    #[test]
    fn sbp_matches_direct_at_n2() {
        // x = [a, -a]: z = [a, 0], X[1] = -a(cos(3pi/4) - cos(pi/4)) = a*sqrt(2)
        let a = 0.8125;
        let s = sbp_transform(&[a, -a], KernelId::Dct2).unwrap();
        assert_close(s.values[1], a * core::f64::consts::SQRT_2, 1e-15);
        let d = direct_transform(&[a, -a], KernelId::Dct2).unwrap();
        assert_close(s.values[1], d.values[1], 1e-15);
        assert_close(s.values[0], 0.0, 1e-15);
    }

    #[test]
    fn sbp_rejects_non_null_mean() {
        let e = sbp_transform(&[1.0, 2.0, 3.0, 4.0], KernelId::Dht);
        assert!(matches!(e, Err(Error::NotNullMean { .. })));
        let e = sbp_dct_general(&[1.0, 2.0, 3.0, 4.0], false);
        assert!(matches!(e, Err(Error::NotNullMean { .. })));
        // zeros pass trivially
        let s = sbp_transform(&[0.0; 8], KernelId::Dst4).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn delta_kernel_closed_form() {
        // N=2, n=0, k=1: cos(3pi/4) - cos(pi/4) = -sqrt(2)
        let d = dct_delta_kernel(2, 0, 1).unwrap();
        assert_close(d, -core::f64::consts::SQRT_2, 1e-15);
        // a sine zero: N=8, k=4, n=1 -> sin(4*pi*2/8) = sin(pi) = 0
        assert_close(dct_delta_kernel(8, 1, 4).unwrap(), 0.0, 1e-15);

        for n_len in [2usize, 4, 8, 16] {
            for n in 0..n_len - 1 {
                for k in 1..n_len {
                    let expect = real_kernel(KernelId::Dct2, n_len, n + 1, k)
                        - real_kernel(KernelId::Dct2, n_len, n, k);
                    assert_close(dct_delta_kernel(n_len, n, k).unwrap(), expect, 1e-14);
                }
            }
        }

        assert!(dct_delta_kernel(8, 7, 1).is_err());
        assert!(dct_delta_kernel(8, 0, 0).is_err());
        assert!(dct_delta_kernel(8, 0, 8).is_err());
    }

    #[test]
    fn general_dct_scaled_reports_diagonal() {
        let x = remove_dc(&[3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0]).unwrap();
        let scaled = sbp_dct_general(&x, true).unwrap();
        assert!(scaled.is_scaled());
        let unscaled = sbp_dct_general(&x, false).unwrap();
        let descaled = scaled.descaled();
        for k in 1..8 {
            assert_close(descaled.values[k], unscaled.values[k], 1e-12);
        }
        assert_eq!(unscaled.values[0], 0.0);
    }

    #[test]
    fn counted_block_costs() {
        let sink = TallySink::new();
        let x: [_; 8] = core::array::from_fn(|i| sink.data(i as f64 + 0.5));
        let (_, centered) = dc_removal_block(&x);
        assert_eq!(sink.snapshot().additions, 14);
        assert_eq!(sink.snapshot().nontrivial_mults, 0);

        sink.reset();
        let _ = accumulator_block(&centered);
        assert_eq!(sink.snapshot().additions, 6);

        sink.reset();
        let u: [_; 8] = core::array::from_fn(|i| sink.data((i * i) as f64));
        let _ = accumulated_dc_removal_block(&u);
        let t = sink.snapshot();
        assert_eq!(t.additions, 11);
        assert_eq!(t.nontrivial_mults, 0);

        sink.reset();
        let _ = difference_block(&u);
        assert_eq!(sink.snapshot().additions, 7);
    }

    #[test]
    fn counted_blocks_match_plain_ops() {
        let x = [3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0];
        let (sum, centered) = dc_removal_block(&x);
        let plain = remove_dc(&x).unwrap();
        assert_eq!(sum, x.iter().sum::<f64>());
        for (a, b) in centered.iter().zip(plain.iter()) {
            assert_eq!(a, b);
        }

        let u_sig = accumulate(&x);
        let u: [f64; 8] = u_sig.z.clone().try_into().unwrap();
        let z = accumulated_dc_removal_block(&u);
        let z_plain = remove_dc_accumulated(&u_sig).unwrap();
        for (a, b) in z.iter().zip(z_plain.z.iter()) {
            assert_close(*a, *b, 1e-12);
        }

        let d = difference_block(&u);
        for (a, b) in d.iter().zip(x.iter()) {
            assert_close(*a, *b, 1e-12);
        }
    }
}
