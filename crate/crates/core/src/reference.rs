//! Ground-truth transforms evaluated straight from their defining sums.
//!
//! Everything here is deliberately slow and obvious: these are the oracles
//! the fast paths are verified against. The DCT uses the Loeffler-compatible
//! `(4/√N)·α_k` normalization, so `C_N = 2√2 · U_N` with `U_N` orthonormal and
//! the inverse carries a constant 1/8 for every N.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{fmath, mat_vec, DenseMatrix};

use core::f64::consts::PI;

/// Transform kernels of the generic summation-by-parts framework.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelId {
    Dft,
    Dht,
    Dct2,
    Dst4,
}

impl KernelId {
    pub const ALL: [KernelId; 4] = [KernelId::Dft, KernelId::Dht, KernelId::Dct2, KernelId::Dst4];

    pub fn name(self) -> &'static str {
        match self {
            KernelId::Dft => "dft",
            KernelId::Dht => "dht",
            KernelId::Dct2 => "dct2",
            KernelId::Dst4 => "dst4",
        }
    }

    /// Only the DFT kernel is complex-valued.
    pub fn is_complex(self) -> bool {
        matches!(self, KernelId::Dft)
    }
}

/// Transform-domain values. `imag` is populated only on the DFT path; `scale`
/// is present while a per-coefficient scale vector remains to be applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub imag: Option<Vec<f64>>,
    pub scale: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn real(values: Vec<f64>) -> Self {
        Spectrum {
            values,
            imag: None,
            scale: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_scaled(&self) -> bool {
        self.scale.is_some()
    }

    /// Applies and drops the scale vector, if any.
    pub fn descaled(&self) -> Spectrum {
        match &self.scale {
            None => self.clone(),
            Some(scale) => Spectrum {
                values: self
                    .values
                    .iter()
                    .zip(scale.iter())
                    .map(|(v, s)| v * s)
                    .collect(),
                imag: self.imag.clone(),
                scale: None,
            },
        }
    }
}

/// DCT matrix with entries `(4/√N)·α_k·cos(π(2n+1)k/(2N))`, `α_0 = 1/√2`.
///
/// Row 0 of the N=8 matrix is all ones (`√2·c4 = 1`), so the DC component
/// costs no multiplications.
pub fn dct_matrix(n: usize) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::LengthTooShort { min: 2, got: n });
    }
    // 4/√N·(1/√2) = 4/√(2N); computed that way so row 0 is exact for N = 8.
    let dc_coeff = 4.0 / fmath::sqrt(2.0 * n as f64);
    let ac_coeff = 4.0 / fmath::sqrt(n as f64);
    Ok(DenseMatrix::from_fn(n, n, |k, j| {
        let coeff = if k == 0 { dc_coeff } else { ac_coeff };
        coeff * fmath::cos(PI * (2 * j + 1) as f64 * k as f64 / (2.0 * n as f64))
    }))
}

/// Exact DCT by definition: `dct_matrix(N)·x`. `X[0]` equals `Σx[n]`.
pub fn dct_forward(x: &[f64]) -> Result<Spectrum> {
    let m = dct_matrix(x.len())?;
    Ok(Spectrum::real(mat_vec(&m, x)?))
}

/// Inverse of [`dct_forward`]: `Cᵀ·X / 8` (the 1/8 holds for every N because
/// `C_N = 2√2·U_N` with `U_N` orthonormal). Rejects scaled spectra.
pub fn dct_inverse(spectrum: &Spectrum) -> Result<Vec<f64>> {
    if spectrum.is_scaled() {
        return Err(Error::ScaledSpectrum);
    }
    let m = dct_matrix(spectrum.len())?.transposed();
    let v = mat_vec(&m, &spectrum.values)?;
    Ok(v.into_iter().map(|t| t * 0.125).collect())
}

/// Angle `π·(num mod modulus)/den`, reduced in integer arithmetic so large
/// index products do not cost precision.
pub(crate) fn reduced_angle(num: u64, modulus: u64, den: f64) -> f64 {
    PI * (num % modulus) as f64 / den
}

/// Kernel entry `(re, im)`; `im` is zero for all kernels except the DFT.
pub fn kernel_value(id: KernelId, len: usize, n: usize, k: usize) -> Result<(f64, f64)> {
    if n >= len {
        return Err(Error::IndexOutOfRange {
            index: n,
            bound: len,
        });
    }
    if k >= len {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: len,
        });
    }
    Ok(match id {
        KernelId::Dft => {
            let t = -reduced_angle(2 * (n * k) as u64, 2 * len as u64, len as f64);
            (fmath::cos(t), fmath::sin(t))
        }
        _ => (real_kernel(id, len, n, k), 0.0),
    })
}

/// Real kernel value; `id` must not be [`KernelId::Dft`].
pub(crate) fn real_kernel(id: KernelId, len: usize, n: usize, k: usize) -> f64 {
    let nn = len as f64;
    let (n, k) = (n as u64, k as u64);
    let len = len as u64;
    match id {
        KernelId::Dht => {
            // cas(t) = cos t + sin t
            let t = reduced_angle(2 * n * k, 2 * len, nn);
            fmath::cos(t) + fmath::sin(t)
        }
        KernelId::Dct2 => fmath::cos(reduced_angle((2 * n + 1) * k, 4 * len, 2.0 * nn)),
        KernelId::Dst4 => fmath::sin(reduced_angle((2 * k + 1) * (2 * n + 1), 8 * len, 4.0 * nn)),
        KernelId::Dft => unreachable!("DFT handled on the complex path"),
    }
}

/// Bare kernel sum `X[k] = Σ x[n]·ker[n,k]`, with no DCT-style normalization.
pub fn direct_transform(x: &[f64], id: KernelId) -> Result<Spectrum> {
    let n = x.len();
    if n < 2 {
        return Err(Error::LengthTooShort { min: 2, got: n });
    }
    if id.is_complex() {
        let mut re = vec![0.0; n];
        let mut im = vec![0.0; n];
        for k in 0..n {
            let (mut ar, mut ai) = (0.0, 0.0);
            for (j, &xv) in x.iter().enumerate() {
                let (kr, ki) = kernel_value(id, n, j, k)?;
                ar += xv * kr;
                ai += xv * ki;
            }
            re[k] = ar;
            im[k] = ai;
        }
        Ok(Spectrum {
            values: re,
            imag: Some(im),
            scale: None,
        })
    } else {
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = x
                .iter()
                .enumerate()
                .map(|(j, &xv)| xv * real_kernel(id, n, j, k))
                .sum();
        }
        Ok(Spectrum::real(out))
    }
}
