//! Shared numeric foundations: trigonometric constants, small dense matrices,
//! the cyclic forward difference, and an instrumented scalar for operation
//! counting.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::Cell;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// `sqrt(2)` to full f64 precision.
pub const SQRT_2: f64 = core::f64::consts::SQRT_2;

pub(crate) mod fmath {
    //! Thin libm front so the crate stays `no_std`.
    #[inline]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    #[inline]
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    #[inline]
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
    /// Rounds half away from zero, like `f64::round`.
    #[inline]
    pub fn round(x: f64) -> f64 {
        libm::round(x)
    }
    #[inline]
    pub fn log2(x: f64) -> f64 {
        libm::log2(x)
    }
    #[inline]
    pub fn log10(x: f64) -> f64 {
        libm::log10(x)
    }
    #[inline]
    pub fn exp2(x: f64) -> f64 {
        libm::exp2(x)
    }
}

/// The fourteen constants `c_k = cos(kπ/16)`, `s_k = sin(kπ/16)`, `k = 1..7`,
/// indexed 1-based (`c[0]`/`s[0]` hold cos 0 / sin 0 so indices read naturally).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigConstants {
    pub c: [f64; 8],
    pub s: [f64; 8],
}

/// Evaluates the constants to full double precision.
pub fn trig_constants() -> TrigConstants {
    let mut c = [0.0; 8];
    let mut s = [0.0; 8];
    for k in 0..8 {
        let a = k as f64 * core::f64::consts::PI / 16.0;
        c[k] = fmath::cos(a);
        s[k] = fmath::sin(a);
    }
    TrigConstants { c, s }
}

impl TrigConstants {
    #[inline]
    pub fn c(&self, k: usize) -> f64 {
        self.c[k]
    }
    #[inline]
    pub fn s(&self, k: usize) -> f64 {
        self.s[k]
    }
}

/// Row-major dense matrix of f64 entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { 1.0 } else { 0.0 })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transposed(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| factor * self.get(r, c))
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute entrywise difference against `rhs`.
    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> Result<f64> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            });
        }
        let mut m = 0.0f64;
        for (a, b) in self.data.iter().zip(rhs.data.iter()) {
            m = m.max(fmath::abs(a - b));
        }
        Ok(m)
    }

    /// Submatrix of `row_range` x `col_range` (half-open).
    pub fn slice(
        &self,
        row_range: core::ops::Range<usize>,
        col_range: core::ops::Range<usize>,
    ) -> Self {
        Self::from_fn(row_range.len(), col_range.len(), |r, c| {
            self.get(row_range.start + r, col_range.start + c)
        })
    }
}

/// Applies the forward difference cyclically along each row:
/// `out[i][j] = m[i][(j+1) mod N] − m[i][j]`. Square matrices only.
pub fn cyclic_forward_diff(m: &DenseMatrix) -> Result<DenseMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    Ok(DenseMatrix::from_fn(n, n, |r, c| {
        m.get(r, (c + 1) % n) - m.get(r, c)
    }))
}

const TRIVIAL_TOL: f64 = 1e-12;

/// True iff |a| is 0, 1, or an integral power of two (within 1e−12), i.e. the
/// multiplication is realizable by a sign change and/or bit shift.
pub fn is_trivial_multiplicand(a: f64) -> bool {
    let m = fmath::abs(a);
    if m <= TRIVIAL_TOL {
        return true;
    }
    let k = fmath::round(fmath::log2(m));
    if !(-1074.0..=1023.0).contains(&k) {
        return false;
    }
    fmath::abs(m - fmath::exp2(k)) <= TRIVIAL_TOL
}

/// Running totals of one measurement session.
///
/// Subtractions count as additions; multiplications split into non-trivial and
/// trivial (sign change / shift) per [`is_trivial_multiplicand`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpTally {
    pub nontrivial_mults: u64,
    pub trivial_mults: u64,
    pub additions: u64,
}

/// Owner of one measurement session's tally. Not shared across sessions.
#[derive(Debug, Default)]
pub struct TallySink {
    tally: Cell<OpTally>,
}

impl TallySink {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps a runtime value; operations on it are tallied here.
    pub fn data(&self, value: f64) -> CountingScalar<'_> {
        CountingScalar {
            value,
            sink: Some(&self.tally),
        }
    }

    pub fn lift(&self, values: &[f64]) -> Vec<CountingScalar<'_>> {
        values.iter().map(|&v| self.data(v)).collect()
    }

    pub fn snapshot(&self) -> OpTally {
        self.tally.get()
    }

    pub fn reset(&self) {
        self.tally.set(OpTally::default());
    }
}

/// Scalar abstraction over which the straight-line transforms are written, so
/// the same code runs on plain `f64` and on the instrumented scalar.
///
/// `constant` marks algorithm coefficients; mixing a constant into runtime
/// data is tallied, constant-by-constant folding is not.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn value(self) -> f64;
}

impl Scalar for f64 {
    #[inline]
    fn constant(c: f64) -> Self {
        c
    }
    #[inline]
    fn value(self) -> f64 {
        self
    }
}

/// An f64 whose arithmetic reports into a shared [`OpTally`].
///
/// Values created with [`TallySink::data`] are runtime data; values created
/// with [`Scalar::constant`] are compile-time coefficients. Negation is a free
/// sign change.
#[derive(Debug, Clone, Copy)]
pub struct CountingScalar<'a> {
    value: f64,
    sink: Option<&'a Cell<OpTally>>,
}

impl<'a> CountingScalar<'a> {
    #[inline]
    fn sink_of(a: Self, b: Self) -> Option<&'a Cell<OpTally>> {
        a.sink.or(b.sink)
    }

    #[inline]
    fn bump(sink: &Cell<OpTally>, f: impl FnOnce(&mut OpTally)) {
        let mut t = sink.get();
        f(&mut t);
        sink.set(t);
    }
}

impl<'a> Scalar for CountingScalar<'a> {
    #[inline]
    fn constant(c: f64) -> Self {
        CountingScalar {
            value: c,
            sink: None,
        }
    }
    #[inline]
    fn value(self) -> f64 {
        self.value
    }
}

// clippy sees the tally `+= 1` inside the operator bodies and flags it;
// the mutation is the whole point of this type
#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Add for CountingScalar<'a> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let sink = Self::sink_of(self, rhs);
        if let Some(s) = sink {
            Self::bump(s, |t| t.additions += 1);
        }
        CountingScalar {
            value: self.value + rhs.value,
            sink,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Sub for CountingScalar<'a> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let sink = Self::sink_of(self, rhs);
        if let Some(s) = sink {
            Self::bump(s, |t| t.additions += 1);
        }
        CountingScalar {
            value: self.value - rhs.value,
            sink,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Mul for CountingScalar<'a> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let sink = Self::sink_of(self, rhs);
        if let Some(s) = sink {
            match (self.sink, rhs.sink) {
                // data × data: assume the worst, a full multiplication
                (Some(_), Some(_)) => Self::bump(s, |t| t.nontrivial_mults += 1),
                _ => {
                    let coeff = if self.sink.is_none() {
                        self.value
                    } else {
                        rhs.value
                    };
                    if is_trivial_multiplicand(coeff) {
                        Self::bump(s, |t| t.trivial_mults += 1);
                    } else {
                        Self::bump(s, |t| t.nontrivial_mults += 1);
                    }
                }
            }
        }
        CountingScalar {
            value: self.value * rhs.value,
            sink,
        }
    }
}

impl<'a> Neg for CountingScalar<'a> {
    type Output = Self;
    fn neg(self) -> Self {
        // dashed-line sign change, zero cost
        CountingScalar {
            value: -self.value,
            sink: self.sink,
        }
    }
}

/// Standard matrix–vector product over any [`Scalar`]; matrix entries enter as
/// constants, so a counting run tallies one multiplication per entry and
/// `cols−1` additions per row.
pub fn mat_vec<S: Scalar>(m: &DenseMatrix, v: &[S]) -> Result<Vec<S>> {
    if m.cols() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            got: v.len(),
        });
    }
    let mut out = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let row = m.row(r);
        let mut acc = S::constant(row[0]) * v[0];
        for (coeff, x) in row.iter().zip(v.iter()).skip(1) {
            acc = acc + S::constant(*coeff) * *x;
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn trig_values() {
        let t = trig_constants();
        // k=4 is sqrt(2)/2 on both sides
        assert!((t.c(4) - 0.7071067811865476).abs() < 1e-15);
        assert!((t.s(4) - SQRT_2 / 2.0).abs() < 1e-15);
        // direct evaluation at pi/16
        assert!((t.c(1) - 0.9807852804032304).abs() < 1e-15);
        assert!((t.s(1) - 0.19509032201612825).abs() < 1e-15);
        for k in 1..8 {
            assert!((t.c(k) * t.c(k) + t.s(k) * t.s(k) - 1.0).abs() < 1e-15);
        }
        // rotation identities used by the factored stages
        assert!((t.s(2) + t.s(6) - SQRT_2 * t.c(2)).abs() < 1e-15);
        assert!((t.s(6) - t.s(2) - SQRT_2 * t.s(2)).abs() < 1e-15);
    }

    #[test]
    fn cyclic_diff_basics() {
        let m = DenseMatrix::new(2, 4, vec![5.0, 5.0, 5.0, 5.0, 0.0, 1.0, 3.0, 6.0]).unwrap();
        let d = cyclic_forward_diff(&m).err();
        assert!(matches!(d, Some(Error::NotSquare { rows: 2, cols: 4 })));

        let m = DenseMatrix::new(
            4,
            4,
            vec![
                5.0, 5.0, 5.0, 5.0, //
                0.0, 1.0, 3.0, 6.0, //
                0.0, 0.0, 0.0, 0.0, //
                1.0, 2.0, 4.0, 8.0,
            ],
        )
        .unwrap();
        let d = cyclic_forward_diff(&m).unwrap();
        assert_eq!(d.row(0), &[0.0, 0.0, 0.0, 0.0]);
        assert_eq!(d.row(1), &[1.0, 2.0, 3.0, -6.0]);
        // rows with equal sums over a period difference to rows summing to zero
        for r in 0..4 {
            let s: f64 = d.row(r).iter().sum();
            assert!(s.abs() < 1e-12);
        }
    }

    #[test]
    fn trivial_multiplicands() {
        assert!(is_trivial_multiplicand(0.0));
        assert!(is_trivial_multiplicand(1.0));
        assert!(is_trivial_multiplicand(-1.0));
        assert!(is_trivial_multiplicand(2.0));
        for k in -10i32..=10 {
            let v = fmath::exp2(k as f64);
            assert!(is_trivial_multiplicand(v), "2^{k}");
            assert!(is_trivial_multiplicand(-v), "-2^{k}");
        }
        // 2(c2 - c6), the Arai rotation coefficient: not a power of two
        assert!(!is_trivial_multiplicand(0.5411961001461969));
        assert!(!is_trivial_multiplicand(SQRT_2));
        assert!(!is_trivial_multiplicand(3.0));
    }

    #[test]
    fn mat_vec_basics() {
        let id = DenseMatrix::identity(3);
        let v = vec![1.0, 2.0, 3.0];
        assert_eq!(mat_vec(&id, &v).unwrap(), v);

        let z = DenseMatrix::zeros(2, 2);
        assert_eq!(mat_vec(&z, &[7.0, 9.0]).unwrap(), vec![0.0, 0.0]);

        let bad = mat_vec(&id, &[1.0, 2.0]);
        assert!(matches!(
            bad,
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn counting_scalar_tallies() {
        let sink = TallySink::new();
        let a = sink.data(3.0);
        let b = sink.data(4.0);
        let c = CountingScalar::constant(2.0);
        let d = CountingScalar::constant(0.3);

        let _ = a + b; // 1 addition
        let _ = a - b; // 1 addition
        let _ = a * c; // trivial (2 is a shift)
        let _ = a * d; // non-trivial
        let _ = a * b; // data*data: non-trivial
        let _ = -a; // free
        let _ = c * d; // constant folding: free
        let _ = c + d; // constant folding: free

        let t = sink.snapshot();
        assert_eq!(t.additions, 2);
        assert_eq!(t.trivial_mults, 1);
        assert_eq!(t.nontrivial_mults, 2);
    }

    #[test]
    fn counting_scalar_is_value_transparent() {
        let m = DenseMatrix::from_fn(3, 3, |r, c| (r * 3 + c) as f64 * 0.37 - 1.0);
        let v = [0.25f64, -1.5, 3.125];
        let plain = mat_vec(&m, &v).unwrap();

        let sink = TallySink::new();
        let lifted = sink.lift(&v);
        let counted = mat_vec(&m, &lifted).unwrap();
        for (p, c) in plain.iter().zip(counted.iter()) {
            assert_eq!(p.to_bits(), c.value().to_bits());
        }
        assert_eq!(sink.snapshot().additions, 6);
    }

    #[test]
    fn dense_matrix_shape_errors() {
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        let a = DenseMatrix::identity(2);
        let b = DenseMatrix::identity(3);
        assert!(a.mul(&b).is_err());
        assert!(a.max_abs_diff(&b).is_err());
    }
}
