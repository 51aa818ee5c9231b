//! The factored 8-point scaled DCT.
//!
//! For a null-mean signal the 8-point DCT reduces to a 7×7 system
//! `X[1..7] = C̃·z[0..6]` on the accumulated input, and C̃ factors as
//!
//! ```text
//! C̃ = S·P·M₁·R₁·R₂·R₃·M₃·M₄·A
//! ```
//!
//! with S diagonal (pure output scaling), P a permutation, and every other
//! factor built from ±1 entries plus five non-trivial constants. The
//! straight-line evaluation in [`fast8_core`] therefore costs exactly
//! 5 non-trivial multiplications and 19 additions; applying S costs 6 more
//! multiplications (its `s₄` slot is exactly 2, a bit shift), for 11 in
//! total: the multiplicative-complexity minimum for an exact 8-point DCT.
//!
//! The matrices exist only for verification; the transform itself never
//! performs a matrix product.

use crate::error::{Error, Result};
use crate::numerics::{trig_constants, DenseMatrix, Scalar, SQRT_2};
use crate::sbp::{
    accumulated_dc_removal_block, accumulator_block, dc_removal_block, validate_null_mean, Scenario,
};

/// The named factorization stages, materialized as matrices for verification.
///
/// Applied right to left: A, M₄, M₃ (7×7), R₃ (8×7), R₂ (8×8 diagonal),
/// R₁ (7×8), M₁, P, S (7×7). P is stored in its operative orientation, the
/// one under which the product reproduces C̃; it wires the outputs into
/// natural order X[1..7].
#[derive(Debug, Clone)]
pub struct StageSet {
    pub a: DenseMatrix,
    pub m4: DenseMatrix,
    pub m3: DenseMatrix,
    pub r3: DenseMatrix,
    pub r2: DenseMatrix,
    pub r1: DenseMatrix,
    pub m1: DenseMatrix,
    pub p: DenseMatrix,
    pub s: DenseMatrix,
}

/// Diagonal of S in output order: `2√2·s_k` for `k = 1..7`. The `k = 4` slot
/// is exactly 2 (a shift), which is why S costs six multiplications, not
/// seven.
pub fn scale_vector() -> [f64; 7] {
    let t = trig_constants();
    let mut sc = [0.0; 7];
    for (k, slot) in sc.iter_mut().enumerate() {
        *slot = 2.0 * SQRT_2 * t.s(k + 1);
    }
    sc[3] = 2.0;
    sc
}

/// Builds all nine stage matrices from the trig constants.
pub fn stage_set() -> StageSet {
    let t = trig_constants();
    let s2 = t.s(2);
    let s4 = t.s(4);
    let s6 = t.s(6);

    let pm = |rows: &[[f64; 7]]| DenseMatrix::from_fn(rows.len(), 7, |r, c| rows[r][c]);

    let a = pm(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0],
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0],
    ]);

    let m4 = pm(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0],
    ]);

    let m3 = pm(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, s4, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, s4, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ]);

    let r3 = pm(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0],
    ]);

    let r2 = DenseMatrix::from_fn(8, 8, |r, c| {
        if r != c {
            0.0
        } else if r == 2 {
            s2
        } else {
            1.0
        }
    });

    let mut r1 = DenseMatrix::zeros(7, 8);
    r1.set(0, 1, s6 - s2); // = sqrt(2)*s2
    r1.set(0, 2, 1.0);
    r1.set(1, 0, s2 + s6); // = sqrt(2)*c2
    r1.set(1, 2, -1.0);
    for i in 2..7 {
        r1.set(i, i + 1, 1.0);
    }

    let m1 = pm(&[
        [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
    ]);

    // output wiring: row i picks component OUTPUT_WIRING[i]
    let p = DenseMatrix::from_fn(7, 7, |r, c| if OUTPUT_WIRING[r] == c { 1.0 } else { 0.0 });

    let sc = scale_vector();
    let s = DenseMatrix::from_fn(7, 7, |r, c| if r == c { sc[r] } else { 0.0 });

    StageSet {
        a,
        m4,
        m3,
        r3,
        r2,
        r1,
        m1,
        p,
        s,
    }
}

/// Output permutation: spectrum slot `i` (coefficient `X[i+1]`) takes the
/// `OUTPUT_WIRING[i]`-th component leaving M₁.
const OUTPUT_WIRING: [usize; 7] = [0, 4, 1, 5, 2, 6, 3];

/// Multiplies the stage chain `S·P·M₁·R₁·R₂·R₃·M₃·M₄·A` out into one 7×7
/// matrix. Must equal [`ctilde_reference`] to 1e−12.
pub fn materialize_ctilde() -> DenseMatrix {
    let st = stage_set();
    st.s.mul(&st.p)
        .and_then(|m| m.mul(&st.m1))
        .and_then(|m| m.mul(&st.r1))
        .and_then(|m| m.mul(&st.r2))
        .and_then(|m| m.mul(&st.r3))
        .and_then(|m| m.mul(&st.m3))
        .and_then(|m| m.mul(&st.m4))
        .and_then(|m| m.mul(&st.a))
        .expect("stage shapes are fixed")
}

/// C̃ built directly from its product-form display: row `k` carries a common
/// factor `2√2·s_k` against ±{s₂, s₄, s₆, 1, 0} patterns.
pub fn ctilde_reference() -> DenseMatrix {
    let t = trig_constants();
    let s2 = t.s(2);
    let s4 = t.s(4);
    let s6 = t.s(6);
    let inner: [[f64; 7]; 7] = [
        [s2, s4, s6, 1.0, s6, s4, s2],
        [s4, 1.0, s4, 0.0, -s4, -1.0, -s4],
        [s6, s4, -s2, -1.0, -s2, s4, s6],
        [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0],
        [s6, -s4, -s2, 1.0, -s2, -s4, s6],
        [s4, -1.0, s4, 0.0, -s4, 1.0, -s4],
        [s2, -s4, s6, -1.0, s6, -s4, s2],
    ];
    DenseMatrix::from_fn(7, 7, |r, c| 2.0 * SQRT_2 * t.s(r + 1) * inner[r][c])
}

/// Straight-line evaluation of `P·M₁·R₁·R₂·R₃·M₃·M₄·A · z`: the scaled AC
/// coefficients in natural order `X[1..7] / scale`.
///
/// Input is the first seven prefix sums of a null-mean signal. Cost is
/// exactly 5 non-trivial multiplications and 19 additions.
pub fn fast8_core<S: Scalar>(z: &[S; 7]) -> [S; 7] {
    let t = trig_constants();
    let s2 = S::constant(t.s(2));
    let s4 = S::constant(t.s(4));
    let rot_a = S::constant(t.s(6) - t.s(2)); // sqrt(2)*s2
    let rot_b = S::constant(t.s(2) + t.s(6)); // sqrt(2)*c2

    // A: butterflies across the symmetric halves (6 additions)
    let a0 = z[0] + z[6];
    let a1 = z[1] + z[5];
    let a2 = z[2] + z[4];
    let a3 = z[3];
    let b0 = z[2] - z[4];
    let b1 = z[1] - z[5];
    let b2 = z[0] - z[6];

    // M4 (2 additions)
    let b_sum = b0 + b2;
    let b_diff = b0 - b2;

    // M3 (2 multiplications)
    let w2 = s4 * a1;
    let w4 = s4 * b_sum;

    // R3: widen to eight lanes (5 additions; the -1 lane is a sign change)
    let r2_in = a0 + a2;
    let r3v = w2 + a3;
    let r4v = w2 - a3;
    let r5v = w4 + b1;
    let r6v = w4 - b1;
    let r7v = -b_diff;

    // R2 (1 multiplication)
    let r2v = s2 * r2_in;

    // R1: the 3-multiplication rotation closes here (2 mults, 2 additions)
    let q0 = rot_a * a2 + r2v;
    let q1 = rot_b * a0 - r2v;

    // M1 (4 additions)
    let m0 = q0 + r3v;
    let m1 = q1 + r4v;
    let m2 = q1 - r4v;
    let m3 = q0 - r3v;

    // P: pure wiring
    [m0, r5v, m1, r7v, m2, r6v, m3]
}

/// Applies the diagonal S to the scaled coefficients: 6 non-trivial
/// multiplications plus the one shift (`s₄` slot = 2).
pub fn apply_scale<S: Scalar>(ac: &[S; 7]) -> [S; 7] {
    let sc = scale_vector();
    core::array::from_fn(|i| ac[i] * S::constant(sc[i]))
}

/// Scenario pre-processing: produces the DC coefficient and the seven prefix
/// sums the core consumes. Pre-processing additions: 20 (arbitrary),
/// 6 (null-mean), 11 (accumulated), 0 (null-mean accumulated); the DC path
/// never multiplies.
pub fn preprocess<S: Scalar>(input: &[S; 8], scenario: Scenario) -> (S, [S; 7]) {
    match scenario {
        Scenario::Arbitrary => {
            let (sum, centered) = dc_removal_block(input);
            (sum, accumulator_block(&centered))
        }
        Scenario::NullMean => {
            let lead: [S; 7] = core::array::from_fn(|i| input[i]);
            (S::constant(0.0), accumulator_block(&lead))
        }
        Scenario::Accumulated => (input[7], accumulated_dc_removal_block(input)),
        Scenario::NullMeanAccumulated => (S::constant(0.0), core::array::from_fn(|i| input[i])),
    }
}

/// Scaled 8-point spectrum: `X[0]` exactly, `X[1..7]` divided by the known
/// per-coefficient scales.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledSpectrum8 {
    pub dc: f64,
    pub ac_scaled: [f64; 7],
    pub scale: [f64; 7],
}

impl ScaledSpectrum8 {
    /// Exact spectrum `[X[0], X[1], …, X[7]]`; each AC slot is one extra
    /// multiplication (`ac_scaled[i] · scale[i]`).
    pub fn to_exact(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        out[0] = self.dc;
        let scaled = apply_scale(&self.ac_scaled);
        out[1..].copy_from_slice(&scaled);
        out
    }
}

fn input_array(input: &[f64]) -> Result<[f64; 8]> {
    input.try_into().map_err(|_| Error::DimensionMismatch {
        expected: 8,
        got: input.len(),
    })
}

fn validate_scenario_input(x: &[f64; 8], scenario: Scenario) -> Result<()> {
    match scenario {
        Scenario::NullMean => validate_null_mean(x),
        Scenario::NullMeanAccumulated => {
            use crate::numerics::fmath;
            let max_abs = x.iter().fold(0.0f64, |m, &v| m.max(fmath::abs(v)));
            if max_abs == 0.0 || fmath::abs(x[7]) <= 1e-12 * max_abs {
                Ok(())
            } else {
                Err(Error::AccumulatedNotNullMean { residual: x[7] })
            }
        }
        Scenario::Arbitrary | Scenario::Accumulated => Ok(()),
    }
}

/// Runs the scenario pipeline and the factored core on an 8-sample input
/// (raw samples, or prefix sums for the accumulated scenarios).
pub fn fast8(input: &[f64], scenario: Scenario) -> Result<ScaledSpectrum8> {
    let x = input_array(input)?;
    validate_scenario_input(&x, scenario)?;
    let (dc, z) = preprocess(&x, scenario);
    let ac_scaled = fast8_core(&z);
    Ok(ScaledSpectrum8 {
        dc,
        ac_scaled,
        scale: scale_vector(),
    })
}

/// [`fast8`] with the scaling stage applied: the exact spectrum, equal to the
/// definition DCT of the underlying raw signal.
pub fn fast8_exact(input: &[f64], scenario: Scenario) -> Result<[f64; 8]> {
    Ok(fast8(input, scenario)?.to_exact())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{cyclic_forward_diff, is_trivial_multiplicand, mat_vec, TallySink};
    use crate::reference::{dct_forward, dct_matrix};
    use crate::sbp::accumulate;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn factorization_matches_reference() {
        let product = materialize_ctilde();
        let reference = ctilde_reference();
        assert!(product.max_abs_diff(&reference).unwrap() <= 1e-12);

        // spot entries of the display
        assert_close(reference.get(0, 3), 0.551798758565886, 1e-12); // 2*sqrt(2)*s1
        assert_eq!(reference.get(3, 1), 0.0);
    }

    #[test]
    fn ctilde_is_negated_forward_difference_of_c8() {
        // -sqrt(2) * cyclic forward difference of the cosine pattern matrix
        // (C8 with its sqrt(2) prefactor divided out), rows 1..7, cols 0..6
        let c8 = dct_matrix(8).unwrap();
        let pattern = c8.scaled(1.0 / SQRT_2);
        let diff = cyclic_forward_diff(&pattern).unwrap();
        let restricted = diff.slice(1..8, 0..7).scaled(-SQRT_2);
        assert!(restricted.max_abs_diff(&ctilde_reference()).unwrap() <= 1e-12);
    }

    #[test]
    fn stage_entries_are_wiring_or_rotation_constants() {
        let st = stage_set();
        let t = trig_constants();

        for m in [&st.a, &st.m1, &st.m4, &st.r3, &st.p] {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let v = m.get(r, c);
                    assert!(v == 0.0 || v == 1.0 || v == -1.0);
                }
            }
        }
        // P: exactly one 1 per row and column
        for r in 0..7 {
            assert_eq!(st.p.row(r).iter().filter(|&&v| v == 1.0).count(), 1);
        }
        for c in 0..7 {
            let ones = (0..7).filter(|&r| st.p.get(r, c) == 1.0).count();
            assert_eq!(ones, 1);
        }
        // R2 = diag(1,1,s2,1,...)
        for r in 0..8 {
            for c in 0..8 {
                let expect = if r != c {
                    0.0
                } else if r == 2 {
                    t.s(2)
                } else {
                    1.0
                };
                assert_eq!(st.r2.get(r, c), expect);
            }
        }
        // R1 rotation entries satisfy the sum/difference identities
        assert_close(st.r1.get(0, 1), SQRT_2 * t.s(2), 1e-15);
        assert_close(st.r1.get(1, 0), SQRT_2 * t.c(2), 1e-15);
        // S diagonal: exactly one trivial slot, value exactly 2
        let sc = scale_vector();
        assert_eq!(sc[3], 2.0);
        assert_eq!(sc.iter().filter(|&&v| v == 2.0).count(), 1);
        assert_eq!(
            sc.iter().filter(|&&v| is_trivial_multiplicand(v)).count(),
            1
        );
    }

    #[test]
    fn core_matches_matrix_oracle() {
        assert_eq!(fast8_core(&[0.0f64; 7]), [0.0; 7]);

        let z = [0.3, -1.2, 0.7, 2.5, -0.4, 1.1, -2.2];
        let ac = fast8_core(&z);
        let exact = apply_scale(&ac);
        let oracle = mat_vec(&materialize_ctilde(), &z).unwrap();
        for (a, b) in exact.iter().zip(oracle.iter()) {
            assert_close(*a, *b, 1e-12);
        }
    }

    #[test]
    fn core_costs_five_mults_nineteen_adds() {
        let sink = TallySink::new();
        let z: [_; 7] = core::array::from_fn(|i| sink.data(i as f64 - 2.5));
        let ac = fast8_core(&z);
        let t = sink.snapshot();
        assert_eq!(t.nontrivial_mults, 5);
        assert_eq!(t.additions, 19);
        assert_eq!(t.trivial_mults, 0);

        let _ = apply_scale(&ac);
        let t = sink.snapshot();
        assert_eq!(t.nontrivial_mults, 11);
        assert_eq!(t.trivial_mults, 1);
        assert_eq!(t.additions, 19);
    }

    #[test]
    fn scenario_pipelines_match_oracle() {
        let x = [3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0];
        let expect = dct_forward(&x).unwrap().values;

        let via_arbitrary = fast8_exact(&x, Scenario::Arbitrary).unwrap();
        let xn = crate::sbp::remove_dc(&x).unwrap();
        let expect_n = dct_forward(&xn).unwrap().values;
        let via_null_mean = fast8_exact(&xn, Scenario::NullMean).unwrap();
        let u = accumulate(&x);
        let via_accumulated = fast8_exact(&u.z, Scenario::Accumulated).unwrap();
        let un = accumulate(&xn);
        let via_nm_acc = fast8_exact(&un.z, Scenario::NullMeanAccumulated).unwrap();

        for k in 0..8 {
            assert_close(via_arbitrary[k], expect[k], 1e-10);
            assert_close(via_null_mean[k], expect_n[k], 1e-10);
            assert_close(via_accumulated[k], expect[k], 1e-10);
            assert_close(via_nm_acc[k], expect_n[k], 1e-10);
        }
    }

    #[test]
    fn scaled_and_exact_agree_bit_for_bit() {
        let x = [0.5, 0.25, -1.5, 2.0, 0.0, -0.75, 1.25, -1.75];
        let s = fast8(&x, Scenario::Arbitrary).unwrap();
        let exact = fast8_exact(&x, Scenario::Arbitrary).unwrap();
        assert_eq!(exact[0].to_bits(), s.dc.to_bits());
        for i in 0..7 {
            assert_eq!(
                exact[i + 1].to_bits(),
                (s.ac_scaled[i] * s.scale[i]).to_bits()
            );
        }
    }

    #[test]
    fn scenario_validation() {
        let e = fast8(&[1.0; 7], Scenario::Arbitrary);
        assert!(matches!(e, Err(Error::DimensionMismatch { .. })));

        let e = fast8(&[1.0; 8], Scenario::NullMean);
        assert!(matches!(e, Err(Error::NotNullMean { .. })));

        let u = accumulate(&[1.0; 8]);
        let e = fast8(&u.z, Scenario::NullMeanAccumulated);
        assert!(matches!(e, Err(Error::AccumulatedNotNullMean { .. })));
    }

    #[test]
    fn dc_is_addition_only_in_every_scenario() {
        for scenario in Scenario::ALL {
            let sink = TallySink::new();
            let vals = match scenario {
                Scenario::Arbitrary => [3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0],
                Scenario::NullMean => [1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 4.0, -4.0],
                Scenario::Accumulated => [3.0, 2.0, 6.0, 7.0, 2.0, 11.0, 13.0, 7.0],
                Scenario::NullMeanAccumulated => [1.0, 0.0, 2.0, 0.0, 3.0, 0.0, 4.0, 0.0],
            };
            let input: [_; 8] = core::array::from_fn(|i| sink.data(vals[i]));
            let (_dc, _z) = preprocess(&input, scenario);
            assert_eq!(sink.snapshot().nontrivial_mults, 0, "{scenario}");
        }
    }
}
