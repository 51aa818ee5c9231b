//! Literature baselines: the Loeffler exact 11-multiplication DCT and the
//! Arai–Agui–Nakajima 5-multiplication scaled DCT, plus the naive
//! matrix–vector product. All three produce the same spectrum as
//! [`dct_forward`] (the Arai flow up to its known scale vector), and all are
//! written as straight-line code so a counting run measures their structural
//! cost.
//!
//! [`dct_forward`]: crate::reference::dct_forward

use core::fmt;

use crate::error::{Error, Result};
use crate::numerics::{mat_vec, trig_constants, Scalar, SQRT_2};
use crate::reference::dct_matrix;

/// The 8-point algorithms the toolkit can run and measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    Naive,
    Proposed,
    Loeffler,
    Arai,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 4] = [
        AlgorithmId::Naive,
        AlgorithmId::Proposed,
        AlgorithmId::Loeffler,
        AlgorithmId::Arai,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Naive => "naive",
            AlgorithmId::Proposed => "proposed",
            AlgorithmId::Loeffler => "loeffler",
            AlgorithmId::Arai => "arai",
        }
    }

    /// Whether the algorithm natively emits a scaled spectrum.
    pub fn supports_scaled(self) -> bool {
        matches!(self, AlgorithmId::Proposed | AlgorithmId::Arai)
    }

    pub fn parse(text: &str) -> Option<AlgorithmId> {
        match text {
            "naive" => Some(AlgorithmId::Naive),
            "proposed" => Some(AlgorithmId::Proposed),
            "loeffler" => Some(AlgorithmId::Loeffler),
            "arai" => Some(AlgorithmId::Arai),
            _ => None,
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn array8(x: &[f64]) -> Result<[f64; 8]> {
    x.try_into().map_err(|_| Error::DimensionMismatch {
        expected: 8,
        got: x.len(),
    })
}

struct LoefflerStage1<S> {
    a0: S,
    a1: S,
    a2: S,
    a3: S,
    u0: S,
    u1: S,
    u2: S,
    u3: S,
}

// input butterflies: 8 additions
fn loeffler_stage1<S: Scalar>(x: &[S; 8]) -> LoefflerStage1<S> {
    LoefflerStage1 {
        a0: x[0] + x[7],
        a1: x[1] + x[6],
        a2: x[2] + x[5],
        a3: x[3] + x[4],
        u3: x[3] - x[4],
        u2: x[2] - x[5],
        u1: x[1] - x[6],
        u0: x[0] - x[7],
    }
}

// everything past the DC/X4 butterfly: 17 additions, 11 multiplications
fn loeffler_tail<S: Scalar>(st: &LoefflerStage1<S>, x0: S, x4: S) -> [S; 8] {
    let t = trig_constants();

    // even rotation, sqrt(2)-scaled, on (a1 - a2, a0 - a3)
    let b2 = st.a1 - st.a2;
    let b3 = st.a0 - st.a3;
    let ze = S::constant(SQRT_2 * t.c(6)) * (b2 + b3);
    let x2 = ze + S::constant(SQRT_2 * (t.s(6) - t.c(6))) * b3;
    let x6 = ze - S::constant(SQRT_2 * (t.s(6) + t.c(6))) * b2;

    // odd rotations at pi/16 and 3pi/16 (three multiplications each)
    let za = S::constant(t.c(1)) * (st.u0 + st.u3);
    let rot_a0 = za + S::constant(t.s(1) - t.c(1)) * st.u3;
    let rot_a1 = za - S::constant(t.s(1) + t.c(1)) * st.u0;
    let zb = S::constant(t.c(3)) * (st.u1 + st.u2);
    let rot_b0 = zb + S::constant(t.s(3) - t.c(3)) * st.u2;
    let rot_b1 = zb - S::constant(t.s(3) + t.c(3)) * st.u1;

    let e0 = rot_a0 + rot_b0;
    let e1 = rot_a0 - rot_b0;
    let e2 = rot_a1 + rot_b1;
    let e3 = rot_b1 - rot_a1;

    let sqrt2 = S::constant(SQRT_2);
    let x1 = sqrt2 * e0;
    let x7 = sqrt2 * e3;
    let x5 = e1 + e2;
    let x3 = e1 - e2;

    [x0, x1, x2, x3, x4, x5, x6, x7]
}

/// Loeffler's exact 8-point DCT (Loeffler, Ligtenberg, Moshytz 1989):
/// 11 multiplications, 29 additions.
///
/// The odd section runs two plane rotations (angles π/16 and 3π/16, three
/// multiplications each) followed by butterflies and two √2 scalings; the
/// even section needs one √2-scaled rotation.
pub fn loeffler_stages<S: Scalar>(x: &[S; 8]) -> [S; 8] {
    let st = loeffler_stage1(x);
    let b0 = st.a0 + st.a3;
    let b1 = st.a1 + st.a2;
    let x0 = b0 + b1;
    let x4 = b0 - b1;
    loeffler_tail(&st, x0, x4)
}

/// Loeffler variant for null-mean input: the second even butterfly is the
/// negative of the first, so `X[0] = 0` and `X[4] = 2·b0`, saving three
/// additions (26 total).
pub fn loeffler_stages_null_mean<S: Scalar>(x: &[S; 8]) -> [S; 8] {
    let st = loeffler_stage1(x);
    let b0 = st.a0 + st.a3;
    let x0 = S::constant(0.0);
    let x4 = b0 * S::constant(2.0);
    loeffler_tail(&st, x0, x4)
}

/// Exact Loeffler DCT on a length-8 signal.
pub fn loeffler8(x: &[f64]) -> Result<[f64; 8]> {
    Ok(loeffler_stages(&array8(x)?))
}

struct AraiStage1<S> {
    t0: S,
    t1: S,
    t2: S,
    t3: S,
    t4: S,
    t5: S,
    t6: S,
    t7: S,
}

// input butterflies: 8 additions
fn arai_stage1<S: Scalar>(x: &[S; 8]) -> AraiStage1<S> {
    AraiStage1 {
        t0: x[0] + x[7],
        t1: x[1] + x[6],
        t2: x[2] + x[5],
        t3: x[3] + x[4],
        t4: x[3] - x[4],
        t5: x[2] - x[5],
        t6: x[1] - x[6],
        t7: x[0] - x[7],
    }
}

/// Arai–Agui–Nakajima scaled DCT (1988): 5 multiplications, 29 additions.
/// Multiply by [`arai_scale_vector`] to recover the exact spectrum.
pub fn arai_stages<S: Scalar>(x: &[S; 8]) -> [S; 8] {
    let st = arai_stage1(x);
    let t10 = st.t0 + st.t3;
    let t11 = st.t1 + st.t2;
    let o0 = t10 + t11;
    let o4 = t10 - t11;
    arai_tail(&st, o0, o4)
}

/// Null-mean Arai variant: `out[0] = 0` and `out[4] = 2·t10`; 26 additions.
pub fn arai_stages_null_mean<S: Scalar>(x: &[S; 8]) -> [S; 8] {
    let st = arai_stage1(x);
    let t10 = st.t0 + st.t3;
    let o0 = S::constant(0.0);
    let o4 = t10 * S::constant(2.0);
    arai_tail(&st, o0, o4)
}

// everything past the DC/out4 butterfly: 17 additions, 5 multiplications
fn arai_tail<S: Scalar>(st: &AraiStage1<S>, o0: S, o4: S) -> [S; 8] {
    let t = trig_constants();
    let AraiStage1 {
        t0,
        t1,
        t2,
        t3,
        t4,
        t5,
        t6,
        t7,
    } = *st;

    let t13 = t0 - t3;
    let t12 = t1 - t2;
    let z1 = (t12 + t13) * S::constant(t.c(4));
    let o2 = t13 + z1;
    let o6 = t13 - z1;

    let q10 = t4 + t5;
    let q11 = t5 + t6;
    let q12 = t6 + t7;
    let z5 = (q10 - q12) * S::constant(t.c(6));
    let z2 = S::constant(t.c(2) - t.c(6)) * q10 + z5;
    let z4 = S::constant(t.c(2) + t.c(6)) * q12 + z5;
    let z3 = q11 * S::constant(t.c(4));
    let z11 = t7 + z3;
    let z13 = t7 - z3;
    let o5 = z13 + z2;
    let o3 = z13 - z2;
    let o1 = z11 + z4;
    let o7 = z11 - z4;

    [o0, o1, o2, o3, o4, o5, o6, o7]
}

/// Per-coefficient factors that map the Arai flow's output onto the exact
/// spectrum. Under this DCT normalization the DC and `k = 4` slots are
/// exactly 1, so descaling costs six non-trivial multiplications.
pub fn arai_scale_vector() -> [f64; 8] {
    let t = trig_constants();
    [
        1.0,
        SQRT_2 * t.s(1) / t.s(2),
        2.0 * t.s(2),
        SQRT_2 * t.s(3) / t.s(6),
        1.0,
        SQRT_2 * t.s(5) / t.s(6),
        2.0 * t.s(6),
        SQRT_2 * t.s(7) / t.s(2),
    ]
}

/// Applies the Arai scale vector (8 multiplications, 2 of them trivial).
pub fn arai_descale<S: Scalar>(out: &[S; 8]) -> [S; 8] {
    let sc = arai_scale_vector();
    core::array::from_fn(|i| out[i] * S::constant(sc[i]))
}

/// Scaled Arai spectrum plus its scale vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Arai8Output {
    pub scaled: [f64; 8],
    pub scale: [f64; 8],
}

impl Arai8Output {
    pub fn to_exact(&self) -> [f64; 8] {
        arai_descale(&self.scaled)
    }
}

/// Arai scaled DCT on a length-8 signal.
pub fn arai8(x: &[f64]) -> Result<Arai8Output> {
    Ok(Arai8Output {
        scaled: arai_stages(&array8(x)?),
        scale: arai_scale_vector(),
    })
}

/// Baseline full matrix–vector product: 64 multiplications (the ±1 rows are
/// trivial), 56 additions.
pub fn naive_stages<S: Scalar>(x: &[S; 8]) -> [S; 8] {
    let m = dct_matrix(8).expect("N=8 is valid");
    let v = mat_vec(&m, x).expect("shape is fixed");
    v.try_into().ok().expect("eight outputs")
}

/// Naive definition DCT on a length-8 signal.
pub fn naive8(x: &[f64]) -> Result<[f64; 8]> {
    Ok(naive_stages(&array8(x)?))
}
