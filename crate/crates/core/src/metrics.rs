//! Empirical complexity measurement and the arithmetic-cost comparison table.
//!
//! Counts are measured by running each straight-line algorithm once over
//! [`CountingScalar`] inputs; they are structural, so the tally never depends
//! on the data values. Algorithms that were not implemented here (Chen, Lee)
//! appear with their cited literature counts, clearly marked.
//!
//! [`CountingScalar`]: crate::numerics::CountingScalar

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fast8::{apply_scale, fast8_core, preprocess};
use crate::numerics::{OpTally, TallySink};
use crate::rivals::{
    arai_descale, arai_stages, arai_stages_null_mean, loeffler_stages, loeffler_stages_null_mean,
    naive_stages, AlgorithmId,
};
use crate::sbp::{difference_block, Scenario};

/// Provable lower bound on non-trivial multiplications for an exact N-point
/// DCT, `N = 2^r`: `μ(2^r) = 2^(r+1) − r − 2` (so μ(8) = 11).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinMultBound {
    pub n: usize,
    pub mu: u64,
}

pub fn min_mult_bound(n: usize) -> Result<MinMultBound> {
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::NotPowerOfTwo { got: n });
    }
    let r = n.trailing_zeros() as u64;
    Ok(MinMultBound {
        n,
        mu: (1u64 << (r + 1)) - r - 2,
    })
}

fn canonical_input(scenario: Scenario) -> [f64; 8] {
    // arbitrary / null-mean probe vectors; the accumulated scenarios take
    // their prefix sums. Values are irrelevant to the tally.
    const RAW: [f64; 8] = [3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0];
    const NULL_MEAN: [f64; 8] = [1.0, -2.0, 3.0, -4.0, 5.0, -6.0, 7.0, -4.0];
    let base = match scenario {
        Scenario::Arbitrary | Scenario::Accumulated => RAW,
        Scenario::NullMean | Scenario::NullMeanAccumulated => NULL_MEAN,
    };
    if scenario.input_is_accumulated() {
        let mut acc = [0.0; 8];
        let mut run = 0.0;
        for (slot, v) in acc.iter_mut().zip(base.iter()) {
            run += v;
            *slot = run;
        }
        acc
    } else {
        base
    }
}

/// Runs `alg` once under `scenario` on counting scalars and returns the
/// tally. Rivals receive the 7-addition difference system in front of
/// accumulated input; the null-mean variants drop their DC path. Scaled
/// measurement is only available for the algorithms that define a scaled
/// spectrum.
pub fn measure_ops(alg: AlgorithmId, scenario: Scenario, scaled: bool) -> Result<OpTally> {
    measure_ops_on(alg, scenario, scaled, &canonical_input(scenario))
}

fn measure_ops_on(
    alg: AlgorithmId,
    scenario: Scenario,
    scaled: bool,
    input: &[f64; 8],
) -> Result<OpTally> {
    if scaled && !alg.supports_scaled() {
        return Err(Error::UnsupportedCombination {
            detail: "algorithm has no scaled form",
        });
    }
    let sink = TallySink::new();
    let x: [_; 8] = core::array::from_fn(|i| sink.data(input[i]));

    match alg {
        AlgorithmId::Proposed => {
            let (_dc, z) = preprocess(&x, scenario);
            let ac = fast8_core(&z);
            if !scaled {
                let _ = apply_scale(&ac);
            }
        }
        AlgorithmId::Loeffler => {
            let x = if scenario.input_is_accumulated() {
                difference_block(&x)
            } else {
                x
            };
            match scenario {
                Scenario::NullMean | Scenario::NullMeanAccumulated => {
                    let _ = loeffler_stages_null_mean(&x);
                }
                _ => {
                    let _ = loeffler_stages(&x);
                }
            }
        }
        AlgorithmId::Arai => {
            let x = if scenario.input_is_accumulated() {
                difference_block(&x)
            } else {
                x
            };
            let out = match scenario {
                Scenario::NullMean | Scenario::NullMeanAccumulated => arai_stages_null_mean(&x),
                _ => arai_stages(&x),
            };
            if !scaled {
                let _ = arai_descale(&out);
            }
        }
        AlgorithmId::Naive => {
            let x = if scenario.input_is_accumulated() {
                difference_block(&x)
            } else {
                x
            };
            let _ = naive_stages(&x);
        }
    }
    Ok(sink.snapshot())
}

/// Where a table row's numbers come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Measured,
    Cited,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Measured => "measured",
            Source::Cited => "cited",
        }
    }
}

/// Algorithms appearing in the comparison table; a superset of
/// [`AlgorithmId`] because two rows are carried as cited constants only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableAlgorithm {
    Loeffler,
    Lee,
    Chen,
    Arai,
    Proposed,
    Naive,
}

impl TableAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            TableAlgorithm::Loeffler => "loeffler",
            TableAlgorithm::Lee => "lee",
            TableAlgorithm::Chen => "chen",
            TableAlgorithm::Arai => "arai",
            TableAlgorithm::Proposed => "proposed",
            TableAlgorithm::Naive => "naive",
        }
    }

    fn is_scaled_family(self) -> bool {
        matches!(self, TableAlgorithm::Arai | TableAlgorithm::Proposed)
    }
}

impl fmt::Display for TableAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Literature counts a measured row is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CitedCounts {
    pub scaled_mults: Option<u64>,
    pub full_mults: u64,
    pub additions: u64,
}

/// One algorithm × scenario line of the comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityRow {
    pub algorithm: TableAlgorithm,
    pub scenario: Scenario,
    pub scaled_mults: u64,
    pub full_mults: u64,
    pub additions: u64,
    pub source: Source,
    pub cited: Option<CitedCounts>,
}

impl ComplexityRow {
    /// `Some(true)` when every measured figure agrees with its cited
    /// counterpart; `None` for rows that are themselves cited or have no
    /// citation to compare against.
    pub fn matches_cited(&self) -> Option<bool> {
        if self.source != Source::Measured {
            return None;
        }
        let cited = self.cited?;
        let scaled_ok = cited.scaled_mults.map_or(true, |s| s == self.scaled_mults);
        Some(scaled_ok && cited.full_mults == self.full_mults && cited.additions == self.additions)
    }
}

const SCENARIOS: [Scenario; 4] = Scenario::ALL;

const LOEFFLER_CITED: [(u64, u64); 4] = [(11, 29), (11, 26), (11, 36), (11, 33)];
const LEE_CITED: [(u64, u64); 4] = [(12, 29), (11, 26), (12, 36), (11, 33)];
const CHEN_CITED: [(u64, u64); 4] = [(13, 26), (12, 23), (13, 33), (12, 30)];
const ARAI_CITED: [(u64, u64, u64); 4] = [(5, 13, 28), (5, 12, 25), (5, 13, 35), (5, 12, 32)];
const PROPOSED_CITED: [(u64, u64, u64); 4] = [(5, 11, 39), (5, 11, 25), (5, 11, 30), (5, 11, 19)];

fn measured_row(
    table_alg: TableAlgorithm,
    alg: AlgorithmId,
    scenario: Scenario,
    cited: Option<CitedCounts>,
) -> ComplexityRow {
    let full = measure_ops(alg, scenario, false).expect("unscaled is always measurable");
    let scaled_mults = if alg.supports_scaled() {
        measure_ops(alg, scenario, true)
            .expect("scaled form exists")
            .nontrivial_mults
    } else {
        full.nontrivial_mults
    };
    ComplexityRow {
        algorithm: table_alg,
        scenario,
        scaled_mults,
        full_mults: full.nontrivial_mults,
        additions: full.additions,
        source: Source::Measured,
        cited,
    }
}

fn cited_row(
    algorithm: TableAlgorithm,
    scenario: Scenario,
    full_mults: u64,
    additions: u64,
) -> ComplexityRow {
    ComplexityRow {
        algorithm,
        scenario,
        scaled_mults: full_mults,
        full_mults,
        additions,
        source: Source::Cited,
        cited: None,
    }
}

/// All rows of the comparison table: measured Loeffler/Arai/Proposed/Naive,
/// cited Chen/Lee.
pub fn complexity_report() -> Vec<ComplexityRow> {
    let mut rows = Vec::with_capacity(24);
    for (i, scenario) in SCENARIOS.into_iter().enumerate() {
        let (m, a) = LOEFFLER_CITED[i];
        rows.push(measured_row(
            TableAlgorithm::Loeffler,
            AlgorithmId::Loeffler,
            scenario,
            Some(CitedCounts {
                scaled_mults: None,
                full_mults: m,
                additions: a,
            }),
        ));
    }
    for (i, scenario) in SCENARIOS.into_iter().enumerate() {
        let (m, a) = LEE_CITED[i];
        rows.push(cited_row(TableAlgorithm::Lee, scenario, m, a));
    }
    for (i, scenario) in SCENARIOS.into_iter().enumerate() {
        let (m, a) = CHEN_CITED[i];
        rows.push(cited_row(TableAlgorithm::Chen, scenario, m, a));
    }
    for (i, scenario) in SCENARIOS.into_iter().enumerate() {
        let (s, m, a) = ARAI_CITED[i];
        rows.push(measured_row(
            TableAlgorithm::Arai,
            AlgorithmId::Arai,
            scenario,
            Some(CitedCounts {
                scaled_mults: Some(s),
                full_mults: m,
                additions: a,
            }),
        ));
    }
    for (i, scenario) in SCENARIOS.into_iter().enumerate() {
        let (s, m, a) = PROPOSED_CITED[i];
        rows.push(measured_row(
            TableAlgorithm::Proposed,
            AlgorithmId::Proposed,
            scenario,
            Some(CitedCounts {
                scaled_mults: Some(s),
                full_mults: m,
                additions: a,
            }),
        ));
    }
    for scenario in SCENARIOS {
        rows.push(measured_row(
            TableAlgorithm::Naive,
            AlgorithmId::Naive,
            scenario,
            None,
        ));
    }
    rows
}

/// Fixed notes printed under the table.
pub fn report_notes() -> Vec<String> {
    let mut notes = Vec::new();
    notes.push(String::from(
        "rival figures for the accumulated scenarios (iii, iv) include the 7-addition difference system.",
    ));
    notes.push(String::from(
        "arai, scenario (iii): measured additions are 29 + 7 = 36 against the cited 35; the classical arai flow costs 29 additions where the cited table lists 28.",
    ));
    notes.push(String::from(
        "arai full multiplications measure 11, not the cited 13/12: under this normalization the DC and k=4 scale slots are exactly 1, so descaling costs 6 non-trivial multiplications.",
    ));
    notes.push(String::from(
        "proposed, scenario (iii): measured total 30 additions equals the cited total, but splits as 19 core + 11 for the accumulated-input DC removal (shift-add chain), whereas that stage is cited at 10 additions.",
    ));
    notes
}

fn mult_column(row: &ComplexityRow) -> String {
    if row.algorithm.is_scaled_family() {
        format!("{} ({})", row.scaled_mults, row.full_mults)
    } else {
        format!("{}", row.full_mults)
    }
}

fn cited_column(row: &ComplexityRow) -> String {
    match row.cited {
        None => String::from("-"),
        Some(c) => match c.scaled_mults {
            Some(s) => format!("{} ({}) / {}", s, c.full_mults, c.additions),
            None => format!("{} / {}", c.full_mults, c.additions),
        },
    }
}

fn match_column(row: &ComplexityRow) -> &'static str {
    match row.matches_cited() {
        Some(true) => "match",
        Some(false) => "MISMATCH",
        None => "-",
    }
}

/// Renders the aligned plain-text table, including the μ(8) bound line and
/// the discrepancy notes.
pub fn render_table(rows: &[ComplexityRow]) -> String {
    let mu = min_mult_bound(8).expect("8 is a power of two");
    let mut out = String::new();
    let _ = writeln!(out, "8-point DCT arithmetic cost by input scenario");
    let _ = writeln!(
        out,
        "minimum multiplicative complexity: mu({}) = {}",
        mu.n, mu.mu
    );
    let _ = writeln!(out);
    let header = format!(
        "{:<10} {:<26} {:<8} {:<10} {:<9} {:<14} {}",
        "algorithm", "scenario", "mults", "additions", "source", "cited", "match"
    );
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "{}", "-".repeat(header.len()));
    for row in rows {
        let scenario = format!("{} ({})", row.scenario.name(), row.scenario.numeral());
        let _ = writeln!(
            out,
            "{:<10} {:<26} {:<8} {:<10} {:<9} {:<14} {}",
            row.algorithm.name(),
            scenario,
            mult_column(row),
            row.additions,
            row.source.name(),
            cited_column(row),
            match_column(row),
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "notes:");
    for note in report_notes() {
        let _ = writeln!(out, "  - {note}");
    }
    out
}

/// Machine-readable CSV with header
/// `algorithm,scenario,scaled_mults,full_mults,additions,source,paper_value,match`.
pub fn render_csv(rows: &[ComplexityRow]) -> String {
    let mut out = String::from(
        "algorithm,scenario,scaled_mults,full_mults,additions,source,paper_value,match\n",
    );
    for row in rows {
        let paper_value = match row.cited {
            None => String::new(),
            Some(c) => match c.scaled_mults {
                Some(s) => format!("{}({})/{}", s, c.full_mults, c.additions),
                None => format!("{}/{}", c.full_mults, c.additions),
            },
        };
        let match_flag = match row.matches_cited() {
            Some(true) => "match",
            Some(false) => "mismatch",
            None => "n/a",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.algorithm.name(),
            row.scenario.numeral(),
            row.scaled_mults,
            row.full_mults,
            row.additions,
            row.source.name(),
            paper_value,
            match_flag,
        );
    }
    out
}
