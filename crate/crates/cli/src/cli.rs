//! Command definitions and dispatch.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use sbp_dct::fast8::fast8;
use sbp_dct::image2d::{coefficient_planes, transform_image, QuantTable};
use sbp_dct::metrics::{complexity_report, measure_ops, render_csv, render_table};
use sbp_dct::rivals::{
    arai_scale_vector, arai_stages, arai_stages_null_mean, loeffler_stages,
    loeffler_stages_null_mean, naive8, AlgorithmId,
};
use sbp_dct::sbp::{forward_difference_signal, validate_null_mean, Scenario};

use crate::numfmt::{compact, sig12};
use crate::pgm::{encode_pgm, parse_pgm};
use crate::signal_io::{format_signal, parse_signal, parse_table8};
use crate::verify::run_verify;

#[derive(Parser)]
#[command(
    name = "sbp-dct",
    version,
    about = "Summation-by-parts DCT toolkit: transforms, verification, operation counts, and a 2D image pipeline"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_algorithm(s: &str) -> Result<AlgorithmId, String> {
    AlgorithmId::parse(&s.to_ascii_lowercase())
        .ok_or_else(|| format!("unknown algorithm {s:?} (naive|proposed|loeffler|arai)"))
}

fn parse_scenario(s: &str) -> Result<Scenario, String> {
    Scenario::parse(&s.to_ascii_lowercase()).ok_or_else(|| {
        format!("unknown scenario {s:?} (arbitrary|null-mean|accumulated|null-mean-accumulated or i|ii|iii|iv)")
    })
}

#[derive(Subcommand)]
enum Command {
    /// Transform one 8-sample signal file
    Transform {
        /// Input signal: one sample per line, `#` comments
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the coefficients here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "proposed", value_parser = parse_algorithm)]
        algorithm: AlgorithmId,
        #[arg(long, default_value = "arbitrary", value_parser = parse_scenario)]
        scenario: Scenario,
        /// Emit the scaled spectrum with its scale vector
        #[arg(long)]
        scaled: bool,
    },
    /// Blockwise 2D transform of a PGM image into coefficient CSV planes
    Transform2d {
        /// Input image (binary PGM, P5)
        #[arg(long = "in")]
        input: PathBuf,
        /// Output CSV: one row of 64 values per block, block raster order
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "proposed", value_parser = parse_algorithm)]
        algorithm: AlgorithmId,
        /// Write scaled coefficients; the first row is then the 64-entry scale raster
        #[arg(long)]
        scaled: bool,
    },
    /// Run the full verification suite
    Verify {
        /// Seed for the randomized checks
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print measured operation counts for one algorithm/scenario
    Opcount {
        #[arg(long, default_value = "proposed", value_parser = parse_algorithm)]
        algorithm: AlgorithmId,
        #[arg(long, default_value = "arbitrary", value_parser = parse_scenario)]
        scenario: Scenario,
        /// Count the scaled transform (omit the scaling stage)
        #[arg(long)]
        scaled: bool,
    },
    /// Print the arithmetic-cost comparison table
    Table {
        /// Also write the table as CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantized round trip over a PGM image, reporting PSNR
    DemoCompress {
        /// Input image (binary PGM, P5)
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the reconstructed image here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the quantized coefficient planes here (CSV)
        #[arg(long)]
        coeffs: Option<PathBuf>,
        #[arg(long, default_value = "proposed", value_parser = parse_algorithm)]
        algorithm: AlgorithmId,
        /// 8x8 quantization table (CSV, 8 rows of 8); default: JPEG luminance
        #[arg(long)]
        quant: Option<PathBuf>,
    },
}

/// Parses `argv` and runs the command, returning the process exit code.
/// Usage and IO failures come back as errors (exit 2); verification
/// failures return `Ok(1)`.
pub fn run<I, T>(argv: I) -> Result<u8>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    match cli.command {
        Command::Transform {
            input,
            out,
            algorithm,
            scenario,
            scaled,
        } => {
            let text = read_text(&input)?;
            let samples = parse_signal(&text)?;
            let rendered = run_transform(&samples, algorithm, scenario, scaled)?;
            emit(out.as_deref(), &rendered)?;
            Ok(0)
        }
        Command::Transform2d {
            input,
            out,
            algorithm,
            scaled,
        } => {
            let img = parse_pgm(&fs::read(&input).with_context(|| display_path(&input))?)?;
            let planes =
                coefficient_planes(&img, algorithm, scaled).map_err(|e| anyhow::anyhow!("{e}"))?;
            let mut csv = String::new();
            if let Some(scale) = planes.scale {
                csv.push_str(&join_row(&scale));
                csv.push('\n');
            }
            for block in &planes.blocks {
                csv.push_str(&join_row(block));
                csv.push('\n');
            }
            fs::write(&out, csv).with_context(|| display_path(&out))?;
            println!(
                "wrote {} blocks ({}x{}) to {}",
                planes.blocks.len(),
                planes.blocks_wide,
                planes.blocks_high,
                out.display()
            );
            Ok(0)
        }
        Command::Verify { seed } => {
            let outcome = run_verify(seed);
            print!("{}", outcome.report);
            Ok(if outcome.ok { 0 } else { 1 })
        }
        Command::Opcount {
            algorithm,
            scenario,
            scaled,
        } => {
            let tally =
                measure_ops(algorithm, scenario, scaled).map_err(|e| anyhow::anyhow!("{e}"))?;
            println!("mults={} adds={}", tally.nontrivial_mults, tally.additions);
            Ok(0)
        }
        Command::Table { out } => {
            let rows = complexity_report();
            print!("{}", render_table(&rows));
            if let Some(path) = out {
                fs::write(&path, render_csv(&rows)).with_context(|| display_path(&path))?;
            }
            Ok(0)
        }
        Command::DemoCompress {
            input,
            out,
            coeffs,
            algorithm,
            quant,
        } => {
            let img = parse_pgm(&fs::read(&input).with_context(|| display_path(&input))?)?;
            let (q, q_name) = match &quant {
                Some(path) => {
                    let table = parse_table8(&read_text(path)?)?;
                    let q = QuantTable::new(table).map_err(|e| anyhow::anyhow!("{e}"))?;
                    (q, path.display().to_string())
                }
                None => (QuantTable::jpeg_luminance(), String::from("jpeg-luminance")),
            };
            let result =
                transform_image(&img, algorithm, Some(&q)).map_err(|e| anyhow::anyhow!("{e}"))?;
            println!("algorithm={algorithm}");
            println!("quant-table={q_name}");
            println!(
                "scaled-absorbed={}",
                if algorithm.supports_scaled() {
                    "yes"
                } else {
                    "no"
                }
            );
            println!("blocks={}x{}", result.blocks_wide, result.blocks_high);
            println!("psnr-db={}", sig12(result.psnr_db));
            if let Some(path) = out {
                fs::write(&path, encode_pgm(&result.image)).with_context(|| display_path(&path))?;
            }
            if let Some(path) = coeffs {
                let mut csv = String::new();
                for block in &result.coeff_blocks {
                    csv.push_str(&join_row(block));
                    csv.push('\n');
                }
                fs::write(&path, csv).with_context(|| display_path(&path))?;
            }
            Ok(0)
        }
    }
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| display_path(path))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| display_path(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn join_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| compact(*v))
        .collect::<Vec<_>>()
        .join(",")
}

fn array8(x: &[f64]) -> Result<[f64; 8]> {
    if x.len() != 8 {
        bail!("signal must have exactly 8 samples, got {}", x.len());
    }
    Ok(x.try_into().expect("length checked"))
}

fn format_scaled(values: &[f64; 8], scale: &[f64; 8]) -> String {
    let mut s = String::from("# scaled-coefficient scale-factor\n");
    for (v, sc) in values.iter().zip(scale.iter()) {
        s.push_str(&format!("{} {}\n", sig12(*v), sig12(*sc)));
    }
    s
}

/// Applies `algorithm` to one length-8 signal under the scenario's input
/// convention. Rivals take the difference system in front of accumulated
/// input and use their null-mean variants where the scenario guarantees a
/// null mean.
fn run_transform(
    samples: &[f64],
    algorithm: AlgorithmId,
    scenario: Scenario,
    scaled: bool,
) -> Result<String> {
    let input = array8(samples)?;
    if scaled && !algorithm.supports_scaled() {
        bail!("algorithm {algorithm} has no scaled form");
    }

    if algorithm == AlgorithmId::Proposed {
        let spectrum = fast8(&input, scenario).map_err(|e| anyhow::anyhow!("{e}"))?;
        return Ok(if scaled {
            let mut values = [0.0; 8];
            values[0] = spectrum.dc;
            values[1..].copy_from_slice(&spectrum.ac_scaled);
            let mut scale = [1.0; 8];
            scale[1..].copy_from_slice(&spectrum.scale);
            format_scaled(&values, &scale)
        } else {
            format_signal(&spectrum.to_exact())
        });
    }

    // rivals: recover the raw signal, checking the scenario's contract
    let null_mean = matches!(scenario, Scenario::NullMean | Scenario::NullMeanAccumulated);
    let raw: [f64; 8] = if scenario.input_is_accumulated() {
        forward_difference_signal(&input)
            .map_err(|e| anyhow::anyhow!("{e}"))?
            .try_into()
            .expect("length preserved")
    } else {
        input
    };
    if null_mean {
        validate_null_mean(&raw).map_err(|e| anyhow::anyhow!("{e}"))?;
    }

    match algorithm {
        AlgorithmId::Loeffler => {
            let spectrum = if null_mean {
                loeffler_stages_null_mean(&raw)
            } else {
                loeffler_stages(&raw)
            };
            Ok(format_signal(&spectrum))
        }
        AlgorithmId::Arai => {
            let out = if null_mean {
                arai_stages_null_mean(&raw)
            } else {
                arai_stages(&raw)
            };
            if scaled {
                Ok(format_scaled(&out, &arai_scale_vector()))
            } else {
                Ok(format_signal(&sbp_dct::rivals::arai_descale(&out)))
            }
        }
        AlgorithmId::Naive => Ok(format_signal(
            &naive8(&raw).map_err(|e| anyhow::anyhow!("{e}"))?,
        )),
        AlgorithmId::Proposed => unreachable!("handled above"),
    }
}
