//! Binary PGM (P5, maxval up to 255) reading and writing.

use anyhow::{bail, Context, Result};
use sbp_dct::image2d::Image;

/// Parses a binary PGM. Header comments (`#` to end of line) are allowed.
pub fn parse_pgm(bytes: &[u8]) -> Result<Image> {
    let mut pos = 0usize;

    fn skip_separators(bytes: &[u8], mut pos: usize) -> usize {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                return pos;
            }
        }
    }

    let mut token = |what: &str| -> Result<String> {
        pos = skip_separators(bytes, pos);
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            bail!("truncated PGM header while reading {what}");
        }
        Ok(core::str::from_utf8(&bytes[start..pos])
            .context("PGM header is not ASCII")?
            .to_string())
    };

    if token("magic")? != "P5" {
        bail!("not a binary PGM (expected P5 magic)");
    }
    let width: usize = token("width")?.parse().context("bad width")?;
    let height: usize = token("height")?.parse().context("bad height")?;
    let maxval: usize = token("maxval")?.parse().context("bad maxval")?;
    if width == 0 || height == 0 {
        bail!("empty image ({width}x{height})");
    }
    if maxval == 0 || maxval > 255 {
        bail!("unsupported maxval {maxval} (need 1..=255)");
    }
    // exactly one whitespace byte separates the header from the raster
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        bail!("missing raster separator");
    }
    pos += 1;
    let need = width * height;
    let raster = &bytes[pos..];
    if raster.len() < need {
        bail!("raster too short: need {need} bytes, have {}", raster.len());
    }
    Image::new(width, height, raster[..need].to_vec())
        .map_err(|e| anyhow::anyhow!("invalid image: {e}"))
}

pub fn encode_pgm(img: &Image) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}
