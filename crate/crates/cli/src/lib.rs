//! IO, file formats, and the batch command-line surface for the
//! summation-by-parts DCT toolkit. The algorithms themselves live in the
//! `sbp-dct` core crate; this crate adds signal files, PGM images,
//! coefficient CSVs, the deterministic verification suite, and the CLI.

pub mod cli;
pub mod numfmt;
pub mod pgm;
pub mod signal_io;
pub mod verify;
