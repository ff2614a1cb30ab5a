//! File formats.
//!
//! | Artifact | Format |
//! |---|---|
//! | CA grid | binary PGM (`P5`, maxval 1, one row per time step) or CSV of bits |
//! | Local profile | CSV `cell,time,value` or 16-bit PGM with the value mapping in a comment |
//! | Distribution | versioned JSON snapshot |

mod grid;
mod profile;
mod snapshot;

pub use grid::{write_grid_csv, write_grid_pgm};
pub use profile::{read_profile_pgm_mapping, write_profile_csv, write_profile_pgm, GrayMapping};
pub use snapshot::{load_snapshot, save_snapshot, DistributionSnapshot, SNAPSHOT_VERSION};

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use crate::{Error, Result};

pub(crate) fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}
