use std::io::Write;
use std::path::Path;

use synpid_core::eca::SpacetimeGrid;

use super::create;
use crate::{Error, Result};

/// Binary PGM, `P5` with maxval 1: one byte per cell, time running down.
pub fn write_grid_pgm(grid: &SpacetimeGrid, mut out: impl Write) -> std::io::Result<()> {
    write!(
        out,
        "P5\n# rule {} seed {}\n{} {}\n1\n",
        grid.rule().rule_number(),
        grid.seed(),
        grid.width(),
        grid.steps()
    )?;
    for row in grid.rows() {
        out.write_all(row)?;
    }
    out.flush()
}

/// One line per time step of comma-separated bits.
pub fn write_grid_csv(grid: &SpacetimeGrid, mut out: impl Write) -> std::io::Result<()> {
    for row in grid.rows() {
        let line: Vec<&str> = row
            .iter()
            .map(|&c| if c == 0 { "0" } else { "1" })
            .collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()
}

impl crate::experiments::GridFormat {
    pub fn write_file(self, grid: &SpacetimeGrid, path: &Path) -> Result<()> {
        let out = create(path)?;
        match self {
            Self::Pgm => write_grid_pgm(grid, out),
            Self::Csv => write_grid_csv(grid, out),
        }
        .map_err(|e| Error::io(path, e))
    }
}
