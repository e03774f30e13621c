//! Deterministic SVG rendering of 2-D colorings: one filled square per grid
//! point, one palette color per class. Output bytes depend only on the
//! coloring, so renders are reproducible and diffable.

use std::io::Write;

use thiserror::Error;

use crate::lambda::Coloring;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("SVG rendering requires a 2-D grid, got dimension {0}")]
    NotTwoDimensional(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Fixed 12-color palette; classes beyond twelve cycle.
pub const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#e6c400",
    "#a65628", "#f781bf", "#17becf", "#66c2a5", "#5254a3", "#8c6d31",
];

const CELL: i64 = 10;

/// Renders a 2-D coloring as an SVG grid of filled squares.
pub fn render_coloring_svg<W: Write>(c: &Coloring, out: &mut W) -> Result<(), SvgError> {
    let grid = c.grid();
    if grid.dim != 2 {
        return Err(SvgError::NotTwoDimensional(grid.dim));
    }
    let m = grid.half_width as i64;
    let side = (2 * m + 1) * CELL;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{side}\" height=\"{side}\" viewBox=\"0 0 {side} {side}\">"
    )?;
    writeln!(out, "<rect width=\"{side}\" height=\"{side}\" fill=\"#ffffff\"/>")?;
    let points = grid.enumerate_points();
    for (p, &cls) in points.iter().zip(c.assignment()) {
        let x = (p.coords[0] + m) * CELL;
        // flip the second coordinate so larger values render upward
        let y = (m - p.coords[1]) * CELL;
        let color = PALETTE[cls as usize % PALETTE.len()];
        writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{color}\"/>"
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

/// Renders to an in-memory byte buffer.
pub fn render_coloring_svg_bytes(c: &Coloring) -> Result<Vec<u8>, SvgError> {
    let mut buf = Vec::new();
    render_coloring_svg(c, &mut buf)?;
    Ok(buf)
}
