//! ASCII and SVG drawings of paths and trace steps.
//!
//! The ASCII canvas has one character per vertex, edge slot and cell on a
//! (2m-1)x(2n-1) grid, with y growing downward.

use std::collections::HashSet;
use std::fmt::Write as _;

use hampath_core::{Edge, GridDims, HamPath, SubpathDecomposition, SubpathKind, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Ascii => "txt",
            Format::Svg => "svg",
        }
    }
}

/// What changed between two consecutive states.
#[derive(Clone, Debug, Default)]
pub struct StepMarks {
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

impl StepMarks {
    pub fn between(before: &HamPath, after: &HamPath) -> StepMarks {
        let a: HashSet<Edge> = before.edges().collect();
        let b: HashSet<Edge> = after.edges().collect();
        let mut removed: Vec<Edge> = a.difference(&b).copied().collect();
        let mut added: Vec<Edge> = b.difference(&a).copied().collect();
        removed.sort_by_key(edge_key);
        added.sort_by_key(edge_key);
        StepMarks { removed, added }
    }

    /// Top-left vertex and size, in cells, of the box around the change.
    fn bounds(&self) -> Option<(Vertex, usize, usize)> {
        let vs = self
            .removed
            .iter()
            .chain(&self.added)
            .flat_map(|e| [e.a, e.b]);
        let (mut x0, mut y0, mut x1, mut y1) = (usize::MAX, usize::MAX, 0, 0);
        let mut any = false;
        for v in vs {
            any = true;
            (x0, y0, x1, y1) = (x0.min(v.x), y0.min(v.y), x1.max(v.x), y1.max(v.y));
        }
        any.then(|| (Vertex::new(x0, y0), x1 - x0, y1 - y0))
    }
}

fn edge_key(e: &Edge) -> (usize, usize, usize, usize) {
    (e.a.y, e.a.x, e.b.y, e.b.x)
}

fn kind_letter(kind: SubpathKind) -> char {
    match kind {
        SubpathKind::CookieN => 'N',
        SubpathKind::CookieS => 'S',
        SubpathKind::CookieE => 'E',
        SubpathKind::CookieW => 'W',
        SubpathKind::CornerCookie => 'C',
        SubpathKind::CornerSepMu => 'M',
        SubpathKind::CornerSepNu => 'V',
        SubpathKind::StraightSep => 'K',
        SubpathKind::Unclassifiable => '?',
    }
}

pub const OVERLAY_LEGEND: &str =
    "overlay: N S E W cookies, C corner cookie, M/V corner separators at s/t, K straight separator";

struct Canvas {
    cells: Vec<Vec<char>>,
}

impl Canvas {
    fn new(dims: GridDims) -> Canvas {
        let (h, w) = (2 * dims.rows() - 1, 2 * dims.cols() - 1);
        Canvas {
            cells: vec![vec![' '; w]; h],
        }
    }

    fn edge_slot(&mut self, e: Edge) -> &mut char {
        let (r, c) = (e.a.y + e.b.y, e.a.x + e.b.x);
        &mut self.cells[r][c]
    }

    fn finish(self) -> String {
        let mut out = String::new();
        for row in self.cells {
            let line: String = row.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn vertex_glyph(up: bool, down: bool, left: bool, right: bool) -> char {
    match (up, down, left, right) {
        (false, true, false, true) => '┌',
        (false, true, true, false) => '┐',
        (true, false, false, true) => '└',
        (true, false, true, false) => '┘',
        (false, false, true, true) => '─',
        (true, true, false, false) => '│',
        (false, false, false, true) => '╶',
        (false, false, true, false) => '╴',
        (false, true, false, false) => '╷',
        (true, false, false, false) => '╵',
        _ => '·',
    }
}

/// Box-drawing picture of the path. Edges on internal subpaths carry the
/// letter of their kind when `overlay` is given; cells of a switched
/// square are shaded when `marks` is given.
pub fn ascii(
    path: &HamPath,
    overlay: Option<&SubpathDecomposition>,
    marks: Option<&StepMarks>,
) -> String {
    let dims = path.dims();
    let mut canvas = Canvas::new(dims);
    for v in dims.vertices() {
        let (x, y) = (v.x, v.y);
        let up = y > 0 && path.has_v(x, y - 1);
        let down = path.has_v(x, y);
        let left = x > 0 && path.has_h(x - 1, y);
        let right = path.has_h(x, y);
        canvas.cells[2 * y][2 * x] = vertex_glyph(up, down, left, right);
    }
    for e in path.edges() {
        *canvas.edge_slot(e) = if e.is_horizontal() { '─' } else { '│' };
    }
    if let Some(dec) = overlay {
        let order = path.order();
        for part in &dec.parts {
            for i in part.start..part.end {
                let e = Edge::new(order[i], order[i + 1]).expect("consecutive path vertices");
                *canvas.edge_slot(e) = kind_letter(part.kind);
            }
        }
    }
    if let Some((corner, w, h)) = marks.and_then(StepMarks::bounds) {
        for cy in corner.y..corner.y + h {
            for cx in corner.x..corner.x + w {
                canvas.cells[2 * cy + 1][2 * cx + 1] = '░';
            }
        }
    }
    canvas.finish()
}

const UNIT: usize = 32;
const MARGIN: usize = 16;

fn px(i: usize) -> usize {
    MARGIN + i * UNIT
}

fn line(out: &mut String, e: Edge, style: &str) {
    let _ = writeln!(
        out,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
        px(e.a.x),
        px(e.a.y),
        px(e.b.x),
        px(e.b.y)
    );
}

/// SVG picture of the path. A switched square is shaded, with the edges
/// it removed drawn dashed and the edges it added drawn in a second color.
pub fn svg(path: &HamPath, marks: Option<&StepMarks>, title: &str) -> String {
    let dims = path.dims();
    let (w, h) = (
        2 * MARGIN + (dims.cols() - 1) * UNIT,
        2 * MARGIN + (dims.rows() - 1) * UNIT,
    );
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, "  <title>{title}</title>");
    let _ = writeln!(
        out,
        r##"  <rect width="{w}" height="{h}" fill="#ffffff"/>"##
    );
    if let Some((corner, cw, ch)) = marks.and_then(StepMarks::bounds) {
        let _ = writeln!(
            out,
            r##"  <rect class="square" x="{}" y="{}" width="{}" height="{}" fill="#ffe08a" stroke="#c89400"/>"##,
            px(corner.x),
            px(corner.y),
            cw * UNIT,
            ch * UNIT
        );
    }
    let added: HashSet<Edge> = marks
        .map(|m| m.added.iter().copied().collect())
        .unwrap_or_default();
    for e in path.edges() {
        let style = if added.contains(&e) {
            r##"stroke="#1a7f37" stroke-width="5" stroke-linecap="round""##
        } else {
            r##"stroke="#1f2d3d" stroke-width="4" stroke-linecap="round""##
        };
        line(&mut out, e, style);
    }
    if let Some(m) = marks {
        for &e in &m.removed {
            line(
                &mut out,
                e,
                r##"stroke="#cf222e" stroke-width="2" stroke-dasharray="4 4""##,
            );
        }
    }
    for v in dims.vertices() {
        let _ = writeln!(
            out,
            r##"  <circle cx="{}" cy="{}" r="3" fill="#1f2d3d"/>"##,
            px(v.x),
            px(v.y)
        );
    }
    for (v, label) in [(dims.s(), "s"), (dims.t(), "t")] {
        let _ = writeln!(
            out,
            r##"  <circle cx="{}" cy="{}" r="7" fill="none" stroke="#0969da" stroke-width="2"><title>{label}</title></circle>"##,
            px(v.x),
            px(v.y)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_canvas_shape() {
        let p = HamPath::from_moves(GridDims::new(3, 3).unwrap(), "RRDLLDRR").unwrap();
        let pic = ascii(&p, None, None);
        assert_eq!(pic, "╶───┐\n    │\n┌───┘\n│\n└───╴\n");
    }

    #[test]
    fn marks_cover_the_square() {
        let d = GridDims::new(3, 3).unwrap();
        let a = HamPath::from_moves(d, "RRDLLDRR").unwrap();
        let b = HamPath::from_moves(d, "DDRUURDD").unwrap();
        let marks = StepMarks::between(&a, &b);
        assert_eq!(marks.removed.len(), 4);
        assert_eq!(marks.added.len(), 4);
        let pic = ascii(&b, None, Some(&marks));
        assert_eq!(pic.matches('░').count(), 4);
        assert!(svg(&b, Some(&marks), "step").contains(r#"class="square""#));
    }
}
