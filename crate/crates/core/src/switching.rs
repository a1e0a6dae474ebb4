//! Cells, squares on directed ziplines, and the square-switch exchange.
//!
//! A square is the 2x2 block of cells around a center `p5` on the zipline
//! `l_z`. Its nine nodes are labelled row by row along the heading:
//! `p1 p2 p3` on `l_a`, `p4 p5 p6` on `l_z`, `p7 p8 p9` on `l_b`. The main
//! track `tr` lies between `l_a` and `l_z`, the side track `tr'` between
//! `l_z` and `l_b`. A switch exchanges the edges of the near cell in `tr`
//! (corners `p1 p2 p4 p5`) and the far cell in `tr'` (corners `p5 p6 p8 p9`).

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Edge, GridDims, HamPath, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Row,
    Col,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Row => "ROW",
            Orientation::Col => "COL",
        }
    }
}

/// Direction of travel from `q1` to `q2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Heading {
    WestEast,
    EastWest,
    NorthSouth,
    SouthNorth,
}

impl Heading {
    pub fn delta(self) -> (isize, isize) {
        match self {
            Heading::WestEast => (1, 0),
            Heading::EastWest => (-1, 0),
            Heading::NorthSouth => (0, 1),
            Heading::SouthNorth => (0, -1),
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            Heading::WestEast | Heading::EastWest => Orientation::Row,
            Heading::NorthSouth | Heading::SouthNorth => Orientation::Col,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Heading::WestEast => "WE",
            Heading::EastWest => "EW",
            Heading::NorthSouth => "NS",
            Heading::SouthNorth => "SN",
        }
    }

    pub fn from_code(s: &str) -> Option<Heading> {
        match s {
            "WE" => Some(Heading::WestEast),
            "EW" => Some(Heading::EastWest),
            "NS" => Some(Heading::NorthSouth),
            "SN" => Some(Heading::SouthNorth),
            _ => None,
        }
    }
}

/// An internal grid line with a direction and a chosen `l_a` neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zipline {
    pub orientation: Orientation,
    /// Row or column number of `l_z`.
    pub index: usize,
    pub heading: Heading,
    pub la: usize,
    pub lb: usize,
}

impl Zipline {
    pub fn new(dims: GridDims, index: usize, heading: Heading, la: usize) -> Result<Zipline> {
        let orientation = heading.orientation();
        let extent = match orientation {
            Orientation::Row => dims.rows(),
            Orientation::Col => dims.cols(),
        };
        if index == 0 || index + 2 > extent {
            return Err(Error::InvalidSquare(format!(
                "{} {index} is not an internal line of {dims}",
                orientation.name()
            )));
        }
        if la + 1 != index && la != index + 1 {
            return Err(Error::InvalidSquare(format!(
                "l_a {la} is not adjacent to l_z {index}"
            )));
        }
        Ok(Zipline {
            orientation,
            index,
            heading,
            la,
            lb: 2 * index - la,
        })
    }

    /// Unit step from `l_z` toward `l_a`.
    fn toward_a(&self) -> (isize, isize) {
        let sign = if self.la > self.index { 1 } else { -1 };
        match self.orientation {
            Orientation::Row => (0, sign),
            Orientation::Col => (sign, 0),
        }
    }

    /// Whether `v` lies in the closed strip between `l_a` and `l_z`.
    pub fn in_main_track(&self, v: Vertex) -> bool {
        let c = match self.orientation {
            Orientation::Row => v.y,
            Orientation::Col => v.x,
        };
        c == self.index || c == self.la
    }
}

/// Unit cell identified by its top-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub fn new(x: usize, y: usize) -> Cell {
        Cell { x, y }
    }

    fn corner(&self, dx: usize, dy: usize) -> Vertex {
        Vertex::new(self.x + dx, self.y + dy)
    }

    pub fn top(&self) -> Edge {
        Edge::new(self.corner(0, 0), self.corner(1, 0)).unwrap()
    }

    pub fn bottom(&self) -> Edge {
        Edge::new(self.corner(0, 1), self.corner(1, 1)).unwrap()
    }

    pub fn left(&self) -> Edge {
        Edge::new(self.corner(0, 0), self.corner(0, 1)).unwrap()
    }

    pub fn right(&self) -> Edge {
        Edge::new(self.corner(1, 0), self.corner(1, 1)).unwrap()
    }

    pub fn horizontal_sides(&self) -> [Edge; 2] {
        [self.top(), self.bottom()]
    }

    pub fn vertical_sides(&self) -> [Edge; 2] {
        [self.left(), self.right()]
    }

    /// The cell with corners `v` and `v + (dx,dy)` for a diagonal step.
    fn spanning(v: Vertex, dx: isize, dy: isize) -> Cell {
        let x = if dx < 0 { v.x - 1 } else { v.x };
        let y = if dy < 0 { v.y - 1 } else { v.y };
        Cell { x, y }
    }

    pub fn in_grid(&self, dims: GridDims) -> bool {
        self.x + 1 < dims.cols() && self.y + 1 < dims.rows()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell({},{})", self.x, self.y)
    }
}

/// Exactly two parallel sides lie on the path and the other two do not.
pub fn is_switchable_cell(path: &HamPath, cell: Cell) -> bool {
    if !cell.in_grid(path.dims()) {
        return false;
    }
    let [t, b] = cell.horizontal_sides().map(|e| path.has_edge(e));
    let [l, r] = cell.vertical_sides().map(|e| path.has_edge(e));
    (t && b && !l && !r) || (l && r && !t && !b)
}

/// Flips the side pairs of a switchable cell in place.
fn toggle_cell(path: &mut HamPath, cell: Cell) {
    for e in cell
        .horizontal_sides()
        .into_iter()
        .chain(cell.vertical_sides())
    {
        let on = path.has_edge(e);
        path.set_edge(e, !on);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    pub center: Vertex,
    pub zipline: Zipline,
}

impl Square {
    pub fn new(dims: GridDims, center: Vertex, zipline: Zipline) -> Result<Square> {
        let on_line = match zipline.orientation {
            Orientation::Row => center.y == zipline.index,
            Orientation::Col => center.x == zipline.index,
        };
        if !on_line {
            return Err(Error::InvalidSquare(format!(
                "center {center} is not on {} {}",
                zipline.orientation.name(),
                zipline.index
            )));
        }
        if !dims.is_internal(center) {
            return Err(Error::InvalidSquare(format!(
                "square around {center} leaves the {dims} grid"
            )));
        }
        Ok(Square { center, zipline })
    }

    /// All eight squares around `center`: two orientations, two headings
    /// and two choices of `l_a`.
    pub fn frames(dims: GridDims, center: Vertex) -> Vec<Square> {
        let mut out = Vec::with_capacity(8);
        if !dims.is_internal(center) {
            return out;
        }
        for heading in [
            Heading::WestEast,
            Heading::EastWest,
            Heading::NorthSouth,
            Heading::SouthNorth,
        ] {
            let index = match heading.orientation() {
                Orientation::Row => center.y,
                Orientation::Col => center.x,
            };
            for la in [index - 1, index + 1] {
                let z = Zipline::new(dims, index, heading, la).expect("internal center");
                out.push(Square { center, zipline: z });
            }
        }
        out
    }

    fn offset(&self, dx: isize, dy: isize) -> Vertex {
        Vertex::new(
            (self.center.x as isize + dx) as usize,
            (self.center.y as isize + dy) as usize,
        )
    }

    /// Node `p_i`, `1 <= i <= 9`.
    pub fn node(&self, i: usize) -> Vertex {
        assert!((1..=9).contains(&i), "square nodes are p1..p9");
        let (along_x, along_y) = self.zipline.heading.delta();
        let (ta_x, ta_y) = self.zipline.toward_a();
        let line = (i - 1) / 3; // 0 = l_a, 1 = l_z, 2 = l_b
        let pos = ((i - 1) % 3) as isize - 1;
        let off = 1 - line as isize;
        self.offset(pos * along_x + off * ta_x, pos * along_y + off * ta_y)
    }

    /// Cell of `tr` with corners `p1 p2 p4 p5`.
    pub fn near_tr_cell(&self) -> Cell {
        let (ax, ay) = self.zipline.heading.delta();
        let (tx, ty) = self.zipline.toward_a();
        Cell::spanning(self.center, tx - ax, ty - ay)
    }

    /// Cell of `tr'` with corners `p5 p6 p8 p9`.
    pub fn far_tr_prime_cell(&self) -> Cell {
        let (ax, ay) = self.zipline.heading.delta();
        let (tx, ty) = self.zipline.toward_a();
        Cell::spanning(self.center, ax - tx, ay - ty)
    }

    /// Cells named by position relative to the heading: near is behind the
    /// center, left is to the left of travel.
    pub fn cell(&self, far: bool, left: bool) -> Cell {
        let (ax, ay) = self.zipline.heading.delta();
        let (lx, ly) = (ay, -ax);
        let s = if far { 1 } else { -1 };
        let l = if left { 1 } else { -1 };
        Cell::spanning(self.center, s * ax + l * lx, s * ay + l * ly)
    }

    /// Sides of a cell perpendicular to `l_z`.
    fn perpendicular(&self, c: Cell) -> [Edge; 2] {
        match self.zipline.orientation {
            Orientation::Row => c.vertical_sides(),
            Orientation::Col => c.horizontal_sides(),
        }
    }

    fn parallel(&self, c: Cell) -> [Edge; 2] {
        match self.zipline.orientation {
            Orientation::Row => c.horizontal_sides(),
            Orientation::Col => c.vertical_sides(),
        }
    }

    /// The exchange performed by switching this square.
    pub fn record(&self) -> SwitchRecord {
        SwitchRecord {
            square: *self,
            inverted: false,
        }
    }

    /// Perpendicular sides of the near and far cells.
    fn perpendicular_sides(&self) -> [Edge; 4] {
        let [a, b] = self.perpendicular(self.near_tr_cell());
        let [c, d] = self.perpendicular(self.far_tr_prime_cell());
        [a, b, c, d]
    }

    fn parallel_sides(&self) -> [Edge; 4] {
        let [a, b] = self.parallel(self.near_tr_cell());
        let [c, d] = self.parallel(self.far_tr_prime_cell());
        [a, b, c, d]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "square {} on {} {} {} (l_a {})",
            self.center,
            self.zipline.orientation.name(),
            self.zipline.index,
            self.zipline.heading.code(),
            self.zipline.la
        )
    }
}

/// One edge exchange on the eight slots of a square. A forward record
/// trades the sides perpendicular to `l_z` for the parallel ones; an
/// inverted record trades them back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwitchRecord {
    pub square: Square,
    pub inverted: bool,
}

impl SwitchRecord {
    /// The exchange that undoes this one.
    pub fn inverse(&self) -> SwitchRecord {
        SwitchRecord {
            square: self.square,
            inverted: !self.inverted,
        }
    }

    /// Edges that leave the path.
    pub fn removed(&self) -> [Edge; 4] {
        if self.inverted {
            self.square.parallel_sides()
        } else {
            self.square.perpendicular_sides()
        }
    }

    /// Edges that join the path.
    pub fn added(&self) -> [Edge; 4] {
        if self.inverted {
            self.square.perpendicular_sides()
        } else {
            self.square.parallel_sides()
        }
    }

    /// Whether the exchange is applicable edge-wise to `path`.
    pub fn applicable(&self, path: &HamPath) -> bool {
        self.removed().iter().all(|&e| path.has_edge(e))
            && self.added().iter().all(|&e| !path.has_edge(e))
    }

    /// Flips the eight edge slots without any check.
    pub(crate) fn apply_unchecked(&self, path: &mut HamPath) {
        for e in self.removed() {
            path.set_edge(e, false);
        }
        for e in self.added() {
            path.set_edge(e, true);
        }
    }

    /// Applies the exchange and confirms the result is an s,t Hamiltonian
    /// path. `path` is left untouched on error.
    pub fn apply(&self, path: &HamPath) -> Result<HamPath> {
        if !self.applicable(path) {
            return Err(Error::NotSwitchable {
                center: self.square.center,
                reason: "edge slots do not match the recorded exchange".into(),
            });
        }
        let mut next = path.clone();
        self.apply_unchecked(&mut next);
        next.check_hamiltonian()?;
        Ok(next)
    }
}

/// The components left after switching a single cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCycleCover {
    /// Vertices from `s` to `t`.
    pub path: Vec<Vertex>,
    pub cycles: Vec<Vec<Vertex>>,
}

pub fn path_cycle_cover_after_cell_switch(path: &HamPath, cell: Cell) -> Result<PathCycleCover> {
    if !is_switchable_cell(path, cell) {
        return Err(Error::CellNotSwitchable {
            x: cell.x,
            y: cell.y,
        });
    }
    let mut cover = path.clone();
    toggle_cell(&mut cover, cell);
    Ok(components(&cover))
}

/// Splits a degree-valid edge set into its s,t path and cycles.
fn components(cover: &HamPath) -> PathCycleCover {
    let dims = cover.dims();
    let walked = cover.order().to_vec();
    let mut seen = vec![false; dims.size()];
    for v in &walked {
        seen[dims.index(*v)] = true;
    }
    let mut cycles = Vec::new();
    for start in dims.vertices() {
        if seen[dims.index(start)] {
            continue;
        }
        let mut cyc = vec![start];
        seen[dims.index(start)] = true;
        let mut prev = start;
        let mut cur = cover
            .path_neighbors(start)
            .next()
            .expect("uncovered vertices have degree 2");
        while cur != start {
            cyc.push(cur);
            seen[dims.index(cur)] = true;
            let next = cover
                .path_neighbors(cur)
                .find(|&w| w != prev)
                .expect("cycle vertices have degree 2");
            prev = cur;
            cur = next;
        }
        cycles.push(cyc);
    }
    PathCycleCover {
        path: walked,
        cycles,
    }
}

/// Condition (i): both switched cells are switchable and their path edges
/// run perpendicular to `l_z`.
pub(crate) fn local_condition(path: &HamPath, sq: &Square) -> std::result::Result<(), String> {
    for (name, c) in [
        ("near tr", sq.near_tr_cell()),
        ("far tr'", sq.far_tr_prime_cell()),
    ] {
        if !is_switchable_cell(path, c) {
            return Err(format!("{name} {c} is not switchable"));
        }
        if !sq.perpendicular(c).iter().all(|&e| path.has_edge(e)) {
            return Err(format!("{name} {c} has its path edges parallel to l_z"));
        }
    }
    Ok(())
}

/// Full check of both conditions, with a reason on failure.
pub fn check_switchable_square(path: &HamPath, sq: &Square) -> std::result::Result<(), String> {
    local_condition(path, sq)?;
    let cover = path_cycle_cover_after_cell_switch(path, sq.far_tr_prime_cell())
        .map_err(|e| e.to_string())?;
    match cover.cycles.as_slice() {
        [cyc] if cyc.iter().all(|&v| sq.zipline.in_main_track(v)) => Ok(()),
        [_] => Err("switching the far cell leaves a cycle outside tr".into()),
        cycles => Err(format!(
            "switching the far cell leaves {} cycles",
            cycles.len()
        )),
    }
}

pub fn is_switchable_square(path: &HamPath, sq: &Square) -> bool {
    check_switchable_square(path, sq).is_ok()
}

/// Switches a switchable square, returning the new path and its record.
pub fn square_switch(path: &HamPath, sq: &Square) -> Result<(HamPath, SwitchRecord)> {
    check_switchable_square(path, sq).map_err(|reason| Error::NotSwitchable {
        center: sq.center,
        reason,
    })?;
    let rec = sq.record();
    let next = rec.apply(path)?;
    Ok((next, rec))
}

/// Every switchable square of `path`, with the path each one produces.
pub fn all_switches(path: &HamPath) -> Vec<(Square, HamPath)> {
    let dims = path.dims();
    let mut out = Vec::new();
    for center in dims.vertices().filter(|&v| dims.is_internal(v)) {
        for sq in Square::frames(dims, center) {
            if local_condition(path, &sq).is_err() || !is_switchable_square(path, &sq) {
                continue;
            }
            let next = sq
                .record()
                .apply(path)
                .expect("a switchable square yields a Hamiltonian path");
            out.push((sq, next));
        }
    }
    out
}
