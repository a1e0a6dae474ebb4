//! Grid geometry and the bit-vector representation of Hamiltonian paths.
//!
//! Coordinates follow the screen convention: `x` is the column in `0..n`,
//! `y` is the row in `0..m` and `y` grows downward. The path endpoints are
//! `s = (0,0)` (top-left) and `t = (n-1,m-1)` (bottom-right); `alpha` is the
//! bottom-left corner and `beta` the top-right one.
//!
//! A [`HamPath`] keeps one bit vector per row for horizontal edges and one
//! per column for vertical edges, so a local edge exchange touches a constant
//! number of bits. The s→t vertex order is derived lazily and cached.

use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDims {
    m: usize,
    n: usize,
}

impl GridDims {
    /// `m` rows by `n` columns.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidDims { m, n });
        }
        Ok(GridDims { m, n })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    /// Vertex count `m*n`, the grid size used by every switch bound.
    pub fn size(&self) -> usize {
        self.m * self.n
    }

    pub fn s(&self) -> Vertex {
        Vertex::new(0, 0)
    }

    pub fn t(&self) -> Vertex {
        Vertex::new(self.n - 1, self.m - 1)
    }

    pub fn alpha(&self) -> Vertex {
        Vertex::new(0, self.m - 1)
    }

    pub fn beta(&self) -> Vertex {
        Vertex::new(self.n - 1, 0)
    }

    pub fn transposed(&self) -> GridDims {
        GridDims {
            m: self.n,
            n: self.m,
        }
    }

    /// Corner-to-corner Hamiltonian paths exist unless both sides are even.
    pub fn admits_hamiltonian_path(&self) -> bool {
        self.m % 2 == 1 || self.n % 2 == 1
    }

    pub fn contains(&self, x: isize, y: isize) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.n && (y as usize) < self.m
    }

    pub fn index(&self, v: Vertex) -> usize {
        v.y * self.n + v.x
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        Vertex::new(i % self.n, i / self.n)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.size()).map(move |i| self.vertex(i))
    }

    pub fn offset(&self, v: Vertex, dx: isize, dy: isize) -> Option<Vertex> {
        let x = v.x as isize + dx;
        let y = v.y as isize + dy;
        self.contains(x, y)
            .then(|| Vertex::new(x as usize, y as usize))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        Move::ALL.into_iter().filter_map(move |mv| {
            let (dx, dy) = mv.delta();
            self.offset(v, dx, dy)
        })
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        v.x == 0 || v.y == 0 || v.x + 1 == self.n || v.y + 1 == self.m
    }

    pub fn is_internal(&self, v: Vertex) -> bool {
        !self.is_boundary(v)
    }

    /// The unique boundary side of a non-corner boundary vertex.
    pub fn side_of(&self, v: Vertex) -> Option<Side> {
        let mut found = None;
        let mut count = 0;
        for (hit, side) in [
            (v.y == 0, Side::North),
            (v.y + 1 == self.m, Side::South),
            (v.x + 1 == self.n, Side::East),
            (v.x == 0, Side::West),
        ] {
            if hit {
                count += 1;
                found = Some(side);
            }
        }
        if count == 1 {
            found
        } else {
            None
        }
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub x: usize,
    pub y: usize,
}

impl Vertex {
    pub const fn new(x: usize, y: usize) -> Self {
        Vertex { x, y }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    North,
    South,
    East,
    West,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::South => Side::North,
            Side::East => Side::West,
            Side::West => Side::East,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::North => 'N',
            Side::South => 'S',
            Side::East => 'E',
            Side::West => 'W',
        }
    }
}

/// Unit step of a move string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Down,
    Left,
    Right,
    Up,
}

impl Move {
    /// Lexicographic order of the move letters.
    pub const ALL: [Move; 4] = [Move::Down, Move::Left, Move::Right, Move::Up];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Move::Down => (0, 1),
            Move::Left => (-1, 0),
            Move::Right => (1, 0),
            Move::Up => (0, -1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Down => 'D',
            Move::Left => 'L',
            Move::Right => 'R',
            Move::Up => 'U',
        }
    }

    pub fn from_letter(c: char) -> Option<Move> {
        match c {
            'D' => Some(Move::Down),
            'L' => Some(Move::Left),
            'R' => Some(Move::Right),
            'U' => Some(Move::Up),
            _ => None,
        }
    }

    pub fn between(a: Vertex, b: Vertex) -> Option<Move> {
        match (b.x as isize - a.x as isize, b.y as isize - a.y as isize) {
            (0, 1) => Some(Move::Down),
            (-1, 0) => Some(Move::Left),
            (1, 0) => Some(Move::Right),
            (0, -1) => Some(Move::Up),
            _ => None,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Move::Up | Move::Down)
    }
}

/// A grid edge, stored with `a` west of or above `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: Vertex,
    pub b: Vertex,
}

impl Edge {
    /// `None` unless the two vertices are grid neighbours.
    pub fn new(u: Vertex, v: Vertex) -> Option<Edge> {
        let (a, b) = if (u.y, u.x) <= (v.y, v.x) {
            (u, v)
        } else {
            (v, u)
        };
        let horizontal = a.y == b.y && a.x + 1 == b.x;
        let vertical = a.x == b.x && a.y + 1 == b.y;
        (horizontal || vertical).then_some(Edge { a, b })
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Maximal straight run of a path between `u` and `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub u: Vertex,
    pub v: Vertex,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.u.x.abs_diff(self.v.x) + self.u.y.abs_diff(self.v.y)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An s,t Hamiltonian path of a rectangular grid graph.
#[derive(Clone, Debug)]
pub struct HamPath {
    dims: GridDims,
    /// `horiz[y][x]`: edge `(x,y)-(x+1,y)`.
    horiz: Vec<FixedBitSet>,
    /// `vert[x][y]`: edge `(x,y)-(x,y+1)`.
    vert: Vec<FixedBitSet>,
    order: OnceLock<Vec<Vertex>>,
}

impl PartialEq for HamPath {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.horiz == other.horiz && self.vert == other.vert
    }
}

impl Eq for HamPath {}

impl std::hash::Hash for HamPath {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dims.hash(state);
        self.horiz.hash(state);
        self.vert.hash(state);
    }
}

fn empty_bits(dims: GridDims) -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
    let horiz = (0..dims.m)
        .map(|_| FixedBitSet::with_capacity(dims.n - 1))
        .collect();
    let vert = (0..dims.n)
        .map(|_| FixedBitSet::with_capacity(dims.m - 1))
        .collect();
    (horiz, vert)
}

impl HamPath {
    /// Checks that the edge sets form a Hamiltonian path from `s` to `t`.
    pub fn validate(
        dims: GridDims,
        horiz: Vec<FixedBitSet>,
        vert: Vec<FixedBitSet>,
    ) -> Result<HamPath> {
        if horiz.len() != dims.m {
            return Err(Error::BadLength {
                what: "row bit vectors",
                expected: dims.m,
                got: horiz.len(),
            });
        }
        if vert.len() != dims.n {
            return Err(Error::BadLength {
                what: "column bit vectors",
                expected: dims.n,
                got: vert.len(),
            });
        }
        if let Some(row) = horiz.iter().find(|r| r.len() != dims.n - 1) {
            return Err(Error::BadLength {
                what: "row bit vector",
                expected: dims.n - 1,
                got: row.len(),
            });
        }
        if let Some(col) = vert.iter().find(|c| c.len() != dims.m - 1) {
            return Err(Error::BadLength {
                what: "column bit vector",
                expected: dims.m - 1,
                got: col.len(),
            });
        }
        let path = HamPath {
            dims,
            horiz,
            vert,
            order: OnceLock::new(),
        };
        path.check_hamiltonian()?;
        Ok(path)
    }

    pub fn from_edges(dims: GridDims, edges: impl IntoIterator<Item = Edge>) -> Result<HamPath> {
        let (mut horiz, mut vert) = empty_bits(dims);
        for e in edges {
            if e.b.x >= dims.n || e.b.y >= dims.m {
                return Err(Error::InvalidSquare(format!("edge {e} outside {dims}")));
            }
            if e.is_horizontal() {
                horiz[e.a.y].insert(e.a.x);
            } else {
                vert[e.a.x].insert(e.a.y);
            }
        }
        HamPath::validate(dims, horiz, vert)
    }

    /// Walks from `s`; the walk must end at `t` after visiting every vertex.
    pub fn from_moves(dims: GridDims, moves: &str) -> Result<HamPath> {
        let (mut horiz, mut vert) = empty_bits(dims);
        let mut seen = vec![false; dims.size()];
        let mut cur = dims.s();
        seen[0] = true;
        let mut count = 0;
        for (step, c) in moves.chars().enumerate() {
            let mv = Move::from_letter(c).ok_or_else(|| Error::Parse {
                line: 1,
                col: step + 1,
                msg: format!("unexpected move letter {c:?}"),
            })?;
            let (dx, dy) = mv.delta();
            let next = dims
                .offset(cur, dx, dy)
                .ok_or(Error::OutOfBounds { step })?;
            if std::mem::replace(&mut seen[dims.index(next)], true) {
                return Err(Error::Revisit { step, vertex: next });
            }
            let e = Edge::new(cur, next).expect("unit move");
            if e.is_horizontal() {
                horiz[e.a.y].insert(e.a.x);
            } else {
                vert[e.a.x].insert(e.a.y);
            }
            cur = next;
            count += 1;
        }
        if cur != dims.t() {
            return Err(Error::WrongTerminal { end: cur });
        }
        if count != dims.size() - 1 {
            return Err(Error::WrongLength {
                expected: dims.size() - 1,
                got: count,
            });
        }
        HamPath::validate(dims, horiz, vert)
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    /// `(x,y)-(x+1,y)` is on the path.
    #[inline]
    pub fn has_h(&self, x: usize, y: usize) -> bool {
        x + 1 < self.dims.n && y < self.dims.m && self.horiz[y].contains(x)
    }

    /// `(x,y)-(x,y+1)` is on the path.
    #[inline]
    pub fn has_v(&self, x: usize, y: usize) -> bool {
        y + 1 < self.dims.m && x < self.dims.n && self.vert[x].contains(y)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        if e.is_horizontal() {
            self.has_h(e.a.x, e.a.y)
        } else {
            self.has_v(e.a.x, e.a.y)
        }
    }

    pub fn has_edge_between(&self, u: Vertex, v: Vertex) -> bool {
        Edge::new(u, v).is_some_and(|e| self.has_edge(e))
    }

    /// Flips one edge slot without revalidating. Callers restore the
    /// Hamiltonian invariant before handing the path out.
    pub(crate) fn set_edge(&mut self, e: Edge, on: bool) {
        if e.is_horizontal() {
            self.horiz[e.a.y].set(e.a.x, on);
        } else {
            self.vert[e.a.x].set(e.a.y, on);
        }
        self.order = OnceLock::new();
    }

    pub fn edge_count(&self) -> usize {
        self.horiz.iter().map(|r| r.count_ones(..)).sum::<usize>()
            + self.vert.iter().map(|c| c.count_ones(..)).sum::<usize>()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let h = self.horiz.iter().enumerate().flat_map(|(y, row)| {
            row.ones()
                .map(move |x| Edge::new(Vertex::new(x, y), Vertex::new(x + 1, y)).unwrap())
        });
        let v = self.vert.iter().enumerate().flat_map(|(x, col)| {
            col.ones()
                .map(move |y| Edge::new(Vertex::new(x, y), Vertex::new(x, y + 1)).unwrap())
        });
        h.chain(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.path_neighbors(v).count()
    }

    pub fn path_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.dims
            .neighbors(v)
            .filter(move |&w| self.has_edge_between(v, w))
    }

    pub fn row_bits(&self, y: usize) -> &FixedBitSet {
        &self.horiz[y]
    }

    pub fn col_bits(&self, x: usize) -> &FixedBitSet {
        &self.vert[x]
    }

    /// Vertices in s→t order.
    pub fn order(&self) -> &[Vertex] {
        self.order.get_or_init(|| {
            let mut out = Vec::with_capacity(self.dims.size());
            let mut prev: Option<Vertex> = None;
            let mut cur = self.dims.s();
            loop {
                out.push(cur);
                let next = self.path_neighbors(cur).find(|&w| Some(w) != prev);
                match next {
                    Some(w) if out.len() <= self.dims.size() => {
                        prev = Some(cur);
                        cur = w;
                    }
                    _ => break,
                }
            }
            out
        })
    }

    /// Position of every vertex along the path.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.dims.size()];
        for (i, &v) in self.order().iter().enumerate() {
            pos[self.dims.index(v)] = i;
        }
        pos
    }

    pub fn moves(&self) -> impl Iterator<Item = Move> + '_ {
        self.order()
            .windows(2)
            .map(|w| Move::between(w[0], w[1]).expect("consecutive vertices are adjacent"))
    }

    pub fn to_moves(&self) -> String {
        self.moves().map(Move::letter).collect()
    }

    /// Maximal straight segments in s→t order.
    pub fn segments(&self) -> Vec<Segment> {
        let order = self.order();
        let mut out = Vec::new();
        if order.len() < 2 {
            return out;
        }
        let mut start = 0;
        for i in 1..order.len() - 1 {
            if Move::between(order[i - 1], order[i]) != Move::between(order[i], order[i + 1]) {
                out.push(Segment {
                    u: order[start],
                    v: order[i],
                });
                start = i;
            }
        }
        out.push(Segment {
            u: order[start],
            v: order[order.len() - 1],
        });
        out
    }

    /// Image under `(x,y) -> (n-1-x, m-1-y)`, read again as an s,t path.
    pub fn rotate180(&self) -> HamPath {
        let GridDims { m, n } = self.dims;
        let (mut horiz, mut vert) = empty_bits(self.dims);
        for (y, row) in self.horiz.iter().enumerate() {
            for x in row.ones() {
                horiz[m - 1 - y].insert(n - 2 - x);
            }
        }
        for (x, col) in self.vert.iter().enumerate() {
            for y in col.ones() {
                vert[n - 1 - x].insert(m - 2 - y);
            }
        }
        HamPath {
            dims: self.dims,
            horiz,
            vert,
            order: OnceLock::new(),
        }
    }

    /// Image under `(x,y) -> (y,x)` on the `n x m` grid.
    pub fn transpose(&self) -> HamPath {
        let dims = self.dims.transposed();
        let (mut horiz, mut vert) = empty_bits(dims);
        for (y, row) in self.horiz.iter().enumerate() {
            for x in row.ones() {
                vert[y].insert(x);
            }
        }
        for (x, col) in self.vert.iter().enumerate() {
            for y in col.ones() {
                horiz[x].insert(y);
            }
        }
        HamPath {
            dims,
            horiz,
            vert,
            order: OnceLock::new(),
        }
    }

    /// The part of the path in rows `top..m`, as a path of the smaller grid
    /// from `(0,top)` to `t`. Fails unless that part is itself Hamiltonian.
    pub fn band_below(&self, top: usize) -> Result<HamPath> {
        let dims = GridDims::new(self.dims.m.saturating_sub(top), self.dims.n)?;
        let horiz = self.horiz[top..].to_vec();
        let vert = self
            .vert
            .iter()
            .map(|col| {
                let mut c = FixedBitSet::with_capacity(dims.m - 1);
                for y in col.ones().filter(|&y| y >= top) {
                    c.insert(y - top);
                }
                c
            })
            .collect();
        HamPath::validate(dims, horiz, vert)
    }

    pub(crate) fn check_hamiltonian(&self) -> Result<()> {
        let dims = self.dims;
        let (s, t) = (dims.s(), dims.t());
        if dims.size() == 1 {
            return Ok(());
        }
        let mut ends = Vec::new();
        let mut bad = None;
        for v in dims.vertices() {
            match self.degree(v) {
                1 => ends.push(v),
                2 => {}
                d => {
                    bad.get_or_insert((v, d));
                }
            }
        }
        if let Some((vertex, degree)) = bad {
            return Err(Error::DegreeViolation { vertex, degree });
        }
        match ends.as_slice() {
            [a, b] if (*a, *b) == (s, t) => {}
            [a, b] => return Err(Error::WrongEndpoints(*a, *b)),
            _ => {
                let v = if self.degree(s) != 1 { s } else { t };
                return Err(Error::DegreeViolation {
                    vertex: v,
                    degree: self.degree(v),
                });
            }
        }
        let mut seen = vec![false; dims.size()];
        let walked = self.order();
        for v in walked {
            seen[dims.index(*v)] = true;
        }
        if walked.len() == dims.size() {
            return Ok(());
        }
        // Every unvisited vertex has degree 2, so the rest is a union of cycles.
        let mut components = 1;
        for start in dims.vertices() {
            if seen[dims.index(start)] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[dims.index(start)] = true;
            while let Some(v) = stack.pop() {
                for w in self.path_neighbors(v) {
                    if !std::mem::replace(&mut seen[dims.index(w)], true) {
                        stack.push(w);
                    }
                }
            }
        }
        Err(Error::Disconnected { components })
    }

    /// `"m n"` header line followed by the move string.
    pub fn to_file_string(&self) -> String {
        format!("{} {}\n{}\n", self.dims.m, self.dims.n, self.to_moves())
    }
}

impl fmt::Display for HamPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_moves())
    }
}

/// Parses an `"m n"` header line.
pub fn parse_dims_line(line: &str, line_no: usize) -> Result<GridDims> {
    let mut fields = line.split_whitespace();
    let mut next = |name: &str| -> Result<usize> {
        let tok = fields.next().ok_or_else(|| Error::Parse {
            line: line_no,
            col: line.len() + 1,
            msg: format!("missing {name}"),
        })?;
        let col = line.find(tok).unwrap_or(0) + 1;
        tok.parse::<usize>().map_err(|_| Error::Parse {
            line: line_no,
            col,
            msg: format!("{name} must be a positive integer, got {tok:?}"),
        })
    };
    let m = next("row count m")?;
    let n = next("column count n")?;
    if let Some(extra) = fields.next() {
        return Err(Error::Parse {
            line: line_no,
            col: line.find(extra).unwrap_or(0) + 1,
            msg: format!("unexpected token {extra:?}"),
        });
    }
    GridDims::new(m, n).map_err(|_| Error::Parse {
        line: line_no,
        col: 1,
        msg: format!("dimensions must be positive, got {m} {n}"),
    })
}

/// Parses a path file: `"m n"` on the first line, the move string on the
/// second. Syntax problems are [`Error::Parse`]; a well-formed move string
/// that is not a Hamiltonian s,t path yields the walk error.
pub fn parse_path_file(text: &str) -> Result<HamPath> {
    let mut lines = text.lines().enumerate();
    let (i, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "empty file".into(),
    })?;
    let dims = parse_dims_line(header, i + 1)?;
    let (j, moves) = lines.next().unwrap_or((1, ""));
    let moves = moves.trim_end();
    if let Some((col, c)) = moves
        .chars()
        .enumerate()
        .find(|(_, c)| Move::from_letter(*c).is_none())
    {
        return Err(Error::Parse {
            line: j + 1,
            col: col + 1,
            msg: format!("unexpected move letter {c:?}"),
        });
    }
    if let Some((k, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Parse {
            line: k + 1,
            col: 1,
            msg: format!("trailing content {:?}", extra.trim()),
        });
    }
    HamPath::from_moves(dims, moves)
}
