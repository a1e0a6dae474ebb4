//! Internal-subpath decomposition, simplicity, and canonical forms.
//!
//! An internal subpath is a maximal run of internal vertices together with
//! the two boundary vertices that bracket it. A path is simple when every
//! such subpath has the fewest bends its endpoint sides allow: none between
//! opposite sides, one between adjacent sides, two on a single side.

use std::fmt;

use crate::grid::{GridDims, HamPath, Move, Side, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubpathKind {
    CookieN,
    CookieS,
    CookieE,
    CookieW,
    CornerCookie,
    /// One-bend separator cutting off `s`.
    CornerSepMu,
    /// One-bend separator cutting off `t`.
    CornerSepNu,
    StraightSep,
    Unclassifiable,
}

impl SubpathKind {
    pub fn name(self) -> &'static str {
        match self {
            SubpathKind::CookieN => "CookieN",
            SubpathKind::CookieS => "CookieS",
            SubpathKind::CookieE => "CookieE",
            SubpathKind::CookieW => "CookieW",
            SubpathKind::CornerCookie => "CornerCookie",
            SubpathKind::CornerSepMu => "CornerSepMu",
            SubpathKind::CornerSepNu => "CornerSepNu",
            SubpathKind::StraightSep => "StraightSep",
            SubpathKind::Unclassifiable => "Unclassifiable",
        }
    }

    pub fn is_cookie(self) -> bool {
        matches!(
            self,
            SubpathKind::CookieN
                | SubpathKind::CookieS
                | SubpathKind::CookieE
                | SubpathKind::CookieW
                | SubpathKind::CornerCookie
        )
    }

    fn cookie_on(side: Side) -> SubpathKind {
        match side {
            Side::North => SubpathKind::CookieN,
            Side::South => SubpathKind::CookieS,
            Side::East => SubpathKind::CookieE,
            Side::West => SubpathKind::CookieW,
        }
    }
}

impl fmt::Display for SubpathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalSubpath {
    pub kind: SubpathKind,
    /// Boundary endpoint met first along the path.
    pub entry: Vertex,
    pub exit: Vertex,
    /// The single bend of corner separators and corner cookies.
    pub bend: Option<Vertex>,
    /// Length of the parallel legs of a cookie.
    pub size: Option<usize>,
    /// 1-based ordinal among parts of the same kind.
    pub index: usize,
    /// Bends at internal vertices.
    pub bends: usize,
    /// Positions of `entry` and `exit` in the s→t order.
    pub start: usize,
    pub end: usize,
}

impl InternalSubpath {
    pub fn internal_vertices(&self) -> usize {
        self.end - self.start - 1
    }

    pub fn contains_position(&self, pos: usize) -> bool {
        (self.start..=self.end).contains(&pos)
    }
}

/// Which way the straight separators run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeparatorAxis {
    /// North-south separators, each filling one column.
    Columns,
    /// East-west separators, each filling one row.
    Rows,
}

/// The straight separators of a simple path, which fill the consecutive
/// columns (or rows) `first..=last`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparatorSpan {
    pub axis: SeparatorAxis,
    pub first: usize,
    pub last: usize,
    pub count: usize,
    /// Column or row of the first separator met along the path.
    pub eta1: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubpathDecomposition {
    pub parts: Vec<InternalSubpath>,
    /// Corner separators cutting off `s`.
    pub mu: usize,
    /// Straight separators.
    pub eta: usize,
    /// Corner separators cutting off `t`.
    pub nu: usize,
}

impl SubpathDecomposition {
    pub fn is_simple(&self) -> bool {
        self.parts
            .iter()
            .all(|p| p.kind != SubpathKind::Unclassifiable)
    }

    pub fn count(&self, kind: SubpathKind) -> usize {
        self.parts.iter().filter(|p| p.kind == kind).count()
    }

    pub fn cookies(&self) -> usize {
        self.parts.iter().filter(|p| p.kind.is_cookie()).count()
    }

    pub fn internal_vertices(&self) -> usize {
        self.parts
            .iter()
            .map(InternalSubpath::internal_vertices)
            .sum()
    }

    /// The part whose s→t position range covers `pos`.
    pub fn part_at(&self, pos: usize) -> Option<&InternalSubpath> {
        let i = self.parts.partition_point(|p| p.end < pos);
        self.parts.get(i).filter(|p| p.contains_position(pos))
    }

    pub fn separator_span(&self) -> Option<SeparatorSpan> {
        let mut seps = self
            .parts
            .iter()
            .filter(|p| p.kind == SubpathKind::StraightSep);
        let first = seps.next()?;
        let axis = if first.entry.x == first.exit.x {
            SeparatorAxis::Columns
        } else {
            SeparatorAxis::Rows
        };
        let coord = |p: &InternalSubpath| match axis {
            SeparatorAxis::Columns => p.entry.x,
            SeparatorAxis::Rows => p.entry.y,
        };
        let eta1 = coord(first);
        let (mut lo, mut hi, mut count) = (eta1, eta1, 1);
        for p in seps {
            lo = lo.min(coord(p));
            hi = hi.max(coord(p));
            count += 1;
        }
        Some(SeparatorSpan {
            axis,
            first: lo,
            last: hi,
            count,
            eta1,
        })
    }

    /// One line per part: `kind ex,ey tx,ty [b=bx,by] [size=s]`.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for p in &self.parts {
            out.push_str(&format!(
                "{} {},{} {},{}",
                p.kind, p.entry.x, p.entry.y, p.exit.x, p.exit.y
            ));
            if let Some(b) = p.bend {
                out.push_str(&format!(" b={},{}", b.x, b.y));
            }
            if let Some(s) = p.size {
                out.push_str(&format!(" size={s}"));
            }
            out.push('\n');
        }
        out
    }
}

fn has_internal_lines(dims: GridDims) -> bool {
    dims.rows() >= 3 && dims.cols() >= 3
}

fn turn(order: &[Vertex], i: usize) -> bool {
    Move::between(order[i - 1], order[i]) != Move::between(order[i], order[i + 1])
}

/// Splits the path into its internal subpaths in traversal order.
pub fn decompose(path: &HamPath) -> SubpathDecomposition {
    let dims = path.dims();
    let mut dec = SubpathDecomposition::default();
    if !has_internal_lines(dims) {
        return dec;
    }
    let order = path.order();
    // End of the first segment out of s and start of the last one into t.
    let mut s_seg_end = 1;
    while s_seg_end + 1 < order.len() && !turn(order, s_seg_end) {
        s_seg_end += 1;
    }
    let mut t_seg_start = order.len() - 2;
    while t_seg_start > 0 && !turn(order, t_seg_start) {
        t_seg_start -= 1;
    }
    let (s_seg_end, t_seg_start) = (order[s_seg_end], order[t_seg_start]);

    let mut counters = std::collections::HashMap::new();
    let mut i = 1;
    while i < order.len() {
        if !dims.is_internal(order[i]) {
            i += 1;
            continue;
        }
        let start = i - 1;
        let mut end = i;
        while dims.is_internal(order[end]) {
            end += 1;
        }
        let mut bends = 0;
        let mut first_bend = None;
        for k in start + 1..end {
            if turn(order, k) {
                bends += 1;
                first_bend.get_or_insert(k);
            }
        }
        let (entry, exit) = (order[start], order[end]);
        let sides = (dims.side_of(entry), dims.side_of(exit));
        let mut bend = None;
        let mut size = None;
        let kind = match (sides, bends) {
            ((Some(a), Some(b)), 0) if a == b.opposite() => SubpathKind::StraightSep,
            ((Some(a), Some(b)), 2) if a == b => {
                size = first_bend.map(|k| k - start);
                SubpathKind::cookie_on(a)
            }
            ((Some(a), Some(b)), 1) if a != b && a != b.opposite() => {
                bend = first_bend.map(|k| order[k]);
                let corner_of =
                    |side_a, side_b| (a == side_a && b == side_b) || (a == side_b && b == side_a);
                if entry == s_seg_end || exit == t_seg_start {
                    SubpathKind::CornerCookie
                } else if corner_of(Side::North, Side::West) {
                    SubpathKind::CornerSepMu
                } else if corner_of(Side::South, Side::East) {
                    SubpathKind::CornerSepNu
                } else {
                    SubpathKind::Unclassifiable
                }
            }
            _ => SubpathKind::Unclassifiable,
        };
        let index = counters.entry(kind).or_insert(0);
        *index += 1;
        dec.parts.push(InternalSubpath {
            kind,
            entry,
            exit,
            bend,
            size,
            index: *index,
            bends,
            start,
            end,
        });
        i = end + 1;
    }
    dec.mu = dec.count(SubpathKind::CornerSepMu);
    dec.eta = dec.count(SubpathKind::StraightSep);
    dec.nu = dec.count(SubpathKind::CornerSepNu);
    dec
}

/// Every internal subpath has the minimum bend count for its endpoints.
/// Grids without internal vertices hold vacuously simple paths.
pub fn is_simple(path: &HamPath) -> bool {
    decompose(path).is_simple()
}

/// Whether the path reaches `alpha` (bottom-left) before `beta` (top-right).
pub fn visits_alpha_first(path: &HamPath) -> bool {
    let dims = path.dims();
    let (alpha, beta) = (dims.alpha(), dims.beta());
    if alpha == beta {
        return true;
    }
    for &v in path.order() {
        if v == alpha {
            return true;
        }
        if v == beta {
            return false;
        }
    }
    unreachable!("a Hamiltonian path visits every corner")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathForm {
    /// Row boustrophedon.
    CanonicalEw,
    /// Column boustrophedon.
    CanonicalNs,
    AlmostCanonical,
    GeneralSimple,
    NotSimple,
}

impl PathForm {
    pub fn is_canonical(self) -> bool {
        matches!(self, PathForm::CanonicalEw | PathForm::CanonicalNs)
    }

    pub fn name(self) -> &'static str {
        match self {
            PathForm::CanonicalEw => "Canonical_EW",
            PathForm::CanonicalNs => "Canonical_NS",
            PathForm::AlmostCanonical => "AlmostCanonical",
            PathForm::GeneralSimple => "GeneralSimple",
            PathForm::NotSimple => "NotSimple",
        }
    }
}

impl fmt::Display for PathForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Canonical kind read off the first edge: a first step east fills rows.
fn canonical_kind(path: &HamPath) -> PathForm {
    match path.moves().next() {
        Some(Move::Down) => PathForm::CanonicalNs,
        _ => PathForm::CanonicalEw,
    }
}

pub fn classify_form(path: &HamPath) -> PathForm {
    classify_with(path, &decompose(path))
}

/// [`classify_form`] for a caller that already holds the decomposition.
pub fn classify_with(path: &HamPath, dec: &SubpathDecomposition) -> PathForm {
    let dims = path.dims();
    if !has_internal_lines(dims) {
        return canonical_kind(path);
    }
    if !dec.is_simple() {
        return PathForm::NotSimple;
    }
    if dec.parts.iter().all(|p| p.bends == 0) {
        return canonical_kind(path);
    }
    // Almost canonical: the separators reach column 2 from the west and
    // column n-3 from the east, so each outer region is at most two wide.
    let Some(span) = dec.separator_span() else {
        return PathForm::GeneralSimple;
    };
    let extent = match span.axis {
        SeparatorAxis::Columns => dims.cols(),
        SeparatorAxis::Rows => dims.rows(),
    };
    if span.first <= 2 && span.last + 3 >= extent {
        PathForm::AlmostCanonical
    } else {
        PathForm::GeneralSimple
    }
}
