//! The two zip sweeps.
//!
//! A zip switches every other square along a zipline. The west-to-east zip
//! runs along Row 1 (or Row `top+1` of a lower band) of an almost canonical
//! path and turns the two top rows into straight segments. The south-to-north
//! zip runs up the column two west of the first straight separator and turns
//! that column and its eastern neighbour into two new separators.
//!
//! [`CheckLevel::Full`] validates every intermediate path, checks simplicity
//! and asserts the structural facts the sweeps rely on. [`CheckLevel::Local`]
//! only tests the O(1) cell conditions of each square, so a sweep costs time
//! linear in the zipline length.

use crate::analysis::{
    classify_form, decompose, visits_alpha_first, PathForm, SeparatorAxis, SubpathKind,
};
use crate::error::{Error, Result};
use crate::grid::{HamPath, Vertex};
use crate::switching::{
    check_switchable_square, local_condition, Heading, Square, SwitchRecord, Zipline,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CheckLevel {
    #[default]
    Full,
    Local,
}

/// Geometry of a south-to-north zip: `l_z` is the column two west of the
/// first straight separator, `l_a` the column between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaFrame {
    /// Column of the first straight separator.
    pub eta1: usize,
    pub zipline: Zipline,
}

/// Horizontal segments running from `l_a` to the west boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSegments {
    /// Rows of the segments, bottom-up along the zipline.
    pub rows: Vec<usize>,
    pub k_perp: usize,
    /// Row of the lowest segment, the center row of the first square.
    pub lo: usize,
    /// Row of the highest segment.
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZipResult {
    pub path: HamPath,
    pub records: Vec<SwitchRecord>,
    pub squares_switched: usize,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::StructureViolation(msg.into())
}

/// Whether every vertical edge of column `x` in rows `top..` is on the path.
pub(crate) fn column_filled(path: &HamPath, x: usize, top: usize) -> bool {
    let m = path.dims().rows();
    (top..m - 1).all(|y| path.has_v(x, y))
}

fn eta_frame(path: &HamPath, eta1: usize) -> Result<EtaFrame> {
    let zipline = Zipline::new(path.dims(), eta1 - 2, Heading::SouthNorth, eta1 - 1)?;
    Ok(EtaFrame { eta1, zipline })
}

/// Finds the south-to-north zip frame and checks the shape of the path
/// around the top of `l_a`.
pub fn locate_eta1_frame(path: &HamPath) -> Result<EtaFrame> {
    let dims = path.dims();
    let dec = decompose(path);
    if !dec.is_simple() {
        return Err(Error::NotSimple);
    }
    let span = dec
        .separator_span()
        .filter(|s| s.axis == SeparatorAxis::Columns)
        .ok_or(Error::FrameUnavailable { eta1: None })?;
    if !visits_alpha_first(path) {
        return Err(violation(
            "north-south separators but beta is visited first",
        ));
    }
    if span.eta1 != span.first {
        return Err(violation(format!(
            "first separator met is column {} but the westmost is {}",
            span.eta1, span.first
        )));
    }
    if span.eta1 < 3 {
        return Err(Error::FrameUnavailable {
            eta1: Some(span.eta1),
        });
    }
    let frame = eta_frame(path, span.eta1)?;
    let (la, lz) = (frame.eta1 - 1, frame.eta1 - 2);
    if !path.has_h(lz, 0) {
        return Err(violation(format!("edge ({lz},0)-({la},0) is missing")));
    }
    let hi = vertical_run_from_top(path, la);
    if hi == 0 || hi + 1 >= dims.rows() {
        return Err(violation(format!(
            "vertical run down column {la} ends at boundary row {hi}"
        )));
    }
    if !(0..la).all(|x| path.has_h(x, hi)) {
        return Err(violation(format!(
            "row {hi} is not a segment from column {la} to the west"
        )));
    }
    let pos = path.positions()[dims.index(Vertex::new(la, hi))];
    let part = dec
        .part_at(pos)
        .ok_or_else(|| violation("top of the vertical run is not on an internal subpath"))?;
    let v = Vertex::new(la, hi);
    let last_mu =
        part.kind == SubpathKind::CornerSepMu && part.bend == Some(v) && part.index == dec.mu;
    let west_corner_cookie =
        part.kind == SubpathKind::CornerCookie && (part.entry.x == 0 || part.exit.x == 0);
    if !(last_mu || west_corner_cookie) {
        return Err(violation(format!(
            "{v} is neither the bend of the last corner separator nor on a west corner cookie ({})",
            part.kind
        )));
    }
    Ok(frame)
}

/// End of the vertical run down column `x` starting at row 0.
fn vertical_run_from_top(path: &HamPath, x: usize) -> usize {
    let mut y = 0;
    while path.has_v(x, y) {
        y += 1;
    }
    y
}

/// Upper endpoint of the first non-edge met going up column `x`.
fn first_gap_from_bottom(path: &HamPath, x: usize) -> Option<usize> {
    let m = path.dims().rows();
    (0..m - 1).rev().find(|&y| !path.has_v(x, y))
}

fn delta_bounds(path: &HamPath, frame: &EtaFrame) -> Result<(usize, usize)> {
    let lz = frame.zipline.index;
    let lo = first_gap_from_bottom(path, lz)
        .ok_or_else(|| violation(format!("column {lz} is already filled")))?;
    let hi = vertical_run_from_top(path, frame.zipline.la);
    if hi > lo || (lo - hi) % 2 == 1 {
        return Err(violation(format!(
            "segment rows {hi}..={lo} do not form an odd run"
        )));
    }
    Ok((lo, hi))
}

/// Locates the delta segments and checks how they sit against `l_a`.
pub fn find_delta_segments(path: &HamPath, frame: &EtaFrame) -> Result<DeltaSegments> {
    let dims = path.dims();
    let m = dims.rows();
    let la = frame.zipline.la;
    let (lo, hi) = delta_bounds(path, frame)?;

    // Direct scan of internal rows with a segment from l_a to the west.
    let rows: Vec<usize> = (1..m - 1)
        .rev()
        .filter(|&y| (0..la).all(|x| path.has_h(x, y)) && !path.has_h(la, y))
        .collect();
    let expected: Vec<usize> = (hi..=lo).rev().collect();
    if rows != expected {
        return Err(violation(format!(
            "segments to the west sit in rows {rows:?}, expected the run {hi}..={lo}"
        )));
    }
    if rows.len().is_multiple_of(2) {
        return Err(violation(format!(
            "{} delta segments, expected an odd count",
            rows.len()
        )));
    }

    let dec = decompose(path);
    let pos = path.positions();
    let part_of = |v: Vertex| dec.part_at(pos[dims.index(v)]).map(|p| p.kind);

    for &y in &rows {
        // No vertical path edges at nodes strictly inside a segment.
        for x in 1..la {
            if path.has_v(x, y - 1) || path.has_v(x, y) {
                return Err(violation(format!(
                    "vertical edge at ({x},{y}) inside a delta segment"
                )));
            }
        }
        // The node below a segment end that is joined upward.
        if !path.has_v(la, y - 1) {
            continue;
        }
        let u = Vertex::new(la, y + 1);
        let west_south = path.has_h(la - 1, y + 1) && path.has_v(la, y + 1);
        let ok = if y + 1 == m - 1 {
            (0..=la).all(|x| path.has_h(x, m - 1))
        } else {
            west_south
                && matches!(
                    part_of(u),
                    Some(SubpathKind::CookieW | SubpathKind::CookieS)
                )
        };
        if !ok {
            return Err(violation(format!(
                "node {u} below a delta segment is not on a west cookie, a south cookie or the south run"
            )));
        }
    }
    for &y in rows.iter().filter(|&&y| y > hi) {
        if part_of(Vertex::new(la, y)) != Some(SubpathKind::CookieW) {
            return Err(violation(format!(
                "delta segment in row {y} is not a west cookie side"
            )));
        }
    }
    Ok(DeltaSegments {
        k_perp: rows.len(),
        rows,
        lo,
        hi,
    })
}

fn apply_square(
    path: &mut HamPath,
    sq: &Square,
    level: CheckLevel,
    records: &mut Vec<SwitchRecord>,
) -> Result<()> {
    let check = match level {
        CheckLevel::Full => check_switchable_square(path, sq),
        CheckLevel::Local => local_condition(path, sq),
    };
    check.map_err(|reason| Error::NotSwitchable {
        center: sq.center,
        reason,
    })?;
    let rec = sq.record();
    rec.apply_unchecked(path);
    if level == CheckLevel::Full {
        path.check_hamiltonian()?;
        if !crate::analysis::is_simple(path) {
            return Err(violation(format!(
                "switching {sq} produced a non-simple path"
            )));
        }
    }
    records.push(rec);
    Ok(())
}

/// South-to-north zip on `path` in place. Returns the new first-separator
/// column. With [`CheckLevel::Local`] the caller supplies `eta1`.
pub(crate) fn zip_s_to_n_in_place(
    path: &mut HamPath,
    eta1: usize,
    level: CheckLevel,
    records: &mut Vec<SwitchRecord>,
) -> Result<usize> {
    let (frame, lo, k_perp, k_before) = match level {
        CheckLevel::Full => {
            let frame = locate_eta1_frame(path)?;
            if frame.eta1 != eta1 {
                return Err(violation(format!(
                    "first separator in column {}, caller expected {eta1}",
                    frame.eta1
                )));
            }
            let delta = find_delta_segments(path, &frame)?;
            (frame, delta.lo, delta.k_perp, decompose(path).eta)
        }
        CheckLevel::Local => {
            if eta1 < 3 {
                return Err(Error::FrameUnavailable { eta1: Some(eta1) });
            }
            let frame = eta_frame(path, eta1)?;
            let (lo, hi) = delta_bounds(path, &frame)?;
            (frame, lo, lo - hi + 1, 0)
        }
    };
    let lz = frame.zipline.index;
    for i in (0..k_perp).step_by(2) {
        let sq = Square::new(path.dims(), Vertex::new(lz, lo - i), frame.zipline)?;
        apply_square(path, &sq, level, records)?;
    }
    if level == CheckLevel::Full {
        if !column_filled(path, lz, 0) || !column_filled(path, lz + 1, 0) || !path.has_h(lz, 0) {
            return Err(violation(format!(
                "columns {lz} and {} are not new separators joined on the north side",
                lz + 1
            )));
        }
        let k_after = decompose(path).eta;
        if k_after != k_before + 2 {
            return Err(violation(format!(
                "separator count went from {k_before} to {k_after}"
            )));
        }
    }
    Ok(lz)
}

pub fn zip_s_to_n(path: &HamPath) -> Result<ZipResult> {
    let frame = locate_eta1_frame(path)?;
    let mut next = path.clone();
    let mut records = Vec::new();
    zip_s_to_n_in_place(&mut next, frame.eta1, CheckLevel::Full, &mut records)?;
    Ok(ZipResult {
        squares_switched: records.len(),
        path: next,
        records,
    })
}

/// Separator columns `(a, b)` of the band below `top`, read from columns
/// 1, 2 and n-2, n-3 only.
pub(crate) fn band_separators(path: &HamPath, top: usize) -> Option<(usize, usize)> {
    let n = path.dims().cols();
    let a = [1, 2]
        .into_iter()
        .find(|&x| x + 1 < n && column_filled(path, x, top))?;
    let b = [n - 2, n - 3]
        .into_iter()
        .find(|&x| x >= a && column_filled(path, x, top))?;
    Some((a, b))
}

fn check_band(path: &HamPath, top: usize, allow_canonical: bool) -> Result<(usize, usize)> {
    let band = path
        .band_below(top)
        .map_err(|e| Error::NotAlmostCanonical(format!("rows {top}.. are not a path: {e}")))?;
    let form = classify_form(&band);
    let accepted =
        form == PathForm::AlmostCanonical || (allow_canonical && form == PathForm::CanonicalNs);
    if !accepted {
        return Err(Error::NotAlmostCanonical(format!(
            "rows {top}.. form {form}"
        )));
    }
    let span = decompose(&band).separator_span();
    let span = match span {
        Some(s) if s.axis == SeparatorAxis::Columns => s,
        _ => {
            return Err(Error::NotAlmostCanonical(
                "separators do not run north-south".into(),
            ))
        }
    };
    if !visits_alpha_first(&band) {
        return Err(Error::NotAlmostCanonical(
            "beta is visited before alpha".into(),
        ));
    }
    let quick = band_separators(path, top);
    if quick != Some((span.first, span.last)) {
        return Err(violation(format!(
            "column scan found separators {quick:?}, decomposition {}..={}",
            span.first, span.last
        )));
    }
    Ok((span.first, span.last))
}

/// West-to-east zip with `l_a` = Row `top`, `l_z` = Row `top+1`, in place.
pub(crate) fn zip_w_to_e_in_place(
    path: &mut HamPath,
    top: usize,
    allow_canonical: bool,
    level: CheckLevel,
    records: &mut Vec<SwitchRecord>,
) -> Result<()> {
    let dims = path.dims();
    if top + 3 > dims.rows() || dims.cols() < 3 {
        return Err(Error::NotAlmostCanonical(format!(
            "no zipline below row {top} in {dims}"
        )));
    }
    let (a, b) = match level {
        CheckLevel::Full => check_band(path, top, allow_canonical)?,
        CheckLevel::Local => band_separators(path, top).ok_or_else(|| {
            Error::NotAlmostCanonical(format!("no separator near the west side below row {top}"))
        })?,
    };
    if (b - a) % 2 == 1 {
        return Err(violation(format!(
            "even number of separators in columns {a}..={b}"
        )));
    }
    let zipline = Zipline::new(dims, top + 1, Heading::WestEast, top)?;
    for x in (a..=b).step_by(2) {
        let sq = Square::new(dims, Vertex::new(x, top + 1), zipline)?;
        apply_square(path, &sq, level, records)?;
    }
    if level == CheckLevel::Full {
        let n = dims.cols();
        let rows_done = (0..n - 1).all(|x| path.has_h(x, top) && path.has_h(x, top + 1))
            && path.has_v(n - 1, top);
        if !rows_done {
            return Err(violation(format!(
                "rows {top} and {} are not two joined segments",
                top + 1
            )));
        }
        if top + 2 < dims.rows() {
            let rest = path.band_below(top + 2)?;
            let form = classify_form(&rest);
            if !matches!(
                form,
                PathForm::AlmostCanonical | PathForm::CanonicalNs | PathForm::CanonicalEw
            ) {
                return Err(violation(format!("rows below {} form {form}", top + 1)));
            }
        }
    }
    Ok(())
}

/// West-to-east zip on an almost canonical path along Row 1.
pub fn zip_w_to_e(path: &HamPath) -> Result<ZipResult> {
    zip_band(path, 0, false)
}

/// West-to-east zip along Row `top+1` of a path whose rows above `top`
/// are already straight; the band below may also be column canonical.
pub fn zip_w_to_e_band(path: &HamPath, top: usize) -> Result<ZipResult> {
    zip_band(path, top, true)
}

fn zip_band(path: &HamPath, top: usize, allow_canonical: bool) -> Result<ZipResult> {
    let mut next = path.clone();
    let mut records = Vec::new();
    zip_w_to_e_in_place(
        &mut next,
        top,
        allow_canonical,
        CheckLevel::Full,
        &mut records,
    )?;
    Ok(ZipResult {
        squares_switched: records.len(),
        path: next,
        records,
    })
}
