//! Reconfiguration drivers and replayable switch traces.
//!
//! [`reconfig_to_canonical`] brings any simple path to a canonical one:
//! south-to-north zips grow the separators westward (phase A), the same
//! sweep runs again on the half-turned grid (phase B), and west-to-east zips
//! finish an almost canonical path row pair by row pair (phase C).
//! [`reconfigure`] joins two such runs through a canonical-to-canonical
//! sweep, replaying the second run backwards.
//!
//! Frame changes are part of the trace, so a switch record is always
//! expressed in the coordinates of the frame active when it was made.

use std::fmt;

use crate::analysis::{classify_with, decompose, is_simple, PathForm, SeparatorAxis};
use crate::error::{Error, Result};
use crate::grid::{parse_dims_line, GridDims, HamPath, Vertex};
use crate::switching::{Heading, Square, SwitchRecord, Zipline};
use crate::zip::{band_separators, zip_s_to_n_in_place, zip_w_to_e_in_place, CheckLevel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameTransform {
    Rot180,
    Transpose,
}

impl FrameTransform {
    pub fn apply(self, path: &HamPath) -> HamPath {
        match self {
            FrameTransform::Rot180 => path.rotate180(),
            FrameTransform::Transpose => path.transpose(),
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            FrameTransform::Rot180 => "ROT180",
            FrameTransform::Transpose => "TRANSPOSE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    StepA,
    StepB,
    StepC,
    CanonicalSweep,
    ReversedTail,
}

impl Phase {
    pub fn code(self) -> &'static str {
        match self {
            Phase::StepA => "A",
            Phase::StepB => "B",
            Phase::StepC => "C",
            Phase::CanonicalSweep => "CANON",
            Phase::ReversedTail => "REV",
        }
    }

    pub fn from_code(s: &str) -> Option<Phase> {
        match s {
            "A" => Some(Phase::StepA),
            "B" => Some(Phase::StepB),
            "C" => Some(Phase::StepC),
            "CANON" => Some(Phase::CanonicalSweep),
            "REV" => Some(Phase::ReversedTail),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStep {
    Frame(FrameTransform),
    Switch { record: SwitchRecord, phase: Phase },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchTrace {
    pub initial: HamPath,
    pub final_path: HamPath,
    pub steps: Vec<TraceStep>,
}

impl SwitchTrace {
    pub fn empty(path: &HamPath) -> SwitchTrace {
        SwitchTrace {
            initial: path.clone(),
            final_path: path.clone(),
            steps: Vec::new(),
        }
    }

    pub fn switch_count(&self) -> usize {
        self.records().count()
    }

    pub fn records(&self) -> impl Iterator<Item = (&SwitchRecord, Phase)> {
        self.steps.iter().filter_map(|s| match s {
            TraceStep::Switch { record, phase } => Some((record, *phase)),
            TraceStep::Frame(_) => None,
        })
    }

    pub fn count_phase(&self, phase: Phase) -> usize {
        self.records().filter(|(_, p)| *p == phase).count()
    }

    /// The trace that walks back from `final_path` to `initial`.
    pub fn reversed(&self) -> SwitchTrace {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match *s {
                TraceStep::Frame(f) => TraceStep::Frame(f),
                TraceStep::Switch { record, .. } => TraceStep::Switch {
                    record: record.inverse(),
                    phase: Phase::ReversedTail,
                },
            })
            .collect();
        SwitchTrace {
            initial: self.final_path.clone(),
            final_path: self.initial.clone(),
            steps,
        }
    }

    /// Appends `next`, which must start where `self` ends.
    pub fn then(mut self, next: SwitchTrace) -> Result<SwitchTrace> {
        if self.final_path != next.initial {
            return Err(Error::ReplayDivergence {
                step: self.steps.len(),
                reason: "concatenated traces do not meet".into(),
            });
        }
        self.steps.extend(next.steps);
        self.final_path = next.final_path;
        Ok(self)
    }

    /// The initial path followed by the path after every switch, all in the
    /// original frame.
    pub fn states(&self) -> Result<Vec<HamPath>> {
        let mut out = vec![self.initial.clone()];
        let mut cur = self.initial.clone();
        let mut active: Vec<FrameTransform> = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            match *step {
                TraceStep::Frame(f) => {
                    cur = f.apply(&cur);
                    if let Some(pos) = active.iter().position(|&g| g == f) {
                        active.remove(pos);
                    } else {
                        active.push(f);
                    }
                }
                TraceStep::Switch { record, .. } => {
                    cur = record.apply(&cur).map_err(|e| Error::ReplayDivergence {
                        step: i,
                        reason: e.to_string(),
                    })?;
                    let mut orig = cur.clone();
                    for f in active.iter().rev() {
                        orig = f.apply(&orig);
                    }
                    out.push(orig);
                }
            }
        }
        Ok(out)
    }

    /// Trace file text: dims, initial and final move strings, then one
    /// line per frame change or switch record.
    pub fn to_text(&self) -> String {
        let d = self.initial.dims();
        let mut out = format!(
            "{} {}\n{}\n{}\n",
            d.rows(),
            d.cols(),
            self.initial.to_moves(),
            self.final_path.to_moves()
        );
        for step in &self.steps {
            match step {
                TraceStep::Frame(f) => out.push_str(f.code()),
                TraceStep::Switch { record, phase } => {
                    out.push_str(&record_line(&record.square, *phase));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<SwitchTrace> {
        let mut lines = text.lines().enumerate();
        let parse_err = |line: usize, msg: String| Error::Parse { line, col: 1, msg };
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty trace file".into()))?;
        let dims = parse_dims_line(header, 1)?;
        let mut path_line = |what: &str| -> Result<HamPath> {
            let (i, l) = lines
                .next()
                .ok_or_else(|| parse_err(0, format!("missing {what} move string")))?;
            HamPath::from_moves(dims, l.trim()).map_err(|e| match e {
                Error::Parse { col, msg, .. } => Error::Parse {
                    line: i + 1,
                    col,
                    msg,
                },
                other => other,
            })
        };
        let initial = path_line("initial")?;
        let final_path = path_line("final")?;
        let mut frame_dims = dims;
        let mut steps = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let step = match line {
                "ROT180" => TraceStep::Frame(FrameTransform::Rot180),
                "TRANSPOSE" => {
                    frame_dims = frame_dims.transposed();
                    TraceStep::Frame(FrameTransform::Transpose)
                }
                _ => parse_record(frame_dims, line).map_err(|msg| parse_err(i + 1, msg))?,
            };
            steps.push(step);
        }
        Ok(SwitchTrace {
            initial,
            final_path,
            steps,
        })
    }
}

impl fmt::Display for SwitchTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn record_line(sq: &Square, phase: Phase) -> String {
    let z = &sq.zipline;
    format!(
        "{} {} {} {} {} {} {}",
        sq.center.x,
        sq.center.y,
        z.orientation.name(),
        z.index,
        z.heading.code(),
        z.la,
        phase.code()
    )
}

fn parse_record(dims: GridDims, line: &str) -> std::result::Result<TraceStep, String> {
    let f: Vec<&str> = line.split_whitespace().collect();
    let [cx, cy, orient, zidx, dir, la, phase] = f.as_slice() else {
        return Err(format!(
            "expected 7 fields in switch record, got {}",
            f.len()
        ));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("bad number {s:?}"));
    let heading = Heading::from_code(dir).ok_or_else(|| format!("bad direction {dir:?}"))?;
    if heading.orientation().name() != *orient {
        return Err(format!("direction {dir} does not run along a {orient}"));
    }
    let phase = Phase::from_code(phase).ok_or_else(|| format!("bad phase {phase:?}"))?;
    let zipline = Zipline::new(dims, num(zidx)?, heading, num(la)?).map_err(|e| e.to_string())?;
    let sq =
        Square::new(dims, Vertex::new(num(cx)?, num(cy)?), zipline).map_err(|e| e.to_string())?;
    let record = if phase == Phase::ReversedTail {
        sq.record().inverse()
    } else {
        sq.record()
    };
    Ok(TraceStep::Switch { record, phase })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalKind {
    /// Rows filled in turn.
    Ew,
    /// Columns filled in turn.
    Ns,
}

/// Row (EW) or column (NS) boustrophedon.
pub fn make_canonical(dims: GridDims, kind: CanonicalKind) -> Result<HamPath> {
    let (m, n) = (dims.rows(), dims.cols());
    let mut moves = String::with_capacity(dims.size());
    match kind {
        CanonicalKind::Ew => {
            if m % 2 == 0 && n > 1 {
                return Err(Error::NoSuchCanonical { dims, kind: "EW" });
            }
            for y in 0..m {
                let c = if y % 2 == 0 { 'R' } else { 'L' };
                moves.extend(std::iter::repeat_n(c, n - 1));
                if y + 1 < m {
                    moves.push('D');
                }
            }
        }
        CanonicalKind::Ns => {
            if n % 2 == 0 && m > 1 {
                return Err(Error::NoSuchCanonical { dims, kind: "NS" });
            }
            for x in 0..n {
                let c = if x % 2 == 0 { 'D' } else { 'U' };
                moves.extend(std::iter::repeat_n(c, m - 1));
                if x + 1 < n {
                    moves.push('R');
                }
            }
        }
    }
    HamPath::from_moves(dims, &moves)
}

struct Builder {
    cur: HamPath,
    steps: Vec<TraceStep>,
    records: Vec<SwitchRecord>,
}

impl Builder {
    fn new(path: &HamPath) -> Builder {
        Builder {
            cur: path.clone(),
            steps: Vec::new(),
            records: Vec::new(),
        }
    }

    fn frame(&mut self, f: FrameTransform) {
        self.cur = f.apply(&self.cur);
        self.steps.push(TraceStep::Frame(f));
    }

    fn flush(&mut self, phase: Phase) {
        self.steps.extend(
            self.records
                .drain(..)
                .map(|record| TraceStep::Switch { record, phase }),
        );
    }

    fn finish(self, initial: &HamPath) -> SwitchTrace {
        SwitchTrace {
            initial: initial.clone(),
            final_path: self.cur,
            steps: self.steps,
        }
    }
}

/// Simple path to canonical path, with every intermediate path checked.
pub fn reconfig_to_canonical(path: &HamPath) -> Result<SwitchTrace> {
    reconfig_to_canonical_with(path, CheckLevel::Full)
}

pub fn reconfig_to_canonical_with(path: &HamPath, level: CheckLevel) -> Result<SwitchTrace> {
    let dec = decompose(path);
    let form = classify_with(path, &dec);
    if form == PathForm::NotSimple {
        return Err(Error::NotSimple);
    }
    if form.is_canonical() {
        return Ok(SwitchTrace::empty(path));
    }
    let span = dec
        .separator_span()
        .ok_or(Error::FrameUnavailable { eta1: None })?;
    let mut b = Builder::new(path);
    let transposed = span.axis == SeparatorAxis::Rows;
    if transposed {
        b.frame(FrameTransform::Transpose);
    }
    let n = b.cur.dims().cols();

    // Phase A: grow separators westward.
    let mut first = span.first;
    while first >= 3 {
        first = zip_s_to_n_in_place(&mut b.cur, first, level, &mut b.records)?;
    }
    b.flush(Phase::StepA);

    // Phase B: the same sweep on the half-turned grid.
    let mut last = span.last;
    let rotated = n - 1 - last >= 3;
    if rotated {
        b.frame(FrameTransform::Rot180);
        let mut east = n - 1 - last;
        while east >= 3 {
            east = zip_s_to_n_in_place(&mut b.cur, east, level, &mut b.records)?;
        }
        b.flush(Phase::StepB);
        (first, last) = (east, n - 1 - first);
    }

    // Phase C: almost canonical to row canonical.
    if !(first == 1 && last == n - 2) {
        let m = b.cur.dims().rows();
        let mut top = 0;
        while top + 3 <= m && band_separators(&b.cur, top).is_some() {
            zip_w_to_e_in_place(&mut b.cur, top, top > 0, level, &mut b.records)?;
            top += 2;
        }
        b.flush(Phase::StepC);
    }

    if rotated {
        b.frame(FrameTransform::Rot180);
    }
    if transposed {
        b.frame(FrameTransform::Transpose);
    }
    let trace = b.finish(path);
    if level == CheckLevel::Full {
        trace.final_path.check_hamiltonian()?;
        let end = crate::analysis::classify_form(&trace.final_path);
        if !end.is_canonical() {
            return Err(Error::StructureViolation(format!(
                "reconfiguration ended on a {end} path"
            )));
        }
    }
    Ok(trace)
}

/// Column canonical to row canonical (or back) by sweeping row pairs.
pub fn reconfig_canonical_to_canonical(from: &HamPath, to: &HamPath) -> Result<SwitchTrace> {
    reconfig_canonical_to_canonical_with(from, to, CheckLevel::Full)
}

pub fn reconfig_canonical_to_canonical_with(
    from: &HamPath,
    to: &HamPath,
    level: CheckLevel,
) -> Result<SwitchTrace> {
    if from.dims() != to.dims() {
        return Err(Error::DimsMismatch(from.dims(), to.dims()));
    }
    if from == to {
        return Ok(SwitchTrace::empty(from));
    }
    let kind = |p: &HamPath| {
        let form = crate::analysis::classify_form(p);
        if form.is_canonical() {
            Ok(form)
        } else {
            Err(Error::StructureViolation(format!(
                "expected a canonical path, got {form}"
            )))
        }
    };
    let (a, _) = (kind(from)?, kind(to)?);
    let mut b = Builder::new(from);
    let transposed = a == PathForm::CanonicalEw;
    if transposed {
        b.frame(FrameTransform::Transpose);
    }
    let m = b.cur.dims().rows();
    let mut top = 0;
    while top + 3 <= m {
        zip_w_to_e_in_place(&mut b.cur, top, true, level, &mut b.records)?;
        top += 2;
    }
    b.flush(Phase::CanonicalSweep);
    if transposed {
        b.frame(FrameTransform::Transpose);
    }
    let trace = b.finish(from);
    if &trace.final_path != to {
        return Err(Error::StructureViolation(
            "canonical sweep missed the target path".into(),
        ));
    }
    Ok(trace)
}

/// Trace from `from` to `to` through canonical paths, replay-verified.
pub fn reconfigure(from: &HamPath, to: &HamPath) -> Result<SwitchTrace> {
    reconfigure_with(from, to, CheckLevel::Full)
}

pub fn reconfigure_with(from: &HamPath, to: &HamPath, level: CheckLevel) -> Result<SwitchTrace> {
    if from.dims() != to.dims() {
        return Err(Error::DimsMismatch(from.dims(), to.dims()));
    }
    if !from.dims().admits_hamiltonian_path() {
        return Err(Error::NoSimplePath(from.dims()));
    }
    if from == to {
        if level == CheckLevel::Full && !is_simple(from) {
            return Err(Error::NotSimple);
        }
        return Ok(SwitchTrace::empty(from));
    }
    let head = reconfig_to_canonical_with(from, level)?;
    let tail = reconfig_to_canonical_with(to, level)?;
    let middle = reconfig_canonical_to_canonical_with(&head.final_path, &tail.final_path, level)?;
    let trace = head.then(middle)?.then(tail.reversed())?;
    let end = replay_with(&trace, from, level)?;
    if &end != to {
        return Err(Error::ReplayDivergence {
            step: trace.steps.len(),
            reason: "replay does not end at the target".into(),
        });
    }
    Ok(trace)
}

/// Applies the trace to `start`, checking simplicity after every switch.
pub fn replay(trace: &SwitchTrace, start: &HamPath) -> Result<HamPath> {
    replay_with(trace, start, CheckLevel::Full)
}

pub fn replay_with(trace: &SwitchTrace, start: &HamPath, level: CheckLevel) -> Result<HamPath> {
    let diverge = |step: usize, reason: String| Error::ReplayDivergence { step, reason };
    if start != &trace.initial {
        return Err(diverge(
            0,
            "start path differs from the trace's initial path".into(),
        ));
    }
    let mut cur = start.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        match *step {
            TraceStep::Frame(f) => cur = f.apply(&cur),
            TraceStep::Switch { record, .. } => {
                if !record.applicable(&cur) {
                    return Err(diverge(
                        i,
                        format!("{} does not match the current edges", record.square),
                    ));
                }
                record.apply_unchecked(&mut cur);
                if level == CheckLevel::Full {
                    cur.check_hamiltonian()
                        .map_err(|e| diverge(i, e.to_string()))?;
                    if !is_simple(&cur) {
                        return Err(diverge(i, "intermediate path is not simple".into()));
                    }
                }
            }
        }
    }
    cur.check_hamiltonian()
        .map_err(|e| diverge(trace.steps.len(), e.to_string()))?;
    if cur != trace.final_path {
        return Err(diverge(
            trace.steps.len(),
            "replay ends away from the trace's final path".into(),
        ));
    }
    Ok(cur)
}
