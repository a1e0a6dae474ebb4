//! Inputs shared by the benchmarks.

use hampath_core::switching::all_switches;
use hampath_core::{is_simple, make_canonical, CanonicalKind, GridDims, HamPath};

/// Column and row canonical paths of the odd square grid of side `n`.
pub fn canonical_pair(n: usize) -> (HamPath, HamPath) {
    let d = GridDims::new(n, n).expect("positive side");
    let ns = make_canonical(d, CanonicalKind::Ns).expect("odd side");
    let ew = make_canonical(d, CanonicalKind::Ew).expect("odd side");
    (ns, ew)
}

/// A simple path `steps` switches away from the row canonical path of an
/// `m` x `n` grid (odd `m`), following a fixed stride through the
/// available switches so runs are repeatable.
pub fn walked_path(m: usize, n: usize, steps: usize) -> HamPath {
    let d = GridDims::new(m, n).expect("positive dims");
    let mut cur = make_canonical(d, CanonicalKind::Ew).expect("odd row count");
    for step in 0..steps {
        let next: Vec<HamPath> = all_switches(&cur)
            .into_iter()
            .map(|(_, q)| q)
            .filter(is_simple)
            .collect();
        if next.is_empty() {
            break;
        }
        cur = next[(7 * step + 3) % next.len()].clone();
    }
    cur
}
