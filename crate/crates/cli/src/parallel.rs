//! Multi-worker wall enumeration. The window's candidate index space is
//! split into contiguous chunks, each worker enumerates its chunk with the
//! core routine, and the hit streams are concatenated in chunk order before
//! canonicalization — so the output is byte-identical for every worker
//! count.

use std::ops::Range;
use std::thread;

use cohsys::walls::{canonicalize_hits, collect_hits, WallHit, WallReport, WallSearchWindow};
use cohsys::{Error, SurfaceData, SystemType};

pub fn enumerate_walls_parallel(
    surface: &SurfaceData,
    system: &SystemType,
    window: &WallSearchWindow,
    workers: usize,
) -> Result<WallReport, Error> {
    let workers = workers.max(1) as u64;
    let total = window.candidate_count();
    let chunk = total.div_ceil(workers).max(1);
    let ranges: Vec<Range<u64>> = (0..workers)
        .map(|i| (i * chunk).min(total)..((i + 1) * chunk).min(total))
        .collect();

    let results: Vec<Result<Vec<WallHit>, Error>> = thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| scope.spawn(move || collect_hits(surface, system, window, range)))
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("wall enumeration worker panicked"))
            .collect()
    });

    let mut hits = Vec::new();
    for result in results {
        hits.extend(result?);
    }
    Ok(canonicalize_hits(hits))
}
