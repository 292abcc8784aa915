//! Extremal critical-set searches and corpus verification.
//!
//! For orders up to 4 the search is exhaustive and exact: every Latin
//! square of the order is enumerated directly (1, 2, 12, 576 squares), and
//! within each square every cell subset is classified. Unique
//! completability is monotone upward, so subsets are processed in
//! increasing size with a memo: a subset with a uniquely completable child
//! is itself uniquely completable without a solver call, and a subset is
//! critical exactly when it is uniquely completable and none of its
//! children are. One sweep therefore yields the largest and smallest
//! critical sets and the complete size census.
//!
//! Larger orders use randomized greedy minimalization with restarts, which
//! lower-bounds the largest size.

use rayon::prelude::*;

use crate::corpus::{self, EntryKind};
use crate::criticality::{
    self, analyze, check_lemma_3_1, check_lemma_3_2, emptiness_profile, line_count_guard,
    union_stats, EmptinessProfile, RemovalPolicy,
};
use crate::error::{Error, Result};
use crate::pls::{LatinSquare, PartialLatinSquare};
use crate::solver;
use crate::trades;

const EXHAUSTIVE_MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Greedy,
}

/// Outcome of a search. `subsets_examined` counts candidate subsets whose
/// unique completability was considered (all 2^(n^2) per square in exact
/// mode, one per removal attempt in greedy mode).
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub order: usize,
    pub best_size: usize,
    pub witness: PartialLatinSquare,
    pub host: LatinSquare,
    pub mode: SearchMode,
    pub squares_examined: u64,
    pub subsets_examined: u64,
    pub seed: Option<u64>,
}

impl SearchResult {
    /// Plain-text report: summary lines, then the witness and host grids.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "mode: {}\n",
            match self.mode {
                SearchMode::Exact => "exact",
                SearchMode::Greedy => "greedy",
            }
        ));
        out.push_str(&format!("order: {}\n", self.order));
        out.push_str(&format!("best size: {}\n", self.best_size));
        out.push_str(&format!("squares examined: {}\n", self.squares_examined));
        out.push_str(&format!("subsets examined: {}\n", self.subsets_examined));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        out.push_str("witness:\n");
        out.push_str(&self.witness.to_text());
        out.push_str("host:\n");
        out.push_str(&self.host.to_text());
        out
    }
}

/// Complete classification of the critical sets of every Latin square of
/// order n <= 4.
#[derive(Debug, Clone)]
pub struct CriticalCensus {
    pub order: usize,
    /// counts_by_size[s] = number of (square, subset) pairs where the
    /// subset is a critical set of size s.
    pub counts_by_size: Vec<u64>,
    pub largest: (PartialLatinSquare, LatinSquare),
    pub smallest: (PartialLatinSquare, LatinSquare),
    pub squares_examined: u64,
    pub subsets_examined: u64,
}

impl CriticalCensus {
    pub fn largest_size(&self) -> usize {
        self.largest.0.size()
    }

    pub fn smallest_size(&self) -> usize {
        self.smallest.0.size()
    }
}

/// All Latin squares of the given order, in lexicographic order.
pub fn all_latin_squares(n: usize) -> Result<Vec<LatinSquare>> {
    let empty = PartialLatinSquare::new(n)?;
    Ok(solver::enumerate_completions(&empty, usize::MAX))
}

struct SquareCensus {
    counts: Vec<u64>,
    largest: Option<u32>,
    smallest: Option<u32>,
}

/// Classifies every subset of one square. `masks_by_size` must list all
/// cell masks in increasing popcount order.
fn census_one_square(l: &LatinSquare, masks_by_size: &[u32]) -> SquareCensus {
    let n = l.order();
    let ncells = n * n;
    let cells = l.as_partial().cells();
    let mut uc = vec![false; 1usize << ncells];
    let mut counts = vec![0u64; ncells + 1];
    let mut largest: Option<u32> = None;
    let mut smallest: Option<u32> = None;
    let mut buf = [0u8; 16];

    for &mask in masks_by_size {
        let mut child_uc = false;
        let mut rest = mask;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            if uc[(mask ^ bit) as usize] {
                child_uc = true;
                break;
            }
        }
        let is_uc = child_uc || {
            for idx in 0..ncells {
                buf[idx] = if mask & (1 << idx) != 0 { cells[idx] } else { 0 };
            }
            solver::cells_uniquely_completable(n, &buf[..ncells])
        };
        uc[mask as usize] = is_uc;
        if is_uc && !child_uc {
            // Uniquely completable with no uniquely completable child:
            // a critical set.
            let size = mask.count_ones() as usize;
            counts[size] += 1;
            if largest.is_none_or(|best| better_witness(l, mask, size, l, best, true)) {
                largest = Some(mask);
            }
            if smallest.is_none_or(|best| better_witness(l, mask, size, l, best, false)) {
                smallest = Some(mask);
            }
        }
    }
    SquareCensus {
        counts,
        largest,
        smallest,
    }
}

/// Tie-break for reported witnesses: prefer the extremal size, then the
/// lexicographically least serialization, so results are reproducible and
/// independent of worker count.
fn better_witness(
    l_new: &LatinSquare,
    new_mask: u32,
    new_size: usize,
    l_old: &LatinSquare,
    old_mask: u32,
    want_max: bool,
) -> bool {
    let old_size = old_mask.count_ones() as usize;
    if new_size != old_size {
        return if want_max {
            new_size > old_size
        } else {
            new_size < old_size
        };
    }
    let new = subset_cells(l_new, new_mask);
    let old = subset_cells(l_old, old_mask);
    new < old
}

fn subset_cells(l: &LatinSquare, mask: u32) -> Vec<u8> {
    l.as_partial()
        .cells()
        .iter()
        .enumerate()
        .map(|(idx, &s)| if mask & (1 << idx) != 0 { s } else { 0 })
        .collect()
}

/// Exhaustive critical-set census over every Latin square of order n <= 4.
pub fn exhaustive_census(n: usize) -> Result<CriticalCensus> {
    if !(1..=EXHAUSTIVE_MAX_ORDER).contains(&n) {
        return Err(Error::UnsupportedOrder {
            order: n,
            max: EXHAUSTIVE_MAX_ORDER,
        });
    }
    let squares = all_latin_squares(n)?;
    let ncells = n * n;
    let mut masks_by_size: Vec<u32> = (0..1u32 << ncells).collect();
    masks_by_size.sort_by_key(|m| m.count_ones());

    let per_square: Vec<SquareCensus> = squares
        .par_iter()
        .map(|l| census_one_square(l, &masks_by_size))
        .collect();

    let mut counts = vec![0u64; ncells + 1];
    let mut largest: Option<(usize, u32)> = None; // (square index, mask)
    let mut smallest: Option<(usize, u32)> = None;
    for (i, sc) in per_square.iter().enumerate() {
        for (s, c) in sc.counts.iter().enumerate() {
            counts[s] += c;
        }
        if let Some(mask) = sc.largest {
            let replace = match largest {
                None => true,
                Some((bi, bm)) => better_witness(
                    &squares[i],
                    mask,
                    mask.count_ones() as usize,
                    &squares[bi],
                    bm,
                    true,
                ),
            };
            if replace {
                largest = Some((i, mask));
            }
        }
        if let Some(mask) = sc.smallest {
            let replace = match smallest {
                None => true,
                Some((bi, bm)) => better_witness(
                    &squares[i],
                    mask,
                    mask.count_ones() as usize,
                    &squares[bi],
                    bm,
                    false,
                ),
            };
            if replace {
                smallest = Some((i, mask));
            }
        }
    }

    let (li, lm) = largest.expect("every square has a critical subset");
    let (si, sm) = smallest.expect("every square has a critical subset");
    let to_witness = |i: usize, m: u32| {
        (
            PartialLatinSquare::from_cells(n, subset_cells(&squares[i], m)),
            squares[i].clone(),
        )
    };
    Ok(CriticalCensus {
        order: n,
        counts_by_size: counts,
        largest: to_witness(li, lm),
        smallest: to_witness(si, sm),
        squares_examined: squares.len() as u64,
        subsets_examined: (squares.len() as u64) << ncells,
    })
}

/// Exact largest-critical-set size over all Latin squares of order n <= 4.
pub fn exhaustive_lcs(n: usize) -> Result<SearchResult> {
    let census = exhaustive_census(n)?;
    let (witness, host) = census.largest;
    Ok(SearchResult {
        order: n,
        best_size: witness.size(),
        witness,
        host,
        mode: SearchMode::Exact,
        squares_examined: census.squares_examined,
        subsets_examined: census.subsets_examined,
        seed: None,
    })
}

/// Exact smallest-critical-set size over all Latin squares of order n <= 4.
pub fn exhaustive_scs(n: usize) -> Result<SearchResult> {
    let census = exhaustive_census(n)?;
    let (witness, host) = census.smallest;
    Ok(SearchResult {
        order: n,
        best_size: witness.size(),
        witness,
        host,
        mode: SearchMode::Exact,
        squares_examined: census.squares_examined,
        subsets_examined: census.subsets_examined,
        seed: None,
    })
}

/// Best critical set found by `restarts` seeded greedy minimalizations of
/// `l`. Restart r uses stream r of a ChaCha generator seeded with `seed`,
/// so the outcome is a pure function of (l, restarts, seed) regardless of
/// how the restarts are scheduled.
pub fn greedy_large(l: &LatinSquare, restarts: u64, seed: u64) -> SearchResult {
    assert!(restarts >= 1, "at least one restart required");
    let candidates: Vec<PartialLatinSquare> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let policy = RemovalPolicy::SeededRandom(restart_seed(seed, r));
            criticality::minimalize(l.as_partial(), policy)
                .expect("a complete square is uniquely completable")
        })
        .collect();
    // Larger wins; among equal sizes the lexicographically least
    // serialization is kept. The fold runs in restart order.
    let witness = candidates
        .into_iter()
        .reduce(|best, cand| {
            if cand.size() > best.size()
                || (cand.size() == best.size() && cand.cells() < best.cells())
            {
                cand
            } else {
                best
            }
        })
        .expect("restarts >= 1");
    SearchResult {
        order: l.order(),
        best_size: witness.size(),
        witness,
        host: l.clone(),
        mode: SearchMode::Greedy,
        squares_examined: 1,
        subsets_examined: restarts * (l.size() as u64),
        seed: Some(seed),
    }
}

fn restart_seed(seed: u64, restart: u64) -> u64 {
    // splitmix-style mix keeps per-restart streams decorrelated.
    let mut z = seed ^ restart.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Verification report for the embedded corpus.
#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass())
    }
}

#[derive(Debug, Clone)]
pub struct EntryReport {
    pub name: String,
    pub kind: EntryKind,
    pub size: usize,
    pub findings: Vec<String>,
    pub profile: Option<EmptinessProfile>,
}

impl EntryReport {
    pub fn pass(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Checks every corpus entry against its documented claims: sizes, full
/// criticality for the critical sets, the structural lemma checks, and the
/// recorded emptiness profiles. Failures name the entry and the predicate.
pub fn verify_corpus() -> CorpusReport {
    let entries = corpus::entries();
    let reports = entries
        .par_iter()
        .map(|entry| {
            let mut findings = Vec::new();
            let mut profile = None;
            if entry.data.size() != entry.claimed_size {
                findings.push(format!(
                    "{}: size {} differs from claimed {}",
                    entry.name,
                    entry.data.size(),
                    entry.claimed_size
                ));
            }
            match entry.kind {
                EntryKind::LatinSquare => {
                    if !entry.data.is_complete() {
                        findings.push(format!("{}: square is not complete", entry.name));
                    }
                }
                EntryKind::TradePair => {
                    let mate = entry.mate.as_ref().expect("trade pair has a mate");
                    if !trades::verify_trade(&entry.data, mate) {
                        findings.push(format!("{}: pair fails trade verification", entry.name));
                    }
                }
                EntryKind::CriticalSet => {
                    let report = analyze(&entry.data);
                    if !report.is_uc {
                        findings.push(format!("{}: not uniquely completable", entry.name));
                    } else if !report.is_critical {
                        findings.push(format!(
                            "{}: not minimal, {} removable entries (first: {})",
                            entry.name,
                            report.removable.len(),
                            report.removable[0]
                        ));
                    } else {
                        let completion = report.completion.as_ref().expect("critical implies UC");
                        if let Some(stored) = corpus::completion(entry.name) {
                            if &stored != completion {
                                findings.push(format!(
                                    "{}: stored completion differs from the solver's",
                                    entry.name
                                ));
                            }
                        }
                        match check_lemma_3_1(&entry.data) {
                            Ok(res) if !res.pass() => findings.push(format!(
                                "{}: first-lemma violations: {}",
                                entry.name,
                                res.violations.join("; ")
                            )),
                            Ok(_) => {}
                            Err(e) => findings.push(format!("{}: {e}", entry.name)),
                        }
                        match check_lemma_3_2(&entry.data, completion) {
                            Ok(res) if !res.pass() => findings.push(format!(
                                "{}: second-lemma violations: {}",
                                entry.name,
                                res.violations.join("; ")
                            )),
                            Ok(_) => {}
                            Err(e) => findings.push(format!("{}: {e}", entry.name)),
                        }
                        let guard = line_count_guard(&entry.data);
                        if !guard.pass() {
                            findings.push(format!(
                                "{}: line-count guard violations: {}",
                                entry.name,
                                guard.violations.join("; ")
                            ));
                        }
                        let stats = union_stats(&entry.data);
                        if stats.residual() != 0 {
                            findings.push(format!(
                                "{}: union-count identity residual {}",
                                entry.name,
                                stats.residual()
                            ));
                        }
                    }
                    let p = emptiness_profile(&entry.data);
                    profile = Some(p);
                    if let Some(expected) = entry.expected_profile {
                        if p != expected {
                            findings.push(format!(
                                "{}: emptiness profile {:?} differs from documented {:?}",
                                entry.name, p, expected
                            ));
                        }
                    }
                }
            }
            EntryReport {
                name: entry.name.to_string(),
                kind: entry.kind,
                size: entry.data.size(),
                findings,
                profile,
            }
        })
        .collect();
    CorpusReport { entries: reports }
}
