//! Completion counting and enumeration for partial Latin squares.
//!
//! The solver is a backtracking search over candidate bitmasks with a
//! forced-move closure (naked singles plus hidden singles in rows and
//! columns) run at every node. Counting queries branch on the cell with the
//! fewest candidates, ties broken by row-major position; enumeration
//! branches on the first empty cell in row-major order instead, which makes
//! the output order lexicographic by row-major symbol sequence. Both are
//! deterministic.
//!
//! Each query owns its private mutable state, so distinct queries may run
//! in parallel freely.

use crate::error::{Error, Result};
use crate::pls::{LatinSquare, PartialLatinSquare, MAX_ORDER};

const MAX_CELLS: usize = MAX_ORDER * MAX_ORDER;

/// Result of a capped completion count.
///
/// `capped` means the search stopped once `count` reached the cap, so the
/// true number of completions may be larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionCount {
    pub count: u64,
    pub capped: bool,
}

/// Number of distinct Latin squares containing `p`, truncated at `cap`.
/// An uncompletable square yields count 0.
pub fn count_completions(p: &PartialLatinSquare, cap: u64) -> CompletionCount {
    assert!(cap >= 1, "cap must be at least 1");
    let mut board = Board::from_partial(p);
    let count = board.count(cap);
    CompletionCount {
        count,
        capped: count >= cap,
    }
}

/// True iff `p` extends to exactly one Latin square.
pub fn is_uniquely_completable(p: &PartialLatinSquare) -> bool {
    count_completions(p, 2).count == 1
}

/// The unique completion of `p`, or `NotUnique` carrying the number of
/// completions found (0, or 2 meaning "at least two").
pub fn complete_unique(p: &PartialLatinSquare) -> Result<LatinSquare> {
    let mut found = enumerate_completions(p, 2);
    if found.len() == 1 {
        Ok(found.pop().expect("one element"))
    } else {
        Err(Error::NotUnique {
            found: found.len() as u64,
        })
    }
}

/// Up to `limit` completions of `p`, in lexicographic order by row-major
/// symbol sequence.
pub fn enumerate_completions(p: &PartialLatinSquare, limit: usize) -> Vec<LatinSquare> {
    if limit == 0 {
        return Vec::new();
    }
    let mut board = Board::from_partial(p);
    let mut out = Vec::new();
    board.enumerate(limit, &mut out);
    out
}

/// The forced-move closure of `p`: repeatedly fills cells with a single
/// candidate and (row, symbol) / (column, symbol) pairs with a single legal
/// cell, to a fixpoint. Sound: every completion of `p` completes the result.
/// An empty cell left with no candidates is reported as `Infeasible`.
pub fn propagate(p: &PartialLatinSquare) -> Result<PartialLatinSquare> {
    let mut board = Board::from_partial(p);
    let mut trail = Vec::new();
    match board.propagate(&mut trail) {
        Ok(()) => Ok(board.to_partial()),
        Err(Contradiction) => Err(Error::Infeasible),
    }
}

/// Completion count with per-cell exclusions: `forbidden` lists (row, col,
/// symbol) triples that no completion may contain. Used by the trade search.
pub(crate) fn count_completions_forbidding(
    p: &PartialLatinSquare,
    forbidden: &[(u8, u8, u8)],
    cap: u64,
) -> u64 {
    let mut board = Board::from_partial(p);
    for &(r, c, s) in forbidden {
        board.forbid(r as usize, c as usize, s as usize);
    }
    board.count(cap)
}

/// Enumeration variant of [`count_completions_forbidding`], lexicographic
/// order as in [`enumerate_completions`].
pub(crate) fn enumerate_completions_forbidding(
    p: &PartialLatinSquare,
    forbidden: &[(u8, u8, u8)],
    limit: usize,
) -> Vec<LatinSquare> {
    let mut board = Board::from_partial(p);
    for &(r, c, s) in forbidden {
        board.forbid(r as usize, c as usize, s as usize);
    }
    let mut out = Vec::new();
    board.enumerate(limit, &mut out);
    out
}

/// Unique-completability check on raw row-major cells (0 = empty), assumed
/// to already satisfy the Latin property. Fast path for the exhaustive
/// subset sweeps, which probe millions of subsets of one square.
pub(crate) fn cells_uniquely_completable(order: usize, cells: &[u8]) -> bool {
    let mut board = Board::from_raw(order, cells);
    board.count(2) == 1
}

struct Contradiction;

/// Private solver state. 1 KiB of fixed arrays; all updates are undone via
/// the trail, so the board is never cloned during search.
struct Board {
    n: usize,
    full: u32,
    empty: usize,
    cells: [u8; MAX_CELLS],
    row_used: [u32; MAX_ORDER],
    col_used: [u32; MAX_ORDER],
    forbid: [u32; MAX_CELLS],
}

impl Board {
    fn from_partial(p: &PartialLatinSquare) -> Board {
        Board::from_raw(p.order(), p.cells())
    }

    fn from_raw(n: usize, src: &[u8]) -> Board {
        debug_assert_eq!(src.len(), n * n);
        let mut cells = [0u8; MAX_CELLS];
        cells[..n * n].copy_from_slice(src);
        let mut row_used = [0u32; MAX_ORDER];
        let mut col_used = [0u32; MAX_ORDER];
        let mut empty = 0;
        for r in 0..n {
            for c in 0..n {
                let s = cells[r * n + c];
                if s == 0 {
                    empty += 1;
                } else {
                    let bit = 1u32 << (s - 1);
                    debug_assert_eq!(row_used[r] & bit, 0, "row conflict in input");
                    debug_assert_eq!(col_used[c] & bit, 0, "column conflict in input");
                    row_used[r] |= bit;
                    col_used[c] |= bit;
                }
            }
        }
        Board {
            n,
            full: if n == 32 { u32::MAX } else { (1u32 << n) - 1 },
            empty,
            cells,
            row_used,
            col_used,
            forbid: [0u32; MAX_CELLS],
        }
    }

    fn forbid(&mut self, row: usize, col: usize, symbol: usize) {
        self.forbid[(row - 1) * self.n + (col - 1)] |= 1u32 << (symbol - 1);
    }

    #[inline]
    fn cand(&self, idx: usize) -> u32 {
        let r = idx / self.n;
        let c = idx % self.n;
        self.full & !self.row_used[r] & !self.col_used[c] & !self.forbid[idx]
    }

    #[inline]
    fn place(&mut self, idx: usize, symbol: u8) {
        debug_assert_eq!(self.cells[idx], 0);
        let bit = 1u32 << (symbol - 1);
        self.cells[idx] = symbol;
        self.row_used[idx / self.n] |= bit;
        self.col_used[idx % self.n] |= bit;
        self.empty -= 1;
    }

    #[inline]
    fn unplace(&mut self, idx: usize) {
        let symbol = self.cells[idx];
        debug_assert_ne!(symbol, 0);
        let bit = 1u32 << (symbol - 1);
        self.cells[idx] = 0;
        self.row_used[idx / self.n] &= !bit;
        self.col_used[idx % self.n] &= !bit;
        self.empty += 1;
    }

    /// Forced-move closure; placements are recorded on `trail` so the
    /// caller can rewind.
    fn propagate(&mut self, trail: &mut Vec<u16>) -> std::result::Result<(), Contradiction> {
        let n = self.n;
        loop {
            let mut changed = false;

            // Naked singles, plus the contradiction check.
            for idx in 0..n * n {
                if self.cells[idx] != 0 {
                    continue;
                }
                let cand = self.cand(idx);
                if cand == 0 {
                    return Err(Contradiction);
                }
                if cand & (cand - 1) == 0 {
                    self.place(idx, cand.trailing_zeros() as u8 + 1);
                    trail.push(idx as u16);
                    changed = true;
                }
            }

            // Hidden singles: a missing (row, symbol) with one legal column.
            for r in 0..n {
                let mut missing = self.full & !self.row_used[r];
                while missing != 0 {
                    let bit = missing & missing.wrapping_neg();
                    missing ^= bit;
                    let mut spots = 0;
                    let mut last = 0;
                    for c in 0..n {
                        let idx = r * n + c;
                        if self.cells[idx] == 0 && self.cand(idx) & bit != 0 {
                            spots += 1;
                            last = idx;
                        }
                    }
                    match spots {
                        0 => return Err(Contradiction),
                        1 => {
                            self.place(last, bit.trailing_zeros() as u8 + 1);
                            trail.push(last as u16);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }

            // Hidden singles per column.
            for c in 0..n {
                let mut missing = self.full & !self.col_used[c];
                while missing != 0 {
                    let bit = missing & missing.wrapping_neg();
                    missing ^= bit;
                    let mut spots = 0;
                    let mut last = 0;
                    for r in 0..n {
                        let idx = r * n + c;
                        if self.cells[idx] == 0 && self.cand(idx) & bit != 0 {
                            spots += 1;
                            last = idx;
                        }
                    }
                    match spots {
                        0 => return Err(Contradiction),
                        1 => {
                            self.place(last, bit.trailing_zeros() as u8 + 1);
                            trail.push(last as u16);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }

            if !changed {
                return Ok(());
            }
        }
    }

    fn rewind(&mut self, trail: &mut Vec<u16>, mark: usize) {
        while trail.len() > mark {
            let idx = trail.pop().expect("trail entry") as usize;
            self.unplace(idx);
        }
    }

    /// Cell with the fewest candidates, row-major tie-break.
    fn select_mrv(&self) -> (usize, u32) {
        let mut best_idx = usize::MAX;
        let mut best_cand = 0;
        let mut best_len = u32::MAX;
        for idx in 0..self.n * self.n {
            if self.cells[idx] != 0 {
                continue;
            }
            let cand = self.cand(idx);
            let len = cand.count_ones();
            if len < best_len {
                best_len = len;
                best_idx = idx;
                best_cand = cand;
                if len <= 2 {
                    break;
                }
            }
        }
        (best_idx, best_cand)
    }

    fn first_empty(&self) -> (usize, u32) {
        for idx in 0..self.n * self.n {
            if self.cells[idx] == 0 {
                return (idx, self.cand(idx));
            }
        }
        unreachable!("no empty cell")
    }

    fn count(&mut self, cap: u64) -> u64 {
        let mut count = 0;
        let mut trail = Vec::with_capacity(self.n * self.n);
        self.count_rec(cap, &mut count, &mut trail);
        count
    }

    fn count_rec(&mut self, cap: u64, count: &mut u64, trail: &mut Vec<u16>) {
        let mark = trail.len();
        if self.propagate(trail).is_err() {
            self.rewind(trail, mark);
            return;
        }
        if self.empty == 0 {
            *count += 1;
            self.rewind(trail, mark);
            return;
        }
        let (idx, mut cand) = self.select_mrv();
        while cand != 0 && *count < cap {
            let bit = cand & cand.wrapping_neg();
            cand ^= bit;
            self.place(idx, bit.trailing_zeros() as u8 + 1);
            self.count_rec(cap, count, trail);
            self.unplace(idx);
        }
        self.rewind(trail, mark);
    }

    fn enumerate(&mut self, limit: usize, out: &mut Vec<LatinSquare>) {
        let mut trail = Vec::with_capacity(self.n * self.n);
        self.enumerate_rec(limit, out, &mut trail);
    }

    fn enumerate_rec(&mut self, limit: usize, out: &mut Vec<LatinSquare>, trail: &mut Vec<u16>) {
        let mark = trail.len();
        if self.propagate(trail).is_err() {
            self.rewind(trail, mark);
            return;
        }
        if self.empty == 0 {
            let square = LatinSquare::try_from_partial(self.to_partial()).expect("full board");
            out.push(square);
            self.rewind(trail, mark);
            return;
        }
        // Branching on the first empty cell with symbols ascending keeps the
        // leaves in lexicographic order.
        let (idx, mut cand) = self.first_empty();
        while cand != 0 && out.len() < limit {
            let bit = cand & cand.wrapping_neg();
            cand ^= bit;
            self.place(idx, bit.trailing_zeros() as u8 + 1);
            self.enumerate_rec(limit, out, trail);
            self.unplace(idx);
        }
        self.rewind(trail, mark);
    }

    fn to_partial(&self) -> PartialLatinSquare {
        PartialLatinSquare::from_cells(self.n, self.cells[..self.n * self.n].to_vec())
    }
}
