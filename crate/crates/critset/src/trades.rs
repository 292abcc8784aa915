//! Latin interchanges (trades): verification, mate search, witness
//! extraction, exhaustive enumeration for small orders, and intercalates.
//!
//! A trade is a nonempty partial Latin square I admitting a disjoint mate:
//! another square of the same order and shape, differing from I in every
//! filled cell, with identical per-row and per-column symbol sets. Swapping
//! a trade of a Latin square for its mate produces a different Latin
//! square, which is what ties trades to unique completability.

use crate::error::{Error, Result};
use crate::pls::{LatinSquare, PartialLatinSquare, Triple};
use crate::solver;

/// A trade together with one disjoint mate. Construction validates the
/// trade conditions, so every held pair is genuine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trade {
    interchange: PartialLatinSquare,
    mate: PartialLatinSquare,
}

impl Trade {
    pub fn new(interchange: PartialLatinSquare, mate: PartialLatinSquare) -> Result<Trade> {
        if !verify_trade(&interchange, &mate) {
            return Err(Error::NotATrade(
                "the two squares are not same-shape, disjoint and mutually balanced".into(),
            ));
        }
        Ok(Trade { interchange, mate })
    }

    pub fn interchange(&self) -> &PartialLatinSquare {
        &self.interchange
    }

    pub fn mate(&self) -> &PartialLatinSquare {
        &self.mate
    }

    pub fn size(&self) -> usize {
        self.interchange.size()
    }

    /// Applies the mate to the host: (L \ I) with I' written in. The result
    /// is a Latin square different from `l` whenever I is a trade of `l`.
    pub fn apply_to(&self, l: &LatinSquare) -> Result<LatinSquare> {
        if self.interchange.order() != l.order() {
            return Err(Error::OrderMismatch {
                left: self.interchange.order(),
                right: l.order(),
            });
        }
        let mut cells = l.as_partial().cells().to_vec();
        for t in self.mate.triples() {
            cells[(t.row as usize - 1) * l.order() + (t.col as usize - 1)] = t.symbol;
        }
        LatinSquare::try_from_partial(PartialLatinSquare::from_cells(l.order(), cells))
    }
}

/// True iff `i` and `mate` are a nonempty same-order, same-shape, cellwise
/// disjoint, mutually balanced pair.
pub fn verify_trade(i: &PartialLatinSquare, mate: &PartialLatinSquare) -> bool {
    if i.order() != mate.order() || i.is_empty() {
        return false;
    }
    for (&a, &b) in i.cells().iter().zip(mate.cells()) {
        let same_shape = (a == 0) == (b == 0);
        if !same_shape || (a != 0 && a == b) {
            return false;
        }
    }
    let (li, lm) = (i.line_sets(), mate.line_sets());
    (1..=i.order()).all(|k| li.row(k) == lm.row(k) && li.col(k) == lm.col(k))
}

/// Searches for a disjoint mate of `i` inside `l`: a completion of L \ I
/// that avoids L's symbol on every cell of I's shape. Returns the
/// lexicographically least mate, or `None` when `i` is not a trade of `l`.
pub fn find_disjoint_mate(l: &LatinSquare, i: &PartialLatinSquare) -> Result<Option<Trade>> {
    if !i.is_subset_of(l.as_partial())? {
        return Err(Error::NotSubset);
    }
    if i.is_empty() {
        return Ok(None);
    }
    let mut reduced = l.as_partial().clone();
    let mut forbidden = Vec::with_capacity(i.size());
    for t in i.triples() {
        reduced = reduced.remove(t.row as usize, t.col as usize);
        forbidden.push((t.row, t.col, t.symbol));
    }
    let found = solver::enumerate_completions_forbidding(&reduced, &forbidden, 1);
    match found.into_iter().next() {
        None => Ok(None),
        Some(other) => {
            let n = l.order();
            let mut mate_cells = vec![0u8; n * n];
            for t in i.triples() {
                let idx = (t.row as usize - 1) * n + (t.col as usize - 1);
                mate_cells[idx] = other.get(t.row as usize, t.col as usize);
            }
            let mate = PartialLatinSquare::from_cells(n, mate_cells);
            Ok(Some(Trade::new(i.clone(), mate)?))
        }
    }
}

/// True iff `i` (a subset of `l`) is a Latin interchange contained in `l`,
/// i.e. some disjoint mate turns `l` into a different Latin square.
pub fn is_trade_in(l: &LatinSquare, i: &PartialLatinSquare) -> Result<bool> {
    Ok(find_disjoint_mate(l, i)?.is_some())
}

/// The witness interchange for one entry of a uniquely completable set:
/// given C uniquely completable to `l`, `t` in C, and C \ {t} no longer
/// uniquely completable, returns a trade (I, I') with I inside `l`,
/// t in I, and I meeting C only at t. I is the cellwise difference between
/// `l` and the first alternative completion of C \ {t}.
pub fn witness_trade(l: &LatinSquare, c: &PartialLatinSquare, t: Triple) -> Result<Trade> {
    if !c.is_subset_of(l.as_partial())? {
        return Err(Error::Precondition(
            "witness_trade: the set is not contained in the square".into(),
        ));
    }
    if c.get(t.row as usize, t.col as usize) != Some(t.symbol) {
        return Err(Error::Precondition(format!(
            "witness_trade: entry {t} is not in the set"
        )));
    }
    if !solver::is_uniquely_completable(c) {
        return Err(Error::Precondition(
            "witness_trade: the set is not uniquely completable".into(),
        ));
    }
    let reduced = c.remove(t.row as usize, t.col as usize);
    let completions = solver::enumerate_completions(&reduced, 2);
    if completions.len() < 2 {
        return Err(Error::Precondition(format!(
            "witness_trade: removing {t} leaves a uniquely completable set"
        )));
    }
    let other = completions
        .into_iter()
        .find(|s| s != l)
        .expect("two distinct completions include one differing from the host");

    let n = l.order();
    let mut i_cells = vec![0u8; n * n];
    let mut mate_cells = vec![0u8; n * n];
    for idx in 0..n * n {
        let (a, b) = (l.as_partial().cells()[idx], other.as_partial().cells()[idx]);
        if a != b {
            i_cells[idx] = a;
            mate_cells[idx] = b;
        }
    }
    let interchange = PartialLatinSquare::from_cells(n, i_cells);
    let mate = PartialLatinSquare::from_cells(n, mate_cells);
    debug_assert_eq!(
        interchange.get(t.row as usize, t.col as usize),
        Some(t.symbol)
    );
    Trade::new(interchange, mate)
}

const ALL_TRADES_MAX_ORDER: usize = 4;

/// Every subset of `l` that is a Latin interchange, as a deterministic list
/// (ascending row-major cell mask). Exponential in n^2, hence guarded to
/// orders at most 4; use witness-based checks beyond that.
pub fn all_trades(l: &LatinSquare) -> Result<Vec<PartialLatinSquare>> {
    let n = l.order();
    let masks = all_trade_masks(l)?;
    Ok(masks
        .into_iter()
        .map(|mask| subset_of(l, mask, n))
        .collect())
}

pub(crate) fn all_trade_masks(l: &LatinSquare) -> Result<Vec<u32>> {
    let n = l.order();
    if n > ALL_TRADES_MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: n,
            max: ALL_TRADES_MAX_ORDER,
        });
    }
    let ncells = n * n;
    let cells = l.as_partial().cells();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << ncells) {
        if !lines_all_ge2(mask, cells, n) {
            continue;
        }
        let mut reduced = [0u8; 16];
        let mut forbidden = [(0u8, 0u8, 0u8); 16];
        let mut nf = 0;
        for idx in 0..ncells {
            if mask & (1 << idx) != 0 {
                forbidden[nf] = ((idx / n + 1) as u8, (idx % n + 1) as u8, cells[idx]);
                nf += 1;
            } else {
                reduced[idx] = cells[idx];
            }
        }
        let p = PartialLatinSquare::from_cells(n, reduced[..ncells].to_vec());
        if solver::count_completions_forbidding(&p, &forbidden[..nf], 1) >= 1 {
            out.push(mask);
        }
    }
    Ok(out)
}

/// Necessary condition for a trade: every used row, column and symbol must
/// occur at least twice (a line with a single cell cannot be rearranged
/// into a disjoint mate with equal line sets).
fn lines_all_ge2(mask: u32, cells: &[u8], n: usize) -> bool {
    let row_bits = (1u32 << n) - 1;
    for r in 0..n {
        let m = (mask >> (r * n)) & row_bits;
        if m != 0 && m.count_ones() < 2 {
            return false;
        }
    }
    for c in 0..n {
        let mut count = 0;
        for r in 0..n {
            count += (mask >> (r * n + c)) & 1;
        }
        if count == 1 {
            return false;
        }
    }
    let mut sym_count = [0u8; 16];
    let mut m = mask;
    while m != 0 {
        let idx = m.trailing_zeros() as usize;
        m &= m - 1;
        sym_count[cells[idx] as usize - 1] += 1;
    }
    sym_count[..n].iter().all(|&c| c != 1)
}

fn subset_of(l: &LatinSquare, mask: u32, n: usize) -> PartialLatinSquare {
    let mut cells = vec![0u8; n * n];
    for (idx, slot) in cells.iter_mut().enumerate() {
        if mask & (1 << idx) != 0 {
            *slot = l.as_partial().cells()[idx];
        }
    }
    PartialLatinSquare::from_cells(n, cells)
}

/// A 2x2 Latin subsquare: `symbols.0` sits at (rows.0, cols.0) and
/// (rows.1, cols.1), `symbols.1` at the other two corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Intercalate {
    pub order: u8,
    pub rows: (u8, u8),
    pub cols: (u8, u8),
    pub symbols: (u8, u8),
}

impl Intercalate {
    /// The four cells as a trade, with the symbol-swapped mate.
    pub fn to_trade(&self) -> Trade {
        let n = self.order as usize;
        let mut i_cells = vec![0u8; n * n];
        let mut m_cells = vec![0u8; n * n];
        let (r1, r2) = (self.rows.0 as usize - 1, self.rows.1 as usize - 1);
        let (c1, c2) = (self.cols.0 as usize - 1, self.cols.1 as usize - 1);
        let (s1, s2) = self.symbols;
        for (idx, a, b) in [
            (r1 * n + c1, s1, s2),
            (r1 * n + c2, s2, s1),
            (r2 * n + c1, s2, s1),
            (r2 * n + c2, s1, s2),
        ] {
            i_cells[idx] = a;
            m_cells[idx] = b;
        }
        Trade::new(
            PartialLatinSquare::from_cells(n, i_cells),
            PartialLatinSquare::from_cells(n, m_cells),
        )
        .expect("an intercalate and its swap always form a trade")
    }
}

/// All intercalates of `l`, brute force over row and column pairs, ordered
/// by (rows, cols).
pub fn find_intercalates(l: &LatinSquare) -> Vec<Intercalate> {
    let n = l.order();
    let mut out = Vec::new();
    for r1 in 1..=n {
        for r2 in r1 + 1..=n {
            for c1 in 1..=n {
                for c2 in c1 + 1..=n {
                    let a = l.get(r1, c1);
                    let b = l.get(r1, c2);
                    if a != b && l.get(r2, c1) == b && l.get(r2, c2) == a {
                        out.push(Intercalate {
                            order: n as u8,
                            rows: (r1 as u8, r2 as u8),
                            cols: (c1 as u8, c2 as u8),
                            symbols: (a, b),
                        });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pls::Triple;

    fn pls(text: &str) -> PartialLatinSquare {
        PartialLatinSquare::parse(text).unwrap()
    }

    fn xor_square() -> LatinSquare {
        let cells = (0..16)
            .map(|i| (((i / 4) ^ (i % 4)) + 1) as u8)
            .collect::<Vec<_>>();
        LatinSquare::try_from_partial(PartialLatinSquare::from_cells(4, cells)).unwrap()
    }

    #[test]
    fn example_interchange_pair_verifies() {
        let i = pls("3\n0 2 3\n1 0 2\n2 3 1\n");
        let mate = pls("3\n0 3 2\n2 0 1\n1 2 3\n");
        assert!(verify_trade(&i, &mate));
        assert!(verify_trade(&mate, &i));
    }

    #[test]
    fn equal_nonempty_squares_are_not_disjoint() {
        let i = pls("3\n0 2 3\n1 0 2\n2 3 1\n");
        assert!(!verify_trade(&i, &i));
    }

    #[test]
    fn unbalanced_row_fails() {
        // Same shape, disjoint cells, but row symbol sets differ.
        let i = pls("3\n1 2 0\n2 1 0\n0 0 0\n");
        let m = pls("3\n2 3 0\n1 2 0\n0 0 0\n");
        assert!(!verify_trade(&i, &m));
    }

    #[test]
    fn empty_pair_is_not_a_trade() {
        let e = PartialLatinSquare::new(3).unwrap();
        assert!(!verify_trade(&e, &e));
    }

    #[test]
    fn single_triple_is_never_a_trade() {
        let l = LatinSquare::cyclic(3).unwrap();
        let single = PartialLatinSquare::new(3)
            .unwrap()
            .insert(Triple::new(1, 1, 1))
            .unwrap();
        assert!(!is_trade_in(&l, &single).unwrap());
    }

    #[test]
    fn intercalate_cells_form_a_trade() {
        let l = LatinSquare::cyclic(4).unwrap();
        // Rows {1,3}, cols {1,3}, symbols {1,3} in the cyclic square.
        let i = pls("4\n1 0 3 0\n0 0 0 0\n3 0 1 0\n0 0 0 0\n");
        assert!(is_trade_in(&l, &i).unwrap());
        let trade = find_disjoint_mate(&l, &i).unwrap().unwrap();
        let swapped = trade.apply_to(&l).unwrap();
        assert_ne!(swapped, l);
    }

    #[test]
    fn whole_square_is_a_trade_for_orders_two_to_four() {
        for n in 2..=4 {
            let l = LatinSquare::cyclic(n).unwrap();
            assert!(
                is_trade_in(&l, l.as_partial()).unwrap(),
                "whole order-{n} square"
            );
        }
    }

    #[test]
    fn is_trade_in_requires_subset() {
        let l = LatinSquare::cyclic(3).unwrap();
        let not_subset = PartialLatinSquare::new(3)
            .unwrap()
            .insert(Triple::new(1, 1, 2))
            .unwrap();
        assert_eq!(is_trade_in(&l, &not_subset), Err(Error::NotSubset));
    }

    #[test]
    fn all_trades_order_one_and_two() {
        let one = LatinSquare::cyclic(1).unwrap();
        assert!(all_trades(&one).unwrap().is_empty());

        let two = LatinSquare::cyclic(2).unwrap();
        let trades = all_trades(&two).unwrap();
        assert_eq!(trades.len(), 1);
        assert_eq!(trades[0], two.as_partial().clone());
    }

    #[test]
    fn all_trades_order_four_includes_intercalates() {
        let l = LatinSquare::cyclic(4).unwrap();
        let trades = all_trades(&l).unwrap();
        for ic in find_intercalates(&l) {
            assert!(
                trades.contains(ic.to_trade().interchange()),
                "missing intercalate {ic:?}"
            );
        }
    }

    #[test]
    fn all_trades_guards_large_orders() {
        let l = LatinSquare::cyclic(5).unwrap();
        assert_eq!(
            all_trades(&l),
            Err(Error::UnsupportedOrder { order: 5, max: 4 })
        );
    }

    #[test]
    fn mate_swap_symmetry() {
        let l = LatinSquare::cyclic(3).unwrap();
        for i in all_trades(&l).unwrap() {
            let trade = find_disjoint_mate(&l, &i).unwrap().unwrap();
            let swapped = trade.apply_to(&l).unwrap();
            assert_ne!(swapped, l);
            // The mate is in turn a trade of the swapped square.
            assert!(is_trade_in(&swapped, trade.mate()).unwrap());
        }
    }

    #[test]
    fn intercalate_counts() {
        assert_eq!(find_intercalates(&LatinSquare::cyclic(1).unwrap()).len(), 0);
        assert_eq!(find_intercalates(&LatinSquare::cyclic(2).unwrap()).len(), 1);
        assert_eq!(find_intercalates(&LatinSquare::cyclic(4).unwrap()).len(), 4);
        assert_eq!(find_intercalates(&xor_square()).len(), 12);
    }

    #[test]
    fn intercalates_are_trades() {
        let l = xor_square();
        for ic in find_intercalates(&l) {
            let trade = ic.to_trade();
            assert_eq!(trade.size(), 4);
            assert!(is_trade_in(&l, trade.interchange()).unwrap());
        }
    }

    #[test]
    fn witness_trade_rejects_entry_outside_set() {
        let l = LatinSquare::cyclic(3).unwrap();
        let c = pls("3\n1 2 0\n2 0 0\n0 0 0\n");
        let err = witness_trade(&l, &c, Triple::new(3, 3, 2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn witness_trade_on_order_three_critical_set() {
        let c = pls("3\n1 2 0\n2 0 0\n0 0 0\n");
        let l = crate::solver::complete_unique(&c).unwrap();
        for t in c.triples() {
            let trade = witness_trade(&l, &c, t).unwrap();
            // I lies inside L, contains t, and meets C only at t.
            assert!(trade.interchange().is_subset_of(l.as_partial()).unwrap());
            assert_eq!(
                trade.interchange().get(t.row as usize, t.col as usize),
                Some(t.symbol)
            );
            let mut overlap = 0;
            for u in trade.interchange().triples() {
                if c.get(u.row as usize, u.col as usize) == Some(u.symbol) {
                    overlap += 1;
                }
            }
            assert_eq!(overlap, 1);
            // Swapping in the mate yields a different Latin square that
            // still contains C minus the entry.
            let swapped = trade.apply_to(&l).unwrap();
            assert_ne!(swapped, l);
            let reduced = c.remove(t.row as usize, t.col as usize);
            assert!(reduced.is_subset_of(swapped.as_partial()).unwrap());
        }
    }
}
