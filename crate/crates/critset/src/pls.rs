//! Data model for (partial) Latin squares.
//!
//! Rows, columns and symbols are 1-indexed in the public API, matching the
//! usual convention for these objects. Grids are stored row-major with 0
//! marking an empty cell, which is also how the `.pls` text format spells
//! them. All values are immutable after construction; the operations here
//! are pure functions, so everything can be shared freely across threads.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order. Candidate sets elsewhere are fixed-width
/// bitmasks, so 16 keeps everything inside a `u32` with headroom; the
/// exhaustive machinery only ever needs n <= 10.
pub const MAX_ORDER: usize = 16;

/// One filled cell: `symbol` at position (`row`, `col`), all 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub row: u8,
    pub col: u8,
    pub symbol: u8,
}

impl Triple {
    /// Builds a triple. Coordinates must be at least 1; the upper range
    /// check against a square's order happens on insertion.
    pub fn new(row: usize, col: usize, symbol: usize) -> Triple {
        assert!(
            (1..=MAX_ORDER).contains(&row)
                && (1..=MAX_ORDER).contains(&col)
                && (1..=MAX_ORDER).contains(&symbol),
            "triple coordinates must lie in 1..=16"
        );
        Triple {
            row: row as u8,
            col: col as u8,
            symbol: symbol as u8,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.row, self.col, self.symbol)
    }
}

/// A set of symbols out of 1..=n, backed by a bitmask (bit k-1 = symbol k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymbolSet {
    mask: u32,
}

impl SymbolSet {
    pub fn from_mask(mask: u32) -> SymbolSet {
        SymbolSet { mask }
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, symbol: usize) -> bool {
        symbol >= 1 && self.mask & (1 << (symbol - 1)) != 0
    }

    pub fn union(self, other: SymbolSet) -> SymbolSet {
        SymbolSet {
            mask: self.mask | other.mask,
        }
    }

    /// Symbols in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mask = self.mask;
        (1..=32u8).filter(move |s| mask & (1 << (s - 1)) != 0)
    }
}

/// The six permutations of the (row, column, symbol) roles. Variant names
/// spell which original coordinate lands in each slot: `ColRowSym` sends a
/// triple (r, c; s) to (c, r; s), i.e. the transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RolePerm {
    RowColSym,
    ColRowSym,
    SymColRow,
    RowSymCol,
    ColSymRow,
    SymRowCol,
}

impl RolePerm {
    pub const ALL: [RolePerm; 6] = [
        RolePerm::RowColSym,
        RolePerm::ColRowSym,
        RolePerm::SymColRow,
        RolePerm::RowSymCol,
        RolePerm::ColSymRow,
        RolePerm::SymRowCol,
    ];

    pub fn apply(self, t: Triple) -> Triple {
        let (r, c, s) = (t.row, t.col, t.symbol);
        let (row, col, symbol) = match self {
            RolePerm::RowColSym => (r, c, s),
            RolePerm::ColRowSym => (c, r, s),
            RolePerm::SymColRow => (s, c, r),
            RolePerm::RowSymCol => (r, s, c),
            RolePerm::ColSymRow => (c, s, r),
            RolePerm::SymRowCol => (s, r, c),
        };
        Triple { row, col, symbol }
    }

    pub fn inverse(self) -> RolePerm {
        match self {
            RolePerm::RowColSym => RolePerm::RowColSym,
            RolePerm::ColRowSym => RolePerm::ColRowSym,
            RolePerm::SymColRow => RolePerm::SymColRow,
            RolePerm::RowSymCol => RolePerm::RowSymCol,
            // The two 3-cycles are each other's inverses.
            RolePerm::ColSymRow => RolePerm::SymRowCol,
            RolePerm::SymRowCol => RolePerm::ColSymRow,
        }
    }
}

/// A partial Latin square: an n x n grid over symbols 1..=n in which every
/// symbol occurs at most once per row and at most once per column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialLatinSquare {
    order: u8,
    cells: Vec<u8>, // row-major, 0 = empty
}

impl PartialLatinSquare {
    /// The empty square of the given order.
    pub fn new(order: usize) -> Result<PartialLatinSquare> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        Ok(PartialLatinSquare {
            order: order as u8,
            cells: vec![0; order * order],
        })
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Number of filled cells.
    pub fn size(&self) -> usize {
        self.cells.iter().filter(|&&v| v != 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|&v| v == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&v| v != 0)
    }

    fn idx(&self, row: usize, col: usize) -> usize {
        debug_assert!((1..=self.order()).contains(&row) && (1..=self.order()).contains(&col));
        (row - 1) * self.order() + (col - 1)
    }

    /// Symbol at (row, col), or `None` for an empty cell. 1-indexed.
    pub fn get(&self, row: usize, col: usize) -> Option<u8> {
        match self.cells[self.idx(row, col)] {
            0 => None,
            s => Some(s),
        }
    }

    /// Raw row-major cells, 0 = empty.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub(crate) fn from_cells(order: usize, cells: Vec<u8>) -> PartialLatinSquare {
        debug_assert_eq!(cells.len(), order * order);
        PartialLatinSquare {
            order: order as u8,
            cells,
        }
    }

    /// Builds a square from row-major cells (0 = empty), validating the
    /// Latin property.
    pub fn try_from_cells(order: usize, cells: Vec<u8>) -> Result<PartialLatinSquare> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        if cells.len() != order * order {
            return Err(Error::InvalidOrder(order));
        }
        let mut square = PartialLatinSquare::new(order)?;
        for (i, &s) in cells.iter().enumerate() {
            if s != 0 {
                square = square.insert(Triple::new(i / order + 1, i % order + 1, s as usize))?;
            }
        }
        Ok(square)
    }

    /// Adds one triple, re-establishing all invariants. The input square is
    /// untouched; the extended square is returned.
    pub fn insert(&self, t: Triple) -> Result<PartialLatinSquare> {
        let n = self.order();
        let (r, c, s) = (t.row as usize, t.col as usize, t.symbol as usize);
        if r > n || c > n || s > n {
            return Err(Error::OutOfRange {
                row: r,
                col: c,
                symbol: s,
                order: n,
            });
        }
        if self.get(r, c).is_some() {
            return Err(Error::CellOccupied { row: r, col: c });
        }
        for j in 1..=n {
            if self.get(r, j) == Some(s as u8) {
                return Err(Error::RowConflict { row: r, symbol: s });
            }
        }
        for i in 1..=n {
            if self.get(i, c) == Some(s as u8) {
                return Err(Error::ColumnConflict { col: c, symbol: s });
            }
        }
        let mut cells = self.cells.clone();
        cells[(r - 1) * n + (c - 1)] = s as u8;
        Ok(PartialLatinSquare {
            order: self.order,
            cells,
        })
    }

    /// Clears the cell at (row, col); clearing an empty cell is a no-op.
    pub fn remove(&self, row: usize, col: usize) -> PartialLatinSquare {
        let i = self.idx(row, col);
        let mut cells = self.cells.clone();
        cells[i] = 0;
        PartialLatinSquare {
            order: self.order,
            cells,
        }
    }

    /// Filled cells in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        let n = self.order();
        self.cells.iter().enumerate().filter_map(move |(i, &s)| {
            if s == 0 {
                None
            } else {
                Some(Triple {
                    row: (i / n + 1) as u8,
                    col: (i % n + 1) as u8,
                    symbol: s,
                })
            }
        })
    }

    /// Row, column and symbol line sets: R_i is the set of symbols in row i,
    /// C_j the set in column j, and E_k the positions where symbol k occurs.
    pub fn line_sets(&self) -> LineSets {
        let n = self.order();
        let mut rows = vec![0u32; n];
        let mut cols = vec![0u32; n];
        let mut positions = vec![Vec::new(); n];
        for t in self.triples() {
            let bit = 1u32 << (t.symbol - 1);
            rows[t.row as usize - 1] |= bit;
            cols[t.col as usize - 1] |= bit;
            positions[t.symbol as usize - 1].push((t.row, t.col));
        }
        LineSets {
            rows,
            cols,
            positions,
        }
    }

    /// Permutes the three coordinate roles of every triple. The result is a
    /// valid partial Latin square of the same order and size: the three
    /// distinctness constraints map onto each other under any role swap.
    pub fn conjugate(&self, perm: RolePerm) -> PartialLatinSquare {
        let n = self.order();
        let mut cells = vec![0u8; n * n];
        for t in self.triples() {
            let u = perm.apply(t);
            let i = (u.row as usize - 1) * n + (u.col as usize - 1);
            debug_assert_eq!(cells[i], 0);
            cells[i] = u.symbol;
        }
        PartialLatinSquare {
            order: self.order,
            cells,
        }
    }

    /// True iff every triple of `self` is a triple of `other`.
    pub fn is_subset_of(&self, other: &PartialLatinSquare) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .all(|(&a, &b)| a == 0 || a == b))
    }

    /// Parses the `.pls` text format: first line the order n, then n lines
    /// of n whitespace-separated integers in 0..=n with 0 for an empty cell.
    /// Lines whose first non-blank character is '#' are comments; blank
    /// lines are skipped.
    pub fn parse(text: &str) -> Result<PartialLatinSquare> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: "empty input, expected an order line".into(),
            })?;
        let order: usize = header.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("expected the order, got {header:?}"),
        })?;
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("order {order} out of range 1..={MAX_ORDER}"),
            });
        }

        let mut square = PartialLatinSquare::new(order)?;
        for row in 1..=order {
            let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected {order} grid rows, got {}", row - 1),
            })?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != order {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "row {row} has {} entries, expected {order}",
                        tokens.len()
                    ),
                });
            }
            for (col, token) in tokens.iter().enumerate() {
                let col = col + 1;
                let value: usize = token.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("cell ({row},{col}): invalid token {token:?}"),
                })?;
                if value == 0 {
                    continue;
                }
                if value > order {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("cell ({row},{col}): symbol {value} exceeds order {order}"),
                    });
                }
                square = square
                    .insert(Triple::new(row, col, value))
                    .map_err(|e| Error::Parse {
                        line: line_no,
                        message: format!("cell ({row},{col}): {e}"),
                    })?;
            }
        }
        if let Some((line_no, line)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected trailing content {line:?}"),
            });
        }
        Ok(square)
    }

    /// Canonical `.pls` serialization; `parse` round-trips it.
    pub fn to_text(&self) -> String {
        let n = self.order();
        let mut out = String::new();
        out.push_str(&n.to_string());
        out.push('\n');
        for r in 0..n {
            let row: Vec<String> = self.cells[r * n..(r + 1) * n]
                .iter()
                .map(|v| v.to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Grid rows with cells padded to a common width, for aligned display.
    pub fn display_rows(&self) -> Vec<String> {
        let n = self.order();
        let width = n.to_string().len();
        (0..n)
            .map(|r| {
                self.cells[r * n..(r + 1) * n]
                    .iter()
                    .map(|v| format!("{v:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

/// A complete Latin square: every row and column a permutation of 1..=n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    inner: PartialLatinSquare,
}

impl LatinSquare {
    /// Validates completeness; the Latin property already holds for any
    /// `PartialLatinSquare`.
    pub fn try_from_partial(p: PartialLatinSquare) -> Result<LatinSquare> {
        let missing = p.order() * p.order() - p.size();
        if missing > 0 {
            return Err(Error::NotComplete { missing });
        }
        Ok(LatinSquare { inner: p })
    }

    /// The cyclic square of the given order: cell (i, j) holds
    /// ((i + j - 2) mod n) + 1.
    pub fn cyclic(order: usize) -> Result<LatinSquare> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        let cells = (0..order * order)
            .map(|i| {
                let (r, c) = (i / order, i % order);
                ((r + c) % order + 1) as u8
            })
            .collect();
        Ok(LatinSquare {
            inner: PartialLatinSquare::from_cells(order, cells),
        })
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn size(&self) -> usize {
        self.inner.size()
    }

    /// Symbol at (row, col), 1-indexed; a complete square has no empty cells.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.inner.get(row, col).expect("complete square")
    }

    pub fn as_partial(&self) -> &PartialLatinSquare {
        &self.inner
    }

    pub fn into_partial(self) -> PartialLatinSquare {
        self.inner
    }

    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.inner.triples()
    }

    pub fn conjugate(&self, perm: RolePerm) -> LatinSquare {
        LatinSquare {
            inner: self.inner.conjugate(perm),
        }
    }

    pub fn to_text(&self) -> String {
        self.inner.to_text()
    }
}

/// The per-line symbol/position sets of a partial Latin square.
///
/// Positions within each E_k have pairwise distinct rows and columns, a
/// direct consequence of the Latin property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSets {
    rows: Vec<u32>,
    cols: Vec<u32>,
    positions: Vec<Vec<(u8, u8)>>,
}

impl LineSets {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// R_i: symbols present in row i (1-indexed).
    pub fn row(&self, i: usize) -> SymbolSet {
        SymbolSet::from_mask(self.rows[i - 1])
    }

    /// C_j: symbols present in column j (1-indexed).
    pub fn col(&self, j: usize) -> SymbolSet {
        SymbolSet::from_mask(self.cols[j - 1])
    }

    /// E_k: positions of symbol k as (row, col) pairs, row-major order.
    pub fn symbol_positions(&self, k: usize) -> &[(u8, u8)] {
        &self.positions[k - 1]
    }

    pub fn symbol_count(&self, k: usize) -> usize {
        self.positions[k - 1].len()
    }

    /// Sum of |R_i|; equals the size of the square, as do the column and
    /// symbol sums.
    pub fn row_total(&self) -> usize {
        self.rows.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn col_total(&self) -> usize {
        self.cols.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn symbol_total(&self) -> usize {
        self.positions.iter().map(|p| p.len()).sum()
    }
}
