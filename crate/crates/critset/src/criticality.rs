//! Criticality analysis: unique completability plus minimality, per-entry
//! removability, greedy minimalization, the two structural lemma checks,
//! and the union-count statistics with their exact identity.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pls::{LatinSquare, PartialLatinSquare, Triple};
use crate::solver;
use crate::trades;

/// Outcome of [`analyze`]: a set is critical iff it is uniquely completable
/// and no single entry can be removed without losing that property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub is_uc: bool,
    pub is_critical: bool,
    /// Entries whose removal keeps the set uniquely completable, row-major.
    pub removable: Vec<Triple>,
    /// The unique completion, when `is_uc`.
    pub completion: Option<LatinSquare>,
}

/// Full criticality analysis. Unique completability is decided with the
/// solver; each single-entry removal is then re-checked independently (the
/// checks run in parallel and are reported in row-major order).
pub fn analyze(c: &PartialLatinSquare) -> CriticalityReport {
    let completion = match solver::complete_unique(c) {
        Ok(l) => l,
        Err(_) => {
            return CriticalityReport {
                is_uc: false,
                is_critical: false,
                removable: Vec::new(),
                completion: None,
            }
        }
    };
    let entries: Vec<Triple> = c.triples().collect();
    let removable: Vec<Triple> = entries
        .par_iter()
        .filter(|t| {
            let reduced = c.remove(t.row as usize, t.col as usize);
            solver::is_uniquely_completable(&reduced)
        })
        .copied()
        .collect();
    CriticalityReport {
        is_uc: true,
        is_critical: removable.is_empty(),
        removable,
        completion: Some(completion),
    }
}

/// Entry order used by [`minimalize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalPolicy {
    RowMajor,
    /// Uniformly random permutation of the entries, from the given seed.
    SeededRandom(u64),
}

/// Greedy descent to a critical subset: entries are visited in the policy
/// order and removed whenever the remainder stays uniquely completable.
/// An entry rejected once can never become removable again (removability is
/// monotone under shrinking), so one pass reaches a critical set.
pub fn minimalize(c: &PartialLatinSquare, policy: RemovalPolicy) -> Result<PartialLatinSquare> {
    if !solver::is_uniquely_completable(c) {
        return Err(Error::Precondition(
            "minimalize: the set is not uniquely completable".into(),
        ));
    }
    let mut entries: Vec<Triple> = c.triples().collect();
    if let RemovalPolicy::SeededRandom(seed) = policy {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        entries.shuffle(&mut rng);
    }
    let mut current = c.clone();
    for t in entries {
        let reduced = current.remove(t.row as usize, t.col as usize);
        if solver::is_uniquely_completable(&reduced) {
            current = reduced;
        }
    }
    Ok(current)
}

/// Result of a structural check. `applicable` records whether the
/// hypothesis fired anywhere, so vacuous passes stay visible; `notes` carry
/// non-failure remarks such as skipped parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheckResult {
    pub applicable: bool,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl LemmaCheckResult {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The trade characterization of criticality, checked directly on (C, L):
/// part (1), every interchange contained in L meets C (full enumeration,
/// orders <= 4 only); part (2), every entry of C has a witness interchange
/// meeting C exactly there. For orders above 4 part (1) is skipped and
/// noted.
pub fn check_lemma_1_1(c: &PartialLatinSquare, l: &LatinSquare) -> Result<LemmaCheckResult> {
    if !c.is_subset_of(l.as_partial())? {
        return Err(Error::NotSubset);
    }
    let n = l.order();
    let mut result = LemmaCheckResult {
        applicable: true,
        violations: Vec::new(),
        notes: Vec::new(),
    };

    if n <= 4 {
        let c_mask: u32 = c
            .triples()
            .map(|t| 1u32 << ((t.row as usize - 1) * n + (t.col as usize - 1)))
            .sum();
        let mut missed = 0u32;
        let mut first: Option<u32> = None;
        for mask in trades::all_trade_masks(l)? {
            if mask & c_mask == 0 {
                missed += 1;
                first.get_or_insert(mask);
            }
        }
        if missed > 0 {
            result.violations.push(format!(
                "part (1): {missed} interchange(s) avoid the set entirely \
                 (first: cell mask {:#x})",
                first.unwrap()
            ));
        }
    } else {
        result
            .notes
            .push(format!("part (1) skipped: order {n} exceeds 4"));
    }

    for t in c.triples() {
        if let Err(e) = trades::witness_trade(l, c, t) {
            result
                .violations
                .push(format!("part (2): no witness interchange for {t}: {e}"));
        }
    }
    Ok(result)
}

/// Structural check for rows with n-1 entries in a critical set: the one
/// missing symbol of such a row occurs nowhere in the set, and the column
/// of the missing cell is empty.
pub fn check_lemma_3_1(c: &PartialLatinSquare) -> Result<LemmaCheckResult> {
    let report = analyze(c);
    if !report.is_critical {
        return Err(Error::Precondition(
            "check_lemma_3_1: the set is not critical".into(),
        ));
    }
    let l = report.completion.expect("critical implies completion");
    let n = c.order();
    let sets = c.line_sets();
    let mut result = LemmaCheckResult {
        applicable: false,
        violations: Vec::new(),
        notes: Vec::new(),
    };
    for i in 1..=n {
        if sets.row(i).len() != n - 1 {
            continue;
        }
        result.applicable = true;
        let j = (1..=n)
            .find(|&j| c.get(i, j).is_none())
            .expect("a row with n-1 entries has one empty cell");
        let k = l.get(i, j) as usize;
        if sets.symbol_count(k) != 0 {
            result.violations.push(format!(
                "row {i}: missing symbol {k} occurs {} time(s) in the set",
                sets.symbol_count(k)
            ));
        }
        if !sets.col(j).is_empty() {
            result.violations.push(format!(
                "row {i}: column {j} of the missing cell holds {} entrie(s)",
                sets.col(j).len()
            ));
        }
    }
    Ok(result)
}

/// Row-by-row check generalizing the n-1 case. For each row with both
/// filled and missing cells, writing the missing cells as (i, c_t; e_t):
/// (1) every filled column of the row contains, outside the set and off
/// row i, one of the missing elements; (2) every filled element of the row
/// is absent from at least one missing column.
pub fn check_lemma_3_2(c: &PartialLatinSquare, l: &LatinSquare) -> Result<LemmaCheckResult> {
    if !c.is_subset_of(l.as_partial())? {
        return Err(Error::NotSubset);
    }
    if !analyze(c).is_critical {
        return Err(Error::Precondition(
            "check_lemma_3_2: the set is not critical".into(),
        ));
    }
    Ok(lemma_3_2_rows(c, l))
}

/// [`check_lemma_3_2`] with the completion derived by the solver.
pub fn check_lemma_3_2_derived(c: &PartialLatinSquare) -> Result<LemmaCheckResult> {
    let l = solver::complete_unique(c)?;
    check_lemma_3_2(c, &l)
}

fn lemma_3_2_rows(c: &PartialLatinSquare, l: &LatinSquare) -> LemmaCheckResult {
    let n = c.order();
    let sets = c.line_sets();
    let mut result = LemmaCheckResult {
        applicable: false,
        violations: Vec::new(),
        notes: Vec::new(),
    };
    for i in 1..=n {
        let missing: Vec<(usize, u8)> = (1..=n)
            .filter(|&j| c.get(i, j).is_none())
            .map(|j| (j, l.get(i, j)))
            .collect();
        let filled: Vec<(usize, u8)> = (1..=n)
            .filter_map(|j| c.get(i, j).map(|s| (j, s)))
            .collect();
        if missing.is_empty() || filled.is_empty() {
            continue; // vacuous row: nothing to quantify over
        }
        result.applicable = true;

        // (1) each filled column x holds some missing element y at a row
        // r != i, outside the set.
        for &(x, _) in &filled {
            let ok = missing.iter().any(|&(_, y)| {
                (1..=n).any(|r| {
                    r != i && l.get(r, x) == y && c.get(r, x).is_none()
                })
            });
            if !ok {
                result.violations.push(format!(
                    "row {i}, part (1): filled column {x} contains no missing element outside the set"
                ));
            }
        }

        // (2) each filled element e is missing from some missing column.
        for &(_, e) in &filled {
            let ok = missing
                .iter()
                .any(|&(cj, _)| !sets.col(cj).contains(e as usize));
            if !ok {
                result.violations.push(format!(
                    "row {i}, part (2): element {e} occurs in every missing column of the set"
                ));
            }
        }
    }
    result
}

/// The union-count statistics: x[i][j] = |R_i union C_j|, the per-symbol
/// deficiencies f_k = n - 2 - |E_k|, and the two sides of the exact
/// identity sum(x_ij) = n^3 - sum((n - |E_k|)^2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionStats {
    pub x: Vec<Vec<u32>>,
    pub f: Vec<i32>,
    pub lhs_sum: i64,
    pub rhs_sum: i64,
}

impl UnionStats {
    /// lhs - rhs; zero for every valid partial Latin square.
    pub fn residual(&self) -> i64 {
        self.lhs_sum - self.rhs_sum
    }
}

pub fn union_stats(c: &PartialLatinSquare) -> UnionStats {
    let n = c.order();
    let sets = c.line_sets();
    let mut x = vec![vec![0u32; n]; n];
    let mut lhs = 0i64;
    for i in 1..=n {
        for j in 1..=n {
            let v = sets.row(i).union(sets.col(j)).len() as u32;
            x[i - 1][j - 1] = v;
            lhs += v as i64;
        }
    }
    let mut f = Vec::with_capacity(n);
    let mut rhs = (n as i64).pow(3);
    for k in 1..=n {
        let ek = sets.symbol_count(k) as i64;
        f.push((n as i64 - 2 - ek) as i32);
        rhs -= (n as i64 - ek) * (n as i64 - ek);
    }
    UnionStats {
        x,
        f,
        lhs_sum: lhs,
        rhs_sum: rhs,
    }
}

/// Asserts that no row, column or symbol is completely used: a critical set
/// cannot contain n triples sharing any one coordinate.
pub fn line_count_guard(c: &PartialLatinSquare) -> LemmaCheckResult {
    let n = c.order();
    let sets = c.line_sets();
    let mut result = LemmaCheckResult {
        applicable: true,
        violations: Vec::new(),
        notes: Vec::new(),
    };
    for i in 1..=n {
        if sets.row(i).len() == n {
            result.violations.push(format!("row {i} is completely filled"));
        }
        if sets.col(i).len() == n {
            result
                .violations
                .push(format!("column {i} is completely filled"));
        }
        if sets.symbol_count(i) == n {
            result
                .violations
                .push(format!("symbol {i} occurs {n} times"));
        }
    }
    result
}

/// Zero-tests of the line sets: does the square have an empty row, an empty
/// column, a symbol that never occurs?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptinessProfile {
    pub empty_row: bool,
    pub empty_col: bool,
    pub missing_symbol: bool,
}

pub fn emptiness_profile(c: &PartialLatinSquare) -> EmptinessProfile {
    let n = c.order();
    let sets = c.line_sets();
    EmptinessProfile {
        empty_row: (1..=n).any(|i| sets.row(i).is_empty()),
        empty_col: (1..=n).any(|j| sets.col(j).is_empty()),
        missing_symbol: (1..=n).any(|k| sets.symbol_count(k) == 0),
    }
}
