//! Helpers shared by the integration suites: an independent brute-force
//! completion counter, exhaustive and random partial-square generation,
//! and random Latin squares.
#![allow(dead_code)] // each test binary uses a different subset

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use critset::{LatinSquare, PartialLatinSquare, Triple};

/// Independent completion-count oracle: depth-first fill over the cells in
/// row-major order with no propagation at all, checking row and column
/// constraints directly. Deliberately naive.
pub fn naive_count(p: &PartialLatinSquare, cap: u64) -> u64 {
    let n = p.order();
    let mut grid: Vec<u8> = p.cells().to_vec();
    let mut count = 0;
    fill(&mut grid, n, 0, cap, &mut count);
    count
}

fn fill(grid: &mut [u8], n: usize, idx: usize, cap: u64, count: &mut u64) {
    if *count >= cap {
        return;
    }
    let Some(next) = (idx..n * n).find(|&i| grid[i] == 0) else {
        *count += 1;
        return;
    };
    let (r, c) = (next / n, next % n);
    'symbols: for s in 1..=n as u8 {
        for j in 0..n {
            if grid[r * n + j] == s || grid[j * n + c] == s {
                continue 'symbols;
            }
        }
        grid[next] = s;
        fill(grid, n, next + 1, cap, count);
        grid[next] = 0;
        if *count >= cap {
            return;
        }
    }
}

/// Every valid partial Latin square of the given order, by recursion over
/// cells with an "empty or symbol" choice at each. Feasible for n <= 3.
pub fn all_partial_squares(n: usize) -> Vec<PartialLatinSquare> {
    let mut out = Vec::new();
    let mut grid = vec![0u8; n * n];
    extend_all(&mut grid, n, 0, &mut out);
    out
}

fn extend_all(grid: &mut Vec<u8>, n: usize, idx: usize, out: &mut Vec<PartialLatinSquare>) {
    if idx == n * n {
        out.push(PartialLatinSquare::try_from_cells(n, grid.clone()).expect("valid construction"));
        return;
    }
    let (r, c) = (idx / n, idx % n);
    extend_all(grid, n, idx + 1, out);
    'symbols: for s in 1..=n as u8 {
        for j in 0..c {
            if grid[r * n + j] == s {
                continue 'symbols;
            }
        }
        for i in 0..r {
            if grid[i * n + c] == s {
                continue 'symbols;
            }
        }
        grid[idx] = s;
        extend_all(grid, n, idx + 1, out);
        grid[idx] = 0;
    }
}

/// Random valid partial square: `attempts` random insertions, conflicts
/// skipped. Deterministic for a given rng state.
pub fn random_pls(order: usize, attempts: usize, rng: &mut ChaCha8Rng) -> PartialLatinSquare {
    let mut square = PartialLatinSquare::new(order).expect("valid order");
    for _ in 0..attempts {
        let t = Triple::new(
            rng.gen_range(1..=order),
            rng.gen_range(1..=order),
            rng.gen_range(1..=order),
        );
        if let Ok(next) = square.insert(t) {
            square = next;
        }
    }
    square
}

/// Random Latin square: backtracking fill with a randomly rotated symbol
/// order per cell.
pub fn random_latin_square(order: usize, rng: &mut ChaCha8Rng) -> LatinSquare {
    let mut grid = vec![0u8; order * order];
    let rotations: Vec<usize> = (0..order * order).map(|_| rng.gen_range(0..order)).collect();
    assert!(fill_random(&mut grid, order, 0, &rotations));
    LatinSquare::try_from_partial(
        PartialLatinSquare::try_from_cells(order, grid).expect("valid fill"),
    )
    .expect("complete fill")
}

fn fill_random(grid: &mut [u8], n: usize, idx: usize, rotations: &[usize]) -> bool {
    if idx == n * n {
        return true;
    }
    let (r, c) = (idx / n, idx % n);
    'symbols: for k in 0..n {
        let s = ((k + rotations[idx]) % n + 1) as u8;
        for j in 0..c {
            if grid[r * n + j] == s {
                continue 'symbols;
            }
        }
        for i in 0..r {
            if grid[i * n + c] == s {
                continue 'symbols;
            }
        }
        grid[idx] = s;
        if fill_random(grid, n, idx + 1, rotations) {
            return true;
        }
        grid[idx] = 0;
    }
    false
}

/// A random uniquely completable subset of `l`: random cells are added
/// until the set completes uniquely.
pub fn random_uc_subset(l: &LatinSquare, rng: &mut ChaCha8Rng) -> PartialLatinSquare {
    let n = l.order();
    let mut order_of_cells: Vec<usize> = (0..n * n).collect();
    for i in (1..order_of_cells.len()).rev() {
        order_of_cells.swap(i, rng.gen_range(0..=i));
    }
    let mut square = PartialLatinSquare::new(n).expect("valid order");
    for idx in order_of_cells {
        if critset::is_uniquely_completable(&square) {
            break;
        }
        let (r, c) = (idx / n + 1, idx % n + 1);
        square = square
            .insert(Triple::new(r, c, l.get(r, c) as usize))
            .expect("subset of a Latin square stays valid");
    }
    square
}

/// The order-4 elementary-abelian square (xor table).
pub fn xor_square_4() -> LatinSquare {
    let cells: Vec<u8> = (0..16).map(|i| (((i / 4) ^ (i % 4)) + 1) as u8).collect();
    LatinSquare::try_from_partial(PartialLatinSquare::try_from_cells(4, cells).expect("valid"))
        .expect("complete")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
