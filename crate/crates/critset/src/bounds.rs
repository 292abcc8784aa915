//! Closed-form bounds and recorded values for largest-critical-set sizes.
//!
//! Everything here is pure integer data: the two proved upper bounds
//! (n^2 - n and n^2 - 3n + 3), the two conjectured bounds, the power-of-two
//! lower bound 4^k - 3^k, and the table of known lcs(n) values for
//! n = 1..=10.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// One row of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: u64,
    /// Known lcs(n) with exactness flag; `None` beyond the recorded range.
    pub known: Option<(u64, bool)>,
    pub theorem: u64,
    pub conj1: u64,
    pub conj2: u64,
}

/// The classical upper bound n^2 - n.
pub fn curran_van_rees(n: u64) -> u64 {
    n * n - n
}

/// The sharper upper bound n^2 - 3n + 3 (holds for every order n >= 1).
pub fn theorem_bound(n: u64) -> u64 {
    n * n + 3 - 3 * n
}

/// First conjectured bound: floor(n^2 - n^(3/2)).
///
/// n^(3/2) = sqrt(n^3), so the floor is computed exactly with an integer
/// square root: if n^3 is a perfect square m^2 the value is n^2 - m,
/// otherwise n^2 - m - 1. Exact for every n where n^3 fits in u128.
pub fn conjecture_one(n: u64) -> u64 {
    let n3 = (n as u128).pow(3);
    let m = isqrt(n3);
    let n2 = (n * n) as u128;
    let value = if m * m == n3 { n2 - m } else { n2 - m - 1 };
    value as u64
}

/// Second conjectured bound: floor((1 - (3/4)^log2(n)) * n^2), which
/// simplifies to n^2 - ceil(n^log2(3)) away from powers of two and to
/// n^2 - 3^k exactly at n = 2^k.
pub fn conjecture_two(n: u64) -> u64 {
    if n.is_power_of_two() {
        let k = n.trailing_zeros();
        return n * n - 3u64.pow(k);
    }
    n * n - ceil_n_pow_log2_3(n)
}

/// The power-of-two lower bound: lcs(2^k) >= 4^k - 3^k.
pub fn stinson_van_rees_lower(k: u32) -> Result<u64> {
    if k > 30 {
        return Err(Error::OutOfSupportedRange(format!(
            "stinson_van_rees_lower: k = {k} exceeds 30 (4^k would overflow)"
        )));
    }
    Ok(4u64.pow(k) - 3u64.pow(k))
}

/// Recorded lcs(n) for n = 1..=10: the value and whether it is exact
/// (false = lower bound). Data, not computation.
pub fn known_lcs(n: u64) -> Result<(u64, bool)> {
    const KNOWN: [(u64, bool); 10] = [
        (0, true),
        (1, true),
        (3, true),
        (7, true),
        (11, true),
        (18, true),
        (25, false),
        (37, false),
        (44, false),
        (57, false),
    ];
    if !(1..=10).contains(&n) {
        return Err(Error::UnknownOrder(n as usize));
    }
    Ok(KNOWN[n as usize - 1])
}

/// Table rows for n = 1..=n_max; the known-lcs column is populated only for
/// n <= 10, the formula columns for every n.
pub fn bounds_table(n_max: u64) -> Vec<BoundsRow> {
    (1..=n_max)
        .map(|n| BoundsRow {
            n,
            known: known_lcs(n).ok(),
            theorem: theorem_bound(n),
            conj1: conjecture_one(n),
            conj2: conjecture_two(n),
        })
        .collect()
}

/// Aligned plain-text rendering; lower-bound entries carry a ">=" prefix.
pub fn format_table(rows: &[BoundsRow]) -> String {
    let mut out = String::from("  n |   lcs | n^2-3n+3 | floor(n^2-n^1.5) | conj2\n");
    for row in rows {
        let lcs = match row.known {
            Some((v, true)) => format!("{v}"),
            Some((v, false)) => format!(">={v}"),
            None => "?".to_string(),
        };
        out.push_str(&format!(
            "{:>3} | {:>5} | {:>8} | {:>16} | {:>5}\n",
            row.n, lcs, row.theorem, row.conj1, row.conj2
        ));
    }
    out
}

/// CSV rendering with the exactness flag split into its own column.
pub fn format_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("n,lcs,lcs_exact,theorem,conj1,conj2\n");
    for row in rows {
        let (lcs, exact) = match row.known {
            Some((v, e)) => (v.to_string(), e.to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.n, lcs, exact, row.theorem, row.conj1, row.conj2
        ));
    }
    out
}

fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    // The float estimate is off by at most a few ulps; correct it exactly.
    while x > 0 && x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// ceil(n^log2(3)) for n not a power of two.
///
/// Two floating-point routes must agree and sit safely away from an
/// integer; otherwise the answer is recomputed in 192-bit fixed point.
/// n^log2(3) is irrational away from powers of two, so a genuine tie
/// cannot occur.
fn ceil_n_pow_log2_3(n: u64) -> u64 {
    debug_assert!(n >= 2 && !n.is_power_of_two());
    let log2_3 = 3f64.log2();
    let a = (n as f64).powf(log2_3);
    let b = (log2_3 * (n as f64).log2()).exp2();
    let (ca, cb) = (a.ceil(), b.ceil());
    let near_integer = |t: f64| (t - t.round()).abs() < 1e-9 * t.max(1.0);
    if ca == cb && !near_integer(a) && !near_integer(b) {
        return ca as u64;
    }
    ceil_n_pow_log2_3_fixed(n)
}

const FRAC_BITS: u32 = 192;

/// Fixed-point fallback: evaluates n^log2(3) = 2^(log2(n) * log2(3)) with
/// 192 fractional bits and takes the ceiling.
fn ceil_n_pow_log2_3_fixed(n: u64) -> u64 {
    let exponent = mul_fixed(&log2_fixed(n), &log2_fixed(3));
    let int_part = (&exponent >> FRAC_BITS)
        .try_into()
        .map(|v: u64| v)
        .expect("exponent integer part fits u64");
    let frac_part = &exponent - (BigUint::from(int_part) << FRAC_BITS);
    let frac_factor = exp2_frac_fixed(&frac_part);
    // value = 2^int_part * frac_factor, still in Q.FRAC_BITS.
    let value = frac_factor << int_part;
    let floor: BigUint = &value >> FRAC_BITS;
    let exact = (&floor << FRAC_BITS) == value;
    let floor: u64 = floor.try_into().expect("bound fits u64");
    if exact {
        floor
    } else {
        floor + 1
    }
}

/// log2(x) in Q.FRAC_BITS, by the classic squaring algorithm.
fn log2_fixed(x: u64) -> BigUint {
    assert!(x >= 1);
    let int_part = 63 - x.leading_zeros() as u64;
    // Mantissa in [1, 2) as a Q.FRAC_BITS value.
    let mut m = (BigUint::from(x) << FRAC_BITS) >> int_part;
    let one = BigUint::from(1u8) << FRAC_BITS;
    let two = &one << 1u8;
    let mut result = BigUint::from(int_part) << FRAC_BITS;
    for i in 1..=FRAC_BITS {
        m = (&m * &m) >> FRAC_BITS;
        if m >= two {
            m >>= 1u8;
            result |= BigUint::from(1u8) << (FRAC_BITS - i);
        }
    }
    result
}

fn mul_fixed(a: &BigUint, b: &BigUint) -> BigUint {
    (a * b) >> FRAC_BITS
}

/// 2^f for f in [0, 1) as Q.FRAC_BITS, via the binary expansion of f and
/// iterated square roots of 2.
fn exp2_frac_fixed(f: &BigUint) -> BigUint {
    let one = BigUint::from(1u8) << FRAC_BITS;
    let mut result = one.clone();
    // root = 2^(2^-k), starting at k = 1.
    let mut root = sqrt_fixed(&(BigUint::from(2u8) << FRAC_BITS));
    for k in 1..=FRAC_BITS {
        if (f >> (FRAC_BITS - k)) & BigUint::from(1u8) == BigUint::from(1u8) {
            result = mul_fixed(&result, &root);
        }
        root = sqrt_fixed(&root);
    }
    result
}

/// Square root in Q.FRAC_BITS: sqrt(v * 2^FRAC_BITS) of the raw integer.
fn sqrt_fixed(v: &BigUint) -> BigUint {
    (v << FRAC_BITS).sqrt()
}
