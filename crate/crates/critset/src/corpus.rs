//! Embedded reference examples: the order-4 cyclic square, the order-3
//! interchange pair, and the four large critical sets of orders 5, 7, 9
//! and 10, together with their solver-computed completions.
//!
//! Grids live as checked-in `.pls` files under `data/` rather than code
//! literals, so a transcription slip shows up as a readable diff; a
//! checksum test pins the bytes.

use crate::criticality::EmptinessProfile;
use crate::error::{Error, Result};
use crate::pls::{LatinSquare, PartialLatinSquare};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    LatinSquare,
    CriticalSet,
    TradePair,
}

/// One catalog entry. `data` is the square itself (for a trade pair, the
/// interchange, with the mate alongside); `claimed_size` is the size the
/// entry is documented to have, which verification re-checks.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub data: PartialLatinSquare,
    pub mate: Option<PartialLatinSquare>,
    pub claimed_size: usize,
    /// Documented emptiness profile, for critical-set entries.
    pub expected_profile: Option<EmptinessProfile>,
}

pub(crate) const FILES: &[(&str, &str)] = &[
    ("ls4-cyclic", include_str!("../data/ls4-cyclic.pls")),
    ("trade3-pair-i", include_str!("../data/trade3-pair-i.pls")),
    ("trade3-pair-mate", include_str!("../data/trade3-pair-mate.pls")),
    ("cs5-11", include_str!("../data/cs5-11.pls")),
    ("cs7-25", include_str!("../data/cs7-25.pls")),
    ("cs9-44", include_str!("../data/cs9-44.pls")),
    ("cs10-57", include_str!("../data/cs10-57.pls")),
    (
        "cs5-11-completion",
        include_str!("../data/cs5-11-completion.pls"),
    ),
    (
        "cs7-25-completion",
        include_str!("../data/cs7-25-completion.pls"),
    ),
    (
        "cs9-44-completion",
        include_str!("../data/cs9-44-completion.pls"),
    ),
    (
        "cs10-57-completion",
        include_str!("../data/cs10-57-completion.pls"),
    ),
];

fn file(name: &str) -> &'static str {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .expect("catalog file present")
}

fn load(name: &str) -> PartialLatinSquare {
    PartialLatinSquare::parse(file(name)).expect("embedded grid parses")
}

const CATALOG: &[&str] = &[
    "ls4-cyclic",
    "trade3-pair",
    "cs5-11",
    "cs7-25",
    "cs9-44",
    "cs10-57",
];

/// Names of the catalog entries, in catalog order.
pub fn names() -> Vec<&'static str> {
    CATALOG.to_vec()
}

/// All catalog entries.
pub fn entries() -> Vec<CorpusEntry> {
    CATALOG.iter().map(|n| get(n).expect("catalog entry")).collect()
}

const PROFILE_ALL_EMPTY: EmptinessProfile = EmptinessProfile {
    empty_row: true,
    empty_col: true,
    missing_symbol: true,
};

/// Looks up one entry by name.
pub fn get(name: &str) -> Result<CorpusEntry> {
    let entry = match name {
        "ls4-cyclic" => CorpusEntry {
            name: "ls4-cyclic",
            kind: EntryKind::LatinSquare,
            data: load("ls4-cyclic"),
            mate: None,
            claimed_size: 16,
            expected_profile: None,
        },
        "trade3-pair" => CorpusEntry {
            name: "trade3-pair",
            kind: EntryKind::TradePair,
            data: load("trade3-pair-i"),
            mate: Some(load("trade3-pair-mate")),
            claimed_size: 7,
            expected_profile: None,
        },
        "cs5-11" => CorpusEntry {
            name: "cs5-11",
            kind: EntryKind::CriticalSet,
            data: load("cs5-11"),
            mate: None,
            claimed_size: 11,
            expected_profile: Some(PROFILE_ALL_EMPTY),
        },
        "cs7-25" => CorpusEntry {
            name: "cs7-25",
            kind: EntryKind::CriticalSet,
            data: load("cs7-25"),
            mate: None,
            claimed_size: 25,
            expected_profile: Some(PROFILE_ALL_EMPTY),
        },
        "cs9-44" => CorpusEntry {
            name: "cs9-44",
            kind: EntryKind::CriticalSet,
            data: load("cs9-44"),
            mate: None,
            claimed_size: 44,
            expected_profile: Some(PROFILE_ALL_EMPTY),
        },
        "cs10-57" => CorpusEntry {
            name: "cs10-57",
            kind: EntryKind::CriticalSet,
            data: load("cs10-57"),
            mate: None,
            claimed_size: 57,
            // All ten symbols occur; only row 10 and column 10 are empty.
            expected_profile: Some(EmptinessProfile {
                empty_row: true,
                empty_col: true,
                missing_symbol: false,
            }),
        },
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    Ok(entry)
}

/// The stored completion of a critical-set entry, when one is checked in.
pub fn completion(name: &str) -> Option<LatinSquare> {
    let text = FILES
        .iter()
        .find(|(n, _)| *n == format!("{name}-completion"))
        .map(|(_, t)| *t)?;
    let p = PartialLatinSquare::parse(text).expect("embedded completion parses");
    Some(LatinSquare::try_from_partial(p).expect("stored completion is complete"))
}
