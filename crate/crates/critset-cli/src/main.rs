//! Command-line surface for the critset toolkit.
//!
//! Exit codes: 0 = success, 1 = a checked predicate is false (for example
//! "--expect-critical" on a non-critical input), 2 = usage or input error.
//! Output is plain text with no timestamps or color, so runs are
//! byte-reproducible; `--verbose` adds timing on stderr only.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use critset::criticality::{
    analyze, check_lemma_3_1, check_lemma_3_2, line_count_guard, union_stats,
};
use critset::search::{exhaustive_lcs, greedy_large, verify_corpus, SearchResult};
use critset::trades::witness_trade;
use critset::{bounds, corpus, enumerate_completions, LatinSquare, PartialLatinSquare, Triple};

#[derive(Parser)]
#[command(
    name = "critset",
    version,
    about = "Exact tools for critical sets in Latin squares",
    after_help = "Grids use the .pls text format: the order n on the first line, then n rows \
                  of n whitespace-separated integers with 0 marking an empty cell. Lines \
                  starting with '#' are comments. CRITSET_THREADS caps the worker count."
)]
struct Cli {
    /// Print timing information on stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a square: unique completability, criticality, removable entries.
    Verify {
        file: PathBuf,
        /// Exit 1 unless the square is a critical set.
        #[arg(long)]
        expect_critical: bool,
        /// Exit 1 unless the square is uniquely completable.
        #[arg(long)]
        expect_uc: bool,
    },
    /// Enumerate completions in lexicographic order.
    Complete {
        file: PathBuf,
        /// Maximum number of completions to list.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Union-count statistics and structural checks.
    Stats { file: PathBuf },
    /// The bounds comparison table.
    Bounds {
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        /// Machine-readable CSV instead of the aligned table.
        #[arg(long)]
        csv: bool,
    },
    /// Search for large critical sets.
    Search {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Greedy restarts.
        #[arg(long, default_value_t = 200)]
        restarts: u64,
        /// Greedy seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Host square for greedy mode (default: the cyclic square).
        #[arg(long)]
        square: Option<PathBuf>,
    },
    /// List the 2x2 Latin subsquares of a Latin square.
    Intercalates { file: PathBuf },
    /// Extract the witness interchange for one entry of a set.
    Trades {
        /// The host Latin square.
        file: PathBuf,
        /// The contained set C.
        #[arg(long)]
        set: PathBuf,
        /// Entry of C as "row col symbol".
        #[arg(long)]
        entry: String,
    },
    /// Embedded reference examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Names of all entries.
    List,
    /// Print one entry's grid.
    Show { name: String },
    /// Check every entry against its documented claims.
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let started = Instant::now();
    let code = match run(&cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    if cli.verbose {
        eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}

fn configure_threads() {
    if let Ok(value) = std::env::var("CRITSET_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run(command: &Command) -> Result<u8, String> {
    match command {
        Command::Verify {
            file,
            expect_critical,
            expect_uc,
        } => cmd_verify(file, *expect_critical, *expect_uc),
        Command::Complete { file, limit } => cmd_complete(file, *limit),
        Command::Stats { file } => cmd_stats(file),
        Command::Bounds { max_n, csv } => cmd_bounds(*max_n, *csv),
        Command::Search {
            order,
            mode,
            restarts,
            seed,
            square,
        } => cmd_search(*order, *mode, *restarts, *seed, square.as_deref()),
        Command::Intercalates { file } => cmd_intercalates(file),
        Command::Trades { file, set, entry } => cmd_trades(file, set, entry),
        Command::Corpus { action } => cmd_corpus(action),
    }
}

fn load_square(path: &Path) -> Result<PartialLatinSquare, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    PartialLatinSquare::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_latin_square(path: &Path) -> Result<LatinSquare, String> {
    let partial = load_square(path)?;
    LatinSquare::try_from_partial(partial).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_verify(file: &Path, expect_critical: bool, expect_uc: bool) -> Result<u8, String> {
    let square = load_square(file)?;
    let report = analyze(&square);
    println!("order: {}", square.order());
    println!("size: {}", square.size());
    println!(
        "uniquely completable: {}",
        if report.is_uc { "yes" } else { "no" }
    );
    if report.is_critical {
        println!("critical: yes");
    } else if report.is_uc {
        println!(
            "critical: no ({} removable entries)",
            report.removable.len()
        );
        let listed: Vec<String> = report.removable.iter().map(|t| t.to_string()).collect();
        println!("removable: {}", listed.join(" "));
    } else {
        println!("critical: no");
    }
    if expect_critical && !report.is_critical {
        if report.is_uc {
            println!("expectation failed: UC but not minimal");
        } else {
            println!("expectation failed: not uniquely completable");
        }
        return Ok(1);
    }
    if expect_uc && !report.is_uc {
        println!("expectation failed: not uniquely completable");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_complete(file: &Path, limit: usize) -> Result<u8, String> {
    let square = load_square(file)?;
    let completions = enumerate_completions(&square, limit.max(1));
    println!("count {}", completions.len());
    for completion in &completions {
        println!();
        print!("{}", completion.to_text());
    }
    Ok(0)
}

fn cmd_stats(file: &Path) -> Result<u8, String> {
    let square = load_square(file)?;
    let stats = union_stats(&square);
    println!("order: {}", square.order());
    println!("size: {}", square.size());
    println!("x matrix (|R_i union C_j|):");
    for row in &stats.x {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
        println!("  {}", cells.join(" "));
    }
    let f: Vec<String> = stats.f.iter().map(|v| v.to_string()).collect();
    println!("f (n-2-|E_k|): {}", f.join(" "));
    println!(
        "identity: lhs {} rhs {} residual {}",
        stats.lhs_sum,
        stats.rhs_sum,
        stats.residual()
    );
    let report = analyze(&square);
    if report.is_critical {
        let completion = report.completion.as_ref().expect("critical implies UC");
        let l31 = check_lemma_3_1(&square).map_err(|e| e.to_string())?;
        print_check("lemma 3.1 (rows with n-1 entries)", &l31);
        let l32 = check_lemma_3_2(&square, completion).map_err(|e| e.to_string())?;
        print_check("lemma 3.2 (row-by-row)", &l32);
        let guard = line_count_guard(&square);
        print_check("line count guard", &guard);
    } else {
        println!("lemma checks skipped (not critical)");
    }
    Ok(0)
}

fn print_check(name: &str, result: &critset::criticality::LemmaCheckResult) {
    let verdict = if !result.applicable {
        "not applicable".to_string()
    } else if result.pass() {
        "pass".to_string()
    } else {
        format!("FAIL ({})", result.violations.join("; "))
    };
    println!("{name}: {verdict}");
    for note in &result.notes {
        println!("  note: {note}");
    }
}

fn cmd_bounds(max_n: u64, csv: bool) -> Result<u8, String> {
    if max_n < 1 {
        return Err("--max-n must be at least 1".into());
    }
    let rows = bounds::bounds_table(max_n);
    if csv {
        print!("{}", bounds::format_csv(&rows));
    } else {
        print!("{}", bounds::format_table(&rows));
    }
    Ok(0)
}

fn cmd_search(
    order: usize,
    mode: Mode,
    restarts: u64,
    seed: u64,
    square: Option<&Path>,
) -> Result<u8, String> {
    let result: SearchResult = match mode {
        Mode::Exact => exhaustive_lcs(order).map_err(|e| e.to_string())?,
        Mode::Greedy => {
            let host = match square {
                Some(path) => {
                    let host = load_latin_square(path)?;
                    if host.order() != order {
                        return Err(format!(
                            "--square has order {}, expected {order}",
                            host.order()
                        ));
                    }
                    host
                }
                None => LatinSquare::cyclic(order).map_err(|e| e.to_string())?,
            };
            if restarts < 1 {
                return Err("--restarts must be at least 1".into());
            }
            greedy_large(&host, restarts, seed)
        }
    };
    print!("{}", result.to_report());
    Ok(0)
}

fn cmd_intercalates(file: &Path) -> Result<u8, String> {
    let square = load_latin_square(file)?;
    let intercalates = critset::trades::find_intercalates(&square);
    println!("count {}", intercalates.len());
    for ic in &intercalates {
        println!(
            "rows {{{},{}}} cols {{{},{}}} symbols {{{},{}}}",
            ic.rows.0, ic.rows.1, ic.cols.0, ic.cols.1, ic.symbols.0, ic.symbols.1
        );
    }
    Ok(0)
}

fn cmd_trades(file: &Path, set: &Path, entry: &str) -> Result<u8, String> {
    let host = load_latin_square(file)?;
    let contained = load_square(set)?;
    let parts: Vec<usize> = entry
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad entry token {t:?}")))
        .collect::<Result<_, _>>()?;
    let [row, col, symbol] = parts[..] else {
        return Err("--entry expects three numbers: \"row col symbol\"".into());
    };
    if !(1..=host.order()).contains(&row)
        || !(1..=host.order()).contains(&col)
        || !(1..=host.order()).contains(&symbol)
    {
        return Err(format!("entry ({row},{col};{symbol}) out of range"));
    }
    let triple = Triple::new(row, col, symbol);
    let trade = witness_trade(&host, &contained, triple).map_err(|e| e.to_string())?;
    println!("trade size {}", trade.size());
    println!("intersection with set: {triple}");
    println!("interchange | mate");
    let left = trade.interchange().display_rows();
    let right = trade.mate().display_rows();
    for (l, r) in left.iter().zip(&right) {
        println!("{l} | {r}");
    }
    Ok(0)
}

fn cmd_corpus(action: &CorpusAction) -> Result<u8, String> {
    match action {
        CorpusAction::List => {
            for name in corpus::names() {
                println!("{name}");
            }
            Ok(0)
        }
        CorpusAction::Show { name } => {
            let entry = corpus::get(name).map_err(|e| e.to_string())?;
            print!("{}", entry.data.to_text());
            if let Some(mate) = &entry.mate {
                println!("mate:");
                print!("{}", mate.to_text());
            }
            Ok(0)
        }
        CorpusAction::VerifyAll => {
            let report = verify_corpus();
            for entry in &report.entries {
                let kind = match entry.kind {
                    corpus::EntryKind::LatinSquare => "latin square",
                    corpus::EntryKind::CriticalSet => "critical set",
                    corpus::EntryKind::TradePair => "trade pair",
                };
                if entry.pass() {
                    let profile = entry
                        .profile
                        .map(|p| {
                            format!(
                                ", profile row={} col={} symbol={}",
                                yes_no(p.empty_row),
                                yes_no(p.empty_col),
                                yes_no(p.missing_symbol)
                            )
                        })
                        .unwrap_or_default();
                    println!("{}: ok ({kind}, size {}{profile})", entry.name, entry.size);
                } else {
                    println!("{}: FAIL", entry.name);
                    for finding in &entry.findings {
                        println!("  {finding}");
                    }
                }
            }
            if report.all_pass() {
                println!("all {} entries verified", report.entries.len());
                Ok(0)
            } else {
                Ok(1)
            }
        }
    }
}

fn yes_no(q: bool) -> &'static str {
    if q {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
