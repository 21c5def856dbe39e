//! Irregular pairs up to a bound (default 160), one CSV row each.
//!
//!     cargo run --example reproduce_table -- 500

use qscan::cli::{render_rows, Format, OutputRow};
use qscan::scan::scan_range;

fn main() -> qscan::Result<()> {
    let p_max = std::env::args().nth(1).map_or(160, |s| s.parse().expect("p_max must be an integer"));
    let rows: Vec<OutputRow> = scan_range(p_max)?.iter().map(OutputRow::from).collect();
    print!("{}", render_rows(&rows, Format::Csv));
    Ok(())
}
