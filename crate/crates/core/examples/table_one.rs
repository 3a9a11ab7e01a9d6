//! The efficiency table, with fixture braids filled in.

use taffy::report::{load_extra_braids, table, to_csv, AnalysisOptions};

fn main() -> taffy::error::Result<()> {
    let extra = load_extra_braids(
        r#"[{"name": "McCarthy-1916a", "strands": 4, "braid": "1 -2 3 -2 1 -2"}]"#,
    )?;
    print!("{}", to_csv(&table(AnalysisOptions::default(), &extra)));
    Ok(())
}
