//! Scan a directory of group files and read the JSON-lines report back.
//!
//! cargo run --release --example catalog_scan -- [catalog dir] [report]

use std::path::PathBuf;

use gassmann::catalog::{read_report, scan_catalog, ScanJob};
use gassmann::equivalence::Relation;
use gassmann::fixtures;

fn main() -> gassmann::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = match args.next() {
        Some(d) => PathBuf::from(d),
        None => {
            // a one-group catalog built from the bundled order 1440 group
            let d = std::env::temp_dir().join("gassmann-catalog-example");
            std::fs::create_dir_all(&d)?;
            std::fs::write(d.join("g1440.grp"), fixtures::get("g1440")?.text)?;
            d
        }
    };
    let report = args.next().map(PathBuf::from).unwrap_or_else(|| dir.join("report.jsonl"));

    let mut job = ScanJob::new(&dir, Relation::LocalIntegral, &report);
    job.index_filter = Some(120);
    job.faithful_only = true;
    let outcome = scan_catalog(&job)?;
    println!("{} new records, skipped {:?}", outcome.records.len(), outcome.skipped);

    for r in read_report(&report)? {
        println!("{} {:?} {:?}", r.group_label, r.pair_key(), r.verdicts);
    }
    Ok(())
}
