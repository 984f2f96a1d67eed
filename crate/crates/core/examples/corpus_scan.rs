// Scan a planar_code file and write the records as CSV.
use std::io::BufReader;
use std::path::Path;

use polycurv::report::{write_records, Format};
use polycurv::scan::{scan_to_vec, Predicate, ScanOptions};

pub fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/p7.pc").to_string());
    let file = std::fs::File::open(Path::new(&path)).unwrap();
    let opts = ScanOptions { predicate: Predicate::Both, jobs: 2, batch: 64 };
    let (records, out) = scan_to_vec(vec![BufReader::new(file)], opts).unwrap();
    write_records(std::io::stdout().lock(), &records[..5.min(records.len())], Format::Csv).unwrap();
    for line in out.summary.lines() {
        println!("{line}");
    }
}
