//! Write a small corpus of your own to JSON, load it back and verify it.

use bipdiv::families::{load_corpus, save_corpus};
use bipdiv::verify::verify_corpus;
use bipdiv::GroupRecord;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = vec![
        GroupRecord::from_degrees("A4", &[1, 3], "hand table")
            .with_order(12)
            .with_generators(4, &["(1 2 3)", "(2 3 4)"]),
        GroupRecord::from_degrees("S3 x S3", &[1, 2, 4], "direct product")
            .with_order(36)
            .with_generators(6, &["(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)"]),
        GroupRecord::from_degrees("wrong", &[1, 2, 3], "deliberately incorrect degrees for D4")
            .with_generators(4, &["(1 2 3 4)", "(1 3)"]),
    ];
    let path = std::env::temp_dir().join("bipdiv-custom-corpus.json");
    save_corpus(&records, &path)?;
    let loaded = load_corpus(&path)?;
    let report = verify_corpus(&loaded);
    println!("{} pass, {} fail", report.summary.pass, report.summary.fail);
    for f in report.failures() {
        println!("  {} [{}]: {}", f.check_id, f.subject, f.detail);
    }
    Ok(())
}
