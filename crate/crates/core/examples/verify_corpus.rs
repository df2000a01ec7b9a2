//! Run the full verification suite on the bundled corpus and print a table.

use bipdiv::{builtin_corpus, verify_all, Status, VerifyOptions};

fn main() {
    let report = verify_all(&builtin_corpus(), VerifyOptions::default());
    for r in &report.results {
        let mark = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inapplicable => "n/a ",
        };
        println!("{mark} {:<32} {:<22} {}", r.check_id, r.subject, r.detail);
    }
    let s = report.summary;
    println!("\n{} pass, {} fail, {} inapplicable", s.pass, s.fail, s.inapplicable);
}
