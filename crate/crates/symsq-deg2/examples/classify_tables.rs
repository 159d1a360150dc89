//! Runs the full classification with default bounds and prints the family
//! table as markdown, then points out any rows the reference tables do not
//! list.
//!
//! Run with: cargo run --example classify_tables

use symsq_deg2::{emit, run_classify, OutputFormat, RunConfig, UNEXPECTED_LABEL};

fn main() -> Result<(), symsq_deg2::Error> {
    let cfg = RunConfig::default();
    let doc = run_classify(&cfg)?;

    let markdown = String::from_utf8(emit(&doc, OutputFormat::Markdown))
        .expect("markdown emission is UTF-8");
    print!("{markdown}");

    let unexpected: Vec<_> = doc
        .records
        .iter()
        .filter(|record| record.label == UNEXPECTED_LABEL)
        .collect();
    println!();
    println!(
        "{} families total; {} beyond the reference tables.",
        doc.records.len(),
        unexpected.len()
    );
    for record in unexpected {
        println!(
            "  extra family over {}: profile (t,r,s,k,p) = ({}, {}, {}, {}, {}), \
             g(D) = {}, g(C) = {}, Bsq = {}, vector {}",
            record.group,
            record.pair.t,
            record.pair.r,
            record.pair.s,
            record.pair.k,
            record.pair.p,
            record.pair.h,
            record.pair.g,
            record.pair.b_sq,
            record.vector
        );
    }
    Ok(())
}
