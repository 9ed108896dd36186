//! Rebuilds the derived intersection numbers of the genus 2 construction
//! and shows how the ledger reacts to bad or missing base data.
//!
//! Run with `cargo run --example intersection_table`.

use twistcert::ledger::{base_construction, construction_ledger, names::*, BaseData};
use twistcert::table::reproduce_table;

fn main() -> twistcert::Result<()> {
    let report = reproduce_table(BaseData::default())?;
    for row in &report.rows {
        let mark = if row.pass { "ok" } else { "MISMATCH" };
        println!("{:<22} {:>4} (expected {:>4}) {mark}", row.quantity, row.derived, row.expected);
    }

    let mut perturbed = BaseData::default();
    perturbed.set(XI, BETA, Some(5));
    let bad = reproduce_table(perturbed)?;
    println!("\nwith i(xi, beta) = 5 the table passes: {}", bad.pass);

    let mut missing = BaseData::default();
    missing.set(XI, ALPHA, None);
    match reproduce_table(missing) {
        Err(e) => println!("without i(xi, alpha): {e}"),
        Ok(_) => unreachable!("derivation needs i(xi, alpha)"),
    }

    let ledger = construction_ledger();
    println!("\nlambda separating: {:?}", ledger.curve(LAMBDA)?.separating());
    println!("alpha, beta bounding pair: {}", ledger.is_bounding_pair(ALPHA, BETA)?);

    let base = base_construction();
    let seq = base.check_curve_sequence(&[ALPHA, ETA], ALPHA, ETA)?;
    println!("sequence alpha, eta passes: {} (i(alpha, eta) != 0)", seq.pass);

    let doc = ledger.to_document();
    println!("\n{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(())
}
