//! Penner certificates: filling check on a ribbon configuration, stretch
//! factors from transition matrices, and the two-multitwist trace oracle.
//!
//! Run with `cargo run --example penner_stretch`.

use twistcert::penner::ribbon::{verify_filling, RibbonConfig};
use twistcert::penner::thurston::{thurston_oracle, MultitwistWord};
use twistcert::penner::{certify, stretch_factor, transition_matrix, PennerConfig};
use twistcert::{IntMatrix, TwistWord};

const SAMPLE: &str = include_str!("../data/genus2_filling.rib");

fn main() -> twistcert::Result<()> {
    let ribbon = RibbonConfig::parse(SAMPLE, "genus2_filling.rib")?;
    let report = verify_filling(&ribbon, 2)?;
    println!(
        "sample: V={} E={} F={} genus={:?} filling={}",
        report.vertices, report.edges, report.faces, report.inferred_genus, report.filling
    );
    let without = verify_filling(&ribbon.without_curve("d1"), 2)?;
    println!("without d1: filling={}, isolated curves {:?}", without.filling, without.isolated_curves);

    let config = PennerConfig::from_ribbon(ribbon, 2)?;
    let word: TwistWord = "c1 c2 c3 d1^-1".parse()?;
    let cert = certify(&word, &config)?;
    println!(
        "{}: pA={} lambda={} l_T={}",
        cert.word, cert.pseudo_anosov, cert.stretch.lambda, cert.stretch.l_teich
    );

    let multi: MultitwistWord = "c d^-1".parse()?;
    println!("trace oracle for `{multi}`: {:.12}", thurston_oracle(&multi, config.intersections())?);

    // One curve on each side meeting n times: T_c T_d^-1 has
    // lambda = ((n^2 + 2) + sqrt((n^2 + 2)^2 - 4)) / 2.
    println!("\n n  lambda             closed form");
    for n in 1..=5i64 {
        let single = PennerConfig::new(vec!["c".into()], vec!["d".into()], IntMatrix::from_rows(&[vec![n]])?, 1)?;
        let w: TwistWord = "c d^-1".parse()?;
        let s = stretch_factor(&w, &transition_matrix(&w, &single)?)?;
        let t = (n * n + 2) as f64;
        println!("{n:2}  {:<17}  {:.12}", s.lambda.to_string(), (t + (t * t - 4.0).sqrt()) / 2.0);
    }
    Ok(())
}
