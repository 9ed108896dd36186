//! Normal generation verdicts for a few mapping class profiles.
//!
//! Run with `cargo run --example normal_generation_verdict`.

use twistcert::penner::StretchCertificate;
use twistcert::verdict::{apply_rules, cover_profile, MappingClassProfile, VerdictOptions};

fn pa(genus: i64, lambda: f64) -> twistcert::Result<MappingClassProfile> {
    let mut p = MappingClassProfile::closed(genus);
    p.pa_certificate = Some(StretchCertificate::asserted("f", lambda)?);
    Ok(p)
}

fn main() -> twistcert::Result<()> {
    let mut torelli = MappingClassProfile::closed(4);
    torelli.asserted_torelli = Some(true);

    let cases = [
        ("pA, lambda = sqrt 2, genus 3", pa(3, 2f64.sqrt())?),
        ("pA, lambda = 1.4143, genus 3", pa(3, 1.4143)?),
        ("pA, lambda = 1.2, genus 2", pa(2, 1.2)?),
        ("Torelli, genus 4", torelli),
        ("lifted class, degree 1153", cover_profile(1153)),
    ];
    for (name, profile) in &cases {
        let v = apply_rules(profile, VerdictOptions::default())?;
        println!("{name:<30} {:?}\n  {}", v.decision, v.rule);
    }

    println!("\n{}", cover_profile(1153).to_json()?);
    Ok(())
}
