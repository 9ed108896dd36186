//! Arithmetic certificates for the lifted mapping class on degree `n`
//! cyclic covers, including the batch worker pool.
//!
//! Run with `cargo run --example cyclic_cover_certificate`.

use twistcert::cli::cover_batch;
use twistcert::cover::{build_certificate, CertificateMode, CertificateOptions};

fn main() -> twistcert::Result<()> {
    let degrees = [577, 1152, 1153, 2000, 5000];
    let certs = cover_batch(&degrees, CertificateMode::Arithmetic, CertificateOptions::default(), 4);
    println!("{:>6} {:>6} {:>5} {:>18} {:>18}  case", "n", "genus", "m", "bound_exact", "bound_degree_form");
    for cert in certs {
        let c = cert?;
        println!(
            "{:>6} {:>6} {:>5} {:>18} {:>18}  {:?}",
            c.degree,
            c.cover_genus,
            c.m_max.unwrap(),
            c.bound_exact.unwrap().to_string(),
            c.bound_degree_form.unwrap().to_string(),
            c.distance_case.unwrap()
        );
    }

    match build_certificate(576, CertificateMode::Arithmetic) {
        Err(e) => println!("\nn = 576: {e}"),
        Ok(_) => unreachable!("the spreading bound needs n > 576"),
    }

    let c = build_certificate(1153, CertificateMode::Arithmetic)?;
    println!("\nfacts for n = 1153:");
    for f in &c.facts {
        println!("  [{:?}] {}", f.status, f.claim);
    }
    Ok(())
}
