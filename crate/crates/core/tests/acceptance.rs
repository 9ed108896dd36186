//! One line per acceptance criterion. Each criterion passes only when all
//! of its checks hold and it finishes inside its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistcert::cli::homology_self_test;
use twistcert::cover::certificate::check_level_conjugation;
use twistcert::cover::lift::construction_curves;
use twistcert::cover::{
    build_certificate, build_cover, homology_basis, lift_curve, lifted_multitwist_matrix,
    non_torelli_witness, CertificateMode,
};
use twistcert::ledger::{construction_ledger, BaseData};
use twistcert::penner::ribbon::{verify_filling, Family, RibbonConfig};
use twistcert::penner::thurston::{thurston_oracle, MultitwistWord};
use twistcert::penner::{perron_frobenius, stretch_factor, transition_matrix, PennerConfig, StretchCertificate};
use twistcert::table::reproduce_table;
use twistcert::verdict::{apply_rules, cover_profile, Decision, MappingClassProfile, VerdictOptions};
use twistcert::{IntMatrix, TwistWord};

/// Outcome of one criterion: `Ok(detail)` or `Err(reason)`.
type Check = Result<String, String>;

/// Name, time budget and body of a criterion.
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn intersection_table() -> Check {
    let r = reproduce_table(BaseData::default()).map_err(err)?;
    let derived: Vec<u64> = r.rows.iter().map(|r| r.derived).collect();
    ensure(derived == [6, 36, 12, 144, 432], || format!("derived {derived:?}"))?;
    Ok("i(lambda,beta)=36 i(lambda,alpha)=12 i(phi_alpha,alpha)=144 i(phi_beta,alpha)=432".into())
}

fn cover_certificates() -> Check {
    let mut worst = Duration::ZERO;
    for (n, m, exact) in [(577i64, 1i64, 2.0f64), (1152, 1, 2.0), (1153, 2, 1.0)] {
        let t = Instant::now();
        let c = build_certificate(n, CertificateMode::Arithmetic).map_err(err)?;
        worst = worst.max(t.elapsed());
        let got = (c.m_max, c.bound_exact.map(|b| b.value()));
        ensure(got == (Some(m), Some(exact)), || format!("n={n}: got {got:?}"))?;
        let expected = 1152.0 / (n - 576) as f64;
        let bp = c.bound_degree_form.unwrap().value();
        ensure((bp - expected).abs() <= 1e-12 * expected, || format!("n={n}: bound_degree_form {bp} vs {expected}"))?;
        ensure(exact <= bp, || format!("n={n}: bound_exact > bound_degree_form"))?;
        if n == 577 {
            let g = c.cover_genus;
            let genus_form = 1152.0 / (g - 577) as f64;
            ensure(g == 578 && c.bound_genus_form.unwrap().value() == genus_form, || {
                format!("genus form at n=577: g={g}, {:?}", c.bound_genus_form)
            })?;
        }
    }
    ensure(worst < Duration::from_millis(100), || format!("slowest certificate {worst:?}"))?;
    Ok(format!("(1,2) (1,2) (2,1), genus form 1152/(g-577) at g=578, slowest {worst:?}"))
}

fn witness_criterion() -> Check {
    let degrees: Vec<i64> = (2..=64).chain([577, 1152, 1153, 10_000]).collect();
    let ledger = construction_ledger();
    for &n in &degrees {
        let w = non_torelli_witness(n, &ledger).map_err(err)?;
        ensure(w.coords() == [0, 0, -n, 0], || format!("n={n}: witness {w:?}"))?;
    }
    let c = build_certificate(1153, CertificateMode::Arithmetic).map_err(err)?;
    ensure(c.witness == [0, 0, -1153, 0], || format!("certificate witness {:?}", c.witness))?;
    Ok(format!("witness = -n a2 for {} degrees", degrees.len()))
}

fn proper_normal_closure() -> Check {
    let curves = construction_curves();
    for n in 2..=12i64 {
        let cover = build_cover(n).map_err(err)?;
        let h = homology_basis(&cover).map_err(err)?;
        let alpha = lift_curve(&curves[0], &cover, &h).map_err(err)?;
        let beta = lift_curve(&curves[1], &cover, &h).map_err(err)?;
        let ta = lifted_multitwist_matrix(&alpha, &h, 1).map_err(err)?;
        let tb = lifted_multitwist_matrix(&beta, &h, 1).map_err(err)?;
        ensure(tb.is_identity(), || format!("n={n}: beta lift not Torelli"))?;
        ensure(ta.is_identity_mod(n) && !ta.is_identity(), || format!("n={n}: alpha lift not level-n"))?;
        // any basis vector pairs to +-1 with something, so its twist is not level-n trivial
        let e0 = twistcert::H1Vector::new((0..h.rank()).map(|i| (i == 0) as i64).collect());
        ensure(!h.transvection(&e0, 1).map_err(err)?.is_identity_mod(n), || format!("n={n}: T_a1 level trivial"))?;
        let cert = build_certificate(n, CertificateMode::HomologyVerified).map_err(err)?;
        ensure(cert.facts.len() > 5, || format!("n={n}: too few facts"))?;
    }
    let mut samples = 0;
    for g in 1..=5usize {
        for n in [2i64, 3, 7, 12] {
            ensure(check_level_conjugation(n, g, 50, (g as u64) << 8 | n as u64).map_err(err)?, || {
                format!("conjugation failed for g={g}, n={n}")
            })?;
            samples += 50;
        }
    }
    Ok(format!("n=2..12 chain-level, {samples} symplectic conjugators over g<=5"))
}

fn symplectic_suite() -> Check {
    let mut words = 0;
    for g in 1..=5 {
        let r = homology_self_test(g, 200, 50, g as u64).map_err(err)?;
        ensure(r.pass, || format!("genus {g}: {r:?}"))?;
        words += r.words;
    }
    Ok(format!("{words} random words of length <= 50, separating and bounding pair words Torelli"))
}

fn stretch_factors() -> Check {
    let single = |n: i64| -> Result<(PennerConfig, IntMatrix), String> {
        let nm = IntMatrix::from_rows(&[vec![n]]).map_err(err)?;
        let c = PennerConfig::new(vec!["c".into()], vec!["d".into()], nm.clone(), 1).map_err(err)?;
        Ok((c, nm))
    };
    let mut max_abs = 0f64;
    for n in 1..=5i64 {
        let (config, _) = single(n)?;
        let w: TwistWord = "c d^-1".parse().map_err(err)?;
        let m = transition_matrix(&w, &config).map_err(err)?;
        let pf = perron_frobenius(&m).map_err(err)?;
        let t = (n * n + 2) as f64;
        let closed = (t + (t * t - 4.0).sqrt()) / 2.0;
        let root = pf.charpoly_root.ok_or("no char-poly root")?;
        for v in [pf.lambda, root] {
            max_abs = max_abs.max((v - closed).abs());
        }
    }
    ensure(max_abs <= 1e-9, || format!("closed form off by {max_abs:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut max_rel = 0f64;
    for _ in 0..100 {
        let len = rng.gen_range(1..=7);
        let mut letters: Vec<(Family, i64)> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    (Family::C, rng.gen_range(1..=2))
                } else {
                    (Family::D, -rng.gen_range(1..=2))
                }
            })
            .collect();
        letters.push(if letters.iter().all(|l| l.0 == Family::C) { (Family::D, -1) } else { (Family::C, 1) });
        let word = MultitwistWord::new(letters).map_err(err)?;
        let (config, nm) = single(rng.gen_range(1..=5))?;
        let tw = word.expand(&config);
        let lambda = stretch_factor(&tw, &transition_matrix(&tw, &config).map_err(err)?)
            .map_err(err)?
            .lambda();
        let oracle = thurston_oracle(&word, &nm).map_err(err)?;
        max_rel = max_rel.max((lambda - oracle).abs() / oracle);
    }
    ensure(max_rel <= 1e-6, || format!("trace oracle relative gap {max_rel:e}"))?;
    Ok(format!("closed form abs err {max_abs:.1e}, trace oracle rel err {max_rel:.1e} over 100 words"))
}

fn verdict_thresholds() -> Check {
    let decide = |p: &MappingClassProfile| apply_rules(p, VerdictOptions::default()).map(|v| (v.decision, v.rule));
    let pa = |l: f64| {
        let mut p = MappingClassProfile::closed(3);
        p.pa_certificate = Some(StretchCertificate::asserted("f", l).unwrap());
        p
    };
    let mut torelli = MappingClassProfile::closed(3);
    torelli.asserted_torelli = Some(true);
    let cases = [
        (pa(2f64.sqrt()), Decision::NormalGenerator, "LM-pA"),
        (pa(1.4143), Decision::Inconclusive, ""),
        (torelli, Decision::NotNormalGenerator, "OBS-Torelli"),
        (cover_profile(1153), Decision::NotNormalGenerator, "OBS-level"),
    ];
    for (p, want, rule) in &cases {
        let (d, r) = decide(p).map_err(err)?;
        ensure(d == *want && r.starts_with(rule), || format!("got {d:?} via `{r}`, want {want:?} via {rule}"))?;
    }
    Ok("sqrt2 -> normal generator, 1.4143 -> inconclusive, Torelli and cover profile -> not".into())
}

fn filling_checker() -> Check {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/genus2_filling.rib")).map_err(err)?;
    let fig = RibbonConfig::parse(&text, "genus2_filling.rib").map_err(err)?;
    let rep = verify_filling(&fig, 2).map_err(err)?;
    ensure(rep.filling, || format!("sample does not fill: {rep:?}"))?;
    ensure(!verify_filling(&fig.without_curve("d1"), 2).map_err(err)?.filling, || "fills without d1".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let r = RibbonConfig::random(rng.gen_range(1..=16), &mut rng);
        let g = r.fat_graph().map_err(err)?;
        let total: usize = g.faces().iter().map(Vec::len).sum();
        ensure(total == 4 * g.num_vertices(), || format!("sum of faces {total} != 4V"))?;
    }
    Ok("sample fills at genus 2, fails without d1, sum |face| = 4V on 100 random ribbons".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("intersection table", Duration::from_millis(100), intersection_table),
        ("cover certificates", Duration::from_millis(300), cover_certificates),
        ("non-Torelli witness", Duration::from_millis(100), witness_criterion),
        ("proper normal closure", Duration::from_secs(10), proper_normal_closure),
        ("symplectic suite", Duration::from_secs(5), symplectic_suite),
        ("stretch factors", Duration::from_secs(2), stretch_factors),
        ("verdict thresholds", Duration::from_millis(100), verdict_thresholds),
        ("filling checker", Duration::from_secs(1), filling_checker),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= *budget {
                Ok(d)
            } else {
                Err(format!("{d}; over budget"))
            }
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("{tag} [{}] {name}: {detail} ({elapsed:.2?}, budget {budget:?})", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
