//! Command-line front end. Every subcommand writes one JSON document (or a
//! directory of them) and returns an exit code: 0 on success, 2 when the
//! run completed but the requested property was refuted.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::{build_certificate_with, CertificateMode, CertificateOptions, CoverCertificate};
use crate::error::{Error, Result};
use crate::ledger::{
    base_construction, construction_ledger, derive_construction, BaseData, IntersectionLedger,
    LedgerDocument,
};
use crate::matrix::IntMatrix;
use crate::penner::ribbon::RibbonConfig;
use crate::penner::thurston::MultitwistWord;
use crate::penner::{certify, thurston_certificate, PennerCertificate, PennerConfig, StretchCertificate};
use crate::symplectic::{
    is_level_trivial, is_symplectic, is_torelli, standard_classes, word_action, ClassTable,
    H1Vector, SymplecticSpace, TwistLetter, TwistWord,
};
use crate::table::{reproduce_table, TableReport};
use crate::verdict::{apply_rules, Decision, MappingClassProfile, VerdictOptions};
use crate::TOOL_VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "twistcert", version, about = "Certificates for mapping classes given as Dehn twist words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology action of a twist word, or a randomized self-test.
    Homology(HomologyArgs),
    /// Intersection ledger import/export and table reproduction.
    Ledger(LedgerArgs),
    /// Penner pseudo-Anosov certificate from a ribbon configuration.
    Penner(PennerArgs),
    /// Cyclic cover certificates for one or more degrees.
    Cover(CoverArgs),
    /// Normal generation verdict for a mapping class profile.
    Verdict(VerdictArgs),
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[arg(long)]
    pub genus: usize,
    /// Twist word such as `a1 b2^-1`; the leftmost letter acts last.
    #[arg(long, required_unless_present = "random_words")]
    pub word: Option<String>,
    /// JSON object mapping extra curve names to coordinate vectors.
    #[arg(long)]
    pub classes: Option<PathBuf>,
    /// Moduli for level-m triviality checks.
    #[arg(long = "modulus")]
    pub moduli: Vec<i64>,
    /// Run the randomized self-test with this many words instead.
    #[arg(long, conflicts_with = "word")]
    pub random_words: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LedgerArgs {
    /// Ledger document to load; defaults to the base construction.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Add the twist images `lambda`, `phi_alpha`, `phi_beta`.
    #[arg(long)]
    pub derive: bool,
    /// Rebuild the expected intersection table from base data.
    #[arg(long, conflicts_with_all = ["input", "derive"])]
    pub reproduce_table: bool,
    /// Replace a base entry, e.g. `xi,beta,5`.
    #[arg(long = "override", requires = "reproduce_table")]
    pub overrides: Vec<String>,
    /// Drop a base entry, e.g. `xi,alpha`.
    #[arg(long = "omit", requires = "reproduce_table")]
    pub omits: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PennerArgs {
    #[arg(long)]
    pub ribbon: PathBuf,
    /// Twist word in the ribbon's curve names.
    #[arg(long, required_unless_present = "multitwist")]
    pub word: Option<String>,
    /// Word in the two multitwists, e.g. `c d^-1`; also runs the trace oracle.
    #[arg(long)]
    pub multitwist: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub genus: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long, required_unless_present = "degrees", conflicts_with = "degrees")]
    pub degree: Option<i64>,
    /// Comma-separated list of degrees.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Vec<i64>,
    #[arg(long, default_value = "arithmetic")]
    pub mode: CertificateMode,
    #[arg(long, conflicts_with = "out_dir")]
    pub out: Option<PathBuf>,
    /// Write `cover-<n>.json` per degree into this directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Largest degree accepted in homology-verified mode.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    #[arg(long)]
    pub profile: PathBuf,
    /// Exit with 2 unless the decision equals this, e.g. `normal-generator`.
    #[arg(long)]
    pub expect: Option<String>,
    #[arg(long)]
    pub bkw_remark: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Homology(a) => run_homology(a),
        Command::Ledger(a) => run_ledger(a),
        Command::Penner(a) => run_penner(a),
        Command::Cover(a) => run_cover(a),
        Command::Verdict(a) => run_verdict(a),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Parses a JSON file, reporting the failing line.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: e.line(),
        msg: e.to_string(),
    })
}

/// Replaces `path` by writing a sibling temporary file and renaming it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Pretty JSON with a trailing newline, so output is byte-stable.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = to_json(value)?;
    match out {
        Some(p) => write_atomic(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCheck {
    pub modulus: i64,
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub genus: usize,
    pub word: String,
    pub matrix: IntMatrix,
    pub symplectic: bool,
    pub torelli: bool,
    pub level: Vec<LevelCheck>,
    pub tool_version: String,
}

pub fn homology_report(
    genus: usize,
    word: &TwistWord,
    classes: &ClassTable,
    moduli: &[i64],
) -> Result<HomologyReport> {
    let space = SymplecticSpace::new(genus)?;
    let m = word_action(word, classes, &space)?;
    let level = moduli
        .iter()
        .map(|&modulus| {
            Ok(LevelCheck {
                modulus,
                trivial: is_level_trivial(&m, modulus)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(HomologyReport {
        genus,
        word: word.to_string(),
        symplectic: is_symplectic(&m, &space),
        torelli: is_torelli(&m),
        matrix: m,
        level,
        tool_version: TOOL_VERSION.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTestReport {
    pub genus: usize,
    pub words: usize,
    pub seed: u64,
    pub symplectic_failures: usize,
    pub separating_torelli_failures: usize,
    pub bounding_pair_torelli_failures: usize,
    pub pass: bool,
    pub tool_version: String,
}

/// Classes of the Lickorish generators: `a_i`, `b_i` and `c_i` with
/// `[c_i] = b_i - b_{i+1}`.
fn lickorish_classes(space: &SymplecticSpace) -> Result<ClassTable> {
    let mut t = standard_classes(space);
    for i in 1..space.genus() {
        t.insert(format!("c{i}"), space.b(i).checked_sub(&space.b(i + 1))?);
    }
    Ok(t)
}

fn random_word<R: Rng>(names: &[String], max_len: usize, rng: &mut R) -> Result<TwistWord> {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            TwistLetter {
                curve: names[rng.gen_range(0..names.len())].clone(),
                exponent: e,
            }
        })
        .collect();
    TwistWord::new(letters)
}

/// Random words in the Lickorish generators must act symplectically. Conjugates `w s w⁻¹` of a
/// separating twist `s` and bounding pair maps `T_c T_c'⁻¹` with
/// `[c] = [c']` must act trivially.
pub fn homology_self_test(genus: usize, words: usize, max_len: usize, seed: u64) -> Result<SelfTestReport> {
    let space = SymplecticSpace::new(genus)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SelfTestReport {
        genus,
        words,
        seed,
        symplectic_failures: 0,
        separating_torelli_failures: 0,
        bounding_pair_torelli_failures: 0,
        pass: false,
        tool_version: TOOL_VERSION.to_string(),
    };
    let base = lickorish_classes(&space)?;
    let names: Vec<String> = base.keys().cloned().collect();
    for _ in 0..words {
        let mut classes = base.clone();
        let w = random_word(&names, max_len, &mut rng)?;
        if !is_symplectic(&word_action(&w, &classes, &space)?, &space) {
            report.symplectic_failures += 1;
        }

        classes.insert("sep".into(), space.zero());
        let conj = w.then(&TwistWord::from_pairs([("sep", 1)])?).then(&w.inverse());
        if !is_torelli(&word_action(&conj, &classes, &space)?) {
            report.separating_torelli_failures += 1;
        }

        let c = names[rng.gen_range(0..names.len())].clone();
        classes.insert("c_twin".into(), classes[&c].clone());
        let bp = TwistWord::from_pairs([(c.as_str(), 1), ("c_twin", -1)])?;
        if !is_torelli(&word_action(&bp, &classes, &space)?) {
            report.bounding_pair_torelli_failures += 1;
        }
    }
    report.pass = report.symplectic_failures == 0
        && report.separating_torelli_failures == 0
        && report.bounding_pair_torelli_failures == 0;
    Ok(report)
}

fn run_homology(a: HomologyArgs) -> Result<i32> {
    if let Some(n) = a.random_words {
        let report = homology_self_test(a.genus, n, 50, a.seed)?;
        emit(&report, a.out.as_deref())?;
        return Ok(if report.pass { EXIT_OK } else { EXIT_REFUTED });
    }
    let space = SymplecticSpace::new(a.genus)?;
    let mut classes = standard_classes(&space);
    if let Some(path) = &a.classes {
        let extra: BTreeMap<String, Vec<i64>> = read_json(path)?;
        for (name, coords) in extra {
            let v = H1Vector::new(coords);
            space.check(&v)?;
            classes.insert(name, v);
        }
    }
    let word: TwistWord = a.word.as_deref().unwrap_or_default().parse()?;
    emit(&homology_report(a.genus, &word, &classes, &a.moduli)?, a.out.as_deref())?;
    Ok(EXIT_OK)
}

fn parse_pair(spec: &str, what: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    if parts.len() < 2 || parts.iter().any(String::is_empty) {
        return Err(Error::Parse {
            file: format!("--{what}"),
            line: 1,
            msg: format!("expected `a,b{}`, got `{spec}`", if what == "override" { ",value" } else { "" }),
        });
    }
    Ok(parts)
}

/// Base data after applying `a,b,value` overrides and `a,b` omissions.
pub fn table_input(overrides: &[String], omits: &[String]) -> Result<BaseData> {
    let mut data = BaseData::default();
    let unknown = |a: &str, b: &str| Error::UnknownIntersection(a.to_string(), b.to_string());
    for o in overrides {
        let p = parse_pair(o, "override")?;
        let v: u64 = p.get(2).and_then(|v| v.parse().ok()).ok_or_else(|| Error::Parse {
            file: "--override".into(),
            line: 1,
            msg: format!("missing or invalid value in `{o}`"),
        })?;
        if !data.set(&p[0], &p[1], Some(v)) {
            return Err(unknown(&p[0], &p[1]));
        }
    }
    for o in omits {
        let p = parse_pair(o, "omit")?;
        if !data.set(&p[0], &p[1], None) {
            return Err(unknown(&p[0], &p[1]));
        }
    }
    Ok(data)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOutput {
    #[serde(flatten)]
    pub report: TableReport,
    pub tool_version: String,
}

fn run_ledger(a: LedgerArgs) -> Result<i32> {
    if a.reproduce_table {
        let data = table_input(&a.overrides, &a.omits)?;
        let report = reproduce_table(data).map_err(|e| match e {
            Error::UnknownIntersection(..) => Error::CertificateClause {
                clause: "table reproduction".into(),
                reason: format!("{e} (base entries omitted: {})", a.omits.join("; ")),
            },
            other => other,
        })?;
        let pass = report.pass;
        emit(
            &TableOutput {
                report,
                tool_version: TOOL_VERSION.to_string(),
            },
            a.out.as_deref(),
        )?;
        return Ok(if pass { EXIT_OK } else { EXIT_REFUTED });
    }
    let mut ledger: IntersectionLedger = match &a.input {
        Some(p) => IntersectionLedger::from_document(&read_json::<LedgerDocument>(p)?)?,
        None => base_construction(),
    };
    if a.derive {
        derive_construction(&mut ledger)?;
    }
    emit(&ledger.to_document(), a.out.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PennerOutput {
    pub certificate: PennerCertificate,
    /// Trace-oracle stretch factor when the word was given as a multitwist.
    pub trace_oracle: Option<StretchCertificate>,
    pub tool_version: String,
}

pub fn penner_run(ribbon_text: &str, file: &str, word: Option<&str>, multitwist: Option<&str>, genus: i64) -> Result<PennerOutput> {
    let ribbon = RibbonConfig::parse(ribbon_text, file)?;
    let config = PennerConfig::from_ribbon(ribbon, genus)?;
    let multi: Option<MultitwistWord> = multitwist.map(str::parse).transpose()?;
    let word: TwistWord = match (word, &multi) {
        (Some(w), _) => w.parse()?,
        (None, Some(m)) => m.expand(&config),
        (None, None) => {
            return Err(Error::InvalidPennerWord("no word given".into()));
        }
    };
    let certificate = certify(&word, &config)?;
    let trace_oracle = multi
        .map(|m| thurston_certificate(&m, config.intersections()))
        .transpose()?;
    Ok(PennerOutput {
        certificate,
        trace_oracle,
        tool_version: TOOL_VERSION.to_string(),
    })
}

fn run_penner(a: PennerArgs) -> Result<i32> {
    let text = read_text(&a.ribbon)?;
    let out = penner_run(
        &text,
        &a.ribbon.display().to_string(),
        a.word.as_deref(),
        a.multitwist.as_deref(),
        a.genus,
    )?;
    emit(&out, a.out.as_deref())?;
    Ok(if out.certificate.pseudo_anosov { EXIT_OK } else { EXIT_REFUTED })
}

/// Builds certificates for `degrees` on `jobs` worker threads; results
/// come back in input order.
pub fn cover_batch(
    degrees: &[i64],
    mode: CertificateMode,
    options: CertificateOptions,
    jobs: usize,
) -> Vec<Result<CoverCertificate>> {
    let ledger = construction_ledger();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<CoverCertificate>>>> = Mutex::new(vec![None; degrees.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, degrees.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&n) = degrees.get(i) else { break };
                let r = build_certificate_with(n, mode, &ledger, options);
                results.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

fn run_cover(a: CoverArgs) -> Result<i32> {
    let mut options = CertificateOptions::default();
    if let Some(cap) = a.cap {
        options.homology_cap = cap;
    }
    if let Some(seed) = a.seed {
        options.seed = seed;
    }
    if let Some(n) = a.degree {
        let cert = build_certificate_with(n, a.mode, &construction_ledger(), options)?;
        match &a.out_dir {
            Some(dir) => write_atomic(&dir.join(format!("cover-{n}.json")), &to_json(&cert)?)?,
            None => emit(&cert, a.out.as_deref())?,
        }
        return Ok(EXIT_OK);
    }
    let results = cover_batch(&a.degrees, a.mode, options, a.jobs);
    let mut certs = Vec::with_capacity(results.len());
    for (n, r) in a.degrees.iter().zip(results) {
        let cert = r.map_err(|e| Error::CertificateClause {
            clause: format!("cover degree {n}"),
            reason: e.to_string(),
        })?;
        if let Some(dir) = &a.out_dir {
            write_atomic(&dir.join(format!("cover-{n}.json")), &to_json(&cert)?)?;
        }
        certs.push(cert);
    }
    if a.out_dir.is_none() {
        emit(&certs, a.out.as_deref())?;
    }
    Ok(EXIT_OK)
}

fn parse_decision(s: &str) -> Result<Decision> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| Error::Parse {
        file: "--expect".into(),
        line: 1,
        msg: format!(
            "unknown decision `{s}` (normal-generator, not-normal-generator, contains-commutator-subgroup, inconclusive)"
        ),
    })
}

fn run_verdict(a: VerdictArgs) -> Result<i32> {
    let expect = a.expect.as_deref().map(parse_decision).transpose()?;
    let profile: MappingClassProfile = read_json(&a.profile)?;
    let verdict = apply_rules(&profile, VerdictOptions { bkw_remark: a.bkw_remark })?;
    emit(&verdict, a.out.as_deref())?;
    Ok(match expect {
        Some(d) if d != verdict.decision => EXIT_REFUTED,
        _ => EXIT_OK,
    })
}
