use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zelevinsky::expansion::expansion_consistency;
use zelevinsky::ferrers::{render_board, right_hull};
use zelevinsky::qaffine::{is_snake, translate_multisegment, translate_relation};
use zelevinsky::selftest;
use zelevinsky::socle::{
    existence_check, good_segments, good_segments_fast, real_witness, CertificateOutcome, Step,
};
use zelevinsky::tsystems::{
    degenerate_diagnostic, relation_bottom, relation_top, sign_bookkeeping_check, verify_relation,
    Provenance, Relation, Status, VerificationReport,
};
use zelevinsky::{Error, Multisegment, Permutation};

#[derive(Parser)]
#[command(
    name = "zelevinsky",
    version,
    about = "Multisegment combinatorics in the Grothendieck ring"
)]
struct Cli {
    #[command(flatten)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Machine-readable output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output (default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Bottom,
    Top,
}

impl Which {
    fn build(self, m: &Multisegment) -> zelevinsky::Result<Relation> {
        match self {
            Which::Bottom => relation_bottom(m),
            Which::Top => relation_top(m),
        }
    }

    fn provenance(self) -> Provenance {
        match self {
            Which::Bottom => Provenance::Bottom,
            Which::Top => Provenance::Top,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Standard-basis expansion of Z(m), cross-checked across all routes.
    Expand { multisegment: String },
    /// Build the bottom or top relation of m.
    Relation {
        #[arg(long, value_enum, default_value = "bottom")]
        which: Which,
        multisegment: String,
        /// Check the relation in the ring and certify the right-hand products.
        #[arg(long)]
        verify: bool,
    },
    /// Verify relations read from a file: one text relation per line, or JSON.
    Verify { file: PathBuf },
    /// Classify every segment of m as good left, good right, both or neither.
    GoodSegments { multisegment: String },
    /// Decide whether Z(m) is real, for regular m.
    Real { multisegment: String },
    /// Draw the right convex hull of a permutation.
    Board { permutation: String },
    /// Loop-weight notation for m, or for one of its relations.
    Translate {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum)]
        which: Option<Which>,
        multisegment: String,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_m(text: &str) -> Result<Multisegment> {
    text.parse::<Multisegment>()
        .with_context(|| format!("cannot parse multisegment '{text}'"))
}

fn emit(json_mode: bool, value: Value, text: String) {
    if json_mode {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("json values serialize")
        );
    } else {
        print!("{text}");
    }
}

fn describe_step(step: &Step) -> String {
    match step {
        Step::UnitBase => "unit".into(),
        Step::SegmentCheck { segment } => format!("segment-check {segment}"),
        Step::LadderBase { ladder, shape, .. } => {
            format!("ladder-base {ladder} ({shape:?}, cited)").to_lowercase()
        }
        Step::Peel { segment, side } => format!("peel {segment} ({side:?})").to_lowercase(),
    }
}

fn describe_certificate(c: &CertificateOutcome) -> String {
    match c {
        CertificateOutcome::Certified { certificate } => {
            let steps: Vec<String> = certificate.steps().into_iter().map(describe_step).collect();
            format!("certified: {}", steps.join(" -> "))
        }
        CertificateOutcome::Unknown { reason } => format!("unknown: {reason}"),
    }
}

fn check_word(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "n/a",
    }
}

fn report_text(rel: &Relation, rep: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "ring equality: {}\n",
        check_word(rep.ring_equality)
    ));
    out.push_str(&format!(
        "content conserved: {}\n",
        check_word(rep.content_conserved)
    ));
    for (k, (t, c)) in rel.rhs.iter().zip(&rep.certificates).enumerate() {
        out.push_str(&format!(
            "certificate {} Z({})×Z({}): {}\n",
            k + 1,
            t.factors[0],
            t.factors[1],
            describe_certificate(c)
        ));
    }
    for p in &rep.participants {
        let basis = match &p.expansion {
            Ok(b) => serde_json::to_value(b)
                .expect("serializable")
                .as_str()
                .unwrap_or_default()
                .to_string(),
            Err(e) => format!("none ({e})"),
        };
        out.push_str(&format!(
            "participant {}: regular={} sigma={} avoids={} expansion={}\n",
            if p.multisegment.is_empty() {
                "1".to_string()
            } else {
                p.multisegment.to_string()
            },
            p.regular,
            p.sigma.as_deref().unwrap_or("-"),
            p.pattern_avoiding
                .map_or("-".to_string(), |b| b.to_string()),
            basis
        ));
    }
    if let Some(d) = &rep.difference {
        out.push_str(&format!("lhs - rhs = {d}\n"));
    }
    out.push_str(&format!("status: {}\n", rep.status));
    out
}

fn sign_lines(m: &Multisegment) -> (Value, String) {
    match sign_bookkeeping_check(m) {
        Ok(r) => {
            let text = format!(
                "sign data (diagnostic): sigma={} sgn(sigma)={} sgn(flatten N)={} sgn(flatten top)={} sgn(flatten both)={} r={} #B={} #C={} upper-right dots={}\n\
                 sign identities (diagnostic): flatten N {}, flatten top {}, flatten both {}\n",
                r.sigma,
                r.sign_sigma,
                r.sign_flat_n,
                r.sign_flat_top,
                r.sign_flat_both,
                r.r,
                r.zone_b,
                r.zone_c,
                r.upper_right,
                if r.identity_n { "holds" } else { "fails" },
                if r.identity_top { "holds" } else { "fails" },
                if r.identity_both { "holds" } else { "fails" },
            );
            (serde_json::to_value(&r).expect("serializable"), text)
        }
        Err(e) => (
            json!({ "error": e.to_string() }),
            format!("sign data unavailable: {e}\n"),
        ),
    }
}

fn cmd_relation(json_mode: bool, which: Which, text: &str, verify: bool) -> Result<bool> {
    let m = parse_m(text)?;
    let rel = match which.build(&m) {
        Ok(r) => r,
        Err(Error::DegenerateNeighbor { segments, .. }) => {
            let diag = degenerate_diagnostic(&m, which.provenance())?;
            let holds = diag.as_ref().and_then(|d| d.holds_with_zero_term);
            let pairs: Vec<String> = segments.iter().map(|(a, b)| format!("[{a};{b}]")).collect();
            emit(
                json_mode,
                json!({ "source": m, "provenance": which.provenance(), "degenerate": segments, "holds_with_zero_term": holds }),
                format!(
                    "degenerate instance {m}: neighbor segments {} have b < a - 1\nrelation with that term read as zero: {}\n",
                    pairs.join(", "),
                    check_word(holds)
                ),
            );
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let mut value = serde_json::to_value(&rel).expect("serializable");
    let mut out = format!("{rel}\n");
    let mut pass = true;
    if verify {
        let rep = verify_relation(&rel);
        pass = rep.status == Status::Pass;
        let mut checks = serde_json::to_value(&rep).expect("serializable");
        out.push_str(&report_text(&rel, &rep));
        if let Which::Bottom = which {
            let (sv, st) = sign_lines(&m);
            checks["sign_bookkeeping"] = sv;
            out.push_str(&st);
        }
        value["checks"] = checks;
    }
    emit(json_mode, value, out);
    Ok(pass)
}

fn read_relations(content: &str) -> Result<Vec<Relation>> {
    let trimmed = content.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(content).context("invalid JSON")?;
        let items = match v {
            Value::Array(items) => items,
            other => vec![other],
        };
        return items
            .into_iter()
            .map(|item| serde_json::from_value::<Relation>(item).context("invalid relation"))
            .collect();
    }
    let mut out = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rel = line
            .parse::<Relation>()
            .with_context(|| format!("line {}", lineno + 1))?;
        out.push(rel);
    }
    Ok(out)
}

fn cmd_verify(json_mode: bool, file: &PathBuf) -> Result<bool> {
    let content =
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let rels = read_relations(&content)?;
    let mut all = true;
    let mut values = Vec::new();
    let mut out = String::new();
    for rel in &rels {
        let rep = verify_relation(rel);
        all &= rep.status == Status::Pass;
        let mut v = serde_json::to_value(rel).expect("serializable");
        v["checks"] = serde_json::to_value(&rep).expect("serializable");
        values.push(v);
        out.push_str(&format!("{rel}\n{}\n", report_text(rel, &rep)));
    }
    out.push_str(&format!(
        "verified {} relation(s): {}\n",
        rels.len(),
        if all { "PASS" } else { "NOT ALL PASS" }
    ));
    emit(json_mode, Value::Array(values), out);
    Ok(all)
}

fn cmd_expand(json_mode: bool, text: &str) -> Result<bool> {
    let m = parse_m(text)?;
    let rep = expansion_consistency(&m)?;
    let mut out = format!("{}\n", rep.full);
    if !rep.consistent {
        out.push_str(&format!(
            "routes disagree: bounded={} determinant={:?}\n",
            rep.bounded,
            rep.determinant.as_ref().map(|d| d.to_string())
        ));
    }
    emit(
        json_mode,
        json!({
            "multisegment": m,
            "sigma": rep.sigma,
            "sigma0": rep.sigma0,
            "basis": rep.basis,
            "expansion": rep.full,
            "routes_agree": rep.consistent,
            "determinant_checked": rep.determinant.is_some(),
        }),
        out,
    );
    Ok(rep.consistent)
}

fn cmd_good_segments(json_mode: bool, text: &str) -> Result<bool> {
    let m = parse_m(text)?;
    let good = good_segments(&m)?;
    let fast = m
        .is_regular()
        .then(|| good_segments_fast(&m).ok())
        .flatten();
    let agree = fast.as_ref().map(|f| *f == good);
    let existence = existence_check(&m).ok();
    let mut out = String::new();
    for g in &good {
        out.push_str(&format!("{} {}: {:?}\n", g.index + 1, g.segment, g.side).to_lowercase());
    }
    if let Some(a) = agree {
        out.push_str(&format!("shape criteria agree: {a}\n"));
    }
    if let Some(e) = &existence {
        out.push_str(&format!(
            "existence statements: {}\n",
            if e.pass { "hold" } else { "FAIL" }
        ));
    }
    emit(
        json_mode,
        json!({
            "multisegment": m,
            "segments": good,
            "shape_criteria_agree": agree,
            "existence": existence,
        }),
        out,
    );
    Ok(agree.unwrap_or(true) && existence.is_none_or(|e| e.pass))
}

fn cmd_real(json_mode: bool, text: &str) -> Result<bool> {
    let m = parse_m(text)?;
    let profile = m.regular_profile()?;
    let avoids = profile.sigma().avoids_4231_and_3412();
    let witness = real_witness(&m)?;
    let real = witness.is_none();
    let mut out = format!(
        "sigma = {}\navoids 4231 and 3412: {avoids}\nreal: {real}\n",
        profile.sigma()
    );
    if let Some(w) = &witness {
        out.push_str(&format!(
            "witness: family {} at positions {:?}\n",
            w.family, w.positions
        ));
    }
    emit(
        json_mode,
        json!({
            "multisegment": m,
            "sigma": profile.sigma().to_string(),
            "pattern_avoiding": avoids,
            "real": real,
            "witness": witness,
        }),
        out,
    );
    Ok(real)
}

fn cmd_board(json_mode: bool, text: &str) -> Result<bool> {
    let sigma = text
        .parse::<Permutation>()
        .with_context(|| format!("cannot parse permutation '{text}'"))?;
    let hull = right_hull(&sigma);
    let picture = render_board(&sigma);
    let avoids = sigma.avoids_4231_and_3412();
    let rows: Vec<Vec<usize>> = (0..sigma.len())
        .map(|r| {
            (0..sigma.len())
                .filter(|&c| hull.contains(r, c))
                .map(|c| c + 1)
                .collect()
        })
        .collect();
    emit(
        json_mode,
        json!({
            "permutation": sigma.to_string(),
            "pattern_avoiding": avoids,
            "rows": rows,
            "picture": picture.lines().collect::<Vec<_>>(),
        }),
        picture,
    );
    Ok(true)
}

fn cmd_translate(json_mode: bool, rank: usize, which: Option<Which>, text: &str) -> Result<bool> {
    let m = parse_m(text)?;
    match which {
        None => {
            let w = translate_multisegment(&m, rank)?;
            let snake = is_snake(&w);
            let mut out = format!("M = {w}\nsnake: {snake}\n");
            for y in w.flagged() {
                out.push_str(&format!(
                    "flag: {y} is a {} at k = {rank}\n",
                    y.flag.describe()
                ));
            }
            emit(json_mode, json!({ "monomial": w, "snake": snake }), out);
        }
        Some(which) => {
            let rel = which.build(&m)?;
            let t = translate_relation(&rel, rank)?;
            emit(
                json_mode,
                serde_json::to_value(&t).expect("serializable"),
                t.to_string(),
            );
        }
    }
    Ok(true)
}

fn cmd_selftest(json_mode: bool, max_n: usize, samples: usize, seed: u64) -> Result<bool> {
    let rep = selftest::run(max_n, samples, seed)?;
    emit(
        json_mode,
        serde_json::to_value(&rep).expect("serializable"),
        rep.to_string(),
    );
    Ok(rep.passed())
}

fn run(cli: Cli) -> Result<bool> {
    let j = cli.output.json;
    match cli.command {
        Command::Expand { multisegment } => cmd_expand(j, &multisegment),
        Command::Relation {
            which,
            multisegment,
            verify,
        } => cmd_relation(j, which, &multisegment, verify),
        Command::Verify { file } => cmd_verify(j, &file),
        Command::GoodSegments { multisegment } => cmd_good_segments(j, &multisegment),
        Command::Real { multisegment } => cmd_real(j, &multisegment),
        Command::Board { permutation } => cmd_board(j, &permutation),
        Command::Translate {
            rank,
            which,
            multisegment,
        } => cmd_translate(j, rank, which, &multisegment),
        Command::Selftest {
            max_n,
            samples,
            seed,
        } => cmd_selftest(j, max_n, samples, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
