//! Command-line front end: argument parsing, report rendering, exit codes.
//!
//! Exit status is 0 on success, 1 when a verification or classification
//! reports failures, 2 on unreadable or invalid input.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{de::DeserializeOwned, Serialize};

use cmtorus::classify::{self, ClassificationRecord, ClassifyOptions, SearchFilters, ThreefoldGroup};
use cmtorus::cmtype::{self, CMFactor, CMType};
use cmtorus::json::{CMTypeJson, FieldError, PairJson, SearchJson};
use cmtorus::mtgroup::{self, PairAnalysis, PairInput, ProjectionStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cmtorus", version, about = "Mumford-Tate tori of products of CM abelian varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for enumeration campaigns.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Iso,
    Isogeny,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reflex field and reflex CM type of one CM type.
    Reflex(InputArg),
    /// Mumford-Tate dimensions and projection statuses for a pair of factors.
    Pair(InputArg),
    /// Exhaustive classification over the Galois groups of sextic CM fields.
    ClassifyThreefolds(ClassifyArgs),
    /// All CM-type pairs on given subgroups whose projections reach a status.
    Search(SearchArgs),
    /// The dual CM types of the cyclic family over Z/g x Z/2.
    Family(FamilyArgs),
    /// Check the matrix, kernel and projection claims for y^2 = x^9 - 1.
    VerifyShioda,
}

#[derive(Args, Debug)]
pub struct InputArg {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Comma-separated subset of c6, d12, c2xa4, c2xs4.
    #[arg(long, value_delimiter = ',')]
    pub groups: Option<Vec<String>>,
    #[arg(long)]
    pub symmetry_reduction: bool,
    #[arg(long)]
    pub full_records: bool,
    /// Only primitive CM types.
    #[arg(long)]
    pub primitive: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Iso)]
    pub mode: Mode,
    #[arg(long)]
    pub primitive: bool,
    #[arg(long)]
    pub essentially_different: bool,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub g: usize,
}

/// Failure before a report could be produced.
#[derive(Debug)]
pub struct InputFailure(pub String);

impl From<FieldError> for InputFailure {
    fn from(e: FieldError) -> Self {
        InputFailure(e.to_string())
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputFailure(format!("cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let field = if field == "." { "<root>".to_string() } else { field };
        InputFailure(format!("field `{field}`: {}", e.inner()))
    })
}

/// A rendered report and whether it records a failure.
struct Outcome {
    json: String,
    text: String,
    failed: bool,
}

fn outcome<T: Serialize>(value: &T, text: String, failed: bool) -> Outcome {
    Outcome {
        json: serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        text,
        failed,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Reflex(a) => reflex_cmd(&a.input),
        Command::Pair(a) => pair_cmd(&a.input),
        Command::ClassifyThreefolds(a) => classify_cmd(a, cli.jobs as usize),
        Command::Search(a) => search_cmd(a, cli.jobs as usize),
        Command::Family(a) => family_cmd(a.g),
        Command::VerifyShioda => Ok(shioda_cmd()),
    };
    let out = match result {
        Ok(o) => o,
        Err(InputFailure(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
    };
    let body = match cli.format {
        Format::Json => &out.json,
        Format::Text => &out.text,
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, body),
        None => io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_INPUT;
    }
    if out.failed {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

/// Two-column and multi-column aligned tables.
struct Table {
    header: Option<Vec<String>>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new() -> Self {
        Table {
            header: None,
            rows: Vec::new(),
        }
    }

    fn with_header(cols: &[&str]) -> Self {
        Table {
            header: Some(cols.iter().map(|s| s.to_string()).collect()),
            rows: Vec::new(),
        }
    }

    fn row<D: ToString>(&mut self, cells: impl IntoIterator<Item = D>) {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    fn kv(&mut self, key: &str, value: impl ToString) {
        self.rows.push(vec![key.to_string(), value.to_string()]);
    }

    fn render(&self) -> String {
        let all: Vec<&Vec<String>> = self.header.iter().chain(&self.rows).collect();
        let ncols = all.iter().map(|r| r.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..ncols)
            .map(|c| all.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, r: &Vec<String>| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(i, s)| format!("{s:<w$}", w = widths[i]))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        };
        if let Some(h) = &self.header {
            line(&mut out, h);
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&rule.join("  "));
            out.push('\n');
        }
        for r in &self.rows {
            line(&mut out, r);
        }
        out
    }
}

fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[derive(Serialize)]
struct TypeSummary {
    #[serde(rename = "H")]
    h: Vec<usize>,
    phi: Vec<usize>,
    phi_labels: String,
    dimension: usize,
    primitive: bool,
    dim_mt: usize,
    dim_hg: usize,
}

fn summarize(t: &CMType) -> TypeSummary {
    let (dim_mt, dim_hg) = mtgroup::mt_dimension(t);
    TypeSummary {
        h: t.subgroup().elems().to_vec(),
        phi: t.representatives(),
        phi_labels: t.describe(),
        dimension: t.dimension(),
        primitive: cmtype::is_primitive(t),
        dim_mt,
        dim_hg,
    }
}

#[derive(Serialize)]
struct ReflexReport {
    group: String,
    rho: usize,
    cm_type: TypeSummary,
    reflex_group: Vec<usize>,
    reflex_type: Vec<usize>,
    reflex_type_labels: String,
    lift_inverse: Vec<usize>,
}

fn reflex_cmd(input: &Path) -> Result<Outcome, InputFailure> {
    let t = read_json::<CMTypeJson>(input)?.resolve()?;
    let r = cmtype::reflex(&t);
    let rep = ReflexReport {
        group: t.group().name().to_string(),
        rho: t.rho().elem(),
        cm_type: summarize(&t),
        reflex_group: r.reflex_group.elems().to_vec(),
        reflex_type: r.reflex_type.representatives(),
        reflex_type_labels: r.reflex_type.describe(),
        lift_inverse: r.lift_inverse.to_vec(),
    };
    let mut tb = Table::new();
    tb.kv("group", &rep.group);
    tb.kv("rho", rep.rho);
    tb.kv("H", list(&rep.cm_type.h));
    tb.kv("phi", format!("{} {}", list(&rep.cm_type.phi), rep.cm_type.phi_labels));
    tb.kv("primitive", rep.cm_type.primitive);
    tb.kv("dim MT", rep.cm_type.dim_mt);
    tb.kv("dim Hg", rep.cm_type.dim_hg);
    tb.kv("reflex group", list(&rep.reflex_group));
    tb.kv("reflex type", format!("{} {}", list(&rep.reflex_type), rep.reflex_type_labels));
    Ok(outcome(&rep, tb.render(), false))
}

#[derive(Serialize)]
struct FactorReport {
    label: String,
    #[serde(flatten)]
    summary: TypeSummary,
}

#[derive(Serialize)]
struct PairReport {
    group: String,
    rho: usize,
    factor1: FactorReport,
    factor2: FactorReport,
    analysis: PairAnalysis,
}

fn pair_report(p: &PairInput) -> PairReport {
    let f = |c: &CMFactor| FactorReport {
        label: c.label.clone(),
        summary: summarize(&c.cm_type),
    };
    PairReport {
        group: p.group.name().to_string(),
        rho: p.rho.elem(),
        factor1: f(&p.factor1),
        factor2: f(&p.factor2),
        analysis: mtgroup::pair_analysis(p),
    }
}

fn analysis_table(tb: &mut Table, l1: &str, l2: &str, a: &PairAnalysis) {
    tb.kv(&format!("dim MT({l1})"), a.dim_mt_1);
    tb.kv(&format!("dim MT({l2})"), a.dim_mt_2);
    tb.kv(&format!("dim MT({l1} x {l2})"), a.dim_mt_product);
    tb.kv(&format!("dim Hg({l1})"), a.dim_hg_1);
    tb.kv(&format!("dim Hg({l2})"), a.dim_hg_2);
    tb.kv(&format!("dim Hg({l1} x {l2})"), a.dim_hg_product);
    tb.kv("kernel rank", a.kernel_rank);
    tb.kv(&format!("pi1: MT({l1} x {l2}) -> MT({l1})"), a.status_pi1);
    tb.kv(&format!("pi2: MT({l1} x {l2}) -> MT({l2})"), a.status_pi2);
}

fn render_pair(rep: &PairReport) -> String {
    let mut tb = Table::new();
    tb.kv("group", &rep.group);
    tb.kv("rho", rep.rho);
    for f in [&rep.factor1, &rep.factor2] {
        tb.kv(
            &format!("{} (H = {})", f.label, list(&f.summary.h)),
            format!(
                "{} {}, primitive = {}",
                list(&f.summary.phi),
                f.summary.phi_labels,
                f.summary.primitive
            ),
        );
    }
    analysis_table(&mut tb, &rep.factor1.label, &rep.factor2.label, &rep.analysis);
    let mut text = tb.render();
    let _ = writeln!(text, "\npair matrix:\n{}", rep.analysis.matrix);
    let _ = writeln!(text, "kernel basis:\n{}", rep.analysis.kernel);
    text
}

fn pair_cmd(input: &Path) -> Result<Outcome, InputFailure> {
    let p = read_json::<PairJson>(input)?.resolve()?;
    let rep = pair_report(&p);
    Ok(outcome(&rep, render_pair(&rep), false))
}

fn parse_groups(names: &Option<Vec<String>>) -> Result<Vec<ThreefoldGroup>, InputFailure> {
    match names {
        None => Ok(ThreefoldGroup::ALL.to_vec()),
        Some(v) => v
            .iter()
            .map(|s| s.trim().parse().map_err(|e| InputFailure(format!("field `groups`: {e}"))))
            .collect(),
    }
}

fn records_table(records: &[ClassificationRecord]) -> String {
    let mut tb = Table::with_header(&[
        "group", "H1", "phi1", "H2", "phi2", "prim", "dims", "pi1", "pi2", "conj", "ess.eq", "violation",
    ]);
    for r in records {
        tb.row([
            r.group.clone(),
            list(&r.h1),
            list(&r.phi1),
            list(&r.h2),
            list(&r.phi2),
            format!("{}/{}", r.primitive1 as u8, r.primitive2 as u8),
            format!("{},{},{}", r.dim_mt_1, r.dim_mt_2, r.dim_mt_product),
            r.status_pi1.to_string(),
            r.status_pi2.to_string(),
            r.conjugacy_witness.map_or("-".to_string(), |w| w.to_string()),
            r.essentially_equal_after_transport.to_string(),
            r.violation.to_string(),
        ]);
    }
    tb.render()
}

fn classify_cmd(a: &ClassifyArgs, jobs: usize) -> Result<Outcome, InputFailure> {
    let opts = ClassifyOptions {
        groups: parse_groups(&a.groups)?,
        jobs,
        symmetry_reduction: a.symmetry_reduction,
        full_records: a.full_records,
        primitive_only: a.primitive,
        timing: a.timing,
    };
    let rep = classify::classify_threefolds(&opts);
    let mut tb = Table::with_header(&[
        "group",
        "order",
        "subgroups",
        "cm types",
        "primitive",
        "tuples",
        "analyses",
        "equal dims",
        "violations",
        "dims (primitive)",
        "dims (other)",
    ]);
    for g in &rep.groups {
        tb.row([
            g.group.to_string(),
            g.order.to_string(),
            g.subgroups.to_string(),
            g.cm_types.to_string(),
            g.primitive_cm_types.to_string(),
            g.tuples.to_string(),
            g.analyses.to_string(),
            g.equal_dims.to_string(),
            g.violations.to_string(),
            list(&g.primitive_single_dims),
            list(&g.nonprimitive_single_dims),
        ]);
    }
    let mut text = tb.render();
    let mut totals = Table::new();
    totals.kv("groups examined", rep.groups_examined);
    totals.kv("total tuples", rep.total_tuples);
    totals.kv("equal dims", rep.equal_dims);
    totals.kv("violations", rep.violations);
    if let Some(ms) = rep.elapsed_ms {
        totals.kv("elapsed ms", ms);
    }
    text.push('\n');
    text.push_str(&totals.render());
    if !rep.records.is_empty() {
        text.push('\n');
        text.push_str(&records_table(&rep.records));
    }
    Ok(outcome(&rep, text, rep.violations > 0))
}

#[derive(Serialize)]
struct SearchReport {
    group: String,
    rho: usize,
    #[serde(rename = "H1")]
    h1: Vec<usize>,
    #[serde(rename = "H2")]
    h2: Vec<usize>,
    mode: ProjectionStatus,
    filters: SearchFilters,
    count: usize,
    records: Vec<ClassificationRecord>,
}

fn search_cmd(a: &SearchArgs, jobs: usize) -> Result<Outcome, InputFailure> {
    let s = read_json::<SearchJson>(&a.input)?.resolve()?;
    let mode = match a.mode {
        Mode::Iso => ProjectionStatus::Iso,
        Mode::Isogeny => ProjectionStatus::Isogeny,
    };
    let filters = SearchFilters {
        primitive: a.primitive,
        essentially_different: a.essentially_different,
    };
    let records = classify::search_pairs(&s.group, s.rho, &s.h1, &s.h2, mode, filters, jobs)
        .map_err(|e| InputFailure(format!("field `rho`: {e}")))?;
    let rep = SearchReport {
        group: s.group.name().to_string(),
        rho: s.rho.elem(),
        h1: s.h1.elems().to_vec(),
        h2: s.h2.elems().to_vec(),
        mode,
        filters,
        count: records.len(),
        records,
    };
    let mut tb = Table::new();
    tb.kv("group", &rep.group);
    tb.kv("mode", rep.mode);
    tb.kv("primitive", filters.primitive);
    tb.kv("essentially different", filters.essentially_different);
    tb.kv("count", rep.count);
    let mut text = tb.render();
    if !rep.records.is_empty() {
        text.push('\n');
        text.push_str(&records_table(&rep.records));
    }
    Ok(outcome(&rep, text, false))
}

#[derive(Serialize)]
struct FamilyReport {
    g: usize,
    r: usize,
    h: usize,
    group: String,
    rho: usize,
    phi1_star: Vec<usize>,
    phi2_star: Vec<usize>,
    phi1_star_labels: String,
    phi2_star_labels: String,
    phi1: TypeSummary,
    phi2: TypeSummary,
    conjugacy_witness: Option<usize>,
    essentially_equal_after_transport: bool,
    analysis: PairAnalysis,
    checks_passed: bool,
}

fn family_cmd(g: usize) -> Result<Outcome, InputFailure> {
    let f = classify::family_types(g).map_err(|e| InputFailure(format!("field `g`: {e}")))?;
    let (witness, same) = classify::isogenous_after_transport(&f.phi1, &f.phi2);
    let p = PairInput::new(CMFactor::new(f.phi1.clone(), "A1"), CMFactor::new(f.phi2.clone(), "A2"))
        .expect("family types share a group");
    let analysis = mtgroup::pair_analysis(&p);
    let phi1 = summarize(&f.phi1);
    let phi2 = summarize(&f.phi2);
    let checks_passed = phi1.primitive && phi2.primitive && !same && analysis.dims_equal();
    let rep = FamilyReport {
        g,
        r: f.r,
        h: f.h,
        group: f.group.name().to_string(),
        rho: f.rho.elem(),
        phi1_star: f.phi1_star.representatives(),
        phi2_star: f.phi2_star.representatives(),
        phi1_star_labels: f.phi1_star.describe(),
        phi2_star_labels: f.phi2_star.describe(),
        phi1,
        phi2,
        conjugacy_witness: witness,
        essentially_equal_after_transport: same,
        analysis,
        checks_passed,
    };
    let mut tb = Table::new();
    tb.kv("g", rep.g);
    tb.kv("r = h", rep.r);
    tb.kv("group", &rep.group);
    tb.kv("Phi1*", &rep.phi1_star_labels);
    tb.kv("Phi2*", &rep.phi2_star_labels);
    tb.kv("Phi1", format!("{} on H = {}", rep.phi1.phi_labels, list(&rep.phi1.h)));
    tb.kv("Phi2", format!("{} on H = {}", rep.phi2.phi_labels, list(&rep.phi2.h)));
    tb.kv("primitive", format!("{} / {}", rep.phi1.primitive, rep.phi2.primitive));
    tb.kv("essentially equal", rep.essentially_equal_after_transport);
    analysis_table(&mut tb, "A1", "A2", &rep.analysis);
    tb.kv("checks passed", rep.checks_passed);
    Ok(outcome(&rep, tb.render(), !checks_passed))
}

fn shioda_cmd() -> Outcome {
    let rep = classify::verify_shioda();
    let mut tb = Table::with_header(&["", "assertion", "detail"]);
    for (i, a) in rep.assertions.iter().enumerate() {
        let mark = if a.passed { "PASS" } else { "FAIL" };
        tb.row([format!("({}) {mark}", (b'a' + i as u8) as char), a.name.clone(), a.detail.clone()]);
    }
    let mut text = tb.render();
    let mut kv = Table::new();
    kv.kv("reflex type", format!("{{{}}}", rep.reflex_type.join(", ")));
    kv.kv("dim MT(X)", rep.dim_mt_x);
    kv.kv("dim MT(E)", rep.dim_mt_e);
    kv.kv("dim MT(X x E)", rep.dim_mt_product);
    kv.kv("pi1: MT(X x E) -> MT(X)", rep.status_pi1);
    kv.kv("pi2: MT(X x E) -> MT(E)", rep.status_pi2);
    text.push('\n');
    text.push_str(&kv.render());
    let _ = writeln!(text, "\npair matrix:\n{}", rep.matrix);
    outcome(&rep, text, !rep.all_passed())
}
