//! Command-line driver: parse ideals, run the pipeline over one ideal or
//! an enumerated corpus, emit verification reports.
//!
//! Reports are deterministic: corpus entries are processed by a bounded
//! worker pool but assembled in corpus order, and all maps are ordered, so
//! identical configs produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::FieldCfg;
use crate::homology::{self, ComplexClass, HomologyTable, LocalizedVerdict, TableEntry, Verdict};
use crate::monomial::{parse_ideal, IdealError, SquarefreeIdeal, VarSet};
use crate::oracle::{self, CrossCheckVerdict, EulerianVerdict};
use crate::straight::{self, StraightModule};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Ideal(#[from] IdealError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Straight(#[from] straight::StraightError),
    #[error("{0}")]
    Homology(#[from] homology::HomologyError),
    #[error("oracle error: {0}")]
    Oracle(#[from] oracle::OracleError),
}

/// Where the ideals come from: exactly one source per run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSource {
    /// Inline text; the empty string or "0" is the zero ideal.
    Inline(String),
    /// One ideal per line (blank lines skipped).
    File(PathBuf),
    /// Exhaustive antichain corpus for v <= 4; fixed-seed sample for v = 5.
    Corpus { sample: Option<usize> },
}

/// Which modules to compute per ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSelector {
    AllDegrees,
    Degree(usize),
    /// Verify a localization R_(X_T) instead of local cohomology.
    Localization(VarSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub nvars: usize,
    pub source: IdealSource,
    pub selector: ModuleSelector,
    pub field: FieldCfg,
    /// Box radius for the brute-force oracle; None switches it off.
    pub oracle_radius: Option<i64>,
    pub oracle_cap: Option<usize>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub strict_squarefree: bool,
    pub workers: Option<usize>,
}

pub const DEFAULT_SAMPLE_COUNT: usize = 100;
pub const SAMPLE_SEED: u64 = 12345;

// ---------------------------------------------------------------------
// Corpus enumeration
// ---------------------------------------------------------------------

/// All squarefree monomial ideals on v variables: antichains of nonempty
/// supports, including the empty antichain (the zero ideal) and excluding
/// the unit. Deterministic order: by generator count, then by the sorted
/// support lists.
pub fn enumerate_ideals(v: usize) -> Vec<SquarefreeIdeal> {
    assert!(
        (1..=5).contains(&v),
        "corpus enumeration supports 1..=5 variables"
    );
    let subsets: Vec<u32> = (1u32..1 << v).collect();
    let mut antichains: Vec<Vec<u32>> = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    fn comparable(a: u32, b: u32) -> bool {
        a & b == a || a & b == b
    }
    fn dfs(start: usize, subsets: &[u32], chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(chosen.clone());
        for k in start..subsets.len() {
            let cand = subsets[k];
            if chosen.iter().all(|&g| !comparable(g, cand)) {
                chosen.push(cand);
                dfs(k + 1, subsets, chosen, out);
                chosen.pop();
            }
        }
    }
    dfs(0, &subsets, &mut chosen, &mut antichains);
    antichains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    antichains
        .into_iter()
        .map(|gens| {
            let supports: Vec<VarSet> = gens.into_iter().map(VarSet).collect();
            SquarefreeIdeal::from_supports(v, &supports).expect("antichain normalizes to itself")
        })
        .collect()
}

/// Fixed-seed sample (without replacement) from the exhaustive corpus,
/// in canonical corpus order.
pub fn sample_ideals(v: usize, count: usize, seed: u64) -> Vec<SquarefreeIdeal> {
    let all = enumerate_ideals(v);
    if count >= all.len() {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..all.len()).collect();
    for k in 0..count {
        let pick = k + rng.gen_range(0..indices.len() - k);
        indices.swap(k, pick);
    }
    let mut selected: Vec<usize> = indices[..count].to_vec();
    selected.sort_unstable();
    selected.into_iter().map(|k| all[k].clone()).collect()
}

// ---------------------------------------------------------------------
// Report structures
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub p: usize,
    pub t: Vec<i64>,
    pub dim: usize,
    pub zdegree: i64,
}

impl From<&TableEntry> for Entry {
    fn from(e: &TableEntry) -> Entry {
        Entry {
            p: e.p,
            t: e.t.clone(),
            dim: e.dim,
            zdegree: e.zdegree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleBlock {
    /// Cohomological degree for local cohomology; None for localizations.
    pub j: Option<usize>,
    pub provenance: String,
    /// Chamber bitmask (bit i set means i in F) -> dimension.
    pub chambers: BTreeMap<String, usize>,
    pub koszul: Vec<Entry>,
    pub derham: Vec<Entry>,
    pub chi_koszul: i64,
    pub chi_derham: i64,
    pub main_theorem: String,
    /// Per-variable localized-vanishing verdicts.
    pub localized: BTreeMap<String, String>,
    pub oracle: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealBlock {
    pub n: usize,
    pub ideal: String,
    pub radicalized: bool,
    pub modules: Vec<ModuleBlock>,
    pub additivity_koszul: Option<i64>,
    pub additivity_derham: Option<i64>,
    pub additivity: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub ideals: usize,
    pub modules: usize,
    pub main_theorem_pass: usize,
    pub main_theorem_fail: usize,
    pub localized_pass: usize,
    pub localized_hypothesis_not_met: usize,
    pub localized_fail: usize,
    pub oracle_pass: usize,
    pub oracle_fail: usize,
    pub additivity_pass: usize,
    pub additivity_fail: usize,
    pub verified: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub field: String,
    /// Indexing convention note: homological indexing throughout.
    pub indexing: String,
    /// Degree bookkeeping note for the de Rham side.
    pub degrees: String,
    pub ideals: Vec<IdealBlock>,
    pub summary: Summary,
}

pub const INDEXING_NOTE: &str =
    "homological indexing, p in 0..=n+1; cohomological translation H^i = H_(n+1-i)";
pub const DEGREE_NOTE: &str = "Koszul H_p sits in Z-degree -p; de Rham H_p sits in Z-degree \
     p-(n+1) (untwisted complex; twisted conventions place de Rham generators in degree -1 \
     at n = 0 and are not reconciled here)";

impl Summary {
    fn from_blocks(blocks: &[IdealBlock]) -> Summary {
        let mut s = Summary {
            ideals: blocks.len(),
            modules: 0,
            main_theorem_pass: 0,
            main_theorem_fail: 0,
            localized_pass: 0,
            localized_hypothesis_not_met: 0,
            localized_fail: 0,
            oracle_pass: 0,
            oracle_fail: 0,
            additivity_pass: 0,
            additivity_fail: 0,
            verified: String::new(),
        };
        for b in blocks {
            for m in &b.modules {
                s.modules += 1;
                if m.main_theorem == "PASS" {
                    s.main_theorem_pass += 1;
                } else {
                    s.main_theorem_fail += 1;
                }
                for v in m.localized.values() {
                    match v.as_str() {
                        "PASS" => s.localized_pass += 1,
                        "HYPOTHESIS_NOT_MET" => s.localized_hypothesis_not_met += 1,
                        _ => s.localized_fail += 1,
                    }
                }
                match m.oracle.as_deref() {
                    Some("PASS") => s.oracle_pass += 1,
                    Some(_) => s.oracle_fail += 1,
                    None => {}
                }
            }
            match b.additivity.as_str() {
                "PASS" => s.additivity_pass += 1,
                "FAIL" => s.additivity_fail += 1,
                _ => {}
            }
        }
        let passed = blocks.iter().filter(|b| ideal_block_passes(b)).count();
        s.verified = format!("VERIFIED {passed}/{}", blocks.len());
        s
    }
}

fn ideal_block_passes(b: &IdealBlock) -> bool {
    b.additivity != "FAIL"
        && b.modules.iter().all(|m| {
            m.main_theorem == "PASS"
                && m.localized
                    .values()
                    .all(|v| v == "PASS" || v == "HYPOTHESIS_NOT_MET")
                && m.oracle.as_deref().is_none_or(|o| o == "PASS")
        })
}

impl HomologyReport {
    pub fn all_pass(&self) -> bool {
        self.ideals.iter().all(ideal_block_passes)
    }
}

// ---------------------------------------------------------------------
// Pipeline per ideal
// ---------------------------------------------------------------------

fn verdict_str(v: Verdict) -> String {
    match v {
        Verdict::Pass => "PASS".to_string(),
        Verdict::Fail => "FAIL".to_string(),
    }
}

fn localized_str(v: &LocalizedVerdict) -> String {
    match v {
        LocalizedVerdict::Pass => "PASS".to_string(),
        LocalizedVerdict::HypothesisNotMet => "HYPOTHESIS_NOT_MET".to_string(),
        LocalizedVerdict::Fail(detail) => format!("FAIL: {detail}"),
    }
}

fn module_block(
    module: &StraightModule,
    j: Option<usize>,
    table: &HomologyTable,
    oracle_verdict: Option<String>,
) -> Result<ModuleBlock, CliError> {
    let nv = module.nvars();
    let chambers: BTreeMap<String, usize> = VarSet::all(nv)
        .map(|f| (f.0.to_string(), module.dim(f)))
        .collect();
    let main = homology::verify_main_theorem(module)?;
    let mut localized = BTreeMap::new();
    for i in 0..nv {
        let v = homology::verify_localized_vanishing(module, i)?;
        localized.insert(i.to_string(), localized_str(&v));
    }
    Ok(ModuleBlock {
        j,
        provenance: module.provenance().to_string(),
        chambers,
        koszul: table
            .entries_of(ComplexClass::Koszul)
            .into_iter()
            .map(Entry::from)
            .collect(),
        derham: table
            .entries_of(ComplexClass::DeRham)
            .into_iter()
            .map(Entry::from)
            .collect(),
        chi_koszul: table.chi_koszul,
        chi_derham: table.chi_derham,
        main_theorem: verdict_str(main.verdict),
        localized,
        oracle: oracle_verdict,
    })
}

fn cross_check_str(v: CrossCheckVerdict, eulerian: &EulerianVerdict) -> String {
    match (v, eulerian) {
        (CrossCheckVerdict::Pass, EulerianVerdict::Pass) => "PASS".to_string(),
        (CrossCheckVerdict::Fail { detail }, _) => format!("FAIL: {detail}"),
        (_, EulerianVerdict::Fail { witness }) => {
            format!("FAIL: eulerian identity at {witness}")
        }
    }
}

fn run_ideal(config: &RunConfig, ideal: &SquarefreeIdeal) -> Result<IdealBlock, CliError> {
    let nv = ideal.nvars();
    let s = ideal.num_gens();
    let field = config.field;
    let mut modules = Vec::new();
    let mut additivity: (Option<i64>, Option<i64>) = (None, None);
    let mut additivity_verdict = "SKIPPED".to_string();

    match &config.selector {
        ModuleSelector::Localization(t) => {
            let module = straight::localization_module(*t, nv, field);
            let table = homology::homology_tables(&module)?;
            let oracle_verdict = match config.oracle_radius {
                None => None,
                Some(radius) => {
                    // Realize R_(X_T) as the top spot of the box on the
                    // principal ideal generated by the product over T.
                    let gens = if t.is_empty() { vec![] } else { vec![*t] };
                    let carrier = SquarefreeIdeal::from_supports(nv, &gens)?;
                    let b = build_oracle_box(config, &carrier, radius)?;
                    let spot = if t.is_empty() { 0 } else { 1 };
                    let check = oracle::cross_check_localization(&module, &b, spot)?;
                    let eulerian = oracle::eulerian_check(&b)?;
                    Some(cross_check_str(check, &eulerian))
                }
            };
            modules.push(module_block(&module, None, &table, oracle_verdict)?);
        }
        selector => {
            let family = straight::local_cohomology_family(ideal, field)?;
            let js: Vec<usize> = match selector {
                ModuleSelector::AllDegrees => (0..=s).collect(),
                ModuleSelector::Degree(j) => {
                    if *j > s {
                        return Err(CliError::InvalidConfig(format!(
                            "degree {j} out of range 0..={s} for ideal ({})",
                            ideal.render()
                        )));
                    }
                    vec![*j]
                }
                ModuleSelector::Localization(_) => unreachable!(),
            };
            let oracle_box = match config.oracle_radius {
                None => None,
                Some(radius) => Some(build_oracle_box(config, ideal, radius)?),
            };
            let eulerian = match &oracle_box {
                None => EulerianVerdict::Pass,
                Some(b) => oracle::eulerian_check(b)?,
            };
            let mut tables = Vec::new();
            for &j in &js {
                let module = &family[j];
                let table = homology::homology_tables(module)?;
                let oracle_verdict = match &oracle_box {
                    None => None,
                    Some(b) => {
                        let check = oracle::cross_check(module, b, j)?;
                        Some(cross_check_str(check, &eulerian))
                    }
                };
                modules.push(module_block(module, Some(j), &table, oracle_verdict)?);
                tables.push(table);
            }
            if matches!(selector, ModuleSelector::AllDegrees) {
                let mut chi_x = 0i64;
                let mut chi_d = 0i64;
                for (j, table) in js.iter().zip(&tables) {
                    let sign = homology::parity_sign(*j);
                    chi_x += sign * table.chi_koszul;
                    chi_d += sign * table.chi_derham;
                }
                let top_sign = homology::parity_sign(nv);
                additivity = (Some(chi_x), Some(chi_d));
                additivity_verdict = if chi_x == 1 && chi_d == top_sign {
                    "PASS".to_string()
                } else {
                    "FAIL".to_string()
                };
            }
        }
    }

    Ok(IdealBlock {
        n: nv - 1,
        ideal: ideal.render(),
        radicalized: ideal.was_radicalized(),
        modules,
        additivity_koszul: additivity.0,
        additivity_derham: additivity.1,
        additivity: additivity_verdict,
    })
}

fn build_oracle_box(
    config: &RunConfig,
    ideal: &SquarefreeIdeal,
    radius: i64,
) -> Result<oracle::BoxRealization, CliError> {
    let b = match config.oracle_cap {
        Some(cap) => oracle::build_box_with_cap(ideal, radius, config.field, cap)?,
        None => oracle::build_box(ideal, radius, config.field)?,
    };
    Ok(b)
}

// ---------------------------------------------------------------------
// Run driver
// ---------------------------------------------------------------------

#[derive(Debug)]
pub struct RunOutcome {
    pub report: HomologyReport,
    pub rendered: String,
    /// Final corpus line, printed by the binary.
    pub verified_line: Option<String>,
    pub exit_code: i32,
}

fn gather_ideals(config: &RunConfig) -> Result<Vec<SquarefreeIdeal>, CliError> {
    let v = config.nvars;
    if v == 0 || v > 16 {
        return Err(CliError::InvalidConfig(format!(
            "variable count {v} out of supported range 1..=16"
        )));
    }
    match &config.source {
        IdealSource::Inline(text) => Ok(vec![parse_ideal(v, text, config.strict_squarefree)?]),
        IdealSource::File(path) => {
            let content = std::fs::read_to_string(path)?;
            let mut out = Vec::new();
            for line in content.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                out.push(parse_ideal(v, line, config.strict_squarefree)?);
            }
            if out.is_empty() {
                return Err(CliError::InvalidConfig(format!(
                    "no ideals in {}",
                    path.display()
                )));
            }
            Ok(out)
        }
        IdealSource::Corpus { sample } => {
            if v > 5 {
                return Err(CliError::InvalidConfig(
                    "corpus mode supports at most 5 variables".to_string(),
                ));
            }
            match (v, sample) {
                (5, n) => Ok(sample_ideals(
                    5,
                    n.unwrap_or(DEFAULT_SAMPLE_COUNT),
                    SAMPLE_SEED,
                )),
                (_, Some(n)) => Ok(sample_ideals(v, *n, SAMPLE_SEED)),
                (_, None) => Ok(enumerate_ideals(v)),
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    if let FieldCfg::Prime(p) = config.field {
        if !is_prime(p) {
            return Err(CliError::InvalidConfig(format!("{p} is not prime")));
        }
    }
    if let Some(r) = config.oracle_radius {
        if r < 4 {
            return Err(CliError::InvalidConfig(format!(
                "oracle radius must be at least 4 for the cross-check sweep, got {r}"
            )));
        }
    }
    let ideals = gather_ideals(config)?;
    let corpus_mode = matches!(config.source, IdealSource::Corpus { .. });

    let blocks: Result<Vec<IdealBlock>, CliError> = with_worker_pool(config.workers, || {
        ideals
            .par_iter()
            .map(|ideal| run_ideal(config, ideal))
            .collect()
    })?;
    let blocks = blocks?;

    let summary = Summary::from_blocks(&blocks);
    let report = HomologyReport {
        field: config.field.to_string(),
        indexing: INDEXING_NOTE.to_string(),
        degrees: DEGREE_NOTE.to_string(),
        ideals: blocks,
        summary,
    };
    let rendered = match config.format {
        OutputFormat::Table => render_table(&report),
        OutputFormat::Json => render_json(&report),
        OutputFormat::Csv => render_csv(&report),
    };
    let verified_line = corpus_mode.then(|| report.summary.verified.clone());
    let exit_code = if report.all_pass() { 0 } else { 1 };
    Ok(RunOutcome {
        report,
        rendered,
        verified_line,
        exit_code,
    })
}

fn with_worker_pool<T>(
    workers: Option<usize>,
    body: impl FnOnce() -> T + Send,
) -> Result<T, CliError>
where
    T: Send,
{
    match workers {
        None => Ok(body()),
        Some(n) => {
            if n == 0 {
                return Err(CliError::InvalidConfig(
                    "worker count must be positive".into(),
                ));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::InvalidConfig(format!("worker pool: {e}")))?;
            Ok(pool.install(body))
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------

pub fn render_json(report: &HomologyReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<HomologyReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// One row per (ideal, j, class, p) with the concentrated homology
/// dimension and the convention Z-degree.
pub fn render_csv(report: &HomologyReport) -> String {
    let mut out = String::new();
    out.push_str("n,ideal,j,class,p,dim,zdegree,chi_koszul,chi_derham,verdict\n");
    for block in &report.ideals {
        let nv = block.n + 1;
        for m in &block.modules {
            let j = m.j.map_or_else(|| "loc".to_string(), |j| j.to_string());
            for class in [ComplexClass::Koszul, ComplexClass::DeRham] {
                let entries = match class {
                    ComplexClass::Koszul => &m.koszul,
                    ComplexClass::DeRham => &m.derham,
                };
                for p in 0..=nv {
                    let dim: usize = entries.iter().filter(|e| e.p == p).map(|e| e.dim).sum();
                    let zdegree = match class {
                        ComplexClass::Koszul => -(p as i64),
                        ComplexClass::DeRham => p as i64 - nv as i64,
                    };
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{}",
                        block.n,
                        csv_quote(&block.ideal),
                        j,
                        class.label(),
                        p,
                        dim,
                        zdegree,
                        m.chi_koszul,
                        m.chi_derham,
                        csv_quote(&m.main_theorem)
                    )
                    .unwrap();
                }
            }
        }
    }
    out
}

fn render_entries(entries: &[Entry]) -> String {
    if entries.is_empty() {
        return "none".to_string();
    }
    entries
        .iter()
        .map(|e| {
            let t: Vec<String> = e.t.iter().map(|v| v.to_string()).collect();
            format!(
                "p={} dim={} t=({}) zdeg={}",
                e.p,
                e.dim,
                t.join(","),
                e.zdegree
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn render_table(report: &HomologyReport) -> String {
    let mut out = String::new();
    writeln!(out, "field: {}", report.field).unwrap();
    writeln!(out, "indexing: {}", report.indexing).unwrap();
    writeln!(out, "degrees: {}", report.degrees).unwrap();
    for block in &report.ideals {
        writeln!(out).unwrap();
        writeln!(
            out,
            "ideal ({}), n = {}{}",
            block.ideal,
            block.n,
            if block.radicalized {
                " [input radicalized]"
            } else {
                ""
            }
        )
        .unwrap();
        for m in &block.modules {
            let name = match m.j {
                Some(j) => format!("H^{j}"),
                None => "localization".to_string(),
            };
            let chambers: Vec<String> =
                m.chambers.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            writeln!(out, "  {name} [{}]", m.provenance).unwrap();
            writeln!(out, "    chambers {{{}}}", chambers.join(", ")).unwrap();
            writeln!(out, "    koszul: {}", render_entries(&m.koszul)).unwrap();
            writeln!(out, "    derham: {}", render_entries(&m.derham)).unwrap();
            writeln!(
                out,
                "    chi = ({}, {})  main theorem {}",
                m.chi_koszul, m.chi_derham, m.main_theorem
            )
            .unwrap();
            let localized: Vec<String> = m
                .localized
                .iter()
                .map(|(k, v)| format!("x{k} {v}"))
                .collect();
            writeln!(out, "    localized: {}", localized.join(", ")).unwrap();
            if let Some(o) = &m.oracle {
                writeln!(out, "    oracle: {o}").unwrap();
            }
        }
        if let (Some(k), Some(d)) = (block.additivity_koszul, block.additivity_derham) {
            writeln!(
                out,
                "  additivity: koszul {k}, derham {d} -> {}",
                block.additivity
            )
            .unwrap();
        }
    }
    writeln!(out).unwrap();
    let s = &report.summary;
    writeln!(
        out,
        "summary: {} ideals, {} modules; main theorem {}/{} pass; oracle {} pass / {} fail",
        s.ideals,
        s.modules,
        s.main_theorem_pass,
        s.main_theorem_pass + s.main_theorem_fail,
        s.oracle_pass,
        s.oracle_fail
    )
    .unwrap();
    writeln!(out, "{}", s.verified).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> RunConfig {
        RunConfig {
            nvars: 2,
            source: IdealSource::Inline("x0, x1".to_string()),
            selector: ModuleSelector::AllDegrees,
            field: FieldCfg::Rational,
            oracle_radius: None,
            oracle_cap: None,
            format: OutputFormat::Table,
            output: None,
            strict_squarefree: false,
            workers: None,
        }
    }

    #[test]
    fn corpus_counts_small() {
        // Antichains of nonempty subsets (zero ideal included, unit
        // excluded): 2, 5, 19, 167 for v = 1..4. The spec text quotes the
        // raw Dedekind numbers 20 and 168, which also count the unit
        // antichain; the enumeration here is pinned by the independent
        // filter oracle below.
        assert_eq!(enumerate_ideals(1).len(), 2);
        assert_eq!(enumerate_ideals(2).len(), 5);
        assert_eq!(enumerate_ideals(3).len(), 19);
        assert_eq!(enumerate_ideals(4).len(), 167);
    }

    #[test]
    fn corpus_matches_brute_force_filter() {
        // Independent enumeration: filter every subset of the nonempty
        // supports for the antichain property.
        for v in 1..=3usize {
            let supports: Vec<u32> = (1u32..1 << v).collect();
            let mut count = 0usize;
            for mask in 0u64..1 << supports.len() {
                let chosen: Vec<u32> = supports
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &s)| s)
                    .collect();
                let antichain = chosen
                    .iter()
                    .all(|&a| chosen.iter().all(|&b| a == b || (a & b != a && a & b != b)));
                if antichain {
                    count += 1;
                }
            }
            assert_eq!(enumerate_ideals(v).len(), count);
        }
    }

    #[test]
    fn corpus_v2_lists_expected_ideals() {
        let ideals: Vec<String> = enumerate_ideals(2).iter().map(|i| i.render()).collect();
        assert_eq!(ideals, vec!["0", "x0", "x1", "x0*x1", "x0, x1"]);
    }

    #[test]
    fn corpus_v5_total_and_sampling() {
        let all = enumerate_ideals(5);
        assert_eq!(all.len(), 7580);
        let sample = sample_ideals(5, 100, SAMPLE_SEED);
        assert_eq!(sample.len(), 100);
        // Deterministic.
        assert_eq!(sample, sample_ideals(5, 100, SAMPLE_SEED));
        // All members of the corpus, no duplicates.
        let mut seen = std::collections::HashSet::new();
        for i in &sample {
            assert!(seen.insert(i.render()));
        }
    }

    #[test]
    fn run_single_ideal_maximal() {
        let outcome = run(&base_config()).unwrap();
        assert_eq!(outcome.exit_code, 0);
        assert!(outcome.verified_line.is_none());
        let top = outcome.report.ideals[0]
            .modules
            .iter()
            .find(|m| m.j == Some(2))
            .unwrap();
        assert_eq!((top.chi_koszul, top.chi_derham), (1, 1));
        assert_eq!(top.main_theorem, "PASS");
        assert_eq!(outcome.report.ideals[0].additivity, "PASS");
    }

    #[test]
    fn run_zero_ideal() {
        let mut config = base_config();
        config.nvars = 1;
        config.source = IdealSource::Inline(String::new());
        let outcome = run(&config).unwrap();
        let m = &outcome.report.ideals[0].modules[0];
        assert_eq!((m.chi_koszul, m.chi_derham), (1, -1));
        assert_eq!(m.main_theorem, "PASS");
        assert_eq!(outcome.exit_code, 0);
    }

    #[test]
    fn run_single_degree_selector() {
        let mut config = base_config();
        config.selector = ModuleSelector::Degree(2);
        let outcome = run(&config).unwrap();
        let block = &outcome.report.ideals[0];
        assert_eq!(block.modules.len(), 1);
        assert_eq!(block.modules[0].j, Some(2));
        // Additivity needs every degree, so it is skipped here.
        assert_eq!(block.additivity, "SKIPPED");
        assert_eq!(outcome.exit_code, 0);
    }

    #[test]
    fn run_with_oracle() {
        let mut config = base_config();
        config.source = IdealSource::Inline("x0*x1".to_string());
        config.oracle_radius = Some(4);
        let outcome = run(&config).unwrap();
        let m = outcome.report.ideals[0]
            .modules
            .iter()
            .find(|m| m.j == Some(1))
            .unwrap();
        assert_eq!((m.chi_koszul, m.chi_derham), (-1, -1));
        assert_eq!(m.oracle.as_deref(), Some("PASS"));
        assert_eq!(outcome.exit_code, 0);
    }

    #[test]
    fn run_localization() {
        let mut config = base_config();
        config.selector = ModuleSelector::Localization(VarSet(0b01));
        config.oracle_radius = Some(4);
        let outcome = run(&config).unwrap();
        let m = &outcome.report.ideals[0].modules[0];
        assert_eq!(m.j, None);
        assert_eq!((m.chi_koszul, m.chi_derham), (0, 0));
        assert_eq!(m.localized["0"], "PASS");
        assert_eq!(m.oracle.as_deref(), Some("PASS"));
        assert_eq!(outcome.exit_code, 0);
    }

    #[test]
    fn run_corpus_v2_verified_line() {
        let mut config = base_config();
        config.source = IdealSource::Corpus { sample: None };
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.verified_line.as_deref(), Some("VERIFIED 5/5"));
        assert_eq!(outcome.exit_code, 0);
    }

    #[test]
    fn json_round_trips() {
        let mut config = base_config();
        config.format = OutputFormat::Json;
        config.oracle_radius = Some(4);
        let outcome = run(&config).unwrap();
        let parsed = parse_json(&outcome.rendered).unwrap();
        assert_eq!(parsed, outcome.report);
    }

    #[test]
    fn csv_has_expected_rows() {
        let mut config = base_config();
        config.format = OutputFormat::Csv;
        let outcome = run(&config).unwrap();
        let lines: Vec<&str> = outcome.rendered.lines().collect();
        assert_eq!(
            lines[0],
            "n,ideal,j,class,p,dim,zdegree,chi_koszul,chi_derham,verdict"
        );
        // 3 modules (j = 0,1,2) x 2 classes x 3 spots (p = 0..=2).
        assert_eq!(lines.len(), 1 + 3 * 2 * 3);
        // The ideal contains a comma so the field is quoted.
        assert!(lines[1].starts_with("1,\"x0, x1\",0,koszul,0,"));
    }

    #[test]
    fn determinism_byte_identical_json() {
        let mut config = base_config();
        config.source = IdealSource::Corpus { sample: None };
        config.format = OutputFormat::Json;
        let first = run(&config).unwrap();
        let second = run(&config).unwrap();
        assert_eq!(first.rendered, second.rendered);
    }

    #[test]
    fn summary_matches_recomputation() {
        let mut config = base_config();
        config.source = IdealSource::Corpus { sample: None };
        let outcome = run(&config).unwrap();
        let recomputed = Summary::from_blocks(&outcome.report.ideals);
        assert_eq!(outcome.report.summary, recomputed);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut config = base_config();
        config.field = FieldCfg::Prime(91); // 7 * 13
        assert!(matches!(run(&config), Err(CliError::InvalidConfig(_))));

        let mut config = base_config();
        config.oracle_radius = Some(3);
        assert!(matches!(run(&config), Err(CliError::InvalidConfig(_))));

        let mut config = base_config();
        config.selector = ModuleSelector::Degree(9);
        assert!(matches!(run(&config), Err(CliError::InvalidConfig(_))));

        let mut config = base_config();
        config.source = IdealSource::Inline("x9".to_string());
        assert!(matches!(run(&config), Err(CliError::Ideal(_))));
    }

    #[test]
    fn prime_field_run_matches_rational_dims() {
        let mut config = base_config();
        config.source = IdealSource::Inline("x0*x1".to_string());
        let rational = run(&config).unwrap();
        config.field = FieldCfg::Prime(1_000_003);
        let prime = run(&config).unwrap();
        for (a, b) in rational.report.ideals[0]
            .modules
            .iter()
            .zip(&prime.report.ideals[0].modules)
        {
            assert_eq!(a.chambers, b.chambers);
            assert_eq!((a.chi_koszul, a.chi_derham), (b.chi_koszul, b.chi_derham));
        }
    }
}
