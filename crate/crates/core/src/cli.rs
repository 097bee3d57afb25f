//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::j2::checks::maximal_subgroup_orders;
use crate::j2::{
    builtin_resolver, construct_image, double_coset_graph, run_verification, verify_identities, ReferenceData,
};
use crate::presentation::{
    build_progenitor_quotient_presentation, cayley_presentation, parse_word_list, Presentation, ProgenitorSpec,
    VerifiedPresentation, DEFAULT_CAYLEY_BOUND,
};
use crate::todd_coxeter::{enumerate, EnumerationOptions, Strategy, DEFAULT_MAX_DEFINITIONS};
use crate::words::{Letter, Word};

#[derive(Debug, Parser)]
#[command(
    name = "symgen",
    about = "Symmetric presentations, coset enumeration and the J2 construction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the whole pipeline and report every check.
    Verify(Common),
    /// Write the double coset graph in DOT format.
    Graph(Common),
    /// Run coset enumeration only.
    Enumerate(EnumerateArgs),
    /// Check the identity catalog.
    Relations(Common),
    /// Orders of the subgroups in the maximal subgroup table.
    Subgroups(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Progenitor file; defaults to the built-in J2 data.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Maximum number of coset definitions.
    #[arg(long, default_value_t = DEFAULT_MAX_DEFINITIONS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub limit: usize,
    #[arg(long, default_value = "hlt")]
    pub strategy: Strategy,
    /// Write the main output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also fail on identity-catalog and subgroup-table mismatches.
    #[arg(long)]
    pub strict: bool,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Presentation file (one relator per line); overrides the progenitor.
    pub presentation: Option<PathBuf>,
    /// Subgroup generator words, one per line. Defaults to the trivial
    /// subgroup for a presentation file and the control group otherwise.
    #[arg(long)]
    pub subgroup: Option<PathBuf>,
    /// Enumerate the progenitor without its additional relations.
    #[arg(long)]
    pub drop_relations: bool,
    /// Print every definition and coincidence.
    #[arg(long)]
    pub trace: bool,
}

impl Common {
    fn options(&self) -> EnumerationOptions {
        EnumerationOptions {
            strategy: self.strategy,
            max_definitions: self.limit,
            ..Default::default()
        }
    }

    fn data(&self) -> Result<ReferenceData, String> {
        match &self.spec {
            None => Ok(ReferenceData::builtin()),
            Some(path) => ProgenitorSpec::load(path)
                .map(ReferenceData::with_spec)
                .map_err(|e| format!("{}: {e}", path.display())),
        }
    }

    fn emit(&self, text: &str) -> Result<(), String> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match &cli.command {
        Command::Verify(c) => verify(c),
        Command::Graph(c) => graph(c),
        Command::Enumerate(a) => enumerate_cmd(a),
        Command::Relations(c) => relations(c),
        Command::Subgroups(c) => subgroups(c),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn verify(c: &Common) -> Result<ExitCode, String> {
    let data = c.data()?;
    let (_, report) = run_verification(&data, &c.options()).map_err(|e| e.to_string())?;
    if c.json {
        c.emit(&to_json(&report))?;
    } else {
        c.emit(&report.summary())?;
    }
    Ok(if report.passed(c.strict) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn graph(c: &Common) -> Result<ExitCode, String> {
    let data = c.data()?;
    let image = construct_image(&data.spec, &c.options()).map_err(|e| e.to_string())?;
    let graph = double_coset_graph(&image);
    if c.json {
        c.emit(&to_json(&graph))?;
    } else {
        c.emit(&graph.to_dot())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn relations(c: &Common) -> Result<ExitCode, String> {
    let data = c.data()?;
    let image = construct_image(&data.spec, &c.options()).map_err(|e| e.to_string())?;
    let results = verify_identities(&image, &data.catalog);
    if c.json {
        c.emit(&to_json(&results))?;
    } else {
        let width = results.iter().map(|r| r.label.len()).max().unwrap_or(0);
        let mut s = String::new();
        for r in &results {
            let mark = if r.passed { "pass" } else { "FAIL" };
            s.push_str(&format!(
                "{mark}  {:width$}  {}  ({})\n",
                r.label, r.statement, r.detail
            ));
        }
        c.emit(&s)?;
    }
    let ok = !c.strict || results.iter().all(|r| r.passed);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn subgroups(c: &Common) -> Result<ExitCode, String> {
    let data = c.data()?;
    let image = construct_image(&data.spec, &c.options()).map_err(|e| e.to_string())?;
    let rows = maximal_subgroup_orders(&image, &data.subgroups);
    if c.json {
        c.emit(&to_json(&rows))?;
    } else {
        let mut s = String::new();
        for r in &rows {
            match (&r.skipped, r.order) {
                (Some(why), _) => s.push_str(&format!("skip  {}  {why}\n", r.name)),
                (None, Some(order)) => {
                    let mark = if r.passed { "pass" } else { "FAIL" };
                    s.push_str(&format!(
                        "{mark}  {}  order {order}, expected {}\n",
                        r.name, r.expected_order
                    ));
                }
                (None, None) => {}
            }
        }
        c.emit(&s)?;
    }
    let ok = rows.iter().all(|r| r.passed || r.skipped.is_some());
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn enumerate_cmd(a: &EnumerateArgs) -> Result<ExitCode, String> {
    let c = &a.common;
    let options = EnumerationOptions {
        trace: a.trace,
        ..c.options()
    };
    let (presentation, default_subgroup) = match &a.presentation {
        Some(path) => {
            let p = Presentation::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
            (p, Vec::new())
        }
        None => {
            let mut spec = match &c.spec {
                Some(path) => ProgenitorSpec::load(path).map_err(|e| format!("{}: {e}", path.display()))?,
                None => {
                    ProgenitorSpec::parse_with(crate::j2::PROGENITOR, &builtin_resolver).map_err(|e| e.to_string())?
                }
            };
            if a.drop_relations {
                spec = spec.without_relations();
            }
            let cayley =
                cayley_presentation(spec.control(), spec.symbols(), DEFAULT_CAYLEY_BOUND).map_err(|e| e.to_string())?;
            let verified = VerifiedPresentation::verify(cayley, spec.control(), &EnumerationOptions::default())
                .map_err(|e| e.to_string())?;
            let p = build_progenitor_quotient_presentation(&spec, &verified).map_err(|e| e.to_string())?;
            let sub: Vec<Word> = spec
                .symbols()
                .iter()
                .map(|&s| Word::letter(Letter::control(s)))
                .collect();
            (p, sub)
        }
    };
    let subgroup = match &a.subgroup {
        Some(path) => parse_word_list(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?,
        None => default_subgroup,
    };
    let e = enumerate(&presentation, &subgroup, &options).map_err(|e| format!("enumeration: {e}"))?;
    let text = if c.json {
        to_json(&serde_json::json!({ "cosets": e.index(), "statistics": e.stats }))
    } else {
        let mut s = String::new();
        for line in &e.trace {
            s.push_str(line);
            s.push('\n');
        }
        s.push_str(&format!("{} cosets\n", e.index()));
        s.push_str(&format!("max live cosets: {}\n", e.stats.max_live));
        s.push_str(&format!("definitions: {}\n", e.stats.definitions));
        s.push_str(&format!("coincidences: {}\n", e.stats.coincidences));
        s
    };
    c.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}
