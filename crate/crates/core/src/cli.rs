//! The `gassmann` command line. `run` returns the process exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::arith::{dsets_isomorphic, ramification_diagnostics, splitting_pattern, LocalDatum};
use crate::catalog::{parse_group_file, scan_catalog, ScanJob, CATALOG_ENV};
use crate::equivalence::{
    equivalent, partition_subgroup_classes, subgroup_class_representatives, subgroup_classes_of_index,
    EquivalenceReport, Relation, Triple,
};
use crate::error::{Error, Result};
use crate::fixtures::{self, FIXTURES};
use crate::group::{normal_core, transporter, EnumeratedGroup, SubgroupSet, DEFAULT_MAX_ORDER};
use crate::homdet::{
    det_at_big, det_at_mod, double_cosets, find_variable_mappings, unimodular_search,
    unimodularity_certificate, verify_factor_product, FactorList, ParametricHomMatrix,
};
use crate::linear::{
    build_linear_group, classify_prime_to_p_subgroups, verify_solvable_family, LinearKind,
    DEFAULT_CLASSIFY_MAX_P,
};
use crate::perm::{GroupSpec, Permutation};
use crate::subgroups::DEFAULT_LATTICE_BOUND;

// stdout writes that tolerate a closed pipe
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Gassmann triples, integral permutation modules and splitting simulation.
///
/// Group and subgroup arguments take a group file, the name of a bundled
/// fixture (see `gassmann fixtures`), or for subgroups inline generators
/// separated by `;`, e.g. `"(1 2)(3 4);(1 3)"`.
#[derive(Parser, Debug)]
#[command(name = "gassmann", version, arg_required_else_help = true)]
pub struct Cli {
    /// Machine-readable JSON on standard out.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate a group and list its subgroup conjugacy classes.
    Enumerate(EnumerateArgs),
    /// Decide an equivalence relation between two subgroups.
    Equiv(EquivArgs),
    /// Double cosets and the parametric intertwiner pattern.
    Dcosets(DcosetsArgs),
    /// Determinants, factor checks and unimodularity certificates.
    Det(DetArgs),
    /// Splitting patterns for a decomposition/inertia datum.
    Split(SplitArgs),
    /// SL2, PSL2 and GL2 over a prime field.
    Sl2(Sl2Args),
    /// Scan a directory of group files for nonconjugate equivalent pairs.
    Scan(ScanArgs),
    /// List or check the bundled fixtures.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug)]
pub struct GroupArg {
    /// Ambient group.
    #[arg(long, short)]
    pub group: String,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub group: GroupArg,
    /// Only subgroups of this index.
    #[arg(long)]
    pub index: Option<usize>,
    /// Only subgroups with trivial normal core.
    #[arg(long)]
    pub faithful: bool,
    /// Also group the listed classes into blocks of equivalent subgroups.
    #[arg(long)]
    pub relation: Option<Relation>,
    #[arg(long, default_value_t = DEFAULT_LATTICE_BOUND)]
    pub bound: usize,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub h1: String,
    #[arg(long)]
    pub h2: String,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    /// Ambient group; without it the subgroups are compared inside the
    /// symmetric group on their points.
    #[arg(long, short)]
    pub group: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    #[command(flatten)]
    pub pair: PairArgs,
    /// rational, p-local:<prime>, local-integral or solvable.
    #[arg(long, default_value = "rational")]
    pub relation: Relation,
    /// Exit 1 unless the verdict equals this.
    #[arg(long)]
    pub expect: Option<bool>,
}

#[derive(Args, Debug)]
pub struct DcosetsArgs {
    #[command(flatten)]
    pub group: GroupArg,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Write the pattern in text form to this file.
    #[arg(long)]
    pub write_pattern: Option<PathBuf>,
    /// Print the full pattern.
    #[arg(long)]
    pub show_pattern: bool,
}

#[derive(Args, Debug)]
pub struct DetArgs {
    /// Pattern file (as written by `dcosets --write-pattern`) or fixture.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Values of the variables, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub assign: Option<Vec<BigInt>>,
    /// Reduce the determinant mod this prime.
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
    /// Claimed factorization of the determinant.
    #[arg(long)]
    pub factors: Option<String>,
    /// Search for variable maps under which the factors match.
    #[arg(long)]
    pub find_mapping: bool,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Decide whether the factor product can be a unit.
    #[arg(long)]
    pub certify: bool,
    /// Brute-force search for a unimodular point with entries up to this bound.
    #[arg(long)]
    pub search: Option<i64>,
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    #[command(flatten)]
    pub group: GroupArg,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Decomposition group; `h1`, `h2`, `h1&h2` or a subgroup.
    #[arg(long)]
    pub decomposition: String,
    /// Inertia group, as for the decomposition group.
    #[arg(long)]
    pub inertia: String,
    /// Accept data that fail the I ⊴ D, D/I cyclic checks.
    #[arg(long)]
    pub exploratory: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Sl2,
    Psl2,
    Gl2,
}

impl From<KindArg> for LinearKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sl2 => LinearKind::SL2,
            KindArg::Psl2 => LinearKind::PSL2,
            KindArg::Gl2 => LinearKind::GL2,
        }
    }
}

#[derive(Args, Debug)]
pub struct Sl2Args {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value = "sl2")]
    pub kind: KindArg,
    /// Check the icosahedral solvable-equivalence family at this prime.
    #[arg(long)]
    pub verify_theorem: bool,
    /// Classify the subgroups of order prime to p against the predictions.
    #[arg(long)]
    pub classify: bool,
    #[arg(long, default_value_t = DEFAULT_CLASSIFY_MAX_P)]
    pub max_p: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Directory of `.grp` files; defaults to $GASSMANN_CATALOG.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long, default_value = "local-integral")]
    pub relation: Relation,
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long)]
    pub faithful: bool,
    /// JSON-lines report, appended to and resumed from.
    #[arg(long, short)]
    pub output: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
}

#[derive(Args, Debug)]
pub struct FixturesArgs {
    /// Print this fixture's contents.
    #[arg(long)]
    pub show: Option<String>,
    /// Recompute every checksum; exit 1 on a mismatch.
    #[arg(long)]
    pub verify: bool,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let json = cli.json;
    match &cli.command {
        Command::Enumerate(a) => enumerate(a, json),
        Command::Equiv(a) => equiv(a, json),
        Command::Dcosets(a) => dcosets(a, json),
        Command::Det(a) => det(a, json),
        Command::Split(a) => split(a, json),
        Command::Sl2(a) => sl2(a, json),
        Command::Scan(a) => scan(a, json),
        Command::Fixtures(a) => fixtures_cmd(a, json),
    }
}

fn read_source(arg: &str) -> Result<String> {
    if Path::new(arg).is_file() {
        return Ok(fs::read_to_string(arg)?);
    }
    match fixtures::get(arg) {
        Ok(f) => Ok(f.text.to_string()),
        Err(_) => Err(Error::Precondition(format!("{arg:?} is neither a file nor a bundled fixture"))),
    }
}

pub fn load_group_spec(arg: &str) -> Result<GroupSpec> {
    if Path::new(arg).is_file() {
        return parse_group_file(arg);
    }
    GroupSpec::parse(&read_source(arg)?)
}

fn load_group(a: &GroupArg) -> Result<EnumeratedGroup> {
    EnumeratedGroup::enumerate(load_group_spec(&a.group)?, a.max_order)
}

/// A subgroup of `g` from a file, a fixture or inline generators.
pub fn load_subgroup(g: &EnumeratedGroup, arg: &str) -> Result<SubgroupSet> {
    if arg.trim_start().starts_with('(') {
        let perms = arg
            .split(';')
            .map(|s| Permutation::parse(s.trim(), g.degree()))
            .collect::<Result<Vec<_>>>()?;
        return g.subgroup_from_perms(&perms);
    }
    g.subgroup_from_spec(&load_group_spec(arg)?)
}

fn print_json(v: &serde_json::Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn enumerate(a: &EnumerateArgs, json: bool) -> Result<i32> {
    let g = load_group(&a.group)?;
    let classes = match a.index {
        Some(i) => subgroup_classes_of_index(&g, i, a.faithful)?,
        None => subgroup_class_representatives(&g, a.bound)?
            .into_iter()
            .filter(|s| !a.faithful || normal_core(&g, s).is_trivial())
            .collect(),
    };
    let blocks = match a.relation {
        Some(r) => Some(partition_subgroup_classes(&g, &classes, r)?),
        None => None,
    };
    if json {
        let rows: Vec<_> = classes
            .iter()
            .map(|s| {
                json!({
                    "order": s.order(),
                    "index": g.order() / s.order(),
                    "trivial_core": normal_core(&g, s).is_trivial(),
                    "generators": s.generator_strings(&g),
                })
            })
            .collect();
        let nontrivial: Option<Vec<&Vec<usize>>> = blocks.as_ref().map(|b| b.nontrivial().collect());
        print_json(&json!({
            "order": g.order(),
            "degree": g.degree(),
            "conjugacy_classes": g.conjugacy_classes().len(),
            "subgroup_classes": rows,
            "nontrivial_blocks": nontrivial,
        }));
        return Ok(EXIT_OK);
    }
    outln!("order {}, degree {}, {} conjugacy classes", g.order(), g.degree(), g.conjugacy_classes().len());
    outln!("{} subgroup classes", classes.len());
    for (i, s) in classes.iter().enumerate() {
        let core = if normal_core(&g, s).is_trivial() { "core 1" } else { "" };
        outln!(
            "  [{i}] order {:<6} index {:<6} {:<7} {}",
            s.order(),
            g.order() / s.order(),
            core,
            s.generator_strings(&g).join(" ")
        );
    }
    if let (Some(p), Some(r)) = (&blocks, a.relation) {
        let nontrivial: Vec<_> = p.nontrivial().collect();
        outln!("{} nontrivial {r} blocks", nontrivial.len());
        for b in nontrivial {
            outln!("  {b:?}");
        }
    }
    Ok(EXIT_OK)
}

fn expect_code(verdict: bool, expect: Option<bool>) -> i32 {
    match expect {
        Some(e) if e != verdict => EXIT_FALSE,
        _ => EXIT_OK,
    }
}

fn print_report(r: &EquivalenceReport) {
    outln!("{}: {}", r.relation, r.verdict);
    outln!(
        "  class subgroups: {} and {} over {} ambient classes",
        r.subgroup_counts.0, r.subgroup_counts.1, r.ambient_classes
    );
    for c in &r.components {
        outln!("  {}: {}", c.relation, c.verdict);
    }
    if let Some(m) = r.marks_agree {
        outln!("  marks agree: {m}");
    }
    if let Some(d) = &r.discrepancy {
        outln!("  discrepancy: K = <{}> of order {}", d.subgroup_gens.join(", "), d.order);
        outln!("    counts {} vs {}", d.count1, d.count2);
        if let (Some(a), Some(b)) = (d.chi1, d.chi2) {
            outln!("    marks {a} vs {b}");
        }
    }
}

fn equiv(a: &EquivArgs, json: bool) -> Result<i32> {
    let (report, conjugate) = match &a.group {
        Some(gs) => {
            let g = EnumeratedGroup::enumerate(load_group_spec(gs)?, a.max_order)?;
            let h1 = load_subgroup(&g, &a.pair.h1)?;
            let h2 = load_subgroup(&g, &a.pair.h2)?;
            let t = Triple::InGroup { g: &g, h1: &h1, h2: &h2 };
            (equivalent(&t, a.relation)?, Some(transporter(&g, &h1, &h2).is_some()))
        }
        None => {
            let h1 = EnumeratedGroup::enumerate(load_group_spec(&a.pair.h1)?, a.max_order)?;
            let h2 = EnumeratedGroup::enumerate(load_group_spec(&a.pair.h2)?, a.max_order)?;
            (equivalent(&Triple::InSymmetric { h1: &h1, h2: &h2 }, a.relation)?, None)
        }
    };
    if json {
        let mut v = serde_json::to_value(&report)?;
        if let Some(c) = conjugate {
            v["conjugate"] = json!(c);
        }
        print_json(&v);
    } else {
        if let Some(c) = conjugate {
            outln!("conjugate: {c}");
        }
        print_report(&report);
    }
    Ok(expect_code(report.verdict, a.expect))
}

fn dcosets(a: &DcosetsArgs, json: bool) -> Result<i32> {
    let g = load_group(&a.group)?;
    let h1 = load_subgroup(&g, &a.pair.h1)?;
    let h2 = load_subgroup(&g, &a.pair.h2)?;
    let dc = double_cosets(&g, &h1, &h2)?;
    if let Some(path) = &a.write_pattern {
        fs::write(path, dc.pattern.to_text())?;
    }
    let sizes: Vec<usize> = dc.cells.iter().map(|c| c.size).collect();
    if json {
        print_json(&json!({
            "index": dc.pattern.dim(),
            "cells": dc.cells.iter().map(|c| json!({
                "representative": g.element(c.representative).to_string(),
                "size": c.size,
            })).collect::<Vec<_>>(),
            "pattern": a.show_pattern.then(|| dc.pattern.to_text()),
        }));
        return Ok(EXIT_OK);
    }
    outln!("index {}, {} double cosets, sizes {:?}", dc.pattern.dim(), dc.cells.len(), sizes);
    for (i, c) in dc.cells.iter().enumerate() {
        outln!("  x{} size {:<4} {}", i + 1, c.size, g.element(c.representative));
    }
    if a.show_pattern {
        out!("{}", dc.pattern.to_text());
    }
    Ok(EXIT_OK)
}

fn det(a: &DetArgs, json: bool) -> Result<i32> {
    let pattern = a
        .pattern
        .as_deref()
        .map(|p| ParametricHomMatrix::parse(&read_source(p)?))
        .transpose()?;
    let factors = a.factors.as_deref().map(|f| FactorList::parse(&read_source(f)?)).transpose()?;
    let mut out = serde_json::Map::new();
    let mut code = EXIT_OK;
    let need_pattern = || {
        Error::Precondition("this operation needs --pattern".into())
    };

    if let Some(x) = &a.assign {
        let p = pattern.as_ref().ok_or_else(need_pattern)?;
        if x.len() != p.nvars() {
            return Err(Error::Precondition(format!(
                "{} values given, the pattern has {} variables",
                x.len(),
                p.nvars()
            )));
        }
        match a.modulus {
            Some(q) => {
                let small = x
                    .iter()
                    .map(|v| i64::try_from(v).map_err(|_| Error::Precondition("value too large for --mod".into())))
                    .collect::<Result<Vec<i64>>>()?;
                let d = det_at_mod(p, &small, q);
                out.insert("det_mod".into(), json!(d));
                if !json {
                    outln!("{d}");
                }
            }
            None => {
                let d = det_at_big(p, x);
                out.insert("det".into(), json!(d.to_string()));
                if !json {
                    outln!("{d}");
                }
            }
        }
    }

    if let Some(f) = &factors {
        if a.find_mapping {
            let p = pattern.as_ref().ok_or_else(need_pattern)?;
            let maps = find_variable_mappings(p, f, a.trials, a.seed)?;
            if !json {
                outln!("{} variable maps match", maps.len());
                for m in &maps {
                    let one: Vec<usize> = m.mapping.iter().map(|v| v + 1).collect();
                    outln!("  vars {:?} orientation {:+}", one, m.orientation);
                }
            }
            if maps.is_empty() {
                code = EXIT_FALSE;
            }
            out.insert("mappings".into(), serde_json::to_value(&maps)?);
        } else if let Some(p) = &pattern {
            let check = verify_factor_product(p, f, a.trials, a.seed)?;
            if !json {
                outln!(
                    "factor product {} over {} trials (orientation {:+})",
                    if check.holds { "holds" } else { "fails" },
                    check.trials,
                    check.orientation
                );
                if let Some(m) = &check.mismatch {
                    outln!("  at {:?}: det {} vs product {}", m.assignment, m.det, m.product);
                }
            }
            if !check.holds {
                code = EXIT_FALSE;
            }
            out.insert("factor_check".into(), serde_json::to_value(&check)?);
        }
    }

    if a.certify {
        let f = factors
            .as_ref()
            .ok_or_else(|| Error::Precondition("--certify needs --factors".into()))?;
        let cert = unimodularity_certificate(f, pattern.as_ref())?;
        if !json {
            let status = serde_json::to_value(&cert.status)?;
            outln!("certificate: {}", status["status"].as_str().unwrap_or("?"));
            if let Some(r) = status.get("reason").and_then(|r| r.as_str()) {
                outln!("  {r}");
            }
            if let Some(x) = status.get("assignment") {
                outln!("  witness {x}");
            }
            outln!("  {} systems", cert.systems.len());
        }
        out.insert("certificate".into(), serde_json::to_value(&cert)?);
    }

    if let Some(bound) = a.search {
        let p = pattern.as_ref().ok_or_else(need_pattern)?;
        let start = Instant::now();
        let found = unimodular_search(p, bound)?;
        if !json {
            match &found.assignment {
                Some(x) => outln!("unimodular point {x:?}"),
                None => outln!("no unimodular point with entries in [-{bound}, {bound}]"),
            }
            outln!(
                "  {} points, {} exact determinants, {:.1?}",
                found.examined,
                found.exact_evaluations,
                start.elapsed()
            );
        }
        out.insert("search".into(), serde_json::to_value(&found)?);
    }

    if out.is_empty() && !a.find_mapping {
        return Err(Error::Precondition(
            "nothing to do: give --assign, --factors, --certify or --search".into(),
        ));
    }
    if json {
        print_json(&serde_json::Value::Object(out));
    }
    Ok(code)
}

fn split(a: &SplitArgs, json: bool) -> Result<i32> {
    let g = load_group(&a.group)?;
    let h1 = load_subgroup(&g, &a.pair.h1)?;
    let h2 = load_subgroup(&g, &a.pair.h2)?;
    let pick = |arg: &str| -> Result<SubgroupSet> {
        match arg {
            "h1" => Ok(h1.clone()),
            "h2" => Ok(h2.clone()),
            "h1&h2" => Ok(g.intersection(&h1, &h2)),
            "1" => Ok(g.trivial()),
            other => load_subgroup(&g, other),
        }
    };
    let d = pick(&a.decomposition)?;
    let i = pick(&a.inertia)?;
    let datum = if a.exploratory {
        LocalDatum::exploratory(d.clone(), i)
    } else {
        LocalDatum::new(&g, d.clone(), i)?
    };
    let p1 = splitting_pattern(&g, &h1, &datum)?;
    let p2 = splitting_pattern(&g, &h2, &datum)?;
    let diag = ramification_diagnostics(&p1, &p2);
    let dsets = dsets_isomorphic(&g, &h1, &h2, &d);
    if json {
        print_json(&json!({
            "arithmetic": datum.is_arithmetic(),
            "h1": serde_json::to_value(&p1)?,
            "h2": serde_json::to_value(&p2)?,
            "diagnostics": serde_json::to_value(&diag)?,
            "dsets": serde_json::to_value(&dsets)?,
        }));
        return Ok(EXIT_OK);
    }
    if !datum.is_arithmetic() {
        outln!("(exploratory datum)");
    }
    outln!("|D| = {}, |I| = {}", d.order(), datum.inertia.order());
    outln!("H1: {p1}");
    outln!("H2: {p2}");
    outln!("sum e: {} vs {}", diag.sum_e.0, diag.sum_e.1);
    outln!("prod e: {} vs {}", diag.prod_e.0, diag.prod_e.1);
    outln!("same (e, f) multiset: {}", diag.multiset_equal);
    outln!(
        "D-sets isomorphic: {} (fixed points {} vs {})",
        dsets.isomorphic, dsets.fixed_points.0, dsets.fixed_points.1
    );
    Ok(EXIT_OK)
}

fn sl2(a: &Sl2Args, json: bool) -> Result<i32> {
    let mut out = serde_json::Map::new();
    let mut code = EXIT_OK;
    if a.verify_theorem {
        let start = Instant::now();
        let r = verify_solvable_family(a.p, a.seed)?;
        let holds = r.sl2.verdict && r.psl2.verdict;
        if !holds {
            code = EXIT_FALSE;
        }
        if json {
            out.insert(
                "family".into(),
                json!({
                    "p": r.p,
                    "sl2_order": LinearKind::SL2.order(a.p),
                    "psl2_order": LinearKind::PSL2.order(a.p),
                    "h1_order": r.h1_order,
                    "intersection_order": r.intersection_order,
                    "moved_classes": r.moved_classes,
                    "solvable_sl2": r.sl2.verdict,
                    "solvable_psl2": r.psl2.verdict,
                    "psl2_image_class_sizes": r.psl2_class_sizes,
                }),
            );
        } else {
            outln!("p = {}: |SL2| = {}, |PSL2| = {}", r.p, LinearKind::SL2.order(a.p), LinearKind::PSL2.order(a.p));
            outln!("  |H1| = {}, |H1 ∩ H2| = {}, H1 and H2 not conjugate", r.h1_order, r.intersection_order);
            outln!("  classes moved by the outer automorphism: {}", r.moved_classes);
            outln!("  solvably equivalent in SL2: {}", r.sl2.verdict);
            outln!("  solvably equivalent in PSL2: {}", r.psl2.verdict);
            outln!("  ({:.1?})", start.elapsed());
        }
    }
    if a.classify || !a.verify_theorem {
        let handle = build_linear_group(a.kind.into(), a.p)?;
        if !matches!(handle.kind, LinearKind::SL2) {
            if a.classify {
                return Err(Error::Precondition("classification is for SL2".into()));
            }
            if json {
                out.insert("order".into(), json!(handle.group.order()));
                out.insert("degree".into(), json!(handle.group.degree()));
            } else {
                outln!("{}(F_{}) of order {} acting on {} points", handle.kind, a.p, handle.group.order(), handle.group.degree());
            }
            if json {
                print_json(&serde_json::Value::Object(out));
            }
            return Ok(code);
        }
        let c = classify_prime_to_p_subgroups(&handle, a.max_p)?;
        if !c.agrees() {
            code = EXIT_FALSE;
        }
        if json {
            out.insert("classification".into(), serde_json::to_value(&c)?);
        } else {
            outln!("SL2(F_{}) of order {}", a.p, handle.group.order());
            out!("{}", c.to_text());
        }
    }
    if json {
        print_json(&serde_json::Value::Object(out));
    }
    Ok(code)
}

fn scan(a: &ScanArgs, json: bool) -> Result<i32> {
    let catalog = match &a.catalog {
        Some(c) => c.clone(),
        None => std::env::var_os(CATALOG_ENV)
            .map(PathBuf::from)
            .ok_or_else(|| Error::Precondition(format!("no --catalog given and ${CATALOG_ENV} is unset")))?,
    };
    let mut job = ScanJob::new(catalog, a.relation, &a.output);
    job.index_filter = a.index;
    job.faithful_only = a.faithful;
    job.max_order = a.max_order;
    let outcome = scan_catalog(&job)?;
    let errors = outcome.records.iter().filter(|r| r.error.is_some()).count();
    let pairs = outcome.records.len() - errors;
    if json {
        print_json(&json!({
            "pairs": pairs,
            "errors": errors,
            "skipped": outcome.skipped,
            "output": a.output,
        }));
    } else {
        for r in &outcome.records {
            match (&r.error, r.pair_key()) {
                (Some(e), _) => outln!("{}: error: {e}", r.group_label),
                (None, Some(k)) => outln!("{} (order {}): {k}", r.group_label, r.group_order),
                _ => {}
            }
        }
        outln!(
            "{pairs} pairs, {errors} errors, {} groups skipped as already reported",
            outcome.skipped.len()
        );
    }
    Ok(EXIT_OK)
}

fn fixtures_cmd(a: &FixturesArgs, json: bool) -> Result<i32> {
    if let Some(name) = &a.show {
        out!("{}", fixtures::get(name)?.text);
        return Ok(EXIT_OK);
    }
    let bad: Vec<&str> = FIXTURES.iter().filter(|f| !f.checksum_ok()).map(|f| f.name).collect();
    if json {
        print_json(&json!(FIXTURES
            .iter()
            .map(|f| json!({
                "name": f.name,
                "description": f.description,
                "sha256": f.sha256,
                "checksum_ok": f.checksum_ok(),
            }))
            .collect::<Vec<_>>()));
    } else {
        for f in FIXTURES {
            let mark = if a.verify { if f.checksum_ok() { "ok  " } else { "BAD " } } else { "" };
            outln!("{mark}{:<20} {}", f.name, f.description);
        }
    }
    Ok(if a.verify && !bad.is_empty() { EXIT_FALSE } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run(["gassmann"]), EXIT_USAGE);
        assert_eq!(run(["gassmann", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["gassmann", "equiv", "--h1", "x"]), EXIT_USAGE);
    }

    #[test]
    fn errors_exit_2() {
        assert_eq!(run(["gassmann", "enumerate", "--group", "/no/such/file.grp"]), EXIT_ERROR);
    }

    #[test]
    fn expect_controls_exit() {
        let s4 = tempfile::NamedTempFile::new().unwrap();
        fs::write(s4.path(), "degree 4\n(1 2 3 4)\n(1 2)\n").unwrap();
        let g = s4.path().to_str().unwrap();
        let base = ["gassmann", "equiv", "--group", g, "--h1", "(1 2)", "--h2", "(1 2)(3 4)"];
        let with = |e: &'static str| base.iter().copied().chain(["--expect", e]).collect::<Vec<_>>();
        assert_eq!(run(with("false")), EXIT_OK);
        assert_eq!(run(with("true")), EXIT_FALSE);
    }
}
