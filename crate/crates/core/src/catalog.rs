//! Batch scans over a directory of group files, with JSON-lines reports.
//!
//! The report starts with a `{"schema":1}` line followed by one record per
//! line. A rerun against an existing report skips every group label already
//! present, so an interrupted scan can be resumed.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equivalence::{
    equivalent, partition_subgroup_classes, subgroup_class_representatives, subgroup_classes_of_index,
    Discrepancy, Relation, Triple,
};
use crate::error::{Error, Result};
use crate::group::{normal_core, EnumeratedGroup, SubgroupSet, DEFAULT_MAX_ORDER};
use crate::perm::GroupSpec;
use crate::subgroups::DEFAULT_LATTICE_BOUND;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the default catalog directory.
pub const CATALOG_ENV: &str = "GASSMANN_CATALOG";

pub fn parse_group_file(path: impl AsRef<Path>) -> Result<GroupSpec> {
    GroupSpec::parse(&fs::read_to_string(path)?)
}

#[derive(Clone, Debug)]
pub struct ScanJob {
    pub catalog_path: PathBuf,
    pub relation: Relation,
    pub index_filter: Option<usize>,
    pub faithful_only: bool,
    pub output_path: PathBuf,
    /// Largest group order enumerated.
    pub max_order: usize,
    /// Lattice bound when no index filter is given.
    pub lattice_bound: usize,
}

impl ScanJob {
    pub fn new(catalog_path: impl Into<PathBuf>, relation: Relation, output_path: impl Into<PathBuf>) -> Self {
        ScanJob {
            catalog_path: catalog_path.into(),
            relation,
            index_filter: None,
            faithful_only: false,
            output_path: output_path.into(),
            max_order: DEFAULT_MAX_ORDER,
            lattice_bound: DEFAULT_LATTICE_BOUND,
        }
    }

    /// The `.grp` files of the catalog, sorted by name.
    pub fn group_files(&self) -> Result<Vec<PathBuf>> {
        let mut files: Vec<PathBuf> = fs::read_dir(&self.catalog_path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "grp"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(Error::Precondition(format!(
                "no .grp files in {}",
                self.catalog_path.display()
            )));
        }
        if self.index_filter == Some(0) {
            return Err(Error::Precondition("index filter must be positive".into()));
        }
        Ok(files)
    }
}

/// Verdicts for one pair along the hierarchy rational ⊇ locally integral ⊇
/// solvable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub rational: bool,
    pub local_integral: bool,
    pub solvable: bool,
}

impl Verdicts {
    pub fn monotone(&self) -> bool {
        (!self.solvable || self.local_integral) && (!self.local_integral || self.rational)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub group_label: String,
    pub group_order: usize,
    /// Sorted generator lists of the two subgroups, smaller list first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Verdicts>,
    /// The first relation of the hierarchy that fails, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
    /// Witness pairing under the scanned relation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: u64,
}

impl ReportRecord {
    pub fn pair_key(&self) -> Option<String> {
        self.pair.as_ref().map(|[a, b]| format!("{} | {}", a.join(" "), b.join(" ")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanOutcome {
    /// Records written by this run, in catalog order.
    pub records: Vec<ReportRecord>,
    pub skipped: Vec<String>,
}

fn label_for(path: &Path, spec: &GroupSpec) -> String {
    spec.label().map(str::to_string).unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    })
}

/// Labels already present in a report, after checking its header.
pub fn read_report(path: &Path) -> Result<Vec<ReportRecord>> {
    let file = File::open(path)?;
    let mut lines = BufReader::new(file).lines();
    let header: serde_json::Value = match lines.next() {
        Some(line) => serde_json::from_str(&line?)?,
        None => return Ok(Vec::new()),
    };
    if header.get("schema").and_then(|v| v.as_u64()) != Some(u64::from(SCHEMA_VERSION)) {
        return Err(Error::Precondition(format!(
            "{} is not a schema {SCHEMA_VERSION} report",
            path.display()
        )));
    }
    let mut out = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

fn scan_group(job: &ScanJob, path: &Path) -> (String, Vec<ReportRecord>) {
    let start = Instant::now();
    let spec = match parse_group_file(path) {
        Ok(s) => s,
        Err(e) => {
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            return (label.clone(), vec![error_record(label, 0, &e, start)]);
        }
    };
    let label = label_for(path, &spec);
    let records = match scan_spec(job, &label, spec, start) {
        Ok(r) => r,
        Err((order, e)) => vec![error_record(label.clone(), order, &e, start)],
    };
    (label, records)
}

fn error_record(label: String, order: usize, e: &Error, start: Instant) -> ReportRecord {
    ReportRecord {
        group_label: label,
        group_order: order,
        pair: None,
        subgroup_order: None,
        verdicts: None,
        discrepancy: None,
        witness: Vec::new(),
        error: Some(e.to_string()),
        millis: start.elapsed().as_millis() as u64,
    }
}

fn scan_spec(
    job: &ScanJob,
    label: &str,
    spec: GroupSpec,
    start: Instant,
) -> std::result::Result<Vec<ReportRecord>, (usize, Error)> {
    let g = EnumeratedGroup::enumerate(spec, job.max_order).map_err(|e| (0, e))?;
    let order = g.order();
    let fail = |e| (order, e);
    let candidates: Vec<SubgroupSet> = match job.index_filter {
        Some(i) => subgroup_classes_of_index(&g, i, job.faithful_only).map_err(fail)?,
        None => subgroup_class_representatives(&g, job.lattice_bound)
            .map_err(fail)?
            .into_iter()
            .filter(|s| !job.faithful_only || normal_core(&g, s).is_trivial())
            .collect(),
    };
    let partition = partition_subgroup_classes(&g, &candidates, job.relation).map_err(fail)?;
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for block in partition.nontrivial() {
        for (n, &i) in block.iter().enumerate() {
            for &j in &block[n + 1..] {
                let (a, b) = (&candidates[i], &candidates[j]);
                let mut pair = [a.generator_strings(&g), b.generator_strings(&g)];
                pair.sort();
                if !seen.insert(pair.clone()) {
                    continue;
                }
                let t = Triple::InGroup { g: &g, h1: a, h2: b };
                let mut first_failure = None;
                let mut verdict = |r: Relation| -> Result<bool> {
                    let rep = equivalent(&t, r)?;
                    if !rep.verdict && first_failure.is_none() {
                        first_failure = rep.discrepancy;
                    }
                    Ok(rep.verdict)
                };
                let verdicts = Verdicts {
                    rational: verdict(Relation::Rational).map_err(fail)?,
                    local_integral: verdict(Relation::LocalIntegral).map_err(fail)?,
                    solvable: verdict(Relation::Solvable).map_err(fail)?,
                };
                assert!(verdicts.monotone(), "verdicts break the hierarchy: {verdicts:?}");
                let scanned = equivalent(&t, job.relation).map_err(fail)?;
                assert!(scanned.verdict, "partition and pairwise verdict disagree");
                records.push(ReportRecord {
                    group_label: label.to_string(),
                    group_order: order,
                    pair: Some(pair),
                    subgroup_order: Some(a.order()),
                    verdicts: Some(verdicts),
                    discrepancy: first_failure,
                    witness: scanned.witness,
                    error: None,
                    millis: start.elapsed().as_millis() as u64,
                });
            }
        }
    }
    Ok(records)
}

/// Runs the scan, appending to `job.output_path`. Groups are processed in
/// parallel and written in catalog order by a single writer.
pub fn scan_catalog(job: &ScanJob) -> Result<ScanOutcome> {
    let files = job.group_files()?;
    let existing = if job.output_path.exists() {
        read_report(&job.output_path)?
    } else {
        Vec::new()
    };
    let done: BTreeSet<String> = existing.iter().map(|r| r.group_label.clone()).collect();
    let mut out = OpenOptions::new().create(true).append(true).open(&job.output_path)?;
    if fs::metadata(&job.output_path)?.len() == 0 {
        writeln!(out, "{}", serde_json::json!({ "schema": SCHEMA_VERSION }))?;
    }

    // labels need a parse; unparseable files are keyed by file stem
    let mut pending = Vec::new();
    let mut outcome = ScanOutcome::default();
    for f in &files {
        let label = parse_group_file(f)
            .map(|s| label_for(f, &s))
            .unwrap_or_else(|_| f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
        if done.contains(&label) {
            outcome.skipped.push(label);
        } else {
            pending.push(f.clone());
        }
    }

    let (tx, rx) = mpsc::channel::<(usize, Vec<ReportRecord>)>();
    let records = &mut outcome.records;
    std::thread::scope(|s| {
        // the writer must not occupy a rayon worker
        let writer = s.spawn(move || -> std::io::Result<()> {
            let mut buffer: BTreeMap<usize, Vec<ReportRecord>> = BTreeMap::new();
            let mut next = 0;
            for (i, batch) in rx {
                buffer.insert(i, batch);
                while let Some(batch) = buffer.remove(&next) {
                    for r in &batch {
                        if let Some(v) = &r.verdicts {
                            assert!(v.monotone());
                        }
                        let line = serde_json::to_string(r).expect("records serialize");
                        writeln!(out, "{line}")?;
                    }
                    records.extend(batch);
                    next += 1;
                }
            }
            out.flush()
        });
        pending.par_iter().enumerate().for_each_with(tx, |tx, (i, f)| {
            let (_, batch) = scan_group(job, f);
            let _ = tx.send((i, batch));
        });
        writer.join().expect("writer thread panicked")
    })?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_has_no_rational_pairs_and_resume_skips() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("s4.grp"), "degree 4\n(1 2 3 4)\n(1 2)\n").unwrap();
        fs::write(dir.path().join("bad.grp"), "degree 3\n(1 2\n").unwrap();
        let out = dir.path().join("report.jsonl");
        let job = ScanJob::new(dir.path(), Relation::Rational, &out);
        let first = scan_catalog(&job).unwrap();
        // one error record for the malformed file, nothing for S4
        assert_eq!(first.records.len(), 1);
        assert!(first.records[0].error.is_some());
        let again = scan_catalog(&job).unwrap();
        assert!(again.records.is_empty());
        assert_eq!(again.skipped, vec!["bad".to_string()]);
        let text = fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("{\"schema\":1}\n"));
        assert_eq!(read_report(&out).unwrap().len(), 1);
    }

    #[test]
    fn empty_catalog_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let job = ScanJob::new(dir.path(), Relation::Rational, dir.path().join("r.jsonl"));
        assert!(matches!(scan_catalog(&job), Err(Error::Precondition(_))));
    }
}
