//! Corpus files and whole-corpus sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::suites::{run_all, Member, SuiteReport};
use super::{classify, ClassificationReport, Outcome};
use crate::error::{Error, Result};
use crate::group::{enumerate_capped, GroupSpec, DEFAULT_CAP};

pub const DEFAULT_CORPUS: &str = include_str!("default_corpus.txt");

/// One non-blank, non-comment line of a corpus file.
#[derive(Clone, Debug)]
pub struct CorpusLine {
    /// 1-based line number.
    pub line: usize,
    pub text: String,
    pub spec: Result<GroupSpec>,
}

/// Parses a corpus file. `#` starts a comment; blank lines are skipped.
pub fn parse_corpus(text: &str) -> Vec<CorpusLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| CorpusLine { line: i + 1, text: body.to_string(), spec: GroupSpec::parse(body) })
        })
        .collect()
}

/// The built-in corpus, optionally with S8 appended.
pub fn default_corpus(include_s8: bool) -> Vec<CorpusLine> {
    let mut lines = parse_corpus(DEFAULT_CORPUS);
    if include_s8 {
        let line = DEFAULT_CORPUS.lines().count() + 1;
        lines.push(CorpusLine { line, text: "S8".into(), spec: GroupSpec::parse("S8") });
    }
    lines
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Run the property suites as well as `classify`.
    pub suites: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { cap: DEFAULT_CAP, jobs: None, suites: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub line: usize,
    pub spec: String,
    pub report: Option<ClassificationReport>,
    pub error: Option<String>,
    pub cap_exceeded: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    /// In corpus order.
    pub entries: Vec<CorpusEntry>,
    pub suites: Vec<SuiteReport>,
    pub tally: Tally,
}

impl CorpusReport {
    pub fn reports(&self) -> impl Iterator<Item = &ClassificationReport> {
        self.entries.iter().filter_map(|e| e.report.as_ref())
    }

    pub fn inconsistent(&self) -> Vec<&ClassificationReport> {
        self.reports().filter(|r| !r.consistent).collect()
    }

    pub fn input_errors(&self) -> Vec<&CorpusEntry> {
        self.entries.iter().filter(|e| e.error.is_some() && !e.cap_exceeded).collect()
    }

    pub fn cap_errors(&self) -> Vec<&CorpusEntry> {
        self.entries.iter().filter(|e| e.cap_exceeded).collect()
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    /// No input errors, no inconsistent reports and no suite failures.
    pub fn is_clean(&self) -> bool {
        self.entries.iter().all(|e| e.error.is_none()) && self.tally.failed == 0
    }

    /// Reports sorted by o ascending, ties in corpus order.
    pub fn sorted_by_o(&self) -> Vec<&ClassificationReport> {
        let mut v: Vec<_> = self.reports().collect();
        v.sort_by_key(|a| a.o);
        v
    }
}

/// Classifies every corpus group and runs the property suites. Enumeration
/// failures are recorded per entry; the sweep continues.
pub fn verify_corpus(lines: &[CorpusLine], options: ScanOptions) -> Result<CorpusReport> {
    let run = || sweep(lines, options);
    match options.jobs {
        None => Ok(run()),
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
    }
}

fn sweep(lines: &[CorpusLine], options: ScanOptions) -> CorpusReport {
    let results: Vec<_> = lines
        .par_iter()
        .map(|l| {
            let outcome = l
                .spec
                .clone()
                .and_then(|s| enumerate_capped(&s, options.cap))
                .and_then(|g| classify(&l.text, &g).map(|r| (g, r)));
            (l, outcome)
        })
        .collect();

    let mut entries = Vec::with_capacity(results.len());
    let mut groups = Vec::new();
    for (l, outcome) in results {
        match outcome {
            Ok((g, r)) => {
                entries.push(CorpusEntry { line: l.line, spec: l.text.clone(), report: Some(r), error: None, cap_exceeded: false });
                groups.push((entries.len() - 1, g));
            }
            Err(e) => entries.push(CorpusEntry {
                line: l.line,
                spec: l.text.clone(),
                report: None,
                cap_exceeded: matches!(e, Error::CapExceeded { .. }),
                error: Some(format!("line {}: {e}", l.line)),
            }),
        }
    }

    let suites = if options.suites {
        let members: Vec<Member<'_>> = groups
            .iter()
            .map(|(i, g)| Member { group: g, report: entries[*i].report.as_ref().expect("classified") })
            .collect();
        run_all(&members)
    } else {
        Vec::new()
    };

    let mut tally = Tally::default();
    for r in entries.iter().filter_map(|e| e.report.as_ref()) {
        for v in &r.verdicts {
            match v.outcome {
                Outcome::Holds | Outcome::Exempt => tally.passed += 1,
                Outcome::Vacuous => tally.vacuous += 1,
                Outcome::Violated => tally.failed += 1,
            }
        }
    }
    for s in &suites {
        tally.passed += s.passed;
        tally.failed += s.failed;
        tally.vacuous += s.vacuous;
    }
    CorpusReport { entries, suites, tally }
}
