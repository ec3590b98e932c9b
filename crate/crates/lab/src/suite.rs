//! Suite files: a TOML list of checks with expected verdicts, run into a
//! deterministic report.
//!
//! ```toml
//! name = "demo"
//! rng_seed = 7
//! [limits]
//! timeout_secs = 60
//! max_pairs = 200000
//!
//! [[check]]
//! id = "x-in-ideal"
//! kind = "member"
//! anchor = "x lies in the ideal"
//! expect = "pass"
//! file = "data/demo.poly"
//! ideal = "I"
//! element = "x"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use bidegree_core::cert::Verdict;
use bidegree_core::groebner::{Interrupt, Limits};
use serde::{Deserialize, Serialize};

use crate::checks;

/// Environment variable capping how many checks run at once.
pub const THREADS_ENV: &str = "BIDEGREE_LAB_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Toml { path: String, source: toml::de::Error },
    #[error("check `{id}`: {msg}")]
    Invalid { id: String, msg: String },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub name: String,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default)]
    pub limits: LimitsConfig,
    #[serde(default, rename = "check")]
    pub checks: Vec<CheckConfig>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsConfig {
    pub timeout_secs: Option<u64>,
    pub max_pairs: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Identity,
    Semistability,
    Integrality,
    Conics,
    Hyperplanes,
    Ch1,
    SpecialFiber,
    Classify,
    Member,
    Radical,
    Pfister,
}

/// One check. Which optional fields are read depends on `kind`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub id: String,
    pub kind: CheckKind,
    pub anchor: String,
    /// `pass`, `fail`, `unknown`, or alternatives joined by `|`.
    pub expect: String,
    pub file: Option<PathBuf>,
    pub timeout_secs: Option<u64>,
    pub family: Option<FamilySpec>,
    pub equation: Option<String>,
    pub element: Option<String>,
    pub ideal: Option<String>,
    pub ideals: Option<Vec<String>>,
    pub map: Option<String>,
    pub chart: Option<String>,
    pub charts: Option<Vec<String>>,
    pub quad_var: Option<String>,
    pub specialized: Option<String>,
    pub columns: Option<[String; 2]>,
    /// `COMPONENT:VAR` entries.
    pub partials: Option<Vec<String>>,
    pub minor: Option<String>,
    pub partial_values: Option<Vec<String>>,
    pub component: Option<String>,
    pub var: Option<String>,
    pub facts: Option<PathBuf>,
    pub table: Option<String>,
    pub golden: Option<PathBuf>,
    pub literature: Option<bool>,
    pub slots: Option<Vec<String>>,
    pub form: Option<Vec<String>>,
    /// `K -> J SIGN [WITNESS]` entries.
    pub matches: Option<Vec<String>>,
    /// `K: A, B, ±I, ±J` entries.
    pub represent: Option<Vec<String>>,
}

/// A family built from seed polynomials in a data file or from random coefficients.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub variant: String,
    pub d: u32,
    pub f: u32,
    pub raise: Option<[u32; 2]>,
    pub seed_file: Option<PathBuf>,
    /// Seed role (`G`, `H`, `c`, `M`, `L`) to binding name.
    #[serde(default)]
    pub seed: BTreeMap<String, String>,
    pub random: Option<RandomSeed>,
}

/// A random `G` of the family's bidegree over the given table.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSeed {
    pub vars: String,
    #[serde(default = "default_density")]
    pub density: f64,
    #[serde(default = "default_height")]
    pub height: i64,
}

fn default_density() -> f64 {
    0.7
}

fn default_height() -> i64 {
    5
}

impl SuiteConfig {
    pub fn parse(src: &str, path: &str) -> Result<SuiteConfig, ConfigError> {
        let cfg: SuiteConfig =
            toml::from_str(src).map_err(|source| ConfigError::Toml { path: path.to_string(), source })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<SuiteConfig, ConfigError> {
        let src = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        SuiteConfig::parse(&src, &path.display().to_string())
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let mut seen = std::collections::BTreeSet::new();
        for c in &self.checks {
            let invalid = |msg: &str| ConfigError::Invalid { id: c.id.clone(), msg: msg.to_string() };
            if c.anchor.trim().is_empty() {
                return Err(invalid("anchor is empty"));
            }
            parse_expect(&c.expect).map_err(|e| invalid(&e))?;
            if !seen.insert(c.id.as_str()) {
                return Err(invalid("duplicate id"));
            }
        }
        Ok(())
    }
}

/// Splits `pass|unknown` into verdicts.
pub fn parse_expect(s: &str) -> Result<Vec<Verdict>, String> {
    s.split('|').map(|v| Verdict::parse(v.trim()).ok_or_else(|| format!("bad expected verdict `{v}`"))).collect()
}

/// Command-line overrides and the concurrency cap.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub timeout_secs: Option<u64>,
    pub max_pairs: Option<u64>,
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { timeout_secs: None, max_pairs: None, threads: threads_from_env() }
    }
}

/// The cap from [`THREADS_ENV`], else the available parallelism.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Inputs shared by every check of one suite run.
pub struct Context<'a> {
    pub base: &'a Path,
    pub rng_seed: u64,
    pub timeout: Option<Duration>,
    pub max_pairs: Option<u64>,
}

impl Context<'_> {
    pub fn path(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    /// Fresh limits whose deadline starts now.
    pub fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(n) = self.max_pairs {
            limits = limits.with_max_pairs(n);
        }
        if let Some(t) = self.timeout {
            let deadline = Instant::now() + t;
            limits = limits.with_interrupt(Interrupt::new(move || Instant::now() >= deadline));
        }
        limits
    }
}

/// What one check produced: a verdict, a digest, and human-readable detail lines.
#[derive(Clone, Debug)]
pub struct Finding {
    pub verdict: Verdict,
    pub digest: String,
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub kind: CheckKind,
    pub anchor: String,
    pub expected: Vec<String>,
    /// `PASS`, `FAIL`, `UNKNOWN` or `ERROR`.
    pub verdict: String,
    pub met: bool,
    pub digest: String,
    pub detail: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub rng_seed: u64,
    pub checks: Vec<CheckReport>,
    pub met: usize,
    pub unmet: usize,
}

impl Report {
    pub fn all_met(&self) -> bool {
        self.unmet == 0
    }

    /// Structured text. With `timing` false the output is byte-identical across runs.
    pub fn render(&self, timing: bool) -> String {
        let mut s = format!("suite {} (rng_seed {})\n", self.suite, self.rng_seed);
        for c in &self.checks {
            let mark = if c.met { "ok  " } else { "MISS" };
            s.push_str(&format!(
                "{mark} {:<28} {:<8} expected {:<14} digest {}",
                c.id,
                c.verdict,
                c.expected.join("|"),
                c.digest
            ));
            if timing {
                s.push_str(&format!(" {}ms", c.elapsed_ms));
            }
            s.push('\n');
            s.push_str(&format!("     {} [{}]\n", c.anchor, kind_name(c.kind)));
            for d in &c.detail {
                s.push_str(&format!("     - {d}\n"));
            }
        }
        s.push_str(&format!("summary: {} checks, {} met, {} unmet\n", self.checks.len(), self.met, self.unmet));
        s
    }
}

fn kind_name(k: CheckKind) -> String {
    serde_json::to_value(k).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

/// Runs every check, at most `opts.threads` at a time, and reports them in suite order.
pub fn run_suite(cfg: &SuiteConfig, base: &Path, opts: &RunOptions) -> Report {
    let ctx = Context {
        base,
        rng_seed: cfg.rng_seed,
        timeout: opts.timeout_secs.or(cfg.limits.timeout_secs).map(Duration::from_secs),
        max_pairs: opts.max_pairs.or(cfg.limits.max_pairs),
    };
    let slots: Arc<Mutex<Vec<Option<CheckReport>>>> = Arc::new(Mutex::new(vec![None; cfg.checks.len()]));
    let next = AtomicUsize::new(0);
    let workers = opts.threads.clamp(1, cfg.checks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(check) = cfg.checks.get(k) else { break };
                let report = run_one(check, &ctx);
                slots.lock().expect("report slots")[k] = Some(report);
            });
        }
    });
    let checks: Vec<CheckReport> =
        Arc::try_unwrap(slots).expect("workers joined").into_inner().expect("report slots").into_iter().flatten().collect();
    let met = checks.iter().filter(|c| c.met).count();
    Report { suite: cfg.name.clone(), rng_seed: cfg.rng_seed, unmet: checks.len() - met, met, checks }
}

fn run_one(check: &CheckConfig, ctx: &Context<'_>) -> CheckReport {
    let expected = parse_expect(&check.expect).unwrap_or_default();
    let local = Context {
        base: ctx.base,
        rng_seed: ctx.rng_seed,
        timeout: check.timeout_secs.map(Duration::from_secs).or(ctx.timeout),
        max_pairs: ctx.max_pairs,
    };
    let start = Instant::now();
    let outcome = checks::run(check, &local);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (verdict, met, digest, detail) = match outcome {
        Ok(f) => (f.verdict.as_str().to_string(), expected.contains(&f.verdict), f.digest, f.detail),
        Err(e) => ("ERROR".to_string(), false, String::new(), vec![format!("{e:#}")]),
    };
    CheckReport {
        id: check.id.clone(),
        kind: check.kind,
        anchor: check.anchor.clone(),
        expected: expected.iter().map(|v| v.as_str().to_string()).collect(),
        verdict,
        met,
        digest,
        detail,
        elapsed_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expectations_parse() {
        assert_eq!(parse_expect("pass | Unknown").unwrap(), [Verdict::Pass, Verdict::Unknown]);
        assert!(parse_expect("maybe").is_err());
    }

    #[test]
    fn config_rejects_empty_anchor_and_unknown_keys() {
        let src = "name = \"x\"\n[[check]]\nid = \"a\"\nkind = \"member\"\nanchor = \" \"\nexpect = \"pass\"\n";
        assert!(matches!(SuiteConfig::parse(src, "t"), Err(ConfigError::Invalid { .. })));
        let src = "name = \"x\"\ncolour = 1\n";
        assert!(matches!(SuiteConfig::parse(src, "t"), Err(ConfigError::Toml { .. })));
    }

    #[test]
    fn empty_suite_reports_nothing() {
        let cfg = SuiteConfig::parse("name = \"empty\"\n", "t").unwrap();
        let r = run_suite(&cfg, Path::new("."), &RunOptions::default());
        assert!(r.checks.is_empty());
        assert!(r.all_met());
    }

    #[test]
    fn missing_file_is_recorded_not_fatal() {
        let src = "name = \"x\"\n[[check]]\nid = \"a\"\nkind = \"member\"\nanchor = \"m\"\nexpect = \"pass\"\n\
                   file = \"does-not-exist.poly\"\nideal = \"I\"\nelement = \"x\"\n\
                   [[check]]\nid = \"b\"\nkind = \"classify\"\nanchor = \"c\"\nexpect = \"pass\"\n";
        let cfg = SuiteConfig::parse(src, "t").unwrap();
        let r = run_suite(&cfg, Path::new("."), &RunOptions::default());
        assert_eq!(r.checks[0].verdict, "ERROR");
        assert!(!r.checks[0].met);
        assert_eq!(r.checks[1].id, "b");
        assert_eq!(r.unmet, 2);
    }
}
