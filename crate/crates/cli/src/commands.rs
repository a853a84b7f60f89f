use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use orbitflag::construct::RealizabilityVerdict;
use orbitflag::oracle::SearchMode;
use orbitflag::verify::{self, Suite, SuiteReport, VerifyConfig};
use orbitflag::{
    bounds_report, check_optimum_distance, dvec_feasible, realizability_verdict, BestFriendVector, BoundsReport,
    DistanceVector, EnumBudget, FieldCtx, FieldDescriptor, FieldParams, FlagFile, FlagOrbitSummary, OptimumCheck,
    Oracle, TypeVector,
};
use serde::{Deserialize, Serialize};

use crate::output::render;
use crate::{Cli, Command};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NOT_REALIZABLE: u8 = 3;
pub const EXIT_UNKNOWN: u8 = 4;

pub struct Outcome {
    pub text: String,
    pub code: u8,
    pub note: Option<String>,
}

/// Contents of the `--budget` file. Every key is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Largest orbit scanned for exact minimum distances.
    pub scan_cap: Option<u64>,
    /// Largest field order given exp/log tables.
    pub table_cap: Option<u64>,
    /// Random cases per sampled check in `verify`.
    pub samples: Option<usize>,
    pub oracle: EnumBudget,
    /// Construction sweep limits for `verify`.
    pub sweep_lcm: Option<usize>,
    pub sweep_len: Option<usize>,
}

impl Budget {
    fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))
            }
        }
    }
}

pub fn parse_vec(text: &str) -> Result<Vec<usize>> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad entry {x:?} in {text:?}")))
        .collect()
}

fn parse_modulus(text: &str) -> Result<Vec<u64>> {
    text.split(',').map(|x| x.trim().parse::<u64>().with_context(|| format!("bad modulus coefficient {x:?}"))).collect()
}

struct Ctx<'c> {
    cli: &'c Cli,
    budget: Budget,
}

impl Ctx<'_> {
    fn n(&self) -> Result<usize> {
        self.cli.n.ok_or_else(|| anyhow!("--n is required"))
    }

    fn q(&self) -> u64 {
        self.cli.q.unwrap_or(2)
    }

    fn params(&self, q: u64, n: usize, file_modulus: Option<&[u64]>) -> Result<FieldParams> {
        let mut params = FieldParams::for_q(q, n)?;
        let cli_modulus = self.cli.modulus.as_deref().map(parse_modulus).transpose()?;
        match (cli_modulus, file_modulus) {
            (Some(a), Some(b)) if a != b => bail!("--modulus disagrees with the flag file"),
            (Some(m), _) => params = params.with_modulus(m),
            (None, Some(m)) => params = params.with_modulus(m.to_vec()),
            (None, None) => {}
        }
        if let Some(cap) = self.budget.table_cap {
            params = params.with_table_cap(cap);
        }
        Ok(params)
    }

    fn field(&self) -> Result<FieldCtx> {
        Ok(self.params(self.q(), self.n()?, None)?.build()?)
    }

    fn scan_cap(&self) -> u64 {
        self.budget.scan_cap.unwrap_or(orbitflag::subspace::DEFAULT_SCAN_CAP)
    }

    fn finish<T: Serialize>(&self, report: &T, code: u8, note: Option<String>) -> Result<Outcome> {
        Ok(Outcome { text: render(report, self.cli.format)?, code, note })
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cx = Ctx { cli, budget: Budget::load(cli.budget.as_deref())? };
    match &cli.command {
        Command::Analyze => analyze(&cx),
        Command::Construct { bfv, flag_out } => construct(&cx, bfv, flag_out.as_deref()),
        Command::Bounds { bfv, type_vector } => bounds(&cx, bfv, type_vector),
        Command::Dvec { type_vector, d, search } => dvec(&cx, type_vector, d, *search),
        Command::Realizable { bfv, oracle } => realizable(&cx, bfv, *oracle),
        Command::Verify { suite } => verify_cmd(&cx, suite),
        Command::FieldInfo => field_info(&cx),
    }
}

#[derive(Serialize)]
struct ScanInfo {
    cap: u64,
    performed: bool,
}

#[derive(Serialize)]
struct AnalyzeReport {
    command: &'static str,
    seed: u64,
    field: FieldDescriptor,
    #[serde(flatten)]
    summary: FlagOrbitSummary,
    scan: ScanInfo,
    bounds: BoundsReport,
    optimum: Option<OptimumCheck>,
}

fn analyze(cx: &Ctx) -> Result<Outcome> {
    let path = cx.cli.input.as_deref().ok_or_else(|| anyhow!("--in is required"))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = FlagFile::from_json(&text)?;
    if cx.cli.q.is_some_and(|q| q != file.q) || cx.cli.n.is_some_and(|n| n != file.n) {
        bail!("--q/--n disagree with the flag file");
    }
    let ctx = cx.params(file.q, file.n, file.modulus.as_deref())?.build()?;
    let flag = file.to_flag(&ctx)?;
    let summary = flag.orbit_summary_with_cap(cx.scan_cap());
    let bounds = bounds_report(&summary.best_friend_vector, flag.type_vector(), ctx.n())?;
    let performed = summary.min_distance.is_some();
    let optimum = if performed { Some(check_optimum_distance(&summary)?) } else { None };
    let note = (!performed).then(|| {
        format!("note: orbit of {} flags exceeds the scan cap {}; distance not computed", summary.cardinality, cx.scan_cap())
    });
    let report = AnalyzeReport {
        command: "analyze",
        seed: cx.cli.seed,
        field: ctx.descriptor(),
        summary,
        scan: ScanInfo { cap: cx.scan_cap(), performed },
        bounds,
        optimum,
    };
    cx.finish(&report, EXIT_OK, note)
}

#[derive(Serialize)]
struct ConstructReport {
    command: &'static str,
    seed: u64,
    n: usize,
    best_friend_vector: Vec<usize>,
    #[serde(flatten)]
    verdict: RealizabilityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    flag: Option<FlagFile>,
}

fn verdict_code(v: &RealizabilityVerdict) -> (u8, Option<String>) {
    match v {
        RealizabilityVerdict::Realizable { .. } => (EXIT_OK, None),
        RealizabilityVerdict::NotRealizable { reason } => (EXIT_NOT_REALIZABLE, Some(format!("not realizable: {reason}"))),
        RealizabilityVerdict::Unknown { reason, .. } => (EXIT_UNKNOWN, Some(format!("unknown: {reason}"))),
    }
}

fn construct(cx: &Ctx, bfv: &str, flag_out: Option<&Path>) -> Result<Outcome> {
    let n = cx.n()?;
    let bfv = BestFriendVector::new(parse_vec(bfv)?)?;
    let verdict = realizability_verdict(&bfv, n);
    let (mut code, mut note) = verdict_code(&verdict);
    let mut flag_file = None;
    if let RealizabilityVerdict::Realizable { witness, .. } = &verdict {
        let ctx = cx.field()?;
        let flag = witness.build(&ctx)?;
        if flag.best_friend_vector() == bfv {
            let file = FlagFile::from_exponents(&ctx, &witness.generator_exponents(&ctx)?);
            if let Some(path) = flag_out {
                std::fs::write(path, file.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            flag_file = Some(file);
        } else {
            code = EXIT_VERIFY;
            note = Some(format!("witness has best friend vector {}", flag.best_friend_vector()));
        }
    }
    let report = ConstructReport {
        command: "construct",
        seed: cx.cli.seed,
        n,
        best_friend_vector: bfv.as_slice().to_vec(),
        verdict,
        flag: flag_file,
    };
    cx.finish(&report, code, note)
}

#[derive(Serialize)]
struct BoundsOut {
    command: &'static str,
    seed: u64,
    #[serde(flatten)]
    report: BoundsReport,
}

fn bounds(cx: &Ctx, bfv: &str, t: &str) -> Result<Outcome> {
    let n = cx.n()?;
    let bfv = BestFriendVector::new(parse_vec(bfv)?)?;
    let t = TypeVector::for_field(parse_vec(t)?, n)?;
    let report = bounds_report(&bfv, &t, n)?;
    let note = (!report.violations.is_empty()).then(|| {
        let rules: Vec<&str> = report.violations.iter().map(|v| v.rule).collect();
        format!("warning: no flag has this type and best friend vector ({})", rules.join(", "))
    });
    cx.finish(&BoundsOut { command: "bounds", seed: cx.cli.seed, report }, EXIT_OK, note)
}

#[derive(Serialize)]
struct SearchOut {
    mode: &'static str,
    downgraded: bool,
    candidates: u64,
    found: bool,
    pair: Option<[FlagFile; 2]>,
}

#[derive(Serialize)]
struct DvecOut {
    command: &'static str,
    seed: u64,
    #[serde(rename = "type")]
    type_vector: Vec<usize>,
    n: usize,
    d: Vec<usize>,
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchOut>,
}

fn dvec(cx: &Ctx, t: &str, d: &str, search: bool) -> Result<Outcome> {
    let n = cx.n()?;
    let t = TypeVector::for_field(parse_vec(t)?, n)?;
    let d = DistanceVector::new(parse_vec(d)?);
    let feasible = dvec_feasible(&t, n, &d)?;
    let mut note = None;
    let search = if search {
        let ctx = cx.field()?;
        let oracle = Oracle::new(&ctx, cx.budget.oracle.clone())?;
        let found = oracle.dvec_realization_search(&t, &d, cx.cli.seed)?;
        if found.downgraded {
            note = Some("notice: flag enumeration exceeds the budget; searched randomly instead".into());
        }
        let pair = match &found.pair {
            Some((a, b)) => Some([FlagFile::from_flag(a)?, FlagFile::from_flag(b)?]),
            None => None,
        };
        Some(SearchOut {
            mode: match found.mode {
                SearchMode::Exhaustive => "exhaustive",
                SearchMode::Randomized => "randomized",
            },
            downgraded: found.downgraded,
            candidates: found.candidates,
            found: pair.is_some(),
            pair,
        })
    } else {
        None
    };
    let report = DvecOut {
        command: "dvec",
        seed: cx.cli.seed,
        type_vector: t.as_slice().to_vec(),
        n,
        d: d.as_slice().to_vec(),
        feasible,
        search,
    };
    cx.finish(&report, EXIT_OK, note)
}

#[derive(Serialize)]
struct OracleOut {
    q: u64,
    realizable: bool,
    witness: Option<FlagFile>,
    agrees: bool,
}

#[derive(Serialize)]
struct RealizableOut {
    command: &'static str,
    seed: u64,
    n: usize,
    best_friend_vector: Vec<usize>,
    #[serde(flatten)]
    verdict: RealizabilityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleOut>,
}

fn realizable(cx: &Ctx, bfv: &str, use_oracle: bool) -> Result<Outcome> {
    let n = cx.n()?;
    let bfv = BestFriendVector::new(parse_vec(bfv)?)?;
    let verdict = realizability_verdict(&bfv, n);
    let (mut code, mut note) = verdict_code(&verdict);
    let oracle = if use_oracle {
        let ctx = cx.field()?;
        let o = Oracle::new(&ctx, cx.budget.oracle.clone())?;
        let found = o.realizability_bruteforce(&bfv)?;
        let agrees = match &verdict {
            RealizabilityVerdict::Realizable { .. } => found.is_some(),
            RealizabilityVerdict::NotRealizable { .. } => found.is_none(),
            RealizabilityVerdict::Unknown { .. } => true,
        };
        if !agrees {
            code = EXIT_VERIFY;
            note = Some("exhaustive search contradicts the verdict".into());
        }
        let witness = found.as_ref().map(FlagFile::from_flag).transpose()?;
        Some(OracleOut { q: ctx.q(), realizable: found.is_some(), witness, agrees })
    } else {
        None
    };
    let report = RealizableOut {
        command: "realizable",
        seed: cx.cli.seed,
        n,
        best_friend_vector: bfv.as_slice().to_vec(),
        verdict,
        oracle,
    };
    cx.finish(&report, code, note)
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    check: &'a str,
    passed: bool,
    cases: u64,
    counterexample: &'a Option<String>,
    skipped: &'a Option<String>,
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    command: &'static str,
    seed: u64,
    q: u64,
    n: usize,
    passed: bool,
    suites: &'a [SuiteReport],
}

#[derive(Serialize)]
struct VerifyRows<'a> {
    rows: Vec<CheckRow<'a>>,
}

fn verify_cmd(cx: &Ctx, suite: &str) -> Result<Outcome> {
    let suite: Suite = suite.parse()?;
    let defaults = VerifyConfig::default();
    let b = &cx.budget;
    let cfg = VerifyConfig {
        q: cx.q(),
        n: cx.cli.n.unwrap_or(defaults.n),
        seed: cx.cli.seed,
        samples: b.samples.unwrap_or(defaults.samples),
        budget: b.oracle.clone(),
        scan_cap: b.scan_cap.unwrap_or(defaults.scan_cap),
        sweep_table_cap: b.table_cap.unwrap_or(defaults.sweep_table_cap),
        sweep_lcm: b.sweep_lcm.unwrap_or(defaults.sweep_lcm),
        sweep_len: b.sweep_len.unwrap_or(defaults.sweep_len),
        ..defaults
    };
    let reports = verify::run(suite, &cfg)?;
    let passed = reports.iter().all(SuiteReport::passed);
    let note = (!passed).then(|| {
        let failed: Vec<String> = reports
            .iter()
            .flat_map(|r| r.failures().into_iter().map(move |c| format!("{}/{c}", r.suite)))
            .collect();
        format!("verification failed: {}", failed.join(", "))
    });
    let code = if passed { EXIT_OK } else { EXIT_VERIFY };
    match cx.cli.format {
        crate::output::Format::Json => {
            let out = VerifyOut { command: "verify", seed: cfg.seed, q: cfg.q, n: cfg.n, passed, suites: &reports };
            cx.finish(&out, code, note)
        }
        crate::output::Format::Csv => {
            let rows = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| CheckRow {
                        suite: r.suite.name(),
                        check: &c.name,
                        passed: c.passed,
                        cases: c.cases,
                        counterexample: &c.counterexample,
                        skipped: &c.skipped,
                    })
                })
                .collect();
            cx.finish(&VerifyRows { rows }, code, note)
        }
    }
}

#[derive(Serialize)]
struct SubfieldInfo {
    degree: usize,
    order: u64,
    /// Exponent of gamma generating the subfield's multiplicative group.
    generator_exponent: u64,
}

#[derive(Serialize)]
struct FieldInfo {
    command: &'static str,
    seed: u64,
    #[serde(flatten)]
    field: FieldDescriptor,
    q: u64,
    order: u64,
    tables: bool,
    table_bytes: usize,
    subfields: Vec<SubfieldInfo>,
}

fn field_info(cx: &Ctx) -> Result<Outcome> {
    let ctx = cx.field()?;
    let subfields = ctx
        .divisors()
        .iter()
        .map(|&m| {
            let order = ctx.subfield_order(ctx.subfield(m).expect("divisor"));
            SubfieldInfo { degree: m, order, generator_exponent: ctx.group_order() / (order - 1) }
        })
        .collect();
    let report = FieldInfo {
        command: "field-info",
        seed: cx.cli.seed,
        field: ctx.descriptor(),
        q: ctx.q(),
        order: ctx.order(),
        tables: ctx.has_tables(),
        table_bytes: ctx.table_bytes(),
        subfields,
    };
    cx.finish(&report, EXIT_OK, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_parse() {
        assert_eq!(parse_vec("3,2,1").unwrap(), vec![3, 2, 1]);
        assert_eq!(parse_vec("(2, 4)").unwrap(), vec![2, 4]);
        assert!(parse_vec("2,x").is_err());
        assert!(parse_vec("").is_err());
    }

    #[test]
    fn budget_parses() {
        let b: Budget = toml::from_str("scan_cap = 10\n[oracle]\nmax_field = 64\n").unwrap();
        assert_eq!(b.scan_cap, Some(10));
        assert_eq!(b.oracle.max_field, 64);
        assert_eq!(b.oracle.max_orbit, EnumBudget::default().max_orbit);
        assert!(toml::from_str::<Budget>("bogus = 1").is_err());
    }
}
