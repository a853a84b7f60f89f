//! Verification suites: invariant and oracle checks runnable from tests and
//! from the command line. Every suite returns a report listing each check
//! with its case count and, on failure, the first counterexample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    bounds_report, dvec_feasible, lower_bound_min_distance, max_distance_with_zeros, max_flag_distance,
    type_constraints_check,
};
use crate::construct::{construct_general, construction_plan, realizability_verdict, realizable_len2};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem, FieldParams};
use crate::flag::Flag;
use crate::numth::{divisors, lcm_all, orbit_size};
use crate::oracle::{gaussian_binomial, random_flag, random_subspace, EnumBudget, Oracle};
use crate::subspace::Subspace;
use crate::vectors::{BestFriendVector, DistanceVector, TypeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Field,
    Metric,
    Subspace,
    Flag,
    Bounds,
    Construct,
    Oracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Field, Suite::Metric, Suite::Subspace, Suite::Flag, Suite::Bounds, Suite::Construct, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Field => "field",
            Suite::Metric => "metric",
            Suite::Subspace => "subspace",
            Suite::Flag => "flag",
            Suite::Bounds => "bounds",
            Suite::Construct => "construct",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub q: u64,
    pub n: usize,
    pub seed: u64,
    /// Random cases per sampled check.
    pub samples: usize,
    pub budget: EnumBudget,
    /// Largest orbit scanned for exact distances.
    pub scan_cap: u64,
    /// Table cap used for the fields of the construction sweep.
    pub sweep_table_cap: u64,
    /// Largest lcm of the best friend vectors in the construction sweep.
    pub sweep_lcm: usize,
    /// Longest best friend vector in the construction sweep.
    pub sweep_len: usize,
    /// Largest n in the bounds suite.
    pub bounds_max_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            q: 2,
            n: 6,
            seed: 0,
            samples: 200,
            budget: EnumBudget::default(),
            scan_cap: 1 << 16,
            sweep_table_cap: 1 << 20,
            sweep_lcm: 8,
            sweep_len: 4,
            bounds_max_n: 13,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
    /// Why the check was skipped, if it was.
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub q: u64,
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Names of failed checks.
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

struct Check {
    name: &'static str,
    cases: u64,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failure: None }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn error(&mut self, e: Error) {
        self.case(false, || format!("error: {e}"));
    }

    fn done(self) -> CheckResult {
        CheckResult {
            name: self.name.into(),
            passed: self.failure.is_none(),
            cases: self.cases,
            counterexample: self.failure,
            skipped: None,
        }
    }
}

fn skipped(name: &str, why: String) -> CheckResult {
    CheckResult { name: name.into(), passed: true, cases: 0, counterexample: None, skipped: Some(why) }
}

const EXHAUSTIVE_FIELD: u64 = 1 << 12;

fn rng(cfg: &VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn field_exponents(ctx: &FieldCtx, cfg: &VerifyConfig, salt: u64) -> Vec<u64> {
    if ctx.order() <= EXHAUSTIVE_FIELD {
        (0..ctx.group_order()).collect()
    } else {
        let mut r = rng(cfg, salt);
        (0..cfg.samples).map(|_| r.gen_range(0..ctx.group_order())).collect()
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let ctx = FieldParams::for_q(cfg.q, cfg.n)?.build()?;
    Ok(suites
        .into_iter()
        .map(|s| {
            let checks = match s {
                Suite::Field => field_suite(&ctx, cfg),
                Suite::Metric => metric_suite(&ctx, cfg),
                Suite::Subspace => subspace_suite(&ctx, cfg),
                Suite::Flag => flag_suite(&ctx, cfg),
                Suite::Bounds => bounds_suite(cfg),
                Suite::Construct => construct_suite(cfg),
                Suite::Oracle => oracle_suite(&ctx, cfg),
                Suite::All => unreachable!(),
            };
            SuiteReport { suite: s, q: cfg.q, n: cfg.n, seed: cfg.seed, checks }
        })
        .collect())
}

pub fn field_suite(ctx: &FieldCtx, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let exps = field_exponents(ctx, cfg, 1);
    let order = ctx.group_order();

    let mut exp_log = Check::new("exp_log_inverse");
    for &k in &exps {
        let x = ctx.gamma_pow(k);
        match ctx.log(x) {
            Some(l) => exp_log.case(l == k, || format!("log(gamma^{k}) = {l}")),
            None => {
                let next = ctx.gamma_pow(k + 1);
                exp_log.case(ctx.mul_by_gamma(x) == next, || format!("gamma * gamma^{k} != gamma^{}", k + 1));
            }
        }
    }

    let mut frob = Check::new("frobenius_subfield_law");
    for &k in &exps {
        let x = ctx.gamma_pow(k);
        for &m in ctx.divisors() {
            let id = ctx.subfield(m).unwrap();
            let by_index = k % (order / (ctx.subfield_order(id) - 1)) == 0;
            frob.case(ctx.is_in_subfield(x, id) == by_index, || format!("gamma^{k} in F_(q^{m})"));
        }
    }
    for &m in ctx.divisors() {
        let id = ctx.subfield(m).unwrap();
        frob.case(ctx.is_in_subfield(FieldElem::ZERO, id), || "zero".into());
    }

    let mut lattice = Check::new("subfield_lattice");
    for &a in ctx.divisors() {
        for &b in ctx.divisors() {
            let (fa, fb) = (Subspace::subfield(ctx, a).unwrap(), Subspace::subfield(ctx, b).unwrap());
            lattice.case(fb.contains(&fa).unwrap() == (b % a == 0), || format!("F_(q^{a}) vs F_(q^{b})"));
        }
    }

    let mut coords = Check::new("coordinate_round_trip");
    for &k in &exps {
        let x = ctx.gamma_pow(k);
        let c = ctx.coords_over_ground(x);
        coords.case(ctx.elem_from_coords(&c) == Ok(x) && ctx.unpack(ctx.pack(x)) == x, || format!("gamma^{k}"));
    }

    let mut arith = Check::new("field_axioms_sampled");
    let mut r = rng(cfg, 2);
    for _ in 0..cfg.samples {
        let [a, b, c] = [0; 3].map(|_| ctx.gamma_pow(r.gen_range(0..order)));
        arith.case(
            ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
                && ctx.mul(a, ctx.inv(a)) == FieldElem::ONE
                && ctx.add(a, ctx.neg(a)) == FieldElem::ZERO,
            || format!("{a:?} {b:?} {c:?}"),
        );
    }
    vec![exp_log.done(), frob.done(), lattice.done(), coords.done(), arith.done()]
}

fn sample_subspaces<'a>(ctx: &'a FieldCtx, cfg: &VerifyConfig, salt: u64) -> Vec<Subspace<'a>> {
    let mut r = rng(cfg, salt);
    let n = ctx.n();
    let mut out: Vec<Subspace<'a>> = (0..cfg.samples).map(|_| random_subspace(ctx, r.gen_range(1..n), &mut r)).collect();
    for &m in ctx.divisors().iter().filter(|&&m| m < n) {
        out.push(Subspace::subfield(ctx, m).unwrap());
    }
    out
}

/// Every proper nonzero subspace when enumerable, otherwise a sample.
fn subspaces_for<'a>(ctx: &'a FieldCtx, cfg: &VerifyConfig, salt: u64) -> (Vec<Subspace<'a>>, bool) {
    if let Ok(o) = Oracle::new(ctx, cfg.budget.clone()) {
        let all: Result<Vec<Vec<_>>> = (1..ctx.n()).map(|k| o.enumerate_subspaces(k)).collect();
        if let Ok(all) = all {
            return (all.into_iter().flatten().collect(), true);
        }
    }
    (sample_subspaces(ctx, cfg, salt), false)
}

pub fn metric_suite(ctx: &FieldCtx, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let n = ctx.n();
    let us = sample_subspaces(ctx, cfg, 3);
    let vs = sample_subspaces(ctx, cfg, 4);
    let ws = sample_subspaces(ctx, cfg, 5);
    let mut sym = Check::new("symmetry");
    let mut ident = Check::new("identity_of_indiscernibles");
    let mut tri = Check::new("triangle_inequality");
    let mut eq_dim = Check::new("equal_dimension_parity_and_bound");
    let mut formula = Check::new("dimension_formula");
    for ((u, v), w) in us.iter().zip(&vs).zip(&ws) {
        let (duv, dvu) = (u.distance(v).unwrap(), v.distance(u).unwrap());
        sym.case(duv == dvu, || format!("{u:?} {v:?}"));
        ident.case((duv == 0) == (u == v) && u.distance(u).unwrap() == 0, || format!("{u:?} {v:?}"));
        let (duw, dwv) = (u.distance(w).unwrap(), w.distance(v).unwrap());
        tri.case(duv <= duw + dwv, || format!("{u:?} {v:?} {w:?}"));
        let s = u.sum(v).unwrap();
        let i = u.intersect(v).unwrap();
        formula.case(duv == s.dim() - i.dim() && s.dim() + i.dim() == u.dim() + v.dim(), || format!("{u:?} {v:?}"));
    }
    // equal dimensions: compare with translates and with same-dimension samples
    let mut r = rng(cfg, 6);
    for u in &us {
        let k = u.dim();
        let v = random_subspace(ctx, k, &mut r);
        let t = u.scalar_mul(ctx.gamma_pow(r.gen_range(0..ctx.group_order()))).unwrap();
        for d in [u.distance(&v).unwrap(), u.distance(&t).unwrap()] {
            eq_dim.case(d % 2 == 0 && d <= 2 * k.min(n - k), || format!("{u:?} at distance {d}"));
        }
    }
    if let (all, true) = subspaces_for(ctx, cfg, 7) {
        if all.len() <= 700 {
            for a in &all {
                for b in &all {
                    let d = a.distance(b).unwrap();
                    sym.case(d == b.distance(a).unwrap(), || format!("{a:?} {b:?}"));
                    ident.case((d == 0) == (a == b), || format!("{a:?} {b:?}"));
                    if a.dim() == b.dim() {
                        let k = a.dim();
                        eq_dim.case(d % 2 == 0 && d <= 2 * k.min(n - k), || format!("{a:?} {b:?}"));
                    }
                }
            }
        }
    }
    vec![sym.done(), ident.done(), tri.done(), eq_dim.done(), formula.done()]
}

pub fn subspace_suite(ctx: &FieldCtx, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let n = ctx.n();
    let (subs, exhaustive) = subspaces_for(ctx, cfg, 8);
    let mut r = rng(cfg, 9);
    let mut divides = Check::new("best_friend_divides_gcd");
    let mut div_dist = Check::new("two_m_divides_translate_distance");
    let mut invariant = Check::new("best_friend_invariant_under_scaling");
    let mut card = Check::new("orbit_cardinality_law");
    let mut stab = Check::new("stabilizer_is_largest_fixing_subfield");
    for (idx, u) in subs.iter().enumerate() {
        let m = u.best_friend_exponent().unwrap();
        divides.case(crate::numth::gcd(u.dim() as u64, n as u64) % m as u64 == 0, || format!("{u:?} has m = {m}"));
        let largest = ctx
            .divisors()
            .iter()
            .copied()
            .filter(|&d| u.is_fixed_by(ctx.subfield_generator(ctx.subfield(d).unwrap())))
            .max()
            .unwrap();
        stab.case(largest == m, || format!("{u:?}: fast {m}, direct {largest}"));
        let alphas: Vec<u64> = if n <= 6 && (!exhaustive || idx % 7 == 0) {
            (1..ctx.group_order()).collect()
        } else {
            (0..4).map(|_| r.gen_range(1..ctx.group_order())).collect()
        };
        for k in alphas {
            let t = u.scalar_mul(ctx.gamma_pow(k)).unwrap();
            let d = u.distance(&t).unwrap();
            div_dist.case(d % (2 * m) == 0, || format!("{u:?} with gamma^{k}: d = {d}, m = {m}"));
            if k % 5 == 1 {
                invariant.case(t.best_friend_exponent().unwrap() == m, || format!("{u:?} with gamma^{k}"));
            }
        }
        let size = orbit_size(ctx.q(), n, m);
        if size <= cfg.budget.max_orbit && (idx % 5 == 0 || !exhaustive) {
            let count = u.orbit_enumerate(cfg.budget.max_orbit).map(|o| o.len() as u64);
            let law = size * (ctx.q().pow(m as u32) - 1) == ctx.order() - 1;
            card.case(law && count == Ok(size), || format!("{u:?}: {count:?} vs {size}"));
        }
    }
    vec![divides.done(), stab.done(), div_dist.done(), invariant.done(), card.done()]
}

fn random_type(n: usize, max_len: usize, r: &mut impl Rng) -> TypeVector {
    let len = r.gen_range(1..=max_len.min(n - 1));
    let mut dims: Vec<usize> = (1..n).collect();
    for i in 0..len {
        let j = r.gen_range(i..dims.len());
        dims.swap(i, j);
    }
    let mut t = dims[..len].to_vec();
    t.sort_unstable();
    TypeVector::new(t).unwrap()
}

fn sample_flags<'a>(ctx: &'a FieldCtx, cfg: &VerifyConfig, salt: u64) -> Vec<Flag<'a>> {
    let mut r = rng(cfg, salt);
    let n = ctx.n();
    let mut out: Vec<Flag<'a>> = (0..cfg.samples)
        .map(|_| {
            let t = random_type(n, 3, &mut r);
            random_flag(ctx, &t, &mut r)
        })
        .collect();
    // flags with larger best friends
    let proper: Vec<usize> = ctx.divisors().iter().copied().filter(|&m| m < n).collect();
    for &m in &proper {
        let chain: Vec<usize> = proper.iter().copied().filter(|&d| m % d == 0 && d > 1).collect();
        if !chain.is_empty() {
            if let Ok(f) = crate::construct::galois_flag(ctx, &chain) {
                out.push(f);
            }
        }
        if n / m >= 3 {
            let bfv = BestFriendVector::new(vec![m; n / m - 1]).unwrap();
            if let Ok(f) = construct_general(ctx, &bfv) {
                out.push(f);
            }
        }
    }
    out
}

pub fn flag_suite(ctx: &FieldCtx, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let n = ctx.n();
    let flags = sample_flags(ctx, cfg, 10);
    let mut r = rng(cfg, 11);
    let mut feasible = Check::new("distance_vectors_feasible");
    let mut sum = Check::new("flag_distance_is_component_sum");
    let mut scaling = Check::new("scaling_invariance");
    let mut gcd_law = Check::new("flag_exponent_is_gcd");
    let mut chain = Check::new("projected_cardinality_chain");
    let mut transversal = Check::new("transversal_equals_all_pairs");
    let mut div = Check::new("two_m_divides_flag_distance");
    let oracle = Oracle::new(ctx, cfg.budget.clone()).ok();
    for (idx, f) in flags.iter().enumerate() {
        let other = random_flag(ctx, f.type_vector(), &mut r);
        let dv = f.distance_vector(&other).unwrap();
        feasible.case(dvec_feasible(f.type_vector(), n, &dv).unwrap(), || format!("{f:?} {other:?}: {dv}"));
        let direct: usize =
            f.subspaces().iter().zip(other.subspaces()).map(|(a, b)| a.distance(b).unwrap()).sum();
        sum.case(direct == f.distance(&other).unwrap(), || format!("{f:?}"));

        let alpha = ctx.gamma_pow(r.gen_range(0..ctx.group_order()));
        let (fa, oa) = (f.scalar_mul(alpha).unwrap(), other.scalar_mul(alpha).unwrap());
        let bfv = f.best_friend_vector();
        scaling.case(
            fa.best_friend_vector() == bfv && fa.distance(&oa).unwrap() == dv.total(),
            || format!("{f:?} with {alpha:?}"),
        );
        let m = bfv.gcd();
        div.case(f.distance(&fa).unwrap() % (2 * m) == 0, || format!("{f:?} with {alpha:?}"));
        let largest = ctx
            .divisors()
            .iter()
            .copied()
            .filter(|&d| {
                let g = ctx.subfield_generator(ctx.subfield(d).unwrap());
                f.scalar_mul(g).unwrap() == *f
            })
            .max()
            .unwrap();
        gcd_law.case(largest == m, || format!("{f:?}: gcd {m}, direct {largest}"));

        let summary = f.orbit_summary_with_cap(cfg.scan_cap);
        let q = ctx.q();
        let ok = bfv.as_slice().iter().zip(&summary.projected_cardinalities).all(|(&mi, &ci)| {
            let ratio = (q.pow(mi as u32) - 1) / (q.pow(m as u32) - 1);
            ci * ratio == summary.cardinality && ((ci == summary.cardinality) == (mi == m))
        });
        chain.case(ok, || format!("{f:?}: {summary:?}"));

        if let (Some(o), Some(d)) = (&oracle, summary.min_distance) {
            if summary.cardinality <= 256 || idx % 10 == 0 {
                match o.orbit_min_distance_bruteforce(f) {
                    Ok(b) => transversal.case(b == d, || format!("{f:?}: transversal {d}, all pairs {b}")),
                    Err(Error::EnumerationCapExceeded { .. }) => {}
                    Err(e) => transversal.error(e),
                }
            }
        }
    }
    let mut out = vec![feasible.done(), sum.done(), scaling.done(), div.done(), gcd_law.done(), chain.done()];
    if oracle.is_some() {
        out.push(transversal.done());
    } else {
        out.push(skipped("transversal_equals_all_pairs", "field too large for the oracle".into()));
    }
    out
}

/// Largest `sum d_i` over feasible distance vectors with `d_i = 0` on the
/// 1-based positions in `zeros`, by dynamic programming over positions.
pub fn max_sum_with_zeros(t: &[usize], n: usize, zeros: &[usize]) -> usize {
    let r = t.len();
    let caps: Vec<usize> = t.iter().map(|&ti| 2 * ti.min(n - ti)).collect();
    let allowed = |i: usize, d: usize| d <= caps[i] && d % 2 == 0 && (!zeros.contains(&(i + 1)) || d == 0);
    let mut best: BTreeMap<usize, usize> = (0..=caps[0]).filter(|&d| allowed(0, d)).map(|d| (d, d)).collect();
    for i in 1..r {
        let step = 2 * (t[i] - t[i - 1]);
        let mut next = BTreeMap::new();
        for d in (0..=caps[i]).filter(|&d| allowed(i, d)) {
            let prev = best.iter().filter(|(&p, _)| p.abs_diff(d) <= step).map(|(_, &v)| v).max();
            if let Some(v) = prev {
                next.insert(d, v + d);
            }
        }
        best = next;
    }
    best.values().copied().max().unwrap_or(0)
}

fn types_up_to(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let limit = 1u32 << (n - 1);
    for mask in 1..limit {
        if mask.count_ones() as usize <= max_len {
            out.push((1..n).filter(|&i| mask >> (i - 1) & 1 == 1).collect());
        }
    }
    out
}

pub fn bounds_suite(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut le = Check::new("zero_set_value_at_most_max");
    let mut mono = Check::new("zero_set_value_monotone");
    let mut dp = Check::new("zero_set_value_equals_feasible_maximum");
    let mut full = Check::new("max_distance_equals_feasible_maximum");
    for n in 2..=cfg.bounds_max_n {
        for t in types_up_to(n, 4) {
            let tv = TypeVector::new(t.clone()).unwrap();
            let d = max_flag_distance(&tv, n).unwrap();
            full.case(d == max_sum_with_zeros(&t, n, &[]), || format!("t = {t:?}, n = {n}"));
            let r = t.len();
            for mask in 1u32..1 << r {
                let zs: Vec<usize> = (1..=r).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
                let v = max_distance_with_zeros(&tv, n, &zs).unwrap();
                le.case(v <= d, || format!("t = {t:?}, n = {n}, S = {zs:?}"));
                dp.case(v == max_sum_with_zeros(&t, n, &zs), || format!("t = {t:?}, n = {n}, S = {zs:?}: {v}"));
                for extra in (1..=r).filter(|i| !zs.contains(i)) {
                    let mut bigger = zs.clone();
                    bigger.push(extra);
                    bigger.sort_unstable();
                    let w = max_distance_with_zeros(&tv, n, &bigger).unwrap();
                    mono.case(w <= v, || format!("t = {t:?}, n = {n}, S = {zs:?} + {extra}"));
                }
            }
        }
    }

    let mut baseline = Check::new("bounds_within_baseline");
    let mut r = rng(cfg, 12);
    for _ in 0..cfg.samples * 5 {
        let n = r.gen_range(4..=24);
        let t = random_type(n, 5, &mut r);
        let divs = divisors(n as u64);
        let bfv: Vec<usize> = t
            .as_slice()
            .iter()
            .map(|&ti| {
                let ds: Vec<u64> = divs.iter().copied().filter(|&d| ti as u64 % d == 0).collect();
                ds[r.gen_range(0..ds.len())] as usize
            })
            .collect();
        let bfv = BestFriendVector::new(bfv).unwrap();
        let rep = bounds_report(&bfv, &t, n).unwrap();
        baseline.case(
            rep.lower_bound >= rep.baseline_lower
                && rep.upper_bound <= rep.baseline_upper
                && rep.lower_bound % 2 == 0
                && rep.upper_bound % 2 == 0,
            || format!("{rep:?}"),
        );
    }
    vec![full.done(), le.done(), mono.done(), dp.done(), baseline.done()]
}

/// Best friend vectors of length at most `max_len` with lcm at most
/// `max_lcm`.
pub fn sweep_vectors(max_lcm: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, max_lcm: usize, max_len: usize) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for m in 1..=max_lcm {
            cur.push(m);
            if lcm_all(cur) <= max_lcm {
                rec(cur, out, max_lcm, max_len);
            }
            cur.pop();
        }
    }
    rec(&mut cur, &mut out, max_lcm, max_len);
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub vectors: usize,
    pub fields: Vec<usize>,
    /// Orbits scanned completely.
    pub exact_distances: usize,
    /// Orbits too large to scan where a witness meets the lower bound.
    pub pinned: usize,
    /// Orbits too large to scan where the minimum is only bracketed.
    pub open: usize,
    pub largest_open_orbit: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracket {
    /// Minimum distance from a full scan that does not rely on any bound.
    Exact(usize),
    /// Smallest `d_f(F, F alpha)` over the witness set: subfield
    /// generators and the first powers of gamma.
    Witness(usize),
}

const WITNESS_POWERS: u64 = 256;

/// Exact minimum distance of `Orb(F)` when the orbit has at most `scan_cap`
/// elements, otherwise the best distance over a fixed witness set.
pub fn bracket_distance(flag: &Flag<'_>, scan_cap: u64) -> Bracket {
    let ctx = flag.ctx();
    let m = flag.best_friend_exponent();
    let size = orbit_size(ctx.q(), ctx.n(), m);
    if size <= scan_cap {
        return Bracket::Exact(crate::subspace::scan_orbit(flag.subspaces(), size, 0).min_distance);
    }
    let mut alphas: Vec<u64> = ctx
        .divisors()
        .iter()
        .filter(|&&d| m % d != 0)
        .map(|&d| ctx.group_order() / (ctx.subfield_order(ctx.subfield(d).unwrap()) - 1))
        .collect();
    alphas.extend((1..=WITNESS_POWERS).filter(|k| k % size != 0));
    let w = alphas
        .into_iter()
        .map(|k| flag.distance(&flag.scalar_mul(ctx.gamma_pow(k)).unwrap()).unwrap())
        .min()
        .expect("witness set is nonempty");
    Bracket::Witness(w)
}

/// Builds the general construction for every vector of the sweep at its
/// sufficient degree and checks the round trip, the type constraints, the
/// distance bounds and normalization.
pub fn construction_sweep(cfg: &VerifyConfig) -> (Vec<CheckResult>, SweepStats) {
    let mut round = Check::new("construction_round_trip");
    let mut types = Check::new("construction_satisfies_type_constraints");
    let mut bounds = Check::new("bounds_bracket_exact_distance");
    let mut normal = Check::new("normalized_flag_contains_prefix_subfields");
    let mut stats = SweepStats::default();
    let mut by_n: BTreeMap<usize, Vec<BestFriendVector>> = BTreeMap::new();
    for v in sweep_vectors(cfg.sweep_lcm, cfg.sweep_len) {
        let bfv = BestFriendVector::new(v).unwrap();
        by_n.entry(construction_plan(&bfv).sufficient_n).or_default().push(bfv);
    }
    for (&n, vectors) in &by_n {
        let ctx = match FieldParams::for_q(cfg.q, n).and_then(|p| p.with_table_cap(cfg.sweep_table_cap).build()) {
            Ok(c) => c,
            Err(e) => {
                round.error(e);
                continue;
            }
        };
        stats.fields.push(n);
        for bfv in vectors {
            stats.vectors += 1;
            let flag = match construct_general(&ctx, bfv) {
                Ok(f) => f,
                Err(e) => {
                    round.case(false, || format!("{bfv} at n = {n}: {e}"));
                    continue;
                }
            };
            round.case(flag.best_friend_vector() == *bfv, || format!("{bfv} at n = {n}"));
            let t = flag.type_vector().as_slice();
            types.case(
                type_constraints_check(t, bfv.as_slice(), n).is_empty() && t[t.len() - 1] < n,
                || format!("{bfv} at n = {n}: type {t:?}"),
            );
            let rep = bounds_report(bfv, flag.type_vector(), n).unwrap();
            match bracket_distance(&flag, cfg.scan_cap) {
                Bracket::Exact(d) => {
                    stats.exact_distances += 1;
                    bounds.case(rep.lower_bound <= d && d <= rep.upper_bound, || {
                        format!("{bfv} at n = {n}: {} <= {d} <= {}", rep.lower_bound, rep.upper_bound)
                    });
                }
                Bracket::Witness(w) => {
                    // the minimum is at most w; w at or below the lower bound pins it
                    if w == rep.lower_bound {
                        stats.pinned += 1;
                    } else {
                        stats.open += 1;
                        let size = orbit_size(ctx.q(), n, bfv.gcd());
                        stats.largest_open_orbit = stats.largest_open_orbit.max(size);
                    }
                    bounds.case(rep.lower_bound <= w && w <= rep.upper_bound, || {
                        format!("{bfv} at n = {n}: witness distance {w} outside [{}, {}]", rep.lower_bound, rep.upper_bound)
                    });
                }
            }
            let moved = flag.scalar_mul(ctx.gamma_pow(7)).unwrap().normalize_contains_one();
            let plan = construction_plan(bfv);
            let ok = moved.subspaces().iter().zip(&plan.l_i).all(|(fi, &li)| {
                fi.contains_elem(FieldElem::ONE) && fi.contains(&Subspace::subfield(&ctx, li).unwrap()).unwrap()
            });
            normal.case(ok, || format!("{bfv} at n = {n}"));
        }
    }
    (vec![round.done(), types.done(), bounds.done(), normal.done()], stats)
}

pub fn construct_suite(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let (mut out, _) = construction_sweep(cfg);

    let mut never_unknown = Check::new("exact_cases_never_unknown");
    for n in 2..=24 {
        for &m in divisors(n as u64).iter() {
            let m = m as usize;
            for r in 1..=4 {
                let v = realizability_verdict(&BestFriendVector::new(vec![m; r]).unwrap(), n);
                never_unknown.case(!v.is_unknown(), || format!("constant ({m}) x {r} at n = {n}"));
            }
        }
        for chain in divisor_chains(n) {
            let v = realizability_verdict(&BestFriendVector::new(chain.clone()).unwrap(), n);
            never_unknown.case(!v.is_unknown(), || format!("{chain:?} at n = {n}"));
        }
    }
    out.push(never_unknown.done());

    let mut witnesses = Check::new("realizable_witness_round_trip");
    for n in 4..=12 {
        let Ok(ctx) = FieldParams::for_q(cfg.q, n).and_then(|p| p.build()) else { continue };
        for v in sweep_vectors(n, 3) {
            let bfv = BestFriendVector::new(v).unwrap();
            if let crate::construct::RealizabilityVerdict::Realizable { witness, .. } = realizability_verdict(&bfv, n) {
                let got = witness.build(&ctx).map(|f| f.best_friend_vector());
                witnesses.case(got.as_ref() == Ok(&bfv), || format!("{bfv} at n = {n}: {got:?}"));
            }
        }
    }
    out.push(witnesses.done());

    let small_n = 6;
    let ctx = FieldParams::for_q(cfg.q, small_n).and_then(|p| p.build());
    match ctx.as_ref().map_err(Clone::clone).and_then(|c| Oracle::new(c, cfg.budget.clone())) {
        Ok(o) => {
            let mut len2 = Check::new("length_two_matches_oracle");
            for &a in &[1, 2, 3, 6] {
                for &b in &[1, 2, 3, 6] {
                    let bfv = BestFriendVector::new(vec![a, b]).unwrap();
                    match o.realizability_bruteforce(&bfv) {
                        Ok(found) => len2.case(found.is_some() == realizable_len2(a, b, small_n), || {
                            format!("({a},{b}) at n = {small_n}")
                        }),
                        Err(e) => len2.error(e),
                    }
                }
            }
            out.push(len2.done());
            out.push(not_realizable_soundness(&o, 3));
        }
        Err(e) => out.push(skipped("length_two_matches_oracle", e.to_string())),
    }
    out
}

fn divisor_chains(n: usize) -> Vec<Vec<usize>> {
    let proper: Vec<usize> = divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d < n).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = proper.iter().map(|&d| vec![d]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        for &d in proper.iter().filter(|&&d| d > last && d % last == 0) {
            let mut longer = c.clone();
            longer.push(d);
            stack.push(longer);
        }
        out.push(c);
    }
    out.sort();
    out
}

/// Every `NotRealizable` verdict for vectors with entries in `1..=n` and
/// length up to `max_len` is confirmed by exhaustive search.
pub fn not_realizable_soundness(o: &Oracle<'_>, max_len: usize) -> CheckResult {
    let n = o.ctx().n();
    let mut check = Check::new("not_realizable_unrefuted");
    for v in all_vectors(n, max_len) {
        let bfv = BestFriendVector::new(v).unwrap();
        let verdict = realizability_verdict(&bfv, n);
        if verdict.is_not_realizable() {
            match o.realizability_bruteforce(&bfv) {
                Ok(found) => check.case(found.is_none(), || format!("{bfv} at n = {n} has witness {found:?}")),
                Err(e) => check.error(e),
            }
        }
    }
    check.done()
}

/// Every realizable verdict is confirmed by exhaustive search.
pub fn realizable_confirmed(o: &Oracle<'_>, max_len: usize) -> CheckResult {
    let n = o.ctx().n();
    let mut check = Check::new("realizable_confirmed");
    for v in all_vectors(n, max_len) {
        let bfv = BestFriendVector::new(v).unwrap();
        if realizability_verdict(&bfv, n).is_realizable() {
            match o.realizability_bruteforce(&bfv) {
                Ok(found) => check.case(found.is_some(), || format!("{bfv} at n = {n}")),
                Err(e) => check.error(e),
            }
        }
    }
    check.done()
}

fn all_vectors(max_entry: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..max_len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max_entry).map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
        all.extend(out.iter().cloned());
    }
    all
}

pub fn oracle_suite(ctx: &FieldCtx, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let o = match Oracle::new(ctx, cfg.budget.clone()) {
        Ok(o) => o,
        Err(e) => return vec![skipped("oracle", e.to_string())],
    };
    let n = ctx.n();
    let mut counts = Check::new("subspace_counts_equal_gaussian_binomials");
    let mut friends = Check::new("fast_best_friend_equals_bruteforce");
    let mut all = Vec::new();
    for k in 0..=n {
        match o.enumerate_subspaces(k) {
            Ok(subs) => {
                let distinct: std::collections::HashSet<_> = subs.iter().collect();
                let expected = gaussian_binomial(n, k, ctx.q());
                counts.case(
                    num_bigint::BigUint::from(subs.len()) == expected && distinct.len() == subs.len(),
                    || format!("k = {k}: {} vs {expected}", subs.len()),
                );
                if 0 < k && k < n {
                    all.extend(subs);
                }
            }
            Err(e) => counts.error(e),
        }
    }
    for u in &all {
        let fast = u.best_friend_exponent().unwrap();
        match o.best_friend_bruteforce(u) {
            Ok(slow) => friends.case(fast == slow, || format!("{u:?}: fast {fast}, oracle {slow}")),
            Err(e) => friends.error(e),
        }
    }

    let mut transversal = Check::new("transversal_equals_all_pairs_on_enumerable_orbits");
    for u in &all {
        let m = u.best_friend_exponent().unwrap();
        if orbit_size(ctx.q(), n, m) > cfg.budget.max_orbit {
            continue;
        }
        let flag = Flag::new(vec![u.clone()]).unwrap();
        let fast = flag.orbit_summary_with_cap(cfg.scan_cap).min_distance;
        match o.orbit_min_distance_bruteforce(&flag) {
            Ok(slow) => transversal.case(fast == Some(slow), || format!("{u:?}: {fast:?} vs {slow}")),
            Err(e) => transversal.error(e),
        }
    }
    for f in sample_flags(ctx, cfg, 13).into_iter().filter(|f| f.len() > 1).take(cfg.samples / 4 + 4) {
        if orbit_size(ctx.q(), n, f.best_friend_exponent()) > cfg.budget.max_orbit {
            continue;
        }
        let fast = f.orbit_summary_with_cap(cfg.scan_cap).min_distance;
        match o.orbit_min_distance_bruteforce(&f) {
            Ok(slow) => transversal.case(fast == Some(slow), || format!("{f:?}: {fast:?} vs {slow}")),
            Err(e) => transversal.error(e),
        }
    }

    let mut dvec = Check::new("dvec_feasible_iff_realized");
    for t in types_up_to(n, 2) {
        let tv = TypeVector::new(t.clone()).unwrap();
        let realized = match o.realized_distance_vectors(&tv) {
            Ok(r) => r,
            Err(e) => {
                dvec.error(e);
                continue;
            }
        };
        let top = 2 * t[t.len() - 1];
        let grid: Vec<Vec<usize>> = if t.len() == 1 {
            (0..=top).step_by(2).map(|a| vec![a]).collect()
        } else {
            (0..=top).step_by(2).flat_map(|a| (0..=top).step_by(2).map(move |b| vec![a, b])).collect()
        };
        for d in grid {
            let dv = DistanceVector::new(d.clone());
            let feasible = dvec_feasible(&tv, n, &dv).unwrap();
            dvec.case(feasible == realized.contains(&dv), || {
                format!("t = {t:?}, d = {d:?}: feasible {feasible}, realized {}", realized.contains(&dv))
            });
        }
        for dv in &realized {
            dvec.case(dvec_feasible(&tv, n, dv).unwrap(), || format!("t = {t:?}: realized {dv} judged infeasible"));
        }
    }

    let mut lower = Check::new("lower_bound_at_most_exact");
    for f in sample_flags(ctx, cfg, 14) {
        let s = f.orbit_summary_with_cap(cfg.scan_cap);
        if let Some(d) = s.min_distance {
            let rep = bounds_report(&s.best_friend_vector, f.type_vector(), n).unwrap();
            lower.case(rep.lower_bound <= d && d <= rep.upper_bound && d % (2 * s.best_friend_exponent) == 0, || {
                format!("{f:?}: {} <= {d} <= {}", rep.lower_bound, rep.upper_bound)
            });
        }
        let _ = lower_bound_min_distance;
    }

    vec![
        counts.done(),
        friends.done(),
        transversal.done(),
        dvec.done(),
        lower.done(),
        not_realizable_soundness(&o, 3),
        realizable_confirmed(&o, 3),
    ]
}
