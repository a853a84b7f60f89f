//! Brute-force reference implementations for small fields.
//!
//! Everything here works by exhaustive enumeration and avoids the structure
//! results used by the fast paths: best friends are found by scanning whole
//! subfields, orbit distances by comparing all pairs, and realizability by
//! searching every chain of subspaces.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::flag::Flag;
use crate::linalg::{Echelon, GroundField};
use crate::subspace::Subspace;
use crate::vectors::{BestFriendVector, DistanceVector, TypeVector};

/// Limits on brute-force work. The defaults cover q = 2 with n <= 6
/// exhaustively and orbits of flags up to n = 10.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(default)]
pub struct EnumBudget {
    /// Largest number of subspaces enumerated in one call.
    pub max_subspaces: u64,
    /// Largest number of flags enumerated in one call.
    pub max_flags: u64,
    /// Largest orbit materialized for all-pairs comparison.
    pub max_orbit: u64,
    /// Largest field scanned element by element.
    pub max_field: u64,
    /// Samples drawn in randomized searches.
    pub random_samples: u64,
}

impl Default for EnumBudget {
    fn default() -> Self {
        Self { max_subspaces: 4096, max_flags: 1 << 17, max_orbit: 4096, max_field: 1 << 12, random_samples: 20_000 }
    }
}

/// `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let one = BigUint::from(1u32);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - &one;
        den *= q.pow((k - i) as u32) - &one;
    }
    num / den
}

fn small(x: &BigUint) -> u64 {
    u64::try_from(x).unwrap_or(u64::MAX)
}

/// Calls `f` with every `k x d` reduced echelon matrix over `gf`, as packed
/// rows.
fn for_each_rref(gf: &GroundField, d: usize, k: usize, f: &mut dyn FnMut(&[u64])) {
    let q = gf.order();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut rows: Vec<u64> = pivots.iter().map(|&p| gf.set(0, p, 1)).collect();
            for (&(i, c), &v) in free.iter().zip(&digits) {
                rows[i] = gf.set(rows[i], c, v);
            }
            f(&rows);
            let mut pos = 0;
            while pos < digits.len() && digits[pos] + 1 == q {
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
            digits[pos] += 1;
        }
        // next k-combination of 0..d
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < d - k + i) else { return };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Debug)]
pub struct DvecSearch<'a> {
    pub mode: SearchMode,
    /// Set when exhaustive search was requested but exceeded the budget.
    pub downgraded: bool,
    pub candidates: u64,
    pub pair: Option<(Flag<'a>, Flag<'a>)>,
}

pub struct Oracle<'a> {
    ctx: &'a FieldCtx,
    budget: EnumBudget,
    subfields: Vec<(usize, Vec<FieldElem>)>,
    friends: OnceLock<HashMap<usize, Vec<Subspace<'a>>>>,
}

impl<'a> Oracle<'a> {
    pub fn new(ctx: &'a FieldCtx, budget: EnumBudget) -> Result<Self> {
        if ctx.order() > budget.max_field {
            return Err(Error::EnumerationCapExceeded { size: ctx.order(), cap: budget.max_field });
        }
        let all: Vec<FieldElem> = (0..ctx.group_order()).map(|k| ctx.gamma_pow(k)).collect();
        let subfields = ctx
            .divisors()
            .iter()
            .map(|&m| {
                let id = ctx.subfield(m).unwrap();
                (m, all.iter().copied().filter(|&x| ctx.is_in_subfield(x, id)).collect())
            })
            .collect();
        Ok(Self { ctx, budget, subfields, friends: OnceLock::new() })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn budget(&self) -> &EnumBudget {
        &self.budget
    }

    fn check(&self, size: u64, cap: u64) -> Result<()> {
        if size > cap {
            Err(Error::EnumerationCapExceeded { size, cap })
        } else {
            Ok(())
        }
    }

    /// All k-dimensional subspaces of F_{q^n}.
    pub fn enumerate_subspaces(&self, k: usize) -> Result<Vec<Subspace<'a>>> {
        self.subspaces_within(&Subspace::full(self.ctx), k)
    }

    /// All k-dimensional subspaces of `w`.
    pub fn subspaces_within(&self, w: &Subspace<'a>, k: usize) -> Result<Vec<Subspace<'a>>> {
        let d = w.dim();
        let count = small(&gaussian_binomial(d, k, self.ctx.q()));
        self.check(count, self.budget.max_subspaces)?;
        let gf = self.ctx.ground();
        let n = self.ctx.n();
        let basis = w.rows();
        let mut out = Vec::with_capacity(count as usize);
        if k == 0 {
            out.push(Subspace::zero(self.ctx));
            return Ok(out);
        }
        for_each_rref(gf, d, k, &mut |coeffs| {
            let rows = coeffs.iter().map(|&c| {
                (0..d).fold(0u64, |acc, j| gf.add_scaled(acc, gf.get(c, j), basis[j], n))
            });
            out.push(Subspace::from_rows(self.ctx, rows));
        });
        Ok(out)
    }

    /// All flags of type `t`.
    pub fn enumerate_flags(&self, t: &TypeVector) -> Result<Vec<Flag<'a>>> {
        t.check_proper(self.ctx.n())?;
        let q = self.ctx.q();
        let ts = t.as_slice();
        let mut count = gaussian_binomial(self.ctx.n(), ts[ts.len() - 1], q);
        for w in ts.windows(2) {
            count *= gaussian_binomial(w[1], w[0], q);
        }
        self.check(small(&count), self.budget.max_flags)?;
        let mut partial: Vec<Vec<Subspace<'a>>> =
            self.enumerate_subspaces_unchecked(ts[ts.len() - 1]).into_iter().map(|s| vec![s]).collect();
        for &k in ts.iter().rev().skip(1) {
            let mut next = Vec::new();
            for chain in partial {
                for s in self.subspaces_within_unchecked(chain.last().unwrap(), k) {
                    let mut c = chain.clone();
                    c.push(s);
                    next.push(c);
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|mut chain| {
                chain.reverse();
                Flag::new(chain)
            })
            .collect()
    }

    fn enumerate_subspaces_unchecked(&self, k: usize) -> Vec<Subspace<'a>> {
        self.subspaces_within_unchecked(&Subspace::full(self.ctx), k)
    }

    fn subspaces_within_unchecked(&self, w: &Subspace<'a>, k: usize) -> Vec<Subspace<'a>> {
        let relaxed = Oracle {
            ctx: self.ctx,
            budget: EnumBudget { max_subspaces: u64::MAX, ..self.budget.clone() },
            subfields: Vec::new(),
            friends: OnceLock::new(),
        };
        relaxed.subspaces_within(w, k).expect("unbounded budget")
    }

    /// Largest `m | n` such that `U beta = U` for every nonzero `beta` in
    /// F_{q^m}, testing each element of each subfield.
    pub fn best_friend_bruteforce(&self, u: &Subspace<'a>) -> Result<usize> {
        if u.is_zero() || u.is_full() {
            return Err(Error::DegenerateSubspace { dim: u.dim(), n: self.ctx.n() });
        }
        Ok(self
            .subfields
            .iter()
            .rev()
            .find(|(_, elems)| elems.iter().all(|&b| u.scalar_mul(b).unwrap() == *u))
            .map(|(m, _)| *m)
            .unwrap_or(1))
    }

    /// The orbit `{F alpha}` as distinct flags, from every nonzero alpha.
    pub fn orbit(&self, f: &Flag<'a>) -> Result<Vec<Flag<'a>>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for k in 0..self.ctx.group_order() {
            let g = f.scalar_mul(self.ctx.gamma_pow(k))?;
            if seen.insert(g.clone()) {
                out.push(g);
                self.check(out.len() as u64, self.budget.max_orbit)?;
            }
        }
        Ok(out)
    }

    /// Minimum distance of the orbit code over all pairs of its elements.
    pub fn orbit_min_distance_bruteforce(&self, f: &Flag<'a>) -> Result<usize> {
        let orbit = self.orbit(f)?;
        let mut best: Option<usize> = None;
        for (i, a) in orbit.iter().enumerate() {
            for b in &orbit[i + 1..] {
                let d = a.distance(b)?;
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
        Ok(best.unwrap_or(0))
    }

    /// `(span(gamma^0..gamma^{t_1-1}), ..., span(gamma^0..gamma^{t_r-1}))`.
    pub fn standard_flag(&self, t: &TypeVector) -> Result<Flag<'a>> {
        t.check_proper(self.ctx.n())?;
        let gf = self.ctx.ground();
        let subs = t
            .as_slice()
            .iter()
            .map(|&k| Subspace::from_rows(self.ctx, (0..k).map(|i| gf.set(0, i, 1))))
            .collect();
        Flag::new(subs)
    }

    /// Distance vectors realized by pairs of flags of type `t`. The general
    /// linear group acts transitively on flags of a fixed type and preserves
    /// distance vectors, so pairs with the standard flag suffice.
    pub fn realized_distance_vectors(&self, t: &TypeVector) -> Result<BTreeSet<DistanceVector>> {
        let base = self.standard_flag(t)?;
        self.enumerate_flags(t)?.iter().map(|f| base.distance_vector(f)).collect()
    }

    /// Looks for a pair of flags of type `t` with distance vector `d`.
    /// An exhaustive search that finds nothing proves that `d` is not a
    /// distance vector for this field; a randomized one proves nothing.
    pub fn dvec_realization_search(&self, t: &TypeVector, d: &DistanceVector, seed: u64) -> Result<DvecSearch<'a>> {
        if d.len() != t.len() {
            return Err(Error::LengthMismatch { expected: t.len(), found: d.len() });
        }
        let base = self.standard_flag(t)?;
        match self.enumerate_flags(t) {
            Ok(flags) => {
                let candidates = flags.len() as u64;
                let pair = flags.into_iter().find(|f| base.distance_vector(f).as_ref() == Ok(d)).map(|f| (base.clone(), f));
                Ok(DvecSearch { mode: SearchMode::Exhaustive, downgraded: false, candidates, pair })
            }
            Err(Error::EnumerationCapExceeded { .. }) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for i in 0..self.budget.random_samples {
                    let f = self.random_flag(t, &mut rng);
                    if base.distance_vector(&f)? == *d {
                        return Ok(DvecSearch {
                            mode: SearchMode::Randomized,
                            downgraded: true,
                            candidates: i + 1,
                            pair: Some((base, f)),
                        });
                    }
                }
                Ok(DvecSearch {
                    mode: SearchMode::Randomized,
                    downgraded: true,
                    candidates: self.budget.random_samples,
                    pair: None,
                })
            }
            Err(e) => Err(e),
        }
    }

    /// A random flag of type `t`, extending a random basis step by step.
    pub fn random_flag(&self, t: &TypeVector, rng: &mut impl Rng) -> Flag<'a> {
        random_flag(self.ctx, t, rng)
    }

    /// Searches every chain of subspaces for a flag with best friend vector
    /// `bfv`, using brute-force best friends.
    pub fn realizability_bruteforce(&self, bfv: &BestFriendVector) -> Result<Option<Flag<'a>>> {
        let n = self.ctx.n();
        let total: u64 = (1..n).map(|k| small(&gaussian_binomial(n, k, self.ctx.q()))).sum();
        self.check(total, self.budget.max_subspaces)?;
        let by_friend = self.friends.get_or_init(|| {
            let mut table: HashMap<usize, Vec<Subspace<'a>>> = HashMap::new();
            for k in 1..n {
                for s in self.enumerate_subspaces_unchecked(k) {
                    let m = self.best_friend_bruteforce(&s).expect("proper subspace");
                    table.entry(m).or_default().push(s);
                }
            }
            table
        });
        let ms = bfv.as_slice();
        let mut dead: HashSet<(usize, Vec<u64>)> = HashSet::new();
        let mut chain: Vec<Subspace<'a>> = Vec::new();
        Ok(search_chain(ms, by_friend, &mut chain, &mut dead).then(|| Flag::new(chain).expect("valid chain")))
    }
}

fn search_chain<'a>(
    ms: &[usize],
    by_friend: &HashMap<usize, Vec<Subspace<'a>>>,
    chain: &mut Vec<Subspace<'a>>,
    dead: &mut HashSet<(usize, Vec<u64>)>,
) -> bool {
    let pos = chain.len();
    if pos == ms.len() {
        return true;
    }
    let key = (pos, chain.last().map(|s| s.rows().to_vec()).unwrap_or_default());
    if dead.contains(&key) {
        return false;
    }
    let Some(candidates) = by_friend.get(&ms[pos]) else {
        dead.insert(key);
        return false;
    };
    for c in candidates {
        let fits = chain.last().is_none_or(|prev| c.dim() > prev.dim() && c.contains(prev).unwrap());
        if fits {
            chain.push(c.clone());
            if search_chain(ms, by_friend, chain, dead) {
                return true;
            }
            chain.pop();
        }
    }
    dead.insert(key);
    false
}

/// A random flag of type `t` over `ctx`.
pub fn random_flag<'a>(ctx: &'a FieldCtx, t: &TypeVector, rng: &mut impl Rng) -> Flag<'a> {
    let gf = ctx.ground();
    let n = ctx.n();
    let mut ech = Echelon::new(gf, n);
    let mut rows = Vec::new();
    let mut subs = Vec::with_capacity(t.len());
    for &k in t.as_slice() {
        while ech.rank() < k {
            let x = ctx.gamma_pow(rng.gen_range(0..ctx.group_order()));
            let row = ctx.pack(x);
            if ech.insert(row) {
                rows.push(row);
            }
        }
        subs.push(Subspace::from_rows(ctx, rows.iter().copied()));
    }
    Flag::new(subs).expect("random chain is a flag")
}

/// A random nonzero proper subspace of dimension `k`.
pub fn random_subspace<'a>(ctx: &'a FieldCtx, k: usize, rng: &mut impl Rng) -> Subspace<'a> {
    let t = TypeVector::new(vec![k]).expect("positive dimension");
    random_flag(ctx, &t, rng).subspaces()[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(4, 0, 2), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(6, 3, 2), BigUint::from(1395u32));
        assert_eq!(gaussian_binomial(3, 1, 3), BigUint::from(13u32));
    }

    #[test]
    fn subspace_counts() {
        let ctx = FieldParams::new(2, 1, 4).build().unwrap();
        let o = Oracle::new(&ctx, EnumBudget::default()).unwrap();
        assert_eq!(o.enumerate_subspaces(0).unwrap().len(), 1);
        let two = o.enumerate_subspaces(2).unwrap();
        assert_eq!(two.len(), 35);
        assert_eq!(two.iter().collect::<HashSet<_>>().len(), 35);
    }

    #[test]
    fn ternary_counts() {
        let ctx = FieldParams::new(3, 1, 3).build().unwrap();
        let o = Oracle::new(&ctx, EnumBudget::default()).unwrap();
        assert_eq!(o.enumerate_subspaces(1).unwrap().len(), 13);
        assert_eq!(o.enumerate_subspaces(2).unwrap().len(), 13);
    }

    #[test]
    fn best_friend_of_subfield() {
        let ctx = FieldParams::new(2, 1, 6).build().unwrap();
        let o = Oracle::new(&ctx, EnumBudget::default()).unwrap();
        for m in [1, 2, 3] {
            assert_eq!(o.best_friend_bruteforce(&Subspace::subfield(&ctx, m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn realizability_small() {
        let ctx = FieldParams::new(2, 1, 6).build().unwrap();
        let o = Oracle::new(&ctx, EnumBudget::default()).unwrap();
        let bf = |m: &[usize]| BestFriendVector::new(m.to_vec()).unwrap();
        assert!(o.realizability_bruteforce(&bf(&[2, 3])).unwrap().is_none());
        let w = o.realizability_bruteforce(&bf(&[2, 2])).unwrap().unwrap();
        assert_eq!(w.best_friend_vector(), bf(&[2, 2]));
        assert!(o.realizability_bruteforce(&bf(&[1, 1])).unwrap().is_some());
        assert!(o.realizability_bruteforce(&bf(&[3, 3])).unwrap().is_none());
    }

    #[test]
    fn dvec_search() {
        let ctx = FieldParams::new(2, 1, 6).build().unwrap();
        let o = Oracle::new(&ctx, EnumBudget::default()).unwrap();
        let t = TypeVector::new(vec![2, 4]).unwrap();
        let s = o.dvec_realization_search(&t, &DistanceVector::new(vec![4, 0]), 7).unwrap();
        assert_eq!(s.mode, SearchMode::Exhaustive);
        let (a, b) = s.pair.unwrap();
        assert_eq!(a.distance_vector(&b).unwrap().as_slice(), &[4, 0]);
        let t = TypeVector::new(vec![2, 3]).unwrap();
        let s = o.dvec_realization_search(&t, &DistanceVector::new(vec![2, 6]), 7).unwrap();
        assert!(s.pair.is_none());
    }
}
