//! Flags with a prescribed best friend vector: Galois flags, the length-2
//! construction, the general construction, and realizability verdicts.
//!
//! Constructions are described by a [`Recipe`]: for each subspace, a list of
//! summands `F_{q^d} * gamma^a`. Recipes do not depend on q or on the
//! modulus, so they can be reported as element literals without discrete
//! logarithms.

use serde::Serialize;

use crate::bounds::type_constraints_check;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::flag::Flag;
use crate::numth::{lcm, lcm_all};
use crate::subspace::Subspace;
use crate::vectors::BestFriendVector;

/// One summand `F_{q^subfield} * gamma^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub subfield: usize,
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Recipe(pub Vec<Vec<Summand>>);

impl Recipe {
    /// Subspace dimensions over F_q, assuming the summands are independent.
    pub fn type_vector(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.iter().map(|x| x.subfield).sum()).collect()
    }

    /// Discrete-log exponents of an F_q-spanning set for each subspace.
    pub fn generator_exponents(&self, ctx: &FieldCtx) -> Result<Vec<Vec<u64>>> {
        let order = ctx.group_order();
        self.0
            .iter()
            .map(|summands| {
                let mut out = Vec::new();
                for s in summands {
                    let id = ctx.subfield(s.subfield)?;
                    let step = order / (ctx.subfield_order(id) - 1);
                    out.extend((0..s.subfield as u64).map(|b| (b * step + s.power as u64) % order));
                }
                Ok(out)
            })
            .collect()
    }

    pub fn build<'a>(&self, ctx: &'a FieldCtx) -> Result<Flag<'a>> {
        let subspaces = self
            .generator_exponents(ctx)?
            .iter()
            .map(|exps| {
                let elems: Vec<_> = exps.iter().map(|&k| ctx.gamma_pow(k)).collect();
                Subspace::from_generators(ctx, &elems)
            })
            .collect();
        Flag::new(subspaces)
    }
}

/// Parameters of the general construction for a best friend vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub bfv: Vec<usize>,
    /// `k_i` for `i = 1..=r` (with `k_1 = 0`).
    pub k_i: Vec<usize>,
    /// Prefix lcms `l_i`.
    pub l_i: Vec<usize>,
    pub k: usize,
    pub l: usize,
    pub s: usize,
    /// `s * l`.
    pub sufficient_n: usize,
}

pub fn construction_plan(bfv: &BestFriendVector) -> ConstructionPlan {
    let m = bfv.as_slice();
    let r = m.len();
    let mut k_i = vec![0usize; r];
    for i in 1..r {
        let step = m[i] > m[i - 1] && m[i] % m[i - 1] == 0;
        k_i[i] = k_i[i - 1] + usize::from(step);
    }
    let mut l_i = Vec::with_capacity(r);
    let mut acc = 1u64;
    for &x in m {
        acc = lcm(acc, x as u64);
        l_i.push(acc as usize);
    }
    let (k, l) = (k_i[r - 1], l_i[r - 1]);
    let s = if m[r - 1] != l { r - k } else { r - k + 1 };
    ConstructionPlan { bfv: m.to_vec(), k_i, l_i, k, l, s, sufficient_n: s * l }
}

impl ConstructionPlan {
    /// `F_i = F_{q^{l_i}} + ... + F_{q^{l_i}} gamma^{i-k_i-2} + F_{q^{m_i}} gamma^{i-k_i-1}`
    /// (1-based `i`). For `i = 1, 2` this reduces to the two-case start.
    pub fn recipe(&self) -> Recipe {
        let subspaces = (0..self.bfv.len())
            .map(|idx| {
                let top = idx - self.k_i[idx];
                let mut summands: Vec<Summand> =
                    (0..top).map(|a| Summand { subfield: self.l_i[idx], power: a }).collect();
                summands.push(Summand { subfield: self.bfv[idx], power: top });
                summands
            })
            .collect();
        Recipe(subspaces)
    }
}

fn require_divides_n(m: &[usize], n: usize) -> Result<()> {
    match m.iter().find(|&&x| n % x != 0) {
        Some(&x) => Err(Error::NotADivisor { m: x, n }),
        None => Ok(()),
    }
}

/// Builds the general construction over `ctx` and checks its best friend
/// vector.
pub fn construct_general<'a>(ctx: &'a FieldCtx, bfv: &BestFriendVector) -> Result<Flag<'a>> {
    let n = ctx.n();
    require_divides_n(bfv.as_slice(), n)?;
    let plan = construction_plan(bfv);
    if n < plan.sufficient_n {
        return Err(Error::BelowSufficientDegree { n, required: plan.sufficient_n });
    }
    let flag = plan.recipe().build(ctx)?;
    verify_round_trip(&flag, bfv)?;
    Ok(flag)
}

fn verify_round_trip(flag: &Flag<'_>, bfv: &BestFriendVector) -> Result<()> {
    let got = flag.best_friend_vector();
    if &got != bfv {
        return Err(Error::Internal(format!("constructed flag has best friend vector {got}, expected {bfv}")));
    }
    Ok(())
}

/// The Galois flag `(F_{q^{t_1}}, ..., F_{q^{t_r}})`.
pub fn galois_flag<'a>(ctx: &'a FieldCtx, chain: &[usize]) -> Result<Flag<'a>> {
    let n = ctx.n();
    let is_chain = !chain.is_empty()
        && chain.windows(2).all(|w| w[0] < w[1] && w[1] % w[0] == 0)
        && n % chain[chain.len() - 1] == 0
        && chain[chain.len() - 1] < n;
    if !is_chain {
        return Err(Error::InvalidType(format!("{chain:?} is not a strict divisor chain of proper divisors of {n}")));
    }
    Flag::new(chain.iter().map(|&m| Subspace::subfield(ctx, m)).collect::<Result<Vec<_>>>()?)
}

/// Whether flags with best friend vector `(m1, m2)` exist on F_{q^n}.
pub fn realizable_len2(m1: usize, m2: usize, n: usize) -> bool {
    if m1 == 0 || m2 == 0 {
        return false;
    }
    let l = lcm(m1 as u64, m2 as u64) as usize;
    let min_s = if m1 == m2 { 3 } else { 2 };
    n % l == 0 && n / l >= min_s
}

pub fn construct_length2<'a>(ctx: &'a FieldCtx, m1: usize, m2: usize) -> Result<Flag<'a>> {
    let n = ctx.n();
    if !realizable_len2(m1, m2, n) {
        return Err(Error::NotRealizable {
            bfv: vec![m1, m2],
            n,
            reason: "n is not a large enough multiple of lcm(m_1, m_2)".into(),
        });
    }
    construct_general(ctx, &BestFriendVector::new(vec![m1, m2])?)
}

/// The smallest type vector allowed by the type constraints, or `None` when
/// every admissible type reaches `n`.
pub fn minimal_type(bfv: &[usize], n: usize) -> Option<Vec<usize>> {
    let r = bfv.len();
    let mut t: Vec<usize> = Vec::with_capacity(r);
    let mut l = 1usize;
    for i in 0..r {
        let mi = bfv[i];
        l = lcm(l as u64, mi as u64) as usize;
        let mut low = if mi == l { l } else { l + 1 };
        if i > 0 {
            let prev = bfv[i - 1];
            let g = crate::numth::gcd(prev as u64, mi as u64) as usize;
            let gap = if g == prev {
                prev
            } else if g == mi {
                mi
            } else {
                prev.max(mi)
            };
            low = low.max(t[i - 1] + gap);
        }
        for &ma in &bfv[..i] {
            let extra = if mi % ma != 0 { mi } else { 0 };
            low = low.max(lcm(ma as u64, mi as u64) as usize + extra);
        }
        let ti = low.div_ceil(mi) * mi;
        if ti >= n {
            return None;
        }
        t.push(ti);
    }
    debug_assert!(type_constraints_check(&t, bfv, n).is_empty() || bfv.iter().any(|&x| n % x != 0));
    Some(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RealizabilityVerdict {
    Realizable {
        /// Which result establishes existence.
        basis: String,
        plan: ConstructionPlan,
        witness: Recipe,
    },
    NotRealizable {
        reason: String,
    },
    Unknown {
        reason: String,
        plan: ConstructionPlan,
    },
}

impl RealizabilityVerdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Self::Realizable { .. })
    }

    pub fn is_not_realizable(&self) -> bool {
        matches!(self, Self::NotRealizable { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Self::Unknown { .. })
    }
}

/// Decides whether flags on F_{q^n} with best friend vector `bfv` exist.
/// The answer does not depend on q. `Unknown` is returned when neither a
/// necessary condition fails nor a sufficient one holds.
pub fn realizability_verdict(bfv: &BestFriendVector, n: usize) -> RealizabilityVerdict {
    let m = bfv.as_slice();
    let r = m.len();
    let not = |reason: String| RealizabilityVerdict::NotRealizable { reason };

    if let Some(i) = m.iter().position(|&x| n % x != 0) {
        return not(format!("m_{} = {} does not divide n", i + 1, m[i]));
    }
    if let Some(i) = m.iter().position(|&x| x == n) {
        return not(format!("m_{} equals n", i + 1));
    }
    for a in 0..r {
        for b in a + 1..r {
            if lcm(m[a] as u64, m[b] as u64) as usize == n {
                return not(format!("lcm equals n for positions {} and {}", a + 1, b + 1));
            }
        }
    }
    if minimal_type(m, n).is_none() {
        return not("no admissible type vector fits below n".into());
    }

    let plan = construction_plan(bfv);
    let realizable = |basis: &str| RealizabilityVerdict::Realizable {
        basis: basis.into(),
        plan: plan.clone(),
        witness: plan.recipe(),
    };
    let l = lcm_all(m);
    let constant = m.iter().all(|&x| x == m[0]);
    let strict_chain = m.windows(2).all(|w| w[0] < w[1] && w[1] % w[0] == 0);
    if r == 1 {
        return realizable("single subfield");
    }
    if r == 2 {
        return if realizable_len2(m[0], m[1], n) {
            realizable("length-2 characterization")
        } else {
            not("n is not s * lcm(m_1, m_2) with s large enough".into())
        };
    }
    if constant {
        return if n / m[0] > r {
            realizable("constant vector characterization")
        } else {
            not(format!("constant vector needs n = s * {} with s >= {}", m[0], r + 1))
        };
    }
    if strict_chain {
        return if n / m[r - 1] >= 2 {
            realizable("divisor chain characterization")
        } else {
            not("divisor chain needs n = s * m_r with s >= 2".into())
        };
    }
    debug_assert_eq!(l, plan.l);
    if n >= plan.sufficient_n {
        return realizable("sufficient degree");
    }
    RealizabilityVerdict::Unknown {
        reason: format!("n = {n} is below the sufficient degree {}", plan.sufficient_n),
        plan,
    }
}

/// Hand-built flags realizing best friend vectors below the sufficient
/// degree of the general construction.
pub mod fixtures {
    use super::*;

    fn elems(ctx: &FieldCtx, exps: impl IntoIterator<Item = u64>) -> Vec<crate::field::FieldElem> {
        exps.into_iter().map(|k| ctx.gamma_pow(k)).collect()
    }

    fn subfield_exps(ctx: &FieldCtx, d: usize, power: u64, count: u64) -> Vec<u64> {
        let step = ctx.group_order() / (ctx.q().pow(d as u32) - 1);
        (0..count).map(|b| b * step + power).collect()
    }

    /// Exponent lists for `(F_{q^2}, F_{q^4}, F_{q^8}, U, V)` on F_{q^16}
    /// with `U = F_{q^8} + <g8^b gamma : b < 3>` and
    /// `V = U + <g8^3 gamma, g8^4 gamma>`, `g8` generating F_{q^8}^*.
    pub fn n16_exponents(ctx: &FieldCtx) -> Vec<Vec<u64>> {
        let f8 = subfield_exps(ctx, 8, 0, 8);
        let shifted = subfield_exps(ctx, 8, 1, 5);
        let u: Vec<u64> = f8.iter().copied().chain(shifted[..3].iter().copied()).collect();
        let v: Vec<u64> = f8.iter().copied().chain(shifted.iter().copied()).collect();
        vec![subfield_exps(ctx, 2, 0, 2), subfield_exps(ctx, 4, 0, 4), f8, u, v]
    }

    /// Exponent lists for `(F_{q^3}, F_{q^6} + F_{q^2} gamma, F_{q^6} + F_{q^2} gamma + F_q delta)`
    /// on F_{q^12} with `delta = g6 * gamma` outside the second subspace.
    pub fn n12_exponents(ctx: &FieldCtx) -> Vec<Vec<u64>> {
        let f3 = subfield_exps(ctx, 3, 0, 3);
        let mut second = subfield_exps(ctx, 6, 0, 6);
        second.extend(subfield_exps(ctx, 2, 1, 2));
        let delta = subfield_exps(ctx, 6, 1, 2)[1];
        let mut third = second.clone();
        third.push(delta);
        vec![f3, second, third]
    }

    fn build<'a>(ctx: &'a FieldCtx, exps: Vec<Vec<u64>>, n: usize) -> Result<Flag<'a>> {
        if ctx.n() != n {
            return Err(Error::InvalidParams(format!("fixture needs n = {n}")));
        }
        Flag::new(exps.into_iter().map(|e| Subspace::from_generators(ctx, &elems(ctx, e))).collect())
    }

    /// A flag on F_{q^16} with best friend vector (2,4,8,1,1).
    pub fn flag_n16(ctx: &FieldCtx) -> Result<Flag<'_>> {
        build(ctx, n16_exponents(ctx), 16)
    }

    /// A flag on F_{q^12} with best friend vector (3,2,1).
    pub fn flag_n12(ctx: &FieldCtx) -> Result<Flag<'_>> {
        build(ctx, n12_exponents(ctx), 12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;

    fn bf(m: &[usize]) -> BestFriendVector {
        BestFriendVector::new(m.to_vec()).unwrap()
    }

    #[test]
    fn plans() {
        let p = construction_plan(&bf(&[3, 2, 1]));
        assert_eq!((p.k, p.l, p.s, p.sufficient_n), (0, 6, 3, 18));
        let p = construction_plan(&bf(&[2, 4, 8, 1, 1]));
        assert_eq!(p.k_i, vec![0, 1, 2, 2, 2]);
        assert_eq!((p.k, p.l, p.s, p.sufficient_n), (2, 8, 3, 24));
        let p = construction_plan(&bf(&[2, 4, 8]));
        assert_eq!((p.k, p.l, p.s, p.sufficient_n), (2, 8, 2, 16));
    }

    #[test]
    fn recipe_of_three_two_one() {
        let r = construction_plan(&bf(&[3, 2, 1])).recipe();
        let s = |subfield, power| Summand { subfield, power };
        assert_eq!(r.0, vec![vec![s(3, 0)], vec![s(6, 0), s(2, 1)], vec![s(6, 0), s(6, 1), s(1, 2)]]);
        assert_eq!(r.type_vector(), vec![3, 8, 13]);
    }

    #[test]
    fn length_two() {
        assert!(!realizable_len2(4, 3, 12));
        assert!(realizable_len2(4, 3, 24));
        assert!(!realizable_len2(2, 2, 4));
        assert!(realizable_len2(2, 2, 6));
        let ctx = FieldParams::new(2, 1, 6).build().unwrap();
        let f = construct_length2(&ctx, 2, 2).unwrap();
        assert_eq!(f.type_vector().as_slice(), &[2, 4]);
        let ctx8 = FieldParams::new(2, 1, 8).build().unwrap();
        assert_eq!(construct_length2(&ctx8, 2, 4).unwrap(), galois_flag(&ctx8, &[2, 4]).unwrap());
    }

    #[test]
    fn galois_rejects_non_chains() {
        let ctx = FieldParams::new(2, 1, 6).build().unwrap();
        assert!(galois_flag(&ctx, &[2, 3]).is_err());
        assert!(galois_flag(&ctx, &[3]).is_ok());
    }

    #[test]
    fn verdicts() {
        assert!(realizability_verdict(&bf(&[2, 3]), 6).is_not_realizable());
        assert!(realizability_verdict(&bf(&[4, 3]), 12).is_not_realizable());
        assert!(realizability_verdict(&bf(&[4, 3]), 24).is_realizable());
        assert!(realizability_verdict(&bf(&[2, 2]), 4).is_not_realizable());
        assert!(realizability_verdict(&bf(&[2, 2]), 6).is_realizable());
        assert!(realizability_verdict(&bf(&[2, 4, 8, 1, 1]), 24).is_realizable());
        assert!(realizability_verdict(&bf(&[2, 4, 8, 1, 1]), 16).is_unknown());
        assert!(realizability_verdict(&bf(&[3, 2, 1]), 12).is_unknown());
    }

    #[test]
    fn minimal_types() {
        assert_eq!(minimal_type(&[4, 3], 24), Some(vec![4, 15]));
        assert_eq!(minimal_type(&[2, 4, 8, 1, 1], 16), Some(vec![2, 4, 8, 9, 10]));
        assert_eq!(minimal_type(&[2, 2], 4), None);
    }
}
