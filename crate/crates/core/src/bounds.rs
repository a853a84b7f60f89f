//! Integer bounds on flag distances and on the minimum distance of cyclic
//! orbit flag codes, plus the type-vector constraints imposed by a best
//! friend vector. Nothing here depends on q.
//!
//! Zero sets are 1-based position lists, as in the usual notation
//! `D^{(t,n)}(i_1, ..., i_M)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth::{gcd, lcm};
use crate::vectors::{BestFriendVector, DistanceVector, TypeVector};

/// Above this many distinct non-gcd entries, chains are found greedily.
pub const EXACT_CHAIN_LIMIT: usize = 16;

fn cap(t: usize, n: usize) -> usize {
    2 * t.min(n - t)
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `D^{(t,n)}`, the largest possible distance between flags of type `t`.
pub fn max_flag_distance(t: &TypeVector, n: usize) -> Result<usize> {
    t.check_proper(n)?;
    Ok(t.as_slice().iter().map(|&ti| cap(ti, n)).sum())
}

/// `D^{(t,n)}(S)`: the largest flag distance among pairs whose distance
/// vector vanishes on the 1-based positions in `zeros`.
pub fn max_distance_with_zeros(t: &TypeVector, n: usize, zeros: &[usize]) -> Result<usize> {
    t.check_proper(n)?;
    let r = t.len();
    if zeros.is_empty() || zeros.iter().any(|&i| i == 0 || i > r) {
        return Err(Error::BadZeroSet { r });
    }
    let ts = t.as_slice();
    Ok(ts
        .iter()
        .map(|&tk| {
            zeros
                .iter()
                .map(|&i| 2 * tk.abs_diff(ts[i - 1]))
                .chain(std::iter::once(cap(tk, n)))
                .min()
                .unwrap()
        })
        .sum())
}

/// Whether `d` can be the distance vector of two flags of type `t`.
pub fn dvec_feasible(t: &TypeVector, n: usize, d: &DistanceVector) -> Result<bool> {
    t.check_proper(n)?;
    check_len(t.len(), d.len())?;
    let (ts, ds) = (t.as_slice(), d.as_slice());
    let componentwise = ds.iter().zip(ts).all(|(&di, &ti)| di % 2 == 0 && di <= cap(ti, n));
    let steps = (1..ts.len()).all(|i| ds[i].abs_diff(ds[i - 1]) <= 2 * (ts[i] - ts[i - 1]));
    Ok(componentwise && steps)
}

/// `max(2 min m_i, 2 m j)`.
pub fn lower_bound_min_distance(bfv: &BestFriendVector) -> usize {
    (2 * bfv.min()).max(2 * bfv.gcd() * bfv.j())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// All positions sharing one best friend other than the flag's.
    Repeated,
    /// Positions whose best friends form a divisibility chain.
    Chain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub zero_set: Vec<usize>,
    pub d_value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub value: usize,
    /// Zero set attaining `value`; `None` when no zero set is admissible and
    /// `value` is `D^{(t,n)}`.
    pub certificate: Option<Vec<usize>>,
    pub certificates: Vec<Certificate>,
    pub exact: bool,
}

/// Maximal sets of distinct values, none equal to `m`, that form a
/// divisibility chain.
fn maximal_chains(values: &[usize]) -> (Vec<Vec<usize>>, bool) {
    let k = values.len();
    if k > EXACT_CHAIN_LIMIT {
        let mut chains = BTreeSet::new();
        for &start in values {
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(&next) = values.iter().find(|&&v| v > cur && v % cur == 0) {
                chain.push(next);
                cur = next;
            }
            chains.insert(chain);
        }
        return (chains.into_iter().collect(), false);
    }
    let is_chain = |mask: u32| {
        let mut prev = None;
        for (i, &v) in values.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if let Some(p) = prev {
                    if v % p != 0 {
                        return false;
                    }
                }
                prev = Some(v);
            }
        }
        true
    };
    let chains: Vec<u32> = (1u32..1 << k).filter(|&mask| is_chain(mask)).collect();
    let maximal = chains
        .iter()
        .filter(|&&a| !chains.iter().any(|&b| b != a && b & a == a))
        .map(|&mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| values[i]).collect())
        .collect();
    (maximal, true)
}

/// Smallest `D^{(t,n)}(S)` over the zero sets `S` admitted by the best
/// friend vector: positions sharing a best friend other than the flag's, and
/// positions whose best friends form a divisibility chain.
pub fn upper_bound_min_distance(bfv: &BestFriendVector, t: &TypeVector, n: usize) -> Result<UpperBound> {
    check_len(t.len(), bfv.len())?;
    let full = max_flag_distance(t, n)?;
    let ms = bfv.as_slice();
    let m = bfv.gcd();
    let positions_of = |vals: &[usize]| -> Vec<usize> {
        (1..=ms.len()).filter(|&i| vals.contains(&ms[i - 1])).collect()
    };
    let distinct: Vec<usize> = ms.iter().copied().filter(|&v| v != m).collect::<BTreeSet<_>>().into_iter().collect();

    let mut certificates = Vec::new();
    for &v in &distinct {
        let zs = positions_of(&[v]);
        let d_value = max_distance_with_zeros(t, n, &zs)?;
        certificates.push(Certificate { kind: CertificateKind::Repeated, zero_set: zs, d_value });
    }
    let (chains, exact) = maximal_chains(&distinct);
    for chain in chains.iter().filter(|c| c.len() > 1) {
        let zs = positions_of(chain);
        let d_value = max_distance_with_zeros(t, n, &zs)?;
        certificates.push(Certificate { kind: CertificateKind::Chain, zero_set: zs, d_value });
    }

    let best = certificates
        .iter()
        .min_by(|a, b| {
            a.d_value
                .cmp(&b.d_value)
                .then(b.zero_set.len().cmp(&a.zero_set.len()))
                .then(a.zero_set.cmp(&b.zero_set))
        })
        .map(|c| (c.d_value, c.zero_set.clone()));
    let (value, certificate) = match best {
        Some((v, zs)) if v <= full => (v, Some(zs)),
        _ => (full, None),
    };
    Ok(UpperBound { value, certificate, certificates, exact })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    /// 1-based positions involved.
    pub positions: Vec<usize>,
    pub detail: String,
}

impl Violation {
    fn new(rule: &'static str, positions: Vec<usize>, detail: String) -> Self {
        Self { rule, positions, detail }
    }
}

/// Every necessary condition relating a type vector, a best friend vector
/// and `n` that fails. Empty means all conditions hold.
pub fn type_constraints_check(t: &[usize], bfv: &[usize], n: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    if t.len() != bfv.len() {
        out.push(Violation::new(
            "length",
            vec![],
            format!("type has {} entries, best friend vector has {}", t.len(), bfv.len()),
        ));
        return out;
    }
    if let Err(e) = TypeVector::for_field(t.to_vec(), n) {
        out.push(Violation::new("type", vec![], e.to_string()));
    }
    if bfv.contains(&0) {
        out.push(Violation::new("best_friend", vec![], "entries must be positive".into()));
        return out;
    }
    let r = t.len();
    for i in 0..r {
        let (ti, mi) = (t[i], bfv[i]);
        if n % mi != 0 {
            out.push(Violation::new("divides_n", vec![i + 1], format!("m_{} = {mi} does not divide n = {n}", i + 1)));
        }
        if ti % mi != 0 {
            out.push(Violation::new("divides_t", vec![i + 1], format!("m_{} = {mi} does not divide t_{} = {ti}", i + 1, i + 1)));
        }
    }
    for i in 0..r.saturating_sub(1) {
        let (a, b) = (bfv[i], bfv[i + 1]);
        let g = gcd(a as u64, b as u64) as usize;
        let need = if g == a {
            a
        } else if g == b {
            b
        } else {
            a.max(b)
        };
        let gap = t[i + 1] as i64 - t[i] as i64;
        if gap < need as i64 {
            out.push(Violation::new(
                "consecutive_gap",
                vec![i + 1, i + 2],
                format!("t_{} - t_{} = {gap} is below {need}", i + 2, i + 1),
            ));
        }
    }
    let mut l = 1usize;
    for i in 0..r {
        l = lcm(l as u64, bfv[i] as u64) as usize;
        if t[i] < l || (t[i] == l && bfv[i] != l) {
            out.push(Violation::new(
                "prefix_lcm",
                vec![i + 1],
                format!(
                    "t_{} = {} must be at least lcm(m_1..m_{}) = {l}, with equality only if m_{} = {l}",
                    i + 1,
                    t[i],
                    i + 1,
                    i + 1
                ),
            ));
        }
    }
    for a in 0..r {
        for b in a + 1..r {
            let (ma, mb) = (bfv[a], bfv[b]);
            let extra = if mb % ma != 0 { mb } else { 0 };
            let need = lcm(ma as u64, mb as u64) as usize + extra;
            if t[b] < need {
                out.push(Violation::new(
                    "pairwise_lcm",
                    vec![a + 1, b + 1],
                    format!("t_{} = {} is below {need} required by m_{} = {ma}, m_{} = {mb}", b + 1, t[b], a + 1, b + 1),
                ));
            }
        }
    }
    let total = bfv.iter().fold(1u64, |acc, &m| lcm(acc, m as u64)) as usize;
    if total >= n {
        out.push(Violation::new(
            "total_lcm",
            (1..=r).collect(),
            format!("lcm of all entries {total} is not below n = {n}"),
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    #[serde(rename = "type")]
    pub type_vector: Vec<usize>,
    pub n: usize,
    pub best_friend_vector: Vec<usize>,
    pub m: usize,
    pub j: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub baseline_lower: usize,
    pub baseline_upper: usize,
    pub upper_certificate: Option<Vec<usize>>,
    pub certificates: Vec<Certificate>,
    pub exact_chain_search: bool,
    pub violations: Vec<Violation>,
}

pub fn bounds_report(bfv: &BestFriendVector, t: &TypeVector, n: usize) -> Result<BoundsReport> {
    let baseline_upper = max_flag_distance(t, n)?;
    let upper = upper_bound_min_distance(bfv, t, n)?;
    Ok(BoundsReport {
        type_vector: t.as_slice().to_vec(),
        n,
        best_friend_vector: bfv.as_slice().to_vec(),
        m: bfv.gcd(),
        j: bfv.j(),
        lower_bound: lower_bound_min_distance(bfv),
        upper_bound: upper.value,
        baseline_lower: 2 * bfv.gcd(),
        baseline_upper,
        upper_certificate: upper.certificate,
        certificates: upper.certificates,
        exact_chain_search: upper.exact,
        violations: type_constraints_check(t.as_slice(), bfv.as_slice(), n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(t: &[usize]) -> TypeVector {
        TypeVector::new(t.to_vec()).unwrap()
    }

    fn bf(m: &[usize]) -> BestFriendVector {
        BestFriendVector::new(m.to_vec()).unwrap()
    }

    #[test]
    fn seven_step_flag_values() {
        let t = tv(&[2, 4, 5, 12, 15, 18, 21]);
        assert_eq!(max_flag_distance(&t, 24).unwrap(), 82);
        assert_eq!(max_distance_with_zeros(&t, 24, &[5, 6, 7]).unwrap(), 28);
        assert_eq!(max_distance_with_zeros(&t, 24, &[1, 2, 4]).unwrap(), 26);
        assert_eq!(max_distance_with_zeros(&t, 24, &[4, 5, 6, 7]).unwrap(), 22);
        assert!(max_distance_with_zeros(&t, 24, &[]).is_err());
        assert!(max_distance_with_zeros(&t, 24, &[8]).is_err());
    }

    #[test]
    fn four_step_flag_values() {
        let t = tv(&[4, 5, 12, 15]);
        assert_eq!(max_distance_with_zeros(&t, 24, &[3]).unwrap(), 24);
        assert_eq!(max_distance_with_zeros(&t, 24, &[2]).unwrap(), 34);
        assert!(dvec_feasible(&t, 24, &DistanceVector::new(vec![2, 0, 14, 18])).unwrap());
        assert!(!dvec_feasible(&t, 24, &DistanceVector::new(vec![6, 0, 14, 18])).unwrap());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound_min_distance(&bf(&[4, 12, 3])), 6);
        assert_eq!(lower_bound_min_distance(&bf(&[2, 4, 1, 12, 3, 3, 3])), 2);
        assert_eq!(lower_bound_min_distance(&bf(&[3, 3, 3])), 18);
        assert_eq!(lower_bound_min_distance(&bf(&[2, 2, 8])), 8);
    }

    #[test]
    fn upper_bounds() {
        let u = upper_bound_min_distance(&bf(&[2, 4, 1, 12, 3, 3, 3]), &tv(&[2, 4, 5, 12, 15, 18, 21]), 24).unwrap();
        assert_eq!(u.value, 22);
        assert_eq!(u.certificate, Some(vec![4, 5, 6, 7]));
        let u = upper_bound_min_distance(&bf(&[2, 4, 8]), &tv(&[2, 4, 8]), 16).unwrap();
        assert_eq!((u.value, u.certificate), (4, Some(vec![2, 3])));
        let u = upper_bound_min_distance(&bf(&[2, 2, 2]), &tv(&[2, 4, 6]), 16).unwrap();
        assert_eq!((u.value, u.certificate), (max_flag_distance(&tv(&[2, 4, 6]), 16).unwrap(), None));
    }

    #[test]
    fn constraints() {
        let v = type_constraints_check(&[4, 6], &[4, 3], 24);
        assert!(v.iter().any(|x| x.rule == "pairwise_lcm"));
        assert!(type_constraints_check(&[4, 15], &[4, 3], 24).is_empty());
        assert!(type_constraints_check(&[4, 6], &[4, 2], 8).is_empty());
        assert!(type_constraints_check(&[2, 4, 5, 12, 15, 18, 21], &[2, 4, 1, 12, 3, 3, 3], 24).is_empty());
        assert!(!type_constraints_check(&[2, 4], &[2, 4], 4).is_empty());
    }

    #[test]
    fn full_report() {
        let r = bounds_report(&bf(&[2, 4, 1, 12, 3, 3, 3]), &tv(&[2, 4, 5, 12, 15, 18, 21]), 24).unwrap();
        assert_eq!((r.lower_bound, r.upper_bound, r.baseline_upper), (2, 22, 82));
        let r = bounds_report(&bf(&[2, 4, 8]), &tv(&[2, 4, 8]), 16).unwrap();
        assert_eq!((r.lower_bound, r.upper_bound), (4, 4));
    }
}
