//! Flags of subspaces, flag distance, the best friend vector, and cyclic
//! orbit flag codes.

use serde::Serialize;

use crate::bounds::{lower_bound_min_distance, max_flag_distance};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::numth::orbit_size;
use crate::subspace::{scan_orbit, Subspace, DEFAULT_SCAN_CAP};
use crate::vectors::{BestFriendVector, DistanceVector, TypeVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag<'a> {
    subspaces: Vec<Subspace<'a>>,
    type_vector: TypeVector,
}

impl<'a> Flag<'a> {
    /// Validates strict nesting `F_1 < F_2 < ... < F_r < F_{q^n}`.
    pub fn new(subspaces: Vec<Subspace<'a>>) -> Result<Self> {
        let first = subspaces.first().ok_or(Error::EmptyFlag)?;
        let ctx = first.ctx();
        let n = ctx.n();
        for s in &subspaces {
            if !std::ptr::eq(s.ctx(), ctx) {
                return Err(Error::ContextMismatch);
            }
            if s.is_zero() || s.is_full() {
                return Err(Error::NotProper { dim: s.dim(), n });
            }
        }
        for (i, w) in subspaces.windows(2).enumerate() {
            if w[0].dim() >= w[1].dim() || !w[1].contains(&w[0])? {
                return Err(Error::NotNested { index: i + 1 });
            }
        }
        let type_vector = TypeVector::new(subspaces.iter().map(|s| s.dim()).collect())?;
        Ok(Self { subspaces, type_vector })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.subspaces[0].ctx()
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace<'a>] {
        &self.subspaces
    }

    pub fn type_vector(&self) -> &TypeVector {
        &self.type_vector
    }

    /// Componentwise subspace distances.
    pub fn distance_vector(&self, other: &Flag<'_>) -> Result<DistanceVector> {
        if self.type_vector != other.type_vector {
            return Err(Error::TypeMismatch {
                left: self.type_vector.as_slice().to_vec(),
                right: other.type_vector.as_slice().to_vec(),
            });
        }
        let d = self
            .subspaces
            .iter()
            .zip(&other.subspaces)
            .map(|(a, b)| a.distance(b))
            .collect::<Result<Vec<_>>>()?;
        let d = DistanceVector::new(d);
        debug_assert!(crate::bounds::dvec_feasible(&self.type_vector, self.ctx().n(), &d).unwrap());
        Ok(d)
    }

    /// `d_f(F, F') = sum_i d_S(F_i, F'_i)`.
    pub fn distance(&self, other: &Flag<'_>) -> Result<usize> {
        Ok(self.distance_vector(other)?.total())
    }

    pub fn scalar_mul(&self, alpha: FieldElem) -> Result<Flag<'a>> {
        let subspaces = self.subspaces.iter().map(|s| s.scalar_mul(alpha)).collect::<Result<Vec<_>>>()?;
        Ok(Self { subspaces, type_vector: self.type_vector.clone() })
    }

    pub fn best_friend_vector(&self) -> BestFriendVector {
        let m = self.subspaces.iter().map(|s| s.best_friend_exponent().expect("flag subspaces are proper")).collect();
        BestFriendVector::new(m).expect("best friend exponents are positive")
    }

    /// Exponent of the best friend of the flag, `gcd(m_1, ..., m_r)`.
    pub fn best_friend_exponent(&self) -> usize {
        self.best_friend_vector().gcd()
    }

    /// An orbit representative whose first subspace contains 1.
    pub fn normalize_contains_one(&self) -> Flag<'a> {
        let first = &self.subspaces[0];
        if first.contains_elem(FieldElem::ONE) {
            return self.clone();
        }
        let alpha = first.basis()[0];
        self.scalar_mul(self.ctx().inv(alpha)).expect("basis vectors are nonzero")
    }

    pub fn orbit_summary(&self) -> FlagOrbitSummary {
        self.orbit_summary_with_cap(DEFAULT_SCAN_CAP)
    }

    /// Summary of `Orb(F)`. Distances are computed only for orbits of at most
    /// `scan_cap` elements.
    pub fn orbit_summary_with_cap(&self, scan_cap: u64) -> FlagOrbitSummary {
        let ctx = self.ctx();
        let (q, n) = (ctx.q(), ctx.n());
        let bfv = self.best_friend_vector();
        let m = bfv.gcd();
        let cardinality = orbit_size(q, n, m);
        let projected_cardinalities: Vec<u64> = bfv.as_slice().iter().map(|&mi| orbit_size(q, n, mi)).collect();
        let scannable = cardinality <= scan_cap;
        let scan = scannable.then(|| scan_orbit(&self.subspaces, cardinality, lower_bound_min_distance(&bfv)));
        let projected_min_distances = scannable.then(|| {
            self.subspaces
                .iter()
                .zip(bfv.as_slice())
                .zip(&projected_cardinalities)
                .map(|((s, &mi), &size)| scan_orbit(std::slice::from_ref(s), size, 2 * mi).min_distance)
                .collect()
        });
        FlagOrbitSummary {
            type_vector: self.type_vector.clone(),
            best_friend_vector: bfv,
            best_friend_exponent: m,
            cardinality,
            projected_cardinalities,
            min_distance: scan.as_ref().map(|s| s.min_distance),
            witness_exponent: scan.as_ref().map(|s| s.witness_exponent),
            witness_vector: scan.map(|s| DistanceVector::new(s.witness_vector)),
            projected_min_distances,
            n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagOrbitSummary {
    #[serde(rename = "type")]
    pub type_vector: TypeVector,
    pub n: usize,
    pub best_friend_vector: BestFriendVector,
    pub best_friend_exponent: usize,
    pub cardinality: u64,
    pub projected_cardinalities: Vec<u64>,
    /// `None` when the orbit exceeds the scan cap.
    pub min_distance: Option<usize>,
    /// Smallest `i` with `d_f(F, F gamma^i)` minimal.
    pub witness_exponent: Option<u64>,
    pub witness_vector: Option<DistanceVector>,
    /// Minimum distance of each projected code `Orb(F_i)`.
    pub projected_min_distances: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimumCheck {
    pub optimum: bool,
    pub max_distance: usize,
    /// Every projected code attains `min(2 t_i, 2(n - t_i))`.
    pub max_projected_distances: Option<bool>,
    /// `|C| = |C_1| = ... = |C_r|`.
    pub equal_cardinalities: bool,
    /// Whether `optimum` agrees with the conjunction of the two conditions.
    pub consistent: Option<bool>,
}

/// Compares the minimum distance of the code with `D^{(t,n)}`.
pub fn check_optimum_distance(summary: &FlagOrbitSummary) -> Result<OptimumCheck> {
    let max_distance = max_flag_distance(&summary.type_vector, summary.n)?;
    let min_distance = summary
        .min_distance
        .ok_or_else(|| Error::InvalidParams("summary has no minimum distance".into()))?;
    let n = summary.n;
    let max_projected_distances = summary.projected_min_distances.as_ref().map(|d| {
        d.iter().zip(summary.type_vector.as_slice()).all(|(&di, &ti)| di == 2 * ti.min(n - ti))
    });
    let equal_cardinalities = summary.projected_cardinalities.iter().all(|&c| c == summary.cardinality);
    let optimum = min_distance == max_distance;
    let consistent = max_projected_distances.map(|c1| optimum == (c1 && equal_cardinalities));
    Ok(OptimumCheck { optimum, max_distance, max_projected_distances, equal_cardinalities, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;

    #[test]
    fn galois_flag_in_f256() {
        let ctx = FieldParams::new(2, 1, 8).build().unwrap();
        let f = Flag::new(vec![Subspace::subfield(&ctx, 2).unwrap(), Subspace::subfield(&ctx, 4).unwrap()]).unwrap();
        assert_eq!(f.type_vector().as_slice(), &[2, 4]);
        assert_eq!(f.best_friend_vector().as_slice(), &[2, 4]);
        let s = f.orbit_summary();
        assert_eq!(s.cardinality, 85);
        assert_eq!(s.projected_cardinalities, vec![85, 17]);
        let d = s.min_distance.unwrap();
        assert_eq!(d % 4, 0);
        let translate = f.scalar_mul(ctx.gamma_pow(s.witness_exponent.unwrap())).unwrap();
        assert_eq!(f.distance(&translate).unwrap(), d);
    }

    #[test]
    fn rejects_bad_flags() {
        let ctx = FieldParams::new(2, 1, 4).build().unwrap();
        let f4 = Subspace::subfield(&ctx, 2).unwrap();
        assert_eq!(Flag::new(vec![]).unwrap_err(), Error::EmptyFlag);
        assert_eq!(Flag::new(vec![f4.clone(), f4.clone()]).unwrap_err(), Error::NotNested { index: 1 });
        assert!(matches!(Flag::new(vec![f4, Subspace::full(&ctx)]), Err(Error::NotProper { .. })));
    }

    #[test]
    fn normalization() {
        let ctx = FieldParams::new(2, 1, 6).build().unwrap();
        let f = Flag::new(vec![Subspace::subfield(&ctx, 2).unwrap()]).unwrap();
        let moved = f.scalar_mul(ctx.gamma_pow(5)).unwrap();
        let back = moved.normalize_contains_one();
        assert!(back.subspaces()[0].contains_elem(FieldElem::ONE));
        assert_eq!(back, f);
    }

    #[test]
    fn optimum_check_of_half_field() {
        let ctx = FieldParams::new(2, 1, 6).build().unwrap();
        let f = Flag::new(vec![Subspace::subfield(&ctx, 3).unwrap()]).unwrap();
        let s = f.orbit_summary();
        assert_eq!(s.cardinality, 9);
        let c = check_optimum_distance(&s).unwrap();
        assert_eq!(c.max_distance, 6);
        assert!(c.optimum);
        assert_eq!(c.consistent, Some(true));
    }
}
