//! F_q-subspaces of F_{q^n} in canonical reduced row echelon form, the
//! action of F_{q^n}^* by multiplication, best friends, and cyclic orbit
//! subspace codes.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::{rref, Echelon};
use crate::numth::{gcd, orbit_size};

/// Default upper limit on transversal scans.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 25;
const CHUNK: u64 = 1024;

#[derive(Clone)]
pub struct Subspace<'a> {
    ctx: &'a FieldCtx,
    rows: Vec<u64>,
}

impl PartialEq for Subspace<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.rows == other.rows
    }
}

impl Eq for Subspace<'_> {}

impl std::hash::Hash for Subspace<'_> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl fmt::Debug for Subspace<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace").field("dim", &self.dim()).field("rows", &self.matrix_strings()).finish()
    }
}

impl<'a> Subspace<'a> {
    pub fn zero(ctx: &'a FieldCtx) -> Self {
        Self { ctx, rows: Vec::new() }
    }

    /// The whole field as an n-dimensional F_q-space.
    pub fn full(ctx: &'a FieldCtx) -> Self {
        let gf = ctx.ground();
        let rows = (0..ctx.n())
            .map(|i| if gf.is_binary() { 1u64 << i } else { gf.set(0, i, 1) })
            .collect();
        Self { ctx, rows }
    }

    /// F_q-span of the given elements.
    pub fn from_generators(ctx: &'a FieldCtx, elems: &[FieldElem]) -> Self {
        Self::from_rows(ctx, elems.iter().map(|&x| ctx.pack(x)))
    }

    /// Span of packed coordinate rows.
    pub fn from_rows(ctx: &'a FieldCtx, rows: impl IntoIterator<Item = u64>) -> Self {
        Self { ctx, rows: rref(ctx.ground(), ctx.n(), rows) }
    }

    /// The subfield F_{q^m} as an m-dimensional F_q-subspace.
    pub fn subfield(ctx: &'a FieldCtx, m: usize) -> Result<Self> {
        let g = ctx.subfield_generator(ctx.subfield(m)?);
        let mut x = FieldElem::ONE;
        let mut elems = Vec::with_capacity(m);
        for _ in 0..m {
            elems.push(x);
            x = ctx.mul(x, g);
        }
        Ok(Self::from_generators(ctx, &elems))
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ctx.n()
    }

    /// Canonical packed rows.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Canonical basis as field elements.
    pub fn basis(&self) -> Vec<FieldElem> {
        self.rows.iter().map(|&r| self.ctx.unpack(r)).collect()
    }

    /// Canonical matrix as digit strings, one per row.
    pub fn matrix_strings(&self) -> Vec<String> {
        self.rows.iter().map(|&r| self.ctx.format_coords(r)).collect()
    }

    fn same_ctx(&self, other: &Subspace<'_>) -> Result<()> {
        if std::ptr::eq(self.ctx, other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn echelon(&self) -> Echelon<'a> {
        Echelon::from_rref(self.ctx.ground(), self.ctx.n(), &self.rows)
    }

    pub fn contains_elem(&self, x: FieldElem) -> bool {
        self.echelon().contains(self.ctx.pack(x))
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace<'_>) -> Result<bool> {
        self.same_ctx(other)?;
        let ech = self.echelon();
        Ok(other.rows.iter().all(|&r| ech.contains(r)))
    }

    pub fn sum(&self, other: &Subspace<'_>) -> Result<Subspace<'a>> {
        self.same_ctx(other)?;
        Ok(Self::from_rows(self.ctx, self.rows.iter().chain(&other.rows).copied()))
    }

    pub fn intersect(&self, other: &Subspace<'_>) -> Result<Subspace<'a>> {
        self.same_ctx(other)?;
        let dual = Self::from_rows(
            self.ctx,
            self.annihilator().into_iter().chain(other.annihilator()),
        );
        Ok(Self::from_rows(self.ctx, dual.annihilator()))
    }

    /// Basis of the orthogonal complement under the standard dot product on
    /// coordinates.
    fn annihilator(&self) -> Vec<u64> {
        let gf = self.ctx.ground();
        let n = self.ctx.n();
        let pivots: Vec<usize> = self.rows.iter().map(|&r| gf.leading(r).unwrap()).collect();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = gf.set(0, free, 1);
                for (&row, &p) in self.rows.iter().zip(&pivots) {
                    let c = gf.get(row, free);
                    if c != 0 {
                        v = gf.set(v, p, gf.neg(c));
                    }
                }
                v
            })
            .collect()
    }

    /// `d_S(U, V) = 2 dim(U + V) - dim U - dim V`.
    pub fn distance(&self, other: &Subspace<'_>) -> Result<usize> {
        self.same_ctx(other)?;
        let mut ech = self.echelon();
        for &r in &other.rows {
            ech.insert(r);
        }
        Ok(2 * ech.rank() - self.dim() - other.dim())
    }

    /// `U * alpha`.
    pub fn scalar_mul(&self, alpha: FieldElem) -> Result<Subspace<'a>> {
        if alpha.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(self.scale_unchecked(alpha))
    }

    pub(crate) fn scale_unchecked(&self, alpha: FieldElem) -> Subspace<'a> {
        let ctx = self.ctx;
        Self::from_rows(ctx, self.rows.iter().map(|&r| ctx.pack(ctx.mul(ctx.unpack(r), alpha))))
    }

    /// Whether `U * alpha = U`.
    pub fn is_fixed_by(&self, alpha: FieldElem) -> bool {
        let ctx = self.ctx;
        let ech = self.echelon();
        self.rows.iter().all(|&r| ech.contains(ctx.pack(ctx.mul(ctx.unpack(r), alpha))))
    }

    fn require_proper(&self) -> Result<()> {
        if self.is_zero() || self.is_full() {
            return Err(Error::DegenerateSubspace { dim: self.dim(), n: self.ctx.n() });
        }
        Ok(())
    }

    /// The `m` with `Stab(U) = F_{q^m}^*`.
    pub fn stabilizer_exponent(&self) -> Result<usize> {
        self.require_proper()?;
        let bound = gcd(self.dim() as u64, self.ctx.n() as u64) as usize;
        let m = self
            .ctx
            .divisors()
            .iter()
            .rev()
            .copied()
            .filter(|&m| bound % m == 0)
            .find(|&m| m == 1 || self.is_fixed_by(self.ctx.subfield_generator(self.ctx.subfield(m).unwrap())))
            .unwrap_or(1);
        Ok(m)
    }

    /// Degree of the largest subfield over which `U` is a vector space.
    pub fn best_friend_exponent(&self) -> Result<usize> {
        self.stabilizer_exponent()
    }

    /// Every element of the cyclic orbit, in order of `gamma^i`.
    pub fn orbit_enumerate(&self, cap: u64) -> Result<Vec<Subspace<'a>>> {
        let m = self.stabilizer_exponent()?;
        let size = orbit_size(self.ctx.q(), self.ctx.n(), m);
        if size > cap {
            return Err(Error::EnumerationCapExceeded { size, cap });
        }
        let mut seen = HashSet::with_capacity(size as usize);
        let mut out = Vec::with_capacity(size as usize);
        let mut alpha = FieldElem::ONE;
        for _ in 0..size {
            let v = self.scale_unchecked(alpha);
            if seen.insert(v.rows.clone()) {
                out.push(v);
            }
            alpha = self.ctx.mul_by_gamma(alpha);
        }
        if out.len() as u64 != size {
            return Err(Error::Internal(format!(
                "orbit has {} distinct elements, expected {size}",
                out.len()
            )));
        }
        Ok(out)
    }

    pub fn orbit_summary(&self) -> Result<OrbitSummary<'a>> {
        self.orbit_summary_with_cap(DEFAULT_SCAN_CAP)
    }

    pub fn orbit_summary_with_cap(&self, scan_cap: u64) -> Result<OrbitSummary<'a>> {
        let m = self.stabilizer_exponent()?;
        let cardinality = orbit_size(self.ctx.q(), self.ctx.n(), m);
        let scan = if cardinality <= scan_cap {
            Some(scan_orbit(std::slice::from_ref(self), cardinality, 2 * m))
        } else {
            None
        };
        Ok(OrbitSummary {
            generator: self.clone(),
            stabilizer_exponent: m,
            cardinality,
            min_distance: scan.as_ref().map(|s| s.min_distance),
            witness_exponent: scan.map(|s| s.witness_exponent),
        })
    }
}

#[derive(Clone, Debug)]
pub struct OrbitSummary<'a> {
    pub generator: Subspace<'a>,
    pub stabilizer_exponent: usize,
    pub cardinality: u64,
    /// `None` when the orbit exceeds the scan cap.
    pub min_distance: Option<usize>,
    pub witness_exponent: Option<u64>,
}

/// Result of a transversal scan over `gamma^i`, `1 <= i < N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub min_distance: usize,
    /// Smallest `i` attaining the minimum.
    pub witness_exponent: u64,
    /// Componentwise distances at the witness.
    pub witness_vector: Vec<usize>,
}

/// Minimum over `1 <= i < size` of `sum_c d_S(C, C gamma^i)` for the given
/// components. Stops early once `floor` is reached, which must be a valid
/// lower bound on that minimum. With `size == 1` the result is zero.
pub(crate) fn scan_orbit(components: &[Subspace<'_>], size: u64, floor: usize) -> ScanResult {
    let r = components.len();
    if size <= 1 {
        return ScanResult { min_distance: 0, witness_exponent: 0, witness_vector: vec![0; r] };
    }
    let ctx = components[0].ctx;
    let bases: Vec<Vec<FieldElem>> = components.iter().map(|c| c.basis()).collect();
    let echelons: Vec<Echelon<'_>> = components.iter().map(|c| c.echelon()).collect();
    let found = AtomicU64::new(u64::MAX);
    let chunks = (size - 1).div_ceil(CHUNK);

    let best = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let start = 1 + c * CHUNK;
            if start > found.load(Ordering::Relaxed) {
                return None;
            }
            let end = (start + CHUNK).min(size);
            let shift = ctx.gamma_pow(start);
            let mut scaled: Vec<Vec<FieldElem>> =
                bases.iter().map(|b| b.iter().map(|&x| ctx.mul(x, shift)).collect()).collect();
            let mut work: Vec<Echelon<'_>> = echelons.clone();
            let mut best: Option<(usize, u64, Vec<usize>)> = None;
            let mut vector = vec![0usize; r];
            for i in start..end {
                let mut total = 0;
                for k in 0..r {
                    let ech = &mut work[k];
                    let base = echelons[k].rank();
                    for &x in &scaled[k] {
                        ech.insert(ctx.pack(x));
                    }
                    vector[k] = 2 * (ech.rank() - base);
                    total += vector[k];
                    ech.truncate(base);
                }
                if best.as_ref().is_none_or(|b| total < b.0) {
                    best = Some((total, i, vector.clone()));
                    if total <= floor {
                        found.fetch_min(i, Ordering::Relaxed);
                        break;
                    }
                }
                for s in scaled.iter_mut() {
                    for x in s.iter_mut() {
                        *x = ctx.mul_by_gamma(*x);
                    }
                }
            }
            best
        })
        .min_by_key(|b| (b.0, b.1))
        .expect("nonempty transversal");
    ScanResult { min_distance: best.0, witness_exponent: best.1, witness_vector: best.2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;

    fn f16() -> FieldCtx {
        FieldParams::new(2, 1, 4).build().unwrap()
    }

    #[test]
    fn generators_and_dimension() {
        let ctx = f16();
        assert_eq!(Subspace::from_generators(&ctx, &[]).dim(), 0);
        let g = ctx.gamma();
        let u = Subspace::from_generators(&ctx, &[FieldElem::ONE, g, ctx.add(FieldElem::ONE, g)]);
        assert_eq!(u.dim(), 2);
    }

    #[test]
    fn f4_and_its_translate() {
        let ctx = f16();
        let f4 = Subspace::subfield(&ctx, 2).unwrap();
        let t = f4.scalar_mul(ctx.gamma()).unwrap();
        assert_ne!(f4, t);
        assert_eq!(f4.sum(&t).unwrap().dim(), 4);
        assert!(f4.intersect(&t).unwrap().is_zero());
        assert_eq!(f4.distance(&t).unwrap(), 4);
        assert_eq!(f4.distance(&f4).unwrap(), 0);
        let g2 = ctx.subfield_generator(ctx.subfield(2).unwrap());
        assert_eq!(f4.scalar_mul(g2).unwrap(), f4);
    }

    #[test]
    fn lattice_identities() {
        let ctx = FieldParams::new(3, 1, 4).build().unwrap();
        let u = Subspace::from_generators(&ctx, &[ctx.gamma_pow(3), ctx.gamma_pow(17), ctx.gamma_pow(40)]);
        let v = Subspace::from_generators(&ctx, &[ctx.gamma_pow(3), ctx.gamma_pow(5)]);
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        assert!(u.contains(&i).unwrap() && v.contains(&i).unwrap());
        assert!(s.contains(&u).unwrap() && s.contains(&v).unwrap());
        assert!(i.contains_elem(ctx.gamma_pow(3)));
    }

    #[test]
    fn best_friend_of_subfields() {
        let ctx = FieldParams::new(2, 1, 8).build().unwrap();
        let f16 = Subspace::subfield(&ctx, 4).unwrap();
        assert_eq!(f16.best_friend_exponent().unwrap(), 4);
        assert!(Subspace::zero(&ctx).best_friend_exponent().is_err());
        assert!(Subspace::full(&ctx).best_friend_exponent().is_err());
    }

    #[test]
    fn orbit_of_f4() {
        let ctx = f16();
        let f4 = Subspace::subfield(&ctx, 2).unwrap();
        let orbit = f4.orbit_enumerate(1000).unwrap();
        assert_eq!(orbit.len(), 5);
        let summary = f4.orbit_summary().unwrap();
        assert_eq!(summary.cardinality, 5);
        assert_eq!(summary.min_distance, Some(4));
        assert_eq!(summary.witness_exponent, Some(1));
    }

    #[test]
    fn scalar_mul_rejects_zero() {
        let ctx = f16();
        let f4 = Subspace::subfield(&ctx, 2).unwrap();
        assert_eq!(f4.scalar_mul(FieldElem::ZERO).unwrap_err(), Error::ZeroScalar);
    }
}
