//! The ambient field F_{q^n}, q = p^e, built as F_p[x]/(f) for a primitive
//! polynomial f of degree e*n, with gamma = x as primitive element.
//!
//! Elements are stored as base-p packed coefficient vectors in the basis
//! `1, gamma, ..., gamma^{en-1}` over F_p. When the field is small enough,
//! exp/log tables make multiplication a table lookup; otherwise products are
//! computed by polynomial multiplication modulo f.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{invert_mod_p, GroundField};
use crate::numth::{checked_pow, divisors, is_prime, prime_factors, prime_power};

/// Default limit on `q^n` for building exp/log tables.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 26;
/// Hard limit on `q^n` for table-free arithmetic.
pub const MAX_FIELD_ORDER: u64 = 1 << 48;
const MAX_DEGREE: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u64,
    pub e: u32,
    pub n: usize,
    /// Coefficients `c_0, ..., c_{en}` of a monic primitive polynomial over
    /// F_p, constant term first. `None` selects the default modulus.
    pub modulus: Option<Vec<u64>>,
    pub table_cap: u64,
    /// Allows fields above `table_cap` to fall back to table-free arithmetic.
    pub allow_tableless: bool,
}

impl FieldParams {
    pub fn new(p: u64, e: u32, n: usize) -> Self {
        Self { p, e, n, modulus: None, table_cap: DEFAULT_TABLE_CAP, allow_tableless: true }
    }

    /// Parameters for `F_{q^n}` with `q` a prime power.
    pub fn for_q(q: u64, n: usize) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidParams(format!("q = {q} is not a prime power")))?;
        Ok(Self::new(p, e, n))
    }

    pub fn with_modulus(mut self, modulus: Vec<u64>) -> Self {
        self.modulus = Some(modulus);
        self
    }

    pub fn with_table_cap(mut self, cap: u64) -> Self {
        self.table_cap = cap;
        self
    }

    pub fn tables_required(mut self) -> Self {
        self.allow_tableless = false;
        self
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn build(self) -> Result<FieldCtx> {
        FieldCtx::new(self)
    }
}

/// Portable description of a field, as embedded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub n: usize,
    pub modulus: Vec<u64>,
}

/// An element of F_{q^n}: its coefficient vector over F_p in the basis
/// `1, gamma, ..., gamma^{en-1}`, packed in base p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn repr(self) -> u64 {
        self.0
    }
}

/// A subfield `F_{q^m}` of the ambient field; `m` divides `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubfieldId(usize);

impl SubfieldId {
    pub fn degree(self) -> usize {
        self.0
    }
}

/// Polynomial arithmetic in F_p[x]/(f) on base-p packed coefficient vectors.
#[derive(Clone, Debug)]
struct PolyArith {
    p: u64,
    deg: usize,
    modulus: Vec<u64>,
    full_bits: u64,
    powers: Vec<u64>,
}

type Digits = [u64; MAX_DEGREE];

impl PolyArith {
    fn new(p: u64, modulus: Vec<u64>) -> Self {
        let deg = modulus.len() - 1;
        let full_bits = if p == 2 {
            modulus.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let powers = (0..=deg as u32).map(|i| p.pow(i)).collect();
        Self { p, deg, modulus, full_bits, powers }
    }

    fn digits(&self, mut a: u64) -> Digits {
        let mut out = [0u64; MAX_DEGREE];
        for d in out.iter_mut().take(self.deg) {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        digits.iter().take(self.deg).rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut s = [0u64; MAX_DEGREE];
        for i in 0..self.deg {
            s[i] = (x[i] + y[i]) % self.p;
        }
        self.pack(&s)
    }

    fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let x = self.digits(a);
        let mut s = [0u64; MAX_DEGREE];
        for i in 0..self.deg {
            s[i] = (self.p - x[i]) % self.p;
        }
        self.pack(&s)
    }

    fn mul_by_x(&self, a: u64) -> u64 {
        if self.p == 2 {
            let r = a << 1;
            return if (r >> self.deg) & 1 == 1 { r ^ self.full_bits } else { r };
        }
        let top = a / self.powers[self.deg - 1];
        let shifted = (a % self.powers[self.deg - 1]) * self.p;
        if top == 0 {
            return shifted;
        }
        let mut s = self.digits(shifted);
        for (j, d) in s.iter_mut().enumerate().take(self.deg) {
            *d = (*d + top * (self.p - self.modulus[j])) % self.p;
        }
        self.pack(&s)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.p == 2 {
            let mut r: u128 = 0;
            let (wide, mut bb, mut i) = (a as u128, b, 0);
            while bb != 0 {
                if bb & 1 == 1 {
                    r ^= wide << i;
                }
                bb >>= 1;
                i += 1;
            }
            let full = self.full_bits as u128;
            for k in (self.deg..2 * self.deg - 1).rev() {
                if (r >> k) & 1 == 1 {
                    r ^= full << (k - self.deg);
                }
            }
            return r as u64;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let p = self.p;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..self.deg {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.deg {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for k in (self.deg..2 * self.deg - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..self.deg {
                prod[k - self.deg + j] = (prod[k - self.deg + j] + c * (p - self.modulus[j])) % p;
            }
            prod[k] = 0;
        }
        self.pack(&prod[..self.deg])
    }

    fn pow(&self, a: u64, mut k: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Order test: x has multiplicative order exactly `p^deg - 1`. A
    /// reducible modulus has fewer than `p^deg - 1` units, so this also
    /// certifies irreducibility.
    fn x_is_primitive(&self, group_order: u64, factors: &[u64]) -> bool {
        let x = self.p;
        self.pow(x, group_order) == 1 && factors.iter().all(|&r| self.pow(x, group_order / r) != 1)
    }
}

#[derive(Clone, Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Conversion between elements and coordinates over F_q.
#[derive(Clone, Debug)]
enum CoordMap {
    /// `e = 1`: the F_p coefficients are already the coordinates.
    Prime,
    Tower {
        /// Inverse of the change of basis from `{omega^a gamma^i}` to the
        /// polynomial basis over F_p; row index is `i * e + a`.
        inverse: Vec<Vec<u64>>,
        /// Scalar of `sum_a u_a omega^a`, indexed by the base-p packing of `u`.
        scalar_of: Vec<u32>,
        /// Element for each scalar.
        elem_of: Vec<FieldElem>,
        gamma_pows: Vec<FieldElem>,
    },
}

/// Exact arithmetic in F_{q^n}. Immutable once built.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    n: usize,
    q: u64,
    order: u64,
    group_order: u64,
    arith: PolyArith,
    tables: Option<Tables>,
    ground: GroundField,
    coords: CoordMap,
    divisors: Vec<usize>,
}

impl FieldCtx {
    pub fn new(params: FieldParams) -> Result<Self> {
        let FieldParams { p, e, n, modulus, table_cap, allow_tableless } = params;
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidParams("e must be positive".into()));
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!("extension degree n = {n} must be at least 2")));
        }
        let q = checked_pow(p, e).filter(|&q| q <= u32::MAX as u64).ok_or(
            Error::TableCapExceeded { order: u64::MAX, cap: MAX_FIELD_ORDER },
        )?;
        let order = checked_pow(q, n as u32)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(Error::TableCapExceeded { order: u64::MAX, cap: MAX_FIELD_ORDER })?;
        if order > table_cap && !allow_tableless {
            return Err(Error::TableCapExceeded { order, cap: table_cap });
        }
        if e > 1 && q > 1 << 16 {
            return Err(Error::InvalidParams(format!("ground field of order {q} is too large")));
        }
        let width = 32 - (q as u32 - 1).leading_zeros();
        if n as u32 * width > 64 {
            return Err(Error::InvalidParams(format!(
                "{n} coordinates of {width} bits do not fit a packed row"
            )));
        }
        let deg = e as usize * n;
        let group_order = order - 1;
        let factors = prime_factors(group_order);

        let modulus = match modulus {
            Some(m) => {
                validate_modulus(&m, p, deg)?;
                let arith = PolyArith::new(p, m);
                if !arith.x_is_primitive(group_order, &factors) {
                    return Err(Error::ModulusNotPrimitive { p });
                }
                arith.modulus
            }
            None => default_modulus(p, deg, group_order, &factors),
        };
        let arith = PolyArith::new(p, modulus);

        let tables = if order <= table_cap { Some(build_tables(&arith, order)?) } else { None };

        let mut ctx = FieldCtx {
            p,
            e,
            n,
            q,
            order,
            group_order,
            arith,
            tables,
            ground: GroundField::prime(p as u32),
            coords: CoordMap::Prime,
            divisors: divisors(n as u64).into_iter().map(|d| d as usize).collect(),
        };
        ctx.self_check()?;
        if e > 1 {
            ctx.build_tower()?;
        }
        Ok(ctx)
    }

    fn build_tower(&mut self) -> Result<()> {
        let q = self.q;
        let omega = self.gamma_pow(self.group_order / (q - 1));
        let mut powers = Vec::with_capacity(q as usize - 1);
        let mut index = HashMap::with_capacity(q as usize - 1);
        let mut x = FieldElem::ONE;
        for j in 0..q - 1 {
            powers.push(x);
            index.insert(x, j as u32);
            x = self.mul(x, omega);
        }
        let scalar_of_elem = |x: FieldElem| if x.is_zero() { 0 } else { 1 + index[&x] };
        let zech = powers.iter().map(|&w| scalar_of_elem(self.add(FieldElem::ONE, w))).collect();
        self.ground = GroundField::with_zech(q as u32, self.p as u32, zech);

        let e = self.e as usize;
        let deg = e * self.n;
        let gamma_pows: Vec<FieldElem> = (0..self.n as u64).map(|i| self.gamma_pow(i)).collect();
        // column i*e + a holds the F_p digits of omega^a gamma^i
        let mut matrix = vec![vec![0u64; deg]; deg];
        for (i, &g) in gamma_pows.iter().enumerate() {
            for a in 0..e {
                let digits = self.arith.digits(self.mul(powers[a], g).0);
                for (row, &d) in digits.iter().take(deg).enumerate() {
                    matrix[row][i * e + a] = d;
                }
            }
        }
        let inverse = invert_mod_p(&matrix, self.p)
            .ok_or_else(|| Error::Internal("tower basis is singular".into()))?;
        let scalar_of = (0..q)
            .map(|packed| {
                let mut u = packed;
                let mut acc = FieldElem::ZERO;
                for &w in powers.iter().take(e) {
                    let coeff = self.scalar_elem_prime(u % self.p);
                    acc = self.add(acc, self.mul(coeff, w));
                    u /= self.p;
                }
                scalar_of_elem(acc)
            })
            .collect();
        let mut elem_of = vec![FieldElem::ZERO];
        elem_of.extend(powers.iter().copied());
        self.coords = CoordMap::Tower { inverse, scalar_of, elem_of, gamma_pows };
        Ok(())
    }

    fn scalar_elem_prime(&self, d: u64) -> FieldElem {
        FieldElem(d)
    }

    fn self_check(&self) -> Result<()> {
        let Some(tables) = &self.tables else { return Ok(()) };
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % self.order
        };
        for _ in 0..64 {
            let (a, b, c) = (FieldElem(next()), FieldElem(next()), FieldElem(next()));
            if self.mul(a, b).0 != self.arith.mul(a.0, b.0) {
                return Err(Error::Internal("table product disagrees with polynomial product".into()));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(Error::Internal("distributivity check failed".into()));
            }
            if !a.is_zero() && self.mul(a, self.inv(a)) != FieldElem::ONE {
                return Err(Error::Internal("inverse check failed".into()));
            }
        }
        if tables.exp[0] != 1 || tables.log[1] != 0 {
            return Err(Error::Internal("exp/log tables are not anchored at one".into()));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Ground field order `q = p^e`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Extension degree over F_q.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of elements `q^n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `q^n - 1`, the order of gamma.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.arith.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Heap bytes held by the exp/log tables.
    pub fn table_bytes(&self) -> usize {
        self.tables.as_ref().map_or(0, |t| 4 * (t.exp.capacity() + t.log.capacity()))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, e: self.e, n: self.n, modulus: self.arith.modulus.clone() }
    }

    pub fn ground(&self) -> &GroundField {
        &self.ground
    }

    /// Positive divisors of `n`, increasing.
    pub fn divisors(&self) -> &[usize] {
        &self.divisors
    }

    pub fn subfield(&self, m: usize) -> Result<SubfieldId> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::NotADivisor { m, n: self.n });
        }
        Ok(SubfieldId(m))
    }

    /// `q^m`.
    pub fn subfield_order(&self, m: SubfieldId) -> u64 {
        self.q.pow(m.0 as u32)
    }

    pub fn gamma(&self) -> FieldElem {
        FieldElem(self.p)
    }

    pub fn gamma_pow(&self, k: u64) -> FieldElem {
        let k = k % self.group_order;
        match &self.tables {
            Some(t) => FieldElem(t.exp[k as usize] as u64),
            None => FieldElem(self.arith.pow(self.p, k)),
        }
    }

    /// Discrete logarithm to base gamma; `None` for zero or without tables.
    pub fn log(&self, x: FieldElem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[x.0 as usize] as u64)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.arith.add(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.arith.neg(a.0))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                FieldElem(t.exp[(s % self.group_order) as usize] as u64)
            }
            None => FieldElem(self.arith.mul(a.0, b.0)),
        }
    }

    #[inline]
    pub fn mul_by_gamma(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.arith.mul_by_x(a.0))
    }

    pub fn pow(&self, a: FieldElem, k: u64) -> FieldElem {
        if a.is_zero() {
            return if k == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u128 * (k % self.group_order) as u128;
                FieldElem(t.exp[(l % self.group_order as u128) as usize] as u64)
            }
            None => FieldElem(self.arith.pow(a.0, k % self.group_order)),
        }
    }

    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.group_order - 1)
    }

    /// `gamma^{(q^n-1)/(q^m-1)}`, a generator of `F_{q^m}^*`.
    pub fn subfield_generator(&self, m: SubfieldId) -> FieldElem {
        self.gamma_pow(self.group_order / (self.subfield_order(m) - 1))
    }

    /// Frobenius membership test `x^{q^m} = x`.
    pub fn is_in_subfield(&self, x: FieldElem, m: SubfieldId) -> bool {
        let mut y = x;
        // x -> x^q applied m times keeps exponents small
        for _ in 0..m.0 {
            y = self.pow(y, self.q);
        }
        y == x
    }

    /// Coordinates `c_i` in F_q with `x = sum_i c_i gamma^i`.
    pub fn coords_over_ground(&self, x: FieldElem) -> Vec<u32> {
        match &self.coords {
            CoordMap::Prime => {
                let d = self.arith.digits(x.0);
                d[..self.n].iter().map(|&v| v as u32).collect()
            }
            CoordMap::Tower { inverse, scalar_of, .. } => {
                let e = self.e as usize;
                let v = self.arith.digits(x.0);
                let deg = e * self.n;
                let u: Vec<u64> = inverse
                    .iter()
                    .map(|row| row.iter().zip(&v[..deg]).fold(0, |acc, (&a, &b)| (acc + a * b) % self.p))
                    .collect();
                (0..self.n)
                    .map(|i| {
                        let packed = u[i * e..(i + 1) * e].iter().rev().fold(0, |acc, &d| acc * self.p + d);
                        scalar_of[packed as usize]
                    })
                    .collect()
            }
        }
    }

    pub fn elem_from_coords(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() != self.n {
            return Err(Error::BadCoordinates { expected: self.n, found: coords.len() });
        }
        if coords.iter().any(|&c| c as u64 >= self.q) {
            return Err(Error::Parse(format!("coordinate out of range for q = {}", self.q)));
        }
        Ok(self.elem_from_coords_unchecked(coords))
    }

    fn elem_from_coords_unchecked(&self, coords: &[u32]) -> FieldElem {
        match &self.coords {
            CoordMap::Prime => {
                let digits: Vec<u64> = coords.iter().map(|&c| c as u64).collect();
                FieldElem(self.arith.pack(&digits))
            }
            CoordMap::Tower { elem_of, gamma_pows, .. } => coords
                .iter()
                .zip(gamma_pows)
                .filter(|(&c, _)| c != 0)
                .fold(FieldElem::ZERO, |acc, (&c, &g)| self.add(acc, self.mul(elem_of[c as usize], g))),
        }
    }

    /// Packed coordinate row of `x` (see [`crate::linalg`]).
    #[inline]
    pub fn pack(&self, x: FieldElem) -> u64 {
        if self.ground.is_binary() {
            return x.0;
        }
        self.ground.pack(&self.coords_over_ground(x))
    }

    #[inline]
    pub fn unpack(&self, row: u64) -> FieldElem {
        if self.ground.is_binary() {
            return FieldElem(row);
        }
        self.elem_from_coords_unchecked(&self.ground.unpack(row, self.n))
    }

    /// Parses `"0"` or `"g^k"`.
    pub fn parse_elem(&self, literal: &str) -> Result<FieldElem> {
        let s = literal.trim();
        if s == "0" {
            return Ok(FieldElem::ZERO);
        }
        let k = s
            .strip_prefix("g^")
            .and_then(|k| k.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad element literal {literal:?}")))?;
        if k >= self.group_order {
            return Err(Error::Parse(format!("exponent {k} out of range 0..{}", self.group_order)));
        }
        Ok(self.gamma_pow(k))
    }

    /// `"0"` or `"g^k"`; `None` when the field has no log table.
    pub fn format_elem(&self, x: FieldElem) -> Option<String> {
        if x.is_zero() {
            return Some("0".into());
        }
        self.log(x).map(|k| format!("g^{k}"))
    }

    /// Coordinate row as a digit string. Digits are joined with `.` when
    /// `q > 10`.
    pub fn format_coords(&self, row: u64) -> String {
        let coords = self.ground.unpack(row, self.n);
        if self.q <= 10 {
            coords.iter().map(|c| char::from_digit(*c, 10).unwrap()).collect()
        } else {
            coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
        }
    }
}

fn validate_modulus(m: &[u64], p: u64, deg: usize) -> Result<()> {
    if m.len() != deg + 1 {
        return Err(Error::InvalidParams(format!(
            "modulus has {} coefficients, expected {}",
            m.len(),
            deg + 1
        )));
    }
    if m[deg] != 1 {
        return Err(Error::InvalidParams("modulus must be monic".into()));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::InvalidParams(format!("modulus coefficients must lie in 0..{p}")));
    }
    Ok(())
}

/// Lexicographically smallest primitive polynomial of degree `deg` over F_p,
/// comparing coefficient vectors from the constant term upward.
fn default_modulus(p: u64, deg: usize, group_order: u64, factors: &[u64]) -> Vec<u64> {
    let total = p.pow(deg as u32);
    // candidates with c_0 = 0 occupy the first p^(deg-1) values
    for v in total / p..total {
        // c_0 is the most significant digit of v
        let mut coeffs = vec![0u64; deg + 1];
        let mut rest = v;
        for i in (0..deg).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs[deg] = 1;
        let arith = PolyArith::new(p, coeffs);
        if arith.x_is_primitive(group_order, factors) {
            return arith.modulus;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn build_tables(arith: &PolyArith, order: u64) -> Result<Tables> {
    let group_order = order - 1;
    let mut exp = Vec::with_capacity(group_order as usize);
    let mut log = vec![u32::MAX; order as usize];
    let mut x = 1u64;
    for k in 0..group_order {
        if log[x as usize] != u32::MAX {
            return Err(Error::ModulusNotPrimitive { p: arith.p });
        }
        exp.push(x as u32);
        log[x as usize] = k as u32;
        x = arith.mul_by_x(x);
    }
    if x != 1 {
        return Err(Error::ModulusNotPrimitive { p: arith.p });
    }
    Ok(Tables { exp, log })
}
