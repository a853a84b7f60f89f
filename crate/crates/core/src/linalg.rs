//! Linear algebra over the ground field F_q on bit-packed coordinate rows.
//!
//! A row is a `u64` holding `n` coordinates of `width` bits each, coordinate
//! `i` (the coefficient of `gamma^i`) in bits `[i*width, (i+1)*width)`.
//! Over F_2 a row is just the bitmask of its coordinates.

/// Scalar arithmetic in F_q. Scalars are `u32` values in `[0, q)`.
///
/// For prime `q` a scalar is its residue. For `q = p^e` with `e > 1`, `0` is
/// zero and `1 + j` stands for `omega^j`, where `omega` generates `F_q^*`;
/// addition goes through a Zech logarithm table.
#[derive(Clone, Debug)]
pub struct GroundField {
    q: u32,
    p: u32,
    width: u32,
    zech: Option<Vec<u32>>,
}

impl GroundField {
    pub(crate) fn prime(p: u32) -> Self {
        Self { q: p, p, width: bit_width(p), zech: None }
    }

    /// `zech[k]` is the scalar of `1 + omega^k` for `k` in `0..q-1`.
    pub(crate) fn with_zech(q: u32, p: u32, zech: Vec<u32>) -> Self {
        debug_assert_eq!(zech.len() as u32, q - 1);
        Self { q, p, width: bit_width(q), zech: Some(zech) }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.zech {
            None => ((a as u64 + b as u64) % self.q as u64) as u32,
            Some(zech) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let m = self.q - 1;
                let (i, j) = (a - 1, b - 1);
                let z = zech[((j + m - i) % m) as usize];
                if z == 0 {
                    0
                } else {
                    1 + (i + z - 1) % m
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        match &self.zech {
            None => self.q - a,
            Some(_) if self.p == 2 => a,
            Some(_) => {
                let m = self.q - 1;
                1 + (a - 1 + m / 2) % m
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.zech {
            None => ((a as u64 * b as u64) % self.q as u64) as u32,
            Some(_) => 1 + (a - 1 + b - 1) % (self.q - 1),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero scalar");
        match &self.zech {
            None => crate::numth::pow_mod(a as u64, self.q as u64 - 2, self.q as u64) as u32,
            Some(_) => {
                let m = self.q - 1;
                1 + (m - (a - 1)) % m
            }
        }
    }

    #[inline]
    pub fn get(&self, row: u64, i: usize) -> u32 {
        if self.is_binary() {
            return ((row >> i) & 1) as u32;
        }
        ((row >> (i as u32 * self.width)) & self.mask()) as u32
    }

    #[inline]
    pub fn set(&self, row: u64, i: usize, v: u32) -> u64 {
        let shift = i as u32 * self.width;
        (row & !(self.mask() << shift)) | ((v as u64) << shift)
    }

    #[inline]
    fn mask(&self) -> u64 {
        (1u64 << self.width) - 1
    }

    /// Index of the first nonzero coordinate.
    #[inline]
    pub fn leading(&self, row: u64) -> Option<usize> {
        if row == 0 {
            return None;
        }
        Some((row.trailing_zeros() / self.width) as usize)
    }

    /// `row + c * other`, coordinatewise over `n` coordinates.
    #[inline]
    pub fn add_scaled(&self, row: u64, c: u32, other: u64, n: usize) -> u64 {
        if c == 0 {
            return row;
        }
        if self.is_binary() {
            return row ^ other;
        }
        let mut out = row;
        for i in 0..n {
            let o = self.get(other, i);
            if o != 0 {
                let v = self.add(self.get(row, i), self.mul(c, o));
                out = self.set(out, i, v);
            }
        }
        out
    }

    pub fn scale(&self, row: u64, c: u32, n: usize) -> u64 {
        if self.is_binary() || c == 1 {
            return if c == 0 { 0 } else { row };
        }
        let mut out = 0;
        for i in 0..n {
            out = self.set(out, i, self.mul(c, self.get(row, i)));
        }
        out
    }

    pub fn unpack(&self, row: u64, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.get(row, i)).collect()
    }

    pub fn pack(&self, coords: &[u32]) -> u64 {
        coords.iter().enumerate().fold(0, |acc, (i, &v)| self.set(acc, i, v))
    }
}

fn bit_width(q: u32) -> u32 {
    32 - (q - 1).leading_zeros()
}

/// Incremental row echelon form with pivots normalized to one.
///
/// Every inserted row is reduced against all rows already present, so the
/// stored rows vanish on every earlier pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<'g> {
    gf: &'g GroundField,
    n: usize,
    rows: Vec<u64>,
    pivots: Vec<usize>,
}

impl<'g> Echelon<'g> {
    pub fn new(gf: &'g GroundField, n: usize) -> Self {
        Self { gf, n, rows: Vec::with_capacity(n), pivots: Vec::with_capacity(n) }
    }

    /// Starts from rows already in reduced echelon form.
    pub fn from_rref(gf: &'g GroundField, n: usize, rows: &[u64]) -> Self {
        let pivots = rows.iter().map(|&r| gf.leading(r).expect("zero row in rref")).collect();
        Self { gf, n, rows: rows.to_vec(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn truncate(&mut self, rank: usize) {
        self.rows.truncate(rank);
        self.pivots.truncate(rank);
    }

    #[inline]
    pub fn reduce(&self, mut row: u64) -> u64 {
        if self.gf.is_binary() {
            for (&r, &p) in self.rows.iter().zip(&self.pivots) {
                if (row >> p) & 1 == 1 {
                    row ^= r;
                }
            }
            return row;
        }
        for (&r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = self.gf.get(row, p);
            if c != 0 {
                row = self.gf.add_scaled(row, self.gf.neg(c), r, self.n);
            }
        }
        row
    }

    /// Inserts a row; returns whether it was independent of the current span.
    #[inline]
    pub fn insert(&mut self, row: u64) -> bool {
        let row = self.reduce(row);
        match self.gf.leading(row) {
            None => false,
            Some(p) => {
                let lead = self.gf.get(row, p);
                let row = if lead == 1 { row } else { self.gf.scale(row, self.gf.inv(lead), self.n) };
                self.rows.push(row);
                self.pivots.push(p);
                true
            }
        }
    }

    pub fn contains(&self, row: u64) -> bool {
        self.reduce(row) == 0
    }

    /// Unique reduced row echelon form: pivots increasing, each pivot column
    /// zero outside its own row.
    pub fn into_rref(self) -> Vec<u64> {
        let Self { gf, n, rows, pivots } = self;
        let mut order: Vec<(usize, u64)> = pivots.into_iter().zip(rows).collect();
        order.sort_unstable_by_key(|&(p, _)| p);
        let mut rows: Vec<u64> = order.iter().map(|&(_, r)| r).collect();
        for i in 0..rows.len() {
            let p = order[i].0;
            for k in 0..rows.len() {
                if k == i {
                    continue;
                }
                let c = gf.get(rows[k], p);
                if c != 0 {
                    rows[k] = gf.add_scaled(rows[k], gf.neg(c), rows[i], n);
                }
            }
        }
        rows
    }
}

/// Reduced row echelon form of the span of `rows`.
pub fn rref(gf: &GroundField, n: usize, rows: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut ech = Echelon::new(gf, n);
    for r in rows {
        if ech.rank() == n {
            break;
        }
        ech.insert(r);
    }
    ech.into_rref()
}

/// Gauss-Jordan inverse of a square matrix over the prime field F_p.
pub(crate) fn invert_mod_p(matrix: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let d = matrix.len();
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| a[r][col] % p != 0)?;
        a.swap(col, pivot);
        let inv = crate::numth::pow_mod(a[col][col], p - 2, p);
        for v in a[col].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..d {
            if r != col && a[r][col] != 0 {
                let c = a[r][col];
                for k in 0..2 * d {
                    a[r][k] = (a[r][k] + (p - c) * a[col][k]) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[d..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_rref_is_canonical() {
        let gf = GroundField::prime(2);
        let a = rref(&gf, 4, [0b0011, 0b0110, 0b0101]);
        let b = rref(&gf, 4, [0b0110, 0b0011]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        // pivots at columns 0 and 1, pivot columns cleared
        assert_eq!(a, vec![0b0101, 0b0110]);
    }

    #[test]
    fn ternary_rows() {
        let gf = GroundField::prime(3);
        let n = 3;
        let r1 = gf.pack(&[2, 1, 0]);
        let r2 = gf.pack(&[1, 2, 0]);
        // r2 = 2 * r1 mod 3
        let out = rref(&gf, n, [r1, r2]);
        assert_eq!(out.len(), 1);
        assert_eq!(gf.unpack(out[0], n), vec![1, 2, 0]);
    }

    #[test]
    fn prime_field_scalars() {
        let gf = GroundField::prime(5);
        for a in 1..5 {
            assert_eq!(gf.mul(a, gf.inv(a)), 1);
            assert_eq!(gf.add(a, gf.neg(a)), 0);
        }
    }

    #[test]
    fn inverse_mod_p() {
        let m = vec![vec![1, 1], vec![0, 1]];
        let inv = invert_mod_p(&m, 2).unwrap();
        assert_eq!(inv, vec![vec![1, 1], vec![0, 1]]);
        assert!(invert_mod_p(&[vec![1, 1], vec![1, 1]], 2).is_none());
    }
}
