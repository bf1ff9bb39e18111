//! Exact linear algebra: fraction-free integer elimination, prime-field and rational
//! row reduction, and kernels.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Arithmetic of a field, carried by a context value so prime fields need no globals.
pub trait FieldOps {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn from_int(&self, a: &BigInt) -> Self::E;
}

/// `Z/pZ` for a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is prime and below `2^63`.
    pub fn new(p: u64) -> Option<PrimeField> {
        (is_prime_u64(p) && p < 1 << 63).then_some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

impl FieldOps for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = a.mod_floor(&p);
        u64::try_from(r).expect("reduced residue fits")
    }
}

/// The rationals, with exact big-integer numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl FieldOps for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
}

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
pub fn rref<F: FieldOps>(field: &F, m: &mut [Vec<F::E>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]);
        for j in c..cols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub(&row[j], &field.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(field: &F, m: &[Vec<F::E>]) -> usize {
    let mut work = m.to_vec();
    rref(field, &mut work).len()
}

/// Basis of `{x : M x = 0}` for an `rows × cols` matrix.
pub fn nullspace<F: FieldOps>(field: &F, m: &[Vec<F::E>], cols: usize) -> Vec<Vec<F::E>> {
    let mut work = m.to_vec();
    let pivots = rref(field, &mut work);
    let mut is_pivot = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = field.sub(&field.zero(), &work[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{y : yᵀ M = 0}`.
pub fn left_kernel<F: FieldOps>(field: &F, m: &[Vec<F::E>], cols: usize) -> Vec<Vec<F::E>> {
    let rows = m.len();
    let transposed: Vec<Vec<F::E>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    nullspace(field, &transposed, rows)
}

/// Integer types usable in fraction-free elimination. Checked operations return `None`
/// on overflow so callers can retry with big integers.
pub trait ExactInt: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn gcd(&self, o: &Self) -> Self;
    fn abs(&self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Bareiss fraction-free elimination of a dense integer matrix; returns the rank, or
/// `None` if an intermediate value overflowed `T`.
pub fn bareiss_rank_with<T: ExactInt>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let a = m[r][c].mul(&m[i][j])?;
                let b = m[i][c].mul(&m[r][j])?;
                m[i][j] = a.sub(&b)?.div_exact(&prev);
            }
            m[i][c] = T::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Some(r)
}

/// Exact rank of an integer matrix: `i128` first, big integers on overflow.
pub fn bareiss_rank(m: &[Vec<BigInt>]) -> usize {
    let small: Option<Vec<Vec<i128>>> = m
        .iter()
        .map(|row| row.iter().map(|x| i128::try_from(x).ok()).collect())
        .collect();
    if let Some(small) = small {
        if let Some(r) = bareiss_rank_with(small) {
            return r;
        }
    }
    bareiss_rank_with(m.to_vec()).expect("big integers do not overflow")
}

/// Sparse row: `(column, value)` pairs with strictly increasing columns and no zeros.
pub type SparseRow<T> = Vec<(usize, T)>;

fn normalize<T: ExactInt>(row: &mut SparseRow<T>) {
    let Some(first) = row.first() else {
        return;
    };
    let mut g = first.1.abs();
    for (_, x) in row.iter().skip(1) {
        if g == T::one() {
            break;
        }
        g = g.gcd(x);
    }
    let flip = first.1.is_negative();
    if g != T::one() || flip {
        let g = if flip { g.neg() } else { g };
        for (_, x) in row.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// `row * (b/g) - pivot * (a/g)` where `a`, `b` are the leading entries.
fn eliminate<T: ExactInt>(row: &SparseRow<T>, pivot: &SparseRow<T>) -> Option<SparseRow<T>> {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let g = a.gcd(b);
    let (sr, sp) = (b.div_exact(&g), a.div_exact(&g));
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1.mul(&sr)?)
        } else if cj < ci {
            j += 1;
            (cj, T::zero().sub(&pivot[j - 1].1.mul(&sp)?)?)
        } else {
            i += 1;
            j += 1;
            let x = row[i - 1].1.mul(&sr)?;
            let y = pivot[j - 1].1.mul(&sp)?;
            (ci, x.sub(&y)?)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    normalize(&mut out);
    Some(out)
}

/// Rank of a sparse integer matrix by incremental fraction-free echelon reduction.
/// Returns `None` on overflow of `T`.
pub fn sparse_rank_with<T: ExactInt>(rows: impl IntoIterator<Item = SparseRow<T>>) -> Option<usize> {
    let mut pivots: HashMap<usize, SparseRow<T>> = HashMap::new();
    for mut row in rows {
        normalize(&mut row);
        while let Some(&(c, _)) = row.first() {
            match pivots.get(&c) {
                Some(p) => row = eliminate(&row, p)?,
                None => {
                    pivots.insert(c, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Exact rank over the rationals of a sparse matrix with small integer entries.
pub fn sparse_rank_rational(rows: &[SparseRow<i64>]) -> usize {
    let small = rows
        .iter()
        .map(|r| r.iter().map(|&(c, x)| (c, x as i128)).collect::<SparseRow<i128>>());
    if let Some(r) = sparse_rank_with(small) {
        return r;
    }
    let big = rows
        .iter()
        .map(|r| r.iter().map(|&(c, x)| (c, BigInt::from(x))).collect::<SparseRow<BigInt>>());
    sparse_rank_with(big).expect("big integers do not overflow")
}

/// Rank over `Z/pZ` of a sparse integer matrix.
pub fn sparse_rank_mod_p(rows: &[SparseRow<i64>], field: &PrimeField) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for r in rows {
        let mut row: Vec<(usize, u64)> = r
            .iter()
            .map(|&(c, x)| (c, field.reduce_i64(x)))
            .filter(|&(_, x)| x != 0)
            .collect();
        while let Some(&(c, lead)) = row.first() {
            match pivots.get(&c) {
                Some(p) => {
                    let mut out = Vec::with_capacity(row.len() + p.len());
                    let (mut i, mut j) = (1, 1);
                    while i < row.len() || j < p.len() {
                        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
                        let cj = p.get(j).map_or(usize::MAX, |e| e.0);
                        let (col, val) = if ci < cj {
                            i += 1;
                            (ci, row[i - 1].1)
                        } else if cj < ci {
                            j += 1;
                            (cj, field.sub(&0, &field.mul(&lead, &p[j - 1].1)))
                        } else {
                            i += 1;
                            j += 1;
                            (ci, field.sub(&row[i - 1].1, &field.mul(&lead, &p[j - 1].1)))
                        };
                        if val != 0 {
                            out.push((col, val));
                        }
                    }
                    row = out;
                }
                None => {
                    let inv = field.inv(&lead);
                    for e in row.iter_mut() {
                        e.1 = field.mul(&e.1, &inv);
                    }
                    pivots.insert(c, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
