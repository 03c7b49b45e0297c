//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! kernels, and sublattice span/index tests.
//!
//! All arithmetic is done with arbitrary-precision integers. The Hermite form
//! is row-style: pivots are positive, entries above a pivot are reduced into
//! `[0, pivot)`, and zero rows come last.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from machine-integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`], but keeps the column count when there
    /// are no rows.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries as `i64`, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| i64::try_from(x).ok())
                    .collect()
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        IntMatrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Keeps the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let delta = q * s;
                self.data[dst * self.cols + c] -= delta;
            }
        }
    }

    /// Replaces rows (p, r) by (x*p + y*r, -b*p + a*r). The 2x2 transform has
    /// determinant `x*a + y*b`, which callers keep equal to 1.
    fn combine_rows(&mut self, p: usize, r: usize, x: &BigInt, y: &BigInt, a: &BigInt, b: &BigInt) {
        for c in 0..self.cols {
            let vp = &self.data[p * self.cols + c];
            let vr = &self.data[r * self.cols + c];
            if vp.is_zero() && vr.is_zero() {
                continue;
            }
            let np = x * vp + y * vr;
            let nr = a * vr - b * vp;
            self.data[p * self.cols + c] = np;
            self.data[r * self.cols + c] = nr;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|r| {
                self.row(r)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = strs.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", strs[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows)
                .map(|r| self.row(r).iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.data.len() != repr.rows {
            return Err(D::Error::custom(format!(
                "matrix declares {} rows but data has {}",
                repr.rows,
                repr.data.len()
            )));
        }
        let mut rows = Vec::with_capacity(repr.rows);
        for (i, row) in repr.data.into_iter().enumerate() {
            if row.len() != repr.cols {
                return Err(D::Error::custom(format!(
                    "matrix row {i} has {} entries, expected {}",
                    row.len(),
                    repr.cols
                )));
            }
            let parsed = row
                .iter()
                .map(|s| {
                    s.parse::<BigInt>()
                        .map_err(|_| D::Error::custom(format!("invalid integer {s:?} in row {i}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        Ok(IntMatrix::from_big_rows(rows, repr.cols))
    }
}

/// Result of a row-style Hermite normal form computation: `transform * input = hnf`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot of each nonzero row.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Extended gcd with `g >= 0` and `x*a + y*b = g`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite normal form with unimodular transform.
pub fn hnf(m: &IntMatrix) -> Hnf {
    hnf_impl(m, true)
}

fn hnf_impl(m: &IntMatrix, track: bool) -> Hnf {
    let mut h = m.clone();
    let mut u = if track {
        IntMatrix::identity(m.rows)
    } else {
        IntMatrix::zeros(0, 0)
    };
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..h.cols {
        if p == h.rows {
            break;
        }
        // Bring the smallest nonzero entry at or below p into row p, which keeps
        // the gcd combinations small.
        let best = (p..h.rows)
            .filter(|&r| !h.get(r, col).is_zero())
            .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
        let Some(best) = best else { continue };
        h.swap_rows(p, best);
        if track {
            u.swap_rows(p, best);
        }
        for r in p + 1..h.rows {
            if h.get(r, col).is_zero() {
                continue;
            }
            let piv = h.get(p, col).clone();
            let cur = h.get(r, col).clone();
            if cur.is_multiple_of(&piv) {
                let q = &cur / &piv;
                h.sub_row_multiple(r, p, &q);
                if track {
                    u.sub_row_multiple(r, p, &q);
                }
            } else {
                let (g, x, y) = ext_gcd(&piv, &cur);
                let a = &piv / &g;
                let b = &cur / &g;
                h.combine_rows(p, r, &x, &y, &a, &b);
                if track {
                    u.combine_rows(p, r, &x, &y, &a, &b);
                }
            }
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            if track {
                u.negate_row(p);
            }
        }
        let piv = h.get(p, col).clone();
        for r in 0..p {
            let q = h.get(r, col).div_floor(&piv);
            if !q.is_zero() {
                h.sub_row_multiple(r, p, &q);
                if track {
                    u.sub_row_multiple(r, p, &q);
                }
            }
        }
        pivots.push(col);
        p += 1;
    }
    Hnf { h, u, pivots }
}

/// Rank of `m` over the rationals (equivalently over the integers).
pub fn rank(m: &IntMatrix) -> usize {
    hnf_impl(m, false).rank()
}

/// Nonzero Smith invariants `d_1 | d_2 | ... | d_r` of `m`, all positive.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    // Alternate row and column Hermite reductions until the matrix is
    // diagonal, then repair the divisibility chain with gcd/lcm swaps.
    let mut cur = m.clone();
    loop {
        let h = hnf_impl(&cur, false).h;
        let r = trailing_nonzero_rows(&h);
        cur = take_rows(&h, r);
        if is_diagonal(&cur) {
            break;
        }
        cur = cur.transpose();
    }
    let n = cur.rows.min(cur.cols);
    let mut diag: Vec<BigInt> = (0..n)
        .map(|i| cur.get(i, i).abs())
        .filter(|d| !d.is_zero())
        .collect();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if !diag[j].is_multiple_of(&diag[i]) {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag
}

fn trailing_nonzero_rows(m: &IntMatrix) -> usize {
    (0..m.rows)
        .rev()
        .find(|&r| m.row(r).iter().any(|x| !x.is_zero()))
        .map_or(0, |r| r + 1)
}

fn take_rows(m: &IntMatrix, n: usize) -> IntMatrix {
    IntMatrix {
        rows: n,
        cols: m.cols,
        data: m.data[..n * m.cols].to_vec(),
    }
}

fn is_diagonal(m: &IntMatrix) -> bool {
    (0..m.rows).all(|r| (0..m.cols).all(|c| r == c || m.get(r, c).is_zero()))
}

/// Basis (as rows) of the integer right kernel `{v : m v = 0}`.
///
/// The basis spans the full kernel lattice and is returned in Hermite normal
/// form, so it is canonical for a given `m`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let t = hnf(&m.transpose());
    let r = t.rank();
    let kernel_rows: Vec<Vec<BigInt>> = (r..t.u.rows).map(|i| t.u.row(i).to_vec()).collect();
    let k = IntMatrix::from_big_rows(kernel_rows, m.cols);
    if k.rows == 0 {
        return k;
    }
    let reduced = hnf_impl(&k, false);
    take_rows(&reduced.h, reduced.rank())
}

/// How the row span of a set of generators sits inside `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpanStatus {
    Full {
        rank: usize,
    },
    FiniteIndex {
        rank: usize,
        #[serde(with = "bigint_string")]
        index: BigInt,
    },
    InfiniteIndex {
        rank: usize,
    },
}

impl SpanStatus {
    pub fn rank(&self) -> usize {
        match self {
            SpanStatus::Full { rank }
            | SpanStatus::FiniteIndex { rank, .. }
            | SpanStatus::InfiniteIndex { rank } => *rank,
        }
    }

    /// Index of the span in `Z^n`, when finite.
    pub fn index(&self) -> Option<BigInt> {
        match self {
            SpanStatus::Full { .. } => Some(BigInt::one()),
            SpanStatus::FiniteIndex { index, .. } => Some(index.clone()),
            SpanStatus::InfiniteIndex { .. } => None,
        }
    }
}

/// Classifies the row span of `generators` inside `Z^ambient_rank`.
pub fn span_status(generators: &IntMatrix, ambient_rank: usize) -> SpanStatus {
    assert_eq!(
        generators.cols, ambient_rank,
        "generators must have ambient_rank columns"
    );
    // A full-rank row HNF is square upper triangular once zero rows are
    // dropped, so the index is the product of its pivots.
    let h = hnf_impl(generators, false);
    let rank = h.rank();
    if rank < ambient_rank {
        return SpanStatus::InfiniteIndex { rank };
    }
    let index: BigInt = h
        .pivots
        .iter()
        .enumerate()
        .map(|(r, &c)| h.h.get(r, c).clone())
        .product();
    if index.is_one() {
        SpanStatus::Full { rank }
    } else {
        SpanStatus::FiniteIndex { rank, index }
    }
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("invalid integer {s:?}")))
    }
}
