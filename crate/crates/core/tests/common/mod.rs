#![allow(dead_code)]

use std::sync::Arc;

use cmtorus::cmtype::{self, CMType};
use cmtorus::groups::{self, CentralInvolution, FiniteGroup, GroupSpec};
use cmtorus::IntMatrix;

pub type Mat = Vec<Vec<i128>>;

pub fn to_mat(m: &IntMatrix) -> Mat {
    m.to_i64_rows()
        .expect("entries fit in i64")
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect()
}

pub fn from_mat(m: &Mat, cols: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    IntMatrix::from_rows_with_cols(&rows, cols)
}

/// Fraction-free Gaussian elimination. Returns the rank and, for square
/// input, the determinant.
pub fn bareiss(m: &Mat, cols: usize) -> (usize, Option<i128>) {
    let mut a = m.clone();
    let rows = a.len();
    let mut prev = 1i128;
    let mut rank = 0;
    let mut sign = 1i128;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    let det = (rows == cols).then(|| if rank == rows { sign * prev } else { 0 });
    (rank, det)
}

pub fn rank(m: &Mat, cols: usize) -> usize {
    bareiss(m, cols).0
}

pub fn det(m: &Mat) -> i128 {
    bareiss(m, m.len()).1.expect("square")
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn minor(m: &Mat, rows: &[usize], cols: &[usize]) -> i128 {
    let sub: Mat = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect();
    det(&sub)
}

/// `d_k`: gcd of all `k x k` minors.
pub fn determinantal_divisor(m: &Mat, cols: usize, k: usize) -> i128 {
    let mut g = 0;
    for rs in combinations(m.len(), k) {
        for cs in combinations(cols, k) {
            g = gcd(g, minor(m, &rs, &cs));
        }
    }
    g
}

/// Smith invariants from determinantal divisors.
pub fn smith_by_minors(m: &Mat, cols: usize) -> Vec<i128> {
    let r = rank(m, cols);
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=r {
        let d = determinantal_divisor(m, cols, k);
        out.push(d / prev);
        prev = d;
    }
    out
}

fn transpose(m: &Mat, cols: usize) -> Mat {
    (0..cols).map(|c| m.iter().map(|r| r[c]).collect()).collect()
}

/// Index of the column lattice of `sub` in that of `full` (same row count),
/// when the two have equal rank. Projects onto independent rows first.
pub fn column_lattice_index(sub: &Mat, sub_cols: usize, full: &Mat, full_cols: usize) -> Option<i128> {
    let r = rank(full, full_cols);
    if rank(sub, sub_cols) != r {
        return None;
    }
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..full.len() {
        let mut trial: Mat = chosen.iter().map(|&j| full[j].clone()).collect();
        trial.push(full[i].clone());
        if rank(&trial, full_cols) == trial.len() {
            chosen.push(i);
        }
    }
    assert_eq!(chosen.len(), r);
    let restrict = |m: &Mat| -> Mat { chosen.iter().map(|&i| m[i].clone()).collect() };
    let d_sub = determinantal_divisor(&restrict(sub), sub_cols, r);
    let d_full = determinantal_divisor(&restrict(full), full_cols, r);
    assert_eq!(d_sub % d_full, 0);
    Some(d_sub / d_full)
}

pub fn transpose_mat(m: &Mat, cols: usize) -> Mat {
    transpose(m, cols)
}

/// Element-level lift `{g : Hg ∈ Φ}` computed by direct multiplication.
pub fn naive_lift(t: &CMType) -> Vec<bool> {
    let g = t.group();
    let h = t.subgroup().elems();
    let mut out = vec![false; g.order()];
    for &rep in &t.representatives() {
        for &x in h {
            out[g.mul(x, rep)] = true;
        }
    }
    out
}

/// `|G| x |G|` matrix with entry `(a, b)` = 1 iff `b a⁻¹ ∈ Φ̃`. Its column
/// span is the character lattice of the Mumford-Tate torus.
pub fn element_matrix(t: &CMType) -> Mat {
    let g = t.group();
    let l = naive_lift(t);
    g.elements()
        .map(|a| g.elements().map(|b| i128::from(l[g.mul(b, g.inv(a))])).collect())
        .collect()
}

pub fn hstack(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).copied().collect()).collect()
}

pub fn oracle_dim(t: &CMType) -> usize {
    let m = element_matrix(t);
    rank(&m, m.len())
}

/// `(dim MT(A1 x A2), status of π1, status of π2)` as
/// `"ISO" | "ISOGENY" | "NEITHER"`.
pub fn oracle_pair(t1: &CMType, t2: &CMType) -> (usize, &'static str, &'static str) {
    let n = t1.group().order();
    let distinct = |m: &Mat| -> Vec<Vec<i128>> {
        let mut cols = transpose(m, n);
        cols.sort();
        cols.dedup();
        cols
    };
    let c1 = distinct(&element_matrix(t1));
    let c2 = distinct(&element_matrix(t2));
    let mut c = c1.clone();
    c.extend(c2.iter().cloned());
    c.sort();
    c.dedup();
    let as_rows = |cols: &Vec<Vec<i128>>| transpose(cols, n);
    let full = as_rows(&c);
    let dim = rank(&full, c.len());
    let status = |sub: &Vec<Vec<i128>>| match column_lattice_index(&as_rows(sub), sub.len(), &full, c.len()) {
        None => "NEITHER",
        Some(1) => "ISO",
        Some(_) => "ISOGENY",
    };
    (dim, status(&c1), status(&c2))
}

pub struct Setting {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub rho: CentralInvolution,
}

/// Catalog groups of order at most 16, each with every central involution.
pub fn small_settings() -> Vec<Setting> {
    let specs: Vec<(&'static str, GroupSpec)> = vec![
        ("C2", GroupSpec::Cyclic { n: 2 }),
        ("C4", GroupSpec::Cyclic { n: 4 }),
        ("C6", GroupSpec::Cyclic { n: 6 }),
        ("C8", GroupSpec::Cyclic { n: 8 }),
        ("C10", GroupSpec::Cyclic { n: 10 }),
        ("C12", GroupSpec::Cyclic { n: 12 }),
        ("D8", GroupSpec::Dihedral { n: 4 }),
        ("D12", GroupSpec::Dihedral { n: 6 }),
        ("D16", GroupSpec::Dihedral { n: 8 }),
        ("U15", GroupSpec::UnitGroupMod { n: 15 }),
        ("U16", GroupSpec::UnitGroupMod { n: 16 }),
        (
            "C2xC4",
            GroupSpec::Product {
                factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Cyclic { n: 4 }],
            },
        ),
    ];
    let mut out = Vec::new();
    for (name, spec) in specs {
        let group = Arc::new(groups::make_group(&spec).unwrap());
        for rho in groups::central_involutions(&group) {
            out.push(Setting {
                name,
                group: Arc::clone(&group),
                rho,
            });
        }
    }
    out
}

/// Every CM type on every subgroup not containing `ρ`.
pub fn all_types(s: &Setting) -> Vec<CMType> {
    let mut out = Vec::new();
    for h in groups::all_subgroups(&s.group) {
        if h.contains(s.rho.elem()) {
            continue;
        }
        let space = Arc::new(groups::right_cosets(&s.group, &h));
        out.extend(cmtype::enumerate_cm_types(&space, s.rho).unwrap());
    }
    out
}

/// Fraction-free determinant in big integers.
pub fn big_det(m: &IntMatrix) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a: Vec<Vec<BigInt>> = m.row_vecs();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut sign = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != zero) else {
            return zero;
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                a[r][k] = (&a[c][c] * &a[r][k] - &a[r][c] * &a[c][k]) / &prev;
            }
            a[r][c] = zero.clone();
        }
        prev = a[c][c].clone();
    }
    prev * sign
}

/// `dim MT(A1 x A2)` only.
pub fn oracle_pair_dim(t1: &CMType, t2: &CMType) -> usize {
    let m = hstack(&element_matrix(t1), &element_matrix(t2));
    rank(&m, 2 * t1.group().order())
}
