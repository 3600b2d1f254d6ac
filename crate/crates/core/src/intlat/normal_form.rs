//! Hermite and Smith normal forms with tracked unimodular transforms.
//!
//! The Hermite form here is column-style: column operations only, pivot rows
//! strictly increasing left to right, pivots positive, and every entry in a
//! pivot row left of its pivot reduced into `[0, pivot)`. This makes the
//! nonzero columns a canonical basis of the column span, so lattice equality
//! is plain entrywise comparison.
//!
//! Both decompositions carry the inverse transforms as well: the inverses are
//! accumulated op by op (each elementary operation has a trivial inverse),
//! which keeps everything exact and avoids a separate matrix inversion.

use super::IntMatrix;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

// Extended gcd with the gcd normalized positive: g = x*a + y*b, g > 0.
// Callers guarantee a != 0.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let eg = a.extended_gcd(b);
    let (g, x, y) = (eg.gcd, eg.x, eg.y);
    debug_assert_eq!(&x * a + &y * b, g);
    if g.is_negative() {
        (-g, -x, -y)
    } else {
        (g, x, y)
    }
}

/// Column Hermite normal form `A * U = H` with `U` unimodular.
#[derive(Debug, Clone)]
pub struct HnfDecomposition {
    h: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl HnfDecomposition {
    pub fn h(&self) -> &IntMatrix {
        &self.h
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    /// Indices of the nonzero columns of `h` (they precede the zero columns).
    pub fn rank(&self) -> usize {
        (0..self.h.cols())
            .filter(|&j| !(0..self.h.rows()).all(|i| self.h.get(i, j).is_zero()))
            .count()
    }
}

// Apply a column operation to (target, u) and its inverse as a row operation
// on u_inv, preserving target = original * u and u * u_inv = id.
struct ColTracked<'a> {
    target: &'a mut IntMatrix,
    u: &'a mut IntMatrix,
    u_inv: &'a mut IntMatrix,
}

impl ColTracked<'_> {
    fn swap(&mut self, i: usize, j: usize) {
        self.target.swap_cols(i, j);
        self.u.swap_cols(i, j);
        self.u_inv.swap_rows(i, j);
    }

    fn negate(&mut self, i: usize) {
        self.target.negate_col(i);
        self.u.negate_col(i);
        self.u_inv.negate_row(i);
    }

    fn add_mul(&mut self, dst: usize, src: usize, factor: &BigInt) {
        self.target.col_add_mul(dst, src, factor);
        self.u.col_add_mul(dst, src, factor);
        let neg = -factor;
        self.u_inv.row_add_mul(src, dst, &neg);
    }

    // (c_i, c_j) <- (x c_i + y c_j, z c_i + w c_j); requires xw - yz = 1.
    fn combine(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        debug_assert!((x * w - y * z).is_one());
        self.target.combine_cols(i, j, x, y, z, w);
        self.u.combine_cols(i, j, x, y, z, w);
        // inverse acts on rows: (r_i, r_j) <- (w r_i - z r_j, -y r_i + x r_j)
        let (nz, ny) = (-z, -y);
        self.u_inv.combine_rows(i, j, w, &nz, &ny, x);
    }
}

/// Canonical column Hermite normal form of `a`, with `a * u = h`.
pub fn hnf(a: &IntMatrix) -> HnfDecomposition {
    let (n, m) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut ops = ColTracked {
        target: &mut h,
        u: &mut u,
        u_inv: &mut u_inv,
    };

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    for row in 0..n {
        if next == m {
            break;
        }
        let Some(first) = (next..m).find(|&c| !ops.target.get(row, c).is_zero()) else {
            continue;
        };
        ops.swap(first, next);
        for c in next + 1..m {
            if ops.target.get(row, c).is_zero() {
                continue;
            }
            let a0 = ops.target.get(row, next).clone();
            let b0 = ops.target.get(row, c).clone();
            let (g, x, y) = xgcd(&a0, &b0);
            let p = &a0 / &g;
            let q = &b0 / &g;
            ops.combine(next, c, &x, &y, &-q, &p);
        }
        if ops.target.get(row, next).is_negative() {
            ops.negate(next);
        }
        pivots.push((row, next));
        next += 1;
    }

    // Reduce entries left of each pivot into [0, pivot). Processing pivots
    // top to bottom leaves earlier pivot rows untouched.
    for &(r, c) in &pivots {
        let p = ops.target.get(r, c).clone();
        for j in 0..c {
            let q = ops.target.get(r, j).div_floor(&p);
            if !q.is_zero() {
                ops.add_mul(j, c, &-q);
            }
        }
    }

    debug_assert_eq!(a.mul(&u), h);
    debug_assert!(u.mul(&u_inv).is_identity());
    HnfDecomposition { h, u, u_inv }
}

/// Smith normal form `U * A * V = S` with elementary divisors on the diagonal.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    diag: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// Diagonal of `s`: nonnegative, divisibility chain, zeros last.
    pub fn diag(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The divisors strictly greater than one, i.e. the cyclic torsion factors.
    pub fn nontrivial_divisors(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

struct RowTracked<'a> {
    target: &'a mut IntMatrix,
    u: &'a mut IntMatrix,
    u_inv: &'a mut IntMatrix,
}

impl RowTracked<'_> {
    fn swap(&mut self, i: usize, j: usize) {
        self.target.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn negate(&mut self, i: usize) {
        self.target.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn add_mul(&mut self, dst: usize, src: usize, factor: &BigInt) {
        self.target.row_add_mul(dst, src, factor);
        self.u.row_add_mul(dst, src, factor);
        let neg = -factor;
        self.u_inv.col_add_mul(src, dst, &neg);
    }

    // (r_i, r_j) <- (x r_i + y r_j, z r_i + w r_j); requires xw - yz = 1.
    fn combine(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        debug_assert!((x * w - y * z).is_one());
        self.target.combine_rows(i, j, x, y, z, w);
        self.u.combine_rows(i, j, x, y, z, w);
        // inverse acts on columns: (c_i, c_j) <- (w c_i - z c_j, -y c_i + x c_j)
        let (nz, ny) = (-z, -y);
        self.u_inv.combine_cols(i, j, w, &nz, &ny, x);
    }
}

/// Smith normal form of `a`.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (n, m) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(m);
    let mut v_inv = IntMatrix::identity(m);

    let k = n.min(m);
    let mut t = 0usize;
    while t < k {
        // Pivot: first nonzero entry of the remaining block, scanned row-major.
        let mut pivot = None;
        'search: for i in t..n {
            for j in t..m {
                if !s.get(i, j).is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        {
            let mut rows = RowTracked {
                target: &mut s,
                u: &mut u,
                u_inv: &mut u_inv,
            };
            rows.swap(pi, t);
        }
        {
            let mut cols = ColTracked {
                target: &mut s,
                u: &mut v,
                u_inv: &mut v_inv,
            };
            cols.swap(pj, t);
        }

        loop {
            clear_cross(&mut s, &mut u, &mut u_inv, &mut v, &mut v_inv, t);

            // Divisibility sweep: the pivot must divide the remaining block.
            let mut offender = None;
            'div: for i in t + 1..n {
                for j in t + 1..m {
                    if !s.get(i, j).mod_floor(s.get(t, t)).is_zero() {
                        offender = Some(i);
                        break 'div;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let mut rows = RowTracked {
                        target: &mut s,
                        u: &mut u,
                        u_inv: &mut u_inv,
                    };
                    rows.add_mul(t, i, &BigInt::one());
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            let mut rows = RowTracked {
                target: &mut s,
                u: &mut u,
                u_inv: &mut u_inv,
            };
            rows.negate(t);
        }
        t += 1;
    }

    let diag: Vec<BigInt> = (0..k).map(|i| s.get(i, i).clone()).collect();
    debug_assert!(diag
        .windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].mod_floor(&w[0]).is_zero())));
    debug_assert_eq!(u.mul(a).mul(&v), s);
    debug_assert!(u.mul(&u_inv).is_identity());
    debug_assert!(v.mul(&v_inv).is_identity());

    SmithDecomposition {
        s,
        u,
        v,
        u_inv,
        v_inv,
        diag,
    }
}

// Zero out row t and column t beyond the pivot, alternating row and column
// passes until neither reintroduces entries.
fn clear_cross(
    s: &mut IntMatrix,
    u: &mut IntMatrix,
    u_inv: &mut IntMatrix,
    v: &mut IntMatrix,
    v_inv: &mut IntMatrix,
    t: usize,
) {
    let (n, m) = (s.rows(), s.cols());
    loop {
        for i in t + 1..n {
            if s.get(i, t).is_zero() {
                continue;
            }
            let mut rows = RowTracked {
                target: s,
                u,
                u_inv,
            };
            let a0 = rows.target.get(t, t).clone();
            let b0 = rows.target.get(i, t).clone();
            if b0.mod_floor(&a0).is_zero() {
                let q = -(&b0 / &a0);
                rows.add_mul(i, t, &q);
            } else {
                let (g, x, y) = xgcd(&a0, &b0);
                let p = &a0 / &g;
                let q = &b0 / &g;
                rows.combine(t, i, &x, &y, &-q, &p);
            }
        }
        let mut dirty = false;
        for j in t + 1..m {
            if s.get(t, j).is_zero() {
                continue;
            }
            let mut cols = ColTracked {
                target: s,
                u: v,
                u_inv: v_inv,
            };
            let a0 = cols.target.get(t, t).clone();
            let b0 = cols.target.get(t, j).clone();
            if b0.mod_floor(&a0).is_zero() {
                let q = -(&b0 / &a0);
                cols.add_mul(j, t, &q);
            } else {
                let (g, x, y) = xgcd(&a0, &b0);
                let p = &a0 / &g;
                let q = &b0 / &g;
                cols.combine(t, j, &x, &y, &-q, &p);
                dirty = true;
            }
        }
        // Column gcd steps may have refilled column t.
        if !dirty && (t + 1..n).all(|i| s.get(i, t).is_zero()) {
            break;
        }
    }
}
