//! Independent brute force verification of the main pipeline.
//!
//! The orbit oracle never touches Smith coordinates: coset representatives of
//! `Z^n / L(Z^m)` are the integer points of the half-open fundamental
//! parallelepiped of an image basis, membership and reduction are decided
//! with the adjugate (Cramer), and determinants come from cofactor expansion.
//! Agreement of the resulting orbit size multiset with the presentation-based
//! enumeration is a strong end-to-end check, exercised over seeded random
//! instances.
//!
//! The module also rederives the Smith divisors from gcds of minors, and
//! sweeps the Gauss-integer family against its closed-form orbit table.

use crate::bundle::{make_instance, BaseSpace, ProblemInstance};
use crate::intlat::{self, image_lattice, kernel_lattice, IntMatrix};
use crate::nielsen;
use crate::orbits::{self, OrbitStats};
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

const MAX_BRUTE_DIM: usize = 8;
const MINORS_DIM_CAP: usize = 6;

// Determinant by cofactor expansion along the first row; exponential, fine
// for the small dimensions the oracle is guarded to.
fn cofactor_det(m: &IntMatrix) -> BigInt {
    debug_assert!(m.is_square());
    let n = m.rows();
    match n {
        0 => BigInt::one(),
        1 => m.get(0, 0).clone(),
        _ => {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m.get(0, j).is_zero() {
                    continue;
                }
                let minor = submatrix(m, 0, j);
                let term = m.get(0, j) * cofactor_det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

fn submatrix(m: &IntMatrix, skip_row: usize, skip_col: usize) -> IntMatrix {
    let n = m.rows();
    IntMatrix::from_fn(n - 1, n - 1, |i, j| {
        let r = if i < skip_row { i } else { i + 1 };
        let c = if j < skip_col { j } else { j + 1 };
        m.get(r, c).clone()
    })
}

// adj(m) * m = det(m) * id, entries by cofactor expansion.
fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    IntMatrix::from_fn(n, n, |i, j| {
        let c = cofactor_det(&submatrix(m, j, i));
        if (i + j) % 2 == 0 {
            c
        } else {
            -c
        }
    })
}

/// Orbit statistics of `[u] -> [A_N(u - v)]` on `Z^n / L(Z^m)`, computed on
/// explicit parallelepiped coset representatives.
///
/// Requires a finite quotient (`InfiniteGroup` otherwise) of order at most
/// `cap`. Must agree with the Smith-coordinate enumeration exactly.
pub fn brute_orbits(a_n: &IntMatrix, l: &IntMatrix, v: &[BigInt], cap: u64) -> Result<OrbitStats> {
    let n = l.rows();
    assert_eq!(a_n.rows(), n);
    assert_eq!(a_n.cols(), n);
    assert_eq!(v.len(), n);
    if n > MAX_BRUTE_DIM {
        return Err(Error::TooLarge {
            order: BigInt::from(n),
            cap: MAX_BRUTE_DIM as u64,
        });
    }
    let image = image_lattice(l);
    if image.rank() < n {
        return Err(Error::InfiniteGroup);
    }
    let basis = image.basis_matrix();
    let det = cofactor_det(basis);
    debug_assert!(!det.is_zero());
    let order_big = det.abs();
    let Some(order) = order_big.to_u64().filter(|&o| o <= cap) else {
        return Err(Error::TooLarge {
            order: order_big,
            cap,
        });
    };
    let adj = adjugate(basis);

    // x lies in the half-open parallelepiped iff every t_i = (adj x)_i / det
    // lies in [0, 1)
    let in_cell = |x: &[BigInt]| -> bool {
        adj.mul_vec(x).iter().all(|y| {
            if det.is_positive() {
                !y.is_negative() && y < &det
            } else {
                !y.is_positive() && y > &det
            }
        })
    };
    // reduce an arbitrary integer vector to its representative in the cell
    let reduce = |x: &[BigInt]| -> Vec<BigInt> {
        let y = adj.mul_vec(x);
        let k: Vec<BigInt> = y.iter().map(|yi| yi.div_floor(&det)).collect();
        let shift = basis.mul_vec(&k);
        intlat::vec_sub(x, &shift)
    };

    // bounding box of the cell; representatives are filtered by membership
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        for j in 0..n {
            let e = basis.get(i, j);
            if e.is_negative() {
                a += e;
            } else {
                b += e;
            }
        }
        lo.push(a);
        hi.push(b);
    }
    let mut reps: Vec<Vec<BigInt>> = Vec::with_capacity(order as usize);
    let mut cursor = lo.clone();
    'scan: loop {
        if in_cell(&cursor) {
            reps.push(cursor.clone());
        }
        for i in 0..n {
            if cursor[i] < hi[i] {
                cursor[i] += 1;
                continue 'scan;
            }
            cursor[i] = lo[i].clone();
        }
        break;
    }
    if BigInt::from(reps.len()) != order_big {
        return Err(Error::InternalInconsistency(
            "parallelepiped point count does not match the determinant",
        ));
    }

    let index: BTreeMap<Vec<BigInt>, usize> = reps
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let apply = |x: &[BigInt]| -> Vec<BigInt> {
        let moved = a_n.mul_vec(&intlat::vec_sub(x, v));
        reduce(&moved)
    };

    let mut visited = alloc::vec![false; order as usize];
    let mut by_size: BTreeMap<u64, u64> = BTreeMap::new();
    for start in 0..reps.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut cur = reps[start].clone();
        let mut size = 1u64;
        loop {
            let next = apply(&cur);
            let idx = *index
                .get(&next)
                .ok_or(Error::InternalInconsistency("image left the cell"))?;
            if idx == start {
                break;
            }
            if visited[idx] {
                return Err(Error::InternalInconsistency(
                    "orbit walk reentered a foreign trajectory",
                ));
            }
            visited[idx] = true;
            size += 1;
            cur = next;
        }
        *by_size.entry(size).or_insert(0) += 1;
    }

    let mut odd = BigInt::zero();
    let mut even = BigInt::zero();
    for (size, count) in &by_size {
        if size % 2 == 1 {
            odd += BigInt::from(*count);
        } else {
            even += BigInt::from(*count);
        }
    }
    Ok(OrbitStats {
        by_size,
        nu_odd: Some(crate::ExtNat::finite(odd)),
        nu_even: Some(crate::ExtNat::finite(even)),
        nu_inf: Some(crate::ExtNat::zero()),
    })
}

/// Outcome of running both orbit pipelines on one instance.
#[derive(Debug, Clone)]
pub struct OrbitComparison {
    pub primary: OrbitStats,
    pub brute: OrbitStats,
    pub matches: bool,
}

/// Run the Smith-coordinate enumeration and the parallelepiped oracle on the
/// same instance and compare the orbit size multisets.
pub fn verify_instance(inst: &ProblemInstance, cap: u64) -> Result<OrbitComparison> {
    let pres = orbits::cokernel(inst.linear());
    if pres.free_rank() > 0 {
        return Err(Error::InfiniteGroup);
    }
    let act = orbits::action(inst, inst.shift(), &pres)?;
    let primary = orbits::enumerate_torsion_orbits(&act, cap)?;
    let brute = brute_orbits(inst.target().gluing(), inst.linear(), inst.shift(), cap)?;
    let matches = primary.by_size == brute.by_size;
    Ok(OrbitComparison {
        primary,
        brute,
        matches,
    })
}

/// Smith divisors recomputed from gcds of minors: `d_k = g_k / g_{k-1}` with
/// `g_k` the gcd of all `k x k` minors (divisors listed up to the rank).
pub fn minors_snf_check(a: &IntMatrix) -> Result<Vec<BigInt>> {
    let (n, m) = (a.rows(), a.cols());
    if n > MINORS_DIM_CAP || m > MINORS_DIM_CAP {
        return Err(Error::TooLarge {
            order: BigInt::from(n.max(m)),
            cap: MINORS_DIM_CAP as u64,
        });
    }
    let mut divisors = Vec::new();
    let mut g_prev = BigInt::one();
    for k in 1..=n.min(m) {
        let mut g = BigInt::zero();
        for rows in combinations(n, k) {
            for cols in combinations(m, k) {
                let sub = IntMatrix::from_fn(k, k, |i, j| a.get(rows[i], cols[j]).clone());
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(&g / &g_prev);
        g_prev = g;
    }
    Ok(divisors)
}

// All k-element subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// One line of the Gauss-integer sweep: multiplication by `k + il` on the
/// square torus bundle glued by the 90 degree rotation.
#[derive(Debug, Clone)]
pub struct GaussRow {
    pub k: i64,
    pub l: i64,
    /// Whether `v1 + v2` is even (the sweep uses v = (0,0) resp. (1,0)).
    pub parity_even: bool,
    /// `(nu_1, nu_2, nu_4, total)` from enumeration; `None` when `k = l = 0`.
    pub enumerated: Option<(u64, u64, u64, u64)>,
    pub expected: Option<(u64, u64, u64, u64)>,
    pub mcc: BigInt,
    pub expected_mcc: BigInt,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct GaussTable {
    pub rows: Vec<GaussRow>,
    pub mismatches: usize,
}

// Closed-form orbit counts (nu_1, nu_2, nu_4, total) for |G| = s > 0.
fn gauss_closed_form(s: u64, parity_even: bool) -> (u64, u64, u64, u64) {
    let q = s / 4;
    match (s % 4, parity_even) {
        (0, true) => (2, 1, q - 1, q + 2),
        (0, false) => (0, 0, q, q),
        (1, _) => (1, 0, q, q + 1),
        (2, true) => (2, 0, q, q + 2),
        (2, false) => (0, 1, q, q + 1),
        _ => unreachable!("a sum of two squares is never 3 mod 4"),
    }
}

fn gauss_closed_form_mcc(s: u64, parity_even: bool) -> u64 {
    if s == 0 {
        0
    } else if s.is_multiple_of(4) && !parity_even {
        s / 4
    } else if s.is_multiple_of(2) && parity_even {
        s / 4 + 2
    } else {
        s / 4 + 1
    }
}

/// Build the Gauss instance: rotation gluings, `L` = multiplication by
/// `k + il`, shift `v`.
pub fn gauss_instance(k: i64, l: i64, v: &[i64]) -> ProblemInstance {
    let rot = IntMatrix::from_rows(&[alloc::vec![0, -1], alloc::vec![1, 0]]);
    make_instance(
        BaseSpace::Circle,
        rot.clone(),
        rot,
        IntMatrix::from_rows(&[alloc::vec![k, -l], alloc::vec![l, k]]),
        intlat::vec_i64(v),
    )
    .expect("rotation commutes with complex multiplication")
}

/// Sweep every `(k, l)` with `k^2 + l^2 <= 4 * q_max` and both shift
/// parities; enumerate the orbits, compute the minimum numbers, and compare
/// both against the closed forms. Mismatches are collected, not thrown.
pub fn gauss_table(q_max: u64) -> Result<GaussTable> {
    if q_max == 0 {
        return Err(Error::Unsupported("the sweep needs q_max >= 1"));
    }
    let s_max = 4 * q_max;
    let reach = s_max.isqrt() as i64;
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    for k in -reach..=reach {
        for l in -reach..=reach {
            let s = (k * k + l * l) as u64;
            if s > s_max {
                continue;
            }
            for parity_even in [true, false] {
                let v = if parity_even { [0, 0] } else { [1, 0] };
                let inst = gauss_instance(k, l, &v);
                let report = nielsen::nielsen_circle(&inst, crate::DEFAULT_ENUMERATION_CAP)?;
                let mcc = report.mcc.clone();
                let expected_mcc = BigInt::from(gauss_closed_form_mcc(s, parity_even));
                let (enumerated, expected, clean) = if s == 0 {
                    (None, None, true)
                } else {
                    let take = |size: u64| report.stats.by_size.get(&size).copied().unwrap_or(0);
                    let total: u64 = report.stats.by_size.values().sum();
                    // only orbit sizes 1, 2 and 4 may occur in this family
                    let stray = report
                        .stats
                        .by_size
                        .keys()
                        .any(|&sz| sz != 1 && sz != 2 && sz != 4);
                    let got = (take(1), take(2), take(4), total);
                    (Some(got), Some(gauss_closed_form(s, parity_even)), !stray)
                };
                let ok = clean && enumerated == expected && mcc == expected_mcc;
                if !ok {
                    mismatches += 1;
                }
                rows.push(GaussRow {
                    k,
                    l,
                    parity_even,
                    enumerated,
                    expected,
                    mcc,
                    expected_mcc,
                    ok,
                });
            }
        }
    }
    Ok(GaussTable { rows, mismatches })
}

/// A random element of `GL(n, Z)` as a word of at most `word_len` elementary
/// column operations (transvections, swaps, sign flips).
pub fn random_gluing<R: Rng + ?Sized>(rng: &mut R, n: usize, word_len: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 0 {
        return m;
    }
    let steps = rng.gen_range(0..=word_len);
    for _ in 0..steps {
        match rng.gen_range(0..4) {
            0 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let f = if rng.gen_bool(0.5) {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                m.col_add_mul(i, j, &f);
            }
            1 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                m.swap_cols(i, j);
            }
            _ => {
                let i = rng.gen_range(0..n);
                m.negate_col(i);
            }
        }
    }
    debug_assert_eq!(m.abs_det().unwrap(), BigInt::one());
    m
}

/// Basis matrices of the intertwiner lattice `{L : A_N L = L A_M}`, obtained
/// as the kernel lattice of the linearized equation on `vec(L)`.
pub fn commutant_basis(a_m: &IntMatrix, a_n: &IntMatrix) -> Vec<IntMatrix> {
    let m = a_m.rows();
    let n = a_n.rows();
    let dim = n * m;
    // vec stacks columns: entry (i, j) of L sits at index j * n + i
    let mut c = IntMatrix::zero(dim, dim);
    for i in 0..n {
        for j in 0..m {
            let row = j * n + i;
            for k in 0..n {
                let t = c.get(row, j * n + k) + a_n.get(i, k);
                c.set(row, j * n + k, t);
            }
            for k in 0..m {
                let t = c.get(row, k * n + i) - a_m.get(k, j);
                c.set(row, k * n + i, t);
            }
        }
    }
    let kernel = kernel_lattice(&c);
    (0..kernel.rank())
        .map(|b| {
            let col = kernel.column(b);
            IntMatrix::from_fn(n, m, |i, j| col[j * n + i].clone())
        })
        .collect()
}

/// Bounds for random instance generation.
#[derive(Debug, Clone)]
pub struct SampleOptions {
    pub max_source_dim: usize,
    pub max_target_dim: usize,
    /// Reject linear parts with an entry exceeding this bound.
    pub entry_bound: i64,
    /// Range of the coefficients combining the commutant basis.
    pub coeff_bound: i64,
    pub shift_bound: i64,
    pub word_len: usize,
    /// Demand a finite cokernel (full-rank linear part).
    pub require_finite: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            max_source_dim: 4,
            max_target_dim: 3,
            entry_bound: 5,
            coeff_bound: 2,
            shift_bound: 5,
            word_len: 6,
            require_finite: true,
        }
    }
}

/// A random valid instance over the circle: the target gluing is a random
/// word, the source gluing extends it blockwise (conjugated by another short
/// word) so that the intertwiner lattice is never trivial, and the linear
/// part is a random lattice point of that commutant.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, opts: &SampleOptions) -> ProblemInstance {
    loop {
        let n = rng.gen_range(1..=opts.max_target_dim);
        let m = if opts.require_finite {
            rng.gen_range(n..=opts.max_source_dim.max(n))
        } else {
            rng.gen_range(1..=opts.max_source_dim)
        };
        let a_n = random_gluing(rng, n, opts.word_len);
        let a_m = if m >= n {
            // block extension keeps the commutant nontrivial
            let extra = random_gluing(rng, m - n, opts.word_len);
            let block = IntMatrix::from_fn(m, m, |i, j| {
                if i < n && j < n {
                    a_n.get(i, j).clone()
                } else if i >= n && j >= n {
                    extra.get(i - n, j - n).clone()
                } else {
                    BigInt::zero()
                }
            });
            let w = random_gluing(rng, m, 2);
            let w_inv = intlat::unimodular_inverse(&w).expect("word of elementary ops");
            w.mul(&block).mul(&w_inv)
        } else {
            random_gluing(rng, m, opts.word_len)
        };
        let basis = commutant_basis(&a_m, &a_n);
        if basis.is_empty() {
            continue;
        }
        let mut l = IntMatrix::zero(n, m);
        for b in &basis {
            let c = BigInt::from(rng.gen_range(-opts.coeff_bound..=opts.coeff_bound));
            if c.is_zero() {
                continue;
            }
            l = l.add(&IntMatrix::from_fn(n, m, |i, j| b.get(i, j) * &c));
        }
        let bound = BigInt::from(opts.entry_bound);
        let too_big = (0..n).any(|i| (0..m).any(|j| l.get(i, j).abs() > bound));
        if too_big {
            continue;
        }
        if opts.require_finite && image_lattice(&l).rank() < n {
            continue;
        }
        let v: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-opts.shift_bound..=opts.shift_bound)))
            .collect();
        if let Ok(inst) = make_instance(BaseSpace::Circle, a_m, a_n, l, v) {
            return inst;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::vec_i64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn brute_orbits_on_the_trivial_group() {
        let stats = brute_orbits(
            &IntMatrix::identity(2),
            &IntMatrix::identity(2),
            &vec_i64(&[0, 0]),
            100,
        )
        .unwrap();
        assert_eq!(stats.by_size.get(&1), Some(&1));
    }

    #[test]
    fn brute_orbits_gauss_two_zero() {
        let rot = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        let l = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let stats = brute_orbits(&rot, &l, &vec_i64(&[0, 0]), 100).unwrap();
        assert_eq!(stats.by_size.get(&1), Some(&2));
        assert_eq!(stats.by_size.get(&2), Some(&1));
    }

    #[test]
    fn brute_orbits_rejects_infinite_quotients() {
        let err = brute_orbits(
            &IntMatrix::identity(2),
            &IntMatrix::zero(2, 2),
            &vec_i64(&[0, 0]),
            100,
        )
        .unwrap_err();
        assert_eq!(err, Error::InfiniteGroup);
    }

    #[test]
    fn pipelines_agree_on_seeded_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let opts = SampleOptions::default();
        for _ in 0..60 {
            let inst = random_instance(&mut rng, &opts);
            let cmp = verify_instance(&inst, 1_000_000).unwrap();
            assert!(
                cmp.matches,
                "pipelines disagree on L = {}, A_N = {}, v = {:?}",
                inst.linear(),
                inst.target().gluing(),
                inst.shift()
            );
        }
    }

    #[test]
    fn a_corrupted_comparison_is_detected() {
        // negative control: doctor one multiset entry and expect a mismatch
        let inst = gauss_instance(2, 0, &[0, 0]);
        let mut cmp = verify_instance(&inst, 100).unwrap();
        assert!(cmp.matches);
        *cmp.brute.by_size.entry(1).or_insert(0) += 1;
        assert_ne!(cmp.primary.by_size, cmp.brute.by_size);
    }

    #[test]
    fn minors_examples() {
        assert_eq!(
            minors_snf_check(&IntMatrix::identity(3)).unwrap(),
            vec_i64(&[1, 1, 1])
        );
        assert_eq!(
            minors_snf_check(&IntMatrix::from_rows(&[vec![1, -1], vec![1, 1]])).unwrap(),
            vec_i64(&[1, 2])
        );
        assert!(minors_snf_check(&IntMatrix::zero(2, 2)).unwrap().is_empty());
        assert!(matches!(
            minors_snf_check(&IntMatrix::zero(7, 2)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn minors_agree_with_smith_divisors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let r = rng.gen_range(1..=4usize);
            let c = rng.gen_range(1..=4usize);
            let a = IntMatrix::from_fn(r, c, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            let divisors = minors_snf_check(&a).unwrap();
            let d = crate::intlat::snf(&a);
            let nonzero: Vec<BigInt> = d.diag().iter().filter(|x| !x.is_zero()).cloned().collect();
            assert_eq!(divisors, nonzero, "matrix {a}");
        }
    }

    #[test]
    fn gauss_table_small_sweep_is_clean() {
        let table = gauss_table(2).unwrap();
        assert_eq!(table.mismatches, 0);
        // q_max = 1 contains the (k^2+l^2 = 4, even) row with counts 2,1,0; 3
        let row = table
            .rows
            .iter()
            .find(|r| r.k == 2 && r.l == 0 && r.parity_even)
            .unwrap();
        assert_eq!(row.enumerated, Some((2, 1, 0, 3)));
        assert_eq!(row.mcc, BigInt::from(3));
        // and the (k^2+l^2 = 2, even) row with counts 2,0,0; 2
        let row = table
            .rows
            .iter()
            .find(|r| r.k == 1 && r.l == 1 && r.parity_even)
            .unwrap();
        assert_eq!(row.enumerated, Some((2, 0, 0, 2)));
        assert_eq!(row.mcc, BigInt::from(2));
        // the origin row only carries the minimum number
        let row = table
            .rows
            .iter()
            .find(|r| r.k == 0 && r.l == 0 && r.parity_even)
            .unwrap();
        assert_eq!(row.enumerated, None);
        assert!(row.mcc.is_zero());
        assert!(row.ok);
    }

    #[test]
    fn gauss_table_rejects_zero_qmax() {
        assert!(matches!(gauss_table(0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn random_gluings_are_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4usize {
            for _ in 0..20 {
                let g = random_gluing(&mut rng, n, 6);
                assert_eq!(g.abs_det().unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn commutant_contains_polynomials_of_the_gluing() {
        let rot = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        let basis = commutant_basis(&rot, &rot);
        // complex-linear maps form a rank-2 lattice
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert_eq!(rot.mul(b), b.mul(&rot));
        }
    }
}
