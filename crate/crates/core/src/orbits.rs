//! The Reidemeister group `G = Z^n / L(Z^m)` in Smith coordinates, the affine
//! action `u -> A_N(u - v)` induced on it, and orbit counting.
//!
//! Orbits of this action are the Reidemeister classes over the circle. The
//! signature `(nu_odd, nu_even, nu_inf)` counts orbits of odd, even and
//! infinite cardinality; downstream the Nielsen number is read off from it.
//! Finite groups are enumerated outright. Infinite groups are handled by the
//! structure of the case at hand: the corank-one cases restrict the action to
//! the finite torsion quotient `K' = (Z^n ∩ L(R^m)) / L(Z^m)`, and the
//! deeper-corank case falls back to translation/involution/finite-order
//! analysis of the linear part, reporting incomplete statistics rather than a
//! wrong count whenever none of those certificates applies.

use crate::bundle::{circle_case_data, representative_in_image_span, ProblemInstance};
use crate::extnat::ExtNat;
use crate::intlat::{self, image_lattice, kernel_lattice, snf, IntMatrix, LatticeBasis};
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// How many powers of the linear part are probed for a finite order
/// certificate in the rank-deficient circle case.
const FINITE_ORDER_PROBE: u32 = 60;

/// A finitely generated abelian group `Z^k / Λ` in Smith coordinates:
/// cyclic factors `Z_{d_i}` with `2 <= d_1 | d_2 | ...`, plus a free part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelPresentation {
    ambient_dim: usize,
    divisors: Vec<BigInt>,
    free_rank: usize,
    to_coords: IntMatrix,
    from_coords: IntMatrix,
    relations: LatticeBasis,
}

/// An element of the presented group: one residue in `[0, d_i)` per torsion
/// factor followed by the free integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

/// Present the cokernel `Z^rows(L) / L(Z^cols(L))`.
pub fn cokernel(l: &IntMatrix) -> CokernelPresentation {
    let n = l.rows();
    let d = snf(l);
    let mut kept: Vec<usize> = Vec::new();
    let mut divisors: Vec<BigInt> = Vec::new();
    let mut free_rows: Vec<usize> = Vec::new();
    for i in 0..n {
        let di = if i < d.diag().len() {
            d.diag()[i].clone()
        } else {
            BigInt::zero()
        };
        if di.is_zero() {
            free_rows.push(i);
        } else if !di.is_one() {
            kept.push(i);
            divisors.push(di);
        }
    }
    let free_rank = free_rows.len();
    kept.extend(free_rows);
    CokernelPresentation {
        ambient_dim: n,
        divisors,
        free_rank,
        to_coords: d.u().select_rows(&kept),
        from_coords: d.u_inv().select_cols(&kept),
        relations: image_lattice(l),
    }
}

impl CokernelPresentation {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The cyclic torsion factors, each at least 2, in a divisibility chain.
    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn torsion_count(&self) -> usize {
        self.divisors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of presentation coordinates (torsion then free).
    pub fn coord_count(&self) -> usize {
        self.divisors.len() + self.free_rank
    }

    /// Group order: the product of the divisors, or infinity.
    pub fn order(&self) -> ExtNat {
        if self.free_rank > 0 {
            ExtNat::Infinity
        } else {
            ExtNat::finite(self.torsion_order())
        }
    }

    /// Product of the divisors (1 for the trivial group), ignoring free rank.
    pub fn torsion_order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn relations(&self) -> &LatticeBasis {
        &self.relations
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: alloc::vec![BigInt::zero(); self.coord_count()],
        }
    }

    /// Reduce raw presentation coordinates into canonical range.
    pub fn reduce(&self, mut coords: Vec<BigInt>) -> GroupElement {
        assert_eq!(coords.len(), self.coord_count(), "coordinate count");
        for (i, d) in self.divisors.iter().enumerate() {
            coords[i] = coords[i].mod_floor(d);
        }
        GroupElement { coords }
    }

    /// The class of an ambient vector.
    pub fn project(&self, u: &[BigInt]) -> GroupElement {
        self.reduce(self.to_coords.mul_vec(u))
    }

    /// A representative in the ambient lattice of a class.
    pub fn lift(&self, g: &GroupElement) -> Vec<BigInt> {
        self.from_coords.mul_vec(g.coords())
    }

    /// In-class equality of two ambient vectors.
    pub fn same_class(&self, u: &[BigInt], w: &[BigInt]) -> bool {
        self.project(u) == self.project(w)
    }
}

/// The affine selfmap `[u] -> [T(u - v)]` of a presented group, stored in
/// presentation coordinates: `x -> linear * x + shift`.
#[derive(Debug, Clone)]
pub struct AffineAction {
    linear: IntMatrix,
    shift: Vec<BigInt>,
    pres: CokernelPresentation,
}

/// The Reidemeister action of the base circle: `[u] -> [A_N(u - v)]` on the
/// cokernel presentation of the instance's linear part.
///
/// The shift vector is passed separately so translated shifts can be compared
/// (the orbit behavior depends on `v` only modulo `L(Z^m) + (A_N - id)(Z^n)`).
pub fn action(
    inst: &ProblemInstance,
    v: &[BigInt],
    pres: &CokernelPresentation,
) -> Result<AffineAction> {
    if pres.ambient_dim() != inst.n() || v.len() != inst.n() {
        return Err(Error::DimMismatch(alloc::format!(
            "action needs ambient dimension {}",
            inst.n()
        )));
    }
    AffineAction::from_parts(pres.clone(), inst.target().gluing(), v)
}

impl AffineAction {
    /// Build the action `[u] -> [T(u - v)]` for an ambient automorphism `T`
    /// that preserves the relation lattice (checked; `NotInvariant` if not).
    pub fn from_parts(
        pres: CokernelPresentation,
        transform: &IntMatrix,
        base_point: &[BigInt],
    ) -> Result<Self> {
        let n = pres.ambient_dim();
        assert_eq!(transform.rows(), n);
        assert_eq!(transform.cols(), n);
        assert_eq!(base_point.len(), n);
        for j in 0..pres.relations().rank() {
            let moved = transform.mul_vec(&pres.relations().column(j));
            if !pres.relations().contains(&moved) {
                return Err(Error::NotInvariant);
            }
        }
        let composed = pres.to_coords.mul(transform).mul(&pres.from_coords);
        let linear = reduce_matrix_rows(&pres, composed);
        // Invariance forces the free rows to ignore torsion coordinates;
        // otherwise the induced map would depend on representatives.
        debug_assert!((pres.torsion_count()..pres.coord_count())
            .all(|i| (0..pres.torsion_count()).all(|j| linear.get(i, j).is_zero())));
        let minus_tv = intlat::vec_neg(&transform.mul_vec(base_point));
        let shift = pres.project(&minus_tv).coords;
        Ok(AffineAction {
            linear,
            shift,
            pres,
        })
    }

    pub fn presentation(&self) -> &CokernelPresentation {
        &self.pres
    }

    /// Linear part in presentation coordinates.
    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    /// Shift in presentation coordinates (the class of `-T v`).
    pub fn shift(&self) -> &[BigInt] {
        &self.shift
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let mut coords = self.linear.mul_vec(g.coords());
        for (c, s) in coords.iter_mut().zip(&self.shift) {
            *c += s;
        }
        self.pres.reduce(coords)
    }

    /// Does the linear part act as the identity on the group?
    fn linear_is_identity(&self) -> bool {
        matrix_acts_as_identity(&self.pres, &self.linear)
    }

    /// Smallest exponent `1 <= k <= probe` with `linear^k = id` on the group.
    fn linear_finite_order(&self, probe: u32) -> Option<u32> {
        let mut power = self.linear.clone();
        for k in 1..=probe {
            if matrix_acts_as_identity(&self.pres, &power) {
                return Some(k);
            }
            power = reduce_matrix_rows(&self.pres, power.mul(&self.linear));
        }
        None
    }
}

// Reduce each torsion row of a presentation-coordinate matrix modulo its
// divisor; the action on the group is unchanged.
fn reduce_matrix_rows(pres: &CokernelPresentation, mut m: IntMatrix) -> IntMatrix {
    for (i, d) in pres.divisors.iter().enumerate() {
        for j in 0..m.cols() {
            let t = m.get(i, j).mod_floor(d);
            m.set(i, j, t);
        }
    }
    m
}

// Does the matrix act as the identity on the presented group? Checked on the
// generators: column j must equal e_j modulo the row divisors.
fn matrix_acts_as_identity(pres: &CokernelPresentation, m: &IntMatrix) -> bool {
    let k = pres.coord_count();
    for i in 0..k {
        for j in 0..k {
            let expect = if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            let diff = m.get(i, j) - expect;
            let ok = if i < pres.torsion_count() {
                diff.mod_floor(&pres.divisors[i]).is_zero()
            } else {
                diff.is_zero()
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

// Order of a group element: infinite if a free coordinate is nonzero, else
// the lcm of d_i / gcd(d_i, x_i) over the torsion coordinates.
fn element_order(pres: &CokernelPresentation, g: &GroupElement) -> ExtNat {
    let t = pres.torsion_count();
    if g.coords()[t..].iter().any(|x| !x.is_zero()) {
        return ExtNat::Infinity;
    }
    let mut order = BigInt::one();
    for (x, d) in g.coords()[..t].iter().zip(&pres.divisors) {
        let step = d / x.gcd(d);
        order = order.lcm(&step);
    }
    ExtNat::finite(order)
}

/// Orbit counts of the Z-action generated by an affine selfmap.
///
/// `by_size` is populated only by full finite enumerations; the three
/// signature counts are `None` whenever they could not be determined (they
/// are never reported wrongly). Statistics are complete when all three are
/// present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStats {
    /// Orbit cardinality -> number of orbits of that cardinality.
    pub by_size: BTreeMap<u64, u64>,
    pub nu_odd: Option<ExtNat>,
    pub nu_even: Option<ExtNat>,
    pub nu_inf: Option<ExtNat>,
}

impl OrbitStats {
    pub fn signature(nu_odd: ExtNat, nu_even: ExtNat, nu_inf: ExtNat) -> Self {
        OrbitStats {
            by_size: BTreeMap::new(),
            nu_odd: Some(nu_odd),
            nu_even: Some(nu_even),
            nu_inf: Some(nu_inf),
        }
    }

    pub fn undetermined() -> Self {
        OrbitStats {
            by_size: BTreeMap::new(),
            nu_odd: None,
            nu_even: None,
            nu_inf: None,
        }
    }

    /// All three signature counts are determined.
    pub fn is_complete(&self) -> bool {
        self.nu_odd.is_some() && self.nu_even.is_some() && self.nu_inf.is_some()
    }

    /// Total number of orbits, when complete.
    pub fn total_orbits(&self) -> Option<ExtNat> {
        Some(
            self.nu_odd
                .as_ref()?
                .add(self.nu_even.as_ref()?)
                .add(self.nu_inf.as_ref()?),
        )
    }

    /// Total of the elements covered by `by_size`.
    pub fn enumerated_elements(&self) -> BigInt {
        self.by_size
            .iter()
            .map(|(size, count)| BigInt::from(*size) * BigInt::from(*count))
            .sum()
    }
}

/// Enumerate all orbits of the action on a finite group.
///
/// Requires a trivial free part and torsion order at most `cap`. Start
/// elements are scanned in lexicographic coordinate order, so every orbit is
/// first entered at its least element. The walk doubles as a bijectivity
/// check: a trajectory reentering anywhere other than its start would expose
/// a non-invertible action.
pub fn enumerate_torsion_orbits(act: &AffineAction, cap: u64) -> Result<OrbitStats> {
    let pres = act.presentation();
    if pres.free_rank() != 0 {
        return Err(Error::InfiniteGroup);
    }
    let order_big = pres.torsion_order();
    let Some(order) = order_big.to_u64().filter(|&o| o <= cap) else {
        return Err(Error::TooLarge {
            order: order_big,
            cap,
        });
    };

    let t = pres.torsion_count();
    let dims: Vec<u64> = pres
        .divisors
        .iter()
        .map(|d| d.to_u64().expect("divisor bounded by order"))
        .collect();
    let linear: Vec<Vec<u64>> = (0..t)
        .map(|i| {
            (0..t)
                .map(|j| {
                    act.linear
                        .get(i, j)
                        .mod_floor(&pres.divisors[i])
                        .to_u64()
                        .expect("reduced entry fits")
                })
                .collect()
        })
        .collect();
    let shift: Vec<u64> = (0..t)
        .map(|i| {
            act.shift[i]
                .mod_floor(&pres.divisors[i])
                .to_u64()
                .expect("reduced entry fits")
        })
        .collect();

    let decode = |mut idx: u64, digits: &mut [u64]| {
        for (k, d) in dims.iter().enumerate() {
            digits[k] = idx % d;
            idx /= d;
        }
    };
    let encode = |digits: &[u64]| -> u64 {
        let mut idx = 0u64;
        for (k, d) in dims.iter().enumerate().rev() {
            idx = idx * d + digits[k];
        }
        idx
    };
    let step = |digits: &[u64], out: &mut [u64]| {
        for i in 0..t {
            let mut acc: u128 = shift[i] as u128;
            for j in 0..t {
                acc += linear[i][j] as u128 * digits[j] as u128;
            }
            out[i] = (acc % dims[i] as u128) as u64;
        }
    };

    let mut visited = alloc::vec![false; order as usize];
    let mut by_size: BTreeMap<u64, u64> = BTreeMap::new();
    let mut cur = alloc::vec![0u64; t];
    let mut next = alloc::vec![0u64; t];
    for start in 0..order {
        if visited[start as usize] {
            continue;
        }
        visited[start as usize] = true;
        decode(start, &mut cur);
        let mut size = 1u64;
        loop {
            step(&cur, &mut next);
            let idx = encode(&next);
            if idx == start {
                break;
            }
            if visited[idx as usize] {
                return Err(Error::InternalInconsistency(
                    "orbit walk reentered a foreign trajectory; action not bijective",
                ));
            }
            visited[idx as usize] = true;
            size += 1;
            core::mem::swap(&mut cur, &mut next);
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
        nu_odd: Some(ExtNat::finite(odd)),
        nu_even: Some(ExtNat::finite(even)),
        nu_inf: Some(ExtNat::zero()),
    })
}

/// The action restricted to the finite torsion quotient
/// `K' = (Z^n ∩ L(R^m)) / L(Z^m)`, in saturation coordinates.
///
/// Needs a corank-one image and a shift representative inside the span of the
/// saturation; following the sign `a` this exists iff `v2` is even (`a = -1`)
/// or zero (`a = +1`), otherwise `NotFound` propagates.
pub fn restricted_action_on_k_prime(
    inst: &ProblemInstance,
) -> Result<(AffineAction, CokernelPresentation)> {
    let data = circle_case_data(inst)?;
    if data.rank + 1 != inst.n() {
        return Err(Error::Unsupported(
            "the restricted action needs a corank-one image",
        ));
    }
    let rep = representative_in_image_span(inst)?;
    k_prime_action(inst, &data.sat, &rep)
}

// Build the K' action from a shift representative that lies in sat.
fn k_prime_action(
    inst: &ProblemInstance,
    sat: &LatticeBasis,
    rep: &[BigInt],
) -> Result<(AffineAction, CokernelPresentation)> {
    let r = sat.rank();
    let image = inst.image();
    let in_sat = |v: &[BigInt]| -> Result<Vec<BigInt>> {
        sat.coordinates_of(v).ok_or(Error::InternalInconsistency(
            "vector escapes the saturation",
        ))
    };
    // image expressed in sat coordinates; its cokernel is K'
    let image_cols: Vec<Vec<BigInt>> = (0..image.rank())
        .map(|j| in_sat(&image.column(j)))
        .collect::<Result<_>>()?;
    let x = IntMatrix::from_cols(r, &image_cols);
    let kpres = cokernel(&x);
    // the gluing restricted to sat coordinates
    let t_cols: Vec<Vec<BigInt>> = (0..r)
        .map(|j| in_sat(&inst.target().gluing().mul_vec(&sat.column(j))))
        .collect::<Result<_>>()?;
    let t_sat = IntMatrix::from_cols(r, &t_cols);
    let v_sat = in_sat(rep)?;
    let act = AffineAction::from_parts(kpres.clone(), &t_sat, &v_sat)?;
    Ok((act, kpres))
}

/// Orbit signature of the Reidemeister action over the circle, by case.
///
/// * full rank: direct enumeration (all orbits finite);
/// * corank one, `a = +1`, `v2 != 0`: no finite orbits, `nu_inf` equals the
///   padded determinant;
/// * corank one, `a = +1`, `v2 = 0`: the action preserves each level
///   `K' x {i}` and level patterns repeat with period `#K'`, so the finitely
///   many levels are enumerated and any odd (even) orbit found makes
///   `nu_odd` (`nu_even`) infinite;
/// * corank one, `a = -1`: infinitely many even orbits; odd orbits live on
///   `K'` and only exist for even `v2`;
/// * corank two or more: translation/involution/finite-order analysis of the
///   linear part; statistics may come back incomplete, never wrong.
pub fn circle_orbit_stats(inst: &ProblemInstance, cap: u64) -> Result<OrbitStats> {
    let n = inst.n();
    let data = circle_case_data(inst)?;
    if data.rank == n {
        let pres = cokernel(inst.linear());
        let act = action(inst, inst.shift(), &pres)?;
        return enumerate_torsion_orbits(&act, cap);
    }
    if data.rank + 1 == n {
        let comp = data
            .complement
            .as_ref()
            .expect("corank-one case data carries the complement");
        if comp.a == 1 {
            if !comp.v2.is_zero() {
                let padded = IntMatrix::from_cols(n, &[inst.shift().to_vec()])
                    .hstack(inst.image().basis_matrix());
                let count = padded.abs_det()?;
                return Ok(OrbitStats::signature(
                    ExtNat::zero(),
                    ExtNat::zero(),
                    ExtNat::finite(count),
                ));
            }
            return level_sweep(inst, &data.sat, &comp.y2, cap);
        }
        // a = -1: the complement levels pair off into even orbits
        if comp.v2.is_odd() {
            return Ok(OrbitStats::signature(
                ExtNat::zero(),
                ExtNat::Infinity,
                ExtNat::zero(),
            ));
        }
        let (act, _) = restricted_action_on_k_prime(inst)?;
        let kstats = enumerate_torsion_orbits(&act, cap)?;
        return Ok(OrbitStats::signature(
            kstats.nu_odd.expect("finite enumeration is complete"),
            ExtNat::Infinity,
            ExtNat::zero(),
        ));
    }
    rank_deficient_stats(inst, cap)
}

// Corank one, a = +1, v2 = 0: enumerate one period of levels K' x {i}.
fn level_sweep(
    inst: &ProblemInstance,
    sat: &LatticeBasis,
    y2: &[BigInt],
    cap: u64,
) -> Result<OrbitStats> {
    // v2 = 0 puts the shift inside sat itself
    let (base, kpres) = k_prime_action(inst, sat, inst.shift())?;
    let order_big = kpres.torsion_order();
    let levels = match order_big.to_u64() {
        Some(l) if l.checked_mul(l).is_some_and(|work| work <= cap) => l,
        _ => {
            return Err(Error::TooLarge {
                order: &order_big * &order_big,
                cap,
            })
        }
    };
    // kappa = class of A_N(y2) - y2 in K', the per-level twist of the shift
    let kappa_ambient = intlat::vec_sub(&inst.target().gluing().mul_vec(y2), y2);
    let kappa_sat = sat
        .coordinates_of(&kappa_ambient)
        .ok_or(Error::InternalInconsistency(
            "level twist escapes the saturation",
        ))?;
    let kappa = kpres.project(&kappa_sat);

    let mut any_odd = false;
    let mut any_even = false;
    let mut level_shift = base.shift().to_vec();
    for _level in 0..levels {
        let act = AffineAction {
            linear: base.linear.clone(),
            shift: kpres.reduce(level_shift.clone()).coords,
            pres: kpres.clone(),
        };
        let stats = enumerate_torsion_orbits(&act, cap)?;
        for size in stats.by_size.keys() {
            if size % 2 == 1 {
                any_odd = true;
            } else {
                any_even = true;
            }
        }
        if any_odd && any_even {
            break;
        }
        for (s, k) in level_shift.iter_mut().zip(kappa.coords()) {
            *s += k;
        }
    }
    let flag = |hit: bool| {
        if hit {
            ExtNat::Infinity
        } else {
            ExtNat::zero()
        }
    };
    Ok(OrbitStats::signature(
        flag(any_odd),
        flag(any_even),
        ExtNat::zero(),
    ))
}

// Rank at most n-2: the Nielsen data vanish, but the orbit signature (and so
// the Reidemeister count) is still determined whenever the linear part is a
// translation, an involution, or of certified finite order.
fn rank_deficient_stats(inst: &ProblemInstance, _cap: u64) -> Result<OrbitStats> {
    let pres = cokernel(inst.linear());
    debug_assert!(pres.free_rank() >= 2);
    let act = action(inst, inst.shift(), &pres)?;

    if act.linear_is_identity() {
        // pure translation: every orbit has the order of the shift
        let shift_elem = pres.reduce(act.shift().to_vec());
        return Ok(match element_order(&pres, &shift_elem) {
            ExtNat::Infinity => {
                OrbitStats::signature(ExtNat::zero(), ExtNat::zero(), ExtNat::Infinity)
            }
            ExtNat::Finite(e) if e.is_odd() => {
                OrbitStats::signature(ExtNat::Infinity, ExtNat::zero(), ExtNat::zero())
            }
            ExtNat::Finite(_) => {
                OrbitStats::signature(ExtNat::zero(), ExtNat::Infinity, ExtNat::zero())
            }
        });
    }

    let square = reduce_matrix_rows(&pres, act.linear.mul(&act.linear));
    if matrix_acts_as_identity(&pres, &square) {
        // involution: the odd orbits are exactly the fixed classes
        let fixed = fixed_class_count(&act)?;
        return Ok(OrbitStats::signature(
            fixed,
            ExtNat::Infinity,
            ExtNat::zero(),
        ));
    }

    if let Some(k) = act.linear_finite_order(FINITE_ORDER_PROBE) {
        // beta^k is the translation by beta^k(0)
        let mut d = pres.zero();
        for _ in 0..k {
            d = act.apply(&d);
        }
        if element_order(&pres, &d) == ExtNat::Infinity {
            return Ok(OrbitStats::signature(
                ExtNat::zero(),
                ExtNat::zero(),
                ExtNat::Infinity,
            ));
        }
        // all orbits finite, so there are infinitely many, but the odd/even
        // split is not determined by this certificate
        return Ok(OrbitStats {
            by_size: BTreeMap::new(),
            nu_odd: None,
            nu_even: None,
            nu_inf: Some(ExtNat::zero()),
        });
    }

    Ok(OrbitStats::undetermined())
}

// Number of fixed classes of an affine involution: solutions of
// (linear - id) x = shift in the presented group.
fn fixed_class_count(act: &AffineAction) -> Result<ExtNat> {
    let pres = act.presentation();
    let k = pres.coord_count();
    let t = pres.torsion_count();
    let lin_minus_id = act.linear.sub(&IntMatrix::identity(k));
    // relation columns d_i e_i of the presentation coordinate space
    let relation_cols = IntMatrix::from_fn(k, t, |i, j| {
        if i == j {
            pres.divisors[j].clone()
        } else {
            BigInt::zero()
        }
    });
    let system = lin_minus_id.hstack(&relation_cols);
    if intlat::solve(&system, act.shift()).is_none() {
        return Ok(ExtNat::zero());
    }
    // fixed set = coset of ker(linear - id) on the group; its size is the
    // index of the relation lattice in the kernel preimage lattice
    let ker = kernel_lattice(&system);
    let projected_gens =
        IntMatrix::from_fn(k, ker.rank(), |i, j| ker.basis_matrix().get(i, j).clone());
    let kernel_preimage = image_lattice(&projected_gens.hstack(&relation_cols));
    if kernel_preimage.rank() > t {
        return Ok(ExtNat::Infinity);
    }
    let expr_cols: Vec<Vec<BigInt>> = (0..t)
        .map(|j| {
            kernel_preimage.coordinates_of(&relation_cols.col(j)).ok_or(
                Error::InternalInconsistency("relations escape the kernel preimage"),
            )
        })
        .collect::<Result<_>>()?;
    let expr = IntMatrix::from_cols(kernel_preimage.rank(), &expr_cols);
    Ok(ExtNat::finite(expr.abs_det()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{make_instance, BaseSpace};
    use crate::intlat::vec_i64;

    fn rot() -> IntMatrix {
        IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]])
    }

    fn gauss_instance(k: i64, l: i64, v: &[i64]) -> ProblemInstance {
        let mult = IntMatrix::from_rows(&[vec![k, -l], vec![l, k]]);
        make_instance(BaseSpace::Circle, rot(), rot(), mult, vec_i64(v)).unwrap()
    }

    fn neg_id_instance(n: usize, l: IntMatrix, v: &[i64]) -> ProblemInstance {
        let neg = IntMatrix::identity(n).neg();
        make_instance(BaseSpace::Circle, neg.clone(), neg, l, vec_i64(v)).unwrap()
    }

    #[test]
    fn cokernel_of_identity_is_trivial() {
        let p = cokernel(&IntMatrix::identity(3));
        assert!(p.divisors().is_empty());
        assert_eq!(p.free_rank(), 0);
        assert_eq!(p.order(), ExtNat::finite(1));
    }

    #[test]
    fn cokernel_of_gauss_has_two_elements() {
        let p = cokernel(&IntMatrix::from_rows(&[vec![1, -1], vec![1, 1]]));
        assert_eq!(p.divisors(), &vec_i64(&[2])[..]);
        assert_eq!(p.free_rank(), 0);
        assert_eq!(p.order(), ExtNat::finite(2));
    }

    #[test]
    fn cokernel_of_zero_is_free() {
        let p = cokernel(&IntMatrix::zero(3, 2));
        assert!(p.divisors().is_empty());
        assert_eq!(p.free_rank(), 3);
        assert_eq!(p.order(), ExtNat::Infinity);
    }

    #[test]
    fn project_lift_round_trip_lands_in_same_class() {
        let l = IntMatrix::from_rows(&[vec![2, 0], vec![0, 6]]);
        let p = cokernel(&l);
        for u in [
            vec_i64(&[5, 17]),
            vec_i64(&[-3, 2]),
            vec_i64(&[0, 0]),
            vec_i64(&[100, -41]),
        ] {
            let back = p.lift(&p.project(&u));
            let diff = intlat::vec_sub(&u, &back);
            assert!(
                p.relations().contains(&diff),
                "round trip differs by a relation"
            );
        }
    }

    #[test]
    fn trivial_action_is_identity() {
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(2),
            IntMatrix::identity(2),
            IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]),
            vec_i64(&[0, 0]),
        )
        .unwrap();
        let p = cokernel(inst.linear());
        let act = action(&inst, &vec_i64(&[0, 0]), &p).unwrap();
        for u in [vec_i64(&[1, 2]), vec_i64(&[0, 1]), vec_i64(&[1, 0])] {
            let g = p.project(&u);
            assert_eq!(act.apply(&g), g);
        }
    }

    #[test]
    fn gauss_action_matches_hand_iteration() {
        // k = l = 1: G has two elements, and beta = [i(u - (1,0))] swaps them
        let inst = gauss_instance(1, 1, &[1, 0]);
        let p = cokernel(inst.linear());
        let act = action(&inst, inst.shift(), &p).unwrap();
        let zero = p.project(&vec_i64(&[0, 0]));
        let one = p.project(&vec_i64(&[1, 0]));
        assert_ne!(zero, one);
        assert_eq!(act.apply(&zero), one);
        assert_eq!(act.apply(&one), zero);
    }

    #[test]
    fn enumerate_trivial_group() {
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(1),
            IntMatrix::identity(1),
            IntMatrix::identity(1),
            vec_i64(&[0]),
        )
        .unwrap();
        let p = cokernel(inst.linear());
        let act = action(&inst, inst.shift(), &p).unwrap();
        let stats = enumerate_torsion_orbits(&act, 100).unwrap();
        assert_eq!(stats.by_size.get(&1), Some(&1));
        assert_eq!(stats.total_orbits(), Some(ExtNat::finite(1)));
    }

    #[test]
    fn enumerate_gauss_two_zero() {
        // k=2, l=0, v=0: |G| = 4 with two fixed points and one 2-orbit
        let inst = gauss_instance(2, 0, &[0, 0]);
        let p = cokernel(inst.linear());
        let act = action(&inst, inst.shift(), &p).unwrap();
        let stats = enumerate_torsion_orbits(&act, 100).unwrap();
        assert_eq!(stats.by_size.get(&1), Some(&2));
        assert_eq!(stats.by_size.get(&2), Some(&1));
        assert_eq!(stats.by_size.get(&4), None);
        assert_eq!(stats.enumerated_elements(), BigInt::from(4));
    }

    #[test]
    fn enumerate_gauss_identity_map() {
        // k=1, l=0, v=(1,0): the group is trivial, one fixed point
        let inst = gauss_instance(1, 0, &[1, 0]);
        let p = cokernel(inst.linear());
        let act = action(&inst, inst.shift(), &p).unwrap();
        let stats = enumerate_torsion_orbits(&act, 100).unwrap();
        assert_eq!(stats.by_size.get(&1), Some(&1));
        assert_eq!(stats.total_orbits(), Some(ExtNat::finite(1)));
    }

    #[test]
    fn enumerate_respects_cap() {
        let inst = gauss_instance(10, 0, &[0, 0]);
        let p = cokernel(inst.linear());
        let act = action(&inst, inst.shift(), &p).unwrap();
        assert!(matches!(
            enumerate_torsion_orbits(&act, 10),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn klein_product_action_reduces_to_involution() {
        // diagonal odd entries: same orbit multiset as the bare involution -id
        let l = IntMatrix::from_rows(&[vec![3, 0], vec![0, 5]]);
        let inst = neg_id_instance(2, l.clone(), &[1, 0]);
        let p = cokernel(inst.linear());
        let with_shift = action(&inst, inst.shift(), &p).unwrap();
        let bare = action(&inst, &vec_i64(&[0, 0]), &p).unwrap();
        let s1 = enumerate_torsion_orbits(&with_shift, 1000).unwrap();
        let s2 = enumerate_torsion_orbits(&bare, 1000).unwrap();
        assert_eq!(s1.by_size, s2.by_size);
        assert_eq!(s1.by_size.get(&1), Some(&1));
        assert_eq!(s1.by_size.get(&2), Some(&7));
    }

    #[test]
    fn circle_stats_minus_id_rank_gate_example() {
        // A = -id, L = 0, v = 0 on n >= 2: one fixed class, infinitely many
        // 2-orbits, nothing infinite
        for n in [2usize, 3] {
            let inst = neg_id_instance(n, IntMatrix::zero(n, n), &vec![0; n]);
            let stats = circle_orbit_stats(&inst, 1000).unwrap();
            assert_eq!(stats.nu_odd, Some(ExtNat::finite(1)));
            assert_eq!(stats.nu_even, Some(ExtNat::Infinity));
            assert_eq!(stats.nu_inf, Some(ExtNat::zero()));
            assert!(stats.is_complete());
        }
    }

    #[test]
    fn circle_stats_klein_products() {
        let l = IntMatrix::from_rows(&[vec![3, 0], vec![0, 5]]);
        let inst = neg_id_instance(2, l, &[1, 1]);
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats.nu_odd, Some(ExtNat::finite(1)));
        assert_eq!(stats.nu_even, Some(ExtNat::finite(7)));
        assert_eq!(stats.nu_inf, Some(ExtNat::zero()));
    }

    #[test]
    fn circle_stats_corank_one_nonzero_v2() {
        // identity gluings, image = 2 e1, v = (1, 3): nu_inf = |det[(1,3),(2,0)]| = 6
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(1),
            IntMatrix::identity(2),
            IntMatrix::from_rows(&[vec![2], vec![0]]),
            vec_i64(&[1, 3]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats.nu_odd, Some(ExtNat::zero()));
        assert_eq!(stats.nu_even, Some(ExtNat::zero()));
        assert_eq!(stats.nu_inf, Some(ExtNat::finite(6)));
    }

    #[test]
    fn circle_stats_corank_one_zero_v2_level_sweep() {
        // v2 = 0 with identity gluing: each level is a translation of Z_2 by
        // the class of v = e1; odd or even orbits appear per that class
        let l = IntMatrix::from_rows(&[vec![2], vec![0]]);
        // v = (1, 0): translation by the generator of Z_2: one 2-orbit per level
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(1),
            IntMatrix::identity(2),
            l.clone(),
            vec_i64(&[1, 0]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats.nu_odd, Some(ExtNat::zero()));
        assert_eq!(stats.nu_even, Some(ExtNat::Infinity));
        assert_eq!(stats.nu_inf, Some(ExtNat::zero()));
        // v = 0: identity on each level: fixed points everywhere
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(1),
            IntMatrix::identity(2),
            l,
            vec_i64(&[0, 0]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats.nu_odd, Some(ExtNat::Infinity));
        assert_eq!(stats.nu_even, Some(ExtNat::zero()));
        assert_eq!(stats.nu_inf, Some(ExtNat::zero()));
    }

    #[test]
    fn circle_stats_corank_one_minus_odd_v2_has_no_odd_orbits() {
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::from_rows(&[vec![-1]]),
            IntMatrix::identity(2).neg(),
            IntMatrix::from_rows(&[vec![2], vec![0]]),
            vec_i64(&[0, 3]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats.nu_odd, Some(ExtNat::zero()));
        assert_eq!(stats.nu_even, Some(ExtNat::Infinity));
        assert_eq!(stats.nu_inf, Some(ExtNat::zero()));
    }

    #[test]
    fn restricted_action_on_trivial_k_prime_has_one_fixed_point() {
        // image already saturated: K' is trivial
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::from_rows(&[vec![-1]]),
            IntMatrix::identity(2).neg(),
            IntMatrix::from_rows(&[vec![1], vec![0]]),
            vec_i64(&[4, 2]),
        )
        .unwrap();
        let (act, kpres) = restricted_action_on_k_prime(&inst).unwrap();
        assert_eq!(kpres.order(), ExtNat::finite(1));
        let stats = enumerate_torsion_orbits(&act, 100).unwrap();
        assert_eq!(stats.by_size.get(&1), Some(&1));
    }

    #[test]
    fn restricted_action_is_negated_translation_on_cyclic_k_prime() {
        // A = -id on Z^2, image = q*e1 with q = 5, v = (2, 0):
        // beta|([k]) = [-(k - 2)] on Z_5 (det A = +1, so the restricted
        // multiplier is -det A = -1)
        let q = 5i64;
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::from_rows(&[vec![-1]]),
            IntMatrix::identity(2).neg(),
            IntMatrix::from_rows(&[vec![q], vec![0]]),
            vec_i64(&[2, 0]),
        )
        .unwrap();
        let (act, kpres) = restricted_action_on_k_prime(&inst).unwrap();
        assert_eq!(kpres.order(), ExtNat::finite(q));
        // iterate: k -> -(k - 2) mod 5 has fixed point k = 1 and two 2-orbits
        let stats = enumerate_torsion_orbits(&act, 100).unwrap();
        assert_eq!(stats.by_size.get(&1), Some(&1));
        assert_eq!(stats.by_size.get(&2), Some(&2));
    }

    #[test]
    fn restricted_action_needs_corank_one() {
        let inst = gauss_instance(1, 1, &[0, 0]);
        assert!(matches!(
            restricted_action_on_k_prime(&inst),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn augmenting_by_a_klein_factor_preserves_odd_count() {
        // start: full-rank diagonal odd L with A = -id (two fixed classes of
        // the involution would be one odd orbit); augment by a zero row, a
        // zero shift entry and a -1 gluing block: the odd count survives
        let l = IntMatrix::from_rows(&[vec![3, 0], vec![0, 5]]);
        let old = neg_id_instance(2, l, &[1, 0]);
        let old_stats = circle_orbit_stats(&old, 1000).unwrap();

        let l_new = IntMatrix::from_rows(&[vec![3, 0], vec![0, 5], vec![0, 0]]);
        let new = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(2).neg(),
            IntMatrix::identity(3).neg(),
            l_new,
            vec_i64(&[1, 0, 0]),
        )
        .unwrap();
        let (act, _) = restricted_action_on_k_prime(&new).unwrap();
        let kstats = enumerate_torsion_orbits(&act, 1000).unwrap();
        let odd_new: u64 = kstats
            .by_size
            .iter()
            .filter(|(s, _)| *s % 2 == 1)
            .map(|(_, c)| *c)
            .sum();
        assert_eq!(Some(ExtNat::finite(odd_new)), old_stats.nu_odd);
    }

    #[test]
    fn rank_deficient_translation_cases() {
        // identity linear part, shift of infinite order: all orbits infinite
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(2),
            IntMatrix::identity(2),
            IntMatrix::zero(2, 2),
            vec_i64(&[1, 0]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats.nu_inf, Some(ExtNat::Infinity));
        assert_eq!(stats.nu_odd, Some(ExtNat::zero()));

        // zero shift: everything is fixed
        let inst = make_instance(
            BaseSpace::Circle,
            IntMatrix::identity(2),
            IntMatrix::identity(2),
            IntMatrix::zero(2, 2),
            vec_i64(&[0, 0]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats.nu_odd, Some(ExtNat::Infinity));
        assert_eq!(stats.nu_even, Some(ExtNat::zero()));
    }

    #[test]
    fn rank_deficient_finite_order_certificate() {
        // rotation by i on Z^2 with zero linear part: order 4, beta^4 = id,
        // all orbits finite, odd/even split left undetermined
        let inst = make_instance(
            BaseSpace::Circle,
            rot(),
            rot(),
            IntMatrix::zero(2, 2),
            vec_i64(&[1, 0]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert!(!stats.is_complete());
        assert_eq!(stats.nu_inf, Some(ExtNat::zero()));
    }

    #[test]
    fn rank_deficient_without_certificate_is_undetermined() {
        // a gluing of infinite order in GL(2, Z)
        let hyperbolic = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let inst = make_instance(
            BaseSpace::Circle,
            hyperbolic.clone(),
            hyperbolic,
            IntMatrix::zero(2, 2),
            vec_i64(&[1, 0]),
        )
        .unwrap();
        let stats = circle_orbit_stats(&inst, 1000).unwrap();
        assert_eq!(stats, OrbitStats::undetermined());
    }
}
