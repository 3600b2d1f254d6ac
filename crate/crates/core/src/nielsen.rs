//! Nielsen, Reidemeister and minimum numbers by base space and case dispatch.
//!
//! Over a point or a sphere the Nielsen number is the absolute determinant of
//! a generator matrix of the image lattice (zero when the linear part is not
//! onto), and `MC` is finite exactly when the number vanishes or the total
//! dimensions match. Over the circle the rank of the image decides the case:
//! full rank counts all orbits of the Reidemeister action; corank one splits
//! by the sign `a` into a determinant formula (`a = +1`) and an odd-orbit
//! count on the torsion quotient `K'` (`a = -1`, with looseness for odd
//! `v2`); corank two or more is always loose.
//!
//! Every report records which branch fired and the intermediate quantities,
//! so results can be audited without rerunning the computation.

use crate::bundle::{
    circle_case_data, make_instance, representative_in_image_span, BaseSpace, ProblemInstance,
    TorusBundle,
};
use crate::extnat::ExtNat;
use crate::intlat::IntMatrix;
use crate::orbits::{self, cokernel, CokernelPresentation, OrbitStats};
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which theorem branch produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    PointBase,
    SphereBase,
    Circle0,
    Circle1Plus,
    Circle1Minus,
    Circle2,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::PointBase => "PointBase",
            CaseLabel::SphereBase => "SphereBase",
            CaseLabel::Circle0 => "Circle0",
            CaseLabel::Circle1Plus => "Circle1Plus",
            CaseLabel::Circle1Minus => "Circle1Minus",
            CaseLabel::Circle2 => "Circle2",
        }
    }
}

/// Structured explanation of a report: the formula that fired plus its
/// numeric inputs, as ordered key/value facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub branch: String,
    pub facts: Vec<(String, String)>,
}

impl Witness {
    fn new(branch: impl Into<String>) -> Self {
        Witness {
            branch: branch.into(),
            facts: Vec::new(),
        }
    }

    fn fact(&mut self, key: &str, value: impl core::fmt::Display) {
        self.facts.push((key.to_string(), value.to_string()));
    }
}

/// The complete answer for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NielsenReport {
    pub case_label: CaseLabel,
    /// The Nielsen number; always finite, always equal to `mcc`.
    pub nielsen_number: BigInt,
    /// Minimum number of coincidence components over fiberwise homotopies.
    pub mcc: BigInt,
    /// Minimum number of coincidence points; either `mcc` or infinite.
    pub mc: ExtNat,
    /// Reidemeister cardinality; `None` when it cannot be certified
    /// (possible only in the rank-deficient circle case).
    pub r_count: Option<ExtNat>,
    /// The pair can be deformed to be coincidence free.
    pub loose: bool,
    pub stats: OrbitStats,
    pub witness: Witness,
}

impl NielsenReport {
    fn assemble(
        case_label: CaseLabel,
        nielsen_number: BigInt,
        mc: ExtNat,
        r_count: Option<ExtNat>,
        stats: OrbitStats,
        witness: Witness,
    ) -> Self {
        let loose = nielsen_number.is_zero();
        let mcc = nielsen_number.clone();
        if let Some(r) = &r_count {
            debug_assert!(ExtNat::finite(nielsen_number.clone()) <= *r);
        }
        debug_assert!(mc == ExtNat::Infinity || mc == ExtNat::finite(nielsen_number.clone()));
        NielsenReport {
            case_label,
            nielsen_number,
            mcc,
            mc,
            r_count,
            loose,
            stats,
            witness,
        }
    }
}

/// Dispatch on the base space.
pub fn report(inst: &ProblemInstance, cap: u64) -> Result<NielsenReport> {
    match inst.base() {
        BaseSpace::Point => nielsen_point(inst),
        BaseSpace::Sphere(_) => nielsen_sphere(inst),
        BaseSpace::Circle => nielsen_circle(inst, cap),
    }
}

// Orbit signature of the trivial loop action: every class is a singleton.
fn trivial_action_stats(pres: &CokernelPresentation) -> OrbitStats {
    let mut by_size = BTreeMap::new();
    let (nu_odd, order) = match pres.order() {
        ExtNat::Infinity => (ExtNat::Infinity, None),
        ExtNat::Finite(o) => (ExtNat::finite(o.clone()), o.to_u64()),
    };
    if let Some(o) = order {
        by_size.insert(1, o);
    }
    OrbitStats {
        by_size,
        nu_odd: Some(nu_odd),
        nu_even: Some(ExtNat::zero()),
        nu_inf: Some(ExtNat::zero()),
    }
}

// Shared by the point and sphere cases: N = |det| of the image basis when the
// linear part is onto over the reals, zero otherwise; #R = |G|.
fn determinant_data(inst: &ProblemInstance) -> (BigInt, ExtNat, CokernelPresentation) {
    let n = inst.n();
    let image = inst.image();
    let nielsen = if image.rank() == n {
        image
            .basis_matrix()
            .abs_det()
            .expect("full-rank image basis is square")
    } else {
        BigInt::zero()
    };
    let pres = cokernel(inst.linear());
    let r_count = pres.order();
    (nielsen, r_count, pres)
}

/// Coincidences of maps between bare tori (the base is a point).
pub fn nielsen_point(inst: &ProblemInstance) -> Result<NielsenReport> {
    if inst.base() != BaseSpace::Point {
        return Err(Error::Unsupported("nielsen_point needs a point base"));
    }
    let (nielsen, r_count, pres) = determinant_data(inst);
    let mc = if nielsen.is_zero() || inst.m() == inst.n() {
        ExtNat::finite(nielsen.clone())
    } else {
        ExtNat::Infinity
    };
    let mut witness = Witness::new("point base: N = |det| of an image lattice basis");
    witness.fact("m", inst.m());
    witness.fact("n", inst.n());
    witness.fact("rank L", inst.image().rank());
    witness.fact("N = |det|", &nielsen);
    witness.fact("#R = #(Z^n / L(Z^m))", r_count.render());
    let stats = trivial_action_stats(&pres);
    Ok(NielsenReport::assemble(
        CaseLabel::PointBase,
        nielsen,
        mc,
        Some(r_count),
        stats,
        witness,
    ))
}

/// Coincidences over a sphere base `S^b`, `b >= 2` (trivial bundles; sections
/// are nullhomotopic, so the shift plays no role).
pub fn nielsen_sphere(inst: &ProblemInstance) -> Result<NielsenReport> {
    let BaseSpace::Sphere(b) = inst.base() else {
        return Err(Error::Unsupported("nielsen_sphere needs a sphere base"));
    };
    let (nielsen, r_count, pres) = determinant_data(inst);
    let mc = if nielsen.is_zero() || inst.m() + b as usize == inst.n() {
        ExtNat::finite(nielsen.clone())
    } else {
        ExtNat::Infinity
    };
    let mut witness = Witness::new("sphere base: N = |det| of an image lattice basis");
    witness.fact("b", b);
    witness.fact("m", inst.m());
    witness.fact("n", inst.n());
    witness.fact("rank L", inst.image().rank());
    witness.fact("N = |det|", &nielsen);
    witness.fact("#R = #(Z^n / L(Z^m))", r_count.render());
    let stats = trivial_action_stats(&pres);
    Ok(NielsenReport::assemble(
        CaseLabel::SphereBase,
        nielsen,
        mc,
        Some(r_count),
        stats,
        witness,
    ))
}

/// Coincidences over the circle, by the rank of the image lattice.
pub fn nielsen_circle(inst: &ProblemInstance, cap: u64) -> Result<NielsenReport> {
    if inst.base() != BaseSpace::Circle {
        return Err(Error::Unsupported("nielsen_circle needs a circle base"));
    }
    let (m, n) = (inst.m(), inst.n());
    let data = circle_case_data(inst)?;
    let stats = orbits::circle_orbit_stats(inst, cap)?;

    if data.rank == n {
        // full rank: N = MCC = #R = number of orbits, MC infinite
        let count = stats
            .total_orbits()
            .and_then(|t| t.as_finite().cloned())
            .ok_or(Error::InternalInconsistency(
                "full-rank enumeration must yield finite counts",
            ))?;
        let mut witness = Witness::new("circle, full rank: N = number of orbits on Z^n / L(Z^m)");
        witness.fact("rank L", data.rank);
        witness.fact("#G", cokernel(inst.linear()).torsion_order());
        witness.fact("orbits", &count);
        witness.fact("orbit sizes", format_by_size(&stats.by_size));
        return Ok(NielsenReport::assemble(
            CaseLabel::Circle0,
            count.clone(),
            ExtNat::Infinity,
            Some(ExtNat::finite(count)),
            stats,
            witness,
        ));
    }

    if data.rank + 1 == n {
        let comp = data
            .complement
            .as_ref()
            .expect("corank-one case data carries the complement");
        if comp.a == 1 {
            let padded = IntMatrix::from_cols(n, &[inst.shift().to_vec()])
                .hstack(inst.image().basis_matrix());
            let nielsen = padded.abs_det()?;
            let r_count = if comp.v2.is_zero() {
                ExtNat::Infinity
            } else {
                ExtNat::finite(nielsen.clone())
            };
            let mc = if nielsen.is_zero() || m < n {
                ExtNat::finite(nielsen.clone())
            } else {
                ExtNat::Infinity
            };
            let mut witness =
                Witness::new("circle, corank 1, a = +1: N = |det(v, w_1, ..., w_{n-1})|");
            witness.fact("rank L", data.rank);
            witness.fact("a", comp.a);
            witness.fact("v2", &comp.v2);
            witness.fact("N = |det|", &nielsen);
            return Ok(NielsenReport::assemble(
                CaseLabel::Circle1Plus,
                nielsen,
                mc,
                Some(r_count),
                stats,
                witness,
            ));
        }

        // a = -1: infinite Reidemeister set
        if comp.v2.is_odd() {
            let mut witness = Witness::new("circle, corank 1, a = -1, v2 odd: loose");
            witness.fact("rank L", data.rank);
            witness.fact("a", comp.a);
            witness.fact("v2", &comp.v2);
            return Ok(NielsenReport::assemble(
                CaseLabel::Circle1Minus,
                BigInt::zero(),
                ExtNat::zero(),
                Some(ExtNat::Infinity),
                stats,
                witness,
            ));
        }
        let (act, kpres) = orbits::restricted_action_on_k_prime(inst)?;
        let kstats = orbits::enumerate_torsion_orbits(&act, cap)?;
        let nielsen = kstats
            .nu_odd
            .as_ref()
            .and_then(|x| x.as_finite().cloned())
            .expect("finite enumeration yields finite counts");
        let mc = if nielsen.is_zero() || m < n {
            ExtNat::finite(nielsen.clone())
        } else {
            ExtNat::Infinity
        };
        let mut witness =
            Witness::new("circle, corank 1, a = -1, v2 even: N = odd orbits of beta on K'");
        witness.fact("rank L", data.rank);
        witness.fact("a", comp.a);
        witness.fact("v2", &comp.v2);
        witness.fact("#K'", kpres.torsion_order());
        witness.fact("K' orbit sizes", format_by_size(&kstats.by_size));
        witness.fact("odd orbits", &nielsen);
        return Ok(NielsenReport::assemble(
            CaseLabel::Circle1Minus,
            nielsen,
            mc,
            Some(ExtNat::Infinity),
            stats,
            witness,
        ));
    }

    // rank <= n - 2: always loose; #R only when certified
    let r_count = if stats.nu_inf.is_some() {
        Some(ExtNat::Infinity)
    } else {
        None
    };
    let mut witness = Witness::new("circle, corank >= 2: loose");
    witness.fact("rank L", data.rank);
    witness.fact("free rank of G", n - data.rank);
    witness.fact(
        "#R",
        match &r_count {
            Some(r) => r.render(),
            None => String::from("undetermined"),
        },
    );
    Ok(NielsenReport::assemble(
        CaseLabel::Circle2,
        BigInt::zero(),
        ExtNat::zero(),
        r_count,
        stats,
        witness,
    ))
}

fn format_by_size(by_size: &BTreeMap<u64, u64>) -> String {
    if by_size.is_empty() {
        return String::from("(none)");
    }
    let mut out = String::new();
    for (i, (size, count)) in by_size.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("{count} of size {size}"));
    }
    out
}

/// The unified orbit count: `nu'_odd + nu'_even + nu_inf` when the free rank
/// of the Reidemeister group is at most the free rank of the base fundamental
/// group, and zero otherwise. Equals the Nielsen number whenever the
/// statistics are complete.
pub fn nu_b(stats: &OrbitStats, free_rank: usize, base: BaseSpace) -> Result<BigInt> {
    if free_rank > base.pi1_rank() {
        return Ok(BigInt::zero());
    }
    if !stats.is_complete() {
        return Err(Error::IncompleteStats);
    }
    let odd = stats.nu_odd.as_ref().expect("complete").reduced();
    let even = stats.nu_even.as_ref().expect("complete").reduced();
    let inf = stats
        .nu_inf
        .as_ref()
        .expect("complete")
        .as_finite()
        .ok_or(Error::InternalInconsistency(
            "nu_inf must be finite under the rank gate",
        ))?
        .clone();
    Ok(odd + even + inf)
}

/// Fixed points of a fiberwise selfmap of a torus bundle over the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointProblem {
    bundle: TorusBundle,
    f_star: IntMatrix,
    v: Vec<BigInt>,
}

impl FixedPointProblem {
    /// Validates the shape and the intertwining `A f_* = f_* A`.
    pub fn new(bundle: TorusBundle, f_star: IntMatrix, v: Vec<BigInt>) -> Result<Self> {
        if bundle.base() != BaseSpace::Circle {
            return Err(Error::Unsupported(
                "fixed point theory here is over the circle",
            ));
        }
        let n = bundle.fiber_dim();
        if f_star.rows() != n || f_star.cols() != n || v.len() != n {
            return Err(Error::DimMismatch(format!(
                "selfmap data must be {n}x{n} with a length-{n} shift"
            )));
        }
        if bundle.gluing().mul(&f_star) != f_star.mul(bundle.gluing()) {
            return Err(Error::IntertwineViolated);
        }
        Ok(FixedPointProblem { bundle, f_star, v })
    }

    pub fn bundle(&self) -> &TorusBundle {
        &self.bundle
    }

    pub fn f_star(&self) -> &IntMatrix {
        &self.f_star
    }

    pub fn v(&self) -> &[BigInt] {
        &self.v
    }

    /// The coincidence instance of `(f - id, 0)`: linear part `f_* - id`.
    pub fn to_instance(&self) -> Result<ProblemInstance> {
        let n = self.bundle.fiber_dim();
        make_instance(
            BaseSpace::Circle,
            self.bundle.gluing().clone(),
            self.bundle.gluing().clone(),
            self.f_star.sub(&IntMatrix::identity(n)),
            self.v.clone(),
        )
    }
}

// The 2x2 fixed point case table, in the coordinates of the eigenline
// splitting: dim W_+1 indexes the case, and in the one-dimensional case the
// value depends on a, v2, q = #K', the sat coordinate v1 and det A.
struct EigenlineNarrative {
    dim_w_plus: usize,
    a: Option<i32>,
    v2: Option<BigInt>,
    q: Option<BigInt>,
    v1: Option<BigInt>,
    det_a: Option<BigInt>,
    value: BigInt,
}

impl EigenlineNarrative {
    fn facts(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        out.push(("dim W_+1".to_string(), self.dim_w_plus.to_string()));
        if let Some(a) = self.a {
            out.push(("a = A|W_+1".to_string(), a.to_string()));
        }
        if let Some(v2) = &self.v2 {
            out.push(("v2".to_string(), v2.to_string()));
        }
        if let Some(q) = &self.q {
            out.push(("q = #K'".to_string(), q.to_string()));
        }
        if let Some(v1) = &self.v1 {
            out.push(("v1".to_string(), v1.to_string()));
        }
        if let Some(d) = &self.det_a {
            out.push(("det A".to_string(), d.to_string()));
        }
        out.push(("case table MCC".to_string(), self.value.to_string()));
        out
    }
}

fn eigenline_narrative(
    problem: &FixedPointProblem,
    inst: &ProblemInstance,
    cap: u64,
) -> Result<EigenlineNarrative> {
    let data = circle_case_data(inst)?;
    let dim_w_plus = 2 - data.rank;
    let mut narrative = EigenlineNarrative {
        dim_w_plus,
        a: None,
        v2: None,
        q: None,
        v1: None,
        det_a: None,
        value: BigInt::zero(),
    };

    match dim_w_plus {
        0 => {
            // all orbits of the full action
            let pres = cokernel(inst.linear());
            let act = orbits::action(inst, inst.shift(), &pres)?;
            let stats = orbits::enumerate_torsion_orbits(&act, cap)?;
            narrative.value = stats
                .total_orbits()
                .and_then(|t| t.as_finite().cloned())
                .expect("finite enumeration");
        }
        2 => {
            // f_* = id: every fixed point can be pushed off
            narrative.value = BigInt::zero();
        }
        _ => {
            let comp = data
                .complement
                .as_ref()
                .expect("corank-one case data carries the complement");
            // q = index of the image inside its saturation
            let image = inst.image();
            let x_cols: Vec<Vec<BigInt>> = (0..image.rank())
                .map(|j| {
                    data.sat
                        .coordinates_of(&image.column(j))
                        .ok_or(Error::InternalInconsistency("image escapes its saturation"))
                })
                .collect::<Result<_>>()?;
            let q = IntMatrix::from_cols(data.sat.rank(), &x_cols).abs_det()?;
            narrative.a = Some(comp.a);
            narrative.v2 = Some(comp.v2.clone());
            narrative.q = Some(q.clone());
            narrative.value = if comp.a == 1 {
                &q * comp.v2.abs()
            } else if comp.v2.is_odd() {
                BigInt::zero()
            } else {
                // choose a representative with v2 = 0 and read its sat coordinate
                let rep = representative_in_image_span(inst)?;
                let v1 = data
                    .sat
                    .coordinates_of(&rep)
                    .ok_or(Error::InternalInconsistency(
                        "representative escapes the saturation",
                    ))?
                    .pop()
                    .expect("one sat coordinate in the corank-one 2x2 case");
                let det_a = problem.bundle.gluing().det()?;
                let r = q.gcd(&v1);
                narrative.v1 = Some(v1.clone());
                narrative.det_a = Some(det_a.clone());
                if det_a == -BigInt::one() {
                    // beta| is the translation by v1 on Z_q: r orbits of odd
                    // size q/r, or none odd at all
                    if (&q / &r).is_odd() {
                        r
                    } else {
                        BigInt::zero()
                    }
                } else {
                    // beta| is the involution k -> v1 - k on Z_q
                    if q.is_odd() {
                        BigInt::one()
                    } else if v1.is_even() {
                        BigInt::from(2)
                    } else {
                        BigInt::zero()
                    }
                }
            };
        }
    }
    Ok(narrative)
}

/// Minimum fixed point data of a fiberwise selfmap: the general circle
/// dispatch applied to `L = f_* - id`, and for two-dimensional fibers the
/// eigenline case table is evaluated as well and cross-checked against it.
pub fn fixed_points(problem: &FixedPointProblem, cap: u64) -> Result<NielsenReport> {
    let inst = problem.to_instance()?;
    let mut report = nielsen_circle(&inst, cap)?;
    if problem.bundle.fiber_dim() == 2 {
        let narrative = eigenline_narrative(problem, &inst, cap)?;
        if narrative.value != report.nielsen_number {
            return Err(Error::InternalInconsistency(
                "eigenline case table disagrees with the general dispatch",
            ));
        }
        report.witness.facts.extend(narrative.facts());
    }
    Ok(report)
}

/// Whether the selfmap can be deformed fiberwise to a fixed point free map,
/// together with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoosenessVerdict {
    pub free: bool,
    pub reason: String,
}

pub fn fixed_point_free(problem: &FixedPointProblem, cap: u64) -> Result<LoosenessVerdict> {
    let inst = problem.to_instance()?;
    let report = nielsen_circle(&inst, cap)?;
    let free = report.loose;
    if problem.bundle.fiber_dim() != 2 {
        let reason = format!(
            "general dispatch: case {} gives MCC = {}",
            report.case_label.as_str(),
            report.mcc
        );
        return Ok(LoosenessVerdict { free, reason });
    }
    let n = eigenline_narrative(problem, &inst, cap)?;
    let reason = match (n.dim_w_plus, n.a) {
        (2, _) => String::from("f_* = id"),
        (0, _) => format!("dim W_+1 = 0: MCC = {} orbits, never zero", report.mcc),
        (_, Some(1)) => {
            let v2 = n.v2.expect("recorded in the corank-one case");
            if free {
                String::from("(i) A|W_+1 = id and v2 = 0")
            } else {
                format!("A|W_+1 = id with v2 = {v2}: MCC = q*|v2| > 0")
            }
        }
        (_, _) => {
            let v2 = n.v2.expect("recorded in the corank-one case");
            if v2.is_odd() {
                String::from("(ii) A|W_+1 = -id and v2 is odd")
            } else {
                let q = n.q.expect("recorded");
                let det_a = n.det_a.expect("recorded for even v2");
                let v1 = n.v1.expect("recorded for even v2");
                let r = q.gcd(&v1);
                if free {
                    if det_a.is_one() {
                        format!(
                            "(iii) A|W_+1 = -id, v2 even, det A = +1, q = {q} even, v1 = {v1} odd"
                        )
                    } else {
                        format!(
                            "(iv) A|W_+1 = -id, v2 even, det A = -1, q = {q} an even multiple of r = gcd(q, v1) = {r}"
                        )
                    }
                } else {
                    format!(
                        "A|W_+1 = -id with v2 even: MCC = {} odd orbits on K' (q = {q}, det A = {det_a})",
                        report.mcc
                    )
                }
            }
        }
    };
    Ok(LoosenessVerdict { free, reason })
}
