//! The rank-2 verification harness: the type table, the orbit tables with
//! their moduli, the four structure tables, and the crosswalk between the
//! two construction paths.
//!
//! Every function returns a flat list of named pass/fail checks; the CLI
//! assembles them into the JSON report. Representative points, moduli and
//! structure-table rows are fixed tables here, verified against the
//! machinery rather than assumed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, expected_catalog};
use crate::cobar::{phi_z_elem, phi_z_tensor, Cobar};
use crate::gf::{Field, FieldExt, Scalar};
use crate::hopf::{check_hopf_isomorphism, HopfAlgebra};
use crate::linalg::{linearize, ScalarMat};
use crate::orbit::{canonicalize_a3, canonicalize_a5, orbit_same_a3, orbit_same_a5};
use crate::pd::{
    act_a3, act_a5, aplus_membership, bplus_membership, build_deformation, check_deformation,
    datum_of_a3, datum_of_a5, equiv_pd_data, lift_type, permissible, verify_pd_datum, PdCtx,
    PdDatum, PointA3, PointA5,
};
use crate::rla::AbelianType;
use crate::uenv::{
    new_algebra, omega, raw_insert, with_psi, AlgElem, Algebra, Monomial, RawElem, RawTensor,
    TensorElem, TypeCtx,
};

#[derive(Clone, Debug, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub fn check(name: impl Into<String>, pass: bool) -> Check {
    Check { name: name.into(), pass, detail: None }
}

pub fn check_detail(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: Some(detail.into()) }
}

// ---------------------------------------------------------------------------
// representative tables
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub enum Modulus {
    /// Roots of unity mu_n with n given as a polynomial in p.
    Mu(fn(u64) -> u64),
    /// The squares of the prime field's unit group.
    FpSquares,
    Trivial,
}

impl Modulus {
    pub fn order(&self, p: u64) -> u64 {
        match self {
            Modulus::Mu(f) => f(p),
            Modulus::FpSquares => (p - 1) / 2,
            Modulus::Trivial => 1,
        }
    }

    /// The subgroup elements inside GF(p^m).
    pub fn elements(&self, f: &Field) -> Vec<Scalar> {
        match self {
            Modulus::Mu(n) => f.mu_n(n(f.p())),
            Modulus::FpSquares => {
                let mut out: Vec<Scalar> =
                    (1..f.p() as i64).map(|v| f.int(v * v)).collect();
                out.sort();
                out.dedup();
                out
            }
            Modulus::Trivial => vec![f.one()],
        }
    }
}

/// Theta column of the classification tables, as a function of the family
/// parameter.
type ThetaFn = fn(&PdCtx, &Scalar) -> AlgElem;

fn theta_zero(pd: &PdCtx, _xi: &Scalar) -> AlgElem {
    AlgElem::zero(&pd.ctx.h_alg)
}

/// (x^{p-1} - 1) y.
fn theta_t5(pd: &PdCtx, _xi: &Scalar) -> AlgElem {
    let p = pd.field().p();
    let x = pd.x();
    let y = pd.y();
    &(&x.pow(p - 1) * &y) - &y
}

/// -(xi/2) x^2.
fn theta_t8(pd: &PdCtx, xi: &Scalar) -> AlgElem {
    let x = pd.x();
    let half = pd.field().int(2).inv().unwrap();
    (&x * &x).scale(&-&(xi * &half))
}

/// x y^{p-1} (the T2 Psi contribution at d = 1).
fn theta_xy_pm1(pd: &PdCtx, _xi: &Scalar) -> AlgElem {
    let p = pd.field().p();
    &pd.x() * &pd.y().pow(p - 1)
}

fn theta_xy_pm1_plus_y(pd: &PdCtx, xi: &Scalar) -> AlgElem {
    &theta_xy_pm1(pd, xi) + &pd.y()
}

fn theta_y(pd: &PdCtx, _xi: &Scalar) -> AlgElem {
    pd.y()
}

fn theta_x(pd: &PdCtx, _xi: &Scalar) -> AlgElem {
    pd.x()
}

fn theta_xi_y(pd: &PdCtx, xi: &Scalar) -> AlgElem {
    pd.y().scale(xi)
}

fn theta_xi_x(pd: &PdCtx, xi: &Scalar) -> AlgElem {
    pd.x().scale(xi)
}

fn theta_xy_pm1_plus_xi_y(pd: &PdCtx, xi: &Scalar) -> AlgElem {
    &theta_xy_pm1(pd, xi) + &pd.y().scale(xi)
}

/// One row of the permissible table: template point (the family slot takes
/// the parameter), optional family modulus, and the listed Theta.
pub struct RepRow3 {
    pub point: [i64; 3],
    pub family: Option<(usize, Modulus)>,
    pub theta: ThetaFn,
}

pub struct RepRow5 {
    pub point: [i64; 5],
    pub family: Option<(usize, Modulus)>,
    /// The listed Psi_P + Theta_P.
    pub theta: ThetaFn,
}

fn mu_half_p2m1(p: u64) -> u64 {
    (p * p - 1) / 2
}
fn mu_p2mpp1(p: u64) -> u64 {
    p * p - p + 1
}
fn mu_p2mpm1(p: u64) -> u64 {
    p * p - p - 1
}
fn mu_2(_p: u64) -> u64 {
    2
}

/// The permissible orbit table.
pub fn perm_reps(label: &str) -> Vec<RepRow3> {
    match label {
        "T5" => vec![
            RepRow3 { point: [1, 0, 0], family: None, theta: theta_zero },
            RepRow3 { point: [1, 0, 1], family: Some((0, Modulus::Mu(mu_half_p2m1))), theta: theta_t5 },
        ],
        "T6" => vec![RepRow3 { point: [0, 1, 0], family: None, theta: theta_zero }],
        "T7" => vec![
            RepRow3 { point: [1, 0, 0], family: None, theta: theta_zero },
            RepRow3 { point: [0, 1, 0], family: None, theta: theta_zero },
            RepRow3 { point: [1, 1, 0], family: None, theta: theta_zero },
        ],
        "T8" => vec![
            RepRow3 { point: [1, 0, 0], family: Some((0, Modulus::FpSquares)), theta: theta_t8 },
            RepRow3 { point: [1, 1, 0], family: Some((0, Modulus::Trivial)), theta: theta_t8 },
        ],
        "T10" => vec![
            RepRow3 { point: [1, 0, 0], family: None, theta: theta_zero },
            RepRow3 { point: [1, 0, 1], family: Some((0, Modulus::Mu(mu_p2mpp1))), theta: theta_zero },
        ],
        "T12" => vec![RepRow3 { point: [1, 0, 0], family: None, theta: theta_zero }],
        "T14" => vec![
            RepRow3 { point: [1, 0, 0], family: None, theta: theta_zero },
            RepRow3 { point: [0, 1, 0], family: None, theta: theta_zero },
            RepRow3 { point: [1, 1, 0], family: None, theta: theta_zero },
        ],
        zl if zl.starts_with("T(") => {
            vec![RepRow3 { point: [1, 0, 0], family: None, theta: theta_zero }]
        }
        _ => vec![],
    }
}

/// The nonpermissible orbit table.
pub fn nonperm_reps(label: &str) -> Vec<RepRow5> {
    match label {
        "T1" => vec![
            RepRow5 { point: [0, 0, 1, 0, 0], family: None, theta: theta_zero },
            RepRow5 { point: [1, 0, 1, 0, 0], family: None, theta: theta_x },
            RepRow5 { point: [0, 0, 0, 1, 0], family: None, theta: theta_zero },
            RepRow5 { point: [1, 0, 0, 1, 0], family: None, theta: theta_x },
            RepRow5 { point: [0, 1, 0, 1, 0], family: None, theta: theta_y },
            RepRow5 { point: [0, 0, 1, 1, 0], family: None, theta: theta_zero },
            RepRow5 { point: [1, 0, 1, 1, 0], family: None, theta: theta_x },
            RepRow5 { point: [0, 1, 1, 1, 0], family: None, theta: theta_y },
        ],
        "T2" => vec![
            RepRow5 { point: [0, 0, 1, 0, 0], family: None, theta: theta_zero },
            RepRow5 { point: [0, 1, 1, 0, 0], family: None, theta: theta_y },
            RepRow5 { point: [0, 0, 0, 1, 0], family: None, theta: theta_xy_pm1 },
            RepRow5 { point: [0, 1, 0, 1, 0], family: None, theta: theta_xy_pm1_plus_y },
            RepRow5 { point: [0, 0, 0, 0, 1], family: None, theta: theta_zero },
            RepRow5 { point: [0, 1, 0, 0, 1], family: None, theta: theta_y },
            RepRow5 {
                point: [0, 1, 1, 1, 0],
                family: Some((1, Modulus::Mu(mu_2))),
                theta: theta_xy_pm1_plus_xi_y,
            },
            RepRow5 {
                point: [0, 1, 1, 0, 1],
                family: Some((1, Modulus::Trivial)),
                theta: theta_xi_y,
            },
        ],
        "T4" => vec![
            RepRow5 { point: [0, 0, 1, 0, 0], family: None, theta: theta_zero },
            RepRow5 { point: [0, 1, 1, 0, 0], family: None, theta: theta_y },
            RepRow5 { point: [0, 0, 0, 0, 1], family: None, theta: theta_zero },
            RepRow5 { point: [0, 1, 0, 0, 1], family: None, theta: theta_y },
            RepRow5 {
                point: [0, 1, 1, 0, 1],
                family: Some((1, Modulus::FpSquares)),
                theta: theta_xi_y,
            },
        ],
        "T9" => vec![
            RepRow5 { point: [0, 0, 1, 0, 0], family: None, theta: theta_zero },
            RepRow5 { point: [1, 0, 1, 0, 0], family: None, theta: theta_x },
            RepRow5 { point: [0, 0, 0, 0, 1], family: None, theta: theta_zero },
            RepRow5 { point: [1, 0, 0, 0, 1], family: None, theta: theta_x },
            RepRow5 {
                point: [1, 0, 1, 0, 1],
                family: Some((0, Modulus::Mu(mu_p2mpm1))),
                theta: theta_xi_x,
            },
        ],
        _ => vec![],
    }
}

pub fn permissible_labels(p: u64) -> Vec<String> {
    let mut v: Vec<String> =
        ["T5", "T6", "T7", "T8", "T10", "T12", "T14"].iter().map(|s| s.to_string()).collect();
    for zeta in 0..p {
        if catalog::canonical_zeta(p, zeta) == zeta && zeta != p - 1 {
            v.push(format!("T({zeta})"));
        }
    }
    v
}

pub const NONPERMISSIBLE_LABELS: [&str; 4] = ["T1", "T2", "T4", "T9"];

/// Deterministic sample values for a k-valued family parameter: zero, one,
/// a nonsquare, a generator power, and scattered field elements.
pub fn sample_parameters(f: &Field, include_zero: bool, count: usize) -> Vec<Scalar> {
    let g = f.generator();
    let mut out = Vec::new();
    if include_zero {
        out.push(f.zero());
    }
    out.push(f.one());
    let mut gp = g.clone();
    while out.len() < count {
        out.push(gp.clone());
        gp = &(&gp * &g) * &g; // walk odd generator powers: g, g^3, g^5, ...
    }
    out.truncate(count);
    out
}

// ---------------------------------------------------------------------------
// suite: the type table
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sub {
    Zero,
    X,
    Y,
    All,
}

impl Sub {
    fn dim(self) -> usize {
        match self {
            Sub::Zero => 0,
            Sub::X | Sub::Y => 1,
            Sub::All => 2,
        }
    }

    /// Output coordinates allowed to be nonzero.
    fn coords(self) -> &'static [usize] {
        match self {
            Sub::Zero => &[],
            Sub::X => &[0],
            Sub::Y => &[1],
            Sub::All => &[0, 1],
        }
    }
}

/// Stated (Im Phi_z, Ker rho_z) columns of the type table. For T(0) the
/// shared subspace is k y rather than 0: the zeta = 0 member has
/// rho_z(y) = 0, and the table row lists the generic member.
fn stated_subspaces(label: &str) -> (Sub, Sub) {
    match label {
        "T1" => (Sub::Zero, Sub::All),
        "T2" => (Sub::Zero, Sub::Y),
        "T3" => (Sub::All, Sub::All),
        "T4" => (Sub::X, Sub::All),
        "T5" => (Sub::X, Sub::X),
        "T6" => (Sub::All, Sub::All),
        "T7" => (Sub::X, Sub::X),
        "T8" => (Sub::X, Sub::X),
        "T9" => (Sub::Y, Sub::All),
        "T10" => (Sub::Y, Sub::Y),
        "T11" => (Sub::All, Sub::All),
        "T12" => (Sub::Y, Sub::Y),
        "T13" => (Sub::All, Sub::All),
        "T14" => (Sub::All, Sub::All),
        "T(0)" => (Sub::Y, Sub::Y),
        _ => (Sub::Zero, Sub::Zero),
    }
}

/// criterion 1: the catalog plus per-row permissibility, the stated
/// kernel/image subspaces, and the admissible-set emptiness flags.
pub fn run_types_suite(f: &Field, rng: &mut ChaCha8Rng, empties_samples: usize) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    match catalog::enumerate_rank2_types(f) {
        Ok(rows) => {
            let expect = 14 + (0..p).filter(|&z| catalog::canonical_zeta(p, z) == z).count();
            out.push(check_detail(
                format!("types/p{p}/catalog"),
                rows.len() == expect,
                format!("{} classes", rows.len()),
            ));
        }
        Err(e) => out.push(check_detail(format!("types/p{p}/catalog"), false, e)),
    }
    for entry in expected_catalog(p) {
        let label = &entry.label;
        let ty = catalog::type_by_label(f, label).unwrap();
        let (perm, detail) = permissible(&ty);
        out.push(check_detail(
            format!("types/p{p}/{label}/permissible"),
            perm == entry.permissible && detail.contained,
            format!("{detail:?}"),
        ));
        // stated subspaces
        let (im_sub, ker_sub) = stated_subspaces(label);
        let ker_ok = {
            let ker = ty.m_mat.transpose().kernel_basis();
            ker.len() == ker_sub.dim()
                && ker_sub.coords().iter().all(|&i| {
                    // the stated generator must lie in the kernel
                    let mut v = vec![f.zero(); 2];
                    v[i] = f.one();
                    ty.m_mat.transpose().mul_vec(&v).iter().all(|s| s.is_zero())
                })
        };
        let im_ok = {
            // containment of the image in the stated coordinates, plus the
            // dimension over the closure
            let s_mat = ty.r_mat.transpose();
            let mt = ty.m_mat.transpose();
            let mut l_mat = mt.matrix_power(p - 1);
            for i in 0..2 {
                l_mat[(i, i)] = &l_mat[(i, i)] - &ty.lambda;
            }
            let allowed = im_sub.coords();
            let rows_vanish = (0..2)
                .filter(|i| !allowed.contains(i))
                .all(|i| (0..2).all(|j| s_mat[(i, j)].is_zero() && l_mat[(i, j)].is_zero()));
            rows_vanish && detail.im_phi_dim == im_sub.dim()
        };
        out.push(check(format!("types/p{p}/{label}/stated-subspaces"), ker_ok && im_ok));
        // admissible-set emptiness
        let pd = PdCtx::new(&ty);
        if entry.aplus_empty {
            let mut all_none = true;
            for _ in 0..empties_samples {
                let p3 = loop {
                    let cand = PointA3::new(f.random(rng), f.random(rng), f.random(rng));
                    if !cand.is_zero() {
                        break cand;
                    }
                };
                if aplus_membership(&pd, &p3).is_some() {
                    all_none = false;
                }
            }
            // the rank statement: the linearized class obstruction
            // P -> [Phi_z(chi_P)] has trivial kernel at m and 2m
            let rank_stmt = obstruction_kernel_dim(&ty) == 0 && {
                let big = crate::gf::FieldParams::new(p, 2 * f.m()).unwrap();
                obstruction_kernel_dim(&lift_type(&ty, &big)) == 0
            };
            out.push(check_detail(
                format!("types/p{p}/{label}/admissible-empty"),
                all_none && rank_stmt,
                format!("{empties_samples} random points rejected; obstruction kernel 0"),
            ));
        } else {
            let nonempty = first_rep_point(f, label)
                .map(|pt| match pt {
                    Rep::A3(p3) => aplus_membership(&pd, &p3).is_some(),
                    Rep::A5(p5) => bplus_membership(&pd, label, &p5).is_some(),
                })
                .unwrap_or(false);
            out.push(check(format!("types/p{p}/{label}/admissible-nonempty"), nonempty));
        }
    }
    out
}

enum Rep {
    A3(PointA3),
    A5(PointA5),
}

fn first_rep_point(f: &Field, label: &str) -> Option<Rep> {
    if NONPERMISSIBLE_LABELS.contains(&label) {
        let rows = nonperm_reps(label);
        let row = rows.first()?;
        Some(Rep::A5(PointA5::from_ints(f, row.point)))
    } else {
        let rows = perm_reps(label);
        let row = rows.first()?;
        Some(Rep::A3(PointA3::from_ints(f, row.point[0], row.point[1], row.point[2])))
    }
}

/// F_p-kernel dimension of P -> class coords of Phi_z(chi_P).
fn obstruction_kernel_dim(ty: &AbelianType) -> usize {
    let pd = PdCtx::new(ty);
    let f = &ty.field;
    let lin = linearize(f, 3, 3, |v| {
        let p3 = PointA3::new(v[0].clone(), v[1].clone(), v[2].clone());
        let chi = p3.chi(&pd);
        let phi = phi_z_tensor(&pd.ctx, &chi);
        let (coords, _) = pd.cobar.class_coords(&phi).expect("Phi_z image is a cocycle");
        vec![coords.a[0].clone(), coords.b[0].clone(), coords.b[1].clone()]
    });
    lin.kernel_dim()
}

// ---------------------------------------------------------------------------
// suite: cohomology dimensions
// ---------------------------------------------------------------------------

/// criterion 2: dim H^1 = 2 and dim H^2 = 3 for the four h kinds.
pub fn run_cohomology_suite(f: &Field) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    for (label, kind) in [("A", "T1"), ("B", "T4"), ("C", "T9"), ("D", "T13")] {
        let ty = catalog::type_by_label(f, kind).unwrap();
        let ctx = TypeCtx::new(&ty);
        let cobar = Cobar::new(&ctx);
        let h1 = cobar.h1_dim();
        let (_, h2) = cobar.h2_basis();
        out.push(check_detail(
            format!("cohomology/p{p}/kind-{label}"),
            h1 == 2 && h2 == 3,
            format!("dim H1 = {h1}, dim H2 = {h2}"),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// suite: cobar identities
// ---------------------------------------------------------------------------

/// criterion 3: the low-degree identity battery on every type family.
pub fn run_cobar_suite(f: &Field, rng: &mut ChaCha8Rng, samples: usize) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    for entry in expected_catalog(p) {
        let ty = catalog::type_by_label(f, &entry.label).unwrap();
        let ctx = TypeCtx::new(&ty);
        let cobar = Cobar::new(&ctx);
        let checks = crate::cobar::verify_cobar_identities(&ctx, &cobar, rng, samples);
        let fails: Vec<String> =
            checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        out.push(check_detail(
            format!("cobar/p{p}/{}", entry.label),
            fails.is_empty(),
            if fails.is_empty() {
                format!("{} identities x {samples} samples", checks.len())
            } else {
                format!("failed: {}", fails.join(", "))
            },
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// suite: deformations
// ---------------------------------------------------------------------------

fn point_of_row3(f: &Field, row: &RepRow3, xi: &Scalar) -> PointA3 {
    let mut p3 = PointA3::from_ints(f, row.point[0], row.point[1], row.point[2]);
    if let Some((slot, _)) = row.family {
        let target = match slot {
            0 => &mut p3.a,
            1 => &mut p3.b,
            _ => &mut p3.c,
        };
        *target = xi.clone();
    }
    p3
}

fn point_of_row5(f: &Field, row: &RepRow5, xi: &Scalar) -> PointA5 {
    let mut p5 = PointA5::from_ints(f, row.point);
    if let Some((slot, _)) = row.family {
        let target = match slot {
            0 => &mut p5.a,
            1 => &mut p5.b,
            2 => &mut p5.c,
            3 => &mut p5.d,
            _ => &mut p5.e,
        };
        *target = xi.clone();
    }
    p5
}

/// All (label, row, datum) triples of the two orbit tables, families
/// sampled at `family_samples` deterministic parameters.
fn all_table_data(
    f: &Field,
    family_samples: usize,
) -> Vec<(String, String, PdCtx, PdDatum, AlgElem)> {
    let p = f.p();
    let mut out = Vec::new();
    for label in permissible_labels(p) {
        let ty = catalog::type_by_label(f, &label).unwrap();
        for (ri, row) in perm_reps(&label).iter().enumerate() {
            let xis = if row.family.is_some() {
                sample_parameters(f, label != "T8" || ri != 0, family_samples)
            } else {
                vec![f.one()]
            };
            for xi in xis {
                let p3 = point_of_row3(f, row, &xi);
                if p3.is_zero() {
                    continue;
                }
                let pd2 = PdCtx::new(&ty);
                let listed_theta = (row.theta)(&pd2, &xi);
                let datum = PdDatum::new(listed_theta.clone(), p3.chi(&pd2));
                out.push((
                    label.clone(),
                    format!("row{ri}/xi={xi}"),
                    pd2,
                    datum,
                    listed_theta,
                ));
            }
        }
    }
    for label in NONPERMISSIBLE_LABELS {
        let ty = catalog::type_by_label(f, label).unwrap();
        for (ri, row) in nonperm_reps(label).iter().enumerate() {
            let xis = if row.family.is_some() {
                sample_parameters(f, true, family_samples)
            } else {
                vec![f.one()]
            };
            for xi in xis {
                let p5 = point_of_row5(f, row, &xi);
                let pd2 = PdCtx::new(&ty);
                let listed_theta = (row.theta)(&pd2, &xi);
                let datum = PdDatum::new(listed_theta.clone(), p5.chi(&pd2));
                out.push((
                    label.to_string(),
                    format!("row{ri}/xi={xi}"),
                    pd2,
                    datum,
                    listed_theta,
                ));
            }
        }
        let _ = &ty;
    }
    out
}

/// criterion 4: every representative row builds a p^3-dimensional Hopf
/// algebra passing all axioms with the right primitive space.
pub fn run_deformation_suite(f: &Field, family_samples: usize) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    for (label, rowid, pd, datum, _) in all_table_data(f, family_samples) {
        let rep_ok = verify_pd_datum(&pd, &datum).pass();
        let (alg, hopf) = build_deformation(&pd, &datum);
        let checks = check_deformation(&pd, &datum, &alg, &hopf);
        let pass = rep_ok && checks.pass(2);
        out.push(check_detail(
            format!("deformation/p{p}/{label}/{rowid}"),
            pass,
            format!(
                "dim {} axioms {} P(H) dim {} kind-ok {} dz-identity {}",
                hopf.dim,
                checks.axioms.pass(),
                checks.primitive_dim,
                checks.primitive_kind_ok,
                checks.delta_z_power_identity
            ),
        ));
    }
    out
}

/// The p = 5 spot checks: a fixed selection of five rows.
pub fn run_deformation_spot_suite(f: &Field) -> Vec<Check> {
    let p = f.p();
    assert_eq!(p, 5);
    let mut out = Vec::new();
    let g = f.generator();
    let spots: Vec<(&str, Rep)> = vec![
        ("T5", Rep::A3(PointA3::from_ints(f, 1, 0, 0))),
        ("T7", Rep::A3(PointA3::from_ints(f, 1, 1, 0))),
        ("T5", Rep::A3(PointA3::new(g.clone(), f.zero(), f.one()))),
        ("T2", Rep::A5(PointA5::from_ints(f, [0, 1, 0, 1, 0]))),
        ("T9", Rep::A5(PointA5 { a: g, b: f.zero(), c: f.one(), d: f.zero(), e: f.one() })),
    ];
    for (i, (label, rep)) in spots.into_iter().enumerate() {
        let ty = catalog::type_by_label(f, label).unwrap();
        let pd = PdCtx::new(&ty);
        let datum = match rep {
            Rep::A3(p3) => datum_of_a3(&pd, &p3),
            Rep::A5(p5) => datum_of_a5(&pd, label, &p5),
        };
        let Some(datum) = datum else {
            out.push(check(format!("deformation/p5/spot{i}/{label}"), false));
            continue;
        };
        let (alg, hopf) = build_deformation(&pd, &datum);
        let checks = check_deformation(&pd, &datum, &alg, &hopf);
        out.push(check_detail(
            format!("deformation/p5/spot{i}/{label}"),
            checks.pass(2) && hopf.dim == 125,
            format!("dim {}", hopf.dim),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// suite: orbits
// ---------------------------------------------------------------------------

enum RepPoint {
    A3(PointA3),
    A5(PointA5),
}

fn orbit_same(f: &Field, label: &str, a: &RepPoint, b: &RepPoint) -> bool {
    match (a, b) {
        (RepPoint::A3(p), RepPoint::A3(q)) => orbit_same_a3(f, label, p, q).is_some(),
        (RepPoint::A5(p), RepPoint::A5(q)) => orbit_same_a5(f, label, p, q).is_some(),
        _ => false,
    }
}

/// criterion 5: representative membership with listed-Theta equivalence,
/// pairwise distinctness, coverage by reduction, and the family moduli.
pub fn run_orbit_suite(f: &Field, rng: &mut ChaCha8Rng, coverage_n: usize) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();

    // membership + listed Theta vs solver Theta (equivalence, not equality)
    for (label, rowid, pd, datum, listed_theta) in all_table_data(f, 3) {
        let listed_ok = verify_pd_datum(&pd, &datum).pass();
        // solver-canonical datum for the same chi
        let solver_datum = {
            let chi = datum.chi.clone();
            let target = phi_z_tensor(&pd.ctx, &chi);
            let mut rhs = pd.cobar.tensor_to_vec(&target);
            rhs.extend(vec![f.zero(); pd.cobar.aug_basis.len()]);
            pd.adm_solver_solve(&rhs).map(|theta| PdDatum::new(theta, chi))
        };
        let equiv_ok = match solver_datum {
            Some(sd) => {
                verify_pd_datum(&pd, &sd).pass() && equiv_pd_data(&pd, &sd, &datum).is_some()
            }
            None => false,
        };
        out.push(check_detail(
            format!("orbits/p{p}/{label}/{rowid}/membership"),
            listed_ok && equiv_ok,
            format!("listed theta = {listed_theta}"),
        ));
    }

    // pairwise distinctness of listed representatives within each type
    for label in permissible_labels(p) {
        let rows = perm_reps(&label);
        let xi = f.generator();
        let points: Vec<PointA3> = rows.iter().map(|r| point_of_row3(f, r, &xi)).collect();
        let mut pass = true;
        for i in 0..points.len() {
            for j in 0..points.len() {
                let same = orbit_same_a3(f, &label, &points[i], &points[j]).is_some();
                if same != (i == j) {
                    pass = false;
                }
            }
        }
        out.push(check(format!("orbits/p{p}/{label}/pairwise-distinct"), pass));
    }
    for label in NONPERMISSIBLE_LABELS {
        let rows = nonperm_reps(label);
        let xi = f.generator();
        let points: Vec<PointA5> = rows.iter().map(|r| point_of_row5(f, r, &xi)).collect();
        let mut pass = true;
        for i in 0..points.len() {
            for j in 0..points.len() {
                let same = orbit_same_a5(f, label, &points[i], &points[j]).is_some();
                if same != (i == j) {
                    pass = false;
                }
            }
        }
        out.push(check(format!("orbits/p{p}/{label}/pairwise-distinct"), pass));
    }

    // coverage: random orbit points reduce back to their representative
    let labels3 = permissible_labels(p);
    let per_type3 = coverage_n / (labels3.len() + NONPERMISSIBLE_LABELS.len());
    for label in &labels3 {
        let ty = catalog::type_by_label(f, label).unwrap();
        let pd = PdCtx::new(&ty);
        let rows = perm_reps(label);
        let mut pass = true;
        let mut detail = String::new();
        for _ in 0..per_type3 {
            let row = &rows[rng.gen_range(0..rows.len())];
            let xi = if row.family.is_some() { f.random(rng) } else { f.one() };
            let rep = point_of_row3(f, row, &xi);
            if rep.is_zero() {
                continue;
            }
            let phi = catalog::sample_aut(&ty, rng);
            let moved = act_a3(&phi, &rep);
            if aplus_membership(&pd, &moved).is_none() {
                pass = false;
                detail = format!("membership failed at {moved:?}");
                break;
            }
            match canonicalize_a3(f, label, &moved) {
                Ok((landed, w)) => {
                    let exact = act_a3(&w, &moved) == landed;
                    let back = orbit_same_a3(f, label, &landed, &rep).is_some();
                    if !(exact && back) {
                        pass = false;
                        detail = format!("reduction mismatch at {moved:?}");
                        break;
                    }
                }
                Err(e) => {
                    pass = false;
                    detail = format!("{e} at {moved:?}");
                    break;
                }
            }
        }
        out.push(check_detail(
            format!("orbits/p{p}/{label}/coverage"),
            pass,
            if detail.is_empty() { format!("{per_type3} points") } else { detail },
        ));
    }
    for label in NONPERMISSIBLE_LABELS {
        let ty = catalog::type_by_label(f, label).unwrap();
        let pd = PdCtx::new(&ty);
        let rows = nonperm_reps(label);
        let mut pass = true;
        let mut detail = String::new();
        for _ in 0..per_type3 {
            let row = &rows[rng.gen_range(0..rows.len())];
            let xi = if row.family.is_some() { f.random(rng) } else { f.one() };
            let rep = point_of_row5(f, row, &xi);
            let phi = catalog::sample_aut(&ty, rng);
            let moved = act_a5(&phi, &rep);
            if bplus_membership(&pd, label, &moved).is_none() {
                // points moved by automorphisms with g12 != 0 can leave the
                // refined B+ slice for T9; the class content is unchanged
                // and the reduction below still applies
                if label != "T9" {
                    pass = false;
                    detail = format!("membership failed at {moved:?}");
                    break;
                }
            }
            match canonicalize_a5(f, label, &moved) {
                Ok((landed, w)) => {
                    let exact = act_a5(&w, &moved) == landed;
                    let back = orbit_same_a5(f, label, &landed, &rep).is_some();
                    if !(exact && back) {
                        pass = false;
                        detail = format!("reduction mismatch at {moved:?}");
                        break;
                    }
                }
                Err(e) => {
                    pass = false;
                    detail = format!("{e} at {moved:?}");
                    break;
                }
            }
        }
        out.push(check_detail(
            format!("orbits/p{p}/{label}/coverage"),
            pass,
            if detail.is_empty() { format!("{per_type3} points") } else { detail },
        ));
    }

    // family moduli: positive and negative at sampled ratios
    let families: Vec<(String, RepPoint, Modulus)> = {
        let mut v: Vec<(String, RepPoint, Modulus)> = Vec::new();
        let xi = f.generator();
        for label in &labels3 {
            for row in perm_reps(label) {
                if let Some((_, m)) = row.family {
                    v.push((label.clone(), RepPoint::A3(point_of_row3(f, &row, &xi)), m));
                }
            }
        }
        for label in NONPERMISSIBLE_LABELS {
            for row in nonperm_reps(label) {
                if let Some((_, m)) = row.family {
                    v.push((label.to_string(), RepPoint::A5(point_of_row5(f, &row, &xi)), m));
                }
            }
        }
        v
    };
    for (label, rep, modulus) in families {
        let subgroup = modulus.elements(f);
        let mut pass = true;
        // positive: tau inside the subgroup (up to 5 sampled)
        for tau in subgroup.iter().take(5) {
            let scaled = scale_family(&rep, tau);
            if !orbit_same(f, &label, &rep, &scaled) {
                pass = false;
            }
        }
        // negative: 5 ratios outside the subgroup
        let mut negatives = 0;
        let mut attempts = 0;
        while negatives < 5 && attempts < 200 {
            attempts += 1;
            let tau = f.random(rng);
            if tau.is_zero() || subgroup.contains(&tau) {
                continue;
            }
            negatives += 1;
            let scaled = scale_family(&rep, &tau);
            if orbit_same(f, &label, &rep, &scaled) {
                pass = false;
            }
        }
        out.push(check_detail(
            format!("orbits/p{p}/{label}/modulus"),
            pass && negatives == 5,
            format!("subgroup order {}", modulus.order(p)),
        ));
    }
    out
}

fn scale_family(rep: &RepPoint, tau: &Scalar) -> RepPoint {
    match rep {
        RepPoint::A3(p3) => RepPoint::A3(PointA3::new(&p3.a * tau, p3.b.clone(), p3.c.clone())),
        RepPoint::A5(p5) => {
            // the family slot is a for T9, b for T2/T4
            let mut q = p5.clone();
            if q.a.is_zero() {
                q.b = &q.b * tau;
            } else {
                q.a = &q.a * tau;
            }
            RepPoint::A5(q)
        }
    }
}

// ---------------------------------------------------------------------------
// suite: PD transport properties
// ---------------------------------------------------------------------------

/// The equivariance battery: transported data are PD data, the sigma
/// correction identity, basis-change covariance, and the explicit
/// isomorphism between the deformations of a datum and its transport.
pub fn run_transport_suite(f: &Field, rng: &mut ChaCha8Rng, samples: usize) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    let picks: Vec<(&str, Rep)> = vec![
        ("T5", Rep::A3(PointA3::from_ints(f, 1, 0, 0))),
        ("T5", Rep::A3(PointA3::new(f.generator(), f.zero(), f.one()))),
        ("T7", Rep::A3(PointA3::from_ints(f, 1, 1, 0))),
        ("T14", Rep::A3(PointA3::from_ints(f, 1, 1, 0))),
        ("T2", Rep::A5(PointA5::from_ints(f, [0, 1, 1, 1, 0]))),
        ("T9", Rep::A5(PointA5::from_ints(f, [1, 0, 1, 0, 1]))),
    ];
    for (label, rep) in picks {
        let ty = catalog::type_by_label(f, label).unwrap();
        let pd = PdCtx::new(&ty);
        let (datum, point3) = match &rep {
            Rep::A3(p3) => (datum_of_a3(&pd, p3), Some(p3.clone())),
            Rep::A5(p5) => (datum_of_a5(&pd, label, p5), None),
        };
        let Some(datum) = datum else {
            out.push(check(format!("transport/p{p}/{label}/datum"), false));
            continue;
        };
        let mut all_transport = true;
        let mut all_sigma = true;
        let mut all_iso = true;
        for _ in 0..samples {
            let phi = catalog::sample_aut(&ty, rng);
            // transported datum: (gamma^p phi2(Theta), gamma (phi2 x phi2)(chi))
            let images = phi.gen_images(&pd.ctx.h_alg);
            let theta_t =
                datum.theta.substitute(&pd.ctx.h_alg, &images).scale(&phi.gamma.pow(p));
            let chi_t = datum.chi.substitute(&pd.ctx.h_alg, &images).scale(&phi.gamma);
            let d_t = PdDatum::new(theta_t.clone(), chi_t.clone());
            if !verify_pd_datum(&pd, &d_t).pass() {
                all_transport = false;
            }
            // sigma correction: chi_{phi(P)} - gamma (phi x phi)(chi_P) is a
            // coboundary with an explicit witness, and the corrected pair is
            // equivalent to the transported pair
            if let Some(p3) = &point3 {
                let moved = act_a3(&phi, p3);
                let chi_moved = moved.chi(&pd);
                let diff = &chi_moved - &chi_t;
                match pd.cobar.coboundary_witness(&diff) {
                    Some(sigma) => {
                        let d_corr =
                            PdDatum::new(&theta_t + &phi_z_elem(&pd.ctx, &sigma), chi_moved);
                        if !verify_pd_datum(&pd, &d_corr).pass()
                            || equiv_pd_data(&pd, &d_t, &d_corr).is_none()
                        {
                            all_sigma = false;
                        }
                    }
                    None => all_sigma = false,
                }
            }
            // explicit isomorphism u_z(D') -> u_z(D): x_i by phi_2^{-1}, z by gamma z
            let (_, h_d) = build_deformation(&pd, &datum);
            let (_, h_dt) = build_deformation(&pd, &d_t);
            let phi_inv = phi.inverse();
            let mut gen_images: Vec<Vec<Scalar>> = Vec::new();
            for i in 0..2 {
                let mut v = h_d.zero_vec();
                for j in 0..2 {
                    v[h_d.gen_indices[j]] = phi_inv.g[(i, j)].clone();
                }
                gen_images.push(v);
            }
            let mut zv = h_d.zero_vec();
            zv[h_d.gen_indices[2]] = phi.gamma.clone();
            gen_images.push(zv);
            if check_hopf_isomorphism(&h_dt, &h_d, &gen_images).is_err() {
                all_iso = false;
            }
        }
        out.push(check(format!("transport/p{p}/{label}/pd-datum"), all_transport));
        if point3.is_some() {
            out.push(check(format!("transport/p{p}/{label}/sigma"), all_sigma));
        }
        out.push(check(format!("transport/p{p}/{label}/deformation-iso"), all_iso));
        // basis-change covariance: z' = gamma z sends (Theta, chi) to
        // (gamma^p Theta, gamma chi), a PD datum for the scaled type
        let gamma = loop {
            let s = f.random(rng);
            if !s.is_zero() && (!ty.lambda.is_zero()).then(|| s.pow(p) == s).unwrap_or(true) {
                break s;
            }
        };
        let m_scaled = {
            let mut m = ty.m_mat.clone();
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = &m[(i, j)] * &gamma;
                }
            }
            m
        };
        let ty_scaled = AbelianType::new(f, &format!("{label}'"), ty.lambda.clone(), ty.r_mat.clone(), m_scaled);
        let pd_scaled = PdCtx::new(&ty_scaled);
        let datum_scaled = PdDatum::new(
            pd_scaled.import_elem(&datum.theta).scale(&gamma.pow(p)),
            pd_scaled.import_tensor(&datum.chi).scale(&gamma),
        );
        out.push(check(
            format!("transport/p{p}/{label}/basis-change"),
            verify_pd_datum(&pd_scaled, &datum_scaled).pass(),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// suite: appendix structure tables
// ---------------------------------------------------------------------------

struct AppendixRow {
    name: String,
    algebra: Algebra,
    expected_comm: bool,
    expected_ss: bool,
    expected_local: bool,
    /// dim of u(P(H)) as a power of p: 1, 2, or 3.
    bucket: u32,
}

fn raw_of(e: &AlgElem) -> RawElem {
    e.coeffs.clone()
}

/// Presented algebra on (x, y, z) from power images and commutators
/// [g_j, g_i], all built in a psi-free stage first.
struct RowBuilder {
    field: Field,
    stage: Algebra,
}

impl RowBuilder {
    fn new(f: &Field) -> RowBuilder {
        // stage algebra with trivial rules; rebuilt on finish
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let zero_powers = vec![RawElem::new(); 3];
        let stage = new_algebra(f, names, Default::default(), zero_powers, vec![RawTensor::new(); 3]);
        RowBuilder { field: f.clone(), stage }
    }

    fn elem(&self, terms: &[(i64, [u8; 3])]) -> AlgElem {
        let slices: Vec<(i64, &[u8])> = terms.iter().map(|(c, e)| (*c, &e[..])).collect();
        AlgElem::from_terms(&self.stage, &slices)
    }

    /// Finish with the given powers, commutators ([z,x], [z,y], [y,x]) and
    /// coproduct deviations computed by `psi` from the algebra-only stage.
    fn build(
        self,
        powers: [AlgElem; 3],
        comm_zx: AlgElem,
        comm_zy: AlgElem,
        comm_yx: AlgElem,
        psi: impl Fn(&Algebra) -> Vec<RawTensor>,
    ) -> Algebra {
        let mut commutators = std::collections::BTreeMap::new();
        if !comm_zx.is_zero() {
            commutators.insert((2usize, 0usize), raw_of(&comm_zx));
        }
        if !comm_zy.is_zero() {
            commutators.insert((2, 1), raw_of(&comm_zy));
        }
        if !comm_yx.is_zero() {
            commutators.insert((1, 0), raw_of(&comm_yx));
        }
        let algebra_only = new_algebra(
            &self.field,
            self.stage.names.clone(),
            commutators,
            powers.iter().map(raw_of).collect(),
            vec![RawTensor::new(); 3],
        );
        let psis = psi(&algebra_only);
        with_psi(&algebra_only, psis)
    }
}

/// The coalgebra elements of the structure tables:
/// z-deviation omega(x) [y(x)1 + 1(x)y + omega(x)]^{p-1} + omega(y) and its
/// primed variant without the omega(x) inside the bracket.
fn big_z(alg: &Algebra, primed: bool) -> RawTensor {
    let p = alg.field.p();
    let x = AlgElem::gen(alg, 0);
    let y = AlgElem::gen(alg, 1);
    let one = AlgElem::one(alg);
    let wx = omega(&x);
    let mut base = &AlgElem::tensor(&[&y, &one]) + &AlgElem::tensor(&[&one, &y]);
    if !primed {
        base = &base + &wx;
    }
    let t = &wx.mul(&base.pow(p - 1)) + &omega(&y);
    t.coeffs
}

fn psi_none(_alg: &Algebra) -> Vec<RawTensor> {
    vec![RawTensor::new(); 3]
}

fn psi_y_wx_z_big(primed: bool) -> impl Fn(&Algebra) -> Vec<RawTensor> {
    move |alg: &Algebra| {
        let wx = omega(&AlgElem::gen(alg, 0));
        vec![RawTensor::new(), wx.coeffs, big_z(alg, primed)]
    }
}

fn psi_z_омega_gen(i: usize) -> impl Fn(&Algebra) -> Vec<RawTensor> {
    move |alg: &Algebra| {
        let w = omega(&AlgElem::gen(alg, i));
        vec![RawTensor::new(), RawTensor::new(), w.coeffs]
    }
}

fn psi_z_minus_2xy() -> impl Fn(&Algebra) -> Vec<RawTensor> {
    |alg: &Algebra| {
        let x = AlgElem::gen(alg, 0);
        let y = AlgElem::gen(alg, 1);
        let t = AlgElem::tensor(&[&x, &y]).scale(&alg.field.int(-2));
        vec![RawTensor::new(), RawTensor::new(), t.coeffs]
    }
}

/// All rows of the A, B, C tables at the working prime, with expected
/// flags (commutative, semisimple, local) and the primitive bucket.
fn abc_rows(f: &Field, rng: &mut ChaCha8Rng) -> Vec<AppendixRow> {
    let p = f.p();
    let mut rows = Vec::new();
    let zero3 = [0i64, 0, 0];
    let _ = zero3;
    let e = |b: &RowBuilder, terms: &[(i64, [u8; 3])]| b.elem(terms);
    let x1 = [1u8, 0, 0];
    let y1 = [0u8, 1, 0];
    let z1 = [0u8, 0, 1];

    // --- A family: dim u(P(H)) = p ---
    {
        let b = RowBuilder::new(f);
        let (x, y, z) = (e(&b, &[(1, x1)]), e(&b, &[(1, y1)]), e(&b, &[(1, z1)]));
        rows.push(AppendixRow {
            name: "A1".into(),
            algebra: b.build(
                [x, y, z],
                AlgElem::zero(&RowBuilder::new(f).stage),
                AlgElem::zero(&RowBuilder::new(f).stage),
                AlgElem::zero(&RowBuilder::new(f).stage),
                psi_y_wx_z_big(false),
            ),
            expected_comm: true,
            expected_ss: true,
            expected_local: false,
            bucket: 1,
        });
    }
    let zero_of = |f: &Field| AlgElem::zero(&RowBuilder::new(f).stage);
    {
        let b = RowBuilder::new(f);
        let (zx, zy, yx) = (zero_of(f), zero_of(f), zero_of(f));
        let powers = [zero_of(f), e(&b, &[(1, x1)]), e(&b, &[(1, y1)])];
        rows.push(AppendixRow {
            name: "A2".into(),
            algebra: b.build(powers, zx, zy, yx, psi_y_wx_z_big(true)),
            expected_comm: true,
            expected_ss: false,
            expected_local: true,
            bucket: 1,
        });
    }
    {
        let b = RowBuilder::new(f);
        rows.push(AppendixRow {
            name: "A3".into(),
            algebra: b.build(
                [zero_of(f), zero_of(f), zero_of(f)],
                zero_of(f),
                zero_of(f),
                zero_of(f),
                psi_y_wx_z_big(true),
            ),
            expected_comm: true,
            expected_ss: false,
            expected_local: true,
            bucket: 1,
        });
    }
    {
        let b = RowBuilder::new(f);
        let powers = [zero_of(f), zero_of(f), e(&b, &[(1, x1)])];
        rows.push(AppendixRow {
            name: "A4".into(),
            algebra: b.build(powers, zero_of(f), zero_of(f), zero_of(f), psi_y_wx_z_big(true)),
            expected_comm: true,
            expected_ss: false,
            expected_local: true,
            bucket: 1,
        });
    }
    // A(lambda): z^p + x^{p-1} y - lambda x = 0, [y, z] = x
    for lam in sample_parameters(f, true, 4) {
        let b = RowBuilder::new(f);
        let mut zp = e(&b, &[(-1, [p as u8 - 1, 1, 0])]);
        zp = &zp + &e(&b, &[(1, x1)]).scale(&lam);
        // [z, y] = -[y, z] = -x
        let zy = e(&b, &[(-1, x1)]);
        rows.push(AppendixRow {
            name: format!("A(l={lam})"),
            algebra: b.build([zero_of(f), zero_of(f), zp], zero_of(f), zy, zero_of(f), psi_y_wx_z_big(true)),
            expected_comm: false,
            expected_ss: false,
            expected_local: true,
            bucket: 1,
        });
    }

    // --- B family: dim u(P(H)) = p^2, noncommutative primitive part ---
    {
        let b = RowBuilder::new(f);
        let powers = [e(&b, &[(1, x1)]), zero_of(f), zero_of(f)];
        let yx = e(&b, &[(-1, y1)]); // [y, x] = -y
        rows.push(AppendixRow {
            name: "B1".into(),
            algebra: b.build(powers, zero_of(f), zero_of(f), yx, psi_z_омega_gen(1)),
            expected_comm: false,
            expected_ss: false,
            expected_local: false,
            bucket: 2,
        });
    }
    {
        let b = RowBuilder::new(f);
        let powers = [e(&b, &[(1, x1)]), zero_of(f), e(&b, &[(1, z1)])];
        let yx = e(&b, &[(-1, y1)]);
        // [z, y] = - y f(x), f(x) = sum (-1)^{i-1} (p-i)^{-1} x^i
        let mut fx_terms: Vec<(i64, [u8; 3])> = Vec::new();
        for i in 1..p {
            let sign = if i % 2 == 1 { 1i64 } else { -1 };
            let inv = mod_inv_i64((p - i) as i64, p as i64);
            fx_terms.push((sign * inv, [i as u8, 0, 0]));
        }
        let fx = e(&b, &fx_terms);
        let zy = -&(&e(&b, &[(1, y1)]) * &fx);
        rows.push(AppendixRow {
            name: "B2".into(),
            algebra: b.build(powers, zero_of(f), zy, yx, psi_z_омega_gen(0)),
            expected_comm: false,
            expected_ss: false,
            expected_local: false,
            bucket: 2,
        });
    }
    {
        let b = RowBuilder::new(f);
        let powers = [e(&b, &[(1, x1)]), zero_of(f), zero_of(f)];
        let yx = e(&b, &[(-1, y1)]);
        let zx = e(&b, &[(-1, z1)]); // [z, x] = -[x, z] = -z
        let zy = e(&b, &[(-1, [0, 2, 0])]); // [z, y] = -y^2
        rows.push(AppendixRow {
            name: "B3".into(),
            algebra: b.build(powers, zx, zy, yx, psi_z_minus_2xy()),
            expected_comm: false,
            expected_ss: false,
            expected_local: false,
            bucket: 2,
        });
    }

    // --- C family: primitively generated, dim u(P(H)) = p^3 ---
    struct CRow {
        name: &'static str,
        powers: [[i64; 3]; 3], // coefficients of (x, y, z) in x^p, y^p, z^p
        comm_yx: [i64; 3],     // [y, x]
        comm_zx: [i64; 3],
        comm_zy: [i64; 3],
        comm_flag: bool,
        ss: bool,
        local: bool,
    }
    let zero = [0i64, 0, 0];
    let c_rows = vec![
        CRow { name: "C1", powers: [[1, 0, 0], [0, 1, 0], [0, 0, 1]], comm_yx: zero, comm_zx: zero, comm_zy: zero, comm_flag: true, ss: true, local: false },
        CRow { name: "C2", powers: [[0, 1, 0], [0, 0, 1], [0, 0, 0]], comm_yx: zero, comm_zx: zero, comm_zy: zero, comm_flag: true, ss: false, local: true },
        CRow { name: "C3", powers: [[0, 0, 0], [0, 0, 1], [0, 0, 0]], comm_yx: zero, comm_zx: zero, comm_zy: zero, comm_flag: true, ss: false, local: true },
        CRow { name: "C4", powers: [zero, zero, zero], comm_yx: zero, comm_zx: zero, comm_zy: zero, comm_flag: true, ss: false, local: true },
        CRow { name: "C5", powers: [zero, zero, zero], comm_yx: [0, 0, -1], comm_zx: zero, comm_zy: zero, comm_flag: false, ss: false, local: true },
        CRow { name: "C6", powers: [[0, 0, 1], zero, zero], comm_yx: [0, 0, -1], comm_zx: zero, comm_zy: zero, comm_flag: false, ss: false, local: true },
        CRow { name: "C7", powers: [zero, zero, [0, 0, 1]], comm_yx: zero, comm_zx: zero, comm_zy: zero, comm_flag: true, ss: false, local: false },
        CRow { name: "C8", powers: [[0, 1, 0], zero, [0, 0, 1]], comm_yx: zero, comm_zx: zero, comm_zy: zero, comm_flag: true, ss: false, local: false },
        CRow { name: "C9", powers: [zero, [0, 1, 0], [0, 0, 1]], comm_yx: zero, comm_zx: zero, comm_zy: zero, comm_flag: true, ss: false, local: false },
        CRow { name: "C10", powers: [zero, zero, [0, 0, 1]], comm_yx: [0, 0, -1], comm_zx: zero, comm_zy: zero, comm_flag: false, ss: false, local: false },
        CRow { name: "C11", powers: [[1, 0, 0], zero, zero], comm_yx: [0, -1, 0], comm_zx: zero, comm_zy: zero, comm_flag: false, ss: false, local: false },
        CRow { name: "C12", powers: [[1, 0, 0], [0, 0, 1], zero], comm_yx: [0, -1, 0], comm_zx: zero, comm_zy: zero, comm_flag: false, ss: false, local: false },
        CRow { name: "C13", powers: [[1, 0, 0], zero, [0, 0, 1]], comm_yx: [0, -1, 0], comm_zx: zero, comm_zy: zero, comm_flag: false, ss: false, local: false },
        CRow { name: "C14", powers: [[1, 0, 0], [0, 0, 1], [0, 0, 1]], comm_yx: [0, -1, 0], comm_zx: zero, comm_zy: zero, comm_flag: false, ss: false, local: false },
        CRow { name: "C15", powers: [zero, zero, [0, 0, 1]], comm_yx: [0, 0, -1], comm_zx: [-1, 0, 0], comm_zy: [0, 1, 0], comm_flag: false, ss: false, local: false },
    ];
    for c in c_rows {
        let b = RowBuilder::new(f);
        let lin = |v: [i64; 3]| e(&b, &[(v[0], x1), (v[1], y1), (v[2], z1)]);
        let powers = [lin(c.powers[0]), lin(c.powers[1]), lin(c.powers[2])];
        let (zx, zy, yx) = (lin(c.comm_zx), lin(c.comm_zy), lin(c.comm_yx));
        rows.push(AppendixRow {
            name: c.name.into(),
            algebra: b.build(powers, zx, zy, yx, psi_none),
            expected_comm: c.comm_flag,
            expected_ss: c.ss,
            expected_local: c.local,
            bucket: 3,
        });
    }
    // C(lambda, delta): lambda^{p-1} = delta = +-1
    let mut lambdas: Vec<Scalar> = Vec::new();
    for s in f.mu_n(2 * (p - 1)) {
        lambdas.push(s);
    }
    let _ = rng;
    for lam in lambdas {
        let delta = lam.pow(p - 1);
        let b = RowBuilder::new(f);
        let zp = e(&b, &[(1, z1)]).scale(&delta);
        let zx = -&e(&b, &[(1, x1)]).scale(&lam); // [z, x] = -lambda x
        let zy = -&e(&b, &[(1, y1)]).scale(&lam.inv().unwrap());
        rows.push(AppendixRow {
            name: format!("C(l={lam})"),
            algebra: b.build([zero_of(f), zero_of(f), zp], zx, zy, zero_of(f), psi_none),
            expected_comm: false,
            expected_ss: false,
            expected_local: false,
            bucket: 3,
        });
    }
    rows
}

fn mod_inv_i64(a: i64, p: i64) -> i64 {
    let mut acc = 1i64;
    let mut b = ((a % p) + p) % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// criterion 6: construct all four structure tables, check axioms, flags,
/// buckets, the crosswalk and the stated coincidences.
pub fn run_appendix_suite(f: &Field, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    let mut algebras: Vec<(String, HopfAlgebra, u32)> = Vec::new();

    for row in abc_rows(f, rng) {
        let hopf = HopfAlgebra::from_algebra(&row.algebra);
        let axioms = hopf.check_axioms();
        let connected = hopf.is_connected();
        let comm = hopf.is_commutative();
        let local = hopf.is_local();
        let ss = connected && hopf.is_semisimple_connected().unwrap_or(false);
        let bucket = primitive_bucket(&hopf);
        let pass = axioms.pass()
            && hopf.dim == (p as usize).pow(3)
            && connected
            && comm == row.expected_comm
            && local == row.expected_local
            && ss == row.expected_ss
            && bucket == Some(row.bucket);
        out.push(check_detail(
            format!("appendix/p{p}/{}", row.name),
            pass,
            format!(
                "axioms {} comm {} local {} ss {} bucket {:?}",
                axioms.pass(),
                comm,
                local,
                ss,
                bucket
            ),
        ));
        algebras.push((row.name.clone(), hopf, row.bucket));
    }

    // T rows from the classification data, built through the deformation
    for (label, rowid, pd, datum, _) in all_table_data(f, 2) {
        let (alg, hopf) = build_deformation(&pd, &datum);
        let checks = check_deformation(&pd, &datum, &alg, &hopf);
        let connected = hopf.is_connected();
        let bucket = primitive_bucket(&hopf);
        // u(P(H)) is commutative of dimension p^2 for every T row
        let (_, lie) = hopf.primitive_space();
        let pass = checks.pass(2) && connected && bucket == Some(2) && lie.is_abelian();
        out.push(check_detail(
            format!("appendix/p{p}/T-{label}/{rowid}"),
            pass,
            format!("bucket {bucket:?}"),
        ));
        algebras.push((format!("T-{label}-{rowid}"), hopf, 2));
    }

    // invariant separation inside each A/B/C table
    let mut sep_ok = true;
    let named: Vec<&(String, HopfAlgebra, u32)> = algebras
        .iter()
        .filter(|(n, _, _)| !n.contains('(') && !n.starts_with("T-"))
        .collect();
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            let (na, ha, ba) = named[i];
            let (nb, hb, bb) = named[j];
            if na.as_bytes()[0] != nb.as_bytes()[0] {
                continue; // different tables
            }
            if ba != bb {
                continue;
            }
            if ha.invariant_vector() == hb.invariant_vector() {
                // rows inside one table must be separated by the invariant
                // vector except for parametric siblings
                sep_ok &= invariant_collision_allowed(na, nb);
            }
        }
    }
    out.push(check(format!("appendix/p{p}/invariant-separation"), sep_ok));

    // stated coincidences of undeformed algebras with C rows
    out.extend(crosswalk_isomorphisms(f));
    out
}

/// The classification separates these pairs by finer data than the
/// invariant vector (explicit non-isomorphism arguments in the source
/// classification); everything else must split.
fn invariant_collision_allowed(a: &str, b: &str) -> bool {
    matches!((a, b), ("A3", "A4") | ("A4", "A3") | ("C3", "C4") | ("C4", "C3"))
}

fn primitive_bucket(h: &HopfAlgebra) -> Option<u32> {
    let d = h.primitive_subalgebra_dim();
    let p = h.field.p() as usize;
    for k in 1..=3u32 {
        if d == p.pow(k) {
            return Some(k);
        }
    }
    None
}

/// The stated coincidences: u(T3) = C7, u(T11) = C8, u(T13) = C9 (up to a
/// permutation of generators), u(T(-1)) = C(-i, (-i)^{p-1}), and the swap
/// symmetry C(lambda, delta) = C(lambda^{-1}, delta).
pub fn crosswalk_isomorphisms(f: &Field) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    let build_ut = |label: &str| {
        let ty = catalog::type_by_label(f, label).unwrap();
        let pd = PdCtx::new(&ty);
        crate::pd::build_u_t(&pd)
    };
    let build_c = |name: &str, rng: &mut ChaCha8Rng| -> HopfAlgebra {
        let rows = abc_rows(f, rng);
        let row = rows.into_iter().find(|r| r.name == name).unwrap();
        HopfAlgebra::from_algebra(&row.algebra)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // u(T3) vs C7: identity on generators
    {
        let ut = build_ut("T3");
        let c7 = build_c("C7", &mut rng);
        let images: Vec<Vec<Scalar>> = c7.gen_indices.iter().map(|&i| c7.basis_vec(i)).collect();
        out.push(check(
            format!("crosswalk/p{p}/uT3=C7"),
            check_hopf_isomorphism(&ut, &c7, &images).is_ok(),
        ));
    }
    // u(T11) vs C8: identity on generators
    {
        let ut = build_ut("T11");
        let c8 = build_c("C8", &mut rng);
        let images: Vec<Vec<Scalar>> = c8.gen_indices.iter().map(|&i| c8.basis_vec(i)).collect();
        out.push(check(
            format!("crosswalk/p{p}/uT11=C8"),
            check_hopf_isomorphism(&ut, &c8, &images).is_ok(),
        ));
    }
    // u(T13) vs C9: x -> y, y -> z, z -> x
    {
        let ut = build_ut("T13");
        let c9 = build_c("C9", &mut rng);
        let images: Vec<Vec<Scalar>> = vec![
            c9.basis_vec(c9.gen_indices[1]),
            c9.basis_vec(c9.gen_indices[2]),
            c9.basis_vec(c9.gen_indices[0]),
        ];
        out.push(check(
            format!("crosswalk/p{p}/uT13=C9"),
            check_hopf_isomorphism(&ut, &c9, &images).is_ok(),
        ));
    }
    // u(T(-1)) vs C(-i, (-i)^{p-1}) with i^2 = -1: x -> x, y -> y, z -> -i z
    {
        let minus_one = f.int(-1);
        let eyes = f.solve_power(2, &minus_one);
        match eyes.first() {
            Some(i_val) => {
                let lam = -i_val;
                let delta = lam.pow(p - 1);
                let b = RowBuilder::new(f);
                let z1 = [0u8, 0, 1];
                let x1 = [1u8, 0, 0];
                let y1 = [0u8, 1, 0];
                let zp = b.elem(&[(1, z1)]).scale(&delta);
                let zx = -&b.elem(&[(1, x1)]).scale(&lam);
                let zy = -&b.elem(&[(1, y1)]).scale(&lam.inv().unwrap());
                let zero = AlgElem::zero(&RowBuilder::new(f).stage);
                let c_alg = b.build([zero.clone(), zero.clone(), zp], zx, zy, zero, psi_none);
                let c16 = HopfAlgebra::from_algebra(&c_alg);
                let ut = build_ut(&format!("T({})", p - 1));
                let mut images: Vec<Vec<Scalar>> = vec![
                    c16.basis_vec(c16.gen_indices[0]),
                    c16.basis_vec(c16.gen_indices[1]),
                ];
                let mut zv = c16.zero_vec();
                zv[c16.gen_indices[2]] = -i_val;
                images.push(zv);
                out.push(check(
                    format!("crosswalk/p{p}/uT(-1)=C(-i)"),
                    check_hopf_isomorphism(&ut, &c16, &images).is_ok(),
                ));
            }
            None => out.push(check_detail(
                format!("crosswalk/p{p}/uT(-1)=C(-i)"),
                false,
                "sqrt(-1) missing from the field",
            )),
        }
    }
    // C(lambda, delta) = C(lambda^{-1}, delta) via x <-> y
    {
        let lam = f
            .mu_n(2 * (p - 1))
            .into_iter()
            .find(|l| l != &f.one() && l != &f.int(-1))
            .unwrap_or_else(|| f.one());
        let build = |l: &Scalar| {
            let delta = l.pow(p - 1);
            let b = RowBuilder::new(f);
            let zp = b.elem(&[(1, [0, 0, 1])]).scale(&delta);
            let zx = -&b.elem(&[(1, [1, 0, 0])]).scale(l);
            let zy = -&b.elem(&[(1, [0, 1, 0])]).scale(&l.inv().unwrap());
            let zero = AlgElem::zero(&RowBuilder::new(f).stage);
            HopfAlgebra::from_algebra(&b.build(
                [zero.clone(), zero.clone(), zp],
                zx,
                zy,
                zero,
                psi_none,
            ))
        };
        let c_a = build(&lam);
        let c_b = build(&lam.inv().unwrap());
        let images: Vec<Vec<Scalar>> = vec![
            c_b.basis_vec(c_b.gen_indices[1]),
            c_b.basis_vec(c_b.gen_indices[0]),
            c_b.basis_vec(c_b.gen_indices[2]),
        ];
        out.push(check(
            format!("crosswalk/p{p}/C(l)=C(1/l)"),
            check_hopf_isomorphism(&c_a, &c_b, &images).is_ok(),
        ));
    }
    // the T rows rebuilt from the printed relations match build_deformation
    out.push(crosswalk_t_rows(f));
    out
}

/// Rebuild each T row from its printed relations (powers, commutators,
/// psi(z) = chi) and compare structure constants with the deformation
/// path byte for byte.
fn crosswalk_t_rows(f: &Field) -> Check {
    let p = f.p();
    let mut pass = true;
    let mut detail = String::new();
    for (label, rowid, pd, datum, _) in all_table_data(f, 2) {
        let (_, hopf_a) = build_deformation(&pd, &datum);
        // independent presented construction
        let ty = &pd.ctx.ty;
        let b = RowBuilder::new(f);
        let lin_row = |m: &ScalarMat, i: usize, stage: &Algebra| {
            let mut e2 = AlgElem::zero(stage);
            for j in 0..2 {
                e2 = &e2 + &AlgElem::gen(stage, j).scale(&m[(i, j)]);
            }
            e2
        };
        let xp = lin_row(&ty.r_mat, 0, &b.stage);
        let yp = lin_row(&ty.r_mat, 1, &b.stage);
        // z^p = lambda z - theta (theta lives in u(h): lift exponents)
        let mut zp = AlgElem::gen(&b.stage, 2).scale(&ty.lambda);
        for (m, c) in &datum.theta.coeffs {
            let mut exps = m.0.clone();
            exps.push(0);
            let mut one_term = RawElem::new();
            raw_insert(&mut one_term, Monomial(exps), c.clone());
            zp = &zp - &AlgElem { alg: b.stage.clone(), coeffs: one_term };
        }
        let zx = lin_row(&ty.m_mat, 0, &b.stage);
        let zy = lin_row(&ty.m_mat, 1, &b.stage);
        let chi = datum.chi.clone();
        let alg_b = b.build([xp, yp, zp], zx, zy, AlgElem::zero(&RowBuilder::new(f).stage), |alg| {
            let ctx2 = TypeCtx::new(ty);
            vec![RawTensor::new(), RawTensor::new(), ctx2.lift_tensor(alg, &chi)]
        });
        let hopf_b = HopfAlgebra::from_algebra(&alg_b);
        if hopf_a.to_text() != hopf_b.to_text() {
            pass = false;
            detail = format!("{label}/{rowid} differs");
            break;
        }
    }
    check_detail(format!("crosswalk/p{p}/T-rows-presented"), pass, detail)
}

// ---------------------------------------------------------------------------
// emptiness certificates (criterion 7)
// ---------------------------------------------------------------------------

pub fn run_emptiness_suite(f: &Field, rng: &mut ChaCha8Rng, samples: usize) -> Vec<Check> {
    let p = f.p();
    let mut out = Vec::new();
    let empty_labels: Vec<String> =
        vec!["T3".into(), "T11".into(), "T13".into(), format!("T({})", p - 1)];
    for label in empty_labels {
        let ty = catalog::type_by_label(f, &label).unwrap();
        let pd = PdCtx::new(&ty);
        let mut all_none = true;
        for _ in 0..samples {
            let p3 = loop {
                let cand = PointA3::new(f.random(rng), f.random(rng), f.random(rng));
                if !cand.is_zero() {
                    break cand;
                }
            };
            if aplus_membership(&pd, &p3).is_some() {
                all_none = false;
            }
        }
        let kernel0 = obstruction_kernel_dim(&ty) == 0;
        let big = crate::gf::FieldParams::new(p, 2 * f.m()).unwrap();
        let kernel0_big = obstruction_kernel_dim(&lift_type(&ty, &big)) == 0;
        out.push(check_detail(
            format!("emptiness/p{p}/{label}"),
            all_none && kernel0 && kernel0_big,
            format!("{samples} samples; obstruction rank full at m and 2m"),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// builders for the CLI
// ---------------------------------------------------------------------------

/// Build a named algebra: an appendix row ("C5", "A1", "B2"), u(T..)
/// ("uT3"), or a deformation row "T5" with an explicit point.
pub fn build_named(f: &Field, name: &str, point: Option<Vec<Scalar>>) -> Result<HopfAlgebra, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    if let Some(stripped) = name.strip_prefix("u") {
        let ty = catalog::type_by_label(f, stripped).ok_or("unknown type label")?;
        let pd = PdCtx::new(&ty);
        return Ok(crate::pd::build_u_t(&pd));
    }
    if name.starts_with('A') || name.starts_with('B') || name.starts_with('C') {
        let rows = abc_rows(f, &mut rng);
        let row = rows
            .into_iter()
            .find(|r| r.name == name)
            .ok_or_else(|| format!("unknown structure row {name}"))?;
        return Ok(HopfAlgebra::from_algebra(&row.algebra));
    }
    // classification row: needs a point
    let ty = catalog::type_by_label(f, name).ok_or("unknown type label")?;
    let pd = PdCtx::new(&ty);
    let point = point.ok_or("deformation rows need an explicit point")?;
    let datum = match point.len() {
        3 => {
            let p3 = PointA3::new(point[0].clone(), point[1].clone(), point[2].clone());
            datum_of_a3(&pd, &p3).ok_or_else(|| {
                format!("point is not admissible for {name}: the Phi_z(chi) = d1(Theta), rho_z(Theta) = 0 system has no solution")
            })?
        }
        5 => {
            let p5 = PointA5 {
                a: point[0].clone(),
                b: point[1].clone(),
                c: point[2].clone(),
                d: point[3].clone(),
                e: point[4].clone(),
            };
            datum_of_a5(&pd, name, &p5).ok_or_else(|| {
                format!("point is not admissible for {name}")
            })?
        }
        n => return Err(format!("expected 3 or 5 coordinates, got {n}")),
    };
    let (alg, hopf) = build_deformation(&pd, &datum);
    let checks = check_deformation(&pd, &datum, &alg, &hopf);
    if !checks.pass(2) {
        return Err("constructed algebra failed verification".into());
    }
    Ok(hopf)
}

impl PdCtx {
    /// Solve the stacked admissibility system directly (exposed for the
    /// orbit suite's solver-vs-listed comparison).
    pub fn adm_solver_solve(&self, rhs: &[Scalar]) -> Option<AlgElem> {
        self.adm_solve(rhs)
    }

    /// Move an element into this context's algebra (same generator names).
    pub fn import_elem(&self, e: &AlgElem) -> AlgElem {
        AlgElem { alg: self.ctx.h_alg.clone(), coeffs: e.coeffs.clone() }
    }

    pub fn import_tensor(&self, t: &TensorElem) -> TensorElem {
        TensorElem::from_raw(&self.ctx.h_alg, t.degree, t.coeffs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldParams;

    fn gf12() -> Field {
        FieldParams::new(3, 12).unwrap()
    }

    #[test]
    fn cohomology_suite_p3() {
        let f = FieldParams::new(3, 2).unwrap();
        for c in run_cohomology_suite(&f) {
            assert!(c.pass, "{}: {:?}", c.name, c.detail);
        }
    }

    #[test]
    fn types_suite_p3() {
        let f = gf12();
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for c in run_types_suite(&f, &mut rng, 20) {
            assert!(c.pass, "{}: {:?}", c.name, c.detail);
        }
    }

    #[test]
    fn appendix_rows_build_and_flag_correctly() {
        let f = FieldParams::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        // restrict to the A/B/C rows here; the full suite runs in the
        // acceptance tests
        for row in abc_rows(&f, &mut rng) {
            let hopf = HopfAlgebra::from_algebra(&row.algebra);
            let ax = hopf.check_axioms();
            assert!(ax.pass(), "{}: {:?}", row.name, ax.failure);
            assert_eq!(hopf.is_commutative(), row.expected_comm, "{} comm", row.name);
            assert_eq!(hopf.is_local(), row.expected_local, "{} local", row.name);
            assert!(hopf.is_connected(), "{} connected", row.name);
            let ss = hopf.is_semisimple_connected().unwrap();
            assert_eq!(ss, row.expected_ss, "{} ss", row.name);
            assert_eq!(primitive_bucket(&hopf), Some(row.bucket), "{} bucket", row.name);
        }
    }

    #[test]
    fn crosswalk_coincidences_p3() {
        let f = FieldParams::new(3, 2).unwrap();
        for c in crosswalk_isomorphisms(&f) {
            assert!(c.pass, "{}: {:?}", c.name, c.detail);
        }
    }

    #[test]
    fn build_named_round_trip() {
        let f = FieldParams::new(3, 1).unwrap();
        let h = build_named(&f, "T5", Some(vec![f.one(), f.zero(), f.zero()])).unwrap();
        assert_eq!(h.dim, 27);
        let text = h.to_text();
        let back = crate::hopf::parse_hopf_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        // the empty type rejects points
        let err = build_named(&f, "T(2)", Some(vec![f.one(), f.zero(), f.zero()]));
        assert!(err.is_err());
        let c5 = build_named(&f, "C5", None).unwrap();
        assert!(!c5.is_commutative());
        assert!(c5.is_local());
    }
}
