//! Restricted Lie algebras given by structure constants, algebraic
//! representations, abelian types (lambda, R, M), and the semiproduct
//! construction.
//!
//! Elements are dense coordinate vectors in the fixed basis. Matrix
//! conventions follow the row form used throughout: the restricted map
//! sends the basis column to R times the basis column, i.e.
//! x_i^[p] = sum_j R[i][j] x_j, and likewise rho_z(x_i) = sum_j M[i][j] x_j.
//! On coordinate vectors these act by the transposed matrices.

use crate::gf::{Field, FieldExt, Scalar};
use crate::linalg::{linearize, ScalarMat};

#[derive(Clone, Debug)]
pub struct RestrictedLie {
    pub field: Field,
    pub dim: usize,
    pub names: Vec<String>,
    /// bracket[i][j] = coordinates of [x_i, x_j]
    bracket: Vec<Vec<Vec<Scalar>>>,
    /// pmap_basis[i] = coordinates of x_i^[p]
    pmap_basis: Vec<Vec<Scalar>>,
}

impl RestrictedLie {
    pub fn new(
        field: &Field,
        names: Vec<String>,
        bracket: Vec<Vec<Vec<Scalar>>>,
        pmap_basis: Vec<Vec<Scalar>>,
    ) -> RestrictedLie {
        let dim = names.len();
        assert_eq!(bracket.len(), dim);
        assert_eq!(pmap_basis.len(), dim);
        RestrictedLie { field: field.clone(), dim, names, bracket, pmap_basis }
    }

    /// Abelian algebra with restricted map given by the rows of `r`.
    pub fn abelian(field: &Field, names: Vec<String>, r: &ScalarMat) -> RestrictedLie {
        let n = names.len();
        assert!(r.rows == n && r.cols == n);
        let zero = vec![field.zero(); n];
        let bracket = vec![vec![zero.clone(); n]; n];
        let pmap_basis = (0..n).map(|i| r.row(i).to_vec()).collect();
        RestrictedLie::new(field, names, bracket, pmap_basis)
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn is_zero_vec(v: &[Scalar]) -> bool {
        v.iter().all(|s| s.is_zero())
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().flatten().flatten().all(|s| s.is_zero())
    }

    pub fn pmap_matrix(&self) -> ScalarMat {
        ScalarMat::from_rows(&self.field, self.pmap_basis.clone())
    }

    pub fn bracket_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for k in 0..self.dim {
                    let b = &self.bracket[i][j][k];
                    if !b.is_zero() {
                        out[k] = &out[k] + &(&c * b);
                    }
                }
            }
        }
        out
    }

    fn add(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        u.iter().zip(v).map(|(a, b)| a + b).collect()
    }

    fn scale(&self, c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
        v.iter().map(|a| c * a).collect()
    }

    /// The Jacobson terms s_1..s_{p-1} of a pair: i*s_i(a, x) is the
    /// lambda^{i-1} coefficient of a (ad (lambda a + x))^{p-1}, expanded in
    /// the polynomial ring over the Lie algebra.
    pub fn jacobson_si(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Vec<Scalar>> {
        let p = self.field.p() as usize;
        // w[d] = coefficient of lambda^d, starting from the degree-0 element a
        let mut w: Vec<Vec<Scalar>> = vec![a.to_vec()];
        for _ in 0..p - 1 {
            let mut next: Vec<Vec<Scalar>> = Vec::with_capacity(w.len() + 1);
            for d in 0..=w.len() {
                let mut acc = self.zero_vec();
                if d < w.len() {
                    acc = self.add(&acc, &self.bracket_vec(&w[d], x));
                }
                if d > 0 {
                    acc = self.add(&acc, &self.bracket_vec(&w[d - 1], a));
                }
                next.push(acc);
            }
            w = next;
        }
        (1..p)
            .map(|i| {
                let coeff = w.get(i - 1).cloned().unwrap_or_else(|| self.zero_vec());
                let inv = self.field.int(i as i64).inv().unwrap();
                self.scale(&inv, &coeff)
            })
            .collect()
    }

    /// v^[p] via the Jacobson axioms: semilinear on single basis terms,
    /// with s_i corrections on sums.
    pub fn pmap(&self, v: &[Scalar]) -> Vec<Scalar> {
        let nz: Vec<usize> = (0..self.dim).filter(|&i| !v[i].is_zero()).collect();
        match nz.len() {
            0 => self.zero_vec(),
            1 => {
                let i = nz[0];
                self.scale(&v[i].frobenius(), &self.pmap_basis[i])
            }
            _ => {
                let i = nz[0];
                let mut head = self.zero_vec();
                head[i] = v[i].clone();
                let mut rest = v.to_vec();
                rest[i] = self.field.zero();
                let mut out = self.add(&self.pmap(&head), &self.pmap(&rest));
                for s in self.jacobson_si(&head, &rest) {
                    out = self.add(&out, &s);
                }
                out
            }
        }
    }

    /// Check the defining axioms on all basis pairs and on random pairs.
    pub fn check_restricted_axioms(
        &self,
        rng: &mut dyn rand::RngCore,
        samples: usize,
    ) -> Result<(), String> {
        // antisymmetry and Jacobi on basis triples
        for i in 0..self.dim {
            if !Self::is_zero_vec(&self.bracket_vec(&self.basis_vec(i), &self.basis_vec(i))) {
                return Err(format!("[x{i}, x{i}] != 0"));
            }
            for j in 0..self.dim {
                let lhs = self.bracket_vec(&self.basis_vec(i), &self.basis_vec(j));
                let rhs = self.scale(
                    &self.field.int(-1),
                    &self.bracket_vec(&self.basis_vec(j), &self.basis_vec(i)),
                );
                if lhs != rhs {
                    return Err(format!("antisymmetry fails at ({i},{j})"));
                }
                for k in 0..self.dim {
                    let a = self.basis_vec(i);
                    let b = self.basis_vec(j);
                    let c = self.basis_vec(k);
                    let mut acc = self.bracket_vec(&self.bracket_vec(&a, &b), &c);
                    acc = self.add(&acc, &self.bracket_vec(&self.bracket_vec(&b, &c), &a));
                    acc = self.add(&acc, &self.bracket_vec(&self.bracket_vec(&c, &a), &b));
                    if !Self::is_zero_vec(&acc) {
                        return Err(format!("Jacobi fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        let p = self.field.p();
        let mut pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                pairs.push((self.basis_vec(i), self.basis_vec(j)));
            }
        }
        for _ in 0..samples {
            let u: Vec<Scalar> = (0..self.dim).map(|_| self.field.random(rng)).collect();
            let v: Vec<Scalar> = (0..self.dim).map(|_| self.field.random(rng)).collect();
            pairs.push((u, v));
        }
        for (u, v) in &pairs {
            // (i) (alpha u)^[p] = alpha^p u^[p] for a sampled alpha
            let alpha = self.field.int(2);
            let lhs = self.pmap(&self.scale(&alpha, u));
            let rhs = self.scale(&alpha.pow(p), &self.pmap(u));
            if lhs != rhs {
                return Err("semilinearity of the p-map fails".into());
            }
            // (ii) (u+v)^[p] = u^[p] + v^[p] + sum s_i(u, v)
            let mut rhs = self.add(&self.pmap(u), &self.pmap(v));
            for s in self.jacobson_si(u, v) {
                rhs = self.add(&rhs, &s);
            }
            if self.pmap(&self.add(u, v)) != rhs {
                return Err("Jacobson sum axiom fails".into());
            }
            // (iii) [u, v^[p]] = u (ad v)^p
            let lhs = self.bracket_vec(u, &self.pmap(v));
            let mut w = u.clone();
            for _ in 0..p {
                w = self.bracket_vec(&w, v);
            }
            if lhs != w {
                return Err("[u, v^p] = u (ad v)^p fails".into());
            }
        }
        Ok(())
    }

    /// Basis of the derived subalgebra [L, L], in reduced row form.
    pub fn derived_basis(&self) -> Vec<Vec<Scalar>> {
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let mut row = self.bracket[i][j].clone();
                for b in &basis {
                    let lead = b.iter().position(|s| !s.is_zero()).unwrap();
                    if !row[lead].is_zero() {
                        let c = row[lead].clone();
                        for (x, y) in row.iter_mut().zip(b.iter()) {
                            *x = &*x - &(&c * y);
                        }
                    }
                }
                if let Some(lead) = row.iter().position(|s| !s.is_zero()) {
                    let inv = row[lead].inv().unwrap();
                    for x in row.iter_mut() {
                        *x = &*x * &inv;
                    }
                    basis.push(row);
                    basis.sort_by_key(|b| b.iter().position(|s| !s.is_zero()).unwrap());
                }
            }
        }
        basis
    }

    /// True iff no nonzero element has vanishing p-th power, i.e. L is a
    /// torus.
    ///
    /// For abelian L the p-map is additive and Frobenius-semilinear, so the
    /// question becomes an F_p-linear kernel computation over GF(p^m). A
    /// torus is always abelian; for nonabelian input we locate an explicit
    /// p-nilpotent witness instead (every nonabelian algebra in this
    /// artifact has one among basis and derived-subalgebra elements).
    pub fn torus_check(&self) -> bool {
        if self.is_abelian() {
            let mat = linearize(&self.field, self.dim, self.dim, |v| self.pmap(v));
            return mat.kernel_dim() == 0;
        }
        let mut candidates = self.derived_basis();
        for i in 0..self.dim {
            candidates.push(self.basis_vec(i));
        }
        for c in candidates {
            // iterate the p-map; reaching zero exhibits a p-nilpotent element
            let mut v = c;
            for _ in 0..self.dim * self.field.m() + 1 {
                if Self::is_zero_vec(&v) {
                    return false;
                }
                v = self.pmap(&v);
            }
        }
        panic!("torus decision for a nonabelian algebra without an evident p-nilpotent witness");
    }
}

// ---------------------------------------------------------------------------
// algebraic representations and abelian types
// ---------------------------------------------------------------------------

/// An algebraic representation of the one-dimensional g = <z> on h, as the
/// matrix with rho_z(x_i) = sum_j M[i][j] x_j.
#[derive(Clone, Debug)]
pub struct AlgebraicRep {
    pub lambda: Scalar,
    pub target: RestrictedLie,
    pub m_mat: ScalarMat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepReport {
    pub commutes_with_g_bracket: bool,
    pub restricted_compat: bool,
    pub derivation_law: bool,
    pub p_power_law: bool,
}

impl RepReport {
    pub fn all_pass(&self) -> bool {
        self.commutes_with_g_bracket
            && self.restricted_compat
            && self.derivation_law
            && self.p_power_law
    }
}

impl AlgebraicRep {
    /// rho_z on coordinate vectors (transposed matrix action).
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.target.dim;
        let mut out = vec![self.target.field.zero(); n];
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let c = &self.m_mat[(i, j)];
                if !c.is_zero() {
                    out[j] = &out[j] + &(&v[i] * c);
                }
            }
        }
        out
    }

    pub fn apply_pow(&self, v: &[Scalar], e: u64) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for _ in 0..e {
            out = self.apply(&out);
        }
        out
    }

    /// The four conditions of an algebraic representation, checked on all
    /// basis tuples.
    pub fn check(&self) -> RepReport {
        let h = &self.target;
        let p = h.field.p();
        // (i) dim g = 1: rho of the vanishing bracket [z,z] must equal the
        // vanishing operator commutator; trivially both sides are zero.
        let commutes_with_g_bracket = true;
        // (ii) rho_{z^[p]} = (rho_z)^p, i.e. lambda * rho_z = rho_z^p
        let restricted_compat = (0..h.dim).all(|i| {
            let v = h.basis_vec(i);
            let lhs = self.apply_pow(&v, p);
            let rhs: Vec<Scalar> = self.apply(&v).iter().map(|s| &self.lambda * s).collect();
            lhs == rhs
        });
        // (iii) rho_z([a,b]) = [rho_z(a), b] + [a, rho_z(b)]
        let derivation_law = (0..h.dim).all(|i| {
            (0..h.dim).all(|j| {
                let a = h.basis_vec(i);
                let b = h.basis_vec(j);
                let lhs = self.apply(&h.bracket_vec(&a, &b));
                let rhs: Vec<Scalar> = h
                    .bracket_vec(&self.apply(&a), &b)
                    .iter()
                    .zip(h.bracket_vec(&a, &self.apply(&b)))
                    .map(|(u, v)| u + &v)
                    .collect();
                lhs == rhs
            })
        });
        // (iv) rho_z(a^[p]) = rho_z(a) (ad a)^{p-1}
        let p_power_law = (0..h.dim).all(|i| {
            let a = h.basis_vec(i);
            let lhs = self.apply(&h.pmap(&a));
            let mut rhs = self.apply(&a);
            for _ in 0..p - 1 {
                rhs = h.bracket_vec(&rhs, &a);
            }
            lhs == rhs
        });
        RepReport { commutes_with_g_bracket, restricted_compat, derivation_law, p_power_law }
    }
}

/// An abelian type: one-dimensional g acting on abelian h, encoded by
/// (lambda, R, M).
#[derive(Clone, Debug)]
pub struct AbelianType {
    pub field: Field,
    pub label: String,
    pub lambda: Scalar,
    pub r_mat: ScalarMat,
    pub m_mat: ScalarMat,
}

impl PartialEq for AbelianType {
    fn eq(&self, other: &Self) -> bool {
        self.lambda == other.lambda && self.r_mat == other.r_mat && self.m_mat == other.m_mat
    }
}

impl AbelianType {
    pub fn new(
        field: &Field,
        label: &str,
        lambda: Scalar,
        r_mat: ScalarMat,
        m_mat: ScalarMat,
    ) -> AbelianType {
        AbelianType { field: field.clone(), label: label.to_string(), lambda, r_mat, m_mat }
    }

    pub fn rank(&self) -> usize {
        self.r_mat.rows
    }

    pub fn h(&self) -> RestrictedLie {
        let names = match self.rank() {
            1 => vec!["x".to_string()],
            2 => vec!["x".to_string(), "y".to_string()],
            n => (0..n).map(|i| format!("x{}", i + 1)).collect(),
        };
        RestrictedLie::abelian(&self.field, names, &self.r_mat)
    }

    pub fn rep(&self) -> AlgebraicRep {
        AlgebraicRep { lambda: self.lambda.clone(), target: self.h(), m_mat: self.m_mat.clone() }
    }

    /// The consistency conditions of the defining triple: rho_z kills the
    /// image of the restricted map (R M = 0 in the row convention) and
    /// M^p = lambda M, plus the four representation axioms.
    pub fn check(&self) -> (bool, RepReport) {
        let p = self.field.p();
        let n = self.rank();
        let rm = self.r_mat.mul(&self.m_mat);
        let rm_zero = (0..n).all(|i| (0..n).all(|j| rm[(i, j)].is_zero()));
        let mp = self.m_mat.matrix_power(p);
        let lm = {
            let mut s = self.m_mat.clone();
            for i in 0..n {
                for j in 0..n {
                    s[(i, j)] = &self.lambda * &s[(i, j)];
                }
            }
            s
        };
        let power_ok = mp == lm;
        (rm_zero && power_ok, self.rep().check())
    }

    /// The semiproduct of h by g as an (n+1)-dimensional restricted Lie
    /// algebra with z as the last basis element.
    pub fn semiproduct(&self) -> RestrictedLie {
        let n = self.rank();
        let f = &self.field;
        let dim = n + 1;
        let mut names: Vec<String> = self.h().names.clone();
        names.push("z".to_string());
        let zero = vec![f.zero(); dim];
        let mut bracket = vec![vec![zero.clone(); dim]; dim];
        // [z, x_i] = rho_z(x_i); h is abelian
        for i in 0..n {
            for j in 0..n {
                let c = self.m_mat[(i, j)].clone();
                if !c.is_zero() {
                    bracket[n][i][j] = c.clone();
                    bracket[i][n][j] = -&c;
                }
            }
        }
        let mut pmap_basis = Vec::with_capacity(dim);
        for i in 0..n {
            let mut row = vec![f.zero(); dim];
            for j in 0..n {
                row[j] = self.r_mat[(i, j)].clone();
            }
            pmap_basis.push(row);
        }
        let mut zrow = vec![f.zero(); dim];
        zrow[n] = self.lambda.clone();
        pmap_basis.push(zrow);
        RestrictedLie::new(f, names, bracket, pmap_basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldParams;
    use rand::SeedableRng;

    fn gf9() -> Field {
        FieldParams::new(3, 2).unwrap()
    }

    fn mat2(f: &Field, e: [[i64; 2]; 2]) -> ScalarMat {
        ScalarMat::from_rows(
            f,
            e.iter().map(|row| row.iter().map(|&x| f.int(x)).collect()).collect(),
        )
    }

    /// Type T5: lambda = 0, R = e11, M = e21.
    fn t5(f: &Field) -> AbelianType {
        AbelianType::new(f, "T5", f.zero(), mat2(f, [[1, 0], [0, 0]]), mat2(f, [[0, 0], [1, 0]]))
    }

    /// Type T(zeta): lambda = 1, R = 0, M = diag(1, zeta).
    fn t_zeta(f: &Field, zeta: i64) -> AbelianType {
        AbelianType::new(f, "T(z)", f.one(), mat2(f, [[0, 0], [0, 0]]), mat2(f, [[1, 0], [0, zeta]]))
    }

    #[test]
    fn abelian_pmap_is_frobenius_semilinear() {
        let f = gf9();
        // type B: x^p = x, y^p = 0
        let h =
            RestrictedLie::abelian(&f, vec!["x".into(), "y".into()], &mat2(&f, [[1, 0], [0, 0]]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let v = vec![a.clone(), b.clone()];
            // (a x + b y)^p = a^p x
            let expect = vec![a.frobenius(), f.zero()];
            assert_eq!(h.pmap(&v), expect);
            let u: Vec<Scalar> = (0..2).map(|_| f.random(&mut rng)).collect();
            let sum: Vec<Scalar> = u.iter().zip(&v).map(|(x, y)| x + y).collect();
            let psum = h.pmap(&sum);
            let expect: Vec<Scalar> =
                h.pmap(&u).iter().zip(h.pmap(&v)).map(|(x, y)| x + &y).collect();
            assert_eq!(psum, expect);
        }
        assert!(RestrictedLie::is_zero_vec(&h.pmap(&h.zero_vec())));
    }

    #[test]
    fn jacobson_terms_on_semiproducts() {
        let f = gf9();
        // T5 semiproduct: [z, y] = x, x^p = x
        let l5 = t5(&f).semiproduct();
        let y = l5.basis_vec(1);
        let z = l5.basis_vec(2);
        for s in l5.jacobson_si(&y, &z) {
            assert!(RestrictedLie::is_zero_vec(&s));
        }
        // T(1) semiproduct: [z, x] = x, s_1(x, z) = x, s_2 = 0
        let l1 = t_zeta(&f, 1).semiproduct();
        let x = l1.basis_vec(0);
        let z = l1.basis_vec(2);
        let si = l1.jacobson_si(&x, &z);
        assert_eq!(si[0], x);
        assert!(RestrictedLie::is_zero_vec(&si[1]));
        // (x + z)^p = x + z by the explicit Jacobson sum
        let xz: Vec<Scalar> = x.iter().zip(&z).map(|(a, b)| a + b).collect();
        assert_eq!(l1.pmap(&xz), xz);
    }

    #[test]
    fn semiproducts_satisfy_restricted_axioms() {
        let f = gf9();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for t in [t5(&f), t_zeta(&f, 0), t_zeta(&f, 1), t_zeta(&f, 2)] {
            let (triple_ok, rep) = t.check();
            assert!(triple_ok && rep.all_pass(), "{} rejected", t.label);
            let l = t.semiproduct();
            l.check_restricted_axioms(&mut rng, 20).unwrap();
        }
    }

    #[test]
    fn algebraic_rep_rejects_bad_matrix() {
        let f = gf9();
        // type B with rho_z(x) = y violates rho_z(x^[p]) = 0
        let bad = AbelianType::new(
            &f,
            "bad",
            f.zero(),
            mat2(&f, [[1, 0], [0, 0]]),
            mat2(&f, [[0, 1], [0, 0]]),
        );
        let (triple_ok, _) = bad.check();
        assert!(!triple_ok);
        // M = 0 always passes
        let trivial = AbelianType::new(
            &f,
            "triv",
            f.zero(),
            mat2(&f, [[1, 0], [0, 0]]),
            mat2(&f, [[0, 0], [0, 0]]),
        );
        let (ok, rep) = trivial.check();
        assert!(ok && rep.all_pass());
        // T5 data passes everything
        let (ok, rep) = t5(&f).check();
        assert!(ok && rep.all_pass());
    }

    #[test]
    fn torus_detection_on_the_four_kinds() {
        let f = gf9();
        let kinds = [
            ([[0, 0], [0, 0]], false), // A
            ([[1, 0], [0, 0]], false), // B: y is p-nilpotent
            ([[0, 1], [0, 0]], false), // C
            ([[1, 0], [0, 1]], true),  // D
        ];
        for (r, expect) in kinds {
            let h = RestrictedLie::abelian(&f, vec!["x".into(), "y".into()], &mat2(&f, r));
            assert_eq!(h.torus_check(), expect, "kind {r:?}");
        }
    }
}
