//! Restricted enveloping algebras, their Hopf deformations, and the
//! surrounding element machinery.
//!
//! An [`Algebra`] is a finitely presented normal-form algebra on ordered
//! generators g_0 < g_1 < ... with PBW monomials g_0^{a_0} g_1^{a_1} ...
//! (every exponent < p) as basis. Multiplication rewrites with two kinds of
//! rules: commutators g_j g_i = g_i g_j + [g_j, g_i] for j > i, and power
//! rules g_i^p = (normal-form element). This covers u(h) (commutative,
//! truncated), u(T), every primitive deformation u_z(D), and the presented
//! families of the structure tables. Confluence is not proved here; it is
//! certified empirically by the associativity checks run over every
//! constructed algebra.
//!
//! Elements print as "c*x^a*y^b*z^c + ..." with scalars in residue-polynomial
//! notation, and parse back; this is the textual round-trip format used by
//! golden tests and the PD-data serialization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::gf::{parse_scalar, Field, FieldExt, Scalar};
use crate::linalg::ScalarMat;
use crate::rla::AbelianType;

/// Exponent vector of a PBW monomial; entry i is the exponent of g_i.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn gen(n: usize, i: usize) -> Monomial {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

pub type RawElem = BTreeMap<Monomial, Scalar>;
pub type RawTensor = BTreeMap<Vec<Monomial>, Scalar>;

pub struct AlgebraData {
    pub field: Field,
    pub names: Vec<String>,
    /// [g_j, g_i] for j > i, in normal form; missing entries are zero.
    pub commutators: BTreeMap<(usize, usize), RawElem>,
    /// powers[i] = g_i^p in normal form.
    pub powers: Vec<RawElem>,
    /// psi[i] = Delta(g_i) - g_i (x) 1 - 1 (x) g_i, a degree-2 raw tensor.
    pub psi: Vec<RawTensor>,
    lmul_cache: Mutex<HashMap<(usize, Monomial), Arc<RawElem>>>,
    coprod_cache: Mutex<HashMap<Monomial, Arc<RawTensor>>>,
}

pub type Algebra = Arc<AlgebraData>;

impl fmt::Debug for AlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra<{}>", self.names.join(","))
    }
}

impl AlgebraData {
    pub fn n_gens(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self) -> usize {
        let p = self.field.p() as usize;
        p.pow(self.n_gens() as u32)
    }

    pub fn is_commutative_presentation(&self) -> bool {
        self.commutators.values().all(|e| e.is_empty())
    }

    /// Structural identity: same field, generators, and defining rules.
    pub fn same(&self, other: &AlgebraData) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.names == other.names
                && self.commutators == other.commutators
                && self.powers == other.powers
                && self.psi == other.psi)
    }

    /// All basis monomials in lexicographic exponent order.
    pub fn basis(&self) -> Vec<Monomial> {
        let p = self.field.p() as u8;
        let n = self.n_gens();
        let mut out = Vec::with_capacity(self.dim());
        let mut cur = vec![0u8; n];
        loop {
            out.push(Monomial(cur.clone()));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < p {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

pub fn new_algebra(
    field: &Field,
    names: Vec<String>,
    commutators: BTreeMap<(usize, usize), RawElem>,
    powers: Vec<RawElem>,
    psi: Vec<RawTensor>,
) -> Algebra {
    assert_eq!(powers.len(), names.len());
    assert_eq!(psi.len(), names.len());
    Arc::new(AlgebraData {
        field: field.clone(),
        names,
        commutators,
        powers,
        psi,
        lmul_cache: Mutex::new(HashMap::new()),
        coprod_cache: Mutex::new(HashMap::new()),
    })
}

/// Same algebra with different coproduct deviations (multiplication rules
/// unchanged).
pub fn with_psi(alg: &Algebra, psi: Vec<RawTensor>) -> Algebra {
    new_algebra(&alg.field, alg.names.clone(), alg.commutators.clone(), alg.powers.clone(), psi)
}

// ---------------------------------------------------------------------------
// raw element arithmetic
// ---------------------------------------------------------------------------

pub fn raw_insert(map: &mut RawElem, mono: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn raw_add_scaled(into: &mut RawElem, from: &RawElem, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (m, v) in from {
        raw_insert(into, m.clone(), v * c);
    }
}

/// g_t * m in normal form.
fn lmul_gen(alg: &Algebra, t: usize, m: &Monomial) -> Arc<RawElem> {
    if let Some(hit) = alg.lmul_cache.lock().unwrap().get(&(t, m.clone())) {
        return hit.clone();
    }
    let p = alg.field.p() as u8;
    let one = alg.field.one();
    let result: RawElem = (|| {
        let u = match m.0.iter().position(|&e| e > 0) {
            None => {
                let mut out = RawElem::new();
                raw_insert(&mut out, Monomial::gen(alg.n_gens(), t), one.clone());
                return out;
            }
            Some(u) => u,
        };
        if t < u || (t == u && m.0[t] + 1 < p) {
            let mut v = m.0.clone();
            v[t] += 1;
            let mut out = RawElem::new();
            raw_insert(&mut out, Monomial(v), one.clone());
            out
        } else if t == u {
            // the exponent reaches p: substitute the power rule
            let mut rest = m.0.clone();
            rest[t] = 0;
            let rest = Monomial(rest);
            let mut rest_elem = RawElem::new();
            raw_insert(&mut rest_elem, rest, one.clone());
            raw_mul(alg, &alg.powers[t], &rest_elem)
        } else {
            // t > u: g_t g_u = g_u g_t + [g_t, g_u]
            let mut mprime = m.0.clone();
            mprime[u] -= 1;
            let mprime = Monomial(mprime);
            let inner = lmul_gen(alg, t, &mprime);
            let mut out = lmul_elem(alg, u, &inner);
            if let Some(comm) = alg.commutators.get(&(t, u)) {
                let mut mp_elem = RawElem::new();
                raw_insert(&mut mp_elem, mprime, one.clone());
                let corr = raw_mul(alg, comm, &mp_elem);
                for (mm, c) in corr {
                    raw_insert(&mut out, mm, c);
                }
            }
            out
        }
    })();
    let arc = Arc::new(result);
    alg.lmul_cache.lock().unwrap().insert((t, m.clone()), arc.clone());
    arc
}

fn lmul_elem(alg: &Algebra, t: usize, e: &RawElem) -> RawElem {
    let mut out = RawElem::new();
    for (m, c) in e {
        let part = lmul_gen(alg, t, m);
        raw_add_scaled(&mut out, &part, c);
    }
    out
}

/// m1 * m2 in normal form: fold the letters of m1, highest first, onto m2.
fn mono_mul(alg: &Algebra, m1: &Monomial, m2: &Monomial) -> RawElem {
    let mut acc = RawElem::new();
    raw_insert(&mut acc, m2.clone(), alg.field.one());
    for i in (0..m1.0.len()).rev() {
        for _ in 0..m1.0[i] {
            acc = lmul_elem(alg, i, &acc);
        }
    }
    acc
}

pub fn raw_mul(alg: &Algebra, a: &RawElem, b: &RawElem) -> RawElem {
    let mut out = RawElem::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            let prod = mono_mul(alg, m1, m2);
            raw_add_scaled(&mut out, &prod, &(c1 * c2));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// AlgElem
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct AlgElem {
    pub alg: Algebra,
    pub coeffs: RawElem,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.alg.same(&other.alg), "algebra mismatch");
        self.coeffs == other.coeffs
    }
}
impl Eq for AlgElem {}

impl AlgElem {
    pub fn zero(alg: &Algebra) -> AlgElem {
        AlgElem { alg: alg.clone(), coeffs: RawElem::new() }
    }

    pub fn one(alg: &Algebra) -> AlgElem {
        let mut coeffs = RawElem::new();
        raw_insert(&mut coeffs, Monomial::one(alg.n_gens()), alg.field.one());
        AlgElem { alg: alg.clone(), coeffs }
    }

    pub fn gen(alg: &Algebra, i: usize) -> AlgElem {
        let mut coeffs = RawElem::new();
        raw_insert(&mut coeffs, Monomial::gen(alg.n_gens(), i), alg.field.one());
        AlgElem { alg: alg.clone(), coeffs }
    }

    pub fn monomial(alg: &Algebra, m: &Monomial) -> AlgElem {
        let mut coeffs = RawElem::new();
        raw_insert(&mut coeffs, m.clone(), alg.field.one());
        AlgElem { alg: alg.clone(), coeffs }
    }

    pub fn from_terms(alg: &Algebra, terms: &[(i64, &[u8])]) -> AlgElem {
        let mut coeffs = RawElem::new();
        for (c, exps) in terms {
            raw_insert(&mut coeffs, Monomial(exps.to_vec()), alg.field.int(*c));
        }
        AlgElem { alg: alg.clone(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn counit(&self) -> Scalar {
        self.coeffs
            .get(&Monomial::one(self.alg.n_gens()))
            .cloned()
            .unwrap_or_else(|| self.alg.field.zero())
    }

    /// Member of the augmentation ideal?
    pub fn in_aug_ideal(&self) -> bool {
        self.counit().is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> AlgElem {
        let mut out = RawElem::new();
        raw_add_scaled(&mut out, &self.coeffs, c);
        AlgElem { alg: self.alg.clone(), coeffs: out }
    }

    pub fn pow(&self, e: u64) -> AlgElem {
        let mut acc = AlgElem::one(&self.alg);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The p-th power of an element of a commutative presentation, computed
    /// additively: (sum c_m m)^p = sum c_m^p m^p.
    pub fn frobenius_power(&self) -> AlgElem {
        assert!(self.alg.is_commutative_presentation(), "frobenius power needs commutativity");
        let mut out = AlgElem::zero(&self.alg);
        for (m, c) in &self.coeffs {
            let mp = AlgElem::monomial(&self.alg, m).pow(self.alg.field.p());
            out = &out + &mp.scale(&c.frobenius());
        }
        out
    }

    /// Splits an augmentation-ideal element into its generator-linear part
    /// and its tail of PBW degree >= 2.
    pub fn decompose_plus(&self) -> Result<(AlgElem, AlgElem), String> {
        if !self.in_aug_ideal() {
            return Err("element has a constant term".into());
        }
        let mut lin = AlgElem::zero(&self.alg);
        let mut tail = AlgElem::zero(&self.alg);
        for (m, c) in &self.coeffs {
            if m.degree() == 1 {
                raw_insert(&mut lin.coeffs, m.clone(), c.clone());
            } else {
                raw_insert(&mut tail.coeffs, m.clone(), c.clone());
            }
        }
        Ok((lin, tail))
    }

    /// Coordinates in the linear span of the generators, failing on any
    /// monomial of degree != 1.
    pub fn linear_coords(&self) -> Option<Vec<Scalar>> {
        let n = self.alg.n_gens();
        let mut v = vec![self.alg.field.zero(); n];
        for (m, c) in &self.coeffs {
            if m.degree() != 1 {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1).unwrap();
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn from_linear(alg: &Algebra, v: &[Scalar]) -> AlgElem {
        let mut coeffs = RawElem::new();
        for (i, c) in v.iter().enumerate() {
            raw_insert(&mut coeffs, Monomial::gen(alg.n_gens(), i), c.clone());
        }
        AlgElem { alg: alg.clone(), coeffs }
    }

    /// Image under the algebra map determined by generator images.
    pub fn substitute(&self, target: &Algebra, images: &[AlgElem]) -> AlgElem {
        assert_eq!(images.len(), self.alg.n_gens());
        let mut out = AlgElem::zero(target);
        for (m, c) in &self.coeffs {
            let mut term = AlgElem::one(target);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[i];
                }
            }
            out = &out + &term.scale(c);
        }
        out
    }

    /// Full coproduct as a degree-2 tensor over the whole algebra.
    pub fn coproduct(&self) -> TensorElem {
        let mut out = TensorElem::zero(&self.alg, 2);
        for (m, c) in &self.coeffs {
            let dm = coproduct_mono(&self.alg, m);
            for (key, v) in dm.iter() {
                tensor_insert(&mut out.coeffs, key.clone(), v * c);
            }
        }
        out
    }

    /// Tensor product of elements, as a degree-d tensor.
    pub fn tensor(factors: &[&AlgElem]) -> TensorElem {
        let alg = factors[0].alg.clone();
        let mut out = TensorElem::zero(&alg, factors.len());
        let mut keys: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), alg.field.one())];
        for f in factors {
            let mut next = Vec::new();
            for (prefix, c) in &keys {
                for (m, v) in &f.coeffs {
                    let mut k = prefix.clone();
                    k.push(m.clone());
                    next.push((k, c * v));
                }
            }
            keys = next;
        }
        for (k, c) in keys {
            tensor_insert(&mut out.coeffs, k, c);
        }
        out
    }
}

impl std::ops::Add<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        debug_assert!(self.alg.same(&rhs.alg));
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &rhs.coeffs {
            raw_insert(&mut coeffs, m.clone(), c.clone());
        }
        AlgElem { alg: self.alg.clone(), coeffs }
    }
}

impl std::ops::Sub<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        debug_assert!(self.alg.same(&rhs.alg));
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &rhs.coeffs {
            raw_insert(&mut coeffs, m.clone(), -c);
        }
        AlgElem { alg: self.alg.clone(), coeffs }
    }
}

impl std::ops::Mul<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: &AlgElem) -> AlgElem {
        debug_assert!(self.alg.same(&rhs.alg), "product across algebras");
        AlgElem { alg: self.alg.clone(), coeffs: raw_mul(&self.alg, &self.coeffs, &rhs.coeffs) }
    }
}

impl std::ops::Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        self.scale(&self.alg.field.int(-1))
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                let cs = c.to_string();
                if cs.contains('+') {
                    factors.push(format!("({cs})"));
                } else {
                    factors.push(cs);
                }
                for (i, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(self.alg.names[i].clone()),
                        _ => factors.push(format!("{}^{}", self.alg.names[i], e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse the Display format back into an element.
pub fn parse_elem(alg: &Algebra, s: &str) -> Result<AlgElem, String> {
    let field = &alg.field;
    let mut out = AlgElem::zero(alg);
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    for term in s.split(" + ") {
        let mut coeff = field.one();
        let mut exps = vec![0u8; alg.n_gens()];
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u8>().map_err(|e| e.to_string())?),
                None => (factor, 1),
            };
            if let Some(idx) = alg.names.iter().position(|n| n == name) {
                exps[idx] += exp;
            } else {
                let lit = factor.trim_start_matches('(').trim_end_matches(')');
                coeff = &coeff * &parse_scalar(field, lit)?;
            }
        }
        raw_insert(&mut out.coeffs, Monomial(exps), coeff);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// TensorElem
// ---------------------------------------------------------------------------

pub fn tensor_insert(map: &mut RawTensor, key: Vec<Monomial>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

#[derive(Clone)]
pub struct TensorElem {
    pub alg: Algebra,
    pub degree: usize,
    pub coeffs: RawTensor,
}

impl PartialEq for TensorElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.alg.same(&other.alg) && self.degree == other.degree);
        self.coeffs == other.coeffs
    }
}
impl Eq for TensorElem {}

impl TensorElem {
    pub fn zero(alg: &Algebra, degree: usize) -> TensorElem {
        TensorElem { alg: alg.clone(), degree, coeffs: RawTensor::new() }
    }

    pub fn from_raw(alg: &Algebra, degree: usize, coeffs: RawTensor) -> TensorElem {
        TensorElem { alg: alg.clone(), degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Every slot lies in the augmentation ideal (no unit monomials)?
    pub fn in_omega(&self) -> bool {
        self.coeffs.keys().all(|k| k.iter().all(|m| !m.is_one()))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        let mut out = TensorElem::zero(&self.alg, self.degree);
        for (k, v) in &self.coeffs {
            tensor_insert(&mut out.coeffs, k.clone(), v * c);
        }
        out
    }

    pub fn unit(alg: &Algebra, degree: usize) -> TensorElem {
        let mut out = TensorElem::zero(alg, degree);
        tensor_insert(&mut out.coeffs, vec![Monomial::one(alg.n_gens()); degree], alg.field.one());
        out
    }

    /// Slotwise product.
    pub fn mul(&self, other: &TensorElem) -> TensorElem {
        assert_eq!(self.degree, other.degree);
        let mut out = TensorElem::zero(&self.alg, self.degree);
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &other.coeffs {
                let mut parts: Vec<RawElem> = Vec::with_capacity(self.degree);
                for (m1, m2) in k1.iter().zip(k2.iter()) {
                    parts.push(mono_mul(&self.alg, m1, m2));
                }
                let mut keys: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), c1 * c2)];
                for part in &parts {
                    let mut next = Vec::new();
                    for (prefix, c) in &keys {
                        for (m, v) in part {
                            let mut k = prefix.clone();
                            k.push(m.clone());
                            next.push((k, c * v));
                        }
                    }
                    keys = next;
                }
                for (k, c) in keys {
                    tensor_insert(&mut out.coeffs, k, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> TensorElem {
        let mut acc = TensorElem::unit(&self.alg, self.degree);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise Frobenius power for commutative presentations:
    /// sum c (m1 (x) m2) -> sum c^p (m1^p (x) m2^p).
    pub fn frobenius_power(&self) -> TensorElem {
        assert!(self.alg.is_commutative_presentation());
        let p = self.alg.field.p();
        let mut out = TensorElem::zero(&self.alg, self.degree);
        for (k, c) in &self.coeffs {
            let parts: Vec<AlgElem> =
                k.iter().map(|m| AlgElem::monomial(&self.alg, m).pow(p)).collect();
            let refs: Vec<&AlgElem> = parts.iter().collect();
            let t = AlgElem::tensor(&refs).scale(&c.frobenius());
            for (kk, vv) in t.coeffs {
                tensor_insert(&mut out.coeffs, kk, vv);
            }
        }
        out
    }

    /// Apply an algebra map (given by generator images) to every slot.
    pub fn substitute(&self, target: &Algebra, images: &[AlgElem]) -> TensorElem {
        let mut out = TensorElem::zero(target, self.degree);
        for (k, c) in &self.coeffs {
            let parts: Vec<AlgElem> = k
                .iter()
                .map(|m| AlgElem::monomial(&self.alg, m).substitute(target, images))
                .collect();
            let refs: Vec<&AlgElem> = parts.iter().collect();
            let t = AlgElem::tensor(&refs).scale(c);
            for (kk, vv) in t.coeffs {
                tensor_insert(&mut out.coeffs, kk, vv);
            }
        }
        out
    }

    /// Apply Delta to one slot, raising the degree by one.
    pub fn coproduct_at(&self, slot: usize) -> TensorElem {
        assert!(slot < self.degree);
        let mut out = TensorElem::zero(&self.alg, self.degree + 1);
        for (k, c) in &self.coeffs {
            let dm = coproduct_mono(&self.alg, &k[slot]);
            for (pair, v) in dm.iter() {
                let mut key = Vec::with_capacity(self.degree + 1);
                key.extend_from_slice(&k[..slot]);
                key.push(pair[0].clone());
                key.push(pair[1].clone());
                key.extend_from_slice(&k[slot + 1..]);
                tensor_insert(&mut out.coeffs, key, v * c);
            }
        }
        out
    }

    /// Insert a unit slot at the given position, raising the degree.
    pub fn pad_with_unit(&self, slot: usize) -> TensorElem {
        let mut out = TensorElem::zero(&self.alg, self.degree + 1);
        let unit = Monomial::one(self.alg.n_gens());
        for (k, c) in &self.coeffs {
            let mut key = Vec::with_capacity(self.degree + 1);
            key.extend_from_slice(&k[..slot]);
            key.push(unit.clone());
            key.extend_from_slice(&k[slot..]);
            tensor_insert(&mut out.coeffs, key, c.clone());
        }
        out
    }
}

impl std::ops::Add<&TensorElem> for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        debug_assert!(self.alg.same(&rhs.alg) && self.degree == rhs.degree);
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            tensor_insert(&mut coeffs, k.clone(), c.clone());
        }
        TensorElem { alg: self.alg.clone(), degree: self.degree, coeffs }
    }
}

impl std::ops::Sub<&TensorElem> for &TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: &TensorElem) -> TensorElem {
        debug_assert!(self.alg.same(&rhs.alg) && self.degree == rhs.degree);
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            tensor_insert(&mut coeffs, k.clone(), -c);
        }
        TensorElem { alg: self.alg.clone(), degree: self.degree, coeffs }
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name_of = |m: &Monomial| {
            if m.is_one() {
                return "1".to_string();
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.alg.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.alg.names[i], e)),
                }
            }
            factors.join("*")
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let slots: Vec<String> = k.iter().map(name_of).collect();
                let cs = c.to_string();
                let cs = if cs.contains('+') { format!("({cs})") } else { cs };
                format!("{}*{}", cs, slots.join("(x)"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Delta of a basis monomial, memoized: the product of the generator
/// coproducts g_i (x) 1 + 1 (x) g_i + psi[i].
fn coproduct_mono(alg: &Algebra, m: &Monomial) -> Arc<RawTensor> {
    if let Some(hit) = alg.coprod_cache.lock().unwrap().get(m) {
        return hit.clone();
    }
    let n = alg.n_gens();
    let result: RawTensor = if m.is_one() {
        let mut out = RawTensor::new();
        tensor_insert(&mut out, vec![Monomial::one(n), Monomial::one(n)], alg.field.one());
        out
    } else {
        // split off the last letter to reuse cached prefixes
        let i = m.0.iter().rposition(|&e| e > 0).unwrap();
        let mut prefix = m.0.clone();
        prefix[i] -= 1;
        let prefix = Monomial(prefix);
        let dp = coproduct_mono(alg, &prefix);
        let dg = gen_coproduct(alg, i);
        let left = TensorElem::from_raw(alg, 2, (*dp).clone());
        let right = TensorElem::from_raw(alg, 2, dg);
        left.mul(&right).coeffs
    };
    let arc = Arc::new(result);
    alg.coprod_cache.lock().unwrap().insert(m.clone(), arc.clone());
    arc
}

pub fn gen_coproduct(alg: &Algebra, i: usize) -> RawTensor {
    let n = alg.n_gens();
    let mut out = alg.psi[i].clone();
    tensor_insert(&mut out, vec![Monomial::gen(n, i), Monomial::one(n)], alg.field.one());
    tensor_insert(&mut out, vec![Monomial::one(n), Monomial::gen(n, i)], alg.field.one());
    out
}

// ---------------------------------------------------------------------------
// the omega map and derivation extensions
// ---------------------------------------------------------------------------

/// omega(r) = sum_{1<=i<=p-1} (p-1)!/(i!(p-i)!) r^i (x) r^{p-i}.
pub fn omega(r: &AlgElem) -> TensorElem {
    assert!(r.in_aug_ideal(), "omega rejects elements with a constant term");
    let f = &r.alg.field;
    let p = f.p();
    let mut powers: Vec<AlgElem> = Vec::with_capacity(p as usize);
    powers.push(AlgElem::one(&r.alg));
    for i in 1..p {
        let prev = &powers[(i - 1) as usize];
        powers.push(prev * r);
    }
    let mut out = TensorElem::zero(&r.alg, 2);
    for i in 1..p {
        let c = f.int(binomlike(p, i) as i64);
        let t = AlgElem::tensor(&[&powers[i as usize], &powers[(p - i) as usize]]).scale(&c);
        out = &out + &t;
    }
    out
}

/// (p-1)!/(i!(p-i)!) as an exact integer.
pub fn binomlike(p: u64, i: u64) -> u64 {
    let fact = |n: u64| (1..=n).product::<u64>().max(1);
    fact(p - 1) / (fact(i) * fact(p - i))
}

/// A derivation of a commutative u(h) given by generator images, extended
/// to tensors slotwise.
pub struct Derivation {
    pub alg: Algebra,
    /// images[i] = image of g_i, a linear element.
    pub images: Vec<AlgElem>,
}

impl Derivation {
    pub fn from_matrix(alg: &Algebra, m: &ScalarMat) -> Derivation {
        assert!(alg.is_commutative_presentation());
        let n = alg.n_gens();
        assert!(m.rows == n && m.cols == n);
        let images = (0..n)
            .map(|i| {
                let mut e = AlgElem::zero(alg);
                for j in 0..n {
                    raw_insert(&mut e.coeffs, Monomial::gen(n, j), m[(i, j)].clone());
                }
                e
            })
            .collect();
        Derivation { alg: alg.clone(), images }
    }

    pub fn apply(&self, a: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero(&self.alg);
        for (m, c) in &a.coeffs {
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 || self.images[i].is_zero() {
                    continue;
                }
                let mut reduced = m.0.clone();
                reduced[i] -= 1;
                let rest = AlgElem::monomial(&self.alg, &Monomial(reduced));
                let term = (&rest * &self.images[i]).scale(&(c * &self.alg.field.int(e as i64)));
                out = &out + &term;
            }
        }
        out
    }

    pub fn apply_pow(&self, a: &AlgElem, k: u64) -> AlgElem {
        let mut out = a.clone();
        for _ in 0..k {
            out = self.apply(&out);
        }
        out
    }

    /// Leibniz extension over tensor slots.
    pub fn apply_tensor(&self, t: &TensorElem) -> TensorElem {
        let mut out = TensorElem::zero(&t.alg, t.degree);
        for (k, c) in &t.coeffs {
            for slot in 0..t.degree {
                let img = self.apply(&AlgElem::monomial(&t.alg, &k[slot]));
                for (m, v) in &img.coeffs {
                    let mut key = k.clone();
                    key[slot] = m.clone();
                    tensor_insert(&mut out.coeffs, key, c * v);
                }
            }
        }
        out
    }

    pub fn apply_tensor_pow(&self, t: &TensorElem, k: u64) -> TensorElem {
        let mut out = t.clone();
        for _ in 0..k {
            out = self.apply_tensor(&out);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// algebra constructors
// ---------------------------------------------------------------------------

/// u(h) for abelian h with restricted matrix R: commutative, truncated by
/// g_i^p = sum_j R[i][j] g_j.
pub fn enveloping_abelian(field: &Field, names: Vec<String>, r: &ScalarMat) -> Algebra {
    let n = names.len();
    let mut powers = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = RawElem::new();
        for j in 0..n {
            raw_insert(&mut e, Monomial::gen(n, j), r[(i, j)].clone());
        }
        powers.push(e);
    }
    new_algebra(field, names, BTreeMap::new(), powers, vec![RawTensor::new(); n])
}

/// The algebras attached to an abelian type: u(h), the derivation rho_z,
/// and (on demand) u(T) or a primitive deformation.
pub struct TypeCtx {
    pub ty: AbelianType,
    pub h_alg: Algebra,
    pub rho: Derivation,
}

impl TypeCtx {
    pub fn new(ty: &AbelianType) -> TypeCtx {
        let names = ty.h().names.clone();
        let h_alg = enveloping_abelian(&ty.field, names, &ty.r_mat);
        let rho = Derivation::from_matrix(&h_alg, &ty.m_mat);
        TypeCtx { ty: ty.clone(), h_alg, rho }
    }

    /// Lift an element of u(h) into an algebra whose first generators are
    /// the h generators.
    pub fn lift_elem(&self, target: &Algebra, a: &AlgElem) -> AlgElem {
        let extra = target.n_gens() - self.h_alg.n_gens();
        let mut out = AlgElem::zero(target);
        for (m, c) in &a.coeffs {
            let mut exps = m.0.clone();
            exps.extend(std::iter::repeat(0).take(extra));
            raw_insert(&mut out.coeffs, Monomial(exps), c.clone());
        }
        out
    }

    pub fn lift_tensor(&self, target: &Algebra, t: &TensorElem) -> RawTensor {
        let extra = target.n_gens() - self.h_alg.n_gens();
        let mut out = RawTensor::new();
        for (k, c) in &t.coeffs {
            let key: Vec<Monomial> = k
                .iter()
                .map(|m| {
                    let mut exps = m.0.clone();
                    exps.extend(std::iter::repeat(0).take(extra));
                    Monomial(exps)
                })
                .collect();
            tensor_insert(&mut out, key, c.clone());
        }
        out
    }

    /// u(T) when theta and chi vanish; otherwise the quotient with
    /// z^p = z^[p] - theta and Delta(z) = z (x) 1 + 1 (x) z + chi.
    pub fn deformed_algebra(&self, theta: &AlgElem, chi: &TensorElem) -> Algebra {
        let n = self.h_alg.n_gens();
        let f = &self.ty.field;
        let mut names = self.h_alg.names.clone();
        names.push("z".to_string());
        let dim = n + 1;
        // commutators [z, g_i] = rho(g_i)
        let mut commutators = BTreeMap::new();
        for i in 0..n {
            let img = &self.rho.images[i];
            if img.is_zero() {
                continue;
            }
            let mut raw = RawElem::new();
            for (m, c) in &img.coeffs {
                let mut exps = m.0.clone();
                exps.push(0);
                raw_insert(&mut raw, Monomial(exps), c.clone());
            }
            commutators.insert((n, i), raw);
        }
        // powers: h generators as in u(h); z^p = lambda z - theta
        let mut powers: Vec<RawElem> = Vec::with_capacity(dim);
        for i in 0..n {
            let mut e = RawElem::new();
            for j in 0..n {
                let mut exps = vec![0u8; dim];
                exps[j] = 1;
                raw_insert(&mut e, Monomial(exps), self.ty.r_mat[(i, j)].clone());
            }
            powers.push(e);
        }
        let mut zp = RawElem::new();
        let mut zexps = vec![0u8; dim];
        zexps[n] = 1;
        raw_insert(&mut zp, Monomial(zexps), self.ty.lambda.clone());
        for (m, c) in &theta.coeffs {
            let mut exps = m.0.clone();
            exps.push(0);
            raw_insert(&mut zp, Monomial(exps), -c);
        }
        powers.push(zp);
        // psi: zero on h generators, chi on z
        let mut psi = vec![RawTensor::new(); dim];
        let stub = new_algebra(f, names.clone(), commutators.clone(), powers.clone(), psi.clone());
        psi[n] = self.lift_tensor(&stub, chi);
        new_algebra(f, names, commutators, powers, psi)
    }

    pub fn u_t_algebra(&self) -> Algebra {
        self.deformed_algebra(&AlgElem::zero(&self.h_alg), &TensorElem::zero(&self.h_alg, 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldParams;
    use crate::rla::AbelianType;
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

    fn t5_ctx(f: &Field) -> TypeCtx {
        TypeCtx::new(&AbelianType::new(
            f,
            "T5",
            f.zero(),
            mat2(f, [[1, 0], [0, 0]]),
            mat2(f, [[0, 0], [1, 0]]),
        ))
    }

    fn h_alg_of_kind(f: &Field, r: [[i64; 2]; 2]) -> Algebra {
        enveloping_abelian(f, vec!["x".into(), "y".into()], &mat2(f, r))
    }

    #[test]
    fn truncated_power_rule_kind_c() {
        let f = gf9();
        // kind C: x^p = y
        let alg = h_alg_of_kind(&f, [[0, 1], [0, 0]]);
        let x = AlgElem::gen(&alg, 0);
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        assert_eq!(x3, AlgElem::gen(&alg, 1));
        // a * 1 = a
        assert_eq!(&x2 * &AlgElem::one(&alg), x2);
        assert_eq!(alg.basis().len(), 9);
    }

    #[test]
    fn u_t5_commutator() {
        let f = gf9();
        let ctx = t5_ctx(&f);
        let ut = ctx.u_t_algebra();
        assert_eq!(ut.basis().len(), 27);
        let y = AlgElem::gen(&ut, 1);
        let z = AlgElem::gen(&ut, 2);
        let x = AlgElem::gen(&ut, 0);
        // z*y - y*z = x
        assert_eq!(&(&z * &y) - &(&y * &z), x);
    }

    #[test]
    fn associativity_on_random_triples() {
        let f = gf9();
        let ctx = t5_ctx(&f);
        let ut = ctx.u_t_algebra();
        let basis = ut.basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        use rand::Rng;
        for _ in 0..200 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                let m = &basis[rng.gen_range(0..basis.len())];
                AlgElem::monomial(&ut, m).scale(&f.random(rng))
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let c = pick(&mut rng);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
        // commutative in u(h)
        let h = &ctx.h_alg;
        let hb = h.basis();
        for m1 in &hb {
            for m2 in &hb {
                let a = AlgElem::monomial(h, m1);
                let b = AlgElem::monomial(h, m2);
                assert_eq!(&a * &b, &b * &a);
            }
        }
    }

    #[test]
    fn coproduct_is_an_algebra_map() {
        let f = gf9();
        let ctx = t5_ctx(&f);
        let ut = ctx.u_t_algebra();
        let x = AlgElem::gen(&ut, 0);
        // Delta(x) = x (x) 1 + 1 (x) x
        let dx = x.coproduct();
        let expect = &AlgElem::tensor(&[&x, &AlgElem::one(&ut)])
            + &AlgElem::tensor(&[&AlgElem::one(&ut), &x]);
        assert_eq!(dx, expect);
        // Delta(x^2) = x^2 (x) 1 + 2 x (x) x + 1 (x) x^2
        let x2 = &x * &x;
        let dx2 = x2.coproduct();
        let expect = &(&AlgElem::tensor(&[&x2, &AlgElem::one(&ut)])
            + &AlgElem::tensor(&[&x, &x]).scale(&f.int(2)))
            + &AlgElem::tensor(&[&AlgElem::one(&ut), &x2]);
        assert_eq!(dx2, expect);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        use rand::Rng;
        let basis = ut.basis();
        for _ in 0..100 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                let m = &basis[rng.gen_range(0..basis.len())];
                AlgElem::monomial(&ut, m).scale(&f.random(rng))
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            assert_eq!((&a * &b).coproduct(), a.coproduct().mul(&b.coproduct()));
        }
    }

    #[test]
    fn counit_axiom_on_basis() {
        let f = gf9();
        let ctx = t5_ctx(&f);
        let ut = ctx.u_t_algebra();
        for m in ut.basis() {
            let a = AlgElem::monomial(&ut, &m);
            let d = a.coproduct();
            // (eps (x) 1) Delta(a) = a = (1 (x) eps) Delta(a)
            let mut left = AlgElem::zero(&ut);
            let mut right = AlgElem::zero(&ut);
            for (k, c) in &d.coeffs {
                if k[0].is_one() {
                    raw_insert(&mut left.coeffs, k[1].clone(), c.clone());
                }
                if k[1].is_one() {
                    raw_insert(&mut right.coeffs, k[0].clone(), c.clone());
                }
            }
            assert_eq!(left, a);
            assert_eq!(right, a);
        }
    }

    #[test]
    fn frobenius_power_in_kind_b() {
        let f = gf9();
        let h = h_alg_of_kind(&f, [[1, 0], [0, 0]]);
        // x^p = x
        let x = AlgElem::gen(&h, 0);
        let xp = x.pow(3);
        assert_eq!(xp, x);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        use rand::Rng;
        let basis = h.basis();
        for _ in 0..50 {
            let mut a = AlgElem::zero(&h);
            for _ in 0..3 {
                let m = &basis[rng.gen_range(0..basis.len())];
                a = &a + &AlgElem::monomial(&h, m).scale(&f.random(&mut rng));
            }
            assert_eq!(a.frobenius_power(), a.pow(3));
        }
    }

    #[test]
    fn omega_at_p3_and_semilinearity() {
        let f = gf9();
        let h = h_alg_of_kind(&f, [[0, 0], [0, 0]]);
        let x = AlgElem::gen(&h, 0);
        let w = omega(&x);
        // p = 3: omega(x) = x (x) x^2 + x^2 (x) x
        let x2 = &x * &x;
        let expect = &AlgElem::tensor(&[&x, &x2]) + &AlgElem::tensor(&[&x2, &x]);
        assert_eq!(w, expect);
        assert!(omega(&AlgElem::zero(&h)).is_zero());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..25 {
            let alpha = f.random(&mut rng);
            let y = AlgElem::gen(&h, 1);
            let r = &x.scale(&f.random(&mut rng)) + &y.scale(&f.random(&mut rng));
            assert_eq!(omega(&r.scale(&alpha)), omega(&r).scale(&alpha.pow(3)));
        }
    }

    #[test]
    fn derivation_leibniz_on_t5() {
        let f = gf9();
        let ctx = t5_ctx(&f);
        let y = AlgElem::gen(&ctx.h_alg, 1);
        let x = AlgElem::gen(&ctx.h_alg, 0);
        // rho(y) = x, rho(y^2) = 2xy
        assert_eq!(ctx.rho.apply(&y), x);
        let y2 = &y * &y;
        let expect = (&x * &y).scale(&f.int(2));
        assert_eq!(ctx.rho.apply(&y2), expect);
        assert!(ctx.rho.apply(&x).is_zero());
        // tensor Leibniz on random pure tensors
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        use rand::Rng;
        let basis = ctx.h_alg.basis();
        for _ in 0..25 {
            let a = AlgElem::monomial(&ctx.h_alg, &basis[rng.gen_range(0..basis.len())]);
            let b = AlgElem::monomial(&ctx.h_alg, &basis[rng.gen_range(0..basis.len())]);
            let t = AlgElem::tensor(&[&a, &b]);
            let lhs = ctx.rho.apply_tensor(&t);
            let rhs = &AlgElem::tensor(&[&ctx.rho.apply(&a), &b])
                + &AlgElem::tensor(&[&a, &ctx.rho.apply(&b)]);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn decompose_plus_splits_by_degree() {
        let f = gf9();
        let h = h_alg_of_kind(&f, [[1, 0], [0, 0]]);
        let x = AlgElem::gen(&h, 0);
        let y = AlgElem::gen(&h, 1);
        let a = &x + &(&x * &y);
        let (lin, tail) = a.decompose_plus().unwrap();
        assert_eq!(lin, x);
        assert_eq!(tail, &x * &y);
        // the T5 theta: x^{p-1} y - y
        let theta = &(&(&x * &x) * &y) - &y;
        let (lin, tail) = theta.decompose_plus().unwrap();
        assert_eq!(lin, -&y);
        assert_eq!(tail, &(&x * &x) * &y);
        assert!(AlgElem::one(&h).decompose_plus().is_err());
    }

    #[test]
    fn elem_text_round_trip() {
        let f = gf9();
        let ctx = t5_ctx(&f);
        let ut = ctx.u_t_algebra();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        use rand::Rng;
        let basis = ut.basis();
        for _ in 0..40 {
            let mut a = AlgElem::zero(&ut);
            for _ in 0..4 {
                let m = &basis[rng.gen_range(0..basis.len())];
                a = &a + &AlgElem::monomial(&ut, m).scale(&f.random(&mut rng));
            }
            let s = a.to_string();
            assert_eq!(parse_elem(&ut, &s).unwrap(), a, "round trip of {s}");
        }
    }
}
