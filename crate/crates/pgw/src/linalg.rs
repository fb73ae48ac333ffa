//! Dense exact linear algebra, in two flavors: matrices of GF(p^m) scalars
//! for the cohomology solves, and u64 matrices over the prime field for the
//! big rank computations and for F_p-linearizations of Frobenius-semilinear
//! maps.

use crate::gf::{Field, FieldExt, Scalar};

// ---------------------------------------------------------------------------
// matrices over GF(p^m)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        ScalarMat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        ScalarMat { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &ScalarMat) -> ScalarMat {
        assert_eq!(self.cols, other.rows);
        let mut out = ScalarMat::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v.iter()) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> ScalarMat {
        let mut out = ScalarMat::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn pow_entrywise_p(&self) -> ScalarMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = x.frobenius();
        }
        out
    }

    pub fn matrix_power(&self, e: u64) -> ScalarMat {
        assert_eq!(self.rows, self.cols);
        let mut acc = ScalarMat::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn det2(&self) -> Scalar {
        assert!(self.rows == 2 && self.cols == 2);
        &(&self[(0, 0)] * &self[(1, 1)]) - &(&self[(0, 1)] * &self[(1, 0)])
    }

    pub fn inverse(&self) -> Option<ScalarMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = ScalarMat::identity(&self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work[(r, col)].is_zero())?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let c = work[(col, col)].inv().unwrap();
            work.scale_row(col, &c);
            inv.scale_row(col, &c);
            for r in 0..n {
                if r != col && !work[(r, col)].is_zero() {
                    let f = work[(r, col)].clone();
                    work.sub_scaled_row(r, col, &f);
                    inv.sub_scaled_row(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            self[(r, j)] = &self[(r, j)] * c;
        }
    }

    /// row[r] -= c * row[src]
    fn sub_scaled_row(&mut self, r: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(r, j)] = &self[(r, j)] - &v;
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    /// Basis of the right null space, as rows.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.kernel_basis()
    }
}

/// Incremental row-echelon accumulator over GF(p^m); memory O(cols^2)
/// regardless of how many rows stream through.
pub struct Echelon {
    pub field: Field,
    pub cols: usize,
    /// Rows normalized with leading 1, kept mutually reduced, sorted by
    /// pivot column.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, cols: usize) -> Echelon {
        Echelon { field: field.clone(), cols, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Residual of a row after reduction against the current basis.
    pub fn reduce(&self, mut row: Vec<Scalar>) -> Vec<Scalar> {
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if !row[pc].is_zero() {
                let c = row[pc].clone();
                for (x, y) in row.iter_mut().zip(r.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        row
    }

    pub fn contains(&self, row: Vec<Scalar>) -> bool {
        self.reduce(row).iter().all(|s| s.is_zero())
    }

    /// Insert a row; returns true when the rank grew.
    pub fn insert(&mut self, row: Vec<Scalar>) -> bool {
        let mut row = self.reduce(row);
        let Some(lead) = row.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = row[lead].inv().unwrap();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // back-substitute into existing rows to keep the basis reduced
        for r in self.rows.iter_mut() {
            if !r[lead].is_zero() {
                let c = r[lead].clone();
                for (x, y) in r.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&c| c < lead);
        self.rows.insert(pos, row);
        self.pivots.insert(pos, lead);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Basis of the null space of the accumulated row space (as a matrix).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if self.pivots.contains(&fc) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                v[pc] = -&r[fc];
            }
            basis.push(v);
        }
        basis
    }
}

impl std::ops::Index<(usize, usize)> for ScalarMat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}
impl std::ops::IndexMut<(usize, usize)> for ScalarMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// A factored linear system A x = b for repeated solves with the same A.
/// Stores E with E*A in reduced row echelon form.
pub struct LinSolver {
    field: Field,
    pub rows: usize,
    pub cols: usize,
    rref: ScalarMat,
    e: ScalarMat,
    pivots: Vec<(usize, usize)>,
}

impl LinSolver {
    pub fn new(a: &ScalarMat) -> LinSolver {
        let field = a.field.clone();
        let mut work = a.clone();
        let mut e = ScalarMat::identity(&field, a.rows);
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..work.cols {
            let Some(pr) = (next_row..work.rows).find(|&r| !work[(r, col)].is_zero()) else {
                continue;
            };
            work.swap_rows(next_row, pr);
            e.swap_rows(next_row, pr);
            let inv = work[(next_row, col)].inv().unwrap();
            work.scale_row(next_row, &inv);
            e.scale_row(next_row, &inv);
            for r in 0..work.rows {
                if r != next_row && !work[(r, col)].is_zero() {
                    let c = work[(r, col)].clone();
                    work.sub_scaled_row(r, next_row, &c);
                    e.sub_scaled_row(r, next_row, &c);
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == work.rows {
                break;
            }
        }
        LinSolver { field, rows: a.rows, cols: a.cols, rref: work, e, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One particular solution of A x = b, or None. The free coordinates of
    /// the returned solution are zero, which makes it canonical for a fixed
    /// column order.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let eb = self.e.mul_vec(b);
        for r in self.pivots.len()..self.rows {
            if !eb[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![self.field.zero(); self.cols];
        for &(pr, pc) in &self.pivots {
            x[pc] = eb[pr].clone();
        }
        Some(x)
    }

    /// Basis of the null space of A.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut basis = Vec::new();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !self.pivots.iter().any(|&(_, pc)| pc == *c)).collect();
        for &fc in &free_cols {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for &(pr, pc) in &self.pivots {
                v[pc] = -&self.rref[(pr, fc)];
            }
            basis.push(v);
        }
        basis
    }
}

// ---------------------------------------------------------------------------
// matrices over F_p (u64 entries)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    fn inv_mod(&self, a: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    /// Rank by incremental row reduction.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new(); // (col, normalized row)
        for i in 0..self.rows {
            let mut row = self.data[i * self.cols..(i + 1) * self.cols].to_vec();
            for (pc, prow) in &pivots {
                let c = row[*pc];
                if c != 0 {
                    let mult = p - c;
                    for (x, y) in row.iter_mut().zip(prow.iter()) {
                        *x = (*x + mult * *y) % p;
                    }
                }
            }
            if let Some(lead) = row.iter().position(|&x| x != 0) {
                let inv = self.inv_mod(row[lead]);
                for x in row.iter_mut() {
                    *x = *x * inv % p;
                }
                let pos = pivots.partition_point(|(c, _)| *c < lead);
                pivots.insert(pos, (lead, row));
            }
        }
        pivots.len()
    }

    /// Reduced row echelon form together with pivot (row, col) pairs.
    pub fn rref(&self) -> (FpMat, Vec<(usize, usize)>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            let Some(pr) = (next_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m.get(next_row, j);
                let v = m.get(pr, j);
                m.set(next_row, j, v);
                m.set(pr, j, tmp);
            }
            let inv = m.inv_mod(m.get(next_row, col));
            for j in 0..m.cols {
                let v = m.get(next_row, j) * inv % p;
                m.set(next_row, j, v);
            }
            for r in 0..m.rows {
                if r != next_row && m.get(r, col) != 0 {
                    let c = m.get(r, col);
                    let mult = p - c;
                    for j in 0..m.cols {
                        let v = (m.get(r, j) + mult * m.get(next_row, j)) % p;
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// One solution of A x = b, or None. Free coordinates are zero.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let p = self.p;
        let mut aug = FpMat::zero(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % p);
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&(_, pc)| pc == self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![0u64; self.cols];
        for &(pr, pc) in &pivots {
            x[pc] = r.get(pr, self.cols);
        }
        Some(x)
    }

    /// Basis of the null space, as rows.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (r, pivots) = self.rref();
        let piv_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if piv_cols.contains(&fc) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for &(pr, pc) in &pivots {
                v[pc] = (p - r.get(pr, fc)) % p;
            }
            basis.push(v);
        }
        basis
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc += self.get(i, j) * v[j] % self.p;
                }
                acc % self.p
            })
            .collect()
    }
}

/// The row space of `a` equals the row space of `b`.
pub fn same_row_space(a: &FpMat, b: &FpMat) -> bool {
    assert_eq!(a.cols, b.cols);
    let ra = a.rank();
    let rb = b.rank();
    if ra != rb {
        return false;
    }
    let mut stacked = FpMat::zero(a.p, a.rows + b.rows, a.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            stacked.set(i, j, a.get(i, j));
        }
    }
    for i in 0..b.rows {
        for j in 0..b.cols {
            stacked.set(a.rows + i, j, b.get(i, j));
        }
    }
    stacked.rank() == ra
}

/// F_p-linearization: GF(p^m)^n viewed as F_p^{nm}, component i occupying
/// the coordinate block i*m..(i+1)*m.
pub fn flatten_vec(field: &Field, v: &[Scalar]) -> Vec<u64> {
    let m = field.m();
    let mut out = vec![0u64; v.len() * m];
    for (i, s) in v.iter().enumerate() {
        for (j, &c) in s.coeffs().iter().enumerate() {
            out[i * m + j] = c;
        }
    }
    out
}

pub fn unflatten_vec(field: &Field, flat: &[u64]) -> Vec<Scalar> {
    let m = field.m();
    assert_eq!(flat.len() % m, 0);
    flat.chunks(m).map(|c| Scalar::from_coeffs(field, c.to_vec())).collect()
}

/// Matrix of an additive (F_p-linear) map GF(p^m)^n -> GF(p^m)^k given as a
/// closure, evaluated on the F_p-basis t^j e_i.
pub fn linearize<F>(field: &Field, n: usize, k: usize, f: F) -> FpMat
where
    F: Fn(&[Scalar]) -> Vec<Scalar>,
{
    let m = field.m();
    let mut out = FpMat::zero(field.p(), k * m, n * m);
    for i in 0..n {
        for j in 0..m {
            let mut v = vec![field.zero(); n];
            let mut coeffs = vec![0u64; m];
            coeffs[j] = 1;
            v[i] = Scalar::from_coeffs(field, coeffs);
            let img = f(&v);
            assert_eq!(img.len(), k);
            let flat = flatten_vec(field, &img);
            for (r, &val) in flat.iter().enumerate() {
                out.set(r, i * m + j, val);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldParams;
    use rand::SeedableRng;

    #[test]
    fn scalar_mat_solve_and_kernel() {
        let f = FieldParams::new(3, 2).unwrap();
        let a = ScalarMat::from_rows(
            &f,
            vec![
                vec![f.one(), f.int(2), f.zero()],
                vec![f.zero(), f.one(), f.one()],
            ],
        );
        let solver = LinSolver::new(&a);
        assert_eq!(solver.rank(), 2);
        let b = vec![f.int(1), f.int(2)];
        let x = solver.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let ker = solver.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(|s| s.is_zero()));
    }

    #[test]
    fn scalar_mat_inverse_round_trip() {
        let f = FieldParams::new(3, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let m = ScalarMat::from_rows(
                &f,
                (0..3).map(|_| (0..3).map(|_| f.random(&mut rng)).collect()).collect(),
            );
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv), ScalarMat::identity(&f, 3));
            }
        }
    }

    #[test]
    fn fp_mat_rank_solve_kernel() {
        let m = FpMat { p: 5, rows: 3, cols: 4, data: vec![1, 2, 0, 1, 0, 0, 1, 3, 1, 2, 1, 4] };
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_dim(), 2);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
        let b = vec![1, 3, 4];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[1, 0, 0]).is_none());
    }

    #[test]
    fn linearize_frobenius_has_full_rank() {
        let f = FieldParams::new(3, 4).unwrap();
        let mat = linearize(&f, 1, 1, |v| vec![v[0].frobenius()]);
        assert_eq!(mat.rank(), 4);
        // the Artin-Schreier map x -> x^p - x has kernel F_p
        let as_mat = linearize(&f, 1, 1, |v| vec![&v[0].frobenius() - &v[0]]);
        assert_eq!(as_mat.kernel_dim(), 1);
    }
}
