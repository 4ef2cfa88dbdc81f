//! Dense matrices over `F_q` and subspaces of `F_q^n` in canonical form.
//!
//! Vectors are column vectors: an `n x n` matrix `T` acts by `v -> T v`.
//! A [`Subspace`] always stores the reduced row echelon basis of its span,
//! so two subspaces are equal as sets exactly when their values are equal.
//! The dual of `F_q^n` is identified with `F_q^n` through the standard dot
//! product, which makes annihilators ordinary null spaces.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};

pub type Vector = Vec<FieldElem>;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Hash for MatrixFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixFq<{:?}, {}x{}>[{}]", self.field, self.rows, self.cols, self)
    }
}

/// Text form: rows separated by `;`, entries by `,`.
impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn new(field: &FieldCtx, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(x) = data.iter().find(|x| x.code() >= field.order()) {
            return Err(Error::Parse(format!("entry {x} not in {field}")));
        }
        Ok(MatrixFq { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    /// Stacks row vectors of length `cols`.
    pub fn from_rows(field: &FieldCtx, cols: usize, rows: &[Vector]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} where {cols} expected", r.len())));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &FieldCtx, rows: usize, columns: &[Vector]) -> Result<Self> {
        Ok(Self::from_rows(field, rows, columns)?.transpose())
    }

    /// Small integer entries, reduced into the prime subfield. Test helper.
    pub fn from_ints(field: &FieldCtx, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| field.from_int(x))
            })
            .collect();
        MatrixFq { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Parses the `;`/`,` text format. `cols` is required when the text
    /// has no rows (empty string) and checked otherwise.
    pub fn parse(field: &FieldCtx, text: &str, cols: Option<usize>) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            let cols = cols.ok_or_else(|| Error::Parse("empty matrix needs a column count".into()))?;
            return Ok(Self::zeros(field, 0, cols));
        }
        let mut rows = Vec::new();
        for row in text.split(';') {
            let entries = row
                .split(',')
                .map(|s| {
                    let s = s.trim();
                    s.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {s:?}")))
                        .and_then(|c| field.elem(c))
                })
                .collect::<Result<Vector>>()?;
            rows.push(entries);
        }
        let width = cols.unwrap_or(rows[0].len());
        Self::from_rows(field, width, &rows)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        Ok(self
            .rows()
            .map(|r| r.iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect())
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form (zero rows kept at the bottom) and rank.
    pub fn rref(&self) -> (MatrixFq, usize) {
        let f = &self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(piv, rank);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let x = m.get(rank, j);
                m.set(rank, j, f.mul(x, inv));
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let x = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                    m.set(r, j, x);
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Null space `{v : A v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, rank) = self.rref();
        let pivots = pivot_columns(&r, rank);
        let f = &self.field;
        let mut gens = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldElem::ZERO; self.cols];
            v[free] = FieldElem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            gens.push(v);
        }
        Subspace::span(f, self.cols, &gens).expect("kernel vectors have the ambient length")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn pivot_columns(rref: &MatrixFq, rank: usize) -> Vec<usize> {
    (0..rank).map(|i| rref.row(i).iter().position(|x| !x.is_zero()).expect("nonzero pivot row")).collect()
}

/// A subspace of `F_q^n`, stored by its RREF basis (no zero rows).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixFq,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {:?}^{}: [{}])", self.dim(), self.basis.field, self.ambient, self.basis)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), &self.basis.data).cmp(&(other.ambient, other.dim(), &other.basis.data))
    }
}

impl Subspace {
    pub fn zero(field: &FieldCtx, ambient: usize) -> Self {
        Subspace { ambient, basis: MatrixFq::zeros(field, 0, ambient) }
    }

    pub fn full(field: &FieldCtx, ambient: usize) -> Self {
        Subspace { ambient, basis: MatrixFq::identity(field, ambient) }
    }

    pub fn span(field: &FieldCtx, ambient: usize, generators: &[Vector]) -> Result<Self> {
        Ok(Self::row_space(&MatrixFq::from_rows(field, ambient, generators)?))
    }

    /// The span of the rows of `m`.
    pub fn row_space(m: &MatrixFq) -> Self {
        let (r, rank) = m.rref();
        let data = r.data[..rank * r.cols].to_vec();
        Subspace { ambient: m.cols, basis: MatrixFq { field: m.field.clone(), rows: rank, cols: m.cols, data } }
    }

    /// Wraps a basis already known to be in RREF without zero rows.
    pub(crate) fn from_rref_unchecked(basis: MatrixFq) -> Self {
        debug_assert_eq!(basis.rref().0, basis);
        debug_assert_eq!(basis.rank(), basis.rows);
        Subspace { ambient: basis.cols, basis }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.basis.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[FieldElem]> {
        self.basis.rows()
    }

    pub fn pivots(&self) -> Vec<usize> {
        pivot_columns(&self.basis, self.dim())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[FieldElem]) -> Option<Vector> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vector = self.pivots().iter().map(|&p| v[p]).collect();
        let f = self.field();
        let mut w = vec![FieldElem::ZERO; self.ambient];
        for (c, b) in coords.iter().zip(self.basis_vectors()) {
            for (wi, &bi) in w.iter_mut().zip(b) {
                *wi = f.add(*wi, f.mul(*c, bi));
            }
        }
        (w == v).then_some(coords)
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().all(|b| other.contains(b))
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field() != other.field() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of {:?}^{} and {:?}^{}",
                self.field(),
                self.ambient,
                other.field(),
                other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut data = self.basis.data.clone();
        data.extend_from_slice(&other.basis.data);
        let m = MatrixFq::new(self.field(), self.dim() + other.dim(), self.ambient, data)?;
        Ok(Self::row_space(&m))
    }

    /// Intersection by the Zassenhaus algorithm: reduce `[u | u]`, `[v | 0]`
    /// and keep the right halves of rows whose left half vanished.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let n = self.ambient;
        let f = self.field();
        let mut rows: Vec<Vector> = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis_vectors() {
            rows.push([u, u].concat());
        }
        for v in other.basis_vectors() {
            rows.push([v, &vec![FieldElem::ZERO; n][..]].concat());
        }
        let (r, rank) = MatrixFq::from_rows(f, 2 * n, &rows)?.rref();
        let gens: Vec<Vector> = (0..rank)
            .map(|i| r.row(i))
            .filter(|row| row[..n].iter().all(|x| x.is_zero()))
            .map(|row| row[n..].to_vec())
            .collect();
        Subspace::span(f, n, &gens)
    }

    /// `W^0`, the functionals vanishing on `W`, as a subspace of `F_q^n`.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    fn check_operator(&self, t: &MatrixFq) -> Result<()> {
        if !t.is_square() {
            return Err(Error::NotSquare { rows: t.rows, cols: t.cols });
        }
        if t.rows != self.ambient || t.field != *self.field() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on a subspace of {:?}^{}",
                t.rows,
                t.cols,
                self.field(),
                self.ambient
            )));
        }
        Ok(())
    }

    /// `T W`.
    pub fn image(&self, t: &MatrixFq) -> Result<Subspace> {
        self.check_operator(t)?;
        let gens = self.basis_vectors().map(|b| t.mul_vec(b)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), self.ambient, &gens)
    }

    /// `T^{-1} W = {v : T v in W}`, the null space of `N T` where the rows of
    /// `N` span `W^0`.
    pub fn preimage(&self, t: &MatrixFq) -> Result<Subspace> {
        self.check_operator(t)?;
        Ok(self.annihilator().basis.mul(t)?.kernel())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{field_of_order, make_field};

    fn f2() -> FieldCtx {
        make_field(2, 1).unwrap()
    }

    fn e(field: &FieldCtx, n: usize, i: usize) -> Vector {
        let mut v = vec![FieldElem::ZERO; n];
        v[i] = FieldElem::ONE;
        let _ = field;
        v
    }

    fn ints(field: &FieldCtx, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| field.from_int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let id = MatrixFq::identity(&f, 4);
        assert_eq!(id.rref(), (id.clone(), 4));
        let z = MatrixFq::zeros(&f, 3, 3);
        assert_eq!(z.rref(), (z.clone(), 0));
        let m = MatrixFq::from_ints(&f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(r, MatrixFq::from_ints(&f, &[&[1, 0, 1], &[0, 1, 1], &[0, 0, 0]]));
    }

    #[test]
    fn span_examples() {
        let f = f2();
        assert!(Subspace::span(&f, 3, &[]).unwrap().is_zero());
        let line = Subspace::span(&f, 3, &[e(&f, 3, 0), e(&f, 3, 0)]).unwrap();
        assert_eq!(line.dim(), 1);
        assert_eq!(line.basis().row(0), &ints(&f, &[1, 0, 0])[..]);
        let plane = Subspace::span(&f, 3, &[ints(&f, &[1, 1, 0]), ints(&f, &[0, 1, 1]), ints(&f, &[1, 0, 1])]).unwrap();
        assert_eq!(plane.dim(), 2);
        assert!(matches!(Subspace::span(&f, 3, &[ints(&f, &[1, 0])]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn sum_and_intersection_examples() {
        let f = f2();
        let u = Subspace::span(&f, 3, &[e(&f, 3, 0)]).unwrap();
        let v = Subspace::span(&f, 3, &[e(&f, 3, 1)]).unwrap();
        let zero = Subspace::zero(&f, 3);
        let full = Subspace::full(&f, 3);
        assert_eq!(u.sum(&zero).unwrap(), u);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.sum(&v).unwrap(), Subspace::span(&f, 3, &[e(&f, 3, 0), e(&f, 3, 1)]).unwrap());
        assert_eq!(u.intersect(&full).unwrap(), u);
        assert!(u.intersect(&v).unwrap().is_zero());
        let a = Subspace::span(&f, 3, &[e(&f, 3, 0), e(&f, 3, 1)]).unwrap();
        let b = Subspace::span(&f, 3, &[e(&f, 3, 1), e(&f, 3, 2)]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), v);
        assert!(u.sum(&Subspace::zero(&f, 4)).is_err());
    }

    fn companion_x3_x_1(f: &FieldCtx) -> MatrixFq {
        // columns e_2, e_3, (1,1,0)^T
        MatrixFq::from_ints(f, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]])
    }

    #[test]
    fn image_and_preimage_examples() {
        let f = f2();
        let t = companion_x3_x_1(&f);
        let zero = Subspace::zero(&f, 3);
        let full = Subspace::full(&f, 3);
        let id = MatrixFq::identity(&f, 3);
        let l1 = Subspace::span(&f, 3, &[e(&f, 3, 0)]).unwrap();
        let l2 = Subspace::span(&f, 3, &[e(&f, 3, 1)]).unwrap();
        assert!(zero.image(&t).unwrap().is_zero());
        assert_eq!(l1.image(&id).unwrap(), l1);
        assert_eq!(l1.image(&t).unwrap(), l2);
        assert_eq!(full.preimage(&t).unwrap(), full);
        assert_eq!(l1.preimage(&id).unwrap(), l1);
        assert_eq!(l2.preimage(&t).unwrap(), l1);
        assert!(matches!(l1.image(&MatrixFq::identity(&f, 2)), Err(Error::DimensionMismatch(_))));
        assert!(matches!(l1.image(&MatrixFq::zeros(&f, 3, 2)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn preimage_contains_kernel() {
        let f = f2();
        let t = MatrixFq::from_ints(&f, &[&[1, 1, 0], &[0, 0, 0], &[0, 0, 1]]);
        let ker = t.kernel();
        assert_eq!(ker.dim(), 1);
        let w = Subspace::span(&f, 3, &[e(&f, 3, 2)]).unwrap();
        let pre = w.preimage(&t).unwrap();
        assert!(ker.is_subspace_of(&pre));
        assert_eq!(pre.dim(), 2);
    }

    #[test]
    fn annihilator_examples() {
        for q in [2, 3, 5] {
            let f = field_of_order(q).unwrap();
            let n = 4;
            assert_eq!(Subspace::zero(&f, n).annihilator(), Subspace::full(&f, n));
            assert_eq!(Subspace::full(&f, n).annihilator(), Subspace::zero(&f, n));
            let l = Subspace::span(&f, n, &[e(&f, n, 0)]).unwrap();
            let rest = Subspace::span(&f, n, &[e(&f, n, 1), e(&f, n, 2), e(&f, n, 3)]).unwrap();
            assert_eq!(l.annihilator(), rest);
        }
    }

    #[test]
    fn transpose_examples() {
        let f = f2();
        let id = MatrixFq::identity(&f, 3);
        assert_eq!(id.transpose(), id);
        let t = companion_x3_x_1(&f);
        assert_eq!(t.transpose().transpose(), t);
        let tt = t.transpose();
        assert_eq!(tt, MatrixFq::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(tt.get(i, j), t.get(j, i));
            }
        }
    }

    #[test]
    fn text_format() {
        let f = f2();
        let m = MatrixFq::parse(&f, "0,0,1;1,0,1;0,1,0", None).unwrap();
        assert_eq!(m, companion_x3_x_1(&f));
        assert_eq!(m.to_string(), "0,0,1;1,0,1;0,1,0");
        assert_eq!(MatrixFq::parse(&f, "", Some(3)).unwrap().nrows(), 0);
        assert!(MatrixFq::parse(&f, "", None).is_err());
        assert!(MatrixFq::parse(&f, "0,2", None).is_err());
        assert!(MatrixFq::parse(&f, "0,1;1", None).is_err());
        assert!(MatrixFq::parse(&f, "a", None).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = field_of_order(3).unwrap();
        let w = Subspace::span(&f, 3, &[ints(&f, &[1, 2, 0]), ints(&f, &[0, 1, 1])]).unwrap();
        let v = ints(&f, &[2, 0, 1]);
        let u = ints(&f, &[2, 2, 1]);
        assert!(w.contains(&u));
        assert!(!w.contains(&v));
    }
}
