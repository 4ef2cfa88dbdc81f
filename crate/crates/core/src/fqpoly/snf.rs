use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::fqpoly::PolyFq;
use crate::profiles::PartialMap;

/// A dense matrix with entries in `F_q[x]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: FieldCtx,
    rows: usize,
    cols: usize,
    entries: Vec<PolyFq>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl PolyMatrix {
    pub fn zeros(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        PolyMatrix { field: field.clone(), rows, cols, entries: vec![PolyFq::zero(field); rows * cols] }
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

    pub fn get(&self, i: usize, j: usize) -> &PolyFq {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: PolyFq) {
        self.entries[i * self.cols + j] = p;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= c * row[src]`
    fn sub_row_multiple(&mut self, dst: usize, src: usize, c: &PolyFq) {
        for j in 0..self.cols {
            let v = self.get(dst, j).sub(&c.mul(self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] -= c * col[src]`
    fn sub_col_multiple(&mut self, dst: usize, src: usize, c: &PolyFq) {
        for i in 0..self.rows {
            let v = self.get(i, dst).sub(&c.mul(self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    /// Position of a nonzero entry of minimal degree in the block
    /// `[t.., t..]`, ties broken by smallest `(row, col)`.
    fn pivot_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, (usize, usize))> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if let Some(d) = self.get(i, j).degree() {
                    if best.is_none_or(|(bd, _)| d < bd) {
                        best = Some((d, (i, j)));
                    }
                }
            }
        }
        best.map(|(_, pos)| pos)
    }

    /// Diagonal of the Smith normal form: `min(rows, cols)` entries
    /// `d_1 | d_2 | ...`, nonzero ones monic, zeros last.
    ///
    /// Elementary row and column operations over the Euclidean ring `F_q[x]`;
    /// the pivot is always a minimal-degree entry of the remaining block.
    pub fn smith_diagonal(&self) -> Vec<PolyFq> {
        let mut a = self.clone();
        let k = a.rows.min(a.cols);
        let mut diag = Vec::with_capacity(k);
        for t in 0..k {
            loop {
                let Some((pi, pj)) = a.pivot_in(t) else {
                    diag.resize(k, PolyFq::zero(&a.field));
                    return diag;
                };
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                let pivot = a.get(t, t).clone();
                let mut reduced = true;
                for i in t + 1..a.rows {
                    if a.get(i, t).is_zero() {
                        continue;
                    }
                    let (q, r) = a.get(i, t).divrem(&pivot).expect("pivot is nonzero");
                    a.sub_row_multiple(i, t, &q);
                    reduced &= r.is_zero();
                }
                for j in t + 1..a.cols {
                    if a.get(t, j).is_zero() {
                        continue;
                    }
                    let (q, r) = a.get(t, j).divrem(&pivot).expect("pivot is nonzero");
                    a.sub_col_multiple(j, t, &q);
                    reduced &= r.is_zero();
                }
                if !reduced {
                    // a remainder of smaller degree now sits in row or column t
                    continue;
                }
                let offender = (t + 1..a.rows)
                    .find(|&i| (t + 1..a.cols).any(|j| !a.get(i, j).rem(&pivot).expect("pivot is nonzero").is_zero()));
                match offender {
                    Some(i) => {
                        // row_t += row_i puts a non-multiple of the pivot in row t
                        let minus_one = PolyFq::one(&a.field).neg();
                        a.sub_row_multiple(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            diag.push(a.get(t, t).monic());
        }
        diag
    }
}

/// The `n x k` pencil `xI - A` of a partial map in standard coordinates:
/// column `j` is `x b_j - T b_j` for the `j`-th canonical basis vector
/// `b_j` of the domain.
pub fn pencil_of(pm: &PartialMap) -> PolyMatrix {
    let field = pm.field();
    let n = pm.ambient();
    let k = pm.domain().dim();
    let mut m = PolyMatrix::zeros(field, n, k);
    for (j, (b, t)) in pm.domain().basis_vectors().zip(pm.images()).enumerate() {
        for i in 0..n {
            m.set(i, j, PolyFq::new(field, vec![field.neg(t[i]), b[i]]));
        }
    }
    m
}

/// The invariant factors `f_1 | ... | f_k` of a partial map: the diagonal of
/// the Smith normal form of its pencil. The pencil has full column rank, so
/// all `k` factors are nonzero.
pub fn invariant_factors(pm: &PartialMap) -> Result<Vec<PolyFq>> {
    let diag = pencil_of(pm).smith_diagonal();
    if diag.iter().any(PolyFq::is_zero) {
        return Err(Error::Precondition("pencil of a partial map lost rank".into()));
    }
    Ok(diag)
}
