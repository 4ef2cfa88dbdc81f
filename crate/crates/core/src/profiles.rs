//! `T`-profiles of subspaces, defect chains of partial maps, simplicity and
//! the duality between the two.
//!
//! For an operator `T` on `V = F_q^n` and a subspace `W`, the profile of `W`
//! records the increments of `dim(W + TW + ... + T^{j-1}W)`. For a partial
//! map `T: W -> V` the defect chain is `W_0 = V`, `W_1 = W`,
//! `W_{i+1} = W_i ∩ T^{-1} W_i`; its dimension drops are the defect
//! dimensions, and the restriction of the transpose to the annihilator of
//! `W` has defect dimensions equal to the profile of `W`.

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::fqlinalg::{MatrixFq, Subspace, Vector};
use crate::fqpoly::{char_poly, invariant_factors};

pub use crate::counting::Partition;

/// A linear map from a subspace `W` of `F_q^n` into `F_q^n`, given by the
/// images of the canonical (RREF) basis vectors of `W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialMap {
    domain: Subspace,
    images: Vec<Vector>,
}

/// The chain `W_0 ⊇ W_1 ⊇ ... ⊇ W_ell` of a partial map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectChain {
    /// `d_0, ..., d_ell`.
    pub dims: Vec<usize>,
    pub ell: usize,
    /// `W_ell`, the largest invariant subspace contained in the domain.
    pub stable: Subspace,
}

impl PartialMap {
    pub fn new(domain: Subspace, images: Vec<Vector>) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a {}-dimensional domain",
                images.len(),
                domain.dim()
            )));
        }
        let q = domain.field().order();
        for v in &images {
            if v.len() != domain.ambient() {
                return Err(Error::DimensionMismatch(format!(
                    "image of length {} in ambient dimension {}",
                    v.len(),
                    domain.ambient()
                )));
            }
            if v.iter().any(|x| x.code() >= q) {
                return Err(Error::Parse("image entry outside the field".into()));
            }
        }
        Ok(PartialMap { domain, images })
    }

    /// The map sending each `generators[i]` to `images[i]`. Generators may be
    /// dependent as long as the prescribed images are consistent.
    pub fn from_generators(field: &FieldCtx, n: usize, generators: &[Vector], images: &[Vector]) -> Result<Self> {
        if generators.len() != images.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generators but {} images",
                generators.len(),
                images.len()
            )));
        }
        let rows: Vec<Vector> = generators.iter().zip(images).map(|(g, t)| [&g[..], &t[..]].concat()).collect();
        if rows.iter().any(|r| r.len() != 2 * n) {
            return Err(Error::DimensionMismatch(format!("vectors must have length {n}")));
        }
        // Row operations act on generators and images alike, so the reduced
        // left block is the canonical domain basis and the right block holds
        // its images.
        let (r, rank) = MatrixFq::from_rows(field, 2 * n, &rows)?.rref();
        let mut basis = Vec::new();
        let mut imgs = Vec::new();
        for i in 0..rank {
            let row = r.row(i);
            if row[..n].iter().all(|x| x.is_zero()) {
                return Err(Error::Precondition("images are inconsistent with linear dependencies".into()));
            }
            basis.push(row[..n].to_vec());
            imgs.push(row[n..].to_vec());
        }
        let domain = Subspace::from_rref_unchecked(MatrixFq::from_rows(field, n, &basis)?);
        PartialMap::new(domain, imgs)
    }

    /// The full-domain map given by an operator.
    pub fn from_operator(t: &MatrixFq) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::NotSquare { rows: t.nrows(), cols: t.ncols() });
        }
        let n = t.nrows();
        let images = (0..n).map(|j| t.column(j)).collect();
        PartialMap::new(Subspace::full(t.field(), n), images)
    }

    /// The operator matrix, when the domain is all of `F_q^n`.
    pub fn to_operator(&self) -> Option<MatrixFq> {
        self.domain
            .is_full()
            .then(|| MatrixFq::from_columns(self.field(), self.ambient(), &self.images).expect("images have length n"))
    }

    pub fn field(&self) -> &FieldCtx {
        self.domain.field()
    }

    pub fn ambient(&self) -> usize {
        self.domain.ambient()
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    /// Image matrix `n x k`, column `j` the image of the `j`-th basis vector.
    fn image_matrix(&self) -> MatrixFq {
        MatrixFq::from_columns(self.field(), self.ambient(), &self.images).expect("images have length n")
    }

    fn combine(&self, coords: &[FieldElem]) -> Vector {
        let f = self.field();
        let mut out = vec![FieldElem::ZERO; self.ambient()];
        for (c, t) in coords.iter().zip(&self.images) {
            for (o, &x) in out.iter_mut().zip(t) {
                *o = f.add(*o, f.mul(*c, x));
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElem]) -> Result<Vector> {
        let coords =
            self.domain.coordinates(v).ok_or_else(|| Error::NotContained("vector outside the domain".into()))?;
        Ok(self.combine(&coords))
    }

    /// `T U` for `U` inside the domain.
    pub fn image_of(&self, u: &Subspace) -> Result<Subspace> {
        let gens = u.basis_vectors().map(|b| self.apply(b)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), self.ambient(), &gens)
    }

    /// `T^{-1} U = {w in W : T w in U}`.
    pub fn preimage(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient() != self.ambient() {
            return Err(Error::DimensionMismatch("preimage of a subspace of another space".into()));
        }
        let k = self.domain.dim();
        let f = self.field();
        if k == 0 {
            return Ok(Subspace::zero(f, self.ambient()));
        }
        // coordinate vectors c with N M c = 0, N spanning U^0, M the image matrix
        let system = u.annihilator().basis().mul(&self.image_matrix())?;
        let coord_kernel = system.kernel();
        let gens: Vec<Vector> = coord_kernel
            .basis_vectors()
            .map(|c| {
                let mut w = vec![FieldElem::ZERO; self.ambient()];
                for (ci, b) in c.iter().zip(self.domain.basis_vectors()) {
                    for (wi, &bi) in w.iter_mut().zip(b) {
                        *wi = f.add(*wi, f.mul(*ci, bi));
                    }
                }
                w
            })
            .collect();
        Subspace::span(f, self.ambient(), &gens)
    }

    pub fn defect_chain(&self) -> Result<DefectChain> {
        let n = self.ambient();
        let mut prev = Subspace::full(self.field(), n);
        let mut cur = self.domain.clone();
        let mut dims = vec![n];
        let mut ell = 0;
        while cur != prev {
            dims.push(cur.dim());
            ell += 1;
            let next = cur.intersect(&self.preimage(&cur)?)?;
            prev = cur;
            cur = next;
        }
        Ok(DefectChain { dims, ell, stable: cur })
    }

    /// `lambda_i = d_{i-1} - d_i` for `1 <= i <= ell`.
    pub fn defect_dimensions(&self) -> Result<Partition> {
        let chain = self.defect_chain()?;
        Partition::new(chain.dims.windows(2).map(|w| w[0] - w[1]).collect())
    }

    /// Simple: the only invariant subspaces are `{0}` and `V`. Decided by the
    /// largest invariant subspace `W_ell`.
    pub fn is_simple(&self) -> Result<bool> {
        let stable = self.defect_chain()?.stable;
        Ok(stable.is_zero() || stable.is_full())
    }

    /// Whether every invariant factor of the pencil `xI - A` is 1.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(invariant_factors(self)?.iter().all(|f| f.is_one()))
    }

    /// Vectors from the canonical basis of `target` that extend the domain
    /// basis to a basis of `target`, chosen greedily in basis order.
    pub fn complement_basis(&self, target: &Subspace) -> Result<Vec<Vector>> {
        if !self.domain.is_subspace_of(target) {
            return Err(Error::NotContained(format!(
                "domain of dimension {} is not inside the target",
                self.domain.dim()
            )));
        }
        let mut span = self.domain.clone();
        let mut extra = Vec::new();
        for b in target.basis_vectors() {
            if !span.contains(b) {
                extra.push(b.to_vec());
                span = span.sum(&Subspace::span(self.field(), self.ambient(), &[b.to_vec()])?)?;
            }
        }
        Ok(extra)
    }

    /// The extension to `target` sending the vectors of
    /// [`complement_basis`](Self::complement_basis) to `extra_images`.
    pub fn extend(&self, target: &Subspace, extra_images: &[Vector]) -> Result<PartialMap> {
        let extra = self.complement_basis(target)?;
        if extra.len() != extra_images.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} extra images for {} added dimensions",
                extra_images.len(),
                extra.len()
            )));
        }
        let gens: Vec<Vector> = self.domain.basis_vectors().map(<[_]>::to_vec).chain(extra).collect();
        let imgs: Vec<Vector> = self.images.iter().cloned().chain(extra_images.iter().cloned()).collect();
        PartialMap::from_generators(self.field(), self.ambient(), &gens, &imgs)
    }

    /// Every extension of the map to `target`, ordered lexicographically by
    /// the codes of the extra images.
    pub fn extensions(&self, target: &Subspace) -> Result<Extensions> {
        let complement = self.complement_basis(target)?;
        let width = complement.len() * self.ambient();
        Ok(Extensions {
            base: self.clone(),
            gens: self.domain.basis_vectors().map(<[_]>::to_vec).chain(complement).collect(),
            counter: vec![0; width],
            done: false,
        })
    }
}

/// Stream of all extensions of a partial map to a larger subspace.
pub struct Extensions {
    base: PartialMap,
    gens: Vec<Vector>,
    counter: Vec<u32>,
    done: bool,
}

impl Extensions {
    /// `q^{n * added dimensions}`.
    pub fn total(&self) -> u128 {
        (self.base.field().order() as u128).pow(self.counter.len() as u32)
    }
}

impl Iterator for Extensions {
    type Item = PartialMap;

    fn next(&mut self) -> Option<PartialMap> {
        if self.done {
            return None;
        }
        let n = self.base.ambient();
        let extra: Vec<Vector> =
            self.counter.chunks(n.max(1)).map(|c| c.iter().map(|&x| FieldElem::from_code(x)).collect()).collect();
        let imgs: Vec<Vector> = self.base.images.iter().cloned().chain(extra).collect();
        let item =
            PartialMap::from_generators(self.base.field(), n, &self.gens, &imgs).expect("generators are independent");
        // odometer, last coordinate fastest
        let q = self.base.field().order();
        self.done = true;
        for slot in self.counter.iter_mut().rev() {
            *slot += 1;
            if *slot < q {
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(item)
    }
}

fn check_operator(t: &MatrixFq, w: &Subspace) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.nrows(), cols: t.ncols() });
    }
    if t.nrows() != w.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on a subspace of dimension-{} space",
            t.nrows(),
            t.ncols(),
            w.ambient()
        )));
    }
    Ok(())
}

/// The `T`-profile of `W`: the partition with
/// `mu_1 + ... + mu_j = dim(W + TW + ... + T^{j-1} W)`.
/// The zero subspace has the empty profile.
pub fn profile(t: &MatrixFq, w: &Subspace) -> Result<Partition> {
    check_operator(t, w)?;
    let mut parts = Vec::new();
    let mut sum = w.clone();
    let mut last = 0;
    // S_{j+1} = W + T S_j
    while sum.dim() > last {
        parts.push(sum.dim() - last);
        last = sum.dim();
        sum = w.sum(&sum.image(t)?)?;
    }
    Partition::new(parts)
}

/// Simple operator: irreducible characteristic polynomial.
pub fn is_simple_operator(t: &MatrixFq) -> Result<bool> {
    char_poly(t)?.is_irreducible()
}

/// The restriction of the transpose of `T` to the annihilator of `W`.
pub fn dual_restriction(t: &MatrixFq, w: &Subspace) -> Result<PartialMap> {
    check_operator(t, w)?;
    let tt = t.transpose();
    let domain = w.annihilator();
    let images = domain.basis_vectors().map(|b| tt.mul_vec(b)).collect::<Result<Vec<_>>>()?;
    PartialMap::new(domain, images)
}
