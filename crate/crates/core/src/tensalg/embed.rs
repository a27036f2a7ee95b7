use super::{ComplexMatrix, C64};
use crate::{Error, Result};

/// Largest register dimension that may be materialized densely.
pub const DENSE_CAP: usize = 4096;

/// A local operator placed on an ordered list of sites of a qubit register.
///
/// Leg `i` of `op` acts on `sites[i]`; sites are 1-based. The basis layout
/// (which register indices each local index touches) is computed once at
/// construction.
#[derive(Clone, Debug)]
pub struct EmbeddedOperator {
    op: ComplexMatrix,
    sites: Vec<usize>,
    n_sites: usize,
    offsets: Vec<usize>,
    bases: Vec<usize>,
}

impl EmbeddedOperator {
    pub fn new(op: ComplexMatrix, sites: &[usize], n_sites: usize) -> Result<Self> {
        let k = sites.len();
        if k == 0 || n_sites == 0 || n_sites > 30 || k > n_sites {
            return Err(Error::InvalidSites);
        }
        let mut seen = vec![false; n_sites + 1];
        for &s in sites {
            if s == 0 || s > n_sites || seen[s] {
                return Err(Error::InvalidSites);
            }
            seen[s] = true;
        }
        if !op.is_square() || op.rows() != 1 << k {
            return Err(Error::DimensionMismatch(format!(
                "a {}x{} operator cannot act on {k} qubit sites",
                op.rows(),
                op.cols()
            )));
        }

        let bit = |s: usize| 1usize << (n_sites - s);
        let offsets = (0..1usize << k)
            .map(|a| {
                (0..k)
                    .filter(|&l| (a >> (k - 1 - l)) & 1 == 1)
                    .map(|l| bit(sites[l]))
                    .sum()
            })
            .collect();

        let free: Vec<usize> = (1..=n_sites).filter(|&s| !seen[s]).map(bit).collect();
        let bases = (0..1usize << free.len())
            .map(|c| {
                free.iter()
                    .enumerate()
                    .filter(|&(i, _)| (c >> i) & 1 == 1)
                    .map(|(_, &b)| b)
                    .sum()
            })
            .collect();

        Ok(Self { op, sites: sites.to_vec(), n_sites, offsets, bases })
    }

    #[inline]
    pub fn op(&self) -> &ComplexMatrix {
        &self.op
    }

    #[inline]
    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    #[inline]
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    #[inline]
    pub fn local_dim(&self) -> usize {
        2
    }

    /// Dimension of the full register, `2^n_sites`.
    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    /// The full register matrix. Fails beyond [`DENSE_CAP`].
    pub fn embed(&self) -> Result<ComplexMatrix> {
        let dim = self.dim();
        if dim > DENSE_CAP {
            return Err(Error::TooLarge { dim, cap: DENSE_CAP });
        }
        let mut out = ComplexMatrix::zeros(dim, dim);
        let m = self.offsets.len();
        for &b in &self.bases {
            for a in 0..m {
                let row = b + self.offsets[a];
                for a2 in 0..m {
                    out[(row, b + self.offsets[a2])] = self.op[(a, a2)];
                }
            }
        }
        Ok(out)
    }

    /// `embed()·v` without forming the register matrix.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        let mut out = v.to_vec();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub fn apply_in_place(&self, v: &mut [C64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state of length {} on a {}-site register",
                v.len(),
                self.n_sites
            )));
        }
        let m = self.offsets.len();
        let mut local = vec![C64::new(0.0, 0.0); m];
        for &b in &self.bases {
            for (x, &o) in local.iter_mut().zip(&self.offsets) {
                *x = v[b + o];
            }
            for a in 0..m {
                v[b + self.offsets[a]] = self.op.row(a).iter().zip(&local).map(|(p, q)| p * q).sum();
            }
        }
        Ok(())
    }

    /// `embed()·mat` for a register-sized `mat`, without forming `embed()`.
    pub fn apply_left(&self, mat: &ComplexMatrix) -> Result<ComplexMatrix> {
        let dim = self.dim();
        if mat.rows() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on a {}-site register",
                mat.rows(),
                mat.cols(),
                self.n_sites
            )));
        }
        let cols = mat.cols();
        let src = mat.as_slice();
        let mut out = ComplexMatrix::zeros(dim, cols);
        let dst = out.as_mut_slice();
        let m = self.offsets.len();
        for &b in &self.bases {
            for a in 0..m {
                let r = (b + self.offsets[a]) * cols;
                for a2 in 0..m {
                    let coeff = self.op[(a, a2)];
                    if coeff == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let s = (b + self.offsets[a2]) * cols;
                    for c in 0..cols {
                        dst[r + c] += coeff * src[s + c];
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Convenience wrapper: `EmbeddedOperator::new(op, sites, n_sites)?.embed()`.
pub fn embed(op: &ComplexMatrix, sites: &[usize], n_sites: usize) -> Result<ComplexMatrix> {
    EmbeddedOperator::new(op.clone(), sites, n_sites)?.embed()
}
