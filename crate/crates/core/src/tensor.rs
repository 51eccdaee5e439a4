//! Sparse rational tensors and pairwise contraction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// Errors from tensor construction and contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorError {
    /// The index space does not fit the 128-bit linear key.
    TooLarge,
    AxisOutOfRange { axis: usize, rank: usize },
    DimensionMismatch { left: usize, right: usize },
    IndexOutOfRange,
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::TooLarge => write!(f, "tensor index space exceeds 2^128"),
            TensorError::AxisOutOfRange { axis, rank } => {
                write!(f, "axis {axis} out of range for rank {rank}")
            }
            TensorError::DimensionMismatch { left, right } => {
                write!(f, "contracted axes have dimensions {left} and {right}")
            }
            TensorError::IndexOutOfRange => write!(f, "index out of range"),
        }
    }
}

/// Total number of cells of a shape, if it fits a `u128`.
pub fn shape_size(shape: &[usize]) -> Option<u128> {
    shape
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
}

/// A tensor with a fixed shape and only its nonzero entries stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseTensor {
    shape: Vec<usize>,
    strides: Vec<u128>,
    entries: BTreeMap<u128, Scalar>,
}

impl fmt::Debug for SparseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseTensor{:?} {{", self.shape)?;
        for (idx, x) in self.iter() {
            write!(f, " {idx:?}: {x},")?;
        }
        write!(f, " }}")
    }
}

fn strides_of(shape: &[usize]) -> Result<Vec<u128>, TensorError> {
    shape_size(shape).ok_or(TensorError::TooLarge)?;
    let mut s = vec![1u128; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1] as u128;
    }
    Ok(s)
}

impl SparseTensor {
    pub fn zeros(shape: &[usize]) -> Result<Self, TensorError> {
        Ok(SparseTensor {
            shape: shape.to_vec(),
            strides: strides_of(shape)?,
            entries: BTreeMap::new(),
        })
    }

    /// A rank-0 tensor holding `x`.
    pub fn scalar(x: Scalar) -> Self {
        let mut t = SparseTensor::zeros(&[]).expect("empty shape");
        t.add_at(&[], &x);
        t
    }

    pub fn from_entries<I>(shape: &[usize], entries: I) -> Result<Self, TensorError>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut t = SparseTensor::zeros(shape)?;
        for (idx, x) in entries {
            if idx.len() != shape.len() || idx.iter().zip(shape).any(|(i, d)| i >= d) {
                return Err(TensorError::IndexOutOfRange);
            }
            t.add_at(&idx, &x);
        }
        Ok(t)
    }

    /// The identity matrix as a rank-2 tensor.
    pub fn identity(n: usize) -> Self {
        SparseTensor::from_entries(&[n, n], (0..n).map(|i| (vec![i, i], Scalar::one())))
            .expect("identity shape")
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn key(&self, idx: &[usize]) -> u128 {
        idx.iter()
            .zip(&self.strides)
            .map(|(i, s)| *i as u128 * s)
            .sum()
    }

    fn decode(&self, mut key: u128, out: &mut [usize]) {
        for (k, s) in self.strides.iter().enumerate() {
            out[k] = (key / s) as usize;
            key %= s;
        }
    }

    pub fn index_of_key(&self, key: u128) -> Vec<usize> {
        let mut out = vec![0; self.shape.len()];
        self.decode(key, &mut out);
        out
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.entries.get(&self.key(idx)).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, idx: &[usize], x: &Scalar) {
        let k = self.key(idx);
        self.add_key(k, x);
    }

    fn add_key(&mut self, k: u128, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        match self.entries.get_mut(&k) {
            Some(y) => {
                *y += x;
                if y.is_zero() {
                    self.entries.remove(&k);
                }
            }
            None => {
                self.entries.insert(k, x.clone());
            }
        }
    }

    /// Nonzero entries in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.entries.iter().map(|(k, x)| (self.index_of_key(*k), x))
    }

    /// Fraction of stored cells, as (nonzeros, total); total saturates.
    pub fn fill(&self) -> (usize, u128) {
        (self.nnz(), shape_size(&self.shape).unwrap_or(u128::MAX))
    }

    pub fn scaled(&self, c: &Scalar) -> SparseTensor {
        let mut t = self.clone();
        if c.is_zero() {
            t.entries.clear();
        } else {
            for x in t.entries.values_mut() {
                *x = &*x * c;
            }
        }
        t
    }

    /// Entrywise sum; shapes must agree.
    pub fn add(&self, other: &SparseTensor) -> Result<SparseTensor, TensorError> {
        if self.shape != other.shape {
            return Err(TensorError::DimensionMismatch {
                left: self.shape.len(),
                right: other.shape.len(),
            });
        }
        let mut t = self.clone();
        for (k, x) in &other.entries {
            t.add_key(*k, x);
        }
        Ok(t)
    }

    /// Reorders axes: axis `k` of the result is axis `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<SparseTensor, TensorError> {
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let mut t = SparseTensor::zeros(&shape)?;
        let mut idx = vec![0; self.rank()];
        let mut out = vec![0; self.rank()];
        for (k, x) in &self.entries {
            self.decode(*k, &mut idx);
            for (j, &p) in perm.iter().enumerate() {
                out[j] = idx[p];
            }
            t.add_at(&out, x);
        }
        Ok(t)
    }

    /// Sums over the paired axes. The result carries the unpaired axes of
    /// `self` in order, followed by the unpaired axes of `other`.
    pub fn contract(
        &self,
        other: &SparseTensor,
        axes: &[(usize, usize)],
    ) -> Result<SparseTensor, TensorError> {
        for &(a, b) in axes {
            if a >= self.rank() {
                return Err(TensorError::AxisOutOfRange { axis: a, rank: self.rank() });
            }
            if b >= other.rank() {
                return Err(TensorError::AxisOutOfRange { axis: b, rank: other.rank() });
            }
            if self.shape[a] != other.shape[b] {
                return Err(TensorError::DimensionMismatch {
                    left: self.shape[a],
                    right: other.shape[b],
                });
            }
        }
        let free1: Vec<usize> = (0..self.rank()).filter(|k| !axes.iter().any(|p| p.0 == *k)).collect();
        let free2: Vec<usize> = (0..other.rank()).filter(|k| !axes.iter().any(|p| p.1 == *k)).collect();
        let mut shape: Vec<usize> = free1.iter().map(|&k| self.shape[k]).collect();
        shape.extend(free2.iter().map(|&k| other.shape[k]));
        let mut out = SparseTensor::zeros(&shape)?;
        let size2 = shape_size(&free2.iter().map(|&k| other.shape[k]).collect::<Vec<_>>())
            .ok_or(TensorError::TooLarge)?;

        let key_of = |idx: &[usize], axes: &[usize], dims: &[usize]| -> u128 {
            axes.iter().fold(0u128, |acc, &a| acc * dims[a] as u128 + idx[a] as u128)
        };

        if self.dense_fallback(other, &shape) {
            return self.contract_dense(other, axes, &free1, &free2, shape);
        }

        let shared2: Vec<usize> = axes.iter().map(|p| p.1).collect();
        let shared1: Vec<usize> = axes.iter().map(|p| p.0).collect();
        let mut by_shared: BTreeMap<u128, Vec<(u128, &Scalar)>> = BTreeMap::new();
        let mut idx2 = vec![0; other.rank()];
        for (k, x) in &other.entries {
            other.decode(*k, &mut idx2);
            by_shared
                .entry(key_of(&idx2, &shared2, &other.shape))
                .or_default()
                .push((key_of(&idx2, &free2, &other.shape), x));
        }
        let mut idx1 = vec![0; self.rank()];
        for (k, x) in &self.entries {
            self.decode(*k, &mut idx1);
            let Some(matches) = by_shared.get(&key_of(&idx1, &shared1, &self.shape)) else {
                continue;
            };
            let base = key_of(&idx1, &free1, &self.shape) * size2;
            for (f2, y) in matches {
                out.add_key(base + f2, &(x * *y));
            }
        }
        Ok(out)
    }

    // Dense accumulation pays off once both operands are more than a quarter full.
    fn dense_fallback(&self, other: &SparseTensor, out_shape: &[usize]) -> bool {
        let full = |t: &SparseTensor| {
            let (nnz, total) = t.fill();
            total > 0 && (nnz as u128) * 4 > total
        };
        let small = shape_size(out_shape).is_some_and(|s| s <= 1 << 16);
        let cheap = self.nnz().saturating_mul(other.nnz()) <= 1 << 18;
        small && cheap && full(self) && full(other)
    }

    fn contract_dense(
        &self,
        other: &SparseTensor,
        axes: &[(usize, usize)],
        free1: &[usize],
        free2: &[usize],
        shape: Vec<usize>,
    ) -> Result<SparseTensor, TensorError> {
        let size = shape_size(&shape).ok_or(TensorError::TooLarge)? as usize;
        let mut acc = vec![Scalar::zero(); size];
        let mut out = SparseTensor::zeros(&shape)?;
        let mut idx1 = vec![0; self.rank()];
        let mut idx2 = vec![0; other.rank()];
        let mut oidx = vec![0; shape.len()];
        for (k1, x) in &self.entries {
            self.decode(*k1, &mut idx1);
            for (k2, y) in &other.entries {
                other.decode(*k2, &mut idx2);
                if axes.iter().any(|&(a, b)| idx1[a] != idx2[b]) {
                    continue;
                }
                for (j, &a) in free1.iter().enumerate() {
                    oidx[j] = idx1[a];
                }
                for (j, &b) in free2.iter().enumerate() {
                    oidx[free1.len() + j] = idx2[b];
                }
                let key = out.key(&oidx) as usize;
                acc[key] += &(x * y);
            }
        }
        for (k, x) in acc.into_iter().enumerate() {
            if !x.is_zero() {
                out.entries.insert(k as u128, x);
            }
        }
        Ok(out)
    }

    /// The outer product: axes of `self` then axes of `other`.
    pub fn outer(&self, other: &SparseTensor) -> Result<SparseTensor, TensorError> {
        self.contract(other, &[])
    }

    /// First index at which two equally shaped tensors differ.
    pub fn first_difference(&self, other: &SparseTensor) -> Option<Vec<usize>> {
        let mut keys: Vec<u128> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .find(|k| self.entries.get(k) != other.entries.get(k))
            .map(|k| self.index_of_key(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn mat(rows: &[&[i64]]) -> SparseTensor {
        let shape = [rows.len(), rows[0].len()];
        SparseTensor::from_entries(
            &shape,
            rows.iter().enumerate().flat_map(|(i, r)| {
                r.iter().enumerate().map(move |(j, x)| (vec![i, j], q(*x)))
            }),
        )
        .unwrap()
    }

    #[test]
    fn contraction_is_matrix_product() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 1], &[1, 0]]);
        let ab = a.contract(&b, &[(1, 0)]).unwrap();
        assert_eq!(ab, mat(&[&[2, 1], &[4, 3]]));
        let trace = ab.contract(&SparseTensor::identity(2), &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(trace.get(&[]), q(5));
    }

    #[test]
    fn output_axes_are_unpaired_left_then_right() {
        let t = SparseTensor::from_entries(&[2, 3, 4], [(vec![1, 2, 3], q(5))]).unwrap();
        let u = SparseTensor::from_entries(&[5, 3], [(vec![4, 2], q(2))]).unwrap();
        let c = t.contract(&u, &[(1, 1)]).unwrap();
        assert_eq!(c.shape(), &[2, 4, 5]);
        assert_eq!(c.get(&[1, 3, 4]), q(10));
    }

    #[test]
    fn permute_swaps_axes() {
        let a = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        let t = a.permute(&[1, 0]).unwrap();
        assert_eq!(t, mat(&[&[1, 4], &[2, 5], &[3, 6]]));
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut t = SparseTensor::zeros(&[2]).unwrap();
        t.add_at(&[0], &q(1));
        t.add_at(&[0], &q(-1));
        assert!(t.is_zero());
    }
}
