use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{sort_scalars, PointConfiguration};
use crate::error::{Error, Result};
use crate::scalars::{QuadScalar, QuadWide};

/// Largest matrix side materialized in memory (`n²` 32-bit indices).
pub const MAX_GRAM_SIZE: usize = 50_000;

/// Exact symmetric matrix of normalized inner products with unit diagonal.
///
/// Gram matrices of the configurations in scope take only a handful of
/// distinct values, so entries are stored as indices into a sorted palette of
/// exact scalars. Entrywise maps then cost one evaluation per distinct value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    n: usize,
    d: usize,
    palette: Vec<QuadScalar>,
    index: Vec<u32>,
}

impl GramMatrix {
    /// Builds a matrix from row-major entries, checking symmetry, the unit
    /// diagonal and `−1 ≤ entry ≤ 1`.
    pub fn from_entries(
        n: usize,
        d: usize,
        entries: impl IntoIterator<Item = QuadScalar>,
    ) -> Result<Self> {
        if n > MAX_GRAM_SIZE {
            return Err(Error::InvalidParameter(format!(
                "Gram matrix of size {n} exceeds {MAX_GRAM_SIZE}"
            )));
        }
        let mut lookup: HashMap<QuadScalar, u32> = HashMap::new();
        let mut raw_palette = Vec::new();
        let mut index = Vec::with_capacity(n * n);
        for e in entries {
            let next = raw_palette.len() as u32;
            let id = *lookup.entry(e.clone()).or_insert_with(|| {
                raw_palette.push(e);
                next
            });
            index.push(id);
        }
        if index.len() != n * n {
            return Err(Error::Invariant(format!(
                "expected {} entries, found {}",
                n * n,
                index.len()
            )));
        }
        let g = Self::reindexed(n, d, raw_palette, index)?;
        g.validate()?;
        Ok(g)
    }

    /// Sorts the palette and rewrites indices accordingly.
    pub(crate) fn reindexed(
        n: usize,
        d: usize,
        raw: Vec<QuadScalar>,
        index: Vec<u32>,
    ) -> Result<Self> {
        let radicands: HashSet<u64> = raw
            .iter()
            .map(QuadScalar::radicand)
            .filter(|&r| r != 0)
            .collect();
        if radicands.len() > 1 {
            return Err(Error::Invariant(
                "entries live in different quadratic fields".into(),
            ));
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&i, &j| raw[i].cmp_exact(&raw[j]).expect("single field"));
        let mut remap = vec![0u32; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u32;
        }
        let palette = order.iter().map(|&i| raw[i].clone()).collect();
        let index = index.into_par_iter().map(|i| remap[i as usize]).collect();
        Ok(Self {
            n,
            d,
            palette,
            index,
        })
    }

    fn validate(&self) -> Result<()> {
        let one = QuadScalar::one();
        let minus_one = -&one;
        if let (Some(lo), Some(hi)) = (self.palette.first(), self.palette.last()) {
            if lo < &minus_one || hi > &one {
                return Err(Error::Invariant("Gram entry outside [-1, 1]".into()));
            }
        }
        for i in 0..self.n {
            if !self.get(i, i).is_one() {
                return Err(Error::Invariant(format!("diagonal entry {i} is not 1")));
            }
            for j in 0..i {
                if self.index[i * self.n + j] != self.index[j * self.n + i] {
                    return Err(Error::Invariant(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn from_sorted_parts(
        n: usize,
        d: usize,
        palette: Vec<QuadScalar>,
        index: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(index.len(), n * n);
        Self {
            n,
            d,
            palette,
            index,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Sphere dimension of the configuration the matrix came from.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadScalar {
        &self.palette[self.index[i * self.n + j] as usize]
    }

    pub fn entry_index(&self, i: usize, j: usize) -> u32 {
        self.index[i * self.n + j]
    }

    /// Distinct entry values, increasing.
    pub fn palette(&self) -> &[QuadScalar] {
        &self.palette
    }

    pub fn palette_position(&self, v: &QuadScalar) -> Option<u32> {
        self.palette.iter().position(|p| p == v).map(|i| i as u32)
    }

    pub fn row_indices(&self, i: usize) -> &[u32] {
        &self.index[i * self.n..(i + 1) * self.n]
    }

    /// Number of entries (diagonal included) taking each palette value.
    pub fn histogram(&self) -> Vec<u64> {
        let k = self.palette.len();
        self.index
            .par_chunks(self.n.max(1))
            .fold(
                || vec![0u64; k],
                |mut acc, row| {
                    for &i in row {
                        acc[i as usize] += 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; k],
                |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            )
    }

    /// Number of off-diagonal entries taking each palette value.
    pub fn off_diagonal_histogram(&self) -> Vec<u64> {
        let mut h = self.histogram();
        for i in 0..self.n {
            h[self.index[i * self.n + i] as usize] -= 1;
        }
        h
    }

    /// Distinct off-diagonal values, increasing.
    pub fn off_diagonal_values(&self) -> Vec<QuadScalar> {
        self.off_diagonal_histogram()
            .iter()
            .zip(&self.palette)
            .filter(|(c, _)| **c > 0)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Entrywise image under `f`, re-interned (values may merge).
    pub fn map_values(&self, d: usize, f: impl Fn(&QuadScalar) -> QuadScalar) -> Result<Self> {
        let images: Vec<QuadScalar> = self.palette.iter().map(f).collect();
        let mut distinct = images.clone();
        let radicands: HashSet<u64> = distinct
            .iter()
            .map(QuadScalar::radicand)
            .filter(|&r| r != 0)
            .collect();
        if radicands.len() > 1 {
            return Err(Error::Invariant(
                "mapped entries live in different quadratic fields".into(),
            ));
        }
        sort_scalars(&mut distinct);
        distinct.dedup();
        let remap: Vec<u32> = images
            .iter()
            .map(|v| distinct.iter().position(|p| p == v).expect("value present") as u32)
            .collect();
        let index = self.index.par_iter().map(|&i| remap[i as usize]).collect();
        Ok(Self {
            n: self.n,
            d,
            palette: distinct,
            index,
        })
    }

    /// Row-major float entries.
    pub fn to_f64(&self) -> Vec<f64> {
        let vals: Vec<f64> = self.palette.iter().map(QuadScalar::to_f64).collect();
        self.index.iter().map(|&i| vals[i as usize]).collect()
    }
}

/// Exact matrix of `(u, v) / |u|²` over all pairs of points.
pub fn normalized_gram(x: &PointConfiguration) -> Result<GramMatrix> {
    let n = x.len();
    if n > MAX_GRAM_SIZE {
        return Err(Error::InvalidParameter(format!(
            "{}: {n} points exceed the in-memory Gram limit of {MAX_GRAM_SIZE}; analyse a cross-section instead",
            x.name()
        )));
    }
    let r = x.radicand();
    // pass 1: distinct raw dot products
    let keys: HashSet<QuadWide> = (0..n)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, i| {
            for j in i..n {
                acc.insert(x.dot(i, j));
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let norm = x.norm_sq();
    let mut keyed: Vec<(QuadWide, QuadScalar)> = keys
        .into_iter()
        .map(|k| (k, k.to_scalar(r) / &norm))
        .collect();
    keyed.sort_by(|a, b| a.1.cmp_exact(&b.1).expect("single field"));
    let lookup: HashMap<QuadWide, u32> = keyed
        .iter()
        .enumerate()
        .map(|(i, (k, _))| (*k, i as u32))
        .collect();
    let palette: Vec<QuadScalar> = keyed.into_iter().map(|(_, v)| v).collect();

    // pass 2: fill indices row by row
    let mut index = vec![0u32; n * n];
    index
        .par_chunks_mut(n.max(1))
        .enumerate()
        .for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = lookup[&x.dot(i, j)];
            }
        });
    let g = GramMatrix::from_sorted_parts(n, x.d(), palette, index);
    let one = QuadScalar::one();
    if g.palette.first().is_some_and(|lo| lo < &-&one)
        || g.palette.last().is_some_and(|hi| hi > &one)
    {
        return Err(Error::Invariant(format!(
            "{}: normalized inner product outside [-1, 1]",
            x.name()
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadScalar {
        s.parse().unwrap()
    }

    #[test]
    fn from_entries_validates() {
        let ok = GramMatrix::from_entries(2, 1, ["1", "-1/2", "-1/2", "1"].map(q)).unwrap();
        assert_eq!(ok.palette(), &[q("-1/2"), q("1")]);
        assert_eq!(ok.get(0, 1), &q("-1/2"));
        assert_eq!(ok.off_diagonal_values(), vec![q("-1/2")]);
        assert!(GramMatrix::from_entries(2, 1, ["1", "0", "1/2", "1"].map(q)).is_err());
        assert!(GramMatrix::from_entries(2, 1, ["1", "2", "2", "1"].map(q)).is_err());
        assert!(GramMatrix::from_entries(2, 1, ["1", "0", "0", "1/2"].map(q)).is_err());
        assert!(GramMatrix::from_entries(2, 1, ["1", "0", "0"].map(q)).is_err());
    }

    #[test]
    fn singleton() {
        let g = GramMatrix::from_entries(1, 2, [QuadScalar::one()]).unwrap();
        assert_eq!(g.size(), 1);
        assert!(g.get(0, 0).is_one());
        assert!(g.off_diagonal_values().is_empty());
    }

    #[test]
    fn map_merges_values() {
        let g = GramMatrix::from_entries(2, 1, ["1", "-1/2", "-1/2", "1"].map(q)).unwrap();
        let sq = g.map_values(1, |v| v.square()).unwrap();
        assert_eq!(sq.palette(), &[q("1/4"), q("1")]);
        assert_eq!(sq.histogram(), vec![2, 2]);
    }
}
