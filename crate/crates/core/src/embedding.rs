//! The map `X ↦ G_X ∪ −G_X` into the unit sphere of `Harm₂(S^d)`.
//!
//! The exact representation is Gram-level: `⟨G_x, G_y⟩ = g_{2,d}((x, y))`.
//! The coordinate representation realizes `G_x` as the normalized traceless
//! tensor `√((d+1)/d) · (x xᵀ − I/(d+1))` in an orthonormal basis of
//! traceless symmetric matrices: off-diagonal unit matrices scaled by √2,
//! followed by the Helmert basis of the traceless diagonal.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::configurations::{normalized_gram, sort_scalars, GramMatrix, PointConfiguration};
use crate::error::{Error, Result};
use crate::harmonics::{gegenbauer2, harm_dim};
use crate::scalars::QuadScalar;

/// `G_X ∪ −G_X` as an exact Gram matrix. Index `i < half` is `G_{x_i}` and
/// `i + half` is its negation.
#[derive(Clone, Debug)]
pub struct EmbeddedCode {
    pub source_d: usize,
    /// `dim Harm₂(S^d) = d(d+3)/2`; the code lives on `S^{dim−1}`.
    pub dim: usize,
    pub half: usize,
    pub gram: GramMatrix,
}

impl EmbeddedCode {
    pub fn size(&self) -> usize {
        2 * self.half
    }

    /// Antipodal partner of index `i`.
    pub fn partner(&self, i: usize) -> usize {
        if i < self.half {
            i + self.half
        } else {
            i - self.half
        }
    }
}

/// Entrywise `t ↦ g_{2,d}(t)`; the result is labelled with sphere dimension
/// `d(d+3)/2 − 1`.
pub fn embed_gram(g: &GramMatrix, d: usize) -> Result<GramMatrix> {
    let dim = harm_dim(2, d)? as usize;
    g.map_values(dim - 1, |t| gegenbauer2(d, t))
}

/// One point from each antipodal pair: the lexicographically larger of
/// `{x, −x}`, i.e. the one whose first non-zero coordinate is positive.
pub fn antipodal_halve(x: &PointConfiguration) -> Result<PointConfiguration> {
    if !x.is_antipodal() {
        return Err(Error::NotAntipodal);
    }
    let r = x.radicand();
    let keep: Vec<usize> = (0..x.len())
        .filter(|&i| {
            x.point(i)
                .iter()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c.signum(r) > 0)
        })
        .collect();
    Ok(x.subset(&keep, format!("{}/±", x.name()))?
        .with_provenance("kept the lexicographically larger of each antipodal pair"))
}

/// Embeds a half code `X'` (taken as given, antipodal or not) and doubles it.
pub fn embed_half(half: &PointConfiguration) -> Result<EmbeddedCode> {
    let d = half.d();
    let h = embed_gram(&normalized_gram(half)?, d)?;
    Ok(EmbeddedCode {
        source_d: d,
        dim: harm_dim(2, d)? as usize,
        half: half.len(),
        gram: double_gram(&h)?,
    })
}

/// `G_X ∪ −G_X`, halving first when `X` is antipodal.
pub fn embed_code(x: &PointConfiguration) -> Result<EmbeddedCode> {
    if x.is_antipodal() {
        embed_half(&antipodal_halve(x)?)
    } else {
        embed_half(x)
    }
}

/// Block matrix `[[H, −H], [−H, H]]`.
pub fn double_gram(h: &GramMatrix) -> Result<GramMatrix> {
    let n = h.size();
    let mut values: Vec<QuadScalar> = h.palette().to_vec();
    values.extend(h.palette().iter().map(|v| -v));
    sort_scalars(&mut values);
    values.dedup();
    let pos: HashMap<&QuadScalar, u32> = values
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    let plus: Vec<u32> = h.palette().iter().map(|v| pos[v]).collect();
    let minus: Vec<u32> = h.palette().iter().map(|v| pos[&-v]).collect();
    let m = 2 * n;
    let mut index = vec![0u32; m * m];
    index
        .par_chunks_mut(m.max(1))
        .enumerate()
        .for_each(|(i, row)| {
            let src = h.row_indices(i % n);
            let top = i < n;
            for (j, slot) in row.iter_mut().enumerate() {
                let k = src[j % n] as usize;
                *slot = if top == (j < n) { plus[k] } else { minus[k] };
            }
        });
    Ok(GramMatrix::from_sorted_parts(m, h.d(), values, index))
}

/// Float coordinates of `G_X ∪ −G_X` in `R^{d(d+3)/2}`, one row per point,
/// in the same order as [`embed_code`]'s Gram matrix.
pub fn embed_coords(x: &PointConfiguration) -> Result<Vec<Vec<f64>>> {
    let half = if x.is_antipodal() {
        antipodal_halve(x)?
    } else {
        x.clone()
    };
    let d = half.d();
    let n = d + 1;
    let unit: Vec<Vec<f64>> = (0..half.len()).map(|i| half.unit_point(i)).collect();
    let local = intrinsic_coordinates(&unit, n)?;
    let rows: Vec<Vec<f64>> = local.iter().map(|v| tensor_coordinates(v)).collect();
    let mut out = rows.clone();
    out.extend(
        rows.into_iter()
            .map(|r| r.into_iter().map(|c| -c).collect()),
    );
    Ok(out)
}

/// Expresses vectors spanning an `n`-dimensional subspace in an orthonormal
/// basis of that subspace.
fn intrinsic_coordinates(points: &[Vec<f64>], n: usize) -> Result<Vec<Vec<f64>>> {
    let ambient = points.first().map_or(n, Vec::len);
    if ambient == n {
        return Ok(points.to_vec());
    }
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    for p in points {
        if basis.len() == n {
            break;
        }
        let mut v = p.clone();
        // two rounds of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let c: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    if basis.len() != n {
        return Err(Error::Invariant(format!(
            "points span {} dimensions, expected {n}",
            basis.len()
        )));
    }
    Ok(points
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|b| p.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect())
}

/// `√(n/(n−1)) · (x xᵀ − I/n)` in the fixed orthonormal basis.
fn tensor_coordinates(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let scale = (n as f64 / (n as f64 - 1.0)).sqrt();
    let mut out = Vec::with_capacity(n * (n + 1) / 2 - 1);
    let sqrt2 = std::f64::consts::SQRT_2;
    for i in 0..n {
        for j in i + 1..n {
            out.push(scale * sqrt2 * x[i] * x[j]);
        }
    }
    // Helmert vectors h_k = (1,…,1,−k,0,…)/√(k(k+1)), orthogonal to (1,…,1)
    let mut prefix = 0.0;
    for k in 1..n {
        prefix += x[k - 1] * x[k - 1];
        let kf = k as f64;
        out.push(scale * (prefix - kf * x[k] * x[k]) / (kf * (kf + 1.0)).sqrt());
    }
    out
}
