//! Exact point configurations on spheres.
//!
//! Coordinates are stored as integral elements of ℤ[√r]. Any configuration
//! with coordinates in ℚ(√r) can be brought to this form by a global rescale,
//! which leaves every normalized inner product unchanged. Points are kept in
//! a canonical order (lexicographic on coordinate values) so every
//! construction is deterministic.

mod builders;
mod golay;
mod gram;
mod io;
mod leech;
mod section;

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalars::{dot_wide, QuadInt, QuadScalar, QuadWide};

pub use builders::{
    by_name, cell600, e8_roots, icosahedron, is_heavy, kissing56, schlafli27, BUILTIN_NAMES,
};
pub use golay::{golay_code, GolayCode, GOLAY_GENERATOR};
pub use gram::{normalized_gram, GramMatrix, MAX_GRAM_SIZE};
pub use io::{
    load, load_float, load_gram, parse_configuration, read_configuration, read_gram, save,
    save_float, save_gram, write_configuration, write_float, write_gram, FloatConfiguration,
    CONFIG_HEADER, FLOAT_HEADER, GRAM_HEADER,
};
pub use leech::{
    equiangular552, is_leech_vector, kissing4600, kissing891, leech_min_vectors,
    leech_shape_counts, mclaughlin275,
};
pub use section::{cross_section, cross_section_by_vectors};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    name: String,
    provenance: Vec<String>,
    d: usize,
    ambient: usize,
    radicand: u64,
    norm_sq: QuadInt,
    coords: Vec<QuadInt>,
}

pub(crate) fn cmp_points(u: &[QuadInt], v: &[QuadInt], r: u64) -> Ordering {
    u.iter()
        .zip(v)
        .map(|(x, y)| x.cmp_value(*y, r))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl PointConfiguration {
    /// Validates and canonically orders a configuration on `S^d`.
    ///
    /// Every point must have the same non-zero squared norm and no point may
    /// repeat. `ambient` is taken from the vector length and must be at least
    /// `d + 1`.
    pub fn new(
        name: impl Into<String>,
        d: usize,
        radicand: u64,
        points: Vec<Vec<QuadInt>>,
    ) -> Result<Self> {
        let name = name.into();
        let first = points
            .first()
            .ok_or_else(|| Error::Invariant(format!("{name}: no points")))?;
        let ambient = first.len();
        if ambient < d + 1 {
            return Err(Error::Invariant(format!(
                "{name}: {ambient} coordinates cannot span S^{d}"
            )));
        }
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::Invariant(format!(
                "{name}: points have different lengths"
            )));
        }
        if radicand != 0 && crate::scalars::square_free_part(radicand).0 != 1 {
            return Err(Error::Invariant(format!(
                "{name}: radicand {radicand} is not square-free"
            )));
        }
        let norm = dot_wide(first, first, radicand);
        if norm.signum(radicand) <= 0 {
            return Err(Error::Invariant(format!(
                "{name}: points must have positive norm"
            )));
        }
        if let Some(i) = points.iter().position(|p| dot_wide(p, p, radicand) != norm) {
            return Err(Error::Invariant(format!(
                "{name}: point {i} has a different squared norm"
            )));
        }
        let norm_sq = narrow(norm).ok_or(Error::Overflow("storing the squared norm"))?;

        let mut points = points;
        points.sort_by(|u, v| cmp_points(u, v, radicand));
        if let Some(w) = points
            .windows(2)
            .position(|w| cmp_points(&w[0], &w[1], radicand).is_eq())
        {
            return Err(Error::Invariant(format!(
                "{name}: repeated point at sorted position {w}"
            )));
        }
        let coords = points.into_iter().flatten().collect();
        Ok(Self {
            name,
            provenance: Vec::new(),
            d,
            ambient,
            radicand,
            norm_sq,
            coords,
        })
    }

    pub fn with_provenance(mut self, line: impl Into<String>) -> Self {
        self.provenance.push(line.into());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// Sphere dimension: points lie on `S^d`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Length of the stored coordinate vectors (may exceed `d + 1` after a
    /// cross-section).
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[QuadInt] {
        &self.coords[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[QuadInt]> + '_ {
        self.coords.chunks_exact(self.ambient)
    }

    pub fn norm_sq(&self) -> QuadScalar {
        self.norm_sq.to_scalar(self.radicand)
    }

    pub fn norm_sq_raw(&self) -> QuadInt {
        self.norm_sq
    }

    pub fn exact_point(&self, i: usize) -> Vec<QuadScalar> {
        self.point(i)
            .iter()
            .map(|c| c.to_scalar(self.radicand))
            .collect()
    }

    /// Point `i` as a unit float vector.
    pub fn unit_point(&self, i: usize) -> Vec<f64> {
        let scale = self.norm_sq.to_f64(self.radicand).sqrt();
        self.point(i)
            .iter()
            .map(|c| c.to_f64(self.radicand) / scale)
            .collect()
    }

    pub fn dot(&self, i: usize, j: usize) -> QuadWide {
        dot_wide(self.point(i), self.point(j), self.radicand)
    }

    /// Exact `(x_i, x_j) / |x|²`.
    pub fn normalized_ip(&self, i: usize, j: usize) -> QuadScalar {
        self.dot(i, j).to_scalar(self.radicand) / self.norm_sq()
    }

    /// Canonical index of an exact coordinate vector, if present.
    pub fn index_of(&self, p: &[QuadInt]) -> Option<usize> {
        let r = self.radicand;
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match cmp_points(self.point(mid), p, r) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// For each point, the index of its negation; `None` unless the set is
    /// closed under negation.
    pub fn antipodes(&self) -> Option<Vec<usize>> {
        (0..self.len())
            .map(|i| {
                let neg: Vec<QuadInt> = self.point(i).iter().map(|c| c.negated()).collect();
                self.index_of(&neg)
            })
            .collect()
    }

    pub fn is_antipodal(&self) -> bool {
        self.antipodes().is_some()
    }

    /// Sub-configuration on the given indices.
    pub fn subset(&self, indices: &[usize], name: impl Into<String>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(indices.len());
        let points = indices
            .iter()
            .map(|&i| {
                if i >= self.len() {
                    return Err(Error::InvalidParameter(format!(
                        "point index {i} out of range"
                    )));
                }
                if seen.insert(i, ()).is_some() {
                    return Err(Error::InvalidParameter(format!("point index {i} repeated")));
                }
                Ok(self.point(i).to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::new(name, self.d, self.radicand, points)?;
        out.provenance = self.provenance.clone();
        Ok(out.with_provenance(format!(
            "subset of {} ({} points)",
            self.name,
            indices.len()
        )))
    }

    /// `X ∪ −X`.
    pub fn with_antipodes(&self) -> Result<Self> {
        let mut points: Vec<Vec<QuadInt>> = self.points().map(<[QuadInt]>::to_vec).collect();
        for p in self.points() {
            let neg: Vec<QuadInt> = p.iter().map(|c| c.negated()).collect();
            if self.index_of(&neg).is_none() {
                points.push(neg);
            }
        }
        let mut out = Self::new(
            format!("{}+antipodes", self.name),
            self.d,
            self.radicand,
            points,
        )?;
        out.provenance = self.provenance.clone();
        Ok(out.with_provenance(format!("closed {} under negation", self.name)))
    }

    /// Distinct normalized inner products between point `i` and every other
    /// point, in increasing order.
    pub fn ip_values_from(&self, i: usize) -> Vec<QuadScalar> {
        let mut keys: Vec<QuadWide> = (0..self.len())
            .filter(|&j| j != i)
            .map(|j| self.dot(i, j))
            .collect();
        keys.sort_by_key(|k| (k.a, k.b));
        keys.dedup();
        let norm = self.norm_sq();
        let mut vals: Vec<QuadScalar> = keys
            .into_iter()
            .map(|k| k.to_scalar(self.radicand) / &norm)
            .collect();
        sort_scalars(&mut vals);
        vals
    }
}

pub(crate) fn narrow(w: QuadWide) -> Option<QuadInt> {
    Some(QuadInt::new(
        i64::try_from(w.a).ok()?,
        i64::try_from(w.b).ok()?,
    ))
}

/// Sorts values that share a field in increasing order.
pub fn sort_scalars(values: &mut [QuadScalar]) {
    values.sort_by(|x, y| x.cmp_exact(y).expect("values share a quadratic field"));
}
