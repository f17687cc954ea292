//! Verification of code parameters, design strength and the optimality
//! condition, all exact on Gram matrices.

use num_bigint::BigInt;
use serde::Serialize;

use crate::configurations::{sort_scalars, GramMatrix};
use crate::error::{Error, Result};
use crate::harmonics::{gegenbauer2, gegenbauer_table, harm_dim};
use crate::scalars::QuadScalar;

/// Deepest degree checked by [`design_strength`].
pub const MAX_DESIGN_DEGREE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    /// Ambient dimension `d + 1`.
    pub dim: usize,
    pub size: usize,
    /// Largest `|(x_i, x_j)|` over distinct non-antipodal pairs; `None` when
    /// there is no such pair.
    pub a: Option<QuadScalar>,
    pub antipodal: bool,
    /// Distinct off-diagonal values, increasing.
    pub ip_set: Vec<QuadScalar>,
    /// Distinct `|value|` over distinct non-antipodal pairs, increasing.
    pub abs_ip_set: Vec<QuadScalar>,
}

/// Antipodal partner of every index, if each row has exactly one `−1` and
/// the pairing is an involution.
pub fn antipodal_partners(g: &GramMatrix) -> Option<Vec<usize>> {
    let minus_one = g.palette_position(&-QuadScalar::one())?;
    let n = g.size();
    let mut partner = Vec::with_capacity(n);
    for i in 0..n {
        let mut hits = g
            .row_indices(i)
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == minus_one);
        let (j, _) = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        partner.push(j);
    }
    partner
        .iter()
        .enumerate()
        .all(|(i, &j)| partner[j] == i)
        .then_some(partner)
}

pub fn code_params(g: &GramMatrix) -> Result<CodeParams> {
    let n = g.size();
    let one = QuadScalar::one();
    let minus_one = -&one;
    if let Some(plus) = g.palette_position(&one) {
        for i in 0..n {
            if let Some(j) = g
                .row_indices(i)
                .iter()
                .enumerate()
                .position(|(j, &k)| j != i && k == plus)
            {
                return Err(Error::RepeatedPoint(i, j));
            }
        }
    }
    let antipodal = antipodal_partners(g).is_some();
    let ip_set = g.off_diagonal_values();
    let mut abs_ip_set: Vec<QuadScalar> = ip_set
        .iter()
        .filter(|v| **v != minus_one)
        .map(QuadScalar::abs)
        .collect();
    sort_scalars(&mut abs_ip_set);
    abs_ip_set.dedup();
    Ok(CodeParams {
        dim: g.d() + 1,
        size: n,
        a: abs_ip_set.last().cloned(),
        antipodal,
        ip_set,
        abs_ip_set,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VenkovReport {
    pub d: usize,
    pub size: usize,
    /// `Σ_{i,j} (x_i, x_j)²`.
    pub sum_sq: QuadScalar,
    /// `Σ_{i,j} (x_i, x_j)² − N²/(d+1)`; never negative.
    pub defect: QuadScalar,
    pub antipodal: bool,
    /// Zero defect on an antipodal set.
    pub design3: bool,
}

/// Mean squared inner product against `1/(d+1)`, computed directly from the
/// squares of the entries.
pub fn venkov_check(g: &GramMatrix, d: usize) -> VenkovReport {
    let counts = g.histogram();
    let sum_sq = g
        .palette()
        .iter()
        .zip(&counts)
        .fold(QuadScalar::zero(), |acc, (t, &c)| {
            acc + (t * t).scale_int(&BigInt::from(c))
        });
    let n = g.size() as i64;
    let bound = QuadScalar::from_ratio(n * n, d as i64 + 1);
    let defect = &sum_sq - &bound;
    let antipodal = antipodal_partners(g).is_some();
    VenkovReport {
        d,
        size: g.size(),
        design3: antipodal && defect.is_zero(),
        sum_sq,
        defect,
        antipodal,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub d: usize,
    pub t_max: usize,
    /// Largest `t ≤ t_max` with vanishing moment sums for degrees `1..=t`.
    pub strength: usize,
    /// `Σ_{i,j} g_{k,d}((x_i, x_j))` for `k = 1..=t_max`.
    pub moment_sums: Vec<QuadScalar>,
    pub venkov_defect: QuadScalar,
}

/// Gegenbauer moment sums: a set is a `t`-design iff the sums vanish for
/// every degree `1 ≤ k ≤ t`.
pub fn moment_sums(g: &GramMatrix, d: usize, t_max: usize) -> Vec<QuadScalar> {
    let counts = g.histogram();
    let mut sums = vec![QuadScalar::zero(); t_max];
    for (t, &c) in g.palette().iter().zip(&counts) {
        let c = BigInt::from(c);
        for (k, v) in gegenbauer_table(t_max, d, t)
            .into_iter()
            .enumerate()
            .skip(1)
        {
            sums[k - 1] = &sums[k - 1] + v.scale_int(&c);
        }
    }
    sums
}

pub fn design_strength(g: &GramMatrix, d: usize, t_max: usize) -> Result<DesignReport> {
    if !(1..=MAX_DESIGN_DEGREE).contains(&t_max) {
        return Err(Error::InvalidParameter(format!(
            "t_max={t_max} must be in 1..={MAX_DESIGN_DEGREE}"
        )));
    }
    if d < 1 {
        return Err(Error::InvalidParameter(
            "sphere dimension must be positive".into(),
        ));
    }
    let sums = moment_sums(g, d, t_max);
    let strength = sums.iter().position(|s| !s.is_zero()).unwrap_or(t_max);
    Ok(DesignReport {
        d,
        t_max,
        strength,
        moment_sums: sums,
        venkov_defect: venkov_check(g, d).defect,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalityVerdict {
    pub d: usize,
    /// Size `N` of the half code; the embedded code has `2N` points.
    pub half_size: usize,
    /// `d(d+3)/2`.
    pub dim: usize,
    /// Distinct signed values `g_{2,d}(a)` over the IP set, increasing.
    pub levels: Vec<QuadScalar>,
    /// Distinct `|g_{2,d}(a)|`, increasing.
    pub abs_levels: Vec<QuadScalar>,
    pub level_constant: bool,
    /// The common `|g_{2,d}(a)|` when it is constant.
    pub level: Option<QuadScalar>,
    pub equation_holds: bool,
    pub optimal: bool,
}

/// `(2N)²/D − 4N = ℓ²((2N)² − 4N)` with `D = d(d+3)/2`, exactly.
pub fn optimality_equation(d: usize, half_n: usize, level: &QuadScalar) -> Result<bool> {
    let dim = harm_dim(2, d)? as i64;
    let m = 2 * half_n as i64;
    let lhs = QuadScalar::from_ratio(m * m, dim) - QuadScalar::from_integer(2 * m);
    let rhs = level.square() * QuadScalar::from_integer(m * m - 2 * m);
    Ok(lhs == rhs)
}

/// Checks whether `|g_{2,d}|` is constant on the IP set of the half code and
/// whether the size condition then holds.
pub fn optimality_check(
    d: usize,
    half_n: usize,
    ip_set: &[QuadScalar],
) -> Result<OptimalityVerdict> {
    if ip_set.is_empty() {
        return Err(Error::EmptyIpSet);
    }
    let dim = harm_dim(2, d)? as usize;
    let mut levels: Vec<QuadScalar> = ip_set.iter().map(|a| gegenbauer2(d, a)).collect();
    sort_scalars(&mut levels);
    levels.dedup();
    let mut abs_levels: Vec<QuadScalar> = levels.iter().map(QuadScalar::abs).collect();
    sort_scalars(&mut abs_levels);
    abs_levels.dedup();
    let level_constant = abs_levels.len() == 1;
    let level = level_constant.then(|| abs_levels[0].clone());
    let equation_holds = match &level {
        Some(l) => optimality_equation(d, half_n, l)?,
        None => false,
    };
    Ok(OptimalityVerdict {
        d,
        half_size: half_n,
        dim,
        levels,
        abs_levels,
        level_constant,
        level,
        equation_holds,
        optimal: level_constant && equation_holds,
    })
}

/// Float Venkov defect `Σ_{i,j} (x_i·x_j)² − N²/n` for unit vectors in `R^n`.
/// Computed through the frame operator `S = Σ x xᵀ`, whose squared Frobenius
/// norm equals the pair sum.
pub fn venkov_defect_f64(points: &[Vec<f64>]) -> f64 {
    let Some(n) = points.first().map(Vec::len) else {
        return 0.0;
    };
    let mut frame = vec![0.0f64; n * n];
    for p in points {
        for i in 0..n {
            for j in 0..n {
                frame[i * n + j] += p[i] * p[j];
            }
        }
    }
    let sum_sq: f64 = frame.iter().map(|v| v * v).sum();
    let count = points.len() as f64;
    sum_sq - count * count / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::{e8_roots, normalized_gram};

    fn q(s: &str) -> QuadScalar {
        s.parse().unwrap()
    }

    #[test]
    fn antipodal_pair_is_not_a_design() {
        let g = GramMatrix::from_entries(2, 4, ["1", "-1", "-1", "1"].map(q)).unwrap();
        let p = code_params(&g).unwrap();
        assert!(p.antipodal);
        assert_eq!(p.a, None);
        let v = venkov_check(&g, 4);
        // 4 − 4/(d+1)
        assert_eq!(v.defect, q("16/5"));
        assert!(!v.design3);
    }

    #[test]
    fn repeated_point_is_rejected() {
        let g = GramMatrix::from_entries(2, 2, ["1", "1", "1", "1"].map(q)).unwrap();
        assert!(matches!(code_params(&g), Err(Error::RepeatedPoint(0, 1))));
    }

    #[test]
    fn optimality_examples() {
        let v = optimality_check(7, 120, &["-1/2", "0", "1/2"].map(q)).unwrap();
        assert_eq!(v.level, Some(q("1/7")));
        assert!(v.optimal);
        assert_eq!(v.levels, vec![q("-1/7"), q("1/7")]);
        let s = optimality_check(5, 27, &["-1/2", "1/4"].map(q)).unwrap();
        assert!(!s.level_constant && !s.optimal);
        assert_eq!(s.abs_levels, vec![q("1/10"), q("1/8")]);
        let i = optimality_check(2, 6, &["-1/5*sqrt(5)", "1/5*sqrt(5)"].map(q)).unwrap();
        assert_eq!(i.level, Some(q("1/5")));
        assert!(i.equation_holds);
        assert!(matches!(
            optimality_check(2, 6, &[]),
            Err(Error::EmptyIpSet)
        ));
        // wrong size breaks the equation
        assert!(
            !optimality_check(7, 119, &["0", "1/2"].map(q))
                .unwrap()
                .optimal
        );
    }

    #[test]
    fn e8_strength_and_moments() {
        let g = normalized_gram(&e8_roots().unwrap()).unwrap();
        let r = design_strength(&g, 7, 8).unwrap();
        assert_eq!(r.strength, 7);
        assert!(r.venkov_defect.is_zero());
        assert!(!r.moment_sums[7].is_zero());
        assert!(design_strength(&g, 7, 13).is_err());
    }

    #[test]
    fn float_defect_of_orthonormal_frame() {
        let pts = vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ];
        assert!(venkov_defect_f64(&pts).abs() < 1e-15);
    }
}
