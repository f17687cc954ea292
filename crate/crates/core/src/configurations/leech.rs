//! Minimal vectors of the Leech lattice and the configurations cut out of
//! them.
//!
//! Coordinates are the standard Golay-code ones scaled by √8, so minimal
//! vectors are integral with squared norm 32.

use super::golay::{golay_code, GolayCode};
use super::section::{cross_section, cross_section_by_vectors};
use super::PointConfiguration;
use crate::error::Result;
use crate::scalars::{QuadInt, QuadScalar};

const DIM: usize = 24;

/// Membership test for the (scaled) Leech lattice: all coordinates congruent
/// to `m` mod 2, coordinate sum ≡ 4m mod 8, and the coordinates congruent to
/// 2 (for even `m`) or 3 (for odd `m`) mod 4 sit on a Golay codeword.
pub fn is_leech_vector(v: &[i64], code: &GolayCode) -> bool {
    if v.len() != DIM {
        return false;
    }
    let m = v[0].rem_euclid(2);
    if v.iter().any(|x| x.rem_euclid(2) != m) {
        return false;
    }
    if v.iter().sum::<i64>().rem_euclid(8) != 4 * m {
        return false;
    }
    let target = if m == 0 { 2 } else { 3 };
    let mask = v
        .iter()
        .enumerate()
        .filter(|(_, x)| x.rem_euclid(4) == target)
        .fold(0u32, |acc, (i, _)| acc | 1 << i);
    code.contains(mask)
}

/// The 196560 minimal vectors, by shape:
/// `(±2⁸, 0¹⁶)` on octads with an even number of minus signs (97152),
/// `(∓3, ±1²³)` with sign flips on a codeword (98304), and `(±4², 0²²)` (1104).
pub fn leech_min_vectors() -> Result<PointConfiguration> {
    let code = golay_code();
    let mut points: Vec<Vec<QuadInt>> = Vec::with_capacity(196_560);
    for octad in code.octads() {
        let support: Vec<usize> = (0..DIM).filter(|&i| octad >> i & 1 == 1).collect();
        for signs in 0u32..256 {
            if signs.count_ones() % 2 != 0 {
                continue;
            }
            let mut v = vec![QuadInt::ZERO; DIM];
            for (k, &i) in support.iter().enumerate() {
                v[i] = QuadInt::int(if signs >> k & 1 == 1 { -2 } else { 2 });
            }
            points.push(v);
        }
    }
    for &word in code.codewords() {
        for i in 0..DIM {
            let v = (0..DIM)
                .map(|j| {
                    let base = if j == i { -3 } else { 1 };
                    QuadInt::int(if word >> j & 1 == 1 { -base } else { base })
                })
                .collect();
            points.push(v);
        }
    }
    for i in 0..DIM {
        for j in i + 1..DIM {
            for (a, b) in [(4, 4), (4, -4), (-4, 4), (-4, -4)] {
                let mut v = vec![QuadInt::ZERO; DIM];
                v[i] = QuadInt::int(a);
                v[j] = QuadInt::int(b);
                points.push(v);
            }
        }
    }
    Ok(PointConfiguration::new("leech", 23, 0, points)?
        .with_provenance("Leech lattice minimal vectors, Golay construction, scaled by sqrt(8)"))
}

/// Counts of the shapes `(∓3, ±1²³)`, `(±2⁸, 0¹⁶)` and `(±4², 0²²)`.
pub fn leech_shape_counts(x: &PointConfiguration) -> (usize, usize, usize) {
    let mut counts = (0, 0, 0);
    for p in x.points() {
        let max = p.iter().map(|c| c.a.abs()).max().unwrap_or(0);
        match max {
            3 => counts.0 += 1,
            2 => counts.1 += 1,
            4 => counts.2 += 1,
            _ => {}
        }
    }
    counts
}

/// Leech minimal vectors at inner product 1/2 with a fixed one: 4600 points on S²².
pub fn kissing4600() -> Result<PointConfiguration> {
    let leech = leech_min_vectors()?;
    Ok(cross_section(&leech, &[0], &[QuadScalar::from_ratio(1, 2)])?.renamed("kissing4600"))
}

/// Points of the 4600-point configuration at inner product 1/3 with a fixed
/// one: 891 points on S²¹.
pub fn kissing891() -> Result<PointConfiguration> {
    let k4600 = kissing4600()?;
    Ok(cross_section(&k4600, &[0], &[QuadScalar::from_ratio(1, 3)])?.renamed("kissing891"))
}

/// Leech minimal vectors `v` with `(v, w) = 24` for the norm-48 lattice
/// vector `w = (5, 1²³)`, projected: 276 equiangular lines (552 points) on S²².
pub fn equiangular552() -> Result<PointConfiguration> {
    let leech = leech_min_vectors()?;
    let mut w = vec![QuadInt::int(1); DIM];
    w[0] = QuadInt::int(5);
    // (v, w) / |v|² = 24 / 32
    Ok(
        cross_section_by_vectors(&leech, &[w], &[QuadScalar::from_ratio(3, 4)])?
            .renamed("equiangular552"),
    )
}

/// Points of the 552-point configuration at inner product 1/5 with a fixed
/// one: 275 points on S²¹.
pub fn mclaughlin275() -> Result<PointConfiguration> {
    let e552 = equiangular552()?;
    Ok(cross_section(&e552, &[0], &[QuadScalar::from_ratio(1, 5)])?.renamed("mclaughlin275"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_rule() {
        let code = golay_code();
        let mut w = vec![1i64; DIM];
        w[0] = 5;
        assert!(is_leech_vector(&w, &code));
        let mut v = vec![0i64; DIM];
        v[0] = 4;
        v[5] = -4;
        assert!(is_leech_vector(&v, &code));
        v[5] = 0;
        v[6] = 2;
        assert!(!is_leech_vector(&v, &code));
        assert!(!is_leech_vector(&[1; 23], &code));
    }
}
