//! Coordinatizations of the sharp configurations.

use super::leech::{equiangular552, kissing4600, kissing891, leech_min_vectors, mclaughlin275};
use super::section::cross_section;
use super::PointConfiguration;
use crate::error::{Error, Result};
use crate::scalars::{QuadInt, QuadScalar};

/// Names accepted by [`by_name`].
pub const BUILTIN_NAMES: &[&str] = &[
    "icosahedron",
    "600cell",
    "e8",
    "kissing56",
    "schlafli27",
    "leech",
    "kissing4600",
    "kissing891",
    "equiangular552",
    "mclaughlin275",
];

const HEAVY_NAMES: &[&str] = &[
    "leech",
    "kissing4600",
    "kissing891",
    "equiangular552",
    "mclaughlin275",
];

/// Configurations derived from the 196560 Leech minimal vectors.
pub fn is_heavy(name: &str) -> bool {
    let base = name
        .strip_prefix("section:")
        .and_then(|s| s.split(':').next())
        .unwrap_or(name);
    HEAVY_NAMES.contains(&base)
}

/// Builds a named configuration, or a section given as
/// `section:<base>:<anchor>=<ip>[,<anchor>=<ip>...]`.
pub fn by_name(name: &str) -> Result<PointConfiguration> {
    if let Some(spec) = name.strip_prefix("section:") {
        return section_from_spec(spec);
    }
    match name {
        "icosahedron" => icosahedron(),
        "600cell" => cell600(),
        "e8" => e8_roots(),
        "kissing56" => kissing56(),
        "schlafli27" => schlafli27(),
        "leech" => leech_min_vectors(),
        "kissing4600" => kissing4600(),
        "kissing891" => kissing891(),
        "equiangular552" => equiangular552(),
        "mclaughlin275" => mclaughlin275(),
        other => Err(Error::InvalidParameter(format!(
            "unknown configuration {other:?}; expected one of {} or section:<base>:<anchor>=<ip>,...",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

fn section_from_spec(spec: &str) -> Result<PointConfiguration> {
    let bad = |msg: &str| Error::InvalidParameter(format!("section spec {spec:?}: {msg}"));
    let (base, anchors) = spec
        .split_once(':')
        .ok_or_else(|| bad("expected <base>:<anchor>=<ip>,..."))?;
    if base.starts_with("section") {
        return Err(bad("base must be a built-in configuration"));
    }
    let base_cfg = by_name(base)?;
    let mut idx = Vec::new();
    let mut ips = Vec::new();
    for part in anchors.split(',') {
        let (a, ip) = part
            .split_once('=')
            .ok_or_else(|| bad("anchors are written <index>=<ip>"))?;
        idx.push(
            a.trim()
                .parse::<usize>()
                .map_err(|_| bad("anchor index is not an integer"))?,
        );
        ips.push(
            ip.trim()
                .parse::<QuadScalar>()
                .map_err(|e| bad(&e.to_string()))?,
        );
    }
    Ok(cross_section(&base_cfg, &idx, &ips)?.renamed(format!("section:{spec}")))
}

fn int_vec(v: &[i64]) -> Vec<QuadInt> {
    v.iter().map(|&a| QuadInt::int(a)).collect()
}

/// Sign patterns over the non-zero entries of `v`.
fn all_signs(v: &[QuadInt]) -> Vec<Vec<QuadInt>> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    (0..1u32 << nz.len())
        .map(|mask| {
            let mut w = v.to_vec();
            for (bit, &i) in nz.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    w[i] = w[i].negated();
                }
            }
            w
        })
        .collect()
}

/// 12 vertices: cyclic permutations of `(0, ±2, ±(1+√5))`, i.e. `(0, ±1, ±φ)`
/// doubled.
pub fn icosahedron() -> Result<PointConfiguration> {
    let base = [QuadInt::ZERO, QuadInt::int(2), QuadInt::new(1, 1)];
    let mut points = Vec::with_capacity(12);
    for shift in 0..3 {
        let rotated: Vec<QuadInt> = (0..3).map(|i| base[(i + shift) % 3]).collect();
        points.extend(all_signs(&rotated));
    }
    Ok(PointConfiguration::new("icosahedron", 2, 5, points)?
        .with_provenance("cyclic permutations of (0, ±1, ±φ), scaled by 2"))
}

/// The 120 unit quaternions of the binary icosahedral group, scaled by 4.
pub fn cell600() -> Result<PointConfiguration> {
    let mut points = Vec::with_capacity(120);
    for i in 0..4 {
        let mut v = vec![QuadInt::ZERO; 4];
        v[i] = QuadInt::int(4);
        points.extend(all_signs(&v));
    }
    points.extend(all_signs(&[QuadInt::int(2); 4]));
    // ½(0, ±1, ±φ, ±φ⁻¹) → (0, ±2, ±(1+√5), ±(√5−1)) under even permutations
    let base = [
        QuadInt::ZERO,
        QuadInt::int(2),
        QuadInt::new(1, 1),
        QuadInt::new(-1, 1),
    ];
    for perm in even_permutations4() {
        let v: Vec<QuadInt> = perm.iter().map(|&i| base[i]).collect();
        points.extend(all_signs(&v));
    }
    Ok(PointConfiguration::new("600cell", 3, 5, points)?
        .with_provenance("binary icosahedral group as unit quaternions, scaled by 4"))
}

fn even_permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(12);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    if distinct {
                        let inversions = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        if inversions % 2 == 0 {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The 240 roots of E₈ in the even coordinate system, doubled to integers:
/// `(±2², 0⁶)` in all positions and `(±1⁸)` with an even number of minus signs.
pub fn e8_roots() -> Result<PointConfiguration> {
    let mut points = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            let mut v = vec![0i64; 8];
            v[i] = 2;
            v[j] = 2;
            points.extend(all_signs(&int_vec(&v)));
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let v: Vec<i64> = (0..8)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            points.push(int_vec(&v));
        }
    }
    Ok(PointConfiguration::new("e8", 7, 0, points)?
        .with_provenance("E8 roots, even coordinate system, scaled by 2"))
}

/// E₈ roots at inner product 1/2 with a fixed root, projected: 56 points on S⁶.
pub fn kissing56() -> Result<PointConfiguration> {
    let e8 = e8_roots()?;
    Ok(cross_section(&e8, &[0], &[QuadScalar::from_ratio(1, 2)])?.renamed("kissing56"))
}

/// Points of the 56-point configuration at inner product 1/3 with a fixed
/// point, projected: the 27 points of the Schläfli configuration on S⁵.
pub fn schlafli27() -> Result<PointConfiguration> {
    let k56 = kissing56()?;
    Ok(cross_section(&k56, &[0], &[QuadScalar::from_ratio(1, 3)])?.renamed("schlafli27"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::normalized_gram;

    fn q(s: &str) -> QuadScalar {
        s.parse().unwrap()
    }

    fn values(x: &PointConfiguration) -> Vec<QuadScalar> {
        normalized_gram(x).unwrap().off_diagonal_values()
    }

    #[test]
    fn icosahedron_inner_products() {
        let x = icosahedron().unwrap();
        assert_eq!(x.len(), 12);
        assert!(x.is_antipodal());
        assert_eq!(
            values(&x),
            vec![q("-1"), q("-1/5*sqrt(5)"), q("1/5*sqrt(5)")]
        );
    }

    #[test]
    fn cell600_inner_products() {
        let x = cell600().unwrap();
        assert_eq!(x.len(), 120);
        assert!(x.is_antipodal());
        let expected = [
            "-1",
            "-1/4-1/4*sqrt(5)",
            "-1/2",
            "1/4-1/4*sqrt(5)",
            "0",
            "-1/4+1/4*sqrt(5)",
            "1/2",
            "1/4+1/4*sqrt(5)",
        ];
        assert_eq!(values(&x), expected.map(q).to_vec());
    }

    #[test]
    fn e8_inner_products() {
        let x = e8_roots().unwrap();
        assert_eq!(x.len(), 240);
        assert_eq!(values(&x), ["-1", "-1/2", "0", "1/2"].map(q).to_vec());
        let g = normalized_gram(&x).unwrap();
        let minus_one = g.palette_position(&q("-1")).unwrap() as usize;
        // ordered pairs, so each antipodal pair counts twice
        assert_eq!(g.off_diagonal_histogram()[minus_one], 240);
    }

    #[test]
    fn kissing_sections() {
        let k56 = kissing56().unwrap();
        assert_eq!((k56.len(), k56.d()), (56, 6));
        assert_eq!(values(&k56), ["-1", "-1/3", "1/3"].map(q).to_vec());
        let s27 = schlafli27().unwrap();
        assert_eq!((s27.len(), s27.d()), (27, 5));
        assert_eq!(values(&s27), ["-1/2", "1/4"].map(q).to_vec());
        assert!(!s27.is_antipodal());
    }

    #[test]
    fn names() {
        assert_eq!(by_name("e8").unwrap().len(), 240);
        assert_eq!(by_name("section:e8:0=1/2").unwrap().len(), 56);
        assert_eq!(by_name("section:e8:0=1/2,1=0").unwrap().d(), 5);
        assert!(by_name("nosuch").is_err());
        assert!(by_name("section:e8:0=3/7").is_err());
        assert!(by_name("section:e8").is_err());
        assert!(is_heavy("leech") && is_heavy("section:leech:0=1/2") && !is_heavy("e8"));
    }
}
