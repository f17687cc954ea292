//! Cross-sections: points with prescribed inner products against anchors,
//! projected onto the orthogonal complement of the anchors.

use num_traits::ToPrimitive;

use super::{narrow, PointConfiguration};
use crate::error::{Error, Result};
use crate::scalars::{content, dot_wide, QuadInt, QuadScalar, QuadWide};

/// `{u ∈ X : (u, a_j)/|u|² = ips_j}` projected away from the anchors
/// `a_j = X[anchors[j]]`. Each linearly independent anchor lowers the sphere
/// dimension by one; dependent anchors are noted in the provenance.
pub fn cross_section(
    x: &PointConfiguration,
    anchors: &[usize],
    ips: &[QuadScalar],
) -> Result<PointConfiguration> {
    if anchors.len() != ips.len() {
        return Err(Error::InvalidParameter(format!(
            "{} anchors but {} inner products",
            anchors.len(),
            ips.len()
        )));
    }
    if anchors.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one anchor is required".into(),
        ));
    }
    for (k, &a) in anchors.iter().enumerate() {
        if a >= x.len() {
            return Err(Error::InvalidParameter(format!(
                "anchor index {a} out of range for {} points",
                x.len()
            )));
        }
        if anchors[..k].contains(&a) {
            return Err(Error::InvalidParameter(format!(
                "anchor index {a} repeated"
            )));
        }
    }
    let vectors: Vec<Vec<QuadInt>> = anchors.iter().map(|&a| x.point(a).to_vec()).collect();
    let label: Vec<String> = anchors
        .iter()
        .zip(ips)
        .map(|(a, ip)| format!("#{a}={ip}"))
        .collect();
    section_impl(x, &vectors, ips, &format!("anchors [{}]", label.join(", ")))
}

/// Like [`cross_section`] with arbitrary anchor vectors in the coordinates of
/// `X`; selects `u` with `(u, w_j)/|u|² = values_j`.
pub fn cross_section_by_vectors(
    x: &PointConfiguration,
    anchors: &[Vec<QuadInt>],
    values: &[QuadScalar],
) -> Result<PointConfiguration> {
    if anchors.len() != values.len() || anchors.is_empty() {
        return Err(Error::InvalidParameter(
            "need matching, non-empty anchor and value lists".into(),
        ));
    }
    if anchors.iter().any(|w| w.len() != x.ambient_dim()) {
        return Err(Error::InvalidParameter(
            "anchor vector length differs from the ambient dimension".into(),
        ));
    }
    let label: Vec<String> = anchors
        .iter()
        .zip(values)
        .map(|(w, v)| {
            let coords: Vec<String> = w
                .iter()
                .map(|c| c.to_scalar(x.radicand()).to_string())
                .collect();
            format!("({})={v}", coords.join(" "))
        })
        .collect();
    section_impl(
        x,
        anchors,
        values,
        &format!("anchor vectors [{}]", label.join(", ")),
    )
}

/// Converts an exact value to an element of ℤ[√r], if it is one.
fn integral(v: &QuadScalar) -> Option<QuadWide> {
    let a = v.rational_part();
    let b = v.irrational_part();
    if !a.is_integer() || !b.is_integer() {
        return None;
    }
    Some(QuadWide {
        a: a.to_integer().to_i128()?,
        b: b.to_integer().to_i128()?,
    })
}

fn mul_checked(x: QuadWide, y: QuadWide, r: u64) -> Option<QuadWide> {
    let r = r as i128;
    let a =
        x.a.checked_mul(y.a)?
            .checked_add(x.b.checked_mul(y.b)?.checked_mul(r)?)?;
    let b = x.a.checked_mul(y.b)?.checked_add(x.b.checked_mul(y.a)?)?;
    Some(QuadWide { a, b })
}

fn dot_checked(u: &[QuadWide], v: &[QuadWide], r: u64) -> Option<QuadWide> {
    u.iter()
        .zip(v)
        .try_fold(QuadWide::default(), |acc, (x, y)| {
            let p = mul_checked(*x, *y, r)?;
            Some(QuadWide {
                a: acc.a.checked_add(p.a)?,
                b: acc.b.checked_add(p.b)?,
            })
        })
}

/// `|a|² u − (u, a) a`, which stays in ℤ[√r].
fn project(u: &[QuadWide], a: &[QuadWide], aa: QuadWide, r: u64) -> Option<Vec<QuadWide>> {
    let ua = dot_checked(u, a, r)?;
    u.iter()
        .zip(a)
        .map(|(x, y)| {
            let p = mul_checked(aa, *x, r)?;
            let q = mul_checked(ua, *y, r)?;
            Some(QuadWide {
                a: p.a.checked_sub(q.a)?,
                b: p.b.checked_sub(q.b)?,
            })
        })
        .collect()
}

fn strip_content(vectors: &mut [Vec<QuadWide>]) {
    let g = content(vectors.iter().flatten().flat_map(|c| [c.a, c.b]));
    if g > 1 {
        for c in vectors.iter_mut().flatten() {
            c.a /= g;
            c.b /= g;
        }
    }
}

fn widen(v: &[QuadInt]) -> Vec<QuadWide> {
    v.iter()
        .map(|c| QuadWide {
            a: c.a as i128,
            b: c.b as i128,
        })
        .collect()
}

fn section_impl(
    x: &PointConfiguration,
    anchors: &[Vec<QuadInt>],
    values: &[QuadScalar],
    label: &str,
) -> Result<PointConfiguration> {
    let r = x.radicand();
    let norm = x.norm_sq();
    let mut targets = Vec::with_capacity(values.len());
    for v in values {
        if v.radicand() != 0 && r != 0 && v.radicand() != r {
            return Err(Error::Scalar(
                crate::scalars::ScalarError::RadicandMismatch(v.radicand(), r),
            ));
        }
        match integral(&(v * &norm)) {
            Some(t) => targets.push(t),
            None => return Err(Error::EmptySection),
        }
    }
    let selected: Vec<usize> = (0..x.len())
        .filter(|&i| {
            anchors
                .iter()
                .zip(&targets)
                .all(|(a, t)| dot_wide(x.point(i), a, r) == *t)
        })
        .collect();
    if selected.is_empty() {
        return Err(Error::EmptySection);
    }

    let overflow = || Error::Overflow("projecting a cross-section");
    let mut points: Vec<Vec<QuadWide>> = selected.iter().map(|&i| widen(x.point(i))).collect();
    let mut pending: Vec<Vec<QuadWide>> = anchors.iter().map(|a| widen(a)).collect();
    let mut rank = 0;
    let mut notes = Vec::new();
    for k in 0..pending.len() {
        let a = pending[k].clone();
        if a.iter().all(|c| c.is_zero()) {
            notes.push(format!(
                "anchor {k} lies in the span of earlier anchors; skipped"
            ));
            continue;
        }
        rank += 1;
        let aa = dot_checked(&a, &a, r).ok_or_else(overflow)?;
        for p in points.iter_mut() {
            *p = project(p, &a, aa, r).ok_or_else(overflow)?;
        }
        strip_content(&mut points);
        for later in pending.iter_mut().skip(k + 1) {
            let mut projected = vec![project(later, &a, aa, r).ok_or_else(overflow)?];
            strip_content(&mut projected);
            *later = projected.pop().expect("one vector");
        }
    }
    if points[0].iter().all(|c| c.is_zero()) {
        return Err(Error::Invariant(
            "cross-section collapses to the origin (inner product 1 selects an anchor)".into(),
        ));
    }
    if rank > x.d() {
        return Err(Error::InvalidParameter(
            "anchors span the whole space".into(),
        ));
    }
    let narrowed: Vec<Vec<QuadInt>> = points
        .iter()
        .map(|p| p.iter().map(|c| narrow(*c)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(overflow)?;
    let mut out = PointConfiguration::new(
        format!("section of {}", x.name()),
        x.d() - rank,
        r,
        narrowed,
    )?;
    out.provenance = x.provenance().to_vec();
    out.provenance.push(format!(
        "cross-section of {} at {label}: {} points, rank {rank}",
        x.name(),
        selected.len()
    ));
    out.provenance.extend(notes);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::{e8_roots, icosahedron, normalized_gram};

    #[test]
    fn e8_section_count_independent_of_anchor() {
        let e8 = e8_roots().unwrap();
        let half = QuadScalar::from_ratio(1, 2);
        for anchor in [0, 17, 100, 239] {
            let s = cross_section(&e8, &[anchor], std::slice::from_ref(&half)).unwrap();
            assert_eq!(s.len(), 56);
            assert_eq!(s.d(), 6);
        }
        let zero = cross_section(&e8, &[5], &[QuadScalar::zero()]).unwrap();
        assert_eq!(zero.len(), 126);
    }

    #[test]
    fn dependent_anchor_is_reported() {
        let e8 = e8_roots().unwrap();
        let a = e8.point(0).to_vec();
        let neg: Vec<QuadInt> = a.iter().map(|c| c.negated()).collect();
        let j = e8.index_of(&neg).unwrap();
        let s = cross_section(&e8, &[0, j], &[QuadScalar::zero(), QuadScalar::zero()]).unwrap();
        assert_eq!(s.d(), 6);
        assert!(s
            .provenance()
            .iter()
            .any(|l| l.contains("span of earlier anchors")));
    }

    #[test]
    fn errors() {
        let e8 = e8_roots().unwrap();
        let half = QuadScalar::from_ratio(1, 2);
        assert!(matches!(
            cross_section(&e8, &[0], &[QuadScalar::from_ratio(1, 3)]),
            Err(Error::EmptySection)
        ));
        assert!(cross_section(&e8, &[0, 0], &[half.clone(), half.clone()]).is_err());
        assert!(cross_section(&e8, &[0], &[]).is_err());
        assert!(cross_section(&e8, &[240], &[half]).is_err());
        assert!(cross_section(&e8, &[0], &[QuadScalar::one()]).is_err());
    }

    #[test]
    fn quadratic_field_section_stays_exact() {
        let ico = icosahedron().unwrap();
        let ip: QuadScalar = "1/5*sqrt(5)".parse().unwrap();
        let s = cross_section(&ico, &[0], &[ip]).unwrap();
        // the five neighbours of a vertex form a regular pentagon
        assert_eq!((s.len(), s.d()), (5, 1));
        assert_eq!(s.radicand(), 5);
        let g = normalized_gram(&s).unwrap();
        assert_eq!(g.off_diagonal_values().len(), 2);
    }
}
