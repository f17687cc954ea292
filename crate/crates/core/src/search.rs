//! Enumeration of parameters `(d, N, ℓ)` admitted by the size condition
//! `(2N)²/D − 4N = ℓ²((2N)² − 4N)` when `1/√m` is an inner product.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::optimality_equation;
use crate::error::{Error, Result};
use crate::harmonics::harm_dim;
use crate::scalars::QuadScalar;

/// Bound applied to every row: the embedded code is an antipodal 3-design in
/// `S^{D−1}`, so it has at least `2D` points.
pub const FISHER_BOUND: &str = "antipodal 3-design in S^(D-1): 2N >= 2D";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRow {
    pub d: usize,
    pub d_plus_1: usize,
    /// `D = d(d+3)/2`.
    pub dim: u64,
    pub m: u64,
    /// `g_{2,d}(1/√m) = (d+1−m)/(dm)`, signed.
    pub level: QuadScalar,
    /// `2N`.
    pub code_size: u64,
    pub inner_products: Vec<QuadScalar>,
    pub fisher_ok: bool,
}

/// `(d+1−m)/(dm)`.
pub fn level_from_m(d: usize, m: u64) -> QuadScalar {
    let (d, m) = (d as i64, m as i64);
    QuadScalar::from_ratio(d + 1 - m, d * m)
}

/// The even positive `M = 2N` solving the size condition, from
/// `M = 2D(1−ℓ²)/(1−Dℓ²)`, checked by substitution.
pub fn solve_code_size(d: usize, level: &QuadScalar) -> Option<u64> {
    if level.is_zero() {
        return None;
    }
    let dim = harm_dim(2, d).ok()?;
    let l2 = level.square();
    let l2 = l2.as_rational()?;
    let big_d = BigRational::from_integer(BigInt::from(dim));
    let denom = BigRational::one() - &big_d * l2;
    if !denom.is_positive() {
        return None;
    }
    let m = BigRational::from_integer(BigInt::from(2u64 * dim)) * (BigRational::one() - l2) / denom;
    if !m.is_integer() || !m.is_positive() {
        return None;
    }
    let m = m.to_integer().to_u64()?;
    if m % 2 != 0 {
        return None;
    }
    optimality_equation(d, (m / 2) as usize, level)
        .ok()?
        .then_some(m)
}

/// All `x ≥ 0` with `g_{2,d}(x) = ±ℓ`: `x = √((1 ± dℓ)/(d+1))` whenever the
/// radicand is non-negative. Increasing, without repeats.
pub fn admissible_inner_products(d: usize, level: &QuadScalar) -> Result<Vec<QuadScalar>> {
    let l = level
        .as_rational()
        .ok_or_else(|| Error::InvalidParameter(format!("level {level} is not rational")))?;
    if d < 1 {
        return Err(Error::InvalidParameter(
            "sphere dimension must be positive".into(),
        ));
    }
    let dl = BigRational::from_integer(BigInt::from(d)) * l;
    // the two roots may lie in different quadratic fields, so order by x²
    let mut squares: Vec<BigRational> = [BigRational::one() - &dl, BigRational::one() + &dl]
        .into_iter()
        .map(|s| s / BigRational::from_integer(BigInt::from(d + 1)))
        .filter(|q| !q.is_negative())
        .collect();
    squares.sort();
    squares.dedup();
    Ok(squares
        .iter()
        .map(QuadScalar::sqrt_rational)
        .collect::<Result<_, _>>()?)
}

fn row(d: usize, m: u64) -> Result<Option<SearchRow>> {
    let level = level_from_m(d, m);
    let Some(code_size) = solve_code_size(d, &level) else {
        return Ok(None);
    };
    let dim = harm_dim(2, d)?;
    Ok(Some(SearchRow {
        d,
        d_plus_1: d + 1,
        dim,
        m,
        inner_products: admissible_inner_products(d, &level)?,
        level,
        code_size,
        fisher_ok: code_size >= 2 * dim,
    }))
}

/// Rows for `3 ≤ d+1 ≤ d_plus_1_max` and `1 ≤ m ≤ m_max`, sorted by `(d, m)`.
/// Rows failing the Fisher bound are dropped unless `keep_fisher_failures`.
pub fn enumerate_with(
    d_plus_1_max: usize,
    m_max: u64,
    keep_fisher_failures: bool,
) -> Result<Vec<SearchRow>> {
    if d_plus_1_max < 3 {
        return Err(Error::InvalidParameter(format!(
            "d+1 range must reach 3, got {d_plus_1_max}"
        )));
    }
    if m_max < 1 {
        return Err(Error::InvalidParameter("m range must reach 1".into()));
    }
    let grid: Vec<(usize, u64)> = (2..d_plus_1_max)
        .flat_map(|d| (1..=m_max).map(move |m| (d, m)))
        .collect();
    let rows: Vec<Option<SearchRow>> = grid
        .par_iter()
        .map(|&(d, m)| row(d, m))
        .collect::<Result<_>>()?;
    let mut rows: Vec<SearchRow> = rows
        .into_iter()
        .flatten()
        .filter(|r| keep_fisher_failures || r.fisher_ok)
        .collect();
    rows.sort_by_key(|r| (r.d, r.m));
    Ok(rows)
}

pub fn enumerate(d_plus_1_max: usize, m_max: u64) -> Result<Vec<SearchRow>> {
    enumerate_with(d_plus_1_max, m_max, false)
}

pub const CSV_COLUMNS: [&str; 7] = [
    "d+1",
    "D",
    "m",
    "level",
    "2N",
    "inner_products",
    "fisher_ok",
];

pub fn write_csv<W: Write>(rows: &[SearchRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_COLUMNS)?;
    for r in rows {
        let ips: Vec<String> = r.inner_products.iter().map(ToString::to_string).collect();
        out.write_record([
            r.d_plus_1.to_string(),
            r.dim.to_string(),
            r.m.to_string(),
            r.level.to_string(),
            r.code_size.to_string(),
            ips.join(";"),
            r.fisher_ok.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SearchTable<'a> {
    format: &'static str,
    fisher_bound: &'static str,
    rows: &'a [SearchRow],
}

pub fn write_json<W: Write>(rows: &[SearchRow], mut w: W) -> Result<()> {
    let table = SearchTable {
        format: "harmcodes-search v1",
        fisher_bound: FISHER_BOUND,
        rows,
    };
    serde_json::to_writer_pretty(&mut w, &table)?;
    writeln!(w)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::gegenbauer2;

    fn q(s: &str) -> QuadScalar {
        s.parse().unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn levels() {
        assert_eq!(level_from_m(7, 4), q("1/7"));
        assert_eq!(level_from_m(2, 5), q("-1/5"));
        assert!(level_from_m(9, 10).is_zero());
        for (d, m) in [(2, 5), (6, 9), (7, 4), (22, 25), (40, 3)] {
            let x = QuadScalar::sqrt_rational(&ratio(1, m as i64)).unwrap();
            assert_eq!(gegenbauer2(d, &x), level_from_m(d, m));
        }
    }

    #[test]
    fn code_sizes() {
        assert_eq!(solve_code_size(7, &q("1/7")), Some(240));
        assert_eq!(solve_code_size(6, &q("1/27")), Some(56));
        assert_eq!(solve_code_size(22, &q("1/275")), Some(552));
        assert_eq!(solve_code_size(2, &q("1/5")), Some(12));
        assert_eq!(solve_code_size(2, &q("-1/5")), Some(12));
        assert_eq!(solve_code_size(7, &QuadScalar::zero()), None);
        // D ℓ² = 1
        assert_eq!(solve_code_size(2, &q("1/5*sqrt(5)")), None);
    }

    #[test]
    fn inner_products() {
        assert_eq!(
            admissible_inner_products(7, &q("1/7")).unwrap(),
            vec![q("0"), q("1/2")]
        );
        let six = admissible_inner_products(6, &q("1/27")).unwrap();
        assert_eq!(
            six,
            vec![q("1/3"), QuadScalar::sqrt_rational(&ratio(11, 63)).unwrap()]
        );
        let ico = admissible_inner_products(2, &q("1/5")).unwrap();
        assert!(ico.contains(&QuadScalar::sqrt_rational(&ratio(1, 5)).unwrap()));
        for x in six.iter().chain(&ico) {
            assert!(gegenbauer2(6, x).abs() == q("1/27") || gegenbauer2(2, x).abs() == q("1/5"));
        }
    }

    #[test]
    fn enumeration_ranges() {
        assert!(enumerate(2, 200).is_err());
        assert!(enumerate(100, 0).is_err());
        let small = enumerate(9, 10).unwrap();
        assert!(small.iter().any(|r| (r.d, r.m, r.code_size) == (7, 4, 240)));
        assert!(small
            .windows(2)
            .all(|w| (w[0].d, w[0].m) < (w[1].d, w[1].m)));
    }

    #[test]
    fn csv_layout() {
        let rows = enumerate(9, 10).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("d+1,D,m,level,2N,inner_products,fisher_ok\n"));
        assert!(text.contains("8,35,4,1/7,240,0;1/2,true"));
    }
}
