use harmcodes::configurations::sort_scalars;
use harmcodes::QuadScalar;

/// Parenthesizes values with both a rational and an irrational part.
fn wrap(v: &QuadScalar) -> String {
    let compound = !v.is_rational() && !QuadScalar::rational(v.rational_part().clone()).is_zero();
    if compound {
        format!("({v})")
    } else {
        v.to_string()
    }
}

/// `{-1,±1/2,0}`: values by decreasing magnitude, with `±` for pairs.
pub fn ip_set(values: &[QuadScalar]) -> String {
    let mut mags: Vec<QuadScalar> = values.iter().map(QuadScalar::abs).collect();
    sort_scalars(&mut mags);
    mags.dedup();
    mags.reverse();
    let parts: Vec<String> = mags
        .iter()
        .map(|m| {
            if m.is_zero() {
                return "0".to_string();
            }
            let neg = -m;
            match (values.contains(m), values.contains(&neg)) {
                (true, true) => format!("±{}", wrap(m)),
                (false, true) => neg.to_string(),
                _ => m.to_string(),
            }
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}
