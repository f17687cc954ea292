//! Plain-text file formats.
//!
//! Exact configuration:
//!
//! ```text
//! harmcodes-config v1 exact
//! name e8
//! provenance E8 roots, even coordinate system, scaled by 2
//! d 7
//! norm_sq 8
//! N 240
//! ambient 8
//! -2 -2 0 0 0 0 0 0
//! ...
//! ```
//!
//! Coordinates use the scalar grammar (`p/q`, `p/q+s/t*sqrt(r)`). The float
//! variant has header `harmcodes-config v1 float` and decimal coordinates of
//! unit vectors. A Gram dump has header `harmcodes-gram v1`, then `name`,
//! `d`, `n` and `n` rows of exact scalars. All files are UTF-8 with LF line
//! endings.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{GramMatrix, PointConfiguration};
use crate::error::{Error, Result};
use crate::scalars::{QuadInt, QuadScalar};

pub const CONFIG_HEADER: &str = "harmcodes-config v1 exact";
pub const FLOAT_HEADER: &str = "harmcodes-config v1 float";
pub const GRAM_HEADER: &str = "harmcodes-gram v1";

pub fn write_configuration<W: Write>(x: &PointConfiguration, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    writeln!(w, "{CONFIG_HEADER}")?;
    writeln!(w, "name {}", x.name())?;
    for line in x.provenance() {
        writeln!(w, "provenance {line}")?;
    }
    writeln!(w, "d {}", x.d())?;
    writeln!(w, "norm_sq {}", x.norm_sq())?;
    writeln!(w, "N {}", x.len())?;
    writeln!(w, "ambient {}", x.ambient_dim())?;
    let r = x.radicand();
    let mut cache: HashMap<QuadInt, String> = HashMap::new();
    for p in x.points() {
        let mut first = true;
        for c in p {
            if !first {
                w.write_all(b" ")?;
            }
            first = false;
            let s = cache
                .entry(*c)
                .or_insert_with(|| c.to_scalar(r).to_string());
            w.write_all(s.as_bytes())?;
        }
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn save(x: &PointConfiguration, path: impl AsRef<Path>) -> Result<()> {
    write_configuration(x, File::create(path)?)
}

pub fn load(path: impl AsRef<Path>) -> Result<PointConfiguration> {
    read_configuration(File::open(path)?)
}

pub fn read_configuration<R: Read>(r: R) -> Result<PointConfiguration> {
    let mut text = String::new();
    BufReader::new(r).read_to_string(&mut text)?;
    parse_configuration(&text)
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l))
            }
            None => Err(Error::parse(self.last + 1, "unexpected end of file")),
        }
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next_line()?;
        let value = line
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .ok_or_else(|| Error::parse(n, format!("expected `{key} <value>`")))?;
        Ok((n, value))
    }

    fn number(&mut self, key: &str) -> Result<usize> {
        let (n, v) = self.field(key)?;
        v.trim()
            .parse()
            .map_err(|_| Error::parse(n, format!("`{key}` is not a non-negative integer")))
    }
}

struct Header<'a> {
    name: String,
    provenance: Vec<String>,
    d: usize,
    norm_sq: &'a str,
    norm_line: usize,
    count: usize,
    ambient: usize,
}

fn parse_header<'a>(lines: &mut Lines<'a>, header: &str) -> Result<Header<'a>> {
    let (n, first) = lines.next_line()?;
    if first.trim_end() != header {
        return Err(Error::parse(n, format!("expected header `{header}`")));
    }
    let name = lines.field("name")?.1.to_string();
    let mut provenance = Vec::new();
    let (d_line, d_text) = loop {
        let (n, line) = lines.next_line()?;
        if let Some(p) = line.strip_prefix("provenance ") {
            provenance.push(p.to_string());
        } else {
            break (n, line);
        }
    };
    let d = d_text
        .strip_prefix("d ")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::parse(d_line, "expected `d <integer>`"))?;
    let (norm_line, norm_sq) = lines.field("norm_sq")?;
    let count = lines.number("N")?;
    let ambient = lines.number("ambient")?;
    Ok(Header {
        name,
        provenance,
        d,
        norm_sq,
        norm_line,
        count,
        ambient,
    })
}

pub fn parse_configuration(text: &str) -> Result<PointConfiguration> {
    let mut lines = Lines::new(text);
    let h = parse_header(&mut lines, CONFIG_HEADER)?;
    let norm_sq: QuadScalar = h
        .norm_sq
        .parse()
        .map_err(|e: crate::scalars::ScalarError| Error::parse(h.norm_line, e.to_string()))?;
    if h.count == 0 {
        return Err(Error::parse(h.norm_line + 1, "configuration has no points"));
    }

    let mut cache: HashMap<&str, QuadScalar> = HashMap::new();
    let mut rows: Vec<Vec<QuadScalar>> = Vec::with_capacity(h.count);
    for _ in 0..h.count {
        let (n, line) = lines.next_line().map_err(|_| {
            Error::parse(
                lines.last + 1,
                format!(
                    "expected {} coordinate lines, found {}",
                    h.count,
                    rows.len()
                ),
            )
        })?;
        let mut row = Vec::with_capacity(h.ambient);
        for tok in line.split_whitespace() {
            let v = match cache.get(tok) {
                Some(v) => v.clone(),
                None => {
                    let v: QuadScalar = tok
                        .parse()
                        .map_err(|e: crate::scalars::ScalarError| Error::parse(n, e.to_string()))?;
                    cache.insert(tok, v.clone());
                    v
                }
            };
            row.push(v);
        }
        if row.len() != h.ambient {
            return Err(Error::parse(
                n,
                format!("expected {} coordinates, found {}", h.ambient, row.len()),
            ));
        }
        rows.push(row);
    }
    if let Ok((n, extra)) = lines.next_line() {
        if !extra.trim().is_empty() {
            return Err(Error::parse(n, "trailing data after the last point"));
        }
    }

    // one quadratic field for everything
    let mut radicand = norm_sq.radicand();
    for v in cache.values() {
        match (radicand, v.radicand()) {
            (_, 0) => {}
            (0, s) => radicand = s,
            (r, s) if r == s => {}
            (r, s) => {
                return Err(Error::Scalar(
                    crate::scalars::ScalarError::RadicandMismatch(r, s),
                ))
            }
        }
    }

    // clear denominators: coordinates are scaled by the lcm of all of them
    let lcm = cache.values().fold(BigInt::one(), |l, v| {
        l.lcm(v.rational_part().denom())
            .lcm(v.irrational_part().denom())
    });
    let scale = BigRational::from_integer(lcm.clone());
    let to_int = |q: &BigRational| -> Result<i64> {
        (q * &scale)
            .to_integer()
            .to_i64()
            .ok_or(Error::Overflow("reading coordinates"))
    };
    let mut ints: HashMap<QuadScalar, QuadInt> = HashMap::new();
    for v in cache.values() {
        ints.insert(
            v.clone(),
            QuadInt::new(to_int(v.rational_part())?, to_int(v.irrational_part())?),
        );
    }
    let points: Vec<Vec<QuadInt>> = rows
        .iter()
        .map(|row| row.iter().map(|v| ints[v]).collect())
        .collect();

    let mut x = PointConfiguration::new(h.name, h.d, radicand, points)?;
    let expected = &norm_sq * &QuadScalar::rational(&scale * &scale);
    if x.norm_sq() != expected {
        return Err(Error::Invariant(format!(
            "points have squared norm {} but the header says {norm_sq}",
            x.norm_sq() / QuadScalar::rational(&scale * &scale)
        )));
    }
    x.provenance = h.provenance;
    Ok(x)
}

/// Unit-vector coordinates with a sphere dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatConfiguration {
    pub name: String,
    pub d: usize,
    pub points: Vec<Vec<f64>>,
}

pub fn write_float<W: Write>(name: &str, d: usize, points: &[Vec<f64>], w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    writeln!(w, "{FLOAT_HEADER}")?;
    writeln!(w, "name {name}")?;
    writeln!(w, "d {d}")?;
    writeln!(w, "norm_sq 1")?;
    writeln!(w, "N {}", points.len())?;
    writeln!(w, "ambient {}", points.first().map_or(d + 1, Vec::len))?;
    for p in points {
        let row: Vec<String> = p.iter().map(|c| format!("{c:e}")).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_float(name: &str, d: usize, points: &[Vec<f64>], path: impl AsRef<Path>) -> Result<()> {
    write_float(name, d, points, File::create(path)?)
}

pub fn load_float(path: impl AsRef<Path>) -> Result<FloatConfiguration> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    let mut lines = Lines::new(&text);
    let h = parse_header(&mut lines, FLOAT_HEADER)?;
    let mut points = Vec::with_capacity(h.count);
    for _ in 0..h.count {
        let (n, line) = lines.next_line()?;
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::parse(n, format!("bad float {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != h.ambient {
            return Err(Error::parse(
                n,
                format!("expected {} coordinates, found {}", h.ambient, row.len()),
            ));
        }
        points.push(row);
    }
    Ok(FloatConfiguration {
        name: h.name,
        d: h.d,
        points,
    })
}

pub fn write_gram<W: Write>(name: &str, g: &GramMatrix, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    writeln!(w, "{GRAM_HEADER}")?;
    writeln!(w, "name {name}")?;
    writeln!(w, "d {}", g.d())?;
    writeln!(w, "n {}", g.size())?;
    let strings: Vec<String> = g.palette().iter().map(ToString::to_string).collect();
    for i in 0..g.size() {
        let row = g.row_indices(i);
        for (j, &k) in row.iter().enumerate() {
            if j > 0 {
                w.write_all(b" ")?;
            }
            w.write_all(strings[k as usize].as_bytes())?;
        }
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_gram(name: &str, g: &GramMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_gram(name, g, File::create(path)?)
}

/// Reads a Gram dump, returning its name and matrix.
pub fn read_gram<R: Read>(r: R) -> Result<(String, GramMatrix)> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines().enumerate();
    let mut next = |what: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((i, l)) => Ok((i + 1, l?)),
            None => Err(Error::parse(
                0,
                format!("unexpected end of file while reading {what}"),
            )),
        }
    };
    let (n0, header) = next("header")?;
    if header.trim_end() != GRAM_HEADER {
        return Err(Error::parse(n0, format!("expected header `{GRAM_HEADER}`")));
    }
    let (n1, name) = next("name")?;
    let name = name
        .strip_prefix("name ")
        .ok_or_else(|| Error::parse(n1, "expected `name <value>`"))?
        .to_string();
    let (n2, d) = next("d")?;
    let d: usize = d
        .strip_prefix("d ")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::parse(n2, "expected `d <integer>`"))?;
    let (n3, size) = next("n")?;
    let size: usize = size
        .strip_prefix("n ")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::parse(n3, "expected `n <integer>`"))?;
    let mut cache: HashMap<String, QuadScalar> = HashMap::new();
    let mut entries = Vec::with_capacity(size * size);
    for row in 0..size {
        let (n, line) = next(&format!("row {row} of {size}"))?;
        let before = entries.len();
        for tok in line.split_whitespace() {
            let v = match cache.get(tok) {
                Some(v) => v.clone(),
                None => {
                    let v: QuadScalar = tok
                        .parse()
                        .map_err(|e: crate::scalars::ScalarError| Error::parse(n, e.to_string()))?;
                    cache.insert(tok.to_string(), v.clone());
                    v
                }
            };
            entries.push(v);
        }
        if entries.len() - before != size {
            return Err(Error::parse(
                n,
                format!("expected {size} entries, found {}", entries.len() - before),
            ));
        }
    }
    Ok((name, GramMatrix::from_entries(size, d, entries)?))
}

pub fn load_gram(path: impl AsRef<Path>) -> Result<(String, GramMatrix)> {
    read_gram(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::{e8_roots, icosahedron, normalized_gram};

    #[test]
    fn exact_roundtrip() {
        for x in [e8_roots().unwrap(), icosahedron().unwrap()] {
            let mut buf = Vec::new();
            write_configuration(&x, &mut buf).unwrap();
            let y = read_configuration(buf.as_slice()).unwrap();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn rational_coordinates_are_rescaled() {
        let text = format!("{CONFIG_HEADER}\nname sq\nd 1\nnorm_sq 1/2\nN 4\nambient 2\n1/2 1/2\n-1/2 1/2\n1/2 -1/2\n-1/2 -1/2\n");
        let x = parse_configuration(&text).unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(x.normalized_ip(0, 3), QuadScalar::from_ratio(-1, 1));
    }

    #[test]
    fn non_uniform_norm_is_an_invariant_error() {
        let text = format!("{CONFIG_HEADER}\nname bad\nd 1\nnorm_sq 1\nN 2\nambient 2\n1 0\n0 2\n");
        assert!(matches!(
            parse_configuration(&text),
            Err(Error::Invariant(_))
        ));
        let text = format!("{CONFIG_HEADER}\nname bad\nd 1\nnorm_sq 2\nN 2\nambient 2\n1 0\n0 1\n");
        assert!(matches!(
            parse_configuration(&text),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn truncated_file_is_a_parse_error() {
        let x = e8_roots().unwrap();
        let mut buf = Vec::new();
        write_configuration(&x, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(100).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            parse_configuration(&cut),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_configuration(&text[..text.len() / 2]),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_configuration("harmcodes-config v1 exact\nname x\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_configuration("not a config"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn gram_roundtrip() {
        let g = normalized_gram(&icosahedron().unwrap()).unwrap();
        let mut buf = Vec::new();
        write_gram("ico", &g, &mut buf).unwrap();
        let (name, h) = read_gram(buf.as_slice()).unwrap();
        assert_eq!(name, "ico");
        assert_eq!(g, h);
        assert!(read_gram(&buf[..buf.len() / 2]).is_err());
    }
}
