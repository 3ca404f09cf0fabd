//! Plain-text sectioned config describing a quiver and its coefficient algebra.
//!
//! ```text
//! [quiver]
//! vertices = 3
//! arrow a = 1 -> 2
//! arrow b = 2 -> 3
//! [coefficients]
//! type = truncated_polynomial
//! t = 2
//! [names]
//! M = Ind(S_2)
//! ```

use crate::linalg::{unit_vec, zero_vec, Scalar, Vector};

use super::{AlgebraError, LocalAlgebra, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub quiver: Quiver,
    pub coefficients: LocalAlgebra,
    /// Display aliases: (alias, canonical name).
    pub names: Vec<(String, String)>,
}

fn err(line: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Config { line, msg: msg.into() }
}

fn key_value(s: &str, line: usize) -> Result<(&str, &str), AlgebraError> {
    let (k, v) = s.split_once('=').ok_or_else(|| err(line, "expected `key = value`"))?;
    Ok((k.trim(), v.trim()))
}

fn parse_lincomb(s: &str, labels: &[String], line: usize) -> Result<Vector, AlgebraError> {
    let mut v = zero_vec(labels.len());
    let s = s.trim();
    if s == "0" {
        return Ok(v);
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (Scalar::int(-1), rest.to_string()),
            None => (Scalar::one(), t.trim_start_matches('+').to_string()),
        };
        let (coef, label) = match body.rsplit_once('*') {
            Some((c, l)) => (c.parse::<Scalar>().map_err(|_| err(line, format!("bad coefficient `{c}`")))?, l.to_string()),
            None => match body.parse::<Scalar>() {
                Ok(c) => (c, "1".to_string()),
                Err(_) => (Scalar::one(), body.clone()),
            },
        };
        let i = labels.iter().position(|l| *l == label).ok_or_else(|| err(line, format!("unknown basis element `{label}`")))?;
        v[i] = &v[i] + &(&sign * &coef);
    }
    Ok(v)
}

pub fn parse_config(text: &str) -> Result<Config, AlgebraError> {
    let mut section = String::new();
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<(String, usize, usize, usize)> = Vec::new();
    let mut ctype: Option<String> = None;
    let mut t: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut products: Vec<(usize, String, String, String)> = Vec::new();
    let mut names = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(name) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            section = name.trim().to_string();
            continue;
        }
        match section.as_str() {
            "quiver" => {
                if let Some(rest) = s.strip_prefix("arrow ") {
                    let (name, ends) = key_value(rest, line)?;
                    let (a, b) = ends.split_once("->").ok_or_else(|| err(line, "expected `i -> j`"))?;
                    let p = |x: &str| x.trim().parse::<usize>().map_err(|_| err(line, format!("bad vertex `{}`", x.trim())));
                    arrows.push((name.to_string(), p(a)?, p(b)?, line));
                } else {
                    let (k, v) = key_value(s, line)?;
                    if k != "vertices" {
                        return Err(err(line, format!("unknown quiver key `{k}`")));
                    }
                    vertices = Some(v.parse().map_err(|_| err(line, "bad vertex count"))?);
                }
            }
            "coefficients" => {
                if let Some(rest) = s.strip_prefix("product ") {
                    let (lhs, rhs) = key_value(rest, line)?;
                    let (x, y) = lhs.split_once('*').ok_or_else(|| err(line, "expected `u * v`"))?;
                    products.push((line, x.trim().to_string(), y.trim().to_string(), rhs.to_string()));
                    continue;
                }
                let (k, v) = key_value(s, line)?;
                match k {
                    "type" => ctype = Some(v.to_string()),
                    "t" => t = Some(v.parse().map_err(|_| err(line, "bad truncation degree"))?),
                    "basis" => labels = Some(v.split(',').map(|x| x.trim().to_string()).collect()),
                    _ => return Err(err(line, format!("unknown coefficient key `{k}`"))),
                }
            }
            "names" => {
                let (k, v) = key_value(s, line)?;
                names.push((k.to_string(), v.to_string()));
            }
            "" => return Err(err(line, "content before any section")),
            other => return Err(err(line, format!("unknown section `{other}`"))),
        }
    }
    let n = vertices.ok_or_else(|| err(0, "missing `vertices`"))?;
    let mut quiver = Quiver::new(n);
    for (name, s, tg, line) in arrows {
        if s == 0 || tg == 0 || s > n || tg > n {
            return Err(err(line, "vertex out of range"));
        }
        if quiver.arrow_index(&name).is_some() {
            return Err(err(line, format!("duplicate arrow `{name}`")));
        }
        quiver.add_arrow(&name, s - 1, tg - 1);
    }
    let coefficients = match ctype.as_deref() {
        None => LocalAlgebra::truncated(1),
        Some("truncated_polynomial") => {
            let t = t.ok_or_else(|| err(0, "missing `t`"))?;
            if t == 0 {
                return Err(err(0, "`t` must be positive"));
            }
            LocalAlgebra::truncated(t)
        }
        Some("structure_constants") => {
            let labels = labels.ok_or_else(|| err(0, "missing `basis`"))?;
            let d = labels.len();
            if d == 0 || labels[0] != "1" {
                return Err(err(0, "basis must start with the unit `1`"));
            }
            let mut table: Vec<Vec<Vector>> = vec![vec![zero_vec(d); d]; d];
            for i in 0..d {
                table[0][i] = unit_vec(d, i);
                table[i][0] = unit_vec(d, i);
            }
            for (line, x, y, rhs) in products {
                let find = |l: &str| labels.iter().position(|b| b == l).ok_or_else(|| err(line, format!("unknown basis element `{l}`")));
                let (i, j) = (find(&x)?, find(&y)?);
                let v = parse_lincomb(&rhs, &labels, line)?;
                table[i][j] = v.clone();
                table[j][i] = v;
            }
            LocalAlgebra::from_constants(labels, table)?
        }
        Some(other) => return Err(err(0, format!("unknown coefficient type `{other}`"))),
    };
    Ok(Config { quiver, coefficients, names })
}

pub fn load_config(path: &std::path::Path) -> Result<Config, AlgebraError> {
    let text = std::fs::read_to_string(path).map_err(|e| err(0, format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_truncated() {
        let c = parse_config(
            "# A3 with t = 2\n[quiver]\nvertices = 3\narrow a = 1 -> 2\narrow b = 2 -> 3\n[coefficients]\ntype = truncated_polynomial\nt = 2\n[names]\nM = Ind(S_2)\n",
        )
        .unwrap();
        assert_eq!(c.quiver, Quiver::type_a(3));
        assert_eq!(c.coefficients, LocalAlgebra::truncated(2));
        assert_eq!(c.names, vec![("M".to_string(), "Ind(S_2)".to_string())]);
    }

    #[test]
    fn parses_structure_constants() {
        let c = parse_config(
            "[quiver]\nvertices = 2\narrow a = 1 -> 2\n[coefficients]\ntype = structure_constants\nbasis = 1, x, y\nproduct x * x = 0\n",
        )
        .unwrap();
        assert_eq!(c.coefficients.table, LocalAlgebra::square_zero_plane().table);
    }

    #[test]
    fn lincomb_terms() {
        let labels: Vec<String> = ["1", "x", "y"].iter().map(|s| s.to_string()).collect();
        let v = parse_lincomb("2*x - 1/2*y + 3", &labels, 1).unwrap();
        assert_eq!(v, vec![Scalar::int(3), Scalar::int(2), Scalar::frac(-1, 2)]);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_config("[quiver]\nvertices = 2\narrow a = 1 -> 5\n").unwrap_err();
        assert_eq!(e, AlgebraError::Config { line: 3, msg: "vertex out of range".into() });
    }
}
