//! Solution and cochain file formats.
//!
//! Solutions: plain text (`n`, the `s1` rows, a blank line, the `s2` rows),
//! JSON `{"n", "s1", "s2"}`, or a rack table under a `rack` header line.
//! Cochains: a JSON object from `"x1,...,xn"` keys to integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{tuples, Cochain};
use crate::error::FormatError;
use crate::scalar::{Ring, Scalar};
use crate::solution::Solution;

#[derive(Serialize, Deserialize)]
struct SolutionJson {
    n: usize,
    s1: Vec<Vec<usize>>,
    s2: Vec<Vec<usize>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// Parses any of the three solution formats. With `strict`, tables that are
/// not bijective or break the braid relation are rejected.
pub fn parse_solution(input: &str, strict: bool) -> Result<Solution, FormatError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let j: SolutionJson = serde_json::from_str(input)?;
        check_size(j.n, &j.s1, &j.s2)?;
        return Ok(Solution::from_tables(&j.s1, &j.s2, strict)?);
    }
    // (line number, content) without comments
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .collect();
    let mut content = lines.iter().filter(|(_, l)| !l.is_empty()).peekable();
    let Some(&(first_no, first)) = content.peek().copied() else {
        return Err(parse_err(1, "empty input"));
    };
    if first.eq_ignore_ascii_case("rack") {
        content.next();
        let rows: Vec<Vec<usize>> =
            content.map(|&(no, l)| parse_row(no, l)).collect::<Result<_, _>>()?;
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(parse_err(first_no + 1 + bad, format!("rack row has {} entries, expected {n}", rows[bad].len())));
        }
        return Ok(Solution::from_rack(&rows)?);
    }
    let n: usize = first.parse().map_err(|_| parse_err(first_no, format!("expected size, found `{first}`")))?;
    content.next();
    let rows: Vec<(usize, Vec<usize>)> =
        content.map(|&(no, l)| parse_row(no, l).map(|r| (no, r))).collect::<Result<_, _>>()?;
    if rows.len() != 2 * n {
        return Err(parse_err(
            lines.len(),
            format!("expected {} table rows, found {}", 2 * n, rows.len()),
        ));
    }
    if let Some((no, r)) = rows.iter().find(|(_, r)| r.len() != n) {
        return Err(parse_err(*no, format!("row has {} entries, expected {n}", r.len())));
    }
    let s1: Vec<Vec<usize>> = rows[..n].iter().map(|(_, r)| r.clone()).collect();
    let s2: Vec<Vec<usize>> = rows[n..].iter().map(|(_, r)| r.clone()).collect();
    Ok(Solution::from_tables(&s1, &s2, strict)?)
}

fn check_size(n: usize, s1: &[Vec<usize>], s2: &[Vec<usize>]) -> Result<(), FormatError> {
    if s1.len() != n || s2.len() != n {
        return Err(parse_err(0, format!("tables must have {n} rows")));
    }
    Ok(())
}

fn parse_row(line: usize, l: &str) -> Result<Vec<usize>, FormatError> {
    l.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| parse_err(line, format!("bad entry `{t}`"))))
        .collect()
}

pub fn solution_to_text(sol: &Solution) -> String {
    let (s1, s2) = sol.tables();
    let rows = |t: &[Vec<usize>]| {
        t.iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    };
    format!("{}\n{}\n\n{}\n", sol.n(), rows(&s1), rows(&s2))
}

pub fn solution_to_json(sol: &Solution) -> String {
    let (s1, s2) = sol.tables();
    serde_json::to_string_pretty(&SolutionJson { n: sol.n(), s1, s2 }).unwrap()
}

/// `"1,0,2"`; also accepts `"(1,0,2)"`. The empty key is degree 0.
pub fn parse_key(key: &str) -> Result<Vec<usize>, FormatError> {
    let k = key.trim();
    let k = k.strip_prefix('(').and_then(|k| k.strip_suffix(')')).unwrap_or(k).trim();
    if k.is_empty() {
        return Ok(Vec::new());
    }
    k.split(',')
        .map(|t| t.trim().parse().map_err(|_| FormatError::BadKey(key.to_string())))
        .collect()
}

pub fn format_key(t: &[usize]) -> String {
    t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Reads a cochain for a solution on `n` points. Values are integers reduced
/// into `ring`. The object may be bare or wrapped as
/// `{"degree": k, "values": {...}}`; a bare empty object is the degree-0 zero.
pub fn parse_cochain(input: &str, n: usize, ring: Ring) -> Result<Cochain, FormatError> {
    let v: Value = serde_json::from_str(input)?;
    let (degree, map) = match &v {
        Value::Object(o) if o.contains_key("values") => {
            let map = o["values"].as_object().ok_or_else(|| parse_err(0, "`values` must be an object"))?;
            let degree = o.get("degree").and_then(Value::as_u64).map(|d| d as usize);
            (degree, map)
        }
        Value::Object(o) => (None, o),
        _ => return Err(parse_err(0, "cochain must be a JSON object")),
    };
    let mut entries = Vec::new();
    for (key, val) in map {
        let t = parse_key(key)?;
        if let Some(&x) = t.iter().find(|&&x| x >= n) {
            return Err(parse_err(0, format!("key `{key}` mentions {x}, outside 0..{n}")));
        }
        let value = val
            .as_i64()
            .ok_or_else(|| parse_err(0, format!("value of `{key}` is not an integer")))?;
        entries.push((t, value));
    }
    let degree = match (degree, entries.first()) {
        (Some(d), _) => d,
        (None, Some((t, _))) => t.len(),
        (None, None) => 0,
    };
    let mut c = Cochain::zero(ring, degree);
    for (t, value) in entries {
        if t.len() != degree {
            return Err(FormatError::BadKey(format_key(&t)));
        }
        c.set(t, ring.from_i64(value));
    }
    Ok(c)
}

/// Every tuple of the cochain's degree is written, zeros included.
pub fn cochain_to_json(c: &Cochain, n: usize) -> Value {
    let mut map = serde_json::Map::new();
    for t in tuples(n, c.degree()) {
        map.insert(format_key(&t), scalar_to_json(&c.get(&t)));
    }
    Value::Object(map)
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s.to_bigint().and_then(|b| i64::try_from(b).ok()) {
        Some(i) => Value::from(i),
        None => Value::from(s.to_string()),
    }
}

pub fn cochain_table(c: &Cochain, n: usize) -> BTreeMap<String, String> {
    tuples(n, c.degree()).iter().map(|t| (format_key(t), c.get(t).to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let s = Solution::builtin("dihedral_3").unwrap();
        let back = parse_solution(&solution_to_text(&s), true).unwrap();
        assert_eq!(back.tables(), s.tables());
        let back = parse_solution(&solution_to_json(&s), true).unwrap();
        assert_eq!(back.tables(), s.tables());
    }

    #[test]
    fn rack_header() {
        let s = parse_solution("rack\n0 2 1\n2 1 0\n1 0 2\n", true).unwrap();
        assert_eq!(s.tables(), Solution::builtin("dihedral_3").unwrap().tables());
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(parse_solution("2\n0 1\n0 1\n\n0 0\n", true), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_solution("x\n", true), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_solution("2\n0 0\n0 0\n\n0 0\n0 0\n", true), Err(FormatError::Solution(_))));
    }

    #[test]
    fn cochain_keys() {
        assert_eq!(parse_key("1,0,2").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_key("(1, 0)").unwrap(), vec![1, 0]);
        assert_eq!(parse_key("").unwrap(), Vec::<usize>::new());
        assert!(parse_key("1,a").is_err());
        let r = Ring::PrimeField(3);
        let c = parse_cochain(r#"{"0,1": 4, "1,1": -1}"#, 2, r).unwrap();
        assert_eq!(c.degree(), 2);
        assert_eq!(c.get(&[0, 1]), r.one());
        assert_eq!(c.get(&[1, 1]), r.from_i64(2));
        let back = parse_cochain(&cochain_to_json(&c, 2).to_string(), 2, r).unwrap();
        assert_eq!(back, c);
    }
}
