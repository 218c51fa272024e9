//! Plain-text group descriptions: a carrier header plus one generator per
//! stanza. Two carriers exist:
//!
//! ```text
//! # comments run to end of line
//! kind signed-perm n=4
//! signs 0110 perm (1 2)(3 4)
//! signs 0000 perm (2 3)
//! ```
//!
//! `signs` lists the axis flips (axis 1 first); `perm` is disjoint cycle
//! notation, 1-based, `()` for the identity permutation.
//!
//! ```text
//! kind matrix n=2 denom=2
//! mat
//! 0 2
//! 2 0
//! ```
//!
//! Matrix entries are twice the real matrix (`denom=2` is part of the format
//! and fixed), row-major, one row per line.

use thiserror::Error;

use super::element::{GroupElement, Mat, SignedPerm, MAX_SIGNED_RANK};
use super::group::FiniteGroup;

#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("group file is empty")]
    Empty,
    #[error("only signed-permutation and matrix carriers can be written")]
    UnsupportedCarrier,
}

/// Parsed description: a carrier identity plus generators. Closure is the
/// caller's job (it needs a bound).
#[derive(Debug)]
pub struct GroupFile {
    pub identity: GroupElement,
    pub generators: Vec<GroupElement>,
}

fn syntax(line: usize, msg: impl Into<String>) -> GroupFileError {
    GroupFileError::Syntax { line, msg: msg.into() }
}

pub fn parse(text: &str) -> Result<GroupFile, GroupFileError> {
    // (line number, content) with comments and blanks stripped
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(first_no, first)) = lines.first() else {
        return Err(GroupFileError::Empty);
    };
    let mut words = first.split_whitespace();
    if words.next() != Some("kind") {
        return Err(syntax(first_no, "expected `kind signed-perm n=<rank>` or `kind matrix n=<dim> denom=2`"));
    }
    match words.next() {
        Some("signed-perm") => {
            let n = parse_kv(words.next(), "n", first_no)?;
            if words.next().is_some() {
                return Err(syntax(first_no, "trailing tokens after header"));
            }
            if n < 1 || n > MAX_SIGNED_RANK {
                return Err(syntax(first_no, format!("rank must be 1..={MAX_SIGNED_RANK}")));
            }
            let generators = lines[1..]
                .iter()
                .map(|&(no, l)| parse_signed_line(l, n, no))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GroupFile {
                identity: GroupElement::Signed(SignedPerm::identity(n)),
                generators,
            })
        }
        Some("matrix") => {
            let n = parse_kv(words.next(), "n", first_no)?;
            match words.next() {
                Some("denom=2") => {}
                _ => return Err(syntax(first_no, "matrix header requires `denom=2`")),
            }
            if words.next().is_some() {
                return Err(syntax(first_no, "trailing tokens after header"));
            }
            if n < 1 || n > 12 {
                return Err(syntax(first_no, "dimension must be 1..=12"));
            }
            let generators = parse_matrices(&lines[1..], n)?;
            Ok(GroupFile { identity: GroupElement::Mat(Mat::identity(n)), generators })
        }
        _ => Err(syntax(first_no, "unknown carrier kind")),
    }
}

fn parse_kv(tok: Option<&str>, key: &str, line: usize) -> Result<usize, GroupFileError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing `{key}=<value>`")))?;
    let rest = tok
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected `{key}=<value>`, got `{tok}`")))?;
    rest.parse().map_err(|_| syntax(line, format!("`{key}` value `{rest}` is not a number")))
}

fn parse_signed_line(l: &str, n: usize, no: usize) -> Result<GroupElement, GroupFileError> {
    let mut words = l.split_whitespace();
    if words.next() != Some("signs") {
        return Err(syntax(no, "generator line must start with `signs`"));
    }
    let bits = words.next().ok_or_else(|| syntax(no, "missing sign bitstring"))?;
    if bits.len() != n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(syntax(no, format!("sign bitstring must be {n} characters of 0/1")));
    }
    let flips: Vec<bool> = bits.bytes().map(|b| b == b'1').collect();
    if words.next() != Some("perm") {
        return Err(syntax(no, "expected `perm` after the sign bitstring"));
    }
    let cycles_text: String = words.collect::<Vec<_>>().join(" ");
    let images = parse_cycles(&cycles_text, n, no)?;
    Ok(GroupElement::Signed(SignedPerm::new(&images, &flips)))
}

fn parse_cycles(text: &str, n: usize, no: usize) -> Result<Vec<usize>, GroupFileError> {
    let mut images: Vec<usize> = (0..n).collect();
    let mut moved = vec![false; n];
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(syntax(no, "missing cycle notation (use `()` for the identity)"));
    }
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(syntax(no, "cycle must start with `(`"));
        };
        let Some(close) = stripped.find(')') else {
            return Err(syntax(no, "unclosed cycle"));
        };
        let body = &stripped[..close];
        rest = stripped[close + 1..].trim_start();
        let points: Vec<usize> = body
            .split_whitespace()
            .map(|w| {
                let v: usize = w
                    .parse()
                    .map_err(|_| syntax(no, format!("`{w}` is not an axis number")))?;
                if v < 1 || v > n {
                    return Err(syntax(no, format!("axis {v} out of range 1..={n}")));
                }
                Ok(v - 1)
            })
            .collect::<Result<_, _>>()?;
        if points.is_empty() {
            continue; // `()`
        }
        if points.len() == 1 {
            return Err(syntax(no, "a cycle needs at least two axes"));
        }
        for &p in &points {
            if moved[p] {
                return Err(syntax(no, format!("axis {} appears twice", p + 1)));
            }
            moved[p] = true;
        }
        for w in points.windows(2) {
            images[w[0]] = w[1];
        }
        images[points[points.len() - 1]] = points[0];
    }
    Ok(images)
}

fn parse_matrices(lines: &[(usize, &str)], n: usize) -> Result<Vec<GroupElement>, GroupFileError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (no, l) = lines[i];
        if l != "mat" {
            return Err(syntax(no, "expected `mat` to open a generator"));
        }
        i += 1;
        let mut entries: Vec<i32> = Vec::with_capacity(n * n);
        while entries.len() < n * n {
            let Some(&(row_no, row)) = lines.get(i) else {
                return Err(syntax(no, format!("matrix needs {n}x{n} entries")));
            };
            i += 1;
            for w in row.split_whitespace() {
                let v: i32 = w
                    .parse()
                    .map_err(|_| syntax(row_no, format!("`{w}` is not an integer entry")))?;
                entries.push(v);
            }
            if entries.len() > n * n {
                return Err(syntax(row_no, format!("more than {n}x{n} entries")));
            }
        }
        out.push(GroupElement::Mat(Mat::from_doubled(n, &entries)));
    }
    Ok(out)
}

/// Render a group's generators in the file format. Plain-permutation carriers
/// (quotient groups) have no serialized form.
pub fn serialize(g: &FiniteGroup) -> Result<String, GroupFileError> {
    match g.identity() {
        GroupElement::Signed(id) => {
            let n = id.rank();
            let mut out = format!("kind signed-perm n={n}\n");
            for gen in g.generators() {
                let GroupElement::Signed(sp) = gen else {
                    return Err(GroupFileError::UnsupportedCarrier);
                };
                let bits: String =
                    (0..n).map(|i| if sp.flipped(i) { '1' } else { '0' }).collect();
                out.push_str(&format!("signs {bits} perm {}\n", cycle_notation(sp, n)));
            }
            Ok(out)
        }
        GroupElement::Mat(id) => {
            let n = id.dim();
            let mut out = format!("kind matrix n={n} denom=2\n");
            for gen in g.generators() {
                let GroupElement::Mat(m) = gen else {
                    return Err(GroupFileError::UnsupportedCarrier);
                };
                out.push_str("mat\n");
                for r in 0..n {
                    let row: Vec<String> =
                        (0..n).map(|c| m.entry(r, c).to_string()).collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
            }
            Ok(out)
        }
        GroupElement::Perm(_) => Err(GroupFileError::UnsupportedCarrier),
    }
}

fn cycle_notation(sp: &SignedPerm, n: usize) -> String {
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || sp.image(start) == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut i = sp.image(start);
        while i != start {
            seen[i] = true;
            cyc.push(i);
            i = sp.image(i);
        }
        out.push('(');
        out.push_str(
            &cyc.iter().map(|&p| (p + 1).to_string()).collect::<Vec<_>>().join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_round_trip() {
        let text = "\
# W(B_2)
kind signed-perm n=2
signs 00 perm (1 2)
signs 01 perm ()
";
        let parsed = parse(text).unwrap();
        assert_eq!(parsed.generators.len(), 2);
        let g = FiniteGroup::generate(parsed.identity, parsed.generators, 100).unwrap();
        assert_eq!(g.order(), 8);
        let emitted = serialize(&g).unwrap();
        let reparsed = parse(&emitted).unwrap();
        let g2 = FiniteGroup::generate(reparsed.identity, reparsed.generators, 100).unwrap();
        assert!(g.same_element_set(&g2));
    }

    #[test]
    fn matrix_round_trip() {
        let text = "\
kind matrix n=2 denom=2
mat
0 2
2 0
mat
2 0
0 -2
";
        let parsed = parse(text).unwrap();
        let g = FiniteGroup::generate(parsed.identity, parsed.generators, 100).unwrap();
        assert_eq!(g.order(), 8);
        let emitted = serialize(&g).unwrap();
        let g2 = {
            let p = parse(&emitted).unwrap();
            FiniteGroup::generate(p.identity, p.generators, 100).unwrap()
        };
        assert!(g.same_element_set(&g2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "kind signed-perm n=2\nsigns 2 perm (1 2)\n";
        match parse(bad) {
            Err(GroupFileError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse(""), Err(GroupFileError::Empty)));
        let bad_axis = "kind signed-perm n=2\nsigns 00 perm (1 3)\n";
        assert!(matches!(parse(bad_axis), Err(GroupFileError::Syntax { line: 2, .. })));
    }
}
