//! Text and JSON table formats.
//!
//! Text layout (`#` starts a comment, blank lines are ignored):
//!
//! ```text
//! n 3
//! 0 0 0
//! 0 1 2
//! 0 2 1
//! star: 0 1 2
//! zero: 0
//! add:          # optional ring extension
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! neg: 0 2 1
//! ```

use serde::{Deserialize, Serialize};

use super::{validate, RawTables, StarSemigroup};
use crate::error::{Error, Result};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        column: s + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    lines
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, expected: &str) -> Result<&Line<'a>> {
        let line = self
            .lines
            .get(self.pos)
            .ok_or_else(|| err(self.last_line + 1, 1, format!("unexpected end of input, expected {expected}")))?;
        self.pos += 1;
        Ok(line)
    }

    fn peek_keyword(&self) -> Option<&str> {
        self.lines.get(self.pos).map(|l| l.tokens[0].text)
    }
}

fn numbers(line: &Line<'_>, skip: usize, expected: usize, what: &str) -> Result<Vec<usize>> {
    let toks = &line.tokens[skip..];
    if toks.len() != expected {
        let column = toks.get(expected).map_or_else(
            || line.tokens.last().map_or(1, |t| t.column + t.text.len()),
            |t| t.column,
        );
        return Err(err(
            line.number,
            column,
            format!("{what} has {} entries, expected {expected}", toks.len()),
        ));
    }
    toks.iter()
        .map(|t| {
            t.text
                .parse::<usize>()
                .map_err(|_| err(line.number, t.column, format!("`{}` is not an index", t.text)))
        })
        .collect()
}

fn keyword<'b>(line: &'b Line<'_>, kw: &str) -> Result<()> {
    if line.tokens[0].text == kw {
        Ok(())
    } else {
        Err(err(
            line.number,
            line.tokens[0].column,
            format!("expected `{kw}`, found `{}`", line.tokens[0].text),
        ))
    }
}

fn table(cur: &mut Cursor<'_>, n: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let line = cur.next(&format!("{what} row {r}"))?;
        rows.push(numbers(line, 0, n, &format!("{what} row {r}"))?);
    }
    Ok(rows)
}

/// Parses the text format into unvalidated tables.
pub fn parse_raw(text: &str) -> Result<RawTables> {
    let lines = tokenize(text);
    let last_line = lines.last().map_or(0, |l| l.number);
    let mut cur = Cursor {
        lines,
        pos: 0,
        last_line,
    };
    let header = cur.next("`n <count>`")?;
    keyword(header, "n")?;
    let n = numbers(header, 1, 1, "header")?[0];
    if n == 0 {
        return Err(err(header.number, header.tokens[1].column, "carrier must be nonempty"));
    }
    let mul = table(&mut cur, n, "mul")?;
    let star_line = cur.next("`star:`")?;
    keyword(star_line, "star:")?;
    let star = numbers(star_line, 1, n, "star")?;
    let zero_line = cur.next("`zero:`")?;
    keyword(zero_line, "zero:")?;
    let zero = numbers(zero_line, 1, 1, "zero")?[0];
    let (mut add, mut neg) = (None, None);
    if cur.peek_keyword() == Some("add:") {
        let add_line = cur.next("`add:`")?;
        if add_line.tokens.len() != 1 {
            return Err(err(add_line.number, add_line.tokens[1].column, "`add:` must stand alone"));
        }
        add = Some(table(&mut cur, n, "add")?);
        let neg_line = cur.next("`neg:`")?;
        keyword(neg_line, "neg:")?;
        neg = Some(numbers(neg_line, 1, n, "neg")?);
    }
    if let Some(extra) = cur.lines.get(cur.pos) {
        return Err(err(extra.number, extra.tokens[0].column, "trailing content"));
    }
    Ok(RawTables {
        name: String::new(),
        mul,
        star,
        zero,
        add,
        neg,
    })
}

/// Parses and validates.
pub fn parse(text: &str) -> Result<StarSemigroup> {
    validate(parse_raw(text)?)
}

/// Relabels so the zero sits at index 0 (swapping it with the old element 0).
pub fn canonicalize(s: &StarSemigroup) -> StarSemigroup {
    let z = s.zero();
    if z == 0 {
        return s.clone();
    }
    let perm: Vec<usize> = (0..s.len())
        .map(|x| match x {
            0 => z,
            x if x == z => 0,
            x => x,
        })
        .collect();
    s.relabel(&perm)
}

fn write_row(out: &mut String, row: &[usize]) {
    let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
    out.push_str(&parts.join(" "));
    out.push('\n');
}

/// Writes the canonical text form.
pub fn serialize(s: &StarSemigroup) -> String {
    let c = canonicalize(s);
    let n = c.len();
    let mut out = format!("n {n}\n");
    for row in c.mul_table().chunks(n) {
        write_row(&mut out, row);
    }
    out.push_str("star: ");
    write_row(&mut out, c.star_table());
    out.push_str(&format!("zero: {}\n", c.zero()));
    if let Some(ring) = c.ring() {
        out.push_str("add:\n");
        for row in ring.add_table().chunks(n) {
            write_row(&mut out, row);
        }
        out.push_str("neg: ");
        write_row(&mut out, ring.neg_table());
    }
    out
}

/// JSON mirror of the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub name: String,
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub star: Vec<usize>,
    pub zero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg: Option<Vec<usize>>,
}

impl SemigroupJson {
    pub fn from_semigroup(s: &StarSemigroup) -> Self {
        let raw = s.to_raw();
        SemigroupJson {
            name: raw.name,
            n: s.len(),
            mul: raw.mul,
            star: raw.star,
            zero: raw.zero,
            add: raw.add,
            neg: raw.neg,
        }
    }

    pub fn into_raw(self) -> Result<RawTables> {
        if self.mul.len() != self.n {
            return Err(Error::Shape {
                table: "mul",
                detail: format!("{} rows but n = {}", self.mul.len(), self.n),
            });
        }
        Ok(RawTables {
            name: self.name,
            mul: self.mul,
            star: self.star,
            zero: self.zero,
            add: self.add,
            neg: self.neg,
        })
    }

    pub fn to_semigroup(self) -> Result<StarSemigroup> {
        validate(self.into_raw()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{gen_zn_mult, gen_zn_ring};
    use proptest::prelude::*;

    const Z3: &str = "# Z_3 under multiplication\nn 3\n0 0 0\n0 1 2\n0 2 1\nstar: 0 1 2\nzero: 0\n";

    #[test]
    fn parses_with_comments() {
        let s = parse(Z3).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.mul(2, 2), 1);
        assert_eq!(serialize(&s), Z3.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n");
    }

    #[test]
    fn z6_round_trip() {
        let s = gen_zn_mult(6).unwrap();
        let text = serialize(&s);
        let back = parse(&text).unwrap();
        assert_eq!(back.len(), 6);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn ragged_row_is_parse_error() {
        let bad = "n 3\n0 0 0\n0 1\n0 2 1\nstar: 0 1 2\nzero: 0\n";
        match parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        let bad = "n 2\n0 0\n0 x\nstar: 0 1\nzero: 0\n";
        assert!(matches!(parse(bad), Err(Error::Parse { line: 3, column: 3, .. })));
        let bad = "n 2\n0 0\n0 1\nstar 0 1\nzero: 0\n";
        assert!(matches!(parse(bad), Err(Error::Parse { line: 4, column: 1, .. })));
        let bad = "n 2\n0 0\n0 1\nstar: 0 1\n";
        assert!(matches!(parse(bad), Err(Error::Parse { line: 5, .. })));
        let bad = "n 2\n0 0\n0 1\nstar: 0 1\nzero: 0\nextra\n";
        assert!(matches!(parse(bad), Err(Error::Parse { line: 6, .. })));
    }

    #[test]
    fn axiom_failure_surfaces_through_parse() {
        let bad = "n 2\n0 0\n0 1\nstar: 1 0\nzero: 0\n";
        assert!(matches!(parse(bad), Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn zero_relabelled_to_front() {
        // Z_3 with the zero stored at index 2
        let text = "n 3\n0 1 2\n1 0 2\n2 2 2\nstar: 0 1 2\nzero: 2\n";
        let s = parse(text).unwrap();
        let c = canonicalize(&s);
        assert_eq!(c.zero(), 0);
        assert!(crate::semigroup::validate(c.to_raw()).is_ok());
        let canonical = serialize(&s);
        assert!(canonical.contains("zero: 0"));
        assert_eq!(serialize(&parse(&canonical).unwrap()), canonical);
    }

    #[test]
    fn ring_block_round_trip() {
        let s = gen_zn_ring(4).unwrap();
        let text = serialize(&s);
        assert!(text.contains("add:\n"));
        let back = parse(&text).unwrap();
        assert!(back.ring().is_some());
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn json_mirror() {
        let s = gen_zn_ring(3).unwrap();
        let json = serde_json::to_string(&SemigroupJson::from_semigroup(&s)).unwrap();
        let back: SemigroupJson = serde_json::from_str(&json).unwrap();
        let t = back.to_semigroup().unwrap();
        assert_eq!(t.name(), "znring:3");
        assert_eq!(serialize(&t), serialize(&s));
    }

    proptest! {
        #[test]
        fn serialize_is_idempotent_under_relabelling(n in 1usize..12, z_shift in 0usize..12) {
            // Move the zero of Z_n to an arbitrary slot, then canonicalize.
            let s = gen_zn_mult(n).unwrap();
            let z = z_shift % n;
            let perm: Vec<usize> = (0..n).map(|x| if x == 0 { z } else if x == z { 0 } else { x }).collect();
            let moved = s.relabel(&perm);
            let text = serialize(&moved);
            prop_assert_eq!(serialize(&parse(&text).unwrap()), text.clone());
            prop_assert_eq!(text, serialize(&s));
        }
    }
}
