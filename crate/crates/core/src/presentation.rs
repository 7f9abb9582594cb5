//! Finite presentations and their line-oriented text format.
//!
//! ```text
//! # comments run to end of line
//! group d=6            # optional; makes the file a curve group
//! gens a b
//! lk a=3 b=2           # required exactly when `group` is present
//! rel a^2
//! rel b^3
//! ```

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{cyclic_reduce, Word};
use crate::zariski::CurveGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates generator names and relator indices, cyclically reduces
    /// every relator and drops the empty ones.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &names {
            if !is_identifier(n) {
                return Err(Error::InvalidArgument(format!(
                    "`{n}` is not a valid generator name"
                )));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateGenerator {
                    line: 0,
                    name: n.clone(),
                });
            }
        }
        let count = names.len();
        for r in &relators {
            if let Some(g) = r.max_gen().filter(|&g| g >= count) {
                return Err(Error::MalformedWord { gen: g, count });
            }
        }
        Ok(Presentation::from_parts(names, relators))
    }

    /// Convenience constructor from string names.
    pub fn from_names(names: &[&str], relators: Vec<Word>) -> Result<Self> {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), relators)
    }

    pub(crate) fn from_parts(names: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators
            .iter()
            .map(cyclic_reduce)
            .filter(|r| !r.is_empty())
            .collect();
        Presentation { names, relators }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_gen() {
            Some(g) if g >= self.names.len() => Err(Error::MalformedWord {
                gen: g,
                count: self.names.len(),
            }),
            _ => Ok(()),
        }
    }

    /// The presentation with `extra` appended to the relators.
    pub fn with_relator(&self, extra: Word) -> Result<Self> {
        self.check_word(&extra)?;
        let mut rels = self.relators.clone();
        rels.push(extra);
        Ok(Presentation::from_parts(self.names.clone(), rels))
    }

    /// Equality of generator lists and of relator sets up to rotation,
    /// inversion and multiplicity.
    pub fn same_relator_set(&self, other: &Presentation) -> bool {
        let keys = |p: &Presentation| {
            let mut k: Vec<Word> = p.relators.iter().map(Word::relator_key).collect();
            k.sort();
            k.dedup();
            k
        };
        self.names == other.names && keys(self) == keys(other)
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> crate::word::WordDisplay<'a> {
        w.display_with(&self.names)
    }

    pub(crate) fn write_body(
        &self,
        f: &mut fmt::Formatter<'_>,
        linking: Option<&[u64]>,
    ) -> fmt::Result {
        write!(f, "gens")?;
        for n in &self.names {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
        if let Some(lk) = linking {
            write!(f, "lk")?;
            for (n, v) in self.names.iter().zip(lk) {
                write!(f, " {n}={v}")?;
            }
            writeln!(f)?;
        }
        for r in &self.relators {
            writeln!(f, "rel {}", r.display_with(&self.names))?;
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_body(f, None)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Result of parsing a DSL document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Presentation(Presentation),
    Curve(CurveGroup),
}

impl Parsed {
    pub fn presentation(&self) -> &Presentation {
        match self {
            Parsed::Presentation(p) => p,
            Parsed::Curve(cg) => cg.presentation(),
        }
    }

    pub fn into_curve(self) -> Option<CurveGroup> {
        match self {
            Parsed::Curve(cg) => Some(cg),
            Parsed::Presentation(_) => None,
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Presentation(p) => p.fmt(f),
            Parsed::Curve(cg) => cg.fmt(f),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_int(tok: &str, line: usize, column: usize) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| syntax(line, column, format!("expected an integer, found `{tok}`")))
}

/// Parses the text format. A `group d=` line promotes the result to a curve
/// group, whose linking data is validated.
pub fn parse_presentation(text: &str) -> Result<Parsed> {
    let mut degree: Option<u64> = None;
    let mut names: Vec<String> = Vec::new();
    let mut linking: Vec<Option<i64>> = Vec::new();
    let mut lk_line: Option<usize> = None;
    let mut relators: Vec<Word> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else { continue };
        let args = &toks[1..];
        match head.text {
            "group" => {
                if degree.is_some() {
                    return Err(syntax(line_no, head.column, "repeated `group` line"));
                }
                let [arg] = args else {
                    return Err(syntax(line_no, head.column, "expected `group d=<int>`"));
                };
                let Some(v) = arg.text.strip_prefix("d=") else {
                    return Err(syntax(line_no, arg.column, "expected `d=<int>`"));
                };
                let d = parse_int(v, line_no, arg.column + 2)?;
                if d < 1 {
                    return Err(syntax(line_no, arg.column + 2, "degree must be positive"));
                }
                degree = Some(d as u64);
            }
            "gens" => {
                for t in args {
                    if !is_identifier(t.text) {
                        return Err(syntax(
                            line_no,
                            t.column,
                            format!("invalid generator name `{}`", t.text),
                        ));
                    }
                    if names.iter().any(|n| n == t.text) {
                        return Err(Error::DuplicateGenerator {
                            line: line_no,
                            name: t.text.to_string(),
                        });
                    }
                    names.push(t.text.to_string());
                    linking.push(None);
                }
            }
            "lk" => {
                lk_line.get_or_insert(line_no);
                for t in args {
                    let Some((name, value)) = t.text.split_once('=') else {
                        return Err(syntax(line_no, t.column, "expected `<name>=<int>`"));
                    };
                    let gen = names.iter().position(|n| n == name).ok_or_else(|| {
                        Error::UnknownGenerator {
                            line: line_no,
                            name: name.to_string(),
                        }
                    })?;
                    let v = parse_int(value, line_no, t.column + name.len() + 1)?;
                    if linking[gen].replace(v).is_some() {
                        return Err(syntax(
                            line_no,
                            t.column,
                            format!("linking value for `{name}` given twice"),
                        ));
                    }
                }
            }
            "rel" => {
                let mut syllables = Vec::with_capacity(args.len());
                for t in args {
                    let (name, exp) = match t.text.split_once('^') {
                        Some((n, e)) => (n, parse_int(e, line_no, t.column + n.len() + 1)?),
                        None => (t.text, 1),
                    };
                    let gen = names.iter().position(|n| n == name).ok_or_else(|| {
                        Error::UnknownGenerator {
                            line: line_no,
                            name: name.to_string(),
                        }
                    })?;
                    syllables.push((gen, exp));
                }
                relators.push(Word::from_syllables(&syllables));
            }
            other => {
                return Err(syntax(
                    line_no,
                    head.column,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let p = Presentation::from_parts(names, relators);
    match degree {
        None => {
            if let Some(line) = lk_line {
                return Err(Error::Linking(format!(
                    "line {line}: `lk` given without `group d=`"
                )));
            }
            Ok(Parsed::Presentation(p))
        }
        Some(d) => {
            let mut values = Vec::with_capacity(linking.len());
            for (i, v) in linking.iter().enumerate() {
                match v {
                    Some(v) => values.push(v.rem_euclid(d as i64) as u64),
                    None => {
                        return Err(Error::Linking(format!(
                            "missing linking value for generator `{}`",
                            p.generator_names()[i]
                        )))
                    }
                }
            }
            Ok(Parsed::Curve(CurveGroup::new(p, d, values)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_presentation() {
        let p = parse_presentation("gens a b\nrel a^3 b^-2").unwrap();
        let expected =
            Presentation::from_names(&["a", "b"], vec![Word::from_syllables(&[(0, 3), (1, -2)])])
                .unwrap();
        assert_eq!(p, Parsed::Presentation(expected));
    }

    #[test]
    fn parses_curve_group() {
        let text =
            "# sextic with cusps on a conic\ngroup d=6\ngens a b\nlk a=3 b=2\nrel a^2\nrel b^3\n";
        let cg = parse_presentation(text).unwrap().into_curve().unwrap();
        assert_eq!(cg.degree(), 6);
        assert_eq!(cg.linking(), &[3, 2]);
        assert_eq!(cg.presentation().relators().len(), 2);
    }

    #[test]
    fn inconsistent_linking_is_rejected() {
        // a^2 has weight 2*2 = 4, not divisible by 6
        let text = "group d=6\ngens a b\nlk a=2 b=3\nrel a^2\nrel b^3";
        assert!(matches!(parse_presentation(text), Err(Error::Linking(_))));
    }

    #[test]
    fn relator_before_gens_is_unknown_generator() {
        assert_eq!(
            parse_presentation("rel a"),
            Err(Error::UnknownGenerator {
                line: 1,
                name: "a".into()
            })
        );
    }

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse_presentation("gens a\nrel a^x"),
            Err(Error::Syntax {
                line: 2,
                column: 7,
                message: "expected an integer, found `x`".into()
            })
        );
        assert!(matches!(
            parse_presentation("gens a a"),
            Err(Error::DuplicateGenerator { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("gens a\nfoo"),
            Err(Error::Syntax {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_presentation("group d=2\ngens a\nrel a^2"),
            Err(Error::Linking(_))
        ));
        assert!(matches!(
            parse_presentation("gens a\nlk a=1"),
            Err(Error::Linking(_))
        ));
    }

    #[test]
    fn relators_are_cyclically_reduced_and_empty_dropped() {
        let p = parse_presentation("gens a b\nrel a b a^-1\nrel a a^-1").unwrap();
        assert_eq!(p.presentation().relators(), &[Word::power_of(1, 1)]);
    }

    #[test]
    fn serialization_round_trips() {
        let text = "gens a b c\nrel a^3 c^-1\nrel b^2 c^-1\nrel c^2\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn relator_set_equality_up_to_rotation() {
        let p = parse_presentation("gens a b\nrel a b^2").unwrap();
        let q = parse_presentation("gens a b\nrel b^-2 a^-1\nrel b a b").unwrap();
        assert!(p.presentation().same_relator_set(q.presentation()));
    }
}
