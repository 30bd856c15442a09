use std::fmt;

use crate::{Error, Result};

/// A conditional mutual information `I(A;B|C)` over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

impl Term {
    /// Parses `"A1,A2;B|C1,C2"`, optionally wrapped as `"I(...)"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = match s.strip_prefix("I(") {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("term {s:?}: missing closing parenthesis")))?,
            None => s,
        };
        let (a, rest) = body
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("term {s:?}: missing ';'")))?;
        let (b, c) = match rest.split_once('|') {
            Some((b, c)) => (b, Some(c)),
            None => (rest, None),
        };
        let a = list(a, s, false)?;
        let b = list(b, s, false)?;
        let c = match c {
            Some(c) => list(c, s, true)?,
            None => Vec::new(),
        };
        for (i, x) in a.iter().chain(&b).chain(&c).enumerate() {
            if a.iter().chain(&b).chain(&c).skip(i + 1).any(|y| y == x) {
                return Err(Error::Parse(format!("term {s:?}: variable {x} appears twice")));
            }
        }
        Ok(Self { a, b, c })
    }
}

fn list(part: &str, whole: &str, allow_empty: bool) -> Result<Vec<String>> {
    let part = part.trim();
    if part.is_empty() {
        return if allow_empty {
            Ok(Vec::new())
        } else {
            Err(Error::Parse(format!("term {whole:?}: empty variable list")))
        };
    }
    part.split(',')
        .map(|v| {
            let v = v.trim();
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                Err(Error::Parse(format!("term {whole:?}: bad variable name {v:?}")))
            } else {
                Ok(v.to_string())
            }
        })
        .collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({};{}", self.a.join(","), self.b.join(","))?;
        if !self.c.is_empty() {
            write!(f, "|{}", self.c.join(","))?;
        }
        write!(f, ")")
    }
}
