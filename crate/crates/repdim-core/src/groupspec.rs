//! The group-spec grammar shared by the library and the CLI, e.g.
//! `cyclic(6)`, `extraspecial(3,27,exp3)`, `product(alternating(4),dihedral(10))`,
//! `perm(3:"(1,2)","(1,2,3)")`. Parsing canonicalizes: `Display` of the
//! parsed value is the canonical spec string used for caching and JSON.

use std::fmt;

use thiserror::Error;

use crate::perm::{parse_cycles, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad group spec: {0}")]
pub struct SpecParseError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraspecialKind {
    /// Central product of dihedral-of-order-8 factors (p = 2).
    Plus,
    /// One quaternion factor (p = 2).
    Minus,
    /// Exponent p (odd p).
    ExponentP,
    /// Exponent p² (odd p).
    ExponentPSquared,
}

impl ExtraspecialKind {
    pub fn token(&self, p: u64) -> String {
        match self {
            ExtraspecialKind::Plus => "plus".into(),
            ExtraspecialKind::Minus => "minus".into(),
            ExtraspecialKind::ExponentP => format!("exp{p}"),
            ExtraspecialKind::ExponentPSquared => format!("exp{}", p * p),
        }
    }
}

/// Parsed family descriptor. Orders are group ORDERS where the family is
/// parameterized by one (dihedral, dicyclic, extraspecial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Abelian(Vec<u64>),
    Dihedral(u64),
    Dicyclic(u64),
    Symmetric(u32),
    Alternating(u32),
    Extraspecial { p: u64, order: u64, kind: ExtraspecialKind },
    FrobeniusAffine { q: u64, d: u64 },
    Frobenius72,
    GeneralLinear2(u64),
    SpecialLinear2(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm { degree: usize, generators: Vec<Permutation> },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Abelian(ns) => {
                write!(f, "abelian(")?;
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, ")")
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupSpec::Alternating(n) => write!(f, "alternating({n})"),
            GroupSpec::Extraspecial { p, order, kind } => {
                write!(f, "extraspecial({p},{order},{})", kind.token(*p))
            }
            GroupSpec::FrobeniusAffine { q, d } => write!(f, "frobenius_affine({q},{d})"),
            GroupSpec::Frobenius72 => write!(f, "frobenius72()"),
            GroupSpec::GeneralLinear2(q) => write!(f, "gl(2,{q})"),
            GroupSpec::SpecialLinear2(q) => write!(f, "sl(2,{q})"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::Perm { degree, generators } => {
                write!(f, "perm({degree}:")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "\"{}\"", g.cycle_string())?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = SpecParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser { text: s.as_bytes(), pos: 0 };
        let spec = parser.parse_spec()?;
        parser.skip_ws();
        if parser.pos != parser.text.len() {
            return Err(SpecParseError(format!(
                "trailing input at byte {}",
                parser.pos
            )));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), SpecParseError> {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == byte {
            self.pos += 1;
            Ok(())
        } else {
            Err(SpecParseError(format!(
                "expected {:?} at byte {}",
                byte as char, self.pos
            )))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String, SpecParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_lowercase()
                || self.text[self.pos].is_ascii_digit()
                || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(SpecParseError(format!("expected a name at byte {start}")));
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<u64, SpecParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(SpecParseError(format!("expected a number at byte {start}")));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| SpecParseError(format!("number out of range at byte {start}")))
    }

    fn number_list(&mut self) -> Result<Vec<u64>, SpecParseError> {
        let mut out = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn quoted(&mut self) -> Result<String, SpecParseError> {
        self.expect(b'"')?;
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos] != b'"' {
            self.pos += 1;
        }
        if self.pos == self.text.len() {
            return Err(SpecParseError("unterminated string".into()));
        }
        let s = String::from_utf8_lossy(&self.text[start..self.pos]).into_owned();
        self.pos += 1;
        Ok(s)
    }

    fn parse_spec(&mut self) -> Result<GroupSpec, SpecParseError> {
        let name = self.ident()?;
        self.expect(b'(')?;
        let spec = match name.as_str() {
            "cyclic" => GroupSpec::Cyclic(self.number()?),
            "abelian" => GroupSpec::Abelian(self.number_list()?),
            "dihedral" => GroupSpec::Dihedral(self.number()?),
            "dicyclic" => GroupSpec::Dicyclic(self.number()?),
            "quaternion" => {
                let n = self.number()?;
                if n != 8 {
                    return Err(SpecParseError(format!(
                        "quaternion({n}) is not supported; use dicyclic(4m)"
                    )));
                }
                GroupSpec::Dicyclic(8)
            }
            "symmetric" => GroupSpec::Symmetric(self.small_number()?),
            "alternating" => GroupSpec::Alternating(self.small_number()?),
            "extraspecial" => {
                let p = self.number()?;
                self.expect(b',')?;
                let order = self.number()?;
                self.expect(b',')?;
                let token = self.ident()?;
                let kind = match token.as_str() {
                    "plus" => ExtraspecialKind::Plus,
                    "minus" => ExtraspecialKind::Minus,
                    t if t.strip_prefix("exp").and_then(|e| e.parse::<u64>().ok()) == Some(p) => {
                        ExtraspecialKind::ExponentP
                    }
                    t if t.strip_prefix("exp").and_then(|e| e.parse::<u64>().ok())
                        == Some(p.saturating_mul(p)) =>
                    {
                        ExtraspecialKind::ExponentPSquared
                    }
                    t => {
                        return Err(SpecParseError(format!(
                            "unknown extraspecial type {t:?} (expected plus, minus, exp{p} or exp{})",
                            p.saturating_mul(p)
                        )))
                    }
                };
                GroupSpec::Extraspecial { p, order, kind }
            }
            "frobenius_affine" => {
                let q = self.number()?;
                self.expect(b',')?;
                let d = self.number()?;
                GroupSpec::FrobeniusAffine { q, d }
            }
            "frobenius72" => GroupSpec::Frobenius72,
            "gl" | "sl" => {
                let two = self.number()?;
                if two != 2 {
                    return Err(SpecParseError(format!(
                        "{name}({two},..) is not supported; only degree 2"
                    )));
                }
                self.expect(b',')?;
                let q = self.number()?;
                if name == "gl" {
                    GroupSpec::GeneralLinear2(q)
                } else {
                    GroupSpec::SpecialLinear2(q)
                }
            }
            "product" => {
                let a = self.parse_spec()?;
                self.expect(b',')?;
                let b = self.parse_spec()?;
                GroupSpec::Product(Box::new(a), Box::new(b))
            }
            "perm" => {
                let degree = self.number()? as usize;
                let mut generators = Vec::new();
                if self.peek() == Some(b':') {
                    self.pos += 1;
                    if self.peek() == Some(b'"') {
                        loop {
                            let text = self.quoted()?;
                            let perm = parse_cycles(&text, degree)
                                .map_err(|e| SpecParseError(e.to_string()))?;
                            generators.push(perm);
                            if self.peek() == Some(b',') {
                                self.pos += 1;
                            } else {
                                break;
                            }
                        }
                    }
                }
                GroupSpec::Perm { degree, generators }
            }
            other => return Err(SpecParseError(format!("unknown family {other:?}"))),
        };
        self.expect(b')')?;
        Ok(spec)
    }

    fn small_number(&mut self) -> Result<u32, SpecParseError> {
        let n = self.number()?;
        u32::try_from(n).map_err(|_| SpecParseError(format!("parameter {n} out of range")))
    }
}
