//! Text grammar for ordinals and cardinals.
//!
//! ```text
//! ord  := '0' | term ('+' term)*
//! term := nat | 'w' ('^' atom)? ('*' nat)?
//! atom := nat | 'w' ('^' atom)? | '(' ord ')'
//! card := 'fin:' nat | 'aleph(' ord ')'
//! ```
//!
//! Sums need not be in normal form; they are evaluated with ordinal addition.

use std::str::FromStr;

use super::{Cardinal, Ordinal};
use crate::error::Error;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Literal { input: self.src.to_string(), column: self.pos + 1, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn nat(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.err("natural number out of range")
        })
    }

    fn ord(&mut self) -> Result<Ordinal, Error> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, Error> {
        self.skip_ws();
        if self.eat(b'w') {
            let exp = if self.eat(b'^') { self.atom()? } else { Ordinal::one() };
            let k = if self.eat(b'*') {
                let k = self.nat()?;
                if k == 0 {
                    return Err(self.err("coefficient must be positive"));
                }
                k
            } else {
                1
            };
            Ok(Ordinal::monomial(exp, k))
        } else {
            Ok(Ordinal::finite(self.nat()?))
        }
    }

    fn atom(&mut self) -> Result<Ordinal, Error> {
        self.skip_ws();
        if self.eat(b'(') {
            let o = self.ord()?;
            self.expect(b')')?;
            Ok(o)
        } else if self.eat(b'w') {
            let exp = if self.eat(b'^') { self.atom()? } else { Ordinal::one() };
            Ok(Ordinal::omega_pow(exp))
        } else {
            Ok(Ordinal::finite(self.nat()?))
        }
    }

    fn card(&mut self) -> Result<Cardinal, Error> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with("fin:") {
            self.pos += 4;
            Ok(Cardinal::Finite(self.nat()?))
        } else if rest.starts_with("aleph") {
            self.pos += 5;
            self.expect(b'(')?;
            let o = self.ord()?;
            self.expect(b')')?;
            Ok(Cardinal::Aleph(o))
        } else {
            Err(self.err("expected 'fin:<n>' or 'aleph(<ord>)'"))
        }
    }

    fn finish(&mut self) -> Result<(), Error> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

pub fn parse_ordinal(s: &str) -> Result<Ordinal, Error> {
    let mut p = Parser::new(s);
    let o = p.ord()?;
    p.finish()?;
    Ok(o)
}

pub fn parse_cardinal(s: &str) -> Result<Cardinal, Error> {
    let mut p = Parser::new(s);
    let c = p.card()?;
    p.finish()?;
    Ok(c)
}

impl FromStr for Ordinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_ordinal(s)
    }
}

impl FromStr for Cardinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_cardinal(s)
    }
}

impl serde::Serialize for Cardinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Cardinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_and_explicit_forms() {
        assert_eq!(parse_ordinal("w").unwrap(), Ordinal::omega());
        assert_eq!(parse_ordinal("w^1*1").unwrap(), Ordinal::omega());
        assert_eq!(parse_ordinal("w^0*3").unwrap(), Ordinal::finite(3));
        assert_eq!(parse_ordinal("1 + w").unwrap(), Ordinal::omega());
        assert_eq!(parse_ordinal("w^(w + 1)*2 + w + 4").unwrap().to_string(), "w^(w + 1)*2 + w + 4");
        assert_eq!(parse_ordinal("w^w^2").unwrap(), Ordinal::omega_pow(Ordinal::omega_pow(Ordinal::finite(2))));
    }

    #[test]
    fn parses_cardinals() {
        assert_eq!(parse_cardinal("fin:12").unwrap(), Cardinal::fin(12));
        assert_eq!(parse_cardinal("aleph(0)").unwrap(), Cardinal::ALEPH_0);
        assert_eq!(parse_cardinal(" aleph( w + 3 ) ").unwrap(), Cardinal::aleph(Ordinal::omega().add(&Ordinal::finite(3))));
    }

    #[test]
    fn reports_column() {
        match parse_cardinal("aleph(w+)") {
            Err(Error::Literal { column, .. }) => assert_eq!(column, 9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_cardinal("fin:").is_err());
        assert!(parse_cardinal("fin:3x").is_err());
        assert!(parse_ordinal("w*0").is_err());
    }
}
