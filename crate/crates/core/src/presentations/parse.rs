//! Text grammar for presentations and words.
//!
//! ```text
//! presentation := "<" [ident ("," ident)*] "|" [relation ("," relation)*] ">"
//! relation     := word ["=" word]
//! word         := term ("*" term)*
//! term         := atom ["^" integer]
//! atom         := ident | "1" | "[" word "," word "]" | "(" word ")"
//! ```
//!
//! Whitespace is insignificant. `[u,v]` expands to `u^-1 v^-1 u v`; `u = v` is the relator `u v^-1`.

use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Cursor over a whitespace-insensitive character stream.
pub(crate) struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, pos: 0, src }
    }

    pub(crate) fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.src.len())
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
                None => self.error(format!("expected `{c}`, found end of input")),
            }
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub(crate) fn ident(&mut self) -> Result<String> {
        let mut s = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return self.error(format!("expected identifier, found `{c}`")),
            None => return self.error("expected identifier, found end of input"),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(s)
    }

    pub(crate) fn integer(&mut self) -> Result<i64> {
        let start = self.offset();
        let mut s = String::new();
        if self.eat('-') {
            s.push('-');
        } else {
            self.eat('+');
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s.parse().map_err(|_| Error::Parse { pos: start, msg: "expected integer".into() })
    }
}

fn parse_word_at(cur: &mut Cursor<'_>, names: &[String]) -> Result<Word> {
    let mut w = parse_term(cur, names)?;
    while cur.eat('*') {
        w = w.mul(&parse_term(cur, names)?);
    }
    Ok(w)
}

fn parse_term(cur: &mut Cursor<'_>, names: &[String]) -> Result<Word> {
    let base = match cur.peek() {
        Some('(') => {
            cur.bump();
            let w = parse_word_at(cur, names)?;
            cur.expect(')')?;
            w
        }
        Some('[') => {
            cur.bump();
            let u = parse_word_at(cur, names)?;
            cur.expect(',')?;
            let v = parse_word_at(cur, names)?;
            cur.expect(']')?;
            Word::commutator(&u, &v)
        }
        Some('1') => {
            cur.bump();
            Word::identity()
        }
        _ => {
            let pos = cur.offset();
            let name = cur.ident()?;
            let g = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::Parse { pos, msg: format!("unknown generator `{name}`") })?;
            Word::from_letters([Letter::pos(g)])
        }
    };
    if cur.eat('^') {
        let e = cur.integer()?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

/// Parses a word over the given generator names.
pub fn parse_word(src: &str, names: &[String]) -> Result<Word> {
    let mut cur = Cursor::new(src);
    let w = parse_word_at(&mut cur, names)?;
    if !cur.at_end() {
        return cur.error("trailing input after word");
    }
    Ok(w)
}

/// Parses `<a,b | a^2, b^5, (a*b)^2>`.
pub fn parse_presentation(src: &str) -> Result<Presentation> {
    let mut cur = Cursor::new(src);
    cur.expect('<')?;
    let mut names: Vec<String> = Vec::new();
    if cur.peek() != Some('|') {
        loop {
            let pos = cur.offset();
            let name = cur.ident()?;
            if names.contains(&name) {
                return Err(Error::Parse { pos, msg: format!("duplicate generator `{name}`") });
            }
            names.push(name);
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect('|')?;
    let mut relators = Vec::new();
    if cur.peek() != Some('>') {
        loop {
            let lhs = parse_word_at(&mut cur, &names)?;
            let rel = if cur.eat('=') {
                let rhs = parse_word_at(&mut cur, &names)?;
                lhs.mul(&rhs.inverse())
            } else {
                lhs
            };
            relators.push(rel);
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect('>')?;
    if !cur.at_end() {
        return cur.error("trailing input after presentation");
    }
    Presentation::new(names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dihedral_example() {
        let p = parse_presentation("<a,b | a^2, b^5, (a*b)^2>").unwrap();
        assert_eq!(p.generators(), &["a".to_string(), "b".to_string()]);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2], Word::from_powers(&[(0, 1), (1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn commutator_expansion() {
        let p = parse_presentation("< a , b | [a,b] >").unwrap();
        let expected = Word::from_powers(&[(0, -1), (1, -1), (0, 1), (1, 1)]);
        assert_eq!(p.relators(), &[expected]);
    }

    #[test]
    fn equations_and_free_groups() {
        let p = parse_presentation("<a,b | b = a^2, b^3>").unwrap();
        assert_eq!(p.relators()[0], Word::from_powers(&[(1, 1), (0, -2)]));
        let free = parse_presentation("<a|>").unwrap();
        assert_eq!(free.ngens(), 1);
        assert!(free.relators().is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_presentation("<a,b | a^2, c>") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 12);
                assert!(msg.contains("unknown generator"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_presentation("<a | a^2").is_err());
        assert!(parse_presentation("<a,a | a>").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let src = "<x,y | x^3*y^-5, (x*y)^2*[x,y], x = y^2>";
        let p = parse_presentation(src).unwrap();
        let again = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }
}
