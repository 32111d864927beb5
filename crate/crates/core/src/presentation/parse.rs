//! Text syntax for presentations:
//!
//! ```text
//! presentation := "<" genlist "|" relatorlist? ">"
//! genlist      := name ("," name)*
//! relatorlist  := word ("," word)*
//! word         := factor+
//! factor       := atom ("^" int)?
//! atom         := name | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! Whitespace is insignificant and `[u,v]` expands to `u v u^-1 v^-1`.

use std::collections::HashMap;

use super::Presentation;
use crate::error::{Error, Result};
use crate::word::Word;

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text);
    p.expect('<')?;
    let mut names = Vec::new();
    loop {
        let (pos, name) = p.name()?;
        if names.contains(&name) {
            return Err(p.at(pos, Error::DuplicateGenerator(name)));
        }
        names.push(name);
        if !p.eat(',') {
            break;
        }
    }
    p.expect('|')?;
    let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let mut relators = Vec::new();
    if p.peek() != Some('>') {
        loop {
            relators.push(p.word(&index)?);
            if !p.eat(',') {
                break;
            }
        }
    }
    p.expect('>')?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("trailing input after `>`"));
    }
    Presentation::new(names, relators)
}

/// Parses a single word over the given alphabet.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.peek().is_none() || (p.peek() == Some('1') && text.trim() == "1") {
        return Ok(Word::empty());
    }
    let w = p.word(&index)?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("trailing input after word"));
    }
    Ok(w)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in self.chars.iter().take(pos) {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, message: &str) -> Error {
        let mut pos = self.pos;
        while pos < self.chars.len() && self.chars[pos].is_whitespace() {
            pos += 1;
        }
        let (line, column) = self.line_col(pos);
        let found = match self.chars.get(pos) {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of input".to_string(),
        };
        Error::Syntax { line, column, message: format!("{message}{found}") }
    }

    fn at(&self, pos: usize, err: Error) -> Error {
        let (line, column) = self.line_col(pos);
        Error::Syntax { line, column, message: err.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn name(&mut self) -> Result<(usize, String)> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(self.error("expected a generator name")),
        }
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("exponent out of range")
        })
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[')
    }

    fn word(&mut self, index: &HashMap<String, usize>) -> Result<Word> {
        if !self.starts_atom() {
            return Err(self.error("expected a word"));
        }
        let mut w = Word::empty();
        while self.starts_atom() {
            let mut atom = self.atom(index)?;
            if self.eat('^') {
                let e = self.int()?;
                if e < 0 {
                    atom = atom.invert();
                }
                atom = atom.power(e.abs())?;
            }
            w = w.concat(&atom);
        }
        Ok(w)
    }

    fn atom(&mut self, index: &HashMap<String, usize>) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word(index)?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word(index)?;
                self.expect(',')?;
                let v = self.word(index)?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            _ => {
                let (pos, name) = self.name()?;
                match index.get(&name) {
                    Some(&g) => Ok(Word::gen(g)),
                    None => Err(self.at(pos, Error::UnknownGenerator(name))),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[(usize, i64)]) -> Word {
        Word::from_syllables(s)
    }

    #[test]
    fn parses_powers_and_commutators() {
        let p = parse_presentation("< a, b | a^2, [a,b]^2 >").unwrap();
        assert_eq!(p.generators(), &["a".to_string(), "b".to_string()]);
        let c = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(p.relators(), &[w(&[(0, 2)]), c.power(2).unwrap()]);
    }

    #[test]
    fn parses_inverse_of_group() {
        let p = parse_presentation("< a, b | a b a (b a b)^-1 >").unwrap();
        assert_eq!(p.relators(), &[w(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)])]);
    }

    #[test]
    fn parses_free_group() {
        let p = parse_presentation("< a | >").unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.relators().is_empty());
        assert_eq!(p.to_string(), "< a | >");
    }

    #[test]
    fn multiline_and_zero_exponent() {
        let p = parse_presentation("<\n x_1 ,\n y |\n x_1^0 y^3 ,\n (x_1 y)^-2\n>").unwrap();
        assert_eq!(p.relators(), &[w(&[(1, 3)]), w(&[(1, -1), (0, -1), (1, -1), (0, -1)])]);
    }

    #[test]
    fn error_positions() {
        match parse_presentation("< a, b |\n a c >") {
            Err(Error::Syntax { line, column, message }) => {
                assert_eq!((line, column), (2, 4));
                assert!(message.contains("unknown generator `c`"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        match parse_presentation("< a, a | >") {
            Err(Error::Syntax { line: 1, column: 6, message }) => assert!(message.contains("duplicate")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_presentation("< a | a^ >"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< a | (a >"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< a | a > x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("a | a"), Err(Error::Syntax { line: 1, column: 1, .. })));
    }

    #[test]
    fn word_parsing() {
        let names: Vec<String> = vec!["s1".into(), "r1".into()];
        assert_eq!(parse_word("s1 r1", &names).unwrap(), w(&[(0, 1), (1, 1)]));
        assert!(parse_word("", &names).unwrap().is_empty());
        assert!(parse_word("1", &names).unwrap().is_empty());
        assert!(parse_word("s2", &names).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn presentation() -> impl Strategy<Value = Presentation> {
            (1usize..=6).prop_flat_map(|n| {
                prop::collection::vec(prop::collection::vec((0..n, -3i64..=3), 0..=10), 0..=10).prop_map(move |rels| {
                    let names = Presentation::indexed_names("g", n);
                    let words = rels.iter().map(|s| Word::from_syllables(s)).filter(|w| w.len() <= 20).collect();
                    Presentation::new(names, words).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn serialize_parse_roundtrip(p in presentation()) {
                let text = p.serialize();
                let q = parse_presentation(&text).unwrap();
                prop_assert_eq!(q, p);
            }
        }
    }
}
