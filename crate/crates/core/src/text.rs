//! Text formats for letters, trees, forests, words and linear combinations.
//!
//! ```text
//! tree    := letter | letter "(" tree ("," tree)* ")"
//! letter  := ident | "[" letter (" " letter)* "]"
//! forest  := "1" | tree (("·" | " ") tree)*
//! word    := "e" | letter ("." letter)*
//! lincomb := term (" + " term)*      term := [rational " * "] basis
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linear::{LinComb, Tensor, Q};
use crate::semigroup::{Letter, SemigroupElement};
use crate::tree::{Forest, Tree};
use crate::word::Word;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.bump();
                Ok(())
            }
            Some(d) => self.err(format!("expected `{}`, found `{}`", c, d)),
            None => self.err(format!("expected `{}`, found end of input", c)),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn ident(&mut self) -> Result<Letter> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => self.err(format!("expected a letter, found `{}`", c)),
                None => self.err("expected a letter, found end of input"),
            };
        }
        Ok(Letter::new(&self.src[start..self.pos]))
    }

    fn letter(&mut self) -> Result<SemigroupElement> {
        if self.peek() == Some('[') {
            self.bump();
            let mut letters = Vec::new();
            loop {
                self.skip_ws();
                if self.peek() == Some(']') {
                    break;
                }
                letters.extend(self.letter()?.letters().iter().cloned());
            }
            self.expect(']')?;
            if letters.is_empty() {
                return self.err("empty bracket");
            }
            SemigroupElement::from_letters(letters)
        } else {
            SemigroupElement::from_letters(vec![self.ident()?])
        }
    }

    fn tree(&mut self) -> Result<Tree> {
        let root = self.letter()?;
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.bump();
            loop {
                self.skip_ws();
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => {
                        self.bump();
                    }
                    Some(')') => {
                        self.bump();
                        break;
                    }
                    Some(c) => return self.err(format!("expected `,` or `)`, found `{}`", c)),
                    None => return self.err("unclosed `(`"),
                }
            }
        }
        Ok(Tree::new(root, children))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

fn nonempty(s: &str) -> Result<&str> {
    let s = s.trim();
    if s.is_empty() {
        Err(Error::EmptyInput)
    } else {
        Ok(s)
    }
}

pub fn parse_letter(text: &str) -> Result<SemigroupElement> {
    let mut p = Parser::new(nonempty(text)?);
    let x = p.letter()?;
    p.finish()?;
    Ok(x)
}

pub fn parse_tree(text: &str) -> Result<Tree> {
    let mut p = Parser::new(nonempty(text)?);
    let t = p.tree()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_forest(text: &str) -> Result<Forest> {
    let s = nonempty(text)?;
    if s == "1" || s == "𝟏" {
        return Ok(Forest::unit());
    }
    let mut p = Parser::new(s);
    let mut trees = Vec::new();
    loop {
        trees.push(p.tree()?);
        while matches!(p.peek(), Some(c) if c.is_whitespace() || c == '·') {
            p.bump();
        }
        if p.at_end() {
            break;
        }
    }
    Ok(Forest::new(trees))
}

pub fn parse_word(text: &str) -> Result<Word> {
    let s = nonempty(text)?;
    if s == "e" {
        return Ok(Word::empty());
    }
    let mut p = Parser::new(s);
    let mut letters = vec![p.letter()?];
    while p.peek() == Some('.') {
        p.bump();
        letters.push(p.letter()?);
    }
    p.finish()?;
    Ok(Word(letters))
}

pub fn parse_rational(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::Parse { pos: 0, msg: format!("bad rational `{}`", s) };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Split at a top-level separator character, ignoring brackets and parentheses.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push((start, &s[start..k]));
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Parse `p/q * basis + ...`; a missing coefficient means 1, and `0` is the zero combination.
pub fn parse_lincomb<B: Ord + Clone>(text: &str, basis: impl Fn(&str) -> Result<B>) -> Result<LinComb<B>> {
    let s = nonempty(text)?;
    let mut out = LinComb::zero();
    if s == "0" {
        return Ok(out);
    }
    for (offset, term) in split_top(s, '+') {
        let shift = |e: Error| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            Error::EmptyInput => Error::Parse { pos: offset, msg: "empty term".into() },
            e => e,
        };
        let parts = split_top(term, '*');
        let (c, b) = match parts.as_slice() {
            [(_, b)] => (Q::one(), *b),
            [(_, c), (_, b)] => (parse_rational(c).map_err(shift)?, *b),
            _ => return Err(Error::Parse { pos: offset, msg: "too many `*` in term".into() }),
        };
        out.add_term(basis(b).map_err(shift)?, c);
    }
    Ok(out)
}

pub fn parse_tensor<A, B>(
    text: &str,
    left: impl Fn(&str) -> Result<A>,
    right: impl Fn(&str) -> Result<B>,
) -> Result<Tensor<A, B>> {
    match split_top(text, '⊗').as_slice() {
        [(_, a), (_, b)] => Ok(Tensor(left(a)?, right(b)?)),
        _ => Err(Error::Parse { pos: 0, msg: "expected `left ⊗ right`".into() }),
    }
}
