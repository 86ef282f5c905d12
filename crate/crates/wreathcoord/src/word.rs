//! Words over named generators, kept free-reduced.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// One letter of a word: a generator name, possibly inverted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Letter {
    pub name: Arc<str>,
    pub inverse: bool,
}

impl Letter {
    pub fn new(name: impl Into<Arc<str>>, inverse: bool) -> Letter {
        Letter {
            name: name.into(),
            inverse,
        }
    }
}

/// A free-reduced sequence of letters.
///
/// Pushing a letter that undoes the previous one cancels instead of
/// appending, so no `g g⁻¹` pair ever survives.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn push(&mut self, letter: Letter) {
        if let Some(last) = self.letters.last() {
            if last.name == letter.name && last.inverse != letter.inverse {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(letter);
    }

    /// Appends another word, reducing across the joint.
    pub fn extend(&mut self, other: &Word) {
        for letter in &other.letters {
            self.push(letter.clone());
        }
    }

    pub fn inverse(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter::new(l.name.clone(), !l.inverse))
            .collect();
        Word { letters }
    }

    /// Parses a word. Letters are separated by whitespace or `*`; a letter is
    /// a generator name followed by an optional `'` (inverse) or `^k`
    /// exponent, `k` a possibly negative integer. `B^2*R^-1` and `B B R'`
    /// both denote the same word.
    pub fn parse(text: &str) -> Result<Word> {
        let mut word = Word::empty();
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() {
                continue;
            }
            let (name, inverse, count) = split_token(token)?;
            if name.is_empty() {
                return Err(Error::WordSyntax(format!("missing name in {token:?}")));
            }
            let name: Arc<str> = Arc::from(name);
            for _ in 0..count {
                word.push(Letter::new(name.clone(), inverse));
            }
        }
        Ok(word)
    }
}

fn split_token(token: &str) -> Result<(&str, bool, u64)> {
    if let Some(name) = token.strip_suffix('\'') {
        if name.contains('\'') || name.contains('^') {
            return Err(Error::WordSyntax(format!("malformed letter {token:?}")));
        }
        return Ok((name, true, 1));
    }
    if let Some((name, exp)) = token.split_once('^') {
        let exp: i64 = exp
            .parse()
            .map_err(|_| Error::WordSyntax(format!("bad exponent in {token:?}")))?;
        return Ok((name, exp < 0, exp.unsigned_abs()));
    }
    if token.contains('\'') {
        return Err(Error::WordSyntax(format!("malformed letter {token:?}")));
    }
    Ok((token, false, 1))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&letter.name)?;
            if letter.inverse {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}
