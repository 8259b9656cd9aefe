//! Reduced words in the free group on generators `x1, x2, ...`.
//!
//! Every [`Word`] is freely reduced at construction, so two words denote the
//! same group element iff their letter sequences are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A free generator `x_i`, `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Result<Self, Error> {
        if index == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(Generator(index))
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Exponent of a letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i64(s: i64) -> Result<Self, Error> {
        match s {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(Error::BadSign(other)),
        }
    }
}

/// A letter `x_i^{+1}` or `x_i^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: u32, sign: Sign) -> Result<Self, Error> {
        Ok(Letter {
            gen: Generator::new(index)?,
            sign,
        })
    }

    /// `x_i`. Panics if `index == 0`.
    pub fn pos(index: u32) -> Self {
        Letter::new(index, Sign::Pos).expect("generator index must be >= 1")
    }

    /// `x_i^{-1}`. Panics if `index == 0`.
    pub fn neg(index: u32) -> Self {
        Letter::new(index, Sign::Neg).expect("generator index must be >= 1")
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    #[inline]
    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Stack-based free reduction.
fn push_reduced(out: &mut Vec<Letter>, letter: Letter) {
    match out.last() {
        Some(&last) if last.cancels(letter) => {
            out.pop();
        }
        _ => out.push(letter),
    }
}

/// Freely reduces an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    Word(out)
}

/// Reduced product `a * b`.
pub fn concat(a: &Word, b: &Word) -> Word {
    let mut out = a.0.clone();
    out.reserve(b.len());
    for &l in &b.0 {
        push_reduced(&mut out, l);
    }
    Word(out)
}

pub fn invert_word(a: &Word) -> Word {
    Word(a.0.iter().rev().map(|l| l.inverse()).collect())
}

/// Replaces every `x_i` by `images[x_i]` (generators missing from the map are
/// left alone) and `x_i^{-1}` by the inverse image.
pub fn substitute(images: &BTreeMap<Generator, Word>, w: &Word) -> Word {
    let mut out = Vec::new();
    for &l in &w.0 {
        match images.get(&l.gen) {
            None => push_reduced(&mut out, l),
            Some(img) => match l.sign {
                Sign::Pos => img.0.iter().for_each(|&x| push_reduced(&mut out, x)),
                Sign::Neg => img
                    .0
                    .iter()
                    .rev()
                    .for_each(|&x| push_reduced(&mut out, x.inverse())),
            },
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        Word(vec![Letter {
            gen: g,
            sign: Sign::Pos,
        }])
    }

    /// The one-letter word `x_i`. Panics if `index == 0`.
    pub fn x(index: u32) -> Self {
        Word(vec![Letter::pos(index)])
    }

    /// Builds a word from `(index, sign)` pairs, reducing as it goes.
    pub fn from_pairs<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Result<Self, Error> {
        let mut letters = Vec::new();
        for (i, s) in pairs {
            letters.push(Letter::new(i, Sign::from_i64(s)?)?);
        }
        Ok(reduce(letters))
    }

    pub fn to_pairs(&self) -> Vec<(u32, i8)> {
        self.0
            .iter()
            .map(|l| (l.gen.index(), l.sign.as_i8()))
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index occurring in the word, 0 for the identity.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.gen.index()).max().unwrap_or(0)
    }

    pub fn is_generator(&self, g: Generator) -> bool {
        matches!(self.0.as_slice(), [l] if l.gen == g && l.sign == Sign::Pos)
    }

    pub fn mul(&self, other: &Word) -> Word {
        concat(self, other)
    }

    pub fn inverse(&self) -> Word {
        invert_word(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match l.sign {
                Sign::Pos => write!(f, "x{}", l.gen.index())?,
                Sign::Neg => write!(f, "x{}^-1", l.gen.index())?,
            }
        }
        Ok(())
    }
}

fn parse_token(tok: &str) -> Result<Letter, Error> {
    let syntax = || Error::Syntax(tok.to_string());
    let body = tok.strip_prefix('x').ok_or_else(syntax)?;
    let (digits, sign) = match body.strip_suffix("^-1") {
        Some(d) => (d, Sign::Neg),
        None => (body, Sign::Pos),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax());
    }
    let index: u32 = digits.parse().map_err(|_| syntax())?;
    Letter::new(index, sign)
}

/// Parses whitespace-separated `x3` / `x3^-1` tokens; the empty string is the identity.
pub fn parse_word(text: &str) -> Result<Word, Error> {
    let letters = text
        .split_whitespace()
        .map(parse_token)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(reduce(letters))
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}
