//! Exact arithmetic on permutations of `{1..n}` with cycle-notation I/O.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A point of the permuted set, 1-based as in cycle notation.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point(u32);

impl Point {
    /// Wraps a 1-based point value. Panics on 0.
    pub fn new(value: u32) -> Point {
        assert!(value >= 1, "points are 1-based, got 0");
        Point(value)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub(crate) fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    pub(crate) fn from_index(index: usize) -> Point {
        Point(index as u32 + 1)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Point {
    fn from(value: u32) -> Point {
        Point::new(value)
    }
}

/// A permutation of `{1..degree}` stored as an image table.
///
/// Composition is left-to-right everywhere: `x · (p * q) = (x · p) · q`,
/// matching how move sequences apply to puzzle states.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // images[i] is the 0-based image of the 0-based point i
    images: Vec<u32>,
}

impl Permutation {
    /// The identity permutation of the given degree.
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, checking bijectivity.
    pub(crate) fn from_images(images: Vec<u32>) -> Result<Permutation> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            let i = img as usize;
            if i >= degree {
                return Err(Error::PointOutOfRange {
                    point: img + 1,
                    degree,
                });
            }
            if seen[i] {
                return Err(Error::RepeatedPoint { point: img + 1 });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Permutation {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub(crate) fn images(&self) -> &[u32] {
        &self.images
    }

    /// Applies the permutation to a point: returns `x · self`.
    pub fn apply(&self, x: Point) -> Result<Point> {
        let i = x.index();
        if i >= self.degree() {
            return Err(Error::PointOutOfRange {
                point: x.value(),
                degree: self.degree(),
            });
        }
        Ok(Point::from_index(self.images[i] as usize))
    }

    /// 0-based image lookup used by the group kernels.
    #[inline]
    pub(crate) fn image_of_index(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Left-to-right composition: `x · result = (x · self) · other`.
    ///
    /// Panics if the degrees differ.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        let images = self
            .images
            .iter()
            .map(|&mid| other.images[mid as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Smallest moved point, if the permutation is not the identity.
    pub fn smallest_moved_point(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &v)| i as u32 != v)
            .map(|(i, _)| Point::from_index(i))
    }

    /// The element order: least k > 0 with `self^k` the identity.
    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::from(1u8);
        for cycle in self.cycles() {
            acc = lcm(acc, BigUint::from(cycle.len()));
        }
        acc
    }

    /// Disjoint cycles, each starting at its smallest element, ordered by
    /// smallest element; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let degree = self.degree();
        let mut seen = vec![false; degree];
        let mut cycles = Vec::new();
        for start in 0..degree {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(Point::from_index(cur));
                cur = self.images[cur] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Parses the cycle-notation grammar
    /// `perm := "()" | cycle+ ; cycle := "(" int ("," int)+ ")"`,
    /// with optional whitespace between tokens.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let tokens = tokenize(text)?;
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut pos = 0;

        // "()" is only valid as the entire input
        if tokens.len() == 2 && tokens[0] == Token::Open && tokens[1] == Token::Close {
            return Ok(Permutation { images });
        }
        if tokens.is_empty() {
            return Err(Error::CycleSyntax("empty input".into()));
        }

        while pos < tokens.len() {
            if tokens[pos] != Token::Open {
                return Err(Error::CycleSyntax(format!(
                    "expected '(' at token {}",
                    pos + 1
                )));
            }
            pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                let value = match tokens.get(pos) {
                    Some(&Token::Int(v)) => v,
                    _ => {
                        return Err(Error::CycleSyntax(format!(
                            "expected an integer at token {}",
                            pos + 1
                        )))
                    }
                };
                pos += 1;
                if value == 0 || value as usize > degree {
                    return Err(Error::PointOutOfRange {
                        point: value,
                        degree,
                    });
                }
                let idx = (value - 1) as usize;
                if used[idx] {
                    return Err(Error::RepeatedPoint { point: value });
                }
                used[idx] = true;
                cycle.push(idx);
                match tokens.get(pos) {
                    Some(Token::Comma) => pos += 1,
                    Some(Token::Close) => {
                        pos += 1;
                        break;
                    }
                    _ => {
                        return Err(Error::CycleSyntax(format!(
                            "expected ',' or ')' at token {}",
                            pos + 1
                        )))
                    }
                }
            }
            if cycle.len() < 2 {
                return Err(Error::CycleSyntax(
                    "a cycle needs at least two points".into(),
                ));
            }
            for w in 0..cycle.len() {
                let next = cycle[(w + 1) % cycle.len()];
                images[cycle[w]] = next as u32;
            }
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn lcm(a: BigUint, b: BigUint) -> BigUint {
    let g = gcd(a.clone(), b.clone());
    a / g * b
}

fn gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    let zero = BigUint::from(0u8);
    while b != zero {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Token {
    Open,
    Close,
    Comma,
    Int(u32),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b if (b as char).is_whitespace() => i += 1,
            b'(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            b')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            b',' => {
                tokens.push(Token::Comma);
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                if digits.len() > 1 && digits.starts_with('0') {
                    return Err(Error::CycleSyntax(format!("leading zero in {digits:?}")));
                }
                let value: u32 = digits
                    .parse()
                    .map_err(|_| Error::CycleSyntax(format!("integer {digits:?} too large")))?;
                tokens.push(Token::Int(value));
            }
            other => {
                return Err(Error::CycleSyntax(format!(
                    "unexpected character {:?}",
                    other as char
                )))
            }
        }
    }
    Ok(tokens)
}
