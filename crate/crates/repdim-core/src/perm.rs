//! Permutations on `{0, …, degree−1}` stored as image arrays, plus the
//! 1-based disjoint-cycle input grammar used by generator-given groups.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("point {point} repeated across cycles")]
    RepeatedPoint { point: usize },
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
}

/// A permutation of `{0, …, degree−1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds from an image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            let img = img as usize;
            if img >= degree {
                return Err(PermError::PointOutOfRange { point: img + 1, degree });
            }
            if seen[img] {
                return Err(PermError::RepeatedPoint { point: img + 1 });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    /// `self` then `other`: the product maps `x` to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&m| other.images[m as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Canonical disjoint-cycle form: cycles ordered by smallest moved
    /// point, each cycle starting at its smallest point, 1-based.
    /// The identity renders as `()`.
    pub fn cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut pt = start;
            let mut sep = false;
            loop {
                if sep {
                    out.push(',');
                }
                out.push_str(&(pt + 1).to_string());
                sep = true;
                seen[pt] = true;
                pt = self.apply(pt);
                if pt == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// Parses a whitespace-free product of disjoint cycles in 1-based notation,
/// e.g. `(1,2,3)(4,5)`, or `()` for the identity. Unlisted points are fixed.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    let bytes = text.as_bytes();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut pos = 0;
    if bytes.is_empty() {
        return Err(PermError::Malformed("empty input".into()));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(PermError::Malformed(format!(
                "expected '(' at byte {pos}, found {:?}",
                bytes[pos] as char
            )));
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            if pos >= bytes.len() {
                return Err(PermError::Malformed("unterminated cycle".into()));
            }
            if bytes[pos] == b')' {
                pos += 1;
                break;
            }
            if !cycle.is_empty() {
                if bytes[pos] != b',' {
                    return Err(PermError::Malformed(format!(
                        "expected ',' or ')' at byte {pos}"
                    )));
                }
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(PermError::Malformed(format!("expected a point at byte {start}")));
            }
            let point: usize = text[start..pos]
                .parse()
                .map_err(|_| PermError::Malformed(format!("bad number at byte {start}")))?;
            if point == 0 {
                return Err(PermError::Malformed("points are 1-based".into()));
            }
            if point > degree {
                return Err(PermError::PointOutOfRange { point, degree });
            }
            let z = point - 1;
            if used[z] {
                return Err(PermError::RepeatedPoint { point });
            }
            used[z] = true;
            cycle.push(z);
        }
        for (i, &pt) in cycle.iter().enumerate() {
            images[pt] = cycle[(i + 1) % cycle.len()] as u32;
        }
    }
    Ok(Permutation { images })
}
