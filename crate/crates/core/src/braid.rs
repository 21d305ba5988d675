//! Positive braid words, their underlying permutations, and the staircase
//! reduced word for the half-twist.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator index {index} at position {position} is outside 1..={max}")]
    IndexOutOfRange {
        position: usize,
        index: usize,
        max: usize,
    },
    #[error("malformed braid token at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// `σ_{i_1} σ_{i_2} ⋯ σ_{i_l}` on `strands` strands. Letters are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(position) = letters.iter().position(|&i| i == 0 || i >= strands) {
            return Err(BraidError::IndexOutOfRange {
                position,
                index: letters[position],
                max: strands - 1,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `i_k`, 1-based `k`.
    pub fn letter(&self, k: usize) -> usize {
        self.letters[k - 1]
    }

    /// `i_k* = n - i_k`, 1-based `k`.
    pub fn complement(&self, k: usize) -> usize {
        self.strands - self.letter(k)
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters[..k].to_vec(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand count mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, i) in self.letters.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated items `['s']<digits>['^'<digits>]`, e.g.
/// `"1 2 s1^2"`. Positions in errors are byte offsets of the offending
/// token.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
    if strands < 2 {
        return Err(BraidError::TooFewStrands(strands));
    }
    let mut letters = Vec::new();
    let mut offset = 0;
    for token in text.split_ascii_whitespace() {
        let position = offset + text[offset..].find(token).expect("token from split");
        offset = position + token.len();
        let malformed = |message: &str| BraidError::Parse {
            position,
            message: format!("{message} in {token:?}"),
        };
        let body = token.strip_prefix('s').unwrap_or(token);
        let (index, power) = match body.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (body, None),
        };
        if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed("expected generator index"));
        }
        let index: usize = index.parse().map_err(|_| malformed("index too large"))?;
        let repeat = match power {
            None => 1,
            Some(e) if !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit()) => {
                match e.parse::<usize>() {
                    Ok(r) if r >= 1 => r,
                    _ => return Err(malformed("exponent must be a positive integer")),
                }
            }
            Some(_) => return Err(malformed("expected exponent after '^'")),
        };
        if index == 0 || index >= strands {
            return Err(BraidError::IndexOutOfRange {
                position,
                index,
                max: strands - 1,
            });
        }
        letters.extend(std::iter::repeat_n(index, repeat));
    }
    Ok(BraidWord { strands, letters })
}

/// A permutation of `1..=n`, stored by images: `images[j - 1] = w(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// `i ↦ n + 1 - i`, the longest element of `S_n`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// Returns `None` unless `images` is a bijection on `1..=n`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// The simple transposition `s_i = (i, i+1)` in `S_n`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn is_reversal(&self) -> bool {
        *self == Self::reversal(self.size())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, x) in self.images.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `s_{i_1} ∘ s_{i_2} ∘ ⋯ ∘ s_{i_l}`.
pub fn permutation_of(word: &BraidWord) -> Permutation {
    let n = word.strands();
    let mut images: Vec<usize> = (1..=n).collect();
    // apply the rightmost transposition first
    for x in images.iter_mut() {
        for &i in word.letters().iter().rev() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }
    Permutation { images }
}

/// The staircase reduced word `(s1)(s2 s1)(s3 s2 s1)⋯(s_{n-1}⋯s1)` for the
/// half-twist.
pub fn longest_element_word(strands: usize) -> Result<BraidWord, BraidError> {
    if strands < 2 {
        return Err(BraidError::TooFewStrands(strands));
    }
    let letters = (1..strands).flat_map(|top| (1..=top).rev()).collect();
    Ok(BraidWord { strands, letters })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_three_strand_example() {
        let w = parse_braid("1 2 1 2 1^2 2^2 1", 3).unwrap();
        assert_eq!(w.letters(), &[1, 2, 1, 2, 1, 1, 2, 2, 1]);
        assert_eq!(w.len(), 9);
        assert_eq!(w.complement(7), 1);
    }

    #[test]
    fn parses_prefixes_and_empty_input() {
        assert_eq!(parse_braid("s1 s2^3", 3).unwrap().letters(), &[1, 2, 2, 2]);
        let empty = parse_braid("", 4).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.strands(), 4);
        assert!(parse_braid("   \n", 2).unwrap().is_empty());
    }

    #[test]
    fn rejects_out_of_range_and_malformed() {
        assert_eq!(
            parse_braid("3", 3),
            Err(BraidError::IndexOutOfRange {
                position: 0,
                index: 3,
                max: 2
            })
        );
        assert!(matches!(
            parse_braid("1 0", 3),
            Err(BraidError::IndexOutOfRange { position: 2, .. })
        ));
        assert!(matches!(parse_braid("1 x", 3), Err(BraidError::Parse { position: 2, .. })));
        assert!(matches!(parse_braid("1^0", 3), Err(BraidError::Parse { position: 0, .. })));
        assert!(matches!(parse_braid("1^", 3), Err(BraidError::Parse { .. })));
        assert!(matches!(parse_braid("1  s", 3), Err(BraidError::Parse { position: 3, .. })));
        assert_eq!(parse_braid("1", 1), Err(BraidError::TooFewStrands(1)));
    }

    #[test]
    fn permutations_of_small_words() {
        let empty = BraidWord::new(3, vec![]).unwrap();
        assert_eq!(permutation_of(&empty), Permutation::identity(3));
        let s1 = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(permutation_of(&s1).images(), &[2, 1]);
        // s1 s2 sends 1 -> s1(s2(1)) = 2, 2 -> s1(3) = 3, 3 -> s1(2) = 1
        let w = BraidWord::new(3, vec![1, 2]).unwrap();
        assert_eq!(permutation_of(&w).images(), &[2, 3, 1]);
    }

    #[test]
    fn staircase_words() {
        assert_eq!(longest_element_word(2).unwrap().letters(), &[1]);
        assert_eq!(longest_element_word(3).unwrap().letters(), &[1, 2, 1]);
        let w4 = longest_element_word(4).unwrap();
        assert_eq!(w4.letters(), &[1, 2, 1, 3, 2, 1]);
        assert_eq!(permutation_of(&w4).images(), &[4, 3, 2, 1]);
        for n in 2..=8 {
            let w = longest_element_word(n).unwrap();
            assert_eq!(w.len(), n * (n - 1) / 2);
            assert!(permutation_of(&w).is_reversal());
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::from_images(vec![2, 1, 3]).is_some());
        assert!(Permutation::from_images(vec![2, 2, 3]).is_none());
        assert!(Permutation::from_images(vec![0, 1]).is_none());
    }
}
