//! Tensor monomials as words over basis indices.
//!
//! Letters are stored as 0-based basis indices. Positions passed to the
//! segment operator are 1-based, matching the usual `D_{i,j}` notation.

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub type Letter = u16;

/// A word `a_1 a_2 ... a_l`. The empty word is the unit for concatenation.
///
/// Words are ordered by length first and lexicographically within a length;
/// this is the order used for canonical forms and serialization.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// How `D_{i,j}` treats the adjacent case `i = j - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SegmentConvention {
    /// The adjacent segment is the empty word.
    #[default]
    EmptyWord,
    /// The adjacent segment is the zero tensor.
    LiteralZero,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Concatenation of several words.
    pub fn join<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word(parts.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    /// `sigma^r`, where `sigma(a_1 a_2 ... a_l) = a_2 ... a_l a_1`.
    ///
    /// Negative `r` rotates right. The empty word is returned unchanged.
    pub fn rotate(&self, r: i64) -> Word {
        let l = self.len();
        if l == 0 {
            return Word::empty();
        }
        let shift = r.rem_euclid(l as i64) as usize;
        let mut letters = Vec::with_capacity(l);
        letters.extend_from_slice(&self.0[shift..]);
        letters.extend_from_slice(&self.0[..shift]);
        Word(letters)
    }

    /// All `l` rotations `sigma^0, ..., sigma^{l-1}` (with repetition for
    /// periodic words).
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |r| self.rotate(r as i64))
    }

    /// `D_{i,j}`: the letters strictly between positions `i` and `j` (1-based),
    /// read cyclically.
    pub fn segment(&self, i: usize, j: usize) -> Result<Word> {
        self.segment_with(i, j, SegmentConvention::EmptyWord)
            .map(|w| w.expect("empty-word convention never yields zero"))
    }

    /// `D_{i,j}` under an explicit convention; `None` stands for the zero
    /// tensor.
    pub fn segment_with(
        &self,
        i: usize,
        j: usize,
        convention: SegmentConvention,
    ) -> Result<Option<Word>> {
        let l = self.len();
        if i < 1 || j < 1 || i > l || j > l {
            return Err(Error::SegmentOutOfRange { i, j, len: l });
        }
        if i + 1 == j {
            return Ok(match convention {
                SegmentConvention::EmptyWord => Some(Word::empty()),
                SegmentConvention::LiteralZero => None,
            });
        }
        if i < j {
            Ok(Some(Word(self.0[i..j - 1].to_vec())))
        } else {
            let mut letters = self.0[i..].to_vec();
            letters.extend_from_slice(&self.0[..j - 1]);
            Ok(Some(Word(letters)))
        }
    }

    /// `D_{p+1,p+1}` for a 0-based position `p`: drop the letter at `p` and
    /// read the rest cyclically starting just after it.
    pub fn cut_at(&self, p: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len().saturating_sub(1));
        letters.extend_from_slice(&self.0[p + 1..]);
        letters.extend_from_slice(&self.0[..p]);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Offset of the lexicographically least rotation (Booth's algorithm).
    pub fn least_rotation_offset(&self) -> usize {
        let s = &self.0;
        let n = s.len();
        if n == 0 {
            return 0;
        }
        let mut fail = vec![usize::MAX; 2 * n];
        let mut k = 0usize;
        for j in 1..2 * n {
            let c = s[j % n];
            let mut i = fail[j - k - 1];
            while i != usize::MAX && c != s[(k + i + 1) % n] {
                if c < s[(k + i + 1) % n] {
                    k = j - i - 1;
                }
                i = fail[i];
            }
            if i == usize::MAX && c != s[k % n] {
                if c < s[k % n] {
                    k = j;
                }
                fail[j - k] = usize::MAX;
            } else {
                fail[j - k] = if i == usize::MAX { 0 } else { i + 1 };
            }
        }
        k % n
    }

    /// The least rotation of this word.
    pub fn least_rotation(&self) -> Word {
        self.rotate(self.least_rotation_offset() as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.bytes().map(|b| (b - b'a') as Letter).collect()
    }

    #[test]
    fn concat_and_unit() {
        let x = Word::new(vec![0]);
        let xy = Word::new(vec![0, 1]);
        assert_eq!(xy.concat(&x), Word::new(vec![0, 1, 0]));
        assert_eq!(Word::empty().concat(&Word::new(vec![1, 1])), Word::new(vec![1, 1]));
        assert_eq!(x.concat(&Word::empty()), x);
    }

    #[test]
    fn rotation_is_left_shift() {
        let xyx = Word::new(vec![0, 1, 0]);
        assert_eq!(xyx.rotate(1), Word::new(vec![1, 0, 0]));
        assert_eq!(xyx.rotate(3), xyx);
        assert_eq!(xyx.rotate(-1), xyx.rotate(2));
        assert_eq!(Word::new(vec![0, 0]).rotate(1), Word::new(vec![0, 0]));
        assert_eq!(Word::empty().rotate(5), Word::empty());
    }

    #[test]
    fn segment_cases() {
        let abcde = w("abcde");
        assert_eq!(abcde.segment(2, 5).unwrap(), w("cd"));
        assert_eq!(abcde.segment(2, 3).unwrap(), Word::empty());
        assert_eq!(abcde.segment(4, 2).unwrap(), w("ea"));
        assert_eq!(abcde.segment(5, 1).unwrap(), Word::empty());
        assert_eq!(abcde.segment(3, 3).unwrap(), w("deab"));
        let ab = w("ab");
        assert_eq!(ab.segment(1, 1).unwrap(), w("b"));
        assert_eq!(ab.segment(2, 2).unwrap(), w("a"));
        assert_eq!(
            abcde.segment_with(2, 3, SegmentConvention::LiteralZero).unwrap(),
            None
        );
        assert_eq!(
            abcde.segment_with(4, 2, SegmentConvention::LiteralZero).unwrap(),
            Some(w("ea"))
        );
    }

    #[test]
    fn segment_out_of_range() {
        let ab = w("ab");
        assert_eq!(
            ab.segment(0, 1),
            Err(Error::SegmentOutOfRange { i: 0, j: 1, len: 2 })
        );
        assert!(ab.segment(1, 3).is_err());
        assert!(Word::empty().segment(1, 1).is_err());
    }

    #[test]
    fn diagonal_segment_matches_rotation_oracle() {
        // D_{i,i}(a) is the rotation starting at a_{i+1}, minus its last letter.
        let abcde = w("abcde");
        for i in 1..=5 {
            let rot = abcde.rotate(i as i64);
            let expected = Word::new(rot.letters()[..4].to_vec());
            assert_eq!(abcde.segment(i, i).unwrap(), expected);
            assert_eq!(abcde.cut_at(i - 1), expected);
        }
    }

    fn all_words(r: Letter, l: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..l {
            out = out
                .into_iter()
                .flat_map(|w| (0..r).map(move |a| w.concat(&Word::new(vec![a]))))
                .collect();
        }
        out
    }

    #[test]
    fn left_shift_satisfies_rotation_identity_exhaustively() {
        // D_{i,i}(sigma^r a) = D_{r+i, r+i}(a), indices wrapped into 1..l.
        for l in 1..=6 {
            for word in all_words(3, l) {
                for r in 0..l {
                    let rotated = word.rotate(r as i64);
                    for i in 1..=l {
                        let wrapped = (r + i - 1) % l + 1;
                        assert_eq!(
                            rotated.segment(i, i).unwrap(),
                            word.segment(wrapped, wrapped).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn right_shift_would_violate_rotation_identity() {
        let word = w("abc");
        let right = word.rotate(-1);
        assert_ne!(right.segment(1, 1).unwrap(), word.segment(2, 2).unwrap());
    }

    #[test]
    fn least_rotation_examples() {
        assert_eq!(w("ba").least_rotation(), w("ab"));
        assert_eq!(w("bab").least_rotation(), w("abb"));
        assert_eq!(w("aa").least_rotation(), w("aa"));
        assert_eq!(w("abacabab").least_rotation(), w("abababac"));
        assert_eq!(Word::empty().least_rotation(), Word::empty());
    }

    fn naive_least_rotation(word: &Word) -> Word {
        word.rotations().min().unwrap_or_default()
    }

    proptest! {
        #[test]
        fn booth_matches_naive(letters in prop::collection::vec(0u16..3, 0..12)) {
            let word = Word::new(letters);
            let least = word.least_rotation();
            prop_assert_eq!(&least, &naive_least_rotation(&word));
            prop_assert_eq!(least.least_rotation(), least);
        }

        #[test]
        fn reversal_and_rotation_commute_inversely(
            letters in prop::collection::vec(0u16..3, 1..10),
            r in 0i64..10,
        ) {
            let word = Word::new(letters);
            prop_assert_eq!(word.rotate(r).reversed(), word.reversed().rotate(-r));
        }
    }
}
