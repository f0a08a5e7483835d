//! Text syntax for words, elements and matrices.
//!
//! Words over single-character labels are written by concatenating labels
//! (`xyy`); otherwise as dot-separated 1-based indices (`1.3.2`). `()` is the
//! empty word. An element is a sum of `coeff*word` terms, e.g.
//! `2*xy - 1/3*xxyy`; the coefficient and `*` may be omitted. Matrices list
//! rows separated by `;` and entries by `,`.
//!
//! Errors carry the byte offset into the input.

use std::sync::Arc;

use crate::coinv::CoinvElem;
use crate::error::{Error, Result};
use crate::matalg::Matrix;
use crate::scalar::{parse_scalar, FieldSpec, Scalar};
use crate::space::SymplecticSpace;
use crate::tensor::TensorElem;
use crate::word::{Letter, Word};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> (usize, &'a str) {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        (start, &self.text[start..self.pos])
    }
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

/// Shifts the offset of a parse error by `base`; other errors get `base`.
fn at(base: usize, e: Error) -> Error {
    match e {
        Error::Parse { offset, message } => Error::parse(base + offset, message),
        other => Error::parse(base, other.to_string()),
    }
}

fn letter_of(space: &SymplecticSpace, c: char) -> Option<Letter> {
    let mut buf = [0u8; 4];
    let s = c.encode_utf8(&mut buf);
    space.names().iter().position(|n| n == s).map(|i| i as Letter)
}

fn index_word(space: &SymplecticSpace, start: usize, token: &str) -> Result<Word> {
    let mut letters = Vec::new();
    let mut offset = start;
    for part in token.split('.') {
        let idx: usize = part
            .parse()
            .map_err(|_| Error::parse(offset, format!("expected a basis index, found {part:?}")))?;
        if idx == 0 || idx > space.dim() {
            return Err(Error::parse(
                offset,
                format!("basis index {idx} out of range 1..={}", space.dim()),
            ));
        }
        letters.push((idx - 1) as Letter);
        offset += part.len() + 1;
    }
    Ok(Word::new(letters))
}

fn word_at(cur: &mut Cursor<'_>, space: &SymplecticSpace) -> Result<Word> {
    if cur.rest().starts_with("()") {
        cur.pos += 2;
        return Ok(Word::empty());
    }
    if space.single_char_labels() {
        let mut letters = Vec::new();
        while let Some(c) = cur.peek() {
            match letter_of(space, c) {
                Some(a) => {
                    letters.push(a);
                    cur.bump();
                }
                None => break,
            }
        }
        if letters.is_empty() {
            return Err(match cur.peek() {
                Some(c) => Error::parse(cur.pos, format!("unknown letter {c:?}")),
                None => Error::parse(cur.pos, "expected a word"),
            });
        }
        Ok(Word::new(letters))
    } else {
        let (start, token) = cur.take_while(|c| c.is_ascii_digit() || c == '.');
        if token.is_empty() {
            return Err(Error::parse(start, "expected a word of dot-separated indices"));
        }
        index_word(space, start, token)
    }
}

fn expect_end(cur: &mut Cursor<'_>) -> Result<()> {
    cur.skip_ws();
    match cur.peek() {
        None => Ok(()),
        Some(c) => Err(Error::parse(cur.pos, format!("unexpected {c:?}"))),
    }
}

/// Parses a single word.
pub fn parse_word(text: &str, space: &SymplecticSpace) -> Result<Word> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let w = word_at(&mut cur, space)?;
    expect_end(&mut cur)?;
    Ok(w)
}

/// Parses a basis letter, by label or by 1-based index.
pub fn parse_letter(text: &str, space: &SymplecticSpace) -> Result<Letter> {
    let t = text.trim();
    if let Some(i) = space.names().iter().position(|n| n == t) {
        return Ok(i as Letter);
    }
    match t.parse::<usize>() {
        Ok(i) if (1..=space.dim()).contains(&i) => Ok((i - 1) as Letter),
        _ => Err(Error::parse(0, format!("unknown basis letter {t:?}"))),
    }
}

/// Parses a coefficient followed by `*`, if the input continues that way.
fn coefficient_at(cur: &mut Cursor<'_>, field: FieldSpec, letters: bool) -> Result<Option<Scalar>> {
    let save = cur.pos;
    let (start, token) = cur.take_while(|c| c.is_ascii_digit() || c == '/' || c == '.');
    if token.is_empty() {
        return Ok(None);
    }
    cur.skip_ws();
    if cur.eat('*') {
        cur.skip_ws();
        return parse_scalar(token, field).map(Some).map_err(|e| at(start, e));
    }
    if letters {
        // `2xy`: a coefficient directly followed by a word
        return parse_scalar(token, field).map(Some).map_err(|e| at(start, e));
    }
    // an index word such as `1.2`
    cur.pos = save;
    Ok(None)
}

/// Parses a sum of `coeff*word` terms into the tensor algebra.
pub fn parse_tensor(text: &str, space: &Arc<SymplecticSpace>) -> Result<TensorElem> {
    let field = space.field();
    let mut out = TensorElem::zero(space.clone());
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.rest().trim() == "0" {
        return Ok(out);
    }
    if cur.peek().is_none() {
        return Err(Error::parse(0, "empty element"));
    }
    let letters = space.single_char_labels();
    let mut first = true;
    loop {
        cur.skip_ws();
        let negative = match cur.peek() {
            Some(c) if is_minus(c) => {
                cur.bump();
                true
            }
            Some('+') => {
                cur.bump();
                false
            }
            Some(c) if !first => return Err(Error::parse(cur.pos, format!("expected + or -, found {c:?}"))),
            None if !first => break,
            _ => false,
        };
        cur.skip_ws();
        let mut c = coefficient_at(&mut cur, field, letters)?.unwrap_or_else(|| Scalar::one(field));
        if negative {
            c = -c;
        }
        let w = word_at(&mut cur, space)?;
        out.add_term(w, &c);
        first = false;
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// Parses an element of the coinvariant algebra.
pub fn parse_element(text: &str, space: &Arc<SymplecticSpace>) -> Result<CoinvElem> {
    parse_tensor(text, space).map(|t| CoinvElem::project(&t))
}

/// Parses a square matrix: `1,0;0,-1`.
pub fn parse_matrix(text: &str, field: FieldSpec) -> Result<Matrix<Scalar>> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for row_text in text.split(';') {
        let mut row = Vec::new();
        let mut entry_offset = offset;
        for entry in row_text.split(',') {
            let lead = entry.len() - entry.trim_start().len();
            let s = parse_scalar(entry.trim(), field).map_err(|e| at(entry_offset + lead, e))?;
            row.push(s);
            entry_offset += entry.len() + 1;
        }
        rows.push(row);
        offset += row_text.len() + 1;
    }
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::parse(
            0,
            format!("matrix must be square: row {} has {} entries, expected {n}", i + 1, r.len()),
        ));
    }
    Matrix::from_rows(rows).map_err(|e| at(0, e))
}
