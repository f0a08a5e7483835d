//! A finite-dimensional vector space with an alternating bilinear form.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{FieldSpec, Scalar};
use crate::word::{Letter, Word};

/// Basis labels plus the Gram matrix `G[i][j] = <e_i, e_j>`.
///
/// The form is only required to be alternating, so degenerate forms are
/// allowed; operations that need nondegeneracy check it themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    field: FieldSpec,
    names: Vec<String>,
    gram: Vec<Vec<Scalar>>,
}

impl SymplecticSpace {
    pub fn new(field: FieldSpec, names: Vec<String>, gram: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = names.len();
        if r == 0 {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        if r > Letter::MAX as usize {
            return Err(Error::InvalidSpace(format!("dimension {r} is too large")));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.chars().any(|c| c.is_whitespace() || c.is_control()) {
                return Err(Error::InvalidSpace(format!("bad basis label {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidSpace(format!("duplicate basis label {a:?}")));
            }
        }
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidSpace(format!("gram matrix must be {r}x{r}")));
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if g.field() != field {
                    return Err(Error::FieldMismatch(field, g.field()));
                }
                if i == j && !g.is_zero() {
                    return Err(Error::NotAlternating(format!("G[{i}][{i}] = {g} != 0")));
                }
                if g != &-&gram[j][i] {
                    return Err(Error::NotAlternating(format!(
                        "G[{i}][{j}] = {g} but G[{j}][{i}] = {}",
                        gram[j][i]
                    )));
                }
            }
        }
        Ok(SymplecticSpace { field, names, gram })
    }

    /// Default labels: `x, y` in dimension 2, otherwise `x1 .. xr`.
    pub fn default_names(r: usize) -> Vec<String> {
        if r == 2 {
            vec!["x".into(), "y".into()]
        } else {
            (1..=r).map(|i| format!("x{i}")).collect()
        }
    }

    /// The standard form in dimension `r`: `<e_i, e_{i+h}> = 1` for
    /// `i <= h = r/2`. For odd `r` the last basis vector spans the radical.
    ///
    /// In dimension 2 this is `<x, y> = 1`; in general its Gram matrix is the
    /// block matrix `[[0, I], [-I, 0]]`.
    pub fn standard(field: FieldSpec, r: usize) -> Result<Self> {
        let h = r / 2;
        let mut gram = vec![vec![Scalar::zero(field); r]; r];
        for i in 0..h {
            gram[i][i + h] = Scalar::one(field);
            gram[i + h][i] = -Scalar::one(field);
        }
        SymplecticSpace::new(field, SymplecticSpace::default_names(r), gram)
    }

    pub fn with_gram(field: FieldSpec, gram: Vec<Vec<Scalar>>) -> Result<Self> {
        SymplecticSpace::new(field, SymplecticSpace::default_names(gram.len()), gram)
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    /// `<e_i, e_j>` for 0-based basis indices.
    pub fn form(&self, i: Letter, j: Letter) -> &Scalar {
        &self.gram[i as usize][j as usize]
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::rank(&self.gram, self.dim()) == self.dim()
    }

    /// True for the dimension-2 space with `<x, y> = 1`.
    pub fn is_standard_plane(&self) -> bool {
        self.dim() == 2 && self.gram[0][1].is_one()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_letter() {
            Some(a) if a as usize >= self.dim() => Err(Error::LetterOutOfRange {
                letter: a as usize,
                dim: self.dim(),
            }),
            _ => Ok(()),
        }
    }

    /// Renders a word: concatenated labels when every label is a single
    /// character, dot-separated 1-based indices otherwise. The empty word is
    /// `()`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "()".into();
        }
        if self.single_char_labels() {
            w.letters()
                .iter()
                .map(|&a| self.names[a as usize].as_str())
                .collect()
        } else {
            w.letters()
                .iter()
                .map(|&a| (a as usize + 1).to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub(crate) fn single_char_labels(&self) -> bool {
        self.dim() <= 26
            && self
                .names
                .iter()
                .all(|n| n.chars().count() == 1 && !n.starts_with(|c: char| c.is_ascii_digit()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_plane_form() {
        let v = SymplecticSpace::standard(FieldSpec::RATIONALS, 2).unwrap();
        let q = FieldSpec::RATIONALS;
        assert_eq!(v.form(0, 1), &Scalar::one(q));
        assert_eq!(v.form(0, 0), &Scalar::zero(q));
        assert_eq!(v.form(1, 0), &Scalar::from_i64(q, -1));
        assert!(v.is_standard_plane());
        assert!(v.is_nondegenerate());
        assert_eq!(v.names(), &["x", "y"]);
    }

    #[test]
    fn odd_dimension_is_degenerate() {
        let v = SymplecticSpace::standard(FieldSpec::RATIONALS, 3).unwrap();
        assert!(!v.is_nondegenerate());
        assert_eq!(v.format_word(&Word::new(vec![0, 2, 1])), "1.3.2");
    }

    #[test]
    fn rejects_non_alternating() {
        let q = FieldSpec::RATIONALS;
        let one = Scalar::one(q);
        let zero = Scalar::zero(q);
        let symmetric = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        assert!(matches!(
            SymplecticSpace::with_gram(q, symmetric.clone()),
            Err(Error::NotAlternating(_))
        ));
        // over F_2 the symmetric matrix with zero diagonal is alternating
        let f2 = FieldSpec::prime(2).unwrap();
        let lift = |m: &Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
            m.iter()
                .map(|r| r.iter().map(|s| Scalar::from_rational(f2, s.as_rational().unwrap()).unwrap()).collect())
                .collect()
        };
        assert!(SymplecticSpace::with_gram(f2, lift(&symmetric)).is_ok());
        let diag = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]];
        assert!(SymplecticSpace::with_gram(f2, lift(&diag)).is_err());
    }

    #[test]
    fn rejects_bad_labels() {
        let q = FieldSpec::RATIONALS;
        let gram = SymplecticSpace::standard(q, 2).unwrap().gram().to_vec();
        assert!(SymplecticSpace::new(q, vec!["x".into(), "x".into()], gram.clone()).is_err());
        assert!(SymplecticSpace::new(q, vec!["x".into(), "a b".into()], gram).is_err());
    }

    #[test]
    fn word_formatting() {
        let v = SymplecticSpace::standard(FieldSpec::RATIONALS, 2).unwrap();
        assert_eq!(v.format_word(&Word::new(vec![0, 1, 1])), "xyy");
        assert_eq!(v.format_word(&Word::empty()), "()");
        assert!(v.check_word(&Word::new(vec![2])).is_err());
    }
}
