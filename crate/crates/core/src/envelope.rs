//! Minimal envelopes and embedding types.
//!
//! The envelope is built column by column ("slices"): slice `j` collects the
//! `j`-th letter of every word, with `*` past a word's end. A constant slice
//! over the alphabet becomes that letter, a slice compatible with an earlier
//! one copies the earliest such column, and every other slice opens a fresh
//! parameter. The result is an envelope within [`dim_bound`] parameters.
//!
//! A slice counts as constant only when every entry is the same symbol, with no
//! padding. Sets such as `{λ0, λ0λ00}` therefore get `λ0λ1λ2` although
//! `λ0λ10` is an envelope with two parameters; [`minimal_envelopes_exhaustive`]
//! finds the true minimum on small sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{substitute, Alphabet, Letter, ParameterWord, Space};

/// A parameter word used as an envelope, with its first-occurrence positions cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Envelope {
    word: ParameterWord,
    first_occ: Vec<usize>,
}

impl Envelope {
    pub fn new(word: ParameterWord) -> Self {
        let first_occ = word.first_occurrences();
        Envelope { word, first_occ }
    }

    pub fn word(&self) -> &ParameterWord {
        &self.word
    }

    pub fn first_occurrences(&self) -> &[usize] {
        &self.first_occ
    }

    pub fn dim(&self) -> usize {
        self.first_occ.len()
    }

    /// The unique `U'` with `W(U') = u`, if `u` lies in the subspace.
    pub fn preimage(&self, u: &ParameterWord) -> Option<ParameterWord> {
        let cut =
            if u.len() == self.word.len() { self.dim() } else { self.first_occ.iter().position(|&p| p == u.len())? };
        let letters: Vec<Letter> = self.first_occ[..cut].iter().map(|&p| u.letters()[p]).collect();
        let candidate = ParameterWord::from_letters(letters).ok()?;
        match substitute(&self.word, &candidate) {
            Ok(image) if &image == u => Some(candidate),
            _ => None,
        }
    }
}

/// A set of words that is its own embedding type; elements kept in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddingType {
    elements: Vec<ParameterWord>,
    dim: usize,
}

impl EmbeddingType {
    pub(crate) fn from_parts(elements: Vec<ParameterWord>, dim: usize) -> Self {
        EmbeddingType { elements: canonical_set(&elements), dim }
    }

    pub fn elements(&self) -> &[ParameterWord] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `max{|U| : U ∈ T}`.
    pub fn max_len(&self) -> usize {
        self.elements.iter().map(ParameterWord::len).max().unwrap_or(0)
    }

    pub fn into_elements(self) -> Vec<ParameterWord> {
        self.elements
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<String> = self.elements.iter().map(|e| e.render_token(alphabet)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for EmbeddingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

fn canonical_set(set: &[ParameterWord]) -> Vec<ParameterWord> {
    let mut v = set.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Slice `j` of `set` is compatible with slice `i < j`.
fn compatible(set: &[ParameterWord], i: usize, j: usize) -> bool {
    set.iter().all(|w| match (w.get(i), w.get(j)) {
        (a, b) if a == b => true,
        (_, None) => j != w.len(),
        _ => false,
    })
}

/// Envelope produced by the slice construction; [`tau`] and the type census use it.
pub fn minimal_envelope(set: &[ParameterWord]) -> Envelope {
    let set = canonical_set(set);
    let m = set.iter().map(ParameterWord::len).max().unwrap_or(0);
    let mut letters: Vec<Letter> = Vec::with_capacity(m);
    let mut next_param: u16 = 0;
    for j in 0..m {
        let constant = match set[0].get(j) {
            Some(Letter::Sym(s)) if set.iter().all(|w| w.get(j) == Some(Letter::Sym(s))) => Some(Letter::Sym(s)),
            _ => None,
        };
        let letter = match constant {
            Some(l) => l,
            None => match (0..j).find(|&i| compatible(&set, i, j)) {
                Some(i) => letters[i],
                None => {
                    next_param += 1;
                    Letter::Param(next_param - 1)
                }
            },
        };
        letters.push(letter);
    }
    let word = ParameterWord::from_letters(letters).expect("slice construction yields a parameter word");
    Envelope::new(word)
}

/// `W` is an envelope of every word in `set`.
pub fn is_envelope(w: &ParameterWord, set: &[ParameterWord]) -> bool {
    let env = Envelope::new(w.clone());
    set.iter().all(|u| env.preimage(u).is_some())
}

/// Every envelope of `set` with the fewest parameters, found by scanning
/// `[Σ](m choose k)` for `k = 0, 1, …` where `m` is the longest word length.
///
/// A minimal envelope never exceeds `m` letters: cutting a longer one before the
/// parameter that follows the last used first occurrence loses a parameter.
pub fn minimal_envelopes_exhaustive(set: &[ParameterWord], alphabet_size: usize) -> Result<Vec<Envelope>> {
    let set = canonical_set(set);
    let m = set.iter().map(ParameterWord::len).max().unwrap_or(0);
    for k in 0..=m {
        let found: Vec<Envelope> = Space::exact(alphabet_size, m, k)
            .enumerate()?
            .map(Envelope::new)
            .filter(|env| set.iter().all(|u| env.preimage(u).is_some()))
            .collect();
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Err(Error::InternalCheckFailed("the identity of length m is always an envelope".into()))
}

/// `τ_W(S)`: the preimages of `S` under `W`.
pub fn embedding_type(env: &Envelope, set: &[ParameterWord]) -> Result<EmbeddingType> {
    let mut elements = Vec::with_capacity(set.len());
    for u in set {
        match env.preimage(u) {
            Some(p) => elements.push(p),
            None => return Err(Error::NotInSubspace { word: u.to_string() }),
        }
    }
    Ok(EmbeddingType { elements: canonical_set(&elements), dim: env.dim() })
}

/// `τ(S)`, the embedding type in the slice-built envelope.
pub fn tau(set: &[ParameterWord]) -> EmbeddingType {
    let env = minimal_envelope(set);
    embedding_type(&env, set).expect("a set lies in its own slice envelope")
}

pub fn is_canonical_type(set: &[ParameterWord]) -> bool {
    minimal_envelope(set).word().is_identity()
}

/// `(|Σ|+k)^ℓ + ℓ − |Σ|`, the largest possible minimal-envelope dimension, floored at zero.
pub fn dim_bound(sigma_size: usize, k: usize, ell: usize) -> Result<u128> {
    let base = (sigma_size as u128).checked_add(k as u128).ok_or(Error::Overflow("dim_bound"))?;
    let exp = u32::try_from(ell).map_err(|_| Error::Overflow("dim_bound"))?;
    let pow = base.checked_pow(exp).ok_or(Error::Overflow("dim_bound"))?;
    let total = pow.checked_add(ell as u128).ok_or(Error::Overflow("dim_bound"))?;
    Ok(total.saturating_sub(sigma_size as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{substitute_set, validate};

    fn w(s: &str, a: &Alphabet) -> ParameterWord {
        validate(s, a).unwrap()
    }

    #[test]
    fn example_zero_and_triple_zero() {
        let zero = Alphabet::zero();
        let s = vec![w("0", &zero), w("000", &zero)];
        let env = minimal_envelope(&s);
        assert_eq!(env.word().render(&zero), "0<0>0");
        assert_eq!(env.dim(), 1);
        let t = embedding_type(&env, &s).unwrap();
        assert_eq!(t.elements(), &[ParameterWord::empty(), w("0", &zero)]);
        // the other minimal envelope gives the same type
        let other = Envelope::new(w("0<0><0>", &zero));
        assert_eq!(embedding_type(&other, &s).unwrap().elements(), t.elements());
        assert!(is_envelope(&ParameterWord::identity(4), &s));
    }

    #[test]
    fn envelope_edge_cases() {
        let env = minimal_envelope(&[]);
        assert!(env.word().is_empty());
        assert_eq!(env.dim(), 0);
        let zero = Alphabet::zero();
        let env = minimal_envelope(&[w("<0><0>", &zero)]);
        assert_eq!(env.word().render(&zero), "<0><0>");
        assert_eq!(env.dim(), 1);
    }

    #[test]
    fn embedding_type_examples() {
        let zero = Alphabet::zero();
        let env = Envelope::new(w("0<0>0", &zero));
        assert!(matches!(embedding_type(&env, &[w("00", &zero)]), Err(Error::NotInSubspace { .. })));
        let ab = Alphabet::parse("ab").unwrap();
        let env = Envelope::new(ParameterWord::identity(2));
        assert_eq!(embedding_type(&env, &[w("ab", &ab)]).unwrap().elements(), &[w("ab", &ab)]);
    }

    #[test]
    fn tau_examples() {
        let zero = Alphabet::zero();
        assert_eq!(tau(&[w("0", &zero), w("000", &zero)]).elements(), &[ParameterWord::empty(), w("0", &zero)]);
        let lxr = Alphabet::lxr();
        let t = tau(&[w("LXRL", &lxr)]);
        assert_eq!(t.elements(), &[ParameterWord::empty()]);
        assert_eq!(t.dim(), 0);
        let t = tau(&[w("0<0><0>", &zero)]);
        assert_eq!(t.elements(), &[w("<0>", &zero)]);
        assert_eq!(t.dim(), 1);
        assert_eq!(substitute(&w("0<0><0>", &zero), &w("<0>", &zero)).unwrap(), w("0<0><0>", &zero));
    }

    #[test]
    fn canonical_examples() {
        let zero = Alphabet::zero();
        assert!(is_canonical_type(&[ParameterWord::empty(), w("0", &zero)]));
        assert!(!is_canonical_type(&[w("00", &zero)]));
        assert!(is_canonical_type(&[w("<0>", &zero)]));
        assert!(is_canonical_type(&[]));
    }

    #[test]
    fn dim_bound_examples() {
        assert_eq!(dim_bound(1, 1, 2).unwrap(), 5);
        assert_eq!(dim_bound(3, 0, 2).unwrap(), 8);
        assert_eq!(dim_bound(1, 0, 0).unwrap(), 0);
        assert_eq!(dim_bound(3, 0, 0).unwrap(), 0);
        assert!(matches!(dim_bound(usize::MAX, 1, 2), Err(Error::Overflow(_))));
        assert!(matches!(dim_bound(1000, 0, 100), Err(Error::Overflow(_))));
    }

    #[test]
    fn slice_construction_is_not_always_minimal() {
        let zero = Alphabet::zero();
        let s = vec![w("<0>", &zero), w("<0><0>0", &zero)];
        assert_eq!(minimal_envelope(&s).word().render(&zero), "<0><1><2>");
        let exact = minimal_envelopes_exhaustive(&s, 1).unwrap();
        assert_eq!(exact.len(), 1);
        assert_eq!(exact[0].word().render(&zero), "<0><1>0");
        let ex = minimal_envelopes_exhaustive(&[w("0", &zero), w("000", &zero)], 1).unwrap();
        let words: Vec<String> = ex.iter().map(|e| e.word().render(&zero)).collect();
        assert_eq!(words, ["0<0>0", "0<0><0>"]);
    }

    #[test]
    fn envelope_reconstructs_set() {
        let lxr = Alphabet::lxr();
        let s = vec![w("LXR", &lxr), w("LRRX", &lxr), w("X", &lxr)];
        let env = minimal_envelope(&s);
        let t = embedding_type(&env, &s).unwrap();
        let img = substitute_set(env.word(), t.elements()).unwrap();
        let mut expected = s.clone();
        expected.sort();
        assert_eq!(img.words, expected);
    }
}
