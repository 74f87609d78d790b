//! Finite Ramsey embeddings into the word structures `G_n` and `O_n`.
//!
//! An ordered triangle-free graph `B` is embedded into `G_n` through its
//! Katětov functions (independent sets, as `{0, λ0}`-words sorted
//! lexicographically); a partial order with linear extension is embedded into
//! `O_n` through its downsets (as `{L, X}`-words). For a copy `Ã` of `A` in
//! `B`, a copy word `W` is a parameter word with `W(φ'(A)) = φ(Ã)`, where `φ'`
//! is the same embedding built for `A`. Constructors here verify every claimed
//! property on the instance before returning.

use itertools::Itertools;

use crate::encoding::{graph_edge, order_leq, L, LAMBDA, R, X, ZERO};
use crate::error::{Error, Result};
use crate::structure::{self, Structure};
use crate::words::{substitute, Alphabet, Letter, ParameterWord};

/// Katětov functions of an ordered triangle-free graph, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatetovSystem {
    pub base: Structure,
    /// Each function as a word of length `|B|` over `{0, λ0}`.
    pub functions: Vec<Vec<Letter>>,
}

impl KatetovSystem {
    pub fn d(&self) -> usize {
        self.functions.len()
    }

    pub fn index_of(&self, f: &[Letter]) -> Option<usize> {
        self.functions.binary_search_by(|g| g.as_slice().cmp(f)).ok()
    }
}

/// Downset indicator functions of a partial order with linear extension, sorted with `L < X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownsetSystem {
    pub base: Structure,
    pub functions: Vec<Vec<Letter>>,
}

impl DownsetSystem {
    pub fn d(&self) -> usize {
        self.functions.len()
    }

    pub fn index_of(&self, f: &[Letter]) -> Option<usize> {
        self.functions.binary_search_by(|g| g.as_slice().cmp(f)).ok()
    }
}

/// An embedding `φ` of `B` into a word structure of parameter length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrnEmbedding {
    pub d: usize,
    pub n: usize,
    pub words: Vec<ParameterWord>,
}

/// A verified copy word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyWord {
    pub word: ParameterWord,
    /// Parameter count `k` of `W` (the `n` of `A`'s own embedding).
    pub k: usize,
    pub d: usize,
    pub d_prime: usize,
}

fn all_functions(n: usize, lo: Letter, hi: Letter) -> impl Iterator<Item = Vec<Letter>> {
    (0..1u64 << n).map(move |mask| (0..n).map(|v| if mask >> (n - 1 - v) & 1 == 1 { hi } else { lo }).collect())
}

fn require_triangle_free(b: &Structure) -> Result<()> {
    if !structure::is_graph(b) || !structure::is_triangle_free(b) {
        return Err(Error::NotTriangleFree);
    }
    Ok(())
}

fn require_poset_linext(b: &Structure) -> Result<()> {
    if let Some(why) = structure::partial_order_violation(b, 0) {
        return Err(Error::NotPartialOrder(why));
    }
    if !structure::integer_order_is_linear_extension(b) {
        return Err(Error::NotPartialOrder("integer order is not a linear extension".into()));
    }
    Ok(())
}

pub fn katetov_functions(b: &Structure) -> Result<KatetovSystem> {
    require_triangle_free(b)?;
    let n = b.size();
    let mut functions: Vec<Vec<Letter>> = all_functions(n, ZERO, LAMBDA)
        .filter(|f| (0..n).tuple_combinations().all(|(u, v)| !(f[u] == LAMBDA && f[v] == LAMBDA && b.adjacent(u, v))))
        .collect();
    functions.sort();
    Ok(KatetovSystem { base: b.clone(), functions })
}

pub fn downset_functions(b: &Structure) -> Result<DownsetSystem> {
    require_poset_linext(b)?;
    let n = b.size();
    let mut functions: Vec<Vec<Letter>> = all_functions(n, L, X)
        .filter(|f| (0..n).all(|v| f[v] != L || (0..n).all(|u| !b.le(u, v) || f[u] == L)))
        .collect();
    functions.sort();
    Ok(DownsetSystem { base: b.clone(), functions })
}

fn check_lex_monotone(words: &[ParameterWord]) -> Result<()> {
    for (u, v) in (0..words.len()).tuple_windows() {
        if words[u].lex_cmp(&words[v]) != std::cmp::Ordering::Less {
            return Err(Error::InternalCheckFailed(format!("lexicographic order not preserved at {u},{v}")));
        }
    }
    Ok(())
}

fn graph_words(b: &Structure, sys: &KatetovSystem) -> Vec<ParameterWord> {
    let d = sys.d();
    (0..b.size())
        .map(|v| {
            let mut letters: Vec<Letter> = sys.functions.iter().map(|f| f[v]).collect();
            letters.extend((0..v).map(|u| if b.adjacent(u, v) { LAMBDA } else { ZERO }));
            debug_assert_eq!(letters.len(), d + v);
            ParameterWord::from_letters(letters).expect("at most one parameter")
        })
        .collect()
}

/// `φ(v)`: the Katětov values of `v`, then adjacency to earlier vertices; `n = d + |B|`.
pub fn embed_graph_grn(b: &Structure) -> Result<GrnEmbedding> {
    let sys = katetov_functions(b)?;
    let words = graph_words(b, &sys);
    for (v, w) in words.iter().enumerate() {
        if w.params() != 1 {
            return Err(Error::InternalCheckFailed(format!("φ({v}) is not a 1-parameter word")));
        }
    }
    for (u, v) in (0..b.size()).tuple_combinations() {
        if graph_edge(&words[u], &words[v]) != b.adjacent(u, v) {
            return Err(Error::InternalCheckFailed(format!("adjacency of {u},{v} not reproduced")));
        }
    }
    check_lex_monotone(&words)?;
    Ok(GrnEmbedding { d: sys.d(), n: sys.d() + b.size(), words })
}

fn poset_words(b: &Structure, sys: &DownsetSystem) -> Vec<ParameterWord> {
    (0..b.size())
        .map(|v| {
            let mut letters: Vec<Letter> = sys.functions.iter().map(|f| f[v]).collect();
            letters.extend(std::iter::repeat_n(R, v));
            letters.push(L);
            ParameterWord::from_letters(letters).expect("parameter-free")
        })
        .collect()
}

/// `φ(v)`: the downset values of `v`, then `R^v L`; `n = d + |B| + 1`.
pub fn embed_poset_grn(b: &Structure) -> Result<GrnEmbedding> {
    let sys = downset_functions(b)?;
    let words = poset_words(b, &sys);
    for u in 0..b.size() {
        for v in 0..b.size() {
            if u != v && order_leq(&words[u], &words[v]).holds != b.le(u, v) {
                return Err(Error::InternalCheckFailed(format!("comparability of {u},{v} not reproduced")));
            }
        }
    }
    check_lex_monotone(&words)?;
    Ok(GrnEmbedding { d: sys.d(), n: sys.d() + b.size() + 1, words })
}

fn check_copy(a: &Structure, b: &Structure, copy: &[usize]) -> Result<()> {
    let mut a_ord = a.clone();
    let mut b_ord = b.clone();
    a_ord.set_ordered(true);
    b_ord.set_ordered(true);
    if !structure::is_embedding(&a_ord, &b_ord, copy) {
        return Err(Error::NotAnEmbedding(format!("{copy:?} is not an order-preserving embedding")));
    }
    Ok(())
}

fn restrict(f: &[Letter], copy: &[usize]) -> Vec<Letter> {
    copy.iter().map(|&v| f[v]).collect()
}

fn param(i: usize) -> Letter {
    Letter::Param(i as u16)
}

fn verify_round_trip(
    w: &ParameterWord,
    template: &[ParameterWord],
    target: &[ParameterWord],
    copy: &[usize],
    alphabet: &Alphabet,
) -> Result<()> {
    for (a, u) in template.iter().enumerate() {
        let image = substitute(w, u)?;
        if image != target[copy[a]] {
            return Err(Error::InternalCheckFailed(format!(
                "W = {} gives W(φ'({a})) = {} but φ({}) = {}",
                w.render_token(alphabet),
                image.render_token(alphabet),
                copy[a],
                target[copy[a]].render_token(alphabet)
            )));
        }
    }
    Ok(())
}

/// Copy word for a copy of the ordered triangle-free graph `A` in `B`.
///
/// `copy[a]` is the image of vertex `a`.
pub fn copy_word_graph(b: &Structure, a: &Structure, copy: &[usize]) -> Result<CopyWord> {
    require_triangle_free(a)?;
    require_triangle_free(b)?;
    check_copy(a, b, copy)?;
    let sys_b = katetov_functions(b)?;
    let sys_a = katetov_functions(a)?;
    let (d, d_prime) = (sys_b.d(), sys_a.d());
    let k = d_prime + a.size();

    let h = sys_b
        .functions
        .iter()
        .map(|f| sys_a.index_of(&restrict(f, copy)))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::InternalCheckFailed("restriction is not a Katětov function of A".into()))?;

    let max_copy = copy.iter().copied().max().unwrap_or(0);
    let mut letters: Vec<Letter> = h.iter().map(|&i| param(i)).collect();
    for v in 0..=max_copy {
        let letter = match copy.iter().position(|&c| c == v) {
            Some(idx) => param(d_prime + idx),
            None => {
                let nbhd: Vec<Letter> = copy.iter().map(|&c| if b.adjacent(v, c) { LAMBDA } else { ZERO }).collect();
                let e = sys_a.index_of(&nbhd).ok_or_else(|| {
                    Error::InternalCheckFailed(format!("neighbourhood of {v} in the copy is not independent"))
                })?;
                param(e)
            }
        };
        letters.push(letter);
    }
    if copy.is_empty() {
        letters.truncate(d);
    }
    let word = ParameterWord::from_letters(letters)
        .map_err(|e| Error::InternalCheckFailed(format!("copy word is not a parameter word: {e}")))?;
    if word.params() != k {
        return Err(Error::InternalCheckFailed(format!("copy word has {} parameters, expected {k}", word.params())));
    }
    if word.get(0) != Some(param(0)) {
        return Err(Error::InternalCheckFailed("copy word does not start with λ0".into()));
    }
    // first occurrence of λj (j < d') sits at the zero extension of f'_j
    let first = word.first_occurrences();
    for (j, fa) in sys_a.functions.iter().enumerate() {
        let mut ext = vec![ZERO; b.size()];
        for (idx, &c) in copy.iter().enumerate() {
            ext[c] = fa[idx];
        }
        let pos = sys_b.index_of(&ext).ok_or_else(|| {
            Error::InternalCheckFailed(format!("zero extension of f'_{j} is not a Katětov function of B"))
        })?;
        if first[j] != pos {
            return Err(Error::InternalCheckFailed(format!(
                "λ{j} first occurs at {} instead of the zero extension at {pos}",
                first[j]
            )));
        }
    }

    let template = graph_words(a, &sys_a);
    let target = graph_words(b, &sys_b);
    verify_round_trip(&word, &template, &target, copy, &Alphabet::zero())?;
    Ok(CopyWord { word, k, d, d_prime })
}

/// Builds the copy word for a copy of the poset `A` in `B` and checks it is a parameter word
/// whose first occurrences follow the lexicographically minimal downset extensions.
///
/// The substitution round trip is left to [`copy_word_poset`].
pub fn build_copy_word_poset(b: &Structure, a: &Structure, copy: &[usize]) -> Result<CopyWord> {
    require_poset_linext(a)?;
    require_poset_linext(b)?;
    check_copy(a, b, copy)?;
    let sys_b = downset_functions(b)?;
    let sys_a = downset_functions(a)?;
    let (d, d_prime) = (sys_b.d(), sys_a.d());
    let k = d_prime + a.size() + 1;

    let h = sys_b
        .functions
        .iter()
        .map(|f| sys_a.index_of(&restrict(f, copy)))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::InternalCheckFailed("restriction is not a downset of A".into()))?;

    let mut letters: Vec<Letter> = h.iter().map(|&i| param(i)).collect();
    if let Some(&max_copy) = copy.iter().max() {
        for v in 0..=max_copy {
            letters.push(match copy.iter().position(|&c| c == v) {
                Some(idx) => param(d_prime + idx),
                None => R,
            });
        }
        letters.push(param(d_prime + a.size()));
    } else {
        letters.push(param(d_prime));
    }
    let word = ParameterWord::from_letters(letters)
        .map_err(|e| Error::InternalCheckFailed(format!("copy word is not a parameter word: {e}")))?;
    if word.params() != k {
        return Err(Error::InternalCheckFailed(format!("copy word has {} parameters, expected {k}", word.params())));
    }
    // λj first occurs at the lexicographically minimal extension of f'_j
    let first = word.first_occurrences();
    for (j, fa) in sys_a.functions.iter().enumerate() {
        let ext: Vec<Letter> = (0..b.size())
            .map(|v| match copy.iter().position(|&c| c == v) {
                Some(idx) => fa[idx],
                None if copy.iter().enumerate().any(|(idx, &u)| fa[idx] == X && b.le(u, v)) => X,
                None => L,
            })
            .collect();
        let pos = sys_b
            .index_of(&ext)
            .ok_or_else(|| Error::InternalCheckFailed(format!("minimal extension of f'_{j} is not a downset of B")))?;
        if first[j] != pos {
            return Err(Error::InternalCheckFailed(format!(
                "λ{j} first occurs at {} instead of the minimal extension at {pos}",
                first[j]
            )));
        }
    }
    Ok(CopyWord { word, k, d, d_prime })
}

/// Copy word for a copy of the partial order with linear extension `A` in `B`,
/// verified by substitution.
pub fn copy_word_poset(b: &Structure, a: &Structure, copy: &[usize]) -> Result<CopyWord> {
    let cw = build_copy_word_poset(b, a, copy)?;
    let template = poset_words(a, &downset_functions(a)?);
    let target = poset_words(b, &downset_functions(b)?);
    verify_round_trip(&cw.word, &template, &target, copy, &Alphabet::lxr())?;
    Ok(cw)
}

/// The images of a copy occupy consecutive vertices of `B`.
pub fn is_interval_copy(copy: &[usize]) -> bool {
    copy.windows(2).all(|w| w[1] == w[0] + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{validate, Alphabet};

    fn g(s: &str) -> ParameterWord {
        validate(s, &Alphabet::zero()).unwrap()
    }

    fn o(s: &str) -> ParameterWord {
        validate(s, &Alphabet::lxr()).unwrap()
    }

    #[test]
    fn katetov_examples() {
        let edge = katetov_functions(&Structure::ordered_graph(2, &[(0, 1)])).unwrap();
        assert_eq!(edge.functions, vec![vec![ZERO, ZERO], vec![ZERO, LAMBDA], vec![LAMBDA, ZERO]]);
        assert_eq!(katetov_functions(&Structure::ordered_graph(2, &[])).unwrap().d(), 4);
        let one = katetov_functions(&Structure::ordered_graph(1, &[])).unwrap();
        assert_eq!(one.functions, vec![vec![ZERO], vec![LAMBDA]]);
        let tri = Structure::ordered_graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(katetov_functions(&tri), Err(Error::NotTriangleFree));
    }

    #[test]
    fn embed_graph_examples() {
        let e = embed_graph_grn(&Structure::ordered_graph(2, &[(0, 1)])).unwrap();
        assert_eq!(e.words, vec![g("00<0>"), g("0<0>0<0>")]);
        assert_eq!((e.d, e.n), (3, 5));
        assert!(graph_edge(&e.words[0], &e.words[1]));
        let single = embed_graph_grn(&Structure::ordered_graph(1, &[])).unwrap();
        assert_eq!(single.words, vec![g("0<0>")]);
        let anti = embed_graph_grn(&Structure::ordered_graph(2, &[])).unwrap();
        assert!(!graph_edge(&anti.words[0], &anti.words[1]));
    }

    #[test]
    fn copy_word_graph_examples() {
        let b = Structure::ordered_graph(2, &[(0, 1)]);
        let a = Structure::ordered_graph(1, &[]);
        let cw = copy_word_graph(&b, &a, &[0]).unwrap();
        assert_eq!(cw.k, 3);
        assert_eq!(cw.word.get(0), Some(Letter::Param(0)));
        let cw = copy_word_graph(&b, &b, &[0, 1]).unwrap();
        let phi = embed_graph_grn(&b).unwrap().words;
        for w in &phi {
            assert!(phi.contains(&substitute(&cw.word, w).unwrap()));
        }
        assert!(matches!(
            copy_word_graph(&b, &Structure::ordered_graph(2, &[]), &[0, 1]),
            Err(Error::NotAnEmbedding(_))
        ));
        assert!(matches!(copy_word_graph(&b, &a, &[1, 0]), Err(Error::NotAnEmbedding(_))));
    }

    #[test]
    fn downset_and_poset_embedding_examples() {
        let chain = Structure::poset_linext(2, &[(0, 1)]);
        let sys = downset_functions(&chain).unwrap();
        assert_eq!(sys.functions, vec![vec![L, L], vec![L, X], vec![X, X]]);
        let e = embed_poset_grn(&chain).unwrap();
        assert_eq!(e.words, vec![o("LLXL"), o("LXXRL")]);
        assert!(order_leq(&e.words[0], &e.words[1]).holds);
        let anti = Structure::poset_linext(2, &[]);
        let e = embed_poset_grn(&anti).unwrap();
        assert_eq!(e.d, 4);
        assert!(!order_leq(&e.words[0], &e.words[1]).holds && !order_leq(&e.words[1], &e.words[0]).holds);
    }

    #[test]
    fn copy_word_poset_on_single_vertex() {
        let b = Structure::poset_linext(2, &[(0, 1)]);
        let a = Structure::poset_linext(1, &[]);
        let cw = copy_word_poset(&b, &a, &[1]).unwrap();
        assert_eq!(cw.word.render(&Alphabet::lxr()), "<0><1><1>R<2><3>");
        assert_eq!(cw.k, 4);
    }

    #[test]
    fn copy_word_poset_fails_on_gapped_copy() {
        // 0 ⊴ 1 ⊴ 2, copy of the 2-chain skipping the middle vertex
        let b = Structure::poset_linext(3, &[(0, 1), (1, 2), (0, 2)]);
        let a = Structure::poset_linext(2, &[(0, 1)]);
        assert!(build_copy_word_poset(&b, &a, &[0, 2]).is_ok());
        assert!(matches!(copy_word_poset(&b, &a, &[0, 2]), Err(Error::InternalCheckFailed(_))));
        assert!(copy_word_poset(&b, &a, &[0, 1]).is_ok());
        assert!(copy_word_poset(&b, &a, &[1, 2]).is_ok());
    }
}
