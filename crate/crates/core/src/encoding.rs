//! Word encodings of the universal triangle-free graph and the universal partial order.
//!
//! Graph vertices are 1-parameter words over `{0}`. For `|U| < |V|`, `U ~ V`
//! iff `V` carries `λ0` at position `|U|` and the two words never carry `λ0`
//! at the same position before that. Words of equal length are never adjacent.
//!
//! Order vertices are words over `{L, X, R}` (`L < X < R`), and `w ≺ w'` iff
//! some position holds `(L, R)` with every earlier position lexicographically
//! non-decreasing from `w` to `w'`.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structure::{self, Structure};
use crate::words::{substitute, Alphabet, Letter, ParameterWord};

pub const ZERO: Letter = Letter::Sym(0);
pub const LAMBDA: Letter = Letter::Param(0);
pub const L: Letter = Letter::Sym(0);
pub const X: Letter = Letter::Sym(1);
pub const R: Letter = Letter::Sym(2);

/// Which word-encoded structure a set of words lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordKind {
    /// 1-parameter words over `{0}` under [`graph_edge`].
    Graph,
    /// Parameter-free words over `{L, X, R}` under [`order_leq`].
    Poset,
}

impl WordKind {
    pub fn alphabet(self) -> Alphabet {
        match self {
            WordKind::Graph => Alphabet::zero(),
            WordKind::Poset => Alphabet::lxr(),
        }
    }

    /// Parameter count of a vertex.
    pub fn vertex_params(self) -> usize {
        match self {
            WordKind::Graph => 1,
            WordKind::Poset => 0,
        }
    }

    pub fn related(self, u: &ParameterWord, v: &ParameterWord) -> bool {
        match self {
            WordKind::Graph => graph_edge(u, v),
            WordKind::Poset => order_leq(u, v).holds,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WordKind::Graph => "graph",
            WordKind::Poset => "poset",
        }
    }
}

impl std::str::FromStr for WordKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(WordKind::Graph),
            "poset" => Ok(WordKind::Poset),
            other => Err(Error::KindUnsupported(other.to_string())),
        }
    }
}

pub fn graph_edge(u: &ParameterWord, v: &ParameterWord) -> bool {
    let (short, long) = match u.len().cmp(&v.len()) {
        Ordering::Less => (u, v),
        Ordering::Greater => (v, u),
        Ordering::Equal => return false,
    };
    let n = short.len();
    long.letters()[n] == LAMBDA
        && !short.letters().iter().zip(long.letters()).any(|(&a, &b)| a == LAMBDA && b == LAMBDA)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderComparison {
    pub holds: bool,
    /// `i(w, w')` when `w ≺ w'` strictly.
    pub witness: Option<usize>,
}

/// `w ⪯ w'`, with the least witness index for strict comparisons.
pub fn order_leq(w: &ParameterWord, w2: &ParameterWord) -> OrderComparison {
    if w == w2 {
        return OrderComparison { holds: true, witness: None };
    }
    for (i, (&a, &b)) in w.letters().iter().zip(w2.letters()).enumerate() {
        if a == L && b == R {
            return OrderComparison { holds: true, witness: Some(i) };
        }
        if a > b {
            break;
        }
    }
    OrderComparison { holds: false, witness: None }
}

/// Output of [`encode_triangle_free`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEncoding {
    pub words: Vec<ParameterWord>,
    /// Vertices without an earlier neighbour; their words carry no `λ0`.
    pub parameter_free: Vec<usize>,
}

/// `φ(i)` has length `i`, with `λ0` at `j` iff `{j, i}` is an edge.
pub fn encode_triangle_free(h: &Structure) -> Result<GraphEncoding> {
    if !structure::is_triangle_free(h) {
        return Err(Error::NotTriangleFree);
    }
    let n = h.size();
    let words: Vec<ParameterWord> = (0..n)
        .map(|i| {
            let letters = (0..i).map(|j| if h.adjacent(j, i) { LAMBDA } else { ZERO }).collect();
            ParameterWord::from_letters(letters).expect("at most one parameter")
        })
        .collect();
    for (i, j) in (0..n).tuple_combinations() {
        if graph_edge(&words[i], &words[j]) != h.adjacent(i, j) {
            return Err(Error::InternalCheckFailed(format!("adjacency of {i},{j} not reproduced")));
        }
    }
    let parameter_free = (0..n).filter(|&i| words[i].params() == 0).collect();
    Ok(GraphEncoding { words, parameter_free })
}

/// `φ(j)` has length `2j + 2`: pairs `LL`, `RR`, `XX` against earlier vertices, then `LR`.
pub fn encode_poset(p: &Structure) -> Result<Vec<ParameterWord>> {
    if let Some(why) = structure::partial_order_violation(p, 0) {
        return Err(Error::NotPartialOrder(why));
    }
    let n = p.size();
    let words: Vec<ParameterWord> = (0..n)
        .map(|j| {
            let mut letters = Vec::with_capacity(2 * j + 2);
            for i in 0..j {
                let pair = if p.le(j, i) {
                    L
                } else if p.le(i, j) {
                    R
                } else {
                    X
                };
                letters.extend([pair, pair]);
            }
            letters.extend([L, R]);
            ParameterWord::from_letters(letters).expect("parameter-free")
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && order_leq(&words[i], &words[j]).holds != p.le(i, j) {
                return Err(Error::InternalCheckFailed(format!("comparability of {i},{j} not reproduced")));
            }
        }
    }
    Ok(words)
}

/// Structure induced on a set of words, vertices in shortlex order.
///
/// Returns the structure and the sorted vertex list.
pub fn induced_structure(set: &[ParameterWord], kind: WordKind) -> (Structure, Vec<ParameterWord>) {
    let mut words = set.to_vec();
    words.sort();
    words.dedup();
    let n = words.len();
    let s = match kind {
        WordKind::Graph => {
            let edges: Vec<(usize, usize)> =
                (0..n).tuple_combinations().filter(|&(i, j)| graph_edge(&words[i], &words[j])).collect();
            Structure::graph(n, &edges)
        }
        WordKind::Poset => Structure::poset_from_fn(n, |i, j| order_leq(&words[i], &words[j]).holds),
    };
    (s, words)
}

/// The map `U ↦ W(U)` preserves and reflects the relation on `set`.
pub fn check_substitution_preservation(w: &ParameterWord, set: &[ParameterWord], kind: WordKind) -> Result<bool> {
    let images = set.iter().map(|u| substitute(w, u)).collect::<Result<Vec<_>>>()?;
    for i in 0..set.len() {
        for j in 0..set.len() {
            if i == j {
                continue;
            }
            if kind.related(&set[i], &set[j]) != kind.related(&images[i], &images[j]) {
                return Ok(false);
            }
        }
    }
    // injectivity, so the induced structures have the same size
    Ok(images.iter().all_unique() == set.iter().all_unique())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::validate;

    fn g(s: &str) -> ParameterWord {
        validate(s, &Alphabet::zero()).unwrap()
    }

    fn o(s: &str) -> ParameterWord {
        validate(s, &Alphabet::lxr()).unwrap()
    }

    #[test]
    fn graph_edge_examples() {
        assert!(graph_edge(&g("<0>"), &g("0<0>")));
        assert!(graph_edge(&g("0<0>"), &g("<0>")));
        assert!(!graph_edge(&g("<0>"), &g("<0>0")));
        assert!(!graph_edge(&g("<0>"), &g("<0><0>")));
        assert!(!graph_edge(&g("0<0>"), &g("<0>0")));
        assert!(!graph_edge(&g("<0>"), &g("<0>")));
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_leq(&o("L"), &o("R")), OrderComparison { holds: true, witness: Some(0) });
        assert!(!order_leq(&o("LX"), &o("XR")).holds);
        assert!(!order_leq(&o("XR"), &o("LX")).holds);
        for w in ["", "L", "XRL"] {
            assert!(order_leq(&o(w), &o(w)).holds);
        }
        // the witness may come after equal letters, but not after a decrease
        assert_eq!(order_leq(&o("XL"), &o("XR")).witness, Some(1));
        assert!(!order_leq(&o("RL"), &o("XR")).holds);
        assert_eq!(order_leq(&o("LL"), &o("R")).witness, Some(0));
    }

    #[test]
    fn encode_triangle_free_examples() {
        let edge = Structure::graph(2, &[(0, 1)]);
        let enc = encode_triangle_free(&edge).unwrap();
        assert_eq!(enc.words, vec![ParameterWord::empty(), g("<0>")]);
        assert_eq!(enc.parameter_free, vec![0]);
        let path = Structure::graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(encode_triangle_free(&path).unwrap().words[2], g("0<0>"));
        let triangle = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(encode_triangle_free(&triangle), Err(Error::NotTriangleFree));
    }

    #[test]
    fn encode_poset_examples() {
        assert_eq!(encode_poset(&Structure::poset(1, &[])).unwrap(), vec![o("LR")]);
        let chain = encode_poset(&Structure::poset(2, &[(0, 1)])).unwrap();
        assert_eq!(chain[1], o("RRLR"));
        let anti = encode_poset(&Structure::poset(2, &[])).unwrap();
        assert_eq!(anti, vec![o("LR"), o("XXLR")]);
        assert!(!order_leq(&anti[0], &anti[1]).holds && !order_leq(&anti[1], &anti[0]).holds);
        let bad = Structure::poset(3, &[(0, 1), (1, 2)]);
        assert!(matches!(encode_poset(&bad), Err(Error::NotPartialOrder(_))));
    }

    #[test]
    fn induced_structure_examples() {
        let (s, _) = induced_structure(&[g("<0>"), g("0<0>")], WordKind::Graph);
        assert_eq!(s.edges(), vec![(0, 1)]);
        let (p, verts) = induced_structure(&[o("R"), o("L")], WordKind::Poset);
        assert_eq!(verts, vec![o("L"), o("R")]);
        assert!(p.le(0, 1) && !p.le(1, 0));
        let (one, _) = induced_structure(&[o("X")], WordKind::Poset);
        assert_eq!(one.size(), 1);
    }

    #[test]
    fn preservation_under_identity_and_arity() {
        let set = vec![g("<0>"), g("0<0>"), g("<0>0<0>")];
        assert!(check_substitution_preservation(&ParameterWord::identity(3), &set, WordKind::Graph).unwrap());
        assert!(matches!(
            check_substitution_preservation(&ParameterWord::identity(2), &set, WordKind::Graph),
            Err(Error::SubstitutionArity { .. })
        ));
    }
}
