//! Upper bounds on big Ramsey degrees by counting canonical embedding types.
//!
//! A canonical type of size `ℓ` is a set `T` of `ℓ` vertex words whose minimal
//! envelope is the identity, i.e. every slice of `T` opens a fresh parameter.
//! Types are generated slice by slice and bucketed by the isomorphism class of
//! the structure they induce; the bucket size bounds the big Ramsey degree of
//! that class. [`realized_type_oracle`] recomputes the same set independently
//! by applying `τ` to every `ℓ`-set of short vertex words.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use rayon::prelude::*;

use crate::encoding::{induced_structure, WordKind};
use crate::envelope::{dim_bound, is_canonical_type, tau, EmbeddingType};
use crate::error::{Error, Result};
use crate::structure::{self, Kind, Structure};
use crate::words::{Letter, ParameterWord, Space};

const END: u8 = u8::MAX;
const SEP: u8 = u8::MAX - 1;

/// How canonical types are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Grow all words together, one fresh slice at a time.
    Slices,
    /// Test every `ℓ`-set of words up to the dimension bound.
    Filtered,
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub strategy: Strategy,
    pub max_ell_graph: usize,
    pub max_ell_poset: usize,
    /// Search nodes (slices) or candidate sets (filtered) before giving up.
    pub cap: u128,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { strategy: Strategy::Slices, max_ell_graph: 3, max_ell_poset: 2, cap: 200_000_000 }
    }
}

/// Default number of `ℓ`-sets [`realized_type_oracle`] will visit.
pub const DEFAULT_ORACLE_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bucket {
    pub representative: Structure,
    pub types: Vec<EmbeddingType>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub kind: WordKind,
    pub ell: usize,
    pub dim_cap: usize,
    /// Keyed by canonical form of the induced structure.
    pub buckets: BTreeMap<String, Bucket>,
}

impl TypeCensus {
    pub fn total(&self) -> usize {
        self.buckets.values().map(|b| b.types.len()).sum()
    }

    pub fn all_types(&self) -> BTreeSet<EmbeddingType> {
        self.buckets.values().flat_map(|b| b.types.iter().cloned()).collect()
    }

    pub fn bucket_for(&self, a: &Structure) -> Result<Option<&Bucket>> {
        Ok(self.buckets.get(&class_key(a, self.kind)?))
    }

    /// `n_i = max{|U| : U ∈ T_i}` for every type, in bucket order.
    pub fn max_element_lengths(&self) -> Vec<usize> {
        self.buckets.values().flat_map(|b| b.types.iter().map(EmbeddingType::max_len)).collect()
    }
}

fn sigma(kind: WordKind) -> usize {
    kind.alphabet().len()
}

/// Unordered structure of the right kind, for bucketing.
fn normalize(a: &Structure, kind: WordKind) -> Structure {
    let n = a.size();
    match kind {
        WordKind::Graph => Structure::graph(n, &a.edges()),
        WordKind::Poset => Structure::poset_from_fn(n, |u, v| a.le(u, v)),
    }
}

fn class_key(a: &Structure, kind: WordKind) -> Result<String> {
    structure::canonical_form(&normalize(a, kind))
}

/// Short description of a small graph or poset, e.g. `graph n=3 0-1 1-2`.
pub fn describe(a: &Structure) -> String {
    let n = a.size();
    let rels: Vec<String> = match a.kind() {
        Kind::Poset | Kind::PosetLinext => (0..n)
            .cartesian_product(0..n)
            .filter(|&(u, v)| u != v && a.le(u, v))
            .map(|(u, v)| format!("{u}<{v}"))
            .collect(),
        _ => a.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect(),
    };
    let name = match a.kind() {
        Kind::Poset | Kind::PosetLinext => "poset",
        _ => "graph",
    };
    if rels.is_empty() {
        format!("{name} n={n}")
    } else {
        format!("{name} n={n} {}", rels.join(" "))
    }
}

fn encode(w: &ParameterWord, sigma: u8) -> Vec<u8> {
    w.letters()
        .iter()
        .map(|l| match *l {
            Letter::Sym(s) => s,
            Letter::Param(p) => sigma + p as u8,
        })
        .collect()
}

fn decode(bytes: &[u8], sigma: u8) -> ParameterWord {
    let letters =
        bytes.iter().map(|&b| if b < sigma { Letter::Sym(b) } else { Letter::Param(u16::from(b - sigma)) }).collect();
    ParameterWord::from_letters(letters).expect("decoded from a parameter word")
}

struct SliceSearch<'a> {
    ell: usize,
    sigma: u8,
    k: u8,
    max_depth: usize,
    cap: u64,
    nodes: &'a AtomicU64,
    cols: Vec<Vec<u8>>,
    ends: Vec<Option<usize>>,
    used: Vec<u8>,
    out: BTreeSet<Vec<Vec<u8>>>,
}

impl SliceSearch<'_> {
    fn options(&self, w: usize) -> Vec<u8> {
        if self.ends[w].is_some() {
            return vec![END];
        }
        let mut opts = Vec::new();
        if self.used[w] == self.k {
            opts.push(END);
        }
        opts.extend(0..self.sigma);
        let top = self.used[w].min(self.k.saturating_sub(1));
        if self.k > 0 {
            opts.extend((0..=top).map(|p| self.sigma + p));
        }
        opts
    }

    fn candidates(&self) -> Vec<Vec<u8>> {
        let j = self.cols.len();
        (0..self.ell)
            .map(|w| self.options(w))
            .multi_cartesian_product()
            .filter(|col| {
                if col.iter().all(|&c| c == END) {
                    return false;
                }
                if col[0] < self.sigma && col.iter().all(|&c| c == col[0]) {
                    return false;
                }
                !self.cols.iter().any(|prev| {
                    (0..self.ell).all(|w| prev[w] == col[w] || (col[w] == END && self.ends[w].is_some_and(|e| e != j)))
                })
            })
            .collect()
    }

    fn words(&self) -> Vec<Vec<u8>> {
        (0..self.ell).map(|w| self.cols.iter().map(|c| c[w]).take_while(|&c| c != END).collect()).collect()
    }

    fn terminate(&mut self) {
        if (0..self.ell).all(|w| self.ends[w].is_some() || self.used[w] == self.k) {
            let mut words = self.words();
            words.sort();
            if words.windows(2).all(|p| p[0] != p[1]) {
                self.out.insert(words);
            }
        }
    }

    fn push(&mut self, col: Vec<u8>) -> (Vec<Option<usize>>, Vec<u8>) {
        let saved = (self.ends.clone(), self.used.clone());
        let j = self.cols.len();
        for (w, &c) in col.iter().enumerate() {
            if c == END {
                self.ends[w].get_or_insert(j);
            } else if c >= self.sigma && c - self.sigma == self.used[w] {
                self.used[w] += 1;
            }
        }
        self.cols.push(col);
        saved
    }

    fn pop(&mut self, saved: (Vec<Option<usize>>, Vec<u8>)) {
        self.cols.pop();
        self.ends = saved.0;
        self.used = saved.1;
    }

    fn run(&mut self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.cap {
            return Err(Error::CapExceeded { estimate: u128::from(n), cap: u128::from(self.cap) });
        }
        self.terminate();
        if self.cols.len() >= self.max_depth {
            return Ok(());
        }
        for col in self.candidates() {
            let saved = self.push(col);
            let r = self.run();
            self.pop(saved);
            r?;
        }
        Ok(())
    }
}

fn check_ell(kind: WordKind, ell: usize, config: &CensusConfig) -> Result<(usize, usize)> {
    let k = kind.vertex_params();
    let max_ell = match kind {
        WordKind::Graph => config.max_ell_graph,
        WordKind::Poset => config.max_ell_poset,
    };
    let bound = dim_bound(sigma(kind), k, ell)?;
    if ell > max_ell {
        let words = Space::at_most(sigma(kind), bound.min(64) as usize, k).count();
        let estimate = (0..ell as u128).fold(1u128, |acc, i| acc.saturating_mul(words.saturating_sub(i)));
        return Err(Error::CapExceeded { estimate, cap: config.cap });
    }
    let bound = usize::try_from(bound).map_err(|_| Error::Overflow("dim_bound"))?;
    Ok((k, bound))
}

fn slice_sets(kind: WordKind, ell: usize, k: usize, bound: usize, cap: u128) -> Result<BTreeSet<Vec<Vec<u8>>>> {
    let sigma = sigma(kind) as u8;
    let nodes = AtomicU64::new(0);
    let cap = u64::try_from(cap).unwrap_or(u64::MAX);
    let fresh = || SliceSearch {
        ell,
        sigma,
        k: k as u8,
        // one slice past the bound, so that a violation of the bound would be seen
        max_depth: bound + 1,
        cap,
        nodes: &nodes,
        cols: Vec::new(),
        ends: vec![None; ell],
        used: vec![0; ell],
        out: BTreeSet::new(),
    };
    let mut root = fresh();
    root.terminate();
    let first = root.candidates();
    let parts: Vec<BTreeSet<Vec<Vec<u8>>>> = first
        .into_par_iter()
        .map(|col| {
            let mut s = fresh();
            if s.max_depth > 0 {
                s.push(col);
                s.run()?;
            }
            Ok(s.out)
        })
        .collect::<Result<_>>()?;
    let mut out = root.out;
    for p in parts {
        out.extend(p);
    }
    if let Some(t) = out.iter().find(|t| t.iter().map(Vec::len).max().unwrap_or(0) > bound) {
        return Err(Error::InternalCheckFailed(format!("canonical type of dimension above the bound: {t:?}")));
    }
    Ok(out)
}

fn filtered_sets(kind: WordKind, ell: usize, k: usize, bound: usize, cap: u128) -> Result<BTreeSet<Vec<Vec<u8>>>> {
    let sigma = sigma(kind) as u8;
    let words = Space::at_most(sigma as usize, bound, k).enumerate_capped(cap)?.collect::<Vec<_>>();
    let count = binomial(words.len() as u128, ell as u128);
    if count > cap {
        return Err(Error::CapExceeded { estimate: count, cap });
    }
    Ok((0..words.len())
        .combinations(ell)
        .filter_map(|idx| {
            let set: Vec<ParameterWord> = idx.iter().map(|&i| words[i].clone()).collect();
            is_canonical_type(&set).then(|| {
                let mut enc: Vec<Vec<u8>> = set.iter().map(|w| encode(w, sigma)).collect();
                enc.sort();
                enc
            })
        })
        .collect())
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub fn enumerate_canonical_types(kind: WordKind, ell: usize) -> Result<TypeCensus> {
    enumerate_canonical_types_with(kind, ell, &CensusConfig::default())
}

pub fn enumerate_canonical_types_with(kind: WordKind, ell: usize, config: &CensusConfig) -> Result<TypeCensus> {
    let (k, bound) = check_ell(kind, ell, config)?;
    let sets = match config.strategy {
        Strategy::Slices => slice_sets(kind, ell, k, bound, config.cap)?,
        Strategy::Filtered => filtered_sets(kind, ell, k, bound, config.cap)?,
    };
    let sigma = sigma(kind) as u8;
    let mut buckets: BTreeMap<String, Bucket> = BTreeMap::new();
    for set in sets {
        let mut words: Vec<ParameterWord> = set.iter().map(|w| decode(w, sigma)).collect();
        words.sort();
        let t = tau(&words);
        if t.elements() != words.as_slice() {
            return Err(Error::InternalCheckFailed(format!("generated set is not its own type: {t}")));
        }
        let (induced, _) = induced_structure(&words, kind);
        let key = structure::canonical_form(&induced)?;
        buckets.entry(key).or_insert_with(|| Bucket { representative: induced, types: Vec::new() }).types.push(t);
    }
    Ok(TypeCensus { kind, ell, dim_cap: bound, buckets })
}

/// Number of canonical types inducing `a`; zero when none does.
pub fn brd_upper_bound(a: &Structure, kind: WordKind) -> Result<usize> {
    let census = enumerate_canonical_types(kind, a.size())?;
    Ok(census.bucket_for(a)?.map_or(0, |b| b.types.len()))
}

/// The slice-built type of an encoded set, written as its sorted preimages joined by `SEP`, then the dimension.
fn fast_type_key(words: &[&[u8]], sigma: u8, fresh: &mut Vec<usize>, pre: &mut Vec<Vec<u8>>, out: &mut Vec<u8>) {
    let m = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let at = |w: &[u8], j: usize| w.get(j).copied().unwrap_or(END);
    fresh.clear();
    for j in 0..m {
        let c0 = at(words[0], j);
        if c0 < sigma && words.iter().all(|w| at(w, j) == c0) {
            continue;
        }
        let copies = (0..j).any(|i| {
            words.iter().all(|w| {
                let (a, b) = (at(w, i), at(w, j));
                a == b || (b == END && w.len() != j)
            })
        });
        if !copies {
            fresh.push(j);
        }
    }
    pre.resize_with(words.len(), Vec::new);
    for (w, p) in words.iter().zip(pre.iter_mut()) {
        p.clear();
        let cut = if w.len() == m {
            fresh.len()
        } else {
            fresh.iter().position(|&f| f == w.len()).expect("word lies in its own envelope")
        };
        p.extend(fresh[..cut].iter().map(|&f| w[f]));
    }
    pre.sort();
    out.clear();
    for p in pre.iter() {
        out.extend_from_slice(p);
        out.push(SEP);
    }
    out.push(fresh.len() as u8);
}

fn key_to_type(key: &[u8], sigma: u8) -> EmbeddingType {
    let (dim, body) = key.split_last().expect("non-empty key");
    let parts: Vec<&[u8]> = body.split(|&b| b == SEP).collect();
    // the body ends with a separator, leaving one empty trailing part
    let elements = parts[..parts.len() - 1].iter().map(|e| decode(e, sigma)).collect();
    EmbeddingType::from_parts(elements, usize::from(*dim))
}

/// `{τ(S)}` over every set `S` of `ℓ` distinct vertex words of length at most `length_cap`.
pub fn realized_type_oracle(kind: WordKind, ell: usize, length_cap: usize) -> Result<BTreeSet<EmbeddingType>> {
    realized_type_oracle_capped(kind, ell, length_cap, DEFAULT_ORACLE_CAP)
}

pub fn realized_type_oracle_capped(
    kind: WordKind,
    ell: usize,
    length_cap: usize,
    cap: u128,
) -> Result<BTreeSet<EmbeddingType>> {
    let sigma = sigma(kind) as u8;
    let k = kind.vertex_params();
    if ell == 0 {
        return Ok(BTreeSet::from([tau(&[])]));
    }
    let words = Space::at_most(sigma as usize, length_cap, k).enumerate_capped(cap)?.collect::<Vec<_>>();
    let count = binomial(words.len() as u128, ell as u128);
    if count > cap {
        return Err(Error::CapExceeded { estimate: count, cap });
    }
    let enc: Vec<Vec<u8>> = words.iter().map(|w| encode(w, sigma)).collect();
    let n = enc.len();
    // the first element of each set is fixed per worker
    let keys: HashSet<Vec<u8>> = (0..n)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, first| {
            let (mut fresh, mut pre, mut key) = (Vec::new(), Vec::new(), Vec::new());
            let mut set: Vec<&[u8]> = Vec::with_capacity(ell);
            let mut idx: Vec<usize> = (first + 1..first + ell).collect();
            if idx.last().is_some_and(|&l| l >= n) {
                return acc;
            }
            loop {
                set.clear();
                set.push(&enc[first]);
                set.extend(idx.iter().map(|&i| enc[i].as_slice()));
                fast_type_key(&set, sigma, &mut fresh, &mut pre, &mut key);
                if !acc.contains(key.as_slice()) {
                    acc.insert(key.clone());
                }
                // next combination of the remaining ℓ - 1 indices
                let r = idx.len();
                let Some(pos) = (0..r).rev().find(|&p| idx[p] < n - r + p) else { break };
                idx[pos] += 1;
                for q in pos + 1..r {
                    idx[q] = idx[q - 1] + 1;
                }
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(keys.iter().map(|key| key_to_type(key, sigma)).collect())
}
