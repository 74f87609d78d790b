//! Finite relational structures on vertices `0..m`, brute-force embeddings and axiom checks.
//!
//! Ordered kinds use the integer order on vertex names as their linear order,
//! so an embedding between ordered structures must be monotone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

pub const DEFAULT_SIZE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Graph,
    OrderedGraph,
    Poset,
    PosetLinext,
    Linear,
    Metric,
    Ultrametric,
    Unary,
    Product,
}

impl Kind {
    pub fn is_ordered(self) -> bool {
        matches!(self, Kind::OrderedGraph | Kind::PosetLinext | Kind::Linear)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Graph => "graph",
            Kind::OrderedGraph => "ordered-graph",
            Kind::Poset => "poset",
            Kind::PosetLinext => "poset-with-linext",
            Kind::Linear => "linear",
            Kind::Metric => "metric",
            Kind::Ultrametric => "ultrametric",
            Kind::Unary => "unary",
            Kind::Product => "product",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Ok(match s {
            "graph" => Kind::Graph,
            "ordered-graph" => Kind::OrderedGraph,
            "poset" => Kind::Poset,
            "poset-with-linext" | "poset-linext" => Kind::PosetLinext,
            "linear" => Kind::Linear,
            "metric" => Kind::Metric,
            "ultrametric" => Kind::Ultrametric,
            "unary" => Kind::Unary,
            "product" => Kind::Product,
            other => return Err(Error::KindUnsupported(other.to_string())),
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A relation symbol; the `u8` is the language tag (component index in a product, else 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Symmetric adjacency.
    Edge(u8),
    /// Reflexive partial order.
    Le(u8),
    /// Symmetric "distance equals ℓ" relation, ℓ > 0.
    Dist(u8, u32),
    Unary(u8, String),
}

impl Symbol {
    pub fn arity(&self) -> usize {
        match self {
            Symbol::Unary(..) => 1,
            _ => 2,
        }
    }

    pub fn lang(&self) -> u8 {
        match self {
            Symbol::Edge(l) | Symbol::Le(l) | Symbol::Dist(l, _) | Symbol::Unary(l, _) => *l,
        }
    }

    pub fn with_lang(&self, lang: u8) -> Symbol {
        match self {
            Symbol::Edge(_) => Symbol::Edge(lang),
            Symbol::Le(_) => Symbol::Le(lang),
            Symbol::Dist(_, d) => Symbol::Dist(lang, *d),
            Symbol::Unary(_, n) => Symbol::Unary(lang, n.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    size: usize,
    kind: Kind,
    ordered: bool,
    relations: BTreeMap<Symbol, BTreeSet<Vec<usize>>>,
}

impl Structure {
    pub fn empty(kind: Kind, size: usize) -> Self {
        Structure { size, kind, ordered: kind.is_ordered(), relations: BTreeMap::new() }
    }

    pub fn graph(size: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = Self::empty(Kind::Graph, size);
        for &(u, v) in edges {
            s.add_edge(0, u, v);
        }
        s
    }

    pub fn ordered_graph(size: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = Self::graph(size, edges);
        s.kind = Kind::OrderedGraph;
        s.ordered = true;
        s
    }

    /// A poset from (non-reflexive) `u ⊴ v` pairs; reflexive pairs are added.
    pub fn poset(size: usize, pairs: &[(usize, usize)]) -> Self {
        let mut s = Self::empty(Kind::Poset, size);
        for v in 0..size {
            s.insert(Symbol::Le(0), vec![v, v]);
        }
        for &(u, v) in pairs {
            s.insert(Symbol::Le(0), vec![u, v]);
        }
        s
    }

    pub fn poset_linext(size: usize, pairs: &[(usize, usize)]) -> Self {
        let mut s = Self::poset(size, pairs);
        s.kind = Kind::PosetLinext;
        s.ordered = true;
        s
    }

    /// Poset from a total comparability predicate.
    pub fn poset_from_fn(size: usize, le: impl Fn(usize, usize) -> bool) -> Self {
        let pairs: Vec<(usize, usize)> =
            (0..size).cartesian_product(0..size).filter(|&(u, v)| u != v && le(u, v)).collect();
        Self::poset(size, &pairs)
    }

    pub fn linear(size: usize) -> Self {
        Self::empty(Kind::Linear, size)
    }

    /// A metric (or ultrametric) space from a distance function on distinct pairs.
    pub fn metric_from_fn(kind: Kind, size: usize, dist: impl Fn(usize, usize) -> u32) -> Self {
        let mut s = Self::empty(kind, size);
        for (u, v) in (0..size).tuple_combinations() {
            let d = dist(u, v);
            if d > 0 {
                s.add_distance(0, u, v, d);
            }
        }
        s
    }

    pub fn unary(size: usize, name: &str, members: &[usize]) -> Self {
        let mut s = Self::empty(Kind::Unary, size);
        s.relations.entry(Symbol::Unary(0, name.to_string())).or_default();
        for &v in members {
            s.insert(Symbol::Unary(0, name.to_string()), vec![v]);
        }
        s
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn set_ordered(&mut self, ordered: bool) {
        self.ordered = ordered;
    }

    pub fn relations(&self) -> &BTreeMap<Symbol, BTreeSet<Vec<usize>>> {
        &self.relations
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.relations.keys()
    }

    pub fn insert(&mut self, sym: Symbol, tuple: Vec<usize>) {
        self.relations.entry(sym).or_default().insert(tuple);
    }

    /// Adds `sym` to the signature without any tuples.
    pub fn declare(&mut self, sym: Symbol) {
        self.relations.entry(sym).or_default();
    }

    pub fn holds(&self, sym: &Symbol, tuple: &[usize]) -> bool {
        self.relations.get(sym).is_some_and(|t| t.contains(tuple))
    }

    pub fn add_edge(&mut self, lang: u8, u: usize, v: usize) {
        self.insert(Symbol::Edge(lang), vec![u, v]);
        self.insert(Symbol::Edge(lang), vec![v, u]);
    }

    pub fn add_distance(&mut self, lang: u8, u: usize, v: usize, d: u32) {
        self.insert(Symbol::Dist(lang, d), vec![u, v]);
        self.insert(Symbol::Dist(lang, d), vec![v, u]);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.holds(&Symbol::Edge(0), &[u, v])
    }

    pub fn adjacent_in(&self, lang: u8, u: usize, v: usize) -> bool {
        self.holds(&Symbol::Edge(lang), &[u, v])
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        self.holds(&Symbol::Le(0), &[u, v])
    }

    pub fn le_in(&self, lang: u8, u: usize, v: usize) -> bool {
        self.holds(&Symbol::Le(lang), &[u, v])
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.le(u, v) || self.le(v, u)
    }

    /// Distance in language `lang`; 0 on the diagonal, `None` if undefined.
    pub fn distance_in(&self, lang: u8, u: usize, v: usize) -> Option<u32> {
        if u == v {
            return Some(0);
        }
        self.relations.iter().find_map(|(sym, tuples)| match sym {
            Symbol::Dist(l, d) if *l == lang && tuples.contains(&vec![u, v]) => Some(*d),
            _ => None,
        })
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<u32> {
        self.distance_in(0, u, v)
    }

    pub fn in_unary(&self, lang: u8, name: &str, v: usize) -> bool {
        self.holds(&Symbol::Unary(lang, name.to_string()), &[v])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.relations
            .get(&Symbol::Edge(0))
            .map(|t| t.iter().filter(|e| e[0] < e[1]).map(|e| (e[0], e[1])).collect())
            .unwrap_or_default()
    }

    /// Substructure induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Structure {
        let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out =
            Structure { size: vertices.len(), kind: self.kind, ordered: self.ordered, relations: BTreeMap::new() };
        for (sym, tuples) in &self.relations {
            let entry = out.relations.entry(sym.clone()).or_default();
            for t in tuples {
                if let Some(mapped) = t.iter().map(|v| index.get(v).copied()).collect::<Option<Vec<_>>>() {
                    entry.insert(mapped);
                }
            }
        }
        out
    }

    /// The reduct to the symbols of language `lang`, retagged as language 0.
    pub fn reduct(&self, lang: u8, kind: Kind) -> Structure {
        let mut out = Structure::empty(kind, self.size);
        for (sym, tuples) in &self.relations {
            if sym.lang() == lang {
                out.relations.insert(sym.with_lang(0), tuples.clone());
            }
        }
        out
    }

    /// Copy of this structure with every symbol retagged to `lang`.
    pub fn retagged(&self, lang: u8) -> Structure {
        let mut out = self.clone();
        out.relations = self.relations.iter().map(|(s, t)| (s.with_lang(lang), t.clone())).collect();
        out
    }

    fn compiled(&self, symbols: &[Symbol]) -> Compiled {
        let n = self.size;
        let rels = symbols
            .iter()
            .map(|sym| {
                let mut bits = vec![false; if sym.arity() == 1 { n } else { n * n }];
                if let Some(tuples) = self.relations.get(sym) {
                    for t in tuples {
                        match t.as_slice() {
                            [v] => bits[*v] = true,
                            [u, v] => bits[u * n + v] = true,
                            _ => {}
                        }
                    }
                }
                (sym.arity(), bits)
            })
            .collect();
        Compiled { n, rels }
    }
}

struct Compiled {
    n: usize,
    rels: Vec<(usize, Vec<bool>)>,
}

impl Compiled {
    fn get(&self, r: usize, u: usize, v: usize) -> bool {
        let (arity, bits) = &self.rels[r];
        if *arity == 1 {
            bits[u]
        } else {
            bits[u * self.n + v]
        }
    }
}

fn shared_symbols(a: &Structure, b: &Structure) -> Vec<Symbol> {
    a.relations.keys().chain(b.relations.keys()).cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

struct EmbeddingSearch<'a> {
    a: &'a Compiled,
    b: &'a Compiled,
    ordered: bool,
    first_only: bool,
    map: Vec<usize>,
    used: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl EmbeddingSearch<'_> {
    fn consistent(&self, x: usize, y: usize) -> bool {
        for (r, (arity, _)) in self.a.rels.iter().enumerate() {
            if *arity == 1 {
                if self.a.get(r, x, x) != self.b.get(r, y, y) {
                    return false;
                }
                continue;
            }
            if self.a.get(r, x, x) != self.b.get(r, y, y) {
                return false;
            }
            for (px, &py) in self.map.iter().enumerate() {
                if self.a.get(r, px, x) != self.b.get(r, py, y) || self.a.get(r, x, px) != self.b.get(r, y, py) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) {
        if self.first_only && !self.out.is_empty() {
            return;
        }
        let x = self.map.len();
        if x == self.a.n {
            self.out.push(self.map.clone());
            return;
        }
        let start = if self.ordered { self.map.last().map_or(0, |&p| p + 1) } else { 0 };
        for y in start..self.b.n {
            if self.used[y] || !self.consistent(x, y) {
                continue;
            }
            self.used[y] = true;
            self.map.push(y);
            self.run();
            self.map.pop();
            self.used[y] = false;
        }
    }
}

fn embeddings_impl(a: &Structure, b: &Structure, first_only: bool, cap: usize) -> Result<Vec<Vec<usize>>> {
    if b.size > cap {
        return Err(Error::SizeCap { size: b.size, cap });
    }
    if a.size > b.size {
        return Ok(Vec::new());
    }
    let symbols = shared_symbols(a, b);
    let (ca, cb) = (a.compiled(&symbols), b.compiled(&symbols));
    let mut search = EmbeddingSearch {
        a: &ca,
        b: &cb,
        ordered: a.ordered && b.ordered,
        first_only,
        map: Vec::new(),
        used: vec![false; b.size],
        out: Vec::new(),
    };
    search.run();
    Ok(search.out)
}

/// Every embedding `A → B`, as image tuples in lexicographic order.
pub fn find_embeddings(a: &Structure, b: &Structure) -> Result<Vec<Vec<usize>>> {
    embeddings_impl(a, b, false, DEFAULT_SIZE_CAP)
}

pub fn find_embeddings_capped(a: &Structure, b: &Structure, cap: usize) -> Result<Vec<Vec<usize>>> {
    embeddings_impl(a, b, false, cap)
}

pub fn embeds(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(!embeddings_impl(a, b, true, DEFAULT_SIZE_CAP)?.is_empty())
}

/// Checks that `map` is an embedding `A → B`.
pub fn is_embedding(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    if map.len() != a.size || map.iter().any(|&y| y >= b.size) || !map.iter().all_unique() {
        return false;
    }
    if a.ordered && b.ordered && !map.windows(2).all(|w| w[0] < w[1]) {
        return false;
    }
    let symbols = shared_symbols(a, b);
    let (ca, cb) = (a.compiled(&symbols), b.compiled(&symbols));
    (0..a.size)
        .cartesian_product(0..a.size)
        .all(|(x, y)| (0..symbols.len()).all(|r| ca.get(r, x, y) == cb.get(r, map[x], map[y])))
}

pub fn isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
    if a.size != b.size {
        if a.size.max(b.size) > DEFAULT_SIZE_CAP {
            return Err(Error::SizeCap { size: a.size.max(b.size), cap: DEFAULT_SIZE_CAP });
        }
        return Ok(false);
    }
    embeds(a, b)
}

/// Isomorphism-invariant key: the lexicographically least relation encoding over all relabellings.
///
/// Ordered structures admit only the identity relabelling.
pub fn canonical_form(a: &Structure) -> Result<String> {
    const CANON_CAP: usize = 9;
    if a.size > CANON_CAP && !a.ordered {
        return Err(Error::SizeCap { size: a.size, cap: CANON_CAP });
    }
    let symbols: Vec<Symbol> = a.relations.keys().cloned().collect();
    let c = a.compiled(&symbols);
    let encode = |perm: &[usize]| -> Vec<u8> {
        let mut code = Vec::new();
        for (r, (arity, _)) in c.rels.iter().enumerate() {
            for x in 0..a.size {
                if *arity == 1 {
                    code.push(c.get(r, perm[x], perm[x]) as u8);
                } else {
                    for y in 0..a.size {
                        code.push(c.get(r, perm[x], perm[y]) as u8);
                    }
                }
            }
        }
        code
    };
    let best = if a.ordered {
        encode(&(0..a.size).collect::<Vec<_>>())
    } else {
        (0..a.size).permutations(a.size).map(|p| encode(&p)).min().unwrap_or_default()
    };
    let names: Vec<String> = symbols.iter().map(|s| format!("{s:?}")).collect();
    Ok(format!(
        "{}|{}|{}|{}",
        a.size,
        a.ordered,
        names.join(","),
        best.iter().map(|b| char::from(b'0' + b)).collect::<String>()
    ))
}

pub fn is_triangle_free(g: &Structure) -> bool {
    is_triangle_free_in(g, 0)
}

pub fn is_triangle_free_in(g: &Structure, lang: u8) -> bool {
    (0..g.size)
        .tuple_combinations()
        .all(|(a, b, c)| !(g.adjacent_in(lang, a, b) && g.adjacent_in(lang, b, c) && g.adjacent_in(lang, a, c)))
}

/// Symmetric and irreflexive edge relation.
pub fn is_graph(g: &Structure) -> bool {
    (0..g.size).all(|u| !g.adjacent(u, u))
        && (0..g.size).tuple_combinations().all(|(u, v)| g.adjacent(u, v) == g.adjacent(v, u))
}

pub fn is_partial_order(p: &Structure) -> bool {
    partial_order_violation(p, 0).is_none()
}

/// First violated partial-order axiom in language `lang`, if any.
pub fn partial_order_violation(p: &Structure, lang: u8) -> Option<String> {
    let n = p.size;
    for u in 0..n {
        if !p.le_in(lang, u, u) {
            return Some(format!("not reflexive at {u}"));
        }
    }
    for (u, v) in (0..n).tuple_combinations() {
        if p.le_in(lang, u, v) && p.le_in(lang, v, u) {
            return Some(format!("not antisymmetric at {u},{v}"));
        }
    }
    for u in 0..n {
        for v in 0..n {
            if !p.le_in(lang, u, v) {
                continue;
            }
            for w in 0..n {
                if p.le_in(lang, v, w) && !p.le_in(lang, u, w) {
                    return Some(format!("not transitive at {u},{v},{w}"));
                }
            }
        }
    }
    None
}

/// `order[i]` is the `i`-th smallest vertex of a linear order; checks it extends `⊴`.
pub fn is_linear_extension(p: &Structure, order: &[usize]) -> bool {
    if order.len() != p.size || !order.iter().all_unique() || order.iter().any(|&v| v >= p.size) {
        return false;
    }
    let mut rank = vec![0; p.size];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    (0..p.size).cartesian_product(0..p.size).all(|(u, v)| !p.le(u, v) || rank[u] <= rank[v])
}

/// The integer order on vertex names extends `⊴`.
pub fn integer_order_is_linear_extension(p: &Structure) -> bool {
    is_linear_extension(p, &(0..p.size).collect::<Vec<_>>())
}

/// `S`-metric axioms (distances in `S`, positive off the diagonal, symmetric, triangle inequality).
pub fn is_metric(m: &Structure, s: &[u32]) -> bool {
    is_metric_in(m, 0, s)
}

pub fn is_metric_in(m: &Structure, lang: u8, s: &[u32]) -> bool {
    let n = m.size;
    let Some(d) = distance_matrix(m, lang) else { return false };
    for u in 0..n {
        for v in 0..n {
            let duv = d[u * n + v];
            if !s.contains(&duv) || (u != v && duv == 0) || duv != d[v * n + u] {
                return false;
            }
            for w in 0..n {
                if d[u * n + w] > duv + d[v * n + w] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_ultrametric(m: &Structure) -> bool {
    let n = m.size;
    let Some(d) = distance_matrix(m, 0) else { return false };
    (0..n).all(|u| {
        (0..n).all(|v| {
            (u == v || d[u * n + v] > 0)
                && d[u * n + v] == d[v * n + u]
                && (0..n).all(|w| d[u * n + w] <= d[u * n + v].max(d[v * n + w]))
        })
    })
}

/// Each distinct pair has exactly one distance.
fn distance_matrix(m: &Structure, lang: u8) -> Option<Vec<u32>> {
    let n = m.size;
    let mut d = vec![0u32; n * n];
    let mut seen = vec![false; n * n];
    for (sym, tuples) in &m.relations {
        if let Symbol::Dist(l, value) = sym {
            if *l != lang {
                continue;
            }
            for t in tuples {
                let idx = t[0] * n + t[1];
                if seen[idx] || t[0] == t[1] {
                    return None;
                }
                seen[idx] = true;
                d[idx] = *value;
            }
        }
    }
    (0..n).cartesian_product(0..n).all(|(u, v)| u == v || seen[u * n + v]).then_some(d)
}

pub fn is_bipartite(g: &Structure) -> bool {
    let n = g.size;
    let mut side: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for v in 0..n {
                if !g.adjacent(u, v) {
                    continue;
                }
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        stack.push(v);
                    }
                    Some(sv) if sv == su => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// All labelled graphs on `n` vertices (as ordered graphs when `ordered`).
pub fn all_graphs(n: usize, ordered: bool) -> impl Iterator<Item = Structure> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        if ordered {
            Structure::ordered_graph(n, &edges)
        } else {
            Structure::graph(n, &edges)
        }
    })
}

pub fn all_triangle_free_graphs(n: usize, ordered: bool) -> impl Iterator<Item = Structure> {
    all_graphs(n, ordered).filter(is_triangle_free)
}

/// All partial orders on `0..n` for which the integer order is a linear extension.
pub fn all_posets_with_linext(n: usize) -> Vec<Structure> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let total = 1u64 << pairs.len();
    let mut out = Vec::new();
    for mask in 0..total {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let p = Structure::poset_linext(n, &chosen);
        if is_partial_order(&p) {
            out.push(p);
        }
    }
    out
}

fn parse_vertex(tok: &str, size: usize, line: usize) -> Result<usize> {
    let v: usize = tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad vertex {tok:?}") })?;
    if v >= size {
        return Err(Error::Parse { line, msg: format!("vertex {v} out of range 0..{size}") });
    }
    Ok(v)
}

/// A non-structure line kept by [`parse_structure_with_extras`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraLine {
    pub line: usize,
    pub tokens: Vec<String>,
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    let (s, extras) = parse_structure_with_extras(text, &[])?;
    debug_assert!(extras.is_empty());
    Ok(s)
}

/// Parse a structure file, returning lines whose keyword is in `extra_keywords` separately.
pub fn parse_structure_with_extras(text: &str, extra_keywords: &[&str]) -> Result<(Structure, Vec<ExtraLine>)> {
    let mut structure: Option<Structure> = None;
    let mut extras = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "structure" {
            if structure.is_some() {
                return Err(Error::Parse { line, msg: "duplicate header".into() });
            }
            if tokens.len() < 3 {
                return Err(Error::Parse { line, msg: "expected `structure <kind> <m>`".into() });
            }
            let kind: Kind =
                tokens[1].parse().map_err(|_| Error::Parse { line, msg: format!("unknown kind {:?}", tokens[1]) })?;
            let size: usize = tokens[2].parse().map_err(|_| Error::Parse { line, msg: "bad size".into() })?;
            let mut s = if matches!(kind, Kind::Poset | Kind::PosetLinext) {
                let mut p = Structure::poset(size, &[]);
                p.kind = kind;
                p.ordered = kind.is_ordered();
                p
            } else {
                Structure::empty(kind, size)
            };
            if tokens.get(3) == Some(&"ordered") {
                s.ordered = true;
            }
            structure = Some(s);
            continue;
        }
        if extra_keywords.contains(&tokens[0]) {
            extras.push(ExtraLine { line, tokens: tokens.iter().map(|t| t.to_string()).collect() });
            continue;
        }
        let s = structure.as_mut().ok_or(Error::Parse { line, msg: "missing `structure` header".into() })?;
        let (keyword, lang) = match tokens[0].split_once('.') {
            Some((k, l)) => (k, l.parse::<u8>().map_err(|_| Error::Parse { line, msg: "bad language tag".into() })?),
            None => (tokens[0], 0u8),
        };
        let args = &tokens[1..];
        let size = s.size;
        match (keyword, args.len()) {
            ("edge", 2) => {
                let (u, v) = (parse_vertex(args[0], size, line)?, parse_vertex(args[1], size, line)?);
                s.add_edge(lang, u, v);
            }
            ("le", 2) => {
                let (u, v) = (parse_vertex(args[0], size, line)?, parse_vertex(args[1], size, line)?);
                s.insert(Symbol::Le(lang), vec![u, v]);
            }
            ("dist", 3) => {
                let (u, v) = (parse_vertex(args[0], size, line)?, parse_vertex(args[1], size, line)?);
                let d: u32 = args[2].parse().map_err(|_| Error::Parse { line, msg: "bad distance".into() })?;
                if d == 0 && u != v {
                    return Err(Error::Parse { line, msg: "distinct vertices at distance 0".into() });
                }
                if d > 0 {
                    s.add_distance(lang, u, v, d);
                }
            }
            ("unary", 1) => s.declare(Symbol::Unary(lang, args[0].to_string())),
            ("unary", 2) => {
                let v = parse_vertex(args[1], size, line)?;
                s.insert(Symbol::Unary(lang, args[0].to_string()), vec![v]);
            }
            _ => return Err(Error::Parse { line, msg: format!("unrecognised line {content:?}") }),
        }
    }
    let mut s = structure.ok_or(Error::Parse { line: 0, msg: "missing `structure` header".into() })?;
    // every poset language is reflexive
    let poset_langs: BTreeSet<u8> =
        s.relations.keys().filter(|&k| matches!(k, Symbol::Le(_))).map(|k| k.lang()).collect();
    for lang in poset_langs {
        for v in 0..s.size {
            s.insert(Symbol::Le(lang), vec![v, v]);
        }
    }
    Ok((s, extras))
}

/// Render in the structure file format; parses back to an equal structure.
pub fn write_structure(s: &Structure) -> String {
    let mut out = format!("structure {} {}", s.kind, s.size);
    if s.kind == Kind::Product && s.ordered {
        out.push_str(" ordered");
    }
    out.push('\n');
    let tagged = s.kind == Kind::Product;
    for (sym, tuples) in &s.relations {
        let kw = |base: &str| if tagged { format!("{base}.{}", sym.lang()) } else { base.to_string() };
        if let (Symbol::Unary(_, name), true) = (sym, tuples.is_empty()) {
            out.push_str(&format!("{} {name}\n", kw("unary")));
        }
        for t in tuples {
            let line = match sym {
                Symbol::Edge(_) if t[0] < t[1] => format!("{} {} {}", kw("edge"), t[0], t[1]),
                Symbol::Le(_) if t[0] != t[1] => format!("{} {} {}", kw("le"), t[0], t[1]),
                Symbol::Dist(_, d) if t[0] < t[1] => format!("{} {} {} {}", kw("dist"), t[0], t[1], d),
                Symbol::Unary(_, name) => format!("{} {} {}", kw("unary"), name, t[0]),
                _ => continue,
            };
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Structure {
        Structure::graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn embedding_examples() {
        let edge = Structure::graph(2, &[(0, 1)]);
        assert_eq!(find_embeddings(&edge, &triangle()).unwrap().len(), 6);
        assert_eq!(find_embeddings(&Structure::graph(0, &[]), &triangle()).unwrap(), vec![Vec::<usize>::new()]);
        let chain = Structure::poset(2, &[(0, 1)]);
        let antichain = Structure::poset(2, &[]);
        assert!(find_embeddings(&chain, &antichain).unwrap().is_empty());
        let big = Structure::graph(13, &[]);
        assert!(matches!(find_embeddings(&edge, &big), Err(Error::SizeCap { size: 13, cap: 12 })));
    }

    #[test]
    fn embeddings_are_lexicographic_and_valid() {
        let path = Structure::graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let edge = Structure::graph(2, &[(0, 1)]);
        let found = find_embeddings(&edge, &path).unwrap();
        assert!(found.windows(2).all(|w| w[0] < w[1]));
        assert!(found.iter().all(|m| is_embedding(&edge, &path, m)));
        assert_eq!(found.len(), 6);
    }

    #[test]
    fn axiom_examples() {
        assert!(!is_triangle_free(&triangle()));
        let chain = Structure::poset_from_fn(5, |u, v| u <= v);
        assert!(is_partial_order(&chain));
        assert!(integer_order_is_linear_extension(&chain));
        assert!(!is_linear_extension(&chain, &[1, 0, 2, 3, 4]));
        let bad = Structure::metric_from_fn(Kind::Metric, 3, |u, v| if (u, v) == (0, 2) { 3 } else { 1 });
        assert!(!is_metric(&bad, &[0, 1, 2, 3]));
        let good = Structure::metric_from_fn(Kind::Metric, 3, |u, v| if (u, v) == (0, 2) { 2 } else { 1 });
        assert!(is_metric(&good, &[0, 1, 2, 3]));
        assert!(!is_ultrametric(&good));
        let ultra = Structure::metric_from_fn(Kind::Ultrametric, 3, |u, _| if u == 0 { 2 } else { 1 });
        assert!(is_ultrametric(&ultra));
        let not_transitive = Structure::poset(3, &[(0, 1), (1, 2)]);
        assert!(!is_partial_order(&not_transitive));
    }

    #[test]
    fn isomorphism_examples() {
        let p3 = Structure::graph(3, &[(0, 1), (1, 2)]);
        let star = Structure::graph(3, &[(0, 1), (0, 2)]);
        assert!(isomorphic(&p3, &star).unwrap());
        assert!(!isomorphic(&Structure::poset(2, &[(0, 1)]), &Structure::poset(2, &[])).unwrap());
        assert!(isomorphic(&triangle(), &triangle()).unwrap());
        assert_eq!(canonical_form(&p3).unwrap(), canonical_form(&star).unwrap());
        assert_ne!(canonical_form(&p3).unwrap(), canonical_form(&triangle()).unwrap());
    }

    #[test]
    fn ordered_structures_are_rigid() {
        for g in all_graphs(4, true) {
            let auts = find_embeddings(&g, &g).unwrap();
            assert_eq!(auts, vec![vec![0, 1, 2, 3]]);
        }
    }

    #[test]
    fn embedding_composition_closes() {
        let a = Structure::graph(2, &[(0, 1)]);
        let b = Structure::graph(3, &[(0, 1), (1, 2)]);
        let c = Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let ab = find_embeddings(&a, &b).unwrap();
        let bc = find_embeddings(&b, &c).unwrap();
        let ac: BTreeSet<Vec<usize>> = find_embeddings(&a, &c).unwrap().into_iter().collect();
        for f in &ab {
            for g in &bc {
                let composed: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                assert!(ac.contains(&composed));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // labelled triangle-free graphs: 1, 2, 7, 41 on 1..=4 vertices
        let counts: Vec<usize> = (1..=4).map(|n| all_triangle_free_graphs(n, false).count()).collect();
        assert_eq!(counts, vec![1, 2, 7, 41]);
        // naturally labelled posets: 1, 2, 7, 40
        let counts: Vec<usize> = (1..=4).map(|n| all_posets_with_linext(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 40]);
    }

    #[test]
    fn file_round_trip() {
        let text = "# a path\nstructure graph 3\nedge 0 1\n\nedge 1 2 # tail\n";
        let g = parse_structure(text).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(parse_structure(&write_structure(&g)).unwrap(), g);
        let p = parse_structure("structure poset 3\nle 0 2\n").unwrap();
        assert!(is_partial_order(&p));
        assert_eq!(parse_structure(&write_structure(&p)).unwrap(), p);
        let m = parse_structure("structure metric 2\ndist 0 1 2\n").unwrap();
        assert_eq!(m.distance(1, 0), Some(2));
        let u = parse_structure("structure unary 3\nunary R 2\n").unwrap();
        assert!(u.in_unary(0, "R", 2));
        let empty = Structure::unary(2, "U", &[]);
        assert_eq!(write_structure(&empty), "structure unary 2\nunary U\n");
        assert_eq!(parse_structure(&write_structure(&empty)).unwrap(), empty);
        assert!(matches!(parse_structure("structure graph 2\nedge 0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_structure("edge 0 1\n").is_err());
    }

    #[test]
    fn bipartite_check() {
        assert!(is_bipartite(&Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])));
        assert!(!is_bipartite(&triangle()));
    }
}
