//! Other structures interpreted inside finite fragments of a partial order.
//!
//! [`GrowablePoset`] stands in for the homogeneous partial order: a new vertex
//! is added with its full strict down-set and up-set, and the extension is
//! refused if those sets are not closed or would relate old vertices.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structure::{self, Kind, Structure, Symbol};

/// Largest graph accepted by [`embed_triangle_free_into_gp`].
pub const GP_GRAPH_CAP: usize = 6;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GrowablePoset {
    /// `le[u][v]` iff `u ⊴ v`.
    le: Vec<Vec<bool>>,
}

impl GrowablePoset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_structure(p: &Structure) -> Result<Self> {
        if let Some(why) = structure::partial_order_violation(p, 0) {
            return Err(Error::NotPartialOrder(why));
        }
        let n = p.size();
        Ok(GrowablePoset { le: (0..n).map(|u| (0..n).map(|v| p.le(u, v)).collect()).collect() })
    }

    pub fn size(&self) -> usize {
        self.le.len()
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        self.le[u][v]
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        u != v && self.le[u][v]
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.le[u][v] || self.le[v][u]
    }

    /// Adds a vertex strictly above exactly `down` and strictly below exactly `up`.
    pub fn extend(&mut self, down: &[usize], up: &[usize]) -> Result<usize> {
        let n = self.size();
        let down: BTreeSet<usize> = down.iter().copied().collect();
        let up: BTreeSet<usize> = up.iter().copied().collect();
        if let Some(&v) = down.iter().chain(&up).find(|&&v| v >= n) {
            return Err(Error::ExtensionConflict(format!("vertex {v} does not exist")));
        }
        if let Some(v) = down.intersection(&up).next() {
            return Err(Error::ExtensionConflict(format!("{v} requested both below and above")));
        }
        for &d in &down {
            if let Some(w) = (0..n).find(|&w| self.le[w][d] && !down.contains(&w)) {
                return Err(Error::ExtensionConflict(format!("closure puts {w} below the new vertex")));
            }
        }
        for &u in &up {
            if let Some(w) = (0..n).find(|&w| self.le[u][w] && !up.contains(&w)) {
                return Err(Error::ExtensionConflict(format!("closure puts {w} above the new vertex")));
            }
        }
        for (&d, &u) in down.iter().cartesian_product(&up) {
            if !self.le[d][u] {
                return Err(Error::ExtensionConflict(format!("closure would force {d} ⊴ {u}")));
            }
        }
        for (w, row) in self.le.iter_mut().enumerate() {
            row.push(down.contains(&w));
        }
        let mut row: Vec<bool> = (0..n).map(|w| up.contains(&w)).collect();
        row.push(true);
        self.le.push(row);
        Ok(n)
    }

    pub fn to_structure(&self) -> Structure {
        Structure::poset_from_fn(self.size(), |u, v| self.le[u][v])
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.size();
        (0..n).all(|u| self.le[u][u])
            && (0..n).tuple_combinations().all(|(u, v)| !(self.le[u][v] && self.le[v][u]))
            && (0..n)
                .cartesian_product(0..n)
                .all(|(u, v)| !self.le[u][v] || (0..n).all(|w| !self.le[v][w] || self.le[u][w]))
    }
}

pub type Triple = [usize; 3];

/// `u0 < u2` with `u1` incomparable to both, all distinct.
pub fn is_valid_triple(t: &Triple, p: &GrowablePoset) -> bool {
    let [a, b, c] = *t;
    let n = p.size();
    a < n && b < n && c < n && a != b && b != c && a != c && p.lt(a, c) && !p.comparable(a, b) && !p.comparable(b, c)
}

fn edge_unchecked(t: &Triple, s: &Triple, p: &GrowablePoset) -> bool {
    // the only comparabilities allowed between the two triples, as (index in t, index in s, t below s)
    const PATTERN: [(usize, usize, bool); 4] = [(0, 1, true), (1, 2, true), (1, 0, false), (2, 1, false)];
    for i in 0..3 {
        for j in 0..3 {
            let (u, v) = (t[i], s[j]);
            let expected = PATTERN.iter().find(|&&(a, b, _)| a == i && b == j);
            let ok = match expected {
                Some(&(_, _, true)) => p.lt(u, v) && !p.le(v, u),
                Some(&(_, _, false)) => p.lt(v, u) && !p.le(u, v),
                None => !p.comparable(u, v),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Adjacency of two vertices of the triple graph over `p`.
pub fn gp_edge(t: &Triple, s: &Triple, p: &GrowablePoset) -> Result<bool> {
    for x in [t, s] {
        if !is_valid_triple(x, p) {
            return Err(Error::InvalidTriple(format!("{x:?}")));
        }
    }
    Ok(edge_unchecked(t, s, p))
}

/// Every valid triple of `p` and the triple graph on them.
pub fn gp_graph(p: &GrowablePoset) -> (Vec<Triple>, Vec<Vec<bool>>) {
    let n = p.size();
    let triples: Vec<Triple> = (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .map(|((a, b), c)| [a, b, c])
        .filter(|t| is_valid_triple(t, p))
        .collect();
    let m = triples.len();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let e = edge_unchecked(&triples[i], &triples[j], p);
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }
    (triples, adj)
}

/// First triangle in an adjacency matrix, if any.
pub fn find_triangle(adj: &[Vec<bool>]) -> Option<(usize, usize, usize)> {
    let m = adj.len();
    for a in 0..m {
        for b in a + 1..m {
            if !adj[a][b] {
                continue;
            }
            if let Some(c) = (b + 1..m).find(|&c| adj[a][c] && adj[b][c]) {
                return Some((a, b, c));
            }
        }
    }
    None
}

/// Grows a poset with one triple per vertex of `h`, adjacent exactly as in `h`.
pub fn embed_triangle_free_into_gp(h: &Structure) -> Result<(GrowablePoset, Vec<Triple>)> {
    let n = h.size();
    if n > GP_GRAPH_CAP {
        return Err(Error::SizeCap { size: n, cap: GP_GRAPH_CAP });
    }
    if !structure::is_triangle_free(h) {
        return Err(Error::NotTriangleFree);
    }
    let mut p = GrowablePoset::new();
    let mut triples: Vec<Triple> = Vec::with_capacity(n);
    for i in 0..n {
        let (mut up0, mut down1, mut up1, mut down2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (j, t) in triples.iter().enumerate() {
            if h.adjacent(i, j) {
                // i0 < j1 < i2 and j0 < i1 < j2
                up0.push(t[1]);
                down1.push(t[0]);
                up1.push(t[2]);
                down2.push(t[1]);
            } else {
                // i0 < j2 and j0 < i2
                up0.push(t[2]);
                down2.push(t[0]);
            }
        }
        let i0 = p.extend(&[], &up0)?;
        let i1 = p.extend(&down1, &up1)?;
        down2.push(i0);
        let i2 = p.extend(&down2, &[])?;
        triples.push([i0, i1, i2]);
    }
    if !p.is_partial_order() {
        return Err(Error::InternalCheckFailed("grown relation is not a partial order".into()));
    }
    for (i, j) in (0..n).tuple_combinations() {
        if gp_edge(&triples[i], &triples[j], &p)? != h.adjacent(i, j) {
            return Err(Error::ExtensionConflict(format!("pair {i},{j} not realized")));
        }
    }
    Ok((p, triples))
}

fn check_chains(p: &GrowablePoset, d: usize, chains: &[Vec<usize>]) -> Result<()> {
    for c in chains {
        if c.len() != d || c.iter().any(|&v| v >= p.size()) {
            return Err(Error::NotAChain(format!("{c:?} is not a sequence of {d} vertices")));
        }
        if let Some(w) = c.windows(2).find(|w| !p.le(w[0], w[1])) {
            return Err(Error::NotAChain(format!("{} ⋬ {} in {c:?}", w[0], w[1])));
        }
    }
    Ok(())
}

/// The least `ℓ ≤ d` with `u_i ⊴ v_{i+ℓ}` and `v_i ⊴ u_{i+ℓ}` whenever `i + ℓ ≤ d − 1`.
///
/// `ℓ = d` always qualifies; `ℓ = 0` only for equal chains.
pub fn chain_distance(p: &GrowablePoset, u: &[usize], v: &[usize]) -> Result<u32> {
    let d = u.len();
    check_chains(p, d, &[u.to_vec(), v.to_vec()])?;
    let l = (0..=d).find(|&l| (0..d - l).all(|i| p.le(u[i], v[i + l]) && p.le(v[i], u[i + l]))).unwrap_or(d);
    Ok(l as u32)
}

/// `S = {0..d}` metric on distinct weakly increasing chains `u_0 ⊴ … ⊴ u_{d-1}`.
pub fn metric_from_chains(p: &GrowablePoset, d: usize, chains: &[Vec<usize>]) -> Result<Structure> {
    check_chains(p, d, chains)?;
    let mut m = Structure::empty(Kind::Metric, chains.len());
    for (a, b) in (0..chains.len()).tuple_combinations() {
        let l = chain_distance(p, &chains[a], &chains[b])?;
        if l == 0 {
            return Err(Error::NotAChain(format!("chains {a} and {b} coincide")));
        }
        m.add_distance(0, a, b, l);
    }
    Ok(m)
}

/// `d − (longest common prefix)`; the least `ℓ` with `u_i = v_i` for all `i < d − ℓ`.
pub fn tuple_distance<T: PartialEq>(u: &[T], v: &[T]) -> u32 {
    let lcp = u.iter().zip(v).take_while(|(x, y)| x == y).count();
    (u.len().max(v.len()) - lcp) as u32
}

/// Ultrametric on distinct `d`-tuples.
pub fn ultrametric_from_tuples<T: PartialEq + std::fmt::Debug>(d: usize, tuples: &[Vec<T>]) -> Result<Structure> {
    if let Some(t) = tuples.iter().find(|t| t.len() != d) {
        return Err(Error::BadTuple(format!("{t:?} does not have length {d}")));
    }
    let mut m = Structure::empty(Kind::Ultrametric, tuples.len());
    for (a, b) in (0..tuples.len()).tuple_combinations() {
        let l = tuple_distance(&tuples[a], &tuples[b]);
        if l == 0 {
            return Err(Error::BadTuple(format!("tuples {a} and {b} coincide")));
        }
        m.add_distance(0, a, b, l);
    }
    Ok(m)
}

/// Unary structure `R` on pairs `(u0, u1)` of distinct vertices, `R` iff `u0 ⊴ u1`.
pub fn unary_from_pairs(pairs: &[(usize, usize)], p: &GrowablePoset) -> Result<Structure> {
    if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u == v || u >= p.size() || v >= p.size()) {
        return Err(Error::InvalidTriple(format!("({u}, {v}) is not a pair of distinct vertices")));
    }
    let members: Vec<usize> = (0..pairs.len()).filter(|&i| p.le(pairs[i].0, pairs[i].1)).collect();
    Ok(Structure::unary(pairs.len(), "R", &members))
}

/// A product of components in disjoint languages; component `i` uses language tag `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superposition {
    pub structure: Structure,
    /// `tuples[v][i]` is `π_i(v)`.
    pub tuples: Vec<Vec<usize>>,
    pub components: Vec<Structure>,
}

fn supported(kind: Kind) -> bool {
    matches!(kind, Kind::Graph | Kind::Poset | Kind::Linear | Kind::Metric | Kind::Ultrametric | Kind::Unary)
}

pub fn superpose(components: &[Structure]) -> Result<Superposition> {
    if let Some(c) = components.iter().find(|c| !supported(c.kind())) {
        return Err(Error::KindUnsupported(c.kind().name().to_string()));
    }
    if components.len() > usize::from(u8::MAX) {
        return Err(Error::KindUnsupported("too many components".into()));
    }
    let linear: Vec<usize> = (0..components.len()).filter(|&i| components[i].kind() == Kind::Linear).collect();
    if linear.len() > 1 {
        return Err(Error::KindUnsupported("more than one linear order".into()));
    }
    // lexicographic order on tuples with the linear coordinate first
    let coord_order: Vec<usize> =
        linear.iter().copied().chain((0..components.len()).filter(|i| !linear.contains(i))).collect();
    let tuples: Vec<Vec<usize>> = coord_order
        .iter()
        .map(|&i| 0..components[i].size())
        .multi_cartesian_product()
        .map(|t| {
            let mut tuple = vec![0; components.len()];
            for (pos, &i) in coord_order.iter().enumerate() {
                tuple[i] = t[pos];
            }
            tuple
        })
        .collect();
    let tuples = if components.is_empty() { vec![Vec::new()] } else { tuples };
    let n = tuples.len();
    let mut s = Structure::empty(Kind::Product, n);
    s.set_ordered(!linear.is_empty());
    for (i, c) in components.iter().enumerate() {
        let lang = i as u8;
        for sym in c.symbols() {
            s.declare(sym.with_lang(lang));
        }
        let min_positive = c
            .symbols()
            .filter_map(|sym| match sym {
                Symbol::Dist(0, d) => Some(*d),
                _ => None,
            })
            .min()
            .unwrap_or(1);
        for u in 0..n {
            let pu = tuples[u][i];
            if c.kind() == Kind::Unary {
                for sym in c.symbols() {
                    if let Symbol::Unary(_, name) = sym {
                        if c.holds(sym, &[pu]) {
                            s.insert(Symbol::Unary(lang, name.clone()), vec![u]);
                        }
                    }
                }
            }
            for v in 0..n {
                let pv = tuples[v][i];
                match c.kind() {
                    Kind::Poset if u == v || (pu != pv && c.le(pu, pv)) => s.insert(Symbol::Le(lang), vec![u, v]),
                    Kind::Graph if c.adjacent(pu, pv) => s.insert(Symbol::Edge(lang), vec![u, v]),
                    Kind::Metric | Kind::Ultrametric if u != v => {
                        let d = if pu == pv {
                            if c.kind() == Kind::Metric {
                                min_positive
                            } else {
                                1
                            }
                        } else {
                            c.distance(pu, pv).ok_or_else(|| {
                                Error::KindUnsupported(format!("component {i} has no distance for {pu},{pv}"))
                            })?
                        };
                        s.insert(Symbol::Dist(lang, d), vec![u, v]);
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(Superposition { structure: s, tuples, components: components.to_vec() })
}

/// Outcome of comparing one component's age with its reduct on transversal sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgeCheck {
    pub component: usize,
    pub size: usize,
    pub component_classes: usize,
    pub transversal_classes: usize,
    pub ages_match: bool,
    /// `π_i` embeds every transversal reduct into the component.
    pub projection_ok: bool,
}

impl Superposition {
    pub fn is_transversal(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .tuple_combinations()
            .all(|(&u, &v)| (0..self.components.len()).all(|i| self.tuples[u][i] != self.tuples[v][i]))
    }

    pub fn projection(&self, i: usize, v: usize) -> usize {
        self.tuples[v][i]
    }

    /// Compares ages at every size up to `max_size`, capped by the smallest component.
    pub fn check_reduct_ages(&self, max_size: usize) -> Result<Vec<AgeCheck>> {
        let limit = self.components.iter().map(Structure::size).min().unwrap_or(0).min(max_size);
        let mut out = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            let mut reduct = self.structure.reduct(i as u8, c.kind());
            let mut comp = c.retagged(0);
            if c.kind() != Kind::Linear {
                reduct.set_ordered(false);
                comp.set_ordered(false);
            }
            for size in 1..=limit {
                let comp_age: BTreeSet<String> = (0..c.size())
                    .combinations(size)
                    .map(|sub| structure::canonical_form(&comp.induced(&sub)))
                    .collect::<Result<_>>()?;
                let mut seen = BTreeSet::new();
                let mut projection_ok = true;
                for sub in (0..self.structure.size()).combinations(size) {
                    if !self.is_transversal(&sub) {
                        continue;
                    }
                    let induced = reduct.induced(&sub);
                    let image: Vec<usize> = sub.iter().map(|&v| self.tuples[v][i]).collect();
                    projection_ok &= structure::is_embedding(&induced, &comp, &image);
                    seen.insert(structure::canonical_form(&induced)?);
                }
                out.push(AgeCheck {
                    component: i,
                    size,
                    component_classes: comp_age.len(),
                    transversal_classes: seen.len(),
                    ages_match: seen == comp_age,
                    projection_ok,
                });
            }
        }
        Ok(out)
    }

    /// Graph of language `graph` edges with exactly one endpoint in the unary relation `name` of `unary`.
    pub fn bipartite_derived(&self, graph: u8, unary: u8, name: &str) -> Structure {
        let s = &self.structure;
        let edges: Vec<(usize, usize)> = (0..s.size())
            .tuple_combinations()
            .filter(|&(u, v)| s.adjacent_in(graph, u, v) && (s.in_unary(unary, name, u) != s.in_unary(unary, name, v)))
            .collect();
        Structure::graph(s.size(), &edges)
    }
}
