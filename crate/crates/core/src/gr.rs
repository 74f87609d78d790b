//! Exhaustive checks of the finite Graham–Rothschild statement on tiny parameters.
//!
//! For an `r`-colouring of `[Σ](≤N choose k)` a witness is a word `W` in
//! `[Σ](≤N choose n)` whose subspace `W([Σ](≤n choose k))` is monochromatic.
//! [`verify_gr`] decides whether every colouring has a witness, either by
//! enumerating all colourings or by a pruned search for a colouring without
//! one. [`sample_falsify`] only samples and can never prove the statement.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{substitute, ParameterWord, Space};

/// Largest number of colourings [`verify_gr`] enumerates outright.
pub const DEFAULT_COLORING_CAP: u128 = 1 << 24;
/// Largest number of search nodes the pruned search visits.
pub const DEFAULT_NODE_CAP: u128 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrParams {
    pub sigma: usize,
    pub k: usize,
    pub n: usize,
    pub r: usize,
}

impl fmt::Display for GrParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma={} k={} n={} r={}", self.sigma, self.k, self.n, self.r)
    }
}

/// A total colouring of an explicit finite domain of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringAssignment {
    pub domain: Vec<ParameterWord>,
    pub colors: Vec<usize>,
    pub r: usize,
    index: HashMap<ParameterWord, usize>,
}

impl ColoringAssignment {
    pub fn new(domain: Vec<ParameterWord>, colors: Vec<usize>, r: usize) -> Result<Self> {
        if colors.len() != domain.len() {
            return Err(Error::MissingColor(format!("{} colours for {} words", colors.len(), domain.len())));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::MissingColor(format!("colour {c} is not below {r}")));
        }
        let index = domain.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(ColoringAssignment { domain, colors, r, index })
    }

    pub fn from_fn(domain: Vec<ParameterWord>, r: usize, f: impl Fn(&ParameterWord) -> usize) -> Result<Self> {
        let colors = domain.iter().map(&f).collect();
        Self::new(domain, colors, r)
    }

    pub fn color(&self, w: &ParameterWord) -> Result<usize> {
        self.index.get(w).map(|&i| self.colors[i]).ok_or_else(|| Error::MissingColor(w.to_string()))
    }

    pub fn is_monochromatic(&self, words: &[ParameterWord]) -> Result<bool> {
        let colors = words.iter().map(|w| self.color(w)).collect::<Result<Vec<_>>>()?;
        Ok(colors.windows(2).all(|p| p[0] == p[1]))
    }
}

/// How [`verify_gr`] settled the question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Every colouring was enumerated.
    Enumerated,
    /// Pruned search for a colouring without a witness, colours introduced in order.
    Pruned,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Enumerated => "enumerated",
            Method::Pruned => "pruned-search",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails { counterexample: ColoringAssignment },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrReport {
    pub params: GrParams,
    pub big_n: usize,
    pub verdict: Verdict,
    pub method: Method,
    /// Colourings enumerated, or search nodes visited.
    pub searched: u128,
    pub domain_size: usize,
    pub candidates: usize,
}

impl GrReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// One line for the results ledger.
    pub fn ledger_line(&self) -> String {
        format!(
            "gr {} N={} verdict={} method={} searched={} domain={} candidates={}",
            self.params,
            self.big_n,
            if self.holds() { "holds" } else { "fails" },
            self.method,
            self.searched,
            self.domain_size,
            self.candidates
        )
    }
}

#[derive(Debug, Clone)]
pub struct GrConfig {
    pub coloring_cap: u128,
    pub node_cap: u128,
}

impl Default for GrConfig {
    fn default() -> Self {
        GrConfig { coloring_cap: DEFAULT_COLORING_CAP, node_cap: DEFAULT_NODE_CAP }
    }
}

/// The domain, candidate words in (length, lex) order, and each candidate's subspace as domain indices.
struct Instance {
    domain: Vec<ParameterWord>,
    candidates: Vec<ParameterWord>,
    images: Vec<Vec<usize>>,
}

impl Instance {
    fn new(p: GrParams, big_n: usize) -> Result<Self> {
        let domain = Space::at_most(p.sigma, big_n, p.k).words()?;
        let template = Space::at_most(p.sigma, p.n, p.k).words()?;
        let candidates = Space::at_most(p.sigma, big_n, p.n).words()?;
        let index: HashMap<&ParameterWord, usize> = domain.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let images = candidates
            .iter()
            .map(|w| {
                let mut img = template.iter().map(|u| Ok(index[&substitute(w, u)?])).collect::<Result<Vec<usize>>>()?;
                img.sort_unstable();
                img.dedup();
                Ok(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance { domain, candidates, images })
    }

    fn witness_index(&self, colors: &[usize]) -> Option<usize> {
        self.images.iter().position(|img| img.iter().all(|&i| colors[i] == colors[img[0]]))
    }
}

fn check_params(p: GrParams) -> Result<()> {
    if p.sigma == 0 || p.r == 0 {
        return Err(Error::InvalidAlphabet("alphabet and palette must be non-empty".into()));
    }
    Ok(())
}

/// First witness `W` in (length, lex) order for `coloring`, recomputed from the definition.
pub fn find_witness(p: GrParams, big_n: usize, coloring: &ColoringAssignment) -> Result<Option<ParameterWord>> {
    let template = Space::at_most(p.sigma, p.n, p.k).words()?;
    for w in Space::at_most(p.sigma, big_n, p.n).enumerate()? {
        let image = template.iter().map(|u| substitute(&w, u)).collect::<Result<Vec<_>>>()?;
        if coloring.is_monochromatic(&image)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn verify_gr(p: GrParams, big_n: usize) -> Result<GrReport> {
    verify_gr_with(p, big_n, &GrConfig::default())
}

pub fn verify_gr_with(p: GrParams, big_n: usize, config: &GrConfig) -> Result<GrReport> {
    check_params(p)?;
    let inst = Instance::new(p, big_n)?;
    let m = inst.domain.len();
    let total = (p.r as u128).checked_pow(m as u32);
    let report = |verdict, method, searched| GrReport {
        params: p,
        big_n,
        verdict,
        method,
        searched,
        domain_size: m,
        candidates: inst.candidates.len(),
    };
    let (verdict, method, searched) = match total {
        Some(total) if total <= config.coloring_cap => {
            let decode = |mut c: u128| -> Vec<usize> {
                let mut colors = vec![0; m];
                for slot in colors.iter_mut() {
                    *slot = (c % p.r as u128) as usize;
                    c /= p.r as u128;
                }
                colors
            };
            let bad =
                (0..total as u64).into_par_iter().find_first(|&c| inst.witness_index(&decode(u128::from(c))).is_none());
            let verdict = match bad {
                None => Verdict::Holds,
                Some(c) => Verdict::Fails {
                    counterexample: ColoringAssignment::new(inst.domain.clone(), decode(u128::from(c)), p.r)?,
                },
            };
            (verdict, Method::Enumerated, total)
        }
        _ => {
            let (found, nodes) = pruned_search(&inst, p.r, config.node_cap)?;
            let verdict = match found {
                None => Verdict::Holds,
                Some(colors) => {
                    Verdict::Fails { counterexample: ColoringAssignment::new(inst.domain.clone(), colors, p.r)? }
                }
            };
            (verdict, Method::Pruned, nodes)
        }
    };
    if let Verdict::Fails { counterexample } = &verdict {
        if find_witness(p, big_n, counterexample)?.is_some() {
            return Err(Error::InternalCheckFailed("reported counterexample has a witness".into()));
        }
    }
    Ok(report(verdict, method, searched))
}

/// Depth-first colouring of the domain in order; a branch dies once some subspace is complete and monochromatic.
fn pruned_search(inst: &Instance, r: usize, cap: u128) -> Result<(Option<Vec<usize>>, u128)> {
    let m = inst.domain.len();
    // subspaces grouped by their last domain index
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (c, img) in inst.images.iter().enumerate() {
        if let Some(&last) = img.last() {
            closing[last].push(c);
        }
    }
    if inst.candidates.is_empty() {
        return Ok((Some(vec![0; m]), 0));
    }
    if inst.images.iter().any(Vec::is_empty) {
        // an empty subspace is trivially monochromatic
        return Ok((None, 0));
    }
    let mut colors = vec![0usize; m];
    let mut nodes = 0u128;
    fn go(
        i: usize,
        used: usize,
        inst: &Instance,
        closing: &[Vec<usize>],
        r: usize,
        colors: &mut Vec<usize>,
        nodes: &mut u128,
        cap: u128,
    ) -> Result<bool> {
        if i == colors.len() {
            return Ok(true);
        }
        for c in 0..r.min(used + 1) {
            *nodes += 1;
            if *nodes > cap {
                return Err(Error::SearchCapExceeded { explored: *nodes, cap });
            }
            colors[i] = c;
            let dead = closing[i].iter().any(|&w| inst.images[w].iter().all(|&j| colors[j] == c));
            if !dead && go(i + 1, used.max(c + 1), inst, closing, r, colors, nodes, cap)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let found = go(0, 0, inst, &closing, r, &mut colors, &mut nodes, cap)?;
    Ok((found.then_some(colors), nodes))
}

/// Least `N ≤ max_n` at which the statement holds.
pub fn minimal_n(p: GrParams, max_n: usize) -> Result<Option<(usize, Vec<GrReport>)>> {
    minimal_n_with(p, max_n, &GrConfig::default())
}

pub fn minimal_n_with(p: GrParams, max_n: usize, config: &GrConfig) -> Result<Option<(usize, Vec<GrReport>)>> {
    let mut reports = Vec::new();
    for big_n in 0..=max_n {
        let rep = verify_gr_with(p, big_n, config)?;
        let holds = rep.holds();
        reports.push(rep);
        if holds {
            return Ok(Some((big_n, reports)));
        }
    }
    Ok(None)
}

/// Random colourings searched for one without a witness; `None` proves nothing.
pub fn sample_falsify(p: GrParams, big_n: usize, samples: u64, seed: u64) -> Result<Option<ColoringAssignment>> {
    check_params(p)?;
    let inst = Instance::new(p, big_n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let colors: Vec<usize> = (0..inst.domain.len()).map(|_| rng.gen_range(0..p.r)).collect();
        if inst.witness_index(&colors).is_none() {
            return Ok(Some(ColoringAssignment::new(inst.domain.clone(), colors, p.r)?));
        }
    }
    Ok(None)
}

/// A colouring of copies, each copy a sorted set of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyColoring {
    pub colors: BTreeMap<Vec<ParameterWord>, usize>,
}

fn normalize(mut copy: Vec<ParameterWord>) -> Vec<ParameterWord> {
    copy.sort();
    copy.dedup();
    copy
}

impl CopyColoring {
    pub fn new(pairs: impl IntoIterator<Item = (Vec<ParameterWord>, usize)>) -> Self {
        CopyColoring { colors: pairs.into_iter().map(|(c, x)| (normalize(c), x)).collect() }
    }

    /// Copies of a single vertex, from a word colouring.
    pub fn of_vertices(chi: &ColoringAssignment) -> Self {
        Self::new(chi.domain.iter().cloned().zip(chi.colors.iter().copied()).map(|(w, c)| (vec![w], c)))
    }

    pub fn color(&self, copy: &[ParameterWord]) -> Result<usize> {
        let key = normalize(copy.to_vec());
        self.colors.get(&key).copied().ok_or_else(|| {
            Error::MissingColor(format!("{{{}}}", key.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")))
        })
    }

    pub fn is_monochromatic(&self) -> bool {
        let mut it = self.colors.values();
        it.next().is_none_or(|first| it.all(|c| c == first))
    }
}

/// `χ'(S) = χ(W[S])` on each copy `S` of `domain`.
pub fn pull_back(chi: &CopyColoring, w: &ParameterWord, domain: &[Vec<ParameterWord>]) -> Result<CopyColoring> {
    let mut out = Vec::with_capacity(domain.len());
    for copy in domain {
        let image = copy.iter().map(|u| substitute(w, u)).collect::<Result<Vec<_>>>()?;
        out.push((copy.clone(), chi.color(&image)?));
    }
    Ok(CopyColoring::new(out))
}

/// `χ'(U(T)) = χ(W(U(T)))` for every `U` in `shapes`, where `T` is the copy's type.
pub fn monochromatic_compose(
    chi: &CopyColoring,
    w: &ParameterWord,
    template: &[ParameterWord],
    shapes: &[ParameterWord],
) -> Result<CopyColoring> {
    let domain = shapes
        .iter()
        .map(|u| template.iter().map(|t| substitute(u, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    pull_back(chi, w, &domain)
}

/// Appends one line per report to a plain-text results ledger.
pub fn append_results(path: &Path, reports: &[GrReport]) -> std::io::Result<()> {
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    for r in reports {
        writeln!(f, "{}", r.ledger_line())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{validate, Alphabet};

    const P1012: GrParams = GrParams { sigma: 1, k: 0, n: 1, r: 2 };

    fn z(s: &str) -> ParameterWord {
        validate(s, &Alphabet::zero()).unwrap()
    }

    #[test]
    fn trivial_instance() {
        let r1 = verify_gr(P1012, 1).unwrap();
        assert_eq!(r1.searched, 4);
        let Verdict::Fails { counterexample } = &r1.verdict else { panic!("expected a counterexample") };
        assert_ne!(counterexample.color(&z("")).unwrap(), counterexample.color(&z("0")).unwrap());
        let r2 = verify_gr(P1012, 2).unwrap();
        assert!(r2.holds());
        assert_eq!(r2.searched, 8);
        assert_eq!(minimal_n(P1012, 4).unwrap().unwrap().0, 2);
        assert_eq!(minimal_n(GrParams { sigma: 1, k: 1, n: 1, r: 1 }, 3).unwrap().unwrap().0, 1);
    }

    #[test]
    fn pruned_search_agrees_with_enumeration() {
        let pruned = GrConfig { coloring_cap: 0, ..GrConfig::default() };
        for p in [P1012, GrParams { sigma: 2, k: 0, n: 1, r: 2 }, GrParams { sigma: 1, k: 1, n: 2, r: 2 }] {
            for big_n in 0..=3 {
                let a = verify_gr(p, big_n).unwrap();
                let b = verify_gr_with(p, big_n, &pruned).unwrap();
                assert_eq!(a.holds(), b.holds(), "{p} N={big_n}");
                assert_eq!(b.method, Method::Pruned);
            }
        }
    }

    #[test]
    fn n_equal_k_holds_immediately() {
        for (sigma, k) in [(1, 0), (2, 1), (1, 2)] {
            let p = GrParams { sigma, k, n: k, r: 3 };
            assert!(verify_gr(p, k).unwrap().holds());
        }
    }

    #[test]
    fn witness_found_in_shortlex_order() {
        let domain = Space::at_most(1, 2, 0).words().unwrap();
        let chi = ColoringAssignment::from_fn(domain, 2, |w| usize::from(w.len() == 1)).unwrap();
        // ∅ and 00 share a colour; λ0λ0 and λ0 0 both reach them, λ0 0 comes first in lex order
        let w = find_witness(P1012, 2, &chi).unwrap().unwrap();
        assert_eq!(w, z("<0>0"));
    }

    #[test]
    fn sampling_finds_the_small_counterexample() {
        let found = sample_falsify(P1012, 1, 100, 7).unwrap().unwrap();
        assert!(find_witness(P1012, 1, &found).unwrap().is_none());
        assert!(sample_falsify(P1012, 2, 100, 7).unwrap().is_none());
    }

    #[test]
    fn compose_identity_and_constant() {
        let domain = Space::at_most(1, 2, 0).words().unwrap();
        let chi = ColoringAssignment::from_fn(domain.clone(), 2, |w| w.len() % 2).unwrap();
        let copies = CopyColoring::of_vertices(&chi);
        let shapes: Vec<Vec<ParameterWord>> = domain.iter().map(|w| vec![w.clone()]).collect();
        assert_eq!(pull_back(&copies, &ParameterWord::identity(2), &shapes).unwrap(), copies);
        let constant = CopyColoring::of_vertices(&ColoringAssignment::from_fn(domain, 2, |_| 1).unwrap());
        let pulled = monochromatic_compose(&constant, &z("0<0>"), &[ParameterWord::empty()], &[z(""), z("0")]).unwrap();
        assert!(pulled.is_monochromatic());
    }

    #[test]
    fn compose_through_witness_is_monochromatic() {
        let domain = Space::at_most(1, 2, 0).words().unwrap();
        for bits in 0..8usize {
            let chi = ColoringAssignment::new(domain.clone(), (0..3).map(|i| bits >> i & 1).collect(), 2).unwrap();
            let w = find_witness(P1012, 2, &chi).unwrap().unwrap();
            let shapes = Space::at_most(1, 1, 0).words().unwrap();
            let pulled =
                monochromatic_compose(&CopyColoring::of_vertices(&chi), &w, &[ParameterWord::empty()], &shapes)
                    .unwrap();
            assert_eq!(pulled.colors.len(), 2);
            assert!(pulled.is_monochromatic());
        }
    }

    #[test]
    fn missing_colour_is_reported() {
        let chi = CopyColoring::new([(vec![z("0")], 0)]);
        assert!(matches!(chi.color(&[z("00")]), Err(Error::MissingColor(_))));
        assert!(matches!(ColoringAssignment::new(vec![z("")], vec![2], 2), Err(Error::MissingColor(_))));
    }
}
