//! Verification batteries, one per library module, at desk-scale caps.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paramword::degrees::{brd_upper_bound, describe, enumerate_canonical_types, realized_type_oracle};
use paramword::encoding::{
    check_substitution_preservation, encode_poset, encode_triangle_free, graph_edge, order_leq, WordKind,
};
use paramword::gr::{find_witness, minimal_n, monochromatic_compose, verify_gr, CopyColoring, GrParams, Verdict};
use paramword::grn::{copy_word_graph, copy_word_poset, embed_graph_grn, embed_poset_grn};
use paramword::interpret::{
    embed_triangle_free_into_gp, find_triangle, gp_edge, gp_graph, metric_from_chains, superpose,
    ultrametric_from_tuples, GrowablePoset,
};
use paramword::structure::{
    all_posets_with_linext, all_triangle_free_graphs, find_embeddings, is_bipartite, is_embedding, is_metric,
    is_ultrametric, write_structure,
};
use paramword::{
    dim_bound, embedding_type, is_canonical_type, is_envelope, minimal_envelope, minimal_envelopes_exhaustive,
    random_word, substitute, tau, validate, Alphabet, Kind, ParameterWord, Space, Structure,
};

use crate::report::{run_check, Outcome, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Envelopes,
    Encodings,
    Grn,
    Degrees,
    Interpretations,
    Gr,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Envelopes, Suite::Encodings, Suite::Grn, Suite::Degrees, Suite::Interpretations, Suite::Gr];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Envelopes => "envelopes",
            Suite::Encodings => "encodings",
            Suite::Grn => "grn",
            Suite::Degrees => "degrees",
            Suite::Interpretations => "interpretations",
            Suite::Gr => "gr",
        }
    }

    pub fn run(self, seed: u64) -> SuiteReport {
        let checks = match self {
            Suite::Envelopes => envelopes(seed),
            Suite::Encodings => encodings(seed),
            Suite::Grn => grn(),
            Suite::Degrees => degrees(),
            Suite::Interpretations => interpretations(),
            Suite::Gr => gr(),
        };
        SuiteReport { name: self.name().to_string(), checks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}; expected one of envelopes, encodings, grn, degrees, interpretations, gr")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport, UnknownSuite> {
    Ok(name.parse::<Suite>()?.run(seed))
}

/// Counts instances and keeps the first failure.
#[derive(Default)]
struct Tally {
    count: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn finish(self, what: &str) -> Outcome {
        Outcome::new(self.count, format!("{what}: {} failures", self.failures), self.first)
    }
}

fn words_literal(set: &[ParameterWord], alphabet: &Alphabet) -> String {
    set.iter().map(|w| w.render_token(alphabet)).join(" ")
}

fn random_sets(seed: u64, count: usize) -> Vec<(usize, usize, Vec<ParameterWord>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let sigma = rng.gen_range(1..=3);
            let k = rng.gen_range(0..=2);
            let size = rng.gen_range(1..=3);
            let set = (0..size)
                .map(|_| {
                    let len = rng.gen_range(k..=8);
                    random_word(&mut rng, sigma, len, k).expect("k <= len")
                })
                .collect();
            (sigma, k, set)
        })
        .collect()
}

fn alphabet_of(sigma: usize) -> Alphabet {
    Alphabet::new("0123456789".chars().take(sigma)).expect("at most ten symbols")
}

fn envelopes(seed: u64) -> Vec<crate::report::Check> {
    let zero = Alphabet::zero();
    let z = |s: &str| validate(s, &zero).expect("literal");
    vec![
        run_check("worked-example", || {
            let s = vec![z("0"), z("000")];
            let env = minimal_envelope(&s);
            let t = tau(&s);
            let ok = env.word() == &z("0<0>0")
                && env.dim() == 1
                && t.elements() == [z("@empty"), z("0")]
                && is_envelope(&z("<0><1><2><3>"), &s)
                && is_envelope(&z("0<0><0>"), &s);
            let detail = format!("envelope {} type {}", env.word().render(&zero), words_literal(t.elements(), &zero));
            Outcome::new(1, detail, (!ok).then(|| words_literal(&s, &zero)))
        }),
        run_check("examples", || {
            let mut t = Tally::default();
            let empty = minimal_envelope(&[]);
            t.record(empty.word().is_empty() && empty.dim() == 0, || "@empty".into());
            let e = minimal_envelope(&[z("<0><0>")]);
            t.record(e.word() == &z("<0><0>") && e.dim() == 1, || "<0><0>".into());
            let env = minimal_envelope(&[z("0"), z("000")]);
            t.record(embedding_type(&env, &[z("00")]).is_err(), || "0<0>0 / 00".into());
            t.record(tau(&[z("00")]).elements() == [z("@empty")], || "00".into());
            t.record(tau(&[z("0<0><0>")]).elements() == [z("<0>")], || "0<0><0>".into());
            t.record(is_canonical_type(&[z("@empty"), z("0")]), || "@empty 0".into());
            t.record(!is_canonical_type(&[z("00")]), || "00".into());
            t.record(is_canonical_type(&[z("<0>")]), || "<0>".into());
            let bounds = [(1, 1, 2, 5), (3, 0, 2, 8), (1, 0, 0, 0)];
            for (s, k, l, want) in bounds {
                t.record(dim_bound(s, k, l).ok() == Some(want), || format!("dim_bound({s},{k},{l})"));
            }
            t.finish("hand-checked values")
        }),
        run_check("soundness-and-bound", || {
            let mut t = Tally::default();
            for (sigma, k, set) in random_sets(seed, 500) {
                let env = minimal_envelope(&set);
                let ty = tau(&set);
                let mut rebuilt: Vec<ParameterWord> =
                    ty.elements().iter().map(|u| substitute(env.word(), u).expect("type element fits")).collect();
                rebuilt.sort();
                let mut expected = set.clone();
                expected.sort();
                expected.dedup();
                let bound = dim_bound(sigma, k, expected.len()).expect("small");
                let ok = rebuilt == expected && env.dim() as u128 <= bound;
                let idempotent = tau(ty.elements()) == ty && is_canonical_type(ty.elements());
                t.record(ok && idempotent, || words_literal(&set, &alphabet_of(sigma)));
            }
            t.finish(&format!("random sets (seed {seed})"))
        }),
        run_check("first-occurrence-rigidity", || {
            let mut t = Tally::default();
            for (sigma, k) in [(1, 0), (1, 1), (3, 0), (3, 1)] {
                let words = Space::at_most(sigma, 4, k).words().expect("small space");
                let sets = words
                    .iter()
                    .map(|w| vec![w.clone()])
                    .chain(words.iter().tuple_combinations().map(|(u, v)| vec![u.clone(), v.clone()]));
                for set in sets {
                    let all = minimal_envelopes_exhaustive(&set, sigma).expect("small space");
                    let ok = all.iter().all(|e| e.first_occurrences() == all[0].first_occurrences());
                    t.record(ok, || words_literal(&set, &alphabet_of(sigma)));
                }
            }
            t.finish("sets of one or two words of length <= 4")
        }),
    ]
}

fn encodings(seed: u64) -> Vec<crate::report::Check> {
    let lxr = Alphabet::lxr();
    let zero = Alphabet::zero();
    vec![
        run_check("graph-words-triangle-free", || {
            let g = Space::at_most(1, 6, 1).words().expect("small space");
            let mut t = Tally::default();
            for (a, b, c) in g.iter().tuple_combinations() {
                let tri = graph_edge(a, b) && graph_edge(b, c) && graph_edge(a, c);
                t.record(!tri, || words_literal(&[a.clone(), b.clone(), c.clone()], &zero));
            }
            t.finish(&format!("triples of {} words", g.len()))
        }),
        run_check("order-axioms", || {
            let o = Space::at_most(3, 4, 0).words().expect("small space");
            let mut t = Tally::default();
            for a in &o {
                for b in &o {
                    let ab = order_leq(a, b);
                    let ba = order_leq(b, a);
                    let anti = !(ab.holds && ba.holds) || a == b;
                    let refl = a != b || ab.holds;
                    t.record(anti && refl, || words_literal(&[a.clone(), b.clone()], &lxr));
                    if !ab.holds || a == b {
                        continue;
                    }
                    for c in &o {
                        let bc = order_leq(b, c);
                        if !bc.holds || b == c {
                            continue;
                        }
                        let ac = order_leq(a, c);
                        let witness = a == c
                            || matches!((ab.witness, bc.witness, ac.witness), (Some(i), Some(j), Some(l)) if l <= i.min(j));
                        t.record(ac.holds && witness, || words_literal(&[a.clone(), b.clone(), c.clone()], &lxr));
                    }
                }
            }
            t.finish(&format!("pairs and chains over {} words", o.len()))
        }),
        run_check("encoder-round-trips", || {
            let mut t = Tally::default();
            for n in 0..=5 {
                for h in all_triangle_free_graphs(n, false) {
                    let words = encode_triangle_free(&h).expect("triangle-free").words;
                    let ok =
                        (0..n).tuple_combinations().all(|(u, v)| graph_edge(&words[u], &words[v]) == h.adjacent(u, v));
                    t.record(ok, || write_structure(&h));
                }
            }
            for n in 0..=4 {
                for p in all_posets_with_linext(n) {
                    let words = encode_poset(&p).expect("poset");
                    let ok = (0..n)
                        .cartesian_product(0..n)
                        .all(|(u, v)| order_leq(&words[u], &words[v]).holds == p.le(u, v));
                    t.record(ok, || write_structure(&p));
                }
            }
            t.finish("graphs <= 5 and posets <= 4")
        }),
        run_check("substitution-preservation", || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
            let mut t = Tally::default();
            for kind in [WordKind::Graph, WordKind::Poset] {
                let alphabet = kind.alphabet();
                let sigma = alphabet.len();
                let k = kind.vertex_params();
                for _ in 0..1000 {
                    let params = rng.gen_range(1..=6);
                    let len = rng.gen_range(params..=12);
                    let w = random_word(&mut rng, sigma, len, params).expect("params <= len");
                    let pair: Vec<ParameterWord> = (0..2)
                        .map(|_| {
                            let len = rng.gen_range(k..=params);
                            random_word(&mut rng, sigma, len, k).expect("k <= len")
                        })
                        .collect();
                    let ok = check_substitution_preservation(&w, &pair, kind).unwrap_or(false);
                    t.record(ok, || format!("W={} set={}", w.render(&alphabet), words_literal(&pair, &alphabet)));
                }
            }
            t.finish(&format!("random instances (seed {seed})"))
        }),
    ]
}

fn grn() -> Vec<crate::report::Check> {
    vec![
        run_check("embeddings", || {
            let mut t = Tally::default();
            for n in 0..=4 {
                for b in all_triangle_free_graphs(n, true) {
                    t.record(embed_graph_grn(&b).is_ok(), || write_structure(&b));
                }
                for b in all_posets_with_linext(n) {
                    t.record(embed_poset_grn(&b).is_ok(), || write_structure(&b));
                }
            }
            t.finish("self-verified embeddings of structures <= 4")
        }),
        run_check("graph-copy-words", || {
            let mut t = Tally::default();
            for n in 1..=5 {
                for b in all_triangle_free_graphs(n, true) {
                    for copy in (1..=n.min(3)).flat_map(|s| (0..n).combinations(s)) {
                        let a = b.induced(&copy);
                        t.record(copy_word_graph(&b, &a, &copy).is_ok(), || {
                            format!("B: {} copy {copy:?}", describe(&b))
                        });
                    }
                }
            }
            t.finish("copies in graphs <= 5")
        }),
        run_check("poset-copy-words", || {
            let mut t = Tally::default();
            for n in 1..=4 {
                for b in all_posets_with_linext(n) {
                    for copy in (1..=n.min(3)).flat_map(|s| (0..n).combinations(s)) {
                        let a = b.induced(&copy);
                        t.record(copy_word_poset(&b, &a, &copy).is_ok(), || {
                            format!("B: {} copy {copy:?}", describe(&b))
                        });
                    }
                }
            }
            t.finish("copies in posets <= 4")
        }),
    ]
}

fn degrees() -> Vec<crate::report::Check> {
    vec![
        run_check("vertex-bounds", || {
            let mut t = Tally::default();
            for kind in [WordKind::Graph, WordKind::Poset] {
                let bound = brd_upper_bound(&Structure::empty(Kind::Graph, 1), kind);
                t.record(bound.as_ref().ok() == Some(&1), || format!("{} vertex bound {bound:?}", kind.name()));
            }
            t.finish("one-vertex degrees equal 1")
        }),
        run_check("graph-pair-stabilization", || {
            let census = enumerate_canonical_types(WordKind::Graph, 2).expect("graph pairs").all_types();
            let at5 = realized_type_oracle(WordKind::Graph, 2, 5).expect("cap 5");
            let at6 = realized_type_oracle(WordKind::Graph, 2, 6).expect("cap 6");
            let ok = at5 == at6 && at5 == census;
            let detail =
                format!("{} canonical types, oracle {} at cap 5, {} at cap 6", census.len(), at5.len(), at6.len());
            Outcome::new(3, detail, (!ok).then(|| "graph pairs".to_string()))
        }),
        run_check("poset-pair-census", || {
            let census = enumerate_canonical_types(WordKind::Poset, 2).expect("poset pairs");
            let cap = dim_bound(3, 0, 2).expect("small") as usize;
            let oracle = realized_type_oracle(WordKind::Poset, 2, cap).expect("within cap");
            let counts: Vec<usize> = census.buckets.values().map(|b| b.types.len()).collect();
            let ok = oracle == census.all_types();
            let detail =
                format!("{} canonical types {counts:?}, oracle at cap {cap}: {}", census.total(), oracle.len());
            Outcome::new(census.total() as u64, detail, (!ok).then(|| "poset pairs".to_string()))
        }),
        run_check("edge-bound", || {
            let edge = Structure::graph(2, &[(0, 1)]);
            let bound = brd_upper_bound(&edge, WordKind::Graph).expect("edge");
            let detail = format!("edge in the triangle-free graph: bound {bound}, expected at least 4");
            Outcome::new(1, detail, (bound < 4).then(|| write_structure(&edge)))
        }),
    ]
}

fn weakly_increasing_chains(p: &GrowablePoset, d: usize) -> Vec<Vec<usize>> {
    (0..d).map(|_| 0..p.size()).multi_cartesian_product().filter(|c| c.windows(2).all(|w| p.le(w[0], w[1]))).collect()
}

fn interpretations() -> Vec<crate::report::Check> {
    vec![
        run_check("triangle-free-into-gp", || {
            let mut t = Tally::default();
            for n in 0..=4 {
                for h in all_triangle_free_graphs(n, false) {
                    let ok = embed_triangle_free_into_gp(&h).is_ok_and(|(gp, triples)| {
                        let same = (0..n)
                            .tuple_combinations()
                            .all(|(u, v)| gp_edge(&triples[u], &triples[v], &gp).unwrap_or(false) == h.adjacent(u, v));
                        gp.is_partial_order() && same && find_triangle(&gp_graph(&gp).1).is_none()
                    });
                    t.record(ok, || write_structure(&h));
                }
            }
            t.finish("triangle-free graphs <= 4")
        }),
        run_check("chain-metrics", || {
            let mut t = Tally::default();
            for size in 1..=3 {
                for p in all_posets_with_linext(size) {
                    let gp = GrowablePoset::from_structure(&p).expect("poset");
                    for d in 1..=3 {
                        let chains = weakly_increasing_chains(&gp, d);
                        let s: Vec<u32> = (0..=d as u32).collect();
                        let ok = metric_from_chains(&gp, d, &chains).is_ok_and(|m| is_metric(&m, &s));
                        t.record(ok, || format!("d={d}\n{}", write_structure(&p)));
                    }
                }
            }
            t.finish("posets <= 3, d <= 3")
        }),
        run_check("ultrametrics", || {
            let mut t = Tally::default();
            for d in 1..=3 {
                for base in 2..=3usize {
                    let tuples: Vec<Vec<usize>> = (0..d).map(|_| 0..base).multi_cartesian_product().collect();
                    let ok = ultrametric_from_tuples(d, &tuples).is_ok_and(|m| is_ultrametric(&m));
                    t.record(ok, || format!("d={d} base={base}"));
                }
            }
            t.finish("full tuple sets")
        }),
        run_check("superpositions", || {
            let mut t = Tally::default();
            let mut cases: Vec<Vec<Structure>> = all_posets_with_linext(3)
                .into_iter()
                .map(|p| vec![Structure::poset_from_fn(3, |u, v| p.le(u, v)), Structure::linear(3)])
                .collect();
            for h in all_triangle_free_graphs(3, false) {
                for members in (0..3usize).powerset() {
                    cases.push(vec![h.clone(), Structure::unary(3, "U", &members)]);
                }
            }
            for comps in cases {
                let sp = superpose(&comps).expect("supported kinds");
                let ages = sp.check_reduct_ages(3).expect("small");
                let mut ok = ages.iter().all(|c| c.ages_match && c.projection_ok);
                if comps[1].kind() == Kind::Unary {
                    ok &= is_bipartite(&sp.bipartite_derived(0, 1, "U"));
                }
                t.record(ok, || comps.iter().map(write_structure).join("---\n"));
            }
            t.finish("products with linear orders and unary predicates")
        }),
        run_check("embedding-composition", || {
            let mut t = Tally::default();
            let posets = all_posets_with_linext(3);
            let a = Structure::poset_linext(2, &[(0, 1)]);
            let c = Structure::poset_linext(4, &[(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)]);
            for b in posets {
                let ab = find_embeddings(&a, &b).expect("small");
                let bc = find_embeddings(&b, &c).expect("small");
                for (f, g) in ab.iter().cartesian_product(&bc) {
                    let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                    t.record(is_embedding(&a, &c, &h), || format!("{f:?} then {g:?}"));
                }
            }
            t.finish("2-chain into posets <= 3 into the 4-chain")
        }),
    ]
}

fn gr() -> Vec<crate::report::Check> {
    let p1012 = GrParams { sigma: 1, k: 0, n: 1, r: 2 };
    vec![
        run_check("minimal-n-trivial-instance", || {
            let found = minimal_n(p1012, 3).expect("small");
            let n = found.as_ref().map(|(n, _)| *n);
            let reverified = found.as_ref().is_some_and(|(_, reports)| {
                reports.iter().all(|r| match &r.verdict {
                    Verdict::Fails { counterexample } => {
                        find_witness(p1012, r.big_n, counterexample).ok() == Some(None)
                    }
                    Verdict::Holds => true,
                })
            });
            let detail = format!(
                "minimalN({},{},{},{}) = {}",
                p1012.sigma,
                p1012.k,
                p1012.n,
                p1012.r,
                n.map_or("none".into(), |n| n.to_string())
            );
            Outcome::new(1, detail, (n != Some(2) || !reverified).then(|| p1012.to_string()))
        }),
        run_check("monotone-in-n", || {
            let mut t = Tally::default();
            let cases = [p1012, GrParams { sigma: 2, k: 0, n: 1, r: 2 }, GrParams { sigma: 1, k: 1, n: 2, r: 2 }];
            for p in cases {
                let verdicts: Vec<bool> = (0..=3).map(|n| verify_gr(p, n).is_ok_and(|r| r.holds())).collect();
                let ok = verdicts.iter().tuple_windows().all(|(a, b)| !a || *b);
                t.record(ok, || format!("{p} verdicts {verdicts:?}"));
            }
            t.finish("verdicts never flip back as N grows")
        }),
        run_check("n-equals-k", || {
            let mut t = Tally::default();
            for (sigma, k, r) in [(1, 0, 2), (1, 1, 3), (2, 1, 2), (2, 2, 2)] {
                let p = GrParams { sigma, k, n: k, r };
                t.record(verify_gr(p, k).is_ok_and(|r| r.holds()), || p.to_string());
            }
            t.finish("N = n = k always holds")
        }),
        run_check("witness-composition", || {
            let mut t = Tally::default();
            let domain = Space::at_most(1, 2, 0).words().expect("small");
            let shapes = Space::at_most(1, 1, 0).words().expect("small");
            for bits in 0..1usize << domain.len() {
                let chi = paramword::gr::ColoringAssignment::new(
                    domain.clone(),
                    (0..domain.len()).map(|i| bits >> i & 1).collect(),
                    2,
                )
                .expect("colours below 2");
                let Ok(Some(w)) = find_witness(p1012, 2, &chi) else {
                    t.record(false, || format!("colouring {bits:03b} has no witness at N=2"));
                    continue;
                };
                let pulled =
                    monochromatic_compose(&CopyColoring::of_vertices(&chi), &w, &[ParameterWord::empty()], &shapes);
                t.record(pulled.is_ok_and(|c| c.is_monochromatic()), || format!("colouring {bits:03b} witness {w}"));
            }
            t.finish("colourings of words of length <= 2")
        }),
    ]
}
