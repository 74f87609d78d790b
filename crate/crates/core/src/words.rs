//! Parameter words over a finite alphabet, substitution, and parameter spaces.
//!
//! A parameter word is a finite string over `Σ ∪ {λ0, λ1, …}` using exactly the
//! parameters `λ0 … λ(k-1)`, with first occurrences in index order. Alphabet
//! symbols are stored as indices into an [`Alphabet`], so words are independent
//! of how the symbols are spelled; the derived ordering on [`Letter`] puts every
//! alphabet symbol before every parameter, which is the enumeration order used
//! throughout the crate.
//!
//! The literal syntax writes symbols verbatim and parameter `i` as `<i>`:
//! `0<0><0>` is `0λ0λ0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// CLI token for the empty word.
pub const EMPTY_TOKEN: &str = "@empty";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be nonempty".into()));
        }
        for (i, &c) in symbols.iter().enumerate() {
            if c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '@' | ',') {
                return Err(Error::InvalidAlphabet(format!("symbol {c:?} is reserved")));
            }
            if symbols[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parse a comma-free declaration such as `LXR`.
    pub fn parse(decl: &str) -> Result<Self> {
        Self::new(decl.chars())
    }

    /// `{0}`, the alphabet of the triangle-free graph encoding.
    pub fn zero() -> Self {
        Alphabet { symbols: vec!['0'] }
    }

    /// `{L, X, R}` with `L < X < R`, the alphabet of the partial order encoding.
    pub fn lxr() -> Self {
        Alphabet { symbols: vec!['L', 'X', 'R'] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as u8)
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.index_of(c).map(Letter::Sym)
    }

    pub fn to_decl(&self) -> String {
        self.symbols.iter().collect()
    }
}

/// One position of a parameter word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Alphabet symbol, by index into the alphabet.
    Sym(u8),
    /// Parameter `λi`.
    Param(u16),
}

impl Letter {
    pub fn is_param(self) -> bool {
        matches!(self, Letter::Param(_))
    }

    pub fn param(self) -> Option<usize> {
        match self {
            Letter::Param(i) => Some(i as usize),
            Letter::Sym(_) => None,
        }
    }
}

/// A validated parameter word. Construction always goes through [`ParameterWord::from_letters`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParameterWord {
    letters: Vec<Letter>,
    params: usize,
}

impl ParameterWord {
    /// Validate a raw letter sequence.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        let mut next = 0usize;
        for (position, &l) in letters.iter().enumerate() {
            if let Letter::Param(i) = l {
                let i = i as usize;
                match i.cmp(&next) {
                    Ordering::Less => {}
                    Ordering::Equal => next += 1,
                    Ordering::Greater => {
                        return Err(Error::MalformedWord {
                            position,
                            reason: format!("parameter {i} occurs before the first occurrence of parameter {next}"),
                        })
                    }
                }
            }
        }
        Ok(ParameterWord { letters, params: next })
    }

    pub fn empty() -> Self {
        ParameterWord { letters: Vec::new(), params: 0 }
    }

    /// `λ0 λ1 … λ(n-1)`.
    pub fn identity(n: usize) -> Self {
        ParameterWord { letters: (0..n).map(|i| Letter::Param(i as u16)).collect(), params: n }
    }

    /// A parameter-free word from symbol indices.
    pub fn from_symbols(symbols: &[u8]) -> Self {
        ParameterWord { letters: symbols.iter().map(|&s| Letter::Sym(s)).collect(), params: 0 }
    }

    /// Parse the literal syntax against `alphabet`.
    pub fn parse(literal: &str, alphabet: &Alphabet) -> Result<Self> {
        validate(literal, alphabet)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn get(&self, i: usize) -> Option<Letter> {
        self.letters.get(i).copied()
    }

    /// Positions of the first occurrences of `λ0, λ1, …`.
    pub fn first_occurrences(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.params);
        for (pos, &l) in self.letters.iter().enumerate() {
            if let Letter::Param(i) = l {
                if i as usize == out.len() {
                    out.push(pos);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.params == self.letters.len() && self.letters.iter().enumerate().all(|(i, &l)| l == Letter::Param(i as u16))
    }

    /// Ordering by length first, then lexicographically.
    pub fn shortlex_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }

    /// Plain lexicographic comparison; a proper prefix is smaller.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_letters(&self.letters, alphabet)
    }

    /// Like [`render`](Self::render) but prints the empty word as `@empty`.
    pub fn render_token(&self, alphabet: &Alphabet) -> String {
        if self.is_empty() {
            EMPTY_TOKEN.to_string()
        } else {
            self.render(alphabet)
        }
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }
}

impl PartialOrd for ParameterWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex: the canonical order used for sets of words.
impl Ord for ParameterWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

/// Displays with symbol indices as digits; use [`ParameterWord::render`] for real alphabets.
impl fmt::Display for ParameterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            match l {
                Letter::Sym(s) => write!(f, "{s}")?,
                Letter::Param(i) => write!(f, "<{i}>")?,
            }
        }
        Ok(())
    }
}

pub fn render_letters(letters: &[Letter], alphabet: &Alphabet) -> String {
    let mut out = String::new();
    for &l in letters {
        match l {
            Letter::Sym(s) => out.push(alphabet.symbol(s)),
            Letter::Param(i) => {
                out.push('<');
                out.push_str(&i.to_string());
                out.push('>');
            }
        }
    }
    out
}

/// Parse a word literal into letters without checking parameter order.
pub fn parse_letters(literal: &str, alphabet: &Alphabet) -> Result<Vec<Letter>> {
    if literal == EMPTY_TOKEN {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut chars = literal.char_indices().peekable();
    let mut position = 0;
    while let Some((_, c)) = chars.next() {
        if c == '<' {
            let mut digits = String::new();
            loop {
                match chars.next() {
                    Some((_, '>')) => break,
                    Some((_, d)) if d.is_ascii_digit() => digits.push(d),
                    _ => {
                        return Err(Error::MalformedWord {
                            position,
                            reason: "unterminated or non-numeric parameter".into(),
                        })
                    }
                }
            }
            let i: u16 = digits
                .parse()
                .map_err(|_| Error::MalformedWord { position, reason: format!("bad parameter index {digits:?}") })?;
            out.push(Letter::Param(i));
        } else {
            match alphabet.index_of(c) {
                Some(s) => out.push(Letter::Sym(s)),
                None => return Err(Error::MalformedWord { position, reason: format!("unknown symbol {c:?}") }),
            }
        }
        position += 1;
    }
    Ok(out)
}

/// Parse and validate a word literal.
pub fn validate(literal: &str, alphabet: &Alphabet) -> Result<ParameterWord> {
    ParameterWord::from_letters(parse_letters(literal, alphabet)?)
}

/// `W(U)`: replace `λi` by `U_i` for `i < |U|` and cut before the first `λ|U|`.
pub fn substitute(w: &ParameterWord, u: &ParameterWord) -> Result<ParameterWord> {
    let cut = u.len();
    if cut > w.params {
        return Err(Error::SubstitutionArity { given: cut, params: w.params });
    }
    let mut letters = Vec::with_capacity(w.len());
    for &l in &w.letters {
        match l {
            Letter::Sym(_) => letters.push(l),
            Letter::Param(i) if (i as usize) < cut => letters.push(u.letters[i as usize]),
            // first occurrences are ordered, so the first parameter >= |U| is λ|U|
            Letter::Param(_) => break,
        }
    }
    Ok(ParameterWord { letters, params: u.params })
}

/// Image of a set under substitution, with any collisions reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionImage {
    pub words: Vec<ParameterWord>,
    /// Pairs of input indices mapped to the same word.
    pub collisions: Vec<(usize, usize)>,
}

pub fn substitute_set(w: &ParameterWord, set: &[ParameterWord]) -> Result<SubstitutionImage> {
    let mut seen: BTreeMap<ParameterWord, usize> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (idx, u) in set.iter().enumerate() {
        let image = substitute(w, u)?;
        if let Some(&prev) = seen.get(&image) {
            collisions.push((prev, idx));
        } else {
            seen.insert(image, idx);
        }
    }
    Ok(SubstitutionImage { words: seen.into_keys().collect(), collisions })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthBound {
    Exactly(usize),
    AtMost(usize),
}

/// `[Σ](n choose k)` (exact) or `[Σ](≤n choose k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub alphabet_size: usize,
    pub bound: LengthBound,
    pub params: usize,
}

impl Space {
    pub fn exact(alphabet_size: usize, n: usize, k: usize) -> Self {
        Space { alphabet_size, bound: LengthBound::Exactly(n), params: k }
    }

    pub fn at_most(alphabet_size: usize, n: usize, k: usize) -> Self {
        Space { alphabet_size, bound: LengthBound::AtMost(n), params: k }
    }

    fn lengths(&self) -> std::ops::RangeInclusive<usize> {
        match self.bound {
            LengthBound::Exactly(n) => n..=n,
            LengthBound::AtMost(n) => 0..=n,
        }
    }

    /// Number of members, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.lengths().map(|n| count_exact(self.alphabet_size, n, self.params)).fold(0u128, u128::saturating_add)
    }

    pub fn enumerate(&self) -> Result<SpaceIter> {
        self.enumerate_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_capped(&self, cap: u128) -> Result<SpaceIter> {
        let count = self.count();
        if count > cap {
            return Err(Error::BoundTooLarge { count, cap });
        }
        Ok(SpaceIter::new(self.alphabet_size, self.lengths(), self.params))
    }

    /// Collect all members; shorthand for small spaces.
    pub fn words(&self) -> Result<Vec<ParameterWord>> {
        Ok(self.enumerate()?.collect())
    }
}

/// Words of length exactly `n` using exactly `k` parameters.
pub fn count_exact(alphabet_size: usize, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    // ways[j]: prefixes that have introduced j parameters so far
    let mut ways = vec![0u128; k + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; k + 1];
        for j in 0..=k {
            if ways[j] == 0 {
                continue;
            }
            let stay = ways[j].saturating_mul((alphabet_size + j) as u128);
            next[j] = next[j].saturating_add(stay);
            if j < k {
                next[j + 1] = next[j + 1].saturating_add(ways[j]);
            }
        }
        ways = next;
    }
    ways[k]
}

/// A random member of `[Σ](n choose k)`; each position picks uniformly among the
/// letters that still allow the remaining parameters to be introduced.
pub fn random_word<R: rand::Rng + ?Sized>(
    rng: &mut R,
    alphabet_size: usize,
    n: usize,
    k: usize,
) -> Result<ParameterWord> {
    if k > n || (alphabet_size == 0 && k == 0 && n > 0) {
        return Err(Error::InvalidAlphabet(format!(
            "no {k}-parameter words of length {n} over {alphabet_size} symbols"
        )));
    }
    let mut letters = Vec::with_capacity(n);
    let mut used = 0usize;
    for pos in 0..n {
        let remaining = n - pos - 1;
        let must_open = k - used > remaining;
        let mut choices: Vec<Letter> = Vec::new();
        if !must_open {
            choices.extend((0..alphabet_size).map(|s| Letter::Sym(s as u8)));
            choices.extend((0..used).map(|i| Letter::Param(i as u16)));
        }
        if used < k {
            choices.push(Letter::Param(used as u16));
        }
        let l = choices[rng.gen_range(0..choices.len())];
        if l == Letter::Param(used as u16) {
            used += 1;
        }
        letters.push(l);
    }
    ParameterWord::from_letters(letters)
}

/// Lazily emits a space in length-major, then lexicographic order.
#[derive(Debug, Clone)]
pub struct SpaceIter {
    alphabet_size: usize,
    k: usize,
    lengths: std::ops::RangeInclusive<usize>,
    current: Option<Vec<Letter>>,
    fresh_length: bool,
}

impl SpaceIter {
    fn new(alphabet_size: usize, lengths: std::ops::RangeInclusive<usize>, k: usize) -> Self {
        SpaceIter { alphabet_size, k, lengths, current: None, fresh_length: true }
    }

    /// Smallest valid completion of `prefix` to length `n`, if any.
    fn complete(&self, prefix: &mut Vec<Letter>, mut used: usize, n: usize) -> bool {
        while prefix.len() < n {
            let remaining_after = n - prefix.len() - 1;
            if self.alphabet_size > 0 && remaining_after >= self.k - used {
                prefix.push(Letter::Sym(0));
            } else if used > 0 && remaining_after >= self.k - used {
                prefix.push(Letter::Param(0));
            } else if used < self.k && remaining_after >= self.k - used - 1 {
                prefix.push(Letter::Param(used as u16));
                used += 1;
            } else {
                return false;
            }
        }
        used == self.k
    }

    fn successor(&self, word: &[Letter]) -> Option<Vec<Letter>> {
        let n = word.len();
        // used[p] = parameters introduced strictly before position p
        let mut used = Vec::with_capacity(n + 1);
        let mut u = 0usize;
        for &l in word {
            used.push(u);
            if l == Letter::Param(u as u16) {
                u += 1;
            }
        }
        for p in (0..n).rev() {
            let before = used[p];
            let mut candidate = next_letter(word[p], self.alphabet_size);
            while let Some(c) = candidate {
                let after = match c {
                    Letter::Sym(_) => before,
                    Letter::Param(i) if (i as usize) < before => before,
                    Letter::Param(i) if i as usize == before && before < self.k => before + 1,
                    Letter::Param(_) => break,
                };
                let mut prefix = word[..p].to_vec();
                prefix.push(c);
                if self.k >= after && self.complete(&mut prefix, after, n) {
                    return Some(prefix);
                }
                candidate = next_letter(c, self.alphabet_size);
            }
        }
        None
    }
}

fn next_letter(l: Letter, alphabet_size: usize) -> Option<Letter> {
    match l {
        Letter::Sym(s) if (s as usize) + 1 < alphabet_size => Some(Letter::Sym(s + 1)),
        Letter::Sym(_) => Some(Letter::Param(0)),
        Letter::Param(i) => i.checked_add(1).map(Letter::Param),
    }
}

impl Iterator for SpaceIter {
    type Item = ParameterWord;

    fn next(&mut self) -> Option<ParameterWord> {
        loop {
            if self.fresh_length {
                let n = self.lengths.next()?;
                self.fresh_length = false;
                let mut first = Vec::with_capacity(n);
                if self.k <= n && self.complete(&mut first, 0, n) {
                    self.current = Some(first.clone());
                    return Some(ParameterWord { letters: first, params: self.k });
                }
                self.fresh_length = true;
                continue;
            }
            let cur = self.current.take()?;
            match self.successor(&cur) {
                Some(next) => {
                    self.current = Some(next.clone());
                    return Some(ParameterWord { letters: next, params: self.k });
                }
                None => self.fresh_length = true,
            }
        }
    }
}
