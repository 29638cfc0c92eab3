//! Free-group words: parsing, free reduction, commutators and seeded
//! derived-series sampling.
//!
//! Letters `a b c d` are generators 1..4, uppercase letters their inverses.
//! Commutators follow `[u, v] = u⁻¹v⁻¹uv`.
//!
//! ```text
//! word    := factor*
//! factor  := primary ('^' '-'? int)*
//! primary := letter | '(' word ')' | '[' word ',' word ']'
//! ```

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Alphabet size supported by the grammar.
pub const MAX_GENERATORS: usize = 4;

/// Largest `|n|` accepted in `w^n`.
pub const MAX_EXPONENT: i64 = 1_000_000;

/// Redraws allowed per sampled word before giving up.
pub const RETRY_BUDGET: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter '{letter}' at offset {offset} is outside the alphabet for k={k}")]
    UnknownLetter { letter: char, offset: usize, k: usize },
    #[error("malformed word at offset {offset}: {message}")]
    Malformed { offset: usize, message: String },
    #[error("zero exponent at offset {offset}")]
    ZeroExponent { offset: usize },
    #[error("unsupported alphabet size k={0}")]
    UnsupportedK(usize),
    #[error("could not draw a nontrivial level-{level} word in {RETRY_BUDGET} attempts")]
    RetryBudget { level: usize },
}

/// A generator (0-based) or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator as u8) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// Parse tree before flattening.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordAst {
    Letter(Letter),
    Concat(Vec<WordAst>),
    Inverse(Box<WordAst>),
    Power(Box<WordAst>, i64),
    Commutator(Box<WordAst>, Box<WordAst>),
}

impl WordAst {
    pub fn flatten(&self) -> Word {
        match self {
            WordAst::Letter(l) => Word::from_letters([*l]),
            WordAst::Concat(parts) => parts.iter().fold(Word::empty(), |acc, p| acc.concat(&p.flatten())),
            WordAst::Inverse(w) => w.flatten().inverse(),
            WordAst::Power(w, n) => w.flatten().pow(*n),
            WordAst::Commutator(u, v) => u.flatten().commutator(&v.flatten()),
        }
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Freely reduces any letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn parse(text: &str, k: usize) -> Result<Self, WordError> {
        Ok(parse_ast(text, k)?.flatten())
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

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`, reduced.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().concat(&other.inverse()).concat(self).concat(other)
    }

    /// Signed letter count per generator (the abelianization).
    pub fn exponent_sums(&self, k: usize) -> Vec<i64> {
        let mut out = vec![0i64; k];
        for l in &self.letters {
            if l.generator < k {
                out[l.generator] += if l.inverse { -1 } else { 1 };
            }
        }
        out
    }

    /// Largest generator index used, plus one.
    pub fn alphabet_size(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// `free_reduce` on an arbitrary letter sequence.
pub fn free_reduce(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().copied())
}

pub fn parse_ast(text: &str, k: usize) -> Result<WordAst, WordError> {
    if !(1..=MAX_GENERATORS).contains(&k) {
        return Err(WordError::UnsupportedK(k));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, k };
    let ast = p.word()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.malformed("unexpected character"));
    }
    Ok(ast)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    k: usize,
}

impl Parser<'_> {
    fn malformed(&self, message: &str) -> WordError {
        WordError::Malformed { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<WordAst, WordError> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' {
                break;
            }
            parts.push(self.factor()?);
        }
        Ok(WordAst::Concat(parts))
    }

    fn factor(&mut self) -> Result<WordAst, WordError> {
        let mut base = self.primary()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let negative = self.src.get(self.pos) == Some(&b'-');
            if negative {
                self.pos += 1;
            }
            let digits_start = self.pos;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            if digits_start == self.pos {
                return Err(self.malformed("expected integer exponent"));
            }
            let text = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii");
            let n: i64 = text
                .parse()
                .ok()
                .filter(|n| *n <= MAX_EXPONENT)
                .ok_or_else(|| self.malformed("exponent too large"))?;
            if n == 0 {
                return Err(WordError::ZeroExponent { offset: start });
            }
            base = WordAst::Power(Box::new(base), if negative { -n } else { n });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<WordAst, WordError> {
        let offset = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.malformed("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                if self.peek() != Some(b',') {
                    return Err(self.malformed("expected ',' in commutator"));
                }
                self.pos += 1;
                let v = self.word()?;
                if self.peek() != Some(b']') {
                    return Err(self.malformed("expected ']'"));
                }
                self.pos += 1;
                Ok(WordAst::Commutator(Box::new(u), Box::new(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let g = (c.to_ascii_lowercase() - b'a') as usize;
                if g >= self.k {
                    return Err(WordError::UnknownLetter { letter: c as char, offset, k: self.k });
                }
                self.pos += 1;
                Ok(WordAst::Letter(Letter::new(g, c.is_ascii_uppercase())))
            }
            Some(_) => Err(self.malformed("unexpected character")),
            None => Err(self.malformed("unexpected end of input")),
        }
    }
}

/// A uniformly random reduced word of exactly `len` letters.
pub fn random_reduced_word<R: Rng + ?Sized>(rng: &mut R, len: usize, k: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..k), rng.gen_bool(0.5));
        if letters.last() != Some(&l.inv()) {
            letters.push(l);
        }
    }
    Word { letters }
}

fn sample_level<R: Rng + ?Sized>(rng: &mut R, level: usize, base_len: usize, k: usize) -> Result<WordAst, WordError> {
    if level == 0 {
        if base_len == 0 {
            return Err(WordError::RetryBudget { level });
        }
        let len = rng.gen_range(1..=base_len);
        let w = random_reduced_word(rng, len, k);
        return Ok(WordAst::Concat(w.letters.into_iter().map(WordAst::Letter).collect()));
    }
    for _ in 0..RETRY_BUDGET {
        let u = sample_level(rng, level - 1, base_len, k)?;
        let v = sample_level(rng, level - 1, base_len, k)?;
        let c = WordAst::Commutator(Box::new(u), Box::new(v));
        if !c.flatten().is_empty() {
            return Ok(c);
        }
    }
    Err(WordError::RetryBudget { level })
}

/// `count` nontrivial elements of the `level`-th derived subgroup as
/// commutator trees: level 0 is a random reduced word of length
/// `1..=base_len`, level `n` a commutator of two independent level `n - 1`
/// draws. Trivial draws are redrawn up to [`RETRY_BUDGET`] times.
pub fn derived_sample_ast_with<R: Rng + ?Sized>(
    rng: &mut R,
    level: usize,
    count: usize,
    base_len: usize,
    k: usize,
) -> Result<Vec<WordAst>, WordError> {
    if !(1..=MAX_GENERATORS).contains(&k) {
        return Err(WordError::UnsupportedK(k));
    }
    (0..count).map(|_| sample_level(rng, level, base_len, k)).collect()
}

/// Flattened [`derived_sample_ast_with`].
pub fn derived_sample_with<R: Rng + ?Sized>(
    rng: &mut R,
    level: usize,
    count: usize,
    base_len: usize,
    k: usize,
) -> Result<Vec<Word>, WordError> {
    Ok(derived_sample_ast_with(rng, level, count, base_len, k)?.iter().map(WordAst::flatten).collect())
}

/// Seeded sampler; equal seeds give equal output.
pub fn derived_sample_ast(level: usize, count: usize, seed: u64, base_len: usize, k: usize) -> Result<Vec<WordAst>, WordError> {
    derived_sample_ast_with(&mut ChaCha8Rng::seed_from_u64(seed), level, count, base_len, k)
}

/// Seeded [`derived_sample_with`]; equal seeds give equal output.
pub fn derived_sample(level: usize, count: usize, seed: u64, base_len: usize, k: usize) -> Result<Vec<Word>, WordError> {
    derived_sample_with(&mut ChaCha8Rng::seed_from_u64(seed), level, count, base_len, k)
}

/// Every reduced word of length `≤ max_len`, shortest first.
pub fn reduced_words(max_len: usize, k: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..k {
                for inverse in [false, true] {
                    let l = Letter::new(g, inverse);
                    if w.letters.last() != Some(&l.inv()) {
                        let mut letters = w.letters.clone();
                        letters.push(l);
                        next.push(Word { letters });
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(w("aA").is_empty());
        assert_eq!(w("[a,b]").to_string(), "ABab");
        assert_eq!(w("a^-2").to_string(), "AA");
        assert!(matches!(Word::parse("c", 2), Err(WordError::UnknownLetter { letter: 'c', .. })));
        assert!(Word::parse("c", 3).is_ok());
        assert_eq!(w("").to_string(), "");
        assert_eq!(w(" ( ab ) ^2 B ").to_string(), "aba");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Word::parse("a^0", 2), Err(WordError::ZeroExponent { .. })));
        assert!(matches!(Word::parse("[a,b", 2), Err(WordError::Malformed { .. })));
        assert!(matches!(Word::parse("[a b]", 2), Err(WordError::Malformed { .. })));
        assert!(matches!(Word::parse("(a", 2), Err(WordError::Malformed { .. })));
        assert!(matches!(Word::parse("a)", 2), Err(WordError::Malformed { .. })));
        assert!(matches!(Word::parse("a^", 2), Err(WordError::Malformed { .. })));
        assert!(matches!(Word::parse("a1", 2), Err(WordError::Malformed { .. })));
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w("aBbA").is_empty());
        assert_eq!(w("aa").to_string(), "aa");
        assert_eq!(w("abBAa").to_string(), "a");
    }

    #[test]
    fn commutator_examples() {
        assert!(w("a").commutator(&w("a")).is_empty());
        assert_eq!(w("a").commutator(&w("b")).to_string(), "ABab");
        assert!(w("a").commutator(&Word::empty()).is_empty());
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("ab").exponent_sums(2), vec![1, 1]);
        assert_eq!(w("[a,b]").exponent_sums(2), vec![0, 0]);
        assert_eq!(w("a^3 B").exponent_sums(2), vec![3, -1]);
    }

    #[test]
    fn derived_sample_examples() {
        let one = derived_sample(0, 1, 5, 1, 2).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].len(), 1);
        let level1 = derived_sample(1, 20, 9, 4, 2).unwrap();
        for c in &level1 {
            assert!(!c.is_empty());
            assert_eq!(c.exponent_sums(2), vec![0, 0]);
        }
        assert_eq!(derived_sample(2, 5, 3, 3, 2).unwrap(), derived_sample(2, 5, 3, 3, 2).unwrap());
        assert!(matches!(derived_sample(1, 1, 0, 3, 1), Err(WordError::RetryBudget { level: 1 })));
    }

    #[test]
    fn reduced_word_counts() {
        // 1 + 4 + 12 + 36: each step has 2k - 1 continuations
        assert_eq!(reduced_words(3, 2).len(), 53);
    }

    fn arb_letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0usize..2, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..30)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shrinking(ls in arb_letters()) {
            let r = free_reduce(&ls);
            prop_assert!(r.len() <= ls.len());
            prop_assert_eq!(free_reduce(r.letters()), r.clone());
            prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inv()));
        }

        #[test]
        fn emit_then_parse_round_trips(ls in arb_letters()) {
            let r = free_reduce(&ls);
            prop_assert_eq!(Word::parse(&r.to_string(), 2).unwrap(), r);
        }

        #[test]
        fn exponent_sums_survive_reduction(ls in arb_letters()) {
            let raw = ls.iter().fold(vec![0i64; 2], |mut acc, l| {
                acc[l.generator] += if l.inverse { -1 } else { 1 };
                acc
            });
            prop_assert_eq!(free_reduce(&ls).exponent_sums(2), raw);
        }

        #[test]
        fn derived_words_abelianize_to_zero(seed in any::<u64>(), level in 1usize..3) {
            for c in derived_sample(level, 3, seed, 3, 2).unwrap() {
                prop_assert_eq!(c.exponent_sums(2), vec![0, 0]);
            }
        }
    }
}
