//! Words over the generator alphabets, kept in canonical reduced form.
//!
//! A [`Word`] is a sequence of `(generator, exponent)` letters in which no
//! exponent is zero and no two adjacent letters share a generator. Every
//! constructor restores that form, so any `Word` you can hold is already
//! freely reduced at the word level. Exponents are arbitrary-precision
//! integers: iterated automorphisms make them grow multiplicatively, and
//! silent wraparound would corrupt sign computations.
//!
//! Words are immutable values; all operations hand back new words.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Distinguished extension letters used by the built group extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtLetter {
    T,
    U,
    V,
    Z,
}

impl ExtLetter {
    pub fn symbol(self) -> char {
        match self {
            ExtLetter::T => 't',
            ExtLetter::U => 'u',
            ExtLetter::V => 'v',
            ExtLetter::Z => 'z',
        }
    }
}

/// The two generators of the Klein-bottle group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KleinLetter {
    A,
    B,
}

/// A single generator. The derived order (`Klein < Eg < Free < Braid < Ext`)
/// is the fixed token order used wherever a canonical choice among words is
/// needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Klein-bottle letters `a`, `b`.
    Klein(KleinLetter),
    /// The doubly indexed family `a[i]`, any integer index.
    Eg(i64),
    /// Free-group letters `x1`, `x2`, ... (1-based).
    Free(u32),
    /// Braid letters `s1`, `s2`, ... (1-based).
    Braid(u32),
    /// Extension letters `t`, `u`, `v`, `z`.
    Ext(ExtLetter),
}

/// Letter family used for mismatch checks. Extension letters belong to no
/// family of their own: they ride on top of whatever base alphabet is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Klein,
    Eg,
    Free,
    Braid,
}

impl Generator {
    pub fn family(self) -> Option<Family> {
        match self {
            Generator::Klein(_) => Some(Family::Klein),
            Generator::Eg(_) => Some(Family::Eg),
            Generator::Free(_) => Some(Family::Free),
            Generator::Braid(_) => Some(Family::Braid),
            Generator::Ext(_) => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Klein(KleinLetter::A) => write!(f, "a"),
            Generator::Klein(KleinLetter::B) => write!(f, "b"),
            Generator::Eg(i) => write!(f, "a[{i}]"),
            Generator::Free(i) => write!(f, "x{i}"),
            Generator::Braid(i) => write!(f, "s{i}"),
            Generator::Ext(l) => write!(f, "{}", l.symbol()),
        }
    }
}

/// One letter: a generator raised to a nonzero integer power.
pub type Letter = (Generator, BigInt);

/// A canonical word. See the module docs for the invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// A single generator with exponent one.
    pub fn gen(g: Generator) -> Self {
        Word::letter(g, BigInt::from(1))
    }

    /// A single letter; a zero exponent gives the identity.
    pub fn letter(g: Generator, exp: impl Into<BigInt>) -> Self {
        let exp = exp.into();
        if exp.is_zero() {
            Word::identity()
        } else {
            Word { letters: vec![(g, exp)] }
        }
    }

    /// Builds a word from raw letters, merging adjacent letters over the same
    /// generator and dropping the zero exponents that appear. The merge
    /// cascades, so the result satisfies the canonical-form invariant.
    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut out: Vec<Letter> = Vec::new();
        for (g, e) in letters {
            push_merged(&mut out, g, e);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of stored letters (not the total exponent weight).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of `|exponent|` over all letters, saturating at `usize::MAX`.
    pub fn weight(&self) -> usize {
        let mut total: usize = 0;
        for (_, e) in &self.letters {
            let add = e.abs().to_usize().unwrap_or(usize::MAX);
            total = total.saturating_add(add);
        }
        total
    }

    /// The set of letter families appearing in the word (extension letters
    /// excluded).
    fn families(&self) -> Vec<Family> {
        let mut out = Vec::new();
        for (g, _) in &self.letters {
            if let Some(fam) = g.family() {
                if !out.contains(&fam) {
                    out.push(fam);
                }
            }
        }
        out
    }

    /// Concatenation with merge at the seam. Only word-level reduction is
    /// applied; no group relations. Errors if the two words draw letters from
    /// different base families.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut fams = self.families();
        for fam in other.families() {
            if !fams.contains(&fam) {
                fams.push(fam);
            }
        }
        if fams.len() > 1 {
            return Err(Error::AlphabetMismatch(format!(
                "cannot combine `{self}` with `{other}`"
            )));
        }
        let mut out = self.letters.clone();
        for (g, e) in &other.letters {
            push_merged(&mut out, *g, e.clone());
        }
        Ok(Word { letters: out })
    }

    /// The inverse word: letters reversed, exponents negated.
    pub fn invert(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|(g, e)| (*g, -e))
            .collect::<Vec<_>>();
        // Reversal of a canonical word is canonical, but rebuild defensively.
        Word::from_letters(letters)
    }

    /// Word-level free reduction. Canonical words are already reduced, so
    /// this is idempotent; it exists so callers can state the intent when a
    /// word was assembled elsewhere.
    pub fn free_reduce(&self) -> Word {
        Word::from_letters(self.letters.iter().cloned())
    }

    /// `self` raised to an integer power. For a single-letter word any
    /// exponent is cheap; multi-letter words are repeated, with a guard
    /// against absurd repetition counts.
    pub fn pow(&self, exp: impl Into<BigInt>) -> Result<Word> {
        let exp: BigInt = exp.into();
        if exp.is_zero() || self.is_identity() {
            return Ok(Word::identity());
        }
        if self.letters.len() == 1 {
            let (g, e) = &self.letters[0];
            return Ok(Word::letter(*g, e * &exp));
        }
        let reps = exp.abs().to_usize().filter(|&r| r <= 4096).ok_or_else(|| {
            Error::ExponentOverflow(format!("power {exp} of a multi-letter word"))
        })?;
        let base = if exp.is_negative() { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..reps {
            out = out.concat(&base)?;
        }
        Ok(out)
    }
}

/// Appends one letter to a letter list, cascading merges so the list stays
/// canonical if it was canonical before.
fn push_merged(out: &mut Vec<Letter>, g: Generator, e: BigInt) {
    if e.is_zero() {
        return;
    }
    match out.last_mut() {
        Some((lg, le)) if *lg == g => {
            *le += e;
            if le.is_zero() {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

/// Fixed total order on words: letterwise by generator token, then by
/// exponent (positive before negative, small magnitude first); a proper
/// prefix precedes its extensions. Used for canonical choices among words,
/// not for any group-order comparison.
pub fn canonical_cmp(a: &Word, b: &Word) -> Ordering {
    for ((ga, ea), (gb, eb)) in a.letters.iter().zip(b.letters.iter()) {
        let ord = ga.cmp(gb).then_with(|| exp_rank(ea).cmp(&exp_rank(eb)));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.letters.len().cmp(&b.letters.len())
}

fn exp_rank(e: &BigInt) -> (u8, BigInt) {
    (if e.is_positive() { 0 } else { 1 }, e.abs())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (idx, (g, e)) in self.letters.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            if *e == BigInt::from(1) {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the whitespace-separated word grammar: `a[i]` (any integer
    /// `i`), `x1..`, `s1..`, the extension letters `t u v z`, the Klein
    /// letters `a b`, each with an optional `^k` (nonzero integer `k`).
    /// Empty input and the token `1` denote the identity.
    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b, Some(e)),
                None => (token, None),
            };
            let gen = parse_base(base, token)?;
            let exp = match exp {
                None => BigInt::from(1),
                Some(e) => {
                    let v = BigInt::from_str(e).map_err(|_| {
                        Error::Parse(format!("bad exponent in token `{token}`"))
                    })?;
                    if v.is_zero() {
                        return Err(Error::Parse(format!(
                            "zero exponent in token `{token}`"
                        )));
                    }
                    v
                }
            };
            letters.push((gen, exp));
        }
        Ok(Word::from_letters(letters))
    }
}

fn parse_base(base: &str, token: &str) -> Result<Generator> {
    match base {
        "a" => return Ok(Generator::Klein(KleinLetter::A)),
        "b" => return Ok(Generator::Klein(KleinLetter::B)),
        "t" => return Ok(Generator::Ext(ExtLetter::T)),
        "u" => return Ok(Generator::Ext(ExtLetter::U)),
        "v" => return Ok(Generator::Ext(ExtLetter::V)),
        "z" => return Ok(Generator::Ext(ExtLetter::Z)),
        _ => {}
    }
    if let Some(rest) = base.strip_prefix("a[") {
        let inner = rest
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated index in `{token}`")))?;
        let idx: i64 = inner
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in `{token}`")))?;
        return Ok(Generator::Eg(idx));
    }
    if let Some(rest) = base.strip_prefix('x') {
        let idx: u32 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator `{token}`")))?;
        if idx == 0 {
            return Err(Error::InvalidGenerator("x0 (free letters are 1-based)".into()));
        }
        return Ok(Generator::Free(idx));
    }
    if let Some(rest) = base.strip_prefix('s') {
        let idx: u32 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator `{token}`")))?;
        if idx == 0 {
            return Err(Error::InvalidGenerator("s0 (braid letters are 1-based)".into()));
        }
        return Ok(Generator::Braid(idx));
    }
    Err(Error::Parse(format!("unknown token `{token}`")))
}

/// Convenience: exponent as `i64`, or an overflow error naming `what`.
pub fn exp_to_i64(e: &BigInt, what: &str) -> Result<i64> {
    e.to_i64()
        .ok_or_else(|| Error::ExponentOverflow(format!("{what}: {e}")))
}
