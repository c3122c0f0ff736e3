//! Braid words and handle reduction.
//!
//! Braid groups get no normal form here; instead, words are *handle-reduced*.
//! A handle is a subword `s_i^e v s_i^-e` whose interior `v` uses only
//! indices greater than `i`. Reducing it deletes the outer pair and conjugates
//! each interior `s_(i+1)` through: `s_(i+1)^d` becomes
//! `s_(i+1)^-e s_i^d s_(i+1)^e`. A word with no handles is either empty or
//! mentions its lowest index with one sign only, which is what the braid
//! ordering reads off.
//!
//! The reducer always rewrites the handle with the leftmost closing letter.
//! That handle contains no other handle (any handle inside it would close
//! earlier), and an innermost handle automatically has uniform `s_(i+1)` signs
//! in its interior: a sign change among interior `s_(i+1)` letters would
//! bracket an `s_(i+1)` handle strictly inside. So the rewrite is always safe,
//! and reduction sequences of this shape terminate; a step budget guards the
//! loop anyway.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::word::{Generator, Word};

/// Default limit on handle-rewrite steps.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Hard ceiling on letters in an expanded or intermediate braid word.
const MAX_LETTERS: usize = 1 << 20;

/// Highest supported strand count (permutations are tracked in `u16`).
pub const MAX_STRANDS: u32 = 4096;

/// Where a reduced braid word sits relative to the identity: empty, or its
/// lowest-index letters all positive / all negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaClass {
    Trivial,
    Positive { index: u32 },
    Negative { index: u32 },
}

impl SigmaClass {
    pub fn flip(self) -> SigmaClass {
        match self {
            SigmaClass::Trivial => SigmaClass::Trivial,
            SigmaClass::Positive { index } => SigmaClass::Negative { index },
            SigmaClass::Negative { index } => SigmaClass::Positive { index },
        }
    }
}

fn check_strands(strands: u32) -> Result<()> {
    if !(2..=MAX_STRANDS).contains(&strands) {
        return Err(Error::Config(format!(
            "strand count {strands} outside supported range 2..={MAX_STRANDS}"
        )));
    }
    Ok(())
}

/// Flattens a word into `(index, sign)` letters, validating the alphabet.
fn expand(strands: u32, w: &Word) -> Result<Vec<(u32, i8)>> {
    check_strands(strands)?;
    if w.weight() > MAX_LETTERS {
        return Err(Error::ExponentOverflow(format!(
            "braid word expands past {MAX_LETTERS} letters"
        )));
    }
    let mut out = Vec::with_capacity(w.weight());
    for (g, e) in w.letters() {
        let i = match g {
            Generator::Braid(i) if *i >= 1 && *i < strands => *i,
            _ => {
                return Err(Error::AlphabetMismatch(format!(
                    "letter `{g}` does not belong to the braid group on {strands} strands"
                )))
            }
        };
        if e.is_zero() {
            continue;
        }
        let sign: i8 = if e.is_positive() { 1 } else { -1 };
        let count = e.magnitude().to_usize().unwrap_or(usize::MAX);
        for _ in 0..count {
            out.push((i, sign));
        }
    }
    Ok(out)
}

fn free_reduce_letters(letters: &[(u32, i8)]) -> Vec<(u32, i8)> {
    let mut out: Vec<(u32, i8)> = Vec::with_capacity(letters.len());
    for &(i, s) in letters {
        match out.last() {
            Some(&(j, t)) if j == i && t == -s => {
                out.pop();
            }
            _ => out.push((i, s)),
        }
    }
    out
}

fn pack(letters: &[(u32, i8)]) -> Word {
    Word::from_letters(
        letters
            .iter()
            .map(|&(i, s)| (Generator::Braid(i), BigInt::from(s))),
    )
}

/// The handle whose closing letter comes first, as `(open, close)` positions.
fn first_handle(letters: &[(u32, i8)]) -> Option<(usize, usize)> {
    for close in 1..letters.len() {
        let (i, e) = letters[close];
        for open in (0..close).rev() {
            let (j, d) = letters[open];
            if j < i {
                break;
            }
            if j == i {
                if d == -e {
                    return Some((open, close));
                }
                break;
            }
        }
    }
    None
}

#[cfg(debug_assertions)]
fn perm_of(strands: u32, letters: &[(u32, i8)]) -> Vec<u16> {
    let mut perm: Vec<u16> = (0..strands as u16).collect();
    for &(i, _) in letters {
        perm.swap(i as usize - 1, i as usize);
    }
    perm
}

#[cfg(debug_assertions)]
fn sum_of(letters: &[(u32, i8)]) -> i64 {
    letters.iter().map(|&(_, s)| s as i64).sum()
}

/// Handle-reduces `w`, returning an equivalent word with no handles.
pub fn handle_reduce(strands: u32, w: &Word, step_cap: usize) -> Result<Word> {
    let mut letters = free_reduce_letters(&expand(strands, w)?);
    let mut steps: usize = 0;
    while let Some((open, close)) = first_handle(&letters) {
        steps += 1;
        if steps > step_cap {
            return Err(Error::ReductionBudgetExceeded { cap: step_cap });
        }
        let (i, e) = letters[open];
        #[cfg(debug_assertions)]
        let (perm_before, sum_before) = (perm_of(strands, &letters), sum_of(&letters));
        debug_assert!(
            {
                let signs: Vec<i8> = letters[open + 1..close]
                    .iter()
                    .filter(|&&(j, _)| j == i + 1)
                    .map(|&(_, s)| s)
                    .collect();
                signs.windows(2).all(|p| p[0] == p[1])
            },
            "innermost handle must have uniform interior signs"
        );
        let mut replacement: Vec<(u32, i8)> = Vec::with_capacity(3 * (close - open));
        for &(j, d) in &letters[open + 1..close] {
            if j == i + 1 {
                replacement.push((i + 1, -e));
                replacement.push((i, d));
                replacement.push((i + 1, e));
            } else {
                replacement.push((j, d));
            }
        }
        letters.splice(open..=close, replacement);
        letters = free_reduce_letters(&letters);
        if letters.len() > MAX_LETTERS {
            return Err(Error::ReductionBudgetExceeded { cap: step_cap });
        }
        #[cfg(debug_assertions)]
        {
            debug_assert_eq!(perm_of(strands, &letters), perm_before, "rewrite broke the permutation");
            debug_assert_eq!(sum_of(&letters), sum_before, "rewrite broke the exponent sum");
        }
    }
    Ok(pack(&letters))
}

/// Classifies `w` by the sign of its lowest index after handle reduction.
pub fn sigma_class(strands: u32, w: &Word, step_cap: usize) -> Result<SigmaClass> {
    let reduced = handle_reduce(strands, w, step_cap)?;
    let mut lowest: Option<(u32, i8)> = None;
    for (g, e) in reduced.letters() {
        let i = match g {
            Generator::Braid(i) => *i,
            _ => unreachable!("handle_reduce validates the alphabet"),
        };
        let sign: i8 = if e.is_positive() { 1 } else { -1 };
        match lowest {
            None => lowest = Some((i, sign)),
            Some((j, s)) => {
                if i < j {
                    lowest = Some((i, sign));
                } else if i == j && s != sign {
                    return Err(Error::MixedSignsAtLowestIndex { index: i });
                }
            }
        }
    }
    Ok(match lowest {
        None => SigmaClass::Trivial,
        Some((index, 1)) => SigmaClass::Positive { index },
        Some((index, _)) => SigmaClass::Negative { index },
    })
}

/// Whether two braid words name the same element of the braid group.
pub fn braid_equal(strands: u32, a: &Word, b: &Word, step_cap: usize) -> Result<bool> {
    let quotient = a.concat(&b.invert())?;
    Ok(handle_reduce(strands, &quotient, step_cap)?.is_identity())
}

/// The strand permutation of a braid word (0-based images).
pub fn permutation(strands: u32, w: &Word) -> Result<Vec<u16>> {
    let letters = expand(strands, w)?;
    let mut perm: Vec<u16> = (0..strands as u16).collect();
    for (i, _) in letters {
        perm.swap(i as usize - 1, i as usize);
    }
    Ok(perm)
}

/// Sum of letter exponents (invariant under braid relations).
pub fn exponent_sum(w: &Word) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for (g, e) in w.letters() {
        match g {
            Generator::Braid(_) => total += e,
            other => {
                return Err(Error::AlphabetMismatch(format!(
                    "letter `{other}` is not a braid letter"
                )))
            }
        }
    }
    Ok(total)
}

/// The full twist `(s1 s2 .. s_(n-1))^n`, a central element.
pub fn full_twist(strands: u32) -> Result<Word> {
    check_strands(strands)?;
    let mut row = Word::identity();
    for i in 1..strands {
        row = row.concat(&Word::gen(Generator::Braid(i)))?;
    }
    row.pow(strands)
}
