//! Normal forms for the doubly indexed group and the Klein-bottle group.
//!
//! The doubly indexed group has generators `a[i]` for every integer `i`,
//! where letters two or more apart commute and each `a[i+1]` conjugates
//! `a[i]` to its inverse. Its normal form sorts letters by strictly
//! increasing index; rewriting is insertion-sort style, moving each incoming
//! letter left past larger indices while flipping its sign once per crossing
//! of an adjacent-index letter with odd exponent. Each move lowers the
//! inversion count, so the rewrite terminates.
//!
//! The Klein-bottle group is the two-generator analogue (`b a b^-1 = a^-1`)
//! and folds directly to `a^m b^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::word::{Generator, KleinLetter, Word};

/// Indexed letter in the doubly indexed alphabet.
pub(crate) type EgLetter = (i64, BigInt);

/// Window check: rewriting never invents indices, so checking the input
/// letters bounds everything the engine touches.
pub(crate) fn check_window(idx: i64, window: i64) -> Result<()> {
    if idx < -window || idx > window {
        Err(Error::WindowExceeded { index: idx, window })
    } else {
        Ok(())
    }
}

/// Multiplies a normal form on the right by `a[idx]^exp` and restores the
/// normal form. `out` must have strictly increasing indices on entry.
pub(crate) fn push_eg(out: &mut Vec<EgLetter>, idx: i64, mut exp: BigInt) {
    if exp.is_zero() {
        return;
    }
    // Walk the moving letter leftwards to its slot. Only the moving letter
    // changes: crossings flip its sign, never the letters it passes.
    let mut pos = out.len();
    while pos > 0 {
        let (j, e) = &out[pos - 1];
        if *j < idx {
            break;
        }
        if *j == idx {
            let merged = e + &exp;
            if merged.is_zero() {
                out.remove(pos - 1);
            } else {
                out[pos - 1].1 = merged;
            }
            return;
        }
        if *j == idx + 1 && e.is_odd() {
            exp = -exp;
        }
        pos -= 1;
    }
    out.insert(pos, (idx, exp));
}

/// Normal form of a letter list, with window validation.
pub(crate) fn eg_normal_form(letters: &[EgLetter], window: i64) -> Result<Vec<EgLetter>> {
    let mut out: Vec<EgLetter> = Vec::with_capacity(letters.len());
    for (idx, exp) in letters {
        check_window(*idx, window)?;
        push_eg(&mut out, *idx, exp.clone());
    }
    Ok(out)
}

/// Extracts the indexed letters of a word that must be purely over the
/// doubly indexed alphabet.
pub(crate) fn as_eg_letters(w: &Word) -> Result<Vec<EgLetter>> {
    w.letters()
        .iter()
        .map(|(g, e)| match g {
            Generator::Eg(i) => Ok((*i, e.clone())),
            other => Err(Error::AlphabetMismatch(format!(
                "`{other}` is not a doubly indexed letter"
            ))),
        })
        .collect()
}

pub(crate) fn eg_word(letters: Vec<EgLetter>) -> Word {
    Word::from_letters(letters.into_iter().map(|(i, e)| (Generator::Eg(i), e)))
}

/// Normal form for a word over the doubly indexed alphabet.
pub(crate) fn eg_normal_word(w: &Word, window: i64) -> Result<Word> {
    Ok(eg_word(eg_normal_form(&as_eg_letters(w)?, window)?))
}

/// Folds a Klein-bottle word to the pair `(m, n)` of its `a^m b^n` form.
/// Appending `a^d` behind an accumulated `b^n` flips `d` when `n` is odd;
/// appending `b^e` just extends `n`.
pub(crate) fn klein_fold(w: &Word) -> Result<(BigInt, BigInt)> {
    let mut m = BigInt::zero();
    let mut n = BigInt::zero();
    for (g, e) in w.letters() {
        match g {
            Generator::Klein(KleinLetter::A) => {
                if n.is_odd() {
                    m -= e;
                } else {
                    m += e;
                }
            }
            Generator::Klein(KleinLetter::B) => n += e,
            other => {
                return Err(Error::AlphabetMismatch(format!(
                    "`{other}` is not a Klein-bottle letter"
                )))
            }
        }
    }
    Ok((m, n))
}

pub(crate) fn klein_word(m: BigInt, n: BigInt) -> Word {
    Word::from_letters([
        (Generator::Klein(KleinLetter::A), m),
        (Generator::Klein(KleinLetter::B), n),
    ])
}
