//! Truncated noncommutative series expansion for free-group words.
//!
//! Each free letter `x_i` maps to `1 + X_i`; an exponent `e` (any integer,
//! arbitrary precision) expands through generalized binomials to
//! `sum_k C(e,k) X_i^k`, which agrees with `(1+X_i)^e` for positive `e` and
//! with the geometric series of the inverse for negative `e`. The expansion
//! of a nonempty reduced word is never 1, and its first nonzero monomial in
//! graded-lexicographic order decides the sign.
//!
//! Truncation degree escalates 2, 4, 8, ... up to a cap; coefficients of
//! degree <= D are exact at truncation D, so the first nonzero monomial found
//! within the truncation is the true leading term.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{Generator, Word};

use super::Sign;

/// Hard ceiling on escalated truncation degree. A reduced word has a nonzero
/// coefficient in degree <= its letter weight; words needing more than this
/// degree are reported inconclusive rather than mis-signed.
const DEGREE_CAP: usize = 64;

/// Monomial key: variables by precedence rank, in order. Tuple ordering on
/// `(degree, ranks)` is exactly graded-lexicographic order.
type Mono = (usize, Vec<u8>);

struct Series {
    trunc: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl Series {
    fn one(trunc: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, Vec::new()), BigInt::one());
        Series { trunc, terms }
    }

    fn mul(&self, rhs: &Series) -> Series {
        let mut terms: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for ((da, ma), ca) in &self.terms {
            for ((db, mb), cb) in &rhs.terms {
                let deg = da + db;
                if deg > self.trunc {
                    continue;
                }
                let mut mono = ma.clone();
                mono.extend_from_slice(mb);
                *terms.entry((deg, mono)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, coeff| !coeff.is_zero());
        Series { trunc: self.trunc, terms }
    }

    /// Expansion of one letter `x^e` at this truncation: sum of
    /// `C(e,k) X^k` for `k = 0..=trunc`, where `X` is the variable of the
    /// given precedence rank.
    fn letter(trunc: usize, rank: u8, e: &BigInt) -> Series {
        let mut terms = BTreeMap::new();
        let mut coeff = BigInt::one();
        for k in 0..=trunc {
            if k > 0 {
                // C(e, k) = C(e, k-1) * (e - k + 1) / k, exact at each step.
                coeff = coeff * (e - BigInt::from(k as i64 - 1)) / BigInt::from(k);
            }
            if !coeff.is_zero() {
                terms.insert((k, vec![rank; k]), coeff.clone());
            }
        }
        Series { trunc, terms }
    }

    /// First nonzero monomial of degree >= 1, in graded-lex order.
    fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms
            .iter()
            .find(|((deg, _), coeff)| *deg >= 1 && !coeff.is_zero())
    }
}

/// Sign of a free word under the series expansion, with variables ordered by
/// `precedence` (a permutation of `1..=rank`, most significant first).
pub fn magnus_sign(rank: u32, precedence: &[u32], w: &Word) -> Result<Sign> {
    let ranks = precedence_ranks(rank, precedence)?;
    let reduced = w.free_reduce();
    if reduced.is_identity() {
        return Ok(Sign::Identity);
    }
    let letters = rank_letters(rank, &ranks, &reduced)?;

    let cap = reduced.weight().clamp(2, DEGREE_CAP);
    let mut trunc = 2;
    loop {
        let acc = expand(&letters, trunc);
        debug_assert_eq!(
            acc.terms.get(&(0, Vec::new())),
            Some(&BigInt::one()),
            "constant term of a group image must be 1"
        );
        if let Some((_, coeff)) = acc.leading() {
            return Ok(if coeff.is_positive() { Sign::Positive } else { Sign::Negative });
        }
        if trunc >= cap {
            return Err(Error::MagnusInconclusive);
        }
        trunc = (trunc * 2).min(cap);
    }
}

/// Whether the expansions of `w` and `w^-1` multiply back to exactly 1 at the
/// given truncation degree, as they must for a homomorphic expansion.
pub fn series_inverse_identity(rank: u32, w: &Word, degree: usize) -> Result<bool> {
    let ranks = precedence_ranks(rank, &identity_precedence(rank))?;
    let trunc = degree.clamp(1, DEGREE_CAP);
    let forward = rank_letters(rank, &ranks, &w.free_reduce())?;
    let backward = rank_letters(rank, &ranks, &w.invert().free_reduce())?;
    let product = expand(&forward, trunc).mul(&expand(&backward, trunc));
    Ok(product.terms == Series::one(trunc).terms)
}

fn rank_letters(rank: u32, ranks: &[u8], reduced: &Word) -> Result<Vec<(u8, BigInt)>> {
    reduced
        .letters()
        .iter()
        .map(|(g, e)| match g {
            Generator::Free(i) if *i >= 1 && *i <= rank => Ok((ranks[*i as usize - 1], e.clone())),
            other => Err(Error::AlphabetMismatch(format!(
                "`{other}` is not a free letter of rank <= {rank}"
            ))),
        })
        .collect()
}

fn expand(letters: &[(u8, BigInt)], trunc: usize) -> Series {
    let mut acc = Series::one(trunc);
    for (rank, e) in letters {
        acc = acc.mul(&Series::letter(trunc, *rank, e));
    }
    acc
}

/// Identity precedence `[1, 2, .., rank]`.
pub fn identity_precedence(rank: u32) -> Vec<u32> {
    (1..=rank).collect()
}

fn precedence_ranks(rank: u32, precedence: &[u32]) -> Result<Vec<u8>> {
    if rank == 0 || rank > 255 {
        return Err(Error::Config(format!("rank {rank} outside supported range 1..=255")));
    }
    if precedence.len() != rank as usize {
        return Err(Error::Config(format!(
            "precedence lists {} variables, rank is {rank}",
            precedence.len()
        )));
    }
    let mut ranks = vec![u8::MAX; rank as usize];
    for (pos, var) in precedence.iter().enumerate() {
        if *var < 1 || *var > rank || ranks[*var as usize - 1] != u8::MAX {
            return Err(Error::Config(format!(
                "precedence must be a permutation of 1..={rank}"
            )));
        }
        ranks[*var as usize - 1] = pos as u8;
    }
    Ok(ranks)
}
