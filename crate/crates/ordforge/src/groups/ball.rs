//! Cayley-ball enumeration with canonical shortest-word representatives.
//!
//! Elements are discovered breadth-first over the sorted factor list (the
//! generators and their inverses), so each element's stored representative is
//! its lexicographically least shortest factor sequence, and the element list
//! comes out sorted by (word length, factor sequence).

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::braid;
use crate::error::{Error, Result};
use crate::word::{canonical_cmp, Word};

use super::GroupCtx;

/// Default limit on products examined during enumeration.
pub const DEFAULT_BALL_CAP: usize = 200_000;

/// One enumerated element.
#[derive(Debug, Clone)]
pub struct BallElement {
    /// Lexicographically least shortest product of factors reaching it.
    pub rep: Word,
    /// Stable per-element word: the normal form where the group has one,
    /// otherwise (braids) the handle-reduced representative.
    pub key: Word,
    /// Factor length of `rep` (the radius at which the element first appears).
    pub length: u32,
}

/// A ball in the Cayley graph of the subgroup generated by `gens`.
#[derive(Debug, Clone)]
pub struct Ball {
    pub elements: Vec<BallElement>,
}

impl Ball {
    /// Indices of the elements inside the sub-ball of the given radius.
    pub fn within(&self, radius: u32) -> impl Iterator<Item = usize> + '_ {
        self.elements
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.length <= radius)
            .map(|(i, _)| i)
    }
}

enum Dedup {
    /// Key by normal form.
    NormalForm(HashMap<Word, usize>),
    /// Bucket by (strand permutation, exponent sum), confirm by equality.
    Braid {
        strands: u32,
        buckets: HashMap<(Vec<u16>, BigInt), Vec<usize>>,
    },
}

impl Dedup {
    fn new(ctx: &GroupCtx) -> Self {
        match ctx {
            GroupCtx::Braid { strands } => Dedup::Braid {
                strands: *strands,
                buckets: HashMap::new(),
            },
            _ => Dedup::NormalForm(HashMap::new()),
        }
    }

    /// Returns the element's key word if it is new, `None` if already seen.
    fn admit(&mut self, ctx: &GroupCtx, w: &Word, index: usize, known: &[BallElement]) -> Result<Option<Word>> {
        match self {
            Dedup::NormalForm(seen) => {
                let nf = ctx.normal_form(w)?;
                if seen.contains_key(&nf) {
                    return Ok(None);
                }
                seen.insert(nf.clone(), index);
                Ok(Some(nf))
            }
            Dedup::Braid { strands, buckets } => {
                let reduced = braid::handle_reduce(*strands, w, braid::DEFAULT_STEP_CAP)?;
                let bucket_key = (
                    braid::permutation(*strands, &reduced)?,
                    braid::exponent_sum(&reduced)?,
                );
                let bucket = buckets.entry(bucket_key).or_default();
                for &other in bucket.iter() {
                    if braid::braid_equal(*strands, &reduced, &known[other].key, braid::DEFAULT_STEP_CAP)? {
                        return Ok(None);
                    }
                }
                bucket.push(index);
                Ok(Some(reduced))
            }
        }
    }
}

/// Enumerates the ball of the given radius over `gens`, examining at most
/// `cap` products. Empty `gens` gives the trivial subgroup; a generator equal
/// to the identity is rejected.
pub fn ball(ctx: &GroupCtx, gens: &[Word], radius: u32, cap: usize) -> Result<Ball> {
    let identity = Word::identity();
    let mut factors: Vec<Word> = Vec::new();
    for g in gens {
        ctx.validate_word(g)?;
        if ctx.equal(g, &identity)? {
            return Err(Error::InvalidGenerator(format!(
                "generator `{g}` is the identity"
            )));
        }
        for cand in [g.clone(), g.invert()] {
            let mut fresh = true;
            for kept in &factors {
                if ctx.equal(kept, &cand)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                factors.push(cand);
            }
        }
    }
    factors.sort_by(|a, b| canonical_cmp(a, b));

    let mut dedup = Dedup::new(ctx);
    let mut elements = vec![BallElement {
        rep: identity.clone(),
        key: dedup
            .admit(ctx, &identity, 0, &[])?
            .expect("identity admits into an empty ball"),
        length: 0,
    }];
    let mut frontier: Vec<usize> = vec![0];
    let mut examined: usize = 0;

    for depth in 1..=radius {
        let mut next = Vec::new();
        for &idx in &frontier {
            let base = elements[idx].rep.clone();
            for f in &factors {
                examined += 1;
                if examined > cap {
                    return Err(Error::BallBudgetExceeded { candidates: examined, cap });
                }
                let rep = base.concat(f)?;
                let slot = elements.len();
                if let Some(key) = dedup.admit(ctx, &rep, slot, &elements)? {
                    elements.push(BallElement { rep, key, length: depth });
                    next.push(slot);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    Ok(Ball { elements })
}
