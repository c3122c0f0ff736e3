//! Sign assignments derived from an eventually shifting action by `t`.
//!
//! Given an action whose conjugation pushes leading indices upward by a fixed
//! offset `n` (in one of the two directions of `t`), a sign `eps(i)` is
//! assigned to every index: `+1` on the seed block `0 <= i < n`, and for
//! indices beyond it the sign of the exponent of the leading letter after
//! iterating the action from the seed block. Indices below zero iterate the
//! opposite direction. The resulting assignment makes the leading-term order
//! invariant under the action.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::groups::{GroupCtx, TAction};
use crate::word::{Generator, Word};

/// A built sign derivation: the orientation and offset of the shift, plus a
/// memo of computed signs. The memo is a pure cache: concurrent lookups may
/// duplicate work but always agree.
#[derive(Debug)]
pub struct PgtData {
    action: TAction,
    n: i64,
    orientation: i8,
    window: i64,
    memo: Mutex<HashMap<i64, i8>>,
}

impl PartialEq for PgtData {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
            && self.n == other.n
            && self.orientation == other.orientation
            && self.window == other.window
    }
}

/// Leading (highest-index) letter of a word over the indexed alphabet, as
/// `(index, exponent sign)`.
fn leading_letter(w: &Word, window: i64) -> Result<(i64, i8)> {
    let ctx = GroupCtx::Eg { window };
    let (idx, exp) = ctx.leading_term(w)?;
    Ok((idx, if exp.is_positive() { 1 } else { -1 }))
}

/// Builds the derivation for an action on the given window: picks the
/// orientation of `t` under which the leading index of `a[0]` moves up,
/// checks the offset is uniform across the window, and returns the data.
pub fn pgt_build(action: &TAction, window: i64) -> Result<PgtData> {
    action.validate(window)?;
    let a0 = Word::gen(Generator::Eg(0));
    let mut chosen: Option<(i8, i64)> = None;
    for orientation in [1i8, -1i8] {
        let image = action.apply(&a0, orientation as i64, window)?;
        let (idx, _) = leading_letter(&image, window)?;
        if idx > 0 {
            chosen = Some((orientation, idx));
            break;
        }
    }
    let (orientation, n) = chosen.ok_or(Error::NotEventuallyShifting)?;

    // Regularity: on every window index whose image stays inside the window,
    // the leading index must move up by exactly n.
    for i in -window..=window {
        let image = match action.apply(&Word::gen(Generator::Eg(i)), orientation as i64, window) {
            Ok(w) => w,
            Err(Error::WindowExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        match leading_letter(&image, window) {
            Ok((idx, _)) if idx == i + n => {}
            Ok(_) | Err(Error::IdentityHasNoLeadingTerm) => {
                return Err(Error::NotEventuallyShifting)
            }
            Err(Error::WindowExceeded { .. }) => continue,
            Err(e) => return Err(e),
        }
    }

    Ok(PgtData {
        action: action.clone(),
        n,
        orientation,
        window,
        memo: Mutex::new(HashMap::new()),
    })
}

impl PgtData {
    /// The leading-index offset of the chosen orientation (always positive).
    pub fn offset(&self) -> i64 {
        self.n
    }

    /// `+1` if the forward direction of `t` shifts upward, `-1` if the
    /// inverse direction was taken.
    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// The sign assigned to index `i`.
    pub fn eps(&self, i: i64) -> Result<i8> {
        if let Some(&hit) = self.memo.lock().expect("memo lock").get(&i) {
            return Ok(hit);
        }
        let value = self.compute(i)?;
        self.memo.lock().expect("memo lock").insert(i, value);
        Ok(value)
    }

    fn compute(&self, i: i64) -> Result<i8> {
        if (0..self.n).contains(&i) {
            return Ok(1);
        }
        // Iterate from the seed representative of i's residue class, moving
        // toward i one offset per step and tracking only the leading letter.
        let r0 = i.rem_euclid(self.n);
        let (steps, direction) = if i > 0 {
            ((i - r0) / self.n, self.orientation as i64)
        } else {
            ((r0 - i) / self.n, -(self.orientation as i64))
        };
        let mut word = Word::gen(Generator::Eg(r0));
        let mut sign: i8 = 1;
        for _ in 0..steps {
            let image = self.action.apply(&word, direction, self.window)?;
            let (idx, s) = leading_letter(&image, self.window)?;
            word = Word::letter(Generator::Eg(idx), s);
            sign = s;
        }
        Ok(sign)
    }
}
