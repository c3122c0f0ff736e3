//! Automorphism actions on the doubly indexed group.
//!
//! A [`TAction`] carries a forward and an inverse rule, each mapping a
//! generator index to an image word, plus a window-bounded validity check:
//! the rules must preserve the defining relations and compose to the
//! identity wherever the images stay inside the tracked window. Actions are
//! supplied, never inferred.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Generator, Word};

use super::eg::{as_eg_letters, eg_normal_word};

type Rule = Arc<dyn Fn(i64) -> Word + Send + Sync>;

#[derive(Clone)]
pub struct TAction {
    name: String,
    forward: Rule,
    inverse: Rule,
}

impl fmt::Debug for TAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TAction").field("name", &self.name).finish()
    }
}

impl PartialEq for TAction {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}
impl Eq for TAction {}

fn letter(idx: i64, exp: i64) -> Word {
    Word::letter(Generator::Eg(idx), exp)
}

impl TAction {
    /// A custom action from a pair of index rules. The rules receive a
    /// generator index and return the image of that generator.
    pub fn new(
        name: impl Into<String>,
        forward: impl Fn(i64) -> Word + Send + Sync + 'static,
        inverse: impl Fn(i64) -> Word + Send + Sync + 'static,
    ) -> Self {
        TAction {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        }
    }

    /// `a[i] -> a[i+1]`.
    pub fn shift() -> Self {
        TAction::new("shift", |i| letter(i + 1, 1), |i| letter(i - 1, 1))
    }

    /// `a[i] -> a[i-1]`, the inverse automorphism of `shift`.
    pub fn unshift() -> Self {
        TAction::new("unshift", |i| letter(i - 1, 1), |i| letter(i + 1, 1))
    }

    /// `a[i] -> a[i+1]^-1`, shift composed with inversion.
    pub fn shiftinv() -> Self {
        TAction::new("shiftinv", |i| letter(i + 1, -1), |i| letter(i - 1, -1))
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "shift" => Ok(TAction::shift()),
            "unshift" => Ok(TAction::unshift()),
            "shiftinv" => Ok(TAction::shiftinv()),
            other => Err(Error::Config(format!("unknown action `{other}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Applies the action `power` times (negative powers use the inverse
    /// rule) to a word over the doubly indexed alphabet, returning the
    /// normal form of the image.
    pub fn apply(&self, w: &Word, power: i64, window: i64) -> Result<Word> {
        let mut current = eg_normal_word(w, window)?;
        let rule = if power >= 0 { &self.forward } else { &self.inverse };
        for _ in 0..power.unsigned_abs() {
            let mut image = Word::identity();
            for (idx, exp) in as_eg_letters(&current)? {
                let piece = rule(idx).pow(exp)?;
                image = image.concat(&piece)?;
            }
            current = eg_normal_word(&image, window)?;
        }
        Ok(current)
    }

    /// Window-bounded validity check: forward then inverse is the identity,
    /// adjacent-index images satisfy the conjugation relation, and distant
    /// images commute. Relation instances whose images leave the window are
    /// skipped (they are not checkable); if every instance is skipped the
    /// window is too small to say anything and that is an error.
    pub fn validate(&self, window: i64) -> Result<()> {
        let mut checked = 0usize;

        let eq = |lhs: &Word, rhs: &Word| -> Result<Option<bool>> {
            match (eg_normal_word(lhs, window), eg_normal_word(rhs, window)) {
                (Ok(a), Ok(b)) => Ok(Some(a == b)),
                (Err(Error::WindowExceeded { .. }), _) | (_, Err(Error::WindowExceeded { .. })) => {
                    Ok(None)
                }
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        };

        for i in -window..=window {
            // Round trip: inverse(forward(a[i])) = a[i].
            let fwd = match self.apply(&letter(i, 1), 1, window) {
                Ok(w) => w,
                Err(Error::WindowExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            match self.apply(&fwd, -1, window) {
                Ok(back) => {
                    if back != letter(i, 1) {
                        return Err(Error::Config(format!(
                            "action `{}`: inverse rule does not undo the forward rule at index {i}",
                            self.name
                        )));
                    }
                    checked += 1;
                }
                Err(Error::WindowExceeded { .. }) => continue,
                Err(e) => return Err(e),
            }

            // Conjugation relation: f(a[i+1]) f(a[i]) f(a[i+1])^-1 = f(a[i])^-1.
            if i + 1 <= window {
                let fi = fwd.clone();
                if let Ok(fi1) = self.apply(&letter(i + 1, 1), 1, window) {
                    let lhs = fi1.concat(&fi)?.concat(&fi1.invert())?;
                    let rhs = fi.invert();
                    if let Some(ok) = eq(&lhs, &rhs)? {
                        if !ok {
                            return Err(Error::Config(format!(
                                "action `{}` breaks the conjugation relation at index {i}",
                                self.name
                            )));
                        }
                        checked += 1;
                    }
                }
            }
        }

        // Commutation for distant pairs. Quadratic in the window, each
        // instance a few short normal forms.
        for i in -window..=window {
            let fi = match self.apply(&letter(i, 1), 1, window) {
                Ok(w) => w,
                Err(Error::WindowExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            for j in (i + 2)..=window {
                let fj = match self.apply(&letter(j, 1), 1, window) {
                    Ok(w) => w,
                    Err(Error::WindowExceeded { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let lhs = fi.concat(&fj)?;
                let rhs = fj.concat(&fi)?;
                if let Some(ok) = eq(&lhs, &rhs)? {
                    if !ok {
                        return Err(Error::Config(format!(
                            "action `{}` breaks commutation of indices {i} and {j}",
                            self.name
                        )));
                    }
                    checked += 1;
                }
            }
        }

        if checked == 0 {
            return Err(Error::Config(format!(
                "window {window} too small to validate action `{}`",
                self.name
            )));
        }
        Ok(())
    }
}

/// Applies `action` to `w` `power` times; free function mirror of
/// [`TAction::apply`] for callers holding a context.
pub fn apply_taction(action: &TAction, w: &Word, power: i64, window: i64) -> Result<Word> {
    action.apply(w, power, window)
}
