//! Group contexts: the concrete groups words are interpreted in.
//!
//! A [`GroupCtx`] bundles a group kind with the bookkeeping it needs (tracked
//! index window, action by `t`, base group). It answers normal forms, word
//! equality, leading terms, extension decompositions, and Cayley-ball
//! enumeration. Braid contexts have no normal form; their word problem is
//! solved in [`crate::braid`] and surfaced here through `equal`.

mod action;
mod ball;
pub(crate) mod eg;

pub use action::{apply_taction, TAction};
pub use ball::{ball, Ball, BallElement, DEFAULT_BALL_CAP};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::word::{exp_to_i64, ExtLetter, Generator, Word};

use eg::{as_eg_letters, check_window, eg_normal_form, eg_normal_word, eg_word, klein_fold, klein_word, push_eg};

/// Default tracked window for doubly indexed generators.
pub const DEFAULT_WINDOW: i64 = 32;

/// Which extension of the doubly indexed group by the letters `u`, `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UvKind {
    /// `u` conjugates every `a[i]` to its inverse.
    Gu,
    /// Adds `v` with `v^-1 a[i] v = a[i+1]` and `v^-1 u v = u^-1`.
    J,
}

/// A group context. Construct through [`GroupCtx::from_descriptor`] or the
/// typed constructors; `SemidirectByT` validates its action on construction.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupCtx {
    /// Free group of the given rank (letters `x1..`).
    Free { rank: u32 },
    /// Klein-bottle group on `a`, `b`.
    Klein,
    /// The doubly indexed group on `a[i]`.
    Eg { window: i64 },
    /// Extension of the doubly indexed group by `t` acting through `action`.
    SemidirectByT { window: i64, action: TAction },
    /// Extension of the doubly indexed group by `u` (and `v` for `J`).
    UvExtension { window: i64, kind: UvKind },
    /// Direct product of a central letter `z` with a base group.
    DirectWithZ { base: Box<GroupCtx> },
    /// Braid group on the given number of strands (letters `s1..`).
    Braid { strands: u32 },
}

/// Decomposition of a word in an extension context into its layout parts.
/// Exponents are the extension-letter totals after commuting everything into
/// the layout order; `base` is in base-group normal form.
#[derive(Debug, Clone, PartialEq)]
pub enum SemidirectForm {
    /// `g = t^n * base`.
    TPower { n: BigInt, base: Word },
    /// `g = z^n * base` (z central).
    ZPower { n: BigInt, base: Word },
    /// `g = base * u^j`.
    UPower { base: Word, j: BigInt },
    /// `g = base * u^j * v^k`.
    UvPower { base: Word, j: BigInt, k: BigInt },
}

impl GroupCtx {
    pub fn free(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Config("free rank must be at least 1".into()));
        }
        Ok(GroupCtx::Free { rank })
    }

    pub fn braid(strands: u32) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Config("braid groups need at least 2 strands".into()));
        }
        Ok(GroupCtx::Braid { strands })
    }

    pub fn semidirect_by_t(action: TAction, window: i64) -> Result<Self> {
        action.validate(window)?;
        Ok(GroupCtx::SemidirectByT { window, action })
    }

    /// Parses a group descriptor: `free:N`, `klein`, `eg`, `eg:t=ACTION`
    /// (`shift`, `shiftinv`, `unshift`), `gu`, `j`, `zx:BASE`, `braid:N`.
    pub fn from_descriptor(desc: &str, window: i64) -> Result<Self> {
        if window <= 0 {
            return Err(Error::Config("window must be positive".into()));
        }
        match desc {
            "klein" => return Ok(GroupCtx::Klein),
            "eg" => return Ok(GroupCtx::Eg { window }),
            "gu" => return Ok(GroupCtx::UvExtension { window, kind: UvKind::Gu }),
            "j" => return Ok(GroupCtx::UvExtension { window, kind: UvKind::J }),
            _ => {}
        }
        if let Some(rank) = desc.strip_prefix("free:") {
            let rank: u32 = rank
                .parse()
                .map_err(|_| Error::Config(format!("bad rank in `{desc}`")))?;
            return GroupCtx::free(rank);
        }
        if let Some(strands) = desc.strip_prefix("braid:") {
            let strands: u32 = strands
                .parse()
                .map_err(|_| Error::Config(format!("bad strand count in `{desc}`")))?;
            return GroupCtx::braid(strands);
        }
        if let Some(name) = desc.strip_prefix("eg:t=") {
            return GroupCtx::semidirect_by_t(TAction::by_name(name)?, window);
        }
        if let Some(base) = desc.strip_prefix("zx:") {
            let base_ctx = GroupCtx::from_descriptor(base, window)?;
            match base_ctx {
                GroupCtx::Free { .. } | GroupCtx::Klein | GroupCtx::Eg { .. } => {
                    return Ok(GroupCtx::DirectWithZ { base: Box::new(base_ctx) })
                }
                _ => {
                    return Err(Error::Config(format!(
                        "`zx:` supports free, klein, and eg bases, not `{base}`"
                    )))
                }
            }
        }
        Err(Error::Config(format!("unknown group descriptor `{desc}`")))
    }

    /// The descriptor this context round-trips to.
    pub fn descriptor(&self) -> String {
        match self {
            GroupCtx::Free { rank } => format!("free:{rank}"),
            GroupCtx::Klein => "klein".into(),
            GroupCtx::Eg { .. } => "eg".into(),
            GroupCtx::SemidirectByT { action, .. } => format!("eg:t={}", action.name()),
            GroupCtx::UvExtension { kind: UvKind::Gu, .. } => "gu".into(),
            GroupCtx::UvExtension { kind: UvKind::J, .. } => "j".into(),
            GroupCtx::DirectWithZ { base } => format!("zx:{}", base.descriptor()),
            GroupCtx::Braid { strands } => format!("braid:{strands}"),
        }
    }

    pub fn window(&self) -> i64 {
        match self {
            GroupCtx::Eg { window }
            | GroupCtx::SemidirectByT { window, .. }
            | GroupCtx::UvExtension { window, .. } => *window,
            GroupCtx::DirectWithZ { base } => base.window(),
            _ => DEFAULT_WINDOW,
        }
    }

    /// The base group a decomposition's `base` part lives in.
    pub fn base_view(&self) -> Option<GroupCtx> {
        match self {
            GroupCtx::SemidirectByT { window, .. } | GroupCtx::UvExtension { window, .. } => {
                Some(GroupCtx::Eg { window: *window })
            }
            GroupCtx::DirectWithZ { base } => Some((**base).clone()),
            _ => None,
        }
    }

    /// Checks that every letter of `w` belongs to this context's alphabet
    /// (and, for indexed letters, to the tracked window).
    pub fn validate_word(&self, w: &Word) -> Result<()> {
        for (g, _) in w.letters() {
            self.validate_letter(*g)?;
        }
        Ok(())
    }

    fn validate_letter(&self, g: Generator) -> Result<()> {
        let bad = |ctx: &GroupCtx| {
            Err(Error::AlphabetMismatch(format!(
                "letter `{g}` does not belong to group `{}`",
                ctx.descriptor()
            )))
        };
        match self {
            GroupCtx::Free { rank } => match g {
                Generator::Free(i) if i >= 1 && i <= *rank => Ok(()),
                _ => bad(self),
            },
            GroupCtx::Klein => match g {
                Generator::Klein(_) => Ok(()),
                _ => bad(self),
            },
            GroupCtx::Eg { window } => match g {
                Generator::Eg(i) => check_window(i, *window),
                _ => bad(self),
            },
            GroupCtx::SemidirectByT { window, .. } => match g {
                Generator::Eg(i) => check_window(i, *window),
                Generator::Ext(ExtLetter::T) => Ok(()),
                _ => bad(self),
            },
            GroupCtx::UvExtension { window, kind } => match g {
                Generator::Eg(i) => check_window(i, *window),
                Generator::Ext(ExtLetter::U) => Ok(()),
                Generator::Ext(ExtLetter::V) if *kind == UvKind::J => Ok(()),
                _ => bad(self),
            },
            GroupCtx::DirectWithZ { base } => match g {
                Generator::Ext(ExtLetter::Z) => Ok(()),
                _ => base.validate_letter(g).map_err(|_| {
                    Error::AlphabetMismatch(format!(
                        "letter `{g}` does not belong to group `{}`",
                        self.descriptor()
                    ))
                }),
            },
            GroupCtx::Braid { strands } => match g {
                Generator::Braid(i) if i >= 1 && i < *strands => Ok(()),
                _ => bad(self),
            },
        }
    }

    /// Group normal form. Extension kinds return their layout flattened to a
    /// word; braid groups have no normal form and report `UnsupportedGroup`.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.validate_word(w)?;
        match self {
            GroupCtx::Free { .. } => Ok(w.free_reduce()),
            GroupCtx::Klein => {
                let (m, n) = klein_fold(w)?;
                Ok(klein_word(m, n))
            }
            GroupCtx::Eg { window } => eg_normal_word(w, *window),
            GroupCtx::SemidirectByT { .. }
            | GroupCtx::UvExtension { .. }
            | GroupCtx::DirectWithZ { .. } => Ok(self.decompose(w)?.flatten()),
            GroupCtx::Braid { .. } => Err(Error::UnsupportedGroup {
                op: "normal_form",
                group: self.descriptor(),
            }),
        }
    }

    /// Group-element equality. Everything with a normal form compares normal
    /// forms; braids compare through handle reduction.
    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool> {
        match self {
            GroupCtx::Braid { strands } => {
                self.validate_word(a)?;
                self.validate_word(b)?;
                crate::braid::braid_equal(*strands, a, b, crate::braid::DEFAULT_STEP_CAP)
            }
            _ => Ok(self.normal_form(a)? == self.normal_form(b)?),
        }
    }

    /// Highest-index letter of the normal form, for contexts whose words are
    /// purely doubly indexed.
    pub fn leading_term(&self, w: &Word) -> Result<(i64, BigInt)> {
        match self {
            GroupCtx::Eg { window } => {
                let nf = eg_normal_form(&as_eg_letters(w)?, *window)?;
                nf.last()
                    .map(|(i, e)| (*i, e.clone()))
                    .ok_or(Error::IdentityHasNoLeadingTerm)
            }
            _ => Err(Error::UnsupportedGroup {
                op: "leading_term",
                group: self.descriptor(),
            }),
        }
    }

    /// Splits a word in an extension context into its layout parts.
    pub fn decompose(&self, w: &Word) -> Result<SemidirectForm> {
        self.validate_word(w)?;
        match self {
            GroupCtx::SemidirectByT { window, action } => {
                // State g = t^n * c. Appending t^e moves it into the t block
                // and twists c by the action; appending a letter extends c.
                let mut n = BigInt::zero();
                let mut c: Vec<eg::EgLetter> = Vec::new();
                for (g, e) in w.letters() {
                    match g {
                        Generator::Ext(ExtLetter::T) => {
                            n += e;
                            let power = exp_to_i64(e, "t exponent")?;
                            let twisted = action.apply(&eg_word(std::mem::take(&mut c)), power, *window)?;
                            c = as_eg_letters(&twisted)?;
                        }
                        Generator::Eg(i) => push_eg(&mut c, *i, e.clone()),
                        _ => unreachable!("validated alphabet"),
                    }
                }
                Ok(SemidirectForm::TPower { n, base: eg_word(c) })
            }
            GroupCtx::UvExtension { window, kind } => {
                // State g = c * u^j (* v^k). Appending a letter commutes it
                // leftwards across the exponent blocks.
                let mut c: Vec<eg::EgLetter> = Vec::new();
                let mut j = BigInt::zero();
                let mut k = BigInt::zero();
                for (g, e) in w.letters() {
                    match g {
                        Generator::Eg(i) => {
                            let shift = exp_to_i64(&k, "v exponent")?;
                            let idx = i.checked_sub(shift).ok_or_else(|| {
                                Error::ExponentOverflow(format!("index {i} shifted by v^{k}"))
                            })?;
                            check_window(idx, *window)?;
                            let exp = if j.is_odd() { -e.clone() } else { e.clone() };
                            push_eg(&mut c, idx, exp);
                        }
                        Generator::Ext(ExtLetter::U) => {
                            if k.is_odd() {
                                j -= e;
                            } else {
                                j += e;
                            }
                        }
                        Generator::Ext(ExtLetter::V) => k += e,
                        _ => unreachable!("validated alphabet"),
                    }
                }
                match kind {
                    UvKind::Gu => Ok(SemidirectForm::UPower { base: eg_word(c), j }),
                    UvKind::J => Ok(SemidirectForm::UvPower { base: eg_word(c), j, k }),
                }
            }
            GroupCtx::DirectWithZ { base } => {
                let mut n = BigInt::zero();
                let mut rest: Vec<(Generator, BigInt)> = Vec::new();
                for (g, e) in w.letters() {
                    match g {
                        Generator::Ext(ExtLetter::Z) => n += e,
                        other => rest.push((*other, e.clone())),
                    }
                }
                let base_word = base.normal_form(&Word::from_letters(rest))?;
                Ok(SemidirectForm::ZPower { n, base: base_word })
            }
            _ => Err(Error::UnsupportedGroup {
                op: "decompose",
                group: self.descriptor(),
            }),
        }
    }
}

impl SemidirectForm {
    /// The layout written back out as a word.
    pub fn flatten(&self) -> Word {
        match self {
            SemidirectForm::TPower { n, base } => {
                Word::letter(Generator::Ext(ExtLetter::T), n.clone())
                    .concat(base)
                    .expect("t combines with indexed letters")
            }
            SemidirectForm::ZPower { n, base } => {
                Word::letter(Generator::Ext(ExtLetter::Z), n.clone())
                    .concat(base)
                    .expect("z combines with its base alphabet")
            }
            SemidirectForm::UPower { base, j } => base
                .concat(&Word::letter(Generator::Ext(ExtLetter::U), j.clone()))
                .expect("u combines with indexed letters"),
            SemidirectForm::UvPower { base, j, k } => base
                .concat(&Word::letter(Generator::Ext(ExtLetter::U), j.clone()))
                .and_then(|w| w.concat(&Word::letter(Generator::Ext(ExtLetter::V), k.clone())))
                .expect("u, v combine with indexed letters"),
        }
    }

    /// The base-group part.
    pub fn base(&self) -> &Word {
        match self {
            SemidirectForm::TPower { base, .. }
            | SemidirectForm::ZPower { base, .. }
            | SemidirectForm::UPower { base, .. }
            | SemidirectForm::UvPower { base, .. } => base,
        }
    }
}
