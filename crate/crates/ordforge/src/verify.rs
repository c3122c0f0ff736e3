//! Desk-scale property harness for orders on groups.
//!
//! Every check enumerates a Cayley ball, evaluates the order's sign oracle on
//! elements or pairs, and produces a [`VerificationReport`]: a verdict
//! (`Pass`, `CounterexampleFound`, or `Inconclusive`), replayable witness
//! words, and the statistics of what was actually examined. Checks are
//! exhaustive whenever the pair count fits the budget; beyond it they fall
//! back to a seeded uniform sample and say so in the report. A `Pass` is
//! therefore evidence on the verified ball, never a proof about the group.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{ball, Ball, GroupCtx};
use crate::orders::{config, ConvexPredicate, OrderSpec, Sign};
use crate::word::Word;

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    CounterexampleFound,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = match self {
            Verdict::Pass => "Pass",
            Verdict::CounterexampleFound => "CounterexampleFound",
            Verdict::Inconclusive => "Inconclusive",
        };
        write!(f, "{shown}")
    }
}

/// Whether every relevant pair was examined or a seeded sample of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled => write!(f, "sampled"),
        }
    }
}

/// Work actually performed. Wall time is measured but deliberately kept out
/// of the serialized report so that output is bit-stable for a given seed.
#[derive(Debug, Clone, Serialize)]
pub struct Stats {
    pub elements: usize,
    pub pairs: usize,
    #[serde(skip)]
    pub wall: Duration,
}

/// Ball-verified discreteness data for a least positive element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretenessWitness {
    /// Candidate least positive element.
    pub a: Word,
    /// Radius of the ball the checks ran on.
    pub radius_verified: u32,
    /// No ball element sits strictly between `g` and `a*g` (the `g = 1` case
    /// is the gap between the identity and `a`).
    pub gap_checked: bool,
    /// The cyclic subgroup of `a` meets the ball in an interval.
    pub convexity_checked: bool,
}

/// Structured result of one verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub group: String,
    pub order: serde_json::Value,
    pub gens: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<String>,
    pub budget: usize,
    pub seed: u64,
    pub mode: Mode,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub stats: Stats,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check:    {}", self.check)?;
        writeln!(f, "group:    {}", self.group)?;
        writeln!(f, "order:    {}", self.order)?;
        writeln!(f, "gens:     {}", self.gens.join(", "))?;
        if let Some(radius) = self.radius {
            writeln!(f, "radius:   {radius}")?;
        }
        if let Some(radii) = &self.radii {
            let shown: Vec<String> = radii.iter().map(u32::to_string).collect();
            writeln!(f, "radii:    {}", shown.join(", "))?;
        }
        if let Some(member) = &self.member {
            writeln!(f, "member:   {member}")?;
        }
        writeln!(f, "budget:   {}", self.budget)?;
        writeln!(f, "seed:     {}", self.seed)?;
        writeln!(f, "mode:     {}", self.mode)?;
        writeln!(f, "verdict:  {}", self.verdict)?;
        if !self.witness.is_empty() {
            writeln!(f, "witness:  {}", self.witness.join("  |  "))?;
        }
        for note in &self.notes {
            writeln!(f, "note:     {note}")?;
        }
        write!(f, "checked:  {} elements, {} pairs", self.stats.elements, self.stats.pairs)
    }
}

/// Sign oracle plus group context, so the checking engines can be exercised
/// with deliberately lawless oracles in tests.
struct Harness<'a> {
    ctx: &'a GroupCtx,
    sign: Box<dyn Fn(&Word) -> Result<Sign> + 'a>,
}

impl<'a> Harness<'a> {
    fn from_spec(ctx: &'a GroupCtx, spec: &'a OrderSpec) -> Harness<'a> {
        Harness { ctx, sign: Box::new(move |w| spec.sign(ctx, w)) }
    }

    #[cfg(test)]
    fn from_closure(
        ctx: &'a GroupCtx,
        sign: impl Fn(&Word) -> Result<Sign> + 'a,
    ) -> Harness<'a> {
        Harness { ctx, sign: Box::new(sign) }
    }

    fn sign(&self, w: &Word) -> Result<Sign> {
        (self.sign)(w)
    }

    /// Strict order: `f < g` iff `g f^-1` has positive sign.
    fn lt(&self, f: &Word, g: &Word) -> Result<bool> {
        Ok(self.sign(&g.concat(&f.invert())?)? == Sign::Positive)
    }
}

/// What one engine run found, before being wrapped into a report.
struct Outcome {
    verdict: Verdict,
    mode: Mode,
    witness: Vec<Word>,
    notes: Vec<String>,
    elements: usize,
    pairs: usize,
}

/// Lexicographically ordered index pairs: all of them when the count fits
/// the budget, otherwise a seeded uniform sample (sorted, deduplicated).
fn plan_pairs(rows: usize, cols: usize, budget: usize, seed: u64) -> (Mode, Vec<(usize, usize)>) {
    let total = rows.checked_mul(cols);
    if let Some(total) = total {
        if total <= budget {
            let pairs = (0..rows)
                .flat_map(|i| (0..cols).map(move |j| (i, j)))
                .collect();
            return (Mode::Exhaustive, pairs);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..budget)
        .map(|_| (rng.gen_range(0..rows), rng.gen_range(0..cols)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    (Mode::Sampled, pairs)
}

fn reps(ball: &Ball) -> Vec<&Word> {
    ball.elements.iter().map(|e| &e.key).collect()
}

/// Axioms of a positive cone on the ball: trichotomy per element (exactly one
/// of `g = 1`, `g` positive, `g^-1` positive) and closure of the positive
/// part under multiplication.
fn cone_engine(h: &Harness, gens: &[Word], radius: u32, budget: usize, seed: u64) -> Result<Outcome> {
    let ball = ball(h.ctx, gens, radius, budget)?;
    let words = reps(&ball);
    let identity = Word::identity();

    let mut signs = Vec::with_capacity(words.len());
    for w in &words {
        signs.push(h.sign(w)?);
    }

    // Trichotomy, exhaustively.
    for (i, w) in words.iter().enumerate() {
        let is_identity = h.ctx.equal(w, &identity)?;
        let inverse_sign = h.sign(&w.invert())?;
        let consistent = match signs[i] {
            Sign::Identity => is_identity,
            Sign::Positive => !is_identity && inverse_sign == Sign::Negative,
            Sign::Negative => !is_identity && inverse_sign == Sign::Positive,
        };
        if !consistent {
            return Ok(Outcome {
                verdict: Verdict::CounterexampleFound,
                mode: Mode::Exhaustive,
                witness: vec![(*w).clone()],
                notes: vec![format!(
                    "trichotomy fails: sign(w) = {}, sign(w^-1) = {}, w {} the identity",
                    signs[i],
                    inverse_sign,
                    if is_identity { "is" } else { "is not" }
                )],
                elements: words.len(),
                pairs: 0,
            });
        }
    }

    // Closure of the positive part.
    let positives: Vec<usize> = (0..words.len()).filter(|&i| signs[i] == Sign::Positive).collect();
    let (mode, pairs) = plan_pairs(positives.len(), positives.len(), budget, seed);
    for &(i, j) in &pairs {
        let u = words[positives[i]];
        let v = words[positives[j]];
        let product_sign = h.sign(&u.concat(v)?)?;
        if product_sign != Sign::Positive {
            return Ok(Outcome {
                verdict: Verdict::CounterexampleFound,
                mode,
                witness: vec![u.clone(), v.clone()],
                notes: vec![format!(
                    "closure fails: both factors positive but their product has sign {product_sign}"
                )],
                elements: words.len(),
                pairs: pairs.len(),
            });
        }
    }

    Ok(Outcome {
        verdict: Verdict::Pass,
        mode,
        witness: Vec::new(),
        notes: vec![format!("{} positive elements on the ball", positives.len())],
        elements: words.len(),
        pairs: pairs.len(),
    })
}

/// Conjugation invariance `sign(h g h^-1) = sign(g)` over ball pairs.
fn conjugation_engine(
    h: &Harness,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<Outcome> {
    let ball = ball(h.ctx, gens, radius, budget)?;
    let words = reps(&ball);
    let mut signs = Vec::with_capacity(words.len());
    for w in &words {
        signs.push(h.sign(w)?);
    }
    let (mode, pairs) = plan_pairs(words.len(), words.len(), budget, seed);
    for &(gi, hi) in &pairs {
        let g = words[gi];
        let c = words[hi];
        let conjugate = c.concat(g)?.concat(&c.invert())?;
        let conj_sign = h.sign(&conjugate)?;
        if conj_sign != signs[gi] {
            return Ok(Outcome {
                verdict: Verdict::CounterexampleFound,
                mode,
                witness: vec![g.clone(), c.clone()],
                notes: vec![format!(
                    "conjugation breaks the sign: sign(g) = {}, sign(h g h^-1) = {conj_sign}",
                    signs[gi]
                )],
                elements: words.len(),
                pairs: pairs.len(),
            });
        }
    }
    Ok(Outcome {
        verdict: Verdict::Pass,
        mode,
        witness: Vec::new(),
        notes: Vec::new(),
        elements: words.len(),
        pairs: pairs.len(),
    })
}

/// Indices of `ball` sorted ascending under the order, by binary insertion.
fn sorted_indices(h: &Harness, words: &[&Word], compares: &mut usize) -> Result<Vec<usize>> {
    let mut sorted: Vec<usize> = Vec::with_capacity(words.len());
    for i in 0..words.len() {
        let mut lo = 0;
        let mut hi = sorted.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            *compares += 1;
            if h.lt(words[i], words[sorted[mid]])? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        sorted.insert(lo, i);
    }
    Ok(sorted)
}

/// First order-interval violation of `member` on the sorted ball: indices
/// `(x, y, z)` with `x < y < z`, the outer two members, the middle not.
fn contiguity_violation(members: &[bool]) -> Option<(usize, usize, usize)> {
    let first = members.iter().position(|&m| m)?;
    let last = members.iter().rposition(|&m| m)?;
    let middle = (first..=last).find(|&p| !members[p])?;
    let after = (middle..=last).find(|&p| members[p])?;
    Some((first, middle, after))
}

struct MinPositiveData {
    least: Option<(Word, DiscretenessWitness)>,
    outcome: Outcome,
}

/// Least positive ball element plus its discreteness sub-checks: the gap
/// below it, betweenness at half radius, and cyclic-subgroup convexity.
fn min_positive_engine(
    h: &Harness,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<MinPositiveData> {
    let ball = ball(h.ctx, gens, radius, budget)?;
    let words = reps(&ball);
    let mut pairs_checked = 0usize;
    let mut notes = Vec::new();
    let mut witness_words = Vec::new();
    let mut mode = Mode::Exhaustive;

    let mut signs = Vec::with_capacity(words.len());
    for w in &words {
        signs.push(h.sign(w)?);
    }
    let positives: Vec<usize> = (0..words.len()).filter(|&i| signs[i] == Sign::Positive).collect();
    if positives.is_empty() {
        return Ok(MinPositiveData {
            least: None,
            outcome: Outcome {
                verdict: Verdict::Inconclusive,
                mode,
                witness: Vec::new(),
                notes: vec![format!("no positive element within radius {radius}")],
                elements: words.len(),
                pairs: 0,
            },
        });
    }

    // Least positive element.
    let mut min = positives[0];
    for &p in &positives[1..] {
        pairs_checked += 1;
        if h.lt(words[p], words[min])? {
            min = p;
        }
    }
    let a = words[min].clone();
    witness_words.push(a.clone());

    // Gap re-verification: the scan minimum must actually sit below every
    // other positive; a violation means compare is not behaving like an
    // order on this ball.
    let mut gap_ok = true;
    for &p in &positives {
        if p == min {
            continue;
        }
        pairs_checked += 1;
        if h.lt(words[p], words[min])? {
            gap_ok = false;
            notes.push(format!(
                "gap fails: positive element {} sits below the scanned minimum {a}",
                words[p]
            ));
            witness_words.push(words[p].clone());
            break;
        }
    }

    // Betweenness at half radius: no ball element h with g < h < a*g.
    let mut between_ok = true;
    if gap_ok {
        let half: Vec<usize> = ball.within(radius / 2).collect();
        let (between_mode, plan) = plan_pairs(half.len(), words.len(), budget, seed);
        mode = between_mode;
        let shifted: Vec<Word> = half
            .iter()
            .map(|&gi| a.concat(words[gi]))
            .collect::<Result<_>>()?;
        for &(row, col) in &plan {
            let g = words[half[row]];
            let cand = words[col];
            pairs_checked += 1;
            if h.lt(g, cand)? && h.lt(cand, &shifted[row])? {
                between_ok = false;
                notes.push(format!(
                    "betweenness fails: {g} < {cand} < {} (that is, {a} is not a gap above {g})",
                    shifted[row]
                ));
                witness_words = vec![a.clone(), g.clone(), cand.clone()];
                break;
            }
        }
    }

    // Convexity of <a> within the ball, meaningful when a is one letter.
    let mut convexity_ok = false;
    let mut convexity_applicable = false;
    if a.len() == 1 {
        convexity_applicable = true;
        let predicate = ConvexPredicate::Cyclic { base: a.clone() };
        let sorted = sorted_indices(h, &words, &mut pairs_checked)?;
        let mut members = Vec::with_capacity(sorted.len());
        for &i in &sorted {
            members.push(predicate.contains(h.ctx, words[i])?);
        }
        match contiguity_violation(&members) {
            None => convexity_ok = true,
            Some((x, y, z)) => {
                notes.push(format!(
                    "convexity fails: {} < {} < {} with the outer two in <{a}> and the middle outside",
                    words[sorted[x]], words[sorted[y]], words[sorted[z]]
                ));
                witness_words = vec![
                    words[sorted[x]].clone(),
                    words[sorted[y]].clone(),
                    words[sorted[z]].clone(),
                ];
            }
        }
    } else {
        notes.push(format!(
            "convexity not checked: least element {a} is not a single letter"
        ));
    }

    let witness = DiscretenessWitness {
        a: a.clone(),
        radius_verified: radius,
        gap_checked: gap_ok && between_ok,
        convexity_checked: convexity_ok,
    };
    let verdict = if !gap_ok || !between_ok || (convexity_applicable && !convexity_ok) {
        Verdict::CounterexampleFound
    } else {
        Verdict::Pass
    };
    if verdict == Verdict::Pass {
        notes.insert(0, format!("least positive element: {a}"));
    }
    Ok(MinPositiveData {
        least: Some((a, witness)),
        outcome: Outcome {
            verdict,
            mode,
            witness: witness_words,
            notes,
            elements: words.len(),
            pairs: pairs_checked,
        },
    })
}

/// Ball-minimal positive element per radius; Pass iff strictly decreasing.
fn density_engine(
    h: &Harness,
    gens: &[Word],
    radii: &[u32],
    budget: usize,
) -> Result<Outcome> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(
            "density radii must be a non-empty strictly increasing list".into(),
        ));
    }
    let max_radius = *radii.last().expect("non-empty");
    let ball = ball(h.ctx, gens, max_radius, budget)?;
    let words = reps(&ball);
    let mut pairs_checked = 0usize;
    let mut minima: Vec<Word> = Vec::new();
    let mut notes = Vec::new();

    for &radius in radii {
        let indices: Vec<usize> = ball.within(radius).collect();
        let mut min: Option<usize> = None;
        for &i in &indices {
            if h.sign(words[i])? != Sign::Positive {
                continue;
            }
            match min {
                None => min = Some(i),
                Some(m) => {
                    pairs_checked += 1;
                    if h.lt(words[i], words[m])? {
                        min = Some(i);
                    }
                }
            }
        }
        match min {
            None => {
                notes.push(format!("no positive element within radius {radius}"));
                return Ok(Outcome {
                    verdict: Verdict::Inconclusive,
                    mode: Mode::Exhaustive,
                    witness: minima,
                    notes,
                    elements: words.len(),
                    pairs: pairs_checked,
                });
            }
            Some(m) => {
                minima.push(words[m].clone());
                notes.push(format!("radius {radius}: least positive element {}", words[m]));
            }
        }
    }

    for step in minima.windows(2) {
        pairs_checked += 1;
        if h.ctx.equal(&step[1], &step[0])? {
            notes.push(format!("least positive element stabilizes at {}", step[0]));
            return Ok(Outcome {
                verdict: Verdict::Inconclusive,
                mode: Mode::Exhaustive,
                witness: minima.clone(),
                notes,
                elements: words.len(),
                pairs: pairs_checked,
            });
        }
        pairs_checked += 1;
        if !h.lt(&step[1], &step[0])? {
            notes.push(format!(
                "least positive element increased from {} to {} (inconsistent order)",
                step[0], step[1]
            ));
            return Ok(Outcome {
                verdict: Verdict::Inconclusive,
                mode: Mode::Exhaustive,
                witness: minima.clone(),
                notes,
                elements: words.len(),
                pairs: pairs_checked,
            });
        }
    }
    notes.push("least positive element strictly decreases at every step".into());
    Ok(Outcome {
        verdict: Verdict::Pass,
        mode: Mode::Exhaustive,
        witness: minima,
        notes,
        elements: words.len(),
        pairs: pairs_checked,
    })
}

/// Convexity of the candidate subgroup on the sorted ball: an order-interval
/// check equivalent to the exhaustive triple condition.
fn convex_engine(
    h: &Harness,
    member: &ConvexPredicate,
    gens: &[Word],
    radius: u32,
    budget: usize,
) -> Result<Outcome> {
    let ball = ball(h.ctx, gens, radius, budget)?;
    let words = reps(&ball);
    let mut pairs_checked = 0usize;
    let sorted = sorted_indices(h, &words, &mut pairs_checked)?;
    let mut members = Vec::with_capacity(sorted.len());
    let mut member_count = 0usize;
    for &i in &sorted {
        let inside = member.contains(h.ctx, words[i])?;
        member_count += usize::from(inside);
        members.push(inside);
    }
    match contiguity_violation(&members) {
        Some((x, y, z)) => Ok(Outcome {
            verdict: Verdict::CounterexampleFound,
            mode: Mode::Exhaustive,
            witness: vec![
                words[sorted[x]].clone(),
                words[sorted[y]].clone(),
                words[sorted[z]].clone(),
            ],
            notes: vec![format!(
                "{} < {} < {} with the outer two inside the subgroup and the middle outside",
                words[sorted[x]], words[sorted[y]], words[sorted[z]]
            )],
            elements: words.len(),
            pairs: pairs_checked,
        }),
        None => Ok(Outcome {
            verdict: Verdict::Pass,
            mode: Mode::Exhaustive,
            witness: Vec::new(),
            notes: vec![format!("{member_count} ball elements inside the subgroup")],
            elements: words.len(),
            pairs: pairs_checked,
        }),
    }
}

/// Both conjugates of every positive ball element by the least positive
/// element stay positive.
fn lemma32_engine(
    h: &Harness,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<Outcome> {
    let data = min_positive_engine(h, gens, radius, budget, seed)?;
    let Some((a, witness)) = data.least else {
        return Err(Error::NoDiscretenessWitness(format!(
            "no positive element within radius {radius}"
        )));
    };
    if !witness.gap_checked {
        return Err(Error::NoDiscretenessWitness(format!(
            "candidate {a} failed the gap check at radius {radius}"
        )));
    }
    let ball = ball(h.ctx, gens, radius, budget)?;
    let words = reps(&ball);
    let a_inv = a.invert();
    let mut pairs_checked = 0usize;
    for w in &words {
        if h.sign(w)? != Sign::Positive {
            continue;
        }
        for (left, right) in [(&a, &a_inv), (&a_inv, &a)] {
            pairs_checked += 1;
            let conjugate = left.concat(w)?.concat(right)?;
            let sign = h.sign(&conjugate)?;
            if sign != Sign::Positive {
                return Ok(Outcome {
                    verdict: Verdict::CounterexampleFound,
                    mode: Mode::Exhaustive,
                    witness: vec![a.clone(), (*w).clone()],
                    notes: vec![format!(
                        "conjugate {left} {w} {right} of a positive element has sign {sign}"
                    )],
                    elements: words.len(),
                    pairs: pairs_checked,
                });
            }
        }
    }
    Ok(Outcome {
        verdict: Verdict::Pass,
        mode: Mode::Exhaustive,
        witness: vec![a.clone()],
        notes: vec![format!("least positive element: {a}")],
        elements: words.len(),
        pairs: pairs_checked,
    })
}

struct ReportShell<'a> {
    check: &'static str,
    ctx: &'a GroupCtx,
    spec: &'a OrderSpec,
    gens: &'a [Word],
    radius: Option<u32>,
    radii: Option<Vec<u32>>,
    member: Option<String>,
    budget: usize,
    seed: u64,
}

impl ReportShell<'_> {
    fn fill(self, outcome: Outcome, started: Instant) -> VerificationReport {
        VerificationReport {
            check: self.check.to_string(),
            group: self.ctx.descriptor(),
            order: config::spec_to_json(self.spec),
            gens: self.gens.iter().map(Word::to_string).collect(),
            radius: self.radius,
            radii: self.radii,
            member: self.member,
            budget: self.budget,
            seed: self.seed,
            mode: outcome.mode,
            verdict: outcome.verdict,
            witness: outcome.witness.iter().map(Word::to_string).collect(),
            notes: outcome.notes,
            stats: Stats {
                elements: outcome.elements,
                pairs: outcome.pairs,
                wall: started.elapsed(),
            },
        }
    }
}

/// Positive-cone axioms (trichotomy and closure) on the ball.
pub fn check_cone_axioms(
    spec: &OrderSpec,
    ctx: &GroupCtx,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<VerificationReport> {
    spec.validate(ctx)?;
    let started = Instant::now();
    let h = Harness::from_spec(ctx, spec);
    let outcome = cone_engine(&h, gens, radius, budget, seed)?;
    Ok(ReportShell {
        check: "cone",
        ctx,
        spec,
        gens,
        radius: Some(radius),
        radii: None,
        member: None,
        budget,
        seed,
    }
    .fill(outcome, started))
}

/// Conjugation invariance of the sign (the bi-order condition).
pub fn check_conjugation_invariance(
    spec: &OrderSpec,
    ctx: &GroupCtx,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<VerificationReport> {
    spec.validate(ctx)?;
    let started = Instant::now();
    let h = Harness::from_spec(ctx, spec);
    let outcome = conjugation_engine(&h, gens, radius, budget, seed)?;
    Ok(ReportShell {
        check: "biorder",
        ctx,
        spec,
        gens,
        radius: Some(radius),
        radii: None,
        member: None,
        budget,
        seed,
    }
    .fill(outcome, started))
}

/// The ball's least positive element with its discreteness sub-checks, or
/// `None` when the ball holds no positive element.
pub fn min_positive(
    spec: &OrderSpec,
    ctx: &GroupCtx,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<Option<(Word, DiscretenessWitness)>> {
    spec.validate(ctx)?;
    let h = Harness::from_spec(ctx, spec);
    Ok(min_positive_engine(&h, gens, radius, budget, seed)?.least)
}

/// Report-producing form of [`min_positive`].
pub fn check_discreteness(
    spec: &OrderSpec,
    ctx: &GroupCtx,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<VerificationReport> {
    spec.validate(ctx)?;
    let started = Instant::now();
    let h = Harness::from_spec(ctx, spec);
    let outcome = min_positive_engine(&h, gens, radius, budget, seed)?.outcome;
    Ok(ReportShell {
        check: "discrete",
        ctx,
        spec,
        gens,
        radius: Some(radius),
        radii: None,
        member: None,
        budget,
        seed,
    }
    .fill(outcome, started))
}

/// Density evidence: ball-minimal positive elements over increasing radii.
pub fn density_evidence(
    spec: &OrderSpec,
    ctx: &GroupCtx,
    gens: &[Word],
    radii: &[u32],
    budget: usize,
    seed: u64,
) -> Result<VerificationReport> {
    spec.validate(ctx)?;
    let started = Instant::now();
    let h = Harness::from_spec(ctx, spec);
    let outcome = density_engine(&h, gens, radii, budget)?;
    Ok(ReportShell {
        check: "dense",
        ctx,
        spec,
        gens,
        radius: None,
        radii: Some(radii.to_vec()),
        member: None,
        budget,
        seed,
    }
    .fill(outcome, started))
}

/// Convexity of a candidate subgroup on the ball.
pub fn check_convex_subgroup(
    spec: &OrderSpec,
    ctx: &GroupCtx,
    member: &ConvexPredicate,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<VerificationReport> {
    spec.validate(ctx)?;
    let started = Instant::now();
    let h = Harness::from_spec(ctx, spec);
    let outcome = convex_engine(&h, member, gens, radius, budget)?;
    Ok(ReportShell {
        check: "convex",
        ctx,
        spec,
        gens,
        radius: Some(radius),
        radii: None,
        member: Some(member.id()),
        budget,
        seed,
    }
    .fill(outcome, started))
}

/// Conjugation of positive elements by the least positive element and its
/// inverse keeps them positive. Needs a discreteness witness first.
pub fn check_lemma32(
    spec: &OrderSpec,
    ctx: &GroupCtx,
    gens: &[Word],
    radius: u32,
    budget: usize,
    seed: u64,
) -> Result<VerificationReport> {
    spec.validate(ctx)?;
    let started = Instant::now();
    let h = Harness::from_spec(ctx, spec);
    let outcome = lemma32_engine(&h, gens, radius, budget, seed)?;
    Ok(ReportShell {
        check: "lemma32",
        ctx,
        spec,
        gens,
        radius: Some(radius),
        radii: None,
        member: None,
        budget,
        seed,
    }
    .fill(outcome, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_WINDOW;
    use num_traits::Signed;

    const BUDGET: usize = 200_000;

    fn ctx(desc: &str) -> GroupCtx {
        GroupCtx::from_descriptor(desc, DEFAULT_WINDOW).unwrap()
    }

    fn words(items: &[&str]) -> Vec<Word> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn spec(raw: &str, ctx: &GroupCtx) -> OrderSpec {
        config::parse_order_spec(&serde_json::from_str(raw).unwrap(), ctx).unwrap()
    }

    #[test]
    fn klein_cone_passes_exhaustively() {
        let k = ctx("klein");
        let s = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        let report = check_cone_axioms(&s, &k, &words(&["a", "b"]), 4, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.mode, Mode::Exhaustive);
        assert!(report.stats.elements > 0 && report.stats.pairs > 0);
    }

    #[test]
    fn dehornoy_cone_passes() {
        let b3 = ctx("braid:3");
        let s = spec(r#"{"dehornoy": 3}"#, &b3);
        let report = check_cone_axioms(&s, &b3, &words(&["s1", "s2"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn broken_sign_rule_yields_replayable_counterexample() {
        // Deliberately lawless: sign an element of the doubly indexed group
        // by its lowest-index letter instead of its leading letter.
        let g = ctx("eg");
        let broken = |w: &Word| -> Result<Sign> {
            let nf = g.normal_form(w)?;
            Ok(match nf.letters().first() {
                None => Sign::Identity,
                Some((_, e)) => {
                    if e.is_positive() {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    }
                }
            })
        };
        let h = Harness::from_closure(&g, broken);
        let outcome = cone_engine(&h, &words(&["a[0]", "a[1]"]), 3, BUDGET, 0).unwrap();
        assert_eq!(outcome.verdict, Verdict::CounterexampleFound);
        // Replay: the violated axiom must reproduce on the witness words.
        match outcome.witness.as_slice() {
            [w] => {
                let s = broken(w).unwrap();
                let s_inv = broken(&w.invert()).unwrap();
                let is_id = g.equal(w, &Word::identity()).unwrap();
                let consistent = match s {
                    Sign::Identity => is_id,
                    Sign::Positive => !is_id && s_inv == Sign::Negative,
                    Sign::Negative => !is_id && s_inv == Sign::Positive,
                };
                assert!(!consistent, "trichotomy witness does not replay");
            }
            [u, v] => {
                assert_eq!(broken(u).unwrap(), Sign::Positive);
                assert_eq!(broken(v).unwrap(), Sign::Positive);
                let product = u.concat(v).unwrap();
                assert_ne!(broken(&product).unwrap(), Sign::Positive);
            }
            other => panic!("unexpected witness shape {other:?}"),
        }
    }

    #[test]
    fn magnus_biorder_passes_and_klein_fails_with_canonical_pair() {
        let f2 = ctx("free:2");
        let s = spec(r#"{"magnus": {"rank": 2}}"#, &f2);
        let report =
            check_conjugation_invariance(&s, &f2, &words(&["x1", "x2"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);

        let k = ctx("klein");
        let s = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        let report =
            check_conjugation_invariance(&s, &k, &words(&["a", "b"]), 2, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::CounterexampleFound);
        assert_eq!(report.witness, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn klein_min_positive_follows_eps_a() {
        let k = ctx("klein");
        let gens = words(&["a", "b"]);
        let plus = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        let (a, witness) = min_positive(&plus, &k, &gens, 4, BUDGET, 0).unwrap().unwrap();
        assert_eq!(a.to_string(), "a");
        assert!(witness.gap_checked && witness.convexity_checked);
        assert_eq!(witness.radius_verified, 4);

        let minus = spec(r#"{"klein": {"eps_a": -1, "eps_b": 1}}"#, &k);
        let (a, _) = min_positive(&minus, &k, &gens, 4, BUDGET, 0).unwrap().unwrap();
        assert_eq!(a.to_string(), "a^-1");
    }

    #[test]
    fn trivial_ball_has_no_positive_element() {
        let f1 = ctx("free:1");
        let s = spec(r#"{"magnus": {"rank": 1}}"#, &f1);
        assert!(min_positive(&s, &f1, &[], 3, BUDGET, 0).unwrap().is_none());
        let report = check_discreteness(&s, &f1, &[], 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn dehornoy_min_positive_is_the_top_generator() {
        let b3 = ctx("braid:3");
        let s = spec(r#"{"dehornoy": 3}"#, &b3);
        let (a, witness) =
            min_positive(&s, &b3, &words(&["s1", "s2"]), 3, BUDGET, 0).unwrap().unwrap();
        assert_eq!(a.to_string(), "s2");
        assert!(witness.gap_checked && witness.convexity_checked);
    }

    #[test]
    fn kernel_first_min_positive_is_t() {
        let g = ctx("eg:t=shift");
        let s = spec(r#"{"lemma34": {"inner": {"eg": "pgt"}}}"#, &g);
        let (a, witness) =
            min_positive(&s, &g, &words(&["t", "a[0]"]), 3, BUDGET, 0).unwrap().unwrap();
        assert_eq!(a.to_string(), "t");
        assert!(witness.gap_checked && witness.convexity_checked);
    }

    #[test]
    fn density_of_the_shifted_extension_passes_on_the_documented_radii() {
        let j = ctx("j");
        let s = spec(r#"{"quotientfirst": {"kernel": {"eg": "plus"}}}"#, &j);
        let report =
            density_evidence(&s, &j, &words(&["a[0]", "u", "v"]), &[2, 3], BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.witness, vec!["a[0]".to_string(), "a[-1]".to_string()]);
    }

    #[test]
    fn klein_density_is_inconclusive_because_the_minimum_stabilizes() {
        let k = ctx("klein");
        let s = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        let report =
            density_evidence(&s, &k, &words(&["a", "b"]), &[2, 3, 4], BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(report.notes.iter().any(|n| n.contains("stabilizes at a")));
    }

    #[test]
    fn discrete_extension_density_is_inconclusive() {
        let g = ctx("eg:t=shift");
        let s = spec(r#"{"lemma34": {"inner": {"eg": "pgt"}}}"#, &g);
        let report =
            density_evidence(&s, &g, &words(&["t", "a[0]"]), &[2, 3], BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn density_rejects_bad_radii() {
        let k = ctx("klein");
        let s = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        assert!(density_evidence(&s, &k, &words(&["a", "b"]), &[], BUDGET, 0).is_err());
        assert!(density_evidence(&s, &k, &words(&["a", "b"]), &[3, 3], BUDGET, 0).is_err());
        assert!(density_evidence(&s, &k, &words(&["a", "b"]), &[4, 2], BUDGET, 0).is_err());
    }

    #[test]
    fn distinguished_generator_subgroup_is_convex_for_the_discrete_order() {
        let f2 = ctx("free:2");
        let s = spec(r#"{"freediscrete": {"rank": 2, "distinguished": 1}}"#, &f2);
        let member = ConvexPredicate::parse("cyclic:x1").unwrap();
        let report =
            check_convex_subgroup(&s, &f2, &member, &words(&["x1", "x2"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn the_same_subgroup_is_not_convex_for_the_series_order() {
        let f2 = ctx("free:2");
        let s = spec(r#"{"magnus": {"rank": 2}}"#, &f2);
        let member = ConvexPredicate::parse("cyclic:x1").unwrap();
        let report =
            check_convex_subgroup(&s, &f2, &member, &words(&["x1", "x2"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::CounterexampleFound);
        // Replay the triple: outer members, middle outside, strictly ordered.
        let triple: Vec<Word> = report.witness.iter().map(|w| w.parse().unwrap()).collect();
        assert_eq!(triple.len(), 3);
        assert!(member.contains(&f2, &triple[0]).unwrap());
        assert!(!member.contains(&f2, &triple[1]).unwrap());
        assert!(member.contains(&f2, &triple[2]).unwrap());
        assert_eq!(s.compare(&f2, &triple[0], &triple[1]).unwrap(), std::cmp::Ordering::Less);
        assert_eq!(s.compare(&f2, &triple[1], &triple[2]).unwrap(), std::cmp::Ordering::Less);
    }

    #[test]
    fn t_subgroup_is_convex_for_the_kernel_first_order() {
        let g = ctx("eg:t=shift");
        let s = spec(r#"{"lemma34": {"inner": {"eg": "pgt"}}}"#, &g);
        let member = ConvexPredicate::parse("cyclic:t").unwrap();
        let report =
            check_convex_subgroup(&s, &g, &member, &words(&["t", "a[0]"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn lemma32_passes_on_discrete_specs() {
        let k = ctx("klein");
        let s = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        let report = check_lemma32(&s, &k, &words(&["a", "b"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);

        let b3 = ctx("braid:3");
        let s = spec(r#"{"dehornoy": 3}"#, &b3);
        let report = check_lemma32(&s, &b3, &words(&["s1", "s2"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.notes.iter().any(|n| n.contains("s2")));

        let g = ctx("eg:t=shift");
        let s = spec(r#"{"lemma34": {"inner": {"eg": "pgt"}}}"#, &g);
        let report = check_lemma32(&s, &g, &words(&["t", "a[0]"]), 3, BUDGET, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.witness.contains(&"t".to_string()));
    }

    #[test]
    fn lemma32_needs_a_discreteness_witness() {
        let f1 = ctx("free:1");
        let s = spec(r#"{"magnus": {"rank": 1}}"#, &f1);
        assert!(matches!(
            check_lemma32(&s, &f1, &[], 3, BUDGET, 0),
            Err(Error::NoDiscretenessWitness(_))
        ));
    }

    #[test]
    fn reports_serialize_deterministically() {
        let k = ctx("klein");
        let s = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        let gens = words(&["a", "b"]);
        let a = check_cone_axioms(&s, &k, &gens, 3, BUDGET, 0).unwrap();
        let b = check_cone_axioms(&s, &k, &gens, 3, BUDGET, 0).unwrap();
        assert_eq!(serde_json::to_value(&a).unwrap(), serde_json::to_value(&b).unwrap());

        // Sampled mode with a pair budget above the ~100 products the ball
        // enumeration examines but below the ~400 closure pairs is equally
        // reproducible.
        let sampled_1 = check_cone_axioms(&s, &k, &gens, 4, 150, 7).unwrap();
        let sampled_2 = check_cone_axioms(&s, &k, &gens, 4, 150, 7).unwrap();
        assert_eq!(sampled_1.mode, Mode::Sampled);
        assert_eq!(
            serde_json::to_value(&sampled_1).unwrap(),
            serde_json::to_value(&sampled_2).unwrap()
        );
    }

    #[test]
    fn report_text_lists_the_key_fields() {
        let k = ctx("klein");
        let s = spec(r#"{"klein": {"eps_a": 1, "eps_b": 1}}"#, &k);
        let report = check_cone_axioms(&s, &k, &words(&["a", "b"]), 3, BUDGET, 0).unwrap();
        let text = report.to_string();
        assert!(text.contains("check:    cone"));
        assert!(text.contains("verdict:  Pass"));
        assert!(text.contains("mode:     exhaustive"));
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "Pass");
        assert_eq!(json["mode"], "exhaustive");
        assert!(json.get("wall").is_none());
        assert!(json["stats"].get("wall").is_none());
    }
}
