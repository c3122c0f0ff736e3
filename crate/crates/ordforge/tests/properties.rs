//! Randomized invariants: word algebra laws, normal forms as congruences,
//! braid reduction conservation, and the order axioms on sampled elements.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use ordforge::braid::{self, SigmaClass, DEFAULT_STEP_CAP};
use ordforge::groups::GroupCtx;
use ordforge::orders::{identity_precedence, magnus_sign, OrderSpec, Sign};
use ordforge::word::{ExtLetter, Generator, KleinLetter, Word};
use proptest::prelude::*;

/// Raw picks: positions into an alphabet plus small nonzero exponents.
type Picks = Vec<(usize, i64)>;

fn picks(max_len: usize) -> impl Strategy<Value = Picks> {
    prop::collection::vec(
        (
            0usize..16,
            (-2i64..=2).prop_filter("nonzero exponent", |e| *e != 0),
        ),
        0..=max_len,
    )
}

fn build(alphabet: &[Generator], picks: &Picks) -> Word {
    Word::from_letters(
        picks
            .iter()
            .map(|(slot, exp)| (alphabet[slot % alphabet.len()], BigInt::from(*exp))),
    )
}

fn eg_alphabet() -> Vec<Generator> {
    (-3..=3).map(Generator::Eg).collect()
}

/// The sampled (group, order, alphabet) table the order-law tests run over.
fn order_cases() -> &'static [(GroupCtx, OrderSpec, Vec<Generator>)] {
    static CASES: OnceLock<Vec<(GroupCtx, OrderSpec, Vec<Generator>)>> = OnceLock::new();
    CASES.get_or_init(|| {
        let parse = |group: &str, order: &str| {
            let ctx = GroupCtx::from_descriptor(group, 32).unwrap();
            let value: serde_json::Value = serde_json::from_str(order).unwrap();
            let spec = ordforge::orders::config::parse_order_spec(&value, &ctx).unwrap();
            spec.validate(&ctx).unwrap();
            (ctx, spec)
        };
        let mut cases = Vec::new();
        let (ctx, spec) = parse("klein", r#"{"klein":{"eps_a":1,"eps_b":-1}}"#);
        cases.push((ctx, spec, vec![Generator::Klein(KleinLetter::A), Generator::Klein(KleinLetter::B)]));
        let (ctx, spec) = parse("eg", r#"{"eg":"plus"}"#);
        cases.push((ctx, spec, eg_alphabet()));
        let (ctx, spec) = parse("braid:3", r#"{"dehornoy":3}"#);
        cases.push((ctx, spec, vec![Generator::Braid(1), Generator::Braid(2)]));
        let (ctx, spec) = parse("free:2", r#"{"magnus":{"rank":2}}"#);
        cases.push((ctx, spec, vec![Generator::Free(1), Generator::Free(2)]));
        let (ctx, spec) = parse(
            "free:2",
            r#"{"freediscrete":{"rank":2,"distinguished":1}}"#,
        );
        cases.push((ctx, spec, vec![Generator::Free(1), Generator::Free(2)]));
        let (ctx, spec) = parse("eg:t=shift", r#"{"lemma34":{"inner":{"eg":"pgt"}}}"#);
        let mut letters = eg_alphabet();
        letters.push(Generator::Ext(ExtLetter::T));
        cases.push((ctx, spec, letters));
        let (ctx, spec) = parse("j", r#"{"quotientfirst":{"kernel":{"eg":"plus"}}}"#);
        let mut letters = eg_alphabet();
        letters.push(Generator::Ext(ExtLetter::U));
        letters.push(Generator::Ext(ExtLetter::V));
        cases.push((ctx, spec, letters));
        cases
    })
}

/// Normal-form group contexts paired with sampling alphabets.
fn nf_cases() -> &'static [(GroupCtx, Vec<Generator>)] {
    static CASES: OnceLock<Vec<(GroupCtx, Vec<Generator>)>> = OnceLock::new();
    CASES.get_or_init(|| {
        let ctx = |d: &str| GroupCtx::from_descriptor(d, 32).unwrap();
        let with_ext = |mut base: Vec<Generator>, letters: &[ExtLetter]| {
            base.extend(letters.iter().map(|c| Generator::Ext(*c)));
            base
        };
        vec![
            (ctx("klein"), vec![Generator::Klein(KleinLetter::A), Generator::Klein(KleinLetter::B)]),
            (ctx("eg"), eg_alphabet()),
            (ctx("free:2"), vec![Generator::Free(1), Generator::Free(2)]),
            (ctx("eg:t=shift"), with_ext(eg_alphabet(), &[ExtLetter::T])),
            (ctx("eg:t=shiftinv"), with_ext(eg_alphabet(), &[ExtLetter::T])),
            (ctx("gu"), with_ext(eg_alphabet(), &[ExtLetter::U])),
            (ctx("j"), with_ext(eg_alphabet(), &[ExtLetter::U, ExtLetter::V])),
            (
                ctx("zx:free:2"),
                with_ext(vec![Generator::Free(1), Generator::Free(2)], &[ExtLetter::Z]),
            ),
        ]
    })
}

proptest! {
    /// Concatenation is associative and the empty word is neutral.
    #[test]
    fn concatenation_is_an_associative_monoid(
        a in picks(6), b in picks(6), c in picks(6)
    ) {
        let letters = eg_alphabet();
        let (u, v, w) = (build(&letters, &a), build(&letters, &b), build(&letters, &c));
        let left = u.concat(&v).unwrap().concat(&w).unwrap();
        let right = u.concat(&v.concat(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = Word::identity();
        prop_assert_eq!(one.concat(&u).unwrap(), u.clone());
        prop_assert_eq!(u.concat(&one).unwrap(), u);
    }

    /// Inversion is an anti-homomorphism and cancels its word.
    #[test]
    fn inversion_cancels_and_reverses(a in picks(6), b in picks(6)) {
        let letters = eg_alphabet();
        let (u, v) = (build(&letters, &a), build(&letters, &b));
        prop_assert!(u.concat(&u.invert()).unwrap().is_identity());
        prop_assert!(u.invert().concat(&u).unwrap().is_identity());
        let anti = u.concat(&v).unwrap().invert();
        prop_assert_eq!(anti, v.invert().concat(&u.invert()).unwrap());
    }

    /// Printing and re-parsing is the identity on words.
    #[test]
    fn display_and_parse_round_trip(a in picks(8)) {
        let letters = eg_alphabet();
        let u = build(&letters, &a);
        let reparsed: Word = u.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// In every group with a normal form, nf is idempotent and is a
    /// congruence: nf(u v) = nf(nf(u) nf(v)).
    #[test]
    fn normal_forms_are_idempotent_congruences(
        case in 0usize..8, a in picks(5), b in picks(5)
    ) {
        let (ctx, letters) = &nf_cases()[case];
        let (u, v) = (build(letters, &a), build(letters, &b));
        let nf_u = ctx.normal_form(&u).unwrap();
        prop_assert_eq!(ctx.normal_form(&nf_u).unwrap(), nf_u.clone());
        let product = ctx.normal_form(&u.concat(&v).unwrap()).unwrap();
        let via_nf = ctx
            .normal_form(&nf_u.concat(&ctx.normal_form(&v).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(product, via_nf);
    }

    /// The doubly indexed normal form has strictly increasing indices and
    /// preserves each index's exponent sum modulo 2.
    #[test]
    fn eg_normal_form_shape_and_parity(a in picks(6)) {
        let ctx = GroupCtx::from_descriptor("eg", 32).unwrap();
        let u = build(&eg_alphabet(), &a);
        let nf = ctx.normal_form(&u).unwrap();
        let indices: Vec<i64> = nf
            .letters()
            .iter()
            .map(|(g, _)| match g {
                Generator::Eg(i) => *i,
                other => panic!("non-indexed letter {other:?} in nf"),
            })
            .collect();
        prop_assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices {indices:?}");
        for i in -3..=3i64 {
            let total = |w: &Word| -> BigInt {
                w.letters()
                    .iter()
                    .filter(|(g, _)| *g == Generator::Eg(i))
                    .map(|(_, e)| e.clone())
                    .sum()
            };
            let before = total(&u) % 2;
            let after = total(&nf) % 2;
            prop_assert_eq!((before - after) % 2, BigInt::zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Handle reduction keeps the braid: same permutation, same exponent
    /// sum, equal as a group element, and the sigma class flips under
    /// inversion while products with the inverse are trivial.
    #[test]
    fn braid_reduction_conserves_invariants(a in picks(6)) {
        let alphabet = [Generator::Braid(1), Generator::Braid(2), Generator::Braid(3)];
        let w = build(&alphabet, &a);
        let reduced = braid::handle_reduce(4, &w, DEFAULT_STEP_CAP).unwrap();
        prop_assert_eq!(
            braid::permutation(4, &w).unwrap(),
            braid::permutation(4, &reduced).unwrap()
        );
        prop_assert_eq!(
            braid::exponent_sum(&w).unwrap(),
            braid::exponent_sum(&reduced).unwrap()
        );
        prop_assert!(braid::braid_equal(4, &w, &reduced, DEFAULT_STEP_CAP).unwrap());

        let trivial = w.concat(&w.invert()).unwrap();
        prop_assert_eq!(
            braid::sigma_class(4, &trivial, DEFAULT_STEP_CAP).unwrap(),
            SigmaClass::Trivial
        );
        prop_assert_eq!(
            braid::sigma_class(4, &w.invert(), DEFAULT_STEP_CAP).unwrap(),
            braid::sigma_class(4, &w, DEFAULT_STEP_CAP).unwrap().flip()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Order laws on sampled elements of every shipped order: the sign
    /// flips under inversion, comparison is antisymmetric, and comparisons
    /// are invariant under right multiplication.
    #[test]
    fn order_laws_hold_on_sampled_words(
        case in 0usize..7, a in picks(5), b in picks(5), c in picks(4)
    ) {
        let (ctx, spec, letters) = &order_cases()[case];
        let (f, g, h) = (build(letters, &a), build(letters, &b), build(letters, &c));

        let sign = spec.sign(ctx, &f).unwrap();
        prop_assert_eq!(spec.sign(ctx, &f.invert()).unwrap(), sign.flip());
        prop_assert_eq!(
            sign == Sign::Identity,
            ctx.equal(&f, &Word::identity()).unwrap()
        );

        let fg = spec.compare(ctx, &f, &g).unwrap();
        prop_assert_eq!(spec.compare(ctx, &g, &f).unwrap(), fg.reverse());
        prop_assert_eq!(
            spec.compare(ctx, &f.concat(&h).unwrap(), &g.concat(&h).unwrap()).unwrap(),
            fg
        );
        prop_assert_eq!(fg == Ordering::Equal, ctx.equal(&f, &g).unwrap());
    }

    /// The shifted-extension orders do not see conjugation by t.
    #[test]
    fn kernel_first_orders_are_t_invariant(action in 0usize..2, a in picks(5)) {
        let group = ["eg:t=shift", "eg:t=shiftinv"][action];
        let ctx = GroupCtx::from_descriptor(group, 32).unwrap();
        let value: serde_json::Value =
            serde_json::from_str(r#"{"lemma34":{"inner":{"eg":"pgt"}}}"#).unwrap();
        let spec = ordforge::orders::config::parse_order_spec(&value, &ctx).unwrap();
        let mut letters = eg_alphabet();
        letters.push(Generator::Ext(ExtLetter::T));
        let w = build(&letters, &a);
        let t = Word::gen(Generator::Ext(ExtLetter::T));
        let conjugated = t.concat(&w).unwrap().concat(&t.invert()).unwrap();
        prop_assert_eq!(
            spec.sign(&ctx, &conjugated).unwrap(),
            spec.sign(&ctx, &w).unwrap()
        );
    }

    /// The series expansion separates the identity: the sign is Identity
    /// exactly on words that reduce to the empty word.
    #[test]
    fn series_sign_vanishes_only_on_trivial_words(a in picks(6)) {
        let letters = [Generator::Free(1), Generator::Free(2)];
        let w = build(&letters, &a);
        let sign = magnus_sign(2, &identity_precedence(2), &w).unwrap();
        prop_assert_eq!(sign == Sign::Identity, w.free_reduce().is_empty());
    }
}
