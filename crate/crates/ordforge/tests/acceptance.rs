//! Acceptance suite. Each test covers one criterion end to end through the
//! public library API and prints a single pass line; a failed assertion is
//! the corresponding fail line. Everything is exact or seeded — rerunning
//! reproduces identical results.

use num_bigint::BigInt;
use ordforge::braid::{self, SigmaClass, DEFAULT_STEP_CAP};
use ordforge::groups::{GroupCtx, DEFAULT_BALL_CAP};
use ordforge::orders::config::parse_order_spec;
use ordforge::orders::{identity_precedence, magnus_sign, pgt_build, series_inverse_identity, OrderSpec, Sign};
use ordforge::verify::{self, Mode, Verdict};
use ordforge::word::{Generator, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = DEFAULT_BALL_CAP;
const SEED: u64 = 0;

fn ctx(desc: &str) -> GroupCtx {
    GroupCtx::from_descriptor(desc, 32).unwrap()
}

fn spec(json: &str, ctx: &GroupCtx) -> OrderSpec {
    let value: serde_json::Value = serde_json::from_str(json).unwrap();
    let spec = parse_order_spec(&value, ctx).unwrap();
    spec.validate(ctx).unwrap();
    spec
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn gens(csv: &str) -> Vec<Word> {
    csv.split(',').map(|s| w(s.trim())).collect()
}

fn min_word(spec: &OrderSpec, ctx: &GroupCtx, gens: &[Word], radius: u32) -> Word {
    verify::min_positive(spec, ctx, gens, radius, BUDGET, SEED)
        .unwrap()
        .expect("a positive element exists in the ball")
        .0
}

#[test]
fn criterion_01_klein_bottle_discreteness() {
    let k = ctx("klein");
    let g = gens("a,b");
    for eps_a in [1i8, -1] {
        for eps_b in [1i8, -1] {
            let s = spec(
                &format!(r#"{{"klein":{{"eps_a":{eps_a},"eps_b":{eps_b}}}}}"#),
                &k,
            );
            let cone = verify::check_cone_axioms(&s, &k, &g, 4, BUDGET, SEED).unwrap();
            assert_eq!(cone.verdict, Verdict::Pass, "cone for ({eps_a},{eps_b})");
            assert_eq!(cone.mode, Mode::Exhaustive);
            let expected = if eps_a == 1 { w("a") } else { w("a^-1") };
            for radius in 3..=6 {
                let (least, witness) = verify::min_positive(&s, &k, &g, radius, BUDGET, SEED)
                    .unwrap()
                    .expect("positive elements exist");
                assert!(
                    k.equal(&least, &expected).unwrap(),
                    "min at radius {radius} for ({eps_a},{eps_b}): {least}"
                );
                assert!(witness.gap_checked && witness.convexity_checked);
            }
        }
    }
    println!("criterion 1: pass — all four Klein specs: cone axioms exhaustive at radius 4, least positive element follows eps_a on radii 3-6");
}

#[test]
fn criterion_02_braid_discreteness() {
    let b3 = ctx("braid:3");
    let d3 = spec(r#"{"dehornoy":3}"#, &b3);
    let g3 = gens("s1,s2");
    let cone = verify::check_cone_axioms(&d3, &b3, &g3, 4, BUDGET, SEED).unwrap();
    assert_eq!(cone.verdict, Verdict::Pass);
    assert!(b3.equal(&min_word(&d3, &b3, &g3, 4), &w("s2")).unwrap());

    let b4 = ctx("braid:4");
    let d4 = spec(r#"{"dehornoy":4}"#, &b4);
    let g4 = gens("s1,s2,s3");
    let cone = verify::check_cone_axioms(&d4, &b4, &g4, 3, BUDGET, SEED).unwrap();
    assert_eq!(cone.verdict, Verdict::Pass);
    assert!(b4.equal(&min_word(&d4, &b4, &g4, 3), &w("s3")).unwrap());
    println!("criterion 2: pass — cone axioms hold and the least positive braid is s2 in B3 (radius 4), s3 in B4 (radius 3)");
}

#[test]
fn criterion_03_braid_commutator_density() {
    let b3 = ctx("braid:3");
    let d3 = spec(r#"{"dehornoy":3}"#, &b3);
    let g = gens("s2 s1^-1,s1 s2 s1^-2");
    let report = verify::density_evidence(&d3, &b3, &g, &[2, 3, 4], BUDGET, SEED).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "report: {report}");
    assert_eq!(report.witness.len(), 3);
    println!("criterion 3: pass — least positive element strictly decreases over radii 2, 3, 4 on the commutator generators");
}

#[test]
fn criterion_04_squared_braid_embedding() {
    let f2 = ctx("free:2");
    let s = spec(r#"{"crispparis":{}}"#, &f2);
    let g = gens("x1,x2");
    for radius in 3..=5 {
        assert!(
            f2.equal(&min_word(&s, &f2, &g, radius), &w("x2")).unwrap(),
            "min at radius {radius}"
        );
    }
    let cone = verify::check_cone_axioms(&s, &f2, &g, 4, BUDGET, SEED).unwrap();
    assert_eq!(cone.verdict, Verdict::Pass);
    println!("criterion 4: pass — the pulled-back braid order on the free group has least positive element x2 on radii 3-5 and passes the cone axioms");
}

#[test]
fn criterion_05_central_extension_discreteness() {
    let zf = ctx("zx:free:2");
    let s = spec(r#"{"centralext":{"quotient":{"magnus":{"rank":2}}}}"#, &zf);
    let g = gens("z,x1,x2");
    let cone = verify::check_cone_axioms(&s, &zf, &g, 3, BUDGET, SEED).unwrap();
    assert_eq!(cone.verdict, Verdict::Pass);
    assert_eq!(cone.mode, Mode::Exhaustive);
    let biorder = verify::check_conjugation_invariance(&s, &zf, &g, 3, BUDGET, SEED).unwrap();
    assert_eq!(biorder.verdict, Verdict::Pass);
    assert_eq!(biorder.mode, Mode::Exhaustive);
    let (least, witness) = verify::min_positive(&s, &zf, &g, 3, BUDGET, SEED)
        .unwrap()
        .expect("positive elements exist");
    assert!(zf.equal(&least, &w("z")).unwrap());
    assert!(witness.gap_checked && witness.convexity_checked);
    let discrete = verify::check_discreteness(&s, &zf, &g, 3, BUDGET, SEED).unwrap();
    assert_eq!(discrete.verdict, Verdict::Pass);
    println!("criterion 5: pass — the centrally extended order passes cone and conjugation checks exhaustively at radius 3 with least positive element z, gap and convexity included");
}

#[test]
fn criterion_06_discrete_versus_dense_on_the_free_group() {
    let f2 = ctx("free:2");
    let g = gens("x1,x2");
    let discrete = spec(r#"{"freediscrete":{"rank":2,"distinguished":1}}"#, &f2);
    let cone = verify::check_cone_axioms(&discrete, &f2, &g, 4, BUDGET, SEED).unwrap();
    assert_eq!(cone.verdict, Verdict::Pass);
    assert!(f2.equal(&min_word(&discrete, &f2, &g, 4), &w("x1")).unwrap());

    let member = ordforge::orders::ConvexPredicate::parse("cyclic:x1").unwrap();
    let convex =
        verify::check_convex_subgroup(&discrete, &f2, &member, &g, 4, BUDGET, SEED).unwrap();
    assert_eq!(convex.verdict, Verdict::Pass);

    let dense = spec(r#"{"magnus":{"rank":2}}"#, &f2);
    let broken = verify::check_convex_subgroup(&dense, &f2, &member, &g, 4, BUDGET, SEED).unwrap();
    assert_eq!(broken.verdict, Verdict::CounterexampleFound);
    assert_eq!(broken.witness.len(), 3, "a betweenness triple: {broken}");
    println!("criterion 6: pass — the rearranged discrete order makes <x1> convex with least positive element x1, while the plain series order fails the same convexity check");
}

#[test]
fn criterion_07_shifted_extension_orders() {
    // The shift action: offset 1 and a constant +1 orientation sign.
    let shift = ctx("eg:t=shift");
    let GroupCtx::SemidirectByT { action, .. } = &shift else {
        panic!("descriptor gave the wrong context");
    };
    let data = pgt_build(action, 8).unwrap();
    assert_eq!(data.offset(), 1);
    for i in -8..=8 {
        assert_eq!(data.eps(i).unwrap(), 1);
    }

    // Sampled t-invariance of the induced order.
    let s = spec(r#"{"lemma34":{"inner":{"eg":"pgt"}}}"#, &shift);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut letters: Vec<Generator> = (-2..=2).map(Generator::Eg).collect();
    letters.push(Generator::Ext(ordforge::word::ExtLetter::T));
    let t = Word::gen(Generator::Ext(ordforge::word::ExtLetter::T));
    for _ in 0..200 {
        let len = rng.gen_range(0..=6);
        let word = Word::from_letters((0..len).map(|_| {
            let g = letters[rng.gen_range(0..letters.len())];
            let e = if rng.gen::<bool>() { 1 } else { -1 };
            (g, BigInt::from(e))
        }));
        let conjugated = t.concat(&word).unwrap().concat(&t.invert()).unwrap();
        assert_eq!(
            s.sign(&shift, &conjugated).unwrap(),
            s.sign(&shift, &word).unwrap(),
            "t moved the sign of {word}"
        );
    }

    // The generated subgroup of a[0] and t: cone axioms, least positive
    // element t, and conjugation by it keeps positives positive.
    let g = gens("a[0],t");
    let cone = verify::check_cone_axioms(&s, &shift, &g, 4, BUDGET, SEED).unwrap();
    assert_eq!(cone.verdict, Verdict::Pass);
    assert!(shift.equal(&min_word(&s, &shift, &g, 4), &w("t")).unwrap());
    let conjugation = verify::check_lemma32(&s, &shift, &g, 4, BUDGET, SEED).unwrap();
    assert_eq!(conjugation.verdict, Verdict::Pass);

    // The index-inverting variant: alternating signs, same least element.
    let flipped = ctx("eg:t=shiftinv");
    let GroupCtx::SemidirectByT { action, .. } = &flipped else {
        panic!("descriptor gave the wrong context");
    };
    let data = pgt_build(action, 8).unwrap();
    for i in -8..8 {
        assert_eq!(
            data.eps(i).unwrap(),
            -data.eps(i + 1).unwrap(),
            "signs should alternate at {i}"
        );
    }
    let s2 = spec(r#"{"lemma34":{"inner":{"eg":"pgt"}}}"#, &flipped);
    assert!(flipped.equal(&min_word(&s2, &flipped, &g, 4), &w("t")).unwrap());
    println!("criterion 7: pass — shift action gives offset 1 with constant +1 signs, the induced order is t-invariant on samples, least positive element t with the conjugation check passing; the inverting action alternates signs and keeps t least");
}

#[test]
fn criterion_08_no_discrete_order_evidence() {
    let order = r#"{"quotientfirst":{"kernel":{"eg":"plus"}}}"#;
    for (group, generators) in [("gu", "a[0],a[-1] a[0]^2,u"), ("j", "a[0],u,v")] {
        let c = ctx(group);
        let s = spec(order, &c);
        let g = gens(generators);
        let cone = verify::check_cone_axioms(&s, &c, &g, 3, BUDGET, SEED).unwrap();
        assert_eq!(cone.verdict, Verdict::Pass, "cone on {group}");
        let dense = verify::density_evidence(&s, &c, &g, &[2, 4], BUDGET, SEED).unwrap();
        assert_eq!(dense.verdict, Verdict::Pass, "density on {group}: {dense}");
    }
    println!("criterion 8: pass — the quotient-first right orders on both index-inverting extensions pass the cone axioms at radius 3 and show strictly decreasing minimal positives from radius 2 to 4");
}

#[test]
fn criterion_09_handle_reduction_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
    for trial in 0..10_000u32 {
        let strands = if trial % 2 == 0 { 3 } else { 4 };
        let len = rng.gen_range(0..=12usize);
        let word = Word::from_letters((0..len).map(|_| {
            let index = rng.gen_range(1..strands);
            let exp = if rng.gen::<bool>() { 1 } else { -1 };
            (Generator::Braid(index), BigInt::from(exp))
        }));
        let reduced = braid::handle_reduce(strands, &word, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(
            braid::permutation(strands, &word).unwrap(),
            braid::permutation(strands, &reduced).unwrap(),
            "permutation changed for {word}"
        );
        assert_eq!(
            braid::exponent_sum(&word).unwrap(),
            braid::exponent_sum(&reduced).unwrap(),
            "exponent sum changed for {word}"
        );
        let trivial = word.concat(&word.invert()).unwrap();
        assert_eq!(
            braid::sigma_class(strands, &trivial, DEFAULT_STEP_CAP).unwrap(),
            SigmaClass::Trivial,
            "w * w^-1 not trivial for {word}"
        );
    }

    for strands in [3u32, 4] {
        for i in 1..strands - 1 {
            let left = w(&format!("s{i} s{} s{i}", i + 1));
            let right = w(&format!("s{} s{i} s{}", i + 1, i + 1));
            assert!(braid::braid_equal(strands, &left, &right, DEFAULT_STEP_CAP).unwrap());
        }
        let twist = braid::full_twist(strands).unwrap();
        for i in 1..strands {
            let s = Word::gen(Generator::Braid(i));
            assert!(
                braid::braid_equal(
                    strands,
                    &twist.concat(&s).unwrap(),
                    &s.concat(&twist).unwrap(),
                    DEFAULT_STEP_CAP
                )
                .unwrap(),
                "full twist does not commute with s{i} on {strands} strands"
            );
        }
    }
    println!("criterion 9: pass — 10000 seeded reductions preserve permutation and exponent sum with trivial w*w^-1 classes; the braid relation and full-twist centrality hold in B3 and B4");
}

#[test]
fn criterion_10_series_expansion_soundness() {
    let precedence = identity_precedence(2);
    let alphabet = [
        (Generator::Free(1), 1i64),
        (Generator::Free(1), -1),
        (Generator::Free(2), 1),
        (Generator::Free(2), -1),
    ];
    let conjugators = [w("x1"), w("x1^-1"), w("x2"), w("x2^-1")];
    let mut count = 0usize;
    for len in 0..=6usize {
        let mut odometer = vec![0usize; len];
        loop {
            let word = Word::from_letters(
                odometer
                    .iter()
                    .map(|&slot| (alphabet[slot].0, BigInt::from(alphabet[slot].1))),
            );
            count += 1;

            let sign = magnus_sign(2, &precedence, &word).unwrap();
            assert_eq!(
                sign == Sign::Identity,
                word.free_reduce().is_empty(),
                "identity detection failed on {word}"
            );
            assert_eq!(
                magnus_sign(2, &precedence, &word.invert()).unwrap(),
                sign.flip(),
                "antisymmetry failed on {word}"
            );
            for c in &conjugators {
                let conjugated = c.concat(&word).unwrap().concat(&c.invert()).unwrap();
                assert_eq!(
                    magnus_sign(2, &precedence, &conjugated).unwrap(),
                    sign,
                    "conjugation by {c} moved the sign of {word}"
                );
            }
            assert!(
                series_inverse_identity(2, &word, 6).unwrap(),
                "expansion of {word} times its inverse is not 1"
            );

            // Advance the base-4 odometer; carry past the top ends this length.
            let mut pos = 0;
            loop {
                if pos == len {
                    break;
                }
                odometer[pos] += 1;
                if odometer[pos] < alphabet.len() {
                    break;
                }
                odometer[pos] = 0;
                pos += 1;
            }
            if pos == len {
                break;
            }
        }
    }
    assert_eq!(count, 5461, "enumeration covered all words of length <= 6");
    println!("criterion 10: pass — over all 5461 free words of length <= 6 the series sign vanishes exactly on trivial words, antisymmetry and generator conjugation invariance hold, and every expansion times its inverse expansion is 1");
}
