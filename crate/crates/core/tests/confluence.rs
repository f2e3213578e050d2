use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use w22_core::pbw::{Orderer, RewriteStrategy};
use w22_core::{Generator, Rational, Scalar, UEElement};

fn random_generator(rng: &mut impl Rng, max_index: i64) -> Generator {
    let k = rng.gen_range(-max_index..=max_index);
    match rng.gen_range(0..10) {
        0 => Generator::C,
        1 => Generator::C1,
        2..=5 => Generator::I(k),
        _ => Generator::L(k),
    }
}

fn random_word(rng: &mut impl Rng) -> Vec<Generator> {
    let len = rng.gen_range(0..=5);
    (0..len).map(|_| random_generator(rng, 4)).collect()
}

#[test]
fn strategies_agree_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let left = Orderer::with_strategy(RewriteStrategy::Leftmost);
    let right = Orderer::with_strategy(RewriteStrategy::Rightmost);
    for _ in 0..500 {
        let word = random_word(&mut rng);
        let a: UEElement<Rational> = left.normal_order(&word).unwrap();
        let b: UEElement<Rational> = right.normal_order(&word).unwrap();
        assert_eq!(a, b, "word {word:?}");
    }
}

#[test]
fn normal_forms_are_sorted_and_fixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let orderer = Orderer::default();
    for _ in 0..200 {
        let word = random_word(&mut rng);
        let nf: UEElement<Rational> = orderer.normal_order(&word).unwrap();
        assert!(nf.degree() <= word.len());
        for (m, _) in nf.terms() {
            assert!(m.generators().windows(2).all(|w| w[0] <= w[1]), "{m}");
            let mut single = UEElement::zero();
            single.add_term(m.clone(), &Scalar::one());
            let again: UEElement<Rational> = orderer.normal_order(m.generators()).unwrap();
            assert_eq!(again, single);
        }
    }
}
