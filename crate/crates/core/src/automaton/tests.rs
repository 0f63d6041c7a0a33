use proptest::prelude::*;

use crate::testutil::arb_dfa;

use super::*;

fn sigma(n: usize) -> Alphabet {
    Alphabet::prefix(n).unwrap()
}

/// Σ* w Σ* as an NFA.
fn substring_nfa(a: &Alphabet, w: &str) -> Nfa {
    let mut nfa = Nfa::new(a.clone());
    let syms = a.encode(w).unwrap();
    let first = nfa.add_state();
    nfa.add_start(first);
    nfa.add_arcs_where(first, first, |_| true);
    let mut q = first;
    for s in syms {
        let t = nfa.add_state();
        nfa.add_arc(q, s, t);
        q = t;
    }
    nfa.add_arcs_where(q, q, |_| true);
    nfa.set_final(q, true);
    nfa
}

/// Σ* a1 Σ* a2 ... Σ* as an NFA.
fn subsequence_nfa(a: &Alphabet, w: &str) -> Nfa {
    let mut nfa = Nfa::new(a.clone());
    let mut q = nfa.add_state();
    nfa.add_start(q);
    nfa.add_arcs_where(q, q, |_| true);
    for s in a.encode(w).unwrap() {
        let t = nfa.add_state();
        nfa.add_arc(q, s, t);
        nfa.add_arcs_where(t, t, |_| true);
        q = t;
    }
    nfa.set_final(q, true);
    nfa
}

fn all_words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    out
}

fn has_aa() -> Dfa {
    substring_nfa(&sigma(5), "aa").to_dfa()
}

#[test]
fn has_aa_shape_and_membership() {
    let d = has_aa();
    assert_eq!(d.num_states(), 3);
    assert_eq!(d.finals().count(), 1);
    assert!(d.accepts("caab").unwrap());
    assert!(!d.accepts("aba").unwrap());
    assert!(!d.accepts("").unwrap());
    assert!(matches!(d.accepts("az"), Err(Error::UnknownSymbol('z'))));
}

#[test]
fn universal_is_one_final_state() {
    let a = sigma(4);
    let mut nfa = Nfa::new(a.clone());
    let q = nfa.add_state();
    let r = nfa.add_state();
    nfa.add_start(q);
    nfa.add_epsilon(q, r);
    nfa.add_arcs_where(r, q, |_| true);
    nfa.set_final(r, true);
    let d = nfa.to_dfa();
    assert_eq!(d, Dfa::universal(&a));
    assert_eq!(d.num_states(), 1);
    assert!(d.is_final(0));
}

#[test]
fn subseq_aa_three_states() {
    let d = subsequence_nfa(&sigma(5), "aa").to_dfa();
    assert_eq!(d.num_states(), 3);
    assert!(d.accepts("cacac").unwrap());
    assert!(!d.accepts("cacbc").unwrap());
}

#[test]
fn empty_language_canonical() {
    let a = sigma(3);
    let e = Dfa::empty(&a);
    assert_eq!(e.num_states(), 1);
    assert_eq!(e.completed_size(), 1);
    assert_eq!(Dfa::universal(&a).complement(), e);
    assert_eq!(has_aa().completed_size(), 3);
    assert!(e.is_empty_language());
}

#[test]
fn intersection_with_sigma2_is_aa() {
    let a = sigma(5);
    let got = has_aa().intersection(&Dfa::sigma_length(&a, 2)).unwrap();
    // Oracle: enumerate all 25 strings of length 2 and keep those with "aa".
    let words: Vec<String> = all_words(5, 2)
        .iter()
        .map(|w| a.decode(w))
        .filter(|w| w.contains("aa"))
        .collect();
    assert_eq!(words, vec!["aa".to_string()]);
    let expected = Dfa::from_words(&a, words.iter().map(String::as_str)).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn boolean_laws() {
    let a = sigma(5);
    let d = has_aa();
    assert!(d.complement().complement().language_equal(&d).unwrap());
    assert_eq!(d.union(&d.complement()).unwrap(), Dfa::universal(&a));
    assert!(d.language_equal(&d.minimize()).unwrap());
    assert!(Dfa::empty(&a).language_equal(&Dfa::universal(&a).complement()).unwrap());
    assert!(matches!(d.union(&Dfa::universal(&sigma(4))), Err(Error::AlphabetMismatch)));
}

#[test]
fn concat_examples() {
    let a = sigma(4);
    let u = Dfa::universal(&a);
    assert_eq!(u.concat(&u).unwrap(), u);
    assert!(Dfa::empty(&a).concat(&has_aa_over(&a)).unwrap().is_empty_language());

    // (Σ* a) · ¬C(bc)
    let ends_a = {
        let mut nfa = Nfa::new(a.clone());
        let q = nfa.add_state();
        let f = nfa.add_state();
        nfa.add_start(q);
        nfa.add_arcs_where(q, q, |_| true);
        nfa.add_arc(q, 0, f);
        nfa.set_final(f, true);
        nfa.to_dfa()
    };
    let no_bc = substring_nfa(&a, "bc").to_dfa().complement();
    let sf = ends_a.concat(&no_bc).unwrap();
    // Oracle: try every split x = uv with u ending in a and v free of "bc".
    let oracle = |x: &str| {
        (1..=x.len()).any(|i| x[..i].ends_with('a') && !x[i..].contains("bc"))
    };
    assert!(sf.accepts("a").unwrap());
    for len in 0..=6 {
        for w in all_words(4, len) {
            let s = a.decode(&w);
            assert_eq!(sf.accepts(&s).unwrap(), oracle(&s), "{s}");
        }
    }
    assert!(!sf.accepts("abc").unwrap());
    assert!(sf.accepts("abca").unwrap());
}

fn has_aa_over(a: &Alphabet) -> Dfa {
    substring_nfa(a, "aa").to_dfa()
}

#[test]
fn count_length_has_aa() {
    let a = sigma(5);
    let d = has_aa();
    // Oracle: enumerate all 125 strings of length 3.
    let brute = all_words(5, 3)
        .iter()
        .filter(|w| a.decode(w).contains("aa"))
        .count();
    assert_eq!(brute, 9);
    assert_eq!(d.count_length(3), BigUint::from(9u32));
    assert_eq!(Dfa::universal(&sigma(4)).count_length(2), BigUint::from(16u32));
    assert_eq!(Dfa::empty(&a).count_length(5), BigUint::zero());
    // Beyond 64 bits: 64^29.
    let big = Dfa::universal(&sigma(64)).count_length(29);
    assert_eq!(big, BigUint::from(64u32).pow(29));
}

#[test]
fn separating_word_has_aa_vs_subseq_aa() {
    let a = sigma(5);
    let has_aa = has_aa();
    let f3 = subsequence_nfa(&a, "aa").to_dfa();
    assert!(!has_aa.language_equal(&f3).unwrap());
    assert_eq!(has_aa.separating_word(&f3).unwrap().as_deref(), Some("aba"));
}

#[test]
fn att_round_trip() {
    let d = has_aa();
    let text = d.to_att();
    let first: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    assert_eq!(first, ["0", "1", "a"]);
    let syms = symbol_table(d.alphabet());
    assert!(syms.starts_with("<eps>\t0\na\t1\n"));
    let alpha = parse_symbol_table(&syms).unwrap();
    assert_eq!(&alpha, d.alphabet());
    let back = read_att_acceptor(&text, Some(&alpha)).unwrap().to_dfa();
    assert_eq!(back, d);
    let inferred = read_att_acceptor(&text, None).unwrap().to_dfa();
    assert_eq!(inferred, d);
    let empty = Dfa::empty(&alpha);
    assert_eq!(read_att_acceptor(&empty.to_att(), Some(&alpha)).unwrap().to_dfa(), empty);
    assert!(read_att_acceptor("0\t1\tab\n", None).is_err());
}

proptest! {
    #[test]
    fn minimize_idempotent(d in arb_dfa(6, 3)) {
        let m = d.minimize();
        prop_assert_eq!(m.minimize(), m.clone());
        prop_assert!(m.language_equal(&d).unwrap());
    }

    #[test]
    fn de_morgan(a in arb_dfa(5, 2), b in arb_dfa(5, 2)) {
        prop_assume!(a.alphabet() == b.alphabet());
        let lhs = a.union(&b).unwrap().complement();
        let rhs = a.complement().intersection(&b.complement()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn count_matches_brute_force(d in arb_dfa(5, 3), len in 0usize..=6) {
        let k = d.alphabet().len();
        let brute = all_words(k, len).iter().filter(|w| d.accepts_indices(w)).count();
        prop_assert_eq!(d.count_length(len), BigUint::from(brute));
        prop_assert_eq!(d.minimize().count_length(len), BigUint::from(brute));
    }

    #[test]
    fn determinized_agrees_with_nfa(
        n in 1usize..6,
        arcs in proptest::collection::vec((0u32..6, 0usize..3, 0u32..6, any::<bool>()), 0..20),
        finals in proptest::collection::vec(any::<bool>(), 6),
        words in proptest::collection::vec(proptest::collection::vec(0usize..3, 0..8), 40),
    ) {
        let mut nfa = Nfa::new(Alphabet::prefix(3).unwrap());
        for i in 0..n { let q = nfa.add_state(); nfa.set_final(q, finals[i]); }
        nfa.add_start(0);
        for (p, s, q, eps) in arcs {
            let (p, q) = (p % n as u32, q % n as u32);
            if eps { nfa.add_epsilon(p, q) } else { nfa.add_arc(p, s, q) }
        }
        let d = nfa.to_dfa();
        for w in &words {
            prop_assert_eq!(d.accepts_indices(w), nfa.accepts_indices(w));
        }
    }
}
