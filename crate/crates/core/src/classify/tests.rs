use std::collections::HashSet;

use proptest::prelude::*;

use super::*;
use crate::fst::{insdel_transducer, InsDel};
use crate::library;
use crate::testutil::arb_dfa;
use crate::{compile_expr, parse_expr, Alphabet, Dfa};

fn lang(src: &str, k: usize) -> Dfa {
    compile_expr(&parse_expr(src).unwrap(), &Alphabet::prefix(k).unwrap()).unwrap()
}

fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..k {
                let mut v: Vec<usize> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Suffix-substitution closure for factors of length `k - 1`, checked on
/// all accepted words up to `max_len`.
fn brute_ssc(d: &Dfa, k: usize, max_len: usize) -> bool {
    let members: Vec<Vec<usize>> = words(d.alphabet().len(), max_len)
        .into_iter()
        .filter(|w| d.accepts_indices(w))
        .collect();
    let m = k - 1;
    for w1 in &members {
        for w2 in &members {
            for i in 0..=w1.len().saturating_sub(m) {
                if i + m > w1.len() {
                    continue;
                }
                let x = &w1[i..i + m];
                for j in 0..=w2.len().saturating_sub(m) {
                    if j + m > w2.len() || &w2[j..j + m] != x {
                        continue;
                    }
                    let mut merged = w1[..i + m].to_vec();
                    merged.extend_from_slice(&w2[j + m..]);
                    if !d.accepts_indices(&merged) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Neutrality through the insertion and deletion transducers.
fn neutral_by_transducers(d: &Dfa) -> Vec<char> {
    let m = d.minimize();
    m.alphabet()
        .symbols()
        .iter()
        .copied()
        .filter(|&c| {
            [InsDel::Insert, InsDel::Delete].into_iter().all(|kind| {
                let t = insdel_transducer(kind, c, m.alphabet()).unwrap();
                t.apply(&m, Direction::Image).unwrap().is_subset_of(&m).unwrap()
            })
        })
        .collect()
}

/// Fixpoint of single-symbol deletion images.
fn closed_by_transducers(d: &Dfa) -> bool {
    let m = d.minimize();
    m.alphabet().symbols().iter().all(|&c| {
        let t = insdel_transducer(InsDel::Delete, c, m.alphabet()).unwrap();
        t.apply(&m, Direction::Image).unwrap().is_subset_of(&m).unwrap()
    })
}

#[test]
fn strictly_local_examples() {
    assert!(is_strictly_local(&lang(r#"!"aa""#, 2)));
    assert!(!is_strictly_local(&lang(r#""aa""#, 2)));
    assert!(!is_strictly_local(&lang(r#"mod("a", 2, 0)"#, 2)));
    let a = Alphabet::prefix(3).unwrap();
    assert!(is_strictly_local(&Dfa::empty(&a)));
    assert!(is_strictly_local(&Dfa::universal(&a)));
    assert!(is_strictly_local(&lang(r#"^"ab""#, 3)));
}

#[test]
fn subsequence_closure_examples() {
    assert!(is_subsequence_closed(&lang(r#"!("a" < "a")"#, 3)));
    assert!(!is_subsequence_closed(&lang(r#""aa""#, 3)));
    assert!(is_subsequence_closed(&Dfa::universal(&Alphabet::prefix(2).unwrap())));
}

#[test]
fn neutral_symbol_examples() {
    assert_eq!(neutral_symbols(&lang(r#"[T:ae]"aa""#, 5)), vec!['b', 'c', 'd']);
    assert!(neutral_symbols(&lang(r#""aa""#, 5)).is_empty());
    assert_eq!(neutral_symbols(&Dfa::universal(&Alphabet::prefix(3).unwrap())), vec!['a', 'b', 'c']);
}

#[test]
fn decider_examples() {
    let ltt = lang(r#"atleast(2, "aa")"#, 2);
    assert!(decide_class(ClassLabel::LTT, &ltt));
    assert!(!decide_class(ClassLabel::LT, &ltt));
    let parity = lang(r#"mod("a", 2, 0)"#, 2);
    assert!(decide_class(ClassLabel::Zp, &parity));
    assert!(!decide_class(ClassLabel::SF, &parity));
    let sf = lang(r#"concat("a"$, !"bc")"#, 4);
    assert!(decide_class(ClassLabel::SF, &sf));
    assert!(!decide_class(ClassLabel::LTT, &sf));
    assert!(!decide_class(ClassLabel::PT, &sf));
}

#[test]
fn membership_vector_examples() {
    use ClassLabel::*;
    let v = membership_vector(&lang(r#"!"aa""#, 2));
    let expected: HashSet<ClassLabel> = [SL, TSL, LT, TLT, LTT, TLTT, PLT, TPLT, SF, Reg].into();
    assert_eq!(v.members().collect::<HashSet<_>>(), expected);
    let v = membership_vector(&lang(r#"mod("a", 2, 0)"#, 2));
    assert_eq!(v.members().collect::<Vec<_>>(), vec![Zp, Reg]);
    let a = Alphabet::prefix(2).unwrap();
    assert_eq!(membership_vector(&Dfa::universal(&a)), MembershipVector::trivial());
    assert_eq!(membership_vector(&Dfa::empty(&a)), MembershipVector::trivial());
}

#[test]
fn representative_examples() {
    let h = Hierarchy::new();
    assert_eq!(classify(&lang(r#"!"aa""#, 2)).1, Some(ClassLabel::SL));
    assert_eq!(classify(&lang(r#"mod("a", 2, 0)"#, 2)).1, Some(ClassLabel::Zp));
    let mut reg = MembershipVector([false; 16]);
    reg.set(ClassLabel::Reg, true);
    assert_eq!(representative_of(&reg, &h), Some(ClassLabel::Reg));
    assert_eq!(representative_of(&MembershipVector::trivial(), &h), Some(ClassLabel::SL));
    // SL and coSL at once: no single representative.
    let anchored = lang(r#"^"a""#, 2);
    let (v, r) = classify(&anchored);
    assert!(v.get(ClassLabel::SL) && v.get(ClassLabel::CoSL));
    assert_eq!(r, None);
}

#[test]
fn hierarchy_shape() {
    use ClassLabel::*;
    let h = Hierarchy::new();
    assert!(h.is_acyclic());
    assert_eq!(h.edges().len(), 19);
    for c in ClassLabel::ALL {
        if c != Zp && c != Reg {
            assert!(!h.comparable(Zp, c), "{c}");
        }
    }
    assert!(h.is_strict_superclass(Reg, SL));
    assert!(h.is_strict_superclass(TPLT, SP));
    assert!(!h.is_strict_superclass(LTT, PT));
    assert_eq!(h.superclasses(SF), vec![Reg]);
}

#[test]
fn library_patterns_represent_their_class() {
    let h = Hierarchy::new();
    for p in library::patterns() {
        let d = p.compile().unwrap();
        let (v, r) = classify(&d);
        assert!(v.is_upward_closed(&h), "{}", p.name());
        assert_eq!(r, Some(p.spec.class), "{} {}", p.name(), p.expr);
    }
}

#[test]
fn library_has_two_per_class_per_alphabet() {
    let pats = library::patterns();
    for sigma in library::ALPHABET_SIZES {
        for c in ClassLabel::ALL {
            let n = pats.iter().filter(|p| p.spec.sigma == sigma && p.spec.class == c).count();
            assert!(n >= 2, "{sigma} {c}");
        }
    }
    let names: HashSet<String> = pats.iter().map(|p| p.name()).collect();
    assert_eq!(names.len(), pats.len());
    assert!(names.contains("04.04.SL.2.0.0"));
}

#[test]
fn complement_duality_on_library() {
    use ClassLabel::*;
    for p in library::patterns().iter().filter(|p| p.spec.sigma == 4) {
        let d = p.compile().unwrap();
        let c = d.complement();
        for (x, y) in [(SL, CoSL), (SP, CoSP), (TSL, TcoSL)] {
            assert_eq!(decide_class(x, &d), decide_class(y, &c), "{} {x}", p.name());
            assert_eq!(decide_class(y, &d), decide_class(x, &c), "{} {y}", p.name());
        }
    }
}

#[test]
fn strictly_local_matches_suffix_substitution() {
    for p in library::patterns().iter().filter(|p| p.spec.sigma == 4 && p.spec.k <= 3) {
        let d = p.compile().unwrap();
        let k = p.spec.k.max(2) as usize;
        let brute = brute_ssc(&d, k, 5);
        if is_strictly_local(&d) {
            assert!(brute, "{}", p.name());
        } else if p.spec.class == ClassLabel::SL {
            panic!("{} should be SL", p.name());
        }
    }
    for src in [r#""aa""#, r#"mod("a", 2, 0)"#, r#""aa" -> "ab""#] {
        let d = lang(src, 3);
        assert!(!is_strictly_local(&d));
        assert!(!brute_ssc(&d, 2, 6), "{src}");
    }
}

#[test]
fn subsequence_and_neutral_routes_agree_on_library() {
    for p in library::patterns().iter().filter(|p| p.spec.sigma == 4) {
        let d = p.compile().unwrap();
        assert_eq!(is_subsequence_closed(&d), closed_by_transducers(&d), "{}", p.name());
        assert_eq!(neutral_symbols(&d), neutral_by_transducers(&d), "{}", p.name());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn vectors_are_upward_closed(d in arb_dfa(5, 3)) {
        let v = membership_vector(&d);
        prop_assert!(v.is_upward_closed(&Hierarchy::new()));
        prop_assert!(v.get(ClassLabel::Reg));
    }

    #[test]
    fn closure_routes_agree(d in arb_dfa(4, 3)) {
        prop_assert_eq!(is_subsequence_closed(&d), closed_by_transducers(&d));
        prop_assert_eq!(neutral_symbols(&d), neutral_by_transducers(&d));
    }

    #[test]
    fn sl_matches_suffix_substitution_when_true(d in arb_dfa(4, 2)) {
        let m = d.minimize();
        if is_strictly_local(&m) {
            // An SL language with n trim states is SL_(n+1) at most.
            let k = m.num_states().max(1) + 1;
            prop_assert!(brute_ssc(&m, k, 2 * k));
        }
    }
}
