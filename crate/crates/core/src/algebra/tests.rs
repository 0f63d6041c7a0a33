use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use super::*;
use crate::expr::{compile_expr, parse_expr};
use crate::testutil::arb_dfa;
use crate::Alphabet;

fn lang(src: &str, k: usize) -> Dfa {
    compile_expr(&parse_expr(src).unwrap(), &Alphabet::prefix(k).unwrap()).unwrap()
}

/// Transformations of the complete minimal DFA, composed left to right.
fn actions(d: &Dfa) -> Vec<Vec<u32>> {
    let c = complete_minimal(d).unwrap();
    (0..c.alphabet().len())
        .map(|s| (0..c.num_states() as u32).map(|q| c.next(q, s).unwrap()).collect())
        .collect()
}

fn compose(x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().map(|&q| y[q as usize]).collect()
}

/// Fixpoint closure of the symbol actions under composition.
fn brute_closure(d: &Dfa) -> HashSet<Vec<u32>> {
    let gens = actions(d);
    let mut set: HashSet<Vec<u32>> = gens.iter().cloned().collect();
    loop {
        let mut grown = set.clone();
        for x in &set {
            for g in &gens {
                grown.insert(compose(x, g));
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

fn brute_aperiodic(s: &TransformationSemigroup) -> bool {
    (0..s.size() as u32).all(|x| {
        let mut pows = vec![s.image(x).to_vec()];
        for _ in 0..=s.size() {
            let next = compose(pows.last().unwrap(), s.image(x));
            pows.push(next);
        }
        pows.windows(2).any(|w| w[0] == w[1])
    })
}

/// Two-sided ideals `S¹xS¹`, compared as sets.
fn brute_j_trivial(s: &TransformationSemigroup) -> bool {
    let m = s.with_identity();
    let ideal = |x: u32| -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for a in 0..m.size() as u32 {
            for b in 0..m.size() as u32 {
                out.insert(m.mul(m.mul(a, x), b));
            }
        }
        out
    };
    let ideals: Vec<_> = (0..s.size() as u32).map(ideal).collect();
    let distinct: HashSet<_> = ideals.iter().collect();
    distinct.len() == ideals.len()
}

fn brute_semilattice(s: &TransformationSemigroup) -> bool {
    let n = s.size() as u32;
    (0..n).filter(|&e| s.mul(e, e) == e).all(|e| {
        let local: Vec<u32> = (0..n).map(|x| s.mul(s.mul(e, x), e)).collect();
        local.iter().all(|&x| s.mul(x, x) == x)
            && local.iter().all(|&x| local.iter().all(|&y| s.mul(x, y) == s.mul(y, x)))
    })
}

/// `eafbecf = ecfbeaf` over all idempotents and elements.
fn brute_ltt(s: &TransformationSemigroup) -> bool {
    let n = s.size() as u32;
    let m = |xs: &[u32]| xs.iter().copied().reduce(|a, b| s.mul(a, b)).unwrap();
    let idem: Vec<u32> = (0..n).filter(|&e| s.mul(e, e) == e).collect();
    for &e in &idem {
        for &f in &idem {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if m(&[e, a, f, b, e, c, f]) != m(&[e, c, f, b, e, a, f]) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// `(epfq)^ω epfse (rfse)^ω = (epfq)^ω e (rfse)^ω`.
fn brute_knast(s: &TransformationSemigroup) -> bool {
    let n = s.size() as u32;
    let m = |xs: &[u32]| xs.iter().copied().reduce(|a, b| s.mul(a, b)).unwrap();
    let w = |x: u32| s.omega_power(x);
    let idem: Vec<u32> = (0..n).filter(|&e| s.mul(e, e) == e).collect();
    for &e in &idem {
        for &f in &idem {
            for p in 0..n {
                for q in 0..n {
                    let l = w(m(&[e, p, f, q]));
                    for r in 0..n {
                        for t in 0..n {
                            let rr = w(m(&[r, f, t, e]));
                            if m(&[l, e, p, f, t, e, rr]) != m(&[l, e, rr]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

fn brute_group(s: &TransformationSemigroup) -> bool {
    let n = s.size() as u32;
    let Some(e) = (0..n).find(|&e| (0..n).all(|x| s.mul(e, x) == x && s.mul(x, e) == x)) else {
        return false;
    };
    (0..n).all(|x| (0..n).any(|y| s.mul(x, y) == e))
}

#[test]
fn monoid_sizes() {
    let parity = lang(r#"mod("a", 2, 0)"#, 2);
    let m = syntactic_monoid(&parity).unwrap();
    assert_eq!(m.size(), 2);
    let has_aa = lang(r#""aa""#, 2);
    assert_eq!(syntactic_monoid(&has_aa).unwrap().size(), 6);
    let univ = Dfa::universal(&Alphabet::prefix(3).unwrap());
    assert_eq!(syntactic_monoid(&univ).unwrap().size(), 1);
    let empty = Dfa::empty(&Alphabet::prefix(3).unwrap());
    assert_eq!(syntactic_monoid(&empty).unwrap().size(), 1);
}

#[test]
fn semigroup_excludes_identity_unless_generated() {
    let has_aa = lang(r#""aa""#, 2);
    let s = syntactic_semigroup(&has_aa).unwrap();
    assert_eq!(s.size(), 5);
    assert!(!s.is_monoid());
    let parity = lang(r#"mod("a", 2, 0)"#, 2);
    let s = syntactic_semigroup(&parity).unwrap();
    assert!(s.is_monoid());
    assert_eq!(s.size(), 2);
}

#[test]
fn rejects_non_minimal() {
    let a = Alphabet::prefix(1).unwrap();
    let d = Dfa::from_parts(a, 0, vec![true, true], vec![1, 0]);
    assert!(matches!(syntactic_semigroup(&d), Err(Error::NotMinimal)));
}

#[test]
fn aperiodicity_examples() {
    assert!(!syntactic_monoid(&lang(r#"mod("a", 2, 0)"#, 2)).unwrap().is_aperiodic());
    assert!(syntactic_monoid(&lang(r#""aa""#, 5)).unwrap().is_aperiodic());
    let univ = Dfa::universal(&Alphabet::prefix(2).unwrap());
    assert!(syntactic_monoid(&univ).unwrap().is_aperiodic());
}

#[test]
fn group_examples() {
    let z2 = syntactic_monoid(&lang(r#"mod("a", 2, 0)"#, 2)).unwrap();
    assert!(z2.is_group());
    assert!(z2.group_order_prime());
    let z3 = syntactic_monoid(&lang(r#"mod("b", 3, 1)"#, 3)).unwrap();
    assert!(z3.group_order_prime());
    let z2z2 = syntactic_monoid(&lang(r#"mod("a", 2, 0) & mod("b", 2, 0)"#, 2)).unwrap();
    assert!(z2z2.is_group());
    assert!(!z2z2.group_order_prime());
    // "aa" has a zero (the action of aa), a second idempotent.
    assert!(!syntactic_monoid(&lang(r#""aa""#, 2)).unwrap().is_group());
    let univ = Dfa::universal(&Alphabet::prefix(2).unwrap());
    let trivial = syntactic_monoid(&univ).unwrap();
    assert!(trivial.is_group());
    assert!(!trivial.group_order_prime());
}

#[test]
fn j_triviality_examples() {
    assert!(syntactic_monoid(&lang(r#""a" < "a""#, 3)).unwrap().is_j_trivial());
    assert!(!syntactic_monoid(&lang(r#""aa""#, 2)).unwrap().is_j_trivial());
}

#[test]
fn local_semilattice_examples() {
    let lt = syntactic_semigroup(&lang(r#""aa" -> "ab""#, 3)).unwrap();
    assert!(lt.local_submonoid_check(LocalPredicate::Semilattice));
    let ltt = syntactic_semigroup(&lang(r#"atleast(2, "aa")"#, 2)).unwrap();
    assert!(!ltt.local_submonoid_check(LocalPredicate::Semilattice));
    assert!(ltt.satisfies_identity(Identity::LttBeauquierPin));
    let univ = syntactic_semigroup(&Dfa::universal(&Alphabet::prefix(2).unwrap())).unwrap();
    assert!(univ.local_submonoid_check(LocalPredicate::Semilattice));
    assert!(univ.satisfies_identity(Identity::LttBeauquierPin));
    assert!(univ.satisfies_identity(Identity::Knast));
}

#[test]
fn identities_separate_classes() {
    let plt = syntactic_semigroup(&lang(r#""aa" < "ab""#, 3)).unwrap();
    assert!(plt.satisfies_identity(Identity::Knast));
    assert!(!plt.satisfies_identity(Identity::LttBeauquierPin));
    let pt = syntactic_semigroup(&lang(r#"("a" < "a") -> ("a" < "b")"#, 3)).unwrap();
    assert!(pt.satisfies_identity(Identity::Knast));
    let ltt = syntactic_semigroup(&lang(r#"atleast(2, "aa")"#, 2)).unwrap();
    assert!(ltt.satisfies_identity(Identity::Knast));
}

#[test]
fn dump_lists_generators_and_elements() {
    let m = syntactic_monoid(&lang(r#"mod("a", 2, 0)"#, 2)).unwrap();
    let text = m.dump();
    assert!(text.starts_with("states 2\nsize 2\nidentity "));
    assert!(text.contains("generator a "));
    assert!(text.contains("generator b "));
    assert_eq!(text.lines().filter(|l| l.starts_with("element ")).count(), 2);
    assert!(text.contains("(1,0)"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_brute_force(d in arb_dfa(6, 4)) {
        let m = d.minimize();
        let s = syntactic_semigroup(&m).unwrap();
        let brute = brute_closure(&m);
        prop_assert_eq!(s.size(), brute.len());
        for x in 0..s.size() as u32 {
            prop_assert!(brute.contains(s.image(x)));
        }
        for x in 0..s.size() as u32 {
            for y in 0..s.size() as u32 {
                prop_assert_eq!(s.image(s.mul(x, y)), &compose(s.image(x), s.image(y))[..]);
            }
        }
    }

    #[test]
    fn predicates_match_brute_force(d in arb_dfa(4, 2)) {
        let m = d.minimize();
        let s = syntactic_semigroup(&m).unwrap();
        let mon = s.with_identity();
        prop_assert_eq!(s.is_aperiodic(), brute_aperiodic(&s));
        prop_assert_eq!(mon.is_j_trivial(), brute_j_trivial(&mon));
        prop_assert_eq!(mon.is_group(), brute_group(&mon));
        prop_assert_eq!(s.local_submonoid_check(LocalPredicate::Semilattice), brute_semilattice(&s));
        if s.size() <= 12 {
            prop_assert_eq!(s.satisfies_identity(Identity::LttBeauquierPin), brute_ltt(&s));
        }
        if s.size() <= 7 {
            prop_assert_eq!(s.satisfies_identity(Identity::Knast), brute_knast(&s));
        }
        if mon.is_group() && mon.size() > 1 {
            prop_assert!(!mon.is_aperiodic());
        }
    }

    #[test]
    fn complement_has_same_monoid(d in arb_dfa(6, 3)) {
        let m = d.minimize();
        let a = syntactic_monoid(&m).unwrap();
        let b = syntactic_monoid(&m.complement().minimize()).unwrap();
        prop_assert_eq!(a.size(), b.size());
        prop_assert_eq!(a.is_aperiodic(), b.is_aperiodic());
        prop_assert_eq!(a.idempotents().len(), b.idempotents().len());
    }

    #[test]
    fn omega_power_is_idempotent_power(d in arb_dfa(5, 3)) {
        let s = syntactic_semigroup(&d.minimize()).unwrap();
        for x in 0..s.size() as u32 {
            let w = s.omega_power(x);
            prop_assert!(s.is_idempotent(w));
            let mut p = x;
            let mut seen = false;
            for _ in 0..=s.size() {
                seen |= p == w;
                p = s.mul(p, x);
            }
            prop_assert!(seen);
        }
    }
}
