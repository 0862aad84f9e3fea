mod common;

use common::{arb_graph, inversions, shuffle};
use kgc::graphs::{permutation_sign, LabelledGraph};
use kgc::signs::{
    cyclic_sign, graded_symmetry, half_edge_orientation, jacobi_closed_form, jacobi_signs, koszul_sign,
    linf_relation, linf_relation_symbolic, normalize, normalize_relation, parse_relation, render_relation,
    reorder_sign, verify_vertex_orientation, Bracket, HalfEdge, SignError, Term,
};
use proptest::prelude::*;

/// Counts transpositions of odd letters by bubble sort.
fn bubble_sign(degrees: &[i64], perm: &[usize]) -> i8 {
    let mut word: Vec<usize> = perm.to_vec();
    let mut sign = 1i8;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                if degrees[word[j]] % 2 != 0 && degrees[word[j + 1]] % 2 != 0 {
                    sign = -sign;
                }
                word.swap(j, j + 1);
            }
        }
    }
    sign
}

fn degrees_and_perm() -> impl Strategy<Value = (Vec<i64>, Vec<usize>, Vec<usize>)> {
    (1usize..9).prop_flat_map(|n| (prop::collection::vec(-3i64..6, n), shuffle(n), shuffle(n)))
}

#[test]
fn koszul_examples() {
    assert_eq!(koszul_sign(&[1, 3], &[1, 0]).unwrap(), -1);
    assert_eq!(koszul_sign(&[2, 3], &[1, 0]).unwrap(), 1);
    assert_eq!(koszul_sign(&[1, 1, 1, 1], &[0, 1, 2, 3]).unwrap(), 1);
    assert!(matches!(koszul_sign(&[1, 1], &[1, 1]), Err(SignError::NotPermutation(_))));
    for r in 1..8 {
        for d in 0..5i64 {
            let mut rot = vec![r - 1];
            rot.extend(0..r - 1);
            let want = if (r as i64 - 1) * d % 2 == 0 { 1 } else { -1 };
            assert_eq!(cyclic_sign(r, d), want);
            assert_eq!(koszul_sign(&vec![d; r], &rot).unwrap(), want);
        }
    }
}

proptest! {
    #[test]
    fn koszul_matches_bubble_sort((d, p, _) in degrees_and_perm()) {
        prop_assert_eq!(koszul_sign(&d, &p).unwrap(), bubble_sign(&d, &p));
    }

    /// ε(d, p∘q) = ε(d, p) · ε(d∘p, q) with (p∘q)[i] = p[q[i]].
    #[test]
    fn koszul_composition((d, p, q) in degrees_and_perm()) {
        let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
        let dp: Vec<i64> = p.iter().map(|&i| d[i]).collect();
        prop_assert_eq!(koszul_sign(&d, &pq).unwrap(), koszul_sign(&d, &p).unwrap() * koszul_sign(&dp, &q).unwrap());
    }

    #[test]
    fn koszul_is_permutation_sign_on_odd_words((_, p, _) in degrees_and_perm(), d in prop::sample::select(vec![1i64, 3, -1])) {
        prop_assert_eq!(koszul_sign(&vec![d; p.len()], &p).unwrap(), permutation_sign(&p));
        prop_assert_eq!(koszul_sign(&vec![d + 1; p.len()], &p).unwrap(), 1);
    }

    #[test]
    fn jacobi_procedure_matches_closed_form(p in 2usize..30, q in 2usize..30, r in 2usize..30) {
        prop_assert_eq!(jacobi_signs(p, q, r).unwrap(), jacobi_closed_form(p, q, r));
    }
}

#[test]
fn jacobi_parity_classes() {
    for p in [2, 3] {
        for q in [2, 3] {
            for r in [2, 3] {
                assert_eq!(jacobi_signs(p, q, r).unwrap(), jacobi_closed_form(p, q, r));
            }
        }
    }
    assert_eq!(jacobi_signs(2, 4, 6).unwrap(), [1, 1, 1]);
    assert!(jacobi_signs(1, 2, 2).is_err());
}

fn random_directed() -> impl Strategy<Value = (LabelledGraph, Vec<usize>)> {
    (arb_graph(), any::<u64>()).prop_flat_map(|(g, alpha)| {
        let e = g.edge_count();
        (Just(g.with_directions(alpha)), shuffle(e))
    })
}

#[test]
fn single_edge_fragment() {
    let g = LabelledGraph::raw(2, vec![(0, 1)], true).unwrap();
    for k_odd in [false, true] {
        let o = half_edge_orientation(&g, k_odd).unwrap();
        assert_eq!(o.global_sign, 1);
        assert_eq!(o.words[0].word, vec![HalfEdge { edge: 0, plus: false }]);
        assert_eq!(o.words[1].word, vec![HalfEdge { edge: 0, plus: true }]);
    }
}

#[test]
fn undirected_input_is_rejected() {
    assert!(matches!(half_edge_orientation(&LabelledGraph::wheel(5), true), Err(SignError::NotDirected)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn half_edge_normal_form_verifies((g, _) in random_directed(), k_odd in any::<bool>()) {
        let o = half_edge_orientation(&g, k_odd).unwrap();
        let words: Vec<(i8, Vec<HalfEdge>)> = o.words.iter().map(|w| (w.sign, w.word.clone())).collect();
        prop_assert!(verify_vertex_orientation(&g, k_odd, &words));
        prop_assert_eq!(o.global_sign, words.iter().map(|w| w.0).product::<i8>());
        let mut bad = words.clone();
        bad[0].0 = -bad[0].0;
        prop_assert!(!verify_vertex_orientation(&g, k_odd, &bad));
    }

    /// Relabelling edges by p: each e_+∧e_- block is odd, so the edge word
    /// changes by sign(p); the vertex words change by their own reorderings.
    #[test]
    fn half_edge_relabelling((g, p) in random_directed(), k_odd in any::<bool>()) {
        let h = g.permute_edges(&p);
        let og = half_edge_orientation(&g, k_odd).unwrap();
        let oh = half_edge_orientation(&h, k_odd).unwrap();
        let mut within = 1i8;
        for (wg, wh) in og.words.iter().zip(&oh.words) {
            let mapped: Vec<HalfEdge> = wh.word.iter().map(|x| HalfEdge { edge: p[x.edge], plus: x.plus }).collect();
            within *= reorder_sign(&wg.word, &mapped, |x| x.degree(k_odd));
        }
        let sp = if inversions(&p) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(oh.global_sign * within, sp * og.global_sign);
    }
}

fn abc(p: i64, q: i64, r: i64) -> Term {
    Term { sign: 1, bracket: Bracket::Br(vec![Bracket::gen("a", p), Bracket::gen("b", q), Bracket::gen("c", r)]) }
}

#[test]
fn graded_symmetry_identities() {
    let pow = |e: i64| if e % 2 == 0 { 1i8 } else { -1 };
    for p in 0..2 {
        for q in 0..2 {
            for r in 0..2 {
                let t = abc(p, q, r);
                assert_eq!(graded_symmetry(&t, &[0, 1, 2]).unwrap(), t);
                assert_eq!(graded_symmetry(&t, &[1, 0, 2]).unwrap().sign, pow(p * q));
                assert_eq!(graded_symmetry(&t, &[2, 1, 0]).unwrap().sign, pow(p * q + p * r + q * r));
                assert_eq!(graded_symmetry(&t, &[0, 2, 1]).unwrap().sign, pow(q * r));
            }
        }
    }
}

fn arb_bracket() -> impl Strategy<Value = Bracket> {
    let names = prop::sample::select(vec!["a", "b", "c", "d", "e", "f"]);
    let leaf = (names, 0i64..4).prop_map(|(n, d)| Bracket::gen(n, d));
    leaf.prop_recursive(3, 12, 3, |inner| prop::collection::vec(inner, 2..=3).prop_map(Bracket::Br))
}

/// Renames generators x0, x1, … in reading order, keeping degrees.
fn fresh(b: &Bracket, next: &mut usize) -> Bracket {
    match b {
        Bracket::Gen(g) => {
            *next += 1;
            Bracket::gen(&format!("x{}", *next - 1), g.degree)
        }
        Bracket::Br(xs) => Bracket::Br(xs.iter().map(|x| fresh(x, next)).collect()),
    }
}

fn degree_of(b: &Bracket, name: &str) -> Option<i64> {
    match b {
        Bracket::Gen(g) => (g.name == name).then_some(g.degree),
        Bracket::Br(xs) => xs.iter().find_map(|x| degree_of(x, name)),
    }
}

proptest! {
    #[test]
    fn bracket_round_trip(b in arb_bracket().prop_filter("bracket", |b| matches!(b, Bracket::Br(_)))) {
        let b = fresh(&b, &mut 0);
        let parsed = Bracket::parse(&b.to_string(), &|n| degree_of(&b, n)).unwrap();
        prop_assert_eq!(parsed, b);
    }

    #[test]
    fn normalize_is_idempotent(b in arb_bracket(), sign in prop::sample::select(vec![1i8, -1])) {
        let t = normalize(&Term { sign, bracket: fresh(&b, &mut 0) });
        prop_assert_eq!(normalize(&t), t.clone());
    }

    #[test]
    fn symmetry_preserves_the_normal_form(
        (args, perm) in (2usize..5).prop_flat_map(|k| (prop::collection::vec(arb_bracket(), k), shuffle(k))),
    ) {
        let t = Term { sign: 1, bracket: fresh(&Bracket::Br(args), &mut 0) };
        let s = graded_symmetry(&t, &perm).unwrap();
        prop_assert_eq!(normalize(&s), normalize(&t));
    }
}

#[test]
fn relation_term_counts() {
    for l in 4..=8 {
        let want = (1 << (l - 1)) - l - 1;
        assert_eq!(linf_relation(l, false).unwrap().len(), want);
        assert_eq!(linf_relation(l, true).unwrap().len(), want);
    }
    assert_eq!(linf_relation(6, true).unwrap().len(), 25);
    assert!(matches!(linf_relation(3, true), Err(SignError::SmallArity)));
}

#[test]
fn relation_l4_matches_the_printed_form() {
    let paper = parse_relation("[[a,b],c]+(-1)^n[a,[b,c]]+(-1)^n[[a,c],b]").unwrap();
    for n_odd in [false, true] {
        assert_eq!(normalize_relation(&paper, n_odd).unwrap(), linf_relation(4, n_odd).unwrap());
    }
}

#[test]
fn relation_l5_even_n_matches_the_printed_form() {
    let paper = parse_relation(
        "[a,b,[c,d]]+(-1)^n[[a,c],b,d]+[[a,b],c,d]+[[a,d],b,c]+(-1)^n[a,c,[b,d]]\
         +(-1)^n[a,[b,c],d]-[[a,c,d],b]-[[a,b,c],d]-[a,[b,c,d]]-[[a,b,d],c]",
    )
    .unwrap();
    assert_eq!(normalize_relation(&paper, false).unwrap(), linf_relation(5, false).unwrap());
}

/// The cyclic form [[a,b],c] + [[b,c],a] + [[c,a],b] (all degrees equal)
/// normalizes to the generated relation.
#[test]
fn relation_l4_against_cyclic_jacobi_form() {
    for n_odd in [false, true] {
        let cyclic = parse_relation("[[a,b],c]+[[b,c],a]+[[c,a],b]").unwrap();
        let mut got = normalize_relation(&cyclic, n_odd).unwrap();
        got.sort_by_key(|t| t.bracket.to_string());
        assert_eq!(got, linf_relation(4, n_odd).unwrap());
    }
}

#[test]
fn symbolic_render_parses_back() {
    for l in 4..=6 {
        let rel = linf_relation_symbolic(l).unwrap();
        let text = render_relation(&rel);
        let parsed = parse_relation(&text).unwrap();
        assert_eq!(parsed.len(), rel.len());
        for ((c, b), (pc, pb)) in rel.iter().zip(&parsed) {
            assert_eq!(c, pc);
            assert_eq!(&b.to_string(), pb);
        }
        for n_odd in [false, true] {
            assert_eq!(normalize_relation(&parsed, n_odd).unwrap(), linf_relation(l, n_odd).unwrap());
        }
    }
}
