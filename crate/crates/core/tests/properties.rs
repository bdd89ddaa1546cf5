use logjet::combinat::{binom, digit_sum, mbinom, p_adic_valuation, qbinom, sigma};
use logjet::homotopy::{h, permute, pi};
use logjet::indexing::symbols_in_window;
use logjet::*;
use proptest::prelude::*;
use proptest::sample::Index;

const LEVELS: [(u32, u32); 4] = [(2, 1), (2, 2), (3, 1), (5, 1)];

fn window_params() -> impl Strategy<Value = Params> {
    prop_oneof![
        Just(Params::new(2, 1, 1).unwrap()),
        Just(Params::new(2, 1, 2).unwrap()),
        Just(Params::new(3, 1, 1).unwrap()),
        Just(Params::new(3, 1, 2).unwrap()),
    ]
}

/// A chain of degree `r` built from up to four windowed symbols.
fn chain_from(params: &Params, r: usize, picks: &[(Index, u32)]) -> Chain {
    let pool = symbols_in_window(params, 2 * params.pm() as u64, r);
    let mut v = Chain::zero(params, r);
    for (idx, c) in picks {
        v.add_term(idx.get(&pool).clone(), Coeff::new(*c as u64, params.p()))
            .unwrap();
    }
    v
}

fn picks() -> impl Strategy<Value = Vec<(Index, u32)>> {
    prop::collection::vec((any::<Index>(), 1u32..5), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binom_factors_through_mbinom_and_qbinom(level in 0usize..4, k in 0u64..=300, t in any::<Index>()) {
        let (p, m) = LEVELS[level];
        let params = Params::new(p, m, 1).unwrap();
        let sub = t.index(k as usize + 1) as u64;
        let q = qbinom(&params, k, sub).unwrap();
        let lhs = binom(k, sub).unwrap() * q.denom();
        let rhs = mbinom(&params, k, sub).unwrap() * q.numer();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binom_valuation_is_digit_carry_count(level in 0usize..4, k in 0u64..=300, t in any::<Index>()) {
        let p = LEVELS[level].0;
        let sub = t.index(k as usize + 1) as u64;
        let v = p_adic_valuation(&binom(k, sub).unwrap(), p).unwrap();
        let carries = (digit_sum(sub, p) + digit_sum(k - sub, p) - digit_sum(k, p)) / (p as u64 - 1);
        prop_assert_eq!(v, carries);
    }

    #[test]
    fn sigma_is_next_multiple_of_p(level in 0usize..4, q in 0u64..10_000) {
        let p = LEVELS[level].0;
        let s = sigma(p, q);
        prop_assert!(s > q);
        prop_assert_eq!(s % p as u64, 0);
        prop_assert!(s - q <= p as u64);
    }

    #[test]
    fn qbinom_lemmas(level in 0usize..4, q in 0u64..=25, k in 0u64..125, t in 0u64..=125) {
        let (p, m) = LEVELS[level];
        let params = Params::new(p, m, 1).unwrap();
        let pm = params.pm() as u64;
        let (q, k, t) = (q % (p as u64 * p as u64 + 1), k % pm, t % (pm + 1));
        let diag = qbinom(&params, pm * q + t, t).unwrap().residue();
        prop_assert_eq!(diag.residue(), 1);
        if q >= 1 && k < t {
            let v = qbinom(&params, pm * q + k, t).unwrap().residue().residue();
            prop_assert_eq!(v, if t < pm { 0 } else { 1 });
        }
    }

    #[test]
    fn chain_text_round_trip(params in window_params(), r in 0usize..3, sel in picks()) {
        let v = chain_from(&params, r, &sel);
        let back = Chain::parse(&params, r, &v.to_string()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn d_squared_vanishes_in_quotient(params in window_params(), r in 0usize..2, sel in picks()) {
        let cx = JetComplex::new(params);
        let v = chain_from(&params, r, &sel);
        let dd = cx.differential(&cx.differential(&v, r).unwrap(), r + 1).unwrap();
        prop_assert!(cx.quotient_zero(&dd).unwrap());
    }

    #[test]
    fn h_is_linear(params in window_params(), r in 1usize..3, a in picks(), b in picks(), c in 1u32..5) {
        let cx = JetComplex::new(params);
        let va = chain_from(&params, r, &a);
        let vb = chain_from(&params, r, &b);
        let k = Coeff::new(c as u64, params.p());
        let mut combo = va.clone();
        combo.add_assign_scaled(&vb, k).unwrap();
        let mut expected = h(&cx, &va, r).unwrap();
        expected.add_assign_scaled(&h(&cx, &vb, r).unwrap(), k).unwrap();
        prop_assert_eq!(h(&cx, &combo, r).unwrap(), expected);
    }

    #[test]
    fn projectors_are_commuting_idempotents(params in window_params(), r in 0usize..3, sel in picks()) {
        let cx = JetComplex::new(params);
        let v = chain_from(&params, r, &sel);
        let n = params.n();
        for i in 1..=n {
            let once = pi(&cx, i, &v).unwrap();
            prop_assert_eq!(pi(&cx, i, &once).unwrap(), once.clone());
            for j in 1..=n {
                let ij = pi(&cx, j, &once).unwrap();
                let ji = pi(&cx, i, &pi(&cx, j, &v).unwrap()).unwrap();
                prop_assert_eq!(ij, ji);
            }
        }
    }

    #[test]
    fn permutation_round_trip(params in window_params(), r in 0usize..3, sel in picks()) {
        let v = chain_from(&params, r, &sel);
        let perm: Vec<usize> = (1..=params.n()).rev().collect();
        let there = permute(&perm, &v).unwrap();
        prop_assert_eq!(permute(&perm, &there).unwrap(), v);
    }

    #[test]
    fn relations_are_quotient_zero(params in window_params(), r in 2usize..4, e in any::<Index>(), s in any::<Index>()) {
        let cx = JetComplex::new(params);
        let etas = logjet::indexing::indices_up_to(params.n(), 2 * params.pm() as u64);
        let specs = cx.relation_specs(e.get(&etas), r);
        let spec = s.get(&specs);
        prop_assert!(cx.quotient_zero(&cx.relation_chain(spec).unwrap()).unwrap());
    }

    #[test]
    fn reduced_expansion_differs_by_reducing_relations(params in window_params(), r in 2usize..4, sel in any::<Index>()) {
        let cx = JetComplex::new(params);
        let pool = symbols_in_window(&params, 2 * params.pm() as u64, r);
        let x = sel.get(&pool);
        let expanded = cx.mbar_expand(x).unwrap();
        prop_assert!(expanded.support().all(|b| cx.is_reduced_basis(b)));
        let gens: Vec<Chain> = cx
            .reducing_specs(&x.eta, r)
            .iter()
            .map(|spec| cx.relation_chain(spec).unwrap())
            .collect();
        let diff = expanded.sub(&Chain::symbol(&params, x.clone()).unwrap()).unwrap();
        prop_assert!(linalg_fp::span_contains(&diff, &gens).unwrap());
    }

    #[test]
    fn differential_in_degree_zero_is_diff0(params in window_params(), e in any::<Index>()) {
        let cx = JetComplex::new(params);
        let etas = logjet::indexing::indices_up_to(params.n(), 3 * params.pm() as u64);
        let i = e.get(&etas);
        let x = Chain::symbol(&params, DeltaSymbol::eta(i.clone())).unwrap();
        prop_assert_eq!(cx.differential(&x, 0).unwrap(), cx.diff0(i).unwrap());
    }

    #[test]
    fn slot_insertion_matches_diff1(params in window_params(), s in any::<Index>()) {
        let cx = JetComplex::new(params);
        let slots = logjet::indexing::slot_set(&params);
        let j = s.get(&slots);
        let zero = MultiIndex::zeros(params.n());
        let x = Chain::symbol(&params, DeltaSymbol::new(zero, vec![j.clone()])).unwrap();
        // with I = 0 only the slot term survives, and its sign (-1)^1 is that of diff1_slot
        prop_assert_eq!(cx.differential(&x, 1).unwrap(), cx.diff1_slot(j).unwrap());
    }
}

/// `h(.., p^m e_n, J, ..) = -h(.., J, p^m e_n, ..)` when every slot before
/// the `p^m e_n` one has zero last component.
#[test]
fn swapping_a_full_last_slot_negates_h() {
    for &(p, n) in &[(2u32, 1usize), (2, 2), (3, 1), (3, 2)] {
        let params = Params::new(p, 1, n).unwrap();
        let cx = JetComplex::new(params);
        let full = MultiIndex::last_only(params.pm(), n);
        let mut checked = 0;
        for r in 2..=3 {
            for x in symbols_in_window(&params, 2 * params.pm() as u64, r) {
                let Some(s) = x.slots.iter().position(|j| *j == full) else {
                    continue;
                };
                if s + 1 >= r || x.slots[..s].iter().any(|j| j.last() != 0) {
                    continue;
                }
                let mut swapped = x.slots.clone();
                swapped.swap(s, s + 1);
                let y = DeltaSymbol::new(x.eta.clone(), swapped);
                let hx = h(&cx, &Chain::symbol(&params, x.clone()).unwrap(), r).unwrap();
                let hy = h(&cx, &Chain::symbol(&params, y).unwrap(), r).unwrap();
                assert!(cx.quotient_zero(&hx.add(&hy).unwrap()).unwrap(), "{x}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
