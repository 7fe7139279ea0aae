use rbj_core::rbindex::{census, rb_index_bruteforce, rb_index_certified, rb_index_table, Method, SearchConfig};
use rbj_core::{is_rb_zero, nilpotency_index, BilinearForm, FieldCtx};

fn form(ctx: &FieldCtx, d: &[i64]) -> BilinearForm {
    BilinearForm::new(ctx, d.iter().map(|&x| ctx.from_i64(x)).collect()).unwrap()
}

/// Sorted residue patterns of length `n`: `r` copies of 1, the rest `nonresidue`.
fn patterns(n: usize, nonresidue: i64) -> Vec<Vec<i64>> {
    (0..=n).map(|r| (0..n).map(|i| if i < r { 1 } else { nonresidue }).collect()).collect()
}

fn nonresidue(p: u64) -> i64 {
    match p {
        3 | 5 => 2,
        7 => 3,
        _ => unreachable!(),
    }
}

#[test]
fn pruned_equals_naive_z3_n3() {
    let ctx = FieldCtx::prime(3).unwrap();
    for d in patterns(3, 2) {
        let f = form(&ctx, &d);
        let naive = census(&ctx, &f, &SearchConfig::naive()).unwrap();
        let pruned = census(&ctx, &f, &SearchConfig::pruned()).unwrap();
        assert_eq!(naive.by_index, pruned.by_index, "f={d:?}");
        assert_eq!(naive.non_nilpotent, 0);
    }
}

#[test]
fn pruned_equals_naive_z5_n2() {
    let ctx = FieldCtx::prime(5).unwrap();
    for d1 in 1..5 {
        for d2 in 1..5 {
            let f = form(&ctx, &[d1, d2]);
            let naive = census(&ctx, &f, &SearchConfig::naive()).unwrap();
            let pruned = census(&ctx, &f, &SearchConfig::pruned()).unwrap();
            assert_eq!(naive.by_index, pruned.by_index, "f=({d1},{d2})");
        }
    }
}

#[test]
fn table_matches_search_k3_k4() {
    for p in [3u64, 5, 7] {
        let ctx = FieldCtx::prime(p).unwrap();
        for n in [2, 3] {
            for d in patterns(n, nonresidue(p)) {
                let f = form(&ctx, &d);
                let table = rb_index_table(&ctx, &f).unwrap();
                let brute = rb_index_bruteforce(&ctx, &f, &SearchConfig::default()).unwrap();
                assert_eq!(table.value, brute.value, "p={p} f={d:?}");
                assert!(brute.value <= 3);
            }
        }
    }
}

#[test]
fn table_matches_search_k5() {
    for p in [3u64, 5] {
        let ctx = FieldCtx::prime(p).unwrap();
        for d in patterns(4, nonresidue(p)) {
            let f = form(&ctx, &d);
            let table = rb_index_table(&ctx, &f).unwrap();
            let brute = rb_index_bruteforce(&ctx, &f, &SearchConfig::pruned()).unwrap();
            assert_eq!((table.value, brute.value), (3, 3), "p={p} f={d:?}");
            assert_eq!(brute.census.unwrap().non_nilpotent, 0);
        }
    }
}

#[test]
fn witnesses_realise_their_index() {
    for p in [3u64, 5, 7] {
        let ctx = FieldCtx::prime(p).unwrap();
        for n in 2..=6 {
            for d in patterns(n, nonresidue(p)) {
                let v = rb_index_table(&ctx, &form(&ctx, &d)).unwrap();
                let w = v.witness.unwrap_or_else(|| panic!("p={p} f={d:?}: no witness"));
                assert!(is_rb_zero(&w));
                assert_eq!(nilpotency_index(&w), Some(v.value), "p={p} f={d:?}");
            }
        }
    }
}

#[test]
fn census_always_contains_zero_operator() {
    let ctx = FieldCtx::prime(5).unwrap();
    for d in patterns(3, 2) {
        let c = census(&ctx, &form(&ctx, &d), &SearchConfig::pruned().collecting()).unwrap();
        assert_eq!(c.count(1), 1);
        assert_eq!(c.operators.iter().filter(|r| r.is_zero()).count(), 1);
        assert_eq!(c.operators.len() as u64, c.total());
    }
}

#[test]
fn certified_search_uses_witness_beyond_budget() {
    let ctx = FieldCtx::prime(7).unwrap();
    let f = form(&ctx, &[1, 1, 1, 1]);
    let cfg = SearchConfig { max_pruned_nodes: 10_000, ..SearchConfig::pruned() };
    let v = rb_index_certified(&ctx, &f, &cfg).unwrap();
    assert_eq!(v.method, Method::Constructive);
    assert_eq!(v.value, 3);
    assert!(v.census.is_none());
    assert_eq!(nilpotency_index(v.witness.as_ref().unwrap()), Some(3));
}
