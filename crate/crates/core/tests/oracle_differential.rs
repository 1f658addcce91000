use mfn::oracle::{oracle_factors_through, oracle_stable_hom_dim};
use mfn::random::{random_factorization, random_morphism, rng, RandomSpec};
use mfn::mf::cone;
use mfn::stable::{factors_through_projinj, is_stably_zero, stable_hom_dim, stably_isomorphic_via};
use mfn::FieldSpec;

fn spec(i: u64) -> RandomSpec {
    let field = if i % 2 == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(101) };
    let n = 2 + (i % 2) as usize;
    let k = 2 + (i % 3) as usize / 2 + (i % 5 == 0) as usize;
    RandomSpec { field, n, k, max_rank: 2, max_degree: 2 }
}

#[test]
fn stable_hom_matches_oracle_on_random_pairs() {
    for i in 0..60u64 {
        let s = spec(i);
        let mut r = rng(1000 + i);
        let m = random_factorization(&mut r, &s).unwrap();
        let n = random_factorization(&mut r, &s).unwrap();
        let pipeline = stable_hom_dim(&m, &n).unwrap().dim.finite().unwrap();
        let oracle = oracle_stable_hom_dim(&m, &n, None).unwrap();
        assert_eq!(oracle.stable(), Some(pipeline), "instance {i}: {m} -> {n}, oracle {oracle:?}");
    }
}

#[test]
fn factorization_test_matches_oracle() {
    for i in 0..40u64 {
        let s = spec(i);
        let mut r = rng(5000 + i);
        let m = random_factorization(&mut r, &s).unwrap();
        let n = random_factorization(&mut r, &s).unwrap();
        let f = random_morphism(&mut r, &m, &n).unwrap();
        let w = factors_through_projinj(&f).unwrap();
        if let Some(w) = &w {
            assert_eq!(w.q.after(&w.g).unwrap(), f);
        }
        assert_eq!(w.is_some(), oracle_factors_through(&f, None).unwrap(), "instance {i}");
    }
}

#[test]
fn stable_inverse_matches_cone_criterion() {
    let mut isos = 0;
    for i in 0..30u64 {
        let s = RandomSpec { n: 2, ..spec(2 * i) };
        let mut r = rng(9000 + i);
        let m = random_factorization(&mut r, &s).unwrap();
        let n = random_factorization(&mut r, &s).unwrap();
        let mut maps = stable_hom_dim(&m, &n).unwrap().generators.into_iter().map(|g| g.morphism).collect::<Vec<_>>();
        maps.push(random_morphism(&mut r, &m, &n).unwrap());
        for f in maps {
            let via_cone = is_stably_zero(&cone(&f).unwrap().cone).unwrap();
            assert_eq!(stably_isomorphic_via(&f).unwrap(), via_cone, "instance {i}: {f}");
            isos += via_cone as usize;
        }
    }
    assert!(isos > 0);
}
