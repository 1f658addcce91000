//! Desk-scale acceptance criteria. Run with
//! `cargo test --release --test acceptance -- --nocapture` to see the report.

use std::process::Command;
use std::time::{Duration, Instant};

use mfn::census::{binomial, classify_trivial, enumerate_monomial};
use mfn::doc::Document;
use mfn::mf::{
    cone, direct_sum, injective_hull, projective_cover, shift, trivial_p, twist, MatrixFactorization, MfMorphism,
    Potential,
};
use mfn::oracle::oracle_stable_hom_dim;
use mfn::random::{random_factorization, random_morphism, rng, RandomSpec};
use mfn::root::{
    check_four_term, cokernel, ext1_cyclic, ext_via_resolution, is_isomorphic, kernel, mult_by_u, phi, skyscraper,
};
use mfn::stable::{factors_through_projinj, is_stably_zero, stable_hom_dim, stably_isomorphic_via, w_linearity_witness};
use mfn::{FieldSpec, Poly, PolyMatrix};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The 200-object corpus: fields Q and F_101, n ∈ {2,3,4}, ranks ≤ 3, W = x^k with k ≤ 4, degree ≤ 2.
fn frobenius_corpus() -> Vec<MatrixFactorization> {
    (0..200u64)
        .map(|i| {
            let field = if i % 2 == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(101) };
            let n = 2 + (i / 2 % 3) as usize;
            let k = 1 + (i / 6 % 4) as usize;
            let spec = RandomSpec { field, n, k, max_rank: 3, max_degree: 2 };
            random_factorization(&mut rng(i), &spec).expect("corpus draw")
        })
        .collect()
}

fn small_pair(i: u64, max_k: usize) -> (MatrixFactorization, MatrixFactorization) {
    let field = if i % 2 == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(101) };
    let n = 2 + (i % 2) as usize;
    let k = 2 + (i / 2) as usize % (max_k - 1);
    let spec = RandomSpec { field, n, k, max_rank: 2, max_degree: 2 };
    let mut r = rng(10_000 + i);
    (random_factorization(&mut r, &spec).unwrap(), random_factorization(&mut r, &spec).unwrap())
}

fn frobenius_structure() -> Check {
    let corpus = frobenius_corpus();
    let mut checks = 0;
    for (i, m) in corpus.iter().enumerate() {
        let f = random_morphism(&mut rng(i as u64), m, m).map_err(err)?;
        let pc = projective_cover(m).map_err(err)?;
        let ih = injective_hull(m).map_err(err)?;
        let built = [
            m.clone(),
            twist(m, 1),
            shift(m).map_err(err)?,
            cone(&f).map_err(err)?.cone.as_ref().clone(),
            direct_sum(m, &twist(m, 1)).map_err(err)?.sum.as_ref().clone(),
            pc.cover.as_ref().clone(),
            ih.hull.as_ref().clone(),
            trivial_p(m.potential(), i % m.n(), 2).map_err(err)?,
        ];
        for (c, obj) in built.iter().enumerate() {
            ensure(obj.verify().is_ok(), || format!("object {i}: constructor {c} broke the factorization identity"))?;
            checks += 1;
        }
        for j in 0..m.n() {
            ensure(pc.q.comp(j).mul(&pc.section[j]).map_err(err)?.is_identity(), || format!("object {i}: q·s ≠ I in slot {j}"))?;
            ensure(ih.retraction[j].mul(ih.u.comp(j)).map_err(err)?.is_identity(), || format!("object {i}: r·u ≠ I in slot {j}"))?;
            checks += 2;
        }
    }
    Ok(format!("{} objects, {checks} exact checks", corpus.len()))
}

fn stable_soundness() -> Check {
    let corpus = frobenius_corpus();
    let mut witnesses = 0;
    for (i, m) in corpus.iter().enumerate() {
        let w_id = MfMorphism::identity(m.clone()).scale(m.potential().w());
        for i_slot in 0..m.n() {
            let (s, c) = w_linearity_witness(m, i_slot).map_err(err)?;
            ensure(c.after(&s).map_err(err)? == w_id, || format!("object {i}: c∘s ≠ W·id at slot {i_slot}"))?;
        }
        // The projective-injective test runs on the smaller objects; W·id must always factor.
        if m.rank(0) * m.n() <= 8 {
            let g = factors_through_projinj(&w_id).map_err(err)?.ok_or_else(|| format!("object {i}: W·id does not factor"))?;
            ensure(g.q.after(&g.g).map_err(err)? == w_id, || format!("object {i}: witness fails re-multiplication"))?;
            witnesses += 1;
            let f = random_morphism(&mut rng(7 * i as u64), m, m).map_err(err)?;
            if let Some(g) = factors_through_projinj(&f).map_err(err)? {
                ensure(g.q.after(&g.g).map_err(err)? == f, || format!("object {i}: witness fails re-multiplication"))?;
                witnesses += 1;
            }
        }
    }
    Ok(format!("W-linearity on {} objects, {witnesses} witnesses re-verified", corpus.len()))
}

fn oracle_equivalence() -> Check {
    let mut dims = Vec::new();
    for i in 0..60u64 {
        let (m, n) = small_pair(i, 3);
        let pipeline = stable_hom_dim(&m, &n).map_err(err)?.dim.finite().ok_or("infinite stable Hom for W ≠ 0")?;
        let oracle = oracle_stable_hom_dim(&m, &n, None).map_err(err)?;
        let stable = oracle.stable().ok_or_else(|| format!("pair {i}: oracle did not stabilize: {oracle:?}"))?;
        ensure(stable == pipeline, || format!("pair {i}: Smith form gives {pipeline}, oracle {stable}"))?;
        dims.push(pipeline);
    }
    let nonzero = dims.iter().filter(|&&d| d > 0).count();
    Ok(format!("{} pairs agree ({nonzero} with nonzero stable Hom, max {})", dims.len(), dims.iter().max().unwrap()))
}

fn triangulated_sanity() -> Check {
    for i in 0..30u64 {
        let (m, n) = small_pair(i, 3);
        ensure(is_stably_zero(&cone(&MfMorphism::identity(m.clone())).map_err(err)?.cone).map_err(err)?, || {
            format!("instance {i}: cone(id) is not stably zero")
        })?;

        let c0 = cone(&MfMorphism::zero(m.clone(), n.clone())).map_err(err)?;
        let sum = direct_sum(&n, &shift(&m).map_err(err)?).map_err(err)?;
        // The cone of zero is M[1] ⊕ N; compare with N ⊕ M[1] by swapping blocks.
        let s1 = c0.shifted_source.clone();
        let swap = (0..m.n())
            .map(|j| {
                let (a, b) = (s1.rank(j), n.rank(j));
                let mut p = PolyMatrix::zeros(m.field(), a + b, a + b);
                p.paste(0, a, &PolyMatrix::identity(m.field(), b));
                p.paste(b, 0, &PolyMatrix::identity(m.field(), a));
                p
            })
            .collect();
        let comparison = MfMorphism::new(c0.cone.clone(), sum.sum.as_ref().clone(), swap).map_err(err)?;
        ensure(stably_isomorphic_via(&comparison).map_err(err)?, || format!("instance {i}: cone(0) ≄ N ⊕ M[1]"))?;

        let f = random_morphism(&mut rng(i), &m, &n).map_err(err)?;
        let c = cone(&f).map_err(err)?;
        ensure(factors_through_projinj(&c.to_cone.after(&f).map_err(err)?).map_err(err)?.is_some(), || {
            format!("instance {i}: M → N → C(f) is not stably zero")
        })?;
        let second = c.to_shift.after(&c.to_cone).map_err(err)?;
        ensure(second.is_zero() || factors_through_projinj(&second).map_err(err)?.is_some(), || {
            format!("instance {i}: N → C(f) → M[1] is not stably zero")
        })?;
    }
    Ok("30 instances".into())
}

fn table(objects: &[MatrixFactorization]) -> Result<Vec<Vec<usize>>, String> {
    objects
        .iter()
        .map(|a| {
            objects
                .iter()
                .map(|b| stable_hom_dim(a, b).map_err(err)?.dim.finite().ok_or_else(|| "infinite".to_string()))
                .collect()
        })
        .collect()
}

fn twist_shift_functoriality() -> Check {
    for i in 0..40u64 {
        let (m, _) = small_pair(i, 4);
        let mut t = m.clone();
        for _ in 0..m.n() {
            t = twist(&t, 1);
        }
        ensure(t == m, || format!("object {i}: twist^n is not the identity"))?;
    }
    let mut entries = 0;
    for (n, k) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let objects: Vec<MatrixFactorization> = enumerate_monomial(n, k)
            .map_err(err)?
            .iter()
            .map(|o| o.to_factorization(FieldSpec::Rationals))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        for o in &objects {
            let mut t = o.clone();
            for _ in 0..n {
                t = twist(&t, 1);
            }
            ensure(&t == o, || format!("census object {o}: twist^n is not the identity"))?;
        }
        let base = table(&objects)?;
        let twisted = table(&objects.iter().map(|o| twist(o, 1)).collect::<Vec<_>>())?;
        let shifted = table(&objects.iter().map(shift).collect::<Result<Vec<_>, _>>().map_err(err)?)?;
        ensure(base == twisted, || format!("(n, k) = ({n}, {k}): table changes under twist"))?;
        ensure(base == shifted, || format!("(n, k) = ({n}, {k}): table changes under shift"))?;
        entries += base.len() * base.len();
    }
    Ok(format!("{entries} table entries invariant under twist and shift"))
}

fn rank_le_two_over_t(n: usize) -> Vec<MatrixFactorization> {
    let q = FieldSpec::Rationals;
    let rank_one: Vec<MatrixFactorization> =
        enumerate_monomial(n, 1).unwrap().iter().map(|o| o.to_factorization(q).unwrap()).collect();
    let mut all = rank_one.clone();
    for a in &rank_one {
        for b in &rank_one {
            all.push(direct_sum(a, b).unwrap().sum.as_ref().clone());
        }
    }
    for seed in 0..20 {
        let field = if seed % 2 == 0 { q } else { FieldSpec::Prime(101) };
        let spec = RandomSpec { field, n, k: 1, max_rank: 2, max_degree: 2 };
        all.push(random_factorization(&mut rng(seed), &spec).unwrap());
    }
    all
}

fn root_model() -> Check {
    let q = FieldSpec::Rationals;
    for n in 2..=8 {
        check_four_term(n).map_err(err)?.map_err(|f| format!("n = {n}: {f}"))?;
        let f = mult_by_u(q, n, 0).map_err(err)?;
        let k0 = skyscraper(q, n, 0).map_err(err)?;
        ensure(is_isomorphic(&kernel(&f).map_err(err)?.0, &k0).map_err(err)?, || format!("n = {n}: ker ≄ k₀"))?;
        ensure(is_isomorphic(&cokernel(&f).map_err(err)?.0, &k0).map_err(err)?, || format!("n = {n}: coker ≄ k₀"))?;
        ensure(ext1_cyclic(n, 0, 0).map_err(err)? == 0, || format!("n = {n}: k₀ has self-extensions"))?;
    }
    for n in 2..=6 {
        for a in 0..n {
            for b in 0..n {
                let (_, e) = ext_via_resolution(a, &skyscraper(q, n, b).map_err(err)?).map_err(err)?;
                ensure(e == ext1_cyclic(n, a, b).map_err(err)?, || format!("Ext¹(k_{a}, k_{b}) mismatch for n = {n}"))?;
            }
        }
    }
    ensure(ext1_cyclic(1, 0, 0).is_err(), || "n = 1 accepted".into())?;
    let mut inputs = 0;
    for n in 2..=4 {
        for m in rank_le_two_over_t(n) {
            let s = phi(&m).map_err(err)?;
            ensure(s.to_factorization().map_err(err)? == m, || format!("phi roundtrip fails on {m}"))?;
            ensure(phi(&twist(&m, 1)).map_err(err)? == s.shift_grading(1), || format!("phi∘twist ≠ shift∘phi on {m}"))?;
            inputs += 1;
        }
    }
    Ok(format!("n ≤ 8 sequences exact, Ext table n ≤ 6, phi on {inputs} inputs"))
}

fn census_counts() -> Check {
    let mut objects = 0;
    for n in 2..=4 {
        for k in 1..=5 {
            let list = enumerate_monomial(n, k).map_err(err)?;
            let nontrivial = list.iter().filter(|o| !classify_trivial(o)).count();
            let expected = binomial(k + n - 1, n - 1) - n;
            ensure(nontrivial == expected, || format!("(n, k) = ({n}, {k}): {nontrivial} nontrivial, expected {expected}"))?;
            if n == 2 {
                ensure(nontrivial == k - 1, || format!("k = {k}: {nontrivial} ≠ k − 1"))?;
            }
            for o in &list {
                let z = is_stably_zero(&o.to_factorization(FieldSpec::Rationals).map_err(err)?).map_err(err)?;
                ensure(z == classify_trivial(o), || format!("{o:?}: classify_trivial disagrees with is_stably_zero"))?;
                objects += 1;
            }
        }
    }
    Ok(format!("counts for n ≤ 4, k ≤ 5; {objects} objects classified"))
}

fn cli_determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("mfn-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let q = FieldSpec::Rationals;
    let x = PolyMatrix::scalar(&Poly::x(q), 1);
    let m = MatrixFactorization::new(Potential::monomial(q, 2, 2).map_err(err)?, vec![x.clone(), x]).map_err(err)?;
    let obj = dir.join("xx.json");
    std::fs::write(&obj, Document::factorization(&m).serialize()).map_err(err)?;
    let mor = dir.join("f.json");
    let f = MfMorphism::identity(m.clone()).scale(&Poly::x(q));
    std::fs::write(&mor, Document::morphism(&f).serialize()).map_err(err)?;
    let (obj, mor) = (obj.to_str().unwrap().to_string(), mor.to_str().unwrap().to_string());
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", &obj],
        vec!["verify", "--seed", "11", "--n", "3", "--k", "3", "--field", "101"],
        vec!["twist", &obj],
        vec!["twist", "--seed", "12", "--n", "4", "--k", "2", "--by", "-1"],
        vec!["shift", "--seed", "13", "--n", "3", "--k", "2"],
        vec!["cone", &mor],
        vec!["cone", "--seed", "14", "--n", "2", "--k", "3"],
        vec!["shom", &obj],
        vec!["shom", "--seed", "15", "--n", "3", "--k", "2"],
        vec!["stablyzero", "--seed", "16", "--n", "2", "--k", "3"],
        vec!["census", "--n", "3", "--k", "2"],
        vec!["rootstack-check", "--n", "3"],
        vec!["oracle-shom", "--seed", "15", "--n", "3", "--k", "2"],
    ];
    for args in &runs {
        let run = || Command::new(env!("CARGO_BIN_EXE_mfn")).args(args).env_remove("MFN_MAX_DEGREE").output().map_err(err);
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() == Some(0), || format!("{args:?} exited with {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.status.code() == b.status.code(), || {
            format!("{args:?} is not deterministic")
        })?;
        if let Err(e) = Document::parse(&String::from_utf8_lossy(&a.stdout)) {
            return Err(format!("{args:?} produced an unreadable document: {e}"));
        }
    }
    Ok(format!("{} subcommand invocations byte-identical", runs.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, u64, fn() -> Check); 8] = [
        ("1 Frobenius structure", 60, frobenius_structure),
        ("2 stable-category soundness", 30, stable_soundness),
        ("3 oracle equivalence", 300, oracle_equivalence),
        ("4 triangulated sanity", 120, triangulated_sanity),
        ("5 twist/shift functoriality", 180, twist_shift_functoriality),
        ("6 root-stack model", 30, root_model),
        ("7 census counts", 300, census_counts),
        ("8 CLI determinism", 60, cli_determinism),
    ];
    let mut failures = Vec::new();
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let status = if result.is_ok() && !over { "PASS" } else { "FAIL" };
        let detail = match &result {
            Ok(s) if over => format!("{s}; exceeded the {limit} s limit"),
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        println!("{status} [{name}] {:.1} s (limit {limit} s): {detail}", elapsed.as_secs_f64());
        if status == "FAIL" {
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
