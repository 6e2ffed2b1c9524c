//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).

use num_bigint::BigInt;
use qtorus::dimensions::{full_report, global_dim_algebraic, mcconnell_pettit_generic, Flavor};
use qtorus::koszul::{
    bar_oracle, binomial, duality_check, hochschild_homology, Backend, KoszulElement,
    ModeCongruence, ModeSet,
};
use qtorus::lattice;
use qtorus::phase_arith::{rat_mat, ThetaMatrix};
use qtorus::qlaurent::{QLaurent, ScalingAutomorphism};
use qtorus::sampling::{self, ContextKind};
use qtorus::Ctx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn generic_2torus() -> Ctx {
    ThetaMatrix::from_single_form(vec![vec![0, 1], vec![-1, 0]]).unwrap()
}

fn root3_2torus() -> Ctx {
    ThetaMatrix::new(3, rat_mat(&[&[(0, 1), (1, 3)], &[(-1, 3), (0, 1)]]), vec![]).unwrap()
}

fn pass(criterion: u32, details: &str, t0: Instant) {
    println!("criterion {criterion:02}: PASS - {details} ({:.2?})", t0.elapsed());
}

fn kind_for(i: usize) -> ContextKind {
    match i % 3 {
        0 => ContextKind::Generic,
        1 => ContextKind::RootOfUnity,
        _ => ContextKind::Mixed,
    }
}

/// Criterion 1: d o d = 0 and augmentation o d = 0 exactly, for n in 1..=4
/// and 50 seeded random contexts each, within a minute.
#[test]
fn criterion_01_koszul_well_formedness() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0usize;
    for n in 1..=4usize {
        for i in 0..50 {
            let ctx = sampling::random_context(&mut rng, n, kind_for(i));
            for p in 1..=n {
                let e = sampling::random_koszul_element(&mut rng, &ctx, p, 2, 2);
                let de = e.differential();
                if p >= 2 {
                    assert!(de.differential().is_zero(), "d o d != 0 at n={n}, p={p}, context {i}");
                } else {
                    assert!(de.augmentation().is_zero(), "mu o d != 0 at n={n}, context {i}");
                }
                checked += 1;
            }
        }
    }
    assert!(t0.elapsed().as_secs() < 60, "criterion 1 exceeded a minute");
    pass(1, &format!("boundary identities exact on {checked} random elements"), t0);
}

/// Criterion 2: generic 2-torus dimension reports through the CLI surface.
#[test]
fn criterion_02_generic_2torus_reports() {
    let t0 = Instant::now();
    let dir = std::env::temp_dir().join("qtorus-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("generic2.ctx");
    std::fs::write(&path, "n = 2\nd = 1\ns = 1\nC = [[0, 0], [0, 0]]\nM1 = [[0, 1], [-1, 0]]\n")
        .unwrap();
    let run = |flavor: &str| -> serde_json::Value {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_qtorus"))
            .args(["report", "--input", path.to_str().unwrap(), "--flavor", flavor])
            .output()
            .expect("run qtorus");
        assert!(out.status.success(), "report --flavor {flavor} failed");
        serde_json::from_slice(&out.stdout).expect("valid JSON report")
    };
    let v = run("regular");
    for (key, expected) in [("dg", 1u64), ("w_dg", 1), ("db", 2), ("w_db", 2)] {
        assert_eq!(v["report"][key]["value"], expected, "regular {key}");
        assert_eq!(v["report"][key]["complete"], true);
    }
    for flavor in ["smooth", "holomorphic"] {
        let v = run(flavor);
        for key in ["dg", "w_dg", "db", "w_db"] {
            assert_eq!(v["report"][key]["value"], 2, "{flavor} {key}");
        }
    }
    pass(2, "regular dg=w.dg=1 db=w.db=2; smooth/holomorphic all four = 2", t0);
}

/// Criterion 3: generic n=2 untwisted homology is (1,2,1) concentrated at
/// (0,0), independently confirmed by the bar oracle at B = 3 on the interior
/// window, within five minutes.
#[test]
fn criterion_03_generic_hochschild_with_oracle() {
    let t0 = Instant::now();
    let ctx = generic_2torus();
    let id = ScalingAutomorphism::identity(&ctx);
    let table = hochschild_homology(&ctx, &id);
    let mults: Vec<u64> = table.rows.iter().map(|r| r.multiplicity).collect();
    assert_eq!(mults, vec![1, 2, 1]);
    for row in &table.rows {
        assert_eq!(row.modes.particular(), Some(vec![0, 0]));
        assert!(row.modes.kernel_lattice().is_empty(), "mode set must be the single mode (0,0)");
    }
    assert_eq!(table.box_counts(2), vec![1, 2, 1]);

    let oracle = bar_oracle(&ctx, &id, 3, 2, Backend::Auto, 303).unwrap();
    let mut windowed = 0;
    for m in &oracle.modes {
        for p in 0..=2usize {
            if let Some(dim) = m.dims[p] {
                windowed += 1;
                let expected = if m.gamma == vec![0, 0] { binomial(2, p) } else { 0 };
                assert_eq!(dim, expected, "oracle degree {p} at {:?}", m.gamma);
            }
        }
    }
    assert_eq!(oracle.dim_at(&[0, 0], 0), Some(1));
    assert_eq!(oracle.dim_at(&[0, 0], 1), Some(2));
    assert_eq!(oracle.dim_at(&[0, 0], 2), Some(1));
    assert!(t0.elapsed().as_secs() < 300, "criterion 3 exceeded five minutes");
    pass(3, &format!("dims (1,2,1) at (0,0); oracle agreement on {windowed} windowed checks"), t0);
}

/// Criterion 4: root-of-unity case (n=2, d=3): dg = 2 with certified witness
/// 3Z^2, congruence mode sets in all degrees, oracle agreement on interior
/// modes at B = 4 (degrees 0..1; degree 2 at B = 3, where its window lives).
#[test]
fn criterion_04_root_of_unity() {
    let t0 = Instant::now();
    let ctx = root3_2torus();
    let (dg, witness) = global_dim_algebraic(&ctx, 2);
    assert_eq!(dg.value, 2);
    assert!(dg.complete);
    let hnf = lattice::hnf_rows(&lattice::mat_from_i64(&witness.basis));
    let expected = lattice::mat_from_i64(&[vec![3, 0], vec![0, 3]]);
    assert_eq!(hnf, expected, "witness subgroup must be 3Z^2");

    let id = ScalingAutomorphism::identity(&ctx);
    let table = hochschild_homology(&ctx, &id);
    let congruence = ModeSet::new(
        2,
        vec![],
        vec![
            ModeCongruence { coeffs: vec![1, 0], rhs: 0, modulus: 3 },
            ModeCongruence { coeffs: vec![0, 1], rhs: 0, modulus: 3 },
        ],
    );
    for row in &table.rows {
        assert!(row.modes.same_set(&congruence), "degree {} mode set", row.degree);
    }

    let check_oracle = |bound: i64, max_degree: usize, seed: u64| -> usize {
        let oracle = bar_oracle(&ctx, &id, bound, max_degree, Backend::Auto, seed).unwrap();
        let mut windowed = 0;
        for m in &oracle.modes {
            for p in 0..=max_degree {
                if let Some(dim) = m.dims[p] {
                    windowed += 1;
                    let expected = if congruence.contains(&m.gamma) { binomial(2, p) } else { 0 };
                    assert_eq!(dim, expected, "B={bound} degree {p} at {:?}", m.gamma);
                }
            }
        }
        windowed
    };
    let w4 = check_oracle(4, 1, 404);
    let w3 = check_oracle(3, 2, 403);
    // the nonzero congruence modes are really exercised at B = 4
    let oracle4 = bar_oracle(&ctx, &id, 4, 1, Backend::Auto, 404).unwrap();
    assert_eq!(oracle4.dim_at(&[3, 0], 0), Some(1));
    assert_eq!(oracle4.dim_at(&[3, 0], 1), Some(2));
    assert_eq!(oracle4.dim_at(&[-3, 3], 1), Some(2));
    pass(4, &format!("dg=2 witness 3Z^2; congruence mode sets; oracle agreement on {} checks", w4 + w3), t0);
}

/// Criterion 5: commutative case: dg = db = n, full-lattice homology of
/// multiplicity binom(n,p) for n <= 3, oracle-confirmed for n <= 2.
#[test]
fn criterion_05_commutative() {
    let t0 = Instant::now();
    for n in 1..=3usize {
        let ctx = ThetaMatrix::commutative(n);
        let report = full_report(&ctx, Flavor::Regular, 2);
        assert_eq!(report.dg.dim.value, n);
        assert_eq!(report.db.dim.value, n);
        let id = ScalingAutomorphism::identity(&ctx);
        let table = hochschild_homology(&ctx, &id);
        for (p, row) in table.rows.iter().enumerate() {
            assert_eq!(row.multiplicity, binomial(n, p));
            assert!(row.modes.same_set(&ModeSet::full(n)), "full lattice at n={n}, p={p}");
        }
    }
    for (n, bound, max_degree) in [(1usize, 2i64, 1usize), (2, 3, 2)] {
        let ctx = ThetaMatrix::commutative(n);
        let id = ScalingAutomorphism::identity(&ctx);
        let oracle = bar_oracle(&ctx, &id, bound, max_degree, Backend::Auto, 505).unwrap();
        for m in &oracle.modes {
            for p in 0..=max_degree {
                if let Some(dim) = m.dims[p] {
                    assert_eq!(dim, binomial(n, p), "n={n} degree {p} at {:?}", m.gamma);
                }
            }
        }
    }
    pass(5, "dg = db = n and full-lattice multiplicities binom(n,p), oracle-confirmed for n <= 2", t0);
}

/// Criterion 6: the generic multiplicative-rank criterion.
#[test]
fn criterion_06_generic_criterion() {
    let t0 = Instant::now();
    // n = 3 with the three elementary skew forms: criterion true, dg = 1
    let e12 = vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]];
    let e13 = vec![vec![0, 0, 1], vec![0, 0, 0], vec![-1, 0, 0]];
    let e23 = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, -1, 0]];
    let c = vec![vec![qtorus::phase_arith::rq(0, 1); 3]; 3];
    let ctx = ThetaMatrix::new(1, c, vec![e12, e13, e23]).unwrap();
    assert!(mcconnell_pettit_generic(&ctx));
    let (dg, _) = global_dim_algebraic(&ctx, 2);
    assert_eq!(dg.value, 1);
    assert!(dg.complete);
    // n = 2 with s = 0: criterion false
    assert!(!mcconnell_pettit_generic(&root3_2torus()));
    pass(6, "criterion true with dg = 1 for three elementary forms; false for s = 0", t0);
}

/// Criterion 7: degree-reversing duality passes for id, the modular twist,
/// and three seeded random scalings, for n in {1,2,3} and 10 contexts each,
/// within two minutes.
#[test]
fn criterion_07_duality() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut checks = 0usize;
    for n in 1..=3usize {
        for i in 0..10 {
            let ctx = sampling::random_context(&mut rng, n, kind_for(i));
            let mut sigmas = vec![
                ScalingAutomorphism::identity(&ctx),
                ScalingAutomorphism::nakayama(&ctx),
            ];
            for _ in 0..3 {
                sigmas.push(sampling::random_scaling(&mut rng, &ctx));
            }
            for sigma in &sigmas {
                let r = duality_check(&ctx, sigma, 3);
                assert!(r.passed, "duality failed at n={n}, context {i}: {r:?}");
                assert_eq!(r.degrees.len(), n + 1);
                checks += 1;
            }
        }
    }
    assert!(t0.elapsed().as_secs() < 120, "criterion 7 exceeded two minutes");
    pass(7, &format!("{checks} duality checks passed in all degrees"), t0);
}

fn unimodular_inverse(u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = u.len();
    let m = lattice::mat_from_i64(u);
    let mut inv = vec![vec![0i64; n]; n];
    for j in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[j] = BigInt::from(1);
        let col = lattice::solve(&m, &e).expect("unimodular matrix is invertible over Z");
        for i in 0..n {
            inv[i][j] = i64::try_from(col[i].clone()).unwrap();
        }
    }
    inv
}

/// Criterion 8: invariance under basis changes of the mode lattice: 20
/// seeded unimodular transforms leave dg, db, the generic criterion, and
/// box-counted homology dimensions (with transformed boxes) unchanged.
#[test]
fn criterion_08_gl_invariance() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let contexts: Vec<Ctx> = vec![
        generic_2torus(),
        root3_2torus(),
        ThetaMatrix::commutative(3),
        sampling::random_context(&mut rng, 3, ContextKind::Mixed),
    ];
    let box_radius = 2i64;
    let mut transforms = 0usize;
    for ctx in &contexts {
        let n = ctx.n();
        let id = ScalingAutomorphism::identity(ctx);
        let base_dg = global_dim_algebraic(ctx, 2).0;
        let base_db = full_report(ctx, Flavor::Regular, 2).db.dim.value;
        let base_mp = mcconnell_pettit_generic(ctx);
        let base_set = hochschild_homology(ctx, &id).rows[0].modes.clone();
        let base_count = base_set.count_in_box(box_radius);
        for _ in 0..20 {
            let u = sampling::random_unimodular(&mut rng, n, 10);
            let u_inv = unimodular_inverse(&u);
            let conj = ctx.conjugate(&u).expect("conjugated context is valid");
            let conj_id = ScalingAutomorphism::identity(&conj);
            assert_eq!(global_dim_algebraic(&conj, 2).0, base_dg, "dg under transform");
            assert_eq!(full_report(&conj, Flavor::Regular, 2).db.dim.value, base_db);
            assert_eq!(mcconnell_pettit_generic(&conj), base_mp);
            // mode sets transform by g -> U^{-1} g: counts over the
            // transformed box agree pointwise with the original box
            let conj_set = hochschild_homology(&conj, &conj_id).rows[0].modes.clone();
            let mut transformed_count = 0usize;
            for gamma in ModeSet::full(n).enumerate_box(box_radius) {
                let mapped: Vec<i64> = (0..n)
                    .map(|i| (0..n).map(|j| u_inv[i][j] * gamma[j]).sum())
                    .collect();
                let lhs = base_set.contains(&gamma);
                let rhs = conj_set.contains(&mapped);
                assert_eq!(lhs, rhs, "membership at {gamma:?} vs {mapped:?}");
                if rhs {
                    transformed_count += 1;
                }
            }
            assert_eq!(transformed_count, base_count, "box-counted dims under transform");
            transforms += 1;
        }
    }
    pass(8, &format!("{transforms} unimodular transforms leave all reports invariant"), t0);
}

/// Criterion 9: seminorm layer: continuity inequality at rho in {1/2, 1, 2}
/// for 100 seeded pairs (1e-12 relative), exact-vs-numeric agreement to
/// 1e-10 relative, and the unimodularity guard.
#[test]
fn criterion_09_seminorms() {
    use qtorus::seminorms::{
        continuity_check, numeric_multiply, unimodularity_guard, NumericElement,
    };
    let t0 = Instant::now();
    let ctx = generic_2torus();
    let tau = [0.5877852522924731f64];
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for trial in 0..100 {
        let xa = sampling::random_qlaurent(&mut rng, &ctx, 4, 2);
        let xb = sampling::random_qlaurent(&mut rng, &ctx, 4, 2);
        let na = NumericElement::from_exact(&xa, &tau).unwrap();
        let nb = NumericElement::from_exact(&xb, &tau).unwrap();
        for rho in [0.5, 1.0, 2.0] {
            let rep = continuity_check(&ctx, &tau, &na, &nb, rho, 2, 1e-12).unwrap();
            assert!(rep.passed(), "trial {trial}, rho {rho}: {rep:?}");
        }
        let numeric = numeric_multiply(&ctx, &tau, &na, &nb).unwrap();
        let exact = NumericElement::from_exact(&xa.multiply(&xb), &tau).unwrap();
        for (mode, c) in numeric.terms() {
            let reference = exact.coeff(mode);
            assert!(
                (c - reference).norm() <= 1e-10 * reference.norm().max(1.0),
                "trial {trial}: product deviation at {mode}"
            );
        }
    }
    let err = unimodularity_guard(&[vec![1.0, 2.0], vec![0.5, 1.0]]).unwrap_err();
    assert!(err.to_string().contains("no nonzero completion"));
    assert!(unimodularity_guard(&[vec![1.0, 1.0], vec![1.0, 1.0]]).is_ok());
    pass(9, "continuity and exact-vs-numeric agreement on 100 pairs; guard rejects |q| != 1", t0);
}

/// Criterion 10: associativity (the 2-cocycle identity of the phase
/// convention) on 200 seeded random triples per n in 1..=4. The gate for
/// everything else.
#[test]
fn criterion_10_associativity() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut checked = 0usize;
    for n in 1..=4usize {
        for i in 0..200 {
            let ctx = sampling::random_context(&mut rng, n, kind_for(i));
            let terms = rng.random_range(1..=3usize);
            let a = sampling::random_qlaurent(&mut rng, &ctx, terms, 2);
            let b = sampling::random_qlaurent(&mut rng, &ctx, terms, 2);
            let c = sampling::random_qlaurent(&mut rng, &ctx, terms, 2);
            let lhs = a.multiply(&b).multiply(&c);
            let rhs = a.multiply(&b.multiply(&c));
            assert_eq!(lhs, rhs, "associativity failed at n={n}, trial {i}");
            checked += 1;
        }
    }
    pass(10, &format!("exact associativity on {checked} random triples"), t0);
}

/// The boundary identity also holds for arbitrary sums, not just the random
/// elements of criterion 1 (spot check with a unit coefficient sum).
#[test]
fn koszul_identity_on_structured_elements() {
    let t0 = Instant::now();
    let ctx = generic_2torus();
    let e1 = KoszulElement::tensor(
        &QLaurent::generator(&ctx, 0, 2).add(&QLaurent::one(&ctx)),
        &qtorus::koszul::WedgeIndex::new(vec![0, 1]),
        &QLaurent::generator(&ctx, 1, -1),
    );
    assert!(e1.differential().differential().is_zero());
    pass(0, "structured element boundary identity", t0);
}
