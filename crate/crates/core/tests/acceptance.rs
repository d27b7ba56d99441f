//! Acceptance run: one PASS/FAIL line per criterion, all comparisons exact.

mod common;

use std::time::{Duration, Instant};

use common::props::{self, CASES};
use common::{bundle, bundle_over, document, mat, order, qs, z3};
use hopforders::action::kron_vec;
use hopforders::cli::GroupInput;
use hopforders::freeness::generator_matrix;
use hopforders::groups::{
    classify_type, detect_induced, enumerate_regular_subgroups, left_translations, right_translations, Permutation,
    RegularSubgroup,
};
use hopforders::induction::{
    base_change_order, compare_tensor_order, hnf_factor_identity, tracy_singh_permutation, verify_induced_generator,
    verify_kronecker_theorem, verify_tensor_order, InducedSetup,
};
use hopforders::linalg::hnf;
use hopforders::order::{associated_order, OrderBasis};
use hopforders::{CoefficientRing, Error, LatticeBasis, Matrix, Rational};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn columns(cols: &[&[&str]]) -> Matrix {
    Matrix::from_columns(&cols.iter().map(|c| qs(c)).collect::<Vec<_>>()).unwrap()
}

fn same_lattice(a: &Matrix, b: &Matrix, ring: &CoefficientRing) -> bool {
    let a = LatticeBasis::new(a.clone(), ring.clone()).unwrap();
    a.lattice_equal(&LatticeBasis::new(b.clone(), ring.clone()).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let b = bundle("quadratic");
    ensure(b.matrix() == &Matrix::from_ints(&[[1, 1], [0, 0], [0, 0], [1, -1]]), "M(H,L)")?;
    let o = associated_order(&b).unwrap();
    ensure(o.hnf().d == Matrix::from_ints(&[[1, 1], [0, 2]]), "HNF")?;
    let ring = o.ring();
    ensure(same_lattice(o.basis_in_w(), &columns(&[&["1", "0"], &["-1/2", "1/2"]]), ring), "span{1,(-1+s)/2}")?;
    ensure(same_lattice(o.basis_in_w(), &columns(&[&["1/2", "1/2"], &["1/2", "-1/2"]]), ring), "idempotent span")?;
    let c = generator_matrix(&o, &qs(&["1", "1"])).unwrap();
    ensure(c.d_beta == Matrix::from_ints(&[[1, 0], [1, -1]]), "D_{1+z}")?;
    ensure(ring.is_unit(&c.det), "1+z free")
}

fn criterion_2() -> Outcome {
    let b = bundle("exeig_q3");
    ensure(b.ring() == &z3(), "ring Z_(3)")?;
    let expected = columns(&[&["1/3", "0", "1/3"], &["1/3", "1/6", "-1/6"], &["1/3", "-1/6", "-1/6"]]);
    ensure(same_lattice(associated_order(&b).unwrap().basis_in_w(), &expected, b.ring()), "order lattice")?;
    let o = OrderBasis::with_basis(&b, expected).unwrap();
    for (i, row) in o.action_table().iter().enumerate() {
        for (j, image) in row.iter().enumerate() {
            let want = if i == j { b.field().unit_vector(j) } else { vec![Rational::from_integer(0.into()); 3] };
            ensure(image == &want, &format!("action table entry ({i},{j})"))?;
        }
    }
    ensure(o.verify().unwrap().all(), "verify_order")
}

fn criterion_3() -> Outcome {
    let over_z = bundle_over("exeig_q3_prime", &CoefficientRing::Integers);
    let d = hnf(over_z.matrix(), &CoefficientRing::Integers).unwrap().d;
    ensure(d == Matrix::from_ints(&[[1, 0, 2], [0, 1, 3], [0, 0, 6]]), "HNF over Z")?;
    let o = order("exeig_q3_prime");
    let expected = columns(&[&["1", "0", "0"], &["0", "1", "0"], &["1/3", "0", "1/3"]]);
    ensure(same_lattice(o.basis_in_w(), &expected, o.ring()), "order lattice")?;
    let c = generator_matrix(&o, &qs(&["0", "1", "0"])).unwrap();
    ensure(c.d_beta == Matrix::from_ints(&[[0, 3, -1], [1, 9, 0], [0, 2, 0]]), "D_alpha")?;
    ensure(c.det == Rational::from_integer((-2).into()), "det -2")?;
    ensure(o.ring().is_unit(&c.det), "alpha free")
}

fn fixed_basis_pair() -> InducedSetup {
    InducedSetup::with_factor_orders(order("exeig_q3_prime"), order("q3_i")).unwrap()
}

fn criterion_4() -> Outcome {
    let s = fixed_basis_pair();
    let ring = s.ring().clone();
    ensure(verify_kronecker_theorem(&s).unwrap(), "P M = M1 (x) M2")?;
    let d1 = Matrix::from_ints(&[[1, 0, -1], [0, 1, 0], [0, 0, 3]]);
    let d_bar = Matrix::from_ints(&[[1, -1], [0, 2]]);
    ensure(s.left_order().hnf().d == d1, "D1 is the local HNF")?;
    ensure(same_lattice(&s.right_order().hnf().d.transpose(), &d_bar.transpose(), &ring), "D bar up to units")?;
    let d = d1.kronecker(&d_bar);
    let expected_d = Matrix::from_ints(&[
        [1, -1, 0, 0, -1, 1],
        [0, 2, 0, 0, 0, -2],
        [0, 0, 1, -1, 0, 0],
        [0, 0, 0, 2, 0, 0],
        [0, 0, 0, 0, 3, -3],
        [0, 0, 0, 0, 0, 6],
    ]);
    ensure(d == expected_d, "D = D1 (x) D bar")?;
    let expected_inv = mat(&[
        &["1", "1/2", "0", "0", "1/3", "1/6"],
        &["0", "1/2", "0", "0", "0", "1/6"],
        &["0", "0", "1", "1/2", "0", "0"],
        &["0", "0", "0", "1/2", "0", "0"],
        &["0", "0", "0", "0", "1/3", "1/6"],
        &["0", "0", "0", "0", "0", "1/6"],
    ]);
    ensure(d.inverse().unwrap() == expected_inv, "D inverse")?;
    ensure(hnf_factor_identity(&s).unwrap(), "canonical D spans the same lattice")?;
    let induced = associated_order(s.induced()).unwrap();
    let d_m = &induced.hnf().content;
    ensure(same_lattice(induced.basis_in_w(), &expected_inv.scale(&d_m.recip()), &ring), "order from D inverse")?;

    let [w1, w2, w3]: [Vec<Rational>; 3] = [qs(&["1", "0", "0"]), qs(&["0", "1", "0"]), qs(&["0", "0", "1"])];
    let (e1, e2) = (qs(&["1", "0"]), qs(&["0", "1"]));
    let half = |x: &[Rational], y: &[Rational]| x.iter().zip(y).map(|(a, b)| (a + b) / Rational::from_integer(2.into())).collect::<Vec<_>>();
    let third = |x: &[Rational], y: &[Rational]| x.iter().zip(y).map(|(a, b)| (a + b) / Rational::from_integer(3.into())).collect::<Vec<_>>();
    let e2p = half(&e1, &e2);
    let w3p = third(&w1, &w3);
    let product = Matrix::from_columns(&[
        kron_vec(&w1, &e1),
        kron_vec(&w1, &e2p),
        kron_vec(&w2, &e1),
        kron_vec(&w2, &e2p),
        kron_vec(&w3p, &e1),
        kron_vec(&w3p, &e2p),
    ])
    .unwrap();
    ensure(same_lattice(induced.basis_in_w(), &product, &ring), "induced order = product basis")?;
    ensure(verify_tensor_order(&s).unwrap() && compare_tensor_order(&s).unwrap().equal, "tensor order")?;

    let g = verify_induced_generator(&s, &qs(&["0", "1", "0"]), &qs(&["1", "1"])).unwrap();
    ensure(g.product_beta == qs(&["0", "0", "1", "1", "0", "0"]), "gamma delta = alpha(1+z)")?;
    ensure(g.det == Rational::from_integer((-4).into()), "det -4")?;
    ensure(g.free && ring.is_unit(&g.det), "alpha(1+z) free")?;
    ensure(g.kronecker_consistent, "D_{gamma delta} = D_gamma (x) D_delta")
}

fn criterion_5() -> Outcome {
    let z3 = z3();
    let s = InducedSetup::with_factor_orders(
        associated_order(&bundle_over("exeig_q3", &z3)).unwrap(),
        associated_order(&bundle_over("q3_sqrt_m3", &z3)).unwrap(),
    )
    .unwrap();
    ensure(verify_kronecker_theorem(&s).unwrap(), "P M = M1 (x) M2")?;
    let scalars: [[i64; 6]; 6] = [
        [1, 1, 1, 1, 1, 1],
        [1, -1, 1, -1, 1, -1],
        [0, 0, 3, 3, -3, -3],
        [0, 0, 3, -3, -3, 3],
        [2, 2, -1, -1, -1, -1],
        [2, -2, -1, 1, -1, 1],
    ];
    let table = s.induced().table();
    for (i, row) in scalars.iter().enumerate() {
        let labels: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
        ensure(table.rep_of_basis(i) == Matrix::diagonal(&labels), &format!("row {}", table.hopf_labels()[i]))?;
    }
    ensure(table.hopf_labels()[3] == "w2*e2", "w2 (x) eta2 label")?;
    ensure(!s.is_disjoint().unwrap(), "disjointness false")?;
    ensure(matches!(verify_tensor_order(&s), Err(Error::NotArithmeticallyDisjoint)), "tensor order refused")?;
    ensure(matches!(base_change_order(&s, None), Err(Error::NotArithmeticallyDisjoint)), "base change refused")
}

fn criterion_6() -> Outcome {
    let s = fixed_basis_pair();
    let alpha = qs(&["0", "1", "0"]);
    let r = base_change_order(&s, Some(&alpha)).unwrap();
    ensure(r.lattice_eq, "O_K lattice of H1 (x) F = span{v_i z_l}")?;
    let expected = s.left_order().basis_in_w().kronecker(&Matrix::identity(2));
    ensure(same_lattice(r.order.basis_in_w(), &expected, s.ring()), "second route")?;
    ensure(r.gamma_free == Some(true), "alpha free over the base-changed order")
}

fn criterion_7() -> Outcome {
    ensure(tracy_singh_permutation(2, 2).cycle_string() == "(3,5)(4,6)(11,13)(12,14)", "r = u = 2")?;
    ensure(
        tracy_singh_permutation(3, 2).cycle_string()
            == "(3,5,9,7)(4,6,10,8)(15,17,21,19)(16,18,22,20)(27,29,33,31)(28,30,34,32)",
        "r = 3, u = 2",
    )
}

fn criterion_8() -> Outcome {
    let c2 = Permutation::new(vec![1, 0]).unwrap();
    ensure(enumerate_regular_subgroups(2, &[c2]).unwrap().len() == 1, "degree 2")?;
    let s3_on_3 = [Permutation::new(vec![1, 2, 0]).unwrap(), Permutation::new(vec![0, 2, 1]).unwrap()];
    ensure(enumerate_regular_subgroups(3, &s3_on_3).unwrap().len() == 1, "degree 3")?;

    let (data, decompositions) = match document("s3_group").group().unwrap() {
        GroupInput::Cayley { data, decompositions } => (data, decompositions),
        GroupInput::Action { .. } => return Err("s3 fixture is a Cayley table".into()),
    };
    let found = enumerate_regular_subgroups(6, &left_translations(&data)).unwrap();
    ensure(found.len() == 5, "five regular subgroups")?;
    let lambda = RegularSubgroup::new(6, left_translations(&data)).unwrap();
    let rho = RegularSubgroup::new(6, right_translations(&data)).unwrap();
    ensure(found.contains(&lambda) && found.contains(&rho), "lambda and rho present")?;
    let cyclic: Vec<&RegularSubgroup> =
        found.iter().filter(|n| classify_type(n).is_ok_and(|t| t.name == "C6")).collect();
    ensure(cyclic.len() == 3, "three of type C6")?;
    ensure(decompositions.len() == 3, "three decompositions")?;
    let mut used = vec![false; decompositions.len()];
    for n in &cyclic {
        let under: Vec<usize> = decompositions
            .iter()
            .enumerate()
            .filter(|(_, d)| {
                let g = data.clone().with_decomposition((*d).clone()).unwrap();
                detect_induced(&g, n).unwrap().is_some()
            })
            .map(|(i, _)| i)
            .collect();
        ensure(!under.is_empty(), "every C6 is induced")?;
        under.iter().for_each(|&i| used[i] = true);
    }
    ensure(used.iter().all(|&u| u), "every decomposition induces a C6")?;
    for n in found.iter().filter(|n| !cyclic.contains(n)) {
        for d in &decompositions {
            let g = data.clone().with_decomposition(d.clone()).unwrap();
            ensure(detect_induced(&g, n).unwrap().is_none(), "S3 subgroups are not induced")?;
        }
    }
    Ok(())
}

fn run_property<S, F>(name: &str, strategy: S, test: F) -> Outcome
where
    S: Strategy,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn criterion_9() -> Outcome {
    run_property("hnf round trip", props::tall_input(), props::hnf_round_trip)?;
    run_property("membership", props::membership_input(), props::lattice_membership)?;
    run_property("order membership", props::order_element_input(), props::order_membership)?;
    run_property("unimodular invariance", props::unimodular_input(), props::unimodular_invariance)?;
    run_property("content", props::pair_with_bases(), props::content_multiplicativity)?;
    run_property("generator determinant", props::generator_input(), props::generator_determinant)
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, fn() -> Outcome, u64); 9] = [
        (1, "quadratic order, HNF and free generator 1+z", criterion_1, 1),
        (2, "exeigQ3 order over Z_(3) with orthogonal idempotents", criterion_2, 1),
        (3, "exeigQ3' HNF, order and free generator alpha", criterion_3, 1),
        (4, "induced order of exeigQ3' x Q3(i) and generator alpha(1+z)", criterion_4, 2),
        (5, "degree 6 induced table and refused order claims", criterion_5, 1),
        (6, "base change of exeigQ3' along Q3(i)", criterion_6, 2),
        (7, "Tracy-Singh permutations", criterion_7, 1),
        (8, "regular subgroup enumeration and induced flags", criterion_8, 30),
        (9, "property suites, 200 cases each", criterion_9, 60),
    ];
    let mut failures = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < Duration::from_secs(limit), &format!("took {elapsed:?}, limit {limit} s"))
        });
        match outcome {
            Ok(()) => println!("PASS {n}: {name} ({elapsed:.2?})"),
            Err(why) => {
                failures += 1;
                println!("FAIL {n}: {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
