//! Properties shared by the property suite and the acceptance run.

use clap::Parser;
use hopforders::action::{ActionBundle, ActionTable};
use hopforders::cli::{execute, Cli, Report};
use hopforders::freeness::generator_matrix;
use hopforders::induction::{content_factorization, induce_action, verify_induced_generator};
use hopforders::linalg::{hnf, rat};
use hopforders::order::associated_order;
use hopforders::{CoefficientRing, LatticeBasis, Matrix, Rational};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{bundle_over, document, fixture, z3};

pub const CASES: u32 = 200;

pub fn ring_strategy() -> impl Strategy<Value = CoefficientRing> {
    prop_oneof![
        Just(CoefficientRing::Integers),
        Just(CoefficientRing::localized(2).unwrap()),
        Just(CoefficientRing::localized(3).unwrap()),
        Just(CoefficientRing::localized(5).unwrap()),
    ]
}

pub fn int_matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows).prop_map(|r| Matrix::from_ints(&r))
}

pub fn full_rank(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    int_matrix(rows, cols, 9).prop_filter("full column rank", move |m| m.rank() == cols)
}

/// A tall matrix scaled by `num/den`, as produced by an action matrix.
pub fn tall_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=3, 0usize..=3)
        .prop_flat_map(|(n, extra)| (full_rank(n + extra, n), 1i64..=7, 1i64..=12))
        .prop_map(|(m, num, den)| m.scale(&(rat(num) / rat(den))))
}

/// Products of elementary row operations that are invertible over `ring`.
pub fn unimodular(n: usize, ring: CoefficientRing) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((0..n, 0..n, -4i64..=4, 1i64..=12), 1..12).prop_map(move |ops| {
        let mut u = Matrix::identity(n);
        for (i, j, k, s) in ops {
            let mut e = Matrix::identity(n).to_rows();
            if i != j {
                e[i][j] = rat(k);
            } else if ring.is_unit(&rat(s)) {
                e[i][i] = rat(s);
            }
            u = &Matrix::from_rows(e).unwrap() * &u;
        }
        u
    })
}

pub fn is_integral(m: &Matrix, ring: &CoefficientRing) -> bool {
    m.entries().iter().all(|x| ring.is_integral(x))
}

/// The Hopf basis replaced by `w'_i = sum_k a[k][i] w_k`.
pub fn change_hopf_basis(t: &ActionTable, a: &Matrix) -> ActionTable {
    let n = t.dim();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|l| (0..n).map(|k| &a[(k, i)] * &t.entries()[k][j][l]).sum())
                        .collect()
                })
                .collect()
        })
        .collect();
    ActionTable::new(t.hopf_labels().to_vec(), t.field().clone(), entries).unwrap()
}

pub fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    (int_matrix(n, n, 3), 1i64..=4)
        .prop_filter("invertible", move |(m, _)| m.rank() == n)
        .prop_map(|(m, den)| m.scale(&(rat(1) / rat(den))))
}

pub const DISJOINT_PAIRS: &[(&str, &str, bool)] = &[
    ("quadratic", "golden", false),
    ("golden", "quadratic", false),
    ("golden", "trivial", false),
    ("exeig_q3_prime", "q3_i", true),
    ("exeig_q3", "q3_i", true),
    ("q3_i", "exeig_q3", true),
    ("exeig_q3", "golden", true),
    ("q3_sqrt_m3", "golden", true),
];

pub fn pair_bundles(idx: usize) -> (ActionBundle, ActionBundle) {
    let (l, r, local) = DISJOINT_PAIRS[idx];
    let ring = if local { z3() } else { CoefficientRing::Integers };
    (bundle_over(l, &ring), bundle_over(r, &ring))
}

pub fn dims(idx: usize) -> (usize, usize) {
    let (l, r) = pair_bundles(idx);
    (l.dim(), r.dim())
}

pub fn pair_with_bases() -> impl Strategy<Value = (usize, Matrix, Matrix)> {
    (0..DISJOINT_PAIRS.len()).prop_flat_map(|idx| {
        let (r, u) = dims(idx);
        (Just(idx), invertible(r), invertible(u))
    })
}

pub fn integral_vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(rat).collect())
}


const FIXTURES: &[&str] = &["quadratic", "exeig_q3", "exeig_q3_prime", "q3_i", "golden"];

fn dim_of(name: &str) -> usize {
    document(name).field.as_ref().unwrap().dim
}

pub fn tall_input() -> impl Strategy<Value = (Matrix, CoefficientRing)> {
    (tall_matrix(), ring_strategy())
}

pub fn hnf_round_trip((m, ring): (Matrix, CoefficientRing)) -> Result<(), TestCaseError> {
    let h = hnf(&m, &ring).unwrap();
    let scaled = m.scale(&h.content.recip());
    prop_assert_eq!(h.u.try_mul(&scaled).unwrap(), h.echelon());
    prop_assert!(ring.is_unit(&h.u.det().unwrap()));
    prop_assert!(is_integral(&h.u, &ring) && is_integral(&h.d, &ring));
    prop_assert!(h.d.is_upper_triangular());
    for i in 0..h.d.cols() {
        let pivot = &h.d[(i, i)];
        prop_assert_eq!(&ring.associate(pivot), pivot);
        if let Some(p) = ring.prime() {
            let v = ring.valuation(pivot).unwrap();
            prop_assert_eq!(pivot, &num::pow(rat(p as i64), v as usize));
        }
    }
    let again = hnf(&h.echelon(), &ring).unwrap();
    prop_assert_eq!(again.d, h.d);
    prop_assert_eq!(again.content, rat(1));
    Ok(())
}

pub fn unimodular_input() -> impl Strategy<Value = (Matrix, Matrix, CoefficientRing)> {
    (1usize..=4, ring_strategy()).prop_flat_map(|(n, ring)| (full_rank(n, n), unimodular(n, ring.clone()), Just(ring)))
}

pub fn unimodular_invariance((b, u, ring): (Matrix, Matrix, CoefficientRing)) -> Result<(), TestCaseError> {
    let lattice = LatticeBasis::new(b.clone(), ring.clone()).unwrap();
    let moved = LatticeBasis::new(&b * &u.transpose(), ring.clone()).unwrap();
    prop_assert!(lattice.lattice_equal(&moved).unwrap());
    prop_assert_eq!(hnf(&(&u * &b), &ring).unwrap().d, hnf(&b, &ring).unwrap().d);
    Ok(())
}

pub fn membership_input() -> impl Strategy<Value = (Matrix, Vec<Rational>, i64, CoefficientRing)> {
    (1usize..=4, ring_strategy()).prop_flat_map(|(n, ring)| (full_rank(n, n), integral_vector(n), 1i64..=12, Just(ring)))
}

pub fn lattice_membership((b, c, den, ring): (Matrix, Vec<Rational>, i64, CoefficientRing)) -> Result<(), TestCaseError> {
    let v: Vec<Rational> = b.mul_vec(&c).unwrap().iter().map(|x| x / rat(den)).collect();
    let lattice = LatticeBasis::new(b, ring.clone()).unwrap();
    let expected = c.iter().all(|x| ring.is_integral(&(x / rat(den))));
    prop_assert_eq!(lattice.contains(&v).unwrap(), expected);
    Ok(())
}

pub fn order_element_input() -> impl Strategy<Value = (&'static str, Vec<(i64, i64)>)> {
    prop::sample::select(FIXTURES)
        .prop_flat_map(|name| (Just(name), prop::collection::vec((-12i64..=12, 1i64..=12), dim_of(name))))
}

/// `h` acts integrally exactly when it lies in the lattice of the order.
pub fn order_membership((name, h): (&'static str, Vec<(i64, i64)>)) -> Result<(), TestCaseError> {
    let doc = document(name);
    let b = doc.bundle(&doc.ring(None).unwrap()).unwrap();
    let order = associated_order(&b).unwrap();
    let h: Vec<Rational> = h.into_iter().map(|(a, d)| rat(a) / rat(d)).collect();
    prop_assert_eq!(order.acts_integrally(&h).unwrap(), order.contains(&h).unwrap());
    Ok(())
}

pub fn content_multiplicativity((idx, a1, a2): (usize, Matrix, Matrix)) -> Result<(), TestCaseError> {
    let (l, r) = pair_bundles(idx);
    let ring = l.ring().clone();
    let l = ActionBundle::new(change_hopf_basis(l.table(), &a1), ring.clone()).unwrap();
    let r = ActionBundle::new(change_hopf_basis(r.table(), &a2), ring.clone()).unwrap();
    let setup = induce_action(&l, &r).unwrap();
    let c = content_factorization(&setup).unwrap();
    prop_assert!(c.equal_up_to_unit);
    prop_assert_eq!(ring.associate(&c.induced), ring.associate(&(&c.left * &c.right)));
    Ok(())
}

pub fn generator_input() -> impl Strategy<Value = (usize, Vec<Rational>, Vec<Rational>)> {
    (0..DISJOINT_PAIRS.len()).prop_flat_map(|idx| {
        let (r, u) = dims(idx);
        (Just(idx), integral_vector(r), integral_vector(u))
    })
}

/// `det D_{γδ} = det(D_γ)^u det(D_δ)^r`.
pub fn generator_determinant((idx, gamma, delta): (usize, Vec<Rational>, Vec<Rational>)) -> Result<(), TestCaseError> {
    let (l, r) = pair_bundles(idx);
    let (rd, ud) = (l.dim(), r.dim());
    let setup = induce_action(&l, &r).unwrap();
    let report = verify_induced_generator(&setup, &gamma, &delta).unwrap();
    let dg = generator_matrix(setup.left_order(), &gamma).unwrap().det;
    let dd = generator_matrix(setup.right_order(), &delta).unwrap().det;
    prop_assert_eq!(report.det, num::pow(dg, ud) * num::pow(dd, rd));
    prop_assert!(report.kronecker_consistent);
    Ok(())
}

pub fn report_input() -> impl Strategy<Value = (&'static str, Vec<i64>, usize)> {
    prop::sample::select(FIXTURES)
        .prop_flat_map(|name| (Just(name), prop::collection::vec(-5i64..=5, dim_of(name)), 0usize..3))
}

pub fn report_round_trip((name, beta, command): (&'static str, Vec<i64>, usize)) -> Result<(), TestCaseError> {
    let path = fixture(name).to_string_lossy().into_owned();
    let beta = beta.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let args: Vec<&str> = match command {
        0 => vec!["hopforders", "order", &path],
        1 => vec!["hopforders", "free", &path, "--beta", &beta],
        _ => vec!["hopforders", "check", &path],
    };
    let report = execute(&Cli::try_parse_from(args).unwrap()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    prop_assert_eq!(back, report);
    Ok(())
}
