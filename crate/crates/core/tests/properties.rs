use num_traits::Zero;
use proptest::prelude::*;
use quatnil::classify::{detect_type_ii, is_sum_of_two_nilpotents, supertrace, verify_obstruction};
use quatnil::conjugacy::{are_conjugate, conjugator, ConjClass};
use quatnil::decompose::{decompose_two_nilpotents, verify_decomposition};
use quatnil::quaternion::quadratic_identity_check;
use quatnil::rational::{frac, int};
use quatnil::spectral::eigenvectors_for;
use quatnil::{Algebra, QMatrix, QVector, Quaternion, Rational, SearchConfig};

fn algebras() -> Vec<Algebra> {
    vec![
        Algebra::hamilton(),
        Algebra::new(int(-1), int(3)).unwrap(),
        Algebra::new(int(2), int(5)).unwrap(),
    ]
}

fn rational() -> impl Strategy<Value = Rational> + Clone {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn small_int() -> impl Strategy<Value = Rational> + Clone {
    (-2i64..=2).prop_map(int)
}

fn coords(r: impl Strategy<Value = Rational> + Clone) -> impl Strategy<Value = [Rational; 4]> {
    [r.clone(), r.clone(), r.clone(), r]
}

fn quaternion(alg: &Algebra) -> impl Strategy<Value = Quaternion> {
    let alg = alg.clone();
    coords(rational()).prop_map(move |c| alg.quaternion(c))
}

fn alg_index() -> impl Strategy<Value = usize> {
    0usize..3
}

fn matrix(alg: &Algebra, n: usize) -> impl Strategy<Value = QMatrix> {
    let alg = alg.clone();
    proptest::collection::vec(coords(small_int()), n * n).prop_map(move |cs| {
        let entries: Vec<Quaternion> = cs.into_iter().map(|c| alg.quaternion(c)).collect();
        let rows = entries.chunks(n).map(<[Quaternion]>::to_vec).collect();
        QMatrix::from_rows(&alg, rows).unwrap()
    })
}

/// Unit lower times unit upper triangular, so always invertible.
fn invertible(alg: &Algebra, n: usize) -> impl Strategy<Value = QMatrix> {
    (matrix(alg, n), matrix(alg, n)).prop_map(move |(a, b)| {
        let alg = a.algebra().clone();
        let mut l = QMatrix::identity(&alg, n);
        let mut u = QMatrix::identity(&alg, n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = a[(i, j)].clone();
                u[(j, i)] = b[(j, i)].clone();
            }
        }
        &l * &u
    })
}

fn trace_zero(m: QMatrix) -> QMatrix {
    let n = m.rows();
    let mut m = m;
    let mut w = Rational::zero();
    for i in 0..n - 1 {
        w += m[(i, i)].w();
    }
    let c = m[(n - 1, n - 1)].coords().clone();
    m[(n - 1, n - 1)] = m.algebra().quaternion([-w, c[1].clone(), c[2].clone(), c[3].clone()]);
    m
}

/// Straight multiplication table, independent of the library product.
fn naive_mul(p: &Quaternion, q: &Quaternion) -> Quaternion {
    let alg = p.algebra();
    let (a, b) = (alg.a().clone(), alg.b().clone());
    let [w1, x1, y1, z1] = p.coords().clone();
    let [w2, x2, y2, z2] = q.coords().clone();
    let ab = &a * &b;
    alg.quaternion([
        &w1 * &w2 + &a * &x1 * &x2 + &b * &y1 * &y2 - &ab * &z1 * &z2,
        &w1 * &x2 + &x1 * &w2 - &b * &y1 * &z2 + &b * &z1 * &y2,
        &w1 * &y2 + &y1 * &w2 + &a * &x1 * &z2 - &a * &z1 * &x2,
        &w1 * &z2 + &z1 * &w2 + &x1 * &y2 - &y1 * &x2,
    ])
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_matches_table((p, q, r) in alg_index().prop_flat_map(|ai| {
        let alg = &algebras()[ai];
        (quaternion(alg), quaternion(alg), quaternion(alg))
    })) {
        prop_assert_eq!(&p * &q, naive_mul(&p, &q));
        let sum = p.algebra().sum_of_products([(&p, &q), (&q, &r), (&r, &p)]);
        let direct = &(&naive_mul(&p, &q) + &naive_mul(&q, &r)) + &naive_mul(&r, &p);
        prop_assert_eq!(sum, direct);
    }

    #[test]
    fn quadratic_identity(c in coords(rational()), ai in alg_index()) {
        let q = algebras()[ai].quaternion(c);
        prop_assert!(quadratic_identity_check(&q));
        let lhs = &(&q.square() - &q.scale(&q.trace())) + &q.algebra().scalar(q.norm());
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn trace_and_norm_laws(c1 in coords(rational()), c2 in coords(rational()), ai in alg_index()) {
        let alg = &algebras()[ai];
        let (p, q) = (alg.quaternion(c1), alg.quaternion(c2));
        prop_assert_eq!((&p * &q).trace(), (&q * &p).trace());
        prop_assert_eq!((&p * &q).norm(), p.norm() * q.norm());
        if !p.is_zero() {
            prop_assert!((&p * &p.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugates_share_class(c1 in coords(rational()), c2 in coords(rational()), ai in alg_index()) {
        let alg = &algebras()[ai];
        let (q, g) = (alg.quaternion(c1), alg.quaternion(c2));
        prop_assume!(!g.is_zero());
        let p = q.conjugated_by(&g).unwrap();
        prop_assert!(are_conjugate(&p, &q).unwrap());
        prop_assert_eq!(ConjClass::of(&p), ConjClass::of(&q));
        let h = conjugator(&p, &q).unwrap();
        prop_assert_eq!(q.conjugated_by(&h).unwrap(), p);
    }

    #[test]
    fn matrix_product_associates_and_lifts(
        (a, b, c) in (matrix(&Algebra::hamilton(), 3), matrix(&Algebra::hamilton(), 3), matrix(&Algebra::hamilton(), 3))
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).to_real(), a.to_real().mul(&b.to_real()));
    }

    #[test]
    fn inverse_and_kernel(m in matrix(&Algebra::hamilton(), 3), p in invertible(&Algebra::hamilton(), 3)) {
        let alg = Algebra::hamilton();
        let pinv = p.invert().unwrap();
        prop_assert_eq!(&p * &pinv, QMatrix::identity(&alg, 3));
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len() + m.rank(), 3);
        for x in &ker {
            prop_assert!(m.apply(x).unwrap().is_zero());
        }
        prop_assert_eq!(m.to_real().rank(), 4 * m.rank());
    }

    #[test]
    fn reduced_trace_is_similarity_invariant(m in matrix(&Algebra::hamilton(), 3), p in invertible(&Algebra::hamilton(), 3)) {
        let conj = &(&p * &m) * &p.invert().unwrap();
        prop_assert_eq!(conj.reduced_trace(), m.reduced_trace());
    }

    #[test]
    fn eigenvector_scaling(m in matrix(&Algebra::hamilton(), 2), c in coords(small_int()), g in coords(small_int())) {
        let alg = Algebra::hamilton();
        let (q, g) = (alg.quaternion(c), alg.quaternion(g));
        prop_assume!(!g.is_zero());
        for x in eigenvectors_for(&m, &q).solution_basis {
            let mx = m.apply(&x).unwrap();
            prop_assert_eq!(&mx, &x.scale_right(&q));
            let y = x.scale_right(&g);
            let q2 = q.conjugated_by(&g.inv().unwrap()).unwrap();
            prop_assert_eq!(m.apply(&y).unwrap(), y.scale_right(&q2));
        }
    }

    #[test]
    fn strict_split_sums_back(m in matrix(&Algebra::hamilton(), 4)) {
        let alg = Algebra::hamilton();
        let mut m = m;
        for i in 0..4 {
            m[(i, i)] = alg.zero();
        }
        let (u, l) = m.strict_split().unwrap();
        prop_assert_eq!(&u + &l, m);
        prop_assert!(u.is_nilpotent() && l.is_nilpotent());
    }

    #[test]
    fn rank_one_factorisation(c in proptest::collection::vec(coords(small_int()), 3), r in proptest::collection::vec(coords(small_int()), 3)) {
        let alg = Algebra::hamilton();
        let col = QVector(c.into_iter().map(|x| alg.quaternion(x)).collect());
        let row: Vec<Quaternion> = r.into_iter().map(|x| alg.quaternion(x)).collect();
        prop_assume!(!col.is_zero() && row.iter().any(|x| !x.is_zero()));
        let m = quatnil::matrix::outer_product(&alg, &col, &row);
        prop_assert_eq!(m.rank(), 1);
        let (c2, r2) = m.rank1_factor().unwrap();
        prop_assert_eq!(quatnil::matrix::outer_product(&alg, &c2, &r2), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decision_is_sound(n in 2usize..=3, seed in proptest::collection::vec(coords(small_int()), 9), zero_trace in any::<bool>()) {
        let alg = Algebra::hamilton();
        let entries: Vec<Quaternion> = seed.into_iter().take(n * n).map(|c| alg.quaternion(c)).collect();
        let rows = entries.chunks(n).map(<[Quaternion]>::to_vec).collect();
        let mut m = QMatrix::from_rows(&alg, rows).unwrap();
        if zero_trace {
            m = trace_zero(m);
        }
        let d = is_sum_of_two_nilpotents(&m, &cfg()).unwrap();
        if d.answer {
            let out = decompose_two_nilpotents(&m, &cfg()).unwrap();
            prop_assert!(verify_decomposition(&m, &out.n1, &out.n2));
            prop_assert!(out.verify(&m));
        } else {
            prop_assert!(verify_obstruction(&m, &d));
            prop_assert!(decompose_two_nilpotents(&m, &cfg()).is_err());
        }
        if !m.reduced_trace().is_zero() {
            prop_assert!(!d.answer);
        }
    }

    #[test]
    fn similar_matrices_get_same_answer(m in matrix(&Algebra::hamilton(), 3), p in invertible(&Algebra::hamilton(), 3)) {
        let m = trace_zero(m);
        let conj = &(&p * &m) * &p.invert().unwrap();
        let (d1, d2) = (
            is_sum_of_two_nilpotents(&m, &cfg()).unwrap(),
            is_sum_of_two_nilpotents(&conj, &cfg()).unwrap(),
        );
        prop_assert_eq!(d1.answer, d2.answer);
        prop_assert_eq!(d1.reason, d2.reason);
    }

    #[test]
    fn supertrace_is_similarity_invariant(
        lambda in (-2i64..=2),
        c in proptest::collection::vec(coords(small_int()), 4),
        r in proptest::collection::vec(coords(small_int()), 4),
        p in invertible(&Algebra::hamilton(), 4),
    ) {
        let alg = Algebra::hamilton();
        let col = QVector(c.into_iter().map(|x| alg.quaternion(x)).collect());
        let row: Vec<Quaternion> = r.into_iter().map(|x| alg.quaternion(x)).collect();
        prop_assume!(!col.is_zero() && row.iter().any(|x| !x.is_zero()));
        let m = &QMatrix::scalar(&alg, 4, &alg.scalar(int(lambda))) + &quatnil::matrix::outer_product(&alg, &col, &row);
        let conj = &(&p * &m) * &p.invert().unwrap();
        let s1 = supertrace(&m).expect("scalar plus rank one");
        let s2 = supertrace(&conj).expect("similar to scalar plus rank one");
        prop_assert_eq!(s1, s2);
        let data = detect_type_ii(&conj).unwrap();
        prop_assert!(data.verify(&conj));
    }
}
