#![allow(clippy::needless_range_loop)]

use abhol_core::bismut::holonomy_algebra;
use abhol_core::catalog::named::m_lambda;
use abhol_core::catalog::{aff, all_default, family8, heisenberg, jacobi_kernel, AssocAlgebra};
use abhol_core::forms::combinations;
use abhol_core::hermitian::is_j_invariant;
use abhol_core::linalg::{kernel, unit};
use abhol_core::{Algebra, Complex, Form, Hermitian, Mode, QMatrix, Subspace, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn small() -> impl Strategy<Value = Q> {
    prop_oneof![3 => Just(q(0)), 2 => (-3i64..=3).prop_map(q), 1 => (-3i64..=3, 1i64..=3).prop_map(|(a, b)| Q::new(a.into(), b.into()))]
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(small(), dim)
}

fn form(dim: usize, degree: usize) -> impl Strategy<Value = Form> {
    let keys = combinations(dim, degree);
    proptest::collection::vec(small(), keys.len())
        .prop_map(move |cs| Form::from_terms(dim, degree, keys.clone().into_iter().zip(cs)))
}

/// Sparse random structure constants, Jacobi not enforced.
fn raw_algebra() -> impl Strategy<Value = Algebra> {
    (3usize..=6).prop_flat_map(|dim| {
        let triples: Vec<(usize, usize, usize)> =
            (1..=dim).flat_map(|i| (i + 1..=dim).flat_map(move |j| (1..=dim).map(move |k| (i, j, k)))).collect();
        proptest::sample::subsequence(triples, 0..=4)
            .prop_flat_map(|picked| {
                let n = picked.len();
                (Just(picked), proptest::collection::vec(prop_oneof![Just(q(1)), Just(q(-1)), Just(q(2))], n))
            })
            .prop_map(move |(picked, cs)| Algebra::from_structure(dim, picked.into_iter().zip(cs), Mode::Lax).unwrap())
    })
}

fn jacobi_sum_vanishes(alg: &Algebra) -> bool {
    let m = alg.dim();
    let e = |i: usize| unit::<Q>(m, i);
    let br = |x: &[Q], y: &[Q]| alg.bracket(x, y).unwrap();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let (x, y, z) = (e(a), e(b), e(c));
                let s1 = br(&br(&x, &y), &z);
                let s2 = br(&br(&y, &z), &x);
                let s3 = br(&br(&z, &x), &y);
                if s1.iter().zip(&s2).zip(&s3).any(|((u, v), w)| !(u.clone() + v.clone() + w.clone()).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// `(α∧β)(v_1…v_{p+q})` as a sum over `(p, q)`-shuffles.
fn shuffle_eval(a: &Form, b: &Form, vs: &[Vec<Q>]) -> Q {
    let (p, n) = (a.degree(), vs.len());
    let mut total = q(0);
    for s in combinations(n, p) {
        let rest: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
        let inversions: usize = s.iter().enumerate().map(|(pos, &i)| i - 1 - pos).sum();
        let pick = |idx: &[usize]| idx.iter().map(|&i| vs[i - 1].clone()).collect::<Vec<_>>();
        let term = a.eval(&pick(&s)).unwrap() * b.eval(&pick(&rest)).unwrap();
        total = if inversions.is_multiple_of(2) { total + term } else { total - term };
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_iff_d_squared_vanishes(alg in raw_algebra()) {
        let d2_zero = (1..=alg.dim()).all(|k| alg.de(k).differential(&alg).unwrap().is_zero());
        prop_assert_eq!(alg.is_lie_algebra(), d2_zero);
        prop_assert_eq!(alg.jacobi_defect().is_empty(), jacobi_sum_vanishes(&alg));
    }

    #[test]
    fn differential_matches_bracket(alg in raw_algebra(), seed in any::<u64>()) {
        let m = alg.dim();
        let x: Vec<Q> = (0..m).map(|i| q(((seed >> (2 * i)) % 5) as i64 - 2)).collect();
        let y: Vec<Q> = (0..m).map(|i| q(((seed >> (2 * i + 20)) % 5) as i64 - 2)).collect();
        let br = alg.bracket(&x, &y).unwrap();
        for k in 1..=m {
            let lhs = alg.de(k).eval(&[x.clone(), y.clone()]).unwrap();
            prop_assert_eq!(lhs, -br[k - 1].clone());
        }
    }

    #[test]
    fn center_is_common_kernel_of_ad(alg in raw_algebra()) {
        let m = alg.dim();
        let mut rows = Vec::new();
        for i in 0..m {
            rows.extend(alg.ad(&unit(m, i)).unwrap().rows());
        }
        let oracle = Subspace::span(m, kernel(&rows, m));
        prop_assert_eq!(alg.center(), oracle);
    }

    #[test]
    fn wedge_associative_and_graded_commutative(
        (a, b, c) in (2usize..=5).prop_flat_map(|n| (1usize..=2, 1usize..=2, 0usize..=1).prop_flat_map(move |(p, r, s)| (form(n, p), form(n, r), form(n, s))))
    ) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let expected = if a.degree() * b.degree() % 2 == 0 { ba } else { -ba };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn wedge_eval_matches_shuffle_sum(
        (a, b, vs) in (3usize..=4).prop_flat_map(|n| (1usize..=2, 1usize..=2).prop_flat_map(move |(p, r)| (form(n, p), form(n, r), proptest::collection::vec(vector(n), p + r))))
    ) {
        prop_assert_eq!(a.wedge(&b).unwrap().eval(&vs).unwrap(), shuffle_eval(&a, &b, &vs));
    }

    #[test]
    fn apply_j_twice_is_sign_of_degree(
        (f, p) in (1usize..=3).prop_flat_map(|n| (1usize..=3).prop_flat_map(move |k| (form(2 * n, k.min(2 * n)), proptest::collection::vec(vector(2 * n), 2 * n))))
    ) {
        let m = f.ambient_dim();
        let p = QMatrix::from_rows(p);
        prop_assume!(p.determinant() != q(0));
        let j0 = Complex::standard(m).unwrap();
        let j = &(&p * j0.matrix()) * &p.inverse().unwrap();
        let j = Complex::new(j).unwrap();
        let twice = f.apply_j(j.matrix()).unwrap().apply_j(j.matrix()).unwrap();
        let expected = if f.degree() % 2 == 0 { f.clone() } else { -f.clone() };
        prop_assert_eq!(twice, expected);
    }

    #[test]
    fn aff_center_is_annihilator_pairs(
        (v, w, products) in (1usize..=3, 1usize..=2).prop_flat_map(|(v, w)| {
            let n = v * (v + 1) / 2 * w;
            (Just(v), Just(w), proptest::collection::vec(small(), n))
        })
    ) {
        // A = V + W with V V in W and W annihilating everything: associative, nilpotent.
        let d = v + w;
        let mut entries = Vec::new();
        let mut it = products.into_iter();
        for i in 1..=v {
            for j in i..=v {
                for k in v + 1..=d {
                    entries.push(((i, j, k), it.next().unwrap()));
                }
            }
        }
        let a = AssocAlgebra::new(d, entries).unwrap();
        prop_assert!(a.is_associative() && a.is_nilpotent());
        // Ann(A) by direct kernel of x -> (x e_1, ..., x e_d).
        let mut rows = vec![vec![q(0); d]; d * d];
        for x in 0..d {
            for y in 0..d {
                for (k, c) in a.mul(&unit(d, x), &unit(d, y)).into_iter().enumerate() {
                    rows[y * d + k][x] = c;
                }
            }
        }
        let ann = kernel(&rows, d);
        let mut expected = Vec::new();
        for b in &ann {
            let (mut uu, mut vv) = (vec![q(0); 2 * d], vec![q(0); 2 * d]);
            for i in 0..d {
                uu[2 * i] = b[i].clone();
                vv[2 * i + 1] = b[i].clone();
            }
            expected.push(uu);
            expected.push(vv);
        }
        let center = aff(&a).unwrap().structure.algebra().center();
        prop_assert_eq!(center, Subspace::span(2 * d, expected));
    }

    #[test]
    fn ii1_shape_is_two_step_lie(c in proptest::collection::vec(small(), 16)) {
        prop_assume!(c.iter().any(|x| *x != q(0)));
        let coeffs: [Q; 22] = std::array::from_fn(|i| if i < 6 { q(0) } else { c[i - 6].clone() });
        let f = family8(&coeffs);
        prop_assert!(f.jacobi_ok);
        prop_assert_eq!(f.algebra.series().nilpotency_step, Some(2));
    }

    #[test]
    fn ii2_dichotomy(c5 in proptest::collection::vec(small(), 3), c6 in proptest::collection::vec(small(), 3), t in proptest::collection::vec(small(), 16)) {
        let (c5, c6): ([Q; 3], [Q; 3]) = (std::array::from_fn(|i| c5[i].clone()), std::array::from_fn(|i| c6[i].clone()));
        let ker = jacobi_kernel(&c5, &c6);
        let mix = |w: &[Q]| {
            let mut v = vec![q(0); 8];
            for (b, s) in ker.iter().zip(w) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.clone() + s.clone() * y.clone();
                }
            }
            v
        };
        let (c7, c8) = (mix(&t[..8]), mix(&t[8..]));
        let coeffs: [Q; 22] = std::array::from_fn(|i| match i {
            0..=2 => c5[i].clone(),
            3..=5 => c6[i - 3].clone(),
            6..=13 => c7[i - 6].clone(),
            _ => c8[i - 14].clone(),
        });
        let f = family8(&coeffs);
        prop_assert!(f.jacobi_ok);
        if f.algebra.center().dim() == 2 {
            let (d5, d6) = (f.algebra.de(5).coordinates(), f.algebra.de(6).coordinates());
            let both_zero = f.algebra.de(5).is_zero() && f.algebra.de(6).is_zero();
            let independent = Subspace::span(d5.len(), [d5, d6]).dim() == 2;
            prop_assert!(both_zero || independent);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn theorem_holds_on_generated_structures(
        pick in 0usize..3, n in 2usize..=4, k in 0usize..=1, r in 1usize..=2,
        a in small(), b in small(),
    ) {
        let h: Hermitian = match pick {
            0 => heisenberg(n, k, r.min(n / 2)).unwrap(),
            1 => {
                let lambda = if a > q(0) { a } else { q(1) - a };
                let p = [("lambda".to_string(), lambda)].into();
                abhol_core::catalog::named("B2", &p).unwrap().structure
            }
            _ => {
                let a = if a == q(0) && b == q(0) { q(1) } else { a };
                m_lambda(a, b).unwrap()
            }
        };
        let rep = holonomy_algebra(&h).unwrap();
        prop_assert!(rep.theorem.is_applicable());
        prop_assert_eq!(rep.theorem.holds, Some(true));
        prop_assert!(rep.idempotent && rep.commutator_closed);
    }
}

#[test]
fn abelian_entries_satisfy_structure_identities() {
    for e in all_default::<Q>().unwrap().into_iter().filter(|e| e.claims.abelian) {
        let alg = e.structure.algebra();
        let n = alg.dim() / 2;
        for k in 1..=alg.dim() {
            for i in 1..=n {
                for j in 1..=n {
                    let c = |a: usize, b: usize| -> Q {
                        match a.cmp(&b) {
                            std::cmp::Ordering::Less => alg.c(a, b, k).clone(),
                            std::cmp::Ordering::Greater => -alg.c(b, a, k).clone(),
                            std::cmp::Ordering::Equal => q(0),
                        }
                    };
                    assert_eq!(c(2 * i - 1, 2 * j - 1), c(2 * i, 2 * j), "{} k={k} i={i} j={j}", e.name);
                    assert_eq!(c(2 * i - 1, 2 * j), -c(2 * i, 2 * j - 1), "{} k={k} i={i} j={j}", e.name);
                }
            }
        }
        assert!(is_j_invariant(e.structure.complex_structure(), &alg.center()), "{}", e.name);
        let derived = alg.derived_algebra();
        assert!(alg.bracket_span(&derived, &derived).is_zero(), "{}: derived algebra not abelian", e.name);
    }
}
