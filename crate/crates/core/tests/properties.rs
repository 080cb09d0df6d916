use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use strange_reps::liealg::{self, superbracket, AlgebraElement};
use strange_reps::linalg::{self, RowEchelon, SparseVec};
use strange_reps::modcomp::{self, ComponentBasis, OperatorSet, SubspaceBasis};
use strange_reps::rep::RepParams;
use strange_reps::scalar::Scalar;
use strange_reps::superpoly::{format_poly, parse_poly, Monomial, Parity, SuperPolynomial};

const N: usize = 3;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6, -3i64..=3, 1i64..=4).prop_map(|(a, b, c, d)| {
        &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, d) * &Scalar::sqrt_of(2))
    })
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| Scalar::from_ratio(a, b))
}

fn monomial(parity: Option<bool>) -> impl Strategy<Value = Monomial> {
    (proptest::collection::vec(0u32..=3, N), 0u32..(1 << N)).prop_filter_map("parity", move |(alpha, mask)| {
        let fermions: Vec<usize> = (1..=N).filter(|p| mask & (1 << (p - 1)) != 0).collect();
        if parity.is_some_and(|odd| (fermions.len() % 2 == 1) != odd) {
            return None;
        }
        Monomial::new(alpha, &fermions).ok()
    })
}

fn poly_with(parity: Option<bool>, coeff: BoxedStrategy<Scalar>) -> impl Strategy<Value = SuperPolynomial> {
    proptest::collection::vec((monomial(parity), coeff), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(SuperPolynomial::zero(N), |acc, (m, c)| &acc + &SuperPolynomial::term(m, c))
    })
}

fn poly() -> impl Strategy<Value = SuperPolynomial> {
    poly_with(None, scalar().boxed())
}

fn homogeneous() -> impl Strategy<Value = (bool, SuperPolynomial)> {
    any::<bool>().prop_flat_map(|odd| (Just(odd), poly_with(Some(odd), scalar().boxed())))
}

fn sign(odd: bool) -> Scalar {
    Scalar::from_int(if odd { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative(f in poly(), g in poly(), h in poly()) {
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_is_supercommutative((a, f) in homogeneous(), (b, g) in homogeneous()) {
        let fg = f.mul(&g).unwrap();
        let gf = g.mul(&f).unwrap();
        prop_assert_eq!(fg, gf.scale(&sign(a && b)));
    }

    #[test]
    fn odd_derivation_is_super_leibniz((a, f) in homogeneous(), g in poly(), p in 1..=N) {
        let lhs = f.mul(&g).unwrap().d_fermion(p).unwrap();
        let rhs = &f.d_fermion(p).unwrap().mul(&g).unwrap()
            + &f.mul(&g.d_fermion(p).unwrap()).unwrap().scale(&sign(a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn even_derivation_is_leibniz(f in poly(), g in poly(), i in 1..=N) {
        let lhs = f.mul(&g).unwrap().d_boson(i).unwrap();
        let rhs = &f.d_boson(i).unwrap().mul(&g).unwrap() + &f.mul(&g.d_boson(i).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_derivations_anticommute(f in poly(), p in 1..=N, q in 1..=N) {
        let pq = f.d_fermion(q).unwrap().d_fermion(p).unwrap();
        let qp = f.d_fermion(p).unwrap().d_fermion(q).unwrap();
        prop_assert_eq!(&pq, &-&qp);
        if p == q {
            prop_assert!(pq.is_zero());
        }
    }

    #[test]
    fn nonzero_scalars_invert(x in scalar()) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
    }

    #[test]
    fn super_jacobi_on_random_p_elements(
        ca in proptest::collection::vec(-3i64..=3, 17),
        cb in proptest::collection::vec(-3i64..=3, 17),
        cc in proptest::collection::vec(-3i64..=3, 17),
        pa in any::<bool>(), pb in any::<bool>(), pc in any::<bool>(),
    ) {
        let basis = liealg::basis_p(N).unwrap();
        let build = |coeffs: &[i64], odd: bool| {
            basis.elements.iter().zip(coeffs).fold(AlgebraElement::zero(N), |acc, (e, &c)| {
                if e.parity().map(Parity::is_odd) == Some(odd) {
                    acc.add(&e.scale(&BigRational::from_integer(BigInt::from(c)))).unwrap()
                } else {
                    acc
                }
            })
        };
        let (a, b, c) = (build(&ca, pa), build(&cb, pb), build(&cc, pc));
        let s = |x: bool, y: bool| BigRational::from_integer(BigInt::from(if x && y { -1 } else { 1 }));
        let t1 = superbracket(&a, &superbracket(&b, &c).unwrap()).unwrap().scale(&s(pa, pc));
        let t2 = superbracket(&b, &superbracket(&c, &a).unwrap()).unwrap().scale(&s(pb, pa));
        let t3 = superbracket(&c, &superbracket(&a, &b).unwrap()).unwrap().scale(&s(pc, pb));
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parse_inverts_format(f in poly()) {
        prop_assert_eq!(parse_poly(&format_poly(&f), N).unwrap(), f);
    }
}

fn sparse(cols: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::btree_map(0..cols, rational(), 0..5)
        .prop_map(|m| linalg::sparse_from(m.into_iter().filter(|(_, c)| !c.is_zero())))
}

/// Plain Gaussian elimination on a dense rational matrix.
fn oracle_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in 0..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dense(v: &SparseVec, cols: usize) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); cols];
    for (c, x) in v {
        row[*c] = x.to_rational().unwrap().clone();
    }
    row
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn echelon_rank_and_membership(
        rows in proptest::collection::vec(sparse(10), 1..8),
        coeffs in proptest::collection::vec(-5i64..=5, 8),
    ) {
        let ech = RowEchelon::from_vectors(rows.iter());
        prop_assert_eq!(ech.rank(), oracle_rank(rows.iter().map(|r| dense(r, 10)).collect()));
        let combo = rows.iter().zip(&coeffs).fold(Vec::new(), |acc, (r, &c)| linalg::axpy(&acc, &Scalar::from_int(c), r));
        prop_assert!(ech.contains(&combo));
        prop_assert!(ech.reduce(&combo).is_empty());
    }

    #[test]
    fn outside_vectors_raise_the_rank(rows in proptest::collection::vec(sparse(10), 1..6), extra in sparse(10)) {
        let ech = RowEchelon::from_vectors(rows.iter());
        let mut all: Vec<_> = rows.iter().map(|r| dense(r, 10)).collect();
        all.push(dense(&extra, 10));
        prop_assert_eq!(ech.contains(&extra), oracle_rank(all) == ech.rank());
    }
}

fn diagonally_dominant() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    (1usize..=8).prop_flat_map(|size| {
        (
            proptest::collection::vec(proptest::collection::vec((-20i64..=20, 1i64..=20), size), size),
            proptest::collection::vec((1i64..=20, any::<bool>()), size),
        )
            .prop_map(move |(entries, slack)| {
                let mut m: Vec<Vec<BigRational>> = entries
                    .iter()
                    .map(|row| row.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect())
                    .collect();
                for i in 0..size {
                    let off: BigRational = (0..size).filter(|&j| j != i).map(|j| m[i][j].abs()).sum();
                    let d = off + BigRational::from_integer(slack[i].0.into());
                    m[i][i] = if slack[i].1 { d } else { -d };
                }
                m
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn diagonally_dominant_matrices_have_full_rank(m in diagonally_dominant()) {
        prop_assert!(linalg::is_strictly_diagonally_dominant(&m));
        let (dominant, rank) = linalg::diag_dominant_full_rank(&m);
        prop_assert!(dominant);
        prop_assert_eq!(rank, m.len());
        prop_assert_eq!(oracle_rank(m.clone()), m.len());
    }
}

struct Fixture {
    comp: ComponentBasis,
    ops: OperatorSet,
}

fn fixture(r: usize, k: i64, cap: Option<u32>) -> Fixture {
    let comp = ComponentBasis::new(RepParams::new(N, r).unwrap(), k, cap).unwrap();
    let ops = OperatorSet::new(&comp, &liealg::basis_p(N).unwrap()).unwrap();
    Fixture { comp, ops }
}

fn same(a: &SubspaceBasis, b: &SubspaceBasis) -> bool {
    a.is_subspace_of(b) && b.is_subspace_of(a)
}

fn in_component(comp: &ComponentBasis, v: &SparseVec) -> SparseVec {
    v.iter().filter(|(c, _)| *c < comp.len()).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_monotone(g in proptest::collection::vec(sparse(18), 1..3), h in proptest::collection::vec(sparse(18), 1..3)) {
        let fx = fixture(0, 2, None);
        let g: Vec<_> = g.iter().map(|v| in_component(&fx.comp, v)).collect();
        let both: Vec<_> = g.iter().cloned().chain(h.iter().map(|v| in_component(&fx.comp, v))).collect();
        let (small, _) = modcomp::closure_from(&fx.comp, &fx.ops, &g, None);
        let (large, _) = modcomp::closure_from(&fx.comp, &fx.ops, &both, None);
        prop_assert!(small.is_subspace_of(&large));
        prop_assert!(modcomp::invariance_check(&large, &fx.ops));
    }

    #[test]
    fn closure_ignores_generator_scaling(v in sparse(38), c in rational()) {
        prop_assume!(!c.is_zero());
        let fx = fixture(0, 3, None);
        let v = in_component(&fx.comp, &v);
        let (a, ra) = modcomp::closure_from(&fx.comp, &fx.ops, std::slice::from_ref(&v), None);
        let (b, rb) = modcomp::closure_from(&fx.comp, &fx.ops, &[linalg::scale(&v, &c)], None);
        prop_assert!(same(&a, &b));
        prop_assert_eq!(ra.dimension, rb.dimension);
    }

    #[test]
    fn any_vector_of_the_minimal_submodule_generates_it(k in 2i64..=3, coeffs in proptest::collection::vec(-4i64..=4, 40)) {
        let fx = fixture(0, k, None);
        let x = SuperPolynomial::x(N, 1).unwrap();
        let top = (1..k).fold(x.clone(), |acc, _| acc.mul(&x).unwrap());
        let (minimal, _) = modcomp::closure(&fx.comp, &fx.ops, &[top]).unwrap();
        let v = minimal
            .interior_rows()
            .iter()
            .zip(&coeffs)
            .fold(Vec::new(), |acc, (row, &c)| linalg::axpy(&acc, &Scalar::from_int(c), row));
        prop_assume!(!v.is_empty());
        let (again, _) = modcomp::closure_from(&fx.comp, &fx.ops, &[v], None);
        prop_assert!(same(&again, &minimal));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wider_windows_keep_the_low_part(picks in proptest::collection::vec((0usize..64, -3i64..=3), 1..3)) {
        let narrow = fixture(1, 0, Some(6));
        let wide = fixture(1, 0, Some(8));
        let low = narrow.comp.low_start(4);
        let low_cols: Vec<usize> = (low..narrow.comp.len()).collect();
        let g = picks.iter().fold(SuperPolynomial::zero(N), |acc, &(i, c)| {
            let m = narrow.comp.monomial(low_cols[i % low_cols.len()]).clone();
            &acc + &SuperPolynomial::term(m, Scalar::from_int(c))
        });
        prop_assume!(!g.is_zero());
        let (a, _) = modcomp::closure(&narrow.comp, &narrow.ops, std::slice::from_ref(&g)).unwrap();
        let (b, _) = modcomp::closure(&wide.comp, &wide.ops, &[g]).unwrap();
        for row in a.rows_from(low) {
            let poly = narrow.comp.to_poly(&row);
            prop_assert!(b.contains(&wide.comp.coords(&poly).unwrap()));
        }
    }
}
