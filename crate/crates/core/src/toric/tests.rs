use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::linalg::integer::int_rows;
use crate::linalg::QMatrix;

const B: usize = DEFAULT_PAIR_BUDGET;

fn ideal(n: usize, gens: &[&str]) -> LaurentIdeal {
    LaurentIdeal::new(n, gens.iter().map(|g| parse_laurent(g, n).unwrap()).collect()).unwrap()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `{x : rows * x = 0}`.
fn m_from_rows(n: usize, rows: &[&[i64]]) -> QLinearSubspace {
    QLinearSubspace::from_integer_rows(n, &int_rows(rows)).unwrap()
}

fn m_spanned(n: usize, vecs: &[&[i64]]) -> QLinearSubspace {
    let flat: Vec<i64> = vecs.concat();
    QLinearSubspace::spanned_by(n, 0, &QMatrix::from_i64(vecs.len(), n, &flat))
}

fn pt(v: &[i64]) -> TorusPoint {
    TorusPoint::from_ints(v).unwrap()
}

/// Rank by fraction-free elimination over i128.
fn int_rank(rows: &[Vec<i64>], n: usize) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            let (f, g) = (a[i][c], a[rank][c]);
            for j in 0..n {
                a[i][j] = a[i][j] * g - a[rank][j] * f;
            }
            let content = a[i].iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x));
            if content > 1 {
                a[i].iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    rank
}

fn lattice_ideal(n: usize, rows: &[Vec<i64>], coefs: &[BigRational]) -> LaurentIdeal {
    let gens = rows
        .iter()
        .zip(coefs)
        .map(|(r, c)| {
            let m: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            LaurentPoly::character_minus(n, &m, c.clone())
        })
        .collect();
    LaurentIdeal::new(n, gens).unwrap()
}

#[test]
fn buchberger_examples() {
    assert!(buchberger(&LaurentIdeal::zero(2), MonomialOrder::GrevLex, B).unwrap().polys.is_empty());
    let gb = buchberger(&ideal(1, &["y1 - 1"]), MonomialOrder::GrevLex, B).unwrap();
    assert_eq!(format!("{:?}", gb), "[v1 - 1]");
    let gb = buchberger(&ideal(2, &["y1*y2 - 1", "y1 - y2"]), MonomialOrder::Lex, B).unwrap();
    assert_eq!(format!("{:?}", gb), "[v1 - v2, v2^2 - 1]");
    let w = ideal(2, &["y1*y2 - 1", "y1 - y2"]);
    assert_eq!(dim_variety(&w, B).unwrap(), Dimension::Dim(0));
    assert!(w.vanishes_at(&pt(&[1, 1])) && w.vanishes_at(&pt(&[-1, -1])));
}

#[test]
fn buchberger_is_deterministic() {
    let w = ideal(3, &["y1^2*y2 - y3", "y1 + y2 + y3 - 1"]);
    let a = buchberger(&w, MonomialOrder::GrevLex, B).unwrap();
    let b = buchberger(&w, MonomialOrder::GrevLex, B).unwrap();
    assert_eq!(a, b);
}

#[test]
fn saturation_removes_hyperplane_components() {
    // y1*(y2 - 1) vanishes on y1 = 0 outside the torus only
    let w = ideal(2, &["y1*y2 - y1"]);
    let gb = buchberger(&w, MonomialOrder::GrevLex, B).unwrap();
    assert_eq!(format!("{:?}", gb), "[v2 - 1]");
    assert_eq!(dim_variety(&ideal(1, &["y1^2"]), B).unwrap(), Dimension::Empty);
}

#[test]
fn dim_examples() {
    assert_eq!(dim_variety(&LaurentIdeal::zero(3), B).unwrap(), Dimension::Dim(3));
    assert_eq!(dim_variety(&ideal(2, &["y1*y2 - 1"]), B).unwrap(), Dimension::Dim(1));
    assert_eq!(dim_variety(&ideal(2, &["y1 - 1", "y1 - 2"]), B).unwrap(), Dimension::Empty);
}

#[test]
fn torus_of_examples() {
    let full = torus_of(&QLinearSubspace::whole(3, 0));
    assert!(full.binomials().is_empty());
    assert_eq!(full.dim(), 3);
    let t = torus_of(&m_from_rows(2, &[&[1, 0]]));
    assert_eq!(t.binomials().iter().map(|b| b.to_string()).collect::<Vec<_>>(), vec!["y1 - 1"]);
    // rows (1,1),(1,-1) generate an index-2 lattice; the connected torus is {1}
    let t = torus_of(&m_from_rows(2, &[&[1, 1], &[1, -1]]));
    assert_eq!(t.dim(), 0);
    assert_eq!(t.rows(), int_rows(&[&[1, 0], &[0, 1]]).as_slice());
    assert_eq!(t, SubtorusSpec::trivial(2));
}

#[test]
fn quotient_examples() {
    let w = ideal(2, &["y1*y2^2 - 3"]);
    let same = quotient_by_subtorus(&w, &QLinearSubspace::zero(2, 0), B).unwrap();
    assert_eq!(same.to_string(), "<y1*y2^2 - 3>");

    let w = ideal(2, &["y1 - y2"]);
    let diag = m_spanned(2, &[&[1, 1]]);
    let img = quotient_by_subtorus(&w, &diag, B).unwrap();
    assert_eq!(img.nvars(), 1);
    assert_eq!(img.to_string(), "<y1 - 1>");

    let z = quotient_by_subtorus(&LaurentIdeal::zero(3), &diag_of(3), B).unwrap();
    assert!(z.is_zero_ideal());
    assert_eq!(z.nvars(), 2);
}

fn diag_of(n: usize) -> QLinearSubspace {
    let ones = vec![1i64; n];
    m_spanned(n, &[&ones])
}

#[test]
fn quotient_passes_parameters_through() {
    // W over y1, y2 and one parameter b; M = diagonal of V^2
    let w = ideal(3, &["y1 - y3*y2"]);
    let img = quotient_by_subtorus(&w, &m_spanned(2, &[&[1, 1]]), B).unwrap();
    assert_eq!(img.nvars(), 2);
    assert_eq!(dim_variety(&img, B).unwrap(), Dimension::Dim(1));
    assert!(img.vanishes_at(&pt(&[5, 5])));
}

#[test]
fn generic_fiber_examples() {
    assert_eq!(generic_fiber_dim(&LaurentIdeal::zero(2), &m_spanned(2, &[&[1, 2]]), B).unwrap(), 1);
    assert_eq!(generic_fiber_dim(&ideal(2, &["y1 - 3"]), &m_spanned(2, &[&[1, 0]]), B).unwrap(), 0);
    assert_eq!(generic_fiber_dim(&ideal(2, &["y1 - y2"]), &m_spanned(2, &[&[1, 1]]), B).unwrap(), 1);
    assert_eq!(
        generic_fiber_dim(&ideal(1, &["y1 - 1", "y1 + 1"]), &QLinearSubspace::zero(1, 0), B),
        Err(PowError::EmptyVariety)
    );
}

#[test]
fn fiber_examples() {
    let w = ideal(2, &["y1 - 2"]);
    assert_eq!(fiber_dim_at(&w, &QLinearSubspace::zero(2, 0), &pt(&[1, 1]), B).unwrap(), Dimension::Empty);
    let line = m_spanned(3, &[&[1, -1, 0]]);
    assert_eq!(fiber_dim_at(&LaurentIdeal::zero(3), &line, &pt(&[3, 1, -2]), B).unwrap(), Dimension::Dim(1));
    let w = ideal(2, &["y1 + y2 - 2"]);
    let anti = m_from_rows(2, &[&[1, 1]]);
    assert_eq!(fiber_dim_at(&w, &anti, &pt(&[1, 1]), B).unwrap(), Dimension::Dim(0));
}

#[test]
fn fiber_at_torsion_point() {
    // y1^3 = 1 and y2 free; the coset through (ζ_3, 1) of the y2-axis torus
    let w = ideal(2, &["y1^3 - 1"]);
    let zeta = TorusCoord::root_of_unity(&1.into(), &3.into());
    let p = TorusPoint::new(vec![zeta, TorusCoord::one()]);
    assert!(w.vanishes_at(&p));
    let axis = m_spanned(2, &[&[0, 1]]);
    assert_eq!(fiber_dim_at(&w, &axis, &p, B).unwrap(), Dimension::Dim(1));
    let other = m_spanned(2, &[&[1, 0]]);
    assert_eq!(fiber_dim_at(&w, &other, &p, B).unwrap(), Dimension::Dim(0));
}

#[test]
fn exceptional_examples() {
    let m = m_spanned(2, &[&[1, 0]]);
    assert!(!exceptional_locus_member(&LaurentIdeal::zero(2), &m, &pt(&[2, 3]), B).unwrap());
    let w = ideal(2, &["y1 - y2"]);
    let diag = m_spanned(2, &[&[1, 1]]);
    assert!(!exceptional_locus_member(&w, &diag, &pt(&[4, 4]), B).unwrap());

    // two lines; the component y2 = 1 is a whole fiber of the y1-direction
    let w = ideal(2, &["(y1 - 1)*(y2 - 1)"]);
    assert_eq!(generic_fiber_dim(&w, &m, B).unwrap(), 0);
    assert!(exceptional_locus_member(&w, &m, &pt(&[5, 1]), B).unwrap());
    assert!(exceptional_locus_member(&w, &m, &pt(&[1, 1]), B).unwrap());
    assert!(!exceptional_locus_member(&w, &m, &pt(&[1, 5]), B).unwrap());
    assert_eq!(exceptional_locus_member(&w, &m, &pt(&[2, 2]), B), Err(PowError::NotOnVariety));
}

#[test]
fn torsion_examples() {
    let w = ideal(2, &["y1 - y2"]);
    let diag = SubtorusSpec::from_rows(2, &int_rows(&[&[1, -1]]));
    let found = torsion_cosets_bounded(&w, std::slice::from_ref(&diag), 1, B).unwrap();
    assert_eq!(found.len(), 1);
    assert!(found[0].contains(&pt(&[1, 1])) && found[0].contains(&pt(&[7, 7])));

    let w = ideal(1, &["y1^2 - 1"]);
    let found = torsion_cosets_bounded(&w, &[SubtorusSpec::trivial(1)], 2, B).unwrap();
    let pts: Vec<String> = found.iter().map(|c| c.point.to_string()).collect();
    assert_eq!(pts, vec!["(1)", "(-1)"]);

    let w = ideal(1, &["y1 - 2"]);
    assert!(torsion_cosets_bounded(&w, &[SubtorusSpec::trivial(1)], 6, B).unwrap().is_empty());
    assert!(torsion_cosets_bounded(&w, &[], 0, B).is_err());
}

#[test]
fn torsion_cosets_of_higher_order() {
    // Φ_3(y1) = 0 on the torus {y2 = 1}: two cosets of order 3
    let w = ideal(2, &["y1^2 + y1 + 1", "y2 - 1"]);
    let found = torsion_cosets_bounded(&w, &[SubtorusSpec::trivial(2)], 4, B).unwrap();
    assert_eq!(found.len(), 2);
    assert!(found.iter().all(|c| c.order == 3 && w.vanishes_at(&c.point)));
}

#[test]
fn specialize_examples() {
    assert!(specialize(&LaurentIdeal::zero(3), &[q(2)]).unwrap().is_zero_ideal());
    let w = specialize(&ideal(2, &["y1 - y2"]), &[q(2)]).unwrap();
    assert_eq!(w.to_string(), "<y1 - 2>");
    let w = specialize(&ideal(4, &["y1*y2 - y3", "y1 + y2 - y4"]), &[q(1), q(2)]).unwrap();
    assert_eq!(dim_variety(&w, B).unwrap(), Dimension::Dim(0));
    // y1 = y2 = 1 is a double root: one point of multiplicity two
    let gb = buchberger(&w, MonomialOrder::Lex, B).unwrap();
    assert_eq!(format!("{:?}", gb), "[v1 + v2 - 2, v2^2 - 2*v2 + 1]");
    assert!(specialize(&ideal(2, &["y1 - y2"]), &[q(0)]).is_err());
}

#[test]
fn budget_is_enforced() {
    let w = ideal(3, &["y1^3 + y2^2*y3 - 7", "y2^3 - y1*y3 + 2", "y3^3 - y1*y2 - 5"]);
    assert!(matches!(dim_variety(&w, 2), Err(PowError::BudgetExceeded(_))));
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-4i64..=-1, 1i64..=4], 1i64..=3).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn int_matrix(r: usize, n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn toric_dimension_law((n, rows) in (1usize..=5).prop_flat_map(|n| (Just(n), (1usize..=3).prop_flat_map(move |r| int_matrix(r, n))))) {
        let ones = vec![q(1); rows.len()];
        let w = lattice_ideal(n, &rows, &ones);
        let d = dim_variety(&w, B).unwrap();
        prop_assert_eq!(d, Dimension::Dim(n - int_rank(&rows, n)));
    }

    #[test]
    fn hypersurface_law(
        n in 1usize..=3,
        terms in prop::collection::btree_map(prop::collection::vec(-2i32..=2, 3), 1i64..=5, 2..=4),
    ) {
        let p = LaurentPoly::from_terms(n, terms.into_iter().map(|(e, c)| (e[..n].to_vec(), q(c))));
        prop_assume!(p.num_terms() >= 2);
        let w = LaurentIdeal::new(n, vec![p]).unwrap();
        prop_assert_eq!(dim_variety(&w, B).unwrap(), Dimension::Dim(n - 1));
    }

    #[test]
    fn saturated_generators_vanish_at_sampled_points(
        point in prop::collection::vec(nonzero_rational(), 2),
        rows in int_matrix(2, 2),
    ) {
        // every element of the saturated basis vanishes where the generators do
        let w_pt = TorusPoint::from_rationals(&point).unwrap();
        let coefs: Vec<BigRational> = rows.iter().map(|r| {
            let m: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            w_pt.character(&m).as_rational().unwrap()
        }).collect();
        let w = lattice_ideal(2, &rows, &coefs);
        let gb = buchberger(&w, MonomialOrder::GrevLex, B).unwrap();
        for g in &gb.polys {
            let lp = LaurentPoly::from_poly(g, 0, 2);
            prop_assert!(lp.eval_exact(&w_pt).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fiber_semicontinuity_and_addition(
        n in 2usize..=3,
        point in prop::collection::vec(nonzero_rational(), 3),
        h_rows in int_matrix(2, 3),
        m_rows in int_matrix(2, 3),
        nh in 0usize..=2,
        nm in 0usize..=2,
    ) {
        let h: Vec<Vec<i64>> = h_rows[..nh].iter().map(|r| r[..n].to_vec()).collect();
        let mr: Vec<Vec<i64>> = m_rows[..nm].iter().map(|r| r[..n].to_vec()).collect();
        let w_pt = TorusPoint::from_rationals(&point[..n]).unwrap();
        let coefs: Vec<BigRational> = h.iter().map(|r| {
            let m: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            w_pt.character(&m).as_rational().unwrap()
        }).collect();
        let w = lattice_ideal(n, &h, &coefs);
        let mref: Vec<&[i64]> = mr.iter().map(|r| r.as_slice()).collect();
        let m = if mref.is_empty() { QLinearSubspace::whole(n, 0) } else { m_from_rows(n, &mref) };

        let generic = generic_fiber_dim(&w, &m, B).unwrap();
        let at = fiber_dim_at(&w, &m, &w_pt, B).unwrap().require().unwrap();
        prop_assert!(at >= generic);

        // W is a coset of a subgroup H; fibers are cosets of H ∩ exp(M)
        let mut stacked = h.clone();
        stacked.extend(mr.iter().cloned());
        let rank_h = int_rank(&h, n);
        let rank_all = int_rank(&stacked, n);
        prop_assert_eq!(generic, n - rank_all);
        prop_assert_eq!(at, generic);
        let dq = dim_variety(&quotient_by_subtorus(&w, &m, B).unwrap(), B).unwrap().require().unwrap();
        prop_assert_eq!(dq, rank_all - rank_h);
        prop_assert_eq!(dim_variety(&w, B).unwrap().require().unwrap(), dq + generic);
    }
}
