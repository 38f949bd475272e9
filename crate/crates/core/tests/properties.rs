use proptest::prelude::*;

use ncthick::braid::{braid_act, simple_factorization};
use ncthick::derived::{DerivedModel, DerivedVertex};
use ncthick::linalg::q;
use ncthick::repcat::{cokernel, combine, hom, kernel, Catalog};
use ncthick::thicklat::ThickContext;
use ncthick::{build_cartan, enumerate_nc, CartanDatum, CartanType, Quiver, RootVector, WeylElement};

fn cd(s: &str) -> CartanDatum {
    build_cartan(s.parse().unwrap()).unwrap()
}

fn word_element(cd: &CartanDatum, word: &[usize]) -> WeylElement {
    word.iter().fold(WeylElement::identity(cd.rank()), |w, &i| w.mul(&cd.simple_reflection(i % cd.rank())))
}

fn label() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A3", "B3", "C3", "D4", "G2", "F4", "E6"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn absolute_length_is_a_conjugation_invariant_metric(
        s in label(),
        u in prop::collection::vec(0usize..8, 0..12),
        v in prop::collection::vec(0usize..8, 0..12),
    ) {
        let cd = cd(s);
        let (a, b) = (word_element(&cd, &u), word_element(&cd, &v));
        let l = |w: &WeylElement| cd.absolute_length(w);
        prop_assert!(l(&a.mul(&b)) <= l(&a) + l(&b));
        prop_assert_eq!(l(&a.inverse()), l(&a));
        prop_assert_eq!(l(&b.mul(&a).mul(&b.inverse())), l(&a));
        // a product of k reflections has determinant (-1)^k
        prop_assert_eq!(a.det(), if l(&a) % 2 == 0 { 1 } else { -1 });
        prop_assert!(l(&a) <= u.len());
    }

    #[test]
    fn weyl_group_preserves_the_form(
        s in label(),
        word in prop::collection::vec(0usize..8, 0..16),
        x in prop::collection::vec(-5i64..6, 8),
        y in prop::collection::vec(-5i64..6, 8),
    ) {
        let cd = cd(s);
        let n = cd.rank();
        let (x, y) = (RootVector(x[..n].to_vec()), RootVector(y[..n].to_vec()));
        let w = word_element(&cd, &word);
        prop_assert_eq!(cd.form(&w.apply(&x), &w.apply(&y)).unwrap(), cd.form(&x, &y).unwrap());
    }

    #[test]
    fn nc_meets_and_joins_are_bounds(s in prop::sample::select(vec!["A4", "B3", "D4"]), i in 0usize..1000, j in 0usize..1000) {
        let cd = cd(s);
        let l = enumerate_nc(&cd, &cd.standard_coxeter()).unwrap();
        let (i, j) = (i % l.len(), j % l.len());
        let m = l.meet_idx(i, j).unwrap();
        let jn = l.join_idx(i, j).unwrap();
        prop_assert!(l.leq(m, i) && l.leq(m, j) && l.leq(i, jn) && l.leq(j, jn));
        prop_assert_eq!(l.meet_idx(j, i).unwrap(), m);
        prop_assert_eq!(l.rank_of(l.index_of(&l.kreweras(&l.elements()[i]).unwrap()).unwrap()), cd.rank() - l.rank_of(i));
    }

    #[test]
    fn braid_moves_preserve_factorizations(
        s in prop::sample::select(vec!["A4", "B4", "D5", "E6"]),
        moves in prop::collection::vec((0usize..8, any::<bool>()), 0..24),
    ) {
        let cd = cd(s);
        let c = cd.standard_coxeter();
        let mut f = simple_factorization(&cd);
        for (i, inv) in moves {
            let i = 1 + i % (cd.rank() - 1);
            let g = braid_act(&f, i, inv).unwrap();
            prop_assert_eq!(&braid_act(&g, i, !inv).unwrap(), &f);
            f = g;
        }
        prop_assert_eq!(f.target(), &c);
        for (r, p) in f.prefixes().iter().enumerate() {
            prop_assert_eq!(cd.absolute_length(p), r);
            prop_assert!(cd.abs_leq(p, &c));
        }
        prop_assert!(f.parts().iter().all(|t| cd.is_reflection(t)));
    }

    #[test]
    fn braid_index_is_checked(k in 0usize..10) {
        let f = simple_factorization(&cd("A3"));
        prop_assert_eq!(braid_act(&f, k, false).is_ok(), (1..=2).contains(&k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn thick_subcategories_of_a4(i in 0usize..42) {
        let ctx = ThickContext::new(&cd("A4")).unwrap();
        let l = enumerate_nc(ctx.cartan(), ctx.coxeter()).unwrap();
        let u = ctx.thick_from_nc(&l.elements()[i]).unwrap();
        prop_assert_eq!(u.rank(), l.rank_of(i));
        let lp = ctx.left_perp(&u).unwrap();
        let rp = ctx.right_perp(&u).unwrap();
        prop_assert_eq!(lp.rank() + u.rank(), 4);
        prop_assert_eq!(&ctx.right_perp(&lp).unwrap(), &u);
        prop_assert_eq!(&ctx.left_perp(&rp).unwrap(), &u);
        prop_assert_eq!(ctx.hom_orthogonal(&lp, &u), Some(true));
        prop_assert_eq!(ctx.hom_orthogonal(&u, &rp), Some(true));
    }

    #[test]
    fn hammocks_are_translation_and_shift_invariant(
        s in prop::sample::select(vec!["A4", "D5", "E6"]),
        x in (-6i64..6, 0usize..6),
        y in (-6i64..12, 0usize..6),
    ) {
        let m = DerivedModel::new(&Quiver::standard(s.parse().unwrap()).unwrap()).unwrap();
        let t = m.table();
        let n = m.repetition().n();
        let x = DerivedVertex::new(x.0, x.1 % n);
        let y = DerivedVertex::new(y.0, y.1 % n);
        let h = t.hom(x, y);
        prop_assert_eq!(t.hom(x.tau(), y.tau()), h);
        prop_assert_eq!(t.hom(t.suspension(x), t.suspension(y)), h);
        prop_assert_eq!(t.hom(y, t.serre(x)), h);
        prop_assert_eq!(t.desuspension(t.suspension(x)), x);
    }

    #[test]
    fn kernels_and_cokernels_decompose(
        s in prop::sample::select(vec!["A3", "D4"]),
        a in 0usize..12, b in 0usize..12, c in 0usize..12,
        coeffs in prop::collection::vec(-3i64..4, 8),
    ) {
        let quiver = Quiver::standard(s.parse::<CartanType>().unwrap()).unwrap();
        let cat = Catalog::new(&quiver).unwrap();
        let k = cat.len();
        let src = cat.rep(a % k).direct_sum(&quiver, cat.rep(b % k));
        let dst = cat.rep(c % k).clone();
        let basis = hom(&quiver, &src, &dst).basis;
        let co: Vec<_> = coeffs.iter().take(basis.len()).map(|&x| q(x)).collect();
        let f = combine(&co, &basis, &src, &dst);
        let ker = kernel(&quiver, &src, &f);
        let cok = cokernel(&quiver, &dst, &f);
        let dims = |r: &ncthick::Representation| r.dim_vector().0;
        // dim ker - dim coker = dim src - dim dst
        for v in 0..quiver.n() {
            prop_assert_eq!(
                dims(&ker)[v] - dims(&cok)[v],
                dims(&src)[v] - dims(&dst)[v]
            );
        }
        let sum = |m: &ncthick::Representation| -> RootVector {
            let mult = cat.decompose(m).unwrap();
            mult.iter().enumerate().fold(RootVector::zero(quiver.n()), |acc, (i, &c)| acc.add(&cat.roots()[i].scaled(c as i64)))
        };
        prop_assert_eq!(sum(&ker), ker.dim_vector());
        prop_assert_eq!(sum(&cok), cok.dim_vector());
        let mut both = cat.decompose(cat.rep(a % k)).unwrap();
        both[b % k] += 1;
        prop_assert_eq!(cat.decompose(&src).unwrap(), both);
    }
}
