use proptest::prelude::*;
use proptest::sample::select;

use starclean::classify::Classifier;
use starclean::construct::{extend_ri, poly_quotient, ExtensionSpec};
use starclean::format::{load_star_ring, spec_hash, to_json};
use starclean::ideal::{all_ideals, generated_ideal, ideals_by_subgroup_scan, quotient_ring};
use starclean::ring::validate_ring;
use starclean::star::{
    idempotents, jacobson_radical, nilpotents, projections, units, units_by_inverse_scan,
};
use starclean::{Element, RawTables, Recipe, StarRing, Witness, HARD_MAX_ORDER};

const SMALL: &[&str] = &[
    "zn:2",
    "zn:3",
    "zn:4",
    "zn:5",
    "zn:6",
    "zn:8",
    "zn:9",
    "zn:12",
    "product:zn:2,zn:2",
    "product:zn:2,zn:3",
    "product:zn:2,zn:4",
    "product:zn:3,zn:3",
    "product:zn:2,zn:6",
    "ri:zn:2,mu=0,eta=1",
    "ri:zn:2,mu=1,eta=1",
    "ri:zn:3,mu=0,eta=2",
    "ri:zn:4,mu=2,eta=2",
    "ri:zn:4,mu=1,eta=3",
    "poly:zn:2,n=3",
    "poly:zn:3,n=2",
    "poly:zn:2,n=4",
    "example:twisted-boolean-4",
    "example:boolean-like-8",
    "example:transpose-8",
    "example:m2-z2",
];

fn ring(expr: &str) -> StarRing {
    expr.parse::<Recipe>().unwrap().build().unwrap()
}

fn small_ring() -> impl Strategy<Value = StarRing> {
    select(SMALL).prop_map(ring)
}

/// Every axiom checked on every index triple.
fn exhaustive_ring_check(t: &RawTables) -> bool {
    let n = t.order;
    let a = |x: usize, y: usize| t.add[x * n + y];
    let m = |x: usize, y: usize| t.mul[x * n + y];
    if t.add.iter().chain(&t.mul).any(|&v| v >= n) || t.zero >= n || t.one >= n {
        return false;
    }
    for x in 0..n {
        if a(x, t.zero) != x || m(x, t.one) != x || m(t.one, x) != x {
            return false;
        }
        if !(0..n).any(|y| a(x, y) == t.zero) {
            return false;
        }
        for y in 0..n {
            if a(x, y) != a(y, x) {
                return false;
            }
            for z in 0..n {
                if a(a(x, y), z) != a(x, a(y, z))
                    || m(m(x, y), z) != m(x, m(y, z))
                    || m(x, a(y, z)) != a(m(x, y), m(x, z))
                    || m(a(x, y), z) != a(m(x, z), m(y, z))
                {
                    return false;
                }
            }
        }
    }
    true
}

fn raw_of(s: &StarRing) -> RawTables {
    RawTables::from_rows(&s.add_rows(), &s.mul_rows(), s.zero().index(), s.one().index()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn fast_validation_agrees_with_exhaustive_scan(
        s in small_ring(),
        which in 0usize..3,
        row in any::<prop::sample::Index>(),
        col in any::<prop::sample::Index>(),
        val in any::<prop::sample::Index>(),
    ) {
        let mut raw = raw_of(&s);
        let n = raw.order;
        let (r, c, v) = (row.index(n), col.index(n), val.index(n));
        match which {
            0 => raw.add[r * n + c] = v,
            1 => raw.mul[r * n + c] = v,
            _ => {}
        }
        prop_assert_eq!(validate_ring(&raw).is_ok(), exhaustive_ring_check(&raw));
    }

    #[test]
    fn pow_is_additive_in_the_exponent(s in small_ring(), x in any::<prop::sample::Index>(),
                                       j in 0u64..40, k in 0u64..40) {
        let n = s.order() as u64;
        let (j, k) = (j % (n + 1), k % (n + 1));
        let x = Element::from_index(x.index(s.order()));
        prop_assert_eq!(s.pow(x, j + k), s.mul(s.pow(x, j), s.pow(x, k)));
        prop_assert_eq!(s.pow(x, 0), s.one());
    }

    #[test]
    fn characteristic_divides_additive_exponent(s in small_ring()) {
        prop_assert_eq!(s.additive_exponent() % s.characteristic(), 0);
    }

    #[test]
    fn structural_sets_are_star_closed(s in small_ring()) {
        let nil = nilpotents(&s).members;
        let j = jacobson_radical(&s);
        let u = units(&s);
        for x in s.elements() {
            prop_assert_eq!(nil.contains(x), nil.contains(s.star(x)));
            prop_assert_eq!(j.contains(x), j.contains(s.star(x)));
            prop_assert_eq!(u.contains(x), u.contains(s.star(x)));
        }
        prop_assert!(projections(&s).is_subset(&idempotents(&s)));
        prop_assert!(j.is_subset(&u.complement()));
    }

    #[test]
    fn unit_routes_agree(s in small_ring()) {
        prop_assert_eq!(units(&s), units_by_inverse_scan(&s));
    }

    #[test]
    fn class_implications(s in small_ring()) {
        let c = Classifier::new(&s).classify();
        let imp = |a: bool, b: bool| !a || b;
        prop_assert!(imp(c.strongly_nil_star_clean.holds, c.strongly_j_star_clean.holds));
        prop_assert!(imp(c.strongly_j_star_clean.holds, c.strongly_star_clean.holds));
        prop_assert!(imp(c.uniquely_strongly_nil_star_clean.holds, c.strongly_nil_star_clean.holds));
        prop_assert!(imp(c.strongly_nil_star_clean.holds, c.strongly_nil_clean.holds));
        prop_assert!(imp(c.star_boolean.holds, c.star_boolean_like.holds));
        prop_assert!(imp(c.star_boolean_like.holds, c.strongly_nil_star_clean.holds));
        prop_assert!(imp(c.star_boolean.holds, c.boolean.holds));
        prop_assert!(imp(c.boolean.holds, c.boolean_like.holds));
        prop_assert!(imp(c.strongly_nil_star_clean.holds, c.sets.nilpotents == c.sets.jacobson));
    }

    #[test]
    fn decompositions_are_genuine(s in small_ring()) {
        let d = Classifier::new(&s).strongly_nil_star_clean();
        if let Witness::Decompositions { splits, .. } = d.witness {
            let p = projections(&s);
            let nil = nilpotents(&s).members;
            prop_assert_eq!(splits.len(), s.order());
            for sp in splits {
                prop_assert_eq!(s.add(sp.part, sp.rest), sp.x);
                prop_assert!(p.contains(sp.part) && nil.contains(sp.rest));
                prop_assert!(sp.commutes && s.commute(sp.part, sp.rest));
            }
        }
    }

    #[test]
    fn spec_round_trip(s in small_ring()) {
        let back = load_star_ring(&to_json(&s), HARD_MAX_ORDER).unwrap();
        prop_assert_eq!(spec_hash(&back), spec_hash(&s));
        prop_assert_eq!(
            Classifier::new(&back).classify().report().content_hash(),
            Classifier::new(&s).classify().report().content_hash()
        );
    }

    #[test]
    fn recipe_display_round_trip(e in select(SMALL)) {
        let r: Recipe = e.parse().unwrap();
        prop_assert_eq!(r.to_string().parse::<Recipe>().unwrap(), r);
    }

    #[test]
    fn extension_orders(b in select(&["zn:2", "zn:3", "zn:4", "product:zn:2,zn:2"][..]), k in 1usize..4) {
        let base = ring(b);
        let n = base.order();
        let z = base.zero();
        let ext = extend_ri(&ExtensionSpec { base: &base, mu: z, eta: z }).unwrap();
        let poly2 = poly_quotient(&base, 2).unwrap();
        prop_assert_eq!(ext.order(), n * n);
        prop_assert_eq!(ext.mul_rows(), poly2.mul_rows());
        prop_assert_eq!(poly_quotient(&base, k).unwrap().order(), n.pow(k as u32));
    }

    #[test]
    fn ideals_match_subgroup_scan(s in small_ring()) {
        let mut a: Vec<_> = all_ideals(&s, 64).unwrap().into_iter().map(|i| i.members).collect();
        let mut b: Vec<_> = ideals_by_subgroup_scan(&s).into_iter().map(|i| i.members).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn quotient_orders_divide(s in small_ring(), g in any::<prop::sample::Index>()) {
        let x = Element::from_index(g.index(s.order()));
        let i = generated_ideal(&s, &[x]);
        prop_assert!(i.contains(x));
        let q = quotient_ring(&s, &i).unwrap();
        prop_assert_eq!(q.ring.order() * i.len(), s.order());
    }

    #[test]
    fn corrupted_involutions_are_rejected(s in small_ring(), a in any::<prop::sample::Index>(),
                                          b in any::<prop::sample::Index>()) {
        let mut perm = s.involution().to_indices();
        let (a, b) = (a.index(perm.len()), b.index(perm.len()));
        perm.swap(a, b);
        let ok = StarRing::new(s.ring().clone(), &perm).is_ok();
        let direct = {
            let p = |x: Element| Element::from_index(perm[x.index()]);
            s.elements().all(|x| p(p(x)) == x
                && s.elements().all(|y| p(s.add(x, y)) == s.add(p(x), p(y))
                    && p(s.mul(x, y)) == s.mul(p(y), p(x))))
        };
        prop_assert_eq!(ok, direct);
    }
}
