//! Builders for the concrete rings: Z_n, products, the extension R[i],
//! truncated polynomial rings, and the explicit small examples.
//!
//! Every builder produces raw tables and sends them through full ring and
//! involution validation.

use crate::error::ConstructionError;
use crate::ring::{Element, RawTables, RingTable, HARD_MAX_ORDER};
use crate::star::StarRing;

type Result<T> = std::result::Result<T, ConstructionError>;

fn check_cap(order: Option<usize>, cap: usize) -> Result<usize> {
    let cap = cap.min(HARD_MAX_ORDER);
    match order {
        Some(o) if o <= cap => Ok(o),
        Some(o) => Err(ConstructionError::CapExceeded { order: o, cap }),
        None => Err(ConstructionError::CapExceeded {
            order: usize::MAX,
            cap,
        }),
    }
}

fn finish(raw: RawTables, cap: usize, star: &[usize], labels: Option<Vec<String>>) -> Result<StarRing> {
    let mut ring = RingTable::with_cap(raw, cap.min(HARD_MAX_ORDER))?;
    if let Some(l) = labels {
        ring = ring.with_labels(l);
    }
    Ok(StarRing::new(ring, star)?)
}

/// Integers mod `n` with the identity involution. `n = 1` is rejected.
pub fn make_zn(n: usize) -> Result<StarRing> {
    make_zn_capped(n, HARD_MAX_ORDER, false)
}

/// Integers mod `n`, optionally admitting the zero ring.
pub fn make_zn_capped(n: usize, cap: usize, allow_zero_ring: bool) -> Result<StarRing> {
    if n == 1 && !allow_zero_ring {
        return Err(ConstructionError::ZeroRing(n));
    }
    check_cap(Some(n), cap)?;
    if n == 0 {
        return Err(ConstructionError::Ring(
            crate::error::MalformedTable::EmptyCarrier.into(),
        ));
    }
    let raw = RawTables::from_fn(n, 0, 1 % n, |x, y| (x + y) % n, |x, y| (x * y) % n);
    let id: Vec<usize> = (0..n).collect();
    finish(raw, cap, &id, None)
}

/// Componentwise product; `(x, y)` has index `x * |B| + y`.
pub fn direct_product(a: &StarRing, b: &StarRing) -> Result<StarRing> {
    direct_product_capped(a, b, HARD_MAX_ORDER)
}

pub fn direct_product_capped(a: &StarRing, b: &StarRing, cap: usize) -> Result<StarRing> {
    let (na, nb) = (a.order(), b.order());
    let order = check_cap(na.checked_mul(nb), cap)?;
    let split = |i: usize| (Element::from_index(i / nb), Element::from_index(i % nb));
    let join = |x: Element, y: Element| x.index() * nb + y.index();
    let raw = RawTables::from_fn(
        order,
        join(a.zero(), b.zero()),
        join(a.one(), b.one()),
        |i, j| {
            let ((x1, y1), (x2, y2)) = (split(i), split(j));
            join(a.add(x1, x2), b.add(y1, y2))
        },
        |i, j| {
            let ((x1, y1), (x2, y2)) = (split(i), split(j));
            join(a.mul(x1, x2), b.mul(y1, y2))
        },
    );
    let star: Vec<usize> = (0..order)
        .map(|i| {
            let (x, y) = split(i);
            join(a.star(x), b.star(y))
        })
        .collect();
    let labels = (0..order)
        .map(|i| {
            let (x, y) = split(i);
            format!("({},{})", a.label(x), b.label(y))
        })
        .collect();
    finish(raw, cap, &star, Some(labels))
}

/// Parameters of `R[i]` with `i² = μi + η`.
#[derive(Clone, Debug)]
pub struct ExtensionSpec<'a> {
    pub base: &'a StarRing,
    pub mu: Element,
    pub eta: Element,
}

/// `R[i]` on pairs `(a, b) ≡ a + bi`, index `a * |R| + b`, with
/// `(a + bi)* = a* + b*i`.
pub fn extend_ri(spec: &ExtensionSpec) -> Result<StarRing> {
    extend_ri_capped(spec, HARD_MAX_ORDER)
}

pub fn extend_ri_capped(spec: &ExtensionSpec, cap: usize) -> Result<StarRing> {
    let r = spec.base;
    if let Some((x, y)) = r.commutativity_witness() {
        return Err(ConstructionError::NonCommutativeBase { x, y });
    }
    for (name, v) in [("mu", spec.mu), ("eta", spec.eta)] {
        if v.index() >= r.order() {
            return Err(ConstructionError::Ring(crate::error::RingError::ElementOutOfRange {
                index: v.index(),
                order: r.order(),
            }));
        }
        if r.star(v) != v {
            return Err(ConstructionError::NotSymmetric { name, value: v });
        }
    }
    let n = r.order();
    let order = check_cap(n.checked_mul(n), cap)?;
    let split = |i: usize| (Element::from_index(i / n), Element::from_index(i % n));
    let join = |a: Element, b: Element| a.index() * n + b.index();
    let (mu, eta) = (spec.mu, spec.eta);
    let raw = RawTables::from_fn(
        order,
        join(r.zero(), r.zero()),
        join(r.one(), r.zero()),
        |i, j| {
            let ((a, b), (c, d)) = (split(i), split(j));
            join(r.add(a, c), r.add(b, d))
        },
        |i, j| {
            let ((a, b), (c, d)) = (split(i), split(j));
            let bd = r.mul(b, d);
            let re = r.add(r.mul(a, c), r.mul(bd, eta));
            let im = r.add(r.add(r.mul(a, d), r.mul(b, c)), r.mul(bd, mu));
            join(re, im)
        },
    );
    let star: Vec<usize> = (0..order)
        .map(|i| {
            let (a, b) = split(i);
            join(r.star(a), r.star(b))
        })
        .collect();
    let labels = (0..order)
        .map(|i| {
            let (a, b) = split(i);
            format!("{}+{}i", r.label(a), r.label(b))
        })
        .collect();
    finish(raw, cap, &star, Some(labels))
}

/// `R[x]/(xⁿ)` on coefficient tuples `(a₀, …, aₙ₋₁)`, `a₀` most significant
/// in the index, with the coefficientwise involution.
pub fn poly_quotient(s: &StarRing, n: usize) -> Result<StarRing> {
    poly_quotient_capped(s, n, HARD_MAX_ORDER)
}

pub fn poly_quotient_capped(s: &StarRing, n: usize, cap: usize) -> Result<StarRing> {
    assert!(n >= 1, "truncation degree must be positive");
    let base = s.order();
    let order = check_cap(
        u32::try_from(n).ok().and_then(|e| base.checked_pow(e)),
        cap,
    )?;
    let digits = |mut i: usize| {
        let mut d = vec![s.zero(); n];
        for k in (0..n).rev() {
            d[k] = Element::from_index(i % base);
            i /= base;
        }
        d
    };
    let join = |d: &[Element]| d.iter().fold(0, |acc, x| acc * base + x.index());
    let mut zero = vec![s.zero(); n];
    let zero_ix = join(&zero);
    zero[0] = s.one();
    let one_ix = join(&zero);
    let coeffs: Vec<Vec<Element>> = (0..order).map(digits).collect();
    let raw = RawTables::from_fn(
        order,
        zero_ix,
        one_ix,
        |i, j| {
            let v: Vec<Element> = coeffs[i]
                .iter()
                .zip(&coeffs[j])
                .map(|(&a, &b)| s.add(a, b))
                .collect();
            join(&v)
        },
        |i, j| {
            let (p, q) = (&coeffs[i], &coeffs[j]);
            let mut v = vec![s.zero(); n];
            for (k, &a) in p.iter().enumerate() {
                for (l, &b) in q[..n - k].iter().enumerate() {
                    v[k + l] = s.add(v[k + l], s.mul(a, b));
                }
            }
            join(&v)
        },
    );
    let star: Vec<usize> = coeffs
        .iter()
        .map(|c| join(&c.iter().map(|&a| s.star(a)).collect::<Vec<_>>()))
        .collect();
    let labels = coeffs
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(|&a| s.label(a)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    finish(raw, cap, &star, Some(labels))
}

/// 2×2 matrix `[[a, b], [c, d]]` stored row-major.
type Mat = [usize; 4];

fn mat_add(m: usize, x: Mat, y: Mat) -> Mat {
    std::array::from_fn(|k| (x[k] + y[k]) % m)
}

fn mat_mul(m: usize, x: Mat, y: Mat) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % m,
        (x[0] * y[1] + x[1] * y[3]) % m,
        (x[2] * y[0] + x[3] * y[2]) % m,
        (x[2] * y[1] + x[3] * y[3]) % m,
    ]
}

fn mat_label(x: Mat) -> String {
    format!("[[{},{}],[{},{}]]", x[0], x[1], x[2], x[3])
}

/// Ring on an explicit list of matrices over Z_m under the usual operations.
fn matrix_ring(m: usize, mats: &[Mat], star: impl Fn(Mat) -> Mat) -> Result<StarRing> {
    let find = |x: Mat, op: &'static str| {
        mats.iter()
            .position(|&y| y == x)
            .ok_or(ConstructionError::NotClosed { op })
    };
    let n = mats.len();
    let zero = find([0, 0, 0, 0], "addition")?;
    let one = find([1, 0, 0, 1], "multiplication")?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &x in mats {
        for &y in mats {
            add.push(find(mat_add(m, x, y), "addition")?);
            mul.push(find(mat_mul(m, x, y), "multiplication")?);
        }
    }
    let perm = mats
        .iter()
        .map(|&x| find(star(x), "the involution"))
        .collect::<Result<Vec<_>>>()?;
    let raw = RawTables {
        order: n,
        add,
        mul,
        zero,
        one,
    };
    let labels = mats.iter().map(|&x| mat_label(x)).collect();
    finish(raw, HARD_MAX_ORDER, &perm, Some(labels))
}

fn transpose(x: Mat) -> Mat {
    [x[0], x[2], x[1], x[3]]
}

/// The four matrices `0, I, [[1,1],[0,0]], [[0,1],[0,1]]` over Z_2 with
/// `(a, b, c, d) ↦ (a+b, b, a+b+c+d, b+d)`.
pub fn example_twisted_boolean_4() -> Result<StarRing> {
    let mats = [[0, 0, 0, 0], [1, 0, 0, 1], [1, 1, 0, 0], [0, 1, 0, 1]];
    matrix_ring(2, &mats, |[a, b, c, d]| {
        [(a + b) % 2, b, (a + b + c + d) % 2, (b + d) % 2]
    })
}

/// Triples `(a, b, c)` standing for `[[a, b], [c, a]]` over Z_2 with product
/// `(aa', ab' + ba', ca' + ac')` and the involution swapping `b` and `c`.
/// Index is `4a + 2b + c`.
pub fn example_boolean_like_8() -> Result<StarRing> {
    let split = |i: usize| (i >> 2, (i >> 1) & 1, i & 1);
    let join = |a: usize, b: usize, c: usize| (a << 2) | (b << 1) | c;
    let raw = RawTables::from_fn(
        8,
        0,
        join(1, 0, 0),
        |i, j| i ^ j,
        |i, j| {
            let ((a, b, c), (a2, b2, c2)) = (split(i), split(j));
            join(a & a2, (a & b2) ^ (b & a2), (c & a2) ^ (a & c2))
        },
    );
    let star: Vec<usize> = (0..8)
        .map(|i| {
            let (a, b, c) = split(i);
            join(a, c, b)
        })
        .collect();
    let labels = (0..8)
        .map(|i| {
            let (a, b, c) = split(i);
            mat_label([a, b, c, a])
        })
        .collect();
    finish(raw, HARD_MAX_ORDER, &star, Some(labels))
}

/// Eight Z_2 matrices closed under the usual operations, with transpose.
pub fn example_transpose_8() -> Result<StarRing> {
    let mats = [
        [0, 0, 0, 0],
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [1, 0, 1, 0],
        [0, 1, 0, 1],
        [1, 1, 1, 1],
    ];
    matrix_ring(2, &mats, transpose)
}

/// `[[a, 2b], [0, c]]` over Z_4 with `[[a,2b],[0,c]] ↦ [[c,−2b],[0,a]]`.
/// Index is `8a + 4b + c` with `b ∈ {0, 1}`.
pub fn example_triangular_z4() -> Result<StarRing> {
    let mut mats = Vec::with_capacity(32);
    for a in 0..4 {
        for b in 0..2 {
            for c in 0..4 {
                mats.push([a, 2 * b, 0, c]);
            }
        }
    }
    matrix_ring(4, &mats, |[a, b, _, c]| [c, (4 - b) % 4, 0, a])
}

/// All 2×2 matrices over Z_2 with transpose; index `8a + 4b + 2c + d`.
pub fn matrices_2x2_z2() -> Result<StarRing> {
    let mats: Vec<Mat> = (0..16)
        .map(|i| [(i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1])
        .collect();
    matrix_ring(2, &mats, transpose)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::{idempotents, nilpotents, projections};

    fn e(i: usize) -> Element {
        Element::from_index(i)
    }

    fn idx(s: &crate::set::ElemSet) -> Vec<usize> {
        s.to_indices()
    }

    #[test]
    fn zn_basics() {
        assert_eq!(make_zn(2).unwrap().order(), 2);
        assert_eq!(make_zn(4).unwrap().characteristic(), 4);
        assert!(matches!(make_zn(1), Err(ConstructionError::ZeroRing(1))));
        assert_eq!(make_zn_capped(1, 16, true).unwrap().order(), 1);
        assert!(matches!(
            make_zn_capped(20, 16, false),
            Err(ConstructionError::CapExceeded { order: 20, cap: 16 })
        ));
    }

    #[test]
    fn products() {
        let z2 = make_zn(2).unwrap();
        let z4 = make_zn(4).unwrap();
        let p = direct_product(&z2, &z4).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.characteristic(), 4);
        assert_eq!(p.label(p.one()), "(1,1)");
        assert!(p.is_commutative());
    }

    #[test]
    fn extension_orders_and_field() {
        let z2 = make_zn(2).unwrap();
        let r = extend_ri(&ExtensionSpec { base: &z2, mu: e(0), eta: e(1) }).unwrap();
        assert_eq!(r.order(), 4);
        let gf4 = extend_ri(&ExtensionSpec { base: &z2, mu: e(1), eta: e(1) }).unwrap();
        // every nonzero element of GF(4) is a unit
        assert_eq!(crate::star::units(&gf4).len(), 3);
        assert_eq!(idx(&projections(&gf4)), vec![0, 2]);
    }

    #[test]
    fn extension_rejects_noncommutative_base() {
        let m = matrices_2x2_z2().unwrap();
        assert!(matches!(
            extend_ri(&ExtensionSpec { base: &m, mu: e(0), eta: e(0) }),
            Err(ConstructionError::NonCommutativeBase { .. })
        ));
    }

    #[test]
    fn extension_rejects_asymmetric_parameter() {
        let b = example_boolean_like_8().unwrap();
        // (0,1,0) is swapped with (0,0,1)
        assert!(matches!(
            extend_ri(&ExtensionSpec { base: &b, mu: e(2), eta: e(0) }),
            Err(ConstructionError::NotSymmetric { name: "mu", .. })
        ));
    }

    #[test]
    fn zero_extension_matches_truncated_polynomials() {
        for n in [2, 3, 4] {
            let z = make_zn(n).unwrap();
            let a = extend_ri(&ExtensionSpec { base: &z, mu: e(0), eta: e(0) }).unwrap();
            let b = poly_quotient(&z, 2).unwrap();
            assert_eq!(a.add_rows(), b.add_rows());
            assert_eq!(a.mul_rows(), b.mul_rows());
            assert_eq!(a.involution(), b.involution());
        }
    }

    #[test]
    fn polynomial_orders() {
        let z2 = make_zn(2).unwrap();
        let p1 = poly_quotient(&z2, 1).unwrap();
        assert_eq!(p1.add_rows(), z2.add_rows());
        assert_eq!(p1.mul_rows(), z2.mul_rows());
        assert_eq!(poly_quotient(&z2, 3).unwrap().order(), 8);
        assert!(matches!(
            poly_quotient(&z2, 13),
            Err(ConstructionError::CapExceeded { order: 8192, .. })
        ));
        // x³ = 0 in Z_2[x]/(x³): x is (0,1,0) = index 2
        let p3 = poly_quotient(&z2, 3).unwrap();
        assert_eq!(p3.pow(e(2), 2), e(1));
        assert_eq!(p3.pow(e(2), 3), e(0));
    }

    #[test]
    fn twisted_boolean_shape() {
        let s = example_twisted_boolean_4().unwrap();
        assert_eq!(s.involution().to_indices(), vec![0, 1, 3, 2]);
        assert_eq!(s.characteristic(), 2);
    }

    #[test]
    fn boolean_like_8_shape() {
        let s = example_boolean_like_8().unwrap();
        assert_eq!(idx(&idempotents(&s)), vec![0, 4]);
        assert_eq!(idx(&nilpotents(&s).members), vec![0, 1, 2, 3]);
        assert!(s.is_commutative());
    }

    #[test]
    fn transpose_8_shape() {
        let s = example_transpose_8().unwrap();
        assert!(!s.is_commutative());
        assert_eq!(idx(&idempotents(&s)), vec![0, 1, 3, 4, 5, 6]);
        assert_eq!(idx(&projections(&s)), vec![0, 1]);
        assert_eq!(s.label(s.star(e(3))), "[[1,0],[1,0]]");
    }

    #[test]
    fn triangular_shape() {
        let s = example_triangular_z4().unwrap();
        assert_eq!(s.order(), 32);
        assert!(!s.is_commutative());
        let d = e(1); // [[0,0],[0,1]]
        assert_eq!(s.mul(d, d), d);
        assert_ne!(s.star(d), d);
        assert_eq!(s.one(), e(9));
    }

    #[test]
    fn m2_shape() {
        let s = matrices_2x2_z2().unwrap();
        assert_eq!(s.order(), 16);
        assert_eq!(s.one(), e(9));
    }
}
