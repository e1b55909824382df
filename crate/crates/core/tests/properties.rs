//! Property tests over randomly drawn matrices, field elements, orbits and
//! enveloping-algebra words.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use orbitforge::algebra::algebra;
use orbitforge::centralizer::compute_centralizer;
use orbitforge::enveloping::{PbwContext, Poly};
use orbitforge::exact::linalg::{kernel, mat_vec, rank, solve};
use orbitforge::exact::{q, smith_normal_form, Field, Fp, SVec, SparseMatrix, Q};
use orbitforge::matrix::{jordan_type, Mat};
use orbitforge::orbits::{build_nilpotent, orbit_dimension};
use orbitforge::partitions::{
    admissible_partitions, build_pyramid, is_almost_rigid, is_rigid, pairing_involution, Epsilon,
    Partition,
};

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn q_rows(m: &[Vec<i64>]) -> Vec<SVec<Q>> {
    m.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(j, x)| (j, q(*x)))
                .collect()
        })
        .collect()
}

fn det_i(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for (j, x) in m[0].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let t = x * det_i(&minor);
        acc = if j % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors: the k-th determinantal divisor.
fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect())
                .collect();
            g = g.gcd(&det_i(&sub));
        }
    }
    g
}

fn orbit() -> impl Strategy<Value = (Partition, Epsilon)> {
    (2usize..=10, any::<bool>(), any::<prop::sample::Index>()).prop_filter_map(
        "no orbits",
        |(n, plus, idx)| {
            let eps = if plus { Epsilon::Plus } else { Epsilon::Minus };
            let all = admissible_partitions(n, eps);
            (!all.is_empty()).then(|| (all[idx.index(all.len())].clone(), eps))
        },
    )
}

fn algebra_params() -> impl Strategy<Value = (usize, Epsilon)> {
    (2usize..=7, any::<bool>()).prop_map(|(n, plus)| {
        if plus || n % 2 == 1 {
            (n, Epsilon::Plus)
        } else {
            (n, Epsilon::Minus)
        }
    })
}

fn coeffs(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, dim)
}

fn sv(c: &[i64]) -> SVec<Q> {
    c.iter()
        .enumerate()
        .filter(|(_, x)| **x != 0)
        .map(|(i, x)| (i, q(*x)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_vectors_are_annihilated(m in int_matrix()) {
        let rows = q_rows(&m);
        let ncols = m[0].len();
        let ker = kernel(&rows, ncols, &());
        for v in &ker {
            prop_assert!(mat_vec(&rows, v, &()).is_empty());
        }
        prop_assert_eq!(ker.len() + rank(&rows, &()), ncols);
    }

    #[test]
    fn solve_reproduces_consistent_right_sides(m in int_matrix(), x in prop::collection::vec(-4i64..=4, 4)) {
        let rows = q_rows(&m);
        let ncols = m[0].len();
        let x0 = sv(&x[..ncols]);
        let b = mat_vec(&rows, &x0, &());
        let sol = solve(&rows, ncols, &b, &()).expect("consistent system");
        prop_assert_eq!(mat_vec(&rows, &sol, &()), b);
    }

    #[test]
    fn rank_drops_only_mod_p(m in int_matrix()) {
        let rows = q_rows(&m);
        let rq = rank(&rows, &());
        for p in [3u64, 5, 7] {
            let fp: Vec<SVec<Fp>> = m
                .iter()
                .map(|row| row.iter().enumerate().map(|(j, x)| (j, Fp::from_i64(*x, p))).filter(|(_, v)| !v.vanishes()).collect())
                .collect();
            prop_assert!(rank(&fp, &p) <= rq);
        }
    }

    #[test]
    fn snf_matches_determinantal_divisors(m in int_matrix()) {
        let a = SparseMatrix::from_int_rows(&m);
        let s = smith_normal_form(&a).unwrap();
        prop_assert!(s.verify(&a));
        let mut prod = BigInt::from(1);
        for (k, d) in s.divisors.iter().enumerate() {
            prod *= d;
            prop_assert_eq!(prod.abs(), determinantal_divisor(&m, k + 1));
        }
    }

    #[test]
    fn fp_field_laws(a in 0u64..101, b in 0u64..101, c in 0u64..101, p in prop::sample::select(vec![3u64, 5, 7, 11, 101])) {
        let (x, y, z) = (Fp::new(a % p, p), Fp::new(b % p, p), Fp::new(c % p, p));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.pow(p), x);
        if !x.vanishes() {
            prop_assert!(x.mul(&x.inv()).is_one());
        }
        prop_assert!(x.sub(&x).vanishes());
    }

    #[test]
    fn pairing_and_pyramid_symmetry((l, eps) in orbit()) {
        let inv = pairing_involution(&l, eps).unwrap();
        let parts = l.parts();
        for i in 0..inv.len() {
            let j = inv.partner(i);
            prop_assert_eq!(inv.partner(j), i);
            prop_assert_eq!(parts[i], parts[j]);
            prop_assert_eq!(inv.is_fixed(i), eps.twist(parts[i]) == -1);
        }
        let pyr = build_pyramid(&l, eps).unwrap();
        prop_assert_eq!(pyr.boxes.len(), l.total());
        for b in &pyr.boxes {
            let m = pyr.get(-b.idx).expect("mirror box");
            prop_assert_eq!((m.row, m.col), (-b.row, -b.col));
        }
    }

    #[test]
    fn rigid_implies_almost_rigid((l, eps) in orbit()) {
        if is_rigid(&l, eps).unwrap() {
            prop_assert!(is_almost_rigid(&l));
        }
    }

    #[test]
    fn brackets_stay_in_g((n, eps) in algebra_params(), a in coeffs(21), b in coeffs(21)) {
        let g = algebra(n, eps).unwrap();
        let d = g.dim();
        let (x, y) = (&a[..d], &b[..d]);
        let (xm, ym) = (g.element(&sv(x), &()), g.element(&sv(y), &()));
        let br = xm.bracket(&ym);
        prop_assert!(g.contains(&br));
        prop_assert_eq!(g.element(&g.bracket(&sv(x), &sv(y), &()), &()), br);
        // (Xu, v) + (u, Xv) = 0 as Xᵀ J + J X = 0
        let j = g.form.gram_mat::<Q>(&());
        prop_assert!(xm.transpose().mul(&j).add(&j.mul(&xm)).is_zero());
    }

    #[test]
    fn sigma_respects_brackets((n, eps) in algebra_params(), a in coeffs(49), b in coeffs(49)) {
        let g = algebra(n, eps).unwrap();
        let mk = |c: &[i64]| {
            let mut m = Mat::<Q>::zero(n);
            for i in 0..n {
                for k in 0..n {
                    if c[i * 7 + k] != 0 {
                        m.add_entry(i, k, &q(c[i * 7 + k]));
                    }
                }
            }
            m
        };
        let (x, y) = (mk(&a), mk(&b));
        prop_assert_eq!(g.sigma(&x.bracket(&y)), g.sigma(&x).bracket(&g.sigma(&y)));
        prop_assert!(g.contains(&x.add(&g.sigma(&x))));
    }

    #[test]
    fn rank_nullity_for_ad_e((l, eps) in orbit()) {
        let rep = build_nilpotent(&l, eps).unwrap();
        prop_assert_eq!(jordan_type(&rep.e, &()), Some(l.parts().to_vec()));
        let c = compute_centralizer(&rep).unwrap();
        let ad = rep.g.ad_rows(&rep.e_coords, &());
        let image_dim = rank(&ad, &());
        prop_assert_eq!(image_dim + c.dim(), rep.g.dim());
        prop_assert_eq!(orbit_dimension(&l, eps).unwrap().0, image_dim);
    }
}

fn word_strategy(d: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..d, 1i64..=3), 1..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enveloping_product_is_associative(
        a in word_strategy(10), b in word_strategy(10), c in word_strategy(10),
    ) {
        let rep = build_nilpotent(&Partition::parse("2,1,1").unwrap(), Epsilon::Minus).unwrap();
        let ctx = PbwContext::new(&rep).unwrap();
        let word = |w: &[(usize, i64)]| -> Poly {
            ctx.u_word(&w.iter().map(|(i, k)| vec![(*i, q(*k))]).collect::<Vec<_>>())
        };
        let (x, y, z) = (word(&a), word(&b), word(&c));
        let l = ctx.u_multiply(&ctx.u_multiply(&x, &y), &z);
        let r = ctx.u_multiply(&x, &ctx.u_multiply(&y, &z));
        prop_assert_eq!(l, r);
    }
}
