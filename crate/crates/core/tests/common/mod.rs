#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use frobkit::linalg::Matrix;
use frobkit::zoo::{self, Quiver};
use frobkit::{check_morphism, direct_product, ideal_closure, quotient, tensor_product};
use frobkit::{Algebra, AlgebraMorphism, Element, Field, Scalar, Tensor2};
use rand::seq::SliceRandom;
use rand::Rng;

pub const Q: Field = Field::Rational;

pub fn arc(a: Algebra) -> Arc<Algebra> {
    Arc::new(a)
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn sample(name: &str) -> String {
    let path = format!("{}/samples/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn quiver_sample(name: &str) -> Algebra {
    let qf = frobkit::format::parse_quiver(&sample(name), Q).unwrap();
    zoo::path_algebra(&qf.quiver, qf.bound).unwrap()
}

pub fn index(a: &Algebra, label: &str) -> usize {
    a.labels()
        .iter()
        .position(|l| l == label)
        .unwrap_or_else(|| panic!("no basis element `{label}`"))
}

pub fn el(a: &Algebra, label: &str) -> Element {
    a.basis(index(a, label))
}

/// `Σ x ⊗ y` over pairs of elements.
pub fn tensor_of(a: &Algebra, pairs: &[(Element, Element)]) -> Tensor2 {
    pairs
        .iter()
        .fold(Tensor2::zero(a.field(), a.dim()), |acc, (x, y)| {
            acc.add(&Tensor2::elementary(x, y)).unwrap()
        })
}

/// Commutative square quiver with `ab = cd`; `a, b` across the top.
pub fn square() -> Algebra {
    quiver_sample("square.quiver")
}

pub fn a2() -> Algebra {
    let mut q = Quiver::new(Q, 2).unwrap();
    q.add_arrow("eta", 0, 1).unwrap();
    zoo::path_algebra(&q, None).unwrap()
}

/// The isomorphism `A2 ⊗ A2 -> square` on the tensor basis `i * 3 + j`
/// over `e1, e2, eta`.
pub fn phi(b: &Arc<Algebra>, c: &Arc<Algebra>) -> AlgebraMorphism {
    let ab = c.multiply(&el(c, "a"), &el(c, "b")).unwrap();
    let images: [(usize, Element); 9] = [
        (0, el(c, "e1")),
        (1, el(c, "e2")),
        (3, el(c, "e3")),
        (4, el(c, "e4")),
        (2, el(c, "a")),
        (7, el(c, "b")),
        (6, el(c, "c")),
        (5, el(c, "d")),
        (8, ab),
    ];
    let mut f = Matrix::zeros(Q, 9, 9);
    for (col, img) in images {
        for (row, s) in img.coords().iter().enumerate() {
            f.set(row, col, s.clone());
        }
    }
    check_morphism(b, c, f).unwrap()
}

/// Radical square zero quotient of the A4 path algebra.
pub fn a4_rad2() -> Algebra {
    let a = arc(zoo::linear_quiver_algebra(Q, 4).unwrap());
    let j = ideal_closure(&a, &[el(&a, "ab"), el(&a, "bc")]).unwrap();
    (*quotient(&a, &j).unwrap().algebra).clone()
}

/// The test zoo, each member named.
pub fn zoo_members() -> Vec<(String, Algebra)> {
    let mut out: Vec<(String, Algebra)> = Vec::new();
    out.push(("k".into(), zoo::matrix_algebra(Q, 1).unwrap()));
    for n in 2..=5 {
        out.push((format!("kZ{n}"), zoo::cyclic_group_algebra(Q, n).unwrap()));
    }
    out.push(("kZ3/F2".into(), zoo::cyclic_group_algebra(fp(2), 3).unwrap()));
    out.push(("kZ3/F3".into(), zoo::cyclic_group_algebra(fp(3), 3).unwrap()));
    out.push(("kZ2+Z2".into(), zoo::abelian_group_algebra(Q, &[2, 2]).unwrap()));
    out.push(("kZ2+Z2/F3".into(), zoo::abelian_group_algebra(fp(3), &[2, 2]).unwrap()));
    out.push(("M2".into(), zoo::matrix_algebra(Q, 2).unwrap()));
    out.push(("M3".into(), zoo::matrix_algebra(Q, 3).unwrap()));
    out.push(("M2/F5".into(), zoo::matrix_algebra(fp(5), 2).unwrap()));
    for n in 1..=3 {
        out.push((format!("truncpoly{n}"), zoo::truncated_polynomial(Q, n).unwrap()));
    }
    out.push(("A2".into(), a2()));
    out.push(("A3".into(), zoo::linear_quiver_algebra(Q, 3).unwrap()));
    out.push(("A4".into(), zoo::linear_quiver_algebra(Q, 4).unwrap()));
    out.push(("A4/rad2".into(), a4_rad2()));
    out.push(("square".into(), square()));
    out.push(("loop3".into(), quiver_sample("loop.quiver")));
    out
}

/// Small random element with integer coordinates in `-2..=2`.
pub fn random_element(rng: &mut impl Rng, a: &Algebra) -> Element {
    let coords = (0..a.dim())
        .map(|_| {
            if rng.gen_bool(0.5) {
                a.field().zero()
            } else {
                a.field().from_i64(rng.gen_range(-2..=2))
            }
        })
        .collect();
    Element::new(coords)
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random derived algebras: direct and tensor products of small zoo members
/// and quotients by the ideal of a random element. Alternates kinds.
pub fn random_derived(rng: &mut impl Rng, count: usize) -> Vec<(String, Algebra)> {
    let small: Vec<(String, Algebra)> = zoo_members()
        .into_iter()
        .filter(|(_, a)| a.dim() <= 4)
        .collect();
    let quotientable: Vec<(String, Algebra)> = zoo_members()
        .into_iter()
        .filter(|(_, a)| a.dim() <= 10)
        .collect();
    let mut out = Vec::new();
    while out.len() < count {
        match out.len() % 3 {
            0 | 1 => {
                let (na, a) = small.choose(rng).unwrap();
                let (nb, b) = small.choose(rng).unwrap();
                if a.field() != b.field() {
                    continue;
                }
                if out.len() % 3 == 0 {
                    let p = direct_product(&arc(a.clone()), &arc(b.clone())).unwrap();
                    out.push((format!("{na} x {nb}"), (*p.algebra).clone()));
                } else {
                    if a.dim() * b.dim() > 9 {
                        continue;
                    }
                    out.push((format!("{na} (x) {nb}"), tensor_product(a, b).unwrap()));
                }
            }
            _ => {
                let (na, a) = quotientable.choose(rng).unwrap();
                let a = arc(a.clone());
                let g = random_element(rng, &a);
                let j = ideal_closure(&a, &[g]).unwrap();
                if j.dim() == 0 || j.dim() == a.dim() {
                    continue;
                }
                let q = quotient(&a, &j).unwrap();
                out.push((format!("{na}/({}-dim ideal)", j.dim()), (*q.algebra).clone()));
            }
        }
    }
    out
}

/// Structure constants read off by multiplying basis elements.
fn product(a: &Algebra, i: usize, j: usize) -> Vec<Scalar> {
    a.multiply(&a.basis(i), &a.basis(j)).unwrap().into_coords()
}

/// Dense rank by plain Gaussian elimination with full row swaps.
pub fn dense_rank(field: Field, mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|s| s * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for k in c..cols {
                    let v = &rows[r][k] - &(&f * &pivot[k]);
                    rows[r][k] = v;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    let _ = field;
    rank
}

/// Dimension of `{T : (b_k ⊗ 1) T = T (1 ⊗ b_k) for all k}` straight from
/// the definition, by dense elimination.
pub fn oracle_frobdim(a: &Algebra) -> usize {
    let n = a.dim();
    let f = a.field();
    let mut rows = Vec::new();
    for k in 0..n {
        let left: Vec<Vec<Scalar>> = (0..n).map(|i| product(a, k, i)).collect();
        let right: Vec<Vec<Scalar>> = (0..n).map(|j| product(a, j, k)).collect();
        for m in 0..n {
            for l in 0..n {
                // ((b_k ⊗ 1) T)[m][l] = Σ_i T[i][l] (b_k b_i)_m
                // (T (1 ⊗ b_k))[m][l] = Σ_j T[m][j] (b_j b_k)_l
                let mut row = vec![f.zero(); n * n];
                for i in 0..n {
                    row[i * n + l] += &left[i][m];
                }
                for j in 0..n {
                    row[m * n + j] -= &right[j][l];
                }
                rows.push(row);
            }
        }
    }
    n * n - dense_rank(f, rows)
}

type Sparse2 = BTreeMap<(usize, usize), Scalar>;

fn sparse_of(t: &Tensor2) -> Sparse2 {
    t.terms().into_iter().map(|(i, j, c)| ((i, j), c)).collect()
}

fn clean(mut m: Sparse2) -> Sparse2 {
    m.retain(|_, v| !v.is_zero());
    m
}

/// `Δ(x) = Σ T_pq (x b_p) ⊗ b_q`, computed from products of basis elements.
fn oracle_delta(a: &Algebra, t: &Sparse2, x: &[Scalar]) -> Sparse2 {
    let mut out = Sparse2::new();
    for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (&(p, q), c) in t {
            for (m, s) in product(a, i, p).into_iter().enumerate() {
                if !s.is_zero() {
                    *out.entry((m, q)).or_insert_with(|| a.field().zero()) += &(&(xi * c) * &s);
                }
            }
        }
    }
    clean(out)
}

fn oracle_left(a: &Algebra, y: usize, t: &Sparse2) -> Sparse2 {
    let mut out = Sparse2::new();
    for (&(p, q), c) in t {
        for (m, s) in product(a, y, p).into_iter().enumerate() {
            if !s.is_zero() {
                *out.entry((m, q)).or_insert_with(|| a.field().zero()) += &(c * &s);
            }
        }
    }
    clean(out)
}

fn oracle_right(a: &Algebra, t: &Sparse2, y: usize) -> Sparse2 {
    let mut out = Sparse2::new();
    for (&(p, q), c) in t {
        for (m, s) in product(a, q, y).into_iter().enumerate() {
            if !s.is_zero() {
                *out.entry((p, m)).or_insert_with(|| a.field().zero()) += &(c * &s);
            }
        }
    }
    clean(out)
}

/// Both bimodule diagrams on every basis pair: `Δ(b_i b_j) = b_i Δ(b_j) =
/// Δ(b_i) b_j`. Returns the first failing pair.
pub fn oracle_bimodule(a: &Algebra, t: &Tensor2) -> Option<(usize, usize)> {
    let ts = sparse_of(t);
    let n = a.dim();
    let deltas: Vec<Sparse2> = (0..n).map(|i| oracle_delta(a, &ts, a.basis(i).coords())).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = oracle_delta(a, &ts, &product(a, i, j));
            if lhs != oracle_left(a, i, &deltas[j]) || lhs != oracle_right(a, &deltas[i], j) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `(Δ ⊗ 1)Δ(b_k) = (1 ⊗ Δ)Δ(b_k)` for every `k`, via the oracle coproduct.
pub fn oracle_coassociative(a: &Algebra, t: &Tensor2) -> bool {
    let ts = sparse_of(t);
    let n = a.dim();
    let deltas: Vec<Sparse2> = (0..n).map(|i| oracle_delta(a, &ts, a.basis(i).coords())).collect();
    (0..n).all(|k| {
        let mut left: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut right = left.clone();
        for (&(i, j), d) in &deltas[k] {
            for (&(p, q), c) in &deltas[i] {
                *left.entry((p, q, j)).or_insert_with(|| a.field().zero()) += &(d * c);
            }
            for (&(p, q), c) in &deltas[j] {
                *right.entry((i, p, q)).or_insert_with(|| a.field().zero()) += &(d * c);
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        left == right
    })
}

/// Random integer combination of tensors.
pub fn random_combination(rng: &mut impl Rng, field: Field, n: usize, ts: &[Tensor2]) -> Tensor2 {
    ts.iter().fold(Tensor2::zero(field, n), |acc, t| {
        acc.add(&t.scale(&field.from_i64(rng.gen_range(-3..=3)))).unwrap()
    })
}
