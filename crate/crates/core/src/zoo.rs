//! Constructors for standard algebra families: group algebras of finite
//! abelian groups, matrix algebras, truncated polynomial algebras and path
//! algebras of quivers with relations.
//!
//! Path conventions: a path is an arrow sequence read left to right, `ab`
//! means "`a` then `b`", and `e_i p` is nonzero exactly when `p` starts at
//! vertex `i`. Vertex idempotents are labelled `e1, e2, ...`; other paths are
//! labelled by concatenating their arrow labels.

use std::sync::Arc;

use crate::algebra::{ideal_closure, quotient, tensor_product, Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// `k[g]/(g^n - 1)` with basis `1, g, ..., g^{n-1}`.
pub fn cyclic_group_algebra(field: Field, n: usize) -> Result<Algebra> {
    cyclic_with_generator(field, n, "g")
}

fn cyclic_with_generator(field: Field, n: usize, gen: &str) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group order must be at least 1".into()));
    }
    let table = (0..n).flat_map(|i| (0..n).map(move |j| ((i, j), vec![((i + j) % n, field.one())])));
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    Algebra::build(field, n, table, unit, power_labels(gen, n))
}

fn power_labels(gen: &str, n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => gen.to_string(),
            _ => format!("{gen}^{i}"),
        })
        .collect()
}

/// Group algebra of `Z_{n_1} ⊕ ... ⊕ Z_{n_p}`, built as the tensor product of
/// the cyclic factors in the given order.
pub fn abelian_group_algebra(field: Field, factors: &[usize]) -> Result<Algebra> {
    const GENERATORS: [&str; 6] = ["g", "h", "k", "l", "m", "r"];
    if factors.is_empty() {
        return Err(Error::InvalidInput("at least one invariant factor is required".into()));
    }
    let mut acc: Option<Algebra> = None;
    for (idx, &n) in factors.iter().enumerate() {
        let gen = GENERATORS
            .get(idx)
            .map_or_else(|| format!("g{idx}"), |g| g.to_string());
        let factor = cyclic_with_generator(field, n, &gen)?;
        acc = Some(match acc {
            None => factor,
            Some(prev) => tensor_product(&prev, &factor)?,
        });
    }
    Ok(acc.expect("nonempty factors"))
}

/// `M_n(k)` with basis `E_ij` in row-major order.
pub fn matrix_algebra(field: Field, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidInput("matrix size must be at least 1".into()));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut table = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                table.push(((idx(i, j), idx(j, l)), vec![(idx(i, l), field.one())]));
            }
        }
    }
    let mut unit = vec![field.zero(); n * n];
    for i in 0..n {
        unit[idx(i, i)] = field.one();
    }
    let labels = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                if n < 10 {
                    format!("E{}{}", i + 1, j + 1)
                } else {
                    format!("E{}_{}", i + 1, j + 1)
                }
            })
        })
        .collect();
    Algebra::build(field, n * n, table, unit, labels)
}

/// `k[x]/(x^{n+1})` with basis `1, x, ..., x^n`.
pub fn truncated_polynomial(field: Field, n: usize) -> Result<Algebra> {
    let dim = n + 1;
    let table = (0..dim).flat_map(|i| {
        (0..dim)
            .filter(move |j| i + j < dim)
            .map(move |j| ((i, j), vec![(i + j, field.one())]))
    });
    let mut unit = vec![field.zero(); dim];
    unit[0] = field.one();
    Algebra::build(field, dim, table, unit, power_labels("x", dim))
}

fn parse_count(family: &str, arg: &str) -> Result<usize> {
    arg.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("`{family}` expects a nonnegative integer, found `{arg}`")))
}

/// Builds a named family member: `cyclic N`, `abelian N1,N2,...`, `matrix N`
/// or `truncpoly N`.
pub fn family(field: Field, name: &str, arg: &str) -> Result<Algebra> {
    match name {
        "cyclic" => cyclic_group_algebra(field, parse_count(name, arg)?),
        "abelian" => {
            let factors = arg
                .split(',')
                .map(|w| parse_count(name, w))
                .collect::<Result<Vec<_>>>()?;
            abelian_group_algebra(field, &factors)
        }
        "matrix" => matrix_algebra(field, parse_count(name, arg)?),
        "truncpoly" => truncated_polynomial(field, parse_count(name, arg)?),
        other => Err(Error::InvalidInput(format!("unknown zoo family `{other}`"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of nonempty paths, each given as arrow indices.
pub type Relation = Vec<(Scalar, Vec<usize>)>;

/// A finite quiver with relations. Vertices are `0..vertices` internally and
/// displayed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    field: Field,
    vertices: usize,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl Quiver {
    pub fn new(field: Field, vertices: usize) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidInput("a quiver needs at least one vertex".into()));
        }
        Ok(Quiver {
            field,
            vertices,
            arrows: Vec::new(),
            relations: Vec::new(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Adds an arrow between 0-based vertices; returns its index.
    pub fn add_arrow(&mut self, label: &str, source: usize, target: usize) -> Result<usize> {
        if source >= self.vertices || target >= self.vertices {
            return Err(Error::IndexOutOfRange {
                index: source.max(target),
                dim: self.vertices,
            });
        }
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::InvalidInput(format!("invalid arrow label `{label}`")));
        }
        if self.arrow_index(label).is_some() {
            return Err(Error::InvalidInput(format!("duplicate arrow label `{label}`")));
        }
        self.arrows.push(Arrow {
            label: label.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Splits a path word into arrows: either `a.b.c`, or a concatenation
    /// resolved greedily by longest matching arrow label.
    pub fn parse_path(&self, word: &str) -> Result<Vec<usize>> {
        let unknown = || Error::InvalidInput(format!("unknown path `{word}`"));
        if word.contains('.') {
            return word
                .split('.')
                .map(|l| self.arrow_index(l).ok_or_else(unknown))
                .collect();
        }
        let mut rest = word;
        let mut path = Vec::new();
        while !rest.is_empty() {
            let (idx, len) = self
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| rest.starts_with(a.label.as_str()))
                .map(|(i, a)| (i, a.label.len()))
                .max_by_key(|&(_, len)| len)
                .ok_or_else(unknown)?;
            path.push(idx);
            rest = &rest[len..];
        }
        if path.is_empty() {
            return Err(unknown());
        }
        Ok(path)
    }

    fn endpoints(&self, path: &[usize]) -> Result<(usize, usize)> {
        let first = path
            .first()
            .ok_or_else(|| Error::InvalidInput("empty path".into()))?;
        for w in path.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::InvalidInput(format!(
                    "arrows `{}` and `{}` do not compose",
                    self.arrows[w[0]].label, self.arrows[w[1]].label
                )));
            }
        }
        let last = path.last().expect("nonempty");
        Ok((self.arrows[*first].source, self.arrows[*last].target))
    }

    pub fn add_relation(&mut self, relation: Relation) -> Result<()> {
        let mut ends = None;
        for (c, path) in &relation {
            if c.field() != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field,
                    right: c.field(),
                });
            }
            if let Some(&bad) = path.iter().find(|&&a| a >= self.arrows.len()) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    dim: self.arrows.len(),
                });
            }
            let e = self.endpoints(path)?;
            if *ends.get_or_insert(e) != e {
                return Err(Error::InvalidInput(
                    "relation mixes paths with different endpoints".into(),
                ));
            }
        }
        if relation.is_empty() {
            return Err(Error::InvalidInput("empty relation".into()));
        }
        self.relations.push(relation);
        Ok(())
    }

    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle leaves vertices with positive in-degree.
        let mut indegree = vec![0usize; self.vertices];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        seen < self.vertices
    }

    fn path_label(&self, path: &[usize]) -> String {
        path.iter().map(|&a| self.arrows[a].label.as_str()).collect()
    }
}

/// Linear quiver `1 -> 2 -> ... -> k` with arrows `a, b, c, ...`, no relations.
pub fn linear_quiver(field: Field, k: usize) -> Result<Quiver> {
    let mut q = Quiver::new(field, k)?;
    for i in 0..k.saturating_sub(1) {
        let label = char::from_u32('a' as u32 + i as u32)
            .filter(char::is_ascii_lowercase)
            .map_or_else(|| format!("a{i}"), String::from);
        q.add_arrow(&label, i, i + 1)?;
    }
    Ok(q)
}

pub fn linear_quiver_algebra(field: Field, k: usize) -> Result<Algebra> {
    path_algebra(&linear_quiver(field, k)?, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PathBasis {
    Vertex(usize),
    Path(Vec<usize>),
}

/// Path algebra `kQ/I`, truncated at `bound` when given.
///
/// Paths are enumerated by increasing length (lexicographic in arrow order
/// within a length). With a bound `L` the construction works in `kQ/J^{L+1}`
/// and requires every path of length `L` to lie in the relation ideal, so
/// that the truncation does not change the algebra. A quiver with an
/// oriented cycle needs a bound.
pub fn path_algebra(q: &Quiver, bound: Option<usize>) -> Result<Algebra> {
    let cyclic = q.has_cycle();
    let max_len = match (bound, cyclic) {
        (Some(b), _) => b,
        (None, false) => q.vertices.saturating_sub(1),
        (None, true) => {
            return Err(Error::InfiniteDimensional(
                "quiver has an oriented cycle and no length bound".into(),
            ))
        }
    };
    if let Some(r) = q
        .relations
        .iter()
        .flatten()
        .find(|(_, p)| p.len() > max_len)
    {
        return Err(Error::InfiniteDimensional(format!(
            "relation path `{}` is longer than the bound {max_len}",
            q.path_label(&r.1)
        )));
    }

    let field = q.field;
    let mut basis: Vec<PathBasis> = (0..q.vertices).map(PathBasis::Vertex).collect();
    let mut layer: Vec<Vec<usize>> = if max_len >= 1 {
        (0..q.arrows.len()).map(|a| vec![a]).collect()
    } else {
        Vec::new()
    };
    let mut len = 1;
    while !layer.is_empty() {
        basis.extend(layer.iter().cloned().map(PathBasis::Path));
        if len == max_len {
            break;
        }
        let next: Vec<Vec<usize>> = layer
            .iter()
            .flat_map(|p| {
                let end = q.arrows[*p.last().expect("nonempty")].target;
                q.arrows
                    .iter()
                    .enumerate()
                    .filter(move |(_, a)| a.source == end)
                    .map(move |(i, _)| {
                        let mut ext = p.clone();
                        ext.push(i);
                        ext
                    })
            })
            .collect();
        layer = next;
        len += 1;
    }

    let index_of = |b: &PathBasis| basis.iter().position(|x| x == b);
    let start = |b: &PathBasis| match b {
        PathBasis::Vertex(v) => *v,
        PathBasis::Path(p) => q.arrows[p[0]].source,
    };
    let end = |b: &PathBasis| match b {
        PathBasis::Vertex(v) => *v,
        PathBasis::Path(p) => q.arrows[*p.last().expect("nonempty")].target,
    };

    let mut table = Vec::new();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if end(x) != start(y) {
                continue;
            }
            let prod = match (x, y) {
                (PathBasis::Vertex(_), other) | (other, PathBasis::Vertex(_)) => Some(other.clone()),
                (PathBasis::Path(p), PathBasis::Path(r)) => {
                    (p.len() + r.len() <= max_len).then(|| PathBasis::Path([p.clone(), r.clone()].concat()))
                }
            };
            if let Some(k) = prod.as_ref().and_then(|p| index_of(p)) {
                table.push(((i, j), vec![(k, field.one())]));
            }
        }
    }
    let unit = (0..basis.len())
        .map(|i| if i < q.vertices { field.one() } else { field.zero() })
        .collect();
    let labels = basis
        .iter()
        .map(|b| match b {
            PathBasis::Vertex(v) => format!("e{}", v + 1),
            PathBasis::Path(p) => q.path_label(p),
        })
        .collect();
    let free = Arc::new(Algebra::build(field, basis.len(), table, unit, labels)?);

    let generators: Vec<Element> = q
        .relations
        .iter()
        .map(|rel| {
            let mut v = vec![field.zero(); basis.len()];
            for (c, p) in rel {
                let k = index_of(&PathBasis::Path(p.clone())).expect("relation path within bound");
                v[k] += c;
            }
            Element::new(v)
        })
        .collect();
    let ideal = ideal_closure(&free, &generators)?;

    let needs_check = bound.is_some() || cyclic;
    if needs_check {
        let top = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| matches!(b, PathBasis::Path(p) if p.len() == max_len));
        for (i, _) in top {
            if !ideal.contains(&free.basis(i)) {
                return Err(Error::InfiniteDimensional(format!(
                    "path `{}` of length {max_len} survives the relations",
                    free.labels()[i]
                )));
            }
        }
    }

    if ideal.dim() == 0 {
        return Ok(Arc::try_unwrap(free).unwrap_or_else(|a| (*a).clone()));
    }
    let qt = quotient(&free, &ideal)?;
    Ok((*qt.algebra).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kernel_basis, Matrix};

    const Q: Field = Field::Rational;

    fn labels(a: &Algebra) -> Vec<&str> {
        a.labels().iter().map(String::as_str).collect()
    }

    #[test]
    fn a2_path_algebra() {
        let mut q = Quiver::new(Q, 2).unwrap();
        q.add_arrow("eta", 0, 1).unwrap();
        let a = path_algebra(&q, None).unwrap();
        assert_eq!(labels(&a), ["e1", "e2", "eta"]);
        let eta = a.basis(2);
        assert!(a.multiply(&eta, &eta).unwrap().is_zero());
        assert_eq!(a.multiply(&a.basis(0), &eta).unwrap(), eta);
        assert!(a.multiply(&eta, &a.basis(0)).unwrap().is_zero());
        assert_eq!(a.multiply(&eta, &a.basis(1)).unwrap(), eta);
    }

    #[test]
    fn a3_path_algebra() {
        let a = linear_quiver_algebra(Q, 3).unwrap();
        assert_eq!(labels(&a), ["e1", "e2", "e3", "a", "b", "ab"]);
        assert_eq!(a.multiply(&a.basis(3), &a.basis(4)).unwrap(), a.basis(5));
        assert!(a.multiply(&a.basis(4), &a.basis(3)).unwrap().is_zero());
    }

    fn commutative_square() -> Quiver {
        let mut q = Quiver::new(Q, 4).unwrap();
        q.add_arrow("a", 0, 1).unwrap();
        q.add_arrow("b", 1, 3).unwrap();
        q.add_arrow("c", 0, 2).unwrap();
        q.add_arrow("d", 2, 3).unwrap();
        let ab = q.parse_path("ab").unwrap();
        let cd = q.parse_path("c.d").unwrap();
        q.add_relation(vec![(Q.one(), ab), (Q.from_i64(-1), cd)]).unwrap();
        q
    }

    #[test]
    fn commutative_square_has_dimension_nine() {
        let a = path_algebra(&commutative_square(), None).unwrap();
        assert_eq!(a.dim(), 9);
        // ab and cd coincide; cd survives as the representative.
        assert_eq!(
            labels(&a),
            ["e1", "e2", "e3", "e4", "a", "b", "c", "d", "cd"]
        );
        let ab = a.multiply(&a.basis(4), &a.basis(5)).unwrap();
        let cd = a.multiply(&a.basis(6), &a.basis(7)).unwrap();
        assert_eq!(ab, cd);
        assert_eq!(ab, a.basis(8));
    }

    #[test]
    fn relations_are_validated() {
        let mut q = commutative_square();
        let a = q.parse_path("a").unwrap();
        let c = q.parse_path("c").unwrap();
        assert!(q.add_relation(vec![(Q.one(), a.clone()), (Q.one(), c)]).is_err());
        let ba = vec![1, 0];
        assert!(q.add_relation(vec![(Q.one(), ba)]).is_err());
        assert!(q.parse_path("z").is_err());
        assert!(q.add_arrow("a", 0, 1).is_err());
        assert!(q.add_arrow("x", 0, 9).is_err());
    }

    #[test]
    fn cycles_need_a_bound() {
        let mut q = Quiver::new(Q, 1).unwrap();
        q.add_arrow("x", 0, 0).unwrap();
        assert!(matches!(path_algebra(&q, None), Err(Error::InfiniteDimensional(_))));
        // Without relations the truncation never stabilizes.
        assert!(matches!(path_algebra(&q, Some(4)), Err(Error::InfiniteDimensional(_))));

        // x^3 = 0 stabilizes: k[x]/(x^3).
        let x3 = q.parse_path("xxx").unwrap();
        q.add_relation(vec![(Q.one(), x3)]).unwrap();
        let a = path_algebra(&q, Some(3)).unwrap();
        let t = truncated_polynomial(Q, 2).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.table(), t.table());
        // A bound shorter than the relation is rejected.
        assert!(path_algebra(&q, Some(2)).is_err());
    }

    #[test]
    fn two_cycle_with_zero_relations() {
        // 1 <-> 2 with ab = ba = 0: radical square zero, dim 4.
        let mut q = Quiver::new(Q, 2).unwrap();
        q.add_arrow("a", 0, 1).unwrap();
        q.add_arrow("b", 1, 0).unwrap();
        for w in ["ab", "ba"] {
            let p = q.parse_path(w).unwrap();
            q.add_relation(vec![(Q.one(), p)]).unwrap();
        }
        let a = path_algebra(&q, Some(2)).unwrap();
        assert_eq!(a.dim(), 4);
    }

    /// Independent count of paths in an acyclic quiver by dynamic programming
    /// over path lengths.
    fn count_paths(q: &Quiver) -> usize {
        let mut ending_at = vec![1usize; q.vertices()];
        let mut total = q.vertices();
        for _ in 0..q.vertices() {
            let mut next = vec![0usize; q.vertices()];
            for a in q.arrows() {
                next[a.target] += ending_at[a.source];
            }
            // First round counts arrows; later rounds longer paths.
            total += next.iter().sum::<usize>();
            ending_at = next;
        }
        total
    }

    #[test]
    fn acyclic_dimensions_match_path_count() {
        let mut q = Quiver::new(Q, 4).unwrap();
        for (l, s, t) in [("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3), ("e", 0, 3), ("f", 1, 2)] {
            q.add_arrow(l, s, t).unwrap();
        }
        assert_eq!(path_algebra(&q, None).unwrap().dim(), count_paths(&q));
        for k in 1..6 {
            let q = linear_quiver(Q, k).unwrap();
            assert_eq!(path_algebra(&q, None).unwrap().dim(), k * (k + 1) / 2);
            assert_eq!(count_paths(&q), k * (k + 1) / 2);
        }
    }

    #[test]
    fn group_algebras() {
        let a = abelian_group_algebra(Q, &[2]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(labels(&a), ["1", "g"]);
        let b = abelian_group_algebra(Q, &[2, 3]).unwrap();
        assert_eq!(b.dim(), 6);
        assert!(b.is_commutative());
        assert_eq!(b.labels()[4], "g⊗h");
        let f3 = Field::prime(3).unwrap();
        assert_eq!(abelian_group_algebra(f3, &[3]).unwrap().dim(), 3);
        for n in 1..7 {
            assert!(cyclic_group_algebra(Q, n).unwrap().is_commutative());
        }
        assert!(abelian_group_algebra(Q, &[]).is_err());
        assert!(abelian_group_algebra(Q, &[2, 0]).is_err());
    }

    #[test]
    fn matrix_units() {
        let k = matrix_algebra(Q, 1).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.unit(), k.basis(0));
        let m = matrix_algebra(Q, 2).unwrap();
        assert_eq!(labels(&m), ["E11", "E12", "E21", "E22"]);
        // E12 E21 = E11, E21 E21 = 0, E11 E12 = E12.
        assert_eq!(m.multiply(&m.basis(1), &m.basis(2)).unwrap(), m.basis(0));
        assert!(m.multiply(&m.basis(2), &m.basis(2)).unwrap().is_zero());
        assert_eq!(m.multiply(&m.basis(0), &m.basis(1)).unwrap(), m.basis(1));
    }

    #[test]
    fn matrix_algebra_center_is_one_dimensional() {
        // Stack the commutator maps x -> b_k x - x b_k; their common kernel is
        // the center.
        for n in 1..4 {
            let m = matrix_algebra(Q, n).unwrap();
            let d = m.dim();
            let mut rows = Vec::new();
            for k in 0..d {
                let bk = m.basis(k);
                let comm = m.left_matrix(bk.coords()).add(&m.right_matrix(bk.coords()).scale(&Q.from_i64(-1))).unwrap();
                for r in 0..d {
                    rows.push(comm.row(r).to_vec());
                }
            }
            let stacked = Matrix::from_rows(Q, rows).unwrap();
            assert_eq!(kernel_basis(&stacked).len(), 1, "n = {n}");
        }
    }

    #[test]
    fn truncated_polynomials() {
        let k = truncated_polynomial(Q, 0).unwrap();
        assert_eq!(k.dim(), 1);
        let a = truncated_polynomial(Q, 2).unwrap();
        assert_eq!(labels(&a), ["1", "x", "x^2"]);
        // x^n * x = 0.
        assert!(a.multiply(&a.basis(2), &a.basis(1)).unwrap().is_zero());
    }
}
