//! Local commutative coefficient algebras R and the tensor algebras R ⊗ kQ.

use std::sync::Arc;

use crate::linalg::{unit_vec, zero_vec, Echelon, Matrix, Scalar, Vector};

use super::{
    build_path_algebra, path_algebra, AbstractAlgebra, Algebra, AlgebraError, Path, PathComb, Quiver,
    DEFAULT_PATH_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    /// Basis element 0 is the unit.
    pub labels: Vec<String>,
    pub table: Vec<Vec<Vector>>,
    pub truncation: Option<usize>,
}

impl LocalAlgebra {
    /// k[x]/(x^t) with basis 1, x, ..., x^(t-1).
    pub fn truncated(t: usize) -> Self {
        assert!(t >= 1);
        let labels = (0..t)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let table = (0..t).map(|i| (0..t).map(|j| if i + j < t { unit_vec(t, i + j) } else { zero_vec(t) }).collect()).collect();
        LocalAlgebra { labels, table, truncation: Some(t) }
    }

    /// k[x,y]/(x^2, xy, y^2).
    pub fn square_zero_plane() -> Self {
        let z = zero_vec(3);
        let e = |i| unit_vec(3, i);
        let table = vec![vec![e(0), e(1), e(2)], vec![e(1), z.clone(), z.clone()], vec![e(2), z.clone(), z]];
        LocalAlgebra { labels: vec!["1".into(), "x".into(), "y".into()], table, truncation: None }
    }

    pub fn from_constants(labels: Vec<String>, table: Vec<Vec<Vector>>) -> Result<Self, AlgebraError> {
        let r = LocalAlgebra { labels, table, truncation: None };
        r.validate()?;
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.as_abstract().mul(u, v)
    }

    pub fn as_abstract(&self) -> AbstractAlgebra {
        AbstractAlgebra::new(self.labels.clone(), self.table.clone(), vec![unit_vec(self.dim(), 0)])
    }

    /// Left multiplication by `x` as a matrix on the basis.
    pub fn mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let a = self.as_abstract();
        let cols: Vec<Vector> = (0..d).map(|j| a.mul(x, &unit_vec(d, j))).collect();
        Matrix::from_columns(&cols, d)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        let bad = |m: &str| Err(AlgebraError::BadCoefficients(m.to_string()));
        if d == 0 || self.table.len() != d || self.table.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return bad("structure constant table has the wrong shape");
        }
        for i in 0..d {
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return bad("not commutative");
                }
            }
        }
        self.as_abstract().validate()?;
        let mut cur: Vec<Vector> = (1..d).map(|i| unit_vec(d, i)).collect();
        for i in 1..d {
            for j in 1..d {
                if !self.table[i][j][0].is_zero() {
                    return bad("non-unit basis elements do not span an ideal");
                }
            }
        }
        for _ in 0..d {
            let mut e = Echelon::new(d);
            for x in &cur {
                for j in 1..d {
                    e.insert(&self.mul(x, &unit_vec(d, j)));
                }
            }
            cur = e.rows().to_vec();
            if cur.is_empty() {
                return Ok(());
            }
        }
        bad("maximal ideal is not nilpotent")
    }
}

/// Λ = R ⊗ kQ with the data needed to induce and restrict modules.
#[derive(Debug)]
pub struct TensorData {
    pub r: LocalAlgebra,
    pub base: Arc<Algebra>,
    pub lambda: Arc<Algebra>,
    /// Λ-arrow index of generator g at vertex v: `loops[v][g]`.
    pub loops: Vec<Vec<usize>>,
    /// R-elements of the loop generators.
    pub generators: Vec<Vector>,
}

impl TensorData {
    pub fn is_loop(&self, a: usize) -> bool {
        a >= self.base.arrow_count()
    }
}

/// Builds the quiver-with-relations presentation of R ⊗ kQ.
pub fn tensor_algebra(r: &LocalAlgebra, q: &Quiver) -> Result<TensorData, AlgebraError> {
    if !q.is_acyclic() {
        return Err(AlgebraError::NotAcyclic);
    }
    let base = Arc::new(path_algebra("kQ", q.clone())?);
    let ra = r.as_abstract();
    let pres = ra.basic_presentation("R")?;
    let rq = &pres.algebra.quiver;
    let mut ql = q.clone();
    let mut loops = vec![Vec::new(); q.n];
    for v in 0..q.n {
        for g in &rq.arrows {
            loops[v].push(ql.add_arrow(&format!("{}{}", g.name, v + 1), v, v));
        }
    }
    let mut relations: Vec<PathComb> = Vec::new();
    for v in 0..q.n {
        for rel in &pres.algebra.relations {
            let moved = rel
                .iter()
                .map(|(c, p)| (c.clone(), Path { start: v, arrows: p.arrows.iter().map(|&g| loops[v][g]).collect() }))
                .collect();
            relations.push(moved);
        }
    }
    for (ai, a) in q.arrows.iter().enumerate() {
        for g in 0..rq.arrows.len() {
            relations.push(vec![
                (Scalar::one(), Path { start: a.source, arrows: vec![ai, loops[a.target][g]] }),
                (Scalar::int(-1), Path { start: a.source, arrows: vec![loops[a.source][g], ai] }),
            ]);
        }
    }
    let id = match r.truncation {
        Some(t) => format!("Lambda(t={t})"),
        None => format!("Lambda(dimR={})", r.dim()),
    };
    let lambda = build_path_algebra(&id, ql, relations, DEFAULT_PATH_CAP)?;
    let abs = tensor_abstract(r, &base);
    assert_eq!(lambda.dim(), abs.dim(), "presentation and abstract tensor routes disagree");
    Ok(TensorData { r: r.clone(), base, lambda: Arc::new(lambda), loops, generators: pres.arrow_elements })
}

/// R ⊗ kQ on the basis r_k ⊗ p_l, ordered with the R index major.
pub fn tensor_abstract(r: &LocalAlgebra, base: &Algebra) -> AbstractAlgebra {
    let dr = r.dim();
    let dq = base.dim();
    let d = dr * dq;
    let mut labels = Vec::with_capacity(d);
    for k in 0..dr {
        for p in base.basis() {
            labels.push(format!("{}⊗{}", r.labels[k], p.display(&base.quiver)));
        }
    }
    let qtab: Vec<Vec<Vector>> = (0..dq).map(|i| (0..dq).map(|j| base.mul_basis(i, j)).collect()).collect();
    let mut table = vec![vec![zero_vec(d); d]; d];
    for a in 0..dr {
        for c in 0..dr {
            let rc = &r.table[a][c];
            for b in 0..dq {
                for e in 0..dq {
                    let pc = &qtab[b][e];
                    let out = &mut table[a * dq + b][c * dq + e];
                    for (s, x) in rc.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (l, y) in pc.iter().enumerate() {
                            if !y.is_zero() {
                                out[s * dq + l] = &out[s * dq + l] + &(x * y);
                            }
                        }
                    }
                }
            }
        }
    }
    let idempotents = (0..base.n())
        .map(|v| {
            let mut e = zero_vec(d);
            for (l, x) in base.idempotent(v).iter().enumerate() {
                e[l] = x.clone();
            }
            e
        })
        .collect();
    AbstractAlgebra::new(labels, table, idempotents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_a3_matches_expected_presentation() {
        let t = tensor_algebra(&LocalAlgebra::truncated(2), &Quiver::type_a(3)).unwrap();
        assert_eq!(t.lambda.dim(), 12);
        let names: Vec<&str> = t.lambda.quiver.arrows.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "x1", "x2", "x3"]);
        let rels = t.lambda.describe_relations();
        assert!(rels.contains(&"x1*x1".to_string()));
        assert!(rels.contains(&"x2*a - a*x1".to_string()));
        assert!(rels.contains(&"x3*b - b*x2".to_string()));
    }

    #[test]
    fn trivial_coefficients_give_path_algebra() {
        let t = tensor_algebra(&LocalAlgebra::truncated(1), &Quiver::type_a(2)).unwrap();
        assert_eq!(t.lambda.dim(), 3);
        assert_eq!(t.lambda.arrow_count(), 1);
    }

    #[test]
    fn routes_agree_for_cubic_and_plane() {
        for r in [LocalAlgebra::truncated(3), LocalAlgebra::square_zero_plane()] {
            let t = tensor_algebra(&r, &Quiver::type_a(2)).unwrap();
            let abs = tensor_abstract(&r, &t.base);
            abs.validate().unwrap();
            assert_eq!(t.lambda.dim(), 3 * r.dim());
            assert_eq!(t.lambda.radical_series_dims(), abs.radical_series_dims());
            assert_eq!(t.lambda.cartan(), abs.cartan());
        }
    }

    #[test]
    fn rejects_non_local() {
        let e = |i| unit_vec(2, i);
        let table = vec![vec![e(0), e(1)], vec![e(1), e(1)]];
        assert!(LocalAlgebra::from_constants(vec!["1".into(), "u".into()], table).is_err());
    }
}
