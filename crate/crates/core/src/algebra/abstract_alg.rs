//! Algebras given by a basis, structure constants and primitive idempotents.

use crate::linalg::{axpy, is_zero_vec, kernel_basis, unit_vec, zero_vec, Echelon, Matrix, Scalar, Vector};

use super::{build_path_algebra, Algebra, AlgebraError, Path, PathComb, Quiver, DEFAULT_PATH_CAP};

#[derive(Clone, Debug)]
pub struct AbstractAlgebra {
    pub labels: Vec<String>,
    /// `table[i][j]` is the product `b_i * b_j` in basis coordinates.
    pub table: Vec<Vec<Vector>>,
    pub idempotents: Vec<Vector>,
}

/// A quiver presentation of an abstract algebra together with the images of its arrows.
#[derive(Debug)]
pub struct Presentation {
    pub algebra: Algebra,
    pub arrow_elements: Vec<Vector>,
}

impl Presentation {
    /// Image of a path under the surjection from the path algebra.
    pub fn element_of_path(&self, a: &AbstractAlgebra, p: &Path) -> Vector {
        path_element(a, &self.arrow_elements, p)
    }

    /// The isomorphism from the presented algebra to the abstract one, as a basis-change matrix.
    pub fn basis_map(&self, a: &AbstractAlgebra) -> Matrix {
        let cols: Vec<Vector> = self.algebra.basis().iter().map(|p| self.element_of_path(a, p)).collect();
        Matrix::from_columns(&cols, a.dim())
    }
}

fn path_element(a: &AbstractAlgebra, arrows: &[Vector], p: &Path) -> Vector {
    let mut x = a.idempotents[p.start].clone();
    for &arr in &p.arrows {
        x = a.mul(&arrows[arr], &x);
    }
    x
}

impl AbstractAlgebra {
    pub fn new(labels: Vec<String>, table: Vec<Vec<Vector>>, idempotents: Vec<Vector>) -> Self {
        AbstractAlgebra { labels, table, idempotents }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.idempotents.len()
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    axpy(&mut out, &(a * b), &self.table[i][j]);
                }
            }
        }
        out
    }

    pub fn one(&self) -> Vector {
        let mut v = zero_vec(self.dim());
        for e in &self.idempotents {
            axpy(&mut v, &Scalar::one(), e);
        }
        v
    }

    /// Checks associativity, the unit and the idempotent axioms.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        let bad = |m: &str| Err(AlgebraError::BadCoefficients(m.to_string()));
        for i in 0..d {
            for j in 0..d {
                let ij = &self.table[i][j];
                for k in 0..d {
                    let left = self.mul(ij, &unit_vec(d, k));
                    let right = self.mul(&unit_vec(d, i), &self.table[j][k]);
                    if left != right {
                        return bad("structure constants are not associative");
                    }
                }
            }
        }
        let one = self.one();
        for i in 0..d {
            let b = unit_vec(d, i);
            if self.mul(&one, &b) != b || self.mul(&b, &one) != b {
                return bad("idempotents do not sum to the unit");
            }
        }
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let ok = if i == j { &p == e } else { is_zero_vec(&p) };
                if !ok {
                    return bad("idempotents are not orthogonal");
                }
            }
        }
        Ok(())
    }

    fn left_trace(&self, m: usize) -> Scalar {
        (0..self.dim()).fold(Scalar::zero(), |acc, k| acc + self.table[m][k][k].clone())
    }

    /// Gram matrix of the trace form (a, b) = tr(L_{ab}).
    pub fn trace_gram(&self) -> Matrix {
        let d = self.dim();
        let t: Vec<Scalar> = (0..d).map(|m| self.left_trace(m)).collect();
        let mut g = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let s = self.table[a][b].iter().zip(&t).fold(Scalar::zero(), |acc, (c, tm)| acc + c * tm);
                g.set(a, b, s);
            }
        }
        g
    }

    /// Basis of the Jacobson radical (characteristic zero).
    pub fn radical(&self) -> Vec<Vector> {
        kernel_basis(&self.trace_gram())
    }

    fn product_span(&self, xs: &[Vector], ys: &[Vector]) -> Vec<Vector> {
        let mut e = Echelon::new(self.dim());
        for x in xs {
            for y in ys {
                e.insert(&self.mul(x, y));
            }
        }
        e.rows().to_vec()
    }

    /// dim rad^k for k = 0, 1, ... until zero.
    pub fn radical_series_dims(&self) -> Vec<usize> {
        let rad = self.radical();
        let mut dims = vec![self.dim()];
        let mut cur = rad.clone();
        while !cur.is_empty() {
            dims.push(cur.len());
            cur = self.product_span(&cur, &rad);
        }
        dims.push(0);
        dims
    }

    /// Entry (i, j) = dim e_i A e_j.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let d = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut e = Echelon::new(d);
                        for k in 0..d {
                            let x = self.mul(&self.mul(&self.idempotents[i], &unit_vec(d, k)), &self.idempotents[j]);
                            e.insert(&x);
                        }
                        e.rank()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_basic(&self) -> bool {
        self.dim() - self.radical().len() == self.n()
    }

    /// Gabriel quiver and relations; arrows that are basis elements keep their labels.
    pub fn basic_presentation(&self, id: &str) -> Result<Presentation, AlgebraError> {
        let d = self.dim();
        let n = self.n();
        let rad = self.radical();
        if d - rad.len() != n {
            return Err(AlgebraError::NotBasic);
        }
        let rad2 = self.product_span(&rad, &rad);
        let mut nil = 1;
        let mut cur = rad.clone();
        while !cur.is_empty() {
            cur = self.product_span(&cur, &rad);
            nil += 1;
        }
        let mut rad_ech = Echelon::new(d);
        for r in &rad {
            rad_ech.insert(r);
        }
        let mut q = Quiver::new(n);
        let mut arrow_elements = Vec::new();
        let mut generic = 0;
        for i in 0..n {
            for j in 0..n {
                let mut ech = Echelon::new(d);
                for r in &rad2 {
                    ech.insert(r);
                }
                let sandwich = |x: &Vector| self.mul(&self.mul(&self.idempotents[j], x), &self.idempotents[i]);
                let mut found: Vec<(Option<usize>, Vector)> = Vec::new();
                for k in 0..d {
                    let b = unit_vec(d, k);
                    if !rad_ech.contains(&b) || sandwich(&b) != b {
                        continue;
                    }
                    if ech.insert(&b) {
                        found.push((Some(k), b));
                    }
                }
                for r in &rad {
                    let x = sandwich(r);
                    if ech.insert(&x) {
                        found.push((None, x));
                    }
                }
                for (label, x) in found {
                    let name = match label {
                        Some(k) if q.arrow_index(&self.labels[k]).is_none() => self.labels[k].clone(),
                        _ => {
                            generic += 1;
                            format!("g{generic}")
                        }
                    };
                    q.add_arrow(&name, i, j);
                    arrow_elements.push(x);
                }
            }
        }
        let paths = super::paths_up_to(&q, nil).ok_or(AlgebraError::NotAdmissible(nil))?;
        let mut relations: Vec<PathComb> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let block: Vec<&Path> = paths.iter().filter(|p| p.start == i && p.target(&q) == j).collect();
                let short: Vec<&Path> = block.iter().copied().filter(|p| p.len() < nil).collect();
                let cols: Vec<Vector> = short.iter().map(|p| path_element(self, &arrow_elements, p)).collect();
                for k in kernel_basis(&Matrix::from_columns(&cols, d)) {
                    let rel: PathComb =
                        k.iter().zip(&short).filter(|(c, _)| !c.is_zero()).map(|(c, p)| (c.clone(), (*p).clone())).collect();
                    relations.push(rel);
                }
                for p in block.iter().filter(|p| p.len() == nil) {
                    debug_assert!(is_zero_vec(&path_element(self, &arrow_elements, p)));
                    relations.push(vec![(Scalar::one(), (*p).clone())]);
                }
            }
        }
        let algebra = build_path_algebra(id, q, relations, DEFAULT_PATH_CAP.max(nil + 1))?;
        assert_eq!(algebra.dim(), d, "presentation must recover the dimension");
        Ok(Presentation { algebra, arrow_elements })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::path_algebra;

    #[test]
    fn round_trip_of_a2() {
        let a = path_algebra("kA2", Quiver::type_a(2)).unwrap().to_abstract();
        a.validate().unwrap();
        let p = a.basic_presentation("G").unwrap();
        assert_eq!(p.algebra.quiver.arrows.len(), 1);
        assert!(p.algebra.relations.iter().all(|r| r.iter().all(|(_, path)| path.len() >= 2)));
        assert_eq!(p.algebra.dim(), 3);
    }

    #[test]
    fn semisimple_has_no_arrows() {
        let d = 2;
        let mut table = vec![vec![zero_vec(d); d]; d];
        table[0][0] = unit_vec(d, 0);
        table[1][1] = unit_vec(d, 1);
        let a = AbstractAlgebra::new(vec!["e1".into(), "e2".into()], table, vec![unit_vec(d, 0), unit_vec(d, 1)]);
        let p = a.basic_presentation("kxk").unwrap();
        assert_eq!(p.algebra.n(), 2);
        assert!(p.algebra.quiver.arrows.is_empty());
    }

    #[test]
    fn trace_radical_of_path_algebra_is_arrow_ideal() {
        let a = path_algebra("kA3", Quiver::type_a(3)).unwrap();
        let ab = a.to_abstract();
        assert_eq!(ab.radical().len(), 3);
        assert_eq!(ab.radical_series_dims(), vec![6, 3, 1, 0]);
        assert_eq!(a.radical_series_dims(), vec![6, 3, 1, 0]);
        assert_eq!(ab.cartan(), a.cartan());
    }
}
