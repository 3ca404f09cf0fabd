//! Indecomposables of Dynkin path algebras, knitted from the projectives, and their inductions.

use crate::algebra::{Algebra, TensorData};
use crate::homology::tau_inverse;
use crate::linalg::{Matrix, Scalar};

use super::{induce, is_injective, is_isomorphic, is_projective, projective, socle_dims, top_dims, Module, ModuleError};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub module: Module,
    pub tau: Option<usize>,
    pub tau_inv: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&Module> {
        self.find(name).map(|i| &self.entries[i].module)
    }

    /// Index of the entry isomorphic to `m`.
    pub fn identify(&self, alg: &Algebra, m: &Module) -> Option<usize> {
        self.entries.iter().position(|e| e.module.dims == m.dims && is_isomorphic(alg, &e.module, m).is_some())
    }
}

/// Inverse Coxeter matrix −C (Cᵀ)⁻¹, acting on dimension vectors of non-injectives.
pub fn coxeter_inverse(alg: &Algebra) -> Matrix {
    let c = alg.cartan();
    let n = c.len();
    let rows: Vec<Vec<Scalar>> = c.iter().map(|r| r.iter().map(|&x| Scalar::int(x as i64)).collect()).collect();
    let cm = Matrix::from_rows(&rows, n);
    cm.mul(&cm.transpose().inverse().expect("Cartan matrix of a directed algebra is unitriangular")).scale(&Scalar::int(-1))
}

fn dims_string(d: &[usize]) -> String {
    d.iter().map(|x| x.to_string()).collect()
}

/// P_i, I_i, S_i when applicable, else the dimension vector.
pub fn canonical_name(alg: &Algebra, m: &Module) -> String {
    let single = |d: Vec<usize>| {
        let nz: Vec<usize> = d.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect();
        (nz.len() == 1 && d[nz[0]] == 1).then(|| nz[0])
    };
    if is_projective(alg, m) {
        if let Some(i) = single(top_dims(alg, m)) {
            return format!("P_{}", i + 1);
        }
    }
    if is_injective(alg, m) {
        if let Some(i) = single(socle_dims(alg, m)) {
            return format!("I_{}", i + 1);
        }
    }
    if m.total_dim() == 1 {
        if let Some(i) = single(m.dims.clone()) {
            return format!("S_{}", i + 1);
        }
    }
    format!("M_{}", dims_string(&m.dims))
}

pub fn knit_hereditary_catalog(alg: &Algebra) -> Result<Catalog, ModuleError> {
    if !alg.relations.is_empty() || !alg.quiver.is_dynkin() {
        return Err(ModuleError::NotDynkin);
    }
    let phi_inv = coxeter_inverse(alg);
    let mut entries: Vec<CatalogEntry> = (0..alg.n())
        .map(|i| CatalogEntry { name: String::new(), module: projective(alg, i), tau: None, tau_inv: None })
        .collect();
    let mut i = 0;
    while i < entries.len() {
        let x = entries[i].module.clone();
        if !is_injective(alg, &x) {
            let y = tau_inverse(alg, &x);
            let dx: Vec<Scalar> = x.dims.iter().map(|&d| Scalar::int(d as i64)).collect();
            let predicted: Vec<Scalar> = phi_inv.mul_vec(&dx);
            let actual: Vec<Scalar> = y.dims.iter().map(|&d| Scalar::int(d as i64)).collect();
            assert_eq!(predicted, actual, "knitting dimension vector disagrees with the Coxeter transformation");
            let j = match entries.iter().position(|e| e.module.dims == y.dims && is_isomorphic(alg, &e.module, &y).is_some()) {
                Some(j) => j,
                None => {
                    entries.push(CatalogEntry { name: String::new(), module: y, tau: None, tau_inv: None });
                    entries.len() - 1
                }
            };
            entries[i].tau_inv = Some(j);
            entries[j].tau = Some(i);
        }
        i += 1;
        if entries.len() > 10_000 {
            return Err(ModuleError::NotDynkin);
        }
    }
    let mut names: Vec<String> = entries.iter().map(|e| canonical_name(alg, &e.module)).collect();
    for k in 0..names.len() {
        let dup = names[..k].iter().filter(|n| n.starts_with(&names[k])).count();
        if dup > 0 {
            names[k] = format!("{}#{}", names[k], dup + 1);
        }
    }
    for (e, n) in entries.iter_mut().zip(names) {
        e.name = n;
    }
    Ok(Catalog { entries })
}

/// {Λ ⊗ X} for X in a hereditary catalog, named `Ind(<name>)`, τ-links carried over.
pub fn induced_catalog(td: &TensorData, base: &Catalog) -> Catalog {
    Catalog {
        entries: base
            .entries
            .iter()
            .map(|e| CatalogEntry {
                name: format!("Ind({})", e.name),
                module: induce(td, &e.module),
                tau: e.tau,
                tau_inv: e.tau_inv,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};

    /// Positive roots by bounded enumeration of vectors with Tits form 1.
    fn count_positive_roots(q: &Quiver, bound: usize) -> usize {
        let n = q.n;
        let mut count = 0;
        let mut v = vec![0usize; n];
        loop {
            let mut k = 0;
            while k < n {
                v[k] += 1;
                if v[k] <= bound {
                    break;
                }
                v[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            let e = crate::homology::euler_form(q, &v, &v);
            if e == 1 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn catalog_sizes_match_root_counts() {
        for (q, expected) in [(Quiver::type_a(2), 3), (Quiver::type_a(3), 6), (Quiver::type_d4(), 12)] {
            let a = path_algebra("kQ", q.clone()).unwrap();
            let c = knit_hereditary_catalog(&a).unwrap();
            assert_eq!(c.len(), count_positive_roots(&q, 3));
            assert_eq!(c.len(), expected);
        }
    }

    #[test]
    fn a3_names() {
        let a = path_algebra("kA3", Quiver::type_a(3)).unwrap();
        let c = knit_hereditary_catalog(&a).unwrap();
        let mut names = c.names();
        names.sort();
        assert_eq!(names, ["I_1", "I_2", "P_1", "P_2", "P_3", "S_2"]);
        let s2 = c.find("S_2").unwrap();
        assert_eq!(c.entries[s2].tau.map(|t| c.entries[t].name.as_str()), Some("P_3"));
    }

    #[test]
    fn rejects_affine() {
        let a = path_algebra("kron", Quiver::with_arrows(2, &[("a", 0, 1), ("b", 0, 1)])).unwrap();
        assert_eq!(knit_hereditary_catalog(&a).unwrap_err(), ModuleError::NotDynkin);
    }
}
