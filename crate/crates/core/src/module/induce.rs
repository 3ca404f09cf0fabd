//! Induction Λ ⊗_kQ − and restriction of scalars for Λ = R ⊗ kQ.

use crate::algebra::TensorData;
use crate::linalg::Matrix;

use super::{Module, Morphism};

/// Vertex spaces M_v ⊗ R with basis m_k ⊗ r_l at index k * dim R + l.
pub fn induce(td: &TensorData, m: &Module) -> Module {
    let dr = td.r.dim();
    let id_r = Matrix::identity(dr);
    let dims: Vec<usize> = m.dims.iter().map(|d| d * dr).collect();
    let mut act = vec![Matrix::zeros(0, 0); td.lambda.arrow_count()];
    for (a, ma) in m.act.iter().enumerate() {
        act[a] = ma.kron(&id_r);
    }
    let gens: Vec<Matrix> = td.generators.iter().map(|g| td.r.mult_matrix(g)).collect();
    for (v, loops) in td.loops.iter().enumerate() {
        for (g, &l) in loops.iter().enumerate() {
            act[l] = Matrix::identity(m.dims[v]).kron(&gens[g]);
        }
    }
    Module { dims, act }
}

pub fn induce_morphism(td: &TensorData, f: &Morphism) -> Morphism {
    let id_r = Matrix::identity(td.r.dim());
    Morphism { blocks: f.blocks.iter().map(|b| b.kron(&id_r)).collect() }
}

pub fn restrict(td: &TensorData, x: &Module) -> Module {
    Module { dims: x.dims.clone(), act: x.act[..td.base.arrow_count()].to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{tensor_algebra, LocalAlgebra, Quiver};
    use crate::module::{decomp::multiplicities, decompose, is_isomorphic, projective, simple};

    #[test]
    fn induced_simple_has_nilpotent_loop() {
        let td = tensor_algebra(&LocalAlgebra::truncated(2), &Quiver::type_a(3)).unwrap();
        let m = induce(&td, &simple(&td.base, 1));
        assert_eq!(m.dims, vec![0, 2, 0]);
        assert!(m.satisfies_relations(&td.lambda));
        let x2 = td.lambda.quiver.arrow_index("x2").unwrap();
        assert_eq!(m.act[x2].rank(), 1);
        assert!(m.act[x2].mul(&m.act[x2]).is_zero());
    }

    #[test]
    fn induced_projective_is_projective() {
        let td = tensor_algebra(&LocalAlgebra::truncated(2), &Quiver::type_a(3)).unwrap();
        let ip1 = induce(&td, &projective(&td.base, 0));
        assert!(is_isomorphic(&td.lambda, &ip1, &projective(&td.lambda, 0)).is_some());
        let back = restrict(&td, &ip1);
        let parts = decompose(&td.base, &back).unwrap();
        let mult = multiplicities(&td.base, &parts);
        assert_eq!(mult.len(), 1);
        assert_eq!(mult[0].1, 2);
    }

    #[test]
    fn trivial_coefficients_induce_identity() {
        let td = tensor_algebra(&LocalAlgebra::truncated(1), &Quiver::type_a(2)).unwrap();
        let p = projective(&td.base, 0);
        assert_eq!(induce(&td, &p), p);
        assert_eq!(restrict(&td, &induce(&td, &p)), p);
    }
}
