//! The 0/1 matrix expressing d log(u_β − 1) through the chart log-coordinates
//! along the chains β = β¹ > β² > ⋯ of a nested set.

use crate::exact::{ExactMatrix, FieldScalar};
use crate::nested::NestedSet;

/// Rows and columns are the elements of S in canonical order (largest first)
/// followed by `extra` coordinates of the ambient stratum, which enter
/// diagonally. Entry (P, Q) is 1 when Q ⊇ P: the factor t_Q occurs in the
/// product attached to P.
pub fn chain_matrix(s: &NestedSet, extra: usize) -> ExactMatrix {
    let elems = s.elements();
    let n = elems.len() + extra;
    let mut m = ExactMatrix::zeros(n, n);
    for (i, &p) in elems.iter().enumerate() {
        for (j, &q) in elems.iter().enumerate() {
            if q & p == p {
                m.set(i, j, FieldScalar::one());
            }
        }
    }
    for k in elems.len()..n {
        m.set(k, k, FieldScalar::one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nested::{maximal_nested_sets, Diagram};
    use crate::rootsys::RootSystem;

    #[test]
    fn small_cases() {
        let a1 = RootSystem::build("A1").unwrap();
        let s = &maximal_nested_sets(&Diagram::from_gram(a1.gram()))[0];
        assert_eq!(chain_matrix(s, 0), ExactMatrix::identity(1));

        let a2 = RootSystem::build("A2").unwrap();
        let d = Diagram::from_gram(a2.gram());
        let s = NestedSet::new(&d, vec![0b11, 0b01]).unwrap();
        let m = chain_matrix(&s, 0);
        assert!(m.is_lower_unitriangular());
        let off: usize = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).filter(|&(i, j)| i != j && m.get(i, j).is_one()).count();
        assert_eq!(off, 1);
        assert!(chain_matrix(&s, 2).determinant().unwrap().is_one());
    }
}
