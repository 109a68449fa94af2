//! Laurent polynomials, Fox calculus, Alexander polynomials and branched-cover homology orders.

mod fox;
mod poly;
mod resultant;

pub use fox::{
    alexander_matrix, alexander_polynomial, alexander_polynomial_group, alexander_polynomial_of,
    bareiss_determinant, determinant, fox_derivative, AlexNormalForm,
};
pub use poly::LaurentPoly;
pub use resultant::{
    bigint_determinant, cover_order_from_polynomial, cyclic_cover_homology_order, resultant,
    HomologyOrder,
};

/// Partitions inputs by the multiset of nonzero Alexander coefficients. Classes are listed in
/// order of first appearance; each holds input indices.
pub fn fs_distinguish(polys: &[AlexNormalForm]) -> Vec<Vec<usize>> {
    let mut keys: Vec<Vec<i128>> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let key = p.coefficient_multiset();
        match keys.iter().position(|k| *k == key) {
            Some(c) => classes[c].push(i),
            None => {
                keys.push(key);
                classes.push(vec![i]);
            }
        }
    }
    classes
}
