//! Products in the Clifford algebra of x^2 + yz over GF(3).

use std::sync::Arc;

use orthofq::clifford::{algebra_dimension, CliffordElement};
use orthofq::forms::QuadraticForm;
use orthofq::gf::make_field;
use orthofq::linalg::{Matrix, Vector};

fn main() -> orthofq::Result<()> {
    let f = make_field(3, 1)?;
    let q = Arc::new(QuadraticForm::new(Matrix::from_index_rows(f, &[[1u32, 0, 0], [0, 0, 1], [0, 0, 0]])?)?);
    println!("dimension {}", algebra_dimension(&q)?);

    let v = Vector::from_indices(f, &[1, 2, 1])?;
    let e = CliffordElement::embed_vector(&q, &v)?;
    let sq = e.mul(&e)?;
    println!("v = {:?}, Q(v) = {}, v*v = {:?}", v.indices(), q.eval(&v)?, sq.as_scalar());

    let e2 = CliffordElement::monomial(&q, 0b010, 1);
    let e3 = CliffordElement::monomial(&q, 0b100, 1);
    let anti = e2.mul(&e3)?.add(&e3.mul(&e2)?)?;
    println!("e2 e3 + e3 e2 = {:?}", anti.as_scalar());
    println!("e3 e2 = {:?}", e3.mul(&e2)?.terms());
    Ok(())
}
