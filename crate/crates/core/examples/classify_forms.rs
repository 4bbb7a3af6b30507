//! Classify a few forms and build an explicit equivalence between two
//! forms of the same class.

use orthofq::forms::{classify, equivalence_witness, BilinearForm, Form, QuadraticForm};
use orthofq::gf::make_field;
use orthofq::linalg::Matrix;

fn main() -> orthofq::Result<()> {
    let f3 = make_field(3, 1)?;
    let d11 = Form::Bilinear(BilinearForm::new(Matrix::diagonal(f3, &[1, 1]))?);
    let d22 = Form::Bilinear(BilinearForm::new(Matrix::diagonal(f3, &[2, 2]))?);
    println!("diag(1,1) over GF(3): {:?}", classify(&d11)?);

    if let Some(c) = equivalence_witness(&d22, &d11)? {
        println!("diag(2,2) = diag(1,1) after x -> C x with C = {:?}", c.to_index_rows());
        assert_eq!(d11.pullback(&c)?, d22);
    }

    let f2 = make_field(2, 1)?;
    let xy = Form::Quadratic(QuadraticForm::new(Matrix::from_index_rows(f2, &[[0u32, 1], [0, 0]])?)?);
    let aniso = Form::Quadratic(QuadraticForm::new(Matrix::from_index_rows(f2, &[[1u32, 1], [0, 1]])?)?);
    println!("xy:            {:?}", classify(&xy)?);
    println!("x^2 + xy + y^2: {:?}", classify(&aniso)?);
    println!("equivalent: {}", equivalence_witness(&xy, &aniso)?.is_some());
    Ok(())
}
