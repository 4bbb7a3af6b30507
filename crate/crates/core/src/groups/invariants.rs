use super::generators::decompose_with_order;
use super::Isometry;
use crate::error::{Error, Result};
use crate::gf::SquareClass;
use crate::linalg::Matrix;

/// `det g` as `+1` / `-1`. Only meaningful in odd characteristic, where an
/// isometry has determinant `+-1`.
pub fn determinant_sign(g: &Matrix) -> Result<i8> {
    let field = g.field();
    if field.is_char2() {
        return Err(Error::EvenCharacteristic);
    }
    let d = g.determinant()?;
    if d == 1 {
        Ok(1)
    } else if d == field.neg(1) {
        Ok(-1)
    } else {
        Err(Error::NotAnIsometry)
    }
}

/// `rank(I - g) mod 2`.
pub fn dickson_invariant(g: &Matrix) -> u8 {
    let id = Matrix::identity(g.field(), g.rows());
    (id.sub(g).expect("square matrix").rank() % 2) as u8
}

/// Square class of `f(v_1, v_1) ... f(v_r, v_r)` for any factorization of
/// `g` into reflections `r_{v_1} ... r_{v_r}`. Defined on `SO` in odd
/// characteristic.
pub fn spinor_norm(g: &Isometry) -> Result<SquareClass> {
    let order: Vec<usize> = (0..g.form().dim()).collect();
    spinor_norm_with_order(g, &order)
}

/// As [`spinor_norm`], computed from the factorization that fixes the basis
/// vectors in `order`.
pub fn spinor_norm_with_order(g: &Isometry, order: &[usize]) -> Result<SquareClass> {
    let field = g.form().field();
    if field.is_char2() {
        return Err(Error::EvenCharacteristic);
    }
    if determinant_sign(g.matrix())? != 1 {
        return Err(Error::NotSpecial);
    }
    let b = g.form().bilinear();
    let vs = decompose_with_order(g, order)?;
    Ok(vs
        .iter()
        .map(|v| field.square_class(b.eval_raw(v.indices(), v.indices())))
        .fold(SquareClass::Square, |acc, c| acc * c))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::forms::{standard_form, BilinearForm, Form, TypeTag};
    use crate::gf::make_field;
    use crate::groups::{all_reflections, enumerate_group, reflection};

    fn diag(p: u64, d: &[u32]) -> Arc<Form> {
        Arc::new(Form::Bilinear(BilinearForm::new(Matrix::diagonal(make_field(p, 1).unwrap(), d)).unwrap()))
    }

    /// Oracle: the number of reflections along vectors of non-square norm is
    /// even; needs only the factorization, not the square-class product.
    fn parity_phrasing(g: &Isometry) -> SquareClass {
        let b = g.form().bilinear();
        let field = b.field();
        let vs = crate::groups::decompose_into_reflections(g).unwrap();
        let nonsquares = vs
            .iter()
            .filter(|v| field.square_class(b.eval_raw(v.indices(), v.indices())) == SquareClass::NonSquare)
            .count();
        if nonsquares % 2 == 0 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }

    #[test]
    fn spinor_kernel_in_so_minus_2_3() {
        let form = diag(3, &[1, 1]);
        let all = enumerate_group(&form, 1000).unwrap();
        let so: Vec<Isometry> = all
            .iter()
            .map(|m| Isometry::trusted(form.clone(), m.clone()))
            .filter(|g| g.det_sign() == Some(1))
            .collect();
        assert_eq!(so.len(), 4);
        let kernel = so.iter().filter(|g| g.spinor().unwrap() == SquareClass::Square).count();
        assert_eq!(kernel, 2);
    }

    #[test]
    fn spinor_norm_is_well_defined_and_multiplicative() {
        for form in [diag(3, &[1, 1, 1]), diag(5, &[1, 1, 2]), diag(3, &[1, 1, 1, 2])] {
            let n = form.dim();
            let all = enumerate_group(&form, 1_000_000).unwrap();
            let so: Vec<Isometry> = all
                .iter()
                .map(|m| Isometry::trusted(form.clone(), m.clone()))
                .filter(|g| g.det_sign() == Some(1))
                .collect();
            assert_eq!(so.len() * 2, all.len());
            let rev: Vec<usize> = (0..n).rev().collect();
            let rot: Vec<usize> = (1..n).chain([0]).collect();
            for g in &so {
                let s = g.spinor().unwrap();
                assert_eq!(s, spinor_norm_with_order(g, &rev).unwrap());
                assert_eq!(s, spinor_norm_with_order(g, &rot).unwrap());
                assert_eq!(s, parity_phrasing(g));
            }
            for (i, a) in so.iter().enumerate().step_by(7) {
                for b in so.iter().skip(i % 5).step_by(11) {
                    let ab = a.compose(b).unwrap();
                    assert_eq!(ab.spinor().unwrap(), a.spinor().unwrap() * b.spinor().unwrap());
                }
            }
            let kernel = so.iter().filter(|g| g.spinor().unwrap() == SquareClass::Square).count();
            assert_eq!(kernel * 2, so.len());
        }
    }

    #[test]
    fn spinor_rejects_determinant_minus_one() {
        let form = diag(3, &[1, 1]);
        let r = all_reflections(&form).unwrap().remove(0);
        assert_eq!(r.spinor().unwrap_err(), Error::NotSpecial);
        let f2 = make_field(2, 1).unwrap();
        let q = Arc::new(standard_form(f2, 2, TypeTag::Plus).unwrap());
        let id = Isometry::identity(q);
        assert_eq!(id.spinor().unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn dickson_is_a_homomorphism() {
        let f = make_field(2, 1).unwrap();
        for tag in [TypeTag::Plus, TypeTag::Minus] {
            let form = Arc::new(standard_form(f, 4, tag).unwrap());
            let all: Vec<Matrix> = enumerate_group(&form, 100_000).unwrap().iter().cloned().collect();
            for a in &all {
                for b in all.iter().step_by(3) {
                    let ab = a.mul_unchecked(b);
                    assert_eq!(dickson_invariant(&ab), dickson_invariant(a) ^ dickson_invariant(b));
                }
            }
            let kernel = all.iter().filter(|g| dickson_invariant(g) == 0).count();
            assert_eq!(kernel * 2, all.len());
        }
        // reflections in odd characteristic have D = 1 as well
        let form = diag(5, &[1, 2]);
        let r = reflection(&crate::linalg::Vector::basis(form.field(), 2, 0), &form).unwrap();
        assert_eq!(dickson_invariant(&r), 1);
    }
}
