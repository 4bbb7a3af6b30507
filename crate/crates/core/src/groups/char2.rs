use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::enumerate::{enumerate_group, ElementSet};
use super::is_isometry;
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, Form, QuadraticForm};
use crate::linalg::{Matrix, Vector};

/// Pairs checked exhaustively up to this group order, sampled beyond it.
const ALL_PAIRS_UP_TO: usize = 1000;
const SAMPLED_PAIRS: usize = 10_000;

/// `O(V, Q) -> Sp(W)` for a nonsingular quadratic form in odd dimension over
/// a field of characteristic 2, where `W` is spanned by the standard basis
/// vectors other than `e_d` and `d` is the first coordinate of the radical
/// vector `r` of `f_Q`.
///
/// `g` acts on `V / <r>`; identifying that quotient with `W` through
/// `x -> x - x_d r` gives `g'`.
#[derive(Debug, Clone)]
pub struct Char2OddIsomorphism {
    form: Arc<Form>,
    radical: Vector,
    pivot: usize,
    complement: Vec<usize>,
    symplectic: BilinearForm,
}

pub fn char2_odd_isomorphism(q: &QuadraticForm) -> Result<Char2OddIsomorphism> {
    let field = q.field();
    if !field.is_char2() {
        return Err(Error::OddCharacteristic);
    }
    let n = q.dim();
    if n % 2 == 0 {
        return Err(Error::EvenDimension);
    }
    if !q.is_nonsingular() {
        return Err(Error::SingularForm);
    }
    let polar = q.polar();
    let rad = polar.radical();
    assert_eq!(rad.len(), 1, "an alternating form in odd dimension with rad(Q) = 0 has a 1-dimensional radical");
    let pivot = rad[0].indices().iter().position(|&c| c != 0).expect("nonzero radical vector");
    let radical = rad[0].scale(field.inv(rad[0].indices()[pivot]).unwrap());
    let complement: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let symplectic = polar.restrict(&complement.iter().map(|&i| Vector::basis(field, n, i)).collect::<Vec<_>>());
    Ok(Char2OddIsomorphism { form: Arc::new(Form::Quadratic(q.clone())), radical, pivot, complement, symplectic })
}

/// Outcome of checking the map on the enumerated groups.
#[derive(Debug, Clone, Serialize)]
pub struct IsomorphismCertificate {
    pub source_order: usize,
    pub target_order: usize,
    pub images_preserve_form: bool,
    pub injective: bool,
    pub surjective: bool,
    pub pairs_checked: usize,
    pub homomorphism: bool,
}

impl IsomorphismCertificate {
    pub fn passed(&self) -> bool {
        self.images_preserve_form && self.injective && self.surjective && self.homomorphism
    }
}

impl Char2OddIsomorphism {
    pub fn radical(&self) -> &Vector {
        &self.radical
    }

    /// Coordinate deleted to pass from `V` to `W`.
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Standard basis directions spanning `W`.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// `f_Q` restricted to `W`.
    pub fn symplectic_form(&self) -> &BilinearForm {
        &self.symplectic
    }

    /// The induced map on `W`: `g'_{ab} = g_{ab} - g_{db} r_a`.
    pub fn apply(&self, g: &Matrix) -> Matrix {
        let field = g.field();
        let m = self.complement.len();
        let r = self.radical.indices();
        let mut out = Matrix::zeros(field, m, m);
        for (a, &i) in self.complement.iter().enumerate() {
            for (b, &j) in self.complement.iter().enumerate() {
                out.set(a, b, field.sub(g.at(i, j), field.mul(g.at(self.pivot, j), r[i])));
            }
        }
        out
    }

    /// Enumerates `O(V, Q)` and `Sp(W)` and checks that the map is a
    /// bijective homomorphism between them.
    pub fn certify(&self, budget: u64) -> Result<IsomorphismCertificate> {
        let source = enumerate_group(&self.form, budget)?;
        let target = enumerate_group(&Form::Bilinear(self.symplectic.clone()), budget)?;
        Ok(self.certify_on(&source, &target))
    }

    pub fn certify_on(&self, source: &ElementSet, target: &ElementSet) -> IsomorphismCertificate {
        let sp = Form::Bilinear(self.symplectic.clone());
        let images: Vec<Matrix> = source.iter().map(|g| self.apply(g)).collect();
        let images_preserve_form = images.iter().all(|h| is_isometry(h, &sp).unwrap_or(false));
        let image_set: ElementSet = images.iter().cloned().collect();
        let injective = image_set.len() == source.len();
        let surjective = target.iter().all(|h| image_set.contains(h)) && image_set.iter().all(|h| target.contains(h));
        let n = source.len();
        let pairs: Vec<(usize, usize)> = if n <= ALL_PAIRS_UP_TO {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..SAMPLED_PAIRS).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        };
        let homomorphism = pairs.iter().all(|&(a, b)| {
            let (ga, gb) = (source.get(a).unwrap(), source.get(b).unwrap());
            self.apply(&ga.mul_unchecked(gb)) == images[a].mul_unchecked(&images[b])
        });
        IsomorphismCertificate {
            source_order: n,
            target_order: target.len(),
            images_preserve_form,
            injective,
            surjective,
            pairs_checked: pairs.len(),
            homomorphism,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{standard_form, TypeTag};
    use crate::gf::make_field;

    #[test]
    fn x2_plus_yz_over_gf2() {
        let f2 = make_field(2, 1).unwrap();
        let q = QuadraticForm::new(Matrix::from_index_rows(f2, &[[1u32, 0, 0], [0, 0, 1], [0, 0, 0]]).unwrap()).unwrap();
        let iso = char2_odd_isomorphism(&q).unwrap();
        assert_eq!(iso.radical().indices(), &[1, 0, 0]);
        assert_eq!(iso.pivot(), 0);
        let c = iso.certify(1000).unwrap();
        assert_eq!((c.source_order, c.target_order, c.pairs_checked), (6, 6, 36));
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn radical_off_the_axes() {
        // radical not on a coordinate axis
        let f4 = make_field(2, 2).unwrap();
        let Form::Quadratic(q) = standard_form(f4, 3, TypeTag::OddDim).unwrap() else { panic!() };
        let c = Matrix::from_index_rows(f4, &[[1u32, 2, 0], [3, 1, 1], [0, 1, 2]]).unwrap();
        assert_eq!(c.rank(), 3);
        let q2 = q.pullback(&c).unwrap();
        let iso = char2_odd_isomorphism(&q2).unwrap();
        let cert = iso.certify(100_000).unwrap();
        assert_eq!(cert.target_order, 60);
        assert!(cert.passed(), "{cert:?}");
    }

    #[test]
    fn preconditions() {
        let f3 = make_field(3, 1).unwrap();
        let q = QuadraticForm::new(Matrix::identity(f3, 3)).unwrap();
        assert_eq!(char2_odd_isomorphism(&q).unwrap_err(), Error::OddCharacteristic);
        let f2 = make_field(2, 1).unwrap();
        let Form::Quadratic(q) = standard_form(f2, 2, TypeTag::Plus).unwrap() else { panic!() };
        assert_eq!(char2_odd_isomorphism(&q).unwrap_err(), Error::EvenDimension);
        let q = QuadraticForm::new(Matrix::from_index_rows(f2, &[[0u32, 0, 0], [0, 0, 1], [0, 0, 0]]).unwrap()).unwrap();
        assert_eq!(char2_odd_isomorphism(&q).unwrap_err(), Error::SingularForm);
    }
}
