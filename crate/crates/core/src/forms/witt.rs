use super::{combine, Form, QuadraticForm};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{Matrix, Vector};

/// Scans projective representatives (first nonzero coordinate equal to 1) in
/// lexicographic order and returns the first one accepted by `pred`.
///
/// Lexicographic order over all nonzero vectors puts `(0,..,0,1)` first, so
/// leading positions are visited from the last coordinate backwards.
pub(crate) fn scan_projective(field: Field, n: usize, mut pred: impl FnMut(&[u32]) -> bool) -> Option<Vec<u32>> {
    let q = field.order() as u64;
    let mut v = vec![0u32; n];
    for lead in (0..n).rev() {
        let tail = n - lead - 1;
        let count = q.pow(tail as u32);
        v.iter_mut().for_each(|x| *x = 0);
        v[lead] = 1;
        for r in 0..count {
            let mut rest = r;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (rest % q) as u32;
                rest /= q;
            }
            if pred(&v) {
                return Some(v);
            }
        }
    }
    None
}

/// Smallest nonzero vector (lexicographic in element indexes) with
/// `f(v, v) = 0`, resp. `Q(v) = 0`.
pub fn find_isotropic_vector(form: &Form) -> Option<Vector> {
    let field = form.field();
    scan_projective(field, form.dim(), |v| form.norm_raw(v) == 0).map(|v| Vector::from_raw(field, v))
}

/// Hyperbolic pairs `(v_i, w_i)` with `Q(v_i) = Q(w_i) = 0`, `f(v_i, w_i) = 1`,
/// mutually orthogonal, plus a basis of the anisotropic remainder.
#[derive(Debug, Clone)]
pub struct WittDecomposition {
    pub pairs: Vec<(Vector, Vector)>,
    pub anisotropic: Vec<Vector>,
}

impl WittDecomposition {
    pub fn witt_index(&self) -> usize {
        self.pairs.len()
    }
}

/// Repeated hyperbolic splitting: find an isotropic `v`, a partner `w` with
/// `f(v, w) = 1`, correct `w` to be isotropic, split off `<v, w>` and recurse
/// on its orthogonal complement.
pub fn witt_decomposition(q: &QuadraticForm) -> Result<WittDecomposition> {
    let field = q.field();
    let n = q.dim();
    let mut sub: Vec<Vector> = (0..n).map(|i| Vector::basis(field, n, i)).collect();
    let mut pairs = Vec::new();
    while !sub.is_empty() {
        let restricted = q.restrict(&sub);
        let Some(x) = scan_projective(field, sub.len(), |v| restricted.eval_raw(v) == 0) else {
            break;
        };
        let v = combine(field, &sub, &x);
        let Some((j, c)) = sub
            .iter()
            .enumerate()
            .map(|(j, s)| (j, q.polar_raw(v.indices(), s.indices())))
            .find(|&(_, c)| c != 0)
        else {
            // an isotropic vector orthogonal to everything left
            return Err(Error::Degenerate);
        };
        let w = sub[j].scale(field.inv(c).unwrap());
        let w = w.axpy(field.neg(q.eval_raw(w.indices())), &v)?;
        debug_assert_eq!(q.eval_raw(w.indices()), 0);
        debug_assert_eq!(q.polar_raw(v.indices(), w.indices()), 1);
        let m = sub.len();
        let mut constraints = Matrix::zeros(field, 2, m);
        for (j, s) in sub.iter().enumerate() {
            constraints.set(0, j, q.polar_raw(s.indices(), v.indices()));
            constraints.set(1, j, q.polar_raw(s.indices(), w.indices()));
        }
        let complement: Vec<Vector> =
            constraints.kernel_basis().iter().map(|c| combine(field, &sub, c.indices())).collect();
        pairs.push((v, w));
        sub = complement;
    }
    Ok(WittDecomposition { pairs, anisotropic: sub })
}

/// Dimension of a maximal totally isotropic subspace.
///
/// Accepts a nonsingular symmetric bilinear form in odd characteristic, or a
/// quadratic form that is nondegenerate (even `n`) or nonsingular (odd `n`,
/// characteristic 2).
pub fn witt_index(form: &Form) -> Result<usize> {
    let q = orthogonal_geometry(form)?;
    Ok(witt_decomposition(&q)?.witt_index())
}

/// Validates the classification preconditions and returns the quadratic form
/// carrying the geometry.
pub(crate) fn orthogonal_geometry(form: &Form) -> Result<QuadraticForm> {
    let field = form.field();
    match form {
        Form::Bilinear(b) => {
            if field.is_char2() {
                return Err(Error::EvenCharacteristic);
            }
            if !b.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            if !b.is_nonsingular() {
                return Err(Error::Singular);
            }
            b.to_quadratic()
        }
        Form::Quadratic(q) => {
            if !field.is_char2() || q.dim() % 2 == 0 {
                if !q.is_nondegenerate() {
                    return Err(Error::Degenerate);
                }
            } else if !q.is_nonsingular() {
                return Err(Error::SingularForm);
            }
            Ok(q.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{standard_form, BilinearForm, TypeTag};
    use crate::gf::make_field;

    fn diag(p: u64, k: u32, d: &[u32]) -> Form {
        let f = make_field(p, k).unwrap();
        Form::Bilinear(BilinearForm::new(Matrix::diagonal(f, d)).unwrap())
    }

    /// Oracle: does a totally isotropic subspace of dimension 2 exist? Brute
    /// force over pairs of vectors.
    fn has_isotropic_plane(form: &Form) -> bool {
        let q = form.orthogonal_quadratic().unwrap();
        let f = q.field();
        let n = q.dim();
        let total = (f.order() as u64).pow(n as u32);
        let singular: Vec<Vector> = (1..total)
            .map(|r| Vector::from_rank(f, n, r))
            .filter(|v| q.eval(v).unwrap() == 0)
            .collect();
        for (i, a) in singular.iter().enumerate() {
            for b in &singular[i + 1..] {
                let independent = Matrix::from_columns(f, &[a.clone(), b.clone()]).unwrap().rank() == 2;
                if independent && q.polar_eval(a, b).unwrap() == 0 {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn isotropic_examples() {
        assert_eq!(find_isotropic_vector(&diag(5, 1, &[1, 1])).unwrap().indices(), &[1, 2]);
        assert_eq!(find_isotropic_vector(&diag(3, 1, &[1, 1])), None);
        let f2 = make_field(2, 1).unwrap();
        let q = QuadraticForm::new(Matrix::from_index_rows(f2, &[[1u32, 1], [0, 1]]).unwrap()).unwrap();
        assert_eq!(find_isotropic_vector(&Form::Quadratic(q)), None);
    }

    #[test]
    fn isotropic_scan_matches_full_lexicographic_scan() {
        for (p, k) in [(3, 1), (5, 1), (2, 2), (7, 1)] {
            let f = make_field(p, k).unwrap();
            for n in 1..4 {
                let form = crate::forms::random_form(f, n, &mut rand::thread_rng());
                let total = (f.order() as u64).pow(n as u32);
                let brute = (1..total).map(|r| Vector::from_rank(f, n, r)).find(|v| form.norm_raw(v.indices()) == 0);
                assert_eq!(find_isotropic_vector(&form), brute);
            }
        }
    }

    #[test]
    fn witt_index_examples() {
        let f2 = make_field(2, 1).unwrap();
        let hyp = QuadraticForm::new(Matrix::from_index_rows(f2, &[[0u32, 1], [0, 0]]).unwrap()).unwrap();
        assert_eq!(witt_index(&Form::Quadratic(hyp)).unwrap(), 1);
        let aniso = QuadraticForm::new(Matrix::from_index_rows(f2, &[[1u32, 1], [0, 1]]).unwrap()).unwrap();
        assert_eq!(witt_index(&Form::Quadratic(aniso)).unwrap(), 0);
        // GF(3) diag(1,1,1,1): -1 is a non-square but the 4-dim form is split
        let d4 = diag(3, 1, &[1, 1, 1, 1]);
        assert_eq!(witt_index(&d4).unwrap(), 2);
        assert!(has_isotropic_plane(&d4));
        let d4m = diag(3, 1, &[1, 1, 1, 2]);
        assert_eq!(witt_index(&d4m).unwrap(), 1);
        assert!(!has_isotropic_plane(&d4m));
    }

    #[test]
    fn witt_index_agrees_with_plane_oracle() {
        let mut rng = rand::thread_rng();
        for (p, k) in [(3, 1), (2, 1), (5, 1), (2, 2)] {
            let f = make_field(p, k).unwrap();
            for _ in 0..6 {
                let form = crate::forms::random_form(f, 4, &mut rng);
                let w = witt_index(&form).unwrap();
                assert!(w == 1 || w == 2);
                assert_eq!(w == 2, has_isotropic_plane(&form));
            }
        }
    }

    #[test]
    fn decomposition_is_hyperbolic() {
        let f = make_field(2, 2).unwrap();
        for tag in [TypeTag::Plus, TypeTag::Minus] {
            let Form::Quadratic(q) = standard_form(f, 6, tag).unwrap() else { panic!() };
            let d = witt_decomposition(&q).unwrap();
            let expected = if tag == TypeTag::Plus { 3 } else { 2 };
            assert_eq!(d.witt_index(), expected);
            for (v, w) in &d.pairs {
                assert_eq!(q.eval(v).unwrap(), 0);
                assert_eq!(q.eval(w).unwrap(), 0);
                assert_eq!(q.polar_eval(v, w).unwrap(), 1);
            }
        }
    }

    #[test]
    fn preconditions() {
        let f3 = make_field(3, 1).unwrap();
        let sing = Form::Bilinear(BilinearForm::new(Matrix::diagonal(f3, &[1, 0])).unwrap());
        assert_eq!(witt_index(&sing).unwrap_err(), Error::Singular);
        let f2 = make_field(2, 1).unwrap();
        let d = Form::Bilinear(BilinearForm::new(Matrix::identity(f2, 2)).unwrap());
        assert_eq!(witt_index(&d).unwrap_err(), Error::EvenCharacteristic);
        let q = QuadraticForm::new(Matrix::from_index_rows(f2, &[[0u32, 0, 0], [0, 0, 1], [0, 0, 0]]).unwrap()).unwrap();
        assert_eq!(witt_index(&Form::Quadratic(q)).unwrap_err(), Error::SingularForm);
    }
}
