use std::sync::Arc;

use super::Isometry;
use crate::error::{Error, Result};
use crate::forms::witt::scan_projective;
use crate::forms::{BilinearForm, Form};
use crate::linalg::{Matrix, Vector};

/// `I + c * v (G v)^T`, i.e. `x -> x + c f(x, v) v` for `f` with Gram `G`.
fn rank_one_update(g: &BilinearForm, v: &[u32], c: u32) -> Matrix {
    let field = g.field();
    let n = g.dim();
    let gv: Vec<u32> = (0..n)
        .map(|k| (0..n).fold(0, |acc, l| field.add(acc, field.mul(g.gram().at(k, l), v[l]))))
        .collect();
    let mut m = Matrix::identity(field, n);
    for i in 0..n {
        let cv = field.mul(c, v[i]);
        if cv == 0 {
            continue;
        }
        for k in 0..n {
            let cur = m.at(i, k);
            m.set(i, k, field.add(cur, field.mul(cv, gv[k])));
        }
    }
    m
}

fn symmetric_odd(form: &Form) -> Result<BilinearForm> {
    let field = form.field();
    if field.is_char2() {
        return Err(Error::EvenCharacteristic);
    }
    let b = form.bilinear();
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(b)
}

/// The reflection `x -> x - 2 f(x, v) / f(v, v) v` (odd characteristic).
pub fn reflection(v: &Vector, form: &Form) -> Result<Matrix> {
    let b = symmetric_odd(form)?;
    if v.field() != form.field() {
        return Err(Error::FieldMismatch);
    }
    if v.len() != form.dim() {
        return Err(Error::ShapeMismatch(format!("vector of length {} for dimension {}", v.len(), form.dim())));
    }
    let field = b.field();
    let fvv = b.eval_raw(v.indices(), v.indices());
    let Some(inv) = field.inv(fvv) else {
        return Err(Error::IsotropicVector);
    };
    let c = field.neg(field.mul(field.from_int(2), inv));
    Ok(rank_one_update(&b, v.indices(), c))
}

/// The orthogonal transvection `x -> x + f_Q(x, v) / Q(v) v` (characteristic 2).
pub fn transvection(v: &Vector, form: &Form) -> Result<Matrix> {
    let Form::Quadratic(q) = form else {
        return Err(Error::KindMismatch);
    };
    let field = q.field();
    if !field.is_char2() {
        return Err(Error::OddCharacteristic);
    }
    if v.field() != field {
        return Err(Error::FieldMismatch);
    }
    if v.len() != q.dim() {
        return Err(Error::ShapeMismatch(format!("vector of length {} for dimension {}", v.len(), q.dim())));
    }
    let Some(inv) = field.inv(q.eval_raw(v.indices())) else {
        return Err(Error::SingularVector);
    };
    Ok(rank_one_update(&q.polar(), v.indices(), inv))
}

/// The symplectic transvection `x -> x + c f(x, v) v`.
pub fn symplectic_transvection(v: &Vector, c: u32, form: &BilinearForm) -> Result<Matrix> {
    if !form.predicates().alternating {
        return Err(Error::NotAlternating);
    }
    if v.len() != form.dim() {
        return Err(Error::ShapeMismatch(format!("vector of length {} for dimension {}", v.len(), form.dim())));
    }
    Ok(rank_one_update(form, v.indices(), c))
}

fn lines(form: &Form) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    scan_projective(form.field(), form.dim(), |v| {
        out.push(v.to_vec());
        false
    });
    out
}

/// One reflection per anisotropic line, in projective scan order.
pub fn all_reflections(form: &Arc<Form>) -> Result<Vec<Isometry>> {
    let b = symmetric_odd(form)?;
    let field = form.field();
    let mut out = Vec::new();
    for v in lines(form) {
        if b.eval_raw(&v, &v) != 0 {
            let m = reflection(&Vector::from_raw(field, v), form)?;
            out.push(Isometry::trusted(form.clone(), m));
        }
    }
    Ok(out)
}

/// One transvection per nonsingular line, skipping the identity that a
/// radical vector would give.
pub fn all_transvections(form: &Arc<Form>) -> Result<Vec<Isometry>> {
    let Form::Quadratic(q) = form.as_ref() else {
        return Err(Error::KindMismatch);
    };
    let field = q.field();
    if !field.is_char2() {
        return Err(Error::OddCharacteristic);
    }
    let mut out = Vec::new();
    for v in lines(form) {
        if q.eval_raw(&v) != 0 {
            let m = transvection(&Vector::from_raw(field, v), form)?;
            if !m.is_identity() {
                out.push(Isometry::trusted(form.clone(), m));
            }
        }
    }
    Ok(out)
}

/// `x -> x + c f(x, v) v` for every line and every nonzero `c`.
pub(crate) fn all_symplectic_transvections(form: &Arc<Form>) -> Result<Vec<Isometry>> {
    let Form::Bilinear(b) = form.as_ref() else {
        return Err(Error::KindMismatch);
    };
    let field = b.field();
    let mut out = Vec::new();
    for v in lines(form) {
        let v = Vector::from_raw(field, v);
        for c in 1..field.order() {
            out.push(Isometry::trusted(form.clone(), symplectic_transvection(&v, c, b)?));
        }
    }
    Ok(out)
}

/// Vectors `v_1, .., v_r` (`r <= 2n`) with `g = r_{v_1} ... r_{v_r}`.
pub fn decompose_into_reflections(g: &Isometry) -> Result<Vec<Vector>> {
    let order: Vec<usize> = (0..g.form().dim()).collect();
    decompose_with_order(g, &order)
}

/// As [`decompose_into_reflections`], fixing the basis vectors in `order`.
///
/// Each step makes the current remainder `h` fix the next basis vector `e`
/// while keeping the previously fixed ones: with one reflection along
/// `h e - e` if that is anisotropic, otherwise with two, the first along the
/// smallest anisotropic `w` orthogonal to the fixed vectors that makes
/// `r_w h e - e` anisotropic (or zero).
pub fn decompose_with_order(g: &Isometry, order: &[usize]) -> Result<Vec<Vector>> {
    let form = g.form();
    let b = symmetric_odd(form)?;
    let field = b.field();
    let n = b.dim();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::ShapeMismatch("order must be a permutation of the basis".into()));
    }
    let norm = |v: &[u32]| b.eval_raw(v, v);
    let mut h = g.matrix().clone();
    let mut out: Vec<Vector> = Vec::new();
    let mut fixed: Vec<usize> = Vec::new();
    for &j in order {
        let e = Vector::basis(field, n, j);
        let x = h.column(j);
        if x == e {
            fixed.push(j);
            continue;
        }
        let u = x.sub(&e)?;
        if norm(u.indices()) != 0 {
            h = reflection(&u, form)?.mul_unchecked(&h);
            out.push(u);
        } else {
            let mut chosen = None;
            scan_projective(field, n, |w| {
                if norm(w) == 0 || fixed.iter().any(|&i| b.eval_raw(w, Vector::basis(field, n, i).indices()) != 0) {
                    return false;
                }
                let rw = reflection(&Vector::from_raw(field, w.to_vec()), form).expect("anisotropic");
                let y = rw.matvec_unchecked(&x).sub(&e).expect("same field");
                if y.is_zero() || norm(y.indices()) != 0 {
                    chosen = Some((rw, y));
                    true
                } else {
                    false
                }
            })
            .map(|w| {
                let (rw, y) = chosen.take().expect("set with the match");
                h = rw.mul_unchecked(&h);
                out.push(Vector::from_raw(field, w));
                if !y.is_zero() {
                    h = reflection(&y, form).expect("anisotropic").mul_unchecked(&h);
                    out.push(y);
                }
            })
            .ok_or_else(|| Error::UnsupportedCombination("no reflection pair fixes the basis vector".into()))?;
        }
        fixed.push(j);
    }
    debug_assert!(h.is_identity());
    debug_assert!(out.len() <= 2 * n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::QuadraticForm;
    use crate::gf::make_field;
    use crate::groups::{enumerate_group, is_isometry, subgroup_generated};

    fn diag(p: u64, d: &[u32]) -> Arc<Form> {
        Arc::new(Form::Bilinear(BilinearForm::new(Matrix::diagonal(make_field(p, 1).unwrap(), d)).unwrap()))
    }

    fn product(form: &Form, vs: &[Vector]) -> Matrix {
        vs.iter().fold(Matrix::identity(form.field(), form.dim()), |acc, v| {
            acc.mul_unchecked(&reflection(v, form).unwrap())
        })
    }

    #[test]
    fn reflection_example() {
        let form = diag(3, &[1, 1]);
        let e1 = Vector::basis(form.field(), 2, 0);
        let r = reflection(&e1, &form).unwrap();
        assert_eq!(r, Matrix::diagonal(form.field(), &[2, 1]));
        assert!(r.mul_unchecked(&r).is_identity());
        let iso = Vector::from_indices(make_field(5, 1).unwrap(), &[1, 2]).unwrap();
        assert_eq!(reflection(&iso, &diag(5, &[1, 1])).unwrap_err(), Error::IsotropicVector);
    }

    #[test]
    fn transvection_example() {
        let f2 = make_field(2, 1).unwrap();
        let q = Form::Quadratic(QuadraticForm::new(Matrix::from_index_rows(f2, &[[1u32, 1], [0, 0]]).unwrap()).unwrap());
        let t = transvection(&Vector::basis(f2, 2, 0), &q).unwrap();
        assert_eq!(t.column(1).indices(), &[1, 1]);
        assert_eq!(t.column(0).indices(), &[1, 0]);
        assert!(is_isometry(&t, &q).unwrap());
        assert!(t.mul_unchecked(&t).is_identity());
        assert_eq!(transvection(&Vector::basis(f2, 2, 1), &q).unwrap_err(), Error::SingularVector);
        assert_eq!(reflection(&Vector::basis(f2, 2, 0), &q).unwrap_err(), Error::EvenCharacteristic);
        let odd = diag(3, &[1, 1]);
        let err = transvection(&Vector::basis(odd.field(), 2, 0), &Form::Quadratic(odd.orthogonal_quadratic().unwrap()));
        assert_eq!(err.unwrap_err(), Error::OddCharacteristic);
    }

    #[test]
    fn decomposition_reconstructs_small_groups() {
        for (p, d) in [(3u64, vec![1u32, 1]), (3, vec![1, 2]), (5, vec![1, 1]), (3, vec![1, 1, 1]), (3, vec![1, 1, 1, 2])] {
            check_all(&diag(p, &d));
        }
        let f9 = make_field(3, 2).unwrap();
        for tag in [crate::forms::TypeTag::Plus, crate::forms::TypeTag::Minus] {
            check_all(&Arc::new(crate::forms::standard_form(f9, 2, tag).unwrap()));
        }
    }

    fn check_all(form: &Arc<Form>) {
        let n = form.dim();
        let elements = enumerate_group(form, 1_000_000).unwrap();
        for m in elements.iter() {
            let g = Isometry::trusted(form.clone(), m.clone());
            let vs = decompose_into_reflections(&g).unwrap();
            assert!(vs.len() <= 2 * n);
            assert_eq!(&product(form, &vs), m);
            let rev: Vec<usize> = (0..n).rev().collect();
            let ws = decompose_with_order(&g, &rev).unwrap();
            assert_eq!(&product(form, &ws), m);
        }
    }

    #[test]
    fn single_reflection_decomposes_to_itself() {
        let form = diag(5, &[1, 2, 3]);
        for g in all_reflections(&form).unwrap() {
            let vs = decompose_into_reflections(&g).unwrap();
            assert_eq!(vs.len(), 1);
            assert_eq!(&reflection(&vs[0], &form).unwrap(), g.matrix());
        }
    }

    #[test]
    fn reflections_generate_o_minus_2_3() {
        let form = diag(3, &[1, 1]);
        let gens = all_reflections(&form).unwrap();
        let closure = subgroup_generated(&gens, 1000).unwrap();
        assert_eq!(closure.len(), 8);
    }

    #[test]
    fn transvections_of_plus_4_2_generate_proper_subgroup() {
        let f2 = make_field(2, 1).unwrap();
        let form = Arc::new(crate::forms::standard_form(f2, 4, crate::forms::TypeTag::Plus).unwrap());
        let gens = all_transvections(&form).unwrap();
        let closure = subgroup_generated(&gens, 100_000).unwrap();
        let full = enumerate_group(&form, 100_000).unwrap();
        assert_eq!(full.len(), 72);
        assert!(closure.len() < full.len(), "closure {}", closure.len());
        assert_eq!(full.len() % closure.len(), 0);
    }
}
