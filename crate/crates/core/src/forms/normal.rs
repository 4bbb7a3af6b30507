//! Canonical bases: orthogonal (odd characteristic), symplectic, and the
//! normal forms used to build equivalence witnesses.

use rand::Rng;

use super::witt::{orthogonal_geometry, scan_projective, witt_decomposition};
use super::{combine, BilinearForm, Form, QuadraticForm};
use crate::error::{Error, Result};
use crate::gf::{Field, SquareClass};
use crate::linalg::{Matrix, Vector};

/// Orthogonal basis (columns of `basis`) with `f(e_i, e_i) = entries[i]`.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub basis: Matrix,
    pub entries: Vec<u32>,
}

fn orthogonal_complement(f: &BilinearForm, sub: &[Vector], against: &[&Vector]) -> Vec<Vector> {
    let field = f.field();
    let mut constraints = Matrix::zeros(field, against.len(), sub.len());
    for (r, a) in against.iter().enumerate() {
        for (j, s) in sub.iter().enumerate() {
            constraints.set(r, j, f.eval_raw(s.indices(), a.indices()));
        }
    }
    constraints.kernel_basis().iter().map(|c| combine(field, sub, c.indices())).collect()
}

/// Orthogonal basis with diagonal entries in `{1, alpha}`, `alpha` the
/// canonical non-square, at most one `alpha` and placed last.
///
/// Anisotropic vectors are split off one at a time (a standard basis vector
/// of the current subspace when one is anisotropic, otherwise the first
/// anisotropic vector in scan order) and rescaled. Pairs of `alpha` entries
/// are then merged: with `l^2 + m^2 = 1/alpha`, the vectors `l x + m y` and
/// `-m x + l y` both have norm 1.
pub fn diagonalize(f: &BilinearForm) -> Result<Diagonalization> {
    let field = f.field();
    if field.is_char2() {
        return Err(Error::EvenCharacteristic);
    }
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !f.is_nonsingular() {
        return Err(Error::Singular);
    }
    let n = f.dim();
    let alpha = field.canonical_nonsquare()?;
    let mut sub: Vec<Vector> = (0..n).map(|i| Vector::basis(field, n, i)).collect();
    let mut basis: Vec<Vector> = Vec::with_capacity(n);
    let mut entries: Vec<u32> = Vec::with_capacity(n);
    while !sub.is_empty() {
        let restricted = f.restrict(&sub);
        let m = sub.len();
        let coords = match (0..m).find(|&j| restricted.gram().at(j, j) != 0) {
            Some(j) => {
                let mut c = vec![0u32; m];
                c[j] = 1;
                c
            }
            None => scan_projective(field, m, |v| restricted.eval_raw(v, v) != 0)
                .expect("symmetric nonsingular forms in odd characteristic have anisotropic vectors"),
        };
        let v = combine(field, &sub, &coords);
        let c = f.eval_raw(v.indices(), v.indices());
        let (target, s) = match field.square_class(c) {
            SquareClass::Square => (1, field.sqrt(c).unwrap()),
            _ => (alpha, field.sqrt(field.div(c, alpha).unwrap()).unwrap()),
        };
        let v = v.scale(field.inv(s).unwrap());
        sub = orthogonal_complement(f, &sub, &[&v]);
        basis.push(v);
        entries.push(target);
    }

    let alpha_slots: Vec<usize> = (0..n).filter(|&i| entries[i] == alpha).collect();
    if alpha_slots.len() >= 2 {
        let target = field.inv(alpha).unwrap();
        let (l, m) = (0..field.order())
            .flat_map(|l| (0..field.order()).map(move |m| (l, m)))
            .find(|&(l, m)| field.add(field.mul(l, l), field.mul(m, m)) == target)
            .expect("every element is a sum of two squares");
        for pair in alpha_slots.chunks_exact(2) {
            let (x, y) = (basis[pair[0]].clone(), basis[pair[1]].clone());
            basis[pair[0]] = x.scale(l).axpy(m, &y)?;
            basis[pair[1]] = y.scale(l).axpy(field.neg(m), &x)?;
            entries[pair[0]] = 1;
            entries[pair[1]] = 1;
        }
    }
    // ones first, the (at most one) alpha last
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| entries[i] != 1);
    let basis: Vec<Vector> = order.iter().map(|&i| basis[i].clone()).collect();
    let entries: Vec<u32> = order.iter().map(|&i| entries[i]).collect();
    Ok(Diagonalization { basis: Matrix::from_columns(field, &basis)?, entries })
}

fn check_symplectic(f: &BilinearForm) -> Result<()> {
    if !f.predicates().alternating {
        return Err(Error::NotAlternating);
    }
    if f.dim() % 2 == 1 {
        return Err(Error::OddDimension);
    }
    if !f.is_nonsingular() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// Change of basis `C` (columns `e_1..e_m, e_{m+1}..e_{2m}`) with
/// `f(e_i, e_{i+m}) = 1`, `f(e_{i+m}, e_i) = -1` and all other pairs 0.
///
/// Takes the first basis vector `u` of the current subspace, its first
/// partner `v` with `f(u, v) != 0` rescaled to pair to 1, and recurses on the
/// orthogonal complement of `<u, v>`.
pub fn symplectic_basis(f: &BilinearForm) -> Result<Matrix> {
    check_symplectic(f)?;
    symplectic_split(f, |field, sub, f| {
        let u = sub[0].clone();
        let (v, c) = sub
            .iter()
            .map(|s| (s, f.eval_raw(u.indices(), s.indices())))
            .find(|&(_, c)| c != 0)
            .expect("nonsingular");
        (u, v.scale(field.inv(c).unwrap()))
    })
}

/// Same normal form as [`symplectic_basis`] from randomly chosen pairs.
pub fn random_symplectic_basis<R: Rng + ?Sized>(f: &BilinearForm, rng: &mut R) -> Result<Matrix> {
    check_symplectic(f)?;
    symplectic_split(f, |field, sub, f| {
        let q = field.order();
        let random_vec = |rng: &mut R| {
            let coords: Vec<u32> = (0..sub.len()).map(|_| rng.gen_range(0..q)).collect();
            combine(field, sub, &coords)
        };
        let u = loop {
            let u = random_vec(rng);
            if !u.is_zero() {
                break u;
            }
        };
        loop {
            let v = random_vec(rng);
            let c = f.eval_raw(u.indices(), v.indices());
            if c != 0 {
                return (u, v.scale(field.inv(c).unwrap()));
            }
        }
    })
}

fn symplectic_split(
    f: &BilinearForm,
    mut choose: impl FnMut(Field, &[Vector], &BilinearForm) -> (Vector, Vector),
) -> Result<Matrix> {
    let field = f.field();
    let n = f.dim();
    let mut sub: Vec<Vector> = (0..n).map(|i| Vector::basis(field, n, i)).collect();
    let mut us = Vec::new();
    let mut vs = Vec::new();
    while !sub.is_empty() {
        let (u, v) = choose(field, &sub, f);
        sub = orthogonal_complement(f, &sub, &[&u, &v]);
        us.push(u);
        vs.push(v);
    }
    us.extend(vs);
    Matrix::from_columns(field, &us)
}

fn check_arf(q: &QuadraticForm) -> Result<()> {
    if !q.field().is_char2() {
        return Err(Error::OddCharacteristic);
    }
    if q.dim() % 2 == 1 || !q.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok(())
}

/// Arf invariant from a symplectic basis of the polar form:
/// the class of `sum Q(e_i) Q(f_i)` in `F / {u^2 + u}`.
pub fn arf_invariant(q: &QuadraticForm) -> Result<u8> {
    check_arf(q)?;
    let basis = symplectic_basis(&q.polar())?;
    arf_invariant_with_basis(q, &basis)
}

/// Arf invariant computed from a caller-chosen symplectic basis of `f_Q`.
pub fn arf_invariant_with_basis(q: &QuadraticForm, basis: &Matrix) -> Result<u8> {
    check_arf(q)?;
    let field = q.field();
    let m = q.dim() / 2;
    let polar = q.polar();
    let mut sum = 0u32;
    for i in 0..m {
        let e = basis.column(i);
        let f = basis.column(i + m);
        if polar.eval_raw(e.indices(), f.indices()) != 1 {
            return Err(Error::NotAlternating);
        }
        sum = field.add(sum, field.mul(q.eval_raw(e.indices()), q.eval_raw(f.indices())));
    }
    field.arf_residue(sum)
}

/// A change of basis `C` to the normal form of the class, and that normal
/// form, such that `form(C x) = normal(x)`.
///
/// Odd characteristic: the diagonalization. Characteristic 2: hyperbolic
/// pairs from the Witt decomposition, then either nothing, the plane
/// `x^2 + xy + c y^2` with `c` the canonical element of Arf class 1 (even
/// `n`, minus type), or `z^2` on the radical (odd `n`).
pub fn normal_basis(form: &Form) -> Result<(Matrix, Form)> {
    let field = form.field();
    if !field.is_char2() {
        let b = match form {
            Form::Bilinear(b) => b.clone(),
            Form::Quadratic(q) => q.polar(),
        };
        orthogonal_geometry(&Form::Bilinear(b.clone()))?;
        let d = diagonalize(&b)?;
        let normal = BilinearForm::new(Matrix::diagonal(field, &d.entries))?;
        let normal = match form {
            Form::Bilinear(_) => Form::Bilinear(normal),
            Form::Quadratic(_) => Form::Quadratic(normal.to_quadratic()?),
        };
        return Ok((d.basis, normal));
    }
    let q = orthogonal_geometry(form)?;
    let n = q.dim();
    let decomposition = witt_decomposition(&q)?;
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    let mut upper = Matrix::zeros(field, n, n);
    for (i, (v, w)) in decomposition.pairs.iter().enumerate() {
        cols.push(v.clone());
        cols.push(w.clone());
        upper.set(2 * i, 2 * i + 1, 1);
    }
    let rest = &decomposition.anisotropic;
    match rest.len() {
        0 => {}
        1 => {
            let r = &rest[0];
            let s = field.sqrt(q.eval_raw(r.indices())).unwrap();
            cols.push(r.scale(field.inv(s).unwrap()));
            upper.set(n - 1, n - 1, 1);
        }
        2 => {
            let (a, b) = (&rest[0], &rest[1]);
            let qa = q.eval_raw(a.indices());
            let fab = q.polar_raw(a.indices(), b.indices());
            let s = field.sqrt(qa).unwrap();
            let e = a.scale(field.inv(s).unwrap());
            let f1 = b.scale(field.div(s, fab).unwrap());
            let c = field.canonical_arf_one()?;
            let target = field.add(q.eval_raw(f1.indices()), c);
            let lambda = field
                .artin_schreier_solve(target)?
                .expect("anisotropic planes have Arf class 1");
            let f2 = f1.axpy(lambda, &e)?;
            cols.push(e);
            cols.push(f2);
            upper.set(n - 2, n - 2, 1);
            upper.set(n - 2, n - 1, 1);
            upper.set(n - 1, n - 1, c);
        }
        _ => unreachable!("anisotropic kernels over finite fields have dimension at most 2"),
    }
    Ok((Matrix::from_columns(field, &cols)?, Form::Quadratic(QuadraticForm::new(upper)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::random_form;
    use crate::gf::make_field;
    use rand::SeedableRng;

    fn bil(p: u64, rows: &[&[u32]]) -> BilinearForm {
        let f = make_field(p, 1).unwrap();
        BilinearForm::new(Matrix::from_index_rows(f, rows).unwrap()).unwrap()
    }

    fn conjugate(f: &BilinearForm, c: &Matrix) -> Matrix {
        c.transpose().matmul(f.gram()).unwrap().matmul(c).unwrap()
    }

    #[test]
    fn diagonalize_examples() {
        let id = bil(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let d = diagonalize(&id).unwrap();
        assert!(d.basis.is_identity());
        assert_eq!(d.entries, vec![1, 1, 1]);

        let two = bil(3, &[&[2, 0], &[0, 2]]);
        let d = diagonalize(&two).unwrap();
        assert_eq!(d.entries, vec![1, 1]);
        assert_eq!(conjugate(&two, &d.basis), Matrix::identity(two.field(), 2));

        let mixed = bil(3, &[&[1, 0], &[0, 2]]);
        assert_eq!(diagonalize(&mixed).unwrap().entries, vec![1, 2]);
    }

    #[test]
    fn diagonalize_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1)] {
            let field = make_field(p, k).unwrap();
            let alpha = field.canonical_nonsquare().unwrap();
            for n in 1..=5 {
                for _ in 0..10 {
                    let Form::Bilinear(b) = random_form(field, n, &mut rng) else { unreachable!() };
                    let d = diagonalize(&b).unwrap();
                    assert_eq!(conjugate(&b, &d.basis), Matrix::diagonal(field, &d.entries));
                    assert!(d.entries[..n - 1].iter().all(|&e| e == 1));
                    assert!(d.entries[n - 1] == 1 || d.entries[n - 1] == alpha);
                    let disc = field.square_class(b.gram().determinant().unwrap());
                    assert_eq!(d.entries[n - 1] == alpha, disc == SquareClass::NonSquare);
                }
            }
        }
    }

    #[test]
    fn diagonalize_errors() {
        assert_eq!(diagonalize(&bil(2, &[&[1, 0], &[0, 1]])).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(diagonalize(&bil(3, &[&[1, 1], &[0, 1]])).unwrap_err(), Error::NotSymmetric);
        assert_eq!(diagonalize(&bil(3, &[&[1, 1], &[1, 1]])).unwrap_err(), Error::Singular);
    }

    fn standard_symplectic(field: Field, m: usize) -> Matrix {
        let n = 2 * m;
        let mut g = Matrix::zeros(field, n, n);
        for i in 0..m {
            g.set(i, i + m, 1);
            g.set(i + m, i, field.neg(1));
        }
        g
    }

    #[test]
    fn symplectic_examples() {
        let f3 = make_field(3, 1).unwrap();
        let j = standard_symplectic(f3, 2);
        let c = symplectic_basis(&BilinearForm::new(j.clone()).unwrap()).unwrap();
        assert!(c.is_identity());
        let ok = bil(3, &[&[0, 1], &[2, 0]]);
        assert!(symplectic_basis(&ok).unwrap().is_identity());
        let bad = bil(3, &[&[1, 1], &[2, 0]]);
        assert_eq!(symplectic_basis(&bad).unwrap_err(), Error::NotAlternating);
        let odd = bil(3, &[&[0, 1, 0], &[2, 0, 0], &[0, 0, 0]]);
        assert_eq!(symplectic_basis(&odd).unwrap_err(), Error::OddDimension);
        let sing = bil(3, &[&[0, 1, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(symplectic_basis(&sing).unwrap_err(), Error::Singular);
    }

    #[test]
    fn symplectic_normal_form_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
            let field = make_field(p, k).unwrap();
            for m in 1..=3 {
                let n = 2 * m;
                let j = standard_symplectic(field, m);
                for _ in 0..5 {
                    // random conjugate of the standard form
                    let c = loop {
                        let data: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..field.order())).collect();
                        let c = Matrix::from_raw(field, n, n, data);
                        if c.rank() == n {
                            break c;
                        }
                    };
                    let g = BilinearForm::new(conjugate(&BilinearForm::new(j.clone()).unwrap(), &c)).unwrap();
                    let basis = symplectic_basis(&g).unwrap();
                    assert_eq!(conjugate(&g, &basis), j);
                    let basis = random_symplectic_basis(&g, &mut rng).unwrap();
                    assert_eq!(conjugate(&g, &basis), j);
                }
            }
        }
    }

    #[test]
    fn arf_examples() {
        let f2 = make_field(2, 1).unwrap();
        let xy = QuadraticForm::new(Matrix::from_index_rows(f2, &[[0u32, 1], [0, 0]]).unwrap()).unwrap();
        assert_eq!(arf_invariant(&xy).unwrap(), 0);
        let aniso = QuadraticForm::new(Matrix::from_index_rows(f2, &[[1u32, 1], [0, 1]]).unwrap()).unwrap();
        assert_eq!(arf_invariant(&aniso).unwrap(), 1);
        let f3 = make_field(3, 1).unwrap();
        let q3 = QuadraticForm::new(Matrix::from_index_rows(f3, &[[0u32, 1], [0, 0]]).unwrap()).unwrap();
        assert_eq!(arf_invariant(&q3).unwrap_err(), Error::OddCharacteristic);
        let deg = QuadraticForm::new(Matrix::from_index_rows(f2, &[[1u32, 0], [0, 1]]).unwrap()).unwrap();
        assert_eq!(arf_invariant(&deg).unwrap_err(), Error::Degenerate);
    }

    #[test]
    fn normal_basis_reaches_normal_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (5, 1)] {
            let field = make_field(p, k).unwrap();
            for n in 1..=5 {
                for _ in 0..8 {
                    let form = random_form(field, n, &mut rng);
                    let (c, normal) = normal_basis(&form).unwrap();
                    assert_eq!(form.pullback(&c).unwrap(), normal);
                }
            }
        }
    }
}
