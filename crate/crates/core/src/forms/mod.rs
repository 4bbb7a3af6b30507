//! Bilinear and quadratic forms over a finite field.
//!
//! A [`BilinearForm`] is stored by its Gram matrix, `f(u, v) = u^T G v`. A
//! [`QuadraticForm`] is stored as an upper-triangular matrix `U` with
//! `Q(v) = v^T U v`; its polar form has Gram matrix `U + U^T`. Keeping the
//! upper-triangular representation is what lets characteristic 2 work: there
//! the Gram matrix of the polar form has zero diagonal and forgets `Q`.

mod classify;
mod normal;
pub(crate) mod witt;

pub use classify::{classify, equivalence_witness, CharParity, FormClass, TypeTag};
pub use normal::{
    arf_invariant, arf_invariant_with_basis, diagonalize, normal_basis, random_symplectic_basis,
    symplectic_basis, Diagonalization,
};
pub use witt::{find_isotropic_vector, witt_decomposition, witt_index, WittDecomposition};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{dot_raw, Matrix, Vector, MAX_DIM};

fn check_square(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix for a form", m.rows(), m.cols())));
    }
    if m.rows() > MAX_DIM {
        return Err(Error::DimensionTooLarge(m.rows()));
    }
    Ok(())
}

fn check_vector(field: Field, n: usize, v: &Vector) -> Result<()> {
    if v.field() != field {
        return Err(Error::FieldMismatch);
    }
    if v.len() != n {
        return Err(Error::ShapeMismatch(format!("vector of length {} for a form of dimension {n}", v.len())));
    }
    Ok(())
}

/// Linear combination `sum coords[i] * basis[i]`.
pub(crate) fn combine(field: Field, basis: &[Vector], coords: &[u32]) -> Vector {
    let n = basis[0].len();
    let mut out = vec![0u32; n];
    for (b, &c) in basis.iter().zip(coords) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(b.indices()) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    Vector::from_raw(field, out)
}

/// The four Gram-matrix predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormPredicates {
    pub symmetric: bool,
    pub antisymmetric: bool,
    pub alternating: bool,
    pub nonsingular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        check_square(&gram)?;
        Ok(BilinearForm { gram })
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `u^T G v`.
    pub fn eval(&self, u: &Vector, v: &Vector) -> Result<u32> {
        check_vector(self.field(), self.dim(), u)?;
        check_vector(self.field(), self.dim(), v)?;
        Ok(self.eval_raw(u.indices(), v.indices()))
    }

    pub(crate) fn eval_raw(&self, u: &[u32], v: &[u32]) -> u32 {
        let f = self.field();
        let n = self.dim();
        let mut acc = 0u32;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = &self.gram.data()[i * n..(i + 1) * n];
            acc = f.add(acc, f.mul(ui, dot_raw(f, row, v)));
        }
        acc
    }

    pub fn predicates(&self) -> FormPredicates {
        let f = self.field();
        let g = &self.gram;
        let n = self.dim();
        let mut symmetric = true;
        let mut antisymmetric = true;
        for i in 0..n {
            for j in 0..n {
                symmetric &= g.at(i, j) == g.at(j, i);
                antisymmetric &= g.at(i, j) == f.neg(g.at(j, i));
            }
        }
        let alternating = antisymmetric && (0..n).all(|i| g.at(i, i) == 0);
        FormPredicates { symmetric, antisymmetric, alternating, nonsingular: g.rank() == n }
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Left radical `{u : f(u, v) = 0 for all v}`, i.e. the kernel of `G^T`.
    pub fn radical(&self) -> Vec<Vector> {
        self.gram.transpose().kernel_basis()
    }

    /// Right radical `{v : f(u, v) = 0 for all u}`, the kernel of `G`.
    pub fn right_radical(&self) -> Vec<Vector> {
        self.gram.kernel_basis()
    }

    /// Restriction to the span of `basis`, in the coordinates of that basis.
    pub fn restrict(&self, basis: &[Vector]) -> BilinearForm {
        let m = basis.len();
        let mut g = Matrix::zeros(self.field(), m, m);
        for i in 0..m {
            for j in 0..m {
                g.set(i, j, self.eval_raw(basis[i].indices(), basis[j].indices()));
            }
        }
        BilinearForm { gram: g }
    }

    /// Pull back along `C`: the form `(u, v) -> f(Cu, Cv)`, Gram matrix `C^T G C`.
    pub fn pullback(&self, c: &Matrix) -> Result<BilinearForm> {
        let g = c.transpose().matmul(&self.gram)?.matmul(c)?;
        BilinearForm::new(g)
    }

    /// The quadratic form `Q(v) = f(v, v) / 2` (odd characteristic only).
    pub fn to_quadratic(&self) -> Result<QuadraticForm> {
        let f = self.field();
        if f.is_char2() {
            return Err(Error::EvenCharacteristic);
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.dim();
        let half = f.inv(2).unwrap();
        let mut upper = Matrix::zeros(f, n, n);
        for i in 0..n {
            upper.set(i, i, f.mul(self.gram.at(i, i), half));
            for j in i + 1..n {
                upper.set(i, j, self.gram.at(i, j));
            }
        }
        Ok(QuadraticForm { upper })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    upper: Matrix,
}

impl QuadraticForm {
    /// Requires an upper-triangular matrix.
    pub fn new(upper: Matrix) -> Result<Self> {
        check_square(&upper)?;
        let n = upper.rows();
        for i in 0..n {
            for j in 0..i {
                if upper.at(i, j) != 0 {
                    return Err(Error::ShapeMismatch("quadratic form matrix must be upper triangular".into()));
                }
            }
        }
        Ok(QuadraticForm { upper })
    }

    /// The quadratic form `v -> v^T M v` for an arbitrary square `M`, folded
    /// into upper-triangular storage.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        check_square(m)?;
        let f = m.field();
        let n = m.rows();
        let mut upper = Matrix::zeros(f, n, n);
        for i in 0..n {
            upper.set(i, i, m.at(i, i));
            for j in i + 1..n {
                upper.set(i, j, f.add(m.at(i, j), m.at(j, i)));
            }
        }
        Ok(QuadraticForm { upper })
    }

    pub fn field(&self) -> Field {
        self.upper.field()
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    pub fn upper(&self) -> &Matrix {
        &self.upper
    }

    pub fn eval(&self, v: &Vector) -> Result<u32> {
        check_vector(self.field(), self.dim(), v)?;
        Ok(self.eval_raw(v.indices()))
    }

    pub(crate) fn eval_raw(&self, v: &[u32]) -> u32 {
        let f = self.field();
        let n = self.dim();
        let mut acc = 0u32;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let row = &self.upper.data()[i * n + i..(i + 1) * n];
            acc = f.add(acc, f.mul(v[i], dot_raw(f, row, &v[i..])));
        }
        acc
    }

    /// `f_Q(u, v) = Q(u + v) - Q(u) - Q(v)` computed from the matrix.
    pub(crate) fn polar_raw(&self, u: &[u32], v: &[u32]) -> u32 {
        let f = self.field();
        let n = self.dim();
        let mut acc = 0u32;
        for i in 0..n {
            for j in i..n {
                let c = self.upper.at(i, j);
                if c == 0 {
                    continue;
                }
                let t = f.add(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
                acc = f.add(acc, f.mul(c, t));
            }
        }
        acc
    }

    pub fn polar_eval(&self, u: &Vector, v: &Vector) -> Result<u32> {
        check_vector(self.field(), self.dim(), u)?;
        check_vector(self.field(), self.dim(), v)?;
        Ok(self.polar_raw(u.indices(), v.indices()))
    }

    /// The polar form, Gram matrix `U + U^T`.
    pub fn polar(&self) -> BilinearForm {
        let gram = self.upper.add(&self.upper.transpose()).expect("same shape");
        BilinearForm { gram }
    }

    /// `rad(Q) = {v in rad(f_Q) : Q(v) = 0}`.
    ///
    /// On `rad(f_Q)` the form is additive: `Q(sum c_i r_i) = sum c_i^2 Q(r_i)`.
    /// In characteristic 2 taking square roots turns this into the linear
    /// functional `c -> sum c_i sqrt(Q(r_i))`, whose kernel is returned. In odd
    /// characteristic `Q = f_Q / 2` vanishes on `rad(f_Q)`.
    pub fn radical(&self) -> Vec<Vector> {
        let f = self.field();
        let rad = self.polar().radical();
        if rad.is_empty() || !f.is_char2() {
            return rad;
        }
        let roots: Vec<u32> = rad.iter().map(|r| f.sqrt(self.eval_raw(r.indices())).unwrap()).collect();
        let functional = Matrix::from_raw(f, 1, rad.len(), roots);
        functional.kernel_basis().iter().map(|c| combine(f, &rad, c.indices())).collect()
    }

    /// `rad(f_Q) = 0`.
    pub fn is_nondegenerate(&self) -> bool {
        self.polar().is_nonsingular()
    }

    /// `rad(Q) = 0`.
    pub fn is_nonsingular(&self) -> bool {
        self.radical().is_empty()
    }

    pub fn restrict(&self, basis: &[Vector]) -> QuadraticForm {
        let m = basis.len();
        let mut upper = Matrix::zeros(self.field(), m, m);
        for i in 0..m {
            upper.set(i, i, self.eval_raw(basis[i].indices()));
            for j in i + 1..m {
                upper.set(i, j, self.polar_raw(basis[i].indices(), basis[j].indices()));
            }
        }
        QuadraticForm { upper }
    }

    /// Pull back along `C`: the form `v -> Q(Cv)`.
    pub fn pullback(&self, c: &Matrix) -> Result<QuadraticForm> {
        if c.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if c.rows() != self.dim() {
            return Err(Error::ShapeMismatch("change of basis has the wrong number of rows".into()));
        }
        Ok(self.restrict(&c.columns()))
    }
}

/// Either kind of form, for operations that accept both.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Form {
    Bilinear(BilinearForm),
    Quadratic(QuadraticForm),
}

impl From<BilinearForm> for Form {
    fn from(f: BilinearForm) -> Self {
        Form::Bilinear(f)
    }
}

impl From<QuadraticForm> for Form {
    fn from(q: QuadraticForm) -> Self {
        Form::Quadratic(q)
    }
}

impl Form {
    pub fn field(&self) -> Field {
        match self {
            Form::Bilinear(b) => b.field(),
            Form::Quadratic(q) => q.field(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Form::Bilinear(b) => b.dim(),
            Form::Quadratic(q) => q.dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Form::Bilinear(_) => "bilinear",
            Form::Quadratic(_) => "quadratic",
        }
    }

    /// The bilinear form whose isometries are checked: `f` itself or `f_Q`.
    pub fn bilinear(&self) -> BilinearForm {
        match self {
            Form::Bilinear(b) => b.clone(),
            Form::Quadratic(q) => q.polar(),
        }
    }

    /// `f(v, v)` or `Q(v)`: the value whose vanishing makes `v` isotropic.
    pub(crate) fn norm_raw(&self, v: &[u32]) -> u32 {
        match self {
            Form::Bilinear(b) => b.eval_raw(v, v),
            Form::Quadratic(q) => q.eval_raw(v),
        }
    }

    /// Quadratic form carrying the orthogonal geometry: `Q` itself, or
    /// `f / 2` for a symmetric bilinear form in odd characteristic.
    pub fn orthogonal_quadratic(&self) -> Result<QuadraticForm> {
        match self {
            Form::Quadratic(q) => Ok(q.clone()),
            Form::Bilinear(b) => b.to_quadratic(),
        }
    }

    /// The form `v -> form(Cv)`.
    pub fn pullback(&self, c: &Matrix) -> Result<Form> {
        Ok(match self {
            Form::Bilinear(b) => Form::Bilinear(b.pullback(c)?),
            Form::Quadratic(q) => Form::Quadratic(q.pullback(c)?),
        })
    }
}

/// Alternating implies antisymmetric; a symmetric form in odd characteristic
/// is recovered from its quadratic form.
pub fn quadratic_from_bilinear(f: &BilinearForm) -> Result<QuadraticForm> {
    f.to_quadratic()
}

fn block_form(field: Field, n: usize, blocks: &[(usize, &[[u32; 2]; 2])], singles: &[(usize, u32)]) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for &(at, b) in blocks {
        for i in 0..2 {
            for j in 0..2 {
                m.set(at + i, at + j, b[i][j]);
            }
        }
    }
    for &(at, v) in singles {
        m.set(at, at, v);
    }
    m
}

/// Representative form of each type in dimension `n`.
///
/// Odd characteristic gives a symmetric bilinear form, characteristic 2 a
/// quadratic form. `Plus` is a sum of hyperbolic planes. `Minus` replaces the
/// last plane by an anisotropic one: `diag(1, -alpha)` in odd characteristic,
/// `x^2 + xy + c y^2` with `arf(c) = 1` in characteristic 2. `OddDim` is a
/// one-dimensional `<1>` (or `x_0^2`) followed by hyperbolic planes.
pub fn standard_form(field: Field, n: usize, tag: TypeTag) -> Result<Form> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    match (tag, n % 2) {
        (TypeTag::OddDim, 1) | (TypeTag::Plus | TypeTag::Minus, 0) => {}
        _ => return Err(Error::UnsupportedCombination(format!("type {tag:?} in dimension {n}"))),
    }
    let offset = n % 2;
    let planes = n / 2;
    let char2 = field.is_char2();
    let hyperbolic: [[u32; 2]; 2] = if char2 { [[0, 1], [0, 0]] } else { [[0, 1], [1, 0]] };
    let anisotropic: [[u32; 2]; 2] = if char2 {
        [[1, 1], [0, field.canonical_arf_one()?]]
    } else {
        [[1, 0], [0, field.neg(field.canonical_nonsquare()?)]]
    };
    let mut blocks: Vec<(usize, &[[u32; 2]; 2])> = Vec::new();
    for i in 0..planes {
        let last = i + 1 == planes;
        let block = if last && tag == TypeTag::Minus { &anisotropic } else { &hyperbolic };
        blocks.push((offset + 2 * i, block));
    }
    let singles: Vec<(usize, u32)> = if offset == 1 { vec![(0, 1)] } else { vec![] };
    let m = block_form(field, n, &blocks, &singles);
    Ok(if char2 {
        Form::Quadratic(QuadraticForm::new(m)?)
    } else {
        Form::Bilinear(BilinearForm::new(m)?)
    })
}

/// A uniformly random nonsingular form of the kind the classification takes:
/// a symmetric bilinear form in odd characteristic, a quadratic form in
/// characteristic 2 (nondegenerate for even `n`, nonsingular for odd `n`).
pub fn random_form<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Form {
    let q = field.order();
    loop {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(0..q);
                m.set(i, j, x);
                if !field.is_char2() {
                    m.set(j, i, x);
                }
            }
        }
        if field.is_char2() {
            let qf = QuadraticForm { upper: m };
            let ok = if n % 2 == 0 { qf.is_nondegenerate() } else { qf.is_nonsingular() };
            if ok {
                return Form::Quadratic(qf);
            }
        } else {
            let b = BilinearForm { gram: m };
            if b.is_nonsingular() {
                return Form::Bilinear(b);
            }
        }
    }
}
