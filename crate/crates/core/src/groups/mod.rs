//! Orthogonal and symplectic groups as explicit matrix groups.
//!
//! Matrices act on column vectors; an element `g` is an isometry when it
//! preserves the form on every pair of basis vectors (and, for quadratic
//! forms, `Q` on every basis vector).

mod char2;
mod enumerate;
mod generators;
mod invariants;
mod order;
mod subgroups;

pub use char2::{char2_odd_isomorphism, Char2OddIsomorphism, IsomorphismCertificate};
pub use enumerate::{enumerate_group, enumerate_group_with, subgroup_generated, ElementSet, DEFAULT_BUDGET};
pub use generators::{
    all_reflections, all_transvections, decompose_into_reflections, decompose_with_order, reflection,
    symplectic_transvection, transvection,
};
pub use invariants::{determinant_sign, dickson_invariant, spinor_norm, spinor_norm_with_order};
pub use order::{estimated_order, group_order, order_formula};
pub use subgroups::{commutator_subgroup, kernel_subgroups, CommutatorReport, SubgroupReport, SubgroupTag};

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{classify, Form, TypeTag};
use crate::gf::{Field, SquareClass};
use crate::linalg::Matrix;

/// Whether `g` preserves `form`.
///
/// Bilinear: `g^T G g = G`. Quadratic: `Q(g e_i) = Q(e_i)` for all `i` and
/// `f_Q(g e_i, g e_j) = f_Q(e_i, e_j)` for all `i < j`, which together force
/// `Q(gv) = Q(v)` for every `v`. In both cases `g` must be invertible.
pub fn is_isometry(g: &Matrix, form: &Form) -> Result<bool> {
    let n = form.dim();
    if g.field() != form.field() {
        return Err(Error::FieldMismatch);
    }
    if g.rows() != n || g.cols() != n {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix for dimension {n}", g.rows(), g.cols())));
    }
    let preserves = match form {
        Form::Bilinear(b) => g.transpose().mul_unchecked(b.gram()).mul_unchecked(g) == *b.gram(),
        Form::Quadratic(q) => {
            let cols = g.columns();
            (0..n).all(|i| {
                q.eval_raw(cols[i].indices()) == q.upper().at(i, i)
                    && (i + 1..n).all(|j| q.polar_raw(cols[i].indices(), cols[j].indices()) == q.upper().at(i, j))
            })
        }
    };
    Ok(preserves && g.rank() == n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    #[serde(rename = "O")]
    Orthogonal,
    #[serde(rename = "Sp")]
    Symplectic,
}

/// The group a nonsingular form determines: `Sp` for an alternating bilinear
/// form, `O` for a symmetric bilinear form in odd characteristic or any
/// suitably nonsingular quadratic form.
pub fn group_kind_of(form: &Form) -> Result<GroupKind> {
    match form {
        Form::Bilinear(b) => {
            let p = b.predicates();
            if p.alternating {
                if b.dim() % 2 == 1 {
                    return Err(Error::OddDimension);
                }
                if !p.nonsingular {
                    return Err(Error::Singular);
                }
                Ok(GroupKind::Symplectic)
            } else if b.field().is_char2() {
                Err(Error::EvenCharacteristic)
            } else if !p.symmetric {
                Err(Error::NotSymmetric)
            } else if !p.nonsingular {
                Err(Error::Singular)
            } else {
                Ok(GroupKind::Orthogonal)
            }
        }
        Form::Quadratic(_) => {
            // validates nondegeneracy / nonsingularity
            crate::forms::witt_index(form)?;
            Ok(GroupKind::Orthogonal)
        }
    }
}

/// An invertible matrix certified to preserve a form, with lazily cached
/// invariants.
#[derive(Clone)]
pub struct Isometry {
    form: Arc<Form>,
    mat: Matrix,
    det: OnceLock<Option<i8>>,
    dickson: OnceLock<u8>,
    spinor: OnceLock<Option<SquareClass>>,
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry({:?})", self.mat)
    }
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat && (Arc::ptr_eq(&self.form, &other.form) || self.form == other.form)
    }
}

impl Eq for Isometry {}

impl Isometry {
    pub fn new(form: Arc<Form>, mat: Matrix) -> Result<Self> {
        if !is_isometry(&mat, &form)? {
            return Err(Error::NotAnIsometry);
        }
        Ok(Self::trusted(form, mat))
    }

    pub(crate) fn trusted(form: Arc<Form>, mat: Matrix) -> Self {
        Isometry { form, mat, det: OnceLock::new(), dickson: OnceLock::new(), spinor: OnceLock::new() }
    }

    pub fn identity(form: Arc<Form>) -> Self {
        let n = form.dim();
        let f = form.field();
        Self::trusted(form, Matrix::identity(f, n))
    }

    pub fn form(&self) -> &Arc<Form> {
        &self.form
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    fn check(&self, other: &Isometry) -> Result<()> {
        if Arc::ptr_eq(&self.form, &other.form) || self.form == other.form {
            Ok(())
        } else {
            Err(Error::FormMismatch)
        }
    }

    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        self.check(other)?;
        Ok(Self::trusted(self.form.clone(), self.mat.mul_unchecked(&other.mat)))
    }

    pub fn inverse(&self) -> Isometry {
        Self::trusted(self.form.clone(), self.mat.inverse().expect("isometries are invertible"))
    }

    /// `+1` or `-1` in odd characteristic; `None` in characteristic 2.
    pub fn det_sign(&self) -> Option<i8> {
        *self.det.get_or_init(|| determinant_sign(&self.mat).ok())
    }

    pub fn dickson(&self) -> u8 {
        *self.dickson.get_or_init(|| dickson_invariant(&self.mat))
    }

    /// Spinor norm as a square class; errors outside odd-characteristic `SO`.
    pub fn spinor(&self) -> Result<SquareClass> {
        if let Some(Some(s)) = self.spinor.get() {
            return Ok(*s);
        }
        let s = spinor_norm(self)?;
        let _ = self.spinor.set(Some(s));
        Ok(s)
    }
}

/// An orthogonal or symplectic group given by its form, with write-once
/// caches for its generators, order and full element set.
pub struct GroupHandle {
    form: Arc<Form>,
    kind: GroupKind,
    type_tag: Option<TypeTag>,
    budget: u64,
    generators: OnceLock<Vec<Isometry>>,
    order: OnceLock<u128>,
    elements: OnceLock<Arc<ElementSet>>,
}

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("kind", &self.kind)
            .field("type_tag", &self.type_tag)
            .field("form", &self.form)
            .finish()
    }
}

impl GroupHandle {
    pub fn new(form: Form) -> Result<Self> {
        Self::with_budget(form, DEFAULT_BUDGET)
    }

    pub fn with_budget(form: Form, budget: u64) -> Result<Self> {
        let kind = group_kind_of(&form)?;
        let type_tag = match kind {
            GroupKind::Orthogonal => Some(classify(&form)?.type_tag),
            GroupKind::Symplectic => None,
        };
        Ok(GroupHandle {
            form: Arc::new(form),
            kind,
            type_tag,
            budget,
            generators: OnceLock::new(),
            order: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    /// The representative group of the given type (see [`crate::forms::standard_form`]).
    pub fn standard(field: Field, n: usize, tag: TypeTag, budget: u64) -> Result<Self> {
        Self::with_budget(crate::forms::standard_form(field, n, tag)?, budget)
    }

    pub fn form(&self) -> &Arc<Form> {
        &self.form
    }

    pub fn field(&self) -> Field {
        self.form.field()
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn type_tag(&self) -> Option<TypeTag> {
        self.type_tag
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Reflections (odd characteristic), orthogonal transvections
    /// (characteristic 2) or symplectic transvections, one per line.
    pub fn generators(&self) -> Result<&[Isometry]> {
        if let Some(g) = self.generators.get() {
            return Ok(g);
        }
        let gens = match (self.kind, self.field().is_char2()) {
            (GroupKind::Symplectic, _) => generators::all_symplectic_transvections(&self.form)?,
            (GroupKind::Orthogonal, false) => all_reflections(&self.form)?,
            (GroupKind::Orthogonal, true) => all_transvections(&self.form)?,
        };
        Ok(self.generators.get_or_init(|| gens))
    }

    pub fn elements(&self) -> Result<&Arc<ElementSet>> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let set = Arc::new(enumerate_group(&self.form, self.budget)?);
        let _ = self.order.set(set.len() as u128);
        Ok(self.elements.get_or_init(|| set))
    }

    /// Order from enumeration when the elements are cached, otherwise from
    /// [`group_order`].
    pub fn order(&self) -> Result<u128> {
        if let Some(&o) = self.order.get() {
            return Ok(o);
        }
        if let Some(e) = self.elements.get() {
            return Ok(*self.order.get_or_init(|| e.len() as u128));
        }
        let o = group_order(self.kind, self.type_tag, self.dim(), self.field())?;
        Ok(*self.order.get_or_init(|| o))
    }

    pub fn isometry(&self, mat: Matrix) -> Result<Isometry> {
        Isometry::new(self.form.clone(), mat)
    }
}

/// Cell of the classification table a form's orthogonal group falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TableCell {
    /// Odd characteristic, odd dimension: a single group `O(n)`.
    Orthogonal { n: usize },
    /// Even dimension, split.
    OrthogonalPlus { n: usize },
    /// Even dimension, non-split.
    OrthogonalMinus { n: usize },
    /// Characteristic 2, odd dimension: `O(n) = Sp(n - 1)`.
    Symplectic { n: usize },
}

impl fmt::Display for TableCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableCell::Orthogonal { n } => write!(f, "O({n})"),
            TableCell::OrthogonalPlus { n } => write!(f, "O^+({n})"),
            TableCell::OrthogonalMinus { n } => write!(f, "O^-({n})"),
            TableCell::Symplectic { n } => write!(f, "Sp({n})"),
        }
    }
}

/// Which cell of the classification table the orthogonal group of `form`
/// occupies.
pub fn group_kind(n: usize, field: Field, form: &Form) -> Result<TableCell> {
    if n < 2 {
        return Err(Error::UnsupportedCombination(format!("dimension {n} < 2")));
    }
    if form.dim() != n || form.field() != field {
        return Err(Error::ShapeMismatch("form does not live on the given space".into()));
    }
    let class = classify(form)?;
    Ok(match (class.type_tag, field.is_char2()) {
        (TypeTag::OddDim, false) => TableCell::Orthogonal { n },
        (TypeTag::OddDim, true) => {
            let Form::Quadratic(q) = form else { unreachable!("classify rejects char-2 bilinear forms") };
            // realized through the isomorphism with the induced symplectic group
            let iso = char2_odd_isomorphism(q)?;
            TableCell::Symplectic { n: iso.symplectic_form().dim() }
        }
        (TypeTag::Plus, _) => TableCell::OrthogonalPlus { n },
        (TypeTag::Minus, _) => TableCell::OrthogonalMinus { n },
    })
}
