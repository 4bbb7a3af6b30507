use serde::{Deserialize, Serialize};

use super::normal::{arf_invariant, normal_basis};
use super::witt::{orthogonal_geometry, witt_decomposition};
use super::Form;
use crate::error::{Error, Result};
use crate::gf::SquareClass;
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharParity {
    Odd,
    Even,
}

/// Type of an orthogonal geometry: split (`Plus`), non-split (`Minus`), or
/// odd-dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeTag {
    #[serde(rename = "odd")]
    OddDim,
    #[serde(rename = "plus")]
    Plus,
    #[serde(rename = "minus")]
    Minus,
}

impl TypeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeTag::OddDim => "odd",
            TypeTag::Plus => "plus",
            TypeTag::Minus => "minus",
        }
    }
}

impl std::str::FromStr for TypeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(TypeTag::OddDim),
            "plus" | "+" => Ok(TypeTag::Plus),
            "minus" | "-" => Ok(TypeTag::Minus),
            other => Err(Error::Parse(format!("unknown type tag {other:?}"))),
        }
    }
}

/// The classification verdict for a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormClass {
    pub char_parity: CharParity,
    pub dim: usize,
    pub witt_index: usize,
    pub type_tag: TypeTag,
    /// Square class of the Gram determinant (odd characteristic only).
    pub disc_class: Option<SquareClass>,
    /// Arf invariant (characteristic 2, even dimension only).
    pub arf_bit: Option<u8>,
}

/// Classifies a nonsingular symmetric bilinear form (odd characteristic) or a
/// nondegenerate / nonsingular quadratic form.
///
/// Even dimension is split into `Plus` and `Minus` by the Witt index. Odd
/// characteristic also records the discriminant's square class;
/// characteristic 2 in even dimension records the Arf invariant, which must
/// vanish exactly on `Plus`.
pub fn classify(form: &Form) -> Result<FormClass> {
    let field = form.field();
    let q = orthogonal_geometry(form)?;
    let n = q.dim();
    let witt = witt_decomposition(&q)?.witt_index();
    let type_tag = if n % 2 == 1 {
        TypeTag::OddDim
    } else if witt == n / 2 {
        TypeTag::Plus
    } else {
        assert_eq!(witt + 1, n / 2, "Witt index of a nondegenerate form is n/2 or n/2 - 1");
        TypeTag::Minus
    };
    let (char_parity, disc_class, arf_bit) = if field.is_char2() {
        let arf = if n % 2 == 0 { Some(arf_invariant(&q)?) } else { None };
        if let Some(bit) = arf {
            assert_eq!(bit == 0, type_tag == TypeTag::Plus, "Arf invariant disagrees with the Witt index");
        }
        (CharParity::Even, None, arf)
    } else {
        let det = form.bilinear().gram().determinant()?;
        (CharParity::Odd, Some(field.square_class(det)), None)
    };
    Ok(FormClass { char_parity, dim: n, witt_index: witt, type_tag, disc_class, arf_bit })
}

/// A matrix `C` with `A(v) = B(Cv)` for all `v`, or `None` when the classes
/// differ.
///
/// Built as `N_B N_A^{-1}` from the normalizing bases of both forms and
/// checked on the standard basis and all pairs before being returned.
pub fn equivalence_witness(a: &Form, b: &Form) -> Result<Option<Matrix>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.dim() != b.dim() {
        return Err(Error::ShapeMismatch(format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    if std::mem::discriminant(a) != std::mem::discriminant(b) {
        return Err(Error::KindMismatch);
    }
    if classify(a)? != classify(b)? {
        return Ok(None);
    }
    let (na, normal_a) = normal_basis(a)?;
    let (nb, normal_b) = normal_basis(b)?;
    if normal_a != normal_b {
        return Ok(None);
    }
    let c = nb.matmul(&na.inverse()?)?;
    if b.pullback(&c)? != *a {
        return Ok(None);
    }
    Ok(Some(c))
}
