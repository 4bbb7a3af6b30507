//! JSON wire formats: field and form descriptors, classification verdicts,
//! group elements and group reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{BilinearForm, CharParity, Form, FormClass, QuadraticForm, TypeTag};
use crate::gf::{make_field, make_field_with_modulus, Field, SquareClass};
use crate::groups::{GroupKind, SubgroupReport};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: u32,
    /// Constant term first. Optional on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldDescriptor {
    pub fn of(field: Field) -> Self {
        FieldDescriptor {
            p: field.characteristic() as u64,
            k: field.degree(),
            modulus: Some(field.modulus().iter().map(|&c| c as u64).collect()),
        }
    }

    /// The field described. A modulus other than the canonical one is
    /// rejected unless `allow_custom` is set.
    pub fn resolve(&self, allow_custom: bool) -> Result<Field> {
        let canonical = make_field(self.p, self.k)?;
        let Some(m) = &self.modulus else {
            return Ok(canonical);
        };
        if m.len() != self.k as usize + 1 {
            return Err(Error::Parse(format!("modulus of degree {} for k = {}", m.len().saturating_sub(1), self.k)));
        }
        let field = make_field_with_modulus(self.p, m)?;
        if !field.is_canonical() && !allow_custom {
            return Err(Error::NonCanonicalModulus);
        }
        Ok(field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKindTag {
    Bilinear,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDescriptor {
    pub field: FieldDescriptor,
    pub n: usize,
    pub kind: FormKindTag,
    /// Gram matrix (bilinear) or upper-triangular coefficients (quadratic).
    pub matrix: Vec<Vec<u32>>,
}

fn matrix_from_rows(field: Field, n: usize, rows: &[Vec<u32>]) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix is not {n}x{n}")));
    }
    Matrix::from_index_rows(field, rows)
}

impl FormDescriptor {
    pub fn of(form: &Form) -> Self {
        let (kind, m) = match form {
            Form::Bilinear(b) => (FormKindTag::Bilinear, b.gram()),
            Form::Quadratic(q) => (FormKindTag::Quadratic, q.upper()),
        };
        FormDescriptor { field: FieldDescriptor::of(form.field()), n: form.dim(), kind, matrix: m.to_index_rows() }
    }

    /// A quadratic form may be given by any matrix `M`; it means `v^T M v`
    /// and is folded to upper-triangular storage.
    pub fn resolve(&self, allow_custom_modulus: bool) -> Result<Form> {
        let field = self.field.resolve(allow_custom_modulus)?;
        let m = matrix_from_rows(field, self.n, &self.matrix)?;
        Ok(match self.kind {
            FormKindTag::Bilinear => Form::Bilinear(BilinearForm::new(m)?),
            FormKindTag::Quadratic => Form::Quadratic(QuadraticForm::from_matrix(&m)?),
        })
    }
}

/// `{"form": {...}}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub form: FormDescriptor,
}

/// `{"form": {...}, "matrix": [[...]]}`: a candidate isometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementDescriptor {
    pub form: FormDescriptor,
    pub matrix: Vec<Vec<u32>>,
}

impl ElementDescriptor {
    pub fn resolve(&self, allow_custom_modulus: bool) -> Result<(Form, Matrix)> {
        let form = self.form.resolve(allow_custom_modulus)?;
        let m = matrix_from_rows(form.field(), form.dim(), &self.matrix)?;
        Ok((form, m))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClassJson {
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
    pub n: usize,
    #[serde(rename = "char")]
    pub char_parity: CharParity,
    pub witt: usize,
    pub disc: Option<SquareClass>,
    pub arf: Option<u8>,
}

impl From<&FormClass> for FormClassJson {
    fn from(c: &FormClass) -> Self {
        FormClassJson {
            type_tag: c.type_tag,
            n: c.dim,
            char_parity: c.char_parity,
            witt: c.witt_index,
            disc: c.disc_class,
            arf: c.arf_bit,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<i8>,
    pub dickson: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spinor: Option<SquareClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupJson {
    pub tag: String,
    pub order: u128,
    pub index: u128,
}

impl From<&SubgroupReport> for SubgroupJson {
    fn from(r: &SubgroupReport) -> Self {
        let tag = serde_json::to_value(r.tag).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        SubgroupJson { tag, order: r.order, index: r.index }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReportJson {
    pub kind: GroupKind,
    pub cell: String,
    #[serde(rename = "type")]
    pub type_tag: Option<TypeTag>,
    pub order: u128,
    pub subgroups: Vec<SubgroupJson>,
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let text = r#"{"field": {"p": 2, "k": 1}, "n": 2, "kind": "quadratic", "matrix": [[0, 1], [0, 0]]}"#;
        let d: FormDescriptor = parse_json(text).unwrap();
        let form = d.resolve(false).unwrap();
        let back = FormDescriptor::of(&form);
        assert_eq!(back.resolve(false).unwrap(), form);
        let json = serde_json::to_string(&back).unwrap();
        assert!(json.contains("\"modulus\""));
    }

    #[test]
    fn quadratic_input_is_folded() {
        let text = r#"{"field": {"p": 3, "k": 1}, "n": 2, "kind": "quadratic", "matrix": [[1, 1], [1, 1]]}"#;
        let form = parse_json::<FormDescriptor>(text).unwrap().resolve(false).unwrap();
        let Form::Quadratic(q) = form else { panic!() };
        assert_eq!(q.upper().to_index_rows(), vec![vec![1, 2], vec![0, 1]]);
    }

    #[test]
    fn custom_modulus_needs_opt_in() {
        // x^2 + x + 2 is irreducible over GF(3) but the canonical modulus is x^2 + 1
        let d = FieldDescriptor { p: 3, k: 2, modulus: Some(vec![2, 1, 1]) };
        assert_eq!(d.resolve(false).unwrap_err(), Error::NonCanonicalModulus);
        assert!(!d.resolve(true).unwrap().is_canonical());
        let canon = FieldDescriptor::of(make_field(3, 2).unwrap());
        assert!(canon.resolve(false).unwrap().is_canonical());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_json::<FormDescriptor>("{\"field\": {"), Err(Error::Parse(_))));
        let text = r#"{"field": {"p": 3, "k": 1}, "n": 3, "kind": "bilinear", "matrix": [[1, 0], [0, 1]]}"#;
        let d: FormDescriptor = parse_json(text).unwrap();
        assert!(matches!(d.resolve(false), Err(Error::Parse(_))));
        let text = r#"{"field": {"p": 4, "k": 1}, "n": 1, "kind": "bilinear", "matrix": [[1]]}"#;
        assert_eq!(parse_json::<FormDescriptor>(text).unwrap().resolve(false).unwrap_err(), Error::CompositeP(4));
    }

    #[test]
    fn class_json_shape() {
        let text = r#"{"field": {"p": 3, "k": 1}, "n": 2, "kind": "bilinear", "matrix": [[1, 0], [0, 1]]}"#;
        let form = parse_json::<FormDescriptor>(text).unwrap().resolve(false).unwrap();
        let c = crate::forms::classify(&form).unwrap();
        let v = serde_json::to_value(FormClassJson::from(&c)).unwrap();
        assert_eq!(v["type"], "minus");
        assert_eq!(v["witt"], 0);
        assert_eq!(v["disc"], "square");
        assert!(v["arf"].is_null());
    }
}
