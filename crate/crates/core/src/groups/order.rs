use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::enumerate::{enumerate_group, DEFAULT_BUDGET};
use super::GroupKind;
use crate::error::{Error, Result};
use crate::forms::{standard_form, BilinearForm, Form, TypeTag};
use crate::gf::Field;
use crate::linalg::Matrix;

fn pow(q: u128, e: u32) -> u128 {
    q.saturating_pow(e)
}

fn prod(terms: impl Iterator<Item = u128>) -> u128 {
    terms.fold(1u128, |a, t| a.saturating_mul(t))
}

/// `|O^+(2m, q)|` and `|O^-(2m, q)|`:
/// `2 (q^m -+ 1) q^{m(m-1)} prod_{i=1}^{m-1} (q^{2m-2i} - 1)`.
pub fn order_formula(tag: TypeTag, n: usize, q: u64) -> Result<u128> {
    if n < 2 || n % 2 == 1 || tag == TypeTag::OddDim {
        return Err(Error::UnsupportedCombination(format!("no order formula for type {} in dimension {n}", tag.as_str())));
    }
    let m = (n / 2) as u32;
    let q = q as u128;
    let qm = pow(q, m);
    let first = if tag == TypeTag::Plus { qm - 1 } else { qm.saturating_add(1) };
    Ok(prod(
        [2, first, pow(q, m * (m - 1))]
            .into_iter()
            .chain((1..m).map(|i| pow(q, 2 * m - 2 * i) - 1)),
    ))
}

/// `q^{m^2} prod_{i=1}^m (q^{2i} - 1)`, the order of `Sp(2m, q)`.
fn symplectic_closed_form(m: u32, q: u128) -> u128 {
    prod(std::iter::once(pow(q, m * m)).chain((1..=m).map(|i| pow(q, 2 * i) - 1)))
}

/// Best-known order used to decide whether enumeration fits a budget.
/// Saturates at `u128::MAX`. Odd-dimensional values are the standard closed
/// forms and are not treated as results.
pub fn estimated_order(kind: GroupKind, tag: Option<TypeTag>, n: usize, field: Field) -> u128 {
    let q = field.order() as u128;
    let m = (n / 2) as u32;
    match (kind, tag) {
        (GroupKind::Symplectic, _) => symplectic_closed_form(m, q),
        (GroupKind::Orthogonal, Some(t @ (TypeTag::Plus | TypeTag::Minus))) => {
            order_formula(t, n, q as u64).unwrap_or(u128::MAX)
        }
        (GroupKind::Orthogonal, _) if field.is_char2() => symplectic_closed_form(m, q),
        (GroupKind::Orthogonal, _) => 2u128.saturating_mul(symplectic_closed_form(m, q)),
    }
}

fn standard_symplectic(field: Field, n: usize) -> Result<Form> {
    let mut g = Matrix::zeros(field, n, n);
    let h = n / 2;
    for i in 0..h {
        g.set(i, h + i, 1);
        g.set(h + i, i, field.neg(1));
    }
    Ok(Form::Bilinear(BilinearForm::new(g)?))
}

type OrderKey = (GroupKind, u32, u32, usize);

fn validated() -> &'static Mutex<HashMap<OrderKey, u128>> {
    static CACHE: OnceLock<Mutex<HashMap<OrderKey, u128>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Order of `O^+(n)`, `O^-(n)`, `O(n)` (odd `n`) or `Sp(n)` over `field`.
///
/// Even-dimensional orthogonal groups use [`order_formula`]. Odd-dimensional
/// orthogonal groups and symplectic groups are only answered when the group
/// can be enumerated within the default budget; the count found is checked
/// against the standard closed form and cached.
pub fn group_order(kind: GroupKind, tag: Option<TypeTag>, n: usize, field: Field) -> Result<u128> {
    if n < 2 {
        return Err(Error::UnsupportedCombination(format!("dimension {n} < 2")));
    }
    let key = match (kind, tag) {
        (GroupKind::Orthogonal, Some(t @ (TypeTag::Plus | TypeTag::Minus))) if n % 2 == 0 => {
            return order_formula(t, n, field.order() as u64);
        }
        (GroupKind::Orthogonal, Some(TypeTag::OddDim)) if n % 2 == 1 => (kind, field.characteristic(), field.degree(), n),
        (GroupKind::Symplectic, _) if n % 2 == 0 => (kind, field.characteristic(), field.degree(), n),
        _ => {
            return Err(Error::UnsupportedCombination(format!(
                "{kind:?} with type {:?} in dimension {n}",
                tag.map(|t| t.as_str())
            )))
        }
    };
    if let Some(&o) = validated().lock().unwrap().get(&key) {
        return Ok(o);
    }
    let closed = estimated_order(kind, tag, n, field);
    if closed > DEFAULT_BUDGET as u128 {
        return Err(Error::UnsupportedCombination(format!(
            "{kind:?}({n}) over GF({}) is beyond the enumeration oracle",
            field.order()
        )));
    }
    let form = match kind {
        GroupKind::Orthogonal => standard_form(field, n, TypeTag::OddDim)?,
        GroupKind::Symplectic => standard_symplectic(field, n)?,
    };
    let counted = enumerate_group(&form, DEFAULT_BUDGET)?.len() as u128;
    assert_eq!(counted, closed, "enumeration disagrees with the closed form for {kind:?}({n}, {})", field.order());
    validated().lock().unwrap().insert(key, counted);
    Ok(counted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn formula_examples() {
        assert_eq!(order_formula(TypeTag::Plus, 2, 3).unwrap(), 4);
        assert_eq!(order_formula(TypeTag::Minus, 2, 3).unwrap(), 8);
        assert_eq!(order_formula(TypeTag::Plus, 4, 2).unwrap(), 72);
        assert_eq!(order_formula(TypeTag::Minus, 4, 2).unwrap(), 120);
        assert_eq!(order_formula(TypeTag::Plus, 6, 2).unwrap(), 40320);
        assert_eq!(order_formula(TypeTag::Minus, 6, 2).unwrap(), 51840);
        assert!(order_formula(TypeTag::Plus, 3, 2).is_err());
    }

    #[test]
    fn odd_orders_come_from_enumeration() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(group_order(GroupKind::Orthogonal, Some(TypeTag::OddDim), 3, f3).unwrap(), 48);
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(group_order(GroupKind::Orthogonal, Some(TypeTag::OddDim), 3, f2).unwrap(), 6);
        assert_eq!(group_order(GroupKind::Symplectic, None, 2, f2).unwrap(), 6);
        assert_eq!(group_order(GroupKind::Symplectic, None, 4, f2).unwrap(), 720);
        let big = make_field(7, 1).unwrap();
        assert!(matches!(
            group_order(GroupKind::Orthogonal, Some(TypeTag::OddDim), 7, big),
            Err(Error::UnsupportedCombination(_))
        ));
    }

    #[test]
    fn inconsistent_requests() {
        let f = make_field(3, 1).unwrap();
        assert!(group_order(GroupKind::Orthogonal, Some(TypeTag::Plus), 3, f).is_err());
        assert!(group_order(GroupKind::Orthogonal, Some(TypeTag::OddDim), 4, f).is_err());
        assert!(group_order(GroupKind::Symplectic, None, 3, f).is_err());
        assert!(group_order(GroupKind::Orthogonal, Some(TypeTag::Plus), 1, f).is_err());
    }
}
