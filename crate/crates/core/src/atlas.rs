//! Tables of orthogonal groups over one field: order, `SO` and `Omega`
//! orders, Witt index and the discriminant or Arf invariant of the
//! representative form, per dimension and type.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{classify, standard_form, TypeTag};
use crate::gf::{Field, SquareClass};
use crate::groups::{group_order, kernel_subgroups, GroupHandle, SubgroupTag};

/// Formula-covered rows are cross-checked by enumeration up to this order.
pub const CROSS_CHECK_LIMIT: u128 = 100_000;

/// CSV column order: p, k, n, type, order, so_order, omega_order,
/// witt_index, disc_or_arf, verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub p: u32,
    pub k: u32,
    pub n: usize,
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
    pub order: u128,
    pub so_order: u128,
    pub omega_order: u128,
    pub witt_index: usize,
    /// `square` / `nonsquare` in odd characteristic, `0` / `1` in
    /// characteristic 2 and even dimension, empty otherwise.
    pub disc_or_arf: String,
    /// Whether the orders come from (or were checked against) enumeration.
    pub verified: bool,
}

fn row_name(field: Field, n: usize, tag: TypeTag) -> String {
    format!("p={} k={} n={n} type={}", field.characteristic(), field.degree(), tag.as_str())
}

fn disc_or_arf(disc: Option<SquareClass>, arf: Option<u8>) -> String {
    match (disc, arf) {
        (Some(SquareClass::Square), _) => "square".into(),
        (Some(SquareClass::NonSquare), _) => "nonsquare".into(),
        (_, Some(bit)) => bit.to_string(),
        _ => String::new(),
    }
}

/// One row per dimension `2..=nmax` and type (`plus`/`minus` for even
/// dimension, `odd` for odd dimension).
///
/// Even rows take their order from the closed formula and are enumerated
/// when the order is at most [`CROSS_CHECK_LIMIT`] and the budget. Odd rows
/// must be enumerated; a row that does not fit the budget is an error naming
/// the row.
pub fn build_atlas(field: Field, nmax: usize, budget: u64) -> Result<Vec<AtlasRow>> {
    if nmax < 2 {
        return Err(Error::UnsupportedCombination(format!("nmax = {nmax} < 2")));
    }
    let mut rows = Vec::new();
    for n in 2..=nmax {
        let tags: &[TypeTag] = if n % 2 == 0 { &[TypeTag::Plus, TypeTag::Minus] } else { &[TypeTag::OddDim] };
        for &tag in tags {
            rows.push(atlas_row(field, n, tag, budget)?);
        }
    }
    Ok(rows)
}

pub fn atlas_row(field: Field, n: usize, tag: TypeTag, budget: u64) -> Result<AtlasRow> {
    let name = row_name(field, n, tag);
    let rename = |e: Error| match e {
        Error::BudgetExceeded { budget, .. } => Error::BudgetExceeded { what: format!("atlas row {name}"), budget },
        other => other,
    };
    let form = standard_form(field, n, tag)?;
    let class = classify(&form)?;
    let handle = GroupHandle::with_budget(form, budget)?;
    let formula = if n % 2 == 0 { Some(group_order(handle.kind(), Some(tag), n, field)?) } else { None };
    let enumerate = match formula {
        Some(o) => o <= CROSS_CHECK_LIMIT && o <= budget as u128,
        None => true,
    };
    let (order, so_order, omega_order, verified) = if enumerate {
        let counted = handle.elements().map_err(rename)?.len() as u128;
        let subs = kernel_subgroups(&handle).map_err(rename)?;
        let get = |t: SubgroupTag| subs.iter().find(|s| s.tag == t).map(|s| s.order).unwrap();
        let expected = match formula {
            Some(o) => Some(o),
            None => group_order(handle.kind(), Some(tag), n, field).ok(),
        };
        let verified = expected.is_none_or(|o| o == counted);
        (counted, get(SubgroupTag::SO), get(SubgroupTag::Omega), verified)
    } else {
        // index 2 for SO; Omega has index 2 in SO in odd characteristic and
        // coincides with SO in characteristic 2
        let o = formula.unwrap();
        let so = o / 2;
        let omega = if field.is_char2() { so } else { so / 2 };
        (o, so, omega, false)
    };
    Ok(AtlasRow {
        p: field.characteristic(),
        k: field.degree(),
        n,
        type_tag: tag,
        order,
        so_order,
        omega_order,
        witt_index: class.witt_index,
        disc_or_arf: disc_or_arf(class.disc_class, class.arf_bit),
        verified,
    })
}

pub fn to_csv(rows: &[AtlasRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json(rows: &[AtlasRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn gf3_up_to_two() {
        let rows = build_atlas(make_field(3, 1).unwrap(), 2, 1_000_000).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].type_tag, rows[0].order, rows[0].so_order, rows[0].omega_order), (TypeTag::Plus, 4, 2, 1));
        assert_eq!((rows[1].type_tag, rows[1].order, rows[1].so_order, rows[1].omega_order), (TypeTag::Minus, 8, 4, 2));
        assert!(rows.iter().all(|r| r.verified));
    }

    #[test]
    fn gf2_has_odd_row() {
        let rows = build_atlas(make_field(2, 1).unwrap(), 3, 1_000_000).unwrap();
        let odd = rows.iter().find(|r| r.n == 3).unwrap();
        assert_eq!((odd.type_tag, odd.order), (TypeTag::OddDim, 6));
        assert_eq!(odd.disc_or_arf, "");
        let csv = to_csv(&rows).unwrap();
        assert!(csv.starts_with("p,k,n,type,order,so_order,omega_order,witt_index,disc_or_arf,verified\n"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn errors() {
        let f = make_field(3, 1).unwrap();
        assert!(matches!(build_atlas(f, 1, 1000), Err(Error::UnsupportedCombination(_))));
        match build_atlas(f, 3, 40) {
            Err(Error::BudgetExceeded { what, .. }) => assert!(what.contains("n=3"), "{what}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn large_even_rows_are_formula_only() {
        let rows = build_atlas(make_field(3, 1).unwrap(), 4, 2000).unwrap();
        let plus4 = rows.iter().find(|r| r.n == 4 && r.type_tag == TypeTag::Plus).unwrap();
        assert_eq!(plus4.order, 1152);
        assert!(plus4.verified);
        let rows = build_atlas(make_field(3, 1).unwrap(), 4, 1000).unwrap();
        let plus4 = rows.iter().find(|r| r.n == 4 && r.type_tag == TypeTag::Plus).unwrap();
        assert!(!plus4.verified);
        assert_eq!((plus4.so_order, plus4.omega_order), (576, 288));
    }
}
