use indexmap::IndexSet;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{closure, ElementSet};
use super::{GroupHandle, GroupKind, Isometry};
use crate::error::{Error, Result};
use crate::gf::SquareClass;
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SubgroupTag {
    SO,
    #[serde(rename = "Omega")]
    Omega,
    #[serde(rename = "commutator")]
    Commutator,
    PO,
    PSO,
    #[serde(rename = "POmega")]
    POmega,
}

/// Order of a subgroup (or quotient) and its index in `parent_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupReport {
    pub tag: SubgroupTag,
    pub order: u128,
    pub parent_order: u128,
    pub index: u128,
}

impl SubgroupReport {
    fn new(tag: SubgroupTag, order: u128, parent_order: u128) -> Self {
        SubgroupReport { tag, order, parent_order, index: parent_order / order }
    }
}

fn require_orthogonal(g: &GroupHandle) -> Result<()> {
    match g.kind() {
        GroupKind::Orthogonal => Ok(()),
        GroupKind::Symplectic => Err(Error::UnsupportedCombination("kernel subgroups of a symplectic group".into())),
    }
}

/// `SO` and `Omega` as element sets of the enumerated group: kernels of
/// `det` and of the spinor norm in odd characteristic, both the kernel of
/// the Dickson invariant in characteristic 2.
pub(crate) fn special_and_omega(g: &GroupHandle) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    require_orthogonal(g)?;
    let all = g.elements()?;
    let form = g.form();
    if g.field().is_char2() {
        let ker: Vec<Matrix> = all.iter().filter(|m| super::dickson_invariant(m) == 0).cloned().collect();
        return Ok((ker.clone(), ker));
    }
    let so: Vec<Matrix> = all.iter().filter(|m| super::determinant_sign(m) == Ok(1)).cloned().collect();
    let flags: Vec<Result<bool>> = so
        .par_iter()
        .map(|m| Ok(super::spinor_norm(&Isometry::trusted(form.clone(), m.clone()))? == SquareClass::Square))
        .collect();
    let mut omega = Vec::new();
    for (m, f) in so.iter().zip(flags) {
        if f? {
            omega.push(m.clone());
        }
    }
    Ok((so, omega))
}

/// `SO`, `Omega` and, in odd characteristic, the projective orders
/// `|PO|`, `|PSO|`, `|POmega|` (quotients by `{+-I}` intersected with each).
pub fn kernel_subgroups(g: &GroupHandle) -> Result<Vec<SubgroupReport>> {
    let (so, omega) = special_and_omega(g)?;
    let o = g.elements()?.len() as u128;
    let mut out = vec![
        SubgroupReport::new(SubgroupTag::SO, so.len() as u128, o),
        SubgroupReport::new(SubgroupTag::Omega, omega.len() as u128, so.len() as u128),
    ];
    if !g.field().is_char2() {
        let minus = Matrix::identity(g.field(), g.dim()).scalar_mul(g.field().neg(1));
        let centre = |h: &[Matrix]| if h.contains(&minus) { 2 } else { 1 };
        out.push(SubgroupReport::new(SubgroupTag::PO, o / 2, o));
        out.push(SubgroupReport::new(SubgroupTag::PSO, so.len() as u128 / centre(&so), so.len() as u128));
        out.push(SubgroupReport::new(SubgroupTag::POmega, omega.len() as u128 / centre(&omega), omega.len() as u128));
    }
    Ok(out)
}

/// The commutator subgroup and how it compares with `Omega`.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub report: SubgroupReport,
    pub omega_order: u128,
    pub equals_omega: bool,
    #[serde(skip)]
    pub elements: ElementSet,
}

/// Closure of all commutators `g^-1 h^-1 g h`, compared as a set with `Omega`.
pub fn commutator_subgroup(g: &GroupHandle) -> Result<CommutatorReport> {
    let (_, omega) = special_and_omega(g)?;
    let all: Vec<&Matrix> = g.elements()?.iter().collect();
    let inverses: Vec<Matrix> = all.iter().map(|m| m.inverse().expect("invertible")).collect();
    let gens: IndexSet<Matrix> = (0..all.len())
        .into_par_iter()
        .map(|i| {
            let mut local = IndexSet::new();
            for j in 0..all.len() {
                local.insert(inverses[i].mul_unchecked(&inverses[j]).mul_unchecked(all[i]).mul_unchecked(all[j]));
            }
            local
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let id = Matrix::identity(g.field(), g.dim());
    let gen_refs: Vec<&Matrix> = gens.iter().filter(|m| **m != id).collect();
    let elements: ElementSet = closure(id, &gen_refs, g.budget())?.into_iter().collect();
    let omega_set: ElementSet = omega.into_iter().collect();
    let o = all.len() as u128;
    Ok(CommutatorReport {
        report: SubgroupReport::new(SubgroupTag::Commutator, elements.len() as u128, o),
        omega_order: omega_set.len() as u128,
        equals_omega: elements.set_eq(&omega_set),
        elements,
    })
}
