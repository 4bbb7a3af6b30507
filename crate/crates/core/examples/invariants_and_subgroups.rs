//! Determinant, Dickson invariant and spinor norm; the kernel subgroups and
//! the commutator subgroup.

use orthofq::forms::TypeTag;
use orthofq::gf::make_field;
use orthofq::groups::{commutator_subgroup, decompose_into_reflections, kernel_subgroups, GroupHandle, Isometry};

fn main() -> orthofq::Result<()> {
    let g = GroupHandle::standard(make_field(3, 1)?, 4, TypeTag::Minus, 1_000_000)?;
    for r in kernel_subgroups(&g)? {
        println!("{:?}: order {} (index {} in {})", r.tag, r.order, r.index, r.parent_order);
    }

    let elements = g.elements()?;
    for m in elements.iter().skip(17).step_by(211).take(4) {
        let iso = Isometry::new(g.form().clone(), m.clone())?;
        let refl = decompose_into_reflections(&iso)?;
        let spinor = iso.spinor().ok();
        println!("det {:?}, D {}, {} reflections, spinor {:?}", iso.det_sign(), iso.dickson(), refl.len(), spinor);
    }

    let h = GroupHandle::standard(make_field(2, 1)?, 4, TypeTag::Minus, 1_000_000)?;
    let c = commutator_subgroup(&h)?;
    println!("O-(4,2): [G,G] has order {}, Omega {}, equal {}", c.report.order, c.omega_order, c.equals_omega);
    Ok(())
}
