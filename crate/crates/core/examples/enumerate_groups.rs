//! Enumerate small orthogonal and symplectic groups and compare with the
//! closed order formula.

use orthofq::forms::{standard_form, TypeTag};
use orthofq::gf::make_field;
use orthofq::groups::{enumerate_group, order_formula, GroupHandle};

fn main() -> orthofq::Result<()> {
    for (q, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let f = make_field(q, k)?;
        for n in [2, 4] {
            for tag in [TypeTag::Plus, TypeTag::Minus] {
                let form = standard_form(f, n, tag)?;
                let count = enumerate_group(&form, 1_000_000)?.len();
                let formula = order_formula(tag, n, f.order() as u64)?;
                println!("{tag:?}({n}, {}): enumerated {count}, formula {formula}", f.order());
            }
        }
    }
    let g = GroupHandle::standard(make_field(3, 1)?, 3, TypeTag::OddDim, 1_000_000)?;
    println!("O(3,3): {} elements, {} reflections", g.order()?, g.generators()?.len());
    Ok(())
}
