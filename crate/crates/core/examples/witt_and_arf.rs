//! Witt decomposition, diagonalization and the Arf invariant.

use orthofq::forms::{arf_invariant, diagonalize, find_isotropic_vector, standard_form, witt_decomposition, Form, TypeTag};
use orthofq::gf::make_field;

fn main() -> orthofq::Result<()> {
    let f5 = make_field(5, 1)?;
    let plus = standard_form(f5, 4, TypeTag::Plus)?;
    println!("first isotropic vector of O+(4,5) form: {:?}", find_isotropic_vector(&plus).map(|v| v.indices().to_vec()));
    let d = diagonalize(&plus.bilinear())?;
    println!("diagonal entries {:?}", d.entries);

    let f4 = make_field(2, 2)?;
    for tag in [TypeTag::Plus, TypeTag::Minus] {
        let Form::Quadratic(q) = standard_form(f4, 6, tag)? else { unreachable!() };
        let w = witt_decomposition(&q)?;
        println!("{tag:?} over GF(4), n = 6: Witt index {}, anisotropic part {}, Arf {}", w.witt_index(), w.anisotropic.len(), arf_invariant(&q)?);
        for (v, u) in &w.pairs {
            println!("  hyperbolic pair {:?} / {:?}", v.indices(), u.indices());
        }
    }
    Ok(())
}
