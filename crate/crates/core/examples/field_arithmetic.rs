//! Arithmetic in GF(p^k): elements are addressed by their canonical index.

use orthofq::gf::make_field;

fn main() -> orthofq::Result<()> {
    let f = make_field(3, 2)?;
    println!("{f}: modulus (constant term first) {:?}", f.modulus());

    let a = f.element(4)?;
    let b = f.element(7)?;
    println!("a = {:?}, b = {:?}", a.coeffs(), b.coeffs());
    println!("a + b = {}, a * b = {}, a / b = {}", (a + b).index(), (a * b).index(), (a / b).index());
    println!("a^8 = {} (Fermat)", a.pow(8).index());

    for x in f.elements().take(5) {
        println!("  {:>2}: {:?}, sqrt {:?}", x.index(), x.square_class(), x.sqrt().map(|s| s.index()));
    }

    let g = make_field(2, 3)?;
    println!("{g}: lambda^2 + lambda = c");
    for c in g.elements() {
        let root = c.artin_schreier_solve()?.map(|r| r.index());
        println!("  c = {}: root {:?}, residue {}", c.index(), root, c.arf_residue()?);
    }
    Ok(())
}
