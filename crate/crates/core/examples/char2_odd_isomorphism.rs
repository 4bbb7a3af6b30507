//! In characteristic 2 and odd dimension, O(V, Q) acts faithfully on
//! V / rad(f_Q), which carries a symplectic form.

use orthofq::forms::{standard_form, Form, TypeTag};
use orthofq::gf::make_field;
use orthofq::groups::char2_odd_isomorphism;

fn main() -> orthofq::Result<()> {
    for (k, n) in [(1u32, 3usize), (2, 3), (1, 5)] {
        let f = make_field(2, k)?;
        let Form::Quadratic(q) = standard_form(f, n, TypeTag::OddDim)? else { unreachable!() };
        let iso = char2_odd_isomorphism(&q)?;
        let cert = iso.certify(1_000_000)?;
        println!(
            "q = {}, n = {n}: radical {:?}, |O| = {}, |Sp({})| = {}, isomorphism {}",
            f.order(),
            iso.radical().indices(),
            cert.source_order,
            n - 1,
            cert.target_order,
            cert.passed()
        );
    }
    Ok(())
}
