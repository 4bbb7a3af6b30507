//! Print the atlas of orthogonal groups over GF(3) up to dimension 4 as CSV.

use orthofq::atlas::{build_atlas, to_csv};
use orthofq::gf::make_field;

fn main() -> orthofq::Result<()> {
    let rows = build_atlas(make_field(3, 1)?, 4, 1_000_000)?;
    print!("{}", to_csv(&rows)?);
    Ok(())
}
