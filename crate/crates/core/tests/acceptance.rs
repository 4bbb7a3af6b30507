//! Acceptance criteria, one line per criterion. Each criterion runs its
//! verification suite and, where a cheap independent oracle exists, checks
//! the suite's findings against it.

use std::process::ExitCode;
use std::time::Instant;

use orthofq::forms::{standard_form, Form, TypeTag};
use orthofq::gf::{make_field, Field};
use orthofq::groups::{is_isometry, order_formula};
use orthofq::linalg::{Matrix, Vector};
use orthofq::verify::{run_suite, Status, Suite, VerifyConfig};

fn field(q: u32) -> Field {
    match q {
        4 => make_field(2, 2),
        8 => make_field(2, 3),
        16 => make_field(2, 4),
        9 => make_field(3, 2),
        _ => make_field(q as u64, 1),
    }
    .unwrap()
}

/// Counts isometries by testing every matrix in GL(n, q).
fn brute_order(form: &Form) -> u128 {
    let f = form.field();
    let n = form.dim();
    let total = (f.order() as u64).pow((n * n) as u32);
    (0..total)
        .filter(|&r| {
            let flat = Vector::from_rank(f, n * n, r);
            let rows: Vec<&[u32]> = flat.indices().chunks(n).collect();
            is_isometry(&Matrix::from_index_rows(f, &rows).unwrap(), form).unwrap()
        })
        .count() as u128
}

fn frozen_orders() -> Result<(), String> {
    let table: [(usize, u64, TypeTag, u128); 13] = [
        (2, 2, TypeTag::Plus, 2),
        (2, 2, TypeTag::Minus, 6),
        (2, 3, TypeTag::Plus, 4),
        (2, 3, TypeTag::Minus, 8),
        (2, 4, TypeTag::Plus, 6),
        (2, 4, TypeTag::Minus, 10),
        (2, 5, TypeTag::Plus, 8),
        (2, 5, TypeTag::Minus, 12),
        (4, 2, TypeTag::Plus, 72),
        (4, 2, TypeTag::Minus, 120),
        (4, 3, TypeTag::Plus, 1152),
        (4, 3, TypeTag::Minus, 1440),
        (6, 2, TypeTag::Plus, 40320),
    ];
    for (n, q, tag, expected) in table {
        let got = order_formula(tag, n, q).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("formula gives {got} for {tag:?}({n},{q}), expected {expected}"));
        }
    }
    for q in [2, 3] {
        for tag in [TypeTag::Plus, TypeTag::Minus] {
            let form = standard_form(field(q), 2, tag).unwrap();
            let brute = brute_order(&form);
            let formula = order_formula(tag, 2, q as u64).unwrap();
            if brute != formula {
                return Err(format!("GL scan finds {brute} for {tag:?}(2,{q}), formula {formula}"));
            }
        }
    }
    Ok(())
}

fn isotropy_by_scan() -> Result<(), String> {
    for q in [3, 5, 7, 9, 11, 13] {
        let f = field(q);
        let alpha = (1..q).find(|&a| (1..q).all(|x| f.mul(x, x) != a)).unwrap();
        for (b, expect) in [(1, q % 4 == 1), (alpha, q % 4 == 3)] {
            let hit = (0..q).any(|x| (1..q).any(|y| f.add(f.mul(x, x), f.mul(b, f.mul(y, y))) == 0));
            if hit != expect {
                return Err(format!("q={q}: x^2 + {b} y^2 isotropic = {hit}"));
            }
        }
    }
    Ok(())
}

fn artin_schreier_by_scan() -> Result<(), String> {
    for q in [2, 4, 8, 16] {
        let f = field(q);
        let mut image: Vec<u32> = (0..q).map(|u| f.add(f.mul(u, u), u)).collect();
        image.sort_unstable();
        image.dedup();
        if image.len() as u32 != q / 2 {
            return Err(format!("GF({q}): |U| = {}", image.len()));
        }
        for c in 0..q {
            let residue = f.arf_residue(c).unwrap();
            if (residue == 0) != image.contains(&c) {
                return Err(format!("GF({q}): residue of {c} disagrees with the image scan"));
            }
        }
    }
    Ok(())
}

fn no_extra() -> Result<(), String> {
    Ok(())
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    type Oracle = fn() -> Result<(), String>;
    let criteria: [(u32, Suite, &str, Oracle); 11] = [
        (1, Suite::ClassificationTable, "classification table, q in {2,3,4,5}, n in {2,3,4}", no_extra),
        (2, Suite::Orders, "order formulas against enumeration", frozen_orders),
        (3, Suite::Classes, "two classes per (n, q) with witnesses", no_extra),
        (4, Suite::Isotropy, "isotropy of diag(1,1) and diag(1,alpha)", isotropy_by_scan),
        (5, Suite::Dickson, "Dickson invariant homomorphism, det = (-1)^D", no_extra),
        (6, Suite::Spinor, "spinor norm homomorphism and factorization invariance", no_extra),
        (7, Suite::Commutator, "commutator subgroup equals Omega", no_extra),
        (8, Suite::CdkException, "transvection generation and the (2, 4, plus) exception", no_extra),
        (9, Suite::Char2Odd, "O(n) = Sp(n-1) in characteristic 2, odd n", no_extra),
        (10, Suite::Arf, "Arf invariant", artin_schreier_by_scan),
        (11, Suite::Clifford, "Clifford algebra relations", no_extra),
    ];
    let mut failed = 0;
    for (id, suite, title, oracle) in criteria {
        let start = Instant::now();
        let verdict = match run_suite(suite, &cfg) {
            Ok(report) => {
                let bad: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| c.status == Status::Fail)
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                let notes: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| c.status == Status::Info)
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                for n in notes {
                    println!("    note [{suite}] {n}");
                }
                match (bad.is_empty(), oracle()) {
                    (true, Ok(())) => Ok(report.checks.len()),
                    (false, _) => Err(bad.join("; ")),
                    (true, Err(e)) => Err(format!("independent oracle: {e}")),
                }
            }
            Err(e) => Err(e.to_string()),
        };
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(n) => println!("criterion {id:>2} PASS [{suite}] {title} ({n} checks, {secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{suite}] {title} ({secs:.1}s): {why}");
            }
        }
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
