//! Run one verification suite and print its checks.

use orthofq::verify::{run_suite, Suite, VerifyConfig};

fn main() -> orthofq::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "cdk-exception".into());
    let report = run_suite(name.parse::<Suite>()?, &VerifyConfig::default())?;
    for c in &report.checks {
        println!("{:?} {}: {}", c.status, c.name, c.detail);
    }
    println!("passed: {}", report.passed);
    Ok(())
}
