// A small Monte Carlo monogamy table over Haar-random three-qubit states.
// Larger sample counts reproduce the published percentages; see the
// acceptance suite.

use qorrelate::measures::{BasisSearch, MeasureKind};
use qorrelate::monogamy::{percentage_table, DEFAULT_EPS};
use qorrelate::states::EnsembleSpec;
use qorrelate::Result;

pub fn run_example() -> Result<()> {
    let samples = std::env::var("SAMPLES").ok().and_then(|s| s.parse().ok()).unwrap_or(200);
    let spec = EnsembleSpec::haar(3, samples, 2024);
    let kinds = MeasureKind::parse_list("c,c2,e,n,ln,d-fwd,d-bwd,wd-fwd,wd-bwd")?;
    let rows = percentage_table(&spec, &kinds, 0, DEFAULT_EPS, &BasisSearch::default())?;
    println!("{} n={} samples={}", spec.family, spec.n, spec.samples);
    for row in rows {
        println!("  {:8} {:6.2}%  ({}/{})", row.kind.flag(), row.percentage, row.monogamous_count, row.total);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
