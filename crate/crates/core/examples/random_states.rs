// Seeded random ensembles: every sample is a pure function of the master
// seed and its index, so any sample can be regenerated on its own.

use qorrelate::states::{dicke_state, EnsembleSpec};
use qorrelate::Result;

pub fn run_example() -> Result<()> {
    let specs = [
        EnsembleSpec::haar(3, 4, 42),
        EnsembleSpec::gen_dicke(4, 2, 4, 42),
        EnsembleSpec::symmetric(3, 4, 42),
    ];
    for spec in &specs {
        for i in 0..spec.samples {
            let psi = spec.sample(i)?;
            let a = psi.amplitudes();
            println!(
                "{} n={} #{i}: dim {}, |a_0|^2 = {:.4}, norm = {:.12}",
                spec.family,
                spec.n,
                psi.dim(),
                a[0].norm_sqr(),
                psi.norm()
            );
        }
    }
    let again = specs[0].sample(2)?;
    assert_eq!(again, specs[0].sample(2)?);

    let d = dicke_state(4, 2)?;
    let overlap = d.inner(&specs[1].sample(0)?).norm_sqr();
    println!("|<W_4^2|sample>|^2 = {overlap:.4}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
