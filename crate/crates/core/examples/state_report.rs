// Monogamy scores of named states, the tangle, and the zero-tangle discord
// bound `δ_D← ≤ Σ_j S(ρ_{1|j})`.

use qorrelate::measures::{BasisSearch, MeasureKind};
use qorrelate::monogamy::{discord_bound, monogamy_scores};
use qorrelate::states::{dicke_state, ghz_state, w_state, PureState};
use qorrelate::Result;

fn report(label: &str, psi: &PureState) -> Result<()> {
    let search = BasisSearch::default();
    println!("{label}");
    for rec in monogamy_scores(psi, &MeasureKind::all(), 0, &search)? {
        println!("  {:8} cut {:.5}  score {:+.5}", rec.kind.flag(), rec.cut_value, rec.score);
    }
    let b = discord_bound(psi, 0, &search)?;
    println!(
        "  tangle {:+.2e}  d-bwd score {:+.5}  bound {:+.5}  holds {:?}",
        b.tangle,
        b.score,
        b.bound,
        b.bound_holds()
    );
    Ok(())
}

pub fn run_example() -> Result<()> {
    report("GHZ_3", &ghz_state(3)?)?;
    report("W_3", &w_state(3)?)?;
    report("W_4^2", &dicke_state(4, 2)?)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
