// Closed-form discord score, numerical work-deficit score and tangle of
// Dicke states `|W_n^r⟩`, without building `2^n` amplitudes.

use qorrelate::dicke::{dicke_discord_score, dicke_tangle, dicke_workdeficit_score};
use qorrelate::measures::Direction;
use qorrelate::Result;

pub fn run_example() -> Result<()> {
    println!(" n  r   discord   wd-fwd    wd-bwd    tangle");
    for n in [3, 8, 40] {
        for r in 1..=n / 2 {
            println!(
                "{n:2} {r:2} {:+.5} {:+.5} {:+.5} {:+.5}",
                dicke_discord_score(n, r)?,
                dicke_workdeficit_score(n, r, Direction::OnFirst)?,
                dicke_workdeficit_score(n, r, Direction::OnSecond)?,
                dicke_tangle(n, r)?
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
