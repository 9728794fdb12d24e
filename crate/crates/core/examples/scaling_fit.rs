// Fitting `p_n = p_c + n^(-α)` by least squares in log-log space.

use qorrelate::monogamy::scaling_fit;
use qorrelate::Result;

pub fn run_example() -> Result<()> {
    let synthetic: Vec<(f64, f64)> = (3..=6).map(|n| (n as f64, 0.3 + (n as f64).powf(-1.5))).collect();
    let fit = scaling_fit(&synthetic, 0.3)?;
    println!("synthetic: alpha {:.9} residual {:.1e}", fit.alpha, fit.residual);

    // Monogamous fractions of symmetric states under D->, n = 3..6.
    let symmetric = [(3.0, 0.9747), (4.0, 0.9837), (5.0, 0.8677), (6.0, 0.4971)];
    let fit = scaling_fit(&symmetric, 0.0)?;
    println!("symmetric d-fwd: alpha {:.4} residual {:.4}", fit.alpha, fit.residual);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
