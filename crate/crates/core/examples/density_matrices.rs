// Partial traces, partial transposes and entropies of small density matrices.

use qorrelate::linalg::{
    hermitian_eigvals, partial_trace_pure, partial_transpose, von_neumann_entropy,
};
use qorrelate::states::{ghz_state, w_state};
use qorrelate::Result;

pub fn run_example() -> Result<()> {
    let w = w_state(3)?;
    let single = partial_trace_pure(&w, &[0])?;
    let pair = partial_trace_pure(&w, &[0, 1])?;
    println!("W3: S(rho_0) = {:.6}", von_neumann_entropy(&single));
    println!("W3: S(rho_01) = {:.6}", von_neumann_entropy(&pair));

    let pt = partial_transpose(&pair, &[0])?;
    let spectrum = hermitian_eigvals(&pt)?;
    println!("W3: spectrum of rho_01^T0 = {spectrum:.6?}");

    let ghz = ghz_state(4)?;
    let pair = partial_trace_pure(&ghz, &[0, 3])?;
    println!("GHZ4: S(rho_03) = {:.6}", von_neumann_entropy(&pair));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
