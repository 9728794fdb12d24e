// Every pair measure on a family of Werner-like states
// `p |Phi+><Phi+| + (1 - p) I/4`.

use qorrelate::linalg::{ComplexMatrix, DensityMatrix};
use qorrelate::measures::{
    concurrence_two_qubit, eof_from_concurrence, log_negativity, negativity, quantum_discord,
    work_deficit_one_way, Direction,
};
use qorrelate::states::PureState;
use qorrelate::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = PureState::new(vec![Complex64::new(s, 0.0), z, z, Complex64::new(s, 0.0)])?;
    let projector = bell.density()?.into_matrix();
    let mixed = ComplexMatrix::identity(4).scale(0.25);

    println!("p      C       E       N       E_N     D->     D<-     wd->    wd<-");
    for p in [0.0, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.0] {
        let m = projector.scale(p).add(&mixed.scale(1.0 - p));
        let rho = DensityMatrix::new(m, vec![0, 1])?;
        let c = concurrence_two_qubit(&rho)?;
        println!(
            "{p:.3}  {c:.4}  {:.4}  {:.4}  {:.4}  {:.4}  {:.4}  {:.4}  {:.4}",
            eof_from_concurrence(c)?,
            negativity(&rho, &[0])?,
            log_negativity(&rho, &[0])?,
            quantum_discord(&rho, Direction::OnFirst)?,
            quantum_discord(&rho, Direction::OnSecond)?,
            work_deficit_one_way(&rho, Direction::OnFirst)?,
            work_deficit_one_way(&rho, Direction::OnSecond)?,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
