macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(density_matrices, "density_matrices.rs");
example!(random_states, "random_states.rs");
example!(two_qubit_measures, "two_qubit_measures.rs");
example!(state_report, "state_report.rs");
example!(percentage_table, "percentage_table.rs");
example!(dicke_scan, "dicke_scan.rs");
example!(scaling_fit, "scaling_fit.rs");
example!(command_line, "command_line.rs");

#[test]
fn density_matrices_runs() {
    density_matrices::run_example().expect("density_matrices example should run");
}

#[test]
fn random_states_runs() {
    random_states::run_example().expect("random_states example should run");
}

#[test]
fn two_qubit_measures_runs() {
    two_qubit_measures::run_example().expect("two_qubit_measures example should run");
}

#[test]
fn state_report_runs() {
    state_report::run_example().expect("state_report example should run");
}

#[test]
fn percentage_table_runs() {
    percentage_table::run_example().expect("percentage_table example should run");
}

#[test]
fn dicke_scan_runs() {
    dicke_scan::run_example().expect("dicke_scan example should run");
}

#[test]
fn scaling_fit_runs() {
    scaling_fit::run_example().expect("scaling_fit example should run");
}

#[test]
fn command_line_runs() {
    command_line::run_example().expect("command_line example should run");
}
