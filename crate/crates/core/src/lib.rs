pub mod cli;
pub mod fuzzy;
pub mod io;
pub mod milp;
pub mod model;
pub mod scalar;
pub mod scalarize;

pub type Trapezoid = fuzzy::TrapezoidalFuzzy<f64>;
pub type Lp = milp::LinearProgram<f64>;
