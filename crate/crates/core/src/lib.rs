//! Power-budgeted mission scheduling.
//!
//! A discrete-time usage model for allocating a platform's power budget to
//! rated missions, a family of solvers over it (greedy, local search, genetic,
//! branch and bound, an anytime wrapper and a learned priority advisor), a
//! tick-based edge off-loading simulator, and versioned JSON scenario files.

pub mod io;
pub mod model;
pub mod sim;
pub mod solvers;
