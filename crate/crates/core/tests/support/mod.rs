pub mod equivalence;
pub mod oracles;
