//! Test support that ships with the library: the catalog of small named
//! categories, seeded random generators, and the brute-force oracle suites
//! behind the `check-equipment` command.

mod catalog;
mod gen;
mod oracles;

pub use catalog::Catalog;
pub use gen::{gen_category, gen_cospan, gen_extension_pair, gen_functor, gen_module, gen_module_pair, GenStyle};
pub use oracles::{
    composite_by_factorization, final_by_connectivity, final_by_exactness,
    has_right_adjoint_by_triangles, oracle_suite, right_extension_universal, run_all_suites,
    tensor_agrees_with_oracle, SuiteName, SuiteReport,
};
