//! Exact voting-power analysis for multicameral legislatures.
//!
//! Legislatures are modelled as simple games. Critical numbers (how many
//! coalitions of each size a member swings) are computed in closed form from
//! products of binomial coefficients, checked against brute-force coalition
//! enumeration, and fed into semivalue power indices such as Banzhaf and
//! Shapley-Shubik. All arithmetic is exact.
//!
//! - [`exact_comb`]: binomials, the `f`/`g` ratios and certified product comparisons.
//! - [`coalition`]: per-size counting of template coalition families.
//! - [`oracle`]: labeled simple games with exhaustive enumeration.
//! - [`legislature`]: closed forms and comparisons for chamber members.
//! - [`us_model`]: president, vice president, senate and house with a veto override.
//! - [`semivalues`]: weighting vectors, index values and weak desirability.

pub mod coalition;
pub mod exact_comb;
pub mod legislature;
pub mod oracle;
pub mod semivalues;
pub mod us_model;

pub use coalition::{
    sum_counts, template_counts, u_count, u_vector, CoalitionTemplate, CountVector, PoolConstraint,
};
pub use exact_comb::{binomial, House, Natural, Ratio};
pub use legislature::{ChamberSpec, ComparisonVerdict, Dominance, MulticamSpec, Side};
pub use oracle::{Coalition, SimpleGame};
pub use semivalues::{Relation, WeightingVector};
pub use us_model::{PlayerClass, UsSpec};
