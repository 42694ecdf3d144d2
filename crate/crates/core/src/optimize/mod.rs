//! Fractional independence and domination exponents, exhaustive searches
//! for homomorphism-count maximizers, a numeric search over limit
//! structures, and the cherry closed forms.

mod fractional;
mod janson;
mod limit;
mod search;
mod two_star;

pub use fractional::{
    alpha_star, domination_exponent, independence_number, verify_domination, DominationReport,
    FracIndepResult,
};
pub use janson::{
    janson_bound, janson_ratio_report, three_part_guarantee, JansonReport, JansonRow,
};
pub use limit::{limit_search, LimitSearchOptions, EFFECTIVE_PART, PARTS_PREFERENCE};
pub use search::{
    graphs_up_to_isomorphism, search_all_max, search_threshold_max, SearchResult,
    MAX_ALL_SEARCH_N, MAX_THRESHOLD_SEARCH_N,
};
pub use two_star::{two_star_no_interior_max, TwoStarInstance, TwoStarMode, SCAN_POINTS};
