//! The catalogue of spaces: parsing, generation and analysis.

pub mod expected;
pub mod families;
pub mod model;
pub mod report;
pub mod som;
pub mod spec;
pub mod two_summand;

pub use families::build;
pub use model::{Constants, KillingComponent, ParametricConstants, RhoRoutes, SomInfo, SpaceModel};
pub use spec::{FactorClass, NamedSpace, SpaceSpec, SymSpaceId};
pub use two_summand::{Dichotomy, KillingRole, TwoSummandCurve, TwoSummandOutcome};
pub use expected::{
    all_expected_rows, compare_row, expected_table, regenerate_table, ExpectedKind, ExpectedRow, Field, FieldCheck,
    FieldStatus, RowComparison, RowStatus, TableId,
};
pub use report::{analyze, analyze_bare, analyze_model, Report, VerdictReport, VerdictSource};
