//! Recoil classes of finite Coxeter groups and the covering graphs that
//! explain why products of recoil classes are sums of recoil classes.

pub mod algebra;
pub mod braid;
pub mod covering;
pub mod error;
pub mod generators;
pub mod monodromy;
pub mod recoil;
pub mod spec;
pub mod sweep;
pub mod system;
mod union_find;

pub use algebra::{
    convolution_oracle, full_table, multiply, product_expand, structure_constant, x_from_y,
    y_from_x, AlgebraElement, Basis, StructureTable, TableRow,
};
pub use covering::{
    build_fibered_graph, cycle_rank, unique_lift_edge, verify_covering, CoverSummary,
    CoveringInstance, CoveringReport, CoveringStatus, Lift, MultiplicityPartition, Side,
};
pub use error::{Error, Result};
pub use generators::GeneratorSet;
pub use monodromy::{
    lift_path, loop_action, monodromy_report, relation_loops, FiberAction, Loop, LoopKind,
    MonodromyReport,
};
pub use recoil::{RecoilAtlas, RecoilClass};
pub use spec::{CoxeterKind, CoxeterSpec, MatrixFile};
pub use system::{CoxeterSystem, ElemId, Element, Form};
