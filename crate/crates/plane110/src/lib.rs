pub mod cli;
pub mod coloring;
pub mod configurations;
pub mod discharging;
pub mod generators;
pub mod graph_class;
pub mod plane_graph;
