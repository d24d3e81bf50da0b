//! Crossing numbers of graphs and their cones.

pub mod book;
pub mod bounds;
pub mod budget;
pub mod cert;
pub mod constructions;
pub mod experiments;
pub mod formats;
pub mod graph;
pub mod heuristic;
pub mod iso;
pub mod maxcut;
pub mod pages;
pub mod planarity;
pub mod simple;
pub mod solver;
