// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Mod-k edge colorings of simple graphs.
//!
//! A mod-k coloring assigns colors to edges so that, in every color class,
//! each vertex touched by the class has degree `1 (mod k)`. This crate builds
//! such colorings with at most `177k − 93` colors:
//!
//! 1. [`divisible::extract_h`] peels off a subgraph `H` with all degrees
//!    `1 (mod k)`; it will get a single color.
//! 2. [`orientation`] orients the rest with bounded out-degree `d`, using the
//!    exact maximum average degree from [`density`].
//! 3. [`ordering::elimination_order`] orders the vertices so each has at most
//!    `d` earlier in-neighbors.
//! 4. [`coloring::color_with_orientation`] colors the rest with at most
//!    `7d + 2k − 3` colors.
//!
//! [`verification`] holds the validator and small exhaustive oracles.

pub mod coloring;
pub mod density;
pub mod divisible;
mod flow;
pub mod graph;
pub mod ordering;
pub mod orientation;
pub mod verification;

pub use coloring::{color_graph, ColorId, EdgeColoring, Mode, PipelineReport};
pub use graph::{EdgeId, Format, Graph, GraphError};
