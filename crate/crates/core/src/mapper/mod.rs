//! Evaluation of the map on the closed disk by integrating along radii,
//! assembly of the four boundary arcs, and SVG/JSON/CSV output.

mod ray;
mod render;
mod scene;

pub use ray::{integrate_ray, map_point, RaySolution, BOUNDARY_OFFSET, MIN_STEPS};
pub use render::{render, RenderFormat};
pub use scene::{
    boundary_polyline, boundary_polyline_with, self_intersections, vertex_angles, Edge,
    Normalization, RenderScene, SceneMetadata,
};
