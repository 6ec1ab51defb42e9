//! The plain-arithmetic ground-truth pipeline: latitude/longitude to
//! (face, i, j, k) through real trigonometry and the gnomonic projection,
//! matching the public H3 reference implementation's geo-to-cell path, plus
//! the inverse used to place cell centers and boundary vertices.

use crate::faces::{face_data, is_class_iii, EPSILON};
use crate::geo::{
    azimuth, geo_az_distance, geo_to_vec3, haversine, pos_angle, square_dist, GeoPoint,
};
use crate::ijk::{hex2d_to_coord_ijk, ijk_to_hex2d, FaceIjk};
#[cfg(test)]
use crate::ijk::CoordIjk;

/// Face whose center is closest to the point, with the squared Euclidean
/// chord distance to it. Ties resolve to the lowest face index.
pub fn closest_face(g: &GeoPoint) -> (u8, f64) {
    let d = face_data();
    let v = geo_to_vec3(g);
    let mut face = 0u8;
    let mut sqd = 5.0f64;
    for (f, fc) in d.faces.iter().enumerate() {
        let c = crate::geo::Vec3 {
            x: fc.x,
            y: fc.y,
            z: fc.z,
        };
        let dist = square_dist(&c, &v);
        if dist < sqd {
            face = f as u8;
            sqd = dist;
        }
    }
    (face, sqd)
}

/// Projects a point onto its closest face plane in hex-grid coordinates at
/// the given resolution.
pub fn geo_to_hex2d(g: &GeoPoint, res: u8) -> (u8, f64, f64) {
    let d = face_data();
    let (face, sqd) = closest_face(g);
    let mut r = (1.0 - sqd / 2.0).acos();
    if r < EPSILON {
        return (face, 0.0, 0.0);
    }
    let mut theta = pos_angle(
        d.faces[face as usize].az_i
            - pos_angle(azimuth(
                &GeoPoint::new(d.faces[face as usize].lat, d.faces[face as usize].lng),
                g,
            )),
    );
    if is_class_iii(res) {
        theta = pos_angle(theta - d.ap7_rot);
    }
    r = r.tan();
    r /= d.res0_u_gnomonic;
    for _ in 0..res {
        r *= d.sqrt7;
    }
    (face, r * theta.cos(), r * theta.sin())
}

/// The ground-truth transform: geographic coordinates to the containing
/// cell's (face, i, j, k) at the given resolution.
pub fn latlng_to_ijk(g: &GeoPoint, res: u8) -> FaceIjk {
    let (face, x, y) = geo_to_hex2d(g, res);
    FaceIjk {
        face,
        coord: hex2d_to_coord_ijk(x, y),
    }
}

/// Inverse projection: a planar point on a face back to the sphere.
pub fn hex2d_to_geo(x: f64, y: f64, face: u8, res: u8) -> GeoPoint {
    let d = face_data();
    let fc = &d.faces[face as usize];
    let mut r = (x * x + y * y).sqrt();
    if r < EPSILON {
        return GeoPoint::new(fc.lat, fc.lng);
    }
    let mut theta = y.atan2(x);
    for _ in 0..res {
        r /= d.sqrt7;
    }
    r *= d.res0_u_gnomonic;
    r = r.atan();
    if is_class_iii(res) {
        theta = pos_angle(theta + d.ap7_rot);
    }
    theta = pos_angle(fc.az_i - theta);
    geo_az_distance(&GeoPoint::new(fc.lat, fc.lng), theta, r)
}

/// Geographic center of a cell.
pub fn cell_center(cell: &FaceIjk, res: u8) -> GeoPoint {
    let (x, y) = ijk_to_hex2d(&cell.coord);
    hex2d_to_geo(x, y, cell.face, res)
}

/// Boundary vertices of a cell, projected from its own face plane. Cells
/// that cross a face edge (including pentagons) get the gnomonic extension
/// of this face's plane rather than the neighboring face's projection.
pub fn cell_boundary(cell: &FaceIjk, res: u8) -> Vec<GeoPoint> {
    let (cx, cy) = ijk_to_hex2d(&cell.coord);
    let radius = 1.0 / 3.0f64.sqrt();
    (0..6)
        .map(|k| {
            let ang = (30.0 + 60.0 * k as f64).to_radians();
            hex2d_to_geo(cx + radius * ang.cos(), cy + radius * ang.sin(), cell.face, res)
        })
        .collect()
}

/// Center-to-boundary distance (angular radians): the minimum over the six
/// edge midpoints.
pub fn center_to_boundary_distance(cell: &FaceIjk, res: u8) -> f64 {
    let center = cell_center(cell, res);
    let (cx, cy) = ijk_to_hex2d(&cell.coord);
    let radius = 1.0 / 3.0f64.sqrt();
    let mut best = f64::INFINITY;
    for k in 0..6 {
        // midpoint of the edge between vertices k and k+1
        let a1 = (30.0 + 60.0 * k as f64).to_radians();
        let a2 = (30.0 + 60.0 * (k + 1) as f64).to_radians();
        let mx = cx + radius * (a1.cos() + a2.cos()) / 2.0;
        let my = cy + radius * (a1.sin() + a2.sin()) / 2.0;
        let mid = hex2d_to_geo(mx, my, cell.face, res);
        best = best.min(haversine(&center, &mid, 1.0));
    }
    best
}

/// Minimum great-circle distance from a point to a cell's boundary
/// vertices, in units of the given radius.
pub fn min_distance_to_hex(p: &GeoPoint, cell: &FaceIjk, res: u8, radius: f64) -> f64 {
    cell_boundary(cell, res)
        .iter()
        .map(|v| haversine(p, v, radius))
        .fold(f64::INFINITY, f64::min)
}
