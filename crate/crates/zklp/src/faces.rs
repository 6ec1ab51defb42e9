//! Icosahedron face data, loaded from the checked-in table extracted from
//! the public H3 reference source, plus the derived per-face trigonometric
//! constants the trig-free circuit folds in at build time.

use std::sync::OnceLock;

pub const NUM_FACES: usize = 20;
pub const MAX_RES: u8 = 15;

/// sin(60 degrees) as used by the hex-grid axis decomposition.
pub const SIN60: f64 = 0.8660254037844386467637231707529361834714;
pub const TWO_PI: f64 = 6.28318530717958647692528676655900576839433;
/// Angular cutoff below which a point counts as a face center.
pub const EPSILON: f64 = 0.0000000000000001;

#[derive(Clone, Copy, Debug)]
pub struct Face {
    pub lat: f64,
    pub lng: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Azimuth from the face center to the Class II i-axis.
    pub az_i: f64,
}

#[derive(Clone, Debug)]
pub struct FaceData {
    pub faces: [Face; NUM_FACES],
    /// Scaling factor from res-0 hexagonal unit length to gnomonic unit
    /// length (c_G).
    pub res0_u_gnomonic: f64,
    pub sqrt7: f64,
    /// Class III axes rotation, arcsin(sqrt(3/28)).
    pub ap7_rot: f64,
    // derived trig constants, one per face
    pub sin_lat: [f64; NUM_FACES],
    pub cos_lat: [f64; NUM_FACES],
    pub sin_lng: [f64; NUM_FACES],
    pub cos_lng: [f64; NUM_FACES],
    pub sin_az: [f64; NUM_FACES],
    pub cos_az: [f64; NUM_FACES],
}

const RAW: &str = include_str!("../data/h3_faces.txt");

fn parse() -> FaceData {
    let mut lines = RAW.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().expect("empty face table");
    assert_eq!(header.trim(), "zklp-faces v1", "unsupported face table version");

    let mut faces = [Face {
        lat: 0.0,
        lng: 0.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
        az_i: 0.0,
    }; NUM_FACES];
    let mut res0 = None;
    let mut sqrt7 = None;
    let mut ap7 = None;
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "res0_u_gnomonic" => res0 = Some(toks[1].parse().unwrap()),
            "sqrt7" => sqrt7 = Some(toks[1].parse().unwrap()),
            "ap7_rot" => ap7 = Some(toks[1].parse().unwrap()),
            idx => {
                let f: usize = idx.parse().expect("face index");
                assert_eq!(toks.len(), 7, "face row needs 7 fields");
                faces[f] = Face {
                    lat: toks[1].parse().unwrap(),
                    lng: toks[2].parse().unwrap(),
                    x: toks[3].parse().unwrap(),
                    y: toks[4].parse().unwrap(),
                    z: toks[5].parse().unwrap(),
                    az_i: toks[6].parse().unwrap(),
                };
            }
        }
    }

    let mut data = FaceData {
        faces,
        res0_u_gnomonic: res0.expect("res0_u_gnomonic"),
        sqrt7: sqrt7.expect("sqrt7"),
        ap7_rot: ap7.expect("ap7_rot"),
        sin_lat: [0.0; NUM_FACES],
        cos_lat: [0.0; NUM_FACES],
        sin_lng: [0.0; NUM_FACES],
        cos_lng: [0.0; NUM_FACES],
        sin_az: [0.0; NUM_FACES],
        cos_az: [0.0; NUM_FACES],
    };
    for f in 0..NUM_FACES {
        data.sin_lat[f] = data.faces[f].lat.sin();
        data.cos_lat[f] = data.faces[f].lat.cos();
        data.sin_lng[f] = data.faces[f].lng.sin();
        data.cos_lng[f] = data.faces[f].lng.cos();
        data.sin_az[f] = data.faces[f].az_i.sin();
        data.cos_az[f] = data.faces[f].az_i.cos();
    }
    data
}

pub fn face_data() -> &'static FaceData {
    static DATA: OnceLock<FaceData> = OnceLock::new();
    DATA.get_or_init(parse)
}

pub fn is_class_iii(res: u8) -> bool {
    res % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_centers_are_unit_vectors() {
        let d = face_data();
        for f in &d.faces {
            let n = f.x * f.x + f.y * f.y + f.z * f.z;
            assert!((n - 1.0).abs() < 1e-12, "norm {n}");
        }
    }

    #[test]
    fn geo_and_cartesian_centers_agree() {
        let d = face_data();
        for f in &d.faces {
            assert!((f.lat.sin() - f.z).abs() < 1e-12);
            assert!((f.lat.cos() * f.lng.cos() - f.x).abs() < 1e-12);
            assert!((f.lat.cos() * f.lng.sin() - f.y).abs() < 1e-12);
        }
    }

    #[test]
    fn scalars_match_their_definitions() {
        let d = face_data();
        assert!((d.sqrt7 - 7.0f64.sqrt()).abs() < 1e-15);
        assert!((d.ap7_rot - (3.0f64 / 28.0).sqrt().asin()).abs() < 1e-15);
        // c_G is the reference's own constant, close to but not exactly
        // (3 - sqrt 5)/2
        assert!((d.res0_u_gnomonic - 0.381966011250105).abs() < 1e-12);
    }
}
