//! Spherical geometry in native doubles: great-circle distance, azimuths,
//! the direct geodesic step, and small vector helpers. These mirror the
//! reference implementation's formulas operation for operation.

use crate::faces::{EPSILON, TWO_PI};

/// Mean Earth radius in kilometers, used for reporting distances.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeoPoint {
    /// Latitude in radians, [-pi/2, pi/2].
    pub lat: f64,
    /// Longitude in radians, [-pi, pi].
    pub lng: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lng: f64) -> GeoPoint {
        GeoPoint { lat, lng }
    }

    pub fn from_degrees(lat_deg: f64, lng_deg: f64) -> GeoPoint {
        GeoPoint {
            lat: lat_deg.to_radians(),
            lng: lng_deg.to_radians(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.lat.is_finite()
            && self.lng.is_finite()
            && self.lat.abs() <= std::f64::consts::FRAC_PI_2
            && self.lng.abs() <= std::f64::consts::PI
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub fn geo_to_vec3(g: &GeoPoint) -> Vec3 {
    let r = g.lat.cos();
    Vec3 {
        x: g.lng.cos() * r,
        y: g.lng.sin() * r,
        z: g.lat.sin(),
    }
}

pub fn square_dist(a: &Vec3, b: &Vec3) -> f64 {
    (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z)
}

/// Normalizes an angle to [0, 2*pi).
pub fn pos_angle(rads: f64) -> f64 {
    let tmp = if rads < 0.0 { rads + TWO_PI } else { rads };
    if rads >= TWO_PI {
        tmp - TWO_PI
    } else {
        tmp
    }
}

pub fn constrain_lng(mut lng: f64) -> f64 {
    while lng > std::f64::consts::PI {
        lng -= 2.0 * std::f64::consts::PI;
    }
    while lng < -std::f64::consts::PI {
        lng += 2.0 * std::f64::consts::PI;
    }
    lng
}

/// Azimuth from p1 to p2 in radians.
pub fn azimuth(p1: &GeoPoint, p2: &GeoPoint) -> f64 {
    (p2.lat.cos() * (p2.lng - p1.lng).sin()).atan2(
        p1.lat.cos() * p2.lat.sin() - p1.lat.sin() * p2.lat.cos() * (p2.lng - p1.lng).cos(),
    )
}

/// The point at the given azimuth and angular distance from p1.
pub fn geo_az_distance(p1: &GeoPoint, az: f64, distance: f64) -> GeoPoint {
    if distance < EPSILON {
        return *p1;
    }
    let az = pos_angle(az);
    let mut out = GeoPoint::new(0.0, 0.0);
    if az < EPSILON || (az - std::f64::consts::PI).abs() < EPSILON {
        // due north or south
        out.lat = if az < EPSILON {
            p1.lat + distance
        } else {
            p1.lat - distance
        };
        if (out.lat - std::f64::consts::FRAC_PI_2).abs() < EPSILON {
            out.lat = std::f64::consts::FRAC_PI_2;
            out.lng = 0.0;
        } else if (out.lat + std::f64::consts::FRAC_PI_2).abs() < EPSILON {
            out.lat = -std::f64::consts::FRAC_PI_2;
            out.lng = 0.0;
        } else {
            out.lng = constrain_lng(p1.lng);
        }
    } else {
        let mut sinlat = p1.lat.sin() * distance.cos() + p1.lat.cos() * distance.sin() * az.cos();
        sinlat = sinlat.clamp(-1.0, 1.0);
        out.lat = sinlat.asin();
        if (out.lat - std::f64::consts::FRAC_PI_2).abs() < EPSILON {
            out.lat = std::f64::consts::FRAC_PI_2;
            out.lng = 0.0;
        } else if (out.lat + std::f64::consts::FRAC_PI_2).abs() < EPSILON {
            out.lat = -std::f64::consts::FRAC_PI_2;
            out.lng = 0.0;
        } else {
            let sinlng = (az.sin() * distance.sin() / out.lat.cos()).clamp(-1.0, 1.0);
            let coslng = ((distance.cos() - p1.lat.sin() * out.lat.sin())
                / p1.lat.cos()
                / out.lat.cos())
            .clamp(-1.0, 1.0);
            out.lng = constrain_lng(p1.lng + sinlng.atan2(coslng));
        }
    }
    out
}

/// Great-circle distance via the half-angle (haversine) form, in units of
/// the given radius.
pub fn haversine(p1: &GeoPoint, p2: &GeoPoint, radius: f64) -> f64 {
    let sin_lat = ((p2.lat - p1.lat) / 2.0).sin();
    let sin_lng = ((p2.lng - p1.lng) / 2.0).sin();
    let a = sin_lat * sin_lat + p1.lat.cos() * p2.lat.cos() * sin_lng * sin_lng;
    let c = 2.0 * a.sqrt().atan2((1.0 - a).sqrt());
    radius * c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haversine_basics() {
        let paris = GeoPoint::from_degrees(48.8566, 2.3522);
        let london = GeoPoint::from_degrees(51.5074, -0.1278);
        assert_eq!(haversine(&paris, &paris, EARTH_RADIUS_KM), 0.0);
        // symmetry is exact: the formula is symmetric up to sin(-x) = -sin(x)
        assert_eq!(
            haversine(&paris, &london, EARTH_RADIUS_KM),
            haversine(&london, &paris, EARTH_RADIUS_KM)
        );
        let d = haversine(&paris, &london, EARTH_RADIUS_KM);
        assert!((343.0..345.0).contains(&d), "paris-london {d} km");
    }

    #[test]
    fn haversine_antipodal() {
        // the half-angle form loses ~sqrt(ulp) accuracy at the antipode
        let a = GeoPoint::from_degrees(10.0, 20.0);
        let b = GeoPoint::from_degrees(-10.0, -160.0);
        let d = haversine(&a, &b, 1.0);
        assert!((d - std::f64::consts::PI).abs() < 1e-7);
    }

    #[test]
    fn az_distance_roundtrip() {
        let p = GeoPoint::from_degrees(37.0, -122.0);
        for az_deg in [0.0f64, 45.0, 123.0, 270.0] {
            let q = geo_az_distance(&p, az_deg.to_radians(), 0.01);
            let d = haversine(&p, &q, 1.0);
            assert!((d - 0.01).abs() < 1e-9, "az {az_deg}: {d}");
        }
    }
}
