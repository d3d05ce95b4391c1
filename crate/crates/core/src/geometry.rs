//! Poisson line process roads, Cox users on them, and the spatial PPP baseline.
//!
//! A line is stored by the polar coordinates `(r, theta)` of the orthogonal
//! projection of the cell center onto it. Lines hitting the disk `B(0, R)`
//! correspond to points of a Poisson process on the strip
//! `[0, R] x (-pi, pi]`, so the line count in the disk is Poisson with mean
//! `2 pi lambda R`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{check_nonnegative, check_positive, Result};
use crate::streams::SeedTag;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    /// Distance from the cell center, km.
    pub r: f64,
    /// Angle of the foot point, radians in `(-pi, pi]`.
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlpRealization {
    pub lines: Vec<Line>,
    pub radius_km: f64,
    /// Road intensity, km^-1.
    pub lambda: f64,
    pub seed_tag: Option<SeedTag>,
}

impl PlpRealization {
    /// A realization with explicitly placed lines. Lines farther than
    /// `radius_km` from the center are dropped since they miss the disk.
    pub fn from_lines(lines: Vec<Line>, radius_km: f64, lambda: f64) -> Result<Self> {
        check_positive("radius_km", radius_km)?;
        check_nonnegative("lambda", lambda)?;
        for line in &lines {
            check_nonnegative("line.r", line.r)?;
        }
        let lines = lines.into_iter().filter(|l| l.r <= radius_km).collect();
        Ok(PlpRealization {
            lines,
            radius_km,
            lambda,
            seed_tag: None,
        })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Shifts every angle by `offset`, wrapping back into `(-pi, pi]`.
    pub fn rotated(&self, offset: f64) -> Self {
        let lines = self
            .lines
            .iter()
            .map(|l| Line {
                r: l.r,
                theta: wrap_angle(l.theta + offset),
            })
            .collect();
        PlpRealization {
            lines,
            ..self.clone()
        }
    }
}

fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t <= -PI {
        t += 2.0 * PI;
    }
    t
}

/// Distances (km) of sampled users from the cell center.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UserPositions {
    pub distances_km: Vec<f64>,
}

impl UserPositions {
    pub fn len(&self) -> usize {
        self.distances_km.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances_km.is_empty()
    }
}

pub(crate) fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("finite positive Poisson mean");
    dist.sample(rng) as u64
}

/// Uniform angle on `(-pi, pi]`.
fn uniform_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    PI - 2.0 * PI * u
}

/// Samples the lines of a PLP with intensity `lambda` that hit `B(0, radius_km)`.
pub fn sample_plp<R: Rng + ?Sized>(
    lambda: f64,
    radius_km: f64,
    rng: &mut R,
) -> Result<PlpRealization> {
    check_nonnegative("lambda", lambda)?;
    check_positive("radius_km", radius_km)?;
    let count = poisson_count(2.0 * PI * lambda * radius_km, rng);
    let lines = (0..count)
        .map(|_| {
            let r = radius_km * rng.random::<f64>();
            Line {
                r,
                theta: uniform_angle(rng),
            }
        })
        .collect();
    Ok(PlpRealization {
        lines,
        radius_km,
        lambda,
        seed_tag: None,
    })
}

/// Samples a PLP from the substream identified by `tag`.
pub fn sample_plp_tagged(lambda: f64, radius_km: f64, tag: SeedTag) -> Result<PlpRealization> {
    let mut rng = tag.rng();
    let mut plp = sample_plp(lambda, radius_km, &mut rng)?;
    plp.seed_tag = Some(tag);
    Ok(plp)
}

/// Half length of the chord cut by a circle of radius `d` on a line at distance `r`.
pub fn chord_half_length(r: f64, d: f64) -> f64 {
    if d > r {
        (d * d - r * r).sqrt()
    } else {
        0.0
    }
}

/// Places linear-PPP users of intensity `delta` on every chord of the realization.
pub fn sample_users_on_realization<R: Rng + ?Sized>(
    plp: &PlpRealization,
    delta: f64,
    rng: &mut R,
) -> Result<UserPositions> {
    check_nonnegative("delta", delta)?;
    let mut distances_km = Vec::new();
    if delta == 0.0 {
        return Ok(UserPositions { distances_km });
    }
    for line in &plp.lines {
        let half = chord_half_length(line.r, plp.radius_km);
        let count = poisson_count(2.0 * delta * half, rng);
        for _ in 0..count {
            let t = half * (2.0 * rng.random::<f64>() - 1.0);
            // |t| <= half keeps the user inside the disk
            distances_km.push((line.r * line.r + t * t).sqrt().min(plp.radius_km));
        }
    }
    Ok(UserPositions { distances_km })
}

/// Homogeneous spatial PPP of `intensity` users per km^2 on `B(0, radius_km)`.
pub fn sample_spatial_ppp<R: Rng + ?Sized>(
    intensity: f64,
    radius_km: f64,
    rng: &mut R,
) -> Result<UserPositions> {
    check_nonnegative("intensity", intensity)?;
    check_positive("radius_km", radius_km)?;
    let count = poisson_count(intensity * PI * radius_km * radius_km, rng);
    let distances_km = (0..count)
        .map(|_| radius_km * rng.random::<f64>().sqrt())
        .collect();
    Ok(UserPositions { distances_km })
}

/// Mean user count `lambda * delta * pi * R^2` in the disk, the figure used
/// to turn a cell throughput into a road user density.
///
/// The sampled process is denser than this: `2 pi lambda R` lines carry
/// `pi^2 lambda R^2` km of road on average, so the Cox cell holds `pi` times
/// this many users.
pub fn mean_users_in_disk(lambda: f64, delta: f64, radius_km: f64) -> f64 {
    lambda * delta * PI * radius_km * radius_km
}
