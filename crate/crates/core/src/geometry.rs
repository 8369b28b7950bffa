//! Vertex sets `X = {λ_1, …, λ_N}` of convex polygons, exact distances and
//! the vanishing polynomial `f(z) = (z − λ_1)⋯(z − λ_N)`.
//!
//! Distances are irrational in general, so every decision compares squared
//! moduli over ℚ and only reports `f64` values for display.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::gaussian::{rational_to_f64, GaussianRational};

/// Closed half-plane `{ v : normal · v ≤ offset }` (real dot product on ℚ²).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub normal: GaussianRational,
    pub offset: BigRational,
}

impl HalfPlane {
    pub fn contains(&self, z: &GaussianRational) -> bool {
        self.normal.dot(z) <= self.offset
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})·z <= {}",
            self.normal,
            crate::parse::format_rational(&self.offset)
        )
    }
}

/// Exact squared distance from a point to `X`, with the nearest vertex
/// (lowest index on ties).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distance {
    pub squared: BigRational,
    pub nearest: usize,
}

impl Distance {
    pub fn value(&self) -> f64 {
        libm::sqrt(rational_to_f64(&self.squared))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Decided exactly on squared quantities, not from `lhs`/`rhs`.
    pub holds: bool,
}

/// Both sides of the polynomial/distance inequalities at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyDistanceReport {
    pub f_abs: f64,
    pub distance: f64,
    /// `|f(z)| ≥ d(z,X)(δ/2)^{N−1}`; `None` unless `d(z,X) ≤ δ/2`.
    pub lower: Option<BoundCheck>,
    /// `|f(z)| ≤ d(z,X)(3R)^{N−1}`; `None` unless `|z| ≤ 2R`.
    pub upper: Option<BoundCheck>,
    /// `|f(z)| ≥ d(z,X)^N`, valid everywhere.
    pub power: BoundCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    vertices: Vec<GaussianRational>,
    delta_sq: BigRational,
    radius_sq: BigRational,
    /// Counter-clockwise boundary order starting at vertex 0, present when the
    /// vertices are in convex position.
    hull: core::result::Result<Vec<usize>, usize>,
}

impl VertexSet {
    pub fn new(vertices: Vec<GaussianRational>) -> Result<Self> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::TooFewVertices { count: n });
        }
        let mut delta_sq: Option<BigRational> = None;
        for i in 0..n {
            for j in i + 1..n {
                let d = (&vertices[i] - &vertices[j]).norm_sqr();
                if d.is_zero() {
                    return Err(Error::DuplicateVertex {
                        first: i,
                        second: j,
                    });
                }
                if delta_sq.as_ref().is_none_or(|m| d < *m) {
                    delta_sq = Some(d);
                }
            }
        }
        let radius_sq = vertices
            .iter()
            .map(GaussianRational::norm_sqr)
            .max()
            .unwrap();
        let hull = convex_order(&vertices);
        Ok(Self {
            vertices,
            delta_sq: delta_sq.unwrap(),
            radius_sq,
            hull,
        })
    }

    /// Like [`VertexSet::new`], additionally requiring convex position.
    pub fn polygon(vertices: Vec<GaussianRational>) -> Result<Self> {
        let x = Self::new(vertices)?;
        x.convex_order()?;
        Ok(x)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[GaussianRational] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> &GaussianRational {
        &self.vertices[k]
    }

    /// δ², the squared minimum gap between distinct vertices.
    pub fn delta_sq(&self) -> &BigRational {
        &self.delta_sq
    }

    pub fn delta(&self) -> f64 {
        libm::sqrt(rational_to_f64(&self.delta_sq))
    }

    /// R², the squared largest vertex modulus.
    pub fn radius_sq(&self) -> &BigRational {
        &self.radius_sq
    }

    pub fn radius(&self) -> f64 {
        libm::sqrt(rational_to_f64(&self.radius_sq))
    }

    pub fn is_convex(&self) -> bool {
        self.hull.is_ok()
    }

    /// Counter-clockwise boundary order beginning at vertex 0.
    pub fn convex_order(&self) -> Result<&[usize]> {
        match &self.hull {
            Ok(order) => Ok(order),
            Err(v) => Err(Error::NotConvexPosition { vertex: *v }),
        }
    }

    /// `true` for the two-point set `{0, 1}` in either order.
    pub fn is_unit_pair(&self) -> bool {
        let zero = GaussianRational::zero();
        let one = GaussianRational::one();
        self.len() == 2
            && ((self.vertices[0] == zero && self.vertices[1] == one)
                || (self.vertices[0] == one && self.vertices[1] == zero))
    }

    pub fn distance(&self, z: &GaussianRational) -> Distance {
        let mut best = Distance {
            squared: (z - &self.vertices[0]).norm_sqr(),
            nearest: 0,
        };
        for (k, v) in self.vertices.iter().enumerate().skip(1) {
            let d = (z - v).norm_sqr();
            if d < best.squared {
                best = Distance {
                    squared: d,
                    nearest: k,
                };
            }
        }
        best
    }

    pub fn vanishing_poly(&self, z: &GaussianRational) -> GaussianRational {
        self.vertices
            .iter()
            .fold(GaussianRational::one(), |acc, v| acc * (z - v))
    }

    pub fn poly_distance_bounds(&self, z: &GaussianRational) -> PolyDistanceReport {
        let n = self.len() as u32;
        let f_sq = self.vanishing_poly(z).norm_sqr();
        let dist = self.distance(z);
        let d_sq = &dist.squared;
        let f_abs = libm::sqrt(rational_to_f64(&f_sq));
        let d = dist.value();
        let four = BigRational::from_integer(4.into());
        let nine = BigRational::from_integer(9.into());

        let half_delta_sq = &self.delta_sq / &four;
        let lower = (*d_sq <= half_delta_sq).then(|| BoundCheck {
            lhs: f_abs,
            rhs: d * libm::pow(self.delta() / 2.0, (n - 1) as f64),
            holds: f_sq >= d_sq * Pow::pow(&half_delta_sq, n - 1),
        });
        let upper = (z.norm_sqr() <= &four * &self.radius_sq).then(|| BoundCheck {
            lhs: f_abs,
            rhs: d * libm::pow(3.0 * self.radius(), (n - 1) as f64),
            holds: f_sq <= d_sq * Pow::pow(&(&nine * &self.radius_sq), n - 1),
        });
        let power = BoundCheck {
            lhs: f_abs,
            rhs: libm::pow(d, n as f64),
            holds: f_sq >= Pow::pow(d_sq, n),
        };
        PolyDistanceReport {
            f_abs,
            distance: d,
            lower,
            upper,
            power,
        }
    }

    /// Exact membership in `conv X`; on failure returns a half-plane that
    /// contains the polygon but not `z`.
    pub fn contains(&self, z: &GaussianRational) -> Result<core::result::Result<(), HalfPlane>> {
        let order = self.convex_order()?;
        if self.len() == 2 {
            return Ok(segment_contains(&self.vertices[0], &self.vertices[1], z));
        }
        for i in 0..order.len() {
            let a = &self.vertices[order[i]];
            let b = &self.vertices[order[(i + 1) % order.len()]];
            let e = b - a;
            if e.cross(&(z - a)).is_negative() {
                // outward normal of a counter-clockwise edge
                let normal = GaussianRational::new(e.im.clone(), -&e.re);
                let offset = normal.dot(a);
                return Ok(Err(HalfPlane { normal, offset }));
            }
        }
        Ok(Ok(()))
    }

    pub fn to_float(&self) -> FloatVertexSet {
        FloatVertexSet::new(
            self.vertices
                .iter()
                .map(GaussianRational::to_complex64)
                .collect(),
        )
        .expect("distinct exact vertices stay distinct in f64 for any sane input")
    }
}

fn segment_contains(
    a: &GaussianRational,
    b: &GaussianRational,
    z: &GaussianRational,
) -> core::result::Result<(), HalfPlane> {
    let e = b - a;
    let c = e.cross(&(z - a));
    if !c.is_zero() {
        let left = GaussianRational::new(-&e.im, e.re.clone());
        let normal = if c.is_positive() { left } else { -left };
        let offset = normal.dot(a);
        return Err(HalfPlane { normal, offset });
    }
    let t = e.dot(&(z - a));
    if t.is_negative() {
        let normal = -&e;
        let offset = normal.dot(a);
        return Err(HalfPlane { normal, offset });
    }
    if t > e.norm_sqr() {
        let offset = e.dot(b);
        return Err(HalfPlane { normal: e, offset });
    }
    Ok(())
}

/// Counter-clockwise hull order starting at vertex 0, or the index of a vertex
/// that is not an extreme point.
fn convex_order(vertices: &[GaussianRational]) -> core::result::Result<Vec<usize>, usize> {
    let n = vertices.len();
    if n == 2 {
        return Ok(alloc::vec![0, 1]);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| {
        (&vertices[i].re, &vertices[i].im).cmp(&(&vertices[j].re, &vertices[j].im))
    });
    let turn = |o: usize, a: usize, b: usize| {
        (&vertices[a] - &vertices[o]).cross(&(&vertices[b] - &vertices[o]))
    };
    // Andrew's monotone chain; collinear points are dropped.
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for pass in 0..2 {
        let start = hull.len();
        let iter: alloc::boxed::Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            alloc::boxed::Box::new(idx.iter())
        } else {
            alloc::boxed::Box::new(idx.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && !turn(hull[hull.len() - 2], hull[hull.len() - 1], p).is_positive()
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < n {
        let missing = (0..n).find(|k| !hull.contains(k)).unwrap();
        return Err(missing);
    }
    let start = hull.iter().position(|&k| k == 0).unwrap();
    hull.rotate_left(start);
    Ok(hull)
}

/// Float counterpart of [`VertexSet`] for diagnostics on arbitrary (possibly
/// irrational) vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatVertexSet {
    vertices: Vec<Complex64>,
    delta: f64,
    radius: f64,
}

impl FloatVertexSet {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::TooFewVertices { count: n });
        }
        let mut delta = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                let d = (vertices[i] - vertices[j]).norm();
                if d == 0.0 {
                    return Err(Error::DuplicateVertex {
                        first: i,
                        second: j,
                    });
                }
                delta = delta.min(d);
            }
        }
        let radius = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Ok(Self {
            vertices,
            delta,
            radius,
        })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        self.vertices
            .iter()
            .map(|v| (z - v).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn vanishing_poly(&self, z: Complex64) -> Complex64 {
        self.vertices
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, v| acc * (z - v))
    }
}
