//! Target sets `U ⊂ R^d` and their Gaussian masses.
//!
//! The Brownian motion has variance `2s` per coordinate at time `s`, so
//! `F(s) = P(B(s) + x0 ∈ U)` is available in closed form for the half-line,
//! the exterior of a sphere and an annulus. A frozen realization of a
//! Poisson field of balls has no closed form; its mass is estimated by
//! Monte Carlo with a uniform grid index over the ball centres.

use std::io::{BufRead, Write};

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::rng::{stream, Domain};
use crate::special::{erfc, gamma_q, unit_ball_volume};

/// Number of Gaussian draws behind a Monte Carlo mass estimate.
pub const MC_MASS_DRAWS: usize = 10_000;
const MC_MASS_SEED: u64 = 0x6d61_7373;

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    /// `U = (−∞, −L]` in one dimension.
    HalfLine { l: f64 },
    /// `U = {‖x‖ ≥ L}` in `R^d`.
    SphereExterior { l: f64, d: usize },
    /// `U = {L₋ ≤ ‖x‖ ≤ L₊}` in `R^d`.
    Annulus { l_minus: f64, l_plus: f64, d: usize },
    /// Union of closed balls of radius `radius` around `field.centers`.
    PoissonBalls(PoissonField),
}

/// A frozen realization of Poisson-distributed ball centres in the box
/// `[−box_halfwidth, box_halfwidth]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonField {
    pub d: usize,
    pub lambda: f64,
    pub radius: f64,
    pub box_halfwidth: f64,
    /// Centres, `d` coordinates each, stored row-major.
    centers: Vec<f64>,
    index: GridIndex,
}

/// Target geometry plus the starting point `x0 ∉ U`.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec {
    geometry: Geometry,
    x0: Vec<f64>,
}

fn norm_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn check_radius(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d >= 1 {
        Ok(())
    } else {
        Err(invalid("d", "dimension must be at least 1"))
    }
}

impl TargetSpec {
    /// Half-line `(−∞, −L]` with the searcher started at the origin.
    pub fn half_line(l: f64) -> Result<Self> {
        Self::half_line_from(l, 0.0)
    }

    /// Half-line `(−∞, −L]` with the searcher started at `x0 > −L`.
    pub fn half_line_from(l: f64, x0: f64) -> Result<Self> {
        check_radius("L", l)?;
        Self::new(Geometry::HalfLine { l }, vec![x0])
    }

    /// Exterior `{‖x‖ ≥ L}` of the centred sphere, searcher at the origin.
    pub fn sphere_exterior(l: f64, d: usize) -> Result<Self> {
        check_radius("L", l)?;
        check_dim(d)?;
        Self::new(Geometry::SphereExterior { l, d }, vec![0.0; d])
    }

    /// Centred annulus `{L₋ ≤ ‖x‖ ≤ L₊}`, searcher at the origin.
    pub fn annulus(l_minus: f64, l_plus: f64, d: usize) -> Result<Self> {
        check_radius("L_minus", l_minus)?;
        check_radius("L_plus", l_plus)?;
        check_dim(d)?;
        if l_plus <= l_minus {
            return Err(invalid(
                "L_plus",
                format!("must exceed L_minus ({l_plus} <= {l_minus})"),
            ));
        }
        Self::new(Geometry::Annulus { l_minus, l_plus, d }, vec![0.0; d])
    }

    /// Ball field target with the given starting point.
    pub fn poisson_balls(field: PoissonField, x0: Vec<f64>) -> Result<Self> {
        Self::new(Geometry::PoissonBalls(field), x0)
    }

    fn new(geometry: Geometry, x0: Vec<f64>) -> Result<Self> {
        let t = Self { geometry, x0 };
        if t.x0.len() != t.dim() {
            return Err(Error::DimensionMismatch {
                expected: t.dim(),
                got: t.x0.len(),
            });
        }
        if t.x0.iter().any(|v| !v.is_finite()) {
            return Err(invalid("x0", "coordinates must be finite"));
        }
        if t.contains(&t.x0)? {
            return Err(invalid("x0", "starting point lies inside the target"));
        }
        Ok(t)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn x0(&self) -> &[f64] {
        &self.x0
    }

    pub fn dim(&self) -> usize {
        match &self.geometry {
            Geometry::HalfLine { .. } => 1,
            Geometry::SphereExterior { d, .. } | Geometry::Annulus { d, .. } => *d,
            Geometry::PoissonBalls(f) => f.d,
        }
    }

    /// Membership test; the target is closed so its boundary counts as inside.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self.contains_unchecked(x))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, x: &[f64]) -> bool {
        match &self.geometry {
            Geometry::HalfLine { l } => x[0] <= -l,
            Geometry::SphereExterior { l, .. } => norm_sq(x) >= l * l,
            Geometry::Annulus { l_minus, l_plus, .. } => {
                let r2 = norm_sq(x);
                r2 >= l_minus * l_minus && r2 <= l_plus * l_plus
            }
            Geometry::PoissonBalls(f) => f.covers(x),
        }
    }

    /// Whether `x` lies inside the region where the target is represented
    /// faithfully. Only the finite box of a Poisson field can be left.
    #[inline]
    pub(crate) fn in_domain(&self, x: &[f64]) -> bool {
        match &self.geometry {
            Geometry::PoissonBalls(f) => x.iter().all(|v| v.abs() <= f.box_halfwidth),
            _ => true,
        }
    }

    /// `F(s) = P(B(s) + x0 ∈ U)` for `s > 0`.
    ///
    /// Poisson fields use a Monte Carlo estimate with [`MC_MASS_DRAWS`]
    /// draws from a fixed stream, so the estimate is reproducible and uses
    /// common random numbers across `s`.
    pub fn gaussian_mass(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("Gaussian mass needs s > 0, got {s}")));
        }
        Ok(match &self.geometry {
            Geometry::HalfLine { l } => half_line_mass(l + self.x0[0], s),
            Geometry::SphereExterior { l, d } => sphere_exterior_mass(*l, *d, s),
            Geometry::Annulus { l_minus, l_plus, d } => {
                sphere_exterior_mass(*l_minus, *d, s) - sphere_exterior_mass(*l_plus, *d, s)
            }
            Geometry::PoissonBalls(_) => {
                let mut rng = stream(MC_MASS_SEED, Domain::Mass, 0);
                self.gaussian_mass_mc(s, MC_MASS_DRAWS, &mut rng)?.0
            }
        })
    }

    /// Monte Carlo estimate of `F(s)` and its standard error.
    pub fn gaussian_mass_mc<R: Rng + ?Sized>(&self, s: f64, draws: usize, rng: &mut R) -> Result<(f64, f64)> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("Gaussian mass needs s > 0, got {s}")));
        }
        if draws == 0 {
            return Err(Error::EmptySample);
        }
        let sd = (2.0 * s).sqrt();
        let mut x = vec![0.0; self.dim()];
        let mut hits = 0usize;
        for _ in 0..draws {
            for (xi, x0) in x.iter_mut().zip(&self.x0) {
                let z: f64 = StandardNormal.sample(rng);
                *xi = x0 + sd * z;
            }
            if self.contains_unchecked(&x) {
                hits += 1;
            }
        }
        let p = hits as f64 / draws as f64;
        Ok((p, (p * (1.0 - p) / draws as f64).sqrt()))
    }

    /// Step approximation of a Poisson field's mass: zero below the
    /// squared inter-target distance `(λ V_d)^{−2/d}` and the occupied
    /// volume fraction `λ l^d V_d` above it.
    pub fn step_mass_approx(&self, s: f64) -> Result<f64> {
        match &self.geometry {
            Geometry::PoissonBalls(f) => {
                let vd = unit_ball_volume(f.d);
                let spacing_sq = (f.lambda * vd).powf(-2.0 / f.d as f64);
                Ok(if s < spacing_sq {
                    0.0
                } else {
                    f.lambda * f.radius.powi(f.d as i32) * vd
                })
            }
            _ => Err(Error::Unsupported(
                "step approximation is defined for Poisson fields only".into(),
            )),
        }
    }
}

/// `P(B(s) ≤ −L) = ½ erfc(L / √(4s))`.
pub fn half_line_mass(l: f64, s: f64) -> f64 {
    0.5 * erfc(l / (4.0 * s).sqrt())
}

/// `P(‖B(s)‖ ≥ L) = Γ(d/2, L²/4s) / Γ(d/2)`.
pub fn sphere_exterior_mass(l: f64, d: usize, s: f64) -> f64 {
    gamma_q(d as f64 / 2.0, l * l / (4.0 * s))
}

/// Uniform grid over ball centres with cell size equal to the radius, so a
/// covering ball's centre sits in one of the `3^d` cells around a point.
#[derive(Debug, Clone, PartialEq)]
struct GridIndex {
    cell: f64,
    origin: f64,
    cells_per_dim: i64,
    /// Sorted cell keys, one per centre.
    keys: Vec<u64>,
    /// Centre indices ordered like `keys`.
    order: Vec<u32>,
}

impl GridIndex {
    fn build(centers: &[f64], d: usize, cell: f64, halfwidth: f64) -> Result<Self> {
        let cells_per_dim = ((2.0 * halfwidth / cell).ceil() as i64).max(1) + 2;
        if (cells_per_dim as f64).powi(d as i32) > u64::MAX as f64 / 4.0 {
            return Err(invalid(
                "box_halfwidth",
                "grid index would overflow; box too large for radius",
            ));
        }
        let origin = -halfwidth - cell;
        let mut idx = Self {
            cell,
            origin,
            cells_per_dim,
            keys: Vec::new(),
            order: Vec::new(),
        };
        let mut pairs: Vec<(u64, u32)> = centers
            .chunks_exact(d)
            .enumerate()
            .map(|(i, c)| (idx.key_of(c), i as u32))
            .collect();
        pairs.sort_unstable();
        idx.keys = pairs.iter().map(|p| p.0).collect();
        idx.order = pairs.iter().map(|p| p.1).collect();
        Ok(idx)
    }

    fn coord(&self, v: f64) -> i64 {
        ((v - self.origin) / self.cell).floor() as i64
    }

    fn key_of(&self, c: &[f64]) -> u64 {
        c.iter()
            .rev()
            .fold(0u64, |acc, &v| acc * self.cells_per_dim as u64 + self.coord(v) as u64)
    }

    fn bucket(&self, key: u64) -> &[u32] {
        let lo = self.keys.partition_point(|&k| k < key);
        let hi = self.keys.partition_point(|&k| k <= key);
        &self.order[lo..hi]
    }
}

impl PoissonField {
    /// Builds a field from explicit centres (row-major, `d` per centre).
    pub fn from_centers(centers: Vec<f64>, d: usize, lambda: f64, radius: f64, box_halfwidth: f64) -> Result<Self> {
        check_dim(d)?;
        check_radius("l", radius)?;
        check_radius("box_halfwidth", box_halfwidth)?;
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(invalid("lambda", format!("must be non-negative, got {lambda}")));
        }
        if !centers.len().is_multiple_of(d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: centers.len() % d,
            });
        }
        if centers.iter().any(|v| !(v.abs() <= box_halfwidth)) {
            return Err(invalid("points", "every centre must lie inside the generation box"));
        }
        let index = GridIndex::build(&centers, d, radius, box_halfwidth)?;
        Ok(Self {
            d,
            lambda,
            radius,
            box_halfwidth,
            centers,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.centers.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> impl Iterator<Item = &[f64]> {
        self.centers.chunks_exact(self.d)
    }

    /// Whether any ball contains `x`.
    pub fn covers(&self, x: &[f64]) -> bool {
        let r2 = self.radius * self.radius;
        let ix = &self.index;
        let base: Vec<i64> = x.iter().map(|&v| ix.coord(v)).collect();
        let n = ix.cells_per_dim;
        // Walk the 3^d neighbouring cells.
        let mut offset = vec![-1i64; self.d];
        loop {
            let mut key = 0u64;
            let mut valid = true;
            for j in (0..self.d).rev() {
                let c = base[j] + offset[j];
                if c < 0 || c >= n {
                    valid = false;
                    break;
                }
                key = key * n as u64 + c as u64;
            }
            if valid {
                for &i in ix.bucket(key) {
                    let c = &self.centers[i as usize * self.d..(i as usize + 1) * self.d];
                    let dist2: f64 = c.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
                    if dist2 <= r2 {
                        return true;
                    }
                }
            }
            let mut j = 0;
            loop {
                if j == self.d {
                    return false;
                }
                offset[j] += 1;
                if offset[j] <= 1 {
                    break;
                }
                offset[j] = -1;
                j += 1;
            }
        }
    }

    /// Writes one centre per row under the header `x1,...,xd`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let header: Vec<String> = (1..=self.d).map(|j| format!("x{j}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for c in self.centers() {
            let row: Vec<String> = c.iter().map(|v| format!("{v:?}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Reads centres written by [`write_csv`](Self::write_csv). Lines
    /// starting with `#` are skipped.
    pub fn read_csv<R: BufRead>(r: R, lambda: f64, radius: f64, box_halfwidth: f64) -> Result<Self> {
        let mut d = None;
        let mut centers = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::Domain(format!("reading field: {e}")))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match d {
                None => {
                    let cols: Vec<&str> = line.split(',').collect();
                    let expected: Vec<String> = (1..=cols.len()).map(|j| format!("x{j}")).collect();
                    if cols.iter().map(|c| c.trim()).ne(expected.iter().map(String::as_str)) {
                        return Err(invalid(
                            "points",
                            format!("line {}: expected header x1,...,xd", lineno + 1),
                        ));
                    }
                    d = Some(cols.len());
                }
                Some(dim) => {
                    let row: std::result::Result<Vec<f64>, _> =
                        line.split(',').map(|c| c.trim().parse::<f64>()).collect();
                    let row = row.map_err(|e| invalid("points", format!("line {}: {e}", lineno + 1)))?;
                    if row.len() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            got: row.len(),
                        });
                    }
                    centers.extend(row);
                }
            }
        }
        let d = d.ok_or_else(|| invalid("points", "missing header"))?;
        Self::from_centers(centers, d, lambda, radius, box_halfwidth)
    }
}

/// Samples a Poisson field of density `lambda` in the box
/// `[−h, h]^d`, drops every ball that would contain `x0`, and freezes the
/// result into a [`TargetSpec`].
pub fn generate_poisson_field<R: Rng + ?Sized>(
    lambda: f64,
    l: f64,
    d: usize,
    box_halfwidth: f64,
    x0: Vec<f64>,
    rng: &mut R,
) -> Result<TargetSpec> {
    check_dim(d)?;
    check_radius("l", l)?;
    check_radius("box_halfwidth", box_halfwidth)?;
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(invalid("lambda", format!("must be non-negative, got {lambda}")));
    }
    if x0.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: x0.len(),
        });
    }
    let occupied = lambda * l.powi(d as i32) * unit_ball_volume(d);
    if occupied >= 1.0 {
        return Err(invalid(
            "lambda",
            format!("occupied volume fraction λ l^d V_d = {occupied} must be below 1"),
        ));
    }
    let mean = lambda * (2.0 * box_halfwidth).powi(d as i32);
    if mean > 5e7 {
        return Err(invalid("box_halfwidth", format!("expected {mean} points is too many")));
    }
    let count = if mean > 0.0 {
        Poisson::new(mean)
            .map_err(|e| invalid("lambda", e.to_string()))?
            .sample(rng) as usize
    } else {
        0
    };
    let mut centers = Vec::with_capacity(count * d);
    let r2 = l * l;
    for _ in 0..count {
        let start = centers.len();
        for _ in 0..d {
            centers.push(rng.random_range(-box_halfwidth..=box_halfwidth));
        }
        let dist2: f64 = centers[start..].iter().zip(&x0).map(|(a, b)| (a - b) * (a - b)).sum();
        if dist2 <= r2 {
            centers.truncate(start);
        }
    }
    let field = PoissonField::from_centers(centers, d, lambda, l, box_halfwidth)?;
    TargetSpec::poisson_balls(field, x0)
}
