//! The group `K_X = {Σ ν_k λ_k : ν ∈ ℤᴺ, Σ ν_k = 0}`, the quotient
//! `Γ_X = ℂ / K_X`, and the renormalized sum of a sequence in `Lim¹(X)`.
//!
//! `K_X` is generated by the differences `λ_k − λ_base`. For Gaussian-rational
//! vertices it is a discrete subgroup of ℚ² of rank 0, 1 or 2; clearing the
//! common denominator `D` turns it into an integer lattice, which is kept in
//! row Hermite normal form together with the unimodular transform back to
//! the generators. Membership is then an exact triangular solve.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::gaussian::GaussianRational;
use crate::geometry::VertexSet;
use crate::sequence::{nearest_assignment, TailedSequence, VertexAssignment};

/// Integer coefficients `ν` with `Σ ν_k = 0` and `Σ ν_k λ_k = z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub nu: Vec<BigInt>,
}

impl Certificate {
    /// Checks both certificate invariants exactly.
    pub fn verify(&self, vertices: &[GaussianRational], z: &GaussianRational) -> bool {
        if self.nu.len() != vertices.len() {
            return false;
        }
        let total: BigInt = self.nu.iter().sum();
        let combo: GaussianRational = self
            .nu
            .iter()
            .zip(vertices)
            .map(|(k, v)| v.scale(&BigRational::from_integer(k.clone())))
            .sum();
        total.is_zero() && combo == *z
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KxLattice {
    vertices: Vec<GaussianRational>,
    base: usize,
    /// `λ_k − λ_base` for every `k ≠ base`, in index order.
    generators: Vec<GaussianRational>,
    denominator: BigInt,
    /// Scaled HNF rows: `(a, b)` and `(0, c)` with `a, c > 0`, `0 ≤ b < c`.
    basis: Vec<[BigInt; 2]>,
    /// `basis[i] = Σ_j transform[i][j] · D · generators[j]`
    transform: Vec<Vec<BigInt>>,
}

impl KxLattice {
    pub fn build(x: &VertexSet) -> Self {
        Self::build_with_base(x, 0)
    }

    /// Uses the differences `λ_k − λ_base` as generators.
    pub fn build_with_base(x: &VertexSet, base: usize) -> Self {
        let vertices = x.vertices().to_vec();
        let generators: Vec<GaussianRational> = (0..vertices.len())
            .filter(|&k| k != base)
            .map(|k| &vertices[k] - &vertices[base])
            .collect();
        let denominator = generators.iter().fold(BigInt::one(), |acc, g| {
            acc.lcm(g.re.denom()).lcm(g.im.denom())
        });
        let scale = BigRational::from_integer(denominator.clone());
        let rows: Vec<[BigInt; 2]> = generators
            .iter()
            .map(|g| [(&g.re * &scale).to_integer(), (&g.im * &scale).to_integer()])
            .collect();
        let (basis, transform) = hermite_rows(&rows);
        Self {
            vertices,
            base,
            generators,
            denominator,
            basis,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vertices(&self) -> &[GaussianRational] {
        &self.vertices
    }

    pub fn generators(&self) -> &[GaussianRational] {
        &self.generators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn transform(&self) -> &[Vec<BigInt>] {
        &self.transform
    }

    /// Integer HNF rows of `D · K_X`.
    pub fn scaled_basis(&self) -> &[[BigInt; 2]] {
        &self.basis
    }

    /// The HNF basis of `K_X` itself, as complex numbers.
    pub fn basis(&self) -> Vec<GaussianRational> {
        let d = BigRational::from_integer(self.denominator.clone());
        self.basis
            .iter()
            .map(|[a, b]| {
                GaussianRational::new(
                    BigRational::from_integer(a.clone()) / &d,
                    BigRational::from_integer(b.clone()) / &d,
                )
            })
            .collect()
    }

    fn scaled(&self, z: &GaussianRational) -> [BigRational; 2] {
        let d = BigRational::from_integer(self.denominator.clone());
        [&z.re * &d, &z.im * &d]
    }

    /// Exact membership test; on success returns the certificate with the
    /// base vertex coefficient as the balancing term.
    pub fn membership(&self, z: &GaussianRational) -> Option<Certificate> {
        let [wr, wi] = self.scaled(z);
        if !wr.is_integer() || !wi.is_integer() {
            return None;
        }
        let mut rem = [wr.to_integer(), wi.to_integer()];
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let pc = pivot_column(row);
            let (m, r) = rem[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            rem[0] -= &m * &row[0];
            rem[1] -= &m * &row[1];
            coords.push(m);
        }
        if !rem[0].is_zero() || !rem[1].is_zero() {
            return None;
        }
        let mut gen_coeffs = vec![BigInt::zero(); self.generators.len()];
        for (m, t) in coords.iter().zip(&self.transform) {
            for (c, tj) in gen_coeffs.iter_mut().zip(t) {
                *c += m * tj;
            }
        }
        let mut nu = vec![BigInt::zero(); self.vertices.len()];
        let others = (0..self.vertices.len()).filter(|&k| k != self.base);
        for (k, c) in others.zip(gen_coeffs) {
            nu[self.base] -= &c;
            nu[k] = c;
        }
        let cert = Certificate { nu };
        debug_assert!(cert.verify(&self.vertices, z));
        Some(cert)
    }

    pub fn contains(&self, z: &GaussianRational) -> bool {
        self.membership(z).is_some()
    }

    /// Canonical representative of `z + K_X`: the half-open fundamental
    /// parallelogram of the HNF basis for rank 2, the half-open strip
    /// `0 ≤ ⟨w, v⟩/|v|² < 1` for rank 1 (the orthogonal component is left
    /// alone), and `z` itself for rank 0.
    pub fn reduce(&self, z: &GaussianRational) -> GammaElement<'_> {
        let mut w = self.scaled(z);
        let row_q = |row: &[BigInt; 2]| {
            [
                BigRational::from_integer(row[0].clone()),
                BigRational::from_integer(row[1].clone()),
            ]
        };
        match self.basis.len() {
            0 => {}
            1 => {
                let v = row_q(&self.basis[0]);
                let t = (&w[0] * &v[0] + &w[1] * &v[1]) / (&v[0] * &v[0] + &v[1] * &v[1]);
                let m = t.floor();
                w[0] -= &m * &v[0];
                w[1] -= &m * &v[1];
            }
            _ => {
                for row in &self.basis {
                    let pc = pivot_column(row);
                    let v = row_q(row);
                    let m = (&w[pc] / &v[pc]).floor();
                    w[0] -= &m * &v[0];
                    w[1] -= &m * &v[1];
                }
            }
        }
        let d = BigRational::from_integer(self.denominator.clone());
        let [wr, wi] = w;
        GammaElement {
            representative: GaussianRational::new(wr / &d, wi / &d),
            lattice: self,
        }
    }

    /// Float diagnostic: Euclidean distance from `z` to the nearest point of
    /// `K_X`. Meaningful for inputs that are only known approximately.
    pub fn float_distance(&self, z: Complex64) -> f64 {
        let d = self.denominator.to_f64().unwrap_or(f64::INFINITY);
        let mut basis: Vec<Complex64> = self
            .basis
            .iter()
            .map(|[a, b]| {
                Complex64::new(a.to_f64().unwrap_or(0.0) / d, b.to_f64().unwrap_or(0.0) / d)
            })
            .collect();
        match basis.len() {
            0 => z.norm(),
            1 => {
                let v = basis[0];
                let t = (z.re * v.re + z.im * v.im) / v.norm_sqr();
                (z - v * libm::round(t)).norm()
            }
            _ => {
                // Lagrange–Gauss reduction, then search around Babai rounding.
                loop {
                    if basis[0].norm_sqr() > basis[1].norm_sqr() {
                        basis.swap(0, 1);
                    }
                    let (u, v) = (basis[0], basis[1]);
                    let mu = libm::round((u.re * v.re + u.im * v.im) / u.norm_sqr());
                    if mu == 0.0 {
                        break;
                    }
                    basis[1] = v - u * mu;
                }
                let (u, v) = (basis[0], basis[1]);
                let det = u.re * v.im - u.im * v.re;
                let a = (z.re * v.im - z.im * v.re) / det;
                let b = (u.re * z.im - u.im * z.re) / det;
                let (a0, b0) = (libm::round(a), libm::round(b));
                let mut best = f64::INFINITY;
                for da in -2..=2 {
                    for db in -2..=2 {
                        let p = u * (a0 + da as f64) + v * (b0 + db as f64);
                        best = best.min((z - p).norm());
                    }
                }
                best
            }
        }
    }
}

fn pivot_column(row: &[BigInt; 2]) -> usize {
    if row[0].is_zero() {
        1
    } else {
        0
    }
}

/// Row Hermite normal form of an `m × 2` integer matrix. Returns the nonzero
/// HNF rows and, for each, its integer coefficients on the input rows.
fn hermite_rows(rows: &[[BigInt; 2]]) -> (Vec<[BigInt; 2]>, Vec<Vec<BigInt>>) {
    let m = rows.len();
    let mut work: Vec<([BigInt; 2], Vec<BigInt>)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut unit = vec![BigInt::zero(); m];
            unit[i] = BigInt::one();
            (r.clone(), unit)
        })
        .collect();

    fn sub_multiple(
        work: &mut [([BigInt; 2], Vec<BigInt>)],
        target: usize,
        source: usize,
        q: &BigInt,
    ) {
        if q.is_zero() {
            return;
        }
        let (src_v, src_c) = work[source].clone();
        let (v, c) = &mut work[target];
        v[0] -= q * &src_v[0];
        v[1] -= q * &src_v[1];
        for (ci, si) in c.iter_mut().zip(&src_c) {
            *ci -= q * si;
        }
    }

    let mut r = 0;
    for col in 0..2 {
        while let Some(p) = (r..m)
            .filter(|&i| !work[i].0[col].is_zero())
            .min_by_key(|&i| work[i].0[col].abs())
        {
            work.swap(r, p);
            if work[r].0[col].is_negative() {
                let (v, c) = &mut work[r];
                for x in v.iter_mut().chain(c.iter_mut()) {
                    *x = -core::mem::take(x);
                }
            }
            let mut settled = true;
            for i in r + 1..m {
                let q = work[i].0[col].div_floor(&work[r].0[col]);
                sub_multiple(&mut work, i, r, &q);
                settled &= work[i].0[col].is_zero();
            }
            if settled {
                break;
            }
        }
        if r < m && !work[r].0[col].is_zero() {
            for i in 0..r {
                let q = work[i].0[col].div_floor(&work[r].0[col]);
                sub_multiple(&mut work, i, r, &q);
            }
            r += 1;
        }
    }
    work.truncate(r);
    work.into_iter().unzip()
}

/// A coset `z + K_X`, stored by its canonical representative.
#[derive(Clone, Debug)]
pub struct GammaElement<'a> {
    representative: GaussianRational,
    lattice: &'a KxLattice,
}

impl GammaElement<'_> {
    pub fn representative(&self) -> &GaussianRational {
        &self.representative
    }

    pub fn lattice(&self) -> &KxLattice {
        self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

impl PartialEq for GammaElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.basis == other.lattice.basis
            && self.lattice.denominator == other.lattice.denominator
            && self.representative == other.representative
    }
}

impl Eq for GammaElement<'_> {}

#[derive(Clone, Debug)]
pub struct RenormalizedSum<'a> {
    pub assignment: VertexAssignment,
    /// `Σ_head (a_n − λ_{x_n})` for the nearest assignment.
    pub raw_sum: GaussianRational,
    pub element: GammaElement<'a>,
    /// Present exactly when `s(d) = 0`.
    pub certificate: Option<Certificate>,
}

impl RenormalizedSum<'_> {
    pub fn is_zero(&self) -> bool {
        self.certificate.is_some()
    }
}

/// `s(d)` computed with the nearest-vertex assignment.
pub fn renormalized_sum<'a>(
    seq: &TailedSequence,
    x: &VertexSet,
    lattice: &'a KxLattice,
) -> RenormalizedSum<'a> {
    let assignment = nearest_assignment(seq, x);
    let raw_sum = assignment.deviation_sum(seq, x);
    let element = lattice.reduce(&raw_sum);
    let certificate = lattice.membership(&raw_sum);
    debug_assert_eq!(element.is_zero(), certificate.is_some());
    RenormalizedSum {
        assignment,
        raw_sum,
        element,
        certificate,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `s(d) ≠ 0`: `d` is not the diagonal of any operator in `N(X)`.
    Obstructed,
    /// `s(d) = 0` and `N = 2`: the obstruction is the only one, `d` is
    /// realizable.
    NotObstructedTwoPoint,
    /// `s(d) = 0` and `N ≥ 3`: necessary conditions pass, realizability is
    /// not decided.
    NecessaryPassed,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NotObstructedTwoPoint => "NOT_OBSTRUCTED_N2",
            Verdict::NecessaryPassed => "NECESSARY_PASSED",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub raw_sum: GaussianRational,
    pub representative: GaussianRational,
    pub certificate: Option<Certificate>,
    pub assignment: VertexAssignment,
    pub lattice: KxLattice,
}

/// Runs the necessary conditions on `d` (values in `P`, every vertex weight
/// diverging) and the `s(d) = 0` test.
pub fn obstruction_verdict(seq: &TailedSequence, x: &VertexSet) -> Result<VerdictReport> {
    x.convex_order()?;
    seq.require_full_tail(x.len())?;
    let lattice = KxLattice::build(x);
    let s = renormalized_sum(seq, x, &lattice);
    let verdict = match (s.is_zero(), x.len()) {
        (false, _) => Verdict::Obstructed,
        (true, 2) => Verdict::NotObstructedTwoPoint,
        (true, _) => Verdict::NecessaryPassed,
    };
    let representative = s.element.representative().clone();
    Ok(VerdictReport {
        verdict,
        raw_sum: s.raw_sum,
        representative,
        certificate: s.certificate,
        assignment: s.assignment,
        lattice,
    })
}

/// A sequence with values in the polygon whose renormalized sum is `z + K_X`.
///
/// Vertex differences `u = λ_b − λ_a` lie in `K_X`, so writing `z = αu + βv`
/// for two independent differences and dropping the integer parts of `α`,
/// `β` stays in the same coset. The remaining fractional pieces become head
/// terms `λ_a + {α}u` on chords of the polygon, at most two of them.
/// For `N = 2` only cosets meeting the real span of `λ_2 − λ_1` are reached;
/// for other `z` this returns `None`.
pub fn surjectivity_witness(z: &GaussianRational, x: &VertexSet) -> Result<Option<TailedSequence>> {
    x.convex_order()?;
    let n = x.len();
    let tail: Vec<usize> = (0..n).collect();
    let chord = |a: usize, b: usize| x.vertex(b) - x.vertex(a);
    let frac = |t: BigRational| &t - t.floor();
    let u = chord(0, 1);
    let pieces: Vec<((usize, usize), BigRational)> = if n == 2 {
        if !u.cross(z).is_zero() {
            return Ok(None);
        }
        vec![((0, 1), frac(u.dot(z) / u.norm_sqr()))]
    } else {
        let k = (2..n)
            .find(|&k| !u.cross(&chord(0, k)).is_zero())
            .expect("vertices in convex position are not collinear");
        let v = chord(0, k);
        let det = u.cross(&v);
        let alpha = z.cross(&v) / &det;
        let beta = u.cross(z) / &det;
        vec![((0, 1), frac(alpha)), ((0, k), frac(beta))]
    };
    let head = pieces
        .into_iter()
        .filter(|(_, t)| !t.is_zero())
        .map(|((a, b), t)| x.vertex(a) + &chord(a, b).scale(&t))
        .collect();
    TailedSequence::new(head, tail, x).map(Some)
}
