//! Hyperplane sections of the elliptic normal curve and the discriminant
//! `D`, the locus of hyperplanes tangent to the curve.
//!
//! A hyperplane `H` cuts the curve in `n` points with multiplicity. Near a
//! `k`-fold zero the computed zeros scatter over a disk of radius about
//! `eps^(1/k)`, so multiplicities are decided by backward error rather than
//! by raw distance: a candidate cluster with centre `c` is accepted when `H`
//! is within `sep^2` of a hyperplane vanishing to order `k` at `c`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, RightSvd};
use crate::projective::Hyperplane;
use crate::rootfind::{Analytic, RawZero, RootFinder};
use crate::theta::{Section, ThetaBasis, Wronskian};
use crate::torus::{TorusParam, TorusPoint};

pub const DEFAULT_CLUSTERING_TOL: f64 = 1e-6;

/// Zeros closer than this (times `min(1, Im tau)`) are candidates for merging.
const LINK_RADIUS: f64 = 1e-2;
/// Largest group of nearby zeros handled by the exhaustive partition search.
const MAX_GROUP: usize = 12;
/// Rank threshold for the derivative rows at a cluster centre.
const ROW_RANK_TOL: f64 = 1e-8;
/// Tangent hyperplanes closer than this count as the same point of `D`.
const TANGENT_TOL: f64 = 1e-6;
/// A ramification point lies over the base point of a pencil when the base
/// section is below `BASE_REL` there, and away from it above `OFF_BASE_REL`.
const BASE_REL: f64 = 1e-8;
const OFF_BASE_REL: f64 = 1e-6;
/// `|g| / scale` below this at a point counts as vanishing there.
const VANISH_REL: f64 = 1e-6;
pub const RESAMPLE_LIMIT: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiZero {
    pub point: TorusPoint,
    pub multiplicity: usize,
}

/// The divisor cut on the curve by a hyperplane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionZeros {
    pub zeros: Vec<MultiZero>,
    /// Largest `|g| / scale` over the raw zeros.
    pub residual: f64,
    /// Largest backward-error separation among merged clusters.
    pub cluster_separation: f64,
}

impl SectionZeros {
    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|z| z.multiplicity).sum()
    }

    pub fn abel_sum(&self, param: &TorusParam) -> TorusPoint {
        let terms: Vec<(i64, TorusPoint)> = self.zeros.iter().map(|z| (z.multiplicity as i64, z.point)).collect();
        param.weighted_sum(&terms)
    }

    pub fn partition(&self) -> FiberPartition {
        FiberPartition::from_multiplicities(self.zeros.iter().map(|z| z.multiplicity).collect())
    }

    /// Points repeated according to multiplicity.
    pub fn points(&self) -> Vec<TorusPoint> {
        self.zeros.iter().flat_map(|z| std::iter::repeat_n(z.point, z.multiplicity)).collect()
    }
}

/// Multiplicities `k_1 >= ... >= k_l > 0` of a hyperplane section.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberPartition {
    parts: Vec<usize>,
}

impl FiberPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("partition must be sorted descending".into()));
        }
        Ok(Self { parts })
    }

    pub fn from_multiplicities(mut parts: Vec<usize>) -> Self {
        parts.retain(|&k| k > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of distinct points.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_abelian(&self) -> bool {
        self.parts.iter().all(|&k| k == 1)
    }

    /// `F^[k_1] x F^[k_2] x ...`
    pub fn fiber_type(&self) -> String {
        self.parts.iter().map(|k| format!("F^[{k}]")).collect::<Vec<_>>().join(" x ")
    }
}

impl std::fmt::Display for FiberPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberReport {
    pub partition: FiberPartition,
    pub fiber_type: String,
    pub abelian: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumReport {
    pub n: usize,
    pub points: Vec<Hyperplane>,
    pub torsion_indices: Vec<(usize, usize)>,
    pub multiplicities: Vec<usize>,
    pub span_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeProbe {
    /// Distinct tangent hyperplanes in the pencil.
    pub degree: usize,
    /// Winding number of the Wronskian over a fundamental domain.
    pub ramification_total: usize,
    pub attempts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityProbe {
    pub multiplicity: usize,
    /// Distinct points of the line through `H0` lying in `D`, `H0` included.
    pub line_meets: usize,
    pub ramification_total: usize,
    pub attempts: usize,
}

/// Zeros of the section cut by `h`, with the default clustering tolerance.
pub fn hyperplane_section(h: &Hyperplane, basis: &ThetaBasis) -> Result<SectionZeros> {
    hyperplane_section_with(h, basis, DEFAULT_CLUSTERING_TOL)
}

pub fn hyperplane_section_with(h: &Hyperplane, basis: &ThetaBasis, clustering_tol: f64) -> Result<SectionZeros> {
    if h.dim() != basis.n() {
        return Err(Error::InvalidArgument(format!("hyperplane has {} coordinates, expected {}", h.dim(), basis.n())));
    }
    if !(clustering_tol > 0.0 && clustering_tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("clustering tolerance {clustering_tol} must be positive")));
    }
    let param = basis.param();
    let g = basis.section(h);
    let raw = RootFinder::default().isolate_on_torus(&g, param)?;
    if raw.total != basis.n() {
        return Err(Error::Truncation { expected: basis.n(), found: raw.total as i64 });
    }
    let residual = raw
        .zeros
        .iter()
        .map(|r| {
            let j = g.jet(r.z, 0);
            j.d[0].norm() / j.scale.max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);

    let radius = LINK_RADIUS * param.tau().im.min(1.0);
    let mut zeros = Vec::new();
    let mut cluster_separation: f64 = 0.0;
    for group in link_groups(&raw.zeros, param, radius) {
        let items: Vec<RawZero> = group.iter().map(|&i| raw.zeros[i]).collect();
        for (center, k, sep) in merge_group(&g, basis, h, &items, radius, clustering_tol)? {
            if k > 1 {
                cluster_separation = cluster_separation.max(sep);
            }
            zeros.push(MultiZero { point: param.reduce(center)?, multiplicity: k });
        }
    }
    zeros.sort_by(|a, b| {
        let (pa, pb) = (param.coords(a.point.z()), param.coords(b.point.z()));
        pa.partial_cmp(&pb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(SectionZeros { zeros, residual, cluster_separation })
}

/// Connected components of the "closer than `radius` on the torus" graph.
fn link_groups(zeros: &[RawZero], param: &TorusParam, radius: f64) -> Vec<Vec<usize>> {
    let m = zeros.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..m {
        for j in 0..i {
            if param.lattice_distance(zeros[i].z - zeros[j].z) < radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Representative of `z` closest to `near`.
fn lift_near(param: &TorusParam, z: Complex64, near: Complex64) -> Complex64 {
    let (a, b) = param.coords(z - near);
    near + param.from_coords(a - a.round(), b - b.round())
}

/// Centre of a cluster of total multiplicity `k`: the zero of `g^(k-1)`
/// near the weighted centroid.
fn cluster_center(g: &Section<'_>, param: &TorusParam, items: &[RawZero], radius: f64) -> (Complex64, usize) {
    let base = items[0].z;
    let k: usize = items.iter().map(|r| r.multiplicity).sum();
    let c0 = items.iter().map(|r| lift_near(param, r.z, base) * r.multiplicity as f64).sum::<Complex64>() / k as f64;
    if k == 1 {
        return (c0, 1);
    }
    let mut c = c0;
    for _ in 0..40 {
        let j = g.jet(c, k);
        if j.d[k].norm() == 0.0 {
            return (c0, k);
        }
        let step = j.d[k - 1] / j.d[k];
        c -= step;
        if (c - c0).norm() > radius || !c.re.is_finite() || !c.im.is_finite() {
            return (c0, k);
        }
        if step.norm() <= 1e-15 * (1.0 + c.norm()) {
            break;
        }
    }
    (c, k)
}

/// Square root of the relative distance from `h` to the hyperplanes
/// vanishing to order `k` at `c`.
fn separation(basis: &ThetaBasis, h: &Hyperplane, c: Complex64, k: usize) -> f64 {
    if k <= 1 {
        return 0.0;
    }
    let rows = basis.jets(c, k - 1).0;
    linalg::kernel_backward_error(&linalg::normalized_rows(&rows), h.coords(), ROW_RANK_TOL).sqrt()
}

/// Coarsest partition of a group of nearby zeros into clusters whose
/// separation is below `tol`. Returns `(centre, multiplicity, separation)`.
fn merge_group(
    g: &Section<'_>,
    basis: &ThetaBasis,
    h: &Hyperplane,
    items: &[RawZero],
    radius: f64,
    tol: f64,
) -> Result<Vec<(Complex64, usize, f64)>> {
    let param = basis.param();
    let m = items.len();
    if m == 1 {
        let (c, k) = cluster_center(g, param, items, radius);
        return Ok(vec![(c, k, separation(basis, h, c, k))]);
    }
    if m > MAX_GROUP {
        return Err(Error::RootIsolation(format!("{m} zeros within {radius:e} of each other")));
    }
    let full = (1usize << m) - 1;
    let mut info: Vec<(Complex64, usize, f64)> = vec![(Complex64::new(0.0, 0.0), 0, f64::INFINITY); full + 1];
    #[allow(clippy::needless_range_loop)]
    for mask in 1..=full {
        let subset: Vec<RawZero> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect();
        let (c, k) = cluster_center(g, param, &subset, radius);
        let sep = if subset.len() == 1 && k == 1 { 0.0 } else { separation(basis, h, c, k) };
        info[mask] = (c, k, sep);
    }
    let admissible = |mask: usize| mask.count_ones() == 1 || info[mask].2 < tol;
    // best[mask] = fewest admissible blocks covering mask
    let mut best = vec![usize::MAX; full + 1];
    let mut choice = vec![0usize; full + 1];
    best[0] = 0;
    #[allow(clippy::needless_range_loop)]
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if admissible(block) && best[mask ^ block] != usize::MAX && best[mask ^ block] + 1 < best[mask] {
                best[mask] = best[mask ^ block] + 1;
                choice[mask] = block;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut blocks = Vec::new();
    let mut mask = full;
    while mask != 0 {
        blocks.push(choice[mask]);
        mask ^= choice[mask];
    }
    for (i, &a) in blocks.iter().enumerate() {
        for &b in &blocks[..i] {
            let sep = info[a | b].2;
            if (tol..10.0 * tol).contains(&sep) {
                return Err(Error::Indeterminate { separation: sep, low: tol, high: 10.0 * tol });
            }
        }
    }
    blocks.sort_unstable();
    Ok(blocks.into_iter().map(|b| info[b]).collect())
}

/// Whether `h` is tangent to the curve, and the multiplicity partition of
/// its section.
pub fn in_discriminant(h: &Hyperplane, basis: &ThetaBasis, clustering_tol: f64) -> Result<(bool, FiberPartition)> {
    let zeros = hyperplane_section_with(h, basis, clustering_tol)?;
    let p = zeros.partition();
    Ok((!p.is_abelian(), p))
}

pub fn fiber_report(h: &Hyperplane, basis: &ThetaBasis) -> Result<FiberReport> {
    let (_, partition) = in_discriminant(h, basis, DEFAULT_CLUSTERING_TOL)?;
    Ok(fiber_report_for(partition))
}

pub fn fiber_report_for(partition: FiberPartition) -> FiberReport {
    let n = partition.total();
    let abelian = partition.is_abelian();
    let verdict = if abelian {
        format!("abelian: W_y = F^{n}, W_y/F = F^{}", n - 1)
    } else {
        let bundle: Vec<String> = partition.parts().iter().filter(|&&k| k > 1).map(|k| format!("P^{}", k - 1)).collect();
        format!("non-abelian fiber (contains a {}-bundle structure)", bundle.join(" x "))
    };
    FiberReport { fiber_type: partition.fiber_type(), abelian, verdict, partition }
}

/// Tangent hyperplane to the curve at `-x` and passing through `xs`, where
/// `x` is the `branch`-th solution of `2x = sum(xs)`. Requires a calibrated
/// basis.
pub fn sample_d_tilde(xs: &[TorusPoint], branch: usize, basis: &ThetaBasis) -> Result<Hyperplane> {
    let n = basis.n();
    if xs.len() != n - 2 {
        return Err(Error::InvalidArgument(format!("expected {} auxiliary points, got {}", n - 2, xs.len())));
    }
    if branch >= 4 {
        return Err(Error::InvalidArgument(format!("branch {branch} outside 0..4")));
    }
    let param = basis.param();
    let sum = param.weighted_sum(&xs.iter().map(|&p| (1, p)).collect::<Vec<_>>());
    let x = param.solve_scaled(2, sum)?[branch];
    let mx = param.neg(x);
    let mut divisor = vec![(mx, 2)];
    divisor.extend(xs.iter().map(|&p| (p, 1)));
    let aj = param.weighted_sum(&divisor.iter().map(|&(p, k)| (k as i64, p)).collect::<Vec<_>>());
    if !param.is_zero(aj) {
        return Err(Error::Degenerate(format!("divisor has nonzero Abel sum {}", aj.z())));
    }
    basis.hyperplane_through_divisor(&divisor)
}

/// Tangent hyperplane `g2(x) H1 - g1(x) H2` of the pencil spanned by `H1, H2`.
fn pencil_tangent(h1: &Hyperplane, h2: &Hyperplane, a: Complex64, b: Complex64) -> Result<Hyperplane> {
    Hyperplane::new(h1.coords().iter().zip(h2.coords()).map(|(p, q)| b * p - a * q).collect())
}

fn relative_value<F: Analytic>(f: &F, z: Complex64) -> f64 {
    let j = f.jet(z, 0);
    j.d[0].norm() / j.scale.max(f64::MIN_POSITIVE)
}

fn pairwise_distinct(hs: &[Hyperplane]) -> bool {
    hs.iter().enumerate().all(|(i, a)| hs[..i].iter().all(|b| a.distance(b) >= TANGENT_TOL))
}

/// Degree of `D` measured as the number of tangent hyperplanes in a
/// random pencil.
pub fn discriminant_degree_probe(basis: &ThetaBasis, seed: u64) -> Result<DegreeProbe> {
    let n = basis.n();
    let param = basis.param();
    let finder = RootFinder::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reason = String::new();
    for attempt in 1..=RESAMPLE_LIMIT {
        let h1 = Hyperplane::random(n, &mut rng);
        let h2 = Hyperplane::random(n, &mut rng);
        let (g1, g2) = (basis.section(&h1), basis.section(&h2));
        // the centre of projection must miss the curve
        let base = match finder.isolate_on_torus(&g1, param) {
            Ok(z) => z,
            Err(e) => {
                reason = e.to_string();
                continue;
            }
        };
        if base.zeros.iter().any(|r| relative_value(&g2, r.z) < VANISH_REL) {
            reason = "projection centre meets the curve".into();
            continue;
        }
        let w = Wronskian { g1: g1.clone(), g2: g2.clone() };
        let ram = match finder.isolate_on_torus(&w, param) {
            Ok(z) => z,
            Err(e) => {
                reason = e.to_string();
                continue;
            }
        };
        if ram.zeros.iter().any(|r| r.multiplicity > 1) {
            reason = "degenerate ramification point".into();
            continue;
        }
        let tangents: Result<Vec<Hyperplane>> =
            ram.zeros.iter().map(|r| pencil_tangent(&h1, &h2, g1.value(r.z), g2.value(r.z))).collect();
        let tangents = match tangents {
            Ok(t) => t,
            Err(e) => {
                reason = e.to_string();
                continue;
            }
        };
        if !pairwise_distinct(&tangents) {
            reason = "pencil is tangent at two points".into();
            continue;
        }
        return Ok(DegreeProbe { degree: tangents.len(), ramification_total: ram.total, attempts: attempt });
    }
    Err(Error::ResampleExhausted { attempts: RESAMPLE_LIMIT, reason })
}

/// Multiplicity of `D` at `h0`: `2n + 1 - |l ∩ D|` for a random line `l`
/// through `h0`. Zero when `h0` is not in `D`.
pub fn multiplicity_probe(h0: &Hyperplane, basis: &ThetaBasis, seed: u64) -> Result<MultiplicityProbe> {
    let n = basis.n();
    if h0.dim() != n {
        return Err(Error::InvalidArgument(format!("hyperplane has {} coordinates, expected {n}", h0.dim())));
    }
    let param = basis.param();
    let finder = RootFinder::default();
    let g0 = basis.section(h0);
    let base = hyperplane_section(h0, basis)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reason = String::new();
    for attempt in 1..=RESAMPLE_LIMIT {
        let h1 = Hyperplane::random(n, &mut rng);
        let g1 = basis.section(&h1);
        if base.zeros.iter().any(|z| relative_value(&g1, z.point.z()) < VANISH_REL) {
            reason = "line meets the curve's base locus".into();
            continue;
        }
        let w = Wronskian { g1: g0.clone(), g2: g1.clone() };
        let ram = match finder.isolate_on_torus(&w, param) {
            Ok(z) => z,
            Err(e) => {
                reason = e.to_string();
                continue;
            }
        };
        let mut others = Vec::new();
        let mut ambiguous = false;
        for r in &ram.zeros {
            let v = relative_value(&g0, r.z);
            if v < BASE_REL {
                continue;
            }
            if v < OFF_BASE_REL || r.multiplicity > 1 {
                ambiguous = true;
                break;
            }
            match pencil_tangent(h0, &h1, g0.value(r.z), g1.value(r.z)) {
                Ok(t) if t.distance(h0) >= TANGENT_TOL => others.push(t),
                _ => {
                    ambiguous = true;
                    break;
                }
            }
        }
        if ambiguous {
            reason = "line meets D non-transversally away from the base point".into();
            continue;
        }
        if !pairwise_distinct(&others) {
            reason = "line meets the singular locus of D".into();
            continue;
        }
        let line_meets = others.len() + 1;
        let multiplicity = (ram.total + 1).checked_sub(line_meets).ok_or_else(|| {
            Error::Degenerate(format!("{line_meets} intersections exceed winding total {}", ram.total))
        })?;
        return Ok(MultiplicityProbe { multiplicity, line_meets, ramification_total: ram.total, attempts: attempt });
    }
    Err(Error::ResampleExhausted { attempts: RESAMPLE_LIMIT, reason })
}

/// The `n^2` osculating hyperplanes at the `n`-torsion points, their
/// measured multiplicities, and the rank of their stacked coordinates.
pub fn top_stratum(basis: &ThetaBasis, seed: u64) -> Result<StratumReport> {
    let n = basis.n();
    let param = basis.param();
    let torsion = param.torsion_points(n)?;
    let mut points = Vec::with_capacity(n * n);
    let mut multiplicities = Vec::with_capacity(n * n);
    let mut torsion_indices = Vec::with_capacity(n * n);
    for (i, &t) in torsion.iter().enumerate() {
        let h = basis.osculating_hyperplane(t)?;
        let (inside, partition) = in_discriminant(&h, basis, DEFAULT_CLUSTERING_TOL)?;
        if !inside || partition.parts() != [n] {
            return Err(Error::Degenerate(format!("osculating hyperplane at torsion point {i} has section {partition}")));
        }
        let probe = multiplicity_probe(&h, basis, seed.wrapping_add(i as u64))?;
        torsion_indices.push(param.torsion_index(n, t)?);
        multiplicities.push(probe.multiplicity);
        points.push(h);
    }
    let rows: Vec<Vec<Complex64>> = points.iter().map(|h| h.coords().to_vec()).collect();
    let span_rank = RightSvd::new(&linalg::from_rows(&rows)).rank(1e-8);
    Ok(StratumReport { n, points, torsion_indices, multiplicities, span_rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize) -> ThetaBasis {
        ThetaBasis::calibrated(n, TorusParam::square(), None).unwrap()
    }

    #[test]
    fn partition_validation_and_display() {
        assert!(FiberPartition::new(vec![1, 2]).is_err());
        assert!(FiberPartition::new(vec![]).is_err());
        let p = FiberPartition::from_multiplicities(vec![1, 2, 1]);
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.to_string(), "(2,1,1)");
        assert_eq!(p.fiber_type(), "F^[2] x F^[1] x F^[1]");
        assert!(!p.is_abelian());
        assert!(FiberPartition::new(vec![1, 1, 1]).unwrap().is_abelian());
    }

    #[test]
    fn fiber_verdicts() {
        let r = fiber_report_for(FiberPartition::new(vec![1, 1, 1]).unwrap());
        assert!(r.abelian && r.verdict.contains("F^2"));
        let r = fiber_report_for(FiberPartition::new(vec![2, 1]).unwrap());
        assert!(!r.abelian);
        assert_eq!(r.fiber_type, "F^[2] x F^[1]");
    }

    #[test]
    fn osculating_section_is_one_point() {
        let b = basis(3);
        let t = b.param().torsion_points(3).unwrap()[4];
        let h = b.osculating_hyperplane(t).unwrap();
        let z = hyperplane_section(&h, &b).unwrap();
        assert_eq!(z.zeros.len(), 1);
        assert_eq!(z.zeros[0].multiplicity, 3);
        assert!(b.param().distance(z.zeros[0].point, t) < 1e-7);
    }

    #[test]
    fn d_tilde_sample_is_tangent() {
        let b = basis(4);
        let p = b.param();
        let xs = [p.point(0.13, 0.71), p.point(0.58, 0.22)];
        let h = sample_d_tilde(&xs, 1, &b).unwrap();
        let (inside, part) = in_discriminant(&h, &b, DEFAULT_CLUSTERING_TOL).unwrap();
        assert!(inside);
        assert_eq!(part.parts(), &[2, 1, 1]);
        assert!(sample_d_tilde(&xs[..1], 0, &b).is_err());
        assert!(sample_d_tilde(&xs, 4, &b).is_err());
    }

    #[test]
    fn degree_probe_small_case() {
        let probe = discriminant_degree_probe(&basis(3), 7).unwrap();
        assert_eq!(probe.degree, 6);
    }

    #[test]
    fn generic_hyperplane_has_multiplicity_zero() {
        let b = basis(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = Hyperplane::random(3, &mut rng);
        assert_eq!(multiplicity_probe(&h, &b, 1).unwrap().multiplicity, 0);
    }
}
