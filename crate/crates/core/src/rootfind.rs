//! Zero isolation for entire functions by the argument principle.
//!
//! A box is split into quadrants until every box holds a single zero, which
//! is then polished by Newton's method. The winding number along a box edge
//! is accumulated over adaptively refined segments: a segment is accepted
//! only when `|f|` provably cannot approach zero along it, so the phase
//! increment is unambiguous.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::torus::TorusParam;

/// Values of a function and its derivatives, plus a roundoff scale for the value.
#[derive(Debug, Clone)]
pub struct Jet {
    pub d: Vec<Complex64>,
    pub scale: f64,
}

pub trait Analytic {
    /// `f, f', ..., f^(order)` at `z`.
    fn jet(&self, z: Complex64, order: usize) -> Jet;

    fn value(&self, z: Complex64) -> Complex64 {
        self.jet(z, 0).d[0]
    }
}

/// Axis-aligned rectangle `[re0, re1] x [im0, im1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re0: f64,
    pub re1: f64,
    pub im0: f64,
    pub im1: f64,
}

impl Rect {
    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.re0 + self.re1), 0.5 * (self.im0 + self.im1))
    }

    pub fn diam(&self) -> f64 {
        (self.re1 - self.re0).hypot(self.im1 - self.im0)
    }

    fn contains(&self, z: Complex64, slack: f64) -> bool {
        z.re >= self.re0 - slack && z.re <= self.re1 + slack && z.im >= self.im0 - slack && z.im <= self.im1 + slack
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re0, self.im0),
            Complex64::new(self.re1, self.im0),
            Complex64::new(self.re1, self.im1),
            Complex64::new(self.re0, self.im1),
        ]
    }

    fn split(&self, ra: f64, rb: f64) -> [Rect; 4] {
        let rm = self.re0 + ra * (self.re1 - self.re0);
        let im = self.im0 + rb * (self.im1 - self.im0);
        [
            Rect { re0: self.re0, re1: rm, im0: self.im0, im1: im },
            Rect { re0: rm, re1: self.re1, im0: self.im0, im1: im },
            Rect { re0: self.re0, re1: rm, im0: im, im1: self.im1 },
            Rect { re0: rm, re1: self.re1, im0: im, im1: self.im1 },
        ]
    }
}

/// A zero, or an unresolved cluster of zeros, with its winding multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawZero {
    pub z: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub zeros: Vec<RawZero>,
    /// Winding number of the enclosing contour.
    pub total: usize,
    pub rect: Rect,
}

/// The contour passed numerically through a zero.
#[derive(Debug)]
struct BoundaryHit;

#[derive(Debug, Clone, Copy)]
pub struct RootFinder {
    /// Boxes smaller than this holding several zeros are reported as clusters.
    pub min_diam: f64,
    /// `|f| < zero_rel * scale` counts as a zero on the contour.
    pub zero_rel: f64,
    pub newton_iters: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        Self { min_diam: 1e-11, zero_rel: 1e-14, newton_iters: 60 }
    }
}

// Fractional offsets of the fundamental rectangle; tried in order until the
// contour avoids every zero.
const OFFSETS: [(f64, f64); 6] = [
    (-0.0731, -0.0417),
    (0.1189, 0.0733),
    (-0.2371, 0.1913),
    (0.3119, -0.1307),
    (-0.0193, 0.2797),
    (0.2011, -0.2213),
];

const SPLITS: [f64; 7] = [0.5, 0.46, 0.54, 0.41, 0.59, 0.37, 0.63];

impl RootFinder {
    /// Winding number of `f` around `rect`.
    pub fn winding<F: Analytic + ?Sized>(&self, f: &F, rect: &Rect) -> Result<i64> {
        self.winding_inner(f, rect)
            .map_err(|_| Error::RootIsolation("zero on contour".into()))
    }

    fn winding_inner<F: Analytic + ?Sized>(&self, f: &F, rect: &Rect) -> std::result::Result<i64, BoundaryHit> {
        let c = rect.corners();
        let mut total = 0.0;
        for i in 0..4 {
            total += self.edge_phase(f, c[i], c[(i + 1) % 4])?;
        }
        let turns = total / std::f64::consts::TAU;
        let rounded = turns.round();
        if (turns - rounded).abs() > 0.05 {
            return Err(BoundaryHit);
        }
        Ok(rounded as i64)
    }

    fn edge_phase<F: Analytic + ?Sized>(&self, f: &F, a: Complex64, b: Complex64) -> std::result::Result<f64, BoundaryHit> {
        const PIECES: usize = 8;
        let pts: Vec<Complex64> = (0..=PIECES).map(|i| a + (b - a) * (i as f64 / PIECES as f64)).collect();
        let jets: Vec<Jet> = pts.iter().map(|&z| f.jet(z, 1)).collect();
        let mut total = 0.0;
        for i in 0..PIECES {
            total += self.segment_phase(f, pts[i], &jets[i], pts[i + 1], &jets[i + 1], 0)?;
        }
        Ok(total)
    }

    fn segment_phase<F: Analytic + ?Sized>(
        &self,
        f: &F,
        za: Complex64,
        ja: &Jet,
        zb: Complex64,
        jb: &Jet,
        depth: usize,
    ) -> std::result::Result<f64, BoundaryHit> {
        let (fa, fb) = (ja.d[0], jb.d[0]);
        if fa.norm() <= self.zero_rel * ja.scale || fb.norm() <= self.zero_rel * jb.scale {
            return Err(BoundaryHit);
        }
        let h = (zb - za).norm();
        let bound = h * ja.d[1].norm().max(jb.d[1].norm());
        if bound < 0.3 * fa.norm().min(fb.norm()) {
            return Ok((fb / fa).arg());
        }
        if depth > 64 || h < 1e-14 {
            return Err(BoundaryHit);
        }
        let zm = 0.5 * (za + zb);
        let jm = f.jet(zm, 1);
        Ok(self.segment_phase(f, za, ja, zm, &jm, depth + 1)? + self.segment_phase(f, zm, &jm, zb, jb, depth + 1)?)
    }

    /// All zeros inside `rect`.
    pub fn isolate<F: Analytic + ?Sized>(&self, f: &F, rect: Rect) -> Result<ZeroSet> {
        let total = self.winding(f, &rect)?;
        if total < 0 {
            return Err(Error::RootIsolation(format!("negative winding {total} for an entire function")));
        }
        let mut zeros = Vec::new();
        self.isolate_box(f, rect, total as usize, &mut zeros)?;
        Ok(ZeroSet { zeros, total: total as usize, rect })
    }

    fn isolate_box<F: Analytic + ?Sized>(&self, f: &F, rect: Rect, count: usize, out: &mut Vec<RawZero>) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        if count == 1 {
            if let Some(z) = self.newton(f, &rect) {
                out.push(RawZero { z, multiplicity: 1 });
                return Ok(());
            }
        }
        if rect.diam() < self.min_diam {
            out.push(RawZero { z: rect.center(), multiplicity: count });
            return Ok(());
        }
        for &ra in &SPLITS {
            let rb = 1.0 - ra;
            let children = rect.split(ra, rb);
            let counts: std::result::Result<Vec<i64>, BoundaryHit> =
                children.iter().map(|c| self.winding_inner(f, c)).collect();
            match counts {
                Ok(counts) if counts.iter().all(|&c| c >= 0) && counts.iter().sum::<i64>() == count as i64 => {
                    for (child, c) in children.iter().zip(counts) {
                        self.isolate_box(f, *child, c as usize, out)?;
                    }
                    return Ok(());
                }
                _ => continue,
            }
        }
        // every cut passes through the numerically unresolvable core of a cluster
        if count > 1 || rect.diam() < 1e-3 {
            out.push(RawZero { z: rect.center(), multiplicity: count });
            return Ok(());
        }
        Err(Error::RootIsolation(format!("cannot split box of diameter {:e}", rect.diam())))
    }

    fn newton<F: Analytic + ?Sized>(&self, f: &F, rect: &Rect) -> Option<Complex64> {
        let mut z = rect.center();
        let slack = 0.25 * rect.diam();
        for _ in 0..self.newton_iters {
            let j = f.jet(z, 1);
            if j.d[1].norm() == 0.0 {
                return None;
            }
            let step = j.d[0] / j.d[1];
            z -= step;
            if !rect.contains(z, slack) {
                return None;
            }
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        let j = f.jet(z, 0);
        let tiny = j.d[0].norm() <= 1e-10 * j.scale.max(f64::MIN_POSITIVE);
        (rect.contains(z, 1e-12 * (1.0 + rect.diam())) && tiny).then_some(z)
    }

    /// Zeros of a function that is periodic under `z -> z + 1` and
    /// quasi-periodic under `z -> z + tau`, found in a fundamental rectangle.
    pub fn isolate_on_torus<F: Analytic + ?Sized>(&self, f: &F, param: &TorusParam) -> Result<ZeroSet> {
        let h = param.tau().im;
        let mut last = Error::RootIsolation("no contour tried".into());
        for &(oa, ob) in &OFFSETS {
            let rect = Rect { re0: oa, re1: oa + 1.0, im0: ob * h, im1: (ob + 1.0) * h };
            match self.isolate(f, rect) {
                Ok(z) => return Ok(z),
                Err(e) => last = e,
            }
        }
        Err(last)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Polynomial with the given roots.
    struct Poly(Vec<Complex64>);

    impl Analytic for Poly {
        fn jet(&self, z: Complex64, order: usize) -> Jet {
            // product rule via running derivatives of prod (z - r)
            let mut d = vec![Complex64::new(0.0, 0.0); order + 1];
            d[0] = Complex64::new(1.0, 0.0);
            let mut scale = 1.0;
            for r in &self.0 {
                let t = z - r;
                for k in (0..=order).rev() {
                    let lower = if k > 0 { d[k - 1] * k as f64 } else { Complex64::new(0.0, 0.0) };
                    d[k] = d[k] * t + lower;
                }
                scale *= t.norm() + r.norm() + 1.0;
            }
            Jet { d, scale: scale * 1e-3 }
        }
    }

    fn unit() -> Rect {
        Rect { re0: -1.03, re1: 1.01, im0: -0.97, im1: 1.07 }
    }

    #[test]
    fn finds_simple_roots() {
        let roots = vec![
            Complex64::new(0.3, 0.2),
            Complex64::new(-0.5, 0.7),
            Complex64::new(0.9, -0.8),
            Complex64::new(2.0, 2.0),
        ];
        let zs = RootFinder::default().isolate(&Poly(roots.clone()), unit()).unwrap();
        assert_eq!(zs.total, 3);
        for r in &roots[..3] {
            assert!(zs.zeros.iter().any(|z| (z.z - r).norm() < 1e-12 && z.multiplicity == 1));
        }
    }

    #[test]
    fn separates_close_pair() {
        let a = Complex64::new(0.1234, -0.31);
        let b = a + Complex64::new(3e-7, 1e-7);
        let zs = RootFinder::default().isolate(&Poly(vec![a, b]), unit()).unwrap();
        assert_eq!(zs.zeros.len(), 2);
        assert!(zs.zeros.iter().any(|z| (z.z - a).norm() < 1e-12));
        assert!(zs.zeros.iter().any(|z| (z.z - b).norm() < 1e-12));
    }

    #[test]
    fn exact_triple_root_reported_as_cluster() {
        let a = Complex64::new(-0.2, 0.4);
        let zs = RootFinder::default().isolate(&Poly(vec![a, a, a]), unit()).unwrap();
        assert_eq!(zs.total, 3);
        let m: usize = zs.zeros.iter().filter(|z| (z.z - a).norm() < 1e-3).map(|z| z.multiplicity).sum();
        assert_eq!(m, 3);
    }
}
