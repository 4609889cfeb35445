//! Box-counting dimension of point clouds.
//!
//! Cells are half-open boxes [k ε, (k+1) ε) per axis, anchored at the
//! cloud's minimum corner. Quotients within a relative 1e-9 of an integer
//! are snapped to it, so points on a cell boundary land in the cell that
//! starts there regardless of rounding.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::real::Real;

const SNAP: f64 = 1e-9;
/// Counts at or above this fraction of the point count are saturated.
pub const SATURATION: f64 = 0.5;
/// Windows whose r² is within this of the best are preferred when longer.
pub const R2_SLACK: f64 = 1e-3;
pub const MIN_WINDOW: usize = 4;

fn check_points<T: Real, P: AsRef<[T]>>(points: &[P]) -> Result<usize> {
    let first = points.first().ok_or_else(|| Error::EmptyInput("box counting needs at least one point".into()))?;
    let d = first.as_ref().len();
    if d == 0 {
        return Err(Error::EmptyInput("points have no coordinates".into()));
    }
    for p in points {
        let p = p.as_ref();
        if p.len() != d {
            return Err(Error::Domain(format!("mixed point dimensions {d} and {}", p.len())));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("points must be finite".into()));
        }
    }
    Ok(d)
}

/// Componentwise minimum and maximum.
pub fn bounds<T: Real, P: AsRef<[T]>>(points: &[P]) -> Result<(Vec<T>, Vec<T>)> {
    let d = check_points(points)?;
    let mut lo = vec![T::infinity(); d];
    let mut hi = vec![T::neg_infinity(); d];
    for p in points {
        for ((l, h), &v) in lo.iter_mut().zip(hi.iter_mut()).zip(p.as_ref()) {
            *l = l.min(v);
            *h = h.max(v);
        }
    }
    Ok((lo, hi))
}

fn cell_index<T: Real>(offset: T, epsilon: T) -> u128 {
    let q = (offset / epsilon).to_f64_lossy();
    let r = q.round();
    let k = if (q - r).abs() <= SNAP * r.abs().max(1.0) { r } else { q.floor() };
    k.max(0.0) as u128
}

/// Number of ε-cells of the grid anchored at the minimum corner that
/// contain at least one point.
pub fn box_count<T: Real, P: AsRef<[T]>>(points: &[P], epsilon: T) -> Result<usize> {
    let (lo, _) = bounds(points)?;
    box_count_anchored(points, epsilon, &lo)
}

/// Box count on the grid anchored at `anchor`, which must not exceed any
/// point componentwise. Sharing an anchor makes counts comparable across
/// clouds (P ⊆ Q gives N(P) ≤ N(Q)).
pub fn box_count_anchored<T: Real, P: AsRef<[T]>>(points: &[P], epsilon: T, anchor: &[T]) -> Result<usize> {
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(Error::Domain(format!("box size must be positive, got {epsilon}")));
    }
    let (lo, hi) = bounds(points)?;
    if anchor.len() != lo.len() || anchor.iter().zip(&lo).any(|(a, l)| a > l) {
        return Err(Error::Domain("anchor must lie at or below the cloud's minimum corner".into()));
    }
    // Mixed-radix packing of cell coordinates into a u128.
    let mut radix = Vec::with_capacity(lo.len());
    let mut total = 1.0f64;
    for (a, h) in anchor.iter().zip(&hi) {
        let cells = ((*h - *a) / epsilon).to_f64_lossy().floor() + 2.0;
        total *= cells;
        if !cells.is_finite() || total >= 2f64.powi(127) {
            return Err(Error::Overflow(format!(
                "a grid of size {epsilon} over this cloud has more cells than can be indexed; use a larger box size"
            )));
        }
        radix.push(cells as u128);
    }
    let mut seen = HashSet::with_capacity(points.len().min(1 << 20));
    for p in points {
        let mut key = 0u128;
        for ((&v, &a), &r) in p.as_ref().iter().zip(anchor).zip(&radix) {
            key = key * r + cell_index(v - a, epsilon).min(r - 1);
        }
        seen.insert(key);
    }
    Ok(seen.len())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountResult<T> {
    /// ε ladder, descending.
    pub scales: Vec<T>,
    pub counts: Vec<usize>,
    /// Fitted D_f.
    pub slope: T,
    /// log C in log N = log C + D_f log(1/ε).
    pub intercept: T,
    pub r2: T,
    /// Index range [start, end) of the scales used in the fit.
    pub window: (usize, usize),
    /// Scales whose count reached the saturation threshold.
    pub saturated: Vec<bool>,
    pub warnings: Vec<String>,
}

impl<T: Real> BoxCountResult<T> {
    /// (log(1/ε), log N) per scale.
    pub fn log_points(&self) -> Vec<(T, T)> {
        self.scales
            .iter()
            .zip(&self.counts)
            .map(|(&e, &n)| (-e.ln(), T::from_usize_lossy(n).ln()))
            .collect()
    }

    /// Two-column plot data: `log(1/eps) log(N)` per line after a comment header.
    pub fn plot_data(&self) -> String {
        let mut out = String::from("# log(1/eps) log(N)\n");
        for (x, y) in self.log_points() {
            out.push_str(&format!("{} {}\n", crate::solvers::format_value(x), crate::solvers::format_value(y)));
        }
        out
    }
}

fn fit<T: Real>(pts: &[(T, T)]) -> (T, T, T) {
    let n = T::from_usize_lossy(pts.len());
    let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
    let my = pts.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: T = pts.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let r2 = if syy > T::zero() { (sxy * sxy / (sxx * syy)).min(T::one()) } else { T::zero() };
    (slope, my - slope * mx, r2)
}

/// Geometric ladder of `levels` scales from `eps_max` down to `eps_min`.
pub fn ladder<T: Real>(eps_max: T, eps_min: T, levels: usize) -> Vec<T> {
    let ratio = eps_min / eps_max;
    let last = T::from_usize_lossy(levels - 1);
    (0..levels)
        .map(|i| if i + 1 == levels { eps_min } else { eps_max * ratio.powf(T::from_usize_lossy(i) / last) })
        .collect()
}

/// Default ladder: 12 levels from extent/4 to extent/4096, where extent is
/// the largest side of the bounding box.
pub fn default_ladder<T: Real, P: AsRef<[T]>>(points: &[P]) -> Result<(T, T, usize)> {
    let (lo, hi) = bounds(points)?;
    let extent = lo.iter().zip(&hi).map(|(&l, &h)| h - l).fold(T::zero(), T::max);
    if extent <= T::zero() {
        return Err(Error::DegenerateFit("the cloud is a single point".into()));
    }
    Ok((extent / T::lit(4.0), extent / T::lit(4096.0), 12))
}

/// Fits log N(ε) against log(1/ε). Saturated scales (N ≥ half the point
/// count) are excluded; among contiguous windows of at least four scales the
/// longest whose r² is within `R2_SLACK` of the best is used.
pub fn box_dimension<T: Real, P: AsRef<[T]>>(points: &[P], eps_max: T, eps_min: T, levels: usize) -> Result<BoxCountResult<T>> {
    if !(eps_min > T::zero() && eps_min < eps_max) {
        return Err(Error::Domain(format!("need 0 < eps_min < eps_max, got {eps_min} and {eps_max}")));
    }
    if levels < MIN_WINDOW {
        return Err(Error::Domain(format!("need at least {MIN_WINDOW} levels, got {levels}")));
    }
    let scales = ladder(eps_max, eps_min, levels);
    let counts = scales.iter().map(|&e| box_count(points, e)).collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    if counts.iter().all(|&c| c == counts[0]) {
        return Err(Error::DegenerateFit(format!("every scale has {} boxes", counts[0])));
    }
    if counts.windows(2).any(|w| w[1] < w[0]) {
        warnings.push("box counts decrease at a finer scale (non-nested grids)".into());
    }
    let limit = SATURATION * points.len() as f64;
    let saturated: Vec<bool> = counts.iter().map(|&c| c as f64 >= limit).collect();
    let usable = saturated.iter().position(|&s| s).unwrap_or(levels);
    if usable < levels {
        warnings.push(format!(
            "{} finest scales saturated (N ≥ {:.0}% of {} points) and excluded",
            levels - usable,
            SATURATION * 100.0,
            points.len()
        ));
    }
    if usable < MIN_WINDOW {
        return Err(Error::DegenerateFit(format!(
            "only {usable} unsaturated scales; use a larger eps_min or more points"
        )));
    }
    let logs: Vec<(T, T)> = scales
        .iter()
        .zip(&counts)
        .map(|(&e, &n)| (-e.ln(), T::from_usize_lossy(n).ln()))
        .collect();
    let mut candidates = Vec::new();
    for start in 0..usable {
        for end in start + MIN_WINDOW..=usable {
            let pts = &logs[start..end];
            if pts.iter().all(|p| p.1 == pts[0].1) {
                continue;
            }
            let (slope, intercept, r2) = fit(pts);
            candidates.push(((start, end), slope, intercept, r2));
        }
    }
    let best = candidates
        .iter()
        .map(|c| c.3)
        .fold(None, |acc: Option<T>, r| Some(acc.map_or(r, |a| a.max(r))))
        .ok_or_else(|| Error::DegenerateFit("all windows have constant counts".into()))?;
    let slack = T::lit(R2_SLACK);
    let &((start, end), slope, intercept, r2) = candidates
        .iter()
        .filter(|c| c.3 >= best - slack)
        .max_by(|a, b| {
            let la = a.0 .1 - a.0 .0;
            let lb = b.0 .1 - b.0 .0;
            la.cmp(&lb).then(a.3.partial_cmp(&b.3).unwrap_or(std::cmp::Ordering::Equal)).then(b.0 .0.cmp(&a.0 .0))
        })
        .expect("best window exists");
    Ok(BoxCountResult {
        scales,
        counts,
        slope: slope.max(T::zero()),
        intercept,
        r2: r2.max(T::zero()),
        window: (start, end),
        saturated,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Level-`n` middle-thirds intervals as integer endpoints on [0, 3^n].
    fn cantor_intervals(levels: u32) -> Vec<(u64, u64)> {
        let mut ints = vec![(0u64, 3u64.pow(levels))];
        for _ in 0..levels {
            ints = ints
                .into_iter()
                .flat_map(|(a, b)| {
                    let third = (b - a) / 3;
                    [(a, a + third), (b - third, b)]
                })
                .collect();
        }
        ints
    }

    #[test]
    fn single_point_and_segment() {
        assert_eq!(box_count(&[[0.3f64, 0.7]], 0.01).unwrap(), 1);
        let seg: Vec<[f64; 2]> = (0..1000).map(|i| [i as f64 / 999.0, 0.0]).collect();
        let n = box_count(&seg, 0.1).unwrap();
        assert!(n == 10 || n == 11, "{n}");
    }

    #[test]
    fn cantor_counts_match_exact_oracle() {
        let ints = cantor_intervals(10);
        let scale = 3f64.powi(10);
        // exact oracle: integer cell index m / 3^5
        let lefts: Vec<u64> = ints.iter().map(|i| i.0).collect();
        let mut both: Vec<u64> = ints.iter().flat_map(|i| [i.0, i.1]).collect();
        both.sort_unstable();
        both.dedup();
        for (sample, want) in [(&lefts, 32usize), (&both, 64)] {
            let oracle: HashSet<u64> = sample.iter().map(|m| m / 243).collect();
            assert_eq!(oracle.len(), want);
            let pts: Vec<[f64; 1]> = sample.iter().map(|&m| [m as f64 / scale]).collect();
            assert_eq!(box_count(&pts, 3f64.powi(-5)).unwrap(), want);
        }
    }

    #[test]
    fn errors() {
        let empty: Vec<[f64; 2]> = vec![];
        assert!(matches!(box_count(&empty, 0.1), Err(Error::EmptyInput(_))));
        assert!(box_count(&[[0.0f64]], 0.0).is_err());
        let wide = [[0.0f64, 0.0, 0.0, 0.0], [1e30, 1e30, 1e30, 1e30]];
        assert!(matches!(box_count(&wide, 1e-3), Err(Error::Overflow(_))));
        let pts: Vec<[f64; 1]> = (0..100).map(|i| [i as f64]).collect();
        assert!(box_dimension(&pts, 1.0, 2.0, 12).is_err());
        assert!(box_dimension(&pts, 2.0, 1.0, 3).is_err());
        let two = [[0.0f64], [1.0]];
        assert!(matches!(box_dimension(&two, 0.4, 0.01, 6), Err(Error::DegenerateFit(_))));
    }

    #[test]
    fn ladder_endpoints() {
        let l = ladder(0.25f64, 0.25 / 1024.0, 11);
        assert_eq!(l[0], 0.25);
        assert_eq!(l[10], 0.25 / 1024.0);
        assert!((l[1] - 0.125).abs() < 1e-15);
    }

    #[test]
    fn plot_data_has_one_line_per_scale() {
        let seg: Vec<[f64; 1]> = (0..20000).map(|i| [i as f64 / 19999.0]).collect();
        let (hi, lo, levels) = default_ladder(&seg).unwrap();
        let res = box_dimension(&seg, hi, lo, levels).unwrap();
        let text = res.plot_data();
        assert_eq!(text.lines().count(), 13);
        assert!((res.slope - 1.0).abs() < 0.05);
    }

    fn cloud() -> impl Strategy<Value = Vec<Vec<f64>>> {
        proptest::collection::vec(proptest::collection::vec(-10.0f64..10.0, 2), 1..200)
    }

    proptest! {
        #[test]
        fn nested_grids_are_monotone(p in cloud(), eps in 0.01f64..2.0, k in 2usize..6) {
            let fine = box_count(&p, eps).unwrap();
            let coarse = box_count(&p, eps * k as f64).unwrap();
            prop_assert!(fine >= coarse);
        }

        #[test]
        fn subsets_count_fewer_boxes(p in cloud(), cut in 0usize..200, eps in 0.01f64..2.0) {
            let (lo, _) = bounds(&p).unwrap();
            let sub = &p[..cut.min(p.len() - 1) + 1];
            prop_assert!(box_count_anchored(sub, eps, &lo).unwrap() <= box_count_anchored(&p, eps, &lo).unwrap());
        }

        #[test]
        fn counts_are_bounded_by_points(p in cloud(), eps in 0.01f64..2.0) {
            let n = box_count(&p, eps).unwrap();
            prop_assert!(n >= 1 && n <= p.len());
        }
    }
}
