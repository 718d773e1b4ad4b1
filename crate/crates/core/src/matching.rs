//! Comparing two point multisets in the complex plane.

use num_complex::Complex64;

/// Above this size [`matching_distance`] falls back to greedy matching.
pub const HUNGARIAN_MAX: usize = 64;

/// Largest pairwise distance under an assignment between `a` and `b`.
///
/// The assignment minimizes the total Euclidean distance (Hungarian method)
/// for up to [`HUNGARIAN_MAX`] points, and is greedy beyond that. Returns
/// `f64::INFINITY` when the sizes differ.
pub fn matching_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.is_empty() {
        return 0.0;
    }
    let assignment = if a.len() <= HUNGARIAN_MAX {
        hungarian(a, b)
    } else {
        greedy(a, b)
    };
    assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| (a[i] - b[j]).norm())
        .fold(0.0, f64::max)
}

/// Minimum-cost perfect assignment; `result[i]` is the partner of `a[i]`.
fn hungarian(a: &[Complex64], b: &[Complex64]) -> Vec<usize> {
    let n = a.len();
    let cost = |i: usize, j: usize| (a[i] - b[j]).norm();
    // 1-based potentials formulation.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut result = vec![0usize; n];
    for j in 1..=n {
        result[p[j] - 1] = j - 1;
    }
    result
}

fn greedy(a: &[Complex64], b: &[Complex64]) -> Vec<usize> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut result = vec![usize::MAX; a.len()];
    let mut taken = vec![false; b.len()];
    for (_, i, j) in pairs {
        if result[i] == usize::MAX && !taken[j] {
            result[i] = j;
            taken[j] = true;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_has_zero_distance() {
        let a: Vec<Complex64> = (0..10)
            .map(|k| Complex64::new(k as f64, -(k as f64)))
            .collect();
        let mut b = a.clone();
        b.reverse();
        assert_eq!(matching_distance(&a, &b), 0.0);
    }

    #[test]
    fn picks_cheapest_assignment() {
        let a = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = [Complex64::new(0.6, 0.0), Complex64::new(-0.6, 0.0)];
        let d = matching_distance(&a, &b);
        assert!((d - 0.6).abs() < 1e-15, "{d}");
    }

    #[test]
    fn size_mismatch_is_infinite() {
        assert!(matching_distance(&[Complex64::new(0.0, 0.0)], &[]).is_infinite());
    }
}
