//! K-means clustering of sentence vectors.
//!
//! Lloyd iterations over sparse points with dense centroids, k-means++
//! seeding from an explicit seed, and farthest-point repair of empty
//! clusters. Distances are squared Euclidean; with the default
//! `normalize = true` the points are L2-normalized first, which makes the
//! metric monotonically equivalent to cosine dissimilarity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vectorize::{format_sig12, SparseVector, TfIdfModel};

/// Knobs for one k-means run.
#[derive(Debug, Clone, PartialEq)]
pub struct KMeansConfig {
    /// Requested cluster count; `None` resolves via [`select_k`].
    pub k: Option<usize>,
    /// Seed for the k-means++ initialization.
    pub seed: u64,
    pub max_iterations: usize,
    /// Relative inertia-improvement threshold that stops iteration.
    pub tolerance: f64,
    /// L2-normalize nonzero vectors before clustering.
    pub normalize: bool,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        KMeansConfig {
            k: None,
            seed: 42,
            max_iterations: 300,
            tolerance: 1e-6,
            normalize: true,
        }
    }
}

/// A converged clustering: every cluster id in `[0, k)` has at least one
/// assigned point.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering<S> {
    pub k: usize,
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<S>>,
    pub inertia: S,
    pub iterations: usize,
}

impl<S: Scalar> Clustering<S> {
    /// Debug dump: `{"k", "iterations", "inertia", "assignments": [...]}`.
    pub fn to_debug_json(&self) -> String {
        let assignments: Vec<String> = self.assignments.iter().map(|a| a.to_string()).collect();
        format!(
            "{{\"k\": {}, \"iterations\": {}, \"inertia\": {}, \"assignments\": [{}]}}",
            self.k,
            self.iterations,
            format_sig12(self.inertia.to_f64()),
            assignments.join(", ")
        )
    }
}

/// Resolves the cluster count: an explicit request is clamped to
/// `[1, n_sentences]`; otherwise `round(sqrt(n/2))` capped by the summary
/// length.
pub fn select_k(n_sentences: usize, target_summary_sentences: usize, requested_k: Option<usize>) -> usize {
    let n = n_sentences.max(1);
    match requested_k {
        Some(k) => k.clamp(1, n),
        None => {
            let heuristic = (n as f64 / 2.0).sqrt().round() as usize;
            heuristic.clamp(1, target_summary_sentences.max(1).min(n))
        }
    }
}

/// Clusters the model's sentence vectors. A `None` k resolves to the
/// unconstrained `select_k` heuristic.
pub fn kmeans<S: Scalar>(model: &TfIdfModel<S>, config: &KMeansConfig) -> Result<Clustering<S>> {
    kmeans_on_vectors(&model.vectors, model.vocabulary.len(), config)
}

/// Clusters arbitrary sparse vectors of dimension `dim`.
pub fn kmeans_on_vectors<S: Scalar>(
    vectors: &[SparseVector<S>],
    dim: usize,
    config: &KMeansConfig,
) -> Result<Clustering<S>> {
    kmeans_traced(vectors, dim, config).map(|(c, _)| c)
}

/// Like [`kmeans_on_vectors`] but also returns the inertia recorded after
/// each full assign-update step.
pub fn kmeans_traced<S: Scalar>(
    vectors: &[SparseVector<S>],
    dim: usize,
    config: &KMeansConfig,
) -> Result<(Clustering<S>, Vec<S>)> {
    let n = vectors.len();
    let k = match config.k {
        Some(k) => k,
        None => select_k(n, n, None),
    };
    if k < 1 || k > n {
        return Err(Error::InvalidK { requested: k, n_points: n });
    }

    let points = prepare_points(vectors, config.normalize);

    // All-zero input has no geometry to separate: collapse to one cluster
    // regardless of the requested k.
    if points.iter().all(|p| p.is_empty()) {
        return Ok((
            Clustering {
                k: 1,
                assignments: vec![0; n],
                centroids: vec![vec![S::zero(); dim]],
                inertia: S::zero(),
                iterations: 0,
            },
            Vec::new(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let centroids = kmeans_pp_init(&points, dim, k, &mut rng);
    Ok(lloyd(&points, dim, centroids, config))
}

/// Runs Lloyd iterations from explicitly supplied initial centroids,
/// skipping k-means++. `k` is the number of centroids given.
pub fn kmeans_with_centroids<S: Scalar>(
    vectors: &[SparseVector<S>],
    dim: usize,
    initial_centroids: Vec<Vec<S>>,
    config: &KMeansConfig,
) -> Result<Clustering<S>> {
    let n = vectors.len();
    let k = initial_centroids.len();
    if k < 1 || k > n {
        return Err(Error::InvalidK { requested: k, n_points: n });
    }
    let points = prepare_points(vectors, config.normalize);
    Ok(lloyd(&points, dim, initial_centroids, config).0)
}

/// Nearest-centroid assignment for externally held points (ties go to the
/// lowest cluster id). Applies the same normalization as clustering did.
pub fn assign<S: Scalar>(
    vectors: &[SparseVector<S>],
    centroids: &[Vec<S>],
    normalize: bool,
) -> Vec<usize> {
    let points = prepare_points(vectors, normalize);
    let centroid_norms: Vec<S> = centroids.iter().map(|c| dense_norm_sq(c)).collect();
    points
        .iter()
        .map(|p| nearest_centroid(p, centroids, &centroid_norms).0)
        .collect()
}

fn prepare_points<S: Scalar>(vectors: &[SparseVector<S>], normalize: bool) -> Vec<SparseVector<S>> {
    if normalize {
        vectors.iter().map(|v| v.normalized()).collect()
    } else {
        vectors.to_vec()
    }
}

fn dense_norm_sq<S: Scalar>(c: &[S]) -> S {
    c.iter().fold(S::zero(), |acc, &x| acc + x * x)
}

/// Squared Euclidean distance via the expansion |x|^2 - 2 x.c + |c|^2.
fn point_centroid_distance<S: Scalar>(p: &SparseVector<S>, c: &[S], c_norm_sq: S) -> S {
    let d = p.norm_sq() - (p.dot_dense(c) + p.dot_dense(c)) + c_norm_sq;
    d.max(S::zero())
}

fn nearest_centroid<S: Scalar>(
    p: &SparseVector<S>,
    centroids: &[Vec<S>],
    centroid_norms: &[S],
) -> (usize, S) {
    let mut best = 0;
    let mut best_d = point_centroid_distance(p, &centroids[0], centroid_norms[0]);
    for (c, (centroid, &norm)) in centroids.iter().zip(centroid_norms).enumerate().skip(1) {
        let d = point_centroid_distance(p, centroid, norm);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    (best, best_d)
}

fn densify<S: Scalar>(p: &SparseVector<S>, dim: usize) -> Vec<S> {
    let mut dense = vec![S::zero(); dim];
    for &(t, w) in p.entries() {
        dense[t] = w;
    }
    dense
}

/// k-means++: first centroid uniform, the rest sampled proportional to the
/// squared distance from the nearest chosen centroid.
fn kmeans_pp_init<S: Scalar>(
    points: &[SparseVector<S>],
    dim: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<S>> {
    let n = points.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    chosen.push(rng.gen_range(0..n));
    let mut d2: Vec<f64> = points
        .iter()
        .map(|p| p.distance_sq(&points[chosen[0]]).to_f64())
        .collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let r = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = n - 1;
            for (i, &d) in d2.iter().enumerate() {
                acc += d;
                if r < acc {
                    pick = i;
                    break;
                }
            }
            pick
        } else {
            // all remaining mass is zero (duplicate points); pick anything
            rng.gen_range(0..n)
        };
        chosen.push(next);
        for (i, p) in points.iter().enumerate() {
            let d = p.distance_sq(&points[next]).to_f64();
            if d < d2[i] {
                d2[i] = d;
            }
        }
    }
    chosen.iter().map(|&i| densify(&points[i], dim)).collect()
}

fn compute_means<S: Scalar>(
    points: &[SparseVector<S>],
    assignments: &[usize],
    k: usize,
    dim: usize,
) -> Vec<Vec<S>> {
    let mut sums = vec![vec![S::zero(); dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &a) in points.iter().zip(assignments) {
        counts[a] += 1;
        for &(t, w) in p.entries() {
            sums[a][t] = sums[a][t] + w;
        }
    }
    for (sum, &count) in sums.iter_mut().zip(&counts) {
        debug_assert!(count > 0, "empty cluster must be repaired before the mean update");
        let inv = S::one() / S::from_usize(count.max(1));
        for x in sum.iter_mut() {
            *x = *x * inv;
        }
    }
    sums
}

fn lloyd<S: Scalar>(
    points: &[SparseVector<S>],
    dim: usize,
    mut centroids: Vec<Vec<S>>,
    config: &KMeansConfig,
) -> (Clustering<S>, Vec<S>) {
    let n = points.len();
    let k = centroids.len();
    let tolerance = S::from_f64(config.tolerance);
    let mut assignments = vec![0usize; n];
    let mut distances = vec![S::zero(); n];
    let mut trace: Vec<S> = Vec::new();
    let mut prev_inertia: Option<S> = None;
    let mut iterations = 0;
    let mut inertia;

    loop {
        iterations += 1;

        let centroid_norms: Vec<S> = centroids.iter().map(|c| dense_norm_sq(c)).collect();
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let (best, d) = nearest_centroid(p, &centroids, &centroid_norms);
            if assignments[i] != best {
                assignments[i] = best;
                changed = true;
            }
            distances[i] = d;
        }

        changed |= repair_empty_clusters(
            points,
            &centroids,
            &centroid_norms,
            &mut assignments,
            &mut distances,
            k,
        );

        centroids = compute_means(points, &assignments, k, dim);

        let new_norms: Vec<S> = centroids.iter().map(|c| dense_norm_sq(c)).collect();
        inertia = S::zero();
        for (p, &a) in points.iter().zip(&assignments) {
            inertia = inertia + point_centroid_distance(p, &centroids[a], new_norms[a]);
        }
        trace.push(inertia);

        if !changed && iterations > 1 {
            break;
        }
        if let Some(prev) = prev_inertia {
            if prev <= S::zero() {
                break;
            }
            // tolerance 0 disables the inertia stop; iteration then runs
            // to assignment stability
            if config.tolerance > 0.0 && (prev - inertia) / prev < tolerance {
                break;
            }
        }
        if iterations >= config.max_iterations {
            break;
        }
        prev_inertia = Some(inertia);
    }

    (
        Clustering { k, assignments, centroids, inertia, iterations },
        trace,
    )
}

/// Moves the point farthest from its centroid into each empty cluster.
/// Donors come only from clusters with at least two members, so no new
/// empty cluster appears; ties break toward the smaller point index.
fn repair_empty_clusters<S: Scalar>(
    points: &[SparseVector<S>],
    centroids: &[Vec<S>],
    centroid_norms: &[S],
    assignments: &mut [usize],
    distances: &mut [S],
    k: usize,
) -> bool {
    let mut counts = vec![0usize; k];
    for &a in assignments.iter() {
        counts[a] += 1;
    }
    let mut repaired = false;
    for empty in 0..k {
        if counts[empty] > 0 {
            continue;
        }
        let mut donor: Option<usize> = None;
        for (i, &a) in assignments.iter().enumerate() {
            if counts[a] < 2 {
                continue;
            }
            match donor {
                Some(d) if distances[i] <= distances[d] => {}
                _ => donor = Some(i),
            }
        }
        let donor = donor.expect("a cluster with >= 2 members exists while any is empty");
        counts[assignments[donor]] -= 1;
        counts[empty] += 1;
        assignments[donor] = empty;
        distances[donor] =
            point_centroid_distance(&points[donor], &centroids[empty], centroid_norms[empty]);
        repaired = true;
    }
    repaired
}

/// Elbow-method k selection: runs k-means for each k in `[k_min, k_max]`
/// and returns the k whose `(k, inertia)` point lies farthest from the
/// chord through the range endpoints. Ties break toward smaller k.
pub fn elbow_k<S: Scalar>(
    model: &TfIdfModel<S>,
    k_min: usize,
    k_max: usize,
    seed: u64,
) -> Result<usize> {
    elbow_on_vectors(&model.vectors, model.vocabulary.len(), k_min, k_max, seed)
}

pub fn elbow_on_vectors<S: Scalar>(
    vectors: &[SparseVector<S>],
    dim: usize,
    k_min: usize,
    k_max: usize,
    seed: u64,
) -> Result<usize> {
    let n = vectors.len();
    if k_min < 1 || k_min >= k_max || k_max > n {
        return Err(Error::InvalidK { requested: k_max, n_points: n });
    }
    let mut inertias = Vec::with_capacity(k_max - k_min + 1);
    for k in k_min..=k_max {
        let config = KMeansConfig { k: Some(k), seed, ..KMeansConfig::default() };
        inertias.push(kmeans_on_vectors(vectors, dim, &config)?.inertia.to_f64());
    }
    Ok(k_min + knee_index(&inertias))
}

/// Index of the point with maximum perpendicular distance to the line
/// through the first and last points of the curve `(i, y_i)`. Ties break
/// toward the smaller index.
pub fn knee_index(curve: &[f64]) -> usize {
    if curve.len() <= 2 {
        return 0;
    }
    let x2 = (curve.len() - 1) as f64;
    let (y1, y2) = (curve[0], curve[curve.len() - 1]);
    let mut best = 0;
    let mut best_d = f64::NEG_INFINITY;
    for (i, &y) in curve.iter().enumerate() {
        let x = i as f64;
        // numerator of the point-to-line distance; the denominator is
        // constant over the scan
        let d = ((y2 - y1) * x - x2 * y + x2 * y1).abs();
        if d > best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_points(rows: &[&[f64]]) -> Vec<SparseVector<f64>> {
        rows.iter()
            .map(|row| {
                SparseVector::from_sorted(
                    row.iter()
                        .enumerate()
                        .filter(|&(_, &x)| x != 0.0)
                        .map(|(i, &x)| (i, x))
                        .collect(),
                )
            })
            .collect()
    }

    fn config(k: usize, seed: u64, normalize: bool) -> KMeansConfig {
        KMeansConfig { k: Some(k), seed, normalize, ..KMeansConfig::default() }
    }

    #[test]
    fn k1_converges_to_global_mean() {
        let points = dense_points(&[&[1.0, 0.0], &[3.0, 0.0], &[0.0, 2.0]]);
        let c = kmeans_on_vectors(&points, 2, &config(1, 7, false)).unwrap();
        assert_eq!(c.assignments, vec![0, 0, 0]);
        assert!(c.iterations <= 2);
        assert!((c.centroids[0][0] - 4.0 / 3.0).abs() < 1e-12);
        assert!((c.centroids[0][1] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn k_equals_n_gives_zero_inertia() {
        let points = dense_points(&[&[1.0, 0.0], &[2.0, 0.0], &[0.0, 3.0], &[5.0, 5.0]]);
        let c = kmeans_on_vectors(&points, 2, &config(4, 3, false)).unwrap();
        assert!(c.inertia.abs() < 1e-12);
        let mut sorted = c.assignments.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }

    #[test]
    fn two_well_separated_groups_found_for_every_seed() {
        let points = dense_points(&[&[0.0, 0.1], &[0.0, 0.2], &[5.0, 9.9], &[5.0, 10.0]]);
        for seed in 0..16 {
            let c = kmeans_on_vectors(&points, 2, &config(2, seed, false)).unwrap();
            assert_eq!(c.assignments[0], c.assignments[1], "seed {seed}");
            assert_eq!(c.assignments[2], c.assignments[3], "seed {seed}");
            assert_ne!(c.assignments[0], c.assignments[2], "seed {seed}");
        }
    }

    #[test]
    fn invalid_k_rejected() {
        let points = dense_points(&[&[1.0], &[2.0]]);
        assert!(matches!(
            kmeans_on_vectors(&points, 1, &config(0, 1, false)),
            Err(Error::InvalidK { .. })
        ));
        assert!(matches!(
            kmeans_on_vectors(&points, 1, &config(3, 1, false)),
            Err(Error::InvalidK { .. })
        ));
    }

    #[test]
    fn all_zero_vectors_collapse_to_one_cluster() {
        let points = vec![SparseVector::<f64>::empty(); 5];
        let c = kmeans_on_vectors(&points, 4, &config(3, 9, true)).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.assignments, vec![0; 5]);
        assert_eq!(c.inertia, 0.0);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let points = dense_points(&[
            &[1.0, 2.0, 0.0],
            &[1.1, 1.9, 0.0],
            &[0.0, 0.1, 4.0],
            &[0.0, 0.2, 4.2],
            &[9.0, 0.0, 1.0],
        ]);
        let a = kmeans_on_vectors(&points, 3, &config(2, 123, true)).unwrap();
        let b = kmeans_on_vectors(&points, 3, &config(2, 123, true)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn select_k_heuristic_and_clamps() {
        assert_eq!(select_k(200, 150, None), 10);
        assert_eq!(select_k(1, 150, None), 1);
        assert_eq!(select_k(1, 1, Some(9)), 1);
        assert_eq!(select_k(100, 150, Some(500)), 100);
        assert_eq!(select_k(50, 3, None), 3);
    }

    #[test]
    fn knee_of_linear_curve_is_first_point() {
        let curve: Vec<f64> = (0..8).map(|i| 100.0 - 10.0 * i as f64).collect();
        assert_eq!(knee_index(&curve), 0);
    }

    #[test]
    fn elbow_finds_three_groups() {
        // three tight groups far apart; the inertia curve kinks at k=3
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (cx, cy) in [(0.0, 0.0), (50.0, 0.0), (0.0, 50.0)] {
            for i in 0..6 {
                rows.push(vec![cx + 0.1 * i as f64, cy + 0.07 * i as f64]);
            }
        }
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        let points = dense_points(&refs);
        let k = elbow_on_vectors(&points, 2, 1, 8, 11).unwrap();
        assert_eq!(k, 3);
    }

    #[test]
    fn elbow_rejects_malformed_range() {
        let points = dense_points(&[&[1.0], &[2.0], &[3.0]]);
        assert!(matches!(
            elbow_on_vectors(&points, 1, 2, 2, 1),
            Err(Error::InvalidK { .. })
        ));
    }

    #[test]
    fn converged_assignments_are_a_fixpoint() {
        let points = dense_points(&[
            &[1.0, 0.0, 0.2],
            &[0.9, 0.1, 0.0],
            &[0.0, 5.0, 0.0],
            &[0.1, 4.8, 0.3],
            &[3.0, 3.0, 3.0],
        ]);
        let cfg = KMeansConfig { k: Some(2), seed: 5, tolerance: 0.0, normalize: false, ..KMeansConfig::default() };
        let c = kmeans_on_vectors(&points, 3, &cfg).unwrap();
        let again = assign(&points, &c.centroids, false);
        assert_eq!(again, c.assignments);
    }

    #[test]
    fn explicit_centroids_respected_and_permutation_equivariant() {
        let points = dense_points(&[&[0.0, 1.0], &[0.1, 1.1], &[4.0, 0.0], &[4.2, 0.1]]);
        let init = vec![vec![0.0, 1.0], vec![4.0, 0.0]];
        let cfg = KMeansConfig { normalize: false, ..KMeansConfig::default() };
        let c = kmeans_with_centroids(&points, 2, init.clone(), &cfg).unwrap();
        assert_eq!(c.assignments, vec![0, 0, 1, 1]);

        let permuted = vec![points[2].clone(), points[0].clone(), points[3].clone(), points[1].clone()];
        let cp = kmeans_with_centroids(&permuted, 2, init, &cfg).unwrap();
        assert_eq!(cp.assignments, vec![1, 0, 1, 0]);
        assert!((cp.inertia - c.inertia).abs() < 1e-12);
    }

    #[test]
    fn inertia_monotone_within_run() {
        let points = dense_points(&[
            &[1.0, 2.0], &[2.0, 1.0], &[8.0, 9.0], &[9.0, 8.0], &[5.0, 5.0],
            &[1.5, 1.5], &[8.5, 8.5], &[0.0, 3.0], &[7.0, 9.5], &[4.0, 6.0],
        ]);
        let cfg = KMeansConfig { k: Some(3), seed: 2, tolerance: 0.0, normalize: false, ..KMeansConfig::default() };
        let (_, trace) = kmeans_traced(&points, 2, &cfg).unwrap();
        for w in trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "inertia increased: {} -> {}", w[0], w[1]);
        }
    }
}
