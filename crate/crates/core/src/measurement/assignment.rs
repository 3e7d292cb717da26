//! Rectangular linear assignment via the Hungarian method with potentials.

/// Maximizes `Σ_r scores[r][assign[r]]` over injective maps from rows to
/// columns. Requires `rows <= cols`; returns the assignment and its total.
pub fn max_weight_assignment(scores: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let n = scores.len();
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    let m = scores[0].len();
    assert!(n <= m, "need rows <= cols, got {n}x{m}");
    assert!(scores.iter().all(|r| r.len() == m), "ragged score matrix");

    // minimize negated scores; 1-based with a sentinel column 0
    let cost = |i: usize, j: usize| -scores[i - 1][j - 1];
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut owner = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];

    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assign = vec![0usize; n];
    for j in 1..=m {
        if owner[j] != 0 {
            assign[owner[j] - 1] = j - 1;
        }
    }
    let total = assign.iter().enumerate().map(|(r, &c)| scores[r][c]).sum();
    (assign, total)
}
