use std::fmt;

use crate::quiver::BoundQuiver;

/// Entry `(i, j)` counts the paths from vertex `i` to vertex `j` avoiding the
/// relations, the trivial path included. Rows and columns follow vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    pub vertices: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.vertices.join(" "))?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Counts by dynamic programming over arrows: `from[a][v]` is the number of
/// nonzero paths that begin with `a` and end at `v`. Requires finiteness.
pub fn cartan_matrix(bq: &BoundQuiver) -> CartanMatrix {
    let n = bq.vertex_count();
    let m = bq.arrow_count();
    let mut memo: Vec<Option<Vec<i64>>> = vec![None; m];
    fn fill(bq: &BoundQuiver, a: usize, memo: &mut Vec<Option<Vec<i64>>>, depth: usize) {
        if memo[a].is_some() {
            return;
        }
        assert!(depth <= bq.arrow_count(), "infinite path: quiver violates finiteness");
        let mut row = vec![0i64; bq.vertex_count()];
        row[bq.target(a)] += 1;
        for c in bq.out_arrows(bq.target(a)) {
            if !bq.has_relation(c, a) {
                fill(bq, c, memo, depth + 1);
                for (x, y) in row.iter_mut().zip(memo[c].as_ref().unwrap()) {
                    *x += y;
                }
            }
        }
        memo[a] = Some(row);
    }
    let mut entries = vec![vec![0i64; n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] = 1;
    }
    for a in 0..m {
        fill(bq, a, &mut memo, 0);
        let s = bq.source(a);
        for (x, y) in entries[s].iter_mut().zip(memo[a].as_ref().unwrap()) {
            *x += y;
        }
    }
    CartanMatrix { vertices: bq.vertices().to_vec(), entries }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerData {
    pub det_cartan: i64,
    /// `det(E + E^T)` with `E` the inverse transpose of the Cartan matrix.
    pub det_symmetrized: i64,
}

/// Defined only when the Cartan matrix is unimodular.
pub fn euler_data(bq: &BoundQuiver) -> Option<EulerData> {
    let c = cartan_matrix(bq).entries;
    let d = det(&c);
    if d != 1 && d != -1 {
        return None;
    }
    let n = c.len();
    // inverse = adj / det; E = inverse transposed, so E[i][j] = cofactor(i, j) / det
    let mut e = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&k| k != j).map(|k| c[r][k]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            e[i][j] = (sign * det(&minor) * d) as i128;
        }
    }
    let sym: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| (e[i][j] + e[j][i]) as i64).collect()).collect();
    Some(EulerData { det_cartan: d, det_symmetrized: det(&sym) })
}

/// Fraction-free Gaussian elimination.
pub(crate) fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}
