use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    /// Matrix with `cols` columns and no rows yet.
    pub fn with_cols(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * &o[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * &self[(i, j)];
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let t = k * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let t = k * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form with transforms.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Unimodular row transform.
    pub u: IntMatrix,
    /// Diagonal form `U * M * V`.
    pub s: IntMatrix,
    /// Unimodular column transform.
    pub v: IntMatrix,
    /// Inverse of `v`.
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form `U M V = S`, with `d_i | d_{i+1}` and `d_i >= 0`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let r = smith(m);
    (r.u, r.s, r.v)
}

/// Full Smith decomposition including `V^{-1}`.
pub fn smith(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    // v_inv receives the inverse column operations as row operations
    let mut vi = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        vi.swap_rows(t, pj);

        let mut dirty = false;
        for i in t + 1..rows {
            if s[(i, t)].is_zero() {
                continue;
            }
            let q = -s[(i, t)].div_floor(&s[(t, t)]);
            s.add_row(i, t, &q);
            u.add_row(i, t, &q);
            dirty |= !s[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            if s[(t, j)].is_zero() {
                continue;
            }
            let q = -s[(t, j)].div_floor(&s[(t, t)]);
            s.add_col(j, t, &q);
            v.add_col(j, t, &q);
            // V' = V E with E = I + q e_t e_j^T, so V'^{-1} = (I - q e_t e_j^T) V^{-1}
            vi.add_row(t, j, &(-&q));
            dirty |= !s[(t, j)].is_zero();
        }
        if dirty {
            continue;
        }
        // divisibility of the trailing block by the pivot
        let mut fixed = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !s[(i, j)].is_multiple_of(&s[(t, t)]) {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
    Smith { u, s, v, v_inv: vi, rank }
}

/// Basis (as rows) of the left kernel `{ c : c M = 0 }`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let sm = smith(m);
    (sm.rank..m.rows()).map(|i| sm.u.row(i).to_vec()).collect()
}
