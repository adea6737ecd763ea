//! Matrix pairs over an arbitrary base pair: permutation-track determinants,
//! dagger determinants and adjoints, expansion identities, the
//! characteristic polynomial through the doubled pair, eigenvalues, the
//! general and special linear monoids, involutions, and traces.

use crate::pairs::{dag, leq, Doubled, Pair, RelKind};
use crate::poly::{self, UPoly};
use crate::{KernelError, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat {
            rows: self.cols,
            cols: self.rows,
            data: (0..self.cols)
                .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
                .map(|(i, j)| self.at(i, j).clone())
                .collect(),
        }
    }

    /// Minor deleting one row and one column.
    pub fn minor(&self, del_row: usize, del_col: usize) -> Mat<T> {
        self.submatrix_excluding(&[del_row], &[del_col])
    }

    pub fn submatrix_excluding(&self, del_rows: &[usize], del_cols: &[usize]) -> Mat<T> {
        let rs: Vec<usize> = (0..self.rows).filter(|i| !del_rows.contains(i)).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|j| !del_cols.contains(j)).collect();
        Mat {
            rows: rs.len(),
            cols: cs.len(),
            data: rs
                .iter()
                .flat_map(|i| cs.iter().map(move |j| self.at(*i, *j).clone()))
                .collect(),
        }
    }

    pub fn submatrix_selecting(&self, rows: &[usize], cols: &[usize]) -> Mat<T> {
        Mat {
            rows: rows.len(),
            cols: cols.len(),
            data: rows
                .iter()
                .flat_map(|i| cols.iter().map(move |j| self.at(*i, *j).clone()))
                .collect(),
        }
    }
}

pub fn identity<P: Pair>(p: &P, n: usize) -> Mat<P::El> {
    Mat {
        rows: n,
        cols: n,
        data: (0..n)
            .flat_map(|i| (0..n).map(move |j| if i == j { true } else { false }))
            .map(|d| if d { p.one() } else { p.zero() })
            .collect(),
    }
}

pub fn mat_add<P: Pair>(p: &P, a: &Mat<P::El>, b: &Mat<P::El>) -> Mat<P::El> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| p.add(x, y))
            .collect(),
    }
}

pub fn mat_mul<P: Pair>(p: &P, a: &Mat<P::El>, b: &Mat<P::El>) -> Mat<P::El> {
    assert_eq!(a.cols, b.rows);
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = p.zero();
            for k in 0..a.cols {
                acc = p.add(&acc, &p.mul(a.at(i, k), b.at(k, j)));
            }
            data.push(acc);
        }
    }
    Mat {
        rows: a.rows,
        cols: b.cols,
        data,
    }
}

pub fn scalar_mul<P: Pair>(p: &P, c: &P::El, a: &Mat<P::El>) -> Mat<P::El> {
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().map(|x| p.mul(c, x)).collect(),
    }
}

pub fn mat_vec<P: Pair>(p: &P, a: &Mat<P::El>, v: &[P::El]) -> Vec<P::El> {
    (0..a.rows)
        .map(|i| {
            let mut acc = p.zero();
            for j in 0..a.cols {
                acc = p.add(&acc, &p.mul(a.at(i, j), &v[j]));
            }
            acc
        })
        .collect()
}

pub fn is_tangible_matrix<P: Pair>(p: &P, a: &Mat<P::El>) -> bool {
    a.data.iter().all(|x| p.is_tangible(x))
}

pub fn is_null_matrix<P: Pair>(p: &P, a: &Mat<P::El>) -> bool {
    a.data.iter().all(|x| p.is_null(x))
}

/// Permutations of `0..n` with parity; refused beyond 5 to keep the
/// factorial enumeration honest.
pub fn permutations_with_parity(n: usize) -> Result<Vec<(Vec<usize>, bool)>> {
    if n > 5 {
        return Err(KernelError::TooLarge(format!(
            "determinant track enumeration at n = {n}"
        )));
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn go(k: usize, perm: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>) {
        let n = perm.len();
        if k == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((perm.clone(), inversions % 2 == 0));
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            go(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    go(0, &mut perm, &mut out);
    Ok(out)
}

fn track<P: Pair>(p: &P, a: &Mat<P::El>, perm: &[usize]) -> P::El {
    let mut acc = p.one();
    for (col, row) in perm.iter().enumerate() {
        acc = p.mul(&acc, a.at(*row, col));
    }
    acc
}

/// Sum of even-permutation tracks.
pub fn det_plus<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<P::El> {
    signed_det(p, a, true)
}

/// Sum of odd-permutation tracks.
pub fn det_minus<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<P::El> {
    signed_det(p, a, false)
}

fn signed_det<P: Pair>(p: &P, a: &Mat<P::El>, even: bool) -> Result<P::El> {
    if !a.is_square() {
        return Err(KernelError::Invalid(
            "determinant of a non-square matrix".into(),
        ));
    }
    let mut acc = p.zero();
    for (perm, e) in permutations_with_parity(a.rows)? {
        if e == even {
            acc = p.add(&acc, &track(p, a, &perm));
        }
    }
    Ok(acc)
}

/// Exact singularity: the even and odd track sums coincide.
pub fn is_singular<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<bool> {
    Ok(det_plus(p, a)? == det_minus(p, a)?)
}

/// `|A|^dag = Det+ + (Det-)^dag`; the dagger never repeats inside.
pub fn dag_det<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<P::El> {
    Ok(p.add(&det_plus(p, a)?, &dag(p, &det_minus(p, a)?)?))
}

/// `^dag|A| = (Det+)^dag + Det-`.
pub fn dag_det_op<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<P::El> {
    Ok(p.add(&dag(p, &det_plus(p, a)?)?, &det_minus(p, a)?))
}

/// Null dagger determinant; the singularity notion the rank machinery uses.
pub fn is_dag_singular<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<bool> {
    Ok(p.is_null(&dag_det(p, a)?))
}

/// The dagger adjoint: entry `(i, j)` is the dagger determinant of the
/// `(j, i)` minor, with the dagger moved across by the parity of `i + j`.
pub fn dag_adjoint<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<Mat<P::El>> {
    if !a.is_square() || a.rows < 2 {
        return Err(KernelError::Invalid(
            "adjoint needs a square matrix of size >= 2".into(),
        ));
    }
    let n = a.rows;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let minor = a.minor(j, i);
            // 1-based parity of i + j equals 0-based parity.
            let v = if (i + j) % 2 == 0 {
                dag_det(p, &minor)?
            } else {
                dag_det_op(p, &minor)?
            };
            data.push(v);
        }
    }
    Ok(Mat {
        rows: n,
        cols: n,
        data,
    })
}

/// Which readings of the expansion along row `i` hold exactly.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LaplaceReport {
    /// `sum_j adj[i][j] * a[i][j]` against `|A|^dag` / `^dag|A|`.
    pub literal_dag: bool,
    pub literal_opdag: bool,
    /// `sum_j a[i][j] * adj[j][i]` against `|A|^dag` / `^dag|A|`.
    pub transposed_dag: bool,
    pub transposed_opdag: bool,
}

pub fn laplace_check<P: Pair>(p: &P, a: &Mat<P::El>, i: usize) -> Result<LaplaceReport> {
    let adj = dag_adjoint(p, a)?;
    let n = a.rows;
    let mut literal = p.zero();
    let mut transposed = p.zero();
    for j in 0..n {
        literal = p.add(&literal, &p.mul(adj.at(i, j), a.at(i, j)));
        transposed = p.add(&transposed, &p.mul(a.at(i, j), adj.at(j, i)));
    }
    let dd = dag_det(p, a)?;
    let od = dag_det_op(p, a)?;
    Ok(LaplaceReport {
        literal_dag: literal == dd,
        literal_opdag: literal == od,
        transposed_dag: transposed == dd,
        transposed_opdag: transposed == od,
    })
}

fn subsets_of_size(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    go(0, n, m, &mut cur, &mut out);
    out
}

/// Which readings of the block expansion along the row set `I` hold: the
/// dagger placement switches on either the parity of the index sums or the
/// parity of their product (both 1-based), against either determinant.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CauchyBinetReport {
    pub sum_parity_dag: bool,
    pub sum_parity_opdag: bool,
    pub product_parity_dag: bool,
    pub product_parity_opdag: bool,
}

pub fn cauchy_binet_check<P: Pair>(
    p: &P,
    a: &Mat<P::El>,
    rows: &[usize],
) -> Result<CauchyBinetReport> {
    if !a.is_square() {
        return Err(KernelError::Invalid(
            "block expansion needs a square matrix".into(),
        ));
    }
    let n = a.rows;
    let m = rows.len();
    if m == 0 || m >= n {
        return Err(KernelError::Invalid(
            "row set must be a proper nonempty subset".into(),
        ));
    }
    let expand = |product_parity: bool| -> Result<P::El> {
        let mut acc = p.zero();
        for cols in subsets_of_size(n, m) {
            let kept = a.submatrix_selecting(rows, &cols);
            let comp = a.submatrix_excluding(rows, &cols);
            let si: usize = rows.iter().map(|i| i + 1).sum();
            let sj: usize = cols.iter().map(|j| j + 1).sum();
            let even = if product_parity {
                (si * sj) % 2 == 0
            } else {
                (si + sj) % 2 == 0
            };
            let (d1, d2) = if even {
                (dag_det(p, &comp)?, dag_det_op(p, &comp)?)
            } else {
                (dag_det_op(p, &comp)?, dag_det(p, &comp)?)
            };
            let kp = det_plus(p, &kept)?;
            let km = det_minus(p, &kept)?;
            acc = p.add(&acc, &p.add(&p.mul(&kp, &d1), &p.mul(&km, &d2)));
        }
        Ok(acc)
    };
    let sum_side = expand(false)?;
    let prod_side = expand(true)?;
    let dd = dag_det(p, a)?;
    let od = dag_det_op(p, a)?;
    Ok(CauchyBinetReport {
        sum_parity_dag: sum_side == dd,
        sum_parity_opdag: sum_side == od,
        product_parity_dag: prod_side == dd,
        product_parity_opdag: prod_side == od,
    })
}

/// Quasi-identity: each diagonal entry is one plus a null, every
/// off-diagonal entry is null.
pub fn is_quasi_identity<P: Pair>(p: &P, a: &Mat<P::El>) -> bool {
    if !a.is_square() {
        return false;
    }
    let nl = crate::pairs::nulls(p);
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i == j {
                let d = a.at(i, i);
                if !nl.iter().any(|h| p.add(&p.one(), h) == *d) {
                    return false;
                }
            } else if !p.is_null(a.at(i, j)) {
                return false;
            }
        }
    }
    true
}

/// Characteristic polynomial of `A`, computed as the dagger determinant of
/// the doubled lift with the variable in the negative slot.
pub fn char_poly<P: Pair + Clone>(
    p: &P,
    a: &Mat<P::El>,
) -> Result<(Doubled<P>, UPoly<(P::El, P::El)>)> {
    let d = Doubled::new(p.clone());
    let n = a.rows;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e: UPoly<(P::El, P::El)> = poly::constant(&d, (a.at(i, j).clone(), p.zero()));
            if i == j {
                e = poly::poly_add(&d, &e, &poly::monomial(&d, 1, (p.zero(), p.one())));
            }
            data.push(e);
        }
    }
    let m = Mat {
        rows: n,
        cols: n,
        data,
    };
    let pp = poly::PolyPair::new(d.clone());
    let f = dag_det(&pp, &m)?;
    Ok((d, f))
}

/// Substitute the doubled lift of `A` into its characteristic polynomial
/// and test that every entry lands in the doubled null part.
pub fn cayley_hamilton_check<P: Pair + Clone>(p: &P, a: &Mat<P::El>) -> Result<bool> {
    let (d, f) = char_poly(p, a)?;
    let n = a.rows;
    let lifted = Mat {
        rows: n,
        cols: n,
        data: a.data.iter().map(|x| (x.clone(), p.zero())).collect(),
    };
    let mut acc: Mat<(P::El, P::El)> = Mat {
        rows: n,
        cols: n,
        data: vec![d.zero(); n * n],
    };
    let mut power = identity(&d, n);
    let mut at = 0u32;
    for (k, c) in &f.terms {
        while at < *k {
            power = mat_mul(&d, &power, &lifted);
            at += 1;
        }
        acc = mat_add(&d, &acc, &scalar_mul(&d, c, &power));
    }
    Ok(acc.data.iter().all(|x| d.is_null(x)))
}

/// All pairs `(alpha, v)` with `alpha` tangible, `v` carrying at least one
/// tangible coordinate, and `A v` surpassing `alpha v` componentwise.
pub fn eigen_search<P: Pair>(
    p: &P,
    a: &Mat<P::El>,
    rel: RelKind,
) -> Result<Vec<(P::El, Vec<P::El>)>> {
    let els = p.elements().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "enumerable".into(),
    })?;
    let n = a.rows;
    let mut vectors: Vec<Vec<P::El>> = vec![vec![]];
    for _ in 0..n {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut v2 = v.clone();
                    v2.push(e.clone());
                    v2
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for alpha in els.iter().filter(|e| p.is_tangible(e)) {
        for v in &vectors {
            if !v.iter().any(|x| p.is_tangible(x)) {
                continue;
            }
            let av = mat_vec(p, a, v);
            let mut ok = true;
            for i in 0..n {
                if !leq(p, rel, &p.mul(alpha, &v[i]), &av[i])? {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push((alpha.clone(), v.clone()));
            }
        }
    }
    Ok(out)
}

/// Search a two-sided quasi-inverse over the full matrix space.
pub fn gl_membership<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<Option<Mat<P::El>>> {
    let els = p.elements().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "enumerable".into(),
    })?;
    let n = a.rows;
    let mut cands: Vec<Vec<P::El>> = vec![vec![]];
    for _ in 0..n * n {
        cands = cands
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut v2 = v.clone();
                    v2.push(e.clone());
                    v2
                })
            })
            .collect();
    }
    for data in cands {
        let b = Mat {
            rows: n,
            cols: n,
            data,
        };
        if is_quasi_identity(p, &mat_mul(p, a, &b)) && is_quasi_identity(p, &mat_mul(p, &b, a)) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Special linear membership: a quasi-inverse exists and the dagger
/// determinant surpasses one.
pub fn sl_membership<P: Pair>(p: &P, a: &Mat<P::El>, rel: RelKind) -> Result<bool> {
    Ok(gl_membership(p, a)?.is_some() && leq(p, rel, &p.one(), &dag_det(p, a)?)?)
}

/// The symplectic involution on even-sized matrices over a uniquely negated
/// base: block transpose with the dagger moved between off-diagonal blocks.
pub fn symplectic<P: Pair>(p: &P, a: &Mat<P::El>) -> Result<Mat<P::El>> {
    if !a.is_square() || a.rows % 2 != 0 {
        return Err(KernelError::Invalid(
            "symplectic needs an even square matrix".into(),
        ));
    }
    let du = p.dag_unit().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "property-n".into(),
    })?;
    if p.mul(&du, &du) != p.one() {
        return Err(KernelError::Unsupported(
            "symplectic involution needs an involutive negation witness".into(),
        ));
    }
    let m = a.rows / 2;
    let block = |bi: usize, bj: usize| -> Mat<P::El> {
        Mat {
            rows: m,
            cols: m,
            data: (0..m)
                .flat_map(|i| (0..m).map(move |j| (i, j)))
                .map(|(i, j)| a.at(bi * m + i, bj * m + j).clone())
                .collect(),
        }
    };
    let (p11, p12, p21, p22) = (block(0, 0), block(0, 1), block(1, 0), block(1, 1));
    let tl = p22.transpose();
    let tr = scalar_mul(p, &du, &p12.transpose());
    let bl = scalar_mul(p, &du, &p21.transpose());
    let br = p11.transpose();
    let mut data = Vec::with_capacity(a.rows * a.cols);
    for i in 0..m {
        for j in 0..m {
            data.push(tl.at(i, j).clone());
        }
        for j in 0..m {
            data.push(tr.at(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            data.push(bl.at(i, j).clone());
        }
        for j in 0..m {
            data.push(br.at(i, j).clone());
        }
    }
    Ok(Mat {
        rows: a.rows,
        cols: a.cols,
        data,
    })
}

pub fn trace<P: Pair>(p: &P, a: &Mat<P::El>) -> P::El {
    let mut acc = p.zero();
    for i in 0..a.rows.min(a.cols) {
        acc = p.add(&acc, a.at(i, i));
    }
    acc
}

pub fn trace_cyclicity_check<P: Pair>(p: &P, a: &Mat<P::El>, b: &Mat<P::El>) -> bool {
    trace(p, &mat_mul(p, a, b)) == trace(p, &mat_mul(p, b, a))
}

/// All square matrices of size `n` over the carrier.
pub fn all_matrices<P: Pair>(p: &P, n: usize) -> Result<Vec<Mat<P::El>>> {
    let els = p.elements().ok_or_else(|| KernelError::Undecidable {
        instance: p.name().to_string(),
        needed: "enumerable".into(),
    })?;
    let mut out: Vec<Vec<P::El>> = vec![vec![]];
    for _ in 0..n * n {
        out = out
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut v2 = v.clone();
                    v2.push(e.clone());
                    v2
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|data| Mat {
            rows: n,
            cols: n,
            data,
        })
        .collect())
}

/// Parse a matrix from a JSON array of element-name rows.
pub fn parse_matrix<P: Pair>(p: &P, json: &str) -> Result<Mat<P::El>> {
    let rows: Vec<Vec<String>> = serde_json::from_str(json).map_err(|e| KernelError::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(KernelError::Invalid(
            "matrix rows must be nonempty and aligned".into(),
        ));
    }
    let mut data = Vec::new();
    for r in &rows {
        for name in r {
            data.push(p.parse_el(name).ok_or_else(|| KernelError::Parse {
                location: name.clone(),
                message: "unknown element".into(),
            })?);
        }
    }
    Ok(Mat {
        rows: rows.len(),
        cols: rows[0].len(),
        data,
    })
}

pub fn matrix_names<P: Pair>(p: &P, a: &Mat<P::El>) -> Vec<Vec<String>> {
    (0..a.rows)
        .map(|i| (0..a.cols).map(|j| p.el_name(a.at(i, j))).collect())
        .collect()
}
