//! Integral homology of normalized chains, Smith normal form, induced maps
//! and path components.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::category::FinCategory;
use crate::error::{Error, Result};
use crate::nerve::CategoryNerve;
use crate::simplex::{FinSSet, NdId, SMap, SimplexRef, TruncatedSSet};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn matmul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// `D = U·M·V` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`,
/// all diagonal entries non-negative.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: Matrix,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

struct Reducer {
    d: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.d.swap(i, j);
            self.u.swap(i, j);
            for row in &mut self.u_inv {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.d {
                row.swap(i, j);
            }
            for row in &mut self.v {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    /// row_i += k·row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let t = &self.d[j][c] * k;
            self.d[i][c] += t;
        }
        for c in 0..self.rows {
            let t = &self.u[j][c] * k;
            self.u[i][c] += t;
        }
        for r in 0..self.rows {
            let t = &self.u_inv[r][i] * k;
            self.u_inv[r][j] -= t;
        }
    }

    /// col_i += k·col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let t = &self.d[r][j] * k;
            self.d[r][i] += t;
        }
        for r in 0..self.cols {
            let t = &self.v[r][j] * k;
            self.v[r][i] += t;
        }
        for c in 0..self.cols {
            let t = &self.v_inv[i][c] * k;
            self.v_inv[j][c] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.d[i] {
            *x = -x.clone();
        }
        for x in &mut self.u[i] {
            *x = -x.clone();
        }
        for row in &mut self.u_inv {
            row[i] = -row[i].clone();
        }
    }
}

pub fn smith_normal_form(m: &Matrix, rows: usize, cols: usize) -> Snf {
    let mut r = Reducer {
        d: m.clone(),
        u: identity_matrix(rows),
        u_inv: identity_matrix(rows),
        v: identity_matrix(cols),
        v_inv: identity_matrix(cols),
        rows,
        cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !r.d[i][j].is_zero() && best.is_none_or(|(a, b)| r.d[i][j].abs() < r.d[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        r.swap_rows(t, bi);
        r.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !r.d[i][t].is_zero() {
                    let q = r.d[i][t].div_floor(&r.d[t][t]);
                    r.add_row(i, t, &-q);
                    if !r.d[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !r.d[t][j].is_zero() {
                    let q = r.d[t][j].div_floor(&r.d[t][t]);
                    r.add_col(j, t, &-q);
                    if !r.d[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !r.d[i][t].is_zero() && r.d[i][t].abs() < r.d[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !r.d[t][j].is_zero() && r.d[t][j].abs() < r.d[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                r.swap_rows(t, best.0);
                r.swap_cols(t, best.1);
                continue;
            }
            let p = r.d[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !r.d[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.d[t][t].is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    Snf { d: r.d, u: r.u, u_inv: r.u_inv, v: r.v, v_inv: r.v_inv, rank: t }
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/tᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| u64::try_from(t).unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A sparse integer matrix stored by columns.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> Matrix {
        let mut m = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = BigInt::from(v);
            }
        }
        m
    }

    fn from_entries(rows: usize, columns: Vec<HashMap<usize, i64>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                let mut v: Vec<(usize, i64)> = c.into_iter().filter(|&(_, x)| x != 0).collect();
                v.sort_unstable();
                v
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    /// `self · other`, exact.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, b) in col {
                    for &(r, a) in &self.columns[k] {
                        *acc.entry(r).or_insert(0) += a * b;
                    }
                }
                acc
            })
            .collect();
        SparseMatrix::from_entries(self.rows, columns)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Row-major plain text: one line per row, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let d = self.to_dense();
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for row in d {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Normalized chains: `C_n` is free on the non-degenerate `n`-simplices and
/// degenerate faces are dropped from boundaries.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub counts: Vec<usize>,
    /// `boundaries[n]: C_n → C_{n−1}`; `boundaries[0]` has no rows.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn of(x: &FinSSet) -> Self {
        let counts = x.counts();
        let mut boundaries = Vec::new();
        for (n, &c) in counts.iter().enumerate() {
            if n == 0 {
                boundaries.push(SparseMatrix { rows: 0, cols: c, columns: vec![Vec::new(); c] });
                continue;
            }
            let columns = x
                .ids(n)
                .map(|id| {
                    let mut acc = HashMap::new();
                    for (i, f) in x.faces_of(id).iter().enumerate() {
                        if f.word.is_empty() {
                            *acc.entry(f.base.idx).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
                        }
                    }
                    acc
                })
                .collect();
            boundaries.push(SparseMatrix::from_entries(counts[n - 1], columns));
        }
        ChainComplex { counts, boundaries }
    }

    /// The mapping cone of the chain map of `f`: `C_n = X_{n−1} ⊕ Y_n`,
    /// `d(x, y) = (−∂x, f(x) + ∂y)`.
    pub fn cone(f: &SMap) -> Self {
        let cx = ChainComplex::of(f.source());
        let cy = ChainComplex::of(f.target());
        let top = cx.counts.len().max(cy.counts.len().saturating_sub(1)) + 1;
        let xc = |n: usize| cx.counts.get(n).copied().unwrap_or(0);
        let yc = |n: usize| cy.counts.get(n).copied().unwrap_or(0);
        let counts: Vec<usize> = (0..top).map(|n| if n == 0 { yc(0) } else { xc(n - 1) + yc(n) }).collect();
        let mut boundaries = Vec::new();
        for n in 0..top {
            if n == 0 {
                boundaries.push(SparseMatrix { rows: 0, cols: counts[0], columns: vec![Vec::new(); counts[0]] });
                continue;
            }
            // target C_{n-1} = X_{n-2} ⊕ Y_{n-1}
            let x_off = if n >= 2 { xc(n - 2) } else { 0 };
            let mut columns: Vec<HashMap<usize, i64>> = Vec::new();
            for i in 0..xc(n - 1) {
                let mut acc = HashMap::new();
                if n >= 2 {
                    for &(r, v) in &cx.boundaries[n - 1].columns[i] {
                        acc.insert(r, -v);
                    }
                }
                let img = f.image(NdId::new(n - 1, i));
                if !img.is_degenerate() {
                    *acc.entry(x_off + img.base.idx).or_insert(0) += 1;
                }
                columns.push(acc);
            }
            for j in 0..yc(n) {
                let mut acc = HashMap::new();
                for &(r, v) in &cy.boundaries[n].columns[j] {
                    acc.insert(x_off + r, v);
                }
                columns.push(acc);
            }
            boundaries.push(SparseMatrix::from_entries(counts[n - 1], columns));
        }
        ChainComplex { counts, boundaries }
    }

    /// Checks `∂_{n−1} ∘ ∂_n = 0` in every degree.
    pub fn boundary_squared_is_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|n| self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
    }

    /// `H_n` for `n < degrees`.
    pub fn homology(&self, degrees: usize) -> Vec<HomologyGroup> {
        let top = self.counts.len();
        let facts: Vec<(usize, Vec<BigInt>)> = (0..=top.min(degrees))
            .map(|n| if n == 0 || n >= top { (0, Vec::new()) } else { invariant_factors(&self.boundaries[n]) })
            .collect();
        (0..degrees)
            .map(|n| {
                if n >= top {
                    return HomologyGroup::zero();
                }
                let (rank_out, _) = &facts[n];
                let (rank_in, torsion) = facts.get(n + 1).cloned().unwrap_or((0, Vec::new()));
                HomologyGroup { rank: self.counts[n] - rank_out - rank_in, torsion }
            })
            .collect()
    }
}

/// Rank and non-unit invariant factors of a sparse matrix. Unit pivots are
/// eliminated sparsely; the remainder goes through the exact dense form.
pub fn invariant_factors(m: &SparseMatrix) -> (usize, Vec<BigInt>) {
    match sparse_unit_elimination(m) {
        Some((rank, rest)) => {
            let snf = smith_normal_form(&rest.to_dense(), rest.rows, rest.cols);
            let diag = snf.diagonal();
            let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
            (rank + snf.rank, torsion)
        }
        None => {
            let snf = smith_normal_form(&m.to_dense(), m.rows, m.cols);
            let torsion = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
            (snf.rank, torsion)
        }
    }
}

/// Eliminates `±1` pivots and returns their count with the leftover matrix
/// (compacted). `None` on arithmetic overflow.
fn sparse_unit_elimination(m: &SparseMatrix) -> Option<(usize, SparseMatrix)> {
    let mut cols: Vec<HashMap<usize, i64>> = m.columns.iter().map(|c| c.iter().copied().collect()).collect();
    let mut row_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            row_index[r].insert(c);
        }
    }
    let mut queue: BTreeSet<(usize, usize)> = cols.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(i, c)| (c.len(), i)).collect();
    let mut alive = vec![true; cols.len()];
    let mut rank = 0;
    while let Some((len, c)) = queue.pop_first() {
        if !alive[c] || cols[c].len() != len || cols[c].is_empty() {
            continue;
        }
        let pivot = cols[c]
            .iter()
            .filter(|(_, v)| v.abs() == 1)
            .min_by_key(|(r, _)| (row_index[**r].len(), **r))
            .map(|(&r, &v)| (r, v));
        let Some((r, u)) = pivot else { continue };
        let pivot_col: Vec<(usize, i64)> = cols[c].iter().map(|(&a, &b)| (a, b)).collect();
        let others: Vec<usize> = row_index[r].iter().copied().filter(|&o| o != c).collect();
        for o in others {
            let a = cols[o][&r];
            let factor = a.checked_mul(u)?;
            for &(pr, pv) in &pivot_col {
                let delta = factor.checked_mul(pv)?;
                let e = cols[o].entry(pr).or_insert(0);
                *e = e.checked_sub(delta)?;
                if *e == 0 {
                    cols[o].remove(&pr);
                    row_index[pr].remove(&o);
                } else {
                    row_index[pr].insert(o);
                }
            }
            if !cols[o].is_empty() {
                queue.insert((cols[o].len(), o));
            }
        }
        for &(pr, _) in &pivot_col {
            row_index[pr].remove(&c);
        }
        cols[c].clear();
        alive[c] = false;
        rank += 1;
    }
    let remaining: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let rows: BTreeSet<usize> = remaining.iter().flat_map(|&c| cols[c].keys().copied()).collect();
    let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let columns = remaining
        .iter()
        .map(|&c| {
            let mut v: Vec<(usize, i64)> = cols[c].iter().map(|(r, x)| (row_pos[r], *x)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    Some((rank, SparseMatrix { rows: rows.len(), cols: remaining.len(), columns }))
}

/// Homology of a finite simplicial set, in every degree up to its dimension.
pub fn homology(x: &FinSSet) -> Vec<HomologyGroup> {
    let degrees = x.dim().map_or(1, |d| d + 1);
    ChainComplex::of(x).homology(degrees)
}

/// Homology of a truncated object, in the degrees where it is reliable.
pub fn homology_truncated(x: &TruncatedSSet) -> Vec<HomologyGroup> {
    ChainComplex::of(&x.space).homology(x.homology_bound())
}

/// Presentation data for `H_n` used to read off classes of cycles.
#[derive(Clone, Debug)]
struct HomologyBasis {
    group: HomologyGroup,
    /// `r_n`, the rank of `∂_n`.
    rank_out: usize,
    v_inv: Matrix,
    /// kernel coordinates → adapted coordinates
    u_rel: Matrix,
    /// adapted coordinates → kernel coordinates
    u_rel_inv: Matrix,
    /// invariant factors of the relations, one per adapted coordinate
    /// (`0` for free coordinates)
    moduli: Vec<BigInt>,
    v: Matrix,
    count: usize,
}

impl HomologyBasis {
    fn new(cc: &ChainComplex, n: usize) -> Self {
        let count = cc.counts.get(n).copied().unwrap_or(0);
        let dn = if n < cc.boundaries.len() { cc.boundaries[n].to_dense() } else { Vec::new() };
        let rows_n = if n == 0 { 0 } else { cc.counts[n - 1] };
        let snf = if n == 0 || n >= cc.boundaries.len() {
            smith_normal_form(&Vec::new(), 0, count)
        } else {
            smith_normal_form(&dn, rows_n, count)
        };
        let rank_out = snf.rank;
        let k = count - rank_out;
        // relations: V⁻¹ ∂_{n+1}, restricted to kernel coordinates
        let (rel, rel_cols) = if n + 1 < cc.boundaries.len() {
            let b = cc.boundaries[n + 1].to_dense();
            let cols = cc.counts[n + 1];
            let full = matmul(&snf.v_inv, &b, count, cols);
            (full[rank_out..].to_vec(), cols)
        } else {
            (vec![Vec::new(); k], 0)
        };
        let rel_snf = smith_normal_form(&rel, k, rel_cols);
        let mut moduli = vec![BigInt::zero(); k];
        for (i, d) in rel_snf.diagonal().into_iter().enumerate() {
            moduli[i] = d;
        }
        let torsion: Vec<BigInt> = moduli.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        let group = HomologyGroup { rank: k - rel_snf.rank, torsion };
        HomologyBasis { group, rank_out, v_inv: snf.v_inv, u_rel: rel_snf.u, u_rel_inv: rel_snf.u_inv, moduli, v: snf.v, count }
    }

    /// Indices of adapted coordinates that generate `H_n` (torsion first, then free).
    fn generators(&self) -> Vec<usize> {
        (0..self.moduli.len()).filter(|&i| !self.moduli[i].is_one()).collect()
    }

    /// A cycle representing adapted coordinate `i`.
    fn cycle(&self, i: usize) -> Vec<BigInt> {
        let k = self.moduli.len();
        let kernel: Vec<BigInt> = (0..k).map(|r| self.u_rel_inv[r][i].clone()).collect();
        (0..self.count)
            .map(|row| {
                let mut s = BigInt::zero();
                for (j, c) in kernel.iter().enumerate() {
                    if !c.is_zero() {
                        s += &self.v[row][self.rank_out + j] * c;
                    }
                }
                s
            })
            .collect()
    }

    /// Coordinates of the class of a cycle on the generators.
    fn class_of(&self, z: &[BigInt]) -> Vec<BigInt> {
        let coords: Vec<BigInt> = (self.rank_out..self.count)
            .map(|r| {
                let mut s = BigInt::zero();
                for (c, zc) in z.iter().enumerate() {
                    if !zc.is_zero() {
                        s += &self.v_inv[r][c] * zc;
                    }
                }
                s
            })
            .collect();
        let k = coords.len();
        self.generators()
            .into_iter()
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, c) in coords.iter().enumerate().take(k) {
                    if !c.is_zero() {
                        s += &self.u_rel[i][j] * c;
                    }
                }
                if self.moduli[i].is_zero() {
                    s
                } else {
                    s.mod_floor(&self.moduli[i])
                }
            })
            .collect()
    }

    fn relation_moduli(&self) -> Vec<BigInt> {
        self.generators().into_iter().map(|i| self.moduli[i].clone()).collect()
    }
}

/// The map induced by `f` on `H_n`, on the generators of both sides.
#[derive(Clone, Debug)]
pub struct InducedDegree {
    pub degree: usize,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    /// rows: target generators, columns: source generators
    pub matrix: Matrix,
    pub is_isomorphism: bool,
}

/// Induced maps on homology in degrees `< degrees`, with iso verdicts.
pub fn induced_map_homology(f: &SMap, degrees: usize) -> Vec<InducedDegree> {
    let cx = ChainComplex::of(f.source());
    let cy = ChainComplex::of(f.target());
    (0..degrees)
        .map(|n| {
            let bx = HomologyBasis::new(&cx, n);
            let by = HomologyBasis::new(&cy, n);
            let gens = bx.generators();
            let columns: Vec<Vec<BigInt>> = gens
                .iter()
                .map(|&i| {
                    let z = bx.cycle(i);
                    let mut fz = vec![BigInt::zero(); by.count];
                    for (c, coef) in z.iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        let img = f.image(NdId::new(n, c));
                        if !img.is_degenerate() {
                            fz[img.base.idx] += coef;
                        }
                    }
                    by.class_of(&fz)
                })
                .collect();
            let rows = by.generators().len();
            let matrix: Matrix = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
            let iso = bx.group == by.group && surjective(&matrix, &by.relation_moduli(), gens.len());
            InducedDegree { degree: n, source: bx.group, target: by.group, matrix, is_isomorphism: iso }
        })
        .collect()
}

/// Whether the columns of `m` together with the relations `moduli` span `Z^rows`.
fn surjective(m: &Matrix, moduli: &[BigInt], cols: usize) -> bool {
    let rows = moduli.len();
    if rows == 0 {
        return true;
    }
    let mut big: Matrix = m.clone();
    for (i, row) in big.iter_mut().enumerate() {
        for (j, md) in moduli.iter().enumerate() {
            row.push(if i == j { md.clone() } else { BigInt::zero() });
        }
    }
    let snf = smith_normal_form(&big, rows, cols + rows);
    snf.rank == rows && snf.diagonal().iter().all(|d| d.is_one())
}

/// Whether `f` induces isomorphisms on `H_n` for all `n ≤ q`, decided by
/// the vanishing of the homology of its mapping cone in degrees `≤ q + 1`.
pub fn cone_iso_through(f: &SMap, q: usize) -> bool {
    ChainComplex::cone(f).homology(q + 2).iter().all(HomologyGroup::is_zero)
}

/// Path components: their number and a label per vertex.
pub fn pi0(x: &FinSSet) -> (usize, Vec<usize>) {
    let n = x.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for e in x.ids(1) {
        let fs = x.faces_of(e);
        let (a, b) = (find(&mut parent, fs[0].base.idx), find(&mut parent, fs[1].base.idx));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut labels = vec![usize::MAX; n];
    let mut next = 0;
    let mut root_label: HashMap<usize, usize> = HashMap::new();
    for (v, label) in labels.iter_mut().enumerate() {
        let r = find(&mut parent, v);
        *label = *root_label.entry(r).or_insert_with(|| {
            next += 1;
            next - 1
        });
    }
    (next, labels)
}

/// The map on path components induced by `f`, as component labels.
pub fn pi0_map(f: &SMap) -> Vec<usize> {
    let (_, sl) = pi0(f.source());
    let (sc, _) = pi0(f.source());
    let (_, tl) = pi0(f.target());
    let mut out = vec![usize::MAX; sc];
    for v in f.source().ids(0) {
        out[sl[v.idx]] = tl[f.image(v).base.idx];
    }
    out
}

/// The nerve of a finite groupoid truncated at `d`, flagged Kan.
pub fn groupoid_nerve(g: &FinCategory, d: usize) -> Result<TruncatedSSet> {
    if !g.is_groupoid() {
        return Err(Error::Validation("not a groupoid: some morphism has no inverse".into()));
    }
    let n = CategoryNerve::new(std::sync::Arc::new(g.clone()), Some(d))?;
    Ok(n.nerve.with_kan(true))
}

/// The chain of a simplex, as a coefficient vector (zero for degenerate ones).
pub fn chain_of(x: &FinSSet, s: &SimplexRef) -> Vec<i64> {
    let mut v = vec![0; x.count(s.dim())];
    if !s.is_degenerate() {
        v[s.base.idx] = 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::SimplicialComplex;
    use crate::simplex::{boundary, circle, standard_simplex};

    fn int(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&int(&[&[2, 0], &[0, 3]]), 2, 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let z = smith_normal_form(&int(&[&[0, 0], &[0, 0]]), 2, 2);
        assert_eq!(z.rank, 0);
        let id = smith_normal_form(&identity_matrix(3), 3, 3);
        assert_eq!(id.d, identity_matrix(3));
    }

    #[test]
    fn snf_reconstructs() {
        let m = int(&[&[4, 6, -2], &[2, 8, 10], &[-6, 3, 9], &[1, 1, 1]]);
        let s = smith_normal_form(&m, 4, 3);
        let umv = matmul(&matmul(&s.u, &m, 4, 3), &s.v, 3, 3);
        assert_eq!(umv, s.d);
        assert_eq!(matmul(&s.u, &s.u_inv, 4, 4), identity_matrix(4));
        assert_eq!(matmul(&s.v_inv, &s.v, 3, 3), identity_matrix(3));
    }

    #[test]
    fn homology_of_small_spaces() {
        assert_eq!(homology(&standard_simplex(3)), vec![HomologyGroup::free(1), HomologyGroup::zero(), HomologyGroup::zero(), HomologyGroup::zero()]);
        assert_eq!(homology(&circle()), vec![HomologyGroup::free(1), HomologyGroup::free(1)]);
        assert_eq!(homology(&boundary(3))[2], HomologyGroup::free(1));
    }

    #[test]
    fn projective_plane() {
        let k = SimplicialComplex::new(
            (1..=6).map(|i| i.to_string()).collect(),
            &["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]
                .iter()
                .map(|t| t.chars().map(|c| c.to_string()).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let h = homology(&k.to_sset());
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1], HomologyGroup { rank: 0, torsion: vec![BigInt::from(2)] });
        assert_eq!(h[2], HomologyGroup::zero());
    }

    #[test]
    fn induced_maps() {
        let c = std::sync::Arc::new(circle());
        let id = SMap::identity(c.clone());
        assert!(induced_map_homology(&id, 2).iter().all(|d| d.is_isomorphism));
        let pt = std::sync::Arc::new(standard_simplex(0));
        let collapse = SMap::from_fn(c, pt, |id| {
            SimplexRef::new(crate::simplex::DegeneracyWord::from_surjection(&vec![0; id.dim + 1]), NdId::new(0, 0))
        })
        .unwrap();
        let ind = induced_map_homology(&collapse, 2);
        assert!(ind[0].is_isomorphism);
        assert!(!ind[1].is_isomorphism);
        assert!(cone_iso_through(&collapse, 0));
        assert!(!cone_iso_through(&collapse, 1));
    }

    #[test]
    fn components() {
        assert_eq!(pi0(&boundary(1)).0, 2);
        assert_eq!(pi0(&circle()).0, 1);
    }

    #[test]
    fn groupoid_nerve_counts() {
        let n = groupoid_nerve(&FinCategory::cyclic_group(2), 3).unwrap();
        assert_eq!(n.counts(), vec![1, 1, 1, 1]);
        assert!(n.kan);
        assert!(groupoid_nerve(&FinCategory::ordinal(1), 2).is_err());
    }
}
