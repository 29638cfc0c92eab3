//! Column-style Hermite normal form over `Z`.
//!
//! Columns are inserted one at a time into an echelon basis keyed by pivot
//! row (the first nonzero row). Every step is a unimodular column operation,
//! so the optional transform tracking yields `H = M·U` with `U` unimodular.
//! Vectors are sparse; lattices built from shifted ideal generators are
//! banded, which keeps fill-in local.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer vector: strictly increasing indices, no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted `(index, value)` pairs; duplicates are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut map: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (i, v) in pairs {
            *map.entry(i).or_default() += v;
        }
        SparseVec { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[BigInt]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, BigInt::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn lead(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> BigInt {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &BigInt, other: &SparseVec, b: &BigInt) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&self.entries, &other.entries);
        while i < xs.len() || j < ys.len() {
            let take = match (xs.get(i), ys.get(j)) {
                (Some((ix, _)), Some((iy, _))) => ix.cmp(iy),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => unreachable!(),
            };
            let (idx, v) = match take {
                std::cmp::Ordering::Less => {
                    let r = (xs[i].0, a * &xs[i].1);
                    i += 1;
                    r
                }
                std::cmp::Ordering::Greater => {
                    let r = (ys[j].0, b * &ys[j].1);
                    j += 1;
                    r
                }
                std::cmp::Ordering::Equal => {
                    let r = (xs[i].0, a * &xs[i].1 + b * &ys[j].1);
                    i += 1;
                    j += 1;
                    r
                }
            };
            if !v.is_zero() {
                out.push((idx, v));
            }
        }
        SparseVec { entries: out }
    }

    /// `self - f·other`.
    pub fn sub_scaled(&self, f: &BigInt, other: &SparseVec) -> SparseVec {
        self.combine(&BigInt::one(), other, &-f)
    }
}

/// One basis column of an echelon/HNF lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub vector: SparseVec,
    /// Combination of inserted columns producing `vector`, when tracked.
    pub combo: Option<SparseVec>,
}

impl Column {
    pub fn pivot(&self) -> usize {
        self.vector.lead().expect("basis columns are nonzero").0
    }

    pub fn pivot_value(&self) -> &BigInt {
        self.vector.lead().expect("basis columns are nonzero").1
    }
}

/// Incremental echelon basis of a `Z`-lattice.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Column>,
    kernel: Vec<SparseVec>,
    track: bool,
}

impl Echelon {
    pub fn new(track_transform: bool) -> Self {
        Echelon { pivots: BTreeMap::new(), kernel: Vec::new(), track: track_transform }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a column; `id` labels it in tracked combinations.
    pub fn insert(&mut self, vector: SparseVec, id: usize) {
        let combo = self.track.then(|| SparseVec::unit(id));
        self.insert_with_combo(vector, combo);
    }

    fn insert_with_combo(&mut self, mut v: SparseVec, mut combo: Option<SparseVec>) {
        loop {
            let Some((row, lead)) = v.lead() else {
                if let Some(c) = combo {
                    self.kernel.push(c);
                }
                return;
            };
            let lead = lead.clone();
            let Some(basis) = self.pivots.get(&row) else {
                if lead.is_negative() {
                    v = v.neg();
                    combo = combo.map(|c| c.neg());
                }
                let mut col = Column { vector: v, combo };
                self.reduce_tail(&mut col);
                self.pivots.insert(row, col);
                return;
            };
            let piv = basis.pivot_value().clone();
            if lead.is_multiple_of(&piv) {
                let f = &lead / &piv;
                v = v.sub_scaled(&f, &basis.vector);
                combo = match (combo, &basis.combo) {
                    (Some(c), Some(b)) => Some(c.sub_scaled(&f, b)),
                    _ => None,
                };
                continue;
            }
            // [s t; -piv/g lead/g] has determinant 1
            let ext = lead.extended_gcd(&piv);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let (piv_g, lead_g) = (&piv / &g, &lead / &g);
            let new_basis = v.combine(&s, &basis.vector, &t);
            let new_v = v.combine(&piv_g, &basis.vector, &-&lead_g);
            let (new_bc, new_vc) = match (&combo, &basis.combo) {
                (Some(c), Some(b)) => (Some(c.combine(&s, b, &t)), Some(c.combine(&piv_g, b, &-&lead_g))),
                _ => (None, None),
            };
            let mut replaced = Column { vector: new_basis, combo: new_bc };
            if replaced.pivot_value().is_negative() {
                replaced.vector = replaced.vector.neg();
                replaced.combo = replaced.combo.as_ref().map(|c| c.neg());
            }
            self.reduce_tail(&mut replaced);
            self.pivots.insert(row, replaced);
            v = new_v;
            combo = new_vc;
        }
    }

    /// Size-reduces the entries of `col` below its pivot against the other
    /// pivots, rounding to the nearest multiple. Keeps coefficients from
    /// compounding across gcd steps.
    fn reduce_tail(&self, col: &mut Column) {
        let own = col.pivot();
        let mut from = own + 1;
        loop {
            let next = col
                .vector
                .entries()
                .iter()
                .find(|(i, _)| *i >= from && *i != own && self.pivots.contains_key(i))
                .map(|(i, e)| (*i, e.clone()));
            let Some((row, entry)) = next else { return };
            let basis = &self.pivots[&row];
            let p = basis.pivot_value();
            let f = Integer::div_floor(&(&entry * 2u32 + p), &(p * 2u32));
            if !f.is_zero() {
                col.vector = col.vector.sub_scaled(&f, &basis.vector);
                col.combo = match (&col.combo, &basis.combo) {
                    (Some(c), Some(b)) => Some(c.sub_scaled(&f, b)),
                    _ => None,
                };
            }
            from = row + 1;
        }
    }

    /// Fully reduced HNF columns (ascending pivot rows) and kernel combos.
    pub fn finish(self) -> (Vec<Column>, Vec<SparseVec>) {
        let mut cols: Vec<Column> = self.pivots.into_values().collect();
        for j in 0..cols.len() {
            let (head, tail) = cols.split_at_mut(j);
            let pivot_col = &tail[0];
            let (prow, pval) = (pivot_col.pivot(), pivot_col.pivot_value().clone());
            for col in head.iter_mut() {
                let entry = col.vector.get(prow);
                if entry.is_zero() {
                    continue;
                }
                let f = entry.div_floor(&pval);
                if f.is_zero() {
                    continue;
                }
                col.vector = col.vector.sub_scaled(&f, &pivot_col.vector);
                col.combo = match (&col.combo, &pivot_col.combo) {
                    (Some(c), Some(b)) => Some(c.sub_scaled(&f, b)),
                    _ => None,
                };
            }
        }
        (cols, self.kernel)
    }
}

/// Checks the HNF shape: strictly increasing pivots, positive pivot values,
/// entries in each pivot row reduced into `[0, pivot)` to the left.
pub fn is_hnf(cols: &[Column]) -> bool {
    for (j, col) in cols.iter().enumerate() {
        let Some((row, val)) = col.vector.lead() else { return false };
        if !val.is_positive() {
            return false;
        }
        if j > 0 && cols[j - 1].pivot() >= row {
            return false;
        }
        for left in &cols[..j] {
            let e = left.vector.get(row);
            if e.is_negative() || &e >= val {
                return false;
            }
        }
    }
    true
}

/// Solves `Σ c_j · cols[j] = v` by back-substitution down the pivots.
pub fn solve(cols: &[Column], v: &SparseVec) -> Option<Vec<BigInt>> {
    let mut rest = v.clone();
    let mut coeffs = vec![BigInt::zero(); cols.len()];
    for (j, col) in cols.iter().enumerate() {
        let Some((row, lead)) = rest.lead() else { break };
        let prow = col.pivot();
        if row < prow {
            return None;
        }
        if row > prow {
            continue;
        }
        let (c, r) = lead.div_rem(col.pivot_value());
        if !r.is_zero() {
            return None;
        }
        rest = rest.sub_scaled(&c, &col.vector);
        coeffs[j] = c;
    }
    rest.is_zero().then_some(coeffs)
}

/// Dense column-style HNF: returns `(H, U)` with `H = M·U`, `U` unimodular.
///
/// `H` has the same shape as `M`; nonzero columns come first in ascending
/// pivot order, followed by zero columns for the kernel.
pub fn hnf(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(true);
    for j in 0..ncols {
        let col: Vec<BigInt> = m.iter().map(|r| r[j].clone()).collect();
        ech.insert(SparseVec::from_dense(&col), j);
    }
    let (basis, kernel) = ech.finish();
    let mut h = vec![vec![BigInt::zero(); ncols]; rows];
    let mut u = vec![vec![BigInt::zero(); ncols]; ncols];
    let combos = basis.iter().map(|c| (Some(&c.vector), c.combo.as_ref().expect("tracked")));
    let combos = combos.chain(kernel.iter().map(|c| (None, c)));
    for (j, (vector, combo)) in combos.enumerate() {
        if let Some(vector) = vector {
            for (i, v) in vector.entries() {
                h[*i][j] = v.clone();
            }
        }
        for (i, v) in combo.entries() {
            u[*i][j] = v.clone();
        }
    }
    (h, u)
}
