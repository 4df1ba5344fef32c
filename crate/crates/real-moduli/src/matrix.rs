//! Exact sparse matrices over the rationals and odd prime fields, with rank
//! by fraction-free elimination.
//!
//! Differential matrices are built with integer entries, so rank over the
//! rationals reduces to gcd-normalized integer elimination (no rational
//! number is ever formed) and rank mod `p` reduces entries first. Pivoting is
//! deterministic — smallest leading index, then fewest entries, then
//! insertion order — so every run produces bit-identical results regardless
//! of threading.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::gauge::FieldSpec;

/// Column-major sparse matrix with exact integer entries. Column `j` holds
/// the coordinates of the image of basis vector `j`, sorted by row index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            columns: vec![Vec::new(); ncols],
        }
    }

    pub fn from_columns(nrows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        for col in &columns {
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|(r, v)| *r < nrows && !v.is_zero()));
        }
        SparseMatrix {
            nrows,
            ncols: columns.len(),
            columns,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn entry_count(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Rank over the field described by `field`: exact integer elimination
    /// for characteristic zero, modular elimination for odd primes.
    pub fn rank(&self, field: &FieldSpec) -> usize {
        match field.characteristic() {
            0 => self.rank_rational(),
            p => self.rank_mod(u64::from(p)),
        }
    }

    fn rank_rational(&self) -> usize {
        struct Row {
            entries: Vec<(usize, BigInt)>,
            seq: usize,
        }

        // Vectors bucketed by leading index; rank(A) = rank(Aᵀ), so columns
        // play the role of elimination rows.
        let mut buckets: BTreeMap<usize, Vec<Row>> = BTreeMap::new();
        let stash = |row: Row, buckets: &mut BTreeMap<usize, Vec<Row>>| {
            let lead = row.entries[0].0;
            buckets.entry(lead).or_default().push(row);
        };
        for (seq, col) in self.columns.iter().enumerate() {
            if !col.is_empty() {
                stash(
                    Row {
                        entries: normalize_content(col.clone()),
                        seq,
                    },
                    &mut buckets,
                );
            }
        }

        let mut rank = 0;
        let mut next_seq = self.ncols;
        while let Some((&lead, _)) = buckets.iter().next() {
            let mut rows = buckets.remove(&lead).unwrap();
            let pivot_at = rows
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| (r.entries.len(), r.seq))
                .map(|(i, _)| i)
                .unwrap();
            let pivot = rows.swap_remove(pivot_at);
            rank += 1;
            let a = pivot.entries[0].1.clone();
            for row in rows {
                let b = row.entries[0].1.clone();
                let g = a.gcd(&b);
                let combined = combine(&row.entries, &(&a / &g), &pivot.entries, &(&b / &g));
                if !combined.is_empty() {
                    stash(
                        Row {
                            entries: normalize_content(combined),
                            seq: next_seq,
                        },
                        &mut buckets,
                    );
                    next_seq += 1;
                }
            }
        }
        rank
    }

    fn rank_mod(&self, p: u64) -> usize {
        struct Row {
            entries: Vec<(usize, u64)>,
            seq: usize,
        }

        let reduce = |v: &BigInt| -> u64 {
            let r = v.mod_floor(&BigInt::from(p));
            let digits = r.to_u64_digits().1;
            digits.first().copied().unwrap_or(0)
        };

        let mut buckets: BTreeMap<usize, Vec<Row>> = BTreeMap::new();
        for (seq, col) in self.columns.iter().enumerate() {
            let entries: Vec<(usize, u64)> = col
                .iter()
                .map(|(r, v)| (*r, reduce(v)))
                .filter(|(_, v)| *v != 0)
                .collect();
            if !entries.is_empty() {
                let lead = entries[0].0;
                buckets.entry(lead).or_default().push(Row { entries, seq });
            }
        }

        let mut rank = 0;
        let mut next_seq = self.ncols;
        while let Some((&lead, _)) = buckets.iter().next() {
            let mut rows = buckets.remove(&lead).unwrap();
            let pivot_at = rows
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| (r.entries.len(), r.seq))
                .map(|(i, _)| i)
                .unwrap();
            let pivot = rows.swap_remove(pivot_at);
            rank += 1;
            let a_inv = mod_inverse(pivot.entries[0].1, p);
            for row in rows {
                let factor = mulmod(row.entries[0].1, a_inv, p);
                let mut out = Vec::with_capacity(row.entries.len() + pivot.entries.len());
                let (mut i, mut j) = (0, 0);
                while i < row.entries.len() || j < pivot.entries.len() {
                    match (row.entries.get(i), pivot.entries.get(j)) {
                        (Some(&(ri, rv)), Some(&(pi, pv))) if ri == pi => {
                            let v = (rv + p - mulmod(factor, pv, p)) % p;
                            if v != 0 {
                                out.push((ri, v));
                            }
                            i += 1;
                            j += 1;
                        }
                        (Some(&(ri, rv)), Some(&(pi, _))) if ri < pi => {
                            out.push((ri, rv));
                            i += 1;
                        }
                        (Some(_), Some(&(pi, pv))) => {
                            let v = (p - mulmod(factor, pv, p)) % p;
                            if v != 0 {
                                out.push((pi, v));
                            }
                            j += 1;
                        }
                        (Some(&(ri, rv)), None) => {
                            out.push((ri, rv));
                            i += 1;
                        }
                        (None, Some(&(pi, pv))) => {
                            let v = (p - mulmod(factor, pv, p)) % p;
                            if v != 0 {
                                out.push((pi, v));
                            }
                            j += 1;
                        }
                        (None, None) => unreachable!(),
                    }
                }
                if !out.is_empty() {
                    let lead = out[0].0;
                    buckets.entry(lead).or_default().push(Row {
                        entries: out,
                        seq: next_seq,
                    });
                    next_seq += 1;
                }
            }
        }
        rank
    }

    /// True iff `later ∘ earlier` is the zero map over the integers (hence
    /// over every coefficient field).
    pub fn compose_is_zero(later: &SparseMatrix, earlier: &SparseMatrix) -> bool {
        assert_eq!(earlier.nrows, later.ncols, "composition shape mismatch");
        for col in &earlier.columns {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (mid, v) in col {
                for (row, w) in &later.columns[*mid] {
                    let entry = acc.entry(*row).or_insert_with(BigInt::zero);
                    *entry += v * w;
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// `a * ca - b * cb` on sorted sparse vectors, dropping zeros.
fn combine(
    a: &[(usize, BigInt)],
    ca: &BigInt,
    b: &[(usize, BigInt)],
    cb: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ri, rv)), Some((pi, pv))) if ri == pi => {
                let v = rv * ca - pv * cb;
                if !v.is_zero() {
                    out.push((*ri, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ri, rv)), Some((pi, _))) if ri < pi => {
                out.push((*ri, rv * ca));
                i += 1;
            }
            (Some(_), Some((pi, pv))) => {
                out.push((*pi, -(pv * cb)));
                j += 1;
            }
            (Some((ri, rv)), None) => {
                out.push((*ri, rv * ca));
                i += 1;
            }
            (None, Some((pi, pv))) => {
                out.push((*pi, -(pv * cb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Divide a sparse vector by the gcd of its entries and fix the sign of the
/// leading entry, for deterministic, growth-free elimination.
fn normalize_content(mut entries: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let mut g = BigInt::zero();
    for (_, v) in &entries {
        g = g.gcd(v);
    }
    if entries[0].1.is_negative() {
        g = -g;
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for (_, v) in &mut entries {
            *v /= &g;
        }
    }
    entries
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}
