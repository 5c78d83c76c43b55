//! c-DDT and c-BCT engines for lookup-table functions over GF(2^n).
//!
//! The c-DDT entry at (a, b) counts solutions of F(x+a) + c*F(x) = b; the
//! c-BCT entry counts pairs (x, y) with F(x) + c*F(y) = b and F(x+a) +
//! c^-1*F(y+a) = b. Rows are computed in a single O(q^2) sweep that bins
//! every (x, y) pair by the common value b, so one sweep yields the whole
//! row. Full-table sweeps are O(q^3) and sit behind a size guardrail.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{gcd, FieldElement, FieldSpec};
use crate::weil::{chi1, power_table, s_power_brute};

/// O(q^2) sweeps (rows, DDTs) refuse degrees above this without `force`.
pub const ROW_SWEEP_MAX_N: u32 = 16;
/// O(q^3) sweeps (full c-BCT tables, uniformity scans) refuse degrees
/// above this without `force`.
pub const FULL_SWEEP_MAX_N: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("c = 0 does not define a table")]
    ZeroMultiplier,
    #[error("table has {0} entries, field has {1}")]
    WrongLength(usize, usize),
    #[error("table entry 0x{0:X} is out of range for GF(2^{1})")]
    EntryOutOfRange(u32, u32),
    #[error("the a=1 shortcut is only valid for power maps")]
    NotAPowerMap,
    #[error("refusing an O(q^{cost}) sweep at n={n} (limit n<={limit}); pass force=true to override")]
    SweepTooLarge { n: u32, limit: u32, cost: u32 },
}

pub(crate) fn check_sweep(n: u32, limit: u32, cost: u32, force: bool) -> Result<(), TableError> {
    if n > limit && !force {
        return Err(TableError::SweepTooLarge { n, limit, cost });
    }
    Ok(())
}

/// A function F: GF(2^n) -> GF(2^n) as an explicit lookup table.
#[derive(Debug, Clone)]
pub struct SBox {
    field: Arc<FieldSpec>,
    table: Vec<u32>,
    bijective: bool,
    /// Set when the table was built as x -> x^d; enables the a = 1
    /// uniformity shortcut, which is only sound for power maps.
    power: Option<u64>,
}

impl SBox {
    /// The power map x -> x^d (with 0^d = 0). A permutation exactly when
    /// gcd(d, 2^n - 1) = 1.
    pub fn power(field: &Arc<FieldSpec>, d: u64) -> SBox {
        assert!(d >= 1, "exponent must be positive");
        let table: Vec<u32> = field.elements().map(|x| field.pow(x, d as i64).bits()).collect();
        let bijective = gcd(d % (u64::from(field.q()) - 1), u64::from(field.q()) - 1) == 1;
        debug_assert_eq!(bijective, is_bijection(&table));
        SBox { field: Arc::clone(field), table, bijective, power: Some(d) }
    }

    /// Tabulates an arbitrary function.
    pub fn from_fn(field: &Arc<FieldSpec>, f: impl Fn(FieldElement) -> FieldElement) -> SBox {
        let table: Vec<u32> = field.elements().map(|x| f(x).bits()).collect();
        let bijective = is_bijection(&table);
        SBox { field: Arc::clone(field), table, bijective, power: None }
    }

    pub fn from_table(field: &Arc<FieldSpec>, table: Vec<FieldElement>) -> Result<SBox, TableError> {
        if table.len() != field.q() as usize {
            return Err(TableError::WrongLength(table.len(), field.q() as usize));
        }
        let table: Vec<u32> = table.iter().map(|x| x.bits()).collect();
        if let Some(&bad) = table.iter().find(|&&v| v >= field.q()) {
            return Err(TableError::EntryOutOfRange(bad, field.n()));
        }
        let bijective = is_bijection(&table);
        Ok(SBox { field: Arc::clone(field), table, bijective, power: None })
    }

    /// A uniformly random permutation from a fixed seed (Fisher-Yates).
    pub fn random_permutation(field: &Arc<FieldSpec>, seed: u64) -> SBox {
        let mut table: Vec<u32> = (0..field.q()).collect();
        table.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        SBox { field: Arc::clone(field), table, bijective: true, power: None }
    }

    /// A random, typically non-bijective table from a fixed seed.
    pub fn random_function(field: &Arc<FieldSpec>, seed: u64) -> SBox {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table: Vec<u32> = (0..field.q()).map(|_| rng.gen_range(0..field.q())).collect();
        let bijective = is_bijection(&table);
        SBox { field: Arc::clone(field), table, bijective, power: None }
    }

    /// (outer . inner)(x) = outer(inner(x)).
    pub fn compose(outer: &SBox, inner: &SBox) -> SBox {
        assert_eq!(outer.field, inner.field, "composition needs a common field");
        let table: Vec<u32> =
            inner.table.iter().map(|&y| outer.table[y as usize]).collect();
        let bijective = is_bijection(&table);
        SBox { field: Arc::clone(&outer.field), table, bijective, power: None }
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    #[inline]
    pub fn apply(&self, x: FieldElement) -> FieldElement {
        FieldElement::from_bits(self.table[x.bits() as usize])
    }

    #[inline]
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn is_permutation(&self) -> bool {
        self.bijective
    }

    #[inline]
    pub fn power_exponent(&self) -> Option<u64> {
        self.power
    }
}

fn is_bijection(table: &[u32]) -> bool {
    let mut seen = vec![false; table.len()];
    for &v in table {
        if seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}

/// Which spectrum a [`SpectrumTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    CDdt,
    CBctRow,
    CBctFull,
}

impl TableKind {
    pub fn label(self) -> &'static str {
        match self {
            TableKind::CDdt => "cDDT",
            TableKind::CBctRow => "cBCT-row",
            TableKind::CBctFull => "cBCT-full",
        }
    }
}

/// A counted spectrum: a full c-DDT, one c-BCT row at fixed a, or a full
/// c-BCT. Counts are dense (zero cells included) so entry sets see the 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    kind: TableKind,
    field: Arc<FieldSpec>,
    c: FieldElement,
    a: Option<FieldElement>,
    counts: Vec<u64>,
}

impl SpectrumTable {
    #[inline]
    pub fn kind(&self) -> TableKind {
        self.kind
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    #[inline]
    pub fn c(&self) -> FieldElement {
        self.c
    }

    #[inline]
    pub fn a(&self) -> Option<FieldElement> {
        self.a
    }

    /// Count at (a, b) for full tables.
    #[inline]
    pub fn count(&self, a: FieldElement, b: FieldElement) -> u64 {
        assert!(self.a.is_none(), "single-row table; use row_count");
        self.counts[(a.bits() as usize) * self.field.q() as usize + b.bits() as usize]
    }

    /// Count at b for row tables.
    #[inline]
    pub fn row_count(&self, b: FieldElement) -> u64 {
        assert!(self.a.is_some(), "full table; use count(a, b)");
        self.counts[b.bits() as usize]
    }

    #[inline]
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// The table's uniformity: max count over the admissible domain.
    /// For a c-DDT that is all (a, b) with a != 0 required only when c = 1;
    /// for c-BCT data both a and b are restricted to be nonzero.
    pub fn uniformity(&self) -> u64 {
        let q = self.field.q() as usize;
        match self.kind {
            TableKind::CDdt => {
                let skip_a0 = self.c == FieldElement::ONE;
                self.counts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !(skip_a0 && i / q == 0))
                    .map(|(_, &v)| v)
                    .max()
                    .unwrap_or(0)
            }
            TableKind::CBctRow => {
                self.counts.iter().skip(1).copied().max().unwrap_or(0)
            }
            TableKind::CBctFull => self
                .counts
                .iter()
                .enumerate()
                .filter(|(i, _)| i / q != 0 && i % q != 0)
                .map(|(_, &v)| v)
                .max()
                .unwrap_or(0),
        }
    }

    /// Sorted distinct counts over the b range (a sweeps its admissible
    /// domain first for full tables). Published entry sets for rows run
    /// over all of b including b = 0, which is the default here.
    pub fn entry_set(&self, include_b_zero: bool) -> Vec<u64> {
        let q = self.field.q() as usize;
        let set: BTreeSet<u64> = match self.kind {
            TableKind::CBctRow => self
                .counts
                .iter()
                .enumerate()
                .filter(|(b, _)| include_b_zero || *b != 0)
                .map(|(_, &v)| v)
                .collect(),
            TableKind::CDdt | TableKind::CBctFull => {
                let skip_a0 = self.kind == TableKind::CBctFull
                    || (self.kind == TableKind::CDdt && self.c == FieldElement::ONE);
                self.counts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| {
                        let (a, b) = (i / q, i % q);
                        (!skip_a0 || a != 0) && (include_b_zero || b != 0)
                    })
                    .map(|(_, &v)| v)
                    .collect()
            }
        };
        set.into_iter().collect()
    }

    /// CSV dump: `b,count` for rows, `a,b,count` for full tables.
    pub fn to_csv(&self) -> String {
        let q = self.field.q() as usize;
        let mut out = String::new();
        match self.kind {
            TableKind::CBctRow => {
                out.push_str("b,count\n");
                for (b, &v) in self.counts.iter().enumerate() {
                    let b = self.field.format_element(FieldElement::from_bits(b as u32));
                    out.push_str(&format!("{b},{v}\n"));
                }
            }
            TableKind::CDdt | TableKind::CBctFull => {
                out.push_str("a,b,count\n");
                for (i, &v) in self.counts.iter().enumerate() {
                    let a = self.field.format_element(FieldElement::from_bits((i / q) as u32));
                    let b = self.field.format_element(FieldElement::from_bits((i % q) as u32));
                    out.push_str(&format!("{a},{b},{v}\n"));
                }
            }
        }
        out
    }

    /// Serializable view with deterministic key order.
    pub fn export(&self) -> TableExport {
        let q = self.field.q() as usize;
        let counts = match self.kind {
            TableKind::CBctRow => self
                .counts
                .iter()
                .enumerate()
                .map(|(b, &v)| {
                    (self.field.format_element(FieldElement::from_bits(b as u32)), v)
                })
                .collect::<BTreeMap<_, _>>(),
            TableKind::CDdt | TableKind::CBctFull => self
                .counts
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let a = self.field.format_element(FieldElement::from_bits((i / q) as u32));
                    let b = self.field.format_element(FieldElement::from_bits((i % q) as u32));
                    (format!("{a},{b}"), v)
                })
                .collect(),
        };
        TableExport {
            kind: self.kind.label().to_string(),
            n: self.field.n(),
            poly: format!("0x{:X}", self.field.modulus()),
            c: self.field.format_element(self.c),
            a: self.a.map(|a| self.field.format_element(a)),
            counts,
            uniformity: self.uniformity(),
            entry_set: self.entry_set(true),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("export serializes")
    }
}

/// JSON schema for table payloads. All values are exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableExport {
    pub kind: String,
    pub n: u32,
    pub poly: String,
    pub c: String,
    pub a: Option<String>,
    pub counts: BTreeMap<String, u64>,
    pub uniformity: u64,
    pub entry_set: Vec<u64>,
}

/// Full c-DDT of F: counts of F(x+a) + c*F(x) = b over all (a, b).
/// Materializes q^2 cells, so it carries the full-sweep size guard.
pub fn cddt(sbox: &SBox, c: FieldElement) -> Result<SpectrumTable, TableError> {
    cddt_guarded(sbox, c, false)
}

#[allow(clippy::needless_range_loop)]
pub fn cddt_guarded(sbox: &SBox, c: FieldElement, force: bool) -> Result<SpectrumTable, TableError> {
    if c.is_zero() {
        return Err(TableError::ZeroMultiplier);
    }
    let field = sbox.field();
    check_sweep(field.n(), FULL_SWEEP_MAX_N, 2, force)?;
    let q = field.q() as usize;
    let cf = scaled_table(sbox, c);
    let mut counts = vec![0u64; q * q];
    for a in 0..q {
        let row = &mut counts[a * q..(a + 1) * q];
        for x in 0..q {
            let b = sbox.table[x ^ a] ^ cf[x];
            row[b as usize] += 1;
        }
    }
    Ok(SpectrumTable { kind: TableKind::CDdt, field: Arc::clone(field), c, a: None, counts })
}

fn scaled_table(sbox: &SBox, c: FieldElement) -> Vec<u32> {
    let field = sbox.field();
    (0..field.q() as usize)
        .map(|x| field.mul(c, FieldElement::from_bits(sbox.table[x])).bits())
        .collect()
}

/// The c-differential uniformity of F without materializing the table:
/// max over the admissible (a, b) domain, one O(q) row at a time.
pub fn cddt_uniformity(sbox: &SBox, c: FieldElement, force: bool) -> Result<u64, TableError> {
    if c.is_zero() {
        return Err(TableError::ZeroMultiplier);
    }
    let field = sbox.field();
    check_sweep(field.n(), ROW_SWEEP_MAX_N, 2, force)?;
    let q = field.q() as usize;
    let cf = scaled_table(sbox, c);
    let skip_a0 = c == FieldElement::ONE;
    let mut best = 0u64;
    let mut row = vec![0u64; q];
    for a in 0..q {
        if skip_a0 && a == 0 {
            continue;
        }
        row.fill(0);
        for x in 0..q {
            row[(sbox.table[x ^ a] ^ cf[x]) as usize] += 1;
        }
        best = best.max(*row.iter().max().expect("nonempty"));
    }
    Ok(best)
}

/// One c-BCT row: for fixed (c, a), counts over every b of the pairs
/// (x, y) satisfying both boomerang equations. A single O(q^2) sweep bins
/// each pair at the common value when the two sides agree.
pub fn cbct_brute(
    sbox: &SBox,
    c: FieldElement,
    a: FieldElement,
) -> Result<SpectrumTable, TableError> {
    cbct_brute_guarded(sbox, c, a, false)
}

pub fn cbct_brute_guarded(
    sbox: &SBox,
    c: FieldElement,
    a: FieldElement,
    force: bool,
) -> Result<SpectrumTable, TableError> {
    if c.is_zero() {
        return Err(TableError::ZeroMultiplier);
    }
    let field = sbox.field();
    check_sweep(field.n(), ROW_SWEEP_MAX_N, 2, force)?;
    let counts = cbct_row_counts(sbox, c, a);
    Ok(SpectrumTable {
        kind: TableKind::CBctRow,
        field: Arc::clone(field),
        c,
        a: Some(a),
        counts,
    })
}

fn cbct_row_counts(sbox: &SBox, c: FieldElement, a: FieldElement) -> Vec<u64> {
    let field = sbox.field();
    let q = field.q() as usize;
    let c_inv = field.inv(c);
    let ab = a.bits() as usize;
    let t = &sbox.table;
    let left_shift: Vec<u32> = (0..q).map(|x| t[x ^ ab]).collect();
    let right: Vec<u32> =
        (0..q).map(|y| field.mul(c, FieldElement::from_bits(t[y])).bits()).collect();
    let right_shift: Vec<u32> = (0..q)
        .map(|y| field.mul(c_inv, FieldElement::from_bits(t[y ^ ab])).bits())
        .collect();
    let mut counts = vec![0u64; q];
    for x in 0..q {
        let lx = t[x];
        let lx_shift = left_shift[x];
        for y in 0..q {
            let b1 = lx ^ right[y];
            let b2 = lx_shift ^ right_shift[y];
            if b1 == b2 {
                counts[b1 as usize] += 1;
            }
        }
    }
    counts
}

/// Full c-BCT over all (a, b). O(q^3); guarded.
pub fn cbct_full(sbox: &SBox, c: FieldElement, force: bool) -> Result<SpectrumTable, TableError> {
    if c.is_zero() {
        return Err(TableError::ZeroMultiplier);
    }
    let field = sbox.field();
    check_sweep(field.n(), FULL_SWEEP_MAX_N, 3, force)?;
    let q = field.q() as usize;
    let mut counts = Vec::with_capacity(q * q);
    for a in 0..q {
        counts.extend(cbct_row_counts(sbox, c, FieldElement::from_bits(a as u32)));
    }
    Ok(SpectrumTable { kind: TableKind::CBctFull, field: Arc::clone(field), c, a: None, counts })
}

/// The c-boomerang uniformity: max entry over a, b != 0.
///
/// With `power_shortcut` (legal only for power maps) the a = 1 row alone is
/// scanned, since rescaling x and y reduces every a to 1 for power maps.
pub fn cbct_uniformity(
    sbox: &SBox,
    c: FieldElement,
    power_shortcut: bool,
    force: bool,
) -> Result<u64, TableError> {
    if c.is_zero() {
        return Err(TableError::ZeroMultiplier);
    }
    if power_shortcut {
        if sbox.power_exponent().is_none() {
            return Err(TableError::NotAPowerMap);
        }
        let row = cbct_brute_guarded(sbox, c, FieldElement::ONE, force)?;
        return Ok(row.uniformity());
    }
    Ok(cbct_full(sbox, c, force)?.uniformity())
}

/// Precomputed state for the c-BCT identity that rebuilds the entry at
/// (1, b) from c-DDT column sums and products of double Weil sums of the
/// power map x^d. Building it costs O(q^3); entries are then O(q^2).
pub struct DdtWeilIdentity {
    field: Arc<FieldSpec>,
    c: FieldElement,
    s: Vec<i64>,
    col_c: Vec<i64>,
    col_c_inv: Vec<i64>,
}

impl DdtWeilIdentity {
    pub fn new(field: &Arc<FieldSpec>, d: u64, c: FieldElement) -> Result<Self, TableError> {
        Self::new_guarded(field, d, c, false)
    }

    pub fn new_guarded(
        field: &Arc<FieldSpec>,
        d: u64,
        c: FieldElement,
        force: bool,
    ) -> Result<Self, TableError> {
        if c.is_zero() {
            return Err(TableError::ZeroMultiplier);
        }
        check_sweep(field.n(), FULL_SWEEP_MAX_N, 3, force)?;
        let q = field.q() as usize;
        let sbox = SBox::power(field, d);
        let pd = power_table(field, d);
        let mut s = vec![0i64; q * q];
        for alpha in field.elements() {
            for beta in field.elements() {
                s[(alpha.bits() as usize) * q + beta.bits() as usize] =
                    s_power_brute(field, &pd, alpha, beta);
            }
        }
        let ddt_c = cddt(&sbox, c)?;
        let ddt_c_inv = cddt(&sbox, field.inv(c))?;
        let col = |t: &SpectrumTable| -> Vec<i64> {
            (0..q)
                .map(|b| {
                    (0..q)
                        .map(|w| {
                            t.count(
                                FieldElement::from_bits(w as u32),
                                FieldElement::from_bits(b as u32),
                            ) as i64
                        })
                        .sum()
                })
                .collect()
        };
        Ok(DdtWeilIdentity {
            field: Arc::clone(field),
            c,
            s,
            col_c: col(&ddt_c),
            col_c_inv: col(&ddt_c_inv),
        })
    }

    /// The c-BCT entry at (1, b), b != 0, reconstructed from the identity.
    /// All divisions are exact; a non-integer intermediate signals an
    /// implementation bug and panics.
    pub fn entry(&self, b: FieldElement) -> u64 {
        assert!(!b.is_zero(), "the identity needs b != 0");
        let field = &self.field;
        let q = field.q() as usize;
        let qi = field.q() as i64;
        let c_inv = field.inv(self.c);
        let mut double_sum = 0i64;
        for alpha in field.elements().skip(1) {
            let sa = &self.s[(alpha.bits() as usize) * q..];
            let ca = field.mul(self.c, alpha);
            let sca = &self.s[(ca.bits() as usize) * q..];
            for beta in field.elements().skip(1) {
                let cb = field.mul(c_inv, beta);
                let sign = chi1(field, field.mul(b, field.add(alpha, beta)));
                double_sum += sign * sa[beta.bits() as usize] * sca[cb.bits() as usize];
            }
        }
        let total = qi * (self.col_c[b.bits() as usize] + self.col_c_inv[b.bits() as usize])
            - qi * qi
            + double_sum;
        assert!(
            total % (qi * qi) == 0 && total >= 0,
            "identity produced a non-integer or negative count: total={total}, q^2={}",
            qi * qi
        );
        (total / (qi * qi)) as u64
    }
}

/// One-shot form of the identity above.
pub fn cbct_via_ddt_weil(
    field: &Arc<FieldSpec>,
    d: u64,
    c: FieldElement,
    b: FieldElement,
) -> Result<u64, TableError> {
    Ok(DdtWeilIdentity::new(field, d, c)?.entry(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(n).unwrap())
    }

    #[test]
    fn power_map_permutation_flag() {
        let field = f(6);
        assert!(SBox::power(&field, 1).is_permutation());
        assert!(SBox::power(&field, 17).is_permutation()); // gcd(17, 63) = 1
        let field = f(4);
        assert!(!SBox::power(&field, 5).is_permutation()); // gcd(5, 15) = 5
    }

    #[test]
    fn identity_power_map() {
        let field = f(4);
        let id = SBox::power(&field, 1);
        for x in field.elements() {
            assert_eq!(id.apply(x), x);
        }
    }

    #[test]
    fn cddt_rejects_zero_multiplier() {
        let field = f(4);
        let sbox = SBox::power(&field, 5);
        assert_eq!(cddt(&sbox, FieldElement::ZERO).unwrap_err(), TableError::ZeroMultiplier);
    }

    #[test]
    fn cddt_rows_sum_to_q() {
        let field = f(5);
        let sbox = SBox::power(&field, 5);
        let g = field.generator();
        for c in [FieldElement::ONE, g, field.pow(g, 7)] {
            let table = cddt(&sbox, c).unwrap();
            for a in field.elements() {
                let sum: u64 = field.elements().map(|b| table.count(a, b)).sum();
                assert_eq!(sum, 32);
            }
        }
    }

    #[test]
    fn gold_differential_uniformity_small() {
        // d = 2^k + 1 at c = 1 has uniformity 2^gcd(k, n).
        for (n, k, expect) in [(6u32, 2u32, 4u64), (3, 1, 2), (4, 1, 2), (4, 2, 4)] {
            let field = f(n);
            let sbox = SBox::power(&field, (1 << k) + 1);
            let table = cddt(&sbox, FieldElement::ONE).unwrap();
            assert_eq!(table.uniformity(), expect, "n={n} k={k}");
        }
    }

    #[test]
    fn cbct_row_total_mass_matches_unbinned_count() {
        let field = f(4);
        let sbox = SBox::power(&field, 5);
        let g = field.generator();
        let c = field.pow(g, 3);
        let a = field.pow(g, 9);
        let row = cbct_brute(&sbox, c, a).unwrap();
        let c_inv = field.inv(c);
        let mut direct = 0u64;
        for x in field.elements() {
            for y in field.elements() {
                let b1 = field.add(sbox.apply(x), field.mul(c, sbox.apply(y)));
                let b2 = field.add(
                    sbox.apply(field.add(x, a)),
                    field.mul(c_inv, sbox.apply(field.add(y, a))),
                );
                if b1 == b2 {
                    direct += 1;
                }
            }
        }
        assert_eq!(row.counts().iter().sum::<u64>(), direct);
    }

    #[test]
    fn cbct_chunked_sweep_is_partition_independent() {
        let field = f(5);
        let sbox = SBox::random_permutation(&field, 7);
        let c = field.generator();
        let a = FieldElement::ONE;
        let reference = cbct_brute(&sbox, c, a).unwrap();
        // Re-bin the (x, y) sweep in reversed and strided orders.
        let q = field.q();
        let c_inv = field.inv(c);
        for order in [
            (0..q).rev().collect::<Vec<_>>(),
            (0..q).step_by(3).chain((0..q).filter(|x| x % 3 != 0)).collect(),
        ] {
            let mut counts = vec![0u64; q as usize];
            for &x in &order {
                for y in 0..q {
                    let (x, y) = (FieldElement::from_bits(x), FieldElement::from_bits(y));
                    let b1 = field.add(sbox.apply(x), field.mul(c, sbox.apply(y)));
                    let b2 = field.add(
                        sbox.apply(field.add(x, a)),
                        field.mul(c_inv, sbox.apply(field.add(y, a))),
                    );
                    if b1 == b2 {
                        counts[b1.bits() as usize] += 1;
                    }
                }
            }
            assert_eq!(counts.as_slice(), reference.counts());
        }
    }

    #[test]
    fn f64_entry_sets_for_known_rows() {
        let field = f(6);
        let g = field.generator();
        let x17 = SBox::power(&field, 17);
        let c21 = field.pow(g, 21);
        let row = cbct_brute(&x17, c21, FieldElement::ONE).unwrap();
        assert_eq!(row.entry_set(true), vec![0, 1, 4]);

        let binomial = SBox::from_fn(&field, |x| {
            field.add(field.pow(x, 5), field.mul(g, field.pow(x, 17)))
        });
        let row = cbct_brute(&binomial, c21, FieldElement::ONE).unwrap();
        assert_eq!(row.entry_set(true), vec![0, 1, 4]);

        let row = cbct_brute(&x17, g, FieldElement::ONE).unwrap();
        assert_eq!(row.entry_set(true), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn uniformity_shortcut_matches_full_sweep() {
        let field = f(4);
        let sbox = SBox::power(&field, 5);
        let g = field.generator();
        let fast = cbct_uniformity(&sbox, g, true, false).unwrap();
        let slow = cbct_uniformity(&sbox, g, false, false).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn uniformity_shortcut_requires_power_map() {
        let field = f(4);
        let sbox = SBox::random_permutation(&field, 1);
        assert_eq!(
            cbct_uniformity(&sbox, field.generator(), true, false).unwrap_err(),
            TableError::NotAPowerMap
        );
    }

    #[test]
    fn apn_boomerang_uniformity_is_two() {
        let field = f(3);
        let sbox = SBox::power(&field, 3);
        assert_eq!(cbct_uniformity(&sbox, FieldElement::ONE, true, false).unwrap(), 2);
        let field = f(6);
        let sbox = SBox::power(&field, 5);
        assert_eq!(cbct_uniformity(&sbox, FieldElement::ONE, true, false).unwrap(), 4);
    }

    #[test]
    fn guardrail_refuses_oversized_sweeps() {
        let field = f(13);
        let sbox = SBox::power(&field, 3);
        let err = cbct_full(&sbox, FieldElement::ONE, false).unwrap_err();
        assert!(matches!(err, TableError::SweepTooLarge { n: 13, limit: 12, cost: 3 }));
    }

    #[test]
    fn ddt_weil_identity_matches_brute_rows() {
        let field = f(4);
        let g = field.generator();
        for d in [5u64, 7] {
            let sbox = SBox::power(&field, d);
            for c in [g, field.pow(g, 3)] {
                let identity = DdtWeilIdentity::new(&field, d, c).unwrap();
                let row = cbct_brute(&sbox, c, FieldElement::ONE).unwrap();
                for b in field.elements().skip(1) {
                    assert_eq!(identity.entry(b), row.row_count(b), "d={d} c={c} b={b}");
                }
            }
        }
    }

    #[test]
    fn entry_sets_report_empty_cells() {
        // Zero counts are values, not gaps: rows keep their empty cells so
        // the entry set contains 0 when some b has no solutions.
        let field = f(4);
        let sbox = SBox::power(&field, 5);
        let row = cbct_brute(&sbox, field.generator(), FieldElement::ONE).unwrap();
        assert!(row.entry_set(true).contains(&0));
    }

    #[test]
    fn json_export_roundtrips() {
        let field = f(4);
        let sbox = SBox::power(&field, 5);
        let row = cbct_brute(&sbox, field.generator(), FieldElement::ONE).unwrap();
        let json = row.to_json();
        let parsed: TableExport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), json);
        assert_eq!(parsed.kind, "cBCT-row");
        assert_eq!(parsed.poly, "0x13");
    }

    #[test]
    fn csv_export_shape() {
        let field = f(4);
        let sbox = SBox::power(&field, 5);
        let row = cbct_brute(&sbox, field.generator(), FieldElement::ONE).unwrap();
        let csv = row.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("b,count"));
        assert_eq!(csv.lines().count(), 17);
        let table = cddt(&sbox, field.generator()).unwrap();
        assert!(table.to_csv().starts_with("a,b,count\n"));
    }
}
