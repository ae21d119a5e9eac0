use alloc::vec::Vec;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use spin::{Once, RwLock};

use super::{alpha, beta};
use crate::arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    Alpha,
    Beta,
}

impl CoeffKind {
    pub fn eval(self, n: u64, p: u64) -> Rational {
        match self {
            CoeffKind::Alpha => alpha(n, p),
            CoeffKind::Beta => beta(n, p),
        }
    }
}

/// Memo of one coefficient family, grown on demand one row per `n`.
///
/// Readers share the lock; a miss takes the write lock and extends the row,
/// so every caller sees the same exact values whatever the interleaving.
/// Alpha rows are extended with the exact integer ratio recurrence.
#[derive(Debug)]
pub struct CoeffTable {
    kind: CoeffKind,
    rows: RwLock<Vec<Row>>,
}

#[derive(Debug, Default)]
struct Row {
    values: Vec<Rational>,
    // alpha_p * 2^(n+2p) for the last stored p
    scaled: BigUint,
}

/// Process-wide alpha memo shared by the verification suites.
pub fn shared_alpha_table() -> &'static CoeffTable {
    static TABLE: Once<CoeffTable> = Once::new();
    TABLE.call_once(|| CoeffTable::new(CoeffKind::Alpha))
}

impl CoeffTable {
    pub fn new(kind: CoeffKind) -> Self {
        CoeffTable {
            kind,
            rows: RwLock::new(Vec::new()),
        }
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    pub fn get(&self, n: u64, p: u64) -> Rational {
        assert!(n >= 1, "coefficient tables start at n = 1");
        {
            let rows = self.rows.read();
            if let Some(v) = rows.get(n as usize).and_then(|r| r.values.get(p as usize)) {
                return v.clone();
            }
        }
        self.grow(n, p);
        self.rows.read()[n as usize].values[p as usize].clone()
    }

    /// Fills the rectangle `[1, n_max] × [0, p_max]` row by row.
    pub fn fill(&self, n_max: u64, p_max: u64) {
        for n in 1..=n_max {
            self.grow(n, p_max);
        }
    }

    fn grow(&self, n: u64, p: u64) {
        let mut rows = self.rows.write();
        if rows.len() <= n as usize {
            rows.resize_with(n as usize + 1, Row::default);
        }
        let row = &mut rows[n as usize];
        for q in row.values.len() as u64..=p {
            let value = match self.kind {
                CoeffKind::Alpha => {
                    if q == 0 {
                        row.scaled = BigUint::from(1u32);
                    } else {
                        let k = q - 1;
                        row.scaled *= (n + 2 * k + 1) * (n + 2 * k);
                        row.scaled /= (k + 1) * (n + k + 1);
                    }
                    Rational::dyadic(row.scaled.clone(), n + 2 * q)
                }
                CoeffKind::Beta => beta(n, q),
            };
            row.values.push(value);
        }
    }

    /// Largest rectangle `[1, n_max] × [0, p_max]` that is fully stored.
    pub fn extent(&self) -> (u64, u64) {
        let rows = self.rows.read();
        let mut n_max = 0;
        let mut p_len = usize::MAX;
        for row in rows.iter().skip(1) {
            if row.values.is_empty() {
                break;
            }
            n_max += 1;
            p_len = p_len.min(row.values.len());
        }
        if n_max == 0 {
            (0, 0)
        } else {
            (n_max, p_len as u64 - 1)
        }
    }

    /// Every stored entry as `(n, p, value)`, row-major.
    pub fn entries(&self) -> Vec<(u64, u64, Rational)> {
        let rows = self.rows.read();
        let mut out = Vec::new();
        for (n, row) in rows.iter().enumerate() {
            for (p, v) in row.values.iter().enumerate() {
                out.push((n as u64, p as u64, v.clone()));
            }
        }
        out
    }
}
