use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::Field;

use super::engine::Resolution;

/// Graded Betti numbers `β_{i,j}` for `i ≤ max_step`, `j ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// Nonzero entries only.
    entries: BTreeMap<(usize, usize), u64>,
    pub characteristic: u64,
    pub max_step: usize,
    pub max_degree: usize,
    /// `(step, degree)` where a size limit stopped the computation.
    pub stopped_at: Option<(usize, usize)>,
}

impl BettiTable {
    pub fn from_resolution<F: Field>(res: &Resolution<F>) -> Self {
        let mut entries = BTreeMap::new();
        for (i, m) in res.modules.iter().enumerate() {
            for (&(j, _), &n) in &m.counts {
                if n > 0 {
                    *entries.entry((i, j)).or_insert(0) += n as u64;
                }
            }
        }
        BettiTable {
            entries,
            characteristic: res.field.characteristic(),
            max_step: res.max_step,
            max_degree: res.max_degree,
            stopped_at: res.stopped.as_ref().map(|s| (s.step, s.degree)),
        }
    }

    pub fn from_entries(
        entries: impl IntoIterator<Item = ((usize, usize), u64)>,
        characteristic: u64,
        max_step: usize,
        max_degree: usize,
    ) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|t| t.1 > 0).collect(),
            characteristic,
            max_step,
            max_degree,
            stopped_at: None,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Whether `β_{i,j}` lies inside the computed range.
    pub fn is_known(&self, i: usize, j: usize) -> bool {
        if i > self.max_step || j > self.max_degree {
            return false;
        }
        match self.stopped_at {
            Some((s, d)) => i < s || (i == s && j < d),
            None => true,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.stopped_at.is_none()
    }

    /// Nonzero entries `((i, j), β)` in increasing order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// `β_{i,i+r}` for `i = 0..=max_step`.
    pub fn row(&self, r: usize) -> Vec<u64> {
        (0..=self.max_step).map(|i| self.get(i, i + r)).collect()
    }

    /// Total Betti numbers within the computed range.
    pub fn totals(&self) -> Vec<u64> {
        let mut t = vec![0; self.max_step + 1];
        for ((i, _), v) in self.entries() {
            t[i] += v;
        }
        t
    }

    /// Same entries and bounds, ignoring the characteristic.
    pub fn same_numbers(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
            && self.max_step == other.max_step
            && self.max_degree == other.max_degree
            && self.stopped_at == other.stopped_at
    }

    /// Column `i`, row `j - i`; `--` for zero and `?` outside the
    /// computed range.
    pub fn to_text(&self) -> String {
        let last_row = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        let cells: Vec<Vec<String>> = (0..=last_row)
            .map(|r| {
                (0..=self.max_step)
                    .map(|i| {
                        if !self.is_known(i, i + r) {
                            "?".to_string()
                        } else {
                            match self.get(i, i + r) {
                                0 => "--".to_string(),
                                v => v.to_string(),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..=self.max_step)
            .map(|i| cells.iter().map(|row| row[i].len()).max().unwrap_or(1).max(i.to_string().len()))
            .collect();
        let label = (last_row.to_string().len() + 1).max(2);
        let mut s = String::new();
        let _ = write!(s, "{:>label$} |", "");
        for (i, w) in widths.iter().enumerate() {
            let _ = write!(s, " {i:>w$}");
        }
        s.push('\n');
        let _ = writeln!(s, "{}", "-".repeat(s.trim_end().len()));
        for (r, row) in cells.iter().enumerate() {
            let _ = write!(s, "{:>label$} |", format!("{r}:"));
            for (cell, w) in row.iter().zip(&widths) {
                let _ = write!(s, " {cell:>w$}");
            }
            s.push('\n');
        }
        if let Some((i, j)) = self.stopped_at {
            let _ = writeln!(s, "(partial: size limit reached at step {i}, degree {j})");
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries()
            .map(|((i, j), beta)| json!({"i": i, "j": j, "beta": beta}))
            .collect();
        let mut truncation = json!({"max_step": self.max_step, "max_degree": self.max_degree});
        if let Some((i, j)) = self.stopped_at {
            truncation["stopped_at"] = json!({"step": i, "degree": j});
        }
        json!({"entries": entries, "char": self.characteristic, "truncation": truncation})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("Betti table JSON: {what}"));
        let num = |x: &serde_json::Value, k: &str| x[k].as_u64().ok_or_else(|| bad(k));
        let mut entries = BTreeMap::new();
        for e in v["entries"].as_array().ok_or_else(|| bad("entries"))? {
            entries.insert((num(e, "i")? as usize, num(e, "j")? as usize), num(e, "beta")?);
        }
        let t = &v["truncation"];
        let stopped_at = match t.get("stopped_at") {
            Some(s) => Some((num(s, "step")? as usize, num(s, "degree")? as usize)),
            None => None,
        };
        Ok(BettiTable {
            entries,
            characteristic: num(v, "char")?,
            max_step: num(t, "max_step")? as usize,
            max_degree: num(t, "max_degree")? as usize,
            stopped_at,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let t = BettiTable::from_entries([((0, 0), 1), ((1, 1), 9), ((2, 2), 53), ((2, 3), 1)], 32003, 2, 4);
        let text = t.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "   |  0  1  2");
        assert_eq!(lines[2], "0: |  1  9 53");
        assert_eq!(lines[3], "1: | -- --  1");
        assert_eq!(t.row(0), vec![1, 9, 53]);
        assert_eq!(t.totals(), vec![1, 9, 54]);
    }

    #[test]
    fn json_round_trip() {
        let mut t = BettiTable::from_entries([((0, 0), 1), ((1, 1), 3)], 2, 3, 5);
        t.stopped_at = Some((3, 4));
        let back = BettiTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(t.is_known(3, 3) && !t.is_known(3, 4) && !t.is_known(0, 6));
    }
}
