use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A finite group given by its Cayley table over elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidGroup(msg.into())
}

impl FiniteGroup {
    /// Validate a Cayley table: closure, Latin square, identity, inverses and
    /// associativity (checked on every triple).
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(bad("empty table"));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != m {
                return Err(bad(format!(
                    "row {i} has {} entries, expected {m}",
                    r.len()
                )));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= m) {
                return Err(bad(format!("row {i} contains {x}, outside 0..{m}")));
            }
        }
        for i in 0..m {
            let mut seen_row = vec![false; m];
            let mut seen_col = vec![false; m];
            for j in 0..m {
                if std::mem::replace(&mut seen_row[rows[i][j]], true) {
                    return Err(bad(format!("row {i} repeats {}", rows[i][j])));
                }
                if std::mem::replace(&mut seen_col[rows[j][i]], true) {
                    return Err(bad(format!("column {i} repeats {}", rows[j][i])));
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|g| rows[e][g] == g && rows[g][e] == g))
            .ok_or_else(|| bad("no identity element"))?;
        let mut inverse = vec![0; m];
        for (g, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..m)
                .find(|&h| rows[g][h] == identity && rows[h][g] == identity)
                .ok_or_else(|| bad(format!("element {g} has no two-sided inverse")))?;
        }
        for a in 0..m {
            for b in 0..m {
                let ab = rows[a][b];
                for c in 0..m {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(bad(format!(
                            "associativity fails for ({a}, {b}, {c}): (ab)c = {} but a(bc) = {}",
                            rows[ab][c], rows[a][rows[b][c]]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            order: m,
            table: rows.into_iter().flatten().collect(),
            identity,
            inverse,
        })
    }

    /// `Z_s` with `a * b = a + b mod s`.
    pub fn cyclic(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(bad("cyclic group of order 0"));
        }
        Self::from_table(
            (0..s)
                .map(|a| (0..s).map(|b| (a + b) % s).collect())
                .collect(),
        )
    }

    /// Dihedral group of order `2n`: element `r^i s^j` is stored as `i + n j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(bad("dihedral group needs n >= 1"));
        }
        let m = 2 * n;
        let rows = (0..m)
            .map(|a| {
                let (i1, j1) = (a % n, a / n);
                (0..m)
                    .map(|b| {
                        let (i2, j2) = (b % n, b / n);
                        // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1+j2)
                        let i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 } % n;
                        i + n * ((j1 + j2) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(rows)
    }

    /// `G × H` with `(g, h)` stored as `g * |H| + h`.
    pub fn direct_product(g: &Self, h: &Self) -> Result<Self> {
        let (mg, mh) = (g.order, h.order);
        let rows = (0..mg * mh)
            .map(|a| {
                (0..mg * mh)
                    .map(|b| g.mul(a / mh, b / mh) * mh + h.mul(a % mh, b % mh))
                    .collect()
            })
            .collect();
        Self::from_table(rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// Parse the text format: the order on the first line, then one row of
    /// whitespace-separated indices per line. Blank lines and `#` comments
    /// are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty group file".into(),
        })?;
        let m: usize = first.parse().map_err(|_| Error::Parse {
            line: ln,
            msg: format!("expected the group order, found {first:?}"),
        })?;
        let mut rows = Vec::with_capacity(m);
        for (ln, l) in lines {
            let row = l
                .split_whitespace()
                .map(|x| {
                    x.parse::<usize>().map_err(|_| Error::Parse {
                        line: ln,
                        msg: format!("expected an element index, found {x:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("expected {m} rows, found {}", rows.len()),
            });
        }
        Self::from_table(rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| self.mul(a, b).to_string())
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}
