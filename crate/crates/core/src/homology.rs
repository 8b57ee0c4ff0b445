//! Cellular homology over the integers via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::{Sign, TwoComplex};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(source, c) * q;
            if !v.is_zero() {
                *self.get_mut(target, c) -= v;
            }
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, source) * q;
            if !v.is_zero() {
                *self.get_mut(r, target) -= v;
            }
        }
    }

    fn add_row(&mut self, target: usize, source: usize) {
        self.sub_row(target, source, &-BigInt::one());
    }
}

/// Nonzero invariant factors (positive, each dividing the next).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.get(r, c);
                if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            let p = a.get(t, t).clone();
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = a.get(r, t).div_floor(&p);
                a.sub_row(r, t, &q);
                if !a.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = a.get(t, c).div_floor(&p);
                a.sub_col(c, t, &q);
                if !a.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot exists; move it in
                let mut best = (t, t);
                for r in t..rows {
                    let v = a.get(r, t);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (r, t);
                    }
                }
                for c in t..cols {
                    let v = a.get(t, c);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (t, c);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                continue;
            }
            // row and column cleared; enforce divisibility of the remainder
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&p)));
            match offender {
                Some(r) => a.add_row(t, r),
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
        t += 1;
    }
    factors
}

/// Betti numbers and the torsion of H₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyProfile {
    pub betti: [usize; 3],
    #[serde(serialize_with = "decimal")]
    pub torsion1: Vec<BigInt>,
}

/// Torsion coefficients as JSON numbers, or decimal strings past `u64`.
fn decimal<S: serde::Serializer>(t: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for c in t {
        match c.to_u64() {
            Some(n) => seq.serialize_element(&n)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

impl HomologyProfile {
    /// Reduced homology vanishes: one component, no H₁, no H₂.
    pub fn is_trivial(&self) -> bool {
        self.betti == [1, 0, 0] && self.torsion1.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti[0] as i64 - self.betti[1] as i64 + self.betti[2] as i64
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b=({},{},{})", self.betti[0], self.betti[1], self.betti[2])?;
        if self.torsion1.is_empty() {
            write!(f, ", torsion: none")
        } else {
            let t: Vec<String> = self.torsion1.iter().map(|t| format!("Z/{t}")).collect();
            write!(f, ", torsion: {}", t.join(" + "))
        }
    }
}

/// ∂₁ with rows indexed by vertices and columns by edges.
pub fn boundary_one(x: &TwoComplex) -> IntMatrix {
    let mut m = IntMatrix::zeros(x.num_vertices(), x.num_edges());
    for (e, edge) in x.edges().iter().enumerate() {
        *m.get_mut(edge.dst, e) += 1;
        *m.get_mut(edge.src, e) -= 1;
    }
    m
}

/// ∂₂ with rows indexed by edges and columns by discs.
pub fn boundary_two(x: &TwoComplex) -> IntMatrix {
    let mut m = IntMatrix::zeros(x.num_edges(), x.num_discs());
    for (d, disc) in x.discs().iter().enumerate() {
        for l in &disc.boundary {
            match l.sign {
                Sign::Pos => *m.get_mut(l.edge, d) += 1,
                Sign::Neg => *m.get_mut(l.edge, d) -= 1,
            }
        }
    }
    m
}

pub fn homology(x: &TwoComplex) -> HomologyProfile {
    let d1 = invariant_factors(&boundary_one(x));
    let d2 = invariant_factors(&boundary_two(x));
    let (r1, r2) = (d1.len(), d2.len());
    HomologyProfile {
        betti: [x.num_vertices() - r1, x.num_edges() - r1 - r2, x.num_discs() - r2],
        torsion1: d2.into_iter().filter(|f| !f.is_one()).collect(),
    }
}
