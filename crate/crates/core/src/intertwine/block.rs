use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{MathError, Result};
use crate::exact::{
    fmt_complex, fmt_rat, parse_complex, parse_rational, ExactScalar, HalfInt, Lambda, RadicalSum, Ring, Scalar,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    A1,
    A2,
    A3,
    A4,
    Long,
    LongGenfun,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 6] = [
        OperatorKind::A1,
        OperatorKind::A2,
        OperatorKind::A3,
        OperatorKind::A4,
        OperatorKind::Long,
        OperatorKind::LongGenfun,
    ];

    pub fn is_simple(self) -> bool {
        matches!(self, OperatorKind::A1 | OperatorKind::A2 | OperatorKind::A3 | OperatorKind::A4)
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::A1 => "A1",
            OperatorKind::A2 => "A2",
            OperatorKind::A3 => "A3",
            OperatorKind::A4 => "A4",
            OperatorKind::Long => "LONG",
            OperatorKind::LongGenfun => "LONG_GENFUN",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| MathError::Parse(format!("unknown operator kind {s:?}")))
    }
}

/// A dense block on one K-type, rows = output `m`, columns = input `m`.
///
/// `omitted_kappa` lists arguments `z` whose factor `1/κ(z)`,
/// `κ(z) = Γ(z+1/2)Γ(z-1/2)/Γ(z)^2`, multiplies every entry but is not
/// carried in the exact entries.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix {
    pub ktype: (HalfInt, HalfInt),
    pub rows: Vec<HalfInt>,
    pub cols: Vec<HalfInt>,
    pub entries: Vec<Vec<Scalar>>,
    pub omitted_kappa: Vec<BigRational>,
}

impl BlockMatrix {
    pub fn new(ktype: (HalfInt, HalfInt), rows: Vec<HalfInt>, cols: Vec<HalfInt>, entries: Vec<Vec<Scalar>>) -> Self {
        debug_assert_eq!(entries.len(), rows.len());
        debug_assert!(entries.iter().all(|r| r.len() == cols.len()));
        BlockMatrix { ktype, rows, cols, entries, omitted_kappa: Vec::new() }
    }

    pub fn try_get(&self, row: HalfInt, col: HalfInt) -> Option<&Scalar> {
        let r = self.rows.iter().position(|&m| m == row)?;
        let c = self.cols.iter().position(|&m| m == col)?;
        Some(&self.entries[r][c])
    }

    pub fn get(&self, row: HalfInt, col: HalfInt) -> &Scalar {
        self.try_get(row, col)
            .unwrap_or_else(|| panic!("({row},{col}) outside the block"))
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().flatten().all(|x| matches!(x, Scalar::Exact(_)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, HalfInt, &Scalar)> {
        self.rows.iter().enumerate().flat_map(move |(i, &r)| {
            self.cols.iter().enumerate().map(move |(k, &c)| (r, c, &self.entries[i][k]))
        })
    }

    /// Matrix product `self · other`, exact when both factors are.
    pub fn mul(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        if self.cols != other.rows {
            return Err(MathError::OutOfRange(format!(
                "block shapes do not chain: {:?} vs {:?}",
                self.cols, other.rows
            )));
        }
        let exact = self.is_exact() && other.is_exact();
        let mut entries = Vec::with_capacity(self.rows.len());
        for i in 0..self.rows.len() {
            let mut row = Vec::with_capacity(other.cols.len());
            for k in 0..other.cols.len() {
                if exact {
                    let mut acc = RadicalSum::zero();
                    for (l, a) in self.entries[i].iter().enumerate() {
                        let (Scalar::Exact(a), Scalar::Exact(b)) = (a, &other.entries[l][k]) else { unreachable!() };
                        acc = acc + RadicalSum::from_exact(&(a.clone() * b.clone()));
                    }
                    let v = acc
                        .as_exact()
                        .ok_or_else(|| MathError::NotExact(format!("product entry has several radicands: {acc}")))?;
                    row.push(Scalar::Exact(v));
                } else {
                    let acc: Complex64 = self.entries[i]
                        .iter()
                        .enumerate()
                        .map(|(l, a)| a.to_complex() * other.entries[l][k].to_complex())
                        .sum();
                    row.push(Scalar::Float(acc));
                }
            }
            entries.push(row);
        }
        let mut out = BlockMatrix::new(self.ktype, self.rows.clone(), other.cols.clone(), entries);
        out.omitted_kappa = other.omitted_kappa.iter().chain(&self.omitted_kappa).cloned().collect();
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(r, c, x)| r == c || x.to_complex() == Complex64::new(0.0, 0.0))
    }

    /// Exact identity for exact blocks; entrywise within `tol` otherwise.
    pub fn is_identity(&self, tol: f64) -> bool {
        if self.rows != self.cols || !self.omitted_kappa.is_empty() {
            return false;
        }
        self.iter().all(|(r, c, x)| match x {
            Scalar::Exact(e) => {
                if r == c {
                    *e == ExactScalar::one()
                } else {
                    e.is_zero()
                }
            }
            Scalar::Float(z) => {
                let want = if r == c { 1.0 } else { 0.0 };
                (z - want).norm() <= tol
            }
        })
    }

    /// Every entry divided by `c`.
    pub fn divide_by(&self, c: &Scalar) -> Result<BlockMatrix> {
        let mut out = self.clone();
        for x in out.entries.iter_mut().flatten() {
            *x = match (&*x, c) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.try_div(b)?),
                (a, b) => Scalar::Float(a.to_complex() / b.to_complex()),
            };
        }
        Ok(out)
    }

    pub fn to_float(&self) -> BlockMatrix {
        let mut out = self.clone();
        for x in out.entries.iter_mut().flatten() {
            *x = Scalar::Float(x.to_complex());
        }
        out
    }

    /// Human-readable form of the omitted factor, if any.
    pub fn omitted_factor(&self) -> Option<String> {
        if self.omitted_kappa.is_empty() {
            return None;
        }
        let parts: Vec<String> = self.omitted_kappa.iter().map(|z| format!("κ({})", fmt_rat(z))).collect();
        Some(format!("1/({})", parts.join("·")))
    }
}

/// A block together with the operator it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorBlock {
    pub delta: (u8, u8),
    pub lambda: Lambda,
    pub kind: OperatorKind,
    pub block: BlockMatrix,
}

#[derive(Serialize, Deserialize)]
struct BlockJson {
    ktype: [HalfInt; 2],
    delta: [u8; 2],
    lambda: [String; 2],
    kind: String,
    rows: Vec<HalfInt>,
    cols: Vec<HalfInt>,
    entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    omitted_kappa: Vec<String>,
}

fn lambda_strings(l: &Lambda) -> [String; 2] {
    match l {
        Lambda::Exact(a, b) => [fmt_rat(a), fmt_rat(b)],
        Lambda::Float(a, b) => [fmt_complex(*a), fmt_complex(*b)],
    }
}

/// `p/q` pairs stay exact; anything else is read as a complex float pair.
pub fn parse_lambda(a: &str, b: &str) -> Result<Lambda> {
    match (parse_rational(a), parse_rational(b)) {
        (Ok(x), Ok(y)) => Ok(Lambda::Exact(x, y)),
        _ => Ok(Lambda::Float(parse_complex(a)?, parse_complex(b)?)),
    }
}

impl OperatorBlock {
    fn to_json_struct(&self) -> BlockJson {
        let b = &self.block;
        BlockJson {
            ktype: [b.ktype.0, b.ktype.1],
            delta: [self.delta.0, self.delta.1],
            lambda: lambda_strings(&self.lambda),
            kind: self.kind.to_string(),
            rows: b.rows.clone(),
            cols: b.cols.clone(),
            entries: b.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            omitted_kappa: b.omitted_kappa.iter().map(fmt_rat).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_struct()).expect("plain data serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_struct()).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: BlockJson = serde_json::from_str(s).map_err(|e| MathError::Parse(e.to_string()))?;
        Self::from_json_struct(j)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let j: BlockJson = serde_json::from_value(v).map_err(|e| MathError::Parse(e.to_string()))?;
        Self::from_json_struct(j)
    }

    fn from_json_struct(j: BlockJson) -> Result<Self> {
        let entries = j
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.parse::<Scalar>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != j.rows.len() || entries.iter().any(|r| r.len() != j.cols.len()) {
            return Err(MathError::Parse("entry grid does not match rows/cols".into()));
        }
        let mut block = BlockMatrix::new((j.ktype[0], j.ktype[1]), j.rows, j.cols, entries);
        block.omitted_kappa = j.omitted_kappa.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
        Ok(OperatorBlock {
            delta: (j.delta[0], j.delta[1]),
            lambda: parse_lambda(&j.lambda[0], &j.lambda[1])?,
            kind: j.kind.parse()?,
            block,
        })
    }

    /// The entry grid as CSV: a header of input `m` values, then one line per output `m`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let b = &self.block;
        let mut header = vec![format!("{}:j={},n={}", self.kind, b.ktype.0, b.ktype.1)];
        header.extend(b.cols.iter().map(|m| m.to_string()));
        w.write_record(&header).expect("in-memory write");
        for (r, row) in b.rows.iter().zip(&b.entries) {
            let mut rec = vec![r.to_string()];
            rec.extend(row.iter().map(|x| x.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}
