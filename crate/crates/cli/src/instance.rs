//! The line-oriented instance file format.
//!
//! A file is a sequence of `key = value` lines; `#` starts a comment and
//! blank lines are ignored. Matrices are written as bracketed rows
//! (`[0 -1] [1 0]`), vectors as one bracketed row. Example:
//!
//! ```text
//! base = circle
//! A_M = [0 -1] [1 0]
//! A_N = [0 -1] [1 0]
//! L = [1 -1] [1 1]
//! v = [1 0]
//! ```
//!
//! Recognized keys: `base` (`point`, `circle` or `sphere:<b>`), optional
//! dimension pins `m` and `n`, gluings `A_M` and `A_N` (or a single `A` for
//! selfmap problems; omitted gluings default to the identity), the reduced
//! classifying pair `L`, `v`, the genuine pair form `L1`, `v1`, `L2`, `v2`
//! (differenced on load), and `f_star` for fixed point problems.

use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use torus_nielsen_core::bundle::{make_instance, BaseSpace, ProblemInstance, TorusBundle};
use torus_nielsen_core::intlat::{format_vector, IntMatrix};
use torus_nielsen_core::nielsen::FixedPointProblem;
use torus_nielsen_core::Error as CoreError;

/// A syntactic error with its position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum FieldValue {
    Base(String),
    Count(usize),
    Matrix(IntMatrix),
    Vector(Vec<BigInt>),
}

/// A parsed instance file; semantic assembly happens separately.
#[derive(Debug, Clone, Default)]
pub struct InstanceFile {
    fields: BTreeMap<String, FieldValue>,
}

const MATRIX_KEYS: [&str; 7] = ["A_M", "A_N", "A", "L", "L1", "L2", "f_star"];
const VECTOR_KEYS: [&str; 3] = ["v", "v1", "v2"];

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
        let mut fields = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let eq = line.find('=').ok_or(ParseError {
                line: line_no,
                col: line.len() + 1,
                msg: "expected `key = value`".into(),
            })?;
            let key = line[..eq].trim();
            let value_off = eq + 1;
            let value = &line[value_off..];
            let err_at = |col: usize, msg: String| ParseError {
                line: line_no,
                col,
                msg,
            };
            if key.is_empty() {
                return Err(err_at(1, "missing key before `=`".into()));
            }
            let parsed = match key {
                "base" => FieldValue::Base(value.trim().to_string()),
                "m" | "n" => {
                    let t = value.trim();
                    let count = t
                        .parse::<usize>()
                        .map_err(|_| err_at(value_off + 1, format!("`{t}` is not a count")))?;
                    FieldValue::Count(count)
                }
                k if MATRIX_KEYS.contains(&k) => {
                    let rows = parse_rows(value, line_no, value_off)?;
                    FieldValue::Matrix(rows_to_matrix(rows)?)
                }
                k if VECTOR_KEYS.contains(&k) => {
                    let mut rows = parse_rows(value, line_no, value_off)?;
                    if rows.len() != 1 {
                        return Err(err_at(
                            value_off + 1,
                            format!(
                                "a vector needs exactly one bracketed row, got {}",
                                rows.len()
                            ),
                        ));
                    }
                    FieldValue::Vector(rows.remove(0))
                }
                other => {
                    return Err(err_at(1, format!("unknown key `{other}`")));
                }
            };
            if fields.insert(key.to_string(), parsed).is_some() {
                return Err(err_at(1, format!("duplicate key `{key}`")));
            }
        }
        Ok(InstanceFile { fields })
    }

    fn base(&self) -> Result<BaseSpace, CoreError> {
        let Some(FieldValue::Base(s)) = self.fields.get("base") else {
            return Err(CoreError::DimMismatch("missing `base` line".into()));
        };
        match s.as_str() {
            "point" => Ok(BaseSpace::Point),
            "circle" => Ok(BaseSpace::Circle),
            other => {
                if let Some(b) = other.strip_prefix("sphere:") {
                    let b: u32 = b
                        .parse()
                        .map_err(|_| CoreError::Unsupported("malformed sphere dimension"))?;
                    BaseSpace::sphere(b)
                } else {
                    Err(CoreError::Unsupported(
                        "base must be `point`, `circle` or `sphere:<b>`",
                    ))
                }
            }
        }
    }

    fn matrix(&self, key: &str) -> Option<&IntMatrix> {
        match self.fields.get(key) {
            Some(FieldValue::Matrix(m)) => Some(m),
            _ => None,
        }
    }

    fn vector(&self, key: &str) -> Option<&Vec<BigInt>> {
        match self.fields.get(key) {
            Some(FieldValue::Vector(v)) => Some(v),
            _ => None,
        }
    }

    fn count(&self, key: &str) -> Option<usize> {
        match self.fields.get(key) {
            Some(FieldValue::Count(c)) => Some(*c),
            _ => None,
        }
    }

    // The reduced classifying pair, differencing the pair form if present.
    fn classifying_pair(&self) -> Result<(IntMatrix, Vec<BigInt>), CoreError> {
        let has_pair = self.fields.contains_key("L1");
        if has_pair {
            let l1 = self
                .matrix("L1")
                .ok_or(CoreError::DimMismatch("L1 must be a matrix".into()))?;
            let l2 = self
                .matrix("L2")
                .ok_or(CoreError::DimMismatch("pair form needs `L2`".into()))?;
            let v1 = self
                .vector("v1")
                .ok_or(CoreError::DimMismatch("pair form needs `v1`".into()))?;
            let v2 = self
                .vector("v2")
                .ok_or(CoreError::DimMismatch("pair form needs `v2`".into()))?;
            if l1.rows() != l2.rows() || l1.cols() != l2.cols() || v1.len() != v2.len() {
                return Err(CoreError::DimMismatch(
                    "the two classifying pairs must have matching shapes".into(),
                ));
            }
            let l = l1.sub(l2);
            let v = v1.iter().zip(v2).map(|(a, b)| a - b).collect();
            return Ok((l, v));
        }
        if let Some(f_star) = self.matrix("f_star") {
            // fixed point form: the coincidence linear part is f_* - id
            if !f_star.is_square() {
                return Err(CoreError::DimMismatch("f_star must be square".into()));
            }
            let l = f_star.sub(&IntMatrix::identity(f_star.rows()));
            let v = self
                .vector("v")
                .cloned()
                .unwrap_or_else(|| vec![BigInt::from(0); f_star.rows()]);
            return Ok((l, v));
        }
        let l = self
            .matrix("L")
            .ok_or(CoreError::DimMismatch(
                "missing `L` (or pair form, or `f_star`)".into(),
            ))?
            .clone();
        let v = self
            .vector("v")
            .cloned()
            .unwrap_or_else(|| vec![BigInt::from(0); l.rows()]);
        Ok((l, v))
    }

    // Fiber dimensions, inferred from explicit pins, gluings, and the shape
    // of the classifying data, in that order.
    fn dims(&self, l: &IntMatrix) -> Result<(usize, usize), CoreError> {
        let n = self
            .count("n")
            .or(self.matrix("A_N").map(IntMatrix::rows))
            .or(self.matrix("A").map(IntMatrix::rows))
            .unwrap_or(l.rows());
        let m = self
            .count("m")
            .or(self.matrix("A_M").map(IntMatrix::rows))
            .or(self.matrix("A").map(IntMatrix::rows))
            .unwrap_or(l.cols());
        if n != l.rows() || m != l.cols() {
            return Err(CoreError::DimMismatch(format!(
                "declared dimensions ({m}, {n}) disagree with the {}x{} linear part",
                l.rows(),
                l.cols()
            )));
        }
        Ok((m, n))
    }

    /// Assemble and validate the coincidence instance.
    pub fn to_instance(&self) -> Result<ProblemInstance, CoreError> {
        let base = self.base()?;
        let (l, v) = self.classifying_pair()?;
        let (m, n) = self.dims(&l)?;
        let a = self.matrix("A");
        let a_m = self
            .matrix("A_M")
            .or(a)
            .cloned()
            .unwrap_or_else(|| IntMatrix::identity(m));
        let a_n = self
            .matrix("A_N")
            .or(a)
            .cloned()
            .unwrap_or_else(|| IntMatrix::identity(n));
        make_instance(base, a_m, a_n, l, v)
    }

    /// Assemble a fixed point problem; needs `f_star` and a circle base with
    /// one gluing (`A`, or equal `A_M = A_N`).
    pub fn to_fixed_point_problem(&self) -> Result<FixedPointProblem, CoreError> {
        let base = self.base()?;
        let f_star = self
            .matrix("f_star")
            .ok_or(CoreError::DimMismatch(
                "fixed point input needs `f_star`".into(),
            ))?
            .clone();
        if !f_star.is_square() {
            return Err(CoreError::DimMismatch("f_star must be square".into()));
        }
        let n = f_star.rows();
        let gluing = match (self.matrix("A"), self.matrix("A_M"), self.matrix("A_N")) {
            (Some(a), _, _) => a.clone(),
            (None, Some(am), Some(an)) if am == an => am.clone(),
            (None, None, None) => IntMatrix::identity(n),
            _ => {
                return Err(CoreError::Unsupported(
                    "fixed point problems need a single gluing (key `A`)",
                ))
            }
        };
        let v = self
            .vector("v")
            .cloned()
            .unwrap_or_else(|| vec![BigInt::from(0); n]);
        let bundle = TorusBundle::new(base, gluing)?;
        FixedPointProblem::new(bundle, f_star, v)
    }
}

// Parse `[a b] [c d] ...` into rows of integers, reporting 1-based columns.
fn parse_rows(
    value: &str,
    line_no: usize,
    value_off: usize,
) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let err_at = |col: usize, msg: String| ParseError {
        line: line_no,
        col,
        msg,
    };
    let mut rows = Vec::new();
    let bytes = value.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '[' {
            return Err(err_at(
                value_off + i + 1,
                format!("expected `[`, found `{c}`"),
            ));
        }
        let close = value[i..]
            .find(']')
            .ok_or_else(|| err_at(value_off + i + 1, "unclosed `[`".into()))?;
        let inner = &value[i + 1..i + close];
        let mut row = Vec::new();
        let mut offset = i + 1;
        for token in inner.split_whitespace() {
            let tok_pos = value[offset..]
                .find(token)
                .expect("token came from this slice")
                + offset;
            let entry = token.parse::<BigInt>().map_err(|_| {
                err_at(
                    value_off + tok_pos + 1,
                    format!("`{token}` is not an integer"),
                )
            })?;
            row.push(entry);
            offset = tok_pos + token.len();
        }
        rows.push(row);
        i += close + 1;
    }
    let width = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != width) {
        return Err(err_at(value_off + 1, "ragged matrix rows".into()));
    }
    Ok(rows)
}

fn rows_to_matrix(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix, ParseError> {
    let r = rows.len();
    let c = rows.first().map(Vec::len).unwrap_or(0);
    let mut m = IntMatrix::zero(r, c);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

fn base_str(base: BaseSpace) -> String {
    match base {
        BaseSpace::Point => "point".into(),
        BaseSpace::Circle => "circle".into(),
        BaseSpace::Sphere(b) => format!("sphere:{b}"),
    }
}

/// Canonical serialization of an instance; parses back to the same instance.
pub fn serialize_instance(inst: &ProblemInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("base = {}\n", base_str(inst.base())));
    out.push_str(&format!("m = {}\n", inst.m()));
    out.push_str(&format!("n = {}\n", inst.n()));
    out.push_str(&format!("A_M = {}\n", inst.source().gluing()));
    out.push_str(&format!("A_N = {}\n", inst.target().gluing()));
    out.push_str(&format!("L = {}\n", inst.linear()));
    out.push_str(&format!("v = {}\n", format_vector(inst.shift())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAUSS: &str = "\
# multiplication by 1+i over the rotation bundle
base = circle
A_M = [0 -1] [1 0]
A_N = [0 -1] [1 0]
L = [1 -1] [1 1]
v = [1 0]
";

    #[test]
    fn parses_the_gauss_file() {
        let file = InstanceFile::parse(GAUSS).unwrap();
        let inst = file.to_instance().unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.shift()[0], BigInt::from(1));
    }

    #[test]
    fn reports_line_and_column_for_bad_tokens() {
        let bad = "base = circle\nL = [1 x] [0 1]\nv = [0 0]\n";
        let err = InstanceFile::parse(bad).unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.col, 8);
        assert!(err.msg.contains("not an integer"));
    }

    #[test]
    fn rejects_unknown_keys_and_duplicates() {
        let err = InstanceFile::parse("base = circle\nQ = [1]\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains("unknown key"));
        let err = InstanceFile::parse("base = circle\nbase = point\n").unwrap_err();
        assert!(err.msg.contains("duplicate"));
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = InstanceFile::parse("base = point\nL = [1 2] [3]\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains("ragged"));
    }

    #[test]
    fn pair_form_is_differenced() {
        let text = "\
base = circle
A_M = [0 -1] [1 0]
A_N = [0 -1] [1 0]
L1 = [2 -1] [1 2]
v1 = [3 1]
L2 = [1 0] [0 1]
v2 = [2 1]
";
        let inst = InstanceFile::parse(text).unwrap().to_instance().unwrap();
        assert_eq!(
            inst.linear(),
            &IntMatrix::from_rows(&[vec![1, -1], vec![1, 1]])
        );
        assert_eq!(inst.shift()[0], BigInt::from(1));
        assert_eq!(inst.shift()[1], BigInt::from(0));
    }

    #[test]
    fn gluings_default_to_identity() {
        let inst = InstanceFile::parse("base = point\nL = [2 0] [0 3]\nv = [0 0]\n")
            .unwrap()
            .to_instance()
            .unwrap();
        assert!(inst.source().gluing().is_identity());
    }

    #[test]
    fn empty_fiber_dimensions_parse() {
        // n = 2, m = 0: L has two empty rows
        let inst = InstanceFile::parse("base = point\nm = 0\nL = [] []\nv = [0 0]\n")
            .unwrap()
            .to_instance()
            .unwrap();
        assert_eq!(inst.m(), 0);
        assert_eq!(inst.n(), 2);
    }

    #[test]
    fn round_trip_on_canonical_files() {
        let file = InstanceFile::parse(GAUSS).unwrap();
        let inst = file.to_instance().unwrap();
        let text = serialize_instance(&inst);
        let again = InstanceFile::parse(&text).unwrap().to_instance().unwrap();
        assert_eq!(inst, again);
        // a canonical file serializes to itself
        assert_eq!(text, serialize_instance(&again));
    }

    #[test]
    fn fixed_point_form_builds_both_views() {
        let text = "\
base = circle
A = [1 0] [0 -1]
f_star = [7 0] [0 1]
v = [2 0]
";
        let file = InstanceFile::parse(text).unwrap();
        let problem = file.to_fixed_point_problem().unwrap();
        assert_eq!(problem.f_star().get(0, 0), &BigInt::from(7));
        let inst = file.to_instance().unwrap();
        assert_eq!(inst.linear().get(0, 0), &BigInt::from(6));
    }

    #[test]
    fn declared_dimensions_must_match_the_linear_part() {
        let err = InstanceFile::parse("base = point\nn = 3\nL = [2 0] [0 3]\nv = [0 0]\n")
            .unwrap()
            .to_instance()
            .unwrap_err();
        assert!(matches!(err, CoreError::DimMismatch(_)));
    }

    #[test]
    fn intertwining_violation_surfaces_as_core_error() {
        let text = "\
base = circle
A_M = [0 -1] [1 0]
A_N = [0 -1] [1 0]
L = [1 0] [0 2]
v = [0 0]
";
        let err = InstanceFile::parse(text)
            .unwrap()
            .to_instance()
            .unwrap_err();
        assert_eq!(err, CoreError::IntertwineViolated);
    }
}
