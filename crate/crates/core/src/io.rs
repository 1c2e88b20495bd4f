//! File formats.
//!
//! Bundles, complexes, phase cocycles, trivialization changes and vertex maps
//! are JSON. Semi-rings, monoids, categories and monoid maps use a line-based
//! table format:
//!
//! ```text
//! # comments start with '#'
//! elements: 0 1
//! zero: 0
//! one: 1
//! add:
//!   0 1
//!   1 1
//! mul:
//!   0 0
//!   0 1
//! ```
//!
//! A top-level `key: value` line sets a field; `key:` with nothing after the
//! colon opens a section whose lines are indented.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bar_homology::{FiniteMonoid, Morphism, SmallCategory};
use crate::bundle::{fmt_simplex, BundleError, ChartedBundle, OrderedComplex, PhaseCocycle, SimplicialMap, TrivializationChange};
use crate::exact_linalg::{format_rational, parse_rational, Matrix};
use crate::semiring::FiniteSemiring;
use crate::two_vector::{obj_matmul, DimensionMatrix, MorphismMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("structural error at {location}: {message}")]
    Structural { location: String, message: String },
}

fn parse_err(location: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Parse {
        location: location.into(),
        message: message.to_string(),
    }
}

fn structural(location: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Structural {
        location: location.into(),
        message: message.to_string(),
    }
}

fn from_json<'a, D: Deserialize<'a>>(text: &'a str) -> Result<D, IoError> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        // serde_json appends its own position, which the location already carries
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        parse_err(format!("line {}, column {}", e.line(), e.column()), msg)
    })
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn simplex_key(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_key<const N: usize>(field: &str, key: &str) -> Result<[usize; N], IoError> {
    let location = format!("{field}[{key:?}]");
    let parts: Result<Vec<usize>, _> = key.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let parts = parts.map_err(|_| parse_err(&location, "key must be comma-separated vertex numbers"))?;
    parts
        .try_into()
        .map_err(|_| parse_err(&location, format!("key must name {N} vertices")))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: Vec<usize>,
    simplices: Vec<Vec<usize>>,
}

impl ComplexFile {
    fn from_complex(c: &OrderedComplex) -> Self {
        ComplexFile {
            vertices: c.vertices().to_vec(),
            simplices: c.higher_simplices().map(<[usize]>::to_vec).collect(),
        }
    }

    fn build(self, field: &str) -> Result<OrderedComplex, IoError> {
        OrderedComplex::new(self.vertices, self.simplices).map_err(|e| match e {
            BundleError::Complex(msg) => parse_err(field, msg),
            other => parse_err(field, other),
        })
    }
}

type RationalRows = Vec<Vec<String>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleFile {
    rank: usize,
    complex: ComplexFile,
    #[serde(default)]
    gluing: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default)]
    coherence: BTreeMap<String, Vec<Vec<RationalRows>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseFile {
    complex: ComplexFile,
    phases: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChangeFile {
    #[serde(rename = "T")]
    t: BTreeMap<String, Vec<Vec<usize>>>,
    tau: BTreeMap<String, Vec<Vec<RationalRows>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    complex: ComplexFile,
    map: BTreeMap<String, usize>,
}

fn dims_from_rows(field: &str, rows: Vec<Vec<usize>>) -> Result<DimensionMatrix, IoError> {
    DimensionMatrix::from_rows(rows).map_err(|e| parse_err(field, e))
}

fn rational_matrix(field: &str, rows: &RationalRows, size: (usize, usize)) -> Result<Matrix<BigRational>, IoError> {
    let (r, c) = size;
    if r == 0 || c == 0 {
        if rows.iter().any(|row| !row.is_empty()) {
            return Err(structural(field, format!("expected an empty {r}x{c} block")));
        }
        return Ok(Matrix::zeros(r, c));
    }
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(structural(field, format!("expected a {r}x{c} block")));
    }
    let mut data = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            data.push(parse_rational::<BigInt>(s).map_err(|e| parse_err(format!("{field}[{i}][{j}]"), e))?);
        }
    }
    Ok(Matrix::new(r, c, data).expect("sizes checked"))
}

fn morphism_from_file(
    field: &str,
    dims: &DimensionMatrix,
    entries: &[Vec<RationalRows>],
) -> Result<MorphismMatrix<BigRational>, IoError> {
    let n = dims.rank();
    if entries.len() != n || entries.iter().any(|row| row.len() != n) {
        return Err(structural(field, format!("expected {n}x{n} entries")));
    }
    let mut out = Vec::with_capacity(n * n);
    for (i, row) in entries.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            let d = dims.get(i, j);
            out.push(rational_matrix(&format!("{field}[{i}][{j}]"), block, (d, d))?);
        }
    }
    MorphismMatrix::new(dims.clone(), out).map_err(|e| structural(field, e))
}

fn morphism_to_file(m: &MorphismMatrix<BigRational>) -> Vec<Vec<RationalRows>> {
    let n = m.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m.entry(i, j).to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect())
                .collect()
        })
        .collect()
}

/// Reads a complex either bare (`{"vertices", "simplices"}`) or as the
/// `complex` field of a larger file.
pub fn parse_complex(text: &str) -> Result<OrderedComplex, IoError> {
    let value: Value = from_json(text)?;
    let inner = match value.get("complex") {
        Some(c) => c.clone(),
        None => value,
    };
    let file: ComplexFile = serde_json::from_value(inner).map_err(|e| parse_err("complex", e))?;
    file.build("complex")
}

pub fn complex_to_json(c: &OrderedComplex) -> String {
    to_json(&ComplexFile::from_complex(c))
}

/// Reads a bundle and checks completeness, ranks, determinants `±1` and
/// dimension compatibility on every triangle.
pub fn parse_bundle(text: &str) -> Result<ChartedBundle<BigRational>, IoError> {
    let file: BundleFile = from_json(text)?;
    let base = file.complex.build("complex")?;
    let mut gluing = BTreeMap::new();
    for (key, rows) in file.gluing {
        let e = parse_key::<2>("gluing", &key)?;
        let field = format!("gluing[{key:?}]");
        let d = dims_from_rows(&field, rows)?;
        let det = d.det();
        if !det.abs().is_one() {
            return Err(structural(
                field,
                format!("determinant is {det}; gluing matrices must have determinant ±1"),
            ));
        }
        gluing.insert(e, d);
    }
    for e in base.simplices_of_dim(1) {
        if !gluing.contains_key(&[e[0], e[1]]) {
            return Err(structural("gluing", format!("missing edge {}", fmt_simplex(e))));
        }
    }
    let mut coherence = BTreeMap::new();
    for (key, entries) in &file.coherence {
        let [a, b, c] = parse_key::<3>("coherence", key)?;
        let field = format!("coherence[{key:?}]");
        let (ab, bc, ac) = match (gluing.get(&[a, b]), gluing.get(&[b, c]), gluing.get(&[a, c])) {
            (Some(ab), Some(bc), Some(ac)) => (ab, bc, ac),
            _ => return Err(structural(field, "not a triangle of the complex")),
        };
        let product = obj_matmul(ab, bc).map_err(|e| structural(&field, e))?;
        if &product != ac {
            return Err(structural(
                field,
                format!("E^ab·E^bc = {product} differs from E^ac = {ac}"),
            ));
        }
        coherence.insert([a, b, c], morphism_from_file(&field, ac, entries)?);
    }
    ChartedBundle::new(file.rank, base, gluing, coherence).map_err(|e| structural("bundle", e))
}

pub fn bundle_to_json(b: &ChartedBundle<BigRational>) -> String {
    let file = BundleFile {
        rank: b.rank(),
        complex: ComplexFile::from_complex(b.base()),
        gluing: b.gluing().iter().map(|(k, d)| (simplex_key(k), d.to_rows())).collect(),
        coherence: b
            .coherence()
            .iter()
            .map(|(k, m)| (simplex_key(k), morphism_to_file(m)))
            .collect(),
    };
    to_json(&file)
}

/// Whether the JSON text looks like a bundle file rather than a phase file.
pub fn is_bundle_json(text: &str) -> bool {
    serde_json::from_str::<Value>(text).is_ok_and(|v| v.get("rank").is_some())
}

/// Phases are `"p/q mod 1"` (the suffix is optional).
pub fn parse_phases(text: &str) -> Result<PhaseCocycle, IoError> {
    let file: PhaseFile = from_json(text)?;
    let base = file.complex.build("complex")?;
    let mut phases = BTreeMap::new();
    for (key, value) in &file.phases {
        let t = parse_key::<3>("phases", key)?;
        let field = format!("phases[{key:?}]");
        let body = value.trim();
        let body = body.strip_suffix("mod 1").unwrap_or(body);
        let q = parse_rational::<BigInt>(body).map_err(|e| parse_err(&field, e))?;
        phases.insert(t, q);
    }
    PhaseCocycle::new(base, phases).map_err(|e| structural("phases", e))
}

pub fn phases_to_json(phi: &PhaseCocycle) -> String {
    let file = PhaseFile {
        complex: ComplexFile::from_complex(phi.base()),
        phases: phi
            .phases()
            .iter()
            .map(|(k, q)| (simplex_key(k), format!("{} mod 1", format_rational(q))))
            .collect(),
    };
    to_json(&file)
}

/// Reads a change of trivializations out of the bundle `e`; `τ^{ab}` has the
/// dimensions of `T^a·E^{ab}`.
pub fn parse_change(text: &str, e: &ChartedBundle<BigRational>) -> Result<TrivializationChange<BigRational>, IoError> {
    let file: ChangeFile = from_json(text)?;
    let mut t = BTreeMap::new();
    for (key, rows) in file.t {
        let [v] = parse_key::<1>("T", &key)?;
        t.insert(v, dims_from_rows(&format!("T[{key:?}]"), rows)?);
    }
    let mut tau = BTreeMap::new();
    for (key, entries) in &file.tau {
        let [a, b] = parse_key::<2>("tau", key)?;
        let field = format!("tau[{key:?}]");
        let (ta, eab) = match (t.get(&a), e.gluing().get(&[a, b])) {
            (Some(ta), Some(eab)) => (ta, eab),
            _ => return Err(structural(field, "needs T at the source vertex and an edge of the bundle")),
        };
        let dims = obj_matmul(ta, eab).map_err(|err| structural(&field, err))?;
        tau.insert([a, b], morphism_from_file(&field, &dims, entries)?);
    }
    Ok(TrivializationChange { t, tau })
}

pub fn change_to_json(c: &TrivializationChange<BigRational>) -> String {
    let file = ChangeFile {
        t: c.t.iter().map(|(v, d)| (v.to_string(), d.to_rows())).collect(),
        tau: c.tau.iter().map(|(k, m)| (simplex_key(k), morphism_to_file(m))).collect(),
    };
    to_json(&file)
}

/// A vertex map out of the complex given in the same file.
pub fn parse_map(text: &str) -> Result<SimplicialMap, IoError> {
    let file: MapFile = from_json(text)?;
    let source = file.complex.build("complex")?;
    let mut map = BTreeMap::new();
    for (key, w) in file.map {
        let [v] = parse_key::<1>("map", &key)?;
        map.insert(v, w);
    }
    Ok(SimplicialMap { source, map })
}

pub fn map_to_json(f: &SimplicialMap) -> String {
    let file = MapFile {
        complex: ComplexFile::from_complex(&f.source),
        map: f.map.iter().map(|(v, w)| (v.to_string(), *w)).collect(),
    };
    to_json(&file)
}

/// Matrix of tokens, either a JSON array of rows (numbers or strings) or
/// whitespace-separated rows, one per line.
pub fn parse_token_matrix(text: &str) -> Result<Vec<Vec<String>>, IoError> {
    let rows: Vec<Vec<String>> = if text.trim_start().starts_with('[') {
        let value: Vec<Vec<Value>> = from_json(text)?;
        value
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, v)| match v {
                        Value::Number(n) => Ok(n.to_string()),
                        Value::String(s) => Ok(s),
                        _ => Err(parse_err(format!("[{i}][{j}]"), "expected a number or string")),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?
    } else {
        text.lines()
            .map(strip_comment)
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(str::to_string).collect())
            .collect()
    };
    if rows.is_empty() {
        return Err(parse_err("matrix", "no rows"));
    }
    let cols = rows[0].len();
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(parse_err(format!("row {}", i + 1), format!("expected {cols} entries")));
    }
    Ok(rows)
}

fn parse_tokens<T: FromStr>(rows: &[Vec<String>]) -> Result<Matrix<T>, IoError> {
    let mut data = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, tok) in row.iter().enumerate() {
            data.push(
                tok.parse::<T>()
                    .map_err(|_| parse_err(format!("row {}, entry {}", i + 1, j + 1), format!("bad integer {tok:?}")))?,
            );
        }
    }
    Ok(Matrix::new(rows.len(), rows[0].len(), data).expect("rectangular"))
}

pub fn parse_int_matrix(text: &str) -> Result<Matrix<BigInt>, IoError> {
    parse_tokens(&parse_token_matrix(text)?)
}

pub fn parse_nat_matrix(text: &str) -> Result<Matrix<BigUint>, IoError> {
    parse_tokens(&parse_token_matrix(text)?)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// A parsed table file: fields and sections, each remembering line numbers.
#[derive(Clone, Debug, Default)]
pub struct Table {
    fields: HashMap<String, (usize, String)>,
    sections: HashMap<String, (usize, Vec<(usize, String)>)>,
}

impl Table {
    pub fn parse(text: &str) -> Result<Table, IoError> {
        let mut table = Table::default();
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            if line.starts_with(char::is_whitespace) {
                let Some(name) = &current else {
                    return Err(parse_err(format!("line {line_no}"), "indented line outside a section"));
                };
                let section = table.sections.get_mut(name).expect("opened");
                section.1.push((line_no, line.trim().to_string()));
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(parse_err(format!("line {line_no}"), "expected 'key: value' or 'key:'"));
            };
            let key = key.trim().to_string();
            if table.fields.contains_key(&key) || table.sections.contains_key(&key) {
                return Err(parse_err(format!("line {line_no}"), format!("duplicate key {key:?}")));
            }
            if value.trim().is_empty() {
                table.sections.insert(key.clone(), (line_no, Vec::new()));
                current = Some(key);
            } else {
                table.fields.insert(key, (line_no, value.trim().to_string()));
                current = None;
            }
        }
        Ok(table)
    }

    pub fn has(&self, key: &str) -> bool {
        self.fields.contains_key(key) || self.sections.contains_key(key)
    }

    fn field(&self, key: &str) -> Result<(usize, &str), IoError> {
        self.fields
            .get(key)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| parse_err(key, "missing field"))
    }

    /// Section lines, or the field value split into one line.
    fn lines(&self, key: &str) -> Result<Vec<(usize, String)>, IoError> {
        if let Some((_, lines)) = self.sections.get(key) {
            Ok(lines.clone())
        } else if let Some((l, v)) = self.fields.get(key) {
            Ok(vec![(*l, v.clone())])
        } else {
            Err(parse_err(key, "missing section"))
        }
    }

    fn names(&self, key: &str) -> Result<Vec<String>, IoError> {
        let lines = self.lines(key)?;
        let names: Vec<String> = lines
            .iter()
            .flat_map(|(_, l)| l.split_whitespace().map(str::to_string))
            .collect();
        let line = lines.first().map_or(0, |l| l.0);
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(parse_err(format!("line {line}"), format!("duplicate name {n:?}")));
            }
        }
        if names.is_empty() {
            return Err(parse_err(format!("line {line}"), format!("{key} is empty")));
        }
        Ok(names)
    }

    fn cayley(&self, key: &str, names: &[String]) -> Result<Vec<Vec<usize>>, IoError> {
        let lines = self.lines(key)?;
        let n = names.len();
        if lines.len() != n {
            let line = self.sections.get(key).map_or(0, |s| s.0);
            return Err(parse_err(format!("line {line}"), format!("{key} table needs {n} rows, found {}", lines.len())));
        }
        lines
            .iter()
            .map(|(l, row)| {
                let cells: Vec<&str> = row.split_whitespace().collect();
                if cells.len() != n {
                    return Err(parse_err(format!("line {l}"), format!("{key} row needs {n} entries")));
                }
                cells.iter().map(|c| lookup(names, c, *l)).collect()
            })
            .collect()
    }
}

fn lookup(names: &[String], name: &str, line: usize) -> Result<usize, IoError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| parse_err(format!("line {line}"), format!("unknown element {name:?}")))
}

fn single(table: &Table, key: &str, names: &[String]) -> Result<usize, IoError> {
    let (l, v) = table.field(key)?;
    lookup(names, v, l)
}

/// `elements`, `zero`, `one`, and Cayley tables `add` and `mul`.
pub fn semiring_from_table(table: &Table) -> Result<FiniteSemiring, IoError> {
    let names = table.names("elements")?;
    let add = table.cayley("add", &names)?;
    let mul = table.cayley("mul", &names)?;
    let zero = single(table, "zero", &names)?;
    let one = single(table, "one", &names)?;
    FiniteSemiring::new(names, add, mul, zero, one).map_err(|e| structural("semi-ring", e))
}

/// `elements`, `unit` and a Cayley table `mul`.
pub fn monoid_from_table(table: &Table) -> Result<FiniteMonoid, IoError> {
    let names = table.names("elements")?;
    let mul = table.cayley("mul", &names)?;
    let unit = single(table, "unit", &names)?;
    FiniteMonoid::new(names, mul, unit).map_err(|e| structural("monoid", e))
}

/// `objects`, `morphisms` (`f: x -> y`), `identities` and `compose` (`g . f = h`).
pub fn category_from_table(table: &Table) -> Result<SmallCategory, IoError> {
    let objects = table.names("objects")?;
    let mut morphisms: Vec<Morphism> = Vec::new();
    for (l, line) in table.lines("morphisms")? {
        let bad = || parse_err(format!("line {l}"), "expected 'name: source -> target'");
        let (name, ends) = line.split_once(':').ok_or_else(bad)?;
        let (s, t) = ends.split_once("->").ok_or_else(bad)?;
        let name = name.trim().to_string();
        if morphisms.iter().any(|m| m.name == name) {
            return Err(parse_err(format!("line {l}"), format!("duplicate morphism {name:?}")));
        }
        morphisms.push(Morphism {
            name,
            source: lookup(&objects, s.trim(), l)?,
            target: lookup(&objects, t.trim(), l)?,
        });
    }
    let names: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
    let mut identities = Vec::new();
    for (l, line) in table.lines("identities")? {
        for n in line.split_whitespace() {
            identities.push(lookup(&names, n, l)?);
        }
    }
    let mut composites = Vec::new();
    for (l, line) in table.lines("compose")? {
        let bad = || parse_err(format!("line {l}"), "expected 'g . f = h'");
        let (lhs, h) = line.split_once('=').ok_or_else(bad)?;
        let (g, f) = lhs.split_once('.').ok_or_else(bad)?;
        composites.push((lookup(&names, g.trim(), l)?, lookup(&names, f.trim(), l)?, lookup(&names, h.trim(), l)?));
    }
    SmallCategory::new(objects, morphisms, &composites, identities).map_err(|e| structural("category", e))
}

/// A `map` section of `m -> g` lines, total on `source`.
pub fn monoid_map_from_table(table: &Table, source: &FiniteMonoid, target: &FiniteMonoid) -> Result<Vec<usize>, IoError> {
    let mut f = vec![None; source.len()];
    for (l, line) in table.lines("map")? {
        let (m, g) = line
            .split_once("->")
            .ok_or_else(|| parse_err(format!("line {l}"), "expected 'm -> g'"))?;
        let m = lookup(source.names(), m.trim(), l)?;
        let g = lookup(target.names(), g.trim(), l)?;
        if f[m].replace(g).is_some() {
            return Err(parse_err(format!("line {l}"), "element mapped twice"));
        }
    }
    f.iter()
        .enumerate()
        .map(|(m, g)| g.ok_or_else(|| structural("map", format!("no image for {}", source.names()[m]))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{rank_one_phases, validate_bundle};

    #[test]
    fn bundle_round_trip() {
        let b = ChartedBundle::trivial(2, OrderedComplex::simplex_boundary(4));
        let text = bundle_to_json(&b);
        let back = parse_bundle(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(bundle_to_json(&back), text);
    }

    #[test]
    fn rational_entries_round_trip() {
        let d = DimensionMatrix::identity(1);
        let base = OrderedComplex::simplex(2);
        let gluing = base.simplices_of_dim(1).iter().map(|e| ([e[0], e[1]], d.clone())).collect();
        let q = BigRational::new((-3).into(), 7.into());
        let m = MorphismMatrix::new(d.clone(), vec![Matrix::from_rows(vec![vec![q]]).unwrap()]).unwrap();
        let b = ChartedBundle::new(1, base, gluing, [([0, 1, 2], m)].into_iter().collect()).unwrap();
        let text = bundle_to_json(&b);
        assert!(text.contains("\"-3/7\""));
        assert_eq!(parse_bundle(&text).unwrap(), b);
        assert!(validate_bundle(&b).is_valid());
        assert!(rank_one_phases(&b).unwrap().phases().len() == 1);
    }

    #[test]
    fn unknown_vertex_is_a_parse_error() {
        let text = r#"{"rank": 1, "complex": {"vertices": [0, 1], "simplices": [[0, 2]]}}"#;
        let err = parse_bundle(text).unwrap_err();
        assert!(matches!(err, IoError::Parse { .. }), "{err}");
        assert!(err.to_string().contains("unknown vertex 2"));
    }

    #[test]
    fn determinant_two_is_structural() {
        let text = r#"{"rank": 1, "complex": {"vertices": [0, 1], "simplices": [[0, 1]]}, "gluing": {"0,1": [[2]]}}"#;
        let err = parse_bundle(text).unwrap_err();
        assert!(matches!(err, IoError::Structural { .. }));
        assert!(err.to_string().contains("determinant ±1"), "{err}");
    }

    #[test]
    fn malformed_rational_names_field() {
        let text = r#"{"rank": 1, "complex": {"vertices": [0, 1, 2], "simplices": [[0,1],[0,2],[1,2],[0,1,2]]},
            "gluing": {"0,1": [[1]], "0,2": [[1]], "1,2": [[1]]}, "coherence": {"0,1,2": [[[["1/x"]]]]}}"#;
        let err = parse_bundle(text).unwrap_err();
        assert!(err.to_string().contains("coherence[\"0,1,2\"][0][0][0][0]"), "{err}");
    }

    #[test]
    fn json_syntax_error_has_line() {
        let err = parse_bundle("{\n  \"rank\": 1,\n  oops\n}").unwrap_err();
        assert!(err.to_string().starts_with("parse error at line 3"), "{err}");
    }

    #[test]
    fn dangling_coherence() {
        let text = r#"{"rank": 1, "complex": {"vertices": [0, 1, 2], "simplices": [[0,1],[0,2],[1,2]]},
            "gluing": {"0,1": [[1]], "0,2": [[1]], "1,2": [[1]]}, "coherence": {"0,1,2": [[[["1"]]]]}}"#;
        assert!(matches!(parse_bundle(text).unwrap_err(), IoError::Structural { .. }));
    }

    #[test]
    fn phases_round_trip() {
        let base = OrderedComplex::simplex_boundary(3);
        let phi = PhaseCocycle::new(base, [([0, 1, 2], BigRational::new(3.into(), 2.into()))].into_iter().collect()).unwrap();
        let text = phases_to_json(&phi);
        assert!(text.contains("\"1/2 mod 1\""));
        assert_eq!(parse_phases(&text).unwrap(), phi);
    }

    #[test]
    fn map_and_complex_round_trip() {
        let c = OrderedComplex::simplex_boundary(3);
        assert_eq!(parse_complex(&complex_to_json(&c)).unwrap(), c);
        let f = SimplicialMap::identity(&c);
        assert_eq!(parse_map(&map_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn tables() {
        let text = "# boolean\nelements: 0 1\nzero: 0\none: 1\nadd:\n  0 1\n  1 1\nmul:\n  0 0\n  0 1\n";
        let b = semiring_from_table(&Table::parse(text).unwrap()).unwrap();
        assert_eq!(b, FiniteSemiring::boolean());
        let bad = "elements: 0 1\nzero: 0\none: 1\nadd:\n  0 1\n  1 2\nmul:\n  0 0\n  0 1\n";
        assert_eq!(
            semiring_from_table(&Table::parse(bad).unwrap()).unwrap_err().to_string(),
            "parse error at line 6: unknown element \"2\""
        );
        let m = "elements: e a\nunit: e\nmul:\n  e a\n  a e\nmap:\n  e -> 0\n  a -> 1\n";
        let t = Table::parse(m).unwrap();
        let z2 = monoid_from_table(&t).unwrap();
        assert_eq!(monoid_map_from_table(&t, &z2, &FiniteMonoid::cyclic(2)).unwrap(), vec![0, 1]);
        assert!(Table::parse("  stray").is_err());
    }

    #[test]
    fn category_table() {
        let text = "objects: x y\nmorphisms:\n  ix: x -> x\n  iy: y -> y\n  f: x -> y\nidentities: ix iy\ncompose:\n  ix . ix = ix\n  iy . iy = iy\n  f . ix = f\n  iy . f = f\n";
        let c = category_from_table(&Table::parse(text).unwrap()).unwrap();
        assert_eq!(c.morphisms().len(), 3);
        let missing = text.replace("  iy . f = f\n", "");
        assert!(category_from_table(&Table::parse(&missing).unwrap()).is_err());
    }

    #[test]
    fn matrices() {
        let a = parse_int_matrix("1 2\n3 -4\n").unwrap();
        assert_eq!(a, parse_int_matrix("[[1, 2], [3, \"-4\"]]").unwrap());
        assert!(parse_int_matrix("1 2\n3\n").is_err());
        assert!(parse_nat_matrix("1 -2\n").is_err());
    }
}
