//! JSON file formats.
//!
//! A path:
//!
//! ```json
//! {"space": "R", "domain": {"intervals": [[0, 2]], "points": []},
//!  "initial": 0.0, "jumps": [{"t": 1.0, "left": 0.0, "right": 1.0}]}
//! ```
//!
//! `space` is `"R"` for real values or `"R^d"` (also `"R^2"`, ...) for
//! vectors. Interval ends may be `"inf"` / `"-inf"`. `left` may be
//! omitted and then continues the path. An optional `"fill"` names an
//! interpolation (`linear`, `geometric`, `smoothstep`) used between the
//! knots of one interval instead of holding values constant.
//!
//! An ordered point set:
//!
//! ```json
//! {"points": [0.0, 1.0, 0.5], "order_pairs": [[0, 1], [1, 2]], "total": true}
//! ```
//!
//! Pairs `[i, j]` mean point `i` precedes point `j`; the transitive closure
//! is taken. A total set without pairs is ordered as listed.

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};
use skorodist_core::ordered::{Budget, OrderedPointSet};
use skorodist_core::path::{Domain, Fill, Knot, Path};

use crate::error::{CliError, CliResult};
use crate::mode::Value;
use crate::registry;

/// A point: a number or a vector of numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Bound {
    Num(f64),
    Word(String),
}

impl Bound {
    fn value(&self) -> CliResult<f64> {
        match self {
            Bound::Num(x) => Ok(*x),
            Bound::Word(w) => match w.as_str() {
                "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
                "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
                _ => Err(CliError::input(format!("bad interval end {w:?}"))),
            },
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainJson {
    #[serde(default)]
    intervals: Vec<(Bound, Bound)>,
    #[serde(default)]
    points: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct JumpJson {
    t: f64,
    #[serde(default)]
    left: Option<JsonValue>,
    right: JsonValue,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathJson {
    space: String,
    domain: DomainJson,
    #[serde(default)]
    initial: Option<JsonValue>,
    #[serde(default)]
    jumps: Vec<JumpJson>,
    #[serde(default)]
    fill: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderedSetJson {
    pub points: Vec<JsonValue>,
    #[serde(default)]
    pub order_pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub total: bool,
}

/// Optional settings file; command-line flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub eta: Option<f64>,
    pub horizon: Option<f64>,
    pub phi: Option<String>,
    pub dbar: Option<String>,
    pub max_tuples: Option<usize>,
    pub max_bruteforce: Option<usize>,
}

/// A path with real or vector values.
#[derive(Debug, Clone)]
pub enum AnyPath {
    Real(Path<f64>),
    Vector(Path<Vec<f64>>, usize),
}

/// An ordered set with real or vector points.
#[derive(Debug, Clone)]
pub enum AnySet {
    Real(OrderedPointSet<f64>),
    Vector(OrderedPointSet<Vec<f64>>),
}

/// What a JSON document holds.
#[derive(Debug, Clone)]
pub enum Document {
    Path(AnyPath),
    Set(AnySet),
}

fn parse_value(text: &str) -> CliResult<serde_json::Value> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed JSON: {e}")))
}

fn decode<T: for<'de> Deserialize<'de>>(v: serde_json::Value, what: &str) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::input(format!("invalid {what}: {e}")))
}

fn read(file: &FsPath) -> CliResult<String> {
    fs::read_to_string(file).map_err(|e| CliError::input(format!("{}: {e}", file.display())))
}

/// Reads a path or an ordered set, telling them apart by the `points` key.
pub fn read_document(file: &FsPath) -> CliResult<Document> {
    parse_document(&read(file)?).map_err(|e| e.in_file(file))
}

pub fn parse_document(text: &str) -> CliResult<Document> {
    let v = parse_value(text)?;
    if v.get("points").is_some() {
        Ok(Document::Set(set_from_json(&decode(v, "ordered set")?)?))
    } else {
        Ok(Document::Path(path_from_json(&decode(v, "path")?)?))
    }
}

pub fn read_path(file: &FsPath) -> CliResult<AnyPath> {
    parse_path(&read(file)?).map_err(|e| e.in_file(file))
}

pub fn parse_path(text: &str) -> CliResult<AnyPath> {
    path_from_json(&decode(parse_value(text)?, "path")?)
}

pub fn read_config(file: &FsPath) -> CliResult<ConfigFile> {
    let text = read(file)?;
    decode(parse_value(&text).map_err(|e| e.in_file(file))?, "config").map_err(|e| e.in_file(file))
}

fn scalar(v: &JsonValue) -> CliResult<f64> {
    match v {
        JsonValue::Scalar(x) => Ok(*x),
        JsonValue::Vector(_) => Err(CliError::input("expected a number for a path in R")),
    }
}

fn vector(v: &JsonValue, dim: usize) -> CliResult<Vec<f64>> {
    match v {
        JsonValue::Vector(x) if x.len() == dim => Ok(x.clone()),
        JsonValue::Vector(x) => Err(CliError::input(format!("expected dimension {dim}, got {}", x.len()))),
        JsonValue::Scalar(_) => Err(CliError::input("expected a vector for a path in R^d")),
    }
}

fn first_dim(doc: &PathJson) -> Option<usize> {
    let vals = doc.initial.iter().chain(doc.jumps.iter().flat_map(|j| j.left.iter().chain([&j.right])));
    vals.map(|v| match v {
        JsonValue::Scalar(_) => 1,
        JsonValue::Vector(x) => x.len(),
    })
    .next()
}

fn path_from_json(doc: &PathJson) -> CliResult<AnyPath> {
    let space = doc.space.as_str();
    if space == "R" {
        return Ok(AnyPath::Real(build(doc, scalar)?));
    }
    let Some(d) = space.strip_prefix("R^") else {
        return Err(CliError::input(format!("unknown space {space:?}; expected \"R\" or \"R^d\"")));
    };
    let dim = match d {
        "d" => first_dim(doc).unwrap_or(1),
        d => d.parse().map_err(|_| CliError::input(format!("bad dimension in {space:?}")))?,
    };
    if dim == 0 {
        return Err(CliError::input("dimension must be positive"));
    }
    Ok(AnyPath::Vector(build(doc, |v| vector(v, dim))?, dim))
}

fn build<P: Value>(doc: &PathJson, conv: impl Fn(&JsonValue) -> CliResult<P>) -> CliResult<Path<P>> {
    let intervals = doc
        .domain
        .intervals
        .iter()
        .map(|(a, b)| Ok((a.value()?, b.value()?)))
        .collect::<CliResult<Vec<_>>>()?;
    let domain = Domain::new(&intervals, &doc.domain.points)?;
    let fill = match doc.fill.as_deref() {
        None | Some("step") => Fill::Step,
        Some(name) => Fill::Interpolated(
            registry::interpolation(name).ok_or_else(|| CliError::input(format!("unknown fill {name:?}")))?,
        ),
    };
    let initial = doc.initial.as_ref().map(&conv).transpose()?;
    let mut knots: Vec<Knot<P>> = Vec::with_capacity(doc.jumps.len());
    for j in &doc.jumps {
        let right = conv(&j.right)?;
        let left = match &j.left {
            Some(v) => conv(v)?,
            None => {
                let prev = knots.last();
                let same_piece =
                    prev.is_some_and(|k| domain.piece_of(k.t).is_some() && domain.piece_of(k.t) == domain.piece_of(j.t));
                match prev {
                    Some(_) if same_piece && !fill.is_step() => right.clone(),
                    Some(k) => k.right.clone(),
                    None => initial.clone().unwrap_or_else(|| right.clone()),
                }
            }
        };
        knots.push(Knot::new(j.t, left, right));
    }
    if let Fill::Interpolated(phi) = &fill {
        let vals = initial.iter().chain(knots.iter().flat_map(|k| [&k.left, &k.right]));
        for v in vals {
            if !registry::admits(phi.name(), v.coords()) {
                return Err(CliError::input(format!("fill {} is undefined at {v:?}", phi.name())));
            }
        }
    }
    Ok(Path::new(domain, initial, knots, fill)?)
}

fn set_from_json(doc: &OrderedSetJson) -> CliResult<AnySet> {
    let pairs: Vec<(usize, usize)> = doc.order_pairs.iter().map(|p| (p[0], p[1])).collect();
    if let Some(&(i, j)) = pairs.iter().find(|p| p.0.max(p.1) >= doc.points.len()) {
        return Err(CliError::input(format!("order pair [{i}, {j}] refers to a missing point")));
    }
    let scalars = doc.points.iter().all(|p| matches!(p, JsonValue::Scalar(_)));
    if scalars {
        let pts = doc.points.iter().map(scalar).collect::<CliResult<Vec<_>>>()?;
        Ok(AnySet::Real(make_set(pts, &pairs, doc.total)?))
    } else {
        let dim = match doc.points.first() {
            Some(JsonValue::Vector(v)) => v.len(),
            _ => return Err(CliError::input("mixed scalar and vector points")),
        };
        let pts = doc.points.iter().map(|v| vector(v, dim)).collect::<CliResult<Vec<_>>>()?;
        Ok(AnySet::Vector(make_set(pts, &pairs, doc.total)?))
    }
}

fn make_set<P>(points: Vec<P>, pairs: &[(usize, usize)], total: bool) -> CliResult<OrderedPointSet<P>> {
    if points.is_empty() {
        return Err(CliError::input("an ordered set needs at least one point"));
    }
    if total && pairs.is_empty() {
        return Ok(OrderedPointSet::chain(points));
    }
    let set = OrderedPointSet::with_closure(points, pairs)?;
    if total && !set.is_total() {
        return Err(CliError::input("set is marked total but its order is not"));
    }
    Ok(set)
}

/// The JSON form of a real ordered set. Total sets list their covering
/// pairs, partial ones every strict pair.
pub fn set_to_json(set: &OrderedPointSet<f64>) -> OrderedSetJson {
    let points = set.points().iter().map(|&x| JsonValue::Scalar(x)).collect();
    let order_pairs = match set.chain_order() {
        Ok(chain) => chain.windows(2).map(|w| [w[0], w[1]]).collect(),
        Err(_) => set.order_pairs().into_iter().filter(|(i, j)| i != j).map(|(i, j)| [i, j]).collect(),
    };
    OrderedSetJson { points, order_pairs, total: set.is_total() }
}

pub fn write_json<T: Serialize>(file: &FsPath, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::input(e.to_string()))?;
    fs::write(file, text + "\n").map_err(|e| CliError::input(format!("{}: {e}", file.display())))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Chunk {
    Num(u128),
    Text(String),
}

/// Sort key under which `f_2` comes before `f_10`.
pub fn natural_key(name: &str) -> Vec<(Chunk, String)> {
    let mut out = Vec::new();
    let mut rest = name;
    while let Some(c) = rest.chars().next() {
        let digits = c.is_ascii_digit();
        let end = rest.find(|ch: char| ch.is_ascii_digit() != digits).unwrap_or(rest.len());
        let (head, tail) = rest.split_at(end);
        let chunk = match head.parse::<u128>() {
            Ok(n) if digits => Chunk::Num(n),
            _ => Chunk::Text(head.to_string()),
        };
        out.push((chunk, head.to_string()));
        rest = tail;
    }
    out
}

/// The `.json` files of a directory in natural order.
pub fn json_files(dir: &FsPath) -> CliResult<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let p = entry?.path();
        if p.is_file() && p.extension().is_some_and(|e| e == "json") {
            files.push(p);
        }
    }
    if files.is_empty() {
        return Err(CliError::input(format!("{}: no .json files", dir.display())));
    }
    files.sort_by_cached_key(|p| natural_key(&p.file_name().unwrap_or_default().to_string_lossy()));
    Ok(files)
}

/// The trailing integer of a file stem, as in `f_64.json`.
pub fn trailing_number(file: &FsPath) -> Option<u64> {
    let stem = file.file_stem()?.to_str()?;
    let start = stem.rfind(|c: char| !c.is_ascii_digit()).map_or(0, |i| i + 1);
    stem[start..].parse().ok()
}

/// Paths of one kind, all real or all of one dimension.
#[derive(Debug, Clone)]
pub enum Family {
    Real(Vec<Path<f64>>),
    Vector(Vec<Path<Vec<f64>>>, usize),
}

impl Family {
    pub fn from_paths(paths: Vec<AnyPath>) -> CliResult<Self> {
        match paths.first() {
            None => Ok(Family::Real(Vec::new())),
            Some(AnyPath::Real(_)) => paths
                .into_iter()
                .map(|p| match p {
                    AnyPath::Real(p) => Ok(p),
                    AnyPath::Vector(..) => Err(CliError::input("paths mix R and R^d values")),
                })
                .collect::<CliResult<_>>()
                .map(Family::Real),
            Some(&AnyPath::Vector(_, dim)) => paths
                .into_iter()
                .map(|p| match p {
                    AnyPath::Vector(p, d) if d == dim => Ok(p),
                    _ => Err(CliError::input("paths have different spaces")),
                })
                .collect::<CliResult<_>>()
                .map(|ps| Family::Vector(ps, dim)),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Family::Real(v) => v.len(),
            Family::Vector(v, _) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Enumeration caps: defaults, then the config file, then the
/// `SKORODIST_BUDGET` variable (`TUPLES` or `TUPLES,BRUTEFORCE`).
pub fn budget(config: &ConfigFile, env: Option<&str>) -> CliResult<Budget> {
    let mut b = Budget::default();
    if let Some(t) = config.max_tuples {
        b.max_tuples = t;
    }
    if let Some(n) = config.max_bruteforce {
        b.max_bruteforce = n;
    }
    if let Some(s) = env {
        let bad = || CliError::input(format!("SKORODIST_BUDGET={s:?}: expected TUPLES or TUPLES,BRUTEFORCE"));
        let mut parts = s.split(',').map(|p| p.trim().parse::<usize>());
        b.max_tuples = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
        if let Some(n) = parts.next() {
            b.max_bruteforce = n.map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_step_path() {
        let text = r#"{"space":"R","domain":{"intervals":[[0,2]],"points":[]},
            "initial":0.0,"jumps":[{"t":1.0,"left":0.0,"right":1.0}]}"#;
        let AnyPath::Real(p) = parse_path(text).unwrap() else { panic!("real path expected") };
        assert_eq!(p.values_at(1.0).unwrap(), (0.0, 1.0));
        assert_eq!(p.right_value(0.5).unwrap(), 0.0);
    }

    #[test]
    fn left_values_default_to_the_running_value() {
        let text = r#"{"space":"R","domain":{"intervals":[[0,3]]},"initial":2.0,
            "jumps":[{"t":1.0,"right":1.0},{"t":2.0,"right":5.0}]}"#;
        let AnyPath::Real(p) = parse_path(text).unwrap() else { panic!() };
        assert_eq!(p.values_at(2.0).unwrap(), (1.0, 5.0));
    }

    #[test]
    fn wrong_left_value_is_rejected() {
        let text = r#"{"space":"R","domain":{"intervals":[[0,2]]},"initial":0.0,
            "jumps":[{"t":1.0,"left":0.5,"right":1.0}]}"#;
        assert!(matches!(parse_path(text), Err(CliError::Input(_))));
    }

    #[test]
    fn vector_paths_and_unbounded_domains() {
        let text = r#"{"space":"R^d","domain":{"intervals":[[0,"inf"]]},"initial":[0,0],
            "jumps":[{"t":1.0,"right":[1,2]}]}"#;
        let AnyPath::Vector(p, dim) = parse_path(text).unwrap() else { panic!() };
        assert_eq!(dim, 2);
        assert_eq!(p.domain().hull(), Some((0.0, f64::INFINITY)));
        let bad = r#"{"space":"R^3","domain":{"points":[0]},"jumps":[{"t":0,"right":[1,2]}]}"#;
        assert!(parse_path(bad).is_err());
    }

    #[test]
    fn interpolated_fill() {
        let text = r#"{"space":"R","domain":{"intervals":[[0,1]]},"initial":0.0,"fill":"linear",
            "jumps":[{"t":0.0,"right":0.0},{"t":1.0,"right":1.0}]}"#;
        let AnyPath::Real(p) = parse_path(text).unwrap() else { panic!() };
        assert!(!p.has_jumps());
        assert!((p.right_value(0.25).unwrap() - 0.25).abs() < 1e-12);
        let geo = text.replace("linear", "geometric");
        assert!(parse_path(&geo).is_err());
    }

    #[test]
    fn malformed_json_reports_a_position() {
        let err = parse_path("{\"space\": \"R\",\n  \"domain\": [").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn ordered_set_round_trip() {
        let text = r#"{"points":[0.0,1.0,0.5],"order_pairs":[[2,0],[0,1]],"total":true}"#;
        let Document::Set(AnySet::Real(k)) = parse_document(text).unwrap() else { panic!() };
        assert_eq!(k.to_chain().unwrap(), vec![0.5, 0.0, 1.0]);
        let json = serde_json::to_string(&set_to_json(&k)).unwrap();
        let Document::Set(AnySet::Real(back)) = parse_document(&json).unwrap() else { panic!() };
        assert_eq!(back, k);
    }

    #[test]
    fn partial_sets_and_bad_totality() {
        let text = r#"{"points":[0.0,1.0,2.0],"order_pairs":[[0,1]]}"#;
        let Document::Set(AnySet::Real(k)) = parse_document(text).unwrap() else { panic!() };
        assert!(!k.is_total());
        let json = serde_json::to_string(&set_to_json(&k)).unwrap();
        let Document::Set(AnySet::Real(back)) = parse_document(&json).unwrap() else { panic!() };
        assert_eq!(back, k);
        let marked = r#"{"points":[0.0,1.0,2.0],"order_pairs":[[0,1]],"total":true}"#;
        assert!(parse_document(marked).is_err());
        let cyclic = r#"{"points":[0.0,1.0],"order_pairs":[[0,1],[1,0]]}"#;
        assert!(parse_document(cyclic).is_err());
    }

    #[test]
    fn natural_order() {
        let mut names = vec!["f_10", "f_2", "f_64", "g_1", "f_4"];
        names.sort_by_key(|n| natural_key(n));
        assert_eq!(names, ["f_2", "f_4", "f_10", "f_64", "g_1"]);
        assert_eq!(trailing_number(FsPath::new("dir/f_64.json")), Some(64));
        assert_eq!(trailing_number(FsPath::new("limit.json")), None);
    }

    #[test]
    fn budget_overrides() {
        let cfg = ConfigFile { max_tuples: Some(10), ..Default::default() };
        assert_eq!(budget(&cfg, None).unwrap().max_tuples, 10);
        let b = budget(&cfg, Some("50,4")).unwrap();
        assert_eq!((b.max_tuples, b.max_bruteforce), (50, 4));
        assert!(budget(&cfg, Some("lots")).is_err());
    }
}
